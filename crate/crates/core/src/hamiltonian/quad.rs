//! Adaptive Simpson quadrature for the three entries of a Hamiltonian.

use crate::error::{Error, Result};

pub(crate) type Vec3 = [f64; 3];

const MAX_DEPTH: u32 = 48;
const MAX_EVALS: usize = 2_000_000;

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn max_abs(a: Vec3) -> f64 {
    a[0].abs().max(a[1].abs()).max(a[2].abs())
}

fn finite(a: Vec3) -> bool {
    a.iter().all(|x| x.is_finite())
}

struct Simpson<'a, F> {
    f: &'a F,
    evals: usize,
    unresolved: f64,
}

impl<F: Fn(f64) -> Result<Vec3>> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> Result<Vec3> {
        self.evals += 1;
        if self.evals > MAX_EVALS {
            return Err(Error::Quadrature("evaluation budget exhausted".into()));
        }
        let v = (self.f)(x)?;
        if !finite(v) {
            return Err(Error::Quadrature(format!("integrand not finite at {x}")));
        }
        Ok(v)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: Vec3,
        fm: Vec3,
        fb: Vec3,
        whole: Vec3,
        eps: Vec3,
        depth: u32,
    ) -> Result<Vec3> {
        let m = 0.5 * (a + b);
        let flm = self.eval(0.5 * (a + m))?;
        let frm = self.eval(0.5 * (m + b))?;
        let h = (b - a) / 12.0;
        let left = scale(add(add(fa, scale(flm, 4.0)), fm), h);
        let right = scale(add(add(fm, scale(frm, 4.0)), fb), h);
        let diff = sub(add(left, right), whole);
        let excess = (0..3).map(|k| diff[k].abs() / (15.0 * eps[k])).fold(0.0, f64::max);
        if excess <= 1.0 {
            return Ok(add(add(left, right), scale(diff, 1.0 / 15.0)));
        }
        if depth == 0 {
            self.unresolved = self.unresolved.max(excess);
            return Ok(add(left, right));
        }
        let half = scale(eps, 0.5);
        let l = self.refine(a, m, fa, flm, fm, left, half, depth - 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, half, depth - 1)?;
        Ok(add(l, r))
    }
}

/// ∫_a^b f with relative tolerance `tol` per component. The diagonal
/// components are measured against themselves, the off-diagonal one against
/// their geometric mean; a floor of 1e-6 times the trace keeps vanishing
/// entries from demanding absolute accuracy.
pub(crate) fn simpson<F: Fn(f64) -> Result<Vec3>>(f: &F, a: f64, b: f64, tol: f64) -> Result<Vec3> {
    if b <= a {
        return Ok([0.0; 3]);
    }
    let mut s = Simpson { f, evals: 0, unresolved: 0.0 };
    // Seed with a 9-point composite rule so the tolerance scale is not fooled
    // by a single unlucky midpoint.
    let n = 4;
    let w = (b - a) / n as f64;
    let mut nodes = Vec::with_capacity(2 * n + 1);
    for k in 0..=2 * n {
        nodes.push(s.eval(a + 0.5 * w * k as f64)?);
    }
    let mut pieces = Vec::with_capacity(n);
    let mut coarse = [0.0; 3];
    for k in 0..n {
        let whole = scale(add(add(nodes[2 * k], scale(nodes[2 * k + 1], 4.0)), nodes[2 * k + 2]), w / 6.0);
        coarse = add(coarse, whole);
        pieces.push(whole);
    }
    let size = (coarse[0].abs() + coarse[1].abs()).max(f64::MIN_POSITIVE);
    let floor = 1e-6 * size;
    let eps = scale(
        [
            coarse[0].abs().max(floor),
            coarse[1].abs().max(floor),
            (coarse[0] * coarse[1]).abs().sqrt().max(floor),
        ],
        tol / n as f64,
    );
    let mut total = [0.0; 3];
    for k in 0..n {
        let lo = a + w * k as f64;
        let part = s.refine(
            lo,
            lo + w,
            nodes[2 * k],
            nodes[2 * k + 1],
            nodes[2 * k + 2],
            pieces[k],
            eps,
            MAX_DEPTH,
        )?;
        total = add(total, part);
    }
    // Unresolved cells sit at depth MAX_DEPTH where eps has been halved 48
    // times; only a true singularity leaves an error that large.
    if s.unresolved > 2f64.powi(MAX_DEPTH as i32 / 2) {
        return Err(Error::Quadrature(format!(
            "refinement diverged on [{a}, {b}]"
        )));
    }
    Ok(total)
}

/// ∫_a^b h(s) ds for 0 < a < b through the substitution s = eᵘ, which keeps
/// power-like integrands smooth across many decades.
pub(crate) fn integrate_log<F: Fn(f64) -> Result<Vec3>>(h: &F, a: f64, b: f64, tol: f64) -> Result<Vec3> {
    let g = |u: f64| -> Result<Vec3> {
        let s = u.exp();
        Ok(scale(h(s)?, s))
    };
    simpson(&g, a.ln(), b.ln(), tol)
}

/// ∫_0^a h(s) ds for integrands with an integrable power-type singularity
/// at the origin. Substitutes s = a·e^{−v}, integrates v over [0, V] and
/// closes with a power-law tail whose exponent is fitted from two probes.
pub(crate) fn integrate_from_origin<F: Fn(f64) -> Result<Vec3>>(h: &F, a: f64, tol: f64) -> Result<Vec3> {
    if a <= 0.0 {
        return Ok([0.0; 3]);
    }
    let g = |v: f64| -> Result<Vec3> {
        let s = a * (-v).exp();
        Ok(scale(h(s)?, s))
    };
    let mut total = [0.0; 3];
    let mut lo = 0.0;
    let step = 40.0;
    while lo < 400.0 {
        let hi = lo + step;
        let part = simpson(&g, lo, hi, tol)?;
        total = add(total, part);
        // Tail ∫_hi^∞ g dv under g(v) ≈ g(hi)·e^{−p(v−hi)}.
        let g_hi = g(hi)?;
        let g_prev = g(hi - 1.0)?;
        let tr_hi = g_hi[0] + g_hi[1];
        let tr_prev = g_prev[0] + g_prev[1];
        if tr_hi == 0.0 {
            return Ok(total);
        }
        let p = (tr_prev / tr_hi).ln();
        let size = total[0].abs() + total[1].abs();
        if p > 1e-3 {
            let tail = scale(g_hi, 1.0 / p);
            if max_abs(tail) <= 1e-3 * tol * size {
                return Ok(add(total, tail));
            }
        }
        lo = hi;
    }
    Err(Error::Quadrature(
        "integrand is not integrable at the origin at this resolution".into(),
    ))
}
