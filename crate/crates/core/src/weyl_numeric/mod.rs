//! Fundamental solution of y′ = zJHy, Weyl discs and the nested-disc limit
//! that defines the Weyl coefficient q_H(z).

use crate::error::{Error, Result};
use crate::hamiltonian::{detect_indivisible_start, Hamiltonian, IndivisibleKind};
use num_complex::Complex64;

pub const DEFAULT_ODE_TOL: f64 = 1e-10;
pub const DEFAULT_DISC_TOL: f64 = 1e-8;
pub const DEFAULT_T_MAX: f64 = 1e6;
/// First checkpoint of the geometric schedule t_k = t_first·2^k.
pub const DEFAULT_T_FIRST: f64 = 1e-3;

/// Bound on |z|·‖M(t0)‖ at the seed point of the integration.
const SEED_BOUND: f64 = 1e-10;
/// Entries are renormalised by an exact power of two above this size.
const RENORM_LOG2: i32 = 256;
const MAX_STEPS: usize = 20_000_000;

type Mat = [[Complex64; 2]; 2];

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn c1() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// W(t, z) stored as 2^{−log2_scale}·W so that large solutions stay
/// representable. The stored matrix has determinant 4^{−log2_scale}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalMatrix {
    pub t: f64,
    pub z: Complex64,
    pub w: Mat,
    pub log2_scale: i32,
}

impl FundamentalMatrix {
    pub fn identity(z: Complex64) -> Self {
        FundamentalMatrix {
            t: 0.0,
            z,
            w: [[c1(), c0()], [c0(), c1()]],
            log2_scale: 0,
        }
    }

    /// Wraps an explicit matrix with determinant 1.
    pub fn from_entries(t: f64, z: Complex64, w: Mat) -> Self {
        FundamentalMatrix { t, z, w, log2_scale: 0 }
    }

    pub fn w11(&self) -> Complex64 {
        self.w[0][0]
    }
    pub fn w12(&self) -> Complex64 {
        self.w[0][1]
    }
    pub fn w21(&self) -> Complex64 {
        self.w[1][0]
    }
    pub fn w22(&self) -> Complex64 {
        self.w[1][1]
    }

    /// Determinant of the stored entries.
    pub fn det(&self) -> Complex64 {
        self.w[0][0] * self.w[1][1] - self.w[0][1] * self.w[1][0]
    }

    /// Determinant the stored entries should have, 4^{−log2_scale}.
    pub fn nominal_det(&self) -> f64 {
        2f64.powi(-2 * self.log2_scale)
    }

    /// |det − nominal| relative to the size of the two products forming the
    /// determinant, which is the accuracy floating point can deliver.
    pub fn det_defect(&self) -> f64 {
        let nominal = self.nominal_det();
        let size = (self.w[0][0] * self.w[1][1]).norm() + (self.w[0][1] * self.w[1][0]).norm();
        (self.det() - nominal).norm() / size.max(nominal)
    }

    /// The true W(t, z) when it is representable.
    pub fn unscaled(&self) -> Option<Mat> {
        if self.log2_scale.abs() > 1000 {
            return None;
        }
        let s = 2f64.powi(self.log2_scale);
        let m = self.w.map(|row| row.map(|x| x * s));
        m.iter().flatten().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(m)
    }

    /// Image of τ under τ ↦ (w11τ + w12)/(w21τ + w22); `None` is ∞.
    pub fn mobius(&self, tau: Complex64) -> Option<Complex64> {
        let den = self.w21() * tau + self.w22();
        if den == c0() {
            return None;
        }
        Some((self.w11() * tau + self.w12()) / den)
    }
}

/// Image of the closed upper half-plane under the Möbius map of W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylDisc {
    /// Disc center. When the radius is infinite this holds the image of
    /// τ = 0, a point on the boundary line.
    pub center: Complex64,
    pub radius: f64,
}

impl WeylDisc {
    pub fn is_bounded(&self) -> bool {
        self.radius.is_finite()
    }
}

/// Circle through the images of τ ∈ {0, 1, ∞}. The differences of the
/// images are formed from det W directly so they keep full relative
/// accuracy when the disc is tiny.
pub fn weyl_disc(w: &FundamentalMatrix) -> WeylDisc {
    let (a, b, c, d) = (w.w11(), w.w12(), w.w21(), w.w22());
    let boundary = WeylDisc {
        center: if d != c0() { b / d } else { a / c },
        radius: f64::INFINITY,
    };
    if c == c0() {
        return boundary;
    }
    let p_inf = a / c;
    let det = w.nominal_det();
    if det == 0.0 {
        return WeylDisc { center: p_inf, radius: 0.0 };
    }
    // p0 − p∞ and p1 − p∞
    let u = -det / (c * d);
    let v = -det / (c * (c + d));
    if !(u.re.is_finite() && u.im.is_finite() && v.re.is_finite() && v.im.is_finite()) {
        return boundary;
    }
    let cross = u.re * v.im - u.im * v.re;
    if cross.abs() <= 1e-14 * u.norm() * v.norm() {
        return boundary;
    }
    let (nu, nv) = (u.norm_sqr(), v.norm_sqr());
    let x = Complex64::new(
        (nu * v.im - nv * u.im) / (2.0 * cross),
        (u.re * nv - v.re * nu) / (2.0 * cross),
    );
    WeylDisc {
        center: p_inf + x,
        radius: x.norm(),
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Row-wise right-hand side z·W·H·J⁻¹ with H·J⁻¹ = [[−h3, h1], [−h2, h3]].
fn rhs(w: &Mat, h1: f64, h2: f64, h3: f64, z: Complex64) -> Mat {
    w.map(|[a, b]| [z * (-a * h3 - b * h2), z * (a * h1 + b * h3)])
}

fn axpy(w: &Mat, k: &[Mat], coef: &[f64], h: f64) -> Mat {
    let mut out = *w;
    for (kj, &aj) in k.iter().zip(coef) {
        if aj == 0.0 {
            continue;
        }
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] += kj[r][c] * (aj * h);
            }
        }
    }
    out
}

fn max_entry(w: &Mat) -> f64 {
    w.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Adaptive integrator for W(·, z), advancing monotonically in t.
pub struct Integrator<'a> {
    ham: &'a Hamiltonian,
    z: Complex64,
    tol: f64,
    t: f64,
    w: Mat,
    log2_scale: i32,
    step: f64,
    breakpoints: Vec<f64>,
    steps: usize,
}

impl<'a> Integrator<'a> {
    pub fn new(ham: &'a Hamiltonian, z: Complex64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("ODE tolerance must be positive, got {tol}")));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain("z must be finite".into()));
        }
        Ok(Integrator {
            ham,
            z,
            tol,
            t: 0.0,
            w: FundamentalMatrix::identity(z).w,
            log2_scale: 0,
            step: 0.0,
            breakpoints: ham.breakpoints(),
            steps: 0,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn matrix(&self) -> FundamentalMatrix {
        FundamentalMatrix {
            t: self.t,
            z: self.z,
            w: self.w,
            log2_scale: self.log2_scale,
        }
    }

    /// Replaces W(0) = I by the first-order value I − z·M(t0)·J at a point
    /// t0 ≤ limit where |z|·‖M(t0)‖ ≤ 1e-10.
    fn seed(&mut self, limit: f64) -> Result<()> {
        let first_bp = self.breakpoints.first().copied().unwrap_or(f64::INFINITY);
        let mut t0 = limit.min(first_bp).min(DEFAULT_T_FIRST);
        let zn = self.z.norm().max(1.0);
        let mut m = self.ham.primitive(t0)?;
        let mut guard = 0;
        while m.max_abs() * zn > SEED_BOUND {
            t0 *= 0.25;
            m = self.ham.primitive(t0)?;
            guard += 1;
            if guard > 600 {
                return Err(Error::StepUnderflow { t: t0 });
            }
        }
        let z = self.z;
        self.w = [
            [c1() - z * m.m3, z * m.m1],
            [-z * m.m2, c1() + z * m.m3],
        ];
        self.t = t0;
        self.step = t0;
        Ok(())
    }

    /// Integrates up to `target` (clamped to the domain) and returns W there.
    pub fn advance_to(&mut self, target: f64) -> Result<FundamentalMatrix> {
        let l = self.ham.length();
        if !(target >= 0.0) || target >= l {
            return Err(Error::Domain(format!("t = {target} is outside [0, {l})")));
        }
        if target <= self.t {
            return Ok(self.matrix());
        }
        if self.t == 0.0 {
            self.seed(target)?;
        }
        while self.t < target {
            let bp = self
                .breakpoints
                .iter()
                .copied()
                .find(|&p| p > self.t * (1.0 + 4.0 * f64::EPSILON))
                .unwrap_or(f64::INFINITY);
            let stop = target.min(bp);
            self.integrate_segment(stop)?;
        }
        Ok(self.matrix())
    }

    fn integrate_segment(&mut self, stop: f64) -> Result<()> {
        let z = self.z;
        while self.t < stop {
            self.steps += 1;
            if self.steps > MAX_STEPS {
                return Err(Error::NonConvergence(format!(
                    "step budget exhausted at t = {}",
                    self.t
                )));
            }
            let t = self.t;
            let mut h = self.step.min(stop - t);
            let last = h >= stop - t;
            if last {
                h = stop - t;
            }
            if h <= 1e-14 * t.max(f64::MIN_POSITIVE) && !last {
                return Err(Error::StepUnderflow { t });
            }
            let mut k: [Mat; 7] = [[[c0(); 2]; 2]; 7];
            for s in 0..7 {
                let y = axpy(&self.w, &k[..s], &A[s][..s], h);
                let tau = t + C[s] * h;
                let v = self.ham.evaluate_within(tau, t, t + h)?;
                k[s] = rhs(&y, v.h1, v.h2, v.h3, z);
            }
            let y5 = axpy(&self.w, &k[..6], &A[6][..6], h);
            let err_m = axpy(&[[c0(); 2]; 2], &k, &E, h);
            let mut err = 0.0f64;
            for r in 0..2 {
                let size = self.w[r]
                    .iter()
                    .chain(y5[r].iter())
                    .map(|x| x.norm())
                    .fold(0.0, f64::max);
                let e = err_m[r].iter().map(|x| x.norm()).fold(0.0, f64::max);
                err = err.max(e / (self.tol * size.max(f64::MIN_POSITIVE)));
            }
            if !err.is_finite() {
                return Err(Error::Overflow);
            }
            if err <= 1.0 {
                self.t = if last { stop } else { t + h };
                self.w = y5;
                self.renormalize();
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).min(5.0) };
                if !last || grow < 1.0 {
                    self.step = h * grow.max(0.2);
                } else {
                    self.step = self.step.max(h * grow);
                }
            } else {
                self.step = h * (0.9 * err.powf(-0.2)).max(0.2);
                if self.step <= 1e-14 * t {
                    return Err(Error::StepUnderflow { t });
                }
            }
        }
        Ok(())
    }

    fn renormalize(&mut self) {
        let m = max_entry(&self.w);
        if m == 0.0 || !m.is_finite() {
            return;
        }
        let e = m.log2().floor() as i32;
        if e.abs() >= RENORM_LOG2 {
            let f = 2f64.powi(-e);
            for row in self.w.iter_mut() {
                for x in row.iter_mut() {
                    *x *= f;
                }
            }
            self.log2_scale += e;
        }
    }
}

/// W(t, z) with local relative error per step ≤ tol.
pub fn fundamental_solution(h: &Hamiltonian, t: f64, z: Complex64, tol: f64) -> Result<FundamentalMatrix> {
    let mut it = Integrator::new(h, z, tol)?;
    if t == 0.0 {
        return Ok(FundamentalMatrix::identity(z));
    }
    it.advance_to(t)
}

/// Tuning of the nested-disc loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylOptions {
    pub ode_tol: f64,
    pub disc_tol: f64,
    pub t_max: f64,
    pub t_first: f64,
}

impl Default for WeylOptions {
    fn default() -> Self {
        WeylOptions {
            ode_tol: DEFAULT_ODE_TOL,
            disc_tol: DEFAULT_DISC_TOL,
            t_max: DEFAULT_T_MAX,
            t_first: DEFAULT_T_FIRST,
        }
    }
}

impl WeylOptions {
    pub fn with_disc_tol(mut self, disc_tol: f64) -> Self {
        self.disc_tol = disc_tol;
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_ode_tol(mut self, ode_tol: f64) -> Self {
        self.ode_tol = ode_tol;
        self
    }
}

/// Outcome of a converged nested-disc run.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylRun {
    pub q: Complex64,
    pub disc: WeylDisc,
    pub t_reached: f64,
    /// (t, radius) at every checkpoint visited.
    pub radius_curve: Vec<(f64, f64)>,
    /// Largest determinant defect seen at a checkpoint.
    pub max_det_defect: f64,
}

fn schedule(opts: &WeylOptions, l: f64) -> Vec<f64> {
    let t_max = if l.is_finite() { opts.t_max.min(l * (1.0 - 1e-12)) } else { opts.t_max };
    let mut out = Vec::new();
    let mut t = opts.t_first.min(t_max);
    while t < t_max {
        out.push(t);
        t *= 2.0;
    }
    out.push(t_max);
    out
}

/// Nested-disc computation of q_H(z) with full diagnostics.
pub fn weyl_run(h: &Hamiltonian, z: Complex64, opts: &WeylOptions) -> Result<WeylRun> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!("Im z must be positive, got z = {z}")));
    }
    if !(opts.disc_tol > 0.0) || !(opts.t_max > 0.0) || !(opts.t_first > 0.0) {
        return Err(Error::Domain("disc_tol, t_max and t_first must be positive".into()));
    }
    let checkpoints = schedule(opts, h.length());
    let mut it = Integrator::new(h, z, opts.ode_tol)?;
    let mut curve = Vec::with_capacity(checkpoints.len());
    let mut defect = 0.0f64;
    let mut last = WeylDisc {
        center: c0(),
        radius: f64::INFINITY,
    };
    for &t in &checkpoints {
        let w = it.advance_to(t)?;
        defect = defect.max(w.det_defect());
        last = weyl_disc(&w);
        curve.push((t, last.radius));
        if last.radius <= opts.disc_tol {
            return Ok(WeylRun {
                q: last.center,
                disc: last,
                t_reached: t,
                radius_curve: curve,
                max_det_defect: defect,
            });
        }
    }
    let t_end = *checkpoints.last().expect("schedule is nonempty");
    if !last.is_bounded() {
        let start = detect_indivisible_start(h, &checkpoints);
        if start.kind == IndivisibleKind::Type0 {
            return Err(Error::AtInfinity);
        }
        return Err(Error::Indeterminate { t: t_end });
    }
    Err(Error::DiscNotConverged {
        t: t_end,
        center: last.center,
        radius: last.radius,
    })
}

/// q_H(z) as the center of the first Weyl disc with radius ≤ disc_tol.
pub fn weyl_coefficient(h: &Hamiltonian, z: Complex64, disc_tol: f64, t_max: f64) -> Result<Complex64> {
    let opts = WeylOptions::default().with_disc_tol(disc_tol).with_t_max(t_max);
    Ok(weyl_run(h, z, &opts)?.q)
}
