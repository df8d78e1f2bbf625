use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;

/// Local log-log slopes above this, growing toward 0, flag rapid variation.
pub const RAPID_SLOPE: f64 = 50.0;
pub const MIN_SAMPLES: usize = 20;
pub const MIN_DECADES: f64 = 3.0;

/// Result of fitting ln f = ln A + ρ ln t near 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegVarReport {
    /// Fitted index; infinite when `rapid`.
    pub index: f64,
    pub rapid: bool,
    /// Fitted A in f ≈ A·t^ρ.
    pub scale: f64,
    /// RMS residual of the fit in ln f.
    pub fit_residual: f64,
    pub decades_used: f64,
    pub samples_used: usize,
}

/// `n` log-spaced points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| {
            if n == 1 {
                lo
            } else {
                (a + (b - a) * k as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn positive_sorted(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut s: Vec<_> = samples
        .iter()
        .copied()
        .filter(|&(t, f)| t > 0.0 && f > 0.0 && t.is_finite() && f.is_finite())
        .collect();
    s.sort_by(|a, b| a.0.total_cmp(&b.0));
    s.dedup_by(|a, b| a.0 == b.0);
    s
}

fn slope(a: (f64, f64), b: (f64, f64)) -> f64 {
    (b.1 / a.1).ln() / (b.0 / a.0).ln()
}

/// Estimates the index of regular variation at 0 of sampled (t, f(t)).
/// The fit uses the smallest three decades of positive samples, widened to
/// at least [`MIN_SAMPLES`] points. Values that underflow to 0 near the
/// origin still count toward the sampled span, so e^{−1/t} is recognised.
pub fn estimate_regvar_index(samples: &[(f64, f64)]) -> Result<RegVarReport> {
    let mut all: Vec<_> = samples
        .iter()
        .copied()
        .filter(|&(t, f)| t > 0.0 && t.is_finite() && f >= 0.0 && f.is_finite())
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    let insufficient = |n: usize, span: f64| -> Result<()> {
        if n < MIN_SAMPLES {
            return Err(Error::InsufficientData(format!("{n} usable samples, need {MIN_SAMPLES}")));
        }
        if span < MIN_DECADES {
            return Err(Error::InsufficientData(format!(
                "samples span {span:.2} decades, need {MIN_DECADES}"
            )));
        }
        Ok(())
    };
    let span_of = |v: &[(f64, f64)]| match v {
        [] => 0.0,
        [first, .., last] => (last.0 / first.0).log10(),
        [_] => 0.0,
    };
    insufficient(all.len(), span_of(&all))?;
    let s = positive_sorted(&all);
    let rapid = s.len() >= 3 && {
        let t0 = s[0].0;
        let first_decade: Vec<_> = s.iter().copied().take_while(|p| p.0 <= 10.0 * t0).collect();
        first_decade.len() >= 3 && {
            let slopes: Vec<f64> = first_decade.windows(2).map(|p| slope(p[0], p[1])).collect();
            let growing = slopes.windows(2).all(|p| p[0] >= p[1] * (1.0 - 1e-9));
            let (lead, tail) = (slopes[0], slopes[slopes.len() - 1]);
            growing && tail > RAPID_SLOPE && lead >= 1.1 * tail
        }
    };
    if !rapid {
        insufficient(s.len(), span_of(&s))?;
    }
    let t0 = s[0].0;
    let n = s
        .iter()
        .take_while(|p| p.0 <= t0 * 10f64.powf(MIN_DECADES) * (1.0 + 1e-12))
        .count()
        .max(MIN_SAMPLES)
        .min(s.len());
    let w = &s[..n];
    let xs: Vec<f64> = w.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = w.iter().map(|p| p.1.ln()).collect();
    let m = n as f64;
    let xm = xs.iter().sum::<f64>() / m;
    let ym = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let rho = sxy / sxx;
    let ln_a = ym - rho * xm;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - ln_a - rho * x).powi(2)).sum();
    Ok(RegVarReport {
        index: if rapid { f64::INFINITY } else { rho },
        rapid,
        scale: ln_a.exp(),
        fit_residual: (rss / m).sqrt(),
        decades_used: span_of(w),
        samples_used: n,
    })
}

/// Samples (t, m_k(t)) of one primitive on a grid; k ∈ {0, 1, 2}.
pub fn primitive_samples(h: &Hamiltonian, grid: &[f64], k: usize) -> Result<Vec<(f64, f64)>> {
    grid.iter()
        .map(|&t| {
            let m = h.primitive(t)?;
            Ok((t, [m.m1, m.m2, m.m3][k]))
        })
        .collect()
}

/// δ = lim m3/√(m1m2) at 0, averaged over the three smallest grid points
/// below 10⁻³ and clamped to [−1, 1].
pub fn estimate_delta(h: &Hamiltonian, grid: &[f64]) -> Result<f64> {
    let mut small: Vec<f64> = grid.iter().copied().filter(|&t| t > 0.0 && t < 1e-3).collect();
    if small.len() < 3 {
        return Err(Error::InsufficientData("need three grid points below 1e-3".into()));
    }
    small.sort_by(f64::total_cmp);
    let mut acc = 0.0;
    for &t in &small[..3] {
        let m = h.primitive(t)?;
        if m.m3 != 0.0 {
            let p = m.m1 * m.m2;
            if !(p > 0.0) {
                return Err(Error::Hypotheses(format!("m1·m2 vanishes at t = {t}")));
            }
            acc += m.m3 / p.sqrt();
        }
    }
    Ok((acc / 3.0).clamp(-1.0, 1.0))
}

/// Worst deviation of F(t)(ρ+1)/(t f(t)) from 1 over the smallest decade,
/// where F = ∫₀ᵗ f is built from piecewise power laws between samples.
pub fn karamata_ratio(samples: &[(f64, f64)], rho: f64) -> Result<f64> {
    if !(rho > -1.0) {
        return Err(Error::Domain(format!("index {rho} is not integrable at 0")));
    }
    let s = positive_sorted(samples);
    if s.len() < 3 {
        return Err(Error::InsufficientData("need three positive samples".into()));
    }
    let p0 = slope(s[0], s[1]);
    if !(p0 > -1.0) {
        return Err(Error::Hypotheses("samples are not integrable at 0".into()));
    }
    let mut big_f = s[0].0 * s[0].1 / (p0 + 1.0);
    let t0 = s[0].0;
    let mut worst = 0.0f64;
    for (k, &(t, f)) in s.iter().enumerate() {
        if k > 0 {
            let (a, fa) = s[k - 1];
            let p = slope((a, fa), (t, f));
            big_f += if (p + 1.0).abs() < 1e-12 {
                fa * a * (t / a).ln()
            } else {
                (t * f - a * fa) / (p + 1.0)
            };
        }
        if t > 10.0 * t0 * (1.0 + 1e-12) {
            break;
        }
        worst = worst.max((big_f * (rho + 1.0) / (t * f) - 1.0).abs());
    }
    Ok(worst)
}
