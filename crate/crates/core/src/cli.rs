//! Command-line front end. Every command writes a `#` header recording the
//! numeric settings, then CSV rows or `key=value` lines.

use crate::asymptotics::{
    constants_ledger, estimate_delta, estimate_regvar_index, kasahara_scalers, log_grid, breve_t,
    a_h, predict_power_asymptotics, primitive_samples, rescaling_limit_check, verify_asymptotics, LimitShape,
};
use crate::error::Error;
use crate::hamiltonian::{Hamiltonian, HamiltonianSpec, RapidEntry};
use crate::power_model::{boundary_case, closed_form_q, BoundaryCase, PowerLaw};
use crate::weyl_numeric::{weyl_run, WeylOptions, DEFAULT_DISC_TOL, DEFAULT_ODE_TOL, DEFAULT_T_MAX};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_DATA: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "canonical-weyl", about = "Weyl coefficients of canonical systems", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form power law Q_{α,ω} of a power Hamiltonian.
    PowerQ(Common),
    /// Numeric Weyl coefficient via nested discs.
    NumericQ(Common),
    /// Constants ledger (α, δ, ω, ω′) from the behaviour at 0.
    Predict(Common),
    /// Compare numeric q(re^{iφ}) with the predicted power law.
    Verify(VerifyArgs),
    /// Regular-variation diagnostics for m1, m2 and δ.
    Regvar(RegvarArgs),
    /// Kasahara scalers and rescaling-limit deviations.
    Rescale(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON Hamiltonian specification.
    #[arg(long)]
    pub spec: PathBuf,
    /// Spectral points, e.g. `i,2i,1+i`.
    #[arg(long, value_delimiter = ',', value_parser = parse_complex)]
    pub z: Vec<Complex64>,
    #[arg(long = "r-grid", value_delimiter = ',')]
    pub r_grid: Vec<f64>,
    /// Angles in (0, π); accepts forms like `pi/4` and `3pi/4`.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    pub angles: Vec<f64>,
    #[arg(long = "ode-tol", default_value_t = DEFAULT_ODE_TOL)]
    pub ode_tol: f64,
    #[arg(long = "disc-tol", default_value_t = DEFAULT_DISC_TOL)]
    pub disc_tol: f64,
    #[arg(long = "t-max", default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 0.05)]
    pub threshold: f64,
    /// Override the predicted exponent.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Override the predicted ω′.
    #[arg(long, value_parser = parse_complex)]
    pub omega: Option<Complex64>,
}

#[derive(Debug, Args)]
pub struct RegvarArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "t-lo", default_value_t = 1e-7)]
    pub t_lo: f64,
    #[arg(long = "t-hi", default_value_t = 1.0)]
    pub t_hi: f64,
    #[arg(long, default_value_t = 71)]
    pub samples: usize,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    Complex64::from_str(s.trim()).map_err(|_| format!("cannot parse `{s}` as a complex number"))
}

fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse `{s}` as an angle");
    let Some(at) = s.find("pi") else {
        return s.parse().map_err(|_| bad());
    };
    let head = &s[..at];
    let tail = &s[at + 2..];
    let k: f64 = match head.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse().map_err(|_| bad())?,
    };
    let d: f64 = match tail {
        "" => 1.0,
        t => t.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?,
    };
    Ok(k * std::f64::consts::PI / d)
}

/// `%.17g`: 17 significant digits with trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mant), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (16 - exp) as usize, x))
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", fmt_num(z.re), sign, fmt_num(z.im.abs()))
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidHamiltonian(_) => EXIT_SPEC,
            Error::Domain(_) | Error::Hypotheses(_) | Error::NotBoundary => EXIT_DOMAIN,
            Error::InsufficientData(_) => EXIT_DATA,
            _ => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn read_spec(path: &PathBuf) -> Result<HamiltonianSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_SPEC, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail(EXIT_SPEC, format!("malformed spec {}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<(HamiltonianSpec, Hamiltonian), Failure> {
    let spec = read_spec(path)?;
    let h = spec.build().map_err(|e| fail(EXIT_SPEC, e.to_string()))?;
    Ok((spec, h))
}

fn header(cmd: &str, c: &Common) -> String {
    format!(
        "# canonical-weyl {cmd} ode_tol={} disc_tol={} t_max={}\n",
        fmt_num(c.ode_tol),
        fmt_num(c.disc_tol),
        fmt_num(c.t_max)
    )
}

fn check_common(c: &Common) -> CmdResult {
    for (name, v) in [("ode-tol", c.ode_tol), ("disc-tol", c.disc_tol), ("t-max", c.t_max)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(fail(EXIT_DOMAIN, format!("--{name} must be positive, got {v}")));
        }
    }
    if c.z.iter().any(|z| !(z.im > 0.0)) {
        return Err(fail(EXIT_DOMAIN, "every z must have Im z > 0"));
    }
    if c.r_grid.windows(2).any(|w| w[1] <= w[0]) || c.r_grid.iter().any(|&r| !(r > 0.0)) {
        return Err(fail(EXIT_DOMAIN, "--r-grid must be positive and increasing"));
    }
    if c.angles.windows(2).any(|w| w[1] <= w[0]) {
        return Err(fail(EXIT_DOMAIN, "--angles must be increasing"));
    }
    Ok(())
}

fn options(c: &Common) -> WeylOptions {
    WeylOptions::default()
        .with_ode_tol(c.ode_tol)
        .with_disc_tol(c.disc_tol)
        .with_t_max(c.t_max)
}

/// Sink for tables: `--out` when given, else the summary stream.
struct Output<'a> {
    text: String,
    path: Option<&'a PathBuf>,
}

impl<'a> Output<'a> {
    fn new(c: &'a Common) -> Self {
        Output {
            text: String::new(),
            path: c.out.as_ref(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn finish(self, stdout: &mut dyn Write) -> CmdResult {
        match self.path {
            Some(p) => std::fs::write(p, &self.text)
                .map_err(|e| fail(EXIT_NUMERIC, format!("cannot write {}: {e}", p.display()))),
            None => stdout
                .write_all(self.text.as_bytes())
                .map_err(|e| fail(EXIT_NUMERIC, e.to_string())),
        }
    }
}

fn say(stdout: &mut dyn Write, s: impl AsRef<str>) -> CmdResult {
    writeln!(stdout, "{}", s.as_ref()).map_err(|e| fail(EXIT_NUMERIC, e.to_string()))
}

fn leading(spec: &HamiltonianSpec) -> Option<([f64; 3], [f64; 3])> {
    let (rho, kappa) = match spec {
        HamiltonianSpec::Power { rho, kappa } | HamiltonianSpec::PerturbedPower { rho, kappa, .. } => (rho, kappa),
        _ => return None,
    };
    let r3 = match rho[..] {
        [a, b] => 0.5 * (a + b),
        [_, _, c] => c,
        _ => return None,
    };
    let rho = [rho[0], rho[1], r3];
    Some((rho, [kappa[0] / rho[0], kappa[1] / rho[1], kappa[2] / rho[2]]))
}

fn cmd_power_q(c: &Common, stdout: &mut dyn Write) -> CmdResult {
    check_common(c)?;
    let (spec, h) = load(&c.spec)?;
    if !matches!(spec, HamiltonianSpec::Power { .. } | HamiltonianSpec::Piecewise { .. }) {
        return Err(fail(EXIT_SPEC, "power-q needs a power or two-step piecewise spec"));
    }
    say(stdout, header("power-q", c).trim_end())?;
    let law = match boundary_case(&h) {
        Ok(BoundaryCase::QInfinite) => return say(stdout, "q = infinity (indivisible start along e1)"),
        Ok(BoundaryCase::QZero) => return say(stdout, "q = 0 (indivisible start along e2)"),
        Ok(BoundaryCase::Law(l)) => l,
        Err(Error::NotBoundary) => match h.power_data() {
            Some(d) => closed_form_q(d)?,
            None => return Err(fail(EXIT_SPEC, "spec is neither a power nor a step Hamiltonian")),
        },
        Err(e) => return Err(e.into()),
    };
    say(stdout, format!("alpha={} omega={}", fmt_num(law.alpha), fmt_complex(law.omega)))?;
    say(
        stdout,
        format!(
            "omega_re={} omega_im={} omega_abs={} omega_arg={}",
            fmt_num(law.omega.re),
            fmt_num(law.omega.im),
            fmt_num(law.omega.norm()),
            fmt_num(law.omega.arg())
        ),
    )?;
    if c.z.is_empty() {
        return Ok(());
    }
    let mut out = Output::new(c);
    if c.out.is_some() {
        out.text.push_str(&header("power-q", c));
    }
    out.line("re_z,im_z,re_q,im_q");
    for &z in &c.z {
        let q = law.eval(z);
        out.line(format!("{},{},{},{}", fmt_num(z.re), fmt_num(z.im), fmt_num(q.re), fmt_num(q.im)));
    }
    out.finish(stdout)
}

fn cmd_numeric_q(c: &Common, stdout: &mut dyn Write) -> CmdResult {
    check_common(c)?;
    let (_, h) = load(&c.spec)?;
    let zs = if c.z.is_empty() { vec![Complex64::i()] } else { c.z.clone() };
    let opts = options(c);
    use rayon::prelude::*;
    let runs: Vec<_> = zs.par_iter().map(|&z| (z, weyl_run(&h, z, &opts))).collect();
    let mut out = Output::new(c);
    out.text.push_str(&header("numeric-q", c));
    out.line("re_z,im_z,re_q,im_q,radius,t_reached,status");
    let mut ok = 0;
    for (z, run) in &runs {
        let (zr, zi) = (fmt_num(z.re), fmt_num(z.im));
        match run {
            Ok(r) => {
                ok += 1;
                out.line(format!(
                    "{zr},{zi},{},{},{},{},ok",
                    fmt_num(r.q.re),
                    fmt_num(r.q.im),
                    fmt_num(r.disc.radius),
                    fmt_num(r.t_reached)
                ));
            }
            Err(Error::AtInfinity) => {
                ok += 1;
                out.line(format!("{zr},{zi},inf,inf,,,infinite"));
            }
            Err(Error::DiscNotConverged { t, center, radius }) => out.line(format!(
                "{zr},{zi},{},{},{},{},not_converged",
                fmt_num(center.re),
                fmt_num(center.im),
                fmt_num(*radius),
                fmt_num(*t)
            )),
            Err(e) => out.line(format!("{zr},{zi},,,,,failed: {}", e.to_string().replace(',', ";"))),
        }
    }
    out.finish(stdout)?;
    if ok == 0 {
        return Err(fail(EXIT_NUMERIC, "no spectral point converged"));
    }
    Ok(())
}

fn cmd_predict(c: &Common, stdout: &mut dyn Write) -> CmdResult {
    check_common(c)?;
    let spec = read_spec(&c.spec)?;
    let ledger = match &spec {
        HamiltonianSpec::Rapid { rapid_entry, rho, kappa, .. } => {
            let (r1, r2, cs) = if *rapid_entry == 1 {
                (f64::INFINITY, *rho, [0.0, kappa / rho, 0.0])
            } else {
                (*rho, f64::INFINITY, [kappa / rho, 0.0, 0.0])
            };
            constants_ledger(r1, r2, cs)?
        }
        _ => {
            let Some((rho, cs)) = leading(&spec) else {
                return Err(fail(EXIT_SPEC, "predict needs a power, perturbed_power or rapid spec"));
            };
            if !(rho.iter().all(|&r| r > 0.0 && r.is_finite()) && cs[0] > 0.0 && cs[1] > 0.0) {
                return Err(fail(EXIT_DOMAIN, "predict needs ρ > 0 and κ1, κ2 > 0"));
            }
            constants_ledger(rho[0], rho[1], cs)?
        }
    };
    let mut out = Output::new(c);
    out.text.push_str(&header("predict", c));
    out.line(format!("rho1={}", fmt_num(ledger.rho1)));
    out.line(format!("rho2={}", fmt_num(ledger.rho2)));
    out.line(format!("sigma={}  # min(rho1, rho2)", fmt_num(ledger.sigma)));
    out.line(format!("c1={} c2={} c3={}  # kappa_i/rho_i", fmt_num(ledger.c[0]), fmt_num(ledger.c[1]), fmt_num(ledger.c[2])));
    out.line(format!("alpha={}  # (rho2-rho1)/(rho2+rho1)", fmt_num(ledger.alpha)));
    out.line(format!("delta={}  # c3/sqrt(c1*c2)", fmt_num(ledger.delta)));
    out.line(format!("omega={}  # gamma-ratio formula in (alpha, delta)", fmt_complex(ledger.omega)));
    match ledger.omega_prime {
        Some(w) => out.line(format!(
            "omega_prime={}  # omega*c1^((alpha+1)/2)*c2^((alpha-1)/2)",
            fmt_complex(w)
        )),
        None => out.line("omega_prime=none  # rapid variation, scale not determined by leading terms"),
    }
    out.line(format!("arg_omega={}  # -atan(tan(pi(1-|alpha|)/2)*tanh(pi|alpha|delta/(2s)))", fmt_num(ledger.arg_omega)));
    out.finish(stdout)
}

fn predicted_law(spec: &HamiltonianSpec, h: &Hamiltonian) -> Result<PowerLaw, Failure> {
    if let Some((rho, cs)) = leading(spec) {
        return Ok(predict_power_asymptotics(cs[0], cs[1], cs[2], rho[0], rho[1])?);
    }
    match boundary_case(h) {
        Ok(BoundaryCase::Law(l)) => Ok(l),
        _ => Err(fail(
            EXIT_SPEC,
            "no prediction for this spec; pass --alpha and --omega explicitly",
        )),
    }
}

fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> CmdResult {
    let c = &a.common;
    check_common(c)?;
    if !(a.threshold > 0.0) {
        return Err(fail(EXIT_DOMAIN, "--threshold must be positive"));
    }
    let (spec, h) = load(&c.spec)?;
    let law = match (a.alpha, a.omega) {
        (Some(alpha), Some(omega)) => PowerLaw::new(alpha, omega)?,
        (alpha, omega) => {
            let p = predicted_law(&spec, &h)?;
            PowerLaw::new(alpha.unwrap_or(p.alpha), omega.unwrap_or(p.omega))?
        }
    };
    let r_grid = if c.r_grid.is_empty() { vec![10.0, 1e2, 1e3, 1e4] } else { c.r_grid.clone() };
    let angles = if c.angles.is_empty() {
        let q = std::f64::consts::FRAC_PI_4;
        vec![q, 2.0 * q, 3.0 * q]
    } else {
        c.angles.clone()
    };
    let v = verify_asymptotics(&h, &law, &r_grid, &angles, &options(c))?;
    let mut out = Output::new(c);
    out.text.push_str(&header("verify", c));
    out.line(format!(
        "# alpha={} omega_prime={} threshold={}",
        fmt_num(law.alpha),
        fmt_complex(law.omega),
        fmt_num(a.threshold)
    ));
    out.line("r,phi,re_q,im_q,re_pred,im_pred,rel_error,status");
    for cell in &v.cells {
        let (q, e, status) = match (&cell.q, cell.error, &cell.failure) {
            (Some(q), Some(e), None) => (format!("{},{}", fmt_num(q.re), fmt_num(q.im)), fmt_num(e), "ok".to_string()),
            (_, _, Some(f)) => (",".into(), String::new(), format!("failed: {}", f.to_string().replace(',', ";"))),
            _ => (",".into(), String::new(), "failed".into()),
        };
        out.line(format!(
            "{},{},{q},{},{},{e},{status}",
            fmt_num(cell.r),
            fmt_num(cell.angle),
            fmt_num(cell.predicted.re),
            fmt_num(cell.predicted.im)
        ));
    }
    let worst = v.worst_final_error().map(fmt_num).unwrap_or_else(|| "none".into());
    let verdict = if v.passes(a.threshold) { "PASS" } else { "FAIL" };
    out.finish(stdout)?;
    say(
        stdout,
        format!(
            "{verdict} worst_final_error={worst} threshold={} decreasing={} failed_cells={}",
            fmt_num(a.threshold),
            v.all_decreasing(),
            v.failures().count()
        ),
    )?;
    if v.all_failed() {
        return Err(fail(EXIT_NUMERIC, "every cell failed"));
    }
    Ok(())
}

fn cmd_regvar(a: &RegvarArgs, stdout: &mut dyn Write) -> CmdResult {
    let c = &a.common;
    check_common(c)?;
    if !(a.t_lo > 0.0 && a.t_hi > a.t_lo) || a.samples < 2 {
        return Err(fail(EXIT_DOMAIN, "need 0 < --t-lo < --t-hi and at least two samples"));
    }
    let (_, h) = load(&c.spec)?;
    let l = h.length();
    let hi = if a.t_hi < l { a.t_hi } else { l * (1.0 - 1e-9) };
    let grid = log_grid(a.t_lo, hi, a.samples);
    let mut out = Output::new(c);
    out.text.push_str(&header("regvar", c));
    out.line(format!("# t_lo={} t_hi={} samples={}", fmt_num(a.t_lo), fmt_num(hi), a.samples));
    for (k, name) in [(0, "m1"), (1, "m2")] {
        let r = estimate_regvar_index(&primitive_samples(&h, &grid, k)?)?;
        let fit = if r.rapid {
            "scale=none fit_residual=none".to_string()
        } else {
            format!("scale={} fit_residual={}", fmt_num(r.scale), fmt_num(r.fit_residual))
        };
        out.line(format!(
            "{name}: index={} rapid={} {fit} decades_used={}",
            fmt_num(r.index),
            r.rapid,
            fmt_num(r.decades_used)
        ));
    }
    match estimate_delta(&h, &grid) {
        Ok(d) => out.line(format!("delta={}", fmt_num(d))),
        Err(Error::Hypotheses(m)) => out.line(format!("delta=none  # {m}")),
        Err(e) => return Err(e.into()),
    }
    out.finish(stdout)
}

fn cmd_rescale(c: &Common, stdout: &mut dyn Write) -> CmdResult {
    check_common(c)?;
    let (spec, h) = load(&c.spec)?;
    let r_grid = if c.r_grid.is_empty() { vec![1e2, 1e3, 1e4] } else { c.r_grid.clone() };
    let shape = match &spec {
        HamiltonianSpec::Rapid { .. } => match h {
            Hamiltonian::Rapid(d) if d.rapid_entry == RapidEntry::Upper => Some(LimitShape::RapidM1),
            _ => Some(LimitShape::RapidM2),
        },
        _ => leading(&spec).map(|(rho, cs)| LimitShape::Regular {
            rho1: rho[0],
            rho2: rho[1],
            delta: cs[2] / (cs[0] * cs[1]).sqrt(),
        }),
    };
    // the rapid limit converges slowest at the corner T = 1
    let x_grid: &[f64] = match shape {
        Some(LimitShape::Regular { .. }) => &[0.5, 1.0, 2.0],
        _ => &[0.5, 2.0],
    };
    let devs = match shape {
        Some(s) => Some(rescaling_limit_check(&h, &r_grid, x_grid, s)?),
        None => None,
    };
    let mut out = Output::new(c);
    out.text.push_str(&header("rescale", c));
    out.line("r,breve_t,a_h,b1,b2,dev_m1,dev_m2,dev_m3");
    for (k, &r) in r_grid.iter().enumerate() {
        let t = breve_t(&h, r)?;
        let a = a_h(&h, r)?;
        let (b1, b2) = kasahara_scalers(&h, r)?;
        let d = match &devs {
            Some(rows) => rows[k].deviation.map(fmt_num).join(","),
            None => ",,".into(),
        };
        out.line(format!("{},{},{},{},{},{d}", fmt_num(r), fmt_num(t), fmt_num(a), fmt_num(b1), fmt_num(b2)));
    }
    out.finish(stdout)
}

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SPEC } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::PowerQ(c) => cmd_power_q(c, stdout),
        Command::NumericQ(c) => cmd_numeric_q(c, stdout),
        Command::Predict(c) => cmd_predict(c, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Regvar(a) => cmd_regvar(a, stdout),
        Command::Rescale(c) => cmd_rescale(c, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.1), "0.10000000000000001");
        assert_eq!(fmt_num(1e6), "1000000");
        assert_eq!(fmt_num(1e-8), "1e-08");
        assert_eq!(fmt_num(-2.5e20), "-2.5e+20");
        assert_eq!(fmt_num(1e-5), "1.0000000000000001e-05");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(fmt_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
    }

    #[test]
    fn complex_and_angle_parsing() {
        assert_eq!(parse_complex("i").unwrap(), Complex64::i());
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("1+i").unwrap(), Complex64::new(1.0, 1.0));
        assert_eq!(parse_complex("-0.5+3i").unwrap(), Complex64::new(-0.5, 3.0));
        assert!(parse_complex("x").is_err());
        let q = std::f64::consts::FRAC_PI_4;
        assert_eq!(parse_angle("pi/4").unwrap(), q);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * q);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!(parse_angle("pie").is_err());
    }
}
