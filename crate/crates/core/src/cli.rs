//! Command-line front end. [`run`] parses arguments and returns the text to
//! print together with the exit code, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 certification failure, 2 usage or domain
//! error, 3 numerical failure (non-convergence, bracketing, overflow).

use std::ffi::OsString;
use std::fmt::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{evaluate, BoundPair, BoundsContext, InequalityId, Point};
use crate::classical::{gamma_classical, psi_classical, ClassicalConfig};
use crate::error::Error;
use crate::propcheck::{
    explore_thm_main, run_check, run_suite, CertificateReport, CertifyOptions, CheckId, FailureKind,
};
use crate::qcore::{EvalConfig, Evaluation, QParam};
use crate::qspecial::{euler_gamma_q, gamma_q, ln_gamma_q, psi_q, psi_q_m, psi_q_root};
use crate::report::{fmt_f64, render_json, render_plain, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub format: Format,
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "qgamma",
    version,
    about = "q-Gamma functions and certification of q-Gamma ratio bounds"
)]
struct Cli {
    /// Series term cap (overrides QGAMMA_MAX_TERMS).
    #[arg(long, global = true, env = "QGAMMA_MAX_TERMS")]
    max_terms: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate the bounds of one inequality at one point.
    Bounds(BoundsArgs),
    /// Certify inequalities and lemmas on seeded samples.
    Verify(VerifyArgs),
    /// Locate the positive root of psi_q.
    Root(RootArgs),
    /// Tabulate bounds along a one-parameter sweep.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FnName {
    GammaQ,
    LnGammaQ,
    PsiQ,
    #[value(name = "psi_q_m")]
    PsiQM,
    EulerGammaQ,
    Gamma,
    Psi,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    func: FnName,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Derivative order for psi_q_m.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Debug, Args, Clone, Default)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    ineq: InequalityId,
    #[command(flatten)]
    point: PointArgs,
    /// Evaluate outside the hypotheses of the inequality.
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Inequality or check name, or `all`.
    #[arg(long)]
    ineq: String,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Skip hypothesis checks when evaluating sampled points.
    #[arg(long)]
    force: bool,
    /// Halve every upper bound (harness self-test).
    #[arg(long, hide = true)]
    corrupt_upper: bool,
    /// Report wall time as 0 so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
    /// Also sample the main theorem below x, y = 1; never affects the exit code.
    #[arg(long)]
    explore: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Debug, Args)]
struct RootArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepVar {
    X,
    Y,
    Q,
    Alpha,
    Mu,
    Lambda,
}

impl SweepVar {
    fn name(self) -> &'static str {
        match self {
            SweepVar::X => "x",
            SweepVar::Y => "y",
            SweepVar::Q => "q",
            SweepVar::Alpha => "alpha",
            SweepVar::Mu => "mu",
            SweepVar::Lambda => "lambda",
        }
    }
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    ineq: InequalityId,
    #[arg(long, value_enum)]
    var: SweepVar,
    #[arg(long, allow_hyphen_values = true)]
    min: f64,
    #[arg(long, allow_hyphen_values = true)]
    max: f64,
    #[arg(long)]
    steps: usize,
    #[command(flatten)]
    fixed: PointArgs,
    /// Evaluate outside the hypotheses of the inequality.
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

struct Failed {
    code: i32,
    message: String,
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed {
            code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failed {
    Failed {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<(String, i32, String), Failed>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return CliOutput {
                format: Format::Plain,
                exit_code: e.exit_code(),
                stdout,
                stderr,
            };
        }
    };
    let format = match &cli.command {
        Command::Eval(a) => a.format,
        Command::Bounds(a) => a.format,
        Command::Verify(a) => a.format,
        Command::Root(a) => a.format,
        Command::Table(a) => a.format,
    };
    let result = eval_config(cli.max_terms).and_then(|cfg| match &cli.command {
        Command::Eval(a) => cmd_eval(a, &cfg),
        Command::Bounds(a) => cmd_bounds(a, &cfg),
        Command::Verify(a) => cmd_verify(a, &cfg),
        Command::Root(a) => cmd_root(a, &cfg),
        Command::Table(a) => cmd_table(a, &cfg),
    });
    match result {
        Ok((stdout, exit_code, stderr)) => CliOutput {
            format,
            exit_code,
            stdout,
            stderr,
        },
        Err(f) => CliOutput {
            format,
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn eval_config(max_terms: Option<u64>) -> std::result::Result<EvalConfig, Failed> {
    let cfg = EvalConfig::default();
    Ok(match max_terms {
        Some(n) => cfg.with_max_terms(n)?,
        None => cfg,
    })
}

fn no_csv(format: Format) -> std::result::Result<(), Failed> {
    if format == Format::Csv {
        return Err(usage("csv output is only available for `table`"));
    }
    Ok(())
}

fn need(v: Option<f64>, flag: &str, what: &str) -> std::result::Result<f64, Failed> {
    v.ok_or_else(|| usage(format!("{what} requires --{flag}")))
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn cmd_eval(a: &EvalArgs, cfg: &EvalConfig) -> CmdResult {
    no_csv(a.format)?;
    let name = a.func.to_possible_value().expect("not skipped").get_name().to_string();
    let classical = matches!(a.func, FnName::Gamma | FnName::Psi);
    if classical && a.q.is_some() {
        return Err(usage(format!("{name} does not take --q")));
    }
    if a.func == FnName::EulerGammaQ && a.x.is_some() {
        return Err(usage("euler_gamma_q does not take --x"));
    }
    if a.func != FnName::PsiQM && a.m.is_some() {
        return Err(usage(format!("{name} does not take --m")));
    }
    let q = || -> std::result::Result<QParam, Failed> { Ok(QParam::new(need(a.q, "q", &name)?)?) };
    let x = || need(a.x, "x", &name);
    let ev: Evaluation = match a.func {
        FnName::GammaQ => gamma_q(x()?, q()?, cfg)?,
        FnName::LnGammaQ => ln_gamma_q(x()?, q()?, cfg)?,
        FnName::PsiQ => psi_q(x()?, q()?, cfg)?,
        FnName::PsiQM => {
            let m = a.m.ok_or_else(|| usage("psi_q_m requires --m"))?;
            psi_q_m(m, x()?, q()?, cfg)?
        }
        FnName::EulerGammaQ => euler_gamma_q(q()?, cfg)?,
        FnName::Gamma => gamma_classical(x()?, &ClassicalConfig::default())?,
        FnName::Psi => psi_classical(x()?)?,
    };
    let out = match a.format {
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "fn": name,
            "x": a.x,
            "q": a.q,
            "m": a.m,
            "value": ev.value,
            "error_estimate": ev.error_estimate,
            "terms_used": ev.terms_used,
        })),
        _ => format!(
            "fn: {name}\nvalue: {}\nerror_estimate: {}\nterms_used: {}\n",
            fmt_f64(ev.value),
            fmt_f64(ev.error_estimate),
            ev.terms_used
        ),
    };
    Ok((out, EXIT_OK, String::new()))
}

/// Builds the point of inequality `id` from the flags, rejecting flags the
/// inequality does not use.
fn point_for(id: InequalityId, p: &PointArgs) -> std::result::Result<Point, Failed> {
    let name = id.as_str();
    let (uses_y, uses_alpha, uses_mu_lambda) = match id {
        InequalityId::ThmMain | InequalityId::ThmMvt | InequalityId::KeckicVasic | InequalityId::ZhangXuSitu => {
            (true, false, false)
        }
        InequalityId::ThmAlpha => (true, true, false),
        InequalityId::CorMuLambda => (false, false, true),
        InequalityId::CorHalfShift | InequalityId::CorOneHalf | InequalityId::RemarkRearranged => (false, false, false),
    };
    let uses_q = !id.is_classical();
    for (given, used, flag) in [
        (p.y.is_some(), uses_y, "y"),
        (p.q.is_some(), uses_q, "q"),
        (p.alpha.is_some(), uses_alpha, "alpha"),
        (p.mu.is_some() || p.lambda.is_some(), uses_mu_lambda, "mu/--lambda"),
    ] {
        if given && !used {
            return Err(usage(format!("{name} does not take --{flag}")));
        }
    }
    let x = need(p.x, "x", name)?;
    let q = if uses_q { Some(need(p.q, "q", name)?) } else { None };
    Ok(if uses_mu_lambda {
        Point::new(
            x,
            Some(need(p.mu, "mu", name)?),
            q,
            Some(need(p.lambda, "lambda", name)?),
        )
    } else {
        let y = if uses_y { Some(need(p.y, "y", name)?) } else { None };
        let aux = if uses_alpha {
            Some(need(p.alpha, "alpha", name)?)
        } else {
            None
        };
        Point::new(x, y, q, aux)
    })
}

fn context(cfg: &EvalConfig) -> BoundsContext {
    BoundsContext::new(*cfg, ClassicalConfig::default())
}

fn cmd_bounds(a: &BoundsArgs, cfg: &EvalConfig) -> CmdResult {
    no_csv(a.format)?;
    let point = point_for(a.ineq, &a.point)?;
    let bp = evaluate(a.ineq, &point, &context(cfg), a.force)?;
    let out = match a.format {
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "inequality_id": a.ineq.as_str(),
            "point": point,
            "lower": bp.lower,
            "ratio": bp.ratio,
            "upper": bp.upper,
            "lower_margin": bp.lower_margin,
            "upper_margin": bp.upper_margin,
            "log_lower_margin": bp.log_lower_margin(),
            "log_upper_margin": bp.log_upper_margin(),
            "strict": bp.strict,
            "satisfied": bp.is_satisfied(),
        })),
        _ => {
            let mut s = format!("inequality_id: {}\n", a.ineq);
            for (k, v) in [
                ("lower", bp.lower),
                ("ratio", bp.ratio),
                ("upper", bp.upper),
                ("lower_margin", bp.lower_margin),
                ("upper_margin", bp.upper_margin),
                ("log_lower_margin", bp.log_lower_margin()),
                ("log_upper_margin", bp.log_upper_margin()),
            ] {
                let _ = writeln!(s, "{k}: {}", fmt_f64(v));
            }
            let _ = writeln!(s, "strict: {}", bp.strict);
            let _ = writeln!(s, "satisfied: {}", bp.is_satisfied());
            s
        }
    };
    Ok((out, EXIT_OK, String::new()))
}

fn cmd_verify(a: &VerifyArgs, cfg: &EvalConfig) -> CmdResult {
    no_csv(a.format)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let ctx = context(cfg);
    let opts = CertifyOptions {
        force: a.force,
        corrupt_upper: a.corrupt_upper,
        record_timing: !a.no_timing,
    };
    let all = a.ineq == "all";
    let mut reports: Vec<CertificateReport> = if all {
        run_suite(a.samples, a.seed, &ctx, &opts)?
    } else {
        let check: CheckId = a.ineq.parse()?;
        vec![run_check(check, a.samples, a.seed, &ctx, &opts)?]
    };
    let code = if reports.iter().any(CertificateReport::numerically_broken) {
        EXIT_NUMERICAL
    } else if reports.iter().all(CertificateReport::all_passed) {
        EXIT_OK
    } else {
        EXIT_CERT_FAILURE
    };
    let mut stderr = String::new();
    if a.explore {
        let r = explore_thm_main(a.samples, a.seed, &ctx, &opts)?;
        let errors = r.failures.iter().filter(|f| f.kind == FailureKind::Error).count();
        let violations = r.failures.len() - errors;
        if !r.all_passed() {
            let _ = writeln!(
                stderr,
                "note: exploratory thm_main below x, y = 1: {} of {} samples failed \
                 ({violations} violations, {errors} evaluation errors among the recorded failures)",
                r.n_failures(),
                r.n_samples
            );
        }
        reports.push(r);
    }
    let out = match a.format {
        Format::Json => render_json(&reports, all || a.explore),
        _ => render_plain(&reports),
    };
    Ok((out, code, stderr))
}

fn cmd_root(a: &RootArgs, cfg: &EvalConfig) -> CmdResult {
    no_csv(a.format)?;
    let q = QParam::new(a.q)?;
    let r = psi_q_root(q, cfg)?;
    let out = match a.format {
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "q": r.q,
            "root": r.root,
            "bracket_low": r.bracket_low,
            "bracket_high": r.bracket_high,
            "residual": r.residual,
        })),
        _ => format!(
            "q: {}\nroot: {}\nbracket_low: {}\nbracket_high: {}\nresidual: {}\n",
            fmt_f64(r.q),
            fmt_f64(r.root),
            fmt_f64(r.bracket_low),
            fmt_f64(r.bracket_high),
            fmt_f64(r.residual)
        ),
    };
    Ok((out, EXIT_OK, String::new()))
}

fn sweep_point(fixed: &PointArgs, var: SweepVar, v: f64) -> PointArgs {
    let mut p = fixed.clone();
    let slot = match var {
        SweepVar::X => &mut p.x,
        SweepVar::Y => &mut p.y,
        SweepVar::Q => &mut p.q,
        SweepVar::Alpha => &mut p.alpha,
        SweepVar::Mu => &mut p.mu,
        SweepVar::Lambda => &mut p.lambda,
    };
    *slot = Some(v);
    p
}

fn cmd_table(a: &TableArgs, cfg: &EvalConfig) -> CmdResult {
    if a.format == Format::Plain {
        return Err(usage("table supports --format csv or json"));
    }
    if a.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
        return Err(usage("sweep needs finite --min < --max"));
    }
    let var = a.var.name();
    let ctx = context(cfg);
    let rows = (0..a.steps)
        .map(|i| {
            let v = if i + 1 == a.steps {
                a.max
            } else {
                a.min + (a.max - a.min) * i as f64 / (a.steps - 1) as f64
            };
            let point = point_for(a.ineq, &sweep_point(&a.fixed, a.var, v))?;
            Ok((v, evaluate(a.ineq, &point, &ctx, a.force)?))
        })
        .collect::<std::result::Result<Vec<(f64, BoundPair)>, Failed>>()?;
    let out = match a.format {
        Format::Json => pretty(serde_json::Value::Array(
            rows.iter()
                .map(|(v, bp)| {
                    json!({
                        var: v,
                        "lower": bp.lower,
                        "ratio": bp.ratio,
                        "upper": bp.upper,
                        "lower_margin": bp.lower_margin,
                        "upper_margin": bp.upper_margin,
                    })
                })
                .collect(),
        )),
        _ => {
            let mut s = format!("{var},lower,ratio,upper,lower_margin,upper_margin\n");
            for (v, bp) in &rows {
                let cells = [*v, bp.lower, bp.ratio, bp.upper, bp.lower_margin, bp.upper_margin];
                let line: Vec<String> = cells.iter().map(|&c| fmt_f64(c)).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            s
        }
    };
    Ok((out, EXIT_OK, String::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(cmd: &str) -> CliOutput {
        run(std::iter::once("qgamma").chain(cmd.split_whitespace()))
    }

    fn value_line(out: &str, key: &str) -> f64 {
        let prefix = format!("{key}: ");
        out.lines()
            .find_map(|l| l.strip_prefix(&prefix))
            .unwrap_or_else(|| panic!("{key} missing in {out}"))
            .parse()
            .unwrap()
    }

    #[test]
    fn eval_examples() {
        let o = run_args("eval --fn gamma_q --x 3 --q 0.5");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
        assert!((value_line(&o.stdout, "value") - 1.5).abs() <= 1e-14);

        let o = run_args("eval --fn psi_q --x 1 --q 0.5");
        assert!((value_line(&o.stdout, "value") + 0.42052903435604578).abs() <= 1e-13);

        let o = run_args("eval --fn gamma_q --x -1 --q 0.5");
        assert_eq!(o.exit_code, 2);
        assert!(o.stderr.starts_with("error:"));
    }

    #[test]
    fn eval_polygamma_order() {
        let o = run_args("eval --fn psi_q_m --x 2 --q 0.5 --m 1");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
        assert!((value_line(&o.stdout, "value") - 0.35747332431177599).abs() <= 1e-14);
        assert_eq!(run_args("eval --fn psi_q --x 2 --q 0.5 --m 1").exit_code, 2);
    }

    #[test]
    fn eval_argument_errors() {
        for cmd in [
            "eval --fn nope --x 1",
            "eval --fn gamma_q --x 1",
            "eval --fn psi_q_m --x 1 --q 0.5",
            "eval --fn gamma --x 1 --q 0.5",
            "eval --fn gamma_q --x 1 --q 0.5 --format csv",
        ] {
            assert_eq!(run_args(cmd).exit_code, 2, "{cmd}");
        }
    }

    #[test]
    fn eval_non_convergence_exits_3() {
        let o = run_args("eval --fn ln_gamma_q --x 2 --q 0.99 --max-terms 5");
        assert_eq!(o.exit_code, 3);
    }

    #[test]
    fn bounds_examples() {
        let o = run_args("bounds --ineq thm_mvt --x 2 --y 1 --q 0.5");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("satisfied: true"));

        let o = run_args("bounds --ineq thm_mvt --x 1 --y 2 --q 0.5");
        assert_eq!(o.exit_code, 2);

        let o = run_args("bounds --ineq thm_alpha --x 1 --y 1 --alpha 5 --q 0.5");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
        for k in ["lower", "ratio", "upper"] {
            assert_eq!(value_line(&o.stdout, k), 1.0);
        }
    }

    #[test]
    fn bounds_rejects_unused_flags() {
        let o = run_args("bounds --ineq cor_one_half --x 2 --y 1 --q 0.5");
        assert_eq!(o.exit_code, 2);
        let o = run_args("bounds --ineq keckic_vasic --x 3 --y 2 --q 0.5");
        assert_eq!(o.exit_code, 2);
        let o = run_args("bounds --ineq cor_mu_lambda --x 2 --mu 1 --lambda 0.5 --q 0.5");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
    }

    #[test]
    fn bounds_force_skips_hypotheses() {
        let cmd = "bounds --ineq thm_main --x 0.5 --y 0.7 --q 0.5";
        assert_eq!(run_args(cmd).exit_code, 2);
        assert_eq!(run_args(&format!("{cmd} --force")).exit_code, 0);
    }

    #[test]
    fn root_examples() {
        let o = run_args("root --q 0.5");
        assert_eq!(o.exit_code, 0);
        let root = value_line(&o.stdout, "root");
        assert!(root > 1.0 && root < 2.0);
        assert!(value_line(&o.stdout, "residual").abs() <= 1e-10);
        assert_eq!(run_args("root --q 1.5").exit_code, 2);
        assert_eq!(run_args("root --q -0.5").exit_code, 2);
    }

    #[test]
    fn verify_single_and_corrupted() {
        let o = run_args("verify --ineq thm_main --samples 1 --seed 7");
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("n_samples: 1\n"));

        let o = run_args("verify --ineq thm_mvt --samples 20 --corrupt-upper");
        assert_eq!(o.exit_code, 1);
        assert!(o.stdout.contains("failure: kind=violation"));

        assert_eq!(run_args("verify --ineq nope --samples 5").exit_code, 2);
        assert_eq!(run_args("verify --ineq thm_main --samples 0").exit_code, 2);
    }

    #[test]
    fn verify_pervasive_non_convergence() {
        let o = run_args("verify --ineq cor_one_half --samples 10 --max-terms 3");
        assert_eq!(o.exit_code, 3);
    }

    #[test]
    fn verify_json_is_stable_without_timing() {
        let cmd = "verify --ineq limits --format json --no-timing";
        let a = run_args(cmd);
        assert_eq!(a.exit_code, 0, "{}", a.stdout);
        assert_eq!(a.stdout, run_args(cmd).stdout);
        let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["inequality_id"], "limits");
        assert_eq!(v["wall_time_s"], 0.0);
    }

    #[test]
    fn table_csv_and_json_agree() {
        let base = "table --ineq cor_one_half --var x --min 0.1 --max 5 --steps 3 --q 0.5";
        let csv = run_args(base);
        assert_eq!(csv.exit_code, 0, "{}", csv.stderr);
        let lines: Vec<&str> = csv.stdout.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "x,lower,ratio,upper,lower_margin,upper_margin");
        assert!(csv.stdout.ends_with('\n') && !csv.stdout.contains('\r'));

        let json = run_args(&format!("{base} --format json"));
        let rows: Vec<serde_json::Value> = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(rows.len(), 3);
        for (line, row) in lines[1..].iter().zip(&rows) {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            let keys = ["x", "lower", "ratio", "upper", "lower_margin", "upper_margin"];
            for (c, k) in cells.iter().zip(keys) {
                assert_eq!(c.to_bits(), row[k].as_f64().unwrap().to_bits(), "{k}");
            }
            assert!(cells[1] <= cells[2] && cells[2] <= cells[3]);
        }
    }

    #[test]
    fn table_malformed_sweeps() {
        let mk = |min: &str, max: &str, steps: &str| {
            run_args(&format!(
                "table --ineq cor_one_half --var x --min {min} --max {max} --steps {steps} --q 0.5"
            ))
            .exit_code
        };
        assert_eq!(mk("0.1", "5", "1"), 2);
        assert_eq!(mk("5", "0.1", "3"), 2);
        assert_eq!(mk("1", "1", "3"), 2);
        assert_eq!(mk("-1", "5", "3"), 2);
    }

    #[test]
    fn table_sweeps_other_variables() {
        let o = run_args("table --ineq thm_mvt --var q --min 0.1 --max 0.9 --steps 5 --x 3 --y 2");
        assert_eq!(o.exit_code, 0, "{}", o.stderr);
        assert!(o.stdout.starts_with("q,lower,"));
        assert_eq!(o.stdout.lines().count(), 6);
    }

    #[test]
    fn help_exits_zero() {
        let o = run_args("--help");
        assert_eq!(o.exit_code, 0);
        assert!(o.stdout.contains("verify"));
        assert!(!o.stdout.contains("corrupt"));
    }
}
