use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use shalika_core::charspace::{parse_char_spec, parse_segment_spec};
use shalika_core::exactalg::registry::X;
use shalika_core::exactalg::{laurent_expand, parse_ratfunc};
use shalika_core::fjzeta::{e_p_factor, kappa_solve, unit_mass, zeta_oracle, zeta_refined, zeta_spherical, EpBranch, ZetaParams};
use shalika_core::intertwine::{apply_intertwiner, basis_vector, image_closed_form, ImageKind, ParahoricVec};
use shalika_core::shalikaeval::{
    closed_coefficient_perm, fact_a_sides, fact_ab_check_randomized, fact_b_sides, local_coefficient, parse_block_spec,
    vanishing_certificate, wedge2_sides,
};
use shalika_core::suite::{find_check, plan, registry, run_jobs, CheckReport, Mode, Outcome, Status};
use shalika_core::weylcomb::{double_coset_count, double_coset_reps, levi_check_exhaustive, Perm, SimpleSet};
use shalika_core::{Error, Result};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

#[derive(Parser, Debug)]
#[command(name = "shalika", version, about = "Exact checks for Shalika coefficients and parahoric intertwining operators on GL(2n)")]
#[command(group(ArgGroup::new("format").args(["json", "text"])))]
struct Cli {
    /// Exact symbolic arithmetic or random rational specializations.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact, global = true)]
    mode: ModeArg,
    /// Seed for randomized mode.
    #[arg(long, default_value_t = 20_261_016, global = true)]
    seed: u64,
    /// Points per randomized check.
    #[arg(long, default_value_t = 20, global = true)]
    reps: usize,
    /// JSON reports, one per line (default).
    #[arg(long, global = true)]
    json: bool,
    /// Human-readable report lines.
    #[arg(long, global = true)]
    text: bool,
    /// Abort with exit code 2 after this many milliseconds.
    #[arg(long, global = true)]
    timeout_ms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Random,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a registered check, or `all`; `list` prints the registry.
    Verify(VerifyArgs),
    /// Shalika coefficient of an admissible Weyl element.
    Coeff(CoeffArgs),
    /// The two A/B recursion identities in n variables.
    FactAb(NArg),
    /// Swap coefficient against the γ-factor product.
    Wedge2(Wedge2Args),
    /// Vanishing factor for a block of segment data.
    Vanish(VanishArgs),
    /// Zeta-integral closed forms and series.
    Zeta(ZetaArgs),
    /// Partial-fraction constants over spin refinements.
    Kappa(KappaArgs),
    /// Interpolation factor.
    Ep(EpArgs),
    /// Unit-group mass ∏(1 − q^{−i}).
    Mass(NArg),
    /// Double-coset representatives against brute-force orbit counts.
    Cosets(CosetArgs),
    /// Exhaustive Levi intersection check.
    LeviCheck(NArg),
    /// Apply an intertwining operator to a basis or JSON vector.
    Intertwine(IntertwineArgs),
}

#[derive(Args, Debug)]
struct NArg {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check name, `all`, or `list`.
    check: String,
    /// Run only at this n (default: 1, 2, 3 exact and 4 randomized).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("side").args(["closed", "pipeline", "both"])))]
struct CoeffArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tau: String,
    #[arg(long, default_value = "ag-generic")]
    theta: String,
    #[arg(long)]
    closed: bool,
    #[arg(long)]
    pipeline: bool,
    #[arg(long)]
    both: bool,
}

#[derive(Args, Debug)]
struct Wedge2Args {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "generic")]
    theta: String,
}

#[derive(Args, Debug)]
struct VanishArgs {
    /// e.g. `segments a=0,b=1,c=1,eps=-1`
    #[arg(long)]
    segments: String,
    /// `quadratic:i`, `steinberg:i` or `steinberg:i:prime`
    #[arg(long)]
    block: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ZetaForm {
    Refined,
    Spherical,
    Oracle,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    /// Which expression to produce.
    #[arg(long, value_enum, default_value_t = ZetaForm::Refined)]
    form: ZetaForm,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    delta: u32,
    #[arg(long, default_value = "generic")]
    theta: String,
    /// Also report series coefficients through X^order.
    #[arg(long)]
    order: Option<i32>,
}

#[derive(Args, Debug)]
struct KappaArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "ag-generic")]
    theta: String,
}

#[derive(Args, Debug)]
struct EpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    j: i32,
    #[arg(long)]
    ramified: bool,
    #[arg(long, requires = "ramified")]
    alpha: Option<String>,
    #[arg(long, requires = "ramified", default_value_t = 1)]
    beta: u32,
    #[arg(long, default_value = "generic")]
    theta: String,
}

#[derive(Args, Debug)]
struct CosetArgs {
    #[arg(long)]
    n: usize,
    /// Left simple-root set, e.g. `{1,3}`, `siegel`, `full`, `empty`.
    #[arg(long, default_value = "siegel")]
    s: String,
    #[arg(long, default_value = "siegel")]
    t: String,
}

#[derive(Args, Debug)]
struct IntertwineArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    tau: String,
    /// Target character; the operator starts from its τ⁻¹-twist.
    #[arg(long, default_value = "generic")]
    theta: String,
    /// Basis coset (default w₀).
    #[arg(long, conflicts_with = "vec")]
    w: Option<String>,
    /// Input vector in JSON form, over the source character.
    #[arg(long)]
    vec: Option<String>,
    /// Compare with a closed form: `pair:i` or `swap`.
    #[arg(long)]
    closed: Option<String>,
}

struct Ctx {
    mode: Mode,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mode = match cli.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Random => Mode::Randomized { seed: cli.seed, reps: cli.reps.max(1) },
    };
    let text = cli.text;
    let timeout = cli.timeout_ms;
    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    std::thread::spawn(move || {
        let reports = dispatch(command, &Ctx { mode });
        let _ = tx.send(reports);
    });
    let reports = match timeout {
        Some(ms) => match rx.recv_timeout(Duration::from_millis(ms)) {
            Ok(r) => r,
            Err(_) => {
                let err = Error::Timeout(ms);
                vec![CheckReport::error("timeout", json!({}), mode, &err)]
            }
        },
        None => rx.recv().unwrap_or_else(|_| vec![CheckReport::error("internal", json!({}), mode, &Error::Precondition("worker panicked".into()))]),
    };
    for r in &reports {
        if text {
            println!("{}", r.text_line());
        } else {
            println!("{}", serde_json::to_string(r).expect("report serializes"));
        }
    }
    exit_code(&reports)
}

fn exit_code(reports: &[CheckReport]) -> ExitCode {
    if reports.is_empty() || reports.iter().any(|r| r.status == Status::Error) {
        ExitCode::from(2)
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn single(name: &str, params: serde_json::Value, ctx: &Ctx, f: impl FnOnce() -> Result<(Outcome, Option<serde_json::Value>)>) -> Vec<CheckReport> {
    let start = Instant::now();
    let (result, data) = match f() {
        Ok((o, d)) => (Ok(o), d),
        Err(e) => (Err(e), None),
    };
    let mut r = CheckReport::from_outcome(name, params, ctx.mode, start, result);
    r.data = data;
    vec![r]
}

fn dispatch(cmd: Command, ctx: &Ctx) -> Vec<CheckReport> {
    match cmd {
        Command::Verify(a) => verify(a, ctx),
        Command::Coeff(a) => coeff(a, ctx),
        Command::FactAb(a) => fact_ab(a.n, ctx),
        Command::Wedge2(a) => single("wedge2", json!({"n": a.n, "theta": a.theta}), ctx, || {
            let th = parse_char_spec(&a.theta, a.n)?;
            let (l, r) = wedge2_sides(&th)?;
            Ok((Outcome::equal(&l, &r), None))
        }),
        Command::Vanish(a) => single("vanish", json!({"segments": a.segments, "block": a.block}), ctx, || {
            let data = parse_segment_spec(&a.segments)?;
            let block = parse_block_spec(&a.block)?;
            let cert = vanishing_certificate(&data, block)?;
            let o = Outcome { pass: cert.factor.is_zero(), lhs: cert.factor.to_string(), rhs: "0".into(), detail: None };
            Ok((o, Some(json!({"nu": cert.nu.to_string(), "mu": cert.mu.to_string()}))))
        }),
        Command::Zeta(a) => zeta(a, ctx),
        Command::Kappa(a) => single("kappa", json!({"n": a.n, "theta": a.theta}), ctx, || {
            let th = parse_char_spec(&a.theta, a.n)?;
            let k = kappa_solve(&th)?;
            let entries: Vec<_> = k.entries.iter().map(|(r, x)| json!({"refinement": r.to_string(), "kappa": x.to_string()})).collect();
            let o = Outcome::equal(&k.reconstruct(&th), &shalika_core::exactalg::RatFunc::one());
            Ok((o, Some(json!(entries))))
        }),
        Command::Ep(a) => single("ep", json!({"n": a.n, "j": a.j, "ramified": a.ramified, "beta": a.beta}), ctx, || {
            let th = parse_char_spec(&a.theta, a.n)?;
            let branch = if a.ramified {
                let alpha = parse_ratfunc(a.alpha.as_deref().unwrap_or("alpha_missing"))?;
                EpBranch::Ramified { alpha, beta: a.beta }
            } else {
                EpBranch::Unramified
            };
            Ok((Outcome::value(e_p_factor(&th, a.j, &branch)?.to_string()), None))
        }),
        Command::Mass(a) => single("mass", json!({"n": a.n}), ctx, || Ok((Outcome::value(unit_mass(a.n)?.to_string()), None))),
        Command::Cosets(a) => single("cosets", json!({"n": a.n, "s": a.s, "t": a.t}), ctx, || {
            let size = 2 * a.n;
            let (s, t) = (SimpleSet::parse(&a.s, size)?, SimpleSet::parse(&a.t, size)?);
            let reps = double_coset_reps(&s, &t, a.n)?;
            let orbits = double_coset_count(&s, &t, a.n)?;
            let list: Vec<String> = reps.iter().map(|w| w.to_one_line_string()).collect();
            Ok((Outcome::count(reps.len(), orbits, "double cosets"), Some(json!(list))))
        }),
        Command::LeviCheck(a) => single("levi-check", json!({"n": a.n}), ctx, || {
            let t = levi_check_exhaustive(a.n)?;
            let o = Outcome::count(t.failures.len(), 0, "failures").with_detail(format!("{} admissible triples", t.checked));
            Ok((o, None))
        }),
        Command::Intertwine(a) => intertwine(a, ctx),
    }
}

fn verify(a: VerifyArgs, ctx: &Ctx) -> Vec<CheckReport> {
    let checks = registry();
    if a.check == "list" {
        return checks
            .iter()
            .map(|c| {
                let mut r = CheckReport::from_outcome(c.name, json!({}), ctx.mode, Instant::now(), Ok(Outcome::value(c.summary)));
                r.data = Some(json!({"scope": format!("{:?}", c.scope)}));
                r
            })
            .collect();
    }
    let selected: Vec<_> = if a.check == "all" {
        checks
    } else {
        match find_check(&a.check) {
            Some(c) => vec![c],
            None => {
                let err = Error::Precondition(format!("unknown check `{}`; try `verify list`", a.check));
                return vec![CheckReport::error(&a.check, json!({}), ctx.mode, &err)];
            }
        }
    };
    let jobs = match (a.n, ctx.mode) {
        (Some(n), mode) => {
            let mut jobs = plan(&selected, &[], Some((n, mode)));
            if a.check != "all" && jobs.is_empty() {
                // let the check report its own range error
                jobs.push((0, n, mode));
            }
            jobs
        }
        (None, Mode::Exact) => plan(&selected, &[1, 2, 3], Some((4, Mode::Randomized { seed: 20_261_016, reps: 20 }))),
        (None, mode) => plan(&selected, &[], Some((4, mode))),
    };
    run_jobs(&selected, &jobs)
}

fn coeff(a: CoeffArgs, ctx: &Ctx) -> Vec<CheckReport> {
    let params = json!({"n": a.n, "tau": a.tau, "theta": a.theta});
    single("coeff", params, ctx, || {
        let th = parse_char_spec(&a.theta, a.n)?;
        let tau = Perm::parse(&a.tau, 2 * a.n)?;
        let pipe = || local_coefficient(&th, &tau);
        let closed = || closed_coefficient_perm(&th, &tau);
        let o = if a.closed {
            Outcome::value(closed()?.to_string())
        } else if a.pipeline {
            Outcome::value(pipe()?.to_string())
        } else {
            Outcome::equal(&pipe()?, &closed()?)
        };
        Ok((o, None))
    })
}

fn fact_ab(n: usize, ctx: &Ctx) -> Vec<CheckReport> {
    let params = json!({"n": n});
    let mut out = Vec::new();
    match ctx.mode {
        Mode::Exact => {
            use shalika_core::exactalg::registry::{slot, V, Z};
            use shalika_core::exactalg::RatFunc;
            if n == 0 || n > shalika_core::exactalg::registry::XS_SLOTS {
                let err = Error::BoundExceeded(format!("n = {n} outside 1..={}", shalika_core::exactalg::registry::XS_SLOTS));
                return vec![CheckReport::error("fact-ab", params, ctx.mode, &err)];
            }
            let xs: Vec<RatFunc> = (1..=n).map(|i| RatFunc::var(slot(i))).collect();
            let v = RatFunc::var(V);
            out.extend(single("fact-ab:shifted", params.clone(), ctx, || {
                let (l, r) = fact_a_sides(&xs, &RatFunc::var(Z), &v)?;
                Ok((Outcome::equal(&l, &r), None))
            }));
            out.extend(single("fact-ab:summed", params, ctx, || {
                let (l, r) = fact_b_sides(&xs, &v)?;
                Ok((Outcome::equal(&l, &r), None))
            }));
        }
        Mode::Randomized { seed, reps } => {
            let start = Instant::now();
            match fact_ab_check_randomized(n, seed, reps) {
                Ok(rep) => {
                    let (ta, tb) = rep.tallies.expect("randomized tallies");
                    for (name, t) in [("fact-ab:shifted", ta), ("fact-ab:summed", tb)] {
                        let o = match &t.first_mismatch {
                            Some((l, r)) => Outcome { pass: false, lhs: l.to_string(), rhs: r.to_string(), detail: None },
                            None => Outcome::count(t.mismatches, 0, "mismatches"),
                        }
                        .with_detail(format!("{} points", t.points));
                        out.push(CheckReport::from_outcome(name, params.clone(), ctx.mode, start, Ok(o)));
                    }
                }
                Err(e) => out.push(CheckReport::error("fact-ab", params, ctx.mode, &e)),
            }
        }
    }
    out
}

fn zeta(a: ZetaArgs, ctx: &Ctx) -> Vec<CheckReport> {
    let params = json!({"form": format!("{:?}", a.form).to_lowercase(), "n": a.n, "delta": a.delta, "theta": a.theta});
    single("zeta", params, ctx, || {
        let th = parse_char_spec(&a.theta, a.n)?;
        let series_json = |s: &shalika_core::exactalg::LaurentSeries| {
            json!({"start": s.start, "coeffs": s.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()})
        };
        match a.form {
            ZetaForm::Refined | ZetaForm::Spherical => {
                let f = if a.form == ZetaForm::Refined { zeta_refined(&ZetaParams::new(th.clone(), a.delta)?)? } else { zeta_spherical(&th, a.delta)? };
                let data = match a.order {
                    Some(order) => Some(series_json(&laurent_expand(&f, X, order)?)),
                    None => None,
                };
                Ok((Outcome::value(f.to_string()), data))
            }
            ZetaForm::Oracle => {
                let p = ZetaParams::new(th, a.delta)?;
                let order = a.order.unwrap_or(8);
                let oracle = zeta_oracle(&p, order)?;
                let closed = laurent_expand(&zeta_refined(&p)?, X, order)?;
                let lo = oracle.start.min(closed.start);
                let same = (lo..=order).all(|k| oracle.coeff(k) == closed.coeff(k));
                let o = Outcome { pass: same, lhs: format!("{:?}", oracle.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()), rhs: format!("{:?}", closed.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()), detail: None };
                Ok((o, Some(series_json(&oracle))))
            }
        }
    })
}

fn parse_kind(text: &str) -> Result<ImageKind> {
    let t = text.trim();
    if t == "swap" {
        return Ok(ImageKind::Swap);
    }
    t.strip_prefix("pair:")
        .and_then(|i| i.trim().parse().ok())
        .map(ImageKind::Pair)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected `pair:i` or `swap`, got `{t}`") })
}

fn intertwine(a: IntertwineArgs, ctx: &Ctx) -> Vec<CheckReport> {
    let params = json!({"n": a.n, "tau": a.tau, "theta": a.theta});
    single("intertwine", params, ctx, || {
        let th = parse_char_spec(&a.theta, a.n)?;
        let tau = Perm::parse(&a.tau, 2 * a.n)?;
        let src = th.act(&tau.inverse());
        let input = match (&a.vec, &a.w) {
            (Some(text), _) => ParahoricVec::from_json(text)?,
            (None, Some(w)) => basis_vector(&src, &Perm::parse(w, 2 * a.n)?),
            (None, None) => basis_vector(&src, &Perm::longest(2 * a.n)),
        };
        let out = apply_intertwiner(&tau, &input)?;
        let o = match &a.closed {
            Some(kind) => {
                let kind = parse_kind(kind)?;
                if kind.perm(a.n)? != tau {
                    return Err(Error::Precondition(format!("closed form {kind:?} is for a different τ")));
                }
                let closed = image_closed_form(input.theta(), kind)?;
                Outcome { pass: closed == out, lhs: out.to_string(), rhs: closed.to_string(), detail: None }
            }
            None => Outcome::value(out.to_string()),
        };
        Ok((o, Some(out.to_json())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(status: Status) -> CheckReport {
        let mut r = CheckReport::from_outcome("x", json!({}), Mode::Exact, Instant::now(), Ok(Outcome::value("1")));
        r.status = status;
        r
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&[report(Status::Pass)]), ExitCode::SUCCESS);
        assert_eq!(exit_code(&[report(Status::Pass), report(Status::Fail)]), ExitCode::from(1));
        assert_eq!(exit_code(&[report(Status::Fail), report(Status::Error)]), ExitCode::from(2));
        assert_eq!(exit_code(&[]), ExitCode::from(2));
    }
}
