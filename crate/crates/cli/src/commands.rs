use std::f64::consts::PI;

use lgi_core::functional::{
    eval_all_measured, eval_separate, macrorealist_bound, FunctionalFamily, FunctionalSpec,
    MAX_BOUND_SLOTS,
};
use lgi_core::nsit::{
    decomposition_check_standard, violation_condition_standard, violation_condition_variant,
    DisturbanceReport,
};
use lgi_core::qubit::{PureState, Schedule};
use lgi_core::search::{optimize, sweep, ParamAxis, SearchConfig};
use lgi_core::{LgError, Operator};

use crate::args::{
    Axis, BoundsArgs, Cli, Command, EvalArgs, NsitArgs, OptimizeArgs, SpecArg, State, SweepArgs,
};
use crate::emit::{write_text, Document, Record};
use crate::error::{CliError, CliResult};
use crate::reproduce::reproduce;

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Eval(a) => emit(cmd_eval(&a)?, &a.output),
        Command::Optimize(a) => emit(cmd_optimize(&a)?, &a.output),
        Command::Sweep(a) => emit(cmd_sweep(&a)?, &a.output),
        Command::Nsit(a) => emit(cmd_nsit(&a)?, &a.output),
        Command::Bounds(a) => emit(cmd_bounds(&a)?, &a.output),
        Command::Reproduce(a) => {
            let summary = reproduce(&a.out, a.grid)?;
            eprintln!(
                "{} rows: {} pass, {} discrepancy, {} fail; written to {}",
                summary.rows,
                summary.pass,
                summary.discrepancy,
                summary.fail,
                a.out.display()
            );
            if summary.fail > 0 {
                return Err(CliError::Failed(summary.fail));
            }
            Ok(())
        }
    }
}

fn emit(doc: Document, out: &crate::args::Output) -> CliResult<()> {
    write_text(out.out.as_deref(), &doc.render(out.format)?)
}

/// Comma-separated integers, or an inclusive range `a..b` with optional `:step`.
pub fn parse_n_list(text: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Usage(format!("cannot read measurement counts from '{text}'"));
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, rest)) = text.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (int(hi)?, int(step)?),
            None => (int(rest)?, 1),
        };
        let lo = int(lo)?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    text.split(',').map(int).collect()
}

fn single_n(arg: &SpecArg) -> CliResult<Option<usize>> {
    match &arg.n {
        None => Ok(None),
        Some(text) => match parse_n_list(text)?.as_slice() {
            [n] => Ok(Some(*n)),
            _ => Err(CliError::Usage("--n takes a single value here".into())),
        },
    }
}

/// The family named by a bare name or `name:n` shortcut.
fn family_of(text: &str) -> Option<FunctionalFamily> {
    let name = text.split(':').next().unwrap_or("").trim();
    FunctionalFamily::from_name(name)
}

pub fn resolve_spec(arg: &SpecArg) -> CliResult<FunctionalSpec> {
    let text = arg.spec.trim();
    let n = single_n(arg)?;
    if let Some(family) = FunctionalFamily::from_name(text) {
        let n = n.ok_or_else(|| CliError::Usage(format!("'{text}' needs --n")))?;
        return Ok(family.build(n)?);
    }
    let spec = FunctionalSpec::parse(text)?;
    match n {
        None => Ok(spec),
        Some(_) if text.contains(':') => Err(CliError::Usage(
            "--n conflicts with the size given in the shortcut".into(),
        )),
        Some(n) => Ok(spec.with_n(n)?),
    }
}

/// Couplings for `intervals` gaps; one value is broadcast.
pub fn parse_couplings(text: &str, intervals: usize) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad coupling '{}'", s.trim())))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    match values.len() {
        1 => Ok(vec![values[0]; intervals]),
        k if k == intervals => Ok(values),
        k => {
            Err(LgError::Contract(format!("{k} couplings given for {intervals} intervals")).into())
        }
    }
}

fn density(state: &State) -> CliResult<Operator> {
    Ok(PureState::new(state.theta, state.phi)?.density())
}

fn bounds_fields(mut rec: Record, spec: &FunctionalSpec, value: Option<f64>) -> CliResult<Record> {
    if spec.n() <= MAX_BOUND_SLOTS {
        let b = macrorealist_bound(spec)?;
        rec = rec
            .num("macrorealist_min", b.macrorealist_min)
            .num("macrorealist_max", b.macrorealist_max)
            .num("algebraic_max", b.algebraic_max);
        if let Some(v) = value {
            rec = rec.flag("violated", v > b.macrorealist_max + 1e-12);
        }
    } else {
        rec = rec.num("algebraic_max", spec.algebraic_max());
    }
    Ok(rec)
}

pub fn cmd_eval(a: &EvalArgs) -> CliResult<Document> {
    let spec = resolve_spec(&a.spec)?;
    let couplings = parse_couplings(&a.g, spec.n() - 1)?;
    let rho = density(&a.state)?;
    let value = eval_separate(&spec, &rho, &Schedule::new(couplings.clone())?)?;
    let rec = Record::new()
        .text("command", "eval")
        .text("spec", spec.to_string())
        .int("n", spec.n() as i64)
        .nums("couplings", couplings)
        .num("theta", a.state.theta)
        .num("phi", a.state.phi)
        .num("value", value);
    Ok(Document::record(bounds_fields(rec, &spec, Some(value))?))
}

pub fn cmd_optimize(a: &OptimizeArgs) -> CliResult<Document> {
    let spec = resolve_spec(&a.spec)?;
    let mut cfg = if a.unequal {
        SearchConfig::unequal()
    } else {
        SearchConfig::default()
    };
    if let Some(points) = a.grid {
        cfg = cfg.with_grid(points);
    }
    let r = optimize(&spec, &cfg)?;
    Ok(Document::record(
        Record::new()
            .text("command", "optimize")
            .text("spec", spec.to_string())
            .text(
                "couplings_mode",
                if a.unequal { "unequal" } else { "equal" },
            )
            .num("best_value", r.best_value)
            .nums("couplings", r.couplings.clone())
            .num("theta", r.theta)
            .num("phi", r.phi)
            .num("macrorealist_max", r.macrorealist_max)
            .num("algebraic_max", r.algebraic_max)
            .num("margin", r.margin())
            .flag("violated", r.violated())
            .int("evaluations", r.evaluations as i64),
    ))
}

fn parse_range(text: Option<&str>) -> CliResult<(f64, f64)> {
    let text = text.ok_or_else(|| CliError::Usage("--range lo,hi is required".into()))?;
    let bad = || CliError::Usage(format!("cannot read range '{text}'"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo = lo.trim().parse::<f64>().map_err(|_| bad())?;
    let hi = hi.trim().parse::<f64>().map_err(|_| bad())?;
    Ok((lo, hi))
}

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<Document> {
    let header = Record::new().text("command", "sweep");
    if a.axis == Axis::N {
        let family = family_of(&a.spec.spec).ok_or_else(|| {
            CliError::Usage("an n sweep needs a family: K, K3var or L3var".into())
        })?;
        let text = a
            .spec
            .n
            .as_deref()
            .ok_or_else(|| CliError::Usage("an n sweep needs --n".into()))?;
        let ns = parse_n_list(text)?;
        let rho = density(&a.state)?;
        let rows = ns
            .iter()
            .map(|&n| {
                let g = PI / (2.0 * n as f64);
                let value = eval_separate(&family.build(n)?, &rho, &Schedule::uniform(n, g)?)?;
                Ok(Record::new()
                    .int("n", n as i64)
                    .num("g", g)
                    .num("value", value))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let header = header
            .text("family", family.name())
            .text("axis", "n")
            .num("theta", a.state.theta)
            .num("phi", a.state.phi);
        return Ok(Document::table(header, rows));
    }
    let spec = resolve_spec(&a.spec)?;
    let axis = match a.axis {
        Axis::G => ParamAxis::G,
        Axis::Theta => ParamAxis::Theta,
        Axis::Phi => ParamAxis::Phi,
        Axis::N => unreachable!(),
    };
    let range = parse_range(a.range.as_deref())?;
    let points = sweep(
        &spec,
        axis,
        range,
        a.points,
        (a.g, a.state.theta, a.state.phi),
    )?;
    let rows = points
        .iter()
        .map(|p| Record::new().num(axis.name(), p.x).num("value", p.value))
        .collect();
    let mut header = header
        .text("spec", spec.to_string())
        .text("axis", axis.name());
    for (name, v) in [("g", a.g), ("theta", a.state.theta), ("phi", a.state.phi)] {
        if name != axis.name() {
            header = header.num(name, v);
        }
    }
    Ok(Document::table(header, rows))
}

pub fn cmd_nsit(a: &NsitArgs) -> CliResult<Document> {
    let couplings = parse_couplings(&a.g, 2)?;
    let sched = Schedule::new(couplings.clone())?;
    let rho = density(&a.state)?;
    let report = DisturbanceReport::compute(&rho, &sched)?;
    let mut rec = Record::new()
        .text("command", "nsit")
        .nums("couplings", couplings)
        .num("theta", a.state.theta)
        .num("phi", a.state.phi);
    for (key, v) in report.to_record() {
        rec = rec.num(&key, v);
    }
    let k3 = FunctionalSpec::standard_k(3)?;
    let k3v = FunctionalSpec::variant_k3(3)?;
    let std_cond = violation_condition_standard(&rho, &sched)?;
    let var_cond = violation_condition_variant(&rho, &sched)?;
    let rec = rec
        .num("K3", eval_separate(&k3, &rho, &sched)?)
        .num("K3_all_measured", eval_all_measured(&k3, &rho, &sched)?)
        .num("K3var", eval_separate(&k3v, &rho, &sched)?)
        .num("K3var_all_measured", eval_all_measured(&k3v, &rho, &sched)?)
        .num(
            "decomposition_residual",
            decomposition_check_standard(&rho, &sched)?,
        )
        .num("standard_lhs", std_cond.lhs)
        .num("standard_threshold", std_cond.threshold)
        .flag("standard_condition", std_cond.condition_holds())
        .num("variant_lhs", var_cond.lhs)
        .num("variant_threshold", var_cond.threshold)
        .flag("variant_condition", var_cond.condition_holds());
    Ok(Document::record(rec))
}

pub fn cmd_bounds(a: &BoundsArgs) -> CliResult<Document> {
    let spec = resolve_spec(&a.spec)?;
    let b = macrorealist_bound(&spec)?;
    Ok(Document::record(
        Record::new()
            .text("command", "bounds")
            .text("spec", spec.to_string())
            .int("n", spec.n() as i64)
            .num("macrorealist_min", b.macrorealist_min)
            .num("macrorealist_max", b.macrorealist_max)
            .num("algebraic_max", b.algebraic_max),
    ))
}
