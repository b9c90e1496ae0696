use std::fmt::Write as _;
use std::path::Path;

use m2causal::fieldcheck::{
    automorphism_suite_with, chronology_check_with, conformality_report, holomorphy_residual,
    log_factor_wave_residual, low_counterexample, wave_residual, ChronologyConfig, ChronologyOutcome,
    PlaneMap, Probes, SuiteOutcome,
};
use m2causal::propertime::{
    gravitational_dilation, proper_time_accelerated, proper_time_inertial, twin_consistency_with,
    RadarTrajectory, Twin,
};
use m2causal::{Error, LightspeedContext, Observer};

use crate::report::Report;
use crate::scenario::{Scenario, Tolerances};
use crate::{CheckKind, Cli, Command, ProperTime};

/// Closed form and quadrature of a static clock must agree this closely.
const DILATION_CHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Runtime(m) => m,
        }
    }
}

fn runtime(e: Error) -> Failure {
    match e {
        Error::InvalidArgument(m) => Failure::Validation(m),
        e => Failure::Runtime(e.to_string()),
    }
}

fn scenario(cli: &Cli) -> Result<Scenario, Failure> {
    let path = cli
        .scenario
        .as_deref()
        .ok_or_else(|| Failure::Validation("this command needs --scenario".into()))?;
    Scenario::load(path, &cli.grid, cli.seed).map_err(Failure::Validation)
}

/// Scenario when given, defaults otherwise.
fn context(cli: &Cli) -> Result<(LightspeedContext, Tolerances, Option<Scenario>), Failure> {
    match cli.scenario {
        Some(_) => {
            let s = scenario(cli)?;
            Ok((s.ctx, s.tolerances, Some(s)))
        }
        None => Ok((LightspeedContext::default(), Tolerances::default(), None)),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Result<Status, Failure> {
    let (status, text) = match &cli.command {
        Command::Eval { map } => eval(&scenario(cli)?, map)?,
        Command::Check { map, check } => check_map(&scenario(cli)?, map, *check)?,
        Command::Causal { map } => causal(&scenario(cli)?, map, cli.pairs)?,
        Command::Propertime { which } => propertime(cli, which)?,
        Command::Counterexample { observer1, observer2 } => {
            counterexample(&scenario(cli)?, observer1, observer2, cli.pairs)?
        }
    };
    emit(cli.out.as_deref(), &text)?;
    Ok(status)
}

fn eval(s: &Scenario, name: &str) -> Result<(Status, String), Failure> {
    let map = s.map(name).map_err(Failure::Validation)?;
    let mut csv = String::from("t,x,out_t,out_x\n");
    for z in s.grid.nodes() {
        let w = map
            .eval(z)
            .map_err(|e| Failure::Runtime(format!("evaluation of {name:?} failed at node ({}, {}): {e}", z.t, z.x)))?;
        let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e},{:.16e}", z.t, z.x, w.t, w.x);
    }
    Ok((Status::Pass, csv))
}

fn check_map(s: &Scenario, name: &str, kind: CheckKind) -> Result<(Status, String), Failure> {
    let map = s.map(name).map_err(Failure::Validation)?;
    let mut r = Report::default();
    r.line("map", name)
        .line("check", format!("{kind:?}").to_lowercase())
        .line("grid_nodes", s.grid.len());
    let pass = match kind {
        CheckKind::Holo | CheckKind::Antiholo => {
            let rep = holomorphy_residual(map, &s.grid, kind == CheckKind::Antiholo).map_err(runtime)?;
            r.residual("", &rep);
            rep.vanishes()
        }
        CheckKind::Wave => {
            let rep = wave_residual(map, &s.grid).map_err(runtime)?;
            r.residual("", &rep);
            rep.vanishes()
        }
        CheckKind::Conformal => {
            let rep = conformality_report(map, &s.grid).map_err(runtime)?;
            r.residual("", &rep.residual)
                .line("lambda_min", rep.lambda_min)
                .line("lambda_max", rep.lambda_max)
                .line("degenerate_nodes", rep.degenerate_nodes);
            rep.residual.vanishes() && rep.degenerate_nodes == 0
        }
        CheckKind::Loggwave => {
            let PlaneMap::Mw(m) = map else {
                return Err(Failure::Validation(format!(
                    "loggwave needs an mw map, {name:?} is not one"
                )));
            };
            let rep = log_factor_wave_residual(m, &s.grid).map_err(runtime)?;
            r.residual("", &rep);
            rep.vanishes()
        }
    };
    r.line("verdict", if pass { "pass" } else { "fail" });
    Ok((status(pass), r.into_string()))
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Violation
    }
}

fn chronology(map: &PlaneMap, s: &Scenario, cfg: &ChronologyConfig, r: &mut Report) -> Result<bool, Failure> {
    match chronology_check_with(map, &s.grid, cfg).map_err(runtime)? {
        ChronologyOutcome::Pass(c) => {
            r.line("chronology", "pass")
                .line("forward_pairs", c.forward_pairs)
                .line("inverse_pairs", c.inverse_pairs)
                .line("min_input_margin", c.min_input_margin)
                .line("min_output_margin", c.min_output_margin);
            Ok(true)
        }
        ChronologyOutcome::Violation(w) => {
            r.line("chronology", "violation").witness(&w);
            Ok(false)
        }
    }
}

fn causal(s: &Scenario, name: &str, pairs: usize) -> Result<(Status, String), Failure> {
    let map = s.map(name).map_err(Failure::Validation)?;
    let cfg = ChronologyConfig {
        band: s.tolerances.null_band,
        ..ChronologyConfig::new(pairs, s.seed)
    };
    let mut r = Report::default();
    r.line("map", name).line("seed", s.seed).line("pairs", pairs);
    let pass = match map {
        PlaneMap::Mw(m) => match automorphism_suite_with(m, &s.grid, &cfg).map_err(runtime)? {
            SuiteOutcome::NotApplicable(status) => {
                r.line("automorphism_suite", "not applicable")
                    .line("lip_status", format!("{status:?}"));
                chronology(map, s, &cfg, &mut r)?
            }
            outcome @ SuiteOutcome::Ran(_) => {
                r.line("automorphism_suite", "ran");
                if let SuiteOutcome::Ran(items) = &outcome {
                    for item in items {
                        r.line(item.name, if item.passed { "pass" } else { "fail" })
                            .line(&format!("{}_detail", item.name), &item.detail);
                    }
                }
                outcome.passed()
            }
        },
        _ => chronology(
            map,
            s,
            &ChronologyConfig {
                probes: Probes::Both,
                ..cfg
            },
            &mut r,
        )?,
    };
    r.line("verdict", if pass { "pass" } else { "violation" });
    Ok((status(pass), r.into_string()))
}

fn observer<'a>(s: &'a Option<Scenario>, name: &str) -> Result<&'a Observer, Failure> {
    s.as_ref()
        .ok_or_else(|| Failure::Validation("this command needs --scenario".into()))?
        .observer(name)
        .map_err(Failure::Validation)
}

fn propertime(cli: &Cli, which: &ProperTime) -> Result<(Status, String), Failure> {
    let (ctx, tol, s) = context(cli)?;
    let mut r = Report::default();
    let status = match which {
        ProperTime::Inertial { velocity, t0, t1 } => {
            let traj = RadarTrajectory::linear(0.0, *velocity, (*t0, *t1)).map_err(runtime)?;
            let p = proper_time_inertial(&traj, ctx, tol.quad_tol).map_err(runtime)?;
            r.line("tau", p.tau)
                .line("abs_error_estimate", p.abs_error_estimate)
                .line("n_evals", p.n_evals);
            Status::Pass
        }
        ProperTime::Accelerated {
            observer: name,
            x0,
            velocity,
            t0,
            t1,
        } => {
            let g = observer(&s, name)?;
            let traj = RadarTrajectory::linear(*x0, *velocity, (*t0, *t1)).map_err(runtime)?;
            let p = proper_time_accelerated(g, &traj, ctx, tol.quad_tol).map_err(runtime)?;
            r.line("observer", name)
                .line("tau", p.tau)
                .line("abs_error_estimate", p.abs_error_estimate)
                .line("n_evals", p.n_evals);
            Status::Pass
        }
        ProperTime::Twin {
            a,
            b,
            s0,
            s1,
            samples,
            tol: rel,
        } => {
            let (ga, gb) = (observer(&s, a)?, observer(&s, b)?);
            let t = twin_consistency_with(ga, gb, (*s0, *s1), ctx, *rel, *samples, tol.quad_tol).map_err(runtime)?;
            let younger = match t.younger {
                Twin::A => a.as_str(),
                Twin::B => b.as_str(),
                Twin::Neither => "neither",
            };
            r.line("a", a)
                .line("b", b)
                .line("a_window", format!("{} {}", t.a_window.0, t.a_window.1))
                .line("b_window", format!("{} {}", t.b_window.0, t.b_window.1))
                .line("tau_a_by_a", t.tau_a_by_a)
                .line("tau_a_by_b", t.tau_a_by_b)
                .line("tau_b_by_b", t.tau_b_by_b)
                .line("tau_b_by_a", t.tau_b_by_a)
                .line("radar_span_a_by_b", t.radar_span_a_by_b)
                .line("radar_span_b_by_a", t.radar_span_b_by_a)
                .line("younger", younger)
                .line("consistent", t.consistent);
            status(t.consistent)
        }
        ProperTime::Dilation { accel, x1, x2, dt } => {
            let d = gravitational_dilation(*accel, *x1, *x2, *dt, ctx).map_err(runtime)?;
            let g = Observer::rindler(*accel, ctx).map_err(runtime)?;
            let quad = |x: f64| -> Result<f64, Failure> {
                let traj = RadarTrajectory::constant(x, (0.0, *dt)).map_err(runtime)?;
                Ok(proper_time_accelerated(&g, &traj, ctx, tol.quad_tol).map_err(runtime)?.tau)
            };
            let (q1, q2) = (quad(*x1)?, quad(*x2)?);
            let gap = (q2 - d.tau_x2).abs().max((d.ratio * q1 - q2).abs());
            r.line("ratio", d.ratio)
                .line("tau_x1", d.tau_x1)
                .line("tau_x2", d.tau_x2)
                .line("quadrature_tau_x1", q1)
                .line("quadrature_tau_x2", q2)
                .line("cross_check_error", gap);
            status(gap <= DILATION_CHECK_TOL)
        }
    };
    Ok((status, r.into_string()))
}

fn counterexample(s: &Scenario, n1: &str, n2: &str, pairs: usize) -> Result<(Status, String), Failure> {
    let g1 = s.observer(n1).map_err(Failure::Validation)?;
    let g2 = s.observer(n2).map_err(Failure::Validation)?;
    let c = low_counterexample(g1, g2, &s.grid, pairs, s.seed).map_err(runtime)?;
    let mut r = Report::default();
    r.line("observer1", n1)
        .line("observer2", n2)
        .line("seed", s.seed)
        .line("pairs", pairs)
        .residual("wave_", &c.wave)
        .line("holo_max_abs", c.holo.max_abs)
        .line("antiholo_max_abs", c.antiholo.max_abs)
        .line("axis_restriction", if c.axis_ok { "exact" } else { "mismatch" });
    match &c.witness {
        Some(w) => {
            r.witness(w);
        }
        None => {
            r.line("witness", "none");
        }
    }
    let certified = c.certified();
    r.line("certified", certified);
    Ok((status(certified), r.into_string()))
}
