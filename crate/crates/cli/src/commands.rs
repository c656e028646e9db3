use chainstate::hardcore::{junction_asymptote, HardCoreConfig, HardCoreSolver, Regime};
use chainstate::fit::{fit_power_law, geometric_grid, pinned_prefactor};
use chainstate::landau::critical_spacing;
use chainstate::lattice_energy::a_min_limit_n_to_m;
use chainstate::transition::{energy_curve, landau_amplitude, Branch, StationarityBalance};
use chainstate::{MieParams, PotentialSpec};

use crate::args::{Cli, Command};
use crate::csv::Table;
use crate::{validate, CliError, Report};

fn mie_of(spec: &PotentialSpec) -> Result<MieParams, CliError> {
    spec.mie_params().ok_or_else(|| {
        CliError::Usage(format!("this command needs a Mie potential, got `{spec}`"))
    })
}

fn branch_label(b: Branch) -> &'static str {
    match b {
        Branch::Trivial => "trivial",
        Branch::Bipartite => "bipartite",
        Branch::Boundary => "boundary",
    }
}

fn regime_label(r: Regime) -> &'static str {
    match r {
        Regime::Unconstrained => "unconstrained",
        Regime::Junction => "junction",
        Regime::Pinned => "pinned",
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let digits = cli.digits as usize;
    match &cli.command {
        Command::EnergyCurve { potential, grid } => {
            let params = mie_of(&potential.potential)?;
            let mut table = Table::new(
                &["A", "E_ground", "E_equidistant_continuation", "phase", "Delta"],
                digits,
            );
            for row in energy_curve(params, &grid.points())? {
                let p = row?;
                table.row(vec![
                    p.spacing.into(),
                    p.ground.into(),
                    p.equidistant.into(),
                    p.phase.label().into(),
                    p.ratio.into(),
                ]);
            }
            Ok(Report {
                body: table.finish(),
                failed: false,
                notes: Vec::new(),
            })
        }
        Command::PhaseDiagram { m, n } => {
            let mut table = Table::new(&["n", "A_c"], digits);
            let mut values = Vec::new();
            for n in n.points() {
                let params = MieParams::new(n, *m).map_err(|e| CliError::Usage(e.to_string()))?;
                let a_c = critical_spacing(params)?;
                table.row(vec![n.into(), a_c.into()]);
                values.push(a_c);
            }
            let monotone = values.windows(2).all(|w| w[1] < w[0]);
            Ok(Report {
                body: table.finish(),
                failed: false,
                notes: vec![format!("A_c decreasing in n: {monotone}")],
            })
        }
        Command::DeltaSweep { potential, grid } => {
            let params = mie_of(&potential.potential)?;
            let balance = StationarityBalance::new(params)?;
            let mut table = Table::new(&["A", "Delta", "branch", "residual", "error"], digits);
            let mut failed = false;
            for a in grid.points() {
                match balance.solve(a) {
                    Ok(s) => table.row(vec![
                        a.into(),
                        s.ratio.into(),
                        branch_label(s.branch).into(),
                        s.residual.into(),
                        "".into(),
                    ]),
                    Err(e) => {
                        failed = true;
                        table.row(vec![a.into(), "".into(), "".into(), "".into(), e.to_string().into()]);
                    }
                }
            }
            let a_c = balance.critical_spacing();
            table.note("A_c", table.num(a_c));
            Ok(Report {
                body: table.finish(),
                failed,
                notes: Vec::new(),
            })
        }
        Command::BetaFit {
            potential,
            window,
            points,
        } => {
            let params = mie_of(&potential.potential)?;
            let balance = StationarityBalance::new(params)?;
            let mut table = Table::new(&["A_minus_A_c", "Delta_minus_1", "error"], digits);
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            let mut failed = false;
            for h in geometric_grid(window.lo, window.hi, *points) {
                match balance.solve_offset(h) {
                    Ok(s) => {
                        table.row(vec![h.into(), s.ratio_excess.into(), "".into()]);
                        xs.push(h);
                        ys.push(s.ratio_excess);
                    }
                    Err(e) => {
                        failed = true;
                        table.row(vec![h.into(), "".into(), e.to_string().into()]);
                    }
                }
            }
            table.note("A_c", table.num(balance.critical_spacing()));
            match fit_power_law(&xs, &ys) {
                Ok(fit) => {
                    let amplitude = landau_amplitude(params)?;
                    table.note("exponent", table.num(fit.exponent));
                    table.note("prefactor", table.num(fit.prefactor));
                    table.note("r_squared", table.num(fit.r_squared));
                    table.note("landau_amplitude", table.num(amplitude));
                    table.note(
                        "prefactor_rel_diff",
                        table.num((fit.prefactor - amplitude) / amplitude),
                    );
                }
                Err(e) => {
                    failed = true;
                    table.note("fit_error", e.to_string());
                }
            }
            Ok(Report {
                body: table.finish(),
                failed,
                notes: Vec::new(),
            })
        }
        Command::HardcoreSweep {
            potential,
            sigma,
            grid,
        } => {
            let params = mie_of(&potential.potential)?;
            let sigma = sigma
                .or(potential.potential.hard_core_radius())
                .ok_or_else(|| CliError::Usage("give --sigma or a potential with sigma=".into()))?;
            let config =
                HardCoreConfig::new(params, sigma).map_err(|e| CliError::Usage(e.to_string()))?;
            let solver = HardCoreSolver::new(config)?;
            let mut table =
                Table::new(&["A", "Delta", "branch", "Delta_upper_bound", "error"], digits);
            let mut failed = false;
            let mut prev: Option<f64> = None;
            let mut max_step: f64 = 0.0;
            for a in grid.points() {
                let bound = 2.0 * a / sigma - 1.0;
                match solver.constrained_delta(a) {
                    Ok(s) => {
                        if let Some(p) = prev {
                            max_step = max_step.max((s.ratio - p).abs());
                        }
                        prev = Some(s.ratio);
                        table.row(vec![
                            a.into(),
                            s.ratio.into(),
                            branch_label(s.branch).into(),
                            bound.into(),
                            "".into(),
                        ]);
                    }
                    Err(e) => {
                        failed = true;
                        prev = None;
                        table.row(vec![a.into(), "".into(), "".into(), bound.into(), e.to_string().into()]);
                    }
                }
            }
            table.note("sigma", table.num(sigma));
            table.note("regime", regime_label(solver.regime()));
            table.note("A_c", table.num(critical_spacing(params)?));
            if let Ok(j) = solver.junction() {
                table.note("A_star", table.num(j.a_star));
                table.note("Delta_star", table.num(j.ratio_star));
            }
            table.note("max_adjacent_Delta_step", table.num(max_step));
            Ok(Report {
                body: table.finish(),
                failed,
                notes: Vec::new(),
            })
        }
        Command::TauFit {
            potential,
            window,
            points,
        } => {
            let params = mie_of(&potential.potential)?;
            let mut table = Table::new(&["sigma_minus_1", "A_star", "Delta_star", "error"], digits);
            let (mut xs, mut ys) = (Vec::new(), Vec::new());
            let mut failed = false;
            for excess in geometric_grid(window.lo, window.hi, *points) {
                let point = HardCoreConfig::near_unit(params, excess)
                    .and_then(HardCoreSolver::new)
                    .and_then(|s| s.junction());
                match point {
                    Ok(j) => {
                        table.row(vec![excess.into(), j.a_star.into(), j.ratio_star.into(), "".into()]);
                        xs.push(excess);
                        ys.push(j.a_star);
                    }
                    Err(e) => {
                        failed = true;
                        table.row(vec![excess.into(), "".into(), "".into(), e.to_string().into()]);
                    }
                }
            }
            let (theory_exponent, theory_prefactor) = junction_asymptote(params)?;
            match fit_power_law(&xs, &ys) {
                Ok(fit) => {
                    table.note("exponent", table.num(fit.exponent));
                    table.note("theory_exponent", table.num(theory_exponent));
                    table.note("prefactor", table.num(fit.prefactor));
                    table.note("theory_prefactor", table.num(theory_prefactor));
                    table.note(
                        "prefactor_at_theory_exponent",
                        table.num(pinned_prefactor(&xs, &ys, theory_exponent)),
                    );
                    table.note("r_squared", table.num(fit.r_squared));
                }
                Err(e) => {
                    failed = true;
                    table.note("fit_error", e.to_string());
                }
            }
            Ok(Report {
                body: table.finish(),
                failed,
                notes: Vec::new(),
            })
        }
        Command::AminLimit { m } => {
            let mut table = Table::new(&["m", "A_min"], digits);
            for m in m.points() {
                let a = a_min_limit_n_to_m(m).map_err(|e| CliError::Usage(e.to_string()))?;
                table.row(vec![m.into(), a.into()]);
            }
            Ok(Report {
                body: table.finish(),
                failed: false,
                notes: Vec::new(),
            })
        }
        Command::Validate { quick } => Ok(validate::run(*quick, digits)),
    }
}
