//! Dispatch of a validated [`RunSpec`] to the library.

use std::f64::consts::PI;

use uplocal::direction::{
    build_a_matrix, build_m_matrix, extremal_directions, optimize_sum_functional, sphere_bruteforce,
    sphere_directions, Objective,
};
use uplocal::hermite::{expand, hermite_variances, odd_symmetry_check, sum_functional_hermite, up_hermite};
use uplocal::localization::{catalog_moments_on, spectral_route, LocalizationReport, MomentSet};
use uplocal::periodization::convergence_sweep;
use uplocal::{Direction, Error, Grid, Result};

use crate::output::{Row, Table};
use crate::spec::{Command, RunSpec, Solver};

/// Everything a run produces, before anything is written.
pub struct Artifacts {
    pub table: Table,
    /// Additional files as `(suffix, contents)`.
    pub files: Vec<(&'static str, String)>,
}

pub fn run(spec: &RunSpec) -> Result<Artifacts> {
    let f = &spec.function;
    let mut table = Table {
        command: spec.command.name().into(),
        function: f.id().into(),
        param: f.params(),
        dim: f.dim(),
        extra_columns: Vec::new(),
        rows: Vec::new(),
    };
    let mut files = Vec::new();
    match spec.command {
        Command::Compute => {
            let m = moments(spec)?;
            let l = spec.direction.clone().expect("validated");
            table.rows.push(report_row(&m.report(&l)?, None, ""));
        }
        Command::Optimize => optimize(spec, &mut table)?,
        Command::Hermite => {
            let e = expand(f, spec.cutoff)?;
            let l = spec.direction.clone().unwrap_or_else(|| Direction::axis(f.dim(), 0));
            let (delta_a, delta_b) = hermite_variances(&e, l.components())?;
            let sum = sum_functional_hermite(&e, l.components())?;
            let mut flag = format!("hermite;cutoff={};residual={:e}", e.cutoff(), e.residual());
            if odd_symmetry_check(&e) {
                flag.push_str(";odd");
            }
            table.rows.push(Row {
                direction: l.components().to_vec(),
                delta_a: Some(delta_a),
                delta_b: Some(delta_b),
                up: Some(up_hermite(&e, l.components())?),
                sum_functional: Some(sum.value),
                flag,
                ..Row::default()
            });
            let m = moments(spec)?;
            table.rows.push(report_row(&m.report(&l)?, None, "direct"));
            files.push(("hermite.txt", e.dump()));
        }
        Command::Periodize => {
            let l = spec.direction.clone().unwrap_or_else(|| Direction::axis(f.dim(), 0));
            let (_, rows) = convergence_sweep(f, &l, &spec.lambdas, true)?;
            table.extra_columns = vec!["error", "up_gg_periodic", "error_gg"];
            for r in rows {
                let flag = match &r.error_message {
                    Some(m) if m.contains("vanishing commutator") => "vanishing_commutator".to_string(),
                    Some(m) => m.clone(),
                    None => format!("K={}", r.truncation),
                };
                table.rows.push(Row {
                    x: Some(r.lambda),
                    direction: l.components().to_vec(),
                    delta_a: r.scaled_var_a,
                    delta_b: r.scaled_var_f,
                    up: r.up_periodic,
                    sum_functional: None,
                    flag,
                    extra: vec![r.error, r.up_gg_periodic, r.error_gg],
                });
            }
        }
        Command::SweepDirection => {
            let m = moments(spec)?;
            let d = f.dim();
            let n = spec.resolution.unwrap_or(180);
            for (i, v) in sphere_directions(d, n)?.into_iter().enumerate() {
                let x = if d == 2 { PI * i as f64 / n as f64 } else { i as f64 };
                table.rows.push(report_row(&m.report(&Direction::new(v)?)?, Some(x), ""));
            }
        }
    }
    Ok(Artifacts { table, files })
}

fn moments(spec: &RunSpec) -> Result<MomentSet> {
    let f = &spec.function;
    let rec = f.recommended_grid()?;
    let grid = if spec.grid_r.is_some() || spec.grid_n.is_some() {
        Grid::new(
            f.dim(),
            spec.grid_r.unwrap_or(rec.halfwidth()),
            spec.grid_n.unwrap_or(rec.points_per_axis()),
        )?
    } else {
        rec
    };
    catalog_moments_on(f, &grid, spectral_route(f))
}

fn report_row(r: &LocalizationReport, x: Option<f64>, flag: &str) -> Row {
    let mut flag = flag.to_string();
    if r.clamped {
        if !flag.is_empty() {
            flag.push(';');
        }
        flag.push_str("clamped");
    }
    Row {
        x,
        direction: r.direction.components().to_vec(),
        delta_a: Some(r.delta_a),
        delta_b: Some(r.delta_b),
        up: Some(r.up),
        sum_functional: Some(r.sum_functional),
        flag,
        extra: Vec::new(),
    }
}

fn at(m: &MomentSet, v: &[f64], flag: &str) -> Result<Row> {
    Ok(report_row(&m.report(&Direction::new(v.to_vec())?)?, None, flag))
}

fn optimize(spec: &RunSpec, table: &mut Table) -> Result<()> {
    let m = moments(spec)?;
    let d = m.dim();
    for solver in &spec.solvers {
        match solver {
            Solver::Candidates => match build_a_matrix(&m) {
                Ok(a) => {
                    let set = extremal_directions(&a);
                    for (i, c) in set.candidates.iter().enumerate() {
                        let mut tag = "candidate".to_string();
                        if i == set.min_index {
                            tag.push_str(";up_min");
                        }
                        if i == set.max_index {
                            tag.push_str(";up_max");
                        }
                        table.rows.push(at(&m, &c.direction, &tag)?);
                    }
                }
                Err(Error::SymmetryViolation(msg)) => {
                    table.rows.push(Row {
                        flag: format!("candidates_unavailable: {msg}"),
                        ..Row::default()
                    });
                }
                Err(e) => return Err(e),
            },
            Solver::SumEigen => {
                let s = optimize_sum_functional(&build_m_matrix(&m));
                let iso = if s.isotropic { ";isotropic" } else { "" };
                table.rows.push(at(&m, &s.min_direction, &format!("sum_min{iso}"))?);
                table.rows.push(at(&m, &s.max_direction, &format!("sum_max{iso}"))?);
            }
            Solver::BruteForce => {
                if !(2..=3).contains(&d) {
                    continue;
                }
                let n = spec.resolution.unwrap_or(if d == 2 { 10_000 } else { 20_000 });
                for (objective, name) in [(Objective::Up, "up"), (Objective::SumFunctional, "sum")] {
                    let b = sphere_bruteforce(&m, objective, n)?;
                    let bound = format!("bound={:e}", b.error_bound);
                    table.rows.push(at(&m, &b.argmin, &format!("bruteforce_{name}_min;{bound}"))?);
                    table.rows.push(at(&m, &b.argmax, &format!("bruteforce_{name}_max;{bound}"))?);
                }
            }
        }
    }
    Ok(())
}
