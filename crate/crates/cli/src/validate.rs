use chainstate::landau::{
    critical_point, critical_point_limit_n_to_m, critical_spacing, default_tricritical_grid,
    landau_coefficients_closed, landau_coefficients_finite_difference,
    landau_coefficients_quadrature, tricritical_scan, FD_STEPS,
};
use chainstate::lattice_energy::{
    bipartite_energy, bipartite_energy_quadrature, find_a_min, BipartiteChain,
};
use chainstate::oracle::direct_bipartite_sum;
use chainstate::potential::mie_potential;
use chainstate::transition::{fit_beta, solve_delta};
use chainstate::{MieParams, Result};

use crate::csv::Table;
use crate::Report;

struct Check {
    name: String,
    value: f64,
    reference: f64,
    error: f64,
    tolerance: f64,
}

enum Kind {
    Absolute,
    Relative,
}

fn compare(name: impl Into<String>, value: f64, reference: f64, tolerance: f64, kind: Kind) -> Check {
    let diff = (value - reference).abs();
    let error = match kind {
        Kind::Absolute => diff,
        Kind::Relative => diff / reference.abs(),
    };
    Check {
        name: name.into(),
        value,
        reference,
        error,
        tolerance,
    }
}

/// A yes/no check reported as value 1 (holds) or 0 against reference 1.
fn holds(name: impl Into<String>, ok: bool) -> Check {
    let v = if ok { 1.0 } else { 0.0 };
    Check {
        name: name.into(),
        value: v,
        reference: 1.0,
        error: 1.0 - v,
        tolerance: 0.0,
    }
}

fn mie(n: f64, m: f64) -> MieParams {
    MieParams::new(n, m).expect("fixed exponents are valid")
}

fn constants() -> Result<Vec<Check>> {
    let lj = mie(12.0, 6.0);
    let (a_min, e_min) = find_a_min(lj)?;
    let mut out = vec![
        compare("A_min(12,6)", a_min, 0.997179263885, 1e-10, Kind::Absolute),
        compare("E_min(12,6)", e_min, -715.0 / 691.0, 1e-10, Kind::Absolute),
    ];
    for (p, reference) in [(lj, 1.10865478515), (mie(7.0, 6.0), 1.1427384940215781)] {
        let point = critical_point(p)?;
        let tag = format!("({},{})", p.n, p.m);
        out.push(compare(format!("A_c{tag}"), point.a_c, reference, 1e-10, Kind::Absolute));
        out.push(holds(format!("E2 sign change at A_c{tag}"), point.sign_change_verified));
        out.push(holds(format!("E4(A_c{tag}) > 0"), point.e4_at_ac > 0.0));
    }
    let sol = solve_delta(lj, 50.0)?;
    out.push(compare("Delta(12,6; A=50)", sol.ratio, 99.0, 1e-2, Kind::Absolute));
    Ok(out)
}

fn energies(points: &[(MieParams, f64, f64)]) -> Result<Vec<Check>> {
    let mut worst_quad = (0.0, 0.0, 0.0);
    let mut worst_brute = (0.0, 0.0, 0.0);
    for &(p, a, ratio) in points {
        let spec = mie_potential(p);
        let chain = BipartiteChain::new(a, ratio)?;
        let closed = bipartite_energy(&spec, &chain)?.value;
        let quad = bipartite_energy_quadrature(&spec, &chain)?.value;
        let brute = direct_bipartite_sum(&spec, &chain, 1e-12)?.value;
        let rq = ((quad - closed) / closed).abs();
        let rb = ((brute - closed) / closed).abs();
        if rq >= worst_quad.2 {
            worst_quad = (quad, closed, rq);
        }
        if rb >= worst_brute.2 {
            worst_brute = (brute, closed, rb);
        }
    }
    let n = points.len();
    Ok(vec![
        compare(format!("bipartite energy quadrature vs closed form, worst of {n}"), worst_quad.0, worst_quad.1, 1e-8, Kind::Relative),
        compare(format!("bipartite energy direct sum vs closed form, worst of {n}"), worst_brute.0, worst_brute.1, 1e-8, Kind::Relative),
    ])
}

fn landau(full: bool) -> Result<Vec<Check>> {
    let spec = mie_potential(mie(12.0, 6.0));
    let q = landau_coefficients_quadrature(&spec, 1.1)?;
    let c = landau_coefficients_closed(&spec, 1.1)?;
    let mut out = vec![
        compare("E2(12,6; A=1.1) quadrature vs closed form", q.e2, c.e2, 1e-8, Kind::Relative),
        compare("E4(12,6; A=1.1) quadrature vs closed form", q.e4, c.e4, 1e-8, Kind::Relative),
    ];
    if full {
        let (fd, _) = landau_coefficients_finite_difference(&spec, 1.1, FD_STEPS)?;
        out.push(compare("E2 quadrature vs difference quotient", q.e2, fd.e2, 1e-6, Kind::Relative));
        out.push(compare("E4 quadrature vs difference quotient", q.e4, fd.e4, 1e-5, Kind::Relative));
        out.push(compare(
            "E6 quadrature vs difference quotient",
            q.e6.unwrap_or(f64::NAN),
            fd.e6.unwrap_or(f64::NAN),
            1e-3,
            Kind::Relative,
        ));
    }
    Ok(out)
}

fn critical_behaviour() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [mie(12.0, 6.0), mie(7.0, 6.0)] {
        let b = fit_beta(p, (1e-8, 1e-4), 20)?;
        let tag = format!("({},{})", p.n, p.m);
        out.push(compare(format!("order-parameter exponent {tag}"), b.fit.exponent, 0.5, 1e-3, Kind::Absolute));
        out.push(compare(format!("order-parameter prefactor {tag}"), b.fit.prefactor, b.amplitude, 1e-2, Kind::Relative));
    }
    for m in [2.0, 6.0, 12.0] {
        out.push(compare(
            format!("A_c(m+1e-6, m={m}) vs limit"),
            critical_spacing(mie(m + 1e-6, m))?,
            critical_point_limit_n_to_m(m)?,
            1e-5,
            Kind::Absolute,
        ));
    }
    let (xs, pairs) = default_tricritical_grid();
    let report = tricritical_scan(&xs, &pairs)?;
    out.push(holds("g strictly decreasing on [1.01, 60]", report.max_g_increment < 0.0));
    out.push(holds("E4(A_c) > 0 for integer 2 <= m < n <= 14", report.e4_violations.is_empty()));
    Ok(out)
}

fn grid_points(full: bool) -> Vec<(MieParams, f64, f64)> {
    let pairs = [mie(12.0, 6.0), mie(7.0, 6.0), mie(6.0, 2.0)];
    let steps = if full { 5 } else { 2 };
    let mut pts = Vec::new();
    for p in pairs {
        for i in 0..steps {
            let a = 0.8 + 2.2 * i as f64 / (steps - 1) as f64;
            for j in 0..steps {
                pts.push((p, a, 1.0 + 3.0 * j as f64 / (steps - 1) as f64));
            }
        }
    }
    pts
}

pub fn run(quick: bool, digits: usize) -> Report {
    let full = !quick;
    let mut table = Table::new(&["check", "value", "reference", "error", "tolerance", "status"], digits);
    let mut failed = false;
    let groups: Vec<(&str, Result<Vec<Check>>)> = {
        let mut g = vec![
            ("constants", constants()),
            ("energies", energies(&grid_points(full))),
            ("landau", landau(full)),
        ];
        if full {
            g.push(("critical behaviour", critical_behaviour()));
        }
        g
    };
    let mut passed = 0;
    let mut total = 0;
    for (group, result) in groups {
        match result {
            Ok(checks) => {
                for c in checks {
                    let ok = c.error <= c.tolerance;
                    total += 1;
                    if ok {
                        passed += 1;
                    } else {
                        failed = true;
                    }
                    table.row(vec![
                        c.name.into(),
                        c.value.into(),
                        c.reference.into(),
                        c.error.into(),
                        c.tolerance.into(),
                        (if ok { "pass" } else { "FAIL" }).into(),
                    ]);
                }
            }
            Err(e) => {
                failed = true;
                total += 1;
                table.row(vec![
                    group.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    format!("FAIL: {e}").into(),
                ]);
            }
        }
    }
    table.note("passed", format!("{passed}/{total}"));
    Report {
        body: table.finish(),
        failed,
        notes: Vec::new(),
    }
}
