use std::process::Command;

use chainstate::landau::critical_point;
use chainstate::MieParams;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chainstate").chain(args.iter().copied());
    let code = chainstate_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn trailer(csv: &str, key: &str) -> f64 {
    let prefix = format!("# {key}=");
    csv.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in trailer"))
        .parse()
        .unwrap()
}

#[test]
fn energy_curve_schema_and_phases() {
    let (code, out, _) = run(&["energy-curve", "--potential", "mie:n=12,m=6", "--a", "0.9:2.0:111"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("A,E_ground,E_equidistant_continuation,phase,Delta\n"));
    let a_c = critical_point(MieParams::new(12.0, 6.0).unwrap()).unwrap().a_c;
    let data = rows(&out);
    assert_eq!(data.len(), 111);
    let mut lowest = f64::INFINITY;
    for r in &data {
        let a: f64 = r[0].parse().unwrap();
        let expected = if a > a_c { "bip" } else { "eq" };
        assert_eq!(r[3], expected, "A = {a}");
        lowest = lowest.min(r[1].parse().unwrap());
    }
    let e_min = -715.0 / 691.0;
    assert!(lowest >= e_min && lowest - e_min < 1e-3);
}

#[test]
fn phase_diagram_rows() {
    let (code, out, err) = run(&["phase-diagram", "--m", "6", "--n", "7:30:24"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n,A_c\n"));
    assert!(err.contains("decreasing in n: true"));
    let data = rows(&out);
    let value = |n: &str| -> f64 {
        data.iter().find(|r| r[0] == n).unwrap()[1].parse().unwrap()
    };
    assert!((value("7") - 1.1427384940).abs() < 1e-10);
    let a12 = critical_point(MieParams::new(12.0, 6.0).unwrap()).unwrap().a_c;
    assert!((value("12") - a12).abs() < 1e-14 * a12);
    let last: f64 = data.last().unwrap()[1].parse().unwrap();
    assert!((last - 1.0).abs() < 0.1);
}

#[test]
fn beta_fit_trailer() {
    let (code, out, _) = run(&["beta-fit", "--potential", "mie:n=12,m=6"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out).len(), 20);
    assert!((trailer(&out, "exponent") - 0.5).abs() < 1e-3);
    assert!(trailer(&out, "prefactor_rel_diff").abs() < 1e-2);
}

#[test]
fn tau_fit_trailer() {
    let (code, out, _) = run(&["tau-fit", "--potential", "mie:n=6,m=2"]);
    assert_eq!(code, 0);
    assert!((trailer(&out, "exponent") + 0.25).abs() < 5e-3);
    assert_eq!(trailer(&out, "theory_exponent"), -0.25);
}

#[test]
fn hardcore_sweep_is_continuous() {
    let (code, out, _) = run(&["hardcore-sweep", "--potential", "mie:n=12,m=6,sigma=1.1", "--a", "1.1:2.0:901"]);
    assert_eq!(code, 0);
    let step = trailer(&out, "max_adjacent_Delta_step");
    // one cell straddles the onset, where Δ climbs to Δ* along the square-root
    // branch; elsewhere the boundary rises at 2/σ per unit spacing
    let bound = (trailer(&out, "Delta_star") - 1.0) + 2.0 / 1.1 * 0.001;
    assert!(step <= bound * 1.01, "{step} > {bound}");
    assert!(out.contains("# regime=junction"));
    let branches: Vec<String> = rows(&out).into_iter().map(|r| r[2].clone()).collect();
    assert_eq!(branches.first().unwrap(), "trivial");
    assert_eq!(branches.last().unwrap(), "boundary");
}

#[test]
fn infeasible_rows_are_reported() {
    let (code, out, _) = run(&["hardcore-sweep", "--sigma", "1.2", "--a", "1.0:1.5:6"]);
    assert_eq!(code, 2);
    let data = rows(&out);
    assert!(!data[0][4].is_empty());
    assert!(data[5][4].is_empty());
}

#[test]
fn a_min_limit_rows() {
    let (code, out, _) = run(&["amin-limit", "--m", "2:60:3"]);
    assert_eq!(code, 0);
    let data = rows(&out);
    let last: f64 = data[2][1].parse().unwrap();
    assert!((last - 1.0).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    let args = ["delta-sweep", "--a", "0.9:8:40", "--digits", "12"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["energy-curve", "--a", "2:1:5"],
        vec!["energy-curve", "--potential", "riesz:c=1,s=12;c=-2,s=6"],
        vec!["energy-curve", "--potential", "mie:n=6,m=12"],
        vec!["beta-fit", "--window", "1e-4:1e-8"],
        vec!["hardcore-sweep"],
        vec!["no-such-command"],
        vec!["energy-curve", "--digits", "0"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("chainstate-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["amin-limit", "--m", "2:3:2", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("m,A_min\n"));
}

#[test]
fn validate_quick_passes() {
    let start = std::time::Instant::now();
    let (code, out, _) = run(&["validate", "--quick"]);
    assert_eq!(code, 0, "{out}");
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert!(out.contains("\"A_c(12,6)\",1.10865478515792,1.10865478515,"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_chainstate");
    let ok = Command::new(bin).args(["phase-diagram", "--n", "7:8:2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 3);
    let bad = Command::new(bin).args(["phase-diagram", "--n", "7"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
