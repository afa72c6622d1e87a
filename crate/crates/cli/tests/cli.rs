use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ic-feedback"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Rows of a CSV string, header dropped.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn region_lists_corner_and_sum() {
    let o = run(&["ldic", "region", "--n11", "4", "--n22", "4", "--n12", "2", "--n21", "2", "--cfb1", "1", "--cfb2", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.trim() == "(4, 1)"), "{s}");
    assert!(s.contains("max sum-rate: 6"));
    assert_eq!(s.lines().filter(|l| l.contains("<=")).count(), 9);
}

#[test]
fn region_without_cross_links_is_a_box() {
    let o = run(&["ldic", "region", "--n11", "3", "--n22", "2", "--n12", "0", "--n21", "0"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let verts: Vec<&str> = s.lines().skip_while(|l| !l.starts_with("vertices")).skip(1).take_while(|l| l.starts_with("  ")).map(str::trim).collect();
    assert_eq!(verts, ["(0, 0)", "(0, 2)", "(3, 0)", "(3, 2)"]);
}

#[test]
fn region_check_on_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let mut text = String::from("n11,n22,n12,n21,cfb1,cfb2\n# comment\n");
    for (a, b, c, d) in [(4, 4, 2, 2), (6, 3, 5, 0), (0, 0, 0, 0), (2, 5, 6, 1)] {
        for cf in ["0", "1/2", "3"] {
            text.push_str(&format!("{a},{b},{c},{d},{cf},1\n"));
        }
    }
    std::fs::write(&path, text).unwrap();
    let o = run(&["ldic", "region", "--grid", path.to_str().unwrap(), "--check-appendix-b"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.ends_with(" PASS")).count(), 12);
    assert!(s.contains("checked 12 rows, 0 failed"));
}

#[test]
fn malformed_grid_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    std::fs::write(&path, "4,4,2,2,1,1\n4,4,2\n").unwrap();
    assert_eq!(code(&run(&["ldic", "region", "--grid", path.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["ldic", "region", "--n11", "x", "--n22", "1", "--n12", "1", "--n21", "1"])), 2);
    assert_eq!(code(&run(&["ldic", "region", "--n11", "1", "--n22", "1", "--n12", "1", "--n21", "1", "--cfb1", "-1"])), 2);
    assert_eq!(code(&run(&["ldic", "nope"])), 2);
    assert_eq!(code(&run(&["gaussian", "gap-sweep", "--snr-db", "20", "--inr-step-db", "0"])), 2);
    assert_eq!(code(&run(&["ldic", "simulate", "--motivating", "--blocks", "2"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn sumrate_sweep_rows() {
    let o = run(&["ldic", "sumrate-sweep", "--alpha-start", "0", "--alpha-stop", "2", "--alpha-step", "0.5", "--beta", "0,0.125"]);
    assert_eq!(code(&o), 0);
    let r = rows(&stdout(&o));
    let find = |a: &str, b: &str| r.iter().find(|x| x[0] == a && x[1] == b).map(|x| x[2].clone()).unwrap();
    assert_eq!(find("0.5", "0"), "1");
    assert_eq!(find("0.5", "0.125"), "1.25");
    assert_eq!(find("2", "0"), "2");
    assert_eq!(r.len(), 10);
}

#[test]
fn sweep_output_is_deterministic_and_lf() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let plot = dir.path().join("fig.gp");
    for (p, threads) in [(&a, "1"), (&b, "4")] {
        let o = bin()
            .args(["ldic", "sumrate-sweep", "--out", p.to_str().unwrap(), "--plot", plot.to_str().unwrap()])
            .env("IC_FEEDBACK_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    assert!(!ta.contains(&b'\r'));
    assert!(ta.starts_with(b"alpha,beta,normalized_sumrate\n"));
    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains(b.to_str().unwrap()));
    assert!(script.contains("beta = inf"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = bin().args(["ldic", "sumrate-sweep"]).env("IC_FEEDBACK_THREADS", "zero").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn simulate_motivating_example() {
    let o = run(&["ldic", "simulate", "--motivating", "--blocks", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("(3.200, 0.800) OK"));
}

#[test]
fn simulate_zero_messages_with_trace() {
    let o = run(&["ldic", "simulate", "--n", "5", "--m", "2", "--cfb", "1", "--blocks", "4", "--zero-messages", "--trace", "--cross-check"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().next().unwrap().ends_with("OK"));
    assert_eq!(s.lines().filter(|l| l.starts_with("block ")).count(), 4);
    assert!(s.contains("gf2 cross-check: agrees"));
}

#[test]
fn simulate_symmetric_rate() {
    let o = run(&["ldic", "simulate", "--n", "6", "--m", "3", "--cfb", "2", "--blocks", "50", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    // 48/50 of the sum capacity 9
    assert!(stdout(&o).contains("achieved sum-rate 216/25"), "{}", stdout(&o));
}

#[test]
fn simulate_seed_is_reproducible() {
    let args = ["ldic", "simulate", "--n", "7", "--m", "4", "--cfb", "2", "--blocks", "5", "--seed", "11", "--trace"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn unsupported_regime_exit_3() {
    assert_eq!(code(&run(&["ldic", "simulate", "--n", "6", "--m", "5"])), 3);
}

#[test]
fn gaussian_bounds_point() {
    let o = run(&["gaussian", "bounds", "--snr-db", "40", "--inr-db", "20", "--cfb1", "5", "--cfb2", "5", "--rho", "0.3"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("regime a"));
    assert_eq!(s.lines().filter(|l| l.contains(" R2 <= ")).count(), 11);
    assert_eq!(code(&run(&["gaussian", "bounds", "--snr-db", "40", "--inr-db", "20", "--rho", "1.5"])), 2);
}

fn gap_column(csv: &str) -> Vec<f64> {
    rows(csv).iter().map(|r| r[3].parse().unwrap()).collect()
}

#[test]
fn gap_sweep_at_20db_optimized() {
    let o = run(&["gaussian", "gap-sweep", "--snr-db", "20", "--cfb", "10", "--optimize"]);
    assert_eq!(code(&o), 0);
    let g = gap_column(&stdout(&o));
    assert_eq!(g.len(), 86);
    // four bits, plus one for the coarse power grid
    assert!(g.iter().all(|&x| (0.0..=5.0).contains(&x)));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("max gap"));
}

#[test]
fn gap_sweep_at_60db_fixed_powers() {
    let o = run(&["gaussian", "gap-sweep", "--snr-db", "60", "--cfb", "10", "--max-gap", "14.8"]);
    assert_eq!(code(&o), 0);
    assert!(gap_column(&stdout(&o)).iter().all(|&x| (0.0..=14.8).contains(&x)));
}

#[test]
fn gap_sweep_without_feedback() {
    for snr in ["20", "40", "60"] {
        let o = run(&["gaussian", "gap-sweep", "--snr-db", snr, "--cfb", "0"]);
        assert_eq!(code(&o), 0);
        assert!(gap_column(&stdout(&o)).iter().all(|&x| (0.0..=4.0).contains(&x)));
    }
}

#[test]
fn gap_claim_failure_exit_1() {
    assert_eq!(code(&run(&["gaussian", "gap-sweep", "--snr-db", "60", "--cfb", "10", "--max-gap", "0.5"])), 1);
}

#[test]
fn gap_sweep_files_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gap.csv");
    let gp = dir.path().join("gap.gp");
    let o = run(&["gaussian", "gap-sweep", "--snr-db", "40", "--cfb", "10", "--inr-start-db", "0", "--inr-stop-db", "20", "--out", csv.to_str().unwrap(), "--plot", gp.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("max gap"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("inr_db,outer,achievable,gap,regime\n"));
    assert_eq!(rows(&text).len(), 11);
    assert!(Path::new(&gp).exists());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"snr_db": 60, "cfb": 10, "inr_start_db": 0, "inr_stop_db": 4}"#).unwrap();
    let with_file = run(&["gaussian", "gap-sweep", "--config", cfg.to_str().unwrap()]);
    let overridden = run(&["gaussian", "gap-sweep", "--config", cfg.to_str().unwrap(), "--snr-db", "20"]);
    let direct = run(&["gaussian", "gap-sweep", "--snr-db", "20", "--cfb", "10", "--inr-start-db", "0", "--inr-stop-db", "4"]);
    assert_eq!(code(&with_file), 0);
    assert_eq!(rows(&stdout(&with_file)).len(), 3);
    assert_ne!(stdout(&with_file), stdout(&overridden));
    assert_eq!(stdout(&overridden), stdout(&direct));

    std::fs::write(&cfg, r#"{"no_such_flag": 1}"#).unwrap();
    assert_eq!(code(&run(&["gaussian", "gap-sweep", "--snr-db", "20", "--config", cfg.to_str().unwrap()])), 2);
}
