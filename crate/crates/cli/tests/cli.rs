use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn swldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swldpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Data lines, without the `#` preamble.
fn data_lines(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn p04_source(dir: &TempDir) -> String {
    write(dir, "p04.src", "# p = 0.4, q = 0.1\n0 0 0.36\n0 1 0.04\n1 0 0.06\n1 1 0.54\n")
}

#[test]
fn encode_then_decode_with_noiseless_side_information() {
    let dir = TempDir::new().unwrap();
    let n = 60;
    for seed in [1u64, 2, 3] {
        let bits: String = (0..n).map(|i| if (i * 7 + seed as usize) % 3 == 0 { '1' } else { '0' }).collect();
        let input = write(&dir, "x.bits", &bits);
        let side: Vec<String> = bits.chars().map(|c| c.to_string()).collect();
        let side = write(&dir, "y.txt", &side.join(" "));
        let graph = dir.path().join("g.adj");
        let seed_s = seed.to_string();
        let enc = swldpc(&[
            "encode", "--dd", "3,6", "--n", "60", "--graph-seed", &seed_s, "--input", &input, "--export-graph",
            graph.to_str().unwrap(),
        ]);
        assert!(enc.status.success(), "{}", String::from_utf8_lossy(&enc.stderr));
        let syndrome = write(&dir, "s.bits", &stdout(&enc));
        let dec = swldpc(&[
            "decode", "--graph", graph.to_str().unwrap(), "--syndrome", &syndrome, "--side", &side, "--p", "0.5",
            "--q", "0",
        ]);
        assert!(dec.status.success(), "{}", String::from_utf8_lossy(&dec.stderr));
        assert_eq!(data_lines(&stdout(&dec)), vec![bits.clone()]);
    }
}

#[test]
fn encode_small_matrix() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.adj", "# variables 3 checks 2\n0 0 1\n1 1 2\n");
    let x = write(&dir, "x.bits", "101\n");
    let o = swldpc(&["encode", "--graph", &g, "--input", &x]);
    assert!(o.status.success());
    assert_eq!(data_lines(&stdout(&o)), vec!["11".to_string()]);
}

#[test]
fn convert_reports_the_capacity_identity() {
    let dir = TempDir::new().unwrap();
    let src = p04_source(&dir);
    let o = swldpc(&["convert", "--source", &src]);
    assert!(o.status.success());
    let text = stdout(&o);
    let field = |k: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(&format!("# {k}: ")))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((field("conditional_entropy") - 0.458_492_293_010_296).abs() < 1e-12);
    assert!(field("identity_residual").abs() < 1e-9);
    assert_eq!(data_lines(&text).len(), 4);
}

#[test]
fn de_threshold_for_the_symmetric_family() {
    let o = swldpc(&[
        "de-threshold", "--family", "bsc", "--p", "0.5", "--dd", "3,6", "--tol", "1e-3", "--step", "0.03125",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("# de: step=0.03125"));
    let t: f64 = data_lines(&text)[0].parse().unwrap();
    assert!((0.07..=0.09).contains(&t), "{t}");
}

#[test]
fn de_run_writes_trajectory_and_dump() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("final.dens");
    let o = swldpc(&[
        "de-run", "--epsilon", "0.3", "--dd", "3,6", "--iterations", "5", "--dump", dump.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let lines = data_lines(&stdout(&o));
    assert_eq!(lines[0], "iteration,p_e");
    assert_eq!(lines.len(), 7);
    let p0: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(p0, 0.15);
    let d = swldpc_dump_header(&dump);
    assert_eq!(d, (1.0 / 64.0, 1920));
}

fn swldpc_dump_header(path: &Path) -> (f64, usize) {
    let text = std::fs::read_to_string(path).unwrap();
    let h: Vec<&str> = text.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(text.lines().count(), 1 + 2 * 1920 + 1);
    (h[0].parse().unwrap(), h[1].parse().unwrap())
}

#[test]
fn sweep_writes_csv_with_preamble() {
    let o = swldpc(&["sweep", "--dd", "3,6", "--points", "3", "--step", "0.0625", "--range", "20"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# violations: 0"));
    assert!(text.contains("# de: step=0.0625"));
    let lines = data_lines(&text);
    assert_eq!(lines[0], "p,q,converged,h_x_given_y,final_p_e,iterations");
    assert_eq!(lines.len(), 10);
}

#[test]
fn equiv_and_degrade_check() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.src", "0 0 0.18\n0 1 0.08\n1 0 0.02\n1 1 0.72\n");
    let b = write(&dir, "b.src", "0 0 0.45\n0 1 0.05\n1 0 0.05\n1 1 0.45\n");
    let o = swldpc(&["equiv", "--source", &a, "--other", &b]);
    assert!(stdout(&o).contains("equivalent: true"), "{}", stdout(&o));
    let c = p04_source(&dir);
    let o = swldpc(&["equiv", "--source", &a, "--other", &c]);
    assert!(stdout(&o).contains("equivalent: false"));

    let bsc2 = write(&dir, "bsc2.src", "0 0 0.4\n0 1 0.1\n1 0 0.1\n1 1 0.4\n");
    let o = swldpc(&["degrade-check", "--source", &b, "--other", &bsc2]);
    assert!(stdout(&o).contains("degraded: true"));
    let o = swldpc(&["degrade-check", "--source", &bsc2, "--other", &b]);
    assert!(stdout(&o).contains("degraded: false"));
    let map = write(&dir, "m.txt", "0 0 0.9\n0 1 0.1\n1 0 0.1\n1 1 0.9\n");
    let o = swldpc(&["degrade-check", "--source", &c, "--map", &map]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# degraded: true"));
}

#[test]
fn mismatch_uniform_prior_is_identical() {
    let o = swldpc(&[
        "mismatch", "--p", "0.5", "--q", "0.06", "--channel-llr", "--dd", "3,6", "--step", "0.0625", "--range", "20",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("# identical: true"));
}

#[test]
fn simulate_and_concentration_run() {
    let o = swldpc(&["simulate", "--p", "0.5", "--q", "0", "--dd", "3,6", "--n", "120", "--trials", "3"]);
    assert!(o.status.success());
    let lines = data_lines(&stdout(&o));
    assert!(lines[1].starts_with("120,3,0,0,"));

    let o = swldpc(&[
        "concentration", "--p", "0.5", "--q", "0.07", "--dd", "3,6", "--n-list", "300,600", "--trials", "3",
        "--step", "0.0625", "--range", "20",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("# seed: 1"));
    assert_eq!(data_lines(&stdout(&o)).len(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(swldpc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(swldpc(&["convert"]).status.code(), Some(2));
    assert_eq!(swldpc(&["convert", "--source", "/no/such/file"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.src", "0 0 0.5\n1 1 0.6\n");
    let o = swldpc(&["convert", "--source", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&o.stderr).trim().is_empty());
    assert_eq!(swldpc(&["de-run", "--p", "0.5", "--q", "0.1", "--dd", "nonsense"]).status.code(), Some(2));
    let o = swldpc(&["de-threshold", "--family", "bec", "--dd", "3,6", "--lo", "0.1", "--hi", "0.2"]);
    assert_eq!(o.status.code(), Some(1));
}
