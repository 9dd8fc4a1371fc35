//! Acceptance gate for the whole workspace. Each test covers one numbered
//! criterion and prints exactly one machine-greppable line of the form
//!
//! ```text
//! ACCEPTANCE <n> (<name>): PASS - <detail>
//! ```
//!
//! before asserting, so a failing run still shows the verdict for every
//! criterion that executed. Run with `--nocapture` to see the lines on a
//! green build.

use std::collections::BTreeSet;
use std::io::BufReader;
use std::process::Command;
use std::time::{Duration, Instant};

use qwalk_cli::io::{read_diagram, Format};
use qwalk_core::observables::{series, temporal_average};
use qwalk_core::oracle::oracle_evolve;
use qwalk_core::parrondo::{classify, Classification, SweepConfig};
use qwalk_core::protocol::{evolve, evolve_with, AngleSchedule, GameProtocol, ScheduleMode};
use qwalk_core::walk::{InitialState, WalkerState};
use qwalk_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NORM_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-12;
const BIAS_TOL: f64 = 1e-12;

/// The equal-weight spin state that produces the transport reversal;
/// `custom:1,0,1,0` on the command line.
const RECORDED_INITIAL: InitialState = InitialState::Custom {
    up: Complex64::new(1.0, 0.0),
    down: Complex64::new(1.0, 0.0),
};

fn report(n: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n} ({name}): {verdict} - {detail}");
    assert!(ok, "acceptance criterion {n} ({name}): {detail}");
}

fn linear(deg: f64) -> AngleSchedule {
    AngleSchedule::from_degrees(ScheduleMode::Linear, deg).unwrap()
}

fn single(deg: f64) -> GameProtocol {
    GameProtocol::single(linear(deg))
}

fn alternating(a_deg: f64, b_deg: f64) -> GameProtocol {
    GameProtocol::alternating(linear(a_deg), linear(b_deg))
}

fn random_initial(rng: &mut impl Rng) -> InitialState {
    loop {
        let c = |rng: &mut dyn rand::RngCore| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        };
        let up = c(rng);
        let down = c(rng);
        if up.norm_sqr() + down.norm_sqr() > 1e-3 {
            return InitialState::Custom { up, down };
        }
    }
}

fn random_protocol(rng: &mut impl Rng) -> GameProtocol {
    let theta = |rng: &mut dyn rand::RngCore| rng.random_range(1e-6..180.0 - 1e-6);
    if rng.random::<bool>() {
        alternating(theta(rng), theta(rng))
    } else {
        single(theta(rng))
    }
}

fn qwalk(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

#[test]
fn acceptance_1_unitarity() {
    const T_MAX: usize = 1000;
    let protocols = [single(60.0), single(36.0), alternating(60.0, 36.0)];
    let initials = [
        InitialState::Up,
        InitialState::Down,
        InitialState::Symmetric,
    ];
    let mut worst_dev = 0.0f64;
    let mut slowest = Duration::ZERO;
    for protocol in &protocols {
        for &initial in &initials {
            let clock = Instant::now();
            let mut state = WalkerState::localized(initial, T_MAX).unwrap();
            let mut dev = 0.0f64;
            evolve_with(&mut state, protocol, T_MAX, |s| {
                dev = dev.max((s.norm() - 1.0).abs());
            })
            .unwrap();
            slowest = slowest.max(clock.elapsed());
            worst_dev = worst_dev.max(dev);
        }
    }
    let ok = worst_dev <= NORM_TOL && slowest <= Duration::from_secs(1);
    report(
        1,
        "unitarity",
        ok,
        &format!(
            "9 runs to t={T_MAX}: max |norm-1| = {worst_dev:.3e} (tol {NORM_TOL:.0e}), \
             slowest run {slowest:.2?} (budget 1s)"
        ),
    );
}

#[test]
fn acceptance_2_oracle_equivalence() {
    const STEPS: usize = 32;
    const RADIUS: usize = 40;
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let protocol = random_protocol(&mut rng);
        let initial = random_initial(&mut rng);
        let mut sparse = WalkerState::localized(initial, RADIUS).unwrap();
        let mut dense = WalkerState::localized(initial, RADIUS).unwrap();
        for _ in 0..STEPS {
            evolve(&mut sparse, &protocol, 1).unwrap();
            dense = oracle_evolve(&dense, &protocol, 1, RADIUS).unwrap();
            worst = worst.max(sparse.max_amplitude_difference(&dense));
        }
    }
    let elapsed = clock.elapsed();
    let ok = worst <= ORACLE_TOL && elapsed <= Duration::from_secs(10);
    report(
        2,
        "oracle-equivalence",
        ok,
        &format!(
            "50 random configs, every T <= {STEPS}: max amplitude gap = {worst:.3e} \
             (tol {ORACLE_TOL:.0e}), elapsed {elapsed:.2?} (budget 10s)"
        ),
    );
}

#[test]
fn acceptance_3_degenerate_alternation() {
    let dir = tempfile::tempdir().unwrap();
    let mut results = Vec::new();
    for theta in ["10", "45", "60"] {
        let single_path = dir.path().join(format!("single_{theta}.csv"));
        let alt_path = dir.path().join(format!("alt_{theta}.csv"));
        let out = qwalk(&[
            "simulate",
            "--theta-a",
            theta,
            "--tmax",
            "500",
            "--output",
            single_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let out = qwalk(&[
            "simulate",
            "--protocol",
            "alternating",
            "--theta-a",
            theta,
            "--theta-b",
            theta,
            "--tmax",
            "500",
            "--output",
            alt_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let a = std::fs::read(&single_path).unwrap();
        let b = std::fs::read(&alt_path).unwrap();
        results.push((theta, a.len(), a == b));
    }
    let ok = results.iter().all(|(_, _, same)| *same);
    let summary: Vec<String> = results
        .iter()
        .map(|(theta, bytes, same)| {
            format!(
                "{theta}deg: {} ({bytes} bytes)",
                if *same { "identical" } else { "DIFFER" }
            )
        })
        .collect();
    report(
        3,
        "degenerate-alternation",
        ok,
        &format!(
            "single vs alternating(theta,theta), t_max=500: {}",
            summary.join("; ")
        ),
    );
}

#[test]
fn acceptance_4_light_cone_parity() {
    const T_MAX: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4);
    let mut sites_checked = 0u64;
    let mut violations = 0u64;
    for _ in 0..10 {
        let protocol = random_protocol(&mut rng);
        let initial = random_initial(&mut rng);
        let mut state = WalkerState::localized(initial, T_MAX).unwrap();
        evolve_with(&mut state, &protocol, T_MAX, |s| {
            let t = s.t() as i64;
            let (lo, hi) = s.support();
            if lo < -t || hi > t {
                violations += 1;
            }
            for x in -t..=t {
                let p = s.amplitude(x).norm_sqr();
                sites_checked += 1;
                if (x + t) % 2 != 0 && p != 0.0 {
                    violations += 1;
                }
            }
        })
        .unwrap();
    }
    let ok = violations == 0;
    report(
        4,
        "light-cone-parity",
        ok,
        &format!(
            "10 random configs to t={T_MAX}: {sites_checked} sites scanned, \
             {violations} nonzero amplitudes outside |x| <= t or on odd-parity sites"
        ),
    );
}

#[test]
fn acceptance_5_parrondo_reproduction() {
    let clock = Instant::now();
    let cell_for = |initial: InitialState| {
        let cfg = SweepConfig::new(vec![60.0], vec![36.0], 1000, initial);
        classify(60.0, 36.0, &cfg).unwrap()
    };
    let menu = [
        ("up", InitialState::Up),
        ("down", InitialState::Down),
        ("symmetric", InitialState::Symmetric),
    ];
    let menu_cells: Vec<(&str, _)> = menu
        .iter()
        .map(|&(name, init)| (name, cell_for(init)))
        .collect();
    let menu_passers: Vec<&str> = menu_cells
        .iter()
        .filter(|(_, c)| c.classification == Classification::Parrondo)
        .map(|(name, _)| *name)
        .collect();
    let recorded = cell_for(RECORDED_INITIAL);
    let elapsed = clock.elapsed();

    let sign_reversal = recorded.bias_a < -1.0 / 3.0
        && recorded.bias_b < -1.0 / 3.0
        && recorded.bias_combined > 1.0 / 3.0
        && recorded.classification == Classification::Parrondo;
    let matches_reference = (recorded.bias_a - -0.582632680519671).abs() < BIAS_TOL
        && (recorded.bias_b - -0.499406473790155).abs() < BIAS_TOL
        && (recorded.bias_combined - 0.403548408543596).abs() < BIAS_TOL;
    let ok = sign_reversal && matches_reference && elapsed <= Duration::from_secs(5);

    let menu_summary: Vec<String> = menu_cells
        .iter()
        .map(|(name, c)| format!("{name}: {}", c.classification.label()))
        .collect();
    report(
        5,
        "parrondo-reproduction",
        ok,
        &format!(
            "(60,36) with t_max=1000, eps=1/3, transient=500; menu [{}] -> passers {:?}; \
             recorded initial custom:1,0,1,0 = (|U>+|D>)/sqrt(2): bias_a={:+.6}, \
             bias_b={:+.6}, bias_combined={:+.6}, class={}; elapsed {elapsed:.2?} (budget 5s)",
            menu_summary.join(", "),
            menu_passers,
            recorded.bias_a,
            recorded.bias_b,
            recorded.bias_combined,
            recorded.classification.label(),
        ),
    );
}

#[test]
fn acceptance_6_diagram_existence() {
    let clock = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let w1 = dir.path().join("diagram_w1.csv");
    let w8 = dir.path().join("diagram_w8.csv");
    for (workers, path) in [("1", &w1), ("8", &w8)] {
        let out = qwalk(&[
            "sweep",
            "--grid",
            "1:89:1",
            "--tmax",
            "1000",
            "--initial",
            "custom:1,0,1,0",
            "--workers",
            workers,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bytes_w1 = std::fs::read(&w1).unwrap();
    let byte_identical = bytes_w1 == std::fs::read(&w8).unwrap();

    let rows = read_diagram(BufReader::new(bytes_w1.as_slice()), Format::Csv).unwrap();
    let parrondo: BTreeSet<(i64, i64)> = rows
        .iter()
        .filter(|r| r.class == "parrondo")
        .map(|r| (r.theta_a_deg as i64, r.theta_b_deg as i64))
        .collect();
    let expected: BTreeSet<(i64, i64)> =
        [(20, 32), (32, 20), (60, 20), (60, 36), (60, 40), (72, 20)].into();
    let diagonal_clean = rows
        .iter()
        .filter(|r| r.theta_a_deg == r.theta_b_deg)
        .all(|r| r.class == "none");
    let elapsed = clock.elapsed();

    let ok = rows.len() == 89 * 89
        && byte_identical
        && !parrondo.is_empty()
        && parrondo == expected
        && diagonal_clean
        && elapsed <= Duration::from_secs(900);
    report(
        6,
        "diagram-existence",
        ok,
        &format!(
            "[1,89]^2 sweep at t_max=1000, initial custom:1,0,1,0: {} rows, \
             parrondo cells {:?} (expected {:?}), diagonal clean: {diagonal_clean}, \
             1 vs 8 workers byte-identical: {byte_identical}, elapsed {:.1?} (budget 900s)",
            rows.len(),
            parrondo,
            expected,
            elapsed,
        ),
    );
}

#[test]
fn acceptance_7_early_transient() {
    const T_MAX: usize = 1000;
    const TRANSIENT: usize = 500;
    let protocol = alternating(60.0, 36.0);
    let mut state = WalkerState::localized(RECORDED_INITIAL, T_MAX).unwrap();
    let records = series(&mut state, &protocol, T_MAX).unwrap();
    let long_run = temporal_average(&records, TRANSIENT).unwrap();
    let witness = records
        .iter()
        .find(|r| r.t < 20 && r.bias != 0.0 && r.bias.signum() != long_run.signum());
    let ok = long_run != 0.0 && witness.is_some();
    let witness_text = witness
        .map(|r| format!("t={} with bias {:+.4}", r.t, r.bias))
        .unwrap_or_else(|| "none found".to_string());
    report(
        7,
        "early-transient",
        ok,
        &format!(
            "combined game at (60,36), initial custom:1,0,1,0: long-run mean bias {long_run:+.4}; \
             opposite sign at {witness_text}"
        ),
    );
}

#[test]
fn acceptance_8_static_sanity() {
    const T_MAX: usize = 1000;
    let protocol =
        GameProtocol::single(AngleSchedule::from_degrees(ScheduleMode::Static, 45.0).unwrap());

    // Kernel vs dense oracle after 32 static Hadamard steps.
    let mut sparse = WalkerState::localized(InitialState::Up, 40).unwrap();
    evolve(&mut sparse, &protocol, 32).unwrap();
    let dense = oracle_evolve(
        &WalkerState::localized(InitialState::Up, 40).unwrap(),
        &protocol,
        32,
        40,
    )
    .unwrap();
    let oracle_gap = sparse.max_amplitude_difference(&dense);

    // Ballistic spread: m2(t)/t^2 stays flat far past the transient.
    let mut state = WalkerState::localized(InitialState::Up, T_MAX).unwrap();
    let records = series(&mut state, &protocol, T_MAX).unwrap();
    let coeff = |t: usize| records[t - 1].m2 / (t as f64 * t as f64);
    let reference = coeff(500);
    let max_rel_dev = (600..=1000)
        .map(|t| (coeff(t) / reference - 1.0).abs())
        .fold(0.0f64, f64::max);

    let ok = oracle_gap <= ORACLE_TOL && max_rel_dev <= 0.10;
    report(
        8,
        "static-sanity",
        ok,
        &format!(
            "static 45deg from |U>: oracle gap at t=32 = {oracle_gap:.3e} (tol {ORACLE_TOL:.0e}); \
             m2/t^2 at t=500 = {reference:.6}, max relative drift on [600,1000] = {max_rel_dev:.3e} \
             (tol 0.1)"
        ),
    );
}
