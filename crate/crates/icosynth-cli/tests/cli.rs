use icosynth::icosian::{evaluate_word, GateWord};
use icosynth::real::Real;
use icosynth::unitary::{distance, named_gate, parse_angle, u_of_theta};
use icosynth_cli::{run, DiagOutput, ExactOutput, SynthOutput, VerifyNeOutput, EXIT_MALFORMED};

fn cli(args: &[&str]) -> (i32, String) {
    run(std::iter::once("icosynth").chain(args.iter().copied()))
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let (code, out) = cli(args);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"))
}

fn close(reported: f64, actual: f64) -> bool {
    (reported - actual).abs() <= 1e-2 * actual.abs() + 1e-25
}

#[test]
fn synth_json_round_trips() {
    for gate in ["H", "T", "S", "Y"] {
        let o: SynthOutput = json(&["synth", "--gate", gate, "--eps", "1e-5", "--json"]);
        let w: GateWord = o.word.parse().unwrap();
        assert_eq!(w.tau_count(), o.tau_count);
        let d = distance(&named_gate(gate, 256).unwrap(), &evaluate_word(&w, 256)).to_f64();
        assert!(close(o.achieved, d), "{gate}: reported {} vs {d}", o.achieved);
        assert!(d < (o.bound_constant + 2.0) * o.epsilon_internal);
        let again: SynthOutput = serde_json::from_str(&serde_json::to_string(&o).unwrap()).unwrap();
        assert_eq!(again, o);
    }
}

#[test]
fn synth_matrix_target() {
    let m = "1/2+1/2i, 1/2-1/2i, 1/2-1/2i, 1/2+1/2i";
    let o: SynthOutput = json(&["synth", "--matrix", m, "--eps", "1e-4", "--strict", "--json"]);
    assert!(o.achieved < 1e-4);
}

#[test]
fn diag_json_round_trips() {
    for theta in ["pi/8", "-3pi/7", "0.4"] {
        let o: DiagOutput = json(&["synth-diag", "--theta", theta, "--eps", "1e-6", "--json"]);
        let w: GateWord = o.word.parse().unwrap();
        let target = u_of_theta(&parse_angle(theta, 256).unwrap());
        let d = distance(&target, &evaluate_word(&w, 256)).to_f64();
        assert!(close(o.achieved, d) && d < 1e-6, "{theta}");
        assert_eq!(o.tau_count as u32, o.m);
    }
}

#[test]
fn deterministic_for_fixed_seed() {
    let strip = |mut o: SynthOutput| {
        o.elapsed_ms = 0.0;
        o
    };
    let a: SynthOutput = json(&["synth", "--gate", "H", "--eps", "1e-6", "--seed", "5", "--json"]);
    let b: SynthOutput = json(&["synth", "--gate", "H", "--eps", "1e-6", "--seed", "5", "--json"]);
    assert_eq!(strip(a), strip(b));
    let c: DiagOutput = json(&["synth-diag", "--theta", "1.1", "--eps", "1e-7", "--seed", "3", "--json"]);
    let d: DiagOutput = json(&["synth-diag", "--theta", "1.1", "--eps", "1e-7", "--seed", "3", "--json"]);
    assert_eq!((c.word, c.achieved), (d.word, d.achieved));
}

#[test]
fn exact_round_trips() {
    let o: ExactOutput = json(&["exact", "--quat", "1,0 0,0 0,0 0,0", "--json"]);
    assert_eq!((o.word.as_str(), o.tau_count), ("()", 0));
    let o: ExactOutput = json(&["exact", "--quat", "1,0", "0,0", "0,0", "0,0", "--json"]);
    assert_eq!(o.tau_count, 0);
    let o: ExactOutput = json(&["exact", "--word", "(rs)t(s)t(rr)t()", "--json"]);
    assert_eq!(o.tau_count, 3);
    let back: ExactOutput = json(&["exact", "--quat", &o.quat, "--json"]);
    assert_eq!(back, o);
    let (code, out) = cli(&["exact", "--quat", "0,1 2,0 0,0 0,0"]);
    assert_ne!(code, 0, "{out}");
}

#[test]
fn verify_ne_reports_no_violations() {
    let o: VerifyNeOutput = json(&["verify-ne", "--n", "6", "--r", "1/12", "--json"]);
    assert!(o.violations.is_empty());
    assert_eq!(o.points, 2401);
}

#[test]
fn malformed_input_exits_3() {
    let bad: [&[&str]; 8] = [
        &["synth", "--gate", "Q", "--eps", "1e-3"],
        &["synth", "--matrix", "1, 2, 3", "--eps", "1e-3"],
        &["synth", "--gate", "T", "--eps", "1.5"],
        &["synth", "--gate", "T", "--matrix", "1,0,0,1", "--eps", "1e-3"],
        &["synth-diag", "--theta", "pi/0", "--eps", "1e-3"],
        &["exact", "--word", "(rx)"],
        &["verify-ne", "--n", "6", "--r", "one"],
        &["frobnicate"],
    ];
    for args in bad {
        let (code, out) = cli(args);
        assert_eq!(code, EXIT_MALFORMED, "{args:?}: {out}");
        assert!(!out.is_empty());
    }
}

#[test]
fn text_output_mentions_fields() {
    let (code, out) = cli(&["synth-diag", "--theta", "pi/8", "--eps", "1e-4"]);
    assert_eq!(code, 0);
    for key in ["word:", "tau-count:", "achieved:", "m:", "time:"] {
        assert!(out.contains(key), "{out}");
    }
    let (code, out) = cli(&["synth", "--gate", "X", "--eps", "1e-3"]);
    assert_eq!(code, 0);
    assert!(out.contains("tau-count: 0"), "{out}");
}

#[test]
fn precision_flag_is_honored() {
    let o: DiagOutput = json(&["--precision", "400", "synth-diag", "--theta", "pi/8", "--eps", "1e-4", "--json"]);
    assert!(o.achieved < 1e-4);
    let _ = Real::pi(400);
}

#[test]
fn selftest_passes() {
    let (code, out) = cli(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
