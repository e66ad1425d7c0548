use icosynth::diagonal::{solve_x0, solve_x1, solve_x23, synth_diagonal, synthesis_budget, DiagonalProblem};
use icosynth::golden::{Embedding, GoldenInt};
use icosynth::icosian::{evaluate_word, GoldenQuat};
use icosynth::real::Real;
use icosynth::unitary::{distance, u_of_theta};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const P: usize = 192;
const SLACK: f64 = 1e-9;

fn r(v: f64) -> Real {
    Real::from_f64(v, P)
}

fn emb(x: &GoldenInt) -> (f64, f64) {
    (x.to_f64(Embedding::Plus), x.to_f64(Embedding::Minus))
}

#[derive(PartialEq)]
enum Side {
    In,
    Out,
    Edge,
}

fn classify(margins: &[f64]) -> Side {
    let worst = margins.iter().copied().fold(f64::INFINITY, f64::min);
    if worst > SLACK {
        Side::In
    } else if worst < -SLACK {
        Side::Out
    } else {
        Side::Edge
    }
}

struct Geometry {
    sin: f64,
    cos: f64,
    full: f64,
    full_bar: f64,
    inner: f64,
}

impl Geometry {
    fn new(theta: f64, eps: f64, m: u32) -> Self {
        let eta = 7.0 + 5.0 * (1.0 + 5f64.sqrt()) / 2.0;
        let eta_bar = 7.0 + 5.0 * (1.0 - 5f64.sqrt()) / 2.0;
        let full = eta.powi(m as i32);
        Geometry {
            sin: theta.sin(),
            cos: theta.cos(),
            full,
            full_bar: eta_bar.powi(m as i32),
            inner: full.sqrt() * (1.0 - eps * eps),
        }
    }

    // some real x0 with x0² + y² ≤ η^m and x0 cos + y sin ≥ inner exists
    fn x1_side(&self, x1: &GoldenInt) -> Side {
        let (y, yb) = emb(x1);
        let room = self.full - y * y;
        let reach = if room < 0.0 { -1.0 } else { self.cos * room.sqrt() + y * self.sin - self.inner };
        classify(&[room, reach, self.full_bar - yb * yb])
    }

    fn x0_side(&self, x1: &GoldenInt, x0: &GoldenInt) -> Side {
        let (y, yb) = emb(x1);
        let (x, xb) = emb(x0);
        classify(&[self.full - x * x - y * y, x * self.cos + y * self.sin - self.inner, self.full_bar - xb * xb - yb * yb])
    }
}

fn scan(side: impl Fn(&GoldenInt) -> Side) -> (Vec<GoldenInt>, Vec<GoldenInt>) {
    let (mut inside, mut edge) = (vec![], vec![]);
    for c in -320i64..=320 {
        for d in -160i64..=160 {
            let x = GoldenInt::new(c, d);
            match side(&x) {
                Side::In => inside.push(x),
                Side::Edge => edge.push(x),
                Side::Out => {}
            }
        }
    }
    (inside, edge)
}

fn check_stream(stream: Vec<GoldenInt>, inside: &[GoldenInt], edge: &[GoldenInt], what: &str) {
    for x in inside {
        assert!(stream.contains(x), "{what}: missing {x:?}");
    }
    for x in &stream {
        assert!(inside.contains(x) || edge.contains(x), "{what}: spurious {x:?}");
    }
    let mut sorted = stream.clone();
    sorted.sort_by_key(|x| (x.b.clone(), x.a.clone()));
    sorted.dedup();
    assert_eq!(sorted.len(), stream.len(), "{what}: duplicates");
}

#[test]
fn enumeration_matches_scans() {
    let cases = [(0, PI / 8.0, 0.1), (2, PI / 8.0, 1e-3), (1, 0.3, 0.4), (3, -0.6, 0.2), (4, PI / 8.0, 0.05), (4, -0.2, 0.01), (2, 0.0, 0.3)];
    for (m, theta, eps) in cases {
        let p = DiagonalProblem::new(&r(theta), &r(eps), m).unwrap();
        let geo = Geometry::new(theta, eps, m);
        let x1s: Vec<GoldenInt> = solve_x1(&p).unwrap().collect();
        let (inside, edge) = scan(|x| geo.x1_side(x));
        check_stream(x1s.clone(), &inside, &edge, &format!("x1 m={m} θ={theta}"));
        for x1 in &x1s {
            let x0s: Vec<GoldenInt> = solve_x0(&p, x1).unwrap().collect();
            let (inside, edge) = scan(|x| geo.x0_side(x1, x));
            check_stream(x0s, &inside, &edge, &format!("x0 m={m} θ={theta} x1={x1:?}"));
        }
    }
}

#[test]
fn candidates_satisfy_norm_and_band() {
    let budget = synthesis_budget(0);
    let mut solved = 0;
    for (m, theta, eps) in [(3, PI / 8.0, 0.05), (4, 0.5, 0.02), (5, -0.3, 0.01), (6, 0.1, 0.005)] {
        let p = DiagonalProblem::new(&r(theta), &r(eps), m).unwrap();
        let geo = Geometry::new(theta, eps, m);
        let floor = geo.full.sqrt() * (1.0 - 2.0 * eps * eps);
        for x1 in solve_x1(&p).unwrap() {
            for x0 in solve_x0(&p, &x1).unwrap() {
                let Ok((x2, x3)) = solve_x23(m, &x0, &x1, &budget) else { continue };
                let q = GoldenQuat::new(x0.clone(), x1.clone(), x2, x3);
                assert_eq!(q.nrd(), GoldenInt::eta_pow(m));
                let (x, _) = emb(&x0);
                let (y, _) = emb(&x1);
                assert!(x * geo.cos + y * geo.sin >= floor - SLACK);
                solved += 1;
            }
        }
    }
    assert!(solved > 0);
}

#[test]
fn results_re_evaluate_within_eps() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let eps = r(1e-5);
    let mut thetas: Vec<f64> = (0..20).map(|_| rng.random_range(-PI..PI)).collect();
    thetas.extend([PI / 4.0, PI / 2.0, -PI / 2.0, PI, 0.0]);
    for theta in thetas {
        let s = synth_diagonal(&r(theta), &eps).unwrap();
        assert!(s.achieved < eps);
        assert_eq!(s.word.tau_count() as u32, s.m);
        let d = distance(&u_of_theta(&r(theta)), &evaluate_word(&s.word, P));
        assert!((d.to_f64() - s.achieved.to_f64()).abs() < 1e-20, "θ = {theta}");
        assert!(s.quat.projective_eq(&s.word.to_quat()));
    }
}

#[test]
fn quarter_pi_at_1e4() {
    let eps = r(1e-4);
    let theta = &Real::pi(P) / &Real::from_i64(4, P);
    let s = synth_diagonal(&theta, &eps).unwrap();
    assert!(s.achieved < eps);
    assert!(distance(&u_of_theta(&theta), &evaluate_word(&s.word, P)) < eps);
}

fn median_tau(e: i32, seed: u64) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = r(10f64.powi(-e));
    let mut taus: Vec<usize> = (0..50)
        .map(|_| synth_diagonal(&r(rng.random_range(-PI..PI)), &eps).unwrap().word.tau_count())
        .collect();
    taus.sort();
    let bound = 1.3 * (3.0 * e as f64 * 10f64.ln() / 59f64.ln()) + 5.0;
    (taus[taus.len() / 2], bound)
}

#[test]
fn tau_growth_1e3_1e6() {
    for e in [3, 6] {
        let (median, bound) = median_tau(e, 40 + e as u64);
        assert!(median as f64 <= bound, "ε = 1e-{e}: median {median} > {bound}");
    }
}

#[test]
fn tau_growth_1e10() {
    let (median, bound) = median_tau(10, 50);
    assert!(median as f64 <= bound, "median {median} > {bound}");
}
