use icosynth::real::{Cx, Real};
use icosynth::unitary::{distance, tune_diagonals, u_of_theta, ProjUnitary};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: usize = 192;

fn r(v: f64) -> Real {
    Real::from_f64(v, P)
}

fn random_unitary(rng: &mut ChaCha8Rng) -> ProjUnitary {
    let mut v = [0.0f64; 4];
    for x in &mut v {
        *x = rng.random_range(-1.0..1.0);
    }
    ProjUnitary::from_su2(Cx::new(r(v[0]), r(v[1])), Cx::new(r(v[2]), r(v[3])))
}

/// u(α, β) with |α| = m and the given phases.
fn with_modulus(m: f64, arg_a: f64, arg_b: f64) -> ProjUnitary {
    let a = Cx::expi(&r(arg_a)).scale(&r(m));
    let b = Cx::expi(&r(arg_b)).scale(&(&Real::one(P) - &r(m).square()).sqrt());
    ProjUnitary::from_su2(a, b)
}

#[test]
fn metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let tol = 2f64.powi(-(P as i32) / 2 + 16);
    for _ in 0..300 {
        let (a, b, c) = (random_unitary(&mut rng), random_unitary(&mut rng), random_unitary(&mut rng));
        assert!(distance(&a, &a).to_f64() < tol);
        assert!((distance(&a, &b).to_f64() - distance(&b, &a).to_f64()).abs() < tol);
        let (ab, bc, ac) = (distance(&a, &b).to_f64(), distance(&b, &c).to_f64(), distance(&a, &c).to_f64());
        assert!(ac <= ab + bc + tol);
        assert!(distance(&a, &a.mul(&u_of_theta(&Real::pi(P)))).to_f64() < tol, "global phase −1");
    }
}

#[test]
fn bi_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let (a, b, u) = (random_unitary(&mut rng), random_unitary(&mut rng), random_unitary(&mut rng));
        let d = distance(&a, &b).to_f64();
        assert!((distance(&u.mul(&a), &u.mul(&b)).to_f64() - d).abs() < 1e-25);
        assert!((distance(&a.mul(&u), &b.mul(&u)).to_f64() - d).abs() < 1e-25);
    }
}

#[test]
fn tuning_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (delta, eps0) = (r(0.5), r(0.05));
    let cap = (1.0 - 0.05f64 * 0.05).sqrt();
    let mut done = 0;
    while done < 1000 {
        let m1: f64 = rng.random_range(0.0..1.0);
        let gap: f64 = 10f64.powf(rng.random_range(-12.0..-0.4));
        let m2 = m1 + if rng.random_bool(0.5) { gap } else { -gap };
        if !(0.0..=1.0).contains(&m2) || m1.min(m2) >= cap {
            continue;
        }
        let mut phase = || rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let g1 = with_modulus(m1, phase(), phase());
        let g2 = with_modulus(m2, phase(), phase());
        let diff = (&g1.abs_alpha() - &g2.abs_alpha()).abs();
        let t = tune_diagonals(&g1, &g2, &delta, &eps0).unwrap();
        let approx = u_of_theta(&t.theta1).mul(&g2).mul(&u_of_theta(&t.theta2));
        let d = distance(&g1, &approx);
        assert!(d < &t.bound_constant * &diff, "|α| = {m1}, {m2}: d = {}", d.to_f64());
        done += 1;
    }
}
