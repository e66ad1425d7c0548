use std::time::Instant;

use icosynth::diagonal::{synth_diagonal, synthesis_budget};
use icosynth::general::{synth_general, SynthConfig};
use icosynth::golden::{factor, Budget, GoldenInt};
use icosynth::icosian::{c60, evaluate_word, exact_synthesize, GateWord};
use icosynth::lattice2d::GoldenBox;
use icosynth::real::{Cx, Real};
use icosynth::sots::sots_exact;
use icosynth::unitary::{distance, named_gate, u_of_theta, ProjUnitary};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CheckOutcome;

type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

pub(crate) fn run_all() -> Vec<CheckOutcome> {
    let checks: [(&str, Check); 8] = [
        ("c60-closure", c60_closure),
        ("exact-round-trip", exact_round_trip),
        ("golden-factor", golden_factor),
        ("sots", sots_check),
        ("golden-box", golden_box),
        ("metric", metric),
        ("norm-euclidean", norm_euclidean),
        ("synthesis", synthesis),
    ];
    checks
        .iter()
        .map(|(name, f)| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let start = Instant::now();
            let res = f(&mut rng);
            CheckOutcome {
                name: name.to_string(),
                passed: res.is_ok(),
                detail: res.unwrap_or_else(|e| e),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c60_closure(_: &mut ChaCha8Rng) -> Result<String, String> {
    let t = c60();
    for i in 0..t.len() {
        for j in 0..t.len() {
            let p = (t.elem(i) * t.elem(j)).primitive();
            ensure(t.find(&p).is_some(), || format!("product {i}·{j} leaves the group"))?;
        }
    }
    Ok(format!("{} elements", t.len()))
}

fn exact_round_trip(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let t = c60();
    for n in 0..50 {
        let k = rng.random_range(0..=20);
        let segments = (0..=k)
            .map(|i| {
                let lo = if i == 0 || i == k { 0 } else { 1 };
                t.word(rng.random_range(lo..t.len())).to_vec()
            })
            .collect();
        let w = GateWord::new(segments).map_err(|e| e.to_string())?;
        let back = exact_synthesize(&w.to_quat()).map_err(|e| format!("word {n}: {e}"))?;
        ensure(back.tau_count() == k && back.to_quat().projective_eq(&w.to_quat()), || format!("word {n} ({w}) came back as {back}"))?;
    }
    Ok("50 words".into())
}

fn golden_factor(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let budget = Budget::default();
    for _ in 0..100 {
        let x = GoldenInt::new(rng.random_range(-500i64..500), rng.random_range(-500i64..500));
        if x.is_zero() {
            continue;
        }
        let f = factor(&x, &budget).map_err(|e| format!("{x:?}: {e}"))?;
        ensure(f.product() == x, || format!("factorization of {x:?} does not multiply back"))?;
    }
    Ok("100 elements".into())
}

fn sots_check(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let budget = synthesis_budget(0);
    let mut found = 0;
    for _ in 0..200 {
        let (a, b) = (GoldenInt::new(rng.random_range(-30i64..30), rng.random_range(-30i64..30)), GoldenInt::new(rng.random_range(-30i64..30), rng.random_range(-30i64..30)));
        let x = &a.square() + &b.square();
        match sots_exact(&x, &budget) {
            Ok((c, d)) => {
                ensure(&c.square() + &d.square() == x, || format!("bad decomposition of {x:?}"))?;
                found += 1;
            }
            Err(e) => return Err(format!("{x:?} = a² + b² but sots failed: {e}")),
        }
    }
    Ok(format!("{found} sums of squares recovered"))
}

fn golden_box(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let prec = 128;
    for _ in 0..50 {
        let p0 = rng.random_range(-40.0..40.0);
        let m0 = rng.random_range(-40.0..40.0);
        let (p1, m1) = (p0 + rng.random_range(0.0..20.0), m0 + rng.random_range(0.0..20.0));
        let bx = GoldenBox { plus: (Real::from_f64(p0, prec), Real::from_f64(p1, prec)), minus: (Real::from_f64(m0, prec), Real::from_f64(m1, prec)) };
        let got = bx.points().map_err(|e| e.to_string())?.count();
        let mut want = 0;
        for c in -200i64..=200 {
            for d in -100i64..=100 {
                let (p, m) = (c as f64 + d as f64 * phi, c as f64 + d as f64 * (1.0 - phi));
                if (p0..=p1).contains(&p) && (m0..=m1).contains(&m) {
                    want += 1;
                }
            }
        }
        ensure(got == want, || format!("box {p0}..{p1} × {m0}..{m1}: {got} points, scan found {want}"))?;
    }
    Ok("50 boxes".into())
}

fn random_unitary(rng: &mut ChaCha8Rng, prec: usize) -> ProjUnitary {
    let mut v = || Real::from_f64(rng.random_range(-1.0..1.0), prec);
    ProjUnitary::from_su2(Cx::new(v(), v()), Cx::new(v(), v()))
}

fn metric(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..100 {
        let (a, b, c) = (random_unitary(rng, 128), random_unitary(rng, 128), random_unitary(rng, 128));
        let (ab, bc, ac) = (distance(&a, &b).to_f64(), distance(&b, &c).to_f64(), distance(&a, &c).to_f64());
        ensure(ac <= ab + bc + 1e-12, || format!("triangle inequality fails: {ac} > {ab} + {bc}"))?;
        ensure((distance(&c.mul(&a), &c.mul(&b)).to_f64() - ab).abs() < 1e-12, || "left invariance fails".into())?;
    }
    Ok("100 triples".into())
}

fn norm_euclidean(_: &mut ChaCha8Rng) -> Result<String, String> {
    let bad = icosynth::gauss::verify_norm_euclidean(6, &BigRational::new(BigInt::from(1), BigInt::from(12)));
    ensure(bad.is_empty(), || format!("{} uncovered grid points", bad.len()))?;
    Ok("2401 grid points covered".into())
}

fn synthesis(_: &mut ChaCha8Rng) -> Result<String, String> {
    let prec = 160;
    let eps = Real::from_f64(1e-4, prec);
    let theta = &Real::pi(prec) / &Real::from_i64(8, prec);
    let d = synth_diagonal(&theta, &eps).map_err(|e| e.to_string())?;
    let back = distance(&u_of_theta(&theta), &evaluate_word(&d.word, prec));
    ensure(back < eps, || format!("T word re-evaluates at {}", back.to_f64()))?;
    let h = named_gate("H", prec).map_err(|e| e.to_string())?;
    let rep = synth_general(&h, &SynthConfig::new(1e-4)).map_err(|e| e.to_string())?;
    let limit = (&rep.bound_constant + &Real::from_i64(2, prec)) * Real::from_f64(1e-4, prec);
    ensure(distance(&h, &evaluate_word(&rep.word, prec)) < limit, || "H word misses the bound".into())?;
    Ok(format!("T at 1e-4: tau {}; H at 1e-4: tau {}", d.word.tau_count(), rep.word.tau_count()))
}
