use std::collections::HashSet;

use icosynth::golden::intfact::primes_below;
use icosynth::golden::{split_prime, Budget, Embedding, GoldenInt, Split};
use icosynth::sots::{sots, sots_exact, sots_irreducible, Twist};
use icosynth::Error;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn emb(x: &GoldenInt) -> (f64, f64) {
    (x.to_f64(Embedding::Plus), x.to_f64(Embedding::Minus))
}

/// All a + bφ with both embeddings in [lo, hi].
fn box_elements(lo: f64, hi: f64) -> Vec<GoldenInt> {
    let span = ((hi - lo).abs().max(hi.abs()).max(lo.abs()) * 2.0) as i64 + 2;
    let mut out = Vec::new();
    for a in -span..=span {
        for b in -span..=span {
            let x = GoldenInt::new(a, b);
            let (p, m) = emb(&x);
            if p >= lo - 1e-9 && p <= hi + 1e-9 && m >= lo - 1e-9 && m <= hi + 1e-9 {
                out.push(x);
            }
        }
    }
    out
}

fn sums_of_two_squares(limit: f64) -> HashSet<GoldenInt> {
    let r = limit.sqrt();
    let roots = box_elements(-r, r);
    let mut set = HashSet::new();
    for s in &roots {
        for t in &roots {
            let v = &s.square() + &t.square();
            let (p, m) = emb(&v);
            if p <= limit + 1e-9 && m <= limit + 1e-9 {
                set.insert(v);
            }
        }
    }
    set
}

#[test]
fn sots_exact_matches_brute_force_on_embedding_box() {
    let limit = 40.0;
    let reps = sums_of_two_squares(limit);
    let budget = Budget::default();
    let mut checked = 0;
    for x in box_elements(-limit, limit) {
        if x.is_zero() {
            continue;
        }
        let expect = reps.contains(&x);
        match sots_exact(&x, &budget) {
            Ok((s, t)) => {
                assert!(expect, "{x:?} decomposed but brute force disagrees");
                assert_eq!(&s.square() + &t.square(), x);
            }
            Err(Error::SotsFail) => assert!(!expect, "{x:?} is a sum of two squares"),
            Err(e) => panic!("{x:?}: {e}"),
        }
        // Never both x and xφ.
        let xphi = &x * &GoldenInt::phi();
        let (p, m) = emb(&xphi);
        if p <= limit && m.abs() <= limit {
            assert!(!(expect && reps.contains(&xphi)), "{x:?} and {x:?}·φ both representable");
        }
        checked += 1;
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn twist_reports_phi_multiple() {
    let budget = Budget::default();
    for x in box_elements(-30.0, 30.0) {
        if x.is_zero() {
            continue;
        }
        if let Ok(r) = sots(&x, &budget) {
            let want = match r.twist {
                Twist::Plain => x.clone(),
                Twist::Phi => &x * &GoldenInt::phi(),
            };
            assert_eq!(r.value(), want);
        }
    }
}

#[test]
fn three_quarters_of_primes_decompose() {
    let budget = Budget::default();
    let primes = primes_below(10_000);
    let mut ok = 0;
    for &p in &primes {
        let pi = match split_prime(p, &budget).unwrap() {
            Split::Inert => GoldenInt::from_int(p),
            Split::Split(pi) if pi.sign_plus() < 0 => -&pi,
            Split::Split(pi) => pi,
        };
        let good = p == 2 || p == 5 || [1, 3, 7, 9, 13, 17].contains(&(p % 20));
        match sots_irreducible(&pi, &budget) {
            Ok(r) => {
                assert!(good, "{p}");
                assert_eq!(&r.s.square() + &r.t.square(), match r.twist {
                    Twist::Plain => pi.clone(),
                    Twist::Phi => &pi * &GoldenInt::phi(),
                });
                ok += 1;
            }
            Err(Error::UnsupportedResidue { .. }) => assert!(!good, "{p}"),
            Err(e) => panic!("{p}: {e}"),
        }
    }
    let frac = ok as f64 / primes.len() as f64;
    assert!((frac - 0.75).abs() < 0.02, "{frac}");
}

/// t with t² = y, if one exists.
fn golden_sqrt(y: &GoldenInt) -> Option<GoldenInt> {
    let (p, m) = emb(y);
    if p < -1e-9 || m < -1e-9 {
        return None;
    }
    let (rp, rm) = (p.max(0.0).sqrt(), m.max(0.0).sqrt());
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for sm in [rm, -rm] {
        let b = ((rp - sm) / 5f64.sqrt()).round();
        let a = (rp - b * phi).round();
        let t = GoldenInt::new(a as i64, b as i64);
        if &t.square() == y {
            return Some(t);
        }
    }
    None
}

#[test]
fn sots_exact_matches_brute_force_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let budget = Budget::default();
    let mut done = 0;
    while done < 400 {
        let x = GoldenInt::new(rng.random_range(-300i64..300), rng.random_range(-300i64..300));
        if x.is_zero() || x.norm().abs() > BigInt::from(10_000) {
            continue;
        }
        let (p, m) = emb(&x);
        let mut expect = false;
        if p >= 0.0 && m >= 0.0 {
            let (rp, rm) = (p.sqrt(), m.sqrt());
            'scan: for s in box_elements(-(rp.max(rm)), rp.max(rm)) {
                let (sp, sm) = emb(&s);
                if sp.abs() <= rp + 1e-9 && sm.abs() <= rm + 1e-9 && golden_sqrt(&(&x - &s.square())).is_some() {
                    expect = true;
                    break 'scan;
                }
            }
        }
        match sots_exact(&x, &budget) {
            Ok((s, t)) => {
                assert!(expect, "{x:?}");
                assert_eq!(&s.square() + &t.square(), x);
            }
            Err(Error::SotsFail) => assert!(!expect, "{x:?} is a sum of two squares"),
            Err(e) => panic!("{x:?}: {e}"),
        }
        done += 1;
    }
}
