use icosynth::gauss::GaussGoldenInt;
use icosynth::golden::{factor, Budget, Embedding, GoldenInt};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn golden() -> impl Strategy<Value = GoldenInt> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| GoldenInt::new(a, b))
}

fn gauss() -> impl Strategy<Value = GaussGoldenInt> {
    (-300i64..300, -300i64..300, -300i64..300, -300i64..300).prop_map(|(w, x, y, z)| GaussGoldenInt::from_coords(w, x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn golden_norm_is_multiplicative(x in golden(), y in golden()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn golden_divmod_contract(x in golden(), y in golden()) {
        prop_assume!(!y.is_zero());
        let (q, r) = x.divmod(&y).unwrap();
        prop_assert_eq!(&(&q * &y) + &r, x);
        prop_assert!(r.norm().abs() < y.norm().abs());
    }

    #[test]
    fn quartic_norm_is_multiplicative(x in gauss(), y in gauss()) {
        prop_assert_eq!((&x * &y).quartic_norm(), x.quartic_norm() * y.quartic_norm());
    }

    #[test]
    fn gauss_divmod_contract(x in gauss(), y in gauss()) {
        prop_assume!(!y.is_zero());
        let (q, r) = x.divmod(&y).unwrap();
        prop_assert_eq!(&(&q * &y) + &r, x);
        prop_assert!(r.quartic_norm() < y.quartic_norm());
    }
}

#[test]
fn factor_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let budget = Budget::default();
    let mut done = 0;
    while done < 1000 {
        let x = GoldenInt::new(rng.random_range(-1200i64..1200), rng.random_range(-1200i64..1200));
        if x.is_zero() || x.norm().abs() > BigInt::from(1_000_000) {
            continue;
        }
        let f = factor(&x, &budget).unwrap();
        assert!(f.unit.is_unit());
        assert_eq!(f.product(), x);
        for (p, _) in &f.factors {
            assert!(!p.is_unit());
            assert!(factor(p, &budget).unwrap().factors.iter().map(|(_, m)| m).sum::<u32>() == 1, "{p:?} is not irreducible");
        }
        done += 1;
    }
}

/// Every a + bφ with both embeddings in [−r, r].
fn golden_ball(r: f64) -> Vec<GoldenInt> {
    let n = (2.0 * r) as i64 + 2;
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            let x = GoldenInt::new(a, b);
            if x.to_f64(Embedding::Plus).abs() <= r && x.to_f64(Embedding::Minus).abs() <= r {
                out.push(x);
            }
        }
    }
    out
}

#[test]
fn golden_gcd_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let divisors = golden_ball(150.0);
    let mut done = 0;
    while done < 60 {
        let common = GoldenInt::new(rng.random_range(-12i64..12), rng.random_range(-12i64..12));
        let x = &common * &GoldenInt::new(rng.random_range(-12i64..12), rng.random_range(-12i64..12));
        let y = &common * &GoldenInt::new(rng.random_range(-12i64..12), rng.random_range(-12i64..12));
        let cap = BigInt::from(10_000);
        if x.is_zero() || y.is_zero() || x.norm().abs() > cap || y.norm().abs() > cap {
            continue;
        }
        let g = x.gcd(&y).unwrap();
        assert!(g.divides(&x) && g.divides(&y));
        let best = divisors
            .iter()
            .filter(|d| !d.is_zero() && d.divides(&x) && d.divides(&y))
            .map(|d| d.norm().abs())
            .max()
            .unwrap();
        assert_eq!(g.norm().abs(), best, "gcd({x:?}, {y:?})");
        done += 1;
    }
}

#[test]
fn gauss_gcd_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let parts = golden_ball(13.0);
    let divisors: Vec<GaussGoldenInt> =
        parts.iter().flat_map(|re| parts.iter().map(move |im| GaussGoldenInt::new(re.clone(), im.clone()))).filter(|d| !d.is_zero()).collect();
    let mut rnd = |n: i64| GaussGoldenInt::from_coords(rng.random_range(-n..=n), rng.random_range(-n..=n), rng.random_range(-n..=n), rng.random_range(-n..=n));
    let mut done = 0;
    while done < 25 {
        let common = rnd(2);
        let x = &common * &rnd(2);
        let y = &common * &rnd(2);
        let cap = BigInt::from(10_000);
        if x.is_zero() || y.is_zero() || x.quartic_norm() > cap || y.quartic_norm() > cap {
            continue;
        }
        let g = x.gcd(&y).unwrap();
        assert!(x.div_exact(&g).is_some() && y.div_exact(&g).is_some());
        let best = divisors
            .iter()
            .filter(|d| x.div_exact(d).is_some() && y.div_exact(d).is_some())
            .map(|d| d.quartic_norm())
            .max()
            .unwrap();
        assert_eq!(g.quartic_norm(), best, "gcd({x:?}, {y:?})");
        done += 1;
    }
}
