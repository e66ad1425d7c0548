use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use super::intfact::{factor_integer, inv_mod, is_prime_big, sqrt_mod, tonelli_shanks, Budget};
use super::GoldenInt;
use crate::error::{Error, Result};

/// How a rational prime behaves in Z[φ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    /// p stays irreducible.
    Inert,
    /// p = ±π·π• (or π² for p = 5); holds π.
    Split(GoldenInt),
}

/// `unit · ∏ factorᵢ^multᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenFactorization {
    pub unit: GoldenInt,
    pub factors: Vec<(GoldenInt, u32)>,
}

impl GoldenFactorization {
    pub fn product(&self) -> GoldenInt {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, m)| &acc * &p.pow(*m))
    }
}

/// Splitting of the rational prime `p`.
pub fn split_prime(p: u64, budget: &Budget) -> Result<Split> {
    match p % 5 {
        0 => return Ok(Split::Split(GoldenInt::new(-1, 2))),
        2 | 3 => return Ok(Split::Inert),
        _ => {}
    }
    // x² − x − 1 ≡ 0 ⇔ (x − 1/2)² ≡ 1 + 1/4.
    let inv2 = inv_mod(2, p);
    let inv4 = inv_mod(4, p);
    let y = tonelli_shanks((1 + inv4) % p, p, budget)?;
    let x = (y + inv2) % p;
    let z = GoldenInt::new(BigInt::from(x), -1);
    let pi = GoldenInt::from_int(p).gcd(&z)?;
    assert_eq!(pi.norm().abs(), BigInt::from(p), "split of {p} has wrong norm");
    Ok(Split::Split(pi))
}

/// [`split_prime`] for primes of any size.
pub fn split_prime_big(p: &BigUint, budget: &Budget) -> Result<Split> {
    if let Some(q) = p.to_u64() {
        return split_prime(q, budget);
    }
    let five = BigUint::from(5u32);
    if matches!((p % &five).to_u64(), Some(2 | 3)) {
        return Ok(Split::Inert);
    }
    let two = BigUint::from(2u32);
    let inv2 = (p + 1u32) / &two;
    let inv4 = &inv2 * &inv2 % p;
    let y = sqrt_mod(&((inv4 + 1u32) % p), p, budget)?;
    let x = (y + inv2) % p;
    let pi = GoldenInt::from_int(BigInt::from(p.clone())).gcd(&GoldenInt::new(BigInt::from(x), -1))?;
    assert_eq!(pi.norm().abs(), BigInt::from(p.clone()), "split of {p} has wrong norm");
    Ok(Split::Split(pi))
}

/// Factorization into irreducibles, exact.
pub fn factor(x: &GoldenInt, budget: &Budget) -> Result<GoldenFactorization> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let n: BigUint = x.norm().abs().to_biguint().expect("absolute value");
    let primes = factor_integer(&n, budget)?;
    let mut rem = x.clone();
    let mut factors = Vec::new();
    for (p, _) in primes {
        let candidates = match p.to_u64() {
            Some(5) => vec![GoldenInt::new(-1, 2)],
            Some(q) => match split_prime(q, budget).map_err(abandon)? {
                Split::Inert => vec![GoldenInt::from_int(q)],
                Split::Split(pi) => {
                    let other = pi.conj().canonical();
                    vec![distinguished(pi), distinguished(other)]
                }
            },
            None => match split_prime_big(&p, budget).map_err(abandon)? {
                Split::Inert => vec![GoldenInt::from_int(BigInt::from(p))],
                Split::Split(pi) => {
                    let other = pi.conj().canonical();
                    vec![pi, other]
                }
            },
        };
        for pi in candidates {
            let mut m = 0;
            while let Some(q) = rem.div_exact(&pi) {
                rem = q;
                m += 1;
            }
            if m > 0 {
                factors.push((pi, m));
            }
        }
    }
    assert!(rem.is_unit(), "cofactor {rem:?} of {x:?} is not a unit");
    let f = GoldenFactorization { unit: rem, factors };
    debug_assert_eq!(&f.product(), x);
    Ok(f)
}

/// η is reported as 7 + 5φ rather than its balanced associate.
fn distinguished(pi: GoldenInt) -> GoldenInt {
    let eta = GoldenInt::eta();
    if pi.div_exact(&eta).is_some_and(|u| u.is_unit()) {
        eta
    } else {
        pi
    }
}

fn abandon(e: Error) -> Error {
    match e {
        Error::TooLarge { p, threshold } => {
            Error::Abandoned(format!("prime {p} exceeds the abandonment threshold {threshold}"))
        }
        e => e,
    }
}

/// Largest k with η^k | x.
pub fn eta_valuation(x: &GoldenInt) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let eta = GoldenInt::eta();
    let mut k = 0;
    let mut rem = x.clone();
    while let Some(q) = rem.div_exact(&eta) {
        rem = q;
        k += 1;
    }
    k
}

/// Least rational prime under the irreducible `u`.
pub fn associated_prime(u: &GoldenInt) -> Result<u64> {
    associated_prime_big(u, &Budget::default())?.to_u64().ok_or(Error::Reducible)
}

/// [`associated_prime`] without the 64-bit limit.
pub fn associated_prime_big(u: &GoldenInt, budget: &Budget) -> Result<BigUint> {
    let n = u.norm().abs().to_biguint().expect("absolute value");
    if n.to_u64().is_some() {
        return associated_prime_small(u).map(BigUint::from);
    }
    let mut rng = budget.rng_for(0xa550);
    if is_prime_big(&n, &mut rng) {
        return Ok(n);
    }
    let r = n.sqrt();
    let five = BigUint::from(5u32);
    if &r * &r == n
        && matches!((&r % &five).to_u64(), Some(2 | 3))
        && is_prime_big(&r, &mut rng)
        && u.div_exact(&GoldenInt::from_int(BigInt::from(r.clone()))).is_some_and(|c| c.is_unit())
    {
        return Ok(r);
    }
    Err(Error::Reducible)
}

fn associated_prime_small(u: &GoldenInt) -> Result<u64> {
    let n = u.norm().abs();
    let n = n.to_u64().ok_or(Error::Reducible)?;
    if n > 1 && super::intfact::is_prime_u64(n) {
        return Ok(n);
    }
    let r = (n as f64).sqrt().round() as u64;
    if r * r == n && matches!(r % 5, 2 | 3) && super::intfact::is_prime_u64(r) && u.div_exact(&GoldenInt::from_int(r)).is_some_and(|c| c.is_unit()) {
        return Ok(r);
    }
    Err(Error::Reducible)
}
