//! Sums of two squares in Z[φ].

use crate::error::{Error, Result};
use crate::gauss::GaussGoldenInt;
use crate::golden::{associated_prime_big, factor, sqrt_mod, Budget, GoldenInt};

pub use crate::golden::associated_prime;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// s² + t² = x
    Plain,
    /// s² + t² = x·φ
    Phi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SotsResult {
    pub s: GoldenInt,
    pub t: GoldenInt,
    pub twist: Twist,
}

impl SotsResult {
    pub fn value(&self) -> GoldenInt {
        &self.s.square() + &self.t.square()
    }
}

/// Rescales `s + ti` by a power of φ so that s² + t² is `target` or `target·φ`.
fn fix_unit(g: GaussGoldenInt, target: &GoldenInt) -> Result<SotsResult> {
    let ratio = g.abs2().div_exact(target).ok_or(Error::NotRepresentable)?;
    let (sign, e) = ratio.unit_log().ok_or(Error::NotRepresentable)?;
    if sign < 0 {
        return Err(Error::NotRepresentable);
    }
    let twist = if e.rem_euclid(2) == 0 { Twist::Plain } else { Twist::Phi };
    let shift = GoldenInt::phi_pow(-e.div_euclid(2));
    let out = SotsResult { s: &g.re * &shift, t: &g.im * &shift, twist };
    let want = match twist {
        Twist::Plain => target.clone(),
        Twist::Phi => target * &GoldenInt::phi(),
    };
    assert_eq!(out.value(), want, "sum of two squares assembly");
    Ok(out)
}

fn is_associate(x: &GoldenInt, y: &GoldenInt) -> bool {
    x.div_exact(y).is_some_and(|u| u.is_unit())
}

/// Picks a representative of ±root mod p that is even and, if asked, prime to 5.
fn normalize_root(x: &BigUint, p: &BigUint, avoid_five: bool) -> BigUint {
    let five = BigUint::from(5u32);
    (0..10u32)
        .flat_map(|k| [x + p * k, (p - x) + p * k])
        .find(|r| r.is_even() && (!avoid_five || !(r % &five).is_zero()))
        .expect("p is prime to 10")
}

/// Writes the irreducible `u` (or `uφ`) as a sum of two squares.
pub fn sots_irreducible(u: &GoldenInt, budget: &Budget) -> Result<SotsResult> {
    let sqrt5 = GoldenInt::new(-1, 2);
    if is_associate(u, &GoldenInt::from_int(5)) {
        return fix_unit(GaussGoldenInt::real(sqrt5), u);
    }
    let p = associated_prime_big(u, budget)?;
    let gcd_with = |x: BigUint, im: GoldenInt| {
        let probe = GaussGoldenInt::new(GoldenInt::from_int(BigInt::from(x)), im);
        GaussGoldenInt::real(u.clone()).gcd(&probe)
    };
    let g = match (p.to_u64(), (&p % 20u32).to_u64().expect("small")) {
        (Some(2), _) => GaussGoldenInt::from_coords(1, 0, 1, 0),
        // √5·φ = 1 + φ²
        (Some(5), _) => GaussGoldenInt::from_coords(1, 0, 0, 1),
        (_, 1 | 5 | 9 | 13 | 17) => {
            let x = sqrt_mod(&(&p - 1u32), &p, budget)?;
            gcd_with(normalize_root(&x, &p, false), GoldenInt::one())?
        }
        (_, 3 | 7) => {
            let x = sqrt_mod(&((&p * 5u32 - 5u32) % &p), &p, budget)?;
            gcd_with(normalize_root(&x, &p, true), sqrt5)?
        }
        _ => return Err(Error::UnsupportedResidue { p }),
    };
    fix_unit(g, u)
}

/// Writes `x` or `xφ` as a sum of two squares when the factor criteria allow it.
pub fn sots(x: &GoldenInt, budget: &Budget) -> Result<SotsResult> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("sots of zero".into()));
    }
    // s² + t² is totally nonnegative, and so is (s² + t²)/φ up to a sign flip in one embedding.
    if x.sign_plus() < 0 {
        return Err(Error::NotRepresentable);
    }
    let f = factor(x, budget)?;
    let mut acc = GaussGoldenInt::one();
    for (pi, m) in &f.factors {
        let half = GaussGoldenInt::real(pi.pow(m / 2));
        acc = &acc * &half;
        if m % 2 == 1 {
            let pi = if pi.sign_plus() < 0 { -pi } else { pi.clone() };
            let r = match sots_irreducible(&pi, budget) {
                Ok(r) => r,
                Err(Error::UnsupportedResidue { .. }) => return Err(Error::NotRepresentable),
                Err(Error::TooLarge { p, threshold }) => {
                    return Err(Error::Abandoned(format!("prime {p} exceeds threshold {threshold}")))
                }
                Err(e) => return Err(e),
            };
            acc = &acc * &GaussGoldenInt::new(r.s, r.t);
        }
    }
    fix_unit(acc, x)
}

/// (s, t) with s² + t² = x exactly.
pub fn sots_exact(x: &GoldenInt, budget: &Budget) -> Result<(GoldenInt, GoldenInt)> {
    if x.is_zero() {
        return Ok((GoldenInt::zero(), GoldenInt::zero()));
    }
    if !x.is_totally_nonneg() {
        return Err(Error::SotsFail);
    }
    match sots(x, budget) {
        Ok(SotsResult { s, t, twist: Twist::Plain }) => Ok((s, t)),
        Ok(_) | Err(Error::NotRepresentable) => Err(Error::SotsFail),
        Err(e) => Err(e),
    }
}
