//! The ring Z[φ] of golden integers.

mod factor;
pub mod intfact;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

pub use factor::{associated_prime, associated_prime_big, eta_valuation, factor, split_prime, split_prime_big, GoldenFactorization, Split};
pub use intfact::{sqrt_mod, tonelli_shanks, Budget};

/// `a + bφ` with φ² = φ + 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    Plus,
    Minus,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldenInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        GoldenInt::default()
    }

    pub fn one() -> Self {
        GoldenInt::new(1, 0)
    }

    pub fn phi() -> Self {
        GoldenInt::new(0, 1)
    }

    /// η = 7 + 5φ, the prime of norm 59.
    pub fn eta() -> Self {
        GoldenInt::new(7, 5)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Galois conjugate, φ ↦ 1 − φ.
    pub fn conj(&self) -> Self {
        GoldenInt { a: &self.a + &self.b, b: -&self.b }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// φⁿ for any integer n.
    pub fn phi_pow(n: i64) -> Self {
        if n >= 0 {
            GoldenInt::phi().pow(n as u32)
        } else {
            GoldenInt::new(-1, 1).pow((-n) as u32)
        }
    }

    pub fn eta_pow(k: u32) -> Self {
        GoldenInt::eta().pow(k)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GoldenInt { a: &self.a * k, b: &self.b * k }
    }

    pub fn embed(&self, which: Embedding, prec: usize) -> Real {
        let phi = match which {
            Embedding::Plus => Real::phi(prec),
            Embedding::Minus => Real::one(prec) - Real::phi(prec),
        };
        self.embed_with(&phi)
    }

    /// `a + b·g` for a precomputed image `g` of φ.
    pub fn embed_with(&self, g: &Real) -> Real {
        let p = g.prec();
        Real::from_bigint(&self.a, p) + Real::from_bigint(&self.b, p) * g
    }

    pub fn to_f64(&self, which: Embedding) -> f64 {
        let g = match which {
            Embedding::Plus => (1.0 + 5f64.sqrt()) / 2.0,
            Embedding::Minus => (1.0 - 5f64.sqrt()) / 2.0,
        };
        let a = bigint_to_f64(&self.a);
        let b = bigint_to_f64(&self.b);
        a + b * g
    }

    /// log2 of |σ±(x)|, robust for large coefficients.
    pub fn log2_abs(&self, which: Embedding) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.a.bits().max(self.b.bits());
        if bits <= 20 {
            return self.to_f64(which).abs().log2();
        }
        self.embed(which, 2 * bits as usize + 64).abs().log2_approx()
    }

    /// Exact quotient `self / y`, or `None` when `y` does not divide.
    pub fn div_exact(&self, y: &GoldenInt) -> Option<GoldenInt> {
        if y.is_zero() {
            return None;
        }
        let n = y.norm();
        let t = self * &y.conj();
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(GoldenInt { a: qa, b: qb })
    }

    pub fn divides(&self, x: &GoldenInt) -> bool {
        x.div_exact(self).is_some()
    }

    /// Euclidean division with |N(r)| < |N(y)|.
    pub fn divmod(&self, y: &GoldenInt) -> Result<(GoldenInt, GoldenInt)> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm();
        let t = self * &y.conj();
        let q0 = GoldenInt { a: round_div(&t.a, &n), b: round_div(&t.b, &n) };
        let bound = n.abs();
        let r0 = self - &(&q0 * y);
        if r0.norm().abs() < bound {
            return Ok((q0, r0));
        }
        for da in -1..=1 {
            for db in -1..=1 {
                let q = &q0 + &GoldenInt::new(da, db);
                let r = self - &(&q * y);
                if r.norm().abs() < bound {
                    return Ok((q, r));
                }
            }
        }
        unreachable!("Z[φ] is norm-Euclidean; rounding neighborhood must succeed")
    }

    /// Greatest common divisor, canonicalized.
    pub fn gcd(&self, y: &GoldenInt) -> Result<GoldenInt> {
        if self.is_zero() && y.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), y.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.canonical())
    }

    /// Exponent n making φⁿ·x balanced between the two embeddings.
    pub fn balance_exponent(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let lp = self.log2_abs(Embedding::Plus);
        let lm = self.log2_abs(Embedding::Minus);
        ((lm - lp) / (2.0 * PHI_LOG2)).round() as i64
    }

    /// The associate with minimal |a| + |b|, then a > 0, then b ≥ 0.
    pub fn canonical(&self) -> GoldenInt {
        self.canonical_with_unit().0
    }

    /// Canonical associate `c` together with the unit `u` such that `c = u · self`.
    pub fn canonical_with_unit(&self) -> (GoldenInt, GoldenInt) {
        if self.is_zero() {
            return (GoldenInt::zero(), GoldenInt::one());
        }
        let n0 = self.balance_exponent();
        let mut best: Option<(GoldenInt, GoldenInt)> = None;
        for n in n0 - 3..=n0 + 3 {
            let u = GoldenInt::phi_pow(n);
            let c = &u * self;
            for (c, u) in [(c.clone(), u.clone()), (-&c, -&u)] {
                if best.as_ref().is_none_or(|(b, _)| canonical_key(&c) < canonical_key(b)) {
                    best = Some((c, u));
                }
            }
        }
        best.unwrap()
    }

    /// If `self` is a unit, returns (sign, n) with self = sign·φⁿ.
    pub fn unit_log(&self) -> Option<(i8, i64)> {
        if !self.is_unit() {
            return None;
        }
        let n = -self.balance_exponent();
        for m in n - 2..=n + 2 {
            let p = GoldenInt::phi_pow(m);
            if &p == self {
                return Some((1, m));
            }
            if -&p == *self {
                return Some((-1, m));
            }
        }
        None
    }

    /// Both embeddings nonnegative.
    pub fn is_totally_nonneg(&self) -> bool {
        self.sign_plus() >= 0 && self.sign_minus() >= 0
    }

    /// Exact sign of σ₊(x) = a + bφ.
    pub fn sign_plus(&self) -> i32 {
        sign_of_embedding(&self.a, &self.b)
    }

    /// Exact sign of σ₋(x) = a + b(1−φ).
    pub fn sign_minus(&self) -> i32 {
        let c = self.conj();
        sign_of_embedding(&c.a, &c.b)
    }
}

pub(crate) const PHI_LOG2: f64 = 0.694_241_913_630_617_3;

fn canonical_key(x: &GoldenInt) -> (BigInt, bool, bool, BigInt, BigInt) {
    (
        x.a.abs() + x.b.abs(),
        !x.a.is_positive(),
        x.b.is_negative(),
        x.a.clone(),
        x.b.clone(),
    )
}

/// Sign of a + bφ decided with integers only.
fn sign_of_embedding(a: &BigInt, b: &BigInt) -> i32 {
    // 2(a + bφ) = l + b√5 with l = 2a + b.
    let l = BigInt::from(2) * a + b;
    let (sl, sb) = (signum(&l), signum(b));
    if sl >= 0 && sb >= 0 {
        return (sl + sb).signum();
    }
    if sl <= 0 && sb <= 0 {
        return -1;
    }
    let l2 = &l * &l;
    let b2 = BigInt::from(5) * b * b;
    if l2 > b2 {
        sl
    } else {
        sb
    }
}

fn signum(n: &BigInt) -> i32 {
    match n.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

pub(crate) fn bigint_to_f64(n: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(n).unwrap_or(if n.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Nearest integer to n/d.
pub(crate) fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (n, d) = if d.is_negative() { (-n, -d) } else { (n.clone(), d.clone()) };
    (BigInt::from(2) * n + &d).div_floor(&(BigInt::from(2) * d))
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}φ", self.b),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}φ", self.a, -&self.b),
            _ => write!(f, "{}+{}φ", self.a, self.b),
        }
    }
}

impl From<i64> for GoldenInt {
    fn from(v: i64) -> Self {
        GoldenInt::from_int(v)
    }
}

impl Add<&GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, o: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub<&GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, o: &GoldenInt) -> GoldenInt {
        GoldenInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul<&GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    fn mul(self, o: &GoldenInt) -> GoldenInt {
        let bd = &self.b * &o.b;
        GoldenInt {
            a: &self.a * &o.a + &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -&self.a, b: -&self.b }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt { a: -self.a, b: -self.b }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldenInt> for GoldenInt {
            type Output = GoldenInt;
            fn $m(self, o: GoldenInt) -> GoldenInt {
                (&self).$m(&o)
            }
        }
        impl $tr<&GoldenInt> for GoldenInt {
            type Output = GoldenInt;
            fn $m(self, o: &GoldenInt) -> GoldenInt {
                (&self).$m(o)
            }
        }
        impl $tr<GoldenInt> for &GoldenInt {
            type Output = GoldenInt;
            fn $m(self, o: GoldenInt) -> GoldenInt {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
