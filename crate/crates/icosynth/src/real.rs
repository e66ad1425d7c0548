//! Arbitrary-precision reals and complex numbers on top of `astro_float`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
    static PHI_CACHE: RefCell<HashMap<usize, Real>> = RefCell::new(HashMap::new());
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Default working precision when nothing else is specified.
pub const DEFAULT_PRECISION: usize = 256;

/// Working precision for a target accuracy `eps`.
pub fn precision_for_eps(eps: f64) -> usize {
    let bits = (3.0 * (1.0 / eps).log2()).ceil().max(0.0) as usize;
    bits + 96
}

/// A big-float real with a fixed binary precision.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real(BigFloat::new(prec))
    }

    pub fn one(prec: usize) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real(BigFloat::from_i64(v, prec))
    }

    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(v, prec))
    }

    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        if v.is_zero() {
            return Real::zero(prec);
        }
        let digits = v.magnitude().to_u64_digits();
        let len = digits.len();
        let want = prec.div_ceil(64).max(len);
        let mut words = vec![0u64; want - len];
        words.extend_from_slice(&digits);
        let sign = if v.is_negative() { Sign::Neg } else { Sign::Pos };
        Real(BigFloat::from_words(&words, sign, (64 * len) as i32))
    }

    pub fn from_rational(v: &BigRational, prec: usize) -> Self {
        Real::from_bigint(v.numer(), prec) / Real::from_bigint(v.denom(), prec)
    }

    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let t = s.trim();
        if !t.chars().all(|c| c.is_ascii_digit() || "+-.eE".contains(c)) || t.parse::<f64>().is_err() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec, RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        Ok(Real(v))
    }

    pub fn pi(prec: usize) -> Self {
        Real(with_consts(|cc| cc.pi(prec, RM)))
    }

    /// The golden ratio at precision `prec`.
    pub fn phi(prec: usize) -> Self {
        if let Some(v) = PHI_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
            return v;
        }
        let five = Real::from_i64(5, prec + 64);
        let mut v = (Real::one(prec + 64) + five.sqrt()) / Real::from_i64(2, prec + 64);
        v.0.set_precision(prec.max(64), RM).ok();
        PHI_CACHE.with(|c| c.borrow_mut().insert(prec, v.clone()));
        v
    }

    pub fn prec(&self) -> usize {
        // zeros produced by cancellation carry an empty mantissa
        self.0.mantissa_max_bit_len().unwrap_or(64).max(64)
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        v.set_precision(prec.max(64), RM).ok();
        Real(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Real(self.0.sqrt(self.prec(), RM))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// 2^k
    pub fn pow2(k: i64, prec: usize) -> Self {
        let mut v = BigFloat::from_words(&[1u64 << 63], Sign::Pos, (k + 1) as i32);
        v.set_precision(prec, RM).expect("precision");
        Real(v)
    }

    pub fn inv(&self) -> Self {
        Real::one(self.prec()) / self
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        Real(with_consts(|cc| self.0.sin(p, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        Real(with_consts(|cc| self.0.cos(p, RM, cc)))
    }

    pub fn atan(&self) -> Self {
        let p = self.prec();
        Real(with_consts(|cc| self.0.atan(p, RM, cc)))
    }

    /// Principal argument of `x + iy` in (−π, π].
    pub fn atan2(y: &Real, x: &Real) -> Self {
        let p = y.prec().max(x.prec());
        let pi = Real::pi(p);
        if x.is_zero() {
            return match y.signum() {
                0 => Real::zero(p),
                1 => pi / Real::from_i64(2, p),
                _ => -(pi / Real::from_i64(2, p)),
            };
        }
        if y.abs() > x.abs() {
            // atan2(y, x) = ±π/2 − atan(x/y), better conditioned here.
            let half_pi = pi / Real::from_i64(2, p);
            let a = (x / y).atan();
            return if y.is_positive() { half_pi - a } else { -half_pi - a };
        }
        let a = (y / x).atan();
        if x.is_positive() {
            a
        } else if y.is_negative() {
            a - pi
        } else {
            a + pi
        }
    }

    pub fn floor_int(&self) -> BigInt {
        integral_to_bigint(&self.0.floor())
    }

    pub fn ceil_int(&self) -> BigInt {
        integral_to_bigint(&self.0.ceil())
    }

    pub fn round_int(&self) -> BigInt {
        (self + &Real::from_f64(0.5, self.prec())).floor_int()
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.0.exponent().map(i64::from)
        }
    }

    /// log2(|x|) good to roughly 1e-15 relative, for any exponent range.
    pub fn log2_approx(&self) -> f64 {
        match self.0.as_raw_parts() {
            Some((words, _, _, e, _)) if !self.is_zero() => {
                let top = *words.last().unwrap() as f64 / 2f64.powi(64);
                top.log2() + e as f64
            }
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.0.as_raw_parts() {
            Some((words, _, sign, e, _)) if !self.is_zero() => {
                let n = words.len();
                let mut m = words[n - 1] as f64 / 2f64.powi(64);
                if n > 1 {
                    m += words[n - 2] as f64 / 2f64.powi(128);
                }
                let v = ldexp(m, e as i64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
            _ => 0.0,
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_sci_string(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self.to_f64())
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }
}

fn ldexp(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

fn integral_to_bigint(x: &BigFloat) -> BigInt {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    let mut mag = BigUint::zero();
    for w in words.iter().rev() {
        mag = (mag << 64u32) + BigUint::from(*w);
    }
    let shift = e as i64 - 64 * words.len() as i64;
    let mag = if shift >= 0 {
        mag << (shift as u64)
    } else {
        mag >> ((-shift) as u64)
    };
    let s = if sign == Sign::Neg { BigSign::Minus } else { BigSign::Plus };
    BigInt::from_biguint(s, mag)
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(BigFloat::neg(&self.0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.prec().max(rhs.prec());
                Real(self.0.$m(&rhs.0, p, RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

/// Complex number with `Real` parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

impl Cx {
    pub fn new(re: Real, im: Real) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Cx::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Cx::new(Real::one(prec), Real::zero(prec))
    }

    pub fn i(prec: usize) -> Self {
        Cx::new(Real::zero(prec), Real::one(prec))
    }

    pub fn real(re: Real) -> Self {
        let p = re.prec();
        Cx::new(re, Real::zero(p))
    }

    /// e^{iθ}
    pub fn expi(theta: &Real) -> Self {
        Cx::new(theta.cos(), theta.sin())
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, s: &Real) -> Self {
        Cx::new(&self.re * s, &self.im * s)
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Cx::new(&self.re / &n, -(&self.im / &n))
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        let p = self.prec();
        let two = Real::from_i64(2, p);
        let a = ((&r + &self.re) / &two).sqrt();
        let b = ((&r - &self.re) / &two).sqrt();
        if self.im.is_negative() {
            Cx::new(a, -b)
        } else {
            Cx::new(a, b)
        }
    }
}

impl Add<&Cx> for &Cx {
    type Output = Cx;
    fn add(self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&Cx> for &Cx {
    type Output = Cx;
    fn sub(self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&Cx> for &Cx {
    type Output = Cx;
    fn mul(self, o: &Cx) -> Cx {
        Cx::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div<&Cx> for &Cx {
    type Output = Cx;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Cx) -> Cx {
        self * &o.inv()
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-&self.re, -&self.im)
    }
}
