//! The ring Z[i,φ] of integers of Q(i,φ) and its norm-Euclidean structure.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::golden::{round_div, GoldenInt};

/// `re + im·i` with golden-integer parts, i.e. `w + xφ + yi + ziφ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussGoldenInt {
    pub re: GoldenInt,
    pub im: GoldenInt,
}

impl GaussGoldenInt {
    pub fn new(re: GoldenInt, im: GoldenInt) -> Self {
        GaussGoldenInt { re, im }
    }

    pub fn from_coords(w: impl Into<BigInt>, x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        GaussGoldenInt::new(GoldenInt::new(w, x), GoldenInt::new(y, z))
    }

    pub fn coords(&self) -> [BigInt; 4] {
        [self.re.a.clone(), self.re.b.clone(), self.im.a.clone(), self.im.b.clone()]
    }

    pub fn zero() -> Self {
        GaussGoldenInt::default()
    }

    pub fn one() -> Self {
        GaussGoldenInt::new(GoldenInt::one(), GoldenInt::zero())
    }

    pub fn i() -> Self {
        GaussGoldenInt::new(GoldenInt::zero(), GoldenInt::one())
    }

    pub fn real(x: GoldenInt) -> Self {
        GaussGoldenInt::new(x, GoldenInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussGoldenInt::new(self.re.clone(), -&self.im)
    }

    /// Galois conjugate φ ↦ 1 − φ on both parts.
    pub fn golden_conj(&self) -> Self {
        GaussGoldenInt::new(self.re.conj(), self.im.conj())
    }

    /// |α|² = re² + im², an element of Z[φ].
    pub fn abs2(&self) -> GoldenInt {
        &self.re.square() + &self.im.square()
    }

    /// The absolute norm N(α) to Q, as the explicit quartic in the coordinates.
    pub fn quartic_norm(&self) -> BigInt {
        let [w, x, y, z] = self.coords();
        quartic(&w, &x, &y, &z)
    }

    pub fn is_unit(&self) -> bool {
        self.quartic_norm().is_one()
    }

    pub fn scale(&self, k: &GoldenInt) -> Self {
        GaussGoldenInt::new(&self.re * k, &self.im * k)
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &GaussGoldenInt) -> Option<GaussGoldenInt> {
        if d.is_zero() {
            return None;
        }
        let (num, den) = self.quotient_parts(d);
        let mut out = Vec::with_capacity(4);
        for c in num.coords() {
            let (q, r) = num_integer::Integer::div_rem(&c, &den);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        let [w, x, y, z]: [BigInt; 4] = out.try_into().unwrap();
        Some(GaussGoldenInt::from_coords(w, x, y, z))
    }

    /// self/d = num/den with num ∈ Z[i,φ] and den ∈ Z.
    fn quotient_parts(&self, d: &GaussGoldenInt) -> (GaussGoldenInt, BigInt) {
        let n = d.abs2();
        let num = (self * &d.conj()).scale(&n.conj());
        (num, n.norm())
    }

    /// Euclidean division: self = q·d + r with N(r) < N(d).
    pub fn divmod(&self, d: &GaussGoldenInt) -> Result<(GaussGoldenInt, GaussGoldenInt)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let bound = d.quartic_norm();
        let (num, den) = self.quotient_parts(d);
        let nc = num.coords();
        let rounded: Vec<BigInt> = nc.iter().map(|c| round_div(c, &den)).collect();
        let try_q = |q: &[BigInt]| {
            let q = GaussGoldenInt::from_coords(q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone());
            let r = self - &(&q * d);
            (r.quartic_norm() < bound).then_some((q, r))
        };
        if let Some(hit) = try_q(&rounded) {
            return Ok(hit);
        }
        // Shift one coordinate of the quotient toward the residual's side.
        for k in 0..4 {
            let frac = &nc[k] - &rounded[k] * &den;
            let s = if frac.is_negative() { -1 } else { 1 };
            let mut q = rounded.clone();
            q[k] += s * den.signum();
            if let Some(hit) = try_q(&q) {
                return Ok(hit);
            }
        }
        for idx in 0..81 {
            let mut q = rounded.clone();
            let mut t = idx;
            for c in q.iter_mut() {
                *c += BigInt::from(t % 3) - 1;
                t /= 3;
            }
            if let Some(hit) = try_q(&q) {
                return Ok(hit);
            }
        }
        unreachable!("Z[i,φ] is norm-Euclidean")
    }

    /// Greatest common divisor, canonicalized.
    pub fn gcd(&self, other: &GaussGoldenInt) -> Result<GaussGoldenInt> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.canonical())
    }

    /// Deterministic associate: smallest max-coordinate, then smallest
    /// coordinate sum, then lexicographically largest coordinates.
    pub fn canonical(&self) -> GaussGoldenInt {
        if self.is_zero() {
            return GaussGoldenInt::zero();
        }
        // |φⁿα|² = φ²ⁿ|α|², so balance |α|² and halve.
        let n0 = (self.abs2().balance_exponent() as f64 / 2.0).round() as i64;
        let units = [
            GaussGoldenInt::one(),
            GaussGoldenInt::i(),
            -&GaussGoldenInt::one(),
            -&GaussGoldenInt::i(),
        ];
        let mut best: Option<(CanonKey, GaussGoldenInt)> = None;
        for n in n0 - 2..=n0 + 2 {
            let scaled = self.scale(&GoldenInt::phi_pow(n));
            for u in &units {
                let c = &scaled * u;
                let key = canon_key(&c);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, c));
                }
            }
        }
        best.unwrap().1
    }
}

type CanonKey = (BigInt, BigInt, [BigInt; 4]);

fn canon_key(x: &GaussGoldenInt) -> CanonKey {
    let c = x.coords();
    let max = c.iter().map(|v| v.abs()).max().unwrap();
    let sum: BigInt = c.iter().map(|v| v.abs()).sum();
    (max, sum, c.map(|v| -v))
}

fn quartic(w: &BigInt, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
    let t = |c: i64, e: [u32; 4]| -> BigInt {
        BigInt::from(c) * w.pow(e[0]) * x.pow(e[1]) * y.pow(e[2]) * z.pow(e[3])
    };
    t(1, [4, 0, 0, 0]) + t(2, [3, 1, 0, 0]) + t(-1, [2, 2, 0, 0]) + t(-2, [1, 3, 0, 0]) + t(1, [0, 4, 0, 0])
        + t(2, [2, 0, 2, 0]) + t(2, [1, 1, 2, 0]) + t(3, [0, 2, 2, 0]) + t(1, [0, 0, 4, 0])
        + t(2, [2, 0, 1, 1]) + t(-8, [1, 1, 1, 1]) + t(-2, [0, 2, 1, 1]) + t(2, [0, 0, 3, 1])
        + t(3, [2, 0, 0, 2]) + t(-2, [1, 1, 0, 2]) + t(2, [0, 2, 0, 2]) + t(-1, [0, 0, 2, 2])
        + t(-2, [0, 0, 1, 3]) + t(1, [0, 0, 0, 4])
}

/// Upper bound on N(α + β) over all β with every coordinate at most `r` in absolute value.
pub fn norm_upper_bound<T: Signed + Clone + FromPrimitive>(alpha: &[T; 4], r: &T) -> T {
    let k = |v: i64| T::from_i64(v).unwrap();
    let [w, x, y, z] = alpha.clone();
    let w2 = w.clone() * w.clone();
    let x2 = x.clone() * x.clone();
    let y2 = y.clone() * y.clone();
    let z2 = z.clone() * z.clone();
    let (wx, wy, wz) = (w.clone() * x.clone(), w.clone() * y.clone(), w.clone() * z.clone());
    let (xy, xz, yz) = (x.clone() * y.clone(), x.clone() * z.clone(), y.clone() * z.clone());

    let p0 = (w2.clone() * w2.clone() + k(2) * w2.clone() * wx.clone() - w2.clone() * x2.clone()
        - k(2) * wx.clone() * x2.clone()
        + x2.clone() * x2.clone()
        + k(2) * w2.clone() * y2.clone()
        + k(2) * wx.clone() * y2.clone()
        + k(3) * x2.clone() * y2.clone()
        + y2.clone() * y2.clone()
        + k(2) * w2.clone() * yz.clone()
        - k(8) * wx.clone() * yz.clone()
        - k(2) * x2.clone() * yz.clone()
        + k(2) * y2.clone() * yz.clone()
        + k(3) * w2.clone() * z2.clone()
        - y2.clone() * z2.clone()
        - k(2) * yz.clone() * z2.clone()
        + z2.clone() * z2.clone()
        - k(2) * wx.clone() * z2.clone()
        + k(2) * x2.clone() * z2.clone())
    .abs();

    let p1 = k(2)
        * r.clone()
        * ((k(2) * w2.clone() * w.clone() + k(3) * w2.clone() * x.clone() - w.clone() * x2.clone()
            - x2.clone() * x.clone()
            + k(2) * w.clone() * y2.clone()
            + x.clone() * y2.clone()
            + k(2) * wy.clone() * z.clone()
            + k(3) * w.clone() * z2.clone()
            - x.clone() * z2.clone()
            - k(4) * xy.clone() * z.clone())
        .abs()
            + (w2.clone() * w.clone() - w2.clone() * x.clone() - k(3) * w.clone() * x2.clone()
                + k(2) * x2.clone() * x.clone()
                + w.clone() * y2.clone()
                + k(3) * x.clone() * y2.clone()
                - k(4) * wy.clone() * z.clone()
                - k(2) * xy.clone() * z.clone()
                - w.clone() * z2.clone()
                + k(2) * x.clone() * z2.clone())
            .abs()
            + (k(2) * w2.clone() * y.clone() + k(2) * wx.clone() * y.clone() + k(3) * x2.clone() * y.clone()
                + k(2) * y2.clone() * y.clone()
                + w2.clone() * z.clone()
                - k(4) * wx.clone() * z.clone()
                - x2.clone() * z.clone()
                + k(3) * y2.clone() * z.clone()
                - y.clone() * z2.clone()
                - z2.clone() * z.clone())
            .abs()
            + (w2.clone() * y.clone() - k(4) * wx.clone() * y.clone() - x2.clone() * y.clone()
                + y2.clone() * y.clone()
                + k(3) * w2.clone() * z.clone()
                - k(2) * wx.clone() * z.clone()
                + k(2) * x2.clone() * z.clone()
                - y2.clone() * z.clone()
                - k(3) * y.clone() * z2.clone()
                + k(2) * z2.clone() * z.clone())
            .abs());

    let p2 = r.clone()
        * r.clone()
        * ((k(6) * w2.clone() + k(6) * wx.clone() - x2.clone() + k(2) * y2.clone() + k(2) * yz.clone()
            + k(3) * z2.clone())
        .abs()
            + (k(6) * w2.clone() - k(4) * wx.clone() - k(6) * x2.clone() + k(2) * y2.clone()
                - k(8) * yz.clone()
                - k(2) * z2.clone())
            .abs()
            + (-w2.clone() - k(6) * wx.clone() + k(6) * x2.clone() + k(3) * y2.clone() - k(2) * yz.clone()
                + k(2) * z2.clone())
            .abs()
            + (k(2) * w2.clone() + k(2) * wx.clone() + k(3) * x2.clone() + k(6) * y2.clone()
                + k(6) * yz.clone()
                - z2.clone())
            .abs()
            + (k(2) * w2.clone() - k(8) * wx.clone() - k(2) * x2.clone() + k(6) * y2.clone()
                - k(4) * yz.clone()
                - k(6) * z2.clone())
            .abs()
            + (k(3) * w2.clone() - k(2) * wx.clone() + k(2) * x2.clone() - k(6) * yz.clone() + k(6) * z2.clone()
                - y2.clone())
            .abs()
            + (k(8) * wy.clone() + k(4) * xy.clone() + k(4) * wz.clone() - k(8) * xz.clone()).abs()
            + (k(4) * wy.clone() + k(12) * xy.clone() - k(8) * wz.clone() - k(4) * xz.clone()).abs()
            + (k(4) * wy.clone() - k(8) * xy.clone() + k(12) * wz.clone() - k(4) * xz.clone()).abs()
            + (-k(8) * wy.clone() - k(4) * xy.clone() - k(4) * wz.clone() + k(8) * xz.clone()).abs());

    let p3 = k(2)
        * r.clone()
        * r.clone()
        * r.clone()
        * ((w.clone() + x.clone()).abs()
            + k(2) * (k(3) * w.clone() - x.clone()).abs()
            + k(2) * (w.clone() + k(3) * x.clone()).abs()
            + k(2) * (k(2) * x.clone() - w.clone()).abs()
            + k(3) * (k(2) * w.clone() + x.clone()).abs()
            + k(2) * (w.clone() - k(2) * x.clone()).abs()
            + k(2) * (k(2) * z.clone() - y.clone()).abs()
            + k(2) * (y.clone() + k(3) * z.clone()).abs()
            + k(2) * (y.clone() - k(2) * z.clone()).abs()
            + k(2) * (k(3) * y.clone() - z.clone()).abs()
            + k(4) * (k(2) * y.clone() + z.clone()).abs());

    let r2 = r.clone() * r.clone();
    let p4 = k(40) * r2.clone() * r2;
    p0 + p1 + p2 + p3 + p4
}

/// Grid points of [−1/2, 1/2]⁴ with spacing 1/grid_n at which the perturbation
/// bound fails to certify N < 1, for the point and its four single-coordinate
/// shifts toward zero. Exact rational arithmetic throughout.
pub fn verify_norm_euclidean(grid_n: u32, r: &BigRational) -> Vec<[BigRational; 4]> {
    assert!(grid_n >= 1);
    let one = BigRational::one();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let axis: Vec<BigRational> = (0..=grid_n)
        .map(|k| BigRational::new(BigInt::from(k), BigInt::from(grid_n)) - &half)
        .collect();
    let sgn = |v: &BigRational| -> BigRational {
        if v.is_zero() {
            BigRational::zero()
        } else {
            v.signum()
        }
    };
    let mut bad = Vec::new();
    for a in &axis {
        for b in &axis {
            for c in &axis {
                for d in &axis {
                    let base = [a.clone(), b.clone(), c.clone(), d.clone()];
                    if norm_upper_bound(&base, r) < one {
                        continue;
                    }
                    let rescued = (0..4).any(|i| {
                        let mut shifted = base.clone();
                        shifted[i] = &shifted[i] - sgn(&base[i]);
                        norm_upper_bound(&shifted, r) < one
                    });
                    if !rescued {
                        bad.push(base);
                    }
                }
            }
        }
    }
    bad
}

impl fmt::Debug for GaussGoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.coords();
        write!(f, "({w}, {x}, {y}, {z})")
    }
}

impl Add<&GaussGoldenInt> for &GaussGoldenInt {
    type Output = GaussGoldenInt;
    fn add(self, o: &GaussGoldenInt) -> GaussGoldenInt {
        GaussGoldenInt::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&GaussGoldenInt> for &GaussGoldenInt {
    type Output = GaussGoldenInt;
    fn sub(self, o: &GaussGoldenInt) -> GaussGoldenInt {
        GaussGoldenInt::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&GaussGoldenInt> for &GaussGoldenInt {
    type Output = GaussGoldenInt;
    fn mul(self, o: &GaussGoldenInt) -> GaussGoldenInt {
        GaussGoldenInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussGoldenInt {
    type Output = GaussGoldenInt;
    fn neg(self) -> GaussGoldenInt {
        GaussGoldenInt::new(-&self.re, -&self.im)
    }
}
