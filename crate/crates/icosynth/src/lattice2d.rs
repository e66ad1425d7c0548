//! Integer points of bounded convex polygons in Z², and Z[φ] points of embedding boxes.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::golden::{Embedding, GoldenInt, PHI_LOG2};
use crate::real::Real;

/// p·c + q·d ≤ r
#[derive(Clone, Debug)]
pub struct LinearConstraint {
    pub p: Real,
    pub q: Real,
    pub r: Real,
}

impl LinearConstraint {
    pub fn new(p: Real, q: Real, r: Real) -> Self {
        LinearConstraint { p, q, r }
    }

    /// lo ≤ p·c + q·d ≤ hi, as two rows.
    pub fn between(p: &Real, q: &Real, lo: &Real, hi: &Real) -> [LinearConstraint; 2] {
        [LinearConstraint::new(p.clone(), q.clone(), hi.clone()), LinearConstraint::new(-p, -q, -lo)]
    }

    fn prec(&self) -> usize {
        self.p.prec().max(self.q.prec()).max(self.r.prec())
    }
}

fn slack(x: &Real) -> Real {
    let prec = x.prec();
    let ulp = Real::pow2(12 - prec as i64, prec);
    &(&x.abs() + &Real::one(prec)) * &ulp
}

/// Whether (x, y) satisfies the row up to outward rounding.
fn admits(row: &LinearConstraint, x: &Real, y: &Real) -> bool {
    let lhs = &(&row.p * x) + &(&row.q * y);
    let tol = slack(&(&(&(&row.p * x).abs() + &(&row.q * y).abs()) + &row.r.abs()));
    lhs <= &row.r + &tol
}

fn recession_is_trivial(rows: &[LinearConstraint]) -> bool {
    if rows.iter().all(|r| r.p.is_zero() && r.q.is_zero()) {
        return false;
    }
    for row in rows.iter().filter(|r| !(r.p.is_zero() && r.q.is_zero())) {
        for (dx, dy) in [(-&row.q, row.p.clone()), (row.q.clone(), -&row.p)] {
            let scale = dx.abs().max(dy.abs());
            let (dx, dy) = (&dx / &scale, &dy / &scale);
            if rows.iter().all(|r| {
                let lhs = &(&r.p * &dx) + &(&r.q * &dy);
                lhs <= slack(&(&r.p.abs() + &r.q.abs()))
            }) {
                return false;
            }
        }
    }
    true
}

/// Integer points of {p·c + q·d ≤ r}, row-major in c then d.
pub fn enumerate(rows: &[LinearConstraint]) -> Result<LatticePoints> {
    if rows.is_empty() || !recession_is_trivial(rows) {
        return Err(Error::UnboundedRegion);
    }
    let mut xs: Vec<Real> = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let det = &(&a.p * &b.q) - &(&a.q * &b.p);
            if det.is_zero() {
                continue;
            }
            let x = &(&(&a.r * &b.q) - &(&a.q * &b.r)) / &det;
            let y = &(&(&a.p * &b.r) - &(&a.r * &b.p)) / &det;
            if rows.iter().all(|r| admits(r, &x, &y)) {
                xs.push(x);
            }
        }
    }
    let empty = LatticePoints { rows: rows.to_vec(), c: BigInt::one(), c_max: BigInt::ZERO, d: BigInt::one(), d_max: BigInt::ZERO };
    let Some(first) = xs.first() else {
        return Ok(empty);
    };
    let (lo, hi) = xs.iter().fold((first.clone(), first.clone()), |(lo, hi), x| (lo.min(x.clone()), hi.max(x.clone())));
    let c = (&lo - &slack(&lo)).ceil_int();
    let c_max = (&hi + &slack(&hi)).floor_int();
    let mut pts = LatticePoints { rows: rows.to_vec(), c, c_max, d: BigInt::one(), d_max: BigInt::ZERO };
    pts.load_column();
    Ok(pts)
}

/// Streaming output of [`enumerate`].
#[derive(Clone, Debug)]
pub struct LatticePoints {
    rows: Vec<LinearConstraint>,
    c: BigInt,
    c_max: BigInt,
    d: BigInt,
    d_max: BigInt,
}

impl LatticePoints {
    /// Sets the d-range for the current c, skipping columns with no points.
    fn load_column(&mut self) {
        while self.c <= self.c_max {
            let prec = self.rows[0].prec();
            let c = Real::from_bigint(&self.c, prec);
            let mut lo: Option<Real> = None;
            let mut hi: Option<Real> = None;
            let mut ok = true;
            for row in &self.rows {
                let rhs = &row.r - &(&row.p * &c);
                let tol = slack(&(&row.r.abs() + &(&row.p * &c).abs()));
                if row.q.is_zero() {
                    if rhs < -&tol {
                        ok = false;
                        break;
                    }
                    continue;
                }
                let b = &rhs / &row.q;
                let bt = &tol / &row.q.abs();
                if row.q.is_positive() {
                    let v = &b + &bt;
                    hi = Some(match hi {
                        Some(h) => h.min(v),
                        None => v,
                    });
                } else {
                    let v = &b - &bt;
                    lo = Some(match lo {
                        Some(l) => l.max(v),
                        None => v,
                    });
                }
            }
            if ok {
                if let (Some(lo), Some(hi)) = (lo, hi) {
                    let (d, d_max) = (lo.ceil_int(), hi.floor_int());
                    if d <= d_max {
                        self.d = d;
                        self.d_max = d_max;
                        return;
                    }
                }
            }
            self.c += 1;
        }
    }
}

impl Iterator for LatticePoints {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        if self.c > self.c_max || self.d > self.d_max {
            return None;
        }
        let out = (self.c.clone(), self.d.clone());
        self.d += 1;
        if self.d > self.d_max {
            self.c += 1;
            self.load_column();
        }
        Some(out)
    }
}

/// x ∈ Z[φ] with σ₊(x) ∈ [plus.0, plus.1] and σ₋(x) ∈ [minus.0, minus.1].
#[derive(Clone, Debug)]
pub struct GoldenBox {
    pub plus: (Real, Real),
    pub minus: (Real, Real),
}

impl GoldenBox {
    pub fn is_empty(&self) -> bool {
        self.plus.0 > self.plus.1 || self.minus.0 > self.minus.1
    }

    /// Unit exponent n that makes φⁿ·box roughly square.
    fn balance(&self) -> i64 {
        let wp = (&self.plus.1 - &self.plus.0).log2_approx();
        let wm = (&self.minus.1 - &self.minus.0).log2_approx();
        if !wp.is_finite() || !wm.is_finite() {
            return 0;
        }
        ((wm - wp) / (2.0 * PHI_LOG2)).round() as i64
    }

    /// Every point, ordered by the φ-coordinate of the rebalanced box and then by the integer one.
    pub fn points(&self) -> Result<GoldenBoxPoints> {
        let prec = self.plus.0.prec();
        let n = if self.is_empty() { 0 } else { self.balance() };
        let unit = GoldenInt::phi_pow(n);
        let (up, um) = (unit.embed(Embedding::Plus, prec), unit.embed(Embedding::Minus, prec));
        let (p0, p1) = (&self.plus.0 * &up, &self.plus.1 * &up);
        let (m0, m1) = (&self.minus.0 * &um, &self.minus.1 * &um);
        let (m0, m1) = if um.is_negative() { (m1, m0) } else { (m0, m1) };
        let phi = Real::phi(prec);
        let phibar = &Real::one(prec) - &phi;
        let sqrt5 = &phi - &phibar;
        let (d, d_max) = if self.is_empty() {
            (BigInt::one(), BigInt::ZERO)
        } else {
            let lo = &(&p0 - &m1) / &sqrt5;
            let hi = &(&p1 - &m0) / &sqrt5;
            ((&lo - &slack(&lo)).ceil_int(), (&hi + &slack(&hi)).floor_int())
        };
        let mut it = GoldenBoxPoints {
            p: (p0, p1),
            m: (m0, m1),
            phi,
            phibar,
            back: GoldenInt::phi_pow(-n),
            d,
            d_max,
            c: BigInt::one(),
            c_max: BigInt::ZERO,
        };
        it.load_column();
        Ok(it)
    }
}

/// Streaming output of [`GoldenBox::points`].
#[derive(Clone, Debug)]
pub struct GoldenBoxPoints {
    p: (Real, Real),
    m: (Real, Real),
    phi: Real,
    phibar: Real,
    back: GoldenInt,
    d: BigInt,
    d_max: BigInt,
    c: BigInt,
    c_max: BigInt,
}

impl GoldenBoxPoints {
    fn load_column(&mut self) {
        while self.d <= self.d_max {
            let prec = self.phi.prec();
            let d = Real::from_bigint(&self.d, prec);
            let (dp, dm) = (&d * &self.phi, &d * &self.phibar);
            let lo = (&self.p.0 - &dp).max(&self.m.0 - &dm);
            let hi = (&self.p.1 - &dp).min(&self.m.1 - &dm);
            let (c, c_max) = ((&lo - &slack(&lo)).ceil_int(), (&hi + &slack(&hi)).floor_int());
            if c <= c_max {
                self.c = c;
                self.c_max = c_max;
                return;
            }
            self.d += 1;
        }
    }
}

impl Iterator for GoldenBoxPoints {
    type Item = GoldenInt;

    fn next(&mut self) -> Option<GoldenInt> {
        if self.d > self.d_max || self.c > self.c_max {
            return None;
        }
        let out = &GoldenInt::new(self.c.clone(), self.d.clone()) * &self.back;
        self.c += 1;
        if self.c > self.c_max {
            self.d += 1;
            self.load_column();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: usize = 128;

    fn r(v: f64) -> Real {
        Real::from_f64(v, P)
    }

    fn row(p: f64, q: f64, rr: f64) -> LinearConstraint {
        LinearConstraint::new(r(p), r(q), r(rr))
    }

    #[test]
    fn unit_square() {
        let rows: Vec<_> = [(1.0, 0.0), (0.0, 1.0)]
            .iter()
            .flat_map(|&(p, q)| LinearConstraint::between(&r(p), &r(q), &r(-1.0), &r(1.0)))
            .collect();
        let pts: Vec<_> = enumerate(&rows).unwrap().collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], (BigInt::from(-1), BigInt::from(-1)));
        assert_eq!(pts[1], (BigInt::from(-1), BigInt::from(0)));
    }

    #[test]
    fn infeasible_triangle() {
        let rows = [row(1.0, 1.0, -1.0), row(-1.0, 0.0, 0.0), row(0.0, -1.0, 0.0)];
        assert_eq!(enumerate(&rows).unwrap().count(), 0);
    }

    #[test]
    fn unbounded_is_reported() {
        let rows = [row(1.0, 0.0, 3.0), row(-1.0, 0.0, 3.0), row(0.0, 1.0, 2.0)];
        assert!(matches!(enumerate(&rows), Err(Error::UnboundedRegion)));
        assert!(matches!(enumerate(&[]), Err(Error::UnboundedRegion)));
    }

    #[test]
    fn single_point() {
        let rows = [row(1.0, 0.0, 2.0), row(-1.0, 0.0, -2.0), row(0.0, 1.0, -3.0), row(0.0, -1.0, 3.0)];
        let pts: Vec<_> = enumerate(&rows).unwrap().collect();
        assert_eq!(pts, vec![(BigInt::from(2), BigInt::from(-3))]);
    }

    #[test]
    fn golden_box_matches_scan() {
        let b = GoldenBox { plus: (r(-3.0), r(7.5)), minus: (r(-2.0), r(4.0)) };
        let mut got: Vec<GoldenInt> = b.points().unwrap().collect();
        let mut want = Vec::new();
        for a in -30i64..30 {
            for bb in -30i64..30 {
                let x = GoldenInt::new(a, bb);
                let (p, m) = (x.to_f64(Embedding::Plus), x.to_f64(Embedding::Minus));
                if (-3.0..=7.5).contains(&p) && (-2.0..=4.0).contains(&m) {
                    want.push(x);
                }
            }
        }
        got.sort_by_key(|x| (x.a.clone(), x.b.clone()));
        want.sort_by_key(|x| (x.a.clone(), x.b.clone()));
        assert_eq!(got, want);
    }

    #[test]
    fn thin_golden_box() {
        // One point, 10⁻¹² wide in one embedding and 10⁶ in the other.
        let x = GoldenInt::new(123456, -76300);
        let (p, m) = (x.embed(Embedding::Plus, P), x.embed(Embedding::Minus, P));
        let w = r(1e-12);
        let big = r(1e6);
        let b = GoldenBox { plus: (&p - &w, &p + &w), minus: (&m - &big, &m + &big) };
        let got: Vec<GoldenInt> = b.points().unwrap().collect();
        assert!(got.contains(&x));
        assert!(got.len() < 5);
    }
}
