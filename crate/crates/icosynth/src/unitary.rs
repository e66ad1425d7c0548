//! PU(2) numerics: the bi-invariant metric, u(α, β) and u(θ) forms, diagonal tuning.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::real::{Cx, Real};

/// A projective unitary, stored as u(α, β) = [[α, β], [−β̄, ᾱ]] with |α|² + |β|² = 1.
#[derive(Clone, Debug)]
pub struct ProjUnitary {
    alpha: Cx,
    beta: Cx,
}

impl ProjUnitary {
    /// u(α, β), renormalized onto the unit sphere.
    pub fn from_su2(alpha: Cx, beta: Cx) -> Self {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        ProjUnitary { alpha: alpha.scale(&n.inv()), beta: beta.scale(&n.inv()) }
    }

    /// Any 2×2 unitary up to phase; rejects matrices that are not unitary within `tol`.
    pub fn from_matrix(m: [[Cx; 2]; 2], tol: f64) -> Result<Self> {
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det.abs().to_f64() < 1e-300 {
            return Err(Error::InvalidArgument("singular matrix".into()));
        }
        let s = det.sqrt().inv();
        let m = m.map(|row| row.map(|e| &e * &s));
        let off = &(&m[0][0] * &m[1][0].conj()) + &(&m[0][1] * &m[1][1].conj());
        let r0 = (m[0][0].norm_sqr() + m[0][1].norm_sqr()).to_f64();
        let r1 = (m[1][0].norm_sqr() + m[1][1].norm_sqr()).to_f64();
        if (r0 - 1.0).abs() > tol || (r1 - 1.0).abs() > tol || off.abs().to_f64() > tol {
            return Err(Error::InvalidArgument("matrix is not unitary".into()));
        }
        let two = Real::from_i64(2, m[0][0].prec());
        let alpha = (&m[0][0] + &m[1][1].conj()).scale(&two.inv());
        let beta = (&m[0][1] - &m[1][0].conj()).scale(&two.inv());
        Ok(ProjUnitary::from_su2(alpha, beta))
    }

    pub fn identity(prec: usize) -> Self {
        ProjUnitary { alpha: Cx::one(prec), beta: Cx::zero(prec) }
    }

    pub fn prec(&self) -> usize {
        self.alpha.prec()
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let c = |z: &Cx| Cx::new(z.re.with_prec(prec), z.im.with_prec(prec));
        ProjUnitary { alpha: c(&self.alpha), beta: c(&self.beta) }
    }

    /// (α, β) with arg α in (−π/2, π/2].
    pub fn alpha_beta(&self) -> (Cx, Cx) {
        let lead = if self.alpha.abs().is_zero() { &self.beta } else { &self.alpha };
        let flip = lead.re.is_negative() || (lead.re.is_zero() && lead.im.is_negative());
        if flip {
            (-&self.alpha, -&self.beta)
        } else {
            (self.alpha.clone(), self.beta.clone())
        }
    }

    pub fn entries(&self) -> [[Cx; 2]; 2] {
        let (a, b) = self.alpha_beta();
        [[a.clone(), b.clone()], [-&b.conj(), a.conj()]]
    }

    pub fn adjoint(&self) -> Self {
        ProjUnitary { alpha: self.alpha.conj(), beta: -&self.beta }
    }

    pub fn mul(&self, o: &ProjUnitary) -> Self {
        let alpha = &(&self.alpha * &o.alpha) - &(&self.beta * &o.beta.conj());
        let beta = &(&self.alpha * &o.beta) + &(&self.beta * &o.alpha.conj());
        ProjUnitary { alpha, beta }
    }

    /// |α|
    pub fn abs_alpha(&self) -> Real {
        self.alpha.abs()
    }
}

impl fmt::Display for ProjUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.alpha_beta();
        let c = |z: &Cx| format!("{:+.12e}{:+.12e}i", z.re.to_f64(), z.im.to_f64());
        write!(f, "u({}, {})", c(&a), c(&b))
    }
}

/// √(1 − |tr(A†B)|/2) with both sides in SU(2).
pub fn distance(a: &ProjUnitary, b: &ProjUnitary) -> Real {
    let t = &(&a.alpha.conj() * &b.alpha) + &(&a.beta.conj() * &b.beta);
    let one = Real::one(a.prec().max(b.prec()));
    let x = &one - &t.re.abs();
    if x.is_negative() {
        Real::zero(one.prec())
    } else {
        x.sqrt()
    }
}

/// diag(e^{iθ}, e^{−iθ})
pub fn u_of_theta(theta: &Real) -> ProjUnitary {
    ProjUnitary { alpha: Cx::expi(theta), beta: Cx::zero(theta.prec()) }
}

/// Phases that rotate one unitary onto another of similar |α|.
#[derive(Clone, Debug)]
pub struct TuningAngles {
    pub theta1: Real,
    pub theta2: Real,
    pub bound_constant: Real,
}

/// C = √(1/2 + ((2+δ)/ε₀)²/2).
pub fn tuning_constant(delta: &Real, eps0: &Real) -> Real {
    let p = delta.prec().max(eps0.prec());
    let two = Real::from_i64(2, p);
    let half = two.inv();
    let r = (&two + delta) / eps0;
    (&half + &(r.square() * &half)).sqrt()
}

/// θ₁, θ₂ with u(θ₁)·γ₂·u(θ₂) close to γ₁.
pub fn tune_diagonals(g1: &ProjUnitary, g2: &ProjUnitary, delta: &Real, eps0: &Real) -> Result<TuningAngles> {
    let (a1, b1) = g1.alpha_beta();
    let (a2, b2) = g2.alpha_beta();
    let (m1, m2) = (a1.abs(), a2.abs());
    let one = Real::one(m1.prec());
    let cap = (&one - &eps0.square()).sqrt();
    if (&m1 - &m2).abs() >= *delta {
        return Err(Error::HypothesisViolation(format!("||α₁| − |α₂|| = {} is not below δ", (&m1 - &m2).abs().to_f64())));
    }
    if m1.clone().min(m2.clone()) >= cap {
        return Err(Error::HypothesisViolation("both |α| are within ε₀ of 1".into()));
    }
    let two = Real::from_i64(2, m1.prec());
    let da = &a1.arg() - &a2.arg();
    let db = &b1.arg() - &b2.arg();
    Ok(TuningAngles {
        theta1: (&da + &db) / &two,
        theta2: (&da - &db) / &two,
        bound_constant: tuning_constant(delta, eps0),
    })
}

/// Standard single-qubit gates.
pub fn named_gate(name: &str, prec: usize) -> Result<ProjUnitary> {
    let z = || Cx::zero(prec);
    let one = || Cx::one(prec);
    let i = || Cx::i(prec);
    let pi = Real::pi(prec);
    let m = match name.to_ascii_uppercase().as_str() {
        "H" => {
            let h = Cx::i(prec).scale(&Real::from_i64(2, prec).sqrt().inv());
            [[h.clone(), h.clone()], [h.clone(), -&h]]
        }
        "T" => return Ok(u_of_theta(&(pi / Real::from_i64(8, prec)))),
        "X" => [[z(), one()], [one(), z()]],
        "Y" => [[z(), -&i()], [i(), z()]],
        "Z" => [[one(), z()], [z(), -&one()]],
        "S" => [[one(), z()], [z(), i()]],
        "I" => [[one(), z()], [z(), one()]],
        _ => return Err(Error::Parse(format!("unknown gate {name:?}"))),
    };
    ProjUnitary::from_matrix(m, 1e-20)
}

fn parse_real_literal(s: &str, prec: usize) -> Result<Real> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Real::from_rational(&BigRational::new(n, d), prec));
    }
    Real::parse(s, prec)
}

/// A complex literal such as `1/2-3/4i`, `0.70710678`, `-i` or `2e-3+1e-2i`.
pub fn parse_complex(s: &str, prec: usize) -> Result<Cx> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex entry".into()));
    }
    let imag_part = |t: &str| -> Result<Real> {
        match t {
            "" | "+" => Ok(Real::one(prec)),
            "-" => Ok(-Real::one(prec)),
            _ => parse_real_literal(t, prec),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Cx::real(parse_real_literal(&s, prec)?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Cx::new(parse_real_literal(&body[..k], prec)?, imag_part(&body[k..])?)),
        None => Ok(Cx::new(Real::zero(prec), imag_part(body)?)),
    }
}

/// Four complex entries, row-major, separated by commas, semicolons or whitespace.
pub fn parse_matrix(s: &str, prec: usize) -> Result<ProjUnitary> {
    let parts: Vec<&str> = s.split([',', ';']).map(str::trim).filter(|t| !t.is_empty()).collect();
    let parts: Vec<&str> = if parts.len() == 4 { parts } else { s.split_whitespace().collect() };
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected 4 matrix entries, found {}", parts.len())));
    }
    let e = parts.iter().map(|p| parse_complex(p, prec)).collect::<Result<Vec<_>>>()?;
    let [a, b, c, d]: [Cx; 4] = e.try_into().expect("four entries");
    ProjUnitary::from_matrix([[a, b], [c, d]], 1e-9)
}

/// Radians, or a rational multiple of π such as `pi/8`, `-3pi/4`, `3*π/8`.
pub fn parse_angle(s: &str, prec: usize) -> Result<Real> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.replace('π', "pi");
    let Some(pos) = t.find("pi") else {
        return parse_real_literal(&t, prec);
    };
    let coef = t[..pos].trim_end_matches('*');
    let coef = match coef {
        "" | "+" => BigRational::from_integer(1.into()),
        "-" => BigRational::from_integer((-1).into()),
        c => parse_rational(c)?,
    };
    let rest = &t[pos + 2..];
    let div = match rest {
        "" => BigRational::from_integer(1.into()),
        r => {
            let r = r.strip_prefix('/').ok_or_else(|| Error::Parse(format!("bad angle {s:?}")))?;
            parse_rational(r)?
        }
    };
    if div == BigRational::from_integer(0.into()) {
        return Err(Error::Parse(format!("zero divisor in angle {s:?}")));
    }
    Ok(Real::pi(prec) * Real::from_rational(&(coef / div), prec))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("expected an integer or fraction, found {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
