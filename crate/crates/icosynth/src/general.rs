//! Approximating arbitrary targets as γ₁·γ·γ₂ with a short central γ and diagonal γ₁, γ₂.

use std::time::{Duration, Instant};

use crate::diagonal::{synth_diagonal_with, synthesis_budget, DiagonalConfig, DiagonalSynthesis};
use crate::error::{Error, Result};
use crate::golden::{Budget, Embedding, GoldenInt};
use crate::icosian::{c60, evaluate_word, exact_synthesize, GateWord, GoldenQuat};
use crate::lattice2d::GoldenBox;
use crate::real::{precision_for_eps, Real};
use crate::sots::sots_exact;
use crate::unitary::{distance, tune_diagonals, tuning_constant, u_of_theta, ProjUnitary};

#[derive(Clone, Debug)]
pub struct SynthConfig {
    pub epsilon: f64,
    pub epsilon0: f64,
    pub delta: f64,
    /// Run internally at ε/(C+2) so the result is within the requested ε.
    pub strict: bool,
    /// Largest central exponent k; `None` means ⌈log₅₉(1/ε)⌉ + 12.
    pub k_cap: Option<u32>,
    pub abandon_threshold: u64,
    pub seed: u64,
    /// Working precision in bits; `None` derives it from ε.
    pub precision: Option<usize>,
}

impl SynthConfig {
    pub fn new(epsilon: f64) -> Self {
        SynthConfig {
            epsilon,
            epsilon0: 0.05,
            delta: 0.5,
            strict: false,
            k_cap: None,
            abandon_threshold: u64::MAX,
            seed: 0,
            precision: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.epsilon > 0.0 && self.epsilon < self.delta && self.epsilon0 > 0.0 && self.epsilon0 < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "need 0 < ε < δ and 0 < ε₀ < 1 (ε = {}, δ = {}, ε₀ = {})",
                self.epsilon, self.delta, self.epsilon0
            )))
        }
    }

    fn budget(&self) -> Budget {
        Budget { abandon_threshold: self.abandon_threshold, ..synthesis_budget(self.seed) }
    }
}

/// How the target was split up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// c·u(θ) for a C₆₀ element c.
    Diagonal,
    /// c·γ₁·γ·γ₂ for a C₆₀ element c.
    Sandwich,
}

#[derive(Clone, Debug)]
pub struct SynthReport {
    pub word: GateWord,
    pub route: Route,
    pub central_word: GateWord,
    pub central_tau: usize,
    pub outer_tau: (usize, usize),
    pub achieved: Real,
    pub k: u32,
    pub abandoned_count: usize,
    /// The internal accuracy and C; `achieved < (C + 2)·epsilon_internal`.
    pub epsilon_internal: Real,
    pub bound_constant: Real,
    pub elapsed: Duration,
}

/// Totally nonnegative s with |s − |α|²η^k| < ε|α|η^k and s ≤ η^k in both embeddings, nearest the center first.
pub fn candidate_norms(k: u32, abs_alpha: &Real, eps: &Real) -> Result<Vec<GoldenInt>> {
    let prec = abs_alpha.prec().max(eps.prec());
    let eta_k = GoldenInt::eta_pow(k);
    let (top, top_bar) = (eta_k.embed(Embedding::Plus, prec), eta_k.embed(Embedding::Minus, prec));
    let zero = Real::zero(prec);
    let center = &abs_alpha.square() * &top;
    let radius = &(eps * abs_alpha) * &top;
    let lo = (&center - &radius).max(zero.clone());
    let hi = (&center + &radius).min(top);
    let bx = GoldenBox { plus: (lo, hi), minus: (zero, top_bar) };
    let mut out: Vec<(Real, GoldenInt)> = bx
        .points()?
        .filter(|s| s.is_totally_nonneg() && (&eta_k - s).is_totally_nonneg())
        .map(|s| ((&s.embed(Embedding::Plus, prec) - &center).abs(), s))
        .filter(|(d, _)| *d < radius)
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    Ok(out.into_iter().map(|(_, s)| s).collect())
}

/// The central element (x₀, x₁, x₂, x₃) with x₀² + x₁² = s and nrd = η^k.
pub fn build_central(k: u32, s: &GoldenInt, budget: &Budget) -> Result<GoldenQuat> {
    let eta_k = GoldenInt::eta_pow(k);
    let (x0, x1) = sots_exact(s, budget)?;
    let (x2, x3) = sots_exact(&(&eta_k - s), budget)?;
    let q = GoldenQuat::new(x0, x1, x2, x3);
    if q.nrd() != eta_k {
        return Err(Error::SotsFail);
    }
    Ok(q)
}

/// Default cap on the central exponent for accuracy ε.
pub fn default_k_cap(eps: f64) -> u32 {
    ((1.0 / eps).ln() / 59f64.ln()).ceil().max(0.0) as u32 + 12
}

/// Word in ρ, σ, τ within (C + 2)·ε of `g`.
pub fn synth_general(g: &ProjUnitary, cfg: &SynthConfig) -> Result<SynthReport> {
    cfg.validate()?;
    let start = Instant::now();
    let prec = cfg.precision.unwrap_or_else(|| precision_for_eps(cfg.epsilon)).max(64);
    let g = g.with_prec(prec);
    let delta = Real::from_f64(cfg.delta, prec);
    let eps0 = Real::from_f64(cfg.epsilon0, prec);
    let c = tuning_constant(&delta, &eps0);
    let two = Real::from_i64(2, prec);
    let user_eps = Real::from_f64(cfg.epsilon, prec);
    let eps = if cfg.strict { &user_eps / &(&c + &two) } else { user_eps };
    if eps.log2_approx() < -(prec as f64) / 2.0 + 8.0 {
        return Err(Error::PrecisionInsufficient(format!("{prec} bits cannot resolve distances near {}", eps.to_f64())));
    }
    let guarantee = &(&c + &two) * &eps;
    let budget = cfg.budget();
    let diag_cfg = DiagonalConfig { m_cap: None, budget: budget.clone() };
    let table = c60();
    if let Some((i, d)) = (0..table.len())
        .map(|i| (i, distance(&g, &table.elem(i).to_unitary(prec))))
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
    {
        if d < eps {
            let word = GateWord::new(vec![table.word(i).to_vec()]).expect("one segment");
            return finish(&g, word, Route::Diagonal, GateWord::identity(), (0, 0), 0, 0, &eps, &c, start);
        }
    }

    // Near-diagonal g ≈ u(θ), or near-antidiagonal g ≈ u(θ)·J.
    let cap = (&Real::one(prec) - &eps0.square()).sqrt();
    let abs_alpha = g.abs_alpha();
    let half = &eps / &two;
    let j = table.find(&GoldenQuat::from_pairs([(0, 0), (0, 0), (1, 0), (0, 0)])).expect("j is in C60");
    let j_word = GateWord::new(vec![table.word(j).to_vec()]).expect("one segment");
    let shortcut = if abs_alpha >= cap {
        Some((g.clone(), GateWord::identity()))
    } else if abs_alpha <= eps0 {
        Some((g.mul(&table.elem(j).to_unitary(prec).adjoint()), j_word))
    } else {
        None
    };
    if let Some((h, suffix)) = shortcut {
        let theta = h.alpha_beta().0.arg();
        let off = distance(&h, &u_of_theta(&theta));
        if off <= half && !slope_in_golden_field(&theta) {
            let d = synth_diagonal_with(&theta, &(&eps - &off), &diag_cfg, &mut |_, _| true)?;
            let word = d.word.concat(&suffix);
            return finish(&g, word, Route::Diagonal, GateWord::identity(), (d.word.tau_count(), 0), 0, d.abandoned, &eps, &c, start);
        }
    }

    // Otherwise move |α| toward the middle of (0, 1).
    let (twist, target) = (0..table.len())
        .map(|i| {
            let w = GateWord::new(vec![table.word(i).to_vec()]).expect("one segment");
            (w, table.elem(i).to_unitary(prec).adjoint().mul(&g))
        })
        .min_by(|a, b| {
            let da = (&a.1.abs_alpha().square() - &(&Real::one(prec) / &two)).abs();
            let db = (&b.1.abs_alpha().square() - &(&Real::one(prec) / &two)).abs();
            da.partial_cmp(&db).expect("finite")
        })
        .expect("C60 is nonempty");
    let abs_alpha = target.abs_alpha();
    let k_cap = cfg.k_cap.unwrap_or_else(|| default_k_cap(eps.to_f64()));
    let mut abandoned = 0;
    for k in 0..=k_cap {
        for s in candidate_norms(k, &abs_alpha, &eps)? {
            let q = match build_central(k, &s, &budget) {
                Ok(q) => q,
                Err(e) if e.is_abandonment() => {
                    abandoned += 1;
                    continue;
                }
                Err(Error::SotsFail) => continue,
                Err(e) => return Err(e),
            };
            let central = match exact_synthesize(&q) {
                Ok(w) => w,
                Err(Error::NoPeelingCandidate(_) | Error::AmbiguousPeel { .. } | Error::NotInLattice) => continue,
                Err(e) => return Err(e),
            };
            let gamma = evaluate_word(&central, prec);
            let tuning = match tune_diagonals(&target, &gamma, &delta, &eps0) {
                Ok(t) => t,
                Err(Error::HypothesisViolation(_)) => continue,
                Err(e) => return Err(e),
            };
            let (left, right) = sandwich(&target, &gamma, &tuning.theta1, &eps, &guarantee, cfg.strict, &diag_cfg)?;
            let word = twist.concat(&left.word).concat(&central).concat(&right.word);
            let outer = (left.word.tau_count(), right.word.tau_count());
            let abandoned = abandoned + left.abandoned + right.abandoned;
            return finish(&g, word, Route::Sandwich, central, outer, k, abandoned, &eps, &c, start);
        }
    }
    Err(Error::BudgetExhausted(format!("no central element with k ≤ {k_cap}")))
}

/// Whether tan θ is a ratio of small elements of Z[φ]. For such θ the x₀, x₁ search only sees a rank-two lattice and
/// needs about twice the usual m.
fn slope_in_golden_field(theta: &Real) -> bool {
    const H: i64 = 12;
    let (sin, cos) = theta.to_f64().sin_cos();
    if cos.abs() < 1e-12 {
        return true;
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let in_lattice = |v: f64| {
        (-H..=H).any(|q| {
            let p = (v - q as f64 * phi).round();
            p.abs() <= H as f64 && (v - p - q as f64 * phi).abs() < 1e-9
        })
    };
    (-H..=H).any(|a| (-H..=H).any(|b| (a, b) != (0, 0) && in_lattice(sin / cos * (a as f64 + b as f64 * phi))))
}

/// The diagonal completing `head` to `target`, and how far `target` is from any such completion.
fn completion(head: &ProjUnitary, target: &ProjUnitary) -> (ProjUnitary, Real, Real) {
    let rest = head.adjoint().mul(target);
    let theta = rest.alpha_beta().0.arg();
    let off = distance(&rest, &u_of_theta(&theta));
    (rest, theta, off)
}

/// γ₁ ≈ u(θ₁), then γ₂ ≈ the diagonal that best completes γ₁·γ to `target`.
///
/// Outside strict mode γ₁ is also required to leave an off-diagonal residual of at most ¾ε, and γ₂ to land the
/// product within max(√2·ε, residual + ε/2).
#[allow(clippy::too_many_arguments)]
fn sandwich(
    target: &ProjUnitary,
    gamma: &ProjUnitary,
    theta1: &Real,
    eps: &Real,
    guarantee: &Real,
    strict: bool,
    cfg: &DiagonalConfig,
) -> Result<(DiagonalSynthesis, DiagonalSynthesis)> {
    let prec = eps.prec();
    let quarter = eps / &Real::from_i64(4, prec);
    let left_cap = eps - &quarter;
    let left = synth_diagonal_with(theta1, eps, cfg, &mut |_, v| strict || completion(&v.mul(gamma), target).2 <= left_cap)?;
    let (rest, theta2, off) = completion(&evaluate_word(&left.word, prec).mul(gamma), target);
    let aim = if strict {
        guarantee.clone()
    } else {
        let sqrt2 = Real::from_i64(2, prec).sqrt();
        (&sqrt2 * eps).max(&off + &(&quarter + &quarter)).min(guarantee.clone())
    };
    let right = synth_diagonal_with(&theta2, eps, cfg, &mut |_, v| distance(&rest, v) < aim)?;
    Ok((left, right))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &ProjUnitary,
    word: GateWord,
    route: Route,
    central: GateWord,
    outer: (usize, usize),
    k: u32,
    abandoned_count: usize,
    eps: &Real,
    c: &Real,
    start: Instant,
) -> Result<SynthReport> {
    let achieved = distance(g, &evaluate_word(&word, g.prec()));
    let bound = &(c + &Real::from_i64(2, c.prec())) * eps;
    if achieved >= bound {
        return Err(Error::PrecisionInsufficient(format!(
            "achieved {} is not below (C+2)·ε = {}",
            achieved.to_f64(),
            bound.to_f64()
        )));
    }
    Ok(SynthReport {
        central_tau: central.tau_count(),
        central_word: central,
        word,
        route,
        outer_tau: outer,
        achieved,
        k,
        abandoned_count,
        epsilon_internal: eps.clone(),
        bound_constant: c.clone(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::named_gate;

    const P: usize = 160;

    fn r(v: f64) -> Real {
        Real::from_f64(v, P)
    }

    fn scan(k: u32, abs_alpha: f64, eps: f64) -> Vec<GoldenInt> {
        let eta_k = GoldenInt::eta_pow(k);
        let (top, top_bar) = (eta_k.to_f64(Embedding::Plus), eta_k.to_f64(Embedding::Minus));
        let mut out = Vec::new();
        for a in -400i64..400 {
            for b in -400i64..400 {
                let s = GoldenInt::new(a, b);
                let (p, m) = (s.to_f64(Embedding::Plus), s.to_f64(Embedding::Minus));
                if (p - abs_alpha * abs_alpha * top).abs() < eps * abs_alpha * top
                    && (0.0..=top).contains(&p)
                    && (0.0..=top_bar).contains(&m)
                {
                    out.push(s);
                }
            }
        }
        out.sort_by_key(|x| (x.a.clone(), x.b.clone()));
        out
    }

    #[test]
    fn candidate_norms_match_scan() {
        for (k, a, e) in [(0, std::f64::consts::FRAC_1_SQRT_2, 0.5), (0, 0.999, 0.01), (2, 0.6, 0.05), (2, 0.31, 0.2), (1, 0.8, 0.01)] {
            let mut got = candidate_norms(k, &r(a), &r(e)).unwrap();
            got.sort_by_key(|x| (x.a.clone(), x.b.clone()));
            assert_eq!(got, scan(k, a, e), "k = {k}, |α| = {a}, ε = {e}");
        }
        let unit = candidate_norms(0, &r(0.999_999), &r(1e-3)).unwrap();
        assert!(unit.contains(&GoldenInt::one()));
    }

    #[test]
    fn candidate_norms_center_out() {
        let got = candidate_norms(3, &r(0.6), &r(0.05)).unwrap();
        let center = 0.36 * GoldenInt::eta_pow(3).to_f64(Embedding::Plus);
        let d: Vec<f64> = got.iter().map(|s| (s.to_f64(Embedding::Plus) - center).abs()).collect();
        assert!(d.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn central_examples() {
        let b = synthesis_budget(0);
        let q = build_central(0, &GoldenInt::one(), &b).unwrap();
        assert_eq!(q.nrd(), GoldenInt::one());
        let q = build_central(0, &GoldenInt::zero(), &b).unwrap();
        assert!(q.x[0].is_zero() && q.x[1].is_zero());
        // η = (2 + φ)² + 1² + 1²
        let q = build_central(1, &GoldenInt::new(5, 5), &b).unwrap();
        assert_eq!(q.nrd(), GoldenInt::eta());
        assert_eq!(build_central(1, &GoldenInt::zero(), &b), Err(Error::SotsFail));
    }

    #[test]
    fn gates_within_bound() {
        for (gate, eps) in [("H", 1e-4), ("T", 1e-5), ("S", 1e-3), ("X", 1e-3), ("I", 1e-3)] {
            let g = named_gate(gate, P).unwrap();
            let rep = synth_general(&g, &SynthConfig::new(eps)).unwrap();
            let bound = &(&rep.bound_constant + &r(2.0)) * &rep.epsilon_internal;
            assert!(rep.achieved < bound, "{gate}");
            let back = distance(&g, &evaluate_word(&rep.word, 256));
            assert!((back.to_f64() - rep.achieved.to_f64()).abs() < 1e-3 * eps, "{gate}");
        }
    }

    #[test]
    fn c60_target_is_free() {
        let g = c60().elem(17).to_unitary(P);
        let rep = synth_general(&g, &SynthConfig::new(1e-6)).unwrap();
        assert_eq!(rep.word.tau_count(), 0);
    }

    #[test]
    fn strict_meets_user_eps() {
        let g = named_gate("H", P).unwrap();
        let cfg = SynthConfig { strict: true, ..SynthConfig::new(1e-3) };
        let rep = synth_general(&g, &cfg).unwrap();
        assert!(rep.achieved.to_f64() < 1e-3);
        assert_eq!(rep.route, Route::Sandwich);
    }

    #[test]
    fn golden_slopes() {
        assert!(slope_in_golden_field(&r(std::f64::consts::FRAC_PI_4)));
        assert!(slope_in_golden_field(&r(0.0)));
        assert!(slope_in_golden_field(&r(1.618033988749895f64.atan())));
        assert!(!slope_in_golden_field(&r(std::f64::consts::PI / 8.0)));
        assert!(!slope_in_golden_field(&r(0.3)));
    }

    #[test]
    fn rejects_bad_config() {
        let g = named_gate("H", P).unwrap();
        assert!(synth_general(&g, &SynthConfig::new(0.0)).is_err());
        assert!(synth_general(&g, &SynthConfig::new(0.7)).is_err());
    }
}
