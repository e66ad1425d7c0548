//! Approximating diagonal targets u(θ) by lattice elements of reduced norm η^m.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::golden::{Budget, Embedding, GoldenInt};
use crate::icosian::{c60, evaluate_word, exact_synthesize, GateWord, GoldenQuat};
use crate::lattice2d::{GoldenBox, GoldenBoxPoints};
use crate::real::{precision_for_eps, Real};
use crate::sots::sots_exact;
use crate::unitary::{distance, u_of_theta, ProjUnitary};

/// One instance of the x₁/x₀ search at a fixed exponent m.
#[derive(Clone, Debug)]
pub struct DiagonalProblem {
    pub theta: Real,
    pub epsilon: Real,
    pub m_exp: u32,
}

impl DiagonalProblem {
    /// Validates ε and folds θ into [−π/2, π/2).
    pub fn new(theta: &Real, epsilon: &Real, m_exp: u32) -> Result<Self> {
        if !epsilon.is_positive() || *epsilon >= Real::one(epsilon.prec()) {
            return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1), got {}", epsilon.to_f64())));
        }
        Ok(DiagonalProblem { theta: fold_half_turn(theta), epsilon: epsilon.clone(), m_exp })
    }

    fn prec(&self) -> usize {
        self.theta.prec().max(self.epsilon.prec())
    }
}

/// θ mod π, in [−π/2, π/2).
fn fold_half_turn(theta: &Real) -> Real {
    let p = theta.prec();
    let pi = Real::pi(p);
    let half = &pi / &Real::from_i64(2, p);
    let n = (&(theta + &half) / &pi).floor_int();
    (theta - &(&Real::from_bigint(&n, p) * &pi)).with_prec(p)
}

/// Embedding-side quantities shared by the x₁ and x₀ problems.
struct Frame {
    sin: Real,
    cos: Real,
    // η^{m/2}, η^m and their conjugates
    half: Real,
    full: Real,
    half_bar: Real,
    full_bar: Real,
    // η^{m/2}(1 − ε²)
    inner: Real,
    phi: Real,
    phibar: Real,
}

impl Frame {
    fn new(p: &DiagonalProblem) -> Frame {
        let prec = p.prec();
        let eta_m = GoldenInt::eta_pow(p.m_exp);
        let full = eta_m.embed(Embedding::Plus, prec);
        let full_bar = eta_m.embed(Embedding::Minus, prec);
        let half = full.sqrt();
        let inner = &half * &(&Real::one(prec) - &p.epsilon.square());
        let phi = Real::phi(prec);
        Frame {
            sin: p.theta.sin(),
            cos: p.theta.cos(),
            half_bar: full_bar.sqrt(),
            half,
            full,
            full_bar,
            inner,
            phibar: &Real::one(prec) - &phi,
            phi,
        }
    }
}

/// Candidates x₁ whose plus-embedding lies in the ε-band around η^{m/2}(1 − ε²) sin θ.
pub fn solve_x1(p: &DiagonalProblem) -> Result<GoldenBoxPoints> {
    let f = Frame::new(p);
    let prec = p.prec();
    let two = Real::from_i64(2, prec);
    let eps = &p.epsilon;
    let center = &f.inner * &f.sin;
    let radius = &(&(&f.half * &f.cos.abs()) * &(&two - &eps.square()).sqrt()) * eps;
    let mut lo = (&center - &radius).max(-&f.half);
    let mut hi = (&center + &radius).min(f.half.clone());
    if f.sin.is_positive() {
        hi = hi.min(&f.inner / &f.sin);
    } else if f.sin.is_negative() {
        lo = lo.max(&f.inner / &f.sin);
    }
    GoldenBox { plus: (lo, hi), minus: (-&f.half_bar, f.half_bar.clone()) }.points()
}

fn x0_box(p: &DiagonalProblem, f: &Frame, x1: &GoldenInt) -> GoldenBox {
    let zero = Real::zero(p.prec());
    let (y, yb) = (x1.embed_with(&f.phi), x1.embed_with(&f.phibar));
    let r = (&f.full - &y.square()).max(zero.clone()).sqrt();
    let rb = (&f.full_bar - &yb.square()).max(zero).sqrt();
    let ys = &y * &f.sin;
    let (mut lo, mut hi) = (-&r, r);
    if f.cos.is_positive() {
        lo = lo.max(&(&f.inner - &ys) / &f.cos);
        hi = hi.min(&(&f.half - &ys) / &f.cos);
    }
    GoldenBox { plus: (lo, hi), minus: (-&rb, rb) }
}

/// Candidates x₀ completing `x1` to x₀ cos θ + x₁ sin θ ≥ η^{m/2}(1 − ε²) inside the norm ball.
pub fn solve_x0(p: &DiagonalProblem, x1: &GoldenInt) -> Result<GoldenBoxPoints> {
    x0_box(p, &Frame::new(p), x1).points()
}

/// (x₂, x₃) with x₀² + x₁² + x₂² + x₃² = η^m.
pub fn solve_x23(m_exp: u32, x0: &GoldenInt, x1: &GoldenInt, budget: &Budget) -> Result<(GoldenInt, GoldenInt)> {
    let eta_m = GoldenInt::eta_pow(m_exp);
    let residual = &(&eta_m - &x0.square()) - &x1.square();
    let (x2, x3) = sots_exact(&residual, budget)?;
    if &(&(&x0.square() + &x1.square()) + &x2.square()) + &x3.square() != eta_m {
        return Err(Error::SotsFail);
    }
    Ok((x2, x3))
}

/// Search limits for [`synth_diagonal_with`].
#[derive(Clone, Debug)]
pub struct DiagonalConfig {
    /// Largest m tried; `None` means ⌈log₅₉(1/ε³)⌉ + 12.
    pub m_cap: Option<u32>,
    pub budget: Budget,
}

impl Default for DiagonalConfig {
    fn default() -> Self {
        DiagonalConfig { m_cap: None, budget: synthesis_budget(0) }
    }
}

/// The factoring budget used by the synthesizers: no abandonment threshold.
pub fn synthesis_budget(seed: u64) -> Budget {
    Budget { abandon_threshold: u64::MAX, rho_iterations: 1 << 20, seed }
}

/// Default cap on m for accuracy ε.
pub fn default_m_cap(eps: f64) -> u32 {
    (3.0 * (1.0 / eps).ln() / 59f64.ln()).ceil().max(0.0) as u32 + 12
}

#[derive(Clone, Debug)]
pub struct DiagonalSynthesis {
    pub quat: GoldenQuat,
    pub word: GateWord,
    pub achieved: Real,
    pub m: u32,
    /// SOTS attempts that gave up on a large factor.
    pub abandoned: usize,
    /// (x₀, x₁) pairs handed to the SOTS step.
    pub attempts: usize,
    pub elapsed: Duration,
}

/// Approximates u(θ) to within ε.
pub fn synth_diagonal(theta: &Real, eps: &Real) -> Result<DiagonalSynthesis> {
    synth_diagonal_with(theta, eps, &DiagonalConfig::default(), &mut |_, _| true)
}

/// As [`synth_diagonal`], returning the first candidate with distance below ε that `accept` also takes.
pub fn synth_diagonal_with(
    theta: &Real,
    eps: &Real,
    cfg: &DiagonalConfig,
    accept: &mut dyn FnMut(&GateWord, &ProjUnitary) -> bool,
) -> Result<DiagonalSynthesis> {
    let start = Instant::now();
    let prec = theta.prec().max(precision_for_eps(eps.to_f64()));
    let theta = theta.with_prec(prec);
    let eps = eps.with_prec(prec);
    let target = u_of_theta(&theta);
    let (reduced, prefix) = quarter_turn_reduce(&fold_half_turn(&theta));
    let cap = cfg.m_cap.unwrap_or_else(|| default_m_cap(eps.to_f64()));
    let mut abandoned = 0;
    let mut attempts = 0;
    for m in 0..=cap {
        let prob = DiagonalProblem::new(&reduced, &eps, m)?;
        let frame = Frame::new(&prob);
        for x1 in solve_x1(&prob)? {
            for x0 in x0_box(&prob, &frame, &x1).points()? {
                attempts += 1;
                let (x2, x3) = match solve_x23(m, &x0, &x1, &cfg.budget) {
                    Ok(v) => v,
                    Err(e) if e.is_abandonment() => {
                        abandoned += 1;
                        continue;
                    }
                    Err(Error::SotsFail) => continue,
                    Err(e) => return Err(e),
                };
                let quat = GoldenQuat::new(x0.clone(), x1.clone(), x2, x3);
                let tail = match exact_synthesize(&quat) {
                    Ok(w) => w,
                    Err(Error::NoPeelingCandidate(_) | Error::AmbiguousPeel { .. } | Error::NotInLattice) => continue,
                    Err(e) => return Err(e),
                };
                let word = prefix.concat(&tail);
                let value = evaluate_word(&word, prec);
                let achieved = distance(&target, &value);
                if achieved >= eps || !accept(&word, &value) {
                    continue;
                }
                return Ok(DiagonalSynthesis {
                    quat: word.to_quat(),
                    word,
                    achieved,
                    m,
                    abandoned,
                    attempts,
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    Err(Error::BudgetExhausted(format!("no diagonal approximation with m ≤ {cap}")))
}

/// Moves θ into [−π/4, π/4] by a factor of u(π/2) ∈ C₆₀, returned as a word.
fn quarter_turn_reduce(theta: &Real) -> (Real, GateWord) {
    let p = theta.prec();
    let quarter = &Real::pi(p) / &Real::from_i64(4, p);
    let i = GoldenQuat::from_pairs([(0, 0), (1, 0), (0, 0), (0, 0)]);
    let table = c60();
    let iw = GateWord::new(vec![table.word(table.find(&i).expect("i is in C60")).to_vec()]).expect("one segment");
    let half = &quarter + &quarter;
    if *theta > quarter {
        (theta - &half, iw)
    } else if *theta < -&quarter {
        (theta + &half, iw)
    } else {
        (theta.clone(), GateWord::identity())
    }
}
