//! Golden quaternions, the group C₆₀ = ⟨ρ, σ⟩, the involution τ and exact synthesis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gauss::GaussGoldenInt;
use crate::golden::{eta_valuation, GoldenInt};
use crate::real::Cx;
use crate::unitary::ProjUnitary;

/// x0 + x1·i + x2·j + x3·k over Z[φ].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenQuat {
    pub x: [GoldenInt; 4],
}

impl GoldenQuat {
    pub fn new(x0: GoldenInt, x1: GoldenInt, x2: GoldenInt, x3: GoldenInt) -> Self {
        GoldenQuat { x: [x0, x1, x2, x3] }
    }

    /// From (a, b) coefficient pairs.
    pub fn from_pairs(p: [(i64, i64); 4]) -> Self {
        GoldenQuat { x: p.map(|(a, b)| GoldenInt::new(a, b)) }
    }

    pub fn one() -> Self {
        GoldenQuat::from_pairs([(1, 0), (0, 0), (0, 0), (0, 0)])
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(GoldenInt::is_zero)
    }

    /// Reduced norm x0² + x1² + x2² + x3².
    pub fn nrd(&self) -> GoldenInt {
        self.x.iter().fold(GoldenInt::zero(), |acc, c| &acc + &c.square())
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.x;
        GoldenQuat::new(a.clone(), -b, -c, -d)
    }

    pub fn scale(&self, k: &GoldenInt) -> Self {
        GoldenQuat { x: self.x.clone().map(|c| &c * k) }
    }

    pub fn div_scalar(&self, k: &GoldenInt) -> Option<Self> {
        let [a, b, c, d] = &self.x;
        Some(GoldenQuat::new(a.div_exact(k)?, b.div_exact(k)?, c.div_exact(k)?, d.div_exact(k)?))
    }

    /// Golden gcd of the four coordinates.
    pub fn content(&self) -> GoldenInt {
        self.x
            .iter()
            .filter(|c| !c.is_zero())
            .fold(GoldenInt::zero(), |g, c| g.gcd(c).expect("nonzero operand"))
    }

    /// `self` with its content divided out.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_scalar(&c).expect("content divides every coordinate")
    }

    /// Proportional over Q(φ).
    pub fn projective_eq(&self, o: &GoldenQuat) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        (0..4).all(|i| (i + 1..4).all(|j| &self.x[i] * &o.x[j] == &self.x[j] * &o.x[i]))
            && (0..4).all(|i| self.x[i].is_zero() == o.x[i].is_zero())
    }

    /// [[x0 + x1 i, x2 + x3 i], [−x2 + x3 i, x0 − x1 i]] scaled to SU(2).
    pub fn to_unitary(&self, prec: usize) -> ProjUnitary {
        let e = |c: &GoldenInt| c.embed(crate::golden::Embedding::Plus, prec);
        let alpha = Cx::new(e(&self.x[0]), e(&self.x[1]));
        let beta = Cx::new(e(&self.x[2]), e(&self.x[3]));
        ProjUnitary::from_su2(alpha, beta)
    }

    /// Image in the residue field Z[φ]/(η) ≅ F₅₉, where φ ↦ 34.
    fn mod_eta(&self) -> [u32; 4] {
        self.x.clone().map(|c| golden_mod_eta(&c))
    }
}

fn golden_mod_eta(c: &GoldenInt) -> u32 {
    let m = BigInt::from(ETA_PRIME);
    let v = (c.a.mod_floor(&m) + BigInt::from(PHI_MOD_ETA) * c.b.mod_floor(&m)).mod_floor(&m);
    v.to_u32().expect("reduced")
}

const ETA_PRIME: u32 = 59;
const PHI_MOD_ETA: u32 = 34;

fn quat_mul_mod(a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
    let p = ETA_PRIME as i64;
    let [a0, a1, a2, a3] = a.map(i64::from);
    let [b0, b1, b2, b3] = b.map(i64::from);
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
    .map(|v| v.rem_euclid(p) as u32)
}

impl Mul<&GoldenQuat> for &GoldenQuat {
    type Output = GoldenQuat;
    fn mul(self, o: &GoldenQuat) -> GoldenQuat {
        let [a0, a1, a2, a3] = &self.x;
        let [b0, b1, b2, b3] = &o.x;
        GoldenQuat::new(
            &(&(&(a0 * b0) - &(a1 * b1)) - &(a2 * b2)) - &(a3 * b3),
            &(&(&(a0 * b1) + &(a1 * b0)) + &(a2 * b3)) - &(a3 * b2),
            &(&(&(a0 * b2) - &(a1 * b3)) + &(a2 * b0)) + &(a3 * b1),
            &(&(&(a0 * b3) + &(a1 * b2)) - &(a2 * b1)) + &(a3 * b0),
        )
    }
}

impl Add<&GoldenQuat> for &GoldenQuat {
    type Output = GoldenQuat;
    fn add(self, o: &GoldenQuat) -> GoldenQuat {
        GoldenQuat { x: std::array::from_fn(|i| &self.x[i] + &o.x[i]) }
    }
}

impl Sub<&GoldenQuat> for &GoldenQuat {
    type Output = GoldenQuat;
    fn sub(self, o: &GoldenQuat) -> GoldenQuat {
        GoldenQuat { x: std::array::from_fn(|i| &self.x[i] - &o.x[i]) }
    }
}

impl Neg for &GoldenQuat {
    type Output = GoldenQuat;
    fn neg(self) -> GoldenQuat {
        GoldenQuat { x: self.x.clone().map(|c| -c) }
    }
}

impl fmt::Debug for GoldenQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}, {:?}, {:?}]", self.x[0], self.x[1], self.x[2], self.x[3])
    }
}

impl fmt::Display for GoldenQuat {
    /// Four `a,b` pairs separated by spaces, the format accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.x.iter().map(|c| format!("{},{}", c.a, c.b)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GoldenQuat {
    type Err = Error;

    /// `a0,b0 a1,b1 a2,b2 a3,b3` (semicolons also separate pairs).
    fn from_str(s: &str) -> Result<Self> {
        let pairs: Vec<&str> = s.split([' ', ';', '\t', '\n']).filter(|t| !t.is_empty()).collect();
        if pairs.len() != 4 {
            return Err(Error::Parse(format!("expected 4 coordinate pairs, found {}", pairs.len())));
        }
        let mut x = Vec::with_capacity(4);
        for p in pairs {
            let (a, b) = p.split_once(',').ok_or_else(|| Error::Parse(format!("expected a,b but found {p:?}")))?;
            let a: BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad integer {a:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad integer {b:?}")))?;
            x.push(GoldenInt::new(a, b));
        }
        Ok(GoldenQuat { x: x.try_into().expect("four coordinates") })
    }
}

/// A generator of C₆₀.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Rho,
    Sigma,
}

impl Gen {
    pub fn symbol(self) -> char {
        match self {
            Gen::Rho => 'r',
            Gen::Sigma => 's',
        }
    }

    /// Z[φ] lift: ρ ↦ 1 + i + j + k, σ ↦ i + (φ−1)j + φk.
    pub fn lift(self) -> GoldenQuat {
        match self {
            Gen::Rho => GoldenQuat::from_pairs([(1, 0), (1, 0), (1, 0), (1, 0)]),
            Gen::Sigma => GoldenQuat::from_pairs([(0, 0), (1, 0), (-1, 1), (0, 1)]),
        }
    }
}

/// Z[φ] lift of τ: (2+φ)i + j + k, of reduced norm η.
pub fn tau_lift() -> GoldenQuat {
    GoldenQuat::from_pairs([(0, 0), (2, 1), (1, 0), (1, 0)])
}

/// ξ₀ τ ξ₁ τ … τ ξₙ with every ξᵢ a word in ρ, σ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateWord {
    segments: Vec<Vec<Gen>>,
}

impl GateWord {
    pub fn new(segments: Vec<Vec<Gen>>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidArgument("a word has at least one segment".into()));
        }
        Ok(GateWord { segments })
    }

    pub fn identity() -> Self {
        GateWord { segments: vec![Vec::new()] }
    }

    pub fn segments(&self) -> &[Vec<Gen>] {
        &self.segments
    }

    pub fn tau_count(&self) -> usize {
        self.segments.len() - 1
    }

    /// `self` followed by `other`, with the touching segments merged and shortened.
    pub fn concat(&self, other: &GateWord) -> GateWord {
        let mut segments = self.segments.clone();
        let mut rest = other.segments.iter();
        let last = segments.last_mut().expect("nonempty");
        last.extend(rest.next().expect("nonempty"));
        *last = c60().shortest(last);
        segments.extend(rest.cloned());
        GateWord { segments }
    }

    /// Exact product of the generator lifts, primitive.
    pub fn to_quat(&self) -> GoldenQuat {
        let tau = tau_lift();
        let mut acc = GoldenQuat::one();
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                acc = (&acc * &tau).primitive();
            }
            for g in seg {
                acc = (&acc * &g.lift()).primitive();
            }
        }
        acc
    }

    /// Parenthesized segment strings, e.g. `["rs", "", "srs"]`.
    pub fn segment_strings(&self) -> Vec<String> {
        self.segments.iter().map(|s| s.iter().map(|g| g.symbol()).collect()).collect()
    }
}

impl fmt::Display for GateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segment_strings().into_iter().map(|s| format!("({s})")).collect();
        write!(f, "{}", parts.join("t"))
    }
}

impl FromStr for GateWord {
    type Err = Error;

    /// Letters `r`, `s`, `t` (or ρ, σ, τ); parentheses and whitespace are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut segments = vec![Vec::new()];
        for c in s.chars() {
            match c {
                'r' | 'ρ' => segments.last_mut().expect("nonempty").push(Gen::Rho),
                's' | 'σ' => segments.last_mut().expect("nonempty").push(Gen::Sigma),
                't' | 'τ' => segments.push(Vec::new()),
                '(' | ')' => {}
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("unexpected character {c:?} in word"))),
            }
        }
        Ok(GateWord { segments })
    }
}

/// The 60 projective classes of ⟨ρ, σ⟩ with BFS-shortest words.
#[derive(Clone, Debug)]
pub struct C60Table {
    elems: Vec<GoldenQuat>,
    words: Vec<Vec<Gen>>,
    inverse: Vec<usize>,
    // (c·τ) mod η, for the peeling test.
    ctau_mod_eta: Vec<[u32; 4]>,
}

impl C60Table {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elem(&self, i: usize) -> &GoldenQuat {
        &self.elems[i]
    }

    pub fn word(&self, i: usize) -> &[Gen] {
        &self.words[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn find(&self, q: &GoldenQuat) -> Option<usize> {
        self.elems.iter().position(|e| e.projective_eq(q))
    }

    /// Shortest word for the element a {ρ, σ}-word represents.
    pub fn shortest(&self, w: &[Gen]) -> Vec<Gen> {
        let q = w.iter().fold(GoldenQuat::one(), |acc, g| (&acc * &g.lift()).primitive());
        let i = self.find(&q).expect("C60 is closed");
        self.words[i].clone()
    }
}

/// Breadth-first closure of {ρ, σ}.
pub fn generate_c60() -> Result<C60Table> {
    let gens = [Gen::Rho, Gen::Sigma];
    let mut elems = vec![GoldenQuat::one()];
    let mut words: Vec<Vec<Gen>> = vec![Vec::new()];
    let mut head = 0;
    while head < elems.len() {
        for g in gens {
            let p = (&elems[head] * &g.lift()).primitive();
            if !elems.iter().any(|e| e.projective_eq(&p)) {
                let mut w = words[head].clone();
                w.push(g);
                elems.push(p);
                words.push(w);
                if elems.len() > 60 {
                    return Err(Error::GroupClosure(elems.len()));
                }
            }
        }
        head += 1;
    }
    if elems.len() != 60 {
        return Err(Error::GroupClosure(elems.len()));
    }
    let is_scalar = |q: &GoldenQuat| q.x[1..].iter().all(GoldenInt::is_zero);
    let inverse = elems
        .iter()
        .map(|a| elems.iter().position(|b| is_scalar(&(a * b))).expect("group has inverses"))
        .collect();
    let tau = tau_lift();
    let ctau_mod_eta = elems.iter().map(|c| (c * &tau).mod_eta()).collect();
    Ok(C60Table { elems, words, inverse, ctau_mod_eta })
}

static C60: LazyLock<C60Table> = LazyLock::new(|| generate_c60().expect("C60 closure"));

/// The shared C₆₀ table.
pub fn c60() -> &'static C60Table {
    &C60
}

/// η-adic valuation of the reduced norm of the primitive part.
pub fn tau_count(q: &GoldenQuat) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::InvalidArgument("zero quaternion".into()));
    }
    let n = q.primitive().nrd();
    let k = eta_valuation(&n);
    let mut rem = n.div_exact(&GoldenInt::eta_pow(k)).expect("valuation");
    let four = GoldenInt::from_int(4);
    while let Some(r) = rem.div_exact(&four) {
        rem = r;
    }
    if !rem.is_unit() {
        return Err(Error::NotInLattice);
    }
    Ok(k as usize)
}

/// Factors a lattice element into C₆₀ segments separated by τ.
pub fn exact_synthesize(q: &GoldenQuat) -> Result<GateWord> {
    let table = c60();
    let k = tau_count(q)?;
    let eta = GoldenInt::eta();
    let tau = tau_lift();
    let mut cur = q.primitive();
    let mut tail = Vec::with_capacity(k);
    for depth in (1..=k).rev() {
        let r = cur.mod_eta();
        let mut hits = (0..table.len()).filter(|&i| quat_mul_mod(&r, &table.ctau_mod_eta[i]) == [0; 4]);
        let c = hits.next().ok_or(Error::NoPeelingCandidate(depth))?;
        let extra = hits.count();
        if extra > 0 {
            return Err(Error::AmbiguousPeel { depth, count: extra + 1 });
        }
        let seg = table.words[table.inverse[c]].clone();
        if depth != k && seg.is_empty() {
            return Err(Error::NotInLattice);
        }
        let prod = &(&cur * &table.elems[c]) * &tau;
        cur = prod.div_scalar(&eta).expect("peeling test guarantees η-divisibility").primitive();
        tail.push(seg);
    }
    let head = table.find(&cur).ok_or(Error::NoPeelingCandidate(0))?;
    let mut segments = vec![table.words[head].clone()];
    segments.extend(tail.into_iter().rev());
    GateWord::new(segments)
}

/// Numeric value of a word, each generator scaled to SU(2).
pub fn evaluate_word(w: &GateWord, prec: usize) -> ProjUnitary {
    let rho = Gen::Rho.lift().to_unitary(prec);
    let sigma = Gen::Sigma.lift().to_unitary(prec);
    let tau = tau_lift().to_unitary(prec);
    let mut acc = ProjUnitary::identity(prec);
    for (i, seg) in w.segments().iter().enumerate() {
        if i > 0 {
            acc = acc.mul(&tau);
        }
        for g in seg {
            acc = acc.mul(match g {
                Gen::Rho => &rho,
                Gen::Sigma => &sigma,
            });
        }
    }
    acc
}

/// A 2×2 matrix over Z[i,φ], compared up to Q(i,φ) scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMat(pub [[GaussGoldenInt; 2]; 2]);

impl ExactMat {
    pub fn from_quat(q: &GoldenQuat) -> Self {
        let [x0, x1, x2, x3] = &q.x;
        let c = |re: &GoldenInt, im: &GoldenInt| GaussGoldenInt::new(re.clone(), im.clone());
        ExactMat([[c(x0, x1), c(x2, x3)], [c(&-x2, x3), c(x0, &-x1)]])
    }

    /// [[1, 1], [i, −i]]
    pub fn rho() -> Self {
        let (one, i) = (GaussGoldenInt::one(), GaussGoldenInt::i());
        ExactMat([[one.clone(), one], [i.clone(), -&i]])
    }

    /// [[1, φ − i/φ], [φ + i/φ, −1]], with 1/φ = φ − 1.
    pub fn sigma() -> Self {
        let one = GaussGoldenInt::one();
        ExactMat([
            [one.clone(), GaussGoldenInt::from_coords(0, 1, 1, -1)],
            [GaussGoldenInt::from_coords(0, 1, -1, 1), -&one],
        ])
    }

    /// [[2+φ, 1−i], [1+i, −2−φ]]
    pub fn tau() -> Self {
        ExactMat([
            [GaussGoldenInt::from_coords(2, 1, 0, 0), GaussGoldenInt::from_coords(1, 0, -1, 0)],
            [GaussGoldenInt::from_coords(1, 0, 1, 0), GaussGoldenInt::from_coords(-2, -1, 0, 0)],
        ])
    }

    pub fn identity() -> Self {
        let (one, zero) = (GaussGoldenInt::one(), GaussGoldenInt::zero());
        ExactMat([[one.clone(), zero.clone()], [zero, one]])
    }

    pub fn mul(&self, o: &ExactMat) -> ExactMat {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        ExactMat([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    fn flat(&self) -> [&GaussGoldenInt; 4] {
        [&self.0[0][0], &self.0[0][1], &self.0[1][0], &self.0[1][1]]
    }

    /// Proportional over Q(i,φ), by cross-multiplication.
    pub fn projective_eq(&self, o: &ExactMat) -> bool {
        let (a, b) = (self.flat(), o.flat());
        (0..4).all(|i| a[i].is_zero() == b[i].is_zero())
            && (0..4).all(|i| (i + 1..4).all(|j| a[i] * b[j] == a[j] * b[i]))
            && a.iter().any(|x| !x.is_zero())
    }
}
