//! Rational-integer number theory: primality, factoring, modular square roots.

use std::sync::LazyLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Effort limits shared by every randomized or potentially slow routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Primes above this are abandoned instead of square-rooted; `u64::MAX` means no limit.
    pub abandon_threshold: u64,
    /// Pollard–Brent iterations per factor before giving up.
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { abandon_threshold: 1_000_000, rho_iterations: 1 << 22, seed: 0 }
    }
}

impl Budget {
    pub fn with_threshold(abandon_threshold: u64) -> Self {
        Budget { abandon_threshold, ..Budget::default() }
    }

    pub(crate) fn rng_for(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

const TRIAL_LIMIT: u64 = 1000;

static SMALL_PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| primes_below(TRIAL_LIMIT));

/// Sieve of Eratosthenes.
pub fn primes_below(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n.max(2)];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i as u64).collect()
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn is_prime_big(n: &BigUint, rng: &mut ChaCha8Rng) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let two = BigUint::from(2u32);
    'witness: for _ in 0..40 {
        let a = random_range_big(rng, &two, &nm1);
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform-ish sample from [lo, hi).
fn random_range_big(rng: &mut ChaCha8Rng, lo: &BigUint, hi: &BigUint) -> BigUint {
    let span = hi - lo;
    let mut bytes = vec![0u8; (span.bits() as usize).div_ceil(8) + 8];
    rng.fill(&mut bytes[..]);
    lo + BigUint::from_bytes_le(&bytes) % span
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One nontrivial factor of the odd composite `n`, or `None` when the budget runs out.
fn brent_u64(n: u64, budget: &Budget, rng: &mut ChaCha8Rng) -> Option<u64> {
    let mut spent = 0u64;
    while spent < budget.rho_iterations {
        let c = rng.random_range(1..n);
        let mut y = rng.random_range(0..n);
        let m = 128u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let f = |v: u64| (mulmod(v, v, n) + c) % n;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget.rho_iterations {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn brent_big(n: &BigUint, budget: &Budget, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    let one = BigUint::one();
    let mut spent = 0u64;
    while spent < budget.rho_iterations {
        let c = random_range_big(rng, &one, n);
        let mut y = random_range_big(rng, &BigUint::zero(), n);
        let f = |v: &BigUint| (v * v + &c) % n;
        let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget.rho_iterations {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += e,
        None => out.push((p, e)),
    }
}

fn split_composite(n: BigUint, budget: &Budget, rng: &mut ChaCha8Rng, out: &mut Vec<(BigUint, u32)>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime_big(&n, rng) {
        push_factor(out, n, 1);
        return Ok(());
    }
    let d = match n.to_u64() {
        Some(small) => brent_u64(small, budget, rng).map(BigUint::from),
        None => brent_big(&n, budget, rng),
    };
    let d = d.ok_or_else(|| Error::Abandoned(format!("no factor of {n} within the rho budget")))?;
    let other = &n / &d;
    split_composite(d, budget, rng, out)?;
    split_composite(other, budget, rng, out)
}

/// Prime factorization of `n > 0`, sorted by prime.
pub fn factor_integer(n: &BigUint, budget: &Budget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut rng = budget.rng_for(0xfac7);
    let mut out = Vec::new();
    let mut rem = n.clone();
    for &p in SMALL_PRIMES.iter() {
        if rem.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        let mut e = 0;
        while (&rem % &pb).is_zero() {
            rem /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    split_composite(rem, budget, &mut rng, &mut out)?;
    out.sort();
    Ok(out)
}

/// Square root of `a` modulo the odd prime `p`.
pub fn tonelli_shanks(a: u64, p: u64, budget: &Budget) -> Result<u64> {
    if p > budget.abandon_threshold {
        return Err(Error::TooLarge { p: p.to_string(), threshold: budget.abandon_threshold });
    }
    let a = a % p;
    if a == 0 {
        return Err(Error::InvalidArgument(format!("{a} is divisible by {p}")));
    }
    if p == 2 {
        return Ok(1);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return Err(Error::NonResidue { a: a.into(), p: p.into() });
    }
    if p % 4 == 3 {
        return Ok(powmod(a, (p + 1) / 4, p));
    }
    let mut rng = budget.rng_for(p);
    let z = loop {
        let z = rng.random_range(2..p);
        if powmod(z, (p - 1) / 2, p) == p - 1 {
            break z;
        }
    };
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Ok(r)
}

/// Square root of `a` modulo the odd prime `p`, any size.
pub fn sqrt_mod(a: &BigUint, p: &BigUint, budget: &Budget) -> Result<BigUint> {
    if let (Some(a), Some(p)) = ((a % p).to_u64(), p.to_u64()) {
        return tonelli_shanks(a, p, budget).map(BigUint::from);
    }
    if budget.abandon_threshold != u64::MAX && *p > BigUint::from(budget.abandon_threshold) {
        return Err(Error::TooLarge { p: p.to_string(), threshold: budget.abandon_threshold });
    }
    let a = a % p;
    let one = BigUint::one();
    let pm1 = p - &one;
    let half = &pm1 >> 1;
    if a.is_zero() {
        return Err(Error::InvalidArgument(format!("{a} is divisible by {p}")));
    }
    if a.modpow(&half, p) != one {
        return Err(Error::NonResidue { a, p: p.clone() });
    }
    if p.bit(1) {
        return Ok(a.modpow(&((p + &one) >> 2), p));
    }
    let mut rng = budget.rng_for(p.iter_u64_digits().fold(0, |h, d| h ^ d));
    let two = BigUint::from(2u32);
    let z = loop {
        let z = random_range_big(&mut rng, &two, p);
        if z.modpow(&half, p) == pm1 {
            break z;
        }
    };
    let s = pm1.trailing_zeros().expect("p > 1");
    let q = &pm1 >> s;
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Ok(r)
}

/// Modular inverse for prime modulus.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_matches_sieve() {
        let primes = primes_below(20_000);
        let mut it = primes.iter().peekable();
        for n in 0..20_000u64 {
            let expect = it.peek() == Some(&&n);
            if expect {
                it.next();
            }
            assert_eq!(is_prime_u64(n), expect, "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn factor_examples() {
        let b = Budget::default();
        let f = |n: u128| {
            factor_integer(&BigUint::from(n), &b)
                .unwrap()
                .into_iter()
                .map(|(p, e)| (p.to_u128().unwrap(), e))
                .collect::<Vec<_>>()
        };
        assert_eq!(f(1), vec![]);
        assert_eq!(f(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(f(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
        let big = 4_294_967_311u128 * 4_294_967_357 * 97;
        assert_eq!(f(big), vec![(97, 1), (4_294_967_311, 1), (4_294_967_357, 1)]);
    }

    #[test]
    fn sqrt_mod_examples() {
        let b = Budget::default();
        let r = tonelli_shanks(4, 7, &b).unwrap();
        assert!(r == 2 || r == 5);
        let r = tonelli_shanks(2, 7, &b).unwrap();
        assert!(r == 3 || r == 4);
        assert!(matches!(tonelli_shanks(3, 7, &b), Err(Error::NonResidue { .. })));
        assert!(matches!(tonelli_shanks(1, 1_000_033, &b), Err(Error::TooLarge { .. })));
        let r = tonelli_shanks(1_000_032, 1_000_033, &Budget::with_threshold(u64::MAX)).unwrap();
        assert_eq!(mulmod(r, r, 1_000_033), 1_000_032);
    }

    #[test]
    fn sqrt_mod_all_residues() {
        let b = Budget::default();
        for &p in primes_below(400).iter().skip(1) {
            for a in 1..p {
                let is_res = (1..p).any(|x| x * x % p == a);
                match tonelli_shanks(a, p, &b) {
                    Ok(r) => {
                        assert!(is_res);
                        assert!(r > 0 && r < p);
                        assert_eq!(r * r % p, a);
                    }
                    Err(Error::NonResidue { .. }) => assert!(!is_res),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn sqrt_mod_large_primes() {
        let b = Budget::with_threshold(u64::MAX);
        let mut rng = b.rng_for(7);
        let one = BigUint::one();
        for p in [(one.clone() << 89) - 1u32, (one.clone() << 127) - 1u32, BigUint::parse_bytes(b"340282366920938463463374607431768211297", 10).unwrap()] {
            assert!(is_prime_big(&p, &mut rng));
            let mut hits = 0;
            for a in 2u32..40 {
                let a = BigUint::from(a);
                match sqrt_mod(&a, &p, &b) {
                    Ok(r) => {
                        assert_eq!(&r * &r % &p, a);
                        hits += 1;
                    }
                    Err(Error::NonResidue { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
            assert!(hits > 5);
        }
    }
}
