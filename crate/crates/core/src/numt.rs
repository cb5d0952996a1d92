//! Integer primitives: gcd, lcm, modular exponentiation, trial-division
//! factorization and Euler's phi function.

use std::fmt;

use num_traits::{PrimInt, Unsigned};

use crate::error::{Error, Result};
use crate::scalar::Residue;

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization<R> {
    pairs: Vec<(R, u32)>,
}

impl<R: Residue> Factorization<R> {
    pub fn pairs(&self) -> &[(R, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = R> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Exponent of `p`, zero when `p` does not appear.
    pub fn exponent_of(&self, p: R) -> u32 {
        self.pairs.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Option<R> {
        self.pairs.iter().try_fold(R::one(), |acc, &(p, e)| {
            checked_pow(p, e).and_then(|pe| acc.checked_mul(&pe))
        })
    }
}

impl<R: Residue> fmt::Display for Factorization<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Greatest common divisor. `gcd(a, 0) = a`; `gcd(0, 0)` is a domain error.
pub fn gcd<R: Residue>(a: R, b: R) -> Result<R> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::domain("gcd(0, 0) is undefined"));
    }
    Ok(gcd_unchecked(a, b))
}

pub(crate) fn gcd_unchecked<R: PrimInt>(mut a: R, mut b: R) -> R {
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple of two positive integers.
pub fn lcm<R: Residue>(a: R, b: R) -> Result<R> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain(format!("lcm requires positive arguments, got ({a}, {b})")));
    }
    (a / gcd_unchecked(a, b))
        .checked_mul(&b)
        .ok_or_else(|| Error::Overflow(format!("lcm({a}, {b})")))
}

/// `a * b mod n` for reduced `a, b < n`, without overflow.
pub fn mul_mod<R: Residue>(a: R, b: R, n: R) -> R {
    if let Some(prod) = a.checked_mul(&b) {
        return prod % n;
    }
    // a, b < n, so a + a cannot overflow once written as a - (n - a).
    let add_mod = |x: R, y: R| if x >= n - y { x - (n - y) } else { x + y };
    let (mut acc, mut base, mut k) = (R::zero(), a, b);
    while !k.is_zero() {
        if k & R::one() == R::one() {
            acc = add_mod(acc, base);
        }
        base = add_mod(base, base);
        k = k >> 1;
    }
    acc
}

/// `base^exp mod n` by square-and-multiply. Requires `n >= 2` and `base < n`.
pub fn mod_pow<R: Residue, E: PrimInt + Unsigned>(base: R, exp: E, n: R) -> Result<R> {
    let two = R::one() + R::one();
    if n < two {
        return Err(Error::domain(format!("modulus must be at least 2, got {n}")));
    }
    if base >= n {
        return Err(Error::domain(format!("base {base} is not reduced modulo {n}")));
    }
    Ok(mod_pow_unchecked(base, exp, n))
}

pub(crate) fn mod_pow_unchecked<R: Residue, E: PrimInt + Unsigned>(base: R, mut exp: E, n: R) -> R {
    let mut acc = R::one() % n;
    let mut sq = base;
    while !exp.is_zero() {
        if exp & E::one() == E::one() {
            acc = mul_mod(acc, sq, n);
        }
        exp = exp >> 1;
        if !exp.is_zero() {
            sq = mul_mod(sq, sq, n);
        }
    }
    acc
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow<R: Residue>(base: R, exp: u32) -> Option<R> {
    (0..exp).try_fold(R::one(), |acc, _| acc.checked_mul(&base))
}

/// Complete factorization by trial division. `factorize(1)` is empty.
pub fn factorize<R: Residue>(n: R) -> Result<Factorization<R>> {
    if n.is_zero() {
        return Err(Error::domain("cannot factorize 0"));
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut d = R::one() + R::one();
    while d <= rest / d {
        if (rest % d).is_zero() {
            let mut e = 0;
            while (rest % d).is_zero() {
                rest = rest / d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d = d + R::one();
    }
    if rest > R::one() {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

pub fn is_prime<R: Residue>(n: R) -> bool {
    let two = R::one() + R::one();
    if n < two {
        return false;
    }
    let mut d = two;
    while d <= n / d {
        if (n % d).is_zero() {
            return false;
        }
        d = d + R::one();
    }
    true
}

/// Exponent of the largest power of `p` dividing `m`. Requires `p >= 2`, `m >= 1`.
pub fn valuation<R: Residue>(p: R, mut m: R) -> u32 {
    debug_assert!(p > R::one() && !m.is_zero());
    let mut b = 0;
    while (m % p).is_zero() {
        m = m / p;
        b += 1;
    }
    b
}

/// Euler's phi via the product formula `n / (p1...pr) * (p1 - 1)...(pr - 1)`.
/// `euler_phi(1) = 1`.
pub fn euler_phi<R: Residue>(n: R) -> Result<R> {
    let fact = factorize(n)?;
    let radical = fact.primes().fold(R::one(), |acc, p| acc * p);
    Ok(fact.primes().fold(n / radical, |acc, p| acc * (p - R::one())))
}
