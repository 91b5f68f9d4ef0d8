//! Exact rational scalars and the integer combinatorics used throughout.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_biguint(n: &BigUint) -> Scalar {
    Scalar::from_integer(BigInt::from(n.clone()))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-1.25"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Scalar::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty() {
            return Err(bad());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mantissa: BigInt = format!("{}{}", if digits.is_empty() { "0" } else { digits }, frac)
            .parse()
            .map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Scalar::new(mantissa, denom);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Scalar::from_integer(n))
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `lcm(1, 2, ..., n)`; equals 1 for `n <= 1`.
pub fn lcm_upto(n: u64) -> BigUint {
    lcm_upto_factored(n)
        .into_iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(BigUint::from(p), e as usize))
}

/// Prime factorisation of `lcm(1..=n)` as `(p, e)` pairs with `p^e <= n < p^(e+1)`.
pub fn lcm_upto_factored(n: u64) -> Vec<(u64, u32)> {
    primes_upto(n)
        .into_iter()
        .map(|p| {
            let mut e = 0u32;
            let mut pk = 1u64;
            while pk.saturating_mul(p) <= n {
                pk *= p;
                e += 1;
            }
            (p, e)
        })
        .collect()
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

/// Renders a factorisation as `2^3 * 3^2 * 5 * 7`.
pub fn format_factorization(factors: &[(u64, u32)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

pub(crate) fn pow(x: &Scalar, e: u32) -> Scalar {
    num_traits::pow(x.clone(), e as usize)
}
