//! Exponent vectors and graded-lexicographic monomial bases of symmetric powers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_1^{a_1} ... x_d^{a_d}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExpVec(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        ExpVec(vec![0; dim])
    }

    pub fn unit(dim: usize, k: usize) -> Self {
        let mut e = vec![0; dim];
        e[k] = 1;
        ExpVec(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when every exponent of `other` is at most that of `self`.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }

    /// Variable indices with multiplicity, e.g. `(2,0,1)` gives `[0,0,2]`.
    pub fn variables(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| std::iter::repeat_n(k, a as usize))
            .collect()
    }

    /// Extends the vector with trailing zero exponents.
    pub fn padded(&self, dim: usize) -> ExpVec {
        let mut e = self.0.clone();
        e.resize(dim, 0);
        ExpVec(e)
    }
}

/// Graded lexicographic order: higher degree first, then lexicographically
/// larger exponent vectors first. Sorting ascending therefore lists
/// `x1^2, x1 x2, x2^2`.
impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ExpVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty exponent vector".into()));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent vector {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ExpVec)
    }
}

/// `dim S^N V = C(d + N - 1, N)` for `d = dim V`.
pub fn sym_dim(d: usize, n: usize) -> usize {
    assert!(d >= 1, "sym_dim needs d >= 1");
    // Small enough at desk scale to stay in machine integers.
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        acc = acc * (d as u128 + i) / (i + 1);
    }
    acc as usize
}

/// All exponent vectors of length `d` and degree `n` in graded-lex order.
pub fn monomial_basis(d: usize, n: usize) -> Vec<ExpVec> {
    assert!(d >= 1, "monomial_basis needs d >= 1");
    let mut out = Vec::with_capacity(sym_dim(d, n));
    let mut current = vec![0u32; d];
    fill(&mut current, 0, n as u32, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<ExpVec>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(ExpVec(current.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// Monomial basis of one symmetric power together with a reverse lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    pub dim: usize,
    pub degree: usize,
    monomials: Vec<ExpVec>,
    index: HashMap<ExpVec, usize>,
}

impl Basis {
    pub fn new(dim: usize, degree: usize) -> Self {
        let monomials = monomial_basis(dim, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Basis {
            dim,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[ExpVec] {
        &self.monomials
    }

    pub fn position(&self, e: &ExpVec) -> Option<usize> {
        self.index.get(e).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_basis(d: usize, n: usize) -> Vec<ExpVec> {
        // Every vector in {0..=n}^d with the right degree, sorted by the order.
        let mut all = Vec::new();
        let total = (n + 1).pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let mut e = Vec::with_capacity(d);
            for _ in 0..d {
                e.push((c % (n + 1)) as u32);
                c /= n + 1;
            }
            let e = ExpVec(e);
            if e.degree() as usize == n {
                all.push(e);
            }
        }
        all.sort();
        all
    }

    #[test]
    fn sym_dim_examples() {
        assert_eq!(sym_dim(1, 7), 1);
        assert_eq!(sym_dim(2, 2), 3);
        assert_eq!(sym_dim(3, 2), 6);
        assert_eq!(sym_dim(3, 0), 1);
    }

    #[test]
    fn basis_examples() {
        assert_eq!(monomial_basis(1, 3), vec![ExpVec::new(vec![3])]);
        assert_eq!(
            monomial_basis(2, 1),
            vec![ExpVec::new(vec![1, 0]), ExpVec::new(vec![0, 1])]
        );
        assert_eq!(
            monomial_basis(2, 2),
            vec![
                ExpVec::new(vec![2, 0]),
                ExpVec::new(vec![1, 1]),
                ExpVec::new(vec![0, 2])
            ]
        );
    }

    #[test]
    fn basis_matches_enumeration_oracle() {
        for d in 1..=4 {
            for n in 0..=6 {
                let basis = monomial_basis(d, n);
                assert_eq!(basis.len(), sym_dim(d, n), "d={d} n={n}");
                assert_eq!(basis, brute_force_basis(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn exponent_strings() {
        let e: ExpVec = "2,0,1".parse().unwrap();
        assert_eq!(e.to_string(), "2,0,1");
        assert_eq!(e.variables(), vec![0, 0, 2]);
        assert!("2,x".parse::<ExpVec>().is_err());
        assert!("".parse::<ExpVec>().is_err());
    }
}
