//! Homogeneous elements of a symmetric power `S^N V`.
//!
//! The symmetric algebra is taken as the quotient of the tensor algebra, so
//! `v^{⊗N}` is identified with the polynomial `(v_1 x_1 + ... + v_d x_d)^N`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{dim_err, Error, Result};
use crate::matrix::ScalarMatrix;
use crate::monomial::{Basis, ExpVec};
use crate::scalar::{format_scalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    dim: usize,
    degree: usize,
    terms: BTreeMap<ExpVec, Scalar>,
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly(d={}, N={}: ", self.dim, self.degree)?;
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*x^({})", format_scalar(c), e)?;
        }
        f.write_str(")")
    }
}

impl SymPoly {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim >= 1, "SymPoly needs dim >= 1");
        SymPoly {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExpVec, Scalar)>,
    {
        if dim == 0 {
            return dim_err("polynomial ring needs at least one variable");
        }
        let mut p = SymPoly::zero(dim, degree);
        for (e, c) in terms {
            if e.dim() != dim {
                return dim_err(format!("exponent {e} has length {}, expected {dim}", e.dim()));
            }
            if e.degree() as usize != degree {
                return Err(Error::Degree(format!("exponent {e} has degree {}, expected {degree}", e.degree())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn monomial(e: ExpVec, coeff: Scalar) -> Self {
        let dim = e.dim();
        let degree = e.degree() as usize;
        let mut p = SymPoly::zero(dim, degree);
        p.add_term(e, coeff);
        p
    }

    /// The constant polynomial `c` in `S^0`.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(ExpVec::zero(dim), c)
    }

    /// The linear form `sum_k v_k x_k`.
    pub fn linear(v: &[Scalar]) -> Self {
        let dim = v.len();
        let mut p = SymPoly::zero(dim, 1);
        for (k, c) in v.iter().enumerate() {
            p.add_term(ExpVec::unit(dim, k), c.clone());
        }
        p
    }

    /// `(sum_k v_k x_k)^r`, the image of `v^{⊗r}` in `S^r V`.
    pub fn linear_power(v: &[Scalar], r: usize) -> Self {
        let l = SymPoly::linear(v);
        (0..r).fold(SymPoly::constant(v.len(), Scalar::one()), |acc, _| acc.mul(&l))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExpVec) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, e: ExpVec, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_same_space(&self, other: &SymPoly) -> Result<()> {
        if self.dim != other.dim {
            return dim_err(format!("dimensions {} and {}", self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!("degrees {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> SymPoly {
        let mut out = SymPoly::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        out
    }

    /// Product in the symmetric algebra. Panics on a dimension mismatch;
    /// use [`SymPoly::try_mul`] for fallible input.
    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        self.try_mul(other).expect("dimension mismatch in SymPoly::mul")
    }

    pub fn try_mul(&self, other: &SymPoly) -> Result<SymPoly> {
        if self.dim != other.dim {
            return dim_err(format!("dimensions {} and {}", self.dim, other.dim));
        }
        let mut out = SymPoly::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_k`.
    pub fn partial(&self, k: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.dim, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            let a = e.exponents()[k];
            if a == 0 {
                continue;
            }
            let mut ex = e.exponents().to_vec();
            ex[k] -= 1;
            out.add_term(ExpVec::new(ex), c * Scalar::from_integer(BigInt::from(a)));
        }
        out
    }

    /// Applies the constant-coefficient differential operator obtained by
    /// substituting `∂/∂x_k` for `x_k` in `op`. Lowers degree by `op.degree()`;
    /// the result is zero when `self.degree() < op.degree()`.
    pub fn apply_differential(&self, op: &SymPoly) -> Result<SymPoly> {
        if op.dim != self.dim {
            return dim_err(format!("operator over {} variables, polynomial over {}", op.dim, self.dim));
        }
        if self.degree < op.degree {
            return Ok(SymPoly::zero(self.dim, 0));
        }
        let mut out = SymPoly::zero(self.dim, self.degree - op.degree);
        for (beta, c) in &op.terms {
            for (alpha, x) in &self.terms {
                let Some(rest) = alpha.checked_sub(beta) else {
                    continue;
                };
                // prod_k alpha_k! / (alpha_k - beta_k)!
                let mut falling = BigInt::one();
                for (&a, &b) in alpha.exponents().iter().zip(beta.exponents()) {
                    for t in 0..b {
                        falling *= a - t;
                    }
                }
                out.add_term(rest, c * x * Scalar::from_integer(falling));
            }
        }
        Ok(out)
    }

    /// Evaluates the polynomial map at a point of the dual space.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.dim {
            return dim_err(format!("point of length {} for {} variables", point.len(), self.dim));
        }
        Ok(self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let mono = e
                .exponents()
                .iter()
                .zip(point)
                .fold(Scalar::one(), |m, (&a, x)| m * crate::scalar::pow(x, a));
            acc + c * mono
        }))
    }

    /// Pushes the polynomial forward along a linear map `V -> V'` given as a
    /// `dim V' x dim V` matrix: `x_k` is replaced by `sum_l map[l][k] x'_l`.
    pub fn linear_substitute(&self, map: &ScalarMatrix) -> Result<SymPoly> {
        if map.cols() != self.dim {
            return dim_err(format!("map with {} columns on {} variables", map.cols(), self.dim));
        }
        if map.rows() == 0 {
            return dim_err("cannot substitute into a zero-dimensional space");
        }
        let images: Vec<SymPoly> = (0..self.dim).map(|k| SymPoly::linear(&map.column(k))).collect();
        let mut powers: Vec<Vec<SymPoly>> = images
            .iter()
            .map(|l| vec![SymPoly::constant(map.rows(), Scalar::one()), l.clone()])
            .collect();
        let mut out = SymPoly::zero(map.rows(), self.degree);
        for (e, c) in &self.terms {
            let mut term = SymPoly::constant(map.rows(), c.clone());
            for (k, &a) in e.exponents().iter().enumerate() {
                while powers[k].len() <= a as usize {
                    let next = powers[k].last().unwrap().mul(&images[k]);
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][a as usize]);
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    /// Embeds into a ring with `dim` variables, the new ones placed after the
    /// existing ones.
    pub fn pad_variables(&self, dim: usize) -> Result<SymPoly> {
        if dim < self.dim {
            return dim_err(format!("cannot pad {} variables down to {dim}", self.dim));
        }
        let mut out = SymPoly::zero(dim, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.padded(dim), c.clone());
        }
        Ok(out)
    }

    /// Embeds into a ring with `offset + self.dim() + trailing` variables,
    /// shifting the existing ones by `offset`.
    pub fn shift_variables(&self, offset: usize, total: usize) -> Result<SymPoly> {
        if offset + self.dim > total {
            return dim_err("shifted variables do not fit");
        }
        let mut out = SymPoly::zero(total, self.degree);
        for (e, c) in &self.terms {
            let mut ex = vec![0u32; total];
            ex[offset..offset + self.dim].copy_from_slice(e.exponents());
            out.add_term(ExpVec::new(ex), c.clone());
        }
        Ok(out)
    }

    /// Coordinates on the graded-lex monomial basis.
    pub fn coords(&self, basis: &Basis) -> Result<Vec<Scalar>> {
        if basis.dim != self.dim || basis.degree != self.degree {
            return dim_err("basis does not match polynomial space");
        }
        let mut v = vec![Scalar::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = basis.position(e).expect("monomial outside basis");
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(basis: &Basis, coords: &[Scalar]) -> Result<SymPoly> {
        if coords.len() != basis.len() {
            return dim_err("coordinate vector does not match basis");
        }
        SymPoly::from_terms(
            basis.dim,
            basis.degree,
            basis.monomials().iter().cloned().zip(coords.iter().cloned()),
        )
    }

    /// Linear combination `sum_i coeffs[i] * polys[i]` of polynomials in one space.
    pub fn combination(polys: &[SymPoly], coeffs: &[Scalar]) -> Result<SymPoly> {
        let first = polys
            .first()
            .ok_or_else(|| Error::InvalidInput("empty combination".into()))?;
        if coeffs.len() != polys.len() {
            return dim_err("coefficient count does not match polynomial count");
        }
        let mut acc = SymPoly::zero(first.dim, first.degree);
        for (p, c) in polys.iter().zip(coeffs) {
            acc = acc.add(&p.scale(c))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(e: &[u32]) -> ExpVec {
        ExpVec::new(e.to_vec())
    }

    #[test]
    fn linear_power_expands_multinomially() {
        let p = SymPoly::linear_power(&[int(1), int(1)], 2);
        assert_eq!(p.coeff(&x(&[2, 0])), int(1));
        assert_eq!(p.coeff(&x(&[1, 1])), int(2));
        assert_eq!(p.coeff(&x(&[0, 2])), int(1));
    }

    #[test]
    fn differential_operator() {
        // ∂1^2 applied to x1^3 = 6 x1
        let op = SymPoly::monomial(x(&[2]), int(1));
        let p = SymPoly::monomial(x(&[3]), int(1));
        assert_eq!(p.apply_differential(&op).unwrap(), SymPoly::monomial(x(&[1]), int(6)));
        let low = SymPoly::monomial(x(&[1]), int(1));
        assert!(low.apply_differential(&op).unwrap().is_zero());
    }

    #[test]
    fn substitution_and_eval() {
        // (x1 + x2)^2 pushed along the projection onto the first coordinate.
        let p = SymPoly::linear_power(&[int(1), int(1)], 2);
        let proj = ScalarMatrix::from_i64(&[&[1, 0]]).unwrap();
        assert_eq!(p.linear_substitute(&proj).unwrap(), SymPoly::monomial(x(&[2]), int(1)));
        assert_eq!(p.eval(&[int(2), int(3)]).unwrap(), int(25));
    }

    #[test]
    fn rejects_bad_terms() {
        assert!(SymPoly::from_terms(2, 2, [(x(&[1, 0]), int(1))]).is_err());
        assert!(SymPoly::from_terms(2, 1, [(x(&[1]), int(1))]).is_err());
        let p = SymPoly::from_terms(2, 1, [(x(&[1, 0]), int(1)), (x(&[1, 0]), int(-1))]).unwrap();
        assert!(p.is_zero());
    }
}
