//! Multiplication and contraction operators on the symmetric algebra and the
//! traces of their products restricted to one graded piece.
//!
//! Multiplication `m^r(ṽ)` is polynomial multiplication by `ṽ ∈ S^r V`.
//! Contraction `i^r(w̃)` for `w̃ ∈ S^r W` is the constant-coefficient
//! differential operator obtained by substituting, for each `y_j`, the
//! derivation `sum_k u[k][j] ∂/∂x_k`. At degree one this gives
//! `i^1(w) v^N = N <w, v> v^(N-1)` and the commutator
//! `[i^1(w), m^1(v)] = <w, v>`.

use num_traits::{One, Zero};

use crate::error::{dim_err, Error, Result};
use crate::matrix::ScalarMatrix;
use crate::monomial::{sym_dim, Basis};
use crate::poly::SymPoly;
use crate::scalar::Scalar;

/// Bilinear form `u ∈ (V ⊗ W)^*` stored as a `dim V x dim W` matrix, so that
/// `u(v ⊗ w) = vᵀ U w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingForm {
    matrix: ScalarMatrix,
}

impl PairingForm {
    pub fn new(matrix: ScalarMatrix) -> Result<Self> {
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return dim_err("pairing needs positive dimensions");
        }
        Ok(PairingForm { matrix })
    }

    pub fn identity(d: usize) -> Self {
        PairingForm {
            matrix: ScalarMatrix::identity(d),
        }
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    /// `dim V`.
    pub fn dim_v(&self) -> usize {
        self.matrix.rows()
    }

    /// `dim W`.
    pub fn dim_w(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        crate::matrix::matrix_rank(&self.matrix)
    }

    pub fn pair(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
        let uw = self.matrix.mul_vec(w)?;
        if v.len() != uw.len() {
            return dim_err(format!("vector of length {} against dim V = {}", v.len(), uw.len()));
        }
        Ok(v.iter().zip(&uw).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    /// The element of `V^*` that `w ∈ W` induces, as coordinates.
    pub fn induced_covector(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(w)
    }

    /// Rewrites `w̃ ∈ S^r W` as a differential symbol over the `V` variables.
    pub fn differential_symbol(&self, w: &SymPoly) -> Result<SymPoly> {
        if w.dim() != self.dim_w() {
            return dim_err(format!("contraction tensor over {} variables, dim W = {}", w.dim(), self.dim_w()));
        }
        w.linear_substitute(&self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// `m^r(ṽ)`, raises degree by `r`.
    Mul,
    /// `i^r(w̃)`, lowers degree by `r`.
    Con,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorFactor {
    pub kind: FactorKind,
    pub tensor: SymPoly,
}

impl OperatorFactor {
    pub fn mul(tensor: SymPoly) -> Self {
        OperatorFactor {
            kind: FactorKind::Mul,
            tensor,
        }
    }

    pub fn con(tensor: SymPoly) -> Self {
        OperatorFactor {
            kind: FactorKind::Con,
            tensor,
        }
    }

    pub fn r(&self) -> usize {
        self.tensor.degree()
    }

    fn shift(&self) -> isize {
        match self.kind {
            FactorKind::Mul => self.r() as isize,
            FactorKind::Con => -(self.r() as isize),
        }
    }
}

/// Product of factors. The leftmost factor acts last, as in `P = f_1 f_2 ... f_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub factors: Vec<OperatorFactor>,
    pub pairing: PairingForm,
}

impl OperatorWord {
    pub fn new(factors: Vec<OperatorFactor>, pairing: PairingForm) -> Result<Self> {
        for f in &factors {
            if f.r() == 0 {
                return Err(Error::Degree("operator factors need degree r >= 1".into()));
            }
            let want = match f.kind {
                FactorKind::Mul => pairing.dim_v(),
                FactorKind::Con => pairing.dim_w(),
            };
            if f.tensor.dim() != want {
                return dim_err(format!(
                    "{:?} factor over {} variables, expected {want}",
                    f.kind,
                    f.tensor.dim()
                ));
            }
        }
        Ok(OperatorWord { factors, pairing })
    }

    pub fn d(&self) -> usize {
        self.pairing.dim_v()
    }

    pub fn e(&self) -> usize {
        self.pairing.dim_w()
    }

    /// Total degree shift of the word.
    pub fn shift(&self) -> isize {
        self.factors.iter().map(OperatorFactor::shift).sum()
    }

    /// Applies the word to `p`, rightmost factor first. Returns `None` when an
    /// intermediate degree would be negative, i.e. the image is the zero
    /// element of `S^N V` with `N < 0`.
    pub fn apply(&self, p: &SymPoly) -> Result<Option<SymPoly>> {
        let symbols = self.con_symbols()?;
        self.apply_with(p, &symbols)
    }

    fn con_symbols(&self) -> Result<Vec<Option<SymPoly>>> {
        self.factors
            .iter()
            .map(|f| match f.kind {
                FactorKind::Mul => Ok(None),
                FactorKind::Con => self.pairing.differential_symbol(&f.tensor).map(Some),
            })
            .collect()
    }

    fn apply_with(&self, p: &SymPoly, symbols: &[Option<SymPoly>]) -> Result<Option<SymPoly>> {
        if p.dim() != self.d() {
            return dim_err("polynomial does not live on V");
        }
        let mut cur = p.clone();
        for (f, sym) in self.factors.iter().zip(symbols).rev() {
            cur = match f.kind {
                FactorKind::Mul => cur.mul(&f.tensor),
                FactorKind::Con => {
                    if cur.degree() < f.r() {
                        return Ok(None);
                    }
                    cur.apply_differential(sym.as_ref().unwrap())?
                }
            };
        }
        Ok(Some(cur))
    }
}

/// `m^1(v) p`: multiplication by the linear form `v`.
pub fn mul1_apply(v: &[Scalar], p: &SymPoly) -> Result<SymPoly> {
    if v.len() != p.dim() {
        return dim_err(format!("vector of length {} on {} variables", v.len(), p.dim()));
    }
    Ok(SymPoly::linear(v).mul(p))
}

/// `i^1(w) p`: the derivation along the covector that `w` induces through `u`.
/// A degree-zero input maps to the zero polynomial.
pub fn con1_apply(w: &[Scalar], p: &SymPoly, pairing: &PairingForm) -> Result<SymPoly> {
    if w.len() != pairing.dim_w() {
        return dim_err(format!("covector of length {}, dim W = {}", w.len(), pairing.dim_w()));
    }
    if p.dim() != pairing.dim_v() {
        return dim_err(format!("polynomial on {} variables, dim V = {}", p.dim(), pairing.dim_v()));
    }
    let direction = pairing.induced_covector(w)?;
    let mut out = SymPoly::zero(p.dim(), p.degree().saturating_sub(1));
    for (k, c) in direction.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&p.partial(k).scale(c))?;
        }
    }
    Ok(out)
}

/// `m^r(ṽ) p`.
pub fn mulr_apply(v: &SymPoly, p: &SymPoly) -> Result<SymPoly> {
    p.try_mul(v)
}

/// `i^r(w̃) p`. When `deg p < r` the target space is zero and the zero
/// polynomial (tagged with degree 0) is returned.
pub fn conr_apply(w: &SymPoly, p: &SymPoly, pairing: &PairingForm) -> Result<SymPoly> {
    if p.dim() != pairing.dim_v() {
        return dim_err(format!("polynomial on {} variables, dim V = {}", p.dim(), pairing.dim_v()));
    }
    let symbol = pairing.differential_symbol(w)?;
    p.apply_differential(&symbol)
}

/// Matrix of a factor restricted to `S^n V`, on graded-lex monomial bases.
pub fn operator_matrix(f: &OperatorFactor, n: usize, pairing: &PairingForm) -> Result<ScalarMatrix> {
    let d = pairing.dim_v();
    let r = f.r();
    let out_degree = match f.kind {
        FactorKind::Mul => n + r,
        FactorKind::Con => n.checked_sub(r).ok_or_else(|| {
            Error::Degree(format!("contraction of degree {r} on S^{n}: target degree is negative"))
        })?,
    };
    let word = OperatorWord::new(vec![f.clone()], pairing.clone())?;
    let symbols = word.con_symbols()?;
    let source = Basis::new(d, n);
    let target = Basis::new(d, out_degree);
    let mut m = ScalarMatrix::zeros(target.len(), source.len());
    for (j, e) in source.monomials().iter().enumerate() {
        let image = word
            .apply_with(&SymPoly::monomial(e.clone(), Scalar::one()), &symbols)?
            .expect("degree checked above");
        for (e2, c) in image.terms() {
            m.set(target.position(e2).unwrap(), j, c.clone());
        }
    }
    Ok(m)
}

/// Trace of the word restricted to `S^n V`. The word must have total degree
/// shift zero. The empty word gives `dim S^n V`.
pub fn word_trace(word: &OperatorWord, n: usize) -> Result<Scalar> {
    if word.shift() != 0 {
        return Err(Error::Degree(format!(
            "word shifts degree by {}; trace needs an endomorphism",
            word.shift()
        )));
    }
    let d = word.d();
    if word.factors.is_empty() {
        return Ok(Scalar::from_integer(sym_dim(d, n).into()));
    }
    let symbols = word.con_symbols()?;
    let basis = Basis::new(d, n);
    let mut trace = Scalar::zero();
    for e in basis.monomials() {
        if let Some(image) = word.apply_with(&SymPoly::monomial(e.clone(), Scalar::one()), &symbols)? {
            trace += image.coeff(e);
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_product, matrix_trace};
    use crate::monomial::ExpVec;
    use crate::scalar::int;

    fn mono(e: &[u32], c: i64) -> SymPoly {
        SymPoly::monomial(ExpVec::new(e.to_vec()), int(c))
    }

    #[test]
    fn mul1_examples() {
        assert_eq!(mul1_apply(&[int(1)], &mono(&[2], 1)).unwrap(), mono(&[3], 1));
        assert!(mul1_apply(&[int(0), int(0)], &mono(&[1, 1], 3)).unwrap().is_zero());
        let got = mul1_apply(&[int(1), int(1)], &mono(&[1, 0], 1)).unwrap();
        assert_eq!(got, mono(&[2, 0], 1).add(&mono(&[1, 1], 1)).unwrap());
        assert!(mul1_apply(&[int(1)], &mono(&[1, 0], 1)).is_err());
    }

    #[test]
    fn con1_examples() {
        let id1 = PairingForm::identity(1);
        for n in 1..6u32 {
            assert_eq!(
                con1_apply(&[int(1)], &mono(&[n], 1), &id1).unwrap(),
                mono(&[n - 1], n as i64)
            );
        }
        let id2 = PairingForm::identity(2);
        // w = e1* - e2*, v = e1 + e2: <w, v> = 0 so i(w) v^N = 0.
        let vn = SymPoly::linear_power(&[int(1), int(1)], 4);
        assert!(con1_apply(&[int(1), int(-1)], &vn, &id2).unwrap().is_zero());
        assert_eq!(con1_apply(&[int(0), int(1)], &mono(&[1, 1], 1), &id2).unwrap(), mono(&[1, 0], 1));
        assert!(con1_apply(&[int(1)], &mono(&[1, 1], 1), &id2).is_err());
    }

    #[test]
    fn conr_examples() {
        let id1 = PairingForm::identity(1);
        assert_eq!(conr_apply(&mono(&[2], 1), &mono(&[3], 1), &id1).unwrap(), mono(&[1], 6));
        assert!(conr_apply(&mono(&[2], 1), &mono(&[1], 1), &id1).unwrap().is_zero());
        assert_eq!(mulr_apply(&mono(&[2, 0], 1), &mono(&[0, 1], 1)).unwrap(), mono(&[2, 1], 1));
    }

    #[test]
    fn operator_matrix_examples() {
        let id1 = PairingForm::identity(1);
        let x = mono(&[1], 1);
        let m = operator_matrix(&OperatorFactor::mul(x.clone()), 0, &id1).unwrap();
        assert_eq!(m, ScalarMatrix::from_i64(&[&[1]]).unwrap());
        let c = operator_matrix(&OperatorFactor::con(x.clone()), 1, &id1).unwrap();
        assert_eq!(c, ScalarMatrix::from_i64(&[&[1]]).unwrap());
        let c2 = operator_matrix(&OperatorFactor::con(x.clone()), 2, &id1).unwrap();
        assert_eq!(c2, ScalarMatrix::from_i64(&[&[2]]).unwrap());
        assert!(operator_matrix(&OperatorFactor::con(x), 0, &id1).is_err());
    }

    #[test]
    fn word_trace_examples() {
        let id1 = PairingForm::identity(1);
        let x = mono(&[1], 1);
        let mi = OperatorWord::new(
            vec![OperatorFactor::mul(x.clone()), OperatorFactor::con(x.clone())],
            id1.clone(),
        )
        .unwrap();
        assert_eq!(word_trace(&mi, 3).unwrap(), int(3));
        let im = OperatorWord::new(vec![OperatorFactor::con(x.clone()), OperatorFactor::mul(x)], id1).unwrap();
        assert_eq!(word_trace(&im, 3).unwrap(), int(4));
        let empty = OperatorWord::new(vec![], PairingForm::identity(2)).unwrap();
        assert_eq!(word_trace(&empty, 2).unwrap(), int(3));
    }

    #[test]
    fn word_trace_agrees_with_matrix_product() {
        let id2 = PairingForm::identity(2);
        let v = SymPoly::linear(&[int(2), int(-1)]);
        let w = SymPoly::linear(&[int(1), int(3)]);
        let word = OperatorWord::new(
            vec![OperatorFactor::con(w.clone()), OperatorFactor::mul(v.clone())],
            id2.clone(),
        )
        .unwrap();
        for n in 0..5 {
            let mv = operator_matrix(&OperatorFactor::mul(v.clone()), n, &id2).unwrap();
            let cw = operator_matrix(&OperatorFactor::con(w.clone()), n + 1, &id2).unwrap();
            let prod = matrix_product(&cw, &mv).unwrap();
            assert_eq!(word_trace(&word, n).unwrap(), matrix_trace(&prod).unwrap());
        }
    }

    #[test]
    fn unbalanced_word_is_rejected() {
        let word = OperatorWord::new(vec![OperatorFactor::mul(mono(&[1], 1))], PairingForm::identity(1)).unwrap();
        assert!(word_trace(&word, 2).is_err());
    }

    #[test]
    fn contraction_below_degree_is_zero_map() {
        let id1 = PairingForm::identity(1);
        let x = mono(&[1], 1);
        // m i on S^0: the contraction lands in degree -1.
        let word = OperatorWord::new(
            vec![OperatorFactor::mul(x.clone()), OperatorFactor::con(x)],
            id1,
        )
        .unwrap();
        assert_eq!(word_trace(&word, 0).unwrap(), int(0));
    }
}
