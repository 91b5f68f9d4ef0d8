//! Certificates that a pairing `u ∈ (V ⊗ W)^*` is detected by a decorated
//! graph with nonzero value, built from spanning sets `A ⊂ S^r V` and
//! `B ⊂ S^r W` with no nontrivial common zeros.
//!
//! The search reduces to a nondegenerate pairing, fixes the working degree
//! `N = r d'`, looks for a product `m(ṽ_1) i(w̃_1) ... m(ṽ_m) i(w̃_m)` with
//! nonzero trace on `S^N`, and then expands that trace into its graph sum to
//! extract one graph with nonzero value.

mod fiber;

pub use fiber::{
    direct_sum_certificate, phi_pairing, tensor_gbs_certificate, DirectSumWitness, FiberModel,
    GbsCertificate, PhiPairing, SectionRecipe, Summand,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    alternating_order, build_word, c_gamma, enumerate_graphs, graph_value, rho_of, DecoratedGraph,
    Multiplicity,
};
use crate::macaulay::{certify_basepoint_free, nu, PolySystem};
use crate::matrix::{matrix_product, matrix_trace, EchelonBasis, ScalarMatrix};
use crate::poly::SymPoly;
use crate::scalar::{int, Scalar};
use crate::symops::{operator_matrix, word_trace, OperatorFactor, PairingForm};

/// The problem pushed to `V' = V / ker û` and `W' = W / ker û^*`, where the
/// induced pairing is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedProblem {
    pub reduced_dim: usize,
    /// `d' x d` matrix of `V -> V'`.
    pub project_v: ScalarMatrix,
    /// `d' x e` matrix of `W -> W'`.
    pub project_w: ScalarMatrix,
    pub kernel_v: Vec<Vec<Scalar>>,
    pub kernel_w: Vec<Vec<Scalar>>,
    pub a: Vec<SymPoly>,
    pub b: Vec<SymPoly>,
    pub pairing: PairingForm,
}

/// Factors `u` through its image: with `R` the nonzero rows of `rref(Uᵀ)` and
/// `P` their pivot columns, `U = Rᵀ U[P, :]`, so `π_V = R` and
/// `π_W = U[P, :]` make the reduced pairing the identity.
pub fn reduce_to_bijective(pairing: &PairingForm, a: &[SymPoly], b: &[SymPoly]) -> Result<ReducedProblem> {
    if pairing.is_zero() {
        return Err(Error::InvalidInput("the pairing u is zero; no nondegenerate quotient exists".into()));
    }
    let u = pairing.matrix();
    let mut rref = u.transpose();
    let pivots = rref.row_reduce();
    let rank = pivots.len();
    let project_v = rref.select_rows(&(0..rank).collect::<Vec<_>>());
    let project_w = u.select_rows(&pivots);
    debug_assert_eq!(&matrix_product(&project_v.transpose(), &project_w)?, u);
    let a = a
        .iter()
        .map(|p| p.linear_substitute(&project_v))
        .collect::<Result<Vec<_>>>()?;
    let b = b
        .iter()
        .map(|p| p.linear_substitute(&project_w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReducedProblem {
        reduced_dim: rank,
        kernel_v: u.transpose().nullspace(),
        kernel_w: u.nullspace(),
        project_v,
        project_w,
        a,
        b,
        pairing: PairingForm::identity(rank),
    })
}

/// A product of generators `g_{a,b} = m^r_N(ṽ_a) i^r_N(w̃_b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    pub word: Vec<(usize, usize)>,
    pub matrix: ScalarMatrix,
}

/// Spans `L_1 ⊂ L_2 ⊂ ...` of products of at most `m` generators acting on `S^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraChain {
    pub n: usize,
    /// Linearly independent products; together they span the last level.
    pub elements: Vec<ChainElement>,
    /// `dims[k]` is `dim L_{k+1}`.
    pub dims: Vec<usize>,
    /// First `m` with `dim L_{m+1} = dim L_m`, if reached within the length cap.
    pub stabilized_at: Option<usize>,
}

pub fn build_algebra_chain(a: &[SymPoly], b: &[SymPoly], n: usize, m_max: usize) -> Result<AlgebraChain> {
    let first = a
        .first()
        .ok_or_else(|| Error::InvalidInput("empty multiplication generator set".into()))?;
    if b.is_empty() {
        return Err(Error::InvalidInput("empty contraction generator set".into()));
    }
    let d = first.dim();
    let r = first.degree();
    if n < r {
        return Err(Error::Degree(format!("working degree {n} below generator degree {r}")));
    }
    let pairing = PairingForm::identity(d);
    let muls = a
        .iter()
        .map(|v| operator_matrix(&OperatorFactor::mul(v.clone()), n - r, &pairing))
        .collect::<Result<Vec<_>>>()?;
    let cons = b
        .iter()
        .map(|w| operator_matrix(&OperatorFactor::con(w.clone()), n, &pairing))
        .collect::<Result<Vec<_>>>()?;
    let mut generators = Vec::with_capacity(a.len() * b.len());
    for (ia, mm) in muls.iter().enumerate() {
        for (ib, cm) in cons.iter().enumerate() {
            generators.push(((ia, ib), matrix_product(mm, cm)?));
        }
    }
    let side = generators[0].1.rows();
    let mut span = EchelonBasis::new(side * side);
    let mut elements: Vec<ChainElement> = Vec::new();
    let mut dims = Vec::new();
    let mut stabilized_at = None;
    let mut frontier: Vec<ChainElement> = Vec::new();
    for level in 1..=m_max {
        let candidates: Vec<ChainElement> = if level == 1 {
            generators
                .iter()
                .map(|(ab, g)| ChainElement {
                    word: vec![*ab],
                    matrix: g.clone(),
                })
                .collect()
        } else {
            let mut out = Vec::with_capacity(frontier.len() * generators.len());
            for el in &frontier {
                for (ab, g) in &generators {
                    let mut word = el.word.clone();
                    word.push(*ab);
                    out.push(ChainElement {
                        word,
                        matrix: matrix_product(&el.matrix, g)?,
                    });
                }
            }
            out
        };
        let mut added = Vec::new();
        for c in candidates {
            if span.insert(c.matrix.entries()) {
                added.push(c);
            }
        }
        dims.push(span.dim());
        if added.is_empty() {
            stabilized_at = Some(level - 1);
            break;
        }
        elements.extend(added.iter().cloned());
        frontier = added;
    }
    Ok(AlgebraChain {
        n,
        elements,
        dims,
        stabilized_at,
    })
}

/// True iff every spanning product has trace zero. In characteristic zero
/// this is equivalent to the generated algebra consisting of nilpotents.
pub fn is_nil(chain: &AlgebraChain) -> Result<bool> {
    for el in &chain.elements {
        if !matrix_trace(&el.matrix)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Longest product tried.
    pub m_max: usize,
    /// Random linear combinations drawn per length before enumerating.
    pub random_draws: usize,
    /// Cap on generator-index words enumerated per length.
    pub exhaustive_cap: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            m_max: 4,
            random_draws: 16,
            exhaustive_cap: 20_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessOrigin {
    RandomDraw(usize),
    Enumerated(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub m: usize,
    pub r: usize,
    /// `coeffs_a[i]` expresses the decoration of source vertex `i` in the spanning set `A`.
    pub coeffs_a: Vec<Vec<Scalar>>,
    pub coeffs_b: Vec<Vec<Scalar>>,
    pub mult: Multiplicity,
    /// `|γ|` for the original pairing; never zero.
    pub value: Scalar,
    /// Working degree `N = r d'` of the trace computation.
    pub n: usize,
    pub reduced_dim: usize,
    /// Trace of the witness product on `S^N V'`.
    pub trace: Scalar,
    pub origin: WitnessOrigin,
}

impl Certificate {
    pub fn decorations(&self, a: &[SymPoly], b: &[SymPoly]) -> Result<(Vec<SymPoly>, Vec<SymPoly>)> {
        let v = self
            .coeffs_a
            .iter()
            .map(|c| SymPoly::combination(a, c))
            .collect::<Result<Vec<_>>>()?;
        let w = self
            .coeffs_b
            .iter()
            .map(|c| SymPoly::combination(b, c))
            .collect::<Result<Vec<_>>>()?;
        Ok((v, w))
    }

    /// Recomputes `|γ|` from the stored data and checks it against `value`.
    pub fn revalidate(&self, a: &[SymPoly], b: &[SymPoly], pairing: &PairingForm) -> Result<Scalar> {
        let (v, w) = self.decorations(a, b)?;
        let g = DecoratedGraph::new(self.mult.clone(), v, w, pairing.clone())?;
        let value = graph_value(&g)?;
        if value.is_zero() {
            return Err(Error::VerificationFailed("certificate graph has value zero".into()));
        }
        if value != self.value {
            return Err(Error::VerificationFailed(format!(
                "certificate value {} does not match recomputed {}",
                self.value, value
            )));
        }
        Ok(value)
    }
}

fn check_spanning_sets(a: &[SymPoly], b: &[SymPoly], pairing: &PairingForm) -> Result<usize> {
    let first = a
        .first()
        .ok_or_else(|| Error::InvalidInput("spanning set A is empty".into()))?;
    if b.is_empty() {
        return Err(Error::InvalidInput("spanning set B is empty".into()));
    }
    let r = first.degree();
    if r == 0 {
        return Err(Error::Degree("decorations need degree r >= 1".into()));
    }
    for p in a {
        if p.dim() != pairing.dim_v() || p.degree() != r {
            return Err(Error::Dimension("every element of A must lie in S^r V".into()));
        }
    }
    for p in b {
        if p.dim() != pairing.dim_w() || p.degree() != r {
            return Err(Error::Dimension("every element of B must lie in S^r W".into()));
        }
    }
    Ok(r)
}

/// Confirms via degree-wise ideal membership that the forms have no common
/// zero besides the origin.
pub fn require_basepoint_free(label: &str, dim: usize, r: usize, gens: &[SymPoly]) -> Result<()> {
    let system = PolySystem::new(dim, r, gens.to_vec())?;
    let report = certify_basepoint_free(&system, system.macaulay_bound())?;
    if report.certified {
        Ok(())
    } else {
        let last = report.ranks_by_n.last().expect("scan covers at least degree r");
        Err(Error::NotBasepointFree(format!(
            "{label}: degree-{} part of the ideal has rank {} < {} (no surjectivity up to the bound r*dim = {})",
            last.n,
            last.rank,
            last.target_dim,
            system.macaulay_bound()
        )))
    }
}

struct SearchState<'a> {
    reduced: &'a ReducedProblem,
    a: &'a [SymPoly],
    b: &'a [SymPoly],
    pairing: &'a PairingForm,
    r: usize,
    n: usize,
}

impl SearchState<'_> {
    fn try_word(
        &self,
        coeffs_a: &[Vec<Scalar>],
        coeffs_b: &[Vec<Scalar>],
        origin: WitnessOrigin,
    ) -> Result<Option<Certificate>> {
        let m = coeffs_a.len();
        let v = coeffs_a
            .iter()
            .map(|c| SymPoly::combination(&self.reduced.a, c))
            .collect::<Result<Vec<_>>>()?;
        let w = coeffs_b
            .iter()
            .map(|c| SymPoly::combination(&self.reduced.b, c))
            .collect::<Result<Vec<_>>>()?;
        let order = alternating_order(m);
        let word = build_word(&v, &w, &order, &self.reduced.pairing)?;
        let trace = word_trace(&word, self.n)?;
        if trace.is_zero() {
            return Ok(None);
        }
        for mult in enumerate_graphs(m, self.r as u32) {
            let rho = rho_of(&mult, &order)?;
            let c = c_gamma(&mult, rho, self.reduced.reduced_dim, self.n, self.r as u32);
            if c.is_zero() {
                continue;
            }
            let reduced_graph = DecoratedGraph::new(mult.clone(), v.clone(), w.clone(), self.reduced.pairing.clone())?;
            let reduced_value = graph_value(&reduced_graph)?;
            if reduced_value.is_zero() {
                continue;
            }
            let cert = Certificate {
                m,
                r: self.r,
                coeffs_a: coeffs_a.to_vec(),
                coeffs_b: coeffs_b.to_vec(),
                mult,
                value: reduced_value.clone(),
                n: self.n,
                reduced_dim: self.reduced.reduced_dim,
                trace,
                origin,
            };
            // The graph value must survive the passage back to the original pairing.
            cert.revalidate(self.a, self.b, self.pairing)?;
            return Ok(Some(cert));
        }
        Err(Error::VerificationFailed(
            "nonzero trace but every graph term vanished; the trace expansion is violated".into(),
        ))
    }
}

fn unit(len: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[k] = Scalar::one();
    v
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..len).map(|_| int(rng.gen_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Finds `m`, decorations from `span A` and `span B`, and a graph `γ` with
/// `|γ| ≠ 0`, with `m ≤ ν(r, dim V)`.
pub fn certificate_search(
    a: &[SymPoly],
    b: &[SymPoly],
    pairing: &PairingForm,
    options: &SearchOptions,
) -> Result<Certificate> {
    let r = check_spanning_sets(a, b, pairing)?;
    if pairing.is_zero() {
        return Err(Error::InvalidInput("the pairing u is zero".into()));
    }
    require_basepoint_free("A", pairing.dim_v(), r, a)?;
    require_basepoint_free("B", pairing.dim_w(), r, b)?;
    let reduced = reduce_to_bijective(pairing, a, b)?;
    let n = r * reduced.reduced_dim;
    let bound: BigUint = nu(r, pairing.dim_v());
    let state = SearchState {
        reduced: &reduced,
        a,
        b,
        pairing,
        r,
        n,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut words_tried = 0usize;
    let mut max_length = 0;
    for m in 1..=options.m_max {
        if BigUint::from(m) > bound {
            break;
        }
        max_length = m;
        for draw in 0..options.random_draws {
            let ca: Vec<_> = (0..m).map(|_| random_coeffs(&mut rng, a.len())).collect();
            let cb: Vec<_> = (0..m).map(|_| random_coeffs(&mut rng, b.len())).collect();
            words_tried += 1;
            if let Some(cert) = state.try_word(&ca, &cb, WitnessOrigin::RandomDraw(draw))? {
                return Ok(cert);
            }
        }
        // Enumerate generator-index words (a_1, b_1, ..., a_m, b_m).
        let radices: Vec<usize> = (0..m).flat_map(|_| [a.len(), b.len()]).collect();
        let mut digits = vec![0usize; 2 * m];
        for idx in 0..options.exhaustive_cap {
            let ca: Vec<_> = (0..m).map(|k| unit(a.len(), digits[2 * k])).collect();
            let cb: Vec<_> = (0..m).map(|k| unit(b.len(), digits[2 * k + 1])).collect();
            words_tried += 1;
            if let Some(cert) = state.try_word(&ca, &cb, WitnessOrigin::Enumerated(idx))? {
                return Ok(cert);
            }
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < radices[pos] {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    Err(Error::SearchExhausted {
        max_length,
        words_tried,
        detail: format!(
            "no product of length <= {max_length} has nonzero trace on S^{n} of the {}-dimensional reduced space",
            reduced.reduced_dim
        ),
    })
}
