//! Degree-wise ideal membership for homogeneous systems, the resulting
//! certificate that a system has no common zero besides the origin, and the
//! vertex bound `ν(r, d)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::{matrix_rank, ScalarMatrix};
use crate::monomial::{monomial_basis, sym_dim, Basis};
use crate::poly::SymPoly;
use crate::scalar::{lcm_upto, lcm_upto_factored, Scalar};

/// Homogeneous generators of one common degree `r` in `dim` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub dim: usize,
    pub r: usize,
    pub gens: Vec<SymPoly>,
}

impl PolySystem {
    pub fn new(dim: usize, r: usize, gens: Vec<SymPoly>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("polynomial system needs at least one variable".into()));
        }
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::Dimension(format!("generator over {} variables, expected {dim}", g.dim())));
            }
            if g.degree() != r {
                return Err(Error::Degree(format!("generator of degree {}, expected {r}", g.degree())));
            }
        }
        Ok(PolySystem { dim, r, gens })
    }

    /// Degree bound `r * dim` past which surjectivity must hold for a system
    /// with no nontrivial common zero.
    pub fn macaulay_bound(&self) -> usize {
        self.r * self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRank {
    pub n: usize,
    pub rank: usize,
    pub target_dim: usize,
}

impl ComponentRank {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayReport {
    pub certified: bool,
    pub first_surjective_n: Option<usize>,
    pub ranks_by_n: Vec<ComponentRank>,
    pub n_max: usize,
}

/// Rank of `S^{n-r} ⊗ span(B) -> S^n`, `(q, g) ↦ q g`.
pub fn ideal_component_surjective(system: &PolySystem, n: usize) -> Result<ComponentRank> {
    if n < system.r {
        return Err(Error::Degree(format!("degree {n} is below the generator degree {}", system.r)));
    }
    let target = Basis::new(system.dim, n);
    let multipliers = monomial_basis(system.dim, n - system.r);
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(multipliers.len() * system.gens.len());
    for q in &multipliers {
        let q = SymPoly::monomial(q.clone(), num_traits::One::one());
        for g in &system.gens {
            columns.push(q.mul(g).coords(&target)?);
        }
    }
    // Rank of the transpose is the same; rows here are the image vectors.
    let rank = if columns.is_empty() {
        0
    } else {
        matrix_rank(&ScalarMatrix::from_rows(columns)?)
    };
    Ok(ComponentRank {
        n,
        rank,
        target_dim: target.len(),
    })
}

/// Scans `n = r..=n_max` for the first degree in which the ideal contains
/// every form. Success proves that the generators share no zero besides the
/// origin over any extension field; failure is only conclusive once
/// `n_max >= r * dim`.
pub fn certify_basepoint_free(system: &PolySystem, n_max: usize) -> Result<MacaulayReport> {
    if system.gens.is_empty() {
        return Err(Error::InvalidInput("empty generator list".into()));
    }
    if n_max < system.r {
        return Err(Error::InvalidInput(format!(
            "n_max = {n_max} is below the generator degree {}",
            system.r
        )));
    }
    let mut ranks = Vec::new();
    let mut first = None;
    for n in system.r..=n_max {
        let row = ideal_component_surjective(system, n)?;
        let done = row.surjective();
        ranks.push(row);
        if done {
            first = Some(n);
            break;
        }
    }
    Ok(MacaulayReport {
        certified: first.is_some(),
        first_surjective_n: first,
        ranks_by_n: ranks,
        n_max,
    })
}

/// `D(n) = (dim S^n V)^2` for `d = dim V`.
pub fn big_d(n: usize, d: usize) -> u64 {
    let s = sym_dim(d, n) as u64;
    s * s
}

/// `ν(r, d) = lcm(1, ..., D(r d))`.
pub fn nu(r: usize, d: usize) -> BigUint {
    lcm_upto(big_d(r * d, d))
}

/// Prime factorisation of `ν(r, d)`.
pub fn nu_factored(r: usize, d: usize) -> Vec<(u64, u32)> {
    lcm_upto_factored(big_d(r * d, d))
}
