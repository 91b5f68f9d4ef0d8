//! Finite fibre models: sections are tables `point -> S^r E_x`, and every
//! statement is checked at a single point.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{certificate_search, require_basepoint_free, Certificate, SearchOptions};
use crate::error::{dim_err, Error, Result};
use crate::graph::{canonical_slot_assignment, graph_value, DecoratedGraph, Multiplicity};
use crate::macaulay::nu;
use crate::poly::SymPoly;
use crate::scalar::Scalar;
use crate::symops::PairingForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberModel {
    pub points: Vec<String>,
    /// Rank of `E`.
    pub e: usize,
    /// Rank of `F`.
    pub f: usize,
    pub r: usize,
    pub sections_e: Vec<BTreeMap<String, SymPoly>>,
    pub sections_f: Vec<BTreeMap<String, SymPoly>>,
}

impl FiberModel {
    pub fn new(
        points: Vec<String>,
        e: usize,
        f: usize,
        r: usize,
        sections_e: Vec<BTreeMap<String, SymPoly>>,
        sections_f: Vec<BTreeMap<String, SymPoly>>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("fibre model has no points".into()));
        }
        if e == 0 || f == 0 || r == 0 {
            return Err(Error::InvalidInput("fibre ranks and the degree r must be positive".into()));
        }
        for (label, sections, dim) in [("E", &sections_e, e), ("F", &sections_f, f)] {
            for (k, s) in sections.iter().enumerate() {
                for p in &points {
                    let value = s.get(p).ok_or_else(|| {
                        Error::InvalidInput(format!("{label}-section {k} has no value at point {p:?}"))
                    })?;
                    if value.dim() != dim || value.degree() != r {
                        return dim_err(format!(
                            "{label}-section {k} at {p:?} is not in S^{r} of a rank-{dim} fibre"
                        ));
                    }
                }
                if let Some(extra) = s.keys().find(|k| !points.contains(k)) {
                    return Err(Error::InvalidInput(format!("{label}-section {k} names unknown point {extra:?}")));
                }
            }
        }
        Ok(FiberModel {
            points,
            e,
            f,
            r,
            sections_e,
            sections_f,
        })
    }

    fn values(sections: &[BTreeMap<String, SymPoly>], point: &str) -> Vec<SymPoly> {
        sections.iter().map(|s| s[point].clone()).collect()
    }

    pub fn values_e(&self, point: &str) -> Result<Vec<SymPoly>> {
        self.check_point(point)?;
        Ok(Self::values(&self.sections_e, point))
    }

    pub fn values_f(&self, point: &str) -> Result<Vec<SymPoly>> {
        self.check_point(point)?;
        Ok(Self::values(&self.sections_f, point))
    }

    fn check_point(&self, point: &str) -> Result<()> {
        if self.points.iter().any(|p| p == point) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("unknown point {point:?}")))
        }
    }
}

/// Which sections to combine, how to wire their tensor slots, and the degree
/// `n r` of the resulting section of `O(n r)` on `P(E ⊗ F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRecipe {
    pub e_sections: Vec<Vec<Scalar>>,
    pub f_sections: Vec<Vec<Scalar>>,
    pub mult: Multiplicity,
    pub slot_assignment: Vec<usize>,
    pub total_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbsCertificate {
    pub point: String,
    pub certificate: Certificate,
    pub recipe: SectionRecipe,
    pub n_bound: BigUint,
}

/// Certifies at `point` that some section of `O(n r)` on `P(E ⊗ F)` does not
/// vanish at `(x, u^⊥)`.
pub fn tensor_gbs_certificate(
    model: &FiberModel,
    point: &str,
    pairing: &PairingForm,
    options: &SearchOptions,
) -> Result<GbsCertificate> {
    if pairing.dim_v() != model.e || pairing.dim_w() != model.f {
        return dim_err(format!(
            "pairing is {}x{}, fibres have ranks {} and {}",
            pairing.dim_v(),
            pairing.dim_w(),
            model.e,
            model.f
        ));
    }
    if pairing.is_zero() {
        return Err(Error::InvalidInput("the pairing u is zero".into()));
    }
    let a = model.values_e(point)?;
    let b = model.values_f(point)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::NotBasepointFree(format!("point {point:?}: a bundle has no sections")));
    }
    let at_point = |side: &str, err: Error| match err {
        Error::NotBasepointFree(msg) => Error::NotBasepointFree(format!("point {point:?}, {side}: {msg}")),
        other => other,
    };
    require_basepoint_free("S^r E sections", model.e, model.r, &a).map_err(|e| at_point("E", e))?;
    require_basepoint_free("S^r F sections", model.f, model.r, &b).map_err(|e| at_point("F", e))?;
    let certificate = certificate_search(&a, &b, pairing, options)?;
    let slot_assignment = canonical_slot_assignment(&certificate.mult, model.r as u32)?;
    let recipe = SectionRecipe {
        e_sections: certificate.coeffs_a.clone(),
        f_sections: certificate.coeffs_b.clone(),
        mult: certificate.mult.clone(),
        slot_assignment,
        total_degree: certificate.m * model.r,
    };
    let n_bound = nu(model.r, model.e);
    if BigUint::from(certificate.m) > n_bound {
        return Err(Error::VerificationFailed("certificate exceeds the vertex bound".into()));
    }
    Ok(GbsCertificate {
        point: point.to_string(),
        certificate,
        recipe,
        n_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPairing {
    pub value: Scalar,
    pub slot_assignment: Vec<usize>,
}

/// `<Φ(σ, s_1 ⊗ ... ⊗ s_n ⊗ t_1 ⊗ ... ⊗ t_n)_x, u^{⊗nr}>` for the slot
/// permutation `σ` realising `M`; by construction this is `|γ|`.
pub fn phi_pairing(
    mult: &Multiplicity,
    s_e: &[SymPoly],
    t_f: &[SymPoly],
    pairing: &PairingForm,
) -> Result<PhiPairing> {
    let g = DecoratedGraph::new(mult.clone(), s_e.to_vec(), t_f.to_vec(), pairing.clone())?;
    let slot_assignment = canonical_slot_assignment(mult, g.r as u32)?;
    Ok(PhiPairing {
        value: graph_value(&g)?,
        slot_assignment,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    E,
    F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumWitness {
    pub side: Summand,
    pub section_index: usize,
    /// The chosen section viewed in `S^r(E ⊕ F)`: `E` variables first.
    pub embedded: SymPoly,
    pub value: Scalar,
}

/// Picks a summand on which `u = (u_E, u_F)` is nonzero and a section there
/// with `<s̃, u^{⊗r}> ≠ 0`; the pairing of a section with `u^{⊗r}` is its
/// value as a polynomial map at `u`.
pub fn direct_sum_certificate(
    u_e: &[Scalar],
    u_f: &[Scalar],
    sections_e: &[SymPoly],
    sections_f: &[SymPoly],
) -> Result<DirectSumWitness> {
    let e_nonzero = u_e.iter().any(|x| !x.is_zero());
    let f_nonzero = u_f.iter().any(|x| !x.is_zero());
    let (side, u_side, sections) = match (e_nonzero, f_nonzero) {
        (true, _) => (Summand::E, u_e, sections_e),
        (false, true) => (Summand::F, u_f, sections_f),
        (false, false) => return Err(Error::InvalidInput("both components of u vanish".into())),
    };
    let total = u_e.len() + u_f.len();
    for (k, s) in sections.iter().enumerate() {
        if s.dim() != u_side.len() {
            return dim_err(format!("section {k} does not live on the chosen summand"));
        }
        let value = s.eval(u_side)?;
        if value.is_zero() {
            continue;
        }
        let embedded = match side {
            Summand::E => s.pad_variables(total)?,
            Summand::F => s.shift_variables(u_e.len(), total)?,
        };
        let u: Vec<Scalar> = u_e.iter().chain(u_f).cloned().collect();
        let embedded_value = embedded.eval(&u)?;
        if embedded_value != value {
            return Err(Error::VerificationFailed("embedding changed the pairing value".into()));
        }
        return Ok(DirectSumWitness {
            side,
            section_index: k,
            embedded,
            value,
        });
    }
    Err(Error::NotBasepointFree(format!(
        "no {side:?}-section pairs nontrivially with u^r"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ExpVec;
    use crate::scalar::int;

    fn mono(e: &[u32], c: i64) -> SymPoly {
        SymPoly::monomial(ExpVec::new(e.to_vec()), int(c))
    }

    fn table(point: &str, p: SymPoly) -> BTreeMap<String, SymPoly> {
        BTreeMap::from([(point.to_string(), p)])
    }

    #[test]
    fn line_bundle_model() {
        let model = FiberModel::new(
            vec!["x".into()],
            1,
            1,
            2,
            vec![table("x", mono(&[2], 1))],
            vec![table("x", mono(&[2], 3))],
        )
        .unwrap();
        let u = PairingForm::identity(1);
        let cert = tensor_gbs_certificate(&model, "x", &u, &SearchOptions::default()).unwrap();
        assert_eq!(cert.certificate.m, 1);
        assert_eq!(cert.recipe.total_degree, 2);
        assert_eq!(cert.recipe.slot_assignment, vec![0, 1]);
        let zero = PairingForm::new(crate::matrix::ScalarMatrix::zeros(1, 1)).unwrap();
        assert!(tensor_gbs_certificate(&model, "x", &zero, &SearchOptions::default()).is_err());
        assert!(tensor_gbs_certificate(&model, "y", &u, &SearchOptions::default()).is_err());
    }

    #[test]
    fn failing_point_is_named() {
        let model = FiberModel::new(
            vec!["p0".into(), "p1".into()],
            2,
            1,
            1,
            vec![BTreeMap::from([
                ("p0".to_string(), mono(&[1, 0], 1)),
                ("p1".to_string(), mono(&[1, 0], 1)),
            ])],
            vec![BTreeMap::from([
                ("p0".to_string(), mono(&[1], 1)),
                ("p1".to_string(), mono(&[1], 1)),
            ])],
        )
        .unwrap();
        let u = PairingForm::new(crate::matrix::ScalarMatrix::from_i64(&[&[1], &[0]]).unwrap()).unwrap();
        let err = tensor_gbs_certificate(&model, "p1", &u, &SearchOptions::default()).unwrap_err();
        assert!(matches!(&err, Error::NotBasepointFree(msg) if msg.contains("\"p1\"")), "{err:?}");
    }

    #[test]
    fn model_validation() {
        assert!(FiberModel::new(vec!["x".into()], 1, 1, 1, vec![BTreeMap::new()], vec![]).is_err());
        assert!(FiberModel::new(vec![], 1, 1, 1, vec![], vec![]).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let s = mono(&[1, 0], 5);
        let w = direct_sum_certificate(&[int(1), int(0)], &[int(2)], &[s], &[mono(&[1], 1)]).unwrap();
        assert_eq!((w.side, w.value.clone()), (Summand::E, int(5)));
        assert_eq!(w.embedded, mono(&[1, 0, 0], 5));
        let w = direct_sum_certificate(&[int(0)], &[int(2)], &[mono(&[1], 1)], &[mono(&[1], 1)]).unwrap();
        assert_eq!((w.side, w.value.clone()), (Summand::F, int(2)));
        assert_eq!(w.embedded, mono(&[0, 1], 1));
        assert!(direct_sum_certificate(&[int(0)], &[int(0)], &[], &[]).is_err());
    }
}
