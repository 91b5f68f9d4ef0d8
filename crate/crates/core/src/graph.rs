//! Decorated bipartite graphs, their values, and the trace expansion of
//! operator words as a weighted sum over graphs.
//!
//! A graph with `m` source vertices `α_i` (decorated by `ṽ_i ∈ S^r V`) and `m`
//! sink vertices `β_j` (decorated by `w̃_j ∈ S^r W`) is stored as its
//! multiplicity matrix `M`, where `M[i][j]` counts the arrows joining `α_i`
//! and `β_j`. Every row and column of `M` sums to `r`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{dim_err, Error, Result};
use crate::poly::SymPoly;
use crate::scalar::{binomial, factorial, from_biguint, Scalar};
use crate::symops::{word_trace, OperatorFactor, OperatorWord, PairingForm};

/// Square matrix of arrow multiplicities.
pub type Multiplicity = Vec<Vec<u32>>;

pub fn check_margins(mult: &Multiplicity, r: u32) -> Result<()> {
    let m = mult.len();
    if mult.iter().any(|row| row.len() != m) {
        return dim_err("multiplicity matrix must be square");
    }
    for (i, row) in mult.iter().enumerate() {
        let s: u32 = row.iter().sum();
        if s != r {
            return Err(Error::InvalidInput(format!("row {i} of the multiplicity matrix sums to {s}, expected {r}")));
        }
    }
    for j in 0..m {
        let s: u32 = mult.iter().map(|row| row[j]).sum();
        if s != r {
            return Err(Error::InvalidInput(format!("column {j} of the multiplicity matrix sums to {s}, expected {r}")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    pub r: usize,
    pub mult: Multiplicity,
    pub vdecs: Vec<SymPoly>,
    pub wdecs: Vec<SymPoly>,
    pub pairing: PairingForm,
}

impl DecoratedGraph {
    pub fn new(
        mult: Multiplicity,
        vdecs: Vec<SymPoly>,
        wdecs: Vec<SymPoly>,
        pairing: PairingForm,
    ) -> Result<Self> {
        let m = mult.len();
        if m == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex pair".into()));
        }
        if vdecs.len() != m || wdecs.len() != m {
            return dim_err(format!(
                "{m} vertex pairs but {} source and {} sink decorations",
                vdecs.len(),
                wdecs.len()
            ));
        }
        let r = vdecs[0].degree();
        if r == 0 {
            return Err(Error::Degree("decorations need degree r >= 1".into()));
        }
        check_margins(&mult, r as u32)?;
        for p in &vdecs {
            if p.degree() != r {
                return Err(Error::Degree("source decorations of differing degree".into()));
            }
            if p.dim() != pairing.dim_v() {
                return dim_err("source decoration does not live on V");
            }
        }
        for p in &wdecs {
            if p.degree() != r {
                return Err(Error::Degree("sink decorations must share the source degree".into()));
            }
            if p.dim() != pairing.dim_w() {
                return dim_err("sink decoration does not live on W");
            }
        }
        Ok(DecoratedGraph {
            r,
            mult,
            vdecs,
            wdecs,
            pairing,
        })
    }

    pub fn m(&self) -> usize {
        self.mult.len()
    }
}

/// All `m x m` matrices of nonnegative integers whose rows and columns each
/// sum to `r`. Entries are tried from large to small in row-major order, so
/// the identity-like matrix comes first.
pub fn enumerate_graphs(m: usize, r: u32) -> Vec<Multiplicity> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut current = vec![vec![0u32; m]; m];
    let mut col_left = vec![r; m];
    fill_cell(&mut current, &mut col_left, 0, 0, r, r, &mut out);
    out
}

fn fill_cell(
    current: &mut Multiplicity,
    col_left: &mut [u32],
    i: usize,
    j: usize,
    row_left: u32,
    r: u32,
    out: &mut Vec<Multiplicity>,
) {
    let m = current.len();
    if i == m {
        out.push(current.clone());
        return;
    }
    if j == m - 1 {
        // The last column is forced by the row budget.
        if row_left > col_left[j] {
            return;
        }
        current[i][j] = row_left;
        col_left[j] -= row_left;
        fill_cell(current, col_left, i + 1, 0, r, r, out);
        col_left[j] += row_left;
        current[i][j] = 0;
        return;
    }
    let rest_capacity: u32 = col_left[j + 1..].iter().sum();
    let hi = row_left.min(col_left[j]);
    let lo = row_left.saturating_sub(rest_capacity);
    for x in (lo..=hi).rev() {
        current[i][j] = x;
        col_left[j] -= x;
        fill_cell(current, col_left, i, j + 1, row_left - x, r, out);
        col_left[j] += x;
    }
    current[i][j] = 0;
}

/// `s_γ = prod M[i][j]!`, the number of arrow permutations fixing every vertex.
pub fn symmetry_order(mult: &Multiplicity) -> BigUint {
    mult.iter()
        .flatten()
        .fold(BigUint::one(), |acc, &k| acc * factorial(k as u64))
}

/// `(r!)^{2m} / s_γ`: how many arrow-labelled expanded graphs collapse onto `M`.
pub fn expansion_count(mult: &Multiplicity, r: u32) -> BigUint {
    let m = mult.len() as u32;
    let rf = factorial(r as u64);
    num_traits::pow(rf, (2 * m) as usize) / symmetry_order(mult)
}

/// Writes a degree-`r` polynomial as `sum_k c_k (ℓ_k · x)^r` with primitive
/// integer linear forms `ℓ_k`, using the finite-difference identity
/// `z_1...z_r = (1/r!) sum_{S ⊆ [r]} (-1)^{r-|S|} (sum_{i ∈ S} z_i)^r`.
/// Terms are keyed by `ℓ_k` so repeated forms merge.
pub fn power_sum_decomposition(p: &SymPoly) -> Vec<(Vec<i64>, Scalar)> {
    let r = p.degree();
    let mut acc: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
    if r == 0 {
        for (_, c) in p.terms() {
            acc.insert(vec![0; p.dim()], c.clone());
        }
        return acc.into_iter().collect();
    }
    let inv_rf = Scalar::new(BigInt::one(), BigInt::from(factorial(r as u64)));
    for (e, c) in p.terms() {
        let vars = e.variables();
        let base = c * &inv_rf;
        for mask in 1u32..(1 << r) {
            let mut form = vec![0i64; p.dim()];
            for (bit, &k) in vars.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    form[k] += 1;
                }
            }
            let g = form.iter().fold(0i64, |g, &x| g.gcd(&x));
            for x in form.iter_mut() {
                *x /= g;
            }
            let sign = if (r as u32 - mask.count_ones()).is_multiple_of(2) { 1 } else { -1 };
            let weight = &base * Scalar::from_integer(num_traits::pow(BigInt::from(g), r)) * Scalar::from_integer(sign.into());
            let slot = acc.entry(form).or_insert_with(Scalar::zero);
            *slot += weight;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `|γ|` for decorations `ṽ_i = v_i^{⊗r}`, `w̃_j = w_j^{⊗r}`:
/// `prod_{i,j} u(v_i ⊗ w_j)^{M[i][j]}`.
pub fn graph_value_rank_one(
    vs: &[Vec<Scalar>],
    ws: &[Vec<Scalar>],
    mult: &Multiplicity,
    pairing: &PairingForm,
) -> Result<Scalar> {
    let m = mult.len();
    if vs.len() != m || ws.len() != m {
        return dim_err("vector count does not match the multiplicity matrix");
    }
    let mut value = Scalar::one();
    for (i, v) in vs.iter().enumerate() {
        for (j, w) in ws.iter().enumerate() {
            let k = mult[i][j];
            if k > 0 {
                value *= crate::scalar::pow(&pairing.pair(v, w)?, k);
            }
        }
    }
    Ok(value)
}

/// `|γ|`, extended multilinearly from rank-one decorations via
/// [`power_sum_decomposition`].
pub fn graph_value(g: &DecoratedGraph) -> Result<Scalar> {
    let m = g.m();
    let to_scalar = |form: &[i64]| form.iter().map(|&x| Scalar::from_integer(x.into())).collect::<Vec<_>>();
    let vparts: Vec<Vec<(Vec<Scalar>, Scalar)>> = g
        .vdecs
        .iter()
        .map(|p| power_sum_decomposition(p).into_iter().map(|(l, c)| (to_scalar(&l), c)).collect())
        .collect();
    let wparts: Vec<Vec<(Vec<Scalar>, Scalar)>> = g
        .wdecs
        .iter()
        .map(|p| power_sum_decomposition(p).into_iter().map(|(l, c)| (to_scalar(&l), c)).collect())
        .collect();
    if vparts.iter().chain(&wparts).any(Vec::is_empty) {
        return Ok(Scalar::zero());
    }
    // pair_pow[i][a][j][b] = u(ℓ_{i,a} ⊗ λ_{j,b})^{M[i][j]}
    let mut pair_pow: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::with_capacity(m);
    for (i, vp) in vparts.iter().enumerate() {
        let mut per_a = Vec::with_capacity(vp.len());
        for (l, _) in vp {
            let mut per_j = Vec::with_capacity(m);
            for (j, wp) in wparts.iter().enumerate() {
                let k = g.mult[i][j];
                let row = wp
                    .iter()
                    .map(|(lam, _)| {
                        if k == 0 {
                            Ok(Scalar::one())
                        } else {
                            g.pairing.pair(l, lam).map(|x| crate::scalar::pow(&x, k))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                per_j.push(row);
            }
            per_a.push(per_j);
        }
        pair_pow.push(per_a);
    }

    // Once every source vertex has a chosen form, the sum over sink choices
    // factorises vertex by vertex.
    let mut total = Scalar::zero();
    let mut choice = vec![0usize; m];
    loop {
        let mut term: Scalar = choice
            .iter()
            .enumerate()
            .fold(Scalar::one(), |acc, (i, &a)| acc * &vparts[i][a].1);
        for (j, wp) in wparts.iter().enumerate() {
            if term.is_zero() {
                break;
            }
            let mut s = Scalar::zero();
            for (b, (_, cb)) in wp.iter().enumerate() {
                let mut prod = cb.clone();
                for (i, &a) in choice.iter().enumerate() {
                    let f = &pair_pow[i][a][j][b];
                    if f.is_zero() {
                        prod = Scalar::zero();
                        break;
                    }
                    prod *= f;
                }
                s += prod;
            }
            term *= s;
        }
        total += term;
        // odometer
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(total);
            }
            choice[pos] += 1;
            if choice[pos] < vparts[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// One position in an operator word: the multiplication factor of source
/// vertex `i` or the contraction factor of sink vertex `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordSlot {
    Mul(usize),
    Con(usize),
}

/// `m(ṽ_0) i(w̃_0) m(ṽ_1) i(w̃_1) ...`, the products spanning the generated algebra.
pub fn alternating_order(m: usize) -> Vec<WordSlot> {
    (0..m).flat_map(|k| [WordSlot::Mul(k), WordSlot::Con(k)]).collect()
}

fn check_order(order: &[WordSlot], m: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut mul_pos = vec![usize::MAX; m];
    let mut con_pos = vec![usize::MAX; m];
    if order.len() != 2 * m {
        return dim_err(format!("word of length {} for {m} vertex pairs", order.len()));
    }
    for (pos, slot) in order.iter().enumerate() {
        let (table, k) = match *slot {
            WordSlot::Mul(i) => (&mut mul_pos, i),
            WordSlot::Con(j) => (&mut con_pos, j),
        };
        if k >= m || table[k] != usize::MAX {
            return dim_err(format!("word slot {slot:?} is out of range or repeated"));
        }
        table[k] = pos;
    }
    Ok((mul_pos, con_pos))
}

/// Number of arrows whose multiplication factor stands to the right of the
/// contraction factor at its other end, counted with multiplicity.
pub fn rho_of(mult: &Multiplicity, order: &[WordSlot]) -> Result<u64> {
    let m = mult.len();
    let (mul_pos, con_pos) = check_order(order, m)?;
    let mut rho = 0u64;
    for i in 0..m {
        for j in 0..m {
            if mul_pos[i] > con_pos[j] {
                rho += mult[i][j] as u64;
            }
        }
    }
    Ok(rho)
}

/// Coefficient of `|γ|` in the trace of a word on `S^n V` with `d = dim V`:
/// `(r!)^{2m} / s_γ * C(d + ρ + n - 1, d + r m - 1)`.
///
/// `rho` counts arrows with multiplicity, i.e. it is the number of crossings
/// in the expanded word where every `r`-th power factor is split into `r`
/// first-order factors. For `r = 1` this is `C(d + ρ + n - 1, d + m - 1)`.
pub fn c_gamma(mult: &Multiplicity, rho: u64, d: usize, n: usize, r: u32) -> Scalar {
    let m = mult.len() as u64;
    let top = d as u64 + rho + n as u64;
    let bottom = d as u64 + r as u64 * m;
    if top == 0 || bottom == 0 {
        // Only reachable for d = 0, which the callers exclude.
        return Scalar::zero();
    }
    let b = binomial(top - 1, bottom - 1);
    from_biguint(&expansion_count(mult, r)) * from_biguint(&b)
}

/// Builds the word with the given slot order over the supplied decorations.
pub fn build_word(
    vdecs: &[SymPoly],
    wdecs: &[SymPoly],
    order: &[WordSlot],
    pairing: &PairingForm,
) -> Result<OperatorWord> {
    check_order(order, vdecs.len())?;
    if wdecs.len() != vdecs.len() {
        return dim_err("source and sink decoration counts differ");
    }
    let factors = order
        .iter()
        .map(|slot| match *slot {
            WordSlot::Mul(i) => OperatorFactor::mul(vdecs[i].clone()),
            WordSlot::Con(j) => OperatorFactor::con(wdecs[j].clone()),
        })
        .collect();
    OperatorWord::new(factors, pairing.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTerm {
    pub mult: Multiplicity,
    pub rho: u64,
    pub s_gamma: BigUint,
    pub c_gamma: Scalar,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceIdentityReport {
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub per_graph: Vec<GraphTerm>,
    pub matches: bool,
}

/// Compares the trace of the word on `S^n V` with the weighted graph sum.
pub fn trace_identity_check(
    vdecs: &[SymPoly],
    wdecs: &[SymPoly],
    order: &[WordSlot],
    pairing: &PairingForm,
    n: usize,
) -> Result<TraceIdentityReport> {
    trace_identity_check_with(vdecs, wdecs, order, pairing, n, false)
}

/// As [`trace_identity_check`]; with `corrupt_coefficient` set, the first
/// graph's coefficient is increased by one. This exists only as a negative
/// control for the verification tooling.
pub fn trace_identity_check_with(
    vdecs: &[SymPoly],
    wdecs: &[SymPoly],
    order: &[WordSlot],
    pairing: &PairingForm,
    n: usize,
    corrupt_coefficient: bool,
) -> Result<TraceIdentityReport> {
    let m = vdecs.len();
    if m == 0 {
        let lhs = word_trace(&OperatorWord::new(vec![], pairing.clone())?, n)?;
        // The only graph on zero vertices contributes C(d + n - 1, d - 1).
        let rhs = from_biguint(&binomial((pairing.dim_v() + n - 1) as u64, (pairing.dim_v() - 1) as u64));
        return Ok(TraceIdentityReport {
            matches: lhs == rhs,
            lhs,
            rhs,
            per_graph: vec![],
        });
    }
    let word = build_word(vdecs, wdecs, order, pairing)?;
    let r = vdecs[0].degree() as u32;
    let lhs = word_trace(&word, n)?;
    let d = pairing.dim_v();
    let mut rhs = Scalar::zero();
    let mut per_graph = Vec::new();
    for (idx, mult) in enumerate_graphs(m, r).into_iter().enumerate() {
        let rho = rho_of(&mult, order)?;
        let mut c = c_gamma(&mult, rho, d, n, r);
        if corrupt_coefficient && idx == 0 {
            c += Scalar::one();
        }
        let g = DecoratedGraph::new(mult.clone(), vdecs.to_vec(), wdecs.to_vec(), pairing.clone())?;
        let value = graph_value(&g)?;
        rhs += &c * &value;
        per_graph.push(GraphTerm {
            s_gamma: symmetry_order(&mult),
            mult,
            rho,
            c_gamma: c,
            value,
        });
    }
    Ok(TraceIdentityReport {
        matches: lhs == rhs,
        lhs,
        rhs,
        per_graph,
    })
}

/// A permutation of the `r m` tensor slots realising `M`: slot `s` of the
/// source side (block `s / r` belongs to `α_{s/r}`) is paired with slot
/// `sigma[s]` of the sink side. Slots are filled in row-major order of `M`.
pub fn canonical_slot_assignment(mult: &Multiplicity, r: u32) -> Result<Vec<usize>> {
    check_margins(mult, r)?;
    let m = mult.len();
    let r = r as usize;
    let mut next_sink = vec![0usize; m];
    let mut sigma = Vec::with_capacity(r * m);
    for (i, row) in mult.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            for _ in 0..k {
                sigma.push(j * r + next_sink[j]);
                next_sink[j] += 1;
            }
        }
        debug_assert_eq!(sigma.len(), (i + 1) * r);
    }
    Ok(sigma)
}

/// The multiplicity matrix induced by a slot permutation.
pub fn induced_multiplicity(sigma: &[usize], r: usize) -> Result<Multiplicity> {
    if r == 0 || !sigma.len().is_multiple_of(r) {
        return dim_err("slot permutation length is not a multiple of r");
    }
    let m = sigma.len() / r;
    let mut seen = vec![false; sigma.len()];
    let mut mult = vec![vec![0u32; m]; m];
    for (s, &t) in sigma.iter().enumerate() {
        if t >= sigma.len() || seen[t] {
            return Err(Error::InvalidInput("slot assignment is not a permutation".into()));
        }
        seen[t] = true;
        mult[s / r][t / r] += 1;
    }
    Ok(mult)
}
