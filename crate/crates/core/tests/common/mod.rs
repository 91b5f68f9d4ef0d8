//! Helpers shared by the integration test targets: seeded random data and
//! brute-force oracles that do not go through the library's fast paths.
#![allow(dead_code)]

use gbscert::graph::Multiplicity;
use gbscert::monomial::{monomial_basis, ExpVec};
use gbscert::scalar::{factorial, from_biguint, int, ratio};
use gbscert::{PairingForm, Scalar, ScalarMatrix, SymPoly};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Scalar> {
    (0..d).map(|_| small_rational(rng)).collect()
}

pub fn nonzero_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Scalar> {
    loop {
        let v = vector(rng, d);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn form(rng: &mut ChaCha8Rng, d: usize, r: usize) -> SymPoly {
    loop {
        let terms = monomial_basis(d, r)
            .into_iter()
            .map(|e| (e, small_rational(rng)));
        let p = SymPoly::from_terms(d, r, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ScalarMatrix {
    ScalarMatrix::from_rows((0..rows).map(|_| vector(rng, cols)).collect()).unwrap()
}

pub fn pairing(rng: &mut ChaCha8Rng, d: usize, e: usize) -> PairingForm {
    PairingForm::new(matrix(rng, d, e)).unwrap()
}

/// A nonzero pairing of the requested rank, built as a sum of outer products.
pub fn pairing_of_rank(rng: &mut ChaCha8Rng, d: usize, e: usize, rank: usize) -> PairingForm {
    loop {
        let mut u = ScalarMatrix::zeros(d, e);
        for _ in 0..rank {
            let a = vector(rng, d);
            let b = vector(rng, e);
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    let x = u.get(i, j) + ai * bj;
                    u.set(i, j, x);
                }
            }
        }
        if gbscert::matrix_rank(&u) == rank {
            return PairingForm::new(u).unwrap();
        }
    }
}

/// Coordinate `r`-th powers plus `extra` random forms: never shares a zero
/// besides the origin.
pub fn basepoint_free_span(rng: &mut ChaCha8Rng, d: usize, r: usize, extra: usize) -> Vec<SymPoly> {
    let mut gens: Vec<SymPoly> = (0..d)
        .map(|k| {
            let mut e = vec![0u32; d];
            e[k] = r as u32;
            SymPoly::monomial(ExpVec::new(e), int(1))
        })
        .collect();
    gens.extend((0..extra).map(|_| form(rng, d, r)));
    gens
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn permanent(g: &[Vec<Scalar>]) -> Scalar {
    permutations(g.len())
        .into_iter()
        .map(|p| p.iter().enumerate().fold(Scalar::one(), |acc, (i, &j)| acc * &g[i][j]))
        .fold(Scalar::zero(), |acc, x| acc + x)
}

/// Entry of the symmetric tensor behind `p` at an index tuple, under
/// `v^{⊗r} ↔ (v · x)^r`: the coefficient of `x^e` times `e! / r!`.
fn tensor_entry(p: &SymPoly, idx: &[usize]) -> Scalar {
    let mut e = vec![0u32; p.dim()];
    for &k in idx {
        e[k] += 1;
    }
    let weight = e.iter().fold(num_bigint::BigUint::one(), |acc, &k| acc * factorial(k as u64));
    p.coeff(&ExpVec::new(e)) * from_biguint(&weight) / from_biguint(&factorial(idx.len() as u64))
}

/// `|γ|` as a full contraction of symmetric tensors: arrow `s` joins source
/// slot `s` with sink slot `sigma[s]` and carries `u`.
pub fn contraction_oracle(
    mult: &Multiplicity,
    vdecs: &[SymPoly],
    wdecs: &[SymPoly],
    pairing: &PairingForm,
) -> Scalar {
    let m = mult.len();
    let r = vdecs[0].degree();
    let slots = r * m;
    let sigma = gbscert::graph::canonical_slot_assignment(mult, r as u32).unwrap();
    let (d, e) = (pairing.dim_v(), pairing.dim_w());
    let u = pairing.matrix();
    let mut total = Scalar::zero();
    let mut vi = vec![0usize; slots];
    loop {
        let left = (0..m).fold(Scalar::one(), |acc, i| acc * tensor_entry(&vdecs[i], &vi[i * r..(i + 1) * r]));
        if !left.is_zero() {
            let mut wi = vec![0usize; slots];
            loop {
                let right = (0..m).fold(Scalar::one(), |acc, j| acc * tensor_entry(&wdecs[j], &wi[j * r..(j + 1) * r]));
                if !right.is_zero() {
                    let arrows = (0..slots).fold(Scalar::one(), |acc, s| acc * u.get(vi[s], wi[sigma[s]]));
                    total += &left * right * arrows;
                }
                if !odometer(&mut wi, e) {
                    break;
                }
            }
        }
        if !odometer(&mut vi, d) {
            break;
        }
    }
    total
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for x in digits.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}
