//! Isomorphism invariants computed by exhaustive scans over `F_p`.
//!
//! Every census here counts `F_p`-rational points. They are used to tell
//! algebras apart, not as point counts of the varieties over an algebraically
//! closed field. Equal fingerprints are only consistent with isomorphism.

use rayon::prelude::*;

use crate::algebra::{Algebra, Element};
use crate::constructions::{b16, delta16};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vector, EchelonBasis};
use crate::modp::ResidueAlgebra;
use crate::scalar::{inv_mod, Scalar};

/// Default cap on the number of points scanned.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// All `a` with `a·a = a`, in lexicographic coordinate order.
pub fn enumerate_idempotents(a: &Algebra, budget: u128) -> Result<Vec<Element>> {
    let table = ResidueAlgebra::new(a)?;
    let hits = table.scan_squares(budget, |x, sq| x == sq)?;
    Ok(hits.iter().map(|x| table.to_element(x)).collect())
}

/// All `a` with `a·a = 0`, in lexicographic coordinate order.
pub fn enumerate_square_zero(a: &Algebra, budget: u128) -> Result<Vec<Element>> {
    let table = ResidueAlgebra::new(a)?;
    let hits = table.scan_squares(budget, |_, sq| sq.iter().all(|&c| c == 0))?;
    Ok(hits.iter().map(|x| table.to_element(x)).collect())
}

/// `μ` with `u = μ v`, both nonzero.
fn residue_ratio(u: &[u64], v: &[u64], p: u64) -> Option<u64> {
    let k = v.iter().position(|&c| c != 0)?;
    let mu = (u[k] as u128 * inv_mod(v[k], p)? as u128 % p as u128) as u64;
    u.iter()
        .zip(v)
        .all(|(&a, &b)| a as u128 == mu as u128 * b as u128 % p as u128)
        .then_some(mu)
}

/// The set of `μ` such that some square-zero pair has `z1 z2 = μ z2 z1` with
/// both products nonzero, sorted by residue.
pub fn mu_spectrum(a: &Algebra, budget: u128) -> Result<Vec<Scalar>> {
    let table = ResidueAlgebra::new(a)?;
    let p = table.p;
    let zeros = table.scan_squares(budget, |_, sq| sq.iter().all(|&c| c == 0))?;
    let pairs = (zeros.len() as u128).pow(2);
    if pairs > budget {
        return Err(Error::BudgetExceeded { required: pairs, budget });
    }
    let mut found: Vec<u64> = zeros
        .par_iter()
        .flat_map_iter(|z1| {
            let mut ab = vec![0u64; table.dim];
            let mut ba = vec![0u64; table.dim];
            let mut local = Vec::new();
            for z2 in &zeros {
                table.mul_into(z1, z2, &mut ab);
                if ab.iter().all(|&c| c == 0) {
                    continue;
                }
                table.mul_into(z2, z1, &mut ba);
                if let Some(mu) = residue_ratio(&ab, &ba, p) {
                    local.push(mu);
                }
            }
            local
        })
        .collect();
    found.sort_unstable();
    found.dedup();
    Ok(found.into_iter().map(|m| a.field().from_u64(m)).collect())
}

/// For ordered pairs `(u, v)` of distinct nonzero idempotents with
/// `[u, v] = c t` for a nonzero idempotent `t` and `c ≠ 0`, the coefficients
/// `c` as a sorted multiset.
pub fn idempotent_commutator_fingerprint(a: &Algebra, budget: u128) -> Result<Vec<Scalar>> {
    let idempotents: Vec<Element> =
        enumerate_idempotents(a, budget)?.into_iter().filter(|x| !vector::is_zero(x)).collect();
    let mut out = Vec::new();
    for (i, u) in idempotents.iter().enumerate() {
        for (j, v) in idempotents.iter().enumerate() {
            if i == j {
                continue;
            }
            let c = a.commutator(u, v)?;
            if vector::is_zero(&c) {
                continue;
            }
            out.extend(idempotents.iter().filter_map(|t| vector::ratio(&c, t)));
        }
    }
    out.sort_by(|x, y| x.canonical_cmp(y));
    Ok(out)
}

/// One named check of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub clauses: Vec<Clause>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

/// The augmented `Δ(λ)`-homotope of [`b16`], with the adjoined unit last.
pub fn b16_hat(lambda: &Scalar) -> Algebra {
    b16(lambda.field()).left_delta_homotope(&delta16(lambda)).expect("dimension 16").augment_unit()
}

/// Indices in [`b16_hat`] of the summand `R = span(1, x, y, w)`.
pub const SPLITTING_R: [usize; 4] = [16, 1, 2, 15];
/// Indices in [`b16_hat`] of the square-zero summand `N`: `h1, h2` and the
/// ten words of length two.
pub const SPLITTING_N: [usize; 12] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14];

/// Checks the decomposition `B̂ = R ⊕ N` of the augmented `Δ(λ)`-homotope of
/// [`b16`].
pub fn verify_graded_splitting(lambda: &Scalar) -> Result<SplittingReport> {
    check_graded_splitting(&b16_hat(lambda), lambda, &SPLITTING_R, &SPLITTING_N)
}

/// The clauses of [`verify_graded_splitting`] for an arbitrary choice of the
/// two summands, given by basis indices. `r[1]` and `r[2]` play `x` and `y`.
pub fn check_graded_splitting(
    hat: &Algebra,
    lambda: &Scalar,
    r: &[usize],
    n: &[usize],
) -> Result<SplittingReport> {
    let field = hat.field();
    let span = |idx: &[usize]| {
        let mut s = EchelonBasis::new(field, hat.dim());
        idx.iter().for_each(|&i| {
            s.insert(&unit_vector(field, hat.dim(), i));
        });
        s
    };
    let (r_span, n_span) = (span(r), span(n));
    let all_products = |left: &[usize], right: &[usize], pred: &dyn Fn(&[Scalar]) -> bool| -> Result<bool> {
        for &i in left {
            for &j in right {
                if !pred(&hat.mul(&hat.basis_element(i), &hat.basis_element(j))?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    let (x, y) = (hat.basis_element(r[1]), hat.basis_element(r[2]));
    let xy = hat.mul(&x, &y)?;
    let yx = hat.mul(&y, &x)?;
    let mut joint = r_span.clone();
    let direct = n.iter().all(|&i| joint.insert(&unit_vector(field, hat.dim(), i)));
    let clauses = vec![
        ("R ∩ N = 0", direct),
        ("R×R ⊆ R", all_products(r, r, &|v| r_span.contains(v))?),
        ("x×x = 0", hat.is_square_zero(&x)?),
        ("y×y = 0", hat.is_square_zero(&y)?),
        ("x×y − λ(y×x) = 0", vector::is_zero(&vector::sub(&xy, &vector::scale(&yx, lambda)))),
        ("N×N = 0", all_products(n, n, &vector::is_zero)?),
        ("R×N ⊆ N", all_products(r, n, &|v| n_span.contains(v))?),
        ("N×R ⊆ N", all_products(n, r, &|v| n_span.contains(v))?),
    ];
    Ok(SplittingReport {
        clauses: clauses.into_iter().map(|(name, passed)| Clause { name: name.into(), passed }).collect(),
    })
}
