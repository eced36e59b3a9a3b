//! The fixed acceptance battery run by `homotopelab paper-verify`.
//!
//! Each criterion is exact. Randomized criteria draw from a ChaCha8 stream
//! seeded with `seed + id`, and report that seed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{conjugation_isomorphism, is_isomorphism_witness, Algebra, Element};
use crate::constructions::{b16, b_lambda, delta16, lambda_element, mat_entry, mat_over, matrix_algebra, r_lambda};
use crate::error::{Error, Result};
use crate::fingerprints::{
    b16_hat, enumerate_idempotents, idempotent_commutator_fingerprint, mu_spectrum, verify_graded_splitting,
    DEFAULT_BUDGET,
};
use crate::linalg::{vector, LinearMap, Matrix};
use crate::poly::{proportional, sylvester_resultant, BinaryQuartic};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::{cone_check, pencil_522, pencil_derivative_formula, pencil_first_order, HomotopyTriple, Trilinear};

pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Smaller random samples for a fast smoke run.
    pub quick: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: DEFAULT_SEED, quick: false }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub limit: Duration,
    pub randomized: bool,
}

const fn criterion(id: u32, title: &'static str, secs: u64, randomized: bool) -> Criterion {
    Criterion { id, title, limit: Duration::from_secs(secs), randomized }
}

pub const CRITERIA: [Criterion; 14] = [
    criterion(1, "B16 construction", 1, false),
    criterion(2, "B_lambda idempotents over F7", 1, false),
    criterion(3, "commutator fingerprints separate B_2 and B_3", 1, false),
    criterion(4, "R_lambda mu-spectrum over F11", 30, false),
    criterion(5, "graded splitting of the B16 homotope", 5, false),
    criterion(6, "no nonzero idempotents in B16_Delta over F2", 10, false),
    criterion(7, "well-tempered elements", 30, false),
    criterion(8, "corner subalgebras of the augmented Mat2(B16) homotope", 60, false),
    criterion(9, "isotopy invariance of determinantal polynomials", 30, true),
    criterion(10, "cone proposition", 30, true),
    criterion(11, "pencil derivative formula", 5, true),
    criterion(12, "(5,4,2) pencil j-invariants", 10, true),
    criterion(13, "quartic invariant soundness", 10, true),
    criterion(14, "Mat_2 rank-one homotopes", 1, true),
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: Criterion,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.criterion.limit
    }

    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    pub fn line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        let late = if self.within_limit() { "" } else { " over time limit" };
        format!(
            "[{status}] {:02} {}: {} ({:.3}s / {}s{late}){seed}",
            self.criterion.id,
            self.criterion.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.criterion.limit.as_secs(),
        )
    }
}

pub fn run_all(config: &Config) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run(c.id, config)).collect()
}

/// Runs one criterion by id (1 to 14).
pub fn run(id: u32, config: &Config) -> Outcome {
    let criterion = *CRITERIA.iter().find(|c| c.id == id).expect("criterion id in 1..=14");
    let seed = config.seed.wrapping_add(id as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let result = match id {
        1 => b16_construction(),
        2 => b_lambda_idempotents(),
        3 => commutator_fingerprints(),
        4 => mu_spectra(),
        5 => graded_splitting(),
        6 => b16_homotope_idempotents(),
        7 => well_tempered(),
        8 => corners(),
        9 => isotopy_invariance(&mut rng, if config.quick { 10 } else { 50 }),
        10 => cone_proposition(&mut rng, if config.quick { 5 } else { 20 }),
        11 => pencil_derivative(&mut rng, 10),
        12 => pencil_j_invariants(&mut rng),
        13 => quartic_soundness(&mut rng, if config.quick { 25 } else { 100 }),
        14 => mat2_rank_one(&mut rng),
        _ => unreachable!(),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(check) => check,
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome { criterion, passed, detail, elapsed, seed: criterion.randomized.then_some(seed) }
}

type Check = Result<(bool, String)>;

fn fp(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

fn elements(field: FieldSpec, rows: &[&[i64]]) -> Vec<Element> {
    rows.iter().map(|r| r.iter().map(|&c| field.from_i64(c)).collect()).collect()
}

fn show(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
}

fn show_set(v: &[Element]) -> String {
    format!("{{{}}}", v.iter().map(|e| show(e)).collect::<Vec<_>>().join(" "))
}

/// Generator count of each [`b16`] basis word.
const B16_WORD_LENGTHS: [usize; 16] = [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3];

fn b16_construction() -> Check {
    let b = b16(FieldSpec::Rationals);
    let e = |l: &str| b.basis_element(b.index_of(l).expect("label"));
    let associative = b.is_associative();
    let xh1y = b.mul3(&e("x"), &e("h1"), &e("y"))?;
    let yh2x = b.mul3(&e("y"), &e("h2"), &e("x"))?;
    let relation = xh1y == yh2x && xh1y == e("w");
    let mut long_zero = true;
    for i in 0..16 {
        for j in 0..16 {
            if B16_WORD_LENGTHS[i] + B16_WORD_LENGTHS[j] >= 4 {
                long_zero &= b.basis_product(i, j).is_empty();
            }
        }
    }
    // every word of exactly four generators
    let gens = [e("x"), e("y"), e("h1"), e("h2")];
    for w in 0..256usize {
        let word = [w & 3, (w >> 2) & 3, (w >> 4) & 3, w >> 6];
        let prod = word.iter().skip(1).try_fold(gens[word[0]].clone(), |acc, &g| b.mul(&acc, &gens[g]))?;
        long_zero &= vector::is_zero(&prod);
    }
    Ok((
        b.dim() == 16 && associative && relation && long_zero,
        format!("dim={} associative={associative} xh1y=yh2x=w:{relation} length>=4 zero:{long_zero}", b.dim()),
    ))
}

fn b_lambda_idempotents() -> Check {
    let f = fp(7);
    let got = enumerate_idempotents(&b_lambda(&f.from_i64(2)), DEFAULT_BUDGET)?;
    // 0, e1-e2, (1+λ)^{-1} e1 = 5 e1, e1 - λ/(1+λ) e2 = e1 + 4 e2
    let mut expected = elements(f, &[&[0, 0], &[1, 6], &[5, 0], &[1, 4]]);
    expected.sort_by(|a, b| a.iter().map(|s| s.residue()).cmp(b.iter().map(|s| s.residue())));
    let misprint = elements(f, &[&[1, 3]]).remove(0);
    let misprint_rejected = !got.contains(&misprint);
    let degenerate = enumerate_idempotents(&b_lambda(&f.from_i64(-1)), DEFAULT_BUDGET)?;
    let expected_degenerate = elements(f, &[&[0, 0], &[1, 6]]);
    Ok((
        got == expected && misprint_rejected && degenerate == expected_degenerate,
        format!(
            "lambda=2: {} (e1+3e2 idempotent: {}); lambda=-1: {}",
            show_set(&got),
            !misprint_rejected,
            show_set(&degenerate)
        ),
    ))
}

fn commutator_fingerprints() -> Check {
    let f = fp(7);
    let two = idempotent_commutator_fingerprint(&b_lambda(&f.from_i64(2)), DEFAULT_BUDGET)?;
    let three = idempotent_commutator_fingerprint(&b_lambda(&f.from_i64(3)), DEFAULT_BUDGET)?;
    Ok((two != three, format!("B_2: {} B_3: {}", show(&two), show(&three))))
}

fn mu_spectra() -> Check {
    let f = fp(11);
    let two = mu_spectrum(&r_lambda(&f.from_i64(2))?, DEFAULT_BUDGET)?;
    let three = mu_spectrum(&r_lambda(&f.from_i64(3))?, DEFAULT_BUDGET)?;
    let want_two: Vec<Scalar> = [2, 6].iter().map(|&c| f.from_i64(c)).collect();
    let want_three: Vec<Scalar> = [3, 4].iter().map(|&c| f.from_i64(c)).collect();
    let disjoint = two.iter().all(|m| !three.contains(m));
    Ok((
        two == want_two && three == want_three && disjoint,
        format!("R_2: {} R_3: {} disjoint={disjoint}", show(&two), show(&three)),
    ))
}

fn graded_splitting() -> Check {
    let mut failures = Vec::new();
    for field in [FieldSpec::Rationals, fp(5)] {
        for lambda in 0..3 {
            let report = verify_graded_splitting(&field.from_i64(lambda))?;
            for clause in report.clauses.iter().filter(|c| !c.passed) {
                failures.push(format!("{field} lambda={lambda}: {}", clause.name));
            }
        }
    }
    let detail = if failures.is_empty() {
        "all clauses hold for lambda in {0,1,2} over Q and F5".to_string()
    } else {
        failures.join("; ")
    };
    Ok((failures.is_empty(), detail))
}

fn b16_homotope_idempotents() -> Check {
    let f = fp(2);
    let mut counts = Vec::new();
    for lambda in 0..2 {
        let a = b16(f).left_delta_homotope(&delta16(&f.from_i64(lambda)))?;
        let found = enumerate_idempotents(&a, DEFAULT_BUDGET)?;
        counts.push((found.len(), found.iter().all(|x| vector::is_zero(x))));
    }
    Ok((
        counts.iter().all(|&(n, zero)| n == 1 && zero),
        format!("idempotents found for lambda=0,1: {}, {}", counts[0].0, counts[1].0),
    ))
}

fn well_tempered() -> Check {
    let f = fp(5);
    let base = b16(f);
    let m = mat_over(&base, 2)?;
    let mut lambda_ok = Vec::new();
    let mut delta_ok = Vec::new();
    for l in 0..3 {
        let delta = delta16(&f.from_i64(l));
        lambda_ok.push(m.is_well_tempered(&lambda_element(&base, &delta)?)?);
        delta_ok.push(base.is_well_tempered(&delta)?);
    }
    Ok((
        lambda_ok.iter().all(|&b| b) && delta_ok.iter().all(|&b| !b),
        format!("Mat2(B16) Lambda: {lambda_ok:?}; B16 Delta: {delta_ok:?}"),
    ))
}

/// `M̂_Λ`: the augmented `Λ(λ)`-homotope of `Mat2(B16)`; the adjoined unit
/// is the last coordinate.
pub fn augmented_mat2_b16(lambda: &Scalar) -> Result<(Algebra, Algebra)> {
    let base = b16(lambda.field());
    let m = mat_over(&base, 2)?;
    let big_lambda = lambda_element(&base, &delta16(lambda))?;
    Ok((base, m.left_delta_homotope(&big_lambda)?.augment_unit()))
}

/// `E_{rc} ⊗ x` as an element of the augmented algebra.
fn hat_entry(base: &Algebra, r: usize, c: usize, x: &[Scalar]) -> Element {
    let mut v = mat_entry(base, 2, r, c, x);
    v.push(base.field().zero());
    v
}

/// The corner idempotents `e = diag(1, 0)` and `ε = 𝟙 − e` of `M̂_Λ`.
pub fn corner_idempotents(base: &Algebra, hat: &Algebra) -> (Element, Element) {
    let e = hat_entry(base, 0, 0, base.unit().expect("B16 is unital"));
    let eps = vector::sub(hat.unit().expect("augmented"), &e);
    (e, eps)
}

fn corners() -> Check {
    let f = fp(5);
    let lambda = f.one();
    let (base, hat) = augmented_mat2_b16(&lambda)?;
    let (e, eps) = corner_idempotents(&base, &hat);

    let top = hat.corner_subalgebra(&e)?;
    let into_top = (0..16)
        .map(|i| top.coordinates(&hat_entry(&base, 0, 0, &base.basis_element(i))).ok_or(Error::DimensionMismatch("E11⊗x outside the corner".into())))
        .collect::<Result<Vec<_>>>()?;
    let top_ok = top.dim() == 16 && is_isomorphism_witness(&base, &top.algebra, &LinearMap::from_images(f, 16, &into_top)?);

    let bottom = hat.corner_subalgebra(&eps)?;
    let target = b16_hat(&lambda);
    let mut images = (0..16)
        .map(|i| bottom.coordinates(&hat_entry(&base, 1, 1, &base.basis_element(i))).ok_or(Error::DimensionMismatch("E22⊗x outside the corner".into())))
        .collect::<Result<Vec<_>>>()?;
    images.push(bottom.coordinates(&eps).expect("ε is the corner unit"));
    let bottom_ok = bottom.dim() == 17 && is_isomorphism_witness(&target, &bottom.algebra, &LinearMap::from_images(f, 17, &images)?);

    Ok((
        hat.dim() == 65 && top_ok && bottom_ok,
        format!(
            "dim M^={}; e-corner dim {} witness to B16: {top_ok}; eps-corner dim {} witness to B^16_Delta(1): {bottom_ok}",
            hat.dim(),
            top.dim(),
            bottom.dim()
        ),
    ))
}

fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_u64(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-5..=5)),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    Matrix::new(field, rows, cols, data).expect("sized")
}

fn random_invertible(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

fn random_cube(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Trilinear {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push(((i, j, k), random_scalar(rng, field)));
            }
        }
    }
    Trilinear::from_entries(field, [n, n, n], entries).expect("in range")
}

fn isotopy_invariance(rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let f = fp(101);
    let mut held = 0;
    let mut nonzero = 0;
    for _ in 0..samples {
        let m = random_cube(rng, f, 4);
        let g: Vec<LinearMap> = (0..3).map(|_| LinearMap::new(random_invertible(rng, f, 4))).collect();
        let triple = HomotopyTriple::new(g[0].clone(), g[1].clone(), g[2].clone())?;
        let moved = m.act(&triple)?.det_poly(1)?;
        let original = m.det_poly(1)?;
        let pulled = original.substitute_linear(&g[0].matrix().transpose())?;
        nonzero += !original.is_zero() as usize;
        held += (proportional(&moved, &pulled) && moved.is_zero() == original.is_zero()) as usize;
    }
    Ok((held == samples, format!("{held}/{samples} proportional after substitution ({nonzero} nonzero)")))
}

fn random_of_rank(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize, rank: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, rank).mul(&random_matrix(rng, field, rank, n)).expect("shapes");
        if m.rank() == rank {
            return m;
        }
    }
}

fn cone_proposition(rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let q = FieldSpec::Rationals;
    let mut held = 0;
    let mut total = 0;
    for _ in 0..samples {
        let m = random_cube(rng, q, 4);
        for rank in 1..=3 {
            let f = LinearMap::new(random_of_rank(rng, q, 4, rank));
            total += 1;
            held += cone_check(&m, &f)?.passed as usize;
        }
    }
    Ok((held == total, format!("{held}/{total} cone checks passed (ranks 1..3)")))
}

fn random_four(rng: &mut ChaCha8Rng, field: FieldSpec) -> [Scalar; 4] {
    std::array::from_fn(|_| random_scalar(rng, field))
}

fn pencil_derivative(rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let q = FieldSpec::Rationals;
    let mut held = 0;
    for _ in 0..samples {
        let (bhat, b) = (random_four(rng, q), random_four(rng, q));
        let mut ok = true;
        for i in 0..4 {
            ok &= pencil_first_order(&bhat, &b, i)? == pencil_derivative_formula(&bhat, &b, i);
        }
        held += ok as usize;
    }
    Ok((held == samples, format!("{held}/{samples} samples match for every i")))
}

fn pencil_j_invariants(rng: &mut ChaCha8Rng) -> Check {
    let q = FieldSpec::Rationals;
    let bhat: [Scalar; 4] = std::array::from_fn(|i| q.from_i64(i as i64 + 1));
    let b: [Scalar; 4] = std::array::from_fn(|_| q.one());
    let mut js: Vec<Scalar> = Vec::new();
    for _ in 0..20 {
        let u: [Scalar; 4] = std::array::from_fn(|_| {
            q.from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=5)).expect("nonzero denominator")
        });
        if let Some(j) = pencil_522(&bhat, &b, &u)?.invariants()?.j {
            if !js.contains(&j) {
                js.push(j);
            }
        }
    }
    Ok((js.len() >= 15, format!("{} pairwise-distinct j-invariants from 20 samples", js.len())))
}

fn random_quartic(rng: &mut ChaCha8Rng, q: FieldSpec) -> Result<BinaryQuartic> {
    let repeated = rng.gen_bool(0.3);
    let mut small = || q.from_i64(rng.gen_range(-6..=6));
    if repeated {
        // l(x,y)^2 * r(x,y): a repeated root
        let (a, b, c, d, e) = (small(), small(), small(), small(), small());
        let x = crate::poly::Polynomial::var(q, 2, 0);
        let y = crate::poly::Polynomial::var(q, 2, 1);
        let l = x.scale(&a).add(&y.scale(&b))?;
        let r = x.pow(2).scale(&c).add(&x.mul(&y)?.scale(&d))?.add(&y.pow(2).scale(&e))?;
        let p = l.pow(2).mul(&r)?;
        if p.is_zero() {
            return random_quartic(rng, q);
        }
        return BinaryQuartic::from_polynomial(&p);
    }
    let coeffs: [Scalar; 5] = std::array::from_fn(|_| small());
    match BinaryQuartic::new(coeffs) {
        Ok(f) => Ok(f),
        Err(Error::ZeroQuartic) => random_quartic(rng, q),
        Err(e) => Err(e),
    }
}

/// Discriminant test through the resultant of the two partial derivatives.
fn resultant_discriminant(f: &BinaryQuartic) -> Result<Scalar> {
    let a = f.coeffs();
    let q = f.field();
    let n = |k: i64| q.from_i64(k);
    let fx = [&a[0] * &n(4), &a[1] * &n(3), &a[2] * &n(2), a[3].clone()];
    let fy = [a[1].clone(), &a[2] * &n(2), &a[3] * &n(3), &a[4] * &n(4)];
    sylvester_resultant(&fx, &fy)
}

fn quartic_soundness(rng: &mut ChaCha8Rng, samples: usize) -> Check {
    let q = FieldSpec::Rationals;
    let (mut j_held, mut disc_held, mut singular) = (0, 0, 0);
    for _ in 0..samples {
        let f = random_quartic(rng, q)?;
        let m = random_invertible(rng, q, 2);
        let mu = loop {
            let s = random_scalar(rng, q);
            if !s.is_zero() {
                break s;
            }
        };
        let g = f.substitute(&m)?.scale(&mu);
        let (fi, gi) = (f.invariants()?, g.invariants()?);
        j_held += (fi.j == gi.j && fi.disc.is_zero() == gi.disc.is_zero()) as usize;
        disc_held += (fi.disc.is_zero() == resultant_discriminant(&f)?.is_zero()) as usize;
        singular += fi.disc.is_zero() as usize;
    }
    Ok((
        j_held == samples && disc_held == samples,
        format!("j invariant {j_held}/{samples}; disc=0 iff resultant=0 {disc_held}/{samples} ({singular} singular)"),
    ))
}

fn random_rank_one(rng: &mut ChaCha8Rng, q: FieldSpec) -> Matrix {
    random_of_rank(rng, q, 2, 1)
}

fn as_element(m: &Matrix) -> Element {
    m.entries().to_vec()
}

fn mat2_rank_one(rng: &mut ChaCha8Rng) -> Check {
    let q = FieldSpec::Rationals;
    let a = matrix_algebra(q, 2);
    let (d1, d2) = (random_rank_one(rng, q), random_rank_one(rng, q));
    let (p1, q1, _) = d1.rank_normal_form();
    let (p2, q2, _) = d2.rank_normal_form();
    let (n1, psi1) = conjugation_isomorphism(&a, &as_element(&d1), &as_element(&p1), &as_element(&q1))?;
    let (n2, psi2) = conjugation_isomorphism(&a, &as_element(&d2), &as_element(&p2), &as_element(&q2))?;
    let e11 = a.basis_element(0);
    let phi = psi2.inverse()?.compose(&psi1)?;
    let source = a.left_delta_homotope(&as_element(&d1))?;
    let target = a.left_delta_homotope(&as_element(&d2))?;
    let normal = n1 == e11 && n2 == e11;
    let witness = is_isomorphism_witness(&source, &target, &phi);
    Ok((
        normal && witness,
        format!("Delta={d1} Delta'={d2}; both normalize to E11: {normal}; witness A_Delta -> A_Delta': {witness}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_criteria_pass() {
        let config = Config { seed: 1, quick: true };
        for id in [1, 2, 3, 5, 14] {
            let outcome = run(id, &config);
            assert!(outcome.passed, "{}", outcome.line());
        }
    }

    #[test]
    fn lines_carry_seeds_only_when_random() {
        let config = Config { seed: 7, quick: true };
        assert!(run(14, &config).line().contains("seed=21"));
        assert!(!run(1, &config).line().contains("seed="));
    }
}
