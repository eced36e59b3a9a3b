//! Trilinear tensors in `V1 ⊗ V2 ⊗ V3`, the action of triples of linear maps
//! on them, and the determinantal polynomial of a slot.
//!
//! Slots are numbered 1, 2, 3. Contracting a slot leaves a matrix whose rows
//! are indexed by the lower remaining slot.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, LinearMap, Matrix};
use crate::poly::{det_linear_matrix, proportional, BinaryQuartic, Polynomial};
use crate::scalar::{inv_mod, FieldSpec, Scalar};

/// Default number of points a finite-field scan may visit.
pub const DEFAULT_STRATUM_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trilinear {
    dims: [usize; 3],
    field: FieldSpec,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

/// A triple of endomorphisms `(f1, f2, f3)` of the three factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTriple {
    pub f1: LinearMap,
    pub f2: LinearMap,
    pub f3: LinearMap,
}

impl HomotopyTriple {
    pub fn new(f1: LinearMap, f2: LinearMap, f3: LinearMap) -> Result<Self> {
        for f in [&f1, &f2, &f3] {
            if !f.matrix().is_square() {
                return Err(Error::NonSquare { rows: f.codomain_dim(), cols: f.domain_dim() });
            }
        }
        Ok(HomotopyTriple { f1, f2, f3 })
    }

    pub fn identity(field: FieldSpec, dims: [usize; 3]) -> Self {
        HomotopyTriple {
            f1: LinearMap::identity(field, dims[0]),
            f2: LinearMap::identity(field, dims[1]),
            f3: LinearMap::identity(field, dims[2]),
        }
    }

    /// All three maps invertible.
    pub fn is_isotopy(&self) -> bool {
        self.f1.is_invertible() && self.f2.is_invertible() && self.f3.is_invertible()
    }

    fn maps(&self) -> [&LinearMap; 3] {
        [&self.f1, &self.f2, &self.f3]
    }
}

fn check_slot(slot: usize) -> Result<usize> {
    if (1..=3).contains(&slot) {
        Ok(slot - 1)
    } else {
        Err(Error::BadSlot(slot))
    }
}

/// The two slots other than `s` (0-based), in increasing order.
fn other_slots(s: usize) -> (usize, usize) {
    match s {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn index_of(idx: (usize, usize, usize), s: usize) -> usize {
    [idx.0, idx.1, idx.2][s]
}

impl Trilinear {
    pub fn zero(field: FieldSpec, dims: [usize; 3]) -> Self {
        Trilinear { dims, field, entries: BTreeMap::new() }
    }

    pub fn from_entries(
        field: FieldSpec,
        dims: [usize; 3],
        entries: impl IntoIterator<Item = ((usize, usize, usize), Scalar)>,
    ) -> Result<Self> {
        let mut t = Trilinear::zero(field, dims);
        for (idx, v) in entries {
            t.add_to(idx, v)?;
        }
        Ok(t)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero entries in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `v` to the entry at `idx`, keeping the map free of zeros.
    pub fn add_to(&mut self, idx: (usize, usize, usize), v: Scalar) -> Result<()> {
        let [d1, d2, d3] = self.dims;
        if idx.0 >= d1 || idx.1 >= d2 || idx.2 >= d3 {
            return Err(Error::DimensionMismatch(format!("index {idx:?} outside {:?}", self.dims)));
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field, v.field()));
        }
        if v.is_zero() {
            return Ok(());
        }
        let sum = match self.entries.get(&idx) {
            Some(old) => old + &v,
            None => v,
        };
        if sum.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, sum);
        }
        Ok(())
    }

    /// Contracts `slot` against the coordinate vector `v`.
    pub fn contract_slot(&self, slot: usize, v: &[Scalar]) -> Result<Matrix> {
        let s = check_slot(slot)?;
        if v.len() != self.dims[s] {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against slot {slot} of dimension {}",
                v.len(),
                self.dims[s]
            )));
        }
        let (a, b) = other_slots(s);
        let mut m = Matrix::zeros(self.field, self.dims[a], self.dims[b]);
        for (&idx, x) in &self.entries {
            let c = &v[index_of(idx, s)];
            if c.is_zero() {
                continue;
            }
            let (r, col) = (index_of(idx, a), index_of(idx, b));
            let val = m.get(r, col) + &(c * x);
            m.set(r, col, val);
        }
        Ok(m)
    }

    /// Contraction against the symbolic vector `(t1, .., t_d)`: a matrix of
    /// linear forms.
    pub fn contract_slot_symbolic(&self, slot: usize) -> Result<Vec<Vec<Polynomial>>> {
        let s = check_slot(slot)?;
        let n = self.dims[s];
        let (a, b) = other_slots(s);
        let mut rows = vec![vec![Polynomial::zero(self.field, n); self.dims[b]]; self.dims[a]];
        for (&idx, x) in &self.entries {
            let var = Polynomial::var(self.field, n, index_of(idx, s)).scale(x);
            let cell = &mut rows[index_of(idx, a)][index_of(idx, b)];
            *cell = cell.add(&var)?;
        }
        Ok(rows)
    }

    /// `(f1 ⊗ f2 ⊗ f3) · m`: basis vector `e_i` of slot `s` goes to column `i`
    /// of `f_s`.
    pub fn act(&self, t: &HomotopyTriple) -> Result<Trilinear> {
        for (s, f) in t.maps().into_iter().enumerate() {
            if f.domain_dim() != self.dims[s] || f.codomain_dim() != self.dims[s] {
                return Err(Error::DimensionMismatch(format!(
                    "map {} is {}x{}, slot has dimension {}",
                    s + 1,
                    f.codomain_dim(),
                    f.domain_dim(),
                    self.dims[s]
                )));
            }
            if f.field() != self.field {
                return Err(Error::FieldMismatch(self.field, f.field()));
            }
        }
        // apply one slot at a time
        let mut current = self.clone();
        for (s, f) in t.maps().into_iter().enumerate() {
            let m = f.matrix();
            let mut next = Trilinear::zero(self.field, self.dims);
            for (&idx, x) in &current.entries {
                let i = index_of(idx, s);
                for a in 0..self.dims[s] {
                    let c = m.get(a, i);
                    if c.is_zero() {
                        continue;
                    }
                    let mut target = [idx.0, idx.1, idx.2];
                    target[s] = a;
                    next.add_to((target[0], target[1], target[2]), c * x)?;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Determinant of the symbolic contraction of `slot`, scaled to a monic
    /// leading term (or zero).
    pub fn det_poly(&self, slot: usize) -> Result<Polynomial> {
        let s = check_slot(slot)?;
        let (a, b) = other_slots(s);
        if self.dims[a] != self.dims[b] {
            return Err(Error::NonSquareSlots(self.dims[a], self.dims[b]));
        }
        let m = self.contract_slot_symbolic(slot)?;
        Ok(det_linear_matrix(&m)?.monic())
    }

    /// Pulls the tensor back along a subspace of the slot's dual: the new
    /// slot has one coordinate per vector in `basis`.
    pub fn restrict(&self, slot: usize, basis: &[Vec<Scalar>]) -> Result<Trilinear> {
        let s = check_slot(slot)?;
        let mut span = EchelonBasis::new(self.field, self.dims[s]);
        for w in basis {
            if w.len() != self.dims[s] {
                return Err(Error::DimensionMismatch("restriction vector length".into()));
            }
            if !span.insert(w) {
                return Err(Error::DependentBasis);
            }
        }
        let mut dims = self.dims;
        dims[s] = basis.len();
        let mut out = Trilinear::zero(self.field, dims);
        for (&idx, x) in &self.entries {
            let i = index_of(idx, s);
            for (a, w) in basis.iter().enumerate() {
                if w[i].is_zero() {
                    continue;
                }
                let mut target = [idx.0, idx.1, idx.2];
                target[s] = a;
                out.add_to((target[0], target[1], target[2]), &w[i] * x)?;
            }
        }
        Ok(out)
    }

    /// Number of `v` in `F_p^{d_slot}` whose contraction has rank at most
    /// `max_rank`. Refuses when `p^{d_slot}` exceeds `budget`.
    pub fn rank_stratum_count(&self, slot: usize, max_rank: usize, budget: u128) -> Result<u128> {
        let s = check_slot(slot)?;
        let p = self.field.modulus().ok_or(Error::NotPrimeField(self.field))?;
        let d = self.dims[s];
        let total = checked_power(p, d).filter(|&n| n <= budget).ok_or(Error::BudgetExceeded {
            required: checked_power(p, d).unwrap_or(u128::MAX),
            budget,
        })?;
        let (a, b) = other_slots(s);
        let (rows, cols) = (self.dims[a], self.dims[b]);
        // slices[i] = matrix of the slot-s coordinate i, as residues
        let mut slices = vec![vec![0u64; rows * cols]; d];
        for (&idx, x) in &self.entries {
            slices[index_of(idx, s)][index_of(idx, a) * cols + index_of(idx, b)] =
                x.residue().expect("prime field");
        }
        let count = (0..total as u64)
            .into_par_iter()
            .map_init(
                || (vec![0u64; rows * cols], vec![0u64; d]),
                |(buf, v), n| {
                    decode_point(n, p, v);
                    buf.iter_mut().for_each(|x| *x = 0);
                    for (i, &c) in v.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for (dst, &src) in buf.iter_mut().zip(&slices[i]) {
                            *dst = ((*dst as u128 + c as u128 * src as u128) % p as u128) as u64;
                        }
                    }
                    (rank_mod_p(buf, rows, cols, p) <= max_rank) as u128
                },
            )
            .sum();
        Ok(count)
    }
}

/// `p^d` when it fits.
pub fn checked_power(p: u64, d: usize) -> Option<u128> {
    (0..d).try_fold(1u128, |acc, _| acc.checked_mul(p as u128))
}

/// Writes the base-`p` digits of `n` into `out`, most significant first.
pub(crate) fn decode_point(mut n: u64, p: u64, out: &mut [u64]) {
    for slot in out.iter_mut().rev() {
        *slot = n % p;
        n /= p;
    }
}

/// Rank of a row-major residue matrix (destroys `a`).
pub(crate) fn rank_mod_p(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else { continue };
        if piv != rank {
            for c in 0..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(a[rank * cols + col], p).expect("nonzero pivot");
        for r in rank + 1..rows {
            let x = a[r * cols + col];
            if x == 0 {
                continue;
            }
            let factor = (x as u128 * inv as u128 % p as u128) as u64;
            for c in col..cols {
                let sub = (factor as u128 * a[rank * cols + c] as u128 % p as u128) as u64;
                a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of [`cone_check`].
#[derive(Clone, Debug)]
pub struct ConeReport {
    pub passed: bool,
    /// `det_poly` of the `(f, id, id)` homotope.
    pub homotope_poly: Polynomial,
    /// `det_poly(m)` pulled back along `f`, normalized.
    pub pullback_poly: Polynomial,
    /// Dimension of the directions along which the homotope polynomial must
    /// be constant.
    pub apex_dim: usize,
    pub constant_along_apex: bool,
    /// First failing apex direction, if any.
    pub witness: Option<Vec<Scalar>>,
}

/// Checks that the determinantal polynomial of the `(f, id, id)` homotope is
/// the pullback of `det_poly(m)` along `f`, and that it is constant along
/// the apex directions `ker(f^T)`.
pub fn cone_check(m: &Trilinear, f: &LinearMap) -> Result<ConeReport> {
    let [d1, d2, d3] = m.dims();
    let triple = HomotopyTriple::new(
        f.clone(),
        LinearMap::identity(m.field(), d2),
        LinearMap::identity(m.field(), d3),
    )?;
    let homotope = m.act(&triple)?;
    let homotope_poly = homotope.det_poly(1)?;
    // contracting the homotope at v equals contracting m at f^T v
    let pullback_poly = m.det_poly(1)?.substitute_linear(&f.matrix().transpose())?.monic();
    let proportional_ok = proportional(&homotope_poly, &pullback_poly);
    let apex = f.matrix().transpose().kernel_basis();
    let mut witness = None;
    for w in &apex {
        let directional = (0..d1)
            .map(|i| homotope_poly.derivative(i).scale(&w[i]))
            .try_fold(Polynomial::zero(m.field(), d1), |acc, p| acc.add(&p))?;
        if !directional.is_zero() {
            witness = Some(w.clone());
            break;
        }
    }
    let constant_along_apex = witness.is_none();
    Ok(ConeReport {
        passed: proportional_ok && constant_along_apex,
        homotope_poly,
        pullback_poly,
        apex_dim: apex.len(),
        constant_along_apex,
        witness,
    })
}

fn require_pencil_field(field: FieldSpec) -> Result<()> {
    match field.characteristic() {
        2 | 3 => Err(Error::BadCharacteristic(field.characteristic())),
        _ => Ok(()),
    }
}

/// Matrix of linear forms `x I4 + y (diag(bhat) + u b)` in variables
/// `t1 = x`, `t2 = y` (plus `extra` unused variables).
fn pencil_matrix(
    bhat: &[Scalar; 4],
    b: &[Scalar; 4],
    u: &[Scalar; 4],
    nvars: usize,
) -> Vec<Vec<Polynomial>> {
    let field = bhat[0].field();
    let x = Polynomial::var(field, nvars, 0);
    let y = Polynomial::var(field, nvars, 1);
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut c = &u[i] * &b[j];
                    if i == j {
                        c = c + &bhat[i];
                    }
                    let entry = y.scale(&c);
                    if i == j {
                        entry.add(&x).expect("same ring")
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect()
}

/// The binary quartic `det(x I4 + y (diag(bhat) + u b))`, `u` a column and
/// `b` a row vector.
pub fn pencil_522(bhat: &[Scalar; 4], b: &[Scalar; 4], u: &[Scalar; 4]) -> Result<BinaryQuartic> {
    let field = bhat[0].field();
    require_pencil_field(field)?;
    for s in bhat.iter().chain(b).chain(u) {
        if s.field() != field {
            return Err(Error::FieldMismatch(field, s.field()));
        }
    }
    let det = det_linear_matrix(&pencil_matrix(bhat, b, u, 2))?;
    BinaryQuartic::from_polynomial(&det)
}

/// First-order coefficient in `eps` of `det(x I4 + y (diag(bhat) + eps e_i b))`,
/// computed symbolically in the three variables `x, y, eps`.
pub fn pencil_first_order(bhat: &[Scalar; 4], b: &[Scalar; 4], i: usize) -> Result<Polynomial> {
    let field = bhat[0].field();
    require_pencil_field(field)?;
    let eps = Polynomial::var(field, 3, 2);
    let zero_u: [Scalar; 4] = std::array::from_fn(|_| field.zero());
    let mut m = pencil_matrix(bhat, b, &zero_u, 3);
    let y = Polynomial::var(field, 3, 1);
    for (j, bj) in b.iter().enumerate() {
        let bump = y.mul(&eps)?.scale(bj);
        m[i][j] = m[i][j].add(&bump)?;
    }
    let det = det_linear_matrix(&m)?;
    det.coefficient_in(2, 1).truncate_vars(2)
}

/// Closed form `y b_i prod_{j != i} (x + bhat_j y)` of the first-order term.
pub fn pencil_derivative_formula(bhat: &[Scalar; 4], b: &[Scalar; 4], i: usize) -> Polynomial {
    let field = bhat[0].field();
    let x = Polynomial::var(field, 2, 0);
    let y = Polynomial::var(field, 2, 1);
    (0..4).filter(|&j| j != i).fold(y.scale(&b[i]), |acc, j| {
        acc.mul(&x.add(&y.scale(&bhat[j])).expect("same ring")).expect("same ring")
    })
}

/// A non-degenerate curve of degree `degree` in `P^ambient_dim` has
/// projectively isomorphic hyperplane sections iff `degree <= ambient_dim + 1`.
pub fn pihs_curve_criterion(degree: u64, ambient_dim: u64) -> bool {
    degree <= ambient_dim + 1
}
