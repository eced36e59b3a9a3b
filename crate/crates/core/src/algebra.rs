//! Finite-dimensional algebras given by structure constants.
//!
//! An algebra of dimension `d` is a `(d, d, d)` tensor `c` read as
//! `e_i e_j = sum_k c[i][j][k] e_k`. Products go through a sparse per-pair
//! table so that very sparse laws (monomial algebras, matrix algebras over
//! them) stay cheap.

use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vector, EchelonBasis, LinearMap, Matrix};
use crate::modp::ResidueAlgebra;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::Trilinear;

/// Coordinates of an algebra element in the algebra's basis.
pub type Element = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    field: FieldSpec,
    structure: Trilinear,
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Option<Element>,
    labels: Option<Vec<String>>,
}

impl Algebra {
    pub fn from_structure(structure: Trilinear) -> Result<Self> {
        let [d1, d2, d3] = structure.dims();
        if d1 != d2 || d2 != d3 {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor must be cubical, got {:?}",
                structure.dims()
            )));
        }
        let dim = d1;
        let mut table = vec![Vec::new(); dim * dim];
        for (&(i, j, k), c) in structure.entries() {
            table[i * dim + j].push((k, c.clone()));
        }
        Ok(Algebra { dim, field: structure.field(), structure, table, unit: None, labels: None })
    }

    /// Builds the law from the products of basis vectors.
    pub fn from_products<F>(field: FieldSpec, dim: usize, mut product: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Element>,
    {
        let mut t = Trilinear::zero(field, [dim, dim, dim]);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j)?;
                if v.len() != dim {
                    return Err(Error::DimensionMismatch("product vector length".into()));
                }
                for (k, c) in v.into_iter().enumerate() {
                    t.add_to((i, j, k), c)?;
                }
            }
        }
        Self::from_structure(t)
    }

    pub fn zero_algebra(field: FieldSpec, dim: usize) -> Self {
        Self::from_structure(Trilinear::zero(field, [dim, dim, dim])).expect("cubical")
    }

    /// Attaches a unit after checking `u e_i = e_i u = e_i` for every basis
    /// vector.
    pub fn with_unit(mut self, unit: Element) -> Result<Self> {
        if unit.len() != self.dim {
            return Err(Error::DimensionMismatch("unit length".into()));
        }
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&unit, &e)? != e || self.mul(&e, &unit)? != e {
                return Err(Error::InvalidUnit);
            }
        }
        self.unit = Some(unit);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch("label count".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Solves for a two-sided unit and attaches it when one exists.
    pub fn detect_unit(self) -> Self {
        let d = self.dim;
        // unknown u: L_u = id and R_u = id, linear in u
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                // (u e_j)_k = sum_i u_i c[i][j][k]
                rows.push((0..d).map(|i| self.structure.get(i, j, k)).collect::<Vec<_>>());
                rhs.push(if j == k { self.field.one() } else { self.field.zero() });
                // (e_j u)_k = sum_i u_i c[j][i][k]
                rows.push((0..d).map(|i| self.structure.get(j, i, k)).collect::<Vec<_>>());
                rhs.push(if j == k { self.field.one() } else { self.field.zero() });
            }
        }
        if d == 0 {
            return self;
        }
        let m = Matrix::from_rows(self.field, rows).expect("rectangular");
        match m.solve(&rhs) {
            Ok(u) => self.clone().with_unit(u).unwrap_or(self),
            Err(_) => self,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn structure(&self) -> &Trilinear {
        &self.structure
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// Index of a labelled basis vector.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn basis_element(&self, i: usize) -> Element {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.dim]
    }

    /// Sparse product `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    fn check_element(&self, a: &[Scalar]) -> Result<()> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in an algebra of dimension {}",
                a.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let row = &self.table[i * self.dim + j];
                if row.is_empty() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in row {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        Ok(out)
    }

    /// Product of three elements, bracketed left: `(a b) c`.
    pub fn mul3(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Result<Element> {
        self.mul(&self.mul(a, b)?, c)
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Result<Matrix> {
        let cols = (0..self.dim).map(|j| self.mul(a, &self.basis_element(j))).collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Result<Matrix> {
        let cols = (0..self.dim).map(|j| self.mul(&self.basis_element(j), a)).collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    fn sparse_times(&self, left: &[(usize, Scalar)], k: usize, left_side: bool) -> Vec<Scalar> {
        let mut out = self.zero();
        for (l, c) in left {
            let row = if left_side { self.basis_product(*l, k) } else { self.basis_product(k, *l) };
            for (m, x) in row {
                out[*m] = &out[*m] + &(c * x);
            }
        }
        out
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` for every basis triple.
    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    let left = self.sparse_times(self.basis_product(i, j), k, true);
                    let right = self.sparse_times(self.basis_product(j, k), i, false);
                    left == right
                })
            })
        })
    }

    pub fn commutator(&self, a: &[Scalar], b: &[Scalar]) -> Result<Element> {
        Ok(vector::sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    pub fn is_idempotent(&self, a: &[Scalar]) -> Result<bool> {
        Ok(self.mul(a, a)? == a)
    }

    pub fn is_square_zero(&self, a: &[Scalar]) -> Result<bool> {
        Ok(vector::is_zero(&self.mul(a, a)?))
    }

    /// The law `a × a' = g(f1(a) · f2(a'))`. No unit is carried over.
    pub fn homotope(&self, f1: &LinearMap, f2: &LinearMap, g: &LinearMap) -> Result<Algebra> {
        for f in [f1, f2, g] {
            if f.domain_dim() != self.dim || f.codomain_dim() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "homotope maps must be {0}x{0}",
                    self.dim
                )));
            }
        }
        let lefts: Vec<Element> = (0..self.dim).map(|i| f1.matrix().column(i)).collect();
        let rights: Vec<Element> = (0..self.dim).map(|j| f2.matrix().column(j)).collect();
        Algebra::from_products(self.field, self.dim, |i, j| g.apply(&self.mul(&lefts[i], &rights[j])?))
    }

    /// `a × a' = (a Δ) a'`.
    pub fn left_delta_homotope(&self, delta: &[Scalar]) -> Result<Algebra> {
        self.check_element(delta)?;
        let right_by_delta = LinearMap::new(self.right_mult_matrix(delta)?);
        let id = LinearMap::identity(self.field, self.dim);
        let out = self.homotope(&right_by_delta, &id, &id)?;
        self.keep_labels(out)
    }

    /// `a × a' = a (Δ a')`.
    pub fn right_delta_homotope(&self, delta: &[Scalar]) -> Result<Algebra> {
        self.check_element(delta)?;
        let left_by_delta = LinearMap::new(self.left_mult_matrix(delta)?);
        let id = LinearMap::identity(self.field, self.dim);
        let out = self.homotope(&id, &left_by_delta, &id)?;
        self.keep_labels(out)
    }

    fn keep_labels(&self, out: Algebra) -> Result<Algebra> {
        match &self.labels {
            Some(l) => out.with_labels(l.clone()),
            None => Ok(out),
        }
    }

    /// Adjoins a formal unit as the last basis vector.
    pub fn augment_unit(&self) -> Algebra {
        let d = self.dim;
        let mut t = Trilinear::zero(self.field, [d + 1, d + 1, d + 1]);
        for (&idx, c) in self.structure.entries() {
            t.add_to(idx, c.clone()).expect("in range");
        }
        for i in 0..=d {
            t.add_to((d, i, i), self.field.one()).expect("in range");
            if i != d {
                t.add_to((i, d, i), self.field.one()).expect("in range");
            }
        }
        let mut out = Algebra::from_structure(t).expect("cubical");
        out.unit = Some(unit_vector(self.field, d + 1, d));
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            l.push("1^".into());
            out.labels = Some(l);
        }
        out
    }

    /// Two-sided inverse in a unital algebra.
    pub fn try_invert_element(&self, a: &[Scalar]) -> Result<Element> {
        self.check_element(a)?;
        let unit = self.unit.as_ref().ok_or(Error::NotUnital)?;
        let inv = match self.left_mult_matrix(a)?.solve(unit) {
            Ok(x) => x,
            Err(Error::NoSolution) => return Err(Error::NotAUnit),
            Err(e) => return Err(e),
        };
        if self.mul(a, &inv)? != *unit || self.mul(&inv, a)? != *unit {
            return Err(Error::NotAUnit);
        }
        Ok(inv)
    }

    /// `span{ e_i Δ e_j } = A`.
    pub fn is_well_tempered(&self, delta: &[Scalar]) -> Result<bool> {
        self.check_element(delta)?;
        let mut span = EchelonBasis::new(self.field, self.dim);
        let left: Vec<Element> =
            (0..self.dim).map(|i| self.mul(&self.basis_element(i), delta)).collect::<Result<_>>()?;
        for l in &left {
            if vector::is_zero(l) {
                continue;
            }
            for j in 0..self.dim {
                span.insert(&self.mul(l, &self.basis_element(j))?);
                if span.dim() == self.dim {
                    return Ok(true);
                }
            }
        }
        Ok(span.dim() == self.dim)
    }

    /// The corner `e A e` of an idempotent `e`, with `e` as its unit.
    pub fn corner_subalgebra(&self, e: &[Scalar]) -> Result<Corner> {
        self.check_element(e)?;
        if !self.is_idempotent(e)? {
            return Err(Error::NotIdempotent);
        }
        let mut span = EchelonBasis::new(self.field, self.dim);
        for i in 0..self.dim {
            let x = self.mul3(e, &self.basis_element(i), e)?;
            span.insert(&x);
        }
        let basis = span.basis();
        let r = basis.len();
        let algebra = Algebra::from_products(self.field, r, |s, t| {
            let prod = self.mul(&basis[s], &basis[t])?;
            span.coordinates(&prod)
                .ok_or_else(|| Error::DimensionMismatch("corner is not closed under products".into()))
        })?;
        let unit = span.coordinates(e).expect("e lies in its own corner");
        let algebra = algebra.with_unit(unit)?;
        let embedding = LinearMap::from_images(self.field, self.dim, &basis)?;
        Ok(Corner { algebra, span, embedding })
    }

    /// Reinterprets rational structure constants modulo `p`.
    pub fn reduce_to(&self, field: FieldSpec) -> Result<Algebra> {
        if field == self.field {
            return Ok(self.clone());
        }
        let map = |s: &Scalar| -> Result<Scalar> {
            match s.as_rational() {
                Some(q) => field.from_rational(q),
                None => Err(Error::FieldMismatch(self.field, field)),
            }
        };
        let entries = self
            .structure
            .entries()
            .map(|(&idx, c)| Ok((idx, map(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Algebra::from_structure(Trilinear::from_entries(field, self.structure.dims(), entries)?)?;
        if let Some(u) = &self.unit {
            let u = u.iter().map(map).collect::<Result<Vec<_>>>()?;
            out = out.with_unit(u)?;
        }
        if let Some(l) = &self.labels {
            out.labels = Some(l.clone());
        }
        Ok(out)
    }
}

/// Corner subalgebra `e A e` together with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct Corner {
    pub algebra: Algebra,
    span: EchelonBasis,
    pub embedding: LinearMap,
}

impl Corner {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Coordinates in the corner basis of an ambient element, if it lies in
    /// the corner.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Element> {
        self.span.coordinates(v)
    }

    pub fn embed(&self, c: &[Scalar]) -> Result<Element> {
        self.embedding.apply(c)
    }
}

/// Given units `u`, `v` of a unital associative `A`, returns `Δ' = u Δ v` and
/// the map `ψ(x) = v⁻¹ x u⁻¹`, an isomorphism `A_Δ → A_Δ'`.
pub fn conjugation_isomorphism(
    a: &Algebra,
    delta: &[Scalar],
    u: &[Scalar],
    v: &[Scalar],
) -> Result<(Element, LinearMap)> {
    let u_inv = a.try_invert_element(u)?;
    let v_inv = a.try_invert_element(v)?;
    let delta_prime = a.mul3(u, delta, v)?;
    let images = (0..a.dim())
        .map(|i| a.mul3(&v_inv, &a.basis_element(i), &u_inv))
        .collect::<Result<Vec<_>>>()?;
    Ok((delta_prime, LinearMap::from_images(a.field(), a.dim(), &images)?))
}

/// Checks that `phi` is invertible, multiplicative on basis pairs, and maps
/// unit to unit when both algebras carry one.
pub fn is_isomorphism_witness(a: &Algebra, b: &Algebra, phi: &LinearMap) -> bool {
    if a.dim() != b.dim()
        || phi.domain_dim() != a.dim()
        || phi.codomain_dim() != b.dim()
        || a.field() != b.field()
        || phi.field() != a.field()
        || !phi.is_invertible()
    {
        return false;
    }
    let images: Vec<Element> = (0..a.dim()).map(|i| phi.matrix().column(i)).collect();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut source = a.zero();
            for (k, c) in a.basis_product(i, j) {
                source[*k] = c.clone();
            }
            let lhs = phi.apply(&source).expect("dimension checked");
            let rhs = b.mul(&images[i], &images[j]).expect("dimension checked");
            if lhs != rhs {
                return false;
            }
        }
    }
    match (a.unit(), b.unit()) {
        (Some(ua), Some(ub)) => phi.apply(ua).expect("dimension checked") == *ub,
        _ => true,
    }
}

/// Result of [`idempotent_decomposition_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// No splitting exists among the `searched` corner points.
    Primitive { searched: u128 },
    /// `first + second = ε`, both nonzero idempotents, mutually orthogonal.
    Split { first: Element, second: Element },
}

fn check_split(a: &Algebra, eps: &[Scalar], x: &[Scalar]) -> Result<Option<Decomposition>> {
    if vector::is_zero(x) || x == eps || !a.is_idempotent(x)? {
        return Ok(None);
    }
    let f = vector::sub(eps, x);
    let orthogonal = vector::is_zero(&a.mul(x, &f)?) && vector::is_zero(&a.mul(&f, x)?);
    if orthogonal && a.is_idempotent(&f)? {
        return Ok(Some(Decomposition::Split { first: x.to_vec(), second: f }));
    }
    Ok(None)
}

/// Decides whether the idempotent `eps` of an algebra over `F_p` splits as a
/// sum of two nonzero orthogonal idempotents. Cheap candidates `ε e_i ε` are
/// tried first; otherwise the whole corner `εAε` is enumerated, which must fit
/// in `budget` points.
pub fn idempotent_decomposition_probe(a: &Algebra, eps: &[Scalar], budget: u128) -> Result<Decomposition> {
    if !a.field().is_prime_field() {
        return Err(Error::NotPrimeField(a.field()));
    }
    a.check_element(eps)?;
    if !a.is_idempotent(eps)? {
        return Err(Error::NotIdempotent);
    }
    for i in 0..a.dim() {
        let x = a.mul3(eps, &a.basis_element(i), eps)?;
        if let Some(split) = check_split(a, eps, &x)? {
            return Ok(split);
        }
    }
    let corner = a.corner_subalgebra(eps)?;
    let table = ResidueAlgebra::new(&corner.algebra)?;
    let unit: Vec<u64> = corner.algebra.unit().expect("corner unit").iter().map(|s| s.residue().unwrap()).collect();
    let searched = table.space_size(budget)? as u128;
    let hits = table.scan_squares(budget, |x, sq| {
        x == sq && x.iter().any(|&c| c != 0) && x != unit.as_slice()
    })?;
    match hits.first() {
        Some(x) => {
            let x = corner.embed(&table.to_element(x))?;
            check_split(a, eps, &x)?.ok_or(Error::NotIdempotent)
        }
        None => Ok(Decomposition::Primitive { searched }),
    }
}
