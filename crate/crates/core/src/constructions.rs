//! Builders for the explicit algebra and tensor families.

use std::collections::HashMap;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::unit_vector;
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::Trilinear;

fn table_algebra(field: FieldSpec, dim: usize, products: &[(usize, usize, usize, Scalar)]) -> Result<Algebra> {
    Algebra::from_structure(Trilinear::from_entries(
        field,
        [dim, dim, dim],
        products.iter().map(|(i, j, k, c)| ((*i, *j, *k), c.clone())),
    )?)
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The two-dimensional non-associative algebra with
/// `e1e1 = e1, e2e1 = e2, e1e2 = e1, e2e2 = e1`.
pub fn two_dim_a(field: FieldSpec) -> Algebra {
    let one = field.one();
    table_algebra(
        field,
        2,
        &[(0, 0, 0, one.clone()), (1, 0, 1, one.clone()), (0, 1, 0, one.clone()), (1, 1, 0, one)],
    )
    .and_then(|a| a.with_labels(labels(&["e1", "e2"])))
    .expect("static table")
}

/// Left `(e1 + λ e2)`-homotope of [`two_dim_a`].
pub fn b_lambda(lambda: &Scalar) -> Algebra {
    let field = lambda.field();
    let delta = vec![field.one(), lambda.clone()];
    two_dim_a(field).left_delta_homotope(&delta).expect("dimension 2")
}

/// `k<x, y> / (x², y², xy − λ yx)` on the basis `[1, x, y, xy]`, with
/// `yx = λ⁻¹ xy`.
pub fn r_lambda(lambda: &Scalar) -> Result<Algebra> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let field = lambda.field();
    let one = field.one();
    let mut products = Vec::new();
    for i in 0..4 {
        products.push((0, i, i, one.clone()));
        if i != 0 {
            products.push((i, 0, i, one.clone()));
        }
    }
    products.push((1, 2, 3, one.clone()));
    products.push((2, 1, 3, lambda.inv()?));
    table_algebra(field, 4, &products)?
        .with_unit(unit_vector(field, 4, 0))?
        .with_labels(labels(&["1", "x", "y", "xy"]))
}

/// Basis labels of [`b16`], in basis order.
pub const B16_LABELS: [&str; 16] =
    ["1", "x", "y", "h1", "h2", "xy", "yx", "xh1", "xh2", "yh1", "yh2", "h1x", "h1y", "h2x", "h2y", "w"];

const X: u8 = 0;
const Y: u8 = 1;
const H1: u8 = 2;
const H2: u8 = 3;

/// Generator word for each basis vector of [`b16`]; `w` is stored as `xh1y`.
fn b16_words() -> Vec<Vec<u8>> {
    let mut words = vec![vec![], vec![X], vec![Y], vec![H1], vec![H2]];
    for w in [[X, Y], [Y, X], [X, H1], [X, H2], [Y, H1], [Y, H2], [H1, X], [H1, Y], [H2, X], [H2, Y]] {
        words.push(w.to_vec());
    }
    words.push(vec![X, H1, Y]);
    words
}

/// Basis index of a word modulo the defining relations, or `None` if the
/// word is zero.
fn b16_normal_form(word: &[u8], index: &HashMap<Vec<u8>, usize>) -> Option<usize> {
    match word.len() {
        0..=2 => index.get(word).copied(),
        3 if word == [X, H1, Y] || word == [Y, H2, X] => Some(15),
        _ => None,
    }
}

/// The 16-dimensional algebra `k<x, y, h1, h2> / I` where `I` kills `x²`,
/// `y²`, `h_i h_j`, every word of length 3 other than `xh1y` and `yh2x`, and
/// identifies those two as `w`.
pub fn b16(field: FieldSpec) -> Algebra {
    let words = b16_words();
    let index: HashMap<Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    Algebra::from_products(field, 16, |i, j| {
        let mut v = vec![field.zero(); 16];
        let word: Vec<u8> = words[i].iter().chain(&words[j]).copied().collect();
        if let Some(k) = b16_normal_form(&word, &index) {
            v[k] = field.one();
        }
        Ok(v)
    })
    .and_then(|a| a.with_unit(unit_vector(field, 16, 0)))
    .and_then(|a| a.with_labels(labels(&B16_LABELS)))
    .expect("static construction")
}

/// `Δ(λ) = λ h1 + h2` in [`b16`].
pub fn delta16(lambda: &Scalar) -> Element {
    let field = lambda.field();
    let mut v = vec![field.zero(); 16];
    v[3] = lambda.clone();
    v[4] = field.one();
    v
}

/// A finite quiver. Arrows are `(source, target, label)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize, String)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize, String)>) -> Result<Self> {
        if let Some((s, t, _)) = arrows.iter().find(|(s, t, _)| *s >= vertices || *t >= vertices) {
            return Err(Error::DimensionMismatch(format!("arrow {s}->{t} in a quiver with {vertices} vertices")));
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Two vertices joined by two parallel arrows `a, b`.
    pub fn kronecker() -> Self {
        Quiver::new(2, vec![(0, 1, "a".into()), (0, 1, "b".into())]).expect("valid")
    }

    /// `n` vertices with two arrows `v_i -> v_{i+1}` for each `i`.
    pub fn doubled_chain(n: usize) -> Self {
        let arrows = (0..n.saturating_sub(1))
            .flat_map(|i| [(i, i + 1, format!("a{}", i + 1)), (i, i + 1, format!("b{}", i + 1))])
            .collect();
        Quiver::new(n, arrows).expect("valid")
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize, String)] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.vertices];
        for (_, t, _) in &self.arrows {
            indegree[*t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for (s, t, _) in &self.arrows {
                if *s == v {
                    indegree[*t] -= 1;
                    if indegree[*t] == 0 {
                        ready.push(*t);
                    }
                }
            }
        }
        seen == self.vertices
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

/// Path algebra over `field`. Paths compose left to right: `p·q` is `p`
/// followed by `q` when `p` ends where `q` starts, and `0` otherwise.
///
/// Cyclic quivers are accepted only with `max_len`, in which case paths
/// longer than `max_len` are set to zero.
pub fn path_algebra(field: FieldSpec, q: &Quiver, max_len: Option<usize>) -> Result<Algebra> {
    if max_len.is_none() && !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let mut paths: Vec<Path> = (0..q.vertices).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
    let mut frontier = paths.clone();
    let mut len = 0;
    while !frontier.is_empty() && max_len.map_or(true, |m| len < m) {
        let mut next = Vec::new();
        for p in &frontier {
            for (a, (s, t, _)) in q.arrows.iter().enumerate() {
                if *s == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { start: p.start, end: *t, arrows });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
        len += 1;
    }
    let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let dim = paths.len();
    let algebra = Algebra::from_products(field, dim, |i, j| {
        let (p, r) = (&paths[i], &paths[j]);
        let mut v = vec![field.zero(); dim];
        if p.end == r.start {
            let joined = Path {
                start: p.start,
                end: r.end,
                arrows: p.arrows.iter().chain(&r.arrows).copied().collect(),
            };
            if let Some(&k) = index.get(&joined) {
                v[k] = field.one();
            }
        }
        Ok(v)
    })?;
    let mut unit = vec![field.zero(); dim];
    unit[..q.vertices].iter_mut().for_each(|c| *c = field.one());
    let names = paths
        .iter()
        .map(|p| {
            if p.arrows.is_empty() {
                format!("v{}", p.start + 1)
            } else {
                p.arrows.iter().map(|&a| q.arrows[a].2.as_str()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    algebra.with_unit(unit)?.with_labels(names)
}

/// Index of `E_{rc} ⊗ e_i` in `mat_over(base, n)`.
pub fn mat_index(base_dim: usize, n: usize, r: usize, c: usize, i: usize) -> usize {
    (r * n + c) * base_dim + i
}

/// The element `E_{rc} ⊗ x` of `mat_over(base, n)`.
pub fn mat_entry(base: &Algebra, n: usize, r: usize, c: usize, x: &[Scalar]) -> Element {
    let d = base.dim();
    let mut v = vec![base.field().zero(); n * n * d];
    v[mat_index(d, n, r, c, 0)..mat_index(d, n, r, c, 0) + d].clone_from_slice(x);
    v
}

/// `n × n` matrices over a unital algebra, on the basis `E_{rc} ⊗ e_i`
/// ordered by `(r, c, i)`.
pub fn mat_over(base: &Algebra, n: usize) -> Result<Algebra> {
    let base_unit = base.unit().ok_or(Error::NotUnital)?.clone();
    let d = base.dim();
    let field = base.field();
    let mut t = Trilinear::zero(field, [n * n * d; 3]);
    for r in 0..n {
        for c in 0..n {
            for s in 0..n {
                for i in 0..d {
                    for j in 0..d {
                        for (k, v) in base.basis_product(i, j) {
                            t.add_to(
                                (mat_index(d, n, r, c, i), mat_index(d, n, c, s, j), mat_index(d, n, r, s, *k)),
                                v.clone(),
                            )?;
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![field.zero(); n * n * d];
    for r in 0..n {
        for (i, u) in base_unit.iter().enumerate() {
            unit[mat_index(d, n, r, r, i)] = u.clone();
        }
    }
    let names = (0..n * n * d)
        .map(|idx| {
            let (rc, i) = (idx / d, idx % d);
            let cell = format!("E{}{}", rc / n + 1, rc % n + 1);
            match base.labels() {
                Some(_) if d == 1 => cell,
                Some(l) => format!("{cell}*{}", l[i]),
                None if d == 1 => cell,
                None => format!("{cell}*e{}", i + 1),
            }
        })
        .collect();
    Algebra::from_structure(t)?.with_unit(unit)?.with_labels(names)
}

/// The one-dimensional algebra `k`.
pub fn ground_field(field: FieldSpec) -> Algebra {
    table_algebra(field, 1, &[(0, 0, 0, field.one())])
        .and_then(|a| a.with_unit(vec![field.one()]))
        .and_then(|a| a.with_labels(labels(&["1"])))
        .expect("static table")
}

/// `Mat_n(k)` with basis `E_{rc}`.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> Algebra {
    mat_over(&ground_field(field), n).expect("k is unital")
}

/// `Λ = diag(1, Δ)` in `mat_over(base, 2)`.
pub fn lambda_element(base: &Algebra, delta: &[Scalar]) -> Result<Element> {
    let unit = base.unit().ok_or(Error::NotUnital)?;
    if delta.len() != base.dim() {
        return Err(Error::DimensionMismatch("Δ length".into()));
    }
    Ok(crate::linalg::vector::add(&mat_entry(base, 2, 0, 0, unit), &mat_entry(base, 2, 1, 1, delta)))
}

/// The `(5, 4, 2)` tensor whose slices along the last slot are
/// `A = (I4; 0)` and `B = (diag(bhat); b)`.
pub fn tensor_522(bhat: &[Scalar; 4], b: &[Scalar; 4]) -> Trilinear {
    let field = bhat[0].field();
    let mut entries = Vec::new();
    for i in 0..4 {
        entries.push(((i, i, 0), field.one()));
        entries.push(((i, i, 1), bhat[i].clone()));
        entries.push(((4, i, 1), b[i].clone()));
    }
    Trilinear::from_entries(field, [5, 4, 2], entries).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vector, Matrix};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(a: &Algebra, label: &str) -> Element {
        a.basis_element(a.index_of(label).unwrap())
    }

    #[test]
    fn two_dim_table_and_commutator() {
        let a = two_dim_a(q());
        let (e1, e2) = (a.basis_element(0), a.basis_element(1));
        assert_eq!(a.mul(&e2, &e2).unwrap(), e1);
        assert_eq!(a.mul(&e1, &e1).unwrap(), e1);
        assert!(!a.is_associative());
        assert_eq!(a.commutator(&e1, &e2).unwrap(), vector::sub(&e1, &e2));
    }

    #[test]
    fn b_lambda_table() {
        let lambda = q().from_i64(5);
        let b = b_lambda(&lambda);
        let (e1, e2) = (b.basis_element(0), b.basis_element(1));
        // e2×e1 = e2 + λ e1
        assert_eq!(b.mul(&e2, &e1).unwrap(), vec![lambda.clone(), q().one()]);
        // e1×e2 = e1 + λ e1
        assert_eq!(b.mul(&e1, &e2).unwrap(), vec![q().from_i64(6), q().zero()]);
        let x1 = vector::sub(&e1, &e2);
        assert!(b.is_idempotent(&x1).unwrap());
        let x2 = vector::scale(&e1, &q().from_i64(6).inv().unwrap());
        assert!(b.is_idempotent(&x2).unwrap());
        assert_eq!(b.commutator(&e1, &e2).unwrap(), x1);
    }

    #[test]
    fn r_lambda_relations() {
        let lambda = q().from_i64(2);
        let r = r_lambda(&lambda).unwrap();
        let (x, y) = (e(&r, "x"), e(&r, "y"));
        assert!(r.is_square_zero(&x).unwrap());
        let rel = vector::sub(&r.mul(&x, &y).unwrap(), &vector::scale(&r.mul(&y, &x).unwrap(), &lambda));
        assert!(vector::is_zero(&rel));
        let s = vector::add(&x, &y);
        assert_eq!(r.mul(&s, &s).unwrap(), vector::scale(&e(&r, "xy"), &q().from_ratio(3, 2).unwrap()));
        assert!(r.is_associative());
        assert_eq!(r_lambda(&q().zero()).unwrap_err(), Error::ZeroLambda);
    }

    #[test]
    fn b16_words_and_relations() {
        let b = b16(q());
        assert_eq!(b.dim(), 16);
        let w = e(&b, "w");
        assert_eq!(b.mul(&e(&b, "x"), &e(&b, "h1y")).unwrap(), w);
        assert_eq!(b.mul(&e(&b, "y"), &e(&b, "h2x")).unwrap(), w);
        assert!(vector::is_zero(&b.mul(&e(&b, "h1"), &e(&b, "h2")).unwrap()));
        assert!(vector::is_zero(&b.mul(&e(&b, "xh2"), &e(&b, "y")).unwrap()));
        assert!(b.is_associative());
    }

    #[test]
    fn quiver_dimensions() {
        assert_eq!(path_algebra(q(), &Quiver::kronecker(), None).unwrap().dim(), 4);
        assert_eq!(path_algebra(q(), &Quiver::new(1, vec![]).unwrap(), None).unwrap().dim(), 1);
        let chain = path_algebra(q(), &Quiver::doubled_chain(6), None).unwrap();
        assert_eq!(chain.dim(), 120);
        let long = chain.labels().unwrap().iter().filter(|l| l.matches('*').count() == 4).count();
        assert_eq!(long, 32);
        let loop_quiver = Quiver::new(1, vec![(0, 0, "a".into())]).unwrap();
        assert_eq!(path_algebra(q(), &loop_quiver, None).unwrap_err(), Error::CyclicQuiver);
        let truncated = path_algebra(q(), &loop_quiver, Some(2)).unwrap();
        assert_eq!(truncated.dim(), 3);
        assert!(truncated.is_associative());
    }

    #[test]
    fn kronecker_products() {
        let a = path_algebra(q(), &Quiver::kronecker(), None).unwrap();
        assert!(a.is_associative());
        let (v1, v2, arrow) = (e(&a, "v1"), e(&a, "v2"), e(&a, "a"));
        assert_eq!(a.mul(&v1, &arrow).unwrap(), arrow);
        assert_eq!(a.mul(&arrow, &v2).unwrap(), arrow);
        assert!(vector::is_zero(&a.mul(&arrow, &v1).unwrap()));
    }

    #[test]
    fn matrices_over_algebras() {
        let m = matrix_algebra(q(), 2);
        assert_eq!(m.dim(), 4);
        assert!(m.is_associative());
        let e12 = e(&m, "E12");
        let e21 = e(&m, "E21");
        assert_eq!(m.mul(&e12, &e21).unwrap(), e(&m, "E11"));
        let mb = mat_over(&b16(q()), 2).unwrap();
        assert_eq!(mb.dim(), 64);
        assert_eq!(mat_over(&Algebra::zero_algebra(q(), 1), 2).unwrap_err(), Error::NotUnital);
    }

    #[test]
    fn lambda_fixes_the_corner_unit() {
        let b = b16(q());
        let m = mat_over(&b, 2).unwrap();
        let lam = lambda_element(&b, &delta16(&q().one())).unwrap();
        let e11 = mat_entry(&b, 2, 0, 0, b.unit().unwrap());
        assert_eq!(m.mul3(&e11, &lam, &e11).unwrap(), e11);
        assert_eq!(delta16(&q().zero()), e(&b, "h2"));
    }

    #[test]
    fn tensor_522_slices() {
        let bhat: [Scalar; 4] = std::array::from_fn(|i| q().from_i64(i as i64 + 1));
        let b: [Scalar; 4] = std::array::from_fn(|_| q().one());
        let t = tensor_522(&bhat, &b);
        let a = t.contract_slot(3, &[q().one(), q().zero()]).unwrap();
        let mut expected = Matrix::zeros(q(), 5, 4);
        (0..4).for_each(|i| expected.set(i, i, q().one()));
        assert_eq!(a, expected);
        let zero: [Scalar; 4] = std::array::from_fn(|_| q().zero());
        let z = tensor_522(&zero, &zero).contract_slot(3, &[q().zero(), q().one()]).unwrap();
        assert!(z.is_zero());
    }
}
