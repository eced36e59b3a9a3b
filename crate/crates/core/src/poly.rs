//! Sparse multivariate polynomials with exact coefficients, determinants of
//! matrices of linear forms, and binary quartics.
//!
//! Variables are written `t1, t2, ...`. Terms are ordered graded
//! lexicographically: higher total degree first, ties broken by comparing the
//! exponent of `t1`, then `t2`, and so on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// Exponent vector ordered by graded lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `t{i+1}`.
    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial(e), field.one());
        p
    }

    /// Linear form `sum coeffs[i] * t{i+1}`.
    pub fn linear_form(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch(e.len(), nvars));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-self.field.one())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        out
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(point.len(), self.nvars));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term = term.checked_mul(&x.pow(e))?;
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitutes `t{i+1} -> images[i]`; the result lives in the ring of the
    /// images.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch(images.len(), self.nvars));
        }
        let (field, nvars) = match images.first() {
            Some(p) => (p.field, p.nvars),
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.field != field {
                return Err(Error::FieldMismatch(field, p.field));
            }
            if p.nvars != nvars {
                return Err(Error::ArityMismatch(p.nvars, nvars));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(field, nvars), p.clone()]).collect();
        let mut out = Polynomial::zero(field, nvars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(field, nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Linear change of variables `t{i+1} -> sum_j m[i][j] * s{j+1}`, where
    /// `m` has one row per current variable.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial> {
        if m.rows() != self.nvars {
            return Err(Error::ArityMismatch(m.rows(), self.nvars));
        }
        if m.field() != self.field {
            return Err(Error::FieldMismatch(self.field, m.field()));
        }
        let images: Vec<Polynomial> =
            (0..m.rows()).map(|i| Polynomial::linear_form(self.field, m.row(i))).collect();
        if images.is_empty() {
            return Ok(self.clone());
        }
        self.compose(&images)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[var] -= 1;
            out.add_term(Monomial(m2), c * &self.field.from_u64(e as u64));
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Coefficient of `t{var+1}^power` as a polynomial in the same ring
    /// (with that variable's exponent removed).
    pub fn coefficient_in(&self, var: usize, power: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut e = m.0.clone();
                e[var] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Drops trailing variables that do not occur (`nvars` shrinks to `n`).
    pub fn truncate_vars(&self, n: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field, n);
        for (m, c) in &self.terms {
            if m.0[n..].iter().any(|&e| e > 0) {
                return Err(Error::ArityMismatch(self.nvars, n));
            }
            out.add_term(Monomial(m.0[..n].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Embeds into a ring with `n >= nvars` variables.
    pub fn extend_vars(&self, n: usize) -> Polynomial {
        assert!(n >= self.nvars);
        let mut out = Polynomial::zero(self.field, n);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(n, 0);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("t{}", i + 1) } else { format!("t{}^{e}", i + 1) })
                .collect();
            match (abs.is_one(), vars.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// True iff `p = c * q` for some nonzero scalar `c`; two zero polynomials are
/// proportional.
pub fn proportional(p: &Polynomial, q: &Polynomial) -> bool {
    if p.field != q.field || p.nvars != q.nvars {
        return false;
    }
    match (p.leading_term(), q.leading_term()) {
        (None, None) => true,
        (Some((mp, cp)), Some((mq, cq))) => {
            if mp != mq || p.terms.len() != q.terms.len() {
                return false;
            }
            let c = cp / cq;
            p.terms.iter().zip(&q.terms).all(|((ma, a), (mb, b))| ma == mb && *a == &c * b)
        }
        _ => false,
    }
}

/// Largest size accepted by [`det_linear_matrix`].
pub const MAX_SYMBOLIC_DET: usize = 8;

/// Determinant of a square matrix of polynomials (typically linear forms),
/// by Laplace expansion memoized over column subsets.
pub fn det_linear_matrix(entries: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = entries.len();
    if let Some(row) = entries.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare { rows: n, cols: row.len() });
    }
    if n > MAX_SYMBOLIC_DET {
        return Err(Error::TooLarge(n));
    }
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix has no ring".into()));
    }
    let (field, nvars) = (entries[0][0].field, entries[0][0].nvars);
    for p in entries.iter().flatten() {
        if p.field != field {
            return Err(Error::FieldMismatch(field, p.field));
        }
        if p.nvars != nvars {
            return Err(Error::ArityMismatch(p.nvars, nvars));
        }
    }
    // minors[mask] = det of rows 0..popcount(mask) against the columns in mask
    let mut minors: Vec<Polynomial> = vec![Polynomial::zero(field, nvars); 1 << n];
    minors[0] = Polynomial::one(field, nvars);
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(field, nvars);
        for c in (0..n).filter(|c| mask & (1 << c) != 0) {
            let rest = mask & !(1 << c);
            if entries[row][c].is_zero() || minors[rest].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let term = entries[row][c].mul(&minors[rest])?;
            acc = if above % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        minors[mask] = acc;
    }
    Ok(minors.pop().expect("full mask"))
}

/// `a0 x^4 + a1 x^3 y + a2 x^2 y^2 + a3 x y^3 + a4 y^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic {
    coeffs: [Scalar; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub delta0: Scalar,
    pub delta1: Scalar,
    pub disc: Scalar,
    /// `delta0^3 / disc`, undefined (None) when the quartic has a repeated root.
    pub j: Option<Scalar>,
}

impl BinaryQuartic {
    pub fn new(coeffs: [Scalar; 5]) -> Result<Self> {
        let field = coeffs[0].field();
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, c.field()));
        }
        Ok(BinaryQuartic { coeffs })
    }

    pub fn from_i64(field: FieldSpec, coeffs: [i64; 5]) -> Self {
        BinaryQuartic { coeffs: coeffs.map(|c| field.from_i64(c)) }
    }

    pub fn coeffs(&self) -> &[Scalar; 5] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// As a polynomial in `t1 = x`, `t2 = y`.
    pub fn to_polynomial(&self) -> Polynomial {
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| (vec![4 - i as u32, i as u32], c.clone()));
        Polynomial::from_terms(self.field(), 2, terms).expect("valid terms")
    }

    /// Reads the coefficients of a binary form; fails unless it is a form of
    /// degree 4 (or zero) in two variables.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.nvars != 2 {
            return Err(Error::ArityMismatch(p.nvars, 2));
        }
        if p.terms.keys().any(|m| m.degree() != 4) {
            return Err(Error::DimensionMismatch("not a binary quartic form".into()));
        }
        Ok(BinaryQuartic {
            coeffs: std::array::from_fn(|i| p.coefficient(&[4 - i as u32, i as u32])),
        })
    }

    /// `q(a x + b y, c x + d y)` for the matrix `[[a, b], [c, d]]`.
    pub fn substitute(&self, m: &Matrix) -> Result<BinaryQuartic> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch("substitution must be 2x2".into()));
        }
        BinaryQuartic::from_polynomial(&self.to_polynomial().substitute_linear(m)?)
    }

    pub fn scale(&self, mu: &Scalar) -> BinaryQuartic {
        BinaryQuartic { coeffs: self.coeffs.clone().map(|c| c * mu) }
    }

    pub fn invariants(&self) -> Result<QuarticInvariants> {
        quartic_invariants(self)
    }
}

impl fmt::Display for BinaryQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_polynomial().to_string();
        write!(f, "{}", p.replace("t1", "x").replace("t2", "y"))
    }
}

/// Classical quartic invariants `delta0`, `delta1`, the discriminant
/// `(4 delta0^3 - delta1^2) / 27` and `j = delta0^3 / disc`.
pub fn quartic_invariants(q: &BinaryQuartic) -> Result<QuarticInvariants> {
    let field = q.field();
    let ch = field.characteristic();
    if ch == 2 || ch == 3 {
        return Err(Error::BadCharacteristic(ch));
    }
    if q.is_zero() {
        return Err(Error::ZeroQuartic);
    }
    let [a0, a1, a2, a3, a4] = &q.coeffs;
    let k = |n: i64| field.from_i64(n);
    let delta0 = a2 * a2 - k(3) * a1 * a3 + k(12) * a0 * a4;
    let delta1 = k(2) * a2.pow(3) - k(9) * a1 * a2 * a3 + k(27) * a1 * a1 * a4 + k(27) * a0 * a3 * a3
        - k(72) * a0 * a2 * a4;
    let disc = (k(4) * delta0.pow(3) - delta1.pow(2)) / k(27);
    let j = if disc.is_zero() { None } else { Some(delta0.pow(3) / &disc) };
    Ok(QuarticInvariants { delta0, delta1, disc, j })
}

/// Resultant of two binary forms of degrees `coeffs_f.len()-1` and
/// `coeffs_g.len()-1` (coefficients listed from `x^n` down to `y^n`), as the
/// Sylvester determinant.
pub fn sylvester_resultant(f: &[Scalar], g: &[Scalar]) -> Result<Scalar> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let field = f[0].field();
    let mut s = Matrix::zeros(field, size, size);
    for i in 0..n {
        for (j, c) in f.iter().enumerate() {
            s.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().enumerate() {
            s.set(n + i, i + j, c.clone());
        }
    }
    s.det()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn t(i: usize, n: usize) -> Polynomial {
        Polynomial::var(q(), n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (t(0, 2), t(1, 2));
        let p = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let expected = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "t1^2 - t2^2");
    }

    #[test]
    fn evaluation() {
        let p = t(0, 2).pow(2).mul(&t(1, 2)).unwrap();
        let v = p.evaluate(&[q().from_i64(2), q().from_i64(3)]).unwrap();
        assert_eq!(v, q().from_i64(12));
        assert!(p.evaluate(&[q().one()]).is_err());
    }

    #[test]
    fn linear_substitution() {
        // x -> x + y, y -> y applied to xy
        let xy = t(0, 2).mul(&t(1, 2)).unwrap();
        let m = Matrix::from_i64_rows(q(), &[&[1, 1], &[0, 1]]).unwrap();
        let out = xy.substitute_linear(&m).unwrap();
        let expected = xy.add(&t(1, 2).pow(2)).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn canonical_string() {
        let f = q();
        let p = Polynomial::from_terms(
            f,
            2,
            [(vec![0, 3], f.parse_scalar("2/3").unwrap()), (vec![2, 1], f.one())],
        )
        .unwrap();
        assert_eq!(p.to_string(), "t1^2*t2 + 2/3*t2^3");
        let c = Polynomial::constant(f, 2, f.from_i64(-4));
        assert_eq!(c.to_string(), "-4");
        assert_eq!(Polynomial::zero(f, 3).to_string(), "0");
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![0, 3]);
        let c = Monomial::new(vec![3, 0]);
        let d = Monomial::new(vec![1, 0]);
        assert!(c > a && a > b && b > d);
    }

    #[test]
    fn proportionality() {
        let x2 = t(0, 2).pow(2);
        let y2 = t(1, 2).pow(2);
        assert!(proportional(&x2.scale(&q().from_i64(2)), &x2));
        assert!(!proportional(&x2, &y2));
        assert!(proportional(&Polynomial::zero(q(), 2), &Polynomial::zero(q(), 2)));
        assert!(!proportional(&x2, &Polynomial::zero(q(), 2)));
    }

    #[test]
    fn det_of_diagonal_linear_forms() {
        let n = 2;
        let z = Polynomial::zero(q(), n);
        let m = vec![vec![t(0, n), z.clone()], vec![z, t(1, n)]];
        assert_eq!(det_linear_matrix(&m).unwrap(), t(0, n).mul(&t(1, n)).unwrap());
    }

    #[test]
    fn det_of_diagonal_pencil() {
        let f = q();
        let (x, y) = (t(0, 2), t(1, 2));
        let z = Polynomial::zero(f, 2);
        let mut m = vec![vec![z.clone(); 4]; 4];
        let mut expected = Polynomial::one(f, 2);
        for i in 0..4 {
            let entry = x.add(&y.scale(&f.from_i64(i as i64 + 1))).unwrap();
            expected = expected.mul(&entry).unwrap();
            m[i][i] = entry;
        }
        assert_eq!(det_linear_matrix(&m).unwrap(), expected);
    }

    #[test]
    fn det_rejects_bad_shapes() {
        let m = vec![vec![t(0, 1), t(0, 1)]];
        assert!(matches!(det_linear_matrix(&m), Err(Error::NonSquare { .. })));
        let big = vec![vec![t(0, 1); 9]; 9];
        assert_eq!(det_linear_matrix(&big), Err(Error::TooLarge(9)));
    }

    #[test]
    fn triple_root_has_no_j() {
        // x^3 y
        let qq = BinaryQuartic::from_i64(q(), [0, 1, 0, 0, 0]);
        let inv = qq.invariants().unwrap();
        assert!(inv.disc.is_zero());
        assert_eq!(inv.j, None);
    }

    #[test]
    fn quartic_preconditions() {
        let z = BinaryQuartic::from_i64(q(), [0; 5]);
        assert_eq!(z.invariants(), Err(Error::ZeroQuartic));
        let f3 = FieldSpec::prime(3).unwrap();
        let c = BinaryQuartic::from_i64(f3, [1, 0, 0, 0, 1]);
        assert_eq!(c.invariants(), Err(Error::BadCharacteristic(3)));
    }

    #[test]
    fn disc_identity_holds() {
        let f = q();
        let qq = BinaryQuartic::from_i64(f, [3, -1, 4, 1, -5]);
        let inv = qq.invariants().unwrap();
        let lhs = &inv.disc * &f.from_i64(27);
        let rhs = f.from_i64(4) * inv.delta0.pow(3) - inv.delta1.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(inv.j.unwrap(), inv.delta0.pow(3) / &inv.disc);
    }

    #[test]
    fn derivative_and_coefficients() {
        let f = q();
        // t1^3 t2 + 2 t2^2
        let p = Polynomial::from_terms(f, 2, [(vec![3, 1], f.one()), (vec![0, 2], f.from_i64(2))]).unwrap();
        let d = p.derivative(0);
        assert_eq!(d.to_string(), "3*t1^2*t2");
        assert_eq!(p.coefficient_in(1, 2).to_string(), "2");
        assert_eq!(p.coefficient_in(1, 1).to_string(), "t1^3");
    }
}
