//! Residue-table form of an algebra over `F_p`, used by exhaustive scans.

use rayon::prelude::*;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;
use crate::tensor::{checked_power, decode_point};

pub(crate) struct ResidueAlgebra {
    pub dim: usize,
    pub p: u64,
    /// `table[i * dim + j]` lists `(k, c)` with `e_i e_j = sum c e_k`.
    table: Vec<Vec<(usize, u64)>>,
}

impl ResidueAlgebra {
    pub fn new(a: &Algebra) -> Result<Self> {
        let p = a.field().modulus().ok_or(Error::NotPrimeField(a.field()))?;
        let dim = a.dim();
        let table = (0..dim * dim)
            .map(|ij| {
                a.basis_product(ij / dim, ij % dim)
                    .iter()
                    .map(|(k, c)| (*k, c.residue().expect("prime field")))
                    .collect()
            })
            .collect();
        Ok(ResidueAlgebra { dim, p, table })
    }

    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let (d, p) = (self.dim, self.p as u128);
        out.iter_mut().for_each(|x| *x = 0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let ab = ai as u128 * bj as u128 % p;
                for &(k, c) in &self.table[i * d + j] {
                    out[k] = ((out[k] as u128 + ab * c as u128) % p) as u64;
                }
            }
        }
    }

    pub fn to_element(&self, v: &[u64]) -> Element {
        let f = FieldSpec::Prime(self.p);
        v.iter().map(|&x| f.from_u64(x)).collect()
    }

    /// Number of points in `F_p^dim`, or the budget error.
    pub fn space_size(&self, budget: u128) -> Result<u64> {
        let required = checked_power(self.p, self.dim).unwrap_or(u128::MAX);
        if required > budget || required > u64::MAX as u128 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        Ok(required as u64)
    }

    /// All points `x` with `pred(x, x*x)`, in lexicographic coordinate order
    /// (first coordinate most significant).
    pub fn scan_squares<F>(&self, budget: u128, pred: F) -> Result<Vec<Vec<u64>>>
    where
        F: Fn(&[u64], &[u64]) -> bool + Sync,
    {
        let total = self.space_size(budget)?;
        let hits = (0..total)
            .into_par_iter()
            .map_init(
                || (vec![0u64; self.dim], vec![0u64; self.dim]),
                |(x, sq), n| {
                    decode_point(n, self.p, x);
                    self.mul_into(x, x, sq);
                    pred(x, sq).then(|| x.clone())
                },
            )
            .flatten()
            .collect();
        Ok(hits)
    }
}
