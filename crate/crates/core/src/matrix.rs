//! Dense matrices of [`SurdSum`] entries with row and column labels.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surd::{Rational, SurdSum};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<SurdSum>,
    #[serde(default)]
    pub row_labels: Vec<String>,
    #[serde(default)]
    pub col_labels: Vec<String>,
}

impl CoeffMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> CoeffMatrix {
        CoeffMatrix { nrows, ncols, data: vec![SurdSum::zero(); nrows * ncols], row_labels: vec![], col_labels: vec![] }
    }

    pub fn identity(n: usize) -> CoeffMatrix {
        let mut m = CoeffMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = SurdSum::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Result<SurdSum>>(nrows: usize, ncols: usize, mut f: F) -> Result<CoeffMatrix> {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j)?);
            }
        }
        Ok(CoeffMatrix { nrows, ncols, data, row_labels: vec![], col_labels: vec![] })
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> CoeffMatrix {
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &SurdSum {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SurdSum) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &SurdSum) -> Result<()> {
        let k = i * self.ncols + j;
        self.data[k] = self.data[k].checked_add(v)?;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[SurdSum] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn transpose(&self) -> CoeffMatrix {
        let mut t = CoeffMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.data[j * self.nrows + i] = self.get(i, j).clone();
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    pub fn checked_mul(&self, o: &CoeffMatrix) -> Result<CoeffMatrix> {
        if self.ncols != o.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let mut out = CoeffMatrix::zeros(self.nrows, o.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.ncols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(i, j, &a.checked_mul(b)?)?;
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = o.col_labels.clone();
        Ok(out)
    }

    pub fn checked_add(&self, o: &CoeffMatrix) -> Result<CoeffMatrix> {
        if (self.nrows, self.ncols) != (o.nrows, o.ncols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a = a.checked_add(b)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &CoeffMatrix) -> Result<CoeffMatrix> {
        self.checked_add(&o.scale(&Rational::from_int(-1))?)
    }

    pub fn scale(&self, r: &Rational) -> Result<CoeffMatrix> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.checked_scale(r)?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<SurdSum> {
        let mut t = SurdSum::zero();
        for i in 0..self.nrows.min(self.ncols) {
            t = t.checked_add(self.get(i, i))?;
        }
        Ok(t)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SurdSum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && (0..self.nrows).all(|i| (0..self.ncols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && (0..self.nrows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `M M^T = I` and `M^T M = I`, exactly.
    pub fn is_orthogonal(&self) -> Result<bool> {
        if self.nrows != self.ncols {
            return Ok(false);
        }
        let t = self.transpose();
        Ok(self.checked_mul(&t)?.is_identity() && t.checked_mul(self)?.is_identity())
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.nrows).map(|i| self.row(i).iter().map(SurdSum::to_f64).collect()).collect()
    }

    /// Row-major text entries.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }

    /// Restrict to the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CoeffMatrix {
        let mut out = CoeffMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        if !self.row_labels.is_empty() {
            out.row_labels = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        }
        if !self.col_labels.is_empty() {
            out.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        }
        out
    }
}

impl fmt::Debug for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CoeffMatrix {}x{}", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::surd_sqrt;

    #[test]
    fn rotation_is_orthogonal() {
        let c = surd_sqrt(Rational::new(1, 2)).unwrap();
        let m = CoeffMatrix::from_fn(2, 2, |i, j| Ok(if i == 1 && j == 0 { -c.clone() } else { c.clone() })).unwrap();
        assert!(m.is_orthogonal().unwrap());
        assert!(!m.is_symmetric());
        assert!(m.checked_mul(&m.transpose()).unwrap().is_identity());
    }

    #[test]
    fn mismatched_product_errors() {
        let a = CoeffMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
    }
}
