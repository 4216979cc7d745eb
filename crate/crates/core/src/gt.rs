//! Gelfand-Tsetlin patterns for U(p), their weights, and copy labels.
//!
//! A pattern is stored top row first: row 0 is level `p` (the irrep weight,
//! length `p`), the last row is level 1 (length 1). Entry `m_{k,l}` is
//! `rows[p - l][k - 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableaux::{StandardTableau, YoungDiagram};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GtPattern {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for GtPattern {
    type Error = Error;
    fn try_from(v: Vec<Vec<i64>>) -> Result<Self> {
        GtPattern::new(v)
    }
}

impl From<GtPattern> for Vec<Vec<i64>> {
    fn from(g: GtPattern) -> Self {
        g.rows
    }
}

impl GtPattern {
    /// Validates row lengths `p, p-1, ..., 1`, non-negativity and betweenness.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<GtPattern> {
        let p = rows.len();
        let bad = |why: &str| Error::InvalidPattern(format!("{rows:?}: {why}"));
        if p == 0 {
            return Err(bad("no rows"));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != p - r {
                return Err(bad("row lengths must be p, p-1, ..., 1"));
            }
            if row.iter().any(|&x| x < 0) {
                return Err(bad("negative entry"));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(bad("rows must be non-increasing"));
            }
        }
        for r in 1..p {
            let (up, low) = (&rows[r - 1], &rows[r]);
            for k in 0..low.len() {
                if !(up[k] >= low[k] && low[k] >= up[k + 1]) {
                    return Err(bad("betweenness violated"));
                }
            }
        }
        Ok(GtPattern { rows })
    }

    pub fn p(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn top(&self) -> &[i64] {
        &self.rows[0]
    }

    /// Row at level `l` (`1..=p`), of length `l`.
    pub fn level(&self, l: usize) -> &[i64] {
        &self.rows[self.p() - l]
    }

    /// `sigma_l`, the sum of level `l`; `sigma_0 = 0`.
    pub fn level_sum(&self, l: usize) -> i64 {
        if l == 0 {
            0
        } else {
            self.level(l).iter().sum()
        }
    }

    /// `w_l = sigma_l - sigma_{l-1}` for `l = 1..=p`: the number of boxes a
    /// pattern of this weight takes from row `l` of the big diagram.
    pub fn row_weight(&self) -> Vec<i64> {
        (1..=self.p()).map(|l| self.level_sum(l) - self.level_sum(l - 1)).collect()
    }

    /// Top row as a Young diagram.
    pub fn shape(&self) -> Result<YoungDiagram> {
        YoungDiagram::new(self.top().iter().map(|&x| x as usize).collect())
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl fmt::Debug for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GT{:?}", self.rows)
    }
}

/// `Delta(M) = (sigma_p - sigma_{p-1}, ..., sigma_2 - sigma_1, sigma_1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DeltaWeight(pub Vec<i64>);

impl DeltaWeight {
    /// From boxes per row `(w_1, ..., w_p)`.
    pub fn from_row_weight(w: &[i64]) -> DeltaWeight {
        DeltaWeight(w.iter().rev().copied().collect())
    }

    /// Boxes per row `(w_1, ..., w_p)`.
    pub fn row_weight(&self) -> Vec<i64> {
        self.0.iter().rev().copied().collect()
    }
}

pub fn delta_weight(m: &GtPattern) -> DeltaWeight {
    DeltaWeight::from_row_weight(&m.row_weight())
}

fn validate_weight(weight: &[i64]) -> Result<()> {
    if weight.is_empty() || weight.iter().any(|&x| x < 0) || weight.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{weight:?} is not a valid U(p) weight")));
    }
    Ok(())
}

/// All patterns with top row `weight`, in descending lexicographic order of
/// the concatenated rows.
pub fn enumerate_gt_patterns(weight: &[i64]) -> Result<Vec<GtPattern>> {
    validate_weight(weight)?;
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
        let up = rows.last().expect("non-empty").clone();
        if up.len() == 1 {
            out.push(GtPattern { rows: rows.clone() });
            return;
        }
        let mut low = vec![0i64; up.len() - 1];
        fill(&up, &mut low, 0, rows, out);
    }
    fn fill(up: &[i64], low: &mut Vec<i64>, k: usize, rows: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
        if k == low.len() {
            rows.push(low.clone());
            rec(rows, out);
            rows.pop();
            return;
        }
        for v in (up[k + 1]..=up[k]).rev() {
            low[k] = v;
            fill(up, low, k + 1, rows, out);
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![weight.to_vec()], &mut out);
    Ok(out)
}

/// Patterns of top row `weight` with the given `Delta`.
pub fn patterns_with_delta(weight: &[i64], delta: &DeltaWeight) -> Result<Vec<GtPattern>> {
    Ok(enumerate_gt_patterns(weight)?.into_iter().filter(|m| &delta_weight(m) == delta).collect())
}

/// Number of patterns of top row `weight` with the given `Delta`.
pub fn inner_multiplicity(weight: &[i64], delta: &DeltaWeight) -> Result<usize> {
    Ok(patterns_with_delta(weight, delta)?.len())
}

/// Dimension of the U(p) irrep, by the Weyl dimension formula.
pub fn dim_unitary(weight: &[i64]) -> Result<u128> {
    validate_weight(weight)?;
    let p = weight.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..p {
        for j in i + 1..p {
            num = num.checked_mul((weight[i] - weight[j] + (j - i) as i64) as u128).ok_or(Error::Overflow)?;
            den = den.checked_mul((j - i) as u128).ok_or(Error::Overflow)?;
        }
    }
    Ok(num / den)
}

/// A copy label: a standard tableau of the S_m irrep together with the
/// Gelfand-Tsetlin pattern (top row = the tableau's shape padded to `p`)
/// that selects the copy.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CopyLabel {
    pub tableau: StandardTableau,
    pub pattern: GtPattern,
}

impl CopyLabel {
    pub fn new(tableau: StandardTableau, pattern: GtPattern) -> Result<CopyLabel> {
        let top: Vec<usize> = pattern.top().iter().map(|&x| x as usize).collect();
        if tableau.shape().padded(pattern.p())? != top {
            return Err(Error::InvalidQuery(format!(
                "tableau shape {} does not match pattern top row {:?}",
                tableau.shape(),
                pattern.top()
            )));
        }
        Ok(CopyLabel { tableau, pattern })
    }

    pub fn p(&self) -> usize {
        self.pattern.p()
    }

    pub fn shape(&self) -> &YoungDiagram {
        self.tableau.shape()
    }

    /// Position of the pattern in [`enumerate_gt_patterns`] order.
    pub fn pattern_index(&self) -> usize {
        enumerate_gt_patterns(self.pattern.top())
            .expect("valid top row")
            .iter()
            .position(|m| m == &self.pattern)
            .expect("pattern enumerates itself")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pattern_order_and_counts() {
        let pats = enumerate_gt_patterns(&[3, 1, 0, 0]).unwrap();
        assert_eq!(pats.len() as u128, dim_unitary(&[3, 1, 0, 0]).unwrap());
        assert_eq!(pats.len(), 45);
        let d = DeltaWeight(vec![1, 1, 1, 1]);
        let sel = patterns_with_delta(&[3, 1, 0, 0], &d).unwrap();
        assert_eq!(sel.len(), 3);
        assert_eq!(sel[0].rows(), &[vec![3, 1, 0, 0], vec![3, 0, 0], vec![2, 0], vec![1]]);
        assert_eq!(sel[1].rows(), &[vec![3, 1, 0, 0], vec![2, 1, 0], vec![2, 0], vec![1]]);
        assert_eq!(sel[2].rows(), &[vec![3, 1, 0, 0], vec![2, 1, 0], vec![1, 1], vec![1]]);
    }

    #[test]
    fn delta_of_example() {
        let m = GtPattern::new(vec![vec![2, 1, 0, 0], vec![2, 0, 0], vec![1, 0], vec![0]]).unwrap();
        assert_eq!(delta_weight(&m), DeltaWeight(vec![1, 1, 1, 0]));
        assert_eq!(m.row_weight(), vec![0, 1, 1, 1]);
    }

    #[test]
    fn invalid_patterns() {
        assert!(GtPattern::new(vec![vec![2, 1], vec![3]]).is_err());
        assert!(GtPattern::new(vec![vec![1, 2], vec![1]]).is_err());
        assert!(enumerate_gt_patterns(&[1, 2]).is_err());
    }

    proptest! {
        #[test]
        fn weyl_matches_enumeration(a in 0i64..5, b in 0i64..5, c in 0i64..5) {
            let mut w = vec![a + b + c, b + c, c];
            w.dedup_by(|_, _| false);
            let pats = enumerate_gt_patterns(&w).unwrap();
            prop_assert_eq!(pats.len() as u128, dim_unitary(&w).unwrap());
            prop_assert!(pats.windows(2).all(|p| p[0].rows().concat() > p[1].rows().concat()));
            for m in &pats {
                prop_assert_eq!(GtPattern::new(m.rows().to_vec()).unwrap(), m.clone());
                let rw = m.row_weight();
                prop_assert_eq!(rw.iter().sum::<i64>(), a + 2 * b + 3 * c);
            }
        }
    }
}
