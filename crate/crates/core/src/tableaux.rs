//! Young diagrams, standard Young tableaux and Young's orthogonal form.
//!
//! Tableaux are standard: labels `1..=N` increase along rows and down
//! columns. The content of the box in row `i`, column `j` (both 0-based) is
//! `j - i`. The generator `s_k = (k, k+1)` acts with axial distance
//! `rho = c(k+1) - c(k)`: diagonal `1/rho`, and `sqrt(1 - 1/rho^2)` onto the
//! tableau with `k` and `k+1` exchanged.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CoeffMatrix;
use crate::perm::Permutation;
use crate::surd::{surd_sqrt, Rational, SurdSum};

/// A partition, rows non-increasing and positive. The empty diagram is allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(v)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(y: YoungDiagram) -> Self {
        y.rows
    }
}

impl YoungDiagram {
    /// Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>) -> Result<YoungDiagram> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(Error::InvalidShape(format!("{rows:?} is not a partition")));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> YoungDiagram {
        YoungDiagram { rows: vec![] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Row length, 0 past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Rows padded with zeros to length `p`.
    pub fn padded(&self, p: usize) -> Result<Vec<usize>> {
        if self.rows.len() > p {
            return Err(Error::InvalidShape(format!("{self} has more than {p} rows")));
        }
        let mut v = self.rows.clone();
        v.resize(p, 0);
        Ok(v)
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let cols = self.row(0);
        YoungDiagram { rows: (0..cols).map(|j| self.rows.iter().filter(|&&r| r > j).count()).collect() }
    }

    /// Diagram with one box removed from row `i`, if still a partition.
    pub fn remove_box(&self, i: usize) -> Option<YoungDiagram> {
        let r = self.row(i);
        if r == 0 || self.row(i + 1) == r {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[i] -= 1;
        YoungDiagram::new(rows).ok()
    }

    /// Diagram with one box added to row `i`, if still a partition.
    pub fn add_box(&self, i: usize) -> Option<YoungDiagram> {
        if i > self.rows.len() || (i > 0 && self.row(i - 1) == self.row(i)) {
            return None;
        }
        let mut rows = self.rows.clone();
        if i == rows.len() {
            rows.push(1);
        } else {
            rows[i] += 1;
        }
        Some(YoungDiagram { rows })
    }

    /// Rows from which a box can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.remove_box(i).is_some()).collect()
    }

    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len() && other.rows.iter().enumerate().all(|(i, &r)| r <= self.rows[i])
    }

    /// Hook-length formula. Errors on `u128` overflow.
    pub fn dimension(&self) -> Result<u128> {
        let conj = self.conjugate();
        let mut hooks: Vec<u128> = Vec::with_capacity(self.size());
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..r {
                hooks.push((r - j - 1 + conj.rows[j] - i - 1 + 1) as u128);
            }
        }
        // cancel hooks against the growing factorial to stay small
        let mut num: u128 = 1;
        for k in 1..=self.size() as u128 {
            num = num.checked_mul(k).ok_or(Error::Overflow)?;
            for h in hooks.iter_mut().filter(|h| **h > 1) {
                let g = gcd(num, *h);
                num /= g;
                *h /= g;
            }
        }
        let rest: u128 = hooks.iter().product();
        debug_assert_eq!(num % rest, 0);
        Ok(num / rest)
    }

    /// All partitions of `n` with at most `max_rows` rows, lexicographically descending.
    pub fn partitions(n: usize, max_rows: usize) -> Vec<YoungDiagram> {
        fn rec(n: usize, max_part: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if n == 0 {
                out.push(YoungDiagram { rows: cur.clone() });
                return;
            }
            if rows_left == 0 {
                return;
            }
            for part in (1..=max_part.min(n)).rev() {
                cur.push(part);
                rec(n - part, part, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, max_rows, &mut Vec::new(), &mut out);
        out
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{:?}", self.rows)
    }
}

/// A standard Young tableau.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct StandardTableau {
    shape: YoungDiagram,
    /// `pos[label - 1] = (row, col)`, 0-based.
    pos: Vec<(usize, usize)>,
}

impl TryFrom<Vec<Vec<usize>>> for StandardTableau {
    type Error = Error;
    fn try_from(v: Vec<Vec<usize>>) -> Result<Self> {
        StandardTableau::from_rows(v)
    }
}

impl From<StandardTableau> for Vec<Vec<usize>> {
    fn from(t: StandardTableau) -> Self {
        t.to_rows()
    }
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<StandardTableau> {
        let shape = YoungDiagram::new(rows.iter().map(Vec::len).collect())
            .map_err(|_| Error::InvalidTableau(format!("{rows:?} does not have a partition shape")))?;
        let n = shape.size();
        let mut pos = vec![(usize::MAX, 0); n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x > n || pos[x - 1].0 != usize::MAX {
                    return Err(Error::InvalidTableau(format!("{rows:?}: labels must be 1..={n}, each once")));
                }
                pos[x - 1] = (i, j);
                let left_ok = j == 0 || row[j - 1] < x;
                let up_ok = i == 0 || rows[i - 1][j] < x;
                if !left_ok || !up_ok {
                    return Err(Error::InvalidTableau(format!("{rows:?} is not standard")));
                }
            }
        }
        Ok(StandardTableau { shape, pos })
    }

    /// Build from the row of each label: `rows[k-1]` is the (0-based) row of label `k`.
    pub fn from_row_word(word: &[usize]) -> Result<StandardTableau> {
        let mut lens: Vec<usize> = Vec::new();
        let mut pos = Vec::with_capacity(word.len());
        for &r in word {
            if r > lens.len() {
                return Err(Error::InvalidTableau(format!("row word {word:?} skips a row")));
            }
            if r == lens.len() {
                lens.push(0);
            }
            if r > 0 && lens[r - 1] <= lens[r] {
                return Err(Error::InvalidTableau(format!("row word {word:?} is not a lattice word")));
            }
            pos.push((r, lens[r]));
            lens[r] += 1;
        }
        Ok(StandardTableau { shape: YoungDiagram { rows: lens }, pos })
    }

    /// The tableau filled row by row.
    pub fn row_reading(shape: &YoungDiagram) -> StandardTableau {
        let word: Vec<usize> = shape.rows.iter().enumerate().flat_map(|(i, &r)| std::iter::repeat_n(i, r)).collect();
        StandardTableau::from_row_word(&word).expect("row reading filling is standard")
    }

    pub fn empty() -> StandardTableau {
        StandardTableau { shape: YoungDiagram::empty(), pos: vec![] }
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.pos.len()
    }

    /// `(row, col)` of `label`, 0-based.
    pub fn position(&self, label: usize) -> (usize, usize) {
        self.pos[label - 1]
    }

    pub fn row_of(&self, label: usize) -> usize {
        self.pos[label - 1].0
    }

    pub fn content(&self, label: usize) -> i64 {
        let (r, c) = self.pos[label - 1];
        c as i64 - r as i64
    }

    /// `rows[k-1]` = row of label `k`.
    pub fn row_word(&self) -> Vec<usize> {
        self.pos.iter().map(|p| p.0).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.rows.iter().map(|&r| vec![0; r]).collect();
        for (k, &(i, j)) in self.pos.iter().enumerate() {
            rows[i][j] = k + 1;
        }
        rows
    }

    /// Restriction to labels `1..=k`.
    pub fn restrict(&self, k: usize) -> StandardTableau {
        StandardTableau::from_row_word(&self.row_word()[..k]).expect("restriction of a standard tableau")
    }

    /// Remove the largest label; returns the smaller tableau and that label's row.
    pub fn remove_max(&self) -> Option<(StandardTableau, usize)> {
        let n = self.size();
        if n == 0 {
            return None;
        }
        Some((self.restrict(n - 1), self.row_of(n)))
    }

    /// Append label `size+1` in row `r`.
    pub fn push(&self, r: usize) -> Result<StandardTableau> {
        let mut w = self.row_word();
        w.push(r);
        StandardTableau::from_row_word(&w)
    }

    /// Exchange labels `k` and `k+1`, if the result is standard.
    pub fn swapped(&self, k: usize) -> Option<StandardTableau> {
        let mut w = self.row_word();
        w.swap(k - 1, k);
        let t = StandardTableau::from_row_word(&w).ok()?;
        // same row word positions but the columns must also be legal
        let mut pos = self.pos.clone();
        pos.swap(k - 1, k);
        (t.pos == pos).then_some(t)
    }

    /// Axial distance `c(k+1) - c(k)`.
    pub fn axial_distance(&self, k: usize) -> i64 {
        self.content(k + 1) - self.content(k)
    }
}

impl PartialOrd for StandardTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StandardTableau {
    /// Shape first, then last-letter order: compare rows of labels `N, N-1, ...`;
    /// the tableau whose label sits in the lower row comes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.shape.cmp(&other.shape).then_with(|| {
            for k in (0..self.pos.len().min(other.pos.len())).rev() {
                match other.pos[k].0.cmp(&self.pos[k].0) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.pos.len().cmp(&other.pos.len())
        })
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.to_rows())
    }
}

/// All standard tableaux of `shape` in last-letter order.
pub fn enumerate_standard_tableaux(shape: &YoungDiagram) -> Vec<StandardTableau> {
    if shape.size() == 0 {
        return vec![StandardTableau::empty()];
    }
    let mut out = Vec::new();
    // largest label in the lowest removable row first
    for r in shape.removable_rows().into_iter().rev() {
        let smaller = shape.remove_box(r).expect("removable row");
        for t in enumerate_standard_tableaux(&smaller) {
            out.push(t.push(r).expect("adding a removable corner back"));
        }
    }
    out
}

/// Which limit of Young's orthogonal form to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitMode {
    /// Large row differences: boxes in different rows are exchanged with +1.
    Row,
    /// Large column differences: boxes in different columns are exchanged with +1.
    Column,
}

/// Exact Young orthogonal action of `s_k` on `t`.
pub fn yy_action_exact(t: &StandardTableau, k: usize) -> Result<Vec<(StandardTableau, SurdSum)>> {
    if k == 0 || k >= t.size() {
        return Err(Error::InvalidQuery(format!("s_{k} on a tableau with {} boxes", t.size())));
    }
    let rho = t.axial_distance(k);
    let inv = Rational::new(1, rho);
    let mut out = vec![(t.clone(), SurdSum::from_rational(inv))];
    if rho.abs() != 1 {
        let off = surd_sqrt(Rational::ONE.checked_sub(&inv.checked_mul(&inv)?)?)?;
        let s = t.swapped(k).expect("|rho| > 1 so the exchange is standard");
        out.push((s, off));
    }
    Ok(out)
}

/// Limit action of `s_k`. Adjacent boxes (`|rho| = 1`) keep their exact `±1`;
/// otherwise the labels are exchanged with coefficient +1.
pub fn yy_action_limit(t: &StandardTableau, k: usize, mode: LimitMode) -> Result<Vec<(StandardTableau, SurdSum)>> {
    if k == 0 || k >= t.size() {
        return Err(Error::InvalidQuery(format!("s_{k} on a tableau with {} boxes", t.size())));
    }
    let (a, b) = (t.position(k), t.position(k + 1));
    let same = match mode {
        LimitMode::Row => a.0 == b.0,
        LimitMode::Column => a.1 == b.1,
    };
    if same {
        let sign = if mode == LimitMode::Row { 1 } else { -1 };
        return Ok(vec![(t.clone(), SurdSum::from_int(sign))]);
    }
    match t.swapped(k) {
        Some(s) => Ok(vec![(s, SurdSum::one())]),
        None => Ok(vec![(t.clone(), SurdSum::from_int(if a.0 == b.0 { 1 } else { -1 }))]),
    }
}

/// Matrix of `s_k` on the tableaux of `shape` in last-letter order.
/// Column `j` holds the image of basis tableau `j`.
pub fn yy_matrix(shape: &YoungDiagram, k: usize, exact: bool) -> Result<CoeffMatrix> {
    let basis = enumerate_standard_tableaux(shape);
    let index: BTreeMap<&StandardTableau, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut m = CoeffMatrix::zeros(basis.len(), basis.len());
    for (j, t) in basis.iter().enumerate() {
        let img = if exact { yy_action_exact(t, k)? } else { yy_action_limit(t, k, LimitMode::Row)? };
        for (s, c) in img {
            m.add_to(index[&s], j, &c)?;
        }
    }
    let labels: Vec<String> = basis.iter().map(|t| t.to_string()).collect();
    Ok(m.with_labels(labels.clone(), labels))
}

/// Matrix of an arbitrary permutation, `Gamma(s_k1 ... s_kL) = Gamma(s_k1) ... Gamma(s_kL)`.
pub fn yy_matrix_of(shape: &YoungDiagram, sigma: &Permutation) -> Result<CoeffMatrix> {
    let d = enumerate_standard_tableaux(shape).len();
    let mut m = CoeffMatrix::identity(d);
    for k in sigma.to_adjacent_word() {
        m = m.checked_mul(&yy_matrix(shape, k, true)?)?;
    }
    Ok(m)
}

/// Sparse image of a single tableau under a permutation, exact form.
pub fn yy_apply(t: &StandardTableau, sigma: &Permutation) -> Result<BTreeMap<StandardTableau, SurdSum>> {
    let mut v: BTreeMap<StandardTableau, SurdSum> = BTreeMap::new();
    v.insert(t.clone(), SurdSum::one());
    // rightmost generator acts first
    for k in sigma.to_adjacent_word().into_iter().rev() {
        let mut next: BTreeMap<StandardTableau, SurdSum> = BTreeMap::new();
        for (s, c) in &v {
            for (s2, c2) in yy_action_exact(s, k)? {
                let e = next.entry(s2).or_insert_with(SurdSum::zero);
                *e = e.checked_add(&c.checked_mul(&c2)?)?;
            }
        }
        next.retain(|_, c| !c.is_zero());
        v = next;
    }
    Ok(v)
}

/// Shapes of the restrictions to labels `1..=k`, `k = 1..=N`.
pub fn tableau_to_removal_chain(t: &StandardTableau) -> Vec<YoungDiagram> {
    (1..=t.size()).map(|k| t.restrict(k).shape().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(v: &[usize]) -> YoungDiagram {
        YoungDiagram::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        // Catalan(30): well past 34! in u128
        assert_eq!(YoungDiagram::new(vec![30, 30]).unwrap().dimension().unwrap(), 3_814_986_502_092_304);
        assert_eq!(YoungDiagram::new(vec![41, 1]).unwrap().dimension().unwrap(), 41);
        assert_eq!(y(&[3, 1]).dimension().unwrap(), 3);
        assert_eq!(y(&[2, 2]).dimension().unwrap(), 2);
        assert_eq!(y(&[3, 2, 1]).dimension().unwrap(), 16);
        assert_eq!(y(&[10, 7, 5, 3]).dimension().unwrap() as usize > 0, true);
        for p in YoungDiagram::partitions(6, 6) {
            assert_eq!(p.dimension().unwrap() as usize, enumerate_standard_tableaux(&p).len());
        }
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
    }

    #[test]
    fn last_letter_order_starts_row_filled() {
        let ts = enumerate_standard_tableaux(&y(&[2, 1]));
        assert_eq!(ts[0].to_rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(ts[1].to_rows(), vec![vec![1, 3], vec![2]]);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn axial_distance_three() {
        // labels 5 and 6 with c(6) - c(5) = 3
        let t = StandardTableau::from_rows(vec![vec![1, 2, 3, 6], vec![4, 5]]).unwrap();
        let img = yy_action_exact(&t, 5).unwrap();
        assert_eq!(img[0].1.to_string(), "1/3");
        assert_eq!(img[1].1.to_string(), "2/3*sqrt(2)");
        assert_eq!(img[1].0.to_rows(), vec![vec![1, 2, 3, 5], vec![4, 6]]);
    }

    #[test]
    fn removal_chain() {
        let t = StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(tableau_to_removal_chain(&t), vec![y(&[1]), y(&[1, 1]), y(&[2, 1])]);
    }

    #[test]
    fn invalid_tableaux_rejected() {
        assert!(StandardTableau::from_rows(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 2], vec![3, 4, 5]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 3], vec![4]]).is_err());
    }

    #[test]
    fn limit_actions() {
        let t = StandardTableau::from_rows(vec![vec![1, 2, 3], vec![4]]).unwrap();
        let r = yy_action_limit(&t, 3, LimitMode::Row).unwrap();
        assert_eq!(r, vec![(StandardTableau::from_rows(vec![vec![1, 2, 4], vec![3]]).unwrap(), SurdSum::one())]);
        let r = yy_action_limit(&t, 1, LimitMode::Row).unwrap();
        assert_eq!(r, vec![(t.clone(), SurdSum::one())]);
        let c = StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(yy_action_limit(&c, 1, LimitMode::Column).unwrap(), vec![(c.clone(), SurdSum::from_int(-1))]);
    }

    fn shape_strategy() -> impl Strategy<Value = YoungDiagram> {
        (1usize..=5).prop_flat_map(|n| prop::sample::select(YoungDiagram::partitions(n, n)))
    }

    proptest! {
        #[test]
        fn young_orthogonal_form_is_a_representation(shape in shape_strategy()) {
            let n = shape.size();
            let gens: Vec<CoeffMatrix> = (1..n).map(|k| yy_matrix(&shape, k, true).unwrap()).collect();
            for (i, g) in gens.iter().enumerate() {
                prop_assert!(g.is_symmetric());
                prop_assert!(g.is_orthogonal().unwrap());
                prop_assert!(g.checked_mul(g).unwrap().is_identity());
                if i + 1 < gens.len() {
                    let h = &gens[i + 1];
                    let lhs = g.checked_mul(h).unwrap().checked_mul(g).unwrap();
                    let rhs = h.checked_mul(g).unwrap().checked_mul(h).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
                for h in gens.iter().skip(i + 2) {
                    prop_assert_eq!(g.checked_mul(h).unwrap(), h.checked_mul(g).unwrap());
                }
            }
        }

        #[test]
        fn tableau_round_trips(shape in shape_strategy()) {
            for t in enumerate_standard_tableaux(&shape) {
                prop_assert_eq!(StandardTableau::from_rows(t.to_rows()).unwrap(), t.clone());
                prop_assert_eq!(StandardTableau::from_row_word(&t.row_word()).unwrap(), t.clone());
                let (smaller, r) = t.remove_max().unwrap();
                prop_assert_eq!(smaller.push(r).unwrap(), t);
            }
        }
    }
}
