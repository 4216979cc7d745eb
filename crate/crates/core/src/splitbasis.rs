//! Split-basis states, subduction coefficients and split-standard
//! transformation matrices in the limit of infinite row-length differences.
//!
//! A removal word stores the rows `(b_m, ..., b_1)` of the last `m` boxes of a
//! Young-Yamanouchi tableau: `b_m` is the row of standard label `n+1`, `b_1`
//! the row of label `n+m`. The same order is used for tensor slot states.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cg::composite_cg;
use crate::error::{Error, Result};
use crate::gt::{enumerate_gt_patterns, inner_multiplicity, CopyLabel, DeltaWeight, GtPattern};
use crate::matrix::CoeffMatrix;
use crate::perm::Permutation;
use crate::surd::{Rational, SurdSum};
use crate::tableaux::{enumerate_standard_tableaux, StandardTableau, YoungDiagram};

/// Fundamental indices of `m` tensor slots, stored as `(a_m, ..., a_1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TensorSlotState {
    #[serde(rename = "slots_am_to_a1")]
    pub slots: Vec<usize>,
}

impl TensorSlotState {
    pub fn new(slots: Vec<usize>) -> TensorSlotState {
        TensorSlotState { slots }
    }

    pub fn m(&self) -> usize {
        self.slots.len()
    }

    /// `a_k`, the fundamental carried by split label `k`.
    pub fn a(&self, k: usize) -> usize {
        self.slots[self.slots.len() - k]
    }

    /// Number of slots equal to each of `1..=p`.
    pub fn counts(&self, p: usize) -> Vec<i64> {
        (1..=p).map(|a| self.slots.iter().filter(|&&x| x == a).count() as i64).collect()
    }
}

impl fmt::Display for TensorSlotState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.slots.iter().join(","))
    }
}

impl fmt::Debug for TensorSlotState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slots{self}")
    }
}

/// All slot states with `counts[a-1]` copies of each `a`, lexicographic.
pub fn slot_states_with_counts(counts: &[i64]) -> Vec<TensorSlotState> {
    let m: i64 = counts.iter().sum();
    let mut out = Vec::new();
    fn rec(left: &mut Vec<i64>, cur: &mut Vec<usize>, m: usize, out: &mut Vec<TensorSlotState>) {
        if cur.len() == m {
            out.push(TensorSlotState::new(cur.clone()));
            return;
        }
        for a in 0..left.len() {
            if left[a] > 0 {
                left[a] -= 1;
                cur.push(a + 1);
                rec(left, cur, m, out);
                cur.pop();
                left[a] += 1;
            }
        }
    }
    rec(&mut counts.to_vec(), &mut Vec::new(), m.max(0) as usize, &mut out);
    out
}

/// Young-Yamanouchi state given by a base tableau `t_n` and the rows of the
/// boxes labelled `n+1, ..., n+m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct RemovalWord {
    pub base: StandardTableau,
    /// `(b_m, ..., b_1)`, 1-based rows.
    pub rows: TensorSlotState,
}

impl RemovalWord {
    pub fn to_tableau(&self) -> Result<StandardTableau> {
        let mut t = self.base.clone();
        for &b in &self.rows.slots {
            t = t.push(b - 1)?;
        }
        Ok(t)
    }
}

/// `|R; r_n, r_m>^i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SplitLabel {
    pub big_shape: YoungDiagram,
    pub rn_tableau: StandardTableau,
    pub rm: CopyLabel,
}

/// Boxes per row of `R` not in `rn`.
pub fn removed_counts(big: &YoungDiagram, rn: &YoungDiagram) -> Result<Vec<i64>> {
    if !big.contains(rn) {
        return Err(Error::InvalidShape(format!("{rn} is not contained in {big}")));
    }
    Ok((0..big.num_rows()).map(|i| (big.row(i) - rn.row(i)) as i64).collect())
}

impl SplitLabel {
    pub fn new(big_shape: YoungDiagram, rn_tableau: StandardTableau, rm: CopyLabel) -> Result<SplitLabel> {
        let w = removed_counts(&big_shape, rn_tableau.shape())?;
        if rm.p() != big_shape.num_rows() || rm.pattern.row_weight() != w {
            return Err(Error::InvalidQuery(format!(
                "pattern {} does not describe the boxes {w:?} removed from {big_shape}",
                rm.pattern
            )));
        }
        Ok(SplitLabel { big_shape, rn_tableau, rm })
    }
}

/// One `(r_n, r_m)` class of subduced irreps with its multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SplitClass {
    pub rn: YoungDiagram,
    pub rm: YoungDiagram,
    /// Boxes removed per row of `R`.
    pub removed: Vec<i64>,
    pub multiplicity: usize,
    /// The patterns resolving the multiplicity, in enumeration order.
    pub patterns: Vec<GtPattern>,
}

/// Diagrams `rn ⊂ big` with `|big| - |rn| = m`, lexicographically descending.
pub fn sub_diagrams(big: &YoungDiagram, m: usize) -> Vec<YoungDiagram> {
    let p = big.num_rows();
    let mut out = Vec::new();
    for take in (0..p).map(|i| 0..=big.row(i).min(m)).multi_cartesian_product() {
        if take.iter().sum::<usize>() != m {
            continue;
        }
        let rows: Vec<usize> = (0..p).map(|i| big.row(i) - take[i]).collect();
        if rows.windows(2).all(|w| w[0] >= w[1]) {
            if let Ok(y) = YoungDiagram::new(rows) {
                out.push(y);
            }
        }
    }
    out.sort();
    out.reverse();
    out
}

/// All `(r_n, r_m)` with nonzero inner multiplicity.
pub fn enumerate_split_labels(big: &YoungDiagram, m: usize) -> Result<Vec<SplitClass>> {
    if m > big.size() {
        return Err(Error::InvalidShape(format!("cannot remove {m} boxes from {big}")));
    }
    let p = big.num_rows();
    let mut out = Vec::new();
    for rn in sub_diagrams(big, m) {
        let w = removed_counts(big, &rn)?;
        let delta = DeltaWeight::from_row_weight(&w);
        for rm in YoungDiagram::partitions(m, p) {
            let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
            let patterns: Vec<GtPattern> =
                enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).collect();
            debug_assert_eq!(patterns.len(), inner_multiplicity(&top, &delta)?);
            if !patterns.is_empty() {
                out.push(SplitClass { rn: rn.clone(), rm, removed: w.clone(), multiplicity: patterns.len(), patterns });
            }
        }
    }
    Ok(out)
}

/// `<R; r_n, r_m, i | t_n; b>`: the composite CG when the base tableau equals
/// `r_n`, zero otherwise.
pub fn subduction_coefficient(yy: &RemovalWord, split: &SplitLabel) -> Result<SurdSum> {
    if yy.base != split.rn_tableau {
        return Ok(SurdSum::zero());
    }
    if yy.rows.m() != split.rm.tableau.size() {
        return Err(Error::InvalidQuery("removal word length differs from |r_m|".into()));
    }
    composite_cg(&split.rm.tableau, &split.rm.pattern, &yy.rows.slots)
}

/// Nonzero terms of the split state `|M^i_{r_m}>` in the tensor basis.
pub fn split_state_expansion(label: &CopyLabel) -> Result<Vec<(TensorSlotState, SurdSum)>> {
    let w = label.pattern.row_weight();
    let mut out = Vec::new();
    for t in slot_states_with_counts(&w) {
        let c = composite_cg(&label.tableau, &label.pattern, &t.slots)?;
        if !c.is_zero() {
            out.push((t, c));
        }
    }
    Ok(out)
}

/// Slot permutation: the slot of split label `k` receives the content of the
/// slot of label `sigma(k)`. As a map on states this is a right action,
/// `sigma . (tau . x) = (tau o sigma) . x`.
pub fn slot_permutation_action(sigma: &Permutation, t: &TensorSlotState) -> Result<TensorSlotState> {
    let m = t.m();
    if sigma.degree() != m {
        return Err(Error::InvalidPermutation(format!("{sigma} does not act on {m} slots")));
    }
    let slots = (0..m).map(|j| t.a(sigma.apply(m - j))).collect();
    Ok(TensorSlotState::new(slots))
}

/// Linear extension of [`slot_permutation_action`].
pub fn slot_permutation_on_combination(
    sigma: &Permutation,
    v: &BTreeMap<TensorSlotState, SurdSum>,
) -> Result<BTreeMap<TensorSlotState, SurdSum>> {
    let mut out = BTreeMap::new();
    for (t, c) in v {
        out.insert(slot_permutation_action(sigma, t)?, c.clone());
    }
    Ok(out)
}

/// The same `p x p` matrix applied to every slot: `(D e_a)_b = d[b-1][a-1]`.
pub fn per_slot_action(d: &[Vec<Rational>], v: &BTreeMap<TensorSlotState, Rational>) -> Result<BTreeMap<TensorSlotState, Rational>> {
    let mut cur = v.clone();
    let m = v.keys().next().map(|t| t.m()).unwrap_or(0);
    for pos in 0..m {
        let mut next: BTreeMap<TensorSlotState, Rational> = BTreeMap::new();
        for (t, c) in &cur {
            let a = t.slots[pos];
            for (b, row) in d.iter().enumerate() {
                let x = row[a - 1];
                if x.is_zero() {
                    continue;
                }
                let mut s = t.clone();
                s.slots[pos] = b + 1;
                let e = next.entry(s).or_insert(Rational::ZERO);
                *e = e.checked_add(&x.checked_mul(c)?)?;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    Ok(cur)
}

/// Warnings for row-length differences below `2m`.
pub fn regime_warnings(big: &YoungDiagram, m: usize) -> Vec<String> {
    (0..big.num_rows().saturating_sub(1))
        .filter(|&i| big.row(i) - big.row(i + 1) < 2 * m)
        .map(|i| {
            format!(
                "rows {} and {} of {big} differ by {} < 2m = {}; leading-order results are approximate",
                i + 1,
                i + 2,
                big.row(i) - big.row(i + 1),
                2 * m
            )
        })
        .collect()
}

/// Row label of a split-basis state in a fixed-`r_n` sector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SplitRow {
    pub rm_tableau: StandardTableau,
    pub pattern: GtPattern,
    /// 1-based position among the patterns of this `(r_n, r_m)` class.
    pub multiplicity_index: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformationMatrix {
    pub big_shape: YoungDiagram,
    pub rn_tableau: StandardTableau,
    pub rows: Vec<SplitRow>,
    pub cols: Vec<TensorSlotState>,
    pub matrix: CoeffMatrix,
    pub warnings: Vec<String>,
}

/// Subduction coefficients of one sector: fixed base tableau `t_n = r_n`
/// (the row-reading tableau of `rn`), rows the split states of every `r_m`,
/// columns the removal words of the sector's Delta-class.
///
/// Rows are ordered by `(r_m shape, pattern index, r_m tableau)`.
pub fn transformation_matrix(big: &YoungDiagram, m: usize, rn: &YoungDiagram) -> Result<TransformationMatrix> {
    if rn.size() + m != big.size() {
        return Err(Error::InvalidShape(format!("{rn} does not have |R| - m boxes")));
    }
    let w = removed_counts(big, rn)?;
    let p = big.num_rows();
    let cols = slot_states_with_counts(&w);
    let rn_tableau = StandardTableau::row_reading(rn);
    let mut rows = Vec::new();
    let mut shapes = YoungDiagram::partitions(m, p);
    shapes.sort();
    for rm in shapes {
        let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
        let pats: Vec<GtPattern> = enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).collect();
        for (idx, pat) in pats.iter().enumerate() {
            for t in enumerate_standard_tableaux(&rm) {
                rows.push(SplitRow { rm_tableau: t, pattern: pat.clone(), multiplicity_index: idx + 1 });
            }
        }
    }
    let matrix = CoeffMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        composite_cg(&rows[i].rm_tableau, &rows[i].pattern, &cols[j].slots)
    })?
    .with_labels(
        rows.iter().map(|r| format!("{} {} i={}", r.rm_tableau, r.pattern, r.multiplicity_index)).collect(),
        cols.iter().map(|c| c.to_string()).collect(),
    );
    Ok(TransformationMatrix {
        big_shape: big.clone(),
        rn_tableau,
        rows,
        cols,
        matrix,
        warnings: regime_warnings(big, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(v: &[usize]) -> YoungDiagram {
        YoungDiagram::new(v.to_vec()).unwrap()
    }

    fn s(x: &str) -> SurdSum {
        x.parse().unwrap()
    }

    #[test]
    fn split_label_classes() {
        let two = enumerate_split_labels(&y(&[9, 3]), 1).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|c| c.multiplicity == 1 && c.rm == y(&[1])));
        let four = enumerate_split_labels(&y(&[10, 7, 5, 3]), 4).unwrap();
        let c = four.iter().find(|c| c.rn == y(&[9, 6, 4, 2]) && c.rm == y(&[3, 1])).unwrap();
        assert_eq!(c.multiplicity, 3);
        let pair = enumerate_split_labels(&y(&[12, 4]), 2).unwrap();
        let mid: Vec<_> = pair.iter().filter(|c| c.rn == y(&[11, 3])).map(|c| (c.rm.clone(), c.multiplicity)).collect();
        assert_eq!(mid, vec![(y(&[2]), 1), (y(&[1, 1]), 1)]);
    }

    #[test]
    fn two_row_split_states() {
        let sym = CopyLabel::new(StandardTableau::from_rows(vec![vec![1, 2]]).unwrap(), GtPattern::new(vec![vec![2, 0], vec![1]]).unwrap()).unwrap();
        let anti = CopyLabel::new(StandardTableau::from_rows(vec![vec![1], vec![2]]).unwrap(), GtPattern::new(vec![vec![1, 1], vec![1]]).unwrap()).unwrap();
        let h = s("1/2*sqrt(2)");
        let e = split_state_expansion(&sym).unwrap();
        assert_eq!(e, vec![(TensorSlotState::new(vec![1, 2]), h.clone()), (TensorSlotState::new(vec![2, 1]), h.clone())]);
        let e = split_state_expansion(&anti).unwrap();
        assert_eq!(e, vec![(TensorSlotState::new(vec![1, 2]), -&h), (TensorSlotState::new(vec![2, 1]), h)]);
    }

    #[test]
    fn subduction_coefficients_two_rows() {
        let big = y(&[12, 4]);
        let base = StandardTableau::row_reading(&y(&[11, 3]));
        let anti = CopyLabel::new(StandardTableau::from_rows(vec![vec![1], vec![2]]).unwrap(), GtPattern::new(vec![vec![1, 1], vec![1]]).unwrap()).unwrap();
        let split = SplitLabel::new(big.clone(), base.clone(), anti).unwrap();
        let word = RemovalWord { base: base.clone(), rows: TensorSlotState::new(vec![2, 1]) };
        assert_eq!(word.to_tableau().unwrap().shape(), &big);
        assert_eq!(subduction_coefficient(&word, &split).unwrap(), s("1/2*sqrt(2)"));
        let other = RemovalWord { base: StandardTableau::row_reading(&y(&[10, 4])), rows: TensorSlotState::new(vec![1, 1]) };
        assert!(subduction_coefficient(&other, &split).unwrap().is_zero());
    }

    #[test]
    fn slot_permutations() {
        let t = TensorSlotState::new(vec![1, 2]);
        assert_eq!(slot_permutation_action(&Permutation::identity(2), &t).unwrap(), t);
        assert_eq!(slot_permutation_action(&Permutation::adjacent(2, 1).unwrap(), &t).unwrap(), TensorSlotState::new(vec![2, 1]));
        let x = TensorSlotState::new(vec![1, 2, 3]);
        let c = Permutation::from_cycles(3, "(1,2,3)").unwrap();
        let (s1, s2) = (Permutation::adjacent(3, 1).unwrap(), Permutation::adjacent(3, 2).unwrap());
        assert_eq!(c, s1.compose(&s2));
        let two_steps = slot_permutation_action(&s1, &slot_permutation_action(&s2, &x).unwrap()).unwrap();
        assert_eq!(slot_permutation_action(&s2.compose(&s1), &x).unwrap(), two_steps);
    }

    #[test]
    fn two_row_transformation_matrix() {
        let tm = transformation_matrix(&y(&[12, 4]), 2, &y(&[11, 3])).unwrap();
        assert_eq!(tm.cols, vec![TensorSlotState::new(vec![1, 2]), TensorSlotState::new(vec![2, 1])]);
        let h = s("1/2*sqrt(2)");
        assert_eq!(tm.matrix.row(0), &[-&h, h.clone()]);
        assert_eq!(tm.matrix.row(1), &[h.clone(), h]);
        assert!(tm.matrix.is_orthogonal().unwrap());
        let one = transformation_matrix(&y(&[12, 4]), 1, &y(&[11, 4])).unwrap();
        assert!(one.matrix.is_identity());
    }

    #[test]
    fn worked_example_sector_is_orthogonal() {
        let tm = transformation_matrix(&y(&[10, 7, 5, 3]), 4, &y(&[9, 6, 4, 2])).unwrap();
        assert_eq!(tm.cols.len(), 24);
        assert!(tm.matrix.is_orthogonal().unwrap());
        let block: Vec<_> = tm.rows.iter().filter(|r| r.rm_tableau.shape() == &y(&[3, 1])).collect();
        assert_eq!(block.len(), 9);
        assert!(!tm.warnings.is_empty());
    }

    #[test]
    fn empty_removal_is_identity() {
        let tm = transformation_matrix(&y(&[3, 1]), 0, &y(&[3, 1])).unwrap();
        assert!(tm.matrix.is_identity());
        assert_eq!(tm.matrix.nrows(), 1);
    }

    /// `<t| s |r>` for adjacent slot swaps on split states versus Young's
    /// orthogonal form on the r_m tableau.
    #[test]
    fn slot_swaps_act_by_young_orthogonal_form() {
        use crate::tableaux::yy_action_exact;
        for p in 1..=3usize {
            for m in 2..=4usize {
                for w in (0..p).map(|_| 0..=m as i64).multi_cartesian_product().filter(|w| w.iter().sum::<i64>() == m as i64) {
                    let mut labels = Vec::new();
                    for shape in YoungDiagram::partitions(m, p) {
                        let top: Vec<i64> = shape.padded(p).unwrap().into_iter().map(|x| x as i64).collect();
                        for pat in enumerate_gt_patterns(&top).unwrap().into_iter().filter(|g| g.row_weight() == w) {
                            for t in enumerate_standard_tableaux(&shape) {
                                labels.push(CopyLabel::new(t, pat.clone()).unwrap());
                            }
                        }
                    }
                    for k in 1..m {
                        let sigma = Permutation::adjacent(m, k).unwrap();
                        for l in &labels {
                            let v: BTreeMap<_, _> = split_state_expansion(l).unwrap().into_iter().collect();
                            let moved = slot_permutation_on_combination(&sigma, &v).unwrap();
                            let mut expect: BTreeMap<TensorSlotState, SurdSum> = BTreeMap::new();
                            for (t2, c) in yy_action_exact(&l.tableau, k).unwrap() {
                                let l2 = CopyLabel::new(t2, l.pattern.clone()).unwrap();
                                for (st, c2) in split_state_expansion(&l2).unwrap() {
                                    let e = expect.entry(st).or_insert_with(SurdSum::zero);
                                    *e = &*e + &(&c * &c2);
                                }
                            }
                            expect.retain(|_, c| !c.is_zero());
                            assert_eq!(moved, expect, "p={p} m={m} k={k} {l:?}");
                        }
                    }
                }
            }
        }
    }

    fn rational_matrix(p: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        prop::collection::vec(prop::collection::vec((-5i64..6, 1i64..4).prop_map(|(n, d)| Rational::new(n, d)), p), p)
    }

    proptest! {
        #[test]
        fn slot_permutations_commute_with_per_slot_maps(
            (p, d) in (1usize..=3).prop_flat_map(|p| (Just(p), rational_matrix(p))),
            m in 1usize..=4,
            seed in prop::collection::vec(1usize..=3, 4),
            k in 1usize..4,
        ) {
            let slots: Vec<usize> = seed.iter().take(m).map(|&x| 1 + (x - 1) % p).collect();
            let mut v = BTreeMap::new();
            v.insert(TensorSlotState::new(slots), Rational::ONE);
            let k = 1 + (k - 1) % (m.max(2) - 1);
            if m >= 2 {
                let sigma = Permutation::adjacent(m, k).unwrap();
                let perm = |x: &BTreeMap<TensorSlotState, Rational>| -> BTreeMap<TensorSlotState, Rational> {
                    x.iter().map(|(t, c)| (slot_permutation_action(&sigma, t).unwrap(), *c)).collect()
                };
                let lhs = perm(&per_slot_action(&d, &v).unwrap());
                let rhs = per_slot_action(&d, &perm(&v)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
