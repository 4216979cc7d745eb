//! Brute-force checks at finite row differences.
//!
//! Everything here uses standard tableau labels: `S_n` moves labels `1..=n`
//! and `S_m` moves `n+1..=n+m`, so the straddling two-cycle is `(n, n+1)`.
//! Isotypic projectors are built from class sums of exact representation
//! matrices, with characters read off the same machinery.

use std::collections::{BTreeMap, HashMap, VecDeque};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::corrections::fit_decay_exponent;
use crate::error::{Error, Result};
use crate::gt::enumerate_gt_patterns;
use crate::matrix::CoeffMatrix;
use crate::perm::Permutation;
use crate::rep::{two_row_closed_forms, Sector, TwoRowParams};
use crate::splitbasis::{removed_counts, transformation_matrix};
use crate::cg::composite_cg;
use crate::surd::{Rational, SurdSum};
use crate::tableaux::{
    enumerate_standard_tableaux, yy_action_exact, yy_action_limit, yy_matrix, LimitMode, StandardTableau, YoungDiagram,
};

/// Default cap on `N! * d^2` for a full representation.
pub const DEFAULT_ORACLE_BUDGET: u128 = 500_000_000;

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Exact Young orthogonal generators of one irrep.
#[derive(Clone, Debug)]
pub struct FullRep {
    pub shape: YoungDiagram,
    /// `gens[k-1]` is the matrix of `(k, k+1)`.
    pub gens: Vec<CoeffMatrix>,
}

pub fn build_full_rep(shape: &YoungDiagram) -> Result<FullRep> {
    build_full_rep_with_budget(shape, DEFAULT_ORACLE_BUDGET)
}

pub fn build_full_rep_with_budget(shape: &YoungDiagram, budget: u128) -> Result<FullRep> {
    let n = shape.size();
    let d = shape.dimension()?;
    let cost = factorial(n).saturating_mul(d.saturating_mul(d));
    if cost > budget {
        return Err(Error::BudgetExceeded(format!("{n}! * {d}^2 = {cost} exceeds {budget}")));
    }
    let gens = (1..n).map(|k| yy_matrix(shape, k, true)).collect::<Result<_>>()?;
    Ok(FullRep { shape: shape.clone(), gens })
}

impl FullRep {
    pub fn dim(&self) -> usize {
        self.gens.first().map(CoeffMatrix::nrows).unwrap_or(1)
    }

    pub fn degree(&self) -> usize {
        self.shape.size()
    }

    pub fn element(&self, sigma: &Permutation) -> Result<CoeffMatrix> {
        if sigma.degree() != self.degree() {
            return Err(Error::DimensionMismatch(format!("{sigma} does not act on 1..={}", self.degree())));
        }
        let mut out = CoeffMatrix::identity(self.dim());
        for k in sigma.to_adjacent_word() {
            out = right_mul_generator(&out, &self.gens[k - 1])?;
        }
        Ok(out)
    }
}

/// `a * g` where `g` has at most two nonzero entries per column.
fn right_mul_generator(a: &CoeffMatrix, g: &CoeffMatrix) -> Result<CoeffMatrix> {
    let n = g.ncols();
    let cols: Vec<Vec<(usize, SurdSum)>> = (0..n)
        .map(|j| (0..g.nrows()).filter(|&i| !g.get(i, j).is_zero()).map(|i| (i, g.get(i, j).clone())).collect())
        .collect();
    let mut out = CoeffMatrix::zeros(a.nrows(), n);
    for r in 0..a.nrows() {
        for (j, col) in cols.iter().enumerate() {
            let mut acc = SurdSum::zero();
            for (i, c) in col {
                let x = a.get(r, *i);
                if !x.is_zero() {
                    acc = acc.checked_add(&x.checked_mul(c)?)?;
                }
            }
            out.set(r, j, acc);
        }
    }
    Ok(out)
}

/// Permutation of `1..=sum(mu)` with consecutive cycles of lengths `mu`.
pub fn cycle_type_representative(mu: &[usize]) -> Result<Permutation> {
    let n: usize = mu.iter().sum();
    let mut images: Vec<usize> = (1..=n).collect();
    let mut start = 0;
    for &len in mu {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len + 1;
        }
        start += len;
    }
    Permutation::from_images(images)
}

/// Character of the irrep `shape` on the class `mu`.
pub fn character(shape: &YoungDiagram, mu: &[usize]) -> Result<i64> {
    if mu.iter().sum::<usize>() != shape.size() {
        return Err(Error::DimensionMismatch(format!("class {mu:?} is not a class of S_{}", shape.size())));
    }
    if shape.size() <= 1 {
        return Ok(1);
    }
    let rep = build_full_rep(shape)?;
    let tr = rep.element(&cycle_type_representative(mu)?)?.trace()?;
    tr.as_rational()
        .filter(Rational::is_integer)
        .map(|r| r.num())
        .ok_or_else(|| Error::Inconsistent(format!("character of {shape} on {mu:?} is {tr}")))
}

fn sorted_cycle_type(p: &Permutation) -> Vec<usize> {
    let mut c = p.cycle_type();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}

/// Class sums `sum_{sigma in class} Gamma(sigma)` of the subgroup generated by
/// consecutive generators `gens` (the subgroup `S_{len+1}`).
pub fn class_sums(dim: usize, gens: &[&CoeffMatrix]) -> Result<BTreeMap<Vec<usize>, CoeffMatrix>> {
    let k = gens.len() + 1;
    let id = Permutation::identity(k);
    let mut sums: BTreeMap<Vec<usize>, CoeffMatrix> = BTreeMap::new();
    sums.insert(sorted_cycle_type(&id), CoeffMatrix::identity(dim));
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([(id, CoeffMatrix::identity(dim))]);
    while let Some((sigma, mat)) = queue.pop_front() {
        for (j, g) in gens.iter().enumerate() {
            let next = sigma.compose(&Permutation::adjacent(k, j + 1)?);
            if seen.contains(&next) {
                continue;
            }
            let m2 = right_mul_generator(&mat, g)?;
            let key = sorted_cycle_type(&next);
            match sums.get_mut(&key) {
                Some(s) => *s = s.checked_add(&m2)?,
                None => {
                    sums.insert(key, m2.clone());
                }
            }
            seen.insert(next.clone());
            queue.push_back((next, m2));
        }
    }
    Ok(sums)
}

/// `(d_r / k!) sum_mu chi_r(mu) C_mu`.
fn isotypic_projector(dim: usize, sums: &BTreeMap<Vec<usize>, CoeffMatrix>, r: &YoungDiagram, chars: &mut HashMap<(YoungDiagram, Vec<usize>), i64>) -> Result<CoeffMatrix> {
    let k = r.size();
    let mut p = CoeffMatrix::zeros(dim, dim);
    for (mu, c) in sums {
        let chi = match chars.get(&(r.clone(), mu.clone())) {
            Some(&x) => x,
            None => {
                let x = character(r, mu)?;
                chars.insert((r.clone(), mu.clone()), x);
                x
            }
        };
        if chi != 0 {
            p = p.checked_add(&c.scale(&Rational::from_int(chi))?)?;
        }
    }
    p.scale(&Rational::try_new(r.dimension()? as i128, factorial(k) as i128)?)
}

/// Class sums of `S_n` and `S_m` inside one irrep of `S_{n+m}`.
pub struct SplitOracle {
    pub rep: FullRep,
    pub n: usize,
    pub m: usize,
    sums_n: BTreeMap<Vec<usize>, CoeffMatrix>,
    sums_m: BTreeMap<Vec<usize>, CoeffMatrix>,
    chars: HashMap<(YoungDiagram, Vec<usize>), i64>,
}

impl SplitOracle {
    pub fn new(big: &YoungDiagram, m: usize) -> Result<SplitOracle> {
        let big_n = big.size();
        if m == 0 || m >= big_n {
            return Err(Error::InvalidQuery(format!("need 1 <= m < {big_n}")));
        }
        let rep = build_full_rep(big)?;
        let n = big_n - m;
        let d = rep.dim();
        let gn: Vec<&CoeffMatrix> = rep.gens[..n - 1].iter().collect();
        let gm: Vec<&CoeffMatrix> = rep.gens[n..].iter().collect();
        let sums_n = class_sums(d, &gn)?;
        let sums_m = class_sums(d, &gm)?;
        Ok(SplitOracle { rep, n, m, sums_n, sums_m, chars: HashMap::new() })
    }

    pub fn projector_n(&mut self, rn: &YoungDiagram) -> Result<CoeffMatrix> {
        isotypic_projector(self.rep.dim(), &self.sums_n, rn, &mut self.chars)
    }

    pub fn projector_m(&mut self, rm: &YoungDiagram) -> Result<CoeffMatrix> {
        isotypic_projector(self.rep.dim(), &self.sums_m, rm, &mut self.chars)
    }

    /// Projector onto the `(r_n, r_m)` isotypic subspace.
    pub fn split_projector(&mut self, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<CoeffMatrix> {
        self.projector_n(rn)?.checked_mul(&self.projector_m(rm)?)
    }

    /// Rank of the `(r_n, r_m)` isotypic subspace.
    pub fn rank(&mut self, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<u64> {
        let pn = self.projector_n(rn)?;
        let pm = self.projector_m(rm)?;
        let tr = trace_of_product(&pn, &pm)?;
        tr.as_rational()
            .filter(|r| r.is_integer() && r.num() >= 0)
            .map(|r| r.num() as u64)
            .ok_or_else(|| Error::Inconsistent(format!("rank {tr} is not a non-negative integer")))
    }

    pub fn multiplicity(&mut self, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<u64> {
        let rank = self.rank(rn, rm)?;
        let dd = (rn.dimension()? * rm.dimension()?) as u64;
        if rank % dd != 0 {
            return Err(Error::Inconsistent(format!("rank {rank} not divisible by {dd}")));
        }
        Ok(rank / dd)
    }

    /// Trace of `(n, n+1)` over the `(r_n, r_m)` isotypic subspace.
    pub fn restricted_trace(&mut self, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<SurdSum> {
        let p = self.split_projector(rn, rm)?;
        trace_of_product(&p, &self.rep.gens[self.n - 1])
    }
}

fn trace_of_product(a: &CoeffMatrix, b: &CoeffMatrix) -> Result<SurdSum> {
    let mut acc = SurdSum::zero();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let (x, y) = (a.get(i, j), b.get(j, i));
            if !x.is_zero() && !y.is_zero() {
                acc = acc.checked_add(&x.checked_mul(y)?)?;
            }
        }
    }
    Ok(acc)
}

/// Inner-multiplicity prediction: patterns of top row `r_m` with the row
/// weight of `R / r_n`.
pub fn predicted_multiplicity(big: &YoungDiagram, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<u64> {
    let w = removed_counts(big, rn)?;
    let p = big.num_rows();
    if rm.num_rows() > p {
        return Ok(0);
    }
    let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
    Ok(enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).count() as u64)
}

/// No column of `R / r_n` holds two boxes.
pub fn skew_is_column_disjoint(big: &YoungDiagram, rn: &YoungDiagram) -> bool {
    (1..big.num_rows()).all(|i| big.row(i) <= rn.row(i - 1))
}

/// Young-Yamanouchi states of `R` whose labels `1..=|core|` fill `core` in a
/// fixed way; the remaining `len` labels form the window word.
#[derive(Clone, Debug)]
pub struct WindowRep {
    pub big_shape: YoungDiagram,
    pub core: YoungDiagram,
    pub words: Vec<Vec<usize>>,
    /// `gens[j-1]` swaps window positions `j-1` and `j`.
    pub gens: Vec<CoeffMatrix>,
}

impl WindowRep {
    /// `exact = false` uses the infinite row-difference action.
    pub fn new(big: &YoungDiagram, core: &YoungDiagram, exact: bool) -> Result<WindowRep> {
        let w = removed_counts(big, core)?;
        let len: usize = w.iter().sum::<i64>() as usize;
        let base = StandardTableau::row_reading(core);
        let c = core.size();
        let mut words = Vec::new();
        let mut tabs = Vec::new();
        for word in itertools::Itertools::multi_cartesian_product((0..len).map(|_| 1..=big.num_rows())) {
            let mut t = base.clone();
            let mut ok = true;
            for &r in &word {
                match t.push(r - 1) {
                    Ok(t2) => t = t2,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && t.shape() == big {
                words.push(word);
                tabs.push(t);
            }
        }
        let pos: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let d = words.len();
        let mut gens = Vec::new();
        for j in 1..len {
            let mut g = CoeffMatrix::zeros(d, d);
            for (col, t) in tabs.iter().enumerate() {
                let img = if exact { yy_action_exact(t, c + j)? } else { yy_action_limit(t, c + j, LimitMode::Row)? };
                for (t2, v) in img {
                    let word: Vec<usize> = (c + 1..=c + len).map(|l| t2.row_of(l) + 1).collect();
                    g.set(pos[&word], col, v);
                }
            }
            gens.push(g);
        }
        Ok(WindowRep { big_shape: big.clone(), core: core.clone(), words, gens })
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn len(&self) -> usize {
        self.gens.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Isotypic projector for the last `r_m.size()` window labels.
    pub fn tail_projector(&self, rm: &YoungDiagram) -> Result<CoeffMatrix> {
        let m = rm.size();
        let gens: Vec<&CoeffMatrix> = self.gens[self.len() - m..].iter().collect();
        let sums = class_sums(self.dim(), &gens)?;
        isotypic_projector(self.dim(), &sums, rm, &mut HashMap::new())
    }

    /// Matrix taking window words to the states of `sector`:
    /// `U[state][word] = <state | word>`.
    pub fn to_sector(&self, sector: &Sector) -> Result<CoeffMatrix> {
        let h = sector.window;
        CoeffMatrix::from_fn(sector.dim(), self.dim(), |s, w| {
            let st = &sector.states[s];
            let word = &self.words[w];
            if word[..h] != st.window[..] {
                return Ok(SurdSum::zero());
            }
            composite_cg(&st.rm.tableau, &st.rm.pattern, &word[h..])
        })
    }
}

/// Exact trace of `(n, n+1)` on the `(r_n, r_m)` isotypic subspace of `R`,
/// computed one `(n-1)`-core at a time.
pub fn exact_restricted_trace(big: &YoungDiagram, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<SurdSum> {
    let mut total = SurdSum::zero();
    for rho in rn.removable_rows() {
        let core = rn.remove_box(rho).expect("removable");
        let win = WindowRep::new(big, &core, true)?;
        let pm = win.tail_projector(rm)?;
        // keep words whose first letter completes r_n
        let keep: Vec<usize> = (0..win.dim()).filter(|&w| win.words[w][0] == rho + 1).collect();
        let s = &win.gens[0];
        let mut tr = SurdSum::zero();
        for &i in &keep {
            for &j in &keep {
                let (x, y) = (pm.get(i, j), s.get(j, i));
                if !x.is_zero() && !y.is_zero() {
                    tr = tr.checked_add(&x.checked_mul(y)?)?;
                }
            }
        }
        total = total.checked_add(&tr.checked_scale(&Rational::from_int(core.dimension()? as i64))?)?;
    }
    Ok(total)
}

/// Largest principal angle (as its sine) between the exact `r_m` isotypic
/// subspace of one fixed-`r_n`-tableau block and the span of the limit split
/// states with the same labels.
pub fn principal_angle_sine(big: &YoungDiagram, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<f64> {
    let m = rm.size();
    let win = WindowRep::new(big, rn, true)?;
    let p = win.tail_projector(rm)?.to_f64();
    let tm = transformation_matrix(big, m, rn)?;
    let pos: HashMap<&[usize], usize> = win.words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let rows: Vec<usize> = (0..tm.rows.len()).filter(|&i| tm.rows[i].rm_tableau.shape() == rm).collect();
    let d = win.dim();
    let mut q = DMatrix::<f64>::zeros(d, rows.len());
    for (c, &r) in rows.iter().enumerate() {
        for (j, t) in tm.cols.iter().enumerate() {
            let w = *pos.get(t.slots.as_slice()).ok_or_else(|| Error::Inconsistent(format!("tensor state {t} is not a window word")))?;
            q[(w, c)] = tm.matrix.get(r, j).to_f64();
        }
    }
    let pm = DMatrix::from_fn(d, d, |i, j| p[i][j]);
    let rank = pm.trace().round() as usize;
    if rank != rows.len() {
        return Err(Error::Inconsistent(format!("exact subspace has rank {rank}, limit span has {}", rows.len())));
    }
    if rows.is_empty() {
        return Ok(0.0);
    }
    let resid = (DMatrix::<f64>::identity(d, d) - pm) * q;
    let sv = resid.singular_values();
    Ok(sv.iter().cloned().fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    Trace,
    Block,
}

/// Two-row family `r_n = [q2 + d, q2]`, `n1` boxes removed from row 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowFamily {
    pub q2: usize,
    pub n1: usize,
    pub r1: usize,
    pub r2: usize,
}

impl TwoRowFamily {
    pub fn params(&self, d: usize) -> Result<TwoRowParams> {
        TwoRowParams::new(self.q2 + d, self.q2, self.n1, self.r1, self.r2)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub d: usize,
    pub exact: f64,
    pub leading: f64,
    pub deviation: f64,
    pub relative: Option<f64>,
    pub bound: Option<f64>,
    pub within_bound: Option<bool>,
    /// Exact oracle value equals the two-row closed form.
    pub closed_form_agrees: Option<bool>,
    pub regime_violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub quantity: Quantity,
    pub family: TwoRowFamily,
    pub rows: Vec<ConvergenceRow>,
    pub exponent: Option<f64>,
}

pub fn convergence_report(quantity: Quantity, family: TwoRowFamily, ds: &[usize]) -> Result<ConvergenceReport> {
    let mut rows = Vec::new();
    for &d in ds {
        let p = family.params(d)?;
        let (big, rn, rm) = (p.big(), p.rn(), p.rm());
        let regime_violation = d <= 1;
        let row = match quantity {
            Quantity::Trace => {
                let cf = two_row_closed_forms(&p)?;
                let exact = exact_restricted_trace(&big, &rn, &rm)?;
                let agrees = exact.as_rational().map(|r| r == cf.exact);
                let (e, l) = (exact.to_f64(), cf.leading.to_f64());
                let dev = (e - l).abs();
                let relative = (l != 0.0).then(|| dev / l.abs());
                let bound = cf.bound.map(|b| b.to_f64());
                let within = match (exact.as_rational(), cf.bound) {
                    (Some(ex), Some(b)) if !cf.leading.is_zero() => {
                        Some((ex - cf.leading).abs() <= b * cf.leading.abs())
                    }
                    _ => None,
                };
                ConvergenceRow { d, exact: e, leading: l, deviation: dev, relative, bound, within_bound: within, closed_form_agrees: agrees, regime_violation }
            }
            Quantity::Block => {
                let s = principal_angle_sine(&big, &rn, &rm)?;
                ConvergenceRow { d, exact: s, leading: 0.0, deviation: s, relative: None, bound: None, within_bound: None, closed_form_agrees: None, regime_violation }
            }
        };
        rows.push(row);
    }
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| !r.regime_violation).map(|r| (r.d as f64, r.deviation)).collect();
    let exponent = fit_decay_exponent(&pts).ok();
    Ok(ConvergenceReport { quantity, family, rows, exponent })
}

/// Standard tableaux of `shape` as the basis order used by [`FullRep`].
pub fn full_rep_basis(shape: &YoungDiagram) -> Vec<StandardTableau> {
    enumerate_standard_tableaux(shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Mode;

    fn y(v: &[usize]) -> YoungDiagram {
        YoungDiagram::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_reps() {
        assert_eq!(build_full_rep(&y(&[2])).unwrap().gens[0].get(0, 0), &SurdSum::one());
        assert_eq!(build_full_rep(&y(&[1, 1])).unwrap().gens[0].get(0, 0), &SurdSum::from_int(-1));
        let r = build_full_rep(&y(&[2, 1])).unwrap();
        let (a, b) = (&r.gens[0], &r.gens[1]);
        assert_eq!(a.checked_mul(b).unwrap().checked_mul(a).unwrap(), b.checked_mul(a).unwrap().checked_mul(b).unwrap());
        assert!(matches!(build_full_rep_with_budget(&y(&[4, 3]), 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn characters_of_s4() {
        let s = y(&[3, 1]);
        assert_eq!(character(&s, &[1, 1, 1, 1]).unwrap(), 3);
        assert_eq!(character(&s, &[2, 1, 1]).unwrap(), 1);
        assert_eq!(character(&s, &[2, 2]).unwrap(), -1);
        assert_eq!(character(&s, &[3, 1]).unwrap(), 0);
        assert_eq!(character(&s, &[4]).unwrap(), -1);
    }

    #[test]
    fn projectors_are_idempotent_and_ranks_sum() {
        let big = y(&[3, 1]);
        let mut o = SplitOracle::new(&big, 2).unwrap();
        let mut total = 0;
        for rn in [y(&[2]), y(&[1, 1])] {
            for rm in [y(&[2]), y(&[1, 1])] {
                let p = o.split_projector(&rn, &rm).unwrap();
                assert_eq!(p.checked_mul(&p).unwrap(), p);
                assert!(p.is_symmetric());
                let mult = o.multiplicity(&rn, &rm).unwrap();
                total += o.rank(&rn, &rm).unwrap();
                if big.contains(&rn) {
                    assert_eq!(mult, predicted_multiplicity(&big, &rn, &rm).unwrap());
                }
            }
        }
        assert_eq!(total as u128, big.dimension().unwrap());
        let mut o = SplitOracle::new(&y(&[2, 1]), 2).unwrap();
        let r: u64 = [y(&[2]), y(&[1, 1])].iter().map(|rm| o.rank(&y(&[1]), rm).unwrap()).sum();
        assert_eq!(r, 2);
    }

    #[test]
    fn inner_multiplicity_fails_when_removed_boxes_share_a_column() {
        // [2,2] with r_n = [1,1]: the two removed boxes are stacked
        let big = y(&[2, 2]);
        let mut o = SplitOracle::new(&big, 2).unwrap();
        assert!(!skew_is_column_disjoint(&big, &y(&[1, 1])));
        assert_eq!(o.multiplicity(&y(&[1, 1]), &y(&[2])).unwrap(), 0);
        assert_eq!(predicted_multiplicity(&big, &y(&[1, 1]), &y(&[2])).unwrap(), 1);
    }

    #[test]
    fn limit_window_matches_split_sector() {
        for (big, m, core) in [(vec![7, 3], 2, vec![5, 2]), (vec![8, 4, 1], 2, vec![7, 2]), (vec![9, 5, 2], 3, vec![8, 3, 1])] {
            let (big, core) = (y(&big), y(&core));
            let sec = Sector::new(&big, m, &core).unwrap();
            let win = WindowRep::new(&big, &core, false).unwrap();
            let u = win.to_sector(&sec).unwrap();
            assert!(u.is_orthogonal().unwrap());
            for g in 1..win.len() {
                // label g counts down from the end of the window
                let via_yy = u.checked_mul(&win.gens[win.len() - g - 1]).unwrap().checked_mul(&u.transpose()).unwrap();
                let direct = sec.generator_matrix(g, Mode::Limit).unwrap();
                assert_eq!(via_yy.to_strings(), direct.to_strings(), "generator {g}");
            }
        }
    }

    #[test]
    fn window_trace_matches_full_characters() {
        for (big, rn, rm) in [
            (vec![4, 2], vec![3, 1], vec![2]),
            (vec![4, 2], vec![3, 1], vec![1, 1]),
            (vec![5, 2], vec![4, 1], vec![1, 1]),
            (vec![3, 2, 1], vec![2, 1, 1], vec![1, 1]),
            (vec![4, 2, 1], vec![3, 1], vec![2, 1]),
        ] {
            let (big, rn, rm) = (y(&big), y(&rn), y(&rm));
            let mut o = SplitOracle::new(&big, rm.size()).unwrap();
            assert_eq!(exact_restricted_trace(&big, &rn, &rm).unwrap(), o.restricted_trace(&rn, &rm).unwrap(), "{big} {rn} {rm}");
        }
    }

    #[test]
    fn exact_trace_matches_corrected_closed_form() {
        for (q1, q2, n1, r1, r2) in [(6, 2, 1, 2, 0), (6, 2, 1, 1, 1), (7, 1, 2, 2, 1), (8, 2, 1, 2, 1), (5, 0, 2, 2, 0)] {
            let p = TwoRowParams::new(q1, q2, n1, r1, r2).unwrap();
            let cf = two_row_closed_forms(&p).unwrap();
            let ex = exact_restricted_trace(&p.big(), &p.rn(), &p.rm()).unwrap();
            assert_eq!(ex.as_rational(), Some(cf.exact), "{p:?}");
        }
    }

    #[test]
    fn block_angles_shrink_like_one_over_d() {
        let fam = TwoRowFamily { q2: 2, n1: 1, r1: 1, r2: 1 };
        let rep = convergence_report(Quantity::Block, fam, &[8, 16, 32, 64]).unwrap();
        let e = rep.exponent.unwrap();
        assert!((0.8..1.3).contains(&e), "{rep:?}");
    }
}
