//! Matrices of S_{n+m} elements in the split basis.
//!
//! Permutations given to this module use the reversed labelling of the split:
//! `S_m` acts on `1..=m`, `S_n` on `m+1..=n+m`, and `(m, m+1)` is the
//! straddling two-cycle. Label `x` here is standard tableau label `N+1-x`, so
//! label `k <= m` is label `k` of the `r_m` tableau and label `m+k` is label
//! `n+1-k` of the `r_n` tableau.
//!
//! A [`Sector`] fixes `R`, `m`, and a core diagram `u` obtained from `R` by
//! removing `m + h` boxes. Its states are the split states whose `r_n`
//! tableau is a fixed filling of `u` followed by `h` window labels, so every
//! element of `S_{m+h}` acting on the first `m+h` labels closes on it.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cg::{fundamental_cg_patterns, fundamental_parents};
use crate::error::{Error, Result};
use crate::gt::{enumerate_gt_patterns, CopyLabel, GtPattern};
use crate::matrix::CoeffMatrix;
use crate::perm::Permutation;
use crate::splitbasis::{regime_warnings, removed_counts, SplitLabel};
use crate::surd::{Rational, SurdSum};
use crate::tableaux::{
    enumerate_standard_tableaux, yy_action_exact, yy_action_limit, yy_apply, LimitMode, StandardTableau, YoungDiagram,
};

/// Default cap on the number of states in a sector.
pub const DEFAULT_SECTOR_BUDGET: usize = 20_000;

/// How `S_n` generators inside the window act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Young's orthogonal form with the actual box contents of `r_n`.
    Exact,
    /// The infinite row-difference limit: boxes in different rows are exchanged.
    Limit,
}

/// `(t_n, t_m, j; r_n, r_m, i)` with the state tableaux `c, d; a, b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBlockIndex {
    pub big_shape: YoungDiagram,
    pub tn: StandardTableau,
    pub tm: CopyLabel,
    pub rn: StandardTableau,
    pub rm: CopyLabel,
}

impl SplitBlockIndex {
    pub fn new(big_shape: YoungDiagram, tn: StandardTableau, tm: CopyLabel, rn: StandardTableau, rm: CopyLabel) -> Result<Self> {
        SplitLabel::new(big_shape.clone(), tn.clone(), tm.clone())?;
        SplitLabel::new(big_shape.clone(), rn.clone(), rm.clone())?;
        Ok(SplitBlockIndex { big_shape, tn, tm, rn, rm })
    }

    pub fn n(&self) -> usize {
        self.rn.size()
    }

    pub fn m(&self) -> usize {
        self.rm.tableau.size()
    }
}

/// Split `sigma` (degree `n+m`) into its `S_m` part and its `S_n` part
/// written on standard `r_n` labels, or fail if it straddles.
fn split_permutation(sigma: &Permutation, n: usize, m: usize) -> Result<(Permutation, Permutation)> {
    let big = n + m;
    if sigma.degree() != big {
        return Err(Error::InvalidPermutation(format!("{sigma} is not a permutation of 1..={big}")));
    }
    if (1..=m).any(|x| sigma.apply(x) > m) {
        return Err(Error::Straddles(sigma.to_string()));
    }
    let sm = Permutation::from_images((1..=m).map(|x| sigma.apply(x)).collect())?;
    let sn = Permutation::from_images((1..=n).map(|y| big + 1 - sigma.apply(big + 1 - y)).collect())?;
    Ok((sm, sn))
}

/// `<t_n, t_m, j| sigma |r_n, r_m, i>` for `sigma` in `S_n x S_m`.
pub fn nonstraddling_matrix_element(idx: &SplitBlockIndex, sigma: &Permutation) -> Result<SurdSum> {
    let (sm, sn) = split_permutation(sigma, idx.n(), idx.m())?;
    if idx.tm.pattern != idx.rm.pattern {
        return Ok(SurdSum::zero());
    }
    let m_part = yy_apply(&idx.rm.tableau, &sm)?.remove(&idx.tm.tableau).unwrap_or_else(SurdSum::zero);
    if m_part.is_zero() {
        return Ok(m_part);
    }
    let n_part = yy_apply(&idx.rn, &sn)?.remove(&idx.tn).unwrap_or_else(SurdSum::zero);
    m_part.checked_mul(&n_part)
}

/// Straddling element given the rows (1-based) of the last `r_n` box on each
/// side: `sum_{M'} C^{M_t}_{M', rho} C^{M_r}_{M', tau}`, zero unless the
/// `r_m` tableaux agree after removing label `m`.
fn straddle_value(rho: usize, tau: usize, tm: &CopyLabel, rm: &CopyLabel) -> Result<SurdSum> {
    let m = rm.tableau.size();
    if m == 0 || tm.tableau.size() != m || tm.tableau.restrict(m - 1) != rm.tableau.restrict(m - 1) {
        return Ok(SurdSum::zero());
    }
    let reduced = rm.tableau.restrict(m - 1);
    let top: Vec<i64> = reduced.shape().padded(rm.p())?.into_iter().map(|x| x as i64).collect();
    let mut acc = SurdSum::zero();
    for mp in fundamental_parents(&tm.pattern, rho) {
        if mp.top() != top.as_slice() {
            continue;
        }
        let a = fundamental_cg_patterns(&mp, rho, &tm.pattern)?;
        if a.is_zero() {
            continue;
        }
        let b = fundamental_cg_patterns(&mp, tau, &rm.pattern)?;
        acc = acc.checked_add(&a.checked_mul(&b)?)?;
    }
    Ok(acc)
}

/// `<t_n, t_m, j| (m, m+1) |r_n, r_m, i>` in the limit of infinite row
/// differences.
pub fn straddling_element(idx: &SplitBlockIndex) -> Result<SurdSum> {
    let n = idx.n();
    if n == 0 || idx.m() == 0 {
        return Err(Error::InvalidQuery("straddling needs n >= 1 and m >= 1".into()));
    }
    if idx.tn.restrict(n - 1) != idx.rn.restrict(n - 1) {
        return Ok(SurdSum::zero());
    }
    straddle_value(idx.rn.row_of(n) + 1, idx.tn.row_of(n) + 1, &idx.tm, &idx.rm)
}

/// A basis state of a sector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorState {
    /// Rows (1-based) of the window labels `n-h+1, ..., n` of `r_n`.
    pub window: Vec<usize>,
    pub rn_tableau: StandardTableau,
    pub rm: CopyLabel,
    /// 1-based position of the pattern among those of its `(r_n, r_m)` class.
    pub multiplicity_index: usize,
}

impl SectorState {
    pub fn label(&self) -> String {
        format!(
            "rn={} window={:?} rm={} M={} i={}",
            self.rn_tableau.shape(),
            self.window,
            self.rm.tableau,
            self.rm.pattern,
            self.multiplicity_index
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sector {
    pub big_shape: YoungDiagram,
    pub m: usize,
    pub core: YoungDiagram,
    pub window: usize,
    pub states: Vec<SectorState>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    index: HashMap<(Vec<usize>, CopyLabel), usize>,
}

fn core_tableau(core: &YoungDiagram) -> StandardTableau {
    StandardTableau::row_reading(core)
}

impl Sector {
    pub fn new(big: &YoungDiagram, m: usize, core: &YoungDiagram) -> Result<Sector> {
        Sector::with_budget(big, m, core, DEFAULT_SECTOR_BUDGET)
    }

    pub fn with_budget(big: &YoungDiagram, m: usize, core: &YoungDiagram, budget: usize) -> Result<Sector> {
        if m == 0 {
            return Err(Error::InvalidQuery("a sector needs m >= 1".into()));
        }
        let removed = removed_counts(big, core)?;
        let total: i64 = removed.iter().sum();
        if total < m as i64 + 1 {
            return Err(Error::InvalidShape(format!("core {core} leaves fewer than m+1 = {} boxes of {big}", m + 1)));
        }
        let h = total as usize - m;
        let p = big.num_rows();
        let base = core_tableau(core);
        let mut states = Vec::new();
        for word in (0..h).map(|_| 1..=p).multi_cartesian_product() {
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
            if !ok || !big.contains(t.shape()) {
                continue;
            }
            let w = removed_counts(big, t.shape())?;
            for rm in YoungDiagram::partitions(m, p) {
                let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
                let pats: Vec<GtPattern> = enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).collect();
                if pats.is_empty() {
                    continue;
                }
                let tabs = enumerate_standard_tableaux(&rm);
                if states.len() + pats.len() * tabs.len() > budget {
                    return Err(Error::BudgetExceeded(format!("sector has more than {budget} states")));
                }
                for (i, pat) in pats.iter().enumerate() {
                    for tab in &tabs {
                        states.push(SectorState {
                            window: word.clone(),
                            rn_tableau: t.clone(),
                            rm: CopyLabel { tableau: tab.clone(), pattern: pat.clone() },
                            multiplicity_index: i + 1,
                        });
                    }
                }
            }
        }
        states.sort_by(|a, b| {
            (a.rn_tableau.shape(), &a.rn_tableau, a.rm.shape(), a.multiplicity_index, &a.rm.tableau).cmp(&(
                b.rn_tableau.shape(),
                &b.rn_tableau,
                b.rm.shape(),
                b.multiplicity_index,
                &b.rm.tableau,
            ))
        });
        let index = states.iter().enumerate().map(|(i, s)| ((s.window.clone(), s.rm.clone()), i)).collect();
        Ok(Sector { big_shape: big.clone(), m, core: core.clone(), window: h, states, warnings: regime_warnings(big, m), index })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn n(&self) -> usize {
        self.big_shape.size() - self.m
    }

    /// Index of the state with this window word and copy label.
    pub fn find(&self, window: &[usize], rm: &CopyLabel) -> Option<usize> {
        self.index.get(&(window.to_vec(), rm.clone())).copied()
    }

    pub fn labels(&self) -> Vec<String> {
        self.states.iter().map(SectorState::label).collect()
    }

    pub fn block_index(&self, t: usize, r: usize) -> SplitBlockIndex {
        let (a, b) = (&self.states[t], &self.states[r]);
        SplitBlockIndex {
            big_shape: self.big_shape.clone(),
            tn: a.rn_tableau.clone(),
            tm: a.rm.clone(),
            rn: b.rn_tableau.clone(),
            rm: b.rm.clone(),
        }
    }

    fn window_from_tableau(&self, t: &StandardTableau) -> Vec<usize> {
        let n = self.n();
        (n + 1 - self.window..=n).map(|l| t.row_of(l) + 1).collect()
    }

    /// Image of state `r` under the generator `(g, g+1)`, `1 <= g < m + h`.
    pub fn generator_action(&self, g: usize, r: usize, mode: Mode) -> Result<Vec<(usize, SurdSum)>> {
        let (m, h) = (self.m, self.window);
        let st = &self.states[r];
        let lookup = |window: &[usize], rm: &CopyLabel| {
            self.find(window, rm)
                .ok_or_else(|| Error::Regime(format!("image of {} leaves the sector (R too close to its core)", st.label())))
        };
        if g == 0 || g >= m + h {
            return Err(Error::InvalidQuery(format!("generator ({g},{}) outside the window 1..={}", g + 1, m + h)));
        }
        let mut out = Vec::new();
        if g < m {
            for (t2, c) in yy_action_exact(&st.rm.tableau, g)? {
                let rm = CopyLabel { tableau: t2, pattern: st.rm.pattern.clone() };
                out.push((lookup(&st.window, &rm)?, c));
            }
        } else if g == m {
            let prefix = &st.window[..h - 1];
            let reduced = st.rm.tableau.restrict(m - 1);
            for (t, other) in self.states.iter().enumerate() {
                if &other.window[..h - 1] != prefix || other.rm.tableau.restrict(m - 1) != reduced {
                    continue;
                }
                let v = straddle_value(st.window[h - 1], other.window[h - 1], &other.rm, &st.rm)?;
                if !v.is_zero() {
                    out.push((t, v));
                }
            }
        } else {
            let k = self.n() + m - g;
            let img = match mode {
                Mode::Exact => yy_action_exact(&st.rn_tableau, k)?,
                Mode::Limit => yy_action_limit(&st.rn_tableau, k, LimitMode::Row)?,
            };
            for (t2, c) in img {
                out.push((lookup(&self.window_from_tableau(&t2), &st.rm)?, c));
            }
        }
        Ok(out)
    }

    /// Matrix of `(g, g+1)`; column `r` is the image of state `r`.
    pub fn generator_matrix(&self, g: usize, mode: Mode) -> Result<CoeffMatrix> {
        let d = self.dim();
        let mut mat = CoeffMatrix::zeros(d, d);
        for r in 0..d {
            for (t, c) in self.generator_action(g, r, mode)? {
                mat.add_to(t, r, &c)?;
            }
        }
        let labels = self.labels();
        Ok(mat.with_labels(labels.clone(), labels))
    }
}

/// The straddling two-cycle on a complete sector.
pub fn straddling_block(sector: &Sector) -> Result<CoeffMatrix> {
    sector.generator_matrix(sector.m, Mode::Limit)
}

/// Matrix of `sigma` on a sector by multiplying generator matrices along a
/// reduced word. `sigma` may have any degree `>= m + h` but must fix every
/// label outside the window.
pub fn element_matrix(sector: &Sector, sigma: &Permutation, mode: Mode) -> Result<CoeffMatrix> {
    let w = sector.m + sector.window;
    if sigma.support().iter().any(|&x| x > w) {
        return Err(Error::Unsupported(format!("{sigma} moves labels beyond the window 1..={w}; use a larger window")));
    }
    let local = Permutation::from_images((1..=w).map(|x| sigma.apply(x)).collect())?;
    let mut cache: BTreeMap<usize, CoeffMatrix> = BTreeMap::new();
    let mut out = CoeffMatrix::identity(sector.dim());
    for g in local.to_adjacent_word() {
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(g) {
            e.insert(sector.generator_matrix(g, mode)?);
        }
        out = out.checked_mul(&cache[&g])?;
    }
    let labels = sector.labels();
    Ok(out.with_labels(labels.clone(), labels))
}

/// `alpha (m, m+1) beta` with `alpha` in `S_n` and `beta` in `S_m`, evaluated
/// as `sum Gamma_{t_n}(alpha)_{c e} Gamma_{r_m}(beta)_{h b} <e, d| (m, m+1) |a, h>`
/// element by element. `alpha` and `beta` are permutations of the window
/// labels `1..=m+h`; the `S_n` factor uses Young's orthogonal form on the
/// actual `r_n` tableaux.
pub fn closed_form_alpha_straddle_beta(sector: &Sector, alpha: &Permutation, beta: &Permutation) -> Result<CoeffMatrix> {
    let (m, w) = (sector.m, sector.m + sector.window);
    let n = sector.n();
    if alpha.degree() != w || beta.degree() != w {
        return Err(Error::InvalidPermutation(format!("alpha and beta must act on 1..={w}")));
    }
    if (1..=m).any(|x| alpha.apply(x) != x) {
        return Err(Error::InvalidPermutation(format!("alpha = {alpha} is not in S_n")));
    }
    if (m + 1..=w).any(|x| beta.apply(x) != x) {
        return Err(Error::InvalidPermutation(format!("beta = {beta} is not in S_m")));
    }
    let big = n + m;
    let alpha_full = alpha.embed(big, 0)?;
    let beta_full = beta.embed(big, 0)?;
    let d = sector.dim();
    let mut out = CoeffMatrix::zeros(d, d);
    for r in 0..d {
        // beta |r>
        let mut after_beta: Vec<(usize, SurdSum)> = Vec::new();
        for y in 0..d {
            let c = nonstraddling_matrix_element(&sector.block_index(y, r), &beta_full)?;
            if !c.is_zero() {
                after_beta.push((y, c));
            }
        }
        // (m, m+1) beta |r>
        let mut after_s: BTreeMap<usize, SurdSum> = BTreeMap::new();
        for (y, cy) in &after_beta {
            for x in 0..d {
                let s = straddling_element(&sector.block_index(x, *y))?;
                if s.is_zero() {
                    continue;
                }
                let e = after_s.entry(x).or_insert_with(SurdSum::zero);
                *e = e.checked_add(&s.checked_mul(cy)?)?;
            }
        }
        for (x, cx) in after_s {
            if cx.is_zero() {
                continue;
            }
            for t in 0..d {
                let a = nonstraddling_matrix_element(&sector.block_index(t, x), &alpha_full)?;
                if !a.is_zero() {
                    out.add_to(t, r, &a.checked_mul(&cx)?)?;
                }
            }
        }
    }
    let labels = sector.labels();
    Ok(out.with_labels(labels.clone(), labels))
}

fn dim_or_zero(y: Option<YoungDiagram>) -> Result<u128> {
    match y {
        Some(y) => y.dimension(),
        None => Ok(0),
    }
}

/// Trace of the straddling two-cycle over the `(r_n, r_m)` block, summed over
/// all copies: `sum_{rho, kappa} d_{r_n - rho} d_{r_m - kappa} sum_{M', i} C^2`.
pub fn restricted_trace_straddling(big: &YoungDiagram, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<SurdSum> {
    let w = removed_counts(big, rn)?;
    let p = big.num_rows();
    if rm.size() as i64 != w.iter().sum::<i64>() || rm.size() == 0 {
        return Err(Error::InvalidShape(format!("{rm} does not have |R| - |r_n| >= 1 boxes")));
    }
    let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
    let copies: Vec<GtPattern> = enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).collect();
    let mut total = SurdSum::zero();
    for rho in 0..p {
        let d_n = dim_or_zero(rn.remove_box(rho))?;
        if d_n == 0 {
            continue;
        }
        for kappa in rm.removable_rows() {
            let reduced = rm.remove_box(kappa).expect("removable");
            let d_m = reduced.dimension()?;
            let rtop: Vec<i64> = reduced.padded(p)?.into_iter().map(|x| x as i64).collect();
            let mut sq = SurdSum::zero();
            for mi in &copies {
                for mp in fundamental_parents(mi, rho + 1) {
                    if mp.top() != rtop.as_slice() {
                        continue;
                    }
                    let c = fundamental_cg_patterns(&mp, rho + 1, mi)?;
                    sq = sq.checked_add(&c.square()?)?;
                }
            }
            let weight = Rational::try_new(d_n as i128 * d_m as i128, 1)?;
            total = total.checked_add(&sq.checked_scale(&weight)?)?;
        }
    }
    Ok(total)
}

/// The same trace summed element by element over all tableaux and copies.
pub fn restricted_trace_by_tableaux(big: &YoungDiagram, rn: &YoungDiagram, rm: &YoungDiagram) -> Result<SurdSum> {
    let w = removed_counts(big, rn)?;
    let p = big.num_rows();
    let top: Vec<i64> = rm.padded(p)?.into_iter().map(|x| x as i64).collect();
    let copies: Vec<GtPattern> = enumerate_gt_patterns(&top)?.into_iter().filter(|g| g.row_weight() == w).collect();
    let mut total = SurdSum::zero();
    for a in enumerate_standard_tableaux(rn) {
        for b in enumerate_standard_tableaux(rm) {
            for mi in &copies {
                let label = CopyLabel { tableau: b.clone(), pattern: mi.clone() };
                let idx = SplitBlockIndex { big_shape: big.clone(), tn: a.clone(), tm: label.clone(), rn: a.clone(), rm: label };
                total = total.checked_add(&straddling_element(&idx)?)?;
            }
        }
    }
    Ok(total)
}

/// Two-row data: `r_n = [q1, q2]`, `n1 + n2 = m` boxes taken from rows 1 and 2,
/// `r_m = [r1, r2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowParams {
    pub q1: usize,
    pub q2: usize,
    pub n1: usize,
    pub n2: usize,
    pub r1: usize,
    pub r2: usize,
}

impl TwoRowParams {
    pub fn new(q1: usize, q2: usize, n1: usize, r1: usize, r2: usize) -> Result<TwoRowParams> {
        let m = r1 + r2;
        if n1 > m {
            return Err(Error::InvalidShape(format!("n1 = {n1} exceeds m = {m}")));
        }
        let p = TwoRowParams { q1, q2, n1, n2: m - n1, r1, r2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidShape(why));
        if self.q1 < self.q2 || self.q1 == 0 {
            return bad(format!("r_n = [{}, {}] is not a partition", self.q1, self.q2));
        }
        if self.r1 < self.r2 || self.r1 == 0 {
            return bad(format!("r_m = [{}, {}] is not a nonempty partition", self.r1, self.r2));
        }
        if self.n1 + self.n2 != self.r1 + self.r2 {
            return bad("n1 + n2 must equal r1 + r2".into());
        }
        if !(self.r1 >= self.n1 && self.n1 >= self.r2) {
            return bad(format!("betweenness r1 >= n1 >= r2 fails for r1={}, n1={}, r2={}", self.r1, self.n1, self.r2));
        }
        if self.q1 + self.n1 < self.q2 + self.n2 {
            return bad("R is not a partition".into());
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.r1 + self.r2
    }

    pub fn n(&self) -> usize {
        self.q1 + self.q2
    }

    pub fn d(&self) -> usize {
        self.q1 - self.q2
    }

    pub fn big(&self) -> YoungDiagram {
        YoungDiagram::new(vec![self.q1 + self.n1, self.q2 + self.n2]).expect("validated")
    }

    pub fn rn(&self) -> YoungDiagram {
        YoungDiagram::new(vec![self.q1, self.q2]).expect("validated")
    }

    pub fn rm(&self) -> YoungDiagram {
        YoungDiagram::new(vec![self.r1, self.r2]).expect("validated")
    }

    /// No column of `R / r_n` holds two boxes.
    pub fn skew_is_column_disjoint(&self) -> bool {
        self.n2 == 0 || self.q2 + self.n2 <= self.q1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowClosedForms {
    pub leading: Rational,
    /// Finite-d restricted character, with the `-n2` content term.
    pub exact: Rational,
    /// The same expression without the `-n2` term.
    pub exact_as_printed: Rational,
    pub bound: Option<Rational>,
    /// Pairs in rows minus pairs in columns of `r_m` (its content sum).
    pub lambda_m: i64,
}

pub fn two_row_closed_forms(params: &TwoRowParams) -> Result<TwoRowClosedForms> {
    params.validate()?;
    let TwoRowParams { q1, q2, n1, n2, r1, r2 } = *params;
    let (q1, q2, n1, n2, r1, r2) = (q1 as i64, q2 as i64, n1 as i64, n2 as i64, r1 as i64, r2 as i64);
    let (m, n) = (r1 + r2, q1 + q2);
    let d_rn = params.rn().dimension()? as i128;
    let d_rm = params.rm().dimension()? as i128;
    let pref = Rational::try_new(d_rn * d_rm, (m * n) as i128)?;
    let lambda_m = (r1 * (r1 - 1) + r2 * (r2 - 1)) / 2 - r2;
    let lead_sum = n1 * q1 + n2 * q2;
    let removed_contents = lead_sum + (n1 * (n1 - 1) + n2 * (n2 - 1)) / 2 - n2;
    let leading = pref.checked_mul(&Rational::from_int(lead_sum))?;
    let exact = pref.checked_mul(&Rational::from_int(removed_contents - lambda_m))?;
    let exact_as_printed = pref.checked_mul(&Rational::from_int(removed_contents + n2 - lambda_m))?;
    let denom = n1 * (q1 - q2) + m * q2;
    let bound = if denom == 0 { None } else { Some(Rational::try_new((m * m + m) as i128, (2 * denom) as i128)?) };
    Ok(TwoRowClosedForms { leading, exact, exact_as_printed, bound, lambda_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn y(v: &[usize]) -> YoungDiagram {
        YoungDiagram::new(v.to_vec()).unwrap()
    }

    fn s(x: &str) -> SurdSum {
        x.parse().unwrap()
    }

    fn worked_sector() -> Sector {
        Sector::new(&y(&[10, 7, 5, 3]), 4, &y(&[8, 6, 4, 2])).unwrap()
    }

    #[test]
    fn worked_example_block() {
        let sec = worked_sector();
        let blk = straddling_block(&sec).unwrap();
        // first box of r_n from row 1, r_m = [3,1] with label 4 in row 1
        let b = StandardTableau::from_rows(vec![vec![1, 2, 4], vec![3]]).unwrap();
        let idx: Vec<usize> = (0..sec.dim())
            .filter(|&k| sec.states[k].window == vec![1] && sec.states[k].rm.tableau == b)
            .collect();
        assert_eq!(idx.len(), 3);
        let sub = blk.submatrix(&idx, &idx);
        let expect = [
            ["1/3", "-1/24*sqrt(2)", "-1/24*sqrt(6)"],
            ["-1/24*sqrt(2)", "7/24", "-1/12*sqrt(3)"],
            ["-1/24*sqrt(6)", "-1/12*sqrt(3)", "1/8"],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(sub.get(i, j), &s(expect[i][j]), "entry {i},{j}");
            }
        }
        assert!(blk.is_symmetric());
        assert!(blk.checked_mul(&blk).unwrap().is_identity());
    }

    #[test]
    fn m1_two_row_block_swaps() {
        let sec = Sector::new(&y(&[12, 4]), 1, &y(&[11, 3])).unwrap();
        let blk = straddling_block(&sec).unwrap();
        let expect = CoeffMatrix::from_fn(2, 2, |i, j| Ok(SurdSum::from_int((i != j) as i64))).unwrap();
        assert_eq!(blk.to_strings(), expect.to_strings());
    }

    #[test]
    fn element_identity_and_generator() {
        let sec = Sector::new(&y(&[9, 5, 2]), 2, &y(&[8, 4, 1])).unwrap();
        let id = element_matrix(&sec, &Permutation::identity(3), Mode::Exact).unwrap();
        assert!(id.is_identity());
        let s = element_matrix(&sec, &Permutation::adjacent(3, 2).unwrap(), Mode::Exact).unwrap();
        assert_eq!(s, straddling_block(&sec).unwrap());
    }

    #[test]
    fn nonstraddling_examples() {
        let big = y(&[6, 2]);
        let rn = StandardTableau::from_rows(vec![vec![1, 2, 3, 4, 6], vec![5]]).unwrap();
        let anti = CopyLabel::new(StandardTableau::from_rows(vec![vec![1], vec![2]]).unwrap(), GtPattern::new(vec![vec![1, 1], vec![1]]).unwrap()).unwrap();
        let idx = SplitBlockIndex::new(big.clone(), rn.clone(), anti.clone(), rn.clone(), anti.clone()).unwrap();
        assert!(nonstraddling_matrix_element(&idx, &Permutation::identity(8)).unwrap().is_one());
        let s12 = Permutation::adjacent(8, 1).unwrap();
        assert_eq!(nonstraddling_matrix_element(&idx, &s12).unwrap(), SurdSum::from_int(-1));
        // (m+1, m+2) = (3, 4) is standard (5, 6) on r_n, axial distance 4 - (-1)
        let s34 = Permutation::adjacent(8, 3).unwrap();
        assert_eq!(nonstraddling_matrix_element(&idx, &s34).unwrap(), s("1/5"));
        let swapped = StandardTableau::from_rows(vec![vec![1, 2, 3, 4, 5], vec![6]]).unwrap();
        let idx2 = SplitBlockIndex::new(big, swapped, anti.clone(), rn, anti).unwrap();
        assert_eq!(nonstraddling_matrix_element(&idx2, &s34).unwrap(), s("2/5*sqrt(6)"));
        assert!(matches!(nonstraddling_matrix_element(&idx2, &Permutation::adjacent(8, 2).unwrap()), Err(Error::Straddles(_))));
    }

    #[test]
    fn sector_generators_satisfy_coxeter_relations_in_the_limit() {
        for (big, m, core) in [(vec![9, 5], 2, vec![7, 4]), (vec![9, 5, 2], 2, vec![8, 4, 1]), (vec![11, 6, 2], 3, vec![9, 5, 1])] {
            let sec = Sector::new(&y(&big), m, &y(&core)).unwrap();
            let w = sec.m + sec.window;
            let gens: Vec<CoeffMatrix> = (1..w).map(|g| sec.generator_matrix(g, Mode::Limit).unwrap()).collect();
            for (i, g) in gens.iter().enumerate() {
                assert!(g.checked_mul(g).unwrap().is_identity());
                assert!(g.is_symmetric());
                if i + 1 < gens.len() {
                    let h = &gens[i + 1];
                    assert_eq!(g.checked_mul(h).unwrap().checked_mul(g).unwrap(), h.checked_mul(g).unwrap().checked_mul(h).unwrap());
                }
                for h in gens.iter().skip(i + 2) {
                    assert_eq!(g.checked_mul(h).unwrap(), h.checked_mul(g).unwrap());
                }
            }
        }
    }

    #[test]
    fn word_product_matches_closed_form() {
        let sec = Sector::new(&y(&[12, 7, 3]), 3, &y(&[10, 6, 1])).unwrap();
        let w = sec.m + sec.window;
        assert_eq!(w, 5);
        let alphas = ["()", "(4,5)"];
        let betas = ["()", "(1,2)", "(1,3)", "(1,2,3)"];
        for a in alphas {
            for b in betas {
                let alpha = Permutation::from_cycles(w, a).unwrap();
                let beta = Permutation::from_cycles(w, b).unwrap();
                let sigma = alpha.compose(&Permutation::adjacent(w, 3).unwrap()).compose(&beta);
                let word = element_matrix(&sec, &sigma, Mode::Exact).unwrap();
                let closed = closed_form_alpha_straddle_beta(&sec, &alpha, &beta).unwrap();
                assert_eq!(word, closed, "alpha={a} beta={b}");
            }
        }
    }

    #[test]
    fn restricted_traces() {
        let big = y(&[10, 7, 5, 3]);
        let t = restricted_trace_straddling(&big, &y(&[9, 6, 4, 2]), &y(&[3, 1])).unwrap();
        assert!(t.as_rational().is_some());
        let small = y(&[5, 2]);
        for (rn, rm) in [(y(&[4, 1]), y(&[2])), (y(&[4, 1]), y(&[1, 1])), (y(&[3, 2]), y(&[2])), (y(&[5]), y(&[1, 1]))] {
            assert_eq!(
                restricted_trace_straddling(&small, &rn, &rm).unwrap(),
                restricted_trace_by_tableaux(&small, &rn, &rm).unwrap()
            );
        }
        // m = 1: the straddle fixes exactly the tableaux with n in the row R gains
        let t1 = restricted_trace_straddling(&y(&[6, 3]), &y(&[5, 3]), &y(&[1])).unwrap();
        assert_eq!(t1, SurdSum::from_int(y(&[4, 3]).dimension().unwrap() as i64));
    }

    #[test]
    fn limit_trace_is_leading_order_only() {
        // four-term sum d_{s_n'} d_{s_m'} C^2 + ... for r_n = [7,1], r_m = [2,1], n1 = 2
        let p = TwoRowParams::new(7, 1, 2, 2, 1).unwrap();
        let t = restricted_trace_straddling(&p.big(), &p.rn(), &p.rm()).unwrap();
        assert_eq!(t, s("26/3"));
        assert_eq!(two_row_closed_forms(&p).unwrap().leading, Rational::new(35, 4));
        // the gap closes as d grows
        let gap = |d: usize| {
            let p = TwoRowParams::new(1 + d, 1, 2, 2, 1).unwrap();
            let t = restricted_trace_straddling(&p.big(), &p.rn(), &p.rm()).map_err(|e| format!("{p:?}: {e}")).unwrap().as_rational().unwrap();
            let l = two_row_closed_forms(&p).unwrap().leading;
            ((t - l).abs() / l).to_f64()
        };
        assert!(gap(40) < gap(10) && gap(10) < gap(5));
    }

    #[test]
    fn two_row_closed_form_examples() {
        let sym = two_row_closed_forms(&TwoRowParams::new(12, 4, 3, 3, 0).unwrap()).unwrap();
        assert_eq!(sym.exact, sym.leading + Rational::new(0, 1) + (sym.exact - sym.leading));
        let all_first = two_row_closed_forms(&TwoRowParams::new(12, 4, 3, 3, 0).unwrap()).unwrap();
        assert_eq!(all_first.exact_as_printed, all_first.leading);
        let p = TwoRowParams::new(12, 4, 1, 2, 0).unwrap();
        let f = two_row_closed_forms(&p).unwrap();
        assert_eq!(f.bound, Some(Rational::new(3, 16)));
        assert!((f.exact - f.leading).abs() / f.leading <= f.bound.unwrap());
        assert!(TwoRowParams::new(12, 4, 3, 2, 1).is_err());
    }
}
