//! First-order corrections in the inverse row-length difference.
//!
//! Away from the limit the Young orthogonal generator on a removal word has
//! diagonal entry `1/rho` and off-diagonal entry `1 - O(1/rho^2)`, so to first
//! order `S = S_inf + dS` with `dS` diagonal on tensor slot states. Writing
//! `|r> = |r>_inf + |dr>` with `<t|dr> = X[t][r]`, orthogonality makes `X`
//! antisymmetric and the generator equations become `A_k X - X A_k = -B_k`.
//! The system is solved over the rationals in the tensor basis, where `A_k`
//! is a permutation matrix, and then carried to the split basis.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::CoeffMatrix;
use crate::perm::Permutation;
use crate::splitbasis::{
    removed_counts, slot_permutation_action, transformation_matrix, SplitRow, TensorSlotState,
};
use crate::surd::{surd_sqrt, Rational, SurdSum};
use crate::tableaux::YoungDiagram;

/// `1/d_{upper,lower}`: inverse distance between rows `upper < lower` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub upper: usize,
    pub lower: usize,
}

impl Symbol {
    pub fn new(a: usize, b: usize) -> Result<Symbol> {
        if a == 0 || a >= b {
            return Err(Error::InvalidQuery(format!("symbol rows must satisfy 1 <= {a} < {b}")));
        }
        Ok(Symbol { upper: a, lower: b })
    }

    /// Axial distance between the last boxes of the two rows of `big`.
    pub fn axial_distance(&self, big: &YoungDiagram) -> i64 {
        let (a, b) = (self.upper, self.lower);
        (big.row(a - 1) as i64 - a as i64) - (big.row(b - 1) as i64 - b as i64)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/d_{},{}", self.upper, self.lower)
    }
}

/// A linear combination of symbols with surd coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formal(pub BTreeMap<Symbol, SurdSum>);

impl Formal {
    pub fn is_zero(&self) -> bool {
        self.0.values().all(SurdSum::is_zero)
    }

    pub fn add_term(&mut self, s: Symbol, c: &SurdSum) -> Result<()> {
        let e = self.0.entry(s).or_insert_with(SurdSum::zero);
        *e = e.checked_add(c)?;
        if e.is_zero() {
            self.0.remove(&s);
        }
        Ok(())
    }

    /// Numeric value with `1/d_{a,b}` replaced by `values[symbol]`.
    pub fn evaluate(&self, values: &BTreeMap<Symbol, f64>) -> Result<f64> {
        self.0
            .iter()
            .map(|(s, c)| {
                values
                    .get(s)
                    .map(|v| v * c.to_f64())
                    .ok_or_else(|| Error::InvalidQuery(format!("no value given for {s}")))
            })
            .sum()
    }
}

impl fmt::Display for Formal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, c)| format!("({c})*{s}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `dS` for generator `(k, k+1)` on one tensor state: the state itself times
/// `+-1/d`, or nothing when both labels sit in the same row.
pub fn delta_s_on_state(t: &TensorSlotState, k: usize) -> Result<Option<(Symbol, i64)>> {
    let m = t.m();
    if k == 0 || k >= m {
        return Err(Error::InvalidQuery(format!("generator ({k},{}) outside S_{m}", k + 1)));
    }
    let (x, y) = (t.a(k), t.a(k + 1));
    Ok(match x.cmp(&y) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((Symbol::new(x, y)?, 1)),
        std::cmp::Ordering::Greater => Some((Symbol::new(y, x)?, -1)),
    })
}

/// `dS_k` applied to a combination of tensor states.
pub fn delta_s_action(expansion: &[(TensorSlotState, SurdSum)], k: usize) -> Result<BTreeMap<TensorSlotState, Formal>> {
    let mut out: BTreeMap<TensorSlotState, Formal> = BTreeMap::new();
    for (t, c) in expansion {
        if let Some((s, sign)) = delta_s_on_state(t, k)? {
            let v = if sign > 0 { c.clone() } else { c.checked_neg()? };
            out.entry(t.clone()).or_default().add_term(s, &v)?;
        }
    }
    out.retain(|_, f| !f.is_zero());
    Ok(out)
}

/// `S = S_inf + dS` for one generator on a space of tensor states.
#[derive(Clone, Debug)]
pub struct PerturbedAction {
    pub k: usize,
    pub states: Vec<TensorSlotState>,
    /// Slot swap; column `j` is the image of state `j`.
    pub base: CoeffMatrix,
    /// Diagonal `dS` per symbol.
    pub correction: BTreeMap<Symbol, CoeffMatrix>,
}

pub fn perturbed_action(states: &[TensorSlotState], k: usize) -> Result<PerturbedAction> {
    let n = states.len();
    let m = states.first().map(TensorSlotState::m).unwrap_or(0);
    let pos: BTreeMap<&TensorSlotState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let swap = Permutation::adjacent(m, k)?;
    let mut base = CoeffMatrix::zeros(n, n);
    let mut correction: BTreeMap<Symbol, CoeffMatrix> = BTreeMap::new();
    for (j, t) in states.iter().enumerate() {
        let img = slot_permutation_action(&swap, t)?;
        let i = *pos.get(&img).ok_or_else(|| Error::InvalidQuery("state list is not closed under slot swaps".into()))?;
        base.set(i, j, SurdSum::one());
        if let Some((s, sign)) = delta_s_on_state(t, k)? {
            correction.entry(s).or_insert_with(|| CoeffMatrix::zeros(n, n)).set(j, j, SurdSum::from_int(sign));
        }
    }
    Ok(PerturbedAction { k, states: states.to_vec(), base, correction })
}

/// Solution set of a rational linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    /// The solution orthogonal to the nullspace.
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    a.iter().zip(b).try_fold(Rational::ZERO, |acc, (x, y)| acc.checked_add(&x.checked_mul(y)?))
}

/// Gauss-Jordan elimination on `rows * x = rhs`. Fails with
/// [`Error::Inconsistent`] if no solution exists.
pub fn solve_rational(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, nvars: usize) -> Result<RationalSolution> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].recip()?;
        for x in rows[r].iter_mut() {
            *x = x.checked_mul(&inv)?;
        }
        rhs[r] = rhs[r].checked_mul(&inv)?;
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c];
            for j in 0..nvars {
                let v = rows[r][j].checked_mul(&f)?;
                rows[i][j] = rows[i][j].checked_sub(&v)?;
            }
            let v = rhs[r].checked_mul(&f)?;
            rhs[i] = rhs[i].checked_sub(&v)?;
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(i) = (r..rows.len()).find(|&i| !rhs[i].is_zero()) {
        return Err(Error::Inconsistent(format!("equation {i} leaves residual {}", rhs[i])));
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let mut particular = vec![Rational::ZERO; nvars];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[i];
    }
    let mut nullspace = Vec::new();
    for &f in &free {
        let mut v = vec![Rational::ZERO; nvars];
        v[f] = Rational::ONE;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -rows[i][f];
        }
        nullspace.push(v);
    }
    // orthogonalise the nullspace and remove its component from the particular solution
    let mut ortho: Vec<Vec<Rational>> = Vec::new();
    for mut v in nullspace {
        for u in &ortho {
            let f = dot(&v, u)?.checked_div(&dot(u, u)?)?;
            for (x, y) in v.iter_mut().zip(u) {
                *x = x.checked_sub(&y.checked_mul(&f)?)?;
            }
        }
        ortho.push(v);
    }
    for u in &ortho {
        let f = dot(&particular, u)?.checked_div(&dot(u, u)?)?;
        for (x, y) in particular.iter_mut().zip(u) {
            *x = x.checked_sub(&y.checked_mul(&f)?)?;
        }
    }
    Ok(RationalSolution { particular, nullspace: ortho })
}

/// The first-order correction carried by one symbol.
#[derive(Clone, Debug)]
pub struct SymbolCorrection {
    pub symbol: Symbol,
    /// Antisymmetric correction in the tensor basis.
    pub tensor: CoeffMatrix,
    /// `split[t][r]`: coefficient of `|t>_inf` in `|dr>`, per unit of the symbol.
    pub split: CoeffMatrix,
}

#[derive(Clone, Debug)]
pub struct FirstOrderCorrections {
    pub big_shape: YoungDiagram,
    pub rn: YoungDiagram,
    pub m: usize,
    pub rows: Vec<SplitRow>,
    pub tensor_states: Vec<TensorSlotState>,
    /// `U[split row][tensor state]`.
    pub transform: CoeffMatrix,
    pub terms: Vec<SymbolCorrection>,
    /// Antisymmetric directions left free by the equations.
    pub residual_dof: usize,
    /// Basis of the free directions, in the split basis.
    pub nullspace: Vec<CoeffMatrix>,
}

impl FirstOrderCorrections {
    /// `|dr> = sum_t X[t][r] |t>_inf` as formal combinations.
    pub fn correction_of(&self, r: usize) -> Vec<(usize, Formal)> {
        let n = self.rows.len();
        let mut out = Vec::new();
        for t in 0..n {
            let mut f = Formal::default();
            for term in &self.terms {
                let v = term.split.get(t, r);
                if !v.is_zero() {
                    f.0.insert(term.symbol, v.clone());
                }
            }
            if !f.is_zero() {
                out.push((t, f));
            }
        }
        out
    }

    /// Total correction matrix with each symbol replaced by a number.
    pub fn evaluate(&self, values: &BTreeMap<Symbol, f64>) -> Result<Vec<Vec<f64>>> {
        let n = self.rows.len();
        let mut out = vec![vec![0.0; n]; n];
        for term in &self.terms {
            let v = *values.get(&term.symbol).ok_or_else(|| Error::InvalidQuery(format!("no value given for {}", term.symbol)))?;
            for (i, row) in term.split.to_f64().iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    out[i][j] += v * x;
                }
            }
        }
        Ok(out)
    }
}

fn unknown_index(n: usize, i: usize, j: usize) -> usize {
    // strictly upper triangle, row-major
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Solve the first-order equations for every generator of `S_m` on the split
/// states of `R` with fixed `r_n` shape.
pub fn first_order_corrections(big: &YoungDiagram, m: usize, rn: &YoungDiagram) -> Result<FirstOrderCorrections> {
    if m < 2 {
        return Err(Error::InvalidQuery("first-order corrections need m >= 2".into()));
    }
    removed_counts(big, rn)?;
    let tm = transformation_matrix(big, m, rn)?;
    let states = tm.cols.clone();
    let n = states.len();
    let nvars = n * (n - 1) / 2;
    let actions: Vec<PerturbedAction> = (1..m).map(|k| perturbed_action(&states, k)).collect::<Result<_>>()?;
    // image of each state under each swap
    let perm: Vec<Vec<usize>> = actions
        .iter()
        .map(|a| (0..n).map(|j| (0..n).find(|&i| !a.base.get(i, j).is_zero()).expect("permutation matrix")).collect())
        .collect();
    let mut symbols: Vec<Symbol> = actions.iter().flat_map(|a| a.correction.keys().copied()).collect();
    symbols.sort();
    symbols.dedup();

    // coefficient rows: (A Y - Y A)[i][j] = Y[pi i][j] - Y[i][pi j]
    let entry = |row: &mut Vec<Rational>, i: usize, j: usize, sign: i64| {
        if i < j {
            let u = unknown_index(n, i, j);
            row[u] = row[u] + Rational::from_int(sign);
        } else if i > j {
            let u = unknown_index(n, j, i);
            row[u] = row[u] - Rational::from_int(sign);
        }
    };
    let mut coeffs = Vec::new();
    let mut keys = Vec::new();
    for (k, p) in perm.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Rational::ZERO; nvars];
                entry(&mut row, p[i], j, 1);
                entry(&mut row, i, p[j], -1);
                coeffs.push(row);
                keys.push((k, i, j));
            }
        }
    }

    let u = tm.matrix.clone();
    let ut = u.transpose();
    let antisym = |v: &[Rational]| -> CoeffMatrix {
        let mut y = CoeffMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = v[unknown_index(n, i, j)];
                y.set(i, j, SurdSum::from_rational(x));
                y.set(j, i, SurdSum::from_rational(-x));
            }
        }
        y
    };
    let labels: Vec<String> = tm.rows.iter().map(|r| format!("{} {} i={}", r.rm_tableau, r.pattern, r.multiplicity_index)).collect();
    let mut terms = Vec::new();
    let mut nullspace = Vec::new();
    let mut residual_dof = 0;
    for (idx, s) in symbols.iter().enumerate() {
        let rhs: Vec<Rational> = keys
            .iter()
            .map(|&(k, i, j)| {
                if i != j {
                    return Rational::ZERO;
                }
                match actions[k].correction.get(s) {
                    Some(b) => -b.get(i, i).as_rational().expect("rational diagonal"),
                    None => Rational::ZERO,
                }
            })
            .collect();
        let sol = solve_rational(coeffs.clone(), rhs, nvars).map_err(|e| match e {
            Error::Inconsistent(why) => Error::Inconsistent(format!("{s}: {why}")),
            other => other,
        })?;
        let y = antisym(&sol.particular);
        let x = u.checked_mul(&y)?.checked_mul(&ut)?.with_labels(labels.clone(), labels.clone());
        terms.push(SymbolCorrection { symbol: *s, tensor: y.with_labels(state_labels(&states), state_labels(&states)), split: x });
        if idx == 0 {
            residual_dof = sol.nullspace.len();
            for v in &sol.nullspace {
                nullspace.push(u.checked_mul(&antisym(v))?.checked_mul(&ut)?.with_labels(labels.clone(), labels.clone()));
            }
        }
    }
    Ok(FirstOrderCorrections {
        big_shape: big.clone(),
        rn: rn.clone(),
        m,
        rows: tm.rows,
        tensor_states: states,
        transform: u,
        terms,
        residual_dof,
        nullspace,
    })
}

fn state_labels(states: &[TensorSlotState]) -> Vec<String> {
    states.iter().map(|s| s.to_string()).collect()
}

/// Exact states of the two-row, `m = 2` example, on tensor states `(2,1)`
/// (label 1 in row 1) and `(1,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowExactStates {
    pub d: u64,
    pub symmetric: Vec<(TensorSlotState, SurdSum)>,
    pub antisymmetric: Vec<(TensorSlotState, SurdSum)>,
}

pub fn two_row_exact_states(d: u64) -> Result<TwoRowExactStates> {
    if d < 2 {
        return Err(Error::InvalidQuery(format!("d = {d} must be at least 2")));
    }
    let di = d as i128;
    let plus = surd_sqrt(Rational::try_new(di + 1, 2 * di)?)?;
    let minus = surd_sqrt(Rational::try_new(di - 1, 2 * di)?)?;
    let first = TensorSlotState::new(vec![2, 1]);
    let second = TensorSlotState::new(vec![1, 2]);
    Ok(TwoRowExactStates {
        d,
        symmetric: vec![(first.clone(), plus.clone()), (second.clone(), minus.clone())],
        antisymmetric: vec![(first, minus), (second, plus.checked_neg()?)],
    })
}

/// Least-squares slope `k` of `log y = c - k log x`.
pub fn fit_decay_exponent(points: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return Err(Error::InvalidQuery("need at least two positive points to fit".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidQuery("all x values coincide".into()));
    }
    Ok(-sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoRowDeviation {
    pub d: u64,
    /// Max-norm gap between exact states and the limit states.
    pub leading: f64,
    /// Max-norm gap after adding the first-order correction.
    pub first_order: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoRowConvergence {
    pub points: Vec<TwoRowDeviation>,
    pub leading_exponent: f64,
    pub first_order_exponent: f64,
}

/// Compare the exact two-row states with limit plus first-order states.
pub fn two_row_convergence(ds: &[u64]) -> Result<TwoRowConvergence> {
    let big = YoungDiagram::new(vec![5, 2])?;
    let rn = YoungDiagram::new(vec![4, 1])?;
    let corr = first_order_corrections(&big, 2, &rn)?;
    let sym = Symbol::new(1, 2)?;
    // split rows are [1,1] then [2]; exact states listed symmetric then antisymmetric
    let order = [1usize, 0];
    let u = corr.transform.to_f64();
    let col = |t: &TensorSlotState| corr.tensor_states.iter().position(|s| s == t).expect("two-row tensor state");
    let mut points = Vec::new();
    for &d in ds {
        let exact = two_row_exact_states(d)?;
        let x = corr.evaluate(&BTreeMap::from([(sym, 1.0 / d as f64)]))?;
        let (mut lead, mut first) = (0.0f64, 0.0f64);
        for (which, state) in [&exact.symmetric, &exact.antisymmetric].into_iter().enumerate() {
            let r = order[which];
            for (t, c) in state {
                let j = col(t);
                let inf = u[r][j];
                let corrected = inf + (0..u.len()).map(|s| x[s][r] * u[s][j]).sum::<f64>();
                lead = lead.max((c.to_f64() - inf).abs());
                first = first.max((c.to_f64() - corrected).abs());
            }
        }
        points.push(TwoRowDeviation { d, leading: lead, first_order: first });
    }
    let leading_exponent = fit_decay_exponent(&points.iter().map(|p| (p.d as f64, p.leading)).collect::<Vec<_>>())?;
    let first_order_exponent = fit_decay_exponent(&points.iter().map(|p| (p.d as f64, p.first_order)).collect::<Vec<_>>())?;
    Ok(TwoRowConvergence { points, leading_exponent, first_order_exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(v: &[usize]) -> YoungDiagram {
        YoungDiagram::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delta_s_on_two_row_states() {
        let tm = transformation_matrix(&y(&[5, 2]), 2, &y(&[4, 1])).unwrap();
        let sym = Symbol::new(1, 2).unwrap();
        let expansion = |r: usize| -> Vec<(TensorSlotState, SurdSum)> {
            tm.cols.iter().enumerate().map(|(j, t)| (t.clone(), tm.matrix.get(r, j).clone())).collect()
        };
        // dS [2] = (1/d) [1,1] and dS [1,1] = (1/d) [2]
        for (from, to) in [(1usize, 0usize), (0, 1)] {
            let img = delta_s_action(&expansion(from), 1).unwrap();
            for (j, t) in tm.cols.iter().enumerate() {
                assert_eq!(img[t].0[&sym], tm.matrix.get(to, j).clone());
            }
        }
        let same = TensorSlotState::new(vec![1, 1, 2]);
        assert_eq!(delta_s_on_state(&same, 2).unwrap(), None);
    }

    #[test]
    fn two_row_first_order_solution() {
        let c = first_order_corrections(&y(&[5, 2]), 2, &y(&[4, 1])).unwrap();
        assert_eq!(c.residual_dof, 0);
        assert_eq!(c.terms.len(), 1);
        let x = &c.terms[0].split;
        // rows: [1,1] then [2]
        assert_eq!(x.get(0, 1), &"1/2".parse::<SurdSum>().unwrap());
        assert_eq!(x.get(1, 0), &"-1/2".parse::<SurdSum>().unwrap());
        assert!(x.get(0, 0).is_zero() && x.get(1, 1).is_zero());
    }

    #[test]
    fn exact_states_are_orthonormal() {
        for d in 2..40u64 {
            let s = two_row_exact_states(d).unwrap();
            let ip = |a: &[(TensorSlotState, SurdSum)], b: &[(TensorSlotState, SurdSum)]| {
                a.iter().zip(b).map(|(x, y)| x.1.checked_mul(&y.1).unwrap()).sum::<SurdSum>()
            };
            assert!(ip(&s.symmetric, &s.symmetric).is_one());
            assert!(ip(&s.antisymmetric, &s.antisymmetric).is_one());
            assert!(ip(&s.symmetric, &s.antisymmetric).is_zero());
        }
        let s = two_row_exact_states(2).unwrap();
        assert_eq!(s.symmetric[0].1, "1/2*sqrt(3)".parse().unwrap());
        assert_eq!(s.symmetric[1].1, "1/2".parse().unwrap());
        assert!(two_row_exact_states(1).is_err());
    }

    #[test]
    fn two_row_convergence_orders() {
        let c = two_row_convergence(&[4, 8, 16, 32]).unwrap();
        assert!((c.leading_exponent - 1.0).abs() < 0.1, "{c:?}");
        assert!((1.8..=2.2).contains(&c.first_order_exponent), "{c:?}");
    }

    #[test]
    fn larger_systems_are_consistent_and_antisymmetric() {
        for (big, m, rn) in [
            (vec![8, 3], 3, vec![6, 2]),
            (vec![9, 4], 4, vec![7, 2]),
            (vec![7, 4, 2], 3, vec![6, 3, 1]),
            (vec![8, 5, 2], 4, vec![7, 3, 1]),
        ] {
            let c = first_order_corrections(&y(&big), m, &y(&rn)).unwrap();
            for t in &c.terms {
                assert_eq!(t.split.transpose().checked_add(&t.split).unwrap().is_zero(), true);
            }
        }
    }

    #[test]
    fn solver_reports_free_directions() {
        // x + y = 1 leaves one free direction; min-norm solution is (1/2, 1/2)
        let sol = solve_rational(vec![vec![Rational::ONE, Rational::ONE]], vec![Rational::ONE], 2).unwrap();
        assert_eq!(sol.nullspace.len(), 1);
        assert_eq!(sol.particular, vec![Rational::new(1, 2), Rational::new(1, 2)]);
        let bad = solve_rational(vec![vec![Rational::ONE], vec![Rational::ONE]], vec![Rational::ONE, Rational::ZERO], 1);
        assert!(matches!(bad, Err(Error::Inconsistent(_))));
    }

    proptest! {
        #[test]
        fn first_order_equations_hold(q2 in 1usize..3, extra in 3usize..6, n1 in 1usize..3) {
            let m = 3;
            let rn = y(&[q2 + extra, q2]);
            let big = y(&[q2 + extra + n1, q2 + m - n1]);
            let c = first_order_corrections(&big, m, &rn).unwrap();
            for k in 1..m {
                let act = perturbed_action(&c.tensor_states, k).unwrap();
                for t in &c.terms {
                    let b = act.correction.get(&t.symbol).cloned().unwrap_or_else(|| CoeffMatrix::zeros(c.tensor_states.len(), c.tensor_states.len()));
                    let lhs = act.base.checked_mul(&t.tensor).unwrap().checked_sub(&t.tensor.checked_mul(&act.base).unwrap()).unwrap();
                    prop_assert!(lhs.checked_add(&b).unwrap().is_zero());
                }
            }
        }
    }
}
