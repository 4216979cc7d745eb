//! Clebsch-Gordan coefficients of U(p) for `m_p (x) (1,0,...,0)` as products
//! of scalar factors, and composite coefficients for chains of fundamentals.
//!
//! Indices `i`, `j` in the scalar-factor API are 0-based positions within a
//! row. The fundamental state `a` (1-based) is the row of the big diagram a
//! box comes from: its pattern has a 1 at the start of every level `l >= a`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gt::{CopyLabel, GtPattern};
use crate::surd::{surd_sqrt, Rational, SurdSum};
use crate::tableaux::StandardTableau;

/// Query for one scalar factor between consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarFactorQuery {
    /// Upper row incremented at `i`, lower row incremented at `j`.
    Add { upper: Vec<i64>, lower: Vec<i64>, i: usize, j: usize },
    /// Upper row incremented at `i`, lower row unchanged.
    Stop { upper: Vec<i64>, lower: Vec<i64>, i: usize },
}

/// `l_{s} = m_{s} - s` with 1-based `s`.
fn shifted(row: &[i64]) -> Vec<i64> {
    row.iter().enumerate().map(|(k, &x)| x - (k as i64 + 1)).collect()
}

fn check_rows(upper: &[i64], lower: &[i64]) -> Result<()> {
    if upper.is_empty() || lower.len() + 1 != upper.len() {
        return Err(Error::InvalidQuery(format!("rows {upper:?} / {lower:?} are not consecutive levels")));
    }
    Ok(())
}

fn ratio_sqrt(num: i128, den: i128) -> Result<SurdSum> {
    if den == 0 {
        return Err(Error::InvalidQuery("zero denominator in scalar factor".into()));
    }
    surd_sqrt(Rational::try_new(num, den)?.abs())
}

pub fn scalar_factor(q: &ScalarFactorQuery) -> Result<SurdSum> {
    match q {
        ScalarFactorQuery::Add { upper, lower, i, j } => {
            check_rows(upper, lower)?;
            let (i, j) = (*i, *j);
            if i >= upper.len() || j >= lower.len() {
                return Err(Error::InvalidQuery(format!("increment position ({i},{j}) out of range")));
            }
            let (lu, ll) = (shifted(upper), shifted(lower));
            let mut num: i128 = 1;
            let mut den: i128 = 1;
            for k in (0..ll.len()).filter(|&k| k != j) {
                num *= (ll[k] - lu[i] - 1) as i128;
                den *= (ll[k] - ll[j] - 1) as i128;
            }
            for k in (0..lu.len()).filter(|&k| k != i) {
                num *= (lu[k] - ll[j]) as i128;
                den *= (lu[k] - lu[i]) as i128;
            }
            let v = ratio_sqrt(num, den)?;
            Ok(if i <= j { v } else { v.checked_neg()? })
        }
        ScalarFactorQuery::Stop { upper, lower, i } => {
            check_rows(upper, lower)?;
            let i = *i;
            if i >= upper.len() {
                return Err(Error::InvalidQuery(format!("increment position {i} out of range")));
            }
            let (lu, ll) = (shifted(upper), shifted(lower));
            let num: i128 = ll.iter().map(|&x| (x - lu[i] - 1) as i128).product();
            let den: i128 = (0..lu.len()).filter(|&k| k != i).map(|k| (lu[k] - lu[i]) as i128).product();
            ratio_sqrt(num, den)
        }
    }
}

/// The pattern of the fundamental state `a` of U(p).
pub fn fundamental_pattern(p: usize, a: usize) -> Result<GtPattern> {
    if a == 0 || a > p {
        return Err(Error::InvalidQuery(format!("fundamental index {a} outside 1..={p}")));
    }
    let rows = (0..p)
        .map(|r| {
            let level = p - r;
            let mut row = vec![0; level];
            if level >= a {
                row[0] = 1;
            }
            row
        })
        .collect();
    GtPattern::new(rows)
}

/// Position incremented at each level (top level first), `None` where the
/// level is unchanged; `None` overall if `child - parent` is not a
/// fundamental step from `a`.
fn increments(parent: &GtPattern, a: usize, child: &GtPattern) -> Option<Vec<Option<usize>>> {
    let p = parent.p();
    let mut out = Vec::with_capacity(p);
    for l in (1..=p).rev() {
        let (up, ch) = (parent.level(l), child.level(l));
        let diffs: Vec<(usize, i64)> = up.iter().zip(ch).enumerate().map(|(k, (x, y))| (k, y - x)).filter(|d| d.1 != 0).collect();
        if l >= a {
            match diffs.as_slice() {
                [(k, 1)] => out.push(Some(*k)),
                _ => return None,
            }
        } else if !diffs.is_empty() {
            return None;
        } else {
            out.push(None);
        }
    }
    Some(out)
}

type FcgKey = (GtPattern, usize, GtPattern);

fn fcg_memo() -> &'static RwLock<HashMap<FcgKey, SurdSum>> {
    static MEMO: OnceLock<RwLock<HashMap<FcgKey, SurdSum>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn fundamental_cg_uncached(parent: &GtPattern, a: usize, child: &GtPattern) -> Result<SurdSum> {
    let p = parent.p();
    let Some(inc) = increments(parent, a, child) else {
        return Ok(SurdSum::zero());
    };
    // inc[r] is the increment at level p - r
    let mut value = SurdSum::one();
    for l in (a + 1..=p).rev() {
        let i = inc[p - l].expect("level above a is incremented");
        let j = inc[p - l + 1].expect("level a and above are incremented");
        let q = ScalarFactorQuery::Add { upper: parent.level(l).to_vec(), lower: parent.level(l - 1).to_vec(), i, j };
        value = value.checked_mul(&scalar_factor(&q)?)?;
    }
    if a >= 2 {
        let i = inc[p - a].expect("level a is incremented");
        let q = ScalarFactorQuery::Stop { upper: parent.level(a).to_vec(), lower: parent.level(a - 1).to_vec(), i };
        value = value.checked_mul(&scalar_factor(&q)?)?;
    }
    Ok(value)
}

/// `C^{child}_{parent, fundamental a}`: zero unless `child` is `parent` with
/// one entry raised by 1 at every level `>= a` and lower levels untouched.
pub fn fundamental_cg_patterns(parent: &GtPattern, a: usize, child: &GtPattern) -> Result<SurdSum> {
    if parent.p() != child.p() {
        return Err(Error::InvalidQuery("patterns of different U(p)".into()));
    }
    if a == 0 || a > parent.p() {
        return Err(Error::InvalidQuery(format!("fundamental index {a} outside 1..={}", parent.p())));
    }
    let key = (parent.clone(), a, child.clone());
    if let Some(v) = fcg_memo().read().expect("memo lock").get(&key) {
        return Ok(v.clone());
    }
    let v = fundamental_cg_uncached(parent, a, child)?;
    fcg_memo().write().expect("memo lock").insert(key, v.clone());
    Ok(v)
}

/// A fundamental coupling step between copy labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalCgQuery {
    pub parent: CopyLabel,
    pub a: usize,
    pub child: CopyLabel,
}

/// Like [`fundamental_cg_patterns`], additionally zero unless the child
/// tableau with its largest label removed is the parent tableau.
pub fn fundamental_cg(q: &FundamentalCgQuery) -> Result<SurdSum> {
    let ct = &q.child.tableau;
    if ct.size() != q.parent.tableau.size() + 1 || ct.remove_max().map(|x| x.0).as_ref() != Some(&q.parent.tableau) {
        return Ok(SurdSum::zero());
    }
    fundamental_cg_patterns(&q.parent.pattern, q.a, &q.child.pattern)
}

/// Candidate parents: `child` minus one unit at one position of each level `>= a`.
pub fn fundamental_parents(child: &GtPattern, a: usize) -> Vec<GtPattern> {
    let p = child.p();
    let mut out = Vec::new();
    let mut rows = child.rows().to_vec();
    fn rec(rows: &mut Vec<Vec<i64>>, r: usize, last: usize, out: &mut Vec<GtPattern>) {
        if r > last {
            if let Ok(g) = GtPattern::new(rows.clone()) {
                out.push(g);
            }
            return;
        }
        for k in 0..rows[r].len() {
            if rows[r][k] > 0 {
                rows[r][k] -= 1;
                rec(rows, r + 1, last, out);
                rows[r][k] += 1;
            }
        }
    }
    if a >= 1 && a <= p {
        rec(&mut rows, 0, p - a, &mut out);
    }
    out
}

/// `C^{M}_{a_m, ..., a_1}` for a standard tableau `s` of `m` boxes and a
/// pattern `pattern` whose top row is the shape of `s`.
///
/// `slots` is `(a_m, ..., a_1)`. The fundamental `a_k` is coupled at the
/// step that adds the box labelled `k` in `s`, so `a_1` is coupled first.
pub fn composite_cg(s: &StandardTableau, pattern: &GtPattern, slots: &[usize]) -> Result<SurdSum> {
    let m = s.size();
    let p = pattern.p();
    if slots.len() != m {
        return Err(Error::InvalidQuery(format!("{} slots for a tableau of {m} boxes", slots.len())));
    }
    if slots.iter().any(|&a| a == 0 || a > p) {
        return Err(Error::InvalidQuery(format!("slot values {slots:?} outside 1..={p}")));
    }
    let top: Vec<usize> = pattern.top().iter().map(|&x| x as usize).collect();
    if s.shape().padded(p)? != top {
        return Err(Error::InvalidQuery(format!("tableau {s} does not match pattern {pattern}")));
    }
    composite_rec(s, pattern, slots)
}

fn composite_rec(s: &StandardTableau, pattern: &GtPattern, slots: &[usize]) -> Result<SurdSum> {
    let m = s.size();
    if m == 0 {
        return Ok(if pattern.rows().iter().flatten().all(|&x| x == 0) { SurdSum::one() } else { SurdSum::zero() });
    }
    let a = slots[0];
    let (smaller, _) = s.remove_max().expect("m >= 1");
    let target: Vec<i64> = smaller.shape().padded(pattern.p())?.into_iter().map(|x| x as i64).collect();
    let mut acc = SurdSum::zero();
    for parent in fundamental_parents(pattern, a) {
        if parent.top() != target.as_slice() {
            continue;
        }
        let f = fundamental_cg_patterns(&parent, a, pattern)?;
        if f.is_zero() {
            continue;
        }
        let rest = composite_rec(&smaller, &parent, &slots[1..])?;
        if !rest.is_zero() {
            acc = acc.checked_add(&rest.checked_mul(&f)?)?;
        }
    }
    Ok(acc)
}
