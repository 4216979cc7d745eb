//! Exact arithmetic on rationals and finite sums of rational multiples of
//! square roots of square-free integers.
//!
//! Every coefficient produced by this crate (Clebsch-Gordan values, Young
//! orthogonal entries, matrix elements) lives in this field extension, so the
//! whole pipeline stays bit-exact.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

/// A reduced fraction with `i64` numerator and positive `i64` denominator.
///
/// Intermediate products are formed in `i128`; a result that does not fit
/// back into `i64` is an [`Error::Overflow`] from the `checked_*` methods and a
/// panic from the operator impls.
#[derive(Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Panics if `den == 0` or the reduced value overflows.
    pub fn new(num: i64, den: i64) -> Rational {
        Self::try_new(num as i128, den as i128).expect("invalid rational")
    }

    pub fn try_new(num: i128, den: i128) -> Result<Rational> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        let num = i64::try_from(n).map_err(|_| Error::Overflow)?;
        let den = i64::try_from(d).map_err(|_| Error::Overflow)?;
        Ok(Rational { num, den })
    }

    pub fn from_int(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i64 {
        self.num.signum()
    }

    pub fn abs(&self) -> Rational {
        Rational { num: self.num.abs(), den: self.den }
    }

    pub fn checked_add(&self, o: &Rational) -> Result<Rational> {
        let n = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        Self::try_new(n, self.den as i128 * o.den as i128)
    }

    pub fn checked_sub(&self, o: &Rational) -> Result<Rational> {
        self.checked_add(&-*o)
    }

    pub fn checked_mul(&self, o: &Rational) -> Result<Rational> {
        Self::try_new(self.num as i128 * o.num as i128, self.den as i128 * o.den as i128)
    }

    pub fn checked_div(&self, o: &Rational) -> Result<Rational> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::try_new(self.num as i128 * o.den as i128, self.den as i128 * o.num as i128)
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::ONE.checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().expect("rational overflow"), den: self.den }
    }
}

macro_rules! rational_op {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                self.$checked(&o).expect("rational arithmetic overflow or division by zero")
            }
        }
    };
}
rational_op!(Add, add, checked_add);
rational_op!(Sub, sub, checked_sub);
rational_op!(Mul, mul, checked_mul);
rational_op!(Div, div, checked_div);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Rational> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational '{s}'"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Rational::try_new(n as i128, d as i128)
            }
            None => Ok(Rational::from_int(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Split `n` into `(k, r)` with `n = k^2 r` and `r` square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut rest = n;
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            outside *= p.pow(e / 2);
            if e % 2 == 1 {
                inside *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outside, inside * rest)
}

/// A finite sum `sum_i c_i sqrt(r_i)` with rational `c_i != 0` and distinct
/// square-free radicands `r_i`, kept sorted by radicand. The rational part is
/// the term with radicand 1. Zero is the empty sum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    terms: SmallVec<[(u64, Rational); 2]>,
}

impl SurdSum {
    pub fn zero() -> SurdSum {
        SurdSum::default()
    }

    pub fn one() -> SurdSum {
        SurdSum::from_rational(Rational::ONE)
    }

    pub fn from_int(n: i64) -> SurdSum {
        SurdSum::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> SurdSum {
        let mut terms = SmallVec::new();
        if !r.is_zero() {
            terms.push((1, r));
        }
        SurdSum { terms }
    }

    /// `coeff * sqrt(radicand)` for any radicand; square factors are pulled out.
    pub fn term(coeff: Rational, radicand: u64) -> Result<SurdSum> {
        let (k, r) = square_free_split(radicand);
        if k == 0 || coeff.is_zero() {
            return Ok(SurdSum::zero());
        }
        let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
        let c = coeff.checked_mul(&Rational::from_int(k))?;
        let mut terms = SmallVec::new();
        terms.push((r, c));
        Ok(SurdSum { terms })
    }

    /// Build from arbitrary `(coeff, radicand)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Rational, u64)>>(it: I) -> Result<SurdSum> {
        let mut acc = SurdSum::zero();
        for (c, r) in it {
            acc = acc.checked_add(&SurdSum::term(c, r)?)?;
        }
        Ok(acc)
    }

    /// `(coefficient, square-free radicand)` pairs, sorted by radicand.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, u64)> + '_ {
        self.terms.iter().map(|&(r, c)| (c, r))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational() == Some(Rational::ONE)
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(1, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|&(r, c)| c.to_f64() * (r as f64).sqrt()).sum()
    }

    pub fn checked_add(&self, o: &SurdSum) -> Result<SurdSum> {
        let mut terms: SmallVec<[(u64, Rational); 2]> = SmallVec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let next = match (self.terms.get(i), o.terms.get(j)) {
                (Some(&a), Some(&b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        i += 1;
                        a
                    }
                    Ordering::Greater => {
                        j += 1;
                        b
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (a.0, a.1.checked_add(&b.1)?)
                    }
                },
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                terms.push(next);
            }
        }
        Ok(SurdSum { terms })
    }

    pub fn checked_sub(&self, o: &SurdSum) -> Result<SurdSum> {
        self.checked_add(&o.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<SurdSum> {
        let mut terms = self.terms.clone();
        for t in terms.iter_mut() {
            t.1 = Rational::try_new(-(t.1.num as i128), t.1.den as i128)?;
        }
        Ok(SurdSum { terms })
    }

    pub fn checked_scale(&self, r: &Rational) -> Result<SurdSum> {
        if r.is_zero() {
            return Ok(SurdSum::zero());
        }
        let mut terms = self.terms.clone();
        for t in terms.iter_mut() {
            t.1 = t.1.checked_mul(r)?;
        }
        Ok(SurdSum { terms })
    }

    pub fn checked_mul(&self, o: &SurdSum) -> Result<SurdSum> {
        if self.is_zero() || o.is_zero() {
            return Ok(SurdSum::zero());
        }
        if let Some(r) = o.as_rational() {
            return self.checked_scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return o.checked_scale(&r);
        }
        let mut acc = SurdSum::zero();
        for &(ra, ca) in &self.terms {
            for &(rb, cb) in &o.terms {
                // sqrt(a) sqrt(b) = g sqrt(a/g * b/g) with a/g, b/g coprime and square-free
                let g = gcd_u64(ra, rb);
                let rad = (ra / g).checked_mul(rb / g).ok_or(Error::Overflow)?;
                let g = i64::try_from(g).map_err(|_| Error::Overflow)?;
                let c = ca.checked_mul(&cb)?.checked_mul(&Rational::from_int(g))?;
                let mut terms = SmallVec::new();
                terms.push((rad, c));
                acc = acc.checked_add(&SurdSum { terms })?;
            }
        }
        Ok(acc)
    }

    /// Division by a rational or by a single-term surd `c sqrt(r)`.
    pub fn checked_div(&self, o: &SurdSum) -> Result<SurdSum> {
        match o.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(r, c)] => {
                // x / (c sqrt r) = x sqrt(r) / (c r)
                let inv = Rational::ONE.checked_div(&c.checked_mul(&Rational::from_int(*r as i64))?)?;
                self.checked_mul(&SurdSum::term(inv, *r)?)
            }
            _ => Err(Error::Unsupported("division by a multi-term surd".into())),
        }
    }

    /// `x^2`.
    pub fn square(&self) -> Result<SurdSum> {
        self.checked_mul(self)
    }
}

/// Exact square root of a non-negative rational, as a single-term surd.
///
/// `sqrt(p/q) = sqrt(p q) / q`.
pub fn surd_sqrt(x: Rational) -> Result<SurdSum> {
    if x.signum() < 0 {
        return Err(Error::NegativeRadicand(x.to_string()));
    }
    if x.is_zero() {
        return Ok(SurdSum::zero());
    }
    let pq = (x.num() as u128) * (x.den() as u128);
    let pq = u64::try_from(pq).map_err(|_| Error::Overflow)?;
    SurdSum::term(Rational::new(1, x.den()), pq)
}

impl From<Rational> for SurdSum {
    fn from(r: Rational) -> Self {
        SurdSum::from_rational(r)
    }
}

impl From<i64> for SurdSum {
    fn from(n: i64) -> Self {
        SurdSum::from_int(n)
    }
}

const OVERFLOW_MSG: &str = "SurdSum arithmetic overflow (use the checked_* methods to handle this)";

impl Add for SurdSum {
    type Output = SurdSum;
    fn add(self, o: SurdSum) -> SurdSum {
        self.checked_add(&o).expect(OVERFLOW_MSG)
    }
}

impl<'a> Add<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn add(self, o: &SurdSum) -> SurdSum {
        self.checked_add(o).expect(OVERFLOW_MSG)
    }
}

impl AddAssign<&SurdSum> for SurdSum {
    fn add_assign(&mut self, o: &SurdSum) {
        *self = self.checked_add(o).expect(OVERFLOW_MSG);
    }
}

impl Sub for SurdSum {
    type Output = SurdSum;
    fn sub(self, o: SurdSum) -> SurdSum {
        self.checked_sub(&o).expect(OVERFLOW_MSG)
    }
}

impl<'a> Sub<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn sub(self, o: &SurdSum) -> SurdSum {
        self.checked_sub(o).expect(OVERFLOW_MSG)
    }
}

impl Mul for SurdSum {
    type Output = SurdSum;
    fn mul(self, o: SurdSum) -> SurdSum {
        self.checked_mul(&o).expect(OVERFLOW_MSG)
    }
}

impl<'a> Mul<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn mul(self, o: &SurdSum) -> SurdSum {
        self.checked_mul(o).expect(OVERFLOW_MSG)
    }
}

impl Div for SurdSum {
    type Output = SurdSum;
    fn div(self, o: SurdSum) -> SurdSum {
        self.checked_div(&o).expect("SurdSum division failed")
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        self.checked_neg().expect(OVERFLOW_MSG)
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        self.checked_neg().expect(OVERFLOW_MSG)
    }
}

impl Sum for SurdSum {
    fn sum<I: Iterator<Item = SurdSum>>(iter: I) -> SurdSum {
        iter.fold(SurdSum::zero(), |a, b| a + b)
    }
}

impl fmt::Display for SurdSum {
    /// Text form: `-1/24*sqrt(6)`, `7/8 + 3/8*sqrt(2)`, `sqrt(3)`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, &(r, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if r == 1 {
                write!(f, "{a}")?;
            } else if a == Rational::ONE {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{a}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdSum({self})")
    }
}

fn parse_term(tok: &str) -> Result<(Rational, u64)> {
    let bad = || Error::Parse(format!("bad surd term '{tok}'"));
    let t: String = tok.chars().filter(|c| !c.is_whitespace()).collect();
    let (coeff, rad) = match t.find("sqrt(") {
        Some(pos) => {
            let inner = t[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
            let rad: u64 = inner.parse().map_err(|_| bad())?;
            let head = &t[..pos];
            let coeff = match head {
                "" => Rational::ONE,
                "-" => -Rational::ONE,
                h => h.strip_suffix('*').ok_or_else(bad)?.parse()?,
            };
            (coeff, rad)
        }
        None => (t.parse()?, 1),
    };
    Ok((coeff, rad))
}

impl FromStr for SurdSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<SurdSum> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty surd".into()));
        }
        // split at top-level +/- that are not leading signs
        let mut pieces = Vec::new();
        let mut cur = String::new();
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && !cur.trim().is_empty() {
                pieces.push(std::mem::take(&mut cur));
            }
            if ch != '+' {
                cur.push(ch);
            }
        }
        pieces.push(cur);
        let mut terms = Vec::with_capacity(pieces.len());
        for p in pieces {
            terms.push(parse_term(&p)?);
        }
        SurdSum::from_terms(terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    num: i64,
    den: i64,
    radicand: u64,
}

impl Serialize for SurdSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|&(r, c)| TermRepr { num: c.num(), den: c.den(), radicand: r })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurdSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SurdSum, D::Error> {
        let v = Vec::<TermRepr>::deserialize(d)?;
        let mut terms = Vec::with_capacity(v.len());
        for t in v {
            let c = Rational::try_new(t.num as i128, t.den as i128).map_err(serde::de::Error::custom)?;
            terms.push((c, t.radicand));
        }
        SurdSum::from_terms(terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(surd_sqrt(q(1, 3)).unwrap().to_string(), "1/3*sqrt(3)");
        assert_eq!(surd_sqrt(q(9, 4)).unwrap().to_string(), "3/2");
        assert_eq!(surd_sqrt(q(8, 9)).unwrap().to_string(), "2/3*sqrt(2)");
        assert!(surd_sqrt(q(-1, 2)).is_err());
        assert!(surd_sqrt(Rational::ZERO).unwrap().is_zero());
    }

    #[test]
    fn products_reduce_radicands() {
        let a = surd_sqrt(q(6, 1)).unwrap();
        let b = surd_sqrt(q(10, 1)).unwrap();
        assert_eq!((a * b).to_string(), "2*sqrt(15)");
        let s2 = surd_sqrt(q(2, 1)).unwrap();
        assert_eq!((s2.clone() * s2).to_string(), "2");
    }

    #[test]
    fn text_round_trip() {
        for s in ["-1/24*sqrt(6)", "7/8 + 3/8*sqrt(2)", "sqrt(3)", "0", "-sqrt(5) + 2*sqrt(7)", "-3/4"] {
            let x: SurdSum = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let x: SurdSum = "sqrt(18) - 1/2".parse().unwrap();
        assert_eq!(x.to_string(), "-1/2 + 3*sqrt(2)");
    }

    #[test]
    fn json_round_trip() {
        let x: SurdSum = "-1/24*sqrt(6) + 1/3".parse().unwrap();
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"[{"num":1,"den":3,"radicand":1},{"num":-1,"den":24,"radicand":6}]"#);
        let y: SurdSum = serde_json::from_str(&js).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn division_by_single_term() {
        let x: SurdSum = "1 + sqrt(2)".parse().unwrap();
        let d: SurdSum = "2*sqrt(2)".parse().unwrap();
        assert_eq!((x.clone() / d.clone()) * d, x);
        assert!(x.checked_div(&x).is_err());
        assert!(x.checked_div(&SurdSum::zero()).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::new(i64::MAX - 1, 1);
        assert!(big.checked_mul(&big).is_err());
        assert!(big.checked_add(&big).is_err());
    }

    fn surd_strategy() -> impl Strategy<Value = SurdSum> {
        prop::collection::vec((-20i64..20, 1i64..12, prop::sample::select(vec![1u64, 2, 3, 5, 6, 8, 12])), 0..4)
            .prop_map(|v| SurdSum::from_terms(v.into_iter().map(|(n, d, r)| (Rational::new(n, d), r))).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in surd_strategy(), b in surd_strategy(), c in surd_strategy()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(((&a * &b).to_f64() - a.to_f64() * b.to_f64()).abs() < 1e-9 * (1.0 + (a.to_f64() * b.to_f64()).abs()));
        }

        #[test]
        fn canonical_form_and_round_trip(a in surd_strategy()) {
            let radicands: Vec<u64> = a.terms().map(|t| t.1).collect();
            prop_assert!(radicands.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(radicands.iter().all(|&r| square_free_split(r).0 == 1));
            let parsed: SurdSum = a.to_string().parse().unwrap();
            prop_assert_eq!(&parsed, &a);
            let js: SurdSum = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(js, a);
        }

        #[test]
        fn sqrt_squares_back(n in 0i64..500, d in 1i64..500) {
            let x = Rational::new(n, d);
            prop_assert_eq!(surd_sqrt(x).unwrap().square().unwrap(), SurdSum::from_rational(x));
        }
    }
}
