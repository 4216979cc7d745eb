//! Permutations of `1..=n`, cycle notation and adjacent-transposition words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (1..=n).collect() }
    }

    /// One-line notation, `images[i-1] = sigma(i)`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Permutation> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!("({a},{b}) outside 1..={n}")));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The adjacent transposition `s_k = (k, k+1)`.
    pub fn adjacent(n: usize, k: usize) -> Result<Permutation> {
        Permutation::transposition(n, k, k + 1)
    }

    /// Parse cycle notation such as `(4,5)(1,2,3)` on `1..=n`. A product of
    /// cycles is read right to left, so `(1,2)(2,3)` maps 3 to 1.
    /// The empty string and `()` denote the identity.
    pub fn from_cycles(n: usize, s: &str) -> Result<Permutation> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut result = Permutation::identity(n);
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| Error::Parse(format!("unbalanced cycle in '{s}'")))?;
            let inner = rest[..inner_end]
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in '{s}'")))?;
            let mut cyc = Vec::new();
            if !inner.is_empty() {
                for tok in inner.split(',') {
                    let x: usize = tok.parse().map_err(|_| Error::Parse(format!("bad cycle entry '{tok}'")))?;
                    if x == 0 || x > n || cyc.contains(&x) {
                        return Err(Error::InvalidPermutation(format!("bad cycle ({inner}) on 1..={n}")));
                    }
                    cyc.push(x);
                }
            }
            cycles.push(cyc);
            rest = &rest[inner_end + 1..];
        }
        for cyc in cycles.iter().rev() {
            let mut c = Permutation::identity(n);
            for (i, &x) in cyc.iter().enumerate() {
                c.images[x - 1] = cyc[(i + 1) % cyc.len()];
            }
            result = c.compose(&result);
        }
        Ok(result)
    }

    /// From a word `[k1, ..., kL]` meaning `s_{k1} o ... o s_{kL}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &k in word {
            p = p.compose(&Permutation::adjacent(n, k)?);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// `(self o other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// The points moved by this permutation.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&x| self.apply(x) != x).collect()
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] - 1;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Reduced word `[k1, ..., kL]` with `self = s_{k1} o ... o s_{kL}`.
    pub fn to_adjacent_word(&self) -> Vec<usize> {
        let mut arr = self.images.clone();
        let mut swaps = Vec::new();
        // bubble sort: each swap at position k right-multiplies by s_k
        let n = arr.len();
        for pass in 0..n {
            for k in 0..n.saturating_sub(1 + pass) {
                if arr[k] > arr[k + 1] {
                    arr.swap(k, k + 1);
                    swaps.push(k + 1);
                }
            }
        }
        swaps.reverse();
        swaps
    }

    /// Embed into `1..=n_big`, shifting every point by `offset`.
    pub fn embed(&self, n_big: usize, offset: usize) -> Result<Permutation> {
        if offset + self.degree() > n_big {
            return Err(Error::InvalidPermutation("embedding does not fit".into()));
        }
        let mut p = Permutation::identity(n_big);
        for x in 1..=self.degree() {
            p.images[offset + x - 1] = offset + self.apply(x);
        }
        Ok(p)
    }

    /// Cycle notation, fixed points omitted; `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut s = String::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x.to_string());
                x = self.apply(x);
            }
            s.push_str(&format!("({})", cyc.join(",")));
        }
        if s.is_empty() {
            "()".into()
        } else {
            s
        }
    }
}

/// See [`Permutation::to_adjacent_word`].
pub fn permutation_to_adjacent_word(p: &Permutation) -> Vec<usize> {
    p.to_adjacent_word()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Cycle notation on the smallest `n` covering all entries.
    fn from_str(s: &str) -> Result<Permutation> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Permutation::from_cycles(n, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transposition_word() {
        let p = Permutation::transposition(3, 1, 3).unwrap();
        assert_eq!(p.to_adjacent_word(), vec![1, 2, 1]);
        assert_eq!(Permutation::from_word(3, &[1, 2, 1]).unwrap(), p);
    }

    #[test]
    fn cycles_parse_right_to_left() {
        let p = Permutation::from_cycles(3, "(1,2)(2,3)").unwrap();
        assert_eq!(p.apply(3), 1);
        let q = Permutation::from_cycles(5, "(4,5)(1,2,3)").unwrap();
        assert_eq!(q.images(), &[2, 3, 1, 5, 4]);
        assert_eq!(q.to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(q.cycle_type(), vec![3, 2]);
        assert!(Permutation::from_cycles(3, "(1,4)").is_err());
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
    }

    fn perm_strategy() -> impl Strategy<Value = Permutation> {
        (1usize..8).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn word_reconstructs(p in perm_strategy()) {
            let w = p.to_adjacent_word();
            prop_assert_eq!(Permutation::from_word(p.degree(), &w).unwrap(), p.clone());
            // bubble sort yields a reduced word: length equals the inversion count
            let inv = (0..p.degree()).flat_map(|i| (i + 1..p.degree()).map(move |j| (i, j)))
                .filter(|&(i, j)| p.images()[i] > p.images()[j]).count();
            prop_assert_eq!(w.len(), inv);
        }

        #[test]
        fn cycle_string_round_trip(p in perm_strategy()) {
            let q = Permutation::from_cycles(p.degree(), &p.to_cycle_string()).unwrap();
            prop_assert_eq!(q, p.clone());
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}
