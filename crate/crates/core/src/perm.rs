//! Permutations in one-line notation and the statistics built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest supported number of letters. Values are stored as bytes.
pub const MAX_LETTERS: usize = u8::MAX as usize;

/// A permutation of `{1, ..., n}` in one-line notation, `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Box<[u8]>,
}

/// The simple reflection `s_i`, swapping `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleReflection(usize);

impl SimpleReflection {
    /// `index` must lie in `1..n`.
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index == 0 || index >= n {
            return Err(Error::MalformedWord(format!(
                "letter {index} is outside 1..={} for n = {n}",
                n.saturating_sub(1)
            )));
        }
        Ok(SimpleReflection(index))
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Running prefix maxima `M_k` and suffix minima `m_k` for `k = 1..n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixProfile {
    big_m: Vec<usize>,
    little_m: Vec<usize>,
}

impl PrefixProfile {
    /// `M_k = max{w(1), ..., w(k)}`.
    pub fn big_m(&self, k: usize) -> usize {
        self.big_m[k - 1]
    }

    /// `m_k = min{w(k+1), ..., w(n)}`.
    pub fn little_m(&self, k: usize) -> usize {
        self.little_m[k - 1]
    }

    pub fn big_m_all(&self) -> &[usize] {
        &self.big_m
    }

    pub fn little_m_all(&self) -> &[usize] {
        &self.little_m
    }

    /// Number of cut points, `n - 1`.
    pub fn len(&self) -> usize {
        self.big_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.big_m.is_empty()
    }
}

impl Permutation {
    /// Builds a permutation from its one-line notation.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::MalformedPermutation("empty permutation".into()));
        }
        if n > MAX_LETTERS {
            return Err(Error::MalformedPermutation(format!(
                "{n} letters exceeds the supported maximum of {MAX_LETTERS}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::MalformedPermutation(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::MalformedPermutation(format!("value {v} repeats")));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            values: values.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub(crate) fn from_bytes_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(values.iter().map(|&v| v as usize).collect()).is_ok());
        Permutation {
            values: values.into_boxed_slice(),
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((1..=n).collect())
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn reversal(n: usize) -> Result<Self> {
        Permutation::new((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w(i)` for a 1-indexed position `i`.
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1] as usize
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.values.iter().map(|&v| v as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values().collect()
    }

    pub(crate) fn as_bytes(&self) -> &[u8] {
        &self.values
    }

    /// `w^{-1}(v)`, the 1-indexed position holding value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.values
            .iter()
            .position(|&x| x as usize == v)
            .map(|p| p + 1)
            .unwrap_or_else(|| panic!("value {v} not in a permutation of {}", self.len()))
    }

    pub fn is_identity(&self) -> bool {
        self.values().enumerate().all(|(i, v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation::from_bytes_unchecked(inv)
    }

    /// The product `self * other` with maps acting on the right, so that
    /// `(self * other)(i) = self(other(i))` in one-line notation.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::MalformedPermutation(format!(
                "cannot compose permutations of {} and {} letters",
                self.len(),
                other.len()
            )));
        }
        let values = other
            .values
            .iter()
            .map(|&i| self.values[i as usize - 1])
            .collect();
        Ok(Permutation::from_bytes_unchecked(values))
    }

    /// `w s_i`: swaps the values in positions `i` and `i + 1`.
    pub fn mul_reflection_right(&self, s: SimpleReflection) -> Result<Self> {
        let i = self.check_reflection(s)?;
        let mut values = self.values.to_vec();
        values.swap(i - 1, i);
        Ok(Permutation::from_bytes_unchecked(values))
    }

    /// `s_i w`: swaps the positions of the values `i` and `i + 1`.
    pub fn mul_reflection_left(&self, s: SimpleReflection) -> Result<Self> {
        let i = self.check_reflection(s)?;
        let values = self
            .values
            .iter()
            .map(|&v| match v as usize {
                v if v == i => (i + 1) as u8,
                v if v == i + 1 => i as u8,
                v => v as u8,
            })
            .collect();
        Ok(Permutation::from_bytes_unchecked(values))
    }

    fn check_reflection(&self, s: SimpleReflection) -> Result<usize> {
        if s.index() >= self.len() {
            return Err(Error::MalformedWord(format!(
                "s_{} does not act on {} letters",
                s.index(),
                self.len()
            )));
        }
        Ok(s.index())
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn prefix_profile(&self) -> Result<PrefixProfile> {
        let n = self.len();
        if n < 2 {
            return Err(Error::ProfileUndefined);
        }
        let v = &self.values;
        let mut big_m = Vec::with_capacity(n - 1);
        let mut running = 0u8;
        for &x in &v[..n - 1] {
            running = running.max(x);
            big_m.push(running as usize);
        }
        let mut little_m = vec![0; n - 1];
        let mut running = u8::MAX;
        for k in (1..n).rev() {
            running = running.min(v[k]);
            little_m[k - 1] = running as usize;
        }
        Ok(PrefixProfile { big_m, little_m })
    }

    /// Indices `k` with `s_k` in every reduced word, i.e. `M_k > k`. Sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut running = 0usize;
        for (k, &x) in self.values[..self.len() - 1].iter().enumerate() {
            running = running.max(x as usize);
            if running > k + 1 {
                out.push(k + 1);
            }
        }
        out
    }

    pub fn support_size(&self) -> usize {
        let mut count = 0;
        let mut running = 0usize;
        for (k, &x) in self.values[..self.len() - 1].iter().enumerate() {
            running = running.max(x as usize);
            if running > k + 1 {
                count += 1;
            }
        }
        count
    }

    /// Number of repeated letters in any reduced word: `length - |support|`.
    pub fn rep(&self) -> usize {
        self.length() - self.support_size()
    }

    /// Deletes the largest letter and closes the gap.
    pub fn reduce(&self) -> Result<Self> {
        let n = self.len();
        if n < 2 {
            return Err(Error::CannotReduce);
        }
        let values = self
            .values
            .iter()
            .copied()
            .filter(|&v| v as usize != n)
            .collect();
        Ok(Permutation::from_bytes_unchecked(values))
    }

    /// `(w, reduce(w), reduce(reduce(w)), ...)` down to the one-letter permutation.
    pub fn iterated_reduce(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.len());
        let mut current = self.clone();
        while let Ok(next) = current.reduce() {
            out.push(current);
            current = next;
        }
        out.push(current);
        out
    }

    /// Contiguous-digit form, available when `n <= 9`.
    pub fn to_compact(&self) -> Option<String> {
        (self.len() <= 9).then(|| self.values().map(|v| char::from(b'0' + v as u8)).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace- or comma-separated integers, or a bare digit
    /// string with one letter per digit when `n <= 9`.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::MalformedPermutation("empty input".into()));
        }
        let is_separator = |c: char| c == ',' || c.is_whitespace();
        let values: Vec<usize> = if trimmed.contains(is_separator) {
            trimmed
                .split(is_separator)
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| {
                        Error::MalformedPermutation(format!("{tok:?} is not a positive integer"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            if !trimmed.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::MalformedPermutation(format!(
                    "{trimmed:?} is not a digit string"
                )));
            }
            if trimmed.len() > 9 {
                return Err(Error::MalformedPermutation(
                    "compact form is limited to 9 letters; separate values with spaces".into(),
                ));
            }
            trimmed.bytes().map(|b| (b - b'0') as usize).collect()
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
