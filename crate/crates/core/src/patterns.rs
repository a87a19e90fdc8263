//! Classical pattern containment: occurrence enumeration, counts split by the
//! largest letter of each occurrence, and avoidance of the ten patterns in
//! [`PHI`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Permutation, Result};

/// The ten patterns whose avoidance characterizes `rep = [321;3412]`,
/// ordered by length so that 4321 is tried first.
pub const PHI: [&str; 10] = [
    "4321", "34512", "45123", "35412", "43512", "45132", "45213", "53412", "45312", "45231",
];

/// A pattern, i.e. a permutation read up to order-isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(perm: Permutation) -> Self {
        Pattern(perm)
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-indexed position of the pattern's largest letter.
    pub fn top_index(&self) -> usize {
        self.0.position_of(self.len())
    }

    pub fn p321() -> &'static Pattern {
        static P: OnceLock<Pattern> = OnceLock::new();
        P.get_or_init(|| "321".parse().unwrap())
    }

    pub fn p3412() -> &'static Pattern {
        static P: OnceLock<Pattern> = OnceLock::new();
        P.get_or_init(|| "3412".parse().unwrap())
    }

    pub fn p4321() -> &'static Pattern {
        &phi_patterns()[0]
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.to_compact() {
            Some(compact) => f.write_str(&compact),
            None => write!(f, "{}", self.0),
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.parse().map(Pattern)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The patterns of [`PHI`], parsed once.
pub fn phi_patterns() -> &'static [Pattern] {
    static PHI_SET: OnceLock<Vec<Pattern>> = OnceLock::new();
    PHI_SET.get_or_init(|| PHI.iter().map(|s| s.parse().unwrap()).collect())
}

pub fn is_phi(p: &Pattern) -> bool {
    phi_patterns().contains(p)
}

/// An occurrence of `pattern` in a host permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub pattern: Pattern,
    /// Strictly increasing, 1-indexed.
    pub positions: Vec<usize>,
    /// Host values at `positions`.
    pub values: Vec<usize>,
    /// Largest of `values`; this is an occurrence "at level `top`".
    pub top: usize,
}

impl Occurrence {
    /// Builds the occurrence of `pattern` in `w` formed by `values`, which
    /// may be given in any order. Fails unless the values, read left to
    /// right in `w`, are order-isomorphic to `pattern`.
    pub fn from_values(w: &Permutation, pattern: &Pattern, values: &[usize]) -> Result<Self> {
        let mut positions = Vec::with_capacity(values.len());
        for &v in values {
            if v == 0 || v > w.len() {
                return Err(Error::Invariant(format!(
                    "value {v} is not a letter of {w}"
                )));
            }
            positions.push(w.position_of(v));
        }
        positions.sort_unstable();
        Occurrence::from_positions(w, pattern, positions)
    }

    /// Builds the occurrence at the given 1-indexed positions, checking it.
    pub fn from_positions(
        w: &Permutation,
        pattern: &Pattern,
        positions: Vec<usize>,
    ) -> Result<Self> {
        if positions.len() != pattern.len()
            || positions.windows(2).any(|p| p[0] >= p[1])
            || positions.iter().any(|&i| i == 0 || i > w.len())
        {
            return Err(Error::Invariant(format!(
                "positions {positions:?} do not select {} letters of {w}",
                pattern.len()
            )));
        }
        let values: Vec<usize> = positions.iter().map(|&i| w.get(i)).collect();
        if !same_relative_order(&values, pattern) {
            return Err(Error::Invariant(format!(
                "values {values:?} in {w} are not an occurrence of {pattern}"
            )));
        }
        let top = *values.iter().max().expect("patterns are nonempty");
        Ok(Occurrence {
            pattern: pattern.clone(),
            positions,
            values,
            top,
        })
    }

    /// The values as a sorted set; two occurrences in the same host are equal
    /// exactly when these agree.
    pub fn value_set(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        v.sort_unstable();
        v
    }

    /// Compact rendering of the values in position order, e.g. `541`.
    pub fn values_text(&self) -> String {
        let sep = if self.values.iter().any(|&v| v > 9) {
            " "
        } else {
            ""
        };
        self.values
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

fn same_relative_order(values: &[usize], pattern: &Pattern) -> bool {
    let p = pattern.perm().as_bytes();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if (values[i] < values[j]) != (p[i] < p[j]) {
                return false;
            }
        }
    }
    true
}

/// Depth-first subsequence scan with pruning on partial relative order.
/// Calls `visit` with 0-indexed positions of each occurrence, in
/// lexicographic order of position tuples. When `top` is set, only
/// occurrences whose largest value equals it are produced.
fn scan<F>(w: &[u8], p: &[u8], top: Option<u8>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = p.len();
    if k == 0 || k > w.len() {
        return ControlFlow::Continue(());
    }
    let mut chosen = vec![0usize; k];
    scan_from(w, p, top, 0, 0, &mut chosen, &mut visit)
}

fn scan_from<F>(
    w: &[u8],
    p: &[u8],
    top: Option<u8>,
    depth: usize,
    start: usize,
    chosen: &mut [usize],
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = p.len();
    if depth == k {
        return visit(chosen);
    }
    let want_top = p[depth] as usize == k;
    let last_start = w.len() - (k - depth);
    'candidates: for j in start..=last_start {
        let v = w[j];
        if let Some(t) = top {
            if v > t || (want_top && v != t) {
                continue;
            }
        }
        for s in 0..depth {
            if (v > w[chosen[s]]) != (p[depth] > p[s]) {
                continue 'candidates;
            }
        }
        chosen[depth] = j;
        scan_from(w, p, top, depth + 1, j + 1, chosen, visit)?;
    }
    ControlFlow::Continue(())
}

fn make_occurrence(w: &Permutation, p: &Pattern, zero_based: &[usize]) -> Occurrence {
    let positions: Vec<usize> = zero_based.iter().map(|&i| i + 1).collect();
    let values: Vec<usize> = zero_based
        .iter()
        .map(|&i| w.as_bytes()[i] as usize)
        .collect();
    let top = *values.iter().max().unwrap();
    Occurrence {
        pattern: p.clone(),
        positions,
        values,
        top,
    }
}

/// All occurrences of `p` in `w`, ordered lexicographically by positions.
pub fn occurrences(w: &Permutation, p: &Pattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let _ = scan(w.as_bytes(), p.perm().as_bytes(), None, |pos| {
        out.push(make_occurrence(w, p, pos));
        ControlFlow::Continue(())
    });
    out
}

/// Occurrences of `p` in `w` whose largest value is `top`.
pub fn occurrences_with_top(w: &Permutation, p: &Pattern, top: usize) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if top == 0 || top > w.len() {
        return out;
    }
    let _ = scan(w.as_bytes(), p.perm().as_bytes(), Some(top as u8), |pos| {
        out.push(make_occurrence(w, p, pos));
        ControlFlow::Continue(())
    });
    out
}

pub fn count(w: &Permutation, p: &Pattern) -> usize {
    let mut c = 0;
    let _ = scan(w.as_bytes(), p.perm().as_bytes(), None, |_| {
        c += 1;
        ControlFlow::Continue(())
    });
    c
}

/// `[p]_N(w)`: the number of occurrences of `p` with largest value `top`.
pub fn count_with_top(w: &Permutation, p: &Pattern, top: usize) -> usize {
    if top == 0 || top > w.len() {
        return 0;
    }
    let mut c = 0;
    let _ = scan(w.as_bytes(), p.perm().as_bytes(), Some(top as u8), |_| {
        c += 1;
        ControlFlow::Continue(())
    });
    c
}

/// `N -> [p]_N(w)`, listing only levels with at least one occurrence.
pub fn count_by_top(w: &Permutation, p: &Pattern) -> BTreeMap<usize, usize> {
    let bytes = w.as_bytes();
    let mut out = BTreeMap::new();
    let _ = scan(bytes, p.perm().as_bytes(), None, |pos| {
        let top = pos.iter().map(|&i| bytes[i] as usize).max().unwrap();
        *out.entry(top).or_insert(0) += 1;
        ControlFlow::Continue(())
    });
    out
}

/// `[321;3412]` in total and per level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PattCount {
    pub total: usize,
    pub per_top: BTreeMap<usize, usize>,
}

pub fn patt_321_3412(w: &Permutation) -> PattCount {
    let mut per_top = count_by_top(w, Pattern::p321());
    for (top, c) in count_by_top(w, Pattern::p3412()) {
        *per_top.entry(top).or_insert(0) += c;
    }
    PattCount {
        total: per_top.values().sum(),
        per_top,
    }
}

/// `[321;3412](w)` without the per-level split.
pub fn patt_total(w: &Permutation) -> usize {
    count(w, Pattern::p321()) + count(w, Pattern::p3412())
}

/// `[321;3412]_N(w)`.
pub fn patt_at_top(w: &Permutation, top: usize) -> usize {
    count_with_top(w, Pattern::p321(), top) + count_with_top(w, Pattern::p3412(), top)
}

/// Stops at the first witness.
pub fn contains(w: &Permutation, p: &Pattern) -> bool {
    scan(w.as_bytes(), p.perm().as_bytes(), None, |_| {
        ControlFlow::Break(())
    })
    .is_break()
}

/// First occurrence of `p` in `w` with largest value `top`, if any.
pub fn first_occurrence_with_top(w: &Permutation, p: &Pattern, top: usize) -> Option<Occurrence> {
    if top == 0 || top > w.len() {
        return None;
    }
    let mut found = None;
    let _ = scan(w.as_bytes(), p.perm().as_bytes(), Some(top as u8), |pos| {
        found = Some(make_occurrence(w, p, pos));
        ControlFlow::Break(())
    });
    found
}

pub fn avoids_phi(w: &Permutation) -> bool {
    !phi_patterns().iter().any(|phi| contains(w, phi))
}

/// Whether some pattern of [`PHI`] has an occurrence in `w` with largest value `top`.
pub fn has_phi_at_top(w: &Permutation, top: usize) -> bool {
    phi_patterns()
        .iter()
        .any(|phi| first_occurrence_with_top(w, phi, top).is_some())
}

/// All `r` such that some pattern of [`PHI`] has an `r`-occurrence in `w`.
pub fn phi_top_values(w: &Permutation) -> BTreeSet<usize> {
    (4..=w.len()).filter(|&r| has_phi_at_top(w, r)).collect()
}
