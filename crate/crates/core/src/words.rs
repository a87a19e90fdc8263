//! Reduced decompositions: evaluation, the canonical word obtained by moving
//! the largest letter into place, and a brute-force enumerator of all
//! reduced words used as an oracle for the support statistic.

use std::collections::BTreeSet;
use std::fmt;

use crate::perm::SimpleReflection;
use crate::{Error, Permutation, Result};

/// Default ceiling on `n` for [`all_reduced_words`].
pub const DEFAULT_ORACLE_BOUND: usize = 6;

/// A reduced word `s_{i_1} ... s_{i_l}` for a permutation of `ambient_n` letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    letters: Vec<usize>,
    ambient_n: usize,
}

impl ReducedWord {
    /// Checks letter bounds and reducedness.
    pub fn new(letters: Vec<usize>, ambient_n: usize) -> Result<Self> {
        let w = evaluate(&letters, ambient_n)?;
        if w.length() != letters.len() {
            return Err(Error::MalformedWord(format!(
                "{} is not reduced: it evaluates to {w}, of length {}",
                format_letters(&letters),
                w.length()
            )));
        }
        Ok(ReducedWord { letters, ambient_n })
    }

    /// Parses the comma-separated text form (`-` for the empty word).
    pub fn parse(text: &str, ambient_n: usize) -> Result<Self> {
        ReducedWord::new(parse_letters(text)?, ambient_n)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn evaluate(&self) -> Permutation {
        evaluate(&self.letters, self.ambient_n).expect("letters were checked on construction")
    }

    /// Distinct letters, sorted.
    pub fn letter_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.letters.iter().copied().collect();
        set.into_iter().collect()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

fn format_letters(letters: &[usize]) -> String {
    if letters.is_empty() {
        return "-".to_string();
    }
    letters
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses `"2,1,3"` into letters. `"-"` and the empty string are the empty word.
pub fn parse_letters(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| Error::MalformedWord(format!("{tok:?} is not a letter index")))
        })
        .collect()
}

/// Multiplies out `s_{i_1} ... s_{i_l}` starting from the identity of `S_n`.
/// Each factor acts on the right, swapping two adjacent positions.
pub fn evaluate(letters: &[usize], n: usize) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::MalformedWord("ambient n must be at least 1".into()));
    }
    let mut values: Vec<usize> = (1..=n).collect();
    for &i in letters {
        let s = SimpleReflection::new(i, n)?;
        values.swap(s.index() - 1, s.index());
    }
    Permutation::new(values)
}

/// The word obtained by recursively writing `w = reduce(w) s_{N-1} ... s_{w^{-1}(N)}`.
pub fn canonical_word(w: &Permutation) -> ReducedWord {
    let mut letters = Vec::with_capacity(w.length());
    // Stages run from w down to one letter; the word is built from the bottom up.
    for stage in w.iterated_reduce().iter().rev().filter(|s| s.len() >= 2) {
        let top = stage.len();
        let pos = stage.position_of(top);
        letters.extend((pos..top).rev());
    }
    ReducedWord {
        letters,
        ambient_n: w.len(),
    }
}

/// Visits every reduced word of `w` exactly once. A word for `w` ends in
/// `s_i` exactly when `i` is a descent of `w`, so the search peels one
/// descent per step.
pub fn for_each_reduced_word<F>(w: &Permutation, bound: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    if w.len() > bound {
        return Err(Error::OracleBoundExceeded { n: w.len(), bound });
    }
    let mut values = w.to_vec();
    let len = w.length();
    let mut suffix = vec![0; len];
    peel(&mut values, len, &mut suffix, &mut visit);
    Ok(())
}

fn peel<F: FnMut(&[usize])>(
    values: &mut [usize],
    remaining: usize,
    word: &mut [usize],
    visit: &mut F,
) {
    if remaining == 0 {
        visit(word);
        return;
    }
    for i in 0..values.len() - 1 {
        if values[i] > values[i + 1] {
            values.swap(i, i + 1);
            word[remaining - 1] = i + 1;
            peel(values, remaining - 1, word, visit);
            values.swap(i, i + 1);
        }
    }
}

/// Every reduced word of `w`, sorted lexicographically.
pub fn all_reduced_words(w: &Permutation, bound: usize) -> Result<Vec<ReducedWord>> {
    let mut out = Vec::new();
    for_each_reduced_word(w, bound, |letters| {
        out.push(ReducedWord {
            letters: letters.to_vec(),
            ambient_n: w.len(),
        })
    })?;
    out.sort();
    Ok(out)
}

/// True when all reduced words of `w` use one and the same set of letters
/// and that set matches [`Permutation::support`].
pub fn check_support_well_defined(w: &Permutation, bound: usize) -> Result<bool> {
    let expected = w.support();
    let mut consistent = true;
    let mut mask = vec![false; w.len()];
    for_each_reduced_word(w, bound, |letters| {
        if !consistent {
            return;
        }
        mask.iter_mut().for_each(|m| *m = false);
        for &i in letters {
            mask[i] = true;
        }
        let used = mask.iter().filter(|&&m| m).count();
        consistent = used == expected.len() && expected.iter().all(|&k| mask[k]);
    })?;
    Ok(consistent)
}
