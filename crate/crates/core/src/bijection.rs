//! The level-`N` assignment behind `rep(w) <= [321;3412](w)`.
//!
//! For `w` in `S_N` let `w̄` be `w` with the letter `N` deleted. Inserting
//! `N` creates one new repeated letter for each `k` in
//! `Repeat(w) = {k in supp(w̄) : w^{-1}(N) <= k}`, and each such `k` is
//! assigned an `N`-occurrence of 321 or 3412 in `w`. The prefix maxima
//! `M_k` and suffix minima `m_k` used throughout are those of `w̄`, never of
//! `w`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::patterns::{self, Occurrence, Pattern};
use crate::{Error, Permutation, PrefixProfile, Result};

/// `Repeat(w)` together with its host permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatSet {
    pub host: Permutation,
    pub indices: Vec<usize>,
}

impl RepeatSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices.binary_search(&k).is_ok()
    }
}

/// Which branch of the three-way definition produced an assigned pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// `N` left of `M_k`: the 321-occurrence `{N, M_k, m_k}`.
    I,
    /// `N` right of `M_k` and `w̄(k) > m_k`: the 321-occurrence `{N, w̄(k), m_k}`.
    II,
    /// Otherwise: the 3412-occurrence `{M_k, N, w̄(k), m_k}`.
    III,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedPattern {
    pub k: usize,
    pub case: Case,
    pub occurrence: Occurrence,
}

/// How the image of `k` under the level map was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum XiRule {
    #[serde(rename = "I")]
    CaseI,
    #[serde(rename = "II")]
    CaseII,
    #[serde(rename = "III")]
    CaseIII,
    /// The replacement `{N, M_k, w̄(k)}` for a non-minimal member of a
    /// colliding part.
    #[serde(rename = "+")]
    Plus,
}

impl From<Case> for XiRule {
    fn from(c: Case) -> Self {
        match c {
            Case::I => XiRule::CaseI,
            Case::II => XiRule::CaseII,
            Case::III => XiRule::CaseIII,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEntry {
    pub k: usize,
    #[serde(rename = "case")]
    pub rule: XiRule,
    pub values: Vec<usize>,
    #[serde(skip)]
    pub occurrence: Option<Occurrence>,
}

/// Everything computed at a single level `N = n`.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub repeat_set: RepeatSet,
    /// `Repeat(w)` split by equal `(M_k, m_k)`; each part is an interval, listed in order.
    pub parts: Vec<Vec<usize>>,
    /// `p_k(w)` for every `k` in `Repeat(w)`, in increasing `k`.
    pub assigned: Vec<AssignedPattern>,
    pub xi_map: Vec<XiEntry>,
    /// `k -> (p_k^+, p_k^-)` for every `k` where the replacement pair is defined.
    pub plus_minus: BTreeMap<usize, (Occurrence, Occurrence)>,
}

impl Assignment {
    /// Sorted value sets of the image of the level map.
    pub fn image(&self) -> Vec<Vec<usize>> {
        self.xi_map.iter().map(|e| sorted(&e.values)).collect()
    }

    pub fn is_injective(&self) -> bool {
        let image = self.image();
        let distinct: BTreeSet<_> = image.iter().collect();
        distinct.len() == image.len()
    }

    fn forbidden_for_witness(&self) -> BTreeSet<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = self
            .assigned
            .iter()
            .map(|a| a.occurrence.value_set())
            .collect();
        out.extend(self.plus_minus.values().map(|(plus, _)| plus.value_set()));
        out
    }
}

fn sorted(values: &[usize]) -> Vec<usize> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v
}

/// Shared data for one level: `w`, `w̄`, the profile of `w̄`, and `Repeat(w)`.
struct Level<'a> {
    w: &'a Permutation,
    top: usize,
    top_position: usize,
    reduced: Permutation,
    profile: Option<PrefixProfile>,
    repeat: Vec<usize>,
}

impl<'a> Level<'a> {
    fn new(w: &'a Permutation) -> Result<Self> {
        let reduced = w.reduce()?;
        let top = w.len();
        let top_position = w.position_of(top);
        let profile = reduced.prefix_profile().ok();
        let repeat = reduced
            .support()
            .into_iter()
            .filter(|&k| k >= top_position)
            .collect();
        Ok(Level {
            w,
            top,
            top_position,
            reduced,
            profile,
            repeat,
        })
    }

    fn contains(&self, k: usize) -> bool {
        self.repeat.binary_search(&k).is_ok()
    }

    /// `(M_k, m_k, w̄(k))`; only meaningful for `k` in `Repeat(w)`.
    fn triple(&self, k: usize) -> (usize, usize, usize) {
        let profile = self
            .profile
            .as_ref()
            .expect("a nonempty repeat set needs n >= 3");
        (profile.big_m(k), profile.little_m(k), self.reduced.get(k))
    }

    fn assign(&self, k: usize) -> Result<AssignedPattern> {
        if !self.contains(k) {
            return Err(Error::UndefinedAssignment { k });
        }
        let (big, small, at_k) = self.triple(k);
        let n = self.top;
        let (case, pattern, values) = if self.top_position < self.w.position_of(big) {
            (Case::I, Pattern::p321(), vec![n, big, small])
        } else if at_k > small {
            (Case::II, Pattern::p321(), vec![n, at_k, small])
        } else {
            if at_k >= small {
                return Err(Error::Invariant(format!(
                    "case III for k = {k} in {} needs w̄(k) = {at_k} < m_k = {small}",
                    self.w
                )));
            }
            (Case::III, Pattern::p3412(), vec![big, n, at_k, small])
        };
        let occurrence = Occurrence::from_values(self.w, pattern, &values).map_err(|e| {
            Error::Invariant(format!(
                "case {case} pattern for k = {k} in {}: {e}",
                self.w
            ))
        })?;
        Ok(AssignedPattern {
            k,
            case,
            occurrence,
        })
    }

    fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut last_key = None;
        for &k in &self.repeat {
            let (big, small, _) = self.triple(k);
            if last_key == Some((big, small)) {
                parts.last_mut().unwrap().push(k);
            } else {
                parts.push(vec![k]);
                last_key = Some((big, small));
            }
        }
        parts
    }

    fn part_of(&self, k: usize) -> Vec<usize> {
        self.parts()
            .into_iter()
            .find(|part| part.contains(&k))
            .unwrap_or_default()
    }

    fn plus_minus(&self, k: usize) -> Result<(Occurrence, Occurrence)> {
        if !self.contains(k) {
            return Err(Error::UndefinedAssignment { k });
        }
        let part = self.part_of(k);
        if part.first() == Some(&k) {
            return Err(Error::NotApplicable(format!(
                "{k} is the minimal element of its part {part:?}"
            )));
        }
        let (big, small, at_k) = self.triple(k);
        if self.top_position > self.w.position_of(big) {
            return Err(Error::NotApplicable(format!(
                "{} lies right of M_{k} = {big}, so the part {part:?} has no colliding patterns",
                self.top
            )));
        }
        let n = self.top;
        let p321 = Pattern::p321();
        let wrap =
            |which: &str, e: Error| Error::Invariant(format!("p_{k}^{which} in {}: {e}", self.w));
        let plus =
            Occurrence::from_values(self.w, p321, &[n, big, at_k]).map_err(|e| wrap("+", e))?;
        let minus =
            Occurrence::from_values(self.w, p321, &[n, at_k, small]).map_err(|e| wrap("-", e))?;
        Ok((plus, minus))
    }

    fn assignment(&self) -> Result<Assignment> {
        let assigned = self
            .repeat
            .iter()
            .map(|&k| self.assign(k))
            .collect::<Result<Vec<_>>>()?;
        let by_k: BTreeMap<usize, &AssignedPattern> = assigned.iter().map(|a| (a.k, a)).collect();
        let parts = self.parts();
        let mut xi_map = Vec::with_capacity(assigned.len());
        let mut plus_minus = BTreeMap::new();
        for part in &parts {
            let first = by_k[&part[0]];
            for &k in part {
                let own = by_k[&k];
                // Members of a part all share case I or all avoid it; only
                // case-I parts collide, and only those get the replacement.
                if k != part[0] && first.case == Case::I {
                    let pair = self.plus_minus(k)?;
                    xi_map.push(XiEntry {
                        k,
                        rule: XiRule::Plus,
                        values: pair.0.values.clone(),
                        occurrence: Some(pair.0.clone()),
                    });
                    plus_minus.insert(k, pair);
                } else {
                    xi_map.push(XiEntry {
                        k,
                        rule: own.case.into(),
                        values: own.occurrence.values.clone(),
                        occurrence: Some(own.occurrence.clone()),
                    });
                }
            }
        }
        Ok(Assignment {
            repeat_set: RepeatSet {
                host: self.w.clone(),
                indices: self.repeat.clone(),
            },
            parts,
            assigned,
            xi_map,
            plus_minus,
        })
    }
}

pub fn repeat_set(w: &Permutation) -> Result<RepeatSet> {
    let level = Level::new(w)?;
    Ok(RepeatSet {
        host: w.clone(),
        indices: level.repeat,
    })
}

/// `p_k(w)` with its case tag.
pub fn assign_pattern(w: &Permutation, k: usize) -> Result<AssignedPattern> {
    Level::new(w)?.assign(k)
}

/// The pair `(p_k^+, p_k^-) = ({N, M_k, w̄(k)}, {N, w̄(k), m_k})`.
///
/// Defined for non-minimal members of a part whose patterns coincide, which
/// are exactly the parts where `N` lies left of `M_k`.
pub fn plus_minus(w: &Permutation, k: usize) -> Result<(Occurrence, Occurrence)> {
    Level::new(w)?.plus_minus(k)
}

/// The level map: each `k` in `Repeat(w)` goes to `p_k(w)`, except that
/// non-minimal members of a colliding part go to `p_k^+(w)`.
pub fn xi(w: &Permutation) -> Result<Assignment> {
    Level::new(w)?.assignment()
}

/// Letters of each pattern in [`patterns::PHI`] that form its witness,
/// written as a subword of the pattern.
pub const WITNESS_TABLE: [(&str, &str); 10] = [
    ("4321", "421"),
    ("34512", "3512"),
    ("45123", "4513"),
    ("35412", "3512"),
    ("43512", "3512"),
    ("45132", "4513"),
    ("45213", "4523"),
    ("53412", "532"),
    ("45312", "532"),
    ("45231", "4523"),
];

fn witness_row(phi: &Pattern) -> Option<&'static str> {
    let text = phi.to_string();
    WITNESS_TABLE
        .iter()
        .find(|(p, _)| *p == text)
        .map(|(_, sub)| *sub)
}

fn sub_occurrence(
    w: &Permutation,
    phi: &Pattern,
    occ: &Occurrence,
    letters: &str,
) -> Result<Occurrence> {
    let phi_text = phi.to_string();
    let values: Vec<usize> = letters
        .chars()
        .map(|c| {
            occ.values[phi_text
                .find(c)
                .expect("witness letters come from the pattern")]
        })
        .collect();
    let pattern = if values.len() == 3 {
        Pattern::p321()
    } else {
        Pattern::p3412()
    };
    Occurrence::from_values(w, pattern, &values)
        .map_err(|e| Error::Invariant(format!("witness {letters} of {phi_text} in {w}: {e}")))
}

/// An `N`-occurrence of 321 or 3412 inside an `N`-occurrence of a pattern
/// of [`patterns::PHI`] that no `p_k(w)` or `p_k^+(w)` reaches.
///
/// For 4321 the row `421` can coincide with a case-II `p_k(w)` when `N` sits
/// right of `M_k`; in that configuration `432` is used instead.
pub fn phi_witness(w: &Permutation, occ: &Occurrence) -> Result<Occurrence> {
    let row = witness_row(&occ.pattern).ok_or_else(|| {
        Error::InvalidWitnessRequest(format!("{} is not one of the ten patterns", occ.pattern))
    })?;
    let genuine = Occurrence::from_positions(w, &occ.pattern, occ.positions.clone())
        .map(|o| o == *occ)
        .unwrap_or(false);
    if !genuine {
        return Err(Error::InvalidWitnessRequest(format!(
            "{occ:?} is not an occurrence in {w}"
        )));
    }
    if occ.top != w.len() {
        return Err(Error::InvalidWitnessRequest(format!(
            "the occurrence has top {} but the level is {}",
            occ.top,
            w.len()
        )));
    }
    let witness = sub_occurrence(w, &occ.pattern, occ, row)?;
    if occ.pattern != *Pattern::p4321() {
        return Ok(witness);
    }
    let forbidden = xi(w)?.forbidden_for_witness();
    if !forbidden.contains(&witness.value_set()) {
        return Ok(witness);
    }
    sub_occurrence(w, &occ.pattern, occ, "432")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub phi: Pattern,
    pub occurrence: Vec<usize>,
    pub witness: Vec<usize>,
}

/// Checks at level `N = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub w: Permutation,
    pub level: usize,
    pub rep: usize,
    /// `[321;3412]_N(w)`.
    pub patt: usize,
    pub repeat: Vec<usize>,
    pub xi: Vec<XiEntry>,
    /// Global avoidance of every pattern in the ten-pattern set.
    pub avoids_phi: bool,
    /// Whether some pattern of the ten has an `N`-occurrence.
    pub phi_at_level: bool,
    pub injective: bool,
    pub bijective: bool,
    pub witnesses: Vec<WitnessEntry>,
    pub verdict: Verdict,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

fn level_occurrence_sets(w: &Permutation, top: usize) -> BTreeSet<Vec<usize>> {
    [Pattern::p321(), Pattern::p3412()]
        .into_iter()
        .flat_map(|p| patterns::occurrences_with_top(w, p, top))
        .map(|o| o.value_set())
        .collect()
}

pub fn verify_level(w: &Permutation) -> Result<LevelReport> {
    let level = Level::new(w)?;
    let n = level.top;
    let mut problems = Vec::new();
    let targets = level_occurrence_sets(w, n);
    let patt = targets.len();

    let rep = w.rep();
    let expected_rep = level.reduced.rep() + level.repeat.len();
    if rep != expected_rep {
        problems.push(format!(
            "rep(w) = {rep} but rep(w̄) + |Repeat(w)| = {expected_rep}"
        ));
    }

    let phi_occurrences: Vec<Occurrence> = patterns::phi_patterns()
        .iter()
        .filter_map(|phi| patterns::first_occurrence_with_top(w, phi, n))
        .collect();
    let phi_at_level = !phi_occurrences.is_empty();

    let (xi_entries, injective, bijective, witnesses) = match level.assignment() {
        Ok(assignment) => {
            let image = assignment.image();
            let injective = assignment.is_injective();
            if !injective {
                problems.push("the level map is not injective".into());
            }
            let image_set: BTreeSet<Vec<usize>> = image.iter().cloned().collect();
            if let Some(stray) = image_set.iter().find(|v| !targets.contains(*v)) {
                problems.push(format!("image element {stray:?} is not an N-occurrence"));
            }
            let bijective = injective && image_set == targets;
            if phi_at_level {
                if bijective || level.repeat.len() >= patt {
                    problems.push(format!(
                        "expected |Repeat| < [321;3412]_N, got {} vs {patt}",
                        level.repeat.len()
                    ));
                }
            } else if !bijective || level.repeat.len() != patt {
                problems.push(format!(
                    "expected a bijection, got |Repeat| = {} and [321;3412]_N = {patt}",
                    level.repeat.len()
                ));
            }
            let forbidden = assignment.forbidden_for_witness();
            let mut witnesses = Vec::new();
            for occ in &phi_occurrences {
                match phi_witness(w, occ) {
                    Ok(wit) => {
                        let set = wit.value_set();
                        if image_set.contains(&set) || forbidden.contains(&set) {
                            problems.push(format!(
                                "witness {:?} for {} lies in the image",
                                wit.values, occ.pattern
                            ));
                        }
                        witnesses.push(WitnessEntry {
                            phi: occ.pattern.clone(),
                            occurrence: occ.values.clone(),
                            witness: wit.values,
                        });
                    }
                    Err(e) => problems.push(e.to_string()),
                }
            }
            (assignment.xi_map, injective, bijective, witnesses)
        }
        Err(e) => {
            problems.push(e.to_string());
            (Vec::new(), false, false, Vec::new())
        }
    };

    let verdict = if level.repeat.len() == patt {
        Verdict::Equal
    } else {
        Verdict::Strict
    };
    Ok(LevelReport {
        w: w.clone(),
        level: n,
        rep,
        patt,
        repeat: level.repeat.clone(),
        xi: xi_entries,
        avoids_phi: patterns::avoids_phi(w),
        phi_at_level,
        injective,
        bijective,
        witnesses,
        verdict,
        ok: problems.is_empty(),
        problems,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub w: Permutation,
    pub rep: usize,
    pub patt: usize,
    pub avoids_phi: bool,
    pub verdict: Verdict,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

/// `rep(w) <= [321;3412](w)`, with equality exactly under avoidance of the
/// ten patterns; also the special cases at 0 and 1.
pub fn verify_main(w: &Permutation) -> TheoremReport {
    let rep = w.rep();
    let patt = patterns::patt_total(w);
    let avoids = patterns::avoids_phi(w);
    let mut problems = Vec::new();
    if rep > patt {
        problems.push(format!("rep = {rep} exceeds [321;3412] = {patt}"));
    }
    if (rep == patt) != avoids {
        problems.push(format!(
            "rep = {rep}, [321;3412] = {patt}, but avoidance is {avoids}"
        ));
    }
    for small in [0, 1] {
        if (rep == small) != (patt == small) {
            problems.push(format!(
                "rep = {rep} and [321;3412] = {patt} disagree at {small}"
            ));
        }
    }
    TheoremReport {
        w: w.clone(),
        rep,
        patt,
        avoids_phi: avoids,
        verdict: if rep == patt {
            Verdict::Equal
        } else {
            Verdict::Strict
        },
        ok: problems.is_empty(),
        problems,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageImage {
    /// Size of the permutation at this stage, which is also the top value.
    pub level: usize,
    pub k: usize,
    #[serde(rename = "case")]
    pub rule: XiRule,
    pub values: Vec<usize>,
    /// Positions of `values` in the original permutation.
    pub positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub w: Permutation,
    pub rep: usize,
    pub patt: usize,
    pub stages: Vec<StageImage>,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

/// Runs the level map at every stage of the iterated deletion and checks
/// that the images together match every 321- and 3412-occurrence of `w`.
pub fn verify_global_bijection(w: &Permutation) -> Result<BijectionReport> {
    if !patterns::avoids_phi(w) {
        return Err(Error::NotApplicable(format!(
            "{w} contains a pattern of the ten-pattern set"
        )));
    }
    let mut stages = Vec::new();
    let mut problems = Vec::new();
    for stage in w.iterated_reduce().iter().filter(|s| s.len() >= 2) {
        let assignment = match xi(stage) {
            Ok(a) => a,
            Err(e) => {
                problems.push(format!("stage {}: {e}", stage.len()));
                continue;
            }
        };
        for entry in assignment.xi_map {
            // Deleting larger letters never changes the remaining values, so
            // a value set locates the same letters in `w`.
            let mut positions: Vec<usize> =
                entry.values.iter().map(|&v| w.position_of(v)).collect();
            positions.sort_unstable();
            let values = positions.iter().map(|&i| w.get(i)).collect();
            stages.push(StageImage {
                level: stage.len(),
                k: entry.k,
                rule: entry.rule,
                values,
                positions,
            });
        }
    }
    let image: Vec<Vec<usize>> = stages.iter().map(|s| sorted(&s.values)).collect();
    let image_set: BTreeSet<Vec<usize>> = image.iter().cloned().collect();
    if image_set.len() != image.len() {
        problems.push("two stages share an image".into());
    }
    let targets: BTreeSet<Vec<usize>> = [Pattern::p321(), Pattern::p3412()]
        .into_iter()
        .flat_map(|p| patterns::occurrences(w, p))
        .map(|o| o.value_set())
        .collect();
    if image_set != targets {
        problems.push(format!(
            "images cover {} of {} occurrences",
            image_set.intersection(&targets).count(),
            targets.len()
        ));
    }
    Ok(BijectionReport {
        w: w.clone(),
        rep: w.rep(),
        patt: targets.len(),
        stages,
        ok: problems.is_empty(),
        problems,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub w: Permutation,
    pub rep: usize,
    pub patt: usize,
    /// Levels `r` at which some pattern of the ten has an `r`-occurrence.
    pub phi_tops: Vec<usize>,
    pub ok: bool,
}

/// `[321;3412](w) - rep(w) >= |{r : some pattern of the ten has an r-occurrence}|`.
pub fn verify_bound(w: &Permutation) -> BoundReport {
    let rep = w.rep();
    let patt = patterns::patt_total(w);
    let phi_tops: Vec<usize> = patterns::phi_top_values(w).into_iter().collect();
    BoundReport {
        w: w.clone(),
        ok: patt >= rep && patt - rep >= phi_tops.len(),
        rep,
        patt,
        phi_tops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn vals(o: &Occurrence) -> Vec<usize> {
        o.value_set()
    }

    #[test]
    fn repeat_set_examples() {
        assert_eq!(repeat_set(&p("35412")).unwrap().indices, vec![2, 3]);
        assert!(repeat_set(&p("12345")).unwrap().is_empty());
        assert_eq!(repeat_set(&p("4321")).unwrap().indices, vec![1, 2]);
        assert_eq!(repeat_set(&p("1")), Err(Error::CannotReduce));
        assert!(repeat_set(&p("21")).unwrap().is_empty());
    }

    #[test]
    fn assign_pattern_examples() {
        let a = assign_pattern(&p("35412"), 2).unwrap();
        assert_eq!((a.case, vals(&a.occurrence)), (Case::I, vec![1, 4, 5]));
        let a = assign_pattern(&p("35412"), 3).unwrap();
        assert_eq!((a.case, vals(&a.occurrence)), (Case::I, vec![2, 4, 5]));
        let a = assign_pattern(&p("45123"), 2).unwrap();
        assert_eq!((a.case, vals(&a.occurrence)), (Case::III, vec![1, 2, 4, 5]));
        assert_eq!(a.occurrence.values, vec![4, 5, 1, 2]);
        assert_eq!(a.occurrence.top, 5);
        assert_eq!(
            assign_pattern(&p("35412"), 1),
            Err(Error::UndefinedAssignment { k: 1 })
        );
    }

    #[test]
    fn case_two_example() {
        // w̄ = 4231: M = (4,4,4), m = (1,1,1); 5 sits right of 4.
        let a = assign_pattern(&p("45231"), 2).unwrap();
        assert_eq!(a.case, Case::II);
        assert_eq!(a.occurrence.values, vec![5, 2, 1]);
    }

    #[test]
    fn plus_minus_examples() {
        let (plus, minus) = plus_minus(&p("4321"), 2).unwrap();
        assert_eq!(plus.values, vec![4, 3, 2]);
        assert_eq!(minus.values, vec![4, 2, 1]);

        let w = p("54321");
        assert_eq!(xi(&w).unwrap().parts, vec![vec![1, 2, 3]]);
        let (plus, minus) = plus_minus(&w, 2).unwrap();
        assert_eq!(plus.values, vec![5, 4, 3]);
        assert_eq!(minus.values, vec![5, 3, 1]);

        assert!(matches!(
            plus_minus(&p("35412"), 3),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            plus_minus(&p("4321"), 1),
            Err(Error::NotApplicable(_))
        ));
        // Part {2, 3} of 45231 has N right of M, so no replacement exists.
        assert!(matches!(
            plus_minus(&p("45231"), 3),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(
            plus_minus(&p("4321"), 3),
            Err(Error::UndefinedAssignment { k: 3 })
        );
    }

    #[test]
    fn xi_examples() {
        let a = xi(&p("35412")).unwrap();
        let image: Vec<_> = a.xi_map.iter().map(|e| (e.k, e.values.clone())).collect();
        assert_eq!(image, vec![(2, vec![5, 4, 1]), (3, vec![5, 4, 2])]);
        assert_eq!(a.parts, vec![vec![2], vec![3]]);
        assert!(!a.image().contains(&vec![1, 2, 3, 5]));

        assert!(xi(&p("12345")).unwrap().xi_map.is_empty());

        let a = xi(&p("4321")).unwrap();
        let image: Vec<_> = a
            .xi_map
            .iter()
            .map(|e| (e.k, e.rule, e.values.clone()))
            .collect();
        assert_eq!(
            image,
            vec![
                (1, XiRule::CaseI, vec![4, 3, 1]),
                (2, XiRule::Plus, vec![4, 3, 2])
            ]
        );
        assert!(a.is_injective());
        assert!(!a.image().contains(&vec![1, 2, 4]));
        assert_eq!(xi(&p("1")).unwrap_err(), Error::CannotReduce);
    }

    #[test]
    fn phi_witness_examples() {
        let cases = [
            ("4321", vec![4, 2, 1]),
            ("35412", vec![3, 5, 1, 2]),
            ("45231", vec![4, 5, 2, 3]),
        ];
        for (s, expected) in cases {
            let w = p(s);
            let phi: Pattern = s.parse().unwrap();
            let occ = patterns::occurrences(&w, &phi).remove(0);
            assert_eq!(phi_witness(&w, &occ).unwrap().values, expected, "{s}");
        }
    }

    #[test]
    fn phi_witness_falls_back_for_4321() {
        // In 45321 the row 421 gives {5,2,1}, which is p_3 (case II).
        let w = p("45321");
        let occ = patterns::first_occurrence_with_top(&w, Pattern::p4321(), 5).unwrap();
        assert_eq!(occ.values, vec![5, 3, 2, 1]);
        let a = xi(&w).unwrap();
        assert!(a.image().contains(&vec![1, 2, 5]));
        let wit = phi_witness(&w, &occ).unwrap();
        assert_eq!(wit.values, vec![5, 3, 2]);
        assert!(!a.image().contains(&wit.value_set()));
    }

    #[test]
    fn phi_witness_rejects_bad_requests() {
        let w = p("54321");
        let low = patterns::occurrences_with_top(&w, Pattern::p4321(), 4).remove(0);
        assert!(matches!(
            phi_witness(&w, &low),
            Err(Error::InvalidWitnessRequest(_))
        ));
        let not_phi = patterns::occurrences(&w, Pattern::p321()).remove(0);
        assert!(matches!(
            phi_witness(&w, &not_phi),
            Err(Error::InvalidWitnessRequest(_))
        ));
        let mut forged = patterns::occurrences_with_top(&w, Pattern::p4321(), 5).remove(0);
        forged.values[1] = 1;
        assert!(matches!(
            phi_witness(&w, &forged),
            Err(Error::InvalidWitnessRequest(_))
        ));
    }

    #[test]
    fn verify_level_examples() {
        let r = verify_level(&p("35412")).unwrap();
        assert_eq!(
            (r.repeat.len(), r.patt, r.phi_at_level, r.verdict),
            (2, 3, true, Verdict::Strict)
        );
        assert!(r.ok, "{:?}", r.problems);

        let r = verify_level(&p("3412")).unwrap();
        assert_eq!(
            (r.repeat.len(), r.patt, r.phi_at_level, r.verdict),
            (1, 1, false, Verdict::Equal)
        );
        assert!(r.bijective && r.ok);
        assert_eq!(r.xi[0].values, vec![3, 4, 1, 2]);
        assert_eq!(r.xi[0].rule, XiRule::CaseIII);

        let r = verify_level(&p("1234")).unwrap();
        assert_eq!((r.repeat.len(), r.patt, r.verdict), (0, 0, Verdict::Equal));
        assert!(r.ok && r.bijective);
    }

    #[test]
    fn verify_main_examples() {
        let r = verify_main(&p("35412"));
        assert_eq!(
            (r.rep, r.patt, r.avoids_phi, r.verdict),
            (3, 4, false, Verdict::Strict)
        );
        assert!(r.ok);
        let r = verify_main(&p("45312"));
        assert_eq!((r.rep, r.patt, r.verdict), (4, 5, Verdict::Strict));
        let r = verify_main(&p("12345"));
        assert_eq!(
            (r.rep, r.patt, r.avoids_phi, r.verdict),
            (0, 0, true, Verdict::Equal)
        );
    }

    #[test]
    fn global_bijection_examples() {
        let r = verify_global_bijection(&p("321")).unwrap();
        assert_eq!(r.stages.len(), 1);
        assert_eq!(
            (r.stages[0].level, r.stages[0].values.clone()),
            (3, vec![3, 2, 1])
        );
        assert!(r.ok);

        let r = verify_global_bijection(&p("3412")).unwrap();
        assert_eq!(r.stages.len(), 1);
        assert_eq!(
            (r.stages[0].level, r.stages[0].values.clone()),
            (4, vec![3, 4, 1, 2])
        );

        let r = verify_global_bijection(&p("1234")).unwrap();
        assert!(r.stages.is_empty() && r.ok);

        assert!(matches!(
            verify_global_bijection(&p("4321")),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn verify_bound_examples() {
        let r = verify_bound(&p("4321"));
        assert_eq!(
            (r.patt - r.rep, r.phi_tops.clone(), r.ok),
            (1, vec![4], true)
        );
        let r = verify_bound(&p("54321"));
        assert_eq!(
            (r.patt, r.rep, r.phi_tops.clone(), r.ok),
            (10, 6, vec![4, 5], true)
        );
        let r = verify_bound(&p("12345"));
        assert_eq!((r.patt, r.rep, r.phi_tops.len(), r.ok), (0, 0, 0, true));
    }

    #[test]
    fn report_json_fields() {
        let json = serde_json::to_value(verify_level(&p("4321")).unwrap()).unwrap();
        for field in [
            "w",
            "rep",
            "patt",
            "repeat",
            "xi",
            "avoids_phi",
            "verdict",
            "ok",
        ] {
            assert!(json.get(field).is_some(), "missing {field}");
        }
        assert_eq!(json["verdict"], "strict");
        assert_eq!(
            json["xi"][1],
            serde_json::json!({"k": 2, "case": "+", "values": [4, 3, 2]})
        );
        let json = serde_json::to_value(verify_main(&p("3412"))).unwrap();
        assert_eq!(json["verdict"], "equal");
    }
}
