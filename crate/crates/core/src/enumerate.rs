//! Ranged iteration over `S_n` in lexicographic order and verification
//! campaigns over whole symmetric groups.
//!
//! Work is split into contiguous rank ranges, one per worker. Workers share
//! nothing and their partial reports merge in rank order, so the result does
//! not depend on the number of jobs.

use std::io::Write;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bijection::{self, LevelReport, TheoremReport, Verdict};
use crate::{patterns, Error, Permutation, Result};

/// Largest `n` a campaign accepts unless configured otherwise.
pub const DEFAULT_MAX_N: usize = 10;

/// `n!` fits in a `u64` up to here.
pub const MAX_RANKABLE_N: usize = 20;

pub fn factorial(n: usize) -> Result<u64> {
    if n > MAX_RANKABLE_N {
        return Err(Error::Range(format!("{n}! does not fit in 64 bits")));
    }
    Ok((1..=n as u64).product())
}

/// The permutation of lexicographic rank `rank` in `S_n`, via the factorial
/// number system.
pub fn unrank(n: usize, rank: u64) -> Result<Permutation> {
    let total = factorial(n)?;
    if n == 0 || rank >= total {
        return Err(Error::Range(format!(
            "rank {rank} is outside 0..{total} for n = {n}"
        )));
    }
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity(n);
    let mut rest = rank;
    for i in (0..n).rev() {
        let f = factorial(i)?;
        let idx = (rest / f) as usize;
        rest %= f;
        out.push(pool.remove(idx));
    }
    Ok(Permutation::from_bytes_unchecked(out))
}

/// Lexicographic rank of `w` among permutations of the same size.
pub fn rank(w: &Permutation) -> Result<u64> {
    let n = w.len();
    let bytes = w.as_bytes();
    let mut r = 0u64;
    for i in 0..n {
        let smaller_after = bytes[i + 1..].iter().filter(|&&v| v < bytes[i]).count() as u64;
        r += smaller_after * factorial(n - 1 - i)?;
    }
    Ok(r)
}

/// Permutations of ranks `from..to` in lexicographic order.
#[derive(Debug, Clone)]
pub struct SnRange {
    current: Option<Vec<u8>>,
    remaining: u64,
}

impl Iterator for SnRange {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.current.as_mut()?;
        let out = Permutation::from_bytes_unchecked(current.clone());
        self.remaining -= 1;
        if self.remaining > 0 && !next_permutation(current) {
            self.remaining = 0;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn iter_sn(n: usize, from_rank: u64, to_rank: u64) -> Result<SnRange> {
    let total = factorial(n)?;
    if n == 0 || from_rank > to_rank || to_rank > total {
        return Err(Error::Range(format!(
            "need 0 <= from <= to <= {total}, got {from_rank}..{to_rank} for n = {n}"
        )));
    }
    let current = if from_rank < total {
        Some(unrank(n, from_rank)?.as_bytes().to_vec())
    } else {
        None
    };
    Ok(SnRange {
        current,
        remaining: to_rank - from_rank,
    })
}

/// A permutation that failed at least one check, with the reports explaining why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDetail {
    pub w: Permutation,
    pub reasons: Vec<String>,
    pub theorem: TheoremReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<LevelReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub n: usize,
    pub from_rank: u64,
    pub to_rank: u64,
    pub checked: u64,
    pub failures: Vec<Permutation>,
    pub failure_details: Vec<FailureDetail>,
    pub avoider_count: u64,
    pub equal_count: u64,
    pub strict_count: u64,
    #[serde(with = "duration_ms")]
    pub wall_time: Duration,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_millis)
    }
}

impl CampaignReport {
    fn empty(n: usize, from_rank: u64, to_rank: u64) -> Self {
        CampaignReport {
            n,
            from_rank,
            to_rank,
            checked: 0,
            failures: Vec::new(),
            failure_details: Vec::new(),
            avoider_count: 0,
            equal_count: 0,
            strict_count: 0,
            wall_time: Duration::ZERO,
        }
    }

    /// Appends a report covering the ranks that immediately follow `self`.
    fn merge(&mut self, other: CampaignReport) {
        debug_assert_eq!(self.to_rank, other.from_rank);
        self.to_rank = other.to_rank;
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.failure_details.extend(other.failure_details);
        self.avoider_count += other.avoider_count;
        self.equal_count += other.equal_count;
        self.strict_count += other.strict_count;
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&FailureDetail> {
        self.failure_details.first()
    }
}

/// Limits applied to campaigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignConfig {
    pub max_n: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl CampaignConfig {
    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n {
            return Err(Error::Range(format!(
                "n = {n} is outside the campaign range 1..={}",
                self.max_n
            )));
        }
        Ok(())
    }
}

/// Outcome of all checks on one permutation.
struct Checked {
    avoids: bool,
    verdict: Verdict,
    failure: Option<FailureDetail>,
}

fn check_one(w: &Permutation) -> Checked {
    let theorem = bijection::verify_main(w);
    let mut reasons = theorem.problems.clone();
    let level = if w.len() >= 2 {
        match bijection::verify_level(w) {
            Ok(report) => {
                reasons.extend(report.problems.iter().cloned());
                Some(report)
            }
            Err(e) => {
                reasons.push(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let bound = bijection::verify_bound(w);
    if !bound.ok {
        reasons.push(format!(
            "[321;3412] - rep = {} is below |phi tops| = {}",
            bound.patt as i64 - bound.rep as i64,
            bound.phi_tops.len()
        ));
    }
    let failure = (!reasons.is_empty()).then(|| FailureDetail {
        w: w.clone(),
        reasons,
        theorem: theorem.clone(),
        level,
    });
    Checked {
        avoids: theorem.avoids_phi,
        verdict: theorem.verdict,
        failure,
    }
}

fn run_range(n: usize, from: u64, to: u64) -> Result<CampaignReport> {
    let mut report = CampaignReport::empty(n, from, to);
    for w in iter_sn(n, from, to)? {
        let checked = check_one(&w);
        report.checked += 1;
        report.avoider_count += checked.avoids as u64;
        match checked.verdict {
            Verdict::Equal => report.equal_count += 1,
            Verdict::Strict => report.strict_count += 1,
        }
        if let Some(failure) = checked.failure {
            report.failures.push(w);
            report.failure_details.push(failure);
        }
    }
    Ok(report)
}

/// Splits `from..to` into `jobs` contiguous chunks.
fn chunks(from: u64, to: u64, jobs: usize) -> Vec<(u64, u64)> {
    let jobs = jobs.max(1) as u64;
    let len = to - from;
    let base = len / jobs;
    let extra = len % jobs;
    let mut out = Vec::new();
    let mut start = from;
    for j in 0..jobs {
        let size = base + u64::from(j < extra);
        if size == 0 {
            continue;
        }
        out.push((start, start + size));
        start += size;
    }
    if out.is_empty() {
        out.push((from, to));
    }
    out
}

/// Checks every permutation of ranks `from..to` in `S_n`.
pub fn run_campaign_range(
    n: usize,
    from: u64,
    to: u64,
    jobs: usize,
    config: &CampaignConfig,
) -> Result<CampaignReport> {
    config.check(n)?;
    // Validates the range before any worker starts.
    iter_sn(n, from, to)?;
    let start = Instant::now();
    let pieces = chunks(from, to, jobs);
    let partials: Vec<Result<CampaignReport>> = if pieces.len() == 1 {
        vec![run_range(n, from, to)]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = pieces
                .iter()
                .map(|&(a, b)| scope.spawn(move || run_range(n, a, b)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("campaign worker panicked"))
                .collect()
        })
    };
    let mut report = CampaignReport::empty(n, from, from);
    for partial in partials {
        report.merge(partial?);
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Checks all of `S_n`.
pub fn run_campaign(n: usize, jobs: usize) -> Result<CampaignReport> {
    run_campaign_with(n, jobs, &CampaignConfig::default())
}

pub fn run_campaign_with(n: usize, jobs: usize, config: &CampaignConfig) -> Result<CampaignReport> {
    run_campaign_range(n, 0, factorial(n)?, jobs, config)
}

/// Number of permutations of `S_n` avoiding all ten patterns.
pub fn count_avoiders(n: usize) -> Result<u64> {
    Ok(iter_sn(n, 0, factorial(n)?)?
        .filter(patterns::avoids_phi)
        .count() as u64)
}

/// The lexicographically first permutation in `S_n` failing any check.
pub fn find_counterexample(n: usize) -> Result<Option<Permutation>> {
    Ok(iter_sn(n, 0, factorial(n)?)?.find(|w| check_one(w).failure.is_some()))
}

/// Writes `n,n!,avoiders,equal,strict` rows, one per report.
pub fn write_census_csv<W: Write>(reports: &[CampaignReport], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Output(e.to_string());
    writer
        .write_record(["n", "n!", "avoiders", "equal", "strict"])
        .map_err(io)?;
    for r in reports {
        writer
            .write_record([
                r.n.to_string(),
                factorial(r.n)?.to_string(),
                r.avoider_count.to_string(),
                r.equal_count.to_string(),
                r.strict_count.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Output(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(it: SnRange) -> Vec<String> {
        it.map(|w| w.to_compact().unwrap()).collect()
    }

    #[test]
    fn iter_sn_examples() {
        assert_eq!(
            strings(iter_sn(3, 0, 6).unwrap()),
            ["123", "132", "213", "231", "312", "321"]
        );
        assert_eq!(strings(iter_sn(4, 23, 24).unwrap()), ["4321"]);
        assert_eq!(strings(iter_sn(3, 2, 4).unwrap()), ["213", "231"]);
        assert!(strings(iter_sn(3, 6, 6).unwrap()).is_empty());
        assert_eq!(strings(iter_sn(1, 0, 1).unwrap()), ["1"]);
    }

    #[test]
    fn iter_sn_range_errors() {
        assert!(matches!(iter_sn(3, 0, 7), Err(Error::Range(_))));
        assert!(matches!(iter_sn(3, 4, 2), Err(Error::Range(_))));
        assert!(matches!(iter_sn(0, 0, 0), Err(Error::Range(_))));
        assert!(matches!(iter_sn(21, 0, 1), Err(Error::Range(_))));
        assert!(matches!(unrank(3, 6), Err(Error::Range(_))));
    }

    #[test]
    fn rank_unrank_round_trip() {
        for n in 1..=8 {
            let total = factorial(n).unwrap();
            for (r, w) in iter_sn(n, 0, total).unwrap().enumerate() {
                assert_eq!(rank(&w).unwrap(), r as u64);
                assert_eq!(unrank(n, r as u64).unwrap(), w);
            }
        }
    }

    #[test]
    fn chunking_covers_range() {
        assert_eq!(chunks(0, 10, 3), vec![(0, 4), (4, 7), (7, 10)]);
        assert_eq!(chunks(0, 2, 8), vec![(0, 1), (1, 2)]);
        assert_eq!(chunks(5, 5, 4), vec![(5, 5)]);
    }

    #[test]
    fn campaign_examples() {
        let r = run_campaign(4, 1).unwrap();
        assert_eq!((r.checked, r.avoider_count), (24, 23));
        assert!(r.failures.is_empty());

        let r = run_campaign(1, 1).unwrap();
        assert_eq!((r.checked, r.equal_count), (1, 1));

        let r = run_campaign(5, 2).unwrap();
        assert_eq!((r.checked, r.avoider_count), (120, 94));
        assert_eq!(r.equal_count, r.avoider_count);
        assert_eq!(r.equal_count + r.strict_count, r.checked);
    }

    #[test]
    fn campaign_respects_ceiling() {
        let config = CampaignConfig { max_n: 3 };
        assert!(matches!(
            run_campaign_with(4, 1, &config),
            Err(Error::Range(_))
        ));
        assert!(matches!(run_campaign(0, 1), Err(Error::Range(_))));
        assert!(run_campaign_with(3, 1, &config).is_ok());
    }

    #[test]
    fn partial_range_campaign() {
        let r = run_campaign_range(5, 0, 60, 3, &CampaignConfig::default()).unwrap();
        assert_eq!(r.checked, 60);
        assert_eq!((r.from_rank, r.to_rank), (0, 60));
    }

    #[test]
    fn avoider_counts_small() {
        let counts: Vec<u64> = (1..=5).map(|n| count_avoiders(n).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 6, 23, 94]);
    }

    #[test]
    fn no_counterexamples_small() {
        assert_eq!(find_counterexample(1).unwrap(), None);
        assert_eq!(find_counterexample(5).unwrap(), None);
    }

    #[test]
    fn census_csv() {
        let reports: Vec<_> = (1..=4).map(|n| run_campaign(n, 1).unwrap()).collect();
        let mut buf = Vec::new();
        write_census_csv(&reports, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,n!,avoiders,equal,strict\n1,1,1,1,0\n2,2,2,2,0\n3,6,6,6,0\n4,24,23,23,1\n"
        );
    }
}
