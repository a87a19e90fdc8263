//! Brute-force oracles that share no code with the library's scanners.

#![allow(dead_code)]

use permstat::Permutation;

/// All index subsets of size `k` from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Rank of each entry among the entries, 1-based.
pub fn standardize(values: &[usize]) -> Vec<usize> {
    values
        .iter()
        .map(|v| values.iter().filter(|u| *u <= v).count())
        .collect()
}

/// Value tuples (in position order) of every occurrence of `pattern` in `w`.
pub fn naive_occurrences(w: &[usize], pattern: &[usize]) -> Vec<Vec<usize>> {
    combinations(w.len(), pattern.len())
        .into_iter()
        .map(|c| c.iter().map(|&i| w[i]).collect::<Vec<_>>())
        .filter(|vals| standardize(vals) == pattern)
        .collect()
}

pub fn naive_contains(w: &[usize], pattern: &[usize]) -> bool {
    !naive_occurrences(w, pattern).is_empty()
}

pub fn digits(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'0') as usize).collect()
}

pub const PHI: [&str; 10] = [
    "4321", "34512", "45123", "35412", "43512", "45132", "45213", "53412", "45312", "45231",
];

pub fn naive_avoids_phi(w: &[usize]) -> bool {
    PHI.iter().all(|p| !naive_contains(w, &digits(p)))
}

/// Heap's algorithm, independent of lexicographic unranking.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        heap(k - 1, a, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
            heap(k - 1, a, out);
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Bubble-sort swap count.
pub fn naive_length(w: &[usize]) -> usize {
    let mut v = w.to_vec();
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    swaps
}

/// `k` is in the support iff some inversion straddles the cut after `k`.
pub fn naive_support(w: &[usize]) -> Vec<usize> {
    let n = w.len();
    (1..n)
        .filter(|&k| (0..k).any(|i| (k..n).any(|j| w[i] > w[j])))
        .collect()
}

pub fn perm(values: &[usize]) -> Permutation {
    Permutation::new(values.to_vec()).unwrap()
}
