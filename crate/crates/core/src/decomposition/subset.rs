//! Subset-sum searches over nonnegative exponents.
//!
//! Up to [`EXHAUSTIVE_MAX`] positive entries are searched exhaustively by
//! increasing size, then lexicographically. Longer lists are reduced to the
//! entries at least as large as the target width ("big" entries, few because
//! the exponents sum to about 1): any partial sum that starts at or below the
//! upper end and grows by steps smaller than the width cannot jump over the
//! target range, so the small entries can be added greedily in index order.

pub(crate) const TOL: f64 = 1e-12;
pub(crate) const EXHAUSTIVE_MAX: usize = 20;

pub(crate) fn in_range(s: f64, lo: f64, hi: f64) -> bool {
    s >= lo - TOL && s <= hi + TOL
}

pub(crate) fn sum_of(alphas: &[f64], idx: &[usize]) -> f64 {
    idx.iter().map(|&i| alphas[i]).sum()
}

/// Calls `f` on every `size`-subset of `items` in lexicographic order until it
/// returns true; returns that subset.
fn first_combination<F: FnMut(&[usize]) -> bool>(items: &[usize], size: usize, mut f: F) -> Option<Vec<usize>> {
    let n = items.len();
    if size > n {
        return None;
    }
    let mut pos: Vec<usize> = (0..size).collect();
    let mut cur: Vec<usize> = pos.iter().map(|&p| items[p]).collect();
    loop {
        if f(&cur) {
            return Some(cur);
        }
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if pos[i] < n - size + i {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        pos[i] += 1;
        for j in i + 1..size {
            pos[j] = pos[j - 1] + 1;
        }
        for j in i..size {
            cur[j] = items[pos[j]];
        }
    }
}

/// All subsets of `items`, by increasing size then lexicographically.
fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], mut f: F) {
    for size in 0..=items.len() {
        first_combination(items, size, |s| {
            f(s);
            false
        });
    }
}

fn positive(alphas: &[f64]) -> Vec<usize> {
    (0..alphas.len()).filter(|&i| alphas[i] > 0.0).collect()
}

/// A subset of the positive entries with sum in `[lo, hi]`, if one exists.
pub(crate) fn subset_in_range(alphas: &[f64], lo: f64, hi: f64) -> Option<Vec<usize>> {
    let pos = positive(alphas);
    if pos.len() <= EXHAUSTIVE_MAX {
        return (0..=pos.len()).find_map(|size| {
            first_combination(&pos, size, |s| in_range(sum_of(alphas, s), lo, hi))
        });
    }
    let width = hi - lo;
    let (big, small): (Vec<usize>, Vec<usize>) = pos.iter().partition(|&&i| alphas[i] >= width);
    let mut found = None;
    for_each_subset(&big, |b| {
        if found.is_some() {
            return;
        }
        let mut s = sum_of(alphas, b);
        if s > hi + TOL {
            return;
        }
        let mut chosen = b.to_vec();
        if in_range(s, lo, hi) {
            found = Some(chosen);
            return;
        }
        for &i in &small {
            s += alphas[i];
            chosen.push(i);
            if in_range(s, lo, hi) {
                chosen.sort_unstable();
                found = Some(chosen);
                return;
            }
        }
    });
    found
}

/// The subset of positive entries with the largest sum `<= cap` (ties: first
/// by size, then lexicographically). For long lists this relies on there
/// being no subset sum in `[cap - width, cap]`, which callers establish first.
pub(crate) fn max_subset_at_most(alphas: &[f64], cap: f64, width: f64) -> Vec<usize> {
    let pos = positive(alphas);
    let mut best: Vec<usize> = Vec::new();
    let mut best_sum = 0.0;
    if pos.len() <= EXHAUSTIVE_MAX {
        for_each_subset(&pos, |s| {
            let v = sum_of(alphas, s);
            if v <= cap + TOL && v > best_sum {
                best_sum = v;
                best = s.to_vec();
            }
        });
        return best;
    }
    let (big, small): (Vec<usize>, Vec<usize>) = pos.iter().partition(|&&i| alphas[i] >= width);
    let small_sum = sum_of(alphas, &small);
    for_each_subset(&big, |b| {
        let v = sum_of(alphas, b) + small_sum;
        if v <= cap + TOL && v > best_sum {
            best_sum = v;
            best = b.iter().chain(&small).copied().collect();
            best.sort_unstable();
        }
    });
    best
}
