//! Lexicographic enumeration of fixed-size subsets of `{0, .., v-1}` as
//! `u64` bit masks, split into contiguous rank ranges for parallel workers.

use rayon::prelude::*;

/// `C(n, k)` in `u128`, saturating at `u128::MAX`.
pub fn count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) / (j + 1) stays integral at every step
        match acc.checked_mul((n - j) as u128) {
            Some(x) => acc = x / (j as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

pub fn mask_of(points: &[usize]) -> u64 {
    points.iter().fold(0u64, |m, &p| m | (1u64 << p))
}

pub fn points_of(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Lexicographic comparison of the sorted point lists of two masks.
pub fn lex_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    points_of(a).cmp(&points_of(b))
}

/// The subset of rank `rank` (0-based) among the `t`-subsets of `v` points
/// in lexicographic order.
pub fn unrank(mut rank: u128, v: usize, t: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t);
    let mut next = 0usize;
    for slot in 0..t {
        let remaining = t - slot - 1;
        loop {
            let with_next = count(v - next - 1, remaining);
            if rank < with_next {
                out.push(next);
                next += 1;
                break;
            }
            rank -= with_next;
            next += 1;
        }
    }
    out
}

/// Advances `idx` to the next `t`-subset in lexicographic order.
fn advance(idx: &mut [usize], v: usize) -> bool {
    let t = idx.len();
    let mut pos = t;
    while pos > 0 {
        pos -= 1;
        if idx[pos] < v - t + pos {
            idx[pos] += 1;
            for q in pos + 1..t {
                idx[q] = idx[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Subsets with ranks in `[start, end)`, lexicographic order.
pub fn range(v: usize, t: usize, start: u128, end: u128) -> impl Iterator<Item = u64> {
    let mut idx = if start < end { unrank(start, v, t) } else { Vec::new() };
    let mut left = end.saturating_sub(start);
    std::iter::from_fn(move || {
        if left == 0 {
            return None;
        }
        let m = mask_of(&idx);
        left -= 1;
        if left > 0 {
            advance(&mut idx, v);
        }
        Some(m)
    })
}

/// Contiguous rank chunks covering all `C(v, t)` subsets.
pub fn chunks(v: usize, t: usize) -> Vec<(u128, u128)> {
    let total = count(v, t);
    let workers = rayon::current_num_threads().max(1) as u128;
    let size = (total / (workers * 16)).max(1024);
    let mut out = Vec::new();
    let mut s = 0u128;
    while s < total {
        let e = (s + size).min(total);
        out.push((s, e));
        s = e;
    }
    out
}

/// First subset (lexicographically) for which `probe` returns `Some`, with
/// its rank. Chunks run in parallel; the earliest hit wins.
pub fn par_find_first<T, F>(v: usize, t: usize, probe: F) -> Option<(u128, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    chunks(v, t).into_par_iter().find_map_first(|(s, e)| {
        range(v, t, s, e)
            .enumerate()
            .find_map(|(off, m)| probe(m).map(|x| (s + off as u128, x)))
    })
}

/// Folds every subset into a per-chunk accumulator and merges them.
/// `merge` must be commutative and associative.
pub fn par_fold<A, F, M, I>(v: usize, t: usize, init: I, step: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    chunks(v, t)
        .into_par_iter()
        .map(|(s, e)| {
            let mut acc = init();
            for m in range(v, t, s, e) {
                step(&mut acc, m);
            }
            acc
        })
        .reduce(&init, &merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count(24, 8), 735471);
        assert_eq!(count(24, 0), 1);
        assert_eq!(count(3, 5), 0);
        assert_eq!(count(64, 32), 1832624140942590534);
    }

    #[test]
    fn range_is_lexicographic_and_complete() {
        let all: Vec<u64> = range(6, 3, 0, count(6, 3)).collect();
        assert_eq!(all.len(), 20);
        for w in all.windows(2) {
            assert_eq!(lex_cmp(w[0], w[1]), std::cmp::Ordering::Less);
        }
        assert_eq!(points_of(all[0]), vec![0, 1, 2]);
        assert_eq!(points_of(all[19]), vec![3, 4, 5]);
    }

    #[test]
    fn unrank_matches_iteration() {
        let all: Vec<u64> = range(9, 4, 0, count(9, 4)).collect();
        for (r, m) in all.iter().enumerate() {
            assert_eq!(mask_of(&unrank(r as u128, 9, 4)), *m);
        }
    }

    #[test]
    fn empty_subset_enumerates_once() {
        let all: Vec<u64> = range(5, 0, 0, 1).collect();
        assert_eq!(all, vec![0]);
    }

    #[test]
    fn par_find_first_returns_least() {
        // subsets of size 3 of 12 points containing point 7 and 9
        let hit = par_find_first(12, 3, |m| (m & (1 << 7) != 0 && m & (1 << 9) != 0).then_some(()));
        let (rank, ()) = hit.unwrap();
        assert_eq!(points_of(mask_of(&unrank(rank, 12, 3))), vec![0, 7, 9]);
    }

    #[test]
    fn par_fold_counts_everything() {
        let n = par_fold(20, 5, || 0u64, |a, _| *a += 1, |a, b| a + b);
        assert_eq!(n as u128, count(20, 5));
    }
}
