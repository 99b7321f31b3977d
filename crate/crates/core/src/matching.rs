//! Distances between complex spectra.
//!
//! [`compare_spectra`] is the bottleneck distance: the smallest `δ` for which
//! a perfect matching of the two multisets exists with every matched pair
//! closer than `δ`. It is symmetric and exact. [`greedy_match_distance`]
//! gives a cheap upper bound.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Lexicographic order on `(Re, Im)` used for sorted listings.
pub fn sort_key(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sorted(values: &[C64]) -> Vec<C64> {
    let mut v = values.to_vec();
    v.sort_by(sort_key);
    v
}

/// Walk `a` in sorted order, pairing each value with the nearest unused
/// value of `b`; return the largest pair distance.
pub fn greedy_match_distance(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in sorted(a) {
        let (best, dist) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths");
        used[best] = true;
        worst = worst.max(dist);
    }
    Ok(worst)
}

/// Hopcroft-Karp on the bipartite graph `adj` (left vertex → right vertices).
fn has_perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    const NIL: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut matched = 0;

    loop {
        // BFS layering from free left vertices.
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        // Iterative DFS along the layers.
        let mut next = vec![0usize; left];
        for root in 0..left {
            if match_l[root] != NIL {
                continue;
            }
            let mut stack = vec![root];
            while let Some(&u) = stack.last() {
                if next[u] == adj[u].len() {
                    dist[u] = usize::MAX;
                    stack.pop();
                    continue;
                }
                let v = adj[u][next[u]];
                next[u] += 1;
                let w = match_r[v];
                if w == NIL {
                    // Augment along the stack.
                    let mut v = v;
                    for &x in stack.iter().rev() {
                        let prev = match_l[x];
                        match_l[x] = v;
                        match_r[v] = x;
                        v = prev;
                    }
                    matched += 1;
                    break;
                } else if dist[w] == dist[u] + 1 {
                    stack.push(w);
                }
            }
        }
    }
    matched == left
}

/// Bottleneck matching distance between two multisets of equal size.
pub fn compare_spectra(a: &[C64], b: &[C64]) -> Result<f64> {
    let upper = greedy_match_distance(a, b)?;
    if a.is_empty() || upper == 0.0 {
        return Ok(upper);
    }
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x - y).norm()))
        .filter(|&d| d <= upper)
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let feasible = |delta: f64| {
        let adj: Vec<Vec<usize>> = a
            .iter()
            .map(|x| (0..b.len()).filter(|&j| (x - b[j]).norm() <= delta).collect())
            .collect();
        has_perfect_matching(&adj, b.len())
    };
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo])
}
