//! Oracles shared by the integration tests. None of them use the library's
//! normal forms or girth code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use relxl_core::garside::{Letter, Word};

/// Alternating positive word of length `len` starting with `first`.
pub fn alternating(first: u8, len: usize) -> Vec<u8> {
    (0..len).map(|i| if i % 2 == 0 { first } else { 1 - first }).collect()
}

/// Equality in the dihedral Artin group with label `m` decided through the
/// positive monoid: a word is rewritten as `Δ^-k P` with `P` positive, then
/// `Δ` is cancelled against `P` while possible, and `P` is replaced by the
/// least word of its class under `aba.. = bab..`. The monoid embeds in the
/// group, so the result is a complete invariant.
pub struct PositiveMonoidOracle {
    m: usize,
}

impl PositiveMonoidOracle {
    pub fn new(m: u32) -> Self {
        PositiveMonoidOracle { m: m as usize }
    }

    fn tau(&self, x: u8) -> u8 {
        if !self.m.is_multiple_of(2) {
            1 - x
        } else {
            x
        }
    }

    /// Every positive word equal to `p` in the monoid.
    pub fn class(&self, p: &[u8]) -> BTreeSet<Vec<u8>> {
        let m = self.m;
        let (da, db) = (alternating(0, m), alternating(1, m));
        let mut seen = BTreeSet::from([p.to_vec()]);
        let mut queue = VecDeque::from([p.to_vec()]);
        while let Some(w) = queue.pop_front() {
            if w.len() < m {
                continue;
            }
            for i in 0..=w.len() - m {
                let window = &w[i..i + m];
                let swap = if window == da.as_slice() {
                    &db
                } else if window == db.as_slice() {
                    &da
                } else {
                    continue;
                };
                let mut v = w.clone();
                v[i..i + m].copy_from_slice(swap);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Canonical invariant `(k, least word)` of the element.
    pub fn canonical(&self, word: &Word) -> (usize, Vec<u8>) {
        let m = self.m;
        let mut k = 0usize;
        let mut p: Vec<u8> = Vec::new();
        for &Letter { generator: x, inverse } in word.letters() {
            if inverse {
                // p x^-1 = p Δ^-1 Q = Δ^-1 τ(p) Q, where Q is the
                // alternating word with Δ = Q x
                p = p.iter().map(|&y| self.tau(y)).collect();
                p.extend(alternating(if m.is_multiple_of(2) { 1 - x } else { x }, m - 1));
                k += 1;
            } else {
                p.push(x);
            }
        }
        loop {
            let class = self.class(&p);
            if k > 0 {
                let (da, db) = (alternating(0, m), alternating(1, m));
                if let Some(w) = class.iter().find(|w| w.starts_with(&da) || w.starts_with(&db)) {
                    p = w[m..].to_vec();
                    k -= 1;
                    continue;
                }
            }
            return (k, class.into_iter().next().unwrap_or_default());
        }
    }
}

/// All words over two generators and their inverses of length at most `n`.
pub fn all_words(n: usize) -> Vec<Word> {
    let letters = [Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)];
    let mut out = vec![Word::default()];
    let mut layer = vec![Word::default()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                let mut v = w.clone();
                v.0.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Fewest-edge cycle through `base` in an unweighted simple graph, by BFS
/// with first-branch labels. Returns the cycle's vertices starting at `base`.
pub fn fewest_edge_cycle_through(n: usize, edges: &[(usize, usize)], base: usize) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut branch = vec![usize::MAX; n];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                branch[y] = if x == base { y } else { branch[x] };
                queue.push_back(y);
            }
        }
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for &(u, v) in edges {
        if dist[u] == usize::MAX || dist[v] == usize::MAX {
            continue;
        }
        let closes = if u == base || v == base {
            let other = if u == base { v } else { u };
            // a non-tree edge back to the base
            parent[other] != base
        } else {
            branch[u] != branch[v]
        };
        if closes {
            let len = dist[u] + dist[v] + 1;
            if best.is_none_or(|b| len < b.0) {
                best = Some((len, u, v));
            }
        }
    }
    let (_, u, v) = best?;
    let path = |mut x: usize| {
        let mut p = vec![x];
        while x != base {
            x = parent[x];
            p.push(x);
        }
        p.reverse();
        p
    };
    let mut cycle = path(u);
    let mut back = path(v);
    back.remove(0);
    back.reverse();
    cycle.extend(back);
    let distinct: HashSet<usize> = cycle.iter().copied().collect();
    assert_eq!(distinct.len(), cycle.len(), "oracle produced a closed walk, not a cycle");
    Some(cycle)
}
