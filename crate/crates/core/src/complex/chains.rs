use serde::Serialize;

use super::poset::SubsetPoset;
use crate::error::{Error, Result};
use crate::subset::VertexSet;

/// A strictly increasing sequence of poset elements.
pub type Chain = Vec<VertexSet>;

/// The derived (order) complex of a subset poset: its simplices are the
/// chains. Chains are enumerated on demand because the complexes over `S̄`
/// get large.
#[derive(Debug, Clone)]
pub struct DerivedComplex {
    poset: SubsetPoset,
    up: Vec<Vec<usize>>,
    covers: Vec<Vec<usize>>,
}

impl DerivedComplex {
    pub fn new(poset: SubsetPoset) -> Self {
        let els = poset.elements();
        let n = els.len();
        let up: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).filter(|&j| els[i].is_proper_subset_of(els[j])).collect()).collect();
        let covers = (0..n)
            .map(|i| {
                up[i]
                    .iter()
                    .copied()
                    .filter(|&j| !up[i].iter().any(|&k| els[k].is_proper_subset_of(els[j])))
                    .collect()
            })
            .collect();
        DerivedComplex { poset, up, covers }
    }

    pub fn poset(&self) -> &SubsetPoset {
        &self.poset
    }

    pub fn vertex_count(&self) -> usize {
        self.poset.len()
    }

    /// `counts[k]` is the number of chains with `k + 1` elements.
    pub fn chain_counts(&self) -> Vec<u64> {
        let n = self.vertex_count();
        // longest[i] and per-length counts of chains starting at i, filled
        // from the largest elements down
        let mut from: Vec<Vec<u64>> = vec![Vec::new(); n];
        for i in (0..n).rev() {
            let mut c = vec![1u64];
            for &j in &self.up[i] {
                for (k, &x) in from[j].iter().enumerate() {
                    if c.len() <= k + 1 {
                        c.resize(k + 2, 0);
                    }
                    c[k + 1] = c[k + 1].saturating_add(x);
                }
            }
            from[i] = c;
        }
        let mut total: Vec<u64> = Vec::new();
        for c in &from {
            if total.len() < c.len() {
                total.resize(c.len(), 0);
            }
            for (k, &x) in c.iter().enumerate() {
                total[k] = total[k].saturating_add(x);
            }
        }
        total
    }

    /// Dimension of the complex: longest chain length minus one.
    pub fn dimension(&self) -> usize {
        self.longest_chain().len().saturating_sub(1)
    }

    pub fn longest_chain(&self) -> Chain {
        let n = self.vertex_count();
        let mut best: Vec<(usize, Option<usize>)> = vec![(1, None); n];
        for i in (0..n).rev() {
            for &j in &self.up[i] {
                if best[j].0 + 1 > best[i].0 {
                    best[i] = (best[j].0 + 1, Some(j));
                }
            }
        }
        let Some(start) = (0..n).max_by_key(|&i| (best[i].0, std::cmp::Reverse(i))) else {
            return Vec::new();
        };
        let els = self.poset.elements();
        let mut chain = vec![els[start]];
        let mut cur = start;
        while let Some(next) = best[cur].1 {
            chain.push(els[next]);
            cur = next;
        }
        chain
    }

    /// Every chain, ordered by length and then by element positions.
    pub fn chains(&self, cap: usize) -> Result<Vec<Chain>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..self.vertex_count()).rev().map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            if out.len() >= cap {
                return Err(Error::ResourceLimit { cap, partial: out.len() });
            }
            let last = *c.last().expect("non-empty");
            for &j in self.up[last].iter().rev() {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
            out.push(c);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out.into_iter().map(|c| self.to_sets(&c)).collect())
    }

    /// Chains with exactly `dim + 1` elements.
    pub fn simplices(&self, dim: usize, cap: usize) -> Result<Vec<Chain>> {
        Ok(self.chains(cap)?.into_iter().filter(|c| c.len() == dim + 1).collect())
    }

    /// Chains that cannot be extended.
    pub fn maximal_chains(&self, cap: usize) -> Result<Vec<Chain>> {
        let n = self.vertex_count();
        let has_below: Vec<bool> = {
            let mut b = vec![false; n];
            for i in 0..n {
                for &j in &self.up[i] {
                    b[j] = true;
                }
            }
            b
        };
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).rev().filter(|&i| !has_below[i]).map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().expect("non-empty");
            if self.covers[last].is_empty() {
                if out.len() >= cap {
                    return Err(Error::ResourceLimit { cap, partial: out.len() });
                }
                out.push(self.to_sets(&c));
                continue;
            }
            for &j in self.covers[last].iter().rev() {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
        Ok(out)
    }

    /// Whether `chain` is a simplex: non-empty, strictly increasing, and
    /// made of poset elements.
    pub fn contains_chain(&self, chain: &[VertexSet]) -> bool {
        !chain.is_empty()
            && chain.iter().all(|&t| self.poset.contains(t))
            && chain.windows(2).all(|w| w[0].is_proper_subset_of(w[1]))
    }

    fn to_sets(&self, idx: &[usize]) -> Chain {
        idx.iter().map(|&i| self.poset.elements()[i]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoDimReport {
    pub holds: bool,
    pub longest_chain_len: usize,
    /// A chain with four or more elements, when one exists.
    pub witness: Option<Chain>,
}

/// The complex is at most 2-dimensional iff no chain has four elements.
pub fn check_two_dimensional(complex: &DerivedComplex) -> TwoDimReport {
    let longest = complex.longest_chain();
    let holds = longest.len() <= 3;
    TwoDimReport { holds, longest_chain_len: longest.len(), witness: (!holds).then_some(longest) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_s_ell, Tag};
    use crate::instances;

    fn poset(sets: &[VertexSet]) -> SubsetPoset {
        SubsetPoset::from_sets(sets.iter().copied(), Tag::Spherical)
    }

    #[test]
    fn edge_complex() {
        let c = DerivedComplex::new(poset(&[VertexSet::EMPTY, VertexSet::singleton(0)]));
        assert_eq!(c.chain_counts(), vec![2, 1]);
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn single_inter_edge_two_simplices() {
        let inst = instances::single_edge(4);
        let c = DerivedComplex::new(build_s_ell(&inst));
        let tri = c.simplices(2, 1000).unwrap();
        let (a, b, ab) = (VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::pair(0, 1));
        assert_eq!(tri, vec![vec![VertexSet::EMPTY, a, ab], vec![VertexSet::EMPTY, b, ab]]);
        assert_eq!(c.maximal_chains(100).unwrap(), tri);
    }

    #[test]
    fn counts_match_enumeration() {
        let inst = instances::c3_tilde_join(4);
        let c = DerivedComplex::new(build_s_ell(&inst));
        let chains = c.chains(100_000).unwrap();
        let counts = c.chain_counts();
        for (k, &n) in counts.iter().enumerate() {
            assert_eq!(chains.iter().filter(|ch| ch.len() == k + 1).count() as u64, n);
        }
        assert_eq!(counts.iter().sum::<u64>() as usize, chains.len());
    }

    #[test]
    fn chains_are_face_closed() {
        let inst = instances::c3_tilde_join(4);
        let c = DerivedComplex::new(build_s_ell(&inst));
        let chains = c.chains(100_000).unwrap();
        let set: std::collections::HashSet<_> = chains.iter().cloned().collect();
        for ch in &chains {
            for skip in 0..ch.len() {
                if ch.len() == 1 {
                    continue;
                }
                let mut f = ch.clone();
                f.remove(skip);
                assert!(set.contains(&f));
            }
        }
    }

    #[test]
    fn two_dimensionality() {
        let ok = DerivedComplex::new(poset(&[VertexSet::EMPTY, VertexSet::singleton(0), VertexSet::pair(0, 1)]));
        assert!(check_two_dimensional(&ok).holds);
        let bad = DerivedComplex::new(poset(&[
            VertexSet::EMPTY,
            VertexSet::singleton(0),
            VertexSet::pair(0, 1),
            VertexSet::from_indices([0, 1, 2]),
        ]));
        let r = check_two_dimensional(&bad);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let inst = instances::c3_tilde_join(4);
        let c = DerivedComplex::new(build_s_ell(&inst));
        assert!(matches!(c.chains(10), Err(Error::ResourceLimit { cap: 10, .. })));
    }
}
