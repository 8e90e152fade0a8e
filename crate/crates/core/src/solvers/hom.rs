//! Graph homomorphism search as a binary CSP.
//!
//! Variables are the vertices of the source graph, domains are bitsets over the
//! target's vertices. Search maintains arc consistency after every assignment and
//! branches on the variable with the fewest remaining values (ties: smallest index).

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::{Budget, NodeCounter, SearchOutcome};

/// Edge-preserving vertex map `V(G) -> V(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismMap {
    pub image: Vec<usize>,
}

impl HomomorphismMap {
    /// Re-checks edge preservation from scratch.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        self.image.len() == g.n()
            && self.image.iter().all(|&a| a < h.n())
            && g.edges().all(|(u, v)| h.has_edge(self.image[u], self.image[v]))
    }
}

/// Symmetry information about the target graph that the caller vouches for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TargetSymmetry {
    #[default]
    None,
    /// The automorphism group of the target acts transitively on its vertices,
    /// so the first branching vertex may be pinned to a single target vertex.
    VertexTransitive,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HomOptions {
    pub budget: Budget,
    pub symmetry: TargetSymmetry,
}

pub fn find_homomorphism(g: &Graph, h: &Graph, opts: HomOptions) -> SearchOutcome<HomomorphismMap> {
    let search = HomSearch::new(g, h);
    let Some(domains) = search.initial_domains() else {
        return SearchOutcome::NoneExists;
    };
    let mut counter = opts.budget.counter();
    let result = search.solve(domains, opts.symmetry, &mut counter);
    log::debug!("hom search {} -> {}: {} nodes", g.name(), h.name(), counter.used());
    match result {
        Some(Some(image)) => {
            let map = HomomorphismMap { image };
            debug_assert!(map.verify(g, h));
            SearchOutcome::Found(map)
        }
        Some(None) => SearchOutcome::NoneExists,
        None => SearchOutcome::BudgetExceeded,
    }
}

struct HomSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        HomSearch { g, h }
    }

    /// Node-consistent, arc-consistent starting domains; `None` if some domain wipes out.
    fn initial_domains(&self) -> Option<Vec<FixedBitSet>> {
        let hn = self.h.n();
        let mut non_isolated = FixedBitSet::with_capacity(hn);
        for a in 0..hn {
            if self.h.degree(a) > 0 {
                non_isolated.insert(a);
            }
        }
        let mut all = FixedBitSet::with_capacity(hn);
        all.insert_range(..);
        let mut domains: Vec<FixedBitSet> = (0..self.g.n())
            .map(|v| if self.g.degree(v) > 0 { non_isolated.clone() } else { all.clone() })
            .collect();
        if domains.iter().any(|d| d.is_clear()) {
            return None;
        }
        let arcs = self.g.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        self.propagate(&mut domains, arcs).then_some(domains)
    }

    /// Removes from `D(x)` every value without a supporting neighbor in `D(y)`.
    fn revise(&self, domains: &mut [FixedBitSet], x: usize, y: usize) -> bool {
        let unsupported: Vec<usize> = domains[x]
            .ones()
            .filter(|&a| self.h.neighbors(a).is_disjoint(&domains[y]))
            .collect();
        for a in &unsupported {
            domains[x].set(*a, false);
        }
        !unsupported.is_empty()
    }

    /// AC-3. Returns false on a domain wipe-out.
    fn propagate(&self, domains: &mut [FixedBitSet], mut queue: VecDeque<(usize, usize)>) -> bool {
        let mut queued = vec![false; self.g.n() * self.g.n()];
        let n = self.g.n();
        for &(x, y) in &queue {
            queued[x * n + y] = true;
        }
        while let Some((x, y)) = queue.pop_front() {
            queued[x * n + y] = false;
            if self.revise(domains, x, y) {
                if domains[x].is_clear() {
                    return false;
                }
                for z in self.g.neighbors(x).ones() {
                    if z != y && !queued[z * n + x] {
                        queued[z * n + x] = true;
                        queue.push_back((z, x));
                    }
                }
            }
        }
        true
    }

    /// Some(Some(image)) = found, Some(None) = exhausted, None = out of budget.
    fn solve(
        &self,
        domains: Vec<FixedBitSet>,
        symmetry: TargetSymmetry,
        counter: &mut NodeCounter,
    ) -> Option<Option<Vec<usize>>> {
        let mut assigned = vec![false; self.g.n()];
        self.rec(domains, &mut assigned, symmetry == TargetSymmetry::VertexTransitive, counter)
    }

    fn rec(
        &self,
        domains: Vec<FixedBitSet>,
        assigned: &mut [bool],
        pin_first: bool,
        counter: &mut NodeCounter,
    ) -> Option<Option<Vec<usize>>> {
        if !counter.tick() {
            return None;
        }
        let var = (0..self.g.n())
            .filter(|&v| !assigned[v])
            .min_by_key(|&v| (domains[v].count_ones(..), v));
        let Some(var) = var else {
            let image = domains.iter().map(|d| d.minimum().unwrap()).collect();
            return Some(Some(image));
        };
        let values: Vec<usize> = if pin_first {
            domains[var].minimum().into_iter().collect()
        } else {
            domains[var].ones().collect()
        };
        assigned[var] = true;
        for a in values {
            let mut next = domains.clone();
            next[var].clear();
            next[var].insert(a);
            let arcs = self.g.neighbors(var).ones().map(|z| (z, var)).collect();
            if self.propagate(&mut next, arcs) {
                match self.rec(next, assigned, false, counter) {
                    Some(None) => {}
                    other => {
                        assigned[var] = false;
                        return other;
                    }
                }
            }
        }
        assigned[var] = false;
        Some(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle, schrijver, universal};

    fn opts() -> HomOptions {
        HomOptions::default()
    }

    #[test]
    fn cycle_to_itself() {
        let c5 = cycle(5).unwrap();
        let map = find_homomorphism(&c5, &c5, opts()).found().unwrap();
        assert!(map.verify(&c5, &c5));
    }

    #[test]
    fn odd_cycle_not_into_k2() {
        let c5 = cycle(5).unwrap();
        let k2 = complete_graph(2).unwrap();
        assert!(find_homomorphism(&c5, &k2, opts()).is_none_exists());
        assert!(find_homomorphism(&k2, &c5, opts()).is_found());
    }

    #[test]
    fn universal_5_3_into_k4() {
        let u = universal(5, 3).unwrap();
        let k4 = complete_graph(4).unwrap();
        let o = HomOptions { symmetry: TargetSymmetry::VertexTransitive, ..opts() };
        let map = find_homomorphism(&u, &k4, o).found().unwrap();
        assert!(map.verify(&u, &k4));
        let k3 = complete_graph(3).unwrap();
        assert!(find_homomorphism(&u, &k3, o).is_none_exists());
    }

    #[test]
    fn pinning_does_not_change_verdicts() {
        let sg = schrijver(6, 2).unwrap();
        let u = universal(6, 3).unwrap();
        let plain = find_homomorphism(&sg, &u, opts()).is_found();
        let pinned = find_homomorphism(
            &sg,
            &u,
            HomOptions { symmetry: TargetSymmetry::VertexTransitive, ..opts() },
        )
        .is_found();
        assert_eq!(plain, pinned);
        assert!(!plain);
    }

    #[test]
    fn budget_outcome() {
        let sg = schrijver(6, 2).unwrap();
        let k3 = complete_graph(3).unwrap();
        let o = HomOptions { budget: Budget::nodes(1), ..opts() };
        assert_eq!(find_homomorphism(&sg, &k3, o), SearchOutcome::BudgetExceeded);
    }
}
