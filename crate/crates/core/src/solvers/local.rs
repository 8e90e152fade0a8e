//! Local chromatic number: the minimum, over proper colorings, of the largest
//! number of colors seen in a closed neighborhood.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::universal;
use crate::graph::{Coloring, Graph};

use super::hom::{find_homomorphism, HomOptions, TargetSymmetry};
use super::partitions::enumerate_proper_partitions;
use super::{greedy_coloring, Budget, NodeCounter, SearchOutcome};

/// Largest graph for which exhaustive partition enumeration is permitted.
pub const PARTITION_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalMethod {
    /// Branch and bound over canonical colorings.
    Direct,
    /// Exhaust all proper partitions (n ≤ 12).
    Partitions,
    /// Smallest r admitting a homomorphism into U(n, r).
    HomUniversal,
}

/// `max_v |c(N(v))| + 1` for a proper coloring `c`; 1 on edgeless graphs, 0 on the null graph.
pub fn local_colorfulness(g: &Graph, c: &Coloring) -> Result<usize> {
    c.check_proper(g)?;
    Ok(colorfulness_unchecked(g, c.colors()))
}

fn colorfulness_unchecked(g: &Graph, colors: &[usize]) -> usize {
    let palette = colors.iter().max().map_or(0, |m| m + 1);
    let mut seen = FixedBitSet::with_capacity(palette);
    (0..g.n())
        .map(|v| {
            seen.clear();
            g.neighbors(v).ones().for_each(|u| seen.insert(colors[u]));
            seen.count_ones(..) + 1
        })
        .max()
        .unwrap_or(0)
}

/// Trivial lower bound: 1 if edgeless, 2 if bipartite, 3 otherwise (ψ = 2 iff χ = 2).
fn lower_bound(g: &Graph) -> usize {
    if g.n() == 0 {
        0
    } else if g.is_edgeless() {
        1
    } else if g.bipartition().is_some() {
        2
    } else {
        3
    }
}

/// Exact local chromatic number with a witness coloring attaining it.
pub fn local_chromatic_number(
    g: &Graph,
    method: LocalMethod,
    budget: Budget,
) -> Result<(usize, Coloring)> {
    if g.n() == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let (psi, witness) = match method {
        LocalMethod::Direct => direct(g, budget)?,
        LocalMethod::Partitions => by_partitions(g)?,
        LocalMethod::HomUniversal => by_universal(g, budget)?,
    };
    debug_assert_eq!(local_colorfulness(g, &witness).ok(), Some(psi));
    Ok((psi, witness))
}

fn by_partitions(g: &Graph) -> Result<(usize, Coloring)> {
    let mut best: Option<(usize, Coloring)> = None;
    for c in enumerate_proper_partitions(g)? {
        let value = colorfulness_unchecked(g, c.colors());
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, c));
        }
    }
    Ok(best.expect("every graph has a proper partition"))
}

fn by_universal(g: &Graph, budget: Budget) -> Result<(usize, Coloring)> {
    let n = g.n();
    for r in lower_bound(g)..=n {
        let target = universal(n, r)?;
        let opts = HomOptions {
            budget,
            symmetry: TargetSymmetry::VertexTransitive,
        };
        match find_homomorphism(g, &target, opts) {
            SearchOutcome::Found(map) => {
                let colors: Vec<usize> = map.image.iter().map(|&x| universal_color(n, r, x)).collect();
                let c = Coloring::new(colors).canonical();
                let value = colorfulness_unchecked(g, c.colors());
                return Ok((value, c));
            }
            SearchOutcome::NoneExists => {}
            SearchOutcome::BudgetExceeded => {
                return Err(Error::BudgetExceeded(budget.max_nodes.unwrap_or(0)))
            }
        }
    }
    unreachable!("U(n, n) receives every n-vertex graph")
}

/// First coordinate of vertex `x` of `universal(m, r)`: vertices are grouped by color,
/// `C(m-1, r-1)` per color.
fn universal_color(m: usize, r: usize, x: usize) -> usize {
    x / binomial(m - 1, r - 1)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Branch and bound: for each bound k from the trivial lower bound upward, decide
/// whether some proper coloring keeps every open neighborhood within k−1 colors.
fn direct(g: &Graph, budget: Budget) -> Result<(usize, Coloring)> {
    let greedy = greedy_coloring(g);
    let ub = colorfulness_unchecked(g, greedy.colors());
    let mut counter = budget.counter();
    for k in lower_bound(g)..ub {
        let mut search = LocalSearch::new(g, k - 1);
        match search.rec(&mut counter) {
            Some(true) => {
                let c = Coloring::new(search.colors.iter().map(|c| c.unwrap()).collect()).canonical();
                return Ok((colorfulness_unchecked(g, c.colors()), c));
            }
            Some(false) => {}
            None => return Err(counter.exceeded()),
        }
    }
    Ok((ub, greedy))
}

struct LocalSearch<'g> {
    g: &'g Graph,
    /// Maximum number of distinct colors allowed in any open neighborhood.
    cap: usize,
    colors: Vec<Option<usize>>,
    /// nbr_count[v * n + c] = colored neighbors of v with color c.
    nbr_count: Vec<u32>,
    distinct: Vec<usize>,
    used: usize,
}

impl<'g> LocalSearch<'g> {
    fn new(g: &'g Graph, cap: usize) -> Self {
        let n = g.n();
        LocalSearch {
            g,
            cap,
            colors: vec![None; n],
            nbr_count: vec![0; n * n],
            distinct: vec![0; n],
            used: 0,
        }
    }

    fn seen_by(&self, v: usize, c: usize) -> bool {
        self.nbr_count[v * self.g.n() + c] > 0
    }

    /// Colors still available to an uncolored vertex.
    fn allowed(&self, v: usize) -> Vec<usize> {
        let limit = (self.used + 1).min(self.g.n());
        (0..limit)
            .filter(|&c| {
                !self.g.neighbors(v).ones().any(|w| self.colors[w] == Some(c))
                    && self
                        .g
                        .neighbors(v)
                        .ones()
                        .all(|w| self.distinct[w] < self.cap || self.seen_by(w, c))
            })
            .collect()
    }

    fn assign(&mut self, v: usize, c: usize) {
        let n = self.g.n();
        self.colors[v] = Some(c);
        for w in self.g.neighbors(v).ones() {
            let slot = &mut self.nbr_count[w * n + c];
            if *slot == 0 {
                self.distinct[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let n = self.g.n();
        let c = self.colors[v].take().unwrap();
        for w in self.g.neighbors(v).ones() {
            let slot = &mut self.nbr_count[w * n + c];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[w] -= 1;
            }
        }
    }

    fn rec(&mut self, counter: &mut NodeCounter) -> Option<bool> {
        if !counter.tick() {
            return None;
        }
        // Minimum remaining values, ties by smallest index.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in (0..self.g.n()).filter(|&v| self.colors[v].is_none()) {
            let allowed = self.allowed(v);
            if best.as_ref().is_none_or(|(_, b)| allowed.len() < b.len()) {
                let empty = allowed.is_empty();
                best = Some((v, allowed));
                if empty {
                    break;
                }
            }
        }
        let Some((v, allowed)) = best else {
            return Some(true);
        };
        for c in allowed {
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            self.assign(v, c);
            match self.rec(counter) {
                Some(false) => {}
                other => return other,
            }
            self.unassign(v);
            self.used = prev_used;
        }
        Some(false)
    }
}
