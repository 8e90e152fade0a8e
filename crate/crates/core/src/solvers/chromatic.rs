use crate::error::Result;
use crate::graph::{Coloring, Graph};

use super::{Budget, SearchOutcome};

/// Greedy clique: from each start vertex, repeatedly add the candidate with most
/// neighbors among the remaining candidates. Returns the largest found.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    for start in 0..g.n() {
        let mut clique = vec![start];
        let mut cand = g.neighbors(start).clone();
        while let Some(next) = cand
            .ones()
            .max_by_key(|&v| (g.neighbors(v).intersection(&cand).count(), std::cmp::Reverse(v)))
        {
            clique.push(next);
            cand.intersect_with(g.neighbors(next));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// DSATUR greedy coloring (canonical form).
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let n = g.n();
    let mut state = Dsatur::new(g, n.max(1));
    for _ in 0..n {
        let v = state.pick().expect("uncolored vertex");
        let c = (0..n).find(|&c| state.nbr_count[v * state.k + c] == 0).unwrap();
        state.assign(v, c);
    }
    Coloring::new(state.colors.iter().map(|c| c.unwrap()).collect()).canonical()
}

struct Dsatur<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<Option<usize>>,
    /// nbr_count[v * k + c] = colored neighbors of v with color c.
    nbr_count: Vec<u32>,
    saturation: Vec<usize>,
    used: usize,
}

impl<'g> Dsatur<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        Dsatur {
            g,
            k,
            colors: vec![None; g.n()],
            nbr_count: vec![0; g.n() * k],
            saturation: vec![0; g.n()],
            used: 0,
        }
    }

    /// Uncolored vertex of maximum saturation, then degree, then smallest index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        for w in self.g.neighbors(v).ones() {
            let slot = &mut self.nbr_count[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v].take().unwrap();
        for w in self.g.neighbors(v).ones() {
            let slot = &mut self.nbr_count[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }
}

/// Exact k-colorability (homomorphism to `K_k`) by DSATUR-ordered backtracking.
/// A fresh color is only ever introduced as the next unused one.
pub fn is_k_colorable(g: &Graph, k: usize, budget: Budget) -> SearchOutcome<Coloring> {
    let n = g.n();
    if n == 0 {
        return SearchOutcome::Found(Coloring::new(Vec::new()));
    }
    if k == 0 {
        return SearchOutcome::NoneExists;
    }
    let mut state = Dsatur::new(g, k);
    let mut counter = budget.counter();
    match color_rec(&mut state, 0, &mut counter) {
        Some(true) => SearchOutcome::Found(
            Coloring::new(state.colors.iter().map(|c| c.unwrap()).collect()).canonical(),
        ),
        Some(false) => SearchOutcome::NoneExists,
        None => SearchOutcome::BudgetExceeded,
    }
}

/// Some(true) = solved, Some(false) = infeasible, None = out of budget.
fn color_rec(state: &mut Dsatur<'_>, depth: usize, counter: &mut super::NodeCounter) -> Option<bool> {
    if depth == state.g.n() {
        return Some(true);
    }
    if !counter.tick() {
        return None;
    }
    let v = state.pick().unwrap();
    if state.saturation[v] >= state.k {
        return Some(false);
    }
    let limit = (state.used + 1).min(state.k);
    for c in 0..limit {
        if state.nbr_count[v * state.k + c] != 0 {
            continue;
        }
        let prev_used = state.used;
        state.used = state.used.max(c + 1);
        state.assign(v, c);
        match color_rec(state, depth + 1, counter) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        state.unassign(v);
        state.used = prev_used;
    }
    Some(false)
}

/// Exact chromatic number with a witness coloring.
///
/// Bracketed by a greedy clique from below and DSATUR from above; each k in
/// between is decided exactly.
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<(usize, Coloring)> {
    if g.n() == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let upper = greedy_coloring(g);
    let ub = upper.palette_size();
    let lb = greedy_clique(g).len().max(1);
    for k in lb..ub {
        match is_k_colorable(g, k, budget) {
            SearchOutcome::Found(c) => return Ok((k, c)),
            SearchOutcome::NoneExists => {}
            SearchOutcome::BudgetExceeded => {
                return Err(crate::error::Error::BudgetExceeded(budget.max_nodes.unwrap_or(0)))
            }
        }
    }
    Ok((ub, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle, kneser, schrijver, universal};

    /// Brute force over all k^n assignments.
    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        for k in 1..=n {
            let mut colors = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| colors[u] != colors[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    colors[i] += 1;
                    if colors[i] < k {
                        break;
                    }
                    colors[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn small_values() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(chromatic_number(&k4, Budget::UNLIMITED).unwrap().0, 4);
        let c5 = cycle(5).unwrap();
        assert_eq!(chromatic_number(&c5, Budget::UNLIMITED).unwrap().0, 3);
        let k1 = complete_graph(1).unwrap();
        assert_eq!(chromatic_number(&k1, Budget::UNLIMITED).unwrap().0, 1);
    }

    #[test]
    fn petersen_and_schrijver_match_brute_force() {
        let p = kneser(5, 2).unwrap();
        assert_eq!(brute_chi(&p), 3);
        let (chi, w) = chromatic_number(&p, Budget::UNLIMITED).unwrap();
        assert_eq!(chi, 3);
        assert!(w.is_proper(&p));
        let sg = schrijver(6, 2).unwrap();
        assert_eq!(brute_chi(&sg), 4);
        assert_eq!(chromatic_number(&sg, Budget::UNLIMITED).unwrap().0, 4);
    }

    #[test]
    fn universal_5_3_is_4_chromatic() {
        let u = universal(5, 3).unwrap();
        let (chi, w) = chromatic_number(&u, Budget::UNLIMITED).unwrap();
        assert_eq!(chi, 4);
        assert!(w.is_proper(&u));
        assert_eq!(w.palette_size(), 4);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let sg = schrijver(6, 2).unwrap();
        assert_eq!(is_k_colorable(&sg, 3, Budget::nodes(2)), SearchOutcome::BudgetExceeded);
    }
}
