use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

use super::local::PARTITION_LIMIT;

/// Streams every partition of `V(g)` into nonempty independent sets exactly once,
/// as canonical colorings (restricted growth strings), in lexicographic order.
pub fn enumerate_proper_partitions(g: &Graph) -> Result<ProperPartitions<'_>> {
    if g.n() > PARTITION_LIMIT {
        return Err(Error::TooLarge(format!(
            "partition enumeration is limited to {PARTITION_LIMIT} vertices, graph has {}",
            g.n()
        )));
    }
    Ok(ProperPartitions {
        g,
        colors: vec![0; g.n()],
        prefix_max: vec![0; g.n()],
        state: State::Fresh,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

#[derive(Debug)]
pub struct ProperPartitions<'g> {
    g: &'g Graph,
    colors: Vec<usize>,
    /// prefix_max[i] = number of colors used by `colors[..=i]`.
    prefix_max: Vec<usize>,
    state: State,
}

impl ProperPartitions<'_> {
    /// Smallest admissible color `>= from` for position `i`, given the prefix.
    fn first_fit(&self, i: usize, from: usize) -> Option<usize> {
        let used = if i == 0 { 0 } else { self.prefix_max[i - 1] };
        (from..=used).find(|&c| {
            self.g
                .neighbors(i)
                .ones()
                .take_while(|&w| w < i)
                .all(|w| self.colors[w] != c)
        })
    }

    fn set(&mut self, i: usize, c: usize) {
        self.colors[i] = c;
        let before = if i == 0 { 0 } else { self.prefix_max[i - 1] };
        self.prefix_max[i] = before.max(c + 1);
    }

    /// Fills positions `i..n` with first fits, backtracking as needed.
    fn descend(&mut self, mut i: usize, mut from: usize) -> bool {
        let n = self.g.n();
        loop {
            if i == n {
                return true;
            }
            match self.first_fit(i, from) {
                Some(c) => {
                    self.set(i, c);
                    i += 1;
                    from = 0;
                }
                None => {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    from = self.colors[i] + 1;
                }
            }
        }
    }
}

impl Iterator for ProperPartitions<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        let n = self.g.n();
        let ok = match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                self.descend(0, 0)
            }
            State::Running => n > 0 && self.descend(n - 1, self.colors[n - 1] + 1),
        };
        if ok {
            Some(Coloring::new(self.colors.clone()))
        } else {
            self.state = State::Done;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle};

    /// All set partitions of `0..n` as restricted growth strings, unfiltered.
    fn all_set_partitions(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                let used = p.iter().max().map_or(0, |m| m + 1);
                for c in 0..=used {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn complete_graph_has_one_partition() {
        let k3 = complete_graph(3).unwrap();
        let parts: Vec<_> = enumerate_proper_partitions(&k3).unwrap().collect();
        assert_eq!(parts, vec![Coloring::new(vec![0, 1, 2])]);
    }

    #[test]
    fn edgeless_gives_bell_numbers() {
        let g = Graph::with_numbered_vertices("E3", 3, []).unwrap();
        assert_eq!(enumerate_proper_partitions(&g).unwrap().count(), 5);
        assert_eq!(all_set_partitions(5).len(), 52);
    }

    #[test]
    fn c5_matches_filtered_brute_force() {
        let c5 = cycle(5).unwrap();
        let expected: Vec<Vec<usize>> = all_set_partitions(5)
            .into_iter()
            .filter(|p| c5.edges().all(|(u, v)| p[u] != p[v]))
            .collect();
        let got: Vec<Vec<usize>> = enumerate_proper_partitions(&c5)
            .unwrap()
            .map(|c| c.colors().to_vec())
            .collect();
        assert_eq!(got, expected);
        assert!(got.iter().all(|p| Coloring::new(p.clone()).is_canonical()));
    }

    #[test]
    fn refuses_large_graphs() {
        let g = cycle(13).unwrap();
        assert!(matches!(enumerate_proper_partitions(&g), Err(Error::TooLarge(_))));
    }
}
