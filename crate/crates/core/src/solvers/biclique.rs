use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

/// Searches for disjoint `A`, `B` with `|A| = a`, `|B| = b`, every `A`-`B` pair an
/// edge, and all `a + b` vertices colored differently.
pub fn find_multicolored_biclique(
    g: &Graph,
    c: &Coloring,
    a: usize,
    b: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    c.check_proper(g)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("biclique sides must be nonempty".into()));
    }
    for side_a in (0..g.n()).combinations(a) {
        if !all_distinct(side_a.iter().map(|&v| c.color(v))) {
            continue;
        }
        let mut set_a = FixedBitSet::with_capacity(g.n());
        side_a.iter().for_each(|&v| set_a.insert(v));
        let common = g.common_neighbors(&set_a);
        let candidates: Vec<usize> = common
            .ones()
            .filter(|&w| side_a.iter().all(|&v| c.color(v) != c.color(w)))
            .collect();
        if let Some(side_b) = candidates
            .into_iter()
            .combinations(b)
            .find(|side_b| all_distinct(side_b.iter().map(|&v| c.color(v))))
        {
            return Ok(Some((side_a, side_b)));
        }
    }
    Ok(None)
}

fn all_distinct(colors: impl Iterator<Item = usize>) -> bool {
    let mut seen: Vec<usize> = colors.collect();
    let len = seen.len();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == len
}
