//! The maps `f : B₀(U(m,r)) → L'_{m,r}` and `g : sd(L'_{m,r}) → B₀(U(m,r))`
//! together with exhaustive checks of their properties.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{universal, universal_vertices};
use crate::graph::Graph;
use crate::simplicial::{SimplicialComplex, Simplex};

use super::{box_complex_b0, disjoint_pairs, l_complex, Sign, SignedVertex};

/// Default cap on the number of chains enumerated for `g`.
pub const CHAIN_LIMIT: u64 = 5_000_000;

/// A simplex `S⊎T` of a signed complex over `[m]`, as sorted 0-based sides.
pub type SignedSet = (Vec<usize>, Vec<usize>);

/// Verification summary; `monotone` and `nonempty` only apply to chain maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub checked: usize,
    pub simplicial: bool,
    pub equivariant: bool,
    pub monotone: Option<bool>,
    pub nonempty: Option<bool>,
}

impl MapReport {
    pub fn all_hold(&self) -> bool {
        self.simplicial && self.equivariant && self.monotone != Some(false) && self.nonempty != Some(false)
    }
}

/// A vertex map between two complexes with involutions, with its properties
/// recomputed over every facet of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialZ2Map {
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<usize>,
    pub is_simplicial: bool,
    pub is_equivariant: bool,
    pub checked: usize,
}

impl SimplicialZ2Map {
    pub fn check(source: &SimplicialComplex, target: &SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.n_vertices() || vertex_map.iter().any(|&v| v >= target.n_vertices()) {
            return Err(Error::InvalidParameter(format!(
                "vertex map does not send the {} vertices of `{}` into the {} vertices of `{}`",
                source.n_vertices(),
                source.name(),
                target.n_vertices(),
                target.name()
            )));
        }
        let (Some(nu), Some(pi)) = (source.z2(), target.z2()) else {
            return Err(Error::InvalidComplex("both complexes need an involution".into()));
        };
        let is_simplicial = source.facets().par_iter().all(|f| {
            let img: BTreeSet<usize> = f.iter().map(|&v| vertex_map[v]).collect();
            target.contains(&img.into_iter().collect::<Simplex>())
        });
        let is_equivariant =
            (0..source.n_vertices()).all(|v| vertex_map[nu.involution[v]] == pi.involution[vertex_map[v]]);
        Ok(SimplicialZ2Map {
            source: source.name().to_string(),
            target: target.name().to_string(),
            vertex_map,
            is_simplicial,
            is_equivariant,
            checked: source.facets().len(),
        })
    }

    pub fn report(&self) -> MapReport {
        MapReport {
            checked: self.checked,
            simplicial: self.is_simplicial,
            equivariant: self.is_equivariant,
            monotone: None,
            nonempty: None,
        }
    }
}

/// `+(i,A) ↦ +i`, `-(i,A) ↦ -i`, checked on `B₀(U(m,r))`; fails if a property does not hold.
pub fn map_f_universal_to_l(m: usize, r: usize) -> Result<SimplicialZ2Map> {
    let (_, map) = map_f_with_complexes(m, r)?;
    Ok(map)
}

/// As [`map_f_universal_to_l`], also returning the source and target complexes.
pub fn map_f_with_complexes(m: usize, r: usize) -> Result<((SimplicialComplex, SimplicialComplex), SimplicialZ2Map)> {
    let u = universal(m, r)?;
    let source = box_complex_b0(&u)?;
    let target = l_complex(m, r, true)?;
    let verts = universal_vertices(m, r);
    let n = u.n();
    let vertex_map = (0..2 * n)
        .map(|x| {
            let sv = SignedVertex::from_index(x, n);
            let i = verts[sv.base].0;
            let label = match sv.sign {
                Sign::Plus => format!("+{}", i + 1),
                Sign::Minus => format!("-{}", i + 1),
            };
            target.vertex_by_label(&label).ok_or(Error::UnknownVertex(label))
        })
        .collect::<Result<Vec<_>>>()?;
    let map = SimplicialZ2Map::check(&source, &target, vertex_map)?;
    if !(map.is_simplicial && map.is_equivariant) {
        return Err(Error::VerificationFailed(format!("map f for (m,r) = ({m},{r}): {:?}", map.report())));
    }
    Ok(((source, target), map))
}

/// The image of one chain of `L'_{m,r}`, as index sets into `U(m,r)`'s vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainImage {
    pub w: Vec<usize>,
    pub z: Vec<usize>,
}

/// Evaluates `g` on chains of `L'_{m,r}`.
pub struct MapG {
    m: usize,
    r: usize,
    universal: Graph,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl MapG {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        let universal = universal(m, r)?;
        let index = universal_vertices(m, r).into_iter().enumerate().map(|(x, v)| (v, x)).collect();
        Ok(MapG { m, r, universal, index })
    }

    pub fn universal(&self) -> &Graph {
        &self.universal
    }

    /// `W = {(i,H) : i ∈ S, T' ⊆ H}`, `Z = {(i,H) : i ∈ T, S' ⊆ H}` where `S⊎T` is
    /// the smallest and `S'⊎T'` the largest element of the chain.
    pub fn image(&self, chain: &[SignedSet]) -> ChainImage {
        let (s, t) = &chain[0];
        let (s_top, t_top) = &chain[chain.len() - 1];
        ChainImage {
            w: self.side(s, t_top),
            z: self.side(t, s_top),
        }
    }

    fn side(&self, firsts: &[usize], inside: &[usize]) -> Vec<usize> {
        use itertools::Itertools;
        let mut out = Vec::new();
        if inside.len() > self.r - 1 {
            return out;
        }
        for &i in firsts.iter().filter(|i| !inside.contains(i)) {
            let free: Vec<usize> = (0..self.m).filter(|&x| x != i && !inside.contains(&x)).collect();
            for extra in free.into_iter().combinations(self.r - 1 - inside.len()) {
                let mut h: Vec<usize> = inside.iter().copied().chain(extra).collect();
                h.sort_unstable();
                out.push(self.index[&(i, h)]);
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether `W⊎Z` is a simplex of `B₀(U(m,r))`.
    pub fn is_box_simplex(&self, img: &ChainImage) -> bool {
        img.w.iter().all(|x| !img.z.contains(x))
            && img.w.iter().all(|&x| img.z.iter().all(|&y| self.universal.has_edge(x, y)))
    }
}

fn is_sub(a: &SignedSet, b: &SignedSet) -> bool {
    a.0.iter().all(|x| b.0.contains(x)) && a.1.iter().all(|x| b.1.contains(x))
}

fn swap(c: &[SignedSet]) -> Vec<SignedSet> {
    c.iter().map(|(s, t)| (t.clone(), s.clone())).collect()
}

/// Nonempty simplices of `L'_{m,r}` ordered by size.
pub fn l_prime_simplices(m: usize, r: usize) -> Result<Vec<SignedSet>> {
    l_complex(m, r, true)?;
    let mut out: Vec<SignedSet> = disjoint_pairs(m)
        .filter(|(s, t)| !(s.is_empty() && t.is_empty()))
        .filter(|(s, t)| (s.len() < r && t.len() < r) || s.is_empty() || t.is_empty())
        .collect();
    out.sort_by_key(|(s, t)| (s.len() + t.len(), s.clone(), t.clone()));
    Ok(out)
}

/// All chains `σ₀ ⊊ σ₁ ⊊ ... ⊊ σ_k` of nonempty simplices, as index lists.
fn chains(simplices: &[SignedSet], limit: u64) -> Result<Vec<Vec<usize>>> {
    let up: Vec<Vec<usize>> = simplices
        .iter()
        .map(|a| {
            (0..simplices.len())
                .filter(|&j| simplices[j] != *a && is_sub(a, &simplices[j]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..simplices.len()).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        if out.len() as u64 >= limit {
            return Err(Error::BudgetExceeded(limit));
        }
        for &j in &up[*c.last().unwrap()] {
            let mut d = c.clone();
            d.push(j);
            stack.push(d);
        }
        out.push(c);
    }
    Ok(out)
}

/// Checks `g` over every chain of `L'_{m,r}`: simplex-valued, nonempty,
/// monotone decreasing on covering pairs, and equivariant. Any failure is an error.
pub fn map_g_l_to_universal(m: usize, r: usize, max_chains: Option<u64>) -> Result<MapReport> {
    let report = map_g_report(m, r, max_chains)?;
    if !report.all_hold() {
        return Err(Error::VerificationFailed(format!("map g for (m,r) = ({m},{r}): {report:?}")));
    }
    Ok(report)
}

/// The report without turning failures into errors.
pub fn map_g_report(m: usize, r: usize, max_chains: Option<u64>) -> Result<MapReport> {
    let g = MapG::new(m, r)?;
    let simplices = l_prime_simplices(m, r)?;
    let all = chains(&simplices, max_chains.unwrap_or(CHAIN_LIMIT))?;
    let as_sets = |c: &[usize]| -> Vec<SignedSet> { c.iter().map(|&i| simplices[i].clone()).collect() };
    let flags: Vec<(bool, bool, bool, bool)> = all
        .par_iter()
        .map(|c| {
            let chain = as_sets(c);
            let img = g.image(&chain);
            let simplicial = g.is_box_simplex(&img);
            let nonempty = !(img.w.is_empty() && img.z.is_empty());
            let mirrored = g.image(&swap(&chain));
            let equivariant = mirrored.w == img.z && mirrored.z == img.w;
            let monotone = (0..simplices.len()).all(|k| {
                let Some(bigger) = insert_into_chain(&simplices, c, k) else {
                    return true;
                };
                let img2 = g.image(&as_sets(&bigger));
                img2.w.iter().all(|x| img.w.binary_search(x).is_ok())
                    && img2.z.iter().all(|x| img.z.binary_search(x).is_ok())
            });
            (simplicial, nonempty, monotone, equivariant)
        })
        .collect();
    Ok(MapReport {
        checked: all.len(),
        simplicial: flags.iter().all(|f| f.0),
        nonempty: Some(flags.iter().all(|f| f.1)),
        monotone: Some(flags.iter().all(|f| f.2)),
        equivariant: flags.iter().all(|f| f.3),
    })
}

/// `c ∪ {k}` if it is again a chain (and `k ∉ c`).
fn insert_into_chain(simplices: &[SignedSet], c: &[usize], k: usize) -> Option<Vec<usize>> {
    if c.contains(&k) {
        return None;
    }
    let pos = c.iter().position(|&i| is_sub(&simplices[k], &simplices[i])).unwrap_or(c.len());
    if c[..pos].iter().any(|&i| !is_sub(&simplices[i], &simplices[k])) {
        return None;
    }
    let mut d = c.to_vec();
    d.insert(pos, k);
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::parse_universal_label;

    #[test]
    fn f_small_cases() {
        for (m, r) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
            let map = map_f_universal_to_l(m, r).unwrap();
            assert!(map.is_simplicial && map.is_equivariant, "({m},{r})");
            assert!(map.checked > 0);
        }
    }

    #[test]
    fn f_two_sided_images_are_small() {
        let (m, r) = (5, 3);
        let ((source, target), map) = map_f_with_complexes(m, r).unwrap();
        for f in source.facets() {
            let mut plus = BTreeSet::new();
            let mut minus = BTreeSet::new();
            for &v in f {
                let l = &target.labels()[map.vertex_map[v]];
                if l.starts_with('+') {
                    plus.insert(l.clone());
                } else {
                    minus.insert(l.clone());
                }
            }
            if !plus.is_empty() && !minus.is_empty() {
                assert!(plus.len() < r && minus.len() < r);
            }
        }
        // labels of the source agree with the first coordinate being mapped
        let v = source.labels()[0].clone();
        let (i, _) = parse_universal_label(&v[1..]).unwrap();
        assert_eq!(target.labels()[map.vertex_map[0]], format!("+{}", i + 1));
    }

    #[test]
    fn a_non_equivariant_map_is_flagged() {
        let l = l_complex(3, 2, false).unwrap();
        let id: Vec<usize> = (0..l.n_vertices()).collect();
        let ok = SimplicialZ2Map::check(&l, &l, id).unwrap();
        assert!(ok.is_simplicial && ok.is_equivariant);
        let n = l.n_vertices();
        let constant_ish: Vec<usize> = (0..n).map(|v| if v == 0 { 1 } else { v }).collect();
        let bad = SimplicialZ2Map::check(&l, &l, constant_ish).unwrap();
        assert!(!bad.is_equivariant);
    }

    #[test]
    fn g_small_cases() {
        for (m, r) in [(3, 2), (4, 3), (5, 3)] {
            let rep = map_g_l_to_universal(m, r, None).unwrap();
            assert!(rep.all_hold(), "({m},{r}) {rep:?}");
        }
    }

    #[test]
    fn g_on_a_singleton_one_sided_chain() {
        let g = MapG::new(5, 3).unwrap();
        let img = g.image(&[(vec![0, 1, 2], vec![])]);
        assert!(img.z.is_empty());
        // each i in S pairs with every 2-subset of the other four elements
        assert_eq!(img.w.len(), 3 * 6);
    }

    #[test]
    fn chain_enumeration_counts() {
        // chains in the face poset of a single edge {a, b}: {a},{b},{ab},{a<ab},{b<ab}
        let simplices: Vec<SignedSet> = vec![(vec![0], vec![]), (vec![1], vec![]), (vec![0, 1], vec![])];
        assert_eq!(chains(&simplices, 100).unwrap().len(), 5);
        assert!(matches!(chains(&simplices, 2), Err(Error::BudgetExceeded(2))));
    }
}
