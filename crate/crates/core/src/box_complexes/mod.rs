//! Complexes built from graphs: the box complex `B₀(G)`, the hom complex
//! `Hom(K₂,G)` as a cell poset with its order complex, the neighborhood complex,
//! the subcomplexes `L_{m,r}` / `L'_{m,r}` of `B₀(K_m)`, Bier spheres, and
//! `Ĥ_{m,r}`.
//!
//! Signed vertices of a graph on `n` vertices are indexed `+v ↦ v`, `-v ↦ n + v`
//! and labelled `"+label"`, `"-label"`.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::complete_graph;
use crate::graph::Graph;
use crate::homology::{betti_from_boundaries, squares_to_zero, BettiVector, BoundaryMatrix};
use crate::simplicial::{maximal_sets, FVector, Simplex, SimplicialComplex};

mod maps;

pub use maps::{
    l_prime_simplices, map_f_universal_to_l, map_f_with_complexes, map_g_l_to_universal, map_g_report, ChainImage,
    MapG, MapReport, SignedSet, SimplicialZ2Map, CHAIN_LIMIT,
};

/// Largest ground set for which signed complexes are built by enumerating all `3^m` sign patterns.
pub const SIGNED_GROUND_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// `+v` or `-v` for a vertex `v` of the underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedVertex {
    pub base: usize,
    pub sign: Sign,
}

impl SignedVertex {
    pub fn index(self, n: usize) -> usize {
        match self.sign {
            Sign::Plus => self.base,
            Sign::Minus => n + self.base,
        }
    }

    pub fn from_index(i: usize, n: usize) -> Self {
        if i < n {
            SignedVertex { base: i, sign: Sign::Plus }
        } else {
            SignedVertex { base: i - n, sign: Sign::Minus }
        }
    }

    pub fn label(self, ground: &[String]) -> String {
        match self.sign {
            Sign::Plus => format!("+{}", ground[self.base]),
            Sign::Minus => format!("-{}", ground[self.base]),
        }
    }
}

fn signed_labels(ground: &[String]) -> Vec<String> {
    let n = ground.len();
    (0..2 * n).map(|i| SignedVertex::from_index(i, n).label(ground)).collect()
}

fn swap_signs(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect()
}

/// All maximal bicliques `(S, T)` with both sides nonempty, as ordered pairs.
///
/// The closed sides are exactly the nonempty intersections of neighborhoods, so
/// they are generated by closing `{N(v)}` under intersection with neighborhoods.
pub fn maximal_bicliques(g: &Graph) -> Vec<(FixedBitSet, FixedBitSet)> {
    let mut family: HashSet<FixedBitSet> = HashSet::new();
    let mut queue = VecDeque::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v).clone();
        if !nb.is_clear() && family.insert(nb.clone()) {
            queue.push_back(nb);
        }
    }
    while let Some(x) = queue.pop_front() {
        for v in 0..g.n() {
            let mut y = x.clone();
            y.intersect_with(g.neighbors(v));
            if !y.is_clear() && !family.contains(&y) {
                family.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<(FixedBitSet, FixedBitSet)> = family
        .into_iter()
        .map(|s| {
            let t = g.common_neighbors(&s);
            (s, t)
        })
        .collect();
    out.sort_by(|a, b| {
        a.0.ones().cmp(b.0.ones()).then_with(|| a.1.ones().cmp(b.1.ones()))
    });
    out
}

/// The box complex `B₀(G)` with the sign-swapping involution.
///
/// Facets: `V⊎∅`, `∅⊎V`, and every maximal biclique `S⊎T` with both sides nonempty.
pub fn box_complex_b0(g: &Graph) -> Result<SimplicialComplex> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("box complex of the null graph is empty".into()));
    }
    let mut facets: Vec<Simplex> = vec![(0..n).collect(), (n..2 * n).collect()];
    for (s, t) in maximal_bicliques(g) {
        facets.push(s.ones().chain(t.ones().map(|v| v + n)).collect());
    }
    SimplicialComplex::from_facets(format!("B0({})", g.name()), signed_labels(g.labels()), facets)?
        .with_involution(swap_signs(n))
}

/// Builds a signed complex on `±ground` from a hereditary predicate on disjoint
/// pairs `(S, T)`; vertices that occur in no simplex are dropped.
fn signed_complex<F>(name: String, ground: &[String], pred: F, with_z2: bool) -> Result<SimplicialComplex>
where
    F: Fn(&[usize], &[usize]) -> bool,
{
    let m = ground.len();
    if m > SIGNED_GROUND_LIMIT {
        return Err(Error::TooLarge(format!(
            "signed complexes are enumerated up to m = {SIGNED_GROUND_LIMIT}, got {m}"
        )));
    }
    let mut facets = Vec::new();
    for (s, t) in disjoint_pairs(m) {
        if (s.is_empty() && t.is_empty()) || !pred(&s, &t) {
            continue;
        }
        let free: Vec<usize> = (0..m).filter(|x| !s.contains(x) && !t.contains(x)).collect();
        let extendable = free.iter().any(|&x| {
            let mut s2 = s.clone();
            s2.push(x);
            s2.sort_unstable();
            let mut t2 = t.clone();
            t2.push(x);
            t2.sort_unstable();
            pred(&s2, &t) || pred(&s, &t2)
        });
        if !extendable {
            facets.push(s.iter().copied().chain(t.iter().map(|&x| x + m)).collect::<Simplex>());
        }
    }
    if facets.is_empty() {
        return Err(Error::InvalidParameter(format!("`{name}` has no simplices")));
    }
    let labels = signed_labels(ground);
    let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let facets = facets.into_iter().map(|f| f.iter().map(|v| pos[v]).collect()).collect();
    let k = SimplicialComplex::from_facets(name, used.iter().map(|&v| labels[v].clone()).collect(), facets)?;
    if !with_z2 {
        return Ok(k);
    }
    let inv = used
        .iter()
        .map(|&v| pos.get(&if v < m { v + m } else { v - m }).copied().unwrap_or(usize::MAX))
        .collect();
    k.with_involution(inv)
}

/// Every pair of disjoint subsets of `0..m`, as sorted vectors (`3^m` pairs).
fn disjoint_pairs(m: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..3usize.pow(m as u32)).map(move |mut code| {
        let (mut s, mut t) = (Vec::new(), Vec::new());
        for x in 0..m {
            match code % 3 {
                1 => s.push(x),
                2 => t.push(x),
                _ => {}
            }
            code /= 3;
        }
        (s, t)
    })
}

fn ground(m: usize) -> Vec<String> {
    (1..=m).map(|i| i.to_string()).collect()
}

/// `L_{m,r}`: simplices `S⊎T` of `B₀(K_m)` with `|S|, |T| < r`; the primed
/// variant adds every one-sided simplex. `r = m + 1` gives `L_m = B₀(K_m)`.
pub fn l_complex(m: usize, r: usize, primed: bool) -> Result<SimplicialComplex> {
    if m == 0 || r == 0 || r > m + 1 {
        return Err(Error::InvalidParameter(format!("L_(m,r) needs 1 <= r <= m + 1, got m={m}, r={r}")));
    }
    let name = if primed { format!("L'({m},{r})") } else { format!("L({m},{r})") };
    signed_complex(
        name,
        &ground(m),
        |s, t| (s.len() < r && t.len() < r) || (primed && (s.is_empty() || t.is_empty())),
        true,
    )
}

/// Parses vertex labels of `k` as elements of `[m]` (1-based), returned 0-based.
fn ground_positions(m: usize, k: &SimplicialComplex) -> Result<Vec<usize>> {
    k.labels()
        .iter()
        .map(|l| match l.parse::<usize>() {
            Ok(x) if (1..=m).contains(&x) => Ok(x - 1),
            _ => Err(Error::InvalidParameter(format!("vertex `{l}` of `{}` is not an element of [{m}]", k.name()))),
        })
        .collect()
}

/// `Bier_m(K) = { S⊎T ∈ L_m : S ∈ K, [m] \ T ∉ K }` for a complex `K` whose
/// vertex labels are elements of `[m]`.
pub fn bier_sphere(m: usize, k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let pos = ground_positions(m, k)?;
    let mut index = vec![usize::MAX; m];
    for (v, &x) in pos.iter().enumerate() {
        index[x] = v;
    }
    let member = |set: &[usize]| -> bool {
        if set.iter().any(|&x| index[x] == usize::MAX) {
            return false;
        }
        let mut s: Vec<usize> = set.iter().map(|&x| index[x]).collect();
        s.sort_unstable();
        k.contains(&s)
    };
    let full: Vec<usize> = (0..m).collect();
    if member(&full) {
        return Err(Error::InvalidParameter(format!("`{}` contains the full ground set [{m}]", k.name())));
    }
    signed_complex(
        format!("Bier{m}({})", k.name()),
        &ground(m),
        |s, t| {
            let complement: Vec<usize> = (0..m).filter(|x| !t.contains(x)).collect();
            member(s) && !member(&complement)
        },
        false,
    )
}

/// The complex of all subsets of `[m]` with at most `size` elements.
pub fn skeleton_of_simplex(m: usize, size: usize) -> Result<SimplicialComplex> {
    use itertools::Itertools;
    if size == 0 || size > m {
        return Err(Error::InvalidParameter(format!("need 1 <= size <= m, got m={m}, size={size}")));
    }
    SimplicialComplex::from_facets(format!("Δ({m},≤{size})"), ground(m), (0..m).combinations(size).collect())
}

/// A cell `S⊎T` of a hom complex: disjoint nonempty sides with `S × T ⊆ E(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.s.len() + self.t.len() - 2
    }

    pub fn swapped(&self) -> Cell {
        Cell { s: self.t.clone(), t: self.s.clone() }
    }

    pub fn contains(&self, other: &Cell) -> bool {
        other.s.iter().all(|x| self.s.contains(x)) && other.t.iter().all(|x| self.t.contains(x))
    }

    pub fn label(&self, ground: &[String]) -> String {
        let side = |xs: &[usize]| format!("{{{}}}", xs.iter().map(|&x| ground[x].as_str()).collect::<Vec<_>>().join(","));
        format!("{}⊎{}", side(&self.s), side(&self.t))
    }
}

/// On-disk form `{"cells": [[[S],[T]], ...]}` with sorted sides (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellPosetJson {
    pub name: String,
    pub ground: Vec<String>,
    pub cells: Vec<[Vec<usize>; 2]>,
}

/// The face poset of a hom-type cell complex, ordered by componentwise inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPoset {
    name: String,
    ground: Vec<String>,
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl CellPoset {
    /// Validates the downward-closure invariant among nonempty-sided cells.
    pub fn new(name: impl Into<String>, ground: Vec<String>, mut cells: Vec<Cell>) -> Result<Self> {
        for c in cells.iter_mut() {
            c.s.sort_unstable();
            c.t.sort_unstable();
            if c.s.is_empty() || c.t.is_empty() || c.s.iter().any(|x| c.t.contains(x)) {
                return Err(Error::InvalidComplex(format!("malformed cell {c:?}")));
            }
        }
        cells.sort();
        cells.dedup();
        let index: HashMap<Cell, usize> = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let poset = CellPoset { name: name.into(), ground, cells, index };
        for c in &poset.cells {
            for d in poset.facets_of(c) {
                if !poset.index.contains_key(&d) {
                    return Err(Error::InvalidComplex(format!("cell poset not closed downward below {c:?}")));
                }
            }
        }
        Ok(poset)
    }

    /// Cells obtained by removing one element from a side of size at least 2.
    fn facets_of(&self, c: &Cell) -> Vec<Cell> {
        let mut out = Vec::new();
        if c.s.len() > 1 {
            for i in 0..c.s.len() {
                let mut s = c.s.clone();
                s.remove(i);
                out.push(Cell { s, t: c.t.clone() });
            }
        }
        if c.t.len() > 1 {
            for i in 0..c.t.len() {
                let mut t = c.t.clone();
                t.remove(i);
                out.push(Cell { s: c.s.clone(), t });
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Cell counts by cell dimension `|S| + |T| - 2`.
    pub fn f_vector(&self) -> FVector {
        let top = self.cells.iter().map(Cell::dim).max().map_or(0, |d| d + 1);
        let mut f = vec![0; top];
        self.cells.iter().for_each(|c| f[c.dim()] += 1);
        FVector(f)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Upward covers: add one ground element to one side.
    fn covers(&self, c: &Cell) -> Vec<usize> {
        let mut out = Vec::new();
        for x in 0..self.ground.len() {
            if c.s.contains(&x) || c.t.contains(&x) {
                continue;
            }
            let mut s = c.s.clone();
            s.push(x);
            s.sort_unstable();
            if let Some(&i) = self.index.get(&Cell { s, t: c.t.clone() }) {
                out.push(i);
            }
            let mut t = c.t.clone();
            t.push(x);
            t.sort_unstable();
            if let Some(&i) = self.index.get(&Cell { s: c.s.clone(), t }) {
                out.push(i);
            }
        }
        out
    }

    /// Order complex: vertices are cells, facets are maximal chains; the
    /// involution swaps the two sides of every cell.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        if self.cells.is_empty() {
            return Err(Error::InvalidComplex(format!("`{}` has no cells", self.name)));
        }
        let up: Vec<Vec<usize>> = self.cells.iter().map(|c| self.covers(c)).collect();
        let mut facets = Vec::new();
        let mut chain = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if c.s.len() == 1 && c.t.len() == 1 {
                chain.push(i);
                extend_chains(&up, &mut chain, &mut facets);
                chain.pop();
            }
        }
        let labels = self.cells.iter().map(|c| c.label(&self.ground)).collect();
        let inv = self.cells.iter().map(|c| self.index[&c.swapped()]).collect();
        SimplicialComplex::from_facets(format!("ord({})", self.name), labels, facets)?.with_involution(inv)
    }

    /// Link of the vertex `{x}⊎{y}`: the sets `W \ V` for cells `W ⊇ V`, as a
    /// complex on signed ground elements.
    pub fn link_of_vertex(&self, x: usize, y: usize) -> Result<SimplicialComplex> {
        let v = Cell { s: vec![x], t: vec![y] };
        if !self.index.contains_key(&v) {
            return Err(Error::UnknownVertex(v.label(&self.ground)));
        }
        let m = self.ground.len();
        let pieces: Vec<Simplex> = self
            .cells
            .iter()
            .filter(|w| w.contains(&v) && *w != &v)
            .map(|w| {
                w.s.iter()
                    .filter(|&&a| a != x)
                    .copied()
                    .chain(w.t.iter().filter(|&&b| b != y).map(|&b| b + m))
                    .collect()
            })
            .collect();
        let name = format!("lk({}, {})", self.name, v.label(&self.ground));
        if pieces.is_empty() {
            return Ok(SimplicialComplex::void(name));
        }
        let facets = maximal_sets(pieces, 2 * m);
        let labels = signed_labels(&self.ground);
        let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        SimplicialComplex::from_facets(
            name,
            used.iter().map(|&u| labels[u].clone()).collect(),
            facets.into_iter().map(|f| f.iter().map(|u| pos[u]).collect()).collect(),
        )
    }

    /// Cellular GF(2) Betti numbers: each cell is a product of two simplices, so
    /// its boundary is the sum of the cells with one element removed from a side.
    pub fn cellular_betti(&self, reduced: bool) -> Result<BettiVector> {
        let f = self.f_vector();
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); f.0.len()];
        let mut pos_in_dim = vec![0; self.cells.len()];
        for (i, c) in self.cells.iter().enumerate() {
            pos_in_dim[i] = by_dim[c.dim()].len();
            by_dim[c.dim()].push(i);
        }
        let boundaries: Vec<BoundaryMatrix> = (1..by_dim.len())
            .map(|d| {
                let cols = by_dim[d]
                    .iter()
                    .map(|&i| {
                        let mut col = FixedBitSet::with_capacity(by_dim[d - 1].len());
                        for face in self.facets_of(&self.cells[i]) {
                            col.toggle(pos_in_dim[self.index[&face]]);
                        }
                        col
                    })
                    .collect();
                BoundaryMatrix::from_columns(by_dim[d - 1].len(), cols)
            })
            .collect();
        if !squares_to_zero(&boundaries) {
            return Err(Error::VerificationFailed(format!("cellular ∂∂ ≠ 0 for `{}`", self.name)));
        }
        Ok(betti_from_boundaries(&f.0, &boundaries, reduced))
    }

    pub fn to_json(&self) -> CellPosetJson {
        CellPosetJson {
            name: self.name.clone(),
            ground: self.ground.clone(),
            cells: self.cells.iter().map(|c| [c.s.clone(), c.t.clone()]).collect(),
        }
    }

    pub fn from_json(json: CellPosetJson) -> Result<Self> {
        let cells = json.cells.into_iter().map(|[s, t]| Cell { s, t }).collect();
        Self::new(json.name, json.ground, cells)
    }
}

fn extend_chains(up: &[Vec<usize>], chain: &mut Vec<usize>, out: &mut Vec<Simplex>) {
    let top = *chain.last().unwrap();
    if up[top].is_empty() {
        out.push(chain.clone());
        return;
    }
    for &next in &up[top] {
        chain.push(next);
        extend_chains(up, chain, out);
        chain.pop();
    }
}

/// All cells `S⊎T` of `Hom(K₂, G)`.
pub fn hom_complex(g: &Graph) -> Result<CellPoset> {
    if g.is_edgeless() {
        return Err(Error::InvalidParameter(format!("`{}` has no edges, so Hom(K2, G) is empty", g.name())));
    }
    let n = g.n();
    let mut cells = Vec::new();
    // Grow S in increasing order while tracking its common neighborhood.
    fn grow(g: &Graph, start: usize, s: &mut Vec<usize>, common: &FixedBitSet, out: &mut Vec<Cell>) {
        for v in start..g.n() {
            let mut next = common.clone();
            next.intersect_with(g.neighbors(v));
            if next.is_clear() {
                continue;
            }
            s.push(v);
            let t_choices: Vec<usize> = next.ones().collect();
            for mask in 1u64..(1u64 << t_choices.len()) {
                let t = (0..t_choices.len()).filter(|i| mask >> i & 1 == 1).map(|i| t_choices[i]).collect();
                out.push(Cell { s: s.clone(), t });
            }
            grow(g, v + 1, s, &next, out);
            s.pop();
        }
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    grow(g, 0, &mut Vec::new(), &all, &mut cells);
    CellPoset::new(format!("Hom(K2,{})", g.name()), g.labels().to_vec(), cells)
}

/// Order complex of `Hom(K₂, G)` with the side-swapping involution.
pub fn b_chain(g: &Graph) -> Result<SimplicialComplex> {
    let mut k = hom_complex(g)?.order_complex()?;
    k.set_name(format!("Bchain({})", g.name()));
    Ok(k)
}

/// Neighborhood complex: simplices are vertex sets with a common neighbor.
pub fn neighborhood_complex(g: &Graph) -> Result<SimplicialComplex> {
    if g.is_edgeless() {
        return Err(Error::InvalidParameter(format!("`{}` has no edges", g.name())));
    }
    let isolated: Vec<&str> = (0..g.n()).filter(|&v| g.degree(v) == 0).map(|v| g.label(v)).collect();
    if !isolated.is_empty() {
        log::warn!("isolated vertices {isolated:?} do not appear in N({})", g.name());
    }
    let used: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let facets = (0..g.n())
        .filter(|&v| g.degree(v) > 0)
        .map(|v| g.neighbors(v).ones().map(|w| pos[&w]).collect())
        .collect();
    SimplicialComplex::from_facets(
        format!("N({})", g.name()),
        used.iter().map(|&v| g.label(v).to_string()).collect(),
        facets,
    )
}

/// `Ĥ_{m,r} = Hom(K₂, K_m) ∩ L_{m,r}`: cells with disjoint nonempty sides of size ≤ r−1.
pub fn h_hat(m: usize, r: usize) -> Result<CellPoset> {
    if r < 2 || r > m {
        return Err(Error::InvalidParameter(format!("Ĥ_(m,r) needs 2 <= r <= m, got m={m}, r={r}")));
    }
    if m > SIGNED_GROUND_LIMIT {
        return Err(Error::TooLarge(format!("m = {m} exceeds {SIGNED_GROUND_LIMIT}")));
    }
    let cells = disjoint_pairs(m)
        .filter(|(s, t)| !s.is_empty() && !t.is_empty() && s.len() < r && t.len() < r)
        .map(|(s, t)| Cell { s, t })
        .collect();
    let km = complete_graph(m)?;
    CellPoset::new(format!("Hhat({m},{r})"), km.labels().to_vec(), cells)
}
