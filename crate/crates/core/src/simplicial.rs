//! Finite abstract simplicial complexes stored by their facets.
//!
//! Faces are enumerated on demand and cached per dimension. A complex may carry
//! a simplicial involution ([`Z2Structure`]), which is transported through
//! subdivision and suspension.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted vertex indices.
pub type Simplex = Vec<usize>;

/// Upper bound on the number of (facet, face) pairs visited by face enumeration.
pub const FACE_LIMIT: u64 = 1 << 24;

/// Largest complexes accepted by [`SimplicialComplex::is_isomorphic`].
pub const ISO_VERTEX_LIMIT: usize = 40;

/// A vertex involution with its recomputed validity and freeness flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Structure {
    pub involution: Vec<usize>,
    /// `ν∘ν = id` and `ν` carries simplices to simplices.
    pub is_valid: bool,
    /// No simplex is fixed setwise.
    pub is_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    name: String,
    labels: Vec<String>,
    facets: Vec<Simplex>,
    z2: Option<Z2Structure>,
    faces: OnceLock<Vec<Vec<Simplex>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets && self.z2 == other.z2
    }
}

impl Eq for SimplicialComplex {}

/// On-disk form: `{"name", "vertices", "facets", "involution"?}` with sorted facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub name: String,
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<usize>>,
}

/// Inclusion-maximal members of `sets` (each sorted), deduplicated and sorted.
pub fn maximal_sets(mut sets: Vec<Simplex>, universe: usize) -> Vec<Simplex> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<(Simplex, FixedBitSet)> = Vec::new();
    for s in sets {
        let mut bits = FixedBitSet::with_capacity(universe);
        s.iter().for_each(|&v| bits.insert(v));
        if !kept.iter().any(|(_, k)| bits.is_subset(k)) {
            kept.push((s, bits));
        }
    }
    let mut out: Vec<Simplex> = kept.into_iter().map(|(s, _)| s).collect();
    out.sort();
    out
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// `{a,b,...}` over the given labels.
pub fn simplex_label(labels: &[String], s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|&v| labels[v].as_str()).join(","))
}

impl SimplicialComplex {
    /// Builds a complex from (possibly non-maximal) facets; keeps only maximal ones.
    pub fn from_facets(name: impl Into<String>, labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::InvalidComplex("a complex needs at least one facet".into()));
        }
        Self::build(name.into(), labels, facets)
    }

    /// The complex with no simplices (as a link of an isolated vertex).
    pub fn void(name: impl Into<String>) -> Self {
        SimplicialComplex {
            name: name.into(),
            labels: Vec::new(),
            facets: Vec::new(),
            z2: None,
            faces: OnceLock::new(),
        }
    }

    fn build(name: String, labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let mut uniq = HashSet::with_capacity(n);
        if let Some(dup) = labels.iter().find(|l| !uniq.insert(l.as_str())) {
            return Err(Error::InvalidComplex(format!("duplicate vertex label `{dup}`")));
        }
        let mut cleaned = Vec::with_capacity(facets.len());
        for mut f in facets {
            if f.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!("vertex index {bad} out of range for {n} vertices")));
            }
            f.sort_unstable();
            f.dedup();
            cleaned.push(f);
        }
        let facets = maximal_sets(cleaned, n);
        let mut used = vec![false; n];
        facets.iter().flatten().for_each(|&v| used[v] = true);
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidComplex(format!("vertex `{}` lies in no facet", labels[v])));
        }
        Ok(SimplicialComplex {
            name,
            labels,
            facets,
            z2: None,
            faces: OnceLock::new(),
        })
    }

    /// Attaches an involution; validity and freeness are recomputed here.
    pub fn with_involution(mut self, involution: Vec<usize>) -> Result<Self> {
        if involution.len() != self.n_vertices() {
            return Err(Error::InvalidComplex(format!(
                "involution has {} entries, complex has {} vertices",
                involution.len(),
                self.n_vertices()
            )));
        }
        self.z2 = Some(self.z2_flags(involution));
        Ok(self)
    }

    fn z2_flags(&self, involution: Vec<usize>) -> Z2Structure {
        let n = self.n_vertices();
        let is_perm = involution.iter().all(|&v| v < n) && involution.iter().all_unique();
        let is_valid = is_perm
            && (0..n).all(|v| involution[involution[v]] == v)
            && self.facets.iter().all(|f| {
                let mut img: Vec<usize> = f.iter().map(|&v| involution[v]).collect();
                img.sort_unstable();
                self.contains(&img)
            });
        // A fixed simplex contains a fixed orbit, and orbits have size 1 or 2.
        let is_free = is_valid
            && (0..n).all(|v| involution[v] != v)
            && self.facets.iter().all(|f| f.iter().all(|&v| f.binary_search(&involution[v]).is_err()));
        Z2Structure {
            involution,
            is_valid,
            is_free,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn z2(&self) -> Option<&Z2Structure> {
        self.z2.as_ref()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for the void complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Membership of a sorted vertex set (the empty set is a member of every complex).
    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.facets.iter().any(|f| is_sorted_subset(simplex, f))
    }

    /// All simplices, grouped by dimension, each group sorted lexicographically.
    pub fn try_simplices(&self) -> Result<&[Vec<Simplex>]> {
        if let Some(faces) = self.faces.get() {
            return Ok(faces);
        }
        let work: u64 = self
            .facets
            .iter()
            .map(|f| 1u64.checked_shl(f.len() as u32).unwrap_or(u64::MAX))
            .fold(0u64, |a, b| a.saturating_add(b));
        if work > FACE_LIMIT {
            return Err(Error::TooLarge(format!(
                "face enumeration of `{}` would visit {work} faces",
                self.name
            )));
        }
        Ok(self.faces.get_or_init(|| self.enumerate_faces()))
    }

    /// Panicking variant of [`try_simplices`](Self::try_simplices) for desk-scale complexes.
    pub fn simplices(&self) -> &[Vec<Simplex>] {
        self.try_simplices().expect("complex too large for face enumeration")
    }

    fn enumerate_faces(&self) -> Vec<Vec<Simplex>> {
        let dim = self.dim();
        if dim < 0 {
            return Vec::new();
        }
        let mut seen: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim as usize + 1];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                seen[face.len() - 1].insert(face);
            }
        }
        seen.into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.simplices().iter().map(|d| d.len()).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Vertices are the simplices of `self`, facets its maximal chains.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        let faces = self.try_simplices()?;
        let mut index: HashMap<&[usize], usize> = HashMap::new();
        let mut labels = Vec::new();
        for s in faces.iter().flatten() {
            index.insert(s.as_slice(), labels.len());
            labels.push(simplex_label(&self.labels, s));
        }
        let flags: u64 = self.facets.iter().map(|f| (1..=f.len() as u64).product::<u64>()).sum();
        if flags > FACE_LIMIT {
            return Err(Error::TooLarge(format!("subdivision of `{}` has {flags} facets", self.name)));
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            for perm in f.iter().copied().permutations(f.len()) {
                let chain = (1..=perm.len())
                    .map(|k| {
                        let mut s = perm[..k].to_vec();
                        s.sort_unstable();
                        index[s.as_slice()]
                    })
                    .collect();
                facets.push(chain);
            }
        }
        let mut sd = Self::build(format!("sd({})", self.name), labels, facets)?;
        if let Some(z2) = &self.z2 {
            let inv = faces
                .iter()
                .flatten()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| z2.involution[v]).collect();
                    img.sort_unstable();
                    index.get(img.as_slice()).copied().unwrap_or(usize::MAX)
                })
                .collect();
            sd = sd.with_involution(inv)?;
        }
        Ok(sd)
    }

    /// `{σ \ v : v ∈ σ ∈ K}` minus the empty set, on the vertices that occur.
    pub fn link(&self, v: usize) -> Result<SimplicialComplex> {
        if v >= self.n_vertices() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let name = format!("lk({}, {})", self.name, self.labels[v]);
        let pieces: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| f.iter().copied().filter(|&w| w != v).collect::<Simplex>())
            .filter(|f| !f.is_empty())
            .collect();
        if pieces.is_empty() {
            return Ok(Self::void(name));
        }
        Ok(self.induced_on_used(name, pieces))
    }

    /// Complex on exactly the vertices used by `facets`, keeping their labels.
    fn induced_on_used(&self, name: String, facets: Vec<Simplex>) -> SimplicialComplex {
        let used: Vec<usize> = facets.iter().flatten().copied().sorted_unstable().dedup().collect();
        let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = facets.into_iter().map(|f| f.iter().map(|v| pos[v]).collect()).collect();
        Self::build(name, labels, facets).expect("sub-collection of a valid complex")
    }

    pub fn link_by_label(&self, label: &str) -> Result<SimplicialComplex> {
        let v = self
            .vertex_by_label(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        self.link(v)
    }

    /// Joins with two apexes; the involution (if any) swaps them.
    pub fn suspension(&self) -> Result<SimplicialComplex> {
        let mut labels = self.labels.clone();
        let mut plus = "apex+".to_string();
        let mut minus = "apex-".to_string();
        while labels.contains(&plus) || labels.contains(&minus) {
            plus.push('\'');
            minus.push('\'');
        }
        let n = labels.len();
        labels.push(plus);
        labels.push(minus);
        let facets: Vec<Simplex> = if self.facets.is_empty() {
            vec![vec![n], vec![n + 1]]
        } else {
            self.facets
                .iter()
                .flat_map(|f| {
                    let mut a = f.clone();
                    a.push(n);
                    let mut b = f.clone();
                    b.push(n + 1);
                    [a, b]
                })
                .collect()
        };
        let s = Self::build(format!("susp({})", self.name), labels, facets)?;
        match &self.z2 {
            Some(z2) => {
                let mut inv = z2.involution.clone();
                inv.push(n + 1);
                inv.push(n);
                s.with_involution(inv)
            }
            None => Ok(s),
        }
    }

    /// A vertex bijection carrying facets onto facets, if one exists.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> Result<Option<Vec<usize>>> {
        for k in [self, other] {
            if k.n_vertices() > ISO_VERTEX_LIMIT {
                return Err(Error::TooLarge(format!(
                    "isomorphism test is limited to {ISO_VERTEX_LIMIT} vertices, `{}` has {}",
                    k.name,
                    k.n_vertices()
                )));
            }
        }
        Ok(IsoSearch::new(self, other).and_then(|mut s| s.run()))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            name: self.name.clone(),
            vertices: self.labels.clone(),
            facets: self.facets.clone(),
            involution: self.z2.as_ref().map(|z| z.involution.clone()),
        }
    }

    pub fn from_json(json: ComplexJson) -> Result<Self> {
        let k = if json.facets.is_empty() && json.vertices.is_empty() {
            Self::void(json.name)
        } else {
            Self::from_facets(json.name, json.vertices, json.facets)?
        };
        match json.involution {
            Some(inv) => k.with_involution(inv),
            None => Ok(k),
        }
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(&self.to_json())?)?;
        Ok(())
    }

    /// Whether every vertex link is a single cycle (a closed-surface certificate
    /// when combined with connectivity).
    pub fn links_are_cycles(&self) -> bool {
        (0..self.n_vertices()).all(|v| self.link(v).map(|l| l.is_cycle()).unwrap_or(false))
    }

    /// Connected 1-dimensional complex in which every vertex lies in exactly two edges.
    pub fn is_cycle(&self) -> bool {
        if self.facets.len() < 3 || self.facets.iter().any(|f| f.len() != 2) {
            return false;
        }
        let mut deg = vec![0; self.n_vertices()];
        self.facets.iter().flatten().for_each(|&v| deg[v] += 1);
        deg.iter().all(|&d| d == 2) && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for f in &self.facets {
            for w in &f[1..] {
                let (a, b) = (find(&mut parent, f[0]), find(&mut parent, *w));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }
}

/// Backtracking isomorphism search pruned by facet-size profiles and pairwise
/// co-occurrence counts.
struct IsoSearch<'a> {
    a: &'a SimplicialComplex,
    profile_a: Vec<Vec<usize>>,
    profile_b: Vec<Vec<usize>>,
    co_a: Vec<Vec<usize>>,
    co_b: Vec<Vec<usize>>,
    facets_b: HashSet<Simplex>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

fn profiles(k: &SimplicialComplex) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = k.n_vertices();
    let mut prof = vec![Vec::new(); n];
    let mut co = vec![vec![0usize; n]; n];
    for f in &k.facets {
        for &u in f {
            prof[u].push(f.len());
            for &w in f {
                co[u][w] += 1;
            }
        }
    }
    prof.iter_mut().for_each(|p| p.sort_unstable());
    (prof, co)
}

impl<'a> IsoSearch<'a> {
    fn new(a: &'a SimplicialComplex, b: &'a SimplicialComplex) -> Option<Self> {
        if a.n_vertices() != b.n_vertices() || a.facets.len() != b.facets.len() {
            return None;
        }
        let sizes = |k: &SimplicialComplex| k.facets.iter().map(|f| f.len()).sorted().collect::<Vec<_>>();
        if sizes(a) != sizes(b) {
            return None;
        }
        let (profile_a, co_a) = profiles(a);
        let (profile_b, co_b) = profiles(b);
        if profile_a.iter().sorted().ne(profile_b.iter().sorted()) {
            return None;
        }
        // Visit vertices so that each new one co-occurs with earlier ones where possible.
        let n = a.n_vertices();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| co_a[u][v] > 0).count();
                    (links, std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        Some(IsoSearch {
            a,
            profile_a,
            profile_b,
            co_a,
            co_b,
            facets_b: b.facets.iter().cloned().collect(),
            order,
            map: vec![usize::MAX; n],
            used: vec![false; n],
        })
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        self.rec(0).then(|| self.map.clone())
    }

    fn rec(&mut self, depth: usize) -> bool {
        let n = self.order.len();
        if depth == n {
            return self.a.facets.iter().all(|f| {
                let mut img: Vec<usize> = f.iter().map(|&v| self.map[v]).collect();
                img.sort_unstable();
                self.facets_b.contains(&img)
            });
        }
        let v = self.order[depth];
        for w in 0..n {
            if self.used[w] || self.profile_a[v] != self.profile_b[w] || self.co_a[v][v] != self.co_b[w][w] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.co_a[u][v] == self.co_b[self.map[u]][w]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.rec(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}
