//! Deterministic constructors for the graph families used throughout the crate.
//!
//! Ground sets are `[n] = {1, ..., n}` and labels spell out the defining structure:
//! `"{1,3}"` for set-system vertices, `"(2|{1,4})"` for universal-graph vertices,
//! `"(label,i)"` and `"z"` for Mycielski levels and apex, `"p{j}@(x,y,...)"` for
//! sampled points.

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};

fn param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn complete_graph(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(param("complete graph needs m >= 1"));
    }
    let edges = (0..m).tuple_combinations();
    Graph::with_numbered_vertices(format!("K{m}"), m, edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(param("cycle needs n >= 3"));
    }
    Graph::with_numbered_vertices(format!("C{n}"), n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `{a,b,...}` with 1-based elements.
pub fn set_label(set: &[usize]) -> String {
    format!("{{{}}}", set.iter().map(|x| x + 1).join(","))
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

fn set_system_graph(name: String, sets: Vec<Vec<usize>>) -> Result<Graph> {
    let labels = sets.iter().map(|s| set_label(s)).collect();
    let edges = (0..sets.len())
        .tuple_combinations()
        .filter(|&(i, j)| disjoint(&sets[i], &sets[j]));
    Graph::new(name, labels, edges.collect::<Vec<_>>())
}

/// Kneser graph KG(n, k): k-subsets of `[n]`, adjacent when disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(param(format!("Kneser graph needs k >= 1 and n >= 2k, got n={n}, k={k}")));
    }
    set_system_graph(format!("KG({n},{k})"), (0..n).combinations(k).collect())
}

/// Whether `set` (sorted, 0-based) contains no two cyclically consecutive elements of `[n]`.
pub fn is_stable(set: &[usize], n: usize) -> bool {
    set.iter().all(|&x| !set.contains(&((x + 1) % n)))
}

/// Schrijver graph SG(n, k): the subgraph of KG(n, k) induced by stable k-subsets.
pub fn schrijver(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(param(format!("Schrijver graph needs k >= 1 and n >= 2k, got n={n}, k={k}")));
    }
    let sets = (0..n).combinations(k).filter(|s| is_stable(s, n)).collect();
    set_system_graph(format!("SG({n},{k})"), sets)
}

/// Label of universal-graph vertex `(i, A)`, 0-based inputs, 1-based text.
pub fn universal_label(i: usize, a: &[usize]) -> String {
    format!("({}|{})", i + 1, set_label(a))
}

/// Vertices of U(m, r) in construction order: grouped by `i`, then `A` in
/// lexicographic order of `(r-1)`-subsets of `[m] \ {i}`.
pub fn universal_vertices(m: usize, r: usize) -> Vec<(usize, Vec<usize>)> {
    (0..m)
        .flat_map(|i| {
            (0..m)
                .filter(move |&x| x != i)
                .combinations(r - 1)
                .map(move |a| (i, a))
        })
        .collect()
}

/// U(m, r): vertices `(i, A)` with `|A| = r-1`, `i ∉ A`; `(i,A) ~ (j,B)` iff `i ∈ B` and `j ∈ A`.
pub fn universal(m: usize, r: usize) -> Result<Graph> {
    if r == 0 || r > m {
        return Err(param(format!("U(m,r) needs 1 <= r <= m, got m={m}, r={r}")));
    }
    let verts = universal_vertices(m, r);
    let labels = verts.iter().map(|(i, a)| universal_label(*i, a)).collect();
    let mut edges = Vec::new();
    for (x, (i, a)) in verts.iter().enumerate() {
        for (y, (j, b)) in verts.iter().enumerate().skip(x + 1) {
            if b.contains(i) && a.contains(j) {
                edges.push((x, y));
            }
        }
    }
    Graph::new(format!("U({m},{r})"), labels, edges)
}

/// Parses a `"(i|{a,b,...})"` label into 0-based `(i, A)`.
pub fn parse_universal_label(label: &str) -> Option<(usize, Vec<usize>)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (i, set) = inner.split_once('|')?;
    let i: usize = i.parse().ok()?;
    let set = set.strip_prefix('{')?.strip_suffix('}')?;
    let a = if set.is_empty() {
        Vec::new()
    } else {
        set.split(',').map(|x| x.parse::<usize>().ok()?.checked_sub(1)).collect::<Option<Vec<_>>>()?
    };
    Some((i.checked_sub(1)?, a))
}

/// Colors `(i, A)` by `i` (0-based).
pub fn natural_coloring(u: &Graph) -> Result<Coloring> {
    let colors = u
        .labels()
        .iter()
        .map(|l| {
            parse_universal_label(l)
                .map(|(i, _)| i)
                .ok_or_else(|| param(format!("`{l}` is not a universal-graph label")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring::new(colors))
}

/// Generalized Mycielskian with `levels` copies of `V(g)` plus an apex `z`.
///
/// Level 0 keeps `E(g)`; `(u,i) ~ (v,i+1)` for `uv ∈ E(g)`; `z` is adjacent to
/// the whole top level. `levels = 2` is the classical Mycielskian.
pub fn generalized_mycielski(g: &Graph, levels: usize) -> Result<Graph> {
    if levels < 2 {
        return Err(param("generalized Mycielski needs at least 2 levels"));
    }
    let n = g.n();
    let idx = |v: usize, i: usize| i * n + v;
    let mut labels: Vec<String> = (0..levels)
        .flat_map(|i| g.labels().iter().map(move |l| format!("({l},{i})")))
        .collect();
    labels.push("z".to_string());
    let z = levels * n;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..levels - 1 {
        for (u, v) in g.edges() {
            edges.push((idx(u, i), idx(v, i + 1)));
            edges.push((idx(v, i), idx(u, i + 1)));
        }
    }
    edges.extend((0..n).map(|v| (idx(v, levels - 1), z)));
    Graph::new(format!("M{levels}({})", g.name()), labels, edges)
}

/// Grötzsch graph: the Mycielskian of the 5-cycle.
pub fn grotzsch() -> Result<Graph> {
    let mut g = generalized_mycielski(&cycle(5)?, 2)?;
    g.set_name("Grotzsch");
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSet {
    /// `k` evenly spaced points `(cos 2πj/k, sin 2πj/k)` on the unit circle.
    CircleUniform(usize),
    /// `k` normalized standard-normal vectors from ChaCha8 seeded with `seed`.
    SphereSeeded { k: usize, seed: u64 },
}

/// Sample points on `S^{dim-1}`.
pub fn sample_points(dim: usize, points: PointSet) -> Result<Vec<Vec<f64>>> {
    match points {
        PointSet::CircleUniform(k) => {
            if dim != 2 {
                return Err(param("circle_uniform sampling needs dimension 2"));
            }
            Ok((0..k)
                .map(|j| {
                    let t = std::f64::consts::TAU * j as f64 / k as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect())
        }
        PointSet::SphereSeeded { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(k);
            while out.len() < k {
                let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm > 1e-9 {
                    out.push(v.into_iter().map(|x| x / norm).collect());
                }
            }
            Ok(out)
        }
    }
}

/// Finite Borsuk graph: sampled unit vectors, adjacent when at Euclidean distance
/// at least `alpha`, i.e. dot product at most `1 - alpha²/2`.
pub fn borsuk_sample(dim: usize, alpha: f64, points: PointSet) -> Result<Graph> {
    if dim < 2 {
        return Err(param("Borsuk graph needs dimension >= 2"));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(param(format!("alpha must lie in (0, 2), got {alpha}")));
    }
    let k = match points {
        PointSet::CircleUniform(k) | PointSet::SphereSeeded { k, .. } => k,
    };
    if k == 0 {
        return Err(param("need at least one sample point"));
    }
    let pts = sample_points(dim, points)?;
    let threshold = 1.0 - alpha * alpha / 2.0;
    let labels = pts.iter().enumerate().map(|(j, p)| point_label(j, p)).collect();
    let edges = (0..k)
        .tuple_combinations()
        .filter(|&(a, b)| dot(&pts[a], &pts[b]) <= threshold);
    let tag = match points {
        PointSet::CircleUniform(k) => format!("circle{k}"),
        PointSet::SphereSeeded { k, seed } => format!("sphere{k}-seed{seed}"),
    };
    Graph::new(format!("B({dim},{alpha},{tag})"), labels, edges.collect::<Vec<_>>())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `p{j}@(x,y,...)`; coordinates use the shortest round-tripping decimal form.
fn point_label(j: usize, p: &[f64]) -> String {
    format!("p{j}@({})", p.iter().map(|x| x.to_string()).join(","))
}

pub fn parse_point_label(label: &str) -> Option<Vec<f64>> {
    let (_, coords) = label.split_once('@')?;
    let coords = coords.strip_prefix('(')?.strip_suffix(')')?;
    coords.split(',').map(|x| x.parse().ok()).collect()
}

/// Vertices of the regular simplex inscribed in `S^{n-1}`, as an `(n+1) × n` matrix.
///
/// Row `i`, column `k`:
/// * `0` if `i < k`,
/// * `sqrt((n+1)(n-k) / (n(n-k+1)))` if `i == k`,
/// * `-sqrt((n+1) / (n(n-k)(n-k+1)))` if `i > k`.
///
/// For `n = 2` this is `(1, 0), (-1/2, √3/2), (-1/2, -√3/2)`.
pub fn regular_simplex(n: usize) -> Vec<Vec<f64>> {
    let nf = n as f64;
    (0..=n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let rest = (n - k) as f64;
                    if i < k {
                        0.0
                    } else if i == k {
                        ((nf + 1.0) * rest / (nf * (rest + 1.0))).sqrt()
                    } else {
                        -((nf + 1.0) / (nf * rest * (rest + 1.0))).sqrt()
                    }
                })
                .collect()
        })
        .collect()
}

/// Colors each sampled point by the simplex vertex of largest inner product
/// (ties to the lowest index). The flag reports whether the coloring is proper.
pub fn simplex_facet_coloring(b: &Graph, dim: usize) -> Result<(Coloring, bool)> {
    let simplex = regular_simplex(dim);
    let colors = b
        .labels()
        .iter()
        .map(|l| {
            let p = parse_point_label(l).ok_or_else(|| param(format!("`{l}` is not a point label")))?;
            if p.len() != dim {
                return Err(param(format!("point `{l}` has dimension {}, expected {dim}", p.len())));
            }
            let mut best = 0;
            for (i, s) in simplex.iter().enumerate().skip(1) {
                if dot(s, &p) > dot(&simplex[best], &p) {
                    best = i;
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Coloring::new(colors);
    let proper = c.is_proper(b);
    Ok((c, proper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{chromatic_number, Budget};

    #[test]
    fn basic_counts() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(cycle(2).is_err());
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn kneser_and_schrijver_sizes() {
        let p = kneser(5, 2).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(schrijver(6, 2).unwrap().n(), 9);
        let s42 = schrijver(4, 2).unwrap();
        assert_eq!(s42.labels(), &["{1,3}", "{2,4}"]);
        assert_eq!(s42.edge_count(), 1);
        assert!(kneser(3, 2).is_err());
    }

    #[test]
    fn schrijver_is_induced_in_kneser() {
        for (n, k) in [(6, 2), (7, 2), (7, 3), (8, 3)] {
            let kg = kneser(n, k).unwrap();
            let sg = schrijver(n, k).unwrap();
            let pos: Vec<usize> = sg.labels().iter().map(|l| kg.vertex_by_label(l).unwrap()).collect();
            for a in 0..sg.n() {
                for b in 0..sg.n() {
                    assert_eq!(sg.has_edge(a, b), kg.has_edge(pos[a], pos[b]));
                }
            }
        }
    }

    #[test]
    fn universal_sizes() {
        let u32_ = universal(3, 2).unwrap();
        assert_eq!((u32_.n(), u32_.edge_count()), (6, 3));
        assert!((0..6).all(|v| u32_.degree(v) == 1));
        let u53 = universal(5, 3).unwrap();
        assert_eq!((u53.n(), u53.edge_count()), (30, 90));
        let u22 = universal(2, 2).unwrap();
        assert_eq!(u22.labels(), &["(1|{2})", "(2|{1})"]);
        assert_eq!(u22.edge_count(), 1);
        assert!(universal(3, 4).is_err());
    }

    #[test]
    fn universal_degrees_match_rule() {
        let u = universal(5, 3).unwrap();
        for (x, (i, a)) in universal_vertices(5, 3).iter().enumerate() {
            let expected = universal_vertices(5, 3)
                .iter()
                .filter(|(j, b)| a.contains(j) && b.contains(i))
                .count();
            assert_eq!(u.degree(x), expected);
        }
    }

    #[test]
    fn universal_embeds_in_larger_palette() {
        let small = universal(4, 3).unwrap();
        let big = universal(5, 3).unwrap();
        let pos: Vec<usize> = small.labels().iter().map(|l| big.vertex_by_label(l).unwrap()).collect();
        for a in 0..small.n() {
            for b in 0..small.n() {
                assert_eq!(small.has_edge(a, b), big.has_edge(pos[a], pos[b]));
            }
        }
    }

    #[test]
    fn natural_colorings() {
        use crate::solvers::local_colorfulness;
        for (m, r, expect) in [(5, 3, 3), (3, 2, 2), (2, 2, 2), (6, 4, 4)] {
            let u = universal(m, r).unwrap();
            let c = natural_coloring(&u).unwrap();
            assert!(c.is_proper(&u));
            assert!(local_colorfulness(&u, &c).unwrap() <= r);
            assert_eq!(local_colorfulness(&u, &c).unwrap(), expect);
        }
        assert_eq!(natural_coloring(&universal(2, 2).unwrap()).unwrap().palette_size(), 2);
        assert!(natural_coloring(&cycle(5).unwrap()).is_err());
    }

    #[test]
    fn mycielski() {
        let gr = grotzsch().unwrap();
        assert_eq!((gr.n(), gr.edge_count()), (11, 20));
        assert_eq!(chromatic_number(&gr, Budget::UNLIMITED).unwrap().0, 4);
        assert!(gr.is_triangle_free());
        let p = kneser(5, 2).unwrap();
        assert!(generalized_mycielski(&p, 2).unwrap().is_triangle_free());
        let m = generalized_mycielski(&complete_graph(2).unwrap(), 2).unwrap();
        assert_eq!((m.n(), m.edge_count()), (5, 5));
        assert!((0..5).all(|v| m.degree(v) == 2));
        assert!(m.bipartition().is_none());
        for r in 2..5 {
            assert_eq!(generalized_mycielski(&p, r).unwrap().n(), r * 10 + 1);
        }
        assert!(generalized_mycielski(&p, 1).is_err());
    }

    #[test]
    fn borsuk_circle_antipodal() {
        let b = borsuk_sample(2, 1.99, PointSet::CircleUniform(12)).unwrap();
        // Independent recomputation from exact angular steps: chord(step) = 2 sin(π step / 12).
        let min_angle = 2.0 * (0.995f64).asin();
        for (x, y) in (0..12).flat_map(|x| (0..12).map(move |y| (x, y))) {
            if x == y {
                continue;
            }
            let step = (x as i64 - y as i64).rem_euclid(12).min((y as i64 - x as i64).rem_euclid(12));
            let angle = std::f64::consts::PI * step as f64 / 6.0;
            assert_eq!(b.has_edge(x, y), angle >= min_angle, "{x} {y}");
        }
        assert_eq!(b.edge_count(), 6);
    }

    #[test]
    fn borsuk_circle_three_chromatic() {
        let b = borsuk_sample(2, 1.9, PointSet::CircleUniform(12)).unwrap();
        assert_eq!(chromatic_number(&b, Budget::UNLIMITED).unwrap().0, 3);
        let (c, proper) = simplex_facet_coloring(&b, 2).unwrap();
        assert!(proper);
        assert_eq!(c.palette_size(), 3);
    }

    #[test]
    fn borsuk_edgeless_when_alpha_large() {
        let b = borsuk_sample(2, 1.999, PointSet::CircleUniform(7)).unwrap();
        assert!(b.is_edgeless());
        assert!(simplex_facet_coloring(&b, 2).unwrap().1);
    }

    #[test]
    fn borsuk_sphere_seeded() {
        let pts = PointSet::SphereSeeded { k: 100, seed: 0 };
        let b = borsuk_sample(3, 1.95, pts).unwrap();
        assert_eq!(b, borsuk_sample(3, 1.95, pts).unwrap());
        let (c, proper) = simplex_facet_coloring(&b, 3).unwrap();
        assert!(proper);
        assert!(c.palette_size() <= 4);
        assert!(simplex_facet_coloring(&b, 2).is_err());
        assert!(borsuk_sample(3, 2.0, pts).is_err());
    }

    #[test]
    fn simplex_rows_are_unit_and_equiangular() {
        for n in 2..6 {
            let s = regular_simplex(n);
            for i in 0..=n {
                assert!((dot(&s[i], &s[i]) - 1.0).abs() < 1e-12);
                for j in i + 1..=n {
                    assert!((dot(&s[i], &s[j]) + 1.0 / n as f64).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn universal_label_roundtrip() {
        assert_eq!(parse_universal_label("(2|{1,4})"), Some((1, vec![0, 3])));
        assert_eq!(parse_universal_label("(1|{})"), Some((0, vec![])));
        assert_eq!(universal_label(1, &[0, 3]), "(2|{1,4})");
    }
}
