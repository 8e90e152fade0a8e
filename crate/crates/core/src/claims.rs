//! The quantitative claims checked by the `verify` subcommand, one function per
//! claim. Every comparison is exact: a claim passes iff its expected and actual
//! JSON values are equal.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::box_complexes::{
    b_chain, bier_sphere, box_complex_b0, h_hat, l_complex, map_f_universal_to_l, map_g_report,
    neighborhood_complex, skeleton_of_simplex,
};
use crate::error::{Error, Result};
use crate::families::{
    borsuk_sample, complete_graph, cycle, grotzsch, kneser, natural_coloring, schrijver, universal, PointSet,
};
use crate::graph::Graph;
use crate::homology::{betti_gf2, chain_complex};
use crate::simplicial::SimplicialComplex;
use crate::solvers::{
    chromatic_number, enumerate_proper_partitions, find_homomorphism, find_multicolored_biclique,
    fractional_chromatic, local_chromatic_number, local_colorfulness, rational, Budget, HomOptions, LocalMethod,
    SearchOutcome, TargetSymmetry, DEFAULT_FRACTIONAL_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    SkippedBudget,
    /// Recorded for completeness; not computed.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub source: String,
    pub expected: Value,
    pub actual: Value,
    pub status: ClaimStatus,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClaimOptions {
    /// Node budget for every individual search.
    pub budget: Budget,
}

type Check = fn(&ClaimOptions) -> Result<(Value, Value)>;

pub struct Claim {
    pub id: &'static str,
    pub source: &'static str,
    check: Option<Check>,
}

pub const CLAIMS: &[Claim] = &[
    Claim { id: "C01", source: "Ĥ(5,3): cell counts (20, 60, 30) and Euler characteristic -10", check: Some(c01_h_hat_counts) },
    Claim { id: "C02", source: "Ĥ(5,3): genus-6 surface, links are cycles, link of {4}⊎{5} is L(3,2)", check: Some(c02_h_hat_surface) },
    Claim { id: "C03", source: "L(2r-1,r) is a homology sphere of dimension 2r-3", check: Some(c03_l_spheres) },
    Claim { id: "C04", source: "B0(K_m) is S^(m-1) and Hom(K2,K_m) is S^(m-2)", check: Some(c04_complete_graph_spheres) },
    Claim { id: "C05", source: "B0(G) is the suspension of Hom(K2,G), homology shadow", check: Some(c05_suspension_shadow) },
    Claim { id: "C06", source: "N(G) and Hom(K2,G) are homotopy equivalent, homology shadow", check: Some(c06_neighborhood_shadow) },
    Claim { id: "C07", source: "χ(U(5,3)) = 4 and ψ(U(5,3)) = 3 with the natural coloring", check: Some(c07_universal_5_3) },
    Claim { id: "C08", source: "SG(6,2) has local chromatic number 4", check: Some(c08_schrijver_6_2) },
    Claim { id: "C09", source: "Grötzsch graph: ψ = χ = 4", check: Some(c09_grotzsch) },
    Claim { id: "C10", source: "zig-zag, t = 4: every proper coloring of SG(6,2) has a multicolored K(2,2)", check: Some(c10_zig_zag) },
    Claim { id: "C11", source: "maps f and g between B0(U(m,r)) and L'(m,r)", check: Some(c11_maps) },
    Claim { id: "C12", source: "L(2r-1,r) is the Bier sphere of the (r-1)-subsets", check: Some(c12_bier) },
    Claim { id: "C13", source: "solver and homology coherence over the test corpus", check: Some(c13_coherence) },
    Claim {
        id: "C14",
        source: "Q(h) = floor(h/2) + 2, Z2-index and coindex values, and the general topological bound are continuous statements; replaced by C03, C04, C05 and C10",
        check: None,
    },
];

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

impl Claim {
    pub fn run(&self, opts: &ClaimOptions) -> ClaimReport {
        let start = Instant::now();
        let (expected, actual, status) = match self.check {
            None => (json!("not computed"), json!("not computed"), ClaimStatus::Informational),
            Some(check) => match check(opts) {
                Ok((e, a)) => {
                    let status = if e == a { ClaimStatus::Pass } else { ClaimStatus::Fail };
                    (e, a, status)
                }
                Err(Error::BudgetExceeded(n)) => {
                    (Value::Null, json!({ "budget_exceeded": n }), ClaimStatus::SkippedBudget)
                }
                Err(e) => (Value::Null, json!({ "error": e.to_string() }), ClaimStatus::Fail),
            },
        };
        ClaimReport {
            claim_id: self.id.to_string(),
            source: self.source.to_string(),
            expected,
            actual,
            status,
            runtime_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Runs every claim concurrently; reports come back ordered by `claim_id`.
pub fn run_all(opts: &ClaimOptions) -> Vec<ClaimReport> {
    let mut reports: Vec<ClaimReport> = CLAIMS.par_iter().map(|c| c.run(opts)).collect();
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    reports
}

fn betti(k: &SimplicialComplex, reduced: bool) -> Result<Vec<usize>> {
    Ok(betti_gf2(k, reduced)?.trimmed())
}

/// Trimmed reduced Betti vector of `S^d`.
fn sphere(d: usize) -> Vec<usize> {
    let mut v = vec![0; d + 1];
    v[d] = 1;
    v
}

fn c01_h_hat_counts(_: &ClaimOptions) -> Result<(Value, Value)> {
    let h = h_hat(5, 3)?;
    Ok((
        json!({ "f_vector": [20, 60, 30], "euler": -10 }),
        json!({ "f_vector": h.f_vector().0, "euler": h.euler_characteristic() }),
    ))
}

fn c02_h_hat_surface(_: &ClaimOptions) -> Result<(Value, Value)> {
    let h = h_hat(5, 3)?;
    let order = h.order_complex()?;
    let link = h.link_of_vertex(3, 4)?;
    let l32 = l_complex(3, 2, false)?;
    Ok((
        json!({ "betti": [1, 12, 1], "links_are_cycles": true, "link_isomorphic_to_L(3,2)": true }),
        json!({
            "betti": betti(&order, false)?,
            "links_are_cycles": order.links_are_cycles(),
            "link_isomorphic_to_L(3,2)": link.is_isomorphic(&l32)?.is_some(),
        }),
    ))
}

fn c03_l_spheres(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    for r in 2..=4 {
        let key = format!("L({},{r})", 2 * r - 1);
        expected.insert(key.clone(), json!(sphere(2 * r - 3)));
        actual.insert(key, json!(betti(&l_complex(2 * r - 1, r, false)?, true)?));
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

fn c04_complete_graph_spheres(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    for m in 2..=5 {
        let km = complete_graph(m)?;
        expected.insert(format!("B0(K{m})"), json!(sphere(m - 1)));
        actual.insert(format!("B0(K{m})"), json!(betti(&box_complex_b0(&km)?, true)?));
        expected.insert(format!("Bchain(K{m})"), json!(sphere(m - 2)));
        actual.insert(format!("Bchain(K{m})"), json!(betti(&b_chain(&km)?, true)?));
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

fn c05_suspension_shadow(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    for g in [complete_graph(3)?, complete_graph(4)?, cycle(5)?] {
        let mut shifted = vec![0];
        shifted.extend(betti_gf2(&b_chain(&g)?, true)?.values);
        while shifted.last() == Some(&0) {
            shifted.pop();
        }
        expected.insert(g.name().to_string(), json!(shifted));
        actual.insert(g.name().to_string(), json!(betti(&box_complex_b0(&g)?, true)?));
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

fn c06_neighborhood_shadow(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    let mut petersen = kneser(5, 2)?;
    petersen.set_name("Petersen");
    for g in [complete_graph(4)?, cycle(5)?, petersen, schrijver(6, 2)?] {
        expected.insert(g.name().to_string(), json!(betti(&b_chain(&g)?, false)?));
        actual.insert(g.name().to_string(), json!(betti(&neighborhood_complex(&g)?, false)?));
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

fn c07_universal_5_3(opts: &ClaimOptions) -> Result<(Value, Value)> {
    let u = universal(5, 3)?;
    let (chi, _) = chromatic_number(&u, opts.budget)?;
    let (psi, _) = local_chromatic_number(&u, LocalMethod::Direct, opts.budget)?;
    let natural = natural_coloring(&u)?;
    Ok((
        json!({ "chi": 4, "psi": 3, "natural_colorfulness": 3, "natural_palette": 5 }),
        json!({
            "chi": chi,
            "psi": psi,
            "natural_colorfulness": local_colorfulness(&u, &natural)?,
            "natural_palette": natural.palette_size(),
        }),
    ))
}

fn hom_verdict(g: &Graph, h: &Graph, opts: &ClaimOptions) -> Result<&'static str> {
    let o = HomOptions { budget: opts.budget, symmetry: TargetSymmetry::VertexTransitive };
    match find_homomorphism(g, h, o) {
        SearchOutcome::Found(_) => Ok("found"),
        SearchOutcome::NoneExists => Ok("none"),
        SearchOutcome::BudgetExceeded => Err(Error::BudgetExceeded(opts.budget.max_nodes.unwrap_or(0))),
    }
}

fn c08_schrijver_6_2(opts: &ClaimOptions) -> Result<(Value, Value)> {
    let sg = schrijver(6, 2)?;
    let (psi, _) = local_chromatic_number(&sg, LocalMethod::Partitions, opts.budget)?;
    let (chi, _) = chromatic_number(&sg, opts.budget)?;
    let hom = hom_verdict(&sg, &universal(9, 3)?, opts)?;
    Ok((
        json!({ "psi_by_partitions": 4, "chi": 4, "hom_to_U(9,3)": "none" }),
        json!({ "psi_by_partitions": psi, "chi": chi, "hom_to_U(9,3)": hom }),
    ))
}

fn c09_grotzsch(opts: &ClaimOptions) -> Result<(Value, Value)> {
    let g = grotzsch()?;
    let (psi, _) = local_chromatic_number(&g, LocalMethod::Partitions, opts.budget)?;
    let (chi, _) = chromatic_number(&g, opts.budget)?;
    Ok((json!({ "psi_by_partitions": 4, "chi": 4 }), json!({ "psi_by_partitions": psi, "chi": chi })))
}

fn c10_zig_zag(_: &ClaimOptions) -> Result<(Value, Value)> {
    let sg = schrijver(6, 2)?;
    let partitions: Vec<_> = enumerate_proper_partitions(&sg)?.collect();
    let missing = partitions
        .par_iter()
        .map(|c| find_multicolored_biclique(&sg, c, 2, 2).map(|w| w.is_none()))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&m| m)
        .count();
    Ok((
        json!({ "every_partition_has_multicolored_K(2,2)": true }),
        json!({ "every_partition_has_multicolored_K(2,2)": missing == 0 && !partitions.is_empty() }),
    ))
}

fn c11_maps(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    for (m, r) in [(3, 2), (5, 3)] {
        let f = map_f_universal_to_l(m, r)?;
        let g = map_g_report(m, r, None)?;
        expected.insert(
            format!("({m},{r})"),
            json!({
                "f": { "simplicial": true, "equivariant": true },
                "g": { "simplicial": true, "nonempty": true, "monotone": true, "equivariant": true },
            }),
        );
        actual.insert(
            format!("({m},{r})"),
            json!({
                "f": { "simplicial": f.is_simplicial, "equivariant": f.is_equivariant },
                "g": { "simplicial": g.simplicial, "nonempty": g.nonempty, "monotone": g.monotone, "equivariant": g.equivariant },
            }),
        );
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

fn facet_labels(k: &SimplicialComplex) -> BTreeSet<BTreeSet<String>> {
    k.facets().iter().map(|f| f.iter().map(|&v| k.labels()[v].clone()).collect()).collect()
}

fn c12_bier(_: &ClaimOptions) -> Result<(Value, Value)> {
    let mut expected = serde_json::Map::new();
    let mut actual = serde_json::Map::new();
    for r in 2..=3 {
        let m = 2 * r - 1;
        let l = l_complex(m, r, false)?;
        let bier = bier_sphere(m, &skeleton_of_simplex(m, r - 1)?)?;
        expected.insert(format!("r={r}"), json!(true));
        actual.insert(format!("r={r}"), json!(facet_labels(&l) == facet_labels(&bier)));
    }
    Ok((Value::Object(expected), Value::Object(actual)))
}

/// Small graphs on which every solver is run (all within the partition limit).
pub fn graph_corpus() -> Result<Vec<Graph>> {
    let mut petersen = kneser(5, 2)?;
    petersen.set_name("Petersen");
    let mut out = vec![
        Graph::with_numbered_vertices("E3", 3, [])?,
        complete_graph(2)?,
        complete_graph(3)?,
        complete_graph(4)?,
        complete_graph(5)?,
        Graph::with_numbered_vertices("P4", 4, [(0, 1), (1, 2), (2, 3)])?,
        Graph::with_numbered_vertices("K2,3", 5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])?,
        petersen,
        schrijver(6, 2)?,
        grotzsch()?,
        universal(4, 2)?,
        universal(4, 3)?,
        borsuk_sample(2, 1.9, PointSet::CircleUniform(7))?,
    ];
    out.extend((3..=8).map(cycle).collect::<Result<Vec<_>>>()?);
    Ok(out)
}

/// Complexes on which homology invariants are checked.
pub fn complex_corpus() -> Result<Vec<SimplicialComplex>> {
    Ok(vec![
        box_complex_b0(&complete_graph(3)?)?,
        box_complex_b0(&cycle(5)?)?,
        b_chain(&complete_graph(3)?)?,
        neighborhood_complex(&kneser(5, 2)?)?,
        l_complex(3, 2, false)?,
        l_complex(5, 3, false)?,
        l_complex(4, 2, true)?,
        bier_sphere(4, &skeleton_of_simplex(3, 2)?)?,
        h_hat(5, 3)?.order_complex()?,
    ])
}

fn c13_coherence(opts: &ClaimOptions) -> Result<(Value, Value)> {
    let graphs = graph_corpus()?;
    let per_graph = graphs
        .par_iter()
        .map(|g| -> Result<(bool, bool, bool)> {
            let (chi, _) = chromatic_number(g, opts.budget)?;
            let chi_f = fractional_chromatic(g, DEFAULT_FRACTIONAL_LIMIT)?;
            let psis = [LocalMethod::Direct, LocalMethod::Partitions, LocalMethod::HomUniversal]
                .into_iter()
                .map(|m| local_chromatic_number(g, m, opts.budget).map(|(p, _)| p))
                .collect::<Result<Vec<_>>>()?;
            let psi = psis[0];
            let sandwich = chi_f <= rational(psi as i64, 1) && psi <= chi;
            let two = (psi == 2) == (chi == 2);
            let agree = psis.iter().all(|&p| p == psi);
            if !(sandwich && two && agree) {
                log::warn!("{}: chi={chi} chi_f={chi_f} psi={psis:?}", g.name());
            }
            Ok((sandwich, two, agree))
        })
        .collect::<Result<Vec<_>>>()?;
    let complexes = complex_corpus()?;
    let per_complex = complexes
        .par_iter()
        .map(|k| -> Result<(bool, bool)> {
            let zero = chain_complex(k)?.boundary_squares_to_zero();
            let sd = k.barycentric_subdivision()?;
            Ok((zero, betti(k, false)? == betti(&sd, false)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        json!({
            "chi_f <= psi <= chi": true,
            "psi = 2 iff chi = 2": true,
            "psi methods agree": true,
            "boundary squares to zero": true,
            "betti invariant under sd": true,
        }),
        json!({
            "chi_f <= psi <= chi": per_graph.iter().all(|x| x.0),
            "psi = 2 iff chi = 2": per_graph.iter().all(|x| x.1),
            "psi methods agree": per_graph.iter().all(|x| x.2),
            "boundary squares to zero": per_complex.iter().all(|x| x.0),
            "betti invariant under sd": per_complex.iter().all(|x| x.1),
        }),
    ))
}
