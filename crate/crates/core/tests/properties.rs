//! Randomized invariants of the solvers and the homology pipeline.

use proptest::prelude::*;

use locchrom_core::box_complexes::{box_complex_b0, l_complex};
use locchrom_core::families::complete_graph;
use locchrom_core::homology::betti_gf2;
use locchrom_core::simplicial::SimplicialComplex;
use locchrom_core::solvers::{
    chromatic_number, export_hom_cnf, find_homomorphism, fractional_chromatic, greedy_coloring,
    local_chromatic_number, local_colorfulness, rational, Budget, Cnf, HomOptions, LocalMethod, SearchOutcome,
};
use locchrom_core::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::with_numbered_vertices("G", n, edges).unwrap()
        })
    })
}

/// Tiny DPLL with unit propagation; independent of the homomorphism search.
fn satisfiable(cnf: &Cnf) -> bool {
    fn solve(clauses: &[Vec<i64>], assign: &mut [i8]) -> bool {
        loop {
            let mut unit = None;
            for c in clauses {
                let mut open = Vec::new();
                let mut sat = false;
                for &l in c {
                    let v = assign[l.unsigned_abs() as usize];
                    if v == 0 {
                        open.push(l);
                    } else if (v > 0) == (l > 0) {
                        sat = true;
                        break;
                    }
                }
                if sat {
                    continue;
                }
                match open.len() {
                    0 => return false,
                    1 => {
                        unit = Some(open[0]);
                        break;
                    }
                    _ => {}
                }
            }
            match unit {
                Some(l) => assign[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 },
                None => break,
            }
        }
        let Some(x) = (1..assign.len()).find(|&x| assign[x] == 0) else {
            return true;
        };
        for val in [1, -1] {
            let mut next = assign.to_vec();
            next[x] = val;
            if solve(clauses, &mut next) {
                return true;
            }
        }
        false
    }
    solve(&cnf.clauses, &mut vec![0; cnf.num_vars + 1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn greedy_and_exact_colorings_are_proper(g in graph_strategy(9)) {
        prop_assert!(greedy_coloring(&g).is_proper(&g));
        let (chi, c) = chromatic_number(&g, Budget::UNLIMITED).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert_eq!(c.palette_size(), chi);
    }

    #[test]
    fn hom_to_complete_graph_iff_colorable(g in graph_strategy(8), k in 1usize..5) {
        let (chi, _) = chromatic_number(&g, Budget::UNLIMITED).unwrap();
        let kk = complete_graph(k).unwrap();
        match find_homomorphism(&g, &kk, HomOptions::default()) {
            SearchOutcome::Found(map) => {
                prop_assert!(map.verify(&g, &kk));
                prop_assert!(chi <= k);
            }
            SearchOutcome::NoneExists => prop_assert!(chi > k),
            SearchOutcome::BudgetExceeded => prop_assert!(false, "unlimited budget ran out"),
        }
    }

    #[test]
    fn cnf_agrees_with_search(g in graph_strategy(5), h in graph_strategy(4)) {
        let cnf = export_hom_cnf(&g, &h);
        let found = find_homomorphism(&g, &h, HomOptions::default()).is_found();
        prop_assert_eq!(satisfiable(&cnf), found);
    }

    #[test]
    fn local_methods_agree_and_are_sandwiched(g in graph_strategy(7)) {
        let (chi, _) = chromatic_number(&g, Budget::UNLIMITED).unwrap();
        let chi_f = fractional_chromatic(&g, 16).unwrap();
        let mut values = Vec::new();
        for m in [LocalMethod::Direct, LocalMethod::Partitions, LocalMethod::HomUniversal] {
            let (psi, c) = local_chromatic_number(&g, m, Budget::UNLIMITED).unwrap();
            prop_assert!(c.is_proper(&g));
            prop_assert_eq!(local_colorfulness(&g, &c).unwrap(), psi);
            values.push(psi);
        }
        prop_assert!(values.iter().all(|&p| p == values[0]), "{:?}", values);
        let psi = values[0];
        prop_assert!(chi_f <= rational(psi as i64, 1));
        prop_assert!(psi <= chi);
        prop_assert_eq!(psi == 2, chi == 2);
    }

    #[test]
    fn box_complex_is_free_and_subdivision_keeps_betti(g in graph_strategy(5)) {
        let b = box_complex_b0(&g).unwrap();
        let z = b.z2().unwrap();
        prop_assert!(z.is_valid && z.is_free);
        let sd = b.barycentric_subdivision().unwrap();
        prop_assert_eq!(betti_gf2(&b, false).unwrap().trimmed(), betti_gf2(&sd, false).unwrap().trimmed());
        prop_assert_eq!(b.euler_characteristic(), sd.euler_characteristic());
    }

    #[test]
    fn suspension_shifts_reduced_betti(g in graph_strategy(5)) {
        let b = box_complex_b0(&g).unwrap();
        let s = b.suspension().unwrap();
        let mut shifted = vec![0];
        shifted.extend(betti_gf2(&b, true).unwrap().values);
        let mut expect = shifted;
        while expect.last() == Some(&0) {
            expect.pop();
        }
        prop_assert_eq!(betti_gf2(&s, true).unwrap().trimmed(), expect);
        prop_assert_eq!(s.n_vertices(), b.n_vertices() + 2);
        prop_assert_eq!(s.facets().len(), 2 * b.facets().len());
    }

    #[test]
    fn euler_equals_alternating_betti_sum(m in 2usize..6, r in 2usize..5) {
        prop_assume!(r <= m);
        let l: SimplicialComplex = l_complex(m, r, false).unwrap();
        let b = betti_gf2(&l, false).unwrap();
        prop_assert_eq!(b.euler_characteristic(), l.euler_characteristic());
    }
}
