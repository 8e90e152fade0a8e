//! Fractional chromatic number by exact rational simplex.
//!
//! The covering LP `min Σ x_I  s.t.  Σ_{I ∋ v} x_I ≥ 1, x ≥ 0` over maximal
//! independent sets is solved through its dual packing LP
//! `max Σ y_v  s.t.  Σ_{v ∈ I} y_v ≤ 1, y ≥ 0`, whose slack basis is feasible.
//! The optimal covering weights are read off the final reduced costs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Rational = BigRational;

pub const DEFAULT_FRACTIONAL_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    pub value: Rational,
    /// Optimal covering weights, one per maximal independent set (bitmask over vertices).
    pub cover: Vec<(u64, Rational)>,
    /// Optimal vertex weights of the dual packing LP.
    pub packing: Vec<Rational>,
}

/// Maximal independent sets as bitmasks (Bron–Kerbosch with pivoting on the complement).
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > 64 {
        return Err(Error::TooLarge(format!("{n} vertices exceed the 64-bit set encoding")));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Neighbors in the complement graph.
    let non_adj: Vec<u64> = (0..n)
        .map(|v| {
            let adj = g.neighbors(v).ones().fold(0u64, |m, w| m | (1 << w));
            full & !adj & !(1 << v)
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&non_adj, 0, full, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn bron_kerbosch(nb: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !nb[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(nb, r | (1 << v), p & nb[v], x & nb[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

pub fn fractional_chromatic(g: &Graph, limit: usize) -> Result<Rational> {
    Ok(fractional_chromatic_with_certificate(g, limit)?.value)
}

pub fn fractional_chromatic_with_certificate(g: &Graph, limit: usize) -> Result<FractionalSolution> {
    if g.n() > limit {
        return Err(Error::TooLarge(format!(
            "fractional chromatic number is limited to {limit} vertices, graph has {}",
            g.n()
        )));
    }
    let sets = maximal_independent_sets(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(FractionalSolution {
            value: Rational::zero(),
            cover: Vec::new(),
            packing: Vec::new(),
        });
    }
    let rows: Vec<Vec<bool>> = sets
        .iter()
        .map(|&s| (0..n).map(|v| s >> v & 1 == 1).collect())
        .collect();
    let (value, packing, duals) = Tableau::packing(&rows).solve();
    let cover = sets.into_iter().zip(duals).filter(|(_, w)| !w.is_zero()).collect();
    Ok(FractionalSolution { value, cover, packing })
}

/// Dense simplex tableau for `max 1·y  s.t.  A y ≤ 1, y ≥ 0` with Bland's rule.
struct Tableau {
    /// rows x (vars + slacks + rhs)
    cells: Vec<Vec<Rational>>,
    /// Objective row holds reduced costs `c_B B^{-1} A - c`; optimal when all ≥ 0.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    vars: usize,
}

impl Tableau {
    fn packing(rows: &[Vec<bool>]) -> Tableau {
        let m = rows.len();
        let vars = rows[0].len();
        let width = vars + m + 1;
        let one = Rational::one();
        let cells = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = vec![Rational::zero(); width];
                for (j, &b) in row.iter().enumerate() {
                    if b {
                        r[j] = one.clone();
                    }
                }
                r[vars + i] = one.clone();
                r[width - 1] = one.clone();
                r
            })
            .collect();
        let mut obj = vec![Rational::zero(); width];
        for c in obj.iter_mut().take(vars) {
            *c = -one.clone();
        }
        Tableau {
            cells,
            obj,
            basis: (vars..vars + m).collect(),
            vars,
        }
    }

    /// Returns (optimum, primal y, dual weights on the constraint rows).
    fn solve(mut self) -> (Rational, Vec<Rational>, Vec<Rational>) {
        let width = self.obj.len();
        let rhs = width - 1;
        // Bland: entering = smallest index with negative reduced cost,
        // leaving = min ratio, ties by smallest basic variable index.
        while let Some(enter) = (0..rhs).find(|&j| self.obj[j].is_negative()) {
            let leave = (0..self.cells.len())
                .filter(|&i| self.cells[i][enter].is_positive())
                .min_by(|&a, &b| {
                    let ra = &self.cells[a][rhs] / &self.cells[a][enter];
                    let rb = &self.cells[b][rhs] / &self.cells[b][enter];
                    ra.cmp(&rb).then(self.basis[a].cmp(&self.basis[b]))
                })
                .expect("packing LP is bounded");
            self.pivot(leave, enter);
        }
        let mut y = vec![Rational::zero(); self.vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.vars {
                y[b] = self.cells[i][rhs].clone();
            }
        }
        let duals = self.obj[self.vars..rhs].to_vec();
        (self.obj[rhs].clone(), y, duals)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col].clone();
        for x in self.cells[row].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.cells[row].clone();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, pv) in r.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (x, pv) in self.obj.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        self.basis[row] = col;
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_graph, cycle, kneser};

    #[test]
    fn complete_graphs() {
        for m in 1..=5 {
            let g = complete_graph(m).unwrap();
            assert_eq!(fractional_chromatic(&g, 16).unwrap(), rational(m as i64, 1));
        }
    }

    #[test]
    fn vertex_transitive_examples() {
        // n / α for vertex-transitive graphs
        let c5 = cycle(5).unwrap();
        assert_eq!(fractional_chromatic(&c5, 16).unwrap(), rational(5, 2));
        let p = kneser(5, 2).unwrap();
        assert_eq!(fractional_chromatic(&p, 16).unwrap(), rational(10, 4));
    }

    #[test]
    fn certificate_is_feasible_on_both_sides() {
        let g = kneser(5, 2).unwrap();
        let sol = fractional_chromatic_with_certificate(&g, 16).unwrap();
        let cover_total: Rational = sol.cover.iter().map(|(_, w)| w.clone()).sum();
        let packing_total: Rational = sol.packing.iter().cloned().sum();
        assert_eq!(cover_total, sol.value);
        assert_eq!(packing_total, sol.value);
        for v in 0..g.n() {
            let covered: Rational = sol.cover.iter().filter(|(s, _)| s >> v & 1 == 1).map(|(_, w)| w.clone()).sum();
            assert!(covered >= Rational::one());
        }
        for s in maximal_independent_sets(&g).unwrap() {
            let load: Rational = (0..g.n()).filter(|v| s >> v & 1 == 1).map(|v| sol.packing[v].clone()).sum();
            assert!(load <= Rational::one());
        }
    }

    #[test]
    fn petersen_has_five_maximum_independent_sets_of_size_four() {
        let p = kneser(5, 2).unwrap();
        let mis = maximal_independent_sets(&p).unwrap();
        assert_eq!(mis.iter().filter(|s| s.count_ones() == 4).count(), 5);
    }

    #[test]
    fn size_limit() {
        let g = cycle(17).unwrap();
        assert!(matches!(fractional_chromatic(&g, 16), Err(Error::TooLarge(_))));
    }
}
