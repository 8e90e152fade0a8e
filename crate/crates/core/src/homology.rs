//! Simplicial homology with GF(2) coefficients.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};

/// A GF(2) matrix stored as dense bitset columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    cols: Vec<FixedBitSet>,
}

impl BoundaryMatrix {
    pub fn from_columns(rows: usize, cols: Vec<FixedBitSet>) -> Self {
        BoundaryMatrix { rows, cols }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn column(&self, j: usize) -> &FixedBitSet {
        &self.cols[j]
    }

    /// Rank by column reduction: each column is reduced against earlier pivots,
    /// the pivot being its first nonzero row.
    pub fn rank(&self) -> usize {
        let mut owner: HashMap<usize, FixedBitSet> = HashMap::new();
        let mut rank = 0;
        for col in &self.cols {
            let mut c = col.clone();
            while let Some(p) = c.minimum() {
                match owner.get(&p) {
                    Some(reducer) => c.symmetric_difference_with(reducer),
                    None => {
                        owner.insert(p, c);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// `self · other` over GF(2), as columns.
    fn compose(&self, other: &BoundaryMatrix) -> Vec<FixedBitSet> {
        other
            .cols
            .iter()
            .map(|c| {
                let mut acc = FixedBitSet::with_capacity(self.rows);
                for r in c.ones() {
                    acc.symmetric_difference_with(&self.cols[r]);
                }
                acc
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ChainComplexGF2 {
    bases: Vec<Vec<Simplex>>,
    /// `boundaries[d - 1]` is `∂_d : C_d → C_{d-1}`.
    boundaries: Vec<BoundaryMatrix>,
}

impl ChainComplexGF2 {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let bases = k.try_simplices()?.to_vec();
        let boundaries = (1..bases.len())
            .map(|d| {
                let index: HashMap<&[usize], usize> =
                    bases[d - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
                let cols = bases[d]
                    .iter()
                    .map(|s| {
                        let mut col = FixedBitSet::with_capacity(bases[d - 1].len());
                        for skip in 0..s.len() {
                            let face: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                            col.insert(index[face.as_slice()]);
                        }
                        col
                    })
                    .collect();
                BoundaryMatrix {
                    rows: bases[d - 1].len(),
                    cols,
                }
            })
            .collect();
        let cc = ChainComplexGF2 { bases, boundaries };
        if !cc.boundary_squares_to_zero() {
            return Err(Error::VerificationFailed(format!("∂∂ ≠ 0 for `{}`", k.name())));
        }
        Ok(cc)
    }

    pub fn bases(&self) -> &[Vec<Simplex>] {
        &self.bases
    }

    /// `∂_d` for `d ≥ 1`.
    pub fn boundary(&self, d: usize) -> Option<&BoundaryMatrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        squares_to_zero(&self.boundaries)
    }

    /// Ranks of `∂_1 .. ∂_D`.
    pub fn ranks(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(|b| b.rank()).collect()
    }

    pub fn betti(&self, reduced: bool) -> BettiVector {
        let sizes: Vec<usize> = self.bases.iter().map(|b| b.len()).collect();
        betti_from_boundaries(&sizes, &self.boundaries, reduced)
    }
}

/// Betti numbers of a chain complex with `sizes[d]` cells in degree `d` and
/// `boundaries[d - 1] = ∂_d`.
pub fn betti_from_boundaries(sizes: &[usize], boundaries: &[BoundaryMatrix], reduced: bool) -> BettiVector {
    let ranks: Vec<usize> = boundaries.par_iter().map(|b| b.rank()).collect();
    let rank = |d: usize| if d == 0 { 0 } else { ranks.get(d - 1).copied().unwrap_or(0) };
    let mut values: Vec<usize> = (0..sizes.len()).map(|d| sizes[d] - rank(d) - rank(d + 1)).collect();
    if reduced && !values.is_empty() {
        // Augmentation C_0 → GF(2) has rank 1 on a nonempty complex.
        values[0] -= 1;
    }
    BettiVector { reduced, values }
}

/// Whether consecutive boundary maps compose to zero.
pub fn squares_to_zero(boundaries: &[BoundaryMatrix]) -> bool {
    boundaries
        .windows(2)
        .all(|w| w[0].compose(&w[1]).iter().all(|c| c.is_clear()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub reduced: bool,
    /// Betti numbers in degrees `0..=dim`.
    pub values: Vec<usize>,
}

impl BettiVector {
    pub fn get(&self, d: usize) -> usize {
        self.values.get(d).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let alt: i64 = self
            .values
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if self.reduced {
            alt + 1
        } else {
            alt
        }
    }

    /// Drops trailing zeros for comparisons across complexes of different dimension.
    pub fn trimmed(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

pub fn chain_complex(k: &SimplicialComplex) -> Result<ChainComplexGF2> {
    ChainComplexGF2::new(k)
}

pub fn betti_gf2(k: &SimplicialComplex, reduced: bool) -> Result<BettiVector> {
    Ok(chain_complex(k)?.betti(reduced))
}

pub fn euler_characteristic(k: &SimplicialComplex) -> Result<i64> {
    k.try_simplices()?;
    Ok(k.euler_characteristic())
}

/// Reduced GF(2) Betti numbers vanish except `β̃_d = 1`.
pub fn is_gf2_homology_sphere(k: &SimplicialComplex, d: usize) -> Result<bool> {
    let b = betti_gf2(k, true)?;
    Ok(b.get(d) == 1 && b.values.iter().enumerate().all(|(i, &x)| i == d || x == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn cyc(n: usize) -> SimplicialComplex {
        SimplicialComplex::from_facets("c", labels(n), (0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
    }

    fn boundary_of_simplex(d: usize) -> SimplicialComplex {
        let full: Vec<usize> = (0..d + 2).collect();
        let facets = (0..d + 2).map(|skip| full.iter().copied().filter(|&v| v != skip).collect()).collect();
        SimplicialComplex::from_facets("bd", labels(d + 2), facets).unwrap()
    }

    #[test]
    fn triangle_boundary_matrix() {
        let cc = chain_complex(&cyc(3)).unwrap();
        let d1 = cc.boundary(1).unwrap();
        assert_eq!(d1.shape(), (3, 3));
        assert_eq!(d1.rank(), 2);
        assert!((0..3).all(|j| d1.column(j).count_ones(..) == 2));
    }

    #[test]
    fn full_triangle_top_boundary() {
        let t = SimplicialComplex::from_facets("T", labels(3), vec![vec![0, 1, 2]]).unwrap();
        let cc = chain_complex(&t).unwrap();
        let d2 = cc.boundary(2).unwrap();
        assert_eq!(d2.shape(), (3, 1));
        assert_eq!(d2.column(0).ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(betti_gf2(&t, true).unwrap().trimmed(), Vec::<usize>::new());
    }

    #[test]
    fn hexagon_is_a_circle() {
        let h = cyc(6);
        assert_eq!(betti_gf2(&h, false).unwrap().values, vec![1, 1]);
        assert!(is_gf2_homology_sphere(&h, 1).unwrap());
        assert!(!is_gf2_homology_sphere(&h, 0).unwrap());
    }

    #[test]
    fn simplex_boundaries_are_spheres() {
        for d in 0..5 {
            let k = boundary_of_simplex(d);
            assert!(is_gf2_homology_sphere(&k, d).unwrap(), "d={d}");
            assert_eq!(euler_characteristic(&k).unwrap(), 1 + if d % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn projective_plane_differs_from_sphere_mod_2() {
        // 6-vertex RP^2: GF(2) Betti (1,1,1).
        let facets = vec![
            vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5], vec![0, 1, 5],
            vec![1, 2, 4], vec![2, 3, 5], vec![1, 3, 4], vec![2, 4, 5], vec![1, 3, 5],
        ];
        let rp2 = SimplicialComplex::from_facets("RP2", labels(6), facets).unwrap();
        let b = betti_gf2(&rp2, false).unwrap();
        assert_eq!(b.values, vec![1, 1, 1]);
        assert_eq!(b.euler_characteristic(), rp2.euler_characteristic());
    }

    #[test]
    fn disjoint_union_components() {
        let k = SimplicialComplex::from_facets("pts", labels(3), vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(betti_gf2(&k, false).unwrap().values, vec![3]);
        assert_eq!(betti_gf2(&k, true).unwrap().values, vec![2]);
    }

    #[test]
    fn rank_is_deterministic() {
        let cc = chain_complex(&boundary_of_simplex(3)).unwrap();
        assert_eq!(cc.ranks(), cc.ranks());
        assert!(cc.boundary_squares_to_zero());
    }
}
