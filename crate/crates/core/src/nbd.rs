//! The neighborhood `(N, m)` game: toggling `v` adds 1 mod `m` to every label
//! in the closed neighborhood of `v`.
//!
//! Play is commutative, so a position is determined by per-vertex toggle
//! counts and winnability is the linear system `N c = -lab` over `Z_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::labeling::{Labeling, ToggleCounts};
use crate::zmod;

/// Closed-neighborhood 0/1 matrix: entry `(i, j)` is 1 iff `j` is `i` or
/// adjacent to `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodMatrix {
    n: usize,
    entries: Vec<Vec<u8>>,
}

impl NeighborhoodMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }

    /// Exact integer determinant.
    pub fn determinant(&self) -> BigInt {
        let a: Vec<Vec<i64>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        zmod::det_bareiss(&a)
    }

    fn reduced(&self, m: u32) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| x as u64 % m as u64).collect())
            .collect()
    }
}

pub fn neighborhood_matrix(g: &Graph) -> NeighborhoodMatrix {
    let n = g.n();
    let mut entries = vec![vec![0u8; n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for &j in g.closed0(i) {
            row[j] = 1;
        }
    }
    NeighborhoodMatrix { n, entries }
}

pub fn toggle_nbd(g: &Graph, lab: &Labeling, v: usize) -> Result<Labeling> {
    g.check_vertex(v)?;
    lab.check_len(g.n())?;
    let m = lab.modulus();
    let mut out = lab.clone();
    let values = out.values_mut();
    for &w in g.closed0(v - 1) {
        values[w] = (values[w] + 1) % m;
    }
    Ok(out)
}

/// `lab + N c (mod m)`.
pub fn apply_counts(g: &Graph, lab: &Labeling, counts: &ToggleCounts) -> Result<Labeling> {
    lab.check_len(g.n())?;
    if counts.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: counts.len() });
    }
    let m = lab.modulus();
    if counts.modulus() != m {
        return Err(Error::ModulusMismatch { expected: m, got: counts.modulus() });
    }
    let mut values: Vec<u64> = lab.values().iter().map(|&x| x as u64).collect();
    for (i, &c) in counts.counts().iter().enumerate() {
        for &w in g.closed0(i) {
            values[w] += c as u64;
        }
    }
    Ok(Labeling::from_raw(
        m,
        values.into_iter().map(|x| (x % m as u64) as u32).collect(),
    ))
}

/// Finds toggle counts that bring `lab` to the zero labeling, or `None` when
/// `lab` is not winnable.
pub fn solve_nbd(g: &Graph, lab: &Labeling) -> Result<Option<ToggleCounts>> {
    lab.check_len(g.n())?;
    let m = lab.modulus();
    let a = neighborhood_matrix(g).reduced(m);
    let rhs: Vec<u64> = lab.negated().values().iter().map(|&x| x as u64).collect();
    Ok(zmod::solve_mod(&a, &rhs, m as u64).map(|x| {
        ToggleCounts::from_raw(m, x.into_iter().map(|v| v as u32).collect())
    }))
}

pub fn is_winnable_nbd(g: &Graph, lab: &Labeling) -> Result<bool> {
    Ok(solve_nbd(g, lab)?.is_some())
}

/// Every labeling is winnable iff `N` is invertible over `Z_m`, i.e. its
/// determinant is a unit mod `m`.
pub fn is_aw_nbd(g: &Graph, m: u32) -> Result<bool> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let det = neighborhood_matrix(g).determinant();
    let residue = det
        .mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue below modulus");
    Ok(residue.gcd(&(m as u64)) == 1)
}

/// Exhaustive AW check: solves every one of the `m^n` labelings.
pub fn is_aw_nbd_exhaustive(g: &Graph, m: u32, exec: Exec) -> Result<bool> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let total = (m as u64)
        .checked_pow(g.n() as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::Precondition(format!("{m}^{} labelings is too many", g.n())))?;
    let unwinnable = exec::count_range(exec, total as usize, |idx| {
        let lab = Labeling::from_state_index(m, g.n(), idx as u64).expect("valid modulus");
        !is_winnable_nbd(g, &lab).expect("length matches")
    });
    Ok(unwinnable == 0)
}

/// `K_{n,p}` is `(N, m)`-AW iff `gcd(m, np - 1) = 1`.
pub fn knp_aw_formula(n: u64, p: u64, m: u64) -> bool {
    (n * p - 1).gcd(&m) == 1
}

/// `P_n` is `(N, 2)`-AW iff `n ≡ 0, 1 (mod 3)`.
pub fn path_aw_n2(n: usize) -> bool {
    n % 3 != 2
}

/// `C_n` is `(N, 2)`-AW iff `n ≡ 1, 2 (mod 3)`.
pub fn cycle_aw_n2(n: usize) -> bool {
    n % 3 != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_graphs;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn lab(m: u32, v: &[u32]) -> Labeling {
        Labeling::new(m, v.to_vec()).unwrap()
    }

    /// Oracle: the set of labelings reachable from zero, i.e. `{N c}` for
    /// every count vector `c`. `lab` is winnable iff `-lab` is in it.
    fn image_of_n(g: &Graph, m: u32) -> HashSet<Vec<u32>> {
        let n = g.n();
        let total = (m as u64).pow(n as u32);
        (0..total)
            .map(|idx| {
                let c = Labeling::from_state_index(m, n, idx).unwrap();
                let c = ToggleCounts::new(m, c.values().to_vec()).unwrap();
                apply_counts(g, &Labeling::zero(m, n).unwrap(), &c)
                    .unwrap()
                    .values()
                    .to_vec()
            })
            .collect()
    }

    #[test]
    fn toggle_examples() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(toggle_nbd(&p3, &lab(2, &[1, 1, 0]), 1).unwrap(), lab(2, &[0, 0, 0]));
        let k22 = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(
            toggle_nbd(&k22, &lab(3, &[0, 0, 0, 0]), 1).unwrap(),
            lab(3, &[1, 0, 1, 1])
        );
        assert!(toggle_nbd(&p3, &lab(2, &[1, 1, 0]), 4).is_err());
    }

    #[test]
    fn m_toggles_cancel() {
        let g = Graph::cycle(5).unwrap();
        for m in 2..7 {
            let mut s = Labeling::zero(m, 5).unwrap();
            for _ in 0..m {
                s = toggle_nbd(&g, &s, 3).unwrap();
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn counts_examples() {
        let p3 = Graph::path(3).unwrap();
        let start = lab(2, &[1, 1, 0]);
        let zero_counts = ToggleCounts::zero(2, 3).unwrap();
        assert_eq!(apply_counts(&p3, &start, &zero_counts).unwrap(), start);
        let c = ToggleCounts::new(2, vec![1, 0, 0]).unwrap();
        assert_eq!(apply_counts(&p3, &start, &c).unwrap(), lab(2, &[0, 0, 0]));
        let wrong = ToggleCounts::new(3, vec![1, 0, 0]).unwrap();
        assert!(matches!(
            apply_counts(&p3, &start, &wrong),
            Err(Error::ModulusMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn matrix_examples() {
        let rows = |g: Graph| neighborhood_matrix(&g).rows().to_vec();
        assert_eq!(
            rows(Graph::path(3).unwrap()),
            vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]
        );
        assert_eq!(rows(Graph::path(1).unwrap()), vec![vec![1]]);
        assert_eq!(rows(Graph::cycle(3).unwrap()), vec![vec![1; 3]; 3]);
    }

    #[test]
    fn solve_examples() {
        let p3 = Graph::path(3).unwrap();
        let c = solve_nbd(&p3, &lab(2, &[1, 1, 0])).unwrap().unwrap();
        assert_eq!(c.counts(), &[1, 0, 0]);
        let p2 = Graph::path(2).unwrap();
        assert_eq!(solve_nbd(&p2, &lab(2, &[1, 0])).unwrap(), None);
        assert!(!is_winnable_nbd(&p2, &lab(2, &[1, 0])).unwrap());
        for m in 2..7 {
            let z = Labeling::zero(m, 3).unwrap();
            let c = solve_nbd(&p3, &z).unwrap().unwrap();
            assert!(apply_counts(&p3, &z, &c).unwrap().is_zero());
        }
    }

    #[test]
    fn k23_all_winnable_mod_2() {
        let g = Graph::complete_bipartite(2, 3).unwrap();
        for idx in 0..32 {
            let s = Labeling::from_state_index(2, 5, idx).unwrap();
            assert!(is_winnable_nbd(&g, &s).unwrap());
        }
    }

    #[test]
    fn aw_examples() {
        assert!(!is_aw_nbd(&Graph::complete_bipartite(3, 3).unwrap(), 2).unwrap());
        assert!(is_aw_nbd(&Graph::path(3).unwrap(), 2).unwrap());
        assert!(!is_aw_nbd(&Graph::cycle(3).unwrap(), 2).unwrap());
        assert!(knp_aw_formula(2, 2, 2));
        assert!(!knp_aw_formula(2, 2, 3));
        assert!(!knp_aw_formula(3, 3, 2));
        assert!(path_aw_n2(4) && !path_aw_n2(2) && cycle_aw_n2(5));
    }

    #[test]
    fn solver_complete_on_small_graphs() {
        for n in 1..=4 {
            for g in enumerate_graphs(n).unwrap() {
                for m in [2, 3, 4, 6] {
                    let image = image_of_n(&g, m);
                    let total = (m as u64).pow(n as u32);
                    let mut all = true;
                    for idx in 0..total {
                        let s = Labeling::from_state_index(m, n, idx).unwrap();
                        let expect = image.contains(s.negated().values());
                        let got = solve_nbd(&g, &s).unwrap();
                        assert_eq!(got.is_some(), expect, "{g:?} m={m} {s}");
                        if let Some(c) = got {
                            assert!(apply_counts(&g, &s, &c).unwrap().is_zero());
                        }
                        all &= expect;
                    }
                    assert_eq!(is_aw_nbd(&g, m).unwrap(), all, "{g:?} m={m}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_aw_agrees_with_determinant() {
        for g in [Graph::path(4).unwrap(), Graph::cycle(4).unwrap(), Graph::complete_bipartite(1, 3).unwrap()] {
            for m in 2..=5 {
                for exec in [Exec::Sequential, Exec::Parallel] {
                    assert_eq!(is_aw_nbd_exhaustive(&g, m, exec).unwrap(), is_aw_nbd(&g, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_determinant() {
        for n in 1..=4u64 {
            for p in 1..=4u64 {
                let g = Graph::complete_bipartite(n as usize, p as usize).unwrap();
                for m in 2..=8u32 {
                    assert_eq!(knp_aw_formula(n, p, m as u64), is_aw_nbd(&g, m).unwrap());
                }
            }
        }
        for n in 1..=12 {
            assert_eq!(path_aw_n2(n), is_aw_nbd(&Graph::path(n).unwrap(), 2).unwrap());
            if n >= 3 {
                assert_eq!(cycle_aw_n2(n), is_aw_nbd(&Graph::cycle(n).unwrap(), 2).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn counts_equal_shuffled_replay(
            code in 0u32..(1 << 15),
            n in 1usize..=6,
            m in 2u32..=6,
            raw in proptest::collection::vec(0u32..6, 12),
            seed in any::<u64>(),
        ) {
            let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, e)| e);
            let g = Graph::new(n, edges).unwrap();
            let start = Labeling::new(m, raw[..n].iter().map(|x| x % m).collect()).unwrap();
            let counts = ToggleCounts::new(m, raw[6..6 + n].iter().map(|x| x % m).collect()).unwrap();
            let mut order = counts.to_sequence().0;
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let mut replayed = start.clone();
            for v in order {
                replayed = toggle_nbd(&g, &replayed, v).unwrap();
            }
            prop_assert_eq!(apply_counts(&g, &start, &counts).unwrap(), replayed);
        }
    }
}
