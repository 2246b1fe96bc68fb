//! Linear algebra over the residue ring `Z_m`, for any `m >= 2`.
//!
//! `Z_m` has zero divisors when `m` is composite, so ordinary Gaussian
//! elimination does not apply. Rows are combined with unimodular 2x2
//! transforms built from the extended gcd, so a pivot becomes the gcd of its
//! column. After each pivot, the row multiplied by the pivot's annihilator
//! `m / gcd(pivot, m)` is appended: it vanishes in the pivot column but may
//! carry information in later ones. The resulting echelon form has the
//! Howell spanning property, which makes back substitution complete.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd((a % m) as i64, m as i64);
    (g == 1).then(|| s.rem_euclid(m as i64) as u64)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn to_residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Row echelon form of a matrix over `Z_m` with the Howell spanning
/// property: every vector in the row span whose first `j` entries vanish is
/// a combination of the echelon rows whose pivot column is at least `j`.
#[derive(Clone, Debug)]
pub struct Echelon {
    m: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    /// `(row index, pivot column)`, pivot columns strictly increasing.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    /// Reduces `rows` (entries already in `0..m`).
    pub fn new(m: u64, cols: usize, mut rows: Vec<Vec<u64>>) -> Echelon {
        assert!(m >= 2, "modulus must be at least 2");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r >= rows.len() {
                break;
            }
            for i in r + 1..rows.len() {
                let below = rows[i][c];
                if below == 0 {
                    continue;
                }
                let top = rows[r][c];
                if top == 0 {
                    rows.swap(r, i);
                    continue;
                }
                // [s t; b/g -a/g] has determinant -1, so it is invertible mod m.
                let (g, s, t) = ext_gcd(top as i64, below as i64);
                let (s, t) = (to_residue(s, m), to_residue(t, m));
                let top_g = (top as i64 / g) as u64 % m;
                let below_g = (below as i64 / g) as u64 % m;
                let (head, tail) = rows.split_at_mut(i);
                let (row_r, row_i) = (&mut head[r], &mut tail[0]);
                for (x, y) in row_r.iter_mut().zip(row_i.iter_mut()) {
                    let nx = (mulmod(s, *x, m) + mulmod(t, *y, m)) % m;
                    let ny = (mulmod(below_g, *x, m) + m - mulmod(top_g, *y, m)) % m;
                    *x = nx;
                    *y = ny;
                }
            }
            let pivot = rows[r][c];
            if pivot == 0 {
                continue;
            }
            let ann = m / pivot.gcd(&m);
            if ann != m {
                let extra: Vec<u64> = rows[r].iter().map(|&x| mulmod(x, ann, m)).collect();
                if extra.iter().any(|&x| x != 0) {
                    rows.push(extra);
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        Echelon { m, cols, rows, pivots }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.iter().map(|&(_, c)| c)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_value(&self, k: usize) -> u64 {
        let (r, c) = self.pivots[k];
        self.rows[r][c]
    }
}

/// Solves `A x = b` over `Z_m`. Free variables are set to 0; each pivot
/// variable takes its least admissible residue.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], m: u64) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<u64> = row.iter().map(|&x| x % m).collect();
            r.push(rhs % m);
            r
        })
        .collect();
    let ech = Echelon::new(m, cols + 1, rows);
    if ech.pivot_columns().any(|c| c == cols) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for &(r, c) in ech.pivots.iter().rev() {
        let row = &ech.rows[r];
        let mut rhs = row[cols];
        for j in c + 1..cols {
            rhs = (rhs + m - mulmod(row[j], x[j], m)) % m;
        }
        let g = row[c].gcd(&m);
        if rhs % g != 0 {
            debug_assert!(false, "echelon form lost the spanning property");
            return None;
        }
        let modulus = m / g;
        let unit = inv_mod(row[c] / g % modulus, modulus)?;
        x[c] = mulmod((rhs / g) % modulus, unit, modulus);
    }
    Some(x)
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut mat: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "determinant needs a square matrix");
            row.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]) / &prev;
                mat[i][j] = v;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
