//! Root-system and weight-lattice data for the finite-dimensional complex
//! simple Lie algebras: Cartan matrices, symmetrizers, the invariant
//! bilinear form normalized so short roots have squared length 2, positive
//! roots by reflection closure, and the Weyl dimension formula.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CartanError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("cannot parse root system name {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Pairing with the coroot `alpha_a^vee`; in the fundamental-weight
    /// basis this is just the a-th coordinate.
    pub fn coroot_coord(&self, a: usize) -> i64 {
        self.0[a]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Cartan data for one simple type.
///
/// Conventions: `a[i][j] = <alpha_j, alpha_i^vee>`, `(alpha_i, alpha_j) =
/// d_i a[i][j]`, `d_i = (alpha_i, alpha_i)/2`, short roots have squared
/// length 2. `K_i E_j K_i^{-1} = q_i^{a_ij} E_j` with `q_i = q^{d_i}`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    /// (omega_i, omega_j), exact.
    gram: Vec<Vec<BigRational>>,
    positive_roots: Vec<Weight>,
}

fn simply_laced_cartan(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
    }
    for &(i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

fn chain_edges(rank: usize) -> Vec<(usize, usize)> {
    (0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<Self, CartanError> {
        let bad = |msg: &str| Err(CartanError::Unsupported(msg.to_string()));
        let (cartan, d): (Vec<Vec<i64>>, Vec<i64>) = match series {
            Series::A => {
                if rank < 1 {
                    return bad("A requires rank >= 1");
                }
                (simply_laced_cartan(rank, &chain_edges(rank)), vec![1; rank])
            }
            Series::B => {
                // alpha_rank short, the rest long
                if rank < 2 {
                    return bad("B requires rank >= 2");
                }
                let mut a = simply_laced_cartan(rank, &chain_edges(rank));
                a[rank - 1][rank - 2] = -2;
                let mut d = vec![2; rank];
                d[rank - 1] = 1;
                (a, d)
            }
            Series::C => {
                // alpha_rank long, the rest short
                if rank < 2 {
                    return bad("C requires rank >= 2");
                }
                let mut a = simply_laced_cartan(rank, &chain_edges(rank));
                a[rank - 2][rank - 1] = -2;
                let mut d = vec![1; rank];
                d[rank - 1] = 2;
                (a, d)
            }
            Series::D => {
                if rank < 3 {
                    return bad("D requires rank >= 3");
                }
                let mut edges = chain_edges(rank - 1);
                edges.push((rank - 3, rank - 1));
                (simply_laced_cartan(rank, &edges), vec![1; rank])
            }
            Series::E => {
                // Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to 4
                if !(6..=8).contains(&rank) {
                    return bad("E requires rank in 6..=8");
                }
                let mut edges = vec![(0, 2), (1, 3)];
                for i in 2..rank - 1 {
                    edges.push((i, i + 1));
                }
                (simply_laced_cartan(rank, &edges), vec![1; rank])
            }
            Series::F => {
                if rank != 4 {
                    return bad("F requires rank 4");
                }
                let a = vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -1, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ];
                (a, vec![2, 2, 1, 1])
            }
            Series::G => {
                // alpha_1 short (d=1), alpha_2 long (d=3)
                if rank != 2 {
                    return bad("G requires rank 2");
                }
                (vec![vec![2, -3], vec![-1, 2]], vec![1, 3])
            }
        };

        // sanity: d_i a_ij = d_j a_ji
        for i in 0..rank {
            for j in 0..rank {
                debug_assert_eq!(d[i] * cartan[i][j], d[j] * cartan[j][i]);
            }
        }

        let gram = fundamental_gram(&cartan, &d);
        let mut rs = RootSystem { series, rank, cartan, d, gram, positive_roots: Vec::new() };
        rs.positive_roots = rs.compute_positive_roots();
        Ok(rs)
    }

    /// Parses names like "A2", "G2", "B3".
    pub fn parse(name: &str) -> Result<Self, CartanError> {
        let mut chars = name.chars();
        let series = match chars.next() {
            Some('A') | Some('a') => Series::A,
            Some('B') | Some('b') => Series::B,
            Some('C') | Some('c') => Series::C,
            Some('D') | Some('d') => Series::D,
            Some('E') | Some('e') => Series::E,
            Some('F') | Some('f') => Series::F,
            Some('G') | Some('g') => Series::G,
            _ => return Err(CartanError::Parse(name.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CartanError::Parse(name.to_string()))?;
        RootSystem::new(series, rank)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// Simple root `alpha_j` in the fundamental-weight basis:
    /// `alpha_j = sum_i a_ij omega_i` (the j-th column of the Cartan matrix).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank).map(|i| self.cartan[i][j]).collect())
    }

    pub fn check_rank(&self, w: &Weight) -> Result<(), CartanError> {
        if w.rank() != self.rank {
            return Err(CartanError::RankMismatch { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    /// Invariant bilinear form, `(omega_i, alpha_j) = delta_ij d_j`.
    pub fn bilinear(&self, lam: &Weight, mu: &Weight) -> BigRational {
        assert_eq!(lam.rank(), self.rank, "rank mismatch");
        assert_eq!(mu.rank(), self.rank, "rank mismatch");
        let mut acc = BigRational::zero();
        for i in 0..self.rank {
            if lam.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if mu.0[j] == 0 {
                    continue;
                }
                acc += BigRational::from(BigInt::from(lam.0[i] * mu.0[j])) * &self.gram[i][j];
            }
        }
        acc
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// `2 rho = sum_i 2 omega_i`; satisfies `(2 rho, alpha_a) = (alpha_a, alpha_a)`.
    pub fn two_rho(&self) -> Weight {
        Weight(vec![2; self.rank])
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    fn compute_positive_roots(&self) -> Vec<Weight> {
        // closure of the simple roots under simple reflections
        // s_a(beta) = beta - <beta, alpha_a^vee> alpha_a
        let mut all: Vec<Weight> = Vec::new();
        let mut queue: Vec<Weight> = (0..self.rank).map(|j| self.simple_root(j)).collect();
        while let Some(beta) = queue.pop() {
            if all.contains(&beta) {
                continue;
            }
            all.push(beta.clone());
            for a in 0..self.rank {
                let refl = &beta - &self.simple_root(a).scaled(beta.coroot_coord(a));
                if !all.contains(&refl) {
                    queue.push(refl);
                }
            }
        }
        let mut pos: Vec<Weight> = all
            .into_iter()
            .filter(|beta| {
                self.root_coordinates(beta)
                    .map_or(false, |cs| cs.iter().all(|c| !c.is_negative()))
            })
            .collect();
        pos.sort();
        pos
    }

    /// Coordinates of a weight in the simple-root basis, if integral data
    /// allow (rational in general).
    pub fn root_coordinates(&self, w: &Weight) -> Option<Vec<BigRational>> {
        // solve cartan^T? : w_i = sum_j n_j a_ij  => n = A^{-1} w with A_ij = a_ij
        let n = self.rank;
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for i in 0..n {
            for j in 0..n {
                mat[i][j] = BigRational::from(BigInt::from(self.cartan[i][j]));
            }
            mat[i][n] = BigRational::from(BigInt::from(w.0[i]));
        }
        solve_gauss(mat, n)
    }

    /// Weyl dimension formula over the positive roots.
    pub fn weyl_dim(&self, hw: &Weight) -> Result<usize, CartanError> {
        self.check_rank(hw)?;
        if !hw.is_dominant() {
            return Err(CartanError::NotDominant(hw.to_string()));
        }
        let rho = self.rho();
        let top = &rho + hw;
        let mut acc = BigRational::one();
        for alpha in &self.positive_roots {
            acc *= self.bilinear(&top, alpha) / self.bilinear(&rho, alpha);
        }
        debug_assert!(acc.is_integer());
        let n = acc.to_integer();
        Ok(usize::try_from(n).expect("dimension fits in usize"))
    }
}

/// Gram matrix of the fundamental weights: with `M_kj = (alpha_k, alpha_j)`
/// one has `(omega_i, omega_j) = d_i (M^{-1})_ij d_j`.
fn fundamental_gram(cartan: &[Vec<i64>], d: &[i64]) -> Vec<Vec<BigRational>> {
    let n = d.len();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 2 * n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = BigRational::from(BigInt::from(d[i] * cartan[i][j]));
        }
        m[i][n + i] = BigRational::one();
    }
    // invert by Gauss-Jordan
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("symmetrized Cartan matrix is invertible");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for e in m[col].iter_mut() {
            *e /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    let mut gram = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] =
                BigRational::from(BigInt::from(d[i])) * &m[i][n + j] * BigRational::from(BigInt::from(d[j]));
        }
    }
    gram
}

fn solve_gauss(mut mat: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, piv);
        let p = mat[col][col].clone();
        for e in mat[col].iter_mut() {
            *e /= &p;
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in 0..=n {
                    let sub = &f * &mat[col][c];
                    mat[r][c] -= sub;
                }
            }
        }
    }
    Some((0..n).map(|i| mat[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn a1_form() {
        let rs = RootSystem::parse("A1").unwrap();
        let alpha = rs.simple_root(0);
        assert_eq!(rs.bilinear(&alpha, &alpha), br(2));
        // (2 rho, omega) = 1 since rho = omega = alpha/2
        let omega = Weight::fundamental(1, 0);
        assert_eq!(rs.bilinear(&rs.two_rho(), &omega), br(1));
    }

    #[test]
    fn omega_alpha_duality() {
        for name in ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "D4", "F4"] {
            let rs = RootSystem::parse(name).unwrap();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let v = rs.bilinear(&Weight::fundamental(rs.rank(), i), &rs.simple_root(j));
                    let expect = if i == j { br(rs.symmetrizer(j)) } else { br(0) };
                    assert_eq!(v, expect, "{name} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn a2_off_diagonal() {
        let rs = RootSystem::parse("A2").unwrap();
        assert_eq!(rs.bilinear(&rs.simple_root(0), &rs.simple_root(1)), br(-1));
    }

    #[test]
    fn two_rho_simple_roots() {
        for name in ["A2", "B2", "C2", "G2", "A3", "F4"] {
            let rs = RootSystem::parse(name).unwrap();
            for a in 0..rs.rank() {
                let alpha = rs.simple_root(a);
                assert_eq!(
                    rs.bilinear(&rs.two_rho(), &alpha),
                    rs.bilinear(&alpha, &alpha),
                    "{name} root {a}"
                );
            }
        }
    }

    #[test]
    fn simple_root_lengths() {
        for name in ["A2", "B2", "C2", "G2", "B3", "F4", "E6"] {
            let rs = RootSystem::parse(name).unwrap();
            for a in 0..rs.rank() {
                let alpha = rs.simple_root(a);
                let len = rs.bilinear(&alpha, &alpha);
                assert_eq!(len, br(2 * rs.symmetrizer(a)), "{name} root {a}");
                assert!([br(2), br(4), br(6)].contains(&len));
            }
        }
    }

    #[test]
    fn positive_root_counts() {
        let counts = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("C2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ];
        for (name, count) in counts {
            let rs = RootSystem::parse(name).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{name}");
        }
    }

    #[test]
    fn weyl_dims() {
        let a1 = RootSystem::parse("A1").unwrap();
        for n in 0..6 {
            assert_eq!(a1.weyl_dim(&Weight(vec![n])).unwrap(), (n + 1) as usize);
        }
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(a2.weyl_dim(&Weight(vec![1, 1])).unwrap(), 8);
        for n in 2..6 {
            let rs = RootSystem::new(Series::A, n - 1).unwrap();
            assert_eq!(rs.weyl_dim(&Weight::fundamental(n - 1, 0)).unwrap(), n);
        }
        let g2 = RootSystem::parse("G2").unwrap();
        assert_eq!(g2.weyl_dim(&Weight(vec![1, 0])).unwrap(), 7);
        assert_eq!(g2.weyl_dim(&Weight(vec![0, 1])).unwrap(), 14);
        assert!(a2.weyl_dim(&Weight(vec![-1, 0])).is_err());
    }

    #[test]
    fn bilinear_symmetry_and_linearity() {
        let rs = RootSystem::parse("B3").unwrap();
        let w1 = Weight(vec![1, -2, 3]);
        let w2 = Weight(vec![0, 4, -1]);
        let w3 = Weight(vec![2, 2, 2]);
        assert_eq!(rs.bilinear(&w1, &w2), rs.bilinear(&w2, &w1));
        assert_eq!(
            rs.bilinear(&(&w1 + &w3), &w2),
            rs.bilinear(&w1, &w2) + rs.bilinear(&w3, &w2)
        );
    }
}
