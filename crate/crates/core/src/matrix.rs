//! Small dense matrices over the exact scalar types. Multiplication skips
//! zero entries, so sparse generator matrices stay cheap.

use crate::scalar::{RationalScalar, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<RationalScalar>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix { n, entries: vec![RationalScalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = RationalScalar::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<RationalScalar>) -> Self {
        let n = diag.len();
        let mut m = RatMatrix::zero(n);
        for (i, v) in diag.into_iter().enumerate() {
            *m.at_mut(i, i) = v;
        }
        m
    }

    pub fn diagonal_scalar(diag: &[Scalar]) -> Self {
        RatMatrix::diagonal(diag.iter().map(|s| RationalScalar::from_scalar(s.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry in row `i`, column `j` (upper index row: `m[i][j] = M^i_j`).
    pub fn at(&self, i: usize, j: usize) -> &RationalScalar {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut RationalScalar {
        &mut self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(i, j) += &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a += &(-b);
        }
        out
    }

    pub fn scale(&self, c: &RationalScalar) -> RatMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = &*e * c;
        }
        out
    }

    pub fn trace(&self) -> RationalScalar {
        let mut t = RationalScalar::zero();
        for i in 0..self.n {
            t += self.at(i, i);
        }
        t
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix over `Scalar`, used for coefficient matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarMatrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(n: usize) -> Self {
        ScalarMatrix { n, entries: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = ScalarMatrix::zero(n);
        *m.at_mut(i, j) = Scalar::one();
        m
    }

    pub fn from_diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = ScalarMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = diag[i].clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = ScalarMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) += &(a * b);
                }
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = RationalScalar::from_scalar(self.at(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}
