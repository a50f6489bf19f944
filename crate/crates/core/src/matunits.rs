//! Matrix units over the coordinate ring, the coefficient-matrix
//! projections built from them, flag-support and projection validation,
//! q-traces, and the modular conjugation identity.
//!
//! `unit_m(rep, m, n)` has entries `u[m,i]* u[n,j]`; `unit_n(rep, m, n)`
//! has entries `u[i,m] u[j,n]*`. Products of these behave like elementary
//! matrices, which is what makes `P = sum c^m_n M^n_m` a projection
//! whenever the coefficient matrix is idempotent.

use crate::cartan::Weight;
use crate::coordring::{decide_equal, sigma_twist, CoordElement, Decision, EqConfig};
use crate::matrix::ScalarMatrix;
use crate::repbuild::RepRef;
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum MatUnitError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("coefficient matrix is not flag-supported")]
    NotFlagSupported,
}

/// Square matrix of coordinate-ring elements, indexed consistently with
/// the basis of its representation.
#[derive(Clone, PartialEq, Eq)]
pub struct CoordMatrix {
    rep: RepRef,
    entries: Vec<CoordElement>,
}

impl std::fmt::Debug for CoordMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CoordMatrix({}) [", self.rep.label())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| format!("{:?}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl CoordMatrix {
    pub fn zero(rep: &RepRef) -> Self {
        let n = rep.dim();
        CoordMatrix { rep: rep.clone(), entries: vec![CoordElement::zero(); n * n] }
    }

    /// The identity matrix (unit element on the diagonal).
    pub fn identity(rep: &RepRef) -> Self {
        let mut m = CoordMatrix::zero(rep);
        for i in 0..rep.dim() {
            *m.at_mut(i, i) = CoordElement::one();
        }
        m
    }

    pub fn rep(&self) -> &RepRef {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn at(&self, i: usize, j: usize) -> &CoordElement {
        &self.entries[i * self.dim() + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CoordElement {
        let n = self.dim();
        &mut self.entries[i * n + j]
    }

    pub fn add(&self, rhs: &CoordMatrix) -> CoordMatrix {
        assert_eq!(self.dim(), rhs.dim());
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, rhs: &CoordMatrix) -> CoordMatrix {
        assert_eq!(self.dim(), rhs.dim());
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CoordMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scale(c);
        }
        out
    }

    /// Matrix product by word concatenation in each entry.
    pub fn mul(&self, rhs: &CoordMatrix) -> CoordMatrix {
        assert_eq!(self.dim(), rhs.dim());
        let n = self.dim();
        let mut out = CoordMatrix::zero(&self.rep);
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
                    let prod = a.mul(b);
                    *out.at_mut(i, j) = out.at(i, j).add(&prod);
                }
            }
        }
        out
    }

    /// Entrywise `diag(left) * M * diag(right)` for scalar diagonals.
    pub fn conjugate_diag(&self, left: &[Scalar], right: &[Scalar]) -> CoordMatrix {
        assert_eq!(left.len(), self.dim());
        assert_eq!(right.len(), self.dim());
        let mut out = CoordMatrix::zero(&self.rep);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                *out.at_mut(i, j) = self.at(i, j).scale(&(&left[i] * &right[j]));
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&CoordElement) -> CoordElement) -> CoordMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = f(e);
        }
        out
    }

    /// Entrywise counit, as an ordinary coefficient matrix.
    pub fn counit(&self) -> ScalarMatrix {
        let n = self.dim();
        let mut m = ScalarMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = self.at(i, j).counit();
            }
        }
        m
    }

    /// Entrywise structural zero (no oracle).
    pub fn is_structurally_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Entrywise semantic equality; returns the weakest oracle used.
    pub fn equal(&self, rhs: &CoordMatrix, cfg: &EqConfig) -> Decision {
        let mut oracle = crate::coordring::Oracle::Exact;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let d = decide_equal(self.at(i, j), rhs.at(i, j), cfg);
                if let crate::coordring::Oracle::Bounded(_) = d.oracle {
                    oracle = d.oracle;
                }
                if !d.equal {
                    return Decision { equal: false, oracle: d.oracle };
                }
            }
        }
        Decision { equal: true, oracle }
    }
}

/// `(M^n_m)^i_j = u^{m*}_i u^n_j`.
pub fn unit_m(rep: &RepRef, m: usize, n: usize) -> CoordMatrix {
    assert!(m < rep.dim() && n < rep.dim(), "matrix-unit index out of range");
    let d = rep.dim();
    let mut out = CoordMatrix::zero(rep);
    for i in 0..d {
        for j in 0..d {
            *out.at_mut(i, j) =
                CoordElement::atom(rep, m, i, true).mul(&CoordElement::atom(rep, n, j, false));
        }
    }
    out
}

/// `(N^n_m)^i_j = u^i_m u^{j*}_n`.
pub fn unit_n(rep: &RepRef, m: usize, n: usize) -> CoordMatrix {
    assert!(m < rep.dim() && n < rep.dim(), "matrix-unit index out of range");
    let d = rep.dim();
    let mut out = CoordMatrix::zero(rep);
    for i in 0..d {
        for j in 0..d {
            *out.at_mut(i, j) =
                CoordElement::atom(rep, i, m, false).mul(&CoordElement::atom(rep, j, n, true));
        }
    }
    out
}

/// `P = sum_{m,n} c^m_n M^n_m`.
pub fn build_p(rep: &RepRef, c: &ScalarMatrix) -> CoordMatrix {
    assert_eq!(c.dim(), rep.dim());
    let d = rep.dim();
    let mut out = CoordMatrix::zero(rep);
    for m in 0..d {
        for n in 0..d {
            let coeff = c.at(m, n);
            if coeff.is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let t = CoordElement::atom(rep, m, i, true)
                        .mul(&CoordElement::atom(rep, n, j, false))
                        .scale(coeff);
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
    }
    out
}

/// `Q = sum_{m,n} c^m_n N^n_m`.
pub fn build_q(rep: &RepRef, c: &ScalarMatrix) -> CoordMatrix {
    assert_eq!(c.dim(), rep.dim());
    let d = rep.dim();
    let mut out = CoordMatrix::zero(rep);
    for m in 0..d {
        for n in 0..d {
            let coeff = c.at(m, n);
            if coeff.is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let t = CoordElement::atom(rep, i, m, false)
                        .mul(&CoordElement::atom(rep, j, n, true))
                        .scale(coeff);
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
    }
    out
}

/// `sum_l c^m_l c^l_n = c^m_n`, exact.
pub fn is_projection(c: &ScalarMatrix) -> bool {
    c.mul(c) == *c
}

/// `c^m_n = 0` whenever `lambda_m != lambda_n`, exact.
pub fn is_flag_supported(rep: &RepRef, c: &ScalarMatrix) -> bool {
    assert_eq!(c.dim(), rep.dim());
    for m in 0..c.dim() {
        for n in 0..c.dim() {
            if rep.weight(m) != rep.weight(n) && !c.at(m, n).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `sum_i V^i_i M^i_i` for a diagonal scalar matrix `V`.
pub fn qtrace(v: &[Scalar], m: &CoordMatrix) -> Result<CoordElement, MatUnitError> {
    if v.len() != m.dim() {
        return Err(MatUnitError::DimensionMismatch);
    }
    let mut acc = CoordElement::zero();
    for i in 0..m.dim() {
        acc = acc.add(&m.at(i, i).scale(&v[i]));
    }
    Ok(acc)
}

/// Coefficient matrices supported on equal-weight pairs conjugate under
/// the modular automorphism: `theta(P) = pi(K_2rho)^-1 P pi(K_2rho)` and
/// `theta(Q) = pi(K_2rho) Q pi(K_2rho)^-1`. Both sides are exact diagonal
/// scalings, so the comparison is structural.
pub fn theta_conjugation_check(rep: &RepRef, c: &ScalarMatrix) -> Result<bool, MatUnitError> {
    if !is_flag_supported(rep, c) {
        return Err(MatUnitError::NotFlagSupported);
    }
    let two_rho = rep.root_system().two_rho();
    let kplus = rep.k_weight_diag(&two_rho, 1);
    let kminus = rep.k_weight_diag(&two_rho, -1);

    let p = build_p(rep, c);
    let theta_p = p.map(|e| sigma_twist(&two_rho, &two_rho, e));
    if theta_p != p.conjugate_diag(&kminus, &kplus) {
        return Ok(false);
    }
    let q = build_q(rep, c);
    let theta_q = q.map(|e| sigma_twist(&two_rho, &two_rho, e));
    if theta_q != q.conjugate_diag(&kplus, &kminus) {
        return Ok(false);
    }
    Ok(true)
}

/// Whether `theta(P)` for `P = sum c^m_n M^n_m` equals the stated diagonal
/// conjugation without assuming flag support (used to probe the converse).
pub fn theta_p_is_conjugation(rep: &RepRef, c: &ScalarMatrix) -> bool {
    let two_rho = rep.root_system().two_rho();
    let p = build_p(rep, c);
    let theta_p = p.map(|e| sigma_twist(&two_rho, &two_rho, e));
    theta_p
        == p.conjugate_diag(
            &rep.k_weight_diag(&two_rho, -1),
            &rep.k_weight_diag(&two_rho, 1),
        )
}

/// Diagonal 0/1 coefficient matrix supported on the given basis indices.
pub fn diag_indicator(dim: usize, indices: &[usize]) -> ScalarMatrix {
    let mut c = ScalarMatrix::zero(dim);
    for &i in indices {
        *c.at_mut(i, i) = Scalar::one();
    }
    c
}

/// Diagonal indicator of all basis vectors of one weight.
pub fn weight_indicator(rep: &RepRef, w: &Weight) -> ScalarMatrix {
    diag_indicator(rep.dim(), &rep.indices_of_weight(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{RootSystem, Weight};
    use crate::coordring::{conj_star, equal_exact, Oracle};
    use crate::repbuild::{build_irrep, fundamental_sln};
    use std::sync::Arc;

    fn cfg() -> EqConfig {
        EqConfig::default()
    }

    #[test]
    fn counit_of_matrix_unit_is_classical_unit() {
        let rep = fundamental_sln(3);
        for m in 0..3 {
            for n in 0..3 {
                let eps = unit_m(&rep, m, n).counit();
                for i in 0..3 {
                    for j in 0..3 {
                        let expect = if i == m && n == j { Scalar::one() } else { Scalar::zero() };
                        assert_eq!(eps.at(i, j), &expect);
                    }
                }
            }
        }
    }

    #[test]
    fn m_unit_product_rule_sl2() {
        // M^n_m M^p_o = delta^n_o M^p_m
        let rep = fundamental_sln(2);
        for m in 0..2 {
            for n in 0..2 {
                for o in 0..2 {
                    for p in 0..2 {
                        let prod = unit_m(&rep, m, n).mul(&unit_m(&rep, o, p));
                        let expect = if n == o {
                            unit_m(&rep, m, p)
                        } else {
                            CoordMatrix::zero(&rep)
                        };
                        let d = prod.equal(&expect, &cfg());
                        assert!(d.equal, "M: m={m} n={n} o={o} p={p}");
                        assert_eq!(d.oracle, Oracle::Exact);
                    }
                }
            }
        }
    }

    #[test]
    fn n_unit_product_rule_sl2() {
        let rep = fundamental_sln(2);
        for m in 0..2 {
            for n in 0..2 {
                for o in 0..2 {
                    for p in 0..2 {
                        let prod = unit_n(&rep, m, n).mul(&unit_n(&rep, o, p));
                        let expect = if n == o {
                            unit_n(&rep, m, p)
                        } else {
                            CoordMatrix::zero(&rep)
                        };
                        assert!(prod.equal(&expect, &cfg()).equal, "N: m={m} n={n} o={o} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn linear_independence_via_counit() {
        // sum c^m_n M^n_m = 0 entrywise implies c = 0: the counit of the
        // (i,j) entry recovers c^i_j
        let rep = fundamental_sln(3);
        let mut c = ScalarMatrix::zero(3);
        *c.at_mut(0, 1) = Scalar::qnum(2, 1);
        *c.at_mut(2, 2) = -Scalar::one();
        let p = build_p(&rep, &c);
        assert_eq!(p.counit(), c);
    }

    #[test]
    fn build_p_with_identity_coefficients_is_identity() {
        let rep = fundamental_sln(2);
        let p = build_p(&rep, &ScalarMatrix::identity(2));
        let d = p.equal(&CoordMatrix::identity(&rep), &cfg());
        assert!(d.equal);
        assert_eq!(d.oracle, Oracle::Exact);
    }

    #[test]
    fn single_diagonal_unit_is_m_unit() {
        let rep = fundamental_sln(2);
        let c = diag_indicator(2, &[1]);
        let p = build_p(&rep, &c);
        assert_eq!(p, unit_m(&rep, 1, 1));
    }

    #[test]
    fn projection_and_flag_checks() {
        let rep = fundamental_sln(2);
        let e11 = diag_indicator(2, &[0]);
        assert!(is_projection(&e11));
        assert!(is_flag_supported(&rep, &e11));

        // e_{mn} with m != n squares to zero
        let e12 = ScalarMatrix::unit(2, 0, 1);
        assert!(!is_projection(&e12));

        // rank-1 idempotent on the 2-dim zero-weight block of the adjoint
        let a2 = Arc::new(RootSystem::parse("A2").unwrap());
        let adj = build_irrep(&a2, &Weight(vec![1, 1])).unwrap();
        let zero_idx = adj.indices_of_weight(&Weight(vec![0, 0]));
        assert_eq!(zero_idx.len(), 2);
        let mut c = ScalarMatrix::zero(8);
        *c.at_mut(zero_idx[0], zero_idx[0]) = Scalar::one();
        *c.at_mut(zero_idx[0], zero_idx[1]) = Scalar::one();
        assert!(is_projection(&c));
        assert!(is_flag_supported(&adj, &c));
        // but an off-diagonal unit on that block is nilpotent
        let mut c2 = ScalarMatrix::zero(8);
        *c2.at_mut(zero_idx[0], zero_idx[1]) = Scalar::one();
        assert!(!is_projection(&c2));
        assert!(is_flag_supported(&adj, &c2));
    }

    #[test]
    fn qtrace_identities() {
        let rep = fundamental_sln(3);
        let rs = rep.root_system().clone();
        let two_rho = rs.two_rho();
        let kminus = rep.k_weight_diag(&two_rho, -1);
        let kplus = rep.k_weight_diag(&two_rho, 1);
        for m in 0..3 {
            for n in 0..3 {
                let t = qtrace(&kminus, &unit_m(&rep, m, n)).unwrap();
                let expect = if m == n {
                    let e = -rs.bilinear(&two_rho, rep.weight(m));
                    CoordElement::scalar(Scalar::q_pow(e))
                } else {
                    CoordElement::zero()
                };
                assert!(equal_exact(&t, &expect, 5000).unwrap(), "M trace m={m} n={n}");

                let t = qtrace(&kplus, &unit_n(&rep, m, n)).unwrap();
                let expect = if m == n {
                    let e = rs.bilinear(&two_rho, rep.weight(m));
                    CoordElement::scalar(Scalar::q_pow(e))
                } else {
                    CoordElement::zero()
                };
                assert!(equal_exact(&t, &expect, 5000).unwrap(), "N trace m={m} n={n}");
            }
        }
    }

    #[test]
    fn theta_conjugation() {
        let rep = fundamental_sln(3);
        // flag-supported: single diagonal unit
        assert!(theta_conjugation_check(&rep, &diag_indicator(3, &[1])).unwrap());
        // precondition gate
        let off = ScalarMatrix::unit(3, 0, 1);
        assert_eq!(
            theta_conjugation_check(&rep, &off),
            Err(MatUnitError::NotFlagSupported)
        );
        // P = M^n_m + M^m_n with (2rho, lambda_n - lambda_m) != 0 is not an
        // eigenvector of theta, in particular not the plain conjugation
        let mut sym = ScalarMatrix::zero(3);
        *sym.at_mut(0, 1) = Scalar::one();
        *sym.at_mut(1, 0) = Scalar::one();
        assert!(!theta_p_is_conjugation(&rep, &sym));
        // a single off-diagonal unit with unequal weights is an eigenvector
        // but its eigenvalue q^{-(2rho, lambda_m - lambda_n)} != 1, so the
        // conjugation identity still fails
        assert!(!theta_p_is_conjugation(&rep, &ScalarMatrix::unit(3, 0, 1)));
        // on an equal-weight pair the conjugation identity does hold
        let a2 = Arc::new(RootSystem::parse("A2").unwrap());
        let adj = build_irrep(&a2, &Weight(vec![1, 1])).unwrap();
        let z = adj.indices_of_weight(&Weight(vec![0, 0]));
        assert!(theta_p_is_conjugation(&adj, &ScalarMatrix::unit(8, z[0], z[1])));
        assert!(theta_conjugation_check(&adj, &ScalarMatrix::unit(8, z[0], z[1])).unwrap());
    }

    #[test]
    fn p_squared_is_p_for_projections() {
        let rep = fundamental_sln(2);
        let c = diag_indicator(2, &[0]);
        let p = build_p(&rep, &c);
        assert!(p.mul(&p).equal(&p, &cfg()).equal);
        let q = build_q(&rep, &c);
        assert!(q.mul(&q).equal(&q, &cfg()).equal);
    }

    #[test]
    fn q_dependent_coefficients_allowed() {
        // the projection condition is algebraic, so q-dependent entries work
        let rep = fundamental_sln(2);
        let mut c = ScalarMatrix::zero(2);
        *c.at_mut(0, 0) = Scalar::one();
        *c.at_mut(0, 1) = Scalar::q_pow_frac(3, 2);
        assert!(is_projection(&c));
        assert!(!is_flag_supported(&rep, &c));
        // chi is linear in c
        let c1 = diag_indicator(2, &[0]);
        let c2 = diag_indicator(2, &[1]);
        let mut mix = ScalarMatrix::zero(2);
        *mix.at_mut(0, 0) = Scalar::qnum(2, 1);
        *mix.at_mut(1, 1) = Scalar::q_pow_frac(-1, 1);
        let lhs = crate::pairings::chi(&rep, &mix, 0);
        let rhs = &(&Scalar::qnum(2, 1) * &crate::pairings::chi(&rep, &c1, 0))
            + &(&Scalar::q_pow_frac(-1, 1) * &crate::pairings::chi(&rep, &c2, 0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_relation_on_orthonormal_rep() {
        // (M^n_m)^{i*}_j = (M^m_n)^j_i under the conjugate star
        let rep = fundamental_sln(2);
        for m in 0..2 {
            for n in 0..2 {
                let mm = unit_m(&rep, m, n);
                let nm = unit_m(&rep, n, m);
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(conj_star(mm.at(i, j)), *nm.at(j, i));
                    }
                }
                let qn = unit_n(&rep, m, n);
                let qm = unit_n(&rep, n, m);
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(conj_star(qn.at(i, j)), *qm.at(j, i));
                    }
                }
            }
        }
    }
}
