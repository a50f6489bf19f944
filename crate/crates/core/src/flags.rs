//! Quantum flag manifold membership, Levi invariance of tensor vectors,
//! equivariance and adjoint-invariance of the matrix units, and the
//! Grassmannian projection builder.
//!
//! Flag membership is an exact integer check: an element lies in the
//! left (resp. right) flag subalgebra iff every word has zero total left
//! (resp. right) Cartan weight.

use crate::coordring::{act_left_rat, act_right_rat, CoordElement, Decision, EqConfig, Oracle};
use crate::matrix::{RatMatrix, ScalarMatrix};
use crate::matunits::{build_p, build_q, CoordMatrix};
use crate::repbuild::{
    antipode_expand, antipode_inv_expand, coproduct_iter, fundamental_sln, Gen, RepRef, UqElement,
    UqWord,
};
use crate::scalar::{RationalScalar, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum FlagError {
    #[error("grassmannian parameters out of range: r={r}, n={n}")]
    GrassmannianRange { r: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Membership in the flag subalgebra: zero total left weight for
/// `C_q[G/T]` (side Left), zero total right weight for `C_q[T\G]`.
pub fn in_flag(e: &CoordElement, side: Side) -> bool {
    e.terms().all(|(w, _)| {
        let total = match side {
            Side::Left => w.left_weight(),
            Side::Right => w.right_weight(),
        };
        total.map_or(true, |t| t.is_zero())
    })
}

/// Subset of simple-root indices defining a quantized Levi factor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LeviSubset(pub Vec<usize>);

impl LeviSubset {
    pub fn all_except(rank: usize, removed: usize) -> Self {
        LeviSubset((0..rank).filter(|&i| i != removed).collect())
    }
}

/// `w = sum c^m_n v_m (x) f^n` in `V (x) V*`, with the dual action defined
/// through the antipode: `(X |> f)(v) = f(S(X) |> v)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    rep: RepRef,
    coeffs: RatMatrix,
}

impl TensorVector {
    pub fn new(rep: &RepRef, coeffs: &ScalarMatrix) -> Self {
        assert_eq!(coeffs.dim(), rep.dim());
        TensorVector { rep: rep.clone(), coeffs: coeffs.to_rat() }
    }

    pub fn rep(&self) -> &RepRef {
        &self.rep
    }

    pub fn coeffs(&self) -> &RatMatrix {
        &self.coeffs
    }

    /// `X |> w`: coefficient matrix goes to `sum pi(X_(1)) c pi(S(X_(2)))`.
    pub fn act_left(&self, g: Gen) -> TensorVector {
        let mut acc = RatMatrix::zero(self.rep.dim());
        for (_, legs) in coproduct_iter(&UqWord::single(g), 2) {
            let left = self.rep.pi_word(&legs[0]);
            let right = self.rep.pi(&antipode_expand(&legs[1]));
            acc = acc.add(&left.mul(&self.coeffs).mul(&right));
        }
        TensorVector { rep: self.rep.clone(), coeffs: acc }
    }

    /// `w <| X`: coefficient matrix goes to `sum pi(S(X_(1))) c pi(X_(2))`.
    pub fn act_right(&self, g: Gen) -> TensorVector {
        let mut acc = RatMatrix::zero(self.rep.dim());
        for (_, legs) in coproduct_iter(&UqWord::single(g), 2) {
            let left = self.rep.pi(&antipode_expand(&legs[0]));
            let right = self.rep.pi_word(&legs[1]);
            acc = acc.add(&left.mul(&self.coeffs).mul(&right));
        }
        TensorVector { rep: self.rep.clone(), coeffs: acc }
    }
}

fn invariant_under(w: &TensorVector, g: Gen, side: Side) -> bool {
    let acted = match side {
        Side::Left => w.act_left(g),
        Side::Right => w.act_right(g),
    };
    match g {
        Gen::E(_) | Gen::F(_) => acted.coeffs.is_zero(),
        Gen::K(_) | Gen::KInv(_) => acted.coeffs == w.coeffs,
    }
}

/// `U_q(l_S)`-invariance of a tensor vector under the left action: all
/// Cartan generators plus `E_k, F_k` for `k` in the subset.
pub fn levi_invariant(w: &TensorVector, s: &LeviSubset) -> bool {
    levi_invariant_side(w, s, Side::Left)
}

pub fn levi_invariant_side(w: &TensorVector, s: &LeviSubset, side: Side) -> bool {
    let rank = w.rep().root_system().rank();
    for i in 0..rank {
        if !invariant_under(w, Gen::K(i), side) {
            return false;
        }
    }
    for &k in &s.0 {
        if !invariant_under(w, Gen::E(k), side) || !invariant_under(w, Gen::F(k), side) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Word and element actions on coordinate-ring elements

/// `w |> e` for a free word: rightmost generator acts first.
pub fn act_left_word_rat(w: &UqWord, e: &CoordElement) -> CoordElement {
    let mut acc = e.clone();
    for g in w.0.iter().rev() {
        acc = act_left_rat(*g, &acc);
    }
    acc
}

/// `e <| w` for a free word: leftmost generator acts first.
pub fn act_right_word_rat(w: &UqWord, e: &CoordElement) -> CoordElement {
    let mut acc = e.clone();
    for g in w.0.iter() {
        acc = act_right_rat(*g, &acc);
    }
    acc
}

pub fn act_left_element_rat(x: &UqElement, e: &CoordElement) -> CoordElement {
    let mut acc = CoordElement::zero();
    for (w, c) in x.terms() {
        acc = acc.add(&act_left_word_rat(w, e).scale(c));
    }
    acc
}

pub fn act_right_element_rat(x: &UqElement, e: &CoordElement) -> CoordElement {
    let mut acc = CoordElement::zero();
    for (w, c) in x.terms() {
        acc = acc.add(&act_right_word_rat(w, e).scale(c));
    }
    acc
}

fn coord_matrix_map(m: &CoordMatrix, f: impl Fn(&CoordElement) -> CoordElement) -> CoordMatrix {
    m.map(f)
}

fn rat_times_coord(a: &RatMatrix, m: &CoordMatrix) -> CoordMatrix {
    let n = m.dim();
    let mut out = CoordMatrix::zero(m.rep());
    for i in 0..n {
        for k in 0..n {
            let c = a.at(i, k);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if m.at(k, j).is_zero() {
                    continue;
                }
                let t = m.at(k, j).scale_rat(c);
                *out.at_mut(i, j) = out.at(i, j).add(&t);
            }
        }
    }
    out
}

fn coord_times_rat(m: &CoordMatrix, a: &RatMatrix) -> CoordMatrix {
    let n = m.dim();
    let mut out = CoordMatrix::zero(m.rep());
    for i in 0..n {
        for k in 0..n {
            if m.at(i, k).is_zero() {
                continue;
            }
            for j in 0..n {
                let c = a.at(k, j);
                if c.is_zero() {
                    continue;
                }
                let t = m.at(i, k).scale_rat(c);
                *out.at_mut(i, j) = out.at(i, j).add(&t);
            }
        }
    }
    out
}

/// `rho°(X) = pi(K_2rho S^-1(X) K_2rho^-1)`, the anti-homomorphism used
/// for right-invariance of the `N` units.
pub fn rho_op_left(rep: &RepRef, w: &UqWord) -> RatMatrix {
    let two_rho = rep.root_system().two_rho();
    let kp = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, 1));
    let km = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, -1));
    kp.mul(&rep.pi(&antipode_inv_expand(w))).mul(&km)
}

/// `rho°(X) = pi(K_2rho^-1 S(X) K_2rho)`, used for left-invariance of the
/// `M` units.
pub fn rho_op_right(rep: &RepRef, w: &UqWord) -> RatMatrix {
    let two_rho = rep.root_system().two_rho();
    let kp = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, 1));
    let km = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, -1));
    km.mul(&rep.pi(&antipode_expand(w))).mul(&kp)
}

/// Adjoint invariance of a matrix over the coordinate ring.
///
/// Side Left checks `ad°_L(X)(M) = rho°(X_(1)) (M <| X_(2)) rho°(S^-1(X_(3)))
/// = eps(X) M` (right invariance, satisfied by the `N` units); side Right
/// checks `ad°_R(X)(M) = rho°(S^-1(X_(1))) (S^-2(X_(2)) |> M) rho°(X_(3))
/// = eps(X) M` (left invariance, satisfied by the `M` units).
pub fn ad_invariance(m: &CoordMatrix, side: Side, cfg: &EqConfig) -> Decision {
    let rep = m.rep().clone();
    let rank = rep.root_system().rank();
    let mut oracle = Oracle::Exact;
    for a in 0..rank {
        for g in [Gen::E(a), Gen::F(a), Gen::K(a), Gen::KInv(a)] {
            let mut acc = CoordMatrix::zero(&rep);
            for (_, legs) in coproduct_iter(&UqWord::single(g), 3) {
                let term = match side {
                    Side::Left => {
                        let l = rho_op_left(&rep, &legs[0]);
                        let mid = coord_matrix_map(m, |e| act_right_word_rat(&legs[1], e));
                        // rho°(S^-1(X_(3))): expand S^-1 first, then apply rho°
                        let sinv = antipode_inv_expand(&legs[2]);
                        let mut r = RatMatrix::zero(rep.dim());
                        for (w, c) in sinv.terms() {
                            r = r.add(
                                &rho_op_left(&rep, w).scale(&RationalScalar::from_scalar(c.clone())),
                            );
                        }
                        rat_times_coord(&l, &coord_times_rat(&mid, &r))
                    }
                    Side::Right => {
                        let sinv = antipode_inv_expand(&legs[0]);
                        let mut l = RatMatrix::zero(rep.dim());
                        for (w, c) in sinv.terms() {
                            l = l.add(
                                &rho_op_right(&rep, w).scale(&RationalScalar::from_scalar(c.clone())),
                            );
                        }
                        // S^-2(X_(2)) |> M
                        let ssquared: Vec<(UqWord, Scalar)> = {
                            let once = antipode_inv_expand(&legs[1]);
                            let mut acc2 = UqElement::zero();
                            for (w, c) in once.terms() {
                                for (w2, c2) in antipode_inv_expand(w).terms() {
                                    acc2.add_term(w2.clone(), c2 * c);
                                }
                            }
                            acc2.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
                        };
                        let mut mid = CoordMatrix::zero(&rep);
                        for (w, c) in &ssquared {
                            let acted = coord_matrix_map(m, |e| act_left_word_rat(w, e).scale(c));
                            mid = mid.add(&acted);
                        }
                        let r = rho_op_right(&rep, &legs[2]);
                        rat_times_coord(&l, &coord_times_rat(&mid, &r))
                    }
                };
                acc = acc.add(&term);
            }
            let expect = m.scale(&UqWord::single(g).counit());
            let d = acc.equal(&expect, cfg);
            if let Oracle::Bounded(_) = d.oracle {
                oracle = d.oracle;
            }
            if !d.equal {
                return Decision { equal: false, oracle: d.oracle };
            }
        }
    }
    Decision { equal: true, oracle }
}

/// Grassmannian data: `P = sum_{m<=r} M^m_m`, `Q = sum_{m<=r} N^m_m` on
/// the fundamental representation of `U_q(sl(N))`, with the coefficient
/// matrix and the defining invariant vector.
pub struct Grassmannian {
    pub rep: RepRef,
    pub p: CoordMatrix,
    pub q: CoordMatrix,
    pub c: ScalarMatrix,
    pub r: usize,
    pub n: usize,
}

pub fn grassmannian_projection(r: usize, n: usize) -> Result<Grassmannian, FlagError> {
    if r < 1 || r >= n {
        return Err(FlagError::GrassmannianRange { r, n });
    }
    let rep = fundamental_sln(n);
    let c = crate::matunits::diag_indicator(n, &(0..r).collect::<Vec<_>>());
    let p = build_p(&rep, &c);
    let q = build_q(&rep, &c);
    Ok(Grassmannian { rep, p, q, c, r, n })
}

impl Grassmannian {
    /// The Levi subset for `Gr(r, N)`: all simple roots except `alpha_r`.
    pub fn levi_subset(&self) -> LeviSubset {
        LeviSubset::all_except(self.n - 1, self.r - 1)
    }

    pub fn invariant_vector(&self) -> TensorVector {
        TensorVector::new(&self.rep, &self.c)
    }

    /// Expected `Tr(pi(K_2rho)^-1 P) = q^{r-N} [r]_q`.
    pub fn expected_trace(&self) -> Scalar {
        &Scalar::q_pow_frac(self.r as i64 - self.n as i64, 1) * &Scalar::qnum(self.r as i64, 1)
    }
}
