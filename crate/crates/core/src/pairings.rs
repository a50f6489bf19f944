//! Closed-form pairing functions, the staged contraction pipeline that
//! recomputes them independently, and linear-independence certificates
//! for the resulting homology classes.
//!
//! Three routes to the same numbers are kept deliberately separate:
//! the closed forms `chi` / `chi_tilde` (weights and q-integers only), the
//! matrix contraction `eta_lambda` (finite matrix algebra, no
//! coordinate-ring evaluation), and the full chain pipeline
//! `hochschild::eta_apply` on the 2-cycles.

use crate::cartan::Weight;
use crate::coordring::evaluate_rat;
use crate::matrix::{RatMatrix, ScalarMatrix};
use crate::matunits::{unit_m, unit_n};
use crate::repbuild::{antipode_expand, coproduct_iter, Gen, RepRef, UqElement, UqWord};
use crate::scalar::{RationalScalar, Scalar, ScalarError};
use num::rational::BigRational;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum PairingError {
    #[error("weights of the unit indices differ: lambda_m != lambda_n")]
    WeightMismatch,
    #[error("need at least two cycles and two cocycles")]
    TooFewEntries,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn exponent(rs: &crate::cartan::RootSystem, a: &Weight, b: &Weight) -> BigRational {
    rs.bilinear(a, b)
}

fn alpha_minus_two_rho(rep: &RepRef, a: usize) -> Weight {
    let rs = rep.root_system();
    &rs.simple_root(a) - &rs.two_rho()
}

/// `chi_a(P) = sum_i c^i_i q^{(alpha_a - 2 rho, lambda_i)}
/// [ <lambda_i, alpha_a^vee> ]_{q_a}`.
pub fn chi(rep: &RepRef, c: &ScalarMatrix, a: usize) -> Scalar {
    let rs = rep.root_system();
    let shift = alpha_minus_two_rho(rep, a);
    let mut acc = Scalar::zero();
    for i in 0..rep.dim() {
        let ci = c.at(i, i);
        if ci.is_zero() {
            continue;
        }
        let lam = rep.weight(i);
        let term = &Scalar::q_pow(exponent(rs, &shift, lam))
            * &Scalar::qnum(lam.coroot_coord(a), rs.symmetrizer(a));
        acc += &(ci * &term);
    }
    acc
}

/// `chi~_a(Q) = sum_i c^i_i q^{-(alpha_a - 2 rho, lambda_i)}
/// [ <lambda_i, alpha_a^vee> ]_{q_a}`.
pub fn chi_tilde(rep: &RepRef, c: &ScalarMatrix, a: usize) -> Scalar {
    let rs = rep.root_system();
    let shift = alpha_minus_two_rho(rep, a);
    let mut acc = Scalar::zero();
    for i in 0..rep.dim() {
        let ci = c.at(i, i);
        if ci.is_zero() {
            continue;
        }
        let lam = rep.weight(i);
        let term = &Scalar::q_pow(-exponent(rs, &shift, lam))
            * &Scalar::qnum(lam.coroot_coord(a), rs.symmetrizer(a));
        acc += &(ci * &term);
    }
    acc
}

/// Closed form of `chi_a` for the highest-weight diagonal projection of
/// `V(mu)`: only the weight is needed, not the module.
pub fn chi_of_weight(rs: &crate::cartan::RootSystem, mu: &Weight, a: usize) -> Scalar {
    let shift = &rs.simple_root(a) - &rs.two_rho();
    &Scalar::q_pow(rs.bilinear(&shift, mu)) * &Scalar::qnum(mu.coroot_coord(a), rs.symmetrizer(a))
}

pub fn chi_tilde_of_weight(rs: &crate::cartan::RootSystem, mu: &Weight, a: usize) -> Scalar {
    let shift = &rs.simple_root(a) - &rs.two_rho();
    &Scalar::q_pow(-rs.bilinear(&shift, mu)) * &Scalar::qnum(mu.coroot_coord(a), rs.symmetrizer(a))
}

fn two_c_minus_id(c: &ScalarMatrix) -> RatMatrix {
    let n = c.dim();
    let mut m = RatMatrix::zero(n);
    let two = Scalar::from_int(2);
    for i in 0..n {
        for j in 0..n {
            let mut v = &two * c.at(i, j);
            if i == j {
                v -= &Scalar::one();
            }
            *m.at_mut(i, j) = RationalScalar::from_scalar(v);
        }
    }
    m
}

fn pi_weight(rep: &RepRef, lambda: &Weight) -> RatMatrix {
    RatMatrix::diagonal_scalar(&rep.k_weight_diag(lambda, 1))
}

/// `eta^lambda_{X,Y}(P)` through the matrix-coefficient contraction
/// `Tr((2c - 1) pi(S(X_(1))) c pi(X_(2) S(Y_(1))) c pi(Y_(2) K_lambda))`,
/// summed over the coproduct legs. Pure finite matrix algebra; no
/// coordinate-ring evaluation enters, so this is an independent route to
/// the chain pipeline.
pub fn eta_lambda(
    rep: &RepRef,
    c: &ScalarMatrix,
    x: Gen,
    y: Gen,
    lambda: &Weight,
) -> Result<Scalar, PairingError> {
    let front = two_c_minus_id(c);
    let cr = c.to_rat();
    let kl = pi_weight(rep, lambda);
    let mut acc = RationalScalar::zero();
    for (_, xlegs) in coproduct_iter(&UqWord::single(x), 2) {
        let sx1 = rep.pi(&antipode_expand(&xlegs[0]));
        let x2 = rep.pi_word(&xlegs[1]);
        for (_, ylegs) in coproduct_iter(&UqWord::single(y), 2) {
            let sy1 = rep.pi(&antipode_expand(&ylegs[0]));
            let y2 = rep.pi_word(&ylegs[1]);
            let m = front
                .mul(&sx1)
                .mul(&cr)
                .mul(&x2.mul(&sy1))
                .mul(&cr)
                .mul(&y2.mul(&kl));
            acc += &m.trace();
        }
    }
    Ok(acc.into_scalar()?)
}

/// `eta_a(C(P))` via the contraction at `lambda = -2 rho`.
pub fn eta_p_contraction(rep: &RepRef, c: &ScalarMatrix, a: usize) -> Result<Scalar, PairingError> {
    let rank = rep.root_system().rank();
    eta_lambda(rep, c, Gen::F(a), Gen::E(a), &Weight(vec![-2; rank]))
}

/// `eta_a(C(Q))` via the reduction `eta_a(C(Q)) = eta_a^lambda(P)` at
/// `lambda = 2 rho - 2 alpha_a`.
pub fn eta_q_contraction(rep: &RepRef, c: &ScalarMatrix, a: usize) -> Result<Scalar, PairingError> {
    let rs = rep.root_system();
    let lambda = &rs.two_rho() - &rs.simple_root(a).scaled(2);
    eta_lambda(rep, c, Gen::F(a), Gen::E(a), &lambda)
}

/// `Xi^lambda(X (x) X' (x) Y (x) Y') = Tr((2c - 1) pi(X) c pi(X' Y) c
/// pi(Y' K_lambda))` for arbitrary elements.
pub fn xi(
    rep: &RepRef,
    c: &ScalarMatrix,
    lambda: &Weight,
    x: &UqElement,
    xp: &UqElement,
    y: &UqElement,
    yp: &UqElement,
) -> Result<Scalar, PairingError> {
    let front = two_c_minus_id(c);
    let cr = c.to_rat();
    let kl = pi_weight(rep, lambda);
    let m = front
        .mul(&rep.pi(x))
        .mul(&cr)
        .mul(&rep.pi(&xp.mul(y)))
        .mul(&cr)
        .mul(&rep.pi(yp).mul(&kl));
    Ok(m.trace().into_scalar()?)
}

/// `sum_{i,j} c^i_j pi(E_a K_lambda K_a F_a)^j_i - sum_{i,j} c^i_j
/// pi(K_a F_a E_a K_lambda)^j_i`, the collapsed form of the four-term
/// expansion for projection-valid flag-supported coefficients.
pub fn general_comp(
    rep: &RepRef,
    c: &ScalarMatrix,
    a: usize,
    lambda: &Weight,
) -> Result<Scalar, PairingError> {
    let cr = c.to_rat();
    let kl = pi_weight(rep, lambda);
    let e = rep.pi_gen(Gen::E(a));
    let f = rep.pi_gen(Gen::F(a));
    let k = rep.pi_gen(Gen::K(a));
    let first = cr.mul(&e.mul(&kl).mul(&k).mul(&f)).trace();
    let second = cr.mul(&k.mul(&f).mul(&e).mul(&kl)).trace();
    Ok((&first - &second).into_scalar()?)
}

/// Verifies both displayed relations of the `E/F` action comparison
/// between the `N` and `M` units:
/// `eps(E_a |> (N^n_m)^i_j) = -q^{-(alpha_a, lambda_j)} eps(E_a |> (M^n_m)^i_j)`
/// and the `F_a` version with `lambda_i`. Requires `lambda_m = lambda_n`.
pub fn ef_action_relation_check(
    rep: &RepRef,
    m: usize,
    n: usize,
    i: usize,
    j: usize,
    a: usize,
) -> Result<bool, PairingError> {
    if rep.weight(m) != rep.weight(n) {
        return Err(PairingError::WeightMismatch);
    }
    let rs = rep.root_system();
    let alpha = rs.simple_root(a);
    let nm = unit_n(rep, m, n);
    let mm = unit_m(rep, m, n);
    let e_word = UqWord::single(Gen::E(a));
    let f_word = UqWord::single(Gen::F(a));
    // eps(X |> e) = e(X)
    let lhs_e = evaluate_rat(nm.at(i, j), &e_word);
    let factor_j = RationalScalar::from_scalar(Scalar::q_pow(-rs.bilinear(&alpha, rep.weight(j))));
    let rhs_e = -&(&factor_j * &evaluate_rat(mm.at(i, j), &e_word));
    if lhs_e != rhs_e {
        return Ok(false);
    }
    let lhs_f = evaluate_rat(nm.at(i, j), &f_word);
    let factor_i = RationalScalar::from_scalar(Scalar::q_pow(-rs.bilinear(&alpha, rep.weight(i))));
    let rhs_f = -&(&factor_i * &evaluate_rat(mm.at(i, j), &f_word));
    Ok(lhs_f == rhs_f)
}

// ---------------------------------------------------------------------------
// Reports and certificates

/// Pairing data for one (representation, coefficient matrix) pair.
#[derive(Debug, Clone)]
pub struct RootPairing {
    /// 0-based simple-root index
    pub root: usize,
    pub chi: Scalar,
    pub chi_tilde: Scalar,
    pub eta_p_contraction: Scalar,
    pub eta_q_contraction: Scalar,
    pub eta_p_pipeline: Option<Scalar>,
    pub eta_q_pipeline: Option<Scalar>,
    pub agree: bool,
}

#[derive(Debug, Clone)]
pub struct PairingReport {
    pub rep_label: String,
    pub coeff_label: String,
    pub per_root: Vec<RootPairing>,
    /// true iff some chi_a (resp. chi~_a) is nonzero: the class is detected
    pub detected_p: bool,
    pub detected_q: bool,
    pub all_agree: bool,
}

/// Computes the closed forms and the contraction route; optionally the
/// chain pipeline values.
pub fn pairing_report(
    rep: &RepRef,
    c: &ScalarMatrix,
    coeff_label: &str,
    with_pipeline: bool,
) -> Result<PairingReport, PairingError> {
    let rank = rep.root_system().rank();
    let mut per_root = Vec::with_capacity(rank);
    let (cp, cq) = if with_pipeline {
        let p = crate::matunits::build_p(rep, c);
        let q = crate::matunits::build_q(rep, c);
        (
            Some(crate::hochschild::two_cycle_p(&p).expect("invertible weights")),
            Some(crate::hochschild::two_cycle_q(&q).expect("invertible weights")),
        )
    } else {
        (None, None)
    };
    let mut detected_p = false;
    let mut detected_q = false;
    let mut all_agree = true;
    for a in 0..rank {
        let chi_v = chi(rep, c, a);
        let chit_v = chi_tilde(rep, c, a);
        let ep = eta_p_contraction(rep, c, a)?;
        let eq = eta_q_contraction(rep, c, a)?;
        let (pp, qp) = match (&cp, &cq) {
            (Some(cp), Some(cq)) => {
                let spec = crate::hochschild::CocycleSpec::eta(a);
                (
                    Some(crate::hochschild::eta_apply(&spec, cp).expect("pairing is Laurent")),
                    Some(crate::hochschild::eta_apply(&spec, cq).expect("pairing is Laurent")),
                )
            }
            _ => (None, None),
        };
        let mut agree = chi_v == ep && chit_v == eq;
        if let Some(pp) = &pp {
            agree = agree && pp == &chi_v;
        }
        if let Some(qp) = &qp {
            agree = agree && qp == &chit_v;
        }
        detected_p = detected_p || !chi_v.is_zero();
        detected_q = detected_q || !chit_v.is_zero();
        all_agree = all_agree && agree;
        per_root.push(RootPairing {
            root: a,
            chi: chi_v,
            chi_tilde: chit_v,
            eta_p_contraction: ep,
            eta_q_contraction: eq,
            eta_p_pipeline: pp,
            eta_q_pipeline: qp,
            agree,
        });
    }
    Ok(PairingReport {
        rep_label: rep.label().to_string(),
        coeff_label: coeff_label.to_string(),
        per_root,
        detected_p,
        detected_q,
        all_agree,
    })
}

/// One pairwise verdict of the independence certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVerdict {
    pub first: usize,
    pub second: usize,
    pub independent: bool,
    /// 1: a zero/nonzero split, 2: a cross-ratio inequality
    pub criterion: Option<u8>,
    /// cocycle indices witnessing the verdict (phi, psi); equal for
    /// criterion 1
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct IndependenceCertificate {
    pub cycle_ids: Vec<String>,
    pub cocycle_ids: Vec<String>,
    /// pairing matrix, cycles x cocycles
    pub matrix: Vec<Vec<Scalar>>,
    pub verdicts: Vec<PairVerdict>,
    pub all_pairwise_independent: bool,
}

/// Applies the two independence criteria to every pair of cycles given
/// their exact pairings against the cocycles. A pair is certified only if
/// both classes are detected (some cocycle pairs nonzero) and either a
/// zero/nonzero split or an exact cross-ratio inequality holds.
pub fn independence_certificate(
    cycle_ids: Vec<String>,
    cocycle_ids: Vec<String>,
    matrix: Vec<Vec<Scalar>>,
) -> Result<IndependenceCertificate, PairingError> {
    let nc = cycle_ids.len();
    let nphi = cocycle_ids.len();
    if nc < 2 || nphi < 2 {
        return Err(PairingError::TooFewEntries);
    }
    assert!(matrix.len() == nc && matrix.iter().all(|r| r.len() == nphi));
    let mut verdicts = Vec::new();
    let mut all = true;
    for i in 0..nc {
        for j in (i + 1)..nc {
            let v = judge_pair(&matrix, i, j);
            all = all && v.independent;
            verdicts.push(v);
        }
    }
    Ok(IndependenceCertificate {
        cycle_ids,
        cocycle_ids,
        matrix,
        verdicts,
        all_pairwise_independent: all,
    })
}

fn judge_pair(m: &[Vec<Scalar>], i: usize, j: usize) -> PairVerdict {
    let nphi = m[i].len();
    let detected = |r: usize| (0..nphi).any(|a| !m[r][a].is_zero());
    if !detected(i) || !detected(j) {
        return PairVerdict { first: i, second: j, independent: false, criterion: None, witness: None };
    }
    // criterion 1: phi(C) != 0 and phi(C') = 0, either way around
    for a in 0..nphi {
        if !m[i][a].is_zero() && m[j][a].is_zero() {
            return PairVerdict {
                first: i,
                second: j,
                independent: true,
                criterion: Some(1),
                witness: Some((a, a)),
            };
        }
        if !m[j][a].is_zero() && m[i][a].is_zero() {
            return PairVerdict {
                first: i,
                second: j,
                independent: true,
                criterion: Some(1),
                witness: Some((a, a)),
            };
        }
    }
    // criterion 2: phi(C) != 0 and psi(C') phi(C) != phi(C') psi(C)
    for phi in 0..nphi {
        if m[i][phi].is_zero() {
            continue;
        }
        for psi in 0..nphi {
            if psi == phi {
                continue;
            }
            let lhs = &m[j][psi] * &m[i][phi];
            let rhs = &m[j][phi] * &m[i][psi];
            if lhs != rhs {
                return PairVerdict {
                    first: i,
                    second: j,
                    independent: true,
                    criterion: Some(2),
                    witness: Some((phi, psi)),
                };
            }
        }
    }
    PairVerdict { first: i, second: j, independent: false, criterion: None, witness: None }
}

/// Exact ratio of two pairings, `m[i][phi] / m[i][psi]`.
pub fn pairing_ratio(
    cert: &IndependenceCertificate,
    cycle: usize,
    phi: usize,
    psi: usize,
) -> Result<RationalScalar, ScalarError> {
    RationalScalar::new(cert.matrix[cycle][phi].clone(), cert.matrix[cycle][psi].clone())
}

/// The ratio family of the rank-2 construction: for `mu_n = n omega_1 +
/// omega_2`, the closed forms give `a_n = q^{n d_1 - d_2} [n]_{q_1}` and
/// `b_n = q^{-(n d_1 - d_2)} [n]_{q_1}`.
pub fn expected_family_ratios(rs: &crate::cartan::RootSystem, n: i64) -> (Scalar, Scalar) {
    let d1 = rs.symmetrizer(0);
    let d2 = rs.symmetrizer(1);
    let a = &Scalar::q_pow(BigRational::from(BigInt::from(n * d1 - d2))) * &Scalar::qnum(n, d1);
    let b = &Scalar::q_pow(BigRational::from(BigInt::from(-(n * d1 - d2)))) * &Scalar::qnum(n, d1);
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;
    use crate::matunits::{diag_indicator, weight_indicator};
    use crate::repbuild::{build_irrep, fundamental_sln};
    use std::sync::Arc;

    fn a1() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A1").unwrap())
    }

    fn a2() -> Arc<RootSystem> {
        Arc::new(RootSystem::parse("A2").unwrap())
    }

    #[test]
    fn chi_on_sl2_diagonal_units() {
        // chi(P_k) = [k]_q: the exponent (alpha - 2rho, lambda_k) vanishes
        for n in 1..=4i64 {
            let rep = build_irrep(&a1(), &Weight(vec![n])).unwrap();
            for idx in 0..rep.dim() {
                let k = rep.weight(idx).0[0];
                let c = diag_indicator(rep.dim(), &[idx]);
                assert_eq!(chi(&rep, &c, 0), Scalar::qnum(k, 1), "n={n} k={k}");
                assert_eq!(chi_tilde(&rep, &c, 0), Scalar::qnum(k, 1));
            }
        }
    }

    #[test]
    fn chi_zero_on_zero_weight() {
        let rep = build_irrep(&a2(), &Weight(vec![1, 1])).unwrap();
        let c = weight_indicator(&rep, &Weight(vec![0, 0]));
        for a in 0..2 {
            assert_eq!(chi(&rep, &c, a), Scalar::zero());
            assert_eq!(chi_tilde(&rep, &c, a), Scalar::zero());
        }
    }

    #[test]
    fn chi_of_identity_on_sl2_fundamental_vanishes() {
        // weights pair off as +/- lambda with equal coefficients
        let rep = fundamental_sln(2);
        let c = crate::matrix::ScalarMatrix::identity(2);
        assert_eq!(chi(&rep, &c, 0), Scalar::zero());
    }

    #[test]
    fn sl3_adjoint_table() {
        let rep = build_irrep(&a2(), &Weight(vec![1, 1])).unwrap();
        let rs = rep.root_system().clone();
        let p1 = weight_indicator(&rep, &rs.simple_root(0));
        let p2 = weight_indicator(&rep, &rs.simple_root(1));
        let prho = weight_indicator(&rep, &rs.rho());
        let two = Scalar::qnum(2, 1);
        let qm3 = Scalar::q_pow_frac(-3, 1);
        assert_eq!(chi(&rep, &p1, 0), two);
        assert_eq!(chi(&rep, &p1, 1), -&qm3);
        assert_eq!(chi(&rep, &p2, 0), -&qm3);
        assert_eq!(chi(&rep, &p2, 1), two);
        assert_eq!(chi(&rep, &prho, 0), qm3.clone());
        assert_eq!(chi(&rep, &prho, 1), qm3);
    }

    #[test]
    fn contraction_matches_closed_form() {
        // eta_lambda(-2rho) = chi and eta_lambda(2rho - 2 alpha_a) = chi~
        for (rs, hw) in [(a1(), vec![2]), (a2(), vec![1, 1])] {
            let rep = build_irrep(&rs, &Weight(hw)).unwrap();
            for idx in [0usize, rep.dim() - 1] {
                let c = diag_indicator(rep.dim(), &[idx]);
                for a in 0..rep.root_system().rank() {
                    assert_eq!(eta_p_contraction(&rep, &c, a).unwrap(), chi(&rep, &c, a));
                    assert_eq!(eta_q_contraction(&rep, &c, a).unwrap(), chi_tilde(&rep, &c, a));
                }
            }
        }
    }

    #[test]
    fn general_comp_matches_contraction() {
        let rep = build_irrep(&a2(), &Weight(vec![1, 1])).unwrap();
        let rs = rep.root_system().clone();
        let c = weight_indicator(&rep, &rs.simple_root(0));
        for a in 0..2 {
            for lambda in [Weight(vec![-2, -2]), Weight(vec![0, 0]), Weight(vec![1, -1])] {
                let via_contraction =
                    eta_lambda(&rep, &c, Gen::F(a), Gen::E(a), &lambda).unwrap();
                let via_collapse = general_comp(&rep, &c, a, &lambda).unwrap();
                assert_eq!(via_contraction, via_collapse, "a={a} lambda={lambda}");
            }
        }
    }

    #[test]
    fn xi_stage_identities() {
        // Xi(K_a (x) F_a (x) 1 (x) E_a) = Xi(K_a F_a (x) 1 (x) E_a K_a^-1 (x) K_a)
        // and the collapsed third term
        let rep = build_irrep(&a1(), &Weight(vec![2])).unwrap();
        let c = diag_indicator(3, &[0]);
        let lambda = Weight(vec![-2]);
        let k = UqElement::from_gen(Gen::K(0));
        let kinv = UqElement::from_gen(Gen::KInv(0));
        let e = UqElement::from_gen(Gen::E(0));
        let f = UqElement::from_gen(Gen::F(0));
        let one = UqElement::one();
        let kf = k.mul(&f);
        let ekinv = e.mul(&kinv);
        let t4 = xi(&rep, &c, &lambda, &k, &f, &one, &e).unwrap();
        let t1 = xi(&rep, &c, &lambda, &kf, &one, &ekinv, &k).unwrap();
        assert_eq!(t4, t1);
        let t3 = xi(&rep, &c, &lambda, &k, &f, &ekinv, &k).unwrap();
        let collapsed = rep
            .pi(&k.mul(&f).mul(&e))
            .mul(&pi_weight(&rep, &lambda))
            .mul(&c.to_rat())
            .trace();
        assert_eq!(t3, collapsed.into_scalar().unwrap());
        // the signed four-term combination reproduces eta_lambda
        let t2 = xi(&rep, &c, &lambda, &kf, &one, &one, &e).unwrap();
        let combo = &(&t1 - &t2) + &(&t4 - &t3);
        assert_eq!(combo, eta_lambda(&rep, &c, Gen::F(0), Gen::E(0), &lambda).unwrap());
    }

    #[test]
    fn ef_action_relation() {
        let rep = fundamental_sln(2);
        for i in 0..2 {
            for j in 0..2 {
                assert!(ef_action_relation_check(&rep, 0, 0, i, j, 0).unwrap());
            }
        }
        let rep3 = fundamental_sln(3);
        for i in 0..3 {
            for j in 0..3 {
                for a in 0..2 {
                    assert!(ef_action_relation_check(&rep3, 1, 1, i, j, a).unwrap());
                }
            }
        }
        assert_eq!(
            ef_action_relation_check(&rep, 0, 1, 0, 0, 0),
            Err(PairingError::WeightMismatch)
        );
    }

    #[test]
    fn report_three_paths_agree() {
        let rep = build_irrep(&a1(), &Weight(vec![2])).unwrap();
        let c = diag_indicator(3, &[0]);
        let report = pairing_report(&rep, &c, "e[1,1]", true).unwrap();
        assert!(report.all_agree);
        assert!(report.detected_p);
        assert_eq!(report.per_root[0].chi, Scalar::qnum(2, 1));
    }

    #[test]
    fn certificate_sl3_adjoint() {
        let rep = build_irrep(&a2(), &Weight(vec![1, 1])).unwrap();
        let rs = rep.root_system().clone();
        let mut matrix = Vec::new();
        for w in [rs.simple_root(0), rs.simple_root(1), rs.rho()] {
            let c = weight_indicator(&rep, &w);
            matrix.push(vec![chi(&rep, &c, 0), chi(&rep, &c, 1)]);
        }
        let cert = independence_certificate(
            vec!["P_alpha1".into(), "P_alpha2".into(), "P_rho".into()],
            vec!["eta_1".into(), "eta_2".into()],
            matrix,
        )
        .unwrap();
        assert!(cert.all_pairwise_independent);
        // ratios chi_1 / chi_2: -q^3 [2]_q, -(q^3 [2]_q)^{-1}, 1
        let r0 = pairing_ratio(&cert, 0, 0, 1).unwrap();
        let q3two = RationalScalar::from_scalar(&Scalar::q_pow_frac(3, 1) * &Scalar::qnum(2, 1));
        assert_eq!(r0, -&q3two);
        let r1 = pairing_ratio(&cert, 1, 0, 1).unwrap();
        assert_eq!(r1, (-&q3two).inv().unwrap());
        let r2 = pairing_ratio(&cert, 2, 0, 1).unwrap();
        assert!(r2.is_one());
    }

    #[test]
    fn certificate_rejects_copies_and_small_input() {
        let row = vec![Scalar::qnum(2, 1), Scalar::one()];
        let cert = independence_certificate(
            vec!["C".into(), "C'".into()],
            vec!["eta_1".into(), "eta_2".into()],
            vec![row.clone(), row],
        )
        .unwrap();
        assert!(!cert.all_pairwise_independent);
        assert_eq!(cert.verdicts[0].criterion, None);
        assert!(matches!(
            independence_certificate(vec!["C".into()], vec!["a".into(), "b".into()], vec![vec![]]),
            Err(PairingError::TooFewEntries)
        ));
    }

    #[test]
    fn family_ratios_closed_form() {
        for name in ["A2", "B2", "G2"] {
            let rs = Arc::new(RootSystem::parse(name).unwrap());
            for n in 1..=8i64 {
                let mu = Weight(vec![n, 1]);
                let c1 = chi_of_weight(&rs, &mu, 0);
                let c2 = chi_of_weight(&rs, &mu, 1);
                let ratio = c1.div_exact(&c2).unwrap();
                let (a_n, b_n) = expected_family_ratios(&rs, n);
                assert_eq!(ratio, a_n, "{name} n={n}");
                let t1 = chi_tilde_of_weight(&rs, &mu, 0);
                let t2 = chi_tilde_of_weight(&rs, &mu, 1);
                assert_eq!(t1.div_exact(&t2).unwrap(), b_n, "{name} n={n}");
            }
        }
    }
}
