//! Twisted Hochschild chains: the boundary operator with a Cartan twist,
//! normalized-complex reduction, the 2-cycle built from a projection and a
//! weighting matrix, the cocycles `eta_{X,Y}`, and a semantic equality
//! test for chains.
//!
//! A chain stores exact coefficients and a tuple of coordinate-ring
//! elements per term; simplification merges structurally identical tuples.
//! Multiplication of slots is word concatenation, and the twist acts
//! diagonally per word, so `b_sigma . b_sigma = 0` already holds at the
//! structural level.

use crate::cartan::Weight;
use crate::coordring::{
    decide_equal, evaluate_rat, sigma_twist, CoordElement, CoordError, Decision, EqConfig, Oracle,
    TestFamily,
};
use crate::flags::{in_flag, Side};
use crate::matunits::CoordMatrix;
use crate::repbuild::{Gen, UqWord};
use crate::scalar::{RationalScalar, Scalar, ScalarError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum ChainError {
    #[error("chain degree {0} not supported (max 3)")]
    DegreeTooLarge(usize),
    #[error("boundary of a degree-0 chain")]
    DegreeZeroBoundary,
    #[error("expected a chain of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("weighting matrix is not invertible (zero diagonal entry)")]
    NonInvertibleWeight,
    #[error("element outside the flag subalgebra in slot {0}")]
    NotInFlag(usize),
    #[error(transparent)]
    Coord(#[from] CoordError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Cartan twist `sigma_{lambda, lambda'}`; the modular twist `theta` is
/// `lambda = lambda' = 2 rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSpec {
    pub lambda: Weight,
    pub lambda_p: Weight,
}

impl TwistSpec {
    pub fn untwisted(rank: usize) -> Self {
        TwistSpec { lambda: Weight::zero(rank), lambda_p: Weight::zero(rank) }
    }

    pub fn theta(rank: usize) -> Self {
        TwistSpec { lambda: Weight(vec![2; rank]), lambda_p: Weight(vec![2; rank]) }
    }

    pub fn apply(&self, e: &CoordElement) -> CoordElement {
        sigma_twist(&self.lambda, &self.lambda_p, e)
    }
}

/// `eta_{X,Y}(a0 (x) a1 (x) a2) = eps(a0) eps(X |> a1) eps(Y |> a2)`;
/// the shorthand `eta_a` is `(X, Y) = (F_a, E_a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleSpec {
    pub x: Gen,
    pub y: Gen,
}

impl CocycleSpec {
    pub fn eta(a: usize) -> Self {
        CocycleSpec { x: Gen::F(a), y: Gen::E(a) }
    }

    pub fn new(x: Gen, y: Gen) -> Self {
        assert!(
            matches!(x, Gen::E(_) | Gen::F(_)) && matches!(y, Gen::E(_) | Gen::F(_)),
            "cocycle generators must be E or F"
        );
        CocycleSpec { x, y }
    }
}

/// Element of `A^{(n+1)}` as coefficient-weighted tuples of elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Vec<CoordElement>, Scalar>,
}

impl Chain {
    pub fn new(degree: usize) -> Result<Self, ChainError> {
        if degree > 3 {
            return Err(ChainError::DegreeTooLarge(degree));
        }
        Ok(Chain { degree, terms: BTreeMap::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CoordElement>, &Scalar)> {
        self.terms.iter()
    }

    /// Adds a term, merging identical tuples and dropping zero slots.
    pub fn add_term(&mut self, coeff: Scalar, tuple: Vec<CoordElement>) {
        assert_eq!(tuple.len(), self.degree + 1, "tuple arity must match degree");
        if coeff.is_zero() || tuple.iter().any(|e| e.is_zero()) {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Chain) -> Chain {
        assert_eq!(self.degree, rhs.degree);
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(c.clone(), t.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Chain) -> Chain {
        assert_eq!(self.degree, rhs.degree);
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(-c, t.clone());
        }
        out
    }
}

impl std::fmt::Debug for Chain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Chain(degree {}, {} terms)", self.degree, self.terms.len())
    }
}

/// Twisted Hochschild boundary: the alternating face sum, with the last
/// face twisting the wrap-around factor, `b_sigma(a0 (x) ... (x) an) =
/// a0 a1 (x) ... + sum (-1)^i ... + (-1)^n sigma(an) a0 (x) ...`.
pub fn boundary(ch: &Chain, twist: &TwistSpec) -> Result<Chain, ChainError> {
    let n = ch.degree();
    if n == 0 {
        return Err(ChainError::DegreeZeroBoundary);
    }
    let mut out = Chain::new(n - 1)?;
    for (tuple, coeff) in ch.terms() {
        for i in 0..n {
            let mut t = Vec::with_capacity(n);
            t.extend(tuple[..i].iter().cloned());
            t.push(tuple[i].mul(&tuple[i + 1]));
            t.extend(tuple[i + 2..].iter().cloned());
            let c = if i % 2 == 0 { coeff.clone() } else { -coeff };
            out.add_term(c, t);
        }
        // last face: sigma(a_n) multiplies a_0 from the left
        let mut t = Vec::with_capacity(n);
        t.push(twist.apply(&tuple[n]).mul(&tuple[0]));
        t.extend(tuple[1..n].iter().cloned());
        let c = if n % 2 == 0 { coeff.clone() } else { -coeff };
        out.add_term(c, t);
    }
    Ok(out)
}

/// Reduction to the normalized complex: deletes every term in which some
/// tensor slot >= 1 is a scalar multiple of the unit. The literal form
/// `c * 1` is detected syntactically; otherwise the slot is compared with
/// `eps(slot) * 1` by the equality oracle.
pub fn normalize(ch: &Chain, cfg: &EqConfig) -> Chain {
    let mut out = Chain { degree: ch.degree, terms: BTreeMap::new() };
    'term: for (tuple, coeff) in ch.terms() {
        for slot in tuple.iter().skip(1) {
            if slot.as_scalar_multiple_of_one().is_some() {
                continue 'term;
            }
            let target = CoordElement::scalar(Scalar::zero())
                .add(&CoordElement::one().scale_rat(&slot.counit_rat()));
            if decide_equal(slot, &target, cfg).equal {
                continue 'term;
            }
        }
        out.add_term(coeff.clone(), tuple.clone());
    }
    out
}

/// `sum_{i,k,l} V^i_i (2 M^i_k - delta^i_k) (x) M^k_l (x) M^l_i` for a
/// diagonal weighting `V`.
pub fn two_cycle(m: &CoordMatrix, v: &[Scalar]) -> Result<Chain, ChainError> {
    let d = m.dim();
    if v.len() != d || v.iter().any(|c| c.is_zero()) {
        return Err(ChainError::NonInvertibleWeight);
    }
    let two = Scalar::from_int(2);
    let mut out = Chain::new(2)?;
    for i in 0..d {
        for k in 0..d {
            let mut first = m.at(i, k).scale(&two);
            if i == k {
                first = first.sub(&CoordElement::one());
            }
            if first.is_zero() {
                continue;
            }
            for l in 0..d {
                let t = vec![first.clone(), m.at(k, l).clone(), m.at(l, i).clone()];
                out.add_term(v[i].clone(), t);
            }
        }
    }
    Ok(out)
}

/// `C(P) = Tr(pi(K_2rho)^-1 (2P - Id) (x) P (x) P)`.
pub fn two_cycle_p(p: &CoordMatrix) -> Result<Chain, ChainError> {
    let rep = p.rep();
    let v = rep.k_weight_diag(&rep.root_system().two_rho(), -1);
    two_cycle(p, &v)
}

/// `C(Q) = Tr(pi(K_2rho) (2Q - Id) (x) Q (x) Q)`.
pub fn two_cycle_q(q: &CoordMatrix) -> Result<Chain, ChainError> {
    let rep = q.rep();
    let v = rep.k_weight_diag(&rep.root_system().two_rho(), 1);
    two_cycle(q, &v)
}

/// The degree-1 chain `1 (x) e`.
pub fn one_tensor(e: &CoordElement) -> Chain {
    let mut ch = Chain::new(1).unwrap();
    ch.add_term(Scalar::one(), vec![CoordElement::one(), e.clone()]);
    ch
}

/// `eta_{X,Y}` applied to a degree-2 chain:
/// `sum coeff * eps(a0) * eps(X |> a1) * eps(Y |> a2)`, using
/// `eps(X |> a) = a(X)`.
pub fn eta_apply(spec: &CocycleSpec, ch: &Chain) -> Result<Scalar, ChainError> {
    if ch.degree() != 2 {
        return Err(ChainError::WrongDegree { expected: 2, got: ch.degree() });
    }
    let wx = UqWord::single(spec.x);
    let wy = UqWord::single(spec.y);
    let mut acc = RationalScalar::zero();
    for (tuple, coeff) in ch.terms() {
        let e0 = tuple[0].counit_rat();
        if e0.is_zero() {
            continue;
        }
        let v1 = evaluate_rat(&tuple[1], &wx);
        if v1.is_zero() {
            continue;
        }
        let v2 = evaluate_rat(&tuple[2], &wy);
        let prod = &(&e0 * &v1) * &(&v2 * &RationalScalar::from_scalar(coeff.clone()));
        acc += &prod;
    }
    acc.into_scalar().map_err(ChainError::Scalar)
}

/// Evaluates the twisted coboundary of `eta_{X,Y}` on `a0 (x) .. (x) a3`,
/// all in the flag subalgebra of the given side, and reports whether it
/// vanishes. The four faces are
/// `eps(a0 a1) a2(X) a3(Y) - eps(a0) (a1 a2)(X) a3(Y)
///  + eps(a0) a1(X) (a2 a3)(Y) - eps(sigma(a3) a0) a1(X) a2(Y)`.
pub fn cocycle_check(
    spec: &CocycleSpec,
    twist: &TwistSpec,
    elems: &[CoordElement; 4],
    side: Side,
) -> Result<bool, ChainError> {
    for (i, e) in elems.iter().enumerate() {
        if !in_flag(e, side) {
            return Err(ChainError::NotInFlag(i));
        }
    }
    let wx = UqWord::single(spec.x);
    let wy = UqWord::single(spec.y);
    let [a0, a1, a2, a3] = elems;
    let f1 = &(&a0.mul(a1).counit_rat() * &evaluate_rat(a2, &wx)) * &evaluate_rat(a3, &wy);
    let f2 = &(&a0.counit_rat() * &evaluate_rat(&a1.mul(a2), &wx)) * &evaluate_rat(a3, &wy);
    let f3 = &(&a0.counit_rat() * &evaluate_rat(a1, &wx)) * &evaluate_rat(&a2.mul(a3), &wy);
    let f4 = &(&twist.apply(a3).mul(a0).counit_rat() * &evaluate_rat(a1, &wx))
        * &evaluate_rat(a2, &wy);
    let total = &(&f1 - &f2) + &(&f3 - &f4);
    Ok(total.is_zero())
}

// ---------------------------------------------------------------------------
// Chain equality

fn dedup_elements<'a>(
    terms: &[(&'a Vec<CoordElement>, &'a Scalar)],
    slot: usize,
) -> Vec<&'a CoordElement> {
    let mut out: Vec<&CoordElement> = Vec::new();
    for (t, _) in terms {
        let e = &t[slot];
        if !out.iter().any(|x| *x == e) {
            out.push(e);
        }
    }
    out
}

/// Forward-eliminates the vectors, returning for each input its
/// coordinates over the discovered pivot rows.
struct VecReducer {
    rows: Vec<(usize, Vec<RationalScalar>)>,
}

impl VecReducer {
    fn new() -> Self {
        VecReducer { rows: Vec::new() }
    }

    /// Returns (coordinates over rows, row index if the residual was new).
    fn feed(&mut self, mut v: Vec<RationalScalar>) -> Vec<(usize, RationalScalar)> {
        let mut coords = Vec::new();
        loop {
            let Some(p) = v.iter().position(|x| !x.is_zero()) else {
                return coords;
            };
            if let Some(ri) = self.rows.iter().position(|(piv, _)| *piv == p) {
                let c = v[p].clone();
                let row = self.rows[ri].1.clone();
                for (x, r) in v.iter_mut().zip(&row) {
                    let sub = r * &c;
                    *x = &*x - &sub;
                }
                coords.push((ri, c));
            } else {
                let c = v[p].clone();
                let inv = c.inv().expect("pivot nonzero");
                let normalized: Vec<RationalScalar> = v.iter().map(|x| x * &inv).collect();
                let ri = self.rows.len();
                self.rows.push((p, normalized));
                coords.push((ri, c));
                return coords;
            }
        }
    }
}

fn tensor_is_zero(
    terms: Vec<(RationalScalar, Vec<&CoordElement>)>,
    families: &[TestFamily],
) -> bool {
    let slots = families.len();
    if terms.is_empty() {
        return true;
    }
    if slots == 1 {
        // linear combination of single elements: sum the value vectors
        let len = families[0].values(terms[0].1[0]).len();
        let mut acc = vec![RationalScalar::zero(); len];
        let mut cache: Vec<(&CoordElement, Vec<RationalScalar>)> = Vec::new();
        for (c, t) in &terms {
            let vals = match cache.iter().find(|(e, _)| *e == t[0]) {
                Some((_, v)) => v.clone(),
                None => {
                    let v = families[0].values(t[0]);
                    cache.push((t[0], v.clone()));
                    v
                }
            };
            for (a, b) in acc.iter_mut().zip(&vals) {
                let add = b * c;
                *a += &add;
            }
        }
        return acc.iter().all(|x| x.is_zero());
    }
    // peel the last slot: express its value vectors over a pivot basis and
    // recurse on the grouped lower tensors
    let last = slots - 1;
    let mut reducer = VecReducer::new();
    let mut val_cache: Vec<(&CoordElement, Vec<(usize, RationalScalar)>)> = Vec::new();
    let mut grouped: BTreeMap<usize, Vec<(RationalScalar, Vec<&CoordElement>)>> = BTreeMap::new();
    for (c, t) in &terms {
        let e = t[last];
        let coords = match val_cache.iter().find(|(x, _)| *x == e) {
            Some((_, v)) => v.clone(),
            None => {
                let v = reducer.feed(families[last].values(e));
                val_cache.push((e, v.clone()));
                v
            }
        };
        let rest: Vec<&CoordElement> = t[..last].to_vec();
        for (row, beta) in coords {
            grouped.entry(row).or_default().push((c * &beta, rest.clone()));
        }
    }
    grouped
        .into_values()
        .all(|sub| tensor_is_zero(sub, &families[..last]))
}

fn chain_zero_test(d: &Chain, cfg: &EqConfig, quotient_constants: bool) -> Decision {
    if d.is_zero() {
        return Decision { equal: true, oracle: Oracle::Exact };
    }
    // in the normalized complex, slots >= 1 are taken modulo constants:
    // replace e by e - eps(e) 1 before valuing
    let reduce = |e: &CoordElement| -> CoordElement {
        e.sub(&CoordElement::one().scale_rat(&e.counit_rat()))
    };
    let tuples: Vec<(Vec<CoordElement>, Scalar)> = d
        .terms()
        .map(|(t, c)| {
            let mapped: Vec<CoordElement> = t
                .iter()
                .enumerate()
                .map(|(s, e)| {
                    if quotient_constants && s >= 1 {
                        reduce(e)
                    } else {
                        e.clone()
                    }
                })
                .collect();
            (mapped, c.clone())
        })
        .filter(|(t, _)| t.iter().all(|e| !e.is_zero()))
        .collect();
    if tuples.is_empty() {
        return Decision { equal: true, oracle: Oracle::Exact };
    }
    let terms: Vec<(&Vec<CoordElement>, &Scalar)> = tuples.iter().map(|(t, c)| (t, c)).collect();
    let slots = d.degree + 1;
    let mut families = Vec::with_capacity(slots);
    let mut oracle = Oracle::Exact;
    let rank = terms
        .iter()
        .flat_map(|(t, _)| t.iter())
        .filter_map(|e| e.terms().flat_map(|(w, _)| w.0.first()).next())
        .map(|a| a.rep.root_system().rank())
        .next()
        .unwrap_or(1);
    for slot in 0..slots {
        let elems = dedup_elements(&terms, slot);
        match TestFamily::exact_for(&elems, cfg.budget) {
            Ok(f) => families.push(f),
            Err(_) => {
                oracle = Oracle::Bounded(cfg.depth);
                families.push(TestFamily::bounded(rank, cfg.depth));
            }
        }
    }
    let term_list: Vec<(RationalScalar, Vec<&CoordElement>)> = terms
        .iter()
        .map(|(t, c)| {
            (
                RationalScalar::from_scalar((*c).clone()),
                t.iter().collect::<Vec<&CoordElement>>(),
            )
        })
        .collect();
    Decision { equal: tensor_is_zero(term_list, &families), oracle }
}

/// Semantic equality of chains: slotwise coordinates (exact orbit bases
/// inside the budget, bounded word values otherwise) followed by an exact
/// tensor-rank zero test.
pub fn chain_equal(a: &Chain, b: &Chain, cfg: &EqConfig) -> Decision {
    assert_eq!(a.degree, b.degree, "chain degrees must match");
    chain_zero_test(&a.sub(b), cfg, false)
}

/// Whether the chain represents zero in the normalized complex
/// `A (x) (A / C 1)^{(x) n}`, i.e. vanishes once every slot past the first
/// is read modulo scalars.
pub fn normalized_zero(ch: &Chain, cfg: &EqConfig) -> Decision {
    chain_zero_test(ch, cfg, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{RootSystem, Weight};
    use crate::matunits::{build_p, build_q, diag_indicator, qtrace, unit_m, unit_n};
    use crate::repbuild::{build_irrep, fundamental_sln};
    use rand::{Rng, SeedableRng};
    use std::sync::Arc;

    fn cfg() -> EqConfig {
        EqConfig::default()
    }

    #[test]
    fn boundary_of_one_tensor_one() {
        let rank = 1;
        let mut ch = Chain::new(1).unwrap();
        ch.add_term(Scalar::one(), vec![CoordElement::one(), CoordElement::one()]);
        let b = boundary(&ch, &TwistSpec::untwisted(rank)).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn boundary_identity_for_m_unit_cycle() {
        // b_theta C(P) = 1 (x) Tr(pi(K_2rho)^-1 P), exactly
        let rep = fundamental_sln(2);
        let p = build_p(&rep, &diag_indicator(2, &[0]));
        let c = two_cycle_p(&p).unwrap();
        assert_eq!(c.degree(), 2);
        let b = boundary(&c, &TwistSpec::theta(1)).unwrap();
        let km = rep.k_weight_diag(&rep.root_system().two_rho(), -1);
        let target = one_tensor(&qtrace(&km, &p).unwrap());
        let d = chain_equal(&b, &target, &cfg());
        assert!(d.equal);
        assert_eq!(d.oracle, Oracle::Exact);
        // and the image vanishes in the normalized complex
        assert!(normalized_zero(&b, &cfg()).equal);
    }

    #[test]
    fn boundary_identity_for_n_unit_cycle() {
        let rep = fundamental_sln(2);
        let q = build_q(&rep, &diag_indicator(2, &[1]));
        let c = two_cycle_q(&q).unwrap();
        let b = boundary(&c, &TwistSpec::theta(1)).unwrap();
        let kp = rep.k_weight_diag(&rep.root_system().two_rho(), 1);
        let target = one_tensor(&qtrace(&kp, &q).unwrap());
        assert!(chain_equal(&b, &target, &cfg()).equal);
        assert!(normalized_zero(&b, &cfg()).equal);
    }

    #[test]
    fn two_cycle_of_identity_projection() {
        let rep = fundamental_sln(2);
        let p = build_p(&rep, &crate::matrix::ScalarMatrix::identity(2));
        let c = two_cycle_p(&p).unwrap();
        let b = boundary(&c, &TwistSpec::theta(1)).unwrap();
        assert!(normalize(&b, &cfg()).is_zero());
    }

    #[test]
    fn b_squared_vanishes_structurally() {
        let rep = fundamental_sln(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let entries: Vec<CoordElement> = {
            let mut v = Vec::new();
            for m in 0..2 {
                for n in 0..2 {
                    let um = unit_m(&rep, m, n);
                    let un = unit_n(&rep, m, n);
                    for i in 0..2 {
                        for j in 0..2 {
                            v.push(um.at(i, j).clone());
                            v.push(un.at(i, j).clone());
                        }
                    }
                }
            }
            v
        };
        for twist in [TwistSpec::untwisted(1), TwistSpec::theta(1)] {
            for _ in 0..5 {
                let mut ch = Chain::new(3).unwrap();
                for _ in 0..3 {
                    let tuple: Vec<CoordElement> = (0..4)
                        .map(|_| entries[rng.gen_range(0..entries.len())].clone())
                        .collect();
                    let coeff = Scalar::q_pow_frac(rng.gen_range(-2..3), 1);
                    ch.add_term(coeff, tuple);
                }
                let bb = boundary(&boundary(&ch, &twist).unwrap(), &twist).unwrap();
                assert!(bb.is_zero(), "b^2 != 0 structurally");
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let rep = fundamental_sln(2);
        let mut ch = Chain::new(1).unwrap();
        ch.add_term(Scalar::one(), vec![CoordElement::one(), CoordElement::one()]);
        assert!(normalize(&ch, &cfg()).is_zero());

        // a semantically scalar slot is also removed
        let c2 = Scalar::qnum(2, 1);
        let mut sum = CoordElement::zero();
        for k in 0..2 {
            sum = sum.add(
                &CoordElement::atom(&rep, k, 0, true).mul(&CoordElement::atom(&rep, k, 0, false)),
            );
        }
        let mut ch = Chain::new(1).unwrap();
        ch.add_term(c2, vec![CoordElement::one(), sum]);
        assert!(normalize(&ch, &cfg()).is_zero());

        // a non-scalar slot survives
        let mut ch = Chain::new(1).unwrap();
        ch.add_term(
            Scalar::one(),
            vec![CoordElement::one(), CoordElement::atom(&rep, 0, 1, false)],
        );
        let n = normalize(&ch, &cfg());
        assert_eq!(n.num_terms(), 1);
        assert_eq!(normalize(&n, &cfg()), n);
    }

    #[test]
    fn eta_on_sl2_diagonal_units() {
        // eta(C(M^k_k)) = [k]_q on V(n omega), with k the weight label
        let a1 = Arc::new(RootSystem::parse("A1").unwrap());
        for n in 1..=3i64 {
            let rep = build_irrep(&a1, &Weight(vec![n])).unwrap();
            for idx in 0..rep.dim() {
                let k = rep.weight(idx).0[0];
                let p = build_p(&rep, &diag_indicator(rep.dim(), &[idx]));
                let c = two_cycle_p(&p).unwrap();
                let v = eta_apply(&CocycleSpec::eta(0), &c).unwrap();
                assert_eq!(v, Scalar::qnum(k, 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn eta_rejects_wrong_degree() {
        let ch = Chain::new(1).unwrap();
        assert!(matches!(
            eta_apply(&CocycleSpec::eta(0), &ch),
            Err(ChainError::WrongDegree { .. })
        ));
    }

    #[test]
    fn eta_additive() {
        let rep = fundamental_sln(2);
        let p = build_p(&rep, &diag_indicator(2, &[0]));
        let q = build_p(&rep, &diag_indicator(2, &[1]));
        let c1 = two_cycle_p(&p).unwrap();
        let c2 = two_cycle_p(&q).unwrap();
        let spec = CocycleSpec::eta(0);
        let sum = eta_apply(&spec, &c1.add(&c2)).unwrap();
        let parts = &eta_apply(&spec, &c1).unwrap() + &eta_apply(&spec, &c2).unwrap();
        assert_eq!(sum, parts);
    }

    #[test]
    fn cocycle_coboundary_vanishes_on_flag_elements() {
        let rep = fundamental_sln(2);
        let nm = unit_n(&rep, 0, 0);
        let elems = [
            nm.at(0, 0).clone(),
            nm.at(0, 1).clone(),
            nm.at(1, 0).clone(),
            nm.at(1, 1).clone(),
        ];
        assert!(cocycle_check(&CocycleSpec::eta(0), &TwistSpec::theta(1), &elems, Side::Left)
            .unwrap());
        // out-of-contract input is reported as a precondition error
        let bad = [
            CoordElement::atom(&rep, 0, 1, false),
            elems[1].clone(),
            elems[2].clone(),
            elems[3].clone(),
        ];
        assert!(matches!(
            cocycle_check(&CocycleSpec::eta(0), &TwistSpec::theta(1), &bad, Side::Left),
            Err(ChainError::NotInFlag(0))
        ));
    }

    #[test]
    fn cocycle_on_grassmannian_with_general_twist() {
        let g = crate::flags::grassmannian_projection(2, 4).unwrap();
        let q = &g.q;
        let elems = [
            q.at(0, 0).clone(),
            q.at(1, 2).clone(),
            q.at(2, 1).clone(),
            q.at(3, 3).clone(),
        ];
        let twist = TwistSpec { lambda: Weight(vec![1, 0, 2]), lambda_p: Weight(vec![0, -1, 1]) };
        assert!(cocycle_check(&CocycleSpec::eta(1), &twist, &elems, Side::Left).unwrap());
    }

    #[test]
    fn chain_equal_detects_difference() {
        let rep = fundamental_sln(2);
        let p = build_p(&rep, &diag_indicator(2, &[0]));
        let c1 = two_cycle_p(&p).unwrap();
        let mut c2 = c1.clone();
        c2.add_term(
            Scalar::one(),
            vec![CoordElement::one(), p.at(0, 1).clone(), p.at(1, 0).clone()],
        );
        assert!(!chain_equal(&c1, &c2, &cfg()).equal);
    }
}
