//! The quantized coordinate ring as a ring of functionals: formal words of
//! matrix-coefficient atoms with exact coefficients, the counit, left and
//! right generator actions, the Cartan twists, an evaluation functional,
//! and two equality oracles.
//!
//! An unstarred atom `u[i,j]` is the matrix coefficient `c_{f^i, v_j}` of
//! its representation; a starred atom `u[i,j]*` is *defined* as `S(u[j,i])`,
//! so every identity in scope is Hopf-algebraic and no square roots enter.
//! Equality is semantic, not syntactic: a word of length L is a matrix
//! coefficient of an L-fold tensor product, and a linear combination
//! vanishes as a functional iff it vanishes on the subalgebra generated by
//! the generator images in the direct sum of the relevant endomorphism
//! spaces (`equal_exact`), or on all generator words up to a length bound
//! (`equal_bounded`, a sound refuter).

use crate::cartan::Weight;
use crate::matrix::RatMatrix;
use crate::repbuild::{antipode_expand, coproduct_iter, Gen, RepRef, UqWord};
use crate::scalar::{RationalScalar, Scalar, ScalarError};
use num::rational::BigRational;
use num::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum CoordError {
    #[error("coefficient failed to clear denominators: {0}")]
    NonLaurent(String),
    #[error("equality budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One matrix-coefficient atom. Indices are 0-based internally.
#[derive(Clone)]
pub struct CoordAtom {
    pub rep: RepRef,
    pub row: usize,
    pub col: usize,
    pub star: bool,
}

impl CoordAtom {
    pub fn new(rep: &RepRef, row: usize, col: usize, star: bool) -> Self {
        assert!(row < rep.dim() && col < rep.dim(), "atom index out of range");
        CoordAtom { rep: rep.clone(), row, col, star }
    }

    fn key(&self) -> (u64, bool, usize, usize) {
        (self.rep.id(), self.star, self.row, self.col)
    }

    /// Contribution to the total left weight of a word (the `K_lambda |>`
    /// eigenvalue is `q^{(lambda, left_weight)}`).
    pub fn left_weight(&self) -> Weight {
        let w = self.rep.weight(self.col);
        if self.star {
            -w
        } else {
            w.clone()
        }
    }

    /// Contribution to the total right weight (`<| K_lambda` eigenvalue).
    pub fn right_weight(&self) -> Weight {
        let w = self.rep.weight(self.row);
        if self.star {
            -w
        } else {
            w.clone()
        }
    }
}

impl PartialEq for CoordAtom {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for CoordAtom {}
impl PartialOrd for CoordAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CoordAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for CoordAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u[{},{}]{}", self.row + 1, self.col + 1, if self.star { "*" } else { "" })
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct CoordWord(pub Vec<CoordAtom>);

impl CoordWord {
    pub fn empty() -> Self {
        CoordWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &CoordWord) -> CoordWord {
        let mut v = self.0.clone();
        v.extend(rhs.0.iter().cloned());
        CoordWord(v)
    }

    pub fn left_weight(&self) -> Option<Weight> {
        let mut acc: Option<Weight> = None;
        for a in &self.0 {
            let w = a.left_weight();
            acc = Some(match acc {
                None => w,
                Some(v) => &v + &w,
            });
        }
        acc
    }

    pub fn right_weight(&self) -> Option<Weight> {
        let mut acc: Option<Weight> = None;
        for a in &self.0 {
            let w = a.right_weight();
            acc = Some(match acc {
                None => w,
                Some(v) => &v + &w,
            });
        }
        acc
    }
}

impl fmt::Debug for CoordWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| format!("{a:?}")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Linear combination of coordinate-ring words. Coefficients are stored in
/// the fraction field; every public constructor takes Laurent coefficients
/// and the operations that the theory guarantees to be Laurent assert
/// clearance on their results.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct CoordElement {
    terms: BTreeMap<CoordWord, RationalScalar>,
}

impl CoordElement {
    pub fn zero() -> Self {
        CoordElement::default()
    }

    /// The unit 1 (empty word).
    pub fn one() -> Self {
        CoordElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut e = CoordElement::zero();
        e.add_term(CoordWord::empty(), RationalScalar::from_scalar(c));
        e
    }

    pub fn atom(rep: &RepRef, row: usize, col: usize, star: bool) -> Self {
        let mut e = CoordElement::zero();
        e.add_term(CoordWord(vec![CoordAtom::new(rep, row, col, star)]), RationalScalar::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoordWord, &RationalScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: CoordWord, c: RationalScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &CoordElement) -> CoordElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &CoordElement) -> CoordElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> CoordElement {
        let mut out = CoordElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CoordElement {
        self.scale_rat(&RationalScalar::from_scalar(c.clone()))
    }

    pub fn scale_rat(&self, c: &RationalScalar) -> CoordElement {
        let mut out = CoordElement::zero();
        for (w, cw) in &self.terms {
            out.add_term(w.clone(), cw * c);
        }
        out
    }

    /// Product = bilinear word concatenation.
    pub fn mul(&self, rhs: &CoordElement) -> CoordElement {
        let mut out = CoordElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// True if every coefficient is a Laurent polynomial.
    pub fn coefficients_are_laurent(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    fn assert_laurent(self) -> Result<CoordElement, CoordError> {
        match self.terms.values().find(|c| c.as_scalar().is_none()) {
            None => Ok(self),
            Some(c) => Err(CoordError::NonLaurent(c.to_string())),
        }
    }

    /// Syntactic test: the element is literally `c * 1`.
    pub fn as_scalar_multiple_of_one(&self) -> Option<RationalScalar> {
        if self.terms.is_empty() {
            return Some(RationalScalar::zero());
        }
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if w.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Counit: multiplicative extension of `eps(u[i,j]) = eps(u[i,j]*) =
    /// delta_ij`, linear over terms.
    pub fn counit(&self) -> Scalar {
        self.counit_rat()
            .into_scalar()
            .expect("counit of an element with Laurent coefficients is Laurent")
    }

    pub fn counit_rat(&self) -> RationalScalar {
        let mut acc = RationalScalar::zero();
        for (w, c) in &self.terms {
            if w.0.iter().all(|a| a.row == a.col) {
                acc += c;
            }
        }
        acc
    }

    fn first_rep(&self) -> Option<RepRef> {
        self.terms
            .keys()
            .flat_map(|w| w.0.first())
            .map(|a| a.rep.clone())
            .next()
    }
}

impl fmt::Debug for CoordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "({c})·1")?;
            } else {
                write!(f, "({c})·{w:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

// ---------------------------------------------------------------------------
// Actions and evaluation

struct PiCache {
    plain: BTreeMap<(u64, UqWord), RatMatrix>,
    antipode: BTreeMap<(u64, UqWord), RatMatrix>,
}

impl PiCache {
    fn new() -> Self {
        PiCache { plain: BTreeMap::new(), antipode: BTreeMap::new() }
    }

    fn pi(&mut self, rep: &RepRef, w: &UqWord) -> &RatMatrix {
        self.plain
            .entry((rep.id(), w.clone()))
            .or_insert_with(|| rep.pi_word(w))
    }

    fn pi_antipode(&mut self, rep: &RepRef, w: &UqWord) -> &RatMatrix {
        self.antipode
            .entry((rep.id(), w.clone()))
            .or_insert_with(|| rep.pi(&antipode_expand(w)))
    }
}

/// Value of an atom, as a functional, on a generator word:
/// unstarred `u[i,j]` gives `pi(w)^i_j`, starred gives `pi(S(w))^j_i`.
fn atom_value(cache: &mut PiCache, atom: &CoordAtom, w: &UqWord) -> RationalScalar {
    if atom.star {
        cache.pi_antipode(&atom.rep, w).at(atom.col, atom.row).clone()
    } else {
        cache.pi(&atom.rep, w).at(atom.row, atom.col).clone()
    }
}

/// Evaluates the element, as a functional, on a free word; exact value in
/// the fraction field.
pub fn evaluate_rat(e: &CoordElement, w: &UqWord) -> RationalScalar {
    let mut cache = EvalCache::new();
    evaluate_rat_cached(e, w, &mut cache)
}

/// Shared caches for repeated evaluations: `pi` matrices per (rep, word)
/// and coproduct expansions per (word, slots).
pub struct EvalCache {
    pi: PiCache,
    legs: BTreeMap<(UqWord, usize), Vec<Vec<UqWord>>>,
}

impl EvalCache {
    pub fn new() -> Self {
        EvalCache { pi: PiCache::new(), legs: BTreeMap::new() }
    }
}

impl Default for EvalCache {
    fn default() -> Self {
        EvalCache::new()
    }
}

pub fn evaluate_rat_cached(e: &CoordElement, w: &UqWord, cache: &mut EvalCache) -> RationalScalar {
    let mut acc = RationalScalar::zero();
    for (cw, coeff) in e.terms() {
        let l = cw.len();
        if l == 0 {
            acc += &(coeff * &RationalScalar::from_scalar(w.counit()));
            continue;
        }
        if !cache.legs.contains_key(&(w.clone(), l)) {
            let expansions = coproduct_iter(w, l).into_iter().map(|(_, t)| t).collect();
            cache.legs.insert((w.clone(), l), expansions);
        }
        let expansions = cache.legs.get(&(w.clone(), l)).unwrap().clone();
        for legs in &expansions {
            let mut prod = coeff.clone();
            for (slot, leg) in legs.iter().enumerate() {
                if prod.is_zero() {
                    break;
                }
                let v = atom_value(&mut cache.pi, &cw.0[slot], leg);
                prod = &prod * &v;
            }
            acc += &prod;
        }
    }
    acc
}

/// Evaluation with the denominator-clearance assertion: results on
/// elements in the scope of the worked identities are Laurent.
pub fn evaluate(e: &CoordElement, w: &UqWord) -> Result<Scalar, CoordError> {
    let v = evaluate_rat(e, w);
    v.into_scalar()
        .map_err(|_| CoordError::NonLaurent(format!("evaluate at {w}")))
}

fn act_word_left(cache: &mut PiCache, g: Gen, word: &CoordWord) -> Vec<(RationalScalar, CoordWord)> {
    let l = word.len();
    if l == 0 {
        // X |> 1 = eps(X) 1
        let c = UqWord::single(g).counit();
        if c.is_zero() {
            return Vec::new();
        }
        return vec![(RationalScalar::from_scalar(c), CoordWord::empty())];
    }
    let mut out = Vec::new();
    for (_, legs) in coproduct_iter(&UqWord::single(g), l) {
        // each coproduct term acts slotwise
        let mut partial: Vec<(RationalScalar, Vec<CoordAtom>)> =
            vec![(RationalScalar::one(), Vec::with_capacity(l))];
        for (slot, leg) in legs.iter().enumerate() {
            let atom = &word.0[slot];
            let mut choices: Vec<(RationalScalar, CoordAtom)> = Vec::new();
            if leg.is_empty() {
                choices.push((RationalScalar::one(), atom.clone()));
            } else if atom.star {
                // X |> u[i,j]* = sum_k pi(S(X))^j_k u[i,k]*
                let m = cache.pi_antipode(&atom.rep, leg).clone();
                for k in 0..atom.rep.dim() {
                    let c = m.at(atom.col, k);
                    if !c.is_zero() {
                        choices.push((c.clone(), CoordAtom::new(&atom.rep, atom.row, k, true)));
                    }
                }
            } else {
                // X |> u[i,j] = sum_k pi(X)^k_j u[i,k]
                let m = cache.pi(&atom.rep, leg).clone();
                for k in 0..atom.rep.dim() {
                    let c = m.at(k, atom.col);
                    if !c.is_zero() {
                        choices.push((c.clone(), CoordAtom::new(&atom.rep, atom.row, k, false)));
                    }
                }
            }
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for (pc, pw) in &partial {
                for (cc, ca) in &choices {
                    let mut w2 = pw.clone();
                    w2.push(ca.clone());
                    next.push((pc * cc, w2));
                }
            }
            partial = next;
        }
        for (c, atoms) in partial {
            out.push((c, CoordWord(atoms)));
        }
    }
    out
}

fn act_word_right(cache: &mut PiCache, g: Gen, word: &CoordWord) -> Vec<(RationalScalar, CoordWord)> {
    let l = word.len();
    if l == 0 {
        let c = UqWord::single(g).counit();
        if c.is_zero() {
            return Vec::new();
        }
        return vec![(RationalScalar::from_scalar(c), CoordWord::empty())];
    }
    let mut out = Vec::new();
    for (_, legs) in coproduct_iter(&UqWord::single(g), l) {
        let mut partial: Vec<(RationalScalar, Vec<CoordAtom>)> =
            vec![(RationalScalar::one(), Vec::with_capacity(l))];
        for (slot, leg) in legs.iter().enumerate() {
            let atom = &word.0[slot];
            let mut choices: Vec<(RationalScalar, CoordAtom)> = Vec::new();
            if leg.is_empty() {
                choices.push((RationalScalar::one(), atom.clone()));
            } else if atom.star {
                // u[i,j]* <| X = sum_k pi(S(X))^k_i u[k,j]*
                let m = cache.pi_antipode(&atom.rep, leg).clone();
                for k in 0..atom.rep.dim() {
                    let c = m.at(k, atom.row);
                    if !c.is_zero() {
                        choices.push((c.clone(), CoordAtom::new(&atom.rep, k, atom.col, true)));
                    }
                }
            } else {
                // u[i,j] <| X = sum_k pi(X)^i_k u[k,j]
                let m = cache.pi(&atom.rep, leg).clone();
                for k in 0..atom.rep.dim() {
                    let c = m.at(atom.row, k);
                    if !c.is_zero() {
                        choices.push((c.clone(), CoordAtom::new(&atom.rep, k, atom.col, false)));
                    }
                }
            }
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for (pc, pw) in &partial {
                for (cc, ca) in &choices {
                    let mut w2 = pw.clone();
                    w2.push(ca.clone());
                    next.push((pc * cc, w2));
                }
            }
            partial = next;
        }
        for (c, atoms) in partial {
            out.push((c, CoordWord(atoms)));
        }
    }
    out
}

/// Left action of a generator, exact in the fraction field.
pub fn act_left_rat(g: Gen, e: &CoordElement) -> CoordElement {
    let mut cache = PiCache::new();
    let mut out = CoordElement::zero();
    for (w, c) in e.terms() {
        for (cc, nw) in act_word_left(&mut cache, g, w) {
            out.add_term(nw, &cc * c);
        }
    }
    out
}

/// Right action of a generator, exact in the fraction field.
pub fn act_right_rat(g: Gen, e: &CoordElement) -> CoordElement {
    let mut cache = PiCache::new();
    let mut out = CoordElement::zero();
    for (w, c) in e.terms() {
        for (cc, nw) in act_word_right(&mut cache, g, w) {
            out.add_term(nw, &cc * c);
        }
    }
    out
}

/// Left action with the denominator-clearance assertion.
pub fn act_left(g: Gen, e: &CoordElement) -> Result<CoordElement, CoordError> {
    act_left_rat(g, e).assert_laurent()
}

/// Right action with the denominator-clearance assertion.
pub fn act_right(g: Gen, e: &CoordElement) -> Result<CoordElement, CoordError> {
    act_right_rat(g, e).assert_laurent()
}

/// `sigma_{lambda, lambda'}(a) = K_lambda |> a <| K_lambda'`: acts
/// diagonally on words. Unstarred atoms scale by
/// `q^{(lambda, wt(col)) + (lambda', wt(row))}`, starred atoms by the
/// inverse factor.
pub fn sigma_twist(lambda: &Weight, lambda_p: &Weight, e: &CoordElement) -> CoordElement {
    let mut out = CoordElement::zero();
    for (w, c) in e.terms() {
        let mut exp = BigRational::zero();
        for a in &w.0 {
            let rs = a.rep.root_system();
            let contrib = rs.bilinear(lambda, a.rep.weight(a.col))
                + rs.bilinear(lambda_p, a.rep.weight(a.row));
            if a.star {
                exp -= contrib;
            } else {
                exp += contrib;
            }
        }
        out.add_term(w.clone(), c * &RationalScalar::from_scalar(Scalar::q_pow(exp)));
    }
    out
}

/// The modular automorphism `theta = sigma_{2rho, 2rho}`.
pub fn theta(e: &CoordElement) -> CoordElement {
    match e.first_rep() {
        None => e.clone(),
        Some(rep) => {
            let two_rho = rep.root_system().two_rho();
            sigma_twist(&two_rho, &two_rho, e)
        }
    }
}

/// Conjugate star for orthonormal realizations: reverses words and toggles
/// stars (coefficients are fixed since `q` is real). Meaningful only when
/// every atom's representation is orthonormal.
pub fn conj_star(e: &CoordElement) -> CoordElement {
    let mut out = CoordElement::zero();
    for (w, c) in e.terms() {
        assert!(
            w.0.iter().all(|a| a.rep.is_orthonormal()),
            "conj_star requires orthonormal representations"
        );
        let atoms = w
            .0
            .iter()
            .rev()
            .map(|a| CoordAtom::new(&a.rep, a.row, a.col, !a.star))
            .collect();
        out.add_term(CoordWord(atoms), c.clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Equality oracles

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Exact,
    Bounded(usize),
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::Exact => write!(f, "exact"),
            Oracle::Bounded(d) => write!(f, "bounded(D={d})"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EqConfig {
    /// Total endomorphism-space dimension allowed for the exact oracle.
    pub budget: usize,
    /// Word-length bound for the fallback oracle.
    pub depth: usize,
}

impl Default for EqConfig {
    fn default() -> Self {
        EqConfig { budget: 5000, depth: 4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub equal: bool,
    pub oracle: Oracle,
}

type Signature = Vec<(u64, bool)>;

fn signature_of(w: &CoordWord) -> Signature {
    w.0.iter().map(|a| (a.rep.id(), a.star)).collect()
}

fn alphabet(rank: usize) -> Vec<Gen> {
    let mut v = Vec::with_capacity(4 * rank);
    for a in 0..rank {
        v.push(Gen::E(a));
        v.push(Gen::F(a));
        v.push(Gen::K(a));
        v.push(Gen::KInv(a));
    }
    v
}

/// Tensor-product representation matrix of a generator on the slots of a
/// signature: unstarred slots act by `pi`, starred slots by
/// `X -> pi(S(X))^T` (the left dual, which is again a homomorphism).
/// Returned column-major: `cols[c] = [(row, value)]`.
fn block_gen_matrix(slots: &[(RepRef, bool)], g: Gen) -> Vec<Vec<(usize, RationalScalar)>> {
    let l = slots.len();
    let dims: Vec<usize> = slots.iter().map(|(r, _)| r.dim()).collect();
    let dim: usize = dims.iter().product();
    let mut acc: BTreeMap<(usize, usize), RationalScalar> = BTreeMap::new();
    for (_, legs) in coproduct_iter(&UqWord::single(g), l) {
        let mut slot_entries: Vec<Vec<(usize, usize, RationalScalar)>> = Vec::with_capacity(l);
        for (s, leg) in legs.iter().enumerate() {
            let (rep, star) = &slots[s];
            let m = if *star {
                rep.pi(&antipode_expand(leg)).transpose()
            } else {
                rep.pi_word(leg)
            };
            let mut nz = Vec::new();
            for i in 0..rep.dim() {
                for j in 0..rep.dim() {
                    if !m.at(i, j).is_zero() {
                        nz.push((i, j, m.at(i, j).clone()));
                    }
                }
            }
            slot_entries.push(nz);
        }
        let mut partial: Vec<(usize, usize, RationalScalar)> = vec![(0, 0, RationalScalar::one())];
        for (s, nz) in slot_entries.iter().enumerate() {
            let mut next = Vec::with_capacity(partial.len() * nz.len());
            for (r0, c0, v0) in &partial {
                for (ri, ci, vi) in nz {
                    next.push((r0 * dims[s] + ri, c0 * dims[s] + ci, v0 * vi));
                }
            }
            partial = next;
        }
        for (r, c, v) in partial {
            let entry = acc.entry((r, c)).or_default();
            *entry += &v;
            if entry.is_zero() {
                acc.remove(&(r, c));
            }
        }
    }
    let mut cols = vec![Vec::new(); dim];
    for ((r, c), v) in acc {
        cols[c].push((r, v));
    }
    cols
}

type FlatVec = BTreeMap<usize, RationalScalar>;

struct SigBlock {
    dim: usize,
    /// offset of this block inside the carrier space W
    woffset: usize,
    /// column-major generator matrices on the block, one per letter
    gens: Vec<Vec<Vec<(usize, RationalScalar)>>>,
}

/// Decides functional vanishing by closing the orbit of the column vectors
/// under the generator images. A linear combination of words vanishes as a
/// functional iff, writing its value on a word `w` as
/// `sum_cols <row-part, Pi(w) e_col>`, the pairing vanishes on a spanning
/// set of the orbit tuples `(Pi(w) e_col)_col`. This needs only the
/// carrier space `W` (sum of tensor-space dimensions), not `End(W)`.
pub(crate) struct OrbitSpace {
    blocks: Vec<SigBlock>,
    sig_index: BTreeMap<Signature, usize>,
    /// index of the 1-dim trivial block in W, if the empty word occurs
    empty_windex: Option<usize>,
    wdim: usize,
    rank: usize,
    /// registered columns: (signature block or empty, flat column) -> component
    col_index: BTreeMap<(Option<usize>, usize), usize>,
    /// orbit basis, each a sparse vector over component * wdim + windex
    basis: Vec<FlatVec>,
}

fn flat_row_col(w: &CoordWord) -> (usize, usize) {
    let mut row = 0usize;
    let mut col = 0usize;
    for a in &w.0 {
        row = row * a.rep.dim() + a.row;
        col = col * a.rep.dim() + a.col;
    }
    (row, col)
}

type OrbitKey = (Vec<Signature>, Vec<(Option<usize>, usize)>);

fn orbit_cache() -> &'static std::sync::Mutex<BTreeMap<OrbitKey, std::sync::Arc<OrbitSpace>>> {
    static CACHE: std::sync::OnceLock<
        std::sync::Mutex<BTreeMap<OrbitKey, std::sync::Arc<OrbitSpace>>>,
    > = std::sync::OnceLock::new();
    CACHE.get_or_init(|| std::sync::Mutex::new(BTreeMap::new()))
}

impl OrbitSpace {
    /// Cached build: orbit spaces are immutable and keyed by the signature
    /// and column sets, so repeated checks over the same shapes are free.
    fn build_cached(
        elements: &[&CoordElement],
        budget: usize,
    ) -> Result<std::sync::Arc<OrbitSpace>, CoordError> {
        let space = OrbitSpace::build_shell(elements, budget)?;
        let key: OrbitKey = (
            space.sig_index.keys().cloned().collect(),
            space.col_index.keys().cloned().collect(),
        );
        {
            let cache = orbit_cache().lock().unwrap();
            if let Some(hit) = cache.get(&key) {
                return Ok(hit.clone());
            }
        }
        let mut space = space;
        space.close();
        let arc = std::sync::Arc::new(space);
        orbit_cache().lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Builds the orbit space for all words of the given elements, gated by
    /// the total endomorphism dimension of the distinct signatures.
    fn build_shell(elements: &[&CoordElement], budget: usize) -> Result<OrbitSpace, CoordError> {
        let mut sigs: Vec<(Signature, Vec<(RepRef, bool)>)> = Vec::new();
        let mut has_empty = false;
        let mut rank = 0usize;
        for e in elements {
            for (w, _) in e.terms() {
                if w.is_empty() {
                    has_empty = true;
                    continue;
                }
                let sig = signature_of(w);
                if !sigs.iter().any(|(s, _)| s == &sig) {
                    let slots: Vec<(RepRef, bool)> =
                        w.0.iter().map(|a| (a.rep.clone(), a.star)).collect();
                    rank = rank.max(slots[0].0.root_system().rank());
                    sigs.push((sig, slots));
                }
            }
        }
        let mut needed: usize = usize::from(has_empty);
        for (_, slots) in &sigs {
            let d: usize = slots.iter().map(|(r, _)| r.dim()).product();
            needed = needed.saturating_add(d.saturating_mul(d));
        }
        if needed > budget {
            return Err(CoordError::BudgetExceeded { needed, budget });
        }

        let letters = alphabet(rank.max(1));
        let mut blocks = Vec::new();
        let mut sig_index = BTreeMap::new();
        let mut woffset = 0usize;
        for (sig, slots) in sigs {
            let dim: usize = slots.iter().map(|(r, _)| r.dim()).product();
            let gens = letters.iter().map(|&g| block_gen_matrix(&slots, g)).collect();
            sig_index.insert(sig, blocks.len());
            blocks.push(SigBlock { dim, woffset, gens });
            woffset += dim;
        }
        let empty_windex = if has_empty {
            let o = woffset;
            woffset += 1;
            Some(o)
        } else {
            None
        };

        let mut space = OrbitSpace {
            blocks,
            sig_index,
            empty_windex,
            wdim: woffset,
            rank,
            col_index: BTreeMap::new(),
            basis: Vec::new(),
        };
        // register every column of every element
        for e in elements {
            for (w, _) in e.terms() {
                let key = space.column_key(w);
                let next = space.col_index.len();
                space.col_index.entry(key).or_insert(next);
            }
        }
        Ok(space)
    }

    fn column_key(&self, w: &CoordWord) -> (Option<usize>, usize) {
        if w.is_empty() {
            (None, 0)
        } else {
            let sig = signature_of(w);
            let bi = *self.sig_index.get(&sig).expect("signature registered");
            (Some(bi), flat_row_col(w).1)
        }
    }

    /// The initial tuple `(e_col)_col`.
    fn identity_tuple(&self) -> FlatVec {
        let mut v = FlatVec::new();
        for ((blk, col), comp) in &self.col_index {
            let windex = match blk {
                None => self.empty_windex.expect("empty block allocated"),
                Some(bi) => self.blocks[*bi].woffset + col,
            };
            v.insert(comp * self.wdim + windex, RationalScalar::one());
        }
        v
    }

    /// Componentwise block-diagonal matrix-vector product by a generator.
    fn apply_gen(&self, gi: usize, x: &FlatVec) -> FlatVec {
        let mut out = FlatVec::new();
        let is_cartan = matches!(alphabet(self.rank.max(1))[gi], Gen::K(_) | Gen::KInv(_));
        for (&flat, v) in x {
            let comp = flat / self.wdim;
            let windex = flat % self.wdim;
            if Some(windex) == self.empty_windex {
                if is_cartan {
                    let entry = out.entry(flat).or_default();
                    *entry += v;
                    if entry.is_zero() {
                        out.remove(&flat);
                    }
                }
                continue;
            }
            let b = self
                .blocks
                .iter()
                .find(|b| windex >= b.woffset && windex < b.woffset + b.dim)
                .expect("windex inside a block");
            let local = windex - b.woffset;
            for (row, bv) in &b.gens[gi][local] {
                let idx = comp * self.wdim + b.woffset + row;
                let add = bv * v;
                let entry = out.entry(idx).or_default();
                *entry += &add;
                if entry.is_zero() {
                    out.remove(&idx);
                }
            }
        }
        out
    }

    fn close(&mut self) {
        // echelon rows as sorted sparse vectors; merges beat tree maps here
        type Row = Vec<(usize, RationalScalar)>;
        fn sub_scaled(a: &Row, b: &Row, c: &RationalScalar) -> Row {
            let mut out = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                match (a.get(i), b.get(j)) {
                    (Some((ia, va)), Some((ib, _))) if ia < ib => {
                        out.push((*ia, va.clone()));
                        i += 1;
                    }
                    (Some((ia, va)), Some((ib, vb))) if ia == ib => {
                        let v = va - &(vb * c);
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (_, Some((ib, vb))) => {
                        let v = -&(vb * c);
                        out.push((*ib, v));
                        j += 1;
                    }
                    (Some((ia, va)), None) => {
                        out.push((*ia, va.clone()));
                        i += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            out
        }

        let mut echelon: Vec<(usize, Row)> = Vec::new();
        let mut work: Vec<FlatVec> = vec![self.identity_tuple()];
        // K^-1 can be dropped from the closure alphabet: the closure is a
        // finite-dimensional K-stable subspace, and K is injective, so
        // K-stability already gives K^-1-stability
        let letters: Vec<usize> = alphabet(self.rank.max(1))
            .iter()
            .enumerate()
            .filter(|(_, g)| !matches!(g, Gen::KInv(_)))
            .map(|(i, _)| i)
            .collect();
        while let Some(x) = work.pop() {
            let mut red: Row = x.iter().map(|(i, v)| (*i, v.clone())).collect();
            loop {
                let Some(&(piv, ref pval)) = red.first() else { break };
                // echelon is sorted by pivot; rows with smaller pivots than
                // red's leading index cannot touch it
                match echelon.binary_search_by_key(&piv, |(p, _)| *p) {
                    Ok(ri) => {
                        let c = pval.clone();
                        red = sub_scaled(&red, &echelon[ri].1, &c);
                    }
                    Err(pos) => {
                        let inv = pval.inv().expect("pivot nonzero");
                        let normalized: Row = red.iter().map(|(i, v)| (*i, v * &inv)).collect();
                        echelon.insert(pos, (piv, normalized));
                        for &gi in &letters {
                            work.push(self.apply_gen(gi, &x));
                        }
                        self.basis.push(x);
                        break;
                    }
                }
            }
        }
    }

    /// Whether every word of the element has its signature and column
    /// registered, i.e. `values` is defined for it.
    pub(crate) fn covers(&self, e: &CoordElement) -> bool {
        e.terms().all(|(w, _)| {
            if w.is_empty() {
                return self.empty_windex.is_some();
            }
            let sig = signature_of(w);
            match self.sig_index.get(&sig) {
                None => false,
                Some(bi) => self
                    .col_index
                    .contains_key(&(Some(*bi), flat_row_col(w).1)),
            }
        })
    }

    /// Pairing of the element's row parts against one orbit tuple; on the
    /// tuple of `Pi(w)`-translates this equals the functional value at `w`.
    fn functional_value(&self, e: &CoordElement, tuple: &FlatVec) -> RationalScalar {
        let mut acc = RationalScalar::zero();
        for (w, c) in e.terms() {
            let key = self.column_key(w);
            let comp = *self.col_index.get(&key).expect("column registered");
            let windex = if w.is_empty() {
                self.empty_windex.expect("empty block allocated")
            } else {
                let bi = key.0.unwrap();
                self.blocks[bi].woffset + flat_row_col(w).0
            };
            if let Some(v) = tuple.get(&(comp * self.wdim + windex)) {
                acc += &(c * v);
            }
        }
        acc
    }
}

/// Exact semantic equality via orbit closure of the generator images.
/// Errors when the total endomorphism dimension exceeds the budget.
pub fn equal_exact(a: &CoordElement, b: &CoordElement, budget: usize) -> Result<bool, CoordError> {
    let d = a.sub(b);
    if d.is_zero() {
        return Ok(true);
    }
    let space = OrbitSpace::build_cached(&[&d], budget)?;
    for be in &space.basis {
        if !space.functional_value(&d, be).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerates all generator words of length <= depth over the alphabet of
/// the given rank, including the empty word.
pub fn words_up_to(rank: usize, depth: usize) -> Vec<UqWord> {
    let letters = alphabet(rank);
    let mut out = vec![UqWord::empty()];
    let mut layer = vec![UqWord::empty()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &g in &letters {
                let mut v = w.0.clone();
                v.push(g);
                next.push(UqWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Agreement of the two functionals on every generator word of length <=
/// depth. Sound as a refuter; `true` is evidence, not proof.
pub fn equal_bounded(a: &CoordElement, b: &CoordElement, depth: usize) -> bool {
    let d = a.sub(b);
    if d.is_zero() {
        return true;
    }
    let rank = d
        .first_rep()
        .map(|r| r.root_system().rank())
        .unwrap_or(0);
    if rank == 0 {
        // no atoms anywhere: functional is a multiple of the counit
        return d.counit_rat().is_zero() && d.is_zero();
    }
    for w in words_up_to(rank, depth) {
        if !evaluate_rat(&d, &w).is_zero() {
            return false;
        }
    }
    true
}

/// Preferred equality entry point: exact within budget, bounded fallback.
pub fn decide_equal(a: &CoordElement, b: &CoordElement, cfg: &EqConfig) -> Decision {
    match equal_exact(a, b, cfg.budget) {
        Ok(eq) => Decision { equal: eq, oracle: Oracle::Exact },
        Err(_) => Decision {
            equal: equal_bounded(a, b, cfg.depth),
            oracle: Oracle::Bounded(cfg.depth),
        },
    }
}

// ---------------------------------------------------------------------------
// Test families shared with the chain-level equality in `hochschild`

/// An injective linear coordinate map on the span of a fixed element
/// family, used for slotwise tensor equality of chains: either values on
/// all bounded words (refuter) or on an exact orbit basis.
pub(crate) enum TestFamily {
    Bounded { words: Vec<UqWord>, cache: std::cell::RefCell<EvalCache> },
    Exact(std::sync::Arc<OrbitSpace>),
}

impl TestFamily {
    pub(crate) fn bounded(rank: usize, depth: usize) -> TestFamily {
        TestFamily::Bounded {
            words: words_up_to(rank, depth),
            cache: std::cell::RefCell::new(EvalCache::new()),
        }
    }

    /// Exact family covering every element that will be evaluated.
    pub(crate) fn exact_for(
        elements: &[&CoordElement],
        budget: usize,
    ) -> Result<TestFamily, CoordError> {
        Ok(TestFamily::Exact(OrbitSpace::build_cached(elements, budget)?))
    }

    pub(crate) fn values(&self, e: &CoordElement) -> Vec<RationalScalar> {
        match self {
            TestFamily::Bounded { words, cache } => {
                let mut cache = cache.borrow_mut();
                words.iter().map(|w| evaluate_rat_cached(e, w, &mut cache)).collect()
            }
            TestFamily::Exact(space) => space
                .basis
                .iter()
                .map(|be| space.functional_value(e, be))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repbuild::fundamental_sln;

    fn u(rep: &RepRef, i: usize, j: usize) -> CoordElement {
        CoordElement::atom(rep, i, j, false)
    }

    fn us(rep: &RepRef, i: usize, j: usize) -> CoordElement {
        CoordElement::atom(rep, i, j, true)
    }

    #[test]
    fn counit_examples() {
        let rep = fundamental_sln(2);
        assert_eq!(u(&rep, 0, 1).counit(), Scalar::zero());
        assert_eq!(CoordElement::one().counit(), Scalar::one());
        // eps((M^n_m)^i_j) = delta^i_m delta^n_j on the 2-atom word
        let m = us(&rep, 0, 1).mul(&u(&rep, 1, 0)); // m=1,i=2 ; n=2,j=1 (1-based)
        assert_eq!(m.counit(), Scalar::zero());
        let m = us(&rep, 0, 0).mul(&u(&rep, 1, 1));
        assert_eq!(m.counit(), Scalar::one());
    }

    #[test]
    fn k_action_scales_by_weight() {
        let rep = fundamental_sln(2);
        let rs = rep.root_system().clone();
        let e = u(&rep, 0, 1);
        let acted = act_left(Gen::K(0), &e).unwrap();
        let expect = e.scale(&Scalar::q_pow(rs.bilinear(&rs.simple_root(0), rep.weight(1))));
        assert_eq!(acted, expect);
    }

    #[test]
    fn action_on_unit_is_counit() {
        let one = CoordElement::one();
        assert!(act_left(Gen::E(0), &one).unwrap().is_zero());
        assert_eq!(act_left(Gen::K(0), &one).unwrap(), one);
        assert!(act_right(Gen::F(0), &one).unwrap().is_zero());
    }

    #[test]
    fn evaluate_atom_on_k() {
        let rep = fundamental_sln(3);
        for i in 0..3 {
            for j in 0..3 {
                let v = evaluate(&u(&rep, i, j), &UqWord::single(Gen::K(1))).unwrap();
                let expect = rep.pi_gen(Gen::K(1)).at(i, j).as_scalar().unwrap().clone();
                assert_eq!(v, expect);
            }
        }
    }

    #[test]
    fn unit_functional_is_counit() {
        let w = UqWord(vec![Gen::K(0), Gen::E(0)]);
        assert_eq!(evaluate(&CoordElement::one(), &w).unwrap(), Scalar::zero());
        let w = UqWord(vec![Gen::K(0), Gen::KInv(0)]);
        assert_eq!(evaluate(&CoordElement::one(), &w).unwrap(), Scalar::one());
    }

    #[test]
    fn antipode_relation_sum_star_u() {
        // sum_k u^{k*}_a u^k_b = delta^a_b 1, exactly
        let rep = fundamental_sln(2);
        for a in 0..2 {
            for b in 0..2 {
                let mut sum = CoordElement::zero();
                for k in 0..2 {
                    sum = sum.add(&us(&rep, k, a).mul(&u(&rep, k, b)));
                }
                let expect = if a == b { CoordElement::one() } else { CoordElement::zero() };
                assert!(equal_exact(&sum, &expect, 5000).unwrap(), "a={a} b={b}");
                assert!(equal_bounded(&sum, &expect, 3));
            }
        }
    }

    #[test]
    fn weighted_antipode_relation() {
        // sum_k q^{(2rho, lambda_k - lambda_b)} u^k_b u^{k*}_a = delta^a_b 1
        let rep = fundamental_sln(2);
        let rs = rep.root_system().clone();
        let two_rho = rs.two_rho();
        for a in 0..2 {
            for b in 0..2 {
                let mut sum = CoordElement::zero();
                for k in 0..2 {
                    let e = rs.bilinear(&two_rho, &(rep.weight(k) - rep.weight(b)));
                    sum = sum.add(&u(&rep, k, b).mul(&us(&rep, k, a)).scale(&Scalar::q_pow(e)));
                }
                let expect = if a == b { CoordElement::one() } else { CoordElement::zero() };
                assert!(equal_exact(&sum, &expect, 5000).unwrap(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn bounded_agrees_with_exact_on_sl3_relations() {
        // sum_k u^{k*}_a u^k_b = delta 1 at D = 3 on the sl(3) fundamental
        let rep = fundamental_sln(3);
        for a in 0..3 {
            for b in 0..3 {
                let mut sum = CoordElement::zero();
                for k in 0..3 {
                    sum = sum.add(&us(&rep, k, a).mul(&u(&rep, k, b)));
                }
                let expect = if a == b { CoordElement::one() } else { CoordElement::zero() };
                let exact = equal_exact(&sum, &expect, 10000).unwrap();
                let bounded = equal_bounded(&sum, &expect, 3);
                assert!(exact && bounded, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn inequality_detected() {
        let rep = fundamental_sln(2);
        let a = u(&rep, 0, 0);
        let b = u(&rep, 0, 0).add(&u(&rep, 0, 1));
        assert!(!equal_exact(&a, &b, 5000).unwrap());
        assert!(!equal_bounded(&a, &b, 2));
        assert!(!equal_bounded(&CoordElement::one(), &CoordElement::scalar(Scalar::from_int(2)), 0));
    }

    #[test]
    fn budget_exceeded_falls_back() {
        let rep = fundamental_sln(3);
        let mut w = CoordElement::one();
        for _ in 0..4 {
            w = w.mul(&u(&rep, 0, 0));
        }
        // same functional written with commuted Cartan-weight factors
        let other = w.scale(&Scalar::q_pow_frac(1, 1));
        // 4 atoms of a dim-3 rep: endo dim 3^8 = 6561 > 100
        let err = equal_exact(&w, &other, 100);
        assert!(matches!(err, Err(CoordError::BudgetExceeded { .. })));
        let d = decide_equal(&w, &other, &EqConfig { budget: 100, depth: 2 });
        assert!(!d.equal);
        assert_eq!(d.oracle, Oracle::Bounded(2));
        let d2 = decide_equal(&w, &w.clone(), &EqConfig { budget: 100, depth: 2 });
        assert!(d2.equal);
        assert_eq!(d2.oracle, Oracle::Exact);
    }

    #[test]
    fn sigma_twist_composition_and_identity() {
        let rep = fundamental_sln(3);
        let e = us(&rep, 0, 1).mul(&u(&rep, 2, 1));
        let zero = Weight::zero(2);
        assert_eq!(sigma_twist(&zero, &zero, &e), e);
        let l1 = Weight(vec![1, 0]);
        let l2 = Weight(vec![0, 2]);
        let m1 = Weight(vec![2, 1]);
        let m2 = Weight(vec![-1, 1]);
        let once = sigma_twist(&l1, &l2, &sigma_twist(&m1, &m2, &e));
        let combined = sigma_twist(&(&l1 + &m1), &(&l2 + &m2), &e);
        assert_eq!(once, combined);
    }

    #[test]
    fn functional_homomorphism_property() {
        // evaluate(a*b, w) = sum over Delta(w) of evaluate(a,w1)*evaluate(b,w2)
        let rep = fundamental_sln(2);
        let a = u(&rep, 0, 1);
        let b = us(&rep, 1, 1);
        let ab = a.mul(&b);
        for w in [
            UqWord(vec![Gen::E(0)]),
            UqWord(vec![Gen::F(0), Gen::K(0)]),
            UqWord(vec![Gen::E(0), Gen::F(0), Gen::KInv(0)]),
        ] {
            let direct = evaluate_rat(&ab, &w);
            let mut split = RationalScalar::zero();
            for (_, legs) in coproduct_iter(&w, 2) {
                let va = evaluate_rat(&a, &legs[0]);
                let vb = evaluate_rat(&b, &legs[1]);
                split += &(&va * &vb);
            }
            assert_eq!(direct, split, "word {w}");
        }
    }

    #[test]
    fn left_right_actions_commute() {
        let rep = fundamental_sln(2);
        let e = us(&rep, 0, 1).mul(&u(&rep, 1, 0));
        for x in [Gen::E(0), Gen::F(0), Gen::K(0)] {
            for y in [Gen::E(0), Gen::F(0), Gen::KInv(0)] {
                let lr = act_right_rat(y, &act_left_rat(x, &e));
                let rl = act_left_rat(x, &act_right_rat(y, &e));
                assert!(equal_exact(&lr, &rl, 5000).unwrap(), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn counit_left_equals_right() {
        let rep = fundamental_sln(3);
        let e = us(&rep, 1, 2).mul(&u(&rep, 0, 2));
        for a in 0..2 {
            for g in [Gen::E(a), Gen::F(a), Gen::K(a), Gen::KInv(a)] {
                let l = act_left_rat(g, &e).counit_rat();
                let r = act_right_rat(g, &e).counit_rat();
                assert_eq!(l, r, "{g:?}");
            }
        }
    }
}
