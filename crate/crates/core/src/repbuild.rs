//! Finite-dimensional irreducible modules in a weight basis, free words in
//! the generators, and the Hopf operations (iterated coproduct, antipode,
//! inverse antipode) expanded on words.
//!
//! `build_irrep` generates F-monomial vectors breadth-first from a highest
//! weight vector and quotients each weight space by the radical of the
//! contravariant form. The adjointness used is `<F_i x, y> = <x, E_i y>`
//! (the algebra antiautomorphism swapping `E_i` and `F_i` and fixing the
//! Cartan part, which respects the defining relations for this coproduct).
//! The resulting basis is weight-homogeneous and orthogonal, not
//! normalized, so generator matrices live over the fraction field.

use crate::cartan::{CartanError, RootSystem, Weight};
use crate::matrix::RatMatrix;
use crate::scalar::{RationalScalar, Scalar};
use num::rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Clone)]
pub enum RepError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("constructed dimension {got} does not match Weyl dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

// ---------------------------------------------------------------------------
// Free words in the generators

/// Generator atom; root indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl Gen {
    pub fn root(&self) -> usize {
        match self {
            Gen::E(a) | Gen::F(a) | Gen::K(a) | Gen::KInv(a) => *a,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(a) => write!(f, "E{}", a + 1),
            Gen::F(a) => write!(f, "F{}", a + 1),
            Gen::K(a) => write!(f, "K{}", a + 1),
            Gen::KInv(a) => write!(f, "K{}^-1", a + 1),
        }
    }
}

/// Free word over the generator alphabet; no relations are imposed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UqWord(pub Vec<Gen>);

impl UqWord {
    pub fn empty() -> Self {
        UqWord(Vec::new())
    }

    pub fn single(g: Gen) -> Self {
        UqWord(vec![g])
    }

    pub fn concat(&self, rhs: &UqWord) -> UqWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        UqWord(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Counit: 1 on Cartan atoms, 0 if any `E` or `F` occurs.
    pub fn counit(&self) -> Scalar {
        if self.0.iter().any(|g| matches!(g, Gen::E(_) | Gen::F(_))) {
            Scalar::zero()
        } else {
            Scalar::one()
        }
    }
}

impl fmt::Display for UqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Scalar-linear combination of free words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UqElement {
    terms: BTreeMap<UqWord, Scalar>,
}

impl UqElement {
    pub fn zero() -> Self {
        UqElement::default()
    }

    pub fn one() -> Self {
        UqElement::from_word(UqWord::empty())
    }

    pub fn from_word(w: UqWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        UqElement { terms }
    }

    pub fn from_gen(g: Gen) -> Self {
        UqElement::from_word(UqWord::single(g))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UqWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: UqWord, c: Scalar) {
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

    pub fn add(&self, rhs: &UqElement) -> UqElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> UqElement {
        let mut out = UqElement::zero();
        for (w, cw) in &self.terms {
            out.add_term(w.clone(), cw * c);
        }
        out
    }

    pub fn mul(&self, rhs: &UqElement) -> UqElement {
        let mut out = UqElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in &self.terms {
            acc += &(c * &w.counit());
        }
        acc
    }
}

/// Antipode of a generator as a signed word:
/// `S(K) = K^-1`, `S(E_i) = -E_i K_i^-1`, `S(F_i) = -K_i F_i`.
fn antipode_gen(g: Gen) -> (bool, Vec<Gen>) {
    match g {
        Gen::K(a) => (false, vec![Gen::KInv(a)]),
        Gen::KInv(a) => (false, vec![Gen::K(a)]),
        Gen::E(a) => (true, vec![Gen::E(a), Gen::KInv(a)]),
        Gen::F(a) => (true, vec![Gen::K(a), Gen::F(a)]),
    }
}

/// Inverse antipode on generators, solved from the closed antipode forms:
/// `S^-1(E_i) = -K_i^-1 E_i`, `S^-1(F_i) = -F_i K_i`, `S^-1(K) = K^-1`.
fn antipode_inv_gen(g: Gen) -> (bool, Vec<Gen>) {
    match g {
        Gen::K(a) => (false, vec![Gen::KInv(a)]),
        Gen::KInv(a) => (false, vec![Gen::K(a)]),
        Gen::E(a) => (true, vec![Gen::KInv(a), Gen::E(a)]),
        Gen::F(a) => (true, vec![Gen::F(a), Gen::K(a)]),
    }
}

fn expand_antihom(w: &UqWord, f: impl Fn(Gen) -> (bool, Vec<Gen>)) -> UqElement {
    let mut atoms = Vec::new();
    let mut negate = false;
    for g in w.0.iter().rev() {
        let (sign, sub) = f(*g);
        negate ^= sign;
        atoms.extend(sub);
    }
    let coeff = if negate { -Scalar::one() } else { Scalar::one() };
    let mut e = UqElement::zero();
    e.add_term(UqWord(atoms), coeff);
    e
}

/// Antipode of a word, multiplied out (always a single signed word).
pub fn antipode_expand(w: &UqWord) -> UqElement {
    expand_antihom(w, antipode_gen)
}

pub fn antipode_expand_element(e: &UqElement) -> UqElement {
    let mut out = UqElement::zero();
    for (w, c) in e.terms() {
        for (w2, c2) in antipode_expand(w).terms() {
            out.add_term(w2.clone(), c2 * c);
        }
    }
    out
}

/// Inverse antipode of a word, multiplied out.
pub fn antipode_inv_expand(w: &UqWord) -> UqElement {
    expand_antihom(w, antipode_inv_gen)
}

/// Compact-form star `X -> X^*` extended as an antilinear antihomomorphism:
/// `K^* = K`, `E_i^* = K_i F_i`, `F_i^* = E_i K_i^-1`. Coefficients here
/// are rational functions of a real `q`, so conjugation fixes them.
pub fn compact_star(e: &UqElement) -> UqElement {
    let mut out = UqElement::zero();
    for (w, c) in e.terms() {
        let mut atoms = Vec::new();
        for g in w.0.iter().rev() {
            match g {
                Gen::K(a) => atoms.push(Gen::K(*a)),
                Gen::KInv(a) => atoms.push(Gen::KInv(*a)),
                Gen::E(a) => atoms.extend([Gen::K(*a), Gen::F(*a)]),
                Gen::F(a) => atoms.extend([Gen::E(*a), Gen::KInv(*a)]),
            }
        }
        out.add_term(UqWord(atoms), c.clone());
    }
    out
}

/// The (k-1)-fold iterated coproduct of a word, expanded slotwise.
/// `Δ^{(k-1)}(E_i)` puts `E_i` in one slot, `K_i` to its right and 1 to its
/// left; `Δ^{(k-1)}(F_i)` puts `K_i^-1` to the left and 1 to the right;
/// Cartan atoms are group-like.
pub fn coproduct_iter(w: &UqWord, k: usize) -> Vec<(Scalar, Vec<UqWord>)> {
    assert!(k >= 1, "coproduct needs at least one slot");
    let mut terms: Vec<Vec<UqWord>> = vec![vec![UqWord::empty(); k]];
    for g in &w.0 {
        match g {
            Gen::K(_) | Gen::KInv(_) => {
                for t in terms.iter_mut() {
                    for slot in t.iter_mut() {
                        slot.0.push(*g);
                    }
                }
            }
            Gen::E(a) => {
                let mut next = Vec::with_capacity(terms.len() * k);
                for t in &terms {
                    for j in 0..k {
                        let mut nt = t.clone();
                        nt[j].0.push(Gen::E(*a));
                        for slot in nt.iter_mut().skip(j + 1) {
                            slot.0.push(Gen::K(*a));
                        }
                        next.push(nt);
                    }
                }
                terms = next;
            }
            Gen::F(a) => {
                let mut next = Vec::with_capacity(terms.len() * k);
                for t in &terms {
                    for j in 0..k {
                        let mut nt = t.clone();
                        for slot in nt.iter_mut().take(j) {
                            slot.0.push(Gen::KInv(*a));
                        }
                        nt[j].0.push(Gen::F(*a));
                        next.push(nt);
                    }
                }
                terms = next;
            }
        }
    }
    terms.into_iter().map(|t| (Scalar::one(), t)).collect()
}

// ---------------------------------------------------------------------------
// Representations

static REP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub type RepRef = Arc<Rep>;

/// A finite-dimensional module in a weight basis with exact generator
/// matrices over the fraction field.
pub struct Rep {
    id: u64,
    rs: Arc<RootSystem>,
    highest_weight: Weight,
    dim: usize,
    basis_weights: Vec<Weight>,
    e_mats: Vec<RatMatrix>,
    f_mats: Vec<RatMatrix>,
    norm_diag: Vec<RationalScalar>,
    orthonormal: bool,
    label: String,
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep({}, dim {})", self.label, self.dim)
    }
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Rep {}

impl Rep {
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_weights(&self) -> &[Weight] {
        &self.basis_weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.basis_weights[i]
    }

    pub fn norm_diag(&self) -> &[RationalScalar] {
        &self.norm_diag
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Basis indices carrying a given weight.
    pub fn indices_of_weight(&self, w: &Weight) -> Vec<usize> {
        (0..self.dim).filter(|&i| &self.basis_weights[i] == w).collect()
    }

    /// Multiplicity map of the weight diagram, in basis order.
    pub fn weight_multiplicities(&self) -> Vec<(Weight, usize)> {
        let mut out: Vec<(Weight, usize)> = Vec::new();
        for w in &self.basis_weights {
            if let Some(entry) = out.iter_mut().find(|(v, _)| v == w) {
                entry.1 += 1;
            } else {
                out.push((w.clone(), 1));
            }
        }
        out
    }

    /// `q^{(lambda, lambda_i)}` diagonal of `pi(K_lambda)`; `sign = -1`
    /// gives the inverse.
    pub fn k_weight_diag(&self, lambda: &Weight, sign: i64) -> Vec<Scalar> {
        self.basis_weights
            .iter()
            .map(|mu| {
                let e = self.rs.bilinear(lambda, mu) * BigRational::from(num::BigInt::from(sign));
                Scalar::q_pow(e)
            })
            .collect()
    }

    pub fn pi_gen(&self, g: Gen) -> RatMatrix {
        match g {
            Gen::E(a) => self.e_mats[a].clone(),
            Gen::F(a) => self.f_mats[a].clone(),
            Gen::K(a) => RatMatrix::diagonal_scalar(&self.k_weight_diag(&self.rs.simple_root(a), 1)),
            Gen::KInv(a) => {
                RatMatrix::diagonal_scalar(&self.k_weight_diag(&self.rs.simple_root(a), -1))
            }
        }
    }

    /// `pi` of a free word by multiplicative extension.
    pub fn pi_word(&self, w: &UqWord) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dim);
        for g in &w.0 {
            m = m.mul(&self.pi_gen(*g));
        }
        m
    }

    pub fn pi(&self, e: &UqElement) -> RatMatrix {
        let mut m = RatMatrix::zero(self.dim);
        for (w, c) in e.terms() {
            let mw = self.pi_word(w).scale(&RationalScalar::from_scalar(c.clone()));
            m = m.add(&mw);
        }
        m
    }
}

type SparseVec = Vec<(usize, RationalScalar)>;

fn sparse_add_scaled(dst: &mut BTreeMap<usize, RationalScalar>, src: &SparseVec, c: &RationalScalar) {
    if c.is_zero() {
        return;
    }
    for (idx, v) in src {
        let add = v * c;
        let entry = dst.entry(*idx).or_default();
        *entry += &add;
        if entry.is_zero() {
            dst.remove(idx);
        }
    }
}

fn sparse_from_map(m: BTreeMap<usize, RationalScalar>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Builds the irreducible module of a dominant highest weight.
pub fn build_irrep(rs: &Arc<RootSystem>, hw: &Weight) -> Result<RepRef, RepError> {
    rs.check_rank(hw)?;
    if !hw.is_dominant() {
        return Err(RepError::Cartan(CartanError::NotDominant(hw.to_string())));
    }
    let expected = rs.weyl_dim(hw)?;
    let rank = rs.rank();

    let mut weights: Vec<Weight> = vec![hw.clone()];
    let mut norms: Vec<RationalScalar> = vec![RationalScalar::one()];
    // e_act[a][t] / f_act[a][t]: sparse action vectors on basis vector t
    let mut e_act: Vec<Vec<SparseVec>> = vec![vec![Vec::new()]; rank];
    let mut f_act: Vec<Vec<SparseVec>> = vec![Vec::new(); rank];

    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        // candidates F_a b_t in deterministic order, grouped by weight
        struct Cand {
            root: usize,
            src: usize,
        }
        let mut groups: Vec<(Weight, Vec<Cand>)> = Vec::new();
        for &t in &frontier {
            for a in 0..rank {
                let w = &weights[t] - &rs.simple_root(a);
                let cand = Cand { root: a, src: t };
                if let Some(g) = groups.iter_mut().find(|(gw, _)| gw == &w) {
                    g.1.push(cand);
                } else {
                    groups.push((w, vec![cand]));
                }
            }
        }

        for a in 0..rank {
            for _ in &frontier {
                f_act[a].push(Vec::new());
            }
        }
        let frontier_base: BTreeMap<usize, usize> =
            frontier.iter().enumerate().map(|(pos, &t)| (t, pos)).collect();
        // f_act index bookkeeping: basis vector t has f_act slot t, allocate
        // above for frontier members only if missing
        for a in 0..rank {
            // ensure slots exist for every current basis vector
            while f_act[a].len() < weights.len() {
                f_act[a].push(Vec::new());
            }
        }
        let _ = frontier_base;

        let mut next_frontier: Vec<usize> = Vec::new();

        for (mu, cands) in groups {
            let s = cands.len();
            // E_j applied to each candidate, as vectors over the existing basis:
            // E_j(F_a b) = F_a(E_j b) + delta_{ja} [ <wt(b), alpha_j^vee> ]_{q_j} b
            let mut e_of_cand: Vec<Vec<SparseVec>> = Vec::with_capacity(s);
            for cand in &cands {
                let mut per_root = Vec::with_capacity(rank);
                for j in 0..rank {
                    let mut acc: BTreeMap<usize, RationalScalar> = BTreeMap::new();
                    for (mid, coeff) in &e_act[j][cand.src] {
                        sparse_add_scaled(&mut acc, &f_act[cand.root][*mid], coeff);
                    }
                    if j == cand.root {
                        let m = weights[cand.src].coroot_coord(j);
                        let c = RationalScalar::from_scalar(Scalar::qnum(m, rs.symmetrizer(j)));
                        sparse_add_scaled(&mut acc, &vec![(cand.src, RationalScalar::one())], &c);
                    }
                    per_root.push(sparse_from_map(acc));
                }
                e_of_cand.push(per_root);
            }

            // Gram matrix of the candidates via <F_a b_t, c> = <b_t, E_a c>
            let mut gram = vec![vec![RationalScalar::zero(); s]; s];
            for (u, cand) in cands.iter().enumerate() {
                for v in 0..s {
                    let ev = &e_of_cand[v][cand.root];
                    let coeff = ev
                        .iter()
                        .find(|(idx, _)| *idx == cand.src)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_default();
                    gram[u][v] = &coeff * &norms[cand.src];
                }
            }
            for u in 0..s {
                for v in 0..u {
                    debug_assert_eq!(gram[u][v], gram[v][u], "contravariant form must be symmetric");
                }
            }

            // Gram-Schmidt with radical detection. Unitarizability at real q
            // guarantees that a zero self-pairing inside the candidate span
            // lies in the radical.
            let mut kept_rows: Vec<Vec<RationalScalar>> = Vec::new();
            let mut kept_norms: Vec<RationalScalar> = Vec::new();
            let mut kept_global: Vec<usize> = Vec::new();
            for (u, cand) in cands.iter().enumerate() {
                let mut row = vec![RationalScalar::zero(); s];
                row[u] = RationalScalar::one();
                let mut expansion: SparseVec = Vec::new();
                for (kv, krow) in kept_rows.iter().enumerate() {
                    // <w_kv, c_u> = sum_x krow[x] * gram[x][u]
                    let mut ip = RationalScalar::zero();
                    for (x, rx) in krow.iter().enumerate() {
                        if !rx.is_zero() && !gram[x][u].is_zero() {
                            ip += &(rx * &gram[x][u]);
                        }
                    }
                    if ip.is_zero() {
                        continue;
                    }
                    let coeff = ip.div(&kept_norms[kv]).expect("kept norms are nonzero");
                    for x in 0..s {
                        if !krow[x].is_zero() {
                            let sub = &krow[x] * &coeff;
                            row[x] = &row[x] - &sub;
                        }
                    }
                    expansion.push((kept_global[kv], coeff));
                }
                // <w, w> = row . gram . row
                let mut nn = RationalScalar::zero();
                for x in 0..s {
                    if row[x].is_zero() {
                        continue;
                    }
                    for y in 0..s {
                        if !row[y].is_zero() && !gram[x][y].is_zero() {
                            nn += &(&(&row[x] * &gram[x][y]) * &row[y]);
                        }
                    }
                }
                if !nn.is_zero() {
                    let g = weights.len();
                    weights.push(mu.clone());
                    norms.push(nn);
                    kept_rows.push(row);
                    kept_norms.push(norms[g].clone());
                    kept_global.push(g);
                    next_frontier.push(g);
                    expansion.push((g, RationalScalar::one()));
                    // E actions of the new basis vector
                    for j in 0..rank {
                        let mut acc: BTreeMap<usize, RationalScalar> = BTreeMap::new();
                        let krow = kept_rows.last().unwrap();
                        for (x, rx) in krow.iter().enumerate() {
                            sparse_add_scaled(&mut acc, &e_of_cand[x][j], rx);
                        }
                        e_act[j].push(sparse_from_map(acc));
                    }
                }
                expansion.sort_by_key(|(idx, _)| *idx);
                f_act[cand.root][cand.src] = expansion;
            }
        }

        frontier = next_frontier;
    }

    let dim = weights.len();
    if dim != expected {
        return Err(RepError::DimensionMismatch { expected, got: dim });
    }
    for a in 0..rank {
        while f_act[a].len() < dim {
            f_act[a].push(Vec::new());
        }
        while e_act[a].len() < dim {
            e_act[a].push(Vec::new());
        }
    }

    let mut e_mats = Vec::with_capacity(rank);
    let mut f_mats = Vec::with_capacity(rank);
    for a in 0..rank {
        let mut em = RatMatrix::zero(dim);
        let mut fm = RatMatrix::zero(dim);
        for t in 0..dim {
            for (row, c) in &e_act[a][t] {
                *em.at_mut(*row, t) = c.clone();
            }
            for (row, c) in &f_act[a][t] {
                *fm.at_mut(*row, t) = c.clone();
            }
        }
        e_mats.push(em);
        f_mats.push(fm);
    }

    let label = format!("{}[{}]", rs.name(), hw);
    Ok(Arc::new(Rep {
        id: REP_COUNTER.fetch_add(1, Ordering::Relaxed),
        rs: Arc::clone(rs),
        highest_weight: hw.clone(),
        dim,
        basis_weights: weights,
        e_mats,
        f_mats,
        norm_diag: norms,
        orthonormal: false,
        label,
    }))
}

/// The orthonormal realization of the vector representation of
/// `U_q(sl(N))` on `C^N`:
/// `pi(K_k) v_i = q^{delta_{i,k} - delta_{i,k+1}} v_i`,
/// `pi(E_k) v_i = delta_i^{k+1} q^{-1/2} v_{i-1}`,
/// `pi(F_k) v_i = delta_i^k q^{1/2} v_{i+1}`,
/// highest weight vector `v_1`, weights `lambda_i = omega_i - omega_{i-1}`.
/// Memoized per `N`, so repeated callers share one handle.
pub fn fundamental_sln(n: usize) -> RepRef {
    use std::sync::Mutex;
    static CACHE: Mutex<BTreeMap<usize, RepRef>> = Mutex::new(BTreeMap::new());
    let mut cache = CACHE.lock().unwrap();
    if let Some(rep) = cache.get(&n) {
        return rep.clone();
    }
    let rep = fundamental_sln_uncached(n);
    cache.insert(n, rep.clone());
    rep
}

fn fundamental_sln_uncached(n: usize) -> RepRef {
    assert!(n >= 2, "fundamental_sln requires N >= 2");
    let rank = n - 1;
    let rs = Arc::new(RootSystem::new(crate::cartan::Series::A, rank).unwrap());
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut coords = vec![0i64; rank];
        if i < rank {
            coords[i] += 1;
        }
        if i >= 1 && i - 1 < rank {
            coords[i - 1] -= 1;
        }
        weights.push(Weight(coords));
    }
    let qh = RationalScalar::from_scalar(Scalar::q_pow_frac(1, 2));
    let qhinv = RationalScalar::from_scalar(Scalar::q_pow_frac(-1, 2));
    let mut e_mats = Vec::with_capacity(rank);
    let mut f_mats = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut em = RatMatrix::zero(n);
        let mut fm = RatMatrix::zero(n);
        // E_k v_{k+2} = q^{-1/2} v_{k+1} in 1-based labels; 0-based: column k+1 -> row k
        *em.at_mut(k, k + 1) = qhinv.clone();
        *fm.at_mut(k + 1, k) = qh.clone();
        e_mats.push(em);
        f_mats.push(fm);
    }
    let label = format!("sl({n})-fund");
    Arc::new(Rep {
        id: REP_COUNTER.fetch_add(1, Ordering::Relaxed),
        rs,
        highest_weight: Weight::fundamental(rank, 0),
        dim: n,
        basis_weights: weights,
        e_mats,
        f_mats,
        norm_diag: vec![RationalScalar::one(); n],
        orthonormal: true,
        label,
    })
}

// ---------------------------------------------------------------------------
// Relation checks on built matrices

/// `pi(K_i) pi(X_j) pi(K_i)^-1 = q_i^{±a_ij} pi(X_j)` for `X = E, F`.
pub fn check_k_conjugation(rep: &Rep) -> bool {
    let rs = rep.root_system();
    for i in 0..rs.rank() {
        let k = rep.pi_gen(Gen::K(i));
        let kinv = rep.pi_gen(Gen::KInv(i));
        for j in 0..rs.rank() {
            let qa = Scalar::q_pow(BigRational::from(num::BigInt::from(
                rs.symmetrizer(i) * rs.cartan_matrix()[i][j],
            )));
            let e = rep.pi_gen(Gen::E(j));
            let lhs = k.mul(&e).mul(&kinv);
            if lhs != e.scale(&RationalScalar::from_scalar(qa.clone())) {
                return false;
            }
            let f = rep.pi_gen(Gen::F(j));
            let lhs = k.mul(&f).mul(&kinv);
            let qa_inv = Scalar::q_pow(BigRational::from(num::BigInt::from(
                -rs.symmetrizer(i) * rs.cartan_matrix()[i][j],
            )));
            if lhs != f.scale(&RationalScalar::from_scalar(qa_inv)) {
                return false;
            }
        }
    }
    true
}

/// `[E_i, F_j] = delta_ij (K_i - K_i^-1)/(q_i - q_i^-1)` as matrices.
pub fn check_ef_relation(rep: &Rep) -> bool {
    let rs = rep.root_system();
    for i in 0..rs.rank() {
        for j in 0..rs.rank() {
            let e = rep.pi_gen(Gen::E(i));
            let f = rep.pi_gen(Gen::F(j));
            let lhs = e.mul(&f).sub(&f.mul(&e));
            let rhs = if i == j {
                let diag: Vec<Scalar> = rep
                    .basis_weights()
                    .iter()
                    .map(|mu| Scalar::qnum(mu.coroot_coord(i), rs.symmetrizer(i)))
                    .collect();
                RatMatrix::diagonal_scalar(&diag)
            } else {
                RatMatrix::zero(rep.dim())
            };
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Quantum Serre relations as matrix identities.
pub fn check_serre(rep: &Rep) -> bool {
    let rs = rep.root_system();
    for i in 0..rs.rank() {
        for j in 0..rs.rank() {
            if i == j {
                continue;
            }
            let n = 1 - rs.cartan_matrix()[i][j];
            for (xi, xj) in [(Gen::E(i), Gen::E(j)), (Gen::F(i), Gen::F(j))] {
                let mi = rep.pi_gen(xi);
                let mj = rep.pi_gen(xj);
                let mut acc = RatMatrix::zero(rep.dim());
                for k in 0..=n {
                    let mut coeff = Scalar::qbinom(n, k, rs.symmetrizer(i));
                    if k % 2 == 1 {
                        coeff = -coeff;
                    }
                    let mut m = RatMatrix::identity(rep.dim());
                    for _ in 0..(n - k) {
                        m = m.mul(&mi);
                    }
                    m = m.mul(&mj);
                    for _ in 0..k {
                        m = m.mul(&mi);
                    }
                    acc = acc.add(&m.scale(&RationalScalar::from_scalar(coeff)));
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `pi(S^2(X)) = pi(K_2rho) pi(X) pi(K_2rho)^-1` on the generators.
pub fn check_s_squared(rep: &Rep) -> bool {
    let rs = rep.root_system();
    let two_rho = rs.two_rho();
    let kd = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, 1));
    let kdinv = RatMatrix::diagonal_scalar(&rep.k_weight_diag(&two_rho, -1));
    for a in 0..rs.rank() {
        for g in [Gen::E(a), Gen::F(a), Gen::K(a), Gen::KInv(a)] {
            let ss = antipode_expand_element(&antipode_expand(&UqWord::single(g)));
            let lhs = rep.pi(&ss);
            let rhs = kd.mul(&rep.pi_gen(g)).mul(&kdinv);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `pi(S(S^-1(X))) = pi(X)` on the generators.
pub fn check_antipode_inverse(rep: &Rep) -> bool {
    for a in 0..rep.root_system().rank() {
        for g in [Gen::E(a), Gen::F(a), Gen::K(a), Gen::KInv(a)] {
            let si = antipode_inv_expand(&UqWord::single(g));
            let back = antipode_expand_element(&si);
            if rep.pi(&back) != rep.pi_gen(g) {
                return false;
            }
        }
    }
    true
}

pub fn check_all_relations(rep: &Rep) -> bool {
    check_k_conjugation(rep)
        && check_ef_relation(rep)
        && check_serre(rep)
        && check_s_squared(rep)
        && check_antipode_inverse(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    fn rs(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(name).unwrap())
    }

    #[test]
    fn a1_fundamental_by_hand() {
        let a1 = rs("A1");
        let rep = build_irrep(&a1, &Weight(vec![1])).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.basis_weights(), &[Weight(vec![1]), Weight(vec![-1])]);
        // E is a single raising entry
        let e = rep.pi_gen(Gen::E(0));
        assert!(!e.at(0, 1).is_zero());
        assert!(e.at(1, 0).is_zero() && e.at(0, 0).is_zero() && e.at(1, 1).is_zero());
        assert!(check_all_relations(&rep));
    }

    #[test]
    fn a2_adjoint_structure() {
        let a2 = rs("A2");
        let rep = build_irrep(&a2, &Weight(vec![1, 1])).unwrap();
        assert_eq!(rep.dim(), 8);
        let zero_mult = rep.indices_of_weight(&Weight(vec![0, 0])).len();
        assert_eq!(zero_mult, 2);
        assert!(check_all_relations(&rep));
    }

    #[test]
    fn dims_match_weyl() {
        for (name, w) in [
            ("A1", vec![4]),
            ("A2", vec![2, 1]),
            ("A3", vec![1, 0, 0]),
            ("A3", vec![0, 1, 0]),
            ("B2", vec![1, 1]),
            ("G2", vec![1, 0]),
        ] {
            let r = rs(name);
            let hw = Weight(w);
            let rep = build_irrep(&r, &hw).unwrap();
            assert_eq!(rep.dim(), r.weyl_dim(&hw).unwrap(), "{name}[{hw}]");
            assert!(check_all_relations(&rep), "{name}[{hw}]");
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let a2 = rs("A2");
        assert!(build_irrep(&a2, &Weight(vec![1, -1])).is_err());
    }

    #[test]
    fn fundamental_sln_matches_general_construction() {
        for n in 2..=4 {
            let hard = fundamental_sln(n);
            assert!(hard.is_orthonormal());
            assert!(check_all_relations(&hard));
            let built = build_irrep(
                &Arc::new(RootSystem::new(Series::A, n - 1).unwrap()),
                &Weight::fundamental(n - 1, 0),
            )
            .unwrap();
            assert_eq!(hard.dim(), built.dim());
            assert_eq!(hard.basis_weights(), built.basis_weights());
        }
    }

    #[test]
    fn fundamental_sln_paper_formulas() {
        let rep = fundamental_sln(3);
        // pi(K_k) v_i = q^{delta_ik - delta_{i,k+1}} v_i
        for k in 0..2 {
            let m = rep.pi_gen(Gen::K(k));
            for i in 0..3 {
                let mut e = 0i64;
                if i == k {
                    e += 1;
                }
                if i == k + 1 {
                    e -= 1;
                }
                assert_eq!(
                    m.at(i, i).as_scalar().unwrap(),
                    &Scalar::q_pow_frac(e, 1)
                );
            }
        }
        // pi(F_k) v_i = delta_i^k q^{1/2} v_{i+1}
        let f = rep.pi_gen(Gen::F(0));
        assert_eq!(f.at(1, 0).as_scalar().unwrap(), &Scalar::q_pow_frac(1, 2));
        // highest weight vector is v_1
        assert_eq!(rep.weight(0), &Weight::fundamental(2, 0));
    }

    #[test]
    fn pi_k_lambda_diagonal() {
        let rep = fundamental_sln(3);
        let rs = rep.root_system().clone();
        let lam = Weight(vec![2, 1]);
        let diag = rep.k_weight_diag(&lam, 1);
        for (i, d) in diag.iter().enumerate() {
            assert_eq!(d, &Scalar::q_pow(rs.bilinear(&lam, rep.weight(i))));
        }
    }

    #[test]
    fn pi_multiplicative_and_empty_word() {
        let rep = build_irrep(&rs("A1"), &Weight(vec![2])).unwrap();
        assert_eq!(rep.pi_word(&UqWord::empty()), RatMatrix::identity(3));
        let w1 = UqWord(vec![Gen::E(0), Gen::F(0)]);
        let w2 = UqWord(vec![Gen::K(0)]);
        assert_eq!(
            rep.pi_word(&w1.concat(&w2)),
            rep.pi_word(&w1).mul(&rep.pi_word(&w2))
        );
    }

    #[test]
    fn antipode_on_generators() {
        let s_k = antipode_expand(&UqWord::single(Gen::K(0)));
        assert_eq!(s_k, UqElement::from_word(UqWord::single(Gen::KInv(0))));
        let s_f = antipode_expand(&UqWord::single(Gen::F(0)));
        let mut expect = UqElement::zero();
        expect.add_term(UqWord(vec![Gen::K(0), Gen::F(0)]), -Scalar::one());
        assert_eq!(s_f, expect);
    }

    #[test]
    fn coproduct_examples() {
        // Delta(K) = K (x) K, one term
        let t = coproduct_iter(&UqWord::single(Gen::K(0)), 2);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1, vec![UqWord::single(Gen::K(0)), UqWord::single(Gen::K(0))]);
        // Delta(F) = F (x) 1 + K^-1 (x) F
        let t = coproduct_iter(&UqWord::single(Gen::F(0)), 2);
        assert_eq!(t.len(), 2);
        assert!(t.iter().any(|(_, l)| l == &vec![UqWord::single(Gen::F(0)), UqWord::empty()]));
        assert!(t
            .iter()
            .any(|(_, l)| l == &vec![UqWord::single(Gen::KInv(0)), UqWord::single(Gen::F(0))]));
        // Delta2(E) = E(x)K(x)K + 1(x)E(x)K + 1(x)1(x)E
        let t = coproduct_iter(&UqWord::single(Gen::E(0)), 3);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn coproduct_coassociativity() {
        // iterating the 2-fold coproduct in either slot agrees with the 3-fold one
        let w = UqWord(vec![Gen::E(0), Gen::F(1), Gen::K(0)]);
        let rank = 2;
        let direct: std::collections::BTreeSet<Vec<UqWord>> =
            coproduct_iter(&w, 3).into_iter().map(|(_, t)| t).collect();
        let mut via_left = std::collections::BTreeSet::new();
        for (_, pair) in coproduct_iter(&w, 2) {
            for (_, left) in coproduct_iter(&pair[0], 2) {
                via_left.insert(vec![left[0].clone(), left[1].clone(), pair[1].clone()]);
            }
        }
        assert_eq!(direct, via_left);
        let _ = rank;
    }

    #[test]
    fn s_squared_is_ad_k2rho() {
        for (name, w) in [("A1", vec![2]), ("A2", vec![1, 1]), ("B2", vec![0, 1])] {
            let rep = build_irrep(&rs(name), &Weight(w)).unwrap();
            assert!(check_s_squared(&rep));
        }
        assert!(check_s_squared(&fundamental_sln(4)));
    }

    #[test]
    fn sln_two_rho_pairing() {
        // (2 rho, lambda_m) = N - 2m + 1 in 1-based labels
        for n in 2..=5 {
            let rep = fundamental_sln(n);
            let rs = rep.root_system();
            for m in 1..=n {
                let v = rs.bilinear(&rs.two_rho(), rep.weight(m - 1));
                assert_eq!(
                    v,
                    BigRational::from(num::BigInt::from(n as i64 - 2 * m as i64 + 1))
                );
            }
        }
    }
}
