//! Exact Laurent polynomials in `q` with rational exponents and rational
//! coefficients, their fraction field, and q-integers.
//!
//! A [`Scalar`] is a finite sum of terms `c * q^e` with `c, e` exact
//! rationals. The canonical form is a sorted term map with zero
//! coefficients removed, so equality is structural. [`RationalScalar`] is
//! the fraction field, reduced to a canonical representative so equality
//! is structural there as well.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial in `q` with rational exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct Scalar {
    terms: BTreeMap<BigRational, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigRational::zero(), c);
        }
        Scalar { terms }
    }

    /// `q^e` for an exact rational exponent.
    pub fn q_pow(e: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        Scalar { terms }
    }

    /// `q^(n/d)`.
    pub fn q_pow_frac(n: i64, d: i64) -> Self {
        Scalar::q_pow(rat(n, d))
    }

    /// `c * q^e`.
    pub fn term(c: BigRational, e: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// Constant term view: `Some(c)` iff the value is a constant `c * q^0`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.is_zero() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, e: BigRational, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitute `q = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().cloned().sum()
    }

    /// Substitute `q -> q^-1` (negate all exponents).
    pub fn bar(&self) -> Self {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.insert_term(-e.clone(), c.clone());
        }
        out
    }

    pub fn min_exp(&self) -> Option<&BigRational> {
        self.terms.keys().next()
    }

    pub fn max_exp(&self) -> Option<&BigRational> {
        self.terms.keys().next_back()
    }

    /// Exact division; errors on a zero divisor or a nonzero remainder.
    pub fn div_exact(&self, den: &Scalar) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        let lcm = exponent_lcm(&[self, den]);
        let (pn, sn) = to_int_poly(self, &lcm);
        let (pd, sd) = to_int_poly(den, &lcm);
        let (q, r) = poly_div_rem(&pn, &pd);
        if !r.is_empty() {
            return Err(ScalarError::InexactDivision);
        }
        Ok(from_int_poly(&q, &lcm, &(sn - sd)))
    }

    /// The quantum integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^-d)`,
    /// expanded as `q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}` for `n > 0`.
    pub fn qnum(n: i64, d: i64) -> Self {
        assert!(d >= 1, "qnum requires d >= 1");
        if n == 0 {
            return Scalar::zero();
        }
        if n < 0 {
            return -Scalar::qnum(-n, d);
        }
        let mut out = Scalar::zero();
        let mut e = d * (n - 1);
        for _ in 0..n {
            out.insert_term(rat(e, 1), BigRational::one());
            e -= 2 * d;
        }
        out
    }

    /// q-factorial `[n]_{q^d}!`.
    pub fn qfact(n: i64, d: i64) -> Self {
        let mut out = Scalar::one();
        for k in 1..=n {
            out = &out * &Scalar::qnum(k, d);
        }
        out
    }

    /// Gaussian binomial coefficient `[n choose k]_{q^d}`.
    pub fn qbinom(n: i64, k: i64, d: i64) -> Self {
        if k < 0 || k > n {
            return Scalar::zero();
        }
        let num = Scalar::qfact(n, d);
        let den = &Scalar::qfact(k, d) * &Scalar::qfact(n - k, d);
        num.div_exact(&den).expect("q-binomial is a Laurent polynomial")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.insert_term(e.clone(), c.clone());
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.insert_term(e.clone(), -c.clone());
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        Scalar { terms }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

// ---------------------------------------------------------------------------
// Integer-exponent polynomial helpers (exponents rescaled by the lcm of the
// exponent denominators; monomial shift so the constant term is nonzero).

fn exponent_lcm(parts: &[&Scalar]) -> BigInt {
    let mut l = BigInt::one();
    for p in parts {
        for e in p.terms.keys() {
            l = l.lcm(e.denom());
        }
    }
    l
}

type IntPoly = BTreeMap<BigInt, BigRational>;

/// Returns the polynomial (nonnegative integer exponents, nonzero constant
/// term) together with the rational exponent shift that was factored out.
fn to_int_poly(s: &Scalar, lcm: &BigInt) -> (IntPoly, BigRational) {
    let min = s.min_exp().cloned().unwrap_or_else(BigRational::zero);
    let mut p = IntPoly::new();
    for (e, c) in &s.terms {
        let scaled = (e - &min) * BigRational::from(lcm.clone());
        debug_assert!(scaled.is_integer());
        p.insert(scaled.to_integer(), c.clone());
    }
    (p, min)
}

fn from_int_poly(p: &IntPoly, lcm: &BigInt, shift: &BigRational) -> Scalar {
    let mut out = Scalar::zero();
    let l = BigRational::from(lcm.clone());
    for (e, c) in p {
        out.insert_term(BigRational::from(e.clone()) / &l + shift, c.clone());
    }
    out
}

fn poly_degree(p: &IntPoly) -> Option<BigInt> {
    p.keys().next_back().cloned()
}

fn poly_div_rem(num: &IntPoly, den: &IntPoly) -> (IntPoly, IntPoly) {
    let dd = poly_degree(den).expect("nonzero divisor");
    let dlead = den[&dd].clone();
    let mut rem = num.clone();
    let mut quo = IntPoly::new();
    while let Some(rd) = poly_degree(&rem) {
        if rd < dd {
            break;
        }
        let c = &rem[&rd] / &dlead;
        let sh = &rd - &dd;
        quo.insert(sh.clone(), c.clone());
        for (e, dc) in den {
            let te = e + &sh;
            let sub = &c * dc;
            let entry = rem.entry(te.clone()).or_insert_with(BigRational::zero);
            *entry -= sub;
            if entry.is_zero() {
                rem.remove(&te);
            }
        }
    }
    (quo, rem)
}

type ZPoly = BTreeMap<BigInt, BigInt>;

/// Clears denominators and divides out the integer content.
fn primitive_zpoly(p: &IntPoly) -> ZPoly {
    if p.is_empty() {
        return ZPoly::new();
    }
    let mut denom_lcm = BigInt::one();
    for c in p.values() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut z: ZPoly = p
        .iter()
        .map(|(e, c)| (e.clone(), (c * BigRational::from(denom_lcm.clone())).to_integer()))
        .collect();
    let mut content = BigInt::zero();
    for c in z.values() {
        content = content.gcd(c);
    }
    if !content.is_one() && !content.is_zero() {
        for c in z.values_mut() {
            *c /= &content;
        }
    }
    z
}

fn zpoly_degree(p: &ZPoly) -> Option<BigInt> {
    p.keys().next_back().cloned()
}

fn zpoly_content(p: &ZPoly) -> BigInt {
    let mut content = BigInt::zero();
    for c in p.values() {
        content = content.gcd(c);
    }
    content
}

fn zpoly_make_primitive(mut p: ZPoly) -> ZPoly {
    let content = zpoly_content(&p);
    if !content.is_one() && !content.is_zero() {
        for c in p.values_mut() {
            *c /= &content;
        }
    }
    p
}

/// Pseudo-remainder of integer polynomials: repeatedly scale by the
/// divisor's leading coefficient and cancel the top term.
fn zpoly_pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = zpoly_degree(b).expect("nonzero divisor");
    let lb = b[&db].clone();
    let mut r = a.clone();
    while let Some(dr) = zpoly_degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[&dr].clone();
        let shift = &dr - &db;
        // r := lb * r - lr * x^shift * b
        let mut next = ZPoly::new();
        for (e, c) in &r {
            next.insert(e.clone(), c * &lb);
        }
        for (e, c) in b {
            let te = e + &shift;
            let entry = next.entry(te.clone()).or_insert_with(BigInt::zero);
            *entry -= c * &lr;
            if entry.is_zero() {
                next.remove(&te);
            }
        }
        r = next;
    }
    r
}

/// Primitive-PRS gcd over Q[t]; the result is monic.
fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut a = primitive_zpoly(a);
    let mut b = primitive_zpoly(b);
    while !b.is_empty() {
        let r = zpoly_make_primitive(zpoly_pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    if a.is_empty() {
        return IntPoly::new();
    }
    let lead = a[&zpoly_degree(&a).unwrap()].clone();
    a.iter()
        .map(|(e, c)| (e.clone(), BigRational::new(c.clone(), lead.clone())))
        .collect()
}

// ---------------------------------------------------------------------------

/// Fraction field of [`Scalar`], kept in a reduced canonical form: the
/// denominator, viewed as a polynomial in `q^{1/L}`, has nonzero constant
/// term, leading coefficient one, and no common factor with the numerator.
/// Structural equality then coincides with field equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalScalar {
    num: Scalar,
    den: Scalar,
}

impl RationalScalar {
    pub fn zero() -> Self {
        RationalScalar { num: Scalar::zero(), den: Scalar::one() }
    }

    pub fn one() -> Self {
        RationalScalar { num: Scalar::one(), den: Scalar::one() }
    }

    pub fn from_scalar(s: Scalar) -> Self {
        RationalScalar { num: s, den: Scalar::one() }
    }

    pub fn new(num: Scalar, den: Scalar) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = RationalScalar { num, den };
        out.reduce();
        Ok(out)
    }

    pub fn numerator(&self) -> &Scalar {
        &self.num
    }

    pub fn denominator(&self) -> &Scalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(scalar)` iff the reduced denominator is 1.
    pub fn as_scalar(&self) -> Option<&Scalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn into_scalar(self) -> Result<Scalar, ScalarError> {
        if self.den.is_one() {
            Ok(self.num)
        } else {
            Err(ScalarError::NotLaurent(self.to_string()))
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = RationalScalar { num: self.den.clone(), den: self.num.clone() };
        out.reduce();
        Ok(out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Scalar::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let lcm = exponent_lcm(&[&self.num, &self.den]);
        let (mut pn, sn) = to_int_poly(&self.num, &lcm);
        let (mut pd, sd) = to_int_poly(&self.den, &lcm);
        if poly_degree(&pd).map_or(false, |d| !d.is_zero()) && !pn.is_empty() {
            let g = poly_gcd(&pn, &pd);
            if poly_degree(&g).map_or(false, |d| !d.is_zero()) {
                pn = poly_div_rem(&pn, &g).0;
                pd = poly_div_rem(&pd, &g).0;
            }
        }
        // make the denominator monic and absorb its monomial into the numerator
        let dlead = pd[&poly_degree(&pd).unwrap()].clone();
        for c in pn.values_mut() {
            *c /= &dlead;
        }
        for c in pd.values_mut() {
            *c /= &dlead;
        }
        self.num = from_int_poly(&pn, &lcm, &(sn - &sd));
        self.den = from_int_poly(&pd, &lcm, &BigRational::zero());
    }
}

impl Default for RationalScalar {
    fn default() -> Self {
        RationalScalar::zero()
    }
}

impl From<Scalar> for RationalScalar {
    fn from(s: Scalar) -> Self {
        RationalScalar::from_scalar(s)
    }
}

impl Add for &RationalScalar {
    type Output = RationalScalar;
    fn add(self, rhs: &RationalScalar) -> RationalScalar {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        let mut out = RationalScalar { num, den };
        out.reduce();
        out
    }
}

impl Sub for &RationalScalar {
    type Output = RationalScalar;
    fn sub(self, rhs: &RationalScalar) -> RationalScalar {
        self + &(-rhs)
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        -&self
    }
}

impl Mul for &RationalScalar {
    type Output = RationalScalar;
    fn mul(self, rhs: &RationalScalar) -> RationalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RationalScalar::zero();
        }
        let mut out = RationalScalar {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        };
        out.reduce();
        out
    }
}

impl AddAssign<&RationalScalar> for RationalScalar {
    fn add_assign(&mut self, rhs: &RationalScalar) {
        *self = &*self + rhs;
    }
}

// ---------------------------------------------------------------------------
// Rendering and parsing

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_exponent(e: &BigRational) -> String {
    if e.is_integer() {
        let n = e.to_integer();
        if n.is_negative() {
            format!("q^({})", n)
        } else {
            format!("q^{}", n)
        }
    } else {
        format!("q^({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for Scalar {
    /// Deterministic rendering in descending exponent order, e.g.
    /// `q^(3/2) - 2*q^(-1) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_coeff(&mag))?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "{}", fmt_exponent(e))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;

    /// Parses the rendering produced by `Display` (whitespace optional).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Scalar::zero();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarError::Parse("empty input".into()));
        }
        if compact == "0" {
            return Ok(out);
        }
        // split into signed term substrings
        let bytes = compact.as_bytes();
        let mut idx = 0;
        while idx < bytes.len() {
            let sign = match bytes[idx] as char {
                '+' => {
                    idx += 1;
                    false
                }
                '-' => {
                    idx += 1;
                    true
                }
                _ => false,
            };
            let start = idx;
            let mut depth = 0;
            while idx < bytes.len() {
                match bytes[idx] as char {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '+' | '-' if depth == 0 && idx > start => break,
                    _ => {}
                }
                idx += 1;
            }
            let term = &compact[start..idx];
            if term.is_empty() {
                return Err(ScalarError::Parse(format!("dangling sign in {s:?}")));
            }
            let (coeff, exp) = parse_term(term)?;
            let c = if sign { -coeff } else { coeff };
            out.insert_term(exp, c);
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim_start_matches('(').trim_end_matches(')');
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| ScalarError::Parse(s.into()))?;
        let d: BigInt = d.parse().map_err(|_| ScalarError::Parse(s.into()))?;
        if d.is_zero() {
            return Err(ScalarError::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| ScalarError::Parse(s.into()))?;
        Ok(BigRational::from(n))
    }
}

fn parse_term(term: &str) -> Result<(BigRational, BigRational), ScalarError> {
    if let Some(qpos) = term.find('q') {
        let coeff = if qpos == 0 {
            BigRational::one()
        } else {
            let cs = term[..qpos].trim_end_matches('*');
            parse_rational(cs)?
        };
        let rest = &term[qpos + 1..];
        let exp = if rest.is_empty() {
            BigRational::one()
        } else if let Some(es) = rest.strip_prefix('^') {
            parse_rational(es)?
        } else {
            return Err(ScalarError::Parse(format!("bad term {term:?}")));
        };
        Ok((coeff, exp))
    } else {
        Ok((parse_rational(term)?, BigRational::zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::q_pow_frac(n, d)
    }

    #[test]
    fn qnum_basics() {
        assert_eq!(Scalar::qnum(1, 1), Scalar::one());
        assert_eq!(Scalar::qnum(-3, 2), -Scalar::qnum(3, 2));
        // expand (q^6 - q^-6)/(q^2 - q^-2) by the division oracle
        let num = &q(6, 1) - &q(-6, 1);
        let den = &q(2, 1) - &q(-2, 1);
        let expect = num.div_exact(&den).unwrap();
        assert_eq!(Scalar::qnum(3, 2), expect);
        assert_eq!(expect, &(&q(4, 1) + &Scalar::one()) + &q(-4, 1));
    }

    #[test]
    fn field_examples() {
        assert_eq!(&q(1, 2) * &q(1, 2), q(1, 1));
        let x = &q(1, 1) - &q(-1, 1);
        assert_eq!(x.div_exact(&x).unwrap(), Scalar::one());
        let num = &q(2, 1) - &q(-2, 1);
        assert_eq!(num.div_exact(&x).unwrap(), &q(1, 1) + &q(-1, 1));
    }

    #[test]
    fn division_errors() {
        let x = &q(1, 1) - &q(-1, 1);
        assert_eq!(x.div_exact(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        let one_plus = &Scalar::one() + &q(1, 1);
        assert_eq!(Scalar::one().div_exact(&one_plus), Err(ScalarError::InexactDivision));
        assert_eq!(
            x.div_exact(&(&one_plus + &q(1, 2))),
            Err(ScalarError::InexactDivision)
        );
    }

    #[test]
    fn rational_scalar_reduction() {
        let num = &q(2, 1) - &q(-2, 1);
        let den = &q(1, 1) - &q(-1, 1);
        let r = RationalScalar::new(num, den).unwrap();
        assert!(r.as_scalar().is_some());
        assert_eq!(r.as_scalar().unwrap(), &(&q(1, 1) + &q(-1, 1)));

        let r2 = RationalScalar::new(Scalar::one(), Scalar::qnum(2, 1)).unwrap();
        assert!(r2.as_scalar().is_none());
        let prod = &r2 * &RationalScalar::from_scalar(Scalar::qnum(2, 1));
        assert!(prod.is_one());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let s = &(&q(3, 2) - &(&Scalar::from_int(2) * &q(-1, 1))) + &Scalar::one();
        assert_eq!(s.to_string(), "q^(3/2) + 1 - 2*q^(-1)");
        assert_eq!("q^(3/2) - 2*q^(-1) + 1".parse::<Scalar>().unwrap(), s);
        let back: Scalar = s.to_string().parse().unwrap();
        assert_eq!(back, s);
        for t in ["0", "-q", "1/2*q^(-3/2) + 7", "q^2 - q^(-2)", "-3/4"] {
            let v: Scalar = t.parse().unwrap();
            let again: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, again);
        }
    }

    #[test]
    fn qbinom_is_laurent() {
        // [4 choose 2]_q = q^4 + q^2 + 2 + q^-2 + q^-4
        let b = Scalar::qbinom(4, 2, 1);
        let expect: Scalar = "q^4 + q^2 + 2 + q^(-2) + q^(-4)".parse().unwrap();
        assert_eq!(b, expect);
    }
}
