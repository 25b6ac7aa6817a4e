//! Sparse multivariate (Laurent) polynomial arithmetic over an exact
//! coefficient ring.
//!
//! Polynomials are stored as a map from exponent vectors to nonzero
//! coefficients, ordered by graded-lexicographic order. Variables flagged
//! invertible in the [`RingSignature`] may carry negative exponents.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring bound. Instantiated with `BigInt` throughout the crate;
/// small integer types work for tests.
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::AddAssign
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + fmt::Debug
        + Zero
        + One
        + std::ops::Neg<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::AddAssign
{
}

/// Names the variables of the ambient ring and flags which ones are
/// invertible (i.e. may appear with negative exponents).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSignature {
    names: Vec<String>,
    invertible: Vec<bool>,
}

impl RingSignature {
    pub fn new<S: Into<String>>(names: Vec<S>, invertible: Vec<bool>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert_eq!(names.len(), invertible.len());
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(RingSignature { names, invertible }))
    }

    /// Ordinary polynomial ring: no invertible variables.
    pub fn poly_ring<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let n = names.len();
        Self::new(names, vec![false; n]).expect("distinct names")
    }

    /// Ring `prefix1 .. prefixk`, all non-invertible.
    pub fn indexed(prefix: &str, count: usize) -> Arc<Self> {
        Self::poly_ring((1..=count).map(|k| format!("{prefix}{k}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn invertible(&self) -> &[bool] {
        &self.invertible
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector of a monomial. Ordered by graded-lexicographic order:
/// total degree first, ties broken lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn neg(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|e| -e).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in canonical form: no zero coefficients,
/// exponent vectors conforming to the signature. Laurent polynomials are the
/// same type with invertible-flagged variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly<C: Coeff> {
    sig: Arc<RingSignature>,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(sig: &Arc<RingSignature>) -> Self {
        MPoly {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &Arc<RingSignature>, c: C) -> Self {
        let mut p = Self::zero(sig);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(sig.len()), c);
        }
        p
    }

    pub fn one(sig: &Arc<RingSignature>) -> Self {
        Self::constant(sig, C::one())
    }

    /// Single-term polynomial. Checks exponent-vector length and the
    /// invertibility of every negatively-raised variable.
    pub fn monomial(sig: &Arc<RingSignature>, exps: Vec<i64>, coeff: C) -> Result<Self> {
        if exps.len() != sig.len() {
            return Err(Error::ExponentLength {
                expected: sig.len(),
                got: exps.len(),
            });
        }
        for (k, &e) in exps.iter().enumerate() {
            if e < 0 && !sig.invertible[k] {
                return Err(Error::NegativeExponent(sig.names[k].clone()));
            }
        }
        let mut p = Self::zero(sig);
        if !coeff.is_zero() {
            p.terms.insert(ExponentVector(exps), coeff);
        }
        Ok(p)
    }

    /// The variable with the given index, as a polynomial.
    pub fn variable(sig: &Arc<RingSignature>, idx: usize) -> Self {
        let mut exps = vec![0; sig.len()];
        exps[idx] = 1;
        Self::monomial(sig, exps, C::one()).expect("exponent 1 is always valid")
    }

    pub fn signature(&self) -> &Arc<RingSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.is_zero() && c.clone() == C::one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    /// Greatest term in graded-lex order, if nonzero.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &C)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[i64]) -> Option<&C> {
        self.terms.get(&ExponentVector(exps.to_vec()))
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    fn insert_add(acc: &mut HashMap<ExponentVector, C>, exp: ExponentVector, c: C) {
        if let Some(slot) = acc.get_mut(&exp) {
            *slot += c;
        } else {
            acc.insert(exp, c);
        }
    }

    fn from_accumulator(sig: Arc<RingSignature>, acc: HashMap<ExponentVector, C>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { sig, terms }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.get_mut(e) {
                Some(slot) => {
                    *slot += c.clone();
                    if slot.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        Ok(MPoly {
            sig: self.sig.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut acc = HashMap::with_capacity(self.terms.len().max(other.terms.len()));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                Self::insert_add(&mut acc, ea.add(eb), ca.clone() * cb.clone());
            }
        }
        Ok(Self::from_accumulator(self.sig.clone(), acc))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        MPoly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.clone() * c.clone()))
                .filter(|(_, k)| !k.is_zero())
                .collect(),
        }
    }

    /// Nonnegative power by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.sig);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base).expect("same signature");
            }
            base = base.checked_mul(&base).expect("same signature");
            k >>= 1;
        }
        result
    }

    /// Power with possibly negative exponent. Negative powers require a unit
    /// monomial supported on invertible variables.
    pub fn checked_pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(u32::try_from(k).map_err(|_| Error::OutOfRange(k.to_string()))?))
        } else {
            let inv = self.invert_monomial()?;
            Ok(inv.pow(u32::try_from(-k).map_err(|_| Error::OutOfRange(k.to_string()))?))
        }
    }

    /// Inverse of a single-term unit: the coefficient must be its own inverse
    /// (`c * c = 1`) and every variable appearing must be invertible.
    pub fn invert_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let (exp, c) = self.terms.iter().next().expect("one term");
        if c.clone() * c.clone() != C::one() {
            return Err(Error::NotInvertible);
        }
        for (k, &e) in exp.0.iter().enumerate() {
            if e != 0 && !self.sig.invertible[k] {
                return Err(Error::NegativeExponent(self.sig.names[k].clone()));
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(exp.neg(), c.clone());
        Ok(MPoly {
            sig: self.sig.clone(),
            terms,
        })
    }

    /// Ring-homomorphic substitution: variable `k` of `self` is replaced by
    /// `images[k]`. All images must share one target signature. A variable
    /// occurring with a negative exponent must map to an invertible unit
    /// monomial.
    pub fn substitute(&self, images: &[MPoly<C>]) -> Result<MPoly<C>> {
        if images.len() != self.sig.len() {
            let missing = self
                .sig
                .names
                .get(images.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::MissingImage(missing));
        }
        let target = match images.first() {
            Some(img) => img.sig.clone(),
            None => self.sig.clone(), // constant in a 0-variable ring
        };
        if images.iter().any(|img| img.sig != target) {
            return Err(Error::SignatureMismatch);
        }
        // Per-call cache of image powers, keyed by (variable, exponent).
        let mut pow_cache: Vec<HashMap<i64, MPoly<C>>> =
            (0..images.len()).map(|_| HashMap::new()).collect();
        let mut acc: HashMap<ExponentVector, C> = HashMap::new();
        for (exp, coeff) in &self.terms {
            let mut term_val = MPoly::constant(&target, coeff.clone());
            for (k, &e) in exp.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !pow_cache[k].contains_key(&e) {
                    let p = images[k].checked_pow(e)?;
                    pow_cache[k].insert(e, p);
                }
                term_val = term_val.checked_mul(&pow_cache[k][&e])?;
            }
            for (e, c) in term_val.terms {
                Self::insert_add(&mut acc, e, c);
            }
        }
        Ok(Self::from_accumulator(target, acc))
    }

    /// Specialize one variable to 1 (drop its exponent, merge like terms).
    pub fn set_var_to_one(&self, idx: usize) -> Self {
        let mut acc: HashMap<ExponentVector, C> = HashMap::new();
        for (exp, c) in &self.terms {
            let mut e = exp.clone();
            e.0[idx] = 0;
            Self::insert_add(&mut acc, e, c.clone());
        }
        Self::from_accumulator(self.sig.clone(), acc)
    }

    /// Transport into another ring along an injective variable map:
    /// old variable `k` becomes `map[k]` in `new_sig`. Every variable that
    /// actually occurs must be mapped compatibly with invertibility.
    pub fn remap_vars(&self, new_sig: &Arc<RingSignature>, map: &[usize]) -> Result<MPoly<C>> {
        assert_eq!(map.len(), self.sig.len());
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut e = vec![0i64; new_sig.len()];
            for (k, &old) in exp.0.iter().enumerate() {
                if old == 0 {
                    continue;
                }
                let j = *map
                    .get(k)
                    .filter(|&&j| j < new_sig.len())
                    .ok_or_else(|| Error::OutOfRange(self.sig.names[k].clone()))?;
                if old < 0 && !new_sig.invertible[j] {
                    return Err(Error::NegativeExponent(new_sig.names[j].clone()));
                }
                e[j] += old;
            }
            terms.insert(ExponentVector(e), c.clone());
        }
        Ok(MPoly {
            sig: new_sig.clone(),
            terms,
        })
    }

    /// Evaluate at ring elements of `C` (nonnegative exponents only).
    pub fn eval(&self, vals: &[C]) -> Result<C> {
        if vals.len() != self.sig.len() {
            return Err(Error::ExponentLength {
                expected: self.sig.len(),
                got: vals.len(),
            });
        }
        let mut total = C::zero();
        for (exp, coeff) in &self.terms {
            let mut v = coeff.clone();
            for (k, &e) in exp.0.iter().enumerate() {
                if e < 0 {
                    return Err(Error::NegativeExponent(self.sig.names[k].clone()));
                }
                for _ in 0..e {
                    v = v * vals[k].clone();
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

// Operator sugar for same-ring arithmetic; panics on signature mismatch.
impl<C: Coeff> std::ops::Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        self.checked_add(rhs).expect("signature mismatch in +")
    }
}

impl<C: Coeff> std::ops::Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        self.checked_sub(rhs).expect("signature mismatch in -")
    }
}

impl<C: Coeff> std::ops::Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        self.checked_mul(rhs).expect("signature mismatch in *")
    }
}

impl<C: Coeff> std::ops::Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Canonical text serialization
// ---------------------------------------------------------------------------

fn monomial_string(sig: &RingSignature, exp: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (k, &e) in exp.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(sig.names[k].clone()),
            _ => parts.push(format!("{}^{}", sig.names[k], e)),
        }
    }
    parts.join("*")
}

impl<C: Coeff + Signed + fmt::Display> MPoly<C> {
    /// Canonical text form: terms in graded-lex descending order, e.g.
    /// `e1^2 - 2*e2`. The zero polynomial prints as `0`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = coeff.abs();
            let mono = monomial_string(&self.sig, exp);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl<C: Coeff + Signed + fmt::Display> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<C: Coeff + FromStr> MPoly<C> {
    /// Parse the canonical text form back into a polynomial over `sig`.
    /// Inverse of [`MPoly::to_canonical_string`] on canonical output; also
    /// accepts non-canonical term orders and repeated terms.
    pub fn parse(sig: &Arc<RingSignature>, input: &str) -> Result<Self> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        if s == "0" {
            return Ok(Self::zero(sig));
        }
        let mut acc: HashMap<ExponentVector, C> = HashMap::new();
        // Split into signed terms on top-level + / - (no parentheses in the format).
        let mut rest = s;
        let mut sign_negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            sign_negative = true;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let split = rest
                .char_indices()
                .skip(1)
                .find(|&(k, c)| {
                    (c == '+' || c == '-') && !rest[..k].trim_end().ends_with('^')
                })
                .map(|(k, _)| k);
            let (term_str, tail) = match split {
                Some(k) => (&rest[..k], &rest[k..]),
                None => (rest, ""),
            };
            let (exp, coeff) = Self::parse_term(sig, term_str.trim())?;
            let c = if sign_negative { -coeff } else { coeff };
            Self::insert_add(&mut acc, exp, c);
            if tail.is_empty() {
                break;
            }
            sign_negative = tail.starts_with('-');
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                return Err(Error::Parse("dangling sign".into()));
            }
        }
        Ok(Self::from_accumulator(sig.clone(), acc))
    }

    fn parse_term(sig: &Arc<RingSignature>, term: &str) -> Result<(ExponentVector, C)> {
        let mut coeff = C::one();
        let mut exps = vec![0i64; sig.len()];
        let mut saw_coeff = false;
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{term}`")));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                if saw_coeff {
                    return Err(Error::Parse(format!("two coefficients in `{term}`")));
                }
                saw_coeff = true;
                let c: C = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
                coeff = c;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: i64 = e
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                        (n, e)
                    }
                    None => (factor, 1),
                };
                let idx = sig
                    .index_of(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                if exp < 0 && !sig.invertible[idx] {
                    return Err(Error::NegativeExponent(name.to_string()));
                }
                exps[idx] += exp;
            }
        }
        Ok((ExponentVector(exps), coeff))
    }
}

// ---------------------------------------------------------------------------
// JSON encoding
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub invertible: Vec<bool>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i64>,
}

impl<C: Coeff + fmt::Display> MPoly<C> {
    /// JSON encoding with terms in graded-lex descending order and decimal
    /// string coefficients.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.sig.names.clone(),
            invertible: self.sig.invertible.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| TermJson {
                    coeff: c.to_string(),
                    exp: e.0.clone(),
                })
                .collect(),
        }
    }
}

impl<C: Coeff + FromStr> MPoly<C> {
    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let sig = RingSignature::new(json.vars.clone(), json.invertible.clone())?;
        let mut acc: HashMap<ExponentVector, C> = HashMap::new();
        for term in &json.terms {
            let c: C = term
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", term.coeff)))?;
            if term.exp.len() != sig.len() {
                return Err(Error::ExponentLength {
                    expected: sig.len(),
                    got: term.exp.len(),
                });
            }
            for (k, &e) in term.exp.iter().enumerate() {
                if e < 0 && !sig.invertible()[k] {
                    return Err(Error::NegativeExponent(sig.names()[k].clone()));
                }
            }
            Self::insert_add(&mut acc, ExponentVector(term.exp.clone()), c);
        }
        Ok(Self::from_accumulator(sig, acc))
    }
}
