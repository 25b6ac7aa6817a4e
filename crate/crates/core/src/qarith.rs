//! Quantum integers, quantum binomials, and exact root-of-unity arithmetic
//! in `Z[zeta_N]` reduced modulo the N-th cyclotomic polynomial.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::RingSignature;
use crate::IntPolynomial;

/// The Laurent ring `Z[q^{+-1}]` of generic quantum coefficients.
pub fn q_ring() -> Arc<RingSignature> {
    RingSignature::new(vec!["q"], vec![true]).expect("one variable")
}

/// Laurent polynomial in the single invertible variable `q`.
pub type QLaurent = IntPolynomial;

/// Quantum integer `[i]` in division-free balanced form:
/// `q^(i-1) + q^(i-3) + ... + q^(1-i)`, with `[0] = 0`.
pub fn qint(i: u32) -> QLaurent {
    let sig = q_ring();
    let mut p = QLaurent::zero(&sig);
    let mut e = i as i64 - 1;
    for _ in 0..i {
        p = p
            .checked_add(&QLaurent::monomial(&sig, vec![e], BigInt::one()).expect("q invertible"))
            .expect("same ring");
        e -= 2;
    }
    p
}

/// Quantum factorial `[i]! = [i][i-1]...[1]`.
pub fn qfact(i: u32) -> QLaurent {
    let mut p = QLaurent::one(&q_ring());
    for k in 1..=i {
        p = p.checked_mul(&qint(k)).expect("same ring");
    }
    p
}

/// Quantum binomial `[i]! / ([j]! [i-j]!)`, computed by exact Laurent
/// division. The division is always exact; an inexact division signals a bug.
pub fn qbinom(i: u32, j: u32) -> Result<QLaurent> {
    if j > i {
        return Err(Error::OutOfRange(format!("j = {j} exceeds i = {i}")));
    }
    let num = qfact(i);
    let q = laurent_div_exact(&num, &qfact(j))?;
    laurent_div_exact(&q, &qfact(i - j))
}

// ---------------------------------------------------------------------------
// Univariate dense helpers
// ---------------------------------------------------------------------------

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Exact division of dense univariate polynomials (coefficients ascending).
fn dense_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let den = trim(den.to_vec());
    if den.is_empty() {
        return Err(Error::InexactDivision);
    }
    let mut rem = trim(num.to_vec());
    if rem.is_empty() {
        return Ok(Vec::new());
    }
    if rem.len() < den.len() {
        return Err(Error::InexactDivision);
    }
    let lead = den.last().expect("nonzero");
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let (c, r) = rem.last().expect("nonzero").div_rem(lead);
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        let shift = rem.len() - den.len();
        quot[shift] = c.clone();
        for (k, dc) in den.iter().enumerate() {
            let v = &c * dc;
            rem[shift + k] -= v;
        }
        rem = trim(rem);
        if rem.is_empty() {
            return Ok(quot);
        }
        if rem.len() < den.len() {
            return Err(Error::InexactDivision);
        }
    }
    unreachable!("loop exits via remainder checks")
}

/// Convert a univariate Laurent polynomial to (lowest exponent, dense coeffs).
fn to_dense(p: &QLaurent) -> (i64, Vec<BigInt>) {
    if p.is_zero() {
        return (0, Vec::new());
    }
    let exps: Vec<i64> = p.terms().map(|(e, _)| e.0[0]).collect();
    let lo = *exps.iter().min().expect("nonzero");
    let hi = *exps.iter().max().expect("nonzero");
    let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        dense[(e.0[0] - lo) as usize] = c.clone();
    }
    (lo, dense)
}

fn from_dense(sig: &Arc<RingSignature>, lo: i64, dense: &[BigInt]) -> QLaurent {
    let mut p = QLaurent::zero(sig);
    for (k, c) in dense.iter().enumerate() {
        if !c.is_zero() {
            p = p
                .checked_add(
                    &QLaurent::monomial(sig, vec![lo + k as i64], c.clone())
                        .expect("invertible variable"),
                )
                .expect("same ring");
        }
    }
    p
}

/// Exact division of univariate Laurent polynomials.
pub fn laurent_div_exact(num: &QLaurent, den: &QLaurent) -> Result<QLaurent> {
    if den.is_zero() {
        return Err(Error::InexactDivision);
    }
    if num.is_zero() {
        return Ok(QLaurent::zero(num.signature()));
    }
    let (nlo, ndense) = to_dense(num);
    let (dlo, ddense) = to_dense(den);
    let q = dense_div_exact(&ndense, &ddense)?;
    Ok(from_dense(num.signature(), nlo - dlo, &q))
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and Z[zeta_N]
// ---------------------------------------------------------------------------

static CYCLO_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Dense coefficients (ascending) of the N-th cyclotomic polynomial,
/// computed by exact division of `x^N - 1` by the product of `Phi_m` over
/// proper divisors `m` of `N`. Memoized.
fn cyclotomic_dense(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![-BigInt::one(), BigInt::one()]
    } else {
        // x^N - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = -BigInt::one();
        num[n as usize] = BigInt::one();
        let mut den = vec![BigInt::one()];
        for m in 1..n {
            if n % m == 0 {
                let phi_m = cyclotomic_dense(m);
                den = dense_mul(&den, &phi_m);
            }
        }
        dense_div_exact(&num, &den).expect("cyclotomic division is exact")
    };
    let arc = Arc::new(result);
    CYCLO_CACHE
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(arc)
        .clone()
}

fn dense_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// The N-th cyclotomic polynomial as a polynomial in `x`.
pub fn cyclotomic_poly(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    let sig = RingSignature::poly_ring(vec!["x"]);
    let dense = cyclotomic_dense(n);
    from_dense(&sig, 0, &dense)
}

/// Element of `Z[zeta_N]` in the power-basis residue representation modulo
/// the N-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInteger {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        CyclotomicInteger {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn from_int(order: u64, v: BigInt) -> Self {
        Self::from_dense(order, vec![v])
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(order, BigInt::one())
    }

    /// The class of `x^k` (any integer `k`; exponents reduce modulo N since
    /// `zeta^N = 1`).
    pub fn root_power(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut dense = vec![BigInt::zero(); e + 1];
        dense[e] = BigInt::one();
        Self::from_dense(order, dense)
    }

    /// The class of `zeta` itself.
    pub fn root(order: u64) -> Self {
        Self::root_power(order, 1)
    }

    /// Reduce a dense integer polynomial modulo `Phi_N`.
    pub fn from_dense(order: u64, dense: Vec<BigInt>) -> Self {
        assert!(order >= 1);
        let modulus = cyclotomic_dense(order);
        let deg = modulus.len() - 1;
        let mut rem = trim(dense);
        while rem.len() > deg {
            let c = rem.last().expect("nonzero").clone();
            let shift = rem.len() - 1 - deg;
            for (k, mc) in modulus.iter().enumerate() {
                let v = &c * mc;
                rem[shift + k] -= v;
            }
            rem = trim(rem);
        }
        CyclotomicInteger { order, coeffs: rem }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients over the power basis `1, zeta, ..., zeta^(phi(N)-1)`,
    /// padded to full length.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let deg = cyclotomic_dense(self.order).len() - 1;
        let mut out = self.coeffs.clone();
        out.resize(deg, BigInt::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut dense = self.coeffs.clone();
        dense.resize(dense.len().max(other.coeffs.len()), BigInt::zero());
        for (k, c) in other.coeffs.iter().enumerate() {
            dense[k] += c;
        }
        Ok(Self::from_dense(self.order, dense))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut dense = self.coeffs.clone();
        dense.resize(dense.len().max(other.coeffs.len()), BigInt::zero());
        for (k, c) in other.coeffs.iter().enumerate() {
            dense[k] -= c;
        }
        Ok(Self::from_dense(self.order, dense))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_dense(
            self.order,
            dense_mul(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }
}

/// Substitute `q -> zeta_N^k` in a Laurent polynomial in `q` and reduce
/// modulo `Phi_N`.
pub fn eval_at_root(f: &QLaurent, order: u64, k: i64) -> CyclotomicInteger {
    assert!(order >= 1);
    let n = order as i64;
    let mut dense = vec![BigInt::zero(); order as usize];
    for (exp, coeff) in f.terms() {
        let e = (exp.0[0] * k).rem_euclid(n) as usize;
        dense[e] += coeff;
    }
    CyclotomicInteger::from_dense(order, dense)
}

/// Result of checking the root-of-unity hypotheses with `zeta = q^(1/d)` of
/// exact order `N` and `q = zeta^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    /// Whether `q^(2n/d) = zeta^(2n) = 1`, i.e. N divides 2n.
    pub cond_a: bool,
    /// Indices `i` in `[2, d/2]` with `q^(2i) = 1`, i.e. N divides `2 d i`.
    pub violations: Vec<usize>,
}

impl HypothesisReport {
    pub fn satisfied(&self) -> bool {
        self.cond_a && self.violations.is_empty()
    }
}

/// Divisibility form of the root-of-unity admissibility conditions.
pub fn hypothesis_check(d: usize, n: u32, order: u64) -> HypothesisReport {
    assert!(d >= 2 && n >= 1 && order >= 1);
    let cond_a = (2 * n as u64) % order == 0;
    let violations = (2..=d / 2)
        .filter(|&i| (2 * d as u64 * i as u64) % order == 0)
        .collect();
    HypothesisReport { cond_a, violations }
}

/// Brute-force form of [`hypothesis_check`]: compute the actual cyclotomic
/// powers and compare with 1. Used as an independent oracle.
pub fn hypothesis_check_brute_force(d: usize, n: u32, order: u64) -> HypothesisReport {
    let zeta = CyclotomicInteger::root(order);
    let cond_a = zeta.pow(2 * n as u64).is_one();
    let violations = (2..=d / 2)
        .filter(|&i| zeta.pow(2 * d as u64 * i as u64).is_one())
        .collect();
    HypothesisReport { cond_a, violations }
}

pub fn euler_totient(n: u64) -> u64 {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_cases() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(2).to_canonical_string(), "q + q^-1");
        assert_eq!(qint(4).to_canonical_string(), "q^3 + q + q^-1 + q^-3");
    }

    #[test]
    fn qint_balanced_form_matches_quotient_formula() {
        // [i] * (q - q^-1) = q^i - q^-i
        let sig = q_ring();
        let q = QLaurent::variable(&sig, 0);
        let denom = &q - &q.invert_monomial().unwrap();
        for i in 0..=12u32 {
            let lhs = qint(i).checked_mul(&denom).unwrap();
            let rhs = &q.checked_pow(i as i64).unwrap() - &q.checked_pow(-(i as i64)).unwrap();
            assert_eq!(lhs, rhs, "i={i}");
        }
    }

    #[test]
    fn qbinom_cases() {
        for i in 0..=6u32 {
            assert!(qbinom(i, 0).unwrap().is_one());
        }
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        // evaluation at q = 1 (order 1 root) gives the classical binomial
        let b = qbinom(4, 2).unwrap();
        let at_one = eval_at_root(&b, 1, 1);
        assert_eq!(at_one, CyclotomicInteger::from_int(1, BigInt::from(6)));
    }

    #[test]
    fn qbinom_symmetry_and_specialization() {
        fn binom(n: u64, k: u64) -> u64 {
            let mut r = 1u64;
            for j in 0..k {
                r = r * (n - j) / (j + 1);
            }
            r
        }
        for i in 0..=12u32 {
            for j in 0..=i {
                let b = qbinom(i, j).unwrap();
                assert_eq!(b, qbinom(i, i - j).unwrap(), "i={i} j={j}");
                let at_one = eval_at_root(&b, 1, 1);
                assert_eq!(
                    at_one,
                    CyclotomicInteger::from_int(1, BigInt::from(binom(i as u64, j as u64))),
                    "i={i} j={j}"
                );
            }
        }
    }

    #[test]
    fn inexact_division_detected() {
        let sig = q_ring();
        let q = QLaurent::variable(&sig, 0);
        let two = QLaurent::constant(&sig, BigInt::from(2));
        let num = &q + &QLaurent::one(&sig);
        assert_eq!(laurent_div_exact(&num, &two), Err(Error::InexactDivision));
        let den = &q + &two;
        assert_eq!(laurent_div_exact(&num, &den), Err(Error::InexactDivision));
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_poly(1).to_canonical_string(), "x - 1");
        assert_eq!(cyclotomic_poly(2).to_canonical_string(), "x + 1");
        assert_eq!(cyclotomic_poly(4).to_canonical_string(), "x^2 + 1");
        assert_eq!(cyclotomic_poly(6).to_canonical_string(), "x^2 - x + 1");
        assert_eq!(
            cyclotomic_poly(12).to_canonical_string(),
            "x^4 - x^2 + 1"
        );
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for n in 1..=50u64 {
            assert_eq!(
                cyclotomic_poly(n).total_degree().unwrap() as u64,
                euler_totient(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn eval_at_root_cases() {
        // [2] at zeta_4: zeta + zeta^3 = 0 in Z[i]
        let v = eval_at_root(&qint(2), 4, 1);
        assert!(v.is_zero());
        let five = QLaurent::constant(&q_ring(), BigInt::from(5));
        assert_eq!(
            eval_at_root(&five, 4, 1),
            CyclotomicInteger::from_int(4, BigInt::from(5))
        );
        // [3] at q = 1
        assert_eq!(
            eval_at_root(&qint(3), 1, 1),
            CyclotomicInteger::from_int(1, BigInt::from(3))
        );
    }

    #[test]
    fn eval_at_root_is_ring_homomorphism() {
        let sig = q_ring();
        let f = &QLaurent::monomial(&sig, vec![3], BigInt::from(2)).unwrap()
            + &QLaurent::monomial(&sig, vec![-1], BigInt::from(-7)).unwrap();
        let g = &qint(5) + &QLaurent::one(&sig);
        for order in [1u64, 3, 4, 5, 12] {
            for k in [1i64, 2, 5] {
                let fg = eval_at_root(&f.checked_mul(&g).unwrap(), order, k);
                let f_g = eval_at_root(&f, order, k)
                    .mul(&eval_at_root(&g, order, k))
                    .unwrap();
                assert_eq!(fg, f_g, "order={order} k={k}");
                let sum = eval_at_root(&f.checked_add(&g).unwrap(), order, k);
                let s = eval_at_root(&f, order, k)
                    .add(&eval_at_root(&g, order, k))
                    .unwrap();
                assert_eq!(sum, s);
            }
        }
    }

    #[test]
    fn cyclotomic_ring_axioms() {
        let a = CyclotomicInteger::root_power(12, 5);
        let b = CyclotomicInteger::from_dense(12, vec![BigInt::from(3), BigInt::from(-2)]);
        let c = CyclotomicInteger::root_power(12, 7);
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        assert!(a.mul(&CyclotomicInteger::one(12)).unwrap() == a);
    }

    #[test]
    fn root_has_exact_order() {
        for n in [2u64, 3, 4, 6, 10, 12] {
            let zeta = CyclotomicInteger::root(n);
            assert!(zeta.pow(n).is_one());
            for k in 1..n {
                assert!(!zeta.pow(k).is_one(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn hypothesis_examples() {
        let r = hypothesis_check(2, 5, 10);
        assert!(r.cond_a && r.violations.is_empty());
        let r = hypothesis_check(4, 3, 6);
        assert!(r.cond_a && r.violations.is_empty());
        let r = hypothesis_check(2, 3, 4);
        assert!(!r.cond_a);
    }

    #[test]
    fn hypothesis_matches_brute_force_spot() {
        for d in 2..=5 {
            for n in 1..=5u32 {
                for order in 1..=16u64 {
                    assert_eq!(
                        hypothesis_check(d, n, order),
                        hypothesis_check_brute_force(d, n, order),
                        "d={d} n={n} N={order}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = CyclotomicInteger::one(3);
        let b = CyclotomicInteger::one(4);
        assert_eq!(a.add(&b), Err(Error::OrderMismatch(3, 4)));
    }
}
