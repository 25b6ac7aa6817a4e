//! Power elementary polynomials `P_d^(n,i)`, their reduced form at `e_d = 1`,
//! and symbolic verification of the identities they satisfy.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::RingSignature;
use crate::report::{CaseKey, VerificationReport};
use crate::symmetric::{elementary_ring, power_elementary_symmetric, to_elementary_basis};
use crate::IntPolynomial;

/// Index of a power elementary polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerPolyKey {
    pub d: usize,
    pub n: u32,
    pub i: usize,
}

impl PowerPolyKey {
    pub fn new(d: usize, n: u32, i: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::OutOfRange(format!("d = {d} must be at least 1")));
        }
        if n < 1 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        if i > d {
            return Err(Error::OutOfRange(format!("i = {i} exceeds d = {d}")));
        }
        Ok(PowerPolyKey { d, n, i })
    }
}

// Insert-once cache; recomputation before insertion is idempotent, so the
// lock is only held for lookups and inserts.
static POWER_CACHE: LazyLock<Mutex<HashMap<PowerPolyKey, Arc<IntPolynomial>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The unique polynomial in `Z[e1, ..., ed]` whose evaluation at the
/// elementary symmetric polynomials gives `E_d^(n,i)`. Memoized per key.
pub fn power_elementary_poly(key: PowerPolyKey) -> Result<Arc<IntPolynomial>> {
    if let Some(p) = POWER_CACHE.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = if key.i == 0 {
        IntPolynomial::one(&elementary_ring(key.d))
    } else {
        let symmetric = power_elementary_symmetric(key.d, key.n, key.i)?;
        to_elementary_basis(&symmetric)?
    };
    let p = Arc::new(p);
    Ok(POWER_CACHE
        .lock()
        .unwrap()
        .entry(key)
        .or_insert(p)
        .clone())
}

/// `P_d^(n,i)` with `e_d` set to 1, re-expressed in `Z[e1, ..., e_{d-1}]`.
pub fn reduced_power_elementary_poly(key: PowerPolyKey) -> Result<IntPolynomial> {
    let p = power_elementary_poly(key)?;
    let reduced = p.set_var_to_one(key.d - 1);
    let target = elementary_ring(key.d - 1);
    // e_d no longer occurs; drop it from the ring
    let mut map: Vec<usize> = (0..key.d).collect();
    map[key.d - 1] = 0; // unused slot, e_d has exponent 0 everywhere
    reduced.remap_vars(&target, &map)
}

/// Check `P_d^(n,i)(t e1, t^2 e2, ..., t^d ed) = t^(n i) P_d^(n,i)` in the
/// ring `Z[t, e1, ..., ed]` with a formal scalar `t`.
pub fn verify_homogeneity(key: PowerPolyKey) -> Result<VerificationReport> {
    let p = power_elementary_poly(key)?;
    let d = key.d;
    let mut names = vec!["t".to_string()];
    names.extend((1..=d).map(|k| format!("e{k}")));
    let sig = RingSignature::poly_ring(names);
    // e_j -> t^j e_j
    let images: Vec<IntPolynomial> = (1..=d)
        .map(|j| {
            let mut exps = vec![0i64; d + 1];
            exps[0] = j as i64;
            exps[j] = 1;
            IntPolynomial::monomial(&sig, exps, BigInt::one())
        })
        .collect::<Result<_>>()?;
    let lhs = p.substitute(&images)?;
    let map: Vec<usize> = (1..=d).collect();
    let embedded = p.remap_vars(&sig, &map)?;
    let theta_ni =
        IntPolynomial::monomial(&sig, {
            let mut e = vec![0i64; d + 1];
            e[0] = (key.n as i64) * (key.i as i64);
            e
        }, BigInt::one())?;
    let rhs = embedded.checked_mul(&theta_ni)?;
    Ok(VerificationReport::from_sides(
        "homogeneity",
        CaseKey::dni(key.d, key.n, key.i),
        &lhs,
        &rhs,
    ))
}

/// The Laurent ring `Z[x1, ..., x_{d-2}, x_{d-1}^{+-1}]`.
pub fn laurent_x_ring(d: usize) -> Arc<RingSignature> {
    let names: Vec<String> = (1..d).map(|k| format!("x{k}")).collect();
    let mut invertible = vec![false; d - 1];
    invertible[d - 2] = true;
    RingSignature::new(names, invertible).expect("distinct names")
}

/// The substitution targets `y_j` of the main Laurent identity:
/// `y_1 = x_{d-1}^{-1} + x_1`, `y_j = x_{j-1} x_{d-1}^{-1} + x_j`.
pub fn y_elements(d: usize) -> Result<Vec<IntPolynomial>> {
    let sig = laurent_x_ring(d);
    let m = d - 1;
    (1..=m)
        .map(|j| {
            let mut left = vec![0i64; m];
            left[m - 1] = -1;
            if j >= 2 {
                left[j - 2] += 1;
            }
            let mut right = vec![0i64; m];
            right[j - 1] += 1;
            let a = IntPolynomial::monomial(&sig, left, BigInt::one())?;
            let b = IntPolynomial::monomial(&sig, right, BigInt::one())?;
            a.checked_add(&b)
        })
        .collect()
}

/// Verify the Laurent-polynomial identity
/// `Phat_d^(n,i)(y_1, ..., y_{d-1})
///    = x_{d-1}^{-n} P_{d-1}^(n,i-1)(x) + P_{d-1}^(n,i)(x)`
/// exactly in `Z[x1, ..., x_{d-2}, x_{d-1}^{+-1}]`.
pub fn verify_main_identity(d: usize, n: u32, i: usize) -> Result<VerificationReport> {
    if d < 2 || i < 1 || i > d - 1 {
        return Err(Error::OutOfRange(format!("(d, i) = ({d}, {i})")));
    }
    let sig = laurent_x_ring(d);
    let m = d - 1;

    let reduced = reduced_power_elementary_poly(PowerPolyKey::new(d, n, i)?)?;
    let lhs = reduced.substitute(&y_elements(d)?)?;

    // right side: polynomials of rank d-1 evaluated at x_1, ..., x_{d-1}
    let rename: Vec<usize> = (0..m).collect();
    let p_lower = |idx: usize| -> Result<IntPolynomial> {
        let p = power_elementary_poly(PowerPolyKey::new(m, n, idx)?)?;
        p.remap_vars(&sig, &rename)
    };
    let mut xdm1_neg_n = vec![0i64; m];
    xdm1_neg_n[m - 1] = -(n as i64);
    let shift = IntPolynomial::monomial(&sig, xdm1_neg_n, BigInt::one())?;
    let rhs = shift
        .checked_mul(&p_lower(i - 1)?)?
        .checked_add(&p_lower(i)?)?;

    Ok(VerificationReport::from_sides(
        "identity",
        CaseKey::dni(d, n, i),
        &lhs,
        &rhs,
    ))
}

/// Trace Chebyshev polynomials via the recurrence
/// `C_0 = 2`, `C_1 = e1`, `C_{k+1} = e1 C_k - C_{k-1}`.
pub fn chebyshev_reference(n: u32) -> IntPolynomial {
    let sig = elementary_ring(1);
    let e1 = IntPolynomial::variable(&sig, 0);
    let mut prev = IntPolynomial::constant(&sig, BigInt::from(2));
    if n == 0 {
        return prev;
    }
    let mut cur = e1.clone();
    for _ in 1..n {
        let next = &(&e1 * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluate `P_d^(n,i)` at explicit elementary symmetric polynomials and
/// compare with `E_d^(n,i)`; the defining property of the polynomial.
pub fn verify_defining_property(key: PowerPolyKey) -> Result<VerificationReport> {
    let p = power_elementary_poly(key)?;
    let lhs = crate::symmetric::from_elementary_basis(&p)?;
    let rhs = power_elementary_symmetric(key.d, key.n, key.i)?;
    Ok(VerificationReport::from_sides(
        "defining-property",
        CaseKey::dni(key.d, key.n, key.i),
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    

    fn poly(d: usize, n: u32, i: usize) -> Arc<IntPolynomial> {
        power_elementary_poly(PowerPolyKey::new(d, n, i).unwrap()).unwrap()
    }

    #[test]
    fn n_equals_one_gives_basis_variable() {
        for d in 2..=5 {
            for i in 1..=d {
                let p = poly(d, 1, i);
                assert_eq!(*p, IntPolynomial::variable(&elementary_ring(d), i - 1));
            }
        }
    }

    #[test]
    fn top_case_is_power_of_last_variable() {
        for d in 2..=5 {
            for n in 1..=6u32 {
                let p = poly(d, n, d);
                let expect =
                    IntPolynomial::monomial(&elementary_ring(d), {
                        let mut e = vec![0i64; d];
                        e[d - 1] = n as i64;
                        e
                    }, BigInt::one())
                    .unwrap();
                assert_eq!(*p, expect, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn golden_rank4_power6_display() {
        assert_eq!(
            poly(4, 6, 1).to_canonical_string(),
            "e1^6 - 6*e1^4*e2 + 6*e1^3*e3 + 9*e1^2*e2^2 - 6*e1^2*e4 - 12*e1*e2*e3 - 2*e2^3 \
             + 6*e2*e4 + 3*e3^2"
        );
    }

    #[test]
    fn reduced_p_4_6_1_substitutes_e4() {
        let key = PowerPolyKey::new(4, 6, 1).unwrap();
        let reduced = reduced_power_elementary_poly(key).unwrap();
        let sig = elementary_ring(3);
        let expect = IntPolynomial::parse(
            &sig,
            "e1^6 - 6*e1^4*e2 + 9*e1^2*e2^2 - 2*e2^3 + 6*e1^3*e3 - 12*e1*e2*e3 + 3*e3^2 \
             - 6*e1^2 + 6*e2",
        )
        .unwrap();
        assert_eq!(reduced, expect);
    }

    #[test]
    fn reduced_d2_matches_chebyshev_seed_cases() {
        let c2 = reduced_power_elementary_poly(PowerPolyKey::new(2, 2, 1).unwrap()).unwrap();
        assert_eq!(c2.to_canonical_string(), "e1^2 - 2");
        for n in 0..=10u32 {
            if n >= 1 {
                let reduced =
                    reduced_power_elementary_poly(PowerPolyKey::new(2, n, 1).unwrap()).unwrap();
                assert_eq!(reduced, chebyshev_reference(n), "n={n}");
            }
        }
    }

    #[test]
    fn chebyshev_seeds() {
        assert_eq!(chebyshev_reference(0).to_canonical_string(), "2");
        assert_eq!(chebyshev_reference(1).to_canonical_string(), "e1");
        assert_eq!(chebyshev_reference(3).to_canonical_string(), "e1^3 - 3*e1");
    }

    #[test]
    fn reduced_i_zero_is_one() {
        for d in 2..=4 {
            let p = reduced_power_elementary_poly(PowerPolyKey::new(d, 3, 0).unwrap()).unwrap();
            assert!(p.is_one());
        }
    }

    #[test]
    fn homogeneity_small_cases() {
        for (d, n, i) in [(4, 6, 2), (3, 1, 2), (2, 3, 1)] {
            let report = verify_homogeneity(PowerPolyKey::new(d, n, i).unwrap()).unwrap();
            assert!(report.pass, "d={d} n={n} i={i}: {:?}", report.witness);
        }
    }

    #[test]
    fn homogeneity_d2_n3_both_sides() {
        // both sides are t^3 (e1^3 - 3 e1 e2)
        let report = verify_homogeneity(PowerPolyKey::new(2, 3, 1).unwrap()).unwrap();
        assert!(report.pass);
        let p = poly(2, 3, 1);
        assert_eq!(p.to_canonical_string(), "e1^3 - 3*e1*e2");
    }

    #[test]
    fn main_identity_d2_is_chebyshev_identity() {
        // Phat_2^(n,1)(x + x^-1) = x^n + x^-n
        for n in 1..=10u32 {
            let report = verify_main_identity(2, n, 1).unwrap();
            assert!(report.pass, "n={n}");
            // brute-force form of the left side
            let sig = laurent_x_ring(2);
            let x = IntPolynomial::variable(&sig, 0);
            let arg = x.checked_add(&x.invert_monomial().unwrap()).unwrap();
            let lhs = reduced_power_elementary_poly(PowerPolyKey::new(2, n, 1).unwrap())
                .unwrap()
                .substitute(&[arg])
                .unwrap();
            let expect = x
                .checked_pow(n as i64)
                .unwrap()
                .checked_add(&x.checked_pow(-(n as i64)).unwrap())
                .unwrap();
            assert_eq!(lhs, expect, "n={n}");
        }
    }

    #[test]
    fn main_identity_n1_trivial_case() {
        let report = verify_main_identity(3, 1, 1).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn main_identity_d4_n6() {
        let report = verify_main_identity(4, 6, 2).unwrap();
        assert!(report.pass, "{:?}", report.witness);
    }

    #[test]
    fn defining_property_spot_checks() {
        for (d, n, i) in [(2, 4, 1), (3, 3, 2), (4, 2, 3)] {
            let report = verify_defining_property(PowerPolyKey::new(d, n, i).unwrap()).unwrap();
            assert!(report.pass, "d={d} n={n} i={i}");
        }
    }

    #[test]
    fn key_validation() {
        assert!(PowerPolyKey::new(3, 2, 4).is_err());
        assert!(PowerPolyKey::new(0, 2, 0).is_err());
        assert!(PowerPolyKey::new(3, 0, 1).is_err());
    }

    #[test]
    fn memoization_returns_identical_values() {
        let a = poly(3, 4, 2);
        let b = poly(3, 4, 2);
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn witness_on_failure() {
        // deliberately compare different polynomials to check the witness
        let sig = elementary_ring(2);
        let a = IntPolynomial::variable(&sig, 0);
        let b = IntPolynomial::variable(&sig, 1);
        let report =
            VerificationReport::from_sides("probe", CaseKey::dni(2, 1, 1), &a, &b);
        assert!(!report.pass);
        assert_eq!(report.witness.as_deref(), Some("e1"));
    }
}
