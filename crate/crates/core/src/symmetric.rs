//! Symmetric polynomials in `l1, ..., ld` and the algorithmic conversion
//! onto the elementary symmetric basis `Z[e1, ..., ed]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, RingSignature};
use crate::IntPolynomial;

/// The ring `Z[l1, ..., ld]` of polynomials in the eigenvalue variables.
pub fn lambda_ring(d: usize) -> Arc<RingSignature> {
    assert!(d >= 1, "lambda ring needs at least one variable");
    RingSignature::indexed("l", d)
}

/// The target ring `Z[e1, ..., ed]` of the elementary basis.
pub fn elementary_ring(d: usize) -> Arc<RingSignature> {
    RingSignature::indexed("e", d)
}

/// Elementary symmetric polynomial: the sum over all `i`-element subsets of
/// `{l1, ..., ld}` of their products. `i = 0` gives 1 (empty product).
pub fn elementary_symmetric(d: usize, i: usize) -> Result<IntPolynomial> {
    power_elementary_symmetric(d, 1, i)
}

/// Elementary symmetric polynomial with every variable raised to the n-th
/// power: `elementary_symmetric(d, i)` with each exponent scaled by `n`.
pub fn power_elementary_symmetric(d: usize, n: u32, i: usize) -> Result<IntPolynomial> {
    if i > d {
        return Err(Error::OutOfRange(format!("i = {i} exceeds d = {d}")));
    }
    assert!(n >= 1, "power must be positive");
    let sig = lambda_ring(d);
    let mut p = IntPolynomial::zero(&sig);
    let mut subset: Vec<usize> = (0..i).collect();
    loop {
        let mut exps = vec![0i64; d];
        for &j in &subset {
            exps[j] = n as i64;
        }
        p = p
            .checked_add(&IntPolynomial::monomial(&sig, exps, BigInt::one())?)
            .expect("same ring");
        // next i-subset of {0, ..., d-1} in lexicographic order
        if i == 0 {
            break;
        }
        let mut k = i;
        loop {
            if k == 0 {
                return Ok(p);
            }
            k -= 1;
            if subset[k] + 1 <= d - (i - k) {
                subset[k] += 1;
                for j in k + 1..i {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
    Ok(p)
}

/// True iff `p` is fixed by every adjacent transposition of its variables
/// (these generate the full symmetric group).
pub fn is_symmetric(p: &IntPolynomial) -> bool {
    let d = p.signature().len();
    for k in 0..d.saturating_sub(1) {
        let mut map: Vec<usize> = (0..d).collect();
        map.swap(k, k + 1);
        let swapped = p
            .remap_vars(p.signature(), &map)
            .expect("permutation of the same ring");
        if &swapped != p {
            return false;
        }
    }
    true
}

/// Express a symmetric polynomial through the elementary symmetric basis:
/// returns the unique `Q` in `Z[e1, ..., ed]` with `Q(E1, ..., Ed) = p`.
///
/// Classical leading-term subtraction: the graded-lex leading monomial of a
/// symmetric polynomial has weakly decreasing exponents `a1 >= ... >= ad`;
/// subtracting `c * E1^(a1-a2) * E2^(a2-a3) * ... * Ed^ad` kills it and
/// strictly decreases the leading term, which guarantees termination.
pub fn to_elementary_basis(p: &IntPolynomial) -> Result<IntPolynomial> {
    if !is_symmetric(p) {
        return Err(Error::NotSymmetric);
    }
    let d = p.signature().len();
    let e_sig = elementary_ring(d);
    let elementary: Vec<IntPolynomial> = (1..=d)
        .map(|i| elementary_symmetric(d, i))
        .collect::<Result<_>>()?;
    // Cache of E_i^k products, shared across iterations.
    let mut pow_cache: Vec<std::collections::HashMap<i64, IntPolynomial>> =
        (0..d).map(|_| std::collections::HashMap::new()).collect();

    let mut rem = p.clone();
    let mut out = IntPolynomial::zero(&e_sig);
    let mut prev_leading: Option<ExponentVector> = None;
    while let Some((lead, coeff)) = rem.leading_term() {
        let a = lead.0.clone();
        let coeff = coeff.clone();
        if a.windows(2).any(|w| w[0] < w[1]) {
            // a symmetric polynomial cannot lead with an increasing exponent
            return Err(Error::NotSymmetric);
        }
        if let Some(prev) = &prev_leading {
            assert!(
                lead < prev,
                "leading term failed to decrease; conversion would not terminate"
            );
        }
        prev_leading = Some(lead.clone());

        // exponents of e_i in the recorded monomial: a_i - a_{i+1}
        let mut e_exps = vec![0i64; d];
        for i in 0..d {
            e_exps[i] = a[i] - if i + 1 < d { a[i + 1] } else { 0 };
        }
        out = out
            .checked_add(&IntPolynomial::monomial(&e_sig, e_exps.clone(), coeff.clone())?)
            .expect("same ring");

        let mut product = IntPolynomial::constant(p.signature(), coeff);
        for (i, &k) in e_exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let power = pow_cache[i]
                .entry(k)
                .or_insert_with(|| elementary[i].pow(k as u32));
            product = product.checked_mul(power).expect("same ring");
        }
        rem = rem.checked_sub(&product).expect("same ring");
    }
    Ok(out)
}

/// Substitute `e_j -> E_d^(j)` to map a polynomial in the elementary basis
/// back into the lambda ring. Inverse of [`to_elementary_basis`].
pub fn from_elementary_basis(q: &IntPolynomial) -> Result<IntPolynomial> {
    let d = q.signature().len();
    let images: Vec<IntPolynomial> = (1..=d)
        .map(|i| elementary_symmetric(d, i))
        .collect::<Result<_>>()?;
    q.substitute(&images)
}
