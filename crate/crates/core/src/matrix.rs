//! Exact integer matrices and the characteristic-polynomial oracle for the
//! power elementary polynomials on SL_d.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::power::{reduced_power_elementary_poly, PowerPolyKey};
use crate::report::{CaseKey, VerificationReport};

/// Dense square matrix with arbitrary-precision integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqMatrix {
    d: usize,
    entries: Vec<BigInt>,
}

impl SqMatrix {
    pub fn new(d: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), d * d);
        SqMatrix { d, entries }
    }

    pub fn from_i64(d: usize, entries: &[i64]) -> Self {
        Self::new(d, entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn identity(d: usize) -> Self {
        let mut entries = vec![BigInt::zero(); d * d];
        for k in 0..d {
            entries[k * d + k] = BigInt::one();
        }
        SqMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.d + c]
    }

    pub fn mul(&self, other: &SqMatrix) -> SqMatrix {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut entries = vec![BigInt::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = &self.entries[r * d + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * &other.entries[k * d + c];
                }
            }
        }
        SqMatrix { d, entries }
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, n: u32) -> SqMatrix {
        let mut result = SqMatrix::identity(self.d);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn trace(&self) -> BigInt {
        (0..self.d).map(|k| self.entries[k * self.d + k].clone()).sum()
    }

    /// Coefficients `(E^(1), ..., E^(d))` of the characteristic polynomial:
    /// `det(A + t Id) = t^d + E^(1) t^(d-1) + ... + E^(d)`, computed exactly
    /// by the Faddeev-LeVerrier recurrence (all divisions are exact over Z).
    pub fn char_poly_coefficients(&self) -> Vec<BigInt> {
        let d = self.d;
        let mut coeffs = Vec::with_capacity(d);
        let mut m = SqMatrix::identity(d);
        for k in 1..=d {
            m = self.mul(&m);
            // det(tI - A) = t^d + a_1 t^(d-1) + ... with a_k = -tr(A M_k)/k,
            // M_{k+1} = A M_k + a_k I; then E^(k) = (-1)^k a_k.
            let (a_k, r) = num_integer::Integer::div_rem(&-m.trace(), &BigInt::from(k));
            assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs.push(if k % 2 == 1 { -&a_k } else { a_k.clone() });
            for j in 0..d {
                m.entries[j * d + j] += &a_k;
            }
        }
        coeffs
    }

    pub fn determinant(&self) -> BigInt {
        self.char_poly_coefficients().pop().expect("d >= 1")
    }
}

/// Product of `steps` random transvections (identity plus one off-diagonal
/// entry in `{-2, ..., 2}`); determinant 1 by construction. Deterministic
/// in `seed`.
pub fn random_sl_matrix(d: usize, seed: u64, steps: u32) -> SqMatrix {
    assert!(d >= 2);
    assert!(steps >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = SqMatrix::identity(d);
    for _ in 0..steps {
        let r = rng.gen_range(0..d);
        let mut c = rng.gen_range(0..d - 1);
        if c >= r {
            c += 1;
        }
        let v = BigInt::from(rng.gen_range(-2i64..=2));
        // left-multiply by E_{rc}(v): row r += v * row c
        for k in 0..d {
            let add = &v * a.entry(c, k);
            a.entries[r * d + k] += add;
        }
    }
    a
}

/// Check `E_d^(i)(A^n) = Phat_d^(n,i)(E_d^(1)(A), ..., E_d^(d-1)(A))` for an
/// exact SL_d matrix: left side from the characteristic polynomial of `A^n`,
/// right side by integer evaluation of the reduced power elementary
/// polynomial.
pub fn verify_on_matrix(a: &SqMatrix, n: u32, i: usize) -> Result<VerificationReport> {
    let d = a.dim();
    if i < 1 || i > d - 1 {
        return Err(Error::OutOfRange(format!("i = {i} for d = {d}")));
    }
    let coeffs = a.char_poly_coefficients();
    if !coeffs[d - 1].is_one() {
        return Err(Error::NotUnimodular(coeffs[d - 1].to_string()));
    }
    let lhs = a.pow(n).char_poly_coefficients()[i - 1].clone();
    let reduced = reduced_power_elementary_poly(PowerPolyKey::new(d, n, i)?)?;
    let rhs = reduced.eval(&coeffs[..d - 1].to_vec())?;
    let case = CaseKey::dni(d, n, i);
    if lhs == rhs {
        Ok(VerificationReport::pass("oracle", case))
    } else {
        Ok(VerificationReport::fail(
            "oracle",
            case,
            format!("lhs = {lhs}, rhs = {rhs}"),
        ))
    }
}

/// Magnitude of the largest entry, used by sweep harnesses to keep growth
/// under control.
pub fn max_entry_magnitude(a: &SqMatrix) -> BigInt {
    (0..a.dim() * a.dim())
        .map(|k| a.entries[k].abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}
