//! Structured pass/fail results carrying a witness term on failure.

use serde::Serialize;

use crate::IntPolynomial;

/// Which grid cell a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CaseKey {
    pub d: usize,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

impl CaseKey {
    pub fn dni(d: usize, n: u32, i: usize) -> Self {
        CaseKey {
            d,
            n,
            i: Some(i),
            order: None,
        }
    }

    pub fn with_order(d: usize, n: u32, i: usize, order: u64) -> Self {
        CaseKey {
            d,
            n,
            i: Some(i),
            order: Some(order),
        }
    }

    pub fn dn(d: usize, n: u32) -> Self {
        CaseKey {
            d,
            n,
            i: None,
            order: None,
        }
    }
}

/// Outcome of one verification. On failure, `witness` holds the leading term
/// of the difference of the two sides in canonical form.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub case: CaseKey,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Free-form metadata, e.g. documented convention choices.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn pass(check: &str, case: CaseKey) -> Self {
        VerificationReport {
            check: check.to_string(),
            case,
            pass: true,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(check: &str, case: CaseKey, witness: String) -> Self {
        VerificationReport {
            check: check.to_string(),
            case,
            pass: false,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    /// Compare two polynomials; the witness is the leading term of `lhs - rhs`.
    pub fn from_sides(
        check: &str,
        case: CaseKey,
        lhs: &IntPolynomial,
        rhs: &IntPolynomial,
    ) -> Self {
        let diff = lhs
            .checked_sub(rhs)
            .expect("verification sides share a ring");
        match diff.leading_term() {
            None => Self::pass(check, case),
            Some((exp, coeff)) => {
                let term = IntPolynomial::monomial(
                    diff.signature(),
                    exp.0.clone(),
                    coeff.clone(),
                )
                .expect("term of an existing polynomial")
                .to_canonical_string();
                Self::fail(check, case, term)
            }
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }
}
