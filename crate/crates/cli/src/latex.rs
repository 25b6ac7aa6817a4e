//! LaTeX rendering of polynomials, matching the display style
//! `e_1^6-6 e_1^4 e_2+9 e_1^2 e_2^2`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use powelem::IntPolynomial;

/// `e12` becomes `e_{12}`, `e1` becomes `e_1`, a name without a trailing
/// index is kept as-is.
fn latex_var(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(k) if k > 0 => {
            let (head, idx) = name.split_at(k);
            if idx.len() == 1 {
                format!("{head}_{idx}")
            } else {
                format!("{head}_{{{idx}}}")
            }
        }
        _ => name.to_string(),
    }
}

fn latex_monomial(names: &[String], exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        let var = latex_var(name);
        if e == 1 {
            parts.push(var);
        } else if (0..10).contains(&e) {
            parts.push(format!("{var}^{e}"));
        } else {
            parts.push(format!("{var}^{{{e}}}"));
        }
    }
    parts.join(" ")
}

pub fn latex_poly(p: &IntPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.signature().names();
    let terms: Vec<_> = p.terms().collect();
    let mut out = String::new();
    // canonical order is descending graded-lex
    for (k, (exp, coeff)) in terms.iter().rev().enumerate() {
        let negative = coeff.is_negative();
        let magnitude: BigInt = coeff.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push('-');
        } else {
            out.push('+');
        }
        let mono = latex_monomial(names, &exp.0);
        if mono.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{magnitude} {mono}"));
        }
    }
    out
}
