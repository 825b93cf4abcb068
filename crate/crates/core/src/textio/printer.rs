use crate::scalar::Scalar;
use crate::superalgebra::{Monomial, SuperPoly};

fn monomial_factors(m: &Monomial) -> Vec<String> {
    let mut out = Vec::new();
    for a in 1..=m.dim() {
        match m.phi_exp(a) {
            0 => {}
            1 => out.push(format!("phi{a}")),
            e => out.push(format!("phi{a}^{e}")),
        }
    }
    out.extend(m.c_indices().into_iter().map(|a| format!("c{a}")));
    out.extend(m.cbar_indices().into_iter().map(|a| format!("cb{a}")));
    for a in 1..=m.dim() {
        match m.lambda_exp(a) {
            0 => {}
            1 => out.push(format!("l{a}")),
            e => out.push(format!("l{a}^{e}")),
        }
    }
    out
}

fn term(m: &Monomial, s: &Scalar) -> String {
    let factors = monomial_factors(m);
    if factors.is_empty() {
        return s.to_string();
    }
    let body = factors.join("*");
    if s.is_one() {
        body
    } else if (-s).is_one() {
        format!("-{body}")
    } else {
        format!("{s}*{body}")
    }
}

/// Deterministic text for a polynomial, accepted back by the parser.
/// Terms are ordered by Grassmann degree, φ-degree, λ-degree and then by
/// their index structure. Factors print as φ, c, c̄, λ.
pub fn print_canonical(p: &SuperPoly) -> String {
    let mut terms: Vec<(&Monomial, &Scalar)> = p.terms().collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| a.0.display_cmp(b.0));
    let mut out = String::new();
    for (k, (m, s)) in terms.into_iter().enumerate() {
        let t = term(m, s);
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}
