//! Polynomials over a [`FieldSpec`](crate::field::FieldSpec): dense
//! univariate, sparse multivariate in graded-lex order, factorization, and
//! the shared text grammar.

pub mod factor;
pub mod multi;
pub mod parse;
pub mod uni;
mod zpoly;

pub use factor::{factor_univariate, factor_univariate_with_rng, squarefree_decomposition};
pub use multi::{Monomial, MultiPoly};
pub use parse::{parse_multi, parse_uni};
pub use uni::{signed_reversal, signed_reversal_inverse, UniPoly};

use crate::field::FieldElement;

/// Renders `(coefficient, monomial text)` pairs given in descending order as
/// `c*m + c*m - c`. An empty monomial text denotes the constant term.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a FieldElement, String)>,
{
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
