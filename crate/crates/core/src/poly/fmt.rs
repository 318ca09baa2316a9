use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactnum::GaussianRational;

/// Writes `c1*m1 + c2*m2 + ...`, pulling signs out of real and purely
/// imaginary coefficients. An empty monomial is the constant term; an empty
/// sum prints as `0`.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (GaussianRational, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let (neg, body) = coefficient_body(&c, mono.is_empty());
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (body.is_empty(), mono.is_empty()) {
            (true, true) => f.write_str("1")?,
            (true, false) => f.write_str(&mono)?,
            (false, true) => f.write_str(&body)?,
            (false, false) => write!(f, "{body}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Sign and printed magnitude of a coefficient. An empty body means the
/// coefficient is `±1` and can be omitted.
fn coefficient_body(c: &GaussianRational, constant: bool) -> (bool, String) {
    if c.im.is_zero() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        let body = if a.is_one() && !constant {
            String::new()
        } else {
            a.to_string()
        };
        (neg, body)
    } else if c.re.is_zero() {
        let neg = c.im.is_negative();
        let b = c.im.abs();
        let body = if b.is_one() { "i".to_string() } else { format!("{b}*i") };
        (neg, body)
    } else {
        (false, format!("({c})"))
    }
}
