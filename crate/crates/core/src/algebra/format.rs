//! JSON and LaTeX renderings of [`EulerForm`].

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use super::euler_form::EulerForm;
use super::poly::LaurentPoly;
use crate::error::{Result, ZetaError};

/// `{"numerator":[[coeff,x,y],...],"denominator":[[a,b],...]}` with
/// coefficients as decimal strings.
pub fn to_json(w: &EulerForm) -> Value {
    json!({
        "numerator": poly_to_json(w.numerator()),
        "denominator": w.denominator().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    })
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|((x, y), c)| json!([c.to_string(), x, y]))
            .collect(),
    )
}

fn parse_err(msg: &str) -> ZetaError {
    ZetaError::Parse(msg.to_string())
}

pub fn from_json(v: &Value) -> Result<EulerForm> {
    let num = v
        .get("numerator")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing numerator array"))?;
    let mut p = LaurentPoly::zero();
    for t in num {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| parse_err("numerator term must be [coeff,x,y]"))?;
        let c: BigInt = t[0]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err("coefficient must be a decimal string"))?;
        let x = t[1].as_i64().ok_or_else(|| parse_err("x exponent must be an integer"))?;
        let y = t[2].as_i64().ok_or_else(|| parse_err("y exponent must be an integer"))?;
        p.add_term(x, y, c);
    }
    let den = v
        .get("denominator")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing denominator array"))?;
    let mut pairs = Vec::with_capacity(den.len());
    for d in den {
        let ab = d
            .as_array()
            .filter(|d| d.len() == 2)
            .and_then(|d| Some((d[0].as_i64()?, d[1].as_i64()?)))
            .ok_or_else(|| parse_err("denominator entry must be [a,b]"))?;
        pairs.push(ab);
    }
    EulerForm::new(p, pairs)
}

fn latex_monomial(x: i64, y: i64, xvar: &str, yvar: &str) -> String {
    let mut s = String::new();
    for (e, v) in [(x, xvar), (y, yvar)] {
        match e {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{{{e}}}")),
        }
    }
    s
}

pub fn poly_to_latex(p: &LaurentPoly, xvar: &str, yvar: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, ((x, y), c)) in p.terms().enumerate() {
        let m = latex_monomial(x, y, xvar, yvar);
        let abs = c.abs();
        if i == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !abs.is_one() || m.is_empty() {
            s.push_str(&abs.to_string());
        }
        s.push_str(&m);
    }
    s
}

/// `\frac{N}{(1 - X^{a}Y^{b})\cdots}`.
pub fn to_latex(w: &EulerForm) -> String {
    to_latex_in(w, "X", "Y")
}

pub fn to_latex_in(w: &EulerForm, xvar: &str, yvar: &str) -> String {
    let num = poly_to_latex(w.numerator(), xvar, yvar);
    if w.denominator().is_empty() {
        return num;
    }
    let den: String = w
        .denominator()
        .iter()
        .map(|&(a, b)| format!("(1 - {})", latex_monomial(a, b, xvar, yvar)))
        .collect();
    format!("\\frac{{{num}}}{{{den}}}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let w = EulerForm::new(
            LaurentPoly::from_terms([(0, 0, 1), (5, 3, 1), (-2, 1, -7)]),
            vec![(7, 3), (4, 3)],
        )
        .unwrap();
        let v = to_json(&w);
        assert_eq!(
            v.to_string(),
            r#"{"denominator":[[4,3],[7,3]],"numerator":[["-7",-2,1],["1",0,0],["1",5,3]]}"#
        );
        assert_eq!(from_json(&v).unwrap(), w);
    }

    #[test]
    fn latex_fraction() {
        let w = EulerForm::new(LaurentPoly::from_terms([(0, 0, 1), (5, 3, 1)]), vec![(7, 3), (4, 3)]).unwrap();
        assert_eq!(to_latex(&w), "\\frac{1 + X^{5}Y^{3}}{(1 - X^{4}Y^{3})(1 - X^{7}Y^{3})}");
        let v = EulerForm::from_denominator(vec![(0, 1), (1, 1)]).unwrap();
        assert_eq!(to_latex(&v), "\\frac{1}{(1 - Y)(1 - XY)}");
    }

    #[test]
    fn from_json_rejects_garbage() {
        assert!(from_json(&json!({"numerator": [[1, 0, 0]], "denominator": []})).is_err());
        assert!(from_json(&json!({"numerator": [], "denominator": [[1, 0]]})).is_err());
    }
}
