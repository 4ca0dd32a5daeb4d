//! Rational functions `N(X,Y) / Π (1 - X^a Y^b)`.

use std::fmt;

use num_bigint::BigInt;

use super::poly::LaurentPoly;
use crate::error::{Result, ZetaError};

/// A rational function with a Laurent numerator and a denominator made of
/// factors `1 - X^a Y^b` (`a >= 0`, `b >= 1`). Factors are kept verbatim and
/// sorted; numerator and denominator are never cancelled against each other.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerForm {
    numerator: LaurentPoly,
    denominator: Vec<(i64, i64)>,
}

/// Outcome of [`EulerForm::invert_variables`]:
/// `W(1/X, 1/Y) = sign · X^a Y^b · inverted / numerator · W(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inversion {
    pub sign: i32,
    pub a: i64,
    pub b: i64,
    /// `N(1/X, 1/Y)`.
    pub inverted: LaurentPoly,
    /// `N(X, Y)`.
    pub numerator: LaurentPoly,
}

fn check_pair(a: i64, b: i64) -> Result<()> {
    if a < 0 || b < 1 {
        return Err(ZetaError::InvalidParameter(format!(
            "denominator factor (1 - X^{a} Y^{b}) needs a >= 0 and b >= 1"
        )));
    }
    Ok(())
}

/// `1 - X^a Y^b`.
pub fn one_minus(a: i64, b: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(0, 0, 1), (a, b, -1)])
}

impl EulerForm {
    pub fn new(numerator: LaurentPoly, denominator: Vec<(i64, i64)>) -> Result<Self> {
        for &(a, b) in &denominator {
            check_pair(a, b)?;
        }
        let mut denominator = denominator;
        denominator.sort_unstable();
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// `1 / Π (1 - X^a Y^b)`.
    pub fn from_denominator(denominator: Vec<(i64, i64)>) -> Result<Self> {
        Self::new(LaurentPoly::one(), denominator)
    }

    pub fn one() -> Self {
        Self {
            numerator: LaurentPoly::one(),
            denominator: Vec::new(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// Denominator pairs `(a, b)` in lexicographic order.
    pub fn denominator(&self) -> &[(i64, i64)] {
        &self.denominator
    }

    /// The expanded product `Π (1 - X^a Y^b)`.
    pub fn denominator_poly(&self) -> LaurentPoly {
        self.denominator.iter().map(|&(a, b)| one_minus(a, b)).product()
    }

    pub fn mul(&self, other: &EulerForm) -> EulerForm {
        let mut denominator = self.denominator.clone();
        denominator.extend_from_slice(&other.denominator);
        denominator.sort_unstable();
        EulerForm {
            numerator: &self.numerator * &other.numerator,
            denominator,
        }
    }

    pub fn pow(&self, k: u32) -> EulerForm {
        (0..k).fold(EulerForm::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies numerator and denominator by the same factor `1 - X^a Y^b`.
    pub fn extend(&self, a: i64, b: i64) -> Result<EulerForm> {
        check_pair(a, b)?;
        let mut denominator = self.denominator.clone();
        denominator.push((a, b));
        denominator.sort_unstable();
        Ok(EulerForm {
            numerator: &self.numerator * &one_minus(a, b),
            denominator,
        })
    }

    /// `W(X^fx, Y^fy)`.
    pub fn substitute_powers(&self, fx: i64, fy: i64) -> Result<EulerForm> {
        if fx < 1 || fy < 1 {
            return Err(ZetaError::InvalidParameter(format!(
                "substitution powers must be positive, got ({fx}, {fy})"
            )));
        }
        self.substitute_monomials((fx, 0), (0, fy))
    }

    /// Substitutes `X ↦ X^xx Y^xy` and `Y ↦ X^yx Y^yy`, so the exponent pair
    /// `(x, y)` becomes `(x·xx + y·yx, x·xy + y·yy)`. Fails if a denominator
    /// factor leaves the admissible shape.
    pub fn substitute_monomials(&self, (xx, xy): (i64, i64), (yx, yy): (i64, i64)) -> Result<EulerForm> {
        let map = |x: i64, y: i64| (x * xx + y * yx, x * xy + y * yy);
        let denominator = self
            .denominator
            .iter()
            .map(|&(a, b)| map(a, b))
            .collect::<Vec<_>>();
        EulerForm::new(self.numerator.map_exponents(map), denominator)
    }

    /// Rewrites `W(1/X, 1/Y)` in terms of `W(X, Y)` using
    /// `1 - X^{-a} Y^{-b} = -X^{-a} Y^{-b} (1 - X^a Y^b)` on every factor.
    pub fn invert_variables(&self) -> Inversion {
        let k = self.denominator.len();
        let a = self.denominator.iter().map(|p| p.0).sum();
        let b = self.denominator.iter().map(|p| p.1).sum();
        Inversion {
            sign: if k % 2 == 0 { 1 } else { -1 },
            a,
            b,
            inverted: self.numerator.invert(),
            numerator: self.numerator.clone(),
        }
    }

    /// `W(1/X, 1/Y)` as a plain fraction of Laurent polynomials.
    pub fn inverted_fraction(&self) -> (LaurentPoly, LaurentPoly) {
        (self.numerator.invert(), self.denominator_poly().invert())
    }

    /// Exact equality of the represented rational functions, decided by
    /// cross-multiplication after striking denominator factors common to both.
    pub fn ratfunc_equal(&self, other: &EulerForm) -> bool {
        let (only_self, only_other) = multiset_difference(&self.denominator, &other.denominator);
        let lhs = &self.numerator * &product(&only_other);
        let rhs = &other.numerator * &product(&only_self);
        lhs == rhs
    }

    /// `W · X^dx Y^dy`.
    pub fn shift(&self, dx: i64, dy: i64) -> EulerForm {
        EulerForm {
            numerator: self.numerator.shift(dx, dy),
            denominator: self.denominator.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> EulerForm {
        EulerForm {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    /// Compares `p / q` against this form, with `p`, `q` plain Laurent
    /// polynomials.
    pub fn equals_fraction(&self, p: &LaurentPoly, q: &LaurentPoly) -> bool {
        &self.numerator * q == p * &self.denominator_poly()
    }
}

fn product(pairs: &[(i64, i64)]) -> LaurentPoly {
    pairs.iter().map(|&(a, b)| one_minus(a, b)).product()
}

/// Both inputs sorted; returns `(a \ b, b \ a)` as multisets.
fn multiset_difference(a: &[(i64, i64)], b: &[(i64, i64)]) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                only_a.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    only_a.extend_from_slice(&a[i..]);
    only_b.extend_from_slice(&b[j..]);
    (only_a, only_b)
}

impl fmt::Display for EulerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        write!(f, " / (")?;
        for (i, &(a, b)) in self.denominator.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(1 - {})", LaurentPoly::monomial(1, a, b))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ef(num: &[(i64, i64, i64)], den: &[(i64, i64)]) -> EulerForm {
        EulerForm::new(
            LaurentPoly::from_terms(num.iter().map(|&(x, y, c)| (x, y, c))),
            den.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn substitution_scales_every_exponent() {
        let w = ef(&[(0, 0, 1)], &[(1, 2)]);
        assert_eq!(w.substitute_powers(2, 2).unwrap(), ef(&[(0, 0, 1)], &[(2, 4)]));
        let v = ef(&[(0, 0, 1), (3, 1, 1)], &[]);
        assert_eq!(v.substitute_powers(2, 2).unwrap(), ef(&[(0, 0, 1), (6, 2, 1)], &[]));
    }

    #[test]
    fn inversion_of_single_factor() {
        let inv = ef(&[(0, 0, 1)], &[(2, 2)]).invert_variables();
        assert_eq!((inv.sign, inv.a, inv.b), (-1, 2, 2));
        assert_eq!(inv.inverted, LaurentPoly::one());
    }

    #[test]
    fn inversion_of_two_factors() {
        let inv = ef(&[(0, 0, 1)], &[(2, 2), (3, 2)]).invert_variables();
        assert_eq!((inv.sign, inv.a, inv.b), (1, 5, 4));
    }

    #[test]
    fn inversion_with_numerator() {
        let w = ef(&[(0, 0, 1), (5, 3, 1)], &[(7, 3), (6, 3), (4, 3)]);
        let inv = w.invert_variables();
        assert_eq!((inv.sign, inv.a, inv.b), (-1, 17, 9));
        // (1 + X^-5 Y^-3) = X^-5 Y^-3 (1 + X^5 Y^3)
        assert_eq!(inv.inverted, inv.numerator.shift(-5, -3));
    }

    #[test]
    fn inversion_identity_holds_as_rational_functions() {
        let w = ef(&[(0, 0, 1), (5, 3, 1), (-2, 1, -3)], &[(7, 3), (6, 3), (0, 1)]);
        let inv = w.invert_variables();
        let (p, q) = w.inverted_fraction();
        let rhs = EulerForm::new(&inv.inverted.shift(inv.a, inv.b) * &LaurentPoly::constant(inv.sign), w.denominator().to_vec()).unwrap();
        assert!(rhs.equals_fraction(&p, &q));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let w = ef(&[(0, 0, 1)], &[(1, 1)]);
        assert!(w.ratfunc_equal(&w));
        assert!(w.ratfunc_equal(&ef(&[(0, 0, 1), (1, 1, 1)], &[(2, 2)])));
        assert!(!w.ratfunc_equal(&ef(&[(0, 0, 1)], &[(2, 2)])));
    }

    #[test]
    fn rejects_bad_denominator() {
        assert!(EulerForm::from_denominator(vec![(1, 0)]).is_err());
        assert!(EulerForm::from_denominator(vec![(-1, 1)]).is_err());
    }

    #[test]
    fn denominators_are_sorted() {
        let w = ef(&[(0, 0, 1)], &[(7, 3), (4, 3), (6, 3)]);
        assert_eq!(w.denominator(), &[(4, 3), (6, 3), (7, 3)]);
    }
}
