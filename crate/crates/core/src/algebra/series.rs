//! Truncated power series with rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::euler_form::EulerForm;
use super::poly::rational_pow;
use crate::error::{Result, ZetaError};

/// Coefficients of `t^0 .. t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<BigRational>) -> Self {
        assert!(!coefficients.is_empty(), "a truncated series has at least one coefficient");
        Self { coefficients }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = BigRational::one();
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coefficients[i]
    }

    /// Integer coefficients, or `None` if any is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out)
    }

    /// Divides in place by `1 - c t^k`, i.e. multiplies by the geometric series.
    pub fn divide_by_one_minus(&mut self, c: &BigRational, k: usize) {
        if k == 0 {
            panic!("geometric factor needs positive degree");
        }
        for i in k..self.coefficients.len() {
            let add = &self.coefficients[i - k] * c;
            self.coefficients[i] += add;
        }
    }

    /// `f(t^f)` truncated to order `order`.
    pub fn dilate(&self, f: usize, order: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(order);
        for (i, c) in self.coefficients.iter().enumerate() {
            if i * f > order {
                break;
            }
            out.coefficients[i * f] = c.clone();
        }
        out
    }
}

/// Power-series expansion of `w` in `Y` at the specialization `X = x`,
/// through `Y^order`.
pub fn expand_series(w: &EulerForm, x: &BigRational, order: usize) -> Result<TruncatedSeries> {
    if x.is_zero() {
        return Err(ZetaError::InvalidParameter("X must be specialized to a nonzero value".into()));
    }
    let mut s = TruncatedSeries::zero(order);
    for ((ex, ey), c) in w.numerator().terms() {
        if ey < 0 {
            return Err(ZetaError::NotAPowerSeries(format!(
                "numerator term with Y-exponent {ey}"
            )));
        }
        let ey = ey as usize;
        if ey <= order {
            s.coefficients[ey] += rational_pow(x, ex) * BigRational::from_integer(c.clone());
        }
    }
    for &(a, b) in w.denominator() {
        let b = b as usize;
        if b > order {
            continue;
        }
        s.divide_by_one_minus(&rational_pow(x, a), b);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::LaurentPoly;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sublattices_of_rank_two() {
        let w = EulerForm::from_denominator(vec![(0, 1), (1, 1)]).unwrap();
        let s = expand_series(&w, &q(2), 1).unwrap();
        assert_eq!(s.coefficients(), &[q(1), q(3)]);
    }

    #[test]
    fn heisenberg_at_two() {
        let w = EulerForm::from_denominator(vec![(2, 2), (3, 2)]).unwrap();
        let s = expand_series(&w, &q(2), 2).unwrap();
        assert_eq!(s.coefficients(), &[q(1), q(0), q(12)]);
    }

    #[test]
    fn negative_x_exponents_evaluate_first() {
        let w = EulerForm::new(LaurentPoly::from_terms([(0, 0, 1), (-1, 1, 1)]), vec![]).unwrap();
        let s = expand_series(&w, &q(2), 1).unwrap();
        assert_eq!(s.coeff(1), &BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn refuses_negative_y_and_zero_x() {
        let w = EulerForm::new(LaurentPoly::monomial(1, 0, -1), vec![]).unwrap();
        assert!(expand_series(&w, &q(2), 3).is_err());
        assert!(expand_series(&EulerForm::one(), &q(0), 3).is_err());
    }

    #[test]
    fn dilation_and_product() {
        let w = EulerForm::from_denominator(vec![(0, 1)]).unwrap();
        let s = expand_series(&w, &q(1), 3).unwrap();
        let d = s.dilate(2, 5);
        assert_eq!(d.coefficients(), &[q(1), q(0), q(1), q(0), q(1), q(0)]);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficients(), &[q(1), q(2), q(3), q(4)]);
    }
}
