//! Bivariate Laurent polynomials in `X`, `Y` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(x, y)` of a monomial `X^x Y^y`.
pub type Exponent = (i64, i64);

/// A finite sum of monomials `c X^x Y^y`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_terms([(0, 0, c.into())])
    }

    pub fn monomial(c: impl Into<BigInt>, x: i64, y: i64) -> Self {
        Self::from_terms([(x, y, c.into())])
    }

    /// Collects `(x, y, coeff)` triples, merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (x, y, c) in terms {
            p.add_term(x, y, c.into());
        }
        p
    }

    pub fn add_term(&mut self, x: i64, y: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((x, y)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: i64, y: i64) -> BigInt {
        self.terms.get(&(x, y)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in increasing `(x, y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Lexicographically smallest term.
    pub fn min_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    /// Lexicographically largest term.
    pub fn max_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Applies an affine-free linear map to every exponent pair.
    pub fn map_exponents(&self, f: impl Fn(i64, i64) -> Exponent) -> Self {
        let mut out = Self::zero();
        for (&(x, y), c) in &self.terms {
            let (nx, ny) = f(x, y);
            out.add_term(nx, ny, c.clone());
        }
        out
    }

    /// `P(X^fx, Y^fy)`.
    pub fn substitute_powers(&self, fx: i64, fy: i64) -> Self {
        self.map_exponents(|x, y| (fx * x, fy * y))
    }

    /// `P(X^{-1}, Y^{-1})`.
    pub fn invert(&self) -> Self {
        self.map_exponents(|x, y| (-x, -y))
    }

    /// `X^dx Y^dy · P`.
    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        self.map_exponents(|x, y| (x + dx, y + dy))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Specializes `X = x`, returning the coefficients of the remaining
    /// Laurent polynomial in `Y` keyed by `Y`-exponent.
    pub fn eval_x(&self, x: &BigRational) -> BTreeMap<i64, BigRational> {
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&(ex, ey), c) in &self.terms {
            let v = rational_pow(x, ex) * BigRational::from_integer(c.clone());
            let slot = out.entry(ey).or_insert_with(BigRational::zero);
            *slot += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// `x^e` for any integer `e`; `x` must be nonzero when `e < 0`.
pub fn rational_pow(x: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(x, y), c) in &rhs.terms {
            out.add_term(x, y, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&(x, y), c) in &rhs.terms {
            out.add_term(x, y, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(x1, y1), c1) in &self.terms {
            for (&(x2, y2), c2) in &rhs.terms {
                out.add_term(x1 + x2, y1 + y2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            for (&(x, y), c) in &p.terms {
                acc.add_term(x, y, c.clone());
            }
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

fn fmt_var(f: &mut fmt::Formatter<'_>, name: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(x, y), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = abs.is_one();
            if !unit || (x == 0 && y == 0) {
                write!(f, "{abs}")?;
                if x != 0 || y != 0 {
                    write!(f, "*")?;
                }
            }
            fmt_var(f, "X", x)?;
            if x != 0 && y != 0 {
                write!(f, "*")?;
            }
            fmt_var(f, "Y", y)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(x, y, c)| (x, y, c)))
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(0, 0, 1), (1, 1, 1)]);
        let b = p(&[(0, 0, 1), (1, 1, -1)]);
        assert_eq!(&a * &b, p(&[(0, 0, 1), (2, 2, -1)]));
    }

    #[test]
    fn multiply_by_one_and_monomial_shift() {
        let a = p(&[(-1, 0, 1), (0, 1, 1)]);
        assert_eq!(&a * &LaurentPoly::one(), a);
        assert_eq!(&a * &p(&[(1, 0, 1)]), p(&[(0, 0, 1), (1, 1, 1)]));
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let a = p(&[(1, 1, 3), (1, 1, -3), (2, 0, 0)]);
        assert!(a.is_zero());
        let b = p(&[(0, 0, 1), (1, 1, 1)]);
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn eval_x_collects_by_y_degree() {
        // X^-1 Y + 2 X Y + Y^2 at X = 2 -> (1/2 + 4) Y + Y^2
        let a = p(&[(-1, 1, 1), (1, 1, 2), (0, 2, 1)]);
        let v = a.eval_x(&BigRational::from_integer(2.into()));
        assert_eq!(v[&1], BigRational::new(9.into(), 2.into()));
        assert_eq!(v[&2], BigRational::one());
    }

    #[test]
    fn display_is_readable() {
        let a = p(&[(0, 0, 1), (5, 3, 1), (2, 0, -2)]);
        assert_eq!(a.to_string(), "1 - 2*X^2 + X^5*Y^3");
    }
}
