//! Functional equations `W(1/X, 1/Y) = ± X^a Y^b W(X, Y)`, the weight
//! comparison, and the leading behaviour of `W(1, 1/Y) / W(1, Y)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{EulerForm, LaurentPoly};
use crate::comb::{binom, choose2};
use crate::error::{Result, ZetaError};
use crate::families::{free_alpha_beta, lmn_r, make_W, weight, FamilyId, FamilyInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryFactor {
    pub sign: i32,
    pub a: i64,
    pub b: i64,
}

impl SymmetryFactor {
    pub fn new(sign: i32, a: i64, b: i64) -> Self {
        Self { sign, a, b }
    }
}

/// Finds `ε, u, v` with `N(1/X, 1/Y) = ε X^{-u} Y^{-v} N(X, Y)` and composes
/// them with the inversion of the denominator. `None` when no such monomial
/// relation exists.
pub fn extract_functional_equation(w: &EulerForm) -> Option<SymmetryFactor> {
    let inv = w.invert_variables();
    let ((x0, y0), c0) = inv.numerator.min_term()?;
    let ((x1, y1), c1) = inv.inverted.min_term()?;
    let eps = if c1 == c0 {
        1
    } else if *c1 == -c0 {
        -1
    } else {
        return None;
    };
    let (dx, dy) = (x1 - x0, y1 - y0);
    let candidate = inv.numerator.shift(dx, dy).scale(&BigInt::from(eps));
    if candidate != inv.inverted {
        return None;
    }
    Some(SymmetryFactor {
        sign: inv.sign * eps,
        a: inv.a + dx,
        b: inv.b + dy,
    })
}

/// Checks `W(1/X, 1/Y) = sign X^a Y^b W(X, Y)` by cross-multiplication.
pub fn identity_holds(w: &EulerForm, f: &SymmetryFactor) -> bool {
    let (p, q) = w.inverted_fraction();
    let lhs = &p * &w.denominator_poly();
    let rhs = &(&w.numerator().shift(f.a, f.b) * &q) * &LaurentPoly::constant(f.sign);
    lhs == rhs
}

/// The symmetry factor the closed formulas predict for each family.
pub fn closed_form_factor(inst: &FamilyInstance) -> Option<SymmetryFactor> {
    let d = inst.d as i64;
    let f = match inst.family {
        FamilyId::Abelian(_) | FamilyId::BK => return None,
        FamilyId::Free { c, g } => {
            let (alpha, beta) = free_alpha_beta(c, g, inst.d);
            let g = g as i64;
            SymmetryFactor::new(if g % 2 == 0 { 1 } else { -1 }, g * beta + choose2(g), g * alpha)
        }
        FamilyId::Heisenberg(m) => {
            let m = m as i64;
            SymmetryFactor::new(if m % 2 == 1 { 1 } else { -1 }, m * m + 4 * m * d, 2 * (m + 1))
        }
        FamilyId::Lmn { m, n } => {
            let (r1, r2) = lmn_r(m, n);
            let (m, n) = (m as i64, n as i64);
            SymmetryFactor::new(
                if n % 2 == 1 { 1 } else { -1 },
                choose2(n) + binom(2 * m + n - 2, 2 * m - 1) + 2 * d * n * (r1 + r2),
                r1 + r2 + 2 * n,
            )
        }
        FamilyId::MaxClass(c) => {
            let c = c as i64;
            SymmetryFactor::new(1, c * (2 * d + c - 1) - 1, choose2(c + 1) + 1)
        }
        FamilyId::FiliformF4 => SymmetryFactor::new(-1, 16 + 10 * d, 15),
        FamilyId::Q5 => SymmetryFactor::new(1, 9 + 9 * d, 9),
    };
    Some(f)
}

/// Whether the `Y`-exponent of the functional equation equals the weight.
pub fn check_weight_conjecture(inst: &FamilyInstance) -> Result<bool> {
    if !inst.family.has_functional_equation() {
        return Err(ZetaError::Precondition(format!(
            "{} carries no functional equation to compare against a weight",
            inst.family
        )));
    }
    let w = make_W(inst)?;
    let wt = weight(&inst.family)?;
    Ok(extract_functional_equation(&w).is_some_and(|f| f.b == wt))
}

/// `(e, c)` with `W(1, 1/Y) / W(1, Y) ~ c Y^e` as `Y → ∞`. The sign of `c`
/// is kept: a single factor `1/(1-Y)` gives `(1, -1)`.
pub fn reduced_leading_ratio(w: &EulerForm) -> Result<(i64, BigRational)> {
    let mut n1: BTreeMap<i64, BigInt> = BTreeMap::new();
    for ((_, y), c) in w.numerator().terms() {
        *n1.entry(y).or_insert_with(BigInt::zero) += c;
    }
    n1.retain(|_, c| !c.is_zero());
    let (Some((&lo, n_lo)), Some((&hi, n_hi))) = (n1.iter().next(), n1.iter().next_back()) else {
        return Err(ZetaError::DegenerateSpecialization("numerator vanishes at X = 1".into()));
    };
    let k = w.denominator().len();
    let sum_b: i64 = w.denominator().iter().map(|p| p.1).sum();
    let mut c = BigRational::new(n_lo.clone(), n_hi.clone());
    if k % 2 == 1 {
        c = -c;
    }
    Ok((sum_b - lo - hi, c))
}

/// Convenience split of the ratio constant into `(|c|, sign)`.
pub fn ratio_parts(c: &BigRational) -> (BigRational, i32) {
    (c.abs(), if c.is_negative() { -1 } else { 1 })
}
