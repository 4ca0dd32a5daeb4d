//! Local Euler factors in `t = p^{-s}`, global Dirichlet coefficients, and
//! abscissae read off the denominator shape.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::rational_pow;
use crate::algebra::{EulerForm, TruncatedSeries};
use crate::error::{Result, ZetaError};
use crate::families::{make_W, shape_maximum, FamilyInstance};
use crate::numberfield::{check_prime, DecompositionType, NumberField};
use crate::symmetry::{extract_functional_equation, SymmetryFactor};

/// A univariate rational function `Σ n_k t^k / Π (1 - c_j t^{k_j})` attached
/// to a rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: u64,
    numerator: BTreeMap<u64, BigRational>,
    denominator: Vec<(BigInt, u64)>,
}

/// `b_1 .. b_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSeries {
    coefficients: Vec<BigInt>,
}

/// Result of [`abscissa_from_shape`]. `shape_verified` is advisory: it only
/// records that the numerator has nonnegative coefficients and constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeAbscissa {
    pub value: BigRational,
    pub shape_verified: bool,
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn poly_mul(a: &BTreeMap<u64, BigRational>, b: &BTreeMap<u64, BigRational>) -> BTreeMap<u64, BigRational> {
    let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert_with(BigRational::zero) += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl LocalFactor {
    /// Specializes `X = p`, `Y = t`.
    pub fn from_euler_form(w: &EulerForm, p: u64) -> Result<Self> {
        let x = rat(BigInt::from(p));
        let mut numerator = BTreeMap::new();
        for (y, c) in w.numerator().eval_x(&x) {
            if y < 0 {
                return Err(ZetaError::NotAPowerSeries(format!("numerator term in t^{y}")));
            }
            numerator.insert(y as u64, c);
        }
        let denominator = w
            .denominator()
            .iter()
            .map(|&(a, b)| (BigInt::from(p).pow(a as u32), b as u64))
            .collect();
        Ok(Self { p, numerator, denominator })
    }

    pub fn numerator(&self) -> &BTreeMap<u64, BigRational> {
        &self.numerator
    }

    /// Factors `(c, k)` standing for `1 - c t^k`.
    pub fn denominator(&self) -> &[(BigInt, u64)] {
        &self.denominator
    }

    pub fn mul(&self, other: &LocalFactor) -> LocalFactor {
        assert_eq!(self.p, other.p, "local factors at different primes");
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        denominator.sort();
        LocalFactor {
            p: self.p,
            numerator: poly_mul(&self.numerator, &other.numerator),
            denominator,
        }
    }

    /// Substitutes `t ↦ p^β t^α`, i.e. `s ↦ αs - β`.
    pub fn compose_argument(&self, alpha: u64, beta: i64) -> LocalFactor {
        let pr = rat(BigInt::from(self.p));
        let numerator = self
            .numerator
            .iter()
            .map(|(&k, c)| (alpha * k, c * rational_pow(&pr, beta * k as i64)))
            .collect();
        let mut denominator: Vec<(BigInt, u64)> = self
            .denominator
            .iter()
            .map(|(c, k)| {
                let scaled = rat(c.clone()) * rational_pow(&pr, beta * *k as i64);
                assert!(scaled.is_integer(), "shift leaves integral denominator constants");
                (scaled.to_integer(), alpha * k)
            })
            .collect();
        denominator.sort();
        LocalFactor { p: self.p, numerator, denominator }
    }

    fn denominator_poly(&self) -> BTreeMap<u64, BigRational> {
        let mut acc = BTreeMap::from([(0u64, BigRational::one())]);
        for (c, k) in &self.denominator {
            let f = BTreeMap::from([(0u64, BigRational::one()), (*k, -rat(c.clone()))]);
            acc = poly_mul(&acc, &f);
        }
        acc
    }

    /// Equality of the represented rational functions.
    pub fn ratfunc_equal(&self, other: &LocalFactor) -> bool {
        self.p == other.p
            && poly_mul(&self.numerator, &other.denominator_poly()) == poly_mul(&other.numerator, &self.denominator_poly())
    }

    /// Power series in `t` through `t^order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        let mut coeffs = s.coefficients().to_vec();
        for (&k, c) in &self.numerator {
            if (k as usize) <= order {
                coeffs[k as usize] += c;
            }
        }
        s = TruncatedSeries::new(coeffs);
        for (c, k) in &self.denominator {
            if *k as usize <= order {
                s.divide_by_one_minus(&rat(c.clone()), *k as usize);
            }
        }
        s
    }
}

impl GlobalSeries {
    /// `b_n`, `1 <= n <= N`.
    pub fn b(&self, n: usize) -> &BigInt {
        &self.coefficients[n - 1]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `b_1 .. b_N` in order.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Checks `b_{mn} = b_m b_n` for all coprime `m, n` with `mn <= N`.
    pub fn is_multiplicative(&self) -> bool {
        let n = self.len();
        for a in 1..=n {
            for b in 1..=n / a {
                if num_integer::gcd(a, b) == 1 && self.b(a * b) != &(self.b(a) * self.b(b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }
}

/// `Π_i W(X^{f_i}, Y^{f_i})` over the pairs of the type.
#[allow(non_snake_case)]
pub fn type_specialized_W(w: &EulerForm, ty: &DecompositionType) -> Result<EulerForm> {
    let mut acc = EulerForm::one();
    for &(_, f) in ty.pairs() {
        acc = acc.mul(&w.substitute_powers(f as i64, f as i64)?);
    }
    Ok(acc)
}

/// Local factor at `p` for a given decomposition type.
pub fn local_factor_for_type(w: &EulerForm, ty: &DecompositionType, p: u64) -> Result<LocalFactor> {
    check_prime(p)?;
    LocalFactor::from_euler_form(&type_specialized_W(w, ty)?, p)
}

fn check_degree(inst: &FamilyInstance, k: &NumberField) -> Result<()> {
    if k.degree() != inst.d as usize {
        return Err(ZetaError::DegreeMismatch {
            field: k.degree(),
            instance: inst.d,
        });
    }
    Ok(())
}

pub fn local_factor(inst: &FamilyInstance, k: &NumberField, p: u64) -> Result<LocalFactor> {
    check_degree(inst, k)?;
    let ty = k.decomposition_type(p)?;
    local_factor_for_type(&make_W(inst)?, &ty, p)
}

/// Dedekind local factor at `p` as a function of `t`.
pub fn dedekind_local_factor(k: &NumberField, p: u64) -> Result<LocalFactor> {
    LocalFactor::from_euler_form(&k.dedekind_zeta_local(p)?, p)
}

fn primes_up_to(n: usize) -> Vec<u64> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Largest `k` with `p^k <= n`.
fn log_floor(p: u64, n: u64) -> usize {
    let mut k = 0;
    let mut q = p;
    while q <= n {
        k += 1;
        q *= p;
    }
    k
}

/// Global coefficients from per-prime decomposition types supplied by `types`.
pub fn global_coefficients_with(
    w: &EulerForm,
    n: usize,
    mut types: impl FnMut(u64) -> Result<DecompositionType>,
) -> Result<GlobalSeries> {
    if n == 0 {
        return Ok(GlobalSeries { coefficients: Vec::new() });
    }
    let mut local: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for p in primes_up_to(n) {
        let ty = types(p)?;
        let order = log_floor(p, n as u64);
        let series = local_factor_for_type(w, &ty, p)?.expand(order);
        let ints = series.to_integers().ok_or_else(|| {
            ZetaError::NotAPowerSeries(format!("non-integral local coefficient at p = {p}"))
        })?;
        local.insert(p, ints);
    }
    let mut b = vec![BigInt::zero(); n + 1];
    b[1] = BigInt::one();
    for m in 2..=n {
        let p = (2..=m).find(|d| m % d == 0).unwrap();
        let (mut rest, mut k) = (m, 0);
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        b[m] = &local[&(p as u64)][k] * &b[rest];
    }
    b.remove(0);
    Ok(GlobalSeries { coefficients: b })
}

/// `b_1 .. b_N` of the zeta function of the family over `K`. Fails on the
/// first prime whose decomposition type cannot be certified.
pub fn global_coefficients(inst: &FamilyInstance, k: &NumberField, n: usize) -> Result<GlobalSeries> {
    check_degree(inst, k)?;
    global_coefficients_with(&make_W(inst)?, n, |p| k.decomposition_type(p))
}

/// `max (a+1)/b` over the denominator, with an advisory shape flag.
pub fn abscissa_from_shape(w: &EulerForm) -> Result<ShapeAbscissa> {
    let value = shape_maximum(w)
        .ok_or_else(|| ZetaError::Precondition("no denominator factors to read an abscissa from".into()))?;
    let num = w.numerator();
    let shape_verified = num.has_nonnegative_coefficients() && num.coeff(0, 0).is_one();
    Ok(ShapeAbscissa { value, shape_verified })
}

/// Functional equation of the type-specialized factor, if any.
pub fn type_functional_equation(w: &EulerForm, ty: &DecompositionType) -> Result<Option<SymmetryFactor>> {
    Ok(extract_functional_equation(&type_specialized_W(w, ty)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyId;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn h1(d: u32) -> FamilyInstance {
        FamilyInstance::new(FamilyId::Heisenberg(1), d).unwrap()
    }

    #[test]
    fn type_specialization() {
        let w = make_W(&h1(1)).unwrap();
        let one = DecompositionType::rational();
        assert_eq!(type_specialized_W(&w, &one).unwrap(), w);
        let split = DecompositionType::new(vec![(1, 1), (1, 1)]).unwrap();
        assert_eq!(type_specialized_W(&w, &split).unwrap(), w.pow(2));
        let inert = DecompositionType::new(vec![(1, 2)]).unwrap();
        assert_eq!(type_specialized_W(&w, &inert).unwrap(), w.substitute_powers(2, 2).unwrap());
    }

    #[test]
    fn heisenberg_over_q_at_two() {
        let lf = local_factor(&h1(1), &NumberField::rationals(), 2).unwrap();
        assert_eq!(lf.denominator(), &[(int(4), 2), (int(8), 2)]);
    }

    #[test]
    fn heisenberg_inert_in_gaussian_field() {
        let k = NumberField::parse("1,0,1").unwrap();
        let lf = local_factor(&h1(2), &k, 3).unwrap();
        assert_eq!(lf.denominator(), &[(int(3).pow(8), 4), (int(3).pow(10), 4)]);
    }

    #[test]
    fn heisenberg_is_product_of_shifted_dedekind_factors() {
        let k = NumberField::parse("1,0,1").unwrap();
        for p in [2u64, 3, 5, 13] {
            let lf = local_factor(&h1(2), &k, p).unwrap();
            let z = dedekind_local_factor(&k, p).unwrap();
            let expected = z.compose_argument(2, 4).mul(&z.compose_argument(2, 5));
            assert!(lf.ratfunc_equal(&expected), "p = {p}");
        }
    }

    #[test]
    fn heisenberg_global_over_q() {
        let g = global_coefficients(&h1(1), &NumberField::rationals(), 16).unwrap();
        assert_eq!(g.b(1), &int(1));
        assert_eq!(g.b(4), &int(12));
        assert_eq!(g.b(9), &int(36));
        assert_eq!(g.b(16), &int(112));
        for n in [2, 3, 5, 6, 7, 8, 10] {
            assert!(g.b(n).is_zero(), "b_{n}");
        }
    }

    #[test]
    fn abelian_two_is_sigma() {
        let inst = FamilyInstance::new(FamilyId::Abelian(2), 1).unwrap();
        let g = global_coefficients(&inst, &NumberField::rationals(), 10).unwrap();
        let sigma: Vec<BigInt> = [1, 3, 4, 7, 6, 12, 8, 15, 13, 18].iter().map(|&x| int(x)).collect();
        assert_eq!(g.coefficients(), &sigma[..]);
        assert!(g.is_multiplicative());
    }

    #[test]
    fn abelian_one_is_dedekind() {
        let k = NumberField::parse("1,0,1").unwrap();
        let inst = FamilyInstance::new(FamilyId::Abelian(1), 2).unwrap();
        for p in [3u64, 5, 7] {
            assert!(local_factor(&inst, &k, p).unwrap().ratfunc_equal(&dedekind_local_factor(&k, p).unwrap()));
        }
    }

    #[test]
    fn degree_mismatch_and_refusal() {
        let k = NumberField::parse("1,0,1").unwrap();
        assert!(matches!(global_coefficients(&h1(1), &k, 10), Err(ZetaError::DegreeMismatch { .. })));
        let bad = NumberField::parse("3,0,1").unwrap();
        assert_eq!(global_coefficients(&h1(2), &bad, 10), Err(ZetaError::UnsupportedRamifiedPrime { p: 2 }));
    }

    #[test]
    fn shape_abscissa() {
        let w = EulerForm::from_denominator(vec![(2, 2), (3, 2)]).unwrap();
        let s = abscissa_from_shape(&w).unwrap();
        assert_eq!(s.value, BigRational::from_integer(int(2)));
        assert!(s.shape_verified);
    }
}
