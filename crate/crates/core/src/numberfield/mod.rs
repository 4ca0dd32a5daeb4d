//! Monogenic number fields `Q[x]/(f)` and the splitting of rational primes.

pub mod fp_poly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::EulerForm;
use crate::comb::is_prime;
use crate::error::{Result, ZetaError};
use fp_poly::FpPoly;

pub const MAX_PRIME: u64 = 1_000_000;

/// Integer polynomial, coefficient of `x^i` at index `i`.
pub type IntPoly = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: IntPoly,
    discriminant: BigInt,
}

/// Ramification and inertia data `(e_i, f_i)` of the primes above `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionType {
    pairs: Vec<(u32, u32)>,
}

impl DecompositionType {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Result<Self> {
        if pairs.is_empty() || pairs.iter().any(|&(e, f)| e == 0 || f == 0) {
            return Err(ZetaError::InvalidParameter(
                "a decomposition type is a nonempty list of positive (e, f) pairs".into(),
            ));
        }
        pairs.sort_unstable();
        Ok(Self { pairs })
    }

    /// The type of a prime in `Q`.
    pub fn rational() -> Self {
        Self { pairs: vec![(1, 1)] }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// `Σ e_i f_i`.
    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }

    /// Residue field sizes `p^{f_i}`.
    pub fn residue_sizes(&self, p: u64) -> Vec<BigInt> {
        self.pairs.iter().map(|&(_, f)| BigInt::from(p).pow(f)).collect()
    }

    /// Parses `e,f;e,f;...`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let nums: Vec<&str> = part.split(',').map(str::trim).collect();
            let parse = |t: &str| t.parse::<u32>().map_err(|_| ZetaError::Parse(format!("bad decomposition pair '{part}'")));
            if nums.len() != 2 {
                return Err(ZetaError::Parse(format!("bad decomposition pair '{part}'")));
            }
            pairs.push((parse(nums[0])?, parse(nums[1])?));
        }
        Self::new(pairs)
    }
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(e, g)| format!("{e},{g}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if p > MAX_PRIME {
        return Err(ZetaError::guard("prime size", MAX_PRIME, p));
    }
    if !is_prime(p) {
        return Err(ZetaError::NotPrime(p));
    }
    Ok(())
}

fn trim(f: &mut IntPoly) {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
}

fn reduce(f: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
        p,
    )
}

fn lift(f: &FpPoly) -> IntPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn seed_for(f: &[BigInt], p: u64) -> u64 {
    // FNV-1a over the decimal coefficients and p
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for c in f {
        eat(c.to_string().as_bytes());
        eat(b",");
    }
    eat(&p.to_le_bytes());
    h
}

/// Factorization of `f mod p` into monic irreducibles with multiplicities.
/// The leading coefficient of `f` must be a unit mod `p`.
pub fn factor_mod_p(f: &[BigInt], p: u64) -> Result<Vec<(FpPoly, u32)>> {
    check_prime(p)?;
    let fp = reduce(f, p);
    if fp.degree() < 1 {
        return Err(ZetaError::InvalidParameter(format!(
            "polynomial is constant modulo {p}"
        )));
    }
    if fp.degree() as usize + 1 != f.len() {
        return Err(ZetaError::InvalidParameter(format!(
            "leading coefficient vanishes modulo {p}"
        )));
    }
    Ok(fp_poly::factor(&fp, p, seed_for(f, p)))
}

/// Determinant by fraction-free Gaussian elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (n, m) = (f.len() - 1, g.len() - 1);
    let size = n + m;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..m {
        for (i, c) in f.iter().rev().enumerate() {
            s[r][r + i] = c.clone();
        }
    }
    for r in 0..n {
        for (i, c) in g.iter().rev().enumerate() {
            s[m + r][r + i] = c.clone();
        }
    }
    bareiss_det(s)
}

/// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &[BigInt]) -> Result<BigInt> {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return Err(ZetaError::InvalidParameter("discriminant of a constant polynomial".into()));
    }
    let n = f.len() - 1;
    let df: IntPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let res = resultant(&f, &df);
    let mut d = res / f.last().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    Ok(d)
}

/// Dedekind's criterion: `true` when `p` does not divide the index of
/// `Z[θ]` in the maximal order.
pub fn dedekind_criterion(f: &[BigInt], p: u64) -> Result<bool> {
    let factors = factor_mod_p(f, p)?;
    let mut prod: IntPoly = vec![BigInt::one()];
    for (g, e) in &factors {
        let gl = lift(g);
        for _ in 0..*e {
            prod = int_mul(&prod, &gl);
        }
    }
    let pb = BigInt::from(p);
    let len = f.len().max(prod.len());
    let diff: IntPoly = (0..len)
        .map(|i| {
            let a = f.get(i).cloned().unwrap_or_default();
            let b = prod.get(i).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!(d.is_multiple_of(&pb));
            d / &pb
        })
        .collect();
    let fbar = reduce(&diff, p);
    for (g, e) in &factors {
        if *e >= 2 && fbar.rem(g, p).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl NumberField {
    /// Builds `Q[x]/(f)` from coefficients, constant term first. The
    /// polynomial must be monic, squarefree and free of integer roots
    /// (rational roots of a monic polynomial are integers); full
    /// irreducibility beyond that is the caller's responsibility.
    pub fn new(minpoly: IntPoly) -> Result<Self> {
        let mut f = minpoly;
        trim(&mut f);
        if f.len() < 2 {
            return Err(ZetaError::InvalidParameter("minimal polynomial must have degree at least 1".into()));
        }
        if !f.last().unwrap().is_one() {
            return Err(ZetaError::InvalidParameter("minimal polynomial must be monic".into()));
        }
        let discriminant = discriminant(&f)?;
        if discriminant.is_zero() {
            return Err(ZetaError::InvalidParameter("minimal polynomial is not squarefree".into()));
        }
        if f.len() > 2 {
            if let Some(r) = integer_root(&f) {
                return Err(ZetaError::InvalidParameter(format!("minimal polynomial has the rational root {r}")));
            }
        }
        Ok(Self { minpoly: f, discriminant })
    }

    /// `Q` itself, as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()]).expect("x is a valid minimal polynomial")
    }

    /// Parses comma-separated coefficients, constant term first.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| ZetaError::Parse(format!("bad coefficient '{t}'"))))
            .collect::<Result<IntPoly>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    /// Splitting of `p`, refused when `p` might divide the index of `Z[θ]`.
    pub fn decomposition_type(&self, p: u64) -> Result<DecompositionType> {
        check_prime(p)?;
        let pb = BigInt::from(p);
        if self.discriminant.is_multiple_of(&pb) && !dedekind_criterion(&self.minpoly, p)? {
            return Err(ZetaError::UnsupportedRamifiedPrime { p });
        }
        let pairs = factor_mod_p(&self.minpoly, p)?
            .into_iter()
            .map(|(g, e)| (e, g.degree() as u32))
            .collect();
        DecompositionType::new(pairs)
    }

    /// `Π_i 1 / (1 - t^{f_i})`, with `t` in the `Y` slot.
    pub fn dedekind_zeta_local(&self, p: u64) -> Result<EulerForm> {
        let ty = self.decomposition_type(p)?;
        EulerForm::from_denominator(ty.pairs().iter().map(|&(_, f)| (0, f as i64)).collect())
    }
}

/// An integer root of `f`, searched among divisors of the constant term.
/// Gives up (returns `None`) when the constant term is too large to factor by
/// trial division.
fn integer_root(f: &[BigInt]) -> Option<BigInt> {
    let eval = |x: &BigInt| f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let c0 = f[0].abs();
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let c0 = c0.to_u64().filter(|&c| c <= 1_000_000_000_000)?;
    let mut d = 1u64;
    while d * d <= c0 {
        if c0 % d == 0 {
            for q in [d, c0 / d] {
                for r in [BigInt::from(q), -BigInt::from(q)] {
                    if eval(&r).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        d += 1;
    }
    None
}
