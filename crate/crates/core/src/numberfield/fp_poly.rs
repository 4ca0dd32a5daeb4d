//! Dense polynomials over a prime field `F_p` (`p < 2^31`), coefficient `i`
//! of `x^i` at index `i`, with factorization into irreducibles.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        let mut f = Self { coeffs };
        f.trim();
        f
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = inv_mod(self.lead(), p);
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * inv % p).collect(),
        }
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)) % p)
            .collect();
        Self::new(c, p)
    }

    pub fn sub(&self, other: &Self, p: u64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).copied().unwrap_or(0) + p - other.coeffs.get(i).copied().unwrap_or(0)) % p)
            .collect();
        Self::new(c, p)
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(c, p)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self, p: u64) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        if r.len() < dl {
            return (Self::zero(), self.clone());
        }
        let inv = inv_mod(divisor.lead(), p);
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dl - 1] * inv % p;
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * b % p) % p;
            }
        }
        (Self::new(q, p), Self::new(r, p))
    }

    pub fn rem(&self, m: &Self, p: u64) -> Self {
        self.div_rem(m, p).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self, p: u64) -> Self {
        let (q, r) = self.div_rem(divisor, p);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    pub fn derivative(&self, p: u64) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect();
        Self::new(c, p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self, p: u64) -> Self {
        let mut result = Self::one().rem(m, p);
        let base = self.rem(m, p);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result, p).rem(m, p);
            if e.bit(i) {
                result = result.mul(&base, p).rem(m, p);
            }
        }
        result
    }

    /// `g` with `g^p = self`, assuming every exponent is a multiple of `p`.
    /// Over `F_p` the Frobenius fixes coefficients, so only exponents shrink.
    fn pth_root(&self, p: u64) -> Self {
        let c = self.coeffs.iter().step_by(p as usize).copied().collect();
        Self::new(c, p)
    }

    pub fn eval(&self, x: u64, p: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with the
/// `g` squarefree, pairwise coprime, and `Π g^e = f`.
pub fn squarefree_decomposition(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    sfd(&f.monic(p), p, 1, &mut out);
    out
}

fn sfd(f: &FpPoly, p: u64, mult: u32, out: &mut Vec<(FpPoly, u32)>) {
    if f.degree() < 1 {
        return;
    }
    let df = f.derivative(p);
    let mut c = f.gcd(&df, p);
    let mut w = f.exact_div(&c, p);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, p);
        let z = w.exact_div(&y, p);
        if z.degree() > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w, p);
    }
    if !c.is_one() {
        sfd(&c.pth_root(p), p, mult * p as u32, out);
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, k)` with `g` the product of all irreducible factors of degree `k`.
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x();
    let pe = BigUint::from(p);
    let mut h = x.rem(&rest, p);
    let mut k = 1;
    while rest.degree() >= 2 * k as i64 {
        h = h.pow_mod(&pe, &rest, p);
        let g = h.sub(&x, p).gcd(&rest, p);
        if !g.is_one() {
            out.push((g.clone(), k));
            rest = rest.exact_div(&g, p);
            h = h.rem(&rest, p);
        }
        k += 1;
    }
    if rest.degree() > 0 {
        let k = rest.degree() as usize;
        out.push((rest, k));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `k`.
pub fn equal_degree(f: &FpPoly, k: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree() as usize;
    if n == k {
        return vec![f.clone()];
    }
    loop {
        let a = FpPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.degree() < 1 {
            continue;
        }
        let b = if p == 2 {
            // trace a + a^2 + ... + a^(2^(k-1))
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..k {
                t = t.mul(&t, p).rem(f, p);
                s = s.add(&t, p);
            }
            s
        } else {
            let e = (BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f, p).sub(&FpPoly::one(), p)
        };
        let g = b.gcd(f, p);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.exact_div(&g, p);
            let mut out = equal_degree(&g, k, p, rng);
            out.extend(equal_degree(&h, k, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, sorted by `(degree, coefficients)`. The random
/// splitting is seeded from `seed`.
pub fn factor(f: &FpPoly, p: u64, seed: u64) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, e) in squarefree_decomposition(f, p) {
        for (h, k) in distinct_degree(&g, p) {
            for irr in equal_degree(&h, k, p, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    out
}
