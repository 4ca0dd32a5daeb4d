//! Symmetric and hyperoctahedral groups in window notation, with the length,
//! descent and major-index type statistics used by the Heisenberg formulas.

use std::collections::HashMap;

use crate::algebra::LaurentPoly;
use crate::comb::choose2;
use crate::error::{Result, ZetaError};

pub const MAX_ENUMERATION_M: usize = 8;
pub const MAX_IDENTITY_M: usize = 6;
pub const MAX_SUBLEMMA_M: usize = 5;

/// An element of `B_m`: `window[i] = w(i+1)`, a signed permutation of `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

/// An element of `S_m`, viewed inside `B_m` as an all-positive window.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BStats {
    pub inv: u32,
    pub npr: u32,
    pub length: u32,
    /// Bit `i` set iff `i` is a descent, `i` in `0..m`.
    pub des_set: u32,
    pub des: u32,
    pub eps1: u32,
    pub sigma_c: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SStats {
    pub length: u32,
    /// Bit `i` set iff `i` in `1..m` is a descent.
    pub des_set: u32,
    pub des: u32,
    pub sigma_a: i64,
    pub rbin: i64,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let m = window.len();
        let mut seen = vec![false; m + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a] {
                return Err(ZetaError::InvalidParameter(format!(
                    "{window:?} is not a signed permutation"
                )));
            }
            seen[a] = true;
        }
        Ok(Self { window })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            window: (1..=m as i32).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `w(i)` for `i` in `1..=m`.
    pub fn at(&self, i: usize) -> i32 {
        self.window[i - 1]
    }

    pub fn is_positive(&self) -> bool {
        self.window.iter().all(|&v| v > 0)
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        self.is_positive().then(|| Permutation {
            window: self.window.clone(),
        })
    }

    pub fn stats(&self) -> BStats {
        let w = &self.window;
        let m = w.len();
        let mut inv = 0;
        let mut npr = 0;
        for i in 0..m {
            for j in i..m {
                if j > i && w[i] > w[j] {
                    inv += 1;
                }
                if w[i] + w[j] < 0 {
                    npr += 1;
                }
            }
        }
        let mut des_set = 0u32;
        if m > 0 && w[0] < 0 {
            des_set |= 1;
        }
        for i in 1..m {
            if w[i - 1] > w[i] {
                des_set |= 1 << i;
            }
        }
        let eps1 = u32::from(m > 0 && w[0] < 0);
        let mm = m as i64;
        let mut sigma_c = choose2(mm + 1) * eps1 as i64;
        for i in 1..m {
            if des_set >> i & 1 == 1 {
                let i = i as i64;
                sigma_c += (mm - i) * (mm + i + 1);
            }
        }
        BStats {
            inv,
            npr,
            length: inv + npr,
            des_set,
            des: des_set.count_ones(),
            eps1,
            sigma_c,
        }
    }

    /// The involution `η_j`: the entries of absolute value among
    /// `|w(1)|, .., |w(j)|` are paired smallest with largest and swapped with
    /// a sign change.
    pub fn eta(&self, j: usize) -> Result<SignedPermutation> {
        let m = self.rank();
        if j == 0 || j > m {
            return Err(ZetaError::InvalidParameter(format!("eta index {j} outside 1..={m}")));
        }
        let mut c: Vec<i32> = self.window[..j].iter().map(|v| v.abs()).collect();
        c.sort_unstable();
        // image[a] = w_j(a) for a in 1..=m
        let mut image: Vec<i32> = (0..=m as i32).collect();
        for k in 0..j {
            image[c[k] as usize] = -c[j - 1 - k];
        }
        let window = self
            .window
            .iter()
            .map(|&v| if v > 0 { image[v as usize] } else { -image[(-v) as usize] })
            .collect();
        Ok(SignedPermutation { window })
    }

    /// Property `(P_j)`: for `j < m`, `w(j) < 0` iff `w(j+1)` lies strictly
    /// between `w(j)` and `(η_j w)(j)`; for `j = m`, `w(m) > 0`.
    pub fn satisfies_p(&self, j: usize) -> Result<bool> {
        let m = self.rank();
        if j == 0 || j > m {
            return Err(ZetaError::InvalidParameter(format!("property index {j} outside 1..={m}")));
        }
        if j == m {
            return Ok(self.at(m) > 0);
        }
        let a = self.at(j);
        let b = self.eta(j)?.at(j);
        let next = self.at(j + 1);
        let between = (a.min(b) < next) && (next < a.max(b));
        Ok((a < 0) == between)
    }

    /// `X^{σ_C - ℓ} Y^{2 des - ε_1}` as an exponent pair.
    pub fn identity_exponent(&self) -> (i64, i64) {
        let s = self.stats();
        (
            s.sigma_c - s.length as i64,
            2 * s.des as i64 - s.eps1 as i64,
        )
    }
}

impl Permutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let s = SignedPermutation::new(window)?;
        s.to_permutation()
            .ok_or_else(|| ZetaError::InvalidParameter("permutation window must be positive".into()))
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn as_signed(&self) -> SignedPermutation {
        SignedPermutation {
            window: self.window.clone(),
        }
    }

    pub fn stats(&self) -> SStats {
        let w = &self.window;
        let m = w.len();
        let mut length = 0;
        for i in 0..m {
            for j in i + 1..m {
                if w[i] > w[j] {
                    length += 1;
                }
            }
        }
        let mm = m as i64;
        let mut des_set = 0u32;
        let mut sigma_a = 0;
        let mut rbin = 0;
        for i in 1..m {
            if w[i - 1] > w[i] {
                des_set |= 1 << i;
                let i = i as i64;
                sigma_a += i * (mm - i);
                rbin += choose2(mm - i + 1);
            }
        }
        SStats {
            length,
            des_set,
            des: des_set.count_ones(),
            sigma_a,
            rbin,
        }
    }
}

/// Advances `v` to the next permutation in lexicographic order.
fn next_permutation(v: &mut [i32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_guard(m: usize, limit: usize, what: &'static str) -> Result<()> {
    if m > limit {
        return Err(ZetaError::guard(what, limit as u64, m as u64));
    }
    if m == 0 {
        return Err(ZetaError::InvalidParameter("rank must be at least 1".into()));
    }
    Ok(())
}

/// All of `S_m` in lexicographic order.
pub fn enumerate_s(m: usize) -> Result<Vec<Permutation>> {
    check_guard(m, MAX_ENUMERATION_M, "symmetric group rank")?;
    let mut v: Vec<i32> = (1..=m as i32).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation { window: v.clone() });
        if !next_permutation(&mut v) {
            break;
        }
    }
    Ok(out)
}

/// All of `B_m`: sign masks in increasing order (bit `i` negates position
/// `i+1`), and for each mask the underlying permutations in lexicographic order.
pub fn enumerate_b(m: usize) -> Result<impl Iterator<Item = SignedPermutation>> {
    check_guard(m, MAX_ENUMERATION_M, "hyperoctahedral group rank")?;
    let perms = enumerate_s(m)?;
    Ok((0u32..1 << m).flat_map(move |mask| {
        perms
            .clone()
            .into_iter()
            .map(move |p| SignedPermutation {
                window: p
                    .window
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                    .collect(),
            })
    }))
}

fn poly_from_counts(counts: HashMap<(i64, i64), i64>) -> LaurentPoly {
    LaurentPoly::from_terms(counts.into_iter().map(|((x, y), c)| (x, y, c)))
}

/// `Σ_{w ∈ B_m} X^{σ_C - ℓ} Y^{2 des - ε_1}`.
pub fn b_side(m: usize) -> Result<LaurentPoly> {
    check_guard(m, MAX_IDENTITY_M, "identity verification rank")?;
    let mut counts = HashMap::new();
    for w in enumerate_b(m)? {
        *counts.entry(w.identity_exponent()).or_insert(0) += 1;
    }
    Ok(poly_from_counts(counts))
}

/// `Π_{j=1}^{m} (1 + X^{C(m+1,2) - C(j+1,2)} Y) · Σ_{σ ∈ S_m} X^{σ_A - ℓ + rbin} Y^{des}`.
pub fn s_side(m: usize) -> Result<LaurentPoly> {
    check_guard(m, MAX_IDENTITY_M, "identity verification rank")?;
    let mm = m as i64;
    let mut counts = HashMap::new();
    for s in enumerate_s(m)? {
        let st = s.stats();
        *counts
            .entry((st.sigma_a - st.length as i64 + st.rbin, st.des as i64))
            .or_insert(0) += 1;
    }
    let sum = poly_from_counts(counts);
    let prod: LaurentPoly = (1..=mm)
        .map(|j| LaurentPoly::from_terms([(0, 0, 1), (choose2(mm + 1) - choose2(j + 1), 1, 1)]))
        .product();
    Ok(&prod * &sum)
}

/// Exhaustive check of the `B_m` / `S_m` polynomial identity.
pub fn verify_bm_identity(m: usize) -> Result<bool> {
    Ok(b_side(m)? == s_side(m)?)
}

/// Exhaustive check over `w ∈ B_m`, `j ∈ [m]`: exactly one of `w`, `η_j w`
/// has `(P_j)`, and when `w` does, passing to `η_j w` multiplies the
/// identity monomial by `X^{C(m+1,2) - C(j+1,2)} Y`.
pub fn verify_sublemma(m: usize) -> Result<bool> {
    check_guard(m, MAX_SUBLEMMA_M, "sublemma verification rank")?;
    let mm = m as i64;
    for w in enumerate_b(m)? {
        let (x, y) = w.identity_exponent();
        for j in 1..=m {
            let v = w.eta(j)?;
            let pw = w.satisfies_p(j)?;
            if pw == v.satisfies_p(j)? {
                return Ok(false);
            }
            if pw {
                let (vx, vy) = v.identity_exponent();
                if (vx, vy) != (x + choose2(mm + 1) - choose2(j as i64 + 1), y + 1) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_b(1).unwrap().collect::<Vec<_>>(), vec![sp(&[1]), sp(&[-1])]);
        assert_eq!(enumerate_b(2).unwrap().count(), 8);
        assert_eq!(enumerate_b(4).unwrap().count(), 384);
        assert!(enumerate_b(9).is_err());
    }

    #[test]
    fn stats_of_minus_one() {
        let s = sp(&[-1]).stats();
        assert_eq!((s.inv, s.npr, s.length, s.des_set, s.eps1, s.sigma_c), (0, 1, 1, 1, 1, 1));
    }

    #[test]
    fn identity_stats_vanish() {
        let s = SignedPermutation::identity(5).stats();
        assert_eq!((s.length, s.des, s.eps1, s.sigma_c), (0, 0, 0, 0));
    }

    #[test]
    fn eta_worked_example() {
        let w = sp(&[3, -5, -1, 6, 2, 7, -4]);
        assert_eq!(w.eta(5).unwrap(), sp(&[-3, 2, 6, -1, -5, 7, -4]));
        assert_eq!(sp(&[1]).eta(1).unwrap(), sp(&[-1]));
    }

    #[test]
    fn symmetric_stats() {
        let s = Permutation::new(vec![2, 1]).unwrap().stats();
        assert_eq!((s.length, s.des_set, s.sigma_a, s.rbin), (1, 0b10, 1, 1));
        let s = Permutation::new(vec![3, 1, 2]).unwrap().stats();
        assert_eq!((s.des_set, s.sigma_a, s.rbin), (0b10, 2, 3));
        let s = Permutation::new(vec![1, 2, 3]).unwrap().stats();
        assert_eq!((s.sigma_a, s.rbin), (0, 0));
    }

    #[test]
    fn identity_small_ranks() {
        assert_eq!(b_side(1).unwrap(), LaurentPoly::from_terms([(0, 0, 1), (0, 1, 1)]));
        for m in 1..=4 {
            assert!(verify_bm_identity(m).unwrap(), "m = {m}");
        }
        assert!(verify_bm_identity(7).is_err());
    }

    #[test]
    fn sublemma_small_ranks() {
        assert!(sp(&[1]).satisfies_p(1).unwrap());
        for m in 1..=4 {
            assert!(verify_sublemma(m).unwrap(), "m = {m}");
        }
        assert!(verify_sublemma(6).is_err());
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(SignedPermutation::new(vec![1, -1]).is_err());
        assert!(SignedPermutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![-1]).is_err());
    }
}
