//! Closed-form fine Euler factors `W_{L,d}(X, Y)` for the supported lattice
//! families, together with weights and abscissae of convergence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::algebra::{EulerForm, LaurentPoly};
use crate::comb::{binom, choose2, divisors, mobius};
use crate::coxeter::{enumerate_b, enumerate_s};
use crate::error::{Result, ZetaError};

pub const MAX_HEISENBERG_M: u32 = 8;
pub const MAX_FREE_C: u32 = 6;
pub const MAX_FREE_G: u32 = 6;
pub const MAX_LMN_SUM: u32 = 10;
pub const MAX_BRUHAT_M: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Abelian(u32),
    Free { c: u32, g: u32 },
    Heisenberg(u32),
    Lmn { m: u32, n: u32 },
    MaxClass(u32),
    FiliformF4,
    Q5,
    BK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyInstance {
    pub family: FamilyId,
    pub d: u32,
}

impl FamilyInstance {
    pub fn new(family: FamilyId, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(ZetaError::InvalidParameter("degree d must be at least 1".into()));
        }
        family.validate()?;
        Ok(Self { family, d })
    }
}

impl FamilyId {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ZetaError::InvalidParameter(msg));
        match *self {
            FamilyId::Abelian(n) if n < 1 => bad("abelian rank must be at least 1".into()),
            FamilyId::Free { c, g } if c < 2 || g < 1 => {
                bad(format!("free nilpotent family needs c >= 2, g >= 1 (got c={c}, g={g})"))
            }
            FamilyId::Free { c, .. } if c > MAX_FREE_C => Err(ZetaError::guard("free class c", MAX_FREE_C.into(), c.into())),
            FamilyId::Free { g, .. } if g > MAX_FREE_G => Err(ZetaError::guard("free generators g", MAX_FREE_G.into(), g.into())),
            FamilyId::Heisenberg(m) if m < 1 => bad("Heisenberg parameter m must be at least 1".into()),
            FamilyId::Heisenberg(m) if m > MAX_HEISENBERG_M => {
                Err(ZetaError::guard("Heisenberg m", MAX_HEISENBERG_M.into(), m.into()))
            }
            FamilyId::Lmn { m, n } if m < 1 || n < 2 => bad(format!("L_(m,n) needs m >= 1, n >= 2 (got m={m}, n={n})")),
            FamilyId::Lmn { m, n } if m + n > MAX_LMN_SUM => Err(ZetaError::guard("L_(m,n) m+n", MAX_LMN_SUM.into(), (m + n).into())),
            FamilyId::MaxClass(c) if c < 2 => bad("maximal class family needs c >= 2".into()),
            _ => Ok(()),
        }
    }

    /// Families for which a functional equation is claimed.
    pub fn has_functional_equation(&self) -> bool {
        !matches!(self, FamilyId::Abelian(_) | FamilyId::BK)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Abelian(n) => write!(f, "abelian:{n}"),
            FamilyId::Free { c, g } => write!(f, "free:{c}:{g}"),
            FamilyId::Heisenberg(m) => write!(f, "heisenberg:{m}"),
            FamilyId::Lmn { m, n } => write!(f, "lmn:{m}:{n}"),
            FamilyId::MaxClass(c) => write!(f, "maxclass:{c}"),
            FamilyId::FiliformF4 => write!(f, "f4"),
            FamilyId::Q5 => write!(f, "q5"),
            FamilyId::BK => write!(f, "bk"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = ZetaError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u32> {
            parts
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ZetaError::Parse(format!("bad family id '{s}'")))
        };
        let arity = |k: usize| -> Result<()> {
            if parts.len() == k + 1 {
                Ok(())
            } else {
                Err(ZetaError::Parse(format!("family id '{s}' expects {k} parameter(s)")))
            }
        };
        let id = match parts[0].to_ascii_lowercase().as_str() {
            "abelian" => {
                arity(1)?;
                FamilyId::Abelian(num(1)?)
            }
            "free" => {
                arity(2)?;
                FamilyId::Free { c: num(1)?, g: num(2)? }
            }
            "heisenberg" => {
                arity(1)?;
                FamilyId::Heisenberg(num(1)?)
            }
            "lmn" => {
                arity(2)?;
                FamilyId::Lmn { m: num(1)?, n: num(2)? }
            }
            "maxclass" => {
                arity(1)?;
                FamilyId::MaxClass(num(1)?)
            }
            "f4" => {
                arity(0)?;
                FamilyId::FiliformF4
            }
            "q5" => {
                arity(0)?;
                FamilyId::Q5
            }
            "bk" => {
                arity(0)?;
                FamilyId::BK
            }
            _ => return Err(ZetaError::Parse(format!("unknown family '{s}'"))),
        };
        id.validate()?;
        Ok(id)
    }
}

/// Rank of the `i`-th lower central quotient of the free Lie ring on `g`
/// generators.
pub fn witt_rank(g: u64, i: u64) -> i64 {
    let s: i64 = divisors(i)
        .into_iter()
        .map(|j| mobius(j) * (g as i64).pow((i / j) as u32))
        .sum();
    s / i as i64
}

/// `(α, β(d))` for the free nilpotent family.
pub fn free_alpha_beta(c: u32, g: u32, d: u32) -> (i64, i64) {
    let (c, g, d) = (c as i64, g as i64, d as i64);
    let m = |i: i64| witt_rank(g as u64, i as u64);
    let alpha = (1..=c).map(|i| i * m(i)).sum::<i64>() / g;
    let beta = (2..c).map(|i| i * m(i)).sum::<i64>() + d * c * m(c);
    (alpha, beta)
}

/// `(r_1, r_2)` for `L_{m,n}`.
pub fn lmn_r(m: u32, n: u32) -> (i64, i64) {
    let (m, n) = (m as i64, n as i64);
    (binom(m + n - 2, m - 1), binom(m + n - 1, m))
}

/// Denominator data `(β_i, γ_i)` for `i = 0..=n`.
pub fn lmn_pairs(m: u32, n: u32, d: u32) -> Vec<(i64, i64)> {
    let (r1, r2) = lmn_r(m, n);
    let (m, n, d) = (m as i64, n as i64, d as i64);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push((d * n * (r1 + r2), r1 + n));
    for i in 1..n {
        let mut sum = Ratio::<i64>::zero();
        for j in 1..=i {
            let factor = Ratio::new(n - j + 1 + (m - 1) * (i - j + 1), n - j + 1);
            sum += factor * binom(m + j - 2, m - 1) * binom(m + n - j - 1, m - 1);
        }
        assert!(sum.is_integer(), "L_(m,n) exponent sum must be integral");
        let beta = i * (n - i) + d * (r1 + r2) * ((m - 1) * n + i) + sum.to_integer();
        let gamma = (m - 1) * n + i + r1 * (m - 1 + i);
        out.push((beta, gamma));
    }
    out.push((d * n * (r1 + r2) + binom(2 * m + n - 2, 2 * m - 1), r2 + n));
    out
}

/// `Σ_{σ ∈ S_n} X^{-ℓ(σ)} Π_{i ∈ Des(σ)} X^{a_i} Y^{b_i}` with `mono[i] = (a_i, b_i)`.
fn descent_sum(n: usize, mono: &[(i64, i64)]) -> Result<LaurentPoly> {
    let mut num = LaurentPoly::zero();
    for s in enumerate_s(n)? {
        let st = s.stats();
        let (mut x, mut y) = (-(st.length as i64), 0);
        for (i, &(a, b)) in mono.iter().enumerate().take(n).skip(1) {
            if st.des_set >> i & 1 == 1 {
                x += a;
                y += b;
            }
        }
        num.add_term(x, y, BigInt::one());
    }
    Ok(num)
}

/// Exponents of `Z_j`, `j = 0..=m`, for the Heisenberg family.
pub fn heisenberg_z(m: u32, d: u32) -> Vec<(i64, i64)> {
    let (m, d) = (m as i64, d as i64);
    (0..=m)
        .map(|j| (choose2(m + 1) - choose2(j + 1) + 2 * m * d, m + 1))
        .collect()
}

/// `W_{L,d}(X, Y)` exactly as the closed formula reads, without cancellation.
#[allow(non_snake_case)]
pub fn make_W(inst: &FamilyInstance) -> Result<EulerForm> {
    inst.family.validate()?;
    let d = inst.d as i64;
    if d < 1 {
        return Err(ZetaError::InvalidParameter("degree d must be at least 1".into()));
    }
    match inst.family {
        FamilyId::Abelian(n) => EulerForm::from_denominator((0..n as i64).map(|i| (i, 1)).collect()),
        FamilyId::Free { c, g } => {
            let (alpha, beta) = free_alpha_beta(c, g, inst.d);
            EulerForm::from_denominator((0..g as i64).map(|j| (beta + j, alpha)).collect())
        }
        FamilyId::Heisenberg(m) => {
            let z = heisenberg_z(m, inst.d);
            EulerForm::new(descent_sum(m as usize, &z)?, z)
        }
        FamilyId::Lmn { m, n } => {
            let pairs = lmn_pairs(m, n, inst.d);
            EulerForm::new(descent_sum(n as usize, &pairs)?, pairs)
        }
        FamilyId::MaxClass(c) => {
            let c = c as i64;
            EulerForm::from_denominator(vec![
                ((c - 1) * (2 * d + c - 2), choose2(c) + 1),
                (2 * d + 2 * c - 3, c),
            ])
        }
        FamilyId::FiliformF4 => EulerForm::from_denominator(vec![(16 + 10 * d, 15)]),
        FamilyId::Q5 => EulerForm::from_denominator(vec![(6 + 6 * d, 6), (3 + 3 * d, 3)]),
        FamilyId::BK => {
            let e = 84 + 201 * d;
            let num = LaurentPoly::from_terms([
                (0, 0, 1),
                (e, 102, 1),
                (e + 1, 102, 2),
                (2 * e + 2, 204, 2),
            ]);
            EulerForm::new(num, vec![(e, 102), (2 * e + 3, 204)])
        }
    }
}

/// The `B_m` Bruhat sum in `(X, T)`:
/// `Σ_{w ∈ B_m} X^{-ℓ(w)} Π_{i ∈ Des(w)} X̃_i / Π_{i=0}^{m} (1 - X̃_i)` with
/// `X̃_0 = X^{C(m+1,2)} T` and `X̃_j = X^{2(C(m+1,2) - C(j+1,2))} T^2`.
pub fn bruhat_gsp_sum(m: u32) -> Result<EulerForm> {
    if m > MAX_BRUHAT_M {
        return Err(ZetaError::guard("Bruhat sum rank", MAX_BRUHAT_M.into(), m.into()));
    }
    if m == 0 {
        return Err(ZetaError::InvalidParameter("rank must be at least 1".into()));
    }
    let mm = m as i64;
    let top = choose2(mm + 1);
    let tilde: Vec<(i64, i64)> = (0..=mm)
        .map(|j| if j == 0 { (top, 1) } else { (2 * (top - choose2(j + 1)), 2) })
        .collect();
    let mut num = LaurentPoly::zero();
    for w in enumerate_b(m as usize)? {
        let st = w.stats();
        let (mut x, mut t) = (-(st.length as i64), 0);
        for (i, &(a, b)) in tilde.iter().enumerate().take(m as usize) {
            if st.des_set >> i & 1 == 1 {
                x += a;
                t += b;
            }
        }
        num.add_term(x, t, BigInt::one());
    }
    EulerForm::new(num, tilde)
}

/// Substitutes `T ↦ X^{2md} Y^{m+1}` into a Bruhat sum.
pub fn bruhat_to_heisenberg(w: &EulerForm, m: u32, d: u32) -> Result<EulerForm> {
    let (m, d) = (m as i64, d as i64);
    w.substitute_monomials((1, 0), (2 * m * d, m + 1))
}

/// Weight of the natural grading.
pub fn weight(f: &FamilyId) -> Result<i64> {
    f.validate()?;
    Ok(match *f {
        FamilyId::Abelian(_) => {
            return Err(ZetaError::Precondition("no weight is attached to the abelian family".into()))
        }
        FamilyId::Free { c, g } => g as i64 * free_alpha_beta(c, g, 1).0,
        FamilyId::Heisenberg(m) => 2 * (m as i64 + 1),
        FamilyId::Lmn { m, n } => {
            let (r1, r2) = lmn_r(m, n);
            r1 + r2 + 2 * n as i64
        }
        FamilyId::MaxClass(c) => choose2(c as i64 + 1) + 1,
        FamilyId::FiliformF4 => 15,
        FamilyId::Q5 => 9,
        FamilyId::BK => 102,
    })
}

fn q(n: i64, den: i64) -> BigRational {
    BigRational::new(n.into(), den.into())
}

/// `max (a+1)/b` over denominator pairs.
pub fn shape_maximum(w: &EulerForm) -> Option<BigRational> {
    w.denominator().iter().map(|&(a, b)| q(a + 1, b)).max()
}

/// Closed-form abscissa of convergence.
pub fn abscissa(inst: &FamilyInstance) -> Result<BigRational> {
    inst.family.validate()?;
    let d = inst.d as i64;
    Ok(match inst.family {
        FamilyId::Abelian(n) => q(n as i64, 1),
        FamilyId::Free { c, g } => {
            let (alpha, beta) = free_alpha_beta(c, g, inst.d);
            q(beta + g as i64, alpha)
        }
        FamilyId::Heisenberg(m) => {
            let m = m as i64;
            q(m, 2) + q(2 * m * d + 1, m + 1)
        }
        FamilyId::Lmn { m, n } => lmn_pairs(m, n, inst.d)
            .into_iter()
            .map(|(b, g)| q(b + 1, g))
            .max()
            .expect("L_(m,n) has at least three denominator factors"),
        FamilyId::MaxClass(c) => {
            let c = c as i64;
            if c == 2 {
                q(d + 1, 1)
            } else if d == 1 {
                q(2, 1)
            } else {
                q((c - 1) * (2 * d + c - 2) + 1, choose2(c) + 1)
            }
        }
        FamilyId::FiliformF4 => q(17 + 10 * d, 15),
        FamilyId::Q5 => q(d, 1) + q(4, 3),
        FamilyId::BK => shape_maximum(&make_W(inst)?).expect("BK has a denominator"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(f: FamilyId, d: u32) -> FamilyInstance {
        FamilyInstance::new(f, d).unwrap()
    }

    fn ef(num: &[(i64, i64, i64)], den: &[(i64, i64)]) -> EulerForm {
        EulerForm::new(LaurentPoly::from_terms(num.iter().copied()), den.to_vec()).unwrap()
    }

    #[test]
    fn witt_ranks() {
        assert_eq!(witt_rank(2, 1), 2);
        assert_eq!(witt_rank(2, 2), 1);
        assert_eq!(witt_rank(2, 3), 2);
        assert_eq!(witt_rank(3, 2), 3);
    }

    #[test]
    fn heisenberg_small() {
        let w = make_W(&inst(FamilyId::Heisenberg(1), 1)).unwrap();
        assert_eq!(w, ef(&[(0, 0, 1)], &[(2, 2), (3, 2)]));
        let w = make_W(&inst(FamilyId::Heisenberg(2), 1)).unwrap();
        assert_eq!(w, ef(&[(0, 0, 1), (5, 3, 1)], &[(7, 3), (6, 3), (4, 3)]));
    }

    #[test]
    fn lmn_one_two() {
        let w = make_W(&inst(FamilyId::Lmn { m: 1, n: 2 }, 1)).unwrap();
        assert_eq!(w, ef(&[(0, 0, 1), (4, 2, 1)], &[(6, 3), (5, 2), (8, 4)]));
    }

    #[test]
    fn lmn_exponents_are_positive() {
        for m in 1..=8 {
            for n in 2..=(10 - m) {
                for d in 1..=4 {
                    for (b, g) in lmn_pairs(m, n, d) {
                        assert!(b > 0 && g > 0, "L_({m},{n}) d={d}: ({b},{g})");
                    }
                }
            }
        }
    }

    #[test]
    fn maxclass_two_is_heisenberg() {
        for d in 1..=4 {
            let a = make_W(&inst(FamilyId::MaxClass(2), d)).unwrap();
            let b = make_W(&inst(FamilyId::Heisenberg(1), d)).unwrap();
            let c = make_W(&inst(FamilyId::Free { c: 2, g: 2 }, d)).unwrap();
            assert!(a.ratfunc_equal(&b) && b.ratfunc_equal(&c));
        }
    }

    #[test]
    fn q5_at_one() {
        let w = make_W(&inst(FamilyId::Q5, 1)).unwrap();
        assert_eq!(w, ef(&[(0, 0, 1)], &[(12, 6), (6, 3)]));
    }

    #[test]
    fn bruhat_rank_one() {
        let w = bruhat_gsp_sum(1).unwrap();
        assert_eq!(w, ef(&[(0, 0, 1), (0, 1, 1)], &[(1, 1), (0, 2)]));
    }

    #[test]
    fn bruhat_matches_heisenberg_small() {
        for m in 1..=3 {
            let b = bruhat_gsp_sum(m).unwrap();
            for d in 1..=2 {
                let h = make_W(&inst(FamilyId::Heisenberg(m), d)).unwrap();
                assert!(bruhat_to_heisenberg(&b, m, d).unwrap().ratfunc_equal(&h), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&FamilyId::FiliformF4).unwrap(), 15);
        assert_eq!(weight(&FamilyId::Heisenberg(1)).unwrap(), 4);
        assert_eq!(weight(&FamilyId::Free { c: 2, g: 2 }).unwrap(), 4);
        assert_eq!(weight(&FamilyId::Q5).unwrap(), 9);
        assert!(weight(&FamilyId::Abelian(3)).is_err());
    }

    #[test]
    fn abscissae() {
        assert_eq!(abscissa(&inst(FamilyId::FiliformF4, 2)).unwrap(), q(37, 15));
        assert_eq!(abscissa(&inst(FamilyId::Q5, 1)).unwrap(), q(7, 3));
        assert_eq!(abscissa(&inst(FamilyId::Heisenberg(2), 1)).unwrap(), q(8, 3));
        assert_eq!(abscissa(&inst(FamilyId::BK, 1)).unwrap(), q(287, 102));
    }

    #[test]
    fn guards_and_parsing() {
        assert!(make_W(&FamilyInstance { family: FamilyId::Heisenberg(9), d: 1 }).is_err());
        assert!("lmn:5:6".parse::<FamilyId>().is_err());
        assert_eq!("free:3:2".parse::<FamilyId>().unwrap(), FamilyId::Free { c: 3, g: 2 });
        assert_eq!("BK".parse::<FamilyId>().unwrap(), FamilyId::BK);
        assert!("heisenberg".parse::<FamilyId>().is_err());
        assert!("f4:1".parse::<FamilyId>().is_err());
        for id in ["abelian:3", "free:2:2", "heisenberg:2", "lmn:1:2", "maxclass:3", "f4", "q5", "bk"] {
            assert_eq!(id.parse::<FamilyId>().unwrap().to_string(), id);
        }
    }
}
