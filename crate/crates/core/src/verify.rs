//! Self-check suites over the closed formulas, group identities, number
//! field pipeline and brute-force oracle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coxeter::{verify_bm_identity, verify_sublemma, MAX_IDENTITY_M, MAX_SUBLEMMA_M};
use crate::dirichlet::{abscissa_from_shape, dedekind_local_factor, global_coefficients, local_factor};
use crate::error::{Result, ZetaError};
use crate::expand_series;
use crate::families::{abscissa, bruhat_gsp_sum, bruhat_to_heisenberg, make_W, FamilyId, FamilyInstance};
use crate::numberfield::{DecompositionType, NumberField};
use crate::oracle::{count_proisomorphic, LieLattice};
use crate::symmetry::{
    check_weight_conjecture, closed_form_factor, extract_functional_equation, identity_holds,
    reduced_leading_ratio,
};

pub const SUITES: [&str; 10] = [
    "bm-identity",
    "sublemma",
    "bruhat",
    "funceq",
    "weight",
    "bk-ratio",
    "cross-family",
    "oracle",
    "abscissa",
    "numberfield",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: ok ({} checks)", self.suite, self.checks)
        } else {
            write!(f, "{}: FAILED {}/{} ({})", self.suite, self.failures.len(), self.checks, self.failures.join("; "))
        }
    }
}

struct Tally {
    suite: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Self { suite, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn done(self) -> SuiteOutcome {
        SuiteOutcome {
            suite: self.suite,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn inst(f: FamilyId, d: u32) -> FamilyInstance {
    FamilyInstance { family: f, d }
}

/// Every family instance covered by the functional-equation table.
pub fn funceq_families() -> Vec<FamilyId> {
    let mut v = Vec::new();
    for c in 2..=4 {
        for g in 1..=4 {
            v.push(FamilyId::Free { c, g });
        }
    }
    v.extend((1..=6).map(FamilyId::Heisenberg));
    for m in 1..=6 {
        for n in 2..=(8 - m) {
            v.push(FamilyId::Lmn { m, n });
        }
    }
    v.extend((2..=5).map(FamilyId::MaxClass));
    v.push(FamilyId::FiliformF4);
    v.push(FamilyId::Q5);
    v
}

pub fn bm_identity(max_m: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("bm-identity");
    for m in 1..=max_m.min(MAX_IDENTITY_M) {
        t.check(verify_bm_identity(m)?, || format!("identity fails at m = {m}"));
    }
    Ok(t.done())
}

pub fn sublemma(max_m: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("sublemma");
    for m in 1..=max_m.min(MAX_SUBLEMMA_M) {
        t.check(verify_sublemma(m)?, || format!("sublemma fails at m = {m}"));
    }
    Ok(t.done())
}

pub fn bruhat(max_m: usize) -> Result<SuiteOutcome> {
    let mut t = Tally::new("bruhat");
    for m in 1..=max_m.min(4) as u32 {
        let b = bruhat_gsp_sum(m)?;
        for d in 1..=3 {
            let h = make_W(&inst(FamilyId::Heisenberg(m), d))?;
            t.check(bruhat_to_heisenberg(&b, m, d)?.ratfunc_equal(&h), || format!("m = {m}, d = {d}"));
        }
    }
    Ok(t.done())
}

pub fn funceq() -> Result<SuiteOutcome> {
    let mut t = Tally::new("funceq");
    for d in 1..=4 {
        for f in funceq_families() {
            let i = inst(f, d);
            let w = make_W(&i)?;
            let got = extract_functional_equation(&w);
            let want = closed_form_factor(&i);
            t.check(got.is_some() && got == want && identity_holds(&w, &got.unwrap()), || {
                format!("{f} d={d}: got {got:?}, expected {want:?}")
            });
        }
        let bk = make_W(&inst(FamilyId::BK, d))?;
        t.check(extract_functional_equation(&bk).is_none(), || format!("bk d={d} has a functional equation"));
    }
    Ok(t.done())
}

pub fn weight() -> Result<SuiteOutcome> {
    let mut t = Tally::new("weight");
    for d in 1..=4 {
        for f in funceq_families() {
            t.check(check_weight_conjecture(&inst(f, d))?, || format!("{f} d={d}"));
        }
    }
    Ok(t.done())
}

pub fn bk_ratio() -> Result<SuiteOutcome> {
    let mut t = Tally::new("bk-ratio");
    let half = BigRational::new(1.into(), 2.into());
    for d in 1..=4 {
        let r = reduced_leading_ratio(&make_W(&inst(FamilyId::BK, d))?)?;
        t.check(r == (102, half.clone()), || format!("d={d}: got {r:?}"));
    }
    Ok(t.done())
}

pub fn cross_family() -> Result<SuiteOutcome> {
    let mut t = Tally::new("cross-family");
    for d in 1..=4 {
        let free = make_W(&inst(FamilyId::Free { c: 2, g: 2 }, d))?;
        let heis = make_W(&inst(FamilyId::Heisenberg(1), d))?;
        let maxc = make_W(&inst(FamilyId::MaxClass(2), d))?;
        t.check(free.ratfunc_equal(&heis) && heis.ratfunc_equal(&maxc), || format!("d={d}"));
    }
    Ok(t.done())
}

fn series_u64(f: FamilyId, p: u64, k: usize) -> Result<Vec<BigInt>> {
    let w = make_W(&inst(f, 1))?;
    expand_series(&w, &BigRational::from_integer(p.into()), k)?
        .to_integers()
        .ok_or_else(|| ZetaError::NotAPowerSeries("fractional series coefficient".into()))
}

pub fn oracle() -> Result<SuiteOutcome> {
    let mut t = Tally::new("oracle");
    let cases: Vec<(LieLattice, FamilyId, &[u64], u32)> = vec![
        (LieLattice::abelian(2), FamilyId::Abelian(2), &[2, 3], 3),
        (LieLattice::abelian(3), FamilyId::Abelian(3), &[2, 3], 3),
        (LieLattice::heisenberg(1), FamilyId::Heisenberg(1), &[2, 3], 4),
    ];
    for (l, f, primes, kmax) in cases {
        for &p in primes {
            let s = series_u64(f, p, kmax as usize)?;
            for k in 0..=kmax {
                let c = count_proisomorphic(&l, p, k)?;
                t.check(BigInt::from(c) == s[k as usize], || format!("{f} p={p} k={k}: oracle {c}, series {}", s[k as usize]));
            }
        }
    }
    let s = series_u64(FamilyId::Heisenberg(2), 2, 3)?;
    let c = count_proisomorphic(&LieLattice::heisenberg(2), 2, 3)?;
    t.check(BigInt::from(c) == s[3] && c == 240, || format!("heisenberg:2 p=2 k=3: oracle {c}, series {}", s[3]));
    Ok(t.done())
}

pub fn abscissa_suite() -> Result<SuiteOutcome> {
    let mut t = Tally::new("abscissa");
    let mut fams: Vec<(FamilyId, Vec<u32>)> = Vec::new();
    for m in 1..=6 {
        fams.push((FamilyId::Heisenberg(m), (1..=4).collect()));
    }
    fams.push((FamilyId::FiliformF4, (1..=4).collect()));
    fams.push((FamilyId::Q5, (1..=4).collect()));
    for c in 2..=5 {
        fams.push((FamilyId::MaxClass(c), (1..=4).collect()));
    }
    for c in 2..=4 {
        for g in 1..=4 {
            fams.push((FamilyId::Free { c, g }, (1..=4).collect()));
        }
    }
    for (f, ds) in fams {
        for d in ds {
            let i = inst(f, d);
            let closed = abscissa(&i)?;
            let shape = abscissa_from_shape(&make_W(&i)?)?;
            t.check(closed == shape.value, || format!("{f} d={d}: closed {closed}, shape {}", shape.value));
        }
    }
    for c in 3..=5 {
        let two = BigRational::from_integer(2.into());
        t.check(abscissa(&inst(FamilyId::MaxClass(c), 1))? == two, || format!("maxclass:{c} d=1 is not 2"));
    }
    Ok(t.done())
}

pub fn numberfield() -> Result<SuiteOutcome> {
    let mut t = Tally::new("numberfield");
    let k = NumberField::parse("1,0,1")?;
    let expected = [(2u64, vec![(2, 1)]), (3, vec![(1, 2)]), (5, vec![(1, 1), (1, 1)])];
    for (p, pairs) in expected {
        let got = k.decomposition_type(p)?;
        t.check(got == DecompositionType::new(pairs.clone())?, || format!("Q(i) at {p}: got {got}"));
    }
    let h = inst(FamilyId::Heisenberg(1), 2);
    for p in (2..=50u64).filter(|&p| crate::comb::is_prime(p)) {
        let lf = local_factor(&h, &k, p)?;
        let z = dedekind_local_factor(&k, p)?;
        let expected = z.compose_argument(2, 4).mul(&z.compose_argument(2, 5));
        t.check(lf.ratfunc_equal(&expected), || format!("Heisenberg over Q(i) at p={p}"));
    }
    let g = global_coefficients(&h, &k, 200)?;
    t.check(g.b(1) == &BigInt::from(1), || "b_1 != 1".into());
    t.check(g.all_nonnegative(), || "negative coefficient".into());
    t.check(g.is_multiplicative(), || "not multiplicative".into());
    t.check(g.coefficients().iter().any(|c| !c.is_zero()), || "all zero".into());
    Ok(t.done())
}

/// Runs one named suite, or every suite for `"all"`, stopping after the
/// first failing suite.
pub fn run(suite: &str, max_m: Option<usize>) -> Result<Vec<SuiteOutcome>> {
    let one = |name: &str| -> Result<SuiteOutcome> {
        match name {
            "bm-identity" => bm_identity(max_m.unwrap_or(MAX_IDENTITY_M)),
            "sublemma" => sublemma(max_m.unwrap_or(MAX_SUBLEMMA_M)),
            "bruhat" => bruhat(max_m.unwrap_or(4)),
            "funceq" => funceq(),
            "weight" => weight(),
            "bk-ratio" => bk_ratio(),
            "cross-family" => cross_family(),
            "oracle" => oracle(),
            "abscissa" => abscissa_suite(),
            "numberfield" => numberfield(),
            other => Err(ZetaError::InvalidParameter(format!(
                "unknown suite '{other}' (expected one of {} or all)",
                SUITES.join(", ")
            ))),
        }
    };
    if let Some(m) = max_m {
        if m > MAX_IDENTITY_M {
            return Err(ZetaError::guard("verify max-m", MAX_IDENTITY_M as u64, m as u64));
        }
    }
    if suite == "all" {
        let mut out = Vec::new();
        for name in SUITES {
            let r = one(name)?;
            let failed = !r.passed();
            out.push(r);
            if failed {
                break;
            }
        }
        Ok(out)
    } else {
        Ok(vec![one(suite)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for s in ["bruhat", "funceq", "weight", "bk-ratio", "cross-family", "abscissa", "numberfield"] {
            let r = run(s, Some(3)).unwrap();
            assert!(r[0].passed(), "{}", r[0]);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", None).is_err());
        assert!(run("bm-identity", Some(7)).is_err());
    }
}
