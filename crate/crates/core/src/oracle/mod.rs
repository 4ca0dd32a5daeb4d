//! Brute-force counts of pro-isomorphic subrings of small Lie lattices,
//! enumerated through Hermite normal forms.

pub mod generic;

use std::path::Path;

use num_integer::Integer;
use serde_json::Value;

use crate::error::{Result, ZetaError};
pub use generic::{GenericOptions, LevelVerdict};

pub const MAX_RANK: usize = 6;
pub const MAX_EXPONENT: u32 = 4;
pub const ORACLE_PRIMES: [u64; 3] = [2, 3, 5];
pub const MAX_GENERIC_RANK: usize = 4;
/// Upper bound on the number of sublattices a single count may visit.
pub const MAX_SUBLATTICES: u128 = 50_000_000;

/// Which isomorphism test applies to a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeClass {
    Abelian,
    /// Basis `x_1..x_m, y_1..y_m, z` with `[x_i, y_i] = z`.
    Heisenberg(usize),
    Generic,
}

/// Structure constants `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieLattice {
    rank: usize,
    c: Vec<Vec<Vec<i64>>>,
    class: LatticeClass,
}

/// Upper-triangular basis in row Hermite normal form: positive diagonal and
/// `0 <= rows[i][j] < rows[j][j]` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SublatticeBasis {
    rows: Vec<Vec<i64>>,
}

impl LieLattice {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(c: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let n = c.len();
        let malformed = |m: String| Err(ZetaError::MalformedLattice(m));
        if c.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return malformed(format!("structure tensor must be {n}x{n}x{n}"));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -c[j][i][k] {
                        return malformed(format!("bracket [{i},{j}] is not antisymmetric"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    for out in 0..n {
                        let mut s = 0i64;
                        for k in 0..n {
                            s += c[a][b][k] * c[k][d][out] + c[b][d][k] * c[k][a][out] + c[d][a][k] * c[k][b][out];
                        }
                        if s != 0 {
                            return malformed(format!("Jacobi identity fails for basis triple ({a},{b},{d})"));
                        }
                    }
                }
            }
        }
        let class = if c.iter().flatten().flatten().all(|&x| x == 0) {
            LatticeClass::Abelian
        } else {
            LatticeClass::Generic
        };
        Ok(Self { rank: n, c, class })
    }

    pub fn abelian(n: usize) -> Self {
        Self {
            rank: n,
            c: vec![vec![vec![0; n]; n]; n],
            class: LatticeClass::Abelian,
        }
    }

    /// Rank `2m + 1`, basis `x_1..x_m, y_1..y_m, z`.
    pub fn heisenberg(m: usize) -> Self {
        let n = 2 * m + 1;
        let mut c = vec![vec![vec![0; n]; n]; n];
        for i in 0..m {
            c[i][m + i][n - 1] = 1;
            c[m + i][i][n - 1] = -1;
        }
        Self {
            rank: n,
            c,
            class: LatticeClass::Heisenberg(m),
        }
    }

    /// Filiform lattice of class `c`, rank `c + 1`: `[e_1, e_i] = e_{i+1}`.
    pub fn max_class(class: usize) -> Result<Self> {
        if class < 2 {
            return Err(ZetaError::InvalidParameter("maximal class lattice needs c >= 2".into()));
        }
        let n = class + 1;
        let mut c = vec![vec![vec![0; n]; n]; n];
        for i in 1..n - 1 {
            c[0][i][i + 1] = 1;
            c[i][0][i + 1] = -1;
        }
        Self::new(c)
    }

    /// `{"rank":n,"brackets":[[i,j,[c_0,..,c_{n-1}]],...]}` with 0-based
    /// indices; each listed bracket also fixes `[b_j, b_i]`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| ZetaError::MalformedLattice(m.to_string());
        let n = v.get("rank").and_then(Value::as_u64).ok_or_else(|| bad("missing rank"))? as usize;
        if n == 0 || n > MAX_RANK {
            return Err(ZetaError::guard("lattice rank", MAX_RANK as u64, n as u64));
        }
        let mut c = vec![vec![vec![0i64; n]; n]; n];
        let mut set = vec![vec![false; n]; n];
        let brackets = v.get("brackets").and_then(Value::as_array).ok_or_else(|| bad("missing brackets"))?;
        for b in brackets {
            let b = b.as_array().filter(|b| b.len() == 3).ok_or_else(|| bad("bracket must be [i,j,[c...]]"))?;
            let i = b[0].as_u64().ok_or_else(|| bad("bracket index must be a nonnegative integer"))? as usize;
            let j = b[1].as_u64().ok_or_else(|| bad("bracket index must be a nonnegative integer"))? as usize;
            if i >= n || j >= n {
                return Err(bad("bracket index out of range"));
            }
            let coeffs = b[2]
                .as_array()
                .filter(|a| a.len() == n)
                .ok_or_else(|| bad("bracket coefficients must have length rank"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("bracket coefficient must be an integer")))
                .collect::<Result<Vec<i64>>>()?;
            for (k, &x) in coeffs.iter().enumerate() {
                if (set[i][j] && c[i][j][k] != x) || (set[j][i] && c[j][i][k] != -x) {
                    return Err(bad("conflicting bracket entries"));
                }
                c[i][j][k] = x;
                c[j][i][k] = -x;
            }
            set[i][j] = true;
            set[j][i] = true;
        }
        Self::new(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ZetaError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| ZetaError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&v)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> LatticeClass {
        self.class
    }

    pub fn structure(&self) -> &[Vec<Vec<i64>>] {
        &self.c
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.rank;
        let mut out = vec![0i64; n];
        for a in 0..n {
            if u[a] == 0 {
                continue;
            }
            for b in 0..n {
                if v[b] == 0 {
                    continue;
                }
                let s = u[a] * v[b];
                for (o, &c) in out.iter_mut().zip(&self.c[a][b]) {
                    *o += s * c;
                }
            }
        }
        out
    }
}

impl SublatticeBasis {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n || r[i] <= 0 || r[..i].iter().any(|&x| x != 0) {
                return Err(ZetaError::InvalidParameter("basis must be upper triangular with positive diagonal".into()));
            }
            for (j, &x) in r.iter().enumerate().skip(i + 1) {
                if x < 0 || x >= rows[j][j] {
                    return Err(ZetaError::InvalidParameter("entries above a pivot must be reduced".into()));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn index(&self) -> i64 {
        (0..self.rows.len()).map(|i| self.rows[i][i]).product()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the row span.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.rows.len();
        let mut v = v.to_vec();
        let mut x = vec![0i64; n];
        for col in 0..n {
            let d = self.rows[col][col];
            if v[col] % d != 0 {
                return None;
            }
            let q = v[col] / d;
            x[col] = q;
            if q != 0 {
                for (t, &r) in v.iter_mut().zip(&self.rows[col]).skip(col) {
                    *t -= q * r;
                }
            }
        }
        Some(x)
    }
}

fn check_oracle_guard(n: usize, p: u64, k: u32) -> Result<()> {
    if n == 0 {
        return Err(ZetaError::InvalidParameter("rank must be at least 1".into()));
    }
    if n > MAX_RANK {
        return Err(ZetaError::guard("oracle rank", MAX_RANK as u64, n as u64));
    }
    if !ORACLE_PRIMES.contains(&p) {
        return Err(ZetaError::InvalidParameter(format!("oracle prime must be one of 2, 3, 5 (got {p})")));
    }
    if k > MAX_EXPONENT {
        return Err(ZetaError::guard("oracle index exponent", MAX_EXPONENT as u64, k as u64));
    }
    Ok(())
}

/// Compositions of `k` into `n` parts, colexicographic order.
fn compositions(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(k);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=k {
            cur.push(a);
            rec(n, k - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Number of sublattices of index `p^k` in `Z^n`.
pub fn sublattice_count(n: usize, p: u64, k: u32) -> u128 {
    compositions(n, k)
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .map(|(j, &ej)| (p as u128).pow(ej * j as u32))
                .product::<u128>()
        })
        .sum()
}

/// Streams all Hermite normal forms of determinant `p^k`.
pub struct SublatticeIter {
    n: usize,
    p: u64,
    comps: std::vec::IntoIter<Vec<u32>>,
    diag: Vec<i64>,
    /// Free positions `(i, j)`, `i < j`, with their current value.
    slots: Vec<(usize, usize)>,
    values: Vec<i64>,
    fresh: bool,
}

impl SublatticeIter {
    fn load(&mut self, comp: Vec<u32>) {
        self.diag = comp.iter().map(|&e| (self.p as i64).pow(e)).collect();
        self.slots = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(_, j)| self.diag[j] > 1)
            .collect();
        self.values = vec![0; self.slots.len()];
        self.fresh = true;
    }

    fn advance(&mut self) -> bool {
        for t in (0..self.slots.len()).rev() {
            let (_, j) = self.slots[t];
            self.values[t] += 1;
            if self.values[t] < self.diag[j] {
                return true;
            }
            self.values[t] = 0;
        }
        false
    }

    fn current(&self) -> SublatticeBasis {
        let mut rows = vec![vec![0i64; self.n]; self.n];
        for i in 0..self.n {
            rows[i][i] = self.diag[i];
        }
        for (&(i, j), &v) in self.slots.iter().zip(&self.values) {
            rows[i][j] = v;
        }
        SublatticeBasis { rows }
    }
}

impl Iterator for SublatticeIter {
    type Item = SublatticeBasis;

    fn next(&mut self) -> Option<SublatticeBasis> {
        loop {
            if self.diag.is_empty() {
                let comp = self.comps.next()?;
                self.load(comp);
            }
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.advance() {
                return Some(self.current());
            }
            self.diag.clear();
        }
    }
}

/// All sublattices of index `p^k` in `Z^n`: diagonal exponent vectors in
/// colexicographic order, then the reduced entries odometer-style with the
/// last free entry moving fastest.
pub fn enumerate_sublattices(n: usize, p: u64, k: u32) -> Result<SublatticeIter> {
    check_oracle_guard(n, p, k)?;
    Ok(SublatticeIter {
        n,
        p,
        comps: compositions(n, k).into_iter(),
        diag: Vec::new(),
        slots: Vec::new(),
        values: Vec::new(),
        fresh: false,
    })
}

/// Closure of the row span under the bracket.
pub fn is_subring(l: &LieLattice, m: &SublatticeBasis) -> bool {
    let rows = m.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if m.solve(&l.bracket(&rows[i], &rows[j])).is_none() {
                return false;
            }
        }
    }
    true
}

fn vp(mut x: i64, p: i64) -> u32 {
    assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Determinant of a small integer matrix modulo `p`.
fn det_mod(m: &[Vec<i64>], p: i64) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.mod_floor(&p)).collect()).collect();
    let mut det = 1i64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = pow_mod(a[c][c], p - 2, p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            if f != 0 {
                for j in c..n {
                    a[r][j] = (a[r][j] - f * a[c][j]).mod_floor(&p);
                }
            }
        }
    }
    det
}

fn pow_mod(mut a: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    a = a.mod_floor(&p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Exact test for `H_m` in its standard basis: the derived subring must
/// equal the central part `M ∩ Qz` at `p`, and the alternating form on the
/// `x, y` projection, divided by the generator of `[M, M]`, must be a
/// `p`-adic unit.
fn heisenberg_proisomorphic(m_half: usize, m: &SublatticeBasis, p: u64) -> bool {
    let rows = m.rows();
    let n = 2 * m_half + 1;
    let p = p as i64;
    let omega = |u: &[i64], v: &[i64]| -> i64 {
        (0..m_half).map(|i| u[i] * v[m_half + i] - u[m_half + i] * v[i]).sum()
    };
    let mut gram = vec![vec![0i64; 2 * m_half]; 2 * m_half];
    let mut g = 0i64;
    for i in 0..2 * m_half {
        for j in 0..2 * m_half {
            gram[i][j] = omega(&rows[i], &rows[j]);
            g = g.gcd(&gram[i][j]);
        }
    }
    if g == 0 {
        return false;
    }
    let dz = rows[n - 1][n - 1];
    if vp(g, p) != vp(dz, p) {
        return false;
    }
    let scaled: Vec<Vec<i64>> = gram.iter().map(|r| r.iter().map(|x| x / g).collect()).collect();
    det_mod(&scaled, p) != 0
}

/// Outcome of a pro-isomorphism test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact(bool),
    Level(LevelVerdict),
}

/// Decides whether `M ⊗ Z_p ≅ L ⊗ Z_p` for a subring `M` of index `p^k`.
pub fn proisomorphism_verdict(l: &LieLattice, m: &SublatticeBasis, p: u64, opts: &GenericOptions) -> Result<Verdict> {
    if m.rows().len() != l.rank() {
        return Err(ZetaError::InvalidParameter("sublattice rank differs from lattice rank".into()));
    }
    match l.class() {
        LatticeClass::Abelian => Ok(Verdict::Exact(true)),
        LatticeClass::Heisenberg(h) => Ok(Verdict::Exact(heisenberg_proisomorphic(h, m, p))),
        LatticeClass::Generic => {
            if l.rank() > MAX_GENERIC_RANK {
                return Err(ZetaError::UnsupportedLattice(format!(
                    "generic isomorphism search is limited to rank {MAX_GENERIC_RANK}"
                )));
            }
            let k = vp(m.index(), p as i64);
            Ok(Verdict::Level(generic::search(l, m, p, k + opts.c_safety, opts)?))
        }
    }
}

/// Boolean form of [`proisomorphism_verdict`]; a level-limited positive
/// answer counts as `true`, an exhausted budget is an error.
pub fn is_proisomorphic(l: &LieLattice, m: &SublatticeBasis, p: u64) -> Result<bool> {
    match proisomorphism_verdict(l, m, p, &GenericOptions::default())? {
        Verdict::Exact(b) => Ok(b),
        Verdict::Level(LevelVerdict::IsomorphicAtLevel(_)) => Ok(true),
        Verdict::Level(LevelVerdict::NotIsomorphicAtLevel(_)) => Ok(false),
        Verdict::Level(LevelVerdict::Inconclusive) => Err(ZetaError::Inconclusive(
            "isomorphism search exhausted its node budget".into(),
        )),
    }
}

/// Count together with whether every verdict behind it was exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCount {
    pub count: u64,
    pub exact: bool,
}

pub fn count_proisomorphic_with(l: &LieLattice, p: u64, k: u32, opts: &GenericOptions) -> Result<OracleCount> {
    check_oracle_guard(l.rank(), p, k)?;
    let total = sublattice_count(l.rank(), p, k);
    if total > MAX_SUBLATTICES {
        return Err(ZetaError::guard("sublattices to visit", MAX_SUBLATTICES as u64, total.min(u64::MAX as u128) as u64));
    }
    let mut count = 0;
    let mut exact = true;
    for m in enumerate_sublattices(l.rank(), p, k)? {
        if !is_subring(l, &m) {
            continue;
        }
        match proisomorphism_verdict(l, &m, p, opts)? {
            Verdict::Exact(true) => count += 1,
            Verdict::Exact(false) => {}
            Verdict::Level(LevelVerdict::IsomorphicAtLevel(_)) => {
                count += 1;
                exact = false;
            }
            Verdict::Level(LevelVerdict::NotIsomorphicAtLevel(_)) => {}
            Verdict::Level(LevelVerdict::Inconclusive) => {
                return Err(ZetaError::Inconclusive(format!(
                    "isomorphism search exhausted its node budget on {:?}",
                    m.rows()
                )))
            }
        }
    }
    Ok(OracleCount { count, exact })
}

/// Number of subrings of index `p^k` with `M ⊗ Z_p ≅ L ⊗ Z_p`.
pub fn count_proisomorphic(l: &LieLattice, p: u64, k: u32) -> Result<u64> {
    Ok(count_proisomorphic_with(l, p, k, &GenericOptions::default())?.count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(rows: &[&[i64]]) -> SublatticeBasis {
        SublatticeBasis::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rank_two_index_two() {
        let all: Vec<_> = enumerate_sublattices(2, 2, 1).unwrap().collect();
        assert_eq!(all, vec![basis(&[&[2, 0], &[0, 1]]), basis(&[&[1, 0], &[0, 2]]), basis(&[&[1, 1], &[0, 2]])]);
    }

    #[test]
    fn sublattice_totals() {
        assert_eq!(enumerate_sublattices(2, 2, 2).unwrap().count(), 7);
        assert_eq!(enumerate_sublattices(3, 2, 1).unwrap().count(), 7);
        for (n, p, k) in [(3, 3, 2), (4, 2, 3), (2, 5, 4)] {
            let v: Vec<_> = enumerate_sublattices(n, p, k).unwrap().collect();
            assert_eq!(v.len() as u128, sublattice_count(n, p, k));
            let set: std::collections::HashSet<_> = v.iter().cloned().collect();
            assert_eq!(set.len(), v.len());
        }
        assert!(enumerate_sublattices(7, 2, 1).is_err());
        assert!(enumerate_sublattices(2, 7, 1).is_err());
        assert!(enumerate_sublattices(2, 2, 5).is_err());
    }

    #[test]
    fn heisenberg_subrings() {
        let h = LieLattice::heisenberg(1);
        assert!(is_subring(&h, &basis(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])));
        assert!(!is_subring(&h, &basis(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]])));
        assert!(is_subring(&LieLattice::abelian(3), &basis(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]])));
    }

    #[test]
    fn heisenberg_criterion() {
        let h = LieLattice::heisenberg(1);
        for p in [2i64, 3] {
            let m = basis(&[&[p, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
            assert!(!is_proisomorphic(&h, &m, p as u64).unwrap());
            let m = basis(&[&[p, 0, 0], &[0, 1, 0], &[0, 0, p]]);
            assert!(is_proisomorphic(&h, &m, p as u64).unwrap());
        }
    }

    #[test]
    fn heisenberg_counts() {
        let h = LieLattice::heisenberg(1);
        assert_eq!(count_proisomorphic(&h, 2, 2).unwrap(), 12);
        assert_eq!(count_proisomorphic(&h, 3, 1).unwrap(), 0);
        assert_eq!(count_proisomorphic(&LieLattice::abelian(2), 2, 3).unwrap(), 15);
    }

    #[test]
    fn malformed_lattices_are_rejected() {
        let mut c = vec![vec![vec![0i64; 3]; 3]; 3];
        c[0][1][2] = 1;
        assert!(matches!(LieLattice::new(c.clone()), Err(ZetaError::MalformedLattice(_))));
        c[1][0][2] = -1;
        assert!(LieLattice::new(c).is_ok());
        // [e0,e1] = e0 and [e1,e2] = e1 with [e0,e2] = 0 break Jacobi
        let mut c = vec![vec![vec![0i64; 3]; 3]; 3];
        c[0][1][0] = 1;
        c[1][0][0] = -1;
        c[1][2][1] = 1;
        c[2][1][1] = -1;
        assert!(matches!(LieLattice::new(c), Err(ZetaError::MalformedLattice(_))));
    }

    #[test]
    fn json_lattice() {
        let v: Value = serde_json::from_str(r#"{"rank":3,"brackets":[[0,1,[0,0,1]]]}"#).unwrap();
        let l = LieLattice::from_json(&v).unwrap();
        assert_eq!(l.class(), LatticeClass::Generic);
        assert_eq!(l.bracket(&[0, 1, 0], &[1, 0, 0]), vec![0, 0, -1]);
        let bad: Value = serde_json::from_str(r#"{"rank":3,"brackets":[[0,1,[0,0,1]],[1,0,[0,0,1]]]}"#).unwrap();
        assert!(LieLattice::from_json(&bad).is_err());
        let zero: Value = serde_json::from_str(r#"{"rank":2,"brackets":[]}"#).unwrap();
        assert_eq!(LieLattice::from_json(&zero).unwrap().class(), LatticeClass::Abelian);
    }
}
