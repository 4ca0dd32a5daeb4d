//! Level-limited search for a bracket-preserving isomorphism `L_p → M_p`.
//!
//! A candidate is a matrix `A` whose rows express new basis vectors of `M`
//! in the HNF basis; it must be invertible mod `p` and satisfy
//! `Σ_{a,b} A_ia A_jb C^M_ab = Σ_k c_ijk A_k` modulo `p^e`. Solutions are
//! lifted one `p`-adic digit at a time.

use super::{LieLattice, SublatticeBasis};
use crate::error::{Result, ZetaError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericOptions {
    /// Extra `p`-adic digits searched beyond the index exponent.
    pub c_safety: u32,
    /// Maximum number of row assignments before giving up.
    pub node_budget: u64,
}

impl Default for GenericOptions {
    fn default() -> Self {
        Self {
            c_safety: 2,
            node_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelVerdict {
    /// A solution exists modulo `p^e`. Not a proof of isomorphism.
    IsomorphicAtLevel(u32),
    /// No solution exists modulo `p^e`, so no isomorphism exists.
    NotIsomorphicAtLevel(u32),
    /// The node budget ran out.
    Inconclusive,
}

enum Outcome {
    Found,
    NotFound,
    Exhausted,
}

struct Search<'a> {
    n: usize,
    p: i64,
    target: u32,
    /// Structure constants of `L`.
    c: &'a [Vec<Vec<i64>>],
    /// Structure constants of `M` in its HNF basis.
    cm: Vec<Vec<Vec<i64>>>,
    /// `checks[r]`: pairs `(i, j)` whose equations involve only rows `<= r`.
    checks: Vec<Vec<(usize, usize)>>,
    budget: u64,
    nodes: u64,
    deepest: u32,
}

impl Search<'_> {
    fn equation_holds(&self, a: &[Vec<i64>], i: usize, j: usize, q: i64) -> bool {
        let n = self.n;
        for out in 0..n {
            let mut s = 0i64;
            for x in 0..n {
                if a[i][x] == 0 {
                    continue;
                }
                for y in 0..n {
                    let cm = self.cm[x][y][out];
                    if cm != 0 && a[j][y] != 0 {
                        s = (s + a[i][x] * a[j][y] % q * cm) % q;
                    }
                }
            }
            for k in 0..n {
                let c = self.c[i][j][k];
                if c != 0 {
                    s = (s - c * a[k][out]) % q;
                }
            }
            if s.rem_euclid(q) != 0 {
                return false;
            }
        }
        true
    }

    fn independent_mod_p(&self, rows: &[Vec<i64>]) -> bool {
        let p = self.p;
        let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(r) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, r);
            let inv = inv_mod(m[rank][col], p);
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col] * inv % p;
                    for c in col..self.n {
                        m[r][c] = (m[r][c] - f * m[rank][c]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank == m.len()
    }

    /// Tries all digit rows for row `r` at level `e` on top of `base`.
    fn assign(&mut self, e: u32, base: &[Vec<i64>], a: &mut Vec<Vec<i64>>, r: usize) -> Outcome {
        let q = self.p.pow(e);
        let step = self.p.pow(e - 1);
        if r == self.n {
            if e == self.target {
                return Outcome::Found;
            }
            let snapshot = a.clone();
            return self.lift(e + 1, &snapshot);
        }
        let combos = self.p.pow(self.n as u32);
        for code in 0..combos {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::Exhausted;
            }
            let mut c = code;
            for col in 0..self.n {
                let digit = c % self.p;
                c /= self.p;
                a[r][col] = (base[r][col] + step * digit) % q;
            }
            if e == 1 && !self.independent_mod_p(&a[..=r]) {
                continue;
            }
            let ok = self.checks[r].iter().all(|&(i, j)| self.equation_holds(a, i, j, q));
            if !ok {
                continue;
            }
            match self.assign(e, base, a, r + 1) {
                Outcome::NotFound => {}
                done => return done,
            }
        }
        Outcome::NotFound
    }

    fn lift(&mut self, e: u32, base: &[Vec<i64>]) -> Outcome {
        self.deepest = self.deepest.max(e - 1);
        let mut a = base.to_vec();
        self.assign(e, base, &mut a, 0)
    }
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let mut r = 1;
    let mut b = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Searches for an isomorphism modulo `p^target`.
pub fn search(l: &LieLattice, m: &SublatticeBasis, p: u64, target: u32, opts: &GenericOptions) -> Result<LevelVerdict> {
    let n = l.rank();
    let rows = m.rows();
    let mut cm = vec![vec![vec![0i64; n]; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let v = m.solve(&l.bracket(&rows[a], &rows[b])).ok_or_else(|| {
                ZetaError::Precondition("isomorphism search needs a subring".into())
            })?;
            for k in 0..n {
                cm[a][b][k] = v[k];
                cm[b][a][k] = -v[k];
            }
        }
    }
    let c = l.structure();
    let mut checks = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let trigger = (0..n).filter(|&k| c[i][j][k] != 0).chain([i, j]).max().unwrap();
            checks[trigger].push((i, j));
        }
    }
    let mut s = Search {
        n,
        p: p as i64,
        target: target.max(1),
        c,
        cm,
        checks,
        budget: opts.node_budget,
        nodes: 0,
        deepest: 0,
    };
    let zero = vec![vec![0i64; n]; n];
    Ok(match s.lift(1, &zero) {
        Outcome::Found => LevelVerdict::IsomorphicAtLevel(s.target),
        Outcome::NotFound => LevelVerdict::NotIsomorphicAtLevel(s.deepest + 1),
        Outcome::Exhausted => LevelVerdict::Inconclusive,
    })
}
