//! Signed permutations of `[n]` in window notation and their statistics.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tableau::Family;

/// The window `(σ(1), …, σ(n))`; `σ(-i) = -σ(i)` is implied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Domain(format!("{window:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    /// `σ(i)` for `i` in `1..=n`.
    pub fn at(&self, i: usize) -> i32 {
        self.window[i - 1]
    }

    pub fn wex(&self) -> u32 {
        (1..=self.n()).filter(|&i| self.at(i) >= i as i32).count() as u32
    }

    pub fn neg(&self) -> u32 {
        self.window.iter().filter(|&&v| v < 0).count() as u32
    }

    pub fn fwex(&self) -> u32 {
        2 * self.wex() + self.neg()
    }

    pub fn wex_neg_fwex(&self) -> (u32, u32, u32) {
        (self.wex(), self.neg(), self.fwex())
    }

    /// Type B crossings, over ordered pairs.
    pub fn crs_b(&self) -> u32 {
        let n = self.n() as i32;
        let mut c = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (si, sj) = (self.at(i as usize), self.at(j as usize));
                let a = i < j && j <= si && si < sj;
                let b = -i < j && j <= -si && -si < sj;
                let d = i > j && j > si && si > sj;
                debug_assert!(a as u8 + b as u8 + d as u8 <= 1, "crossing clauses overlap");
                c += (a || b || d) as u32;
            }
        }
        c
    }

    fn require_unsigned(&self) -> Result<()> {
        if self.neg() > 0 {
            return Err(Error::Domain(format!("{self} has negative values")));
        }
        Ok(())
    }

    /// Type A crossings; only for windows without negative values.
    pub fn crs_a(&self) -> Result<u32> {
        self.require_unsigned()?;
        let n = self.n() as i32;
        let mut c = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (si, sj) = (self.at(i as usize), self.at(j as usize));
                if (i < j && j <= si && si < sj) || (si < sj && sj < i && i < j) {
                    c += 1;
                }
            }
        }
        Ok(c)
    }

    /// Type A alignments; only for windows without negative values.
    pub fn al_a(&self) -> Result<u32> {
        self.require_unsigned()?;
        let n = self.n() as i32;
        let mut c = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (si, sj) = (self.at(i as usize), self.at(j as usize));
                if (i < j && j <= sj && sj < si)
                    || (sj < si && si < i && i < j)
                    || (i <= si && si < sj && sj < j)
                    || (si < i && i < j && j <= sj)
                {
                    c += 1;
                }
            }
        }
        Ok(c)
    }

    pub fn type_d_stats(&self) -> TypeDStats {
        let w = &self.window;
        let des = des(w);
        let fdes = fdes(w);
        let minus_one = w.contains(&-1) as u32;
        let ddes = des + self.neg() - minus_one;
        let mut pi = w.clone();
        if let Some(last) = pi.last_mut() {
            *last = last.abs();
        }
        let big_ddes = fdes_of(&pi);
        let fwex_d = self.fwex() + (w[0] < 0) as u32;
        TypeDStats { des, fdes, ddes, big_ddes, fwex_d }
    }
}

/// Descents of a word over positions `1..n-1`.
pub fn des(w: &[i32]) -> u32 {
    w.windows(2).filter(|p| p[0] > p[1]).count() as u32
}

/// `2 des + [w(1) < 0]`.
pub fn fdes(w: &[i32]) -> u32 {
    fdes_of(w)
}

fn fdes_of(w: &[i32]) -> u32 {
    2 * des(w) + w.first().is_some_and(|&v| v < 0) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeDStats {
    pub des: u32,
    pub fdes: u32,
    pub ddes: u32,
    /// `fdes(σ(1), …, σ(n-1), |σ(n)|)`.
    pub big_ddes: u32,
    pub fwex_d: u32,
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let window = s
            .split(',')
            .map(|p| p.trim().parse::<i32>().map_err(|e| Error::Malformed(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::new(window)
    }
}

fn sign_masks(n: usize, family: Family) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|m| match family {
            Family::A => *m == 0,
            Family::B => true,
            Family::D => m.count_ones() % 2 == 0,
        })
        .collect()
}

fn signed(p: &[i32], mask: u32) -> SignedPermutation {
    let window = p
        .iter()
        .enumerate()
        .map(|(k, &v)| if mask & (1 << k) != 0 { -v } else { v })
        .collect();
    SignedPermutation { window }
}

/// Calls `visit` on every element of the group, lexicographic in the
/// underlying permutation, then by sign pattern.
pub fn for_each_perm(n: usize, family: Family, visit: &mut dyn FnMut(&SignedPermutation)) {
    let masks = sign_masks(n, family);
    for p in (1..=n as i32).permutations(n) {
        for &m in &masks {
            visit(&signed(&p, m));
        }
    }
}

pub fn enumerate_perms(n: usize, family: Family) -> Vec<SignedPermutation> {
    let mut v = Vec::new();
    for_each_perm(n, family, &mut |s| v.push(s.clone()));
    v
}

/// Parallel fold, sharded by the first window entry in absolute value;
/// shards merge in order.
pub fn fold_perms<A, F, M>(n: usize, family: Family, init: impl Fn() -> A + Sync, step: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &SignedPermutation) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let masks = sign_masks(n, family);
    let shards: Vec<A> = (1..=n as i32)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let rest: Vec<i32> = (1..=n as i32).filter(|&v| v != first).collect();
            for tail in rest.iter().copied().permutations(n - 1) {
                let mut p = Vec::with_capacity(n);
                p.push(first);
                p.extend(tail);
                for &m in &masks {
                    step(&mut acc, &signed(&p, m));
                }
            }
            acc
        })
        .collect();
    shards.into_iter().fold(init(), merge)
}
