//! Exact generating polynomials and their symmetry verdicts.
//!
//! Every polynomial is accumulated term by term over a full enumeration,
//! with arbitrary precision coefficients. Every index `k` of a family is
//! stored, empty ones as the zero polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signed_perm::{fold_perms, SignedPermutation};
use crate::tableau::{fold_tableaux, Family, PermutationTableau};

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: &[u32], coeff: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: &[u32], coeff: impl Into<BigInt>) {
        assert_eq!(exps.len(), self.arity, "exponent arity");
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.to_vec()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(exps);
        }
    }

    pub fn add_assign(&mut self, other: &MultiPoly) {
        for (e, c) in &other.terms {
            self.add_term(e, c.clone());
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sets variable `var` to 1, dropping it from the exponent vectors.
    pub fn specialize_one(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity - 1);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.remove(var);
            out.add_term(&e, c.clone());
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn fmt_with(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(vars)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, v)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{c}*{}", mono.join("*")),
                }
            })
            .join(" + ")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.arity).map(|i| format!("x{i}")).collect();
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        f.write_str(&self.fmt_with(&vars))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyId {
    BStar,
    EHat,
    DHat,
    EB,
    ED,
}

impl PolyId {
    pub fn name(self) -> &'static str {
        match self {
            PolyId::BStar => "bstar",
            PolyId::EHat => "ehat",
            PolyId::DHat => "dhat",
            PolyId::EB => "eB",
            PolyId::ED => "eD",
        }
    }

    pub fn vars(self) -> &'static [&'static str] {
        match self {
            PolyId::BStar | PolyId::ED => &["t", "q"],
            PolyId::EHat | PolyId::EB => &["q"],
            PolyId::DHat => &["p", "q", "r"],
        }
    }
}

impl FromStr for PolyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bstar" => Ok(PolyId::BStar),
            "ehat" => Ok(PolyId::EHat),
            "dhat" => Ok(PolyId::DHat),
            "eB" | "eb" => Ok(PolyId::EB),
            "eD" | "ed" => Ok(PolyId::ED),
            _ => Err(Error::Malformed(format!("unknown polynomial {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Tableaux,
    Perms,
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tableaux" => Ok(Source::Tableaux),
            "perms" => Ok(Source::Perms),
            _ => Err(Error::Malformed(format!("unknown source {s:?}"))),
        }
    }
}

/// A family of polynomials indexed by `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFamily {
    pub id: PolyId,
    pub n: u32,
    pub by_k: BTreeMap<i64, MultiPoly>,
}

impl PolyFamily {
    fn new(id: PolyId, n: u32, ks: impl IntoIterator<Item = i64>) -> Self {
        let arity = id.vars().len();
        PolyFamily { id, n, by_k: ks.into_iter().map(|k| (k, MultiPoly::zero(arity))).collect() }
    }

    fn add(&mut self, k: i64, exps: &[u32]) {
        self.by_k
            .get_mut(&k)
            .unwrap_or_else(|| panic!("index {k} outside the range of {}", self.id.name()))
            .add_term(exps, 1);
    }

    fn merge(mut self, other: PolyFamily) -> PolyFamily {
        for (k, p) in other.by_k {
            self.by_k.entry(k).or_insert_with(|| MultiPoly::zero(p.arity())).add_assign(&p);
        }
        self
    }

    pub fn get(&self, k: i64) -> MultiPoly {
        self.by_k.get(&k).cloned().unwrap_or_else(|| MultiPoly::zero(self.id.vars().len()))
    }

    pub fn total(&self) -> BigInt {
        self.by_k.values().map(MultiPoly::eval_ones).sum()
    }

    /// Exact comparison of `k` with `mirror(k)` for every `k` in `ks`.
    pub fn symmetry(&self, ks: impl IntoIterator<Item = i64>, mirror: impl Fn(i64) -> i64) -> SymmetryReport {
        let verdicts: Vec<KVerdict> = ks
            .into_iter()
            .map(|k| {
                let (left, right) = (self.get(k), self.get(mirror(k)));
                KVerdict { k, mirror: mirror(k), pass: left == right, left, right }
            })
            .collect();
        let pass = verdicts.iter().all(|v| v.pass);
        SymmetryReport { id: self.id, n: self.n, verdicts, pass }
    }

    /// The standard symmetry of each family.
    pub fn check_symmetry(&self) -> SymmetryReport {
        let n = self.n as i64;
        match self.id {
            PolyId::BStar => self.symmetry(1..=2 * n, |k| 2 * n + 1 - k),
            PolyId::EHat | PolyId::DHat => self.symmetry(1..=n, |k| n + 1 - k),
            PolyId::EB => self.symmetry(0..=n, |k| n - k),
            PolyId::ED => self.symmetry(2..=2 * n, |k| 2 * n + 2 - k),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let polys: BTreeMap<String, Vec<TermDoc>> = self
            .by_k
            .iter()
            .map(|(k, p)| {
                let terms = p
                    .terms()
                    .iter()
                    .map(|(e, c)| TermDoc { exponents: e.clone(), coeff: c.to_string() })
                    .collect();
                (k.to_string(), terms)
            })
            .collect();
        serde_json::json!({
            "polynomial": self.id.name(),
            "n": self.n,
            "vars": self.id.vars(),
            "by_k": polys,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("k,{},coeff\n", self.id.vars().join(","));
        for (k, p) in &self.by_k {
            for (e, c) in p.terms() {
                s.push_str(&format!("{k},{},{c}\n", e.iter().join(",")));
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug)]
pub struct KVerdict {
    pub k: i64,
    pub mirror: i64,
    pub left: MultiPoly,
    pub right: MultiPoly,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub id: PolyId,
    pub n: u32,
    pub verdicts: Vec<KVerdict>,
    pub pass: bool,
}

impl fmt::Display for SymmetryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.id.vars();
        for v in &self.verdicts {
            writeln!(
                f,
                "{} n={} k={} vs k={}: {} [{}]",
                self.id.name(),
                self.n,
                v.k,
                v.mirror,
                if v.pass { "equal" } else { "DIFFERENT" },
                v.left.fmt_with(vars)
            )?;
            if !v.pass {
                writeln!(f, "    other side: {}", v.right.fmt_with(vars))?;
            }
        }
        write!(f, "{} n={}: {}", self.id.name(), self.n, if self.pass { "pass" } else { "FAIL" })
    }
}

fn chi(b: bool) -> u32 {
    b as u32
}

fn tableau_family<F>(id: PolyId, n: u32, fam: Family, ks: std::ops::RangeInclusive<i64>, key: F) -> PolyFamily
where
    F: Fn(&PermutationTableau) -> (i64, Vec<u32>) + Sync,
{
    fold_tableaux(
        n,
        fam,
        || PolyFamily::new(id, n, ks.clone()),
        |acc, t| {
            let (k, e) = key(t);
            acc.add(k, &e);
        },
        PolyFamily::merge,
    )
}

fn perm_family<F>(id: PolyId, n: u32, fam: Family, ks: std::ops::RangeInclusive<i64>, key: F) -> PolyFamily
where
    F: Fn(&SignedPermutation) -> (i64, Vec<u32>) + Sync,
{
    fold_perms(
        n as usize,
        fam,
        || PolyFamily::new(id, n, ks.clone()),
        |acc, s| {
            let (k, e) = key(s);
            acc.add(k, &e);
        },
        PolyFamily::merge,
    )
}

/// `B*_{n,k}(t, q)` for `k` in `1..=2n`.
pub fn bstar(n: u32, source: Source) -> PolyFamily {
    let ks = 1..=2 * n as i64;
    match source {
        Source::Tableaux => tableau_family(PolyId::BStar, n, Family::B, ks, |t| {
            let s = t.stats();
            let t_exp = s.diag + chi(t.labels().is_pos(1));
            ((2 * s.row_pos + s.diag) as i64, vec![t_exp, s.so])
        }),
        Source::Perms => perm_family(PolyId::BStar, n, Family::B, ks, |s| {
            (s.fwex() as i64, vec![s.neg() + chi(s.at(1) > 0), s.crs_b()])
        }),
    }
}

/// `Ê_{n,k}(q)` over ordinary permutations grouped by weak excedances.
pub fn ehat(n: u32) -> PolyFamily {
    perm_family(PolyId::EHat, n, Family::A, 1..=n as i64, |s| {
        (s.wex() as i64, vec![s.crs_a().expect("unsigned window")])
    })
}

/// `D̂_{k,n}(p, q, r)` over type A tableaux grouped by positive rows.
pub fn dhat(n: u32) -> PolyFamily {
    tableau_family(PolyId::DHat, n, Family::A, 1..=n as i64, |t| {
        let s = t.stats();
        (s.row_pos as i64, vec![s.zero.unwrap(), s.so, s.two.unwrap()])
    })
}

/// `E^B_{n,k}(q)` grouped by `⌊fwex/2⌋`.
pub fn e_b(n: u32) -> PolyFamily {
    perm_family(PolyId::EB, n, Family::B, 0..=n as i64, |s| ((s.fwex() / 2) as i64, vec![s.crs_b()]))
}

/// `E^D_{n,k}(t, q)` for `k` in `1..=2n+1`.
pub fn e_d(n: u32, source: Source) -> PolyFamily {
    let ks = 1..=2 * n as i64 + 1;
    match source {
        Source::Tableaux => tableau_family(PolyId::ED, n, Family::D, ks, |t| {
            let s = t.stats();
            let k = s.diag + 2 * s.row_pos + chi(t.labels().is_one(1));
            (k as i64, vec![s.diag, s.so])
        }),
        Source::Perms => perm_family(PolyId::ED, n, Family::D, ks, |s| {
            (s.type_d_stats().fwex_d as i64, vec![s.neg(), s.crs_b()])
        }),
    }
}

pub fn compute(id: PolyId, n: u32, source: Source) -> PolyFamily {
    match id {
        PolyId::BStar => bstar(n, source),
        PolyId::EHat => ehat(n),
        PolyId::DHat => dhat(n),
        PolyId::EB => e_b(n),
        PolyId::ED => e_d(n, source),
    }
}

/// `E^B` rebuilt from the permutation side of `B*` by merging `2k` and
/// `2k+1` at `t = 1`.
pub fn e_b_from_bstar(bstar: &PolyFamily) -> PolyFamily {
    let n = bstar.n as i64;
    let mut out = PolyFamily::new(PolyId::EB, bstar.n, 0..=n);
    for k in 0..=n {
        let slot = out.by_k.get_mut(&k).unwrap();
        slot.add_assign(&bstar.get(2 * k).specialize_one(0));
        slot.add_assign(&bstar.get(2 * k + 1).specialize_one(0));
    }
    out
}

pub fn check_bstar_symmetry(n: u32, source: Source) -> SymmetryReport {
    bstar(n, source).check_symmetry()
}

pub type Histogram = BTreeMap<u32, u64>;

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: u32,
    pub fwex_d: Histogram,
    pub big_ddes_plus_two: Histogram,
    pub ddes_plus_two: Histogram,
    pub pass: bool,
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |h: &Histogram| h.iter().map(|(k, v)| format!("{k}:{v}")).join(" ");
        writeln!(f, "n={} fwex_D    {}", self.n, show(&self.fwex_d))?;
        writeln!(f, "n={} Ddes+2    {}", self.n, show(&self.big_ddes_plus_two))?;
        writeln!(f, "n={} ddes+2    {}", self.n, show(&self.ddes_plus_two))?;
        write!(f, "n={} equidistributed: {}", self.n, if self.pass { "yes" } else { "NO" })
    }
}

/// Histograms of `fwex_D`, `Ddes + 2` and `ddes + 2` over the type D group.
pub fn conjecture_check(n: u32) -> ConjectureReport {
    type H3 = [Histogram; 3];
    let [a, b, c] = fold_perms(
        n as usize,
        Family::D,
        H3::default,
        |h, s| {
            let d = s.type_d_stats();
            *h[0].entry(d.fwex_d).or_default() += 1;
            *h[1].entry(d.big_ddes + 2).or_default() += 1;
            *h[2].entry(d.ddes + 2).or_default() += 1;
        },
        |mut x, y| {
            for (hx, hy) in x.iter_mut().zip(y) {
                for (k, v) in hy {
                    *hx.entry(k).or_default() += v;
                }
            }
            x
        },
    );
    let pass = a == b && b == c;
    ConjectureReport { n, fwex_d: a, big_ddes_plus_two: b, ddes_plus_two: c, pass }
}

pub type Multiset<K> = BTreeMap<K, u64>;

fn tally<K: Ord>(m: &mut Multiset<K>, k: K) {
    *m.entry(k).or_default() += 1;
}

fn merge_tally<K: Ord>(mut a: Multiset<K>, b: Multiset<K>) -> Multiset<K> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// `{(row, diag, so, [1 positive])}` over type B tableaux and
/// `{(wex, neg, crs, [σ(1) > 0])}` over signed permutations.
pub fn type_b_tuples(n: u32) -> (Multiset<[u32; 4]>, Multiset<[u32; 4]>) {
    let tabs = fold_tableaux(
        n,
        Family::B,
        Multiset::new,
        |m, t| {
            let s = t.stats();
            tally(m, [s.row_pos, s.diag, s.so, chi(t.labels().is_pos(1))]);
        },
        merge_tally,
    );
    let perms = fold_perms(
        n as usize,
        Family::B,
        Multiset::new,
        |m, s| tally(m, [s.wex(), s.neg(), s.crs_b(), chi(s.at(1) > 0)]),
        merge_tally,
    );
    (tabs, perms)
}

/// `{(row, so, zero + two)}` over type A tableaux and `{(wex, crs, al)}`
/// over permutations.
pub fn type_a_tuples(n: u32) -> (Multiset<[u32; 3]>, Multiset<[u32; 3]>) {
    let tabs = fold_tableaux(
        n,
        Family::A,
        Multiset::new,
        |m, t| {
            let s = t.stats();
            tally(m, [s.row_pos, s.so, s.zero.unwrap() + s.two.unwrap()]);
        },
        merge_tally,
    );
    let perms = fold_perms(
        n as usize,
        Family::A,
        Multiset::new,
        |m, s| tally(m, [s.wex(), s.crs_a().unwrap(), s.al_a().unwrap()]),
        merge_tally,
    );
    (tabs, perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(&[u32], i64)]) -> MultiPoly {
        let mut p = MultiPoly::zero(terms[0].0.len());
        for (e, c) in terms {
            p.add_term(e, *c);
        }
        p
    }

    #[test]
    fn arithmetic() {
        let mut p = MultiPoly::monomial(&[1, 2], 3);
        p.add_term(&[1, 2], -3);
        assert!(p.is_zero());
        let p = poly(&[(&[1, 0], 2), (&[0, 1], 5)]);
        assert_eq!(p.eval_ones(), BigInt::from(7));
        assert_eq!(p.specialize_one(0), poly(&[(&[0], 2), (&[1], 5)]));
        assert_eq!(p.fmt_with(&["t", "q"]), "2*t + 5*q");
    }

    #[test]
    fn bstar_small() {
        let b = bstar(1, Source::Perms);
        assert_eq!(b.get(1), poly(&[(&[1, 0], 1)]));
        assert_eq!(b.get(2), poly(&[(&[1, 0], 1)]));
        let b = bstar(2, Source::Perms);
        assert_eq!(b.get(1), poly(&[(&[1, 0], 1)]));
        assert_eq!(b.get(2), poly(&[(&[1, 0], 1), (&[2, 0], 1), (&[2, 1], 1)]));
        assert_eq!(b.get(3), b.get(2));
        assert_eq!(b.get(4), b.get(1));
        assert_eq!(b.total(), BigInt::from(8));
        assert_eq!(bstar(2, Source::Tableaux), b);
    }

    #[test]
    fn ehat_and_eb_small() {
        let e = ehat(4);
        assert_eq!(e.get(2), poly(&[(&[0], 6), (&[1], 4), (&[2], 1)]));
        assert_eq!(e.get(1), poly(&[(&[0], 1)]));
        let b = e_b(3);
        assert_eq!(b.get(1), poly(&[(&[0], 9), (&[1], 9), (&[2], 4), (&[3], 1)]));
        assert_eq!(b.get(0), poly(&[(&[0], 1)]));
        assert_eq!(e_b_from_bstar(&bstar(3, Source::Perms)), b);
    }

    #[test]
    fn ed_small() {
        let d = e_d(3, Source::Perms);
        assert!(d.get(1).is_zero());
        assert!(d.get(7).is_zero());
        assert_eq!(d.get(2), poly(&[(&[0, 0], 1)]));
        assert_eq!(d.get(3), poly(&[(&[2, 0], 2), (&[2, 1], 3), (&[2, 2], 1)]));
        assert_eq!(
            d.get(4),
            poly(&[(&[0, 0], 3), (&[0, 1], 1), (&[2, 0], 1), (&[2, 1], 2), (&[2, 2], 2), (&[2, 3], 1)])
        );
        assert_eq!(e_d(3, Source::Tableaux), d);
    }

    #[test]
    fn mutation_flips_verdict() {
        let mut b = bstar(3, Source::Tableaux);
        assert!(b.check_symmetry().pass);
        b.by_k.get_mut(&2).unwrap().add_term(&[0, 1], 1);
        assert!(!b.check_symmetry().pass);
    }

    #[test]
    fn conjecture_small() {
        let r = conjecture_check(1);
        assert!(r.pass);
        assert_eq!(r.fwex_d, Histogram::from([(2, 1)]));
        let r = conjecture_check(3);
        assert_eq!(r.fwex_d, Histogram::from([(2, 1), (3, 6), (4, 10), (5, 6), (6, 1)]));
        assert!(r.pass);
    }

    #[test]
    fn ehat_is_dhat_at_p_r_one() {
        for n in 1..=5 {
            let (e, d) = (ehat(n), dhat(n));
            for k in 1..=n as i64 {
                assert_eq!(e.get(k), d.get(k).specialize_one(2).specialize_one(0), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn conjecture_histograms() {
        let r = conjecture_check(4);
        assert_eq!(r.fwex_d, Histogram::from([(2, 1), (3, 14), (4, 47), (5, 68), (6, 47), (7, 14), (8, 1)]));
        let r = conjecture_check(5);
        let want = Histogram::from([(2, 1), (3, 30), (4, 176), (5, 450), (6, 606), (7, 450), (8, 176), (9, 30), (10, 1)]);
        assert_eq!(r.fwex_d, want);
        assert_eq!(r.big_ddes_plus_two, want);
        assert_eq!(r.ddes_plus_two, want);
    }

    #[test]
    fn csv_has_one_row_per_term() {
        let csv = bstar(1, Source::Perms).to_csv();
        assert_eq!(csv, "k,t,q,coeff\n1,1,0,1\n2,1,0,1\n");
    }
}
