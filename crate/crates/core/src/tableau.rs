//! Permutation tableaux of types A, B and D: validation, the S marking of
//! superfluous 1s, statistics, exhaustive enumeration and a JSON format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{BoxAddr, Entry, LabelSets, PartialFilling};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
}

impl Family {
    /// Whether a label split is allowed for this family.
    pub fn admits(self, labels: &LabelSets) -> bool {
        labels.is_anchored()
            && match self {
                Family::A => labels.diag_one_mask() == 0,
                Family::B => true,
                Family::D => labels.diag_one_mask().count_ones().is_multiple_of(2),
            }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Malformed(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("box {0} has no entry")]
    Missing(BoxAddr),
    #[error("box {0} holds {1:?}; only 0, 1 and S are allowed")]
    BadEntry(BoxAddr, Entry),
    #[error("diagonal {0} disagrees with the label sets")]
    Diagonal(BoxAddr),
    #[error("label 1 is neither positive nor a boundary column")]
    Unanchored,
    #[error("column {0} has no nonzero entry")]
    EmptyColumn(u32),
    #[error("column {col}: topmost nonzero entry at {at} is not a 1")]
    TopNotOne { col: u32, at: BoxAddr },
    #[error("column {col}: entry 1 at {at} is not the topmost nonzero entry")]
    LowerOne { col: u32, at: BoxAddr },
    #[error("box {0} is 0 with nonzero entries above it and to its left")]
    Perp(BoxAddr),
    #[error("zero diagonal {0} has a nonzero entry to its left")]
    ZeroDiagonal(BoxAddr),
    #[error("label sets do not belong to family {0:?}")]
    Family(Family),
}

/// A validated tableau with superfluous 1s stored as `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermutationTableau {
    filling: PartialFilling,
    family: Family,
}

impl fmt::Debug for PermutationTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?}", self.family, self.filling)
    }
}

impl PermutationTableau {
    pub fn filling(&self) -> &PartialFilling {
        &self.filling
    }
    pub fn into_filling(self) -> PartialFilling {
        self.filling
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn labels(&self) -> &LabelSets {
        self.filling.labels()
    }
    pub fn n(&self) -> u32 {
        self.filling.n()
    }

    /// The same tableau checked against another family.
    pub fn with_family(self, family: Family) -> Result<Self, Violation> {
        validate(self.filling, family)
    }

    pub fn stats(&self) -> TableauStats {
        stats(self)
    }

    /// The toggle of row 1 and row -1, attaching or removing `(-1, 1)`.
    pub fn iota(&self) -> PermutationTableau {
        let f = self.filling.iota().expect("tableaux are anchored");
        PermutationTableau { filling: f, family: Family::B }
    }
}

pub fn validate(f: PartialFilling, family: Family) -> Result<PermutationTableau, Violation> {
    let labels = *f.labels();
    if !labels.is_anchored() {
        return Err(Violation::Unanchored);
    }
    if !family.admits(&labels) {
        return Err(Violation::Family(family));
    }
    for (b, e) in f.cells() {
        match e {
            Entry::Empty => return Err(Violation::Missing(b)),
            Entry::Star => return Err(Violation::BadEntry(b, e)),
            _ => {}
        }
        if b.is_diagonal() {
            let want = if labels.is_one(b.col) { Entry::One } else { Entry::Zero };
            if e != want {
                return Err(Violation::Diagonal(b));
            }
        }
    }
    for j in labels.columns() {
        let mut seen = false;
        for b in labels.column_boxes(j) {
            match f.get(b) {
                Entry::One if seen => return Err(Violation::LowerOne { col: j, at: b }),
                Entry::S if !seen => return Err(Violation::TopNotOne { col: j, at: b }),
                e if e.is_nonzero() => seen = true,
                _ => {}
            }
        }
        if !seen {
            return Err(Violation::EmptyColumn(j));
        }
    }
    for (b, e) in f.cells() {
        if e == Entry::Zero {
            let left = f.nonzero_left(b);
            if b.is_diagonal() && left {
                return Err(Violation::ZeroDiagonal(b));
            }
            if left && f.nonzero_above(b) {
                return Err(Violation::Perp(b));
            }
        }
    }
    Ok(PermutationTableau { filling: f, family })
}

/// Marks every 1 below the topmost 1 of its column as `S`.
pub fn canonicalize(f: &PartialFilling) -> PartialFilling {
    let mut out = f.clone();
    for j in f.labels().columns() {
        let mut seen = false;
        for b in f.labels().column_boxes(j) {
            if f.get(b) == Entry::One {
                if seen {
                    out.set(b, Entry::S);
                }
                seen = true;
            }
        }
    }
    out
}

/// Turns every `S` back into a 1.
pub fn decanonicalize(f: &PartialFilling) -> PartialFilling {
    let mut out = f.clone();
    for (b, e) in f.cells() {
        if e == Entry::S {
            out.set(b, Entry::One);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauStats {
    pub so: u32,
    pub diag: u32,
    pub row_pos: u32,
    /// Zeros of the rectangle representation, type A only.
    pub zero: Option<u32>,
    /// Twos of the rectangle representation, type A only.
    pub two: Option<u32>,
}

impl TableauStats {
    pub fn zero(&self) -> Result<u32> {
        self.zero.ok_or_else(|| Error::Domain("zero is defined for type A tableaux only".into()))
    }
    pub fn two(&self) -> Result<u32> {
        self.two.ok_or_else(|| Error::Domain("two is defined for type A tableaux only".into()))
    }
    /// `2 row + diag`, the index of the B* grouping.
    pub fn weight_index(&self) -> u32 {
        2 * self.row_pos + self.diag
    }
}

pub fn stats(t: &PermutationTableau) -> TableauStats {
    let f = t.filling();
    let l = f.labels();
    let so = f.count(Entry::S) as u32;
    let diag = l.diag_one_mask().count_ones();
    let row_pos = l.pos_mask().count_ones();
    let (zero, two) = if t.family() == Family::A {
        let mut zero = 0;
        let mut two = 0;
        for i in l.pos() {
            for j in l.columns() {
                let b = BoxAddr::new(i as i32, j);
                if j < i {
                    two += 1;
                } else if f.get(b) == Entry::Zero {
                    zero += 1;
                }
            }
        }
        (Some(zero), Some(two))
    } else {
        (None, None)
    };
    TableauStats { so, diag, row_pos, zero, two }
}

/// Label splits admitted by a family, in a fixed order.
pub fn label_splits(n: u32, family: Family) -> Vec<LabelSets> {
    LabelSets::all_anchored(n).into_iter().filter(|l| family.admits(l)).collect()
}

/// Calls `visit` on every tableau with the given label sets.
///
/// Boxes are filled top row first, each row left to right, so the box above
/// and the boxes to the left are always decided before a box is.
pub fn for_each_with_labels(labels: &LabelSets, family: Family, visit: &mut dyn FnMut(PermutationTableau)) {
    if !family.admits(labels) {
        return;
    }
    let boxes = labels.boxes();
    let last_in_col: Vec<bool> = boxes
        .iter()
        .map(|b| labels.column_boxes(b.col).last() == Some(b))
        .collect();
    let mut st = Search {
        labels: *labels,
        family,
        boxes,
        last_in_col,
        col_nz: BTreeMap::new(),
        filling: PartialFilling::empty(*labels),
    };
    st.go(0, false, visit);
}

struct Search {
    labels: LabelSets,
    family: Family,
    boxes: Vec<BoxAddr>,
    last_in_col: Vec<bool>,
    col_nz: BTreeMap<u32, bool>,
    filling: PartialFilling,
}

impl Search {
    fn go(&mut self, k: usize, row_nz: bool, visit: &mut dyn FnMut(PermutationTableau)) {
        if k == self.boxes.len() {
            visit(PermutationTableau { filling: self.filling.clone(), family: self.family });
            return;
        }
        let b = self.boxes[k];
        let row_nz = if k > 0 && self.boxes[k - 1].row != b.row { false } else { row_nz };
        let col_nz = self.col_nz.get(&b.col).copied().unwrap_or(false);
        let redundant = b.row < 0 && self.labels.is_zero(b.row.unsigned_abs());
        let mut options: [Option<bool>; 2] = [None, None];
        if b.is_diagonal() {
            let one = self.labels.is_one(b.col);
            if !one && row_nz {
                return;
            }
            options[0] = Some(one);
        } else if redundant {
            options[0] = Some(false);
        } else {
            let forced = (col_nz && row_nz) || (self.last_in_col[k] && !col_nz);
            options[0] = Some(true);
            if !forced {
                options[1] = Some(false);
            }
        }
        for nz in options.into_iter().flatten() {
            if !nz && self.last_in_col[k] && !col_nz {
                continue;
            }
            let e = match (nz, col_nz) {
                (false, _) => Entry::Zero,
                (true, false) => Entry::One,
                (true, true) => Entry::S,
            };
            self.filling.set(b, e);
            self.col_nz.insert(b.col, col_nz || nz);
            self.go(k + 1, row_nz || nz, visit);
            self.col_nz.insert(b.col, col_nz);
        }
        self.filling.set(b, Entry::Empty);
    }
}

/// Every tableau of length `n` in the family, in a deterministic order.
pub fn enumerate(n: u32, family: Family) -> Vec<PermutationTableau> {
    label_splits(n, family)
        .par_iter()
        .map(|l| {
            let mut v = Vec::new();
            for_each_with_labels(l, family, &mut |t| v.push(t));
            v
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn count(n: u32, family: Family) -> u64 {
    label_splits(n, family)
        .par_iter()
        .map(|l| {
            let mut c = 0u64;
            for_each_with_labels(l, family, &mut |_| c += 1);
            c
        })
        .sum()
}

/// Folds over all tableaux, one shard per label split, merging shards in
/// split order so the result does not depend on scheduling.
pub fn fold_tableaux<A, F, M>(n: u32, family: Family, init: impl Fn() -> A + Sync, step: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &PermutationTableau) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    let shards: Vec<A> = label_splits(n, family)
        .par_iter()
        .map(|l| {
            let mut acc = init();
            for_each_with_labels(l, family, &mut |t| step(&mut acc, &t));
            acc
        })
        .collect();
    shards.into_iter().fold(init(), merge)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub row: i32,
    pub col: u32,
    pub e: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauDoc {
    pub n: u32,
    pub diag_one: Vec<u32>,
    pub diag_zero: Vec<u32>,
    pub cells: Vec<CellDoc>,
}

impl TableauDoc {
    /// Cells in display order; `raw` writes every S as 1.
    pub fn from_tableau(t: &PermutationTableau, raw: bool) -> Self {
        let l = t.labels();
        let cells = t
            .filling()
            .cells()
            .into_iter()
            .map(|(b, e)| {
                let s = match e {
                    Entry::Zero => "0",
                    Entry::One => "1",
                    Entry::S if raw => "1",
                    Entry::S => "S",
                    _ => unreachable!("tableaux hold 0, 1 and S only"),
                };
                CellDoc { row: b.row, col: b.col, e: s.to_string() }
            })
            .collect();
        TableauDoc { n: l.n(), diag_one: l.diag_one(), diag_zero: l.diag_zero(), cells }
    }

    /// Builds the raw filling, without canonicalizing or validating.
    pub fn to_filling(&self) -> Result<PartialFilling> {
        let labels = LabelSets::new(self.n, &self.diag_one, &self.diag_zero)?;
        let mut f = PartialFilling::empty(labels);
        for c in &self.cells {
            let b = BoxAddr::new(c.row, c.col);
            if !labels.has_box(b) {
                return Err(Error::Malformed(format!("cell {b} is not a box of the diagram")));
            }
            if f.get(b) != Entry::Empty {
                return Err(Error::Malformed(format!("cell {b} appears twice")));
            }
            let e = match c.e.as_str() {
                "0" => Entry::Zero,
                "1" => Entry::One,
                "S" => Entry::S,
                other => return Err(Error::Malformed(format!("cell {b} has entry {other:?}"))),
            };
            f.set(b, e);
        }
        if let Some(b) = labels.boxes().into_iter().find(|&b| f.get(b) == Entry::Empty) {
            return Err(Error::Malformed(format!("box {b} has no cell")));
        }
        Ok(f)
    }
}

pub fn to_json(t: &PermutationTableau, raw: bool) -> String {
    serde_json::to_string_pretty(&TableauDoc::from_tableau(t, raw)).expect("plain data serializes")
}

/// Parses, marks superfluous 1s as S, then validates as `family`.
pub fn from_json(text: &str, family: Family) -> Result<PermutationTableau> {
    let doc: TableauDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let f = canonicalize(&doc.to_filling()?);
    Ok(validate(f, family)?)
}
