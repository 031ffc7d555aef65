//! Shifted diagrams, partial fillings and the working region of a filling.
//!
//! Rows are displayed top to bottom by ascending signed label, columns left
//! to right by descending label. Column `j` holds exactly `j` boxes and its
//! topmost box is the diagonal `(-j, j)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported length. Label sets are stored as bitmasks.
pub const MAX_N: u32 = 30;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSets {
    n: u32,
    diag_one: u64,
    diag_zero: u64,
}

fn mask_of(labels: &[u32]) -> u64 {
    labels.iter().fold(0, |m, &i| m | (1u64 << i))
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    (1..64u32).filter(move |&i| mask & (1u64 << i) != 0)
}

impl LabelSets {
    pub fn new(n: u32, diag_one: &[u32], diag_zero: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Labels(format!("length {n} outside 1..={MAX_N}")));
        }
        for &i in diag_one.iter().chain(diag_zero) {
            if i == 0 || i > n {
                return Err(Error::Labels(format!("label {i} outside 1..={n}")));
            }
        }
        let (one, zero) = (mask_of(diag_one), mask_of(diag_zero));
        if one.count_ones() as usize != diag_one.len() || zero.count_ones() as usize != diag_zero.len() {
            return Err(Error::Labels("repeated label".into()));
        }
        if one & zero != 0 {
            return Err(Error::Labels("diag_one and diag_zero overlap".into()));
        }
        Ok(LabelSets { n, diag_one: one, diag_zero: zero })
    }

    /// Builds label sets from bitmasks (bit `i` stands for label `i`).
    pub fn from_masks(n: u32, diag_one: u64, diag_zero: u64) -> Self {
        debug_assert!((1..=MAX_N).contains(&n));
        debug_assert_eq!(diag_one & diag_zero, 0);
        debug_assert_eq!((diag_one | diag_zero) & !Self::full_mask(n), 0);
        LabelSets { n, diag_one, diag_zero }
    }

    fn full_mask(n: u32) -> u64 {
        ((1u64 << (n + 1)) - 1) & !1
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn diag_one_mask(&self) -> u64 {
        self.diag_one
    }
    pub fn diag_zero_mask(&self) -> u64 {
        self.diag_zero
    }
    pub fn pos_mask(&self) -> u64 {
        Self::full_mask(self.n) & !(self.diag_one | self.diag_zero)
    }
    pub fn neg_mask(&self) -> u64 {
        self.diag_one | self.diag_zero
    }

    pub fn is_pos(&self, i: u32) -> bool {
        i >= 1 && i <= self.n && self.pos_mask() & (1 << i) != 0
    }
    pub fn is_one(&self, i: u32) -> bool {
        i < 64 && self.diag_one & (1 << i) != 0
    }
    pub fn is_zero(&self, i: u32) -> bool {
        i < 64 && self.diag_zero & (1 << i) != 0
    }
    pub fn is_neg(&self, i: u32) -> bool {
        self.is_one(i) || self.is_zero(i)
    }

    pub fn pos(&self) -> Vec<u32> {
        bits(self.pos_mask()).collect()
    }
    pub fn diag_one(&self) -> Vec<u32> {
        bits(self.diag_one).collect()
    }
    pub fn diag_zero(&self) -> Vec<u32> {
        bits(self.diag_zero).collect()
    }
    /// Column labels in ascending order.
    pub fn columns(&self) -> Vec<u32> {
        bits(self.neg_mask()).collect()
    }

    /// Whether 1 is a positive label or a boundary column, the standing
    /// requirement for everything the involution does.
    pub fn is_anchored(&self) -> bool {
        self.is_pos(1) || self.is_one(1)
    }

    pub fn has_box(&self, b: BoxAddr) -> bool {
        if !self.is_neg(b.col) {
            return false;
        }
        if b.row > 0 {
            self.is_pos(b.row as u32) && b.col > b.row as u32
        } else if b.row < 0 {
            let i = b.row.unsigned_abs();
            self.is_neg(i) && b.col >= i
        } else {
            false
        }
    }

    /// Row labels in display order (ascending signed label).
    pub fn rows(&self) -> Vec<i32> {
        let mut rows: Vec<i32> = self.columns().iter().rev().map(|&j| -(j as i32)).collect();
        rows.extend(self.pos().iter().map(|&i| i as i32));
        rows
    }

    /// Boxes of column `j`, top to bottom.
    pub fn column_boxes(&self, j: u32) -> Vec<BoxAddr> {
        self.rows()
            .into_iter()
            .map(|row| BoxAddr::new(row, j))
            .filter(|&b| self.has_box(b))
            .collect()
    }

    /// Boxes of row `i`, left to right.
    pub fn row_boxes(&self, i: i32) -> Vec<BoxAddr> {
        self.columns()
            .into_iter()
            .rev()
            .map(|j| BoxAddr::new(i, j))
            .filter(|&b| self.has_box(b))
            .collect()
    }

    /// All boxes, rows top to bottom, each row left to right.
    pub fn boxes(&self) -> Vec<BoxAddr> {
        self.rows().into_iter().flat_map(|i| self.row_boxes(i)).collect()
    }

    pub fn classify_column(&self, j: u32) -> Result<ColumnClass> {
        if self.is_one(j) {
            Ok(ColumnClass::Boundary)
        } else if self.is_zero(j) {
            Ok(ColumnClass::Interior)
        } else {
            Err(Error::InvalidColumn(j))
        }
    }

    pub fn classify_row(&self, i: i32) -> Result<RowClass> {
        let a = i.unsigned_abs();
        let valid = if i > 0 { self.is_pos(a) } else { i < 0 && self.is_neg(a) };
        if !valid {
            return Err(Error::InvalidRow(i));
        }
        Ok(self.row_class_unchecked(a))
    }

    fn row_class_unchecked(&self, a: u32) -> RowClass {
        if a == 1 || self.is_one(a) {
            RowClass::Boundary
        } else if self.is_pos(a) {
            RowClass::Interior
        } else {
            RowClass::Redundant
        }
    }

    pub fn is_boundary_row(&self, i: i32) -> bool {
        let a = i.unsigned_abs();
        a == 1 || self.is_one(a)
    }

    /// The same shape with row 1 and row -1 exchanged: the box `(-1, 1)`
    /// is attached or removed.
    pub fn iota(&self) -> Result<Self> {
        if self.is_pos(1) {
            Ok(LabelSets { diag_one: self.diag_one | 2, ..*self })
        } else if self.is_one(1) {
            Ok(LabelSets { diag_one: self.diag_one & !2, ..*self })
        } else {
            Err(Error::Unanchored)
        }
    }

    /// Every label split of `[n]` with 1 a positive label or a boundary column.
    pub fn all_anchored(n: u32) -> Vec<LabelSets> {
        let full = Self::full_mask(n);
        let mut out = Vec::new();
        let mut neg = 0u64;
        loop {
            let mut one = neg;
            loop {
                let l = LabelSets { n, diag_one: one, diag_zero: neg & !one };
                if l.is_anchored() {
                    out.push(l);
                }
                if one == 0 {
                    break;
                }
                one = (one - 1) & neg;
            }
            if neg == full {
                break;
            }
            neg = (neg.wrapping_sub(full)) & full;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for LabelSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LabelSets(n={}, one={:?}, zero={:?}, pos={:?})",
            self.n,
            self.diag_one(),
            self.diag_zero(),
            self.pos()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnClass {
    Boundary,
    Interior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowClass {
    Boundary,
    Interior,
    Redundant,
}

/// Box `(row, col)`; negative rows sit above positive ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxAddr {
    pub row: i32,
    pub col: u32,
}

impl BoxAddr {
    pub const fn new(row: i32, col: u32) -> Self {
        BoxAddr { row, col }
    }
    pub fn is_diagonal(&self) -> bool {
        self.row < 0 && self.row.unsigned_abs() == self.col
    }
}

impl fmt::Debug for BoxAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl fmt::Display for BoxAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Entry {
    Zero,
    One,
    S,
    Star,
    #[default]
    Empty,
}

impl Entry {
    /// One or S. Stars do not count.
    pub fn is_nonzero(self) -> bool {
        matches!(self, Entry::One | Entry::S)
    }

    pub fn symbol(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::S => 'S',
            Entry::Star => '*',
            Entry::Empty => '.',
        }
    }
}

/// Labels plus an entry per box, stored on a dense grid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialFilling {
    labels: LabelSets,
    grid: Vec<Entry>,
}

impl PartialFilling {
    /// All boxes empty.
    pub fn empty(labels: LabelSets) -> Self {
        let n = labels.n as usize;
        PartialFilling { labels, grid: vec![Entry::Empty; (2 * n + 1) * (n + 1)] }
    }

    /// Every box Zero except diagonals, which follow the labels.
    pub fn zeroed(labels: LabelSets) -> Self {
        let mut f = Self::empty(labels);
        for b in labels.boxes() {
            let e = if b.is_diagonal() && labels.is_one(b.col) { Entry::One } else { Entry::Zero };
            f.set(b, e);
        }
        f
    }

    pub fn labels(&self) -> &LabelSets {
        &self.labels
    }

    pub fn n(&self) -> u32 {
        self.labels.n
    }

    fn index(&self, b: BoxAddr) -> usize {
        let n = self.labels.n as i32;
        ((b.row + n) as usize) * (n as usize + 1) + b.col as usize
    }

    pub fn has_box(&self, b: BoxAddr) -> bool {
        self.labels.has_box(b)
    }

    /// Entry of box `b`; boxes outside the diagram read as `Empty`.
    pub fn get(&self, b: BoxAddr) -> Entry {
        if self.labels.has_box(b) {
            self.grid[self.index(b)]
        } else {
            Entry::Empty
        }
    }

    pub fn set(&mut self, b: BoxAddr, e: Entry) {
        assert!(self.labels.has_box(b), "box {b} not in diagram {:?}", self.labels);
        let k = self.index(b);
        self.grid[k] = e;
    }

    /// `(box, entry)` pairs in display order.
    pub fn cells(&self) -> Vec<(BoxAddr, Entry)> {
        self.labels.boxes().into_iter().map(|b| (b, self.get(b))).collect()
    }

    pub fn count(&self, e: Entry) -> usize {
        self.labels.boxes().into_iter().filter(|&b| self.get(b) == e).count()
    }

    /// True if some box of row `b.row` strictly left of `b` is One or S.
    pub fn nonzero_left(&self, b: BoxAddr) -> bool {
        self.labels
            .columns()
            .into_iter()
            .filter(|&j| j > b.col)
            .any(|j| self.get(BoxAddr::new(b.row, j)).is_nonzero())
    }

    /// True if some box of column `b.col` strictly above `b` is One or S.
    pub fn nonzero_above(&self, b: BoxAddr) -> bool {
        self.labels
            .column_boxes(b.col)
            .into_iter()
            .take_while(|c| c.row < b.row)
            .any(|c| self.get(c).is_nonzero())
    }

    /// Same filling with row 1 and row -1 exchanged; the box `(-1, 1)` is
    /// attached holding One, or removed.
    pub fn iota(&self) -> Result<PartialFilling> {
        let labels = self.labels.iota()?;
        let mut out = PartialFilling::empty(labels);
        for (b, e) in self.cells() {
            if b == BoxAddr::new(-1, 1) {
                continue;
            }
            let row = if b.row.abs() == 1 { -b.row } else { b.row };
            out.set(BoxAddr::new(row, b.col), e);
        }
        if labels.is_one(1) {
            out.set(BoxAddr::new(-1, 1), Entry::One);
        }
        Ok(out)
    }

    /// ASCII grid: row labels in a left gutter, `.` where a row has no box.
    pub fn render(&self) -> String {
        let cols: Vec<u32> = self.labels.columns().into_iter().rev().collect();
        let width = self.labels.rows().iter().map(|r| r.to_string().len()).max().unwrap_or(1);
        let mut s = String::new();
        s.push_str(&format!("{:>width$} |", ""));
        for &j in &cols {
            s.push_str(&format!(" {j:>2}"));
        }
        s.push('\n');
        for i in self.labels.rows() {
            s.push_str(&format!("{i:>width$} |"));
            for &j in &cols {
                let b = BoxAddr::new(i, j);
                let c = if self.labels.has_box(b) { self.get(b).symbol() } else { ' ' };
                s.push_str(&format!("  {c}"));
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for PartialFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?}", self.labels)?;
        f.write_str(&self.render())
    }
}

/// The working region of a shape: boundary and interior rows with the
/// topmost such box of every column removed, plus its two numberings.
#[derive(Clone, Debug)]
pub struct Region {
    labels: LabelSets,
    boxes: Vec<BoxAddr>,
    rows: BTreeMap<i32, Vec<BoxAddr>>,
    cols: BTreeMap<u32, Vec<BoxAddr>>,
    box_number: BTreeMap<BoxAddr, usize>,
    row_number: BTreeMap<BoxAddr, usize>,
}

impl Region {
    pub fn new(labels: &LabelSets) -> Result<Region> {
        if !labels.is_anchored() {
            return Err(Error::Unanchored);
        }
        let mut cols = BTreeMap::new();
        let mut members = Vec::new();
        for j in labels.columns() {
            let col: Vec<BoxAddr> = labels
                .column_boxes(j)
                .into_iter()
                .filter(|b| labels.row_class_unchecked(b.row.unsigned_abs()) != RowClass::Redundant)
                .skip(1)
                .collect();
            members.extend(col.iter().copied());
            cols.insert(j, col);
        }
        let mut rows: BTreeMap<i32, Vec<BoxAddr>> = BTreeMap::new();
        for b in members {
            rows.entry(b.row).or_default().push(b);
        }
        let mut row_number = BTreeMap::new();
        for boxes in rows.values_mut() {
            boxes.sort_by_key(|b| {
                if labels.is_one(b.col) {
                    (0, b.col as i64)
                } else {
                    (1, -(b.col as i64))
                }
            });
            for (k, &b) in boxes.iter().enumerate() {
                row_number.insert(b, k + 1);
            }
        }
        let mut boxes = Vec::new();
        for (_, row) in rows.iter().rev() {
            let mut r = row.clone();
            r.sort_by_key(|b| b.col);
            boxes.extend(r);
        }
        let box_number = boxes.iter().enumerate().map(|(k, &b)| (b, k + 1)).collect();
        Ok(Region { labels: *labels, boxes, rows, cols, box_number, row_number })
    }

    pub fn labels(&self) -> &LabelSets {
        &self.labels
    }

    /// Boxes in box-number order.
    pub fn boxes(&self) -> &[BoxAddr] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: BoxAddr) -> bool {
        self.box_number.contains_key(&b)
    }

    /// Box-number of `b`, starting at 1.
    pub fn box_number(&self, b: BoxAddr) -> Option<usize> {
        self.box_number.get(&b).copied()
    }

    /// Row-number of `b` within its row, starting at 1.
    pub fn row_number(&self, b: BoxAddr) -> Option<usize> {
        self.row_number.get(&b).copied()
    }

    /// Boxes of row `i` in row-number order; empty if the row is absent.
    pub fn row_order(&self, i: i32) -> &[BoxAddr] {
        self.rows.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn row_len(&self, i: i32) -> usize {
        self.row_order(i).len()
    }

    /// Boxes of column `j` top to bottom.
    pub fn column(&self, j: u32) -> &[BoxAddr] {
        self.cols.get(&j).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Row labels present, bottom row first.
    pub fn row_labels(&self) -> Vec<i32> {
        self.rows.keys().rev().copied().collect()
    }

    /// The box excluded from column `j`: topmost among boundary and interior rows.
    pub fn excluded(&self, j: u32) -> Option<BoxAddr> {
        self.labels
            .column_boxes(j)
            .into_iter()
            .find(|b| self.labels.row_class_unchecked(b.row.unsigned_abs()) != RowClass::Redundant)
    }
}
