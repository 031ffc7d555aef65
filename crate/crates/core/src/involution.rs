//! The involution on type B permutation tableaux and its type A and D
//! restrictions.
//!
//! A tableau with 1 as a positive label is first turned into a pre-tableau
//! whose working region is the transpose of its own. The S marks are then
//! moved around that region by five local rules until the filling is again
//! a tableau. Tableaux with 1 as a boundary column go through the row
//! toggle `iota` first and last.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::diagram::{BoxAddr, Entry, LabelSets, PartialFilling, Region};
use crate::error::{Error, Result};
use crate::tableau::{validate, Family, PermutationTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoxType {
    T0,
    T1,
    T2,
    T3,
    T4,
    T5,
    Untyped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl Rule {
    /// The rule that undoes this one on the second application.
    pub fn partner(self) -> Rule {
        match self {
            Rule::R1 => Rule::R5,
            Rule::R2 => Rule::R4,
            Rule::R3 => Rule::R3,
            Rule::R4 => Rule::R2,
            Rule::R5 => Rule::R1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub ordinal: usize,
    pub rule: Rule,
    pub in_box: BoxAddr,
    pub out_box: BoxAddr,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step={} rule={} in={} out={}", self.ordinal, self.rule, self.in_box, self.out_box)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}

static UNTYPED_ONE_ABOVE: AtomicU64 = AtomicU64::new(0);

/// How often a zero in a boundary column was left untyped because a 1,
/// and no S, sits above its `S_c`. Never observed on tableau runs.
pub fn untyped_one_above_count() -> u64 {
    UNTYPED_ONE_ABOVE.load(Ordering::Relaxed)
}

fn pr_labels_plus(l: &LabelSets) -> LabelSets {
    let n = l.n();
    let mirror = |mask: u64| (2..=n).filter(|&i| mask & (1 << (n + 2 - i)) != 0).fold(0u64, |m, i| m | 1 << i);
    let one = 2 | mirror(l.diag_one_mask());
    let zero = mirror(l.pos_mask() & !2);
    LabelSets::from_masks(n, one, zero)
}

/// Label sets of the pre-tableau.
pub fn pr_labels(l: &LabelSets) -> Result<LabelSets> {
    if l.is_pos(1) {
        Ok(pr_labels_plus(l))
    } else if l.is_one(1) {
        pr_labels_plus(&l.iota()?).iota()
    } else {
        Err(Error::Unanchored)
    }
}

fn flip_unit_row(b: BoxAddr) -> BoxAddr {
    if b.row.abs() == 1 {
        BoxAddr::new(-b.row, b.col)
    } else {
        b
    }
}

fn pr_pairs_plus(l: &LabelSets) -> Result<Vec<(BoxAddr, BoxAddr)>> {
    let n = l.n() as i32;
    let reg = Region::new(l)?;
    let target = Region::new(&pr_labels_plus(l))?;
    let mut pairs = Vec::with_capacity(reg.len());
    let mut copy = |col: &[BoxAddr], row: &[BoxAddr]| -> Result<()> {
        if col.len() != row.len() {
            return Err(Error::Internal(format!("column of {} boxes cannot fill a row of {}", col.len(), row.len())));
        }
        pairs.extend(col.iter().copied().zip(row.iter().copied()));
        Ok(())
    };
    let ones = l.diag_one();
    for (k, &d) in ones.iter().enumerate() {
        let next = ones.get(k + 1).map(|&x| x as i32).unwrap_or(n + 1);
        copy(reg.column(d), target.row_order(-(n + 2 - next)))?;
    }
    for i in l.diag_zero() {
        copy(reg.column(i), target.row_order(n + 2 - i as i32))?;
    }
    Ok(pairs)
}

/// Pairs `(c, pr(c))` from the working region of `l` to that of the
/// pre-tableau, purely from the shape.
pub fn pr_pairs(l: &LabelSets) -> Result<Vec<(BoxAddr, BoxAddr)>> {
    if l.is_pos(1) {
        pr_pairs_plus(l)
    } else if l.is_one(1) {
        Ok(pr_pairs_plus(&l.iota()?)?
            .into_iter()
            .map(|(a, b)| (flip_unit_row(a), flip_unit_row(b)))
            .collect())
    } else {
        Err(Error::Unanchored)
    }
}

fn pre_filling_plus(f: &PartialFilling) -> Result<PartialFilling> {
    let lp = pr_labels_plus(f.labels());
    let mut g = PartialFilling::empty(lp);
    for j in lp.diag_one() {
        g.set(BoxAddr::new(-(j as i32), j), Entry::One);
    }
    for j in lp.diag_zero() {
        for b in lp.row_boxes(-(j as i32)) {
            g.set(b, Entry::Zero);
        }
    }
    let target = Region::new(&lp)?;
    for j in lp.diag_zero() {
        let b = target.excluded(j).expect("every column meets row 1 or -1");
        g.set(b, Entry::Star);
    }
    for (c, d) in pr_pairs_plus(f.labels())? {
        g.set(d, f.get(c));
    }
    if let Some(b) = lp.boxes().into_iter().find(|&b| g.get(b) == Entry::Empty) {
        return Err(Error::Internal(format!("pre-tableau box {b} left empty")));
    }
    Ok(g)
}

/// The pre-tableau of a partial filling: its region entries are copied,
/// column by column, into rows of the transposed shape.
pub fn pre_filling(f: &PartialFilling) -> Result<PartialFilling> {
    let l = f.labels();
    if l.is_pos(1) {
        pre_filling_plus(f)
    } else if l.is_one(1) {
        pre_filling_plus(&f.iota()?)?.iota()
    } else {
        Err(Error::Unanchored)
    }
}

fn require_region(reg: &Region, c: BoxAddr) -> Result<()> {
    if reg.contains(c) {
        Ok(())
    } else {
        Err(Error::OutsideRegion(c))
    }
}

/// Among the region boxes physically left of `c` in its row, taken in
/// row-number order, the first nonzero one if it holds an S.
pub fn left_scan(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Result<Option<BoxAddr>> {
    require_region(reg, c)?;
    if !reg.labels().is_one(c.col) {
        return Err(Error::InvalidColumn(c.col));
    }
    Ok(left_of(f, reg, c))
}

fn left_of(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Option<BoxAddr> {
    reg.row_order(c.row)
        .iter()
        .filter(|b| b.col > c.col)
        .find(|&&b| f.get(b).is_nonzero())
        .filter(|&&b| f.get(b) == Entry::S)
        .copied()
}

/// Whether `c1`, above `c2` in the same column, sits in a boundary row
/// no longer than the row of `c2`.
pub fn relevant(reg: &Region, c1: BoxAddr, c2: BoxAddr) -> Result<bool> {
    if c1.col != c2.col {
        return Err(Error::NotSameColumn(c1, c2));
    }
    require_region(reg, c1)?;
    require_region(reg, c2)?;
    Ok(c1.row < c2.row && reg.labels().is_boundary_row(c1.row) && reg.row_len(c1.row) <= reg.row_len(c2.row))
}

fn downmost_nonzero_above(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Option<BoxAddr> {
    reg.column(c.col).iter().rev().filter(|b| b.row < c.row).find(|&&b| f.get(b).is_nonzero()).copied()
}

/// The relevant S of `c`, when `c` is constrained.
pub fn rel(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Option<BoxAddr> {
    let d = downmost_nonzero_above(f, reg, c)?;
    (f.get(d) == Entry::S && relevant(reg, d, c).unwrap_or(false)).then_some(d)
}

/// Type of a region box. A 1 is typed only when some nonzero entry sits
/// above it in its column, so the topmost 1 of an interior column stays.
pub fn classify(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Result<BoxType> {
    require_region(reg, c)?;
    let l = reg.labels();
    Ok(match f.get(c) {
        Entry::One if !f.nonzero_above(c) => BoxType::Untyped,
        Entry::One => {
            if rel(f, reg, c).is_some() {
                BoxType::T1
            } else {
                BoxType::T0
            }
        }
        Entry::Zero if l.is_zero(c.col) => {
            if rel(f, reg, c).is_some() && f.nonzero_left(c) {
                BoxType::T2
            } else {
                BoxType::Untyped
            }
        }
        Entry::Zero => {
            let Some(s) = left_of(f, reg, c) else {
                return Ok(BoxType::Untyped);
            };
            let above = reg.column(s.col).iter().filter(|b| b.row < s.row);
            if above.clone().any(|&b| f.get(b) == Entry::S) {
                if rel(f, reg, s).is_some() {
                    BoxType::T3
                } else {
                    BoxType::T4
                }
            } else if above.clone().all(|&b| !f.get(b).is_nonzero()) {
                if l.is_zero(s.col) {
                    BoxType::T5
                } else {
                    BoxType::Untyped
                }
            } else {
                UNTYPED_ONE_ABOVE.fetch_add(1, Ordering::Relaxed);
                BoxType::Untyped
            }
        }
        _ => BoxType::Untyped,
    })
}

/// Applies the rule matching the type of `c` in place, returning the rule
/// and the box that gave up its S.
fn apply_in_place(f: &mut PartialFilling, reg: &Region, c: BoxAddr, ty: BoxType) -> Result<(Rule, BoxAddr)> {
    let (rule, out, out_entry) = match ty {
        BoxType::T1 => (Rule::R1, rel(f, reg, c), Entry::Zero),
        BoxType::T2 => (Rule::R2, rel(f, reg, c), Entry::Zero),
        BoxType::T3 => (Rule::R3, left_of(f, reg, c).and_then(|s| rel(f, reg, s)), Entry::Zero),
        BoxType::T4 => (Rule::R4, left_of(f, reg, c), Entry::Zero),
        BoxType::T5 => (Rule::R5, left_of(f, reg, c), Entry::One),
        BoxType::T0 | BoxType::Untyped => return Err(Error::NoRule(c)),
    };
    let out = out.ok_or_else(|| Error::Internal(format!("typed box {c} lost its partner")))?;
    debug_assert_eq!(f.get(out), Entry::S);
    f.set(c, Entry::S);
    f.set(out, out_entry);
    Ok((rule, out))
}

/// One rule application at `c`; the step is numbered 1.
pub fn apply_rule(f: &PartialFilling, reg: &Region, c: BoxAddr) -> Result<(PartialFilling, TraceStep)> {
    let ty = classify(f, reg, c)?;
    let mut g = f.clone();
    let (rule, out_box) = apply_in_place(&mut g, reg, c, ty)?;
    Ok((g, TraceStep { ordinal: 1, rule, in_box: c, out_box }))
}

fn check_stars(f: &PartialFilling) -> Result<()> {
    for j in f.labels().columns() {
        let stars = f.labels().column_boxes(j).into_iter().filter(|&b| f.get(b) == Entry::Star).count();
        if stars > 1 {
            return Err(Error::TooManyStars(j));
        }
    }
    Ok(())
}

/// Every 1 of type 0, judged on the input, becomes 0.
pub fn phi_circ(f: &PartialFilling, reg: &Region) -> Result<PartialFilling> {
    check_stars(f)?;
    let mut g = f.clone();
    for &c in reg.boxes() {
        if f.get(c) == Entry::One && classify(f, reg, c)? == BoxType::T0 {
            g.set(c, Entry::Zero);
        }
    }
    Ok(g)
}

/// Gives every interior column without a 1 its 1, then clears the stars.
///
/// The new 1 goes to the downmost 0 that has a 1 or S to its left in the
/// row, or else to the column's star. All choices are made on the input.
pub fn phi_bullet(f: &PartialFilling) -> Result<PartialFilling> {
    check_stars(f)?;
    let l = f.labels();
    let mut g = f.clone();
    for j in l.diag_zero() {
        let col = l.column_boxes(j);
        if col.iter().any(|&b| f.get(b) == Entry::One) {
            continue;
        }
        let target = col
            .iter()
            .rev()
            .find(|&&b| f.get(b) == Entry::Zero && f.nonzero_left(b))
            .or_else(|| col.iter().find(|&&b| f.get(b) == Entry::Star))
            .ok_or(Error::NoCompletion(j))?;
        g.set(*target, Entry::One);
    }
    for (b, e) in f.cells() {
        if e == Entry::Star && g.get(b) == Entry::Star {
            g.set(b, Entry::Zero);
        }
    }
    Ok(g)
}

/// Every intermediate of one run on a tableau with 1 positive, in the
/// coordinates of its pre-tableau.
#[derive(Clone, Debug)]
pub struct Run {
    pub pre: PartialFilling,
    pub region: Region,
    pub after_circ: PartialFilling,
    pub steps: Vec<TraceStep>,
    /// `left(in)` as seen just before each step, for boundary-column in-boxes.
    pub left_before: Vec<Option<BoxAddr>>,
    pub before_bullet: PartialFilling,
    pub result: PartialFilling,
}

/// Runs the four steps on a filling whose label 1 is positive.
pub fn run_plus(t: &PartialFilling) -> Result<Run> {
    if !t.labels().is_pos(1) {
        return Err(Error::Domain("the run needs 1 as a positive label".into()));
    }
    let pre = pre_filling(t)?;
    let region = Region::new(pre.labels())?;
    let after_circ = phi_circ(&pre, &region)?;
    let so = after_circ.count(Entry::S);
    let mut f = after_circ.clone();
    let mut steps = Vec::new();
    let mut left_before = Vec::new();
    let mut visit = |f: &mut PartialFilling, c: BoxAddr, ty: BoxType| -> Result<()> {
        let left = if region.labels().is_one(c.col) { left_of(f, &region, c) } else { None };
        let (rule, out_box) = apply_in_place(f, &region, c, ty)?;
        steps.push(TraceStep { ordinal: steps.len() + 1, rule, in_box: c, out_box });
        left_before.push(left);
        if f.count(Entry::S) != so {
            return Err(Error::Internal(format!("S count changed at step {}", steps.len())));
        }
        Ok(())
    };
    for &c in region.boxes() {
        if classify(&f, &region, c)? == BoxType::T1 {
            visit(&mut f, c, BoxType::T1)?;
        }
    }
    for &c in region.boxes() {
        let ty = classify(&f, &region, c)?;
        if matches!(ty, BoxType::T2 | BoxType::T3 | BoxType::T4 | BoxType::T5) {
            visit(&mut f, c, ty)?;
        }
    }
    let before_bullet = f.clone();
    let result = phi_bullet(&f)?;
    Ok(Run { pre, region, after_circ, steps, left_before, before_bullet, result })
}

fn finish(f: PartialFilling, family: Family) -> Result<PermutationTableau> {
    validate(f.clone(), family)
        .map_err(|v| Error::Internal(format!("output is not a type {family:?} tableau ({v}):\n{f:?}")))
}

/// The involution on type B tableaux, with the trace of rule applications
/// in the coordinates of the pre-tableau of `t`.
pub fn transform(t: &PermutationTableau) -> Result<(PermutationTableau, Trace)> {
    if t.labels().is_pos(1) {
        let run = run_plus(t.filling())?;
        Ok((finish(run.result, Family::B)?, Trace { steps: run.steps }))
    } else {
        let run = run_plus(t.iota().filling())?;
        let out = finish(run.result.iota()?, Family::B)?;
        let steps = run
            .steps
            .into_iter()
            .map(|s| TraceStep { in_box: flip_unit_row(s.in_box), out_box: flip_unit_row(s.out_box), ..s })
            .collect();
        Ok((out, Trace { steps }))
    }
}

pub fn iota(t: &PermutationTableau) -> PermutationTableau {
    t.iota()
}

fn transform_within(t: &PermutationTableau, family: Family) -> Result<(PermutationTableau, Trace)> {
    if !family.admits(t.labels()) {
        return Err(Error::Violation(crate::tableau::Violation::Family(family)));
    }
    let (out, trace) = transform(t)?;
    Ok((finish(out.iota().into_filling(), family)?, trace))
}

/// `iota` after the involution, on type A tableaux.
pub fn transform_a(t: &PermutationTableau) -> Result<(PermutationTableau, Trace)> {
    transform_within(t, Family::A)
}

/// `iota` after the involution, on type D tableaux.
pub fn transform_d(t: &PermutationTableau) -> Result<(PermutationTableau, Trace)> {
    transform_within(t, Family::D)
}

/// Dispatches on the requested family.
pub fn transform_family(t: &PermutationTableau, family: Family) -> Result<(PermutationTableau, Trace)> {
    match family {
        Family::A => transform_a(t),
        Family::B => transform(t),
        Family::D => transform_d(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::enumerate;

    #[test]
    fn one_box_and_empty_shape_swap() {
        let l = LabelSets::new(1, &[], &[]).unwrap();
        let empty = validate(PartialFilling::zeroed(l), Family::B).unwrap();
        let (out, trace) = transform(&empty).unwrap();
        assert!(trace.is_empty());
        assert!(out.labels().is_one(1));
        assert_eq!(transform(&out).unwrap().0, empty);
    }

    #[test]
    fn empty_shape_of_length_two() {
        let l = LabelSets::new(2, &[], &[]).unwrap();
        let empty = validate(PartialFilling::zeroed(l), Family::B).unwrap();
        let pre = pre_filling(empty.filling()).unwrap();
        assert_eq!(pre.labels().diag_one(), vec![1]);
        assert_eq!(pre.labels().diag_zero(), vec![2]);
        assert_eq!(pre.get(BoxAddr::new(-1, 2)), Entry::Star);
        let (out, trace) = transform(&empty).unwrap();
        assert!(trace.is_empty());
        assert_eq!(out.filling().get(BoxAddr::new(-1, 2)), Entry::One);
        assert_eq!(out.filling().get(BoxAddr::new(-2, 2)), Entry::Zero);
        let (s, s2) = (empty.stats(), out.stats());
        assert_eq!(s.weight_index() + s2.weight_index(), 5);
    }

    #[test]
    fn involutive_small() {
        for n in 1..=4 {
            for t in enumerate(n, Family::B) {
                let (u, _) = transform(&t).unwrap();
                assert_eq!(transform(&u).unwrap().0, t, "not involutive on {t:?}");
            }
        }
    }

    #[test]
    fn rule_partners() {
        for r in [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5] {
            assert_eq!(r.partner().partner(), r);
        }
    }
}
