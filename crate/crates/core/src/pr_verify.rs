//! Checkable forms of the facts behind the involution: the box
//! correspondence between a shape and its transposed shape, the order it
//! induces, inversion pairs of a run, and the reordered replay that
//! explains why a second application undoes the first.
//!
//! Everything here works on tableaux with 1 as a positive label; the
//! other half is reached through `iota`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diagram::{BoxAddr, LabelSets, PartialFilling, Region};
use crate::error::{Error, Result};
use crate::involution::{apply_rule, classify, phi_bullet, pr_labels, pr_pairs, pre_filling, run_plus, transform, BoxType, Rule, Run, TraceStep};
use crate::tableau::PermutationTableau;

/// The box correspondence from the working region of a shape to that of
/// its pre-tableau shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrMap {
    source: LabelSets,
    target: LabelSets,
    forward: BTreeMap<BoxAddr, BoxAddr>,
}

impl PrMap {
    pub fn source(&self) -> &LabelSets {
        &self.source
    }

    pub fn target(&self) -> &LabelSets {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn get(&self, c: BoxAddr) -> Result<BoxAddr> {
        self.forward.get(&c).copied().ok_or(Error::OutsideRegion(c))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (BoxAddr, BoxAddr)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }

    /// `other` after `self`, when `other` starts where `self` ends.
    pub fn then(&self, other: &PrMap) -> Result<PrMap> {
        if other.source != self.target {
            return Err(Error::Labels("maps do not compose".into()));
        }
        let forward = self.pairs().map(|(a, b)| Ok((a, other.get(b)?))).collect::<Result<_>>()?;
        Ok(PrMap { source: self.source, target: other.target, forward })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.pairs().all(|(a, b)| a == b)
    }
}

pub fn pr_map(labels: &LabelSets) -> Result<PrMap> {
    let target = pr_labels(labels)?;
    let forward: BTreeMap<_, _> = pr_pairs(labels)?.into_iter().collect();
    Ok(PrMap { source: *labels, target, forward })
}

/// `c1 <_pr c2`: the image of `c1` comes first in the box-numbering of
/// the pre-tableau region.
pub fn pr_less(labels: &LabelSets, c1: BoxAddr, c2: BoxAddr) -> Result<bool> {
    let map = pr_map(labels)?;
    let target = Region::new(map.target())?;
    less_in(&map, &target, c1, c2)
}

fn less_in(map: &PrMap, target: &Region, c1: BoxAddr, c2: BoxAddr) -> Result<bool> {
    let b = |c| {
        let d = map.get(c)?;
        target.box_number(d).ok_or(Error::OutsideRegion(d))
    };
    Ok(b(c1)? < b(c2)?)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InversionSet {
    /// Ordinal pairs `(i, j)`, `i < j`, starting at 1.
    pub pairs: BTreeSet<(usize, usize)>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    /// Inversions left in an application order.
    pub fn count_in(&self, order: &[usize]) -> usize {
        let mut c = 0;
        for x in 0..order.len() {
            for y in x + 1..order.len() {
                c += self.contains(order[x], order[y]) as usize;
            }
        }
        c
    }
}

fn require_plus(t: &PermutationTableau) -> Result<()> {
    if t.labels().is_pos(1) {
        Ok(())
    } else {
        Err(Error::Domain("expected 1 as a positive label; apply iota first".into()))
    }
}

fn check_trace(run: &Run, steps: &[TraceStep]) -> Result<()> {
    if run.steps.len() != steps.len() || run.steps.iter().zip(steps).any(|(a, b)| a != b) {
        return Err(Error::TraceMismatch);
    }
    Ok(())
}

/// Whether each out-box, carried back to the shape of `t`, is of type 1
/// in the pre-tableau of the image.
fn type_one_flags(t: &PermutationTableau, steps: &[TraceStep], back: &PrMap) -> Result<Vec<bool>> {
    let (image, _) = transform(t)?;
    let image_pre = pre_filling(image.filling())?;
    let region = Region::new(image_pre.labels())?;
    steps
        .iter()
        .map(|s| Ok(classify(&image_pre, &region, back.get(s.out_box)?)? == BoxType::T1))
        .collect()
}

pub fn inversion_pairs(t: &PermutationTableau, steps: &[TraceStep]) -> Result<InversionSet> {
    require_plus(t)?;
    let run = run_plus(t.filling())?;
    check_trace(&run, steps)?;
    let back = pr_map(run.pre.labels())?;
    let target = Region::new(back.target())?;
    let one = type_one_flags(t, steps, &back)?;
    let mut pairs = BTreeSet::new();
    for i in 0..steps.len() {
        for j in i + 1..steps.len() {
            let before = match (one[i], one[j]) {
                (true, false) => true,
                (false, true) => false,
                _ => less_in(&back, &target, steps[i].out_box, steps[j].out_box)?,
            };
            if before {
                pairs.insert((i + 1, j + 1));
            }
        }
    }
    Ok(InversionSet { pairs })
}

/// The final application order with the inversion count after each
/// rearrangement, starting from the natural order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiOrder {
    /// Ordinals in application order.
    pub order: Vec<usize>,
    pub counts: Vec<usize>,
}

pub fn psi_order(inv: &InversionSet, k: usize) -> Result<PsiOrder> {
    let mut order: Vec<usize> = (1..=k).collect();
    let mut counts = vec![inv.count_in(&order)];
    let budget = counts[0];
    while let Some((x, y)) = first_inversion(inv, &order) {
        let a = order.remove(y);
        order.insert(x, a);
        let c = inv.count_in(&order);
        if c + (y - x) != *counts.last().unwrap() || counts.len() > budget {
            return Err(Error::Internal(format!("rearrangement at {x},{y} did not remove {} inversions", y - x)));
        }
        counts.push(c);
    }
    Ok(PsiOrder { order, counts })
}

fn first_inversion(inv: &InversionSet, order: &[usize]) -> Option<(usize, usize)> {
    (0..order.len()).find_map(|x| (x + 1..order.len()).find(|&y| inv.contains(order[x], order[y])).map(|y| (x, y)))
}

/// Applies the trace's rules in `order`, checking every step moves the S
/// its original step moved, and that the end result is the image.
pub fn replay(t: &PermutationTableau, steps: &[TraceStep], order: &[usize]) -> Result<PartialFilling> {
    require_plus(t)?;
    let run = run_plus(t.filling())?;
    check_trace(&run, steps)?;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=steps.len()).collect::<Vec<_>>() {
        return Err(Error::Domain(format!("{order:?} does not order {} steps", steps.len())));
    }
    let mut f = run.after_circ.clone();
    for &o in order {
        let want = &steps[o - 1];
        let (g, got) = apply_rule(&f, &run.region, want.in_box)?;
        if got.out_box != want.out_box || got.rule != want.rule {
            return Err(Error::Internal(format!("step {o} replayed as {got}, expected {want}")));
        }
        f = g;
    }
    let out = phi_bullet(&f)?;
    if out != run.result {
        return Err(Error::Internal("replay ended away from the image".into()));
    }
    Ok(out)
}

/// Outcome of running the involution twice.
#[derive(Clone, Debug)]
pub struct InverseReport {
    pub first: Vec<TraceStep>,
    pub second: Vec<TraceStep>,
    pub order: PsiOrder,
    pub returns: bool,
    pub in_boxes_match: bool,
    pub out_boxes_match: bool,
    pub rules_pair: bool,
}

impl InverseReport {
    pub fn passed(&self) -> bool {
        self.returns && self.in_boxes_match && self.out_boxes_match && self.rules_pair
    }
}

impl fmt::Display for InverseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "returns={} in_boxes={} out_boxes={} rules={} order={:?}",
            self.returns, self.in_boxes_match, self.out_boxes_match, self.rules_pair, self.order.order
        )?;
        writeln!(f, "first run:")?;
        for s in &self.first {
            writeln!(f, "  {s}")?;
        }
        writeln!(f, "second run:")?;
        for s in &self.second {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

pub fn inverse_trace_check(t: &PermutationTableau) -> Result<InverseReport> {
    require_plus(t)?;
    let run = run_plus(t.filling())?;
    let first = run.steps.clone();
    let inv = inversion_pairs(t, &first)?;
    let order = psi_order(&inv, first.len())?;
    replay(t, &first, &order.order)?;
    let back = pr_map(run.pre.labels())?;
    let (image, _) = transform(t)?;
    let (again, second) = transform(&image)?;
    let second = second.steps;
    let matched: Vec<&TraceStep> = order.order.iter().rev().map(|&o| &first[o - 1]).collect();
    let same_len = second.len() == matched.len();
    let all = |p: &dyn Fn(&TraceStep, &TraceStep) -> Result<bool>| -> Result<bool> {
        if !same_len {
            return Ok(false);
        }
        for (s, m) in second.iter().zip(&matched) {
            if !p(s, m)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let in_boxes_match = all(&|s, m| Ok(s.in_box == back.get(m.out_box)?))?;
    let out_boxes_match = all(&|s, m| Ok(s.out_box == back.get(m.in_box)?))?;
    let rules_pair = all(&|s, m| Ok(s.rule == m.rule.partner()))?;
    Ok(InverseReport { first, second, order, returns: &again == t, in_boxes_match, out_boxes_match, rules_pair })
}

/// Failures of the same-row and same-column facts about `<_pr` on one
/// shape, as readable lines. For a pair that is not relevant only the
/// order is checked: row-numbers of the images grow down a column either
/// way (see `column_row_numbers_increase`).
pub fn prnumbering_violations(labels: &LabelSets) -> Result<Vec<String>> {
    let map = pr_map(labels)?;
    let region = Region::new(labels)?;
    let target = Region::new(map.target())?;
    let mut bad = Vec::new();
    let boxes = region.boxes();
    for &c1 in boxes {
        for &c2 in boxes {
            if c1.row == c2.row && c1.col < c2.col {
                let less = less_in(&map, &target, c1, c2)?;
                if labels.is_one(c1.col) {
                    let (p1, p2) = (map.get(c1)?, map.get(c2)?);
                    if less || p1.col != p2.col || !crate::involution::relevant(&target, p1, p2)? {
                        bad.push(format!("(1) fails for {c1} {c2}"));
                    }
                } else if !less {
                    bad.push(format!("(2) fails for {c1} {c2}"));
                }
            }
            if c1.col == c2.col && c1.row < c2.row {
                let less = less_in(&map, &target, c1, c2)?;
                let (p3, p4) = (map.get(c1)?, map.get(c2)?);
                let rn = |p| target.row_number(p).ok_or(Error::OutsideRegion(p));
                let row_less = p3.row == p4.row && rn(p3)? < rn(p4)?;
                if crate::involution::relevant(&region, c1, c2)? {
                    if !less {
                        bad.push(format!("(3) order fails for {c1} {c2}"));
                    }
                    if !row_less {
                        bad.push(format!("(3) row-number fails for {c1} {c2}"));
                    }
                } else if less {
                    bad.push(format!("(4) order fails for {c1} {c2}"));
                }
            }
        }
    }
    Ok(bad)
}

/// Whether, down every column of the region, the images keep increasing
/// row-numbers.
pub fn column_row_numbers_increase(labels: &LabelSets) -> Result<bool> {
    let map = pr_map(labels)?;
    let region = Region::new(labels)?;
    let target = Region::new(map.target())?;
    for j in labels.columns() {
        let rn = region
            .column(j)
            .iter()
            .map(|&c| {
                let d = map.get(c)?;
                target.row_number(d).ok_or(Error::OutsideRegion(d))
            })
            .collect::<Result<Vec<_>>>()?;
        if rn.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-step order facts of a run: out before in, and out before
/// `left(in)` before in whenever the rule consults `left(in)` and it is a
/// different box from out.
pub fn step_order_violations(t: &PermutationTableau) -> Result<Vec<String>> {
    require_plus(t)?;
    let run = run_plus(t.filling())?;
    let map = pr_map(run.pre.labels())?;
    let target = Region::new(map.target())?;
    let mut bad = Vec::new();
    for (s, left) in run.steps.iter().zip(&run.left_before) {
        if !less_in(&map, &target, s.out_box, s.in_box)? {
            bad.push(format!("out not before in at {s}"));
        }
        if let (Some(l), Rule::R3 | Rule::R4 | Rule::R5) = (*left, s.rule) {
            if l != s.out_box && !(less_in(&map, &target, s.out_box, l)? && less_in(&map, &target, l, s.in_box)?) {
                bad.push(format!("left {l} out of place at {s}"));
            }
        }
    }
    Ok(bad)
}
