mod common;

use permtab::diagram::{Entry, LabelSets, Region};
use permtab::involution::{pr_labels, pre_filling, run_plus, transform, transform_a, Rule};
use permtab::pr_verify::{inverse_trace_check, inversion_pairs, pr_map, pr_less, psi_order, replay};
use permtab::tableau::{from_json, to_json, Family};

use common::{b, cells_of, entry, fig3_c, fig3_pre, fixture_path, load};

#[test]
fn figure_one_tableaux_are_valid() {
    let t = load("fig1_b.json", Family::B);
    assert_eq!(t.labels().pos(), vec![1, 3, 4, 8]);
    assert_eq!(t.filling().get(b(3, 7)), Entry::S);
    assert_eq!(t.filling().get(b(-7, 7)), Entry::One);
    let s = t.stats();
    assert_eq!((s.so, s.diag, s.row_pos), (8, 3, 4));

    let a = load("fig1_a.json", Family::A);
    let s = a.stats();
    assert_eq!((s.so, s.row_pos, s.zero().unwrap(), s.two().unwrap()), (4, 4, 2, 6));
    assert!(from_json(&std::fs::read_to_string(fixture_path("fig1_b.json")).unwrap(), Family::A).is_err());
}

#[test]
fn figure_seven_statistics() {
    let t = load("fig7_a.json", Family::A);
    let s = t.stats();
    assert_eq!((s.so, s.zero().unwrap(), s.two().unwrap(), s.row_pos), (7, 3, 5, 4));
}

#[test]
fn figure_three_shapes() {
    let t = load("fig3_t.json", Family::B);
    let l = *t.labels();
    assert_eq!((l.diag_one(), l.diag_zero(), l.pos()), (vec![4, 7], vec![6, 8], vec![1, 2, 3, 5]));
    let lp = pr_labels(&l).unwrap();
    assert_eq!((lp.diag_one(), lp.diag_zero(), lp.pos()), (vec![1, 3, 6], vec![5, 7, 8], vec![2, 4]));
    let s = t.stats();
    assert_eq!((s.so, s.diag, s.row_pos), (8, 2, 4));

    let m = pr_map(&l).unwrap();
    let region = Region::new(&l).unwrap();
    let rows_of = |j| region.column(j).iter().map(|&c| m.get(c).unwrap().row).collect::<Vec<_>>();
    assert!(rows_of(4).iter().all(|&r| r == -3));
    assert!(rows_of(7).iter().all(|&r| r == -1));
}

#[test]
fn figure_three_pre_tableau() {
    let t = load("fig3_t.json", Family::B);
    let pre = pre_filling(t.filling()).unwrap();
    for (col, cells) in fig3_pre() {
        for (row, e) in cells {
            assert_eq!(pre.get(b(row, col)), entry(e), "at {}", b(row, col));
        }
    }
    let region = Region::new(pre.labels()).unwrap();
    let numbered: Vec<_> = (1..=17).map(fig3_c).collect();
    assert_eq!(region.boxes(), numbered.as_slice());
}

#[test]
fn figure_three_run() {
    let t = load("fig3_t.json", Family::B);
    let run = run_plus(t.filling()).unwrap();
    let flipped: Vec<_> = cells_of(&run.pre)
        .into_iter()
        .zip(cells_of(&run.after_circ))
        .filter(|(x, y)| x != y)
        .map(|(x, _)| b(x.0, x.1))
        .collect();
    assert_eq!(flipped, vec![fig3_c(2)]);

    let want = [
        (Rule::R1, 6, 11),
        (Rule::R4, 2, 4),
        (Rule::R5, 5, 6),
        (Rule::R3, 10, 15),
        (Rule::R2, 13, 16),
        (Rule::R5, 15, 17),
    ];
    let got: Vec<_> = run.steps.iter().map(|s| (s.rule, s.in_box, s.out_box)).collect();
    let want: Vec<_> = want.iter().map(|&(r, i, o)| (r, fig3_c(i), fig3_c(o))).collect();
    assert_eq!(got, want);

    // The one column without a 1 after step three takes it at (-3,7).
    assert_eq!(run.before_bullet.get(b(-3, 7)), Entry::Zero);
    assert_eq!(run.result.get(b(-3, 7)), Entry::One);
    assert_eq!(run.result.get(b(-6, 7)), Entry::Zero);

    let (u, trace) = transform(&t).unwrap();
    assert_eq!(u, load("fig3_image.json", Family::B));
    assert_eq!(
        trace.to_text().lines().next().unwrap(),
        "step=1 rule=R1 in=(2,5) out=(-1,5)"
    );
    let s = u.stats();
    assert_eq!((s.so, s.diag, s.row_pos), (8, 3, 2));
    assert_eq!(transform(&u).unwrap().0, t);
}

#[test]
fn figure_three_inversions() {
    let t = load("fig3_t.json", Family::B);
    let (_, trace) = transform(&t).unwrap();
    let inv = inversion_pairs(&t, &trace.steps).unwrap();
    let want: std::collections::BTreeSet<_> = [(3, 6), (1, 5), (3, 5), (1, 4), (2, 4), (3, 4), (1, 2)].into_iter().collect();
    assert_eq!(inv.pairs, want);

    let psi = psi_order(&inv, trace.len()).unwrap();
    assert_eq!(psi.order, vec![4, 2, 5, 1, 6, 3]);
    assert_eq!(psi.counts, vec![7, 6, 3, 1, 0]);

    let image = load("fig3_image.json", Family::B);
    assert_eq!(&replay(&t, &trace.steps, &psi.order).unwrap(), image.filling());
    assert_eq!(&replay(&t, &trace.steps, &[1, 2, 3, 4, 5, 6]).unwrap(), image.filling());
    assert!(replay(&t, &trace.steps, &[1, 2, 3]).is_err());

    let pre = pre_filling(t.filling()).unwrap();
    for s in &trace.steps {
        assert!(pr_less(pre.labels(), s.out_box, s.in_box).unwrap(), "{s}");
    }
}

#[test]
fn figure_three_second_run() {
    let t = load("fig3_t.json", Family::B);
    let r = inverse_trace_check(&t).unwrap();
    assert!(r.passed(), "{r}");
    let ins: Vec<_> = r.second.iter().map(|s| s.in_box).collect();
    assert_eq!(ins, vec![b(5, 8), b(2, 4), b(5, 7), b(3, 4), b(2, 6), b(1, 4)]);
    let rules: Vec<_> = r.second.iter().map(|s| s.rule).collect();
    assert_eq!(rules, vec![Rule::R1, Rule::R1, Rule::R5, Rule::R4, Rule::R2, Rule::R3]);
}

#[test]
fn figure_eight_type_a() {
    let t = load("fig8_t.json", Family::A);
    let (u, _) = transform_a(&t).unwrap();
    let want = load("fig8_image.json", Family::A);
    assert_eq!(u, want, "\n{}", u.filling().render());
    let (s, s2) = (t.stats(), u.stats());
    assert_eq!((s.so, s.zero, s.two), (s2.so, s2.zero, s2.two));
    assert_eq!(s.row_pos + s2.row_pos, 9);
    assert_eq!(transform_a(&u).unwrap().0, t);
}

#[test]
fn fixtures_round_trip_through_json() {
    for (name, fam) in [("fig1_b.json", Family::B), ("fig3_t.json", Family::B), ("fig8_t.json", Family::A)] {
        let t = load(name, fam);
        assert_eq!(from_json(&to_json(&t, true), fam).unwrap(), t);
        assert_eq!(from_json(&to_json(&t, false), fam).unwrap(), t);
    }
}

#[test]
fn example_shapes_for_the_pr_map() {
    // Columns 4 and 7 of the example shape feed rows -3 and -1.
    let l = LabelSets::new(8, &[4, 7], &[6, 8]).unwrap();
    let m = pr_map(&l).unwrap();
    assert_eq!(m.get(b(1, 4)).unwrap().row, -3);
    assert_eq!(m.get(b(1, 7)).unwrap().row, -1);
    assert_eq!(m.len(), Region::new(&l).unwrap().len());
}
