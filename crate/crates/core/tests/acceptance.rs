//! One line per acceptance criterion. Set `PERMTAB_LONG=1` to add the
//! n = 8 run of the type D equidistribution check.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use permtab::diagram::LabelSets;
use permtab::involution::{pre_filling, transform, transform_a, Rule};
use permtab::polynomials::{self, conjecture_check, type_a_tuples, type_b_tuples, PolyId, Source};
use permtab::pr_verify::{
    inverse_trace_check, inversion_pairs, pr_map, prnumbering_violations, psi_order, replay, step_order_violations,
};
use permtab::tableau::{count, enumerate, Family};
use rayon::prelude::*;

use common::{b, fig3_c, fig3_pre, load};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn counting() -> Verdict {
    for n in 1..=6u32 {
        let f = factorial(n as u64);
        for (fam, want) in [(Family::B, f << n), (Family::A, f), (Family::D, f << (n - 1))] {
            let got = count(n, fam);
            ensure(got == want, || format!("type {fam} n={n}: {got} tableaux, expected {want}"))?;
        }
    }
    Ok("types A, B, D for n = 1..6".into())
}

fn involution() -> Verdict {
    let mut total = 0;
    for n in 1..=6 {
        let ts = enumerate(n, Family::B);
        total += ts.len();
        ts.par_iter().try_for_each(|t| {
            let (u, _) = transform(t).map_err(|e| format!("{t:?}: {e}"))?;
            let (v, _) = transform(&u).map_err(|e| format!("{u:?}: {e}"))?;
            ensure(&v == t, || format!("not an involution on\n{t:?}"))
        })?;
    }
    Ok(format!("{total} tableaux, n = 1..6"))
}

fn statistics() -> Verdict {
    for n in 1..=6 {
        enumerate(n, Family::B).par_iter().try_for_each(|t| {
            let (u, _) = transform(t).map_err(|e| e.to_string())?;
            let (s, s2) = (t.stats(), u.stats());
            let chi = |x: bool| x as u32;
            ensure(s.diag + chi(t.labels().is_pos(1)) == s2.diag + chi(u.labels().is_pos(1)), || format!("diag moved on {t:?}"))?;
            ensure(s.so == s2.so, || format!("so moved on {t:?}"))?;
            ensure(s.weight_index() + s2.weight_index() == 2 * n + 1, || format!("2row+diag off on {t:?}"))
        })?;
    }
    Ok("all type B tableaux, n = 1..6".into())
}

fn bstar() -> Verdict {
    for n in 1..=5 {
        let tabs = polynomials::bstar(n, Source::Tableaux);
        let perms = polynomials::bstar(n, Source::Perms);
        for (src, fam) in [("tableaux", &tabs), ("perms", &perms)] {
            let r = fam.check_symmetry();
            ensure(r.pass, || format!("n={n} from {src}:\n{r}"))?;
        }
        ensure(tabs == perms, || format!("n={n}: the two sources differ"))?;
    }
    Ok("symmetric from both sources and equal, n = 1..5".into())
}

fn type_a() -> Verdict {
    for n in 1..=6 {
        enumerate(n, Family::A).par_iter().try_for_each(|t| {
            let (u, _) = transform_a(t).map_err(|e| e.to_string())?;
            let (s, s2) = (t.stats(), u.stats());
            ensure(s.so == s2.so && s.zero == s2.zero && s.two == s2.two, || format!("statistics moved on {t:?}"))?;
            ensure(s.row_pos + s2.row_pos == n + 1, || format!("row + row' != n+1 on {t:?}"))
        })?;
        for id in [PolyId::DHat, PolyId::EHat] {
            let r = polynomials::compute(id, n, Source::Tableaux).check_symmetry();
            ensure(r.pass, || format!("{r}"))?;
        }
    }
    Ok("T_A statistics, D-hat and E-hat symmetry, n = 1..6".into())
}

fn type_b_eulerian() -> Verdict {
    for n in 1..=5 {
        let r = polynomials::e_b(n).check_symmetry();
        ensure(r.pass, || format!("{r}"))?;
    }
    Ok("n = 1..5".into())
}

fn type_d() -> Verdict {
    for n in 1..=5 {
        let tabs = polynomials::e_d(n, Source::Tableaux);
        let perms = polynomials::e_d(n, Source::Perms);
        for f in [&tabs, &perms] {
            let r = f.check_symmetry();
            ensure(r.pass, || format!("{r}"))?;
        }
        ensure(tabs == perms, || format!("n={n}: the two sources differ"))?;
    }
    Ok("symmetric from both sources and equal, n = 1..5".into())
}

fn conjecture() -> Verdict {
    let top = if std::env::var("PERMTAB_LONG").is_ok_and(|v| v == "1") { 8 } else { 6 };
    for n in 1..=top {
        let r = conjecture_check(n);
        ensure(r.pass, || format!("{r}"))?;
    }
    Ok(format!("equidistributed for n = 1..{top}"))
}

fn worked_example() -> Verdict {
    let t = load("fig3_t.json", Family::B);
    let image = load("fig3_image.json", Family::B);
    let pre = pre_filling(t.filling()).map_err(|e| e.to_string())?;
    for (col, cells) in fig3_pre() {
        for (row, e) in cells {
            ensure(pre.get(b(row, col)).symbol() == e, || format!("pre-tableau differs at {}", b(row, col)))?;
        }
    }
    let (u, trace) = transform(&t).map_err(|e| e.to_string())?;
    ensure(u == image, || format!("image differs:\n{}", u.filling().render()))?;
    let want = [(Rule::R1, 6, 11), (Rule::R4, 2, 4), (Rule::R5, 5, 6), (Rule::R3, 10, 15), (Rule::R2, 13, 16), (Rule::R5, 15, 17)];
    let got: Vec<_> = trace.steps.iter().map(|s| (s.rule, s.in_box, s.out_box)).collect();
    let want: Vec<_> = want.iter().map(|&(r, i, o)| (r, fig3_c(i), fig3_c(o))).collect();
    ensure(got == want, || format!("trace differs:\n{}", trace.to_text()))?;
    let inv = inversion_pairs(&t, &trace.steps).map_err(|e| e.to_string())?;
    let want_inv = [(3, 6), (1, 5), (3, 5), (1, 4), (2, 4), (3, 4), (1, 2)];
    ensure(inv.pairs == want_inv.into_iter().collect(), || format!("inversion set {:?}", inv.pairs))?;
    let psi = psi_order(&inv, trace.len()).map_err(|e| e.to_string())?;
    ensure(psi.order == [4, 2, 5, 1, 6, 3], || format!("psi order {:?}", psi.order))?;
    replay(&t, &trace.steps, &psi.order).map_err(|e| e.to_string())?;
    let report = inverse_trace_check(&t).map_err(|e| e.to_string())?;
    let second: Vec<_> = report.second.iter().map(|s| s.in_box).collect();
    let want_second = [b(5, 8), b(2, 4), b(5, 7), b(3, 4), b(2, 6), b(1, 4)];
    ensure(report.passed() && second == want_second, || format!("second run:\n{report}"))?;
    let a = load("fig8_t.json", Family::A);
    let (au, _) = transform_a(&a).map_err(|e| e.to_string())?;
    ensure(au == load("fig8_image.json", Family::A), || format!("type A image differs:\n{}", au.filling().render()))?;
    Ok("pre-tableau, trace, image, inversions, psi order, second run, type A example".into())
}

fn proof_machinery() -> Verdict {
    let mut shapes = 0;
    for n in 1..=6 {
        for l in LabelSets::all_anchored(n) {
            shapes += 1;
            let m = pr_map(&l).map_err(|e| e.to_string())?;
            let back = pr_map(m.target()).map_err(|e| e.to_string())?;
            ensure(m.then(&back).map_err(|e| e.to_string())?.is_identity(), || format!("double pr moves boxes of {l:?}"))?;
            let v = prnumbering_violations(&l).map_err(|e| e.to_string())?;
            ensure(v.is_empty(), || format!("{l:?}: {v:?}"))?;
        }
    }
    let plus: Vec<_> = (1..=5).flat_map(|n| enumerate(n, Family::B)).filter(|t| t.labels().is_pos(1)).collect();
    plus.par_iter().try_for_each(|t| {
        let v = step_order_violations(t).map_err(|e| e.to_string())?;
        ensure(v.is_empty(), || format!("{t:?}: {v:?}"))?;
        let r = inverse_trace_check(t).map_err(|e| format!("{t:?}: {e}"))?;
        ensure(r.passed(), || format!("{t:?}\n{r}"))
    })?;
    Ok(format!("{shapes} shapes up to n = 6, {} tableaux with 1 positive up to n = 5", plus.len()))
}

fn distributions() -> Verdict {
    for n in 1..=5 {
        let (tb, pb) = type_b_tuples(n);
        ensure(tb == pb, || format!("type B tuples differ at n={n}"))?;
        let (ta, pa) = type_a_tuples(n);
        ensure(ta == pa, || format!("type A tuples differ at n={n}"))?;
    }
    Ok("type B and type A tuples, n = 1..5".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting", counting),
        ("involution", involution),
        ("statistics", statistics),
        ("bstar symmetry", bstar),
        ("type A", type_a),
        ("type B eulerian", type_b_eulerian),
        ("type D", type_d),
        ("type D equidistribution", conjecture),
        ("worked example", worked_example),
        ("proof machinery", proof_machinery),
        ("distributions", distributions),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
