//! The `permtab` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verdict fails, 2 for
//! usage and input errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::diagram::{LabelSets, MAX_N};
use crate::error::{Error, Result};
use crate::involution::{transform, transform_family};
use crate::polynomials::{self, conjecture_check, PolyId, Source};
use crate::pr_verify::{inverse_trace_check, pr_map, prnumbering_violations, step_order_violations};
use crate::tableau::{self, enumerate, for_each_with_labels, from_json, label_splits, Family, TableauDoc};

#[derive(Parser, Debug)]
#[command(name = "permtab", version, about = "Permutation tableaux, their involution and symmetry checks")]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every tableau of a family and length, one JSON document per line.
    Enumerate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the involution to a tableau.
    Transform {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "B")]
        family: FamilyArg,
    },
    /// Draw a tableau as a grid.
    Render {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run an exhaustive check for one length.
    Verify {
        #[arg(long, value_enum)]
        which: Check,
        #[arg(long)]
        n: u32,
    },
    /// Print a family of generating polynomials.
    Poly {
        #[arg(long, value_enum)]
        which: PolyArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum)]
        source: Option<SourceArg>,
    },
    /// Compare the three type D descent and excedance histograms.
    Conjecture {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "D", alias = "d")]
    D,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
            FamilyArg::D => Family::D,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Check {
    Bstar,
    Ehat,
    Dhat,
    #[value(name = "eB")]
    EB,
    #[value(name = "eD")]
    ED,
    Involution,
    Phi,
    Pr,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolyArg {
    Bstar,
    Ehat,
    Dhat,
    #[value(name = "eB")]
    EB,
    #[value(name = "eD")]
    ED,
}

impl From<PolyArg> for PolyId {
    fn from(p: PolyArg) -> PolyId {
        match p {
            PolyArg::Bstar => PolyId::BStar,
            PolyArg::Ehat => PolyId::EHat,
            PolyArg::Dhat => PolyId::DHat,
            PolyArg::EB => PolyId::EB,
            PolyArg::ED => PolyId::ED,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SourceArg {
    Tableaux,
    Perms,
}

impl From<SourceArg> for Source {
    fn from(s: SourceArg) -> Source {
        match s {
            SourceArg::Tableaux => Source::Tableaux,
            SourceArg::Perms => Source::Perms,
        }
    }
}

/// What a command produced: text for stdout and whether its checks held.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::Malformed("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        None => execute(&cli.command),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 2;
            }
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn require_n(n: u32) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::Malformed(format!("--n must be between 1 and {}", MAX_N)))
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match *cmd {
        Command::Enumerate { family, n, count_only, ref out } => {
            require_n(n)?;
            cmd_enumerate(family.into(), n, count_only, out.as_ref())
        }
        Command::Transform { ref input, trace, family } => cmd_transform(&read_input(input)?, trace, family.into()),
        Command::Render { ref input } => {
            let t = from_json(&read_input(input)?, Family::B)?;
            Ok(Outcome::ok(t.filling().render()))
        }
        Command::Verify { which, n } => {
            require_n(n)?;
            cmd_verify(which, n)
        }
        Command::Poly { which, n, format, source } => {
            require_n(n)?;
            let id = PolyId::from(which);
            let source = source.map(Source::from).unwrap_or(match id {
                PolyId::BStar | PolyId::ED => Source::Tableaux,
                _ => Source::Perms,
            });
            let fam = polynomials::compute(id, n, source);
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&fam.to_json()).expect("plain data serializes") + "\n",
                Format::Csv => fam.to_csv(),
            };
            Ok(Outcome::ok(text))
        }
        Command::Conjecture { n } => {
            require_n(n)?;
            let r = conjecture_check(n);
            Ok(Outcome { text: format!("{r}\n"), pass: r.pass })
        }
    }
}

fn cmd_enumerate(family: Family, n: u32, count_only: bool, out: Option<&PathBuf>) -> Result<Outcome> {
    if count_only {
        return Ok(Outcome::ok(format!("{}\n", tableau::count(n, family))));
    }
    let chunks: Vec<String> = label_splits(n, family)
        .into_par_iter()
        .map(|l| {
            let mut s = String::new();
            for_each_with_labels(&l, family, &mut |t| {
                let doc = TableauDoc::from_tableau(&t, false);
                s.push_str(&serde_json::to_string(&doc).expect("plain data serializes"));
                s.push('\n');
            });
            s
        })
        .collect();
    let text = chunks.concat();
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn cmd_transform(text: &str, show_trace: bool, family: Family) -> Result<Outcome> {
    let t = from_json(text, family)?;
    let (u, trace) = transform_family(&t, family)?;
    let mut s = tableau::to_json(&u, false);
    s.push('\n');
    if show_trace {
        s.push_str(&trace.to_text());
    }
    Ok(Outcome::ok(s))
}

fn verdict(lines: &mut String, pass: bool, what: impl std::fmt::Display) -> bool {
    let _ = writeln!(lines, "{} {what}", if pass { "PASS" } else { "FAIL" });
    pass
}

fn cmd_verify(which: Check, n: u32) -> Result<Outcome> {
    let mut s = String::new();
    let pass = match which {
        Check::Bstar | Check::ED => {
            let id = if matches!(which, Check::Bstar) { PolyId::BStar } else { PolyId::ED };
            let tabs = polynomials::compute(id, n, Source::Tableaux);
            let perms = polynomials::compute(id, n, Source::Perms);
            let rt = tabs.check_symmetry();
            let rp = perms.check_symmetry();
            let a = verdict(&mut s, rt.pass, format_args!("{} n={n} symmetry from tableaux", id.name()));
            let b = verdict(&mut s, rp.pass, format_args!("{} n={n} symmetry from permutations", id.name()));
            let c = verdict(&mut s, tabs == perms, format_args!("{} n={n} sources agree", id.name()));
            for r in [&rt, &rp] {
                if !r.pass {
                    let _ = writeln!(s, "{r}");
                }
            }
            a && b && c
        }
        Check::Ehat | Check::Dhat | Check::EB => {
            let id = match which {
                Check::Ehat => PolyId::EHat,
                Check::Dhat => PolyId::DHat,
                _ => PolyId::EB,
            };
            let r = polynomials::compute(id, n, Source::Perms).check_symmetry();
            let ok = verdict(&mut s, r.pass, format_args!("{} n={n} symmetry", id.name()));
            if !ok {
                let _ = writeln!(s, "{r}");
            }
            ok
        }
        Check::Involution => verify_involution(&mut s, n)?,
        Check::Phi => {
            let (tb, pb) = polynomials::type_b_tuples(n);
            let (ta, pa) = polynomials::type_a_tuples(n);
            let a = verdict(&mut s, tb == pb, format_args!("type B tuples n={n}"));
            let b = verdict(&mut s, ta == pa, format_args!("type A tuples n={n}"));
            a && b
        }
        Check::Pr => verify_pr(&mut s, n)?,
    };
    Ok(Outcome { text: s, pass })
}

fn verify_involution(s: &mut String, n: u32) -> Result<bool> {
    let ts = enumerate(n, Family::B);
    let bad: Vec<String> = ts
        .par_iter()
        .map(|t| -> Result<Option<String>> {
            let (u, _) = transform(t)?;
            let (v, _) = transform(&u)?;
            let (a, b) = (t.stats(), u.stats());
            let chi = |x: bool| x as u32;
            let ok = &v == t
                && a.so == b.so
                && a.diag + chi(t.labels().is_pos(1)) == b.diag + chi(u.labels().is_pos(1))
                && a.weight_index() + b.weight_index() == 2 * n + 1;
            Ok((!ok).then(|| format!("{t:?}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ok = verdict(s, bad.is_empty(), format_args!("involution and statistics on {} tableaux, n={n}", ts.len()));
    for b in bad.iter().take(3) {
        let _ = writeln!(s, "{b}");
    }
    Ok(ok)
}

fn verify_pr(s: &mut String, n: u32) -> Result<bool> {
    let mut shape_bad = Vec::new();
    for l in LabelSets::all_anchored(n) {
        let m = pr_map(&l)?;
        if !m.then(&pr_map(m.target())?)?.is_identity() {
            shape_bad.push(format!("double pr on {l:?}"));
        }
        shape_bad.extend(prnumbering_violations(&l)?.into_iter().map(|v| format!("{l:?}: {v}")));
    }
    let a = verdict(s, shape_bad.is_empty(), format_args!("pr correspondence and order facts on shapes, n={n}"));
    let plus: Vec<_> = enumerate(n, Family::B).into_iter().filter(|t| t.labels().is_pos(1)).collect();
    let run_bad: Vec<String> = plus
        .par_iter()
        .map(|t| -> Result<Option<String>> {
            let v = step_order_violations(t)?;
            let r = inverse_trace_check(t)?;
            Ok((!v.is_empty() || !r.passed()).then(|| format!("{t:?}\n{v:?}\n{r}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let b = verdict(s, run_bad.is_empty(), format_args!("step order, reordered replay and second run on {} tableaux, n={n}", plus.len()));
    for x in shape_bad.iter().chain(&run_bad).take(3) {
        let _ = writeln!(s, "{x}");
    }
    Ok(a && b)
}
