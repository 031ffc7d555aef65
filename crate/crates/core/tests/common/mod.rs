#![allow(dead_code)]

use std::path::PathBuf;

use permtab::diagram::{BoxAddr, Entry, PartialFilling};
use permtab::tableau::{from_json, Family, PermutationTableau};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load(name: &str, family: Family) -> PermutationTableau {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    from_json(&text, family).expect("fixture is a tableau")
}

pub fn b(row: i32, col: u32) -> BoxAddr {
    BoxAddr::new(row, col)
}

/// Cells of a filling, with entries as their one-character symbols.
pub fn cells_of(f: &PartialFilling) -> Vec<(i32, u32, char)> {
    f.cells().into_iter().map(|(b, e)| (b.row, b.col, e.symbol())).collect()
}

/// The pre-tableau of the Figure 3 tableau, column by column from the top.
pub fn fig3_pre() -> Vec<(u32, Vec<(i32, char)>)> {
    vec![
        (8, vec![(-8, '0'), (-7, '0'), (-6, '*'), (-5, '0'), (-3, 'S'), (-1, 'S'), (2, '0'), (4, 'S')]),
        (7, vec![(-7, '0'), (-6, '*'), (-5, '0'), (-3, 'S'), (-1, '0'), (2, '0'), (4, '0')]),
        (6, vec![(-6, '1'), (-5, '0'), (-3, 'S'), (-1, 'S'), (2, '0'), (4, '1')]),
        (5, vec![(-5, '0'), (-3, '*'), (-1, 'S'), (2, '1'), (4, 'S')]),
        (3, vec![(-3, '1'), (-1, '0'), (2, '0')]),
        (1, vec![(-1, '1')]),
    ]
}

/// Box `c_k` of the pre-tableau region of the Figure 3 tableau.
pub fn fig3_c(k: usize) -> BoxAddr {
    const BOXES: [(i32, u32); 17] = [
        (4, 5), (4, 6), (4, 7), (4, 8),
        (2, 3), (2, 5), (2, 6), (2, 7), (2, 8),
        (-1, 3), (-1, 5), (-1, 6), (-1, 7), (-1, 8),
        (-3, 6), (-3, 7), (-3, 8),
    ];
    let (r, c) = BOXES[k - 1];
    b(r, c)
}

pub fn entry(c: char) -> Entry {
    match c {
        '0' => Entry::Zero,
        '1' => Entry::One,
        'S' => Entry::S,
        '*' => Entry::Star,
        _ => panic!("no entry {c}"),
    }
}
