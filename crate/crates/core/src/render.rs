//! Plain-text grid pictures.
//!
//! One line per grid row, cells separated by single spaces. Holes are `.`,
//! tiles get letters `A`-`Z` then `a`-`z` in `(r1, c1, r2, c2)` order (`?`
//! after the 52nd), marked cells are `#`, and anything else is `-`. Nothing
//! is validated: overlapping or hole-covering tiles are drawn as given, with
//! holes always shown as `.`.

use crate::error::{Error, Result};
use crate::fooling::{Fanning, MarkedSet};
use crate::grid::{Cell, Permutation, Tiling};

const UNCOVERED: char = '-';

fn label(index: usize) -> char {
    const UPPER: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    const LOWER: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    match index {
        0..=25 => UPPER[index] as char,
        26..=51 => LOWER[index - 26] as char,
        _ => '?',
    }
}

fn draw(perm: &Permutation, glyphs: &[char], margin: Option<&dyn Fn(u32) -> char>) -> String {
    let n = perm.n();
    let mut lines = Vec::with_capacity(n);
    for row in 1..=n as u32 {
        let mut line = String::with_capacity(2 * n + 2);
        if let Some(tag) = margin {
            line.push(tag(row));
            line.push(' ');
        }
        for col in 1..=n as u32 {
            if col > 1 {
                line.push(' ');
            }
            let cell = Cell::new(row, col);
            line.push(if perm.is_hole(cell) {
                '.'
            } else {
                glyphs[(row as usize - 1) * n + col as usize - 1]
            });
        }
        lines.push(line);
    }
    lines.join("\n")
}

fn check_size(perm: &Permutation, n: usize) -> Result<()> {
    if perm.n() != n {
        return Err(Error::SizeMismatch {
            expected: perm.n(),
            found: n,
        });
    }
    Ok(())
}

pub fn render_tiling(perm: &Permutation, tiling: &Tiling) -> Result<String> {
    check_size(perm, tiling.n)?;
    let n = perm.n();
    let mut glyphs = vec![UNCOVERED; n * n];
    for (i, rect) in tiling.canonical().rects.iter().enumerate() {
        for cell in rect.cells().filter(|c| c.in_grid(n)) {
            glyphs[(cell.row as usize - 1) * n + cell.col as usize - 1] = label(i);
        }
    }
    Ok(draw(perm, &glyphs, None))
}

pub fn render_marked(perm: &Permutation, set: &MarkedSet) -> Result<String> {
    check_size(perm, set.n())?;
    let n = perm.n();
    let mut glyphs = vec![UNCOVERED; n * n];
    for cell in set.cells() {
        glyphs[(cell.row as usize - 1) * n + cell.col as usize - 1] = '#';
    }
    Ok(draw(perm, &glyphs, None))
}

/// Fooling-set picture with a margin column: `>` marks rows whose hole is on
/// the increasing chain, `v` rows on the decreasing chain, `*` the pivot row
/// when both chains pass through it.
pub fn render_fanning(perm: &Permutation, fanning: &Fanning) -> Result<String> {
    check_size(perm, fanning.cells.n())?;
    let n = perm.n();
    let mut glyphs = vec![UNCOVERED; n * n];
    for cell in fanning.cells.cells() {
        glyphs[(cell.row as usize - 1) * n + cell.col as usize - 1] = '#';
    }
    let tag = |row: u32| match (fanning.lis.contains_row(row), fanning.lds.contains_row(row)) {
        (true, true) => '*',
        (true, false) => '>',
        (false, true) => 'v',
        (false, false) => ' ',
    };
    Ok(draw(perm, &glyphs, Some(&tag)))
}
