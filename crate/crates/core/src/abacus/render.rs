use std::fmt::Write;

use super::AbacusFunction;

const BLACK: char = '●';
const WHITE: char = '○';

/// One line per row, beads in columns `0..=max f`.
///
/// ```text
///  1 ● ● ●
///  2 ○ ● ●
///  3 ○ ○ ●
/// ```
pub fn render_ascii(f: &AbacusFunction) -> String {
    let cols = f.max_value() + 1;
    let width = f.n().to_string().len();
    let mut out = String::new();
    for row in 1..=f.n() {
        write!(out, "{row:>width$}").unwrap();
        for col in 0..cols {
            out.push(' ');
            out.push(if f.is_black(row, col) { BLACK } else { WHITE });
        }
        out.push('\n');
    }
    out
}

/// Filled circles for black beads, hollow for white; row 1 at the top,
/// column 0 on the left.
pub fn render_svg(f: &AbacusFunction) -> String {
    const CELL: usize = 28;
    const R: usize = 11;
    const MARGIN: usize = 30;
    let cols = f.max_value() + 1;
    let width = 2 * MARGIN + cols * CELL;
    let height = 2 * MARGIN + f.n() * CELL;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for col in 0..cols {
        let x = MARGIN + col * CELL + CELL / 2;
        writeln!(out, r#"  <text x="{x}" y="{}" font-size="11" text-anchor="middle">{col}</text>"#, MARGIN - 8).unwrap();
    }
    for row in 1..=f.n() {
        let y = MARGIN + (row - 1) * CELL + CELL / 2;
        writeln!(out, r#"  <text x="{}" y="{}" font-size="11" text-anchor="end">{row}</text>"#, MARGIN - 6, y + 4).unwrap();
        for col in 0..cols {
            let x = MARGIN + col * CELL + CELL / 2;
            let fill = if f.is_black(row, col) { "black" } else { "white" };
            writeln!(
                out,
                r#"  <circle cx="{x}" cy="{y}" r="{R}" fill="{fill}" stroke="black" stroke-width="1.5"/>"#
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
