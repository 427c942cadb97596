//! Human-readable pattern renderers: plain text with `*` at parameter
//! positions, and LaTeX with named parameters added to the entries.

use std::collections::HashMap;

use miniversal::canonical::CanonicalStructure;
use miniversal::exact::{Rational, Scalar};
use miniversal::quiver::{Representation, StarPattern};
use num_traits::{One, Signed, Zero};

use crate::spec::arrow_names;

/// Per-arrow matrices with `*` at star positions and `.` at structural
/// zeros; other entries print their exact value, column-aligned.
pub fn ascii(s: &CanonicalStructure, rep: &Representation, pattern: &StarPattern) -> String {
    let names = arrow_names(s.problem());
    let star_set: std::collections::HashSet<(usize, usize, usize)> = pattern
        .stars()
        .iter()
        .map(|st| (st.arrow, st.row, st.col))
        .collect();
    let mut out = String::new();
    for (idx, m) in rep.mats().iter().enumerate() {
        out.push_str(names[idx]);
        out.push_str(":\n");
        if m.rows() == 0 || m.cols() == 0 {
            out.push_str(&format!("  ({} x {} empty)\n", m.rows(), m.cols()));
            continue;
        }
        let cell = |r: usize, c: usize| -> String {
            if star_set.contains(&(idx, r, c)) {
                "*".to_string()
            } else if m.get(r, c).is_zero() {
                ".".to_string()
            } else {
                m.get(r, c).to_string()
            }
        };
        let mut widths = vec![0usize; m.cols()];
        for r in 0..m.rows() {
            for (c, w) in widths.iter_mut().enumerate() {
                *w = (*w).max(cell(r, c).len());
            }
        }
        for r in 0..m.rows() {
            out.push_str("  ");
            for (c, width) in widths.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:>width$}", cell(r, c)));
            }
            out.push('\n');
        }
    }
    out
}

fn latex_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Rational(q) => latex_rational(q),
        Scalar::Gaussian(g) => {
            if g.im.is_zero() {
                latex_rational(&g.re)
            } else if g.re.is_zero() {
                format!("{}i", latex_rational(&g.im))
            } else if g.im.is_negative() {
                format!("{}-{}i", latex_rational(&g.re), latex_rational(&-g.im.clone()))
            } else {
                format!("{}+{}i", latex_rational(&g.re), latex_rational(&g.im))
            }
        }
    }
}

/// One `bmatrix` per arrow with `\lambda_k` added at the k-th star position,
/// in the style used for deformation pictures.
pub fn latex(s: &CanonicalStructure, rep: &Representation, pattern: &StarPattern) -> String {
    let names = arrow_names(s.problem());
    let mut params: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (idx, st) in pattern.stars().iter().enumerate() {
        params.insert((st.arrow, st.row, st.col), idx + 1);
    }
    let mut pieces = Vec::new();
    for (idx, m) in rep.mats().iter().enumerate() {
        let mut body = String::new();
        for r in 0..m.rows() {
            if r > 0 {
                body.push_str(" \\\\\n");
            }
            let row: Vec<String> = (0..m.cols())
                .map(|c| {
                    let value = m.get(r, c);
                    match (params.get(&(idx, r, c)), value.is_zero()) {
                        (Some(k), true) => format!("\\lambda_{{{k}}}"),
                        (Some(k), false) => {
                            format!("{}+\\lambda_{{{k}}}", latex_scalar(value))
                        }
                        (None, true) => "0".to_string(),
                        (None, false) => latex_scalar(value),
                    }
                })
                .collect();
            body.push_str(&row.join(" & "));
        }
        pieces.push(format!(
            "{} = \\begin{{bmatrix}}\n{}\n\\end{{bmatrix}}",
            names[idx], body
        ));
    }
    pieces.join("\n,\\quad\n") + "\n"
}
