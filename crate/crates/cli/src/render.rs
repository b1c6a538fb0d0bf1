//! Text and SVG pictures of `(r, i)` diagrams, `r` horizontal and `i`
//! vertical.

use std::fmt::Write;

use zelcoh::diagram::{Diagram, DiagramPoint};

fn cell(d: &Diagram, p: DiagramPoint) -> String {
    match d.factors_at(p).len() {
        0 => ".".into(),
        1 => "#".into(),
        n => n.to_string(),
    }
}

/// One row per `i` from the top, one column per `r >= 1`. A point carrying a
/// single factor is `#`; a superposed point shows its factor count.
pub fn ascii(d: &Diagram) -> String {
    let Some((_, r_max)) = d.r_range() else {
        return "(empty diagram)\n".into();
    };
    let i_max = d.max_abs_i();
    let mut out = String::from("  i\n");
    for i in (-i_max..=i_max).rev() {
        let _ = write!(out, "{i:>3} |");
        for r in 1..=r_max {
            let _ = write!(out, " {:>2}", cell(d, DiagramPoint::new(r, i)));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "    +{}", "-".repeat(3 * r_max as usize + 1));
    out.push_str("     ");
    for r in 1..=r_max {
        let _ = write!(out, "{r:>3}");
    }
    out.push_str("  r\n");
    out
}

const UNIT: i64 = 28;

pub fn svg(d: &Diagram) -> String {
    let (r_max, i_max) = d.r_range().map_or((1, 0), |(_, hi)| (hi, d.max_abs_i()));
    let width = (r_max + 2) * UNIT;
    let height = (2 * i_max + 3) * UNIT;
    let x = |r: i64| r * UNIT;
    let y = |i: i64| (i_max - i + 1) * UNIT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        UNIT / 2,
        y(0),
        x(r_max) + UNIT,
        y(0)
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        UNIT / 2,
        y(i_max) - UNIT / 2,
        UNIT / 2,
        y(-i_max) + UNIT / 2
    );
    for r in 1..=r_max {
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" text-anchor="middle">{r}</text>"#,
            x(r),
            height - UNIT / 4
        );
    }
    for (p, factors) in d.iter() {
        let half = UNIT / 2 - 3;
        let list: Vec<String> = factors.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"><title>{p} factors {}</title></rect>"#,
            x(p.r) - half,
            y(p.i) - half,
            2 * half,
            2 * half,
            list.join(",")
        );
        if factors.len() > 1 {
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                x(p.r),
                y(p.i) + 4,
                factors.len()
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use zelcoh::diagram::diagram;

    #[test]
    fn steinberg_is_one_square() {
        assert_eq!(ascii(&diagram(1, 3).unwrap()), "  i\n  0 |  .  .  #\n    +----------\n       1  2  3  r\n");
    }

    #[test]
    fn speh_triangle() {
        let text = ascii(&diagram(3, 1).unwrap());
        assert_eq!(text.matches('#').count(), 6);
        assert!(text.starts_with("  i\n  2 |  #  .  .\n  1 |  .  #  .\n  0 |  #  .  #\n"));
    }

    #[test]
    fn svg_has_one_square_per_point() {
        let s = svg(&diagram(4, 2).unwrap());
        assert_eq!(s.matches("<rect").count(), diagram(4, 2).unwrap().len());
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
    }
}
