//! CSV, text and SVG writers. CSV numbers carry 17 significant digits and
//! SVG coordinates 6 decimals, so output is byte-stable for fixed inputs.

use std::io::{self, Write};

use crate::catalogue::ResonanceData;
use crate::dynamics::{energies, Trajectory};
use crate::toric::{Component, Corners, DomainProfile};
use crate::tree::{level_iter, transform_fraction, Fraction, MAX_DEPTH};
use crate::verify::CheckRow;

/// Float in scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}").to_lowercase()
    }
}

fn svg_num(x: f64) -> String {
    let s = format!("{x:.6}");
    // Avoid "-0.000000", which would make output depend on rounding sign.
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Lines of `comments` are written first, each prefixed with `# `.
pub fn write_trajectory_csv(
    w: &mut impl Write,
    traj: &Trajectory,
    comments: &[String],
) -> io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "t,q1,q2,p1,p2,H,L,K")?;
    for (t, pt) in traj.times.iter().zip(&traj.states) {
        let (h, l, k) = match energies(pt) {
            Ok(e) => (e.h, e.l, e.k),
            Err(_) => (f64::NAN, pt.angular_momentum(), f64::NAN),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            num(*t),
            num(pt.q[0]),
            num(pt.q[1]),
            num(pt.p[0]),
            num(pt.p[1]),
            num(h),
            num(l),
            num(k)
        )?;
    }
    Ok(())
}

pub fn write_verification_csv(w: &mut impl Write, rows: &[CheckRow]) -> io::Result<()> {
    writeln!(w, "check,n_samples,max_residual,tolerance,pass")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.check,
            r.n_samples,
            num(r.max_residual),
            num(r.tolerance),
            r.pass
        )?;
    }
    Ok(())
}

/// Samples of each profile followed by its corner rows.
pub fn write_profile_csv(
    w: &mut impl Write,
    profiles: &[DomainProfile],
    corners: Option<&Corners>,
) -> io::Result<()> {
    writeln!(w, "t,g,component,c")?;
    let c = match profiles.first() {
        Some(p) => p.c,
        None => return Ok(()),
    };
    for p in profiles {
        for &(t, g) in &p.samples {
            writeln!(
                w,
                "{},{},{},{}",
                num(t),
                num(g),
                p.component.as_str(),
                num(c)
            )?;
        }
    }
    let mut corner =
        |name: &str, t: f64, g: f64| writeln!(w, "{},{},{},{}", num(t), num(g), name, num(c));
    match corners {
        Some(k) => {
            corner("corner_a", k.a, k.a)?;
            corner("corner_b", k.b, -k.b)?;
            corner("corner_bu", k.b_u, -k.b_u)?;
        }
        None => {
            if let Some(p) = profiles
                .iter()
                .find(|p| p.component == Component::Connected)
            {
                corner("corner_a", p.a, p.a)?;
            }
        }
    }
    Ok(())
}

/// Appends an `in_window` column when `window` is given.
pub fn write_catalogue_csv(
    w: &mut impl Write,
    rows: &[ResonanceData],
    window: Option<f64>,
) -> io::Result<()> {
    write!(w, "k,l,c_kl,L_kl,c_minus,c_plus,class")?;
    if window.is_some() {
        write!(w, ",in_window")?;
    }
    writeln!(w)?;
    for d in rows {
        write!(
            w,
            "{},{},{},{},{},{},{}",
            d.label.k(),
            d.label.l(),
            num(d.c_kl),
            num(d.l_kl),
            num(d.c_minus),
            num(d.c_plus),
            d.classification.as_str()
        )?;
        if let Some(c) = window {
            write!(w, ",{}", d.in_window(c))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

fn check_depth(depth: u32) -> io::Result<()> {
    if depth > MAX_DEPTH {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("depth {depth} exceeds {MAX_DEPTH}"),
        ));
    }
    Ok(())
}

fn to_io(e: crate::Error) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, e.to_string())
}

/// Both trees level by level, each level indented toward the centre.
pub fn write_tree_text(w: &mut impl Write, depth: u32) -> io::Result<()> {
    check_depth(depth)?;
    type Label = fn(Fraction) -> crate::Result<Fraction>;
    let sections: [(&str, Label); 2] = [
        ("Stern-Brocot tree", Ok),
        ("transformed tree", transform_fraction),
    ];
    for (i, (title, label)) in sections.into_iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        writeln!(w, "{title}")?;
        for d in 0..=depth {
            write!(w, "{}", "  ".repeat((depth - d) as usize))?;
            let mut first = true;
            for (_, node) in level_iter(d).map_err(to_io)? {
                if !first {
                    write!(w, "  ")?;
                }
                first = false;
                write!(w, "{}", label(node).map_err(to_io)?)?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

/// `depth,index,path,k,l,value` where `k/l` is the Stern-Brocot node and
/// `value` its transform.
pub fn write_tree_csv(w: &mut impl Write, depth: u32) -> io::Result<()> {
    check_depth(depth)?;
    writeln!(w, "depth,index,path,k,l,value")?;
    for d in 0..=depth {
        for (path, node) in level_iter(d).map_err(to_io)? {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                d,
                path.index(),
                path,
                node.num(),
                node.den(),
                transform_fraction(node).map_err(to_io)?
            )?;
        }
    }
    Ok(())
}

/// Plot extent in `mu1`; the vertical range is symmetric with the same
/// half-height.
pub fn plot_extent(c: f64, corners: Option<&Corners>) -> f64 {
    match corners {
        Some(k) => 1.2 * k.b_u,
        None => 1.2 * crate::toric::diagonal_corner(c).map_or(1.0, |a| (2.0 * a).max(1.0)),
    }
}

fn points_attr(pts: impl IntoIterator<Item = (f64, f64)>) -> String {
    pts.into_iter()
        .map(|(x, y)| format!("{},{}", svg_num(x), svg_num(-y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Static SVG of the sublevel set in the `(mu1, mu2)` plane. The bounded
/// and connected regions are filled, the unbounded one is outlined, and the
/// touching point is marked when `b = b_u`.
pub fn write_profile_svg(
    w: &mut impl Write,
    profiles: &[DomainProfile],
    corners: Option<&Corners>,
) -> io::Result<()> {
    let c = profiles.first().map_or(0.0, |p| p.c);
    let ext = plot_extent(c, corners);
    writeln!(
        w,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    )?;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="1200" viewBox="{} {} {} {}" preserveAspectRatio="none">"#,
        svg_num(0.0),
        svg_num(-ext),
        svg_num(ext),
        svg_num(2.0 * ext)
    )?;
    writeln!(w, "<title>K~ &lt;= {}</title>", svg_num(c))?;
    let style = r#"vector-effect="non-scaling-stroke" stroke-width="1.5""#;
    // Cone edges.
    writeln!(
        w,
        r##"<polyline fill="none" stroke="#999999" stroke-dasharray="4 4" {style} points="{}"/>"##,
        points_attr([(ext, ext), (0.0, 0.0), (ext, -ext)])
    )?;
    for p in profiles {
        let mut outline: Vec<(f64, f64)> = Vec::new();
        let (fill, stroke) = match p.component {
            Component::Bounded | Component::Connected => ("#9ecae1", "#08519c"),
            Component::Unbounded => ("none", "#a50f15"),
        };
        match p.component {
            Component::Bounded => {
                outline.push((0.0, 0.0));
                outline.extend(p.samples.iter().copied());
                outline.push((0.0, 0.0));
            }
            Component::Connected => {
                let (t_end, _) = *p.samples.last().expect("profile has samples");
                outline.push((t_end, -t_end));
                outline.push((0.0, 0.0));
                outline.extend(p.samples.iter().copied());
            }
            Component::Unbounded => {
                let (t_end, _) = *p.samples.last().expect("profile has samples");
                outline.push((t_end, -t_end));
                outline.extend(p.samples.iter().copied());
            }
        }
        let tag = if fill == "none" {
            "polyline"
        } else {
            "polygon"
        };
        writeln!(
            w,
            r#"<{tag} class="{}" fill="{fill}" stroke="{stroke}" {style} points="{}"/>"#,
            p.component.as_str(),
            points_attr(outline)
        )?;
    }
    if let Some(k) = corners {
        if k.b == k.b_u {
            writeln!(
                w,
                r##"<circle class="singular" cx="{}" cy="{}" r="{}" fill="#000000"/>"##,
                svg_num(k.b),
                svg_num(k.b),
                svg_num(0.01 * ext)
            )?;
        }
    }
    writeln!(w, "</svg>")
}
