//! Plain-text output.

use std::io::{self, Write};

use kbase::basesize::BaseSizeReport;
use kbase::permcore::{DomainLabels, GroupAction};
use kbase::verify::{Status, VerifyReport};

use crate::{ChartabOutput, GroupInfo, KGraphOutput};

fn header(out: &mut impl Write, g: &GroupInfo) -> io::Result<()> {
    writeln!(
        out,
        "{}: order {}, degree {}",
        g.description, g.order, g.degree
    )
}

fn points(action: &GroupAction, pts: &[usize]) -> String {
    let raw: Vec<String> = pts.iter().map(ToString::to_string).collect();
    let mut s = format!("[{}]", raw.join(", "));
    if !matches!(action.labels(), DomainLabels::Points) {
        let labels: Vec<String> = pts.iter().map(|&p| action.point_label(p)).collect();
        s.push_str(&format!(" = {}", labels.join(" ")));
    }
    s
}

pub fn basesize(
    out: &mut impl Write,
    g: &GroupInfo,
    action: &GroupAction,
    r: &BaseSizeReport,
) -> io::Result<()> {
    header(out, g)?;
    if let Some(w) = &r.search {
        writeln!(
            out,
            "search:      {}  base {}",
            w.size(),
            points(action, &w.points)
        )?;
    }
    if let Some(c) = &r.char_formula {
        writeln!(
            out,
            "character:   {}  <phi, chi^{}> = {}",
            c.size, c.size, c.value
        )?;
    }
    if let Some(k) = &r.kuelshammer {
        writeln!(
            out,
            "kuelshammer: {}  d(1_H, phi|H) = {}, diameter {}",
            k.size, k.d, k.diameter
        )?;
    }
    if let Some(phi) = &r.phi_used {
        let vals: Vec<String> = phi.values().iter().map(ToString::to_string).collect();
        writeln!(out, "phi on classes: {}", vals.join(" "))?;
    }
    for note in &r.notes {
        writeln!(out, "note: {note}")?;
    }
    match r.size() {
        Some(b) => writeln!(out, "base size {b}"),
        None => writeln!(out, "METHODS DISAGREE: {:?}", r.sizes()),
    }
}

pub fn kgraph(out: &mut impl Write, k: &KGraphOutput) -> io::Result<()> {
    header(out, &k.group)?;
    writeln!(out, "stabilizer order {}", k.stabilizer_order)?;
    writeln!(out, "vertices {}", k.degrees.len())?;
    let degs: Vec<String> = k.degrees.iter().map(ToString::to_string).collect();
    writeln!(out, "degrees {}", degs.join(" "))?;
    let edges: Vec<String> = k.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    writeln!(out, "edges {}", edges.join(" "))?;
    writeln!(out, "diameter {}", k.diameter)?;
    match (k.phi_vertex, k.d) {
        (Some(v), Some(d)) => writeln!(out, "phi|H is vertex {v}; d(1_H, phi|H) = {d}"),
        _ => writeln!(out, "no base-controlling homomorphism"),
    }
}

pub fn chartab(out: &mut impl Write, c: &ChartabOutput) -> io::Result<()> {
    header(out, &c.group)?;
    let t = &c.table;
    writeln!(
        out,
        "{} table: order {}, {} classes, values in Q(E({}))",
        c.which,
        t.order,
        t.classes.len(),
        t.conductor
    )?;
    let mut rows: Vec<Vec<String>> = Vec::new();
    let types: Vec<String> = t
        .classes
        .iter()
        .map(|cl| {
            let parts: Vec<String> = cl
                .cycle_type
                .iter()
                .filter(|&&l| l > 1)
                .map(ToString::to_string)
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join(".")
            }
        })
        .collect();
    let mut head = vec!["".to_string()];
    head.extend(types);
    rows.push(head);
    let mut sizes = vec!["size".to_string()];
    sizes.extend(t.classes.iter().map(|cl| cl.size.to_string()));
    rows.push(sizes);
    for (i, chi) in t.irreducibles.iter().enumerate() {
        let mut row = vec![format!("X.{i}")];
        row.extend(chi.display.iter().cloned());
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end())?;
    }
    Ok(())
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
        Status::Flag => "FLAG",
    }
}

pub fn verify(out: &mut impl Write, g: &GroupInfo, r: &VerifyReport) -> io::Result<()> {
    header(out, g)?;
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &r.checks {
        writeln!(
            out,
            "{}  {:<width$}  {:>6}  {}",
            status_word(c.status),
            c.name,
            c.assertions,
            c.detail
        )?;
    }
    let failed = r.checks.iter().filter(|c| c.status == Status::Fail).count();
    writeln!(
        out,
        "base size {}; {} assertions; {}",
        r.base_size,
        r.total_assertions(),
        if failed == 0 {
            "all checks passed".to_string()
        } else {
            format!("{failed} check(s) failed")
        }
    )
}
