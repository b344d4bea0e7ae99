//! Strip charts: one row of dots per semigroup, one dot per integer.

use std::fmt::Write;

use molekul::strip::{PointClass, StripRow};

pub const PITCH: u32 = 12;
pub const ROW_HEIGHT: u32 = 24;
const LABEL_WIDTH: u32 = 160;
const MARGIN: u32 = 8;
const RADIUS: u32 = 4;

#[derive(Debug, Clone)]
pub struct Palette {
    pub atom: String,
    pub molecule: String,
    pub non_molecule: String,
    pub gap: String,
}

impl Palette {
    fn color(&self, class: PointClass) -> &str {
        match class {
            PointClass::Atom => &self.atom,
            PointClass::MoleculeNonAtom => &self.molecule,
            PointClass::NonMolecule => &self.non_molecule,
            PointClass::Gap => &self.gap,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(rows: &[StripRow], palette: &Palette) -> String {
    let limit = rows.iter().map(|r| r.points.len() as u32).max().unwrap_or(0);
    let width = LABEL_WIDTH + limit * PITCH + 2 * MARGIN;
    let height = rows.len() as u32 * ROW_HEIGHT + 2 * MARGIN;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let cy = MARGIN + i as u32 * ROW_HEIGHT + ROW_HEIGHT / 2;
        writeln!(
            out,
            r#"<text x="{MARGIN}" y="{}" font-family="monospace" font-size="11">{}</text>"#,
            cy + 4,
            escape(&row.label)
        )
        .unwrap();
        for (k, &class) in row.points.iter().enumerate() {
            let cx = MARGIN + LABEL_WIDTH + k as u32 * PITCH + PITCH / 2;
            writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="{}" data-x="{}" data-class="{}"/>"#,
                palette.color(class),
                k + 1,
                class.name()
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}
