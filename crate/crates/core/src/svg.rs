//! SVG 1.1 diagrams of lattice paths.
//!
//! A diagram is a row of panels. Each panel draws a light unit grid, the
//! horizontal axis, the path as a polyline with a dot at every lattice point,
//! and optionally fills the run pair of one marked peak or valley. Pair
//! diagrams place the two components side by side.

use std::fmt::Write as _;

use crate::bijection::PathPair;
use crate::path::LatticePath;
use crate::stats::{MarkedPath, RunRecord};

const UNIT: i64 = 20;
const MARGIN: i64 = 20;
const GAP: i64 = 2;

#[derive(Clone, Debug)]
struct Panel {
    path: LatticePath,
    mark: Option<RunRecord>,
}

/// Builder for a row of path panels.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    panels: Vec<Panel>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn path(mut self, path: &LatticePath) -> Self {
        self.panels.push(Panel { path: path.clone(), mark: None });
        self
    }

    pub fn marked(mut self, m: &MarkedPath) -> Self {
        self.panels.push(Panel { path: m.path().clone(), mark: Some(m.record()) });
        self
    }

    pub fn pair(self, pair: &PathPair) -> Self {
        self.path(&pair.first).path(&pair.second)
    }

    pub fn render(&self) -> String {
        let mut top = 0i64;
        let mut bottom = 0i64;
        for p in &self.panels {
            let levels = p.path.levels();
            top = top.max(levels.iter().copied().max().unwrap_or(0));
            bottom = bottom.min(levels.iter().copied().min().unwrap_or(0));
        }
        let columns: i64 = self.panels.iter().map(|p| p.path.len() as i64).sum::<i64>()
            + GAP * (self.panels.len() as i64 - 1).max(0);
        let width = columns * UNIT + 2 * MARGIN;
        let height = (top - bottom) * UNIT + 2 * MARGIN;
        let y = |level: i64| MARGIN + (top - level) * UNIT;

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);

        let mut left = 0i64;
        for p in &self.panels {
            let x = |i: i64| MARGIN + (left + i) * UNIT;
            let len = p.path.len() as i64;
            let _ = writeln!(s, r##"<g stroke="#dddddd" stroke-width="1">"##);
            for i in 0..=len {
                let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(i), y(top), x(i), y(bottom));
            }
            for level in bottom..=top {
                let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, x(0), y(level), x(len), y(level));
            }
            let _ = writeln!(s, "</g>");
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888888" stroke-width="1.5"/>"##,
                x(0),
                y(0),
                x(len),
                y(0)
            );

            let levels = p.path.levels();
            if let Some(r) = p.mark {
                let pts: Vec<String> = (r.start..=r.end())
                    .map(|i| format!("{},{}", x(i as i64), y(levels[i])))
                    .collect();
                let _ = writeln!(
                    s,
                    r##"<polygon points="{}" fill="#9ecae1" stroke="none"/>"##,
                    pts.join(" ")
                );
            }
            let pts: Vec<String> = levels
                .iter()
                .enumerate()
                .map(|(i, &l)| format!("{},{}", x(i as i64), y(l)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
                pts.join(" ")
            );
            for (i, &l) in levels.iter().enumerate() {
                let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#, x(i as i64), y(l));
            }
            left += len + GAP;
        }
        s.push_str("</svg>\n");
        s
    }
}

pub fn render_path(path: &LatticePath) -> String {
    Diagram::new().path(path).render()
}

pub fn render_marked(m: &MarkedPath) -> String {
    Diagram::new().marked(m).render()
}

pub fn render_pair(pair: &PathPair) -> String {
    Diagram::new().pair(pair).render()
}
