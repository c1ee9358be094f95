//! Plain-text design files.
//!
//! ```text
//! # n=6
//! # t=3
//! # group=[3,4]
//! # source=standard coordinates
//! 1.0000000000000000e0 0.0000000000000000e0 0.0000000000000000e0
//! ...
//! ```
//!
//! Header lines are `# key=value`; other `#` lines are ignored. Each data line
//! holds three reals. Coordinates are written with 17 significant digits, so a
//! written design reads back bit-for-bit.

use std::fmt::Write as _;
use std::path::Path;

use crate::design::{Design, DesignMeta, UnitPoint};
use crate::error::{Error, Result};

/// Rows whose norm falls outside this range are rejected rather than normalized.
pub const NORM_RANGE: (f64, f64) = (0.9, 1.1);

/// Renders a design in the text format.
pub fn format_design(design: &Design) -> String {
    let mut out = String::new();
    let meta = &design.meta;
    let _ = writeln!(out, "# n={}", design.n());
    if let Some(t) = meta.target_t {
        let _ = writeln!(out, "# t={t}");
    }
    if let Some(g) = &meta.group_label {
        let _ = writeln!(out, "# group={g}");
    }
    if let Some(s) = &meta.source {
        let _ = writeln!(out, "# source={}", s.replace('\n', " "));
    }
    if meta.requires_polish {
        let _ = writeln!(out, "# requires_polish=true");
    }
    for p in design.points() {
        let [x, y, z] = p.coords();
        let _ = writeln!(out, "{x:.16e} {y:.16e} {z:.16e}");
    }
    out
}

/// Parses the text format, normalizing every row onto the sphere.
pub fn parse_design(text: &str) -> Result<Design> {
    let mut meta = DesignMeta::default();
    let mut declared_n = None;
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                let value = value.trim();
                let bad = |what: &str| Error::Parse {
                    line,
                    message: format!("invalid {what} `{value}`"),
                };
                match key.trim() {
                    "n" => declared_n = Some(value.parse::<usize>().map_err(|_| bad("n"))?),
                    "t" => meta.target_t = Some(value.parse().map_err(|_| bad("t"))?),
                    "group" => meta.group_label = Some(value.to_string()),
                    "source" => meta.source = Some(value.to_string()),
                    "requires_polish" => {
                        meta.requires_polish = value.parse().map_err(|_| bad("requires_polish"))?
                    }
                    _ => {}
                }
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut c = [0.0_f64; 3];
        for (slot, f) in c.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a number: `{f}`"),
            })?;
        }
        let norm = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        if !(NORM_RANGE.0..=NORM_RANGE.1).contains(&norm) {
            return Err(Error::Parse {
                line,
                message: format!("row norm {norm} is not close to 1"),
            });
        }
        points.push(UnitPoint::new(c[0], c[1], c[2])?);
    }
    if let Some(n) = declared_n {
        if n != points.len() {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares n={n} but {} points follow", points.len()),
            });
        }
    }
    Ok(Design::new(points)?.with_meta(meta))
}

pub fn read_design(path: impl AsRef<Path>) -> Result<Design> {
    parse_design(&std::fs::read_to_string(path)?)
}

pub fn write_design(path: impl AsRef<Path>, design: &Design) -> Result<()> {
    std::fs::write(path, format_design(design))?;
    Ok(())
}
