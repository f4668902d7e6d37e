//! Point-set file formats.
//!
//! The `digits` format is the only certification input: it is a lossless
//! rendering of the canonical digit text, one point per line, coordinates
//! tab-separated, preceded by a header line `base=<b> m=<m> s=<s>`. CSV
//! output carries decimal approximations for plotting and is refused on
//! input so a lossy file can never feed a certificate. JSON output wraps the
//! same digit texts for toolchains that prefer structured files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num::ToPrimitive;
use serde_json::json;

use lowdisc::{DigitVector, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Decimal values, one point per row; lossy, for plotting only.
    Csv,
    /// Digit texts wrapped in a JSON object.
    Json,
    /// Canonical lossless digit text with a header line.
    Digits,
}

pub fn render_points(ps: &PointSet, format: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Digits => {
            writeln!(out, "base={} m={} s={}", ps.base(), ps.precision(), ps.dim())?;
            for point in ps.iter() {
                let row: Vec<String> = point.coords().iter().map(|c| c.to_string()).collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
        OutputFormat::Csv => {
            let header: Vec<String> = (1..=ps.dim()).map(|i| format!("x{}", i)).collect();
            writeln!(out, "{}", header.join(","))?;
            for row in ps.values() {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| {
                        let num = v.numer().to_f64().unwrap_or(f64::NAN);
                        let den = v.denom().to_f64().unwrap_or(f64::NAN);
                        format!("{}", num / den)
                    })
                    .collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        OutputFormat::Json => {
            let points: Vec<Vec<String>> = ps
                .iter()
                .map(|p| p.coords().iter().map(|c| c.to_string()).collect())
                .collect();
            let doc = json!({
                "base": ps.base(),
                "m": ps.precision(),
                "s": ps.dim(),
                "points": points,
            });
            out = serde_json::to_string_pretty(&doc)?;
            out.push('\n');
        }
    }
    Ok(out)
}

/// Loads a `digits` file. Anything else is rejected: CSV explicitly (it is
/// lossy), empty files explicitly (an empty point set is an error, not a
/// degenerate success).
pub fn load_points(path: &Path) -> Result<PointSet> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read points file {}", path.display()))?;
    if text.trim().is_empty() {
        bail!("points file {} is empty", path.display());
    }
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let (base, m, s) = parse_header(header).ok_or_else(|| {
        if looks_like_csv(header) {
            anyhow::anyhow!(
                "{} looks like a CSV file; decimal CSV is lossy and refused as \
                 certification input, regenerate with --format digits",
                path.display()
            )
        } else {
            anyhow::anyhow!(
                "{}: malformed header {:?}, expected \"base=<b> m=<m> s=<s>\"",
                path.display(),
                header
            )
        }
    })?;
    let mut points = Vec::new();
    for (index, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let coords: Vec<DigitVector> = line
            .split('\t')
            .map(|cell| {
                DigitVector::from_str(cell.trim())
                    .map_err(|e| anyhow::anyhow!("line {}: {}", index + 2, e))
            })
            .collect::<Result<_>>()?;
        if coords.len() != s {
            bail!("line {}: expected {} coordinates, found {}", index + 2, s, coords.len());
        }
        for c in &coords {
            if c.base() != base || c.precision() != m {
                bail!(
                    "line {}: coordinate {} does not match header base={} m={}",
                    index + 2,
                    c,
                    base,
                    m
                );
            }
        }
        points.push(Point::new(coords)?);
    }
    if points.is_empty() {
        bail!("points file {} holds a header but no points", path.display());
    }
    Ok(PointSet::new(points, format!("file {}", path.display()))?)
}

fn parse_header(line: &str) -> Option<(u32, usize, usize)> {
    let mut base = None;
    let mut m = None;
    let mut s = None;
    for field in line.split_whitespace() {
        let (key, value) = field.split_once('=')?;
        match key {
            "base" => base = value.parse().ok(),
            "m" => m = value.parse().ok(),
            "s" => s = value.parse().ok(),
            _ => return None,
        }
    }
    Some((base?, m?, s?))
}

fn looks_like_csv(header: &str) -> bool {
    let column = |c: &str| {
        let c = c.trim();
        c.parse::<f64>().is_ok()
            || (c.strip_prefix('x').is_some_and(|rest| rest.parse::<u32>().is_ok()))
    };
    header.contains(',') || header.split(',').all(column)
}

/// Splits a polynomial list on commas that sit outside brackets, so both
/// `x,x+1` and `p:[1,1],p:[1,1,1]` mean two polynomials.
pub fn split_poly_list(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        parts.push(current.trim().to_string());
    }
    parts
}
