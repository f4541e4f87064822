//! Line-oriented text format for externally sampled functions.
//!
//! ```text
//! dim n R normalized
//! re im            # n^d lines, row-major
//! ```

use num_complex::Complex64;

use super::catalog::CatalogFunction;
use crate::error::{Error, Result};
use crate::numerics::{Grid, SampledFunction};

pub fn parse_custom_grid(text: &str, source: &str) -> Result<CatalogFunction> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("custom grid: missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::Parse(format!(
            "line {line_no}: header must be `dim n R normalized`"
        )));
    }
    let num = |s: &str, what: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("line {line_no}: malformed {what} `{s}`")))
    };
    let dim = fields[0]
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("line {line_no}: malformed dim `{}`", fields[0])))?;
    let n = fields[1]
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("line {line_no}: malformed n `{}`", fields[1])))?;
    let r = num(fields[2], "R")?;
    let normalized = match fields[3] {
        "1" | "true" => true,
        "0" | "false" => false,
        other => {
            return Err(Error::Parse(format!(
                "line {line_no}: normalized flag must be 0/1/true/false, got `{other}`"
            )))
        }
    };
    let grid = Grid::new(dim, r, n)?;

    let mut values = Vec::with_capacity(grid.len());
    for (line_no, line) in lines {
        let mut parts = line.split_whitespace();
        let mut next = |what| -> Result<f64> {
            let s = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {line_no}: missing {what}")))?;
            s.parse::<f64>()
                .map_err(|_| Error::Parse(format!("line {line_no}: malformed {what} `{s}`")))
        };
        let re = next("re")?;
        let im = next("im")?;
        values.push(Complex64::new(re, im));
    }
    let samples = SampledFunction::new(grid, values)?;
    if normalized && !samples.is_normalized() {
        return Err(Error::InvalidParameter(format!(
            "custom grid declared normalized but ∫|f|² = {}",
            samples.norm_sq()
        )));
    }
    Ok(CatalogFunction::CustomGrid {
        source: source.to_string(),
        samples,
    })
}

pub fn load_custom_grid(path: &std::path::Path) -> Result<CatalogFunction> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_custom_grid(&text, &path.display().to_string())
}

/// Serialises samples in the format read by [`parse_custom_grid`].
pub fn write_custom_grid(samples: &SampledFunction, normalized: bool) -> String {
    let g = samples.grid();
    let mut out = format!(
        "{} {} {:?} {}\n",
        g.dim(),
        g.points_per_axis(),
        g.halfwidth(),
        u8::from(normalized)
    );
    for v in samples.values() {
        out.push_str(&format!("{:?} {:?}\n", v.re, v.im));
    }
    out
}
