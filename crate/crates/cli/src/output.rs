//! CSV tables and single-series SVG charts.

use std::fmt::Write;

/// One CSV row in the common schema plus optional trailing columns.
#[derive(Debug, Clone, Default)]
pub struct Row {
    pub x: Option<f64>,
    pub direction: Vec<f64>,
    pub delta_a: Option<f64>,
    pub delta_b: Option<f64>,
    pub up: Option<f64>,
    pub sum_functional: Option<f64>,
    pub flag: String,
    pub extra: Vec<Option<f64>>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: String,
    pub function: String,
    pub param: String,
    pub dim: usize,
    pub extra_columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

/// Shortest representation that parses back to the same `f64`.
fn num(v: Option<f64>) -> String {
    match v {
        Some(x) if x == 0.0 || (1e-4..1e15).contains(&x.abs()) => format!("{x}"),
        Some(x) => format!("{x:e}"),
        None => String::new(),
    }
}

fn cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec!["command".to_string(), "function".into(), "param".into(), "λ_or_angle".into()];
        header.extend((1..=self.dim).map(|k| format!("L{k}")));
        header.extend(["delta_A", "delta_B", "up", "sum_functional", "flag"].map(String::from));
        header.extend(self.extra_columns.iter().map(|s| s.to_string()));
        out.push_str(&header.join(","));
        out.push('\n');
        for r in &self.rows {
            let mut cells = vec![cell(&self.command), cell(&self.function), cell(&self.param), num(r.x)];
            for k in 0..self.dim {
                cells.push(num(r.direction.get(k).copied()));
            }
            cells.extend([r.delta_a, r.delta_b, r.up, r.sum_functional].map(num));
            cells.push(cell(&r.flag));
            for k in 0..self.extra_columns.len() {
                cells.push(num(r.extra.get(k).copied().flatten()));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `up` against the sweep variable, or against the row index when there is none.
    pub fn svg(&self) -> String {
        let points: Vec<(f64, f64)> = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| Some((r.x.unwrap_or(i as f64), r.up?)))
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        let xlabel = if self.rows.iter().any(|r| r.x.is_some()) { "λ_or_angle" } else { "row" };
        polyline(&points, &format!("{} {}", self.command, self.function), xlabel, "up")
    }
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 56.0;

fn polyline(points: &[(f64, f64)], title: &str, xlabel: &str, ylabel: &str) -> String {
    let span = |f: fn(&(f64, f64)) -> f64| {
        let lo = points.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        match (lo.is_finite(), hi > lo) {
            (true, true) => (lo, hi),
            (true, false) => (lo - 0.5, lo + 0.5),
            _ => (0.0, 1.0),
        }
    };
    let (x0, x1) = span(|p| p.0);
    let (y0, y1) = span(|p| p.1);
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle">{}</text>"#, W / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    for (v, x, y, anchor) in [
        (x0, sx(x0), H - PAD + 18.0, "start"),
        (x1, sx(x1), H - PAD + 18.0, "end"),
    ] {
        let _ = writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{}</text>"#, short(v));
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, PAD - 6.0, y + 4.0, short(v));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 12.0, escape(xlabel));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        coords.join(" ")
    );
    s.push_str("</svg>\n");
    s
}

fn short(v: f64) -> String {
    format!("{v:.4}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            command: "compute".into(),
            function: "gaussian_diag".into(),
            param: "1;4".into(),
            dim: 2,
            extra_columns: vec!["error"],
            rows: vec![Row {
                direction: vec![1.0, 0.0],
                up: Some(0.25),
                flag: "a,b".into(),
                extra: vec![Some(0.1)],
                ..Row::default()
            }],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = table().csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "command,function,param,λ_or_angle,L1,L2,delta_A,delta_B,up,sum_functional,flag,error"
        );
        assert_eq!(lines.next().unwrap(), "compute,gaussian_diag,1;4,,1,0,,,0.25,,\"a,b\",0.1");
    }

    #[test]
    fn round_trip_floats() {
        for x in [0.1 + 0.2, 5.441756680492265e-9, -3.2e20, 1.0 / 3.0] {
            assert_eq!(num(Some(x)).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(Some(5e-9)), "5e-9");
    }

    #[test]
    fn svg_has_polyline() {
        let svg = table().svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polyline"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
