//! Channel files and CSV outputs.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::outerbound::ConverseReport;
use crate::regions::{RatePair, RegionPolygon, SupportCurve};
use crate::scalar::Real;

/// On-disk channel description. `p1` and `p2` may be omitted and supplied
/// separately.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub input_size: usize,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    #[serde(default)]
    pub p1: Option<f64>,
    #[serde(default)]
    pub p2: Option<f64>,
}

impl ChannelFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        if file.f1.len() != file.input_size {
            return Err(Error::MapLength {
                which: "f1",
                len: file.f1.len(),
                expected: file.input_size,
            });
        }
        if file.f2.len() != file.input_size {
            return Err(Error::MapLength {
                which: "f2",
                len: file.f2.len(),
                expected: file.input_size,
            });
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds the spec; explicit probabilities override those in the file.
    pub fn spec<T: Real>(&self, p1: Option<f64>, p2: Option<f64>) -> Result<ChannelSpec<T>> {
        let p1 = p1.or(self.p1).ok_or_else(|| Error::Input("p1 is not set".into()))?;
        let p2 = p2.or(self.p2).ok_or_else(|| Error::Input("p2 is not set".into()))?;
        ChannelSpec::new(self.f1.clone(), self.f2.clone(), T::lit(p1), T::lit(p2))
    }
}

/// Formats like C's `%.9g`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    const P: i32 = 9;
    let sci = format!("{:.*e}", (P - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= P {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn header(p: Option<(f64, f64)>) -> String {
    match p {
        Some((p1, p2)) => format!("# p1={},p2={}\n", fmt_num(p1), fmt_num(p2)),
        None => String::new(),
    }
}

/// `r1,r2` rows with the first vertex repeated at the end.
pub fn polygon_csv<T: Real>(poly: &RegionPolygon<T>, p: Option<(f64, f64)>) -> String {
    let mut out = header(p);
    out.push_str("r1,r2\n");
    let v = poly.vertices();
    for q in v.iter().chain(v.first()) {
        let _ = writeln!(out, "{},{}", fmt_num(q.r1.as_f64()), fmt_num(q.r2.as_f64()));
    }
    out
}

/// Several polygons in one table, `region,r1,r2`.
pub fn regions_csv<T: Real>(polys: &[RegionPolygon<T>], p: Option<(f64, f64)>) -> String {
    let mut out = header(p);
    out.push_str("region,r1,r2\n");
    for poly in polys {
        let v = poly.vertices();
        for q in v.iter().chain(v.first()) {
            let _ = writeln!(out, "{},{},{}", poly.label(), fmt_num(q.r1.as_f64()), fmt_num(q.r2.as_f64()));
        }
    }
    out
}

pub fn support_csv<T: Real>(curve: &SupportCurve<T>, p: Option<(f64, f64)>) -> String {
    let mut out = header(p);
    let width = curve.samples.first().map_or(0, |s| s.argmax.len());
    out.push_str("lambda,value,case");
    for i in 0..width {
        let _ = write!(out, ",px{i}");
    }
    out.push('\n');
    for s in &curve.samples {
        let _ = write!(out, "{},{},{}", fmt_num(s.lambda.as_f64()), fmt_num(s.value.as_f64()), s.case);
        for w in s.argmax.weights() {
            let _ = write!(out, ",{}", fmt_num(w.as_f64()));
        }
        out.push('\n');
    }
    out
}

/// Per-slope rows followed by a `summary,<max_gap>,<tolerance>,<pass>` line.
pub fn converse_csv<T: Real>(report: &ConverseReport<T>, p: Option<(f64, f64)>) -> String {
    let mut out = header(p);
    out.push_str("lambda,inner,outer,gap,case\n");
    for s in &report.samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(s.lambda.as_f64()),
            fmt_num(s.inner.as_f64()),
            fmt_num(s.outer.as_f64()),
            fmt_num(s.gap.as_f64()),
            s.case
        );
    }
    let _ = writeln!(
        out,
        "summary,{},{},{}",
        fmt_num(report.max_gap.as_f64()),
        fmt_num(report.tolerance.as_f64()),
        report.pass
    );
    out
}

/// Reads the vertices back from [`polygon_csv`] output, dropping the
/// repeated closing vertex.
pub fn read_polygon_csv(text: &str) -> Result<Vec<RatePair<f64>>> {
    let mut rows = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    match rows.next() {
        Some("r1,r2") => {}
        other => return Err(Error::Csv(format!("expected header r1,r2, found {other:?}"))),
    }
    let mut pts = Vec::new();
    for (i, line) in rows.enumerate() {
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| Error::Csv(format!("row {}: expected two fields", i + 1)))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Csv(format!("row {}: {e}", i + 1)))
        };
        pts.push(RatePair::new(parse(a)?, parse(b)?));
    }
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    Ok(pts)
}
