use std::io::{self, Write};

use crate::spaces::Point;

/// One row of a run trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    /// `f(xᵏ)`.
    pub f: f64,
    /// `min_{i=1..k} f(xⁱ)`; absent at `k = 0`.
    pub f_best: Option<f64>,
    /// `f_best - f_opt` when `f_opt` is known.
    pub gap: Option<f64>,
    /// Theoretical bound on the gap, for `k >= 2` when a bound applies.
    pub bound: Option<f64>,
}

/// Per-iteration log of a solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
    pub final_point: Point,
    /// The iterate attaining the last `f_best` (the start point when no step was taken).
    pub best_point: Point,
    /// Every iterate `x⁰..x^K`, when requested.
    pub iterates: Option<Vec<Point>>,
}

pub const CSV_HEADER: &str = "k,f,f_best,gap,bound";

impl RunTrace {
    pub fn last(&self) -> &TraceRow {
        self.rows.last().expect("trace has the k = 0 row")
    }

    /// Best value over iterates `1..=K`, falling back to `f(x⁰)` when `K = 0`.
    pub fn f_best(&self) -> f64 {
        let last = self.last();
        last.f_best.unwrap_or(last.f)
    }

    /// Writes rows with `k % stride == 0`, plus the final row.
    pub fn write_csv<W: Write>(&self, mut out: W, stride: usize) -> io::Result<()> {
        let stride = stride.max(1);
        writeln!(out, "{CSV_HEADER}")?;
        let last = self.rows.len().saturating_sub(1);
        for (i, row) in self.rows.iter().enumerate() {
            if row.k % stride != 0 && i != last {
                continue;
            }
            let opt = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
            writeln!(out, "{},{},{},{},{}", row.k, format_sig(row.f), opt(row.f_best), opt(row.gap), opt(row.bound))?;
        }
        Ok(())
    }

    pub fn to_csv(&self, stride: usize) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, stride).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Formats `x` with 12 significant digits in the style of C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let m = trim_zeros(mantissa.to_string());
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig(2.592483080882966), "2.59248308088");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(-0.25), "-0.25");
        assert_eq!(format_sig(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_sig(1.5e-7), "1.5e-07");
        assert_eq!(format_sig(0.0001234), "0.0001234");
        assert_eq!(format_sig(32.6), "32.6");
        assert_eq!(format_sig(0.0), "0");
        // rounding carries into a new leading digit
        assert_eq!(format_sig(9.9999999999999), "10");
    }

    #[test]
    fn csv_stride_keeps_last_row() {
        let row = |k| TraceRow { k, f: 1.0, f_best: (k > 0).then_some(1.0), gap: None, bound: None };
        let trace = RunTrace {
            rows: (0..=5).map(row).collect(),
            final_point: Point::euclidean([0.0]),
            best_point: Point::euclidean([0.0]),
            iterates: None,
        };
        let csv = trace.to_csv(2);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0,1,,,");
        assert_eq!(
            lines.iter().skip(1).map(|l| l.split(',').next().unwrap()).collect::<Vec<_>>(),
            ["0", "2", "4", "5"]
        );
        assert!(!csv.contains('\r'));
    }
}
