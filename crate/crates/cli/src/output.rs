//! Argument parsing helpers, number formatting, grids and CSV emission.

use std::fmt::Write as _;

use foxbarnes::Complex64;
use rayon::prelude::*;

use crate::CliError;

/// Parses `re,im` or a bare real number.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Parse(format!("cannot parse {text:?} as re,im"));
    let mut parts = text.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        None => 0.0,
        Some(v) => v.map_err(|_| bad())?,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// Evenly spaced real points `lo, lo + step, …, hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Grid {
    /// Parses `lo:hi:step` with `lo ≤ hi` and `step > 0`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Parse(format!("grid {text:?}: {why}"));
        let v: Vec<f64> = text
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("expected lo:hi:step"))?;
        let [lo, hi, step] = v[..] else { return Err(bad("expected lo:hi:step")) };
        if !(lo.is_finite() && hi.is_finite() && step.is_finite() && step > 0.0 && lo <= hi) {
            return Err(bad("need finite lo ≤ hi and step > 0"));
        }
        if (hi - lo) / step > 1e6 {
            return Err(bad("more than a million points"));
        }
        Ok(Self { lo, hi, step })
    }

    /// The points, computed as `lo + k·step` so that they do not accumulate
    /// rounding. The end point is included when it is within `1e-9` steps.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

/// `x` in fixed decimal notation with `digits` significant digits.
pub fn fixed(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    // Round in scientific form first so that the exponent reflects carries.
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// `re ± im i` with `digits` significant digits per part.
pub fn complex_text(z: Complex64, digits: usize) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", fixed(z.re, digits), fixed(z.im.abs(), digits))
}

/// One CSV row: argument, value and absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub x: f64,
    pub value: Complex64,
    pub abs_error: f64,
}

/// CSV text with header `z,re,im,abs_err` and 12 significant digits.
pub fn csv(rows: &[CsvRow]) -> String {
    let mut out = String::from("z,re,im,abs_err\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fixed(r.x, 12),
            fixed(r.value.re, 12),
            fixed(r.value.im, 12),
            fixed(r.abs_error, 12)
        );
    }
    out
}

/// Thread cap from `FOXBARNES_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("FOXBARNES_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Parse(format!("FOXBARNES_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

/// Evaluates `f` at every point concurrently, keeping grid order. The first
/// failure in grid order is returned.
pub fn evaluate_grid<F>(points: &[f64], f: F) -> Result<Vec<CsvRow>, CliError>
where
    F: Fn(f64) -> Result<CsvRow, CliError> + Sync,
{
    let run = || points.par_iter().map(|&x| f(x)).collect::<Vec<_>>();
    let results = match thread_cap()? {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Parse(format!("cannot start {n} threads: {e}")))?
            .install(run),
    };
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_notation() {
        assert_eq!(fixed(1.0, 12), "1.00000000000");
        assert_eq!(fixed(1.854566539578, 12), "1.85456653958");
        assert_eq!(fixed(-0.00123456789012345, 12), "-0.00123456789012");
        assert_eq!(fixed(123456.0, 3), "123456");
        assert_eq!(fixed(9.9999999999999, 12), "10.0000000000");
        assert_eq!(fixed(0.0, 12), "0");
    }

    #[test]
    fn grids() {
        let g = Grid::parse("0:5:0.05").unwrap();
        let p = g.points();
        assert_eq!(p.len(), 101);
        assert_eq!(p[100], 5.0);
        assert_eq!(Grid::parse("1:1:0.5").unwrap().points(), vec![1.0]);
        for bad in ["1:0:0.1", "0:1", "0:1:0", "a:b:c", "0:1:-1"] {
            assert!(Grid::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("1,0").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5, 2").unwrap(), Complex64::new(-0.5, 2.0));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        for bad in ["", "1,2,3", "x", "nan,0", "1,"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn csv_layout() {
        let rows = [CsvRow { x: 0.5, value: Complex64::new(0.25, -1e-3), abs_error: 1e-9 }];
        assert_eq!(csv(&rows), "z,re,im,abs_err\n0.500000000000,0.250000000000,-0.00100000000000,0.00000000100000000000\n");
    }
}
