use std::fmt;
use std::str::FromStr;

use super::ScanError;

/// Largest grid accepted, to keep scans and parsers bounded.
pub const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Scan points: an explicit list or `count` points from `min` to `max`.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Explicit(Vec<f64>),
    Range {
        min: f64,
        max: f64,
        count: usize,
        spacing: Spacing,
    },
}

impl Grid {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Self::Range {
            min,
            max,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self::Range {
            min,
            max,
            count,
            spacing: Spacing::Log,
        }
    }

    /// The grid points, checked to be finite, non-empty and strictly
    /// monotone.
    pub fn values(&self) -> Result<Vec<f64>, ScanError> {
        let values = match *self {
            Self::Explicit(ref v) => v.clone(),
            Self::Range {
                min,
                max,
                count,
                spacing,
            } => expand(min, max, count, spacing)?,
        };
        check_monotone(&values)?;
        Ok(values)
    }
}

fn expand(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Vec<f64>, ScanError> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(ScanError::Usage(format!(
            "grid bounds must be finite, got {min}:{max}"
        )));
    }
    if count == 0 || count > MAX_GRID_POINTS {
        return Err(ScanError::Usage(format!(
            "grid count must be in 1..={MAX_GRID_POINTS}, got {count}"
        )));
    }
    if count == 1 {
        return if min == max {
            Ok(vec![min])
        } else {
            Err(ScanError::Usage("a one-point grid needs min == max".into()))
        };
    }
    let last = (count - 1) as f64;
    let values = match spacing {
        Spacing::Linear => (0..count)
            .map(|i| match i {
                0 => min,
                i if i == count - 1 => max,
                i => min + (max - min) * (i as f64 / last),
            })
            .collect(),
        Spacing::Log => {
            if !(min > 0.0 && max > 0.0) {
                return Err(ScanError::Usage(format!(
                    "log grid bounds must be positive, got {min}:{max}"
                )));
            }
            let (lo, hi) = (min.log10(), max.log10());
            (0..count)
                .map(|i| match i {
                    0 => min,
                    i if i == count - 1 => max,
                    i => 10f64.powf(lo + (hi - lo) * (i as f64 / last)),
                })
                .collect()
        }
    };
    Ok(values)
}

fn check_monotone(values: &[f64]) -> Result<(), ScanError> {
    if values.is_empty() {
        return Err(ScanError::Usage("grid is empty".into()));
    }
    if values.len() > MAX_GRID_POINTS {
        return Err(ScanError::Usage(format!(
            "grid has more than {MAX_GRID_POINTS} points"
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(ScanError::Usage(format!("grid value {v} is not finite")));
    }
    let increasing = values.windows(2).all(|w| w[0] < w[1]);
    let decreasing = values.windows(2).all(|w| w[0] > w[1]);
    if increasing || decreasing {
        Ok(())
    } else {
        Err(ScanError::Usage("grid must be strictly monotone".into()))
    }
}

impl FromStr for Grid {
    type Err = ScanError;

    /// `min:max:count:lin|log`, or a comma-separated list of values.
    fn from_str(s: &str) -> Result<Self, ScanError> {
        let s = s.trim();
        let bad = |what: &str| ScanError::Usage(format!("invalid grid {s:?}: {what}"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').map(str::trim).collect();
            let [min, max, count, spacing] = parts.as_slice() else {
                return Err(bad("expected min:max:count:lin|log"));
            };
            let min: f64 = min.parse().map_err(|_| bad("min is not a number"))?;
            let max: f64 = max.parse().map_err(|_| bad("max is not a number"))?;
            let count: usize = count
                .parse()
                .map_err(|_| bad("count is not a non-negative integer"))?;
            let spacing = match *spacing {
                "lin" | "linear" => Spacing::Linear,
                "log" => Spacing::Log,
                _ => return Err(bad("spacing must be lin or log")),
            };
            let grid = Self::Range {
                min,
                max,
                count,
                spacing,
            };
            grid.values()?;
            return Ok(grid);
        }
        if s.is_empty() {
            return Err(ScanError::Usage("grid is empty".into()));
        }
        let values = s
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| bad("list entries must be numbers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let grid = Self::Explicit(values);
        grid.values()?;
        Ok(grid)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x:e}")).collect();
                f.write_str(&parts.join(";"))
            }
            Self::Range {
                min,
                max,
                count,
                spacing,
            } => {
                let s = match spacing {
                    Spacing::Linear => "lin",
                    Spacing::Log => "log",
                };
                write!(f, "{min:e}:{max:e}:{count}:{s}")
            }
        }
    }
}
