//! The scan table's CSV form.
//!
//! `# key=value` comment lines carry the scan metadata, followed by the
//! header row and one line per row. Numbers have 12 significant digits.

use std::fmt::Write as _;

use super::{Row, RowStatus, ScanError, ScanTable};

pub const HEADER: &str = "axis,t_min_s,displacement_m,v_bar_over_c,kind,status";

/// Formats a value exactly as it appears in the CSV.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        "NaN".to_owned()
    }
}

/// Rounds a value to its CSV representation.
pub fn round_to_csv(x: f64) -> f64 {
    if x.is_finite() {
        format_number(x).parse().expect("formatted float parses")
    } else {
        f64::NAN
    }
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| {
            if matches!(c, ',' | '\n' | '\r') {
                ';'
            } else {
                c
            }
        })
        .collect()
}

pub fn to_csv_string(table: &ScanTable) -> String {
    let mut out = String::new();
    for (k, v) in &table.metadata {
        let _ = writeln!(out, "# {}={}", sanitize(k), sanitize(v));
    }
    out.push_str(HEADER);
    out.push('\n');
    for row in &table.rows {
        let status = match &row.status {
            RowStatus::Ok => "ok".to_owned(),
            RowStatus::Failed(msg) => format!("failed: {}", sanitize(msg)),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_number(row.axis_value),
            format_number(row.t_min),
            format_number(row.displacement),
            format_number(row.v_bar_over_c),
            sanitize(&row.kind),
            status
        );
    }
    out
}

fn parse_number(field: &str, line: usize) -> Result<f64, ScanError> {
    field.trim().parse::<f64>().map_err(|_| ScanError::Parse {
        line,
        reason: format!("{field:?} is not a number"),
    })
}

/// Parses the output of [`to_csv_string`].
pub fn parse_csv(text: &str) -> Result<ScanTable, ScanError> {
    let mut metadata = Vec::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if !seen_header {
            if let Some(rest) = raw.strip_prefix('#') {
                let rest = rest.trim_start();
                let (k, v) = rest.split_once('=').ok_or_else(|| ScanError::Parse {
                    line,
                    reason: "metadata needs key=value".into(),
                })?;
                metadata.push((k.to_owned(), v.to_owned()));
                continue;
            }
            if raw.trim_end() != HEADER {
                return Err(ScanError::Parse {
                    line,
                    reason: format!("expected header {HEADER:?}"),
                });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = raw.splitn(6, ',').collect();
        let [axis, t, d, v, kind, status] = fields.as_slice() else {
            return Err(ScanError::Parse {
                line,
                reason: "expected 6 fields".into(),
            });
        };
        let status = match status.trim_end() {
            "ok" => RowStatus::Ok,
            s => match s.strip_prefix("failed:") {
                Some(msg) => RowStatus::Failed(msg.trim_start().to_owned()),
                None => {
                    return Err(ScanError::Parse {
                        line,
                        reason: format!("unknown status {s:?}"),
                    })
                }
            },
        };
        rows.push(Row {
            axis_value: parse_number(axis, line)?,
            t_min: parse_number(t, line)?,
            displacement: parse_number(d, line)?,
            v_bar_over_c: parse_number(v, line)?,
            kind: (*kind).to_owned(),
            status,
        });
    }
    if !seen_header {
        return Err(ScanError::Parse {
            line: text.lines().count(),
            reason: "missing header".into(),
        });
    }
    Ok(ScanTable { metadata, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(x: f64, kind: &str) -> Row {
        Row {
            axis_value: x,
            t_min: 1.0 / 3.0,
            displacement: 2e-8 / 7.0,
            v_bar_over_c: 0.240_782_6,
            kind: kind.into(),
            status: RowStatus::Ok,
        }
    }

    #[test]
    fn three_rows_make_four_lines() {
        let table = ScanTable {
            metadata: vec![],
            rows: vec![row(1.0, "a"), row(2.0, "a"), row(3.0, "b")],
        };
        let s = to_csv_string(&table);
        assert_eq!(s.lines().count(), 4);
        assert!(s.ends_with('\n'));
        assert_eq!(s.lines().next().unwrap(), HEADER);
        assert_eq!(
            s.lines().nth(1).unwrap(),
            "1.00000000000e0,3.33333333333e-1,2.85714285714e-9,2.40782600000e-1,a,ok"
        );
    }

    #[test]
    fn round_trip_preserves_text() {
        let mut failed = row(4.0, "particle_particle@B=1e10");
        failed.status = RowStatus::Failed("quadrature did not converge, twice".into());
        failed.t_min = f64::NAN;
        let table = ScanTable {
            metadata: vec![
                ("figure".into(), "fig4".into()),
                ("B".into(), "1e10;1e11".into()),
            ],
            rows: vec![row(0.5, "x"), failed],
        };
        let s = to_csv_string(&table);
        let back = parse_csv(&s).unwrap();
        assert_eq!(to_csv_string(&back), s);
        assert_eq!(back.metadata, table.metadata);
        assert_eq!(
            back.rows[1].status,
            RowStatus::Failed("quadrature did not converge; twice".into())
        );
        assert!(back.rows[1].t_min.is_nan());
    }

    #[test]
    fn rejects_malformed_input() {
        for s in [
            "",
            "# k=v\n",
            "nonsense\n",
            &format!("{HEADER}\n1,2,3\n"),
            &format!("{HEADER}\n1,2,3,x,k,ok\n"),
            &format!("{HEADER}\n1,2,3,4,k,maybe\n"),
            "# novalue\n",
        ] {
            assert!(parse_csv(s).is_err(), "{s:?}");
        }
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [1.0 / 3.0, 6.02e23, -1e-300, 0.0] {
            let r = round_to_csv(x);
            assert_eq!(round_to_csv(r), r);
            assert_eq!(format_number(r), format_number(x));
        }
    }
}
