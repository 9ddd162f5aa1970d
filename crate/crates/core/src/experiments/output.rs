//! CSV tables and gnuplot-ready series files.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::ExperimentRow;
use crate::error::ExperimentError;

pub const CSV_HEADER: &str = "id,nodes,divisor,max_ply,virtual_budget,solved,step";

/// At most two decimals, trailing zeros dropped: `1`, `1.25`, `1.5`.
fn real(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

/// Write the header and one line per row. Ids must run 1, 2, 3, ...
pub fn emit_csv(rows: &[ExperimentRow], out: &mut impl Write) -> Result<(), ExperimentError> {
    if rows.is_empty() {
        return Err(ExperimentError::NoRows);
    }
    for (i, r) in rows.iter().enumerate() {
        let expected = i as u32 + 1;
        if r.id != expected {
            return Err(ExperimentError::OutOfOrder { expected, found: r.id });
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| ExperimentError::Csv { line: 0, message: e.to_string() };
    w.write_record(CSV_HEADER.split(',')).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.id.to_string(),
            r.nodes.to_string(),
            real(r.divisor),
            r.max_ply.to_string(),
            real(r.virtual_budget),
            u8::from(r.solved).to_string(),
            real(r.step),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| ExperimentError::Csv {
        line: 0,
        message: e.to_string(),
    })?;
    out.write_all(&bytes)?;
    Ok(())
}

pub fn write_csv(rows: &[ExperimentRow], path: &Path) -> Result<(), ExperimentError> {
    let mut buf = Vec::new();
    emit_csv(rows, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

#[derive(Deserialize)]
struct CsvRow {
    id: u32,
    nodes: u64,
    divisor: f64,
    max_ply: u32,
    virtual_budget: f64,
    solved: u8,
    step: f64,
}

/// Read back a table produced by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRow>, ExperimentError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| ExperimentError::Csv {
        line: 1,
        message: e.to_string(),
    })?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(ExperimentError::Csv {
            line: 1,
            message: format!("expected header '{CSV_HEADER}'"),
        });
    }
    reader
        .deserialize::<CsvRow>()
        .enumerate()
        .map(|(i, rec)| {
            let err = |message: String| ExperimentError::Csv { line: i + 2, message };
            let r = rec.map_err(|e| err(e.to_string()))?;
            let solved = match r.solved {
                0 => false,
                1 => true,
                other => return Err(err(format!("solved must be 0 or 1, found {other}"))),
            };
            Ok(ExperimentRow {
                id: r.id,
                nodes: r.nodes,
                divisor: r.divisor,
                max_ply: r.max_ply,
                virtual_budget: r.virtual_budget,
                solved,
                step: r.step,
            })
        })
        .collect()
}

/// One plot's data: a file name, a header line and the data lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotSeries {
    pub file_name: &'static str,
    pub header: &'static str,
    pub lines: Vec<String>,
}

impl PlotSeries {
    pub fn render(&self) -> String {
        let mut s = format!("{}\n", self.header);
        for line in &self.lines {
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

/// The four series: nodes against divisor for solved rows and for unsolved
/// rows, budget against divisor with the solved flag, and deepest ply
/// against divisor.
pub fn plot_series(rows: &[ExperimentRow]) -> Vec<PlotSeries> {
    let nodes = |solved: bool| -> Vec<String> {
        rows.iter()
            .filter(|r| r.solved == solved)
            .map(|r| format!("{},{}", real(r.divisor), r.nodes))
            .collect()
    };
    vec![
        PlotSeries {
            file_name: "nodes_vs_divisor_solved.csv",
            header: "divisor,nodes",
            lines: nodes(true),
        },
        PlotSeries {
            file_name: "nodes_vs_divisor_unsolved.csv",
            header: "divisor,nodes",
            lines: nodes(false),
        },
        PlotSeries {
            file_name: "budget_vs_divisor.csv",
            header: "divisor,virtual_budget,solved",
            lines: rows
                .iter()
                .map(|r| format!("{},{},{}", real(r.divisor), real(r.virtual_budget), u8::from(r.solved)))
                .collect(),
        },
        PlotSeries {
            file_name: "max_ply_vs_divisor.csv",
            header: "divisor,max_ply,solved",
            lines: rows
                .iter()
                .map(|r| format!("{},{},{}", real(r.divisor), r.max_ply, u8::from(r.solved)))
                .collect(),
        },
    ]
}

/// Write the four series into `dir`, creating it if needed. Returns the
/// paths written.
pub fn emit_plot_series(rows: &[ExperimentRow], dir: &Path) -> Result<Vec<PathBuf>, ExperimentError> {
    std::fs::create_dir_all(dir)?;
    plot_series(rows)
        .into_iter()
        .map(|series| {
            let path = dir.join(series.file_name);
            std::fs::write(&path, series.render())?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: u32, divisor: f64, solved: bool) -> ExperimentRow {
        ExperimentRow {
            id,
            nodes: 1000 * id as u64,
            divisor,
            max_ply: 12,
            virtual_budget: 16.0 + id as f64,
            solved,
            step: 6.0,
        }
    }

    #[test]
    fn reals_use_at_most_two_decimals() {
        assert_eq!(real(1.0), "1");
        assert_eq!(real(1.25), "1.25");
        assert_eq!(real(1.5), "1.5");
        assert_eq!(real(4.75), "4.75");
        assert_eq!(real(2.0 / 3.0), "0.67");
    }

    #[test]
    fn single_row_table() {
        let mut buf = Vec::new();
        emit_csv(&[row(1, 1.0, true)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n1,1000,1,12,17,1,6\n"));
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn round_trip() {
        let rows = vec![row(1, 1.0, true), row(2, 1.25, false), row(3, 3.75, true)];
        let mut buf = Vec::new();
        emit_csv(&rows, &mut buf).unwrap();
        assert_eq!(parse_csv(std::str::from_utf8(&buf).unwrap()).unwrap(), rows);
    }

    #[test]
    fn ids_must_be_sequential() {
        let mut buf = Vec::new();
        let err = emit_csv(&[row(2, 1.0, true), row(1, 1.0, true)], &mut buf).unwrap_err();
        assert!(matches!(err, ExperimentError::OutOfOrder { expected: 1, found: 2 }));
        assert!(buf.is_empty());
        assert!(matches!(emit_csv(&[], &mut buf), Err(ExperimentError::NoRows)));
    }

    #[test]
    fn series_split_by_outcome() {
        let series = plot_series(&[row(1, 1.0, true), row(2, 1.25, true)]);
        assert_eq!(series.len(), 4);
        assert_eq!(series[0].lines, vec!["1,1000", "1.25,2000"]);
        assert!(series[1].lines.is_empty());
        assert_eq!(series[1].render(), "divisor,nodes\n");
        let one = plot_series(&[row(1, 2.0, false)]);
        assert!(one.iter().all(|s| s.lines.len() <= 1));
    }
}
