//! Machine-readable run records: one JSON object per invocation, CSV for
//! curves. Every number is rounded to 10 significant digits before it is
//! stored, so identical invocations emit byte-identical output and a
//! record re-parses into an equal record.

use casimir_core::model::{PistonConfig, SeriesControl};
use casimir_core::numerics::round_sig;
use casimir_core::oracle::OracleControl;
use serde::{Deserialize, Serialize};

pub const FLOAT_DIGITS: i32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub config: RecordConfig,
    pub results: Vec<ResultRow>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RecordConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cavity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub piston: Option<PistonConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bc: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesControl>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleControl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub label: String,
    pub coefficient: f64,
    pub scale: String,
    pub truncation_error: f64,
    pub provenance: String,
}

impl ResultRow {
    pub fn new(label: &str, coefficient: f64, scale: &str, error: f64, provenance: &str) -> Self {
        Self {
            label: label.to_string(),
            coefficient: round_sig(coefficient, FLOAT_DIGITS),
            scale: scale.to_string(),
            truncation_error: round_sig(error, FLOAT_DIGITS),
            provenance: provenance.to_string(),
        }
    }
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    /// Human-readable lines mirroring the record.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "{:<26} {:>17} {}  (trunc {:.3e})  [{}]\n",
                r.label,
                format!("{:.9e}", r.coefficient),
                r.scale,
                r.truncation_error,
                r.provenance
            ));
        }
        out
    }
}

/// A curve point for the CSV emitter.
pub struct CurveRow {
    pub d: f64,
    pub coefficient: f64,
    pub scale: String,
    pub error: f64,
    pub provenance: String,
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("d,coefficient,scale,error,provenance\n");
    for r in rows {
        out.push_str(&format!(
            "{:.9e},{:.9e},{},{:.9e},{}\n",
            r.d, r.coefficient, r.scale, r.error, r.provenance
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trips_through_json() {
        let rec = RunRecord {
            command: "energy".into(),
            config: RecordConfig {
                cavity: Some("hemisphere".into()),
                bc: Some("em".into()),
                radius: Some(1.0),
                series: Some(SeriesControl::default()),
                ..RecordConfig::default()
            },
            results: vec![ResultRow::new(
                "hemisphere",
                0.07242990038522094,
                "hbar*c/R",
                1.234e-9,
                "series-truncated",
            )],
        };
        let json = rec.to_json();
        let back: RunRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec, back);
        // identical construction yields identical bytes
        assert_eq!(json, back.to_json());
    }

    #[test]
    fn csv_layout_is_fixed() {
        let rows = vec![CurveRow {
            d: 1.0,
            coefficient: -1.2098918581106036e-4,
            scale: "hbar*c*L/R^2".into(),
            error: 2.0e-10,
            provenance: "series-truncated".into(),
        }];
        let csv = curve_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "d,coefficient,scale,error,provenance"
        );
        assert_eq!(
            lines.next().unwrap(),
            "1.000000000e0,-1.209891858e-4,hbar*c*L/R^2,2.000000000e-10,series-truncated"
        );
    }
}
