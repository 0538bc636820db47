//! CSV import and export of masks, gains and margins.

use std::io::{Read, Write};

use thiserror::Error;
use vdemask_core::compliance::ComplianceReport;
use vdemask_core::{AntennaPattern, MaskSample, PfdMask};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{source_name}: {message}")]
    Malformed {
        source_name: String,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Two decimals, with negative zero printed as zero.
pub fn fmt2(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

/// Column suffix for a reference bandwidth, e.g. `4khz`.
pub fn bandwidth_suffix(hz: f64) -> String {
    if hz >= 1e3 && (hz / 1e3).fract() == 0.0 {
        format!("{}khz", hz / 1e3)
    } else {
        format!("{hz}hz")
    }
}

pub fn single_mask_header(ref_bandwidth: f64) -> String {
    format!("pfd_dbw_m2_{}", bandwidth_suffix(ref_bandwidth))
}

/// One named column; `None` cells are written empty.
pub struct Column {
    pub name: String,
    pub values: Vec<Option<f64>>,
}

impl Column {
    pub fn from_mask(name: impl Into<String>, mask: &PfdMask) -> Self {
        Self {
            name: name.into(),
            values: mask.samples().iter().map(|s| Some(s.pfd)).collect(),
        }
    }

    /// `mask` resampled onto `thetas`, blank where it has no coverage.
    pub fn resampled(name: impl Into<String>, mask: &PfdMask, thetas: &[f64]) -> Self {
        Self {
            name: name.into(),
            values: thetas.iter().map(|&t| mask.value_at(t)).collect(),
        }
    }
}

pub fn write_columns<W: Write>(
    out: W,
    thetas: &[f64],
    columns: &[Column],
) -> Result<(), TableError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["theta_deg".to_string()];
    header.extend(columns.iter().map(|c| c.name.clone()));
    w.write_record(&header)?;
    for (i, &t) in thetas.iter().enumerate() {
        let mut rec = vec![fmt2(t)];
        for c in columns {
            rec.push(c.values[i].map(fmt2).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_mask<W: Write>(out: W, mask: &PfdMask) -> Result<(), TableError> {
    let thetas: Vec<f64> = mask.thetas().collect();
    write_columns(
        out,
        &thetas,
        &[Column::from_mask(
            single_mask_header(mask.ref_bandwidth()),
            mask,
        )],
    )
}

pub fn write_gains<W: Write>(
    out: W,
    thetas: &[f64],
    base: &AntennaPattern,
    mobile: &AntennaPattern,
) -> Result<(), TableError> {
    let col = |name: &str, p: &AntennaPattern| -> Result<Column, TableError> {
        let values = p.gain_curve(thetas).map_err(|e| TableError::Malformed {
            source_name: "gain".into(),
            message: e.to_string(),
        })?;
        Ok(Column {
            name: name.into(),
            values: values.into_iter().map(Some).collect(),
        })
    };
    write_columns(
        out,
        thetas,
        &[col("gain_base_dbi", base)?, col("gain_mobile_dbi", mobile)?],
    )
}

pub fn write_margins<W: Write>(
    out: W,
    report: &ComplianceReport,
    ref_bandwidth: f64,
) -> Result<(), TableError> {
    let thetas: Vec<f64> = report.per_theta.iter().map(|s| s.theta).collect();
    let suffix = bandwidth_suffix(ref_bandwidth);
    let pick = |name: String, f: fn(&vdemask_core::compliance::MarginSample) -> f64| Column {
        name,
        values: report.per_theta.iter().map(|s| Some(f(s))).collect(),
    };
    write_columns(
        out,
        &thetas,
        &[
            pick(format!("mask_dbw_m2_{suffix}"), |s| s.mask),
            pick(format!("sat_pfd_dbw_m2_{suffix}"), |s| s.satellite_pfd),
            pick("margin_db".into(), |s| s.margin),
        ],
    )
}

/// Reads a two-column `theta_deg,<pfd>` CSV into a mask. Extra columns are
/// ignored; the label is the second header.
pub fn read_mask<R: Read>(
    input: R,
    source_name: &str,
    ref_bandwidth: f64,
) -> Result<PfdMask, TableError> {
    let bad = |message: String| TableError::Malformed {
        source_name: source_name.to_string(),
        message,
    };
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = r.headers()?.clone();
    if headers.get(0) != Some("theta_deg") || headers.len() < 2 {
        return Err(bad("expected header `theta_deg,<pfd column>`".into()));
    }
    let label = headers[1].to_string();
    let mut samples = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| -> Result<f64, TableError> {
            let text = rec.get(i).unwrap_or("");
            text.parse::<f64>()
                .map_err(|_| bad(format!("line {line}: `{text}` is not a number")))
        };
        samples.push(MaskSample {
            theta: field(0)?,
            pfd: field(1)?,
        });
    }
    PfdMask::new(label, ref_bandwidth, samples).map_err(|e| bad(e.to_string()))
}
