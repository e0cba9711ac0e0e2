//! Curve records, CSV ingestion and per-curve result records.

use std::io::Read;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::curve::{global_root_number, GlobalOptions, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::galois_rep::LocalRepData;
use crate::lawful::{classify, Flavor, LawfulVerdict};
use crate::poly;
use crate::rootnum::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub coeffs: Vec<BigInt>,
    pub label: Option<String>,
    pub conductor: Option<u64>,
    pub expected: Option<Flavor>,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    coeffs: String,
    label: Option<String>,
    conductor: Option<String>,
    expected: Option<String>,
}

fn non_empty(s: Option<String>) -> Option<String> {
    s.map(|v| v.trim().to_string()).filter(|v| !v.is_empty())
}

/// Reads `coeffs;label;conductor;expected` rows with a header line.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<CurveRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b';')
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<RawRow>().enumerate() {
        let row = row.map_err(|e| Error::Invalid(format!("row {}: {e}", i + 1)))?;
        let coeffs = poly::parse_coeffs(&row.coeffs)
            .map_err(|e| Error::Invalid(format!("row {}: {e}", i + 1)))?;
        let conductor = match non_empty(row.conductor) {
            Some(c) => Some(
                c.parse::<u64>()
                    .map_err(|_| Error::Invalid(format!("row {}: bad conductor {c}", i + 1)))?,
            ),
            None => None,
        };
        let expected =
            match non_empty(row.expected) {
                Some(e) => Some(Flavor::parse(&e).ok_or_else(|| {
                    Error::Invalid(format!("row {}: bad expected value {e}", i + 1))
                })?),
                None => None,
            };
        out.push(CurveRecord {
            coeffs,
            label: non_empty(row.label),
            conductor,
            expected,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSummary {
    pub p: u64,
    pub data: LocalRepData,
    pub w: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub label: String,
    pub places: Vec<PlaceSummary>,
    pub archimedean: Option<Sign>,
    pub global_w: Option<Sign>,
    pub verdict: Option<LawfulVerdict>,
    pub error: Option<String>,
}

impl ResultRecord {
    pub fn flavor(&self) -> Option<Flavor> {
        self.verdict.as_ref().map(|v| v.flavor)
    }
}

/// Global root number and lawfulness of one record; errors are captured
/// in the record.
pub fn evaluate(rec: &CurveRecord, base: &GlobalOptions) -> ResultRecord {
    let label = rec
        .label
        .clone()
        .unwrap_or_else(|| poly::format_coeffs(&rec.coeffs));
    let mut out = ResultRecord {
        label,
        places: vec![],
        archimedean: None,
        global_w: None,
        verdict: None,
        error: None,
    };
    let opts = GlobalOptions {
        conductor: rec.conductor.or(base.conductor),
        ..base.clone()
    };
    let run = || -> Result<(crate::curve::GlobalResult, LawfulVerdict)> {
        let curve = HyperellipticCurve::new(rec.coeffs.clone())?;
        let g = global_root_number(&curve, &opts)?;
        let v = classify(&curve, &opts)?;
        Ok((g, v))
    };
    match run() {
        Ok((g, v)) => {
            out.places = g
                .places
                .iter()
                .map(|pl| PlaceSummary {
                    p: pl.p,
                    data: pl.data.clone(),
                    w: pl.w.value,
                })
                .collect();
            out.archimedean = Some(g.archimedean);
            out.global_w = Some(g.value);
            out.verdict = Some(v);
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}
