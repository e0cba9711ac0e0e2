//! Command implementations behind the `tameroot` binary. Each returns the
//! text to print, or a [`CliError`] carrying the process exit code.

use std::fmt::Write as _;
use std::fs::File;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tameroot::clusters::EpsKind;
use tameroot::corpus::{evaluate, read_csv, CurveRecord, ResultRecord};
use tameroot::curve::{
    global_root_number, is_fundamental_discriminant, twisted_conductor, GlobalOptions,
    HyperellipticCurve,
};
use tameroot::galois_rep::{analyze, LocalRepData};
use tameroot::lawful::{classify, LawfulVerdict};
use tameroot::rootnum::{local_root_number, Sign, SignedRootNumber};
use tameroot::twist::{coprime_quadratic_twist, quadratic_global_twist};
use tameroot::{arith, poly, Error};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::WildRamification { .. } => 2,
        Error::NotSquarefree => 3,
        Error::PrecisionExhausted { .. } => 4,
        Error::ToricAtEvenResidue
        | Error::WildOrEvenToric { .. }
        | Error::RamifiedAtEvenResidue => 5,
        Error::Unknown2AdicPlace => 6,
        Error::Unfactored(_) => 7,
        Error::Invalid(_) => EXIT_USAGE,
        Error::BucketMismatch { .. } => EXIT_MISMATCH,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<String, CliError>;

#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub json: bool,
    pub precision: Option<u32>,
    pub conductor: Option<u64>,
    pub good_at_2: bool,
}

impl Flags {
    pub fn options(&self) -> GlobalOptions {
        GlobalOptions {
            conductor: self.conductor,
            good_at_2: self.good_at_2,
            precision: self.precision,
            ..Default::default()
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> CliResult {
    serde_json::to_string_pretty(v).map_err(|e| CliError {
        code: EXIT_MISMATCH,
        message: e.to_string(),
    })
}

fn parse_curve(f: &str) -> Result<HyperellipticCurve, CliError> {
    let coeffs = poly::parse_coeffs(f).map_err(CliError::usage)?;
    Ok(HyperellipticCurve::new(coeffs)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterRow {
    pub size: usize,
    pub depth: String,
    pub lambda: String,
    pub gamma_order: u64,
    pub eps: EpsKind,
    pub principal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub p: u64,
    pub picture: String,
    pub clusters: Vec<ClusterRow>,
    pub data: LocalRepData,
    pub w: SignedRootNumber,
}

pub fn local_report(
    curve: &HyperellipticCurve,
    p: u64,
    flags: &Flags,
) -> Result<LocalReport, CliError> {
    if !arith::is_prime(p) {
        return Err(CliError::usage(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::WildRamification { p }.into());
    }
    let a = analyze(&curve.coeffs, p, flags.options().split_options())?;
    let clusters = a
        .invariants
        .iter()
        .map(|(&c, inv)| ClusterRow {
            size: a.picture.clusters[c].size(),
            depth: a.picture.clusters[c]
                .depth
                .map(|d| d.to_string())
                .unwrap_or_default(),
            lambda: inv.lambda.to_string(),
            gamma_order: inv.gamma_order,
            eps: inv.eps_kind,
            principal: a.principal.contains(&c),
        })
        .collect();
    let w = local_root_number(&a.rep);
    Ok(LocalReport {
        p,
        picture: a.picture.render(),
        clusters,
        data: a.rep,
        w,
    })
}

fn write_data(out: &mut String, d: &LocalRepData) {
    let m: Vec<String> = d.m.iter().map(|(e, m)| format!("m_{e}={m}")).collect();
    let _ = writeln!(
        out,
        "abelian: {}",
        if m.is_empty() {
            "none".into()
        } else {
            m.join(" ")
        }
    );
    let _ = writeln!(
        out,
        "toric: dim={} t1={} m_T={} n=({}, {}, {}, {})",
        d.dim_t, d.t1, d.m_t, d.n1, d.n2, d.n3, d.n4
    );
}

fn write_breakdown(out: &mut String, w: &SignedRootNumber) {
    for (label, s) in &w.breakdown {
        let _ = writeln!(out, "  {label}: {s}");
    }
}

pub fn cmd_local(f: &str, p: u64, flags: &Flags) -> CliResult {
    let curve = parse_curve(f)?;
    let r = local_report(&curve, p, flags)?;
    if flags.json {
        return to_json(&r);
    }
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", poly::pretty(&curve.coeffs));
    let _ = writeln!(out, "p = {p}");
    let _ = writeln!(out, "clusters: {}", r.picture);
    for c in &r.clusters {
        let _ = writeln!(
            out,
            "  size {} depth {} lambda {} gamma order {} eps {:?}{}",
            c.size,
            c.depth,
            c.lambda,
            c.gamma_order,
            c.eps,
            if c.principal { "" } else { " (not principal)" }
        );
    }
    write_data(&mut out, &r.data);
    let _ = writeln!(out, "W = {}", r.w.value);
    write_breakdown(&mut out, &r.w);
    Ok(out)
}

pub fn global_record(curve: &HyperellipticCurve, flags: &Flags) -> ResultRecord {
    let rec = CurveRecord {
        coeffs: curve.coeffs.clone(),
        label: None,
        conductor: flags.conductor,
        expected: None,
    };
    evaluate(&rec, &flags.options())
}

pub fn cmd_global(f: &str, flags: &Flags) -> CliResult {
    let curve = parse_curve(f)?;
    let g = global_root_number(&curve, &flags.options())?;
    if flags.json {
        return to_json(&global_record(&curve, flags));
    }
    let mut out = String::new();
    let _ = writeln!(out, "f = {}", poly::pretty(&curve.coeffs));
    let _ = writeln!(out, "genus {}", g.genus);
    for pl in &g.places {
        let _ = writeln!(out, "p = {}: W = {}", pl.p, pl.w.value);
    }
    let _ = writeln!(out, "infinity: W = {}", g.archimedean);
    let _ = writeln!(out, "W = {}", g.value);
    Ok(out)
}

pub fn cmd_lawful(f: &str, flags: &Flags) -> CliResult {
    let curve = parse_curve(f)?;
    let v: LawfulVerdict = classify(&curve, &flags.options())?;
    if flags.json {
        return to_json(&v);
    }
    let mut out = String::new();
    for pl in &v.places {
        let _ = writeln!(
            out,
            "p = {}: W_g = {} n = {:?} criterion {}",
            pl.p,
            pl.w_g,
            pl.n,
            if pl.satisfied { "holds" } else { "fails" }
        );
    }
    let _ = writeln!(out, "W = {}", v.global_w);
    let _ = writeln!(out, "verdict: {}", v.flavor.as_str());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub d: i64,
    pub base_w: Sign,
    /// from the local twist formulas
    pub twisted_w: Sign,
    /// when d is coprime to the conductor
    pub coprime_w: Option<Sign>,
    /// recomputed on y^2 = d f(x) when p = 2 stays certifiable
    pub direct_w: Option<Sign>,
}

pub fn twist_report(
    curve: &HyperellipticCurve,
    d: i64,
    flags: &Flags,
) -> Result<TwistReport, CliError> {
    if d != 1 && !is_fundamental_discriminant(d) {
        return Err(CliError::usage(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    let opts = flags.options();
    let base = global_root_number(curve, &opts)?;
    if d == 1 {
        return Ok(TwistReport {
            d,
            base_w: base.value,
            twisted_w: base.value,
            coprime_w: Some(base.value),
            direct_w: Some(base.value),
        });
    }
    let twisted_w = quadratic_global_twist(&base, d)?;
    let g = curve.genus();
    let coprime_w = flags
        .conductor
        .filter(|&n| arith::gcd(d.unsigned_abs(), n) == 1)
        .map(|n| coprime_quadratic_twist(base.value, d, n, g));
    let direct_w = if d.rem_euclid(4) == 1 {
        let tc = curve.quadratic_twist(d)?;
        let mut topts = opts.clone();
        topts.conductor = match flags.conductor {
            Some(n) => Some(
                twisted_conductor(n, d, g)
                    .ok_or_else(|| CliError::usage("twisted conductor overflows"))?,
            ),
            None => None,
        };
        Some(global_root_number(&tc, &topts)?.value)
    } else {
        None
    };
    Ok(TwistReport {
        d,
        base_w: base.value,
        twisted_w,
        coprime_w,
        direct_w,
    })
}

pub fn cmd_twist(f: &str, d: i64, flags: &Flags) -> CliResult {
    let curve = parse_curve(f)?;
    let r = twist_report(&curve, d, flags)?;
    let mismatch = [r.coprime_w, r.direct_w]
        .iter()
        .flatten()
        .any(|&w| w != r.twisted_w);
    if mismatch {
        return Err(CliError {
            code: EXIT_MISMATCH,
            message: format!("twist formulas disagree: {r:?}"),
        });
    }
    if flags.json {
        return to_json(&r);
    }
    let mut out = String::new();
    let _ = writeln!(out, "W = {}", r.base_w);
    let _ = writeln!(out, "W twisted by d = {}: {}", d, r.twisted_w);
    if let Some(w) = r.coprime_w {
        let _ = writeln!(out, "  coprime formula: {w}");
    }
    if let Some(w) = r.direct_w {
        let _ = writeln!(out, "  twisted model: {w}");
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: Vec<ResultRecord>,
    pub expected: usize,
    pub matched: usize,
}

pub fn scan(records: &[CurveRecord], flags: &Flags) -> ScanSummary {
    let opts = flags.options();
    let results: Vec<ResultRecord> = records.par_iter().map(|r| evaluate(r, &opts)).collect();
    let expected = records.iter().filter(|r| r.expected.is_some()).count();
    let matched = records
        .iter()
        .zip(&results)
        .filter(|(r, res)| r.expected.is_some() && r.expected == res.flavor())
        .count();
    ScanSummary {
        records: results,
        expected,
        matched,
    }
}

pub fn cmd_scan(path: &Path, flags: &Flags) -> CliResult {
    let file = File::open(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let records = read_csv(file)?;
    let s = scan(&records, flags);
    let text = if flags.json {
        to_json(&s)?
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<16} {:>3} {:<11} {:<11} status",
            "label", "W", "verdict", "expected"
        );
        for (rec, res) in records.iter().zip(&s.records) {
            let verdict = res
                .flavor()
                .map(|f| f.as_str().to_string())
                .unwrap_or_else(|| "error".into());
            let expected = rec.expected.map(|f| f.as_str()).unwrap_or("-");
            let status = match (&res.error, rec.expected) {
                (Some(e), _) => e.clone(),
                (None, None) => String::new(),
                (None, Some(x)) if Some(x) == res.flavor() => "ok".into(),
                (None, Some(_)) => "MISMATCH".into(),
            };
            let w = res
                .global_w
                .map(|w| w.to_string())
                .unwrap_or_else(|| "?".into());
            let _ = writeln!(
                out,
                "{:<16} {:>3} {:<11} {:<11} {}",
                res.label, w, verdict, expected, status
            );
        }
        let _ = writeln!(out, "{}/{} match", s.matched, s.expected);
        out
    };
    if s.matched < s.expected {
        return Err(CliError {
            code: EXIT_MISMATCH,
            message: text,
        });
    }
    Ok(text)
}
