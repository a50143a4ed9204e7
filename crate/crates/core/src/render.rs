//! Output records and renderers shared by the command-line front end.
//!
//! Exact data is always written as canonical coefficient strings. Float renderings are
//! convenience output only and are labelled as such.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycScalar, Dimension};
use crate::operators::ExactMatrix;
use crate::relation::{PaperIndexMap, VerifiedEntry};
use crate::suite::SuiteReport;

/// Magnitudes below this are printed as `0` in float renderings.
const FLOAT_NOISE: f64 = 1e-12;

/// Renders `x` with 15 significant digits in positional notation, trailing zeros trimmed.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < FLOAT_NOISE {
        return "0".to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(trimmed);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub d: u32,
    pub rows: usize,
    pub cols: usize,
    pub sqrt_d_exp: u32,
    /// `entries[r][c]` is the canonical coefficient vector of entry `(r, c)`.
    pub entries: Vec<Vec<Vec<String>>>,
    /// Non-authoritative `[re, im]` pairs of the represented matrix, prefactor included.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float_entries: Option<Vec<Vec<[String; 2]>>>,
}

impl MatrixRecord {
    pub fn new(m: &ExactMatrix, with_floats: bool) -> Self {
        let entries = (0..m.rows()).map(|r| m.row(r).iter().map(CycScalar::to_coeff_strings).collect()).collect();
        let float_entries = with_floats.then(|| {
            m.to_complex()
                .into_iter()
                .map(|row| row.into_iter().map(|(re, im)| [format_float(re), format_float(im)]).collect())
                .collect()
        });
        MatrixRecord {
            d: m.dimension().get(),
            rows: m.rows(),
            cols: m.cols(),
            sqrt_d_exp: m.sqrt_d_exp(),
            entries,
            float_entries,
        }
    }

    /// Rebuilds the exact matrix; the float rendering is ignored.
    pub fn to_matrix(&self) -> crate::Result<ExactMatrix> {
        let d = Dimension::new(self.d)?;
        let entries = self
            .entries
            .iter()
            .flatten()
            .map(|coeffs| CycScalar::from_coeff_strings(d, coeffs))
            .collect::<crate::Result<Vec<_>>>()?;
        ExactMatrix::new(d, self.rows, entries, self.sqrt_d_exp)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub n: u32,
    pub m: u32,
    pub phase_exp: u32,
    pub kp_n: u32,
    pub kp_m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_ell: Option<usize>,
    pub verified: bool,
}

/// Builds table records; `paper_ell` is filled only when `map` holds a published ordering.
pub fn table_records(rows: &[VerifiedEntry], map: Option<&PaperIndexMap>) -> Vec<TableRecord> {
    rows.iter()
        .map(|v| TableRecord {
            n: v.entry.weyl.n(),
            m: v.entry.weyl.m(),
            phase_exp: v.entry.phase_exp,
            kp_n: v.entry.kp.n(),
            kp_m: v.entry.kp.m(),
            paper_ell: map.map(|map| map.ell(v.entry.kp)),
            verified: v.verified,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub dimension: u32,
    pub results: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl ReportRecord {
    /// With `timing` off every `elapsed_ms` is written as 0 so the output is reproducible.
    pub fn new(report: &SuiteReport, timing: bool) -> Self {
        ReportRecord {
            dimension: report.dimension,
            results: report
                .results
                .iter()
                .map(|r| CheckRecord {
                    check_id: r.check_id.clone(),
                    passed: r.passed,
                    detail: r.detail.clone(),
                    elapsed_ms: if timing { r.elapsed.as_millis() as u64 } else { 0 },
                })
                .collect(),
            all_passed: report.all_passed,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

/// `x_s` or `x_{s}` for multi-character subscripts.
fn subscript(s: &str) -> String {
    if s.chars().count() == 1 {
        format!("_{s}")
    } else {
        format!("_{{{s}}}")
    }
}

fn power(symbol: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{}", if e < 10 { e.to_string() } else { format!("{{{e}}}") }),
    }
}

fn pair_label(d: Dimension, n: u32, m: u32) -> String {
    if d.get() < 10 {
        format!("{n}{m}")
    } else {
        format!("{n},{m}")
    }
}

/// A scalar as a LaTeX expression in `symbol`: a bare power for roots of unity, otherwise a
/// polynomial in the canonical basis.
fn scalar_latex(s: &CycScalar, symbol: &str) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    if let Some(e) = s.as_root_power() {
        return if e == 0 { "1".to_string() } else { power(symbol, e) };
    }
    let mut out = String::new();
    for (i, c) in s.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let neg = c < &num_rational::BigRational::from_integer(0.into());
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
        };
        let p = power(symbol, i as u32);
        match (coeff.as_str(), p.is_empty()) {
            (_, true) => out.push_str(&coeff),
            ("1", false) => out.push_str(&p),
            (_, false) => out.push_str(&format!("{coeff}{p}")),
        }
    }
    out
}

/// Plain-text scalar: `0`, `1`, `w`, `w^k`, or the coefficient vector.
fn scalar_text(s: &CycScalar) -> String {
    match s.as_root_power() {
        _ if s.is_zero() => "0".to_string(),
        Some(0) => "1".to_string(),
        Some(e) => power("w", e),
        None => s.to_string(),
    }
}

fn prefactor_latex(m: &ExactMatrix) -> String {
    if m.sqrt_d_exp() == 1 {
        format!("\\frac{{1}}{{\\sqrt{{{}}}}}", m.dimension())
    } else {
        String::new()
    }
}

pub fn matrix_latex(name: &str, m: &ExactMatrix) -> String {
    let mut out = format!("{name}={}\\begin{{pmatrix}}\n", prefactor_latex(m));
    for r in 0..m.rows() {
        let cells: Vec<_> = m.row(r).iter().map(|e| scalar_latex(e, "w")).collect();
        out.push_str(&cells.join("&"));
        if r + 1 < m.rows() {
            out.push_str("\\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

pub fn matrix_text(name: &str, m: &ExactMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(scalar_text).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = format!("{name}, d={}, w = exp(2 pi i/{})", m.dimension(), m.dimension());
    if m.sqrt_d_exp() == 1 {
        let _ = write!(out, ", prefactor 1/sqrt({})", m.dimension());
    }
    out.push('\n');
    for row in cells {
        let line: Vec<_> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_csv(name: &str, m: &ExactMatrix) -> String {
    let mut out = format!("# non-authoritative floating-point rendering of {name}, d={}; exact data: --format json\n", m.dimension());
    out.push_str(&csv_string(|w| {
        w.write_record(["row", "col", "re", "im"])?;
        for (r, row) in m.to_complex().into_iter().enumerate() {
            for (c, (re, im)) in row.into_iter().enumerate() {
                w.write_record([r.to_string(), c.to_string(), format_float(re), format_float(im)])?;
            }
        }
        Ok(())
    }));
    out
}

pub fn table_text(d: Dimension, records: &[TableRecord]) -> String {
    let mut out = format!("# C_d U_nm C_d = w^k Pi_(kp_n,kp_m), d={d}\n");
    let _ = writeln!(out, "{:>4} {:>4} {:>4} {:>5} {:>5} {:>5}  verified", "n", "m", "k", "kp_n", "kp_m", "ell");
    for r in records {
        let ell = r.paper_ell.map_or_else(|| "-".to_string(), |l| l.to_string());
        let _ = writeln!(
            out,
            "{:>4} {:>4} {:>4} {:>5} {:>5} {:>5}  {}",
            r.n,
            r.m,
            r.phase_exp,
            r.kp_n,
            r.kp_m,
            ell,
            if r.verified { "yes" } else { "NO" }
        );
    }
    out
}

pub fn table_csv(records: &[TableRecord]) -> String {
    csv_string(|w| {
        w.write_record(["n", "m", "phase_exp", "kp_n", "kp_m", "paper_ell", "verified"])?;
        for r in records {
            w.write_record([
                r.n.to_string(),
                r.m.to_string(),
                r.phase_exp.to_string(),
                r.kp_n.to_string(),
                r.kp_m.to_string(),
                r.paper_ell.map(|l| l.to_string()).unwrap_or_default(),
                r.verified.to_string(),
            ])?;
        }
        Ok(())
    })
}

/// The table as a LaTeX array with `d` identities per row.
///
/// `d = 3` uses `w` and `tau_ell`, `d = 5` uses `eta` and `chi_ell`; other dimensions use `w`
/// and the pair-indexed `Pi`.
pub fn table_latex(d: Dimension, records: &[TableRecord]) -> String {
    let (phase_symbol, family) = match d.get() {
        3 => ("w", Some("\\tau")),
        5 => ("\\eta", Some("\\chi")),
        _ => ("w", None),
    };
    let c = format!("C{}", subscript(&d.to_string()));
    let mut out = format!("\\begin{{array}}{{{}}}\n", "l".repeat(d.size()));
    for (i, row) in records.chunks(d.size()).enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|r| {
                let operator = match (family, r.paper_ell) {
                    (Some(sym), Some(ell)) => format!("{sym}{}", subscript(&ell.to_string())),
                    _ => format!("\\Pi{}", subscript(&pair_label(d, r.kp_n, r.kp_m))),
                };
                format!(
                    "{c}U{}{c}={}{operator}",
                    subscript(&pair_label(d, r.n, r.m)),
                    power(phase_symbol, r.phase_exp)
                )
            })
            .collect();
        out.push_str(&cells.join(" & "));
        if i + 1 < d.size() {
            out.push_str("\\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{array}\n");
    out
}

pub fn report_text(report: &SuiteReport, timing: bool) -> String {
    let mut out = format!(
        "d={}: {}\n",
        report.dimension,
        if report.all_passed { "all checks passed" } else { "FAILED" }
    );
    let width = report.results.iter().map(|r| r.check_id.len()).max().unwrap_or(8).max(8);
    for r in &report.results {
        let status = if r.passed { "pass" } else { "FAIL" };
        let _ = write!(out, "{:<width$}  {status}", r.check_id);
        if timing {
            let _ = write!(out, "  {:>10.3} ms", r.elapsed.as_secs_f64() * 1e3);
        }
        out.push('\n');
        if let Some(detail) = &r.detail {
            let _ = writeln!(out, "    {detail}");
        }
    }
    out
}

pub fn report_csv(record: &ReportRecord) -> String {
    csv_string(|w| {
        w.write_record(["dimension", "check_id", "passed", "elapsed_ms", "detail"])?;
        for r in &record.results {
            w.write_record([
                record.dimension.to_string(),
                r.check_id.clone(),
                r.passed.to_string(),
                r.elapsed_ms.to_string(),
                r.detail.clone().unwrap_or_default(),
            ])?;
        }
        Ok(())
    })
}
