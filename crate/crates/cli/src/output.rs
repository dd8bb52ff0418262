//! Report assembly and serialization.
//!
//! Emission is hand-rolled so the byte stream is fully deterministic:
//! fields appear in fixed order and every float is written with 17
//! significant digits (exact round-trip for f64). Wall time is reported
//! on stderr only — the serialized document must be byte-identical
//! across runs of the same build and config.

use std::fmt::Write as _;
use std::time::Duration;

use deuring_core::{CheckReport, CheckValue, Status};

use crate::config::{Format, SuiteConfig};

pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

impl ReportDocument {
    pub fn summary(&self) -> Summary {
        let mut s = Summary { pass: 0, fail: 0, info: 0 };
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    fn to_json(&self) -> String {
        let mut out = String::new();
        let s = self.summary();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"version\": {},", json_string(&self.version));
        let _ = writeln!(out, "  \"command\": {},", json_string(&self.command));
        out.push_str("  \"config\": {\n");
        let _ = writeln!(out, "    \"nmax\": {},", self.config.nmax);
        let _ = writeln!(out, "    \"disc\": {},", json_u64_array(&self.config.disc));
        let _ = writeln!(out, "    \"beta\": {},", json_f64_array(&self.config.beta));
        let _ = writeln!(out, "    \"gamma\": {},", json_f64_array(&self.config.gamma));
        let _ = writeln!(out, "    \"q\": {},", json_u64_array(&self.config.q));
        let _ = writeln!(
            out,
            "    \"rho_modulus\": {},",
            self.config.rho_modulus.map_or("null".into(), fmt_f64)
        );
        let _ = writeln!(
            out,
            "    \"tolerance\": {},",
            self.config.tolerance.map_or("null".into(), fmt_f64)
        );
        let _ = writeln!(out, "    \"seed\": {}", self.config.seed);
        out.push_str("  },\n");
        out.push_str("  \"checks\": [");
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    {");
            let _ = write!(out, "\"name\": {}, ", json_string(&c.name));
            let _ = write!(out, "\"anchor\": {}, ", json_string(c.anchor));
            let _ = write!(out, "\"lhs\": {}, ", json_value(&c.lhs));
            let _ = write!(out, "\"rhs\": {}, ", json_value(&c.rhs));
            let _ = write!(out, "\"margin\": {}, ", fmt_f64(c.margin));
            let _ = write!(out, "\"status\": {}, ", json_string(c.status.as_str()));
            let _ = write!(out, "\"tolerance\": {}, ", fmt_f64(c.tolerance));
            out.push_str("\"params\": {");
            for (j, (k, v)) in c.params.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: {}", json_string(k), json_string(v));
            }
            out.push_str("}}");
        }
        if !self.checks.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("],\n");
        let _ = writeln!(
            out,
            "  \"summary\": {{\"pass\": {}, \"fail\": {}, \"info\": {}}}",
            s.pass, s.fail, s.info
        );
        out.push_str("}\n");
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("name,anchor,lhs,rhs,margin,status,tolerance,params\n");
        for c in &self.checks {
            let params = c
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            let row = [
                csv_field(&c.name),
                csv_field(c.anchor),
                csv_field(&csv_value(&c.lhs)),
                csv_field(&csv_value(&c.rhs)),
                fmt_f64(c.margin),
                c.status.as_str().to_string(),
                fmt_f64(c.tolerance),
                csv_field(&params),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits: enough for exact f64 round-trips.
pub fn fmt_f64(v: f64) -> String {
    debug_assert!(v.is_finite(), "non-finite value reached the serializer: {v}");
    format!("{v:.16e}")
}

fn json_value(v: &CheckValue) -> String {
    match v {
        CheckValue::Int(i) => i.to_string(),
        CheckValue::Real(r) => fmt_f64(*r),
        CheckValue::Complex(z) => {
            format!("{{\"re\": {}, \"im\": {}}}", fmt_f64(z.re), fmt_f64(z.im))
        }
    }
}

fn csv_value(v: &CheckValue) -> String {
    match v {
        CheckValue::Int(i) => i.to_string(),
        CheckValue::Real(r) => fmt_f64(*r),
        CheckValue::Complex(z) => {
            let sign = if z.im.is_sign_negative() { "" } else { "+" };
            format!("{}{sign}{}i", fmt_f64(z.re), fmt_f64(z.im))
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn json_u64_array(xs: &[u64]) -> String {
    let inner = xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    format!("[{inner}]")
}

fn json_f64_array(xs: &[f64]) -> String {
    let inner = xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(", ");
    format!("[{inner}]")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
