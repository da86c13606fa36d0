//! Machine-readable check reports with a fixed schema and deterministic
//! serialization: identical runs produce byte-identical documents, so no
//! timings or timestamps enter the payload.

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub computed: Value,
    pub expected: Value,
    pub provenance: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportMeta {
    pub version: String,
    pub config: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: ReportMeta,
    pub results: Vec<CheckRecord>,
}

impl Report {
    pub fn new(config: &RunConfig, mut results: Vec<CheckRecord>) -> Self {
        results.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            meta: ReportMeta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                config: serde_json::to_value(config).expect("config serializes"),
            },
            results,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s {
            "json" => Some(ReportFormat::Json),
            "markdown" => Some(ReportFormat::Markdown),
            _ => None,
        }
    }
}

pub fn emit_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => {
            let mut s = String::new();
            s.push_str("# Verification report\n\n");
            s.push_str(&format!("version: {}\n\n", report.meta.version));
            s.push_str(&format!(
                "config: `{}`\n\n",
                serde_json::to_string(&report.meta.config).expect("config serializes")
            ));
            s.push_str("| check | pass | computed | expected | provenance |\n");
            s.push_str("|---|---|---|---|---|\n");
            for r in &report.results {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.name,
                    if r.pass { "yes" } else { "NO" },
                    compact(&r.computed),
                    compact(&r.expected),
                    r.provenance
                ));
            }
            s
        }
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v)
        .unwrap_or_default()
        .replace('|', "\\|")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn empty_report_is_valid_and_deterministic() {
        let cfg = parse_config("primes=[3]\nmodulus=2\nchecks=[theorem-b]\n").unwrap();
        let r1 = emit_report(&Report::new(&cfg, Vec::new()), ReportFormat::Json);
        let r2 = emit_report(&Report::new(&cfg, Vec::new()), ReportFormat::Json);
        assert_eq!(r1, r2);
        let parsed: Value = serde_json::from_str(&r1).unwrap();
        assert!(parsed["results"].as_array().unwrap().is_empty());
        assert!(parsed["meta"]["config"]["primes"].is_array());
    }

    #[test]
    fn records_sorted_by_name() {
        let cfg = parse_config("primes=[3]\nmodulus=2\n").unwrap();
        let mk = |name: &str| CheckRecord {
            name: name.into(),
            inputs: Value::Null,
            computed: Value::Null,
            expected: Value::Null,
            provenance: "test".into(),
            pass: true,
        };
        let report = Report::new(&cfg, vec![mk("zeta"), mk("alpha")]);
        assert_eq!(report.results[0].name, "alpha");
        assert_eq!(report.results[1].name, "zeta");
    }
}
