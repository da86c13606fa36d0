//! Run configuration: a flat `key=value` document with bracketed integer
//! lists, or the same content as JSON. Either form validates into the same
//! structure the engine consumes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use udist_core::distribution::OrderIdeal;
use udist_core::galois::PrimeConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Anderson,
    TheoremA,
    TheoremB,
    Cup,
    QuasiIso,
    Lift,
    Appendix,
    All,
}

impl CheckKind {
    pub fn parse(s: &str) -> Option<CheckKind> {
        match s {
            "anderson" => Some(CheckKind::Anderson),
            "theorem-a" => Some(CheckKind::TheoremA),
            "theorem-b" => Some(CheckKind::TheoremB),
            "cup" => Some(CheckKind::Cup),
            "quasi-iso" => Some(CheckKind::QuasiIso),
            "lift" => Some(CheckKind::Lift),
            "appendix" => Some(CheckKind::Appendix),
            "all" => Some(CheckKind::All),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Anderson => "anderson",
            CheckKind::TheoremA => "theorem-a",
            CheckKind::TheoremB => "theorem-b",
            CheckKind::Cup => "cup",
            CheckKind::QuasiIso => "quasi-iso",
            CheckKind::Lift => "lift",
            CheckKind::Appendix => "appendix",
            CheckKind::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub modulus: u64,
    #[serde(default = "default_n_max")]
    pub n_max: u64,
    /// Order ideal given by its maximal sets, as lists of primes.
    #[serde(default)]
    pub ideal: Option<Vec<Vec<u64>>>,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_n_max() -> u64 {
    3
}

fn default_checks() -> Vec<CheckKind> {
    vec![CheckKind::All]
}

fn default_format() -> String {
    "json".to_string()
}

impl RunConfig {
    /// Validate into the engine configuration, mirroring its prime and
    /// modulus rules.
    pub fn prime_config(&self) -> Result<PrimeConfig, ConfigError> {
        PrimeConfig::new(&self.primes, self.modulus)
            .map_err(|e| ConfigError::Validation(e.to_string()))
    }

    /// Translate the ideal description (maximal sets as prime lists) into
    /// index masks over the ascending prime order.
    pub fn order_ideal(&self) -> Result<Option<OrderIdeal>, ConfigError> {
        let Some(sets) = &self.ideal else {
            return Ok(None);
        };
        let mut sorted = self.primes.clone();
        sorted.sort_unstable();
        let mut masks = Vec::new();
        for set in sets {
            let mut mask = 0u32;
            for p in set {
                let idx = sorted.iter().position(|q| q == p).ok_or_else(|| {
                    ConfigError::Validation(format!("ideal member {p} is not a configured prime"))
                })?;
                mask |= 1 << idx;
            }
            masks.push(mask);
        }
        Ok(Some(OrderIdeal::from_masks(&masks)))
    }

    pub fn effective_checks(&self) -> Vec<CheckKind> {
        if self.checks.contains(&CheckKind::All) {
            vec![
                CheckKind::Anderson,
                CheckKind::TheoremA,
                CheckKind::TheoremB,
                CheckKind::Cup,
                CheckKind::QuasiIso,
                CheckKind::Lift,
                CheckKind::Appendix,
            ]
        } else {
            self.checks.clone()
        }
    }
}

/// Parse either the flat `key=value` grammar or a JSON document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let cfg: RunConfig = serde_json::from_str(trimmed).map_err(|e| ConfigError::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        validate(&cfg)?;
        return Ok(cfg);
    }
    let mut primes = None;
    let mut modulus = None;
    let mut n_max = default_n_max();
    let mut ideal = None;
    let mut checks = default_checks();
    let mut out = None;
    let mut format = default_format();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let (key, value) = stripped.split_once('=').ok_or(ConfigError::Parse {
            line,
            message: format!("expected key=value, got `{stripped}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "primes" => primes = Some(parse_int_list(value, line)?),
            "modulus" => {
                modulus = Some(value.parse::<u64>().map_err(|_| ConfigError::Parse {
                    line,
                    message: format!("bad modulus `{value}`"),
                })?)
            }
            "n_max" => {
                n_max = value.parse::<u64>().map_err(|_| ConfigError::Parse {
                    line,
                    message: format!("bad n_max `{value}`"),
                })?
            }
            "ideal" => ideal = Some(parse_nested_list(value, line)?),
            "checks" => {
                let names = parse_name_list(value, line)?;
                checks = names
                    .iter()
                    .map(|n| {
                        CheckKind::parse(n).ok_or(ConfigError::Parse {
                            line,
                            message: format!("unknown check `{n}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
            "out" => out = Some(value.to_string()),
            "format" => format = value.to_string(),
            other => {
                return Err(ConfigError::Parse {
                    line,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let cfg = RunConfig {
        primes: primes.ok_or(ConfigError::Parse {
            line: 0,
            message: "missing required key `primes`".into(),
        })?,
        modulus: modulus.ok_or(ConfigError::Parse {
            line: 0,
            message: "missing required key `modulus`".into(),
        })?,
        n_max,
        ideal,
        checks,
        out,
        format,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), ConfigError> {
    cfg.prime_config()?;
    cfg.order_ideal()?;
    if cfg.format != "json" && cfg.format != "markdown" {
        return Err(ConfigError::Validation(format!(
            "format must be json or markdown, got `{}`",
            cfg.format
        )));
    }
    Ok(())
}

fn strip_brackets(value: &str, line: usize) -> Result<&str, ConfigError> {
    let v = value.trim();
    if !v.starts_with('[') || !v.ends_with(']') {
        return Err(ConfigError::Parse {
            line,
            message: format!("expected a bracketed list, got `{value}`"),
        });
    }
    Ok(&v[1..v.len() - 1])
}

fn parse_int_list(value: &str, line: usize) -> Result<Vec<u64>, ConfigError> {
    let inner = strip_brackets(value, line)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim().parse::<u64>().map_err(|_| ConfigError::Parse {
                line,
                message: format!("bad integer `{}`", s.trim()),
            })
        })
        .collect()
}

fn parse_name_list(value: &str, line: usize) -> Result<Vec<String>, ConfigError> {
    let inner = strip_brackets(value, line)?;
    Ok(inner
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect())
}

fn parse_nested_list(value: &str, line: usize) -> Result<Vec<Vec<u64>>, ConfigError> {
    let inner = strip_brackets(value, line)?.trim();
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 1 {
                    current.clear();
                    continue;
                }
            }
            ']' => {
                if depth == 0 {
                    return Err(ConfigError::Parse {
                        line,
                        message: "unbalanced brackets in ideal".into(),
                    });
                }
                depth -= 1;
                if depth == 0 {
                    out.push(parse_int_list(&format!("[{current}]"), line)?);
                    continue;
                }
            }
            ',' if depth == 0 => continue,
            _ => {}
        }
        if depth >= 1 {
            current.push(ch);
        }
    }
    if depth != 0 {
        return Err(ConfigError::Parse {
            line,
            message: "unbalanced brackets in ideal".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_form() {
        let cfg = parse_config("primes=[3,7]\nmodulus=2\nn_max=3\nchecks=[all]\n").unwrap();
        assert_eq!(cfg.primes, vec![3, 7]);
        assert_eq!(cfg.modulus, 2);
        assert_eq!(cfg.n_max, 3);
        assert_eq!(cfg.checks, vec![CheckKind::All]);
    }

    #[test]
    fn parses_json_form() {
        let cfg = parse_config(r#"{"primes":[3,7],"modulus":2,"checks":["theorem-b"]}"#).unwrap();
        assert_eq!(cfg.primes, vec![3, 7]);
        assert_eq!(cfg.checks, vec![CheckKind::TheoremB]);
    }

    #[test]
    fn parses_ideal() {
        let cfg = parse_config("primes=[3,7]\nmodulus=2\nideal=[[3],[7]]\n").unwrap();
        let ideal = cfg.order_ideal().unwrap().unwrap();
        assert_eq!(ideal.maximal_masks(), &[0b01, 0b10]);
    }

    #[test]
    fn rejects_composite_prime() {
        let err = parse_config("primes=[3,9]\nmodulus=2\n").unwrap_err();
        assert!(matches!(err, ConfigError::Validation(_)), "{err:?}");
    }

    #[test]
    fn rejects_bad_modulus() {
        let err = parse_config("primes=[3,7]\nmodulus=3\n").unwrap_err();
        assert!(matches!(err, ConfigError::Validation(_)), "{err:?}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_config("primes=[3,7]\nmodulus двух\n").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
