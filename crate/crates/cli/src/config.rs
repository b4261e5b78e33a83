//! Plain key/value configuration files.
//!
//! Format: one `key = value` pair per line, `#` starts a comment,
//! comma-separated lists for `lambda` and `suites`. Unknown keys are
//! errors so typos fail loudly.

use std::path::Path;

use heisenrep::suites::{SuiteConfig, SuiteId};

pub fn load_config_file(path: &Path) -> Result<SuiteConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<SuiteConfig, String> {
    let mut cfg = SuiteConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let fail = |e: String| format!("line {}: key `{key}`: {e}", lineno + 1);
        match key {
            "lambda" => {
                let mut lams = Vec::new();
                for part in value.split(',') {
                    lams.push(
                        heisenrep::parse_rational(part.trim()).map_err(|e| fail(e.to_string()))?,
                    );
                }
                cfg.lambdas = lams;
            }
            "p_min" => cfg.p_min = value.parse().map_err(|e: std::num::ParseIntError| fail(e.to_string()))?,
            "p_max" => cfg.p_max = value.parse().map_err(|e: std::num::ParseIntError| fail(e.to_string()))?,
            "m_max" => cfg.m_max = value.parse().map_err(|e: std::num::ParseIntError| fail(e.to_string()))?,
            "quad_nodes" => {
                cfg.quad_nodes = value.parse().map_err(|e: std::num::ParseIntError| fail(e.to_string()))?
            }
            "quad_cutoff" => {
                cfg.quad_cutoff = value.parse().map_err(|e: std::num::ParseFloatError| fail(e.to_string()))?
            }
            "tol_float_algebra" => {
                cfg.tol_float_algebra =
                    value.parse().map_err(|e: std::num::ParseFloatError| fail(e.to_string()))?
            }
            "tol_quadrature" => {
                cfg.tol_quadrature =
                    value.parse().map_err(|e: std::num::ParseFloatError| fail(e.to_string()))?
            }
            "tol_group_action" => {
                cfg.tol_group_action =
                    value.parse().map_err(|e: std::num::ParseFloatError| fail(e.to_string()))?
            }
            "suites" => {
                let mut suites = Vec::new();
                for part in value.split(',') {
                    suites.push(
                        part.trim()
                            .parse::<SuiteId>()
                            .map_err(|e| fail(e.to_string()))?,
                    );
                }
                cfg.suites = suites;
            }
            "seed" => cfg.seed = value.parse().map_err(|e: std::num::ParseIntError| fail(e.to_string()))?,
            other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
        }
    }
    Ok(cfg)
}
