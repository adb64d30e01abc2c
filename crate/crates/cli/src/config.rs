//! key=value scenario configuration: file text plus flag overrides.
//!
//! Files are UTF-8, one `key=value` per line, `#` starts a comment. Flags of
//! the form `--key=value` override file values. Unknown keys are rejected,
//! numbers are plain C-locale decimals, and every scenario declares which
//! keys it requires — a missing required key is a config error before any
//! computation starts.

use std::collections::HashSet;
use std::path::PathBuf;

use crate::error::{CliError, Result};

/// All recognized config keys.
pub const KNOWN_KEYS: &[&str] = &[
    "scenario",
    "dim",
    "alpha",
    "n_th",
    "r",
    "theta_sq",
    "m_filter",
    "omega",
    "omega0",
    "g",
    "J",
    "kappa",
    "gamma",
    "theta_bs",
    "phi",
    "dt",
    "t_max",
    "n_traj",
    "master_seed",
    "out_path",
];

/// Typed view of a parsed configuration. Every field is optional; scenarios
/// state their requirements and the driver enforces them up front.
#[derive(Debug, Clone, Default)]
pub struct ScenarioConfig {
    pub scenario: Option<String>,
    pub dim: Option<usize>,
    pub alpha: Option<f64>,
    pub n_th: Option<f64>,
    pub r: Option<f64>,
    pub theta_sq: Option<f64>,
    pub m_filter: Option<usize>,
    pub omega: Option<f64>,
    pub omega0: Option<f64>,
    pub g: Option<f64>,
    pub j: Option<f64>,
    pub kappa: Option<f64>,
    pub gamma: Option<f64>,
    pub theta_bs: Option<f64>,
    pub phi: Option<f64>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub n_traj: Option<usize>,
    pub master_seed: Option<u64>,
    pub out_path: Option<PathBuf>,
    provided: HashSet<String>,
}

impl ScenarioConfig {
    pub fn has(&self, key: &str) -> bool {
        self.provided.contains(key)
    }

    fn set(&mut self, key: &str, value: &str, at: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str, at: &str) -> Result<T> {
            value.parse().map_err(|_| {
                CliError::Config(format!("{at}: invalid value `{value}` for key `{key}`"))
            })
        }
        match key {
            "scenario" => self.scenario = Some(value.to_string()),
            "dim" => self.dim = Some(num(key, value, at)?),
            "alpha" => self.alpha = Some(num(key, value, at)?),
            "n_th" => self.n_th = Some(num(key, value, at)?),
            "r" => self.r = Some(num(key, value, at)?),
            "theta_sq" => self.theta_sq = Some(num(key, value, at)?),
            "m_filter" => self.m_filter = Some(num(key, value, at)?),
            "omega" => self.omega = Some(num(key, value, at)?),
            "omega0" => self.omega0 = Some(num(key, value, at)?),
            "g" => self.g = Some(num(key, value, at)?),
            "J" => self.j = Some(num(key, value, at)?),
            "kappa" => self.kappa = Some(num(key, value, at)?),
            "gamma" => self.gamma = Some(num(key, value, at)?),
            "theta_bs" => self.theta_bs = Some(num(key, value, at)?),
            "phi" => self.phi = Some(num(key, value, at)?),
            "dt" => self.dt = Some(num(key, value, at)?),
            "t_max" => self.t_max = Some(num(key, value, at)?),
            "n_traj" => self.n_traj = Some(num(key, value, at)?),
            "master_seed" => self.master_seed = Some(num(key, value, at)?),
            "out_path" => self.out_path = Some(PathBuf::from(value)),
            _ => {
                return Err(CliError::Config(format!("{at}: unknown key `{key}`")));
            }
        }
        self.provided.insert(key.to_string());
        Ok(())
    }

    // Required-key accessors: the driver has already verified presence, so
    // these only fire on internal misuse.
    pub fn dim(&self) -> usize {
        self.dim.expect("required key `dim` checked by driver")
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.expect("required key `alpha` checked by driver")
    }

    pub fn n_th(&self) -> f64 {
        self.n_th.expect("required key `n_th` checked by driver")
    }

    pub fn g(&self) -> f64 {
        self.g.expect("required key `g` checked by driver")
    }

    pub fn j(&self) -> f64 {
        self.j.expect("required key `J` checked by driver")
    }

    pub fn kappa(&self) -> f64 {
        self.kappa.expect("required key `kappa` checked by driver")
    }

    pub fn dt(&self) -> f64 {
        self.dt.expect("required key `dt` checked by driver")
    }

    pub fn t_max(&self) -> f64 {
        self.t_max.expect("required key `t_max` checked by driver")
    }

    pub fn n_traj(&self) -> usize {
        self.n_traj.expect("required key `n_traj` checked by driver")
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
            .expect("required key `master_seed` checked by driver")
    }

    pub fn theta_bs(&self) -> f64 {
        self.theta_bs
            .expect("required key `theta_bs` checked by driver")
    }

    // Optional keys with documented defaults (ħ = ω = ω₀ = 1, γ = 0).
    pub fn omega_or_default(&self) -> f64 {
        self.omega.unwrap_or(1.0)
    }

    pub fn omega0_or_default(&self) -> f64 {
        self.omega0.unwrap_or(1.0)
    }

    pub fn gamma_or_default(&self) -> f64 {
        self.gamma.unwrap_or(0.0)
    }
}

/// Parses file text (if any), then applies `--key=value` overrides in order.
pub fn parse_config(file_text: Option<&str>, overrides: &[String]) -> Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig::default();
    if let Some(text) = file_text {
        for (lineno, raw) in text.lines().enumerate() {
            let at = format!("line {}", lineno + 1);
            let line = match raw.find('#') {
                Some(idx) => &raw[..idx],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("{at}: expected key=value, got `{line}`"))
            })?;
            cfg.set(key.trim(), value.trim(), &at)?;
        }
    }
    for flag in overrides {
        let body = flag.strip_prefix("--").ok_or_else(|| {
            CliError::Config(format!(
                "override `{flag}` must have the form --key=value"
            ))
        })?;
        let (key, value) = body.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "override `{flag}` must have the form --key=value"
            ))
        })?;
        cfg.set(key, value, &format!("flag --{key}"))?;
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_keys_parse_and_flags_override() {
        let text = "scenario=jc-rabi\ng=0.1\ndim=10\ndt=0.1\nt_max=30\n";
        let cfg = parse_config(Some(text), &[]).unwrap();
        assert_eq!(cfg.scenario.as_deref(), Some("jc-rabi"));
        assert_eq!(cfg.g, Some(0.1));
        assert_eq!(cfg.dim, Some(10));

        let cfg = parse_config(Some(text), &["--g=0.2".to_string()]).unwrap();
        assert_eq!(cfg.g, Some(0.2));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nscenario=mzi-sweep # trailing comment\ndim=10\n";
        let cfg = parse_config(Some(text), &[]).unwrap();
        assert_eq!(cfg.scenario.as_deref(), Some("mzi-sweep"));
        assert_eq!(cfg.dim, Some(10));
    }

    #[test]
    fn unknown_keys_name_the_line() {
        let err = parse_config(Some("scenario=g2-table\nfoo=1\n"), &[]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("foo"), "{msg}");
    }

    #[test]
    fn malformed_numbers_name_the_key() {
        let err = parse_config(Some("g=abc\n"), &[]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('g') && msg.contains("abc"), "{msg}");

        let err = parse_config(None, &["--dim=2.5".to_string()]).unwrap_err();
        assert!(err.to_string().contains("dim"));
    }

    #[test]
    fn malformed_flags_are_rejected() {
        assert!(parse_config(None, &["g=0.1".to_string()]).is_err());
        assert!(parse_config(None, &["--g".to_string()]).is_err());
    }
}
