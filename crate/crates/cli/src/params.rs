//! Flat `key=value` parameters from a config file and `--key value` flags.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// One accepted parameter: name, default (empty for "required or unset"), help text.
pub struct ParamSpec {
    pub key: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

pub const fn param(key: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { key, default, help }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Common {
    pub out: Option<String>,
    pub format: Format,
    pub metadata: bool,
    pub help: bool,
}

/// Resolved parameter values for one subcommand.
pub struct Params {
    values: BTreeMap<&'static str, String>,
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Reads a flat config file: `key = value` per line, `#` comments, blank lines ignored.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read config {}: {e}", path.display())))?;
    let mut pairs = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_error(format!("config line {} is not key=value", no + 1)))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

/// Splits `args` into common options and subcommand parameters, merging `config`
/// underneath the flags. Unknown keys in either source are rejected.
pub fn resolve(specs: &[ParamSpec], args: &[String]) -> Result<(Common, Params), CliError> {
    let mut common = Common {
        out: None,
        format: Format::Csv,
        metadata: true,
        help: false,
    };
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut config: Option<String> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let body = arg
            .strip_prefix("--")
            .ok_or_else(|| config_error(format!("unexpected argument '{arg}'")))?;
        match body {
            "help" => {
                common.help = true;
                continue;
            }
            "no-metadata" => {
                common.metadata = false;
                continue;
            }
            _ => {}
        }
        let (key, value) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| config_error(format!("flag --{body} needs a value")))?;
                (body.to_string(), v.clone())
            }
        };
        if key == "config" {
            config = Some(value);
        } else {
            flags.push((key, value));
        }
    }

    let mut pairs = match &config {
        Some(path) => read_config(Path::new(path))?,
        None => Vec::new(),
    };
    pairs.extend(flags);

    let mut values: BTreeMap<&'static str, String> = specs
        .iter()
        .filter(|s| !s.default.is_empty())
        .map(|s| (s.key, s.default.to_string()))
        .collect();
    for (key, value) in pairs {
        match key.as_str() {
            "out" => common.out = Some(value),
            "format" => {
                common.format = match value.as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(config_error(format!("unknown format '{other}'"))),
                }
            }
            "metadata" => {
                common.metadata = parse_bool(&value).ok_or_else(|| {
                    config_error(format!("metadata must be true or false, got '{value}'"))
                })?
            }
            _ => {
                let spec = specs
                    .iter()
                    .find(|s| s.key == key)
                    .ok_or_else(|| config_error(format!("unknown parameter '{key}'")))?;
                values.insert(spec.key, value);
            }
        }
    }
    Ok((common, Params { values }))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

impl Params {
    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| config_error(format!("missing parameter '{key}'")))
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|e| config_error(format!("parameter '{key}' = '{raw}': {e}")))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key)?;
        raw.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|e| config_error(format!("parameter '{key}' entry '{s}': {e}")))
            })
            .collect()
    }

    pub fn positive(&self, key: &str) -> Result<f64, CliError> {
        let v: f64 = self.get(key)?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(config_error(format!(
                "parameter '{key}' must be positive, got {v}"
            )))
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        let raw = self.raw(key)?;
        parse_bool(raw).ok_or_else(|| {
            config_error(format!(
                "parameter '{key}' must be true or false, got '{raw}'"
            ))
        })
    }
}

pub fn usage(name: &str, about: &str, specs: &[ParamSpec]) -> String {
    let mut s = format!(
        "fflcu {name}: {about}\n\nParameters (flags --key value, or key=value in --config FILE):\n"
    );
    for p in specs {
        let default = if p.default.is_empty() {
            "unset"
        } else {
            p.default
        };
        s.push_str(&format!(
            "  --{:<16} {} [default: {default}]\n",
            p.key, p.help
        ));
    }
    s.push_str("\nCommon: --out PATH, --format csv|json, --no-metadata, --config FILE\n");
    s
}
