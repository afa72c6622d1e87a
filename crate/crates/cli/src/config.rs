//! `--config FILE`: a flat JSON object whose keys are long flag names
//! (`snr_db` or `snr-db`). Values become flags appended after the command
//! line, skipping any flag already given there, so the command line wins.

use std::ffi::OsString;
use std::path::Path;

use serde_json::Value;

use crate::failure::{usage, Failure};

pub fn merged_args(argv: Vec<OsString>) -> Result<Vec<OsString>, Failure> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let extra = flags_from_file(&path, &argv)?;
    let mut out = argv;
    out.extend(extra);
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<String> {
    let mut it = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given(argv: &[OsString], flag: &str) -> bool {
    argv.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.strip_prefix(flag).is_some_and(|rest| rest.starts_with('='))
    })
}

fn flags_from_file(path: &str, argv: &[OsString]) -> Result<Vec<OsString>, Failure> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| usage(format!("cannot read config {path}: {e}")))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| usage(format!("config {path} is not valid JSON: {e}")))?;
    let Value::Object(map) = json else {
        return Err(usage(format!("config {path} must be a JSON object")));
    };
    let mut out = Vec::new();
    for (key, value) in map {
        if key == "config" {
            return Err(usage("config files cannot name another config"));
        }
        let flag = format!("--{}", key.replace('_', "-"));
        if given(argv, &flag) {
            continue;
        }
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => out.push(format!("{flag}={n}").into()),
            Value::String(s) => out.push(format!("{flag}={s}").into()),
            Value::Array(items) => {
                let parts: Result<Vec<String>, Failure> = items
                    .iter()
                    .map(|v| match v {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        _ => Err(usage(format!("config key {key}: list items must be numbers or strings"))),
                    })
                    .collect();
                out.push(format!("{flag}={}", parts?.join(",")).into());
            }
            Value::Object(_) => return Err(usage(format!("config key {key}: nested objects are not supported"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn args(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn command_line_wins() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, r#"{{"snr_db": 20, "inr-db": 10, "optimize": true, "beta": [0, "1/8"]}}"#).unwrap();
        let p = f.path().to_string_lossy().into_owned();
        let out = merged_args(args(&["x", "gaussian", "bounds", "--config", &p, "--snr-db", "40"])).unwrap();
        let out: Vec<String> = out.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert!(out.contains(&"40".to_string()));
        assert!(!out.iter().any(|a| a == "--snr-db=20"));
        assert!(out.contains(&"--inr-db=10".to_string()));
        assert!(out.contains(&"--optimize".to_string()));
        assert!(out.contains(&"--beta=0,1/8".to_string()));
    }

    #[test]
    fn bad_files_are_usage_errors() {
        let out = merged_args(args(&["x", "--config", "/nonexistent/cfg.json"]));
        assert_eq!(out.unwrap_err().code(), 2);
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "[1, 2]").unwrap();
        let p = f.path().to_string_lossy().into_owned();
        assert_eq!(merged_args(args(&["x", "--config", &p])).unwrap_err().code(), 2);
    }

    #[test]
    fn no_config_is_untouched() {
        let a = args(&["x", "ldic", "region"]);
        assert_eq!(merged_args(a.clone()).unwrap(), a);
    }
}
