//! `--name value` parameter lists shared by `eval` and `table`.

use std::collections::BTreeMap;

use qmu::qcore::{ModularPoint, C64};

use crate::complex::parse_complex;
use crate::CliError;

/// Flags that take no value.
const SWITCHES: &[&str] = &["json"];

#[derive(Debug, Clone, Default)]
pub struct Params {
    map: BTreeMap<String, String>,
    switches: Vec<String>,
}

impl Params {
    pub fn parse(args: &[String]) -> Result<Self, CliError> {
        let mut p = Params::default();
        let mut it = args.iter();
        while let Some(a) = it.next() {
            let Some(flag) = a.strip_prefix("--") else {
                return Err(CliError::Parse(format!("unexpected argument {a:?}, expected --name value")));
            };
            let (key, value) = match flag.split_once('=') {
                Some((k, v)) => (k, v.to_string()),
                None if SWITCHES.contains(&flag) => {
                    p.switches.push(flag.to_string());
                    continue;
                }
                None => {
                    let v = it.next().ok_or_else(|| CliError::Parse(format!("--{flag} needs a value")))?;
                    (flag, v.clone())
                }
            };
            if key.is_empty() || p.map.insert(key.to_string(), value).is_some() {
                return Err(CliError::Parse(format!("--{key} given more than once")));
            }
        }
        Ok(p)
    }

    pub fn switch(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn with(&self, key: &str, value: String) -> Params {
        let mut p = self.clone();
        p.map.insert(key.to_string(), value);
        p
    }

    pub fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    pub fn opt(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.opt(key).ok_or_else(|| CliError::Parse(format!("missing --{key}")))
    }

    pub fn c(&self, key: &str) -> Result<C64, CliError> {
        parse_complex(self.raw(key)?).map_err(|e| CliError::Parse(format!("--{key}: {e}")))
    }

    pub fn uint(&self, key: &str) -> Result<usize, CliError> {
        let s = self.raw(key)?;
        s.parse().map_err(|_| CliError::Parse(format!("--{key}: expected a non-negative integer, got {s:?}")))
    }

    /// Comma-separated complex list; absent or empty means no entries.
    pub fn list(&self, key: &str) -> Result<Vec<C64>, CliError> {
        match self.opt(key).map(str::trim) {
            None | Some("") => Ok(Vec::new()),
            Some(s) => s
                .split(',')
                .map(|t| parse_complex(t).map_err(|e| CliError::Parse(format!("--{key}: {e}"))))
                .collect(),
        }
    }

    /// The modular point from `--tau`, or from the nome `--q`.
    pub fn tau(&self) -> Result<ModularPoint, CliError> {
        match (self.opt("tau"), self.opt("q")) {
            (Some(_), Some(_)) => Err(CliError::Parse("give --tau or --q, not both".into())),
            (Some(_), None) => Ok(ModularPoint::new(self.c("tau")?)?),
            (None, Some(_)) => Ok(ModularPoint::from_nome(self.c("q")?)?),
            (None, None) => Err(CliError::Parse("missing --tau".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &[&str]) -> Vec<String> {
        s.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn negative_values_and_switches() {
        let p = Params::parse(&args(&["--v", "-0.1+0.02i", "--json", "--u=0.2"])).unwrap();
        assert_eq!(p.c("v").unwrap(), C64::new(-0.1, 0.02));
        assert_eq!(p.c("u").unwrap(), C64::new(0.2, 0.0));
        assert!(p.switch("json"));
    }

    #[test]
    fn malformed() {
        assert!(Params::parse(&args(&["--u"])).is_err());
        assert!(Params::parse(&args(&["u", "1"])).is_err());
        assert!(Params::parse(&args(&["--u", "1", "--u", "2"])).is_err());
        let p = Params::parse(&args(&["--upper", "0.1, 0.2i", "--lower", ""])).unwrap();
        assert_eq!(p.list("upper").unwrap().len(), 2);
        assert!(p.list("lower").unwrap().is_empty());
    }
}
