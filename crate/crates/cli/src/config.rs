//! Flat `key = value` config files whose keys mirror long flag names.
//! Values are spliced into argv before parsing, so flags given on the
//! command line win.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Command};

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse(src: &str, origin: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("{origin}:{}: expected `key = value`", i + 1);
        };
        let key = key.trim();
        if key.is_empty() {
            bail!("{origin}:{}: empty key", i + 1);
        }
        if out.iter().any(|(k, _)| k == key) {
            bail!("{origin}:{}: duplicate key {key:?}", i + 1);
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn takes_value(arg: &clap::Arg) -> bool {
    !matches!(arg.get_action(), ArgAction::SetTrue | ArgAction::SetFalse | ArgAction::Count | ArgAction::Help | ArgAction::Version)
}

/// Value of `--config` and the position of the subcommand name in argv.
fn scan(argv: &[OsString], cmd: &Command) -> (Option<OsString>, Option<usize>) {
    let config = argv.iter().enumerate().skip(1).find_map(|(i, a)| {
        let a = a.to_string_lossy();
        match a.strip_prefix("--config=") {
            Some(v) => Some(OsString::from(v)),
            None if a == "--config" => argv.get(i + 1).cloned(),
            None => None,
        }
    });
    let global_values: Vec<&str> = cmd
        .get_arguments()
        .filter(|a| takes_value(a))
        .filter_map(|a| a.get_long())
        .collect();
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        match tok.strip_prefix("--") {
            Some(long) if global_values.contains(&long) => i += 1,
            Some(_) => {}
            None if tok.starts_with('-') => {}
            None => return (config, Some(i)),
        }
        i += 1;
    }
    (config, None)
}

fn given(argv: &[OsString], long: &str) -> bool {
    argv.iter().any(|a| {
        let a = a.to_string_lossy();
        a.strip_prefix("--")
            .is_some_and(|rest| rest == long || rest.strip_prefix(long).is_some_and(|r| r.starts_with('=')))
    })
}

/// Returns argv with config-file values appended for flags not already given.
/// Keys belonging only to other subcommands are ignored; keys no subcommand
/// knows are an error.
pub fn merge(argv: Vec<OsString>, cmd: &Command) -> Result<Vec<OsString>> {
    let (Some(path), Some(sub_at)) = scan(&argv, cmd) else {
        return Ok(argv);
    };
    let path = Path::new(&path);
    let src = fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    let entries = parse(&src, &path.display().to_string()).map_err(UsageError)?;

    let name = argv[sub_at].to_string_lossy().into_owned();
    let Some(sub) = cmd.find_subcommand(&name) else {
        // let clap report the unknown subcommand
        return Ok(argv);
    };

    let mut out = argv.clone();
    for (key, value) in entries {
        if key == "config" {
            return Err(UsageError(anyhow::anyhow!("{}: `config` cannot be set from a config file", path.display())).into());
        }
        let arg = sub
            .get_arguments()
            .chain(cmd.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            let known = cmd
                .get_subcommands()
                .any(|s| s.get_arguments().any(|a| a.get_long() == Some(key.as_str())));
            if known {
                continue;
            }
            return Err(UsageError(anyhow::anyhow!("{}: unknown key {key:?}", path.display())).into());
        };
        if given(&argv, &key) {
            continue;
        }
        if takes_value(arg) {
            out.push(format!("--{key}={value}").into());
        } else {
            match value.as_str() {
                "true" => out.push(format!("--{key}").into()),
                "false" => {}
                _ => {
                    return Err(UsageError(anyhow::anyhow!(
                        "{}: {key} expects true or false, got {value:?}",
                        path.display()
                    ))
                    .into())
                }
            }
        }
    }
    Ok(out)
}

/// A config problem that should exit like a bad flag.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let got = parse("# run\nseed = 7\n\nratio=1:1:2\n", "c").unwrap();
        assert_eq!(got, vec![("seed".into(), "7".into()), ("ratio".into(), "1:1:2".into())]);
        assert!(parse("seed 7\n", "c").is_err());
        assert!(parse("seed=1\nseed=2\n", "c").is_err());
    }

    #[test]
    fn flag_detection() {
        let argv: Vec<OsString> = ["hm", "split", "--seed=3", "--stratified"].iter().map(OsString::from).collect();
        assert!(given(&argv, "seed"));
        assert!(given(&argv, "stratified"));
        assert!(!given(&argv, "see"));
        assert!(!given(&argv, "train-fraction"));
    }
}
