//! `--config FILE` support: plain `key value` lines spliced into the
//! argument list right after the subcommand, so explicit flags win.

use std::ffi::OsString;
use std::path::Path;

const SUBCOMMANDS: [&str; 9] = [
    "paley",
    "conference",
    "validate",
    "build",
    "report",
    "orbit",
    "paut",
    "decode",
    "reproduce",
];

/// Turns config text into long flags. `key true` becomes a bare flag and
/// `key false` is dropped.
pub fn config_args(text: &str) -> Result<Vec<OsString>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => (line, "true"),
        };
        let key = key.trim_start_matches("--");
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: bad key", no + 1));
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            v => {
                out.push(format!("--{key}").into());
                out.push(v.into());
            }
        }
    }
    Ok(out)
}

/// Removes `--config FILE` from `args` and splices the file's flags in.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(arg) = it.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            config = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(path) = text.strip_prefix("--config=") {
            config = Some(path.into());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let extra = config_args(&text)?;
    let at = rest
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(rest.len(), |i| i + 1);
    rest.splice(at..at, extra);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parse_lines() {
        let args = config_args("# cap\nenum-cap 1000\nstrict true\nrequire-exact false\nq 3\n").unwrap();
        assert_eq!(args, os(&["--enum-cap", "1000", "--strict", "--q", "3"]));
        assert!(config_args("--config x").is_err());
    }

    #[test]
    fn splice_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "enum-cap 7\n").unwrap();
        let args = os(&["lcdcodes", "--config", path.to_str().unwrap(), "report", "g.mat", "--enum-cap", "9"]);
        let out = expand(args).unwrap();
        assert_eq!(out, os(&["lcdcodes", "report", "--enum-cap", "7", "g.mat", "--enum-cap", "9"]));
    }
}
