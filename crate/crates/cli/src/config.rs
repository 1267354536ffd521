//! Plain-text `key = value` configuration files.
//!
//! Each key maps one-to-one onto a long flag of the active subcommand
//! (underscores and dashes are interchangeable); `#` starts a comment.
//! Values from the file are inserted before the command line flags, so
//! explicit flags always win. Unknown keys fail the subsequent flag parse,
//! which rejects them with a usage error.

use std::fs;

/// Expand `--config FILE` occurrences into their flag lists.
pub fn expand_config_args(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(pos) = argv.iter().position(|a| a == "--config") else {
        return Ok(argv);
    };
    if pos + 1 >= argv.len() {
        return Err("--config requires a file path".into());
    }
    if pos < 2 {
        return Err("--config must follow a subcommand".into());
    }
    let path = argv[pos + 1].clone();
    let text = fs::read_to_string(&path).map_err(|e| format!("reading {path}: {e}"))?;
    // Explicit flags win: skip file keys that also appear on the command
    // line.
    let explicit: std::collections::HashSet<&String> =
        argv.iter().filter(|a| a.starts_with("--")).collect();
    let mut flags = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("{path}:{}: expected `key = value`", lineno + 1));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(format!("{path}:{}: empty key or value", lineno + 1));
        }
        let flag = format!("--{key}");
        if explicit.contains(&flag) {
            continue;
        }
        flags.push(flag);
        if value != "true" {
            flags.push(value.to_string());
        }
    }
    // argv = [prog, subcmd, ..., --config, path, ...]:
    // insert file flags right after the subcommand.
    let mut out = Vec::with_capacity(argv.len() + flags.len());
    out.extend_from_slice(&argv[..2]);
    out.extend(flags);
    out.extend(argv[2..pos].iter().cloned());
    out.extend(argv[pos + 2..].iter().cloned());
    Ok(out)
}
