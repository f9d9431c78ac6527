//! Output assembly: the reproducibility header every artifact starts with,
//! and atomic write-then-rename delivery.

use std::fs;
use std::io::Write;
use std::path::Path;

/// `#`-prefixed header block: version, the exact command line, the effective
/// (post-default) configuration, and the seed. Everything needed to reproduce
/// the file byte for byte.
pub fn header(command_line: &str, config: &[(String, String)], seed: u64) -> String {
    let mut out = String::new();
    out.push_str(&format!("# qforge v{}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("# command: {command_line}\n"));
    let cfg = config
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(&format!("# config: {cfg}\n"));
    out.push_str(&format!("# seed: {seed}\n"));
    out
}

/// Write to `path` atomically (temp file in the same directory, then rename),
/// or to stdout when no path is given.
pub fn deliver(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout().flush()
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let tmp = match dir {
                Some(d) => d.join(format!(
                    ".{}.tmp",
                    path.file_name().unwrap_or_default().to_string_lossy()
                )),
                None => std::path::PathBuf::from(format!(
                    ".{}.tmp",
                    path.file_name().unwrap_or_default().to_string_lossy()
                )),
            };
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)
        }
    }
}
