//! Run directories. Each invocation with an output root gets a fresh
//! `<command>-NNNN` directory; existing directories are never reused.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

/// An extra file written next to `report.json`.
pub struct Artifact {
    pub name: &'static str,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn csv<R: Serialize>(name: &'static str, rows: &[R]) -> io::Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(io::Error::other)?;
        }
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        Ok(Artifact { name, bytes })
    }

    pub fn json_lines<R: Serialize>(name: &'static str, rows: impl IntoIterator<Item = R>) -> io::Result<Self> {
        let mut bytes = Vec::new();
        for r in rows {
            serde_json::to_writer(&mut bytes, &r).map_err(io::Error::other)?;
            bytes.push(b'\n');
        }
        Ok(Artifact { name, bytes })
    }
}

fn create_run_dir(root: &Path, command: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(root)?;
    for i in 1..=9999u32 {
        let dir = root.join(format!("{command}-{i:04}"));
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e),
        }
    }
    Err(io::Error::other(format!("no free run directory under {}", root.display())))
}

/// Writes `report.json` and the artifacts into a new run directory.
///
/// The header holds everything that varies between identical runs (wall
/// clock and elapsed time); the rest of the report is a pure function of the
/// resolved config.
pub fn write_run(
    root: &Path,
    command: &str,
    config: &Value,
    body: &Value,
    exit_code: u8,
    elapsed: Duration,
    artifacts: &[Artifact],
) -> io::Result<PathBuf> {
    let dir = create_run_dir(root, command)?;
    let ts = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
    let report = json!({
        "header": {
            "timestamp_unix_ms": ts.as_millis() as u64,
            "elapsed_ms": elapsed.as_secs_f64() * 1e3,
        },
        "tool": concat!("spdiff ", env!("CARGO_PKG_VERSION")),
        "command": command,
        "config": config,
        "exit_code": exit_code,
        "result": body,
    });
    let mut f = fs::File::create_new(dir.join("report.json"))?;
    serde_json::to_writer_pretty(&mut f, &report).map_err(io::Error::other)?;
    f.write_all(b"\n")?;
    for a in artifacts {
        fs::File::create_new(dir.join(a.name))?.write_all(&a.bytes)?;
    }
    Ok(dir)
}
