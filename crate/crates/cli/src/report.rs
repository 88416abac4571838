use std::io::Write;
use std::path::Path;

use anyhow::Context;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Leading comment line of every CSV file. Bump when columns change.
pub const SCHEMA_VERSION: u32 = 1;

/// Serializes `rows` with a header, preceded by `# schema: fqdist-<name>/<version>`.
/// The header is written even when there are no rows.
pub fn csv_bytes<T: Serialize + Default>(name: &str, rows: &[T]) -> anyhow::Result<Vec<u8>> {
    let mut buf = format!("# schema: fqdist-{name}/{SCHEMA_VERSION}\n").into_bytes();
    if rows.is_empty() {
        let mut scratch = Vec::new();
        {
            let mut w = csv::Writer::from_writer(&mut scratch);
            w.serialize(T::default())?;
            w.flush()?;
        }
        let header_end = scratch.iter().position(|&b| b == b'\n').map_or(scratch.len(), |i| i + 1);
        buf.extend_from_slice(&scratch[..header_end]);
        return Ok(buf);
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub failures: usize,
    /// Smallest `distinct_all - bound` seen, as an exact fraction.
    pub worst_slack: Option<String>,
    /// Work that was not done, with the reason.
    pub skipped: Vec<String>,
    /// One line per failed check.
    pub failed: Vec<String>,
}

impl Summary {
    pub fn note_slack(&mut self, slack: Ratio<i128>, worst: &mut Option<Ratio<i128>>) {
        if worst.map_or(true, |w| slack < w) {
            *worst = Some(slack);
            self.worst_slack = Some(slack.to_string());
        }
    }

    pub fn fail(&mut self, what: String) {
        self.failures += 1;
        self.failed.push(what);
    }

    pub fn skip(&mut self, what: String) {
        eprintln!("notice: skipped {what}");
        self.skipped.push(what);
    }
}

/// Everything a subcommand produces.
#[derive(Debug)]
pub struct Outcome {
    /// `(file name, contents)`; the first entry is the primary report.
    pub files: Vec<(String, Vec<u8>)>,
    pub summary: Summary,
}

impl Outcome {
    pub fn success(&self) -> bool {
        self.summary.failures == 0
    }

    pub fn file(&self, name: &str) -> Option<&[u8]> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, b)| b.as_slice())
    }

    /// Writes every file plus `summary.json` into `dir`, or the primary report
    /// to stdout and the summary to stderr when `dir` is `None`.
    pub fn emit(&self, dir: Option<&Path>) -> anyhow::Result<()> {
        let summary = serde_json::to_string_pretty(&self.summary)? + "\n";
        match dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, bytes) in &self.files {
                    std::fs::write(dir.join(name), bytes)?;
                }
                std::fs::write(dir.join("summary.json"), &summary)?;
            }
            None => {
                if let Some((_, bytes)) = self.files.first() {
                    std::io::stdout().write_all(bytes)?;
                }
                eprint!("{summary}");
            }
        }
        Ok(())
    }
}
