//! File output with checkpoint/resume.
//!
//! After each chunk the rows are appended and synced, then the checkpoint is
//! replaced atomically (write to a temporary file, then rename). A resumed
//! run truncates the output to the length recorded in the checkpoint, which
//! discards any rows of a chunk that was in flight, and recomputes from the
//! first uncommitted `n`.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{check_range, drive, spec_digest, Format, ScanConfig, ScanJob, ScanSummary};
use crate::{Error, Result};

const VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Checkpoint {
    pub version: u32,
    pub spec_digest: String,
    /// Last `n` whose row is in the output.
    pub completed_upto: i64,
    pub records_path: String,
    /// Length of the output covering exactly the committed rows.
    pub records_bytes: u64,
    pub rows_written: u64,
    pub finished: bool,
    pub summary: ScanSummary,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Checkpoint(format!("cannot read {}: {e}", path.display())))?;
        let ck: Checkpoint = serde_json::from_str(&text).map_err(|e| {
            Error::Checkpoint(format!("{} is not a checkpoint: {e}", path.display()))
        })?;
        if ck.version != VERSION {
            return Err(Error::Checkpoint(format!(
                "checkpoint version {} is not supported",
                ck.version
            )));
        }
        Ok(ck)
    }

    fn store(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = File::create(&tmp)?;
            serde_json::to_writer_pretty(&mut f, self)?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Output file; standard output when absent.
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    /// Checkpoint file: resumed from when it exists, created otherwise.
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many chunks without finishing the output, as if the
    /// process had been killed.
    pub stop_after_chunks: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub summary: ScanSummary,
    pub finished: bool,
    /// First `n` computed by this run when it continued a checkpoint.
    pub resumed_from: Option<i64>,
    pub rows_written: u64,
}

enum Sink {
    File(File),
    Stdout(io::Stdout),
}

impl Sink {
    fn append(&mut self, bytes: &[u8]) -> Result<u64> {
        match self {
            Sink::File(f) => {
                f.write_all(bytes)?;
                f.sync_data()?;
                Ok(f.stream_position()?)
            }
            Sink::Stdout(s) => {
                let mut lock = s.lock();
                lock.write_all(bytes)?;
                lock.flush()?;
                Ok(0)
            }
        }
    }
}

/// Scans `[lo, hi]` and writes the rows to `opts.out` (or standard output).
pub fn run_scan(
    job: &ScanJob,
    lo: i64,
    hi: i64,
    cfg: &ScanConfig,
    opts: &RunOptions,
) -> Result<RunOutcome> {
    check_range(lo, hi)?;
    job.validate()?;
    let format = opts.format.unwrap_or(Format::Csv);
    let digest = spec_digest(job, lo, hi, cfg, format);
    if opts.checkpoint.is_some() && opts.out.is_none() {
        return Err(Error::Usage("checkpointing needs an output file".into()));
    }
    let records_path = opts
        .out
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_default();

    let existing = match &opts.checkpoint {
        Some(p) if p.exists() => Some(Checkpoint::load(p)?),
        _ => None,
    };

    let (mut sink, mut state, resumed_from) = match existing {
        Some(ck) => {
            if ck.spec_digest != digest {
                return Err(Error::Checkpoint(
                    "scan configuration differs from the one that wrote the checkpoint".into(),
                ));
            }
            if ck.records_path != records_path {
                return Err(Error::Checkpoint(format!(
                    "checkpoint belongs to output {:?}, not {records_path:?}",
                    ck.records_path
                )));
            }
            if ck.finished {
                return Ok(RunOutcome {
                    summary: ck.summary,
                    finished: true,
                    resumed_from: None,
                    rows_written: ck.rows_written,
                });
            }
            let path = opts.out.as_ref().expect("checked above");
            let mut f = OpenOptions::new().write(true).open(path).map_err(|e| {
                Error::Checkpoint(format!("cannot reopen output {}: {e}", path.display()))
            })?;
            let len = f.metadata()?.len();
            if len < ck.records_bytes {
                return Err(Error::Checkpoint(format!(
                    "output {} is shorter ({len} bytes) than the checkpoint records ({})",
                    path.display(),
                    ck.records_bytes
                )));
            }
            f.set_len(ck.records_bytes)?;
            f.seek(SeekFrom::End(0))?;
            let from = ck.completed_upto + 1;
            (Sink::File(f), ck, Some(from))
        }
        None => {
            let mut sink = match &opts.out {
                Some(p) => Sink::File(File::create(p)?),
                None => Sink::Stdout(io::stdout()),
            };
            let len = sink.append(&format.preamble())?;
            let ck = Checkpoint {
                version: VERSION,
                spec_digest: digest,
                completed_upto: lo - 1,
                records_path,
                records_bytes: len,
                rows_written: 0,
                finished: false,
                summary: ScanSummary::default(),
            };
            if let Some(p) = &opts.checkpoint {
                ck.store(p)?;
            }
            (sink, ck, None)
        }
    };

    let mut chunks = 0u64;
    let mut summary = state.summary.clone();
    let finished = drive(
        job,
        state.completed_upto + 1,
        hi,
        cfg,
        &mut summary,
        |rows, last, sum| {
            let bytes = format.encode(rows, state.rows_written)?;
            state.records_bytes = sink.append(&bytes)?;
            state.rows_written += rows.len() as u64;
            state.completed_upto = last;
            state.summary = sum.clone();
            if let Some(p) = &opts.checkpoint {
                state.store(p)?;
            }
            chunks += 1;
            Ok(opts.stop_after_chunks.is_none_or(|k| chunks < k))
        },
    )?;
    // `drive` reports false only when the sink asked to stop
    let finished = finished && state.completed_upto >= hi;
    if finished {
        state.records_bytes = sink.append(&format.trailer(state.rows_written))?;
        state.finished = true;
        if let Some(p) = &opts.checkpoint {
            state.store(p)?;
        }
    }
    Ok(RunOutcome {
        summary: state.summary,
        finished,
        resumed_from,
        rows_written: state.rows_written,
    })
}
