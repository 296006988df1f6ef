//! Append-only session transcripts and their replay.
//!
//! A transcript is a JSON-lines file: one header record with the reference
//! pattern and configuration, then one record per applied action with the
//! feedback it produced.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Action, Feedback, Session, SessionConfig, SessionError};
use crate::cp::{parse_cp, serialize_cp, CreasePattern};
use crate::diagnostics::Diagnostics;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Header { reference: String, config: SessionConfig },
    Step { action: Action, feedback: Feedback },
}

pub struct TranscriptWriter {
    file: File,
}

impl TranscriptWriter {
    /// Create the file and write the header.
    pub fn create(path: &Path, reference: &CreasePattern, config: &SessionConfig) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).write(true).truncate(true).open(path)?;
        let mut w = TranscriptWriter { file };
        w.write(&Record::Header { reference: serialize_cp(reference), config: *config })?;
        Ok(w)
    }

    pub fn append(&mut self, action: &Action, feedback: &Feedback) -> io::Result<()> {
        self.write(&Record::Step { action: action.clone(), feedback: feedback.clone() })
    }

    fn write(&mut self, record: &Record) -> io::Result<()> {
        let line = serde_json::to_string(record).map_err(io::Error::other)?;
        writeln!(self.file, "{line}")?;
        self.file.flush()
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("transcript I/O: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("reference in transcript does not parse: {0}")]
    Reference(Diagnostics),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error("line {line}: replayed feedback differs from the recorded one")]
    Mismatch { line: usize, recorded: Box<Feedback>, replayed: Box<Feedback> },
}

/// Rebuild the session from the header, re-apply every recorded action and
/// check each feedback is reproduced exactly.
pub fn replay(path: &Path) -> Result<Vec<Feedback>, ReplayError> {
    let reader = BufReader::new(File::open(path)?);
    let mut session: Option<Session> = None;
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record =
            serde_json::from_str(&line).map_err(|e| ReplayError::Format { line: i + 1, message: e.to_string() })?;
        match (record, session.as_mut()) {
            (Record::Header { reference, config }, None) => {
                let cp = parse_cp(&reference).map_err(ReplayError::Reference)?;
                session = Some(Session::new(cp, config)?);
            }
            (Record::Step { action, feedback }, Some(s)) => {
                let replayed = s.apply(&action)?;
                if replayed != feedback {
                    return Err(ReplayError::Mismatch { line: i + 1, recorded: Box::new(feedback), replayed: Box::new(replayed) });
                }
                out.push(replayed);
            }
            (Record::Header { .. }, Some(_)) => {
                return Err(ReplayError::Format { line: i + 1, message: "second header".into() });
            }
            (Record::Step { .. }, None) => {
                return Err(ReplayError::Format { line: i + 1, message: "step before header".into() });
            }
        }
    }
    if session.is_none() {
        return Err(ReplayError::Format { line: 0, message: "empty transcript".into() });
    }
    Ok(out)
}
