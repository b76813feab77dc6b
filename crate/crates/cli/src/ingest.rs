//! Reading instances from files and flags.
//!
//! Sequence files are taken byte for byte, except that one trailing `\n` is
//! dropped. Constraint files hold one pattern per line; blank lines are
//! rejected because an empty pattern is never a valid constraint.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Where an instance came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Inline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub patterns: Vec<Vec<u8>>,
    pub x_source: Source,
    pub y_source: Source,
    pub pattern_source: Option<PathBuf>,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))
}

pub fn strip_trailing_newline(mut bytes: Vec<u8>) -> Vec<u8> {
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
    }
    bytes
}

pub fn read_sequence(path: &Path) -> Result<Vec<u8>, CliError> {
    read(path).map(strip_trailing_newline)
}

pub fn parse_patterns(bytes: &[u8]) -> Result<Vec<Vec<u8>>, String> {
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if bytes.is_empty() {
        return Ok(Vec::new());
    }
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(line, p)| {
            if p.is_empty() {
                Err(format!("blank line {} (EmptyConstraint)", line + 1))
            } else {
                Ok(p.to_vec())
            }
        })
        .collect()
}

pub fn read_patterns(path: &Path) -> Result<Vec<Vec<u8>>, CliError> {
    parse_patterns(&read(path)?)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

pub fn os_bytes(s: &OsString) -> Vec<u8> {
    s.as_encoded_bytes().to_vec()
}

pub fn sequence(
    file: Option<&PathBuf>,
    inline: Option<&OsString>,
) -> Result<(Vec<u8>, Source), CliError> {
    match (file, inline) {
        (Some(path), None) => Ok((read_sequence(path)?, Source::File(path.clone()))),
        (None, Some(s)) => Ok((os_bytes(s), Source::Inline)),
        _ => Err(CliError::Usage("give exactly one of the file and inline forms".into())),
    }
}
