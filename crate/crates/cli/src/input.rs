use std::fs;
use std::io::{self, Read};
use std::path::Path;

use thiserror::Error;
use unicast_core::field::FieldError;
use unicast_core::graph::{parse_instance, ParseError, UnicastInstance};
use unicast_core::netcode::{parse_code, CodeError, CodeParseError, NetworkCode};
use unicast_core::oracle::{example_text, TripleError, EXAMPLES};

/// Failures that mean the tool was misused; all exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {origin}: {source}")]
    Read { origin: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("{origin}: {source}")]
    Instance { origin: String, source: ParseError },
    #[error("{origin}: {source}")]
    CodeFile { origin: String, source: CodeParseError },
    #[error("code does not fit the instance: {0}")]
    Mismatch(#[from] CodeError),
    #[error("no file or built-in example named `{0}`")]
    NotFound(String),
    #[error("unknown example `{0}`; known: {known}", known = example_ids())]
    UnknownExample(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

fn example_ids() -> String {
    EXAMPLES.iter().map(|(id, _)| *id).collect::<Vec<_>>().join(", ")
}

fn read_source(arg: &str) -> Result<(String, String), CliError> {
    if arg == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read { origin: "stdin".into(), source })?;
        return Ok(("stdin".into(), text));
    }
    if Path::new(arg).exists() {
        let text = fs::read_to_string(arg).map_err(|source| CliError::Read { origin: arg.into(), source })?;
        return Ok((arg.into(), text));
    }
    Err(CliError::NotFound(arg.into()))
}

/// Reads an instance from a file, from stdin (`-`), or from a built-in
/// example id. A file of the same name takes precedence over an example.
pub fn load_instance(arg: &str) -> Result<UnicastInstance, CliError> {
    let (origin, text) = match read_source(arg) {
        Ok(found) => found,
        Err(CliError::NotFound(_)) if example_text(arg).is_some() => {
            (format!("example {arg}"), example_text(arg).unwrap().to_string())
        }
        Err(e) => return Err(e),
    };
    parse_instance(&text).map_err(|source| CliError::Instance { origin, source })
}

pub fn load_code(arg: &str) -> Result<NetworkCode, CliError> {
    let (origin, text) = read_source(arg)?;
    parse_code(&text).map_err(|source| CliError::CodeFile { origin, source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}
