//! Flag parsing helpers and input documents.

use std::collections::BTreeSet;
use std::io::{IsTerminal, Read};
use std::path::Path;

use serde::de::DeserializeOwned;
use superspecial::matrix::QMatrix;
use superspecial::{rational, DiagonalForm, Error, Place, Rational, Result};

pub fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|x| rational::parse(x.trim())).collect()
}

pub fn form(s: &str) -> Result<DiagonalForm> {
    DiagonalForm::new(rational_list(s)?)
}

/// `"a,b;c,d"`, rows separated by semicolons.
pub fn gram(s: &str) -> Result<QMatrix> {
    let rows = s.split(';').map(rational_list).collect::<Result<Vec<_>>>()?;
    QMatrix::new(rows)
}

pub fn place(s: &str) -> Result<Place> {
    s.parse()
}

pub fn nodes(s: &str) -> Result<BTreeSet<usize>> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Domain(format!("bad node {x:?}"))))
        .collect()
}

/// `"0,2,t"`: a word in the simple reflections, optionally followed by `t`
/// for a trailing `τ`. `"e"` is the identity.
pub fn element(s: &str) -> Result<(Vec<usize>, u8)> {
    let mut word = Vec::new();
    let mut omega = 0;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty() && *p != "e") {
        if omega == 1 {
            return Err(Error::Domain("τ must come last in an element".into()));
        }
        if part == "t" || part == "tau" {
            omega = 1;
        } else {
            word.push(part.parse().map_err(|_| Error::Domain(format!("bad node {part:?}")))?);
        }
    }
    Ok((word, omega))
}

pub fn require<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Domain(format!("missing --{flag}")))
}

/// The input document: a file, `-` for stdin, or piped stdin when no flag
/// is given.
pub fn document(path: Option<&Path>) -> Result<Option<serde_json::Value>> {
    let text = match path {
        Some(p) if p == Path::new("-") => Some(read_stdin()?),
        Some(p) => Some(
            std::fs::read_to_string(p).map_err(|e| Error::Domain(format!("cannot read {}: {e}", p.display())))?,
        ),
        None if !std::io::stdin().is_terminal() => {
            let s = read_stdin()?;
            (!s.trim().is_empty()).then_some(s)
        }
        None => None,
    };
    text.map(|t| serde_json::from_str(&t).map_err(|e| Error::Domain(format!("invalid JSON input: {e}"))))
        .transpose()
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Domain(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

pub fn parse_doc<T: DeserializeOwned>(v: &serde_json::Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Domain(format!("input does not match the schema: {e}")))
}
