//! Plain-text code files and the JSON export record.
//!
//! A code file holds one word per line. Blank lines and lines starting with
//! `#` are skipped. The first remaining line may be a header such as
//! `q=3 n=6 I=0,2`.

use std::io::Write;

use cbf_core::{Bipartition, Code, Word};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Header {
    pub q: Option<u8>,
    pub n: Option<usize>,
    pub i: Option<Vec<u8>>,
}

/// A parsed code file.
#[derive(Debug, Clone)]
pub struct CodeFile {
    pub header: Option<Header>,
    pub code: Code,
}

impl CodeFile {
    /// The bipartition named in the header, if any.
    pub fn bipartition(&self) -> Result<Option<Bipartition>> {
        match self.header.as_ref().and_then(|h| h.i.as_deref()) {
            Some(i) => Ok(Some(Bipartition::new(self.code.q(), i)?)),
            None => Ok(None),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a comma-separated symbol list such as `0,2`.
pub fn parse_symbols(text: &str) -> std::result::Result<Vec<u8>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u8>()
                .map_err(|_| format!("bad symbol {s:?}"))
        })
        .collect()
}

fn parse_header(text: &str, line: usize) -> Result<Header> {
    let mut h = Header::default();
    for token in text.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got {token:?}")))?;
        let bad = |what: &str| parse_err(line, format!("bad {what} value {value:?}"));
        match key {
            "q" => h.q = Some(value.parse().map_err(|_| bad("q"))?),
            "n" => h.n = Some(value.parse().map_err(|_| bad("n"))?),
            "I" => h.i = Some(parse_symbols(value).map_err(|m| parse_err(line, m))?),
            _ => return Err(parse_err(line, format!("unknown header key {key:?}"))),
        }
    }
    Ok(h)
}

/// Parses a code file. `q` is used when the file has no header; if both are
/// present they must agree.
pub fn parse(text: &str, q: Option<u8>) -> Result<CodeFile> {
    let mut header: Option<Header> = None;
    let mut words: Vec<(usize, Word)> = Vec::new();
    let mut alphabet: Option<u8> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if header.is_none() && words.is_empty() && content.starts_with("q=") {
            let h = parse_header(content, line)?;
            let hq = h.q.ok_or_else(|| parse_err(line, "header lacks q"))?;
            if let Some(flag) = q.filter(|&f| f != hq) {
                return Err(parse_err(
                    line,
                    format!("header q={hq} conflicts with --q {flag}"),
                ));
            }
            alphabet = Some(hq);
            header = Some(h);
            continue;
        }
        let q = *alphabet.get_or_insert(q.unwrap_or(2));
        let w = Word::parse(content, q).map_err(|e| parse_err(line, e.to_string()))?;
        words.push((line, w));
    }
    let Some((_, first)) = words.first() else {
        return Err(CliError::NoWords);
    };
    let n = header.as_ref().and_then(|h| h.n).unwrap_or(first.len());
    if let Some((line, w)) = words.iter().find(|(_, w)| w.len() != n) {
        return Err(parse_err(
            *line,
            format!("word has length {}, expected {n}", w.len()),
        ));
    }
    let q = alphabet.unwrap_or(2);
    let code = Code::new(q, n, words.into_iter().map(|(_, w)| w))?;
    Ok(CodeFile { header, code })
}

/// Writes the words of `code`, one per line.
pub fn write_words(code: &Code, out: &mut dyn Write) -> std::io::Result<()> {
    for w in code.iter() {
        writeln!(out, "{}", w.to_text(code.q()))?;
    }
    Ok(())
}

/// JSON form of a code together with its verification status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeExport {
    pub q: u8,
    pub n: usize,
    #[serde(rename = "I")]
    pub i: Vec<u8>,
    #[serde(rename = "J")]
    pub j: Vec<u8>,
    pub words: Vec<String>,
    pub verified: bool,
    pub non_expandable: Option<bool>,
}

impl CodeExport {
    pub fn new(
        code: &Code,
        bip: &Bipartition,
        verified: bool,
        non_expandable: Option<bool>,
    ) -> Self {
        CodeExport {
            q: code.q(),
            n: code.n(),
            i: bip.i_symbols().collect(),
            j: bip.j_symbols().collect(),
            words: code.iter().map(|w| w.to_text(code.q())).collect(),
            verified,
            non_expandable,
        }
    }
}
