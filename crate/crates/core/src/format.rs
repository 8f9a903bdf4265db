//! Plain-text codebook files.
//!
//! ```text
//! q=4 l=1 n=3 mode=uec
//! # comment
//! 1 1 1
//! 1 3 0
//! ```
//!
//! The header comes first, then one word per line in lexicographic order.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write;

use crate::code::{CodeMode, CodeParams, Codebook, Word};
use crate::error::{Error, Result};

pub fn header(params: &CodeParams, mode: CodeMode) -> String {
    format!(
        "q={} l={} n={} mode={}",
        params.q(),
        params.ell(),
        params.n(),
        mode
    )
}

pub fn write_codebook(c: &Codebook) -> String {
    let mut out = header(&c.params(), c.mode());
    out.push('\n');
    for w in c.iter() {
        writeln!(out, "{w}").expect("writing to a String");
    }
    out
}

fn parse_header(line: &str, line_no: usize) -> Result<(CodeParams, CodeMode)> {
    let err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let (mut q, mut ell, mut n, mut mode) = (None, None, None, None);
    for field in line.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got {field:?}")))?;
        let bad = |e: std::num::ParseIntError| err(format!("bad value for {key}: {e}"));
        match key {
            "q" => q = Some(value.parse::<u32>().map_err(bad)?),
            "l" => ell = Some(value.parse::<u32>().map_err(bad)?),
            "n" => n = Some(value.parse::<usize>().map_err(bad)?),
            "mode" => mode = Some(value.parse::<CodeMode>().map_err(|e| err(e.to_string()))?),
            other => return Err(err(format!("unknown header key {other:?}"))),
        }
    }
    let missing = |k: &str| err(format!("header is missing {k}"));
    let params = CodeParams::new(
        q.ok_or_else(|| missing("q"))?,
        ell.ok_or_else(|| missing("l"))?,
        n.ok_or_else(|| missing("n"))?,
    )
    .map_err(|e| err(e.to_string()))?;
    Ok((params, mode.ok_or_else(|| missing("mode"))?))
}

pub fn parse_codebook(text: &str) -> Result<Codebook> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (params, mode) = parse_header(first, line_no)?;
    let mut words = Vec::new();
    for (line, text) in lines {
        let w: Word = text.parse().map_err(|e: Error| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        params.check_word(&w).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        words.push(w);
    }
    Codebook::new(params, mode, words)
}
