//! The `key = value` input format.
//!
//! ```text
//! # the maximal ideal times F, d = 2, p = 2
//! field = Fp:10007
//! xvars = 2
//! rank = 2
//! gens = [ (x1, 0); (x2, 0); (0, x1); (0, x2) ]
//! ```

use std::path::Path;

use coefmod::kernel::ModulePresentation;
use coefmod::monomial::{Monomial, Ring};
use coefmod::parse::parse_poly;
use coefmod::poly::PolyElement;
use coefmod::scalar::Field;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// A parsed input file.
#[derive(Debug, Clone)]
pub struct SpecFile {
    pub presentation: ModulePresentation,
    pub labels: Vec<String>,
    /// Hex SHA-256 of the raw file contents.
    pub digest: String,
}

impl SpecFile {
    pub fn ring(&self) -> Ring {
        *self.presentation.ring()
    }
}

pub fn load_spec(path: &Path) -> CliResult<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

struct Value {
    text: String,
    line: usize,
    col: usize,
}

fn spec_err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Spec { line, col, msg: msg.into() }
}

pub fn parse_spec(text: &str) -> CliResult<SpecFile> {
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let mut field = None;
    let mut xvars = None;
    let mut rank = None;
    let mut gens: Option<Value> = None;
    let mut labels = None;
    let mut lines = text.lines().enumerate();
    while let Some((i, raw)) = lines.next() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(spec_err(i + 1, 1, "expected `key = value`"));
        };
        let key = line[..eq].trim();
        let offset = eq + 1 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
        let mut value = Value { text: line[eq + 1..].trim().to_string(), line: i + 1, col: offset + 1 };
        match key {
            "field" => field = Some(value),
            "xvars" => xvars = Some(value),
            "rank" => rank = Some(value),
            "labels" => labels = Some(value),
            "gens" => {
                while !value.text.contains(']') {
                    let Some((_, more)) = lines.next() else {
                        return Err(spec_err(value.line, value.col, "unterminated generator list"));
                    };
                    value.text.push(' ');
                    value.text.push_str(more.split('#').next().unwrap_or("").trim());
                }
                gens = Some(value);
            }
            other => return Err(spec_err(i + 1, 1, format!("unknown key `{other}`"))),
        }
    }
    let field = parse_field(field.as_ref().ok_or_else(|| spec_err(0, 0, "missing `field`"))?)?;
    let d = parse_count(xvars.as_ref().ok_or_else(|| spec_err(0, 0, "missing `xvars`"))?)?;
    let p = parse_count(rank.as_ref().ok_or_else(|| spec_err(0, 0, "missing `rank`"))?)?;
    let ring = Ring::new(field, d, p)?;
    let gens = gens.ok_or_else(|| spec_err(0, 0, "missing `gens`"))?;
    let elems = parse_vectors(&gens, ring)?;
    let labels = match labels {
        None => Vec::new(),
        Some(v) => {
            let l: Vec<String> = v.text.split(',').map(|s| s.trim().to_string()).collect();
            if l.len() != elems.len() {
                return Err(spec_err(v.line, v.col, format!("{} labels for {} generators", l.len(), elems.len())));
            }
            l
        }
    };
    let presentation = ModulePresentation::new(ring, 1, elems)?;
    Ok(SpecFile { presentation, labels, digest })
}

fn parse_field(v: &Value) -> CliResult<Field> {
    if v.text == "Q" {
        return Ok(Field::Rational);
    }
    let Some(p) = v.text.strip_prefix("Fp:") else {
        return Err(spec_err(v.line, v.col, "field must be `Q` or `Fp:<prime>`"));
    };
    let p: u64 = p.trim().parse().map_err(|_| spec_err(v.line, v.col + 3, "bad modulus"))?;
    Field::prime(p).map_err(|_| spec_err(v.line, v.col + 3, format!("{p} is not prime")))
}

fn parse_count(v: &Value) -> CliResult<usize> {
    match v.text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(spec_err(v.line, v.col, "expected a positive integer")),
    }
}

/// Splits `[ (a, b); (c, d) ]` into entries with their column offsets.
fn parse_vectors(v: &Value, ring: Ring) -> CliResult<Vec<PolyElement>> {
    let text = v.text.as_str();
    let open = text.find('[').ok_or_else(|| spec_err(v.line, v.col, "expected `[`"))?;
    let close = text.rfind(']').ok_or_else(|| spec_err(v.line, v.col, "expected `]`"))?;
    let body = &text[open + 1..close];
    let mut out = Vec::new();
    let mut start = open + 1;
    for chunk in body.split(';') {
        let col = v.col + start;
        start += chunk.len() + 1;
        let trimmed = chunk.trim();
        if trimmed.is_empty() {
            continue;
        }
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| spec_err(v.line, col, "each generator is a parenthesized vector"))?;
        let entries: Vec<&str> = inner.split(',').collect();
        if entries.len() != ring.p {
            return Err(CliError::Arity { line: v.line, expected: ring.p, found: entries.len() });
        }
        let mut acc = PolyElement::zero(ring);
        for (j, e) in entries.iter().enumerate() {
            let f = parse_poly(e.trim(), &ring).map_err(|err| match err {
                coefmod::error::Error::Syntax { pos, msg } => spec_err(v.line, col + pos, msg),
                other => CliError::Engine(other),
            })?;
            if f.tdeg().is_some_and(|g| g != 0) {
                return Err(spec_err(v.line, col, "vector entries may not use t variables"));
            }
            let mut texp = vec![0; ring.p];
            texp[j] = 1;
            let tj = PolyElement::monomial(ring, Monomial::t_power(&ring, &texp)?);
            acc = acc.add(&f.mul(&tj)?)?;
        }
        out.push(acc);
    }
    if out.is_empty() {
        return Err(spec_err(v.line, v.col, "no generators"));
    }
    Ok(out)
}
