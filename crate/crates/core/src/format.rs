//! Text formats for matrices, pencils and certificates.
//!
//! A matrix file is a field header, a size line `n` optionally followed by
//! `labels a b c ...`, and `n` rows of entries. A pencil file is a header,
//! `n`, `m`, the `n` rows of `A₀`, then one line per variable: either
//! `u: ... v: ...` or `matrix:` with the `n²` entries of the coefficient in
//! row-major order. Blank lines and lines starting with `#` are ignored.
//! Certificates are JSON and name labels the way the matrix file does.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{IndexSet, Label, Matrix};
use crate::pit::RankOnePencil;
use crate::pme::{BlockCertificate, Certificate};
use crate::structure::DiagonalWitness;

/// Display names for labels `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelNames {
    names: Vec<String>,
    explicit: bool,
}

impl LabelNames {
    /// `1, 2, ..., n`.
    pub fn numbered(n: usize) -> Self {
        Self {
            names: (1..=n).map(|i| i.to_string()).collect(),
            explicit: false,
        }
    }

    pub fn named(names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("label `{a}` appears twice")));
            }
        }
        Ok(Self {
            names,
            explicit: true,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn is_explicit(&self) -> bool {
        self.explicit
    }

    pub fn name(&self, l: Label) -> &str {
        &self.names[l]
    }

    pub fn lookup(&self, name: &str) -> Result<Label> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::Parse(format!("unknown label `{name}`")))
    }

    /// `{a,b,c}`.
    pub fn format_set(&self, s: &IndexSet) -> String {
        let parts: Vec<&str> = s.iter().map(|l| self.name(l)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Reads `{a,b}`, `a,b` or `a b`.
    pub fn parse_set(&self, text: &str) -> Result<IndexSet> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(inner);
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| self.lookup(s))
            .collect()
    }
}

/// A parsed matrix file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub names: LabelNames,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

struct Lines<'a, I: Iterator<Item = (usize, &'a str)>> {
    inner: I,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Lines<'a, I> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .ok_or_else(|| Error::Parse(format!("unexpected end of input, expected {what}")))
    }

    fn finish(mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((no, l)) => Err(Error::Parse(format!("line {no}: unexpected `{l}`"))),
        }
    }
}

fn parse_count(no: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::Parse(format!("line {no}: expected {what}, found `{token}`")))
}

fn parse_row(f: &FieldSpec, no: usize, line: &str, len: usize) -> Result<Vec<Scalar>> {
    let row = line
        .split_whitespace()
        .map(|t| f.parse_scalar(t).map_err(|e| Error::Parse(format!("line {no}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if row.len() != len {
        return Err(Error::Parse(format!(
            "line {no}: expected {len} entries, found {}",
            row.len()
        )));
    }
    Ok(row)
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    let mut lines = Lines {
        inner: content_lines(text),
    };
    let (_, header) = lines.next("a field header")?;
    let field = FieldSpec::parse_header(header)?;
    let (no, size) = lines.next("the matrix size")?;
    let mut tokens = size.split_whitespace();
    let n = parse_count(no, tokens.next().unwrap_or(""), "the matrix size")?;
    let names = match tokens.next() {
        None => LabelNames::numbered(n),
        Some("labels") => {
            let names: Vec<String> = tokens.map(str::to_string).collect();
            if names.len() != n {
                return Err(Error::Parse(format!(
                    "line {no}: expected {n} labels, found {}",
                    names.len()
                )));
            }
            LabelNames::named(names)?
        }
        Some(other) => {
            return Err(Error::Parse(format!("line {no}: unexpected `{other}` after the size")))
        }
    };
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines.next("a matrix row")?;
        rows.push(parse_row(&field, no, line, n)?);
    }
    lines.finish()?;
    let matrix = if n == 0 {
        Matrix::zeros(field, 0, 0)
    } else {
        Matrix::from_rows(field, rows)?
    };
    Ok(MatrixFile { matrix, names })
}

/// Matrix file text; labels are written only when they are not `1..n`.
pub fn write_matrix(m: &Matrix, names: &LabelNames) -> String {
    let f = m.field();
    let mut out = format!("{}\n{}", f.header(), m.n());
    if names.is_explicit() {
        out.push_str(" labels");
        for &l in m.labels() {
            out.push(' ');
            out.push_str(names.name(l));
        }
    }
    out.push('\n');
    for line in m.format_rows() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_pencil(text: &str) -> Result<RankOnePencil> {
    let mut lines = Lines {
        inner: content_lines(text),
    };
    let (_, header) = lines.next("a field header")?;
    let field = FieldSpec::parse_header(header)?;
    let (no, line) = lines.next("the dimension n")?;
    let n = parse_count(no, line, "the dimension n")?;
    let (no, line) = lines.next("the variable count m")?;
    let m = parse_count(no, line, "the variable count m")?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines.next("a row of A0")?;
        rows.push(parse_row(&field, no, line, n)?);
    }
    let a0 = Matrix::from_rows(field.clone(), rows)?;
    let mut terms = Vec::with_capacity(m);
    for j in 0..m {
        let (no, line) = lines.next("a term line")?;
        if let Some(rest) = line.strip_prefix("matrix:") {
            let entries = parse_row(&field, no, rest, n * n)?;
            let rows = entries.chunks(n.max(1)).map(|c| c.to_vec()).collect();
            let full = Matrix::from_rows(field.clone(), rows)?;
            let term = crate::pit::rank_one_decompose(&full).map_err(|e| match e {
                Error::RankTooHigh { .. } => Error::RankTooHigh { term: j + 1 },
                other => other,
            })?;
            terms.push(term);
            continue;
        }
        let rest = line
            .strip_prefix("u:")
            .ok_or_else(|| Error::Parse(format!("line {no}: expected `u: ... v: ...`")))?;
        let (u, v) = rest
            .split_once("v:")
            .ok_or_else(|| Error::Parse(format!("line {no}: missing `v:`")))?;
        terms.push((parse_row(&field, no, u, n)?, parse_row(&field, no, v, n)?));
    }
    lines.finish()?;
    RankOnePencil::new(a0, terms)
}

pub fn write_pencil(p: &RankOnePencil) -> String {
    let f = p.field();
    let fmt = |v: &[Scalar]| v.iter().map(|x| f.format_scalar(x)).collect::<Vec<_>>().join(" ");
    let mut out = format!("{}\n{}\n{}\n", f.header(), p.n(), p.m());
    for line in p.a0().format_rows() {
        out.push_str(&line);
        out.push('\n');
    }
    for (u, v) in p.terms() {
        out.push_str(&format!("u: {} v: {}\n", fmt(u), fmt(v)));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct WitnessDoc {
    d: Vec<String>,
    transposed: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct BlockDoc {
    labels: Vec<String>,
    cut_sequence: Vec<Vec<String>>,
    witness: WitnessDoc,
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateDoc {
    field: String,
    blocks: Vec<BlockDoc>,
    preprocessing_shift: Option<Vec<(String, String)>>,
}

fn set_names(names: &LabelNames, s: &IndexSet) -> Vec<String> {
    s.iter().map(|l| names.name(l).to_string()).collect()
}

fn names_set(names: &LabelNames, s: &[String]) -> Result<IndexSet> {
    let set: IndexSet = s.iter().map(|x| names.lookup(x)).collect::<Result<_>>()?;
    if set.len() != s.len() {
        return Err(Error::Parse("repeated label in a certificate set".into()));
    }
    Ok(set)
}

pub fn write_certificate(cert: &Certificate, names: &LabelNames) -> String {
    let f = &cert.field;
    let doc = CertificateDoc {
        field: f.header(),
        blocks: cert
            .blocks
            .iter()
            .map(|b| BlockDoc {
                labels: set_names(names, &b.labels),
                cut_sequence: b.cut_sequence.iter().map(|x| set_names(names, x)).collect(),
                witness: WitnessDoc {
                    d: b.witness.d.iter().map(|x| f.format_scalar(x)).collect(),
                    transposed: b.witness.transposed,
                },
            })
            .collect(),
        preprocessing_shift: cert.preprocessing_shift.as_ref().map(|s| {
            s.iter()
                .map(|(l, x)| (names.name(*l).to_string(), f.format_scalar(x)))
                .collect()
        }),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("certificate serializes");
    out.push('\n');
    out
}

pub fn parse_certificate(text: &str, names: &LabelNames) -> Result<Certificate> {
    let doc: CertificateDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    let field = FieldSpec::parse_header(&doc.field)?;
    let blocks = doc
        .blocks
        .iter()
        .map(|b| {
            let labels = names_set(names, &b.labels)?;
            if b.witness.d.len() != labels.len() {
                return Err(Error::Parse(format!(
                    "witness for {} has {} entries",
                    names.format_set(&labels),
                    b.witness.d.len()
                )));
            }
            let d = b
                .witness
                .d
                .iter()
                .map(|x| field.parse_scalar(x))
                .collect::<Result<Vec<_>>>()?;
            Ok(BlockCertificate {
                cut_sequence: b
                    .cut_sequence
                    .iter()
                    .map(|x| names_set(names, x))
                    .collect::<Result<_>>()?,
                witness: DiagonalWitness {
                    labels: labels.as_slice().to_vec(),
                    d,
                    transposed: b.witness.transposed,
                },
                labels,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let preprocessing_shift = doc
        .preprocessing_shift
        .as_ref()
        .map(|s| {
            s.iter()
                .map(|(l, x)| Ok((names.lookup(l)?, field.parse_scalar(x)?)))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(Certificate {
        field,
        blocks,
        preprocessing_shift,
    })
}
