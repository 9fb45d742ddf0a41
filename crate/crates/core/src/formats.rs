//! Text file formats: code specs, messages, codeword and received arrays,
//! erasure/error patterns, and subspaces.
//!
//! Every array file starts with `# fingerprint=<hex>`, the first 16 hex
//! digits of the SHA-256 of the canonical code spec text.

use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::codes::{CodeParams, LocalRankCode};
use crate::crisscross::{ErasurePattern, ErrorPattern};
use crate::error::{Error, Result};
use crate::gf::{format_coefficient_list, parse_coefficient_list, Field, FieldElement, FieldSpec, TowerOverrides};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// Version of the file formats, printed by `--version`.
pub const FORMAT_VERSION: &str = "1";

/// A parsed code spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: CodeParams,
    pub field: FieldSpec,
    pub basis_a: Option<Vec<String>>,
    pub basis_b: Option<Vec<String>>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Yields `(line number, trimmed content)` for non-empty lines, `#` comments removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn element_list(value: &str) -> Vec<String> {
    value.split(',').map(|t| t.trim().to_string()).collect()
}

impl CodeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut vals: [Option<usize>; 6] = [None; 6];
        const KEYS: [&str; 6] = ["q", "m", "n", "k", "r", "delta"];
        let (mut modulus, mut basis_a, mut basis_b) = (None, None, None);
        for (line, content) in content_lines(text) {
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| perr(line, format!("expected key=value, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(slot) = KEYS.iter().position(|&k| k == key) {
                let v = value
                    .parse()
                    .map_err(|_| perr(line, format!("bad value for {key}: {value:?}")))?;
                vals[slot] = Some(v);
                continue;
            }
            match key {
                "modulus" => modulus = Some(parse_coefficient_list(value).map_err(|m| perr(line, m))?),
                "basisA" => basis_a = Some(element_list(value)),
                "basisB" => basis_b = Some(element_list(value)),
                other => return Err(perr(line, format!("unknown key {other:?}"))),
            }
        }
        let mut got = [0usize; 6];
        for (i, v) in vals.iter().enumerate() {
            got[i] = v.ok_or_else(|| perr(0, format!("missing {}", KEYS[i])))?;
        }
        let [q, m, n, k, r, delta] = got;
        let params = CodeParams::new(q, m, n, k, r, delta)?;
        let field = match modulus {
            Some(modulus) => FieldSpec {
                q,
                m,
                modulus,
                primitive_reporting: true,
            },
            None => FieldSpec::default_for(q, m)?,
        };
        Ok(Self {
            params,
            field,
            basis_a,
            basis_b,
        })
    }

    /// Canonical text: fixed key order with the resolved modulus.
    pub fn canonical_text(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "q={}\nm={}\nn={}\nk={}\nr={}\ndelta={}\nmodulus={}\n",
            p.q,
            p.m,
            p.n,
            p.k,
            p.r,
            p.delta,
            format_coefficient_list(&self.field.modulus)
        );
        if let Some(a) = &self.basis_a {
            out.push_str(&format!("basisA={}\n", a.join(",")));
        }
        if let Some(b) = &self.basis_b {
            out.push_str(&format!("basisB={}\n", b.join(",")));
        }
        out
    }

    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical_text().as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn build(&self) -> Result<LocalRankCode> {
        let field = Arc::new(Field::new(&self.field)?);
        let parse_list = |list: &Option<Vec<String>>, key: &str| -> Result<Option<Vec<FieldElement>>> {
            list.as_ref()
                .map(|items| {
                    items
                        .iter()
                        .map(|t| field.parse_element(t).map_err(|m| perr(0, format!("{key}: {m}"))))
                        .collect()
                })
                .transpose()
        };
        let overrides = TowerOverrides {
            generator: None,
            basis_a: parse_list(&self.basis_a, "basisA")?,
            basis_b: parse_list(&self.basis_b, "basisB")?,
        };
        LocalRankCode::with_field(self.params, field.clone(), &overrides)
    }
}

/// Reads the `# fingerprint=` header, if any.
pub fn read_fingerprint(text: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix("fingerprint=").map(|f| f.trim().to_string()))
}

/// Fails unless the file's fingerprint equals `expected`.
pub fn check_fingerprint(text: &str, expected: &str) -> Result<()> {
    match read_fingerprint(text) {
        Some(found) if found == expected => Ok(()),
        Some(found) => Err(Error::SpecMismatch {
            expected: expected.to_string(),
            found,
        }),
        None => Err(Error::SpecMismatch {
            expected: expected.to_string(),
            found: "none".to_string(),
        }),
    }
}

/// Message file: k field elements, one per line.
pub fn parse_message(text: &str, field: &Field, k: usize) -> Result<Vec<FieldElement>> {
    let msg: Vec<FieldElement> = content_lines(text)
        .flat_map(|(line, content)| content.split_whitespace().map(move |t| (line, t)))
        .map(|(line, t)| field.parse_element(t).map_err(|m| perr(line, m)))
        .collect::<Result<_>>()?;
    if msg.len() != k {
        return Err(Error::BadMessageLength {
            expected: k,
            got: msg.len(),
        });
    }
    Ok(msg)
}

pub fn format_message(field: &Field, msg: &[FieldElement]) -> String {
    msg.iter().map(|&e| field.format(e) + "\n").collect()
}

fn symbol_text(v: u8, q: usize) -> String {
    if q > 10 {
        format!("{v:>3}")
    } else {
        v.to_string()
    }
}

/// Formats an m×n array, writing `?` in erased cells.
pub fn format_array(m: &Matrix, q: usize, erased: Option<&ErasurePattern>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .map(|j| match erased {
                Some(e) if e.is_erased(i, j) => {
                    if q > 10 {
                        "  ?".to_string()
                    } else {
                        "?".to_string()
                    }
                }
                _ => symbol_text(m.get(i, j), q),
            })
            .collect();
        out.push_str(&cells.join(if q > 10 { " " } else { "" }));
        out.push('\n');
    }
    out
}

/// Parses array rows, where `?` marks an erased cell.
fn parse_array_rows(rows: &[(usize, &str)], q: usize, cols: usize) -> Result<(Matrix, ErasurePattern)> {
    let mut m = Matrix::zeros(rows.len(), cols);
    let mut e = ErasurePattern::new(rows.len(), cols);
    for (i, &(line, content)) in rows.iter().enumerate() {
        let tokens: Vec<String> = if q > 10 {
            content.split_whitespace().map(str::to_string).collect()
        } else {
            content
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(String::from)
                .collect()
        };
        if tokens.len() != cols {
            return Err(perr(line, format!("expected {cols} symbols, got {}", tokens.len())));
        }
        for (j, t) in tokens.iter().enumerate() {
            if t == "?" {
                e.erase(i, j);
                continue;
            }
            let v: usize = t.parse().map_err(|_| perr(line, format!("bad symbol {t:?}")))?;
            if v >= q {
                return Err(perr(line, format!("symbol {v} outside GF({q})")));
            }
            m.set(i, j, v as u8);
        }
    }
    Ok((m, e))
}

/// Codeword file: fingerprint header, `[elements]` (one per line) and
/// `[matrix]` (m rows of n symbols).
pub fn format_codeword(field: &Field, fingerprint: &str, codeword: &[FieldElement]) -> String {
    let mut out = format!("# fingerprint={fingerprint}\n[elements]\n");
    out.push_str(&format_message(field, codeword));
    out.push_str("[matrix]\n");
    out.push_str(&format_array(&crate::gf::to_matrix(field, codeword), field.q(), None));
    out
}

/// Received file: fingerprint header and a `[matrix]` section with `?` cells.
pub fn format_received(q: usize, fingerprint: &str, y: &Matrix, erased: &ErasurePattern) -> String {
    format!(
        "# fingerprint={fingerprint}\n[matrix]\n{}",
        format_array(y, q, Some(erased))
    )
}

/// Section name with its numbered lines.
type Section<'a> = (String, Vec<(usize, &'a str)>);

fn sections(text: &str) -> Result<Vec<Section<'_>>> {
    let mut out: Vec<(String, Vec<(usize, &str)>)> = Vec::new();
    for (line, content) in content_lines(text) {
        if let Some(name) = content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
            out.push((name.to_string(), Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, rows)) => rows.push((line, content)),
                None => return Err(perr(line, "content before the first section")),
            }
        }
    }
    Ok(out)
}

/// The `[matrix]` section of a codeword or received file, with its erasures.
pub fn parse_array_file(text: &str, field: &Field, n: usize) -> Result<(Matrix, ErasurePattern)> {
    let secs = sections(text)?;
    let (_, rows) = secs
        .iter()
        .find(|(name, _)| name == "matrix")
        .ok_or_else(|| perr(0, "missing [matrix] section"))?;
    if rows.len() != field.degree() {
        return Err(perr(
            rows.last().map_or(0, |r| r.0),
            format!("expected {} matrix rows, got {}", field.degree(), rows.len()),
        ));
    }
    parse_array_rows(rows, field.q(), n)
}

/// The `[elements]` section of a codeword file.
pub fn parse_codeword_elements(text: &str, field: &Field, n: usize) -> Result<Vec<FieldElement>> {
    let secs = sections(text)?;
    let (_, rows) = secs
        .iter()
        .find(|(name, _)| name == "elements")
        .ok_or_else(|| perr(0, "missing [elements] section"))?;
    let v: Vec<FieldElement> = rows
        .iter()
        .map(|&(line, t)| field.parse_element(t).map_err(|m| perr(line, m)))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::Shape {
            expected: format!("{n} elements"),
            got: format!("{} elements", v.len()),
        });
    }
    Ok(v)
}

/// Pattern file: m lines of n characters from `.` (intact), `?` (erased)
/// and `E` (errored). Error values come separately, in row-major order.
pub fn parse_pattern(text: &str, rows: usize, cols: usize) -> Result<(ErasurePattern, Vec<(usize, usize)>)> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    if lines.len() != rows {
        return Err(perr(
            lines.last().map_or(0, |l| l.0),
            format!("expected {rows} pattern rows, got {}", lines.len()),
        ));
    }
    let mut e = ErasurePattern::new(rows, cols);
    let mut errors = Vec::new();
    for (i, &(line, content)) in lines.iter().enumerate() {
        let chars: Vec<char> = content.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.len() != cols {
            return Err(perr(line, format!("expected {cols} cells, got {}", chars.len())));
        }
        for (j, c) in chars.into_iter().enumerate() {
            match c {
                '.' => {}
                '?' => e.erase(i, j),
                'E' => errors.push((i, j)),
                other => return Err(perr(line, format!("bad pattern cell {other:?}"))),
            }
        }
    }
    Ok((e, errors))
}

pub fn format_pattern(e: &ErasurePattern, errors: &[(usize, usize)]) -> String {
    let mut out = String::new();
    for i in 0..e.rows() {
        for j in 0..e.cols() {
            out.push(if e.is_erased(i, j) {
                '?'
            } else if errors.contains(&(i, j)) {
                'E'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

/// Error sidecar: one nonzero GF(q) symbol per `E` cell.
pub fn parse_error_values(
    text: &str,
    q: usize,
    cells: &[(usize, usize)],
    erasures: &ErasurePattern,
) -> Result<ErrorPattern> {
    let values: Vec<(usize, u8)> = content_lines(text)
        .flat_map(|(line, c)| c.split_whitespace().map(move |t| (line, t)))
        .map(|(line, t)| match t.parse::<usize>() {
            Ok(v) if v > 0 && v < q => Ok((line, v as u8)),
            _ => Err(perr(line, format!("bad error value {t:?}"))),
        })
        .collect::<Result<_>>()?;
    if values.len() != cells.len() {
        return Err(perr(
            0,
            format!("expected {} error values, got {}", cells.len(), values.len()),
        ));
    }
    let mut m = Matrix::zeros(erasures.rows(), erasures.cols());
    for (&(i, j), &(_, v)) in cells.iter().zip(&values) {
        m.set(i, j, v);
    }
    ErrorPattern::new(m, erasures)
}

/// Subspace file: `M=<ambient> dim=<t>` then one basis column per line.
pub fn format_subspace(s: &Subspace, q: usize, fingerprint: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(f) = fingerprint {
        out.push_str(&format!("# fingerprint={f}\n"));
    }
    out.push_str(&format!("M={} dim={}\n", s.ambient(), s.dim()));
    out.push_str(&format_array(&s.basis().transpose(), q, None));
    out
}

pub fn parse_subspace(text: &str, field_q: usize, gf: &crate::gf::BaseField) -> Result<Subspace> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(0, "empty subspace file"))?;
    let mut ambient = None;
    let mut dim = None;
    for tok in header.split_whitespace() {
        match tok.split_once('=') {
            Some(("M", v)) => ambient = v.parse::<usize>().ok(),
            Some(("dim", v)) => dim = v.parse::<usize>().ok(),
            _ => return Err(perr(hline, format!("bad header token {tok:?}"))),
        }
    }
    let (ambient, dim) = ambient
        .zip(dim)
        .ok_or_else(|| perr(hline, "header must be M=<int> dim=<int>"))?;
    let rows: Vec<(usize, &str)> = lines.collect();
    if rows.len() != dim {
        return Err(perr(hline, format!("expected {dim} basis columns, got {}", rows.len())));
    }
    let (cols, erased) = parse_array_rows(&rows, field_q, ambient)?;
    if !erased.is_empty() {
        return Err(perr(hline, "subspace basis cannot contain '?'"));
    }
    Subspace::from_rcef(cols.transpose(), gf)
}
