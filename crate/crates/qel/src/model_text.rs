//! Plain-text model descriptions.
//!
//! ```text
//! # twisted cubic
//! name: twisted_cubic
//! variables: 2
//! outputs: 4
//! out: 1 [3, 0]
//! out: 1 [2, 1]
//! out: 1 [1, 2]
//! out: 1 [0, 3]
//! claimed { n = 1, N = 3, delta = 0 }
//! ```
//!
//! The full grammar is in `docs/model-format.md`.

use std::fmt::{self, Write as _};

use qel_core::catalog::VarietyModel;
use qel_core::invariants::derived_invariants;
use qel_core::poly::{PolynomialMap, SparsePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ModelTextError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ModelTextError> {
    Err(ModelTextError { line, col, message: message.into() })
}

/// A cursor over one line; columns are 1-based character positions.
struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.offset + self.text[..self.pos].chars().count() + 1
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ModelTextError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => err(self.line, self.col(), format!("expected `{c}`, found `{x}`")),
            None => err(self.line, self.col(), format!("expected `{c}`, found end of line")),
        }
    }

    fn word(&mut self) -> Result<&'a str, ModelTextError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        if len == 0 {
            return err(self.line, self.col(), "expected a word");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ModelTextError> {
        self.skip_ws();
        let col = self.col();
        let rest = &self.text[self.pos..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let len = sign + rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        let token = &rest[..len];
        match token.parse::<T>() {
            Ok(v) if len > sign => {
                self.pos += len;
                Ok(v)
            }
            _ => {
                let shown: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                err(self.line, col, format!("expected {what}, found `{shown}`"))
            }
        }
    }
}

#[derive(Default)]
struct Claimed {
    n: Option<u32>,
    ambient: Option<u32>,
    delta: Option<u32>,
    quadrics: Option<u32>,
    line: usize,
}

/// Parses a model description.
pub fn parse_model(text: &str) -> Result<VarietyModel, ModelTextError> {
    let mut name: Option<String> = None;
    let mut variables: Option<(usize, usize)> = None;
    let mut outputs: Option<(usize, usize)> = None;
    let mut yx_link: Option<String> = None;
    let mut polys: Vec<SparsePolynomial> = Vec::new();
    let mut claimed: Option<Claimed> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { text: content, pos: 0, line: line_no, offset: 0 };
        if cur.at_end() {
            continue;
        }
        let key_col = cur.col();
        let key = cur.word()?;
        if key == "claimed" {
            if claimed.is_some() {
                return err(line_no, key_col, "duplicate `claimed` block");
            }
            claimed = Some(parse_claimed(&mut cur)?);
            continue;
        }
        cur.expect(':')?;
        cur.skip_ws();
        let value_col = cur.col();
        let duplicate = |seen: bool| if seen { err(line_no, key_col, format!("duplicate `{key}`")) } else { Ok(()) };
        match key {
            "name" | "yx_link" => {
                let v = cur.text[cur.pos..].trim();
                if v.is_empty() || v.contains(char::is_whitespace) {
                    return err(line_no, value_col, format!("`{key}` must be a single non-empty token"));
                }
                let slot = if key == "name" { &mut name } else { &mut yx_link };
                duplicate(slot.is_some())?;
                *slot = Some(v.to_string());
                continue;
            }
            "variables" | "outputs" => {
                let v: usize = cur.integer("a count")?;
                if v == 0 {
                    return err(line_no, value_col, format!("`{key}` must be positive"));
                }
                let slot = if key == "variables" { &mut variables } else { &mut outputs };
                duplicate(slot.is_some())?;
                *slot = Some((v, line_no));
            }
            "out" => {
                let Some((vars, _)) = variables else {
                    return err(line_no, key_col, "`variables` must be declared before `out`");
                };
                polys.push(parse_terms(&mut cur, vars)?);
            }
            other => return err(line_no, key_col, format!("unknown key `{other}`")),
        }
        if !cur.at_end() {
            return err(line_no, cur.col(), "unexpected trailing text");
        }
    }

    let end = last_line + 1;
    let name = name.ok_or(()).or_else(|_| err(end, 1, "missing `name`"))?;
    let (vars, _) = variables.ok_or(()).or_else(|_| err(end, 1, "missing `variables`"))?;
    let (outs, outs_line) = outputs.ok_or(()).or_else(|_| err(end, 1, "missing `outputs`"))?;
    if polys.len() != outs {
        return err(outs_line, 1, format!("`outputs: {outs}` but {} `out` lines", polys.len()));
    }
    let map =
        PolynomialMap::new(vars, polys).map_err(|e| ModelTextError { line: end, col: 1, message: e.to_string() })?;
    if map.is_zero() {
        return err(outs_line, 1, "every output is zero");
    }
    let (invariants, quadrics) = match claimed {
        None => (None, None),
        Some(c) => {
            let inv = match (c.n, c.delta) {
                (Some(n), Some(delta)) => {
                    let inv = derived_invariants(n, delta).map_err(|e| ModelTextError {
                        line: c.line,
                        col: 1,
                        message: e.to_string(),
                    })?;
                    Some(match c.ambient {
                        Some(a) => inv.with_ambient(a),
                        None => inv,
                    })
                }
                (None, None) if c.ambient.is_none() => None,
                _ => return err(c.line, 1, "`claimed` needs both `n` and `delta`"),
            };
            if let Some(a) = c.ambient {
                if a as usize + 1 != outs {
                    return err(c.line, 1, format!("claimed N = {a} but `outputs: {outs}`"));
                }
            }
            (inv, c.quadrics)
        }
    };
    Ok(VarietyModel {
        name,
        map: Some(map),
        claimed: invariants,
        claimed_quadrics: quadrics,
        yx_link,
        notes: Vec::new(),
    })
}

fn parse_terms(cur: &mut Cursor<'_>, vars: usize) -> Result<SparsePolynomial, ModelTextError> {
    let mut terms = Vec::new();
    while !cur.at_end() {
        let coeff: i64 = cur.integer("an integer coefficient")?;
        cur.peek();
        let open_col = cur.col();
        cur.expect('[')?;
        let mut exps = Vec::new();
        if cur.peek() != Some(']') {
            loop {
                exps.push(cur.integer::<u32>("a non-negative exponent")?);
                match cur.peek() {
                    Some(',') => cur.expect(',')?,
                    _ => break,
                }
            }
        }
        cur.expect(']')?;
        if exps.len() != vars {
            return err(cur.line, open_col, format!("exponent list has {} entries, `variables` is {vars}", exps.len()));
        }
        terms.push((coeff, exps));
    }
    SparsePolynomial::from_terms(vars, terms).map_err(|e| ModelTextError {
        line: cur.line,
        col: 1,
        message: e.to_string(),
    })
}

fn parse_claimed(cur: &mut Cursor<'_>) -> Result<Claimed, ModelTextError> {
    let mut c = Claimed { line: cur.line, ..Claimed::default() };
    cur.expect('{')?;
    if cur.peek() != Some('}') {
        loop {
            cur.peek();
            let col = cur.col();
            let key = cur.word()?;
            cur.expect('=')?;
            let v: u32 = cur.integer("a count")?;
            let slot = match key {
                "n" => &mut c.n,
                "N" => &mut c.ambient,
                "delta" => &mut c.delta,
                "quadrics" => &mut c.quadrics,
                other => return err(cur.line, col, format!("unknown claimed field `{other}`")),
            };
            if slot.replace(v).is_some() {
                return err(cur.line, col, format!("duplicate claimed field `{key}`"));
            }
            match cur.peek() {
                Some(',') => cur.expect(',')?,
                _ => break,
            }
        }
    }
    cur.expect('}')?;
    if !cur.at_end() {
        return err(cur.line, cur.col(), "unexpected trailing text");
    }
    Ok(c)
}

/// Writes a model in the text format; `None` for invariants-only models.
pub fn serialize_model(m: &VarietyModel) -> Option<String> {
    let map = m.map.as_ref()?;
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", m.name);
    let _ = writeln!(out, "variables: {}", map.vars());
    let _ = writeln!(out, "outputs: {}", map.outputs().len());
    for p in map.outputs() {
        out.push_str("out:");
        for t in p.terms() {
            let exps: Vec<String> = t.exps.iter().map(u32::to_string).collect();
            let _ = write!(out, " {} [{}]", t.coeff, exps.join(", "));
        }
        out.push('\n');
    }
    if let Some(link) = &m.yx_link {
        let _ = writeln!(out, "yx_link: {link}");
    }
    let mut fields = Vec::new();
    if let Some(c) = &m.claimed {
        fields.push(format!("n = {}", c.n));
        if let Some(a) = c.ambient {
            fields.push(format!("N = {a}"));
        }
        fields.push(format!("delta = {}", c.delta));
    }
    if let Some(q) = m.claimed_quadrics {
        fields.push(format!("quadrics = {q}"));
    }
    if !fields.is_empty() {
        let _ = writeln!(out, "claimed {{ {} }}", fields.join(", "));
    }
    Some(out)
}

/// Wrapper that displays a model in the text format.
pub struct ModelText<'a>(pub &'a VarietyModel);

impl fmt::Display for ModelText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serialize_model(self.0) {
            Some(s) => f.write_str(&s),
            None => write!(f, "# {} has no parametrization", self.0.name),
        }
    }
}
