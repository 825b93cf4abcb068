//! Line-oriented workspace files.
//!
//! ```text
//! gradedcartan-v1
//! dim 1                       # n, so coordinates phi1..phi2
//! omega standard              # or rows of ω^{ab}: omega 0 1 ; -1 0
//! calibration lie: -1; sn: -1; fn: -1; nr: -I
//! let H := (phi1^2 + phi2^2)/2
//! let F := form 2 { (1,2): phi1 }
//! let P := multivector 2 { (1,2): 1 }
//! let V := vector { (1): phi2, (2): -phi1 }
//! let K := vvform 1 { (1; 2): 1 }
//! ```

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::expr::{is_reserved, lower, parse_expr_at, ParseError, ParseErrorKind};
use super::printer::print_canonical;
use crate::epb::{form_to_super, multivector_to_super, vvform_to_super, CalibrationConstants};
use crate::error::{Error, Result};
use crate::oracle::{DifferentialForm, Multivector, VectorValuedForm};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;
use crate::symplectic::SymplecticContext;

pub const HEADER: &str = "gradedcartan-v1";

/// A bound object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(SuperPoly),
    Form(DifferentialForm),
    Multivector(Multivector),
    VvForm(VectorValuedForm),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Poly(_) => "polynomial",
            Value::Form(_) => "form",
            Value::Multivector(_) => "multivector",
            Value::VvForm(_) => "vector-valued form",
        }
    }

    /// The polynomial that stands for this value inside expressions.
    pub fn hat(&self) -> SuperPoly {
        match self {
            Value::Poly(p) => p.clone(),
            Value::Form(f) => form_to_super(f),
            Value::Multivector(m) => multivector_to_super(m),
            Value::VvForm(k) => vvform_to_super(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Workspace {
    pub ctx: SymplecticContext,
    pub calibration: Option<CalibrationConstants>,
    pub bindings: IndexMap<String, Value>,
}

impl Workspace {
    pub fn new(ctx: SymplecticContext) -> Self {
        Workspace { ctx, calibration: None, bindings: IndexMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn get(&self, name: &str) -> Result<&Value> {
        self.bindings.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn bind(&mut self, name: &str, value: Value) -> Result<()> {
        if !is_identifier(name) || is_reserved(name) {
            return Err(Error::Parse(ParseError {
                line: 0,
                column: 0,
                kind: ParseErrorKind::Syntax(format!("`{name}` is not a valid binding name")),
            }));
        }
        if self.bindings.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.bindings.insert(name.to_string(), value);
        Ok(())
    }

    /// Parses and lowers an expression against the bindings.
    pub fn eval(&self, text: &str) -> Result<SuperPoly> {
        self.eval_at(text, 1, 1)
    }

    fn eval_at(&self, text: &str, line: usize, col: usize) -> Result<SuperPoly> {
        let e = parse_expr_at(text, line, col)?;
        lower(&e, self.dim(), &|n| self.bindings.get(n).map(Value::hat))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, column, kind: ParseErrorKind::Syntax(msg.into()) })
}

/// A line with its number and comment stripped.
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    /// 1-based column of a subslice of this line.
    fn col_of(&self, sub: &str) -> usize {
        sub.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_omega(line: &Line, rest: &str, n: usize) -> Result<SymplecticContext> {
    if rest.trim() == "standard" {
        return SymplecticContext::standard(n);
    }
    let rows: Vec<Vec<BigRational>> = rest
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| {
                    parse_rational(x)
                        .ok_or_else(|| syntax(line.no, line.col_of(rest), format!("bad matrix entry `{x}`")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    if rows.len() != 2 * n {
        return Err(Error::MalformedOmega(format!("{} rows given, expected {}", rows.len(), 2 * n)));
    }
    SymplecticContext::from_upper(rows)
}

fn parse_calibration(ws: &Workspace, line: &Line, rest: &str) -> Result<CalibrationConstants> {
    let mut vals: IndexMap<&str, Scalar> = IndexMap::new();
    for item in rest.split(';') {
        let (name, expr) =
            item.split_once(':').ok_or_else(|| syntax(line.no, line.col_of(item), "expected `name: value`"))?;
        let name = name.trim();
        if !["lie", "sn", "fn", "nr"].contains(&name) {
            return Err(syntax(line.no, line.col_of(item), format!("unknown calibration constant `{name}`")));
        }
        let p = lower(&parse_expr_at(expr, line.no, line.col_of(expr))?, ws.dim(), &|_| None)?;
        if !p.terms().all(|(m, _)| m == &crate::superalgebra::Monomial::one(ws.dim())) {
            return Err(syntax(line.no, line.col_of(expr), "calibration constants must be numbers"));
        }
        if vals.insert(name, p.constant_term()).is_some() {
            return Err(syntax(line.no, line.col_of(item), format!("`{name}` given twice")));
        }
    }
    let get =
        |k: &str| vals.get(k).cloned().ok_or_else(|| syntax(line.no, 1, format!("missing calibration constant `{k}`")));
    Ok(CalibrationConstants { k_lie: get("lie")?, k_sn: get("sn")?, k_fn: get("fn")?, k_nr: get("nr")? })
}

/// Splits `{ e1, e2 }` at top-level commas, returning slices of `body`.
fn split_entries(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    out.into_iter().filter(|s| !s.trim().is_empty()).collect()
}

fn parse_indices(line: &Line, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim().parse::<usize>().map_err(|_| syntax(line.no, line.col_of(s), format!("bad index `{}`", x.trim())))
        })
        .collect()
}

/// Optional vector index, form or multivector indices, coefficient.
type Entry = (Option<usize>, Vec<usize>, SuperPoly);

/// `(idx): expr` entries of a tensor literal. For vector-valued forms the
/// tuple is `(i; a1, a2)`.
fn parse_tensor_entries(
    ws: &Workspace,
    line: &Line,
    body: &str,
    vv: bool,
) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for entry in split_entries(body) {
        let t = entry.trim_start();
        let col = line.col_of(t);
        let close = t
            .find(')')
            .filter(|_| t.starts_with('('))
            .ok_or_else(|| syntax(line.no, col, "expected `(indices): value`"))?;
        let inner = &t[1..close];
        let after = t[close + 1..].trim_start();
        let expr = after.strip_prefix(':').ok_or_else(|| syntax(line.no, line.col_of(after), "expected `:`"))?;
        let value = ws.eval_at(expr, line.no, line.col_of(expr))?;
        let (upper, lower_idx) = if vv {
            let (i, rest) = inner.split_once(';').ok_or_else(|| syntax(line.no, col, "expected `(i; indices)`"))?;
            let i = i.trim().parse::<usize>().map_err(|_| syntax(line.no, col, format!("bad index `{}`", i.trim())))?;
            (Some(i), parse_indices(line, rest)?)
        } else {
            (None, parse_indices(line, inner)?)
        };
        out.push((upper, lower_idx, value));
    }
    Ok(out)
}

fn parse_degree(line: &Line, s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| syntax(line.no, line.col_of(s), format!("bad degree `{}`", s.trim())))
}

fn parse_value(ws: &Workspace, line: &Line, rhs: &str) -> Result<Value> {
    let trimmed = rhs.trim_start();
    let keyword = trimmed.split(|c: char| c.is_whitespace() || c == '{').next().unwrap_or("");
    let tensor = matches!(keyword, "form" | "multivector" | "vector" | "vvform") && trimmed.contains('{');
    if !tensor {
        return Ok(Value::Poly(ws.eval_at(rhs, line.no, line.col_of(rhs))?));
    }
    let open = trimmed.find('{').expect("checked above");
    let body_end = trimmed.rfind('}').ok_or_else(|| syntax(line.no, line.col_of(trimmed), "missing `}`"))?;
    if !trimmed[body_end + 1..].trim().is_empty() {
        return Err(syntax(line.no, line.col_of(&trimmed[body_end + 1..]), "trailing text after `}`"));
    }
    let head = &trimmed[keyword.len()..open];
    let body = &trimmed[open + 1..body_end];
    let dim = ws.dim();
    let vv = keyword == "vvform";
    let entries = parse_tensor_entries(ws, line, body, vv)?;
    let phi_only = |e: &[Entry]| -> Result<()> {
        if e.iter().all(|(_, _, p)| p.is_phi_only()) {
            Ok(())
        } else {
            Err(Error::NotPhiOnly("tensor coefficient"))
        }
    };
    phi_only(&entries)?;
    let strip = |e: Vec<Entry>| e.into_iter().map(|(_, i, p)| (i, p));
    Ok(match keyword {
        "form" => Value::Form(DifferentialForm::from_components(dim, parse_degree(line, head)?, strip(entries))?),
        "multivector" => {
            Value::Multivector(Multivector::from_components(dim, parse_degree(line, head)?, strip(entries))?)
        }
        "vector" => {
            if !head.trim().is_empty() {
                return Err(syntax(line.no, line.col_of(head), "`vector` takes no degree"));
            }
            Value::Multivector(Multivector::from_components(dim, 1, strip(entries))?)
        }
        _ => Value::VvForm(VectorValuedForm::from_components(
            dim,
            parse_degree(line, head)?,
            entries.into_iter().map(|(i, idx, p)| (i.expect("vv entry"), idx, p)),
        )?),
    })
}

/// Parses a workspace document. LF and CRLF line endings are accepted.
pub fn load_workspace(text: &str) -> Result<Workspace> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, raw)| {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let text = raw.split('#').next().unwrap_or("");
            Line { no: i + 1, text: text.trim_end() }
        })
        .filter(|l| !l.text.trim().is_empty());

    let first = lines.next().ok_or_else(|| syntax(1, 1, format!("missing `{HEADER}` header")))?;
    if first.text.trim() != HEADER {
        return Err(syntax(first.no, 1, format!("expected `{HEADER}` header")));
    }
    let dim_line = lines.next().ok_or_else(|| syntax(first.no + 1, 1, "missing `dim` declaration"))?;
    let n = match dim_line.text.trim().strip_prefix("dim") {
        Some(rest) if rest.starts_with(char::is_whitespace) => rest
            .trim()
            .parse::<usize>()
            .map_err(|_| syntax(dim_line.no, dim_line.col_of(rest), "expected a positive integer"))?,
        _ => return Err(syntax(dim_line.no, 1, "expected `dim <n>` as the first declaration")),
    };
    let mut ws = Workspace::new(SymplecticContext::standard(n)?);
    let mut seen_let = false;
    let mut seen_omega = false;
    for line in lines {
        let t = line.text.trim_start();
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match kw {
            "dim" => return Err(syntax(line.no, 1, "`dim` declared twice")),
            "omega" => {
                if seen_omega || seen_let || ws.calibration.is_some() {
                    return Err(syntax(line.no, 1, "`omega` must appear once, right after `dim`"));
                }
                seen_omega = true;
                ws.ctx = parse_omega(&line, rest, n)?;
            }
            "calibration" => {
                if seen_let || ws.calibration.is_some() {
                    return Err(syntax(line.no, 1, "`calibration` must appear once, before any `let`"));
                }
                ws.calibration = Some(parse_calibration(&ws, &line, rest)?);
            }
            "let" => {
                seen_let = true;
                let (name, rhs) = rest
                    .split_once(":=")
                    .ok_or_else(|| syntax(line.no, line.col_of(rest), "expected `let <name> := <value>`"))?;
                let name = name.trim();
                let value = parse_value(&ws, &line, rhs)?;
                ws.bind(name, value).map_err(|e| match e {
                    Error::Parse(p) => Error::Parse(ParseError { line: line.no, column: line.col_of(rest), ..p }),
                    other => other,
                })?;
            }
            _ => return Err(syntax(line.no, 1, format!("unknown declaration `{kw}`"))),
        }
    }
    Ok(ws)
}

fn tuple(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes a workspace; [`load_workspace`] reads it back to an equal value.
pub fn save_workspace(ws: &Workspace) -> String {
    let mut out = format!("{HEADER}\ndim {}\n", ws.ctx.n());
    if ws.ctx.is_standard() {
        out.push_str("omega standard\n");
    } else {
        let rows: Vec<String> =
            ws.ctx.upper_matrix().iter().map(|r| r.iter().map(rational).collect::<Vec<_>>().join(" ")).collect();
        out.push_str(&format!("omega {}\n", rows.join(" ; ")));
    }
    if let Some(c) = &ws.calibration {
        let items: Vec<String> = c.named().iter().map(|(n, v)| format!("{n}: {v}")).collect();
        out.push_str(&format!("calibration {}\n", items.join("; ")));
    }
    for (name, value) in &ws.bindings {
        let rhs = match value {
            Value::Poly(p) => print_canonical(p),
            Value::Form(f) => {
                let items: Vec<String> =
                    f.components().map(|(i, p)| format!("({}): {}", tuple(i), print_canonical(p))).collect();
                format!("form {} {{ {} }}", f.degree(), items.join(", "))
            }
            Value::Multivector(m) => {
                let items: Vec<String> =
                    m.components().map(|(i, p)| format!("({}): {}", tuple(i), print_canonical(p))).collect();
                format!("multivector {} {{ {} }}", m.degree(), items.join(", "))
            }
            Value::VvForm(k) => {
                let items: Vec<String> = k
                    .components()
                    .map(|(i, idx, p)| format!("({i}; {}): {}", tuple(idx), print_canonical(p)))
                    .collect();
                format!("vvform {} {{ {} }}", k.form_degree(), items.join(", "))
            }
        };
        out.push_str(&format!("let {name} := {rhs}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let ws = load_workspace("gradedcartan-v1\ndim 1\nlet H := (phi1^2 + phi2^2)/2\n").unwrap();
        let h = ws.get("H").unwrap();
        assert_eq!(print_canonical(&h.hat()), "1/2*phi1^2 + 1/2*phi2^2");
    }

    #[test]
    fn crlf_and_comments() {
        let ws =
            load_workspace("# comment\r\ngradedcartan-v1\r\ndim 1 # one degree of freedom\r\nlet f := phi1*phi2\r\n")
                .unwrap();
        assert_eq!(print_canonical(&ws.get("f").unwrap().hat()), "phi1*phi2");
    }

    #[test]
    fn rejections() {
        let bad = |s: &str| load_workspace(s).unwrap_err();
        assert!(matches!(bad("dim 1\n"), Error::Parse(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nomega 0 1 ; 1 0\n"), Error::MalformedOmega(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nomega 0 0 ; 0 0\n"), Error::MalformedOmega(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nlet a := 1\nlet a := 2\n"), Error::DuplicateName(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nlet a := b\nlet b := 2\n"), Error::UnknownName(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nlet c1 := 2\n"), Error::Parse(_)));
        assert!(matches!(bad("gradedcartan-v1\ndim 1\nlet F := form 1 { (1): l1 }\n"), Error::NotPhiOnly(_)));
        match bad("gradedcartan-v1\ndim 1\nlet a := phi1 +\n") {
            Error::Parse(p) => assert_eq!(p.line, 3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn tensors_and_references() {
        let text = "gradedcartan-v1\ndim 1\nlet g := phi1\nlet F := form 2 { (2,1): g^2 }\nlet V := vector { (1): phi2, (2): -phi1 }\nlet K := vvform 1 { (1; 2): 1, (2; 1): (1 - 2*I)*phi2 }\nlet s := F + 1\n";
        let ws = load_workspace(text).unwrap();
        match ws.get("F").unwrap() {
            Value::Form(f) => assert_eq!(f.get(&[1, 2]), -SuperPoly::phi(2, 1).unwrap().pow(2)),
            v => panic!("{v:?}"),
        }
        assert_eq!(print_canonical(&ws.get("s").unwrap().hat()), "1 - phi1^2*c1*c2");
        let again = load_workspace(&save_workspace(&ws)).unwrap();
        assert_eq!(again, ws);
    }

    #[test]
    fn explicit_omega_and_calibration_round_trip() {
        let text =
            "gradedcartan-v1\ndim 1\nomega 0 2 ; -2 0\ncalibration lie: -1; sn: -1; fn: -1; nr: -I\nlet x := cb1\n";
        let ws = load_workspace(text).unwrap();
        assert!(!ws.ctx.is_standard());
        assert_eq!(ws.calibration.as_ref().unwrap().k_nr, -Scalar::i());
        let saved = save_workspace(&ws);
        assert_eq!(load_workspace(&saved).unwrap(), ws);
        assert_eq!(save_workspace(&load_workspace(&saved).unwrap()), saved);
    }
}
