//! Text format for coframed algebras.
//!
//! ```text
//! params: a b
//! dw1 = w2^w3 + a*w1^w3
//! dw2 = w3^w4
//! dw3 = 0
//! dw4 = b*w2^w3
//! ```
//!
//! Grammar (whitespace-insensitive inside a line):
//!
//! ```text
//! doc         := params-line? dline{4}          -- dw1..dw4 each exactly once
//! params-line := "params" ":" ident+
//! dline       := "dw" digit "=" expr
//! expr        := sign? term (sign term)*        sign := "+" | "-"
//! term        := "0" | factor ("*"? factor)*    -- at most one wedge monomial
//! factor      := rational | ident | ident "^" int | "w" digit "^" "w" digit
//! rational    := int ("/" int)?
//! ```
//!
//! `wJ^wI` with J >= I is normalized by sign (`w2^w2` vanishes and only
//! produces a lint warning). Every identifier must be declared on the params
//! line; `w1..w4` are reserved.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::exterior::{CoframedAlgebra, Form, DIM};
use crate::scalar::{parse_rat, rat_string, ParamPoly, Rat, Ring, Symbol};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(Rat),
    Colon,
    Equals,
    Plus,
    Minus,
    Star,
    Caret,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn lex_line(text: &str, line_no: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            ':' => {
                i += 1;
                Tok::Colon
            }
            '=' => {
                i += 1;
                Tok::Equals
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // optional /denominator
                if i < chars.len() && chars[i] == '/' {
                    let mut j = i + 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == i + 1 {
                        return Err(ParseError::new(line_no, i + 2, "expected denominator digits"));
                    }
                    i = j;
                }
                let text: String = chars[start..i].iter().collect();
                let r = parse_rat(&text).ok_or_else(|| {
                    ParseError::new(line_no, col, format!("bad rational literal {text}"))
                })?;
                Tok::Number(r)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("unexpected character {other:?}"),
                ))
            }
        };
        out.push(Spanned { tok, col });
    }
    Ok(out)
}

/// The index 1..4 of a reserved basis identifier `w1`..`w4`.
fn basis_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('w')?;
    let n: usize = rest.parse().ok()?;
    (1..=DIM).contains(&n).then_some(n)
}

#[derive(Debug)]
pub struct ParsedDocument {
    pub algebra: CoframedAlgebra,
    pub warnings: Vec<String>,
}

struct LineParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    params: &'a [Symbol],
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or_else(|| self.toks.last().map(|s| s.col + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|s| &s.tok);
        self.pos += 1;
        t
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn lookup(&self, name: &str) -> Result<Symbol, ParseError> {
        self.params
            .iter()
            .find(|s| s.as_str() == name)
            .cloned()
            .ok_or_else(|| self.error(format!("undeclared symbol {name}")))
    }

    /// expr := sign? term (sign term)*
    fn expr(&mut self, warnings: &mut Vec<String>) -> Result<Form<ParamPoly>, ParseError> {
        let mut acc: Form<ParamPoly> = Form::zero();
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term(warnings)?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negate = true;
                }
                None => break,
                Some(_) => return Err(self.error("expected + or - between terms")),
            }
        }
        Ok(acc)
    }

    /// term := "0" | factor ("*"? factor)* with at most one wedge monomial.
    fn term(&mut self, warnings: &mut Vec<String>) -> Result<Form<ParamPoly>, ParseError> {
        if self.peek() == Some(&Tok::Number(Rat::from_integer(0.into())))
            && !matches!(self.toks.get(self.pos + 1).map(|s| &s.tok), Some(Tok::Star | Tok::Caret))
        {
            self.pos += 1;
            return Ok(Form::zero());
        }
        let mut coeff = ParamPoly::one();
        let mut mono: Option<(usize, usize)> = None;
        loop {
            match self.peek() {
                Some(Tok::Number(r)) => {
                    coeff = coeff.scale(r);
                    self.pos += 1;
                }
                Some(Tok::Ident(name)) => {
                    if let Some(i) = basis_index(name) {
                        // wedge monomial wI ^ wJ
                        self.pos += 1;
                        self.expect(Tok::Caret, "^ after basis 1-form")?;
                        let j = match self.bump() {
                            Some(Tok::Ident(n2)) => basis_index(n2)
                                .ok_or_else(|| self.error("expected w1..w4 after ^"))?,
                            _ => return Err(self.error("expected w1..w4 after ^")),
                        };
                        if mono.is_some() {
                            return Err(self.error("more than one wedge monomial in a term"));
                        }
                        if i == j {
                            warnings.push(format!(
                                "line {}: w{i}^w{j} vanishes by alternation",
                                self.line
                            ));
                        }
                        mono = Some((i, j));
                    } else {
                        let s = self.lookup(name)?;
                        self.pos += 1;
                        let mut power = 1u32;
                        if self.peek() == Some(&Tok::Caret) {
                            self.pos += 1;
                            match self.bump() {
                                Some(Tok::Number(r)) if r.denom() == &1.into() => {
                                    power = r.numer().try_into().map_err(|_| {
                                        self.error("exponent must be a small positive integer")
                                    })?;
                                }
                                _ => return Err(self.error("expected integer exponent")),
                            }
                        }
                        coeff = &coeff * &ParamPoly::var(s).pow(power);
                    }
                }
                _ => return Err(self.error("expected coefficient or wedge monomial")),
            }
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Number(_) | Tok::Ident(_)) => {} // adjacency
                _ => break,
            }
        }
        match mono {
            Some((i, j)) if i == j => Ok(Form::zero()),
            Some((i, j)) => Ok(Form::monomial(&[i, j], coeff)),
            None => Err(self.error("a structure term needs a wedge monomial (or 0)")),
        }
    }
}

/// Parse a coframe document into a coframed algebra plus lint warnings.
pub fn parse_coframe(text: &str) -> Result<ParsedDocument, ParseError> {
    let mut params: Vec<Symbol> = Vec::new();
    let mut structure: [Option<Form<ParamPoly>>; DIM] = [None, None, None, None];
    let mut warnings = Vec::new();
    let mut seen_any = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let toks = lex_line(line, line_no)?;
        match &toks[0].tok {
            Tok::Ident(kw) if kw == "params" => {
                if seen_any {
                    return Err(ParseError::new(
                        line_no,
                        toks[0].col,
                        "params line must precede the structure lines",
                    ));
                }
                if toks.get(1).map(|s| &s.tok) != Some(&Tok::Colon) {
                    return Err(ParseError::new(line_no, toks[0].col + 6, "expected ':'"));
                }
                for s in &toks[2..] {
                    match &s.tok {
                        Tok::Ident(name) => {
                            if basis_index(name).is_some() {
                                return Err(ParseError::new(
                                    line_no,
                                    s.col,
                                    format!("{name} is a reserved basis name"),
                                ));
                            }
                            let symbol = Symbol::new(name);
                            if params.contains(&symbol) {
                                return Err(ParseError::new(
                                    line_no,
                                    s.col,
                                    format!("duplicate parameter {name}"),
                                ));
                            }
                            params.push(symbol);
                        }
                        _ => {
                            return Err(ParseError::new(line_no, s.col, "expected parameter name"))
                        }
                    }
                }
            }
            Tok::Ident(kw) if kw.starts_with("dw") => {
                seen_any = true;
                let i: usize = kw[2..].parse().map_err(|_| {
                    ParseError::new(line_no, toks[0].col, "expected dw1..dw4")
                })?;
                if !(1..=DIM).contains(&i) {
                    return Err(ParseError::new(line_no, toks[0].col, "expected dw1..dw4"));
                }
                if structure[i - 1].is_some() {
                    return Err(ParseError::new(
                        line_no,
                        toks[0].col,
                        format!("duplicate line for dw{i}"),
                    ));
                }
                let mut p = LineParser { toks: &toks[1..], pos: 0, line: line_no, params: &params };
                p.expect(Tok::Equals, "=")?;
                let form = p.expr(&mut warnings)?;
                structure[i - 1] = Some(form);
            }
            _ => {
                return Err(ParseError::new(
                    line_no,
                    toks[0].col,
                    "expected 'params:' or 'dwI ='",
                ))
            }
        }
    }

    let mut forms = Vec::with_capacity(DIM);
    for (i, f) in structure.into_iter().enumerate() {
        forms.push(f.ok_or_else(|| {
            ParseError::new(text.lines().count().max(1), 1, format!("missing line for dw{}", i + 1))
        })?);
    }
    let structure: [Form<ParamPoly>; DIM] = forms.try_into().expect("four forms");
    params.sort();
    let algebra = CoframedAlgebra::new(params, structure)
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    Ok(ParsedDocument { algebra, warnings })
}

/// Canonical document for an algebra; parsing it back yields an identical
/// algebra. Composite coefficients are split into one grammar term per
/// polynomial term, so no parentheses are ever emitted.
pub fn write_coframe(alg: &CoframedAlgebra) -> String {
    let mut out = String::new();
    if !alg.params().is_empty() {
        out.push_str("params:");
        for p in alg.params() {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    for i in 1..=DIM {
        let _ = write!(out, "dw{i} =");
        let form = alg.structure(i);
        if form.is_zero() {
            out.push_str(" 0\n");
            continue;
        }
        let mut sets: Vec<_> = form.components().collect();
        sets.sort_by_key(|(s, _)| s.indices());
        let mut first = true;
        for (set, poly) in sets {
            let idx = set.indices();
            let mono = format!("w{}^w{}", idx[0], idx[1]);
            for (factors, c) in poly.terms() {
                let neg = c < &Rat::zero();
                let abs = if neg { -c } else { c.clone() };
                if first {
                    out.push_str(if neg { " -" } else { " " });
                    first = false;
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mut pieces: Vec<String> = Vec::new();
                if abs != Ring::one() || factors.is_empty() {
                    pieces.push(rat_string(&abs));
                }
                for (sym, pow) in &factors {
                    if *pow == 1 {
                        pieces.push(sym.to_string());
                    } else {
                        pieces.push(format!("{sym}^{pow}"));
                    }
                }
                pieces.push(mono.clone());
                let _ = write!(out, "{}", pieces.join("*"));
            }
        }
        out.push('\n');
    }
    out
}
