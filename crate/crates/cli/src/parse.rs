//! Ideal files and order specifications.
//!
//! ```text
//! # comment
//! ring x ; eliminate u v
//! f1 = x + u + v
//! f2 = x^2 - 1
//! weight sigma = (9, 12, 0)
//! ```

use std::collections::BTreeSet;

use gbwalk_core::{MonomialOrder, Polynomial, Rational, VariableContext, WeightVector};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub context: VariableContext,
    pub generators: Vec<(String, Polynomial)>,
    pub weights: Vec<(String, WeightVector)>,
}

impl ProblemFile {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn weight(&self, name: &str) -> Option<&WeightVector> {
        self.weights.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// Canonical text form; parsing it yields `self` again.
    pub fn to_text(&self) -> String {
        let ctx = &self.context;
        let lex = MonomialOrder::lex(ctx.dim());
        let mut out = format!("ring {} ; eliminate {}\n", ctx.x_vars().join(" "), ctx.u_vars().join(" "));
        for (id, p) in &self.generators {
            out.push_str(&format!("{id} = {}\n", p.to_text(ctx, &lex)));
        }
        for (id, w) in &self.weights {
            out.push_str(&format!("weight {id} = {w}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn tokenize(line: &str, line_no: usize) -> PResult<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), column });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(digits.parse().expect("ascii digits")), column });
        } else if "+-*^/()=,;[]>".contains(c) {
            out.push(Token { tok: Tok::Sym(c), column });
            i += 1;
        } else {
            return Err(ParseError::at(line_no, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], line: usize, text: &str) -> Self {
        Self { toks, pos: 0, line, end_column: text.chars().count() + 1 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::at(self.line, self.column(), message))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    /// `int` or `int/int`, optionally negated.
    fn rational(&mut self) -> PResult<Rational> {
        let negative = self.eat('-');
        let num = match self.next() {
            Some(Tok::Int(v)) => v,
            _ => {
                self.pos -= 1;
                return self.err("expected a number");
            }
        };
        let mut r = Rational::from_integer(num);
        if self.eat('/') {
            match self.next() {
                Some(Tok::Int(d)) if !d.is_zero() => r /= Rational::from_integer(d),
                _ => {
                    self.pos -= 1;
                    return self.err("expected a nonzero denominator");
                }
            }
        }
        Ok(if negative { -r } else { r })
    }
}

struct PolyParser<'c, 'a> {
    cur: &'c mut Cursor<'a>,
    ctx: &'c VariableContext,
}

impl PolyParser<'_, '_> {
    fn expr(&mut self) -> PResult<Polynomial> {
        let dim = self.ctx.dim();
        let mut acc = Polynomial::zero(dim);
        let mut sign = if self.cur.eat('-') {
            -1
        } else {
            self.cur.eat('+');
            1
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            if self.cur.eat('+') {
                sign = 1;
            } else if self.cur.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> PResult<Polynomial> {
        let mut acc = self.power()?;
        while self.cur.eat('*') {
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if !self.cur.eat('^') {
            return Ok(base);
        }
        if self.cur.peek() == Some(&Tok::Sym('-')) {
            return self.cur.err("negative exponent");
        }
        let e = match self.cur.next() {
            Some(Tok::Int(v)) => v,
            _ => {
                self.cur.pos -= 1;
                return self.cur.err("expected an exponent");
            }
        };
        let e: u32 = match u32::try_from(e) {
            Ok(e) if e <= 10_000 => e,
            _ => {
                self.cur.pos -= 1;
                return self.cur.err("exponent too large");
            }
        };
        let mut out = Polynomial::one(self.ctx.dim());
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let dim = self.ctx.dim();
        let column = self.cur.column();
        match self.cur.peek().cloned() {
            Some(Tok::Int(_)) => {
                let c = self.cur.rational()?;
                Ok(Polynomial::constant(dim, c))
            }
            Some(Tok::Ident(name)) => {
                self.cur.pos += 1;
                match self.ctx.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(dim, i)),
                    None => Err(ParseError::at(self.cur.line, column, format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.cur.pos += 1;
                let inner = self.expr()?;
                self.cur.expect(')')?;
                Ok(inner)
            }
            Some(Tok::Sym('-')) => {
                self.cur.pos += 1;
                Ok(-&self.atom()?)
            }
            _ => self.cur.err("expected a term"),
        }
    }
}

/// Parses a polynomial over `ctx` on its own, e.g. `x*u^2 - x - u`.
pub fn parse_polynomial(text: &str, ctx: &VariableContext) -> PResult<Polynomial> {
    let toks = tokenize(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text);
    let p = PolyParser { cur: &mut cur, ctx }.expr()?;
    cur.finish()?;
    Ok(p)
}

fn parse_weight(cur: &mut Cursor<'_>, dim: usize) -> PResult<WeightVector> {
    let column = cur.column();
    cur.expect('(')?;
    let mut entries = Vec::new();
    if !cur.eat(')') {
        loop {
            let c = cur.column();
            let r = cur.rational()?;
            if r < Rational::zero() {
                return Err(ParseError::at(cur.line, c, "weights must be nonnegative"));
            }
            entries.push(r);
            if cur.eat(')') {
                break;
            }
            cur.expect(',')?;
        }
    }
    if entries.len() != dim {
        return Err(ParseError::at(cur.line, column, format!("weight has {} entries, expected {dim}", entries.len())));
    }
    Ok(WeightVector::new(entries).expect("checked nonnegative"))
}

/// Parses a weight literal such as `(9, 12, 0)` or `(1/2, 1)`.
pub fn parse_weight_literal(text: &str, dim: usize) -> PResult<WeightVector> {
    let toks = tokenize(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text);
    let w = parse_weight(&mut cur, dim)?;
    cur.finish()?;
    Ok(w)
}

fn parse_names(cur: &mut Cursor<'_>, stop: Option<&str>) -> PResult<Vec<(String, usize)>> {
    let mut names = Vec::new();
    loop {
        match cur.peek() {
            Some(Tok::Ident(s)) if Some(s.as_str()) != stop => {
                let column = cur.column();
                names.push((s.clone(), column));
                cur.pos += 1;
                cur.eat(',');
            }
            _ => return Ok(names),
        }
    }
}

fn parse_header(cur: &mut Cursor<'_>) -> PResult<VariableContext> {
    match cur.peek() {
        Some(Tok::Ident(s)) if s == "ring" => cur.pos += 1,
        _ => return cur.err("expected `ring <names> ; eliminate <names>`"),
    }
    let x = parse_names(cur, None)?;
    if x.is_empty() {
        return cur.err("expected at least one kept variable");
    }
    cur.expect(';')?;
    match cur.peek() {
        Some(Tok::Ident(s)) if s == "eliminate" => cur.pos += 1,
        _ => return cur.err("expected `eliminate`"),
    }
    let u = parse_names(cur, None)?;
    if u.is_empty() {
        return cur.err("expected at least one variable to eliminate");
    }
    cur.finish()?;
    let mut seen = BTreeSet::new();
    for (name, column) in x.iter().chain(&u) {
        if !seen.insert(name.as_str()) {
            return Err(ParseError::at(cur.line, *column, format!("variable `{name}` declared twice")));
        }
    }
    let names = |v: &[(String, usize)]| v.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>();
    Ok(VariableContext::new(names(&x), names(&u)).expect("validated names"))
}

/// Parses a whole ideal file.
pub fn parse_problem(text: &str) -> PResult<ProblemFile> {
    let mut context: Option<VariableContext> = None;
    let mut generators = Vec::new();
    let mut weights = Vec::new();
    let mut defined = BTreeSet::new();
    let mut last_line = 0;

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let toks = tokenize(line, line_no)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks, line_no, line);
        let Some(ctx) = &context else {
            context = Some(parse_header(&mut cur)?);
            continue;
        };
        let is_weight = matches!(cur.peek(), Some(Tok::Ident(s)) if s == "weight")
            && matches!(toks.get(1).map(|t| &t.tok), Some(Tok::Ident(_)));
        if is_weight {
            cur.pos += 1;
        }
        let column = cur.column();
        let id = cur.ident()?;
        if matches!(cur.peek(), Some(Tok::Sym(';'))) || id == "ring" {
            return cur.err("duplicate ring declaration");
        }
        cur.expect('=')?;
        if !defined.insert(id.clone()) {
            return Err(ParseError::at(line_no, column, format!("duplicate definition of `{id}`")));
        }
        if is_weight {
            let w = parse_weight(&mut cur, ctx.dim())?;
            cur.finish()?;
            weights.push((id, w));
        } else {
            let p = PolyParser { cur: &mut cur, ctx }.expr()?;
            cur.finish()?;
            generators.push((id, p));
        }
    }
    let Some(context) = context else {
        return Err(ParseError::at(last_line.max(1), 1, "missing ring declaration"));
    };
    if generators.is_empty() {
        return Err(ParseError::at(last_line.max(1), 1, "empty generator list"));
    }
    Ok(ProblemFile { context, generators, weights })
}

/// Parses `rows=[[9,6,5],[1,0,0]];tiebreak=x>u>v`. Either part may be
/// omitted; the tie-break defaults to lex in declaration order.
pub fn parse_order(text: &str, ctx: &VariableContext) -> PResult<MonomialOrder> {
    let toks = tokenize(text, 1)?;
    let mut cur = Cursor::new(&toks, 1, text);
    let dim = ctx.dim();
    let mut rows = Vec::new();
    let mut tiebreak: Option<Vec<usize>> = None;
    let mut seen_rows = false;
    while cur.peek().is_some() {
        let column = cur.column();
        let key = cur.ident()?;
        cur.expect('=')?;
        match key.as_str() {
            "rows" if !seen_rows => {
                seen_rows = true;
                cur.expect('[')?;
                if !cur.eat(']') {
                    loop {
                        let rc = cur.column();
                        cur.expect('[')?;
                        let mut row = Vec::new();
                        loop {
                            let c = cur.column();
                            let r = cur.rational()?;
                            if r < Rational::zero() {
                                return Err(ParseError::at(1, c, "weights must be nonnegative"));
                            }
                            row.push(r);
                            if cur.eat(']') {
                                break;
                            }
                            cur.expect(',')?;
                        }
                        if row.len() != dim {
                            return Err(ParseError::at(
                                1,
                                rc,
                                format!("row has {} entries, expected {dim}", row.len()),
                            ));
                        }
                        rows.push(WeightVector::new(row).expect("checked nonnegative"));
                        if cur.eat(']') {
                            break;
                        }
                        cur.expect(',')?;
                    }
                }
            }
            "tiebreak" if tiebreak.is_none() => {
                let mut perm = Vec::new();
                loop {
                    let c = cur.column();
                    let name = cur.ident()?;
                    let Some(i) = ctx.index_of(&name) else {
                        return Err(ParseError::at(1, c, format!("unknown variable `{name}`")));
                    };
                    if perm.contains(&i) {
                        return Err(ParseError::at(1, c, format!("variable `{name}` repeated in tie-break")));
                    }
                    perm.push(i);
                    if !cur.eat('>') {
                        break;
                    }
                }
                if perm.len() != dim {
                    return Err(ParseError::at(1, column, "tie-break must list every variable"));
                }
                tiebreak = Some(perm);
            }
            _ => return Err(ParseError::at(1, column, format!("unexpected key `{key}`"))),
        }
        if !cur.eat(';') {
            break;
        }
    }
    cur.finish()?;
    let tiebreak = tiebreak.unwrap_or_else(|| (0..dim).collect());
    Ok(MonomialOrder::new(rows, tiebreak).expect("validated order"))
}
