//! Line-oriented morphism files and standalone expressions.
//!
//! ```text
//! source: n'=1 k'=1
//! target: n=2 k=0
//! x1 = u1
//! x2 = z1   # comment
//! ```

use std::fmt;

use formanifold::morphism::{component_names, Morphism};
use formanifold::series::Fps;
use formanifold::{Poly, Rational};
use num_traits::Zero;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug)]
pub enum InputError {
    Parse(ParseError),
    Library(formanifold::Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(e) => e.fmt(f),
            InputError::Library(e) => e.fmt(f),
        }
    }
}

impl From<ParseError> for InputError {
    fn from(e: ParseError) -> Self {
        InputError::Parse(e)
    }
}

impl From<formanifold::Error> for InputError {
    fn from(e: formanifold::Error) -> Self {
        InputError::Library(e)
    }
}

/// Variable letters and counts an expression may refer to.
#[derive(Debug, Clone, Copy)]
pub struct Vars {
    pub smooth: char,
    pub formal: char,
    pub n: usize,
    pub k: usize,
}

impl Vars {
    pub fn source(n: usize, k: usize) -> Self {
        Vars {
            smooth: 'u',
            formal: 'z',
            n,
            k,
        }
    }

    pub fn target(n: usize, k: usize) -> Self {
        Vars {
            smooth: 'x',
            formal: 'y',
            n,
            k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(char, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    Colon,
    Prime,
    Word(String),
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(line: usize, src: &str) -> Self {
        let text = src.split('#').next().unwrap_or("");
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: col + 1,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let col = self.pos;
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                '\'' => Tok::Prime,
                _ if c.is_ascii_digit() => {
                    let num = self.digits();
                    let mut value = Rational::from_integer(num.parse().expect("digits"));
                    if self.chars.get(self.pos) == Some(&'/') {
                        self.pos += 1;
                        let den = self.digits();
                        if den.is_empty() {
                            return Err(self.err(self.pos, "expected a denominator after '/'"));
                        }
                        let den: Rational = Rational::from_integer(den.parse().expect("digits"));
                        if den.is_zero() {
                            return Err(self.err(col, "zero denominator"));
                        }
                        value /= den;
                    }
                    out.push((col, Tok::Num(value)));
                    continue;
                }
                _ if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic()
                    {
                        self.pos += 1;
                    }
                    let word: String = self.chars[start..self.pos].iter().collect();
                    let idx = self.digits();
                    if word.len() == 1 && !idx.is_empty() {
                        let i: usize = idx.parse().map_err(|_| self.err(col, "index too large"))?;
                        out.push((col, Tok::Var(c, i)));
                    } else if idx.is_empty() {
                        out.push((col, Tok::Word(word)));
                    } else {
                        return Err(self.err(col, format!("unknown name '{word}{idx}'")));
                    }
                    continue;
                }
                _ => return Err(self.err(col, format!("unexpected character '{c}'"))),
            };
            self.pos += 1;
            out.push((col, tok));
        }
        Ok(out)
    }
}

/// Recursive descent over one line's tokens.
struct Parser<'t> {
    toks: &'t [(usize, Tok)],
    pos: usize,
    line: usize,
    end_col: usize,
    vars: Vars,
}

impl<'t> Parser<'t> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col() + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn arity(&self) -> usize {
        self.vars.n + self.vars.k
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.bump().cloned() {
            Some(Tok::Num(e)) if e.is_integer() => {
                let e = e.to_integer();
                match u32::try_from(e) {
                    Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                    _ => {
                        self.pos -= 1;
                        Err(self.err(format!("exponent must be at most {MAX_EXPONENT}")))
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a natural exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let arity = self.arity();
        match self.bump().cloned() {
            Some(Tok::Num(c)) => Ok(Poly::constant(arity, c)),
            Some(Tok::Var(c, i)) => {
                let Vars {
                    smooth,
                    formal,
                    n,
                    k,
                } = self.vars;
                let slot = if c == smooth && (1..=n).contains(&i) {
                    i - 1
                } else if c == formal && (1..=k).contains(&i) {
                    n + i - 1
                } else {
                    self.pos -= 1;
                    return Err(self.err(format!(
                        "unknown variable '{c}{i}' (expected {smooth}1..{smooth}{n} or {formal}1..{formal}{k})"
                    )));
                };
                Ok(Poly::var(arity, slot).expect("slot in range"))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(&Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, a variable or '('"))
            }
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(())
    }
}

fn to_fps(p: &Poly, vars: Vars, order: usize) -> Fps {
    let coeffs = p.terms().map(|(m, c)| {
        let (s, f) = m.split_at(vars.n);
        (f, Poly::monomial(s, c.clone()))
    });
    Fps::from_coeffs(vars.n, vars.k, order, coeffs).expect("arities match")
}

fn parse_expr_tokens(
    toks: &[(usize, Tok)],
    line: usize,
    end_col: usize,
    vars: Vars,
) -> Result<Poly, ParseError> {
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_col,
        vars,
    };
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly)
}

/// Parses a single expression over the given variables, truncated at
/// formal degree `order`.
pub fn parse_expression(text: &str, vars: Vars, order: usize) -> Result<Fps, ParseError> {
    let toks = Lexer::new(1, text).tokens()?;
    let end = text.chars().count();
    let poly = parse_expr_tokens(&toks, 1, end, vars)?;
    Ok(to_fps(&poly, vars, order))
}

/// Reads `name=<int>` pairs after `source:` or `target:`.
fn header(toks: &[(usize, Tok)], line: usize, primed: bool) -> Result<(usize, usize), ParseError> {
    let err = |i: usize, msg: &str| {
        let col = toks.get(i).map_or(0, |(c, _)| *c);
        ParseError {
            line,
            col: col + 1,
            message: msg.into(),
        }
    };
    let mut i = 2;
    let mut dims = [None, None];
    for (slot, name) in [(0, "n"), (1, "k")] {
        match toks.get(i) {
            Some((_, Tok::Word(w))) if w == name => i += 1,
            _ => {
                return Err(err(
                    i,
                    &format!("expected '{name}{}'", if primed { "'" } else { "" }),
                ))
            }
        }
        if primed {
            if toks.get(i).map(|t| &t.1) != Some(&Tok::Prime) {
                return Err(err(i, "expected a prime"));
            }
            i += 1;
        }
        if toks.get(i).map(|t| &t.1) != Some(&Tok::Eq) {
            return Err(err(i, "expected '='"));
        }
        i += 1;
        match toks.get(i) {
            Some((_, Tok::Num(v))) if v.is_integer() && v >= &Rational::zero() => {
                dims[slot] = Some(
                    v.to_integer()
                        .try_into()
                        .map_err(|_| err(i, "dimension too large"))?,
                );
                i += 1;
            }
            _ => return Err(err(i, "expected a dimension")),
        }
    }
    if i < toks.len() {
        return Err(err(i, "unexpected trailing input"));
    }
    Ok((dims[0].unwrap(), dims[1].unwrap()))
}

/// Parses a morphism file at formal order `order`.
pub fn parse_morphism(text: &str, order: usize) -> Result<Morphism, InputError> {
    let mut src: Option<(usize, usize)> = None;
    let mut tgt: Option<(usize, usize)> = None;
    let mut comps: Vec<Option<(usize, Poly)>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = Lexer::new(line, raw).tokens()?;
        if toks.is_empty() {
            continue;
        }
        let err = |col: usize, message: String| ParseError {
            line,
            col: col + 1,
            message,
        };
        match (&toks[0].1, toks.get(1).map(|t| &t.1)) {
            (Tok::Word(w), Some(Tok::Colon)) if w == "source" => {
                if src.is_some() {
                    return Err(err(toks[0].0, "duplicate source header".into()).into());
                }
                src = Some(header(&toks, line, true)?);
            }
            (Tok::Word(w), Some(Tok::Colon)) if w == "target" => {
                if tgt.is_some() {
                    return Err(err(toks[0].0, "duplicate target header".into()).into());
                }
                let t = header(&toks, line, false)?;
                tgt = Some(t);
                comps = vec![None; t.0 + t.1];
            }
            (Tok::Var(c @ ('x' | 'y'), i), Some(Tok::Eq)) => {
                let (Some((n1, k1)), Some((n, k))) = (src, tgt) else {
                    return Err(err(
                        toks[0].0,
                        "assignment before the source and target headers".into(),
                    )
                    .into());
                };
                let (count, offset) = if *c == 'x' { (n, 0) } else { (k, n) };
                if *i == 0 || *i > count {
                    return Err(err(toks[0].0, format!("no target coordinate {c}{i}")).into());
                }
                let slot = offset + i - 1;
                if comps[slot].is_some() {
                    return Err(err(toks[0].0, format!("{c}{i} assigned twice")).into());
                }
                let end = raw.chars().count();
                let poly = parse_expr_tokens(&toks[2..], line, end, Vars::source(n1, k1))?;
                comps[slot] = Some((line, poly));
            }
            _ => {
                return Err(err(
                    toks[0].0,
                    "expected 'source:', 'target:' or an assignment 'x<i> = ...' / 'y<j> = ...'"
                        .into(),
                )
                .into())
            }
        }
    }
    let eof = |message: &str| ParseError {
        line: last_line.max(1),
        col: 1,
        message: message.into(),
    };
    let src = src.ok_or_else(|| eof("missing source header"))?;
    let tgt = tgt.ok_or_else(|| eof("missing target header"))?;
    let names = component_names(tgt);
    let vars = Vars::source(src.0, src.1);
    let mut fps = Vec::with_capacity(comps.len());
    for (name, c) in names.iter().zip(comps) {
        let (_, poly) = c.ok_or_else(|| eof(&format!("{name} is not assigned")))?;
        fps.push(to_fps(&poly, vars, order));
    }
    let cy = fps.split_off(tgt.0);
    Ok(Morphism::new(src, tgt, fps, cy)?)
}

/// Comma-separated rationals; the empty string is the empty point.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut col = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        let value = formanifold::parse_rational(part.trim()).ok_or_else(|| ParseError {
            line: 1,
            col: col + 1,
            message: format!("'{}' is not a rational number", part.trim()),
        })?;
        out.push(value);
        col += part.chars().count() + 1;
    }
    Ok(out)
}

/// Comma-separated natural numbers.
pub fn parse_naturals(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut col = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        let value = part.trim().parse().map_err(|_| ParseError {
            line: 1,
            col: col + 1,
            message: format!("'{}' is not a natural number", part.trim()),
        })?;
        out.push(value);
        col += part.chars().count() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use formanifold::rat;

    fn u(i: usize) -> Fps {
        Fps::smooth_var(1, 1, 8, i).unwrap()
    }
    fn z() -> Fps {
        Fps::formal_var(1, 1, 8, 0).unwrap()
    }

    #[test]
    fn slice_file() {
        let m =
            parse_morphism("source: n'=1 k'=1\ntarget: n=2 k=0\nx1 = u1\nx2 = z1\n", 8).unwrap();
        assert_eq!(
            m,
            Morphism::new((1, 1), (2, 0), vec![u(0), z()], vec![]).unwrap()
        );
    }

    #[test]
    fn whitespace_and_comments() {
        let text =
            "# header\n  source :  n' = 1   k'=1\ntarget:n=1 k=0\n\n x1=(u1 - 1/2)^2*z1 # tail\n";
        let m = parse_morphism(text, 8).unwrap();
        let expected = u(0)
            .try_sub(&Fps::constant(1, 1, 8, rat(1, 2)))
            .unwrap()
            .pow(2)
            .try_mul(&z())
            .unwrap();
        assert_eq!(m.cx()[0], expected);
    }

    #[test]
    fn expression_terms() {
        let f = parse_expression("u1^2 + 1/2*z1", Vars::source(1, 1), 8).unwrap();
        assert_eq!(f.coeffs().count(), 2);
        assert_eq!(f, u(0).pow(2).try_add(&z().scale(&rat(1, 2))).unwrap());
        let g = parse_expression("-u1 - -1", Vars::source(1, 1), 8);
        assert!(g.is_err());
        let h = parse_expression("-(u1 - 1)", Vars::source(1, 1), 8).unwrap();
        assert_eq!(h.constant_part().constant_term(), rat(1, 1));
    }

    #[test]
    fn truncates_at_the_order() {
        let f = parse_expression("z1 + z1^3", Vars::source(1, 1), 2).unwrap();
        assert_eq!(f, z());
    }

    #[test]
    fn constant_in_formal_component() {
        let err =
            parse_morphism("source: n'=0 k'=1\ntarget: n=0 k=1\ny1 = 1 + z1\n", 8).unwrap_err();
        assert!(matches!(
            err,
            InputError::Library(formanifold::Error::IllFormedMorphism { .. })
        ));
    }

    fn parse_err(text: &str) -> ParseError {
        match parse_morphism(text, 4) {
            Err(InputError::Parse(e)) => e,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn error_positions() {
        let head = "source: n'=1 k'=0\ntarget: n=1 k=0\n";
        let e = parse_err(&format!("{head}x1 = u1 +* 2\n"));
        assert_eq!((e.line, e.col), (3, 10));
        let e = parse_err(&format!("{head}x1 = u2\n"));
        assert_eq!((e.line, e.col), (3, 6));
        assert!(e.message.contains("u2"));
        let e = parse_err(&format!("{head}x1 = (u1\n"));
        assert_eq!(e.line, 3);
        assert!(e.message.contains("')'"));
        let e = parse_err(&format!("{head}x1 = u1\nx1 = u1\n"));
        assert_eq!((e.line, e.message.as_str()), (4, "x1 assigned twice"));
        let e = parse_err(&format!("{head}x2 = u1\n"));
        assert_eq!(e.line, 3);
        let e = parse_err("source: n'=1 k'=0\ntarget: n=2 k=0\nx1 = u1\n");
        assert!(e.message.contains("x2 is not assigned"));
        let e = parse_err("source: n=1 k=0\n");
        assert_eq!((e.line, e.col), (1, 10));
        let e = parse_err(&format!("{head}x1 = 1/0\n"));
        assert!(e.message.contains("zero denominator"));
        let e = parse_err(&format!("{head}x1 = u1^100\n"));
        assert!(e.message.contains("exponent"));
        let e = parse_err(&format!("{head}x1 = u1 $\n"));
        assert_eq!((e.line, e.col), (3, 9));
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("").unwrap(), Vec::<Rational>::new());
        assert_eq!(
            parse_point("1, -1/2,0").unwrap(),
            vec![rat(1, 1), rat(-1, 2), rat(0, 1)]
        );
        let e = parse_point("1,x").unwrap_err();
        assert_eq!(e.col, 3);
        assert_eq!(parse_naturals("2,1,1,0,1").unwrap(), vec![2, 1, 1, 0, 1]);
        assert!(parse_naturals("2,-1").is_err());
    }
}
