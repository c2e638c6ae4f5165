//! Ideal file parser.
//!
//! Grammar:
//! ```text
//! # comments run to end of line
//! ring <prime> <nvars>
//! ideal <poly>, <poly>, ...
//! ```
//! Polynomial syntax: terms joined by `+`/`-`; a term is an optional integer
//! coefficient and variable powers, `*`-separated or juxtaposed
//! (`3*x0^2*x1`, `3x0^2x1`). Variables are `x0..x{nvars-1}`.

use liaison::ring::{check_prime, FieldElem, Monomial, MonomialOrder, Polynomial};
use liaison::Ideal;

/// Parse error with 1-based source position.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Var(usize),
    Word(String),
    Caret,
    Star,
    Plus,
    Minus,
    Comma,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = li + 1;
        let content = match raw_line.find('#') {
            Some(k) => &raw_line[..k],
            None => raw_line,
        };
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let col = i + 1;
            let c = chars[i];
            match c {
                ' ' | '\t' | '\r' => {
                    i += 1;
                }
                '^' => {
                    out.push(Spanned { tok: Tok::Caret, line, col });
                    i += 1;
                }
                '*' => {
                    out.push(Spanned { tok: Tok::Star, line, col });
                    i += 1;
                }
                '+' => {
                    out.push(Spanned { tok: Tok::Plus, line, col });
                    i += 1;
                }
                '-' => {
                    out.push(Spanned { tok: Tok::Minus, line, col });
                    i += 1;
                }
                ',' => {
                    out.push(Spanned { tok: Tok::Comma, line, col });
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    match s.parse::<i64>() {
                        Ok(v) => out.push(Spanned { tok: Tok::Int(v), line, col }),
                        Err(_) => return err(line, col, format!("integer {s} out of range")),
                    }
                }
                'x' if i + 1 < chars.len() && chars[i + 1].is_ascii_digit() => {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    match s.parse::<usize>() {
                        Ok(v) => out.push(Spanned { tok: Tok::Var(v), line, col }),
                        Err(_) => return err(line, col, format!("variable index {s} out of range")),
                    }
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    out.push(Spanned { tok: Tok::Word(s), line, col });
                }
                other => return err(line, col, format!("unexpected character '{other}'")),
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    prime: u64,
    order: MonomialOrder,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn at(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(s) => (s.line, s.col),
            None => (1, 1),
        }
    }

    /// One term: optional sign handled by caller; factors are integers,
    /// variables and powers, `*`-separated or juxtaposed.
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let nvars = self.order.nvars();
        let mut coef = FieldElem::one(self.prime);
        let mut exps = vec![0u32; nvars];
        let mut any = false;
        loop {
            match self.peek().cloned() {
                Some(Spanned { tok: Tok::Int(v), .. }) => {
                    self.pos += 1;
                    coef = coef.mul(&FieldElem::new(v, self.prime));
                    any = true;
                }
                Some(Spanned { tok: Tok::Var(v), line, col }) => {
                    self.pos += 1;
                    if v >= nvars {
                        return err(
                            line,
                            col,
                            format!("unknown variable x{v}: ring has x0..x{}", nvars - 1),
                        );
                    }
                    let mut e = 1u32;
                    if matches!(self.peek(), Some(Spanned { tok: Tok::Caret, .. })) {
                        self.pos += 1;
                        match self.peek().cloned() {
                            Some(Spanned { tok: Tok::Int(x), line, col }) if x >= 0 => {
                                self.pos += 1;
                                e = u32::try_from(x).map_err(|_| ParseError {
                                    line,
                                    col,
                                    message: "exponent out of range".into(),
                                })?;
                            }
                            _ => {
                                let (line, col) = self.at();
                                return err(line, col, "expected exponent after '^'");
                            }
                        }
                    }
                    exps[v] += e;
                    any = true;
                }
                Some(Spanned { tok: Tok::Star, .. }) => {
                    self.pos += 1;
                    if !any {
                        let (line, col) = self.at();
                        return err(line, col, "'*' must follow a factor");
                    }
                }
                _ => break,
            }
        }
        if !any {
            let (line, col) = self.at();
            return err(line, col, "expected a term");
        }
        Ok(Polynomial::from_terms(
            vec![(Monomial::new(exps), coef)],
            self.prime,
            self.order,
        ))
    }

    /// Sum of signed terms up to a comma or end of input.
    fn polynomial(&mut self) -> Result<(Polynomial, usize, usize), ParseError> {
        let (line, col) = self.at();
        let mut acc = Polynomial::zero(self.prime, self.order);
        let mut negate = false;
        match self.peek() {
            Some(Spanned { tok: Tok::Minus, .. }) => {
                self.pos += 1;
                negate = true;
            }
            Some(Spanned { tok: Tok::Plus, .. }) => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Spanned { tok: Tok::Plus, .. }) => {
                    self.pos += 1;
                    negate = false;
                }
                Some(Spanned { tok: Tok::Minus, .. }) => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok((acc, line, col))
    }
}

/// Parse an ideal file into `(prime, nvars, generators)` wrapped as an Ideal.
pub fn parse_ideal_file(text: &str) -> Result<Ideal, ParseError> {
    let toks = tokenize(text)?;
    let mut pos = 0;
    let expect_word = |toks: &[Spanned], pos: &mut usize, word: &str| -> Result<(), ParseError> {
        match toks.get(*pos) {
            Some(Spanned { tok: Tok::Word(w), .. }) if w == word => {
                *pos += 1;
                Ok(())
            }
            Some(s) => err(s.line, s.col, format!("expected '{word}'")),
            None => err(1, 1, format!("expected '{word}'")),
        }
    };
    expect_word(&toks, &mut pos, "ring")?;
    let prime = match toks.get(pos) {
        Some(Spanned { tok: Tok::Int(v), line, col }) => {
            pos += 1;
            match check_prime(*v as u64) {
                Ok(p) => p,
                Err(_) => return err(*line, *col, format!("{v} is not prime")),
            }
        }
        Some(s) => return err(s.line, s.col, "expected prime modulus"),
        None => return err(1, 1, "expected prime modulus"),
    };
    let nvars = match toks.get(pos) {
        Some(Spanned { tok: Tok::Int(v), line, col }) => {
            pos += 1;
            if *v < 1 || *v > 16 {
                return err(*line, *col, "variable count must be between 1 and 16");
            }
            *v as usize
        }
        Some(s) => return err(s.line, s.col, "expected variable count"),
        None => return err(1, 1, "expected variable count"),
    };
    expect_word(&toks, &mut pos, "ideal")?;

    let order = MonomialOrder::grevlex(nvars);
    let mut parser = Parser { toks, pos, prime, order };
    let mut gens = Vec::new();
    let mut spans = Vec::new();
    if parser.peek().is_some() {
        loop {
            let (p, line, col) = parser.polynomial()?;
            gens.push(p);
            spans.push((line, col));
            match parser.peek() {
                Some(Spanned { tok: Tok::Comma, .. }) => {
                    parser.pos += 1;
                }
                Some(s) => return err(s.line, s.col, "expected ',' or end of input"),
                None => break,
            }
        }
    }
    match Ideal::new(prime, order, gens) {
        Ok(ideal) => Ok(ideal),
        Err(liaison::Error::Inhomogeneous { index }) => {
            let (line, col) = spans[index];
            err(line, col, format!("generator {} is not homogeneous", index + 1))
        }
        Err(e) => err(1, 1, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_input() {
        let ideal = parse_ideal_file("ring 32003 4\nideal x0^2, x1^2, x2^6\n").unwrap();
        assert_eq!(ideal.nvars(), 4);
        assert_eq!(ideal.generators().len(), 3);
        assert_eq!(ideal.generators()[2].degree(), Some(6));
    }

    #[test]
    fn parses_signs_coefficients_and_juxtaposition() {
        let ideal =
            parse_ideal_file("# demo\nring 32003 2\nideal 3x0^2x1 - x1^3, x0*x1^2 + 2*x1^3")
                .unwrap();
        assert_eq!(ideal.generators().len(), 2);
        assert!(ideal.generators().iter().all(|g| g.is_homogeneous()));
    }

    #[test]
    fn rejects_non_prime() {
        let e = parse_ideal_file("ring 4 2\nideal x0").unwrap_err();
        assert!(e.to_string().contains("not prime"), "{e}");
        assert_eq!(e.line, 1);
    }

    #[test]
    fn rejects_unknown_variable_with_position() {
        let e = parse_ideal_file("ring 5 2\nideal x0 + x7").unwrap_err();
        assert_eq!((e.line, e.col), (2, 12));
        assert!(e.to_string().contains("unknown variable"));
    }

    #[test]
    fn rejects_inhomogeneous_with_position() {
        let e = parse_ideal_file("ring 5 2\nideal x0^2,\n x0 + x1^2").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.to_string().contains("not homogeneous"));
    }

    #[test]
    fn round_trips_display() {
        let src = "ring 32003 3\nideal x0^2 + 31*x1*x2, x1^3";
        let ideal = parse_ideal_file(src).unwrap();
        let printed: Vec<String> =
            ideal.generators().iter().map(|g| g.to_string()).collect();
        let again =
            parse_ideal_file(&format!("ring 32003 3\nideal {}", printed.join(", "))).unwrap();
        assert!(ideal.equals(&again));
    }
}
