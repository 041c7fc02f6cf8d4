//! Recursive-descent parser for the polynomial text format.
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)* ;
//! term     := factor ('*' factor)* ;
//! factor   := rational | variable ['^' nat] ;
//! rational := nat ['/' nat] | decimal ;
//! variable := 'x' nat   (1-based index)
//! ```
//!
//! Whitespace is insignificant. Positions in errors are 1-based character
//! offsets; the end of input is reported as `len + 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExponentVector, PolyError, Polynomial, Rational, MAX_DIMENSION};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    position: usize,
    /// Set for plain natural-number literals (no decimal point).
    natural: bool,
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let position = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            _ => None,
        };
        if let Some(token) = simple {
            out.push(Spanned {
                token,
                position,
                natural: false,
            });
            i += 1;
            continue;
        }
        if c == 'x' {
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(syntax(i + 1, "expected a variable index after 'x'"));
            }
            let digits: String = chars[start..i].iter().collect();
            let index: usize = digits
                .parse()
                .map_err(|_| syntax(start + 1, "variable index too large"))?;
            out.push(Spanned {
                token: Token::Var(index),
                position,
                natural: false,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_digits: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(int_digits.parse::<BigInt>().expect("digits"));
            let mut natural = true;
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let frac_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if frac_start == i {
                    return Err(syntax(i + 1, "expected digits after decimal point"));
                }
                let frac: String = chars[frac_start..i].iter().collect();
                let scale = BigInt::from(10u32).pow(frac.len() as u32);
                value += Rational::new(frac.parse::<BigInt>().expect("digits"), scale);
                natural = false;
            }
            out.push(Spanned {
                token: Token::Number(value),
                position,
                natural,
            });
            continue;
        }
        return Err(syntax(position, format!("unexpected character '{c}'")));
    }
    out.push(Spanned {
        token: Token::End,
        position: chars.len() + 1,
        natural: false,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    cursor: usize,
    dimension: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate_first = if self.peek().token == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate_first { -&first } else { first };
        loop {
            match self.peek().token {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                Token::End => return Ok(acc),
                _ => {
                    let t = self.peek();
                    return Err(syntax(t.position, "expected '+', '-' or end of input"));
                }
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek().token == Token::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let t = self.bump();
        match t.token {
            Token::Number(value) => {
                if self.peek().token == Token::Slash {
                    if !t.natural {
                        return Err(syntax(self.peek().position, "a decimal cannot be a numerator"));
                    }
                    self.bump();
                    let den = self.bump();
                    match den.token {
                        Token::Number(d) if den.natural => {
                            if d.is_zero() {
                                return Err(PolyError::DivisionByZero { position: den.position });
                            }
                            Ok(Polynomial::constant(self.dimension, value / d))
                        }
                        _ => Err(syntax(den.position, "expected a natural-number denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(self.dimension, value))
                }
            }
            Token::Var(index) => {
                if index == 0 || index > self.dimension {
                    return Err(PolyError::VariableOutOfRange {
                        index,
                        dimension: self.dimension,
                        position: t.position,
                    });
                }
                let mut power = 1u32;
                if self.peek().token == Token::Caret {
                    self.bump();
                    let e = self.bump();
                    match e.token {
                        Token::Number(v) if e.natural => {
                            power = v
                                .to_integer()
                                .try_into()
                                .map_err(|_| syntax(e.position, "exponent too large"))?;
                        }
                        _ => return Err(syntax(e.position, "expected a natural-number exponent")),
                    }
                }
                let mut exps = vec![0; self.dimension];
                exps[index - 1] = power;
                Ok(Polynomial::monomial(
                    self.dimension,
                    ExponentVector::new(exps),
                    Rational::one(),
                ))
            }
            Token::End => Err(syntax(t.position, "unexpected end of input, expected a term")),
            _ => Err(syntax(t.position, "expected a number or a variable")),
        }
    }
}

/// Parses `text` as a polynomial in `dimension` variables `x1..x{dimension}`.
pub fn parse_polynomial(text: &str, dimension: usize) -> Result<Polynomial, PolyError> {
    if dimension == 0 || dimension > MAX_DIMENSION {
        return Err(PolyError::UnsupportedDimension { dimension });
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        dimension,
    };
    parser.expr()
}
