//! Recursive-descent parser for polynomial text.
//!
//! Grammar (implicit multiplication is rejected):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, which is how rational
//! literals such as `3/2` are written. The identifier `i` denotes the
//! imaginary unit unless it is declared as a variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::coeff::{Coefficient, GaussianRational};
use super::polynomial::ExactPolynomial;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos] as char;
        if ch.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match ch {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((start, Token::Ident(text[start..pos].to_string())));
                continue;
            }
            other => {
                return Err(PolyError::Syntax {
                    position: start,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    variables: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn syntax(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: self.position(),
            message: message.into(),
        }
    }

    fn nvars(&self) -> usize {
        self.variables.len()
    }

    fn expr(&mut self) -> Result<ExactPolynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.cursor += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.cursor += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactPolynomial, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.cursor += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.cursor += 1;
                    let at = self.position();
                    let divisor = self.unary()?;
                    let inv = divisor
                        .as_constant()
                        .ok_or(PolyError::Syntax {
                            position: at,
                            message: "division by a non-constant".into(),
                        })?
                        .inverse()
                        .ok_or(PolyError::Syntax {
                            position: at,
                            message: "division by zero".into(),
                        })?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        if let Some(Token::Int(_) | Token::Ident(_) | Token::LParen) = self.peek() {
            return Err(self.syntax("implicit multiplication is not allowed"));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExactPolynomial, PolyError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.cursor += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.cursor += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExactPolynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.cursor += 1;
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    let e = e
                        .to_u32()
                        .filter(|&e| e <= 64)
                        .ok_or_else(|| self.syntax("exponent too large"))?;
                    self.cursor += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.syntax("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ExactPolynomial, PolyError> {
        let pos = self.position();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.cursor += 1;
                Ok(ExactPolynomial::constant(
                    self.nvars(),
                    GaussianRational::real(BigRational::from_integer(n)),
                ))
            }
            Some(Token::Ident(name)) => {
                self.cursor += 1;
                if let Some(idx) = self.variables.iter().position(|v| *v == name) {
                    Ok(ExactPolynomial::variable(self.nvars(), idx))
                } else if name == "i" {
                    Ok(ExactPolynomial::constant(
                        self.nvars(),
                        GaussianRational::imaginary_unit(),
                    ))
                } else {
                    Err(PolyError::UnknownVariable {
                        name,
                        position: pos,
                    })
                }
            }
            Some(Token::LParen) => {
                self.cursor += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.cursor += 1;
                        Ok(inner)
                    }
                    _ => Err(self.syntax("expected ')'")),
                }
            }
            Some(_) => Err(self.syntax("expected a number, variable or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `text` over the ordered variable list into expanded exact form.
pub fn parse_polynomial<S: AsRef<str>>(
    text: &str,
    variables: &[S],
) -> Result<ExactPolynomial, PolyError> {
    let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
    if let Some(bad) = variables.iter().find(|v| !valid_identifier(v)) {
        return Err(PolyError::InvalidVariableName(bad.clone()));
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        variables: &variables,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.cursor != parser.tokens.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses a variable-free expression such as `1/2 - 3*i` to an exact scalar.
pub fn parse_constant(text: &str) -> Result<GaussianRational, PolyError> {
    let p = parse_polynomial::<&str>(text, &[])?;
    Ok(p.as_constant().unwrap_or_else(GaussianRational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars3() -> Vec<&'static str> {
        vec!["x0", "x1", "x2"]
    }

    #[test]
    fn nodal_cubic_is_three_term_homogeneous_cubic() {
        let p = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &vars3()).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree_and_homogeneity().unwrap(), (3, true));
        assert_eq!(p.coefficient(&[0, 3, 0]), GaussianRational::from_i64(-1));
    }

    #[test]
    fn isotropic_quadric() {
        let p = parse_polynomial("x0^2+x1^2+x2^2", &vars3()).unwrap();
        assert_eq!(p.num_terms(), 3);
        for k in 0..3 {
            let mut e = [0u32; 3];
            e[k] = 2;
            assert_eq!(p.coefficient(&e), GaussianRational::from_i64(1));
        }
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse_polynomial("0", &vars3()).unwrap().is_zero());
        assert!(parse_polynomial("x0 - x0", &vars3()).unwrap().is_zero());
    }

    #[test]
    fn rational_and_imaginary_literals() {
        let c = parse_constant("1/2 - 3*i").unwrap();
        assert_eq!(c.to_string(), "(1/2-3*i)");
        let p = parse_polynomial("x1 - i*x2", &vars3()).unwrap();
        assert_eq!(p.coefficient(&[0, 0, 1]), -GaussianRational::imaginary_unit());
    }

    #[test]
    fn i_can_be_a_variable() {
        let p = parse_polynomial("i^2", &["i"]).unwrap();
        assert_eq!(p.degree_and_homogeneity().unwrap(), (2, true));
    }

    #[test]
    fn errors_report_positions() {
        match parse_polynomial("x0 + * x1", &vars3()) {
            Err(PolyError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x0 + y", &vars3()) {
            Err(PolyError::UnknownVariable { name, position }) => {
                assert_eq!(name, "y");
                assert_eq!(position, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_polynomial("2 x0", &vars3()),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("(x0 + 1", &vars3()),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x0/x1", &vars3()),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x0/0", &vars3()),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 $ 1", &vars3()),
            Err(PolyError::Syntax { position: 3, .. })
        ));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_polynomial("-x0^2", &vars3()).unwrap();
        assert_eq!(p.coefficient(&[2, 0, 0]), GaussianRational::from_i64(-1));
    }
}
