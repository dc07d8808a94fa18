//! Parser for equations in the normal form `C*X^(2a) = D*Y^(2b) + E`.
//!
//! Grammar, over the token stream:
//!
//! ```text
//! equation := side '=' side [('+' | '-') INT] END
//! side     := ['-'] [INT ['*']] IDENT '^' INT
//! ```
//!
//! A missing coefficient is 1, a lone `-` is -1. Exponents must be even and
//! at least 2; `E` is mandatory and nonzero; the two variables must differ.
//! Implicit multiplication (`2y^4`) is accepted.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::general_pell::EquationSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Integer,
    Identifier,
    Caret,
    Star,
    Plus,
    Minus,
    Equals,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Integer => "integer",
            TokenKind::Identifier => "variable",
            TokenKind::Caret => "'^'",
            TokenKind::Star => "'*'",
            TokenKind::Plus => "'+'",
            TokenKind::Minus => "'-'",
            TokenKind::Equals => "'='",
            TokenKind::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Character offset into the source.
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    IllegalCharacter,
    UnexpectedToken,
    OddExponent,
    ExponentTooSmall,
    ExponentTooLarge,
    ZeroCoefficient,
    MissingConstant,
    ZeroConstant,
    RepeatedVariable,
    TrailingTokens,
}

impl ParseErrorKind {
    /// Stable machine-readable name.
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::IllegalCharacter => "illegal_character",
            ParseErrorKind::UnexpectedToken => "unexpected_token",
            ParseErrorKind::OddExponent => "odd_exponent",
            ParseErrorKind::ExponentTooSmall => "exponent_too_small",
            ParseErrorKind::ExponentTooLarge => "exponent_too_large",
            ParseErrorKind::ZeroCoefficient => "zero_coefficient",
            ParseErrorKind::MissingConstant => "missing_constant",
            ParseErrorKind::ZeroConstant => "zero_constant",
            ParseErrorKind::RepeatedVariable => "repeated_variable",
            ParseErrorKind::TrailingTokens => "trailing_tokens",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize, message: impl Into<String>) -> Self {
        ParseError { kind, position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

const FORM_HINT: &str = "expected the form C*x^2a = D*y^2b + E";

/// Splits `input` into tokens, skipping whitespace. The stream always ends
/// with an [`TokenKind::End`] token positioned one past the last character.
pub fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                TokenKind::Integer
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                TokenKind::Identifier
            }
            '^' | '*' | '+' | '-' | '=' => {
                i += 1;
                match c {
                    '^' => TokenKind::Caret,
                    '*' => TokenKind::Star,
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    _ => TokenKind::Equals,
                }
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::IllegalCharacter,
                    start,
                    format!("illegal character '{other}'"),
                ))
            }
        };
        tokens.push(Token { kind, text: chars[start..i].iter().collect(), position: start });
    }
    tokens.push(Token { kind: TokenKind::End, text: String::new(), position: chars.len() });
    Ok(tokens)
}

struct Side {
    coeff: BigInt,
    var: String,
    var_pos: usize,
    half_exp: u32,
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        // Past the end, keep answering with the final token.
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> &'a Token {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn eat(&mut self, kind: TokenKind) -> Option<&'a Token> {
        (self.peek().kind == kind).then(|| self.bump())
    }

    fn expect(&mut self, kind: TokenKind) -> Result<&'a Token, ParseError> {
        let t = self.peek();
        if t.kind == kind {
            return Ok(self.bump());
        }
        let mut msg = format!("expected {kind}, found {}", describe(t));
        if kind == TokenKind::Equals {
            msg.push_str(&format!(" ({FORM_HINT})"));
        }
        Err(ParseError::new(ParseErrorKind::UnexpectedToken, t.position, msg))
    }

    fn side(&mut self) -> Result<Side, ParseError> {
        let negative = self.eat(TokenKind::Minus).is_some();
        let mut coeff = BigInt::one();
        if let Some(t) = self.eat(TokenKind::Integer) {
            coeff = t.text.parse().expect("digit run");
            if coeff.is_zero() {
                return Err(ParseError::new(ParseErrorKind::ZeroCoefficient, t.position, "zero coefficient"));
            }
            self.eat(TokenKind::Star);
        }
        if negative {
            coeff = -coeff;
        }
        let var = self.expect(TokenKind::Identifier)?;
        self.expect(TokenKind::Caret)?;
        let exp = self.expect(TokenKind::Integer)?;
        let value: BigInt = exp.text.parse().expect("digit run");
        if value.is_zero() {
            return Err(ParseError::new(
                ParseErrorKind::ExponentTooSmall,
                exp.position,
                "exponent must be at least 2",
            ));
        }
        if (&value % 2u8).is_one() {
            return Err(ParseError::new(ParseErrorKind::OddExponent, exp.position, "odd exponent"));
        }
        let half_exp = (value / 2u8).to_u32().ok_or_else(|| {
            ParseError::new(ParseErrorKind::ExponentTooLarge, exp.position, "exponent too large")
        })?;
        Ok(Side { coeff, var: var.text.clone(), var_pos: var.position, half_exp })
    }

    fn equation(&mut self) -> Result<EquationSpec, ParseError> {
        let left = self.side()?;
        self.expect(TokenKind::Equals)?;
        let right = self.side()?;
        if right.var == left.var {
            return Err(ParseError::new(
                ParseErrorKind::RepeatedVariable,
                right.var_pos,
                format!("variable '{}' appears on both sides", right.var),
            ));
        }

        let sign_tok = self.peek();
        let negative = match sign_tok.kind {
            TokenKind::Plus => false,
            TokenKind::Minus => true,
            TokenKind::End => {
                return Err(ParseError::new(
                    ParseErrorKind::MissingConstant,
                    sign_tok.position,
                    "missing nonzero constant term E",
                ))
            }
            _ => {
                return Err(ParseError::new(
                    ParseErrorKind::TrailingTokens,
                    sign_tok.position,
                    format!("unexpected {} after right-hand side", describe(sign_tok)),
                ))
            }
        };
        self.bump();
        let e_tok = self.expect(TokenKind::Integer)?;
        let mut e: BigInt = e_tok.text.parse().expect("digit run");
        if e.is_zero() {
            return Err(ParseError::new(ParseErrorKind::ZeroConstant, e_tok.position, "constant term E must be nonzero"));
        }
        if negative {
            e = -e;
        }

        let end = self.peek();
        if end.kind != TokenKind::End {
            return Err(ParseError::new(
                ParseErrorKind::TrailingTokens,
                end.position,
                format!("trailing {}", describe(end)),
            ));
        }

        // Coefficients were checked nonzero above, exponents >= 1 by construction.
        Ok(EquationSpec::new(left.coeff, left.half_exp, right.coeff, right.half_exp, e)
            .expect("validated while parsing"))
    }
}

fn describe(t: &Token) -> String {
    match t.kind {
        TokenKind::End => "end of input".to_string(),
        _ => format!("'{}'", t.text),
    }
}

/// Parses a token stream produced by [`tokenize`].
pub fn parse(tokens: &[Token]) -> Result<EquationSpec, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::new(ParseErrorKind::UnexpectedToken, 0, "empty token stream"));
    }
    Parser { tokens, pos: 0 }.equation()
}

/// [`tokenize`] then [`parse`].
pub fn parse_equation(input: &str) -> Result<EquationSpec, ParseError> {
    parse(&tokenize(input)?)
}

fn coefficient(c: &BigInt) -> String {
    if c.is_one() {
        String::new()
    } else if *c == BigInt::from(-1) {
        "-".to_string()
    } else {
        format!("{c}*")
    }
}

/// Canonical text: `C*x^(2a) = D*y^(2b) ± |E|`, unit coefficients elided.
pub fn unparse(spec: &EquationSpec) -> String {
    let sign = if spec.e().is_negative() { '-' } else { '+' };
    format!(
        "{}x^{} = {}y^{} {} {}",
        coefficient(spec.c()),
        2 * u64::from(spec.a()),
        coefficient(spec.d()),
        2 * u64::from(spec.b()),
        sign,
        spec.e().abs()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(
            kinds("x^2 = 2y^4 - 1"),
            vec![Identifier, Caret, Integer, Equals, Integer, Identifier, Caret, Integer, Minus, Integer, End]
        );
        let t = tokenize("3*x^6=5*y^2+7").unwrap();
        // 13 lexemes plus the end marker.
        assert_eq!(t.len(), 14);
        assert_eq!(t.last().unwrap().kind, End);
        let err = tokenize("x^2 = 2y^4 @ 1").unwrap_err();
        assert_eq!((err.kind, err.position), (ParseErrorKind::IllegalCharacter, 11));
    }

    #[test]
    fn positions_increase() {
        let t = tokenize("  12 * alpha_1 ^ 10 = -beta^2 + 99").unwrap();
        assert!(t.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(t[2].text, "alpha_1");
    }

    #[test]
    fn parse_examples() {
        let s = parse_equation("x^2 = 2y^4 - 1").unwrap();
        assert_eq!(s, EquationSpec::new(1, 1, 2, 2, -1).unwrap());
        let s = parse_equation("3x^6 = 5y^2 + 7").unwrap();
        assert_eq!(s, EquationSpec::new(3, 3, 5, 1, 7).unwrap());
        let err = parse_equation("x^3 = 2y^4 - 1").unwrap_err();
        assert_eq!((err.kind, err.position), (ParseErrorKind::OddExponent, 2));
        assert_eq!(err.to_string(), "odd exponent at position 2");
    }

    #[test]
    fn reversed_form_gets_a_hint() {
        let err = parse_equation("2y^4 - 1 = x^2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(err.position, 5);
        assert!(err.message.contains("C*x^2a"));
    }

    #[test]
    fn unparse_examples() {
        assert_eq!(unparse(&EquationSpec::new(1, 1, 2, 2, -1).unwrap()), "x^2 = 2*y^4 - 1");
        assert_eq!(unparse(&EquationSpec::new(3, 3, 5, 1, 7).unwrap()), "3*x^6 = 5*y^2 + 7");
        assert_eq!(unparse(&EquationSpec::new(-1, 1, -3, 2, 4).unwrap()), "-x^2 = -3*y^4 + 4");
    }
}
