//! A small expression language over quaternions, quadratic polynomials,
//! and 2x2 matrices: the CLI's input format.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := term (("+"|"-") term)* ;
//! term    := factor (("*"|"/") factor)* ;
//! factor  := "-" factor | primary ("^" integer)? ;
//! primary := number | ident | "(" expr ")" | "{" expr "," expr "}"
//!          | "[" expr "," expr "]" | ident "(" expr ("," expr)* ")" ;
//! number  := integer ;
//! ident   := letter (letter|digit)* ;
//! ```
//!
//! Precedence is `^` over unary `-` over `*`/`/` over binary `+`/`-`;
//! exponents are restricted to 1 and 2 (values live in spaces of degree
//! at most two). `{f, g}` is the Poisson bracket (poly mode only);
//! `[x, y]` is the commutator `x*y - y*x` in the mode's ambient algebra.
//! Function calls: `ham`, `quantize`, `spectrum` (poly mode), and
//! `cross`/`dot` (mode-specific pairings).
//!
//! Evaluation modes and their symbols:
//! - `quaternion`: `e`, `i`, `j`, `k`;
//! - `poly`: the coordinate functions `q`, `p`;
//! - `endf`: the matrix units `id`, `J`, `A`, `B`.

use crate::endf::{endf_to_quaternion, quaternion_to_endf, trace_inner, Endo2};
use crate::poisson::{
    ham, pbracket, pbracket_linear, pbracket_quad_linear, pclifford_mul, quad_inner, cross_quad,
    LinearPoly, PCliffordElement, QuadPoly,
};
use crate::quantize::{spectrum, weyl_quantize, WeylElement};
use crate::quaternion::{Quaternion, Vector3};
use crate::scalars::Rational;
use num::ToPrimitive;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslError {
    #[error("unknown character {found:?} at byte {position}")]
    Lex { position: usize, found: char },
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("evaluation error: {message}")]
    Eval { message: String },
}

fn eval_err<T>(message: impl Into<String>) -> Result<T, DslError> {
    Err(DslError::Eval { message: message.into() })
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Ident,
    Op,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Caret,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub position: usize,
}

/// Longest-match lexing; whitespace separates tokens and is skipped.
pub fn tokenize(input: &str) -> Result<Vec<Token>, DslError> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    text.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::Number, text, position: pos });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut text = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() {
                    text.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::Ident, text, position: pos });
            continue;
        }
        let kind = match c {
            '+' | '-' | '*' | '/' => TokenKind::Op,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ',' => TokenKind::Comma,
            _ => return Err(DslError::Lex { position: pos, found: c }),
        };
        tokens.push(Token { kind, text: c.to_string(), position: pos });
        chars.next();
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Abstract syntax
// ---------------------------------------------------------------------------

pub const CALL_NAMES: [&str; 5] = ["cross", "dot", "ham", "quantize", "spectrum"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Symbol(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Exponent is restricted to 1 or 2 at parse time.
    Pow(Box<Expr>, u32),
    PoissonBracket(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

// ---------------------------------------------------------------------------
// Parser (recursive descent following the grammar above)
// ---------------------------------------------------------------------------

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.input_len, |t| t.position)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Parse { position: self.here(), message: message.into() })
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".to_string(), |t| format!("'{}'", t.text))
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<&'a Token, DslError> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.bump().unwrap()),
            _ => self.error(format!("expected {what} but found {}", self.found())),
        }
    }

    fn at_op(&self, ops: &[&str]) -> Option<&'a str> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Op && ops.contains(&t.text.as_str()) => {
                Some(self.tokens[self.pos].text.as_str())
            }
            _ => None,
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.parse_term()?;
        while let Some(op) = self.at_op(&["+", "-"]) {
            self.bump();
            let rhs = self.parse_term()?;
            lhs = if op == "+" {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.parse_factor()?;
        while let Some(op) = self.at_op(&["*", "/"]) {
            self.bump();
            let rhs = self.parse_factor()?;
            lhs = if op == "*" {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr, DslError> {
        if self.at_op(&["-"]).is_some() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.parse_factor()?)));
        }
        let base = self.parse_primary()?;
        if matches!(self.peek(), Some(t) if t.kind == TokenKind::Caret) {
            self.bump();
            let exp_pos = self.here();
            let tok = self.expect(TokenKind::Number, "an integer exponent")?;
            let exp: u32 = tok.text.parse().map_err(|_| DslError::Parse {
                position: exp_pos,
                message: "exponent must be 1 or 2".to_string(),
            })?;
            if exp != 1 && exp != 2 {
                return Err(DslError::Parse {
                    position: exp_pos,
                    message: "exponent must be 1 or 2".to_string(),
                });
            }
            return Ok(Expr::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn parse_pair(&mut self, open: &str) -> Result<(Expr, Expr), DslError> {
        let first = self.parse_expr()?;
        self.expect(TokenKind::Comma, &format!("',' inside '{open}'"))?;
        let second = self.parse_expr()?;
        Ok((first, second))
    }

    fn parse_primary(&mut self) -> Result<Expr, DslError> {
        let Some(tok) = self.peek() else {
            return self.error(
                "expected a number, an identifier, '-', '(', '{', or '[' but found end of input",
            );
        };
        match tok.kind {
            TokenKind::Number => {
                self.bump();
                let value = Rational::from_decimal_str(&tok.text).ok_or(DslError::Parse {
                    position: tok.position,
                    message: format!("invalid integer literal '{}'", tok.text),
                })?;
                Ok(Expr::Literal(value))
            }
            TokenKind::Ident => {
                self.bump();
                if matches!(self.peek(), Some(t) if t.kind == TokenKind::LParen) {
                    if !CALL_NAMES.contains(&tok.text.as_str()) {
                        return Err(DslError::Parse {
                            position: tok.position,
                            message: format!(
                                "unknown function '{}' (available: {})",
                                tok.text,
                                CALL_NAMES.join(", ")
                            ),
                        });
                    }
                    self.bump(); // '('
                    let mut args = vec![self.parse_expr()?];
                    while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
                        self.bump();
                        args.push(self.parse_expr()?);
                    }
                    self.expect(TokenKind::RParen, "')' closing the argument list")?;
                    let arity = if tok.text == "ham" || tok.text == "quantize" { 1 } else { 2 };
                    if args.len() != arity {
                        return Err(DslError::Parse {
                            position: tok.position,
                            message: format!(
                                "'{}' takes {} argument{} but {} were given",
                                tok.text,
                                arity,
                                if arity == 1 { "" } else { "s" },
                                args.len()
                            ),
                        });
                    }
                    Ok(Expr::Call(tok.text.clone(), args))
                } else {
                    Ok(Expr::Symbol(tok.text.clone()))
                }
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(TokenKind::RParen, "')'")?;
                Ok(inner)
            }
            TokenKind::LBrace => {
                self.bump();
                let (l, r) = self.parse_pair("{")?;
                self.expect(TokenKind::RBrace, "'}'")?;
                Ok(Expr::PoissonBracket(Box::new(l), Box::new(r)))
            }
            TokenKind::LBracket => {
                self.bump();
                let (l, r) = self.parse_pair("[")?;
                self.expect(TokenKind::RBracket, "']'")?;
                Ok(Expr::Commutator(Box::new(l), Box::new(r)))
            }
            _ => self.error(format!(
                "expected a number, an identifier, '-', '(', '{{', or '[' but found {}",
                self.found()
            )),
        }
    }
}

/// Tokenizes and parses a complete expression.
pub fn parse(input: &str) -> Result<Expr, DslError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { tokens: &tokens, pos: 0, input_len: input.len() };
    let expr = parser.parse_expr()?;
    if parser.peek().is_some() {
        return parser.error(format!("expected end of input but found {}", parser.found()));
    }
    Ok(expr)
}

// ---------------------------------------------------------------------------
// Pretty-printer (minimal parentheses; parse(print(parse(s))) == parse(s))
// ---------------------------------------------------------------------------

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn print_into(e: &Expr, out: &mut String) {
    let wrapped = |child: &Expr, needs: bool, out: &mut String| {
        if needs {
            out.push('(');
            print_into(child, out);
            out.push(')');
        } else {
            print_into(child, out);
        }
    };
    match e {
        Expr::Literal(r) => {
            if r.is_negative() || !r.is_integer() {
                out.push('(');
                out.push_str(&r.to_string());
                out.push(')');
            } else {
                out.push_str(&r.to_string());
            }
        }
        Expr::Symbol(s) => out.push_str(s),
        Expr::Neg(x) => {
            out.push('-');
            wrapped(x, precedence(x) < 3, out);
        }
        Expr::Add(l, r) => {
            wrapped(l, precedence(l) < 1, out);
            out.push_str(" + ");
            wrapped(r, precedence(r) <= 1, out);
        }
        Expr::Sub(l, r) => {
            wrapped(l, precedence(l) < 1, out);
            out.push_str(" - ");
            wrapped(r, precedence(r) <= 1, out);
        }
        Expr::Mul(l, r) => {
            wrapped(l, precedence(l) < 2, out);
            out.push('*');
            wrapped(r, precedence(r) <= 2, out);
        }
        Expr::Div(l, r) => {
            wrapped(l, precedence(l) < 2, out);
            out.push('/');
            wrapped(r, precedence(r) <= 2, out);
        }
        Expr::Pow(b, k) => {
            wrapped(b, precedence(b) < 5, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
        Expr::PoissonBracket(l, r) => {
            out.push('{');
            print_into(l, out);
            out.push_str(", ");
            print_into(r, out);
            out.push('}');
        }
        Expr::Commutator(l, r) => {
            out.push('[');
            print_into(l, out);
            out.push_str(", ");
            print_into(r, out);
            out.push(']');
        }
        Expr::Call(name, args) => {
            out.push_str(name);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_into(a, out);
            }
            out.push(')');
        }
    }
}

/// Renders an expression with canonical spacing and minimal parentheses.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    print_into(e, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Quaternion,
    Poly,
    Endf,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Quaternion => "quaternion",
            Mode::Poly => "poly",
            Mode::Endf => "endf",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quaternion" => Ok(Mode::Quaternion),
            "poly" => Ok(Mode::Poly),
            "endf" => Ok(Mode::Endf),
            other => Err(format!("unknown mode '{other}' (expected quaternion, poly, or endf)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Polynomial of degree at most two: `scalar + linear + quad`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyValue {
    pub scalar: Rational,
    pub linear: LinearPoly,
    pub quad: QuadPoly,
}

impl PolyValue {
    pub fn from_scalar(scalar: Rational) -> Self {
        Self { scalar, ..Self::default() }
    }

    pub fn from_linear(linear: LinearPoly) -> Self {
        Self { linear, ..Self::default() }
    }

    pub fn from_quad(quad: QuadPoly) -> Self {
        Self { quad, ..Self::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.linear.is_zero() && self.quad.is_zero()
    }

    /// Highest degree with a nonzero coefficient (0 for the zero value).
    pub fn degree(&self) -> u32 {
        if !self.quad.is_zero() {
            2
        } else if !self.linear.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn is_pure_quad(&self) -> bool {
        self.scalar.is_zero() && self.linear.is_zero()
    }

    fn scale(&self, c: &Rational) -> Self {
        Self {
            scalar: &self.scalar * c,
            linear: self.linear.scale(c),
            quad: self.quad.scale(c),
        }
    }
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let constant = if self.scalar.is_zero() { None } else { Some(&self.scalar) };
        let terms: [(&Rational, &str); 5] = [
            (&self.quad.cqq, "q^2"),
            (&self.quad.cqp, "q*p"),
            (&self.quad.cpp, "p^2"),
            (&self.linear.cq, "q"),
            (&self.linear.cp, "p"),
        ];
        let mut lead = true;
        let mut put = |f: &mut fmt::Formatter<'_>, c: &Rational, name: &str| -> fmt::Result {
            if lead {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                lead = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if name.is_empty() {
                write!(f, "{mag}")
            } else if mag.is_one() {
                write!(f, "{name}")
            } else {
                write!(f, "{mag}*{name}")
            }
        };
        for (c, name) in terms {
            if !c.is_zero() {
                put(f, c, name)?;
            }
        }
        if let Some(c) = constant {
            put(f, c, "")?;
        }
        Ok(())
    }
}

/// Result of evaluating an expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Rational),
    Quaternion(Quaternion),
    Poly(PolyValue),
    Endf(Endo2),
    Weyl(WeylElement),
    Spectrum(Vec<f64>),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Quaternion(_) => "quaternion",
            Value::Poly(_) => "polynomial",
            Value::Endf(_) => "matrix",
            Value::Weyl(_) => "operator",
            Value::Spectrum(_) => "spectrum",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(r) => write!(f, "{r}"),
            Value::Quaternion(q) => write!(f, "{q}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Endf(m) => write!(f, "{m}"),
            Value::Weyl(w) => write!(f, "{w}"),
            Value::Spectrum(eigs) => {
                write!(f, "[")?;
                for (i, e) in eigs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }
    }
}

fn to_quaternion(v: Value) -> Result<Quaternion, DslError> {
    match v {
        Value::Scalar(s) => Ok(Quaternion::new(s, Vector3::zero())),
        Value::Quaternion(q) => Ok(q),
        other => eval_err(format!("expected a quaternion or scalar, got a {}", other.kind_name())),
    }
}

fn to_poly(v: Value) -> Result<PolyValue, DslError> {
    match v {
        Value::Scalar(s) => Ok(PolyValue::from_scalar(s)),
        Value::Poly(p) => Ok(p),
        other => eval_err(format!("expected a polynomial or scalar, got a {}", other.kind_name())),
    }
}

fn to_endf(v: Value) -> Result<Endo2, DslError> {
    match v {
        Value::Scalar(s) => Ok(Endo2::identity().scale(&s)),
        Value::Endf(m) => Ok(m),
        other => eval_err(format!("expected a matrix or scalar, got a {}", other.kind_name())),
    }
}

/// A quadratic with no scalar or linear admixture, for `ham`, `quantize`,
/// `spectrum`, and the poly-mode `cross`/`dot`.
fn to_pure_quad(v: Value, what: &str) -> Result<QuadPoly, DslError> {
    let p = to_poly(v)?;
    if !p.scalar.is_zero() || !p.linear.is_zero() {
        return eval_err(format!(
            "{what} applies to homogeneous quadratics; drop the scalar/linear part"
        ));
    }
    Ok(p.quad)
}

fn require_pure(q: Quaternion, what: &str) -> Result<Vector3, DslError> {
    if !q.is_pure() {
        return eval_err(format!("{what} applies to pure quaternions (zero scalar part)"));
    }
    Ok(q.v)
}

fn add_values(mode: Mode, l: Value, r: Value, subtract: bool) -> Result<Value, DslError> {
    if let (Value::Scalar(a), Value::Scalar(b)) = (&l, &r) {
        return Ok(Value::Scalar(if subtract { a - b } else { a + b }));
    }
    match mode {
        Mode::Quaternion => {
            let (a, b) = (to_quaternion(l)?, to_quaternion(r)?);
            Ok(Value::Quaternion(if subtract { &a - &b } else { &a + &b }))
        }
        Mode::Poly => {
            let (a, b) = (to_poly(l)?, to_poly(r)?);
            let combine = |x: &Rational, y: &Rational| if subtract { x - y } else { x + y };
            Ok(Value::Poly(PolyValue {
                scalar: combine(&a.scalar, &b.scalar),
                linear: if subtract { &a.linear - &b.linear } else { &a.linear + &b.linear },
                quad: if subtract { &a.quad - &b.quad } else { &a.quad + &b.quad },
            }))
        }
        Mode::Endf => {
            let (a, b) = (to_endf(l)?, to_endf(r)?);
            Ok(Value::Endf(if subtract { &a - &b } else { &a + &b }))
        }
    }
}

/// Product of two linear polynomials: a quadratic (commutative pointwise
/// product of functions).
fn linear_product(a: &LinearPoly, b: &LinearPoly) -> QuadPoly {
    QuadPoly::new(
        &a.cq * &b.cq,
        &a.cp * &b.cp,
        &(&a.cq * &b.cp) + &(&a.cp * &b.cq),
    )
}

fn mul_values(mode: Mode, l: Value, r: Value) -> Result<Value, DslError> {
    if let (Value::Scalar(a), Value::Scalar(b)) = (&l, &r) {
        return Ok(Value::Scalar(a * b));
    }
    match mode {
        Mode::Quaternion => {
            let (a, b) = (to_quaternion(l)?, to_quaternion(r)?);
            Ok(Value::Quaternion(&a * &b))
        }
        Mode::Poly => {
            let (a, b) = (to_poly(l)?, to_poly(r)?);
            let degree = a.degree() + b.degree();
            if degree > 2 {
                return eval_err(format!(
                    "product has degree {degree}, but only degrees up to 2 are representable"
                ));
            }
            Ok(Value::Poly(PolyValue {
                scalar: &a.scalar * &b.scalar,
                linear: &a.linear.scale(&b.scalar) + &b.linear.scale(&a.scalar),
                quad: &(&a.quad.scale(&b.scalar) + &b.quad.scale(&a.scalar))
                    + &linear_product(&a.linear, &b.linear),
            }))
        }
        Mode::Endf => {
            let (a, b) = (to_endf(l)?, to_endf(r)?);
            Ok(Value::Endf(&a * &b))
        }
    }
}

fn div_values(mode: Mode, l: Value, r: Value) -> Result<Value, DslError> {
    if let (Value::Scalar(a), Value::Scalar(b)) = (&l, &r) {
        return a
            .checked_div(b)
            .map(Value::Scalar)
            .map_err(|_| DslError::Eval { message: "division by zero".to_string() });
    }
    match mode {
        Mode::Quaternion => {
            let (a, b) = (to_quaternion(l)?, to_quaternion(r)?);
            let inv = b
                .inverse()
                .map_err(|_| DslError::Eval { message: "division by zero".to_string() })?;
            Ok(Value::Quaternion(&a * &inv))
        }
        Mode::Poly | Mode::Endf => {
            let Value::Scalar(b) = r else {
                return eval_err(format!(
                    "division in {mode} mode requires a nonzero scalar divisor"
                ));
            };
            let inv = Rational::one()
                .checked_div(&b)
                .map_err(|_| DslError::Eval { message: "division by zero".to_string() })?;
            match mode {
                Mode::Poly => Ok(Value::Poly(to_poly(l)?.scale(&inv))),
                _ => Ok(Value::Endf(to_endf(l)?.scale(&inv))),
            }
        }
    }
}

fn neg_value(v: Value) -> Result<Value, DslError> {
    match v {
        Value::Scalar(s) => Ok(Value::Scalar(-&s)),
        Value::Quaternion(q) => Ok(Value::Quaternion(-&q)),
        Value::Poly(p) => Ok(Value::Poly(p.scale(&Rational::from_int(-1)))),
        Value::Endf(m) => Ok(Value::Endf(-&m)),
        other => eval_err(format!("cannot negate a {} result", other.kind_name())),
    }
}

fn symbol_value(mode: Mode, name: &str) -> Result<Value, DslError> {
    let v = match (mode, name) {
        (Mode::Quaternion, "e") => Value::Quaternion(Quaternion::e()),
        (Mode::Quaternion, "i") => Value::Quaternion(Quaternion::i()),
        (Mode::Quaternion, "j") => Value::Quaternion(Quaternion::j()),
        (Mode::Quaternion, "k") => Value::Quaternion(Quaternion::k()),
        (Mode::Poly, "q") => Value::Poly(PolyValue::from_linear(LinearPoly::q())),
        (Mode::Poly, "p") => Value::Poly(PolyValue::from_linear(LinearPoly::p())),
        (Mode::Endf, "id") => Value::Endf(Endo2::identity()),
        (Mode::Endf, "J") => Value::Endf(Endo2::unit_j()),
        (Mode::Endf, "A") => Value::Endf(Endo2::unit_a()),
        (Mode::Endf, "B") => Value::Endf(Endo2::unit_b()),
        _ => {
            let available = match mode {
                Mode::Quaternion => "e, i, j, k",
                Mode::Poly => "q, p",
                Mode::Endf => "id, J, A, B",
            };
            return eval_err(format!(
                "unknown symbol '{name}' in {mode} mode (available: {available})"
            ));
        }
    };
    Ok(v)
}

fn poisson_bracket(mode: Mode, l: Value, r: Value) -> Result<Value, DslError> {
    if mode != Mode::Poly {
        return eval_err(format!(
            "the {{,}} Poisson bracket is available in poly mode only (not on {mode} values)"
        ));
    }
    let (a, b) = (to_poly(l)?, to_poly(r)?);
    Ok(Value::Poly(PolyValue {
        scalar: pbracket_linear(&a.linear, &b.linear),
        linear: &pbracket_quad_linear(&a.quad, &b.linear)
            - &pbracket_quad_linear(&b.quad, &a.linear),
        quad: pbracket(&a.quad, &b.quad),
    }))
}

fn commutator(mode: Mode, l: Value, r: Value) -> Result<Value, DslError> {
    match mode {
        Mode::Quaternion => {
            let (a, b) = (to_quaternion(l)?, to_quaternion(r)?);
            Ok(Value::Quaternion(&(&a * &b) - &(&b * &a)))
        }
        Mode::Endf => {
            let (a, b) = (to_endf(l)?, to_endf(r)?);
            Ok(Value::Endf(a.commutator(&b)))
        }
        Mode::Poly => {
            let (a, b) = (to_poly(l)?, to_poly(r)?);
            if !a.linear.is_zero() || !b.linear.is_zero() {
                return eval_err(
                    "the poly-mode commutator lives in the algebra of scalar + quadratic \
                     elements; linear parts have no ambient product",
                );
            }
            let x = PCliffordElement::new(a.scalar, a.quad);
            let y = PCliffordElement::new(b.scalar, b.quad);
            let res = &pclifford_mul(&x, &y) + &(-&pclifford_mul(&y, &x));
            Ok(Value::Poly(PolyValue {
                scalar: res.scalar,
                linear: LinearPoly::zero(),
                quad: res.quad,
            }))
        }
    }
}

fn call(mode: Mode, name: &str, args: Vec<Value>) -> Result<Value, DslError> {
    let mut args = args;
    match name {
        "ham" => {
            if mode != Mode::Poly {
                return eval_err("ham is available in poly mode only");
            }
            let f = to_pure_quad(args.remove(0), "ham")?;
            Ok(Value::Endf(ham(&f)))
        }
        "quantize" => {
            if mode != Mode::Poly {
                return eval_err("quantize is available in poly mode only");
            }
            let f = to_pure_quad(args.remove(0), "quantize")?;
            Ok(Value::Weyl(weyl_quantize(&f)))
        }
        "spectrum" => {
            if mode != Mode::Poly {
                return eval_err("spectrum is available in poly mode only");
            }
            let f = to_pure_quad(args.remove(0), "spectrum")?;
            let Value::Scalar(n) = args.remove(0) else {
                return eval_err("the second argument of spectrum must be an integer dimension");
            };
            if !n.is_integer() {
                return eval_err("the second argument of spectrum must be an integer dimension");
            }
            let dim = n.numer().to_usize().filter(|d| (3..=64).contains(d)).ok_or_else(|| {
                DslError::Eval {
                    message: "the spectrum dimension must be between 3 and 64".to_string(),
                }
            })?;
            let eigs = spectrum(&f, dim)
                .map_err(|e| DslError::Eval { message: e.to_string() })?;
            Ok(Value::Spectrum(eigs))
        }
        "cross" | "dot" => {
            let is_cross = name == "cross";
            let second = args.remove(1);
            let first = args.remove(0);
            match mode {
                Mode::Quaternion => {
                    let a = require_pure(to_quaternion(first)?, name)?;
                    let b = require_pure(to_quaternion(second)?, name)?;
                    if is_cross {
                        Ok(Value::Quaternion(Quaternion::new(Rational::zero(), a.cross(&b))))
                    } else {
                        Ok(Value::Scalar(a.dot(&b)))
                    }
                }
                Mode::Poly => {
                    let f = to_pure_quad(first, name)?;
                    let g = to_pure_quad(second, name)?;
                    if is_cross {
                        Ok(Value::Poly(PolyValue::from_quad(cross_quad(&f, &g))))
                    } else {
                        Ok(Value::Scalar(quad_inner(&f, &g)))
                    }
                }
                Mode::Endf => {
                    let x = to_endf(first)?;
                    let y = to_endf(second)?;
                    if is_cross {
                        if !x.is_traceless() || !y.is_traceless() {
                            return eval_err(
                                "cross in endf mode applies to traceless matrices only",
                            );
                        }
                        let (qx, qy) = (endf_to_quaternion(&x), endf_to_quaternion(&y));
                        Ok(Value::Endf(quaternion_to_endf(&Quaternion::new(
                            Rational::zero(),
                            qx.v.cross(&qy.v),
                        ))))
                    } else {
                        Ok(Value::Scalar(trace_inner(&x, &y)))
                    }
                }
            }
        }
        other => eval_err(format!("unknown function '{other}'")),
    }
}

/// Evaluates an expression in the given mode.
pub fn evaluate(e: &Expr, mode: Mode) -> Result<Value, DslError> {
    match e {
        Expr::Literal(r) => Ok(Value::Scalar(r.clone())),
        Expr::Symbol(name) => symbol_value(mode, name),
        Expr::Neg(x) => neg_value(evaluate(x, mode)?),
        Expr::Add(l, r) => add_values(mode, evaluate(l, mode)?, evaluate(r, mode)?, false),
        Expr::Sub(l, r) => add_values(mode, evaluate(l, mode)?, evaluate(r, mode)?, true),
        Expr::Mul(l, r) => mul_values(mode, evaluate(l, mode)?, evaluate(r, mode)?),
        Expr::Div(l, r) => div_values(mode, evaluate(l, mode)?, evaluate(r, mode)?),
        Expr::Pow(b, k) => {
            let v = evaluate(b, mode)?;
            match k {
                1 => Ok(v),
                2 => mul_values(mode, v.clone(), v),
                _ => eval_err("exponent must be 1 or 2"),
            }
        }
        Expr::PoissonBracket(l, r) => {
            poisson_bracket(mode, evaluate(l, mode)?, evaluate(r, mode)?)
        }
        Expr::Commutator(l, r) => commutator(mode, evaluate(l, mode)?, evaluate(r, mode)?),
        Expr::Call(name, arg_exprs) => {
            let mut args = Vec::with_capacity(arg_exprs.len());
            for a in arg_exprs {
                args.push(evaluate(a, mode)?);
            }
            call(mode, name, args)
        }
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(input: &str, mode: Mode) -> Result<Value, DslError> {
    evaluate(&parse(input)?, mode)
}

/// Golden (input, canonical-print) pairs pinning the precedence rules;
/// parsing the printed form must reproduce the same tree.
pub const PRECEDENCE_GOLDENS: [(&str, &str); 17] = [
    ("1+2*3", "1 + 2*3"),
    ("(1+2)*3", "(1 + 2)*3"),
    ("1-2-3", "1 - 2 - 3"),
    ("1-(2-3)", "1 - (2 - 3)"),
    ("2*3/4", "2*3/4"),
    ("2*(3/4)", "2*(3/4)"),
    ("-q^2", "-q^2"),
    ("(-q)^2", "(-q)^2"),
    ("- - q", "--q"),
    ("-(q*p)", "-(q*p)"),
    ("-q*p", "-q*p"),
    ("q ^ 2 / 2", "q^2/2"),
    ("{ q*p , p^2/2 }", "{q*p, p^2/2}"),
    ("[ i , j ]", "[i, j]"),
    ("ham( q*p )", "ham(q*p)"),
    ("spectrum(q^2/2+p^2/2, 8)", "spectrum(q^2/2 + p^2/2, 8)"),
    ("1/2*q^2", "1/2*q^2"),
];
