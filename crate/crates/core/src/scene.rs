//! Scene documents: named hyperplanes, real subspaces and curves.
//!
//! ```text
//! # comment
//! hyperplane H4: z1 + z2 + z3 = 0
//! real H: x1 - x2 = 0; x1 - x3 = 0
//! curve f: (exp(z), -exp(z), exp(2z))
//! ```
//!
//! Coefficients are exact: `1/2`, `0.25` and `(1 - 3i)` all parse to
//! Gaussian rationals. Multiplication may be implicit (`3i`, `2z1`,
//! `(1 + i)*z2`). Curve components are sums of terms `c*exp(p(z))`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arrangement::{RealLinearForm, RealSubspace};
use crate::curve::{ExpAffineCurve, ExpSum, Poly};
use crate::error::Error as GeoError;
use crate::projective::{fmt_linear_form, ComplexHyperplane};
use crate::scalar::{GaussianRational, Rational};

type GR = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GeoError },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub hyperplanes: Vec<Named<ComplexHyperplane>>,
    pub reals: Vec<Named<RealSubspace>>,
    pub curves: Vec<Named<ExpAffineCurve>>,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let mut scene = Scene::default();
        for (k, raw) in text.lines().enumerate() {
            parse_line(&mut scene, raw, k + 1)?;
        }
        Ok(scene)
    }

    /// Hyperplanes named `H1, H2, ..`; a single real subspace is named `H`,
    /// several are `R1, R2, ..`.
    pub fn from_arrangement(hs: &[ComplexHyperplane], reals: &[RealSubspace]) -> Self {
        let hyperplanes = hs
            .iter()
            .enumerate()
            .map(|(k, h)| Named {
                name: format!("H{}", k + 1),
                value: h.clone(),
            })
            .collect();
        let reals = reals
            .iter()
            .enumerate()
            .map(|(k, r)| Named {
                name: if reals.len() == 1 {
                    "H".into()
                } else {
                    format!("R{}", k + 1)
                },
                value: r.clone(),
            })
            .collect();
        Self {
            hyperplanes,
            reals,
            curves: Vec::new(),
        }
    }

    pub fn with_curve(mut self, name: &str, curve: ExpAffineCurve) -> Self {
        self.curves.push(Named {
            name: name.into(),
            value: curve,
        });
        self
    }

    fn has_name(&self, name: &str) -> bool {
        self.hyperplanes.iter().any(|n| n.name == name)
            || self.reals.iter().any(|n| n.name == name)
            || self.curves.iter().any(|n| n.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&ExpAffineCurve> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.value)
    }

    pub fn hyperplane_values(&self) -> Vec<ComplexHyperplane> {
        self.hyperplanes.iter().map(|h| h.value.clone()).collect()
    }

    pub fn real_values(&self) -> Vec<RealSubspace> {
        self.reals.iter().map(|h| h.value.clone()).collect()
    }
}

impl fmt::Display for Scene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.hyperplanes {
            writeln!(f, "hyperplane {}: {} = 0", h.name, h.value)?;
        }
        for r in &self.reals {
            writeln!(f, "real {}: {}", r.name, r.value)?;
        }
        for c in &self.curves {
            writeln!(f, "curve {}: {}", c.name, c.value)?;
        }
        Ok(())
    }
}

fn parse_line(scene: &mut Scene, raw: &str, line: usize) -> Result<(), SceneError> {
    let text = raw.split('#').next().unwrap_or("");
    if text.trim().is_empty() {
        return Ok(());
    }
    let tokens = tokenize(text, line)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        line,
    };
    let keyword = p.ident("a declaration keyword")?;
    let name = p.ident("a name")?;
    p.expect(&Tok::Colon)?;
    if scene.has_name(&name) {
        return Err(SceneError::DuplicateName { line, name });
    }
    let invalid = |source| SceneError::Invalid { line, source };
    match keyword.as_str() {
        "hyperplane" => {
            let (form, col) = p.equation()?;
            p.end()?;
            let coeffs = linear_coeffs(&form, &["z1", "z2", "z3"], line, col)?;
            let value = ComplexHyperplane::new(coeffs).map_err(invalid)?;
            scene.hyperplanes.push(Named { name, value });
        }
        "real" => {
            let mut forms = Vec::new();
            loop {
                let (form, col) = p.equation()?;
                let c: [GR; 6] = linear_coeffs(&form, &crate::arrangement::REAL_VARS, line, col)?;
                if let Some(bad) = c.iter().find(|x| !x.is_real()) {
                    return Err(p.error_at(col, format!("real form has complex coefficient {bad}")));
                }
                forms.push(RealLinearForm::new(c.map(|x| x.re)).map_err(invalid)?);
                if !p.eat(&Tok::Semi) {
                    break;
                }
            }
            p.end()?;
            let value = RealSubspace::new(forms).map_err(invalid)?;
            scene.reals.push(Named { name, value });
        }
        "curve" => {
            p.expect(&Tok::LParen)?;
            let mut comps = Vec::new();
            loop {
                let col = p.col();
                let e = p.expr()?;
                comps.push(to_exp_sum(&e).map_err(|m| p.error_at(col, m))?);
                if !p.eat(&Tok::Comma) {
                    break;
                }
            }
            p.expect(&Tok::RParen)?;
            p.end()?;
            let value = ExpAffineCurve::new(comps).map_err(invalid)?;
            scene.curves.push(Named { name, value });
        }
        other => {
            return Err(SceneError::Syntax {
                line,
                col: 1,
                message: format!("unknown declaration `{other}`"),
            })
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(r) => write!(f, "number {r}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
        }
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>, SceneError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(k + 1).is_some_and(char::is_ascii_digit)) {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let value = parse_decimal(&s).ok_or_else(|| SceneError::Syntax {
                line,
                col,
                message: format!("malformed number `{s}`"),
            })?;
            out.push((Tok::Num(value), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len()
                && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'')
            {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => {
                return Err(SceneError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, col));
        k += 1;
    }
    Ok(out)
}

/// `12`, `0.25`, `.5` as exact rationals.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if frac.contains('.') || (int_part.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Some(Rational::new(num, den))
}

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(1, |t| t.1)
    }

    fn error_at(&self, col: usize, message: String) -> SceneError {
        SceneError::Syntax {
            line: self.line,
            col,
            message,
        }
    }

    fn unexpected(&self, wanted: &str) -> SceneError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of line".into(),
        };
        let col = match self.tokens.get(self.pos) {
            Some(t) => t.1,
            None => self.tokens.last().map_or(1, |t| t.1 + 1),
        };
        self.error_at(col, format!("expected {wanted}, found {found}"))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), SceneError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    fn end(&self) -> Result<(), SceneError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of line")),
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, SceneError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    /// `lhs = rhs`, returned as `lhs - rhs` with the column of `lhs`.
    fn equation(&mut self) -> Result<(Expr, usize), SceneError> {
        let col = self.col();
        let lhs = self.expr()?;
        self.expect(&Tok::Eq)?;
        let rhs = self.expr()?;
        Ok((Expr::Sub(Box::new(lhs), Box::new(rhs)), col))
    }

    fn expr(&mut self) -> Result<Expr, SceneError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SceneError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat(&Tok::Slash) {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)) {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SceneError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SceneError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        match self.peek() {
            Some(Tok::Num(r)) if r.is_integer() => {
                let e = r.to_integer();
                let e: u32 = e
                    .try_into()
                    .map_err(|_| self.error_at(col, "exponent too large".into()))?;
                self.pos += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.unexpected("a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, SceneError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "exp" {
                    self.expect(&Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    Ok(Expr::Exp(Box::new(arg)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, name or `(`")),
        }
    }
}

/// Affine-linear value `Σ c_v v + constant` over named variables.
#[derive(Clone, Debug, Default)]
struct Linear {
    coeffs: BTreeMap<String, GR>,
    constant: GR,
}

impl Linear {
    fn constant(c: GR) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    fn as_constant(&self) -> Option<&GR> {
        self.coeffs
            .values()
            .all(Zero::is_zero)
            .then_some(&self.constant)
    }

    fn scale(&self, s: &GR) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * s))
                .collect(),
            constant: &self.constant * s,
        }
    }

    fn add(&self, other: &Self, sign: &GR) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            let e = out.coeffs.entry(k.clone()).or_default();
            *e = &*e + &(v * sign);
        }
        out.constant = &out.constant + &(&other.constant * sign);
        out
    }
}

fn eval_linear(e: &Expr, vars: &[&str]) -> Result<Linear, String> {
    Ok(match e {
        Expr::Num(r) => Linear::constant(GR::from_rational(r.clone())),
        Expr::Var(v) if v == "i" => Linear::constant(GR::i()),
        Expr::Var(v) if vars.contains(&v.as_str()) => {
            let mut l = Linear::default();
            l.coeffs.insert(v.clone(), GR::one());
            l
        }
        Expr::Var(v) => {
            return Err(format!(
                "unknown variable `{v}`; expected one of {}",
                vars.join(", ")
            ))
        }
        Expr::Neg(a) => eval_linear(a, vars)?.scale(&GR::from(-1)),
        Expr::Add(a, b) => eval_linear(a, vars)?.add(&eval_linear(b, vars)?, &GR::one()),
        Expr::Sub(a, b) => eval_linear(a, vars)?.add(&eval_linear(b, vars)?, &GR::from(-1)),
        Expr::Mul(a, b) => {
            let (x, y) = (eval_linear(a, vars)?, eval_linear(b, vars)?);
            match (x.as_constant(), y.as_constant()) {
                (Some(c), _) => y.scale(c),
                (_, Some(c)) => x.scale(c),
                _ => return Err("product of two variables is not linear".into()),
            }
        }
        Expr::Div(a, b) => {
            let y = eval_linear(b, vars)?;
            let inv = y
                .as_constant()
                .ok_or("division by a variable")?
                .inv()
                .ok_or("division by zero")?;
            eval_linear(a, vars)?.scale(&inv)
        }
        Expr::Pow(a, k) => {
            let x = eval_linear(a, vars)?;
            let c = x.as_constant().ok_or("power of a variable is not linear")?;
            Linear::constant((0..*k).fold(GR::one(), |acc, _| &acc * c))
        }
        Expr::Exp(_) => return Err("`exp` is not allowed in a linear form".into()),
    })
}

fn linear_coeffs<const N: usize>(
    e: &Expr,
    vars: &[&str; N],
    line: usize,
    col: usize,
) -> Result<[GR; N], SceneError> {
    let err = |message: String| SceneError::Syntax { line, col, message };
    let l = eval_linear(e, vars).map_err(err)?;
    if !l.constant.is_zero() {
        return Err(err(format!(
            "form has constant term {}; only linear subspaces through the origin are supported",
            l.constant
        )));
    }
    Ok(vars.map(|v| l.coeffs.get(v).cloned().unwrap_or_default()))
}

fn eval_poly(e: &Expr) -> Result<Poly, String> {
    Ok(match e {
        Expr::Num(r) => Poly::constant(GR::from_rational(r.clone())),
        Expr::Var(v) if v == "i" => Poly::constant(GR::i()),
        Expr::Var(v) if v == "z" => Poly::z(),
        Expr::Var(v) => return Err(format!("unknown variable `{v}` in exponent; expected `z`")),
        Expr::Neg(a) => -&eval_poly(a)?,
        Expr::Add(a, b) => &eval_poly(a)? + &eval_poly(b)?,
        Expr::Sub(a, b) => &eval_poly(a)? - &eval_poly(b)?,
        Expr::Mul(a, b) => &eval_poly(a)? * &eval_poly(b)?,
        Expr::Div(a, b) => {
            let d = eval_poly(b)?;
            if !d.is_constant() {
                return Err("division by a polynomial".into());
            }
            let inv = d.constant_term().inv().ok_or("division by zero")?;
            eval_poly(a)?.scale(&inv)
        }
        Expr::Pow(a, k) => eval_poly(a)?.pow(*k),
        Expr::Exp(_) => return Err("nested `exp` is not supported".into()),
    })
}

fn eval_exp_sum(e: &Expr) -> Result<ExpSum, String> {
    Ok(match e {
        Expr::Num(r) => ExpSum::constant(GR::from_rational(r.clone())),
        Expr::Var(v) if v == "i" => ExpSum::constant(GR::i()),
        Expr::Var(v) if v == "z" => {
            return Err("`z` may only appear inside `exp(..)` in a curve component".into())
        }
        Expr::Var(v) => return Err(format!("unknown name `{v}` in curve component")),
        Expr::Neg(a) => -&eval_exp_sum(a)?,
        Expr::Add(a, b) => &eval_exp_sum(a)? + &eval_exp_sum(b)?,
        Expr::Sub(a, b) => &eval_exp_sum(a)? - &eval_exp_sum(b)?,
        Expr::Mul(a, b) => &eval_exp_sum(a)? * &eval_exp_sum(b)?,
        Expr::Div(a, b) => {
            let d = eval_exp_sum(b)?;
            let c = match d.terms().collect::<Vec<_>>().as_slice() {
                [t] if t.exponent.is_zero() => t.coeff.clone(),
                _ => return Err("division by a non-numeric expression".into()),
            };
            let inv = c.inv().ok_or("division by zero")?;
            eval_exp_sum(a)?.scale(&inv)
        }
        Expr::Pow(a, k) => eval_exp_sum(a)?.pow(*k),
        Expr::Exp(arg) => ExpSum::exp(eval_poly(arg)?),
    })
}

fn to_exp_sum(e: &Expr) -> Result<ExpSum, String> {
    eval_exp_sum(e)
}

/// Parses a complex linear form in `z1, z2, z3`, e.g. `(1/2 - 3i)*z2`.
pub fn parse_complex_form(text: &str) -> Result<[GR; 3], SceneError> {
    let (e, col) = parse_standalone(text)?;
    linear_coeffs(&e, &["z1", "z2", "z3"], 1, col)
}

/// Parses a complex number such as `1 + 2i` or `-3/4i`.
pub fn parse_complex(text: &str) -> Result<GR, SceneError> {
    let (e, col) = parse_standalone(text)?;
    let l = eval_linear(&e, &[]).map_err(|message| SceneError::Syntax {
        line: 1,
        col,
        message,
    })?;
    Ok(l.constant)
}

/// Parses one curve component such as `2*exp(z^2) - 1`.
pub fn parse_exp_sum(text: &str) -> Result<ExpSum, SceneError> {
    let (e, col) = parse_standalone(text)?;
    to_exp_sum(&e).map_err(|message| SceneError::Syntax {
        line: 1,
        col,
        message,
    })
}

fn parse_standalone(text: &str) -> Result<(Expr, usize), SceneError> {
    let tokens = tokenize(text, 1)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        line: 1,
    };
    let col = p.col();
    let e = p.expr()?;
    p.end()?;
    Ok((e, col))
}

/// The same form printed back as scene text.
pub fn format_complex_form(c: &[GR; 3]) -> String {
    fmt_linear_form(c, &["z1", "z2", "z3"])
}
