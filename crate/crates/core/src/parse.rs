//! Text input: `ideal(a^2*b, b*c; vars=5)`, `ideal(a^2 - 3/2*b*c)` and
//! `linforms([[1,0,0],[0,1,0]], [[0,0,1]])`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::graded::GradedIdeal;
use crate::ideal::MonomialIdeal;
use crate::linforms::{family_text, LinearIdeal};
use crate::monomial::Monomial;
use crate::poly::HomPolynomial;

/// Homogeneous generators with rational coefficients, independent of the
/// field they are later read in.
#[derive(Clone, PartialEq)]
pub struct PolynomialSystem {
    n: usize,
    gens: Vec<HomPolynomial<Rationals>>,
}

impl PolynomialSystem {
    pub fn new(n: usize, gens: Vec<HomPolynomial<Rationals>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &gens {
            if g.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: g.n() });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
        }
        Ok(Self { n, gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[HomPolynomial<Rationals>] {
        &self.gens
    }

    /// The same system read in `n >= self.n()` variables.
    pub fn extend(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::AmbientMismatch { left: self.n, right: n });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let terms = g.terms().iter().map(|(m, c)| (m.extend(n), c.clone())).collect();
                HomPolynomial::new(&Rationals, n, terms)
            })
            .collect::<Result<_>>()?;
        Self::new(n, gens)
    }

    /// Reduces the coefficients into `field`.
    pub fn to_graded<F: Field>(&self, field: &F) -> Result<GradedIdeal<F>> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut terms = Vec::with_capacity(g.terms().len());
            for (m, c) in g.terms() {
                terms.push((m.clone(), field.from_rational(c)?));
            }
            let p = HomPolynomial::new(field, self.n, terms)?;
            if p.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            gens.push(p);
        }
        GradedIdeal::new(field.clone(), self.n, gens)
    }

    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        let used = self
            .gens
            .iter()
            .flat_map(|g| g.terms().iter())
            .flat_map(|(m, _)| m.support().as_slice().last().copied())
            .max()
            .map_or(0, |i| i + 1);
        if used == self.n {
            format!("ideal({})", body.join(", "))
        } else {
            format!("ideal({}; vars={})", body.join(", "), self.n)
        }
    }
}

impl fmt::Display for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PolynomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedInput {
    Monomial(MonomialIdeal),
    Polynomial(PolynomialSystem),
    LinearForms(Vec<LinearIdeal>),
}

impl ParsedInput {
    pub fn to_text(&self) -> String {
        match self {
            ParsedInput::Monomial(i) => i.to_text(),
            ParsedInput::Polynomial(p) => p.to_text(),
            ParsedInput::LinearForms(f) => family_text(f),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInput::Monomial(_) => "monomial ideal",
            ParsedInput::Polynomial(_) => "polynomial ideal",
            ParsedInput::LinearForms(_) => "linear-form family",
        }
    }
}

pub fn parse_input(text: &str) -> Result<ParsedInput> {
    let mut p = Parser::new(text);
    let out = p.input()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}' after the end of the input")));
    }
    Ok(out)
}

/// Monomial generators exactly as written, in the given order and without
/// removing redundant ones.
pub fn parse_generator_list(text: &str) -> Result<Vec<Monomial>> {
    let mut p = Parser::new(text);
    let (line, column) = (p.line, p.column);
    if p.word() != "ideal" {
        return Err(Error::Parse {
            line,
            column,
            message: "expected 'ideal('".into(),
        });
    }
    let (_, gens) = p.raw_ideal()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}' after the end of the input")));
    }
    as_monomials(&gens).ok_or(Error::NotMonomial)
}

pub fn parse_monomial_ideal(text: &str) -> Result<MonomialIdeal> {
    match parse_input(text)? {
        ParsedInput::Monomial(i) => Ok(i),
        _ => Err(Error::NotMonomial),
    }
}

/// Any ideal: monomial inputs are embedded as polynomials.
pub fn parse_polynomial_system(text: &str) -> Result<PolynomialSystem> {
    match parse_input(text)? {
        ParsedInput::Monomial(i) => PolynomialSystem::new(
            i.n(),
            i.gens()
                .iter()
                .map(|g| HomPolynomial::monomial(&Rationals, g.clone()))
                .collect(),
        ),
        ParsedInput::Polynomial(p) => Ok(p),
        ParsedInput::LinearForms(_) => Err(Error::Precondition(
            "expected an ideal, found a linear-form family".into(),
        )),
    }
}

pub fn parse_family(text: &str) -> Result<Vec<LinearIdeal>> {
    match parse_input(text)? {
        ParsedInput::LinearForms(f) => Ok(f),
        _ => Err(Error::Precondition(
            "expected linforms(...), found an ideal".into(),
        )),
    }
}

type Term = (BTreeMap<usize, u32>, BigRational);

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Skips whitespace and consumes `c` if it comes next.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            return Ok(());
        }
        Err(match self.peek() {
            Some(found) => self.error(format!("expected '{c}', found '{found}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        })
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            out.push(c);
            self.bump();
        }
        out
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let mut out = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
        }
        if out.is_empty() {
            return Err(self.error("expected a number"));
        }
        Ok(out)
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let (line, column) = (self.line, self.column);
        let text = self.digits()?;
        text.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: format!("{what} {text} is too large"),
        })
    }

    fn input(&mut self) -> Result<ParsedInput> {
        let (line, column) = (self.line, self.column);
        match self.word().as_str() {
            "ideal" => self.ideal(),
            "linforms" => self.linforms(),
            "" => Err(self.error("expected 'ideal(' or 'linforms('")),
            other => Err(Error::Parse {
                line,
                column,
                message: format!("unknown input kind '{other}'"),
            }),
        }
    }

    fn ideal(&mut self) -> Result<ParsedInput> {
        let (n, gens) = self.raw_ideal()?;
        match as_monomials(&gens) {
            Some(ms) => Ok(ParsedInput::Monomial(MonomialIdeal::new(n, ms)?)),
            None => Ok(ParsedInput::Polynomial(PolynomialSystem::new(n, gens)?)),
        }
    }

    fn raw_ideal(&mut self) -> Result<(usize, Vec<HomPolynomial<Rationals>>)> {
        self.expect('(')?;
        self.skip_ws();
        let mut polys: Vec<Vec<Term>> = Vec::new();
        if !matches!(self.peek(), Some(')') | Some(';')) {
            loop {
                polys.push(self.polynomial()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        let used = polys
            .iter()
            .flatten()
            .flat_map(|(m, _)| m.keys().next_back().copied())
            .max()
            .map_or(0, |i| i + 1);
        let mut n = used;
        if self.eat(';') {
            let (line, column) = (self.line, self.column);
            if self.word() != "vars" {
                return Err(Error::Parse {
                    line,
                    column,
                    message: "expected 'vars=<count>'".into(),
                });
            }
            self.expect('=')?;
            let (line, column) = (self.line, self.column);
            n = self.small("variable count")? as usize;
            if n < used {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("vars={n} but variables up to {used} are used"),
                });
            }
        }
        self.expect(')')?;
        if polys.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let gens: Vec<HomPolynomial<Rationals>> = polys
            .into_iter()
            .map(|terms| {
                let terms = terms
                    .into_iter()
                    .map(|(m, c)| (monomial(n, &m), c))
                    .collect();
                let p = HomPolynomial::new(&Rationals, n, terms)?;
                if p.is_zero() {
                    Err(Error::ZeroPolynomial)
                } else {
                    Ok(p)
                }
            })
            .collect::<Result<_>>()?;
        Ok((n, gens))
    }

    fn polynomial(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -BigRational::one()
        } else {
            self.eat('+');
            BigRational::one()
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * &sign));
            if self.eat('+') {
                sign = BigRational::one();
            } else if self.eat('-') {
                sign = -BigRational::one();
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut exps = BTreeMap::new();
        let mut coeff = BigRational::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.rational()?,
                Some(c) if c.is_ascii_lowercase() => {
                    let (line, column) = (self.line, self.column);
                    let index = self.variable().map_err(|message| Error::Parse {
                        line,
                        column,
                        message,
                    })?;
                    let e = if self.eat('^') { self.small("exponent")? } else { 1 };
                    *exps.entry(index).or_insert(0) += e;
                }
                Some(c) => return Err(self.error(format!("expected a variable or a number, found '{c}'"))),
                None => return Err(self.error("expected a variable or a number, found end of input")),
            }
            if !self.eat('*') {
                exps.retain(|_, e| *e > 0);
                return Ok((exps, coeff));
            }
        }
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.eat('/') {
            let (line, column) = (self.line, self.column);
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den.is_zero() {
                return Err(Error::Parse {
                    line,
                    column,
                    message: "zero denominator".into(),
                });
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    /// `a`..`z`, or `x<k>` with `k >= 1`.
    fn variable(&mut self) -> std::result::Result<usize, String> {
        let c = self.bump().expect("peeked");
        if c == 'x' && self.peek().is_some_and(|d| d.is_ascii_digit()) {
            let mut k = String::new();
            while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                k.push(d);
                self.bump();
            }
            return match k.parse::<usize>() {
                Ok(k) if (1..=100_000).contains(&k) => Ok(k - 1),
                _ => Err(format!("variable index x{k} out of range")),
            };
        }
        if self.peek().is_some_and(|d| d.is_ascii_alphanumeric()) {
            let mut name = c.to_string();
            while let Some(d) = self.peek().filter(char::is_ascii_alphanumeric) {
                name.push(d);
                self.bump();
            }
            return Err(format!("unknown variable '{name}' (use a..z or x1, x2, ...; write products with '*')"));
        }
        Ok((c as u8 - b'a') as usize)
    }

    fn linforms(&mut self) -> Result<ParsedInput> {
        self.expect('(')?;
        let mut matrices = Vec::new();
        loop {
            let (line, column) = (self.line, self.column);
            matrices.push((line, column, self.matrix()?));
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        let n = matrices[0].2.first().map_or(0, Vec::len);
        let mut family = Vec::with_capacity(matrices.len());
        for (line, column, rows) in matrices {
            if let Some(bad) = rows.iter().find(|r| r.len() != n) {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("row of length {} in a family of {n} variables", bad.len()),
                });
            }
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect();
            family.push(LinearIdeal::new(n, rows)?);
        }
        Ok(ParsedInput::LinearForms(family))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<BigInt>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.eat(']') {
            return Ok(rows);
        }
        loop {
            rows.push(self.row()?);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<BigInt>> {
        self.expect('[')?;
        let mut row = Vec::new();
        loop {
            let negative = self.eat('-');
            let v: BigInt = self.digits()?.parse().expect("digits");
            row.push(if negative { -v } else { v });
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(row)
    }
}

fn as_monomials(gens: &[HomPolynomial<Rationals>]) -> Option<Vec<Monomial>> {
    gens.iter()
        .map(|g| match g.terms() {
            [(m, c)] if c.is_one() => Some(m.clone()),
            _ => None,
        })
        .collect()
}

fn monomial(n: usize, exps: &BTreeMap<usize, u32>) -> Monomial {
    let mut e = vec![0u32; n];
    for (&i, &a) in exps {
        e[i] += a;
    }
    Monomial::new(e)
}
