//! Homogeneous polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseRow;
use crate::monomial::{variable_name, Monomial, MonomialBasis};

/// A nonzero-coefficient list of terms of one common degree.
#[derive(Clone)]
pub struct HomPolynomial<F: Field> {
    n: usize,
    degree: u32,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for HomPolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.degree == other.degree && self.terms == other.terms
    }
}

impl<F: Field> HomPolynomial<F> {
    /// Collects like terms and drops zeros; all monomials must share a degree.
    pub fn new(field: &F, n: usize, terms: Vec<(Monomial, F::Elem)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: m.n() });
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::NotHomogeneous),
                _ => {}
            }
            let slot = acc.entry(m).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        }
        let terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let degree = terms.first().map_or(degree.unwrap_or(0), |(m, _)| m.degree());
        Ok(Self { n, degree, terms })
    }

    pub fn monomial(field: &F, m: Monomial) -> Self {
        Self {
            n: m.n(),
            degree: m.degree(),
            terms: vec![(m, field.one())],
        }
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear_form(field: &F, coefficients: &[F::Elem]) -> Self {
        let n = coefficients.len();
        let terms = coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (Monomial::var(n, i), c.clone()))
            .collect();
        Self { n, degree: 1, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(m)` when the polynomial is a nonzero scalar times a monomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, _)] => Some(m),
            _ => None,
        }
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut acc: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let slot = acc.entry(a.mul(b)).or_insert_with(|| field.zero());
                *slot = field.add(slot, &field.mul(ca, cb));
            }
        }
        Self {
            n: self.n,
            degree: self.degree + other.degree,
            terms: acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            n: self.n,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Coordinates in the monomial basis of its degree.
    pub fn to_row(&self, basis: &MonomialBasis) -> SparseRow<F::Elem> {
        debug_assert_eq!(basis.degree(), self.degree);
        let mut row: SparseRow<F::Elem> = self
            .terms
            .iter()
            .map(|(m, c)| (basis.index_of(m).expect("monomial of basis degree"), c.clone()))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    pub fn from_row(n: usize, basis: &MonomialBasis, row: &[(usize, F::Elem)]) -> Self {
        let mut terms: Vec<(Monomial, F::Elem)> =
            row.iter().map(|(c, v)| (basis.get(*c).clone(), v.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Self {
            n,
            degree: basis.degree(),
            terms,
        }
    }
}

impl<F: Field> fmt::Display for HomPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Largest monomial first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let coeff = c.to_string();
            let (neg, abs) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for HomPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes a linear form given by its coefficient vector, e.g. `a - 2*c`.
pub fn format_linear_form<F: Field>(field: &F, coefficients: &[F::Elem]) -> String {
    let n = coefficients.len();
    let mut out = String::new();
    for (i, c) in coefficients.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let s = c.to_string();
        let (neg, abs) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != "1" {
            out.push_str(&abs);
            out.push('*');
        }
        out.push_str(&variable_name(i, n));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn product_of_linear_forms() {
        let f = Rationals;
        let x_plus_y = HomPolynomial::linear_form(&f, &[f.one(), f.one(), f.zero()]);
        let y_minus_z = HomPolynomial::linear_form(&f, &[f.zero(), f.one(), f.from_i64(-1)]);
        let p = x_plus_y.mul(&f, &y_minus_z);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.terms().len(), 4);
        assert_eq!(p.to_string(), "a*b - a*c + b^2 - b*c");
    }

    #[test]
    fn rejects_inhomogeneous() {
        let f = Rationals;
        let terms = vec![
            (Monomial::new(vec![1, 0]), f.one()),
            (Monomial::new(vec![1, 1]), f.one()),
        ];
        assert_eq!(HomPolynomial::new(&f, 2, terms).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn cancellation_gives_zero() {
        let f = Rationals;
        let m = Monomial::new(vec![1, 0]);
        let p = HomPolynomial::new(&f, 2, vec![(m.clone(), f.one()), (m, f.from_i64(-1))]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn linear_form_text() {
        let f = Rationals;
        let v = [f.from_i64(1), f.zero(), f.from_i64(-2)];
        assert_eq!(format_linear_form(&f, &v), "a - 2*c");
    }
}
