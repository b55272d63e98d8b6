//! Exponent-vector monomials, divisibility, and the two term orders used
//! throughout: lexicographic (`x1 > x2 > ... > xn`) and reverse
//! lexicographic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x1^a1 * ... * xn^an`, stored as its exponent vector.
///
/// The ambient variable count is the length of the vector; containers make
/// sure all their monomials agree on it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    /// The variable `x_{index+1}`.
    pub fn var(n: usize, index: usize) -> Self {
        let mut m = Self::one(n);
        m.exponents[index] = 1;
        m
    }

    /// Squarefree product of the given variables.
    pub fn from_vars(n: usize, vars: &VariableSet) -> Self {
        let mut m = Self::one(n);
        for &v in vars.iter() {
            m.exponents[v] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Exponent of `x_{i+1}` (0-based `i`).
    pub fn nu(&self, i: usize) -> Result<u32> {
        self.exponents
            .get(i)
            .copied()
            .ok_or(Error::VariableOutOfRange {
                index: i,
                n: self.n(),
            })
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.iter().all(|&a| a <= 1)
    }

    pub fn support(&self) -> VariableSet {
        VariableSet::from_sorted(
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::AmbientMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n(), other.n());
        Self::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn mul_var(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.exponents[i] += 1;
        m
    }

    /// `self / x_{i+1}`, if divisible.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        if self.exponents[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exponents[i] -= 1;
        Some(m)
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Self::new(
            self.exponents
                .iter()
                .zip(&divisor.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// Componentwise minimum: the greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        ))
    }

    /// `(1/2) * sum |a_i - b_i|` for monomials of equal degree.
    pub fn distance(&self, other: &Self) -> Result<u32> {
        self.check_ambient(other)?;
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let total: u32 = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.abs_diff(*b))
            .sum();
        Ok(total / 2)
    }

    /// Lexicographic comparison with `x1 > x2 > ... > xn`.
    pub fn compare_tau(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n(), other.n());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Reverse-lexicographic comparison of two monomials of the same degree:
    /// at the last index where they differ, the smaller exponent wins.
    pub fn compare_revlex(&self, other: &Self) -> Result<Ordering> {
        self.check_ambient(other)?;
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(revlex_tail(&self.exponents, &other.exponents))
    }

    /// Graded reverse-lex: total degree first, then reverse-lex.
    pub fn compare_grevlex(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| revlex_tail(&self.exponents, &other.exponents))
    }

    /// Re-embeds into a polynomial ring with `n >= self.n()` variables.
    pub fn extend(&self, n: usize) -> Self {
        let mut e = self.exponents.clone();
        e.resize(n, 0);
        Self::new(e)
    }
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

/// Name of variable `i` (0-based) in a ring with `n` variables.
pub fn variable_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Resolves `a`..`z` or `x<k>` (1-based `k`) to a 0-based index.
pub fn variable_index(name: &str) -> Option<usize> {
    let bytes = name.as_bytes();
    if bytes.len() == 1 && bytes[0].is_ascii_lowercase() {
        return Some((bytes[0] - b'a') as usize);
    }
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let k: usize = digits.parse().ok()?;
    if k == 0 {
        None
    } else {
        Some(k - 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let n = self.n();
        let mut first = true;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", variable_name(i, n))?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A sorted set of distinct 0-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VariableSet {
    indices: Vec<usize>,
}

impl VariableSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::VariableOutOfRange { index: bad, n });
        }
        Ok(Self { indices })
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.indices.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Writes the set as an ideal of variables, e.g. `(a, c)` or `(0)`.
    pub fn display_ideal(&self, n: usize) -> String {
        if self.is_empty() {
            return "(0)".to_string();
        }
        let names: Vec<String> = self.indices.iter().map(|&i| variable_name(i, n)).collect();
        format!("({})", names.join(", "))
    }
}

/// All monomials of degree `e` in `n` variables, in decreasing lex order.
pub fn monomials_of_degree(n: usize, e: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if e == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut current = vec![0u32; n];
    fill_degree(&mut current, 0, e, &mut out);
    out
}

fn fill_degree(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.to_vec()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill_degree(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// `C(e + n - 1, n - 1)`, the number of monomials of degree `e`.
pub fn count_of_degree(n: usize, e: u32) -> usize {
    if n == 0 {
        return usize::from(e == 0);
    }
    binomial(e as usize + n - 1, n - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The monomial basis of `R_e` with a reverse index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(n, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn nu_reads_exponents() {
        let a2b = m(&[2, 1, 0, 0]);
        assert_eq!(a2b.nu(0).unwrap(), 2);
        assert_eq!(a2b.nu(3).unwrap(), 0);
        assert!(a2b.nu(4).is_err());
        let chain = m(&[1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(chain.nu(4).unwrap(), 1);
    }

    #[test]
    fn gcd_examples() {
        let a2b = m(&[2, 1, 0, 0]);
        let abc = m(&[1, 1, 1, 0]);
        assert_eq!(a2b.gcd(&abc).unwrap(), m(&[1, 1, 0, 0]));
        assert_eq!(a2b.gcd(&a2b).unwrap(), a2b);
        assert_eq!(m(&[2, 0, 0, 0]).gcd(&m(&[0, 0, 1, 2])).unwrap(), Monomial::one(4));
        assert!(a2b.gcd(&m(&[1, 1])).is_err());
    }

    #[test]
    fn distance_examples() {
        let u = m(&[1, 1, 0, 0]);
        assert_eq!(u.distance(&u).unwrap(), 0);
        assert_eq!(u.distance(&m(&[0, 0, 1, 1])).unwrap(), 2);
        assert_eq!(m(&[2, 1, 0, 0]).distance(&m(&[1, 1, 1, 0])).unwrap(), 1);
        assert!(u.distance(&m(&[1, 1, 1, 0])).is_err());
    }

    #[test]
    fn tau_examples() {
        let x1sq = m(&[2, 0, 0]);
        let x1x3 = m(&[1, 0, 1]);
        assert_eq!(x1sq.compare_tau(&x1x3), Ordering::Greater);
        assert_eq!(x1x3.compare_tau(&x1x3), Ordering::Equal);
        let c1 = m(&[1, 0, 1, 0, 1, 0, 1, 0]);
        let c2 = m(&[1, 0, 1, 0, 1, 0, 0, 1]);
        assert_eq!(c1.compare_tau(&c2), Ordering::Greater);
    }

    #[test]
    fn revlex_examples() {
        let x1sq = m(&[2, 0, 0]);
        let x1x2 = m(&[1, 1, 0]);
        assert_eq!(x1sq.compare_revlex(&x1x2).unwrap(), Ordering::Greater);
        assert_eq!(x1sq.compare_revlex(&x1sq).unwrap(), Ordering::Equal);
        assert!(x1sq.compare_revlex(&m(&[1, 0, 0])).is_err());

        // a^2b, a^2c, ac^2, bc^2, acd
        let mut gens = [m(&[1, 0, 1, 1]),
            m(&[0, 1, 2, 0]),
            m(&[2, 1, 0, 0]),
            m(&[1, 0, 2, 0]),
            m(&[2, 0, 1, 0])];
        gens.sort_by(|a, b| b.compare_revlex(a).unwrap());
        let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["a^2*b", "a^2*c", "a*c^2", "b*c^2", "a*c*d"]);
    }

    #[test]
    fn names_and_display() {
        assert_eq!(m(&[2, 1, 0, 0]).to_string(), "a^2*b");
        assert_eq!(Monomial::one(3).to_string(), "1");
        let mut e = vec![0; 30];
        e[0] = 2;
        e[2] = 1;
        assert_eq!(Monomial::new(e).to_string(), "x1^2*x3");
        assert_eq!(variable_index("a"), Some(0));
        assert_eq!(variable_index("x12"), Some(11));
        assert_eq!(variable_index("x0"), None);
        assert_eq!(variable_index("y1"), None);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(count_of_degree(4, 3), 20);
        assert_eq!(count_of_degree(3, 0), 1);
        let basis = MonomialBasis::new(3, 2);
        assert_eq!(basis.len(), 6);
        assert_eq!(basis.index_of(&m(&[2, 0, 0])), Some(0));
    }

    #[test]
    fn variable_set_validation() {
        let s = VariableSet::new(vec![2, 0, 2], 3).unwrap();
        assert_eq!(s.as_slice(), &[0, 2]);
        assert!(VariableSet::new(vec![3], 3).is_err());
        assert_eq!(s.display_ideal(3), "(a, c)");
        assert_eq!(VariableSet::empty().display_ideal(3), "(0)");
    }
}
