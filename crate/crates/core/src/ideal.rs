//! Monomial ideals stored by their unique minimal generating set `G(I)`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GradedIdeal;
use crate::monomial::{binomial, Monomial, VariableSet};
use crate::poly::HomPolynomial;

/// A nonzero monomial ideal.
///
/// Generators are kept minimal and sorted by degree, then reverse-lex
/// descending, so two ideals are equal iff their generator lists are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Canonical generator order: degree ascending, then reverse-lex descending.
pub fn canonical_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.compare_grevlex(a))
}

/// Removes duplicates and non-minimal elements, preserving first occurrences.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|m| m.degree());
    let mut kept: Vec<&Monomial> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|k| k.divides(g)) {
            kept.push(g);
        }
    }
    let mut keep: HashSet<&Monomial> = kept.into_iter().collect();
    gens.iter().filter(|g| keep.remove(g)).cloned().collect()
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::AmbientMismatch { left: n, right: bad.n() });
        }
        let mut gens = minimalize(&gens);
        gens.sort_by(canonical_order);
        Ok(Self { n, gens })
    }

    /// Like [`MonomialIdeal::new`] but rejects non-minimal input.
    pub fn from_minimal(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        check_minimal(&gens)?;
        Self::new(n, gens)
    }

    pub fn maximal(n: usize) -> Self {
        Self::variables(n, &VariableSet::from_sorted((0..n).collect()))
            .expect("nonempty variable set")
    }

    /// The ideal generated by a nonempty set of variables.
    pub fn variables(n: usize, vars: &VariableSet) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = vars.iter().find(|&&v| v >= n) {
            return Err(Error::VariableOutOfRange { index: bad, n });
        }
        Self::new(n, vars.iter().map(|&v| Monomial::var(n, v)).collect())
    }

    pub fn principal(m: Monomial) -> Self {
        Self {
            n: m.n(),
            gens: vec![m],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn min_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Componentwise maximum of all generators.
    pub fn lcm(&self) -> Monomial {
        let mut e = vec![0u32; self.n];
        for g in &self.gens {
            for (a, b) in e.iter_mut().zip(g.exponents()) {
                *a = (*a).max(*b);
            }
        }
        Monomial::new(e)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `G(IJ)`: all pairwise products, pruned by divisibility.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut prods = Vec::with_capacity(self.len() * other.len());
        for u in &self.gens {
            for v in &other.gens {
                prods.push(u.mul(v));
            }
        }
        Self::new(self.n, prods)
    }

    pub fn power(&self, k: u32) -> Self {
        let mut acc = MonomialIdeal::principal(Monomial::one(self.n));
        for _ in 0..k {
            acc = acc.product(self).expect("same ambient");
        }
        acc
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(self.n, gens)
    }

    /// `I : u`, generated by `v / gcd(v, u)`.
    pub fn colon(&self, u: &Monomial) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|v| v.div(&v.gcd(u).expect("same ambient")).expect("gcd divides"))
            .collect();
        Self::new(self.n, gens).expect("nonempty")
    }

    /// Re-embeds into `n >= self.n()` variables.
    pub fn extend(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::AmbientMismatch { left: n, right: self.n });
        }
        Self::new(n, self.gens.iter().map(|g| g.extend(n)).collect())
    }

    pub fn to_graded<F: Field>(&self, field: &F) -> GradedIdeal<F> {
        let gens = self
            .gens
            .iter()
            .map(|g| HomPolynomial::monomial(field, g.clone()))
            .collect();
        GradedIdeal::new(field.clone(), self.n, gens).expect("monomial generators are valid")
    }

    /// Numerator `K(t)` of the Hilbert series `K(t) / (1 - t)^n` of `R/I`,
    /// as coefficients of `1, t, t^2, ...`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let mut k = k_polynomial_of(&self.gens);
        while k.len() > 1 && k.last() == Some(&0) {
            k.pop();
        }
        k
    }

    /// `dim_K (R/I)_e`, read off the Hilbert series.
    pub fn hilbert_function(&self, e: u32) -> u64 {
        let k = self.k_polynomial();
        let n = self.n;
        let mut total: i128 = 0;
        for (deg, &c) in k.iter().enumerate() {
            if deg as u32 > e || c == 0 {
                continue;
            }
            let rest = (e - deg as u32) as usize;
            let count = if n == 0 {
                i128::from(rest == 0)
            } else {
                binomial(rest + n - 1, n - 1) as i128
            };
            total += c as i128 * count;
        }
        total as u64
    }

    /// Standard text form, `ideal(a^2*b, ...)`; appends `; vars=n` when the
    /// ambient ring has variables beyond the highest one used.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        let used = self
            .gens
            .iter()
            .flat_map(|g| g.support().as_slice().last().copied())
            .max()
            .map_or(0, |i| i + 1);
        if used == self.n {
            format!("ideal({})", body.join(", "))
        } else {
            format!("ideal({}; vars={})", body.join(", "), self.n)
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub fn check_minimal(gens: &[Monomial]) -> Result<()> {
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(Error::NotMinimal {
                    divisor: a.to_string(),
                    multiple: b.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += c;
    }
}

fn k_polynomial_of(gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let gens = minimalize(gens);
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let n = gens[0].n();
    let mut occurrences = vec![0usize; n];
    let mut coprime = true;
    for g in &gens {
        for (i, &a) in g.exponents().iter().enumerate() {
            if a > 0 {
                occurrences[i] += 1;
                if occurrences[i] > 1 {
                    coprime = false;
                }
            }
        }
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = acc.clone();
            poly_add(&mut next, &acc.iter().map(|c| -c).collect::<Vec<_>>(), d);
            acc = next;
        }
        return acc;
    }
    // Pivot on a power of the most frequent variable among mixed generators.
    let is_pure = |g: &Monomial| g.support().len() == 1;
    let mut best = (0usize, 0usize);
    for i in 0..n {
        let count = gens.iter().filter(|g| !is_pure(g) && g.exponents()[i] > 0).count();
        if count > best.1 {
            best = (i, count);
        }
    }
    let var = best.0;
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| !is_pure(g) && g.exponents()[var] > 0)
        .map(|g| g.exponents()[var])
        .collect();
    exps.sort_unstable();
    let a = exps[exps.len() / 2];
    let mut pivot = Monomial::one(n);
    for _ in 0..a {
        pivot = pivot.mul_var(var);
    }
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|v| v.div(&v.gcd(&pivot).expect("same ambient")).expect("gcd divides"))
        .collect();
    let mut k = k_polynomial_of(&with_pivot);
    poly_add(&mut k, &k_polynomial_of(&colon), a as usize);
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomials_of_degree;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn example_j() -> MonomialIdeal {
        MonomialIdeal::new(4, vec![m(&[2, 1, 0, 0]), m(&[1, 1, 1, 0]), m(&[0, 1, 1, 1]), m(&[0, 0, 1, 2])]).unwrap()
    }

    #[test]
    fn minimalizes_and_sorts() {
        let i = MonomialIdeal::new(2, vec![m(&[2, 1]), m(&[1, 0]), m(&[1, 0]), m(&[0, 3])]).unwrap();
        assert_eq!(i.gens(), &[m(&[1, 0]), m(&[0, 3])]);
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(Error::EmptyIdeal));
        assert!(MonomialIdeal::from_minimal(2, vec![m(&[1, 0]), m(&[2, 0])]).is_err());
    }

    #[test]
    fn product_with_variables_has_eight_generators() {
        let bc = MonomialIdeal::variables(4, &VariableSet::new(vec![1, 2], 4).unwrap()).unwrap();
        let prod = bc.product(&example_j()).unwrap();
        assert_eq!(prod.len(), 8);
        assert!(prod.gens().iter().all(|g| g.degree() == 4));
    }

    #[test]
    fn hilbert_function_matches_enumeration() {
        let j = example_j();
        for e in 0..8 {
            let count = monomials_of_degree(4, e).iter().filter(|w| !j.contains(w)).count() as u64;
            assert_eq!(j.hilbert_function(e), count, "degree {e}");
        }
        assert_eq!(j.hilbert_function(3), 16);
    }

    #[test]
    fn k_polynomial_of_complete_intersection() {
        let i = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[0, 1])]).unwrap();
        assert_eq!(i.k_polynomial(), vec![1, -1, -1, 1]);
    }

    #[test]
    fn text_round_trip_marks_unused_variables() {
        let i = MonomialIdeal::new(4, vec![m(&[1, 0, 0, 0]), m(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(i.to_text(), "ideal(a, c; vars=4)");
        assert_eq!(example_j().to_text(), "ideal(a^2*b, a*b*c, b*c*d, c*d^2)");
    }
}
