//! Polymatroidal and matroidal monomial ideals: the exchange check, products,
//! squarefree products, transversal ideals and revlex quotient certificates.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{monomials_of_degree, variable_name, Monomial, VariableSet};
use crate::quotients::{check_order, OrderCheck, QuotientCertificate};

/// A generator pair and index at which the exchange property was tested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    pub u: Monomial,
    pub v: Monomial,
    /// 0-based variable with `nu_i(u) > nu_i(v)`.
    pub i: usize,
    /// The exchanging variable, or `None` when no exchange exists.
    pub j: Option<usize>,
}

impl ExchangeWitness {
    /// Re-checks the arithmetic claims against `G(ideal)`.
    pub fn verify(&self, ideal: &MonomialIdeal) -> bool {
        let gens: HashSet<&Monomial> = ideal.gens().iter().collect();
        if !gens.contains(&self.u) || !gens.contains(&self.v) {
            return false;
        }
        let (u, v) = (self.u.exponents(), self.v.exponents());
        if self.i >= u.len() || u[self.i] <= v[self.i] {
            return false;
        }
        let base = self.u.div_var(self.i).expect("nu_i(u) > 0");
        let exchanges = |j: usize| v[j] > u[j] && gens.contains(&base.mul_var(j));
        match self.j {
            Some(j) => j < u.len() && exchanges(j),
            None => (0..u.len()).all(|j| !exchanges(j)),
        }
    }

    pub fn describe(&self) -> String {
        let n = self.u.n();
        match self.j {
            Some(j) => format!(
                "u = {}, v = {}, i = {}: exchange via {}",
                self.u,
                self.v,
                variable_name(self.i, n),
                variable_name(j, n)
            ),
            None => format!(
                "u = {}, v = {}, i = {}: no exchange exists",
                self.u,
                self.v,
                variable_name(self.i, n)
            ),
        }
    }
}

impl fmt::Display for ExchangeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PolymatroidCheck {
    Polymatroidal,
    NotEquigenerated,
    Failure { witness: ExchangeWitness },
}

impl PolymatroidCheck {
    pub fn holds(&self) -> bool {
        matches!(self, PolymatroidCheck::Polymatroidal)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            PolymatroidCheck::Polymatroidal => None,
            PolymatroidCheck::NotEquigenerated => Some("not equigenerated".into()),
            PolymatroidCheck::Failure { witness } => Some(witness.describe()),
        }
    }
}

/// Exhaustive exchange check over all `(u, v, i)`, with `u` and `v` in
/// revlex-descending order. The first failing triple is returned.
pub fn is_polymatroidal(ideal: &MonomialIdeal) -> Result<PolymatroidCheck> {
    if !ideal.is_equigenerated() {
        return Ok(PolymatroidCheck::NotEquigenerated);
    }
    let gens = ideal.gens();
    let index: HashSet<&Monomial> = gens.iter().collect();
    let n = ideal.n();
    let found = gens
        .par_iter()
        .map(|u| {
            for v in gens {
                if let Some(w) = first_failure(u, v, n, &index)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        })
        .find_map_first(|r: Result<Option<ExchangeWitness>>| r.transpose());
    match found {
        Some(Err(e)) => Err(e),
        Some(Ok(witness)) => Ok(PolymatroidCheck::Failure { witness }),
        None => Ok(PolymatroidCheck::Polymatroidal),
    }
}

fn first_failure(
    u: &Monomial,
    v: &Monomial,
    n: usize,
    index: &HashSet<&Monomial>,
) -> Result<Option<ExchangeWitness>> {
    let (ue, ve) = (u.exponents(), v.exponents());
    let dist = u.distance(v)?;
    for i in (0..n).filter(|&i| ue[i] > ve[i]) {
        let base = u.div_var(i).expect("nu_i(u) > 0");
        let hit = (0..n)
            .filter(|&j| ve[j] > ue[j])
            .map(|j| base.mul_var(j))
            .find(|w| index.contains(w));
        match hit {
            Some(w) => {
                if w.distance(v)? >= dist {
                    return Err(Error::Invariant(format!(
                        "exchange {w} does not move {u} closer to {v}"
                    )));
                }
            }
            None => {
                return Ok(Some(ExchangeWitness {
                    u: u.clone(),
                    v: v.clone(),
                    i,
                    j: None,
                }))
            }
        }
    }
    Ok(None)
}

fn require_polymatroidal(ideal: &MonomialIdeal) -> Result<()> {
    match is_polymatroidal(ideal)?.reason() {
        None => Ok(()),
        Some(reason) => Err(Error::NotPolymatroidal(reason)),
    }
}

pub fn is_matroidal(ideal: &MonomialIdeal) -> Result<PolymatroidCheck> {
    if !ideal.is_squarefree() {
        return Err(Error::NotMatroidal("not squarefree".into()));
    }
    is_polymatroidal(ideal)
}

fn require_matroidal(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_squarefree() {
        return Err(Error::NotMatroidal("not squarefree".into()));
    }
    match is_polymatroidal(ideal)?.reason() {
        None => Ok(()),
        Some(reason) => Err(Error::NotMatroidal(reason)),
    }
}

/// `G(IJ)` for polymatroidal `I`, `J`; the product is re-checked.
pub fn polymatroidal_product(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    require_polymatroidal(i)?;
    require_polymatroidal(j)?;
    let product = i.product(j)?;
    if let Some(reason) = is_polymatroidal(&product)?.reason() {
        return Err(Error::Invariant(format!(
            "product of polymatroidal ideals is not polymatroidal: {reason}"
        )));
    }
    Ok(product)
}

/// Linear-quotient certificate for the revlex-descending order of `G(I)`.
pub fn revlex_certificate(ideal: &MonomialIdeal) -> Result<QuotientCertificate> {
    require_polymatroidal(ideal)?;
    let mut order = ideal.gens().to_vec();
    order.sort_by(|a, b| b.compare_revlex(a).expect("same degree"));
    match check_order(&order)? {
        OrderCheck::Certificate(c) => Ok(c),
        OrderCheck::Failure(f) => Err(Error::Invariant(format!(
            "revlex order of a polymatroidal ideal fails at step {}: {}",
            f.step, f.offending
        ))),
    }
}

/// `I * J`: the minimal squarefree products `uv`.
pub fn squarefree_product(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    require_matroidal(i)?;
    require_matroidal(j)?;
    squarefree_product_unchecked(i, j)
}

fn squarefree_product_unchecked(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    if i.n() != j.n() {
        return Err(Error::AmbientMismatch {
            left: i.n(),
            right: j.n(),
        });
    }
    let prods: Vec<Monomial> = i
        .gens()
        .iter()
        .flat_map(|u| j.gens().iter().map(move |v| u.mul(v)))
        .filter(Monomial::is_squarefree)
        .collect();
    if prods.is_empty() {
        return Err(Error::EmptySquarefreeProduct);
    }
    let product = MonomialIdeal::new(i.n(), prods)?;
    if let Some(reason) = is_polymatroidal(&product)?.reason() {
        return Err(Error::Invariant(format!(
            "squarefree product of matroidal ideals is not matroidal: {reason}"
        )));
    }
    Ok(product)
}

/// Iterated squarefree product of the ideals generated by each subset.
pub fn transversal_ideal(n: usize, subsets: &[VariableSet]) -> Result<MonomialIdeal> {
    let (first, rest) = subsets.split_first().ok_or(Error::EmptySubset)?;
    let mut acc = MonomialIdeal::variables(n, first)?;
    for s in rest {
        let next = MonomialIdeal::variables(n, s)?;
        acc = match squarefree_product_unchecked(&acc, &next) {
            Err(Error::EmptySquarefreeProduct) => return Err(Error::NoTransversal),
            other => other?,
        };
    }
    Ok(acc)
}

/// Closed classes of polymatroidal ideals used to drive property tests.
pub mod random {
    use super::*;

    fn subset<R: Rng>(rng: &mut R, n: usize) -> VariableSet {
        loop {
            let picked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if !picked.is_empty() {
                return VariableSet::new(picked, n).expect("in range");
            }
        }
    }

    pub fn variable_subset<R: Rng>(rng: &mut R, n: usize) -> MonomialIdeal {
        MonomialIdeal::variables(n, &subset(rng, n)).expect("nonempty")
    }

    pub fn veronese(n: usize, d: u32) -> MonomialIdeal {
        MonomialIdeal::new(n, monomials_of_degree(n, d)).expect("nonempty")
    }

    /// Bases of the uniform matroid `U(r, n)`: all squarefree monomials of degree `r`.
    pub fn uniform_matroid(n: usize, r: u32) -> MonomialIdeal {
        let gens: Vec<Monomial> = monomials_of_degree(n, r)
            .into_iter()
            .filter(Monomial::is_squarefree)
            .collect();
        MonomialIdeal::new(n, gens).expect("r <= n")
    }

    /// Basis ideal of the cycle matroid of a random graph whose edges are
    /// the variables (`n <= 6`).
    pub fn graphic_matroid<R: Rng>(rng: &mut R, n: usize) -> MonomialIdeal {
        let vertices = rng.gen_range(2..=4usize);
        let edges: Vec<(usize, usize)> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0..vertices);
                let b = (a + rng.gen_range(1..vertices)) % vertices;
                (a, b)
            })
            .collect();
        let acyclic = |mask: u32| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn root(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            for (k, &(a, b)) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    if ra == rb {
                        return false;
                    }
                    parent[ra] = rb;
                }
            }
            true
        };
        let forests: Vec<u32> = (0..1u32 << n).filter(|&m| acyclic(m)).collect();
        let rank = forests.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        let gens = forests
            .into_iter()
            .filter(|m| m.count_ones() == rank)
            .map(|m| {
                Monomial::new((0..n).map(|k| m >> k & 1).collect())
            })
            .collect();
        MonomialIdeal::new(n, gens).expect("at least one basis")
    }

    pub fn transversal<R: Rng>(rng: &mut R, n: usize, max_sets: usize) -> MonomialIdeal {
        loop {
            let count = rng.gen_range(1..=max_sets.min(n));
            let sets: Vec<VariableSet> = (0..count).map(|_| subset(rng, n)).collect();
            if let Ok(ideal) = transversal_ideal(n, &sets) {
                return ideal;
            }
        }
    }

    pub fn matroidal<R: Rng>(rng: &mut R, n: usize) -> MonomialIdeal {
        match rng.gen_range(0..4) {
            0 => variable_subset(rng, n),
            1 => uniform_matroid(n, rng.gen_range(1..=n.min(3) as u32)),
            2 => graphic_matroid(rng, n),
            _ => transversal(rng, n, 3),
        }
    }

    /// A polymatroidal ideal of degree at most `max_degree`.
    pub fn polymatroidal<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> MonomialIdeal {
        let d = rng.gen_range(1..=max_degree);
        let class = rng.gen_range(0..if max_degree >= 2 { 5 } else { 4 });
        match class {
            0 => {
                let mut acc = variable_subset(rng, n);
                for _ in 1..d {
                    acc = acc.product(&variable_subset(rng, n)).expect("same ambient");
                }
                acc
            }
            1 => veronese(n, d),
            2 => uniform_matroid(n, d.min(n as u32)),
            3 => {
                let mut gens = matroidal(rng, n);
                while gens.min_degree() > max_degree {
                    gens = matroidal(rng, n);
                }
                gens
            }
            _ => {
                let inner = polymatroidal(rng, n, max_degree - 1);
                let spare = max_degree - inner.min_degree();
                let mut exps = vec![0u32; n];
                for _ in 0..rng.gen_range(1..=spare) {
                    exps[*(0..n).collect::<Vec<_>>().choose(rng).expect("n > 0")] += 1;
                }
                MonomialIdeal::principal(Monomial::new(exps))
                    .product(&inner)
                    .expect("same ambient")
            }
        }
    }
}
