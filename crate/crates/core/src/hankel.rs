//! Chain ideals `J_k` generated by monomials `x_{i1}...x_{ik}` with index gaps
//! greater than one, their products, canonical decompositions into chains, and
//! the linear-quotient certificate for `J_{t1} ... J_{tp}`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{binomial, count_of_degree, monomials_of_degree, Monomial};
use crate::quotients::{check_order, regularity_from_certificate, OrderCheck, QuotientCertificate};

pub const OMEGA_GUARD: usize = 50_000;
pub const ENUMERATION_GUARD: usize = 10_000_000;

/// Chain sizes `t1 >= ... >= tp` in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainProductSpec {
    n: usize,
    t: Vec<u32>,
}

impl ChainProductSpec {
    /// Sizes are sorted into weakly decreasing order.
    pub fn new(n: usize, mut t: Vec<u32>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::Precondition("at least one chain size is required".into()));
        }
        let m = max_chain_size(n);
        if let Some(&bad) = t.iter().find(|&&k| k == 0 || k > m) {
            return Err(Error::Precondition(format!(
                "chain size {bad} outside 1..={m} for {n} variables"
            )));
        }
        t.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { n, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> &[u32] {
        &self.t
    }

    pub fn degree(&self) -> u32 {
        self.t.iter().sum()
    }

    /// Whether `m` passes the degree and gamma tests.
    pub fn admits(&self, m: &Monomial) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: m.n(),
            });
        }
        if m.degree() != self.degree() {
            return Ok(false);
        }
        let shape = canonical_decomposition(m)?.shape();
        Ok(dominates(&shape, &self.t))
    }
}

impl fmt::Display for ChainProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(|k| format!("J{k}")).collect();
        write!(f, "{} in {} variables", t.join("*"), self.n)
    }
}

/// `floor((n + 1) / 2)`.
pub fn max_chain_size(n: usize) -> u32 {
    n.div_ceil(2) as u32
}

/// Squarefree with consecutive support indices at least two apart.
pub fn is_chain(u: &Monomial) -> Result<bool> {
    if u.degree() == 0 {
        return Err(Error::Precondition("a chain has degree at least one".into()));
    }
    let e = u.exponents();
    Ok(e.iter().all(|&a| a <= 1) && e.windows(2).all(|w| w[0] + w[1] <= 1))
}

/// All chains of degree `k`, in decreasing lex order.
pub fn chain_generators(n: usize, k: u32) -> Result<Vec<Monomial>> {
    let m = max_chain_size(n);
    if k == 0 || k > m {
        return Err(Error::Precondition(format!(
            "chain size {k} outside 1..={m} for {n} variables"
        )));
    }
    let mut out = Vec::with_capacity(binomial(n + 1 - k as usize, k as usize));
    let mut current = vec![0u32; n];
    fn walk(current: &mut [u32], from: usize, left: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(current.to_vec()));
            return;
        }
        let n = current.len();
        let need = 2 * left as usize - 1;
        for i in from..n {
            if i + need > n {
                break;
            }
            current[i] = 1;
            walk(current, i + 2, left - 1, out);
            current[i] = 0;
        }
    }
    walk(&mut current, 0, k, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    chains: Vec<Monomial>,
}

impl CanonicalDecomposition {
    pub fn chains(&self) -> &[Monomial] {
        &self.chains
    }

    pub fn shape(&self) -> Vec<u32> {
        self.chains.iter().map(Monomial::degree).collect()
    }

    pub fn gamma(&self, t: u32) -> u32 {
        gamma(t, &self.shape())
    }

    pub fn product(&self) -> Monomial {
        let n = self.chains[0].n();
        self.chains.iter().fold(Monomial::one(n), |acc, c| acc.mul(c))
    }
}

impl fmt::Display for CanonicalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chains {
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

/// Repeatedly strips the lex-largest chain dividing what is left. That chain
/// takes the smallest index in the support, then the smallest admissible
/// index after it, and so on.
pub fn canonical_decomposition(u: &Monomial) -> Result<CanonicalDecomposition> {
    if u.degree() == 0 {
        return Err(Error::Precondition("cannot decompose the monomial 1".into()));
    }
    let n = u.n();
    let mut rest = u.exponents().to_vec();
    let mut chains = Vec::new();
    while rest.iter().any(|&a| a > 0) {
        let mut chain = vec![0u32; n];
        let mut i = 0;
        while i < n {
            if rest[i] > 0 {
                rest[i] -= 1;
                chain[i] = 1;
                i += 2;
            } else {
                i += 1;
            }
        }
        chains.push(Monomial::new(chain));
    }
    Ok(CanonicalDecomposition { chains })
}

/// `sum_i max(s_i - t + 1, 0)`.
pub fn gamma(t: u32, s: &[u32]) -> u32 {
    assert!(t >= 1, "gamma index starts at 1");
    s.iter().map(|&k| (k + 1).saturating_sub(t)).sum()
}

/// `gamma_i(s) >= gamma_i(t)` for every `i`.
pub fn dominates(s: &[u32], t: &[u32]) -> bool {
    let top = t.iter().copied().max().unwrap_or(0);
    (1..=top).all(|i| gamma(i, s) >= gamma(i, t))
}

/// Factorwise lex comparison of canonical decompositions.
pub fn sigma_compare(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    if u.n() != v.n() {
        return Err(Error::AmbientMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    if u.degree() == 0 {
        return Ok(Ordering::Equal);
    }
    Ok(compare_decompositions(
        &canonical_decomposition(u)?,
        &canonical_decomposition(v)?,
    ))
}

fn compare_decompositions(a: &CanonicalDecomposition, b: &CanonicalDecomposition) -> Ordering {
    for (x, y) in a.chains.iter().zip(&b.chains) {
        match x.compare_tau(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.chains.len().cmp(&b.chains.len())
}

/// The generating set of `J_{t1} ... J_{tp}` described by the gamma test,
/// sorted sigma-descending.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaSet {
    spec: ChainProductSpec,
    members: Vec<Monomial>,
}

impl OmegaSet {
    pub fn spec(&self) -> &ChainProductSpec {
        &self.spec
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerates the gamma set and checks it against the product of the chain
/// generators.
pub fn omega(spec: &ChainProductSpec) -> Result<OmegaSet> {
    let (n, d) = (spec.n, spec.degree());
    let space = count_of_degree(n, d);
    if space > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded {
            what: "monomials to enumerate",
            size: space,
            limit: ENUMERATION_GUARD,
        });
    }
    let mut members: Vec<(CanonicalDecomposition, Monomial)> = monomials_of_degree(n, d)
        .into_par_iter()
        .filter_map(|m| {
            let dec = canonical_decomposition(&m).expect("positive degree");
            dominates(&dec.shape(), &spec.t).then_some((dec, m))
        })
        .collect();
    if members.len() > OMEGA_GUARD {
        return Err(Error::GuardExceeded {
            what: "generators",
            size: members.len(),
            limit: OMEGA_GUARD,
        });
    }
    members.par_sort_by(|a, b| compare_decompositions(&b.0, &a.0));
    let members: Vec<Monomial> = members.into_iter().map(|(_, m)| m).collect();

    let product = chain_product(spec)?;
    let found: HashSet<&Monomial> = members.iter().collect();
    if found.len() != product.len() || !product.iter().all(|m| found.contains(m)) {
        return Err(Error::Invariant(format!(
            "gamma set ({} monomials) differs from the product generators ({})",
            found.len(),
            product.len()
        )));
    }
    Ok(OmegaSet {
        spec: spec.clone(),
        members,
    })
}

/// Generators of `J_{t1} ... J_{tp}` by direct multiplication.
pub fn chain_product(spec: &ChainProductSpec) -> Result<HashSet<Monomial>> {
    let mut acc: HashSet<Monomial> = HashSet::from([Monomial::one(spec.n)]);
    for &k in &spec.t {
        let chains = chain_generators(spec.n, k)?;
        acc = acc
            .iter()
            .flat_map(|m| chains.iter().map(move |c| m.mul(c)))
            .collect();
        if acc.len() > OMEGA_GUARD {
            return Err(Error::GuardExceeded {
                what: "generators",
                size: acc.len(),
                limit: OMEGA_GUARD,
            });
        }
    }
    Ok(acc)
}

/// For `m >_sigma n` in the gamma set, a member `v >_sigma n` with
/// `v / gcd(v, n)` a single variable dividing `m / gcd(m, n)`.
pub fn quotient_witness(spec: &ChainProductSpec, m: &Monomial, n: &Monomial) -> Result<Monomial> {
    for (name, x) in [("m", m), ("n", n)] {
        if !spec.admits(x)? {
            return Err(Error::Precondition(format!("{name} = {x} is not a generator")));
        }
    }
    let md = canonical_decomposition(m)?;
    let nd = canonical_decomposition(n)?;
    if compare_decompositions(&md, &nd) != Ordering::Greater {
        return Err(Error::Precondition(format!("{m} is not sigma-greater than {n}")));
    }
    let j = md
        .chains
        .iter()
        .zip(&nd.chains)
        .position(|(a, b)| a != b)
        .expect("distinct decompositions of equal degree");
    let a = md.chains[j].support();
    let b = nd.chains[j].support();
    let (a, b) = (a.as_slice(), b.as_slice());
    let z = a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()));
    if z >= a.len() || (z < b.len() && a[z] > b[z]) {
        return Err(Error::Invariant(format!("factor {} of {m} is not lex-greater", j + 1)));
    }
    let x = a[z];
    let candidates: Vec<(Monomial, Option<Vec<u32>>)> = if z < b.len() {
        vec![(replace(n, b[z], x), None)]
    } else {
        let next = nd.chains.get(j + 1).ok_or_else(|| {
            Error::Invariant(format!("{n} has no factor after position {}", j + 1))
        })?;
        next.support()
            .iter()
            .map(|&q| {
                let mut shape = nd.shape();
                shape[j] += 1;
                shape[j + 1] -= 1;
                (replace(n, q, x), Some(shape))
            })
            .collect()
    };
    let expected = Monomial::var(n.n(), x);
    let m_rest = m.div(&m.gcd(n)?).expect("gcd divides");
    let mut last = String::new();
    for (v, moved) in candidates {
        if let Some(shape) = moved {
            if !dominates(&shape, &nd.shape()) {
                return Err(Error::Invariant(format!(
                    "moving a variable between factors of {n} lowered a gamma value"
                )));
            }
        }
        let v_rest = v.div(&v.gcd(n)?).expect("gcd divides");
        if !spec.admits(&v)? {
            last = format!("{v} is not a generator");
        } else if sigma_compare(&v, n)? != Ordering::Greater {
            last = format!("{v} is not sigma-greater than {n}");
        } else if v_rest != expected || !expected.divides(&m_rest) {
            last = format!("{v} / gcd({v}, {n}) = {v_rest} does not divide {m_rest}");
        } else {
            return Ok(v);
        }
    }
    Err(Error::Invariant(format!("no quotient witness for ({m}, {n}): {last}")))
}

fn replace(n: &Monomial, out: usize, inn: usize) -> Monomial {
    n.div_var(out).expect("variable divides").mul_var(inn)
}

/// Certificate for the sigma-descending order of the gamma set; every colon
/// is assembled from quotient witnesses and compared with the direct colon
/// computation.
pub fn certify_product(spec: &ChainProductSpec) -> Result<QuotientCertificate> {
    let omega = omega(spec)?;
    let members = &omega.members;
    let witnessed: Vec<Vec<usize>> = (0..members.len())
        .into_par_iter()
        .map(|k| {
            let mut vars = BTreeSet::new();
            for m in &members[..k] {
                let v = quotient_witness(spec, m, &members[k])?;
                let rest = v.div(&v.gcd(&members[k])?).expect("gcd divides");
                vars.insert(rest.support().as_slice()[0]);
            }
            Ok(vars.into_iter().collect())
        })
        .collect::<Result<_>>()?;
    let certificate = match check_order(members)? {
        OrderCheck::Certificate(c) => c,
        OrderCheck::Failure(f) => {
            return Err(Error::Invariant(format!(
                "sigma order fails at step {} ({}): colon contains {}",
                f.step, f.generator, f.offending
            )))
        }
    };
    if certificate.colons() != witnessed.as_slice() {
        return Err(Error::Invariant(
            "witnessed colons differ from the computed colons".into(),
        ));
    }
    let reg = regularity_from_certificate(&certificate);
    if reg != spec.degree() {
        return Err(Error::Invariant(format!(
            "certificate regularity {reg} differs from {}",
            spec.degree()
        )));
    }
    Ok(certificate)
}
