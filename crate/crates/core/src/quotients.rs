//! Linear quotients of monomial ideals: colons, order checks, order search.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{canonical_order, check_minimal, minimalize};
use crate::monomial::{variable_name, Monomial};

/// Default limit on the number of generators for [`search_order`].
pub const DEFAULT_SEARCH_GUARD: usize = 24;

/// Minimal generators of `(G) : u`, i.e. of `{ v / gcd(v, u) : v ∈ G }`.
/// An empty `G` gives the zero ideal (an empty list).
pub fn monomial_colon(gens: &[Monomial], u: &Monomial) -> Result<Vec<Monomial>> {
    let mut quotients = Vec::with_capacity(gens.len());
    for v in gens {
        let g = v.gcd(u)?;
        quotients.push(v.div(&g).expect("gcd divides"));
    }
    let mut out = minimalize(&quotients);
    out.sort_by(canonical_order);
    Ok(out)
}

/// An order `m_1..m_k` of `G(I)` together with the variables generating each
/// colon `(m_1..m_{t-1}) : m_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    n: usize,
    order: Vec<Monomial>,
    colons: Vec<Vec<usize>>,
}

/// A step whose colon has a generator of degree at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderFailure {
    /// 0-based position in the order.
    pub step: usize,
    pub generator: String,
    pub colon: Vec<String>,
    pub offending: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderCheck {
    Certificate(QuotientCertificate),
    Failure(OrderFailure),
}

fn check_generators(gens: &[Monomial]) -> Result<usize> {
    let first = gens.first().ok_or(Error::EmptyIdeal)?;
    for g in gens {
        if g.n() != first.n() {
            return Err(Error::AmbientMismatch {
                left: first.n(),
                right: g.n(),
            });
        }
    }
    check_minimal(gens)?;
    Ok(first.n())
}

/// Variables generating the colon, or the first generator of degree >= 2.
fn linear_colon(prefix: &[Monomial], m: &Monomial) -> Result<std::result::Result<Vec<usize>, Vec<Monomial>>> {
    let colon = monomial_colon(prefix, m)?;
    if colon.iter().all(|g| g.degree() == 1) {
        let mut vars: Vec<usize> = colon.iter().map(|g| g.support().as_slice()[0]).collect();
        vars.sort_unstable();
        Ok(Ok(vars))
    } else {
        Ok(Err(colon))
    }
}

/// Checks the given order step by step.
pub fn check_order(gens: &[Monomial]) -> Result<OrderCheck> {
    let n = check_generators(gens)?;
    let mut colons = Vec::with_capacity(gens.len());
    for (t, m) in gens.iter().enumerate() {
        match linear_colon(&gens[..t], m)? {
            Ok(vars) => colons.push(vars),
            Err(colon) => {
                let offending = colon.iter().find(|g| g.degree() >= 2).expect("non-linear colon");
                return Ok(OrderCheck::Failure(OrderFailure {
                    step: t,
                    generator: m.to_string(),
                    colon: colon.iter().map(ToString::to_string).collect(),
                    offending: offending.to_string(),
                }));
            }
        }
    }
    Ok(OrderCheck::Certificate(QuotientCertificate {
        n,
        order: gens.to_vec(),
        colons,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(QuotientCertificate),
    /// The search was exhaustive.
    NoOrder,
}

/// [`search_order_with_guard`] with [`DEFAULT_SEARCH_GUARD`].
pub fn search_order(gens: &[Monomial]) -> Result<SearchOutcome> {
    search_order_with_guard(gens, DEFAULT_SEARCH_GUARD)
}

/// Depth-first search over orders of `G`, candidates in canonical
/// (degree, then reverse-lex descending) order. Whether a generator may
/// follow a prefix depends only on the prefix as a set, so failed sets are
/// remembered.
pub fn search_order_with_guard(gens: &[Monomial], guard: usize) -> Result<SearchOutcome> {
    check_generators(gens)?;
    if gens.len() > guard.min(26) {
        return Err(Error::GuardExceeded {
            what: "generators for order search",
            size: gens.len(),
            limit: guard.min(26),
        });
    }
    let mut sorted = gens.to_vec();
    sorted.sort_by(canonical_order);
    if let OrderCheck::Certificate(c) = check_order(&sorted)? {
        return Ok(SearchOutcome::Found(c));
    }
    let k = sorted.len();
    let mut dead = vec![0u64; (1usize << k).div_ceil(64)];
    let mut path = Vec::with_capacity(k);
    if extend(&sorted, 0, &mut path, &mut dead)? {
        let order: Vec<Monomial> = path.iter().map(|&i| sorted[i].clone()).collect();
        match check_order(&order)? {
            OrderCheck::Certificate(c) => Ok(SearchOutcome::Found(c)),
            OrderCheck::Failure(f) => Err(Error::Invariant(format!("search produced a failing order at step {}", f.step))),
        }
    } else {
        Ok(SearchOutcome::NoOrder)
    }
}

fn extend(gens: &[Monomial], mask: usize, path: &mut Vec<usize>, dead: &mut [u64]) -> Result<bool> {
    if path.len() == gens.len() {
        return Ok(true);
    }
    if dead[mask / 64] >> (mask % 64) & 1 == 1 {
        return Ok(false);
    }
    let prefix: Vec<Monomial> = path.iter().map(|&i| gens[i].clone()).collect();
    for next in 0..gens.len() {
        if mask >> next & 1 == 1 {
            continue;
        }
        if linear_colon(&prefix, &gens[next])?.is_err() {
            continue;
        }
        path.push(next);
        if extend(gens, mask | 1 << next, path, dead)? {
            return Ok(true);
        }
        path.pop();
    }
    dead[mask / 64] |= 1 << (mask % 64);
    Ok(false)
}

/// `reg` of the ideal: the largest generator degree.
pub fn regularity_from_certificate(c: &QuotientCertificate) -> u32 {
    c.order.iter().map(Monomial::degree).max().unwrap_or(0)
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    generator: String,
    exponents: Vec<u32>,
    colon: Vec<usize>,
    colon_text: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    n: usize,
    steps: Vec<StepRepr>,
}

impl QuotientCertificate {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[Monomial] {
        &self.order
    }

    /// 0-based variable indices generating each colon.
    pub fn colons(&self) -> &[Vec<usize>] {
        &self.colons
    }

    /// Colon ideals as text: `(0)`, `(a)`, `(a, c)`.
    pub fn colon_texts(&self) -> Vec<String> {
        self.colons.iter().map(|vars| self.colon_text(vars)).collect()
    }

    fn colon_text(&self, vars: &[usize]) -> String {
        if vars.is_empty() {
            "(0)".to_string()
        } else {
            let names: Vec<String> = vars.iter().map(|&v| variable_name(v, self.n)).collect();
            format!("({})", names.join(", "))
        }
    }

    /// Re-derives every colon from the order.
    pub fn verify(&self) -> Result<()> {
        match check_order(&self.order)? {
            OrderCheck::Certificate(c) if c.colons == self.colons && c.n == self.n => Ok(()),
            OrderCheck::Certificate(_) => Err(Error::InvalidCertificate("recorded colons differ from the computed ones".into())),
            OrderCheck::Failure(f) => Err(Error::InvalidCertificate(format!(
                "step {} has colon generator {} of degree >= 2",
                f.step + 1,
                f.offending
            ))),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("linear quotients ({} generators)\n", self.order.len());
        let width = self.order.iter().map(|m| m.to_string().len()).max().unwrap_or(0);
        for (t, (m, vars)) in self.order.iter().zip(&self.colons).enumerate() {
            let _ = writeln!(out, "  {:>2}. {:<width$}  : {}", t + 1, m.to_string(), self.colon_text(vars));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).expect("certificate serializes")
    }

    fn repr(&self) -> CertificateRepr {
        CertificateRepr {
            n: self.n,
            steps: self
                .order
                .iter()
                .zip(&self.colons)
                .map(|(m, vars)| StepRepr {
                    generator: m.to_string(),
                    exponents: m.exponents().to_vec(),
                    colon: vars.clone(),
                    colon_text: self.colon_text(vars),
                })
                .collect(),
        }
    }

    /// Parses the structured form and re-verifies it.
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: CertificateRepr =
            serde_json::from_str(text).map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        let mut order = Vec::with_capacity(repr.steps.len());
        let mut colons = Vec::with_capacity(repr.steps.len());
        for s in repr.steps {
            if s.exponents.len() != repr.n {
                return Err(Error::InvalidCertificate(format!(
                    "generator {} has {} exponents, expected {}",
                    s.generator,
                    s.exponents.len(),
                    repr.n
                )));
            }
            order.push(Monomial::new(s.exponents));
            colons.push(s.colon);
        }
        let cert = Self {
            n: repr.n,
            order,
            colons,
        };
        cert.verify()?;
        Ok(cert)
    }
}

impl Serialize for QuotientCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.repr().serialize(s)
    }
}

impl fmt::Display for QuotientCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
