//! Brute-force oracles shared by the integration tests. They work on raw
//! exponent vectors and share no code with the library beyond construction.

#![allow(dead_code)]

use std::collections::HashSet;

use prodreg::{Monomial, MonomialIdeal};
use rand::Rng;

pub type Exps = Vec<u32>;

/// All exponent vectors of degree `e` in `n` variables.
pub fn monomials(n: usize, e: u32) -> Vec<Exps> {
    fn go(n: usize, e: u32, prefix: &mut Exps, out: &mut Vec<Exps>) {
        if prefix.len() + 1 == n {
            prefix.push(e);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=e).rev() {
            prefix.push(a);
            go(n, e - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if e == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, e, &mut Vec::new(), &mut out);
    out
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

pub fn exps(ideal: &MonomialIdeal) -> Vec<Exps> {
    ideal.gens().iter().map(|g| g.exponents().to_vec()).collect()
}

pub fn in_ideal(m: &[u32], gens: &[Exps]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// `dim (R/I)_e`.
pub fn hilbert(n: usize, gens: &[Exps], e: u32) -> usize {
    monomials(n, e).iter().filter(|m| !in_ideal(m, gens)).count()
}

pub fn in_colon(m: &[u32], gens: &[Exps], u: &[u32]) -> bool {
    in_ideal(&mul(m, u), gens)
}

/// `m ∈ I : m^∞` iff `m x_i^N ∈ I` for every `i`, with `N` the largest
/// generator exponent.
pub fn in_saturation(m: &[u32], gens: &[Exps]) -> bool {
    let big = gens.iter().flatten().copied().max().unwrap_or(0);
    (0..m.len()).all(|i| {
        let mut v = m.to_vec();
        v[i] += big;
        in_ideal(&v, gens)
    })
}

/// `dim (I^sat / I)_e`.
pub fn saturation_gap(n: usize, gens: &[Exps], e: u32) -> usize {
    monomials(n, e)
        .iter()
        .filter(|m| !in_ideal(m, gens) && in_saturation(m, gens))
        .count()
}

/// Minimal elements of a set of exponent vectors.
pub fn minimal(set: &[Exps]) -> HashSet<Exps> {
    set.iter()
        .filter(|a| !set.iter().any(|b| b != *a && divides(b, a)))
        .cloned()
        .collect()
}

pub fn random_ideal<R: Rng>(rng: &mut R, n: usize, max_degree: u32, max_gens: usize) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::new(n, gens).expect("nonempty")
}

/// Whether the order `gens` has linear quotients: every `g_i / gcd(g_i, g_k)`,
/// `i < k`, is divisible by some variable `g_l / gcd(g_l, g_k)`, `l < k`.
pub fn order_has_linear_quotients(gens: &[Exps]) -> bool {
    (1..gens.len()).all(|k| {
        let quotients: Vec<Exps> = gens[..k]
            .iter()
            .map(|g| g.iter().zip(&gens[k]).map(|(a, b)| a.saturating_sub(*b)).collect())
            .collect();
        let linear: Vec<&Exps> = quotients.iter().filter(|q| degree(q) == 1).collect();
        quotients.iter().all(|q| linear.iter().any(|l| divides(l, q)))
    })
}

/// Heap's algorithm: whether some permutation has linear quotients.
pub fn some_order_has_linear_quotients(gens: &[Exps]) -> bool {
    let mut a = gens.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    if order_has_linear_quotients(&a) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if order_has_linear_quotients(&a) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Squarefree monomials whose support indices pairwise differ by at least 2.
pub fn is_chain(e: &[u32]) -> bool {
    let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
    !support.is_empty()
        && e.iter().all(|&x| x <= 1)
        && support.windows(2).all(|w| w[1] - w[0] >= 2)
}

/// Every chain dividing `e`.
pub fn dividing_chains(e: &[u32]) -> Vec<Exps> {
    let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << support.len()) {
        let mut c = vec![0u32; e.len()];
        for (k, &i) in support.iter().enumerate() {
            if mask >> k & 1 == 1 {
                c[i] = 1;
            }
        }
        if is_chain(&c) {
            out.push(c);
        }
    }
    out
}

/// Repeatedly splits off the lexicographically largest dividing chain.
pub fn greedy_lex_decomposition(e: &[u32]) -> Vec<Exps> {
    let mut rest = e.to_vec();
    let mut out = Vec::new();
    while degree(&rest) > 0 {
        let best = dividing_chains(&rest).into_iter().max().expect("a variable is a chain");
        for (r, b) in rest.iter_mut().zip(&best) {
            *r -= b;
        }
        out.push(best);
    }
    out
}

/// Every way of writing `e` as a product of chains, as multisets of factors.
pub fn all_decompositions(e: &[u32]) -> Vec<Vec<Exps>> {
    fn go(rest: &Exps, bound: Option<&Exps>, acc: &mut Vec<Exps>, out: &mut Vec<Vec<Exps>>) {
        if degree(rest) == 0 {
            out.push(acc.clone());
            return;
        }
        for c in dividing_chains(rest) {
            if bound.is_some_and(|b| c > *b) {
                continue;
            }
            let next: Exps = rest.iter().zip(&c).map(|(r, x)| r - x).collect();
            acc.push(c.clone());
            go(&next, Some(&c), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&e.to_vec(), None, &mut Vec::new(), &mut out);
    out
}

/// `γ_t(s) = Σ max(s_i - t + 1, 0)`.
pub fn gamma(t: u32, shape: &[u32]) -> u32 {
    shape.iter().map(|&s| (s + 1).saturating_sub(t)).sum()
}
