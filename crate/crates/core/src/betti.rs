//! Graded Betti numbers from Koszul homology, and regularity.
//!
//! Two evaluation routes share the table type:
//!
//! * monomial ideals use the fine (multigraded) Koszul complex of `R/I`,
//!   whose piece in multidegree `α` is spanned by the `e_S` with
//!   `x^(α - 1_S) ∉ I`;
//! * other ideals use the Koszul complex of `I` itself, with
//!   `β_{i,j}(I) = C(n,i) dim I_{j-i} - rank d_{i,j} - rank d_{i+1,j}` and
//!   `β_{i+1,j}(R/I) = β_{i,j}(I)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{degree_basis, GradedIdeal};
use crate::ideal::MonomialIdeal;
use crate::linalg::{echelon_of, Echelon, SparseRow};
use crate::monomial::{binomial, Monomial};

/// Betti numbers `β_{i,j}(R/I)` for `j <= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    cap: u32,
    certified: bool,
    characteristic: u64,
    entries: BTreeMap<(usize, u32), usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: u32,
    pub value: usize,
}

impl BettiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// `β_{i,j}(R/I)`.
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `β_{i,j}(I) = β_{i+1,j}(R/I)`.
    pub fn get_ideal(&self, i: usize, j: u32) -> usize {
        self.get(i + 1, j)
    }

    /// Nonzero entries for `R/I`, ordered by `(i, j)`.
    pub fn entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(&(i, j), &value)| BettiEntry { i, j, value })
            .collect()
    }

    /// Nonzero entries for `I`, ordered by `(i, j)`.
    pub fn ideal_entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .filter(|((i, _), _)| *i >= 1)
            .map(|(&(i, j), &value)| BettiEntry { i: i - 1, j, value })
            .collect()
    }

    /// `reg(I) = reg(R/I) + 1`, read off the table.
    pub fn regularity(&self) -> Result<RegularityResult> {
        let (&(i, j), _) = self
            .entries
            .iter()
            .filter(|((i, _), _)| *i >= 1)
            .max_by(|((i1, j1), _), ((i2, j2), _)| {
                (*j1 as i64 - *i1 as i64)
                    .cmp(&(*j2 as i64 - *i2 as i64))
                    .then(i2.cmp(i1))
            })
            .ok_or_else(|| Error::Precondition("the zero ideal has no regularity".into()))?;
        Ok(RegularityResult {
            value: j as i64 - i as i64 + 1,
            certified: self.certified,
            cap: self.cap,
            witness: (i - 1, j),
        })
    }

    /// Plain-text table for `R/I`: columns are homological degrees `i`,
    /// rows are `j - i`.
    pub fn render(&self) -> String {
        let max_i = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let mut totals = vec![0usize; max_i + 1];
        for (&(i, _), &v) in &self.entries {
            totals[i] += v;
        }
        let width = self
            .entries
            .values()
            .chain(totals.iter())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(max_i.to_string().len());
        let label = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .max()
            .unwrap_or(2)
            .max("total:".len());
        let mut out = String::new();
        let _ = write!(out, "{:>label$}", "");
        for i in 0..=max_i {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = write!(out, "{:>label$}", "total:");
        for t in &totals {
            let _ = write!(out, " {t:>width$}");
        }
        out.push('\n');
        for r in rows {
            let _ = write!(out, "{:>label$}", format!("{r}:"));
            for i in 0..=max_i {
                let j = r + i as i64;
                let v = if j >= 0 { self.get(i, j as u32) } else { 0 };
                if v == 0 {
                    let _ = write!(out, " {:>width$}", ".");
                } else {
                    let _ = write!(out, " {v:>width$}");
                }
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            n: usize,
            cap: u32,
            certified: bool,
            characteristic: u64,
            quotient: Vec<BettiEntry>,
            ideal: Vec<BettiEntry>,
        }
        View {
            n: self.n,
            cap: self.cap,
            certified: self.certified,
            characteristic: self.characteristic,
            quotient: self.entries(),
            ideal: self.ideal_entries(),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityResult {
    /// `reg(I)`.
    pub value: i64,
    pub certified: bool,
    pub cap: u32,
    /// Ideal-level `(i, j)` with `β_{i,j}(I) != 0` and `j - i = reg(I)`.
    pub witness: (usize, u32),
}

/// Degree of the lcm of `G(I)`; no Betti number of `R/I` lives above it.
pub fn taylor_degree_cap(ideal: &MonomialIdeal) -> u32 {
    ideal.lcm().degree()
}

/// Largest generator degree plus the number of variables.
pub fn default_cap<F: Field>(ideal: &GradedIdeal<F>) -> u32 {
    ideal.max_gen_degree() + ideal.n() as u32
}

fn check_ideal<F: Field>(ideal: &GradedIdeal<F>, cap: u32) -> Result<()> {
    if ideal.gens().iter().any(|g| g.degree() == 0) {
        return Err(Error::UnitIdeal);
    }
    if cap < ideal.max_gen_degree() {
        return Err(Error::Precondition(format!(
            "cap {cap} is below the largest generator degree {}",
            ideal.max_gen_degree()
        )));
    }
    Ok(())
}

/// All `β_{i,j}(R/I)` with `j <= cap`.
pub fn betti_table<F: Field>(ideal: &GradedIdeal<F>, cap: u32) -> Result<BettiTable> {
    check_ideal(ideal, cap)?;
    let field = ideal.field();
    let (entries, certified) = match ideal.as_monomial() {
        Some(mi) => (monomial_entries(field, mi, cap)?, cap >= taylor_degree_cap(mi)),
        None => (general_entries(ideal, cap)?, false),
    };
    let table = BettiTable {
        n: ideal.n(),
        cap,
        certified,
        characteristic: field.characteristic(),
        entries,
    };
    euler_check(ideal, &table)?;
    Ok(table)
}

pub fn regularity<F: Field>(ideal: &GradedIdeal<F>, cap: u32) -> Result<RegularityResult> {
    betti_table(ideal, cap)?.regularity()
}

/// A single strand `β_{i,j}(R/I)`.
pub fn koszul_strand_betti<F: Field>(ideal: &GradedIdeal<F>, i: usize, j: u32) -> Result<usize> {
    let n = ideal.n();
    if i > n {
        return Err(Error::Precondition(format!("homological index {i} exceeds {n}")));
    }
    if ideal.gens().iter().any(|g| g.degree() == 0) {
        return Err(Error::UnitIdeal);
    }
    if i == 0 {
        return Ok(usize::from(j == 0));
    }
    if ideal.is_zero() {
        return Ok(0);
    }
    if let Some(mi) = ideal.as_monomial() {
        let leaves = monomial_leaves(mi, j);
        let mut total = 0;
        for alpha in leaves.iter().filter(|a| a.iter().sum::<u32>() == j) {
            total += multidegree_betti(ideal.field(), mi, alpha)?
                .get(i)
                .copied()
                .unwrap_or(0);
        }
        return Ok(total);
    }
    let k = i - 1;
    let low = if j >= k as u32 { koszul_rank(ideal, k, j)? } else { 0 };
    let high = if j > k as u32 { koszul_rank(ideal, k + 1, j)? } else { 0 };
    let dim = if j >= k as u32 {
        binomial(n, k) * ideal.degree_piece(j - k as u32).dim()
    } else {
        0
    };
    Ok(dim - low - high)
}

fn euler_check<F: Field>(ideal: &GradedIdeal<F>, table: &BettiTable) -> Result<()> {
    let n = ideal.n();
    let expected: Vec<i64> = match ideal.as_monomial() {
        Some(mi) => mi.k_polynomial(),
        None => (0..=table.cap)
            .map(|j| {
                (0..=n.min(j as usize))
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        sign * (binomial(n, i) * ideal.hilbert_value(j - i as u32)) as i64
                    })
                    .sum()
            })
            .collect(),
    };
    for j in 0..=table.cap {
        let alt: i64 = (0..=n)
            .map(|i| {
                let v = table.get(i, j) as i64;
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        let want = expected.get(j as usize).copied().unwrap_or(0);
        if alt != want {
            return Err(Error::Invariant(format!(
                "Euler characteristic in degree {j}: table gives {alt}, Hilbert series gives {want}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- monomial

/// Multidegrees `α <= lcm(G)`, `|α| <= cap`, with `x^α ∈ I` and
/// `x^(α - 1_supp α) ∉ I`: the only places `R/I` has syzygies.
fn monomial_leaves(ideal: &MonomialIdeal, cap: u32) -> Vec<Vec<u32>> {
    let lcm = ideal.lcm();
    let n = ideal.n();
    let mut out = Vec::new();
    let mut alpha = vec![0u32; n];
    leaves_rec(ideal, lcm.exponents(), cap, 0, 0, &mut alpha, &mut out);
    out
}

fn below_support(alpha: &[u32]) -> Monomial {
    Monomial::new(alpha.iter().map(|&a| a.saturating_sub(1)).collect())
}

fn leaves_rec(
    ideal: &MonomialIdeal,
    lcm: &[u32],
    cap: u32,
    k: usize,
    deg: u32,
    alpha: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if k == alpha.len() {
        if deg > 0 && ideal.contains(&Monomial::new(alpha.clone())) {
            out.push(alpha.clone());
        }
        return;
    }
    for a in 0..=lcm[k] {
        if deg + a > cap {
            break;
        }
        alpha[k] = a;
        if a >= 2 && ideal.contains(&below_support(alpha)) {
            break;
        }
        leaves_rec(ideal, lcm, cap, k + 1, deg + a, alpha, out);
    }
    alpha[k] = 0;
}

/// Betti numbers `β_{i,α}(R/I)` for one multidegree, indexed by `i`.
fn multidegree_betti<F: Field>(field: &F, ideal: &MonomialIdeal, alpha: &[u32]) -> Result<Vec<usize>> {
    let support: Vec<usize> = (0..alpha.len()).filter(|&k| alpha[k] > 0).collect();
    let s = support.len();
    let full = 1usize << s;
    let mut present = vec![false; full];
    for (mask, slot) in present.iter_mut().enumerate() {
        let mut beta = alpha.to_vec();
        for (b, &var) in support.iter().enumerate() {
            if mask >> b & 1 == 1 {
                beta[var] -= 1;
            }
        }
        *slot = !ideal.contains(&Monomial::new(beta));
    }
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); s + 1];
    for mask in (0..full).filter(|&m| present[m]) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    let mut position = vec![usize::MAX; full];
    for layer in &by_size {
        for (p, &mask) in layer.iter().enumerate() {
            position[mask] = p;
        }
    }
    // d_i: layer i -> layer i-1, entries (-1)^(k+1) for the k-th removed element.
    let boundary = |mask: usize| -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        let mut k = 0;
        for b in 0..s {
            if mask >> b & 1 == 1 {
                k += 1;
                let face = mask & !(1 << b);
                if present[face] {
                    out.push((face, if k % 2 == 1 { 1 } else { -1 }));
                }
            }
        }
        out
    };
    let mut ranks = vec![0usize; s + 2];
    for i in 1..=s {
        let cols = by_size[i - 1].len();
        let mut ech = Echelon::new(field.clone(), cols);
        for &mask in &by_size[i] {
            let mut row: SparseRow<F::Elem> = boundary(mask)
                .into_iter()
                .map(|(face, c)| (position[face], field.from_i64(c)))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            ech.insert(row);
        }
        ranks[i] = ech.rank();
    }
    // The composite d_{i-1} d_i vanishes.
    for i in 2..=s {
        for &mask in &by_size[i] {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (face, c) in boundary(mask) {
                for (f2, c2) in boundary(face) {
                    *acc.entry(f2).or_default() += c * c2;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(Error::Invariant("Koszul differential does not square to zero".into()));
            }
        }
    }
    Ok((0..=s)
        .map(|i| by_size[i].len() - ranks[i] - ranks[i + 1])
        .collect())
}

fn monomial_entries<F: Field>(field: &F, ideal: &MonomialIdeal, cap: u32) -> Result<BTreeMap<(usize, u32), usize>> {
    let leaves = monomial_leaves(ideal, cap);
    let parts: Vec<(u32, Vec<usize>)> = leaves
        .par_iter()
        .map(|alpha| Ok((alpha.iter().sum(), multidegree_betti(field, ideal, alpha)?)))
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    for (j, betti) in parts {
        for (i, &b) in betti.iter().enumerate() {
            if b > 0 {
                *entries.entry((i, j)).or_insert(0) += b;
            }
        }
    }
    Ok(entries)
}

// ----------------------------------------------------------------- general

/// Size-`i` subsets of `{0..n}` as bitmasks, increasing, with reverse index.
struct Subsets {
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl Subsets {
    fn new(n: usize, i: usize) -> Self {
        let masks: Vec<u32> = (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == i).collect();
        let index = masks.iter().enumerate().map(|(p, &m)| (m, p)).collect();
        Self { masks, index }
    }
}

/// Image of `e_S ⊗ f` under the Koszul differential, in coordinates
/// `index(S \ s) * dim R_{e+1} + monomial`.
fn koszul_image<E: Clone>(
    field: &impl Field<Elem = E>,
    n: usize,
    e: u32,
    mask: u32,
    faces: &Subsets,
    f: &[(usize, E)],
) -> SparseRow<E> {
    let basis = degree_basis(n, e);
    let width = degree_basis(n, e + 1).len();
    let mut row: SparseRow<E> = Vec::new();
    let mut k = 0;
    for var in 0..n {
        if mask >> var & 1 == 1 {
            k += 1;
            let face = faces.index[&(mask & !(1 << var))];
            for (c, v) in f {
                let v = if k % 2 == 1 { v.clone() } else { field.neg(v) };
                row.push((face * width + basis.up(var, *c), v));
            }
        }
    }
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Rank of `d: ∧^i ⊗ I_{j-i} -> ∧^{i-1} ⊗ I_{j-i+1}`.
fn koszul_rank<F: Field>(ideal: &GradedIdeal<F>, i: usize, j: u32) -> Result<usize> {
    let n = ideal.n();
    if i == 0 || i > n || j < i as u32 {
        return Ok(0);
    }
    let e = j - i as u32;
    let piece = ideal.degree_piece(e);
    if piece.dim() == 0 {
        return Ok(0);
    }
    if i == 1 {
        return Ok(ideal
            .degree_piece(j)
            .from_lower()
            .expect("ideal pieces record R_1 I_{e-1}"));
    }
    let field = ideal.field();
    let sources = Subsets::new(n, i);
    let faces = Subsets::new(n, i - 1);
    let width = degree_basis(n, e + 1).len();
    let mut rows = Vec::with_capacity(sources.masks.len() * piece.dim());
    for &mask in &sources.masks {
        for f in piece.rows() {
            rows.push(koszul_image(field, n, e, mask, &faces, f));
        }
    }
    if i >= 2 {
        // Apply the differential once more; everything must cancel.
        let ridges = Subsets::new(n, i - 2);
        for row in &rows {
            let mut split: BTreeMap<usize, SparseRow<F::Elem>> = BTreeMap::new();
            for (c, v) in row {
                split.entry(c / width).or_default().push((c % width, v.clone()));
            }
            let mut total: SparseRow<F::Elem> = Vec::new();
            for (face, f) in split {
                total.extend(koszul_image(field, n, e + 1, faces.masks[face], &ridges, &f));
            }
            if !crate::linalg::normalize_row(field, total).is_empty() {
                return Err(Error::Invariant("Koszul differential does not square to zero".into()));
            }
        }
    }
    Ok(echelon_of(field, faces.masks.len() * width, rows).rank())
}

/// Normal-form coordinates of `(R/I)_e` (the non-pivot monomials of
/// `I_e`) and multiplication by each variable into `(R/I)_{e+1}`.
struct QuotientStep<E> {
    dim: usize,
    next_dim: usize,
    /// `mult[k][q]`: `x_k * w_q` in the coordinates of degree `e + 1`.
    mult: Vec<Vec<SparseRow<E>>>,
}

fn standard_columns<F: Field>(ideal: &GradedIdeal<F>, e: u32) -> Vec<Option<usize>> {
    let piece = ideal.degree_piece(e);
    let mut next = 0;
    (0..piece.ambient_dim())
        .map(|c| {
            if piece.echelon().has_pivot(c) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

fn quotient_step<F: Field>(ideal: &GradedIdeal<F>, e: u32) -> QuotientStep<F::Elem> {
    let n = ideal.n();
    let one = ideal.field().one();
    let lower = standard_columns(ideal, e);
    let upper = standard_columns(ideal, e + 1);
    let target = ideal.degree_piece(e + 1);
    let basis = degree_basis(n, e);
    let mult = (0..n)
        .map(|k| {
            lower
                .iter()
                .enumerate()
                .filter(|(_, q)| q.is_some())
                .map(|(c, _)| {
                    target
                        .echelon()
                        .reduce(&[(basis.up(k, c), one.clone())])
                        .into_iter()
                        .map(|(col, v)| (upper[col].expect("reduced rows avoid pivots"), v))
                        .collect()
                })
                .collect()
        })
        .collect();
    QuotientStep {
        dim: lower.iter().flatten().count(),
        next_dim: upper.iter().flatten().count(),
        mult,
    }
}

/// Image of `e_S ⊗ w` for a sparse `w` in `(R/I)_e`.
fn quotient_image<E: Clone>(
    field: &impl Field<Elem = E>,
    step: &QuotientStep<E>,
    mask: u32,
    faces: &Subsets,
    w: &[(usize, E)],
) -> SparseRow<E> {
    let n = step.mult.len();
    let mut row: SparseRow<E> = Vec::new();
    let mut k = 0;
    for var in 0..n {
        if mask >> var & 1 == 1 {
            k += 1;
            let face = faces.index[&(mask & !(1 << var))];
            for (q, c) in w {
                for (t, v) in &step.mult[var][*q] {
                    let v = field.mul(c, v);
                    let v = if k % 2 == 1 { v } else { field.neg(&v) };
                    row.push((face * step.next_dim + t, v));
                }
            }
        }
    }
    crate::linalg::normalize_row(field, row)
}

/// Rank of `d: ∧^i ⊗ (R/I)_{j-i} -> ∧^{i-1} ⊗ (R/I)_{j-i+1}`.
fn quotient_rank<F: Field>(ideal: &GradedIdeal<F>, i: usize, j: u32) -> Result<usize> {
    let n = ideal.n();
    if i == 0 || i > n || j < i as u32 {
        return Ok(0);
    }
    let e = j - i as u32;
    let field = ideal.field();
    let step = quotient_step(ideal, e);
    if step.dim == 0 || step.next_dim == 0 {
        return Ok(0);
    }
    let sources = Subsets::new(n, i);
    let faces = Subsets::new(n, i - 1);
    let one = field.one();
    let mut rows = Vec::with_capacity(sources.masks.len() * step.dim);
    for &mask in &sources.masks {
        for q in 0..step.dim {
            rows.push(quotient_image(field, &step, mask, &faces, &[(q, one.clone())]));
        }
    }
    if i >= 2 {
        let next = quotient_step(ideal, e + 1);
        let ridges = Subsets::new(n, i - 2);
        for row in &rows {
            let mut total: SparseRow<F::Elem> = Vec::new();
            let mut split: BTreeMap<usize, SparseRow<F::Elem>> = BTreeMap::new();
            for (c, v) in row {
                split.entry(c / step.next_dim).or_default().push((c % step.next_dim, v.clone()));
            }
            for (face, w) in split {
                total.extend(quotient_image(field, &next, faces.masks[face], &ridges, &w));
            }
            if !crate::linalg::normalize_row(field, total).is_empty() {
                return Err(Error::Invariant("Koszul differential does not square to zero".into()));
            }
        }
    }
    Ok(echelon_of(field, faces.masks.len() * step.next_dim, rows).rank())
}

/// Each strand `j` is evaluated on whichever side of `0 -> I -> R -> R/I -> 0`
/// has the smaller total dimension.
fn general_entries<F: Field>(ideal: &GradedIdeal<F>, cap: u32) -> Result<BTreeMap<(usize, u32), usize>> {
    let n = ideal.n();
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    if ideal.is_zero() {
        return Ok(entries);
    }
    for e in 0..=cap {
        ideal.degree_piece(e);
    }
    let weight = |j: u32, quotient: bool| -> usize {
        (0..=n.min(j as usize))
            .map(|i| {
                let e = j - i as u32;
                let d = ideal.degree_piece(e).dim();
                binomial(n, i) * if quotient { ideal.hilbert_value(e) } else { d }
            })
            .sum()
    };
    let quotient_side: Vec<bool> = (0..=cap).map(|j| weight(j, true) < weight(j, false)).collect();
    let jobs: Vec<(usize, u32)> = (1..=cap)
        .flat_map(|j| (1..=n.min(j as usize)).map(move |i| (i, j)))
        .filter(|&(i, j)| {
            if quotient_side[j as usize] {
                ideal.hilbert_value(j - i as u32) > 0
            } else {
                i >= 2 && ideal.degree_piece(j - i as u32).dim() > 0
            }
        })
        .collect();
    let ranks: HashMap<(usize, u32), usize> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let r = if quotient_side[j as usize] {
                quotient_rank(ideal, i, j)?
            } else {
                koszul_rank(ideal, i, j)?
            };
            Ok(((i, j), r))
        })
        .collect::<Result<_>>()?;
    let rank = |i: usize, j: u32| -> usize {
        if !quotient_side[j as usize] && i == 1 && j >= 1 {
            ideal.degree_piece(j).from_lower().unwrap_or(0)
        } else {
            ranks.get(&(i, j)).copied().unwrap_or(0)
        }
    };
    for j in 1..=cap {
        for i in 0..=n.min(j as usize) {
            let b = if quotient_side[j as usize] {
                if i >= 1 { binomial(n, i) * ideal.hilbert_value(j - i as u32) - rank(i, j) - rank(i + 1, j) } else { 0 }
            } else if i < n {
                binomial(n, i) * ideal.degree_piece(j - i as u32).dim() - rank(i, j) - rank(i + 1, j)
            } else {
                0
            };
            let homological = if quotient_side[j as usize] { i } else { i + 1 };
            if b > 0 {
                entries.insert((homological, j), b);
            }
        }
    }
    Ok(entries)
}

/// Regularities of `I`, `J`, `IJ` and whether `reg(IJ) <= reg(I) + reg(J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub reg_i: RegularityResult,
    pub reg_j: RegularityResult,
    pub reg_product: RegularityResult,
    pub holds: bool,
}

/// Uses `cap` for all three ideals, or each ideal's default cap.
pub fn inequality_report<F: Field>(
    i: &GradedIdeal<F>,
    j: &GradedIdeal<F>,
    cap: Option<u32>,
) -> Result<InequalityReport> {
    let product = i.product(j)?;
    let reg = |ideal: &GradedIdeal<F>| {
        let c = cap.unwrap_or_else(|| default_cap(ideal));
        regularity(ideal, c)
    };
    let (reg_i, reg_j, reg_product) = (reg(i)?, reg(j)?, reg(&product)?);
    Ok(InequalityReport {
        holds: reg_product.value <= reg_i.value + reg_j.value,
        reg_i,
        reg_j,
        reg_product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::VariableSet;
    use crate::poly::HomPolynomial;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn example_j() -> MonomialIdeal {
        MonomialIdeal::new(4, vec![m(&[2, 1, 0, 0]), m(&[1, 1, 1, 0]), m(&[0, 1, 1, 1]), m(&[0, 0, 1, 2])]).unwrap()
    }

    fn lin(c: &[i64]) -> HomPolynomial<Rationals> {
        let v: Vec<_> = c.iter().map(|&x| Rationals.from_i64(x)).collect();
        HomPolynomial::linear_form(&Rationals, &v)
    }

    fn ideal_entries(t: &BettiTable) -> Vec<(usize, u32, usize)> {
        t.ideal_entries().iter().map(|e| (e.i, e.j, e.value)).collect()
    }

    #[test]
    fn example_j_table() {
        let j = example_j().to_graded(&Rationals);
        let t = betti_table(&j, 6).unwrap();
        assert!(t.certified());
        assert_eq!(ideal_entries(&t), vec![(0, 3, 4), (1, 4, 3)]);
        let r = t.regularity().unwrap();
        assert_eq!((r.value, r.witness), (3, (0, 3)));
    }

    #[test]
    fn product_table() {
        let bc = MonomialIdeal::variables(4, &VariableSet::new(vec![1, 2], 4).unwrap()).unwrap();
        let ij = bc.product(&example_j()).unwrap().to_graded(&Rationals);
        let t = betti_table(&ij, 8).unwrap();
        assert_eq!(
            ideal_entries(&t),
            vec![(0, 4, 8), (1, 5, 10), (1, 6, 1), (2, 6, 3), (2, 7, 2), (3, 8, 1)]
        );
        assert_eq!(t.regularity().unwrap().value, 5);
    }

    #[test]
    fn small_tables() {
        let max = MonomialIdeal::maximal(2).to_graded(&Rationals);
        let t = betti_table(&max, 3).unwrap();
        assert_eq!(t.get(1, 1), 2);
        assert_eq!(t.get(2, 2), 1);
        let x2 = MonomialIdeal::principal(m(&[2])).to_graded(&Rationals);
        let t = betti_table(&x2, 2).unwrap();
        assert_eq!(t.entries().len(), 2);
        assert_eq!((t.get(0, 0), t.get(1, 2)), (1, 1));
    }

    #[test]
    fn routes_agree() {
        // (x, y)(y, z): monomial route versus polynomial arithmetic with a
        // redundant binomial generator.
        let mono = MonomialIdeal::new(3, vec![m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[0, 1, 1])]).unwrap();
        let t1 = betti_table(&mono.to_graded(&Rationals), 5).unwrap();
        let mut gens: Vec<_> = mono.gens().iter().map(|g| HomPolynomial::monomial(&Rationals, g.clone())).collect();
        gens.push(lin(&[1, 0, 0]).mul(&Rationals, &lin(&[0, 1, 1])));
        let general = GradedIdeal::new(Rationals, 3, gens).unwrap();
        let t2 = betti_table(&general, 5).unwrap();
        assert_eq!(t1.entries(), t2.entries());
        assert!(!t2.certified());
        assert_eq!(ideal_entries(&t1), vec![(0, 2, 4), (1, 3, 4), (2, 4, 1)]);
        for i in 0..=3 {
            for j in 0..=5 {
                assert_eq!(koszul_strand_betti(&general, i, j).unwrap(), t1.get(i, j), "({i},{j})");
                assert_eq!(
                    koszul_strand_betti(&mono.to_graded(&Rationals), i, j).unwrap(),
                    t1.get(i, j)
                );
            }
        }
    }

    #[test]
    fn strand_sides_agree() {
        let f = crate::field::PrimeField::new(32003).unwrap();
        let l = |c: &[i64]| HomPolynomial::linear_form(&f, &c.iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>());
        let gens = vec![
            l(&[1, 2, 0, 3]).mul(&f, &l(&[0, 1, -1, 0])),
            l(&[1, 2, 0, 3]).mul(&f, &l(&[4, 0, 1, 1])),
            l(&[0, 0, 1, 5]).mul(&f, &l(&[2, -3, 0, 1])),
        ];
        let ideal = GradedIdeal::new(f, 4, gens).unwrap();
        for j in 1..=7u32 {
            for i in 1..=4usize {
                let dim = if j >= i as u32 { binomial(4, i) * ideal.hilbert_value(j - i as u32) } else { 0 };
                let q = dim - quotient_rank(&ideal, i, j).unwrap() - quotient_rank(&ideal, i + 1, j).unwrap();
                assert_eq!(q, koszul_strand_betti(&ideal, i, j).unwrap(), "({i},{j})");
            }
        }
    }

    #[test]
    fn linear_ideal_has_regularity_one() {
        let i = GradedIdeal::new(Rationals, 3, vec![lin(&[1, 2, 0]), lin(&[0, 1, -1])]).unwrap();
        assert_eq!(regularity(&i, 5).unwrap().value, 1);
    }

    #[test]
    fn inequality_example() {
        let bc = MonomialIdeal::variables(4, &VariableSet::new(vec![1, 2], 4).unwrap())
            .unwrap()
            .to_graded(&Rationals);
        let j = example_j().to_graded(&Rationals);
        let r = inequality_report(&bc, &j, None).unwrap();
        assert_eq!((r.reg_i.value, r.reg_j.value, r.reg_product.value), (1, 3, 5));
        assert!(!r.holds);
    }

    #[test]
    fn prime_fields_agree_on_example() {
        let bc = MonomialIdeal::variables(4, &VariableSet::new(vec![1, 2], 4).unwrap()).unwrap();
        let ij = bc.product(&example_j()).unwrap();
        let q = betti_table(&ij.to_graded(&Rationals), 8).unwrap();
        for p in [2, 32003, 65537] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(betti_table(&ij.to_graded(&f), 8).unwrap().entries(), q.entries());
        }
    }

    #[test]
    fn rejects_low_cap_and_unit() {
        let j = example_j().to_graded(&Rationals);
        assert!(betti_table(&j, 2).is_err());
        let unit = MonomialIdeal::principal(m(&[0, 0])).to_graded(&Rationals);
        assert_eq!(betti_table(&unit, 2), Err(Error::UnitIdeal));
    }

    #[test]
    fn render_shape() {
        let j = example_j().to_graded(&Rationals);
        let text = betti_table(&j, 6).unwrap().render();
        assert!(text.contains("total:"));
        assert!(text.lines().count() >= 4);
    }
}
