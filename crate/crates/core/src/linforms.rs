//! Ideals generated by linear forms over ℚ, products of them, and the
//! decomposition `I_1 ⋯ I_d = ⋂_A I_A^{|A|}` over nonempty `A ⊆ {1..d}`.
//!
//! Degreewise dimensions of the intersection are computed on the dual side:
//! with `U = V^⊥ ⊆ R_1^*`, the annihilator of `(V^k)_e` under the apolarity
//! pairing `<x^a, y^b> = a! δ_ab` is `U^s S_{e-s}`, `s = e - k + 1`, so
//! `dim (⋂_A C_A)_e = dim R_e - rank Σ_A (C_A)_e^⊥`.
//!
//! Large comparisons run modulo a prime `p` on the primitive integer data.
//! Reduction can only lower the rank of the product generators and of the
//! dual functionals, so with the product contained in every component
//! (checked exactly over ℚ)
//!
//! ```text
//! dim_p P_e <= dim_ℚ P_e <= dim_ℚ C_e <= dim R_e - rank_p(functionals)
//! ```
//!
//! and equality of the outer terms certifies the ℚ dimensions. Equal
//! Hilbert functions make the integral product lattice free over `ℤ_(p)` in
//! those degrees, so ℚ Betti numbers and saturation defects are bounded
//! above by their mod-`p` counterparts. Anything not certified this way is
//! recomputed exactly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::betti::{self, RegularityResult};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::graded::{degree_basis, DegreePiece, GradedIdeal, SaturationReport};
use crate::linalg::{dot, row_reduce, Echelon, SparseMatrix, SparseRow};
use crate::monomial::{variable_name, Monomial};
use crate::poly::{format_linear_form, HomPolynomial};

/// Primes tried, in order, before falling back to exact arithmetic.
pub const MODULAR_PRIMES: [u64; 3] = [2_147_483_629, 2_147_483_587, 2_147_483_579];

/// Largest family for which all `2^d - 1` components are enumerated.
pub const MAX_COMPONENT_FAMILY: usize = 12;

/// A nonzero subspace `V ⊆ R_1`, stored in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearIdeal {
    n: usize,
    rref: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl LinearIdeal {
    /// Row-reduces `rows`; redundant rows are allowed.
    pub fn new(n: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut m = SparseMatrix::new(n);
        for r in &rows {
            if r.len() != n {
                return Err(Error::AmbientMismatch { left: n, right: r.len() });
            }
            m.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        let red = row_reduce(&Rationals, &m);
        if red.rank == 0 {
            return Err(Error::EmptyIdeal);
        }
        let rref = red
            .rref
            .iter()
            .map(|r| {
                let mut dense = vec![BigRational::zero(); n];
                for (c, v) in r {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect();
        Ok(Self {
            n,
            rref,
            pivots: red.pivots,
        })
    }

    pub fn from_integer_rows(n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::new(n, rows)
    }

    /// Span of the given variables.
    pub fn coordinate(n: usize, vars: &[usize]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vars.len());
        for &v in vars {
            if v >= n {
                return Err(Error::VariableOutOfRange { index: v, n });
            }
            let mut r = vec![0i64; n];
            r[v] = 1;
            rows.push(r);
        }
        Self::from_integer_rows(n, &rows)
    }

    /// All of `R_1`.
    pub fn full(n: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        Self::coordinate(n, &all).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rref.len()
    }

    pub fn rref(&self) -> &[Vec<BigRational>] {
        &self.rref
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `V = R_1`, i.e. the ideal is the maximal ideal.
    pub fn is_maximal(&self) -> bool {
        self.dim() == self.n
    }

    /// The reduced rows scaled to primitive integer vectors.
    pub fn integer_basis(&self) -> Vec<Vec<BigInt>> {
        self.rref.iter().map(|r| primitive(r)).collect()
    }

    /// Primitive integer basis of `V^⊥ = { u : u · v = 0 for v in V }`.
    /// The vectors restrict to the identity on the non-pivot columns.
    pub fn annihilator_basis(&self) -> Vec<Vec<BigInt>> {
        let mut m = SparseMatrix::new(self.n);
        for r in &self.rref {
            m.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        row_reduce(&Rationals, &m)
            .kernel
            .iter()
            .map(|k| {
                let mut dense = vec![BigRational::zero(); self.n];
                for (c, v) in k {
                    dense[*c] = v.clone();
                }
                primitive(&dense)
            })
            .collect()
    }

    /// Basis forms reduced into `field`.
    pub fn forms<F: Field>(&self, field: &F) -> Result<Vec<HomPolynomial<F>>> {
        integer_forms(field, &self.integer_basis())
    }

    pub fn to_graded<F: Field>(&self, field: &F) -> Result<GradedIdeal<F>> {
        GradedIdeal::new(field.clone(), self.n, self.forms(field)?)
    }

    pub fn contains(&self, coefficients: &[BigRational]) -> bool {
        if coefficients.len() != self.n {
            return false;
        }
        let mut v = coefficients.to_vec();
        for (row, &p) in self.rref.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &c * r;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut rows = self.rref.clone();
        rows.extend(other.rref.iter().cloned());
        Self::new(self.n, rows)
    }

    /// Integer matrix text, e.g. `[[1,0,0],[0,1,-1]]`.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .integer_basis()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// The generators as linear forms, e.g. `(a, b - c)`.
    pub fn forms_text(&self) -> String {
        let forms: Vec<String> = self
            .integer_basis()
            .iter()
            .map(|r| {
                let q: Vec<BigRational> = r.iter().map(|v| BigRational::from_integer(v.clone())).collect();
                format_linear_form(&Rationals, &q)
            })
            .collect();
        format!("({})", forms.join(", "))
    }
}

impl fmt::Display for LinearIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.forms_text())
    }
}

impl fmt::Debug for LinearIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Serialize for LinearIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            matrix: String,
            forms: String,
            dim: usize,
        }
        Repr {
            matrix: self.to_text(),
            forms: self.forms_text(),
            dim: self.dim(),
        }
        .serialize(s)
    }
}

fn primitive(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

fn integer_forms<F: Field>(field: &F, rows: &[Vec<BigInt>]) -> Result<Vec<HomPolynomial<F>>> {
    rows.iter()
        .map(|r| {
            let coeffs = r
                .iter()
                .map(|v| field.from_rational(&BigRational::from_integer(v.clone())))
                .collect::<Result<Vec<_>>>()?;
            Ok(HomPolynomial::linear_form(field, &coeffs))
        })
        .collect()
}

fn unit_forms<F: Field>(field: &F, n: usize, columns: &[usize]) -> Vec<HomPolynomial<F>> {
    columns
        .iter()
        .map(|&c| HomPolynomial::monomial(field, Monomial::var(n, c)))
        .collect()
}

/// `linforms([[..]], [[..]])`.
pub fn family_text(family: &[LinearIdeal]) -> String {
    let parts: Vec<String> = family.iter().map(LinearIdeal::to_text).collect();
    format!("linforms({})", parts.join(", "))
}

fn check_family(family: &[LinearIdeal]) -> Result<usize> {
    let first = family
        .first()
        .ok_or_else(|| Error::Precondition("the family is empty".into()))?;
    for v in family {
        if v.n != first.n {
            return Err(Error::AmbientMismatch {
                left: first.n,
                right: v.n,
            });
        }
    }
    Ok(first.n)
}

/// `I_A = Σ_{j ∈ A} V_j` (0-based indices).
pub fn sum_ideal(family: &[LinearIdeal], subset: &[usize]) -> Result<LinearIdeal> {
    let n = check_family(family)?;
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut rows = Vec::new();
    for &i in subset {
        let v = family.get(i).ok_or(Error::SubsetOutOfRange {
            index: i,
            len: family.len(),
        })?;
        rows.extend(v.rref.iter().cloned());
    }
    LinearIdeal::new(n, rows)
}

/// All products of one basis form per factor, unreduced.
pub fn product_generators<F: Field>(field: &F, family: &[LinearIdeal]) -> Result<GradedIdeal<F>> {
    let n = check_family(family)?;
    let mut acc = vec![HomPolynomial::monomial(field, Monomial::one(n))];
    for v in family {
        let forms = v.forms(field)?;
        acc = acc
            .iter()
            .flat_map(|p| forms.iter().map(move |l| p.mul(field, l)))
            .collect();
    }
    GradedIdeal::new(field.clone(), n, acc)
}

/// Products of degree `e` of the forms `first ++ rest` (with repetition)
/// whose degree in `first` is at least `min_first`.
fn adapted_products<F: Field>(
    field: &F,
    n: usize,
    first: &[HomPolynomial<F>],
    rest: &[HomPolynomial<F>],
    e: u32,
    min_first: u32,
) -> Vec<HomPolynomial<F>> {
    struct Walk<'a, F: Field> {
        field: &'a F,
        forms: Vec<&'a HomPolynomial<F>>,
        split: usize,
        min_first: u32,
        out: Vec<HomPolynomial<F>>,
    }
    impl<F: Field> Walk<'_, F> {
        fn go(&mut self, pos: usize, remaining: u32, first_deg: u32, acc: HomPolynomial<F>) {
            if remaining == 0 {
                if first_deg >= self.min_first {
                    self.out.push(acc);
                }
                return;
            }
            if pos == self.forms.len() || (pos >= self.split && first_deg < self.min_first) {
                return;
            }
            let next = acc.mul(self.field, self.forms[pos]);
            self.go(pos, remaining - 1, first_deg + u32::from(pos < self.split), next);
            self.go(pos + 1, remaining, first_deg, acc);
        }
    }
    let mut walk = Walk {
        field,
        forms: first.iter().chain(rest).collect(),
        split: first.len(),
        min_first,
        out: Vec::new(),
    };
    walk.go(0, e, 0, HomPolynomial::monomial(field, Monomial::one(n)));
    walk.out
}

/// `(V^k)_e`, enumerated in coordinates adapted to `V`.
pub fn power_piece<F: Field>(field: &F, v: &LinearIdeal, k: u32, e: u32) -> Result<DegreePiece<F>> {
    if k == 0 {
        return Err(Error::Precondition("the exponent must be positive".into()));
    }
    let n = v.n;
    let basis = degree_basis(n, e);
    let free: Vec<usize> = (0..n).filter(|c| !v.pivots.contains(c)).collect();
    let rows = adapted_products(field, n, &v.forms(field)?, &unit_forms(field, n, &free), e, k)
        .iter()
        .map(|p| p.to_row(basis.monomials()))
        .collect::<Vec<_>>();
    Ok(DegreePiece::from_rows(field, n, e, rows))
}

/// A term `I_A^{|A|}` of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimaryComponent {
    /// 0-based indices into the family.
    pub subset: Vec<usize>,
    pub ideal: LinearIdeal,
    pub exponent: u32,
    /// `I_A` is the maximal ideal.
    pub maximal: bool,
}

impl PrimaryComponent {
    fn new(subset: Vec<usize>, ideal: LinearIdeal) -> Self {
        Self {
            exponent: subset.len() as u32,
            maximal: ideal.is_maximal(),
            subset,
            ideal,
        }
    }
}

fn subset_masks(d: usize) -> Result<Vec<u32>> {
    if d > MAX_COMPONENT_FAMILY {
        return Err(Error::GuardExceeded {
            what: "family size for subset enumeration",
            size: d,
            limit: MAX_COMPONENT_FAMILY,
        });
    }
    let mut masks: Vec<u32> = (1..1u32 << d).collect();
    masks.sort_by_key(|&m| (m.count_ones(), mask_indices(m)));
    Ok(masks)
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// All `2^d - 1` components, by subset size.
pub fn primary_components(family: &[LinearIdeal]) -> Result<Vec<PrimaryComponent>> {
    check_family(family)?;
    subset_masks(family.len())?
        .into_iter()
        .map(|mask| {
            let subset = mask_indices(mask);
            let ideal = sum_ideal(family, &subset)?;
            Ok(PrimaryComponent::new(subset, ideal))
        })
        .collect()
}

/// `dim Σ_{i∈A} V_i = min(n, Σ_{i∈A} dim V_i)` for every nonempty `A`.
pub fn is_linearly_general(family: &[LinearIdeal]) -> Result<bool> {
    let n = check_family(family)?;
    for mask in subset_masks(family.len())? {
        let subset = mask_indices(mask);
        let total: usize = subset.iter().map(|&i| family[i].dim()).sum();
        if sum_ideal(family, &subset)?.dim() != total.min(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The singletons together with `m^d`.
pub fn reduced_components(family: &[LinearIdeal]) -> Result<Vec<PrimaryComponent>> {
    let n = check_family(family)?;
    if !is_linearly_general(family)? {
        return Err(Error::Precondition("the family is not linearly general".into()));
    }
    let all: Vec<usize> = (0..family.len()).collect();
    if !sum_ideal(family, &all)?.is_maximal() {
        return Err(Error::Precondition("the subspaces do not span R_1".into()));
    }
    if family.len() == 1 {
        return Ok(vec![PrimaryComponent::new(vec![0], family[0].clone())]);
    }
    let mut comps: Vec<PrimaryComponent> = family
        .iter()
        .enumerate()
        .map(|(i, v)| PrimaryComponent::new(vec![i], v.clone()))
        .collect();
    comps.push(PrimaryComponent::new(all, LinearIdeal::full(n)));
    Ok(comps)
}

/// How a reported dimension was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Exact arithmetic over ℚ.
    Exact,
    /// Computed modulo `prime` and certified by the dimension sandwich.
    Modular { prime: u64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Exact => write!(f, "exact over QQ"),
            Certificate::Modular { prime } => write!(f, "certified modulo {prime}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: u32,
    pub product: usize,
    pub intersection: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub cap: u32,
    pub components: usize,
    pub comparisons: Vec<DegreeComparison>,
    /// The product lies in every component.
    pub containment: bool,
    pub equal: bool,
    pub certificate: Certificate,
}

/// A component prepared for dual computations over one field.
struct DualComponent<F: Field> {
    exponent: u32,
    u_forms: Vec<HomPolynomial<F>>,
    w_forms: Vec<HomPolynomial<F>>,
}

fn dual_components<F: Field>(field: &F, n: usize, comps: &[PrimaryComponent]) -> Result<Vec<DualComponent<F>>> {
    let mut out: Vec<DualComponent<F>> = comps
        .iter()
        .map(|c| {
            Ok(DualComponent {
                exponent: c.exponent,
                u_forms: integer_forms(field, &c.ideal.annihilator_basis())?,
                w_forms: unit_forms(field, n, c.ideal.pivots()),
            })
        })
        .collect::<Result<_>>()?;
    out.sort_by_key(|c| (c.exponent, std::cmp::Reverse(c.u_forms.len())));
    Ok(out)
}

/// `a!` for every monomial of degree `e`.
fn apolarity_weights<F: Field>(field: &F, n: usize, e: u32) -> Vec<F::Elem> {
    degree_basis(n, e)
        .monomials()
        .monomials()
        .iter()
        .map(|m| {
            let mut w = field.one();
            for &a in m.exponents() {
                for t in 2..=a {
                    w = field.mul(&w, &field.from_i64(i64::from(t)));
                }
            }
            w
        })
        .collect()
}

/// Rows spanning `(V^k)_e^⊥` as functionals on `R_e`.
fn perp_rows<F: Field>(field: &F, n: usize, c: &DualComponent<F>, e: u32, weights: &[F::Elem]) -> Vec<SparseRow<F::Elem>> {
    let basis = degree_basis(n, e);
    let s = e + 1 - c.exponent;
    adapted_products(field, n, &c.u_forms, &c.w_forms, e, s)
        .iter()
        .map(|p| {
            p.to_row(basis.monomials())
                .into_iter()
                .map(|(col, v)| (col, field.mul(&v, &weights[col])))
                .collect()
        })
        .collect()
}

/// `dim (⋂ C_A)_e` in `field`'s reduction, stopping once the dual rank
/// reaches `target`.
fn intersection_dim<F: Field>(field: &F, n: usize, comps: &[DualComponent<F>], e: u32, target: usize) -> usize {
    if comps.iter().any(|c| e < c.exponent) {
        return 0;
    }
    let total = degree_basis(n, e).len();
    let weights = apolarity_weights(field, n, e);
    let mut ech = Echelon::new(field.clone(), total);
    for c in comps {
        if ech.rank() >= target {
            break;
        }
        for row in perp_rows(field, n, c, e, &weights) {
            ech.insert(row);
            if ech.rank() >= target {
                break;
            }
        }
    }
    total - ech.rank()
}

/// Exact check that `∏_{i∈A} V_i ⊆ (I_A^{|A|})_{|A|}` for every component,
/// hence that the product lies in every component.
fn containment(family: &[LinearIdeal], comps: &[PrimaryComponent]) -> Result<bool> {
    let q = Rationals;
    let n = check_family(family)?;
    for c in comps {
        let duals = dual_components(&q, n, std::slice::from_ref(c))?;
        let k = c.exponent;
        let weights = apolarity_weights(&q, n, k);
        let perps = perp_rows(&q, n, &duals[0], k, &weights);
        if perps.is_empty() {
            continue;
        }
        let sub: Vec<LinearIdeal> = c.subset.iter().map(|&i| family[i].clone()).collect();
        let products = product_generators(&q, &sub)?;
        let basis = degree_basis(n, k);
        for g in products.gens() {
            let row = g.to_row(basis.monomials());
            if perps.iter().any(|p| !q.is_zero(&dot(&q, &row, p))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn compare_dims<F: Field>(
    field: &F,
    family: &[LinearIdeal],
    comps: &[PrimaryComponent],
    upto: u32,
) -> Result<(GradedIdeal<F>, Vec<DegreeComparison>)> {
    let n = check_family(family)?;
    let product = product_generators(field, family)?;
    let duals = dual_components(field, n, comps)?;
    let mut out = Vec::with_capacity(upto as usize + 1);
    for e in 0..=upto {
        let p = product.degree_piece(e).dim();
        let total = degree_basis(n, e).len();
        let inter = if p == total {
            p
        } else {
            intersection_dim(field, n, &duals, e, total - p)
        };
        out.push(DegreeComparison {
            degree: e,
            product: p,
            intersection: inter,
        });
    }
    Ok((product, out))
}

/// The product together with whatever the sandwich certified about it.
struct Certified {
    comps: Vec<PrimaryComponent>,
    contained: bool,
    /// Product over the first prime for which the sandwich closed in every
    /// degree `<= upto`, with the compared dimensions.
    modular: Option<(GradedIdeal<PrimeField>, Vec<DegreeComparison>)>,
}

fn certify(family: &[LinearIdeal], comps: Vec<PrimaryComponent>, upto: u32) -> Result<Certified> {
    let contained = containment(family, &comps)?;
    let mut modular = None;
    if contained {
        for &p in &MODULAR_PRIMES {
            let field = PrimeField::new(p)?;
            let (product, dims) = compare_dims(&field, family, &comps, upto)?;
            if dims.iter().all(|c| c.product == c.intersection) {
                modular = Some((product, dims));
                break;
            }
        }
    }
    Ok(Certified {
        comps,
        contained,
        modular,
    })
}

fn decomposition_from(family: &[LinearIdeal], cert: &Certified, cap: u32) -> Result<DecompositionReport> {
    if (cap as usize) < family.len() {
        return Err(Error::Precondition(format!(
            "cap {cap} is below the product degree {}",
            family.len()
        )));
    }
    if let Some((product, dims)) = &cert.modular {
        if dims.len() > cap as usize {
            return Ok(DecompositionReport {
                cap,
                components: cert.comps.len(),
                comparisons: dims[..=cap as usize].to_vec(),
                containment: true,
                equal: true,
                certificate: Certificate::Modular {
                    prime: product.field().modulus(),
                },
            });
        }
    }
    let (_, comparisons) = compare_dims(&Rationals, family, &cert.comps, cap)?;
    let equal = cert.contained && comparisons.iter().all(|c| c.product == c.intersection);
    Ok(DecompositionReport {
        cap,
        components: cert.comps.len(),
        comparisons,
        containment: cert.contained,
        equal,
        certificate: Certificate::Exact,
    })
}

/// Window saturation below `top`: with `S_top = I_top = (⋂ C_A)_top`,
/// returns `dim S_e` for `e < top` from `S_e^⊥ = { φ ∘ x_k : φ ∈ S_{e+1}^⊥ }`.
/// Reduction mod `p` can only lower these ranks.
fn saturation_dims_below<F: Field>(field: &F, n: usize, comps: &[PrimaryComponent], top: u32, top_rank: usize) -> Result<Vec<usize>> {
    let duals = dual_components(field, n, comps)?;
    let weights = apolarity_weights(field, n, top);
    let mut perp = Echelon::new(field.clone(), degree_basis(n, top).len());
    'outer: for c in &duals {
        if top < c.exponent {
            // (C_A)_top = 0: every functional.
            for i in 0..perp.cols() {
                perp.insert(vec![(i, field.one())]);
            }
            break;
        }
        for row in perp_rows(field, n, c, top, &weights) {
            perp.insert(row);
            if perp.rank() >= top_rank {
                break 'outer;
            }
        }
    }
    let mut dims = vec![0usize; top as usize];
    for e in (0..top).rev() {
        let basis = degree_basis(n, e);
        let mut next = Echelon::new(field.clone(), basis.len());
        for phi in perp.rows() {
            let mut dense = vec![field.zero(); perp.cols()];
            for (c, v) in phi {
                dense[*c] = v.clone();
            }
            for k in 0..n {
                let row: SparseRow<F::Elem> = (0..basis.len())
                    .map(|i| (i, dense[basis.up(k, i)].clone()))
                    .filter(|(_, v)| !field.is_zero(v))
                    .collect();
                next.insert(row);
            }
        }
        dims[e as usize] = basis.len() - next.rank();
        perp = next;
    }
    Ok(dims)
}

fn saturation_from(family: &[LinearIdeal], cert: &Certified, cap: u32) -> Result<ProductSaturation> {
    if let Some((product, dims)) = &cert.modular {
        if dims.len() > cap as usize + 1 {
            let n = product.n();
            let window = |field_dims: &[usize], upto: usize| -> Vec<usize> {
                (0..upto).map(|e| field_dims[e] - dims[e].product).collect()
            };
            let top = cap + 1;
            let top_rank = degree_basis(n, top).len() - dims[top as usize].product;
            let modular = window(&saturation_dims_below(product.field(), n, &cert.comps, top, top_rank)?, top as usize);
            if modular[cap as usize] == 0 {
                // Defects vanish over ℚ wherever they vanish mod p.
                let j = modular.iter().rposition(|&v| v != 0).map_or(0, |i| i + 1);
                let mut profile = vec![0usize; cap as usize + 1];
                if j > 0 {
                    let top_rank = degree_basis(n, j as u32).len() - dims[j].product;
                    let below = saturation_dims_below(&Rationals, n, &cert.comps, j as u32, top_rank)?;
                    profile[..j].copy_from_slice(&window(&below, j));
                }
                let sat = Some(profile.iter().rposition(|&v| v != 0).map_or(0, |i| i as u32 + 1));
                return Ok(ProductSaturation {
                    report: SaturationReport { cap, sat, profile },
                    certificate: Certificate::Modular {
                        prime: product.field().modulus(),
                    },
                });
            }
        }
    }
    Ok(ProductSaturation {
        report: product_generators(&Rationals, family)?.saturation(cap),
        certificate: Certificate::Exact,
    })
}

fn regularity_from(family: &[LinearIdeal], cert: &Certified, cap: u32) -> Result<ProductRegularity> {
    let d = family.len() as i64;
    if let Some((product, dims)) = &cert.modular {
        if dims.len() > cap as usize {
            let modular = betti::regularity(product, cap)?;
            // β_ℚ <= β_p entrywise, and reg >= d from the generators.
            if modular.value == d {
                return Ok(ProductRegularity {
                    result: RegularityResult {
                        value: d,
                        certified: false,
                        cap,
                        witness: (0, d as u32),
                    },
                    certificate: Certificate::Modular {
                        prime: product.field().modulus(),
                    },
                });
            }
        }
    }
    Ok(ProductRegularity {
        result: betti::regularity(&product_generators(&Rationals, family)?, cap)?,
        certificate: Certificate::Exact,
    })
}

/// Compares the product with the intersection of `comps` in degrees `<= cap`.
pub fn verify_components(family: &[LinearIdeal], comps: &[PrimaryComponent], cap: u32) -> Result<DecompositionReport> {
    check_family(family)?;
    decomposition_from(family, &certify(family, comps.to_vec(), cap)?, cap)
}

/// [`verify_components`] against all `2^d - 1` components.
pub fn verify_decomposition(family: &[LinearIdeal], cap: u32) -> Result<DecompositionReport> {
    verify_components(family, &primary_components(family)?, cap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductSaturation {
    #[serde(flatten)]
    pub report: SaturationReport,
    pub certificate: Certificate,
}

/// Saturation profile of `I_1 ⋯ I_d` over ℚ in the window `[0, cap]`.
pub fn product_saturation(family: &[LinearIdeal], cap: u32) -> Result<ProductSaturation> {
    check_family(family)?;
    saturation_from(family, &certify(family, primary_components(family)?, cap + 1)?, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductRegularity {
    #[serde(flatten)]
    pub result: RegularityResult,
    pub certificate: Certificate,
}

/// `reg(I_1 ⋯ I_d)` over ℚ read off the Betti numbers with `j <= cap`.
pub fn product_regularity(family: &[LinearIdeal], cap: u32) -> Result<ProductRegularity> {
    check_family(family)?;
    regularity_from(family, &certify(family, primary_components(family)?, cap)?, cap)
}

/// Decomposition, saturation and regularity of one product, sharing the
/// certification work.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductChecks {
    pub decomposition: DecompositionReport,
    pub saturation: ProductSaturation,
    pub regularity: ProductRegularity,
}

pub fn product_checks(family: &[LinearIdeal], decomposition_cap: u32, saturation_cap: u32, regularity_cap: u32) -> Result<ProductChecks> {
    check_family(family)?;
    let upto = decomposition_cap.max(saturation_cap + 1).max(regularity_cap);
    let cert = certify(family, primary_components(family)?, upto)?;
    Ok(ProductChecks {
        decomposition: decomposition_from(family, &cert, decomposition_cap)?,
        saturation: saturation_from(family, &cert, saturation_cap)?,
        regularity: regularity_from(family, &cert, regularity_cap)?,
    })
}


/// Outcome of the colon test `J : m = I_A` for the family `I_i = (x_i, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedPrimeReport {
    pub subset: Vec<usize>,
    pub witness: String,
    pub component: LinearIdeal,
    /// `(degree, dim (J : m)_e, dim (I_A)_e)`.
    pub comparisons: Vec<(u32, usize, usize)>,
    pub holds: bool,
}

/// `(x_i, y)` shape: returns the `x_i` and `y`.
fn coordinate_pair_shape(family: &[LinearIdeal]) -> Result<(Vec<usize>, usize)> {
    let n = check_family(family)?;
    let bad = || Error::Precondition("the family is not of the shape (x_i, y)".into());
    if n != family.len() + 1 {
        return Err(bad());
    }
    let mut supports = Vec::with_capacity(family.len());
    for v in family {
        let coordinate = v.dim() == 2
            && v.rref.iter().all(|r| r.iter().filter(|c| !c.is_zero()).count() == 1);
        if !coordinate {
            return Err(bad());
        }
        supports.push([v.pivots[0], v.pivots[1]]);
    }
    let y = if family.len() == 1 {
        supports[0][1]
    } else {
        let common: Vec<usize> = supports[0]
            .iter()
            .copied()
            .filter(|c| supports.iter().all(|s| s.contains(c)))
            .collect();
        match common.as_slice() {
            [y] => *y,
            _ => return Err(bad()),
        }
    };
    let xs: Vec<usize> = supports
        .iter()
        .map(|s| if s[0] == y { s[1] } else { s[0] })
        .collect();
    let mut seen = xs.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != xs.len() {
        return Err(bad());
    }
    Ok((xs, y))
}

/// Checks `J : y^{|A|-1} ∏_{i∉A} x_i = I_A` degreewise up to `cap`.
pub fn associated_prime_check(family: &[LinearIdeal], subset: &[usize], cap: u32) -> Result<AssociatedPrimeReport> {
    let (xs, y) = coordinate_pair_shape(family)?;
    let n = family[0].n;
    let component = sum_ideal(family, subset)?;
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();
    let mut exps = vec![0u32; n];
    exps[y] = subset.len() as u32 - 1;
    for (i, &x) in xs.iter().enumerate() {
        if !subset.contains(&i) {
            exps[x] = 1;
        }
    }
    let witness = Monomial::new(exps);
    let q = Rationals;
    let j = product_generators(&q, family)?;
    let target = component.to_graded(&q)?;
    let m = HomPolynomial::monomial(&q, witness.clone());
    let mut comparisons = Vec::with_capacity(cap as usize + 1);
    let mut holds = true;
    for e in 0..=cap {
        let colon = j.colon_piece(&m, e)?;
        let expected = target.degree_piece(e);
        holds &= colon.dim() == expected.dim() && expected.is_subspace_of(&colon);
        comparisons.push((e, colon.dim(), expected.dim()));
    }
    Ok(AssociatedPrimeReport {
        subset,
        witness: witness.to_string(),
        component,
        comparisons,
        holds,
    })
}

/// The family `I_i = (x_i, y)` in `K[x_1..x_d, y]`.
pub fn example_pair_family(d: usize) -> Result<Vec<LinearIdeal>> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    (0..d).map(|i| LinearIdeal::coordinate(d + 1, &[i, d])).collect()
}

/// `d` random subspaces of `R_1`, `n` variables: each has a uniform number
/// of spanning rows in `1..=n` with entries uniform in `-9..=9`, resampled
/// until nonzero.
pub fn random_family(n: usize, d: usize, seed: u64) -> Result<Vec<LinearIdeal>> {
    if n == 0 || d == 0 {
        return Err(Error::Precondition("need n >= 1 and d >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = Vec::with_capacity(d);
    while family.len() < d {
        let k = rng.gen_range(1..=n);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        match LinearIdeal::from_integer_rows(n, &rows) {
            Ok(v) => family.push(v),
            Err(Error::EmptyIdeal) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(family)
}

/// Names of the variables of `R`, for display.
pub fn variable_names(n: usize) -> Vec<String> {
    (0..n).map(|i| variable_name(i, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_prime;
    use crate::linalg::intersect_subspaces;

    fn lin(n: usize, rows: &[&[i64]]) -> LinearIdeal {
        LinearIdeal::from_integer_rows(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn primes_are_prime() {
        assert!(MODULAR_PRIMES.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn construction_row_reduces() {
        let v = lin(3, &[&[2, 4, 0], &[1, 2, 0], &[0, 3, 3]]);
        assert_eq!(v.dim(), 2);
        assert_eq!(v.to_text(), "[[1,0,-2],[0,1,1]]");
        assert_eq!(v.forms_text(), "(a - 2*c, b + c)");
        assert_eq!(v.annihilator_basis(), vec![vec![BigInt::from(2), BigInt::from(-1), BigInt::from(1)]]);
        assert_eq!(LinearIdeal::from_integer_rows(2, &[vec![0, 0]]).unwrap_err(), Error::EmptyIdeal);
    }

    #[test]
    fn sums() {
        let fam = vec![lin(3, &[&[1, 0, 0]]), lin(3, &[&[0, 1, 0]])];
        assert_eq!(sum_ideal(&fam, &[0, 1]).unwrap(), lin(3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(sum_ideal(&fam, &[1]).unwrap(), fam[1]);
        assert_eq!(sum_ideal(&fam, &[]).unwrap_err(), Error::EmptySubset);
        let ex = example_pair_family(3).unwrap();
        assert_eq!(sum_ideal(&ex, &[0, 2]).unwrap(), LinearIdeal::coordinate(4, &[0, 2, 3]).unwrap());
    }

    #[test]
    fn products() {
        let q = Rationals;
        let fam = vec![lin(3, &[&[1, 0, 0], &[0, 1, 0]]), lin(3, &[&[0, 1, 0], &[0, 0, 1]])];
        let p = product_generators(&q, &fam).unwrap();
        assert_eq!(p.gens().len(), 4);
        assert_eq!(p.hilbert_value(2), 6 - 4);
        let ex = product_generators(&q, &example_pair_family(2).unwrap()).unwrap();
        assert_eq!(ex.as_monomial().unwrap().to_text(), "ideal(a*b, a*c, b*c, c^2)");
        let single = product_generators(&q, &fam[..1]).unwrap();
        assert_eq!(single.degree_piece(1).dim(), 2);
    }

    #[test]
    fn power_pieces() {
        let q = Rationals;
        let x = lin(2, &[&[1, 0]]);
        let p = power_piece(&q, &x, 2, 2).unwrap();
        assert_eq!(p.dim(), 1);
        assert!(p.contains(&HomPolynomial::monomial(&q, Monomial::new(vec![2, 0]))));
        assert_eq!(power_piece(&q, &LinearIdeal::full(3), 3, 3).unwrap().dim(), 10);
        let v = lin(3, &[&[1, 0, 0], &[0, 1, -1]]);
        let adapted = power_piece(&q, &v, 2, 2).unwrap();
        assert_eq!(adapted.dim(), 3);
        // Spanning-set route: V^k R_{e-k}.
        for (k, e) in [(2u32, 2u32), (2, 3), (3, 4)] {
            let gens = product_generators(&q, &vec![v.clone(); k as usize]).unwrap();
            assert_eq!(gens.degree_piece(e).dim(), power_piece(&q, &v, k, e).unwrap().dim());
        }
    }

    #[test]
    fn perp_rows_annihilate_powers() {
        let q = Rationals;
        let v = lin(3, &[&[1, 2, 0], &[0, 1, -1]]);
        let comp = PrimaryComponent::new(vec![0, 1], v.clone());
        let duals = dual_components(&q, 3, &[comp]).unwrap();
        for e in 2..=4 {
            let piece = power_piece(&q, &v, 2, e).unwrap();
            let weights = apolarity_weights(&q, 3, e);
            let perps = perp_rows(&q, 3, &duals[0], e, &weights);
            assert_eq!(crate::linalg::rank_of(&q, piece.ambient_dim(), perps.clone()), piece.ambient_dim() - piece.dim());
            for r in piece.rows() {
                assert!(perps.iter().all(|p| dot(&q, r, p) == BigRational::zero()));
            }
        }
    }

    #[test]
    fn components_of_examples() {
        let one = vec![lin(2, &[&[1, 1]])];
        let c = primary_components(&one).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].exponent, c[0].maximal), (1, false));
        let ex = primary_components(&example_pair_family(2).unwrap()).unwrap();
        let shown: Vec<(Vec<usize>, String, u32)> =
            ex.iter().map(|c| (c.subset.clone(), c.ideal.forms_text(), c.exponent)).collect();
        assert_eq!(
            shown,
            vec![
                (vec![0], "(a, c)".to_string(), 1),
                (vec![1], "(b, c)".to_string(), 1),
                (vec![0, 1], "(a, b, c)".to_string(), 2)
            ]
        );
        let big: Vec<LinearIdeal> = (0..13).map(|_| LinearIdeal::full(2)).collect();
        assert!(matches!(primary_components(&big), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn decomposition_example_pairs() {
        let fam = example_pair_family(2).unwrap();
        let r = verify_decomposition(&fam, 4).unwrap();
        assert!(r.equal && r.containment);
        assert_eq!(r.comparisons.len(), 5);
        let single = verify_decomposition(&[lin(3, &[&[1, -1, 2]])], 3).unwrap();
        assert!(single.equal);
    }

    #[test]
    fn decomposition_matches_direct_intersection() {
        let q = Rationals;
        let fam = random_family(4, 3, 7).unwrap();
        let comps = primary_components(&fam).unwrap();
        let report = verify_decomposition(&fam, 5).unwrap();
        assert!(report.equal);
        let product = product_generators(&q, &fam).unwrap();
        for e in 0..=5u32 {
            let pieces: Vec<Vec<SparseRow<BigRational>>> = comps
                .iter()
                .map(|c| power_piece(&q, &c.ideal, c.exponent, e).unwrap().rows().to_vec())
                .collect();
            let total = degree_basis(4, e).len();
            let inter = intersect_subspaces(&q, total, &pieces).len();
            assert_eq!(inter, product.degree_piece(e).dim(), "degree {e}");
            assert_eq!(report.comparisons[e as usize].intersection, inter);
        }
    }

    #[test]
    fn missing_component_is_detected() {
        let fam = example_pair_family(2).unwrap();
        let comps = primary_components(&fam).unwrap();
        let r = verify_components(&fam, &comps[..2], 4).unwrap();
        assert!(!r.equal);
        assert_eq!(r.certificate, Certificate::Exact);
        assert!(r.comparisons.iter().any(|c| c.intersection > c.product));
    }

    #[test]
    fn linear_generality() {
        assert!(is_linearly_general(&[lin(3, &[&[1, 2, 3]])]).unwrap());
        // n = 3: dim(V_1 + V_2) = 3 = min(3, 4).
        assert!(is_linearly_general(&example_pair_family(2).unwrap()).unwrap());
        assert!(!is_linearly_general(&example_pair_family(3).unwrap()).unwrap());
        let fam = vec![lin(3, &[&[1, 0, 0]]), lin(3, &[&[0, 1, 0]]), lin(3, &[&[1, 1, 1], &[1, -1, 2]])];
        assert!(is_linearly_general(&fam).unwrap());
        let reduced = reduced_components(&fam).unwrap();
        assert_eq!(reduced.len(), 4);
        assert!(verify_components(&fam, &reduced, 6).unwrap().equal);
        let m = reduced_components(&[LinearIdeal::full(3)]).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].maximal);
        assert!(reduced_components(&example_pair_family(3).unwrap()).is_err());
    }

    #[test]
    fn saturation_of_products() {
        let ex = example_pair_family(2).unwrap();
        let s = product_saturation(&ex, 4).unwrap();
        assert_eq!(s.report.sat, Some(2));
        let not_spanning = vec![lin(3, &[&[1, 0, 0]]), lin(3, &[&[1, 1, 0]])];
        let s = product_saturation(&not_spanning, 4).unwrap();
        assert!(s.report.profile.iter().all(|&v| v == 0));
        let exact = product_generators(&Rationals, &ex).unwrap().saturation(4);
        assert_eq!(product_saturation(&ex, 4).unwrap().report, exact);
    }

    #[test]
    fn regularity_of_products() {
        let fam = random_family(3, 3, 11).unwrap();
        let r = product_regularity(&fam, 6).unwrap();
        assert_eq!(r.result.value, 3);
        let exact = betti::regularity(&product_generators(&Rationals, &fam).unwrap(), 6).unwrap();
        assert_eq!(exact.value, 3);
    }

    #[test]
    fn associated_primes_of_pairs() {
        let fam = example_pair_family(2).unwrap();
        let r = associated_prime_check(&fam, &[0], 3).unwrap();
        assert_eq!(r.witness, "b");
        assert_eq!(r.component.forms_text(), "(a, c)");
        assert!(r.holds);
        let r = associated_prime_check(&fam, &[0, 1], 3).unwrap();
        assert_eq!(r.witness, "c");
        assert!(r.holds);
        let fam3 = example_pair_family(3).unwrap();
        let r = associated_prime_check(&fam3, &[0, 1, 2], 3).unwrap();
        assert_eq!(r.witness, "d^2");
        assert!(r.holds);
        let bad = vec![lin(3, &[&[1, 0, 0], &[0, 1, 0]]), lin(3, &[&[1, 1, 0], &[0, 0, 1]])];
        assert!(associated_prime_check(&bad, &[0], 2).is_err());
    }

    #[test]
    fn random_families_are_reproducible() {
        let a = random_family(4, 3, 42).unwrap();
        assert_eq!(a, random_family(4, 3, 42).unwrap());
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|v| v.dim() >= 1 && v.n() == 4));
    }
}
