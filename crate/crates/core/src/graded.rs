//! Degreewise views of homogeneous ideals: pieces `I_e`, Hilbert values,
//! colon pieces, saturation profiles and almost-regular tests.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::MonomialIdeal;
use crate::linalg::{Echelon, SparseRow};
use crate::monomial::{Monomial, MonomialBasis};
use crate::poly::HomPolynomial;

/// Monomial basis of `R_e` together with multiplication-by-variable tables.
#[derive(Debug)]
pub struct DegreeBasis {
    monomials: MonomialBasis,
    up: Vec<Vec<u32>>,
}

impl DegreeBasis {
    pub fn monomials(&self) -> &MonomialBasis {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Index of `x_k * w_i` in the basis of the next degree.
    pub fn up(&self, k: usize, i: usize) -> usize {
        self.up[k][i] as usize
    }

    /// `x_k * row`, re-indexed into the next degree.
    pub fn mul_var_row<E: Clone>(&self, k: usize, row: &[(usize, E)]) -> SparseRow<E> {
        let mut out: SparseRow<E> = row.iter().map(|(c, v)| (self.up(k, *c), v.clone())).collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }
}

/// Shared, lazily built basis of `R_e` in `n` variables.
pub fn degree_basis(n: usize, e: u32) -> Arc<DegreeBasis> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<DegreeBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache").get(&(n, e)) {
        return b.clone();
    }
    let monomials = MonomialBasis::new(n, e);
    let next = MonomialBasis::new(n, e + 1);
    let up = (0..n)
        .map(|k| {
            monomials
                .monomials()
                .iter()
                .map(|m| next.index_of(&m.mul_var(k)).expect("degree e+1 monomial") as u32)
                .collect()
        })
        .collect();
    let built = Arc::new(DegreeBasis { monomials, up });
    cache
        .lock()
        .expect("basis cache")
        .entry((n, e))
        .or_insert(built)
        .clone()
}

/// A subspace of `R_e`.
#[derive(Debug, Clone)]
pub struct DegreePiece<F: Field> {
    degree: u32,
    basis: Arc<DegreeBasis>,
    echelon: Echelon<F>,
    spanning: Vec<SparseRow<F::Elem>>,
    from_lower: Option<usize>,
}

impl<F: Field> DegreePiece<F> {
    /// The span of `rows`; only independent rows are kept.
    pub fn from_rows(field: &F, n: usize, degree: u32, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> Self {
        let basis = degree_basis(n, degree);
        let mut echelon = Echelon::new(field.clone(), basis.len());
        let mut spanning = Vec::new();
        for r in rows {
            if echelon.insert(r.clone()) {
                spanning.push(r);
            }
        }
        Self {
            degree,
            basis,
            echelon,
            spanning,
            from_lower: None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// `dim R_e`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Arc<DegreeBasis> {
        &self.basis
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.echelon
    }

    /// Independent rows spanning the piece, as originally produced (sparse).
    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.spanning
    }

    /// For ideal pieces: `dim (R_1 I_{e-1})`.
    pub fn from_lower(&self) -> Option<usize> {
        self.from_lower
    }

    pub fn contains_row(&self, row: &[(usize, F::Elem)]) -> bool {
        self.echelon.contains(row)
    }

    pub fn contains(&self, f: &HomPolynomial<F>) -> bool {
        f.is_zero() || (f.degree() == self.degree && self.contains_row(&f.to_row(self.basis.monomials())))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.spanning.iter().all(|r| other.contains_row(r))
    }

    /// Reduced row-echelon basis as polynomials.
    pub fn polynomials(&self) -> Vec<HomPolynomial<F>> {
        let n = self.basis.monomials().get(0).n();
        self.echelon
            .rref()
            .iter()
            .map(|r| HomPolynomial::from_row(n, self.basis.monomials(), r))
            .collect()
    }
}

/// Dimension of `ker(x: (R/I)_e -> (R/I)_{e+1})` and the saturation data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub cap: u32,
    /// `None` when `I^sat` and `I` still differ in degree `cap`.
    pub sat: Option<u32>,
    /// `dim (I^sat / I)_e` for `e = 0..=cap`.
    pub profile: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostRegularReport {
    pub cap: u32,
    /// `dim ker(x)` on `(R/I)_e` for `e = 0..=cap`.
    pub kernel_profile: Vec<usize>,
    pub saturation: SaturationReport,
    /// Least `j` with `x` injective on `(R/I)_e` for all `j <= e <= cap`.
    pub injective_from: Option<u32>,
    /// Injective on the whole window `[sat, cap]`.
    pub verdict: bool,
}

/// A homogeneous ideal given by generators, with a cache of its pieces.
pub struct GradedIdeal<F: Field> {
    field: F,
    n: usize,
    gens: Vec<HomPolynomial<F>>,
    monomial: Option<MonomialIdeal>,
    pieces: Mutex<Vec<Arc<DegreePiece<F>>>>,
}

impl<F: Field> Clone for GradedIdeal<F> {
    fn clone(&self) -> Self {
        Self {
            field: self.field.clone(),
            n: self.n,
            gens: self.gens.clone(),
            monomial: self.monomial.clone(),
            pieces: Mutex::new(self.pieces.lock().expect("piece cache").clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for GradedIdeal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> GradedIdeal<F> {
    /// An empty generator list gives the zero ideal.
    pub fn new(field: F, n: usize, gens: Vec<HomPolynomial<F>>) -> Result<Self> {
        for g in &gens {
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if g.n() != n {
                return Err(Error::AmbientMismatch { left: n, right: g.n() });
            }
        }
        let monomials: Option<Vec<Monomial>> = gens.iter().map(|g| g.as_monomial().cloned()).collect();
        let monomial = match monomials {
            Some(ms) if !ms.is_empty() => Some(MonomialIdeal::new(n, ms)?),
            _ => None,
        };
        Ok(Self {
            field,
            n,
            gens,
            monomial,
            pieces: Mutex::new(Vec::new()),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[HomPolynomial<F>] {
        &self.gens
    }

    pub fn as_monomial(&self) -> Option<&MonomialIdeal> {
        self.monomial.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.gens.iter().map(HomPolynomial::degree).max().unwrap_or(0)
    }

    pub fn min_gen_degree(&self) -> u32 {
        self.gens.iter().map(HomPolynomial::degree).min().unwrap_or(0)
    }

    /// `I_e` as a subspace of `R_e`.
    pub fn degree_piece(&self, e: u32) -> Arc<DegreePiece<F>> {
        let mut pieces = self.pieces.lock().expect("piece cache");
        while pieces.len() <= e as usize {
            let d = pieces.len() as u32;
            let piece = self.build_piece(d, pieces.last().map(Arc::as_ref));
            pieces.push(Arc::new(piece));
        }
        pieces[e as usize].clone()
    }

    fn build_piece(&self, e: u32, prev: Option<&DegreePiece<F>>) -> DegreePiece<F> {
        let basis = degree_basis(self.n, e);
        let one = self.field.one();
        if let Some(mi) = &self.monomial {
            let mut echelon = Echelon::new(self.field.clone(), basis.len());
            let mut spanning = Vec::new();
            let mut lower = 0;
            for (i, w) in basis.monomials().monomials().iter().enumerate() {
                let mut member = false;
                for g in mi.gens() {
                    if g.divides(w) {
                        member = true;
                        if g.degree() < e {
                            lower += 1;
                            break;
                        }
                    }
                }
                if member {
                    let row = vec![(i, one.clone())];
                    echelon.insert(row.clone());
                    spanning.push(row);
                }
            }
            return DegreePiece {
                degree: e,
                basis,
                echelon,
                spanning,
                from_lower: Some(lower),
            };
        }
        let mut echelon = Echelon::new(self.field.clone(), basis.len());
        let mut spanning = Vec::new();
        if let (Some(prev), true) = (prev, e > 0) {
            let below = degree_basis(self.n, e - 1);
            for row in prev.rows() {
                for k in 0..self.n {
                    let r = below.mul_var_row(k, row);
                    if echelon.insert(r.clone()) {
                        spanning.push(r);
                    }
                }
            }
        }
        let lower = echelon.rank();
        for g in self.gens.iter().filter(|g| g.degree() == e) {
            let r = g.to_row(basis.monomials());
            if echelon.insert(r.clone()) {
                spanning.push(r);
            }
        }
        DegreePiece {
            degree: e,
            basis,
            echelon,
            spanning,
            from_lower: Some(lower),
        }
    }

    /// `dim_K (R/I)_e`.
    pub fn hilbert_value(&self, e: u32) -> usize {
        let p = self.degree_piece(e);
        p.ambient_dim() - p.dim()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.field.characteristic() != other.field.characteristic() {
            return Err(Error::Precondition("ideals over different fields".into()));
        }
        Ok(())
    }

    /// `IJ`; monomial inputs give the minimal generators `G(IJ)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if let (Some(a), Some(b)) = (&self.monomial, &other.monomial) {
            return Ok(a.product(b)?.to_graded(&self.field));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(&self.field, g));
            }
        }
        Self::new(self.field.clone(), self.n, gens)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(self.field.clone(), self.n, gens)
    }

    /// `(I : g)_e = { f in R_e : f g in I_{e + deg g} }`.
    pub fn colon_piece(&self, g: &HomPolynomial<F>, e: u32) -> Result<DegreePiece<F>> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if g.n() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: g.n(),
            });
        }
        let target = self.degree_piece(e + g.degree());
        let source = degree_basis(self.n, e);
        let t = target.ambient_dim();
        let one = self.field.one();
        let images = source
            .monomials()
            .monomials()
            .iter()
            .map(|w| target.echelon().reduce(&g.mul_monomial(w).to_row(target.basis().monomials())));
        Ok(kernel_piece(&self.field, self.n, e, t, images, &one))
    }

    /// Saturation profile computed top-down from degree `cap + 1`:
    /// `S_{cap+1} = I_{cap+1}` and `S_e = { f : x_k f in S_{e+1} for all k }`.
    /// This equals `(I^sat)_e` whenever `sat(I) <= cap + 1`.
    pub fn saturation(&self, cap: u32) -> SaturationReport {
        let top = self.degree_piece(cap + 1);
        let mut upper: Echelon<F> = top.echelon().clone();
        let mut profile = vec![0usize; cap as usize + 1];
        let one = self.field.one();
        for e in (0..=cap).rev() {
            let source = degree_basis(self.n, e);
            let t = upper.cols();
            let images = (0..source.len()).map(|i| {
                let mut row: SparseRow<F::Elem> = Vec::new();
                for k in 0..self.n {
                    let r = upper.reduce(&[(source.up(k, i), one.clone())]);
                    row.extend(r.into_iter().map(|(c, v)| (k * t + c, v)));
                }
                row
            });
            let s = kernel_piece(&self.field, self.n, e, self.n * t, images, &one);
            let own = self.degree_piece(e);
            debug_assert!(own.is_subspace_of(&s));
            profile[e as usize] = s.dim() - own.dim();
            upper = s.echelon;
        }
        let sat = if profile[cap as usize] != 0 {
            None
        } else {
            let mut j = cap;
            while j > 0 && profile[j as usize - 1] == 0 {
                j -= 1;
            }
            Some(j)
        };
        SaturationReport { cap, sat, profile }
    }

    /// Injectivity profile of multiplication by the linear form `x` on `R/I`.
    pub fn almost_regular(&self, x: &HomPolynomial<F>, cap: u32) -> Result<AlmostRegularReport> {
        if x.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if x.degree() != 1 {
            return Err(Error::Precondition("multiplier must be a linear form".into()));
        }
        let mut kernel_profile = Vec::with_capacity(cap as usize + 1);
        for e in 0..=cap {
            let colon = self.colon_piece(x, e)?;
            kernel_profile.push(colon.dim() - self.degree_piece(e).dim());
        }
        let saturation = self.saturation(cap);
        let injective_from = if kernel_profile[cap as usize] != 0 {
            None
        } else {
            let mut j = cap as usize;
            while j > 0 && kernel_profile[j - 1] == 0 {
                j -= 1;
            }
            Some(j as u32)
        };
        let verdict = match (saturation.sat, injective_from) {
            (Some(s), Some(j)) => j <= s,
            _ => false,
        };
        Ok(AlmostRegularReport {
            cap,
            kernel_profile,
            saturation,
            injective_from,
            verdict,
        })
    }
}

/// Kernel of `w_i -> images[i]` on `R_e`, via an augmented echelon whose
/// image columns come first.
fn kernel_piece<F: Field>(
    field: &F,
    n: usize,
    e: u32,
    image_cols: usize,
    images: impl Iterator<Item = SparseRow<F::Elem>>,
    one: &F::Elem,
) -> DegreePiece<F> {
    let source_len = degree_basis(n, e).len();
    let mut aug = Echelon::new(field.clone(), image_cols + source_len);
    for (i, mut row) in images.enumerate() {
        row.push((image_cols + i, one.clone()));
        aug.insert(row);
    }
    let kernel = aug
        .rows()
        .iter()
        .filter(|r| r[0].0 >= image_cols)
        .map(|r| r.iter().map(|(c, v)| (c - image_cols, v.clone())).collect::<SparseRow<F::Elem>>())
        .collect::<Vec<_>>();
    DegreePiece::from_rows(field, n, e, kernel)
}

/// Krull dimension of `R/I`: `n` minus the least size of a variable set
/// meeting every generator's support.
pub fn dimension_monomial(ideal: &MonomialIdeal) -> Result<usize> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.n();
    if n > 24 {
        return Err(Error::GuardExceeded {
            what: "variables for cover search",
            size: n,
            limit: 24,
        });
    }
    let supports: Vec<u32> = ideal
        .gens()
        .iter()
        .map(|g| g.support().iter().fold(0u32, |acc, &i| acc | (1 << i)))
        .collect();
    let mut best = n;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < best && supports.iter().all(|s| s & mask != 0) {
            best = size;
        }
    }
    Ok(n - best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::count_of_degree;

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

    /// `(x, y)(y, z)` written with general polynomial arithmetic.
    fn xy_yz() -> GradedIdeal<Rationals> {
        let a = GradedIdeal::new(Rationals, 3, vec![lin(&[1, 0, 0]), lin(&[0, 1, 0])]).unwrap();
        let b = GradedIdeal::new(Rationals, 3, vec![lin(&[0, 1, 0]), lin(&[0, 0, 1])]).unwrap();
        a.product(&b).unwrap()
    }

    #[test]
    fn example_pieces() {
        let j = example_j().to_graded(&Rationals);
        assert_eq!(j.degree_piece(3).dim(), 4);
        assert_eq!(j.degree_piece(0).dim(), 0);
        assert_eq!(j.hilbert_value(3), 16);
        let p = xy_yz();
        assert_eq!(p.degree_piece(2).dim(), 4);
    }

    #[test]
    fn zero_and_maximal_hilbert_values() {
        let zero = GradedIdeal::new(Rationals, 3, vec![]).unwrap();
        assert_eq!(zero.hilbert_value(2), 6);
        let max = MonomialIdeal::maximal(3).to_graded(&Rationals);
        for e in 1..5 {
            assert_eq!(max.hilbert_value(e), 0);
        }
    }

    #[test]
    fn general_route_matches_monomial_route() {
        let j = example_j();
        let mono = j.to_graded(&Rationals);
        let mut gens: Vec<_> = j.gens().iter().map(|g| HomPolynomial::monomial(&Rationals, g.clone())).collect();
        // A redundant binomial forces the polynomial route.
        gens.push(gens[0].mul(&Rationals, &lin(&[1, 0, 0, 0])).mul(&Rationals, &lin(&[0, 1, 0, 0])));
        let redundant = HomPolynomial::new(
            &Rationals,
            4,
            vec![(m(&[2, 1, 0, 0]), Rationals.one()), (m(&[1, 1, 1, 0]), Rationals.from_i64(3))],
        )
        .unwrap();
        gens.push(redundant);
        let general = GradedIdeal::new(Rationals, 4, gens).unwrap();
        assert!(general.as_monomial().is_none());
        for e in 0..7 {
            let (a, b) = (mono.degree_piece(e), general.degree_piece(e));
            assert_eq!(a.dim(), b.dim(), "degree {e}");
            assert_eq!(a.from_lower(), b.from_lower(), "degree {e}");
            assert!(a.is_subspace_of(&b) && b.is_subspace_of(&a));
        }
        assert_eq!(mono.degree_piece(5).ambient_dim(), count_of_degree(4, 5));
    }

    #[test]
    fn colon_examples() {
        let x2 = MonomialIdeal::principal(m(&[2, 0])).to_graded(&Rationals);
        let c = x2.colon_piece(&lin(&[1, 0]), 1).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&lin(&[1, 0])));
        // (x1, y)(x2, y) : x2 in degree 1 is span{y, x1}; variables x1, x2, y.
        let i1 = GradedIdeal::new(Rationals, 3, vec![lin(&[1, 0, 0]), lin(&[0, 0, 1])]).unwrap();
        let i2 = GradedIdeal::new(Rationals, 3, vec![lin(&[0, 1, 0]), lin(&[0, 0, 1])]).unwrap();
        let j = i1.product(&i2).unwrap();
        let c = j.colon_piece(&lin(&[0, 1, 0]), 1).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&lin(&[1, 0, 0])) && c.contains(&lin(&[0, 0, 1])));
    }

    #[test]
    fn saturation_examples() {
        let x = MonomialIdeal::principal(m(&[1, 0])).to_graded(&Rationals);
        let s = x.saturation(4);
        assert_eq!(s.sat, Some(0));
        assert!(s.profile.iter().all(|&d| d == 0));
        let m2 = MonomialIdeal::maximal(2).power(2).to_graded(&Rationals);
        let s = m2.saturation(4);
        assert_eq!(s.sat, Some(2));
        assert_eq!(s.profile, vec![1, 2, 0, 0, 0]);
        // A single variable power: nothing to saturate.
        let x3 = MonomialIdeal::principal(m(&[3])).to_graded(&Rationals);
        assert_eq!(x3.saturation(3).sat, Some(3));
    }

    #[test]
    fn almost_regular_examples() {
        let i = MonomialIdeal::principal(m(&[0, 1])).to_graded(&Rationals);
        let r = i.almost_regular(&lin(&[1, 0]), 5).unwrap();
        assert!(r.kernel_profile.iter().all(|&k| k == 0));
        assert!(r.verdict);
        let r = i.almost_regular(&lin(&[0, 1]), 5).unwrap();
        assert!(!r.verdict);
        assert!(i.almost_regular(&lin(&[0, 0]), 5).is_err());
    }

    #[test]
    fn krull_dimension() {
        assert_eq!(dimension_monomial(&MonomialIdeal::principal(m(&[1, 1]))).unwrap(), 1);
        assert_eq!(dimension_monomial(&MonomialIdeal::maximal(3)).unwrap(), 0);
        assert_eq!(dimension_monomial(&example_j()).unwrap(), 2);
        assert_eq!(
            dimension_monomial(&MonomialIdeal::principal(m(&[0, 0]))),
            Err(Error::UnitIdeal)
        );
    }
}
