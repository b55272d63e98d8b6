//! Sparse exact linear algebra over any [`Field`].
//!
//! Rows are sorted `(column, value)` lists with no stored zeros. The work
//! horse is [`Echelon`], an incrementally built row-echelon basis whose
//! pivot rows are monic.

use crate::field::Field;

pub type SparseRow<E> = Vec<(usize, E)>;

#[derive(Debug, Clone)]
pub struct SparseMatrix<E> {
    pub cols: usize,
    pub rows: Vec<SparseRow<E>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[Vec<E>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        Self { cols, rows }
    }

    pub fn push(&mut self, row: SparseRow<E>) {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        self.rows.push(row);
    }
}

/// `a - c * b` for sorted sparse rows.
pub fn sub_scaled<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    c: &F::Elem,
    b: &[(usize, F::Elem)],
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = field.neg(&field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_row<F: Field>(field: &F, row: &mut SparseRow<F::Elem>, c: &F::Elem) {
    for (_, v) in row.iter_mut() {
        *v = field.mul(v, c);
    }
}

/// Sorts `(column, value)` pairs and merges duplicate columns.
pub fn normalize_row<F: Field>(field: &F, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<F::Elem> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = field.add(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

const NO_PIVOT: u32 = u32::MAX;

/// An incrementally built echelon basis of a row space.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<SparseRow<F::Elem>>,
    pivot_of_col: Vec<u32>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; cols],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col] != NO_PIVOT
    }

    /// Leading columns of the stored rows, in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Reduces the leading entry until it has no pivot; returns the remainder.
    fn reduce_leading(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        while let Some((lead, c)) = row.first().cloned() {
            let p = self.pivot_of_col[lead];
            if p == NO_PIVOT {
                break;
            }
            row = sub_scaled(&self.field, &row, &c, &self.rows[p as usize]);
        }
        row
    }

    /// Adds `row` to the basis; returns `true` if it was independent.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        let mut row = self.reduce_leading(row);
        let Some((lead, c)) = row.first().cloned() else {
            return false;
        };
        if !self.field.is_one(&c) {
            let inv = self.field.inv(&c).expect("nonzero leading entry");
            scale_row(&self.field, &mut row, &inv);
        }
        self.pivot_of_col[lead] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: &[(usize, F::Elem)]) -> bool {
        self.reduce_leading(row.to_vec()).is_empty()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
        let mut row = row.to_vec();
        let mut k = 0;
        while k < row.len() {
            let (col, c) = row[k].clone();
            let p = self.pivot_of_col[col];
            if p == NO_PIVOT {
                k += 1;
                continue;
            }
            row = sub_scaled(&self.field, &row, &c, &self.rows[p as usize]);
            // Entries before position k are untouched: the pivot row starts at `col`.
        }
        row
    }

    /// Reduced row-echelon form, rows sorted by leading column.
    pub fn rref(&self) -> Vec<SparseRow<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut reduced: Vec<Option<SparseRow<F::Elem>>> = vec![None; self.rows.len()];
        let mut done = Echelon::new(self.field.clone(), self.cols);
        for &i in &order {
            let row = &self.rows[i];
            let lead = row[0].0;
            // Reduce everything except the leading entry by the rows already
            // in reduced form (all of which have larger leading columns).
            let tail: SparseRow<F::Elem> = row[1..].to_vec();
            let mut tail = done.reduce(&tail);
            let mut full = vec![row[0].clone()];
            full.append(&mut tail);
            done.pivot_of_col[lead] = done.rows.len() as u32;
            done.rows.push(full.clone());
            reduced[i] = Some(full);
        }
        let mut out: Vec<SparseRow<F::Elem>> = reduced.into_iter().flatten().collect();
        out.sort_by_key(|r| r[0].0);
        out
    }
}

/// Result of a full row reduction.
#[derive(Debug, Clone)]
pub struct RowReduction<E> {
    pub rref: Vec<SparseRow<E>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Basis of the right kernel `{v : A v = 0}`, one vector per free column.
    pub kernel: Vec<SparseRow<E>>,
}

/// Reduced row-echelon form, rank and kernel of `matrix`.
pub fn row_reduce<F: Field>(field: &F, matrix: &SparseMatrix<F::Elem>) -> RowReduction<F::Elem> {
    let ech = echelon_of(field, matrix.cols, matrix.rows.iter().cloned());
    let rref = ech.rref();
    let pivots: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
    let mut is_pivot = vec![false; matrix.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..matrix.cols).filter(|&c| !is_pivot[c]) {
        let mut v: SparseRow<F::Elem> = Vec::new();
        for row in &rref {
            if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v.push((row[0].0, field.neg(&row[pos].1)));
            }
        }
        v.push((free, field.one()));
        v.sort_by_key(|(c, _)| *c);
        kernel.push(v);
    }
    RowReduction {
        rank: rref.len(),
        rref,
        pivots,
        kernel,
    }
}

/// Builds an echelon basis, inserting the sparsest rows first.
pub fn echelon_of<F: Field>(
    field: &F,
    cols: usize,
    rows: impl IntoIterator<Item = SparseRow<F::Elem>>,
) -> Echelon<F> {
    let mut rows: Vec<SparseRow<F::Elem>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(Vec::len);
    let mut ech = Echelon::new(field.clone(), cols);
    for r in rows {
        ech.insert(r);
    }
    ech
}

pub fn rank_of<F: Field>(
    field: &F,
    cols: usize,
    rows: impl IntoIterator<Item = SparseRow<F::Elem>>,
) -> usize {
    echelon_of(field, cols, rows).rank()
}

/// Basis of `{v : <v, u> = 0 for all u in span(rows)}`.
pub fn annihilator<F: Field>(field: &F, cols: usize, rows: &[SparseRow<F::Elem>]) -> Vec<SparseRow<F::Elem>> {
    let m = SparseMatrix {
        cols,
        rows: rows.to_vec(),
    };
    row_reduce(field, &m).kernel
}

/// Basis (reduced echelon) of the intersection of the given subspaces of `F^cols`.
pub fn intersect_subspaces<F: Field>(
    field: &F,
    cols: usize,
    spaces: &[Vec<SparseRow<F::Elem>>],
) -> Vec<SparseRow<F::Elem>> {
    let mut relations: Vec<SparseRow<F::Elem>> = Vec::new();
    for s in spaces {
        relations.extend(annihilator(field, cols, s));
    }
    annihilator(field, cols, &relations)
}

pub fn dot<F: Field>(field: &F, a: &[(usize, F::Elem)], b: &[(usize, F::Elem)]) -> F::Elem {
    let mut acc = field.zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = field.add(&acc, &field.mul(&a[i].1, &b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}
