//! Dense exact matrices and the elimination kernel.

use std::fmt;

use super::{Field, Scalar};

/// Dense matrix over `Q` or `Q(i)`, row-major. Shapes with zero rows or
/// columns are valid and behave as identities of block concatenation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        assert!(
            entries.iter().all(|e| e.field() == field),
            "all entries must share the matrix field tag"
        );
        ExactMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix::from_entries(field, rows, cols, entries)
    }

    /// Convenience constructor from integer rows, mostly for tests.
    pub fn from_int_rows(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        ExactMatrix::from_fn(field, r, c, |i, j| Scalar::from_int(field, rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        assert_eq!(v.field(), self.field, "field tag mismatch");
        self.entries[r * self.cols + c] = v;
    }

    /// Row `r` as a contiguous slice.
    pub fn row(&self, r: usize) -> &[Scalar] {
        assert!(r < self.rows, "row out of bounds");
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// All entries, row-major.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Conjugate transpose: plain transpose over the `R` model, Hermitian
    /// adjoint over `C`.
    pub fn conj_transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).conj()
        })
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.get(r, c) + rhs.get(r, c)
        })
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.get(r, c) - rhs.get(r, c)
        })
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |r, c| -self.get(r, c))
    }

    pub fn scale(&self, k: &Scalar) -> ExactMatrix {
        ExactMatrix::from_fn(self.field, self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = ExactMatrix::zero(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + out.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(r).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, block: &ExactMatrix, r0: usize, c0: usize) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Block-diagonal concatenation; empty blocks contribute only offsets.
    pub fn block_diag(field: Field, blocks: &[ExactMatrix]) -> ExactMatrix {
        let rows = blocks.iter().map(ExactMatrix::rows).sum();
        let cols = blocks.iter().map(ExactMatrix::cols).sum();
        let mut out = ExactMatrix::zero(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(b, r0, c0);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row-echelon form with the pivot columns and the rank.
    /// Pivoting takes the first nonzero entry in each column; exact
    /// arithmetic makes any pivot choice correct.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row >= a.rows {
                break;
            }
            let Some(hit) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if hit != pivot_row {
                for c in 0..a.cols {
                    let x = a.get(hit, c).clone();
                    let y = a.get(pivot_row, c).clone();
                    a.set(hit, c, y);
                    a.set(pivot_row, c, x);
                }
            }
            let inv = a.get(pivot_row, col).inv().expect("nonzero pivot");
            for c in col..a.cols {
                let v = a.get(pivot_row, c) * &inv;
                a.set(pivot_row, c, v);
            }
            for r in 0..a.rows {
                if r == pivot_row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let v = a.get(r, c) - &(&factor * a.get(pivot_row, c));
                    a.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        Rref {
            reduced: a,
            pivot_cols,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column of the
    /// reduced form. The basis has exactly `cols - rank` vectors.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivot_cols.len() && pivot_cols[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -reduced.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b` exactly. Returns `None` when inconsistent,
    /// otherwise one particular solution together with a nullspace basis.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = ExactMatrix::zero(self.field, self.rows, self.cols + 1);
        aug.paste(self, 0, 0);
        for (r, v) in b.iter().enumerate() {
            aug.set(r, self.cols, v.clone());
        }
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = aug.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut particular = vec![Scalar::zero(self.field); self.cols];
        for (row, &pc) in pivot_cols.iter().enumerate() {
            particular[pc] = reduced.get(row, self.cols).clone();
        }
        Some(AffineSolution {
            particular,
            nullspace: self.nullspace_basis(),
        })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`ExactMatrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Result of [`ExactMatrix::solve_affine`].
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Incrementally built row space in echelon form. Used to grow a span one
/// vector at a time and test membership, which is what the greedy pattern
/// construction and the transversality check need.
#[derive(Debug, Clone)]
pub struct SpanTracker {
    field: Field,
    dim: usize,
    /// Echelon rows sorted by leading index; each lead entry is 1.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanTracker {
    pub fn new(field: Field, dim: usize) -> Self {
        SpanTracker {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Scalar>) -> Option<(usize, Vec<Scalar>)> {
        for (lead, row) in &self.rows {
            if !v[*lead].is_zero() {
                let factor = v[*lead].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&factor * y);
                    }
                }
            }
        }
        let lead = v.iter().position(|x| !x.is_zero())?;
        let inv = v[lead].inv().expect("nonzero lead");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        Some((lead, v))
    }

    /// Whether `v` already lies in the span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).is_none()
    }

    /// Insert `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        match self.reduce(v) {
            None => false,
            Some(entry) => {
                let pos = self
                    .rows
                    .binary_search_by_key(&entry.0, |(lead, _)| *lead)
                    .expect_err("leads are distinct");
                self.rows.insert(pos, entry);
                true
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::super::Rational;
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(Rational::new(n.into(), d.into()))
    }

    fn gi(re: i64, im: i64) -> Scalar {
        Scalar::Gaussian(super::super::GaussianRational::from_ints(re, im))
    }

    #[test]
    fn rref_empty_matrix() {
        let m = ExactMatrix::zero(Field::Real, 0, 0);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_identity() {
        let m = ExactMatrix::identity(Field::Real, 3);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn nullspace_full_rank_is_empty() {
        let m = ExactMatrix::identity(Field::Real, 2);
        assert!(m.nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_one_relation() {
        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1, 1]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        // (-1, 1) up to scaling
        assert_eq!(basis[0], vec![q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn nullspace_over_gaussian_field() {
        // [[1, i]]: kernel spanned by (-i, 1); checked by direct multiplication.
        let m = ExactMatrix::from_entries(Field::Complex, 1, 2, vec![gi(1, 0), gi(0, 1)]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        let product = m.mul_vec(&basis[0]);
        assert!(product.iter().all(Scalar::is_zero));
        assert!(!basis[0][0].is_zero() || !basis[0][1].is_zero());
    }

    #[test]
    fn solve_identity() {
        let m = ExactMatrix::identity(Field::Real, 2);
        let sol = m.solve_affine(&[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(sol.particular, vec![q(1, 1), q(2, 1)]);
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1, 1]]);
        let sol = m.solve_affine(&[q(3, 1)]).unwrap();
        assert_eq!(&sol.particular[0] + &sol.particular[1], q(3, 1));
        assert_eq!(sol.nullspace.len(), 1);
    }

    #[test]
    fn solve_inconsistent() {
        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1], &[1]]);
        assert!(m.solve_affine(&[q(1, 1), q(2, 1)]).is_none());
    }

    #[test]
    fn conj_transpose_examples() {
        let m = ExactMatrix::from_entries(Field::Complex, 1, 1, vec![gi(0, 1)]);
        assert_eq!(m.conj_transpose().get(0, 0), &gi(0, -1));

        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1, 2], &[3, 4]]);
        assert_eq!(
            m.conj_transpose(),
            ExactMatrix::from_int_rows(Field::Real, &[&[1, 3], &[2, 4]])
        );

        let m = ExactMatrix::zero(Field::Real, 2, 0);
        let t = m.conj_transpose();
        assert_eq!((t.rows(), t.cols()), (0, 2));
    }

    #[test]
    fn span_tracker_matches_rank() {
        let m = ExactMatrix::from_int_rows(Field::Real, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let mut span = SpanTracker::new(Field::Real, 3);
        assert!(span.insert(m.row(0).to_vec()));
        assert!(!span.insert(m.row(1).to_vec()));
        assert!(span.insert(m.row(2).to_vec()));
        assert_eq!(span.rank(), m.rank());
        assert!(span.contains(&[q(1, 1), q(3, 1), q(4, 1)]));
        assert!(!span.contains(&[q(0, 1), q(0, 1), q(1, 1)]));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn small_matrix(field: Field) -> impl Strategy<Value = ExactMatrix> {
        (0usize..=4, 0usize..=4).prop_flat_map(move |(r, c)| {
            let entry = match field {
                Field::Real => small_rational().prop_map(Scalar::Rational).boxed(),
                Field::Complex => (small_rational(), small_rational())
                    .prop_map(|(re, im)| {
                        Scalar::Gaussian(super::super::GaussianRational::new(re, im))
                    })
                    .boxed(),
            };
            proptest::collection::vec(entry, r * c)
                .prop_map(move |v| ExactMatrix::from_entries(field, r, c, v))
        })
    }

    proptest! {
        #[test]
        fn rank_invariant_under_adjoint(m in small_matrix(Field::Complex)) {
            prop_assert_eq!(m.rank(), m.conj_transpose().rank());
        }

        #[test]
        fn rank_invariant_under_transpose_real(m in small_matrix(Field::Real)) {
            prop_assert_eq!(m.rank(), m.conj_transpose().rank());
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix(Field::Real)) {
            let once = m.rref().reduced;
            let twice = once.rref().reduced;
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn rank_nullity(m in small_matrix(Field::Complex)) {
            prop_assert_eq!(m.cols(), m.rank() + m.nullspace_basis().len());
        }

        #[test]
        fn nullspace_vectors_are_in_kernel(m in small_matrix(Field::Complex)) {
            for v in m.nullspace_basis() {
                prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_consistency_matches_rank_test(
            m in small_matrix(Field::Real),
            seed in proptest::collection::vec(-3i64..=3, 0..=4),
        ) {
            let b: Vec<Scalar> = (0..m.rows())
                .map(|r| Scalar::from_int(Field::Real, seed.get(r).copied().unwrap_or(1)))
                .collect();
            let mut aug = ExactMatrix::zero(Field::Real, m.rows(), m.cols() + 1);
            aug.paste(&m, 0, 0);
            for (r, v) in b.iter().enumerate() {
                aug.set(r, m.cols(), v.clone());
            }
            let solvable = m.solve_affine(&b).is_some();
            prop_assert_eq!(solvable, m.rank() == aug.rank());
            if let Some(sol) = m.solve_affine(&b) {
                let residual: Vec<Scalar> = m
                    .mul_vec(&sol.particular)
                    .iter()
                    .zip(&b)
                    .map(|(x, y)| x - y)
                    .collect();
                prop_assert!(residual.iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn zero_dim_matrix_products() {
        let a = ExactMatrix::zero(Field::Real, 2, 0);
        let b = ExactMatrix::zero(Field::Real, 0, 3);
        let p = a.mul(&b);
        assert_eq!((p.rows(), p.cols()), (2, 3));
        assert!(p.is_zero());
        assert!(Rational::zero().is_zero());
    }
}
