//! Quiver representations, orbit tangent spaces, and the transversality
//! oracle.
//!
//! A representation assigns one matrix per arrow. The tangent space to its
//! equivalence orbit is the image of `C -> [C, A]` with
//! `[C, A]_a = C_target * A_a - A_a * C_source`, one square block `C_i` per
//! vertex. A star pattern (a set of entry positions, one per parameter) is a
//! simplest miniversal deformation exactly when the pattern directions and
//! the tangent space span the whole representation space as a direct sum;
//! [`verify_transversal`] decides that by exact rank computations.

use std::fmt;

use crate::exact::{ExactMatrix, Field, Scalar, SpanTracker};

/// A directed graph; loops and parallel arrows are permitted. Arrows are
/// identified by their index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Self {
        assert!(
            arrows
                .iter()
                .all(|a| a.source < vertex_count && a.target < vertex_count),
            "arrow endpoint out of range"
        );
        Quiver {
            vertex_count,
            arrows,
        }
    }

    /// One vertex with one loop: matrices under similarity.
    pub fn loop_quiver() -> Self {
        Quiver::new(1, vec![Arrow { source: 0, target: 0 }])
    }

    /// Two vertices with two parallel arrows `U -> V`: matrix pencils.
    pub fn pencil_quiver() -> Self {
        Quiver::new(
            2,
            vec![
                Arrow { source: 0, target: 1 },
                Arrow { source: 0, target: 1 },
            ],
        )
    }

    /// Two vertices with opposite arrows: contragredient pencils.
    pub fn contragredient_quiver() -> Self {
        Quiver::new(
            2,
            vec![
                Arrow { source: 0, target: 1 },
                Arrow { source: 1, target: 0 },
            ],
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }
}

/// A matrix representation: one `n_target x n_source` matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: Vec<usize>,
    field: Field,
    mats: Vec<ExactMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, dims: Vec<usize>, field: Field, mats: Vec<ExactMatrix>) -> Self {
        assert_eq!(dims.len(), quiver.vertex_count(), "dimension vector length");
        assert_eq!(mats.len(), quiver.arrow_count(), "one matrix per arrow");
        for (arrow, m) in quiver.arrows().iter().zip(&mats) {
            assert_eq!(
                (m.rows(), m.cols()),
                (dims[arrow.target], dims[arrow.source]),
                "matrix shape must match the dimension vector"
            );
            assert_eq!(m.field(), field, "uniform field tag");
        }
        Representation {
            quiver,
            dims,
            field,
            mats,
        }
    }

    pub fn zero(quiver: Quiver, dims: Vec<usize>, field: Field) -> Self {
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| ExactMatrix::zero(field, dims[a.target], dims[a.source]))
            .collect();
        Representation::new(quiver, dims, field, mats)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mats(&self) -> &[ExactMatrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &ExactMatrix {
        &self.mats[arrow]
    }

    /// Dimension of the representation space over the field model.
    pub fn ambient_dim(&self) -> usize {
        self.mats.iter().map(|m| m.rows() * m.cols()).sum()
    }

    /// Flatten arrow-by-arrow, each matrix row-major. This convention fixes
    /// the coordinates used by every rank computation in this module.
    pub fn vectorize(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.ambient_dim());
        for m in &self.mats {
            v.extend_from_slice(m.entries());
        }
        v
    }

    /// Inverse of [`vectorize`](Self::vectorize) for the same quiver shape.
    pub fn from_vec(
        quiver: Quiver,
        dims: Vec<usize>,
        field: Field,
        v: &[Scalar],
    ) -> Representation {
        let mut mats = Vec::with_capacity(quiver.arrow_count());
        let mut offset = 0;
        for a in quiver.arrows() {
            let (r, c) = (dims[a.target], dims[a.source]);
            mats.push(ExactMatrix::from_entries(
                field,
                r,
                c,
                v[offset..offset + r * c].to_vec(),
            ));
            offset += r * c;
        }
        assert_eq!(offset, v.len(), "vector length mismatch");
        Representation::new(quiver, dims, field, mats)
    }

    /// All entry coordinates in arrow-major, row-major order: the default
    /// entry order of the greedy construction.
    pub fn entry_coordinates(&self) -> Vec<Star> {
        let mut out = Vec::with_capacity(self.ambient_dim());
        for (idx, m) in self.mats.iter().enumerate() {
            for row in 0..m.rows() {
                for col in 0..m.cols() {
                    out.push(Star {
                        arrow: idx,
                        row,
                        col,
                    });
                }
            }
        }
        out
    }

    /// Entry coordinates in arrow-major, column-major order; an alternative
    /// greedy entry order.
    pub fn entry_coordinates_col_major(&self) -> Vec<Star> {
        let mut out = Vec::with_capacity(self.ambient_dim());
        for (idx, m) in self.mats.iter().enumerate() {
            for col in 0..m.cols() {
                for row in 0..m.rows() {
                    out.push(Star {
                        arrow: idx,
                        row,
                        col,
                    });
                }
            }
        }
        out
    }

    /// Flat coordinate of an entry position under the vectorization
    /// convention, or `None` when out of bounds.
    fn flat_index(&self, s: Star) -> Option<usize> {
        if s.arrow >= self.mats.len() {
            return None;
        }
        let m = &self.mats[s.arrow];
        if s.row >= m.rows() || s.col >= m.cols() {
            return None;
        }
        let before: usize = self.mats[..s.arrow]
            .iter()
            .map(|m| m.rows() * m.cols())
            .sum();
        Some(before + s.row * m.cols() + s.col)
    }

    pub fn add(&self, rhs: &Representation) -> Representation {
        assert_eq!(self.quiver, rhs.quiver);
        let mats = self
            .mats
            .iter()
            .zip(&rhs.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        Representation::new(self.quiver.clone(), self.dims.clone(), self.field, mats)
    }
}

/// One square matrix per vertex; the argument of the bracket map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexTuple {
    blocks: Vec<ExactMatrix>,
}

impl VertexTuple {
    pub fn new(blocks: Vec<ExactMatrix>) -> Self {
        assert!(blocks.iter().all(|b| b.rows() == b.cols()));
        VertexTuple { blocks }
    }

    pub fn zero(dims: &[usize], field: Field) -> Self {
        VertexTuple {
            blocks: dims
                .iter()
                .map(|&n| ExactMatrix::zero(field, n, n))
                .collect(),
        }
    }

    pub fn identity(dims: &[usize], field: Field) -> Self {
        VertexTuple {
            blocks: dims.iter().map(|&n| ExactMatrix::identity(field, n)).collect(),
        }
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    pub fn block(&self, vertex: usize) -> &ExactMatrix {
        &self.blocks[vertex]
    }
}

/// An entry position carrying one deformation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Star {
    pub arrow: usize,
    pub row: usize,
    pub col: usize,
}

/// The parameter placement of a simplest deformation: an ordered list of
/// distinct entry positions, one per parameter index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StarPattern {
    stars: Vec<Star>,
}

impl StarPattern {
    pub fn new(stars: Vec<Star>) -> Self {
        StarPattern { stars }
    }

    pub fn stars(&self) -> &[Star] {
        &self.stars
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    /// Materialize `sum c_k E_k` over the shape of `ambient`.
    pub fn place(&self, ambient: &Representation, coeffs: &[Scalar]) -> Representation {
        assert_eq!(coeffs.len(), self.stars.len(), "one coefficient per star");
        let mut mats: Vec<ExactMatrix> = ambient
            .mats()
            .iter()
            .map(|m| ExactMatrix::zero(ambient.field(), m.rows(), m.cols()))
            .collect();
        for (s, c) in self.stars.iter().zip(coeffs) {
            let prev = mats[s.arrow].get(s.row, s.col).clone();
            mats[s.arrow].set(s.row, s.col, &prev + c);
        }
        Representation::new(
            ambient.quiver().clone(),
            ambient.dims().to_vec(),
            ambient.field(),
            mats,
        )
    }
}

/// Outcome of the transversality check for one (representation, pattern)
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// `dim R(n, F)` over the field model.
    pub ambient_dim: usize,
    /// Dimension of the orbit tangent space.
    pub tangent_rank: usize,
    /// Number of pattern parameters `k`.
    pub pattern_size: usize,
    /// Rank of tangent directions plus pattern directions together.
    pub combined_rank: usize,
    /// Pattern space and tangent space intersect trivially.
    pub is_direct_sum: bool,
    /// Direct sum that additionally fills the whole ambient space.
    pub is_miniversal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverError {
    /// A pattern position falls outside its arrow matrix.
    StarOutOfBounds {
        arrow: usize,
        row: usize,
        col: usize,
    },
    /// Two parameters share one entry position.
    DuplicateStar { arrow: usize, row: usize, col: usize },
    /// `decompose` requires a pattern that the oracle accepts.
    PatternNotMiniversal {
        tangent_rank: usize,
        pattern_size: usize,
        ambient_dim: usize,
    },
    /// The direction to decompose does not match the representation shape.
    DirectionShapeMismatch,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::StarOutOfBounds { arrow, row, col } => write!(
                f,
                "star (arrow {arrow}, row {row}, col {col}) is outside its matrix"
            ),
            QuiverError::DuplicateStar { arrow, row, col } => write!(
                f,
                "duplicate star at (arrow {arrow}, row {row}, col {col})"
            ),
            QuiverError::PatternNotMiniversal {
                tangent_rank,
                pattern_size,
                ambient_dim,
            } => write!(
                f,
                "pattern is not miniversal: tangent rank {tangent_rank} + {pattern_size} parameters \
                 do not split the {ambient_dim}-dimensional space"
            ),
            QuiverError::DirectionShapeMismatch => {
                write!(f, "direction shape does not match the representation")
            }
        }
    }
}

impl std::error::Error for QuiverError {}

/// `[C, A]`: per arrow `C_target * A_a - A_a * C_source`.
pub fn bracket(c: &VertexTuple, a: &Representation) -> Representation {
    assert_eq!(c.blocks().len(), a.quiver().vertex_count());
    for (v, b) in c.blocks().iter().enumerate() {
        assert_eq!(b.rows(), a.dims()[v], "vertex block size mismatch");
    }
    let mats = a
        .quiver()
        .arrows()
        .iter()
        .zip(a.mats())
        .map(|(arrow, m)| c.block(arrow.target).mul(m).sub(&m.mul(c.block(arrow.source))))
        .collect();
    Representation::new(a.quiver().clone(), a.dims().to_vec(), a.field(), mats)
}

/// Matrix of the linear map `C -> [C, A]` from the `sum n_i^2` vertex-block
/// coordinates to the vectorized representation space. Column `j` is the
/// vectorized bracket of the `j`-th unit vertex tuple (vertices in order,
/// each block row-major). Its rank is the orbit tangent dimension.
pub fn tangent_map_matrix(a: &Representation) -> ExactMatrix {
    let ambient = a.ambient_dim();
    let param_dim: usize = a.dims().iter().map(|n| n * n).sum();
    let mut out = ExactMatrix::zero(a.field(), ambient, param_dim);

    // Arrow offsets in the vectorization.
    let mut arrow_offsets = Vec::with_capacity(a.mats().len());
    let mut acc = 0;
    for m in a.mats() {
        arrow_offsets.push(acc);
        acc += m.rows() * m.cols();
    }

    let mut col = 0;
    for (vertex, &n) in a.dims().iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                // Bracket with the unit tuple E_{rc} at this vertex:
                // arrows into the vertex pick up row c of A in row r,
                // arrows out of it lose column r of A in column c.
                for (idx, arrow) in a.quiver().arrows().iter().enumerate() {
                    let m = a.mat(idx);
                    let base = arrow_offsets[idx];
                    if arrow.target == vertex {
                        for j in 0..m.cols() {
                            let v = m.get(c, j);
                            if !v.is_zero() {
                                let pos = base + r * m.cols() + j;
                                let cur = out.get(pos, col).clone();
                                out.set(pos, col, &cur + v);
                            }
                        }
                    }
                    if arrow.source == vertex {
                        for i in 0..m.rows() {
                            let v = m.get(i, r);
                            if !v.is_zero() {
                                let pos = base + i * m.cols() + c;
                                let cur = out.get(pos, col).clone();
                                out.set(pos, col, &cur - v);
                            }
                        }
                    }
                }
                col += 1;
            }
        }
    }
    out
}

fn validate_pattern(a: &Representation, p: &StarPattern) -> Result<Vec<usize>, QuiverError> {
    let mut seen = std::collections::HashSet::new();
    let mut flat = Vec::with_capacity(p.len());
    for s in p.stars() {
        let idx = a.flat_index(*s).ok_or(QuiverError::StarOutOfBounds {
            arrow: s.arrow,
            row: s.row,
            col: s.col,
        })?;
        if !seen.insert(idx) {
            return Err(QuiverError::DuplicateStar {
                arrow: s.arrow,
                row: s.row,
                col: s.col,
            });
        }
        flat.push(idx);
    }
    Ok(flat)
}

/// Span of the tangent map columns as an incremental tracker.
fn tangent_span(a: &Representation) -> SpanTracker {
    let t = tangent_map_matrix(a);
    let mut span = SpanTracker::new(a.field(), t.rows());
    for col in 0..t.cols() {
        let v: Vec<Scalar> = (0..t.rows()).map(|r| t.get(r, col).clone()).collect();
        span.insert(v);
    }
    span
}

/// The transversality check: the pattern is a simplest miniversal
/// deformation iff the pattern directions and the tangent space form a
/// direct sum filling the whole representation space.
pub fn verify_transversal(
    a: &Representation,
    p: &StarPattern,
) -> Result<VerificationReport, QuiverError> {
    let flat = validate_pattern(a, p)?;
    let ambient_dim = a.ambient_dim();
    let mut span = tangent_span(a);
    let tangent_rank = span.rank();
    let mut combined_rank = tangent_rank;
    for idx in flat {
        let mut unit = vec![Scalar::zero(a.field()); ambient_dim];
        unit[idx] = Scalar::one(a.field());
        if span.insert(unit) {
            combined_rank += 1;
        }
    }
    let pattern_size = p.len();
    let is_direct_sum = combined_rank == tangent_rank + pattern_size;
    let is_miniversal = is_direct_sum && tangent_rank + pattern_size == ambient_dim;
    Ok(VerificationReport {
        ambient_dim,
        tangent_rank,
        pattern_size,
        combined_rank,
        is_direct_sum,
        is_miniversal,
    })
}

/// Greedy construction of a simplest miniversal pattern: scan the entry
/// positions in the given order and keep exactly those whose unit vector is
/// independent of the tangent space plus the previously kept units. The
/// order must enumerate every entry coordinate exactly once.
pub fn greedy_simplest_miniversal(a: &Representation, entry_order: &[Star]) -> StarPattern {
    let ambient_dim = a.ambient_dim();
    assert_eq!(
        entry_order.len(),
        ambient_dim,
        "entry order must enumerate every coordinate exactly once"
    );
    let mut span = tangent_span(a);
    let mut kept = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in entry_order {
        let idx = a
            .flat_index(*s)
            .expect("entry order coordinate out of bounds");
        assert!(seen.insert(idx), "entry order repeats a coordinate");
        let mut unit = vec![Scalar::zero(a.field()); ambient_dim];
        unit[idx] = Scalar::one(a.field());
        if span.insert(unit) {
            kept.push(*s);
        }
    }
    StarPattern::new(kept)
}

/// Orbit codimension: ambient dimension minus the tangent rank. Every
/// miniversal deformation of `a` has exactly this many parameters.
pub fn codimension(a: &Representation) -> usize {
    a.ambient_dim() - tangent_span(a).rank()
}

/// Basis of the orthogonal complement of the tangent space under
/// `<X, Y> = sum_a tr(X_a Y_a^*)`: the fundamental solutions of
/// `sum_{target(a)=i} X_a A_a^* = sum_{source(a)=i} A_a^* X_a` for every
/// vertex `i`. Adding these directions to `a` gives its orthogonal
/// miniversal deformation.
pub fn orthogonal_miniversal(a: &Representation) -> Vec<Representation> {
    let ambient = a.ambient_dim();
    let eq_rows: usize = a.dims().iter().map(|n| n * n).sum();
    let mut system = ExactMatrix::zero(a.field(), eq_rows, ambient);

    let mut arrow_offsets = Vec::with_capacity(a.mats().len());
    let mut acc = 0;
    for m in a.mats() {
        arrow_offsets.push(acc);
        acc += m.rows() * m.cols();
    }
    let mut vertex_offsets = Vec::with_capacity(a.dims().len());
    let mut acc = 0;
    for &n in a.dims() {
        vertex_offsets.push(acc);
        acc += n * n;
    }

    for (idx, arrow) in a.quiver().arrows().iter().enumerate() {
        let m = a.mat(idx);
        let adj = m.conj_transpose();
        let base = arrow_offsets[idx];
        // (X_a * A_a^*)_{rc} contributes +adj[k][c] to the equation row
        // (target, r, c) for unknown X_a[r][k].
        let t = arrow.target;
        let nt = a.dims()[t];
        for r in 0..nt {
            for c in 0..nt {
                let eq = vertex_offsets[t] + r * nt + c;
                for k in 0..m.cols() {
                    let coeff = adj.get(k, c);
                    if coeff.is_zero() {
                        continue;
                    }
                    let var = base + r * m.cols() + k;
                    let cur = system.get(eq, var) + coeff;
                    system.set(eq, var, cur);
                }
            }
        }
        // (A_a^* * X_a)_{rc} contributes -adj[r][k] to the equation row
        // (source, r, c) for unknown X_a[k][c].
        let s = arrow.source;
        let ns = a.dims()[s];
        for r in 0..ns {
            for c in 0..ns {
                let eq = vertex_offsets[s] + r * ns + c;
                for k in 0..m.rows() {
                    let coeff = adj.get(r, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    let var = base + k * m.cols() + c;
                    let cur = system.get(eq, var) - coeff;
                    system.set(eq, var, cur);
                }
            }
        }
    }

    system
        .nullspace_basis()
        .into_iter()
        .map(|v| Representation::from_vec(a.quiver().clone(), a.dims().to_vec(), a.field(), &v))
        .collect()
}

/// The scalar product `<X, Y> = sum_a tr(X_a Y_a^*)` of the orthogonality
/// construction.
pub fn inner_product(x: &Representation, y: &Representation) -> Scalar {
    assert_eq!(x.quiver(), y.quiver());
    let mut acc = Scalar::zero(x.field());
    for (mx, my) in x.mats().iter().zip(y.mats()) {
        for r in 0..mx.rows() {
            for c in 0..mx.cols() {
                acc = &acc + &(mx.get(r, c) * &my.get(r, c).conj());
            }
        }
    }
    acc
}

/// First-order decomposition of a direction along a miniversal pattern.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// One coefficient per pattern parameter; unique.
    pub coefficients: Vec<Scalar>,
    /// A vertex tuple with `d = P(coefficients) + [witness, a]`; any solution
    /// of the underlying linear system.
    pub witness: VertexTuple,
}

/// Write `d = P(c) + [C, a]` where `P(c)` places coefficients at the star
/// positions. Requires the pattern to be miniversal for `a`; the
/// coefficients are then unique although the witness need not be.
pub fn decompose(
    a: &Representation,
    p: &StarPattern,
    d: &Representation,
) -> Result<Decomposition, QuiverError> {
    decompose_with_variable_order(a, p, d, None)
}

/// Same as [`decompose`] but solving with the vertex-block variables
/// permuted, which exercises the uniqueness of the coefficients: any
/// permutation must reproduce them exactly.
pub fn decompose_with_variable_order(
    a: &Representation,
    p: &StarPattern,
    d: &Representation,
    variable_order: Option<&[usize]>,
) -> Result<Decomposition, QuiverError> {
    if d.quiver() != a.quiver() || d.dims() != a.dims() || d.field() != a.field() {
        return Err(QuiverError::DirectionShapeMismatch);
    }
    let report = verify_transversal(a, p)?;
    if !report.is_miniversal {
        return Err(QuiverError::PatternNotMiniversal {
            tangent_rank: report.tangent_rank,
            pattern_size: report.pattern_size,
            ambient_dim: report.ambient_dim,
        });
    }

    let ambient = a.ambient_dim();
    let param_dim: usize = a.dims().iter().map(|n| n * n).sum();
    let t = tangent_map_matrix(a);
    let identity_order: Vec<usize> = (0..param_dim).collect();
    let order = variable_order.unwrap_or(&identity_order);
    assert_eq!(order.len(), param_dim, "variable order length");

    let k = p.len();
    let flat = validate_pattern(a, p)?;
    let mut system = ExactMatrix::zero(a.field(), ambient, param_dim + k);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..ambient {
            let v = t.get(r, old_col);
            if !v.is_zero() {
                system.set(r, new_col, v.clone());
            }
        }
    }
    for (j, &idx) in flat.iter().enumerate() {
        system.set(idx, param_dim + j, Scalar::one(a.field()));
    }

    let rhs = d.vectorize();
    let sol = system
        .solve_affine(&rhs)
        .expect("miniversal pattern spans the ambient space");
    let coefficients = sol.particular[param_dim..].to_vec();

    // Undo the permutation to read the witness blocks.
    let mut witness_vec = vec![Scalar::zero(a.field()); param_dim];
    for (new_col, &old_col) in order.iter().enumerate() {
        witness_vec[old_col] = sol.particular[new_col].clone();
    }
    let mut blocks = Vec::with_capacity(a.dims().len());
    let mut offset = 0;
    for &n in a.dims() {
        blocks.push(ExactMatrix::from_entries(
            a.field(),
            n,
            n,
            witness_vec[offset..offset + n * n].to_vec(),
        ));
        offset += n * n;
    }

    Ok(Decomposition {
        coefficients,
        witness: VertexTuple::new(blocks),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Scalar {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    fn loop_rep(m: ExactMatrix) -> Representation {
        let n = m.rows();
        Representation::new(Quiver::loop_quiver(), vec![n], m.field(), vec![m])
    }

    fn j2_zero() -> Representation {
        loop_rep(ExactMatrix::from_int_rows(Field::Real, &[&[0, 1], &[0, 0]]))
    }

    #[test]
    fn bracket_zero_tuple_is_zero() {
        let a = j2_zero();
        let z = VertexTuple::zero(a.dims(), a.field());
        assert!(bracket(&z, &a).mats()[0].is_zero());
    }

    #[test]
    fn bracket_identity_tuple_is_zero() {
        let a = j2_zero();
        let id = VertexTuple::identity(a.dims(), a.field());
        assert!(bracket(&id, &a).mats()[0].is_zero());
    }

    #[test]
    fn bracket_hand_computed() {
        // C = [[0,0],[1,0]], A = J_2(0): CA - AC = [[-1,0],[0,1]].
        let a = j2_zero();
        let c = VertexTuple::new(vec![ExactMatrix::from_int_rows(
            Field::Real,
            &[&[0, 0], &[1, 0]],
        )]);
        let expected = ExactMatrix::from_int_rows(Field::Real, &[&[-1, 0], &[0, 1]]);
        assert_eq!(bracket(&c, &a).mats()[0], expected);
    }

    #[test]
    fn tangent_map_scalar_is_zero() {
        let a = loop_rep(ExactMatrix::from_int_rows(Field::Real, &[&[7]]));
        let t = tangent_map_matrix(&a);
        assert_eq!((t.rows(), t.cols()), (1, 1));
        assert!(t.is_zero());
        assert_eq!(t.rank(), 0);
    }

    #[test]
    fn tangent_map_j2_matches_hand_matrix() {
        // Columns are vec([E_rc, J_2(0)]) for E_11, E_12, E_21, E_22,
        // computed by hand.
        let a = j2_zero();
        let t = tangent_map_matrix(&a);
        let expected = ExactMatrix::from_int_rows(
            Field::Real,
            &[
                &[0, 0, -1, 0],
                &[1, 0, 0, -1],
                &[0, 0, 0, 0],
                &[0, 0, 1, 0],
            ],
        );
        assert_eq!(t, expected);
        assert_eq!(t.rank(), 2);
    }

    fn assert_tangent_map_matches_bracket(a: &Representation) {
        let t = tangent_map_matrix(a);
        let mut col = 0;
        for (vertex, &n) in a.dims().iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    let mut blocks: Vec<ExactMatrix> = a
                        .dims()
                        .iter()
                        .map(|&k| ExactMatrix::zero(a.field(), k, k))
                        .collect();
                    blocks[vertex].set(r, c, Scalar::one(a.field()));
                    let br = bracket(&VertexTuple::new(blocks), a).vectorize();
                    for (row, v) in br.iter().enumerate() {
                        assert_eq!(t.get(row, col), v);
                    }
                    col += 1;
                }
            }
        }
        assert_eq!(col, t.cols());
    }

    #[test]
    fn tangent_map_agrees_with_bracket_on_units() {
        // The sparse assembly must match the definition column by column.
        let pencil = Representation::new(
            Quiver::pencil_quiver(),
            vec![1, 2],
            Field::Real,
            vec![
                ExactMatrix::from_int_rows(Field::Real, &[&[1], &[0]]),
                ExactMatrix::from_int_rows(Field::Real, &[&[0], &[1]]),
            ],
        );
        assert_tangent_map_matches_bracket(&pencil);

        let contragredient = Representation::new(
            Quiver::contragredient_quiver(),
            vec![2, 3],
            Field::Real,
            vec![
                ExactMatrix::from_int_rows(Field::Real, &[&[1, 2], &[3, 0], &[0, 4]]),
                ExactMatrix::from_int_rows(Field::Real, &[&[0, 1, 1], &[2, 0, 5]]),
            ],
        );
        assert_tangent_map_matches_bracket(&contragredient);
    }

    #[test]
    fn tangent_rank_of_minimal_pencil_pair() {
        // (F_2, K_2): the 4 x 5 map (S, R) -> (SA - AR, SB - BR) has rank 4.
        let a = Representation::new(
            Quiver::pencil_quiver(),
            vec![1, 2],
            Field::Real,
            vec![
                ExactMatrix::from_int_rows(Field::Real, &[&[1], &[0]]),
                ExactMatrix::from_int_rows(Field::Real, &[&[0], &[1]]),
            ],
        );
        let t = tangent_map_matrix(&a);
        assert_eq!((t.rows(), t.cols()), (4, 5));
        assert_eq!(t.rank(), 4);
        assert_eq!(codimension(&a), 0);
        assert_eq!(
            greedy_simplest_miniversal(&a, &a.entry_coordinates()).len(),
            0
        );
    }

    #[test]
    fn verify_scalar_cases() {
        let a = loop_rep(ExactMatrix::from_int_rows(Field::Real, &[&[5]]));
        let full = StarPattern::new(vec![Star {
            arrow: 0,
            row: 0,
            col: 0,
        }]);
        let report = verify_transversal(&a, &full).unwrap();
        assert!(report.is_miniversal);
        assert_eq!(report.pattern_size, 1);

        let report = verify_transversal(&a, &StarPattern::default()).unwrap();
        assert!(report.is_direct_sum);
        assert!(!report.is_miniversal);
    }

    #[test]
    fn verify_last_row_pattern_on_j2() {
        let a = j2_zero();
        let pattern = StarPattern::new(vec![
            Star {
                arrow: 0,
                row: 1,
                col: 0,
            },
            Star {
                arrow: 0,
                row: 1,
                col: 1,
            },
        ]);
        let report = verify_transversal(&a, &pattern).unwrap();
        assert_eq!(report.combined_rank, 4);
        assert!(report.is_miniversal);
    }

    #[test]
    fn verify_rejects_out_of_bounds_star() {
        let a = j2_zero();
        let pattern = StarPattern::new(vec![Star {
            arrow: 0,
            row: 2,
            col: 0,
        }]);
        assert_eq!(
            verify_transversal(&a, &pattern),
            Err(QuiverError::StarOutOfBounds {
                arrow: 0,
                row: 2,
                col: 0
            })
        );
    }

    #[test]
    fn greedy_on_j2_keeps_two_stars() {
        let a = j2_zero();
        let pattern = greedy_simplest_miniversal(&a, &a.entry_coordinates());
        assert_eq!(pattern.len(), 2);
        assert!(verify_transversal(&a, &pattern).unwrap().is_miniversal);
    }

    #[test]
    fn greedy_on_identity_keeps_everything() {
        let a = loop_rep(ExactMatrix::identity(Field::Real, 3));
        let pattern = greedy_simplest_miniversal(&a, &a.entry_coordinates());
        assert_eq!(pattern.len(), 9);
    }

    #[test]
    fn orthogonal_basis_of_j2() {
        let a = j2_zero();
        let basis = orthogonal_miniversal(&a);
        assert_eq!(basis.len(), 2);
        let t = tangent_map_matrix(&a);
        for b in &basis {
            for col in 0..t.cols() {
                let dir = Representation::from_vec(
                    a.quiver().clone(),
                    a.dims().to_vec(),
                    a.field(),
                    &(0..t.rows()).map(|r| t.get(r, col).clone()).collect::<Vec<_>>(),
                );
                assert!(inner_product(b, &dir).is_zero());
            }
        }
    }

    #[test]
    fn orthogonal_basis_of_identity_fills_space() {
        let a = loop_rep(ExactMatrix::identity(Field::Real, 2));
        assert_eq!(orthogonal_miniversal(&a).len(), 4);
    }

    #[test]
    fn codimension_examples() {
        let a = loop_rep(ExactMatrix::from_int_rows(Field::Real, &[&[3]]));
        assert_eq!(codimension(&a), 1);

        // J_2(0) + J_1(0): 9 - tangent rank = 5.
        let a = loop_rep(ExactMatrix::from_int_rows(
            Field::Real,
            &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]],
        ));
        assert_eq!(codimension(&a), 5);
    }

    #[test]
    fn decompose_zero_direction() {
        let a = j2_zero();
        let p = StarPattern::new(vec![
            Star {
                arrow: 0,
                row: 1,
                col: 0,
            },
            Star {
                arrow: 0,
                row: 1,
                col: 1,
            },
        ]);
        let d = Representation::zero(a.quiver().clone(), a.dims().to_vec(), a.field());
        let dec = decompose(&a, &p, &d).unwrap();
        assert!(dec.coefficients.iter().all(Scalar::is_zero));
    }

    #[test]
    fn decompose_pattern_directions_are_fixed_points() {
        let a = j2_zero();
        let p = StarPattern::new(vec![
            Star {
                arrow: 0,
                row: 1,
                col: 0,
            },
            Star {
                arrow: 0,
                row: 1,
                col: 1,
            },
        ]);
        let coeffs = vec![q(3), q(-2)];
        let d = p.place(&a, &coeffs);
        let dec = decompose(&a, &p, &d).unwrap();
        assert_eq!(dec.coefficients, coeffs);
    }

    #[test]
    fn decompose_unit_direction_with_residual_check() {
        let a = j2_zero();
        let p = StarPattern::new(vec![
            Star {
                arrow: 0,
                row: 1,
                col: 0,
            },
            Star {
                arrow: 0,
                row: 1,
                col: 1,
            },
        ]);
        let mut unit = ExactMatrix::zero(Field::Real, 2, 2);
        unit.set(0, 0, q(1));
        let d = loop_rep(unit);
        let dec = decompose(&a, &p, &d).unwrap();
        // Hand solve of the 4 x (4+2) system.
        assert_eq!(dec.coefficients, vec![q(0), q(1)]);
        let rebuilt = p.place(&a, &dec.coefficients).add(&bracket(&dec.witness, &a));
        assert_eq!(rebuilt, d);
    }

    #[test]
    fn decompose_requires_miniversal_pattern() {
        let a = j2_zero();
        let p = StarPattern::new(vec![Star {
            arrow: 0,
            row: 1,
            col: 0,
        }]);
        let d = Representation::zero(a.quiver().clone(), a.dims().to_vec(), a.field());
        assert!(matches!(
            decompose(&a, &p, &d),
            Err(QuiverError::PatternNotMiniversal { .. })
        ));
    }

    #[test]
    fn decompose_rejects_mismatched_direction_shape() {
        let a = j2_zero();
        let p = StarPattern::new(vec![
            Star {
                arrow: 0,
                row: 1,
                col: 0,
            },
            Star {
                arrow: 0,
                row: 1,
                col: 1,
            },
        ]);
        let d = Representation::zero(Quiver::loop_quiver(), vec![3], Field::Real);
        assert_eq!(
            decompose(&a, &p, &d).unwrap_err(),
            QuiverError::DirectionShapeMismatch
        );
    }

    fn small_loop_rep() -> impl Strategy<Value = Representation> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(-2i64..=2, n * n).prop_map(move |vals| {
                loop_rep(ExactMatrix::from_fn(Field::Real, n, n, |r, c| {
                    Scalar::from_int(Field::Real, vals[r * n + c])
                }))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn bracket_is_linear(a in small_loop_rep(), vals in proptest::collection::vec(-2i64..=2, 18)) {
            let n = a.dims()[0];
            let c1 = VertexTuple::new(vec![ExactMatrix::from_fn(Field::Real, n, n, |r, c| {
                Scalar::from_int(Field::Real, vals[r * n + c])
            })]);
            let c2 = VertexTuple::new(vec![ExactMatrix::from_fn(Field::Real, n, n, |r, c| {
                Scalar::from_int(Field::Real, vals[9 + r * n + c])
            })]);
            let sum = VertexTuple::new(vec![c1.block(0).add(c2.block(0))]);
            prop_assert_eq!(
                bracket(&sum, &a).mats()[0].clone(),
                bracket(&c1, &a).mats()[0].add(&bracket(&c2, &a).mats()[0])
            );
        }

        #[test]
        fn greedy_cardinality_equals_codimension(a in small_loop_rep()) {
            let forward = a.entry_coordinates();
            let mut backward = forward.clone();
            backward.reverse();
            let k = codimension(&a);
            let g1 = greedy_simplest_miniversal(&a, &forward);
            let g2 = greedy_simplest_miniversal(&a, &backward);
            prop_assert_eq!(g1.len(), k);
            prop_assert_eq!(g2.len(), k);
            prop_assert!(verify_transversal(&a, &g1).unwrap().is_miniversal);
            prop_assert!(verify_transversal(&a, &g2).unwrap().is_miniversal);
        }

        #[test]
        fn orthogonal_count_equals_codimension(a in small_loop_rep()) {
            let basis = orthogonal_miniversal(&a);
            prop_assert_eq!(basis.len(), codimension(&a));
            let t = tangent_map_matrix(&a);
            for b in &basis {
                for col in 0..t.cols() {
                    let dir = Representation::from_vec(
                        a.quiver().clone(),
                        a.dims().to_vec(),
                        a.field(),
                        &(0..t.rows()).map(|r| t.get(r, col).clone()).collect::<Vec<_>>(),
                    );
                    prop_assert!(inner_product(b, &dir).is_zero());
                }
            }
        }

        #[test]
        fn decompose_is_independent_of_variable_order(
            a in small_loop_rep(),
            dir_vals in proptest::collection::vec(-2i64..=2, 9),
        ) {
            let n = a.dims()[0];
            let p = greedy_simplest_miniversal(&a, &a.entry_coordinates());
            let d = loop_rep(ExactMatrix::from_fn(Field::Real, n, n, |r, c| {
                Scalar::from_int(Field::Real, dir_vals[r * n + c])
            }));
            let dec = decompose(&a, &p, &d).unwrap();
            let param_dim = n * n;
            let reversed: Vec<usize> = (0..param_dim).rev().collect();
            let dec2 = decompose_with_variable_order(&a, &p, &d, Some(&reversed)).unwrap();
            prop_assert_eq!(dec.coefficients.clone(), dec2.coefficients);
            let rebuilt = p.place(&a, &dec.coefficients).add(&bracket(&dec.witness, &a));
            prop_assert_eq!(rebuilt, d);
        }
    }
}
