//! Structural descriptors of the three canonical forms and their
//! materialization as quiver representations.
//!
//! * similarity: a direct sum of Jordan blocks on the loop quiver;
//! * pencil: Kronecker summands `(F_p, K_p)`, `(I, J(eig))`, `(J_d, I)`,
//!   `(F_q^T, K_q^T)` on the two-parallel-arrow quiver;
//! * contragredient: summands `(I, C)`, `(I, J)`, `(J, I)`, `(F, G)`,
//!   `(G, F)` on the counter-arrow quiver, with `G_r = K_r^T`.
//!
//! Over the `R` model a conjugate eigenvalue pair `a + bi` (`b > 0`) is
//! stored once and materialized as the real block built from 2x2 cells
//! `[[a, b], [-b, a]]`, doubling the block dimension.

use std::fmt;

use num_traits::Zero;

use crate::exact::{ExactMatrix, Field, GaussianRational, Rational, Scalar};
use crate::quiver::{Quiver, Representation};

/// Which of the three matrix problems a structure describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Similarity,
    Pencil,
    Contragredient,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Similarity => write!(f, "similarity"),
            Problem::Pencil => write!(f, "pencil"),
            Problem::Contragredient => write!(f, "contragredient"),
        }
    }
}

/// An eigenvalue in the field model: a Gaussian rational over `C`; over `R`
/// either a rational value or a conjugate pair `a + bi` with `b > 0` stored
/// once (`b = 0` must be encoded as [`EigSpec::Real`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EigSpec {
    Complex(GaussianRational),
    Real(Rational),
    ComplexPair { re: Rational, im: Rational },
}

impl EigSpec {
    /// Build the eigenvalue matching the field model; over `R` a zero
    /// imaginary part is routed to [`EigSpec::Real`] and a negative one is
    /// rejected.
    pub fn from_parts(field: Field, re: Rational, im: Rational) -> Result<Self, ValidationError> {
        match field {
            Field::Complex => Ok(EigSpec::Complex(GaussianRational::new(re, im))),
            Field::Real => {
                if im.is_zero() {
                    Ok(EigSpec::Real(re))
                } else if im > Rational::zero() {
                    Ok(EigSpec::ComplexPair { re, im })
                } else {
                    Err(ValidationError::NegativeImaginaryPart)
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            EigSpec::Complex(_) => Field::Complex,
            EigSpec::Real(_) | EigSpec::ComplexPair { .. } => Field::Real,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            EigSpec::Complex(g) => g.is_zero(),
            EigSpec::Real(q) => q.is_zero(),
            EigSpec::ComplexPair { .. } => false,
        }
    }

    /// Real and imaginary parts as rationals.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            EigSpec::Complex(g) => (g.re.clone(), g.im.clone()),
            EigSpec::Real(q) => (q.clone(), Rational::zero()),
            EigSpec::ComplexPair { re, im } => (re.clone(), im.clone()),
        }
    }

    /// Materialized dimension of one Jordan block of structural size `s`:
    /// `s`, doubled for a conjugate pair.
    pub fn block_dim(&self, s: usize) -> usize {
        match self {
            EigSpec::ComplexPair { .. } => 2 * s,
            _ => s,
        }
    }
}

impl fmt::Display for EigSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigSpec::Complex(g) => write!(f, "{g}"),
            EigSpec::Real(q) => write!(f, "{q}"),
            EigSpec::ComplexPair { re, im } => write!(f, "{re}+-{im}i"),
        }
    }
}

/// A square matrix up to similarity: a list of eigenvalues, each with a
/// weakly decreasing partition of Jordan block sizes. Eigenvalue order is
/// preserved from the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanStructure {
    pub field: Field,
    pub eigenblocks: Vec<(EigSpec, Vec<usize>)>,
}

impl JordanStructure {
    pub fn new(field: Field, eigenblocks: Vec<(EigSpec, Vec<usize>)>) -> Self {
        JordanStructure { field, eigenblocks }
    }

    pub fn empty(field: Field) -> Self {
        JordanStructure::new(field, vec![])
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        for (eig, partition) in &self.eigenblocks {
            if eig.field() != self.field {
                return Err(ValidationError::FieldMismatch);
            }
            validate_partition(partition, "eigenvalue partition")?;
        }
        for i in 0..self.eigenblocks.len() {
            for j in i + 1..self.eigenblocks.len() {
                if self.eigenblocks[i].0 == self.eigenblocks[j].0 {
                    return Err(ValidationError::DuplicateEigenvalue(
                        self.eigenblocks[i].0.to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Materialized total dimension.
    pub fn dim(&self) -> usize {
        self.eigenblocks
            .iter()
            .map(|(eig, p)| p.iter().map(|&s| eig.block_dim(s)).sum::<usize>())
            .sum()
    }
}

/// A Kronecker pencil structure. The summand order is fixed: minimal-index
/// pairs `(F_p, K_p)` with `p` ascending, then the finite part, then the
/// part at infinity (sizes descending), then transposed minimal pairs with
/// `q` descending. That ordering keeps every coupling block above the
/// diagonal and is enforced at validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilStructure {
    pub field: Field,
    /// Sizes `p` of `(F_p, K_p)` summands, weakly increasing, each >= 1.
    pub left_minimal: Vec<usize>,
    /// Finite eigenvalue part `(I, C)`; eigenvalue 0 is allowed here and is
    /// distinct from the part at infinity.
    pub finite: JordanStructure,
    /// Block sizes of the part at infinity `(J_d, I)`, weakly decreasing.
    pub infinite: Vec<usize>,
    /// Sizes `q` of `(F_q^T, K_q^T)` summands, weakly decreasing, each >= 1.
    pub right_minimal: Vec<usize>,
}

impl PencilStructure {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.finite.field != self.field {
            return Err(ValidationError::FieldMismatch);
        }
        self.finite.validate()?;
        if self.left_minimal.contains(&0) {
            return Err(ValidationError::ZeroBlockSize("left minimal indices"));
        }
        if !self.left_minimal.windows(2).all(|w| w[0] <= w[1]) {
            return Err(ValidationError::UnsortedSizes(
                "left minimal indices must be weakly increasing",
            ));
        }
        validate_weakly_decreasing(&self.infinite, "part at infinity")?;
        validate_weakly_decreasing(&self.right_minimal, "right minimal indices")?;
        Ok(())
    }
}

/// A contragredient pencil structure: a nonsingular part `(I, C)` plus four
/// singular families, each a weakly decreasing size list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContragredientStructure {
    pub field: Field,
    /// The `(I, C)` part; every eigenvalue must be nonzero.
    pub nonsingular: JordanStructure,
    /// `(I_r, J_r)` sizes.
    pub type1: Vec<usize>,
    /// `(J_r, I_r)` sizes.
    pub type2: Vec<usize>,
    /// `(F_r, G_r)` sizes.
    pub type3: Vec<usize>,
    /// `(G_r, F_r)` sizes.
    pub type4: Vec<usize>,
}

impl ContragredientStructure {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.nonsingular.field != self.field {
            return Err(ValidationError::FieldMismatch);
        }
        self.nonsingular.validate()?;
        if self
            .nonsingular
            .eigenblocks
            .iter()
            .any(|(eig, _)| eig.is_zero())
        {
            return Err(ValidationError::ZeroEigenvalueInNonsingularPart);
        }
        validate_weakly_decreasing(&self.type1, "type-1 sizes")?;
        validate_weakly_decreasing(&self.type2, "type-2 sizes")?;
        validate_weakly_decreasing(&self.type3, "type-3 sizes")?;
        validate_weakly_decreasing(&self.type4, "type-4 sizes")?;
        Ok(())
    }
}

/// A canonical structure for any of the three problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalStructure {
    Similarity(JordanStructure),
    Pencil(PencilStructure),
    Contragredient(ContragredientStructure),
}

impl CanonicalStructure {
    pub fn problem(&self) -> Problem {
        match self {
            CanonicalStructure::Similarity(_) => Problem::Similarity,
            CanonicalStructure::Pencil(_) => Problem::Pencil,
            CanonicalStructure::Contragredient(_) => Problem::Contragredient,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            CanonicalStructure::Similarity(s) => s.field,
            CanonicalStructure::Pencil(s) => s.field,
            CanonicalStructure::Contragredient(s) => s.field,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        match self {
            CanonicalStructure::Similarity(s) => s.validate(),
            CanonicalStructure::Pencil(s) => s.validate(),
            CanonicalStructure::Contragredient(s) => s.validate(),
        }
    }

    pub fn build(&self) -> Result<Representation, ValidationError> {
        match self {
            CanonicalStructure::Similarity(s) => build_jordan(s),
            CanonicalStructure::Pencil(s) => build_pencil(s),
            CanonicalStructure::Contragredient(s) => build_contragredient(s),
        }
    }
}

/// A named invariant violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationError {
    DuplicateEigenvalue(String),
    UnsortedPartition(&'static str),
    EmptyPartitionEntry(&'static str),
    UnsortedSizes(&'static str),
    ZeroBlockSize(&'static str),
    ZeroEigenvalueInNonsingularPart,
    NegativeImaginaryPart,
    FieldMismatch,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::DuplicateEigenvalue(e) => write!(f, "duplicate eigenvalue {e}"),
            ValidationError::UnsortedPartition(what) => {
                write!(f, "{what} must be weakly decreasing")
            }
            ValidationError::EmptyPartitionEntry(what) => {
                write!(f, "{what} must contain sizes >= 1")
            }
            ValidationError::UnsortedSizes(what) => write!(f, "{what}"),
            ValidationError::ZeroBlockSize(what) => write!(f, "{what} must be >= 1"),
            ValidationError::ZeroEigenvalueInNonsingularPart => {
                write!(f, "the nonsingular part must not contain eigenvalue 0")
            }
            ValidationError::NegativeImaginaryPart => {
                write!(f, "conjugate pairs are stored with positive imaginary part")
            }
            ValidationError::FieldMismatch => {
                write!(f, "field tags must be consistent throughout a structure")
            }
        }
    }
}

impl std::error::Error for ValidationError {}

fn validate_partition(p: &[usize], what: &'static str) -> Result<(), ValidationError> {
    if p.is_empty() || p.contains(&0) {
        return Err(ValidationError::EmptyPartitionEntry(what));
    }
    if !p.windows(2).all(|w| w[0] >= w[1]) {
        return Err(ValidationError::UnsortedPartition(what));
    }
    Ok(())
}

fn validate_weakly_decreasing(p: &[usize], what: &'static str) -> Result<(), ValidationError> {
    if p.contains(&0) {
        return Err(ValidationError::ZeroBlockSize(what));
    }
    if !p.windows(2).all(|w| w[0] >= w[1]) {
        return Err(ValidationError::UnsortedPartition(what));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Elementary blocks
// ---------------------------------------------------------------------------

/// The nilpotent Jordan block `J_r` (ones on the superdiagonal).
pub fn nilpotent_jordan(field: Field, r: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zero(field, r, r);
    for i in 0..r.saturating_sub(1) {
        m.set(i, i + 1, Scalar::one(field));
    }
    m
}

/// A Jordan block for the given eigenvalue. Structural size `r` means an
/// `r x r` matrix for a plain eigenvalue and a `2r x 2r` real matrix (2x2
/// rotation-scaling cells with an identity superdiagonal) for a conjugate
/// pair.
pub fn jordan_block(field: Field, eig: &EigSpec, r: usize) -> ExactMatrix {
    assert!(r >= 1, "block size must be >= 1");
    assert_eq!(eig.field(), field, "eigenvalue field mismatch");
    match eig {
        EigSpec::Complex(g) => {
            let mut m = nilpotent_jordan(field, r);
            for i in 0..r {
                m.set(i, i, Scalar::Gaussian(g.clone()));
            }
            m
        }
        EigSpec::Real(q) => {
            let mut m = nilpotent_jordan(field, r);
            for i in 0..r {
                m.set(i, i, Scalar::Rational(q.clone()));
            }
            m
        }
        EigSpec::ComplexPair { re, im } => {
            let mut m = ExactMatrix::zero(field, 2 * r, 2 * r);
            for i in 0..r {
                m.set(2 * i, 2 * i, Scalar::Rational(re.clone()));
                m.set(2 * i, 2 * i + 1, Scalar::Rational(im.clone()));
                m.set(2 * i + 1, 2 * i, Scalar::Rational(-im.clone()));
                m.set(2 * i + 1, 2 * i + 1, Scalar::Rational(re.clone()));
                if i + 1 < r {
                    m.set(2 * i, 2 * i + 2, Scalar::one(field));
                    m.set(2 * i + 1, 2 * i + 3, Scalar::one(field));
                }
            }
            m
        }
    }
}

/// `F_r`: `r x (r-1)`, identity on top, zero last row. `F_1` is `1 x 0`.
pub fn f_block(field: Field, r: usize) -> ExactMatrix {
    assert!(r >= 1);
    let mut m = ExactMatrix::zero(field, r, r - 1);
    for i in 0..r - 1 {
        m.set(i, i, Scalar::one(field));
    }
    m
}

/// `K_r`: `r x (r-1)`, zero first row, identity below. `K_1` is `1 x 0`.
pub fn k_block(field: Field, r: usize) -> ExactMatrix {
    assert!(r >= 1);
    let mut m = ExactMatrix::zero(field, r, r - 1);
    for i in 0..r - 1 {
        m.set(i + 1, i, Scalar::one(field));
    }
    m
}

/// `G_r = K_r^T`: `(r-1) x r`.
pub fn g_block(field: Field, r: usize) -> ExactMatrix {
    k_block(field, r).transpose()
}

// ---------------------------------------------------------------------------
// Summand enumeration
// ---------------------------------------------------------------------------

/// One Jordan block of a similarity structure, with its materialized size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanSummand {
    pub eig: EigSpec,
    pub dim: usize,
}

pub fn jordan_summands(s: &JordanStructure) -> Vec<JordanSummand> {
    let mut out = Vec::new();
    for (eig, partition) in &s.eigenblocks {
        for &size in partition {
            out.push(JordanSummand {
                eig: eig.clone(),
                dim: eig.block_dim(size),
            });
        }
    }
    out
}

/// One Kronecker summand of a pencil structure, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PencilSummand {
    /// `(F_p, K_p)`: `p x (p-1)`.
    LeftMinimal { p: usize },
    /// `(I, J(eig))` of materialized size `dim`.
    Finite { eig: EigSpec, dim: usize },
    /// `(J_d, I)`.
    Infinite { dim: usize },
    /// `(F_q^T, K_q^T)`: `(q-1) x q`.
    RightMinimal { q: usize },
}

impl PencilSummand {
    /// Shape `(rows, cols)` shared by both matrices of the summand.
    pub fn shape(&self) -> (usize, usize) {
        match self {
            PencilSummand::LeftMinimal { p } => (*p, p - 1),
            PencilSummand::Finite { dim, .. } => (*dim, *dim),
            PencilSummand::Infinite { dim } => (*dim, *dim),
            PencilSummand::RightMinimal { q } => (q - 1, *q),
        }
    }
}

pub fn pencil_summands(s: &PencilStructure) -> Vec<PencilSummand> {
    let mut out = Vec::new();
    for &p in &s.left_minimal {
        out.push(PencilSummand::LeftMinimal { p });
    }
    for js in jordan_summands(&s.finite) {
        out.push(PencilSummand::Finite {
            eig: js.eig,
            dim: js.dim,
        });
    }
    for &d in &s.infinite {
        out.push(PencilSummand::Infinite { dim: d });
    }
    for &q in &s.right_minimal {
        out.push(PencilSummand::RightMinimal { q });
    }
    out
}

/// One summand of a contragredient structure, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContragredientSummand {
    /// `(I, J(eig))` with a nonzero eigenvalue.
    Nonsingular { eig: EigSpec, dim: usize },
    /// `(I_r, J_r)`.
    Type1 { r: usize },
    /// `(J_r, I_r)`.
    Type2 { r: usize },
    /// `(F_r, G_r)`.
    Type3 { r: usize },
    /// `(G_r, F_r)`.
    Type4 { r: usize },
}

impl ContragredientSummand {
    /// Shape of the first matrix (`V`-rows by `U`-cols); the second matrix
    /// has the transposed shape.
    pub fn a_shape(&self) -> (usize, usize) {
        match self {
            ContragredientSummand::Nonsingular { dim, .. } => (*dim, *dim),
            ContragredientSummand::Type1 { r } | ContragredientSummand::Type2 { r } => (*r, *r),
            ContragredientSummand::Type3 { r } => (*r, r - 1),
            ContragredientSummand::Type4 { r } => (r - 1, *r),
        }
    }
}

pub fn contragredient_summands(s: &ContragredientStructure) -> Vec<ContragredientSummand> {
    let mut out = Vec::new();
    for js in jordan_summands(&s.nonsingular) {
        out.push(ContragredientSummand::Nonsingular {
            eig: js.eig,
            dim: js.dim,
        });
    }
    for &r in &s.type1 {
        out.push(ContragredientSummand::Type1 { r });
    }
    for &r in &s.type2 {
        out.push(ContragredientSummand::Type2 { r });
    }
    for &r in &s.type3 {
        out.push(ContragredientSummand::Type3 { r });
    }
    for &r in &s.type4 {
        out.push(ContragredientSummand::Type4 { r });
    }
    out
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Materialize a similarity structure on the loop quiver.
pub fn build_jordan(s: &JordanStructure) -> Result<Representation, ValidationError> {
    s.validate()?;
    let blocks: Vec<ExactMatrix> = s
        .eigenblocks
        .iter()
        .flat_map(|(eig, partition)| {
            partition
                .iter()
                .map(|&size| jordan_block(s.field, eig, size))
                .collect::<Vec<_>>()
        })
        .collect();
    let m = ExactMatrix::block_diag(s.field, &blocks);
    let n = m.rows();
    Ok(Representation::new(
        Quiver::loop_quiver(),
        vec![n],
        s.field,
        vec![m],
    ))
}

fn jordan_block_for_dim(field: Field, eig: &EigSpec, dim: usize) -> ExactMatrix {
    let size = match eig {
        EigSpec::ComplexPair { .. } => dim / 2,
        _ => dim,
    };
    jordan_block(field, eig, size)
}

fn pencil_summand_mats(field: Field, s: &PencilSummand) -> (ExactMatrix, ExactMatrix) {
    match s {
        PencilSummand::LeftMinimal { p } => (f_block(field, *p), k_block(field, *p)),
        PencilSummand::Finite { eig, dim } => (
            ExactMatrix::identity(field, *dim),
            jordan_block_for_dim(field, eig, *dim),
        ),
        PencilSummand::Infinite { dim } => (
            nilpotent_jordan(field, *dim),
            ExactMatrix::identity(field, *dim),
        ),
        PencilSummand::RightMinimal { q } => (
            f_block(field, *q).transpose(),
            k_block(field, *q).transpose(),
        ),
    }
}

/// Materialize a pencil structure on the two-parallel-arrow quiver. Vertex 0
/// is the common source (`cols`), vertex 1 the common target (`rows`);
/// arrow 0 carries `A`, arrow 1 carries `B`.
pub fn build_pencil(s: &PencilStructure) -> Result<Representation, ValidationError> {
    s.validate()?;
    let summands = pencil_summands(s);
    let mut a_blocks = Vec::with_capacity(summands.len());
    let mut b_blocks = Vec::with_capacity(summands.len());
    for sm in &summands {
        let (a, b) = pencil_summand_mats(s.field, sm);
        a_blocks.push(a);
        b_blocks.push(b);
    }
    let a = ExactMatrix::block_diag(s.field, &a_blocks);
    let b = ExactMatrix::block_diag(s.field, &b_blocks);
    let (m, n) = (a.rows(), a.cols());
    Ok(Representation::new(
        Quiver::pencil_quiver(),
        vec![n, m],
        s.field,
        vec![a, b],
    ))
}

fn contragredient_summand_mats(
    field: Field,
    s: &ContragredientSummand,
) -> (ExactMatrix, ExactMatrix) {
    match s {
        ContragredientSummand::Nonsingular { eig, dim } => (
            ExactMatrix::identity(field, *dim),
            jordan_block_for_dim(field, eig, *dim),
        ),
        ContragredientSummand::Type1 { r } => (
            ExactMatrix::identity(field, *r),
            nilpotent_jordan(field, *r),
        ),
        ContragredientSummand::Type2 { r } => (
            nilpotent_jordan(field, *r),
            ExactMatrix::identity(field, *r),
        ),
        ContragredientSummand::Type3 { r } => (f_block(field, *r), g_block(field, *r)),
        ContragredientSummand::Type4 { r } => (g_block(field, *r), f_block(field, *r)),
    }
}

/// Materialize a contragredient structure on the counter-arrow quiver.
/// Arrow 0 carries `A: U -> V` (`m x n`), arrow 1 carries `B: V -> U`
/// (`n x m`); vertex 0 is `U`, vertex 1 is `V`.
pub fn build_contragredient(
    s: &ContragredientStructure,
) -> Result<Representation, ValidationError> {
    s.validate()?;
    let summands = contragredient_summands(s);
    let mut a_blocks = Vec::with_capacity(summands.len());
    let mut b_blocks = Vec::with_capacity(summands.len());
    for sm in &summands {
        let (a, b) = contragredient_summand_mats(s.field, sm);
        a_blocks.push(a);
        b_blocks.push(b);
    }
    let a = ExactMatrix::block_diag(s.field, &a_blocks);
    let b = ExactMatrix::block_diag(s.field, &b_blocks);
    let (m, n) = (a.rows(), a.cols());
    Ok(Representation::new(
        Quiver::contragredient_quiver(),
        vec![n, m],
        s.field,
        vec![a, b],
    ))
}
