//! Closed-form simplest miniversal deformation patterns for the three
//! canonical forms, emitted as star patterns over the materialized
//! representations.
//!
//! Every pattern is assembled from a block layout: the canonical summands
//! tile each matrix into strips, and each (row summand, column summand)
//! cell receives one block kind. The kinds are the classical pieces:
//!
//! * `H`: first column when the cell is at most as tall as wide, last row
//!   otherwise (`min(p, q)` parameters);
//! * full first/last row, first/last column;
//! * `Z`: the first `max(q - p, 0)` entries of the first row, and its
//!   transpose;
//! * a composite `CalH` grid of `H` cells, used blockwise per eigenvalue.
//!
//! Which kind goes where is decided per summand-type pair; the similarity
//! pattern inside the finite parts reappears as the `H`-iff-equal-eigenvalue
//! rule. Everything here is oracle-checked: the test suites verify each
//! emitted pattern against the exact transversality criterion.

use crate::canonical::{
    contragredient_summands, pencil_summands, CanonicalStructure, ContragredientStructure,
    ContragredientSummand, EigSpec, JordanStructure, PencilStructure, PencilSummand,
    ValidationError,
};
use crate::quiver::{Star, StarPattern};

/// The star placement rule of one layout cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockKind {
    /// First column if `rows <= cols`, last row otherwise.
    H,
    /// A grid of `H` cells over the given strip sizes; the sizes must tile
    /// the cell exactly.
    CalH {
        row_sizes: Vec<usize>,
        col_sizes: Vec<usize>,
    },
    /// Entire first row.
    TopRow,
    /// Entire last row.
    BottomRow,
    /// Entire first column.
    FirstColumn,
    /// Entire last column.
    LastColumn,
    /// First `max(cols - rows, 0)` entries of the first row.
    Z,
    /// First `max(rows - cols, 0)` entries of the first column.
    ZTranspose,
    /// No stars.
    Zero,
}

impl BlockKind {
    /// Number of stars without enumerating them.
    pub fn star_count(&self, rows: usize, cols: usize) -> usize {
        if rows == 0 || cols == 0 {
            return 0;
        }
        match self {
            BlockKind::H => rows.min(cols),
            BlockKind::CalH {
                row_sizes,
                col_sizes,
            } => row_sizes
                .iter()
                .map(|&p| col_sizes.iter().map(|&q| p.min(q)).sum::<usize>())
                .sum(),
            BlockKind::TopRow | BlockKind::BottomRow => cols,
            BlockKind::FirstColumn | BlockKind::LastColumn => rows,
            BlockKind::Z => cols.saturating_sub(rows),
            BlockKind::ZTranspose => rows.saturating_sub(cols),
            BlockKind::Zero => 0,
        }
    }
}

/// Star positions of one kind inside a `rows x cols` cell, in a fixed
/// row-major order. Degenerate shapes yield the empty set.
pub fn stars_of_kind(kind: &BlockKind, rows: usize, cols: usize) -> Vec<(usize, usize)> {
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    match kind {
        BlockKind::H => {
            if rows <= cols {
                (0..rows).map(|r| (r, 0)).collect()
            } else {
                (0..cols).map(|c| (rows - 1, c)).collect()
            }
        }
        BlockKind::CalH {
            row_sizes,
            col_sizes,
        } => {
            debug_assert_eq!(row_sizes.iter().sum::<usize>(), rows, "row tiling");
            debug_assert_eq!(col_sizes.iter().sum::<usize>(), cols, "column tiling");
            cal_h(row_sizes, col_sizes)
        }
        BlockKind::TopRow => (0..cols).map(|c| (0, c)).collect(),
        BlockKind::BottomRow => (0..cols).map(|c| (rows - 1, c)).collect(),
        BlockKind::FirstColumn => (0..rows).map(|r| (r, 0)).collect(),
        BlockKind::LastColumn => (0..rows).map(|r| (r, cols - 1)).collect(),
        BlockKind::Z => (0..cols.saturating_sub(rows)).map(|c| (0, c)).collect(),
        BlockKind::ZTranspose => (0..rows.saturating_sub(cols)).map(|r| (r, 0)).collect(),
        BlockKind::Zero => Vec::new(),
    }
}

/// The composite grid of `H` blocks over the given strip sizes: the union of
/// `H` stars of every `(i, j)` cell, offset to its block position.
pub fn cal_h(row_sizes: &[usize], col_sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut r0 = 0;
    for &p in row_sizes {
        let mut c0 = 0;
        for &q in col_sizes {
            out.extend(
                stars_of_kind(&BlockKind::H, p, q)
                    .into_iter()
                    .map(|(r, c)| (r0 + r, c0 + c)),
            );
            c0 += q;
        }
        r0 += p;
    }
    out
}

/// The block layout of one target matrix: strip sizes plus one kind per
/// (row summand, column summand) cell. The strips tile the matrix exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowLayout {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
    pub cells: Vec<Vec<BlockKind>>,
}

impl ArrowLayout {
    pub fn rows(&self) -> usize {
        self.row_sizes.iter().sum()
    }

    pub fn cols(&self) -> usize {
        self.col_sizes.iter().sum()
    }

    fn stars(&self, arrow: usize, out: &mut Vec<Star>) {
        let mut r0 = 0;
        for (i, &p) in self.row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (j, &q) in self.col_sizes.iter().enumerate() {
                for (r, c) in stars_of_kind(&self.cells[i][j], p, q) {
                    out.push(Star {
                        arrow,
                        row: r0 + r,
                        col: c0 + c,
                    });
                }
                c0 += q;
            }
            r0 += p;
        }
    }

    fn star_count(&self) -> usize {
        let mut total = 0;
        for (i, &p) in self.row_sizes.iter().enumerate() {
            for (j, &q) in self.col_sizes.iter().enumerate() {
                total += self.cells[i][j].star_count(p, q);
            }
        }
        total
    }
}

/// Block layouts of a full pattern, one per arrow of the target quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternLayout {
    pub arrows: Vec<ArrowLayout>,
}

impl PatternLayout {
    /// Stars in the canonical parameter order: arrows in order, then cells
    /// block-row-major, then the kind's own order inside each cell.
    pub fn stars(&self) -> StarPattern {
        let mut out = Vec::new();
        for (idx, arrow) in self.arrows.iter().enumerate() {
            arrow.stars(idx, &mut out);
        }
        StarPattern::new(out)
    }

    /// Total parameter count, computed cellwise without enumeration.
    pub fn star_count(&self) -> usize {
        self.arrows.iter().map(ArrowLayout::star_count).sum()
    }
}

// ---------------------------------------------------------------------------
// Similarity
// ---------------------------------------------------------------------------

/// Layout of the similarity pattern: one `CalH` cell per eigenvalue on the
/// diagonal, zero elsewhere. Conjugate-pair blocks enter with their doubled
/// materialized sizes.
pub fn similarity_layout(s: &JordanStructure) -> Result<PatternLayout, ValidationError> {
    s.validate()?;
    let groups: Vec<Vec<usize>> = s
        .eigenblocks
        .iter()
        .map(|(eig, partition)| partition.iter().map(|&sz| eig.block_dim(sz)).collect())
        .collect();
    let strip_sizes: Vec<usize> = groups.iter().map(|g| g.iter().sum()).collect();
    let cells: Vec<Vec<BlockKind>> = (0..groups.len())
        .map(|i| {
            (0..groups.len())
                .map(|j| {
                    if i == j {
                        BlockKind::CalH {
                            row_sizes: groups[i].clone(),
                            col_sizes: groups[i].clone(),
                        }
                    } else {
                        BlockKind::Zero
                    }
                })
                .collect()
        })
        .collect();
    Ok(PatternLayout {
        arrows: vec![ArrowLayout {
            row_sizes: strip_sizes.clone(),
            col_sizes: strip_sizes,
            cells,
        }],
    })
}

/// The simplest miniversal deformation pattern of a Jordan structure.
pub fn similarity_pattern(s: &JordanStructure) -> Result<StarPattern, ValidationError> {
    Ok(similarity_layout(s)?.stars())
}

// ---------------------------------------------------------------------------
// Pencil
// ---------------------------------------------------------------------------

fn pencil_finite_eig(s: &PencilSummand) -> Option<&EigSpec> {
    match s {
        PencilSummand::Finite { eig, .. } => Some(eig),
        _ => None,
    }
}

/// Layout of the pencil pattern over the canonical summand strips. The
/// coupling cells, for row summand `i` and column summand `j` in canonical
/// order:
///
/// * minimal x minimal: `Z` in the second matrix (nonempty above the
///   diagonal only);
/// * minimal x finite: first row in the second matrix;
/// * minimal x infinity: last row in the first matrix;
/// * minimal x transposed-minimal: last column in the first matrix and
///   first row in the second;
/// * finite x finite: `H` in the second matrix iff equal eigenvalues (the
///   similarity pattern of the finite part);
/// * finite x transposed-minimal: first column in the second matrix;
/// * infinity x infinity: `H` in the first matrix (the similarity pattern
///   of the part at infinity);
/// * infinity x transposed-minimal: last column in the first matrix;
/// * transposed-minimal pairs: transposed `Z` in the second matrix;
/// * anything else: zero.
pub fn pencil_layout(s: &PencilStructure) -> Result<PatternLayout, ValidationError> {
    s.validate()?;
    let summands = pencil_summands(s);
    let row_sizes: Vec<usize> = summands.iter().map(|sm| sm.shape().0).collect();
    let col_sizes: Vec<usize> = summands.iter().map(|sm| sm.shape().1).collect();

    let n = summands.len();
    let mut a_cells = vec![vec![BlockKind::Zero; n]; n];
    let mut b_cells = vec![vec![BlockKind::Zero; n]; n];

    use PencilSummand::*;
    for (i, si) in summands.iter().enumerate() {
        for (j, sj) in summands.iter().enumerate() {
            match (si, sj) {
                (LeftMinimal { .. }, LeftMinimal { .. }) => {
                    b_cells[i][j] = BlockKind::Z;
                }
                (LeftMinimal { .. }, Finite { .. }) => {
                    b_cells[i][j] = BlockKind::TopRow;
                }
                (LeftMinimal { .. }, Infinite { .. }) => {
                    a_cells[i][j] = BlockKind::BottomRow;
                }
                (LeftMinimal { .. }, RightMinimal { .. }) => {
                    a_cells[i][j] = BlockKind::LastColumn;
                    b_cells[i][j] = BlockKind::TopRow;
                }
                (Finite { .. }, Finite { .. }) => {
                    if pencil_finite_eig(si) == pencil_finite_eig(sj) {
                        b_cells[i][j] = BlockKind::H;
                    }
                }
                (Finite { .. }, RightMinimal { .. }) => {
                    b_cells[i][j] = BlockKind::FirstColumn;
                }
                (Infinite { .. }, Infinite { .. }) => {
                    a_cells[i][j] = BlockKind::H;
                }
                (Infinite { .. }, RightMinimal { .. }) => {
                    a_cells[i][j] = BlockKind::LastColumn;
                }
                (RightMinimal { .. }, RightMinimal { .. }) => {
                    b_cells[i][j] = BlockKind::ZTranspose;
                }
                _ => {}
            }
        }
    }

    Ok(PatternLayout {
        arrows: vec![
            ArrowLayout {
                row_sizes: row_sizes.clone(),
                col_sizes: col_sizes.clone(),
                cells: a_cells,
            },
            ArrowLayout {
                row_sizes,
                col_sizes,
                cells: b_cells,
            },
        ],
    })
}

/// The simplest miniversal deformation pattern of a pencil structure.
pub fn pencil_pattern(s: &PencilStructure) -> Result<StarPattern, ValidationError> {
    Ok(pencil_layout(s)?.stars())
}

// ---------------------------------------------------------------------------
// Contragredient
// ---------------------------------------------------------------------------

fn contragredient_eig(s: &ContragredientSummand) -> Option<&EigSpec> {
    match s {
        ContragredientSummand::Nonsingular { eig, .. } => Some(eig),
        _ => None,
    }
}

/// Layout of the contragredient pattern. With summands in canonical order
/// (nonsingular part, then types 1-4), the cells are, for row summand `i`
/// and column summand `j`:
///
/// * nonsingular x nonsingular: `H` in `B` iff equal eigenvalues (the
///   similarity pattern of the nonsingular part); it couples to nothing
///   else;
/// * type1 x {type1, type2, type3, type4} in either order: `H` in `B`;
/// * type2 x {type2, type3, type4} in either order: `H` in `A`;
/// * type3 x type3: `H` in `A` on and above the diagonal, `H` in `B`
///   strictly below;
/// * type3 x type4: `H` in `A`; the reversed cell gets `H` in `B`;
/// * type4 x type4: `H` in `B` on and above the diagonal, `H` in `A`
///   strictly below.
///
/// `A` cells have shape `(rows_i, cols_j)`, `B` cells `(cols_i, rows_j)`.
pub fn contragredient_layout(
    s: &ContragredientStructure,
) -> Result<PatternLayout, ValidationError> {
    s.validate()?;
    let summands = contragredient_summands(s);
    let m_sizes: Vec<usize> = summands.iter().map(|sm| sm.a_shape().0).collect();
    let n_sizes: Vec<usize> = summands.iter().map(|sm| sm.a_shape().1).collect();

    let n = summands.len();
    let mut a_cells = vec![vec![BlockKind::Zero; n]; n];
    let mut b_cells = vec![vec![BlockKind::Zero; n]; n];

    use ContragredientSummand::*;
    for (i, si) in summands.iter().enumerate() {
        for (j, sj) in summands.iter().enumerate() {
            match (si, sj) {
                (Nonsingular { .. }, Nonsingular { .. }) => {
                    if contragredient_eig(si) == contragredient_eig(sj) {
                        b_cells[i][j] = BlockKind::H;
                    }
                }
                (Type1 { .. }, Type1 { .. })
                | (Type1 { .. }, Type2 { .. })
                | (Type2 { .. }, Type1 { .. })
                | (Type1 { .. }, Type3 { .. })
                | (Type3 { .. }, Type1 { .. })
                | (Type1 { .. }, Type4 { .. })
                | (Type4 { .. }, Type1 { .. }) => {
                    b_cells[i][j] = BlockKind::H;
                }
                (Type2 { .. }, Type2 { .. })
                | (Type2 { .. }, Type3 { .. })
                | (Type3 { .. }, Type2 { .. })
                | (Type2 { .. }, Type4 { .. })
                | (Type4 { .. }, Type2 { .. }) => {
                    a_cells[i][j] = BlockKind::H;
                }
                (Type3 { .. }, Type3 { .. }) => {
                    if i <= j {
                        a_cells[i][j] = BlockKind::H;
                    } else {
                        b_cells[i][j] = BlockKind::H;
                    }
                }
                (Type3 { .. }, Type4 { .. }) => {
                    a_cells[i][j] = BlockKind::H;
                }
                (Type4 { .. }, Type3 { .. }) => {
                    b_cells[i][j] = BlockKind::H;
                }
                (Type4 { .. }, Type4 { .. }) => {
                    if i <= j {
                        b_cells[i][j] = BlockKind::H;
                    } else {
                        a_cells[i][j] = BlockKind::H;
                    }
                }
                _ => {}
            }
        }
    }

    Ok(PatternLayout {
        arrows: vec![
            ArrowLayout {
                row_sizes: m_sizes.clone(),
                col_sizes: n_sizes.clone(),
                cells: a_cells,
            },
            ArrowLayout {
                row_sizes: n_sizes,
                col_sizes: m_sizes,
                cells: b_cells,
            },
        ],
    })
}

/// The simplest miniversal deformation pattern of a contragredient
/// structure.
pub fn contragredient_pattern(
    s: &ContragredientStructure,
) -> Result<StarPattern, ValidationError> {
    Ok(contragredient_layout(s)?.stars())
}

// ---------------------------------------------------------------------------
// Unified entry points
// ---------------------------------------------------------------------------

/// Layout of the closed-form pattern for any canonical structure.
pub fn layout_for(s: &CanonicalStructure) -> Result<PatternLayout, ValidationError> {
    match s {
        CanonicalStructure::Similarity(j) => similarity_layout(j),
        CanonicalStructure::Pencil(p) => pencil_layout(p),
        CanonicalStructure::Contragredient(c) => contragredient_layout(c),
    }
}

/// The closed-form pattern for any canonical structure.
pub fn pattern_for(s: &CanonicalStructure) -> Result<StarPattern, ValidationError> {
    Ok(layout_for(s)?.stars())
}

/// Parameter count of the closed-form pattern, computed without materializing
/// matrices or enumerating positions. For similarity this is
/// `sum over eigenvalues of sum_{i,j} min(w_i, w_j)` with `w` the
/// (possibly doubled) block sizes.
pub fn star_count(s: &CanonicalStructure) -> Result<usize, ValidationError> {
    Ok(layout_for(s)?.star_count())
}
