//! Seed-reproducible random canonical structures and directions, used by the
//! batch property checker and by randomized tests.
//!
//! Partitions draw uniform sizes in `[1, max_block]`; eigenvalues come from
//! a small rational pool with enforced distinctness. The same seed always
//! yields the same structure.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    CanonicalStructure, ContragredientStructure, EigSpec, JordanStructure, PencilStructure,
    Problem,
};
use crate::exact::{ExactMatrix, Field, GaussianRational, Rational, Scalar};
use crate::quiver::Representation;

/// A deterministic RNG for the given seed.
pub fn rng_for_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Candidate eigenvalues; `nonzero_only` restricts the pool for the
/// contragredient nonsingular part.
fn eig_pool(field: Field, nonzero_only: bool) -> Vec<EigSpec> {
    match field {
        Field::Complex => {
            let mut pool = vec![
                EigSpec::Complex(GaussianRational::from_ints(1, 0)),
                EigSpec::Complex(GaussianRational::from_ints(-2, 0)),
                EigSpec::Complex(GaussianRational::new(rat(1, 2), rat(0, 1))),
                EigSpec::Complex(GaussianRational::from_ints(0, 1)),
                EigSpec::Complex(GaussianRational::from_ints(1, 1)),
            ];
            if !nonzero_only {
                pool.push(EigSpec::Complex(GaussianRational::from_ints(0, 0)));
            }
            pool
        }
        Field::Real => {
            let mut pool = vec![
                EigSpec::Real(rat(1, 1)),
                EigSpec::Real(rat(-2, 1)),
                EigSpec::Real(rat(1, 2)),
                EigSpec::ComplexPair {
                    re: rat(1, 1),
                    im: rat(1, 1),
                },
                EigSpec::ComplexPair {
                    re: rat(0, 1),
                    im: rat(2, 1),
                },
            ];
            if !nonzero_only {
                pool.push(EigSpec::Real(rat(0, 1)));
            }
            pool
        }
    }
}

fn random_partition(rng: &mut impl Rng, max_block: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    let mut p: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=max_block)).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

fn random_jordan(
    rng: &mut impl Rng,
    field: Field,
    max_block: usize,
    nonzero_only: bool,
) -> JordanStructure {
    let mut pool = eig_pool(field, nonzero_only);
    let count = rng.gen_range(1..=2.min(pool.len()));
    let mut eigenblocks = Vec::with_capacity(count);
    for _ in 0..count {
        let idx = rng.gen_range(0..pool.len());
        let eig = pool.swap_remove(idx);
        let partition = random_partition(rng, max_block, 2);
        eigenblocks.push((eig, partition));
    }
    JordanStructure::new(field, eigenblocks)
}

fn maybe_sizes(rng: &mut impl Rng, max_block: usize, descending: bool) -> Vec<usize> {
    if rng.gen_bool(0.5) {
        return Vec::new();
    }
    let mut v = random_partition(rng, max_block, 2);
    if !descending {
        v.reverse();
    }
    v
}

/// Sample one valid canonical structure with block sizes at most
/// `max_block`.
pub fn random_structure(
    rng: &mut impl Rng,
    problem: Problem,
    field: Field,
    max_block: usize,
) -> CanonicalStructure {
    match problem {
        Problem::Similarity => {
            CanonicalStructure::Similarity(random_jordan(rng, field, max_block, false))
        }
        Problem::Pencil => loop {
            let left = maybe_sizes(rng, max_block, false);
            let finite = if rng.gen_bool(0.6) {
                random_jordan(rng, field, max_block, false)
            } else {
                JordanStructure::empty(field)
            };
            let infinite = maybe_sizes(rng, max_block, true);
            let right = maybe_sizes(rng, max_block, true);
            let s = PencilStructure {
                field,
                left_minimal: left,
                finite,
                infinite,
                right_minimal: right,
            };
            if !pencil_is_empty(&s) {
                break CanonicalStructure::Pencil(s);
            }
        },
        Problem::Contragredient => loop {
            let nonsingular = if rng.gen_bool(0.5) {
                random_jordan(rng, field, max_block, true)
            } else {
                JordanStructure::empty(field)
            };
            let s = ContragredientStructure {
                field,
                nonsingular,
                type1: maybe_sizes(rng, max_block, true),
                type2: maybe_sizes(rng, max_block, true),
                type3: maybe_sizes(rng, max_block, true),
                type4: maybe_sizes(rng, max_block, true),
            };
            if !contragredient_is_empty(&s) {
                break CanonicalStructure::Contragredient(s);
            }
        },
    }
}

fn pencil_is_empty(s: &PencilStructure) -> bool {
    s.left_minimal.is_empty()
        && s.finite.eigenblocks.is_empty()
        && s.infinite.is_empty()
        && s.right_minimal.is_empty()
}

fn contragredient_is_empty(s: &ContragredientStructure) -> bool {
    s.nonsingular.eigenblocks.is_empty()
        && s.type1.is_empty()
        && s.type2.is_empty()
        && s.type3.is_empty()
        && s.type4.is_empty()
}

fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    let mut part = || rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    match field {
        Field::Real => Scalar::Rational(part()),
        Field::Complex => {
            let re = part();
            let im = part();
            Scalar::Gaussian(GaussianRational::new(re, im))
        }
    }
}

/// A random direction with the same shape as `rep`, with small rational
/// entries.
pub fn random_direction(rng: &mut impl Rng, rep: &Representation) -> Representation {
    let mats: Vec<ExactMatrix> = rep
        .mats()
        .iter()
        .map(|m| {
            ExactMatrix::from_fn(rep.field(), m.rows(), m.cols(), |_, _| {
                random_scalar(rng, rep.field())
            })
        })
        .collect();
    Representation::new(
        rep.quiver().clone(),
        rep.dims().to_vec(),
        rep.field(),
        mats,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_seed_reproducible() {
        for problem in [Problem::Similarity, Problem::Pencil, Problem::Contragredient] {
            let a = random_structure(&mut rng_for_seed(7), problem, Field::Real, 3);
            let b = random_structure(&mut rng_for_seed(7), problem, Field::Real, 3);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sampled_structures_validate() {
        let mut rng = rng_for_seed(42);
        for _ in 0..40 {
            for problem in [Problem::Similarity, Problem::Pencil, Problem::Contragredient] {
                for field in [Field::Real, Field::Complex] {
                    let s = random_structure(&mut rng, problem, field, 3);
                    s.validate().unwrap();
                    s.build().unwrap();
                }
            }
        }
    }
}
