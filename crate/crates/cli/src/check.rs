//! Batch property checking over random structures: every sampled structure
//! must satisfy the pattern invariants (oracle-verified miniversality,
//! closed-form count = pattern size = codimension = greedy count, exact
//! layout tiling, orthogonal basis of matching dimension).

use miniversal::canonical::Problem;
use miniversal::exact::Field;
use miniversal::patterns;
use miniversal::quiver::{greedy_simplest_miniversal, verify_transversal, Star, StarPattern};
use miniversal::sample;

use crate::spec::spec_value;
use crate::CliError;

const COMBOS: [(Problem, Field); 6] = [
    (Problem::Similarity, Field::Complex),
    (Problem::Similarity, Field::Real),
    (Problem::Pencil, Field::Complex),
    (Problem::Pencil, Field::Real),
    (Problem::Contragredient, Field::Complex),
    (Problem::Contragredient, Field::Real),
];

/// Run `trials` random trials; returns a printable summary or the first
/// failure with the offending structure serialized for replay. `corrupt`
/// deliberately damages each pattern to prove the tripwire trips.
pub fn run_check(
    max_size: usize,
    seed: u64,
    trials: usize,
    corrupt: bool,
) -> Result<String, CliError> {
    if max_size == 0 {
        return Err(CliError::Parse("--max-size must be >= 1".into()));
    }
    let mut rng = sample::rng_for_seed(seed);
    let mut counts = [0usize; 3];
    for trial in 0..trials {
        let (problem, field) = COMBOS[trial % COMBOS.len()];
        let s = sample::random_structure(&mut rng, problem, field, max_size);
        let fail = |what: &str| {
            CliError::Property(format!(
                "trial {trial}: {what}\nreplay structure: {}",
                spec_value(&s)
            ))
        };

        let rep = s.build().map_err(|e| fail(&e.to_string()))?;
        let layout = patterns::layout_for(&s).map_err(|e| fail(&e.to_string()))?;
        for (arrow, al) in layout.arrows.iter().enumerate() {
            let m = &rep.mats()[arrow];
            if al.rows() != m.rows() || al.cols() != m.cols() {
                return Err(fail("layout does not tile the canonical matrices"));
            }
        }

        let mut pattern = layout.stars();
        if corrupt {
            pattern = corrupt_pattern(&pattern);
        }

        let report = verify_transversal(&rep, &pattern).map_err(|e| fail(&e.to_string()))?;
        if !report.is_miniversal {
            return Err(fail(&format!("pattern is not miniversal: {report:?}")));
        }
        let codim = report.ambient_dim - report.tangent_rank;
        if pattern.len() != codim {
            return Err(fail("pattern size differs from codimension"));
        }
        if layout.star_count() != pattern.len() {
            return Err(fail("closed-form star count differs from enumeration"));
        }
        let greedy = greedy_simplest_miniversal(&rep, &rep.entry_coordinates());
        if greedy.len() != codim {
            return Err(fail("greedy pattern size differs from codimension"));
        }
        let orthogonal = miniversal::quiver::orthogonal_miniversal(&rep);
        if orthogonal.len() != codim {
            return Err(fail("orthogonal basis size differs from codimension"));
        }

        counts[match problem {
            Problem::Similarity => 0,
            Problem::Pencil => 1,
            Problem::Contragredient => 2,
        }] += 1;
    }
    Ok(format!(
        "checked {trials} structures (max block size {max_size}, seed {seed}): \
         similarity {}, pencil {}, contragredient {}; all invariants hold",
        counts[0], counts[1], counts[2]
    ))
}

/// Damage a pattern: drop its last parameter, or add a bogus one when the
/// pattern is empty. Either way the transversality check must reject it.
fn corrupt_pattern(p: &StarPattern) -> StarPattern {
    let mut stars = p.stars().to_vec();
    if stars.pop().is_none() {
        stars.push(Star {
            arrow: 0,
            row: 0,
            col: 0,
        });
    }
    StarPattern::new(stars)
}
