//! The contexts a campaign runs over: every boolean matrix of given shapes,
//! or seeded random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::context::{default_attribute_names, default_object_names, FormalContext};
use crate::error::{Error, Result};

/// Largest number of cells an exhaustive enumeration accepts.
pub const MAX_EXHAUSTIVE_CELLS: usize = 16;

/// Largest side length accepted for sampled contexts.
pub const MAX_SAMPLED_SIDE: usize = 8;

/// All `a × b` contexts, incidence codes `0 .. 2^{a·b}` in increasing order.
pub fn enumerate_contexts(a: usize, b: usize) -> Result<impl Iterator<Item = FormalContext>> {
    if a * b > MAX_EXHAUSTIVE_CELLS {
        return Err(Error::Guard(format!(
            "enumerating {a}x{b} contexts needs 2^{} matrices (limit 2^{MAX_EXHAUSTIVE_CELLS})",
            a * b
        )));
    }
    Ok((0..1u64 << (a * b)).map(move |code| FormalContext::from_code(a, b, code)))
}

/// A context whose cells are independently incident with probability `density`.
pub fn random_context(a: usize, b: usize, density: f64, seed: u64) -> Result<FormalContext> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::domain(format!("density {density} outside [0, 1]")));
    }
    Ok(fill(&mut ChaCha8Rng::seed_from_u64(seed), a, b, density))
}

fn fill(rng: &mut ChaCha8Rng, a: usize, b: usize, density: f64) -> FormalContext {
    let cells: Vec<bool> = (0..a * b).map(|_| rng.gen_bool(density)).collect();
    FormalContext::from_fn(default_object_names(a), default_attribute_names(b), |g, m| {
        cells[g * b + m]
    })
    .expect("default names are distinct")
}

/// What a campaign ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    /// Every context with `a ≤ max_objects` and `b ≤ max_attributes`.
    Exhaustive {
        max_objects: usize,
        max_attributes: usize,
    },
    /// `samples` random `objects × attributes` contexts. Sample `i` draws its
    /// density from `[0.15, 0.85]` and its cells from stream `i` of the seed.
    Sampled {
        objects: usize,
        attributes: usize,
        samples: usize,
        seed: u64,
    },
}

impl Scope {
    pub fn exhaustive(max_objects: usize, max_attributes: usize) -> Result<Self> {
        if max_objects * max_attributes > MAX_EXHAUSTIVE_CELLS {
            return Err(Error::Guard(format!(
                "exhaustive scope {max_objects}x{max_attributes} exceeds {MAX_EXHAUSTIVE_CELLS} cells"
            )));
        }
        Ok(Scope::Exhaustive {
            max_objects,
            max_attributes,
        })
    }

    pub fn sampled(objects: usize, attributes: usize, samples: usize, seed: u64) -> Result<Self> {
        if objects > MAX_SAMPLED_SIDE || attributes > MAX_SAMPLED_SIDE {
            return Err(Error::Guard(format!(
                "sampled {objects}x{attributes} contexts exceed side {MAX_SAMPLED_SIDE}"
            )));
        }
        Ok(Scope::Sampled {
            objects,
            attributes,
            samples,
            seed,
        })
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            Scope::Exhaustive { .. } => None,
            Scope::Sampled { seed, .. } => Some(seed),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Scope::Exhaustive {
                max_objects,
                max_attributes,
            } => format!("exhaustive a<={max_objects} b<={max_attributes}"),
            Scope::Sampled {
                objects,
                attributes,
                samples,
                seed,
            } => format!("{samples} samples {objects}x{attributes} seed {seed}"),
        }
    }

    /// Number of contexts in the scope.
    pub fn len(&self) -> usize {
        match *self {
            Scope::Exhaustive {
                max_objects,
                max_attributes,
            } => (0..=max_objects)
                .flat_map(|a| (0..=max_attributes).map(move |b| 1usize << (a * b)))
                .sum(),
            Scope::Sampled { samples, .. } => samples,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Positions of the scope, each turned into a context by [`Scope::context`].
    pub(crate) fn points(&self) -> Vec<Point> {
        match *self {
            Scope::Exhaustive {
                max_objects,
                max_attributes,
            } => (0..=max_objects)
                .flat_map(|a| {
                    (0..=max_attributes)
                        .flat_map(move |b| (0..1u64 << (a * b)).map(move |code| Point::Code { a, b, code }))
                })
                .collect(),
            Scope::Sampled { samples, .. } => (0..samples as u64).map(Point::Sample).collect(),
        }
    }

    pub(crate) fn context(&self, point: Point) -> FormalContext {
        match (point, *self) {
            (Point::Code { a, b, code }, _) => FormalContext::from_code(a, b, code),
            (
                Point::Sample(i),
                Scope::Sampled {
                    objects,
                    attributes,
                    seed,
                    ..
                },
            ) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let density = rng.gen_range(0.15..=0.85);
                fill(&mut rng, objects, attributes, density)
            }
            (Point::Sample(_), Scope::Exhaustive { .. }) => {
                unreachable!("exhaustive scopes only produce code points")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Point {
    Code { a: usize, b: usize, code: u64 },
    Sample(u64),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_contexts(2, 2).unwrap().count(), 16);
        assert_eq!(enumerate_contexts(0, 3).unwrap().count(), 1);
        assert!(matches!(enumerate_contexts(4, 5), Err(Error::Guard(_))));
        let all: Vec<_> = enumerate_contexts(2, 2).unwrap().map(|k| k.incidence_matrix()).collect();
        let mut unique = all.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), 16);
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_context(5, 5, 0.5, 1).unwrap();
        let b = random_context(5, 5, 0.5, 1).unwrap();
        assert!(a.same_incidence(&b));
        assert!(random_context(2, 2, 1.5, 0).is_err());
        assert!(random_context(3, 3, 1.0, 7).unwrap().is_full());
    }

    #[test]
    fn scopes() {
        let s = Scope::exhaustive(2, 2).unwrap();
        assert_eq!(s.len(), 1 + 1 + 1 + 1 + 2 + 4 + 1 + 4 + 16);
        assert_eq!(s.points().len(), s.len());
        assert!(Scope::exhaustive(9, 9).is_err());
        let t = Scope::sampled(5, 5, 10, 3).unwrap();
        let p = t.points();
        assert!(t.context(p[4]).same_incidence(&t.context(p[4])));
        assert_eq!(t.seed(), Some(3));
        assert!(Scope::sampled(9, 2, 1, 0).is_err());
    }
}
