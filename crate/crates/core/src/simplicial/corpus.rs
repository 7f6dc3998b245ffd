//! Bundled one-vertex models and a generator of random small simplicial sets.

use rand::Rng;

use super::builder::SimplicialBuilder;
use super::set::{basepoint_lift, PointedSimplicialSet, SimplicialPointedSet};
use crate::error::{Error, Result};

pub const NAMES: [&str; 5] = ["point", "s0", "circle", "s2", "rp2"];

/// JSON text of a bundled model.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "point" => include_str!("../../data/simplicial/point.json"),
        "s0" => include_str!("../../data/simplicial/s0.json"),
        "circle" => include_str!("../../data/simplicial/circle.json"),
        "s2" => include_str!("../../data/simplicial/s2.json"),
        "rp2" => include_str!("../../data/simplicial/rp2.json"),
        _ => return None,
    })
}

/// A bundled model, parsed from its data file.
pub fn model(name: &str) -> Result<PointedSimplicialSet> {
    let text = source(name).ok_or_else(|| Error::Invalid(format!("no bundled model named {name:?}")))?;
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

pub fn lifted(name: &str) -> Result<SimplicialPointedSet> {
    basepoint_lift(&model(name)?)
}

/// The same models, constructed from their nondegenerate simplices.
pub fn build(name: &str) -> Result<PointedSimplicialSet> {
    const TRUNCATION: usize = 2;
    let mut b = match name {
        "s0" => SimplicialBuilder::new(2),
        _ => SimplicialBuilder::new(1),
    };
    match name {
        "point" | "s0" => {}
        "circle" => {
            b.add_simplex(1, &[0, 0])?;
        }
        "s2" => {
            let v = b.degenerate_vertex(0, 1);
            b.add_simplex(2, &[v, v, v])?;
        }
        "rp2" => {
            let a = b.add_simplex(1, &[0, 0])?;
            let v = b.degenerate_vertex(0, 1);
            b.add_simplex(2, &[a, v, a])?;
        }
        _ => return Err(Error::Invalid(format!("no bundled model named {name:?}"))),
    }
    Ok(PointedSimplicialSet::new(b.build(TRUNCATION), 0))
}

/// Random valid simplicial set of dimension at most `max_dim` with at most
/// `max_level` simplices in every dimension, and a random chosen vertex.
pub fn random_simplicial_set<R: Rng>(rng: &mut R, max_dim: usize, max_level: usize) -> PointedSimplicialSet {
    let max_vertices = max_level.clamp(1, 3);
    let vertices = rng.gen_range(1..=max_vertices);
    let truncation = rng.gen_range(0..=max_dim);
    let mut b = SimplicialBuilder::new(vertices);
    for dim in 1..=truncation {
        for _ in 0..6 {
            let lower = b.build(dim - 1).sets[dim - 1];
            let faces: Vec<usize> = (0..=dim).map(|_| rng.gen_range(0..lower)).collect();
            let mut next = b.clone();
            if next.add_simplex(dim, &faces).is_ok() && next.build(truncation).sets.iter().all(|&s| s <= max_level) {
                b = next;
            }
        }
    }
    let point = rng.gen_range(0..vertices);
    PointedSimplicialSet::new(b.build(truncation), point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn data_files_match_builder() {
        for name in NAMES {
            assert_eq!(model(name).unwrap(), build(name).unwrap(), "{name}");
            assert!(model(name).unwrap().validate().is_valid());
        }
        assert!(model("torus").is_err());
    }

    #[test]
    fn circle_basepoint_is_degenerate_vertex() {
        let x = lifted("circle").unwrap();
        assert_eq!(x.data.sets, vec![1, 2, 3]);
        assert_eq!(x.basepoints[1], x.data.degeneracy(0, 0, 0));
    }

    #[test]
    fn random_sets_are_valid_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut top = 0;
        for _ in 0..40 {
            let x = random_simplicial_set(&mut rng, 3, 5);
            assert!(x.validate().is_valid());
            assert!(x.data.sets.iter().all(|&s| s <= 5));
            top = top.max((1..=x.truncation()).filter(|&n| !x.data.nondegenerate(n).is_empty()).max().unwrap_or(0));
        }
        assert!(top >= 2, "generator never produced a nondegenerate 2-simplex");
    }
}
