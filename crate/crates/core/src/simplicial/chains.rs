use num_bigint::BigInt;

use super::set::SimplicialPointedSet;
use crate::error::Result;
use crate::znf::{ChainComplex, IntMatrix};

/// Reduced normalized chains: degree `n` is free on the nondegenerate,
/// non-basepoint simplices of `X_n`, with `∂ = Σ (-1)^i d_i` where degenerate
/// faces and the basepoint count as zero. Its homology is the reduced
/// homology of the realization, up to the truncation.
pub fn reduced_chains(x: &SimplicialPointedSet) -> Result<ChainComplex> {
    chains(x, true)
}

/// Normalized chains on all nondegenerate simplices, basepoint included.
pub fn normalized_chains(x: &SimplicialPointedSet) -> Result<ChainComplex> {
    chains(x, false)
}

fn chains(x: &SimplicialPointedSet, reduced: bool) -> Result<ChainComplex> {
    x.validate().into_result()?;
    let d = &x.data;
    let bases: Vec<Vec<usize>> = (0..=d.truncation)
        .map(|n| d.nondegenerate(n).into_iter().filter(|&e| !(reduced && x.is_basepoint(n, e))).collect())
        .collect();
    let differentials = (1..=d.truncation)
        .map(|n| {
            let mut m = IntMatrix::zeros(bases[n - 1].len(), bases[n].len());
            for (c, &e) in bases[n].iter().enumerate() {
                for i in 0..=n {
                    if let Ok(r) = bases[n - 1].binary_search(&d.face(n, i, e)) {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        let v = m.get(r, c) + BigInt::from(sign);
                        m.set(r, c, v);
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex::new(0, bases.iter().map(Vec::len).collect(), differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{corpus, levelwise_free, normalized_complex};
    use crate::znf::FgAbelianGroup;

    #[test]
    fn point_gives_zero_complex() {
        let c = reduced_chains(&corpus::lifted("point").unwrap()).unwrap();
        assert!(c.levels().iter().all(|&r| r == 0));
    }

    #[test]
    fn circle_reduced_homology() {
        let h = reduced_chains(&corpus::lifted("circle").unwrap()).unwrap().homology();
        assert_eq!(h.get(1), FgAbelianGroup::free(1));
        assert!(h.get(0).is_trivial());
    }

    #[test]
    fn rp2_boundary_matrix() {
        let c = reduced_chains(&corpus::lifted("rp2").unwrap()).unwrap();
        // one edge a and one triangle with faces (a, s0 v, a)
        assert_eq!(c.differential(2), IntMatrix::from_rows(&[&[2]]));
        let h = c.homology();
        assert_eq!(h.get(1), FgAbelianGroup::cyclic(2));
        assert!(h.get(2).is_trivial());
    }

    #[test]
    fn unreduced_adds_a_point() {
        for name in corpus::NAMES {
            let x = corpus::lifted(name).unwrap();
            let r = reduced_chains(&x).unwrap().homology();
            let u = normalized_chains(&x).unwrap().homology();
            assert_eq!(u.get(0), r.get(0).direct_sum(&FgAbelianGroup::free(1)), "{name}");
            assert!(u.up_to(-1).same_groups(&r.up_to(-1)));
            for n in 1..=2 {
                assert_eq!(u.get(n), r.get(n), "{name} degree {n}");
            }
        }
    }

    #[test]
    fn agrees_with_normalized_complex() {
        for name in corpus::NAMES {
            let x = corpus::lifted(name).unwrap();
            let r = reduced_chains(&x).unwrap().homology();
            let m = normalized_complex(&levelwise_free(&x).unwrap()).unwrap().homology();
            assert!(r.same_groups(&m), "{name}");
        }
    }
}
