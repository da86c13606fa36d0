//! The abstract projection complex over subsets: components are direct
//! sums of free pieces indexed by subsets, the differential projects away
//! one index at a time with the usual alternating signs, and cohomology
//! concentrates in degree zero on the pieces indexed above `T`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::EngineError;
use crate::exactlin::{homology_at, CohomologyGroup, ExactMatrix};
use crate::signs::omega_i_t;

/// Basis entry: piece `B_{T''}` inside the summand `A_{T'}`, coordinate `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Entry {
    t_prime: u32,
    t_inner: u32,
    k: usize,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub homology: Vec<(i64, CohomologyGroup)>,
    pub expected_rank: usize,
    pub pass: bool,
}

/// Build the complex for subsets of an `s`-element set relative to `T`,
/// with prescribed ranks for the pieces, and verify the concentration.
///
/// Degree `n` holds the summands `A_{T'}` for `|T'| = s - n` with `T'`
/// containing the complement of `T`; `A_{T'}` is the sum of `B_{T''}` over
/// `T''` inside `T'`.
pub fn lemma_complex_check(
    s: usize,
    t_mask: u32,
    ranks: &BTreeMap<u32, usize>,
) -> Result<LemmaReport, EngineError> {
    let full: u32 = if s == 0 { 0 } else { (1u32 << s) - 1 };
    assert!(t_mask & !full == 0, "T must be a subset of the index set");
    let complement = full & !t_mask;
    let t_size = t_mask.count_ones() as usize;

    let mut spaces: Vec<Vec<Entry>> = Vec::new();
    for n in 0..=t_size {
        let mut list = Vec::new();
        for t_prime in 0..=full {
            if t_prime.count_ones() as usize != s - n || t_prime & complement != complement {
                continue;
            }
            for t_inner in 0..=full {
                if t_inner & !t_prime != 0 {
                    continue;
                }
                for k in 0..*ranks.get(&t_inner).unwrap_or(&0) {
                    list.push(Entry {
                        t_prime,
                        t_inner,
                        k,
                    });
                }
            }
        }
        list.sort();
        spaces.push(list);
    }

    let mut matrices = Vec::new();
    for n in 0..t_size {
        let from = &spaces[n];
        let to = &spaces[n + 1];
        let index: BTreeMap<Entry, usize> = to.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut m = ExactMatrix::zero(to.len(), from.len());
        for (j, entry) in from.iter().enumerate() {
            let active = entry.t_prime & t_mask;
            for i in 0..s {
                if active & (1 << i) == 0 {
                    continue;
                }
                // the projection kills pieces not inside T' \ {i}
                if entry.t_inner & (1 << i) != 0 {
                    continue;
                }
                let sign = omega_i_t(i, active);
                let target = Entry {
                    t_prime: entry.t_prime & !(1 << i),
                    t_inner: entry.t_inner,
                    k: entry.k,
                };
                m.add_to(index[&target], j, &BigInt::from(sign));
            }
        }
        matrices.push(m);
    }

    let mut homology = Vec::new();
    for n in 0..=t_size {
        let d_in = if n == 0 {
            ExactMatrix::zero(spaces[0].len(), 0)
        } else {
            matrices[n - 1].clone()
        };
        let d_out = if n == t_size {
            ExactMatrix::zero(0, spaces[n].len())
        } else {
            matrices[n].clone()
        };
        homology.push((n as i64, homology_at(&d_in, &d_out)?));
    }

    let expected_rank: usize = (0..=full)
        .filter(|tp| tp & t_mask == t_mask)
        .map(|tp| *ranks.get(&tp).unwrap_or(&0))
        .sum();
    let pass = homology.iter().all(|(n, h)| {
        if *n == 0 {
            h.invariant_factors.is_empty() && h.free_rank == expected_rank
        } else {
            h.is_trivial()
        }
    });
    Ok(LemmaReport {
        homology,
        expected_rank,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ranks(s: usize, r: usize) -> BTreeMap<u32, usize> {
        let full: u32 = if s == 0 { 0 } else { (1u32 << s) - 1 };
        (0..=full).map(|m| (m, r)).collect()
    }

    #[test]
    fn empty_t_is_trivial() {
        let ranks = all_ranks(2, 1);
        let rep = lemma_complex_check(2, 0, &ranks).unwrap();
        assert!(rep.pass);
        // full sum: all four subsets
        assert_eq!(rep.expected_rank, 4);
    }

    #[test]
    fn s2_singleton() {
        let ranks = all_ranks(2, 1);
        let rep = lemma_complex_check(2, 0b01, &ranks).unwrap();
        assert!(rep.pass);
        // pieces above {0}: {0} and {0,1}
        assert_eq!(rep.expected_rank, 2);
    }

    #[test]
    fn s3_full_random_ranks() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let ranks: BTreeMap<u32, usize> =
                (0..8u32).map(|m| (m, rng.gen_range(0..=3))).collect();
            for t_mask in 0..8u32 {
                let rep = lemma_complex_check(3, t_mask, &ranks).unwrap();
                assert!(rep.pass, "T={t_mask:#b} ranks={ranks:?}");
            }
        }
    }
}
