//! Integral cohomology of the subgroups `G_T` through the tensor product of
//! the periodic two-term complexes, and the same values in closed form from
//! the gcd decomposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::EngineError;
use crate::exactlin::{homology_at, CohomologyGroup, ExactMatrix};
use crate::galois::{MultiIndex, PrimeConfig};
use crate::signs::omega_e_sign;

/// `gcd(l_i - 1 : i in supp e)`; 0 for the zero index (free summand).
pub fn m_of_support(cfg: &PrimeConfig, supp_mask: u32) -> u64 {
    let mut g = 0u64;
    for (i, &l) in cfg.primes().iter().enumerate() {
        if supp_mask & (1 << i) != 0 {
            g = num_integer::gcd(g, l - 1);
        }
    }
    g
}

/// Per-degree orders contributed by the summand of an even multi-index `e`:
/// `(Z/m_e)^{C(t-1, j)}` in degree `deg e - j` for `0 <= j <= t - 1`, where
/// `t = |supp e|`; the zero index contributes `Z` in degree 0.
pub fn a_e_orders(cfg: &PrimeConfig, e: &MultiIndex) -> Vec<(i64, u64, usize)> {
    let t = e.supp_mask().count_ones() as i64;
    if t == 0 {
        return vec![(0, 0, 1)];
    }
    let m = m_of_support(cfg, e.supp_mask());
    let deg = e.deg() as i64;
    (0..t)
        .map(|j| {
            let mult = binomial((t - 1) as u64, j as u64) as usize;
            (deg - j, m, mult)
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `H^n(G_T, Z)` for `0 <= n <= n_max`, assembled from the even
/// multi-indices with support inside `T`.
pub fn cohomology_z_closed_form(
    cfg: &PrimeConfig,
    t_mask: u32,
    n_max: u64,
) -> Vec<CohomologyGroup> {
    let mut per_degree: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    // a degree-n contribution needs deg e in [n, n + s - 1]
    let hi = n_max + cfg.s().max(1) as u64 - 1;
    for e in MultiIndex::even_with_support_in(cfg.s(), t_mask, 0, hi) {
        for (n, order, mult) in a_e_orders(cfg, &e) {
            if n >= 0 && n as u64 <= n_max {
                for _ in 0..mult {
                    per_degree.entry(n).or_default().push(order);
                }
            }
        }
    }
    (0..=n_max as i64)
        .map(|n| match per_degree.get(&n) {
            None => CohomologyGroup::trivial(),
            Some(orders) => CohomologyGroup::from_cyclic_orders(orders.iter().copied()),
        })
        .collect()
}

/// The tensor-product cochain complex `C_T`: degree-`n` space is free on
/// the multi-indices of degree `n` supported in `T`; the differential
/// multiplies slot `i` by `l_i - 1` when `e_i` is odd and by 0 when even,
/// with the prefix-sum sign.
pub fn c_t_matrix(cfg: &PrimeConfig, t_mask: u32, from_degree: u64) -> ExactMatrix {
    let from = indices_at(cfg, t_mask, from_degree);
    let to = indices_at(cfg, t_mask, from_degree + 1);
    let index: BTreeMap<MultiIndex, usize> =
        to.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let mut m = ExactMatrix::zero(to.len(), from.len());
    for (j, e) in from.iter().enumerate() {
        for i in 0..cfg.s() {
            if t_mask & (1 << i) == 0 {
                continue;
            }
            if e.components()[i] % 2 == 0 {
                continue;
            }
            let coeff =
                BigInt::from(omega_e_sign(e.components(), i) * (cfg.primes()[i] as i64 - 1));
            if coeff.is_zero() {
                continue;
            }
            m.add_to(index[&e.bump(i)], j, &coeff);
        }
    }
    m
}

pub fn indices_at(cfg: &PrimeConfig, t_mask: u32, degree: u64) -> Vec<MultiIndex> {
    MultiIndex::all_of_degree(cfg.s(), degree)
        .into_iter()
        .filter(|e| e.supp_mask() & !t_mask == 0)
        .collect()
}

/// The same cohomology computed by normal forms on the explicit complex.
pub fn cohomology_z_snf(
    cfg: &PrimeConfig,
    t_mask: u32,
    n_max: u64,
) -> Result<Vec<CohomologyGroup>, EngineError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let d_out = c_t_matrix(cfg, t_mask, n);
        let d_in = if n == 0 {
            ExactMatrix::zero(d_out.cols(), 0)
        } else {
            c_t_matrix(cfg, t_mask, n - 1)
        };
        out.push(homology_at(&d_in, &d_out)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_single_prime() {
        let cfg = PrimeConfig::new(&[3], 2).unwrap();
        let h = cohomology_z_closed_form(&cfg, 0b1, 4);
        assert_eq!(h[0], CohomologyGroup::free(1));
        assert!(h[1].is_trivial());
        assert_eq!(h[2], CohomologyGroup::from_cyclic_orders([2]));
        assert!(h[3].is_trivial());
        assert_eq!(h[4], CohomologyGroup::from_cyclic_orders([2]));
    }

    #[test]
    fn closed_form_two_primes() {
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        let h = cohomology_z_closed_form(&cfg, 0b11, 4);
        assert_eq!(h[0], CohomologyGroup::free(1));
        assert!(h[1].is_trivial());
        assert_eq!(h[2], CohomologyGroup::from_cyclic_orders([2, 6]));
        assert_eq!(h[3], CohomologyGroup::from_cyclic_orders([2]));
        assert_eq!(h[4], CohomologyGroup::from_cyclic_orders([2, 6, 2]));
    }

    #[test]
    fn closed_form_empty_subset() {
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        let h = cohomology_z_closed_form(&cfg, 0, 3);
        assert_eq!(h[0], CohomologyGroup::free(1));
        assert!(h[1..].iter().all(|g| g.is_trivial()));
    }

    #[test]
    fn snf_agrees_with_closed_form() {
        for primes in [vec![3u64], vec![3, 7], vec![3, 5, 7]] {
            let cfg = PrimeConfig::new(&primes, 2).unwrap();
            for t_mask in 0..=cfg.full_mask() {
                let closed = cohomology_z_closed_form(&cfg, t_mask, 6);
                let snf = cohomology_z_snf(&cfg, t_mask, 6).unwrap();
                assert_eq!(closed, snf, "T = {t_mask:#b} over {primes:?}");
            }
        }
    }
}
