//! Sign conventions used by the differentials and the cup product.
//!
//! Every complex in the engine is sensitive to these, so they live in one
//! place. Subsets of the prime family are bitmasks over its ascending index
//! order, which is also the total order all the signs refer to.

/// `(-1)^{#{j in T : j < i}}` for `i in T`, `0` otherwise.
pub fn omega_i_t(i: usize, t_mask: u32) -> i64 {
    if t_mask & (1 << i) == 0 {
        return 0;
    }
    let below = t_mask & ((1u32 << i) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `omega(e)_i = sum_{j < i} e_j`.
pub fn omega_e_at(e: &[u32], i: usize) -> u64 {
    e[..i].iter().map(|&x| x as u64).sum()
}

/// `(-1)^{omega(e)_i}`.
pub fn omega_e_sign(e: &[u32], i: usize) -> i64 {
    if omega_e_at(e, i) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `omega(e, e') = sum_{j < i} e'_j e_i`.
pub fn omega_pair(e: &[u32], e_prime: &[u32]) -> u64 {
    let mut total = 0u64;
    let mut prefix = 0u64;
    for i in 0..e.len() {
        if i > 0 {
            prefix += e_prime[i - 1] as u64;
        }
        total += prefix * e[i] as u64;
    }
    total
}

/// `(-1)^{omega(e, e')}` — the Koszul reordering twist of the diagonal map.
pub fn omega_pair_sign(e: &[u32], e_prime: &[u32]) -> i64 {
    if omega_pair(e, e_prime) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{|T|}` — the Hom-complex twist on the resolution differential.
pub fn hom_twist(t_mask: u32) -> i64 {
    if t_mask.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^{k (2t - k - 1) / 2}` — the coefficient of the `|T'| = k` layer in
/// the explicit degree-`(|T| - s)` cocycle, `t = |T|`. The product
/// `k (2t - k - 1)` is always even.
pub fn explicit_cocycle_sign(k: u32, t: u32) -> i64 {
    if k == 0 {
        return 1;
    }
    debug_assert!(k <= t);
    let prod = (k as u64) * (2 * t as u64 - k as u64 - 1);
    debug_assert!(prod % 2 == 0);
    if (prod / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_i_t_cases() {
        // T = {0, 2}: i=0 has nothing below, i=2 has one element below
        let t = 0b101;
        assert_eq!(omega_i_t(0, t), 1);
        assert_eq!(omega_i_t(1, t), 0);
        assert_eq!(omega_i_t(2, t), -1);
        // alternating signs over a full set
        let full = 0b1111;
        assert_eq!(
            (0..4).map(|i| omega_i_t(i, full)).collect::<Vec<_>>(),
            vec![1, -1, 1, -1]
        );
    }

    #[test]
    fn omega_e_prefix_sums() {
        let e = [1, 0, 2, 1];
        assert_eq!(omega_e_at(&e, 0), 0);
        assert_eq!(omega_e_at(&e, 1), 1);
        assert_eq!(omega_e_at(&e, 2), 1);
        assert_eq!(omega_e_at(&e, 3), 3);
        assert_eq!(omega_e_sign(&e, 3), -1);
    }

    #[test]
    fn omega_pair_examples() {
        // omega((1,0), (0,1)) = 0 and omega((0,1), (1,0)) = 1
        assert_eq!(omega_pair(&[1, 0], &[0, 1]), 0);
        assert_eq!(omega_pair(&[0, 1], &[1, 0]), 1);
        // omega(e,e') + omega(e',e) = deg e * deg e' - sum e_i e'_i
        let e = [2, 1, 3];
        let ep = [1, 2, 0];
        let de: u64 = e.iter().map(|&x| x as u64).sum();
        let dep: u64 = ep.iter().map(|&x| x as u64).sum();
        let dot: u64 = e.iter().zip(&ep).map(|(&a, &b)| (a * b) as u64).sum();
        assert_eq!(omega_pair(&e, &ep) + omega_pair(&ep, &e), de * dep - dot);
    }

    #[test]
    fn explicit_cocycle_sign_small() {
        assert_eq!(explicit_cocycle_sign(0, 2), 1);
        assert_eq!(explicit_cocycle_sign(1, 1), 1); // 1*(2-1-1)/2 = 0
        assert_eq!(explicit_cocycle_sign(1, 2), -1); // 1*(4-1-1)/2 = 1
        assert_eq!(explicit_cocycle_sign(2, 2), -1); // 2*(4-2-1)/2 = 1
    }
}
