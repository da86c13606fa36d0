//! The Galois group of the cyclotomic field of squarefree conductor
//! `r = l_1 ... l_s` as the product of the unit groups mod each prime,
//! together with its group ring and the distinguished norm, derivative and
//! Frobenius elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::EngineError;

/// A family of distinct odd primes in ascending order, a modulus `M`
/// (with `M | l_i - 1` whenever `M > 1`), and the least primitive root of
/// each prime as the fixed generator of its inertia factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeConfig {
    primes: Vec<u64>,
    modulus: u64,
    generators: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least primitive root mod an odd prime `l`.
fn least_primitive_root(l: u64) -> u64 {
    let order = l - 1;
    // prime factors of the group order
    let mut factors = Vec::new();
    let mut m = order;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            factors.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'candidates: for g in 2..l {
        for &q in &factors {
            if pow_mod(g, order / q, l) == 1 {
                continue 'candidates;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl PrimeConfig {
    /// Validate the family and fix generators deterministically.
    pub fn new(primes: &[u64], modulus: u64) -> Result<Self, EngineError> {
        if modulus == 0 {
            return Err(EngineError::BadModulus(
                0,
                "modulus must be positive".into(),
            ));
        }
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(EngineError::BadPrime(w[0], "repeated prime".into()));
            }
        }
        for &l in &sorted {
            if l % 2 == 0 {
                return Err(EngineError::BadPrime(l, "prime must be odd".into()));
            }
            if !is_prime(l) {
                return Err(EngineError::BadPrime(l, "not a prime".into()));
            }
            if modulus > 1 && (l - 1) % modulus != 0 {
                return Err(EngineError::BadModulus(
                    modulus,
                    format!("does not divide {} - 1", l),
                ));
            }
        }
        let generators = sorted.iter().map(|&l| least_primitive_root(l)).collect();
        Ok(PrimeConfig {
            primes: sorted,
            modulus,
            generators,
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Number of primes in the family.
    pub fn s(&self) -> usize {
        self.primes.len()
    }

    /// The conductor `r_T` of a subset given as a bitmask.
    pub fn r_of(&self, t_mask: u32) -> u64 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(i, _)| t_mask & (1 << i) != 0)
            .map(|(_, &l)| l)
            .product()
    }

    /// The full conductor `r = r_S`.
    pub fn level(&self) -> u64 {
        self.r_of(self.full_mask())
    }

    pub fn full_mask(&self) -> u32 {
        if self.primes.is_empty() {
            0
        } else {
            (1u32 << self.primes.len()) - 1
        }
    }

    pub fn order(&self) -> u64 {
        self.primes.iter().map(|l| l - 1).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.s()],
        }
    }

    pub fn sigma(&self, i: usize) -> Result<GroupElement, EngineError> {
        if i >= self.s() {
            return Err(EngineError::IndexOutOfRange(i, self.s()));
        }
        let mut exponents = vec![0; self.s()];
        exponents[i] = 1 % (self.primes[i] - 1);
        Ok(GroupElement { exponents })
    }

    /// The multiplier in `(Z/r)^x` represented by a group element: congruent
    /// to `g_i^{k_i}` mod `l_i` for every `i`.
    pub fn multiplier(&self, g: &GroupElement) -> u64 {
        assert_eq!(g.exponents.len(), self.s(), "wrong group");
        let r = self.level();
        let mut x = 0u64;
        // CRT assembly
        for (i, (&l, &gen)) in self.primes.iter().zip(&self.generators).enumerate() {
            let target = pow_mod(gen, g.exponents[i], l);
            let q = r / l;
            let inv = mod_inverse(q % l, l);
            let coeff = (target as u128 * inv as u128 % l as u128) as u64;
            x = (x + (coeff as u128 * q as u128 % r as u128) as u64) % r;
        }
        x
    }

    pub fn group_mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let exponents = (0..self.s())
            .map(|i| (g.exponents[i] + h.exponents[i]) % (self.primes[i] - 1))
            .collect();
        GroupElement { exponents }
    }

    pub fn group_inv(&self, g: &GroupElement) -> GroupElement {
        let exponents = (0..self.s())
            .map(|i| {
                let m = self.primes[i] - 1;
                (m - g.exponents[i] % m) % m
            })
            .collect();
        GroupElement { exponents }
    }

    pub fn group_pow(&self, g: &GroupElement, k: u64) -> GroupElement {
        let exponents = (0..self.s())
            .map(|i| {
                let m = self.primes[i] - 1;
                ((g.exponents[i] as u128 * k as u128) % m as u128) as u64
            })
            .collect();
        GroupElement { exponents }
    }

    /// Exhaustive list of all group elements, lexicographic on exponents.
    pub fn all_elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for i in 0..self.s() {
            let mut next = Vec::new();
            for g in &out {
                for k in 0..self.primes[i] - 1 {
                    let mut e = g.exponents.clone();
                    e[i] = k;
                    next.push(GroupElement { exponents: e });
                }
            }
            out = next;
        }
        out
    }

    /// The arithmetic Frobenius at `l_i`, lifted to the coset representative
    /// with trivial `i`-component: it multiplies the prime-to-`l_i` part by
    /// `l_i`.
    pub fn frobenius(&self, i: usize) -> Result<GroupElement, EngineError> {
        if i >= self.s() {
            return Err(EngineError::IndexOutOfRange(i, self.s()));
        }
        let mut exponents = vec![0; self.s()];
        for (j, (&l, &gen)) in self.primes.iter().zip(&self.generators).enumerate() {
            if j == i {
                continue;
            }
            exponents[j] = discrete_log(self.primes[i] % l, gen, l);
        }
        Ok(GroupElement { exponents })
    }

    pub fn ring_one(&self, modulus: u64) -> GroupRingElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(self.identity(), BigInt::one());
        GroupRingElement { modulus, coeffs }.reduced(self)
    }

    pub fn ring_zero(&self, modulus: u64) -> GroupRingElement {
        GroupRingElement {
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn ring_from_terms(
        &self,
        modulus: u64,
        terms: impl IntoIterator<Item = (GroupElement, BigInt)>,
    ) -> GroupRingElement {
        let mut coeffs: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for (g, c) in terms {
            *coeffs.entry(g).or_insert_with(BigInt::zero) += c;
        }
        GroupRingElement { modulus, coeffs }.reduced(self)
    }

    /// `N_i = sum_k sigma_i^k`, `k = 0 .. l_i - 2`.
    pub fn norm_i(&self, i: usize, modulus: u64) -> Result<GroupRingElement, EngineError> {
        let sigma = self.sigma(i)?;
        let terms = (0..self.primes[i] - 1).map(|k| (self.group_pow(&sigma, k), BigInt::one()));
        Ok(self.ring_from_terms(modulus, terms))
    }

    /// `D_i = sum_k k sigma_i^k`, `k = 0 .. l_i - 2`.
    pub fn derivative_i(&self, i: usize, modulus: u64) -> Result<GroupRingElement, EngineError> {
        let sigma = self.sigma(i)?;
        let terms = (0..self.primes[i] - 1).map(|k| (self.group_pow(&sigma, k), BigInt::from(k)));
        Ok(self.ring_from_terms(modulus, terms))
    }

    /// `N_T`: product over the subset; the empty set gives the ring identity.
    pub fn norm_element(&self, t_mask: u32, modulus: u64) -> Result<GroupRingElement, EngineError> {
        let mut acc = self.ring_one(modulus);
        for i in 0..self.s() {
            if t_mask & (1 << i) != 0 {
                acc = acc.mul(&self.norm_i(i, modulus)?, self)?;
            }
        }
        Ok(acc)
    }

    /// `D_T`: product over the subset; the empty set gives the ring identity.
    pub fn derivative_element(
        &self,
        t_mask: u32,
        modulus: u64,
    ) -> Result<GroupRingElement, EngineError> {
        let mut acc = self.ring_one(modulus);
        for i in 0..self.s() {
            if t_mask & (1 << i) != 0 {
                acc = acc.mul(&self.derivative_i(i, modulus)?, self)?;
            }
        }
        Ok(acc)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid; m is prime in every call site but this is general
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m as i128) as u64
}

fn discrete_log(target: u64, base: u64, l: u64) -> u64 {
    let mut x = 1u64;
    for k in 0..l - 1 {
        if x == target % l {
            return k;
        }
        x = x * base % l;
    }
    panic!("discrete log of {target} base {base} mod {l} does not exist")
}

/// An element of the product group, as one exponent per prime over the fixed
/// generators; exponent `i` is reduced mod `l_i - 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn from_exponents(cfg: &PrimeConfig, exps: &[u64]) -> Self {
        assert_eq!(exps.len(), cfg.s());
        let exponents = exps
            .iter()
            .zip(cfg.primes())
            .map(|(&e, &l)| e % (l - 1))
            .collect();
        GroupElement { exponents }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{:?}", self.exponents)
    }
}

/// A finite integer (or mod-`M`) combination of group elements; modulus `0`
/// means the integral group ring. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: u64,
    coeffs: BTreeMap<GroupElement, BigInt>,
}

impl GroupRingElement {
    fn reduced(mut self, _cfg: &PrimeConfig) -> Self {
        if self.modulus > 0 {
            let m = BigInt::from(self.modulus);
            for v in self.coeffs.values_mut() {
                *v = v.mod_floor(&m);
            }
        }
        self.coeffs.retain(|_, v| !v.is_zero());
        self
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &BTreeMap<GroupElement, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self, cfg: &PrimeConfig) -> Result<Self, EngineError> {
        if self.modulus != other.modulus {
            return Err(EngineError::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut coeffs = self.coeffs.clone();
        for (g, c) in &other.coeffs {
            *coeffs.entry(g.clone()).or_insert_with(BigInt::zero) += c;
        }
        Ok(GroupRingElement {
            modulus: self.modulus,
            coeffs,
        }
        .reduced(cfg))
    }

    pub fn sub(&self, other: &Self, cfg: &PrimeConfig) -> Result<Self, EngineError> {
        self.add(&other.scale(&-BigInt::one(), cfg), cfg)
    }

    pub fn scale(&self, k: &BigInt, cfg: &PrimeConfig) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, c)| (g.clone(), c * k))
            .collect();
        GroupRingElement {
            modulus: self.modulus,
            coeffs,
        }
        .reduced(cfg)
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self, cfg: &PrimeConfig) -> Result<Self, EngineError> {
        if self.modulus != other.modulus {
            return Err(EngineError::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut coeffs: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        for (g, c) in &self.coeffs {
            for (h, d) in &other.coeffs {
                let gh = cfg.group_mul(g, h);
                *coeffs.entry(gh).or_insert_with(BigInt::zero) += c * d;
            }
        }
        Ok(GroupRingElement {
            modulus: self.modulus,
            coeffs,
        }
        .reduced(cfg))
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, c)| format!("{c}*{g:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A multi-index `e` over the prime family: one nonnegative exponent per
/// prime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    e: Vec<u32>,
}

impl MultiIndex {
    pub fn zero(s: usize) -> Self {
        MultiIndex { e: vec![0; s] }
    }

    pub fn from_slice(e: &[u32]) -> Self {
        MultiIndex { e: e.to_vec() }
    }

    /// The indicator of a subset: `e_T = sum_{i in T} eps_i`.
    pub fn indicator(s: usize, t_mask: u32) -> Self {
        let e = (0..s)
            .map(|i| if t_mask & (1 << i) != 0 { 1 } else { 0 })
            .collect();
        MultiIndex { e }
    }

    pub fn components(&self) -> &[u32] {
        &self.e
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn deg(&self) -> u64 {
        self.e.iter().map(|&x| x as u64).sum()
    }

    pub fn supp_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &x) in self.e.iter().enumerate() {
            if x != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn is_even(&self) -> bool {
        self.e.iter().all(|&x| x % 2 == 0)
    }

    pub fn bump(&self, i: usize) -> Self {
        let mut e = self.e.clone();
        e[i] += 1;
        MultiIndex { e }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let e = self.e.iter().zip(&other.e).map(|(&a, &b)| a + b).collect();
        MultiIndex { e }
    }

    /// All multi-indices of a given degree, lexicographic.
    pub fn all_of_degree(s: usize, deg: u64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; s];
        fn rec(i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if i + 1 == cur.len() {
                cur[i] = left as u32;
                out.push(MultiIndex { e: cur.clone() });
                return;
            }
            for v in 0..=left {
                cur[i] = v as u32;
                rec(i + 1, left - v, cur, out);
            }
        }
        if s == 0 {
            if deg == 0 {
                out.push(MultiIndex { e: Vec::new() });
            }
            return out;
        }
        rec(0, deg, &mut cur, &mut out);
        out
    }

    /// All even multi-indices of support contained in `t_mask` and degree in
    /// `[lo, hi]`.
    pub fn even_with_support_in(s: usize, t_mask: u32, lo: u64, hi: u64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for deg in lo..=hi {
            if deg % 2 != 0 {
                continue;
            }
            for e in Self::all_of_degree(s, deg) {
                if e.is_even() && (e.supp_mask() & !t_mask) == 0 {
                    out.push(e);
                }
            }
        }
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let cfg = PrimeConfig::new(&[3], 2).unwrap();
        assert_eq!(cfg.generators(), &[2]);
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        assert_eq!(cfg.generators(), &[2, 3]);
        assert!(matches!(
            PrimeConfig::new(&[3, 7], 4),
            Err(EngineError::BadModulus(4, _))
        ));
        assert!(matches!(
            PrimeConfig::new(&[3, 9], 2),
            Err(EngineError::BadPrime(9, _))
        ));
        assert!(matches!(
            PrimeConfig::new(&[3, 3], 2),
            Err(EngineError::BadPrime(3, _))
        ));
        assert!(matches!(
            PrimeConfig::new(&[2, 5], 1),
            Err(EngineError::BadPrime(2, _))
        ));
    }

    #[test]
    fn group_arithmetic() {
        let cfg = PrimeConfig::new(&[3], 1).unwrap();
        let s = cfg.sigma(0).unwrap();
        assert!(cfg.group_mul(&s, &s).is_identity());

        let cfg = PrimeConfig::new(&[7], 1).unwrap();
        let s = cfg.sigma(0).unwrap();
        let s3 = cfg.group_pow(&s, 3);
        assert_eq!(cfg.group_mul(&s, &s3).exponents(), &[4]);
        assert_eq!(cfg.group_mul(&cfg.identity(), &s3), s3);
    }

    #[test]
    fn frobenius_examples() {
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        // 3 = 3^1 mod 7 with generator 3
        assert_eq!(cfg.frobenius(0).unwrap().exponents(), &[0, 1]);
        // 7 = 1 mod 3
        assert!(cfg.frobenius(1).unwrap().is_identity());
        let single = PrimeConfig::new(&[3], 1).unwrap();
        assert!(single.frobenius(0).unwrap().is_identity());
        assert!(matches!(
            single.frobenius(1),
            Err(EngineError::IndexOutOfRange(1, 1))
        ));
    }

    #[test]
    fn multiplier_is_crt() {
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        let id = cfg.identity();
        assert_eq!(cfg.multiplier(&id), 1);
        let s0 = cfg.sigma(0).unwrap();
        let x = cfg.multiplier(&s0);
        assert_eq!(x % 3, 2);
        assert_eq!(x % 7, 1);
        let fr = cfg.frobenius(0).unwrap();
        assert_eq!(cfg.multiplier(&fr) % 7, 3);
        assert_eq!(cfg.multiplier(&fr) % 3, 1);
    }

    #[test]
    fn norm_and_derivative_small() {
        let cfg = PrimeConfig::new(&[3], 1).unwrap();
        let n = cfg.norm_element(1, 0).unwrap();
        let d = cfg.derivative_element(1, 0).unwrap();
        let one = cfg.ring_one(0);
        let sigma = cfg.ring_from_terms(0, [(cfg.sigma(0).unwrap(), BigInt::one())]);
        // N = 1 + sigma, D = sigma
        assert_eq!(n, one.add(&sigma, &cfg).unwrap());
        assert_eq!(d, sigma);
        // empty subset gives the identity
        assert_eq!(cfg.norm_element(0, 0).unwrap(), one);
        assert_eq!(cfg.derivative_element(0, 0).unwrap(), one);
    }

    #[test]
    fn ring_identities() {
        // (1 - sigma) D = N - (l - 1) exactly, and N (1 - sigma) = 0
        for l in (3..=100).filter(|&l| is_prime(l)) {
            let cfg = PrimeConfig::new(&[l], 1).unwrap();
            let one = cfg.ring_one(0);
            let sigma = cfg.ring_from_terms(0, [(cfg.sigma(0).unwrap(), BigInt::one())]);
            let one_minus = one.sub(&sigma, &cfg).unwrap();
            let n = cfg.norm_i(0, 0).unwrap();
            let d = cfg.derivative_i(0, 0).unwrap();
            let lhs = one_minus.mul(&d, &cfg).unwrap();
            let rhs = n.sub(&one.scale(&BigInt::from(l - 1), &cfg), &cfg).unwrap();
            assert_eq!(lhs, rhs, "l = {l}");
            assert!(n.mul(&one_minus, &cfg).unwrap().is_zero(), "l = {l}");
        }
    }

    #[test]
    fn ring_mul_example() {
        // (1 - sigma) * D = sigma - 1 for l = 3
        let cfg = PrimeConfig::new(&[3], 1).unwrap();
        let one = cfg.ring_one(0);
        let sigma = cfg.ring_from_terms(0, [(cfg.sigma(0).unwrap(), BigInt::one())]);
        let d = cfg.derivative_i(0, 0).unwrap();
        let lhs = one.sub(&sigma, &cfg).unwrap().mul(&d, &cfg).unwrap();
        let rhs = sigma.sub(&one, &cfg).unwrap();
        assert_eq!(lhs, rhs);
        // 1 * a = a
        assert_eq!(one.mul(&d, &cfg).unwrap(), d);
        // mixed moduli are an error, not a coercion
        let d2 = cfg.derivative_i(0, 2).unwrap();
        assert!(matches!(
            d.mul(&d2, &cfg),
            Err(EngineError::ModulusMismatch(0, 2))
        ));
    }

    #[test]
    fn group_order_and_associativity_exhaustive() {
        let cfg = PrimeConfig::new(&[3, 7], 2).unwrap();
        let all = cfg.all_elements();
        assert_eq!(all.len() as u64, cfg.order());
        let lcm = 6u64; // lcm(2, 6)
        for g in &all {
            assert!(cfg.group_pow(g, lcm).is_identity());
            for h in &all {
                assert_eq!(cfg.group_mul(g, h), cfg.group_mul(h, g));
                for k in &all {
                    let gh_k = cfg.group_mul(&cfg.group_mul(g, h), k);
                    let g_hk = cfg.group_mul(g, &cfg.group_mul(h, k));
                    assert_eq!(gh_k, g_hk);
                }
            }
        }
    }

    #[test]
    fn multi_index_enumeration() {
        let all = MultiIndex::all_of_degree(2, 3);
        assert_eq!(all.len(), 4);
        assert_eq!(all[0].components(), &[0, 3]);
        assert_eq!(all[3].components(), &[3, 0]);
        let even = MultiIndex::even_with_support_in(2, 0b11, 0, 4);
        // (0,0), (0,2), (2,0), (0,4), (2,2), (4,0)
        assert_eq!(even.len(), 6);
        let even_restricted = MultiIndex::even_with_support_in(2, 0b01, 0, 4);
        // (0,0), (2,0), (4,0)
        assert_eq!(even_restricted.len(), 3);
    }
}
