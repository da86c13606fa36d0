//! The universal ordinary distribution of level `f`.
//!
//! `U(f)` is the free abelian group on symbols `[a]`, `a` in `(1/f)Z/Z`,
//! modulo the relations `[a] = sum_{p b = a} [b]` for every prime `p | f`.
//! The fractions whose first `p`-adic digit avoids `p - 1` at every prime
//! form a basis; [`normalize_symbol`] rewrites an arbitrary symbol into that
//! basis, and everything else (Galois action, order-ideal submodules, fixed
//! points mod `M`, the derivative-operator family) is built on top of it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::EngineError;
use crate::exactlin::{
    homology_at_mod, kernel_basis_mod, smith_normal_form, solve_mod, CohomologyGroup, ExactMatrix,
};
use crate::galois::{GroupElement, GroupRingElement, PrimeConfig};

/// An element of `(1/f)Z/Z`, stored as `num / f` with `0 <= num < f`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction {
    level: u64,
    num: u64,
}

impl Fraction {
    pub fn new(num: u64, level: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        Fraction {
            level,
            num: num % level,
        }
    }

    pub fn zero(level: u64) -> Self {
        Fraction { level, num: 0 }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Order in `Q/Z`.
    pub fn order(&self) -> u64 {
        if self.num == 0 {
            1
        } else {
            self.level / self.num.gcd(&self.level)
        }
    }

    pub fn add(&self, other: &Fraction) -> Result<Fraction, EngineError> {
        if self.level != other.level {
            return Err(EngineError::LevelMismatch(self.level, other.level));
        }
        Ok(Fraction::new(self.num + other.num, self.level))
    }

    /// Multiplication by an integer mod the level.
    pub fn scale(&self, x: u64) -> Fraction {
        Fraction::new(
            ((self.num as u128 * x as u128) % self.level as u128) as u64,
            self.level,
        )
    }

    /// The first digit of the `p`-adic block of the partial fraction
    /// expansion: with `v = v_p(f)` and `c = num * (f/p^v)^{-1} mod p^v`,
    /// this is the coefficient of `1/p`.
    pub fn top_digit(&self, p: u64) -> u64 {
        let mut pv = 1u64;
        let mut f = self.level;
        while f % p == 0 {
            pv *= p;
            f /= p;
        }
        assert!(pv > 1, "{p} does not divide the level {}", self.level);
        let q = self.level / pv;
        let c = (self.num % pv) as u128 * inverse_mod(q % pv, pv) as u128 % pv as u128;
        (c as u64) / (pv / p)
    }

    /// Whether every prime dividing the level has top digit different from
    /// `p - 1`; these symbols form the canonical basis.
    pub fn is_basic(&self) -> bool {
        let mut f = self.level;
        let mut p = 2u64;
        while p * p <= f {
            if f % p == 0 {
                if self.top_digit(p) == p - 1 {
                    return false;
                }
                while f % p == 0 {
                    f /= p;
                }
            }
            p += 1;
        }
        if f > 1 && self.top_digit(f) == f - 1 {
            return false;
        }
        true
    }

    /// Support over a squarefree configuration: the primes dividing the
    /// order.
    pub fn supp_mask(&self, cfg: &PrimeConfig) -> u32 {
        debug_assert_eq!(self.level, cfg.level());
        let ord = self.order();
        let mut mask = 0u32;
        for (i, &l) in cfg.primes().iter().enumerate() {
            if ord % l == 0 {
                mask |= 1 << i;
            }
        }
        mask
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.level)
    }
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "{a} not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

/// Canonical basis of `U(f)`: all fractions with every top digit different
/// from `p - 1`, ascending numerator.
pub fn basis(f: u64) -> Vec<Fraction> {
    (0..f)
        .map(|n| Fraction::new(n, f))
        .filter(Fraction::is_basic)
        .collect()
}

/// A formal combination of basis symbols of one level; modulus 0 means
/// integer coefficients. Keys are always basic, values never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct DistElement {
    level: u64,
    modulus: u64,
    coeffs: BTreeMap<Fraction, BigInt>,
}

impl DistElement {
    pub fn zero(level: u64, modulus: u64) -> Self {
        DistElement {
            level,
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        level: u64,
        modulus: u64,
        terms: impl IntoIterator<Item = (Fraction, BigInt)>,
    ) -> Self {
        let mut coeffs: BTreeMap<Fraction, BigInt> = BTreeMap::new();
        for (a, c) in terms {
            assert_eq!(a.level(), level, "level mismatch in DistElement");
            assert!(a.is_basic(), "DistElement keys must be basic symbols");
            *coeffs.entry(a).or_insert_with(BigInt::zero) += c;
        }
        DistElement {
            level,
            modulus,
            coeffs,
        }
        .reduced()
    }

    fn reduced(mut self) -> Self {
        if self.modulus > 0 {
            let m = BigInt::from(self.modulus);
            for v in self.coeffs.values_mut() {
                *v = v.mod_floor(&m);
            }
        }
        self.coeffs.retain(|_, v| !v.is_zero());
        self
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &BTreeMap<Fraction, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        if self.level != other.level {
            return Err(EngineError::LevelMismatch(self.level, other.level));
        }
        if self.modulus != other.modulus {
            return Err(EngineError::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut coeffs = self.coeffs.clone();
        for (a, c) in &other.coeffs {
            *coeffs.entry(*a).or_insert_with(BigInt::zero) += c;
        }
        Ok(DistElement {
            level: self.level,
            modulus: self.modulus,
            coeffs,
        }
        .reduced())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coeffs = self.coeffs.iter().map(|(a, c)| (*a, c * k)).collect();
        DistElement {
            level: self.level,
            modulus: self.modulus,
            coeffs,
        }
        .reduced()
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EngineError> {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn reduce_mod(&self, m: u64) -> Self {
        DistElement {
            level: self.level,
            modulus: m,
            coeffs: self.coeffs.clone(),
        }
        .reduced()
    }

    /// Coordinates in the given ordered basis.
    pub fn coordinates(&self, basis: &[Fraction]) -> Vec<BigInt> {
        let index: BTreeMap<Fraction, usize> =
            basis.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut out = vec![BigInt::zero(); basis.len()];
        for (a, c) in &self.coeffs {
            let i = index[a];
            out[i] = c.clone();
        }
        out
    }

    pub fn from_coordinates(
        level: u64,
        modulus: u64,
        basis: &[Fraction],
        coords: &[BigInt],
    ) -> Self {
        DistElement::from_terms(
            level,
            modulus,
            basis.iter().zip(coords).map(|(a, c)| (*a, c.clone())),
        )
    }
}

impl fmt::Debug for DistElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(a, c)| format!("{c}*[{a:?}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Express `[a]` in the canonical basis by repeatedly rewriting at the
/// smallest prime whose top digit is `p - 1`, using
/// `[a] = [p a] - sum_{i=1}^{p-1} [a + i/p]`.
pub fn normalize_symbol(a: Fraction) -> DistElement {
    let mut acc: BTreeMap<Fraction, BigInt> = BTreeMap::new();
    let mut work: Vec<(Fraction, BigInt)> = vec![(a, BigInt::one())];
    while let Some((x, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        match smallest_bad_prime(&x) {
            None => {
                let e = acc.entry(x).or_insert_with(BigInt::zero);
                *e += c;
            }
            Some(p) => {
                work.push((x.scale(p), c.clone()));
                let f = x.level();
                let step = f / p;
                for i in 1..p {
                    let shifted = Fraction::new(x.numerator() + i * step, f);
                    work.push((shifted, -c.clone()));
                }
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    DistElement {
        level: a.level(),
        modulus: 0,
        coeffs: acc,
    }
}

fn smallest_bad_prime(a: &Fraction) -> Option<u64> {
    let mut f = a.level();
    let mut p = 2u64;
    while p * p <= f {
        if f % p == 0 {
            if a.top_digit(p) == p - 1 {
                return Some(p);
            }
            while f % p == 0 {
                f /= p;
            }
        }
        p += 1;
    }
    if f > 1 && a.top_digit(f) == f - 1 {
        return Some(f);
    }
    None
}

/// Normalize a raw symbol combination into the canonical basis.
pub fn normalize_combination(
    level: u64,
    modulus: u64,
    terms: impl IntoIterator<Item = (Fraction, BigInt)>,
) -> DistElement {
    let mut acc = DistElement::zero(level, modulus);
    for (a, c) in terms {
        let n = normalize_symbol(a).reduce_mod(modulus).scale(&c);
        acc = acc.add(&n).expect("level fixed");
    }
    acc
}

/// Apply a group element (multiplication by its CRT multiplier) to a
/// normalized element, renormalizing.
pub fn apply_group_element(cfg: &PrimeConfig, g: &GroupElement, v: &DistElement) -> DistElement {
    let x = cfg.multiplier(g);
    normalize_combination(
        v.level(),
        v.modulus(),
        v.coeffs().iter().map(|(a, c)| (a.scale(x), c.clone())),
    )
}

/// Apply a group-ring element to a normalized element.
pub fn apply_ring_element(
    cfg: &PrimeConfig,
    w: &GroupRingElement,
    v: &DistElement,
) -> Result<DistElement, EngineError> {
    if w.modulus() != v.modulus() {
        return Err(EngineError::ModulusMismatch(w.modulus(), v.modulus()));
    }
    let mut acc = DistElement::zero(v.level(), v.modulus());
    for (g, c) in w.coeffs() {
        acc = acc.add(&apply_group_element(cfg, g, v).scale(c))?;
    }
    Ok(acc)
}

/// Matrix of the action of `g` on the canonical basis of the configured
/// level.
pub fn galois_action_matrix(cfg: &PrimeConfig, g: &GroupElement) -> ExactMatrix {
    let f = cfg.level();
    let b = basis(f);
    let x = cfg.multiplier(g);
    let cols: Vec<Vec<BigInt>> = b
        .iter()
        .map(|a| normalize_symbol(a.scale(x)).coordinates(&b))
        .collect();
    ExactMatrix::from_columns(b.len(), &cols)
}

/// A downward-closed family of subsets of the prime index set, stored by its
/// maximal sets (an antichain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    maximal_masks: Vec<u32>,
}

impl OrderIdeal {
    /// Build from arbitrary member sets; non-maximal ones are dropped.
    pub fn from_masks(masks: &[u32]) -> Self {
        let mut maximal: Vec<u32> = Vec::new();
        for &m in masks {
            if masks.iter().any(|&o| o != m && o & m == m) {
                continue;
            }
            if !maximal.contains(&m) {
                maximal.push(m);
            }
        }
        if maximal.is_empty() {
            maximal.push(0);
        }
        maximal.sort_unstable();
        OrderIdeal {
            maximal_masks: maximal,
        }
    }

    pub fn full(s: usize) -> Self {
        let mask = if s == 0 { 0 } else { (1u32 << s) - 1 };
        OrderIdeal {
            maximal_masks: vec![mask],
        }
    }

    /// The ideal of all subsets of size at most `n`.
    pub fn of_rank(s: usize, n: usize) -> Self {
        let full = if s == 0 { 0u32 } else { (1u32 << s) - 1 };
        let masks: Vec<u32> = (0..=full)
            .filter(|m| m.count_ones() as usize <= n)
            .collect();
        OrderIdeal::from_masks(&masks)
    }

    pub fn maximal_masks(&self) -> &[u32] {
        &self.maximal_masks
    }

    pub fn contains(&self, t_mask: u32) -> bool {
        self.maximal_masks.iter().any(|&m| t_mask & !m == 0)
    }

    pub fn members(&self, s: usize) -> Vec<u32> {
        let full = if s == 0 { 0u32 } else { (1u32 << s) - 1 };
        (0..=full).filter(|&m| self.contains(m)).collect()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut masks = Vec::new();
        for &a in &self.maximal_masks {
            for &b in &other.maximal_masks {
                masks.push(a & b);
            }
        }
        OrderIdeal::from_masks(&masks)
    }

    /// Every nonempty downward-closed family over an `s`-element index set,
    /// for exhaustive checks; feasible for small `s` only.
    pub fn enumerate_all(s: usize) -> Vec<OrderIdeal> {
        assert!(s <= 4, "exhaustive enumeration is for desk-scale s");
        let subsets: u32 = 1 << s;
        let mut out = Vec::new();
        for family in 1u64..(1u64 << subsets) {
            let member = |m: u32| family & (1 << m) != 0;
            let closed = (0..subsets).all(|m| {
                !member(m) || {
                    // removing any one element stays inside the family
                    (0..s).all(|i| m & (1 << i) == 0 || member(m & !(1 << i)))
                }
            });
            if !closed {
                continue;
            }
            let masks: Vec<u32> = (0..subsets).filter(|&m| member(m)).collect();
            out.push(OrderIdeal::from_masks(&masks));
        }
        out.dedup();
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut masks = self.maximal_masks.clone();
        masks.extend_from_slice(&other.maximal_masks);
        OrderIdeal::from_masks(&masks)
    }
}

/// The sub-basis `{a basic : supp a in I}` of `U_S(I)`.
pub fn ideal_basis(cfg: &PrimeConfig, ideal: &OrderIdeal) -> Vec<Fraction> {
    basis(cfg.level())
        .into_iter()
        .filter(|a| ideal.contains(a.supp_mask(cfg)))
        .collect()
}

/// The stacked-matrix presentation of the fixed-point condition: one block
/// `rho(sigma_i) - I` per prime.
pub fn invariants_matrix(cfg: &PrimeConfig) -> ExactMatrix {
    let n = basis(cfg.level()).len();
    let mut stacked = ExactMatrix::zero(0, n);
    for i in 0..cfg.s() {
        let rho = galois_action_matrix(cfg, &cfg.sigma(i).expect("index in range"));
        let block = rho.sub(&ExactMatrix::identity(n)).expect("same shape");
        stacked = stacked.vstack(&block).expect("same width");
    }
    stacked
}

/// Generating set of `(U/MU)^{G}` as elements mod `M`.
pub fn fixed_points(cfg: &PrimeConfig, m: u64) -> Result<Vec<DistElement>, EngineError> {
    check_modulus(cfg, m)?;
    let b = basis(cfg.level());
    let stacked = invariants_matrix(cfg);
    let k = kernel_basis_mod(&stacked, m);
    Ok((0..k.cols())
        .map(|c| DistElement::from_coordinates(cfg.level(), m, &b, &k.column(c)))
        .collect())
}

/// The fixed-point module itself, as an abstract group.
pub fn fixed_point_group(cfg: &PrimeConfig, m: u64) -> Result<CohomologyGroup, EngineError> {
    check_modulus(cfg, m)?;
    let stacked = invariants_matrix(cfg);
    let n = stacked.cols();
    homology_at_mod(&ExactMatrix::zero(n, 0), &stacked, m)
}

fn check_modulus(cfg: &PrimeConfig, m: u64) -> Result<(), EngineError> {
    if m == 0 {
        return Err(EngineError::BadModulus(
            0,
            "modulus must be positive".into(),
        ));
    }
    for &l in cfg.primes() {
        if m > 1 && (l - 1) % m != 0 {
            return Err(EngineError::BadModulus(
                m,
                format!("does not divide {} - 1", l),
            ));
        }
    }
    Ok(())
}

/// The derivative-operator family: for each subset `T` (by ascending
/// bitmask, i.e. each divisor `r_T | r`), the normalized image of
/// `D_T [sum_{i in T} 1/l_i]` reduced mod `M`. The group-ring product is
/// formed first and applied symbol by symbol, never normalized mid-product.
pub fn theorem_b_family(cfg: &PrimeConfig, m: u64) -> Result<Vec<DistElement>, EngineError> {
    check_modulus(cfg, m)?;
    let r = cfg.level();
    let mut out = Vec::new();
    for t_mask in 0..=cfg.full_mask() {
        let d_t = cfg.derivative_element(t_mask, m)?;
        let mut num = 0u64;
        for i in 0..cfg.s() {
            if t_mask & (1 << i) != 0 {
                num = (num + r / cfg.primes()[i]) % r;
            }
        }
        let raw: Vec<(Fraction, BigInt)> = d_t
            .coeffs()
            .iter()
            .map(|(g, c)| (Fraction::new(num, r).scale(cfg.multiplier(g)), c.clone()))
            .collect();
        out.push(normalize_combination(r, m, raw));
    }
    Ok(out)
}

/// Verification record for the derivative-operator basis of the fixed
/// points.
#[derive(Clone, Debug)]
pub struct TheoremBReport {
    pub modulus: u64,
    pub family: Vec<DistElement>,
    pub all_fixed: bool,
    pub independent: bool,
    pub spans: bool,
    pub fixed_point_group: CohomologyGroup,
    pub expected_count: usize,
}

impl TheoremBReport {
    pub fn pass(&self) -> bool {
        self.all_fixed
            && self.independent
            && self.spans
            && self.family.len() == self.expected_count
            && self.fixed_point_group.free_mod_m_rank(self.modulus) == Some(self.expected_count)
    }
}

/// Check that the family is fixed, independent over `Z/M`, and spans the
/// fixed points.
pub fn verify_theorem_b(cfg: &PrimeConfig, m: u64) -> Result<TheoremBReport, EngineError> {
    let family = theorem_b_family(cfg, m)?;
    let b = basis(cfg.level());
    let stacked = invariants_matrix(cfg);

    let mut all_fixed = true;
    let big = BigInt::from(m);
    for v in &family {
        let coords = v.coordinates(&b);
        let image = stacked.apply(&coords)?;
        if image.iter().any(|x| !x.mod_floor(&big).is_zero()) {
            all_fixed = false;
        }
    }

    // columns = family coordinates; independence over Z/M means full rank
    // with invariant factors prime to M
    let cols: Vec<Vec<BigInt>> = family.iter().map(|v| v.coordinates(&b)).collect();
    let fam_matrix = ExactMatrix::from_columns(b.len(), &cols);
    let s = smith_normal_form(&fam_matrix);
    let independent = s.rank() == family.len()
        && s.invariant_factors
            .iter()
            .all(|d| d.gcd(&big) == BigInt::one());

    let mut spans = true;
    for gen in fixed_points(cfg, m)? {
        let coords = gen.coordinates(&b);
        if solve_mod(&fam_matrix, &coords, m)?.is_none() {
            spans = false;
        }
    }

    Ok(TheoremBReport {
        modulus: m,
        expected_count: 1usize << cfg.s(),
        fixed_point_group: fixed_point_group(cfg, m)?,
        family,
        all_fixed,
        independent,
        spans,
    })
}

/// Which of the two polynomial-ring bases of the ambient free group to
/// express: `X_g` words or `Y_g = prod (1 - X_p)` words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisVariant {
    X,
    Y,
}

/// The square matrix expressing the family `{X_g [x]}` (or `{Y_g [x]}`),
/// indexed by pairs `(g | f, x basic in (g/f)Z)` with `g` then `x`
/// ascending, in the standard symbol basis `{[y] : y in (1/f)Z in [0,1)}`.
/// The family has cardinality `f` and the matrix is unimodular.
pub fn xg_basis_matrix(f: u64, variant: BasisVariant) -> ExactMatrix {
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for g in 1..=f {
        if f % g != 0 {
            continue;
        }
        for k in 0..f / g {
            let x = Fraction::new(k * g, f);
            if !x.is_basic() {
                continue;
            }
            let mut col = vec![BigInt::zero(); f as usize];
            for (frac, c) in lambda_word_apply(g, x, variant) {
                col[frac.numerator() as usize] += c;
            }
            cols.push(col);
        }
    }
    ExactMatrix::from_columns(f as usize, &cols)
}

/// Expand `X_g [x]` or `Y_g [x]` in the free group on level-`f` symbols.
/// `X_d [x] = sum_{k=1}^{d} [(x + k)/d]`, and `Y_g` expands binomially into
/// the `X_d` for `d | g`.
fn lambda_word_apply(g: u64, x: Fraction, variant: BasisVariant) -> Vec<(Fraction, BigInt)> {
    match variant {
        BasisVariant::X => x_d_apply(g, x),
        BasisVariant::Y => {
            let mut acc: BTreeMap<Fraction, BigInt> = BTreeMap::new();
            for (d, c) in y_expansion(g) {
                for (frac, w) in x_d_apply(d, x) {
                    *acc.entry(frac).or_insert_with(BigInt::zero) += &c * w;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            acc.into_iter().collect()
        }
    }
}

fn x_d_apply(d: u64, x: Fraction) -> Vec<(Fraction, BigInt)> {
    let f = x.level();
    assert_eq!(f % d, 0, "d must divide the level");
    assert_eq!(x.numerator() % d, 0, "x must lie in (d/f)Z");
    let mut out = Vec::new();
    for k in 1..=d {
        let num = (x.numerator() / d + k * (f / d)) % f;
        out.push((Fraction::new(num, f), BigInt::one()));
    }
    out
}

/// Coefficients of `Y_g = prod_p (1 - X_p)^{v_p(g)}` over the divisors of
/// `g`: divisor `d` carries `(-1)^{Omega(d)} prod_p C(v_p(g), v_p(d))`.
fn y_expansion(g: u64) -> Vec<(u64, BigInt)> {
    let mut terms: Vec<(u64, BigInt)> = vec![(1, BigInt::one())];
    let mut m = g;
    let mut p = 2u64;
    while m > 1 {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            let mut next = Vec::new();
            for (d, c) in &terms {
                let mut pj = 1u64;
                for j in 0..=e as u64 {
                    let binom = binomial(e as u64, j);
                    let sign: i64 = if j % 2 == 0 { 1 } else { -1 };
                    next.push((d * pj, c * BigInt::from(sign * binom as i64)));
                    pj *= p;
                }
            }
            terms = next;
        }
        p += 1;
    }
    terms
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

/// The inclusion `U(g) -> U(f)` on canonical bases, for `g | f`: each basic
/// level-`g` symbol is renormalized at level `f` (it stays basic, so the
/// invariant factors are all 1 and the map splits).
pub fn level_inclusion_matrix(g: u64, f: u64) -> ExactMatrix {
    assert_eq!(f % g, 0, "g must divide f");
    let target = basis(f);
    let cols: Vec<Vec<BigInt>> = basis(g)
        .iter()
        .map(|a| {
            let lifted = Fraction::new(a.numerator() * (f / g), f);
            normalize_symbol(lifted).coordinates(&target)
        })
        .collect();
    ExactMatrix::from_columns(target.len(), &cols)
}
