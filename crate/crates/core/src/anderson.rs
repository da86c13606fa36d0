//! The free resolution of the universal ordinary distribution by symbols
//! `[a, T]`, `T` a subset of the prime index set disjoint from the support
//! of `a`, graded by `-|T|`. The differential splits as `d = d1 + d2` into
//! a double complex, which filters the distribution by support size.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::distribution::{basis, ideal_basis, Fraction, OrderIdeal};
use crate::error::EngineError;
use crate::exactlin::{homology_at, CohomologyGroup, ExactMatrix};
use crate::galois::PrimeConfig;
use crate::signs::omega_i_t;

/// A generator `[a, T]` with `supp a` disjoint from `T`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LSymbol {
    pub t_mask: u32,
    pub frac: Fraction,
}

impl LSymbol {
    pub fn degree(&self) -> i64 {
        -(self.t_mask.count_ones() as i64)
    }

    /// Bidegree `(p1, p2) = (|supp a| - s, s - |supp a| - |T|)`.
    pub fn bidegree(&self, cfg: &PrimeConfig) -> (i64, i64) {
        let s = cfg.s() as i64;
        let supp = self.frac.supp_mask(cfg).count_ones() as i64;
        let t = self.t_mask.count_ones() as i64;
        (supp - s, s - supp - t)
    }
}

impl fmt::Debug for LSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, T={:#b}]", self.frac, self.t_mask)
    }
}

/// The resolution restricted to an order ideal: per-degree symbol lists for
/// degrees `-s ..= 0` and the differential matrices between them.
#[derive(Clone)]
pub struct LComplex {
    pub cfg: PrimeConfig,
    pub ideal: OrderIdeal,
    /// `symbols[k]` is the ordered generator list in degree `-s + k`.
    pub symbols: Vec<Vec<LSymbol>>,
    /// `d[k]` maps degree `-s + k` to degree `-s + k + 1`.
    pub d: Vec<ExactMatrix>,
}

impl LComplex {
    pub fn s(&self) -> usize {
        self.cfg.s()
    }

    pub fn degree_of_index(&self, k: usize) -> i64 {
        k as i64 - self.s() as i64
    }

    pub fn symbols_at(&self, degree: i64) -> &[LSymbol] {
        let k = (degree + self.s() as i64) as usize;
        &self.symbols[k]
    }
}

/// Preimages of `a` under multiplication by `l_i`: the `l_i` fractions
/// `a/l_i + k r/l_i` (well defined because `i` is outside the support).
fn preimages(cfg: &PrimeConfig, a: Fraction, i: usize) -> Vec<Fraction> {
    let r = cfg.level();
    let l = cfg.primes()[i];
    debug_assert_eq!(a.numerator() % l, 0, "support must avoid i");
    let base = a.numerator() / l;
    let step = r / l;
    (0..l).map(|k| Fraction::new(base + k * step, r)).collect()
}

/// `d [a,T] = sum_{i in T} omega(i,T) ([a, T\{i}] - sum_{l_i b = a} [b, T\{i}])`.
pub fn differential_of_symbol(cfg: &PrimeConfig, sym: &LSymbol) -> Vec<(LSymbol, BigInt)> {
    let mut out: BTreeMap<LSymbol, BigInt> = BTreeMap::new();
    for i in 0..cfg.s() {
        let sign = omega_i_t(i, sym.t_mask);
        if sign == 0 {
            continue;
        }
        let sign = BigInt::from(sign);
        let t_rest = sym.t_mask & !(1 << i);
        let keep = LSymbol {
            t_mask: t_rest,
            frac: sym.frac,
        };
        *out.entry(keep).or_insert_with(BigInt::zero) += &sign;
        for b in preimages(cfg, sym.frac, i) {
            let drop = LSymbol {
                t_mask: t_rest,
                frac: b,
            };
            *out.entry(drop).or_insert_with(BigInt::zero) -= &sign;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out.into_iter().collect()
}

/// `d1 [a,T] = -sum omega(i,T) N_i [Fr_i^{-1} a + 1/l_i, T\{i}]`.
pub fn d1_of_symbol(cfg: &PrimeConfig, sym: &LSymbol) -> Vec<(LSymbol, BigInt)> {
    let mut out: BTreeMap<LSymbol, BigInt> = BTreeMap::new();
    for i in 0..cfg.s() {
        let sign = omega_i_t(i, sym.t_mask);
        if sign == 0 {
            continue;
        }
        let sign = BigInt::from(-sign);
        let t_rest = sym.t_mask & !(1 << i);
        let fr_inv = cfg.group_inv(&cfg.frobenius(i).expect("index in range"));
        let shifted = sym
            .frac
            .scale(cfg.multiplier(&fr_inv))
            .add(&Fraction::new(cfg.level() / cfg.primes()[i], cfg.level()))
            .expect("same level");
        // N_i acts through the group: the i-orbit of the shifted symbol
        let sigma = cfg.sigma(i).expect("index in range");
        for k in 0..cfg.primes()[i] - 1 {
            let g = cfg.group_pow(&sigma, k);
            let moved = shifted.scale(cfg.multiplier(&g));
            let s = LSymbol {
                t_mask: t_rest,
                frac: moved,
            };
            *out.entry(s).or_insert_with(BigInt::zero) += &sign;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out.into_iter().collect()
}

/// `d2 [a,T] = sum omega(i,T) (1 - Fr_i^{-1}) [a, T\{i}]`.
pub fn d2_of_symbol(cfg: &PrimeConfig, sym: &LSymbol) -> Vec<(LSymbol, BigInt)> {
    let mut out: BTreeMap<LSymbol, BigInt> = BTreeMap::new();
    for i in 0..cfg.s() {
        let sign = omega_i_t(i, sym.t_mask);
        if sign == 0 {
            continue;
        }
        let sign = BigInt::from(sign);
        let t_rest = sym.t_mask & !(1 << i);
        let keep = LSymbol {
            t_mask: t_rest,
            frac: sym.frac,
        };
        *out.entry(keep).or_insert_with(BigInt::zero) += &sign;
        let fr_inv = cfg.group_inv(&cfg.frobenius(i).expect("index in range"));
        let moved = LSymbol {
            t_mask: t_rest,
            frac: sym.frac.scale(cfg.multiplier(&fr_inv)),
        };
        *out.entry(moved).or_insert_with(BigInt::zero) -= &sign;
    }
    out.retain(|_, v| !v.is_zero());
    out.into_iter().collect()
}

fn matrix_between(
    from: &[LSymbol],
    to: &[LSymbol],
    image: impl Fn(&LSymbol) -> Vec<(LSymbol, BigInt)>,
) -> ExactMatrix {
    let index: BTreeMap<LSymbol, usize> = to.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = ExactMatrix::zero(to.len(), from.len());
    for (j, sym) in from.iter().enumerate() {
        for (target, c) in image(sym) {
            let i = *index
                .get(&target)
                .expect("differential leaves the ideal subcomplex");
            m.add_to(i, j, &c);
        }
    }
    m
}

/// Build the resolution restricted to an order ideal (the full ideal gives
/// the whole complex). Symbols in each degree are ordered by `T` bitmask,
/// then numerator.
pub fn build_l(cfg: &PrimeConfig, ideal: &OrderIdeal) -> Result<LComplex, EngineError> {
    let s = cfg.s();
    let mut symbols: Vec<Vec<LSymbol>> = vec![Vec::new(); s + 1];
    let r = cfg.level();
    for t_mask in 0..=cfg.full_mask() {
        let t_size = t_mask.count_ones() as usize;
        for num in 0..r {
            let frac = Fraction::new(num, r);
            let supp = frac.supp_mask(cfg);
            if supp & t_mask != 0 {
                continue;
            }
            if !ideal.contains(supp | t_mask) {
                continue;
            }
            symbols[s - t_size].push(LSymbol { t_mask, frac });
        }
    }
    for list in &mut symbols {
        list.sort();
    }
    let mut d = Vec::new();
    for k in 0..s {
        d.push(matrix_between(&symbols[k], &symbols[k + 1], |sym| {
            differential_of_symbol(cfg, sym)
        }));
    }
    let complex = LComplex {
        cfg: cfg.clone(),
        ideal: ideal.clone(),
        symbols,
        d,
    };
    for k in 0..s.saturating_sub(1) {
        let sq = complex.d[k + 1].mul(&complex.d[k])?;
        if !sq.is_zero() {
            return Err(EngineError::NotACocycle(
                "resolution differential does not square to zero".into(),
            ));
        }
    }
    Ok(complex)
}

/// The two halves of the differential; checks `d = d1 + d2` and the three
/// anticommutation identities before returning.
pub fn split_differential(
    l: &LComplex,
) -> Result<(Vec<ExactMatrix>, Vec<ExactMatrix>), EngineError> {
    let cfg = &l.cfg;
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for k in 0..l.d.len() {
        d1.push(matrix_between(&l.symbols[k], &l.symbols[k + 1], |sym| {
            d1_of_symbol(cfg, sym)
        }));
        d2.push(matrix_between(&l.symbols[k], &l.symbols[k + 1], |sym| {
            d2_of_symbol(cfg, sym)
        }));
    }
    for k in 0..l.d.len() {
        let sum = d1[k].add(&d2[k])?;
        if sum != l.d[k] {
            let diff = sum.sub(&l.d[k])?;
            let (&(r, c), _) = diff.entries().next().expect("nonzero difference");
            return Err(EngineError::SplitMismatch(r, c));
        }
    }
    for k in 0..l.d.len().saturating_sub(1) {
        let a = d1[k + 1].mul(&d1[k])?;
        let b = d2[k + 1].mul(&d2[k])?;
        let anti = d1[k + 1].mul(&d2[k])?.add(&d2[k + 1].mul(&d1[k])?)?;
        if !a.is_zero() || !b.is_zero() || !anti.is_zero() {
            return Err(EngineError::SplitMismatch(k, k));
        }
    }
    Ok((d1, d2))
}

/// Cohomology in every degree `-s ..= 0`.
pub fn homology_of_l(l: &LComplex) -> Result<Vec<(i64, CohomologyGroup)>, EngineError> {
    let s = l.s();
    let mut out = Vec::new();
    for k in 0..=s {
        let d_in = if k == 0 {
            ExactMatrix::zero(l.symbols[0].len(), 0)
        } else {
            l.d[k - 1].clone()
        };
        let d_out = if k == s {
            ExactMatrix::zero(0, l.symbols[s].len())
        } else {
            l.d[k].clone()
        };
        out.push((l.degree_of_index(k), homology_at(&d_in, &d_out)?));
    }
    Ok(out)
}

/// Acyclicity report: zero away from degree 0 and free of the predicted
/// rank there.
#[derive(Clone, Debug)]
pub struct AcyclicityReport {
    pub homology: Vec<(i64, CohomologyGroup)>,
    pub expected_rank: usize,
    pub pass: bool,
}

pub fn verify_acyclicity(l: &LComplex) -> Result<AcyclicityReport, EngineError> {
    let homology = homology_of_l(l)?;
    let expected_rank = ideal_basis(&l.cfg, &l.ideal).len();
    let pass = homology.iter().all(|(n, h)| {
        if *n == 0 {
            h.invariant_factors.is_empty() && h.free_rank == expected_rank
        } else {
            h.is_trivial()
        }
    });
    Ok(AcyclicityReport {
        homology,
        expected_rank,
        pass,
    })
}

/// One row of the first-filtration page: homology of `(L^{., p2}, d1)`.
#[derive(Clone, Debug)]
pub struct E1Row {
    pub p2: i64,
    /// `(p1, group)` for every column with symbols.
    pub groups: Vec<(i64, CohomologyGroup)>,
    /// concentrated at `p1 = -p2`, free, of rank
    /// `rank U(s - p2) - rank U(s - p2 - 1)`
    pub expected_rank: usize,
    pub pass: bool,
}

/// Row homology of the double complex under `d1`; the page collapses onto
/// the antidiagonal with the support-filtration quotient ranks.
pub fn first_filtration_e1(l: &LComplex) -> Result<Vec<E1Row>, EngineError> {
    let cfg = &l.cfg;
    let s = cfg.s() as i64;
    let (d1, _) = split_differential(l)?;
    let _ = d1;
    let mut rows = Vec::new();
    for p2 in 0..=s {
        // group symbols of this row by p1
        let mut by_p1: BTreeMap<i64, Vec<LSymbol>> = BTreeMap::new();
        for list in &l.symbols {
            for sym in list {
                let (a, b) = sym.bidegree(cfg);
                if b == p2 {
                    by_p1.entry(a).or_default().push(*sym);
                }
            }
        }
        if by_p1.is_empty() {
            continue;
        }
        let p1s: Vec<i64> = by_p1.keys().copied().collect();
        let mut groups = Vec::new();
        for &p1 in &p1s {
            let empty = Vec::new();
            let here = &by_p1[&p1];
            let before = by_p1.get(&(p1 - 1)).unwrap_or(&empty);
            let after = by_p1.get(&(p1 + 1)).unwrap_or(&empty);
            let d_in = matrix_between(before, here, |sym| d1_of_symbol(cfg, sym));
            let d_out = matrix_between(here, after, |sym| d1_of_symbol(cfg, sym));
            groups.push((p1, homology_at(&d_in, &d_out)?));
        }
        let rank_at = |n: i64| -> usize {
            if n < 0 {
                0
            } else {
                let ideal = OrderIdeal::of_rank(cfg.s(), n as usize).intersect(&l.ideal);
                ideal_basis(cfg, &ideal).len()
            }
        };
        let expected_rank = rank_at(s - p2) - rank_at(s - p2 - 1);
        let pass = groups.iter().all(|(p1, h)| {
            if *p1 == -p2 {
                h.invariant_factors.is_empty() && h.free_rank == expected_rank
            } else {
                h.is_trivial()
            }
        });
        rows.push(E1Row {
            p2,
            groups,
            expected_rank,
            pass,
        });
    }
    Ok(rows)
}

/// A symbol `[x, g]` of the resolution at general (not necessarily
/// squarefree) level `f`: `g` a squarefree divisor of `f`, `x` in
/// `(g/f)Z / Z`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GeneralSymbol {
    pub g: u64,
    pub num: u64,
}

/// The general-level resolution, for cross-checking acyclicity beyond the
/// squarefree world; levels are kept small.
pub struct GeneralLComplex {
    pub f: u64,
    pub symbols: Vec<Vec<GeneralSymbol>>,
    pub d: Vec<ExactMatrix>,
}

pub fn build_l_general(f: u64) -> GeneralLComplex {
    let primes: Vec<u64> = {
        let mut out = Vec::new();
        let mut m = f;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                out.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        out
    };
    let s = primes.len();
    // squarefree divisors by subset of the prime list
    let mut symbols: Vec<Vec<GeneralSymbol>> = vec![Vec::new(); s + 1];
    for mask in 0u32..(1 << s) {
        let g: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .product();
        let m = mask.count_ones() as usize;
        for k in 0..f / g {
            symbols[s - m].push(GeneralSymbol { g, num: k * g });
        }
    }
    for list in &mut symbols {
        list.sort();
    }
    let image = |sym: &GeneralSymbol| -> Vec<(GeneralSymbol, BigInt)> {
        let mut out: BTreeMap<GeneralSymbol, BigInt> = BTreeMap::new();
        let divisors: Vec<u64> = primes.iter().copied().filter(|p| sym.g % p == 0).collect();
        for (idx, &p) in divisors.iter().enumerate() {
            let sign = BigInt::from(if idx % 2 == 0 { 1 } else { -1 });
            let g_rest = sym.g / p;
            let keep = GeneralSymbol {
                g: g_rest,
                num: sym.num,
            };
            *out.entry(keep).or_insert_with(BigInt::zero) += &sign;
            for j in 1..=p {
                let num = (sym.num / p + j * (f / p)) % f;
                let b = GeneralSymbol { g: g_rest, num };
                *out.entry(b).or_insert_with(BigInt::zero) -= &sign;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out.into_iter().collect()
    };
    let mut d = Vec::new();
    for k in 0..s {
        let index: BTreeMap<GeneralSymbol, usize> = symbols[k + 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i))
            .collect();
        let mut m = ExactMatrix::zero(symbols[k + 1].len(), symbols[k].len());
        for (j, sym) in symbols[k].iter().enumerate() {
            for (target, c) in image(sym) {
                m.add_to(index[&target], j, &c);
            }
        }
        d.push(m);
    }
    GeneralLComplex { f, symbols, d }
}

/// Acyclic away from degree 0, with free degree-0 cohomology of rank
/// `phi(f)` (the basic-symbol count).
pub fn verify_general_acyclicity(f: u64) -> Result<bool, EngineError> {
    let l = build_l_general(f);
    let s = l.symbols.len() - 1;
    for k in 0..=s {
        let d_in = if k == 0 {
            ExactMatrix::zero(l.symbols[0].len(), 0)
        } else {
            l.d[k - 1].clone()
        };
        let d_out = if k == s {
            ExactMatrix::zero(0, l.symbols[s].len())
        } else {
            l.d[k].clone()
        };
        let h = homology_at(&d_in, &d_out)?;
        if k == s {
            if !(h.invariant_factors.is_empty() && h.free_rank == basis(f).len()) {
                return Ok(false);
            }
        } else if !h.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> PrimeConfig {
        PrimeConfig::new(&[3], 1).unwrap()
    }

    fn cfg21() -> PrimeConfig {
        PrimeConfig::new(&[3, 7], 2).unwrap()
    }

    #[test]
    fn l_sizes_and_differential_r3() {
        let cfg = cfg3();
        let l = build_l(&cfg, &OrderIdeal::full(1)).unwrap();
        assert_eq!(l.symbols[0].len(), 1); // degree -1: [0, {3}]
        assert_eq!(l.symbols[1].len(), 3); // degree 0
                                           // d[0,{3}] = -[1/3] - [2/3]: the preimage [0] cancels the kept term
        let col = l.d[0].column(0);
        assert_eq!(
            col,
            vec![BigInt::zero(), BigInt::from(-1), BigInt::from(-1)]
        );
    }

    #[test]
    fn l_sizes_r21() {
        let cfg = cfg21();
        let l = build_l(&cfg, &OrderIdeal::full(2)).unwrap();
        let sizes: Vec<usize> = l.symbols.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 10, 21]);
    }

    #[test]
    fn trivial_ideal_complex() {
        let cfg = cfg21();
        let l = build_l(&cfg, &OrderIdeal::from_masks(&[0])).unwrap();
        let sizes: Vec<usize> = l.symbols.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![0, 0, 1]);
        assert!(l.d.iter().all(ExactMatrix::is_zero));
    }

    #[test]
    fn split_r3() {
        let cfg = cfg3();
        let l = build_l(&cfg, &OrderIdeal::full(1)).unwrap();
        let (d1, d2) = split_differential(&l).unwrap();
        // d1[0,{3}] = -[1/3] - [2/3], d2[0,{3}] = 0
        assert_eq!(
            d1[0].column(0),
            vec![BigInt::zero(), BigInt::from(-1), BigInt::from(-1)]
        );
        assert!(d2[0].is_zero());
    }

    #[test]
    fn split_r21_and_ideals() {
        let cfg = cfg21();
        for ideal in [
            OrderIdeal::full(2),
            OrderIdeal::of_rank(2, 1),
            OrderIdeal::from_masks(&[0b01]),
        ] {
            let l = build_l(&cfg, &ideal).unwrap();
            split_differential(&l).unwrap();
        }
    }

    #[test]
    fn acyclicity_r3_r21() {
        let cfg = cfg3();
        let l = build_l(&cfg, &OrderIdeal::full(1)).unwrap();
        let rep = verify_acyclicity(&l).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.expected_rank, 2);

        let cfg = cfg21();
        let l = build_l(&cfg, &OrderIdeal::full(2)).unwrap();
        let rep = verify_acyclicity(&l).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.expected_rank, 12);
    }

    #[test]
    fn ideal_lattice_compatibility() {
        // generator-set identities for intersections and unions
        let cfg = cfg21();
        let i1 = OrderIdeal::from_masks(&[0b01]);
        let i2 = OrderIdeal::from_masks(&[0b10]);
        let l1 = build_l(&cfg, &i1).unwrap();
        let l2 = build_l(&cfg, &i2).unwrap();
        let li = build_l(&cfg, &i1.intersect(&i2)).unwrap();
        let lu = build_l(&cfg, &i1.union(&i2)).unwrap();
        for k in 0..l1.symbols.len() {
            let s1: std::collections::BTreeSet<_> = l1.symbols[k].iter().collect();
            let s2: std::collections::BTreeSet<_> = l2.symbols[k].iter().collect();
            let si: std::collections::BTreeSet<_> = li.symbols[k].iter().collect();
            let su: std::collections::BTreeSet<_> = lu.symbols[k].iter().collect();
            assert_eq!(
                si,
                s1.intersection(&s2).copied().collect(),
                "intersection at degree index {k}"
            );
            assert_eq!(
                su,
                s1.union(&s2).copied().collect(),
                "union at degree index {k}"
            );
        }
    }

    #[test]
    fn bidegrees_sum_to_degree() {
        let cfg = cfg21();
        let l = build_l(&cfg, &OrderIdeal::full(2)).unwrap();
        for (k, list) in l.symbols.iter().enumerate() {
            for sym in list {
                let (p1, p2) = sym.bidegree(&cfg);
                assert_eq!(p1 + p2, l.degree_of_index(k));
            }
        }
    }

    #[test]
    fn e1_rows_r3() {
        let cfg = cfg3();
        let l = build_l(&cfg, &OrderIdeal::full(1)).unwrap();
        let rows = first_filtration_e1(&l).unwrap();
        let ranks: Vec<(i64, usize)> = rows.iter().map(|r| (r.p2, r.expected_rank)).collect();
        assert_eq!(ranks, vec![(0, 1), (1, 1)]);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn e1_rows_r21() {
        let cfg = cfg21();
        let l = build_l(&cfg, &OrderIdeal::full(2)).unwrap();
        let rows = first_filtration_e1(&l).unwrap();
        // rank U(0) = 1, U(1) = 7, U(2) = 12: concentration ranks 5, 6, 1
        let ranks: Vec<(i64, usize)> = rows.iter().map(|r| (r.p2, r.expected_rank)).collect();
        assert_eq!(ranks, vec![(0, 5), (1, 6), (2, 1)]);
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn general_level_acyclicity() {
        for f in 1..=12u64 {
            assert!(verify_general_acyclicity(f).unwrap(), "f = {f}");
        }
    }

    #[test]
    fn acyclicity_over_every_order_ideal() {
        for primes in [vec![3u64], vec![3, 7], vec![3, 5, 7]] {
            let cfg = PrimeConfig::new(&primes, 1).unwrap();
            let ideals = OrderIdeal::enumerate_all(cfg.s());
            for ideal in &ideals {
                let l = build_l(&cfg, ideal).unwrap();
                let rep = verify_acyclicity(&l).unwrap();
                assert!(rep.pass, "primes {primes:?}, ideal {ideal:?}");
            }
        }
    }
}
