//! Hom complexes against the periodic projective resolution of the trivial
//! module: `Hom(P, U)` (the distribution coefficients) and the double
//! complex `Hom(P, L)` over the resolution of the distribution.
//!
//! The resolution is infinite, so complexes are truncated at a multi-index
//! degree bound `q_max`; a total degree is certified when every space its
//! cohomology touches is complete.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::distribution::{
    basis, ideal_basis, normalize_symbol, DistElement, Fraction, OrderIdeal,
};
use crate::error::EngineError;
use crate::exactlin::{homology_at_mod, CohomologyGroup, ExactMatrix};
use crate::galois::{MultiIndex, PrimeConfig};
use crate::signs::{hom_twist, omega_e_sign, omega_i_t};

/// A cochain complex stored degree by degree with its differentials.
#[derive(Clone)]
pub struct GradedComplex<S> {
    pub min_degree: i64,
    pub modulus: u64,
    /// `spaces[k]` is the ordered symbol list in degree `min_degree + k`.
    pub spaces: Vec<Vec<S>>,
    /// `d[k]` maps degree `min_degree + k` to `min_degree + k + 1`; one
    /// entry per consecutive pair.
    pub d: Vec<ExactMatrix>,
    /// Largest degree whose cohomology is free of truncation effects.
    pub max_certified: i64,
}

impl<S: Clone + Ord + fmt::Debug> GradedComplex<S> {
    pub fn index_of(&self, degree: i64) -> Option<usize> {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.spaces.len() {
            None
        } else {
            Some(k as usize)
        }
    }

    pub fn space_at(&self, degree: i64) -> &[S] {
        match self.index_of(degree) {
            Some(k) => &self.spaces[k],
            None => &[],
        }
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.space_at(degree).len()
    }

    /// Matrix of the differential out of `degree`.
    pub fn matrix_from(&self, degree: i64) -> ExactMatrix {
        match self.index_of(degree) {
            Some(k) if k < self.d.len() => self.d[k].clone(),
            _ => ExactMatrix::zero(self.dim_at(degree + 1), self.dim_at(degree)),
        }
    }

    pub fn cohomology(&self, degree: i64) -> Result<CohomologyGroup, EngineError> {
        assert!(
            degree <= self.max_certified,
            "degree {degree} beyond the certified bound {}",
            self.max_certified
        );
        let d_in = self.matrix_from(degree - 1);
        let d_out = self.matrix_from(degree);
        homology_at_mod(&d_in, &d_out, self.modulus)
    }

    /// `d * d = 0` over the stored range (mod the modulus when set).
    pub fn check_squares_to_zero(&self) -> Result<(), EngineError> {
        for k in 0..self.d.len().saturating_sub(1) {
            let sq = self.d[k + 1].mul(&self.d[k])?.mod_reduce(self.modulus);
            if !sq.is_zero() {
                let (&(r, c), _) = sq.entries().next().expect("nonzero matrix");
                return Err(EngineError::NotACocycle(format!(
                    "d^2 != 0 from degree {} at ({r}, {c})",
                    self.min_degree + k as i64
                )));
            }
        }
        Ok(())
    }
}

/// Generator `[a, e]` of `Hom(P, U)`: the basic symbol `a` placed in the
/// `e`-indexed copy of the distribution.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct USymbol {
    pub e: MultiIndex,
    pub frac: Fraction,
}

impl fmt::Debug for USymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.frac, self.e)
    }
}

/// Precomputed action matrices on a fixed ordered sub-basis of the
/// distribution.
pub struct ActionTables {
    pub basis: Vec<Fraction>,
    /// `I - rho(sigma_i)` per prime.
    pub one_minus_sigma: Vec<ExactMatrix>,
    /// `rho(N_i)` per prime.
    pub norm: Vec<ExactMatrix>,
}

/// The action matrix of `g` restricted to a support-closed sub-basis.
pub fn action_matrix_on(
    cfg: &PrimeConfig,
    g: &crate::galois::GroupElement,
    sub_basis: &[Fraction],
) -> ExactMatrix {
    let index: BTreeMap<Fraction, usize> =
        sub_basis.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let x = cfg.multiplier(g);
    let mut m = ExactMatrix::zero(sub_basis.len(), sub_basis.len());
    for (j, a) in sub_basis.iter().enumerate() {
        for (b, c) in normalize_symbol(a.scale(x)).coeffs() {
            let i = *index
                .get(b)
                .expect("action leaves the support-closed sub-basis");
            m.add_to(i, j, c);
        }
    }
    m
}

pub fn action_tables(cfg: &PrimeConfig, ideal: Option<&OrderIdeal>) -> ActionTables {
    let basis_list = match ideal {
        Some(i) => ideal_basis(cfg, i),
        None => basis(cfg.level()),
    };
    let n = basis_list.len();
    let mut one_minus_sigma = Vec::new();
    let mut norm = Vec::new();
    for i in 0..cfg.s() {
        let sigma = cfg.sigma(i).expect("index in range");
        let rho = action_matrix_on(cfg, &sigma, &basis_list);
        one_minus_sigma.push(ExactMatrix::identity(n).sub(&rho).expect("same shape"));
        let mut acc = ExactMatrix::zero(n, n);
        let mut power = ExactMatrix::identity(n);
        for _ in 0..cfg.primes()[i] - 1 {
            acc = acc.add(&power).expect("same shape");
            power = rho.mul(&power).expect("same shape");
        }
        norm.push(acc);
    }
    ActionTables {
        basis: basis_list,
        one_minus_sigma,
        norm,
    }
}

/// `Hom(P, U)` (optionally with coefficients in the order-ideal
/// sub-distribution), truncated at multi-index degree `q_max`, with the
/// alternating `(1 - sigma_i)` / `N_i` differential.
pub fn hom_p_u(
    cfg: &PrimeConfig,
    modulus: u64,
    q_max: u64,
    ideal: Option<&OrderIdeal>,
) -> Result<GradedComplex<USymbol>, EngineError> {
    check_coeff_modulus(cfg, modulus)?;
    let tables = action_tables(cfg, ideal);
    let nb = tables.basis.len();
    let mut spaces: Vec<Vec<USymbol>> = Vec::new();
    for q in 0..=q_max {
        let mut list = Vec::new();
        for e in MultiIndex::all_of_degree(cfg.s(), q) {
            for a in &tables.basis {
                list.push(USymbol {
                    e: e.clone(),
                    frac: *a,
                });
            }
        }
        list.sort();
        spaces.push(list);
    }
    let mut d = Vec::new();
    for q in 0..q_max {
        let from = &spaces[q as usize];
        let to = &spaces[q as usize + 1];
        let index: BTreeMap<USymbol, usize> =
            to.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let frac_index: BTreeMap<Fraction, usize> = tables
            .basis
            .iter()
            .enumerate()
            .map(|(i, a)| (*a, i))
            .collect();
        let mut m = ExactMatrix::zero(to.len(), from.len());
        for (j, sym) in from.iter().enumerate() {
            let k = frac_index[&sym.frac];
            for i in 0..cfg.s() {
                let sign = BigInt::from(omega_e_sign(sym.e.components(), i));
                let table = if sym.e.components()[i] % 2 == 0 {
                    &tables.one_minus_sigma[i]
                } else {
                    &tables.norm[i]
                };
                let e_up = sym.e.bump(i);
                for row in 0..nb {
                    let coeff = table.get(row, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    let target = USymbol {
                        e: e_up.clone(),
                        frac: tables.basis[row],
                    };
                    m.add_to(index[&target], j, &(coeff * &sign));
                }
            }
        }
        d.push(m.mod_reduce(modulus));
    }
    Ok(GradedComplex {
        min_degree: 0,
        modulus,
        spaces,
        d,
        max_certified: q_max as i64 - 1,
    })
}

fn check_coeff_modulus(cfg: &PrimeConfig, m: u64) -> Result<(), EngineError> {
    if m > 1 {
        for &l in cfg.primes() {
            if (l - 1) % m != 0 {
                return Err(EngineError::BadModulus(
                    m,
                    format!("does not divide {} - 1", l),
                ));
            }
        }
    }
    Ok(())
}

/// Generator `[a, T, e]` of `Hom(P, L)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KSymbol {
    pub t_mask: u32,
    pub e: MultiIndex,
    pub frac: Fraction,
}

impl KSymbol {
    /// Total degree `-|T| + deg e`.
    pub fn total_degree(&self) -> i64 {
        self.e.deg() as i64 - self.t_mask.count_ones() as i64
    }

    /// The resolution bidegree `(p1, p2)` of the underlying `[a, T]`.
    pub fn p1(&self, cfg: &PrimeConfig) -> i64 {
        self.frac.supp_mask(cfg).count_ones() as i64 - cfg.s() as i64
    }

    pub fn p2(&self, cfg: &PrimeConfig) -> i64 {
        let s = cfg.s() as i64;
        s - self.frac.supp_mask(cfg).count_ones() as i64 - self.t_mask.count_ones() as i64
    }

    /// Quotient generators: zero fraction and support of `e` containing `T`.
    pub fn is_q_symbol(&self) -> bool {
        self.frac.is_zero() && (self.t_mask & !self.e.supp_mask()) == 0
    }
}

impl fmt::Debug for KSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, T={:#b}, {:?}]", self.frac, self.t_mask, self.e)
    }
}

/// Which differential (or combination) to expand on a symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KDiff {
    /// The resolution differential `d` (degree `+1` in `-|T|`).
    D,
    /// The horizontal half `d1`.
    D1,
    /// The vertical half `d2`.
    D2,
    /// The Hom differential `delta` (degree `+1` in `deg e`).
    Delta,
    /// `d1 + delta` — the slice total differential.
    D1Delta,
    /// `d + delta` — the total differential.
    Total,
}

/// Expand one application of the chosen differential on a symbol; results
/// are raw integer combinations of target symbols.
pub fn k_image(cfg: &PrimeConfig, sym: &KSymbol, which: KDiff) -> Vec<(KSymbol, BigInt)> {
    let mut out: BTreeMap<KSymbol, BigInt> = BTreeMap::new();
    let mut add = |s: KSymbol, c: BigInt| {
        let e = out.entry(s).or_insert_with(BigInt::zero);
        *e += c;
    };
    let want_d = matches!(which, KDiff::D | KDiff::Total);
    let want_d1 = matches!(which, KDiff::D1 | KDiff::D1Delta);
    let want_d2 = matches!(which, KDiff::D2);
    let want_delta = matches!(which, KDiff::Delta | KDiff::D1Delta | KDiff::Total);

    let r = cfg.level();
    if want_d || want_d1 || want_d2 {
        for i in 0..cfg.s() {
            let sign = omega_i_t(i, sym.t_mask);
            if sign == 0 {
                continue;
            }
            let t_rest = sym.t_mask & !(1 << i);
            let l = cfg.primes()[i];
            if want_d {
                let sign = BigInt::from(sign);
                add(
                    KSymbol {
                        t_mask: t_rest,
                        e: sym.e.clone(),
                        frac: sym.frac,
                    },
                    sign.clone(),
                );
                let base = sym.frac.numerator() / l;
                let step = r / l;
                for k in 0..l {
                    add(
                        KSymbol {
                            t_mask: t_rest,
                            e: sym.e.clone(),
                            frac: Fraction::new(base + k * step, r),
                        },
                        -sign.clone(),
                    );
                }
            }
            if want_d1 {
                let sign = BigInt::from(-sign);
                let fr_inv = cfg.group_inv(&cfg.frobenius(i).expect("index in range"));
                let shifted = sym
                    .frac
                    .scale(cfg.multiplier(&fr_inv))
                    .add(&Fraction::new(r / l, r))
                    .expect("same level");
                let sigma = cfg.sigma(i).expect("index in range");
                for k in 0..l - 1 {
                    let moved = shifted.scale(cfg.multiplier(&cfg.group_pow(&sigma, k)));
                    add(
                        KSymbol {
                            t_mask: t_rest,
                            e: sym.e.clone(),
                            frac: moved,
                        },
                        sign.clone(),
                    );
                }
            }
            if want_d2 {
                let sign = BigInt::from(sign);
                add(
                    KSymbol {
                        t_mask: t_rest,
                        e: sym.e.clone(),
                        frac: sym.frac,
                    },
                    sign.clone(),
                );
                let fr_inv = cfg.group_inv(&cfg.frobenius(i).expect("index in range"));
                add(
                    KSymbol {
                        t_mask: t_rest,
                        e: sym.e.clone(),
                        frac: sym.frac.scale(cfg.multiplier(&fr_inv)),
                    },
                    -sign,
                );
            }
        }
    }
    if want_delta {
        let twist = hom_twist(sym.t_mask);
        for i in 0..cfg.s() {
            let sign = BigInt::from(twist * omega_e_sign(sym.e.components(), i));
            let e_up = sym.e.bump(i);
            if sym.e.components()[i] % 2 == 0 {
                // (1 - sigma_i) on the symbol slot
                add(
                    KSymbol {
                        t_mask: sym.t_mask,
                        e: e_up.clone(),
                        frac: sym.frac,
                    },
                    sign.clone(),
                );
                let sigma = cfg.sigma(i).expect("index in range");
                add(
                    KSymbol {
                        t_mask: sym.t_mask,
                        e: e_up,
                        frac: sym.frac.scale(cfg.multiplier(&sigma)),
                    },
                    -sign,
                );
            } else {
                let sigma = cfg.sigma(i).expect("index in range");
                for k in 0..cfg.primes()[i] - 1 {
                    let moved = sym.frac.scale(cfg.multiplier(&cfg.group_pow(&sigma, k)));
                    add(
                        KSymbol {
                            t_mask: sym.t_mask,
                            e: e_up.clone(),
                            frac: moved,
                        },
                        sign.clone(),
                    );
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out.into_iter().collect()
}

/// Assemble the matrix of a differential between two ordered symbol lists.
pub fn k_matrix(
    cfg: &PrimeConfig,
    from: &[KSymbol],
    to: &[KSymbol],
    which: KDiff,
    modulus: u64,
) -> ExactMatrix {
    let index: BTreeMap<&KSymbol, usize> = to.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = ExactMatrix::zero(to.len(), from.len());
    for (j, sym) in from.iter().enumerate() {
        for (target, c) in k_image(cfg, sym, which) {
            let i = *index
                .get(&target)
                .unwrap_or_else(|| panic!("image symbol {target:?} missing from target list"));
            m.add_to(i, j, &c);
        }
    }
    m.mod_reduce(modulus)
}

/// All symbols of a given total degree inside the ideal subcomplex.
pub fn k_symbols_at(cfg: &PrimeConfig, ideal: &OrderIdeal, n: i64) -> Vec<KSymbol> {
    let r = cfg.level();
    let mut out = Vec::new();
    for t_mask in 0..=cfg.full_mask() {
        let t_size = t_mask.count_ones() as i64;
        let q = n + t_size;
        if q < 0 {
            continue;
        }
        let indices = MultiIndex::all_of_degree(cfg.s(), q as u64);
        for num in 0..r {
            let frac = Fraction::new(num, r);
            let supp = frac.supp_mask(cfg);
            if supp & t_mask != 0 || !ideal.contains(supp | t_mask) {
                continue;
            }
            for e in &indices {
                out.push(KSymbol {
                    t_mask,
                    e: e.clone(),
                    frac,
                });
            }
        }
    }
    out.sort();
    out
}

/// The total complex of `Hom(P, L(ideal))`, truncated at `deg e <= q_max`.
pub fn build_k(
    cfg: &PrimeConfig,
    modulus: u64,
    ideal: &OrderIdeal,
    q_max: u64,
) -> Result<GradedComplex<KSymbol>, EngineError> {
    check_coeff_modulus(cfg, modulus)?;
    let s = cfg.s() as i64;
    let min_degree = -s;
    let max_degree = q_max as i64 - s;
    let mut spaces = Vec::new();
    for n in min_degree..=max_degree {
        spaces.push(k_symbols_at(cfg, ideal, n));
    }
    let mut d = Vec::new();
    for k in 0..spaces.len() - 1 {
        d.push(k_matrix(
            cfg,
            &spaces[k],
            &spaces[k + 1],
            KDiff::Total,
            modulus,
        ));
    }
    let complex = GradedComplex {
        min_degree,
        modulus,
        spaces,
        d,
        max_certified: max_degree - 1,
    };
    complex.check_squares_to_zero()?;
    Ok(complex)
}

/// Evaluate the projection to distribution coefficients at total degree
/// `n`: keep the `T = {}` part, normalize each fraction, and read off the
/// `[., e]`-components.
pub fn u_projection(
    cfg: &PrimeConfig,
    modulus: u64,
    terms: &BTreeMap<KSymbol, BigInt>,
) -> BTreeMap<MultiIndex, DistElement> {
    let r = cfg.level();
    let mut per_e: BTreeMap<MultiIndex, Vec<(Fraction, BigInt)>> = BTreeMap::new();
    for (sym, c) in terms {
        if sym.t_mask != 0 {
            continue;
        }
        per_e
            .entry(sym.e.clone())
            .or_default()
            .push((sym.frac, c.clone()));
    }
    per_e
        .into_iter()
        .map(|(e, raw)| {
            (
                e,
                crate::distribution::normalize_combination(r, modulus, raw),
            )
        })
        .collect()
}

/// The indexing set of the quotient generators at a total degree: pairs
/// `(T, e)` with `supp e` containing `T` and `deg e = n + |T|`.
pub fn class_count(cfg: &PrimeConfig, ideal: &OrderIdeal, n: i64) -> usize {
    let mut count = 0;
    for t_mask in 0..=cfg.full_mask() {
        if !ideal.contains(t_mask) {
            continue;
        }
        let q = n + t_mask.count_ones() as i64;
        if q < 0 {
            continue;
        }
        count += MultiIndex::all_of_degree(cfg.s(), q as u64)
            .into_iter()
            .filter(|e| t_mask & !e.supp_mask() == 0)
            .count();
    }
    count
}
