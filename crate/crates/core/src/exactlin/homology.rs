use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::smith::smith_normal_form;
use crate::error::EngineError;

/// A finitely generated abelian group: free rank plus invariant factors
/// `d1 | d2 | ...`, each at least 2.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl CohomologyGroup {
    pub fn trivial() -> Self {
        CohomologyGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        CohomologyGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Torsion factors straight from a Smith diagonal; units dropped.
    pub fn from_presentation(free_rank: usize, diagonal: &[BigInt]) -> Self {
        let invariant_factors = diagonal
            .iter()
            .filter(|d| d.abs() > BigInt::one())
            .map(|d| d.abs())
            .collect();
        CohomologyGroup {
            free_rank,
            invariant_factors,
        }
    }

    /// Canonical invariant factors of a direct sum of cyclic groups of the
    /// given orders (order 0 meaning a free summand, order 1 dropped).
    pub fn from_cyclic_orders<I>(orders: I) -> Self
    where
        I: IntoIterator<Item = u64>,
    {
        let mut free_rank = 0usize;
        // prime -> descending exponent list
        let mut primary: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
        for q in orders {
            match q {
                0 => free_rank += 1,
                1 => {}
                mut m => {
                    let mut p = 2u64;
                    while p * p <= m {
                        if m % p == 0 {
                            let mut e = 0u32;
                            while m % p == 0 {
                                m /= p;
                                e += 1;
                            }
                            primary.entry(p).or_default().push(e);
                        }
                        p += 1;
                    }
                    if m > 1 {
                        primary.entry(m).or_default().push(1);
                    }
                }
            }
        }
        let mut slots = 0usize;
        for exps in primary.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            slots = slots.max(exps.len());
        }
        let mut factors = vec![BigInt::one(); slots];
        for (p, exps) in &primary {
            for (k, e) in exps.iter().enumerate() {
                // largest exponents go to the last invariant factor
                factors[slots - 1 - k] *= BigInt::from(*p).pow(*e);
            }
        }
        let invariant_factors = factors.into_iter().filter(|d| *d > BigInt::one()).collect();
        CohomologyGroup {
            free_rank,
            invariant_factors,
        }
    }

    /// Total order of the torsion part; `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        let mut o = BigInt::one();
        for d in &self.invariant_factors {
            o *= d;
        }
        Some(o)
    }

    /// If the group is a free `Z/m`-module, return its rank.
    pub fn free_mod_m_rank(&self, m: u64) -> Option<usize> {
        if self.free_rank > 0 {
            return None;
        }
        let m = BigInt::from(m);
        if self.invariant_factors.iter().all(|d| *d == m) {
            Some(self.invariant_factors.len())
        } else {
            None
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let mut g = canonicalize_bigint_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }
}

fn canonicalize_bigint_orders(orders: &[BigInt]) -> CohomologyGroup {
    // Desk-scale torsion: orders fit in u64.
    CohomologyGroup::from_cyclic_orders(
        orders
            .iter()
            .map(|d| u64::try_from(d).expect("torsion order fits u64")),
    )
}

impl fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Columns form a basis of the integer kernel `{x : A x = 0}`.
///
/// The kernel of `D = U A V` is spanned by the unit vectors past the rank,
/// so the corresponding columns of `V` span the kernel of `A`; they form a
/// saturated sublattice because `V` is unimodular.
pub fn kernel_basis(a: &ExactMatrix) -> ExactMatrix {
    let s = smith_normal_form(a);
    let keep: Vec<usize> = (s.rank()..a.cols()).collect();
    s.v.select_columns(&keep)
}

/// Columns form a basis of the column lattice `im(A)`.
pub fn image_basis(a: &ExactMatrix) -> ExactMatrix {
    let s = smith_normal_form(a);
    let cols: Vec<Vec<BigInt>> = (0..s.rank())
        .map(|j| {
            let col = s.u_inv.column(j);
            let d = &s.invariant_factors[j];
            col.into_iter().map(|x| x * d).collect()
        })
        .collect();
    ExactMatrix::from_columns(a.rows(), &cols)
}

pub fn rank(a: &ExactMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Solve `A x = b` over the integers.
pub fn solve(a: &ExactMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, EngineError> {
    let sols = solve_many(a, &ExactMatrix::column_vector(b))?;
    Ok(sols.map(|m| m.column(0)))
}

/// Solve `A X = B` over the integers, columnwise; `None` if any column has
/// no integral solution.
pub fn solve_many(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>, EngineError> {
    if b.rows() != a.rows() {
        return Err(EngineError::ShapeMismatch(format!(
            "solve: A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let s = smith_normal_form(a);
    let c = s.u.mul(b)?;
    let rank = s.rank();
    let mut y = ExactMatrix::zero(a.cols(), b.cols());
    for ((r, col), v) in c.entries() {
        if *r < rank {
            let d = &s.invariant_factors[*r];
            let (q, rem) = v.div_rem(d);
            if !rem.is_zero() {
                return Ok(None);
            }
            y.set(*r, *col, q);
        } else if !v.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul(&y)?))
}

/// Solve `A x = b (mod M)`; `M = 0` means over the integers.
pub fn solve_mod(
    a: &ExactMatrix,
    b: &[BigInt],
    m: u64,
) -> Result<Option<Vec<BigInt>>, EngineError> {
    if m == 0 {
        return solve(a, b);
    }
    let lift = a.hstack(&ExactMatrix::identity(a.rows()).scale(&BigInt::from(m)))?;
    match solve(&lift, b)? {
        None => Ok(None),
        Some(x) => {
            let big = BigInt::from(m);
            Ok(Some((0..a.cols()).map(|i| x[i].mod_floor(&big)).collect()))
        }
    }
}

/// Generating set for `{x : A x = 0 (mod M)}`, as columns; `M = 0` means
/// the integer kernel. For `M > 0` the set is obtained from the integer
/// kernel of the lift `[A | M*I]`, which is correct for composite `M`.
pub fn kernel_basis_mod(a: &ExactMatrix, m: u64) -> ExactMatrix {
    if m == 0 {
        return kernel_basis(a);
    }
    let lift = a
        .hstack(&ExactMatrix::identity(a.rows()).scale(&BigInt::from(m)))
        .expect("hstack with identity");
    let k = kernel_basis(&lift);
    let top: Vec<usize> = (0..a.cols()).collect();
    let mut proj = k.select_rows(&top).mod_reduce(m);
    // drop zero columns
    let keep: Vec<usize> = (0..proj.cols())
        .filter(|&c| proj.column(c).iter().any(|v| !v.is_zero()))
        .collect();
    proj = proj.select_columns(&keep);
    proj
}

/// The quotient of the lattice spanned by the columns of `num` by the
/// lattice spanned by the columns of `den`; the denominator lattice must be
/// contained in the numerator lattice.
pub fn quotient_group(
    num: &ExactMatrix,
    den: &ExactMatrix,
) -> Result<CohomologyGroup, EngineError> {
    if num.rows() != den.rows() {
        return Err(EngineError::ShapeMismatch(format!(
            "quotient: ambient dims {} vs {}",
            num.rows(),
            den.rows()
        )));
    }
    let basis = image_basis(num);
    let coords = solve_many(&basis, den)?.ok_or_else(|| {
        EngineError::ShapeMismatch("denominator lattice not contained in numerator".into())
    })?;
    let s = smith_normal_form(&coords);
    Ok(CohomologyGroup::from_presentation(
        basis.cols() - s.rank(),
        &s.invariant_factors,
    ))
}

/// Cohomology `ker(d_out) / im(d_in)` of `C_in --d_in--> C_mid --d_out--> C_out`.
pub fn homology_at(
    d_in: &ExactMatrix,
    d_out: &ExactMatrix,
) -> Result<CohomologyGroup, EngineError> {
    check_composable(d_in, d_out, 0)?;
    let s = smith_normal_form(d_out);
    let rank = s.rank();
    let mid = d_out.cols();
    // coordinates of the middle space in the basis given by the columns of V;
    // the kernel is spanned by the columns past the rank.
    let coords = s.v_inv.mul(d_in)?;
    let keep: Vec<usize> = (rank..mid).collect();
    let in_kernel = coords.select_rows(&keep);
    debug_assert!(
        {
            let dropped: Vec<usize> = (0..rank).collect();
            coords.select_rows(&dropped).is_zero()
        },
        "image not contained in kernel"
    );
    let t = smith_normal_form(&in_kernel);
    Ok(CohomologyGroup::from_presentation(
        (mid - rank) - t.rank(),
        &t.invariant_factors,
    ))
}

/// Cohomology of the same three-term sequence with coefficients reduced
/// mod `M`; computed by integer lifting, never by field elimination.
pub fn homology_at_mod(
    d_in: &ExactMatrix,
    d_out: &ExactMatrix,
    m: u64,
) -> Result<CohomologyGroup, EngineError> {
    if m == 0 {
        return homology_at(d_in, d_out);
    }
    check_composable(d_in, d_out, m)?;
    let mid = d_out.cols();
    let gens = kernel_basis_mod_lattice(d_out, m)?;
    let basis = image_basis(&gens);
    let m_block = ExactMatrix::identity(mid).scale(&BigInt::from(m));
    let den = d_in.hstack(&m_block)?;
    let coords = solve_many(&basis, &den)?
        .ok_or_else(|| EngineError::ShapeMismatch("image escapes the mod-M kernel".into()))?;
    let s = smith_normal_form(&coords);
    Ok(CohomologyGroup::from_presentation(
        basis.cols() - s.rank(),
        &s.invariant_factors,
    ))
}

/// Lattice `{x in Z^n : A x = 0 (mod M)}` as a full set of generators
/// (contains `M Z^n`).
fn kernel_basis_mod_lattice(a: &ExactMatrix, m: u64) -> Result<ExactMatrix, EngineError> {
    let lift = a.hstack(&ExactMatrix::identity(a.rows()).scale(&BigInt::from(m)))?;
    let k = kernel_basis(&lift);
    let top: Vec<usize> = (0..a.cols()).collect();
    Ok(k.select_rows(&top))
}

fn check_composable(d_in: &ExactMatrix, d_out: &ExactMatrix, m: u64) -> Result<(), EngineError> {
    if d_out.cols() != d_in.rows() {
        return Err(EngineError::ShapeMismatch(format!(
            "d_in maps into a space of dimension {}, d_out expects {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?.mod_reduce(m);
    if let Some((&(r, c), _)) = comp.entries().next() {
        return Err(EngineError::CompositionNonzero(r, c));
    }
    Ok(())
}

/// A square unimodular matrix whose first column is `v`; requires
/// `gcd(v) = 1`.
pub fn complete_unimodular(v: &[BigInt]) -> Result<ExactMatrix, EngineError> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g != BigInt::one() {
        return Err(EngineError::GcdNotOne(g.to_string()));
    }
    let col = ExactMatrix::column_vector(v);
    let s = smith_normal_form(&col);
    // U * v * V = e1 with V = [±1], so v = ±(first column of U^-1).
    let mut result = s.u_inv.clone();
    if s.v.get(0, 0) == -BigInt::one() {
        let n = v.len();
        for r in 0..n {
            let x = result.get(r, 0);
            result.set(r, 0, -x);
        }
    }
    debug_assert_eq!(result.column(0), v.to_vec());
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn homology_examples() {
        // cokernel of x2 on Z
        let d_in = ExactMatrix::from_rows(&[vec![2]]);
        let d_out = ExactMatrix::zero(0, 1);
        let h = homology_at(&d_in, &d_out).unwrap();
        assert_eq!(h, CohomologyGroup::from_cyclic_orders([2]));

        // no differentials, middle rank 3
        let h = homology_at(&ExactMatrix::zero(3, 0), &ExactMatrix::zero(0, 3)).unwrap();
        assert_eq!(h, CohomologyGroup::free(3));

        // two-term Koszul pattern is exact
        let d_in = ExactMatrix::from_rows(&[vec![1], vec![1]]);
        let d_out = ExactMatrix::from_rows(&[vec![1, -1]]);
        let h = homology_at(&d_in, &d_out).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn homology_rejects_bad_input() {
        let d_in = ExactMatrix::from_rows(&[vec![1], vec![0]]);
        let d_out = ExactMatrix::from_rows(&[vec![1, 0]]);
        assert!(matches!(
            homology_at(&d_in, &d_out),
            Err(EngineError::CompositionNonzero(0, 0))
        ));
        let d_in = ExactMatrix::zero(3, 1);
        let d_out = ExactMatrix::zero(1, 2);
        assert!(matches!(
            homology_at(&d_in, &d_out),
            Err(EngineError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn kernel_mod_examples() {
        let a = ExactMatrix::from_rows(&[vec![2]]);
        let k = kernel_basis_mod(&a, 4);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), BigInt::from(2));

        let k = kernel_basis_mod(&ExactMatrix::identity(2), 5);
        assert_eq!(k.cols(), 0);

        let k = kernel_basis_mod(&ExactMatrix::zero(1, 2), 3);
        // full rank-2 generating set
        let m = 3u64;
        let mut seen = std::collections::BTreeSet::new();
        for x in 0..m {
            for y in 0..m {
                let v = big(&[x as i64, y as i64]);
                if in_span_mod(&k, &v, m) {
                    seen.insert((x, y));
                }
            }
        }
        assert_eq!(seen.len(), 9);
    }

    fn in_span_mod(gens: &ExactMatrix, v: &[BigInt], m: u64) -> bool {
        solve_mod(gens, v, m).unwrap().is_some()
    }

    #[test]
    fn solve_examples() {
        let a = ExactMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_mod(&a, &big(&[3]), 0).unwrap(), None);
        let x = solve_mod(&a, &big(&[1]), 3).unwrap().unwrap();
        assert_eq!(x, big(&[2]));
        let id = ExactMatrix::identity(3);
        let b = big(&[7, -5, 0]);
        assert_eq!(solve_mod(&id, &b, 0).unwrap().unwrap(), b);
    }

    #[test]
    fn complete_unimodular_examples() {
        let r = complete_unimodular(&big(&[1])).unwrap();
        assert_eq!(r, ExactMatrix::identity(1));

        let r = complete_unimodular(&big(&[2, 3])).unwrap();
        assert_eq!(r.column(0), big(&[2, 3]));
        assert_eq!(r.determinant().unwrap().abs(), BigInt::one());

        assert!(matches!(
            complete_unimodular(&big(&[2, 4])),
            Err(EngineError::GcdNotOne(_))
        ));
        assert!(matches!(
            complete_unimodular(&[]),
            Err(EngineError::GcdNotOne(_))
        ));
    }

    #[test]
    fn cyclic_order_canonicalization() {
        // Z/2 + Z/6 + Z/2 -> 2 | 2 | 6
        let g = CohomologyGroup::from_cyclic_orders([2, 6, 2]);
        assert_eq!(
            g.invariant_factors,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(6)]
        );
        // Z/4 + Z/6 -> 2 | 12
        let g = CohomologyGroup::from_cyclic_orders([4, 6]);
        assert_eq!(g.invariant_factors, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g.order().unwrap(), BigInt::from(24));
    }

    #[test]
    fn mod_m_homology_is_lattice_based() {
        // 0 -> Z --(2)--> Z over Z/4: kernel of x2 mod 4 is 2Z/4Z = Z/2
        let d_in = ExactMatrix::zero(1, 0);
        let d_out = ExactMatrix::from_rows(&[vec![2]]);
        let h = homology_at_mod(&d_in, &d_out, 4).unwrap();
        assert_eq!(h, CohomologyGroup::from_cyclic_orders([2]));

        // identity map mod 5 has trivial kernel
        let h = homology_at_mod(
            &ExactMatrix::zero(1, 0),
            &ExactMatrix::from_rows(&[vec![1]]),
            5,
        )
        .unwrap();
        assert!(h.is_trivial());
    }

    /// Build a three-term complex with a prescribed answer by change of
    /// basis: the middle space splits into kernel coordinates (first k) and
    /// the rest; `d_out` kills the kernel block, `d_in` hits the kernel
    /// block through chosen multipliers. Conjugating by a random unimodular
    /// matrix hides the splitting.
    #[test]
    fn homology_matches_constructed_answers() {
        use num_traits::One;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let mid = rng.gen_range(1..=6usize);
            let kdim = rng.gen_range(0..=mid);
            let tcount = rng.gen_range(0..=kdim);
            let torsion: Vec<i64> = (0..tcount)
                .map(|_| [1i64, 1, 2, 3, 4, 6][rng.gen_range(0..6)])
                .collect();
            // d_out: identity on the non-kernel block
            let mut d_out = ExactMatrix::zero(mid - kdim, mid);
            for i in 0..mid - kdim {
                d_out.set(i, kdim + i, BigInt::one());
            }
            // d_in: f_i * e_i for the chosen multipliers, inside the kernel
            let mut d_in = ExactMatrix::zero(mid, torsion.len());
            for (j, f) in torsion.iter().enumerate() {
                d_in.set(j, j, BigInt::from(*f));
            }
            // random unimodular change of middle basis
            let mut w = ExactMatrix::identity(mid);
            let mut w_inv = ExactMatrix::identity(mid);
            for _ in 0..3 * mid {
                let i = rng.gen_range(0..mid);
                let j = rng.gen_range(0..mid);
                if i == j {
                    continue;
                }
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                // w += c * E_ij, applied as an elementary factor
                let mut e = ExactMatrix::identity(mid);
                e.set(i, j, c.clone());
                let mut e_inv = ExactMatrix::identity(mid);
                e_inv.set(i, j, -c);
                w = e.mul(&w).unwrap();
                w_inv = w_inv.mul(&e_inv).unwrap();
            }
            let d_in_hidden = w.mul(&d_in).unwrap();
            let d_out_hidden = d_out.mul(&w_inv).unwrap();
            let computed = homology_at(&d_in_hidden, &d_out_hidden).unwrap();
            let expected = {
                let mut orders = vec![0u64; kdim - tcount];
                orders.extend(torsion.iter().map(|&f| f as u64));
                CohomologyGroup::from_cyclic_orders(orders)
            };
            assert_eq!(
                computed, expected,
                "mid={mid} kdim={kdim} torsion={torsion:?}"
            );
        }
    }

    #[test]
    fn kernel_mod_spans_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for m in 2u64..=4 {
            for _ in 0..12 {
                let rows = rng.gen_range(1..=3usize);
                let cols = rng.gen_range(1..=3usize);
                let a = ExactMatrix::from_rows(
                    &(0..rows)
                        .map(|_| (0..cols).map(|_| rng.gen_range(-5i64..=5)).collect())
                        .collect::<Vec<_>>(),
                );
                let k = kernel_basis_mod(&a, m);
                // every generator is in the kernel
                for c in 0..k.cols() {
                    let img = a.apply(&k.column(c)).unwrap();
                    let big = BigInt::from(m);
                    assert!(img.iter().all(|x| x.mod_floor(&big).is_zero()));
                }
                // every brute-force kernel vector is in their span
                let mut vec = vec![0u64; cols];
                loop {
                    let v: Vec<BigInt> = vec.iter().map(|&x| BigInt::from(x)).collect();
                    let img = a.apply(&v).unwrap();
                    let big = BigInt::from(m);
                    if img.iter().all(|x| x.mod_floor(&big).is_zero()) {
                        assert!(
                            solve_mod(&k, &v, m).unwrap().is_some(),
                            "v={vec:?} not in span, A={a:?} m={m}"
                        );
                    }
                    // odometer over (Z/m)^cols
                    let mut pos = 0;
                    while pos < cols {
                        vec[pos] += 1;
                        if vec[pos] < m {
                            break;
                        }
                        vec[pos] = 0;
                        pos += 1;
                    }
                    if pos == cols {
                        break;
                    }
                }
            }
        }
    }
}
