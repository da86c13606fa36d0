use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
///
/// `D` is diagonal with positive entries satisfying `d1 | d2 | ...`,
/// followed by zeros. The inverses of the transformation matrices are
/// tracked alongside, so consumers can move between the original and the
/// diagonal coordinates without solving.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: ExactMatrix,
    pub d: ExactMatrix,
    pub v: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub v_inv: ExactMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Dense working state; sizes here stay at desk scale, entries do not.
struct Work {
    m: usize,
    n: usize,
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn new(a: &ExactMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let dense = (0..m)
            .map(|i| (0..n).map(|j| a.get(i, j)).collect())
            .collect();
        Work {
            m,
            n,
            a: dense,
            u: dense_identity(m),
            u_inv: dense_identity(m),
            v: dense_identity(n),
            v_inv: dense_identity(n),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        for x in self.u[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.n {
            let t = &self.a[j][c] * q;
            self.a[i][c] -= t;
        }
        for c in 0..self.m {
            let t = &self.u[j][c] * q;
            self.u[i][c] -= t;
        }
        // (U E)^-1 = E^-1 U^-1 applied on the right of u_inv: col_j += q * col_i
        for r in 0..self.m {
            let t = &self.u_inv[r][i] * q;
            self.u_inv[r][j] += t;
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.m {
            let t = &self.a[r][j] * q;
            self.a[r][i] -= t;
        }
        for r in 0..self.n {
            let t = &self.v[r][j] * q;
            self.v[r][i] -= t;
        }
        for c in 0..self.n {
            let t = &self.v_inv[i][c] * q;
            self.v_inv[j][c] += t;
        }
    }

    /// Pivot of minimal absolute value in the trailing block, ties broken by
    /// lowest (row, col); deterministic output depends on it.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.m {
            for j in k..self.n {
                if self.a[i][j].is_zero() {
                    continue;
                }
                let a = self.a[i][j].abs();
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn from_dense(m: usize, n: usize, a: &[Vec<BigInt>]) -> ExactMatrix {
    ExactMatrix::from_entries(
        m,
        n,
        a.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(j, v)| ((i, j), v.clone()))
        }),
    )
}

/// Smith normal form of an arbitrary (possibly empty) integer matrix.
pub fn smith_normal_form(a: &ExactMatrix) -> SmithDecomposition {
    let mut w = Work::new(a);
    let steps = w.m.min(w.n);
    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = w.find_pivot(k) else {
                break 'pivot;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.a[k][k].is_negative() {
                w.negate_row(k);
            }
            let mut dirty = false;
            for i in k + 1..w.m {
                if !w.a[i][k].is_zero() {
                    let q = &w.a[i][k] / &w.a[k][k];
                    w.row_sub(i, k, &q);
                    if !w.a[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..w.n {
                if !w.a[k][j].is_zero() {
                    let q = &w.a[k][j] / &w.a[k][k];
                    w.col_sub(j, k, &q);
                    if !w.a[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // pivot divides the rest of the block, or pull an offender in
            let offender = (k + 1..w.m)
                .flat_map(|i| (k + 1..w.n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&w.a[i][j] % &w.a[k][k]).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    let minus = -one;
                    w.row_sub(k, i, &minus); // row_k += row_i
                }
                None => break 'pivot,
            }
        }
        if w.a[k][k].is_zero() {
            break;
        }
    }
    let invariant_factors: Vec<BigInt> = (0..steps)
        .map(|k| w.a[k][k].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithDecomposition {
        u: from_dense(w.m, w.m, &w.u),
        d: from_dense(w.m, w.n, &w.a),
        v: from_dense(w.n, w.n, &w.v),
        u_inv: from_dense(w.m, w.m, &w.u_inv),
        v_inv: from_dense(w.n, w.n, &w.v_inv),
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(a: &ExactMatrix) -> Vec<i64> {
        smith_normal_form(a)
            .invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_consistency(a: &ExactMatrix) {
        let s = smith_normal_form(a);
        let uav = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(uav, s.d, "U*A*V != D");
        assert_eq!(
            s.u.mul(&s.u_inv).unwrap(),
            ExactMatrix::identity(a.rows()),
            "u_inv is wrong"
        );
        assert_eq!(
            s.v.mul(&s.v_inv).unwrap(),
            ExactMatrix::identity(a.cols()),
            "v_inv is wrong"
        );
        assert!(s.u.determinant().unwrap().abs() == BigInt::one());
        assert!(s.v.determinant().unwrap().abs() == BigInt::one());
        for w in s.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
        }
    }

    #[test]
    fn worked_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let a = ExactMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(factors(&a), vec![2, 4]);
        check_consistency(&a);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(factors(&ExactMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(factors(&ExactMatrix::zero(2, 3)), Vec::<i64>::new());
        check_consistency(&ExactMatrix::zero(2, 3));
        check_consistency(&ExactMatrix::zero(0, 4));
        check_consistency(&ExactMatrix::zero(0, 0));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) must become (1, 6)
        let a = ExactMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(factors(&a), vec![1, 6]);
        check_consistency(&a);
    }
}
