//! Dense arbitrary-precision integer matrices, Smith normal form, and the
//! exact linear solvers built on it.
//!
//! The Smith normal form underlies every structural computation in the
//! crate: cokernels, kernels, integer solvability, and lattice membership
//! all reduce to it. Pivoting picks the smallest nonzero entry by absolute
//! value, which keeps coefficient growth tame on desk-scale inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix({}x{})[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix with the given entries, padded with zeros.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zero(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            assert!(i < rows && i < cols);
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Block-diagonal assembly: `[self 0; 0 other]`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let t = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = t;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `left * m * right = diag` with unimodular transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Non-negative diagonal entries satisfying `diag[i] | diag[i+1]`,
    /// truncated at the first zero (trailing zeros are implicit).
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The full diagonal matrix (including zero tail) of the input shape.
    pub fn diag_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::diagonal(rows, cols, &self.diag)
    }
}

struct SnfCalc {
    a: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
}

impl SnfCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols {
            self.a.entries.swap(i * self.a.cols + c, j * self.a.cols + c);
        }
        for c in 0..self.left.cols {
            self.left.entries.swap(i * self.left.cols + c, j * self.left.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows {
            self.a.entries.swap(r * self.a.cols + i, r * self.a.cols + j);
        }
        for r in 0..self.right.rows {
            self.right.entries.swap(r * self.right.cols + i, r * self.right.cols + j);
        }
    }

    /// row_i -= q * row_j, tracked in `left`.
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.a.cols {
            let t = &self.a[(j, c)] * q;
            self.a[(i, c)] -= t;
        }
        for c in 0..self.left.cols {
            let t = &self.left[(j, c)] * q;
            self.left[(i, c)] -= t;
        }
    }

    /// col_i -= q * col_j, tracked in `right`.
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.a.rows {
            let t = &self.a[(r, j)] * q;
            self.a[(r, i)] -= t;
        }
        for r in 0..self.right.rows {
            let t = &self.right[(r, j)] * q;
            self.right[(r, i)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols {
            let t = -self.a[(i, c)].clone();
            self.a[(i, c)] = t;
        }
        for c in 0..self.left.cols {
            let t = -self.left[(i, c)].clone();
            self.left[(i, c)] = t;
        }
    }

    /// Smallest nonzero entry by absolute value in the trailing submatrix.
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows {
            for j in k..self.a.cols {
                if self.a[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].abs() <= self.a[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn eliminate(&mut self, k: usize) -> bool {
        let Some((pi, pj)) = self.select_pivot(k) else {
            return false;
        };
        self.swap_rows(k, pi);
        self.swap_cols(k, pj);
        loop {
            let mut clean = true;
            for i in k + 1..self.a.rows {
                if self.a[(i, k)].is_zero() {
                    continue;
                }
                let q = self.a[(i, k)].div_floor(&self.a[(k, k)]);
                self.row_sub(i, k, &q);
                if !self.a[(i, k)].is_zero() {
                    // remainder became the smaller pivot
                    self.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..self.a.cols {
                if self.a[(k, j)].is_zero() {
                    continue;
                }
                let q = self.a[(k, j)].div_floor(&self.a[(k, k)]);
                self.col_sub(j, k, &q);
                if !self.a[(k, j)].is_zero() {
                    self.swap_cols(k, j);
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if self.a[(k, k)].is_negative() {
            self.negate_row(k);
        }
        true
    }

    /// Replace the diagonal pair (d_i, d_{i+1}) by (gcd, lcm) with
    /// transform-tracked operations confined to rows/columns i, i+1.
    /// Requires the matrix diagonal outside the pair's rows/columns.
    fn smith_pair_step(&mut self, i: usize) {
        let j = i + 1;
        // fold column j into column i: block [[a, 0], [b, b]]
        self.col_sub(i, j, &(-BigInt::one()));
        // Euclid on column i between the two rows; the block stays closed
        while !self.a[(j, i)].is_zero() {
            let q = self.a[(i, i)].div_floor(&self.a[(j, i)]);
            self.row_sub(i, j, &q);
            self.swap_rows(i, j);
        }
        if self.a[(i, i)].is_negative() {
            self.negate_row(i);
        }
        // the gcd of the block divides the remaining off-diagonal entry
        let q = self.a[(i, j)].div_floor(&self.a[(i, i)]);
        self.col_sub(j, i, &q);
        debug_assert!(self.a[(i, j)].is_zero());
        if self.a[(j, j)].is_negative() {
            self.negate_row(j);
        }
    }

    /// Restore the divisibility chain on the nonzero diagonal block by
    /// bubbling gcd/lcm pair steps; prime mass only ever moves towards
    /// later factors, so the sweep terminates.
    fn fix_divisibility(&mut self, r: usize) {
        loop {
            let mut fixed = true;
            for i in 0..r.saturating_sub(1) {
                let rem = self.a[(i + 1, i + 1)].mod_floor(&self.a[(i, i)]);
                if rem.is_zero() {
                    continue;
                }
                fixed = false;
                self.smith_pair_step(i);
            }
            if fixed {
                break;
            }
        }
    }
}

/// Smith normal form of `m`: returns diagonal invariant factors and
/// unimodular `left`, `right` with `left * m * right` diagonal.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut calc = SnfCalc {
        a: m.clone(),
        left: IntMatrix::identity(m.rows()),
        right: IntMatrix::identity(m.cols()),
    };
    let bound = m.rows().min(m.cols());
    let mut r = 0;
    for k in 0..bound {
        if !calc.eliminate(k) {
            break;
        }
        r += 1;
    }
    calc.fix_divisibility(r);
    let diag = (0..r).map(|i| calc.a[(i, i)].clone()).collect();
    Snf { diag, left: calc.left, right: calc.right }
}

/// Basis of the integer kernel lattice `{x : m x = 0}`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    (r..m.cols()).map(|j| snf.right.column(j)).collect()
}

/// Reusable exact solver for `m x = b`: factors once, solves many.
pub struct SnfSolver {
    snf: Snf,
    rows: usize,
    cols: usize,
}

impl SnfSolver {
    pub fn new(m: &IntMatrix) -> Self {
        SnfSolver { snf: smith_normal_form(m), rows: m.rows(), cols: m.cols() }
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: matrix has {} rows, vector has {} entries",
                self.rows,
                b.len()
            )));
        }
        let c = self.snf.left.mul_vec(b);
        let r = self.snf.rank();
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rows {
            if i < r {
                let (q, rem) = c[i].div_rem(&self.snf.diag[i]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !c[i].is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.snf.right.mul_vec(&y)))
    }
}

/// One integer solution of `m x = b`, if any exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    SnfSolver::new(m).solve(b)
}

/// Whether `b` lies in the column span (integer lattice) of `m`.
pub fn in_column_span(m: &IntMatrix, b: &[BigInt]) -> Result<bool> {
    Ok(solve(m, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Independent oracle: invariant factors from gcds of k x k minors.
    /// d_1 * ... * d_k = gcd of all k x k minors.
    fn minors_oracle(m: &IntMatrix) -> Vec<BigInt> {
        fn minor_det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            let sub = IntMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])].clone());
            sub.det()
        }
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(0, n, k, &mut cur, &mut out);
            out
        }
        let bound = m.rows().min(m.cols());
        let mut gcds = Vec::new();
        for k in 1..=bound {
            let mut g = BigInt::zero();
            for rs in combos(m.rows(), k) {
                for cs in combos(m.cols(), k) {
                    g = g.gcd(&minor_det(m, &rs, &cs));
                }
            }
            if g.is_zero() {
                break;
            }
            gcds.push(g);
        }
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for g in gcds {
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    fn assert_snf_valid(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        // left * m * right equals the diagonal
        let prod = snf.left.mul(m).mul(&snf.right);
        assert_eq!(prod, snf.diag_matrix(m.rows(), m.cols()), "product not diagonal for {m:?}");
        // transforms are unimodular
        assert_eq!(snf.left.det().abs(), big(1), "left not unimodular");
        assert_eq!(snf.right.det().abs(), big(1), "right not unimodular");
        // divisibility chain, nonzero, non-negative
        for w in snf.diag.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "chain violated: {:?}", snf.diag);
        }
        assert!(snf.diag.iter().all(|d| d.is_positive()));
        // agrees with the minors oracle
        assert_eq!(snf.diag, minors_oracle(m), "minors oracle mismatch for {m:?}");
    }

    #[test]
    fn identity_case() {
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(snf.diag, vec![big(1), big(1)]);
    }

    #[test]
    fn zero_matrix() {
        let snf = smith_normal_form(&IntMatrix::from_rows(vec![vec![0]]));
        assert!(snf.diag.is_empty());
    }

    #[test]
    fn two_by_two_example() {
        // gcd of 1x1 minors = 2 and |det| = 8, so diag = (2, 4)
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![big(2), big(4)]);
        assert_snf_valid(&m);
    }

    #[test]
    fn empty_shapes() {
        let m = IntMatrix::zero(2, 0);
        let snf = smith_normal_form(&m);
        assert!(snf.diag.is_empty());
        assert_eq!(snf.left.rows(), 2);
        let m = IntMatrix::zero(0, 3);
        assert!(smith_normal_form(&m).diag.is_empty());
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_rows(vec![vec![6, 0], vec![0, 4]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![big(2), big(12)]);
        assert_snf_valid(&m);
    }

    #[test]
    fn random_matrices_match_minors_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..120 {
            let rows = rng.gen_range(0..=5);
            let cols = rng.gen_range(0..=5);
            let m = IntMatrix::from_fn(rows, cols, |_, _| big(rng.gen_range(-20..=20)));
            assert_snf_valid(&m);
        }
    }

    #[test]
    fn solve_and_kernel() {
        // 2x + 4y = 6 has integer solutions; = 7 does not
        let m = IntMatrix::from_rows(vec![vec![2, 4]]);
        let x = solve(&m, &[big(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![big(6)]);
        assert!(solve(&m, &[big(7)]).unwrap().is_none());

        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 1);
        assert_eq!(m.mul_vec(&ker[0]), vec![big(0)]);
        assert!(!ker[0].iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = IntMatrix::from_rows(vec![vec![1, 0]]);
        assert!(solve(&m, &[big(1), big(2)]).is_err());
    }

    #[test]
    fn determinant_bareiss() {
        let m = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(m.det(), big(-3));
        assert_eq!(IntMatrix::identity(4).det(), big(1));
        assert_eq!(IntMatrix::zero(3, 3).det(), big(0));
    }
}
