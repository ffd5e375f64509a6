//! Dense exact matrices over arbitrary-precision rationals.
//!
//! Everything here is sized for the algebras this crate works with
//! (dimension up to ~20), so the representation is a flat dense `Vec` and
//! elimination is plain Gauss-Jordan over `BigRational`. Reduced row
//! echelon form is used as the canonical representative of a row span, so
//! two matrices span the same subspace iff their `rref` outputs are equal.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact scalar: reduced fraction with positive denominator
/// (both guaranteed by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Zero vector of the given length.
pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

/// Exact dot product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// `a + c*b`, elementwise.
pub fn add_scaled(a: &[Rational], c: &Rational, b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Scale an integer-normalizable vector to a primitive integer vector with
/// positive leading entry: divides out the content and fixes the sign of
/// the first nonzero coordinate. Returns `None` for zero vectors.
pub fn normalize_primitive(v: &[Rational]) -> Option<Vec<Rational>> {
    let first = v.iter().find(|x| !x.is_zero())?;
    // common denominator
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = num_integer::lcm(denom_lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for z in &ints {
        content = num_integer::gcd(content, z.clone());
    }
    let sign = if first.is_negative() { -1 } else { 1 };
    let scale = content * BigInt::from(sign);
    Some(
        ints.iter()
            .map(|z| Rational::from_integer(z / &scale))
            .collect(),
    )
}

/// Dense matrix of `Rational`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kernel/image decomposition of a matrix, see [`RationalMatrix::kernel_image`].
pub struct KernelImage {
    /// Rows form a basis of the right kernel (length = `cols` of the input).
    pub kernel: RationalMatrix,
    /// Rows form a canonical basis of the column space (length = `rows`).
    pub image: RationalMatrix,
    pub rank: usize,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RationalMatrix { rows: r, cols: c, data }
    }

    /// Matrix with no rows (used for empty bases of a given ambient dim).
    pub fn empty(cols: usize) -> Self {
        Self::zero(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form with zero rows trimmed; also returns the
    /// pivot columns. This is the canonical form used for span comparison.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..m.cols {
            // find a nonzero entry at or below pr in column pc
            let Some(sel) = (pr..m.rows).find(|&r| !m.get(r, pc).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, sel);
            let inv = m.get(pr, pc).recip();
            for c in pc..m.cols {
                let v = m.get(pr, c) * &inv;
                m.set(pr, c, v);
            }
            for r in 0..m.rows {
                if r != pr && !m.get(r, pc).is_zero() {
                    let factor = m.get(r, pc).clone();
                    for c in pc..m.cols {
                        let v = m.get(r, c) - &factor * m.get(pr, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == m.rows {
                break;
            }
        }
        m.data.truncate(pr * m.cols);
        m.rows = pr;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact kernel basis, canonical image basis, and rank.
    /// Rank + nullity = `cols` holds by construction.
    pub fn kernel_image(&self) -> KernelImage {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = RationalMatrix::empty(self.cols);
        for &f in &free {
            let mut v = zero_vec(self.cols);
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            kernel.push_row(v);
        }
        let (image, _) = self.transpose().rref();
        KernelImage { kernel, image, rank }
    }

    /// One solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RationalMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = zero_vec(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// True iff `v` lies in the row span.
    pub fn row_span_contains(&self, v: &[Rational]) -> bool {
        self.transpose().solve(v).is_some()
    }
}
