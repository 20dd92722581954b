//! Exact scalar arithmetic and dense matrix kernels over GF(p) and ℚ.
//!
//! All instances in this crate are tiny, so matrices are dense row-major
//! and every algorithm is the obvious one with deterministic pivoting
//! (first nonzero entry in column order).

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// An exact coefficient field: a prime field GF(p) with p < 2^31, or ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Fp(u64),
    Q,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "GF({p})"),
            Field::Q => write!(f, "Q"),
        }
    }
}

impl Field {
    /// The prime field GF(p). Fails unless `p` is prime and below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }

    pub fn rationals() -> Field {
        Field::Q
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(0),
            Field::Q => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Fp(_) => Scalar::Fp(1),
            Field::Q => Scalar::Q(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Fp(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Field::Q, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            // p < 2^31, so the product fits in u64.
            (Field::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % p),
            (Field::Q, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Fp(p), Scalar::Fp(x)) => Ok(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            (Field::Q, Scalar::Q(x)) => Ok(Scalar::Q(x.recip())),
            _ => panic!("scalar/field kind mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A scalar of one of the supported fields. GF(p) values are stored reduced
/// to `0..p`; rationals are always reduced with positive denominator
/// (`BigRational` maintains that form).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(x) => x.is_zero(),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

/// Dense row-major matrix over a fixed field. 0×n and n×0 matrices are legal
/// and represent zero maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    /// Exact matrix product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let cur = f.add(out.get(i, j), &t);
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("add: shape mismatch".into()));
        }
        let f = self.field;
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| f.mul(c, a)).collect(),
        }
    }

    /// Horizontal concatenation `[A | B | ...]`.
    pub fn hstack(field: Field, parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        let mut cols = 0;
        for m in parts {
            if m.field != field {
                return Err(Error::FieldMismatch(field.to_string(), m.field.to_string()));
            }
            if m.rows != rows {
                return Err(Error::DimensionMismatch("hstack: row mismatch".into()));
            }
            cols += m.cols;
        }
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(field: Field, parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut rows = 0;
        for m in parts {
            if m.field != field {
                return Err(Error::FieldMismatch(field.to_string(), m.field.to_string()));
            }
            if m.cols != cols {
                return Err(Error::DimensionMismatch("vstack: col mismatch".into()));
            }
            rows += m.rows;
        }
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        Ok(out)
    }

    /// Block-diagonal sum of the given matrices.
    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Block from a 2D layout; `None` blocks are zero of the inferred shape.
    pub fn from_blocks(field: Field, layout: &[Vec<Option<&Matrix>>], row_dims: &[usize], col_dims: &[usize]) -> Matrix {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut ro = 0;
        for (bi, block_row) in layout.iter().enumerate() {
            let mut co = 0;
            for (bj, block) in block_row.iter().enumerate() {
                if let Some(m) = block {
                    assert_eq!(m.rows, row_dims[bi], "block row dim");
                    assert_eq!(m.cols, col_dims[bj], "block col dim");
                    for i in 0..m.rows {
                        for j in 0..m.cols {
                            out.set(ro + i, co + j, m.get(i, j).clone());
                        }
                    }
                }
                co += col_dims[bj];
            }
            ro += row_dims[bi];
        }
        out
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.field, row_range.len(), col_range.len());
        for (i2, i) in row_range.clone().enumerate() {
            for (j2, j) in col_range.clone().enumerate() {
                out.set(i2, j2, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0..self.rows, j..j + 1)
    }

    /// Row-reduce to reduced row echelon form. Deterministic: the pivot for
    /// each column is the first row (top to bottom) with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot nonzero");
            for j in 0..m.cols {
                let v = f.mul(&inv, m.get(row, j));
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let c = m.get(r, col).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(r, j), &f.mul(&c, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { mat: m, pivots }
    }

    /// Rank via exact row reduction.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns of the result form a deterministic basis of the kernel.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let rr = self.rref();
        let pivots = &rr.pivots;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let coef = rr.mat.get(prow, fc);
                if !coef.is_zero() {
                    out.set(pc, k, f.neg(coef));
                }
            }
        }
        out
    }

    /// Solve `self · x = rhs` for each column of `rhs`; `None` if inconsistent.
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("solve: row mismatch".into()));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, &[self, rhs])?;
        let rr = aug.rref();
        // Any pivot in the rhs part witnesses inconsistency.
        if rr.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut out = Matrix::zero(f, self.cols, rhs.cols);
        for (prow, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out.set(pc, j, rr.mat.get(prow, self.cols + j).clone());
            }
        }
        Ok(Some(out))
    }

    /// Exact inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let f = self.field;
        let aug = Matrix::hstack(f, &[self, &Matrix::identity(f, self.rows)]).expect("shapes agree");
        let rr = aug.rref();
        if rr.pivots.len() != self.rows || rr.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(rr.mat.submatrix(0..self.rows, self.cols..2 * self.cols))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

/// Coordinates on the quotient `ambient / span(sub)` where `ambient` columns
/// span the ambient space implicitly (standard basis of dimension `dim`).
///
/// Returns a pair `(proj, basis_cols)`: `proj` is an h×dim matrix sending a
/// vector to its coordinates in the chosen quotient basis, and `basis_cols`
/// are the indices of the standard basis vectors chosen to represent the
/// quotient (h = dim − rank(sub)).
pub fn quotient_projection(field: Field, dim: usize, sub: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    assert_eq!(sub.rows(), dim, "subspace columns must live in the ambient space");
    // Greedily extend the column space of `sub` by standard basis vectors.
    let mut chosen = Vec::new();
    let mut cur = sub.clone();
    let mut rank = cur.rank();
    for j in 0..dim {
        let e = {
            let mut m = Matrix::zero(field, dim, 1);
            m.set(j, 0, field.one());
            m
        };
        let ext = Matrix::hstack(field, &[&cur, &e])?;
        let r2 = ext.rank();
        if r2 > rank {
            chosen.push(j);
            cur = ext;
            rank = r2;
        }
    }
    let h = chosen.len();
    // Solve [sub | E] x = e_j for each j; the E-part gives the projection.
    let mut e_cols = Matrix::zero(field, dim, h);
    for (k, &j) in chosen.iter().enumerate() {
        e_cols.set(j, k, field.one());
    }
    let basis = Matrix::hstack(field, &[sub, &e_cols])?;
    let idm = Matrix::identity(field, dim);
    let sol = basis
        .solve(&idm)?
        .ok_or_else(|| Error::Invalid("quotient basis does not span".into()))?;
    let proj = sol.submatrix(sub.cols()..sub.cols() + h, 0..dim);
    Ok((proj, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(2147483647).is_ok()); // 2^31 - 1
        assert!(Field::prime(2147483659).is_err()); // prime but too large
    }

    #[test]
    fn matmul_identity() {
        let f = gf5();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4], &[0, 1]]);
        let id = Matrix::identity(f, 3);
        assert_eq!(id.mul(&m).unwrap(), m);
    }

    #[test]
    fn matmul_degenerate_zero_rows() {
        let f = gf5();
        let a = Matrix::zero(f, 0, 3);
        let b = Matrix::from_i64(f, &[&[1], &[2], &[3]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.rows(), 0);
        assert_eq!(c.cols(), 1);
    }

    #[test]
    fn matmul_gf5_example() {
        let f = gf5();
        let a = Matrix::from_i64(f, &[&[2, 3], &[1, 4]]);
        let b = Matrix::from_i64(f, &[&[1], &[2]]);
        let c = a.mul(&b).unwrap();
        assert_eq!(c, Matrix::from_i64(f, &[&[3], &[4]]));
    }

    #[test]
    fn matmul_shape_and_field_errors() {
        let f = gf5();
        let a = Matrix::zero(f, 2, 3);
        let b = Matrix::zero(f, 2, 2);
        assert!(a.mul(&b).is_err());
        let c = Matrix::zero(Field::Q, 3, 1);
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn rank_examples() {
        let f = gf5();
        assert_eq!(Matrix::zero(f, 3, 4).rank(), 0);
        assert_eq!(Matrix::identity(f, 4).rank(), 4);
        // row 2 = 2 * row 1 mod 5
        let m = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf5();
        let inv = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        assert_eq!(inv.kernel_basis().cols(), 0);

        let z = Matrix::zero(f, 2, 3);
        let k = z.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);

        let q = Field::Q;
        let m = Matrix::from_i64(q, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        // (-1, 1) up to scaling
        let ratio = q.div(k.get(0, 0), k.get(1, 0)).unwrap();
        assert_eq!(ratio, q.from_i64(-1));
    }

    #[test]
    fn rank_nullity() {
        use rand::{Rng, SeedableRng};
        let f = gf5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(0..6);
            let c = rng.gen_range(0..6);
            let m = Matrix::from_fn(f, r, c, |_, _| f.from_i64(rng.gen_range(0..5)));
            assert_eq!(m.rank() + m.kernel_basis().cols(), c);
            assert!(m.mul(&m.kernel_basis()).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_invariant_under_invertible_factors() {
        use rand::{Rng, SeedableRng};
        let f = gf5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let m = Matrix::from_fn(f, r, c, |_, _| f.from_i64(rng.gen_range(0..5)));
            let p = loop {
                let cand = Matrix::from_fn(f, r, r, |_, _| f.from_i64(rng.gen_range(0..5)));
                if cand.inverse().is_some() {
                    break cand;
                }
            };
            let q = loop {
                let cand = Matrix::from_fn(f, c, c, |_, _| f.from_i64(rng.gen_range(0..5)));
                if cand.inverse().is_some() {
                    break cand;
                }
            };
            let conj = p.mul(&m).unwrap().mul(&q).unwrap();
            assert_eq!(conj.rank(), m.rank());
        }
    }

    #[test]
    fn rationals_exceed_64_bits() {
        let q = Field::Q;
        // Hilbert-style matrix entries force large intermediate numerators.
        let n = 6;
        let m = Matrix::from_fn(q, n, n, |i, j| Scalar::rational(1, (i + j + 1) as i64));
        assert_eq!(m.rank(), n);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, n));
        // A 3^50-scale entry survives exactly.
        let mut big = Matrix::identity(q, 1);
        let three = q.from_i64(3);
        for _ in 0..50 {
            big = big.scale(&three);
        }
        let small = big.clone().inverse().unwrap();
        assert_eq!(big.mul(&small).unwrap(), Matrix::identity(q, 1));
    }

    #[test]
    fn solve_and_quotient() {
        let f = gf5();
        let a = Matrix::from_i64(f, &[&[1, 0], &[0, 0]]);
        let rhs = Matrix::from_i64(f, &[&[2], &[0]]);
        let x = a.solve(&rhs).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), rhs);
        let bad = Matrix::from_i64(f, &[&[0], &[1]]);
        assert!(a.solve(&bad).unwrap().is_none());

        let sub = Matrix::from_i64(f, &[&[1], &[0], &[0]]);
        let (proj, basis) = quotient_projection(f, 3, &sub).unwrap();
        assert_eq!(basis, vec![1, 2]);
        assert!(proj.mul(&sub).unwrap().is_zero());
        assert_eq!(proj.rank(), 2);
    }
}
