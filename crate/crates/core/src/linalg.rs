//! Exact rational vectors and matrices.
//!
//! Everything downstream (lattices, semigroups, counting, number fields)
//! runs on this substrate: entries are `BigRational`s kept in lowest terms
//! with positive denominators, so equality is structural and every
//! operation is bit-exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: plain decimal for integers, "p/q" otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde helpers keeping big integers and rationals as decimal strings in
/// report JSON, matching the matrix entry encoding.
pub mod serde_text {
    use super::*;

    pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn rational<S: Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(v))
    }

    pub fn rationals<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_rat(x))?;
        }
        seq.end()
    }

    pub fn optional_rational<S: Serializer>(
        v: &Option<Rat>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&format_rat(x)),
            None => s.serialize_none(),
        }
    }
}

/// Parse "p/q" or a plain decimal integer.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::InvalidInput(format!("bad rational entry {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

/// A dense vector of exact rationals, dim >= 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    entries: Vec<Rat>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        assert!(!entries.is_empty(), "vector dimension must be >= 1");
        Self { entries }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&n| rat(n)).collect())
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self::new(v.iter().map(|n| Rat::from_integer(n.clone())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn at(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    /// All coordinates >= 0.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// All coordinates > 0.
    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// Exact integer entries, if all denominators are 1.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.denom().is_one().then(|| e.numer().clone()))
            .collect()
    }

    /// Sup-norm `max_i |v_i|`.
    pub fn sup_norm(&self) -> Rat {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .expect("nonempty")
    }

    /// Squared Euclidean norm, exact.
    pub fn norm_sq(&self) -> Rat {
        self.entries.iter().map(|e| e * e).sum()
    }

    pub fn dot(&self, other: &Self) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.entries.iter().map(|e| e * c).collect())
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(e))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(&format_rat(e))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(de::Error::custom("vector dimension must be >= 1"));
        }
        let entries = raw
            .iter()
            .map(|s| parse_rational(s).map_err(|e| de::Error::custom(e.to_string())))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { entries })
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A dense rows x cols matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(cols > 0, "matrix must have at least one column");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
    }

    /// Build from column vectors.
    pub fn from_columns(cols: &[RationalVector]) -> Self {
        assert!(!cols.is_empty());
        let rows = cols[0].dim();
        assert!(cols.iter().all(|c| c.dim() == rows));
        let mut entries = Vec::with_capacity(rows * cols.len());
        for i in 0..rows {
            for c in cols {
                entries.push(c.at(i).clone());
            }
        }
        Self {
            rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d, d);
        for i in 0..d {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<RationalVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j) * v.at(j)).sum())
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// True when every entry has denominator 1.
    pub fn is_integer(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    /// Integer entries, row-major, if the matrix is integral.
    pub fn to_integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.denom().is_one().then(|| e.numer().clone()))
            .collect()
    }

    /// Sup-norm over all entries (the matrix viewed as a vector).
    pub fn sup_norm(&self) -> Rat {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .expect("nonempty")
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination: rows are
    /// scaled to integers, the integer determinant is divided back out.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let d = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(self.at(i, j).denom()));
            let row = (0..n)
                .map(|j| {
                    let e = self.at(i, j);
                    e.numer() * (&d / e.denom())
                })
                .collect();
            scale *= Rat::from_integer(d);
            m.push(row);
        }
        Ok(Rat::from_integer(bareiss_det(&mut m)) / scale)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| !a.at(i, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let (lo, hi) = (col.min(pivot), col.max(pivot));
                    a.entries.swap(lo * n + j, hi * n + j);
                    inv.entries.swap(lo * n + j, hi * n + j);
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                *a.at_mut(col, j) /= &p;
                *inv.at_mut(col, j) /= &p;
            }
            for i in 0..n {
                if i == col || a.at(i, col).is_zero() {
                    continue;
                }
                let f = a.at(i, col).clone();
                for j in 0..n {
                    let t = a.at(col, j) * &f;
                    *a.at_mut(i, j) -= t;
                    let t = inv.at(col, j) * &f;
                    *inv.at_mut(i, j) -= t;
                }
            }
        }
        Ok(inv)
    }

    /// Column-style Hermite normal form of an integer matrix with full row
    /// rank: returns `(H, U)` with `self * U = H`, `U` unimodular, `H` lower
    /// triangular with positive pivots and entries left of each pivot reduced
    /// to `[0, pivot)`. The form is canonical, so two integer bases span the
    /// same lattice iff their HNFs coincide.
    pub fn hnf(&self) -> Result<(Self, Self)> {
        let ints = self.to_integer_entries().ok_or(Error::NonInteger)?;
        if self.rows > self.cols {
            return Err(Error::RankDeficient);
        }
        let (m, n) = (self.rows, self.cols);
        let mut h: Vec<BigInt> = ints;
        let mut u: Vec<BigInt> = vec![BigInt::zero(); n * n];
        for j in 0..n {
            u[j * n + j] = BigInt::one();
        }
        let hat = |h: &Vec<BigInt>, i: usize, j: usize| h[i * n + j].clone();

        for row in 0..m {
            // Clear columns right of the pivot with exact Euclidean steps.
            loop {
                let mut nonzero: Vec<usize> =
                    (row..n).filter(|&j| !h[row * n + j].is_zero()).collect();
                if nonzero.is_empty() {
                    return Err(Error::RankDeficient);
                }
                if nonzero.len() == 1 {
                    let j = nonzero[0];
                    if j != row {
                        col_swap(&mut h, &mut u, m, n, row, j);
                    }
                    break;
                }
                nonzero.sort_by(|&a, &b| {
                    h[row * n + a]
                        .abs()
                        .cmp(&h[row * n + b].abs())
                        .then(a.cmp(&b))
                });
                let jmin = nonzero[0];
                let pivot = hat(&h, row, jmin);
                for &j in &nonzero[1..] {
                    let q = div_round_to_zero(&hat(&h, row, j), &pivot);
                    col_axpy(&mut h, &mut u, m, n, j, jmin, &-q);
                }
            }
            if h[row * n + row].is_negative() {
                col_negate(&mut h, &mut u, m, n, row);
            }
            // Reduce entries left of the pivot into [0, pivot).
            let pivot = hat(&h, row, row);
            for j in 0..row {
                let q = h[row * n + j].div_floor(&pivot);
                col_axpy(&mut h, &mut u, m, n, j, row, &-q);
            }
        }
        let wrap = |v: Vec<BigInt>, r: usize, c: usize| RationalMatrix {
            rows: r,
            cols: c,
            entries: v.into_iter().map(Rat::from_integer).collect(),
        };
        Ok((wrap(h, m, n), wrap(u, n, n)))
    }
}

fn col_swap(h: &mut [BigInt], u: &mut [BigInt], m: usize, n: usize, a: usize, b: usize) {
    for i in 0..m {
        h.swap(i * n + a, i * n + b);
    }
    for i in 0..n {
        u.swap(i * n + a, i * n + b);
    }
}

fn col_negate(h: &mut [BigInt], u: &mut [BigInt], m: usize, n: usize, j: usize) {
    for i in 0..m {
        let v = -h[i * n + j].clone();
        h[i * n + j] = v;
    }
    for i in 0..n {
        let v = -u[i * n + j].clone();
        u[i * n + j] = v;
    }
}

/// Column operation `col_j += q * col_k` applied to both H and U.
fn col_axpy(
    h: &mut [BigInt],
    u: &mut [BigInt],
    m: usize,
    n: usize,
    j: usize,
    k: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    for i in 0..m {
        let t = &h[i * n + k] * q;
        h[i * n + j] += t;
    }
    for i in 0..n {
        let t = &u[i * n + k] * q;
        u[i * n + j] += t;
    }
}

fn div_round_to_zero(a: &BigInt, b: &BigInt) -> BigInt {
    a / b
}

/// Bareiss fraction-free determinant of an integer matrix (consumed).
fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Sylvester's identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Greatest common divisor of the absolute values; 0 only for the zero vector.
pub fn gcd_vector(v: &RationalVector) -> Result<BigInt> {
    let ints = v.to_integers().ok_or(Error::NonInteger)?;
    Ok(ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)))
}

/// Extend a primitive integer vector to a unimodular matrix having it as the
/// first column. Uses the HNF of the coefficient row: `a * U = (1 0 ... 0)`
/// implies the transposed inverse of `U` sends `e_1` to `a`.
pub fn extend_primitive(a: &RationalVector) -> Result<RationalMatrix> {
    let g = gcd_vector(a)?;
    if !g.is_one() {
        return Err(Error::NotPrimitive { gcd: g.to_string() });
    }
    let row = RationalMatrix::from_rows(vec![a.entries().to_vec()]);
    let (_h, u) = row.hnf()?;
    let a_mat = u.invert()?.transpose();
    debug_assert!(a_mat.is_integer());
    debug_assert_eq!(a_mat.column(0), *a);
    Ok(a_mat)
}

// ---------------------------------------------------------------------------
// JSON form: {"rows":d,"cols":d,"entries":[["p/q",...],...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| format_rat(self.at(i, j))).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.rows == 0 || raw.cols == 0 {
            return Err(de::Error::custom("matrix dimensions must be positive"));
        }
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(de::Error::custom("entry grid does not match rows x cols"));
        }
        let mut entries = Vec::with_capacity(raw.rows * raw.cols);
        for row in &raw.entries {
            for s in row {
                entries.push(parse_rational(s).map_err(|e| de::Error::custom(e.to_string()))?);
            }
        }
        Ok(Self {
            rows: raw.rows,
            cols: raw.cols,
            entries,
        })
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rat(self.at(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small_cases() {
        let m = RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]]);
        assert_eq!(m.det().unwrap(), rat(1));
        assert_eq!(RationalMatrix::identity(4).det().unwrap(), rat(1));
        let m = RationalMatrix::from_int_rows(&[&[2, 0], &[0, 4]]);
        assert_eq!(m.det().unwrap(), rat(8));
    }

    #[test]
    fn det_rational_entries() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 5), ratio(1, 7)],
        ]);
        assert_eq!(m.det().unwrap(), ratio(1, 14) - ratio(1, 15));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RationalMatrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(m.det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn invert_known_values() {
        let m = RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]]);
        let inv = m.invert().unwrap();
        assert_eq!(inv, RationalMatrix::from_int_rows(&[&[2, -1], &[-1, 1]]));
        assert!(RationalMatrix::identity(3).invert().unwrap().is_identity());

        let m = RationalMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.invert().unwrap();
        assert_eq!(inv, RationalMatrix::from_int_rows(&[&[1, -1], &[-1, 2]]));
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn invert_singular_errors() {
        let m = RationalMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.invert(), Err(Error::Singular)));
    }

    #[test]
    fn hnf_basic() {
        let m = RationalMatrix::from_int_rows(&[&[1, 1], &[1, 2]]);
        let (h, u) = m.hnf().unwrap();
        assert_eq!(m.mul(&u), h);
        assert_eq!(u.det().unwrap().abs(), rat(1));
        // Unimodular input: the canonical column HNF is the identity.
        assert!(h.is_identity());

        let (h, u) = RationalMatrix::identity(3).hnf().unwrap();
        assert!(h.is_identity());
        assert!(u.is_identity());

        let m = RationalMatrix::from_int_rows(&[&[2, 4], &[0, 2]]);
        let (h, u) = m.hnf().unwrap();
        assert_eq!(m.mul(&u), h);
        assert_eq!(h.det().unwrap().abs(), rat(4));
    }

    #[test]
    fn hnf_shape_and_reduction() {
        let m = RationalMatrix::from_int_rows(&[&[4, 6, 1], &[0, 4, 0], &[0, 0, 5]]);
        let (h, u) = m.hnf().unwrap();
        assert_eq!(m.mul(&u), h);
        assert_eq!(u.det().unwrap().abs(), rat(1));
        for i in 0..3 {
            assert!(h.at(i, i).is_positive());
            for j in i + 1..3 {
                assert!(h.at(i, j).is_zero(), "upper part must vanish");
            }
            for j in 0..i {
                assert!(!h.at(i, j).is_negative() && h.at(i, j) < h.at(i, i));
            }
        }
    }

    #[test]
    fn hnf_rank_deficient_errors() {
        let m = RationalMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(m.hnf(), Err(Error::RankDeficient)));
    }

    #[test]
    fn gcd_vector_cases() {
        assert_eq!(
            gcd_vector(&RationalVector::from_ints(&[4, 6])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            gcd_vector(&RationalVector::from_ints(&[0, 0])).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            gcd_vector(&RationalVector::from_ints(&[6, 10, 15])).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn extend_primitive_cases() {
        let e1 = RationalVector::from_ints(&[1, 0, 0]);
        assert!(extend_primitive(&e1).unwrap().is_identity());

        for v in [vec![2, 3], vec![6, 10, 15], vec![-3, 5, 7, 2]] {
            let a = RationalVector::from_ints(&v);
            let m = extend_primitive(&a).unwrap();
            assert_eq!(m.column(0), a);
            assert_eq!(m.det().unwrap().abs(), rat(1));
            assert!(m.is_integer());
        }

        let bad = RationalVector::from_ints(&[2, 4]);
        assert!(matches!(
            extend_primitive(&bad),
            Err(Error::NotPrimitive { .. })
        ));
        let zero = RationalVector::from_ints(&[0, 0]);
        assert!(extend_primitive(&zero).is_err());
    }

    #[test]
    fn json_round_trip_and_format() {
        let m =
            RationalMatrix::from_rows(vec![vec![rat(1), ratio(-3, 7)], vec![ratio(1, 2), rat(5)]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[["1","-3/7"],["1/2","5"]]}"#
        );
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);

        let v = RationalVector::new(vec![ratio(2, 4), rat(-3)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        let back: RationalVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(serde_json::from_str::<RationalMatrix>(
            r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<RationalMatrix>(
            r#"{"rows":1,"cols":1,"entries":[["1/0"]]}"#
        )
        .is_err());
    }
}
