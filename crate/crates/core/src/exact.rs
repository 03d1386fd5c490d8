//! Exact rational scalars, vectors and matrices.
//!
//! Scalars are [`num_rational::BigRational`], which is always kept in lowest
//! terms with a positive denominator. On top of that this module provides the
//! dense vector/matrix newtypes used everywhere else, fraction-free Gaussian
//! elimination, and the binary encoding-size measure.

use std::fmt;
use std::ops::{Deref, Index};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn from_int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q` or `p`, with an optional leading `-` (ASCII or U+2212).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (negative, body) = if let Some(rest) = text.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = text.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, text)
    };
    let digits = |s: &str| -> Result<Integer, ParseRationalError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Invalid(text.to_string()));
        }
        Integer::from_str(s).map_err(|_| ParseRationalError::Invalid(text.to_string()))
    };
    let value = match body.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (digits(p)?, digits(q)?);
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            Rational::new(p, q)
        }
        None => from_int(digits(body)?),
    };
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

/// Largest integer `s` with `s <= sqrt(x)`, for `x >= 0`.
pub fn floor_sqrt(x: &Rational) -> Integer {
    assert!(!x.is_negative(), "square root of a negative rational");
    // floor(sqrt(p/q)) = floor(sqrt(p*q) / q) = floor(isqrt(p*q) / q)
    let pq = x.numer() * x.denom();
    pq.sqrt().div_floor(x.denom())
}

/// Smallest integer satisfying a monotone predicate, searched outward from `hint`.
///
/// `pred` must be monotone: once true it stays true for larger arguments.
/// `hint` may be any integer; the search widens in both directions as needed.
pub(crate) fn smallest_integer_satisfying(hint: Integer, pred: impl Fn(&Integer) -> bool) -> Integer {
    let mut step = Integer::one();
    let (mut lo, mut hi);
    if pred(&hint) {
        hi = hint.clone();
        lo = &hint - &step;
        while pred(&lo) {
            hi = lo.clone();
            step <<= 1;
            lo = &hi - &step;
        }
    } else {
        lo = hint.clone();
        hi = &hint + &step;
        while !pred(&hi) {
            lo = hi.clone();
            step <<= 1;
            hi = &lo + &step;
        }
    }
    // invariant: !pred(lo), pred(hi)
    while &hi - &lo > Integer::one() {
        let mid: Integer = (&lo + &hi) >> 1;
        if pred(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `ceil((alpha + sqrt(disc)) / beta)` computed exactly, for `beta > 0`, `disc >= 0`.
pub fn ceil_sqrt_quotient(alpha: &Rational, disc: &Rational, beta: &Rational) -> Integer {
    assert!(beta.is_positive(), "beta must be positive");
    assert!(!disc.is_negative(), "negative discriminant");
    let s = from_int(floor_sqrt(disc));
    let hint = ceil(&((alpha + s) / beta));
    // L works iff beta*L - alpha >= sqrt(disc)
    smallest_integer_satisfying(hint, |l| {
        let lhs = beta * from_int(l.clone()) - alpha;
        !lhs.is_negative() && &lhs * &lhs >= *disc
    })
}

/// Bit size under the measure `1 + ceil(log2(|p|+1)) + ceil(log2(q+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EncodingSize(pub u64);

impl EncodingSize {
    pub fn bits(self) -> u64 {
        self.0
    }
}

impl std::ops::Add for EncodingSize {
    type Output = EncodingSize;
    fn add(self, rhs: EncodingSize) -> EncodingSize {
        EncodingSize(self.0 + rhs.0)
    }
}

impl std::iter::Sum for EncodingSize {
    fn sum<I: Iterator<Item = EncodingSize>>(iter: I) -> Self {
        iter.fold(EncodingSize(0), |a, b| a + b)
    }
}

impl fmt::Display for EncodingSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `ceil(log2(k))` for `k >= 1`.
fn ceil_log2(k: &Integer) -> u64 {
    debug_assert!(k.sign() == Sign::Plus);
    if k.is_one() {
        0
    } else {
        (k - 1u32).bits()
    }
}

fn natural_size(k: usize) -> EncodingSize {
    EncodingSize(1 + ceil_log2(&Integer::from(k + 1)))
}

pub trait Encoded {
    fn encoding_size(&self) -> EncodingSize;
}

impl Encoded for Rational {
    fn encoding_size(&self) -> EncodingSize {
        let p = self.numer().abs() + 1u32;
        let q = self.denom() + 1u32;
        EncodingSize(1 + ceil_log2(&p) + ceil_log2(&q))
    }
}

impl Encoded for Integer {
    fn encoding_size(&self) -> EncodingSize {
        from_int(self.clone()).encoding_size()
    }
}

/// A dense rational vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_i64(values: &[i64]) -> Self {
        QVector(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_integers(values: &[Integer]) -> Self {
        QVector(values.iter().cloned().map(from_int).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.0[i] = value;
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rational, other: &QVector) -> QVector {
        debug_assert_eq!(self.dim(), other.dim());
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    pub fn squared_norm(&self) -> Rational {
        self.dot(self)
    }

    pub fn max_abs(&self) -> Rational {
        self.0.iter().map(|a| a.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// The positive scaling with integral, coprime entries. Zero stays zero.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(Integer::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<Integer> = self
            .0
            .iter()
            .map(|a| (a * from_int(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(Integer::zero(), |acc, a| acc.gcd(a));
        QVector(ints.into_iter().map(|a| from_int(a / &gcd)).collect())
    }

    /// Integer entries, assuming the vector is integral.
    pub fn to_integers(&self) -> Option<Vec<Integer>> {
        self.0
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }

    pub fn concat(&self, other: &QVector) -> QVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        QVector(v)
    }

    pub fn head(&self, k: usize) -> QVector {
        QVector(self.0[..k].to_vec())
    }

    pub fn tail(&self, k: usize) -> QVector {
        QVector(self.0[k..].to_vec())
    }
}

impl Deref for QVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(v: Vec<Rational>) -> Self {
        QVector(v)
    }
}

impl FromIterator<Rational> for QVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Encoded for QVector {
    fn encoding_size(&self) -> EncodingSize {
        natural_size(self.dim()) + self.0.iter().map(Encoded::encoding_size).sum()
    }
}

/// A dense row-major rational matrix. Zero rows are allowed (an empty system).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<QVector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.dim(),
                });
            }
            data.extend(row.into_entries());
        }
        Ok(QMatrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| QVector::from_i64(r)).collect();
        Self::from_rows(cols, rows).expect("ragged matrix literal")
    }

    pub fn from_columns(rows: usize, columns: &[QVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), rows);
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> QVector {
        QVector(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row_vector(i)).collect()
    }

    pub fn row_dot(&self, i: usize, x: &[Rational]) -> Rational {
        self.row(i)
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn mul_vec(&self, x: &QVector) -> Result<QVector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.dim(),
            });
        }
        Ok((0..self.rows).map(|i| self.row_dot(i, x)).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// First asymmetric pair `(i, j)` with `i < j`, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    /// `x^T M y`
    pub fn bilinear(&self, x: &QVector, y: &QVector) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            acc += &x[i] * self.row_dot(i, y);
        }
        acc
    }

    pub fn select_rows(&self, indices: &[usize]) -> QMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        QMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn push_row(&mut self, row: QVector) {
        assert_eq!(row.dim(), self.cols);
        self.data.extend(row.into_entries());
        self.rows += 1;
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl Encoded for QMatrix {
    fn encoding_size(&self) -> EncodingSize {
        natural_size(self.rows)
            + natural_size(self.cols)
            + self.data.iter().map(Encoded::encoding_size).sum()
    }
}

/// Outcome of [`solve_linear_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(QVector),
    Affine {
        particular: QVector,
        nullspace: Vec<QVector>,
    },
    Infeasible,
}

/// Scales each row to integers (row-wise lcm of denominators).
fn integer_rows(m: &QMatrix, rhs: Option<&QVector>) -> Vec<Vec<Integer>> {
    (0..m.rows())
        .map(|i| {
            let extra = rhs.map(|r| &r[i]);
            let lcm = m
                .row(i)
                .iter()
                .chain(extra)
                .fold(Integer::one(), |acc, a| acc.lcm(a.denom()));
            let lcm = from_int(lcm);
            m.row(i)
                .iter()
                .chain(extra)
                .map(|a| (a * &lcm).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination over the first `elim_cols`
/// columns. Pivot: first nonzero entry in the current column. Returns the
/// pivot columns; rows `0..pivots.len()` hold the echelon form.
fn bareiss(a: &mut [Vec<Integer>], elim_cols: usize) -> Vec<usize> {
    let m = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = Integer::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..elim_cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..width {
                let num = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                row[j] = num / &prev;
            }
            row[col] = Integer::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solves the echelon system with the free variables set as given.
fn back_substitute(
    echelon: &[Vec<Integer>],
    pivots: &[usize],
    n: usize,
    rhs_col: Option<usize>,
    free_values: &[(usize, Rational)],
) -> QVector {
    let mut x = QVector::zeros(n);
    for (j, v) in free_values {
        x.0[*j] = v.clone();
    }
    for (r, &pc) in pivots.iter().enumerate().rev() {
        let row = &echelon[r];
        let mut acc = match rhs_col {
            Some(c) => from_int(row[c].clone()),
            None => Rational::zero(),
        };
        for j in pc + 1..n {
            if !row[j].is_zero() {
                acc -= from_int(row[j].clone()) * &x.0[j];
            }
        }
        x.0[pc] = acc / from_int(row[pc].clone());
    }
    x
}

/// Exact solution set of `m * x = rhs`.
pub fn solve_linear_system(m: &QMatrix, rhs: &QVector) -> Result<LinearSolution> {
    if m.rows() != rhs.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rhs.dim(),
        });
    }
    let n = m.cols();
    let mut a = integer_rows(m, Some(rhs));
    let pivots = bareiss(&mut a, n);
    let rank = pivots.len();
    if a[rank..].iter().any(|row| !row[n].is_zero()) {
        return Ok(LinearSolution::Infeasible);
    }
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let particular = back_substitute(&a, &pivots, n, Some(n), &[]);
    let check = m.mul_vec(&particular)?;
    assert_eq!(&check, rhs, "linear solve failed substitution check");
    if free.is_empty() {
        return Ok(LinearSolution::Unique(particular));
    }
    let nullspace: Vec<QVector> = free
        .iter()
        .map(|&f| {
            let values: Vec<(usize, Rational)> = free
                .iter()
                .map(|&g| (g, if g == f { Rational::one() } else { Rational::zero() }))
                .collect();
            let v = back_substitute(&a, &pivots, n, None, &values);
            assert!(
                m.mul_vec(&v).expect("dims").is_zero(),
                "nullspace vector failed substitution check"
            );
            v
        })
        .collect();
    Ok(LinearSolution::Affine {
        particular,
        nullspace,
    })
}

pub fn rank(m: &QMatrix) -> usize {
    let mut a = integer_rows(m, None);
    bareiss(&mut a, m.cols()).len()
}

/// Incrementally built row echelon basis, used by the subset enumerations.
///
/// Row `k` is reduced against rows `0..k`, so it vanishes on their pivot
/// columns. With `n` rows the system has a unique solution; with `n - 1`
/// rows it has a one-dimensional kernel.
#[derive(Debug, Clone, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(Vec<Rational>, Rational, usize)>,
}

impl EchelonBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; returns `false` (and leaves the basis
    /// untouched) when it is linearly dependent.
    pub fn push(&mut self, row: &[Rational], rhs: &Rational) -> bool {
        let mut r = row.to_vec();
        let mut b = rhs.clone();
        for (brow, bb, pc) in &self.rows {
            if r[*pc].is_zero() {
                continue;
            }
            let f = &r[*pc] / &brow[*pc];
            for (x, y) in r.iter_mut().zip(brow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            b -= &f * bb;
        }
        match r.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                self.rows.push((r, b, pc));
                true
            }
            None => false,
        }
    }

    fn substitute(&self, mut x: Vec<Rational>, homogeneous: bool) -> QVector {
        for (row, b, pc) in self.rows.iter().rev() {
            let mut acc = if homogeneous { Rational::zero() } else { b.clone() };
            for (j, a) in row.iter().enumerate() {
                if j != *pc && !a.is_zero() {
                    acc -= a * &x[j];
                }
            }
            x[*pc] = acc / &row[*pc];
        }
        QVector(x)
    }

    /// The unique solution, when the basis has full column rank.
    pub fn solution(&self, n: usize) -> QVector {
        debug_assert_eq!(self.rows.len(), n);
        self.substitute(vec![Rational::zero(); n], false)
    }

    /// `x0 + span(dirs)` is the solution set of the basis rows taken as
    /// equalities; `dirs` has one vector per free column.
    pub fn affine_parametrization(&self, n: usize) -> (QVector, Vec<QVector>) {
        let free: Vec<usize> = (0..n)
            .filter(|j| self.rows.iter().all(|(_, _, pc)| pc != j))
            .collect();
        let x0 = self.substitute(vec![Rational::zero(); n], false);
        let dirs = free
            .iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); n];
                x[f] = Rational::one();
                self.substitute(x, true)
            })
            .collect();
        (x0, dirs)
    }

    /// A spanning vector of the kernel, when the basis has rank `n - 1`.
    pub fn kernel_vector(&self, n: usize) -> QVector {
        debug_assert_eq!(self.rows.len() + 1, n);
        let free = (0..n)
            .find(|j| self.rows.iter().all(|(_, _, pc)| pc != j))
            .expect("one free column");
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        self.substitute(x, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_size_examples() {
        assert_eq!(rat(0).encoding_size(), EncodingSize(2));
        assert_eq!(frac(3, 2).encoding_size(), EncodingSize(5));
        assert_eq!(frac(-3, 2).encoding_size(), EncodingSize(5));
        // header for dimension 2 is 1 + ceil(log2 3) = 3
        assert_eq!(QVector::zeros(2).encoding_size(), EncodingSize(4 + 3));
    }

    #[test]
    fn ceil_log2_small() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)];
        for (k, e) in expect {
            assert_eq!(ceil_log2(&int(k)), e, "k = {k}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("\u{2212}7").unwrap(), rat(-7));
        assert_eq!(parse_rational(" 12 ").unwrap(), rat(12));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(5)), "5");
    }

    #[test]
    fn solve_identity() {
        let m = QMatrix::identity(2);
        let sol = solve_linear_system(&m, &QVector::from_i64(&[1, 2])).unwrap();
        assert_eq!(sol, LinearSolution::Unique(QVector::from_i64(&[1, 2])));
    }

    #[test]
    fn solve_underdetermined() {
        let m = QMatrix::from_i64(&[&[1, 1]]);
        let sol = solve_linear_system(&m, &QVector::from_i64(&[1])).unwrap();
        match sol {
            LinearSolution::Affine {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, QVector::from_i64(&[1, 0]));
                assert_eq!(nullspace, vec![QVector::from_i64(&[-1, 1])]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent() {
        let m = QMatrix::from_i64(&[&[1], &[1]]);
        let sol = solve_linear_system(&m, &QVector::from_i64(&[0, 1])).unwrap();
        assert_eq!(sol, LinearSolution::Infeasible);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = QMatrix::identity(2);
        assert!(matches!(
            solve_linear_system(&m, &QVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_empty_system() {
        let m = QMatrix::zeros(0, 2);
        match solve_linear_system(&m, &QVector::zeros(0)).unwrap() {
            LinearSolution::Affine { nullspace, .. } => assert_eq!(nullspace.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_rational_entries() {
        // (1/2)x + (1/3)y = 1, x - y = 1/6
        let m = QMatrix::from_rows(
            2,
            vec![
                QVector::new(vec![frac(1, 2), frac(1, 3)]),
                QVector::new(vec![rat(1), rat(-1)]),
            ],
        )
        .unwrap();
        let rhs = QVector::new(vec![rat(1), frac(1, 6)]);
        match solve_linear_system(&m, &rhs).unwrap() {
            LinearSolution::Unique(x) => assert_eq!(m.mul_vec(&x).unwrap(), rhs),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::zeros(2, 2).rank(), 0);
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(QMatrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn primitive_vectors() {
        let v = QVector::new(vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(v.primitive(), QVector::from_i64(&[1, 1]));
        let v = QVector::new(vec![frac(-2, 3), rat(0), frac(4, 9)]);
        assert_eq!(v.primitive(), QVector::from_i64(&[-3, 0, 2]));
    }

    #[test]
    fn exact_square_root_ceilings() {
        assert_eq!(floor_sqrt(&rat(8)), int(2));
        assert_eq!(floor_sqrt(&frac(9, 4)), int(1));
        assert_eq!(floor_sqrt(&frac(1, 100)), int(0));
        // ceil((0 + sqrt 8) / 2) = ceil(sqrt 2) = 2
        assert_eq!(ceil_sqrt_quotient(&rat(0), &rat(8), &rat(2)), int(2));
        // ceil((0 + sqrt 4) / 2) = 1
        assert_eq!(ceil_sqrt_quotient(&rat(0), &rat(4), &rat(2)), int(1));
        // tiny beta: ceil(sqrt(2) / (1/1000)) = 1415
        assert_eq!(ceil_sqrt_quotient(&rat(0), &rat(2), &frac(1, 1000)), int(1415));
        // negative result: ceil((-10 + 1) / 1) = -9
        assert_eq!(ceil_sqrt_quotient(&rat(-10), &rat(1), &rat(1)), int(-9));
    }

    #[test]
    fn echelon_basis_solves() {
        let mut basis = EchelonBasis::default();
        assert!(basis.push(&QVector::from_i64(&[1, 1]), &rat(2)));
        assert!(!basis.push(&QVector::from_i64(&[2, 2]), &rat(1)));
        assert_eq!(basis.kernel_vector(2), QVector::from_i64(&[-1, 1]));
        assert!(basis.push(&QVector::from_i64(&[1, -1]), &rat(0)));
        assert_eq!(basis.solution(2), QVector::from_i64(&[1, 1]));
    }
}
