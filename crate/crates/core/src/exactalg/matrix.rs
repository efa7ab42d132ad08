//! Dense matrices over `Rational` and `Scalar`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::scalar::{Field, Scalar};

/// Minimal ring interface shared by the two entry types.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    /// Zero when no entry is at hand to copy the field from.
    fn zero() -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
}

impl Entry for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn zero_like(&self) -> Self {
        Rational::ZERO
    }
    fn one_like(&self) -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero(Field::Real)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field)
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of rational numbers, used for realified linear maps.
pub type QMatrix = Matrix<Rational>;
/// Matrix with entries in ℚ, ℚ(i) or ℍ_ℚ.
pub type ExactMatrix = Matrix<Scalar>;

impl<T: Entry> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Entry>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(Entry::conj)
    }

    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn try_mul(&self, o: &Self) -> Option<Self> {
        if self.cols != o.rows {
            return None;
        }
        let zero = self.data.first().or(o.data.first()).map_or_else(T::zero, Entry::zero_like);
        let mut out = Matrix::filled(self.rows, o.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Some(out)
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.shape(), o.shape(), "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.mul(x))
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        Matrix::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = self.data.first().map(|x| x.zero_like()).expect("trace of empty matrix");
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Rational::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Rational::ONE } else { Rational::ZERO })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::int(x)).collect()).collect())
    }

    /// Diagonal matrix.
    pub fn diag(d: &[Rational]) -> Self {
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { Rational::ZERO })
    }

    /// Columns given as vectors.
    pub fn from_cols(nrows: usize, cols: &[Vec<Rational>]) -> Self {
        Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Embeds into `Scalar` entries of the given field.
    pub fn to_exact(&self, field: Field) -> ExactMatrix {
        self.map(|x| Scalar::real(field, x.clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl ExactMatrix {
    pub fn zeros_in(field: Field, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, Scalar::zero(field))
    }

    pub fn identity_in(field: Field, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one(field) } else { Scalar::zero(field) })
    }

    /// `E_ij` scaled by `s`.
    pub fn unit_in(field: Field, rows: usize, cols: usize, i: usize, j: usize, s: Scalar) -> Self {
        let mut m = Self::zeros_in(field, rows, cols);
        m.set(i, j, s.with_field(field));
        m
    }

    pub fn from_ints_in(field: Field, rows: &[&[i64]]) -> Self {
        QMatrix::from_ints(rows).to_exact(field)
    }

    /// Largest field among the entries' tags.
    pub fn field(&self) -> Field {
        self.data.iter().map(|s| s.field).max().unwrap_or(Field::Real)
    }

    /// Re-tags all entries with `field`.
    pub fn in_field(&self, field: Field) -> Self {
        self.map(|s| s.clone().with_field(field))
    }

    pub fn scale_q(&self, r: &Rational) -> Self {
        self.map(|s| s.scale(r))
    }

    /// Right multiplication of every entry by a scalar.
    pub fn mul_scalar_right(&self, s: &Scalar) -> Self {
        self.map(|x| x * s)
    }

    pub fn mul_scalar_left(&self, s: &Scalar) -> Self {
        self.map(|x| s * x)
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl<'a, T: Entry> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        self.try_mul(o).unwrap_or_else(|| panic!("shape mismatch {:?} * {:?}", self.shape(), o.shape()))
    }
}

impl<'a, T: Entry> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        self.zip(o, T::add)
    }
}

impl<'a, T: Entry> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        self.zip(o, T::sub)
    }
}

impl<T: Entry> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(T::neg)
    }
}

impl<T: Entry> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: Matrix<T>) -> Matrix<T> {
        &self * &o
    }
}

impl<T: Entry> Add for Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: Matrix<T>) -> Matrix<T> {
        &self + &o
    }
}

impl<T: Entry> Sub for Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: Matrix<T>) -> Matrix<T> {
        &self - &o
    }
}
