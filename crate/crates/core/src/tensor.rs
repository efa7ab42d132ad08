//! Sparse structure constants of trilinear maps `A × B × C → D`.

use std::fmt;

use serde::Serialize;

use crate::exactalg::linalg::{axpy, is_zero_vec, zero_vec, Subspace, Vector};
use crate::exactalg::{QMatrix, Rational};
use crate::error::{Error, Result};

/// Output vector of one basis triple, as sorted `(index, value)` pairs.
pub type SparseVec = Vec<(usize, Rational)>;

fn sparsify(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn support(v: &[Rational]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

#[derive(Clone, PartialEq)]
pub struct TripleTensor {
    dims: [usize; 4],
    table: Vec<SparseVec>,
    by_middle: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for TripleTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TripleTensor({:?}, {} nonzero triples)", self.dims, self.nnz_triples())
    }
}

impl TripleTensor {
    /// Builds from a function returning dense output vectors.
    pub fn from_fn(dims: [usize; 4], mut f: impl FnMut(usize, usize, usize) -> Vector) -> Self {
        let [a, b, c, _] = dims;
        let mut table = Vec::with_capacity(a * b * c);
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let v = f(i, j, k);
                    debug_assert_eq!(v.len(), dims[3]);
                    table.push(sparsify(&v));
                }
            }
        }
        Self::from_table(dims, table)
    }

    fn from_table(dims: [usize; 4], table: Vec<SparseVec>) -> Self {
        let [a, b, c, _] = dims;
        let mut by_middle = vec![Vec::new(); b];
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    if !table[(i * b + j) * c + k].is_empty() {
                        by_middle[j].push((i, k));
                    }
                }
            }
        }
        TripleTensor { dims, table, by_middle }
    }

    /// A trilinear map on one space of dimension `d`.
    pub fn cubic(d: usize, f: impl FnMut(usize, usize, usize) -> Vector) -> Self {
        Self::from_fn([d, d, d, d], f)
    }

    pub fn zero(dims: [usize; 4]) -> Self {
        Self::from_table(dims, vec![Vec::new(); dims[0] * dims[1] * dims[2]])
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    /// Dimension of a tensor on a single space.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_cubic());
        self.dims[0]
    }

    pub fn is_cubic(&self) -> bool {
        self.dims.iter().all(|&d| d == self.dims[0])
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn nnz_triples(&self) -> usize {
        self.table.iter().filter(|v| !v.is_empty()).count()
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &SparseVec {
        &self.table[self.idx(i, j, k)]
    }

    /// Basis triples `(i, k)` whose entry with middle index `j` is nonzero.
    pub fn middle_support(&self, j: usize) -> &[(usize, usize)] {
        &self.by_middle[j]
    }

    pub fn eval_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut out = zero_vec(self.dims[3]);
        for (m, v) in self.entry(i, j, k) {
            out[*m] = v.clone();
        }
        out
    }

    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        assert_eq!([x.len(), y.len(), z.len()], [self.dims[0], self.dims[1], self.dims[2]], "shape mismatch");
        let mut out = zero_vec(self.dims[3]);
        let (sx, sy, sz) = (support(x), support(y), support(z));
        for &i in &sx {
            for &j in &sy {
                let xy = &x[i] * &y[j];
                for &k in &sz {
                    let e = self.entry(i, j, k);
                    if e.is_empty() {
                        continue;
                    }
                    let s = &xy * &z[k];
                    for (m, v) in e {
                        out[*m] += &(&s * v);
                    }
                }
            }
        }
        out
    }

    /// The linear map `z ↦ T(x, y, z)` as a matrix.
    pub fn operator(&self, x: &[Rational], y: &[Rational]) -> QMatrix {
        let cols: Vec<Vector> =
            (0..self.dims[2]).map(|k| self.eval(x, y, &crate::exactalg::linalg::unit_vec(self.dims[2], k))).collect();
        QMatrix::from_cols(self.dims[3], &cols)
    }

    /// `Tr(z ↦ T(u, v, z))` on basis pairs; requires `C = D`.
    pub fn trace_form(&self) -> QMatrix {
        assert_eq!(self.dims[2], self.dims[3]);
        QMatrix::from_fn(self.dims[0], self.dims[1], |i, j| {
            let mut acc = Rational::ZERO;
            for k in 0..self.dims[2] {
                for (m, v) in self.entry(i, j, k) {
                    if *m == k {
                        acc += v;
                    }
                }
            }
            acc
        })
    }

    /// `(x, y, z) ↦ T(x, a y, z)`.
    pub fn with_middle(&self, a: &QMatrix) -> Self {
        assert_eq!(a.rows(), self.dims[1], "shape mismatch");
        let [da, _, dc, dout] = self.dims;
        let db = a.cols();
        let mut acc: Vec<Vector> = vec![Vec::new(); da * db * dc];
        for y in 0..db {
            for j in 0..self.dims[1] {
                let s = a.get(j, y);
                if s.is_zero() {
                    continue;
                }
                for &(i, k) in &self.by_middle[j] {
                    let slot = &mut acc[(i * db + y) * dc + k];
                    if slot.is_empty() {
                        *slot = zero_vec(dout);
                    }
                    for (m, v) in self.entry(i, j, k) {
                        slot[*m] += &(s * v);
                    }
                }
            }
        }
        Self::from_table([da, db, dc, dout], acc.iter().map(|v| sparsify(v)).collect())
    }

    /// `m ∘ T`.
    pub fn then(&self, m: &QMatrix) -> Self {
        assert_eq!(m.cols(), self.dims[3], "shape mismatch");
        let dout = m.rows();
        let table = self
            .table
            .iter()
            .map(|e| {
                if e.is_empty() {
                    return Vec::new();
                }
                let mut v = zero_vec(dout);
                for (k, s) in e {
                    for (r, out) in v.iter_mut().enumerate() {
                        let c = m.get(r, *k);
                        if !c.is_zero() {
                            *out += &(s * c);
                        }
                    }
                }
                sparsify(&v)
            })
            .collect();
        Self::from_table([self.dims[0], self.dims[1], self.dims[2], dout], table)
    }

    /// `(x, y, z) ↦ T(gx, hy, kz)`.
    pub fn precompose(&self, g: &QMatrix, h: &QMatrix, k: &QMatrix) -> Self {
        self.mode_product(0, g).mode_product(1, h).mode_product(2, k)
    }

    /// Substitutes `m` into one input slot: the result at basis index `c` of
    /// that slot is `Σ_r m[r, c] T(.., e_r, ..)`.
    fn mode_product(&self, slot: usize, m: &QMatrix) -> Self {
        assert_eq!(m.rows(), self.dims[slot], "shape mismatch");
        let mut dims = self.dims;
        dims[slot] = m.cols();
        // nonzero entries of each row of m
        let rows: Vec<Vec<(usize, &Rational)>> = (0..m.rows())
            .map(|r| (0..m.cols()).filter_map(|c| Some((c, m.get(r, c))).filter(|(_, x)| !x.is_zero())).collect())
            .collect();
        let mut acc: Vec<Vector> = vec![Vec::new(); dims[0] * dims[1] * dims[2]];
        let [a, b, c, _] = self.dims;
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let e = self.entry(i, j, k);
                    if e.is_empty() {
                        continue;
                    }
                    let src = [i, j, k][slot];
                    for &(col, s) in &rows[src] {
                        let mut t = [i, j, k];
                        t[slot] = col;
                        let slot_vec = &mut acc[(t[0] * dims[1] + t[1]) * dims[2] + t[2]];
                        if slot_vec.is_empty() {
                            *slot_vec = zero_vec(dims[3]);
                        }
                        for (o, v) in e {
                            slot_vec[*o] += &(s * v);
                        }
                    }
                }
            }
        }
        Self::from_table(dims, acc.iter().map(|v| sparsify(v)).collect())
    }

    /// Lie bracket tensor `R(x,y)z = T(x,y,z) − T(y,x,z)`.
    pub fn antisymmetrize(&self) -> Self {
        assert!(self.dims[0] == self.dims[1], "antisymmetrization needs equal first slots");
        let [a, b, c, d] = self.dims;
        Self::from_fn([a, b, c, d], |i, j, k| {
            let mut v = self.eval_basis(i, j, k);
            for (m, s) in self.entry(j, i, k) {
                v[*m] -= s;
            }
            v
        })
    }

    /// Least common multiple of the denominators of all structure constants.
    pub fn common_denominator(&self) -> Rational {
        crate::exactalg::rational::common_denominator(self.table.iter().flat_map(|e| e.iter().map(|(_, v)| v)))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let table = self
            .table
            .iter()
            .map(|e| if r.is_zero() { Vec::new() } else { e.iter().map(|(m, v)| (*m, v * r)).collect() })
            .collect();
        Self::from_table(self.dims, table)
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dims, o.dims);
        Self::from_fn(self.dims, |i, j, k| {
            let mut v = self.eval_basis(i, j, k);
            for (m, s) in o.entry(i, j, k) {
                v[*m] -= s;
            }
            v
        })
    }

    /// The same tensor with one structure constant shifted (mutation tests).
    pub fn bumped(&self, i: usize, j: usize, k: usize, m: usize, delta: &Rational) -> Self {
        let mut v = self.eval_basis(i, j, k);
        v[m] += delta;
        let mut table = self.table.clone();
        let idx = self.idx(i, j, k);
        table[idx] = sparsify(&v);
        Self::from_table(self.dims, table)
    }

    /// First output slot `(i,j,k,m)` where two tensors differ.
    pub fn first_difference(&self, o: &Self) -> Option<[usize; 3]> {
        assert_eq!(self.dims, o.dims);
        let [a, b, c, _] = self.dims;
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    if self.entry(i, j, k) != o.entry(i, j, k) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    /// Restriction of a cubic tensor to an invariant subspace, in echelon coordinates.
    pub fn restrict(&self, sub: &Subspace) -> Result<Self> {
        let b = sub.basis();
        let d = b.len();
        let mut failed = None;
        let t = Self::cubic(d, |i, j, k| {
            let v = self.eval(&b[i], &b[j], &b[k]);
            match sub.coords(&v) {
                Some(c) => c,
                None => {
                    failed.get_or_insert([i, j, k]);
                    zero_vec(d)
                }
            }
        });
        match failed {
            Some(tr) => Err(Error::Precondition(format!("subspace is not closed under the product at {tr:?}"))),
            None => Ok(t),
        }
    }

    /// Output values of all nonzero basis triples, for serialization.
    pub fn nonzero_entries(&self) -> Vec<TensorEntry> {
        let [a, b, c, _] = self.dims;
        let mut out = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    let e = self.entry(i, j, k);
                    if !e.is_empty() {
                        out.push(TensorEntry { triple: [i, j, k], value: e.clone() });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TensorEntry {
    pub triple: [usize; 3],
    pub value: SparseVec,
}

/// `acc += s * T(e_i, e_j, e_k)`.
pub fn accumulate(acc: &mut [Rational], s: &Rational, e: &SparseVec) {
    for (m, v) in e {
        acc[*m] += &(s * v);
    }
}

pub fn dense_is_zero(v: &[Rational]) -> bool {
    is_zero_vec(v)
}

pub fn dense_axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    axpy(acc, s, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    fn product_1d() -> TripleTensor {
        TripleTensor::cubic(1, |_, _, _| vec![q(2)])
    }

    #[test]
    fn scalar_product() {
        let t = product_1d();
        assert_eq!(t.eval(&[q(2)], &[q(3)], &[q(4)]), vec![q(48)]);
        assert_eq!(t.trace_form(), QMatrix::from_ints(&[&[2]]));
        assert!(t.antisymmetrize().is_zero());
    }

    #[test]
    fn middle_composition_matches_eval() {
        let t = TripleTensor::cubic(2, |i, j, k| {
            let mut v = zero_vec(2);
            v[(i + j + k) % 2] = q((i + 2 * j + 3 * k) as i64 + 1);
            v
        });
        let a = QMatrix::from_ints(&[&[1, 2], &[0, -1]]);
        let ta = t.with_middle(&a);
        let x = vec![q(1), q(-2)];
        let y = vec![q(3), q(1)];
        let z = vec![q(0), q(5)];
        assert_eq!(ta.eval(&x, &y, &z), t.eval(&x, &a.mul_vec(&y), &z));
        let m = QMatrix::from_ints(&[&[0, 1], &[1, 1]]);
        assert_eq!(t.then(&m).eval(&x, &y, &z), m.mul_vec(&t.eval(&x, &y, &z)));
        assert_eq!(t.precompose(&a, &m, &a).eval(&x, &y, &z), t.eval(&a.mul_vec(&x), &m.mul_vec(&y), &a.mul_vec(&z)));
    }

    #[test]
    fn bump_changes_one_constant() {
        let t = product_1d();
        let b = t.bumped(0, 0, 0, 0, &q(1));
        assert_eq!(b.eval_basis(0, 0, 0), vec![q(3)]);
        assert_eq!(t.first_difference(&b), Some([0, 0, 0]));
    }
}
