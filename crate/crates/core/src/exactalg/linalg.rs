//! Exact row reduction and the operations built on it.

use serde::Serialize;

use super::matrix::QMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

pub type Vector = Vec<Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::ZERO; n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::ONE;
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

/// `acc += s * v`.
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(s * x);
        }
    }
}

/// Reduced row echelon form of the given rows (in place); returns pivot columns.
/// Pivots are the first nonzero entry in column order.
pub fn rref_rows(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut rows = m.to_rows();
    let piv = rref_rows(&mut rows, m.cols());
    let r = if rows.is_empty() { QMatrix::zeros(0, m.cols()) } else { QMatrix::from_rows(rows) };
    (r, piv)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankKernelImage {
    pub rank: usize,
    /// Basis of `{x : Mx = 0}`.
    pub kernel: Vec<Vector>,
    /// Pivot columns of `M`.
    pub image: Vec<Vector>,
}

/// Kernel vectors from a reduced echelon form.
fn kernel_from_rref(rows: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(ncols);
        v[f] = Rational::ONE;
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = -&row[f];
        }
        out.push(v);
    }
    out
}

pub fn rank_kernel_image(m: &QMatrix) -> RankKernelImage {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols());
    let kernel = kernel_from_rref(&rows, &pivots, m.cols());
    let image = pivots.iter().map(|&c| m.col(c)).collect();
    RankKernelImage { rank: pivots.len(), kernel, image }
}

pub fn kernel(m: &QMatrix) -> Vec<Vector> {
    rank_kernel_image(m).kernel
}

/// Some solution of `Mx = b`, or `None` if inconsistent.
pub fn solve(m: &QMatrix, b: &[Rational]) -> Option<Vector> {
    assert_eq!(m.rows(), b.len());
    let n = m.cols();
    let mut rows: Vec<Vector> =
        (0..m.rows()).map(|i| m.row(i).iter().cloned().chain(std::iter::once(b[i].clone())).collect()).collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = zero_vec(n);
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(QMatrix::zeros(0, 0));
    }
    let aug = m.hstack(&QMatrix::identity(n));
    let mut rows = aug.to_rows();
    let pivots = rref_rows(&mut rows, 2 * n);
    if pivots[n - 1] >= n {
        return None;
    }
    Some(QMatrix::from_fn(n, n, |i, j| rows[i][n + j].clone()))
}

/// A subspace of ℚⁿ stored as its reduced echelon basis (canonical).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}, {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
        for v in &rows {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let pivots = rref_rows(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(), pivots: (0..ambient).collect() }
    }

    /// Span of a basis that must be independent.
    pub fn from_independent(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let s = Self::span(ambient, vectors);
        if s.dim() != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_cols(self.ambient, &self.basis)
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Rational]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (b, s) in self.basis.iter().zip(&c) {
            axpy(&mut r, &-s, b);
        }
        is_zero_vec(&r).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::span(self.ambient, &v)
    }

    /// `{x : ⟨b, x⟩ = 0 for all basis b}` for the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let k = kernel_from_rref(&self.basis, &self.pivots, self.ambient);
        Subspace::span(self.ambient, &k)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        let mut rows = self.annihilator().basis;
        rows.extend(o.annihilator().basis);
        let pivots = rref_rows(&mut rows, self.ambient);
        Subspace::span(self.ambient, &kernel_from_rref(&rows, &pivots, self.ambient))
    }

    /// Image under a linear map given as a matrix.
    pub fn image_under(&self, m: &QMatrix) -> Subspace {
        let v: Vec<Vector> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &v)
    }

    pub fn image_of(m: &QMatrix) -> Subspace {
        let cols: Vec<Vector> = (0..m.cols()).map(|j| m.col(j)).collect();
        Subspace::span(m.rows(), &cols)
    }

    pub fn kernel_of(m: &QMatrix) -> Subspace {
        Subspace::span(m.cols(), &kernel(m))
    }

    /// Whether `self ⊕ o` is the whole ambient space.
    pub fn is_complement_of(&self, o: &Subspace) -> bool {
        self.dim() + o.dim() == self.ambient && self.sum(o).dim() == self.ambient
    }

    /// Linear map `ℚ^dim → ambient` sending coordinates to vectors.
    pub fn inclusion(&self) -> QMatrix {
        self.basis_matrix()
    }

    /// Coordinates of each ambient vector in `self` along the complement `c`.
    pub fn projection_along(&self, c: &Subspace) -> Result<QMatrix> {
        if !self.is_complement_of(c) {
            return Err(Error::Precondition("subspaces are not complementary".into()));
        }
        let mut cols = self.basis.clone();
        cols.extend(c.basis.iter().cloned());
        let change = QMatrix::from_cols(self.ambient, &cols);
        let inv = inverse(&change).expect("complementary bases form an invertible matrix");
        let rows: Vec<usize> = (0..self.dim()).collect();
        let all: Vec<usize> = (0..self.ambient).collect();
        Ok(inv.submatrix(&rows, &all))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    /// `C` with `Cᵗ G C` diagonal.
    pub witness: QMatrix,
    pub diagonal: Vector,
}

impl Inertia {
    pub fn signature(&self) -> (usize, usize, usize) {
        (self.positive, self.negative, self.zero)
    }
    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Symmetric Gaussian elimination: returns the Sylvester counts and a witness.
pub fn congruent_diagonalize(g: &QMatrix) -> Result<Inertia> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = g.rows();
    let mut m = g.clone();
    let mut c = QMatrix::identity(n);

    // column op j += s * i, paired with the row op
    fn add_col(m: &mut QMatrix, c: &mut QMatrix, j: usize, i: usize, s: &Rational) {
        let n = m.rows();
        for r in 0..n {
            let v = m.get(r, j) + &(s * m.get(r, i));
            m.set(r, j, v);
        }
        for r in 0..n {
            let v = m.get(j, r) + &(s * m.get(i, r));
            m.set(j, r, v);
        }
        for r in 0..n {
            let v = c.get(r, j) + &(s * c.get(r, i));
            c.set(r, j, v);
        }
    }
    fn swap(m: &mut QMatrix, c: &mut QMatrix, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = m.rows();
        for r in 0..n {
            let a = m.get(r, i).clone();
            let b = m.get(r, j).clone();
            m.set(r, i, b);
            m.set(r, j, a);
        }
        for r in 0..n {
            let a = m.get(i, r).clone();
            let b = m.get(j, r).clone();
            m.set(i, r, b);
            m.set(j, r, a);
        }
        for r in 0..n {
            let a = c.get(r, i).clone();
            let b = c.get(r, j).clone();
            c.set(r, i, b);
            c.set(r, j, a);
        }
    }

    for k in 0..n {
        if m.get(k, k).is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !m.get(i, i).is_zero()) {
                swap(&mut m, &mut c, k, i);
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_zero())
            {
                // all remaining diagonal entries vanish: e_i += e_j gives 2 m_ij
                add_col(&mut m, &mut c, i, j, &Rational::ONE);
                swap(&mut m, &mut c, k, i);
            } else {
                break;
            }
        }
        let p = m.get(k, k).clone();
        for j in k + 1..n {
            if !m.get(k, j).is_zero() {
                let s = -(m.get(k, j) / &p);
                add_col(&mut m, &mut c, j, k, &s);
            }
        }
    }
    let diagonal: Vector = (0..n).map(|i| m.get(i, i).clone()).collect();
    let positive = diagonal.iter().filter(|x| x.signum() > 0).count();
    let negative = diagonal.iter().filter(|x| x.signum() < 0).count();
    Ok(Inertia { positive, negative, zero: n - positive - negative, witness: c, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn proportional_rows() {
        let r = rank_kernel_image(&QMatrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        assert_eq!(Subspace::span(2, &r.kernel), Subspace::span(2, &[vec![q(2), q(-1)]]));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let r = rank_kernel_image(&QMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn empty_matrix() {
        let r = rank_kernel_image(&QMatrix::zeros(0, 3));
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 3);
        assert_eq!(rank_kernel_image(&QMatrix::zeros(2, 0)).rank, 0);
    }

    #[test]
    fn signature_examples() {
        let d = QMatrix::diag(&[q(1), q(-1)]);
        assert_eq!(congruent_diagonalize(&d).unwrap().signature(), (1, 1, 0));
        assert_eq!(congruent_diagonalize(&QMatrix::zeros(2, 2)).unwrap().signature(), (0, 0, 2));
        let hyperbolic = QMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(congruent_diagonalize(&hyperbolic).unwrap().signature(), (1, 1, 0));
        assert_eq!(congruent_diagonalize(&QMatrix::from_ints(&[&[1, 2], &[3, 4]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn solve_and_inverse() {
        let m = QMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(2));
        let x = solve(&m, &[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(solve(&QMatrix::from_ints(&[&[1, 1], &[1, 1]]), &[q(0), q(1)]).is_none());
        assert!(inverse(&QMatrix::from_ints(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, &[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::span(3, &[vec![q(0), q(5), q(0)]]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.annihilator(), Subspace::span(3, &[vec![q(0), q(0), q(1)]]));
        let line = Subspace::span(3, &[vec![q(0), q(0), q(1)]]);
        assert!(a.is_complement_of(&line));
        let p = a.projection_along(&line).unwrap();
        assert_eq!(p.mul_vec(&[q(3), q(4), q(5)]), vec![q(3), q(4)]);
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| QMatrix::from_fn(r, c, |i, j| Rational::int(v[i * c + j])))
    }

    proptest! {
        #[test]
        fn kernel_and_image_are_exact((r, c) in (1usize..6, 1usize..6), seed in any::<u64>()) {
            let mut rng = seed;
            let m = QMatrix::from_fn(r, c, |_, _| {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Rational::new(((rng >> 33) % 7) as i64 - 3, 1 + ((rng >> 20) % 3) as i64)
            });
            let rki = rank_kernel_image(&m);
            prop_assert_eq!(rki.rank + rki.kernel.len(), c);
            for k in &rki.kernel {
                prop_assert!(is_zero_vec(&m.mul_vec(k)));
            }
            for v in &rki.image {
                prop_assert!(solve(&m, v).is_some());
            }
            prop_assert_eq!(rki.rank, rank(&m.transpose()));
        }

        #[test]
        fn signature_is_congruence_invariant(g in small_matrix(4, 4), s in small_matrix(4, 4)) {
            let g = &g + &g.transpose();
            let inert = congruent_diagonalize(&g).unwrap();
            let c = &inert.witness;
            let d = &(&c.transpose() * &g) * c;
            prop_assert_eq!(d.clone(), QMatrix::diag(&inert.diagonal));
            prop_assert!(inverse(c).is_some());
            if inverse(&s).is_some() {
                let g2 = &(&s.transpose() * &g) * &s;
                prop_assert_eq!(congruent_diagonalize(&g2).unwrap().signature(), inert.signature());
            }
        }
    }
}
