//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every matrix model in this crate is defined over `Z[i]`, so brackets,
//! kernels and eigenspaces with rational eigenvalues can be computed without
//! rounding. The linear algebra here is plain Gauss-Jordan elimination; the
//! matrices involved are at most a few dozen rows.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// A Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Qi {
    pub re: Rational,
    pub im: Rational,
}

impl Qi {
    pub fn new(re: Rational, im: Rational) -> Self {
        Qi { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Qi { re, im: Rational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Qi::real(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Qi::real(rat(n, d))
    }

    pub fn i() -> Self {
        Qi { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        Qi { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Qi { re: &self.re * r, im: &self.im * r }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Zero for Qi {
    fn zero() -> Self {
        Qi { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Qi {
    fn one() -> Self {
        Qi::int(1)
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

impl<'a> Add<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn add(self, o: &Qi) -> Qi {
        Qi { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn sub(self, o: &Qi) -> Qi {
        Qi { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Qi> for &'a Qi {
    type Output = Qi;
    fn mul(self, o: &Qi) -> Qi {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi::real(&self.re * &o.re);
        }
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        &self + &o
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        &self - &o
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        &self * &o
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}

impl Neg for &Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Qi> for Qi {
    fn add_assign(&mut self, o: &Qi) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Qi> for Qi {
    fn sub_assign(&mut self, o: &Qi) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

/// Dense row-major matrix over `Q(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Qi>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Qi;
    fn index(&self, (r, c): (usize, usize)) -> &Qi {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Qi {
        &mut self.data[r * self.cols + c]
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Qi::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Qi::one();
        }
        m
    }

    /// Matrix unit `E_{r,c}` (zero-based indices).
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        m[(r, c)] = Qi::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Qi>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Qi::int(x)).collect()).collect())
    }

    pub fn from_columns(cols: &[Vec<Qi>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = QMat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<Qi> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Qi> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Qi>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Qi::is_real)
    }

    pub fn entries(&self) -> &[Qi] {
        &self.data
    }

    pub fn add(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Qi) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| if a.is_zero() { Qi::zero() } else { a * s }).collect(),
        }
    }

    pub fn neg(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Qi]) -> Vec<Qi> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Qi::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &QMat) -> QMat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Qi::conj).collect() }
    }

    pub fn adjoint(&self) -> QMat {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Qi {
        let mut acc = Qi::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self[(i, i)];
        }
        acc
    }

    /// `tr(self · o)` without forming the product.
    pub fn trace_product(&self, o: &QMat) -> Qi {
        assert_eq!(self.cols, o.rows);
        assert_eq!(self.rows, o.cols);
        let mut acc = Qi::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let b = &o[(k, i)];
                if !b.is_zero() {
                    acc += &(a * b);
                }
            }
        }
        acc
    }

    /// Entries as a flat vector of real parts followed by imaginary parts,
    /// which identifies the matrix with a vector of a real vector space.
    pub fn realified(&self) -> Vec<Qi> {
        self.data
            .iter()
            .map(|x| Qi::real(x.re.clone()))
            .chain(self.data.iter().map(|x| Qi::real(x.im.clone())))
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_rows()).1.len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Qi>> {
        nullspace(self.to_rows(), self.cols)
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert!(self.is_square());
        let n = self.rows;
        let aug: Vec<Vec<Qi>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| if i == j { Qi::one() } else { Qi::zero() }));
                r
            })
            .collect();
        let (red, pivots) = rref(aug);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(QMat::from_rows(red.into_iter().take(n).map(|r| r[n..].to_vec()).collect()))
    }

    pub fn to_c64(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_c64())
    }

    /// Largest entry modulus, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Qi::abs_f64).fold(0.0, f64::max)
    }
}

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped
/// to the bottom) and the pivot columns.
pub fn rref(mut rows: Vec<Vec<Qi>>) -> (Vec<Vec<Qi>>, Vec<usize>) {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Basis of the solution space of the homogeneous system given by `rows`
/// (each of length `ncols`).
pub fn nullspace(rows: Vec<Vec<Qi>>, ncols: usize) -> Vec<Vec<Qi>> {
    if rows.is_empty() {
        return (0..ncols).map(|j| unit_vec(ncols, j)).collect();
    }
    let (red, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Qi::zero(); ncols];
            v[f] = Qi::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[r][f];
            }
            v
        })
        .collect()
}

pub fn unit_vec(n: usize, j: usize) -> Vec<Qi> {
    let mut v = vec![Qi::zero(); n];
    v[j] = Qi::one();
    v
}

/// Rank of a family of vectors.
pub fn rank_of(vectors: &[Vec<Qi>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rref(vectors.to_vec()).1.len()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Qi>], v: &[Qi]) -> bool {
    let r = rank_of(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank_of(&ext) == r
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<Qi>], b: &[Vec<Qi>]) -> bool {
    let ra = rank_of(a);
    if ra != rank_of(b) {
        return false;
    }
    let mut ab = a.to_vec();
    ab.extend_from_slice(b);
    rank_of(&ab) == ra
}

/// Extract a maximal linearly independent subfamily, preserving order.
pub fn independent_subset(vectors: &[Vec<Qi>]) -> Vec<usize> {
    let mut kept: Vec<Vec<Qi>> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank_of(&trial) > kept.len() {
            kept = trial;
            idx.push(i);
        }
    }
    idx
}

pub fn vec_add(a: &[Qi], b: &[Qi]) -> Vec<Qi> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Qi], b: &[Qi]) -> Vec<Qi> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Qi], s: &Qi) -> Vec<Qi> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Qi]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn vec_conj(a: &[Qi]) -> Vec<Qi> {
    a.iter().map(Qi::conj).collect()
}

/// Largest modulus among the entries, as a float.
pub fn vec_max_abs(a: &[Qi]) -> f64 {
    a.iter().map(Qi::abs_f64).fold(0.0, f64::max)
}

/// Sylvester-style test via symmetric elimination: all pivots positive.
pub fn is_positive_definite(m: &QMat) -> bool {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    for k in 0..n {
        let p = a[(k, k)].clone();
        if !p.is_real() || !p.re.is_positive() {
            return false;
        }
        let pinv = p.inv();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] * &pinv;
            for j in k..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= &t;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let a = Qi::new(rat(1, 2), rat(3, 1));
        let b = Qi::new(rat(-2, 1), rat(1, 3));
        let p = &a * &b;
        assert_eq!(p, Qi::new(rat(-1, 1) - rat(1, 1), rat(1, 6) - rat(6, 1)));
        assert_eq!(&(&a * &a.inv()), &Qi::one());
        assert_eq!(Qi::i() * Qi::i(), Qi::int(-1));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = QMat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(vec_is_zero(&m.mul_vec(v)));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMat::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(2));
        assert!(QMat::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn definiteness() {
        assert!(is_positive_definite(&QMat::from_int_rows(&[&[2, -1], &[-1, 2]])));
        assert!(!is_positive_definite(&QMat::from_int_rows(&[&[1, 2], &[2, 1]])));
    }

    #[test]
    fn span_helpers() {
        let a = vec![vec![Qi::int(1), Qi::int(0)], vec![Qi::int(1), Qi::int(1)]];
        let b = vec![vec![Qi::int(0), Qi::int(1)], vec![Qi::int(2), Qi::int(0)]];
        assert!(same_span(&a, &b));
        assert!(in_span(&a[..1], &[Qi::int(5), Qi::int(0)]));
        assert_eq!(independent_subset(&[a[0].clone(), a[0].clone(), a[1].clone()]), vec![0, 2]);
    }
}
