//! Floating-point image of a prepared model in adjoint coordinates.
//!
//! Elements of `g_C` are complex coordinate vectors with respect to the real
//! basis of `g`, which lists `k` first and then `p`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exact::{QMat, Qi};
use crate::matmodel::Prepared;

pub type CVec = DVector<Complex64>;
pub type RVec = DVector<f64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn real_f64(q: &Qi) -> f64 {
    q.re.to_f64().unwrap_or(f64::NAN)
}

fn cvec(c: &[Qi]) -> CVec {
    CVec::from_iterator(c.len(), c.iter().map(Qi::to_c64))
}

fn rvec(c: &[Qi]) -> RVec {
    RVec::from_iterator(c.len(), c.iter().map(real_f64))
}

/// Largest modulus of an entry.
pub fn cmax(x: &CVec) -> f64 {
    x.iter().map(|a| a.norm()).fold(0.0, f64::max)
}

pub fn complexify(x: &RVec) -> CVec {
    x.map(|a| Complex64::new(a, 0.0))
}

/// Numeric model used by the sampled checks.
#[derive(Debug, Clone)]
pub struct NumModel {
    pub id: String,
    pub dim: usize,
    pub k_dim: usize,
    /// Size of the defining representation.
    pub n: usize,
    /// `ad` of each basis element.
    ad_basis: Vec<DMatrix<f64>>,
    /// Gram matrix of the normalized form `B` on the basis.
    pub gram: DMatrix<f64>,
    basis_matrices: Vec<DMatrix<Complex64>>,
    pub e: RVec,
    pub x_psi: RVec,
    pub z: RVec,
    pub h: CVec,
    pub v: CVec,
    pub w: CVec,
    /// `-B`-orthonormal basis of the complement of `k_nu` in `k`.
    pub k_nu_perp: Vec<RVec>,
    pub a_basis: Vec<RVec>,
    /// Basis of the sum of the positive restricted root spaces.
    pub n_basis: Vec<RVec>,
    /// Basis of the center of `k`.
    pub center: Vec<RVec>,
    /// Index blocks of the defining representation preserved by `k`.
    pub blocks: Vec<Vec<usize>>,
}

fn gram_schmidt(vs: Vec<RVec>, ip: impl Fn(&RVec, &RVec) -> f64) -> Vec<RVec> {
    let mut out: Vec<RVec> = Vec::new();
    for mut x in vs {
        for q in &out {
            let c = ip(&x, q);
            x -= q * c;
        }
        let nrm = ip(&x, &x).sqrt();
        out.push(x / nrm);
    }
    out
}

/// Connected components of the support graph of `k` in the defining
/// representation.
fn support_blocks(n: usize, k: &[DMatrix<Complex64>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for m in k {
        for i in 0..n {
            for j in 0..n {
                if m[(i, j)].norm() > 0.0 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(j) => blocks[j].push(i),
            None => {
                roots.push(r);
                blocks.push(vec![i]);
            }
        }
    }
    blocks
}

impl NumModel {
    pub fn new(p: &Prepared) -> Self {
        let model = &p.model;
        let datum = &p.datum;
        let dim = model.dim();
        let k_dim = model.k_dim;
        let ad_basis = model
            .basis
            .iter()
            .map(|b| {
                let a = model.ad(b);
                DMatrix::from_fn(dim, dim, |i, j| real_f64(&a[(i, j)]))
            })
            .collect();
        let gram = DMatrix::from_fn(dim, dim, |i, j| real_f64(&datum.b(&model.basis[i], &model.basis[j])));
        let basis_matrices: Vec<DMatrix<Complex64>> = model.basis.iter().map(QMat::to_c64).collect();

        let kb = model.k_basis();
        let pairing: Vec<Vec<Qi>> =
            p.lambda.k_nu.iter().map(|y| kb.iter().map(|x| datum.b(x, y)).collect()).collect();
        let perp_exact = crate::exact::nullspace(pairing, k_dim);
        let embed = |c: &[Qi]| {
            let mut v = RVec::zeros(dim);
            for (i, x) in c.iter().enumerate() {
                v[i] = real_f64(x);
            }
            v
        };
        let perp: Vec<RVec> = perp_exact.iter().map(|c| embed(c)).collect();
        let neg_b = |x: &RVec, y: &RVec| -(x.transpose() * &gram * y)[(0, 0)];
        let k_nu_perp = gram_schmidt(perp, neg_b);

        let coords_r = |x: &QMat| rvec(&model.coords(x));
        let n_basis = datum
            .positive
            .iter()
            .flat_map(|&i| datum.root_spaces[i].iter().map(|c| rvec(c)))
            .collect();
        let center = model.centralizer_in(kb, kb).iter().map(coords_r).collect();
        let blocks = support_blocks(model.n, &basis_matrices[..k_dim]);
        NumModel {
            id: model.id.clone(),
            dim,
            k_dim,
            n: model.n,
            ad_basis,
            gram,
            e: coords_r(&p.striple.e),
            x_psi: coords_r(&p.striple.x),
            z: coords_r(&p.lambda.z),
            h: cvec(&model.coords(&p.cayley.h)),
            v: cvec(&model.coords(&p.cayley.v)),
            w: cvec(&model.coords(&p.cayley.w)),
            k_nu_perp,
            a_basis: model.a_basis.iter().map(coords_r).collect(),
            n_basis,
            center,
            blocks,
            basis_matrices,
        }
    }

    pub fn p_dim(&self) -> usize {
        self.dim - self.k_dim
    }

    /// `ad y` for real `y`.
    pub fn ad_real(&self, y: &RVec) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, a) in self.ad_basis.iter().enumerate() {
            if y[i] != 0.0 {
                m += a * y[i];
            }
        }
        m
    }

    /// `ad x` for complex `x`.
    pub fn ad(&self, x: &CVec) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, a) in self.ad_basis.iter().enumerate() {
            if x[i] != Complex64::new(0.0, 0.0) {
                m += a.map(|t| x[i] * t);
            }
        }
        m
    }

    pub fn bracket_real(&self, x: &RVec, y: &RVec) -> RVec {
        self.ad_real(x) * y
    }

    pub fn bracket(&self, x: &CVec, y: &CVec) -> CVec {
        self.ad(x) * y
    }

    /// `Ad exp(y)` as a matrix on coordinates.
    pub fn exp_ad(&self, y: &RVec) -> DMatrix<f64> {
        self.ad_real(y).exp()
    }

    pub fn b_real(&self, x: &RVec, y: &RVec) -> f64 {
        (x.transpose() * &self.gram * y)[(0, 0)]
    }

    pub fn b(&self, x: &CVec, y: &CVec) -> Complex64 {
        let gy = self.gram.map(|t| Complex64::new(t, 0.0)) * y;
        x.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    /// Complex-linear Cartan involution.
    pub fn theta(&self, x: &CVec) -> CVec {
        let mut y = x.clone();
        for i in self.k_dim..self.dim {
            y[i] = -y[i];
        }
        y
    }

    /// Conjugation of `g_C` with respect to `g`.
    pub fn sigma(&self, x: &CVec) -> CVec {
        x.map(|a| a.conj())
    }

    /// Conjugation with respect to the compact form.
    pub fn sigma_u(&self, x: &CVec) -> CVec {
        self.theta(&self.sigma(x))
    }

    /// `{x, y} = -B(x, sigma_u y)`, linear in `x`.
    pub fn herm(&self, x: &CVec, y: &CVec) -> Complex64 {
        -self.b(x, &self.sigma_u(y))
    }

    /// `k`-component of `x`.
    pub fn k_part(&self, x: &CVec) -> CVec {
        let mut y = x.clone();
        for i in self.k_dim..self.dim {
            y[i] = Complex64::new(0.0, 0.0);
        }
        y
    }

    /// The element in the defining representation.
    pub fn matrix(&self, x: &CVec) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (i, b) in self.basis_matrices.iter().enumerate() {
            if x[i] != Complex64::new(0.0, 0.0) {
                m += b * x[i];
            }
        }
        m
    }

    /// Sorted eigenvalues of `i x` for `x` in `k`, restricted to an index
    /// block of the defining representation.
    pub fn k_spectrum(&self, x: &CVec, block: Option<&[usize]>) -> Vec<f64> {
        let m = self.matrix(x) * I;
        let sub = match block {
            Some(idx) => DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])]),
            None => m,
        };
        let herm = (&sub + sub.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// The Kostant-Sekiguchi map on the extremal-weight cone:
    /// `b(u) = (-i [u, w_u] / r + u + w_u) / 2` with `w_u = -sigma_u(u)` and
    /// `r = {u,u}^(1/2)`.
    pub fn ks_map(&self, u: &CVec) -> CVec {
        let wu = -self.sigma_u(u);
        let r = self.herm(u, u).re.sqrt();
        let c = self.bracket(u, &wu) * (-I / r);
        (c + u + wu) * Complex64::new(0.5, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matmodel::Positivity;
    use crate::realform::Catalog;

    fn num(id: &str) -> NumModel {
        NumModel::new(&Prepared::new(&Catalog::shipped(), id, Positivity::Lex).unwrap())
    }

    #[test]
    fn ks_map_sends_v_to_e() {
        for id in ["sl2R", "sl3R", "su21", "sl2H"] {
            let m = num(id);
            let b = m.ks_map(&m.v);
            assert!(cmax(&(b - complexify(&m.e))) < 1e-13, "{id}");
        }
    }

    #[test]
    fn normalizations() {
        let m = num("sp4R");
        assert!((m.b_real(&m.x_psi, &m.x_psi) - 2.0).abs() < 1e-14);
        assert!((m.b_real(&m.z, &m.z) + 2.0).abs() < 1e-14);
        assert!((m.herm(&m.v, &m.v) - 1.0).norm() < 1e-14);
        let perp = &m.k_nu_perp;
        for (i, x) in perp.iter().enumerate() {
            for (j, y) in perp.iter().enumerate() {
                let want = if i == j { -1.0 } else { 0.0 };
                assert!((m.b_real(x, y) - want).abs() < 1e-12);
            }
            assert!(m.b_real(x, &m.z).abs() < 1e-12);
        }
    }

    #[test]
    fn blocks_of_su_models() {
        assert_eq!(num("su21").blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(num("sl2R").blocks.len(), 1);
    }
}
