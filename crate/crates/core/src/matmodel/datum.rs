//! Restricted roots of a matrix model, computed exactly.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::{Signed, ToPrimitive, Zero};

use super::build::{combine_family, LieAlgebraModel, ModelError};
use crate::exact::{self, rat_int, QMat, Qi, Rational};
use crate::realform::RealFormDescriptor;

/// Ordering used to pick the positive restricted roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Positivity {
    /// First nonzero coordinate positive.
    #[default]
    Lex,
    /// Last nonzero coordinate positive.
    ReverseLex,
}

impl Positivity {
    fn is_positive(&self, v: &[Rational]) -> bool {
        let first = match self {
            Positivity::Lex => v.iter().find(|x| !x.is_zero()),
            Positivity::ReverseLex => v.iter().rev().find(|x| !x.is_zero()),
        };
        first.is_some_and(|x| x.is_positive())
    }
}

#[derive(Debug, Clone)]
pub struct RestrictedRootDatum {
    pub positivity: Positivity,
    /// Root values `beta(a_i)` on the basis of `a`.
    pub roots: Vec<Vec<Rational>>,
    /// Coordinates (in the model basis) of a basis of each root space.
    pub root_spaces: Vec<Vec<Vec<Qi>>>,
    /// Indices into `roots` of the positive roots.
    pub positive: Vec<usize>,
    /// Index of the highest root.
    pub psi: usize,
    pub x_psi: QMat,
    /// Normalization `B = c tr` making `B(x_psi, x_psi) = 2`.
    pub c: Rational,
    /// Basis of `m + a`, the zero restricted weight space.
    pub zero_space: Vec<Vec<Qi>>,
    /// `tr(a_i a_j)`.
    pub a_gram: QMat,
    /// Basis of the centralizer of `n`, computed independently of `g_psi`.
    pub cent_n: Vec<Vec<Qi>>,
}

fn rvec_eq(a: &[Rational], b: &[Rational]) -> bool {
    a == b
}

impl RestrictedRootDatum {
    pub fn mult(&self, i: usize) -> usize {
        self.root_spaces[i].len()
    }

    pub fn psi_values(&self) -> &[Rational] {
        &self.roots[self.psi]
    }

    pub fn g_psi(&self) -> &[Vec<Qi>] {
        &self.root_spaces[self.psi]
    }

    pub fn d(&self) -> usize {
        self.mult(self.psi)
    }

    pub fn index_of(&self, v: &[Rational]) -> Option<usize> {
        self.roots.iter().position(|r| rvec_eq(r, v))
    }

    /// `B(x, y) = c tr(xy)`.
    pub fn b(&self, x: &QMat, y: &QMat) -> Qi {
        x.trace_product(y).scale(&self.c)
    }

    /// Inner product of two functionals on `a` induced by the trace form.
    pub fn root_inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let inv = self.a_gram.inverse().expect("trace form nondegenerate on a");
        let av: Vec<Qi> = a.iter().cloned().map(Qi::real).collect();
        let bv: Vec<Qi> = b.iter().cloned().map(Qi::real).collect();
        let t = inv.mul_vec(&bv);
        av.iter().zip(&t).fold(Qi::zero(), |acc, (x, y)| &acc + &(x * y)).re
    }

    /// Multiplicities grouped by length class (`short`/`long` for reduced
    /// systems; `e_i`, `e_i±e_j`, `2e_i` when some root doubles).
    pub fn class_mults(&self) -> Result<BTreeMap<String, u32>, String> {
        let norms: Vec<Rational> = self.roots.iter().map(|r| self.root_inner(r, r)).collect();
        let min = norms.iter().min().cloned().ok_or("no roots")?;
        let max = norms.iter().max().cloned().ok_or("no roots")?;
        let non_reduced = self.roots.iter().any(|r| {
            let doubled: Vec<Rational> = r.iter().map(|x| x * rat_int(2)).collect();
            self.index_of(&doubled).is_some()
        });
        let mut out: BTreeMap<String, u32> = BTreeMap::new();
        for (i, n) in norms.iter().enumerate() {
            let class = if non_reduced {
                let ratio = n / &min;
                if ratio == rat_int(1) {
                    "e_i"
                } else if ratio == rat_int(2) {
                    "e_i±e_j"
                } else if ratio == rat_int(4) {
                    "2e_i"
                } else {
                    return Err(format!("unexpected root length ratio {ratio}"));
                }
            } else if *n == max {
                "long"
            } else {
                "short"
            };
            let m = self.mult(i) as u32;
            if let Some(&old) = out.get(class) {
                if old != m {
                    return Err(format!("multiplicity not constant on class {class}: {old} vs {m}"));
                }
            }
            out.insert(class.to_string(), m);
        }
        Ok(out)
    }

    /// Compare multiplicities and rank with a catalog entry.
    pub fn compare_with(&self, desc: &RealFormDescriptor) -> Result<(), String> {
        let got = self.class_mults()?;
        let want: BTreeMap<String, u32> = desc.canonical_mults();
        if got != want {
            return Err(format!("multiplicities {got:?}, catalog {want:?}"));
        }
        let rank = self.a_gram.rows();
        if rank != desc.restricted_label.rank {
            return Err(format!("restricted rank {rank}, catalog {}", desc.restricted_label.rank));
        }
        if self.roots.len() != desc.restricted_label.root_count() {
            return Err(format!("{} restricted roots, catalog type {} has {}", self.roots.len(), desc.restricted_label, desc.restricted_label.root_count()));
        }
        Ok(())
    }
}

/// Proposed eigenvalues of an integer matrix, rounded to integers.
fn integer_eigenvalue_candidates(m: &QMat) -> Vec<i64> {
    let f = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].re.to_f64().unwrap_or(f64::NAN));
    let mut vals: Vec<i64> = f.complex_eigenvalues().iter().map(|z| z.re.round() as i64).collect();
    vals.sort_unstable();
    vals.dedup();
    vals
}

/// Simultaneous eigendecomposition of `ad a` on `g`, positive system,
/// highest root, `x_psi` and the normalization of `B`.
pub fn restricted_root_datum(model: &LieAlgebraModel, positivity: Positivity) -> Result<RestrictedRootDatum, ModelError> {
    let broken = |what: String| ModelError::Broken { id: model.id.clone(), what };
    let d = model.dim();
    let r = model.a_basis.len();
    let ads: Vec<QMat> = model.a_basis.iter().map(|a| model.ad(a)).collect();

    // Root values lie in [-2, 2] for the chosen a, so weights 5^i separate them.
    let mut h = QMat::zeros(d, d);
    let mut w = Qi::int(1);
    for ad in &ads {
        h = h.add(&ad.scale(&w));
        w = &w * &Qi::int(5);
    }
    let mut spaces: Vec<(Vec<Rational>, Vec<Vec<Qi>>)> = Vec::new();
    let mut total = 0;
    for lam in integer_eigenvalue_candidates(&h) {
        let shifted = h.sub(&QMat::identity(d).scale(&Qi::int(lam)));
        let ker = shifted.nullspace();
        if ker.is_empty() {
            continue;
        }
        total += ker.len();
        let v0 = &ker[0];
        let pivot = v0.iter().position(|x| !x.is_zero()).expect("nonzero kernel vector");
        let mut values = Vec::with_capacity(r);
        for ad in &ads {
            let img = ad.mul_vec(v0);
            let beta = (&img[pivot] * &v0[pivot].inv()).clone();
            if !beta.is_real() {
                return Err(broken("non-real restricted root value".into()));
            }
            for v in &ker {
                if ad.mul_vec(v) != exact::vec_scale(v, &beta) {
                    return Err(broken("ad a not diagonalizable on a joint eigenspace".into()));
                }
            }
            values.push(beta.re);
        }
        spaces.push((values, ker));
    }
    if total != d {
        return Err(broken(format!("ad a is not semisimple: eigenspaces span {total} of {d}")));
    }
    let zero_idx = spaces.iter().position(|(v, _)| v.iter().all(Zero::is_zero)).ok_or_else(|| broken("no zero weight space".into()))?;
    let (_, zero_space) = spaces.remove(zero_idx);
    if zero_space.len() != model.m_basis.len() + r {
        return Err(broken("zero weight space differs from m + a".into()));
    }
    let roots: Vec<Vec<Rational>> = spaces.iter().map(|(v, _)| v.clone()).collect();
    let root_spaces: Vec<Vec<Vec<Qi>>> = spaces.into_iter().map(|(_, s)| s).collect();
    let positive: Vec<usize> = (0..roots.len()).filter(|&i| positivity.is_positive(&roots[i])).collect();

    let add = |a: &[Rational], b: &[Rational]| -> Vec<Rational> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let maximal: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&i| positive.iter().all(|&j| !roots.iter().any(|r| rvec_eq(r, &add(&roots[i], &roots[j])))))
        .collect();
    if maximal.len() != 1 {
        return Err(broken(format!("{} maximal positive roots", maximal.len())));
    }
    let psi = maximal[0];

    let mut a_gram = QMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            a_gram[(i, j)] = model.a_basis[i].trace_product(&model.a_basis[j]);
        }
    }
    let inv = a_gram.inverse().ok_or_else(|| broken("trace form degenerate on a".into()))?;
    let psi_vec: Vec<Qi> = roots[psi].iter().cloned().map(Qi::real).collect();
    let dual = inv.mul_vec(&psi_vec);
    let h_psi = combine_family(&model.a_basis, &dual);
    let psi_of_h = psi_vec.iter().zip(&dual).fold(Qi::zero(), |acc, (x, y)| &acc + &(x * y));
    let x_psi = h_psi.scale(&(&Qi::int(2) * &psi_of_h.inv()));
    let tr = x_psi.trace_product(&x_psi);
    if !tr.is_real() || !tr.re.is_positive() {
        return Err(broken("tr(x_psi^2) not positive".into()));
    }
    let c = rat_int(2) / tr.re;

    // Centralizer of n = sum of positive root spaces, inside n.
    let n_basis: Vec<Vec<Qi>> = positive.iter().flat_map(|&i| root_spaces[i].iter().cloned()).collect();
    let n_mats: Vec<QMat> = n_basis.iter().map(|c| model.elem(c)).collect();
    let cent: Vec<QMat> = model.centralizer_in(&n_mats, &n_mats);
    let cent_n: Vec<Vec<Qi>> = cent.iter().map(|x| model.coords(x)).collect();

    Ok(RestrictedRootDatum { positivity, roots, root_spaces, positive, psi, x_psi, c, zero_space, a_gram, cent_n })
}
