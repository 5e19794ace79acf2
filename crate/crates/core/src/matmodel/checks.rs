//! Spectral and centralizer checks on a prepared model.

use super::build::LieAlgebraModel;
use super::datum::RestrictedRootDatum;
use super::triple::{CayleyTriple, STriple};
use crate::exact::{self, QMat, Qi};
use crate::report::CheckResult;

/// Dimensions of `ker(m - j)` for `j` in `-2..=2`.
pub fn eigen_dims(m: &QMat) -> [usize; 5] {
    let n = m.rows();
    let mut out = [0; 5];
    for (slot, j) in (-2..=2).enumerate() {
        out[slot] = m.sub(&QMat::identity(n).scale(&Qi::int(j))).nullspace().len();
    }
    out
}

fn eigenspace(m: &QMat, j: i64) -> Vec<Vec<Qi>> {
    m.sub(&QMat::identity(m.rows()).scale(&Qi::int(j))).nullspace()
}

/// Spectra of `ad x_psi` and `ad h`.
pub fn spectral_checks(
    model: &LieAlgebraModel,
    datum: &RestrictedRootDatum,
    st: &STriple,
    c: &CayleyTriple,
    omin_split: bool,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let dim = model.dim();
    let ad_x = model.ad(&st.x);
    let mx = eigen_dims(&ad_x);
    let total: usize = mx.iter().sum();
    out.push(CheckResult::boolean(
        "spectrum of ad x_psi in {-2,...,2}",
        total == dim,
        format!("multiplicities {mx:?}, dim g = {dim}"),
    ));
    out.push(CheckResult::boolean(
        "eigenvalue-2 space of ad x_psi = g_psi",
        exact::same_span(&eigenspace(&ad_x, 2), datum.g_psi()),
        "",
    ));
    let mh = eigen_dims(&model.ad(&c.h));
    out.push(CheckResult::boolean("ad h multiplicities = ad x_psi multiplicities", mh == mx, format!("ad h {mh:?}")));

    let k = model.k_dim;
    let ad_h_p = model.ad_block(&c.h, k..dim);
    let top_p = eigenspace(&ad_h_p, 2);
    let v_p = model.coords(&c.v)[k..].to_vec();
    out.push(CheckResult::boolean(
        "eigenvalue-2 space of ad h on p_C is C v",
        top_p.len() == 1 && exact::same_span(&top_p, &[v_p]),
        format!("dim = {}", top_p.len()),
    ));
    let ad_h_k = model.ad_block(&c.h, 0..k);
    let top_k = eigenspace(&ad_h_k, 2).len();
    let d = datum.d();
    out.push(CheckResult::boolean("eigenvalue-2 multiplicity of ad h on k_C = d - 1", top_k + 1 == d, format!("{top_k} vs d = {d}")));
    if omin_split {
        let mk = eigen_dims(&ad_h_k);
        out.push(CheckResult::boolean(
            "spectrum of ad h on k_C in {-1,0,1}",
            mk[1] + mk[2] + mk[3] == k,
            format!("multiplicities {mk:?}, dim k = {k}"),
        ));
    } else {
        out.push(CheckResult::skipped("spectrum of ad h on k_C in {-1,0,1}", "not O_min-split"));
    }
    out
}

fn coords_of(model: &LieAlgebraModel, xs: &[QMat]) -> Vec<Vec<Qi>> {
    xs.iter().map(|x| model.coords(x)).collect()
}

/// Lie-algebra-level isotropy and Hermitian-type checks.
pub fn centralizer_checks(
    model: &LieAlgebraModel,
    datum: &RestrictedRootDatum,
    st: &STriple,
    c: &CayleyTriple,
    hermitian: bool,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let k = model.k_basis();
    let zv = coords_of(model, &model.centralizer_in(k, std::slice::from_ref(&c.v)));
    let ze = coords_of(model, &model.centralizer_in(k, std::slice::from_ref(&st.e)));
    let theta_e = model.theta(&st.e);
    let zu = coords_of(model, &model.centralizer_in(k, &[st.x.clone(), st.e.clone(), theta_e]));
    out.push(CheckResult::boolean(
        "z_k(v) = z_k(e) = z_k(u_psi)",
        exact::same_span(&zv, &ze) && exact::same_span(&ze, &zu),
        format!("dims {}, {}, {}", zv.len(), ze.len(), zu.len()),
    ));

    let d = datum.d();
    if model.m_basis.is_empty() {
        out.push(CheckResult::skipped("[m,e] = 0 <=> hermitian and d = 1", "m = 0"));
    } else {
        let dev = model.m_basis.iter().map(|m| m.commutator(&st.e).max_abs()).fold(0.0, f64::max);
        let trivial = dev == 0.0;
        let expected = hermitian && d == 1;
        out.push(CheckResult::boolean(
            "[m,e] = 0 <=> hermitian and d = 1",
            trivial == expected,
            format!("max |[m,e]| = {dev:.3e}, hermitian = {hermitian}, d = {d}"),
        ));
    }
    let center = model.centralizer_in(k, k).len();
    let want = usize::from(hermitian);
    out.push(CheckResult::boolean("dim Cent k", center == want, format!("dim Cent k = {center}, expected {want}")));
    out
}
