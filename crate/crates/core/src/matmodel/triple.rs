//! The S-triple attached to the highest restricted root and its Cayley
//! transform.

use std::ops::Neg;

use num_traits::Zero;

use super::build::{LieAlgebraModel, ModelError};
use super::datum::RestrictedRootDatum;
use crate::exact::{self, rational_sqrt, QMat, Qi};
use crate::report::CheckResult;

/// `(x, e, f)` with `x = x_psi`, `e` in `g_psi` and `f = -theta e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STriple {
    pub x: QMat,
    pub e: QMat,
    pub f: QMat,
}

/// `(h, v, w)` in `g_C`, with `h` in `k_C` and `v, w` in `p_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTriple {
    pub h: QMat,
    pub v: QMat,
    pub w: QMat,
}

fn half() -> Qi {
    Qi::frac(1, 2)
}

/// Pick `e` as the first basis vector of `g_psi`, scaled so that
/// `B(e, theta e) = -1`.
pub fn make_s_triple(model: &LieAlgebraModel, datum: &RestrictedRootDatum) -> Result<STriple, ModelError> {
    make_s_triple_from(model, datum, &datum.g_psi()[0])
}

/// As [`make_s_triple`] with an explicit (nonzero) element of `g_psi`.
pub fn make_s_triple_from(model: &LieAlgebraModel, datum: &RestrictedRootDatum, coords: &[Qi]) -> Result<STriple, ModelError> {
    let broken = |what: &str| ModelError::Broken { id: model.id.clone(), what: what.into() };
    if exact::vec_is_zero(coords) {
        return Err(broken("g_psi is trivial"));
    }
    let e0 = model.elem(coords);
    let q = datum.b(&e0, &model.theta(&e0)).neg();
    if !q.is_real() {
        return Err(broken("B(e, theta e) is not real"));
    }
    let s = rational_sqrt(&q.re).ok_or_else(|| broken("-B(e, theta e) is not a rational square"))?;
    let e = e0.scale(&Qi::real(s).inv());
    let f = model.theta(&e).neg();
    Ok(STriple { x: datum.x_psi.clone(), e, f })
}

/// `h = i(e - f)`, `v = (ix + e + f)/2`, `w = (-ix + e + f)/2`.
pub fn cayley_transform(st: &STriple) -> CayleyTriple {
    let i = Qi::i();
    let ef = st.e.add(&st.f);
    let ix = st.x.scale(&i);
    CayleyTriple {
        h: st.e.sub(&st.f).scale(&i),
        v: ix.add(&ef).scale(&half()),
        w: ix.neg().add(&ef).scale(&half()),
    }
}

/// Inverse transform: `x = -i(v - w)`, `e = (-ih + v + w)/2`, `f = (ih + v + w)/2`.
pub fn inverse_cayley(c: &CayleyTriple) -> STriple {
    let i = Qi::i();
    let vw = c.v.add(&c.w);
    let ih = c.h.scale(&i);
    STriple { x: c.v.sub(&c.w).scale(&i.neg()), e: ih.neg().add(&vw).scale(&half()), f: ih.add(&vw).scale(&half()) }
}

fn dev(a: &QMat, b: &QMat) -> f64 {
    a.sub(b).max_abs()
}

fn sdev(a: &Qi, b: &Qi) -> f64 {
    (a - b).abs_f64()
}

/// Hermitian form `{x, y} = -B(x, sigma_u y)`.
pub fn hermitian(model: &LieAlgebraModel, datum: &RestrictedRootDatum, x: &QMat, y: &QMat) -> Qi {
    datum.b(x, &model.sigma_u(y)).neg()
}

/// Exact checks of the restricted-root and S-triple identities.
pub fn striple_checks(model: &LieAlgebraModel, datum: &RestrictedRootDatum, st: &STriple) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let two = Qi::int(2);
    let (x, e, f) = (&st.x, &st.e, &st.f);
    out.push(CheckResult::exact("[x,e] = 2e", dev(&x.commutator(e), &e.scale(&two)), ""));
    out.push(CheckResult::exact("[x,f] = -2f", dev(&x.commutator(f), &f.scale(&two.clone().neg())), ""));
    out.push(CheckResult::exact("[e,f] = x", dev(&e.commutator(f), x), ""));
    out.push(CheckResult::exact("f = -theta e", dev(f, &model.theta(e).neg()), ""));
    out.push(CheckResult::exact("B(e, theta e) = -1", sdev(&datum.b(e, &model.theta(e)), &Qi::int(-1)), ""));
    out.push(CheckResult::exact("B(x_psi, x_psi) = 2", sdev(&datum.b(x, x), &two), ""));

    let xc = model.coords(x);
    let in_a = exact::in_span(&model.a_basis.iter().map(|a| model.coords(a)).collect::<Vec<_>>(), &xc);
    out.push(CheckResult::boolean("x_psi in a", in_a, ""));
    let a_coords = a_coordinates(model, x);
    let psi_x = datum
        .psi_values()
        .iter()
        .zip(&a_coords)
        .fold(Qi::zero(), |acc, (p, c)| &acc + &(&Qi::real(p.clone()) * c));
    out.push(CheckResult::exact("psi(x_psi) = 2", sdev(&psi_x, &two), ""));

    // s(h) = h - psi(h) x_psi negates x_psi, fixes ker psi and preserves B on a.
    let reflect = |h: &QMat| -> QMat {
        let hc = a_coordinates(model, h);
        let ph = datum.psi_values().iter().zip(&hc).fold(Qi::zero(), |acc, (p, c)| &acc + &(&Qi::real(p.clone()) * c));
        h.sub(&x.scale(&ph))
    };
    let mut refl_dev = dev(&reflect(x), &x.neg());
    for a in &model.a_basis {
        for b in &model.a_basis {
            refl_dev = refl_dev.max(sdev(&datum.b(&reflect(a), &reflect(b)), &datum.b(a, b)));
        }
    }
    out.push(CheckResult::exact("s_psi negates x_psi and is B-orthogonal", refl_dev, ""));

    out.push(CheckResult::boolean("e in g_psi", exact::in_span(datum.g_psi(), &model.coords(e)), ""));
    out.push(CheckResult::boolean(
        "Cent n = g_psi",
        exact::same_span(&datum.cent_n, datum.g_psi()),
        format!("dim Cent n = {}, dim g_psi = {}", datum.cent_n.len(), datum.d()),
    ));
    let decomposition: usize = datum.zero_space.len() + (0..datum.roots.len()).map(|i| datum.mult(i)).sum::<usize>();
    out.push(CheckResult::boolean(
        "g = m + a + sum of root spaces",
        decomposition == model.dim(),
        format!("{decomposition} of {}", model.dim()),
    ));
    out
}

/// Coefficients of an element of `a` in `model.a_basis`.
pub fn a_coordinates(model: &LieAlgebraModel, h: &QMat) -> Vec<Qi> {
    let cols: Vec<Vec<Qi>> = model.a_basis.iter().map(|a| model.coords(a)).collect();
    let m = QMat::from_columns(&cols);
    let target = model.coords(h);
    // The columns are independent; solve on an invertible block of rows.
    let (_, pivots) = exact::rref(m.transpose().to_rows());
    let block = QMat::from_rows(pivots.iter().map(|&p| m.row(p)).collect());
    let rhs: Vec<Qi> = pivots.iter().map(|&p| target[p].clone()).collect();
    block.inverse().expect("a basis independent").mul_vec(&rhs)
}

/// Exact checks of the Cayley triple identities.
pub fn cayley_checks(model: &LieAlgebraModel, datum: &RestrictedRootDatum, st: &STriple, c: &CayleyTriple) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let two = Qi::int(2);
    let i = Qi::i();
    let (h, v, w) = (&c.h, &c.v, &c.w);
    let def_dev = dev(h, &st.e.sub(&st.f).scale(&i))
        .max(dev(v, &st.x.scale(&i).add(&st.e).add(&st.f).scale(&half())))
        .max(dev(w, &st.x.scale(&i).neg().add(&st.e).add(&st.f).scale(&half())));
    out.push(CheckResult::exact("Cayley definitions", def_dev, ""));
    let rel = dev(&h.commutator(v), &v.scale(&two))
        .max(dev(&h.commutator(w), &w.scale(&two.clone().neg())))
        .max(dev(&v.commutator(w), h));
    out.push(CheckResult::exact("(h,v,w) is an S-triple", rel, ""));
    let back = inverse_cayley(c);
    out.push(CheckResult::exact(
        "round trip recovers (x,e,f)",
        dev(&back.x, &st.x).max(dev(&back.e, &st.e)).max(dev(&back.f, &st.f)),
        "",
    ));
    out.push(CheckResult::exact("theta h = h", dev(&model.theta(h), h), ""));
    out.push(CheckResult::exact("theta v = -v, theta w = -w", dev(&model.theta(v), &v.neg()).max(dev(&model.theta(w), &w.neg())), ""));
    out.push(CheckResult::exact("B(v,w) = 1", sdev(&datum.b(v, w), &Qi::int(1)), ""));
    out.push(CheckResult::exact("w = -sigma_u v", dev(w, &model.sigma_u(v).neg()), ""));
    out.push(CheckResult::exact("B(h,h) = 2", sdev(&datum.b(h, h), &two), ""));
    out.push(CheckResult::exact("{v,v} = 1", sdev(&hermitian(model, datum, v, v), &Qi::int(1)), ""));

    let d = model.dim();
    let mut gram = QMat::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            gram[(a, b)] = hermitian(model, datum, &model.basis[a], &model.basis[b]);
        }
    }
    // The basis is real, so the Gram matrix of {.,.} is real symmetric.
    out.push(CheckResult::boolean("{.,.} positive definite", gram.is_real() && exact::is_positive_definite(&gram), ""));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matmodel::{build_model, restricted_root_datum, Positivity};

    fn triple(id: &str) -> (LieAlgebraModel, RestrictedRootDatum, STriple, CayleyTriple) {
        let m = build_model(id).unwrap();
        let d = restricted_root_datum(&m, Positivity::Lex).unwrap();
        let st = make_s_triple(&m, &d).unwrap();
        let c = cayley_transform(&st);
        (m, d, st, c)
    }

    #[test]
    fn sl2r_triple_is_standard() {
        let (_, _, st, c) = triple("sl2R");
        assert_eq!(st.x, QMat::from_int_rows(&[&[1, 0], &[0, -1]]));
        assert_eq!(st.e, QMat::unit(2, 0, 1));
        assert_eq!(st.f, QMat::unit(2, 1, 0));
        let i = Qi::i();
        assert_eq!(c.h, QMat::unit(2, 0, 1).sub(&QMat::unit(2, 1, 0)).scale(&i));
        let v = st.x.scale(&i).add(&QMat::unit(2, 0, 1)).add(&QMat::unit(2, 1, 0)).scale(&Qi::frac(1, 2));
        assert_eq!(c.v, v);
    }

    #[test]
    fn sl3r_triple_is_standard() {
        let (_, _, st, _) = triple("sl3R");
        assert_eq!(st.e, QMat::unit(3, 0, 2));
        assert_eq!(st.f, QMat::unit(3, 2, 0));
    }

    #[test]
    fn all_identities_exact() {
        for id in ["sl2R", "sl3R", "su21", "sp4R", "sl2H"] {
            let (m, d, st, c) = triple(id);
            for chk in striple_checks(&m, &d, &st).into_iter().chain(cayley_checks(&m, &d, &st, &c)) {
                assert!(chk.pass, "{id}: {} {:?}", chk.name, chk.max_abs_deviation);
            }
        }
    }

    #[test]
    fn round_trip_is_inverse() {
        let (_, _, st, c) = triple("su21");
        assert_eq!(inverse_cayley(&c), st);
        assert_eq!(cayley_transform(&inverse_cayley(&c)), c);
    }

    #[test]
    fn zero_vector_rejected() {
        let m = build_model("sl2R").unwrap();
        let d = restricted_root_datum(&m, Positivity::Lex).unwrap();
        assert!(make_s_triple_from(&m, &d, &vec![Qi::zero(); 3]).is_err());
    }
}
