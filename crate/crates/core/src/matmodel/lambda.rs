//! The weight `lambda` of the extremal vector `v` and the `X = -X` test.

use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::build::{LieAlgebraModel, ModelError};
use super::datum::RestrictedRootDatum;
use super::triple::{CayleyTriple, STriple};
use crate::exact::{self, QMat, Qi, Rational};
use crate::report::CheckResult;
use crate::rootsys::{dominant_for_cartan, RootSystem, RootSystemLabel, Weight};

/// Roots of `k_C` relative to a Cartan subalgebra `t` of `k`, as real
/// functionals `a` with `ad t_j = -i a(t_j)` on the root space.
#[derive(Debug, Clone)]
pub struct KRootData {
    pub roots: Vec<Vec<f64>>,
    pub simple: Vec<Vec<f64>>,
    pub cartan: Vec<Vec<i64>>,
    /// Largest distance of a computed Cartan entry from an integer.
    pub cartan_rounding: f64,
}

#[derive(Debug, Clone)]
pub struct LambdaData {
    /// `z = e + theta e`, spanning the direction of `nu` in `k`.
    pub z: QMat,
    pub k_nu: Vec<QMat>,
    /// `dim k - dim k_nu`.
    pub orbit_dim: usize,
    /// Cartan subalgebra of `k` containing `z`.
    pub t: Vec<QMat>,
    pub k_roots: KRootData,
    /// `lambda` in fundamental-weight coordinates of the semisimple part.
    pub lambda_fund: Vec<i64>,
    pub lambda_rounding: f64,
    pub dominant: Weight,
    pub neg_dominant: Weight,
    /// `B(z, c)` on a basis of the center of `k`.
    pub central_character: Vec<Rational>,
    pub x_equals_minus_x: bool,
}

fn to_f64(q: &Qi) -> f64 {
    q.re.to_f64().unwrap_or(f64::NAN)
}

const GENERIC: [f64; 8] = [
    1.0,
    std::f64::consts::SQRT_2,
    1.732_050_807_568_877_2,
    2.236_067_977_499_79,
    2.645_751_311_064_590_6,
    3.316_624_790_355_4,
    3.605_551_275_463_989,
    4.123_105_625_617_661,
];

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-7 * (1.0 + x.abs().max(y.abs())))
}

/// Maximal abelian subalgebra of `k` containing `z`, by greedy extension.
pub fn cartan_of_k_containing(model: &LieAlgebraModel, z: &QMat) -> Vec<QMat> {
    let mut t = vec![z.clone()];
    loop {
        let t_coords: Vec<Vec<Qi>> = t.iter().map(|x| model.coords(x)).collect();
        let cent = model.centralizer_in(model.k_basis(), &t);
        match cent.into_iter().find(|y| !exact::in_span(&t_coords, &model.coords(y))) {
            Some(y) => t.push(y),
            None => return t,
        }
    }
}

fn k_roots(model: &LieAlgebraModel, datum: &RestrictedRootDatum, t: &[QMat]) -> Result<KRootData, String> {
    let k = model.k_dim;
    let kb = model.k_basis();
    let gram = DMatrix::from_fn(k, k, |i, j| -to_f64(&datum.b(&kb[i], &kb[j])));
    let l = Cholesky::new(gram).ok_or("-B not positive definite on k")?.l();
    let lt = l.transpose();
    let lt_inv = lt.clone().try_inverse().ok_or("singular Cholesky factor")?;
    let skew: Vec<DMatrix<f64>> = t
        .iter()
        .map(|x| {
            let a = model.ad_block(x, 0..k);
            let af = DMatrix::from_fn(k, k, |i, j| to_f64(&a[(i, j)]));
            &lt * af * &lt_inv
        })
        .collect();
    let herm = |m: &DMatrix<f64>| m.map(|x| Complex64::new(0.0, x));
    let mut generic = DMatrix::<f64>::zeros(k, k);
    for (c, s) in GENERIC.iter().cycle().zip(&skew) {
        generic += s * *c;
    }
    let eig = SymmetricEigen::new(herm(&generic));
    let mut found: Vec<(f64, Vec<f64>)> = Vec::new();
    for (idx, &mu) in eig.eigenvalues.iter().enumerate() {
        if mu.abs() < 1e-7 {
            continue;
        }
        let u = eig.eigenvectors.column(idx).into_owned();
        let mut vals = Vec::with_capacity(skew.len());
        for s in &skew {
            let hs = herm(s);
            let hu = &hs * &u;
            let a = u.dotc(&hu).re;
            if (&hu - &u * Complex64::new(a, 0.0)).norm() > 1e-7 {
                return Err("eigenvalues of the generic element are not simple".into());
            }
            vals.push(a);
        }
        found.push((mu, vals));
    }
    if found.len() + t.len() != k {
        return Err(format!("{} roots found for dim k = {k}, dim t = {}", found.len(), t.len()));
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0));
    let roots: Vec<Vec<f64>> = found.iter().map(|(_, v)| v.clone()).collect();
    let positive: Vec<&Vec<f64>> = found.iter().filter(|(mu, _)| *mu > 0.0).map(|(_, v)| v).collect();
    let is_root = |v: &[f64]| positive.iter().any(|p| close(p, v));
    let simple: Vec<Vec<f64>> = positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let d: Vec<f64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                is_root(&d)
            })
        })
        .map(|a| (*a).clone())
        .collect();

    let tg = DMatrix::from_fn(t.len(), t.len(), |i, j| -to_f64(&datum.b(&t[i], &t[j])));
    let tg_inv = tg.try_inverse().ok_or("-B degenerate on t")?;
    let ip = |a: &[f64], b: &[f64]| -> f64 {
        let av = nalgebra::DVector::from_column_slice(a);
        let bv = nalgebra::DVector::from_column_slice(b);
        av.dot(&(&tg_inv * bv))
    };
    let mut rounding: f64 = 0.0;
    let cartan = simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| {
                    let x = 2.0 * ip(ai, aj) / ip(aj, aj);
                    rounding = rounding.max((x - x.round()).abs());
                    x.round() as i64
                })
                .collect()
        })
        .collect();
    Ok(KRootData { roots, simple, cartan, cartan_rounding: rounding })
}

/// Compute `z`, `k_nu`, a Cartan subalgebra of `k` through `z`, the weight
/// `lambda(x) = B(h, x)` and the comparison of `lambda` with `-lambda`.
pub fn lambda_data(
    model: &LieAlgebraModel,
    datum: &RestrictedRootDatum,
    st: &STriple,
    _c: &CayleyTriple,
) -> Result<LambdaData, ModelError> {
    let broken = |what: String| ModelError::Broken { id: model.id.clone(), what };
    let z = st.e.add(&model.theta(&st.e));
    let k_nu = model.centralizer_in(model.k_basis(), std::slice::from_ref(&z));
    let orbit_dim = model.k_dim - k_nu.len();
    let t = cartan_of_k_containing(model, &z);
    let kr = k_roots(model, datum, &t).map_err(broken)?;

    // lambda(t_j) = B(h, t_j) = i B(z, t_j) = -i (-B(z, t_j)).
    let lam: Vec<f64> = t.iter().map(|x| -to_f64(&datum.b(&z, x))).collect();
    let tg = DMatrix::from_fn(t.len(), t.len(), |i, j| -to_f64(&datum.b(&t[i], &t[j])));
    let tg_inv = tg.try_inverse().ok_or_else(|| broken("-B degenerate on t".into()))?;
    let ip = |a: &[f64], b: &[f64]| -> f64 {
        nalgebra::DVector::from_column_slice(a).dot(&(&tg_inv * nalgebra::DVector::from_column_slice(b)))
    };
    let mut lambda_rounding: f64 = 0.0;
    let lambda_fund: Vec<i64> = kr
        .simple
        .iter()
        .map(|a| {
            let x = 2.0 * ip(&lam, a) / ip(a, a);
            lambda_rounding = lambda_rounding.max((x - x.round()).abs());
            x.round() as i64
        })
        .collect();
    let w = Weight::new(lambda_fund.clone());
    let dominant = dominant_for_cartan(&kr.cartan, &w);
    let neg_dominant = dominant_for_cartan(&kr.cartan, &w.neg());
    let center = model.centralizer_in(model.k_basis(), model.k_basis());
    let central_character: Vec<Rational> = center.iter().map(|c| datum.b(&z, c).re).collect();
    let x_equals_minus_x = dominant == neg_dominant && central_character.iter().all(Zero::is_zero);
    Ok(LambdaData {
        z,
        k_nu,
        orbit_dim,
        t,
        k_roots: kr,
        lambda_fund,
        lambda_rounding,
        dominant,
        neg_dominant,
        central_character,
        x_equals_minus_x,
    })
}

/// Checks on `lambda`, `k_nu` and the `X = -X` dichotomy.
pub fn lambda_checks(
    model: &LieAlgebraModel,
    datum: &RestrictedRootDatum,
    c: &CayleyTriple,
    data: &LambdaData,
    expected_dim_x: u32,
    hermitian: bool,
    k_root_label: Option<RootSystemLabel>,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(CheckResult::boolean(
        "dim k - dim k_nu = dim_X",
        data.orbit_dim == expected_dim_x as usize,
        format!("dim k = {}, dim k_nu = {}, dim_X = {expected_dim_x}", model.k_dim, data.k_nu.len()),
    ));
    let mut dev: f64 = 0.0;
    for x in &data.k_nu {
        let lhs = x.commutator(&c.v);
        let rhs = c.v.scale(&datum.b(&c.h, x));
        dev = dev.max(lhs.sub(&rhs).max_abs());
    }
    out.push(CheckResult::exact("[x,v] = B(h,x) v on k_nu", dev, ""));
    out.push(CheckResult::deviation(
        "lambda integral on the Cartan of k",
        data.lambda_rounding.max(data.k_roots.cartan_rounding),
        1e-6,
        format!("lambda = {:?}", data.lambda_fund),
    ));
    let cc: Vec<String> = data.central_character.iter().map(|x| x.to_string()).collect();
    let detail = format!(
        "X {} -X; dominant(lambda) = {:?}, dominant(-lambda) = {:?}, central character = [{}]",
        if data.x_equals_minus_x { "=" } else { "!=" },
        data.dominant.coords,
        data.neg_dominant.coords,
        cc.join(", ")
    );
    out.push(CheckResult::boolean("X = -X <=> not hermitian", data.x_equals_minus_x != hermitian, detail));
    match k_root_label {
        Some(label) => {
            let rs = RootSystem::build(label);
            let ok = rs.as_ref().is_ok_and(|rs| rs.all_roots.len() == data.k_roots.roots.len() && rs.rank() == data.k_roots.simple.len());
            out.push(CheckResult::boolean(
                "roots of k match k_root_label",
                ok,
                format!("{} roots, semisimple rank {}; catalog {label}", data.k_roots.roots.len(), data.k_roots.simple.len()),
            ));
        }
        None => out.push(CheckResult::skipped("roots of k match k_root_label", "no label in catalog")),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matmodel::{build_model, cayley_transform, make_s_triple, restricted_root_datum, Positivity};

    fn data(id: &str) -> (LieAlgebraModel, LambdaData) {
        let m = build_model(id).unwrap();
        let d = restricted_root_datum(&m, Positivity::Lex).unwrap();
        let st = make_s_triple(&m, &d).unwrap();
        let c = cayley_transform(&st);
        let l = lambda_data(&m, &d, &st, &c).unwrap();
        (m, l)
    }

    #[test]
    fn sl2r_point_orbit() {
        let (m, l) = data("sl2R");
        assert_eq!(l.k_nu.len(), m.k_dim);
        assert_eq!(l.orbit_dim, 0);
        assert!(!l.x_equals_minus_x);
    }

    #[test]
    fn sl3r_lambda_self_dual() {
        let (_, l) = data("sl3R");
        assert_eq!(l.orbit_dim, 2);
        assert_eq!(l.k_roots.cartan, vec![vec![2]]);
        assert!(l.x_equals_minus_x);
    }

    #[test]
    fn su21_central_character() {
        let (_, l) = data("su21");
        assert_eq!(l.orbit_dim, 2);
        assert_eq!(l.central_character.len(), 1);
        assert!(!l.central_character[0].is_zero());
        assert!(!l.x_equals_minus_x);
    }
}
