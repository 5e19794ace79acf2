//! The four sampled checks.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::gram::{induced_gram, kks_gram, matched_frames, Direction, OrbitPointParam, Side};
use super::numeric::{cmax, complexify, CVec, NumModel, RVec};
use super::{run_sampled, GramReport};

/// Default tolerance of the closed-form checks.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Default tolerance of the finite-difference checks.
pub const FINITE_DIFFERENCE_TOL: f64 = 1e-6;

const FD_STEP: f64 = 1e-6;
const MAX_CONDITION: f64 = 1e8;
const I: Complex64 = Complex64::new(0.0, 1.0);

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn random_k(m: &NumModel, rng: &mut ChaCha8Rng) -> RVec {
    RVec::from_fn(m.dim, |i, _| if i < m.k_dim { gaussian(rng) } else { 0.0 })
}

fn random_p_c(m: &NumModel, rng: &mut ChaCha8Rng) -> CVec {
    CVec::from_fn(m.dim, |i, _| if i < m.k_dim { Complex64::new(0.0, 0.0) } else { Complex64::new(gaussian(rng), gaussian(rng)) })
}

fn random_combination(vs: &[RVec], dim: usize, scale: f64, rng: &mut ChaCha8Rng) -> RVec {
    vs.iter().fold(RVec::zeros(dim), |acc, v| acc + v * (scale * gaussian(rng)))
}

/// `t` log-uniform in `[1/4, 4]`.
fn random_t(rng: &mut ChaCha8Rng) -> f64 {
    let l = 4f64.ln();
    rng.random_range(-l..l).exp()
}

fn random_point(m: &NumModel, rng: &mut ChaCha8Rng, side: Side) -> OrbitPointParam {
    let k = random_k(m, rng);
    OrbitPointParam { k_param: vec![k], t: random_t(rng), side }
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

/// Theorem-level Gram identity on matched frames at sampled points, both
/// scaling laws, and the base-point anchor block.
pub fn verify_beta_symplectic(m: &NumModel, samples: usize, tol: f64, seed: u64) -> GramReport {
    let base = super::gram::base_point_deviation(m);
    let (base_dev, base_z) = match &base {
        Ok((d, _, gz)) => (*d, Some(gz.clone())),
        Err(_) => (f64::NAN, None),
    };
    let components = ["X~ vs Z", "Z scaling", "X~ scaling", "K-invariance", "base point and anchor"];
    let mut report = run_sampled("beta symplectic", &components, samples, tol, seed, |rng| {
        let p = random_point(m, rng, Side::Xtilde);
        let (fx, fz) = matched_frames(m, &p);
        let gx = induced_gram(m, &fx).ok()?;
        let gz = kks_gram(m, &fz).ok()?;
        let mut fx1 = fx.clone();
        fx1.base = fx.base.scaled(1.0);
        let mut fz1 = fz.clone();
        fz1.base = fz.base.scaled(1.0);
        let gx1 = induced_gram(m, &fx1).ok()?;
        let gz1 = kks_gram(m, &fz1).ok()?;
        let inv = base_z.as_ref().map_or(f64::NAN, |b| (&gz - b * p.t).amax());
        Some(vec![(&gx - &gz).amax(), (&gz - &gz1 * p.t).amax(), (&gx - &gx1 * p.t).amax(), inv, base_dev])
    });
    if let Err(e) = base {
        report.note = format!("base point: {e}");
    }
    report
}

/// The map `b` on `u = t Ad k(v)`.
pub fn ks_correspondence_check(m: &NumModel, samples: usize, tol: f64, seed: u64) -> GramReport {
    let components = ["{u,u}^1/2 = t", "b(u) = t Ad k(e)", "{b(u),b(u)}^1/2 = t", "K-equivariance", "homogeneity"];
    let e = complexify(&m.e);
    let base = cmax(&(m.ks_map(&m.v) - &e));
    let mut report = run_sampled("Kostant-Sekiguchi map", &components, samples, tol, seed, |rng| {
        let p = random_point(m, rng, Side::E);
        let adk = complexify_mat(&p.ad_k(m));
        let u = &adk * &m.v * Complex64::new(p.t, 0.0);
        let b = m.ks_map(&u);
        let want = &adk * &e * Complex64::new(p.t, 0.0);
        let k2 = complexify_mat(&m.exp_ad(&random_k(m, rng)));
        let equiv = cmax(&(m.ks_map(&(&k2 * &u)) - &k2 * &b));
        let s = random_t(rng);
        let homog = cmax(&(m.ks_map(&(&u * Complex64::new(s, 0.0))) - &b * Complex64::new(s, 0.0)));
        Some(vec![
            (m.herm(&u, &u).re.sqrt() - p.t).abs(),
            cmax(&(&b - want)),
            (m.herm(&b, &b).re.sqrt() - p.t).abs(),
            equiv,
            homog,
        ])
    });
    report.note = format!("b(v) = e: {base:.3e}");
    report.max_abs_deviation = report.max_abs_deviation.max(base);
    report.pass = report.max_abs_deviation <= tol;
    report
}

fn complexify_mat(a: &DMatrix<f64>) -> DMatrix<Complex64> {
    a.map(|x| Complex64::new(x, 0.0))
}

/// Functions on `X~` realized on the cone `E` through `u = t Ad k(v)`.
struct EFunctions<'a> {
    m: &'a NumModel,
}

impl EFunctions<'_> {
    fn r(&self, u: &CVec) -> f64 {
        self.m.herm(u, u).re.sqrt()
    }

    fn dr(&self, u: &CVec, du: &CVec) -> Complex64 {
        Complex64::new(self.m.herm(du, u).re / self.r(u), 0.0)
    }

    /// `r phi~^x = (1/pi) B(p(b(u)), x)`.
    fn moment(&self, u: &CVec, x: &CVec) -> Complex64 {
        self.m.b(&self.m.k_part(&self.m.ks_map(u)), x) / PI
    }

    fn d_moment(&self, u: &CVec, du: &CVec, x: &CVec) -> Complex64 {
        let h = Complex64::new(FD_STEP, 0.0);
        (self.moment(&(u + du * h), x) - self.moment(&(u - du * h), x)) / (2.0 * FD_STEP)
    }

    /// `phi~^x = moment / r`.
    fn d_phi(&self, u: &CVec, du: &CVec, x: &CVec) -> Complex64 {
        let r = self.r(u);
        (self.d_moment(u, du, x) - self.moment(u, x) / r * self.dr(u, du)) / r
    }

    /// `s~_w(u) = {w, u}`, conjugate-linear in `u` so that
    /// `s~(u c) = c^-1 s~(u)` for `|c| = 1`.
    fn section(&self, w: &CVec, u: &CVec) -> Complex64 {
        self.m.herm(w, u)
    }
}

/// Bracket `[f, g] = dg(xi_f)` where `iota(xi_f) omega = df`.
fn bracket(omega_t_inv: &DMatrix<Complex64>, df: &CVec, dg: &CVec) -> Complex64 {
    let a = omega_t_inv * df;
    a.iter().zip(dg.iter()).map(|(x, y)| x * y).sum()
}

/// The point `u` of `E`, the frame fields as vectors in `p_C`, and the
/// inverse transpose of the induced Gram matrix.
struct PoissonFrame {
    u: CVec,
    tangents: Vec<CVec>,
    omega_t_inv: DMatrix<Complex64>,
}

/// `None` when the Gram matrix is too ill-conditioned.
fn poisson_frame(m: &NumModel, p: &OrbitPointParam) -> Option<PoissonFrame> {
    let (fx, _) = matched_frames(m, p);
    let omega = induced_gram(m, &fx).ok()?;
    let sv = omega.clone().singular_values();
    if sv.max() / sv.min() > MAX_CONDITION {
        return None;
    }
    let omega_t_inv = complexify_mat(&omega.transpose().try_inverse()?);
    let u = complexify_mat(&p.ad_k(m)) * &m.v * Complex64::new(p.t, 0.0);
    let tangents = fx
        .directions
        .iter()
        .map(|d| match d {
            Direction::Radial => &u * Complex64::new(-2.0, 0.0),
            Direction::Eta(y) => -m.bracket(&complexify(y), &u),
            Direction::Xi(_) => unreachable!("matched X~ frames hold no Xi directions"),
        })
        .collect();
    Some(PoissonFrame { u, tangents, omega_t_inv })
}

/// Poisson relations on `X~`, with brackets assembled from the induced
/// Gram matrix and differentials along the frame.
pub fn poisson_identities_check(m: &NumModel, samples: usize, tol: f64, seed: u64) -> GramReport {
    let components = [
        "[r,r] = 0",
        "[r,phi~] = 0",
        "[r,s~] = 2 pi i s~",
        "[r phi~x, r phi~y] = r phi~[x,y]",
        "[r phi~, s~] = eta s~",
    ];
    let fns = EFunctions { m };
    run_sampled("Poisson identities", &components, samples, tol, seed, |rng| {
        let p = random_point(m, rng, Side::Xtilde);
        let PoissonFrame { u, tangents, omega_t_inv } = poisson_frame(m, &p)?;
        let diff = |f: &dyn Fn(&CVec) -> Complex64| CVec::from_iterator(tangents.len(), tangents.iter().map(f));

        let x = complexify(&random_k(m, rng));
        let y = complexify(&random_k(m, rng));
        let w = random_p_c(m, rng);
        let xy = m.bracket(&x, &y);

        let d_r = diff(&|du| fns.dr(&u, du));
        let d_phi = diff(&|du| fns.d_phi(&u, du, &x));
        let d_fx = diff(&|du| fns.d_moment(&u, du, &x));
        let d_fy = diff(&|du| fns.d_moment(&u, du, &y));
        let d_s = diff(&|du| fns.section(&w, du));
        let s = fns.section(&w, &u);

        let r_r = bracket(&omega_t_inv, &d_r, &d_r);
        let r_phi = bracket(&omega_t_inv, &d_r, &d_phi);
        let r_s = bracket(&omega_t_inv, &d_r, &d_s);
        let fx_fy = bracket(&omega_t_inv, &d_fx, &d_fy);
        let fx_s = bracket(&omega_t_inv, &d_fx, &d_s);
        let eta_s = fns.section(&w, &-m.bracket(&x, &u));
        Some(vec![
            r_r.norm(),
            r_phi.norm(),
            rel(r_s, 2.0 * PI * I * s),
            rel(fx_fy, fns.moment(&u, &xy)),
            rel(fx_s, eta_s),
        ])
    })
}

/// `p(Ad g(e))` lies on `R+ Ad K(z)`: spectra always, full membership on
/// restricted rank one.
pub fn moment_cone_check(m: &NumModel, samples: usize, tol: f64, seed: u64) -> GramReport {
    let full = m.a_basis.len() == 1;
    let components = ["spectral proportionality", "full membership"];
    let z = complexify(&m.z);
    let z_spec = m.k_spectrum(&z, None);
    let z_blocks: Vec<Vec<f64>> = m.blocks.iter().map(|b| m.k_spectrum(&z, Some(b))).collect();
    let z_center: Vec<f64> = m.center.iter().map(|c| m.b_real(&m.z, c)).collect();
    let spec_dev = |a: &[f64], b: &[f64], s: f64| -> f64 {
        let scale = b.iter().fold(0.0f64, |acc, x| acc.max(x.abs())) * s;
        a.iter().zip(b).map(|(x, y)| (x - s * y).abs()).fold(0.0, f64::max) / scale.max(1.0)
    };
    let mut report = run_sampled("moment cone", &components, samples, tol, seed, |rng| {
        let yk = random_k(m, rng);
        let ha = random_combination(&m.a_basis, m.dim, 0.5, rng);
        let nn = random_combination(&m.n_basis, m.dim, 0.5, rng);
        let adg = m.exp_ad(&yk) * m.exp_ad(&ha) * m.exp_ad(&nn);
        let f = &adg * &m.e;
        let pf = RVec::from_fn(m.dim, |i, _| if i < m.k_dim { f[i] } else { 0.0 });
        let ratio = m.b_real(&pf, &pf) / m.b_real(&m.z, &m.z);
        if !(ratio > 0.0) {
            return None;
        }
        let s = ratio.sqrt();
        let pfc = complexify(&pf);
        let spectral = spec_dev(&m.k_spectrum(&pfc, None), &z_spec, s);
        let membership = if full {
            let blocks = m
                .blocks
                .iter()
                .zip(&z_blocks)
                .map(|(b, zb)| spec_dev(&m.k_spectrum(&pfc, Some(b)), zb, s))
                .fold(0.0, f64::max);
            let central = m
                .center
                .iter()
                .zip(&z_center)
                .map(|(c, zc)| (m.b_real(&pf, c) - s * zc).abs() / (s * zc.abs()).max(1.0))
                .fold(0.0, f64::max);
            blocks.max(central)
        } else {
            0.0
        };
        Some(vec![spectral, membership])
    });
    report.note = if full {
        "full membership by block spectra and central character (restricted rank 1)".into()
    } else {
        "spectral condition only; necessary, not sufficient (restricted rank > 1)".into()
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matmodel::{Positivity, Prepared};
    use crate::realform::Catalog;

    fn num(id: &str) -> NumModel {
        NumModel::new(&Prepared::new(&Catalog::shipped(), id, Positivity::Lex).unwrap())
    }

    #[test]
    fn identity_lands_on_half_z() {
        let m = num("su21");
        let pe = m.k_part(&complexify(&m.e));
        assert!(cmax(&(pe - complexify(&m.z) * Complex64::new(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn n_fixes_e() {
        let m = num("sl3R");
        for nb in &m.n_basis {
            let f = m.exp_ad(nb) * &m.e;
            assert!((f - &m.e).amax() < 1e-13);
        }
    }

    #[test]
    fn sl2r_checks_pass() {
        let m = num("sl2R");
        let b = verify_beta_symplectic(&m, 20, 1e-10, 1);
        assert!(b.pass, "{b:?}");
        let k = ks_correspondence_check(&m, 20, 1e-10, 1);
        assert!(k.pass, "{k:?}");
        let p = poisson_identities_check(&m, 10, 1e-6, 1);
        assert!(p.pass, "{p:?}");
        let c = moment_cone_check(&m, 20, 1e-9, 1);
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn complex_linear_section_has_opposite_weight() {
        let m = num("sl3R");
        let fns = EFunctions { m: &m };
        let p = OrbitPointParam { k_param: vec![m.k_nu_perp[0].clone()], t: 1.5, side: Side::Xtilde };
        let PoissonFrame { u, tangents, omega_t_inv } = poisson_frame(&m, &p).unwrap();
        let w = m.theta(&m.sigma(&m.v)) + &m.v;
        let d_r = CVec::from_iterator(tangents.len(), tangents.iter().map(|du| fns.dr(&u, du)));
        let d_lin = CVec::from_iterator(tangents.len(), tangents.iter().map(|du| m.herm(du, &w)));
        let d_anti = CVec::from_iterator(tangents.len(), tangents.iter().map(|du| fns.section(&w, du)));
        let lin = m.herm(&u, &w);
        assert!(lin.norm() > 0.1);
        assert!(rel(bracket(&omega_t_inv, &d_r, &d_lin), -2.0 * PI * I * lin) < 1e-9);
        assert!(rel(bracket(&omega_t_inv, &d_r, &d_anti), 2.0 * PI * I * lin.conj()) < 1e-9);
    }

    #[test]
    fn same_seed_same_report() {
        let m = num("su21");
        let a = poisson_identities_check(&m, 8, 1e-6, 7);
        let b = poisson_identities_check(&m, 8, 1e-6, 7);
        assert_eq!(a.components, b.components);
        let c = poisson_identities_check(&m, 8, 1e-6, 8);
        assert_ne!(a.components, c.components);
    }
}
