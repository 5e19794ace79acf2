//! Gram matrices of the KKS form on `Z` and of the induced form on `X~`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use super::numeric::{NumModel, RVec};
use super::SympError;

/// Which space a sampled point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Xtilde,
    Z,
    E,
    O,
}

/// The point `t (k . base)` on one of the four models of the same space,
/// with `k` the product of `exp` of the listed elements of `k`.
#[derive(Debug, Clone)]
pub struct OrbitPointParam {
    pub k_param: Vec<RVec>,
    pub t: f64,
    pub side: Side,
}

impl OrbitPointParam {
    pub fn base(side: Side) -> Self {
        OrbitPointParam { k_param: Vec::new(), t: 1.0, side }
    }

    /// `Ad k` on coordinates.
    pub fn ad_k(&self, m: &NumModel) -> DMatrix<f64> {
        let mut acc = DMatrix::identity(m.dim, m.dim);
        for y in &self.k_param {
            acc *= m.exp_ad(y);
        }
        acc
    }

    pub fn on(&self, side: Side) -> Self {
        OrbitPointParam { side, ..self.clone() }
    }

    pub fn scaled(&self, t: f64) -> Self {
        OrbitPointParam { t, ..self.clone() }
    }
}

/// A tangent direction at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum Direction {
    /// `-2 r d/dr` on `X~`.
    Radial,
    /// `eta^y` on `X~`, `y` in `k`.
    Eta(RVec),
    /// `Xi^y` on `Z`, `y` in `g`.
    Xi(RVec),
}

impl Direction {
    pub fn label(&self) -> &'static str {
        match self {
            Direction::Radial => "-2r d/dr",
            Direction::Eta(_) => "eta",
            Direction::Xi(_) => "Xi",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub base: OrbitPointParam,
    pub directions: Vec<Direction>,
}

/// Matched frames at `t k . o` and at `beta` of it: `-2r d/dr` with
/// `Xi^{Ad k x_psi}`, and `eta^y` with `Xi^y` for `y` running over
/// `Ad k z` and `Ad k` of the orthonormal complement of `k_nu`.
pub fn matched_frames(m: &NumModel, point: &OrbitPointParam) -> (TangentFrame, TangentFrame) {
    let adk = point.ad_k(m);
    let ys: Vec<RVec> = std::iter::once(&m.z).chain(&m.k_nu_perp).map(|y| &adk * y).collect();
    let mut xt = vec![Direction::Radial];
    xt.extend(ys.iter().cloned().map(Direction::Eta));
    let mut zs = vec![Direction::Xi(&adk * &m.x_psi)];
    zs.extend(ys.into_iter().map(Direction::Xi));
    (
        TangentFrame { base: point.on(Side::Xtilde), directions: xt },
        TangentFrame { base: point.on(Side::Z), directions: zs },
    )
}

fn check_rank(g: &DMatrix<f64>) -> Result<(), SympError> {
    let n = g.nrows();
    if n == 0 {
        return Ok(());
    }
    let sv = g.clone().singular_values();
    let top = sv.max();
    let rank = sv.iter().filter(|s| **s > 1e-9 * top.max(1e-300)).count();
    if rank < n {
        Err(SympError::SingularFrame { rank, size: n })
    } else {
        Ok(())
    }
}

/// `M[i][j] = <rho, [y_j, y_i]> = (t/pi) B(Ad k e, [y_j, y_i])` at
/// `rho = t Coad k (epsilon)`.
pub fn kks_gram(m: &NumModel, frame: &TangentFrame) -> Result<DMatrix<f64>, SympError> {
    if frame.base.side != Side::Z {
        return Err(SympError::WrongSide { want: Side::Z, got: frame.base.side });
    }
    let ys = frame
        .directions
        .iter()
        .map(|d| match d {
            Direction::Xi(y) => Ok(y),
            other => Err(SympError::WrongDirection(other.label())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rho = frame.base.ad_k(m) * &m.e * (frame.base.t / PI);
    let n = ys.len();
    let g = DMatrix::from_fn(n, n, |i, j| m.b_real(&rho, &m.bracket_real(ys[j], ys[i])));
    check_rank(&g)?;
    Ok(g)
}

/// Gram matrix of `dr ^ alpha + r omega~` at `t k . o`.
///
/// With `eta^y = xi~^y + phi~^y zeta` and `<alpha, zeta> = -1` one has
/// `dr(eta^y) = 0`, `alpha(eta^y) = -B(Ad k z, y) / 2pi`,
/// `omega~(eta^x, eta^y) = B(Ad k z, [y, x]) / 2pi`, and `-2r d/dr` has
/// `dr = -2t`, `alpha = 0` and no horizontal part.
pub fn induced_gram(m: &NumModel, frame: &TangentFrame) -> Result<DMatrix<f64>, SympError> {
    if frame.base.side != Side::Xtilde {
        return Err(SympError::WrongSide { want: Side::Xtilde, got: frame.base.side });
    }
    let t = frame.base.t;
    let kz = frame.base.ad_k(m) * &m.z;
    let two_pi = 2.0 * PI;
    let mut dr = Vec::new();
    let mut alpha = Vec::new();
    let mut ys: Vec<Option<&RVec>> = Vec::new();
    for d in &frame.directions {
        match d {
            Direction::Radial => {
                dr.push(-2.0 * t);
                alpha.push(0.0);
                ys.push(None);
            }
            Direction::Eta(y) => {
                dr.push(0.0);
                alpha.push(-m.b_real(&kz, y) / two_pi);
                ys.push(Some(y));
            }
            Direction::Xi(_) => return Err(SympError::WrongDirection("Xi")),
        }
    }
    let n = ys.len();
    let g = DMatrix::from_fn(n, n, |i, j| {
        let horizontal = match (ys[i], ys[j]) {
            (Some(x), Some(y)) => t * m.b_real(&kz, &m.bracket_real(y, x)) / two_pi,
            _ => 0.0,
        };
        dr[i] * alpha[j] - dr[j] * alpha[i] + horizontal
    });
    check_rank(&g)?;
    Ok(g)
}

/// The expected block on `(-2r d/dr, eta^z)` and `(Xi^{x_psi}, Xi^z)` at
/// the base point.
pub fn anchor_block() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, -2.0 / PI, 2.0 / PI, 0.0])
}

/// Largest deviation of the two base-point Grams from each other and of
/// their leading 2x2 blocks from the anchor block.
pub fn base_point_deviation(m: &NumModel) -> Result<(f64, DMatrix<f64>, DMatrix<f64>), SympError> {
    let (fx, fz) = matched_frames(m, &OrbitPointParam::base(Side::Xtilde));
    let gx = induced_gram(m, &fx)?;
    let gz = kks_gram(m, &fz)?;
    let anchor = anchor_block();
    let dx = (gx.view((0, 0), (2, 2)) - &anchor).amax();
    let dz = (gz.view((0, 0), (2, 2)) - &anchor).amax();
    Ok(((&gx - &gz).amax().max(dx).max(dz), gx, gz))
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
    fn sl2r_anchor_entries() {
        let m = num("sl2R");
        let (dev, gx, gz) = base_point_deviation(&m).unwrap();
        assert!(dev < 1e-14);
        assert_eq!(gx.nrows(), 2);
        assert!((gx[(0, 1)] + 2.0 / PI).abs() < 1e-15);
        assert!((gz[(0, 1)] + 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn frame_size_is_dim_z() {
        let cat = Catalog::shipped();
        for id in ["sl3R", "su21", "sp4R", "so34"] {
            let p = Prepared::new(&cat, id, Positivity::Lex).unwrap();
            let m = NumModel::new(&p);
            let (fx, fz) = matched_frames(&m, &OrbitPointParam::base(Side::Xtilde));
            assert_eq!(fx.directions.len() as u32, p.invariants.dim_z, "{id}");
            assert!(induced_gram(&m, &fx).is_ok() && kks_gram(&m, &fz).is_ok());
        }
    }

    #[test]
    fn kks_on_k_matches_x_side() {
        let m = num("sl3R");
        let ys = m.k_nu_perp.clone();
        let f = TangentFrame { base: OrbitPointParam::base(Side::Z), directions: ys.iter().cloned().map(Direction::Xi).collect() };
        let g = kks_gram(&m, &f).unwrap();
        for (i, x) in ys.iter().enumerate() {
            for (j, y) in ys.iter().enumerate() {
                let nu_side = m.b_real(&m.z, &m.bracket_real(y, x)) / (2.0 * PI);
                assert!((g[(i, j)] - nu_side).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn antisymmetric_and_wrong_side_rejected() {
        let m = num("su21");
        let p = OrbitPointParam { k_param: vec![m.k_nu_perp[0].clone()], t: 2.0, side: Side::Xtilde };
        let (fx, fz) = matched_frames(&m, &p);
        let g = induced_gram(&m, &fx).unwrap();
        assert!((&g + g.transpose()).amax() < 1e-15);
        assert!(matches!(kks_gram(&m, &fx), Err(SympError::WrongSide { .. })));
        assert!(matches!(induced_gram(&m, &fz), Err(SympError::WrongSide { .. })));
    }

    #[test]
    fn degenerate_frame_reported() {
        let m = num("sl2R");
        let f = TangentFrame {
            base: OrbitPointParam::base(Side::Z),
            directions: vec![Direction::Xi(m.z.clone()), Direction::Xi(m.z.clone() * 2.0)],
        };
        assert!(matches!(kks_gram(&m, &f), Err(SympError::SingularFrame { rank: 0, size: 2 })));
    }
}
