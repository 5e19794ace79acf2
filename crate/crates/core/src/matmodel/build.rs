//! Construction of matrix models from linear defining conditions.

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{self, QMat, Qi};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("no matrix model for {0}")]
    Unsupported(String),
    #[error("model {id}: {what}")]
    Broken { id: String, what: String },
    #[error("model {id} disagrees with its catalog entry: {what}")]
    CatalogMismatch { id: String, what: String },
}

/// Families with an explicit matrix realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSpec {
    /// `sl(n, R)`.
    SlR(usize),
    /// `su(p, q)` preserving `diag(I_p, -I_q)`.
    Su(usize, usize),
    /// `so(p, q)` preserving `diag(I_p, -I_q)`.
    So(usize, usize),
    /// `sp(4, R)` preserving `[[0, I], [-I, 0]]`.
    Sp4R,
    /// `su*(4) = sl(2, H)`.
    SuStar4,
}

/// Ids (matching catalog ids) of every form with a matrix model.
pub const MODEL_IDS: [&str; 17] = [
    "sl2R", "sl3R", "sl4R", "sl5R", "su11", "su21", "su31", "su41", "su22", "su32", "sp4R", "so23", "so24", "so25",
    "so33", "so34", "sl2H",
];

impl ModelSpec {
    pub fn from_id(id: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::Unsupported(id.to_string());
        let digits = |s: &str| -> Option<(usize, usize)> {
            let b = s.as_bytes();
            (b.len() == 2).then(|| ((b[0] - b'0') as usize, (b[1] - b'0') as usize))
        };
        let spec = match id {
            "sp4R" => ModelSpec::Sp4R,
            "sl2H" => ModelSpec::SuStar4,
            _ if id.starts_with("sl") && id.ends_with('R') => {
                let n: usize = id[2..id.len() - 1].parse().map_err(|_| bad())?;
                ModelSpec::SlR(n)
            }
            _ if id.starts_with("su") => {
                let (p, q) = digits(&id[2..]).ok_or_else(bad)?;
                ModelSpec::Su(p, q)
            }
            _ if id.starts_with("so") => {
                let (p, q) = digits(&id[2..]).ok_or_else(bad)?;
                ModelSpec::So(p, q)
            }
            _ => return Err(bad()),
        };
        let ok = match spec {
            ModelSpec::SlR(n) => (2..=5).contains(&n),
            ModelSpec::Su(p, q) => p >= 1 && q >= 1 && p + q <= 5,
            ModelSpec::So(p, q) => p >= 2 && q >= 2 && p + q <= 7 && !(p == 2 && q == 2) && p <= q,
            ModelSpec::Sp4R | ModelSpec::SuStar4 => true,
        };
        if ok {
            Ok(spec)
        } else {
            Err(bad())
        }
    }

    pub fn size(&self) -> usize {
        match *self {
            ModelSpec::SlR(n) => n,
            ModelSpec::Su(p, q) | ModelSpec::So(p, q) => p + q,
            ModelSpec::Sp4R | ModelSpec::SuStar4 => 4,
        }
    }

    fn is_real(&self) -> bool {
        matches!(self, ModelSpec::SlR(_) | ModelSpec::So(..) | ModelSpec::Sp4R)
    }
}

fn signature(p: usize, q: usize) -> QMat {
    let mut j = QMat::identity(p + q);
    for i in p..p + q {
        j[(i, i)] = Qi::int(-1);
    }
    j
}

fn symplectic(n: usize) -> QMat {
    let mut j = QMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Qi::int(1);
        j[(n + i, i)] = Qi::int(-1);
    }
    j
}

type Constraint = Box<dyn Fn(&QMat) -> QMat>;

/// Real basis of `{X in gl(n, C) : c(X) = 0 for all c}`.
///
/// Unknowns are the real and imaginary parts of the entries; each
/// constraint is real-linear and contributes both parts of its output.
fn solve_constraints(n: usize, constraints: &[Constraint]) -> Vec<QMat> {
    let unknowns: Vec<QMat> = (0..2 * n * n)
        .map(|k| {
            let (part, idx) = (k / (n * n), k % (n * n));
            let u = QMat::unit(n, idx / n, idx % n);
            if part == 0 {
                u
            } else {
                u.scale(&Qi::i())
            }
        })
        .collect();
    let columns: Vec<Vec<Qi>> = unknowns
        .iter()
        .map(|u| constraints.iter().flat_map(|c| c(u).realified()).collect())
        .collect();
    let rows = QMat::from_columns(&columns).to_rows();
    exact::nullspace(rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut m = QMat::zeros(n, n);
            for (coef, u) in v.iter().zip(&unknowns) {
                if !coef.is_zero() {
                    m = m.add(&u.scale(coef));
                }
            }
            m
        })
        .collect()
}

/// Maps matrices in the complex span of a basis to their coefficients.
#[derive(Debug, Clone)]
pub struct Coordinatizer {
    n: usize,
    /// Flat entry indices forming an invertible square block.
    pivots: Vec<usize>,
    /// Inverse of the basis restricted to the pivot entries.
    inverse: QMat,
    basis: Vec<QMat>,
}

impl Coordinatizer {
    pub fn new(n: usize, basis: &[QMat]) -> Self {
        let d = basis.len();
        let rows: Vec<Vec<Qi>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        let (_, pivots) = exact::rref(rows);
        assert_eq!(pivots.len(), d, "basis is not linearly independent over C");
        let block = QMat::from_rows(pivots.iter().map(|&p| basis.iter().map(|b| b.entries()[p].clone()).collect()).collect());
        let inverse = block.inverse().expect("pivot block invertible");
        Coordinatizer { n, pivots, inverse, basis: basis.to_vec() }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn inverse(&self) -> &QMat {
        &self.inverse
    }

    /// Coefficients of `x` in the basis, or `None` if `x` is not in the span.
    pub fn coords(&self, x: &QMat) -> Option<Vec<Qi>> {
        let c = self.coords_unchecked(x);
        (&self.combine(&c) == x).then_some(c)
    }

    pub fn coords_unchecked(&self, x: &QMat) -> Vec<Qi> {
        let rhs: Vec<Qi> = self.pivots.iter().map(|&p| x.entries()[p].clone()).collect();
        self.inverse.mul_vec(&rhs)
    }

    pub fn combine(&self, c: &[Qi]) -> QMat {
        let mut m = QMat::zeros(self.n, self.n);
        for (coef, b) in c.iter().zip(&self.basis) {
            if !coef.is_zero() {
                m = m.add(&b.scale(coef));
            }
        }
        m
    }
}

/// Explicit matrix realization of a real form with its Cartan data.
///
/// The basis lists `k` first, then `p`; on `g` the Cartan involution is
/// `theta(X) = -X^*` in every presentation used here.
#[derive(Debug, Clone)]
pub struct LieAlgebraModel {
    pub id: String,
    pub spec: ModelSpec,
    pub n: usize,
    pub basis: Vec<QMat>,
    pub k_dim: usize,
    pub a_basis: Vec<QMat>,
    pub m_basis: Vec<QMat>,
    coord: Coordinatizer,
}

impl LieAlgebraModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn k_basis(&self) -> &[QMat] {
        &self.basis[..self.k_dim]
    }

    pub fn p_basis(&self) -> &[QMat] {
        &self.basis[self.k_dim..]
    }

    pub fn p_dim(&self) -> usize {
        self.dim() - self.k_dim
    }

    pub fn coordinatizer(&self) -> &Coordinatizer {
        &self.coord
    }

    /// Coordinates of an element of `g_C`; panics if `x` is outside `g_C`.
    pub fn coords(&self, x: &QMat) -> Vec<Qi> {
        self.coord.coords(x).unwrap_or_else(|| panic!("{}: element not in g_C", self.id))
    }

    pub fn try_coords(&self, x: &QMat) -> Option<Vec<Qi>> {
        self.coord.coords(x)
    }

    pub fn elem(&self, c: &[Qi]) -> QMat {
        self.coord.combine(c)
    }

    /// Complex-linear extension of `theta` to `g_C`: negate the `p`
    /// coordinates. On `g` itself this is `X -> -X^*`.
    pub fn theta(&self, x: &QMat) -> QMat {
        let mut c = self.coords(x);
        for v in &mut c[self.k_dim..] {
            *v = -&*v;
        }
        self.elem(&c)
    }

    /// Conjugation of `g_C` fixing `g`: conjugate the coordinates.
    pub fn sigma(&self, x: &QMat) -> QMat {
        self.elem(&exact::vec_conj(&self.coords(x)))
    }

    /// Compact conjugation `theta . sigma`.
    pub fn sigma_u(&self, x: &QMat) -> QMat {
        self.theta(&self.sigma(x))
    }

    /// Matrix of `ad x` in the basis (columns are images of basis vectors).
    pub fn ad(&self, x: &QMat) -> QMat {
        let cols: Vec<Vec<Qi>> = self.basis.iter().map(|b| self.coords(&x.commutator(b))).collect();
        QMat::from_columns(&cols)
    }

    /// `ad x` restricted to a block of basis indices, assuming it preserves it.
    pub fn ad_block(&self, x: &QMat, range: std::ops::Range<usize>) -> QMat {
        let cols: Vec<Vec<Qi>> =
            self.basis[range.clone()].iter().map(|b| self.coords(&x.commutator(b))[range.clone()].to_vec()).collect();
        QMat::from_columns(&cols)
    }

    /// Matrix of `theta` in the basis.
    pub fn theta_matrix(&self) -> QMat {
        let mut t = QMat::identity(self.dim());
        for i in self.k_dim..self.dim() {
            t[(i, i)] = Qi::int(-1);
        }
        t
    }

    /// Real kernel of a real-linear map given by complex matrices on real
    /// coordinates: the solutions of `Re A x = 0` and `Im A x = 0`.
    pub fn real_kernel(rows: &[Vec<Qi>], ncols: usize) -> Vec<Vec<Qi>> {
        let mut real_rows = Vec::with_capacity(rows.len() * 2);
        for r in rows {
            real_rows.push(r.iter().map(|x| Qi::real(x.re.clone())).collect());
            if r.iter().any(|x| !x.is_real()) {
                real_rows.push(r.iter().map(|x| Qi::real(x.im.clone())).collect());
            }
        }
        exact::nullspace(real_rows, ncols)
    }

    /// Real elements of `span(family)` annihilated by `ad y` for every `y`.
    pub fn centralizer_in(&self, family: &[QMat], of: &[QMat]) -> Vec<QMat> {
        let mut rows: Vec<Vec<Qi>> = Vec::new();
        for y in of {
            let images: Vec<Vec<Qi>> = family.iter().map(|x| self.coords(&x.commutator(y))).collect();
            for r in 0..self.dim() {
                rows.push(images.iter().map(|c| c[r].clone()).collect());
            }
        }
        LieAlgebraModel::real_kernel(&rows, family.len())
            .into_iter()
            .map(|v| combine_family(family, &v))
            .collect()
    }

    pub fn trace_form(&self, x: &QMat, y: &QMat) -> Qi {
        x.trace_product(y)
    }

    /// Structural checks; returns one message per failure.
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i + 1..] {
                if self.try_coords(&x.commutator(y)).is_none_or(|c| !c.iter().all(Qi::is_real)) {
                    errs.push("bracket closure".to_string());
                }
            }
        }
        for x in &self.basis {
            if self.theta(&self.theta(x)) != *x {
                errs.push("theta is not an involution".into());
            }
            if self.theta(x) != x.adjoint().neg() {
                errs.push("theta differs from X -> -X^*".into());
            }
        }
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i..] {
                if self.theta(&x.commutator(y)) != self.theta(x).commutator(&self.theta(y)) {
                    errs.push("theta is not a homomorphism".into());
                }
                if self.trace_form(&self.theta(x), &self.theta(y)) != self.trace_form(x, y) {
                    errs.push("trace form not theta-invariant".into());
                }
            }
        }
        let gram = |fam: &[QMat], sign: i64| {
            let n = fam.len();
            let mut g = QMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    g[(i, j)] = self.trace_form(&fam[i], &fam[j]).scale(&exact::rat_int(sign));
                }
            }
            g
        };
        if !exact::is_positive_definite(&gram(self.k_basis(), -1)) {
            errs.push("trace form not negative definite on k".into());
        }
        if !exact::is_positive_definite(&gram(self.p_basis(), 1)) {
            errs.push("trace form not positive definite on p".into());
        }
        for a in &self.a_basis {
            if self.theta(a) != a.neg() {
                errs.push("a not contained in p".into());
            }
            for b in &self.a_basis {
                if !a.commutator(b).is_zero() {
                    errs.push("a not abelian".into());
                }
            }
        }
        let cent_p = self.centralizer_in(self.p_basis(), &self.a_basis);
        if cent_p.len() != self.a_basis.len() {
            errs.push(format!("centralizer of a in p has dimension {}, a has {}", cent_p.len(), self.a_basis.len()));
        }
        errs
    }
}

pub fn combine_family(family: &[QMat], coeffs: &[Qi]) -> QMat {
    let n = family[0].rows();
    let mut m = QMat::zeros(n, n);
    for (c, x) in coeffs.iter().zip(family) {
        if !c.is_zero() {
            m = m.add(&x.scale(c));
        }
    }
    m
}

fn diag(entries: &[i64]) -> QMat {
    let n = entries.len();
    let mut m = QMat::zeros(n, n);
    for (i, &x) in entries.iter().enumerate() {
        m[(i, i)] = Qi::int(x);
    }
    m
}

fn sym_unit(n: usize, i: usize, j: usize) -> QMat {
    QMat::unit(n, i, j).add(&QMat::unit(n, j, i))
}

fn a_choice(spec: ModelSpec) -> Vec<QMat> {
    let n = spec.size();
    match spec {
        ModelSpec::SlR(n) => (0..n - 1)
            .map(|i| {
                let mut d = vec![0; n];
                d[i] = 1;
                d[n - 1] = -1;
                diag(&d)
            })
            .collect(),
        ModelSpec::Su(p, q) | ModelSpec::So(p, q) => (0..p.min(q)).map(|j| sym_unit(n, j, p + j)).collect(),
        ModelSpec::Sp4R => vec![diag(&[1, 0, -1, 0]), diag(&[0, 1, 0, -1])],
        ModelSpec::SuStar4 => vec![diag(&[1, -1, 1, -1])],
    }
}

fn constraints(spec: ModelSpec) -> Vec<Constraint> {
    let mut cs: Vec<Constraint> = Vec::new();
    if spec.is_real() {
        // imaginary parts vanish: (X - conj X) / 2i
        let half_i = Qi::new(exact::rat_int(0), exact::rat(-1, 2));
        cs.push(Box::new(move |x: &QMat| x.sub(&x.conj()).scale(&half_i)));
    }
    let trace_zero: Constraint = Box::new(|x: &QMat| QMat::from_rows(vec![vec![x.trace()]]));
    match spec {
        ModelSpec::SlR(_) => cs.push(trace_zero),
        ModelSpec::Su(p, q) => {
            let j = signature(p, q);
            cs.push(Box::new(move |x: &QMat| x.adjoint().mul(&j).add(&j.mul(x))));
            cs.push(trace_zero);
        }
        ModelSpec::So(p, q) => {
            let j = signature(p, q);
            cs.push(Box::new(move |x: &QMat| x.transpose().mul(&j).add(&j.mul(x))));
        }
        ModelSpec::Sp4R => {
            let j = symplectic(2);
            cs.push(Box::new(move |x: &QMat| x.transpose().mul(&j).add(&j.mul(x))));
        }
        ModelSpec::SuStar4 => {
            let j = symplectic(2).neg();
            cs.push(Box::new(move |x: &QMat| x.mul(&j).sub(&j.mul(&x.conj()))));
            cs.push(trace_zero);
        }
    }
    cs
}

/// Build and validate the model with catalog id `id`.
pub fn build_model(id: &str) -> Result<LieAlgebraModel, ModelError> {
    let spec = ModelSpec::from_id(id)?;
    let n = spec.size();
    let cs = constraints(spec);
    let mut k_cs = constraints(spec);
    k_cs.push(Box::new(|x: &QMat| x.add(&x.adjoint())));
    let mut p_cs = constraints(spec);
    p_cs.push(Box::new(|x: &QMat| x.sub(&x.adjoint())));
    let g_dim = solve_constraints(n, &cs).len();
    let k = solve_constraints(n, &k_cs);
    let p = solve_constraints(n, &p_cs);
    let broken = |what: String| ModelError::Broken { id: id.to_string(), what };
    if k.len() + p.len() != g_dim {
        return Err(broken(format!("dim k + dim p = {} + {} but dim g = {g_dim}", k.len(), p.len())));
    }
    let k_dim = k.len();
    let basis: Vec<QMat> = k.into_iter().chain(p).collect();
    let coord = Coordinatizer::new(n, &basis);
    let a_basis = a_choice(spec);
    let mut model = LieAlgebraModel { id: id.to_string(), spec, n, basis, k_dim, a_basis, m_basis: Vec::new(), coord };
    model.m_basis = model.centralizer_in(model.k_basis(), &model.a_basis.clone());
    let errs = model.validate();
    if let Some(e) = errs.into_iter().next() {
        return Err(broken(e));
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_model_dimensions() {
        let cases = [("sl2R", 3, 1, 1, 0), ("su21", 8, 4, 1, 1), ("sl3R", 8, 3, 2, 0), ("sp4R", 10, 4, 2, 0), ("sl2H", 15, 10, 1, 6)];
        for (id, g, k, a, m) in cases {
            let model = build_model(id).unwrap();
            assert_eq!((model.dim(), model.k_dim, model.a_basis.len(), model.m_basis.len()), (g, k, a, m), "{id}");
        }
    }

    #[test]
    fn sl3r_k_is_antisymmetric() {
        let model = build_model("sl3R").unwrap();
        for x in model.k_basis() {
            assert_eq!(x.transpose(), x.neg());
            assert!(x.is_real());
        }
    }

    #[test]
    fn theta_matrix_is_involution() {
        let model = build_model("su21").unwrap();
        let t = model.theta_matrix();
        assert_eq!(t.mul(&t), QMat::identity(8));
        for (i, b) in model.basis.iter().enumerate() {
            let img = model.coords(&model.theta(b));
            assert_eq!(img, t.column(i));
        }
    }

    #[test]
    fn unsupported_ids() {
        for id in ["sl6R", "so22", "su33", "g2-split", "sl3H", "xyz"] {
            assert!(matches!(build_model(id), Err(ModelError::Unsupported(_))), "{id}");
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let model = build_model("su21").unwrap();
        let x = model.basis[2].add(&model.basis[5].scale(&Qi::i()));
        let c = model.coords(&x);
        assert_eq!(model.elem(&c), x);
        assert!(model.try_coords(&QMat::identity(3)).is_none());
    }
}
