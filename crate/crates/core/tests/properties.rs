use std::sync::OnceLock;

use minorbit::exact::{self, QMat, Qi};
use minorbit::matmodel::{Positivity, Prepared};
use minorbit::realform::Catalog;
use minorbit::rootsys::{RootSystem, Weight};
use minorbit::sympver::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn su21() -> &'static NumModel {
    static M: OnceLock<NumModel> = OnceLock::new();
    M.get_or_init(|| NumModel::new(&Prepared::new(&Catalog::shipped(), "su21", Positivity::Lex).unwrap()))
}

fn reflect(cartan: &[Vec<i64>], w: &[i64], i: usize) -> Vec<i64> {
    w.iter().zip(&cartan[i]).map(|(x, a)| x - w[i] * a).collect()
}

fn point(m: &NumModel, coeffs: &[f64], t: f64) -> OrbitPointParam {
    let y = RVec::from_fn(m.dim, |i, _| if i < m.k_dim { coeffs[i % coeffs.len()] } else { 0.0 });
    OrbitPointParam { k_param: vec![y], t, side: Side::Xtilde }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominant_representative_is_weyl_invariant(
        which in 0usize..6,
        raw in proptest::collection::vec(-4i64..=4, 4),
        word in proptest::collection::vec(0usize..4, 0..12),
    ) {
        let label = ["A3", "B3", "C3", "D4", "G2", "F4"][which];
        let rs = RootSystem::build(label.parse().unwrap()).unwrap();
        let r = rs.rank();
        let w: Vec<i64> = raw[..r].to_vec();
        let mut moved = w.clone();
        for i in word.iter().map(|i| i % r) {
            moved = reflect(&rs.cartan_matrix, &moved, i);
        }
        let a = rs.dominant_representative(&Weight::new(w)).unwrap();
        let b = rs.dominant_representative(&Weight::new(moved)).unwrap();
        prop_assert!(a.is_dominant());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn nullspace_is_annihilated(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..5)) {
        let q: Vec<Vec<Qi>> = rows.iter().map(|r| r.iter().map(|&x| Qi::int(x)).collect()).collect();
        let m = QMat::from_rows(q.clone());
        let ns = exact::nullspace(q, 5);
        prop_assert_eq!(ns.len() + m.rank(), 5);
        for v in &ns {
            prop_assert!(exact::vec_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn gram_antisymmetric_and_permutation_covariant(
        coeffs in proptest::collection::vec(-2.0f64..2.0, 4),
        t in 0.25f64..4.0,
        perm_seed in any::<u64>(),
    ) {
        let m = su21();
        let (fx, fz) = matched_frames(m, &point(m, &coeffs, t));
        let g = induced_gram(m, &fx).unwrap();
        prop_assert!((&g + g.transpose()).amax() < 1e-14);
        let n = fz.directions.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut fp = fz.clone();
        fp.directions = perm.iter().map(|&i| fz.directions[i].clone()).collect();
        let gz = kks_gram(m, &fz).unwrap();
        let gp = kks_gram(m, &fp).unwrap();
        let conj = DMatrix::from_fn(n, n, |i, j| gz[(perm[i], perm[j])]);
        prop_assert!((gp - conj).amax() < 1e-14);
    }

    #[test]
    fn both_grams_scale_linearly(coeffs in proptest::collection::vec(-2.0f64..2.0, 4), t in 0.25f64..4.0) {
        let m = su21();
        let p = point(m, &coeffs, t);
        let (fx, fz) = matched_frames(m, &p);
        let (fx1, fz1) = matched_frames(m, &p.scaled(1.0));
        let gx = induced_gram(m, &fx).unwrap();
        let gz = kks_gram(m, &fz).unwrap();
        prop_assert!((&gx - induced_gram(m, &fx1).unwrap() * t).amax() < 1e-13);
        prop_assert!((&gz - kks_gram(m, &fz1).unwrap() * t).amax() < 1e-13);
        prop_assert!((gx - gz).amax() < 1e-12);
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let m = su21();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
            (
                verify_beta_symplectic(m, 16, 1e-9, 3).components,
                moment_cone_check(m, 16, 1e-9, 3).components,
                poisson_identities_check(m, 8, 1e-6, 3).components,
            )
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn frame_rank_equals_dim_z_on_all_models() {
    let cat = Catalog::shipped();
    for id in minorbit::matmodel::MODEL_IDS {
        let p = Prepared::new(&cat, id, Positivity::Lex).unwrap();
        let m = NumModel::new(&p);
        let (fx, fz) = matched_frames(&m, &OrbitPointParam::base(Side::Xtilde));
        let g = induced_gram(&m, &fx).unwrap();
        let rank = g.clone().singular_values().iter().filter(|s| **s > 1e-9).count() as u32;
        assert_eq!(rank, p.invariants.dim_z, "{id}");
        assert_eq!(rank, p.invariants.dim_x + 2, "{id}");
        assert_eq!(kks_gram(&m, &fz).unwrap().nrows() as u32, p.invariants.dim_z, "{id}");
    }
}
