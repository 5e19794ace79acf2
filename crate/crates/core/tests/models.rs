use minorbit::exact::{self, Qi};
use minorbit::matmodel::{
    cayley_transform, lambda_data, make_s_triple_from, striple_checks, Positivity, Prepared, MODEL_IDS,
};
use minorbit::realform::{derive_invariants, derive_invariants_with, Catalog, Positivity as RootPositivity};
use minorbit::report::all_pass;

#[test]
fn reverse_lex_gives_same_scalars() {
    let cat = Catalog::shipped();
    for id in MODEL_IDS {
        let a = Prepared::new(&cat, id, Positivity::Lex).unwrap();
        let b = Prepared::new(&cat, id, Positivity::ReverseLex).unwrap();
        assert_eq!(a.model_invariants(), b.model_invariants(), "{id}");
        assert_eq!(a.lambda.x_equals_minus_x, b.lambda.x_equals_minus_x, "{id}");
        assert_eq!(a.lambda.dominant, b.lambda.dominant, "{id}");
    }
}

#[test]
fn negated_positive_system_gives_same_catalog_invariants() {
    let cat = Catalog::shipped();
    for d in &cat.entries {
        assert_eq!(derive_invariants(d).unwrap(), derive_invariants_with(d, RootPositivity::Negated).unwrap(), "{}", d.id);
    }
}

#[test]
fn rotated_e_in_g_psi_gives_same_invariants() {
    let cat = Catalog::shipped();
    let p = Prepared::new(&cat, "sl2H", Positivity::Lex).unwrap();
    let g_psi = p.datum.g_psi().to_vec();
    assert_eq!(g_psi.len(), 4);
    // (3 e_0 + 4 e_1) / 5 and each basis vector of g_psi.
    let mut choices = g_psi.clone();
    choices.push(exact::vec_add(
        &exact::vec_scale(&g_psi[0], &Qi::frac(3, 5)),
        &exact::vec_scale(&g_psi[1], &Qi::frac(4, 5)),
    ));
    let mut tried = 0;
    for c in &choices {
        let Ok(st) = make_s_triple_from(&p.model, &p.datum, c) else { continue };
        tried += 1;
        assert!(all_pass(&striple_checks(&p.model, &p.datum, &st)));
        let ct = cayley_transform(&st);
        let l = lambda_data(&p.model, &p.datum, &st, &ct).unwrap();
        assert_eq!(l.orbit_dim, p.lambda.orbit_dim);
        assert_eq!(l.dominant, p.lambda.dominant);
        assert_eq!(l.x_equals_minus_x, p.lambda.x_equals_minus_x);
    }
    assert!(tried >= 2, "only {tried} admissible choices");
}
