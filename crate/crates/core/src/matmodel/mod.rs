//! Explicit matrix realizations of real forms and their distinguished
//! elements.

mod build;
mod checks;
mod datum;
mod lambda;
mod triple;

use serde::Serialize;

pub use build::{build_model, combine_family, Coordinatizer, LieAlgebraModel, ModelError, ModelSpec, MODEL_IDS};
pub use checks::{centralizer_checks, eigen_dims, spectral_checks};
pub use datum::{restricted_root_datum, Positivity, RestrictedRootDatum};
pub use lambda::{cartan_of_k_containing, lambda_checks, lambda_data, KRootData, LambdaData};
pub use triple::{
    a_coordinates, cayley_checks, cayley_transform, hermitian, inverse_cayley, make_s_triple, make_s_triple_from,
    striple_checks, CayleyTriple, STriple,
};

use crate::realform::{derive_invariants, Catalog, DerivedInvariants, RealFormDescriptor};
use crate::report::CheckResult;

/// A model together with its restricted root datum, S-triple, Cayley
/// triple and weight data.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub desc: RealFormDescriptor,
    pub invariants: DerivedInvariants,
    pub model: LieAlgebraModel,
    pub datum: RestrictedRootDatum,
    pub striple: STriple,
    pub cayley: CayleyTriple,
    pub lambda: LambdaData,
}

/// Invariants measured directly on a matrix model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelInvariants {
    pub d: u32,
    pub m: [u32; 5],
    #[serde(rename = "dim_Z")]
    pub dim_z: u32,
    #[serde(rename = "dim_X")]
    pub dim_x: u32,
}

impl Prepared {
    pub fn new(catalog: &Catalog, id: &str, positivity: Positivity) -> Result<Self, ModelError> {
        let desc = catalog.get(id).map_err(|e| ModelError::Unsupported(e.to_string()))?.clone();
        let invariants =
            derive_invariants(&desc).map_err(|e| ModelError::CatalogMismatch { id: id.into(), what: e.to_string() })?;
        let model = build_model(id)?;
        let datum = restricted_root_datum(&model, positivity)?;
        datum.compare_with(&desc).map_err(|what| ModelError::CatalogMismatch { id: id.into(), what })?;
        let striple = make_s_triple(&model, &datum)?;
        let cayley = cayley_transform(&striple);
        let lambda = lambda_data(&model, &datum, &striple, &cayley)?;
        Ok(Prepared { desc, invariants, model, datum, striple, cayley, lambda })
    }

    /// Eigenvalue multiplicities of `ad x_psi`, `dim g - dim z_g(e)` and
    /// `dim k - dim k_nu`, all by exact kernel computations.
    pub fn model_invariants(&self) -> ModelInvariants {
        let m = eigen_dims(&self.model.ad(&self.striple.x)).map(|x| x as u32);
        let ze = self.model.centralizer_in(&self.model.basis, std::slice::from_ref(&self.striple.e)).len();
        ModelInvariants {
            d: self.datum.d() as u32,
            m,
            dim_z: (self.model.dim() - ze) as u32,
            dim_x: self.lambda.orbit_dim as u32,
        }
    }

    /// Combinatorial and model invariants agree.
    pub fn oracle_check(&self) -> CheckResult {
        let mi = self.model_invariants();
        let inv = &self.invariants;
        let ok = mi.d == inv.d && mi.m == inv.m && mi.dim_z == inv.dim_z && mi.dim_x == inv.dim_x;
        CheckResult::boolean(
            "catalog invariants = model invariants",
            ok,
            format!(
                "model d={} m={:?} dim_Z={} dim_X={}; catalog d={} m={:?} dim_Z={} dim_X={}",
                mi.d, mi.m, mi.dim_z, mi.dim_x, inv.d, inv.m, inv.dim_z, inv.dim_x
            ),
        )
    }

    pub fn striple_checks(&self) -> Vec<CheckResult> {
        striple_checks(&self.model, &self.datum, &self.striple)
    }

    pub fn cayley_checks(&self) -> Vec<CheckResult> {
        cayley_checks(&self.model, &self.datum, &self.striple, &self.cayley)
    }

    pub fn spectral_checks(&self) -> Vec<CheckResult> {
        spectral_checks(&self.model, &self.datum, &self.striple, &self.cayley, self.invariants.omin_split)
    }

    pub fn centralizer_checks(&self) -> Vec<CheckResult> {
        centralizer_checks(&self.model, &self.datum, &self.striple, &self.cayley, self.desc.hermitian)
    }

    pub fn lambda_checks(&self) -> Vec<CheckResult> {
        lambda_checks(
            &self.model,
            &self.datum,
            &self.cayley,
            &self.lambda,
            self.invariants.dim_x,
            self.desc.hermitian,
            self.desc.k_root_label,
        )
    }
}
