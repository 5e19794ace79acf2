//! Catalog of real simple Lie algebras described by restricted roots.
//!
//! Everything here is combinatorial: the invariants of the minimal
//! nilpotent orbit follow from the restricted root system, its
//! multiplicities and the dimension of `m`.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::CheckResult;
use crate::rootsys::{RootSysError, RootSystem, RootSystemLabel};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../data/realforms.json");

/// Path of the shipped catalog relative to the workspace root.
pub const DEFAULT_CATALOG_PATH: &str = "crates/core/data/realforms.json";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog is not a JSON list of entries: {0}")]
    Syntax(String),
    #[error("entry {id}: {message}")]
    Schema { id: String, message: String },
    #[error("entry {id}: invariant violated: {invariant}")]
    Invariant { id: String, invariant: String },
    #[error("duplicate entry id {0}")]
    Duplicate(String),
    #[error("no catalog entry with id {0}")]
    UnknownId(String),
    #[error(transparent)]
    RootSystem(#[from] RootSysError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealFormDescriptor {
    pub id: String,
    pub gc_label: RootSystemLabel,
    pub restricted_label: RootSystemLabel,
    pub mults: BTreeMap<String, u32>,
    pub dim_m: u32,
    pub hermitian: bool,
    pub k_name: String,
    /// Display name of the compact orbit `X = K/K_nu`, when tabulated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_name: Option<String>,
    pub k_root_label: Option<RootSystemLabel>,
    pub jordan_algebra: Option<String>,
    #[serde(default)]
    pub notes: String,
}

fn canonical_class(key: &str) -> &str {
    if key == "middle" {
        "e_i±e_j"
    } else {
        key
    }
}

impl RealFormDescriptor {
    /// Multiplicity of a length class (accepts `"middle"` as an alias).
    pub fn mult_of_class(&self, class: &str) -> Option<u32> {
        self.mults.iter().find(|(k, _)| canonical_class(k) == class).map(|(_, &v)| v)
    }

    /// Multiplicities keyed by canonical class names.
    pub fn canonical_mults(&self) -> BTreeMap<String, u32> {
        self.mults.iter().map(|(k, &v)| (canonical_class(k).to_string(), v)).collect()
    }

    pub fn is_split(&self) -> bool {
        self.dim_m == 0 && self.mults.values().all(|&m| m == 1)
    }

    /// `dim m + rank + sum of multiplicities over all restricted roots`.
    pub fn real_dimension(&self) -> Result<u32, CatalogError> {
        let rs = RootSystem::build(self.restricted_label)?;
        let mut total = self.dim_m + rs.rank() as u32;
        for r in &rs.all_roots {
            let class = rs.length_class(r);
            total += self.mult_of_class(class).ok_or_else(|| self.invariant(format!("missing multiplicity for class {class}")))?;
        }
        Ok(total)
    }

    fn invariant(&self, s: impl Into<String>) -> CatalogError {
        CatalogError::Invariant { id: self.id.clone(), invariant: s.into() }
    }

    /// Validate the descriptor's structural invariants.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let rs = RootSystem::build(self.restricted_label)?;
        if !self.gc_label.is_reduced() {
            return Err(self.invariant("complexification label must be reduced"));
        }
        if let Some(k) = self.k_root_label {
            if !k.is_reduced() {
                return Err(self.invariant("k_root_label must be reduced"));
            }
        }
        let classes: HashSet<&str> = rs.length_classes().into_iter().collect();
        let mut seen = HashSet::new();
        for (key, &m) in &self.mults {
            let c = canonical_class(key);
            if !classes.contains(c) {
                return Err(self.invariant(format!("multiplicity key {key:?} is not a length class of {}", self.restricted_label)));
            }
            if !seen.insert(c) {
                return Err(self.invariant(format!("multiplicity class {c:?} given twice")));
            }
            if m == 0 {
                return Err(self.invariant(format!("multiplicity of {key:?} must be positive")));
            }
        }
        for c in &classes {
            if !seen.contains(c) {
                return Err(self.invariant(format!("missing multiplicity for class {c}")));
            }
        }
        let dim_g = self.real_dimension()?;
        let dim_gc = self.gc_label.lie_algebra_dim().unwrap_or(0) as u32;
        if dim_g != dim_gc {
            return Err(self.invariant(format!(
                "dimension mismatch: dim_m + rank + sum of multiplicities = {dim_g}, but dim {} = {dim_gc}",
                self.gc_label
            )));
        }
        if self.hermitian {
            let psi_class = rs.length_class(rs.highest_root());
            let m = self.mult_of_class(psi_class).unwrap_or(0);
            if m != 1 {
                return Err(self.invariant(format!("hermitian requires mult(psi) = 1, found {m}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub entries: Vec<RealFormDescriptor>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Result<&RealFormDescriptor, CatalogError> {
        self.entries.iter().find(|d| d.id == id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|d| d.id.as_str()).collect()
    }

    pub fn shipped() -> Self {
        load_catalog(DEFAULT_CATALOG).expect("shipped catalog is valid")
    }
}

/// Parse and validate a catalog document.
pub fn load_catalog(source: &str) -> Result<Catalog, CatalogError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(source).map_err(|e| CatalogError::Syntax(e.to_string()))?;
    let mut entries = Vec::with_capacity(raw.len());
    let mut ids = HashSet::new();
    for (i, v) in raw.into_iter().enumerate() {
        let id = v.get("id").and_then(|x| x.as_str()).map(str::to_string).unwrap_or_else(|| format!("#{i}"));
        let desc: RealFormDescriptor =
            serde_json::from_value(v).map_err(|e| CatalogError::Schema { id: id.clone(), message: e.to_string() })?;
        if !ids.insert(desc.id.clone()) {
            return Err(CatalogError::Duplicate(desc.id));
        }
        desc.validate()?;
        entries.push(desc);
    }
    Ok(Catalog { entries })
}

/// Invariants of the minimal nilpotent orbit derived from restricted roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedInvariants {
    pub d: u32,
    /// Multiplicities of the eigenvalues `-2, -1, 0, 1, 2` of `ad x_psi`.
    pub m: [u32; 5],
    pub dim_g: u32,
    #[serde(rename = "dim_Z")]
    pub dim_z: u32,
    #[serde(rename = "dim_X")]
    pub dim_x: u32,
    pub omin_split: bool,
    pub h_vee: u32,
}

impl DerivedInvariants {
    /// Multiplicity of the eigenvalue `j` of `ad x_psi`, for `j` in `-2..=2`.
    pub fn m_j(&self, j: i32) -> u32 {
        self.m[(j + 2) as usize]
    }
}

/// Which positive system to use when deriving invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Positivity {
    #[default]
    Standard,
    /// The negated positive system, whose highest root is `-psi`.
    Negated,
}

pub fn derive_invariants(desc: &RealFormDescriptor) -> Result<DerivedInvariants, CatalogError> {
    derive_invariants_with(desc, Positivity::Standard)
}

pub fn derive_invariants_with(desc: &RealFormDescriptor, pos: Positivity) -> Result<DerivedInvariants, CatalogError> {
    desc.validate()?;
    let rs = RootSystem::build(desc.restricted_label)?;
    let psi: Vec<i64> = match pos {
        Positivity::Standard => rs.highest_root().to_vec(),
        Positivity::Negated => rs.highest_root().iter().map(|x| -x).collect(),
    };
    let mult = |r: &[i64]| desc.mult_of_class(rs.length_class(r)).unwrap_or(0);
    let d = mult(&psi);
    let mut m = [0u32; 5];
    for r in &rs.all_roots {
        let j = rs.coroot_pairing(r, &psi)?;
        if !(-2..=2).contains(&j) {
            return Err(desc.invariant(format!("pairing {j} with the highest root outside [-2, 2]")));
        }
        m[(j + 2) as usize] += mult(r);
    }
    let dim_g = desc.real_dimension()?;
    // The zero eigenspace also contains m + a.
    m[2] += desc.dim_m + rs.rank() as u32;
    if m[4] != d || m[0] != d {
        return Err(desc.invariant("eigenvalue 2 multiplicity differs from mult(psi)"));
    }
    let dim_z = dim_g - (m[2] + m[3]);
    let h_vee = RootSystem::build(desc.gc_label)?.dual_coxeter_number()?;
    Ok(DerivedInvariants { d, m, dim_g, dim_z, dim_x: dim_z - 2, omin_split: d == 1, h_vee })
}

/// The named identities relating the derived invariants.
pub fn cross_checks(desc: &RealFormDescriptor, inv: &DerivedInvariants) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let h = inv.h_vee;
    if inv.omin_split {
        out.push(CheckResult::boolean(
            "dim_Z = 2h_vee - 2",
            inv.dim_z == 2 * h - 2,
            format!("dim_Z = {}, 2h_vee - 2 = {}", inv.dim_z, 2 * h - 2),
        ));
        out.push(CheckResult::boolean(
            "dim_X = 2h_vee - 4",
            inv.dim_x + 4 == 2 * h,
            format!("dim_X = {}, 2h_vee - 4 = {}", inv.dim_x, 2 * h as i64 - 4),
        ));
    } else {
        out.push(CheckResult::skipped("dim_Z = 2h_vee - 2", "not O_min-split"));
        out.push(CheckResult::skipped("dim_X = 2h_vee - 4", "not O_min-split"));
    }
    if desc.is_split() {
        out.push(CheckResult::boolean("split => omin_split", inv.omin_split, format!("d = {}", inv.d)));
    } else {
        out.push(CheckResult::skipped("split => omin_split", "not split"));
    }
    if desc.hermitian {
        out.push(CheckResult::boolean("hermitian => d = 1", inv.d == 1, format!("d = {}", inv.d)));
    } else {
        out.push(CheckResult::skipped("hermitian => d = 1", "not hermitian"));
    }
    out.push(CheckResult::boolean(
        "m_j = m_-j",
        inv.m[0] == inv.m[4] && inv.m[1] == inv.m[3],
        format!("m = {:?}", inv.m),
    ));
    let sum: u32 = inv.m.iter().sum();
    let dim_gc = desc.gc_label.lie_algebra_dim().unwrap_or(0) as u32;
    out.push(CheckResult::boolean(
        "sum m_j = dim g = dim g_C",
        sum == inv.dim_g && inv.dim_g == dim_gc,
        format!("sum = {sum}, dim g = {}, dim g_C = {dim_gc}", inv.dim_g),
    ));
    out.push(CheckResult::boolean("dim_X = dim_Z - 2", inv.dim_x + 2 == inv.dim_z, ""));
    out.push(CheckResult::boolean("omin_split <=> d = 1", inv.omin_split == (inv.d == 1), ""));
    out
}

/// Dimension of a Jordan algebra named like `R⊕(H(3)/R)` or `H(4)/C`.
///
/// `H(n)/F` denotes `n x n` Hermitian matrices over `F` in `{R, C, H}`.
pub fn jordan_dimension(name: &str) -> Option<u32> {
    let mut total = 0;
    for part in name.split('⊕') {
        let p = part.trim().trim_start_matches('(').trim_end_matches(')');
        if p == "R" {
            total += 1;
            continue;
        }
        let rest = p.strip_prefix("H(")?;
        let (n, field) = rest.split_once(")/")?;
        let n: u32 = n.parse().ok()?;
        let df = match field {
            "R" => 1,
            "C" => 2,
            "H" => 4,
            _ => return None,
        };
        total += n + df * n * (n - 1) / 2;
    }
    Some(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(rename = "type")]
    pub gc_type: String,
    #[serde(rename = "K")]
    pub k_name: String,
    #[serde(rename = "X")]
    pub x_name: String,
    #[serde(rename = "dim_X")]
    pub dim_x: u32,
    #[serde(rename = "J(X)")]
    pub jordan: String,
    /// `dim X / 2`.
    #[serde(rename = "dim_J")]
    pub dim_j: u32,
    /// Dimension read off from the Jordan algebra name.
    #[serde(rename = "dim_J_from_name")]
    pub dim_j_from_name: Option<u32>,
    pub h_vee: u32,
}

pub const EXCEPTIONAL_IDS: [&str; 5] = ["g2-split", "f4-split", "e6-split", "e7-split", "e8-split"];

/// The five exceptional rows, dimensions derived from restricted roots.
pub fn exceptional_table(catalog: &Catalog) -> Result<Vec<TableRow>, CatalogError> {
    EXCEPTIONAL_IDS
        .iter()
        .map(|id| {
            let desc = catalog.get(id)?;
            let inv = derive_invariants(desc)?;
            let jordan = desc.jordan_algebra.clone().unwrap_or_default();
            Ok(TableRow {
                gc_type: desc.gc_label.to_string(),
                k_name: desc.k_name.clone(),
                x_name: desc.x_name.clone().unwrap_or_default(),
                dim_x: inv.dim_x,
                dim_j: inv.dim_x / 2,
                dim_j_from_name: jordan_dimension(&jordan),
                jordan,
                h_vee: inv.h_vee,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shipped() -> Catalog {
        Catalog::shipped()
    }

    #[test]
    fn shipped_catalog_loads() {
        let c = shipped();
        assert!(c.entries.len() >= 12);
        let ids = c.ids();
        assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
    }

    #[test]
    fn su21_dimension_arithmetic() {
        let d = shipped().get("su21").unwrap().clone();
        // 1 + 1 + 2 * (2 + 1) = 8
        assert_eq!(d.real_dimension().unwrap(), 8);
        let inv = derive_invariants(&d).unwrap();
        assert_eq!((inv.d, inv.dim_z, inv.dim_x, inv.omin_split), (1, 4, 2, true));
        assert_eq!(inv.m, [1, 2, 2, 2, 1]);
        assert!(cross_checks(&d, &inv).iter().all(|c| c.pass));
    }

    #[test]
    fn sl2r_and_sl3h() {
        let c = shipped();
        let inv = derive_invariants(c.get("sl2R").unwrap()).unwrap();
        assert_eq!(inv.m, [1, 0, 1, 0, 1]);
        assert_eq!((inv.d, inv.dim_z, inv.dim_x, inv.omin_split), (1, 2, 0, true));
        let d = c.get("sl3H").unwrap();
        let inv = derive_invariants(d).unwrap();
        assert_eq!(inv.d, 4);
        assert!(!inv.omin_split);
        let checks = cross_checks(d, &inv);
        assert!(checks.iter().all(|c| c.pass));
        assert!(checks.iter().filter(|c| c.name.contains("h_vee")).all(|c| c.skipped));
    }

    #[test]
    fn hermitian_with_large_psi_multiplicity_rejected() {
        let doc = r#"[{"id":"bad","gc_label":"A3","restricted_label":"A1","mults":{"long":4},"dim_m":6,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":""}]"#;
        let err = load_catalog(doc).unwrap_err();
        assert!(matches!(err, CatalogError::Invariant { ref id, .. } if id == "bad"), "{err}");
        assert!(err.to_string().contains("mult(psi) = 1"));
    }

    #[test]
    fn schema_violations_name_the_entry() {
        let unknown = r#"[{"id":"x","gc_label":"A1","restricted_label":"A1","mults":{"long":1},"dim_m":0,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":"","extra":1}]"#;
        let err = load_catalog(unknown).unwrap_err();
        assert!(err.to_string().contains("entry x"), "{err}");
        let dim = r#"[{"id":"y","gc_label":"A2","restricted_label":"A1","mults":{"long":1},"dim_m":0,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":""}]"#;
        assert!(load_catalog(dim).unwrap_err().to_string().contains("dimension mismatch"));
        let key = r#"[{"id":"z","gc_label":"A1","restricted_label":"A1","mults":{"short":1},"dim_m":0,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":""}]"#;
        assert!(load_catalog(key).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let e = r#"{"id":"a","gc_label":"A1","restricted_label":"A1","mults":{"long":1},"dim_m":0,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":""}"#;
        let doc = format!("[{e},{e}]");
        assert_eq!(load_catalog(&doc).unwrap_err(), CatalogError::Duplicate("a".into()));
    }

    #[test]
    fn middle_alias_accepted() {
        let doc = r#"[{"id":"su32b","gc_label":"A4","restricted_label":"BC2","mults":{"e_i":2,"middle":2,"2e_i":1},"dim_m":2,
            "hermitian":true,"k_name":"K","k_root_label":null,"jordan_algebra":null,"notes":""}]"#;
        let c = load_catalog(doc).unwrap();
        let reference = shipped();
        assert_eq!(derive_invariants(&c.entries[0]).unwrap(), derive_invariants(reference.get("su32").unwrap()).unwrap());
    }

    #[test]
    fn every_entry_satisfies_identities() {
        for d in &shipped().entries {
            let inv = derive_invariants(d).unwrap();
            assert_eq!(inv.m.iter().sum::<u32>(), inv.dim_g, "{}", d.id);
            for c in cross_checks(d, &inv) {
                assert!(c.pass, "{}: {} {}", d.id, c.name, c.detail);
            }
            if d.is_split() {
                assert!(inv.omin_split, "{}", d.id);
            }
            if d.hermitian {
                assert_eq!(inv.d, 1, "{}", d.id);
            }
        }
    }

    #[test]
    fn invariants_independent_of_positive_system() {
        for d in &shipped().entries {
            assert_eq!(
                derive_invariants_with(d, Positivity::Standard).unwrap(),
                derive_invariants_with(d, Positivity::Negated).unwrap(),
                "{}",
                d.id
            );
        }
    }

    #[test]
    fn jordan_dimensions() {
        assert_eq!(jordan_dimension("R⊕R"), Some(2));
        assert_eq!(jordan_dimension("R⊕(H(3)/R)"), Some(7));
        assert_eq!(jordan_dimension("H(4)/R"), Some(10));
        assert_eq!(jordan_dimension("H(4)/C"), Some(16));
        assert_eq!(jordan_dimension("H(4)/H"), Some(28));
        assert_eq!(jordan_dimension("Q"), None);
    }

    #[test]
    fn exceptional_rows() {
        let rows = exceptional_table(&shipped()).unwrap();
        let dims: Vec<u32> = rows.iter().map(|r| r.dim_x).collect();
        assert_eq!(dims, vec![4, 14, 20, 32, 56]);
        assert_eq!(rows[0].k_name, "SU(2)×SU(2)");
        assert_eq!(rows[0].x_name, "P1(C)×P1(C)");
        assert_eq!(rows[0].jordan, "R⊕R");
        assert_eq!(rows[1].h_vee, 9);
        for r in &rows {
            assert_eq!(Some(r.dim_j), r.dim_j_from_name);
            assert_eq!(r.dim_x, 2 * r.h_vee - 4);
        }
    }

    #[test]
    fn missing_exceptional_entry_is_named() {
        let mut c = shipped();
        c.entries.retain(|d| d.id != "e7-split");
        assert_eq!(exceptional_table(&c).unwrap_err(), CatalogError::UnknownId("e7-split".into()));
    }
}
