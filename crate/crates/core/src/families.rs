//! Parametrized degree-matrix families, loaded from the bundled
//! `data/kind_families.json`, and their matching against enumerated kind
//! catalogs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::expr::Affine;
use crate::pairs::{DegreeMatrix, KindSignature};

const BUNDLED: &str = include_str!("../data/kind_families.json");

pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindFamily {
    pub name: String,
    #[serde(default)]
    pub params: Vec<String>,
    pub matrix: Vec<Vec<Affine>>,
    /// The pair as printed next to the matrix; documentation only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_pair: Option<String>,
    /// Parameter range as printed; the effective floor is recomputed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_range: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualIdentity {
    pub left: String,
    pub right: String,
    /// Parameters of `right` as expressions in the parameters of `left`.
    #[serde(default)]
    pub map: BTreeMap<String, Affine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFamilies {
    pub degree: i64,
    pub families: Vec<KindFamily>,
    #[serde(default)]
    pub dual_identities: Vec<DualIdentity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCatalog {
    pub version: u32,
    pub degrees: Vec<DegreeFamilies>,
}

impl FamilyCatalog {
    pub fn bundled() -> &'static FamilyCatalog {
        static CELL: OnceLock<FamilyCatalog> = OnceLock::new();
        CELL.get_or_init(|| serde_json::from_str(BUNDLED).expect("bundled family data is valid"))
    }

    pub fn for_degree(&self, degree: i64) -> Option<&DegreeFamilies> {
        self.degrees.iter().find(|d| d.degree == degree)
    }
}

impl DegreeFamilies {
    pub fn family(&self, name: &str) -> Option<&KindFamily> {
        self.families.iter().find(|f| f.name == name)
    }
}

/// A realizable member of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub params: Params,
    pub matrix: DegreeMatrix,
}

impl KindFamily {
    pub fn instantiate(&self, degree: i64, params: &Params) -> Option<DegreeMatrix> {
        let entries = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|e| e.eval(params).ok()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(DegreeMatrix::new(degree, entries))
    }

    /// Every parameter assignment in `0..=max_param` whose matrix is the
    /// degree matrix of an actual pair.
    pub fn instances(&self, degree: i64, max_param: i64) -> Vec<Instance> {
        let mut out = Vec::new();
        let mut values = vec![0i64; self.params.len()];
        loop {
            let params: Params = self.params.iter().cloned().zip(values.iter().copied()).collect();
            if let Some(m) = self.instantiate(degree, &params) {
                if m.realize().is_some() {
                    out.push(Instance { params, matrix: m });
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == values.len() {
                    return out;
                }
                values[i] += 1;
                if values[i] <= max_param {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    }

    /// The realizable instance with the least parameter sum, ties broken by
    /// the parameter values in declaration order.
    pub fn minimum(&self, degree: i64, max_param: i64) -> Option<Instance> {
        self.instances(degree, max_param).into_iter().min_by_key(|inst| {
            let vals: Vec<i64> = self.params.iter().map(|p| inst.params[p]).collect();
            (vals.iter().sum::<i64>(), vals)
        })
    }

    pub fn signatures(&self, degree: i64, max_param: i64) -> BTreeSet<KindSignature> {
        self.instances(degree, max_param)
            .into_iter()
            .map(|i| i.matrix.kind_signature())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCheck {
    pub checked: usize,
    /// Left-hand parameters where the identity fails.
    pub failures: Vec<Params>,
}

/// Checks `left(p)^a == right(map(p))` entry-exactly over every
/// realizable `left` instance.
pub fn check_dual_identity(
    fams: &DegreeFamilies,
    id: &DualIdentity,
    max_param: i64,
) -> Option<DualCheck> {
    let left = fams.family(&id.left)?;
    let right = fams.family(&id.right)?;
    let mut check = DualCheck {
        checked: 0,
        failures: Vec::new(),
    };
    for inst in left.instances(fams.degree, max_param) {
        let mapped: Option<Params> = right
            .params
            .iter()
            .map(|p| {
                let expr = id.map.get(p)?;
                Some((p.clone(), expr.eval(&inst.params).ok()?))
            })
            .collect();
        let ok = mapped
            .and_then(|m| right.instantiate(fams.degree, &m))
            .is_some_and(|m| m == inst.matrix.anti_transpose());
        check.checked += 1;
        if !ok {
            check.failures.push(inst.params);
        }
    }
    Some(check)
}
