//! ACM curve classification on the five special quartic families and on
//! smooth quadrics and cubics, assembled from the resolution, lattice and
//! liaison modules plus bundled per-surface data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::Affine;
use crate::liaison::{self, CiProfile, LiaisonError};
use crate::pairs::{PairError, WeakAdmissiblePair};
use crate::picard::{quartic_lattice, DivisorClass, PicardError, PicardLattice};
use crate::resolutions::{
    is_f_minimal, thm1_case_ii, BettiTable, CurveInvariants, ResolutionError, ResolutionFamily,
};

const QUARTIC_DATA: &str = include_str!("../data/quartic_divisors.json");
const LOW_DATA: &str = include_str!("../data/low_degree.json");

pub const QUARTIC: i64 = 4;
pub const DEFAULT_K_MAX: i64 = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifierError {
    #[error("unknown divisor {0:?}, expected one of F1..F5")]
    UnknownDivisor(String),
    #[error("k_max must be at least 3, got {0}")]
    KMaxTooSmall(i64),
    #[error("no low-degree type {tag:?} on surfaces of degree {degree}")]
    UnknownLowType { degree: i64, tag: String },
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Liaison(#[from] LiaisonError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("{citation}: classes {found:?} solve the lattice equations, expected {expected:?}")]
    ClassMismatch {
        citation: String,
        expected: Vec<DivisorClass>,
        found: Vec<DivisorClass>,
    },
    #[error("{citation} at k={k}: resolution gives {found}, closed form gives {expected}")]
    ClosedForm {
        citation: String,
        k: i64,
        expected: CurveInvariants,
        found: CurveInvariants,
    },
    #[error("{citation}: resolution gives {found}, linkage gives {expected}")]
    ResidualMismatch {
        citation: String,
        expected: CurveInvariants,
        found: CurveInvariants,
    },
    #[error("{label}: rigid classes {found:?} differ from {expected:?}")]
    RigidMismatch {
        label: String,
        expected: Vec<DivisorClass>,
        found: Vec<DivisorClass>,
    },
    #[error("{label}: no resolution attached to rigid class {class}")]
    NoResolution { label: String, class: DivisorClass },
    #[error("cross-check failed for {}: class {} vs resolution", .0.citation, .0.class)]
    CrossCheck(Box<ClassificationEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub class: DivisorClass,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidSpec {
    pub class: DivisorClass,
    pub key: String,
    pub description: String,
}

/// A family of classes with the surface equation a minimal generator.
/// `degree` and `genus` are polynomial coefficients in `k`, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub pair: usize,
    pub key: String,
    pub classes: Vec<[Affine; 2]>,
    pub degree: Vec<i64>,
    pub genus: Vec<i64>,
}

impl FamilySpec {
    pub fn invariants_at(&self, k: i64) -> CurveInvariants {
        CurveInvariants::new(poly_eval(&self.degree, k), poly_eval(&self.genus, k))
    }

    pub fn classes_at(&self, k: i64) -> BTreeSet<DivisorClass> {
        let env = BTreeMap::from([("k".to_string(), k)]);
        self.classes
            .iter()
            .map(|[a, b]| DivisorClass::new(a.eval(&env).unwrap(), b.eval(&env).unwrap()))
            .collect()
    }

    pub fn closed_form(&self) -> String {
        format!("({}, {})", poly_display(&self.degree), poly_display(&self.genus))
    }
}

pub fn poly_eval(coeffs: &[i64], k: i64) -> i64 {
    coeffs.iter().fold(0, |acc, c| acc * k + c)
}

pub fn poly_display(coeffs: &[i64]) -> String {
    let n = coeffs.len();
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        let power = n - 1 - i;
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let body = match (power, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "k".to_string(),
            (1, m) => format!("{m}k"),
            (p, 1) => format!("k^{p}"),
            (p, m) => format!("{m}k^{p}"),
        };
        out.push_str(sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "lowercase")]
pub enum LowRoute {
    Excluded {
        reason: String,
    },
    Rigid {
        key: String,
    },
    Residual {
        key: String,
        classes: Vec<DivisorClass>,
        partner: CurveInvariants,
        link: [i64; 2],
        description: String,
    },
}

/// What the twist `k` in `{0, 1, 2}` of an attached pair produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowSpec {
    pub pair: usize,
    pub k: i64,
    #[serde(flatten)]
    pub route: LowRoute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedSets {
    pub watanabe: Vec<Vec<DivisorClass>>,
    pub rigid: Vec<DivisorClass>,
    pub plane_classes: Vec<DivisorClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticDivisor {
    pub label: String,
    pub curve: String,
    pub generator: CurveInvariants,
    pub pairs: Vec<WeakAdmissiblePair>,
    pub exclusions: Vec<Exclusion>,
    pub rigid: Vec<RigidSpec>,
    pub families: Vec<FamilySpec>,
    pub low: Vec<LowSpec>,
    pub ci_keys: BTreeMap<String, String>,
    pub expected: ExpectedSets,
}

impl QuarticDivisor {
    pub fn lattice(&self) -> PicardLattice {
        quartic_lattice(self.generator.degree, self.generator.genus)
            .expect("bundled divisor lattices are hyperbolic")
    }

    pub fn citation(&self, key: &str) -> String {
        format!("{}:{}", self.label, key)
    }

    fn ci_key(&self, d: i64) -> &str {
        self.ci_keys
            .get(&d.to_string())
            .or_else(|| self.ci_keys.get("default"))
            .map(String::as_str)
            .unwrap_or("ci")
    }

    /// Watanabe candidates with the exclusion data removed.
    pub fn rigid_classes(&self) -> BTreeSet<DivisorClass> {
        let excluded: BTreeSet<_> = self.exclusions.iter().map(|e| e.class).collect();
        self.lattice()
            .watanabe_candidates()
            .into_iter()
            .flat_map(|c| c.classes)
            .filter(|c| !excluded.contains(c))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct QuarticData {
    version: u32,
    plane_dh_max: i64,
    divisors: Vec<QuarticDivisor>,
}

fn quartic_data() -> &'static QuarticData {
    static CELL: OnceLock<QuarticData> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(QUARTIC_DATA).expect("bundled divisor data is valid"))
}

pub fn known_divisors() -> &'static [QuarticDivisor] {
    &quartic_data().divisors
}

pub fn plane_dh_max() -> i64 {
    quartic_data().plane_dh_max
}

pub fn divisor(label: &str) -> Result<&'static QuarticDivisor, ClassifierError> {
    known_divisors()
        .iter()
        .find(|d| d.label.eq_ignore_ascii_case(label))
        .ok_or_else(|| ClassifierError::UnknownDivisor(label.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Rigid,
    FamilyIi,
    FamilyIii,
    Residual,
    CompleteIntersection,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Rigid => "RIGID",
            Provenance::FamilyIi => "FAMILY_II",
            Provenance::FamilyIii => "FAMILY_III",
            Provenance::Residual => "RESIDUAL",
            Provenance::CompleteIntersection => "COMPLETE_INTERSECTION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub class: DivisorClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub invariants: CurveInvariants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    pub resolution: ResolutionFamily,
    pub provenance: Provenance,
    pub citation: String,
    pub description: String,
}

/// True iff the resolution's degree and genus equal `D.H` and the
/// adjunction genus of the entry's class.
pub fn cross_check(entry: &ClassificationEntry, lattice: &PicardLattice) -> bool {
    let from_lattice = CurveInvariants::new(
        lattice.degree(entry.class),
        lattice.adjunction_genus(entry.class),
    );
    let from_table = entry.resolution.table().and_then(|t| t.invariants());
    from_table == Ok(from_lattice) && entry.invariants == from_lattice
}

/// Minimal resolution at twist `k`: case ii when the surface equation is
/// a minimal generator, else case iii pivoting on `b_j = d - k`.
pub fn resolution_at(pair: &WeakAdmissiblePair, k: i64) -> ResolutionFamily {
    if is_f_minimal(pair, k, QUARTIC) {
        ResolutionFamily::minimal(pair.clone(), QUARTIC, k)
    } else {
        let j0 = pair.b().iter().position(|&b| b == QUARTIC - k).unwrap() + 1;
        ResolutionFamily::nonminimal(pair.clone(), QUARTIC, j0)
    }
}

fn sorted(set: &BTreeSet<DivisorClass>) -> Vec<DivisorClass> {
    set.iter().copied().collect()
}

fn classes_with(lattice: &PicardLattice, inv: CurveInvariants) -> BTreeSet<DivisorClass> {
    lattice.solve_classes(2 * inv.genus - 2, inv.degree, inv.degree)
}

pub fn classify_quartic(
    div: &QuarticDivisor,
    k_max: i64,
) -> Result<Vec<ClassificationEntry>, ClassifierError> {
    if k_max < 3 {
        return Err(ClassifierError::KMaxTooSmall(k_max));
    }
    let lattice = div.lattice();
    let mut out = Vec::new();

    let rigid = div.rigid_classes();
    let documented: BTreeSet<_> = div.rigid.iter().map(|r| r.class).collect();
    if rigid != documented {
        return Err(ClassifierError::RigidMismatch {
            label: div.label.clone(),
            expected: sorted(&documented),
            found: sorted(&rigid),
        });
    }
    for spec in &div.rigid {
        let target = CurveInvariants::new(
            lattice.degree(spec.class),
            lattice.adjunction_genus(spec.class),
        );
        let resolution = div
            .low
            .iter()
            .filter(|l| matches!(&l.route, LowRoute::Rigid { key } if *key == spec.key))
            .map(|l| resolution_at(&div.pairs[l.pair], l.k))
            .find(|r| r.table().and_then(|t| t.invariants()) == Ok(target))
            .ok_or_else(|| ClassifierError::NoResolution {
                label: div.label.clone(),
                class: spec.class,
            })?;
        out.push(ClassificationEntry {
            class: spec.class,
            k: None,
            invariants: target,
            closed_form: None,
            resolution,
            provenance: Provenance::Rigid,
            citation: div.citation(&spec.key),
            description: spec.description.clone(),
        });
    }

    for fam in &div.families {
        let pair = &div.pairs[fam.pair];
        let citation = div.citation(&fam.key);
        for k in 3..=k_max {
            let resolution = resolution_at(pair, k);
            let found = resolution.table()?.invariants()?;
            let expected = fam.invariants_at(k);
            if found != expected {
                return Err(ClassifierError::ClosedForm {
                    citation,
                    k,
                    expected,
                    found,
                });
            }
            let want = fam.classes_at(k);
            let got = classes_with(&lattice, found);
            if want != got {
                return Err(ClassifierError::ClassMismatch {
                    citation,
                    expected: sorted(&want),
                    found: sorted(&got),
                });
            }
            for class in want {
                out.push(ClassificationEntry {
                    class,
                    k: Some(k),
                    invariants: found,
                    closed_form: Some(fam.closed_form()),
                    resolution: resolution.clone(),
                    provenance: Provenance::FamilyIi,
                    citation: citation.clone(),
                    description: format!("surface equation a minimal generator, k={k}"),
                });
            }
        }
    }

    for (p, pair) in div.pairs.iter().enumerate() {
        let b = pair.b();
        for j in 0..b.len() {
            if j > 0 && b[j] == b[j - 1] {
                continue;
            }
            let k = QUARTIC - b[j];
            let resolution = ResolutionFamily::nonminimal(pair.clone(), QUARTIC, j + 1);
            let inv = resolution.table()?.invariants()?;
            let key = div
                .low
                .iter()
                .find_map(|l| match &l.route {
                    LowRoute::Rigid { key } | LowRoute::Residual { key, .. }
                        if l.pair == p && l.k == k =>
                    {
                        Some(key.as_str())
                    }
                    _ => None,
                })
                .unwrap_or("iii");
            for class in classes_with(&lattice, inv) {
                out.push(ClassificationEntry {
                    class,
                    k: Some(k),
                    invariants: inv,
                    closed_form: None,
                    resolution: resolution.clone(),
                    provenance: Provenance::FamilyIii,
                    citation: div.citation(key),
                    description: format!(
                        "surface equation not a minimal generator, pivot b_{} = {}",
                        j + 1,
                        b[j]
                    ),
                });
            }
        }
    }

    for low in &div.low {
        let LowRoute::Residual {
            key,
            classes,
            partner,
            link,
            description,
        } = &low.route
        else {
            continue;
        };
        let citation = div.citation(key);
        let resolution = resolution_at(&div.pairs[low.pair], low.k);
        let found = resolution.table()?.invariants()?;
        let profile = CiProfile::new(link[0], link[1])?;
        let expected = liaison::residual_invariants(*partner, profile)?;
        if found != expected || !liaison::link_is_involution_check(*partner, profile) {
            return Err(ClassifierError::ResidualMismatch {
                citation,
                expected,
                found,
            });
        }
        let want: BTreeSet<_> = classes.iter().copied().collect();
        let got = classes_with(&lattice, found);
        if want != got {
            return Err(ClassifierError::ClassMismatch {
                citation,
                expected: sorted(&want),
                found: sorted(&got),
            });
        }
        for class in want {
            out.push(ClassificationEntry {
                class,
                k: Some(low.k),
                invariants: found,
                closed_form: None,
                resolution: resolution.clone(),
                provenance: Provenance::Residual,
                citation: citation.clone(),
                description: description.clone(),
            });
        }
    }

    for d in 2..=k_max {
        let class = DivisorClass::new(d, 0);
        let resolution = ResolutionFamily::ci(QUARTIC, QUARTIC, d);
        let invariants = resolution.table()?.invariants()?;
        out.push(ClassificationEntry {
            class,
            k: None,
            invariants,
            closed_form: Some("(4d, 2d^2+1)".to_string()),
            resolution,
            provenance: Provenance::CompleteIntersection,
            citation: div.citation(div.ci_key(d)),
            description: format!("X meet a surface of degree {d}"),
        });
    }

    if let Some(bad) = out.iter().find(|e| !cross_check(e, &lattice)) {
        return Err(ClassifierError::CrossCheck(Box::new(bad.clone())));
    }
    Ok(out)
}

/// Classifies all five divisors on scoped threads; output is in catalog
/// order.
pub fn classify_all(k_max: i64) -> Result<Vec<(String, Vec<ClassificationEntry>)>, ClassifierError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = known_divisors()
            .iter()
            .map(|d| s.spawn(move || classify_quartic(d, k_max).map(|e| (d.label.clone(), e))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classifier thread panicked"))
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTemplate {
    pub a: Vec<Affine>,
    pub b: Vec<Affine>,
}

impl PairTemplate {
    pub fn instantiate(&self, env: &BTreeMap<String, i64>) -> Result<WeakAdmissiblePair, ClassifierError> {
        let ev = |v: &[Affine]| v.iter().map(|e| e.eval(env).unwrap_or(0)).collect::<Vec<_>>();
        Ok(WeakAdmissiblePair::new(ev(&self.a), ev(&self.b))?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableTemplate {
    pub gens: Vec<Affine>,
    pub syz: Vec<Affine>,
}

impl TableTemplate {
    /// Sorted twists, without validation.
    pub fn twists(&self, env: &BTreeMap<String, i64>) -> (Vec<i64>, Vec<i64>) {
        let ev = |v: &[Affine]| {
            let mut t: Vec<i64> = v.iter().map(|e| e.eval(env).unwrap_or(0)).collect();
            t.sort_unstable();
            t
        };
        (ev(&self.gens), ev(&self.syz))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowDegreeFamily {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub surface_degree: i64,
    pub key: String,
    pub description: String,
    /// Extra pair parameters with their floors.
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    pub pair: PairTemplate,
    pub k_min: i64,
    pub printed: TableTemplate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected: Option<TableTemplate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowDegreeRow {
    pub params: BTreeMap<String, i64>,
    pub k: i64,
    pub pair: WeakAdmissiblePair,
    pub table: BettiTable,
    pub invariants: CurveInvariants,
    pub expected_gens: Vec<i64>,
    pub expected_syz: Vec<i64>,
    pub matches: bool,
}

impl LowDegreeFamily {
    pub fn expected(&self) -> &TableTemplate {
        self.corrected.as_ref().unwrap_or(&self.printed)
    }

    pub fn is_ambiguous(&self) -> bool {
        self.corrected.is_some()
    }

    /// Whether the printed twists balance for the first few members.
    pub fn printed_is_balanced(&self) -> bool {
        (self.k_min..self.k_min + 3).all(|k| {
            let mut env = self.params.clone();
            env.insert("k".into(), k);
            let (g, s) = self.printed.twists(&env);
            g.len() == s.len() + 1 && g.iter().sum::<i64>() == s.iter().sum::<i64>()
        })
    }

    /// Members with every parameter and `k` running `span` steps past
    /// their floors.
    pub fn rows(&self, span: i64) -> Result<Vec<LowDegreeRow>, ClassifierError> {
        let names: Vec<&String> = self.params.keys().collect();
        let mut out = Vec::new();
        let mut offsets = vec![0i64; names.len()];
        loop {
            let mut env: BTreeMap<String, i64> = names
                .iter()
                .zip(&offsets)
                .map(|(n, o)| ((*n).clone(), self.params[*n] + o))
                .collect();
            let pair = self.pair.instantiate(&env)?;
            for k in self.k_min..=self.k_min + span {
                env.insert("k".into(), k);
                let table = thm1_case_ii(&pair, k, self.surface_degree)?;
                let invariants = table.invariants()?;
                let (expected_gens, expected_syz) = self.expected().twists(&env);
                let matches = table.gens() == expected_gens && table.syz() == expected_syz;
                out.push(LowDegreeRow {
                    params: env.iter().filter(|(n, _)| *n != "k").map(|(n, v)| (n.clone(), *v)).collect(),
                    k,
                    pair: pair.clone(),
                    table,
                    invariants,
                    expected_gens,
                    expected_syz,
                    matches,
                });
            }
            let mut i = 0;
            loop {
                if i == offsets.len() {
                    return Ok(out);
                }
                offsets[i] += 1;
                if offsets[i] <= span {
                    break;
                }
                offsets[i] = 0;
                i += 1;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct LowData {
    version: u32,
    families: Vec<LowDegreeFamily>,
}

pub fn low_degree_families() -> &'static [LowDegreeFamily] {
    static CELL: OnceLock<LowData> = OnceLock::new();
    &CELL
        .get_or_init(|| serde_json::from_str(LOW_DATA).expect("bundled low-degree data is valid"))
        .families
}

pub fn classify_low_degree(
    surface_degree: i64,
    tag: &str,
) -> Result<Vec<&'static LowDegreeFamily>, ClassifierError> {
    let found: Vec<_> = low_degree_families()
        .iter()
        .filter(|f| f.surface_degree == surface_degree && f.tag == tag)
        .collect();
    if found.is_empty() {
        return Err(ClassifierError::UnknownLowType {
            degree: surface_degree,
            tag: tag.to_string(),
        });
    }
    Ok(found)
}
