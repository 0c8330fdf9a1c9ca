//! Betti tables of codimension-two ACM resolutions
//! `0 -> (+) O(-syz) -> (+) O(-gens) -> I_C -> 0` and the curve
//! invariants they determine.
//!
//! Twists are stored as the positive integers `a` of `O(-a)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pairs::WeakAdmissiblePair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("twist {0} is not positive")]
    NonPositiveTwist(i64),
    #[error("ambient dimension {0} is below 3")]
    AmbientTooSmall(u32),
    #[error("degree and genus formulas need ambient dimension 3, got {0}")]
    NotInP3(u32),
    #[error("sum of squares difference {0} is odd, degree is not an integer")]
    NonIntegralDegree(i64),
    #[error("degree {0} is not positive")]
    NonPositiveDegree(i64),
    #[error("sum of cubes difference {0} is not divisible by 6, genus is not an integer")]
    NonIntegralGenus(i64),
    #[error("pair has degree {pair} but the surface has degree {surface}")]
    DegreeMismatch { pair: i64, surface: i64 },
    #[error("pivot index {j0} out of range 1..={t}")]
    PivotOutOfRange { j0: usize, t: usize },
    #[error("twists must be at least 1, got {f} and {g}")]
    BadCompleteIntersection { f: i64, g: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub degree: i64,
    pub genus: i64,
}

impl CurveInvariants {
    pub fn new(degree: i64, genus: i64) -> Self {
        Self { degree, genus }
    }
}

impl fmt::Display for CurveInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(d={}, g={})", self.degree, self.genus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiTable {
    gens: Vec<i64>,
    syz: Vec<i64>,
    ambient_dim: u32,
}

impl BettiTable {
    /// Builds a table in P^3. Multisets are kept sorted; only positivity is
    /// enforced here, see [`BettiTable::validate`] for the rest.
    pub fn new(mut gens: Vec<i64>, mut syz: Vec<i64>) -> Result<Self, ResolutionError> {
        if let Some(&bad) = gens.iter().chain(&syz).find(|&&x| x <= 0) {
            return Err(ResolutionError::NonPositiveTwist(bad));
        }
        gens.sort_unstable();
        syz.sort_unstable();
        Ok(Self {
            gens,
            syz,
            ambient_dim: 3,
        })
    }

    pub fn in_ambient(mut self, n: u32) -> Result<Self, ResolutionError> {
        if n < 3 {
            return Err(ResolutionError::AmbientTooSmall(n));
        }
        self.ambient_dim = n;
        Ok(self)
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn syz(&self) -> &[i64] {
        &self.syz
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    fn power_gap(&self, p: u32) -> i64 {
        self.syz.iter().map(|x| x.pow(p)).sum::<i64>()
            - self.gens.iter().map(|x| x.pow(p)).sum::<i64>()
    }

    /// Degree and genus from the twists without the positivity check on the
    /// degree. Closed forms in a shift parameter hold for every shift, so
    /// this is what polynomial identities are checked against.
    pub fn raw_invariants(&self) -> Result<CurveInvariants, ResolutionError> {
        if self.ambient_dim != 3 {
            return Err(ResolutionError::NotInP3(self.ambient_dim));
        }
        let squares = self.power_gap(2);
        if squares % 2 != 0 {
            return Err(ResolutionError::NonIntegralDegree(squares));
        }
        let degree = squares / 2;
        let cubes = self.power_gap(3);
        if cubes % 6 != 0 {
            return Err(ResolutionError::NonIntegralGenus(cubes));
        }
        Ok(CurveInvariants {
            degree,
            genus: 1 + cubes / 6 - 2 * degree,
        })
    }

    /// `(sum syz^2 - sum gens^2) / 2`.
    pub fn degree(&self) -> Result<i64, ResolutionError> {
        if self.ambient_dim != 3 {
            return Err(ResolutionError::NotInP3(self.ambient_dim));
        }
        let squares = self.power_gap(2);
        if squares % 2 != 0 {
            return Err(ResolutionError::NonIntegralDegree(squares));
        }
        match squares / 2 {
            d if d > 0 => Ok(d),
            d => Err(ResolutionError::NonPositiveDegree(d)),
        }
    }

    /// `1 + (sum syz^3 - sum gens^3) / 6 - 2 * degree`.
    pub fn genus(&self) -> Result<i64, ResolutionError> {
        let degree = self.degree()?;
        let cubes = self.power_gap(3);
        if cubes % 6 != 0 {
            return Err(ResolutionError::NonIntegralGenus(cubes));
        }
        Ok(1 + cubes / 6 - 2 * degree)
    }

    pub fn invariants(&self) -> Result<CurveInvariants, ResolutionError> {
        Ok(CurveInvariants {
            degree: self.degree()?,
            genus: self.genus()?,
        })
    }

    /// Every violated structural condition; empty means the table is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.gens.len() != self.syz.len() + 1 {
            out.push(Violation::Shape {
                gens: self.gens.len(),
                syz: self.syz.len(),
            });
        }
        let (sg, ss) = (self.gens.iter().sum::<i64>(), self.syz.iter().sum::<i64>());
        if sg != ss {
            out.push(Violation::Balance { gens: sg, syz: ss });
        }
        if self.ambient_dim == 3 {
            match self.degree() {
                Err(ResolutionError::NonIntegralDegree(_)) => out.push(Violation::NonIntegralDegree),
                Err(ResolutionError::NonPositiveDegree(d)) => out.push(Violation::NonPositiveDegree(d)),
                _ => {}
            }
            if self.power_gap(3) % 6 != 0 {
                out.push(Violation::NonIntegralGenus);
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "gens {{{}}} syz {{{}}}", join(&self.gens), join(&self.syz))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Shape { gens: usize, syz: usize },
    Balance { gens: i64, syz: i64 },
    NonIntegralDegree,
    NonPositiveDegree(i64),
    NonIntegralGenus,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { gens, syz } => {
                write!(f, "shape: {gens} generators but {syz} syzygies, expected {}", syz + 1)
            }
            Violation::Balance { gens, syz } => {
                write!(f, "balance: generator twists sum to {gens}, syzygy twists to {syz}")
            }
            Violation::NonIntegralDegree => write!(f, "degree is not an integer"),
            Violation::NonPositiveDegree(d) => write!(f, "degree {d} is not positive"),
            Violation::NonIntegralGenus => write!(f, "genus is not an integer"),
        }
    }
}

/// Resolution of the complete intersection of surfaces of degrees `f`, `g`.
pub fn ci_table(f: i64, g: i64) -> Result<BettiTable, ResolutionError> {
    if f < 1 || g < 1 {
        return Err(ResolutionError::BadCompleteIntersection { f, g });
    }
    BettiTable::new(vec![f, g], vec![f + g])
}

fn check_degree(p: &WeakAdmissiblePair, d: i64) -> Result<(), ResolutionError> {
    if p.degree() != d {
        return Err(ResolutionError::DegreeMismatch {
            pair: p.degree(),
            surface: d,
        });
    }
    Ok(())
}

/// The surface equation is a minimal generator: generators `a_i + k` and
/// `d`, syzygies `b_j + k`.
pub fn thm1_case_ii(p: &WeakAdmissiblePair, k: i64, d: i64) -> Result<BettiTable, ResolutionError> {
    check_degree(p, d)?;
    let mut gens: Vec<i64> = p.a().iter().map(|x| x + k).collect();
    gens.push(d);
    let syz = p.b().iter().map(|x| x + k).collect();
    BettiTable::new(gens, syz)
}

/// The surface equation is not a minimal generator. `j0` is the 1-based
/// position of the pivot syzygy in `b`; it is dropped and every other
/// twist is shifted by `d - b_{j0}`.
pub fn thm1_case_iii(p: &WeakAdmissiblePair, j0: usize, d: i64) -> Result<BettiTable, ResolutionError> {
    check_degree(p, d)?;
    let t = p.len();
    if j0 == 0 || j0 > t {
        return Err(ResolutionError::PivotOutOfRange { j0, t });
    }
    let shift = d - p.b()[j0 - 1];
    let gens = p.a().iter().map(|x| x + shift).collect();
    let syz = p
        .b()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j0 - 1)
        .map(|(_, x)| x + shift)
        .collect();
    BettiTable::new(gens, syz)
}

/// False when `k = d - b_j` for some `j`: the surface equation then stops
/// being a minimal generator.
pub fn is_f_minimal(p: &WeakAdmissiblePair, k: i64, d: i64) -> bool {
    p.b().iter().all(|b| k != d - b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResolutionCase {
    Ci { f: i64, g: i64 },
    MinimalF { k: i64 },
    NonminimalF { j0: usize },
}

/// Where a Betti table comes from: a complete intersection, or one of the
/// two determinantal shapes attached to a pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResolutionFamily {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<WeakAdmissiblePair>,
    pub surface_degree: i64,
    #[serde(flatten)]
    pub case: ResolutionCase,
}

impl ResolutionFamily {
    pub fn ci(surface_degree: i64, f: i64, g: i64) -> Self {
        Self {
            pair: None,
            surface_degree,
            case: ResolutionCase::Ci { f, g },
        }
    }

    pub fn minimal(pair: WeakAdmissiblePair, surface_degree: i64, k: i64) -> Self {
        Self {
            pair: Some(pair),
            surface_degree,
            case: ResolutionCase::MinimalF { k },
        }
    }

    pub fn nonminimal(pair: WeakAdmissiblePair, surface_degree: i64, j0: usize) -> Self {
        Self {
            pair: Some(pair),
            surface_degree,
            case: ResolutionCase::NonminimalF { j0 },
        }
    }

    pub fn table(&self) -> Result<BettiTable, ResolutionError> {
        match (&self.case, &self.pair) {
            (ResolutionCase::Ci { f, g }, _) => ci_table(*f, *g),
            (ResolutionCase::MinimalF { k }, Some(p)) => thm1_case_ii(p, *k, self.surface_degree),
            (ResolutionCase::NonminimalF { j0 }, Some(p)) => {
                thm1_case_iii(p, *j0, self.surface_degree)
            }
            (_, None) => unreachable!("determinantal families always carry a pair"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(gens: &[i64], syz: &[i64]) -> BettiTable {
        BettiTable::new(gens.to_vec(), syz.to_vec()).unwrap()
    }

    fn pair(a: &[i64], b: &[i64]) -> WeakAdmissiblePair {
        WeakAdmissiblePair::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn degree_examples() {
        for k in 0..6 {
            let tab = t(&[1 + k, 1 + k, 4], &[2 + k, 4 + k]);
            assert_eq!(tab.raw_invariants().unwrap(), CurveInvariants::new(4 * k + 1, 2 * k * k + k));
        }
        assert_eq!(t(&[2, 2], &[4]).degree(), Ok(4));
        assert_eq!(t(&[3, 3, 3, 3], &[4, 4, 4]).degree(), Ok(6));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(t(&[3, 3, 3, 3], &[4, 4, 4]).genus(), Ok(3));
        assert_eq!(t(&[1, 3, 4], &[4, 4]).invariants(), Ok(CurveInvariants::new(3, 1)));
    }

    #[test]
    fn ci_examples() {
        assert_eq!(ci_table(2, 2).unwrap().invariants(), Ok(CurveInvariants::new(4, 1)));
        assert_eq!(ci_table(1, 1).unwrap().invariants(), Ok(CurveInvariants::new(1, 0)));
        assert_eq!(ci_table(4, 3).unwrap().invariants(), Ok(CurveInvariants::new(12, 19)));
        assert_eq!(ci_table(4, 3), ci_table(3, 4));
        assert!(ci_table(0, 3).is_err());
    }

    #[test]
    fn case_ii_examples() {
        let tab = thm1_case_ii(&pair(&[1, 1], &[2, 4]), 3, 4).unwrap();
        assert_eq!((tab.gens(), tab.syz()), (&[4, 4, 4][..], &[5, 7][..]));
        let tab = thm1_case_ii(&pair(&[1, 2], &[3, 4]), 0, 4).unwrap();
        assert_eq!((tab.gens(), tab.syz()), (&[1, 2, 4][..], &[3, 4][..]));
        let tab = thm1_case_ii(&pair(&[1; 4], &[2; 4]), 2, 4).unwrap();
        assert_eq!((tab.gens(), tab.syz()), (&[3, 3, 3, 3, 4][..], &[4, 4, 4, 4][..]));
        assert_eq!(tab.invariants(), Ok(CurveInvariants::new(6, 3)));
    }

    #[test]
    fn case_ii_errors() {
        assert_eq!(
            thm1_case_ii(&pair(&[1, 1], &[2, 4]), -1, 4),
            Err(ResolutionError::NonPositiveTwist(0))
        );
        assert!(matches!(
            thm1_case_ii(&pair(&[1, 1], &[2, 4]), 0, 3),
            Err(ResolutionError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn case_iii_examples() {
        let p = pair(&[1, 1], &[2, 4]);
        let line = thm1_case_iii(&p, 2, 4).unwrap();
        assert_eq!((line.gens(), line.syz()), (&[1, 1][..], &[2][..]));
        let ci33 = thm1_case_iii(&p, 1, 4).unwrap();
        assert_eq!((ci33.gens(), ci33.syz()), (&[3, 3][..], &[6][..]));
        let f1 = thm1_case_iii(&pair(&[1; 4], &[2; 4]), 1, 4).unwrap();
        assert_eq!((f1.gens(), f1.syz()), (&[3, 3, 3, 3][..], &[4, 4, 4][..]));
        assert!(matches!(
            thm1_case_iii(&p, 3, 4),
            Err(ResolutionError::PivotOutOfRange { j0: 3, t: 2 })
        ));
    }

    #[test]
    fn minimality_examples() {
        assert!(!is_f_minimal(&pair(&[1, 1], &[2, 4]), 2, 4));
        assert!(is_f_minimal(&pair(&[1, 1], &[2, 4]), 3, 4));
        assert!(!is_f_minimal(&pair(&[1, 2], &[3, 4]), 0, 4));
    }

    #[test]
    fn validate_examples() {
        assert!(t(&[1, 1, 4], &[2, 4]).validate().is_empty());
        assert_eq!(
            t(&[1, 1], &[2, 2]).validate()[0],
            Violation::Shape { gens: 2, syz: 2 }
        );
        assert!(t(&[1, 1, 4], &[2, 5])
            .validate()
            .contains(&Violation::Balance { gens: 6, syz: 7 }));
    }

    #[test]
    fn ambient_dimension_is_metadata() {
        let tab = t(&[1, 1, 4], &[2, 4]).in_ambient(5).unwrap();
        assert_eq!(tab.ambient_dim(), 5);
        assert_eq!(tab.degree(), Err(ResolutionError::NotInP3(5)));
        assert!(t(&[1], &[]).in_ambient(2).is_err());
    }

    #[test]
    fn family_json_shape() {
        let fam = ResolutionFamily::minimal(pair(&[1, 1], &[2, 4]), 4, 3);
        let json = serde_json::to_string(&fam).unwrap();
        assert_eq!(
            json,
            r#"{"pair":{"a":[1,1],"b":[2,4]},"surface_degree":4,"case":"MINIMAL_F","k":3}"#
        );
        let back: ResolutionFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fam);
        assert_eq!(
            serde_json::to_string(&ResolutionFamily::ci(4, 4, 2)).unwrap(),
            r#"{"surface_degree":4,"case":"CI","f":4,"g":2}"#
        );
    }
}
