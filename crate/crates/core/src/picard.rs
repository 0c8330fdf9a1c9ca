//! Rank-two Picard lattices `Z H + Z C` with Gram matrix
//! `[[h2, hc], [hc, c2]]`, and exact integer solving of
//! `D.D = s, lo <= D.H <= hi`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("H.H = {0} must be positive")]
    NotPolarized(i64),
    #[error("lattice is not even: H.H = {h2}, C.C = {c2}")]
    NotEven { h2: i64, c2: i64 },
    #[error("determinant {0} is not negative")]
    NotHyperbolic(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicardLattice {
    pub h2: i64,
    pub hc: i64,
    pub c2: i64,
}

/// Class `a H + b C`. Serialized as `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const HYPERPLANE: DivisorClass = DivisorClass { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
}

impl From<[i64; 2]> for DivisorClass {
    fn from([a, b]: [i64; 2]) -> Self {
        Self { a, b }
    }
}

impl From<DivisorClass> for [i64; 2] {
    fn from(c: DivisorClass) -> Self {
        [c.a, c.b]
    }
}

impl std::ops::Add for DivisorClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl PicardLattice {
    pub fn new(h2: i64, hc: i64, c2: i64) -> Result<Self, PicardError> {
        if h2 <= 0 {
            return Err(PicardError::NotPolarized(h2));
        }
        if h2 % 2 != 0 || c2 % 2 != 0 {
            return Err(PicardError::NotEven { h2, c2 });
        }
        let det = h2 * c2 - hc * hc;
        if det >= 0 {
            return Err(PicardError::NotHyperbolic(det));
        }
        Ok(Self { h2, hc, c2 })
    }

    pub fn determinant(&self) -> i64 {
        self.h2 * self.c2 - self.hc * self.hc
    }

    pub fn dot(&self, x: DivisorClass, y: DivisorClass) -> i64 {
        self.h2 * x.a * y.a + self.hc * (x.a * y.b + x.b * y.a) + self.c2 * x.b * y.b
    }

    pub fn square(&self, x: DivisorClass) -> i64 {
        self.dot(x, x)
    }

    pub fn degree(&self, x: DivisorClass) -> i64 {
        self.dot(x, DivisorClass::HYPERPLANE)
    }

    /// `D^2 / 2 + 1`.
    pub fn adjunction_genus(&self, x: DivisorClass) -> i64 {
        self.square(x) / 2 + 1
    }

    /// All classes with `D.D = self_int` and `dh_min <= D.H <= dh_max`.
    ///
    /// For each degree the linear condition is parametrized by the
    /// extended gcd, leaving a one-variable quadratic whose leading
    /// coefficient is the (negative) square of the generator of `H^perp`.
    pub fn solve_classes(&self, self_int: i64, dh_min: i64, dh_max: i64) -> BTreeSet<DivisorClass> {
        let mut out = BTreeSet::new();
        for dh in dh_min..=dh_max {
            out.extend(self.solve_at_degree(self_int, dh));
        }
        out
    }

    fn solve_at_degree(&self, self_int: i64, dh: i64) -> Vec<DivisorClass> {
        let (h2, hc, c2) = (self.h2 as i128, self.hc as i128, self.c2 as i128);
        let eg = h2.extended_gcd(&hc);
        let g = eg.gcd;
        if dh as i128 % g != 0 {
            return Vec::new();
        }
        let scale = dh as i128 / g;
        // a = a0 + u s, b = b0 + v s with h2 u + hc v = 0
        let (a0, b0) = (eg.x * scale, eg.y * scale);
        let (u, v) = (hc / g, -h2 / g);
        let q = |a: i128, b: i128, x: i128, y: i128| h2 * a * x + hc * (a * y + b * x) + c2 * b * y;
        let qa = q(u, v, u, v);
        let qb = 2 * q(a0, b0, u, v);
        let qc = q(a0, b0, a0, b0) - self_int as i128;
        debug_assert!(qa < 0, "H-orthogonal vectors have negative square");
        let disc = qb * qb - 4 * qa * qc;
        if disc < 0 {
            return Vec::new();
        }
        let root = disc.sqrt();
        if root * root != disc {
            return Vec::new();
        }
        let mut sols = Vec::new();
        for num in [-qb + root, -qb - root] {
            if num % (2 * qa) == 0 {
                let s = num / (2 * qa);
                let class = DivisorClass::new((a0 + u * s) as i64, (b0 + v * s) as i64);
                if !sols.contains(&class) {
                    sols.push(class);
                }
            }
        }
        sols
    }

    /// Classes `D` with `1 <= D.H <= dh_max` whose arithmetic genus as a
    /// plane curve of degree `e = D.H`, `(e-1)(e-2)/2`, equals `D^2/2 + 1`.
    pub fn plane_curve_classes(&self, dh_max: i64) -> BTreeSet<DivisorClass> {
        let mut out = BTreeSet::new();
        for e in 1..=dh_max {
            let self_int = (e - 1) * (e - 2) - 2;
            out.extend(self.solve_at_degree(self_int, e));
        }
        out
    }

    pub fn watanabe_candidates(&self) -> Vec<WatanabeCase> {
        WATANABE_CASES
            .iter()
            .map(|&(label, self_int, lo, hi, side_condition)| WatanabeCase {
                label: label.to_string(),
                self_int,
                dh_min: lo,
                dh_max: hi,
                classes: self.solve_classes(self_int, lo, hi).into_iter().collect(),
                side_condition: side_condition.map(str::to_string),
            })
            .collect()
    }
}

impl fmt::Display for PicardLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.h2, self.hc, self.hc, self.c2)
    }
}

/// Gram matrix `[[4, d], [d, 2g - 2]]` of a quartic containing a curve of
/// degree `d` and genus `g`.
pub fn quartic_lattice(degree: i64, genus: i64) -> Result<PicardLattice, PicardError> {
    PicardLattice::new(4, degree, 2 * genus - 2)
}

/// Numerical conditions for an initialized ACM line bundle on a quartic
/// with `|D - H|` empty: (label, D^2, min D.H, max D.H, unchecked side
/// condition).
pub const WATANABE_CASES: [(&str, i64, i64, i64, Option<&str>); 4] = [
    ("D^2=-2, 1<=D.H<=3", -2, 1, 3, None),
    ("D^2=0, 3<=D.H<=4", 0, 3, 4, None),
    ("D^2=2, D.H=5", 2, 5, 5, None),
    ("D^2=4, D.H=6", 4, 6, 6, Some("requires |D-H| = |2H-D| = empty")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WatanabeCase {
    pub label: String,
    pub self_int: i64,
    pub dh_min: i64,
    pub dh_max: i64,
    pub classes: Vec<DivisorClass>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub side_condition: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64, b: i64) -> DivisorClass {
        DivisorClass::new(a, b)
    }

    fn set(v: &[(i64, i64)]) -> BTreeSet<DivisorClass> {
        v.iter().map(|&(a, b)| c(a, b)).collect()
    }

    #[test]
    fn quartic_lattice_examples() {
        assert_eq!(quartic_lattice(1, 0).unwrap(), PicardLattice { h2: 4, hc: 1, c2: -2 });
        assert_eq!(quartic_lattice(6, 3).unwrap(), PicardLattice { h2: 4, hc: 6, c2: 4 });
        assert_eq!(quartic_lattice(3, 0).unwrap(), PicardLattice { h2: 4, hc: 3, c2: -2 });
        // plane quartic: [[4,4],[4,4]] is degenerate
        assert_eq!(quartic_lattice(4, 3), Err(PicardError::NotHyperbolic(0)));
        assert!(matches!(PicardLattice::new(4, 1, -3), Err(PicardError::NotEven { .. })));
        assert!(PicardLattice::new(0, 1, -2).is_err());
    }

    #[test]
    fn dot_examples() {
        let f4 = quartic_lattice(1, 0).unwrap();
        assert_eq!(f4.dot(c(0, 1), c(0, 1)), -2);
        let f5 = quartic_lattice(2, 0).unwrap();
        assert_eq!(f5.dot(c(1, 0), c(0, 1)), 2);
        assert_eq!(f5.dot(c(0, 0), c(7, -3)), 0);
    }

    #[test]
    fn adjunction_examples() {
        let f4 = quartic_lattice(1, 0).unwrap();
        assert_eq!((f4.degree(c(2, 0)), f4.adjunction_genus(c(2, 0))), (8, 9));
        assert_eq!((f4.degree(c(1, -1)), f4.adjunction_genus(c(1, -1))), (3, 1));
        let f1 = quartic_lattice(6, 3).unwrap();
        assert_eq!((f1.degree(c(0, 1)), f1.adjunction_genus(c(0, 1))), (6, 3));
    }

    #[test]
    fn solve_examples() {
        let f4 = quartic_lattice(1, 0).unwrap();
        assert_eq!(f4.solve_classes(-2, 1, 3), set(&[(0, 1)]));
        let f5 = quartic_lattice(2, 0).unwrap();
        assert_eq!(f5.solve_classes(-2, 1, 3), set(&[(0, 1), (1, -1)]));
        let f1 = quartic_lattice(6, 3).unwrap();
        assert_eq!(f1.solve_classes(4, 6, 6), set(&[(0, 1), (3, -1)]));
        // empty degree range
        assert!(f1.solve_classes(4, 7, 6).is_empty());
    }

    #[test]
    fn watanabe_examples() {
        let f2 = quartic_lattice(3, 0).unwrap();
        assert_eq!(f2.watanabe_candidates()[2].classes, vec![c(2, -1)]);
        let f3 = quartic_lattice(4, 1).unwrap();
        assert_eq!(f3.watanabe_candidates()[1].classes, vec![c(0, 1), c(2, -1)]);
        let f4 = quartic_lattice(1, 0).unwrap();
        let cases = f4.watanabe_candidates();
        assert_eq!(cases[1].classes, vec![c(1, -1)]);
        assert!(cases[3].side_condition.is_some());
        assert!(cases[0].side_condition.is_none());
    }

    #[test]
    fn plane_curve_examples() {
        let f4 = quartic_lattice(1, 0).unwrap();
        assert_eq!(f4.plane_curve_classes(4), set(&[(0, 1), (1, 0), (1, -1)]));
        let f1 = quartic_lattice(6, 3).unwrap();
        assert_eq!(f1.plane_curve_classes(6), set(&[(1, 0)]));
        let f5 = quartic_lattice(2, 0).unwrap();
        assert_eq!(f5.plane_curve_classes(4), set(&[(0, 1), (1, 0), (1, -1)]));
    }

    #[test]
    fn class_json_is_pair() {
        assert_eq!(serde_json::to_string(&c(1, -1)).unwrap(), "[1,-1]");
        let back: DivisorClass = serde_json::from_str("[3,-1]").unwrap();
        assert_eq!(back, c(3, -1));
    }
}
