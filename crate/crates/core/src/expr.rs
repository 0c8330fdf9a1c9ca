//! Integer affine expressions such as `3+n-m`, used by the family
//! templates in the bundled data files.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {0:?} in {1:?}")]
    BadChar(char, String),
    #[error("dangling operator in {0:?}")]
    Dangling(String),
    #[error("unbound parameter {0:?}")]
    Unbound(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Affine {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
    source: String,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Self {
            constant: c,
            coeffs: BTreeMap::new(),
            source: c.to_string(),
        }
    }

    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<i64, ExprError> {
        let mut v = self.constant;
        for (name, c) in &self.coeffs {
            let x = env.get(name).ok_or_else(|| ExprError::Unbound(name.clone()))?;
            v += c * x;
        }
        Ok(v)
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }
}

impl FromStr for Affine {
    type Err = ExprError;

    /// Sums of optionally signed integer literals, names, and `k*name`
    /// products.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(ExprError::Empty);
        }
        let mut out = Affine {
            source: src.clone(),
            ..Default::default()
        };
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            if i == chars.len() {
                return Err(ExprError::Dangling(src));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let number: Option<i64> = (i > start).then(|| {
                chars[start..i].iter().collect::<String>().parse().unwrap()
            });
            if i < chars.len() && chars[i] == '*' {
                if number.is_none() {
                    return Err(ExprError::BadChar('*', src));
                }
                i += 1;
            }
            let nstart = i;
            while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[nstart..i].iter().collect();
            match (number, name.is_empty()) {
                (Some(n), true) => out.constant += sign * n,
                (n, false) => *out.coeffs.entry(name).or_insert(0) += sign * n.unwrap_or(1),
                (None, true) => return Err(ExprError::BadChar(chars[i], src)),
            }
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(ExprError::BadChar(chars[i], src));
            }
        }
        out.coeffs.retain(|_, c| *c != 0);
        Ok(out)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

impl<'de> Deserialize<'de> for Affine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Affine::constant(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
