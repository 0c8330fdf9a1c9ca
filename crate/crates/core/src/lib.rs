//! Weak admissible pairs, their degree matrices, and the ACM curves they
//! produce on surfaces in projective three-space.

pub mod classifier;
pub mod enumerate;
pub mod expr;
pub mod families;
pub mod liaison;
pub mod pairs;
pub mod picard;
pub mod reproduce;
pub mod resolutions;
