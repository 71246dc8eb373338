//! Exact Ehrhart quasi-polynomials of rational polytopes.
//!
//! The crate counts lattice points in dilates of rational polytopes and
//! simplices, interpolates the resulting quasi-polynomials, detects
//! quasi-period collapse, and verifies piecewise-unimodular
//! equidecomposition certificates that explain such collapse. A small
//! module handles lattice length and duality of reflexive polygons.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod counting;
pub mod ehrhart;
pub mod equidecomp;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod reflexive;

pub use error::{Error, Result};
pub use geometry::{AffineUnimodularMap, MapMode, Openness, Point, Rational, RationalPolytope, Simplex};
