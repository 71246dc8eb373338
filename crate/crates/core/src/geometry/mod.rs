//! Exact rational geometry: points, affine unimodular maps, simplices and
//! polytopes, plus the linear algebra and LP machinery behind them.

pub mod affine;
pub mod linalg;
pub mod lp;
pub mod point;
pub mod polytope;
pub mod region;
pub mod simplex;

pub use affine::{AffineUnimodularMap, MapMode};
pub use point::{int, rat, Point, Rational};
pub use polytope::{RationalPolytope, MAX_DIM};
pub use region::{AffineFrame, AffineFunctional, Inequality, LinearRegion};
pub use simplex::{open_faces_of_complex, Location, Openness, Simplex};
