//! Exact construction and verification of S3-covers from building data.
//!
//! The crate is generic over the scalar ring through [`Ring`] and [`Field`];
//! the aliases below fix the common choices.

pub mod atlas;
pub mod covers;
pub mod exactnum;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod miranda;
pub mod poly;
pub mod qring;
pub mod s3x;
pub mod scalg;

pub use covers::{BuildingData, CoverAlgebra, CoverError, LocusReport};
pub use exactnum::{ArithError, Field, Fp, Rational, Ring};
pub use groebner::{GbError, GbOptions, GroebnerBasis};
pub use miranda::{TripleCoverData, ZData};
pub use poly::{IdealGens, Monomial, MonomialOrder, Poly, PolyError, PolyRing};
pub use qring::{CoeffRing, RingElem, RingHom};
pub use s3x::S3Algebra;
pub use scalg::{AlgebraMap, SCAlgebra};

pub type QPoly = Poly<Rational>;
pub type FpPoly = Poly<Fp>;
pub type QIdeal = IdealGens<Rational>;
pub type FpIdeal = IdealGens<Fp>;
