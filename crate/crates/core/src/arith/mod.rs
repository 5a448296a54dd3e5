pub mod char2;
pub mod factor;
pub mod field;
pub mod fpoly;
pub mod intpoly;
pub mod primes;
pub mod tables;

pub use char2::{quad_solutions, sqrt_mod, trace};
pub use factor::{factor, Factorization};
pub use field::{is_square, BigPrimeField, ExtField, Field, PrimeField, PrimeFieldLike};
pub use fpoly::{gcd_many, gcd_poly, FPoly};
pub use intpoly::IntPoly;
