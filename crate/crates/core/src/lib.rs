//! Exact-arithmetic verification of the self-intersection of a Lagrangian
//! `P^3` in a hyperkähler sixfold of `K3^[3]` type.

pub mod arith;
pub mod k3;
pub mod linalg;
pub mod poly;
pub mod symring;
pub mod hodge;
pub mod fujiki;
pub mod curve;
pub mod padic;
pub mod descent;
pub mod integral;
pub mod enumerative;
pub mod report;
