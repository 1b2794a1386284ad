//! Sum of element orders `ψ(G)` of finite groups.
//!
//! * [`arith`]: exact rationals, factorization and the cyclic closed forms.
//! * [`group`]: groups as Cayley tables built from [`group::GroupSpec`]s.
//! * [`enumeration`]: every group of a small order up to isomorphism.
//! * [`theorems`]: executable checks of the maximal and second-maximal
//!   classification results, producing [`theorems::VerificationReport`]s.

pub mod arith;
pub mod enumeration;
pub mod group;
pub mod theorems;
