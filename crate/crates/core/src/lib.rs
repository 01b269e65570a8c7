//! Realizability of finite groups as Galois and inertia groups, with the
//! group theory, `GL2(F_p)` and elliptic-curve machinery it needs.

pub mod arith;
pub mod cli;
pub mod elliptic;
pub mod group;
pub mod gl2;
pub mod local;
