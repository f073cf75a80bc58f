//! Modular representation theory of finite groups over Galois rings:
//! blocks, defect groups, Brauer trees, p-local Burnside rings, idempotent
//! lifting and verification of two-term tilting complexes.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod burnside;
pub mod coeff;
pub mod galgebra;
pub mod groups;
pub mod idemlift;
pub mod modrep;
pub mod rouquier;
