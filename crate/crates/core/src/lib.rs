//! Invariant-ring dimensions of representations of simple groups, tori and
//! finite rational matrix groups, and certification of the k-polarization
//! property from them.

pub mod catalog;
pub mod charalg;
pub mod error;
pub mod fingrp;
pub mod int;
pub mod oracle;
pub mod polcheck;
pub mod polyops;
pub mod rep;
pub mod report;
pub mod rootsys;
pub mod sampler;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use int::Int;
pub use weight::Weight;
