//! Reconstruction of Gaussian graphical model networks.
//!
//! Three estimators are provided: local partial correlation with
//! relevance-network neighbourhoods ([`estimators::lpc`]), the graphical
//! lasso ([`estimators::glasso`]) and ridge partial correlations tested
//! against a permutation null ([`estimators::ridge`]). The [`graphgen`],
//! [`synth`] and [`eval`] modules form a simulation harness that draws
//! ground-truth graphs, turns them into Gaussian data and scores
//! reconstructions with ROC curves.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod graphgen;
pub mod io;
pub mod numerics;
pub mod estimators;
pub mod eval;
pub mod par;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};
