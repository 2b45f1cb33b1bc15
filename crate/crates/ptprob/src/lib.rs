//! A toolkit connecting statistical probabilities (distributions, channels)
//! with logical probabilities (truth functions, fuzzy sets) through Bayes'
//! rule, and the measures built on that bridge: semantic information,
//! truth-function learning and classification, rate-distortion and
//! statistical-mechanics identities, confirmation measures, and fuzzy
//! syllogistic reasoning.
//!
//! Everything is finite and discrete: a [`universe::Universe`] of points
//! carries [`distribution::Distribution`]s, [`channel::ShannonChannel`]s of
//! transition probabilities, and [`truth::TruthFunction`]s with values in
//! `[0, 1]`. Information quantities are reported in bits unless a function
//! says otherwise; `0 log 0 = 0`, and impossible-reference divergences use
//! the `f64::INFINITY` / `f64::NEG_INFINITY` sentinels.

pub mod channel;
pub mod confirm;
pub mod distribution;
pub mod error;
pub mod fuzzy;
pub mod info;
pub mod learn;
pub mod prob;
pub mod rate;
pub mod reason;
pub mod semantic;
pub mod thermo;
pub mod truth;
pub mod universe;

pub use channel::{RecoveredChannel, ShannonChannel};
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use semantic::SemanticChannel;
pub use truth::{TruthForm, TruthFunction};
pub use universe::{Point, Universe};

/// Natural log of 2; converts between bits and nats.
pub const LN_2: f64 = std::f64::consts::LN_2;
