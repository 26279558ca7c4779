pub mod absorption;
pub mod atmosphere;
pub mod cli;
pub mod constants;
pub mod error;
pub mod linkbudget;
pub mod quadrature;
pub mod scattering;
pub mod scenario;
pub mod waveform;

pub use error::{Error, Result};
