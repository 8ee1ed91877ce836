//! AeroMACS OFDMA physical-layer analysis.
//!
//! * [`params`]: numerology, data rate, prefix overhead and prefix selection.
//! * [`propagation`]: free-space coverage, excess-loss cell range, delay
//!   spread and ground-station corridor planning.
//! * [`mobility`]: Doppler shift, ICI power, coherence time and the speed
//!   limit implied by the subcarrier spacing.
//! * [`simulator`]: Monte Carlo OFDM over Clarke fading, used as an
//!   independent check of the ICI model, and a two-path prefix experiment.
//! * [`cli`]: the `aeromacs` command-line front end.

pub mod bessel;
pub mod cli;
pub mod mobility;
pub mod params;
pub mod propagation;
pub mod simulator;
pub mod units;

pub use mobility::{IciInterpretation, MobilityAnalysis};
pub use params::{Direction, McsScheme, OfdmaConfig};
pub use propagation::{ExcessLossModel, LinkBudget};
pub use simulator::{SimulationResult, SimulationSpec};
