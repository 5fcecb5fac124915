use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    /// The 4x4 transfer matrix couples the two spin states, so no 2x2
    /// Bogoliubov block can be extracted.
    #[error("transfer matrix is not spin-diagonal (mixed-spin entry {max_mixed:.3e})")]
    NonLongitudinal { max_mixed: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("Fock vector is not normalized (norm deviation {deviation:.3e})")]
    NotNormalized { deviation: f64 },

    /// No real trap momentum exists below the pair threshold eA >= 2m.
    #[error("kick q = {q} is below the pair-creation threshold |q| >= 2m = {}", 2.0 * mass)]
    SubThreshold { mass: f64, q: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("mass must be finite and > 0, got {mass}")))
    }
}

pub(crate) fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite, got {value}")))
    }
}
