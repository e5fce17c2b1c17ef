use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beamsplitter matrix is not unitary (max |U^dag U - I| = {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("state mixes photon numbers {first} and {second}")]
    MixedPhotonNumber { first: u32, second: u32 },

    #[error("expected a {expected}-photon state, got {found} photons")]
    PhotonNumber { expected: u32, found: u32 },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("state is outside a Bell-decomposable sector: {0}")]
    Sector(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grid is under-resolved: {0}")]
    UnderResolved(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
