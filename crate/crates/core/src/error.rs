use thiserror::Error;

pub type Result<T, E = ArlError> = std::result::Result<T, E>;

/// Failures of the numeric pipeline.
///
/// Every variant maps to a stable snake_case [`code`](ArlError::code) that is
/// written to the `status` column of sweep output.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArlError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty Fresnel region: r_min = {r_min:e} m >= r_max = {r_max:e} m")]
    EmptyFresnelRegion { r_min: f64, r_max: f64 },

    #[error("singular FIM (reciprocal condition {rcond:e})")]
    SingularFim { rcond: f64 },

    #[error("degenerate Schur determinant (|Q| = {value:e})")]
    DegenerateQ { value: f64 },

    #[error("degenerate quartic (beta*a2 - alpha1^2 = {value:e})")]
    DegenerateQuartic { value: f64 },

    #[error("negative discriminant ({discriminant:e}): noise too high for the linearized model")]
    NegativeDiscriminant { discriminant: f64 },

    #[error("negative radicand ({value:e}) on the selected branch")]
    NegativeRadicand { value: f64 },

    #[error("invalid low-noise regime (radicand {value:e})")]
    InvalidLowNoiseRegime { value: f64 },

    #[error("no sign change of CRB(delta) - delta^2 on (0, {delta_max:e}]")]
    NoSignChange { delta_max: f64 },

    #[error("CRB(delta) < delta^2 already at the scan floor {floor:e}")]
    RootBelowScanFloor { floor: f64 },

    #[error("no admissible (noise-dependent) positive root")]
    NoAdmissibleRoot,
}

impl ArlError {
    pub fn code(&self) -> &'static str {
        match self {
            ArlError::InvalidGeometry(_) => "invalid_geometry",
            ArlError::InvalidParameter(_) => "invalid_parameter",
            ArlError::EmptyFresnelRegion { .. } => "empty_fresnel_region",
            ArlError::SingularFim { .. } => "singular_fim",
            ArlError::DegenerateQ { .. } => "degenerate_q",
            ArlError::DegenerateQuartic { .. } => "degenerate_quartic",
            ArlError::NegativeDiscriminant { .. } => "negative_discriminant",
            ArlError::NegativeRadicand { .. } => "negative_radicand",
            ArlError::InvalidLowNoiseRegime { .. } => "invalid_low_noise_regime",
            ArlError::NoSignChange { .. } => "no_sign_change",
            ArlError::RootBelowScanFloor { .. } => "root_below_scan_floor",
            ArlError::NoAdmissibleRoot => "no_admissible_root",
        }
    }
}
