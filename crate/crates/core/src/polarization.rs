//! Split and unsplit probabilities for photons arriving with differing linear
//! polarizations, and the coherent superpositions that restore perfect
//! bunching.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{create_photon, ModeLabel, OccupationVector, PhotonState};

/// Below this `|sin(alpha - beta)|` the two orderings of a superposition are
/// the same physical state.
const DEGENERACY_TOL: f64 = 1e-12;

/// Linear-polarization angles from horizontal, in radians, of the photon
/// entering the up channel (`alpha`) and the down channel (`beta`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizationAngles {
    pub alpha: f64,
    pub beta: f64,
}

impl PolarizationAngles {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::param("alpha", "must be finite"));
        }
        if !beta.is_finite() {
            return Err(Error::param("beta", "must be finite"));
        }
        Ok(Self { alpha, beta })
    }

    pub fn reversed(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn difference(&self) -> f64 {
        self.alpha - self.beta
    }
}

/// `(cos a a_uH^dag + sin a a_uV^dag)(cos b a_dH^dag + sin b a_dV^dag)|0>`
pub fn input_state(angles: PolarizationAngles) -> PhotonState {
    let (sa, ca) = angles.alpha.sin_cos();
    let (sb, cb) = angles.beta.sin_cos();
    let vac = PhotonState::vacuum();
    let up = create_photon(&vac, ModeLabel::UP_H)
        .scale(Complex64::new(ca, 0.0))
        .add(&create_photon(&vac, ModeLabel::UP_V).scale(Complex64::new(sa, 0.0)))
        .expect("single-photon terms");
    create_photon(&up, ModeLabel::DOWN_H)
        .scale(Complex64::new(cb, 0.0))
        .add(&create_photon(&up, ModeLabel::DOWN_V).scale(Complex64::new(sb, 0.0)))
        .expect("two-photon terms")
}

/// `sin^2(alpha - beta) / 2`
pub fn split_probability(angles: PolarizationAngles) -> f64 {
    0.5 * angles.difference().sin().powi(2)
}

/// `1 - sin^2(alpha - beta) / 2`
pub fn unsplit_probability(angles: PolarizationAngles) -> f64 {
    1.0 - split_probability(angles)
}

/// Split-pair part of the beamsplitter output,
/// `-(sin(alpha - beta)/2) (|1_uH;1_dV> - |1_uV;1_dH>)`. Odd under
/// `alpha <-> beta`.
pub fn split_component(angles: PolarizationAngles) -> PhotonState {
    let amp = -0.5 * angles.difference().sin();
    if amp == 0.0 {
        return PhotonState::zero(2);
    }
    PhotonState::from_amplitudes([
        (
            OccupationVector::from_modes(&[ModeLabel::UP_H, ModeLabel::DOWN_V]),
            Complex64::new(amp, 0.0),
        ),
        (
            OccupationVector::from_modes(&[ModeLabel::UP_V, ModeLabel::DOWN_H]),
            Complex64::new(-amp, 0.0),
        ),
    ])
    .expect("two-photon kets")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperposedInput {
    /// Normalized state.
    pub state: PhotonState,
    /// Norm of `(|Psi^{a,b}> + |Psi^{b,a}>)/sqrt 2` before renormalization.
    pub raw_norm: f64,
    /// Set when `alpha = beta (mod pi)`; `state` is then the plain product state.
    pub degenerate: bool,
}

/// Normalized coherent sum of the input state and its polarization-swapped
/// counterpart. The swapped pair contributes the opposite split amplitude,
/// so the beamsplitter output is perfectly bunched.
pub fn superposed_input(angles: PolarizationAngles) -> SuperposedInput {
    let direct = input_state(angles);
    if angles.difference().sin().abs() < DEGENERACY_TOL {
        return SuperposedInput {
            state: direct,
            raw_norm: 1.0,
            degenerate: true,
        };
    }
    let sum = direct
        .add(&input_state(angles.reversed()))
        .expect("same photon number")
        .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    let raw_norm = sum.norm();
    SuperposedInput {
        state: sum.normalize().expect("non-degenerate sum has nonzero norm"),
        raw_norm,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_beamsplitter, project_split, split_probability_of, BeamsplitterUnitary};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn ket(a: ModeLabel, b: ModeLabel) -> OccupationVector {
        OccupationVector::from_modes(&[a, b])
    }

    fn angles(a: f64, b: f64) -> PolarizationAngles {
        PolarizationAngles::new(a, b).unwrap()
    }

    fn pipeline_split(a: PolarizationAngles) -> PhotonState {
        project_split(&apply_beamsplitter(&input_state(a), &BeamsplitterUnitary::default()))
    }

    #[test]
    fn input_state_examples() {
        let hh = input_state(angles(0.0, 0.0));
        assert_eq!(
            hh.prune(0.0),
            PhotonState::basis(ket(ModeLabel::UP_H, ModeLabel::DOWN_H))
        );

        let hv = input_state(angles(0.0, FRAC_PI_2)).prune(1e-15);
        assert!((hv.amplitude(&ket(ModeLabel::UP_H, ModeLabel::DOWN_V)).re - 1.0).abs() < 1e-15);
        assert_eq!(hv.iter().count(), 1);

        let diag = input_state(angles(FRAC_PI_4, FRAC_PI_4));
        for (_, a) in diag.iter() {
            assert!((a.re - 0.5).abs() < 1e-15);
        }
        assert_eq!(diag.iter().count(), 4);
        assert!((diag.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn split_probability_examples() {
        assert_eq!(split_probability(angles(0.7, 0.7)), 0.0);
        assert!((split_probability(angles(0.0, FRAC_PI_2)) - 0.5).abs() < 1e-15);
        assert!((unsplit_probability(angles(0.0, FRAC_PI_2)) - 0.5).abs() < 1e-15);
        let a = angles(0.0, FRAC_PI_4);
        assert!((split_probability(a) - 0.25).abs() < 1e-15);
        let via_pipeline =
            split_probability_of(&apply_beamsplitter(&input_state(a), &BeamsplitterUnitary::default())).unwrap();
        assert!((via_pipeline - 0.25).abs() < 1e-12);
    }

    #[test]
    fn split_component_for_orthogonal_inputs() {
        // -sin(0 - pi/2)/2 = +1/2
        let s = split_component(angles(0.0, FRAC_PI_2));
        let hv = s.amplitude(&ket(ModeLabel::UP_H, ModeLabel::DOWN_V));
        let vh = s.amplitude(&ket(ModeLabel::UP_V, ModeLabel::DOWN_H));
        assert!((hv.re - 0.5).abs() < 1e-15);
        assert!((vh.re + 0.5).abs() < 1e-15);
        assert!(s.max_abs_diff(&pipeline_split(angles(0.0, FRAC_PI_2))) < 1e-12);
    }

    #[test]
    fn split_component_matches_pipeline_and_flips_sign() {
        for &(a, b) in &[(0.1, 1.3), (-2.0, 0.4), (3.0, 3.0), (0.25, -1.1)] {
            let fwd = split_component(angles(a, b));
            let rev = split_component(angles(b, a));
            assert!(fwd.max_abs_diff(&pipeline_split(angles(a, b))) < 1e-12);
            assert!(fwd.add(&rev).unwrap().max_abs_diff(&PhotonState::zero(2)) < 1e-14);
        }
        assert_eq!(split_component(angles(1.0, 1.0)), PhotonState::zero(2));
    }

    #[test]
    fn hv_superposition() {
        let s = superposed_input(angles(0.0, FRAC_PI_2));
        assert!(!s.degenerate);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let st = s.state.prune(1e-15);
        assert!((st.amplitude(&ket(ModeLabel::UP_H, ModeLabel::DOWN_V)).re - r).abs() < 1e-15);
        assert!((st.amplitude(&ket(ModeLabel::UP_V, ModeLabel::DOWN_H)).re - r).abs() < 1e-15);
        assert_eq!(st.iter().count(), 2);
        let out = apply_beamsplitter(&s.state, &BeamsplitterUnitary::default());
        assert!(split_probability_of(&out).unwrap() < 1e-12);
    }

    #[test]
    fn superposition_norm_for_non_orthogonal_orderings() {
        // <Psi^{ab}|Psi^{ba}> = cos^2(a-b); raw norm^2 = 1 + cos^2(a-b) = 1.25 at pi/3.
        let s = superposed_input(angles(0.0, FRAC_PI_3));
        let overlap = input_state(angles(0.0, FRAC_PI_3)).inner(&input_state(angles(FRAC_PI_3, 0.0)));
        assert!((overlap.re - 0.25).abs() < 1e-15);
        assert!((s.raw_norm - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((s.state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_superposition_is_flagged() {
        let s = superposed_input(angles(0.4, 0.4));
        assert!(s.degenerate);
        assert_eq!(s.state, input_state(angles(0.4, 0.4)));
        assert!(superposed_input(angles(0.4, 0.4 + std::f64::consts::PI)).degenerate);
    }

    #[test]
    fn non_finite_angles_rejected() {
        assert!(PolarizationAngles::new(f64::NAN, 0.0).is_err());
        assert!(PolarizationAngles::new(0.0, f64::INFINITY).is_err());
    }
}
