//! Creation-operator algebra on the four-mode Fock space spanned by the
//! spatial channels (up, down) and linear polarizations (H, V).
//!
//! States are stored in second quantization as complex amplitudes over
//! occupation vectors. The beamsplitter acts on the spatial index only and is
//! applied by substituting every creation operator of a basis ket with its
//! image under the 2x2 unitary.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Spatial {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Polarization {
    H,
    V,
}

/// One of the four field modes. Ordering is spatial-major (`Up < Down`,
/// then `H < V`), which fixes the canonical serialization order of states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModeLabel {
    pub spatial: Spatial,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub const UP_H: ModeLabel = ModeLabel::new(Spatial::Up, Polarization::H);
    pub const UP_V: ModeLabel = ModeLabel::new(Spatial::Up, Polarization::V);
    pub const DOWN_H: ModeLabel = ModeLabel::new(Spatial::Down, Polarization::H);
    pub const DOWN_V: ModeLabel = ModeLabel::new(Spatial::Down, Polarization::V);

    pub const ALL: [ModeLabel; 4] = [Self::UP_H, Self::UP_V, Self::DOWN_H, Self::DOWN_V];

    pub const fn new(spatial: Spatial, polarization: Polarization) -> Self {
        Self { spatial, polarization }
    }

    const fn index(self) -> usize {
        let s = match self.spatial {
            Spatial::Up => 0,
            Spatial::Down => 1,
        };
        let p = match self.polarization {
            Polarization::H => 0,
            Polarization::V => 1,
        };
        2 * s + p
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spatial {
            Spatial::Up => 'u',
            Spatial::Down => 'd',
        };
        let p = match self.polarization {
            Polarization::H => 'H',
            Polarization::V => 'V',
        };
        write!(f, "{s}{p}")
    }
}

/// Photon number per mode, indexed in [`ModeLabel::ALL`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationVector([u8; 4]);

impl OccupationVector {
    pub const fn vacuum() -> Self {
        Self([0; 4])
    }

    /// Occupation with one photon added per listed mode (repeats allowed).
    pub fn from_modes(modes: &[ModeLabel]) -> Self {
        modes.iter().fold(Self::vacuum(), |occ, &m| occ.with_added(m))
    }

    pub fn count(&self, mode: ModeLabel) -> u32 {
        u32::from(self.0[mode.index()])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&n| u32::from(n)).sum()
    }

    pub fn spatial_count(&self, spatial: Spatial) -> u32 {
        ModeLabel::ALL
            .iter()
            .filter(|m| m.spatial == spatial)
            .map(|&m| self.count(m))
            .sum()
    }

    pub fn polarization_count(&self, polarization: Polarization) -> u32 {
        ModeLabel::ALL
            .iter()
            .filter(|m| m.polarization == polarization)
            .map(|&m| self.count(m))
            .sum()
    }

    /// One photon in each spatial channel.
    pub fn is_split(&self) -> bool {
        self.spatial_count(Spatial::Up) == 1 && self.spatial_count(Spatial::Down) == 1
    }

    pub fn with_added(mut self, mode: ModeLabel) -> Self {
        let slot = &mut self.0[mode.index()];
        *slot = slot.checked_add(1).expect("mode occupation overflow");
        self
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = ModeLabel::ALL
            .iter()
            .filter(|&&m| self.count(m) > 0)
            .map(|&m| format!("{}_{}", self.count(m), m))
            .collect();
        if parts.is_empty() {
            write!(f, "|0>")
        } else {
            write!(f, "|{}>", parts.join(","))
        }
    }
}

/// Pure state of definite total photon number.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonState {
    photons: u32,
    amplitudes: BTreeMap<OccupationVector, Complex64>,
}

impl PhotonState {
    pub fn vacuum() -> Self {
        Self::basis(OccupationVector::vacuum())
    }

    pub fn basis(occ: OccupationVector) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(occ, Complex64::new(1.0, 0.0));
        Self {
            photons: occ.total(),
            amplitudes,
        }
    }

    /// The zero vector of the `photons`-photon sector.
    pub fn zero(photons: u32) -> Self {
        Self {
            photons,
            amplitudes: BTreeMap::new(),
        }
    }

    /// Builds a state from `(ket, amplitude)` pairs; repeated kets are summed.
    pub fn from_amplitudes<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationVector, Complex64)>,
    {
        let mut photons = None;
        let mut amplitudes: BTreeMap<OccupationVector, Complex64> = BTreeMap::new();
        for (occ, amp) in terms {
            let n = occ.total();
            match photons {
                None => photons = Some(n),
                Some(first) if first != n => return Err(Error::MixedPhotonNumber { first, second: n }),
                _ => {}
            }
            *amplitudes.entry(occ).or_default() += amp;
        }
        Ok(Self {
            photons: photons.unwrap_or(0),
            amplitudes,
        })
    }

    pub fn photon_number(&self) -> u32 {
        self.photons
    }

    pub fn amplitude(&self, occ: &OccupationVector) -> Complex64 {
        self.amplitudes.get(occ).copied().unwrap_or_default()
    }

    /// Terms in canonical ket order.
    pub fn iter(&self) -> impl Iterator<Item = (&OccupationVector, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().fold(0.0, |acc, a| acc + a.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            photons: self.photons,
            amplitudes: self.amplitudes.iter().map(|(&occ, &a)| (occ, a * factor)).collect(),
        }
    }

    /// `self + other`; both must live in the same photon-number sector.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.photons != other.photons && !other.amplitudes.is_empty() {
            if self.amplitudes.is_empty() {
                return Ok(other.clone());
            }
            return Err(Error::MixedPhotonNumber {
                first: self.photons,
                second: other.photons,
            });
        }
        let mut out = self.clone();
        for (&occ, &a) in &other.amplitudes {
            *out.amplitudes.entry(occ).or_default() += a;
        }
        Ok(out)
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .filter_map(|(occ, a)| other.amplitudes.get(occ).map(|b| a.conj() * b))
            .sum()
    }

    /// Largest elementwise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes
            .keys()
            .chain(other.amplitudes.keys())
            .map(|occ| (self.amplitude(occ) - other.amplitude(occ)).norm())
            .fold(0.0, f64::max)
    }

    /// Drops amplitudes with modulus at or below `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        Self {
            photons: self.photons,
            amplitudes: self
                .amplitudes
                .iter()
                .filter(|(_, a)| a.norm() > tol)
                .map(|(&o, &a)| (o, a))
                .collect(),
        }
    }

    fn filtered(&self, keep: impl Fn(&OccupationVector) -> bool) -> Self {
        Self {
            photons: self.photons,
            amplitudes: self
                .amplitudes
                .iter()
                .filter(|(occ, _)| keep(occ))
                .map(|(&o, &a)| (o, a))
                .collect(),
        }
    }

    fn accumulate(&mut self, other: Self) {
        for (occ, a) in other.amplitudes {
            *self.amplitudes.entry(occ).or_default() += a;
        }
    }
}

impl fmt::Display for PhotonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amplitudes.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .amplitudes
            .iter()
            .map(|(occ, a)| format!("({:+.6}{:+.6}i){}", a.re, a.im, occ))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Applies `a_mode^dag` to `state`. Amplitudes pick up the bosonic factor
/// `sqrt(n_mode + 1)`; the result is not renormalized.
pub fn create_photon(state: &PhotonState, mode: ModeLabel) -> PhotonState {
    PhotonState {
        photons: state.photons + 1,
        amplitudes: state
            .amplitudes
            .iter()
            .map(|(&occ, &a)| {
                let factor = f64::from(occ.count(mode) + 1).sqrt();
                (occ.with_added(mode), a * factor)
            })
            .collect(),
    }
}

/// Lossless 2x2 beamsplitter acting on the (up, down) spatial pair.
///
/// `matrix[out][in]` is the amplitude for a photon entering channel `in` to
/// leave in channel `out`, i.e. `a_in^dag -> sum_out matrix[out][in] a_out^dag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamsplitterUnitary {
    matrix: [[Complex64; 2]; 2],
}

impl BeamsplitterUnitary {
    pub fn new(matrix: [[Complex64; 2]; 2]) -> Result<Self> {
        let mut deviation: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let entry: Complex64 = (0..2).map(|k| matrix[k][i].conj() * matrix[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                deviation = deviation.max((entry - target).norm());
            }
        }
        if deviation.is_nan() || deviation > UNITARITY_TOL {
            return Err(Error::NonUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    /// `(1/sqrt 2) [[1, 1], [-1, 1]]`: `a_u^dag -> (a_u^dag - a_d^dag)/sqrt 2`,
    /// `a_d^dag -> (a_u^dag + a_d^dag)/sqrt 2`.
    pub fn balanced() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            matrix: [[h, h], [-h, h]],
        }
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.matrix
    }

    fn entry(&self, out: Spatial, input: Spatial) -> Complex64 {
        self.matrix[spatial_index(out)][spatial_index(input)]
    }
}

impl Default for BeamsplitterUnitary {
    fn default() -> Self {
        Self::balanced()
    }
}

fn spatial_index(s: Spatial) -> usize {
    match s {
        Spatial::Up => 0,
        Spatial::Down => 1,
    }
}

/// Transforms every creation operator of `state` through `bs`. Polarization
/// labels pass through unchanged.
pub fn apply_beamsplitter(state: &PhotonState, bs: &BeamsplitterUnitary) -> PhotonState {
    let mut out = PhotonState::zero(state.photons);
    for (occ, &amp) in &state.amplitudes {
        // |n> = prod (a^dag)^n / sqrt(n!) |0>
        let norm: f64 = ModeLabel::ALL
            .iter()
            .map(|&m| factorial(occ.count(m)))
            .product::<f64>()
            .sqrt();
        let mut partial = PhotonState::vacuum().scale(amp / norm);
        for mode in ModeLabel::ALL {
            for _ in 0..occ.count(mode) {
                partial = create_transformed(&partial, mode, bs);
            }
        }
        out.accumulate(partial);
    }
    out
}

fn create_transformed(state: &PhotonState, mode: ModeLabel, bs: &BeamsplitterUnitary) -> PhotonState {
    let mut out = PhotonState::zero(state.photons + 1);
    for target in [Spatial::Up, Spatial::Down] {
        let coeff = bs.entry(target, mode.spatial);
        if coeff == Complex64::default() {
            continue;
        }
        let moved = create_photon(state, ModeLabel::new(target, mode.polarization));
        out.accumulate(moved.scale(coeff));
    }
    out
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn require_two_photons(state: &PhotonState) -> Result<()> {
    if state.photons != 2 {
        return Err(Error::PhotonNumber {
            expected: 2,
            found: state.photons,
        });
    }
    Ok(())
}

/// Component with one photon in each spatial channel.
pub fn project_split(state: &PhotonState) -> PhotonState {
    state.filtered(|occ| occ.is_split())
}

/// Component with both photons in the same spatial channel.
pub fn project_unsplit(state: &PhotonState) -> PhotonState {
    state.filtered(|occ| !occ.is_split())
}

/// Probability that the pair is found split between the up and down
/// channels, i.e. the coincidence probability. The state need not be
/// normalized; the result is relative to its norm.
pub fn split_probability_of(state: &PhotonState) -> Result<f64> {
    require_two_photons(state)?;
    let total = state.norm_sqr();
    if total == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(project_split(state).norm_sqr() / total)
}

pub fn unsplit_probability_of(state: &PhotonState) -> Result<f64> {
    require_two_photons(state)?;
    let total = state.norm_sqr();
    if total == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(project_unsplit(state).norm_sqr() / total)
}

/// Two-photon sector in which the spatial variables of the pair can be
/// written as a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BellSector {
    /// Both photons share this polarization; only the symmetric Bell states
    /// are reachable.
    Spatial(Polarization),
    /// One H photon and one V photon. The H photon plays the role of
    /// particle 1 and the V photon of particle 2.
    PolarizationPair,
}

/// Coefficients on the directional Bell states
/// `Psi+- = (ud +- du)/sqrt 2` and `Phi+- = (uu +- dd)/sqrt 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellCoefficients {
    pub psi_plus: Complex64,
    pub psi_minus: Complex64,
    pub phi_plus: Complex64,
    pub phi_minus: Complex64,
}

impl BellCoefficients {
    /// In `[Psi+, Psi-, Phi+, Phi-]` order.
    pub fn to_array(&self) -> [Complex64; 4] {
        [self.psi_plus, self.psi_minus, self.phi_plus, self.phi_minus]
    }

    pub fn from_array(c: [Complex64; 4]) -> Self {
        Self {
            psi_plus: c[0],
            psi_minus: c[1],
            phi_plus: c[2],
            phi_minus: c[3],
        }
    }

    /// Two-qubit amplitudes `[uu, ud, du, dd]`.
    pub fn to_two_qubit(&self) -> [Complex64; 4] {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        [
            (self.phi_plus + self.phi_minus) * r,
            (self.psi_plus + self.psi_minus) * r,
            (self.psi_plus - self.psi_minus) * r,
            (self.phi_plus - self.phi_minus) * r,
        ]
    }

    /// Inverse of [`Self::to_two_qubit`].
    pub fn from_two_qubit(q: [Complex64; 4]) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let [uu, ud, du, dd] = q;
        Self {
            psi_plus: (ud + du) * r,
            psi_minus: (ud - du) * r,
            phi_plus: (uu + dd) * r,
            phi_minus: (uu - dd) * r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellDecomposition {
    pub sector: BellSector,
    pub coefficients: BellCoefficients,
}

impl BellDecomposition {
    /// Second-quantized state described by the coefficients.
    pub fn reconstruct(&self) -> PhotonState {
        let [uu, ud, du, dd] = self.coefficients.to_two_qubit();
        let terms: Vec<(OccupationVector, Complex64)> = match self.sector {
            BellSector::PolarizationPair => vec![
                (two_modes(ModeLabel::UP_H, ModeLabel::UP_V), uu),
                (two_modes(ModeLabel::UP_H, ModeLabel::DOWN_V), ud),
                (two_modes(ModeLabel::UP_V, ModeLabel::DOWN_H), du),
                (two_modes(ModeLabel::DOWN_H, ModeLabel::DOWN_V), dd),
            ],
            BellSector::Spatial(p) => {
                let up = ModeLabel::new(Spatial::Up, p);
                let down = ModeLabel::new(Spatial::Down, p);
                // ud and du are equal in this sector; |1_u,1_d> carries Psi+.
                vec![
                    (two_modes(up, up), uu),
                    (two_modes(up, down), self.coefficients.psi_plus),
                    (two_modes(down, down), dd),
                ]
            }
        };
        PhotonState::from_amplitudes(terms).expect("all kets carry two photons")
    }
}

fn two_modes(a: ModeLabel, b: ModeLabel) -> OccupationVector {
    OccupationVector::from_modes(&[a, b])
}

fn sector_of(occ: &OccupationVector) -> BellSector {
    match (
        occ.polarization_count(Polarization::H),
        occ.polarization_count(Polarization::V),
    ) {
        (2, 0) => BellSector::Spatial(Polarization::H),
        (0, 2) => BellSector::Spatial(Polarization::V),
        _ => BellSector::PolarizationPair,
    }
}

/// Projects a two-photon state onto the directional Bell basis.
///
/// The state must lie entirely in one [`BellSector`]; amplitudes that are
/// exactly zero do not count towards the sector test.
pub fn bell_decompose(state: &PhotonState) -> Result<BellDecomposition> {
    require_two_photons(state)?;
    let mut sector = None;
    for (occ, a) in state.iter() {
        if *a == Complex64::default() {
            continue;
        }
        let s = sector_of(occ);
        match sector {
            None => sector = Some(s),
            Some(prev) if prev != s => {
                return Err(Error::Sector(format!(
                    "kets from sectors {prev:?} and {s:?} are both populated"
                )))
            }
            _ => {}
        }
    }
    let sector = sector.ok_or_else(|| Error::Sector("state has no nonzero amplitude".into()))?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let two_qubit = match sector {
        BellSector::PolarizationPair => [
            state.amplitude(&two_modes(ModeLabel::UP_H, ModeLabel::UP_V)),
            state.amplitude(&two_modes(ModeLabel::UP_H, ModeLabel::DOWN_V)),
            state.amplitude(&two_modes(ModeLabel::UP_V, ModeLabel::DOWN_H)),
            state.amplitude(&two_modes(ModeLabel::DOWN_H, ModeLabel::DOWN_V)),
        ],
        BellSector::Spatial(p) => {
            let up = ModeLabel::new(Spatial::Up, p);
            let down = ModeLabel::new(Spatial::Down, p);
            let split = state.amplitude(&two_modes(up, down)) * r;
            [
                state.amplitude(&two_modes(up, up)),
                split,
                split,
                state.amplitude(&two_modes(down, down)),
            ]
        }
    };
    Ok(BellDecomposition {
        sector,
        coefficients: BellCoefficients::from_two_qubit(two_qubit),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn pair(a: ModeLabel, b: ModeLabel) -> PhotonState {
        create_photon(&create_photon(&PhotonState::vacuum(), a), b)
    }

    const U: ModeLabel = ModeLabel::UP_H;
    const D: ModeLabel = ModeLabel::DOWN_H;

    #[test]
    fn creation_on_vacuum_and_single_photon() {
        let one = create_photon(&PhotonState::vacuum(), ModeLabel::UP_H);
        assert_eq!(one.amplitude(&OccupationVector::from_modes(&[U])), c(1.0));

        let two = create_photon(&one, ModeLabel::UP_H);
        let ket = OccupationVector::from_modes(&[U, U]);
        assert!((two.amplitude(&ket) - c(2f64.sqrt())).norm() < 1e-15);

        let mixed = create_photon(&one, ModeLabel::DOWN_V);
        let ket = OccupationVector::from_modes(&[U, ModeLabel::DOWN_V]);
        assert_eq!(mixed.amplitude(&ket), c(1.0));
        assert_eq!(mixed.photon_number(), 2);
    }

    #[test]
    fn ideal_hom_output() {
        let out = apply_beamsplitter(&pair(U, D), &BeamsplitterUnitary::default());
        let uu = OccupationVector::from_modes(&[U, U]);
        let dd = OccupationVector::from_modes(&[D, D]);
        assert!((out.amplitude(&uu) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((out.amplitude(&dd) - c(-FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(split_probability_of(&out).unwrap() < 1e-28);
    }

    #[test]
    fn vacuum_is_invariant() {
        let out = apply_beamsplitter(&PhotonState::vacuum(), &BeamsplitterUnitary::default());
        assert_eq!(out, PhotonState::vacuum());
    }

    #[test]
    fn orthogonal_polarizations_give_four_equal_terms() {
        let out = apply_beamsplitter(
            &pair(ModeLabel::UP_H, ModeLabel::DOWN_V),
            &BeamsplitterUnitary::default(),
        );
        let expected = [
            (two_modes(ModeLabel::UP_H, ModeLabel::UP_V), 0.5),
            (two_modes(ModeLabel::DOWN_H, ModeLabel::DOWN_V), -0.5),
            (two_modes(ModeLabel::UP_H, ModeLabel::DOWN_V), 0.5),
            (two_modes(ModeLabel::UP_V, ModeLabel::DOWN_H), -0.5),
        ];
        let expected = PhotonState::from_amplitudes(expected.map(|(o, a)| (o, c(a)))).unwrap();
        assert!(out.max_abs_diff(&expected) < 1e-15);
        assert!((split_probability_of(&out).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn split_probability_of_basis_kets() {
        let split = PhotonState::basis(two_modes(ModeLabel::UP_H, ModeLabel::DOWN_V));
        assert_eq!(split_probability_of(&split).unwrap(), 1.0);
        let bunched = PhotonState::basis(two_modes(ModeLabel::UP_H, ModeLabel::UP_V));
        assert_eq!(split_probability_of(&bunched).unwrap(), 0.0);
    }

    #[test]
    fn split_probability_rejects_wrong_photon_number() {
        let one = create_photon(&PhotonState::vacuum(), U);
        assert_eq!(
            split_probability_of(&one),
            Err(Error::PhotonNumber { expected: 2, found: 1 })
        );
        assert!(split_probability_of(&PhotonState::zero(2)).is_err());
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let m = [[c(1.0), c(1.0)], [c(0.0), c(1.0)]];
        assert!(matches!(BeamsplitterUnitary::new(m), Err(Error::NonUnitary { .. })));
        let phase = Complex64::from_polar(1.0, 0.3);
        let m = [
            [c(FRAC_1_SQRT_2) * phase, c(FRAC_1_SQRT_2)],
            [c(FRAC_1_SQRT_2) * phase, -c(FRAC_1_SQRT_2)],
        ];
        assert!(BeamsplitterUnitary::new(m).is_ok());
    }

    #[test]
    fn mixed_photon_numbers_rejected() {
        let terms = [
            (OccupationVector::from_modes(&[U]), c(1.0)),
            (OccupationVector::from_modes(&[U, D]), c(1.0)),
        ];
        assert_eq!(
            PhotonState::from_amplitudes(terms),
            Err(Error::MixedPhotonNumber { first: 1, second: 2 })
        );
    }

    #[test]
    fn bell_basis_element() {
        let psi_plus = pair(U, D);
        let dec = bell_decompose(&psi_plus).unwrap();
        assert_eq!(dec.sector, BellSector::Spatial(Polarization::H));
        let got = dec.coefficients.to_array();
        let want = [1.0, 0.0, 0.0, 0.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - c(w)).norm() < 1e-15);
        }
    }

    #[test]
    fn transformed_psi_plus_is_phi_minus() {
        let out = apply_beamsplitter(&pair(U, D), &BeamsplitterUnitary::default());
        let coeffs = bell_decompose(&out).unwrap().coefficients;
        assert!((coeffs.phi_minus - c(1.0)).norm() < 1e-12);
        assert!(coeffs.psi_minus.norm() < 1e-12);
        assert!(coeffs.psi_plus.norm() < 1e-12);
        assert!(coeffs.phi_plus.norm() < 1e-12);
    }

    #[test]
    fn single_terms_of_psi_plus_transform_to_half_sums() {
        // Particle 1 is the H photon: u_1 d_2 <-> a_uH a_dV, d_1 u_2 <-> a_dH a_uV.
        let bs = BeamsplitterUnitary::default();
        let r = c(FRAC_1_SQRT_2);
        let first = apply_beamsplitter(&pair(ModeLabel::UP_H, ModeLabel::DOWN_V).scale(r), &bs);
        let second = apply_beamsplitter(&pair(ModeLabel::DOWN_H, ModeLabel::UP_V).scale(r), &bs);
        let a = bell_decompose(&first).unwrap().coefficients;
        let b = bell_decompose(&second).unwrap().coefficients;
        for (got, want) in [
            (a.phi_minus, 0.5),
            (a.psi_minus, 0.5),
            (a.psi_plus, 0.0),
            (a.phi_plus, 0.0),
        ] {
            assert!((got - c(want)).norm() < 1e-12, "{got} vs {want}");
        }
        for (got, want) in [
            (b.phi_minus, 0.5),
            (b.psi_minus, -0.5),
            (b.psi_plus, 0.0),
            (b.phi_plus, 0.0),
        ] {
            assert!((got - c(want)).norm() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn bell_decompose_rejects_mixed_sectors() {
        let terms = [
            (two_modes(ModeLabel::UP_H, ModeLabel::DOWN_H), c(0.6)),
            (two_modes(ModeLabel::UP_H, ModeLabel::DOWN_V), c(0.8)),
        ];
        let s = PhotonState::from_amplitudes(terms).unwrap();
        assert!(matches!(bell_decompose(&s), Err(Error::Sector(_))));
    }

    #[test]
    fn bell_reconstruction_in_spatial_sector() {
        let s = PhotonState::from_amplitudes([
            (two_modes(U, U), Complex64::new(0.3, 0.1)),
            (two_modes(U, D), Complex64::new(-0.5, 0.2)),
            (two_modes(D, D), Complex64::new(0.0, 0.7)),
        ])
        .unwrap();
        let dec = bell_decompose(&s).unwrap();
        assert!(dec.coefficients.psi_minus.norm() < 1e-15);
        assert!(dec.reconstruct().max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn ket_display() {
        assert_eq!(OccupationVector::vacuum().to_string(), "|0>");
        assert_eq!(two_modes(U, U).to_string(), "|2_uH>");
        assert_eq!(two_modes(ModeLabel::DOWN_V, U).to_string(), "|1_uH,1_dV>");
    }
}
