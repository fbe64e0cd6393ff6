use num_complex::Complex64;

use super::PureState;

/// Signs of the 64 amplitudes (each ±1/8), basis-ordered, as printed in
/// the appendix. This sign pattern has cubic and higher terms in its
/// algebraic normal form, so it is not a stabilizer state.
const SIX_QUBIT_SIGNS: [i8; 64] = [
    1, -1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, 1, -1, -1, -1, 1, -1, -1, -1, -1, 1, -1, -1, -1, 1, 1,
    1, -1, 1, -1, -1, -1, 1, 1, 1, 1, -1, 1, 1, -1, 1, 1, 1, -1, 1, 1, -1, -1, -1, 1, -1, 1, 1, 1,
    1, -1, 1, -1, -1, -1, 1, 1, 1,
];

/// Nonzero amplitudes (times √32) of the eight-qubit state as
/// `(index, re, im)`.
const EIGHT_QUBIT_SUPPORT: [(usize, i8, i8); 32] = [
    (37, 1, 0),
    (39, 0, -1),
    (41, -1, 0),
    (43, 0, -1),
    (52, 0, 1),
    (54, -1, 0),
    (56, 0, -1),
    (58, -1, 0),
    (96, 1, 0),
    (98, 0, -1),
    (108, -1, 0),
    (110, 0, -1),
    (113, 0, 1),
    (115, -1, 0),
    (125, 0, -1),
    (127, -1, 0),
    (161, 0, -1),
    (163, -1, 0),
    (173, 0, 1),
    (175, -1, 0),
    (176, -1, 0),
    (178, 0, -1),
    (188, 1, 0),
    (190, 0, -1),
    (228, 0, 1),
    (230, 1, 0),
    (232, 0, -1),
    (234, 1, 0),
    (245, 1, 0),
    (247, 0, 1),
    (249, -1, 0),
    (251, 0, 1),
];

/// Indices where the printed signs differ from the unique nearest
/// quadratic (stabilizer) sign pattern.
pub const SIX_QUBIT_CORRECTIONS: [usize; 4] = [46, 48, 51, 52];

pub(super) fn six_qubit_printed() -> PureState {
    let amps = SIX_QUBIT_SIGNS
        .iter()
        .map(|&s| Complex64::new(s as f64 / 8.0, 0.0))
        .collect();
    PureState { n: 6, amps }
}

/// The printed state with the four corrected signs. Its (HC) orbit is the
/// 144-vertex graph carrying the five tabulated entropy vectors.
pub(super) fn six_qubit() -> PureState {
    let mut psi = six_qubit_printed();
    for i in SIX_QUBIT_CORRECTIONS {
        psi.amps[i] = -psi.amps[i];
    }
    psi
}

pub(super) fn eight_qubit() -> PureState {
    let s = 1.0 / 32f64.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 256];
    for &(i, re, im) in &EIGHT_QUBIT_SUPPORT {
        amps[i] = Complex64::new(re as f64 * s, im as f64 * s);
    }
    PureState { n: 8, amps }
}
