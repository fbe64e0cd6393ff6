//! Dense statevectors with qubit 1 as the least significant index bit.

mod fixtures;
pub mod tableau;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordElement, Gate, GeneratorLabel, Word};
use crate::error::{Error, Result};

pub use tableau::StabilizerTableau;

/// Amplitude grid and overlap slack used for state identity modulo phase.
pub const STATE_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-10;

/// Phase-invariant hash of a rounded, phase-fixed amplitude vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub u64);

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm² is {norm}, expected 1")));
        }
        Ok(PureState { n, amps })
    }

    /// Normalizes an ordered coefficient list (index = basis ket).
    pub fn from_bit_address(coeffs: &[Complex64]) -> Result<Self> {
        let n = qubits_for_len(coeffs.len())?;
        let norm: f64 = coeffs.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Ok(PureState {
            n,
            amps: coeffs.iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real_address(coeffs: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_bit_address(&c)
    }

    /// `bits` is written with qubit 1 as the rightmost character.
    pub fn basis_state(bits: &str) -> Result<Self> {
        if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::InvalidState(format!("bad bitstring `{bits}`")));
        }
        let n = bits.len();
        let idx = usize::from_str_radix(bits, 2).expect("checked digits");
        Ok(Self::basis_index(n, idx))
    }

    pub fn basis_index(n: usize, idx: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[idx] = Complex64::new(1.0, 0.0);
        PureState { n, amps }
    }

    pub fn zero(n: usize) -> Self {
        Self::basis_index(n, 0)
    }

    pub fn ghz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidState("GHZ needs at least 2 qubits".into()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = a;
        amps[(1 << n) - 1] = a;
        Ok(PureState { n, amps })
    }

    /// Equal superposition of all weight-`k` kets.
    pub fn dicke(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::InvalidState(format!("no Dicke state D^{n}_{k}")));
        }
        let count = (0..1usize << n).filter(|b| b.count_ones() as usize == k).count();
        let a = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
        let amps = (0..1usize << n)
            .map(|b| {
                if b.count_ones() as usize == k {
                    a
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(PureState { n, amps })
    }

    /// Named appendix fixtures and small families.
    pub fn fixture(name: &str) -> Result<Self> {
        match name {
            "six_qubit_g144" => Ok(fixtures::six_qubit()),
            "six_qubit_printed" => Ok(fixtures::six_qubit_printed()),
            "eight_qubit_g1152" => Ok(fixtures::eight_qubit()),
            "w3" => Self::dicke(3, 1),
            "d42" => Self::dicke(4, 2),
            _ => Err(Error::Unknown {
                kind: "fixture",
                name: name.to_string(),
            }),
        }
    }

    pub const FIXTURES: [&'static str; 5] = ["six_qubit_g144", "six_qubit_printed", "eight_qubit_g1152", "w3", "d42"];

    /// Parses `basis:010`, `ghz:3`, `dicke:4:2`, `w:3`, `fixture:NAME`,
    /// `address:1,2,4,3` (real coefficients, normalized) or `word:N:H1 C12`
    /// (a circuit applied to `|0…0⟩`). Anything else is read as a JSON file.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number in state spec `{spec}`")))
        };
        match kind {
            "basis" => Self::basis_state(rest),
            "zero" => Ok(Self::zero(num(rest)?)),
            "ghz" => Self::ghz(num(rest)?),
            "w" => Self::dicke(num(rest)?, 1),
            "dicke" => {
                let (n, k) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected dicke:N:K, got `{spec}`")))?;
                Self::dicke(num(n)?, num(k)?)
            }
            "fixture" => Self::fixture(rest),
            "address" => {
                let coeffs = rest
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_real_address(&coeffs)
            }
            "word" => {
                let (n, w) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected word:N:GATES, got `{spec}`")))?;
                let word: Word = w.parse()?;
                Self::zero(num(n)?).apply_word(&word)
            }
            _ if Path::new(spec).exists() => Self::load_json(Path::new(spec)),
            _ => Err(Error::Unknown {
                kind: "state spec",
                name: spec.to_string(),
            }),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        let amps: Vec<Complex64> = file
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        if amps.len() != 1 << file.n {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                file.n
            )));
        }
        Self::from_bit_address(&amps)
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = StateFile {
            n: self.n,
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string(&file).expect("plain data")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// True iff the states agree up to a global phase.
    pub fn same_ray(&self, other: &PureState) -> bool {
        self.n == other.n && self.inner(other).norm() >= 1.0 - STATE_TOL
    }

    pub fn scaled(&self, phase: Complex64) -> PureState {
        PureState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    /// Applies a dense `2^m × 2^m` matrix on qubits `1..=m`.
    pub fn apply_matrix(&self, m: usize, matrix: &[Complex64]) -> Result<PureState> {
        if m > self.n || matrix.len() != (1 << m) * (1 << m) {
            return Err(Error::DimensionMismatch(format!(
                "{m}-qubit operator on a {}-qubit state",
                self.n
            )));
        }
        let d = 1usize << m;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (block_out, block_in) in out.chunks_mut(d).zip(self.amps.chunks(d)) {
            for (r, o) in block_out.iter_mut().enumerate() {
                let row = &matrix[r * d..(r + 1) * d];
                *o = row.iter().zip(block_in).map(|(x, y)| x * y).sum();
            }
        }
        Ok(PureState {
            n: self.n,
            amps: out,
        })
    }

    /// Applies `g`, embedded on the low `g.n()` qubits.
    pub fn apply(&self, g: &CliffordElement) -> Result<PureState> {
        self.apply_matrix(g.n(), &g.to_complex())
    }

    pub fn apply_gate(&self, g: &Gate) -> Result<PureState> {
        self.apply_matrix(g.qubits(), g.complex_matrix())
    }

    /// Applies a single generator on arbitrary qubits of the register.
    pub fn apply_label(&self, g: GeneratorLabel) -> Result<PureState> {
        g.validate(self.n)?;
        let mut amps = self.amps.clone();
        match g {
            GeneratorLabel::Hadamard(q) => {
                let bit = 1usize << (q - 1);
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for b in 0..amps.len() {
                    if b & bit == 0 {
                        let (x, y) = (self.amps[b], self.amps[b | bit]);
                        amps[b] = (x + y) * s;
                        amps[b | bit] = (x - y) * s;
                    }
                }
            }
            GeneratorLabel::Phase(q) => {
                let bit = 1usize << (q - 1);
                for (b, a) in amps.iter_mut().enumerate() {
                    if b & bit != 0 {
                        *a *= Complex64::new(0.0, 1.0);
                    }
                }
            }
            GeneratorLabel::Cnot { control, target } => {
                let cb = 1usize << (control - 1);
                let tb = 1usize << (target - 1);
                for (b, a) in amps.iter_mut().enumerate() {
                    if b & cb != 0 {
                        *a = self.amps[b ^ tb];
                    }
                }
            }
        }
        Ok(PureState { n: self.n, amps })
    }

    pub fn apply_word(&self, w: &Word) -> Result<PureState> {
        let mut s = self.clone();
        for &g in w.labels() {
            s = s.apply_label(g)?;
        }
        Ok(s)
    }

    /// Rotates the largest amplitude (lowest index among near-ties) onto the
    /// positive real axis.
    pub fn phase_fixed(&self) -> PureState {
        let max = self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let pivot = self
            .amps
            .iter()
            .position(|a| a.norm() >= max - STATE_TOL)
            .unwrap_or(0);
        let p = self.amps[pivot];
        if p.norm() == 0.0 {
            return self.clone();
        }
        self.scaled(p.conj() / p.norm())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let fixed = self.phase_fixed();
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        for a in &fixed.amps {
            grid(a.re).hash(&mut h);
            grid(a.im).hash(&mut h);
        }
        Fingerprint(h.finish())
    }
}

fn grid(x: f64) -> i64 {
    let v = (x / STATE_TOL).round() as i64;
    // fold -0 onto 0
    if v == 0 {
        0
    } else {
        v
    }
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch(format!(
            "amplitude count {len} is not a power of two ≥ 2"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

#[derive(Serialize, Deserialize)]
struct StateFile {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Fingerprint-bucketed set of states, confirmed by overlap on collisions.
#[derive(Clone, Debug, Default)]
pub struct StateIndex {
    buckets: HashMap<Fingerprint, Vec<usize>>,
}

impl StateIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&self, state: &PureState, fp: Fingerprint, stored: &[PureState]) -> Option<usize> {
        self.buckets
            .get(&fp)?
            .iter()
            .copied()
            .find(|&i| stored[i].same_ray(state))
    }

    pub fn insert(&mut self, fp: Fingerprint, id: usize) {
        self.buckets.entry(fp).or_default().push(id);
    }
}
