//! Subsystem von Neumann entropies (in bits), entropy vectors and the MMI
//! inequality.
//!
//! Subsystems are bitmasks with bit `q − 1` standing for qubit `q`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{PureState, StabilizerTableau};

/// Grid used to decide equality of entropy values.
pub const ENTROPY_GRID: f64 = 1e-9;
/// Slack below which an MMI instance counts as saturated.
pub const MMI_TOL: f64 = 1e-8;

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Subsystems indexed by an entropy vector: sizes `1..n/2` in order, each
/// size lexicographic in qubit labels; at size `n/2` (even `n`) only the
/// subsets containing qubit 1.
pub fn entropy_subsets(n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let mask = combo.iter().fold(0u32, |m, &q| m | (1 << q));
            if 2 * k < n || mask & 1 == 1 {
                out.push(mask);
            }
            // next combination in lexicographic order
            let mut i = k;
            while i > 0 && combo[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Human-readable subsystem label, `A`, `B`, ... with the last qubit `O`.
pub fn subset_name(n: usize, mask: u32) -> String {
    (0..n)
        .filter(|q| mask >> q & 1 == 1)
        .map(|q| {
            if q == n - 1 {
                'O'
            } else {
                (b'A' + q as u8) as char
            }
        })
        .collect()
}

pub fn mask_from_qubits(n: usize, qubits: &[usize]) -> Result<u32> {
    let mut m = 0u32;
    for &q in qubits {
        if q == 0 || q > n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        m |= 1 << (q - 1);
    }
    Ok(m)
}

fn quantize(x: f64) -> i64 {
    (x / ENTROPY_GRID).round() as i64
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyVector {
    n: usize,
    components: Vec<f64>,
}

/// Quantized entropy vector, used for equality and hashing.
pub type EntropyKey = Vec<i64>;

impl EntropyVector {
    pub fn new(n: usize, components: Vec<f64>) -> Result<Self> {
        let expect = (1usize << (n - 1)) - 1;
        if components.len() != expect {
            return Err(Error::DimensionMismatch(format!(
                "{n}-qubit entropy vectors have {expect} components, got {}",
                components.len()
            )));
        }
        Ok(EntropyVector { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn key(&self) -> EntropyKey {
        self.components.iter().map(|&x| quantize(x)).collect()
    }

    /// `S_I` for any subsystem, using `S_I = S_Ī` and `S_∅ = S_full = 0`.
    pub fn get(&self, mask: u32) -> f64 {
        let full = full_mask(self.n);
        let mask = mask & full;
        if mask == 0 || mask == full {
            return 0.0;
        }
        let pos = entropy_subsets(self.n)
            .iter()
            .position(|&m| m == mask || m == full & !mask)
            .expect("every proper subset or its complement is indexed");
        self.components[pos]
    }

    /// Semicolon-separated decimals.
    pub fn to_decimal_string(&self) -> String {
        self.components
            .iter()
            .map(|x| format!("{:.9}", x))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl PartialEq for EntropyVector {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.key() == other.key()
    }
}

impl fmt::Display for EntropyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|&x| {
                if (x - x.round()).abs() < ENTROPY_GRID {
                    format!("{}", x.round() as i64)
                } else {
                    format!("{x:.6}")
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Something that can report `S_I` for a subsystem mask.
pub trait EntropySource {
    fn qubits(&self) -> usize;
    fn entropy(&self, mask: u32) -> f64;
}

impl EntropySource for EntropyVector {
    fn qubits(&self) -> usize {
        self.n
    }
    fn entropy(&self, mask: u32) -> f64 {
        self.get(mask)
    }
}

impl EntropySource for PureState {
    fn qubits(&self) -> usize {
        self.n()
    }
    fn entropy(&self, mask: u32) -> f64 {
        entropy_of_mask(self, mask)
    }
}

impl EntropySource for StabilizerTableau {
    fn qubits(&self) -> usize {
        self.n()
    }
    fn entropy(&self, mask: u32) -> f64 {
        self.entropy_of(mask & full_mask(self.n())) as f64
    }
}

/// Von Neumann entropy in bits of the qubits in `mask` (computed on the
/// smaller side of the cut).
pub fn entropy_of_mask(state: &PureState, mask: u32) -> f64 {
    let n = state.n();
    let full = full_mask(n);
    let mut mask = mask & full;
    if mask == 0 || mask == full {
        return 0.0;
    }
    if 2 * mask.count_ones() as usize > n {
        mask = full & !mask;
    }
    let keep: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
    let rest: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 0).collect();
    let (dk, dr) = (1usize << keep.len(), 1usize << rest.len());
    let spread = |bits: &[usize], v: usize| {
        bits.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &q)| acc | (((v >> i) & 1) << q))
    };
    let kidx: Vec<usize> = (0..dk).map(|a| spread(&keep, a)).collect();
    let ridx: Vec<usize> = (0..dr).map(|c| spread(&rest, c)).collect();
    let amps = state.amplitudes();
    let mut rho = DMatrix::<Complex64>::zeros(dk, dk);
    for a1 in 0..dk {
        for a2 in a1..dk {
            let v: Complex64 = ridx
                .iter()
                .map(|&c| amps[kidx[a1] | c] * amps[kidx[a2] | c].conj())
                .sum();
            rho[(a1, a2)] = v;
            rho[(a2, a1)] = v.conj();
        }
    }
    let eig = rho.symmetric_eigenvalues();
    let s: f64 = eig
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// `S_I` for a subsystem given by 1-based qubit labels.
pub fn subsystem_entropy(state: &PureState, qubits: &[usize]) -> Result<f64> {
    let n = state.n();
    let mask = mask_from_qubits(n, qubits)?;
    if mask == 0 || mask == full_mask(n) {
        return Err(Error::InvalidSubsystem(
            "subsystem must be nonempty and proper".into(),
        ));
    }
    Ok(entropy_of_mask(state, mask))
}

pub fn entropy_vector(state: &PureState) -> EntropyVector {
    let n = state.n();
    let components = entropy_subsets(n)
        .into_iter()
        .map(|m| entropy_of_mask(state, m))
        .collect();
    EntropyVector { n, components }
}

/// True iff the subsystem splits the qubits in `active`.
pub fn separates(mask: u32, active: u32) -> bool {
    mask & active != 0 && mask & active != active
}

/// Entropy vector of `state` assuming it differs from the state behind
/// `base` only by an operator on the qubits in `active`: components whose
/// subsystem does not split `active` are copied from `base`.
pub fn entropy_vector_relative(state: &PureState, base: &EntropyVector, active: u32) -> EntropyVector {
    let n = state.n();
    let components = entropy_subsets(n)
        .into_iter()
        .zip(&base.components)
        .map(|(m, &b)| {
            if separates(m, active) {
                entropy_of_mask(state, m)
            } else {
                b
            }
        })
        .collect();
    EntropyVector { n, components }
}

pub fn stabilizer_entropy_vector(t: &StabilizerTableau) -> EntropyVector {
    let n = t.n();
    let components = entropy_subsets(n)
        .into_iter()
        .map(|m| t.entropy_of(m) as f64)
        .collect();
    EntropyVector { n, components }
}

/// Checks `S_I = S_Ī` for every proper subsystem.
pub fn purity_check(state: &PureState) -> bool {
    let n = state.n();
    let full = full_mask(n);
    (1..full).all(|m| {
        let a = entropy_of_mask_direct(state, m);
        let b = entropy_of_mask_direct(state, full & !m);
        (a - b).abs() <= 1e-8
    })
}

/// Like [`entropy_of_mask`] but always traces out the complement of `mask`,
/// never switching to the smaller side.
pub fn entropy_of_mask_direct(state: &PureState, mask: u32) -> f64 {
    let n = state.n();
    let keep: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
    let rest: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 0).collect();
    let (dk, dr) = (1usize << keep.len(), 1usize << rest.len());
    let spread = |bits: &[usize], v: usize| {
        bits.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &q)| acc | (((v >> i) & 1) << q))
    };
    let amps = state.amplitudes();
    let m = DMatrix::<Complex64>::from_fn(dk, dr, |a, c| amps[spread(&keep, a) | spread(&rest, c)]);
    let rho = &m * m.adjoint();
    rho.symmetric_eigenvalues()
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MmiStatus {
    Satisfied,
    Saturated,
    Violated,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MmiResult {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub status: MmiStatus,
    /// `S_AB + S_AC + S_BC − S_A − S_B − S_C − S_ABC`.
    pub slack: f64,
}

pub fn mmi_check<S: EntropySource + ?Sized>(src: &S, a: u32, b: u32, c: u32) -> Result<MmiResult> {
    let full = full_mask(src.qubits());
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidSubsystem("MMI parties must be nonempty".into()));
    }
    if a & b != 0 || a & c != 0 || b & c != 0 {
        return Err(Error::InvalidSubsystem("MMI parties must be disjoint".into()));
    }
    if (a | b | c) & !full != 0 {
        return Err(Error::InvalidSubsystem("MMI party outside the register".into()));
    }
    let s = |m: u32| src.entropy(m);
    let slack = s(a | b) + s(a | c) + s(b | c) - s(a) - s(b) - s(c) - s(a | b | c);
    let status = if slack.abs() <= MMI_TOL {
        MmiStatus::Saturated
    } else if slack > 0.0 {
        MmiStatus::Satisfied
    } else {
        MmiStatus::Violated
    };
    Ok(MmiResult {
        a,
        b,
        c,
        status,
        slack,
    })
}

/// All unordered triples of disjoint nonempty subsystems, each triple listed
/// once with `min(A) < min(B) < min(C)`.
pub fn mmi_triples(n: usize) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let (mut a, mut b, mut c) = (0u32, 0u32, 0u32);
        let mut v = code;
        for q in 0..n {
            match v % 4 {
                1 => a |= 1 << q,
                2 => b |= 1 << q,
                3 => c |= 1 << q,
                _ => {}
            }
            v /= 4;
        }
        if a != 0 && b != 0 && c != 0 && a.trailing_zeros() < b.trailing_zeros() && b.trailing_zeros() < c.trailing_zeros() {
            out.push((a, b, c));
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MmiReport {
    pub results: Vec<MmiResult>,
    pub violations: usize,
    pub saturations: usize,
}

impl MmiReport {
    /// True iff no triple violates MMI.
    pub fn consistent(&self) -> bool {
        self.violations == 0
    }
}

pub fn mmi_scan<S: EntropySource + ?Sized>(src: &S) -> MmiReport {
    let results: Vec<MmiResult> = mmi_triples(src.qubits())
        .into_iter()
        .map(|(a, b, c)| mmi_check(src, a, b, c).expect("triples are valid"))
        .collect();
    let violations = results.iter().filter(|r| r.status == MmiStatus::Violated).count();
    let saturations = results.iter().filter(|r| r.status == MmiStatus::Saturated).count();
    MmiReport {
        results,
        violations,
        saturations,
    }
}

/// Named entropy values for annotating tables.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    pub symbols: Vec<(String, f64)>,
}

impl SymbolTable {
    pub fn lookup(&self, x: f64) -> Option<&str> {
        self.symbols
            .iter()
            .find(|(_, v)| (v - x).abs() <= ENTROPY_GRID)
            .map(|(s, _)| s.as_str())
    }

    /// Distinct values appearing in the `D^3_1` orbit.
    pub fn dicke31() -> Self {
        let l = f64::log2;
        let r5 = 5f64.sqrt();
        let a = (3.0 - r5) / 6.0;
        let b = (3.0 + r5) / 6.0;
        SymbolTable {
            symbols: vec![
                ("s0".into(), 1.0),
                ("s1".into(), 2.0 / 3.0 * l(1.5) + 1.0 / 3.0 * l(3.0)),
                ("s2".into(), 5.0 / 6.0 * l(6.0 / 5.0) + 1.0 / 6.0 * l(6.0)),
                ("s3".into(), a * l(1.0 / a) + b * l(1.0 / b)),
            ],
        }
    }

    /// Distinct values appearing in the `D^4_2` orbit.
    pub fn dicke42() -> Self {
        let l = f64::log2;
        let r5 = 5f64.sqrt();
        let r2 = 2f64.sqrt();
        let (a, b) = ((3.0 - r5) / 6.0, (3.0 + r5) / 6.0);
        let (c, d) = ((3.0 - 2.0 * r2) / 6.0, (3.0 + 2.0 * r2) / 6.0);
        SymbolTable {
            symbols: vec![
                ("s0".into(), 5.0 / 6.0 * l(12.0 / 5.0) + 1.0 / 6.0 * l(12.0)),
                ("s1".into(), a * l(2.0 / a) + b * l(2.0 / b)),
                ("s2".into(), 2.0 / 3.0 * l(1.5) + 1.0 / 3.0 * l(6.0)),
                ("s3".into(), c * l(2.0 / c) + d * l(2.0 / d)),
                ("s4".into(), 1.0),
                ("s5".into(), 2.0 / 3.0 * l(1.5) + 1.0 / 3.0 * l(3.0)),
                ("s6".into(), 5.0 / 6.0 * l(6.0 / 5.0) + 1.0 / 6.0 * l(6.0)),
            ],
        }
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.symbols.iter().find(|(s, _)| s == name).map(|&(_, v)| v)
    }
}

/// CSV with one row per distinct vector: `multiplicity,vector,symbols`.
pub fn entropy_table_csv(rows: &[(EntropyVector, usize)], symbols: Option<&SymbolTable>) -> String {
    let mut out = String::from("multiplicity,vector,symbols\n");
    for (v, count) in rows {
        let syms = symbols
            .map(|t| {
                v.components()
                    .iter()
                    .map(|&x| match t.lookup(x) {
                        Some(s) => s.to_string(),
                        None if (x - x.round()).abs() < ENTROPY_GRID => format!("{}", x.round()),
                        None => "?".to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        out.push_str(&format!("{count},{},{syms}\n", v.to_decimal_string()));
    }
    out
}
