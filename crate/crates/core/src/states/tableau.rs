//! Stabilizer-group representation of stabilizer states (stabilizer rows
//! only, no destabilizers), with CHP update rules and a canonical
//! row-reduced form.

use std::fmt;

use num_complex::Complex64;

use crate::clifford::{GeneratorLabel, Word};
use crate::error::{Error, Result};

use super::PureState;

pub const MAX_TABLEAU_QUBITS: usize = 32;

/// `n` commuting Pauli rows, row `r` being `(−1)^{sign} i^{|x∧z|} X^x Z^z`
/// with bit `q − 1` of the masks for qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    n: usize,
    x: Vec<u32>,
    z: Vec<u32>,
    sign: Vec<bool>,
}

/// Canonical stabilizer-group identity of a tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauKey(pub Vec<u64>);

/// Exponent of `i` in the product of one-qubit Paulis `(x1,z1)·(x2,z2)`.
fn g(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2 as i32 - x2 as i32,
        (true, false) => z2 as i32 * (2 * x2 as i32 - 1),
        (false, true) => x2 as i32 * (1 - 2 * z2 as i32),
    }
}

impl StabilizerTableau {
    /// `|0…0⟩`, stabilized by `Z_1, …, Z_n`.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLEAU_QUBITS {
            return Err(Error::DimensionMismatch(format!(
                "tableaux support 1..={MAX_TABLEAU_QUBITS} qubits, got {n}"
            )));
        }
        Ok(StabilizerTableau {
            n,
            x: vec![0; n],
            z: (0..n).map(|q| 1u32 << q).collect(),
            sign: vec![false; n],
        })
    }

    /// Tableau of a circuit applied to `|0…0⟩`.
    pub fn from_circuit(n: usize, w: &Word) -> Result<Self> {
        let mut t = Self::zero(n)?;
        t.apply_word(w)?;
        Ok(t)
    }

    /// Builds a tableau from Pauli strings like `+XX`, `-ZIZ`, `YY`
    /// (leftmost letter is qubit 1). The rows must commute and be independent.
    pub fn from_paulis(rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        let mut t = Self::zero(n)?;
        for (r, s) in rows.iter().enumerate() {
            let (neg, body) = match s.as_bytes().first() {
                Some(b'-') => (true, &s[1..]),
                Some(b'+') => (false, &s[1..]),
                _ => (false, &s[..]),
            };
            if body.len() != n {
                return Err(Error::Parse(format!("Pauli string `{s}` has wrong length")));
            }
            let (mut x, mut z) = (0u32, 0u32);
            for (q, c) in body.chars().enumerate() {
                match c {
                    'I' => {}
                    'X' => x |= 1 << q,
                    'Z' => z |= 1 << q,
                    'Y' => {
                        x |= 1 << q;
                        z |= 1 << q;
                    }
                    _ => return Err(Error::Parse(format!("bad Pauli letter `{c}`"))),
                }
            }
            t.x[r] = x;
            t.z[r] = z;
            t.sign[r] = neg;
        }
        for a in 0..n {
            for b in a + 1..n {
                let anti = ((t.x[a] & t.z[b]).count_ones() + (t.z[a] & t.x[b]).count_ones()) % 2;
                if anti == 1 {
                    return Err(Error::InvalidState(format!("rows {a} and {b} anticommute")));
                }
            }
        }
        if t.rank_on(u32::MAX >> (32 - n)) != n {
            return Err(Error::InvalidState("rows are dependent".into()));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, u32, bool)> + '_ {
        (0..self.n).map(move |r| (self.x[r], self.z[r], self.sign[r]))
    }

    pub fn apply_label(&mut self, gate: GeneratorLabel) -> Result<()> {
        gate.validate(self.n)?;
        match gate {
            GeneratorLabel::Hadamard(q) => {
                let b = 1u32 << (q - 1);
                for r in 0..self.n {
                    let (x, z) = (self.x[r] & b, self.z[r] & b);
                    if x != 0 && z != 0 {
                        self.sign[r] ^= true;
                    }
                    self.x[r] = (self.x[r] & !b) | z;
                    self.z[r] = (self.z[r] & !b) | x;
                }
            }
            GeneratorLabel::Phase(q) => {
                let b = 1u32 << (q - 1);
                for r in 0..self.n {
                    let (x, z) = (self.x[r] & b, self.z[r] & b);
                    if x != 0 && z != 0 {
                        self.sign[r] ^= true;
                    }
                    self.z[r] ^= x;
                }
            }
            GeneratorLabel::Cnot { control, target } => {
                let (c, t) = (control - 1, target - 1);
                for r in 0..self.n {
                    let xc = (self.x[r] >> c) & 1;
                    let zc = (self.z[r] >> c) & 1;
                    let xt = (self.x[r] >> t) & 1;
                    let zt = (self.z[r] >> t) & 1;
                    if xc & zt & (xt ^ zc ^ 1) == 1 {
                        self.sign[r] ^= true;
                    }
                    self.x[r] ^= xc << t;
                    self.z[r] ^= zt << c;
                }
            }
        }
        Ok(())
    }

    pub fn apply_word(&mut self, w: &Word) -> Result<()> {
        for &g in w.labels() {
            self.apply_label(g)?;
        }
        Ok(())
    }

    pub fn applied(&self, gate: GeneratorLabel) -> Result<Self> {
        let mut t = self.clone();
        t.apply_label(gate)?;
        Ok(t)
    }

    /// Row `h` ← row `i` · row `h`, with exact sign.
    fn rowsum(&mut self, h: usize, i: usize) {
        let mut e: i32 = 2 * (self.sign[h] as i32) + 2 * (self.sign[i] as i32);
        let mut bits = self.x[i] | self.z[i];
        while bits != 0 {
            let q = bits.trailing_zeros();
            bits &= bits - 1;
            let bit = |m: u32| (m >> q) & 1 == 1;
            e += g(bit(self.x[i]), bit(self.z[i]), bit(self.x[h]), bit(self.z[h]));
        }
        self.sign[h] = e.rem_euclid(4) == 2;
        self.x[h] ^= self.x[i];
        self.z[h] ^= self.z[i];
    }

    /// Reduced row-echelon form over columns `x_1..x_n, z_1..z_n`; unique for
    /// a given stabilizer group.
    pub fn canonicalize(&mut self) {
        let n = self.n;
        let mut row = 0;
        for col in 0..2 * n {
            let bit = |t: &Self, r: usize| {
                if col < n {
                    (t.x[r] >> col) & 1 == 1
                } else {
                    (t.z[r] >> (col - n)) & 1 == 1
                }
            };
            let Some(p) = (row..n).find(|&r| bit(self, r)) else {
                continue;
            };
            self.x.swap(row, p);
            self.z.swap(row, p);
            self.sign.swap(row, p);
            for r in 0..n {
                if r != row && bit(self, r) {
                    self.rowsum(r, row);
                }
            }
            row += 1;
            if row == n {
                break;
            }
        }
    }

    pub fn canonical(&self) -> Self {
        let mut t = self.clone();
        t.canonicalize();
        t
    }

    pub fn key(&self) -> TableauKey {
        let t = self.canonical();
        TableauKey(
            t.rows()
                .map(|(x, z, s)| (x as u64) | ((z as u64) << 32) | if s { 1 << 63 } else { 0 })
                .collect(),
        )
    }

    /// Packed canonical key; requires `n ≤ 7`.
    pub fn key_u128(&self) -> u128 {
        assert!(self.n <= 7, "packed keys need n ≤ 7");
        let t = self.canonical();
        let w = 2 * t.n + 1;
        t.rows().enumerate().fold(0u128, |acc, (r, (x, z, s))| {
            let row = x as u128 | ((z as u128) << t.n) | ((s as u128) << (2 * t.n));
            acc | (row << (r * w))
        })
    }

    /// Inverse of [`key_u128`](Self::key_u128). The rows are taken as given;
    /// no stabilizer-group checks are made.
    pub fn from_key_u128(n: usize, key: u128) -> Self {
        assert!((1..=7).contains(&n), "packed keys need n ≤ 7");
        let w = 2 * n + 1;
        let mask = (1u128 << n) - 1;
        let (mut x, mut z, mut sign) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for r in 0..n {
            let row = key >> (r * w);
            x.push((row & mask) as u32);
            z.push(((row >> n) & mask) as u32);
            sign.push((row >> (2 * n)) & 1 == 1);
        }
        StabilizerTableau { n, x, z, sign }
    }

    /// GF(2) rank of the rows restricted to the qubits in `mask`.
    pub fn rank_on(&self, mask: u32) -> usize {
        let mut rows: Vec<u64> = (0..self.n)
            .map(|r| (self.x[r] & mask) as u64 | (((self.z[r] & mask) as u64) << 32))
            .filter(|&v| v != 0)
            .collect();
        let mut rank = 0;
        while let Some(pos) = rows.iter().position(|&v| v != 0) {
            let pivot = rows.swap_remove(pos);
            let low = pivot & pivot.wrapping_neg();
            for v in rows.iter_mut() {
                if *v & low != 0 {
                    *v ^= pivot;
                }
            }
            rows.retain(|&v| v != 0);
            rank += 1;
        }
        rank
    }

    /// Entanglement entropy (bits) of the qubits in `mask`.
    pub fn entropy_of(&self, mask: u32) -> usize {
        self.rank_on(mask) - mask.count_ones() as usize
    }

    /// Dense statevector (up to phase) via the stabilizer projector.
    pub fn to_state(&self) -> Result<PureState> {
        if self.n > 12 {
            return Err(Error::DimensionMismatch("dense conversion limited to 12 qubits".into()));
        }
        let dim = 1usize << self.n;
        for seed in 0..dim {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[seed] = Complex64::new(1.0, 0.0);
            for (x, z, s) in self.rows() {
                let pv = apply_pauli(&v, x, z, s);
                for (a, b) in v.iter_mut().zip(pv) {
                    *a = (*a + b) * 0.5;
                }
            }
            let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum();
            if norm > 1e-6 {
                return PureState::from_bit_address(&v);
            }
        }
        Err(Error::InvalidState("stabilizer projector vanished".into()))
    }

    /// True iff `state` is a +1 eigenvector of every row.
    pub fn stabilizes(&self, state: &PureState) -> bool {
        self.rows().all(|(x, z, s)| {
            let pv = apply_pauli(state.amplitudes(), x, z, s);
            let ov: Complex64 = state
                .amplitudes()
                .iter()
                .zip(&pv)
                .map(|(a, b)| a.conj() * b)
                .sum();
            (ov.re - 1.0).abs() < 1e-9 && ov.im.abs() < 1e-9
        })
    }
}

fn apply_pauli(v: &[Complex64], x: u32, z: u32, sign: bool) -> Vec<Complex64> {
    let ipow = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let base = ipow[((x & z).count_ones() as usize + 2 * sign as usize) % 4];
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (b, a) in v.iter().enumerate() {
        let zsign = if (b as u32 & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ x as usize] = a * base * zsign;
    }
    out
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|(x, z, s)| {
                let mut row = String::from(if s { "-" } else { "+" });
                for q in 0..self.n {
                    row.push(match ((x >> q) & 1, (z >> q) & 1) {
                        (0, 0) => 'I',
                        (1, 0) => 'X',
                        (0, 1) => 'Z',
                        _ => 'Y',
                    });
                }
                row
            })
            .collect();
        write!(f, "{}", rows.join(" "))
    }
}
