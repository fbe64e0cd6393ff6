//! Exact Clifford operators modulo the global phase `⟨ω⟩`, `ω = e^{iπ/4}`.
//!
//! Basis index `b` reads qubit 1 as its least significant bit. Generator
//! words are written in circuit order: `H1 C12` applies `H1` first, so the
//! matrix of a word `g1 g2 ... gm` is the product `Gm ⋯ G2 G1`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Cyclo8;

/// Hadamard, phase or CNOT on 1-based qubit indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorLabel {
    Hadamard(usize),
    Phase(usize),
    Cnot { control: usize, target: usize },
}

impl GeneratorLabel {
    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |q: usize| {
            if q == 0 || q > n {
                Err(Error::QubitOutOfRange { index: q, n })
            } else {
                Ok(())
            }
        };
        match *self {
            GeneratorLabel::Hadamard(q) | GeneratorLabel::Phase(q) => check(q),
            GeneratorLabel::Cnot { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
                Ok(())
            }
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, GeneratorLabel::Cnot { .. })
    }

    pub fn is_involution(&self) -> bool {
        !matches!(self, GeneratorLabel::Phase(_))
    }

    /// Highest qubit index touched.
    pub fn max_qubit(&self) -> usize {
        match *self {
            GeneratorLabel::Hadamard(q) | GeneratorLabel::Phase(q) => q,
            GeneratorLabel::Cnot { control, target } => control.max(target),
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorLabel::Hadamard(q) => write!(f, "H{q}"),
            GeneratorLabel::Phase(q) => write!(f, "P{q}"),
            GeneratorLabel::Cnot { control, target } if control < 10 && target < 10 => {
                write!(f, "C{control}{target}")
            }
            GeneratorLabel::Cnot { control, target } => write!(f, "C{control},{target}"),
        }
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid generator `{s}`"));
        let s = s.trim();
        let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let index = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match head {
            "H" | "h" => Ok(GeneratorLabel::Hadamard(index(rest)?)),
            "P" | "p" | "S" | "s" => Ok(GeneratorLabel::Phase(index(rest)?)),
            "C" | "c" => {
                let (control, target) = if let Some((a, b)) = rest.split_once(',') {
                    (index(a)?, index(b)?)
                } else if rest.len() == 2 {
                    (index(&rest[..1])?, index(&rest[1..])?)
                } else {
                    return Err(bad());
                };
                if control == target {
                    return Err(Error::SameControlTarget(control));
                }
                Ok(GeneratorLabel::Cnot { control, target })
            }
            _ => Err(bad()),
        }
    }
}

/// A generator word in circuit order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<GeneratorLabel>);

impl Word {
    pub fn new(labels: Vec<GeneratorLabel>) -> Self {
        Word(labels)
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_qubit(&self) -> usize {
        self.0.iter().map(|g| g.max_qubit()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * k).collect())
    }

    /// `self` followed by `next` in circuit order.
    pub fn then(&self, next: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&next.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses whitespace-separated tokens such as `H1 P2 C12`, with optional
/// powers (`P1^2`) and parenthesized groups (`(C12 H2)^4`). `1` is the
/// empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut stack: Vec<Vec<GeneratorLabel>> = vec![Vec::new()];
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let read_pow = |i: &mut usize| -> Result<usize> {
            if *i < chars.len() && chars[*i] == '^' {
                *i += 1;
                let start = *i;
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                }
                let t: String = chars[start..*i].iter().collect();
                t.parse()
                    .map_err(|_| Error::Parse(format!("invalid exponent in `{s}`")))
            } else {
                Ok(1)
            }
        };
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '*' || c == '.' {
                i += 1;
            } else if c == '(' {
                stack.push(Vec::new());
                i += 1;
            } else if c == ')' {
                i += 1;
                let group = stack
                    .pop()
                    .filter(|_| !stack.is_empty())
                    .ok_or_else(|| Error::Parse(format!("unbalanced `)` in `{s}`")))?;
                let p = read_pow(&mut i)?;
                let top = stack.last_mut().expect("non-empty stack");
                for _ in 0..p {
                    top.extend_from_slice(&group);
                }
            } else {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == ',') {
                    i += 1;
                }
                let tok: String = chars[start..i].iter().collect();
                if tok.is_empty() {
                    return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
                }
                let p = read_pow(&mut i)?;
                if tok == "1" || tok == "I" {
                    continue;
                }
                let g: GeneratorLabel = tok.parse()?;
                let top = stack.last_mut().expect("non-empty stack");
                for _ in 0..p {
                    top.push(g);
                }
            }
        }
        if stack.len() != 1 {
            return Err(Error::Parse(format!("unbalanced `(` in `{s}`")));
        }
        Ok(Word(stack.pop().unwrap()))
    }
}

/// A phase-canonical Clifford matrix: an element of `C̄_n = C_n / ⟨ω⟩`.
#[derive(Clone, Debug)]
pub struct CliffordElement {
    n: usize,
    matrix: Vec<Cyclo8>,
    word: Option<Word>,
}

impl PartialEq for CliffordElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.matrix == other.matrix
    }
}

impl Eq for CliffordElement {}

impl Hash for CliffordElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.matrix.hash(state);
    }
}

fn canonicalize_phase(matrix: &mut [Cyclo8]) {
    let Some(first) = matrix.iter().find(|x| !x.is_zero()) else {
        return;
    };
    let best = (0..8)
        .min_by(|&a, &b| first.mul_zeta_pow(a).cmp_key(&first.mul_zeta_pow(b)))
        .unwrap_or(0);
    if best != 0 {
        for x in matrix.iter_mut() {
            *x = x.mul_zeta_pow(best);
        }
    }
}

fn matmul(dim: usize, a: &[Cyclo8], b: &[Cyclo8]) -> Vec<Cyclo8> {
    let mut out = vec![Cyclo8::zero(); dim * dim];
    for i in 0..dim {
        for l in 0..dim {
            let x = &a[i * dim + l];
            if x.is_zero() {
                continue;
            }
            for j in 0..dim {
                let y = &b[l * dim + j];
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                out[i * dim + j] = &out[i * dim + j] + &p;
            }
        }
    }
    out
}

impl CliffordElement {
    fn from_raw(n: usize, mut matrix: Vec<Cyclo8>, word: Option<Word>) -> Self {
        canonicalize_phase(&mut matrix);
        CliffordElement { n, matrix, word }
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut m = vec![Cyclo8::zero(); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = Cyclo8::one();
        }
        CliffordElement::from_raw(n, m, Some(Word::default()))
    }

    /// Embeds a single generator into the `2^n`-dimensional register.
    pub fn generator(label: GeneratorLabel, n: usize) -> Result<Self> {
        label.validate(n)?;
        let dim = 1usize << n;
        let mut m = vec![Cyclo8::zero(); dim * dim];
        match label {
            GeneratorLabel::Hadamard(q) => {
                let bit = 1usize << (q - 1);
                let h = Cyclo8::inv_sqrt2();
                let mh = -&h;
                for c in 0..dim {
                    let (r0, r1) = (c & !bit, c | bit);
                    // H|0> = (|0>+|1>)/√2, H|1> = (|0>-|1>)/√2
                    if c & bit == 0 {
                        m[r0 * dim + c] = h.clone();
                        m[r1 * dim + c] = h.clone();
                    } else {
                        m[r0 * dim + c] = h.clone();
                        m[r1 * dim + c] = mh.clone();
                    }
                }
            }
            GeneratorLabel::Phase(q) => {
                let bit = 1usize << (q - 1);
                for c in 0..dim {
                    m[c * dim + c] = if c & bit == 0 {
                        Cyclo8::one()
                    } else {
                        Cyclo8::i()
                    };
                }
            }
            GeneratorLabel::Cnot { control, target } => {
                let cb = 1usize << (control - 1);
                let tb = 1usize << (target - 1);
                for c in 0..dim {
                    let r = if c & cb != 0 { c ^ tb } else { c };
                    m[r * dim + c] = Cyclo8::one();
                }
            }
        }
        Ok(CliffordElement::from_raw(n, m, Some(Word(vec![label]))))
    }

    /// Product of a circuit-order word.
    pub fn from_word(word: &Word, n: usize) -> Result<Self> {
        let mut acc = CliffordElement::identity(n);
        for &g in word.labels() {
            let gen = CliffordElement::generator(g, n)?;
            acc = compose(&gen, &acc)?;
        }
        Ok(acc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &[Cyclo8] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> &Cyclo8 {
        &self.matrix[row * self.dim() + col]
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    pub fn with_word(mut self, word: Word) -> Self {
        self.word = Some(word);
        self
    }

    /// Builds an element from an explicit matrix (canonicalizing its phase).
    pub fn from_matrix(n: usize, matrix: Vec<Cyclo8>) -> Result<Self> {
        let dim = 1usize << n;
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                dim * dim,
                matrix.len()
            )));
        }
        Ok(CliffordElement::from_raw(n, matrix, None))
    }

    pub fn is_identity(&self) -> bool {
        *self == CliffordElement::identity(self.n)
    }

    pub fn inverse(&self) -> Self {
        let dim = self.dim();
        let mut m = vec![Cyclo8::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[j * dim + i] = self.matrix[i * dim + j].conj();
            }
        }
        let word = self.word.as_ref().map(|w| {
            // P⁻¹ = P³; H and CNOT are involutions
            let mut v = Vec::new();
            for &g in w.labels().iter().rev() {
                let reps = if g.is_involution() { 1 } else { 3 };
                v.extend(std::iter::repeat_n(g, reps));
            }
            Word(v)
        });
        CliffordElement::from_raw(self.n, m, word)
    }

    /// Exact check of `M M† = 1`.
    pub fn is_unitary(&self) -> bool {
        let dim = self.dim();
        let conj_t: Vec<Cyclo8> = (0..dim * dim)
            .map(|idx| self.matrix[(idx % dim) * dim + idx / dim].conj())
            .collect();
        let p = matmul(dim, &self.matrix, &conj_t);
        (0..dim).all(|i| {
            (0..dim).all(|j| {
                let e = &p[i * dim + j];
                if i == j {
                    *e == Cyclo8::one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Multiplies the matrix by `ω^m` and re-canonicalizes; always returns
    /// the same element of `C̄_n`.
    pub fn times_phase(&self, m: i64) -> Self {
        let matrix = self.matrix.iter().map(|x| x.mul_zeta_pow(m)).collect();
        CliffordElement::from_raw(self.n, matrix, self.word.clone())
    }

    /// Raw matrix times `ω^m`, without canonicalization.
    pub fn raw_phase_multiple(&self, m: i64) -> Vec<Cyclo8> {
        self.matrix.iter().map(|x| x.mul_zeta_pow(m)).collect()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.matrix.iter().map(Cyclo8::to_complex).collect()
    }

    /// Maps a basis ket to a basis ket, when the element permutes the basis
    /// up to phases.
    pub fn basis_image(&self, col: usize) -> Option<usize> {
        let dim = self.dim();
        let nz: Vec<usize> = (0..dim)
            .filter(|&r| !self.matrix[r * dim + col].is_zero())
            .collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

/// Matrix product `a · b` (so `b` acts first). Words concatenate as
/// `word(b)` followed by `word(a)`.
pub fn compose(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose {}-qubit and {}-qubit elements",
            a.n, b.n
        )));
    }
    let m = matmul(a.dim(), &a.matrix, &b.matrix);
    let word = match (&a.word, &b.word) {
        (Some(wa), Some(wb)) => Some(wb.then(wa)),
        _ => None,
    };
    Ok(CliffordElement::from_raw(a.n, m, word))
}

/// True iff both words give the same element of `C̄_n`.
pub fn verify_relation(lhs: &Word, rhs: &Word, n: usize) -> Result<bool> {
    Ok(CliffordElement::from_word(lhs, n)? == CliffordElement::from_word(rhs, n)?)
}

/// A named gate: a circuit word together with its exact element on the
/// qubits it touches.
#[derive(Clone, Debug)]
pub struct Gate {
    pub name: String,
    pub word: Word,
    pub element: CliffordElement,
    complex: Vec<Complex64>,
}

impl Gate {
    pub fn new(word: Word, qubits: usize) -> Result<Self> {
        let element = CliffordElement::from_word(&word, qubits)?;
        let name = word
            .labels()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join("");
        let complex = element.to_complex();
        Ok(Gate {
            name,
            word,
            element,
            complex,
        })
    }

    pub fn qubits(&self) -> usize {
        self.element.n()
    }

    pub fn complex_matrix(&self) -> &[Complex64] {
        &self.complex
    }

    /// Single-generator gates other than `P` are their own inverse.
    pub fn is_involution(&self) -> bool {
        compose(&self.element, &self.element)
            .map(|sq| sq.is_identity())
            .unwrap_or(false)
    }

    pub fn is_local(&self) -> bool {
        self.word.labels().iter().all(|g| g.is_local())
    }
}

/// A generating set for orbit construction together with the local
/// (entropy-preserving) subgroup generators used for contraction.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: String,
    pub qubits: usize,
    pub generators: Vec<Gate>,
    pub local: Vec<Gate>,
}

impl GeneratorSet {
    pub fn from_words(
        name: &str,
        qubits: usize,
        generators: &[&str],
        local: &[&str],
    ) -> Result<Self> {
        let build = |ws: &[&str]| -> Result<Vec<Gate>> {
            ws.iter()
                .map(|w| Gate::new(w.parse()?, qubits))
                .collect()
        };
        Ok(GeneratorSet {
            name: name.to_string(),
            qubits,
            generators: build(generators)?,
            local: build(local)?,
        })
    }

    /// `(HC)_{1,2} = ⟨H1, H2, C12, C21⟩`, contracted by `⟨H1, H2, P1², P2²⟩`.
    pub fn hc12() -> Self {
        Self::from_words(
            "hc12",
            2,
            &["H1", "H2", "C12", "C21"],
            &["H1", "H2", "P1 P1", "P2 P2"],
        )
        .expect("static generator set")
    }

    /// Full two-qubit Clifford group, contracted by `⟨H1, H2, P1, P2⟩`.
    pub fn c2() -> Self {
        Self::from_words(
            "c2",
            2,
            &["H1", "H2", "P1", "P2", "C12", "C21"],
            &["H1", "H2", "P1", "P2"],
        )
        .expect("static generator set")
    }

    /// `⟨P2, C12⟩`, contracted by `⟨P2, P1²⟩`.
    pub fn p2c12() -> Self {
        Self::from_words("p2c12", 2, &["P2", "C12"], &["P2", "P1 P1"])
            .expect("static generator set")
    }

    /// Single-qubit Clifford group `⟨H1, P1⟩`.
    pub fn hp1() -> Self {
        Self::from_words("hp1", 1, &["H1", "P1"], &["H1", "P1"]).expect("static generator set")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "hc12" => Ok(Self::hc12()),
            "c2" => Ok(Self::c2()),
            "p2c12" => Ok(Self::p2c12()),
            "hp1" => Ok(Self::hp1()),
            _ => Err(Error::Unknown {
                kind: "generator set",
                name: name.to_string(),
            }),
        }
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }
}

/// The standard generators of `C_n`: every `H_i`, `P_i` and ordered `C_{i,j}`.
pub fn clifford_generators(n: usize) -> Vec<GeneratorLabel> {
    let mut v = Vec::new();
    for q in 1..=n {
        v.push(GeneratorLabel::Hadamard(q));
    }
    for q in 1..=n {
        v.push(GeneratorLabel::Phase(q));
    }
    for c in 1..=n {
        for t in 1..=n {
            if c != t {
                v.push(GeneratorLabel::Cnot { control: c, target: t });
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn el(s: &str, n: usize) -> CliffordElement {
        CliffordElement::from_word(&w(s), n).unwrap()
    }

    #[test]
    fn hadamard_matrix() {
        let h = CliffordElement::generator(GeneratorLabel::Hadamard(1), 1).unwrap();
        let s = Cyclo8::inv_sqrt2();
        let expect =
            CliffordElement::from_matrix(1, vec![s.clone(), s.clone(), s.clone(), -&s]).unwrap();
        assert_eq!(h, expect);
        assert!(h.is_unitary());
    }

    #[test]
    fn cnot_matrix_in_control_major_basis() {
        // The textbook 4x4 display lists |control target> with the control as the
        // high bit. Under the qubit-1-is-LSB convention that is C21 verbatim.
        let display = [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ];
        let c21 = el("C21", 2);
        let c12 = el("C12", 2);
        // basis permutation swapping qubit roles: index (q1 q2) -> (q2 q1)
        let swap = |b: usize| ((b & 1) << 1) | ((b >> 1) & 1);
        let mut direct = Vec::new();
        let mut permuted = vec![Cyclo8::zero(); 16];
        for r in 0..4 {
            for c in 0..4 {
                direct.push(Cyclo8::from_int(display[r][c]));
                permuted[swap(r) * 4 + swap(c)] = Cyclo8::from_int(display[r][c]);
            }
        }
        assert_eq!(c21, CliffordElement::from_matrix(2, direct).unwrap());
        assert_eq!(c12, CliffordElement::from_matrix(2, permuted).unwrap());
        // control = qubit 1: |01> (index 1) -> |11> (index 3)
        assert_eq!(c12.basis_image(1), Some(3));
        assert_eq!(c12.basis_image(2), Some(2));
    }

    #[test]
    fn phase_on_second_qubit_is_diag_1_1_i_i() {
        let p2 = el("P2", 2);
        // brute force over kets: only kets with qubit 2 set pick up i
        let mut diag = vec![Cyclo8::zero(); 16];
        for b in 0..4usize {
            diag[b * 5] = if (b >> 1) & 1 == 1 {
                Cyclo8::i()
            } else {
                Cyclo8::one()
            };
            assert_eq!(p2.basis_image(b), Some(b));
        }
        assert_eq!(p2, CliffordElement::from_matrix(2, diag).unwrap());
        // ratio of the qubit-2 entries to the others is exactly i
        assert_eq!(&p2.entry(0, 0).clone() * &Cyclo8::i(), *p2.entry(2, 2));
        assert_eq!(p2.entry(0, 0), p2.entry(1, 1));
    }

    #[test]
    fn out_of_range_generator() {
        assert!(CliffordElement::generator(GeneratorLabel::Hadamard(3), 2).is_err());
        assert!(CliffordElement::generator(GeneratorLabel::Cnot { control: 1, target: 1 }, 2).is_err());
        assert!("C11".parse::<GeneratorLabel>().is_err());
    }

    #[test]
    fn compose_identity_and_relations() {
        let g = el("H1 C12 P2", 2);
        assert_eq!(compose(&g, &CliffordElement::identity(2)).unwrap(), g);
        assert!(el("(H1 P1)^3", 1).is_identity());
        assert_eq!(el("(C12 P2)^4", 2), el("P1 P1", 2));
        assert!(compose(&el("H1", 1), &el("H1", 2)).is_err());
    }

    #[test]
    fn omega_is_hp_cubed_before_quotient() {
        // (H P)^3 as a raw product equals e^{iπ/4}·1: canonical form is 1.
        let s = Cyclo8::inv_sqrt2();
        let h = [s.clone(), s.clone(), s.clone(), -&s];
        let p = [Cyclo8::one(), Cyclo8::zero(), Cyclo8::zero(), Cyclo8::i()];
        let hp = matmul(2, &h, &p);
        let hp3 = matmul(2, &hp, &matmul(2, &hp, &hp));
        let z = Cyclo8::zeta_pow(1);
        assert_eq!(hp3, vec![z.clone(), Cyclo8::zero(), Cyclo8::zero(), z]);
    }

    #[test]
    fn inverses() {
        let id = CliffordElement::identity(2);
        assert_eq!(id.inverse(), id);
        let h = el("H1", 1);
        assert_eq!(h.inverse(), h);
        let p = el("P1", 1);
        assert_eq!(p.inverse(), el("P1^3", 1));
        assert!(el("P1^4", 1).is_identity());
        let g = el("H1 C12 P2 H2 C21 P1", 2);
        assert!(compose(&g, &g.inverse()).unwrap().is_identity());
        assert_eq!(CliffordElement::from_word(g.inverse().word().unwrap(), 2).unwrap(), g.inverse());
    }

    #[test]
    fn relations() {
        assert!(verify_relation(&w("(C12 H2)^4"), &w("P1^2"), 2).unwrap());
        assert!(verify_relation(&w("(C12 P2)^4"), &w("P1^2"), 2).unwrap());
        assert!(!verify_relation(&w("H1"), &w("P1"), 1).unwrap());
        assert!(verify_relation(&w("(C21 H1)^4"), &w("P2^2"), 2).unwrap());
    }

    #[test]
    fn involutions_and_orders() {
        for s in ["H1", "H2", "C12", "C21"] {
            assert!(el(&format!("{s} {s}"), 2).is_identity(), "{s}");
        }
        assert!(!el("P1 P1", 2).is_identity());
        assert!(el("P2^4", 2).is_identity());
    }

    #[test]
    fn swap_from_three_cnots_on_basis() {
        for n in 2..=4usize {
            let s = el("C12 C21 C12", n);
            for b in 0..(1usize << n) {
                let expect = (b & !3) | ((b & 1) << 1) | ((b >> 1) & 1);
                assert_eq!(s.basis_image(b), Some(expect));
                assert_eq!(s.entry(expect, b), s.entry(0, 0));
            }
        }
    }

    #[test]
    fn canonical_form_is_phase_invariant() {
        let g = el("H1 P1 C12 H2", 2);
        for m in 0..8 {
            assert_eq!(g.times_phase(m), g);
            let again = CliffordElement::from_matrix(2, g.raw_phase_multiple(m)).unwrap();
            assert_eq!(again, g);
        }
        assert!(g.is_unitary());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("H1 P2 C12 C21").len(), 4);
        assert_eq!(w("(C12 H2)^4").len(), 8);
        assert_eq!(w("P1^2"), w("P1 P1"));
        assert_eq!(w("1"), Word::default());
        assert_eq!(w("C1,12").labels()[0], GeneratorLabel::Cnot { control: 1, target: 12 });
        assert!("(H1".parse::<Word>().is_err());
        assert!("H1)".parse::<Word>().is_err());
        assert_eq!(w("H1 P2 C12").to_string(), "H1 P2 C12");
    }

    #[test]
    fn circuit_order_maps_to_reversed_product() {
        // "H1 P1" applies H1 first: matrix P·H
        let hp = el("H1 P1", 1);
        let p = el("P1", 1);
        let h = el("H1", 1);
        assert_eq!(hp, compose(&p, &h).unwrap());
        assert_ne!(hp, compose(&h, &p).unwrap());
        assert_eq!(hp.word().unwrap(), &w("H1 P1"));
    }
}
