//! Census of all n-qubit stabilizer states, partitioned into two-qubit
//! Clifford orbits (gates on qubits 1 and 2) and their (HC) subgraphs.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::clifford::GeneratorLabel;
use crate::entropy::{entropy_subsets, stabilizer_entropy_vector, EntropyVector};
use crate::error::{Error, Result};
use crate::group::stabilizer_state_count;
use crate::states::StabilizerTableau;
use crate::union_find::UnionFind;

/// Largest register the packed census keys support.
pub const MAX_CENSUS_QUBITS: usize = 6;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Abort once this many states have been discovered.
    pub cap: usize,
    /// Worker threads for the entropy pass.
    pub jobs: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            cap: 4_000_000,
            jobs: 1,
        }
    }
}

/// One two-qubit Clifford orbit of stabilizer states.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    /// Canonical stabilizer generators of the first state discovered.
    pub representative: String,
    pub size: usize,
    /// Sizes of the (HC) connected pieces, largest first.
    pub hc_sizes: Vec<usize>,
    pub diversity: usize,
    /// Entropic diversity of each (HC) piece, in the order of `hc_sizes`.
    pub hc_diversities: Vec<usize>,
}

/// Column of the subgraph-count table, keyed by the orbit shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// Orbits of 60 states: `g24 + g36`.
    G24G36,
    /// Orbits of 720 states: `3 g144 + g288`.
    G144G288,
    /// Orbits of 11520 states, counted per `g1152` piece.
    G1152,
    Other(usize),
}

impl Family {
    pub fn of_size(size: usize) -> Self {
        match size {
            60 => Family::G24G36,
            720 => Family::G144G288,
            11520 => Family::G1152,
            s => Family::Other(s),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::G24G36 => "g24/g36".into(),
            Family::G144G288 => "g144/g288".into(),
            Family::G1152 => "g1152".into(),
            Family::Other(s) => format!("orbit{s}"),
        }
    }

    pub const COLUMNS: [Family; 3] = [Family::G24G36, Family::G144G288, Family::G1152];
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub total_states: usize,
    pub records: Vec<CensusRecord>,
    #[serde(skip)]
    keys: Vec<u128>,
}

fn generators(n: usize) -> Vec<GeneratorLabel> {
    // the two-qubit set first so its edges can be read off the BFS
    let mut gens = vec![
        GeneratorLabel::Hadamard(1),
        GeneratorLabel::Hadamard(2),
        GeneratorLabel::Phase(1),
        GeneratorLabel::Phase(2),
        GeneratorLabel::Cnot { control: 1, target: 2 },
        GeneratorLabel::Cnot { control: 2, target: 1 },
    ];
    if n < 2 {
        return vec![GeneratorLabel::Hadamard(1), GeneratorLabel::Phase(1)];
    }
    for q in 3..=n {
        gens.push(GeneratorLabel::Hadamard(q));
        gens.push(GeneratorLabel::Phase(q));
        gens.push(GeneratorLabel::Cnot { control: q - 1, target: q });
        gens.push(GeneratorLabel::Cnot { control: q, target: q - 1 });
    }
    gens
}

/// Which of the first six generators are (HC) edges: `H1, H2, C12, C21`.
const HC_EDGE: [bool; 6] = [true, true, false, false, true, true];

/// Packs the integer entropy vector, four bits per component.
fn entropy_key(t: &StabilizerTableau, masks: &[u32]) -> u128 {
    masks
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &m)| acc | ((t.entropy_of(m) as u128) << (4 * i)))
}

fn entropy_keys(n: usize, keys: &[u128], jobs: usize) -> Vec<u128> {
    let masks = entropy_subsets(n);
    let work = |chunk: &[u128]| -> Vec<u128> {
        chunk
            .iter()
            .map(|&k| entropy_key(&StabilizerTableau::from_key_u128(n, k), &masks))
            .collect()
    };
    let jobs = jobs.max(1);
    if jobs == 1 || keys.len() < 4096 {
        return work(keys);
    }
    let chunk = keys.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = keys.chunks(chunk).map(|c| s.spawn(move || work(c))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("entropy worker panicked"))
            .collect()
    })
}

/// Enumerates every `n`-qubit stabilizer state by breadth-first search from
/// `|0…0⟩` and classifies the two-qubit Clifford orbits.
pub fn census(n: usize, opts: &CensusOptions) -> Result<CensusReport> {
    if !(1..=MAX_CENSUS_QUBITS).contains(&n) {
        return Err(Error::DimensionMismatch(format!(
            "census supports 1..={MAX_CENSUS_QUBITS} qubits, got {n}"
        )));
    }
    let gens = generators(n);
    let zero = StabilizerTableau::zero(n)?;
    let mut keys = vec![zero.key_u128()];
    let mut index: HashMap<u128, u32> = HashMap::from([(keys[0], 0)]);
    let mut c2 = UnionFind::new(0);
    let mut hc = UnionFind::new(0);
    let mut edges: Vec<(u32, u32, bool)> = Vec::new();
    let mut queue = VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        let t = StabilizerTableau::from_key_u128(n, keys[v as usize]);
        for (s, &g) in gens.iter().enumerate() {
            let k = t.applied(g)?.key_u128();
            let u = match index.get(&k) {
                Some(&u) => u,
                None => {
                    if keys.len() >= opts.cap {
                        return Err(Error::CapExceeded(opts.cap));
                    }
                    let u = keys.len() as u32;
                    keys.push(k);
                    index.insert(k, u);
                    queue.push_back(u);
                    u
                }
            };
            if n >= 2 && s < 6 && u != v {
                edges.push((v, u, HC_EDGE[s]));
            }
        }
        if edges.len() > 1 << 20 {
            flush(&mut c2, &mut hc, &mut edges, keys.len());
        }
    }
    drop(index);
    flush(&mut c2, &mut hc, &mut edges, keys.len());
    let ent = entropy_keys(n, &keys, opts.jobs);
    let records = classify(n, &keys, &ent, &mut c2, &mut hc);
    Ok(CensusReport {
        n,
        total_states: keys.len(),
        records,
        keys,
    })
}

fn flush(c2: &mut UnionFind, hc: &mut UnionFind, edges: &mut Vec<(u32, u32, bool)>, len: usize) {
    c2.grow(len);
    hc.grow(len);
    for (v, u, is_hc) in edges.drain(..) {
        c2.union(v as usize, u as usize);
        if is_hc {
            hc.union(v as usize, u as usize);
        }
    }
}

#[derive(Default)]
struct Piece {
    first: usize,
    size: usize,
    entropies: HashSet<u128>,
}

fn classify(n: usize, keys: &[u128], ent: &[u128], c2: &mut UnionFind, hc: &mut UnionFind) -> Vec<CensusRecord> {
    let mut orbits: BTreeMap<usize, Piece> = BTreeMap::new();
    let mut pieces: HashMap<usize, Piece> = HashMap::new();
    let mut piece_orbit: HashMap<usize, usize> = HashMap::new();
    let mut first_of_root: HashMap<usize, usize> = HashMap::new();
    for v in 0..keys.len() {
        let (ro, rp) = (c2.find(v), hc.find(v));
        let first = *first_of_root.entry(ro).or_insert(v);
        let o = orbits.entry(first).or_insert_with(|| Piece {
            first,
            ..Default::default()
        });
        o.size += 1;
        o.entropies.insert(ent[v]);
        let p = pieces.entry(rp).or_insert_with(|| Piece {
            first: v,
            ..Default::default()
        });
        p.size += 1;
        p.entropies.insert(ent[v]);
        piece_orbit.insert(rp, first);
    }
    let mut by_orbit: HashMap<usize, Vec<(usize, usize, usize)>> = HashMap::new();
    for (root, p) in &pieces {
        by_orbit
            .entry(piece_orbit[root])
            .or_default()
            .push((p.size, p.entropies.len(), p.first));
    }
    orbits
        .into_values()
        .map(|o| {
            let mut ps = by_orbit.remove(&o.first).unwrap_or_default();
            ps.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.2.cmp(&b.2)));
            CensusRecord {
                n,
                representative: StabilizerTableau::from_key_u128(n, keys[o.first]).to_string(),
                size: o.size,
                hc_sizes: ps.iter().map(|p| p.0).collect(),
                diversity: o.entropies.len(),
                hc_diversities: ps.iter().map(|p| p.1).collect(),
            }
        })
        .collect()
}

impl CensusReport {
    /// Stabilizer state `i` in discovery order.
    pub fn state(&self, i: usize) -> StabilizerTableau {
        StabilizerTableau::from_key_u128(self.n, self.keys[i])
    }

    pub fn state_count_matches(&self) -> bool {
        stabilizer_state_count(self.n as u32) == self.total_states.into()
    }

    /// Per family, the number of occurrences of each entropic diversity.
    /// `g1152` pieces are counted individually; every other family counts
    /// whole orbits.
    pub fn table(&self) -> BTreeMap<Family, BTreeMap<usize, usize>> {
        let mut t: BTreeMap<Family, BTreeMap<usize, usize>> = BTreeMap::new();
        for r in &self.records {
            let fam = Family::of_size(r.size);
            let cell = t.entry(fam).or_default();
            if fam == Family::G1152 {
                for (&s, &d) in r.hc_sizes.iter().zip(&r.hc_diversities) {
                    if s == 1152 {
                        *cell.entry(d).or_insert(0) += 1;
                    }
                }
            } else {
                *cell.entry(r.diversity).or_insert(0) += 1;
            }
        }
        t
    }

    /// A table cell as `count (diversity), …`, or `0` when empty.
    pub fn cell(&self, family: Family) -> String {
        match self.table().get(&family) {
            None => "0".into(),
            Some(m) => m
                .iter()
                .map(|(d, c)| format!("{c} ({d})"))
                .collect::<Vec<_>>()
                .join(", "),
        }
    }

    /// Orbit sizes outside the three known families, if any.
    pub fn unclassified(&self) -> Vec<usize> {
        self.records
            .iter()
            .filter(|r| matches!(Family::of_size(r.size), Family::Other(_)))
            .map(|r| r.size)
            .collect()
    }

    pub fn table_row(&self) -> String {
        let cells: Vec<String> = Family::COLUMNS.iter().map(|&f| self.cell(f)).collect();
        format!("{} | {}", self.n, cells.join(" | "))
    }

    /// One line per (family, diversity) cell.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,family,diversity,count\n");
        for (fam, cells) in self.table() {
            for (d, c) in cells {
                let _ = writeln!(s, "{},{},{d},{c}", self.n, fam.name());
            }
        }
        s
    }

    /// One line per orbit.
    pub fn records_csv(&self) -> String {
        let mut s = String::from("n,size,diversity,hc_sizes,hc_diversities,representative\n");
        for r in &self.records {
            let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.n,
                r.size,
                r.diversity,
                join(&r.hc_sizes),
                join(&r.hc_diversities),
                r.representative
            );
        }
        s
    }

    /// Compares the integer tableau entropy vector of every `stride`-th state
    /// with the dense statevector computation; returns the mismatching
    /// state indices.
    pub fn dense_spot_check(&self, stride: usize) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for i in (0..self.total_states).step_by(stride.max(1)) {
            let t = self.state(i);
            let dense = crate::entropy::entropy_vector(&t.to_state()?);
            let exact: EntropyVector = stabilizer_entropy_vector(&t);
            if dense.key() != exact.key() {
                bad.push(i);
            }
        }
        Ok(bad)
    }
}
