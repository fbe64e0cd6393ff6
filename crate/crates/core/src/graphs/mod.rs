//! Reachability graphs (state orbits with generator edges), stabilizer
//! subgroups, and contraction by an entropy-preserving local subgroup.

pub mod export;
pub mod iso;

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::clifford::{Gate, GeneratorSet};
use crate::entropy::{entropy_vector, entropy_vector_relative, EntropyKey, EntropyVector};
use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, Subgroup};
use crate::states::{Fingerprint, PureState, StateIndex};
use crate::union_find::UnionFind;

pub use iso::{isomorphic, LabeledGraph};

/// Default orbit bound for reachability BFS.
pub const DEFAULT_ORBIT_CAP: usize = 1 << 20;

/// Elements of `group` fixing `state` up to phase, checked to be closed.
pub fn stabilizer_subgroup(state: &PureState, group: &EnumeratedGroup) -> Result<Subgroup> {
    let fixed = group
        .elements()
        .iter()
        .enumerate()
        .filter_map(|(i, g)| match state.apply(g) {
            Ok(img) if img.same_ray(state) => Some(Ok(i)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>>>()?;
    group
        .subgroup(&fixed)
        .map_err(|e| Error::Tolerance(format!("stabilizer set is not a subgroup: {e}")))
}

#[derive(Clone, Debug)]
pub struct ReachOptions {
    pub cap: usize,
    /// Recompute every entropy component at every vertex instead of only the
    /// components whose subsystem splits the qubits the generators touch.
    pub full_entropy: bool,
}

impl Default for ReachOptions {
    fn default() -> Self {
        ReachOptions {
            cap: DEFAULT_ORBIT_CAP,
            full_entropy: false,
        }
    }
}

/// A state orbit: vertex `v` is a state, and `target(v, s)` is the vertex
/// reached by applying generator `s`.
#[derive(Clone, Debug)]
pub struct ReachabilityGraph {
    n: usize,
    generators: Vec<Gate>,
    states: Vec<PureState>,
    index: StateIndex,
    targets: Vec<u32>,
    entropy_vectors: Vec<EntropyVector>,
    entropy_class: Vec<usize>,
}

/// Breadth-first orbit of `state`; vertex 0 is the start state and vertices
/// are numbered in discovery order.
pub fn reachability(state: &PureState, generators: &[Gate], opts: &ReachOptions) -> Result<ReachabilityGraph> {
    let n = state.n();
    let active = generators
        .iter()
        .map(|g| (1u32 << g.qubits()) - 1)
        .fold(0, |a, b| a | b);
    if generators.iter().any(|g| g.qubits() > n) {
        return Err(Error::DimensionMismatch("generator wider than the register".into()));
    }
    let ng = generators.len();
    let mut states = vec![state.clone()];
    let mut index = StateIndex::new();
    index.insert(state.fingerprint(), 0);
    let mut targets: Vec<u32> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        targets.resize((v + 1) * ng, 0);
        for (s, g) in generators.iter().enumerate() {
            let img = states[v].apply_gate(g)?;
            let fp = img.fingerprint();
            let t = match index.find(&img, fp, &states) {
                Some(t) => t,
                None => {
                    let t = states.len();
                    if t >= opts.cap {
                        return Err(Error::CapExceeded(opts.cap));
                    }
                    index.insert(fp, t);
                    states.push(img);
                    queue.push_back(t);
                    t
                }
            };
            targets[v * ng + s] = t as u32;
        }
    }
    let base = entropy_vector(state);
    let mut keys: HashMap<EntropyKey, usize> = HashMap::new();
    let mut entropy_vectors = Vec::new();
    let mut entropy_class = Vec::with_capacity(states.len());
    for s in &states {
        let v = if opts.full_entropy {
            entropy_vector(s)
        } else {
            entropy_vector_relative(s, &base, active)
        };
        let id = *keys.entry(v.key()).or_insert_with(|| {
            entropy_vectors.push(v.clone());
            entropy_vectors.len() - 1
        });
        entropy_class.push(id);
    }
    Ok(ReachabilityGraph {
        n,
        generators: generators.to_vec(),
        states,
        index,
        targets,
        entropy_vectors,
        entropy_class,
    })
}

impl ReachabilityGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.states.len()
    }

    pub fn generators(&self) -> &[Gate] {
        &self.generators
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn state(&self, v: usize) -> &PureState {
        &self.states[v]
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn target(&self, v: usize, s: usize) -> usize {
        self.targets[v * self.generators.len() + s] as usize
    }

    /// Every edge `(source, generator, target)`, loops included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let ng = self.generators.len();
        (0..self.vertex_count()).flat_map(move |v| (0..ng).map(move |s| (v, s, self.target(v, s))))
    }

    pub fn find(&self, state: &PureState) -> Option<usize> {
        self.find_with(state, state.fingerprint())
    }

    fn find_with(&self, state: &PureState, fp: Fingerprint) -> Option<usize> {
        if state.n() != self.n {
            return None;
        }
        self.index.find(state, fp, &self.states)
    }

    pub fn entropy_class(&self, v: usize) -> usize {
        self.entropy_class[v]
    }

    pub fn entropy_classes(&self) -> &[usize] {
        &self.entropy_class
    }

    pub fn entropy_vectors(&self) -> &[EntropyVector] {
        &self.entropy_vectors
    }

    pub fn vertex_entropy(&self, v: usize) -> &EntropyVector {
        &self.entropy_vectors[self.entropy_class[v]]
    }

    /// Number of distinct entropy vectors on the vertices.
    pub fn entropic_diversity(&self) -> usize {
        self.entropy_vectors.len()
    }

    /// Distinct vectors with their multiplicities, in class order.
    pub fn entropy_table(&self) -> Vec<(EntropyVector, usize)> {
        let mut counts = vec![0usize; self.entropy_vectors.len()];
        for &c in &self.entropy_class {
            counts[c] += 1;
        }
        self.entropy_vectors.iter().cloned().zip(counts).collect()
    }

    /// Connected components using only the listed generator indices.
    pub fn components(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count());
        for v in 0..self.vertex_count() {
            for &s in gens {
                uf.union(v, self.target(v, s));
            }
        }
        uf.blocks()
    }

    /// Indices of generators whose names appear in `names`.
    pub fn generator_indices(&self, names: &[&str]) -> Vec<usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| names.contains(&g.name.as_str()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Labeled multigraph on `vertices` keeping the edges of generators
    /// `gens` that stay inside the vertex set. Arc label `k` stands for
    /// generator `gens[k]`.
    pub fn subgraph(&self, vertices: &[usize], gens: &[usize]) -> LabeledGraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut arcs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for (k, &s) in gens.iter().enumerate() {
                if let Some(&j) = pos.get(&self.target(v, s)) {
                    arcs.push((i, j, k));
                }
            }
        }
        LabeledGraph {
            vertex_colors: vertices.iter().map(|&v| self.entropy_class[v]).collect(),
            arcs,
            labels: gens.iter().map(|&s| self.generators[s].name.clone()).collect(),
            involutive: gens.iter().map(|&s| self.generators[s].is_involution()).collect(),
        }
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        let gens: Vec<usize> = (0..self.generators.len()).collect();
        self.subgraph(&all, &gens)
    }

    pub fn diameter(&self) -> Result<usize> {
        self.to_labeled().diameter()
    }
}

/// Quotient of a reachability graph by the orbits of a local subgroup.
#[derive(Clone, Debug)]
pub struct ContractedGraph {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `(from class, to class, generator) → multiplicity`; loops only when kept.
    pub edges: BTreeMap<(usize, usize, usize), usize>,
    /// Underlying edges that stayed inside a class, per class.
    pub loop_counts: Vec<usize>,
    pub keep_loops: bool,
    /// Entropy class ids present in each class (one id when uniform).
    pub class_entropy: Vec<Vec<usize>>,
    pub entropy_vectors: Vec<EntropyVector>,
    pub labels: Vec<String>,
    pub involutive: Vec<bool>,
    /// Order of the local subgroup modulo phase.
    pub local_order: usize,
    /// Local-generator images that fell outside the vertex set.
    pub escaped: usize,
}

/// Merges `u ~ h·u` for the local generators `h`. Orbits of the generated
/// subgroup are exactly the connected components of these identifications.
pub fn contract(graph: &ReachabilityGraph, local: &[Gate], keep_loops: bool) -> Result<ContractedGraph> {
    let qubits = local.iter().map(Gate::qubits).max().unwrap_or(1);
    let local_order = EnumeratedGroup::enumerate(local, qubits, 1 << 16)?.order();
    let mut uf = UnionFind::new(graph.vertex_count());
    let mut escaped = 0;
    for v in 0..graph.vertex_count() {
        for h in local {
            let img = graph.state(v).apply_gate(h)?;
            match graph.find(&img) {
                Some(u) => {
                    uf.union(v, u);
                }
                None => escaped += 1,
            }
        }
    }
    let classes = uf.blocks();
    let (class_of, _) = uf.labels();
    let mut edges = BTreeMap::new();
    let mut loop_counts = vec![0usize; classes.len()];
    for (u, s, v) in graph.edges() {
        let (cu, cv) = (class_of[u], class_of[v]);
        if cu == cv {
            loop_counts[cu] += 1;
            if !keep_loops {
                continue;
            }
        }
        *edges.entry((cu, cv, s)).or_insert(0) += 1;
    }
    let class_entropy = classes
        .iter()
        .map(|c| {
            let mut ids: Vec<usize> = c.iter().map(|&v| graph.entropy_class(v)).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    Ok(ContractedGraph {
        classes,
        class_of,
        edges,
        loop_counts,
        keep_loops,
        class_entropy,
        entropy_vectors: graph.entropy_vectors.clone(),
        labels: graph.generator_labels(),
        involutive: graph.generators.iter().map(Gate::is_involution).collect(),
        local_order,
        escaped,
    })
}

/// Contracts with the local generators of a named set.
pub fn contract_with_set(graph: &ReachabilityGraph, set: &GeneratorSet, keep_loops: bool) -> Result<ContractedGraph> {
    contract(graph, &set.local, keep_loops)
}

impl ContractedGraph {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Distinct entropy vectors over all classes.
    pub fn entropic_diversity(&self) -> usize {
        let mut ids: Vec<usize> = self.class_entropy.iter().flatten().copied().collect();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// True iff every class carries a single entropy vector.
    pub fn uniform_entropy(&self) -> bool {
        self.class_entropy.iter().all(|c| c.len() == 1)
    }

    pub fn class_color(&self, c: usize) -> usize {
        self.class_entropy[c][0]
    }

    /// Total multiplicity of contracted edges between distinct classes,
    /// counted once per unordered pair of directed arcs for involutions.
    pub fn edge_multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges
            .iter()
            .filter(|(&(u, v, _), _)| u == a && v == b)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn to_labeled(&self) -> LabeledGraph {
        let mut arcs = Vec::new();
        for (&(u, v, s), &m) in &self.edges {
            for _ in 0..m {
                arcs.push((u, v, s));
            }
        }
        LabeledGraph {
            vertex_colors: (0..self.class_count()).map(|c| self.class_color(c)).collect(),
            arcs,
            labels: self.labels.clone(),
            involutive: self.involutive.clone(),
        }
    }

    pub fn diameter(&self) -> Result<usize> {
        self.to_labeled().diameter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reach(spec: &str, set: &GeneratorSet) -> ReachabilityGraph {
        let psi = PureState::parse_spec(spec).unwrap();
        reachability(&psi, &set.generators, &ReachOptions::default()).unwrap()
    }

    #[test]
    fn worked_example() {
        let set = GeneratorSet::p2c12();
        let g = reach("address:1,2,4,3", &set);
        assert_eq!(g.vertex_count(), 32);
        let c = contract_with_set(&g, &set, false).unwrap();
        assert_eq!(c.class_count(), 4);
        assert_eq!(c.entropic_diversity(), 4);
        assert_eq!(c.local_order, 8);
        assert_eq!(c.escaped, 0);
    }

    #[test]
    fn g24_and_stabilizer() {
        let set = GeneratorSet::hc12();
        let g = reach("basis:00", &set);
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.entropic_diversity(), 2);
        assert_eq!(g.edges().count(), 96);
        let c = contract_with_set(&g, &set, false).unwrap();
        assert_eq!(c.class_count(), 2);
        assert_eq!(c.diameter().unwrap(), 1);
        let group = EnumeratedGroup::from_generator_set(&set, 1 << 14).unwrap();
        let stab = stabilizer_subgroup(&PureState::zero(2), &group).unwrap();
        assert_eq!(stab.order(), 48);
        assert_eq!(g.vertex_count() * stab.order(), group.order());
    }

    #[test]
    fn relative_entropy_matches_full() {
        let set = GeneratorSet::hc12();
        let psi = PureState::parse_spec("dicke:4:2").unwrap();
        let fast = reachability(&psi, &set.generators, &ReachOptions::default()).unwrap();
        let slow = reachability(
            &psi,
            &set.generators,
            &ReachOptions {
                full_entropy: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(fast.entropy_classes(), slow.entropy_classes());
        assert_eq!(fast.entropy_vectors(), slow.entropy_vectors());
    }

    #[test]
    fn cap_is_enforced() {
        let psi = PureState::zero(2);
        let opts = ReachOptions {
            cap: 10,
            ..Default::default()
        };
        assert!(matches!(
            reachability(&psi, &GeneratorSet::hc12().generators, &opts),
            Err(Error::CapExceeded(10))
        ));
    }
}
