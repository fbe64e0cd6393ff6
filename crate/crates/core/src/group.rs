//! Breadth-first enumeration of finitely generated subgroups of `C̄_n`,
//! Cayley tables, and coset / double-coset partitions.

use std::collections::{HashMap, VecDeque};
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordElement, Gate, GeneratorSet, Word};
use crate::error::{Error, Result};
use crate::ring::Cyclo8;
use crate::union_find::UnionFind;

/// Default closure bound; comfortably above `|C̄₂| = 11520`.
pub const DEFAULT_MAX_SIZE: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    n: usize,
    generators: Vec<Gate>,
    elements: Vec<CliffordElement>,
    index: HashMap<CliffordElement, usize>,
    /// `cayley[g * gens + s]` is the index of `gen_s · g`, i.e. `g` followed by
    /// generator `s` in circuit order.
    cayley: Vec<u32>,
    /// BFS tree: element `g` was first reached as `gen_s · parent`.
    parent: Vec<(u32, u8)>,
}

impl EnumeratedGroup {
    /// Closes the generators under composition. Element 0 is the identity and
    /// the rest appear in BFS discovery order, generators tried in list order.
    pub fn enumerate(generators: &[Gate], n: usize, max_size: usize) -> Result<Self> {
        if generators.len() > u8::MAX as usize {
            return Err(Error::Parse("too many generators".into()));
        }
        let gens: Vec<Gate> = generators
            .iter()
            .map(|g| {
                if g.qubits() == n {
                    Ok(g.clone())
                } else if g.qubits() < n {
                    Gate::new(g.word.clone(), n)
                } else {
                    Err(Error::DimensionMismatch(format!(
                        "generator {} acts on {} qubits, group has {n}",
                        g.name,
                        g.qubits()
                    )))
                }
            })
            .collect::<Result<_>>()?;
        let id = CliffordElement::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut parent = vec![(0u32, 0u8)];
        let mut cayley: Vec<u32> = Vec::new();
        let ng = gens.len();
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            let mut row = Vec::with_capacity(ng);
            for (s, gate) in gens.iter().enumerate() {
                let prod = crate::clifford::compose(&gate.element, &elements[g])?;
                let target = match index.get(&prod) {
                    Some(&t) => t,
                    None => {
                        let t = elements.len();
                        if t >= max_size {
                            return Err(Error::CapExceeded(max_size));
                        }
                        index.insert(prod.clone(), t);
                        elements.push(prod);
                        parent.push((g as u32, s as u8));
                        queue.push_back(t);
                        t
                    }
                };
                row.push(target as u32);
            }
            if cayley.len() < (g + 1) * ng {
                cayley.resize((g + 1) * ng, 0);
            }
            cayley[g * ng..(g + 1) * ng].copy_from_slice(&row);
        }
        Ok(EnumeratedGroup {
            n,
            generators: gens,
            elements,
            index,
            cayley,
            parent,
        })
    }

    pub fn from_words(words: &[&str], n: usize, max_size: usize) -> Result<Self> {
        let gates = words
            .iter()
            .map(|w| Gate::new(w.parse()?, n))
            .collect::<Result<Vec<_>>>()?;
        Self::enumerate(&gates, n, max_size)
    }

    pub fn from_generator_set(set: &GeneratorSet, max_size: usize) -> Result<Self> {
        Self::enumerate(&set.generators, set.qubits, max_size)
    }

    /// The local subgroup of a generator set (e.g. `⟨H1, H2, P1², P2²⟩`).
    pub fn local_from_generator_set(set: &GeneratorSet, max_size: usize) -> Result<Self> {
        Self::enumerate(&set.local, set.qubits, max_size)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Gate] {
        &self.generators
    }

    pub fn generator_labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.word.to_string()).collect()
    }

    pub fn elements(&self) -> &[CliffordElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CliffordElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &CliffordElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `gen_s · g`.
    pub fn step(&self, g: usize, s: usize) -> usize {
        self.cayley[g * self.generators.len() + s] as usize
    }

    /// All Cayley edges `(g, s, gen_s · g)`.
    pub fn cayley_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let ng = self.generators.len();
        (0..self.order()).flat_map(move |g| (0..ng).map(move |s| (g, s, self.step(g, s))))
    }

    /// Generator indices of a BFS-tree word for `g`, in circuit order.
    pub fn generator_path(&self, mut g: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while g != 0 {
            let (p, s) = self.parent[g];
            path.push(s as usize);
            g = p as usize;
        }
        path.reverse();
        path
    }

    /// Shortest circuit word reaching `g` from the identity.
    pub fn word_of(&self, g: usize) -> Word {
        let mut labels = Vec::new();
        for s in self.generator_path(g) {
            labels.extend_from_slice(self.generators[s].word.labels());
        }
        Word::new(labels)
    }

    /// Index of the matrix product `a · b` (`b` acts first).
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.generator_path(a)
            .into_iter()
            .fold(b, |acc, s| self.step(acc, s))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Closure of the given elements inside this group.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order()];
        let mut list = vec![0usize];
        members[0] = true;
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = self.multiply(s, x);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        Subgroup {
            elements: list,
            members,
            generators: gens.to_vec(),
        }
    }

    /// Validates that `subset` is a subgroup and extracts a generating set.
    /// Each new element outside the current closure is added as a generator;
    /// the closure must never leave `subset`.
    pub fn subgroup(&self, subset: &[usize]) -> Result<Subgroup> {
        let mut target = vec![false; self.order()];
        for &x in subset {
            if x >= self.order() {
                return Err(Error::NotSubgroup(format!("index {x} outside the group")));
            }
            target[x] = true;
        }
        if !target[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut list = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for &k in subset {
            if members[k] {
                continue;
            }
            gens.push(k);
            // re-close from scratch under the enlarged generating set
            let mut i = 0;
            while i < list.len() {
                let x = list[i];
                i += 1;
                for &s in &gens {
                    let y = self.multiply(s, x);
                    if !target[y] {
                        return Err(Error::NotSubgroup(format!(
                            "product of elements {s} and {x} leaves the set"
                        )));
                    }
                    if !members[y] {
                        members[y] = true;
                        list.push(y);
                    }
                }
            }
        }
        let distinct = target.iter().filter(|&&b| b).count();
        if list.len() != distinct {
            return Err(Error::NotSubgroup("set is not closed".into()));
        }
        list.sort_unstable();
        Ok(Subgroup {
            elements: list,
            members,
            generators: gens,
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
            members: vec![true; self.order()],
            generators: (0..self.generators.len()).map(|s| self.step(0, s)).collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        Subgroup {
            elements: vec![0],
            members,
            generators: Vec::new(),
        }
    }

    /// Maps the elements of another enumerated group (same `n`) into this one.
    pub fn embed(&self, other: &EnumeratedGroup) -> Result<Subgroup> {
        let idx = other
            .elements
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| Error::NotSubgroup("element outside the parent group".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&idx)
    }

    /// Left cosets `g·K`.
    pub fn left_cosets(&self, k: &Subgroup) -> CosetPartition {
        self.single_cosets(k, CosetSide::Left)
    }

    /// Right cosets `K·g`.
    pub fn right_cosets(&self, k: &Subgroup) -> CosetPartition {
        self.single_cosets(k, CosetSide::Right)
    }

    fn single_cosets(&self, k: &Subgroup, side: CosetSide) -> CosetPartition {
        let mut block_of = vec![usize::MAX; self.order()];
        let mut blocks = Vec::new();
        for g in 0..self.order() {
            if block_of[g] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block: Vec<usize> = k
                .elements
                .iter()
                .map(|&x| match side {
                    CosetSide::Left => self.multiply(g, x),
                    _ => self.multiply(x, g),
                })
                .collect();
            block.sort_unstable();
            for &x in &block {
                block_of[x] = id;
            }
            blocks.push(block);
        }
        CosetPartition {
            side,
            blocks,
            block_of,
        }
    }

    /// Double cosets `H·g·K`, merged with union-find over `g ~ h·g` and
    /// `g ~ g·k` for generators `h`, `k` of the two subgroups.
    pub fn double_cosets(&self, h: &Subgroup, k: &Subgroup) -> CosetPartition {
        let mut uf = UnionFind::new(self.order());
        for g in 0..self.order() {
            for &x in &h.generators {
                uf.union(g, self.multiply(x, g));
            }
            for &x in &k.generators {
                uf.union(g, self.multiply(g, x));
            }
        }
        let (block_of, _) = uf.labels();
        CosetPartition {
            side: CosetSide::Double,
            blocks: uf.blocks(),
            block_of,
        }
    }

    pub fn to_cache(&self) -> GroupCache {
        GroupCache {
            n: self.n,
            generators: self.generator_labels(),
            element_count: self.order(),
            elements: self
                .elements
                .iter()
                .map(|g| g.matrix().iter().map(|x| x.to_string()).collect())
                .collect(),
            cayley: (0..self.order())
                .map(|g| {
                    let ng = self.generators.len();
                    self.cayley[g * ng..(g + 1) * ng].to_vec()
                })
                .collect(),
            parents: self.parent.iter().map(|&(p, s)| [p, s as u32]).collect(),
        }
    }

    /// Rebuilds a group from a cache, checking every Cayley edge exactly.
    pub fn from_cache(cache: &GroupCache) -> Result<Self> {
        let gens = cache
            .generators
            .iter()
            .map(|w| Gate::new(w.parse()?, cache.n))
            .collect::<Result<Vec<_>>>()?;
        if cache.elements.len() != cache.element_count
            || cache.cayley.len() != cache.element_count
            || cache.parents.len() != cache.element_count
        {
            return Err(Error::Parse("group cache counts disagree".into()));
        }
        let mut elements = Vec::with_capacity(cache.element_count);
        let mut index = HashMap::new();
        for (i, m) in cache.elements.iter().enumerate() {
            let entries = m
                .iter()
                .map(|s| s.parse::<Cyclo8>())
                .collect::<Result<Vec<_>>>()?;
            let g = CliffordElement::from_matrix(cache.n, entries)?;
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate element {i} in group cache")));
            }
            elements.push(g);
        }
        let ng = gens.len();
        let mut cayley = Vec::with_capacity(cache.element_count * ng);
        for (g, row) in cache.cayley.iter().enumerate() {
            if row.len() != ng {
                return Err(Error::Parse(format!("Cayley row {g} has wrong length")));
            }
            for (s, &t) in row.iter().enumerate() {
                let prod = crate::clifford::compose(&gens[s].element, &elements[g])?;
                if index.get(&prod) != Some(&(t as usize)) {
                    return Err(Error::Parse(format!("Cayley edge ({g}, {s}) is wrong")));
                }
                cayley.push(t);
            }
        }
        let parent = cache
            .parents
            .iter()
            .map(|&[p, s]| (p, s as u8))
            .collect();
        Ok(EnumeratedGroup {
            n: cache.n,
            generators: gens,
            elements,
            index,
            cayley,
            parent,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(&self.to_cache())?;
        fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::from_cache(&serde_json::from_str(&text)?)
    }
}

/// Serialized form of an enumerated group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCache {
    pub n: usize,
    pub generators: Vec<String>,
    pub element_count: usize,
    /// Row-major matrices, entries as `(a0,a1,a2,a3,k)`.
    pub elements: Vec<Vec<String>>,
    pub cayley: Vec<Vec<u32>>,
    pub parents: Vec<[u32; 2]>,
}

/// A subgroup given by its member indices in a parent group, plus a
/// generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    members: Vec<bool>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.get(g).copied().unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetSide {
    Left,
    Right,
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    pub side: CosetSide,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// True iff every block of `finer` lies inside one block of `self`.
    pub fn is_refined_by(&self, finer: &CosetPartition) -> bool {
        finer.blocks.iter().all(|b| {
            let id = self.block_of[b[0]];
            b.iter().all(|&x| self.block_of[x] == id)
        })
    }
}

/// `|C̄_n| = 2^{n²+2n} ∏_{j=1}^{n} (4^j − 1)`.
pub fn clifford_order(n: u32) -> BigUint {
    let mut v = BigUint::one() << (n * n + 2 * n) as usize;
    for j in 1..=n {
        v *= (BigUint::one() << (2 * j) as usize) - BigUint::one();
    }
    v
}

/// `|⟨H_i, P_i⟩_{i ≤ n}| = 24^n` modulo phase.
pub fn local_subgroup_order(n: u32) -> BigUint {
    BigUint::from(24u32).pow(n)
}

/// Upper bound on the number of entropy vectors in one `C̄_n` orbit.
pub fn diversity_bound(n: u32) -> BigUint {
    clifford_order(n) / local_subgroup_order(n)
}

/// `|S_n| = 2^n ∏_{k=0}^{n−1} (2^{n−k} + 1)`.
pub fn stabilizer_state_count(n: u32) -> BigUint {
    let mut v = BigUint::one() << n as usize;
    for k in 0..n {
        v *= (BigUint::one() << (n - k) as usize) + BigUint::one();
    }
    v
}
