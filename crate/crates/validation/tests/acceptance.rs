//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the summary is always printed; exits nonzero if any
//! gating criterion fails.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::time::{Duration, Instant};

use coset_core::census::{census, CensusOptions, Family};
use coset_core::clifford::{verify_relation, CliffordElement, GeneratorSet, Word};
use coset_core::entropy::{entropy_of_mask_direct, entropy_vector, mmi_scan, EntropyVector, SymbolTable};
use coset_core::graphs::{contract_with_set, isomorphic, reachability, stabilizer_subgroup, ReachOptions, ReachabilityGraph};
use coset_core::group::{diversity_bound, stabilizer_state_count, EnumeratedGroup, DEFAULT_MAX_SIZE};
use coset_core::ring::Cyclo8;
use coset_core::states::{PureState, StabilizerTableau};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Absolute tolerance for entropy values.
const ENTROPY_TOL: f64 = 1e-9;
const PROPERTY_CASES: u32 = 1000;

struct Check {
    what: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, actual: T) {
        let pass = expected == actual;
        self.checks.push(Check {
            what: what.to_string(),
            pass,
            detail: format!("expected {expected:?}, got {actual:?}"),
        });
    }

    fn ok(&mut self, what: &str, pass: bool) {
        self.checks.push(Check {
            what: what.to_string(),
            pass,
            detail: String::new(),
        });
    }

    fn within(&mut self, what: &str, took: Duration, limit: Duration) {
        self.checks.push(Check {
            what: what.to_string(),
            pass: took <= limit,
            detail: format!("{:.1?} (limit {:.0?})", took, limit),
        });
    }
}

/// Reachability graphs shared between criteria.
#[derive(Default)]
struct Graphs {
    cache: RefCell<HashMap<(String, String), Rc<ReachabilityGraph>>>,
}

impl Graphs {
    fn get(&self, spec: &str, set: &str) -> Rc<ReachabilityGraph> {
        let key = (spec.to_string(), set.to_string());
        if let Some(g) = self.cache.borrow().get(&key) {
            return g.clone();
        }
        let psi = PureState::parse_spec(spec).expect("state spec");
        let g = Rc::new(reach(&psi, set));
        self.cache.borrow_mut().insert(key, g.clone());
        g
    }

    /// The 288-vertex (HC) piece of the C̄2 complex of `spec`, rebuilt as
    /// its own (HC) reachability graph.
    fn g288(&self, spec: &str) -> Rc<ReachabilityGraph> {
        let key = (spec.to_string(), "g288".to_string());
        if let Some(g) = self.cache.borrow().get(&key) {
            return g.clone();
        }
        let complex = self.get(spec, "c2");
        let piece = hc_pieces(&complex).into_iter().find(|c| c.len() == 288).expect("g288 piece");
        let g = Rc::new(reach(complex.state(piece[0]), "hc12"));
        self.cache.borrow_mut().insert(key, g.clone());
        g
    }
}

fn set(name: &str) -> GeneratorSet {
    GeneratorSet::by_name(name).expect("generator set")
}

fn reach(psi: &PureState, name: &str) -> ReachabilityGraph {
    reachability(psi, &set(name).generators, &ReachOptions::default()).expect("reachability")
}

fn hc_pieces(g: &ReachabilityGraph) -> Vec<Vec<usize>> {
    g.components(&g.generator_indices(&["H1", "H2", "C12", "C21"]))
}

fn word(s: &str) -> Word {
    s.parse().expect("word")
}

fn element(s: &str) -> CliffordElement {
    CliffordElement::from_word(&word(s), 2).expect("element")
}

fn group(name: &str) -> EnumeratedGroup {
    EnumeratedGroup::from_generator_set(&set(name), DEFAULT_MAX_SIZE).expect("group")
}

fn criterion_1(c: &mut Criterion) {
    let t = Instant::now();
    c.eq("|<P2, C12>|", 32, group("p2c12").order());
    c.eq("|(HC)12|", 1152, group("hc12").order());
    c.eq("|C2|", 11520, group("c2").order());
    c.eq("|<H, P>|", 24, group("hp1").order());
    c.within("runtime", t.elapsed(), Duration::from_secs(30));
}

/// 2×2 product over the ring.
fn mat2(a: &[Cyclo8; 4], b: &[Cyclo8; 4]) -> [Cyclo8; 4] {
    let m = |i: usize, j: usize| &(&a[2 * i] * &b[j]) + &(&a[2 * i + 1] * &b[2 + j]);
    [m(0, 0), m(0, 1), m(1, 0), m(1, 1)]
}

fn criterion_2(c: &mut Criterion) {
    // literal matrices, no phase quotient: (H P)^3 must be ω·1 with ω^8 = 1
    let s = Cyclo8::inv_sqrt2();
    let h = [s.clone(), s.clone(), s.clone(), -s];
    let p = [Cyclo8::one(), Cyclo8::zero(), Cyclo8::zero(), Cyclo8::i()];
    let hp = mat2(&p, &h);
    let cube = mat2(&hp, &mat2(&hp, &hp));
    let omega = cube[0].clone();
    let scalar = cube[1].is_zero() && cube[2].is_zero() && cube[3] == omega;
    let eighth = (0..8).fold(Cyclo8::one(), |acc, _| &acc * &omega) == Cyclo8::one();
    c.ok("(H P)^3 is scalar", scalar);
    c.ok("that scalar is an 8th root of unity", eighth);
    for q in 1..=2 {
        c.ok(&format!("(H{q} P{q})^3 = 1 in C2"), verify_relation(&word(&format!("(H{q} P{q})^3")), &word("1"), 2).unwrap());
    }
    c.ok("(C12 P2)^4 = P1^2", verify_relation(&word("(C12 P2)^4"), &word("P1^2"), 2).unwrap());
    c.ok("(C12 H2)^4 = P1^2", verify_relation(&word("(C12 H2)^4"), &word("P1^2"), 2).unwrap());
    c.ok("(C21 H1)^4 = P2^2", verify_relation(&word("(C21 H1)^4"), &word("P2^2"), 2).unwrap());
    c.ok("P1^2 is not trivial", !element("P1^2").is_identity());
}

fn criterion_3(c: &mut Criterion) {
    let hc = group("hc12");
    let c2 = group("c2");
    for n in [2, 3] {
        let stab = stabilizer_subgroup(&PureState::zero(n), &hc).unwrap();
        c.eq(&format!("Stab_HC(|0>^{n})"), 48, stab.order());
        let psi = PureState::parse_spec(&format!("word:{n}:H1 P1")).unwrap();
        c.eq(&format!("Stab_HC(P1 H1 |0>^{n})"), 32, stab_order(&psi, &hc));
    }
    let zero = PureState::zero(2);
    let orbit = reach(&zero, "c2").vertex_count();
    c.eq("C2 orbit of |00>", 60, orbit);
    c.eq("Stab_C2(|00>)", 192, stab_order(&zero, &c2));
    c.eq("orbit x stabilizer", 11520, orbit * stab_order(&zero, &c2));
    // the printed words for Stab(D^n_1), with the labels of qubits 1 and 2
    // exchanged to match the basis convention used here
    let printed = ["1", "H1 C21 H1", "C21 C12 C21", "H1 C21 H1 C21 C12 C21"];
    for n in [3, 4, 5] {
        let stab = stabilizer_subgroup(&PureState::dicke(n, 1).unwrap(), &c2).unwrap();
        let members: BTreeSet<usize> = stab.elements().iter().copied().collect();
        let want: BTreeSet<usize> = printed.iter().map(|w| c2.index_of(&element(w)).unwrap()).collect();
        c.eq(&format!("Stab_C2(D{n}1)"), want, members);
    }
    let swap = c2.index_of(&element("C12 C21 C12")).unwrap();
    for (n, k) in [(4, 2), (5, 2), (6, 3)] {
        let stab = stabilizer_subgroup(&PureState::dicke(n, k).unwrap(), &c2).unwrap();
        let members: BTreeSet<usize> = stab.elements().iter().copied().collect();
        c.eq(&format!("Stab_C2(D{n}{k})"), BTreeSet::from([c2.identity(), swap]), members);
    }
}

fn stab_order(psi: &PureState, g: &EnumeratedGroup) -> usize {
    stabilizer_subgroup(psi, g).unwrap().order()
}

fn criterion_4(c: &mut Criterion, gs: &Graphs) {
    for (what, spec, s, n) in [
        ("g24", "basis:00", "hc12", 24),
        ("g36", "word:2:H1 P1", "hc12", 36),
        ("C2 complex of |00>", "basis:00", "c2", 60),
        ("GHZ3 (HC) orbit", "ghz:3", "hc12", 144),
        ("GHZ3 C2 complex", "ghz:3", "c2", 768),
        ("6-qubit fixture (HC) orbit", "fixture:six_qubit_g144", "hc12", 144),
        ("8-qubit fixture (HC) orbit", "fixture:eight_qubit_g1152", "hc12", 1152),
        ("8-qubit fixture C2 orbit", "fixture:eight_qubit_g1152", "c2", 11520),
        ("D31 (HC)", "dicke:3:1", "hc12", 288),
        ("D31 C2", "dicke:3:1", "c2", 2880),
        ("D42 (HC)", "dicke:4:2", "hc12", 576),
        ("D42 C2", "dicke:4:2", "c2", 5760),
    ] {
        c.eq(what, n, gs.get(spec, s).vertex_count());
    }
    c.eq("g288 (GHZ3 complex piece)", 288, gs.g288("ghz:3").vertex_count());
    c.eq("g288 (6-qubit fixture)", 288, gs.g288("fixture:six_qubit_g144").vertex_count());
}

fn criterion_5(c: &mut Criterion, gs: &Graphs) {
    let classes = |g: &ReachabilityGraph, s: &str| contract_with_set(g, &set(s), false).unwrap().class_count();
    for (what, spec, s, k) in [
        ("g24", "basis:00", "hc12", 2),
        ("g36", "word:2:H1 P1", "hc12", 4),
        ("g144", "fixture:six_qubit_g144", "hc12", 5),
        ("g1152", "fixture:eight_qubit_g1152", "hc12", 18),
        ("C2(|00>)", "basis:00", "c2", 2),
        ("C2(GHZ3)", "ghz:3", "c2", 5),
        ("full C2", "fixture:eight_qubit_g1152", "c2", 20),
        ("g288*", "dicke:3:1", "hc12", 5),
        ("C2(D31)", "dicke:3:1", "c2", 6),
        ("g576", "dicke:4:2", "hc12", 9),
        ("C2(D42)", "dicke:4:2", "c2", 10),
    ] {
        c.eq(what, k, classes(&gs.get(spec, s), s));
    }
    c.eq("g288", 12, classes(&gs.g288("ghz:3"), "hc12"));
    for s in ["hc12", "c2"] {
        let g = group(s);
        let local = EnumeratedGroup::local_from_generator_set(&set(s), DEFAULT_MAX_SIZE).unwrap();
        let h = g.embed(&local).unwrap();
        for spec in ["basis:00", "word:2:H1 P1", "ghz:3", "dicke:3:1", "dicke:4:2", "fixture:six_qubit_g144"] {
            let psi = PureState::parse_spec(spec).unwrap();
            let stab = stabilizer_subgroup(&psi, &g).unwrap();
            let blocks = g.double_cosets(&h, &stab).len();
            c.eq(&format!("{s} double cosets vs contraction, {spec}"), blocks, classes(&gs.get(spec, s), s));
        }
    }
}

fn criterion_6(c: &mut Criterion, gs: &Graphs) {
    for (what, g, d) in [
        ("g24", gs.get("basis:00", "hc12"), 2),
        ("g36", gs.get("word:2:H1 P1", "hc12"), 2),
        ("g144 (6-qubit)", gs.get("fixture:six_qubit_g144", "hc12"), 5),
        ("g288 (6-qubit)", gs.g288("fixture:six_qubit_g144"), 5),
        ("g1152 (8-qubit)", gs.get("fixture:eight_qubit_g1152", "hc12"), 18),
        ("full C2 (8-qubit)", gs.get("fixture:eight_qubit_g1152", "c2"), 20),
        ("g288*", gs.get("dicke:3:1", "hc12"), 5),
        ("C2(D31)", gs.get("dicke:3:1", "c2"), 5),
        ("g576", gs.get("dicke:4:2", "hc12"), 6),
        ("C2(D42)", gs.get("dicke:4:2", "c2"), 6),
    ] {
        c.eq(what, d, g.entropic_diversity());
    }
}

const SIX_QUBIT_TABLE: [[u8; 31]; 5] = [
    [1, 0, 1, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 2],
    [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 2, 2, 3, 3],
    [1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 2, 3, 3, 2, 3],
];

fn log2(x: f64) -> f64 {
    x.log2()
}

/// Entropy values written out independently of the library's table.
fn d31_values() -> [f64; 4] {
    let r5 = 5f64.sqrt();
    let (a, b) = ((3.0 - r5) / 6.0, (3.0 + r5) / 6.0);
    [
        1.0,
        2.0 / 3.0 * log2(1.5) + 1.0 / 3.0 * log2(3.0),
        5.0 / 6.0 * log2(6.0 / 5.0) + 1.0 / 6.0 * log2(6.0),
        a * log2(6.0 / (3.0 - r5)) + b * log2(6.0 / (3.0 + r5)),
    ]
}

fn d42_values() -> [f64; 7] {
    let (r5, r2) = (5f64.sqrt(), 2f64.sqrt());
    let l = |p: f64, q: f64| p * log2(12.0 / (6.0 * p)) + q * log2(12.0 / (6.0 * q));
    [
        5.0 / 6.0 * log2(12.0 / 5.0) + 1.0 / 6.0 * log2(12.0),
        l((3.0 - r5) / 6.0, (3.0 + r5) / 6.0),
        2.0 / 3.0 * log2(1.5) + 1.0 / 3.0 * log2(6.0),
        l((3.0 - 2.0 * r2) / 6.0, (3.0 + 2.0 * r2) / 6.0),
        1.0,
        2.0 / 3.0 * log2(1.5) + 1.0 / 3.0 * log2(3.0),
        5.0 / 6.0 * log2(6.0 / 5.0) + 1.0 / 6.0 * log2(6.0),
    ]
}

fn has_row(vectors: &[EntropyVector], row: &[f64]) -> bool {
    vectors.iter().any(|v| {
        v.components().len() == row.len() && v.components().iter().zip(row).all(|(a, b)| (a - b).abs() <= ENTROPY_TOL)
    })
}

fn criterion_7(c: &mut Criterion, gs: &Graphs) {
    let d31 = d31_values();
    let lib31 = SymbolTable::dicke31();
    let s1 = 2.0 / 3.0 * log2(1.5) + 1.0 / 3.0 * log2(3.0);
    c.ok("s1 = (2/3)log2(3/2) + (1/3)log2(3)", (d31[1] - s1).abs() <= ENTROPY_TOL);
    for (i, v) in d31.iter().enumerate() {
        c.ok(&format!("D31 s{i} table value"), (lib31.value(&format!("s{i}")).unwrap() - v).abs() <= ENTROPY_TOL);
    }
    let rows31: [[usize; 3]; 5] = [[1, 1, 1], [3, 1, 1], [1, 3, 1], [0, 0, 1], [2, 2, 1]];
    for s in ["hc12", "c2"] {
        let g = gs.get("dicke:3:1", s);
        for r in rows31 {
            let row: Vec<f64> = r.iter().map(|&i| d31[i]).collect();
            c.ok(&format!("D31 {s} realizes (s{},s{},s{})", r[0], r[1], r[2]), has_row(g.entropy_vectors(), &row));
        }
        c.eq(&format!("D31 {s} distinct vectors"), 5, g.entropy_vectors().len());
    }
    let d42 = d42_values();
    let lib42 = SymbolTable::dicke42();
    for (i, v) in d42.iter().enumerate() {
        c.ok(&format!("D42 s{i} table value"), (lib42.value(&format!("s{i}")).unwrap() - v).abs() <= ENTROPY_TOL);
    }
    // the printed six-row table repeats its first row; these are its
    // distinct rows
    let rows42: [[usize; 7]; 5] = [
        [4, 4, 4, 4, 2, 2, 2],
        [6, 5, 4, 4, 2, 1, 1],
        [5, 6, 4, 4, 2, 1, 1],
        [4, 4, 4, 4, 2, 0, 0],
        [6, 6, 4, 4, 2, 3, 3],
    ];
    for s in ["hc12", "c2"] {
        let g = gs.get("dicke:4:2", s);
        for r in rows42 {
            let row: Vec<f64> = r.iter().map(|&i| d42[i]).collect();
            c.ok(&format!("D42 {s} realizes {r:?}"), has_row(g.entropy_vectors(), &row));
        }
        c.eq(&format!("D42 {s} distinct vectors"), 6, g.entropy_vectors().len());
    }
    let want: BTreeSet<Vec<u64>> = SIX_QUBIT_TABLE.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    let integer = |g: &ReachabilityGraph| -> Option<BTreeSet<Vec<u64>>> {
        g.entropy_vectors()
            .iter()
            .map(|v| {
                v.components()
                    .iter()
                    .map(|&x| ((x - x.round()).abs() <= ENTROPY_TOL).then_some(x.round() as u64))
                    .collect::<Option<Vec<u64>>>()
            })
            .collect()
    };
    for (what, g) in [
        ("g144", gs.get("fixture:six_qubit_g144", "hc12")),
        ("g288", gs.g288("fixture:six_qubit_g144")),
        ("C2 complex", gs.get("fixture:six_qubit_g144", "c2")),
    ] {
        c.eq(&format!("6-qubit {what} vectors = table rows"), Some(want.clone()), integer(&g));
    }
}

fn criterion_8(c: &mut Criterion) {
    let bounds = ["1", "20", "6720", "36556800", "3191262412800"];
    for (n, b) in (1..=5).zip(bounds) {
        c.eq(&format!("diversity bound n={n}"), b.to_string(), diversity_bound(n).to_string());
    }
    for (n, k) in (1..=4).zip([6u64, 60, 1080, 36720]) {
        c.eq(&format!("|S_{n}|"), k.to_string(), stabilizer_state_count(n).to_string());
    }
}

fn census_rows() -> Vec<(usize, [&'static str; 3])> {
    vec![
        (2, ["1 (2)", "0", "0"]),
        (3, ["6 (2)", "1 (3)", "0"]),
        (4, ["60 (2)", "12 (3), 18 (4)", "1 (2), 9 (4)"]),
        (5, ["1080 (2)", "180 (3), 1080 (4)", "18 (2), 216 (4), 486 (6), 540 (7)"]),
    ]
}

fn census_check(c: &mut Criterion, n: usize, cells: [&str; 3]) {
    let rep = census(n, &CensusOptions::default()).unwrap();
    c.eq(&format!("n={n} states"), stabilizer_state_count(n as u32).to_string(), rep.total_states.to_string());
    for (fam, want) in Family::COLUMNS.iter().zip(cells) {
        c.eq(&format!("n={n} {}", fam.name()), want.to_string(), rep.cell(*fam));
    }
    c.eq(&format!("n={n} unclassified orbits"), Vec::<usize>::new(), rep.unclassified());
}

fn criterion_9(c: &mut Criterion) {
    let t = Instant::now();
    for (n, cells) in census_rows().into_iter().take(3) {
        census_check(c, n, cells);
    }
    c.within("runtime through n=4", t.elapsed(), Duration::from_secs(180));
}

fn criterion_10(c: &mut Criterion, gs: &Graphs) {
    let g288 = gs.g288("ghz:3");
    let star = gs.get("dicke:3:1", "hc12");
    c.ok("g288 vs g288* (labeled)", !isomorphic(&g288.to_labeled(), &star.to_labeled(), true));
    c.ok("g288 vs g288* (unlabeled)", !isomorphic(&g288.to_labeled(), &star.to_labeled(), false));
    // the complex is 720 states here; its three g144 copies are the subject
    let complex = gs.get("ghz:3", "c2");
    let idx = complex.generator_indices(&["H1", "H2", "C12", "C21"]);
    let copies: Vec<_> = hc_pieces(&complex)
        .into_iter()
        .filter(|p| p.len() == 144)
        .map(|p| complex.subgraph(&p, &idx))
        .collect();
    c.eq("g144 copies", 3, copies.len());
    for i in 0..copies.len() {
        for j in i + 1..copies.len() {
            c.ok(&format!("g144 copy {i} = copy {j}"), isomorphic(&copies[i], &copies[j], true));
        }
    }
    c.ok("g144 copy = standalone g144", isomorphic(&copies[0], &gs.get("ghz:3", "hc12").to_labeled(), true));
}

// property suites

fn runner() -> TestRunner {
    let config = Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn record<T: std::fmt::Debug>(c: &mut Criterion, what: &str, r: Result<(), proptest::test_runner::TestError<T>>) {
    let pass = r.is_ok();
    c.checks.push(Check {
        what: format!("{what} ({PROPERTY_CASES} cases)"),
        pass,
        detail: r.err().map(|e| e.to_string()).unwrap_or_default(),
    });
}

fn ring_elem() -> impl Strategy<Value = Cyclo8> {
    (prop::array::uniform4(-40i64..40), 0u32..5).prop_map(|(a, k)| Cyclo8::from_small(a, k))
}

fn c2_word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["H1", "H2", "P1", "P2", "C12", "C21"]), 0..14)
        .prop_map(|v| if v.is_empty() { "1".to_string() } else { v.join(" ") })
}

fn local_word(n: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((prop::bool::ANY, 1..=n), 1..10).prop_map(|v| {
        v.iter()
            .map(|&(h, q)| format!("{}{q}", if h { "H" } else { "P" }))
            .collect::<Vec<_>>()
            .join(" ")
    })
}

fn dense_state(n: usize) -> impl Strategy<Value = PureState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            PureState::from_amplitudes(v.into_iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect())
                .expect("normalizable")
        })
}

fn fixtures() -> Vec<PureState> {
    let mut out: Vec<PureState> = PureState::FIXTURES.iter().map(|f| PureState::fixture(f).unwrap()).collect();
    out.push(PureState::ghz(3).unwrap());
    out.push(PureState::zero(2));
    out
}

fn criterion_11(c: &mut Criterion) {
    let r = runner().run(&(ring_elem(), ring_elem(), ring_elem()), |(a, b, x)| {
        prop_assert_eq!(&(&a + &b) + &x, &a + &(&b + &x));
        prop_assert_eq!(&(&a * &b) * &x, &a * &(&b * &x));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &x), &(&a * &b) + &(&a * &x));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &Cyclo8::one(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        let (za, zb) = (a.to_complex(), b.to_complex());
        prop_assert!(((&a * &b).to_complex() - za * zb).norm() <= 1e-9 * (1.0 + za.norm() * zb.norm()));
        Ok(())
    });
    record(c, "ring axioms", r);

    let seeds = fixtures();
    let r = runner().run(&(c2_word(), 0i64..8, 0..seeds.len()), |(w, m, s)| {
        let e = element(&w);
        prop_assert_eq!(&e.times_phase(m), &e);
        prop_assert_eq!(&CliffordElement::from_matrix(2, e.raw_phase_multiple(m)).unwrap(), &e);
        let psi = seeds[s].apply(&e).unwrap();
        let phase = Cyclo8::zeta_pow(m).to_complex();
        prop_assert_eq!(psi.scaled(phase).fingerprint(), psi.fingerprint());
        Ok(())
    });
    record(c, "phase-canonicalization invariance", r);

    let r = runner().run(&(dense_state(4), local_word(4)), |(psi, w)| {
        let before = entropy_vector(&psi);
        let after = entropy_vector(&psi.apply_word(&word(&w)).unwrap());
        for (a, b) in before.components().iter().zip(after.components()) {
            prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
        }
        Ok(())
    });
    record(c, "local-gate entropy invariance", r);

    let r = runner().run(&(0..seeds.len(), c2_word(), any::<u32>()), |(s, w, bits)| {
        let psi = seeds[s].apply(&element(&w)).unwrap();
        let full = (1u32 << psi.n()) - 1;
        let mask = bits & full;
        prop_assume!(mask != 0 && mask != full);
        let a = entropy_of_mask_direct(&psi, mask);
        let b = entropy_of_mask_direct(&psi, full & !mask);
        prop_assert!((a - b).abs() <= 1e-8, "S_I = {} but S_complement = {}", a, b);
        Ok(())
    });
    record(c, "purity S_I = S_complement on fixtures", r);

    let hc = group("hc12");
    let c2 = group("c2");
    let r = runner().run(&(prop::bool::ANY, prop::collection::vec(any::<prop::sample::Index>(), 1..4)), |(big, picks)| {
        let g = if big { &c2 } else { &hc };
        let gens: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let sub = g.subgroup_generated(&gens);
        prop_assert_eq!(g.order() % sub.order(), 0);
        let cosets = g.left_cosets(&sub);
        prop_assert!(cosets.block_sizes().iter().all(|&s| s == sub.order()));
        prop_assert_eq!(cosets.len() * sub.order(), g.order());
        Ok(())
    });
    record(c, "Lagrange divisibility", r);

    let tableau_word = prop::collection::vec((0u8..3, 1usize..=4, 1usize..=4), 0..30);
    let r = runner().run(&(prop::bool::ANY, dense_state(4), tableau_word), |(stab, dense, ops)| {
        let psi = if stab {
            let mut t = StabilizerTableau::zero(4).unwrap();
            for (kind, a, b) in ops {
                let w = match kind {
                    0 => format!("H{a}"),
                    1 => format!("P{a}"),
                    _ if a != b => format!("C{a}{b}"),
                    _ => format!("H{b}"),
                };
                t.apply_word(&word(&w)).unwrap();
            }
            t.to_state().unwrap()
        } else {
            dense
        };
        let direct = mmi_scan(&psi);
        let via = mmi_scan(&entropy_vector(&psi));
        prop_assert_eq!(direct.results.len(), via.results.len());
        for (x, y) in direct.results.iter().zip(&via.results) {
            prop_assert_eq!((x.a, x.b, x.c, x.status), (y.a, y.b, y.c, y.status));
        }
        prop_assert_eq!(direct.consistent(), via.consistent());
        Ok(())
    });
    record(c, "MMI classification consistency", r);
}

fn main() {
    let gs = Graphs::default();
    let started = Instant::now();
    let mut failed = Vec::new();
    type Run<'a> = Box<dyn Fn(&mut Criterion) + 'a>;
    let criteria: Vec<(u32, &str, Run)> = vec![
        (1, "group orders", Box::new(criterion_1)),
        (2, "relations", Box::new(criterion_2)),
        (3, "stabilizer subgroup orders", Box::new(criterion_3)),
        (4, "reachability vertex counts", Box::new(|c| criterion_4(c, &gs))),
        (5, "contracted-graph class counts", Box::new(|c| criterion_5(c, &gs))),
        (6, "entropic diversities", Box::new(|c| criterion_6(c, &gs))),
        (7, "entropy values", Box::new(|c| criterion_7(c, &gs))),
        (8, "diversity bound and stabilizer counts", Box::new(criterion_8)),
        (9, "stabilizer census", Box::new(criterion_9)),
        (10, "isomorphism", Box::new(|c| criterion_10(c, &gs))),
        (11, "property suites", Box::new(criterion_11)),
    ];
    for (id, name, run) in &criteria {
        let t = Instant::now();
        let mut c = Criterion::default();
        run(&mut c);
        let bad: Vec<&Check> = c.checks.iter().filter(|k| !k.pass).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {id}: {name} ({}/{} checks, {:.1?})",
            c.checks.len() - bad.len(),
            c.checks.len(),
            t.elapsed()
        );
        for k in &bad {
            println!("    failed: {}: {}", k.what, k.detail);
        }
        if !bad.is_empty() {
            failed.push(*id);
        }
    }
    // the five-qubit census row is reported but does not gate
    let t = Instant::now();
    let mut c = Criterion::default();
    let (n, cells) = census_rows().pop().unwrap();
    census_check(&mut c, n, cells);
    let bad: Vec<&Check> = c.checks.iter().filter(|k| !k.pass).collect();
    println!(
        "{} extended: five-qubit census row, not gating ({}/{} checks, {:.1?})",
        if bad.is_empty() { "PASS" } else { "FAIL" },
        c.checks.len() - bad.len(),
        c.checks.len(),
        t.elapsed()
    );
    for k in &bad {
        println!("    failed: {}: {}", k.what, k.detail);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        criteria.len() - failed.len(),
        criteria.len(),
        started.elapsed()
    );
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
