use std::fmt::Write as _;

use coset_core::census::{census, CensusOptions, Family};
use coset_core::entropy::{entropy_table_csv, SymbolTable};
use coset_core::graphs::export::{ExportOptions, GraphDocument};
use coset_core::graphs::{contract_with_set, reachability, ReachOptions, ReachabilityGraph};
use coset_core::group::{clifford_order, diversity_bound, local_subgroup_order};

use crate::config::{display, RunConfig};
use crate::CliError;

/// Closed-form order for the named sets that have one.
fn known_order(name: &str) -> Option<u64> {
    match name {
        "c2" => Some(clifford_order(2).try_into().expect("small")),
        "hp1" => Some(local_subgroup_order(1).try_into().expect("small")),
        _ => None,
    }
}

pub fn enumerate(cfg: &RunConfig) -> Result<String, CliError> {
    let set = cfg.generator_set()?;
    let (g, cached) = cfg.group(&set)?;
    let mut s = String::new();
    let _ = writeln!(s, "generators: {} [{}]", set.name, set.generator_labels().join(" "));
    let _ = writeln!(s, "order {}", g.order());
    let _ = writeln!(s, "source: {}", if cached { "cache" } else { "enumerated" });
    if let Some(expected) = known_order(&set.name) {
        let ok = expected as usize == g.order();
        let _ = writeln!(s, "closed form: {expected} ({})", if ok { "match" } else { "MISMATCH" });
        if !ok {
            return Err(CliError::Verification(s));
        }
    }
    if !set.local.is_empty() {
        let local = coset_core::group::EnumeratedGroup::local_from_generator_set(&set, cfg.cap)?;
        let _ = writeln!(s, "local subgroup order {}", local.order());
    }
    Ok(s)
}

/// Symbol tables only for the states they were written for.
fn symbols_for(spec: &str) -> Option<SymbolTable> {
    match spec {
        "dicke:3:1" | "w:3" | "fixture:w3" => Some(SymbolTable::dicke31()),
        "dicke:4:2" | "fixture:d42" => Some(SymbolTable::dicke42()),
        _ => None,
    }
}

fn build_graph(cfg: &RunConfig) -> Result<(ReachabilityGraph, coset_core::clifford::GeneratorSet), CliError> {
    let set = cfg.generator_set()?;
    let psi = cfg.state()?;
    let opts = ReachOptions {
        cap: cfg.cap,
        ..ReachOptions::default()
    };
    let g = reachability(&psi, &set.generators, &opts)?;
    Ok((g, set))
}

fn graph_summary(cfg: &RunConfig, g: &ReachabilityGraph, s: &mut String) -> Result<(), CliError> {
    let set = cfg.generator_set()?;
    let _ = writeln!(s, "state: {} ({} qubits)", cfg.state.as_deref().unwrap_or(""), g.n());
    let _ = writeln!(s, "generators: {} [{}]", set.name, g.generator_labels().join(" "));
    let _ = writeln!(s, "vertices: {}", g.vertex_count());
    let _ = writeln!(s, "edges: {}", g.edges().count());
    let _ = writeln!(s, "entropic diversity: {}", g.entropic_diversity());
    match g.diameter() {
        Ok(d) => {
            let _ = writeln!(s, "diameter: {d}");
        }
        Err(_) => {
            let _ = writeln!(s, "diameter: disconnected");
        }
    }
    if let Ok((group, _)) = cfg.group(&set) {
        let order = group.order();
        let divides = order % g.vertex_count() == 0;
        let _ = writeln!(
            s,
            "group order: {order} (stabilizer order {}{})",
            order / g.vertex_count(),
            if divides { "" } else { ", NOT a divisor" }
        );
    }
    Ok(())
}

fn export_options(cfg: &RunConfig) -> ExportOptions {
    ExportOptions {
        merge_involutions: !cfg.directed_edges,
    }
}

pub fn reach(cfg: &RunConfig) -> Result<String, CliError> {
    let (g, _) = build_graph(cfg)?;
    let mut s = String::new();
    graph_summary(cfg, &g, &mut s)?;
    let symbols = cfg.state.as_deref().and_then(symbols_for);
    let table = entropy_table_csv(&g.entropy_table(), symbols.as_ref());
    let _ = writeln!(s, "entropy table:\n{table}");
    let doc = GraphDocument::from_reachability(&g, export_options(cfg));
    let ext = cfg.format.extension();
    if let Some(p) = cfg.write_output(&format!("reach.{ext}"), &doc.render(cfg.format))? {
        let _ = writeln!(s, "wrote {}", display(&p));
    }
    if let Some(p) = cfg.write_output("entropy.csv", &table)? {
        let _ = writeln!(s, "wrote {}", display(&p));
    }
    Ok(s)
}

pub fn contract(cfg: &RunConfig) -> Result<String, CliError> {
    let (g, set) = build_graph(cfg)?;
    if set.local.is_empty() {
        return Err(CliError::Usage(format!("generator set `{}` has no local generators", set.name)));
    }
    let c = contract_with_set(&g, &set, cfg.keep_loops)?;
    let mut s = String::new();
    graph_summary(cfg, &g, &mut s)?;
    let _ = writeln!(s, "local subgroup order: {}", c.local_order);
    let _ = writeln!(s, "classes: {}", c.class_count());
    let _ = writeln!(s, "colors: {}", c.entropic_diversity());
    let _ = writeln!(s, "uniform class entropy: {}", c.uniform_entropy());
    match c.diameter() {
        Ok(d) => {
            let _ = writeln!(s, "contracted diameter: {d}");
        }
        Err(_) => {
            let _ = writeln!(s, "contracted diameter: disconnected");
        }
    }
    let dropped: usize = c.loop_counts.iter().sum();
    let _ = writeln!(
        s,
        "self-loops: {dropped} {}",
        if cfg.keep_loops { "kept" } else { "dropped" }
    );
    let sizes: Vec<String> = c.classes.iter().map(|b| b.len().to_string()).collect();
    let _ = writeln!(s, "class sizes: {}", sizes.join(" "));
    let doc = GraphDocument::from_contracted(&c, export_options(cfg));
    let ext = cfg.format.extension();
    if let Some(p) = cfg.write_output(&format!("contracted.{ext}"), &doc.render(cfg.format))? {
        let _ = writeln!(s, "wrote {}", display(&p));
    }
    Ok(s)
}

pub fn run_census(cfg: &RunConfig, n: usize) -> Result<String, CliError> {
    if !(2..=5).contains(&n) {
        return Err(CliError::Usage(format!("census needs 2 ≤ n ≤ 5, got {n}")));
    }
    if n == 5 && !cfg.extended {
        return Err(CliError::Usage("the 5-qubit census (2,423,520 states) needs --extended".into()));
    }
    let opts = CensusOptions {
        cap: cfg.cap,
        jobs: cfg.jobs,
    };
    let r = census(n, &opts)?;
    let mut s = String::new();
    let _ = writeln!(s, "states: {} (expected {})", r.total_states, coset_core::group::stabilizer_state_count(n as u32));
    let _ = writeln!(s, "orbits: {}", r.records.len());
    let header: Vec<String> = Family::COLUMNS.iter().map(|f| f.name()).collect();
    let _ = writeln!(s, "n | {}", header.join(" | "));
    let _ = writeln!(s, "{}", r.table_row());
    for size in r.unclassified() {
        let _ = writeln!(s, "unclassified orbit of {size} states");
    }
    if let Some(p) = cfg.write_output(&format!("census-n{n}.csv"), &r.to_csv())? {
        let _ = writeln!(s, "wrote {}", display(&p));
    }
    if let Some(p) = cfg.write_output(&format!("census-n{n}-orbits.csv"), &r.records_csv())? {
        let _ = writeln!(s, "wrote {}", display(&p));
    }
    if !r.state_count_matches() {
        return Err(CliError::Verification(s));
    }
    Ok(s)
}

pub fn diversity_table(max_n: u32) -> Result<String, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("max n must be at least 1".into()));
    }
    let mut s = String::from("n,clifford_order,local_order,max_entropy_vectors\n");
    for n in 1..=max_n {
        let _ = writeln!(
            s,
            "{n},{},{},{}",
            clifford_order(n),
            local_subgroup_order(n),
            diversity_bound(n)
        );
    }
    Ok(s)
}
