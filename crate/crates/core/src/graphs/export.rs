//! DOT, GraphML, JSON and CSV-summary writers.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{ContractedGraph, ReachabilityGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    GraphMl,
    Json,
    CsvSummary,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "graphml" => Ok(Format::GraphMl),
            "json" => Ok(Format::Json),
            "csv" | "csv-summary" => Ok(Format::CsvSummary),
            _ => Err(Error::Unknown {
                kind: "format",
                name: s.to_string(),
            }),
        }
    }
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Dot => "dot",
            Format::GraphMl => "graphml",
            Format::Json => "json",
            Format::CsvSummary => "csv",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeRecord {
    pub id: usize,
    pub entropy_class: usize,
    pub entropy_vector: String,
    /// Number of underlying vertices (contracted graphs) or 1.
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeRecord {
    pub source: usize,
    pub target: usize,
    pub gen: String,
    pub mult: usize,
    pub directed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphDocument {
    pub kind: String,
    pub generators: Vec<String>,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
    pub summary: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExportOptions {
    /// Emit each involutive edge pair once, as an undirected edge.
    pub merge_involutions: bool,
}

fn push_edge(edges: &mut Vec<EdgeRecord>, labels: &[String], involutive: &[bool], merge: bool, (u, v, s): (usize, usize, usize), mult: usize) {
    let inv = involutive[s];
    if merge && inv && u > v {
        return;
    }
    edges.push(EdgeRecord {
        source: u,
        target: v,
        gen: labels[s].clone(),
        mult,
        directed: !(merge && inv),
    });
}

impl GraphDocument {
    pub fn from_reachability(g: &ReachabilityGraph, opts: ExportOptions) -> Self {
        let labels = g.generator_labels();
        let involutive: Vec<bool> = g.generators().iter().map(|x| x.is_involution()).collect();
        let nodes = (0..g.vertex_count())
            .map(|v| NodeRecord {
                id: v,
                entropy_class: g.entropy_class(v),
                entropy_vector: g.vertex_entropy(v).to_decimal_string(),
                size: 1,
            })
            .collect();
        let mut edges = Vec::new();
        for (u, gen, v) in g.edges() {
            push_edge(&mut edges, &labels, &involutive, opts.merge_involutions, (u, v, gen), 1);
        }
        let summary = vec![
            ("vertices".to_string(), g.vertex_count().to_string()),
            ("edges".to_string(), g.edges().count().to_string()),
            ("entropic_diversity".to_string(), g.entropic_diversity().to_string()),
            (
                "diameter".to_string(),
                g.diameter().map_or("disconnected".to_string(), |d| d.to_string()),
            ),
        ];
        GraphDocument {
            kind: "reachability".into(),
            generators: labels,
            nodes,
            edges,
            summary,
        }
    }

    pub fn from_contracted(g: &ContractedGraph, opts: ExportOptions) -> Self {
        let nodes = (0..g.class_count())
            .map(|c| NodeRecord {
                id: c,
                entropy_class: g.class_color(c),
                entropy_vector: g.entropy_vectors[g.class_color(c)].to_decimal_string(),
                size: g.classes[c].len(),
            })
            .collect();
        let mut edges = Vec::new();
        for (&e, &m) in &g.edges {
            push_edge(&mut edges, &g.labels, &g.involutive, opts.merge_involutions, e, m);
        }
        let summary = vec![
            ("classes".to_string(), g.class_count().to_string()),
            ("entropic_diversity".to_string(), g.entropic_diversity().to_string()),
            (
                "diameter".to_string(),
                g.diameter().map_or("disconnected".to_string(), |d| d.to_string()),
            ),
            ("local_order".to_string(), g.local_order.to_string()),
            ("dropped_loops".to_string(), if g.keep_loops { 0 } else { g.loop_counts.iter().sum::<usize>() }.to_string()),
        ];
        GraphDocument {
            kind: "contracted".into(),
            generators: g.labels.clone(),
            nodes,
            edges,
            summary,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Dot => self.to_dot(),
            Format::GraphMl => self.to_graphml(),
            Format::Json => serde_json::to_string_pretty(self).expect("plain data"),
            Format::CsvSummary => self.to_csv_summary(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  {} [entropy_class={}, entropy_vector=\"{}\", size={}];",
                n.id, n.entropy_class, n.entropy_vector, n.size
            );
        }
        for e in &self.edges {
            let dir = if e.directed { "" } else { ", dir=none" };
            let _ = writeln!(s, "  {} -> {} [gen=\"{}\", mult={}{dir}];", e.source, e.target, e.gen, e.mult);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_graphml(&self) -> String {
        let mut s = String::from(concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
            "  <key id=\"entropy_class\" for=\"node\" attr.name=\"entropy_class\" attr.type=\"int\"/>\n",
            "  <key id=\"entropy_vector\" for=\"node\" attr.name=\"entropy_vector\" attr.type=\"string\"/>\n",
            "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n",
            "  <key id=\"gen\" for=\"edge\" attr.name=\"gen\" attr.type=\"string\"/>\n",
            "  <key id=\"mult\" for=\"edge\" attr.name=\"mult\" attr.type=\"int\"/>\n",
            "  <graph id=\"G\" edgedefault=\"directed\">\n",
        ));
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "    <node id=\"n{}\"><data key=\"entropy_class\">{}</data><data key=\"entropy_vector\">{}</data><data key=\"size\">{}</data></node>",
                n.id, n.entropy_class, n.entropy_vector, n.size
            );
        }
        for (i, e) in self.edges.iter().enumerate() {
            let _ = writeln!(
                s,
                "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\" directed=\"{}\"><data key=\"gen\">{}</data><data key=\"mult\">{}</data></edge>",
                e.source, e.target, e.directed, e.gen, e.mult
            );
        }
        s.push_str("  </graph>\n</graphml>\n");
        s
    }

    pub fn to_csv_summary(&self) -> String {
        let mut s = String::from("metric,value\n");
        let _ = writeln!(s, "kind,{}", self.kind);
        let _ = writeln!(s, "generators,{}", self.generators.join(" "));
        for (k, v) in &self.summary {
            let _ = writeln!(s, "{k},{v}");
        }
        s
    }
}
