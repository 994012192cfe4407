//! Gruenberg-Kegel prime graphs: primes joined when their product is an
//! element order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_set;
use crate::spectra::maximal_under_divisibility;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("spectrum must contain 1")]
    MissingIdentity,
    #[error("spectrum is not closed under divisors: {n} present but {d} missing")]
    NotDivisorClosed { n: u64, d: u64 },
    #[error("component index {index} out of range 1..={s}")]
    IndexOutOfRange { index: usize, s: usize },
}

/// Prime graph with components ordered: the component of 2 first when 2 is
/// a vertex, then by least vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    pub vertices: BTreeSet<u64>,
    pub edges: BTreeSet<(u64, u64)>,
    pub components: Vec<BTreeSet<u64>>,
    /// `mu(G)`, recorded to derive `mu_i`.
    pub mu: BTreeSet<u64>,
}

/// `(pi_i, mu_i, n_i)` for one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    pub vertices: BTreeSet<u64>,
    pub mu_i: BTreeSet<u64>,
    /// The unique element of `mu_i`, for `i >= 2` only.
    pub n_i: Option<u64>,
}

pub fn build_gk(spectrum: &BTreeSet<u64>) -> Result<PrimeGraph, GraphError> {
    if !spectrum.contains(&1) {
        return Err(GraphError::MissingIdentity);
    }
    for &n in spectrum {
        for d in 2..n {
            if n % d == 0 && !spectrum.contains(&d) {
                return Err(GraphError::NotDivisorClosed { n, d });
            }
        }
    }
    let mut vertices = BTreeSet::new();
    for &n in spectrum {
        vertices.extend(prime_set(&n).expect("positive"));
    }
    let vs: Vec<u64> = vertices.iter().copied().collect();
    let mut edges = BTreeSet::new();
    for (i, &r) in vs.iter().enumerate() {
        for &s in &vs[i + 1..] {
            if spectrum.contains(&(r * s)) {
                edges.insert((r, s));
            }
        }
    }
    let mut adj: BTreeMap<u64, Vec<u64>> = vs.iter().map(|&v| (v, Vec::new())).collect();
    for &(r, s) in &edges {
        adj.get_mut(&r).expect("vertex").push(s);
        adj.get_mut(&s).expect("vertex").push(r);
    }
    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    for &v in &vs {
        if !seen.insert(v) {
            continue;
        }
        let mut comp = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if seen.insert(y) {
                    comp.insert(y);
                    stack.push(y);
                }
            }
        }
        components.push(comp);
    }
    Ok(PrimeGraph { vertices, edges, components, mu: maximal_under_divisibility(spectrum) })
}

impl PrimeGraph {
    /// `s(G)`.
    pub fn s(&self) -> usize {
        self.components.len()
    }

    pub fn is_disconnected(&self) -> bool {
        self.s() >= 2
    }

    pub fn adjacent(&self, r: u64, s: u64) -> bool {
        self.edges.contains(&(r.min(s), r.max(s)))
    }

    /// 1-based index of the component containing `p`.
    pub fn component_index(&self, p: u64) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&p)).map(|i| i + 1)
    }

    /// Data for component `i`, 1-based.
    pub fn component_data(&self, i: usize) -> Result<ComponentData, GraphError> {
        if i == 0 || i > self.s() {
            return Err(GraphError::IndexOutOfRange { index: i, s: self.s() });
        }
        let vertices = self.components[i - 1].clone();
        let mu_i: BTreeSet<u64> = self
            .mu
            .iter()
            .copied()
            .filter(|&a| a > 1 && prime_set(&a).expect("positive").is_subset(&vertices))
            .collect();
        let n_i = if i >= 2 && mu_i.len() == 1 { mu_i.first().copied() } else { None };
        Ok(ComponentData { vertices, mu_i, n_i })
    }

    /// Graphviz description.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph GK {\n");
        for (i, c) in self.components.iter().enumerate() {
            let vs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            writeln!(s, "  subgraph cluster_{} {{ label=\"pi_{}\"; {}; }}", i + 1, i + 1, vs.join("; "))
                .expect("string write");
        }
        for (r, t) in &self.edges {
            writeln!(s, "  {r} -- {t};").expect("string write");
        }
        s.push_str("}\n");
        s
    }
}
