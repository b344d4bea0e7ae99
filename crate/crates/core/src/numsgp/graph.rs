use std::fmt::Write;

use super::{Factorization, NumericalSemigroup};
use crate::dsu::UnionFind;

/// `∇_x`: vertices `Z(x)`, an edge wherever two factorizations share an atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationGraph {
    pub element: u64,
    pub vertices: Vec<Factorization>,
    /// Index pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

impl FactorizationGraph {
    /// Builds the graph by testing every pair of vertices.
    pub fn new(element: u64, vertices: Vec<Factorization>) -> Self {
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].meets(&vertices[j]) {
                    edges.push((i, j));
                }
            }
        }
        Self {
            element,
            vertices,
            edges,
        }
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        uf.set_count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Graphviz text; graph name `nabla_<x>`, vertices labelled by tuple.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph nabla_{} {{", self.element).unwrap();
        for v in &self.vertices {
            writeln!(out, "  \"{v}\";").unwrap();
        }
        for &(i, j) in &self.edges {
            writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[i], self.vertices[j]).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl NumericalSemigroup {
    pub fn factorization_graph(&self, x: u64) -> FactorizationGraph {
        FactorizationGraph::new(x, self.factorizations(x))
    }
}

/// Component count of `∇_x` computed through atom supports: two
/// factorizations are adjacent iff they share an atom, so components of the
/// factorization graph are components of the factorization/atom incidence
/// graph. Linear in `|Z(x)| * n` instead of quadratic in `|Z(x)|`.
pub(crate) fn support_components(atom_count: usize, factorizations: &[Vec<u64>]) -> usize {
    let mut uf = UnionFind::new(atom_count + factorizations.len());
    for (k, z) in factorizations.iter().enumerate() {
        for (i, &c) in z.iter().enumerate() {
            if c > 0 {
                uf.union(atom_count + k, i);
            }
        }
    }
    let mut roots: Vec<usize> = (0..factorizations.len())
        .map(|k| uf.find(atom_count + k))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}
