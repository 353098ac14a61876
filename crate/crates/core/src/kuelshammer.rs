//! The Kuelshammer graph `K(G, H)`: vertices are the irreducible characters
//! of `H`, and two distinct vertices are adjacent when their induced
//! characters share an irreducible constituent.
//!
//! Multiplicities of constituents are nonnegative integers, so
//! `⟨α↑, β↑⟩ = Σ_χ ⟨α↑, χ⟩⟨β↑, χ⟩` is nonzero exactly when a common
//! constituent exists. Adjacency is decided from that inner product and never
//! needs the character table of `G`.

use std::collections::VecDeque;
use std::fmt::Write;

use serde::Serialize;

use crate::classfun::{induce, inner_product, ClassFunction};
use crate::error::{Error, Result};
use crate::irreducibles::{character_table, constituent_multiplicity, CharacterTable};
use crate::par;
use crate::permcore::Subgroup;

pub struct KuelshammerGraph {
    table: CharacterTable,
    induced: Vec<ClassFunction>,
    adjacency: Vec<Vec<bool>>,
    distances: Vec<Vec<usize>>,
}

/// Builds `K(G, H)` for `H` given as a subgroup of `G`.
pub fn build_graph(sub: &Subgroup) -> Result<KuelshammerGraph> {
    let table = character_table(sub.group())?;
    let induced = par::map_slice(table.irreducibles(), |alpha| induce(alpha, sub))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let n = induced.len();
    let flags = par::map_range(n * n, |ij| {
        let (i, j) = (ij / n, ij % n);
        i < j
            && !inner_product(&induced[i], &induced[j])
                .expect("same group")
                .is_zero()
    });
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            adjacency[i][j] = flags[i * n + j];
            adjacency[j][i] = flags[i * n + j];
        }
    }
    let distances = par::map_range(n, |s| bfs(&adjacency, s).0);
    if let Some(v) = distances[0].iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected(format!(
            "vertex {v} is unreachable from the trivial character ({n} vertices)"
        )));
    }
    Ok(KuelshammerGraph {
        table,
        induced,
        adjacency,
        distances,
    })
}

/// Distances from `source` and BFS parents; neighbours are scanned in index
/// order, so each vertex's parent is its least-index predecessor.
fn bfs(adjacency: &[Vec<bool>], source: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adjacency.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if adjacency[u][v] && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

/// Outcome of checking the path property from the trivial vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathPropertyReport {
    pub holds: bool,
    /// Number of `(vertex, k)` pairs evaluated.
    pub checked: usize,
    pub violation: Option<PathViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathViolation {
    pub vertex: usize,
    pub path: Vec<usize>,
    pub k: usize,
}

impl std::fmt::Debug for KuelshammerGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KuelshammerGraph")
            .field("vertices", &self.num_vertices())
            .field("edges", &self.edges())
            .finish()
    }
}

impl KuelshammerGraph {
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn distances(&self) -> &[Vec<usize>] {
        &self.distances
    }

    /// `α↑^G` for each vertex `α`.
    pub fn induced(&self) -> &[ClassFunction] {
        &self.induced
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.distances[a][b]
    }

    pub fn diameter(&self) -> usize {
        self.distances
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Vertex whose character equals `f` (a class function on `H`).
    pub fn vertex_of(&self, f: &ClassFunction) -> Option<usize> {
        self.table.position(f)
    }

    /// Shortest path from vertex 0 (the trivial character) to `target`.
    pub fn shortest_path(&self, target: usize) -> Vec<usize> {
        let (_, parent) = bfs(&self.adjacency, 0);
        let mut path = vec![target];
        let mut v = target;
        while v != 0 {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Along the shortest path `1_H = v_0, …, v_m = v` to every vertex,
    /// checks `⟨χ^k, v_k↑⟩ ≠ 0` for `1 ≤ k ≤ m`. `chi` is the permutation
    /// character of `G`.
    pub fn check_path_property(&self, chi: &ClassFunction) -> Result<PathPropertyReport> {
        let diam = self.diameter();
        let mut powers = vec![ClassFunction::trivial(chi.group().clone())];
        for _ in 0..diam {
            powers.push(powers.last().unwrap().product(chi)?);
        }
        let mut checked = 0;
        for v in 0..self.num_vertices() {
            let path = self.shortest_path(v);
            for (k, &u) in path.iter().enumerate().skip(1) {
                checked += 1;
                if inner_product(&powers[k], &self.induced[u])?.is_zero() {
                    return Ok(PathPropertyReport {
                        holds: false,
                        checked,
                        violation: Some(PathViolation { vertex: v, path, k }),
                    });
                }
            }
        }
        Ok(PathPropertyReport {
            holds: true,
            checked,
            violation: None,
        })
    }

    /// Adjacency recomputed from the definition: decompose every induced
    /// character over `Irr(G)` and look for a shared constituent.
    pub fn definitional_adjacency(&self, parent_table: &CharacterTable) -> Result<Vec<Vec<bool>>> {
        let mults = self
            .induced
            .iter()
            .map(|f| constituent_multiplicity(f, parent_table))
            .collect::<Result<Vec<_>>>()?;
        let n = self.num_vertices();
        Ok((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        i != j
                            && mults[i]
                                .iter()
                                .zip(&mults[j])
                                .any(|(&a, &b)| a > 0 && b > 0)
                    })
                    .collect()
            })
            .collect())
    }

    /// Graphviz rendering. The trivial vertex and, when given, the vertex of
    /// the restricted sign character are annotated.
    pub fn to_dot(&self, phi_vertex: Option<usize>) -> String {
        let mut out = String::from("graph K {\n");
        for (i, d) in self.table.degrees().iter().enumerate() {
            let mut label = format!("χ{i} (deg {d})");
            if i == 0 {
                label.push_str("\\n1_H");
            }
            if phi_vertex == Some(i) {
                label.push_str("\\nφ↓H");
            }
            let _ = writeln!(out, "  {i} [label=\"{label}\"];");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::classfun::{permutation_character, restrict};
    use crate::permcore::*;

    #[test]
    fn dihedral_graph_is_an_edge() {
        for n in 3..=8 {
            let a = dihedral_action(n, DEFAULT_CAP).unwrap();
            let g = build_graph(&a.point_stabilizer(0).unwrap()).unwrap();
            assert_eq!(g.num_vertices(), 2);
            assert_eq!(g.edges(), vec![(0, 1)]);
            assert_eq!(g.diameter(), 1);
            assert_eq!(g.distance(0, 1), 1);
            assert_eq!(g.distance(1, 1), 0);
        }
    }

    #[test]
    fn pgl2_7_graph() {
        let a = pgl2_action(7, DEFAULT_CAP).unwrap();
        let h = a.point_stabilizer(0).unwrap();
        let g = build_graph(&h).unwrap();
        assert_eq!(g.num_vertices(), 7);
        assert_eq!(g.diameter(), 2);
        let chi = permutation_character(&a);
        assert!(g.check_path_property(&chi).unwrap().holds);
    }

    #[test]
    fn trivial_group_single_vertex() {
        let a = natural_action(Arc::new(generate_group(1, vec![], DEFAULT_CAP).unwrap()));
        let g = build_graph(&a.point_stabilizer(0).unwrap()).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.diameter(), 0);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn whole_group_as_subgroup_is_disconnected() {
        let grp = Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap());
        let err = build_graph(&Subgroup::whole(grp)).unwrap_err();
        assert!(matches!(err, Error::Disconnected(_)));
    }

    #[test]
    fn sym3_natural_has_two_vertices() {
        let a = natural_action(Arc::new(symmetric_group(3, DEFAULT_CAP).unwrap()));
        let h = a.point_stabilizer(0).unwrap();
        let g = build_graph(&h).unwrap();
        assert_eq!(g.num_vertices(), 2);
        let sgn = crate::classfun::sign_character(a.group().clone());
        let v = g.vertex_of(&restrict(&sgn, &h).unwrap()).unwrap();
        assert_eq!(v, 1);
        assert_eq!(g.shortest_path(1), vec![0, 1]);
    }

    #[test]
    fn dot_output() {
        let a = dihedral_action(5, DEFAULT_CAP).unwrap();
        let g = build_graph(&a.point_stabilizer(0).unwrap()).unwrap();
        let dot = g.to_dot(Some(1));
        assert!(dot.starts_with("graph K {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("φ↓H"));
    }
}
