use serde::{Deserialize, Serialize};

use super::ring::{AmbientRing, Edge, Symmetry};
use super::GadgetError;

/// A closed walk `v0 -> v1 -> ... -> v(L-1) -> v0` on the ring with distinct
/// vertices. `steps[i]` is the signed length of the edge leaving `vertices[i]`
/// (positive is clockwise); the last step closes back to `v0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    ring: AmbientRing,
    vertices: Vec<u32>,
    steps: Vec<i64>,
}

impl Walk {
    pub fn from_steps(ring: AmbientRing, start: i64, steps: &[i64]) -> Result<Self, GadgetError> {
        if steps.len() < 3 {
            return Err(GadgetError::TooShort(steps.len()));
        }
        let total: i64 = steps.iter().sum();
        if total.rem_euclid(ring.modulus() as i64) != 0 {
            return Err(GadgetError::NotClosed {
                residue: ring.vertex(total),
            });
        }
        let mut seen = vec![false; ring.modulus() as usize];
        let mut vertices = Vec::with_capacity(steps.len());
        let mut pos = start;
        for (i, &s) in steps.iter().enumerate() {
            let v = ring.vertex(pos);
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(GadgetError::RepeatedVertex {
                    vertex: v,
                    index: i,
                });
            }
            vertices.push(v);
            pos += s;
        }
        Ok(Self {
            ring,
            vertices,
            steps: steps.to_vec(),
        })
    }

    /// Walk through the given vertices; each step is taken as the signed
    /// representative of the difference in `(-M/2, M/2]`.
    pub fn from_vertices(ring: AmbientRing, vertices: &[i64]) -> Result<Self, GadgetError> {
        let m = ring.modulus() as i64;
        let steps: Vec<i64> = (0..vertices.len())
            .map(|i| {
                let d = (vertices[(i + 1) % vertices.len()] - vertices[i]).rem_euclid(m);
                if 2 * d > m {
                    d - m
                } else {
                    d
                }
            })
            .collect();
        let start = vertices.first().copied().unwrap_or(0);
        Self::from_steps(ring, start, &steps)
    }

    pub fn ring(&self) -> AmbientRing {
        self.ring
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn edge(&self, index: usize) -> Edge {
        let u = self.vertices[index];
        let v = self.vertices[(index + 1) % self.vertices.len()];
        self.ring.edge(u as i64, v as i64)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    /// The same cycle relabeled by `sym`.
    pub fn map(&self, sym: Symmetry) -> Self {
        let sign = if sym.reflect { -1 } else { 1 };
        let steps: Vec<i64> = self.steps.iter().map(|s| sign * s).collect();
        let start = sym.map_vertex(self.ring, self.vertices[0] as i64);
        Self::from_steps(self.ring, start as i64, &steps).expect("symmetries preserve cycles")
    }

    pub fn rotate(&self, shift: i64) -> Self {
        self.map(Symmetry::rotation(shift))
    }

    /// Sorted edge list, for comparing cycles regardless of start and direction.
    pub fn edge_set(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self.edges().collect();
        edges.sort_unstable();
        edges
    }
}
