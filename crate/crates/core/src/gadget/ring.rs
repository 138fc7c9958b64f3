use std::fmt;

use serde::{Deserialize, Serialize};

use super::colorset::ColorSet;

/// The ambient rainbow cycle `0 -> 1 -> ... -> M-1 -> 0` whose perimeter
/// edge `(i, i+1)` carries color `i`. Vertices and colors are residues mod `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AmbientRing {
    modulus: u32,
}

impl AmbientRing {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 3, "ambient cycle needs at least 3 vertices");
        Self { modulus }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn vertex(&self, v: i64) -> u32 {
        v.rem_euclid(self.modulus as i64) as u32
    }

    pub fn edge(&self, u: i64, v: i64) -> Edge {
        Edge::new(*self, u, v)
    }

    pub fn full(&self) -> ColorSet {
        ColorSet::full(self.modulus)
    }

    pub fn span(&self, lo: i64, hi: i64) -> ColorSet {
        ColorSet::span(self.modulus, lo, hi)
    }

    pub fn arc(&self, start: i64, width: i64) -> ColorSet {
        ColorSet::arc(self.modulus, start, width)
    }
}

/// An edge of the complete graph on the ring, in canonical form
/// `(base, base + len)` with `1 <= len <= M/2`. When `len == M/2` the
/// smaller base wins. `len == 1` is a perimeter edge; anything longer is a
/// chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub base: u32,
    pub len: u32,
}

impl Edge {
    pub fn new(ring: AmbientRing, u: i64, v: i64) -> Self {
        let m = ring.modulus;
        let (u, v) = (ring.vertex(u), ring.vertex(v));
        assert_ne!(u, v, "an edge needs two distinct vertices");
        let forward = (v + m - u) % m;
        let backward = m - forward;
        if forward < backward || (forward == backward && u < v) {
            Edge {
                base: u,
                len: forward,
            }
        } else {
            Edge {
                base: v,
                len: backward,
            }
        }
    }

    pub fn is_perimeter(&self) -> bool {
        self.len == 1
    }

    pub fn endpoints(&self, ring: AmbientRing) -> (u32, u32) {
        (self.base, ring.vertex(self.base as i64 + self.len as i64))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}+{})", self.base, self.base, self.len)
    }
}

/// A dihedral relabeling `v -> ±v + rotation` of the ring.
///
/// Rotation sends perimeter color `c` to `c + rotation`; the reflection
/// `v -> rotation - v` sends the perimeter edge `(c, c+1)` to
/// `(rotation - c - 1, rotation - c)`, i.e. color `c` to `rotation - 1 - c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub rotation: i64,
    pub reflect: bool,
}

impl Symmetry {
    pub fn rotation(rotation: i64) -> Self {
        Self {
            rotation,
            reflect: false,
        }
    }

    /// Reflection `v -> 2*axis - v`, fixing vertex `axis`.
    pub fn reflection_through(axis: i64) -> Self {
        Self {
            rotation: 2 * axis,
            reflect: true,
        }
    }

    pub fn map_vertex(&self, ring: AmbientRing, v: i64) -> u32 {
        let image = if self.reflect { -v } else { v };
        ring.vertex(image + self.rotation)
    }

    pub fn map_edge(&self, ring: AmbientRing, edge: Edge) -> Edge {
        let (u, v) = edge.endpoints(ring);
        ring.edge(
            self.map_vertex(ring, u as i64) as i64,
            self.map_vertex(ring, v as i64) as i64,
        )
    }

    pub fn map_colors(&self, set: &ColorSet) -> ColorSet {
        if self.reflect {
            set.reflect(self.rotation - 1)
        } else {
            set.rotate(self.rotation)
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflect {
            *self
        } else {
            Self::rotation(-self.rotation)
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        // self(other(v)) = s·(o·v + ro) + rs
        let sign = if self.reflect { -1 } else { 1 };
        Self {
            rotation: sign * other.rotation + self.rotation,
            reflect: self.reflect != other.reflect,
        }
    }
}
