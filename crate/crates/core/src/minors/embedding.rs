use crate::error::{Error, Result};
use crate::graph::{Multigraph, Vertex};
use crate::ppm::{dart_vertex, reverse, Dart};

/// A rotation system: the cyclic order of darts around each vertex.
/// Faces are the orbits of `d -> succ(reverse(d))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<Dart>>,
}

impl PlanarEmbedding {
    /// Checks that each vertex lists exactly its own darts.
    pub fn new(g: &Multigraph, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        if rotation.len() != g.vertex_count() {
            return Err(Error::Structure("rotation system vertex count mismatch".into()));
        }
        let mut seen = vec![false; 2 * g.edge_count()];
        for (v, order) in rotation.iter().enumerate() {
            for &d in order {
                if d >= seen.len() || dart_vertex(g, d) != v {
                    return Err(Error::Structure(format!("dart {d} is not at vertex {v}")));
                }
                if std::mem::replace(&mut seen[d], true) {
                    return Err(Error::Structure(format!("dart {d} listed twice")));
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(Error::Structure(format!("dart {d} missing from the rotation")));
        }
        Ok(PlanarEmbedding { rotation })
    }

    pub(crate) fn new_unchecked(rotation: Vec<Vec<Dart>>) -> Self {
        PlanarEmbedding { rotation }
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    /// Successor of each dart in the rotation at its vertex.
    pub fn successor_table(&self, dart_count: usize) -> Vec<Dart> {
        let mut succ = vec![usize::MAX; dart_count];
        for order in &self.rotation {
            for (i, &d) in order.iter().enumerate() {
                succ[d] = order[(i + 1) % order.len()];
            }
        }
        succ
    }

    pub fn faces(&self, g: &Multigraph) -> Vec<Vec<Dart>> {
        let darts = 2 * g.edge_count();
        let succ = self.successor_table(darts);
        let mut seen = vec![false; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = succ[reverse(d)];
            }
            faces.push(face);
        }
        faces
    }

    /// Euler's formula `v - e + f = 2` on every component with an edge.
    pub fn satisfies_euler(&self, g: &Multigraph) -> bool {
        let (comp, count) = g.components();
        let mut v = vec![0i64; count];
        let mut e = vec![0i64; count];
        let mut f = vec![0i64; count];
        for x in 0..g.vertex_count() {
            v[comp[x]] += 1;
        }
        for &(a, _) in g.edges() {
            e[comp[a]] += 1;
        }
        for face in self.faces(g) {
            f[comp[dart_vertex(g, face[0])]] += 1;
        }
        (0..count).all(|c| e[c] == 0 || v[c] - e[c] + f[c] == 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::k4;

    #[test]
    fn rejects_foreign_darts() {
        let g = k4();
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); 4];
        for d in 0..12 {
            rot[dart_vertex(&g, d)].push(d);
        }
        assert!(PlanarEmbedding::new(&g, rot.clone()).is_ok());
        rot[0].push(1);
        assert!(PlanarEmbedding::new(&g, rot).is_err());
    }
}
