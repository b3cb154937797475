use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A simplex as its strictly increasing vertex list. Increasing order is the
/// positive orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Canonicalizes an arbitrary vertex list; repeated vertices are an error.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex { vertex: w[0] });
        }
        Ok(Simplex(v))
    }

    /// Builds a simplex from a vertex set, collapsing repeats (the image of a
    /// simplex under a vertex map).
    pub fn from_vertex_set(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Dimension; panics on the empty simplex, which never occurs in a complex.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The `i`-th codimension-one face (vertex `i` removed).
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Codimension-one faces with their boundary signs `(-1)^i`.
    pub fn boundary(&self) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        (0..self.0.len()).filter(|_| self.0.len() > 1).map(move |i| (self.face(i), if i % 2 == 0 { 1 } else { -1 }))
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1u32 << n) {
            out.push(Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()));
        }
        out
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Front face `[v_0 .. v_p]`.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex(self.0[..=p].to_vec())
    }

    /// Back face `[v_p .. v_n]`.
    pub fn back(&self, p: usize) -> Simplex {
        Simplex(self.0[p..].to_vec())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
