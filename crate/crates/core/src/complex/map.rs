use std::collections::BTreeMap;
use std::sync::Arc;

use super::chain::permutation_is_odd;
use super::complex::SimplicialComplex;
use super::simplex::{Simplex, Vertex};
use crate::error::{Error, Result};

/// `(X, N)` with `N` a subcomplex of `X`. An absolute space is the pair with
/// empty `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexPair {
    total: SimplicialComplex,
    sub: SimplicialComplex,
}

impl SubcomplexPair {
    pub fn new(total: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        if let Some(s) = sub.iter().find(|s| !total.contains(s)) {
            return Err(Error::NotSubcomplex(format!("{s} is not a simplex of the total complex")));
        }
        Ok(SubcomplexPair { total, sub })
    }

    pub fn absolute(total: SimplicialComplex) -> Self {
        SubcomplexPair { total, sub: SimplicialComplex::empty() }
    }

    pub fn total(&self) -> &SimplicialComplex {
        &self.total
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    pub fn is_absolute(&self) -> bool {
        self.sub.is_empty()
    }
}

/// A vertex map whose image of every simplex is a simplex of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: BTreeMap<Vertex, Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        vertex_map: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        if let Some(v) = source.vertices().find(|v| !vertex_map.contains_key(v)) {
            return Err(Error::NotSimplicial(format!("vertex {v} has no image")));
        }
        let map = SimplicialMap { source, target, vertex_map };
        for s in map.source.facets() {
            let img = map.image(&s);
            if !map.target.contains(&img) {
                return Err(Error::NotSimplicial(format!("image {img} of {s} is not a simplex of the target")));
            }
        }
        Ok(map)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let vertex_map = k.vertices().map(|v| (v, v)).collect();
        SimplicialMap { source: k.clone(), target: k, vertex_map }
    }

    pub fn constant(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, v: Vertex) -> Result<Self> {
        let vertex_map = source.vertices().map(|u| (u, v)).collect();
        Self::new(source, target, vertex_map)
    }

    /// Parses `.smap` lines `map v w`.
    pub fn parse_vertex_map(text: &str) -> Result<BTreeMap<Vertex, Vertex>> {
        let mut out = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: no + 1, message };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "map" {
                return Err(err("expected 'map v w'".into()));
            }
            let v: Vertex = tokens[1].parse().map_err(|_| err(format!("invalid vertex '{}'", tokens[1])))?;
            let w: Vertex = tokens[2].parse().map_err(|_| err(format!("invalid vertex '{}'", tokens[2])))?;
            if out.insert(v, w).is_some_and(|old| old != w) {
                return Err(err(format!("vertex {v} mapped twice")));
            }
        }
        Ok(out)
    }

    pub fn to_smap(&self) -> String {
        self.vertex_map.iter().map(|(v, w)| format!("map {v} {w}\n")).collect()
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.vertex_map
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[&v]
    }

    /// Image vertex set of a simplex.
    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::from_vertex_set(s.vertices().iter().map(|&v| self.apply(v)))
    }

    /// Image with orientation: `None` if the simplex degenerates, otherwise
    /// the image simplex and the sign of the vertex permutation.
    pub fn oriented_image(&self, s: &Simplex) -> Option<(Simplex, i64)> {
        let verts: Vec<Vertex> = s.vertices().iter().map(|&v| self.apply(v)).collect();
        let img = Simplex::from_vertex_set(verts.iter().copied());
        if img.dim() != s.dim() {
            return None;
        }
        Some((img, if permutation_is_odd(&verts) { -1 } else { 1 }))
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *after.source {
            return Err(Error::Mismatch("composing maps with mismatched complexes".into()));
        }
        let vertex_map = self.vertex_map.iter().map(|(&v, &w)| (v, after.apply(w))).collect();
        Ok(SimplicialMap { source: self.source.clone(), target: after.target.clone(), vertex_map })
    }

    /// Whether `self` maps `sub` into `target_sub`.
    pub fn maps_into(&self, sub: &SimplicialComplex, target_sub: &SimplicialComplex) -> bool {
        sub.iter().all(|s| target_sub.contains(&self.image(s)))
    }

    /// Whether the restriction to `sub` is a simplicial isomorphism onto
    /// `target_sub`: injective on vertices, and the image of `sub` is exactly
    /// `target_sub`.
    pub fn restricts_to_isomorphism(&self, sub: &SimplicialComplex, target_sub: &SimplicialComplex) -> bool {
        let mut seen = BTreeMap::new();
        for v in sub.vertices() {
            if seen.insert(self.apply(v), v).is_some() {
                return false;
            }
        }
        let image = SimplicialComplex::from_simplices(sub.facets().iter().map(|s| self.image(s)));
        image == *target_sub
    }
}
