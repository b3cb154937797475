use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::chain::Chain;
use super::simplex::{Simplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Integer;

/// Finite abstract simplicial complex, closed under faces. The simplices of
/// each dimension are kept in lexicographic order, which fixes the bases of
/// all chain and cochain groups.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(f = {:?})", self.f_vector())
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { by_dim: Vec::new(), index: Vec::new() }
    }

    /// Face closure of the given simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            for f in s.all_faces() {
                let d = f.dim();
                if sets.len() <= d {
                    sets.resize_with(d + 1, BTreeSet::new);
                }
                sets[d].insert(f);
            }
        }
        Self::from_sets(sets)
    }

    fn from_sets(sets: Vec<BTreeSet<Simplex>>) -> Self {
        let by_dim: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = by_dim.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        SimplicialComplex { by_dim, index }
    }

    pub fn from_facets(facets: &[Vec<Vertex>]) -> Result<Self> {
        let s: Vec<Simplex> = facets.iter().map(|f| Simplex::new(f.iter().copied())).collect::<Result<_>>()?;
        Ok(Self::from_simplices(s))
    }

    /// Boundary of the standard `n`-simplex on vertices `0..=n`.
    pub fn sphere_boundary(n: usize) -> Self {
        let full = Simplex::from_sorted((0..=n as Vertex).collect());
        Self::from_simplices((0..=n).map(|i| full.face(i)))
    }

    pub fn full_simplex(n: usize) -> Self {
        Self::from_simplices([Simplex::from_sorted((0..=n as Vertex).collect())])
    }

    /// Parses the `.scx` format: `simplex v0 v1 ... vk` per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut simplices = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let kw = tokens.next().unwrap_or_default();
            if kw != "simplex" {
                return Err(Error::Parse { line: no + 1, message: format!("expected 'simplex', found '{kw}'") });
            }
            let verts: Vec<Vertex> = tokens
                .map(|t| {
                    t.parse::<Vertex>()
                        .map_err(|_| Error::Parse { line: no + 1, message: format!("invalid vertex '{t}'") })
                })
                .collect::<Result<_>>()?;
            if verts.is_empty() {
                return Err(Error::Parse { line: no + 1, message: "simplex without vertices".into() });
            }
            simplices.push(Simplex::new(verts)?);
        }
        Ok(Self::from_simplices(simplices))
    }

    /// Writes the maximal simplices in `.scx` format.
    pub fn to_scx(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            let v: Vec<String> = f.vertices().iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "simplex {}", v.join(" "));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Maximal simplex dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplices(0).iter().map(|s| s.vertices()[0])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn total_simplices(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Maximal simplices, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.by_dim.iter().map(|l| vec![false; l.len()]).collect();
        for k in 1..self.by_dim.len() {
            for s in &self.by_dim[k] {
                for (f, _) in s.boundary() {
                    covered[k - 1][self.index[k - 1][&f]] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, l) in self.by_dim.iter().enumerate() {
            for (i, s) in l.iter().enumerate() {
                if !covered[k][i] {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Every simplex of `self` lies in `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        Self::from_sets(self.by_dim.iter().take(k + 1).map(|l| l.iter().cloned().collect()).collect())
    }

    /// Matrix of the boundary map `C_k -> C_{k-1}` in the canonical bases.
    pub fn boundary_matrix(&self, k: usize) -> Result<Matrix<Integer>> {
        let max = self.dim().unwrap_or(0);
        if k == 0 || k > max {
            return Err(Error::DegreeOutOfRange { degree: k, max });
        }
        let mut m = Matrix::zeros(self.count(k - 1), self.count(k));
        for (j, col) in self.boundary_columns(k).into_iter().enumerate() {
            for (i, s) in col {
                m[(i, j)] = BigInt::from(s);
            }
        }
        Ok(m)
    }

    /// Sparse columns of the boundary `C_k -> C_{k-1}` as `(face index, sign)`.
    pub fn boundary_columns(&self, k: usize) -> Vec<Vec<(usize, i64)>> {
        if k == 0 {
            return vec![Vec::new(); self.count(0)];
        }
        self.simplices(k)
            .iter()
            .map(|s| s.boundary().map(|(f, sign)| (self.index[k - 1][&f], sign)).collect())
            .collect()
    }

    /// Sparse columns of the coboundary `C^k -> C^{k+1}`: for each k-simplex,
    /// its codimension-one cofaces with incidence signs, in index order.
    pub fn coboundary_columns(&self, k: usize) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.count(k)];
        for (j, col) in self.boundary_columns(k + 1).into_iter().enumerate() {
            for (i, s) in col {
                cols[i].push((j, s));
            }
        }
        cols
    }

    /// Smallest subcomplex containing every simplex that meets `sub`.
    pub fn closed_star(&self, sub: &SimplicialComplex) -> Result<SimplicialComplex> {
        if !sub.is_subcomplex_of(self) {
            return Err(Error::NotSubcomplex("closed star of a non-subcomplex".into()));
        }
        let verts: BTreeSet<Vertex> = sub.vertices().collect();
        let touching = self.facets().into_iter().filter(|f| f.vertices().iter().any(|v| verts.contains(v)));
        Ok(Self::from_simplices(touching))
    }

    /// Image of the complex under a vertex relabeling (must be injective).
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<SimplicialComplex> {
        let facets: Vec<Simplex> =
            self.facets().iter().map(|f| Simplex::new(f.vertices().iter().map(|&v| map(v)))).collect::<Result<_>>()?;
        Ok(Self::from_simplices(facets))
    }

    /// Product triangulation: each product of simplices `σ × τ` is cut into
    /// the staircase simplices, i.e. monotone lattice paths through the
    /// vertex grid. Vertex `(a, b)` is numbered `a * stride + b` with
    /// `stride = max vertex of other + 1`, so integer order on the product
    /// refines both factor orders.
    pub fn product(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let stride = other.vertices().max().map_or(1, |m| m as u64 + 1);
        let mut out = Vec::new();
        for s in self.facets() {
            for t in other.facets() {
                let (p, q) = (s.dim(), t.dim());
                // each staircase: choose which of the p+q steps move in the first factor
                for steps in combinations(p + q, p) {
                    let (mut i, mut j) = (0usize, 0usize);
                    let mut verts = Vec::with_capacity(p + q + 1);
                    let mut push = |i: usize, j: usize| -> Result<()> {
                        let id = s.vertices()[i] as u64 * stride + t.vertices()[j] as u64;
                        let id = Vertex::try_from(id)
                            .map_err(|_| Error::Mismatch("product vertex labels overflow 32 bits".into()))?;
                        verts.push(id);
                        Ok(())
                    };
                    push(0, 0)?;
                    for step in 0..p + q {
                        if steps.contains(&step) {
                            i += 1;
                        } else {
                            j += 1;
                        }
                        push(i, j)?;
                    }
                    out.push(Simplex::new(verts)?);
                }
            }
        }
        Ok(Self::from_simplices(out))
    }

    /// Greedy elementary collapses: repeatedly remove a free face together
    /// with its unique coface, taking the highest-dimensional coface first
    /// and breaking ties lexicographically, until the dimension is at most
    /// `d` or no free face is left.
    pub fn collapses_to_dim(&self, d: usize) -> CollapseCertificate {
        let mut sets: Vec<BTreeSet<Simplex>> = self.by_dim.iter().map(|l| l.iter().cloned().collect()).collect();
        let mut cofaces: HashMap<Simplex, usize> = HashMap::new();
        for s in self.iter() {
            cofaces.entry(s.clone()).or_insert(0);
            for (f, _) in s.boundary() {
                *cofaces.entry(f).or_insert(0) += 1;
            }
        }
        let mut log = Vec::new();
        loop {
            while sets.last().is_some_and(BTreeSet::is_empty) {
                sets.pop();
            }
            let top = sets.len().checked_sub(1);
            if top.is_none_or(|t| t <= d) {
                return CollapseCertificate { collapsed: true, log, remaining_dim: top };
            }
            let mut pick = None;
            'outer: for k in (1..sets.len()).rev() {
                for t in &sets[k] {
                    for i in (0..t.vertices().len()).rev() {
                        let f = t.face(i);
                        if cofaces[&f] == 1 {
                            pick = Some((f, t.clone()));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((face, coface)) = pick else {
                return CollapseCertificate { collapsed: false, log, remaining_dim: top };
            };
            for s in [&coface, &face] {
                sets[s.dim()].remove(s);
                cofaces.remove(s);
                for (f, _) in s.boundary() {
                    if let Some(c) = cofaces.get_mut(&f) {
                        *c -= 1;
                    }
                }
            }
            log.push((face, coface));
        }
    }

    /// Coherent ±1 orientation of the top simplices with zero boundary. The
    /// lexicographically smallest top simplex of each connected component
    /// carries +1.
    pub fn fundamental_cycle(&self, n: usize) -> Result<Chain> {
        if self.dim() != Some(n) {
            return Err(Error::NotPure(n));
        }
        let top = self.simplices(n);
        let mut in_top = vec![false; self.count(n.saturating_sub(1))];
        let mut incident: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.count(n.saturating_sub(1))];
        if n == 0 {
            return Err(Error::NotClosed("dimension 0".into()));
        }
        for (j, col) in self.boundary_columns(n).into_iter().enumerate() {
            for (i, s) in col {
                incident[i].push((j, s));
                in_top[i] = true;
            }
        }
        // purity below the top dimension
        for k in 0..n.saturating_sub(1) {
            let mut covered = vec![false; self.count(k)];
            for col in self.boundary_columns(k + 1) {
                for (i, _) in col {
                    covered[i] = true;
                }
            }
            if covered.iter().any(|c| !c) {
                return Err(Error::NotPure(n));
            }
        }
        if in_top.iter().any(|c| !c) {
            return Err(Error::NotPure(n));
        }
        if let Some((i, inc)) = incident.iter().enumerate().find(|(_, inc)| inc.len() != 2) {
            return Err(Error::NotClosed(format!(
                "face {} lies in {} top simplices",
                self.simplices(n - 1)[i],
                inc.len()
            )));
        }
        let faces_of: Vec<Vec<(usize, i64)>> = self.boundary_columns(n);
        let mut sign = vec![0i64; top.len()];
        for start in 0..top.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(s) = queue.pop_front() {
                for &(f, fs) in &faces_of[s] {
                    for &(t, ts) in &incident[f] {
                        if t == s {
                            continue;
                        }
                        let want = -sign[s] * fs * ts;
                        if sign[t] == 0 {
                            sign[t] = want;
                            queue.push_back(t);
                        } else if sign[t] != want {
                            return Err(Error::NotOrientable);
                        }
                    }
                }
            }
        }
        Ok(Chain::new(n, sign.into_iter().map(BigInt::from).collect()))
    }
}

/// Outcome of the greedy collapser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub collapsed: bool,
    /// Elementary collapses `(free face, coface)` in order.
    pub log: Vec<(Simplex, Simplex)>,
    pub remaining_dim: Option<usize>,
}

/// All `k`-subsets of `0..n` (as sorted index lists).
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
