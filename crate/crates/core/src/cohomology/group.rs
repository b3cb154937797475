use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use super::reduce::{Reduction, SparseVec};
use crate::complex::{Cochain, SimplicialComplex, SubcomplexPair};
use crate::error::{Error, Result};
use crate::linalg::{AbelianGroup, GroupElement};
use crate::scalar::{EuclideanRing, Integer};

type Cache = HashMap<(TypeId, usize), Weak<dyn Any + Send + Sync>>;

/// A complex or pair whose cohomology is being computed. Groups are cached
/// per degree and ring for as long as someone holds them.
pub struct Space {
    pair: SubcomplexPair,
    cache: Mutex<Cache>,
    absolute: OnceLock<Arc<Space>>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space").field("pair", &self.pair).finish()
    }
}

impl Space {
    pub fn new(pair: SubcomplexPair) -> Arc<Self> {
        Arc::new(Space { pair, cache: Mutex::new(HashMap::new()), absolute: OnceLock::new() })
    }

    pub fn absolute(k: SimplicialComplex) -> Arc<Self> {
        Self::new(SubcomplexPair::absolute(k))
    }

    pub fn pair(&self) -> &SubcomplexPair {
        &self.pair
    }

    pub fn total(&self) -> &SimplicialComplex {
        self.pair.total()
    }

    pub fn sub(&self) -> &SimplicialComplex {
        self.pair.sub()
    }

    pub fn is_absolute(&self) -> bool {
        self.pair.is_absolute()
    }

    /// The total complex as an absolute space (itself when already absolute).
    pub fn absolute_space(self: &Arc<Self>) -> Arc<Space> {
        if self.is_absolute() {
            return self.clone();
        }
        self.absolute.get_or_init(|| Space::absolute(self.total().clone())).clone()
    }

    pub fn same_as(&self, other: &Space) -> bool {
        std::ptr::eq(self, other) || self.pair == other.pair
    }

    /// `H^k` of this space with coefficients in `R`.
    pub fn cohomology<R: EuclideanRing>(self: &Arc<Self>, k: usize) -> Arc<CohomologyGroup<R>> {
        let key = (TypeId::of::<R>(), k);
        if let Some(g) = self.lookup::<R>(key) {
            return g;
        }
        let g = Arc::new(CohomologyGroup::compute(self.clone(), k));
        let mut cache = self.cache.lock().expect("cache lock poisoned");
        // another thread may have won the race; keep the first
        if let Some(existing) = cache.get(&key).and_then(Weak::upgrade) {
            if let Ok(existing) = existing.downcast::<CohomologyGroup<R>>() {
                return existing;
            }
        }
        let erased: Arc<dyn Any + Send + Sync> = g.clone();
        cache.insert(key, Arc::downgrade(&erased));
        g
    }

    fn lookup<R: EuclideanRing>(&self, key: (TypeId, usize)) -> Option<Arc<CohomologyGroup<R>>> {
        let cache = self.cache.lock().expect("cache lock poisoned");
        cache.get(&key)?.upgrade()?.downcast::<CohomologyGroup<R>>().ok()
    }
}

/// `H^k(X, N; R)` with coordinates and representative cocycles.
pub struct CohomologyGroup<R> {
    space: Arc<Space>,
    degree: usize,
    group: Arc<AbelianGroup>,
    /// Index of each relative basis element among the `k`-simplices of `X`.
    relative_basis: Vec<usize>,
    reduction: Reduction<R>,
    basis: Vec<Cochain<R>>,
}

impl<R> fmt::Debug for CohomologyGroup<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}(..) = {}", self.degree, self.group)
    }
}

/// Relative basis of `C^k(X, N)`: indices of `k`-simplices of `X` not in `N`,
/// and the inverse map.
fn relative_basis(pair: &SubcomplexPair, k: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut basis = Vec::new();
    let mut pos = Vec::with_capacity(pair.total().count(k));
    for (i, s) in pair.total().simplices(k).iter().enumerate() {
        if pair.sub().contains(s) {
            pos.push(None);
        } else {
            pos.push(Some(basis.len()));
            basis.push(i);
        }
    }
    (basis, pos)
}

impl<R: EuclideanRing> CohomologyGroup<R> {
    fn compute(space: Arc<Space>, k: usize) -> Self {
        let pair = space.pair();
        let x = pair.total();
        let (basis_k, pos_k) = relative_basis(pair, k);
        let n = basis_k.len();

        let relative_lines = |lines: Vec<Vec<(usize, i64)>>, keep: &[usize], pos: &[Option<usize>]| {
            keep.iter()
                .map(|&j| {
                    let mut v: SparseVec<R> =
                        lines[j].iter().filter_map(|&(i, s)| pos[i].map(|p| (p, R::from_i64(s)))).collect();
                    v.sort_by_key(|e| e.0);
                    v
                })
                .collect::<Vec<_>>()
        };

        // columns of δ^{k-1}: cofaces of each (k-1)-simplex
        let a_cols = if k == 0 {
            Vec::new()
        } else {
            let (basis_prev, _) = relative_basis(pair, k - 1);
            relative_lines(x.coboundary_columns(k - 1), &basis_prev, &pos_k)
        };
        // rows of δ^k: faces of each (k+1)-simplex
        let (basis_next, _) = relative_basis(pair, k + 1);
        let b_rows = relative_lines(x.boundary_columns(k + 1), &basis_next, &pos_k);

        let reduction = Reduction::new(n, a_cols, b_rows);
        let group = reduction.cokernel().group().clone();
        let mut g = CohomologyGroup { space, degree: k, group, relative_basis: basis_k, reduction, basis: Vec::new() };
        g.basis = g.group.generators().iter().map(|e| g.cochain_of(e)).collect();
        g
    }

    fn cochain_of(&self, x: &GroupElement) -> Cochain<R> {
        let z = self.reduction.representative(x);
        let mut values = vec![R::zero(); self.space.total().count(self.degree)];
        for (&i, v) in self.relative_basis.iter().zip(z) {
            values[i] = v;
        }
        Cochain::new(self.degree, values)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn ring_name(&self) -> &'static str {
        R::NAME
    }

    /// Representative cocycles of the group generators.
    pub fn basis_cocycles(&self) -> &[Cochain<R>] {
        &self.basis
    }

    pub fn zero(self: &Arc<Self>) -> CohomologyClass<R> {
        CohomologyClass { parent: self.clone(), coords: self.group.zero() }
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> CohomologyClass<R> {
        CohomologyClass { parent: self.clone(), coords: self.group.generator(i) }
    }

    pub fn generators(self: &Arc<Self>) -> Vec<CohomologyClass<R>> {
        (0..self.group.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn class(self: &Arc<Self>, coords: &GroupElement) -> Result<CohomologyClass<R>> {
        Ok(CohomologyClass { parent: self.clone(), coords: coords.rebase(&self.group)? })
    }

    pub fn from_coords(self: &Arc<Self>, coords: &[Integer]) -> Result<CohomologyClass<R>> {
        if coords.len() != self.group.num_generators() {
            return Err(Error::Mismatch(format!(
                "expected {} coordinates, got {}",
                self.group.num_generators(),
                coords.len()
            )));
        }
        Ok(CohomologyClass { parent: self.clone(), coords: self.group.from_coords(coords) })
    }

    /// Class of a cocycle; errors if `z` is not a cocycle of the pair.
    pub fn class_of(self: &Arc<Self>, z: &Cochain<R>) -> Result<CohomologyClass<R>> {
        let x = self.space.total();
        if z.degree() != self.degree || z.values().len() != x.count(self.degree) {
            return Err(Error::Mismatch(format!("expected a {}-cochain", self.degree)));
        }
        if !z.vanishes_on(x, self.space.sub()) {
            return Err(Error::NotCocycle("cochain does not vanish on the subcomplex".into()));
        }
        if !z.coboundary(x).is_zero() {
            return Err(Error::NotCocycle("coboundary is nonzero".into()));
        }
        Ok(self.class_of_unchecked(z))
    }

    pub(crate) fn class_of_unchecked(self: &Arc<Self>, z: &Cochain<R>) -> CohomologyClass<R> {
        let rel: Vec<R> = self.relative_basis.iter().map(|&i| z.values()[i].clone()).collect();
        CohomologyClass { parent: self.clone(), coords: self.reduction.coordinates(&rel) }
    }

    /// A representative cocycle: the matching combination of basis cocycles,
    /// reduced through the coordinate section so torsion coordinates are
    /// canonical.
    pub fn representative(&self, x: &CohomologyClass<R>) -> Cochain<R> {
        self.cochain_of(&x.coords)
    }
}

/// An element of a cohomology group.
#[derive(Clone)]
pub struct CohomologyClass<R> {
    parent: Arc<CohomologyGroup<R>>,
    coords: GroupElement,
}

impl<R: EuclideanRing> CohomologyClass<R> {
    pub fn parent(&self) -> &Arc<CohomologyGroup<R>> {
        &self.parent
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.parent.space
    }

    pub fn degree(&self) -> usize {
        self.parent.degree
    }

    pub fn coords(&self) -> &GroupElement {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn representative(&self) -> Cochain<R> {
        self.parent.representative(self)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        CohomologyClass { parent: self.parent.clone(), coords: self.coords.scale(k) }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&Integer::from(k))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() || !self.space().same_as(other.space()) {
            return Err(Error::Mismatch("classes live in different cohomology groups".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(CohomologyClass {
            parent: self.parent.clone(),
            coords: &self.coords + &other.coords.rebase(&self.parent.group)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }
}

impl<R: EuclideanRing> PartialEq for CohomologyClass<R> {
    fn eq(&self, other: &Self) -> bool {
        self.check_same(other).is_ok() && self.coords.coords() == other.coords.coords()
    }
}

impl<R: EuclideanRing> Eq for CohomologyClass<R> {}

impl<R: EuclideanRing> fmt::Debug for CohomologyClass<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}[{}]{}", self.degree(), R::NAME, self.coords)
    }
}

impl<R: EuclideanRing> std::ops::Add for &CohomologyClass<R> {
    type Output = CohomologyClass<R>;
    fn add(self, rhs: &CohomologyClass<R>) -> CohomologyClass<R> {
        self.try_add(rhs).expect("adding classes from different groups")
    }
}

impl<R: EuclideanRing> std::ops::Sub for &CohomologyClass<R> {
    type Output = CohomologyClass<R>;
    fn sub(self, rhs: &CohomologyClass<R>) -> CohomologyClass<R> {
        self.try_sub(rhs).expect("subtracting classes from different groups")
    }
}

impl<R: EuclideanRing> std::ops::Neg for &CohomologyClass<R> {
    type Output = CohomologyClass<R>;
    fn neg(self) -> CohomologyClass<R> {
        CohomologyClass { parent: self.parent.clone(), coords: -&self.coords }
    }
}
