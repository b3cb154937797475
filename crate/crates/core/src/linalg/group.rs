//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::matrix::Matrix;
use super::smith::{smith_normal_form, SmithDecomposition};
use super::solve::solve_with_smith;
use crate::error::{Error, Result};
use crate::scalar::{canonical_residue, EuclideanRing, Integer, Ring};

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with `2 <= d_1 | d_2 | ... | d_t`.
///
/// Generators are ordered free first, then torsion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<Integer>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<Integer>) -> Result<Self> {
        if torsion.iter().any(|d| d < &BigInt::from(2)) {
            return Err(Error::InvalidGroup("torsion factors must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup("torsion factors must form a divisibility chain".into()));
        }
        Ok(AbelianGroup { rank, torsion })
    }

    /// Builds the group from Smith invariant factors, dropping units.
    pub fn from_invariant_factors(rank: usize, factors: &[Integer]) -> Self {
        let torsion = factors.iter().map(|d| d.abs()).filter(|d| !d.is_one()).collect();
        AbelianGroup::new(rank, torsion).expect("Smith factors form a divisibility chain")
    }

    pub fn trivial() -> Self {
        AbelianGroup { rank: 0, torsion: Vec::new() }
    }

    /// `(Z/2)^n`
    pub fn elementary_two(n: usize) -> Self {
        AbelianGroup { rank: 0, torsion: vec![BigInt::from(2); n] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.num_generators() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<Integer> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// True if some invariant factor is even.
    pub fn has_two_torsion(&self) -> bool {
        self.torsion.iter().any(|d| d.is_even())
    }

    pub fn zero(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            group: self.clone(),
            free: vec![BigInt::zero(); self.rank],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn element(self: &Arc<Self>, free: Vec<Integer>, torsion: Vec<Integer>) -> Result<GroupElement> {
        if free.len() != self.rank || torsion.len() != self.torsion.len() {
            return Err(Error::Mismatch(format!(
                "element with {}+{} coordinates in a group with {}+{} generators",
                free.len(),
                torsion.len(),
                self.rank,
                self.torsion.len()
            )));
        }
        let torsion = torsion.iter().zip(&self.torsion).map(|(x, d)| canonical_residue(x, d)).collect();
        Ok(GroupElement { group: self.clone(), free, torsion })
    }

    /// Element from a flat coordinate vector (free coordinates first).
    pub fn from_coords(self: &Arc<Self>, coords: &[Integer]) -> GroupElement {
        assert_eq!(coords.len(), self.num_generators(), "coordinate vector has the wrong length");
        self.element(coords[..self.rank].to_vec(), coords[self.rank..].to_vec()).expect("lengths checked")
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> GroupElement {
        let mut c = vec![BigInt::zero(); self.num_generators()];
        c[i] = BigInt::one();
        self.from_coords(&c)
    }

    pub fn generators(self: &Arc<Self>) -> Vec<GroupElement> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let sizes: Vec<u64> =
            self.torsion.iter().map(|d| d.to_u64().ok_or(Error::InfiniteGroup)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut cur = vec![0u64; sizes.len()];
        loop {
            let coords: Vec<BigInt> = cur.iter().map(|&x| BigInt::from(x)).collect();
            out.push(self.from_coords(&coords));
            let mut i = sizes.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < sizes[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Every element of the torsion subgroup (free coordinates zero).
    pub fn torsion_elements(self: &Arc<Self>) -> Result<Vec<GroupElement>> {
        let finite = Arc::new(AbelianGroup { rank: 0, torsion: self.torsion.clone() });
        let free = vec![BigInt::zero(); self.rank];
        finite.elements()?.iter().map(|x| self.element(free.clone(), x.torsion().to_vec())).collect()
    }

    /// Generators `(d_i / 2) e_i` of the subgroup `{x : 2x = 0}`.
    pub fn two_torsion_generators(self: &Arc<Self>) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for (i, d) in self.torsion.iter().enumerate() {
            if d.is_even() {
                let mut c = vec![BigInt::zero(); self.num_generators()];
                c[self.rank + i] = d / 2;
                gens.push(self.from_coords(&c));
            }
        }
        gens
    }

    /// All elements of `{x : 2x = 0}` (a finite elementary 2-group).
    pub fn two_torsion_elements(self: &Arc<Self>) -> Vec<GroupElement> {
        span_over_f2(self, &self.two_torsion_generators())
    }
}

/// All `Σ ε_i g_i` with `ε_i ∈ {0, 1}`, deduplicated, in a stable order.
pub fn span_over_f2(group: &Arc<AbelianGroup>, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = vec![group.zero()];
    for g in gens {
        let shifted: Vec<GroupElement> = out.iter().map(|x| x + g).collect();
        for s in shifted {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("AbelianGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &IntList(&self.torsion))?;
        st.end()
    }
}

/// Serializes integers as JSON numbers when they fit in 64 bits, otherwise
/// as decimal strings.
pub(crate) struct IntList<'a>(pub &'a [Integer]);

impl Serialize for IntList<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            match x.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

/// Element of an [`AbelianGroup`]; torsion coordinates are always kept in
/// `[0, d_i)` so equality is coordinate equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Arc<AbelianGroup>,
    free: Vec<Integer>,
    torsion: Vec<Integer>,
}

impl GroupElement {
    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn free(&self) -> &[Integer] {
        &self.free
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.torsion
    }

    /// Flat coordinates, free part first.
    pub fn coords(&self) -> Vec<Integer> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Integer) -> GroupElement {
        let coords: Vec<Integer> = self.coords().iter().map(|x| x * k).collect();
        self.group.from_coords(&coords)
    }

    pub fn scale_i64(&self, k: i64) -> GroupElement {
        self.scale(&BigInt::from(k))
    }

    fn check_same(&self, other: &GroupElement) {
        assert_eq!(self.group, other.group, "group elements from different groups");
    }

    /// Same coordinates, reinterpreted in an equal group behind another `Arc`.
    pub fn rebase(&self, group: &Arc<AbelianGroup>) -> Result<GroupElement> {
        if **group != *self.group {
            return Err(Error::Mismatch(format!("cannot move an element of {} into {}", self.group, group)));
        }
        Ok(GroupElement { group: group.clone(), free: self.free.clone(), torsion: self.torsion.clone() })
    }

    /// Additive order; `None` if infinite.
    pub fn order(&self) -> Option<Integer> {
        if self.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .zip(self.group.torsion())
                .map(|(x, d)| d / x.gcd(d))
                .fold(BigInt::one(), |acc, o| acc.lcm(&o)),
        )
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        let tors: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(f, "({}; {})", free.join(","), tors.join(","))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GroupElement", 2)?;
        st.serialize_field("free", &IntList(&self.free))?;
        st.serialize_field("torsion", &IntList(&self.torsion))?;
        st.end()
    }
}

impl std::ops::Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.check_same(rhs);
        let coords: Vec<Integer> = self.coords().iter().zip(rhs.coords()).map(|(a, b)| a + b).collect();
        self.group.from_coords(&coords)
    }
}

impl std::ops::Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.check_same(rhs);
        let coords: Vec<Integer> = self.coords().iter().zip(rhs.coords()).map(|(a, b)| a - b).collect();
        self.group.from_coords(&coords)
    }
}

impl std::ops::Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        let coords: Vec<Integer> = self.coords().iter().map(|a| -a).collect();
        self.group.from_coords(&coords)
    }
}

/// The unique `x` with `2x = y`, for groups without 2-torsion.
pub fn halve(y: &GroupElement) -> Result<GroupElement> {
    let g = y.group();
    if g.has_two_torsion() {
        return Err(Error::TwoTorsion(g.to_string()));
    }
    let two = BigInt::from(2);
    let mut free = Vec::with_capacity(g.rank());
    for (i, c) in y.free().iter().enumerate() {
        if c.is_odd() {
            return Err(Error::NotDivisible(format!("free coordinate {i} of {y} is odd")));
        }
        free.push(c / &two);
    }
    let torsion = y
        .torsion()
        .iter()
        .zip(g.torsion())
        .map(|(c, d)| {
            // d odd, so 2 * (d+1)/2 = 1 mod d
            let inv = (d + 1u32) / &two;
            c * inv
        })
        .collect();
    g.element(free, torsion)
}

/// `R^rows / im(M)` with explicit coordinates, as an abelian group.
///
/// Over the integers this is the usual presentation; over a ring of positive
/// characteristic `p` (only `Gf2` in practice) every free Smith coordinate
/// becomes a `Z/p` summand, so the group is `(Z/p)^n`.
#[derive(Clone, Debug)]
pub struct Cokernel<T = Integer> {
    group: Arc<AbelianGroup>,
    smith: SmithDecomposition<T>,
    /// Smith rows carrying a torsion coordinate from a non-unit factor.
    factor_rows: Vec<usize>,
}

impl<T: EuclideanRing> Cokernel<T> {
    pub fn new(m: &Matrix<T>) -> Self {
        let smith = smith_normal_form(m);
        let r = smith.rank();
        let factor_rows: Vec<usize> = (0..r).filter(|&i| !smith.invariant_factors[i].is_unit()).collect();
        let mut factors: Vec<Integer> = factor_rows.iter().map(|&i| smith.invariant_factors[i].to_integer()).collect();
        let free = m.rows() - r;
        let group = if T::CHARACTERISTIC == 0 {
            AbelianGroup::from_invariant_factors(free, &factors)
        } else {
            factors.extend(std::iter::repeat_n(BigInt::from(T::CHARACTERISTIC), free));
            AbelianGroup::from_invariant_factors(0, &factors)
        };
        Cokernel { group: Arc::new(group), smith, factor_rows }
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn projection(&self, v: &[T]) -> GroupElement {
        let c = self.smith.u.mul_vec(v);
        let r = self.smith.rank();
        let mut torsion: Vec<Integer> = self.factor_rows.iter().map(|&i| c[i].to_integer()).collect();
        let free: Vec<Integer> = c[r..].iter().map(Ring::to_integer).collect();
        let free = if T::CHARACTERISTIC == 0 {
            free
        } else {
            torsion.extend(free);
            Vec::new()
        };
        let coords: Vec<Integer> = free.into_iter().chain(torsion).collect();
        self.group.from_coords(&coords)
    }

    pub fn section(&self, x: &GroupElement) -> Vec<T> {
        let rows = self.smith.u.rows();
        let r = self.smith.rank();
        let k = self.factor_rows.len();
        let mut c = vec![T::zero(); rows];
        let free = if T::CHARACTERISTIC == 0 { x.free() } else { &x.torsion()[k..] };
        for (t, &i) in self.factor_rows.iter().enumerate() {
            c[i] = T::from_integer(&x.torsion()[t]);
        }
        for (t, f) in free.iter().enumerate() {
            c[r + t] = T::from_integer(f);
        }
        self.smith.u_inv.mul_vec(&c)
    }
}

/// Homomorphism between finitely generated abelian groups, stored as the
/// images of the source generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<AbelianGroup>,
    target: Arc<AbelianGroup>,
    images: Vec<GroupElement>,
    /// Smith form of `[images | relations of target]`.
    solver: SmithDecomposition<Integer>,
}

impl GroupHom {
    pub fn new(source: Arc<AbelianGroup>, target: Arc<AbelianGroup>, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.num_generators() {
            return Err(Error::Mismatch("one image per source generator required".into()));
        }
        if images.iter().any(|x| **x.group() != *target) {
            return Err(Error::Mismatch("image outside the target group".into()));
        }
        // well-definedness: d_i * image_i = 0
        for (i, d) in source.torsion().iter().enumerate() {
            if !images[source.rank() + i].scale(d).is_zero() {
                return Err(Error::Mismatch(format!("image of torsion generator {i} has the wrong order")));
            }
        }
        let images: Vec<GroupElement> = images.iter().map(|x| x.rebase(&target)).collect::<Result<_>>()?;
        let n = target.num_generators();
        let mut cols: Vec<Vec<Integer>> = images.iter().map(GroupElement::coords).collect();
        for (j, d) in target.torsion().iter().enumerate() {
            let mut c = vec![BigInt::zero(); n];
            c[target.rank() + j] = d.clone();
            cols.push(c);
        }
        let solver = smith_normal_form(&Matrix::from_columns(&cols, n));
        Ok(GroupHom { source, target, images, solver })
    }

    pub fn source(&self) -> &Arc<AbelianGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AbelianGroup> {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        assert_eq!(**x.group(), *self.source, "argument outside the source group");
        let mut acc = self.target.zero();
        for (c, img) in x.coords().iter().zip(&self.images) {
            if !c.is_zero() {
                acc = &acc + &img.scale(c);
            }
        }
        acc
    }

    /// Canonical preimage of `y`, or `None` if `y` is not in the image.
    pub fn preimage(&self, y: &GroupElement) -> Option<GroupElement> {
        assert_eq!(**y.group(), *self.target, "argument outside the target group");
        let z = solve_with_smith(&self.solver, &y.coords()).ok()?;
        Some(self.source.from_coords(&z[..self.source.num_generators()]))
    }

    /// Generators of the kernel (nonzero, deduplicated, first nonzero free
    /// coordinate positive).
    pub fn kernel_generators(&self) -> Vec<GroupElement> {
        let k = self.source.num_generators();
        let mut out: Vec<GroupElement> = Vec::new();
        for v in self.solver.kernel_basis() {
            let mut x = self.source.from_coords(&v[..k]);
            if x.free().iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
                x = -&x;
            }
            if !x.is_zero() && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_generators().is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generators().iter().all(|g| self.preimage(g).is_some())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom> {
        if *after.source != *self.target {
            return Err(Error::Mismatch("composition of incompatible homomorphisms".into()));
        }
        let images = self.images.iter().map(|x| after.apply(&x.rebase(&after.source).expect("equal groups"))).collect();
        GroupHom::new(self.source.clone(), after.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let c = Cokernel::<Integer>::new(&Matrix::from_i64_rows(&[vec![2]]));
        assert_eq!(**c.group(), AbelianGroup::new(0, zs(&[2])).unwrap());
        assert_eq!(c.projection(&zs(&[3])).torsion(), &zs(&[1])[..]);

        let c = Cokernel::<Integer>::new(&Matrix::zeros(2, 0));
        assert_eq!(**c.group(), AbelianGroup::new(2, vec![]).unwrap());
        assert_eq!(c.projection(&zs(&[5, -7])).free(), &zs(&[5, -7])[..]);

        let m = Matrix::<Integer>::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let c = Cokernel::new(&m);
        assert_eq!(**c.group(), AbelianGroup::new(0, zs(&[2, 4])).unwrap());
        for x in c.group().elements().unwrap() {
            assert_eq!(c.projection(&c.section(&x)), x);
        }
        assert!(c.projection(&m.column(1)).is_zero());
    }

    #[test]
    fn halving() {
        let z = Arc::new(AbelianGroup::new(1, vec![]).unwrap());
        assert_eq!(halve(&z.from_coords(&zs(&[6]))).unwrap(), z.from_coords(&zs(&[3])));
        assert!(matches!(halve(&z.from_coords(&zs(&[3]))), Err(Error::NotDivisible(_))));
        let z3 = Arc::new(AbelianGroup::new(0, zs(&[3])).unwrap());
        assert_eq!(halve(&z3.generator(0)).unwrap(), z3.from_coords(&zs(&[2])));
        let z2 = Arc::new(AbelianGroup::new(0, zs(&[2])).unwrap());
        assert!(matches!(halve(&z2.generator(0)), Err(Error::TwoTorsion(_))));
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(AbelianGroup::new(0, zs(&[2, 3])).is_err());
        assert!(AbelianGroup::new(0, zs(&[1])).is_err());
    }

    #[test]
    fn hom_kernel_and_preimage() {
        // Z -> Z/4, 1 -> 2: kernel 2Z, image {0, 2}
        let z = Arc::new(AbelianGroup::new(1, vec![]).unwrap());
        let z4 = Arc::new(AbelianGroup::new(0, zs(&[4])).unwrap());
        let h = GroupHom::new(z.clone(), z4.clone(), vec![z4.from_coords(&zs(&[2]))]).unwrap();
        assert_eq!(h.kernel_generators(), vec![z.from_coords(&zs(&[2]))]);
        assert!(h.preimage(&z4.from_coords(&zs(&[1]))).is_none());
        let p = h.preimage(&z4.from_coords(&zs(&[2]))).unwrap();
        assert_eq!(h.apply(&p), z4.from_coords(&zs(&[2])));
        assert!(!h.is_injective() && !h.is_surjective());
    }

    #[test]
    fn two_torsion_subgroup() {
        let g = Arc::new(AbelianGroup::new(1, zs(&[2, 4, 12])).unwrap());
        let t = g.two_torsion_elements();
        assert_eq!(t.len(), 8);
        assert!(t.iter().all(|x| x.scale_i64(2).is_zero()));
        assert_eq!(g.generator(3).order(), Some(BigInt::from(12)));
    }
}
