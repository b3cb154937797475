//! Spin and spin^c structures as torsors over `H^1(X; Z/2)` and `H^2(X; Z)`.
//!
//! A structure is stored as its offset from the torsor basepoint. The
//! basepoint of the spin^c torsor has Chern class `c`, the canonical integral
//! lift of `w2`, which is exactly 0 when `w2 = 0`.

use std::fmt;
use std::sync::Arc;

use crate::cohomology::{bockstein, bockstein_hom, integral_lift, CohomologyClass, CohomologyGroup, Space};
use crate::error::{Error, Result};
use crate::linalg::GroupElement;
use crate::scalar::{Gf2, Integer};

fn check_w2(space: &Arc<Space>, w2: &CohomologyClass<Gf2>) -> Result<()> {
    if w2.degree() != 2 || !w2.space().same_as(space) {
        return Err(Error::Mismatch("w2 must be a degree-2 class on the same space".into()));
    }
    Ok(())
}

/// `S(X)`, an `H^1(X; Z/2)`-torsor when `w2 = 0` and empty otherwise.
pub struct SpinTorsor {
    space: Arc<Space>,
    group: Arc<CohomologyGroup<Gf2>>,
    w2: CohomologyClass<Gf2>,
}

impl fmt::Debug for SpinTorsor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinTorsor(exists = {}, group = {})", self.exists(), self.group.group())
    }
}

impl SpinTorsor {
    pub fn new(space: &Arc<Space>, w2: CohomologyClass<Gf2>) -> Result<Arc<Self>> {
        check_w2(space, &w2)?;
        Ok(Arc::new(SpinTorsor { space: space.clone(), group: space.cohomology::<Gf2>(1), w2 }))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn group(&self) -> &Arc<CohomologyGroup<Gf2>> {
        &self.group
    }

    pub fn w2(&self) -> &CohomologyClass<Gf2> {
        &self.w2
    }

    pub fn exists(&self) -> bool {
        self.w2.is_zero()
    }

    /// Number of structures (`H^1(X; Z/2)` is always finite).
    pub fn size(&self) -> Integer {
        if self.exists() {
            self.group.group().order().expect("mod-2 groups are finite")
        } else {
            Integer::from(0)
        }
    }

    pub fn structure(self: &Arc<Self>, offset: &GroupElement) -> Result<SpinStructure> {
        if !self.exists() {
            return Err(Error::EmptyTorsor("w2 is nonzero, so there are no spin structures".into()));
        }
        Ok(SpinStructure { torsor: self.clone(), offset: offset.rebase(self.group.group())? })
    }

    pub fn basepoint(self: &Arc<Self>) -> Result<SpinStructure> {
        self.structure(&self.group.group().zero())
    }

    pub fn enumerate(self: &Arc<Self>) -> Result<Vec<SpinStructure>> {
        if !self.exists() {
            return Err(Error::EmptyTorsor("w2 is nonzero, so there are no spin structures".into()));
        }
        self.group.group().elements()?.iter().map(|u| self.structure(u)).collect()
    }
}

#[derive(Clone)]
pub struct SpinStructure {
    torsor: Arc<SpinTorsor>,
    offset: GroupElement,
}

impl SpinStructure {
    pub fn torsor(&self) -> &Arc<SpinTorsor> {
        &self.torsor
    }

    pub fn offset(&self) -> &GroupElement {
        &self.offset
    }

    pub fn act(&self, u: &GroupElement) -> Result<SpinStructure> {
        let u = u.rebase(self.torsor.group.group())?;
        Ok(SpinStructure { torsor: self.torsor.clone(), offset: &self.offset + &u })
    }

    /// `d(self, other)`: the element carrying `self` to `other`.
    pub fn difference(&self, other: &SpinStructure) -> Result<GroupElement> {
        if !Arc::ptr_eq(&self.torsor, &other.torsor) {
            return Err(Error::Mismatch("structures from different torsors".into()));
        }
        Ok(&other.offset - &self.offset)
    }
}

impl PartialEq for SpinStructure {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.torsor, &other.torsor) && self.offset == other.offset
    }
}

impl Eq for SpinStructure {}

impl fmt::Debug for SpinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spin{}", self.offset)
    }
}

/// `S^c(X)`, an `H^2(X; Z)`-torsor when `W3 = βw2 = 0` and empty otherwise.
pub struct SpincTorsor {
    space: Arc<Space>,
    group: Arc<CohomologyGroup<Integer>>,
    w2: CohomologyClass<Gf2>,
    chern_base: Option<CohomologyClass<Integer>>,
    twist: Option<GroupElement>,
}

impl fmt::Debug for SpincTorsor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpincTorsor(exists = {}, group = {})", self.exists(), self.group.group())
    }
}

impl SpincTorsor {
    /// The torsor with the default conjugation twist `t0 = -c`.
    pub fn new(space: &Arc<Space>, w2: CohomologyClass<Gf2>) -> Result<Arc<Self>> {
        Self::build(space, w2, None)
    }

    /// The torsor with an explicit twist; requires `2 t0 = -2c`.
    pub fn with_twist(space: &Arc<Space>, w2: CohomologyClass<Gf2>, twist: &GroupElement) -> Result<Arc<Self>> {
        Self::build(space, w2, Some(twist))
    }

    fn build(space: &Arc<Space>, w2: CohomologyClass<Gf2>, twist: Option<&GroupElement>) -> Result<Arc<Self>> {
        check_w2(space, &w2)?;
        let group = space.cohomology::<Integer>(2);
        let chern_base = if bockstein(&w2).is_zero() {
            Some(integral_lift(&w2).ok_or_else(|| Error::Internal("W3 = 0 but w2 has no integral lift".into()))?)
        } else {
            None
        };
        let twist = match (&chern_base, twist) {
            (None, None) => None,
            (None, Some(_)) => {
                return Err(Error::EmptyTorsor("W3 is nonzero, so there is nothing to twist".into()));
            }
            (Some(c), None) => Some(-c.coords()),
            (Some(c), Some(t)) => {
                let t = t.rebase(group.group()).map_err(|e| Error::InvalidTwist(e.to_string()))?;
                if !(&t + c.coords()).scale_i64(2).is_zero() {
                    return Err(Error::InvalidTwist(format!("2t0 != -2c for t0 = {t}, c = {}", c.coords())));
                }
                Some(t)
            }
        };
        Ok(Arc::new(SpincTorsor { space: space.clone(), group, w2, chern_base, twist }))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn group(&self) -> &Arc<CohomologyGroup<Integer>> {
        &self.group
    }

    pub fn w2(&self) -> &CohomologyClass<Gf2> {
        &self.w2
    }

    pub fn exists(&self) -> bool {
        self.chern_base.is_some()
    }

    /// Chern class `c` of the basepoint.
    pub fn chern_base(&self) -> Option<&CohomologyClass<Integer>> {
        self.chern_base.as_ref()
    }

    pub fn twist(&self) -> Option<&GroupElement> {
        self.twist.as_ref()
    }

    pub fn has_default_twist(&self) -> bool {
        match (&self.chern_base, &self.twist) {
            (Some(c), Some(t)) => *t == -c.coords(),
            _ => true,
        }
    }

    fn empty() -> Error {
        Error::EmptyTorsor("W3 is nonzero, so there are no spin^c structures".into())
    }

    pub fn structure(self: &Arc<Self>, offset: &GroupElement) -> Result<SpincStructure> {
        if !self.exists() {
            return Err(Self::empty());
        }
        Ok(SpincStructure { torsor: self.clone(), offset: offset.rebase(self.group.group())? })
    }

    pub fn basepoint(self: &Arc<Self>) -> Result<SpincStructure> {
        self.structure(&self.group.group().zero())
    }

    /// All structures when `H^2(X; Z)` is finite; otherwise one structure per
    /// torsion coset (free coordinates zero).
    pub fn enumerate(self: &Arc<Self>) -> Result<Enumeration> {
        if !self.exists() {
            return Err(Self::empty());
        }
        let g = self.group.group();
        let structures = g.torsion_elements()?.iter().map(|a| self.structure(a)).collect::<Result<_>>()?;
        Ok(Enumeration { free_rank: g.rank(), complete: g.is_finite(), structures })
    }
}

/// Listing of a spin^c torsor.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Rank of the free part of `H^2(X; Z)`; the listing is complete iff 0.
    pub free_rank: usize,
    pub complete: bool,
    pub structures: Vec<SpincStructure>,
}

#[derive(Clone)]
pub struct SpincStructure {
    torsor: Arc<SpincTorsor>,
    offset: GroupElement,
}

impl SpincStructure {
    pub fn torsor(&self) -> &Arc<SpincTorsor> {
        &self.torsor
    }

    pub fn offset(&self) -> &GroupElement {
        &self.offset
    }

    pub fn act(&self, a: &GroupElement) -> Result<SpincStructure> {
        let a = a.rebase(self.torsor.group.group())?;
        Ok(SpincStructure { torsor: self.torsor.clone(), offset: &self.offset + &a })
    }

    /// `d(self, other)`: the element carrying `self` to `other`.
    pub fn difference(&self, other: &SpincStructure) -> Result<GroupElement> {
        if !Arc::ptr_eq(&self.torsor, &other.torsor) {
            return Err(Error::Mismatch("structures from different torsors".into()));
        }
        Ok(&other.offset - &self.offset)
    }

    /// `c1(s) = c + 2a`.
    pub fn c1(&self) -> CohomologyClass<Integer> {
        let c = self.torsor.chern_base.as_ref().expect("structures exist only in nonempty torsors");
        let a = self.torsor.group.class(&self.offset).expect("offset lives in the torsor group");
        c + &a.scale_i64(2)
    }

    /// Offset `t0 - a`.
    pub fn conjugate(&self) -> SpincStructure {
        let t = self.torsor.twist.as_ref().expect("structures exist only in nonempty torsors");
        SpincStructure { torsor: self.torsor.clone(), offset: t - &self.offset }
    }

    pub fn is_conjugation_invariant(&self) -> bool {
        self.conjugate() == *self
    }

    /// Whether `self = α(t)` for some spin structure `t`; false when there
    /// are no spin structures.
    pub fn in_image_of_alpha(&self, spin: &SpinTorsor) -> Result<bool> {
        if !spin.space.same_as(&self.torsor.space) || spin.w2 != self.torsor.w2 {
            return Err(Error::Mismatch("spin and spin^c torsors of different data".into()));
        }
        if !spin.exists() {
            return Ok(false);
        }
        let beta = bockstein_hom(&self.torsor.space, 1)?;
        Ok(beta.preimage(&self.offset).is_some())
    }
}

impl PartialEq for SpincStructure {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.torsor, &other.torsor) && self.offset == other.offset
    }
}

impl Eq for SpincStructure {}

impl fmt::Debug for SpincStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spinc{}", self.offset)
    }
}

/// `α(basepoint + u) = basepoint + βu`.
pub fn alpha(s: &SpinStructure, target: &Arc<SpincTorsor>) -> Result<SpincStructure> {
    let spin = &s.torsor;
    if !spin.space.same_as(&target.space) || spin.w2 != target.w2 {
        return Err(Error::Mismatch("spin and spin^c torsors of different data".into()));
    }
    let u = spin.group.class(&s.offset)?;
    target.structure(bockstein(&u).coords())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::wu_class_w2;
    use crate::corpus;

    fn torsors(name: &str) -> (Arc<SpinTorsor>, Arc<SpincTorsor>) {
        let space = Space::absolute(corpus::load(name).unwrap());
        let w2 = wu_class_w2(&space).unwrap();
        (SpinTorsor::new(&space, w2.clone()).unwrap(), SpincTorsor::new(&space, w2).unwrap())
    }

    #[test]
    fn sphere_has_one_of_each() {
        let (spin, spinc) = torsors("s4");
        assert_eq!(spin.size(), Integer::from(1));
        let e = spinc.enumerate().unwrap();
        assert!(e.complete);
        assert_eq!(e.structures.len(), 1);
        let s = &e.structures[0];
        assert!(s.c1().is_zero());
        assert!(s.is_conjugation_invariant());
        assert_eq!(alpha(&spin.basepoint().unwrap(), &spinc).unwrap(), *s);
    }

    #[test]
    fn projective_plane_chern_classes_are_odd() {
        let (spin, spinc) = torsors("cp2");
        assert!(!spin.exists());
        assert!(spin.basepoint().is_err());
        let s = spinc.basepoint().unwrap();
        let h = spinc.group().generator(0);
        let c = s.c1();
        assert!(c == h || c == -&h);
        let t = s.act(h.coords()).unwrap();
        assert_eq!(t.c1(), &c + &h.scale_i64(2));
        assert_eq!(s.conjugate().c1(), -&c);
        assert!(!s.is_conjugation_invariant());
        assert!(!s.in_image_of_alpha(&spin).unwrap());
    }

    #[test]
    fn twist_is_validated() {
        let space = Space::absolute(corpus::load("cp2").unwrap());
        let w2 = wu_class_w2(&space).unwrap();
        let g = space.cohomology::<Integer>(2);
        assert!(matches!(
            SpincTorsor::with_twist(&space, w2.clone(), g.generator(0).coords()),
            Err(Error::InvalidTwist(_))
        ));
        let default = SpincTorsor::new(&space, w2.clone()).unwrap();
        let t = default.twist().unwrap().clone();
        assert!(SpincTorsor::with_twist(&space, w2, &t).unwrap().has_default_twist());
    }
}
