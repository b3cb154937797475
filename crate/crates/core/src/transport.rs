//! Transport of spin^c structures along a simplicial map `g: X1 -> X2`
//! through relative Chern lifts over neighborhoods `N_i`.
//!
//! With lifts `ĉ_i ∈ H^2(X_i, N_i; Z)` of `c1(s_i)`, the class `δ` is the
//! unique solution of `2δ = g^*ĉ_2 - ĉ_1` in `H^2(X_1, N_1; Z)` (no 2-torsion
//! there), and `d = j^*δ` is the difference class `d(s_1, g^*s_2)`.

use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{induced_hom, pullback, relative_to_absolute, restriction_hom, CohomologyClass, Space};
use crate::complex::{Cochain, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{halve, span_over_f2, GroupElement};
use crate::scalar::{Gf2, Integer};
use crate::structures::SpincStructure;

/// A relative integral 2-cocycle whose absolute class is `c1` of a structure.
#[derive(Clone, Debug)]
pub struct RelativeChernLift {
    cocycle: Cochain<Integer>,
    class: CohomologyClass<Integer>,
}

impl RelativeChernLift {
    /// Validates a user-supplied cocycle: it must be a relative cocycle whose
    /// class maps to `c1(s)` under `j^*`.
    pub fn new(pair: &Arc<Space>, s: &SpincStructure, cocycle: Cochain<Integer>) -> Result<Self> {
        check_structure_space(pair, s)?;
        let class = pair.cohomology::<Integer>(2).class_of(&cocycle)?;
        if relative_to_absolute(&class) != s.c1() {
            return Err(Error::IncompatibleLifts("the lift's absolute class is not c1 of the structure".into()));
        }
        Ok(RelativeChernLift { cocycle, class })
    }

    /// The solver's canonical preimage of `c1(s)` under `j^*`.
    pub fn choose(pair: &Arc<Space>, s: &SpincStructure) -> Result<Self> {
        check_structure_space(pair, s)?;
        let j = restriction_hom::<Integer>(pair, 2)?;
        let c1 = s.c1();
        let pre = j.preimage(&c1.coords().rebase(j.target())?).ok_or_else(|| {
            Error::NotInImage(format!(
                "c1 = {} is nonzero in the cokernel of H^2(X,N) -> H^2(X) = {}",
                c1.coords(),
                c1.coords().group()
            ))
        })?;
        let class = pair.cohomology::<Integer>(2).class(&pre)?;
        Ok(RelativeChernLift { cocycle: class.representative(), class })
    }

    pub fn cocycle(&self) -> &Cochain<Integer> {
        &self.cocycle
    }

    pub fn class(&self) -> &CohomologyClass<Integer> {
        &self.class
    }

    /// The lift moved by a relative class (keeps `j^*` fixed when the class
    /// is in the kernel).
    pub fn translated(&self, k: &CohomologyClass<Integer>) -> Result<Self> {
        let class = self.class.try_add(k)?;
        let cocycle = self.cocycle.add(&k.representative());
        Ok(RelativeChernLift { cocycle, class })
    }
}

fn check_structure_space(pair: &Arc<Space>, s: &SpincStructure) -> Result<()> {
    let space = s.torsor().space();
    if !space.is_absolute() || *space.total() != *pair.total() {
        return Err(Error::Mismatch("structure lives on another complex".into()));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub enum Lifts {
    /// Correlated lifts asserted by the caller.
    User { lift1: Cochain<Integer>, lift2: Cochain<Integer> },
    /// Lifts chosen by the solver, with evenness repair.
    Engine,
}

#[derive(Clone, Debug)]
pub struct TransportProblem {
    pub pair1: Arc<Space>,
    pub pair2: Arc<Space>,
    pub g: SimplicialMap,
    pub s1_ref: SpincStructure,
    pub s2: SpincStructure,
    pub lifts: Lifts,
    /// Refuse to run without collapse certificates for both neighborhoods.
    pub strict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    /// `g|N_1` is a simplicial isomorphism onto `N_2`.
    pub neighborhood_isomorphism: Verdict,
    /// `H^2(X_1, N_1; Z)` has no even invariant factor.
    pub no_two_torsion_1: Verdict,
    /// `H^2(X_2, N_2; Z)` has no even invariant factor.
    pub no_two_torsion_2: Verdict,
    /// Greedy collapse of `N_1` to dimension at most 1 (advisory).
    pub collapse_1: Verdict,
    /// Greedy collapse of `N_2` to dimension at most 1 (advisory).
    pub collapse_2: Verdict,
    /// `g^*` is an isomorphism on `H^1(;Z/2)`, `H^2(;Z)` and `H^2(;Z/2)`
    /// and pulls `w2` back to `w2`.
    pub cohomology_screen: Verdict,
}

impl HypothesisReport {
    /// Names of failing verdicts that block transport.
    pub fn blocking_failures(&self, strict: bool) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks = [
            ("neighborhood_isomorphism", &self.neighborhood_isomorphism, true),
            ("no_two_torsion_1", &self.no_two_torsion_1, true),
            ("no_two_torsion_2", &self.no_two_torsion_2, true),
            ("collapse_1", &self.collapse_1, strict),
            ("collapse_2", &self.collapse_2, strict),
            ("cohomology_screen", &self.cohomology_screen, true),
        ];
        for (name, v, blocking) in checks {
            if blocking && !v.pass {
                out.push(name);
            }
        }
        out
    }
}

fn torsion_verdict(pair: &Arc<Space>) -> Verdict {
    let g = pair.cohomology::<Integer>(2);
    let group = g.group();
    Verdict::new(!group.has_two_torsion(), format!("H^2(X,N;Z) = {group}"))
}

fn collapse_verdict(pair: &Arc<Space>) -> Verdict {
    let cert = pair.sub().collapses_to_dim(1);
    let dim = cert.remaining_dim.map_or("empty".to_string(), |d| d.to_string());
    Verdict::new(cert.collapsed, format!("{} collapses, remaining dimension {dim}", cert.log.len()))
}

fn screen(p: &TransportProblem) -> Result<Verdict> {
    let (x1, x2) = (p.pair1.absolute_space(), p.pair2.absolute_space());
    let mut failed = Vec::new();
    for (name, hom) in [
        ("H^1(Z2)", induced_hom::<Gf2>(&p.g, &x1, &x2, 1)?),
        ("H^2(Z)", induced_hom::<Integer>(&p.g, &x1, &x2, 2)?),
        ("H^2(Z2)", induced_hom::<Gf2>(&p.g, &x1, &x2, 2)?),
    ] {
        if !hom.is_isomorphism() {
            failed.push(name);
        }
    }
    let pulled = pullback(&p.g, p.s2.torsor().w2(), &x1)?;
    if pulled != *p.s1_ref.torsor().w2() {
        failed.push("w2");
    }
    Ok(if failed.is_empty() {
        Verdict::new(true, "g^* is an isomorphism on H^1(Z2), H^2(Z), H^2(Z2) and g^*w2 = w2")
    } else {
        Verdict::new(false, format!("fails on {}", failed.join(", ")))
    })
}

pub fn verify_hypotheses(p: &TransportProblem) -> Result<HypothesisReport> {
    check_problem(p)?;
    let iso = p.g.restricts_to_isomorphism(p.pair1.sub(), p.pair2.sub());
    Ok(HypothesisReport {
        neighborhood_isomorphism: Verdict::new(
            iso,
            if iso { "g|N1 is an isomorphism onto N2" } else { "g|N1 is not an isomorphism onto N2" },
        ),
        no_two_torsion_1: torsion_verdict(&p.pair1),
        no_two_torsion_2: torsion_verdict(&p.pair2),
        collapse_1: collapse_verdict(&p.pair1),
        collapse_2: collapse_verdict(&p.pair2),
        cohomology_screen: screen(p)?,
    })
}

fn check_problem(p: &TransportProblem) -> Result<()> {
    if **p.g.source() != *p.pair1.total() || **p.g.target() != *p.pair2.total() {
        return Err(Error::Mismatch("g must map X1 to X2".into()));
    }
    check_structure_space(&p.pair1, &p.s1_ref)?;
    check_structure_space(&p.pair2, &p.s2)
}

/// `δ` together with the lifts that produced it.
#[derive(Clone, Debug)]
pub struct Delta {
    pub delta: CohomologyClass<Integer>,
    pub lift1: RelativeChernLift,
    pub lift2: RelativeChernLift,
    /// Whether the engine had to translate `lift2` by a kernel element.
    pub repaired: bool,
}

fn require_hypotheses(p: &TransportProblem) -> Result<HypothesisReport> {
    let report = verify_hypotheses(p)?;
    let failing = report.blocking_failures(p.strict);
    if !failing.is_empty() {
        return Err(Error::Hypotheses(failing.join(", ")));
    }
    Ok(report)
}

pub fn delta(p: &TransportProblem) -> Result<Delta> {
    require_hypotheses(p)?;
    delta_unchecked(p)
}

fn delta_unchecked(p: &TransportProblem) -> Result<Delta> {
    match &p.lifts {
        Lifts::User { lift1, lift2 } => solve_delta(
            p,
            RelativeChernLift::new(&p.pair1, &p.s1_ref, lift1.clone())?,
            RelativeChernLift::new(&p.pair2, &p.s2, lift2.clone())?,
            false,
        ),
        Lifts::Engine => solve_delta(
            p,
            RelativeChernLift::choose(&p.pair1, &p.s1_ref)?,
            RelativeChernLift::choose(&p.pair2, &p.s2)?,
            true,
        ),
    }
}

/// Halves `g^*ĉ_2 - ĉ_1`; with `repair`, retries `ĉ_2` translated by the
/// `Z/2`-span of the generators of `ker j^*`.
fn solve_delta(
    p: &TransportProblem,
    lift1: RelativeChernLift,
    lift2: RelativeChernLift,
    repair: bool,
) -> Result<Delta> {
    let attempt = |l2: &RelativeChernLift| -> Result<Option<CohomologyClass<Integer>>> {
        let diff = pullback(&p.g, l2.class(), &p.pair1)?.try_sub(lift1.class())?;
        match halve(diff.coords()) {
            Ok(h) => {
                let d = diff.parent().class(&h)?;
                if d.scale_i64(2) != diff {
                    return Err(Error::Internal("2δ differs from g^*ĉ2 - ĉ1".into()));
                }
                Ok(Some(d))
            }
            Err(Error::NotDivisible(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    if let Some(d) = attempt(&lift2)? {
        return Ok(Delta { delta: d, lift1, lift2, repaired: false });
    }
    if !repair {
        return Err(Error::IncompatibleLifts("g^*ĉ2 - ĉ1 has an odd free coordinate".into()));
    }
    let kernel = restriction_hom::<Integer>(&p.pair2, 2)?.kernel_generators();
    let h2 = p.pair2.cohomology::<Integer>(2);
    for k in span_over_f2(h2.group(), &kernel).iter().skip(1) {
        let moved = lift2.translated(&h2.class(k)?)?;
        if let Some(d) = attempt(&moved)? {
            return Ok(Delta { delta: d, lift1, lift2: moved, repaired: true });
        }
    }
    Err(Error::IncompatibleLifts("no kernel translate of the second lift makes g^*ĉ2 - ĉ1 even".into()))
}

#[derive(Clone, Debug)]
pub struct DifferenceClass {
    pub delta: Delta,
    /// `d = j^*δ ∈ H^2(X_1; Z)`.
    pub d: CohomologyClass<Integer>,
    /// `A = im j^* ∩ H^2(X_1; Z)[2]`: the possible shifts of `d` across
    /// uncorrelated lift choices.
    pub ambiguity: Vec<GroupElement>,
}

/// Elements of `im(j^*) ∩ H^2(X; Z)[2]`.
pub fn ambiguity_subgroup(pair: &Arc<Space>) -> Result<Vec<GroupElement>> {
    let j = restriction_hom::<Integer>(pair, 2)?;
    Ok(j.target().two_torsion_elements().into_iter().filter(|y| j.preimage(y).is_some()).collect())
}

pub fn difference_class(p: &TransportProblem) -> Result<DifferenceClass> {
    let delta = delta(p)?;
    let d = relative_to_absolute(&delta.delta);
    Ok(DifferenceClass { d, ambiguity: ambiguity_subgroup(&p.pair1)?, delta })
}

#[derive(Clone, Debug)]
pub struct Transported {
    pub hypotheses: HypothesisReport,
    pub difference: DifferenceClass,
    /// `g^*s_2 = s_1ref + d`.
    pub structure: SpincStructure,
}

pub fn transport(p: &TransportProblem) -> Result<Transported> {
    let hypotheses = require_hypotheses(p)?;
    let delta = delta_unchecked(p)?;
    let d = relative_to_absolute(&delta.delta);
    let difference = DifferenceClass { d, ambiguity: ambiguity_subgroup(&p.pair1)?, delta };
    let structure = p.s1_ref.act(difference.d.coords())?;
    let expected = pullback(&p.g, &p.s2.c1(), &p.pair1.absolute_space())?;
    if structure.c1() != expected {
        return Err(Error::Consistency(format!(
            "c + 2(offset + d) = {} but g^*c1(s2) = {}",
            structure.c1().coords(),
            expected.coords()
        )));
    }
    Ok(Transported { hypotheses, difference, structure })
}
