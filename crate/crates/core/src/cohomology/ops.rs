use std::sync::Arc;

use num_integer::Integer as _;

use super::group::{CohomologyClass, Space};
use crate::complex::{Chain, Cochain, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{solve_f2, GroupHom, Matrix};
use crate::scalar::{EuclideanRing, Gf2, Integer, Ring};

/// Cup product of classes on the same space and ring.
pub fn cup<R: EuclideanRing>(x: &CohomologyClass<R>, y: &CohomologyClass<R>) -> Result<CohomologyClass<R>> {
    if !x.space().same_as(y.space()) {
        return Err(Error::Mismatch("cup product of classes on different spaces".into()));
    }
    let k = x.space().total();
    let z = x.representative().cup(&y.representative(), k);
    Ok(x.space().cohomology::<R>(x.degree() + y.degree()).class_of_unchecked(&z))
}

/// `(f♯z)(σ) = ±z(f(σ))`, zero where `f` degenerates `σ`.
pub fn pullback_cochain<R: Ring>(f: &SimplicialMap, z: &Cochain<R>) -> Cochain<R> {
    let (src, dst) = (f.source(), f.target());
    let values = src
        .simplices(z.degree())
        .iter()
        .map(|s| match f.oriented_image(s) {
            Some((img, sign)) => {
                let v = z.value(dst, &img);
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
            None => R::zero(),
        })
        .collect();
    Cochain::new(z.degree(), values)
}

/// `f^*x` for `f: source -> x.space()`; for pairs, `f` must map the source
/// subcomplex into the target subcomplex.
pub fn pullback<R: EuclideanRing>(
    f: &SimplicialMap,
    x: &CohomologyClass<R>,
    source: &Arc<Space>,
) -> Result<CohomologyClass<R>> {
    if **f.target() != *x.space().total() || **f.source() != *source.total() {
        return Err(Error::Mismatch("map does not match the spaces".into()));
    }
    if !f.maps_into(source.sub(), x.space().sub()) {
        return Err(Error::Mismatch("map does not send the subcomplex into the subcomplex".into()));
    }
    let z = pullback_cochain(f, &x.representative());
    Ok(source.cohomology::<R>(x.degree()).class_of_unchecked(&z))
}

/// The homomorphism `f^*: H^k(target) -> H^k(source)` on generators.
pub fn induced_hom<R: EuclideanRing>(
    f: &SimplicialMap,
    source: &Arc<Space>,
    target: &Arc<Space>,
    k: usize,
) -> Result<GroupHom> {
    let h_target = target.cohomology::<R>(k);
    let h_source = source.cohomology::<R>(k);
    let images = h_target
        .generators()
        .iter()
        .map(|g| pullback(f, g, source).map(|c| c.coords().clone()))
        .collect::<Result<_>>()?;
    GroupHom::new(h_target.group().clone(), h_source.group().clone(), images)
}

pub fn reduce_mod2(x: &CohomologyClass<Integer>) -> CohomologyClass<Gf2> {
    let z = x.representative().map(|v| Gf2(v.is_odd()));
    x.space().cohomology::<Gf2>(x.degree()).class_of_unchecked(&z)
}

/// Integral Bockstein `H^k(;Z/2) -> H^{k+1}(;Z)`: lift to a 0/1 cochain,
/// take the coboundary, divide by 2.
pub fn bockstein(x: &CohomologyClass<Gf2>) -> CohomologyClass<Integer> {
    let k = x.space().total();
    let lift = x.representative().map(|v| Integer::from(u8::from(v.0)));
    let d = lift.coboundary(k);
    let two = Integer::from(2);
    let half = d.map(|v| {
        debug_assert!(v.is_even(), "coboundary of a mod-2 cocycle lift is even");
        v / &two
    });
    x.space().cohomology::<Integer>(x.degree() + 1).class_of_unchecked(&half)
}

pub fn evaluate<R: EuclideanRing>(x: &CohomologyClass<R>, c: &Chain) -> Result<R> {
    if c.degree() != x.degree() || c.coefficients().len() != x.space().total().count(x.degree()) {
        return Err(Error::Mismatch("chain does not match the class".into()));
    }
    Ok(x.representative().evaluate(c))
}

/// `j^*: H^k(X, N) -> H^k(X)`.
pub fn relative_to_absolute<R: EuclideanRing>(x: &CohomologyClass<R>) -> CohomologyClass<R> {
    let abs = x.space().absolute_space();
    abs.cohomology::<R>(x.degree()).class_of_unchecked(&x.representative())
}

/// `j^*` on generators.
pub fn restriction_hom<R: EuclideanRing>(space: &Arc<Space>, k: usize) -> Result<GroupHom> {
    let rel = space.cohomology::<R>(k);
    let abs = space.absolute_space().cohomology::<R>(k);
    let images = rel.generators().iter().map(|g| relative_to_absolute(g).coords().clone()).collect();
    GroupHom::new(rel.group().clone(), abs.group().clone(), images)
}

/// Some integral class reducing to `x`, or `None` when `βx != 0`.
///
/// Solves over `Z/2` for a 0/1 combination of the integral generators; the
/// solver sets free variables to zero, so `x = 0` gives exactly 0.
pub fn integral_lift(x: &CohomologyClass<Gf2>) -> Option<CohomologyClass<Integer>> {
    let hz = x.space().cohomology::<Integer>(x.degree());
    let gens = hz.generators();
    let n = x.coords().group().num_generators();
    let cols: Vec<Vec<Gf2>> = gens.iter().map(|g| f2_coords(&reduce_mod2(g))).collect();
    let m = Matrix::from_columns(&cols, n);
    let y = solve_f2(&m, &f2_coords(x))?;
    let mut acc = hz.zero();
    for (g, c) in gens.iter().zip(y) {
        if c.0 {
            acc = &acc + g;
        }
    }
    Some(acc)
}

fn f2_coords(x: &CohomologyClass<Gf2>) -> Vec<Gf2> {
    x.coords().torsion().iter().map(|c| Gf2(c.is_odd())).collect()
}

/// `⟨b_i ∪ b_j, [K]⟩` over the generators of `H^k`. Over the integers only
/// the free generators are used (torsion pairs to zero).
pub fn pairing_matrix<R: EuclideanRing>(space: &Arc<Space>, fundamental: &Chain, k: usize) -> Result<Matrix<R>> {
    if fundamental.degree() != 2 * k {
        return Err(Error::Mismatch(format!("pairing in degree {k} needs a {}-cycle", 2 * k)));
    }
    let h = space.cohomology::<R>(k);
    let gens: Vec<CohomologyClass<R>> =
        if R::CHARACTERISTIC == 0 { (0..h.group().rank()).map(|i| h.generator(i)).collect() } else { h.generators() };
    let n = gens.len();
    let total = space.total();
    if fundamental.coefficients().len() != total.count(2 * k) {
        return Err(Error::Mismatch("chain does not match the space".into()));
    }
    // evaluation on a cycle only sees the cochain, so representatives are
    // multiplied directly
    let reps: Vec<Cochain<R>> = gens.iter().map(CohomologyClass::representative).collect();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = reps[i].cup(&reps[j], total).evaluate(fundamental);
        }
    }
    Ok(m)
}

/// The Wu class: the unique `v ∈ H^2(K; Z/2)` with `⟨v ∪ x, [K]⟩ = ⟨x ∪ x, [K]⟩`
/// for all `x`, on a closed oriented 4-complex.
pub fn wu_class_w2(space: &Arc<Space>) -> Result<CohomologyClass<Gf2>> {
    let k = space.total();
    if !space.is_absolute() {
        return Err(Error::Mismatch("the Wu class is defined on absolute complexes".into()));
    }
    let fundamental = k.fundamental_cycle(4)?;
    let h2 = space.cohomology::<Gf2>(2);
    let p = pairing_matrix::<Gf2>(space, &fundamental, 2)?;
    let n = p.rows();
    if crate::linalg::rank_f2(&p) < n {
        return Err(Error::DegeneratePairing(2));
    }
    let rhs: Vec<Gf2> = (0..n).map(|i| p[(i, i)]).collect();
    // symmetric, so P v = diag(P) is the Wu condition
    let v = solve_f2(&p, &rhs).ok_or_else(|| Error::Internal("nondegenerate pairing without solution".into()))?;
    let coords: Vec<Integer> = v.iter().map(|c| Integer::from(u8::from(c.0))).collect();
    h2.from_coords(&coords)
}

/// `β: H^k(;Z/2) -> H^{k+1}(;Z)` on generators.
pub fn bockstein_hom(space: &Arc<Space>, k: usize) -> Result<GroupHom> {
    let source = space.cohomology::<Gf2>(k);
    let target = space.cohomology::<Integer>(k + 1);
    let images = source.generators().iter().map(|g| bockstein(g).coords().clone()).collect();
    GroupHom::new(source.group().clone(), target.group().clone(), images)
}

/// `W3 = βw2`.
pub fn w3(w2: &CohomologyClass<Gf2>) -> CohomologyClass<Integer> {
    bockstein(w2)
}
