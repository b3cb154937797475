use std::collections::BTreeMap;
use std::sync::Arc;

use spinc::cohomology::{pullback, relative_to_absolute, restriction_hom, wu_class_w2, Space};
use spinc::complex::Chain;
use spinc::structures::{SpincStructure, SpincTorsor};
use spinc::transport::{delta, transport, Lifts, RelativeChernLift, TransportProblem};
use spinc::{corpus, Cochain, Error, Integer, Simplex, SimplicialComplex, SimplicialMap, SubcomplexPair, Vertex};

fn vertex_star(k: &SimplicialComplex, v: Vertex) -> SimplicialComplex {
    k.closed_star(&SimplicialComplex::from_simplices([Simplex::vertex(v)])).unwrap()
}

fn pair(k: &SimplicialComplex, n: SimplicialComplex) -> Arc<Space> {
    Space::new(SubcomplexPair::new(k.clone(), n).unwrap())
}

fn torsor(pair: &Arc<Space>) -> Arc<SpincTorsor> {
    let abs = pair.absolute_space();
    SpincTorsor::new(&abs, wu_class_w2(&abs).unwrap()).unwrap()
}

fn problem(
    pair1: &Arc<Space>,
    pair2: &Arc<Space>,
    g: &SimplicialMap,
    s1_ref: &SpincStructure,
    s2: &SpincStructure,
) -> TransportProblem {
    TransportProblem {
        pair1: pair1.clone(),
        pair2: pair2.clone(),
        g: g.clone(),
        s1_ref: s1_ref.clone(),
        s2: s2.clone(),
        lifts: Lifts::Engine,
        strict: true,
    }
}

/// Pushes a chain forward along `g` simplex by simplex.
fn push_forward(g: &SimplicialMap, c: &Chain) -> Chain {
    let (src, dst) = (g.source(), g.target());
    let mut out = vec![Integer::from(0); dst.count(c.degree())];
    for (s, x) in src.simplices(c.degree()).iter().zip(c.coefficients()) {
        if let Some((img, sign)) = g.oriented_image(s) {
            out[dst.index_of(&img).unwrap()] += x * Integer::from(sign);
        }
    }
    Chain::new(c.degree(), out)
}

/// The fundamental cycle of a subcomplex, as a chain on `k`.
fn embedded_cycle(k: &SimplicialComplex, sub: &SimplicialComplex, n: usize) -> Chain {
    let c = sub.fundamental_cycle(n).unwrap();
    let mut out = vec![Integer::from(0); k.count(n)];
    for (s, x) in sub.simplices(n).iter().zip(c.coefficients()) {
        out[k.index_of(s).unwrap()] = x.clone();
    }
    Chain::new(n, out)
}

struct Swap {
    x: SimplicialComplex,
    g: SimplicialMap,
    pair: Arc<Space>,
    torsor: Arc<SpincTorsor>,
    spheres: Vec<Chain>,
}

fn s2xs2_swap() -> Swap {
    let x = corpus::load("s2xs2").unwrap();
    let xa = Arc::new(x.clone());
    let map: BTreeMap<Vertex, Vertex> = x.vertices().map(|v| (v, 4 * (v % 4) + v / 4)).collect();
    let g = SimplicialMap::new(xa.clone(), xa, map).unwrap();
    let pair = pair(&x, vertex_star(&x, 0));
    let torsor = torsor(&pair);
    let sphere = |f: &dyn Fn(Vertex) -> Vertex| {
        let facets = (0..4u32).map(|i| Simplex::new((0..4u32).filter(|&j| j != i).map(f)).unwrap());
        embedded_cycle(&x, &SimplicialComplex::from_simplices(facets), 2)
    };
    let spheres = vec![sphere(&|a| 4 * a + 1), sphere(&|b| 4 + b)];
    Swap { x, g, pair, torsor, spheres }
}

#[test]
fn swap_on_s2_times_s2_matches_chern_evaluations() {
    let Swap { x, g, pair, torsor, spheres } = s2xs2_swap();
    assert_eq!(x.count(0), 16);
    let base = torsor.basepoint().unwrap();
    assert!(base.c1().is_zero());
    let group = torsor.group().group().clone();
    for offset in [vec![1, 0], vec![0, 1], vec![2, -3]] {
        let a = group.from_coords(&offset.iter().map(|&v| Integer::from(v)).collect::<Vec<_>>());
        let s2 = base.act(&a).unwrap();
        let r = transport(&problem(&pair, &pair, &g, &base, &s2)).unwrap();
        assert!(r.difference.ambiguity.len() == 1);
        for sphere in &spheres {
            let lhs = r.structure.c1().representative().evaluate(sphere);
            let rhs = s2.c1().representative().evaluate(&push_forward(&g, sphere));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn swap_is_an_involution_on_structures() {
    let Swap { g, pair, torsor, .. } = s2xs2_swap();
    let base = torsor.basepoint().unwrap();
    let s2 = base.act(&torsor.group().group().generator(0)).unwrap();
    let once = transport(&problem(&pair, &pair, &g, &base, &s2)).unwrap().structure;
    let twice = transport(&problem(&pair, &pair, &g, &base, &once)).unwrap().structure;
    assert_eq!(twice, s2);
    assert_ne!(once, s2);
}

#[test]
fn transport_is_equivariant() {
    let Swap { g, pair, torsor, .. } = s2xs2_swap();
    let base = torsor.basepoint().unwrap();
    let s2 = base.act(&torsor.group().group().generator(1).scale_i64(3)).unwrap();
    let t = transport(&problem(&pair, &pair, &g, &base, &s2)).unwrap().structure;
    let abs = pair.absolute_space();
    for b in torsor.group().generators() {
        let moved = transport(&problem(&pair, &pair, &g, &base, &s2.act(b.coords()).unwrap())).unwrap().structure;
        let gb = pullback(&g, &b, &abs).unwrap();
        assert_eq!(moved, t.act(gb.coords()).unwrap());
    }
}

#[test]
fn delta_doubles_to_the_lift_difference() {
    let Swap { g, pair, torsor, .. } = s2xs2_swap();
    let base = torsor.basepoint().unwrap();
    let s2 = base.act(&torsor.group().group().generator(0)).unwrap();
    let p = problem(&pair, &pair, &g, &base, &s2);
    let r = delta(&p).unwrap();
    let expected = pullback(&g, r.lift2.class(), &pair).unwrap().try_sub(r.lift1.class()).unwrap();
    assert_eq!(r.delta.scale_i64(2), expected);
    assert_eq!(relative_to_absolute(r.lift1.class()), base.c1());
}

/// CP^2 with its vertices permuted.
fn relabeled_cp2(perm: &[Vertex; 9]) -> (SimplicialComplex, BTreeMap<Vertex, Vertex>) {
    let x = corpus::load("cp2").unwrap();
    let map: BTreeMap<Vertex, Vertex> = (0..9).map(|v| (v, perm[v as usize])).collect();
    (x.relabel(|v| map[&v]).unwrap(), map)
}

#[test]
fn transport_composes_along_a_chain_of_maps() {
    let x1 = corpus::load("cp2").unwrap();
    let (x2, m1) = relabeled_cp2(&[8, 7, 6, 5, 4, 3, 2, 1, 0]);
    let m2: BTreeMap<Vertex, Vertex> = (0..9).map(|v| (v, (v + 4) % 9)).collect();
    let x3 = x2.relabel(|v| m2[&v]).unwrap();
    let (a1, a2, a3) = (Arc::new(x1.clone()), Arc::new(x2.clone()), Arc::new(x3.clone()));
    let g1 = SimplicialMap::new(a1.clone(), a2.clone(), m1.clone()).unwrap();
    let g2 = SimplicialMap::new(a2, a3.clone(), m2.clone()).unwrap();
    let g21 = g1.then(&g2).unwrap();

    let p1 = pair(&x1, vertex_star(&x1, 0));
    let p2 = pair(&x2, vertex_star(&x2, m1[&0]));
    let p3 = pair(&x3, vertex_star(&x3, m2[&m1[&0]]));
    let (t1, t2, t3) = (torsor(&p1), torsor(&p2), torsor(&p3));
    let (b1, b2, b3) = (t1.basepoint().unwrap(), t2.basepoint().unwrap(), t3.basepoint().unwrap());
    for k in [-2i64, 0, 1, 5] {
        let s3 = b3.act(&t3.group().group().generator(0).scale_i64(k)).unwrap();
        let via_x2 = transport(&problem(&p2, &p3, &g2, &b2, &s3)).unwrap().structure;
        let stepwise = transport(&problem(&p1, &p2, &g1, &b1, &via_x2)).unwrap().structure;
        let direct = transport(&problem(&p1, &p3, &g21, &b1, &s3)).unwrap().structure;
        assert_eq!(stepwise, direct);
        let c1 = pullback(&g21, &s3.c1(), &p1.absolute_space()).unwrap();
        assert_eq!(direct.c1(), c1);
    }
}

#[test]
fn identity_transport_returns_the_structure() {
    let x = corpus::load("cp2").unwrap();
    let p = pair(&x, vertex_star(&x, 4));
    let t = torsor(&p);
    let id = SimplicialMap::identity(Arc::new(x));
    let base = t.basepoint().unwrap();
    let h = t.group().group().generator(0);
    for k in -2..=2 {
        let s2 = base.act(&h.scale_i64(k)).unwrap();
        let r = transport(&problem(&p, &p, &id, &base, &s2)).unwrap();
        assert_eq!(r.difference.d.coords(), &h.scale_i64(k));
        assert_eq!(r.structure, s2);
    }
    let r = transport(&problem(&p, &p, &id, &base, &base)).unwrap();
    assert!(r.difference.d.is_zero() && r.difference.delta.delta.is_zero());
}

#[test]
fn delta_moves_by_coboundaries_from_the_neighborhood() {
    let x = corpus::load("cp2").unwrap();
    let n = SimplicialComplex::from_simplices([[0, 1], [0, 2], [1, 2]].map(|e| Simplex::new(e).unwrap()));
    let p = pair(&x, n.clone());
    let t = torsor(&p);
    let id = SimplicialMap::identity(Arc::new(x.clone()));
    let base = t.basepoint().unwrap();
    let s2 = base.act(&t.group().group().generator(0)).unwrap();

    // u: a 1-cocycle on the loop N, extended by zero; its coboundary is a
    // relative cocycle in the kernel of j^*
    let u = Cochain::<Integer>::indicator(&x, &Simplex::new([0, 1]).unwrap()).unwrap();
    let du = u.coboundary(&x);
    let h2 = p.cohomology::<Integer>(2);
    let k = h2.class_of(&du).unwrap();
    assert!(!k.is_zero());
    assert!(relative_to_absolute(&k).is_zero());
    assert_eq!(restriction_hom::<Integer>(&p, 2).unwrap().kernel_generators().len(), 1);

    let lift1 = RelativeChernLift::choose(&p, &base).unwrap();
    let lift2 = RelativeChernLift::choose(&p, &s2).unwrap();
    let run = |l1: &Cochain<Integer>, l2: &Cochain<Integer>| {
        let mut q = problem(&p, &p, &id, &base, &s2);
        q.lifts = Lifts::User { lift1: l1.clone(), lift2: l2.clone() };
        transport(&q).unwrap()
    };
    let two_du = du.scale(&Integer::from(2));
    let r0 = run(lift1.cocycle(), lift2.cocycle());
    let r1 = run(lift1.cocycle(), &lift2.cocycle().add(&two_du));
    let r2 = run(&lift1.cocycle().add(&two_du), lift2.cocycle());
    let (d0, d1, d2) = (&r0.difference.delta.delta, &r1.difference.delta.delta, &r2.difference.delta.delta);
    assert_eq!(&d1.try_sub(d0).unwrap(), &k);
    assert_eq!(&d0.try_sub(d2).unwrap(), &k);
    assert_eq!(r0.difference.d, r1.difference.d);
    assert_eq!(r0.difference.d, r2.difference.d);
    assert_eq!(r0.structure, s2);

    // an odd shift cannot come from correlated lifts
    let mut q = problem(&p, &p, &id, &base, &s2);
    q.lifts = Lifts::User { lift1: lift1.cocycle().clone(), lift2: lift2.cocycle().add(&du) };
    assert!(matches!(transport(&q), Err(Error::IncompatibleLifts(_))));
}

#[test]
fn undersized_neighborhood_is_rejected() {
    let x = corpus::load("rp3xs1").unwrap();
    let p = pair(&x, vertex_star(&x, 0));
    assert!(p.cohomology::<Integer>(2).group().has_two_torsion());
    let t = torsor(&p);
    let base = t.basepoint().unwrap();
    let id = SimplicialMap::identity(Arc::new(x));
    match transport(&problem(&p, &p, &id, &base, &base)) {
        Err(Error::Hypotheses(names)) => assert!(names.contains("no_two_torsion")),
        other => panic!("expected a hypothesis failure, got {other:?}"),
    }
}

#[test]
fn four_sphere_lifts_are_zero() {
    let x = corpus::load("s4").unwrap();
    let p = pair(&x, vertex_star(&x, 0));
    let base = torsor(&p).basepoint().unwrap();
    let lift = RelativeChernLift::choose(&p, &base).unwrap();
    assert!(lift.class().is_zero());
    assert!(lift.cocycle().is_zero());
}
