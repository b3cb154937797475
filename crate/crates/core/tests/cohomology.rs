use std::sync::Arc;

use spinc::cohomology::*;
use spinc::{corpus, AbelianGroup, Cochain, Gf2, Integer, Simplex, SimplicialComplex, SimplicialMap, SubcomplexPair};

/// Integral cohomology of the corpus, as (rank, torsion) per degree.
fn standard_groups(name: &str) -> Vec<(usize, Vec<i64>)> {
    let z = |r: usize| (r, vec![]);
    match name {
        "s1" | "s1_6" => vec![z(1), z(1)],
        "s2" => vec![z(1), z(0), z(1)],
        "s3" => vec![z(1), z(0), z(0), z(1)],
        "s4" => vec![z(1), z(0), z(0), z(0), z(1)],
        "rp2" => vec![z(1), z(0), (0, vec![2])],
        "t2" => vec![z(1), z(2), z(1)],
        "klein" => vec![z(1), z(1), (0, vec![2])],
        "cp2" => vec![z(1), z(0), z(1), z(0), z(1)],
        "rp3" => vec![z(1), z(0), (0, vec![2]), z(1)],
        "s2xs2" => vec![z(1), z(0), z(2), z(0), z(1)],
        "t4" => vec![z(1), z(4), z(6), z(4), z(1)],
        "rp3xs1" => vec![z(1), z(1), (0, vec![2]), (1, vec![2]), z(1)],
        _ => panic!("no table entry for {name}"),
    }
}

/// Z/2 Betti numbers from the universal coefficient theorem.
fn mod2_dims(groups: &[(usize, Vec<i64>)]) -> Vec<usize> {
    let even = |t: &Vec<i64>| t.iter().filter(|d| *d % 2 == 0).count();
    (0..groups.len()).map(|k| groups[k].0 + even(&groups[k].1) + groups.get(k + 1).map_or(0, |g| even(&g.1))).collect()
}

#[test]
fn corpus_matches_standard_groups() {
    for name in corpus::NAMES.iter().filter(|n| **n != "t4") {
        let space = Space::absolute(corpus::load(name).unwrap());
        let table = standard_groups(name);
        let dims = mod2_dims(&table);
        for (k, (rank, torsion)) in table.iter().enumerate() {
            let torsion: Vec<Integer> = torsion.iter().map(|&d| d.into()).collect();
            let hz = space.cohomology::<Integer>(k);
            assert_eq!(**hz.group(), AbelianGroup::from_invariant_factors(*rank, &torsion), "{name} H^{k}(Z)");
            let h2 = space.cohomology::<Gf2>(k);
            assert_eq!(**h2.group(), AbelianGroup::elementary_two(dims[k]), "{name} H^{k}(Z2)");
        }
    }
}

#[test]
fn pair_with_itself_is_trivial() {
    let k = corpus::load("t2").unwrap();
    let space = Space::new(SubcomplexPair::new(k.clone(), k).unwrap());
    for d in 0..=2 {
        assert!(space.cohomology::<Integer>(d).group().is_trivial());
        assert!(space.cohomology::<Gf2>(d).group().is_trivial());
    }
}

#[test]
fn relative_cocycles_must_vanish_on_the_subcomplex() {
    let k = corpus::load("t2").unwrap();
    let edge = SimplicialComplex::from_simplices([k.simplices(1)[0].clone()]);
    let space = Space::new(SubcomplexPair::new(k.clone(), edge).unwrap());
    let h1 = space.cohomology::<Integer>(1);
    for z in h1.basis_cocycles() {
        assert!(z.vanishes_on(space.total(), space.sub()));
    }
    let abs = Space::absolute(k.clone());
    let g = abs.cohomology::<Integer>(1).generator(0).representative();
    if !g.vanishes_on(&k, space.sub()) {
        assert!(h1.class_of(&g).is_err());
    }
}

#[test]
fn class_and_representative_round_trip() {
    let k = corpus::load("klein").unwrap();
    let space = Space::absolute(k.clone());
    let h1 = space.cohomology::<Integer>(1);
    assert!(h1.class_of(&Cochain::zero(&k, 1)).unwrap().is_zero());
    let mut u = Cochain::<Integer>::zero(&k, 0);
    u = u.add(&Cochain::indicator(&k, &Simplex::vertex(k.vertices().nth(2).unwrap())).unwrap());
    assert!(h1.class_of(&u.coboundary(&k)).unwrap().is_zero());
    for (i, z) in h1.basis_cocycles().iter().enumerate() {
        assert_eq!(h1.class_of(z).unwrap(), h1.generator(i));
    }
    let h2 = space.cohomology::<Integer>(2);
    let x = h2.generator(0);
    assert_eq!(h2.class_of(&x.representative()).unwrap(), x);
    assert!(h1.class_of(&Cochain::indicator(&k, &k.simplices(1)[0]).unwrap()).is_err());
}

#[test]
fn pullbacks() {
    let t2 = Arc::new(corpus::load("t2").unwrap());
    let space = Space::absolute((*t2).clone());
    let h1 = space.cohomology::<Integer>(1);
    let id = SimplicialMap::identity(t2.clone());
    let constant = SimplicialMap::constant(t2.clone(), t2.clone(), 0).unwrap();
    for x in h1.generators() {
        assert_eq!(pullback(&id, &x, &space).unwrap(), x);
        assert!(pullback(&constant, &x, &space).unwrap().is_zero());
    }

    // hexagon wrapped twice around a triangle
    let hexagon = Arc::new(
        SimplicialComplex::parse("simplex 0 1\nsimplex 1 2\nsimplex 2 3\nsimplex 3 4\nsimplex 4 5\nsimplex 0 5")
            .unwrap(),
    );
    let triangle = Arc::new(SimplicialComplex::sphere_boundary(2));
    let wrap = SimplicialMap::new(hexagon.clone(), triangle.clone(), (0..6).map(|v| (v, v % 3)).collect()).unwrap();
    let (src, dst) = (Space::absolute((*hexagon).clone()), Space::absolute((*triangle).clone()));
    let g = dst.cohomology::<Integer>(1).generator(0);
    let pulled = pullback(&wrap, &g, &src).unwrap();
    let (hc, tc) = (hexagon.fundamental_cycle(1).unwrap(), triangle.fundamental_cycle(1).unwrap());
    assert_eq!(evaluate(&pulled, &hc).unwrap(), Integer::from(2) * evaluate(&g, &tc).unwrap());
}

#[test]
fn cup_products_on_the_torus_and_cp2() {
    let t2 = corpus::load("t2").unwrap();
    let space = Space::absolute(t2.clone());
    let fc = t2.fundamental_cycle(2).unwrap();
    let h1 = space.cohomology::<Integer>(1);
    let (a, b) = (h1.generator(0), h1.generator(1));
    let ab = evaluate(&cup(&a, &b).unwrap(), &fc).unwrap();
    assert_eq!(ab.magnitude(), &1u32.into());
    assert_eq!(evaluate(&cup(&a, &a).unwrap(), &fc).unwrap(), Integer::from(0));
    assert!(cup(&a, &h1.zero()).unwrap().is_zero());

    let cp2 = corpus::load("cp2").unwrap();
    let space = Space::absolute(cp2.clone());
    let h = space.cohomology::<Integer>(2).generator(0);
    let hh = evaluate(&cup(&h, &h).unwrap(), &cp2.fundamental_cycle(4).unwrap()).unwrap();
    assert_eq!(hh.magnitude(), &1u32.into());
}

#[test]
fn reduction_mod_two() {
    let cp2 = Space::absolute(corpus::load("cp2").unwrap());
    let h = cp2.cohomology::<Integer>(2).generator(0);
    assert!(!reduce_mod2(&h).is_zero());
    assert!(reduce_mod2(&h.scale_i64(2)).is_zero());
    assert!(reduce_mod2(&cp2.cohomology::<Integer>(2).zero()).is_zero());
}

#[test]
fn bockstein_on_the_projective_plane() {
    let space = Space::absolute(corpus::load("rp2").unwrap());
    let x = space.cohomology::<Gf2>(1).generator(0);
    // H^1(RP^2; Z) = 0 has nothing reducing to x, so x has no integral lift
    // and the Bockstein of x must be the nonzero element of H^2 = Z/2
    let lifts: Vec<_> = space.cohomology::<Integer>(1).group().torsion_elements().unwrap();
    assert!(lifts.iter().all(|y| reduce_mod2(&space.cohomology::<Integer>(1).class(y).unwrap()) != x));
    assert!(integral_lift(&x).is_none());
    let b = bockstein(&x);
    assert_eq!(b, space.cohomology::<Integer>(2).generator(0));
    assert!(bockstein(&space.cohomology::<Gf2>(1).zero()).is_zero());
    let w = space.cohomology::<Gf2>(2).generator(0);
    assert!(bockstein(&reduce_mod2(&integral_lift(&w).unwrap())).is_zero());
}

#[test]
fn bockstein_image_is_the_two_torsion() {
    for name in ["rp2", "klein", "rp3", "rp3xs1"] {
        let space = Space::absolute(corpus::load(name).unwrap());
        let dim = space.total().dim().unwrap();
        for k in 1..dim {
            let beta = bockstein_hom(&space, k).unwrap();
            let two_torsion = space.cohomology::<Integer>(k + 1).group().two_torsion_elements();
            for y in &two_torsion {
                assert!(beta.preimage(y).is_some(), "{name}: {y} not hit in degree {}", k + 1);
            }
            for x in beta.source().elements().unwrap() {
                assert!(beta.apply(&x).scale_i64(2).is_zero());
            }
        }
    }
}

#[test]
fn evaluation_on_spheres() {
    for n in 1..=4 {
        let s = SimplicialComplex::sphere_boundary(n + 1);
        let space = Space::absolute(s.clone());
        let fc = s.fundamental_cycle(n).unwrap();
        let g = space.cohomology::<Integer>(n).generator(0);
        assert_eq!(evaluate(&g, &fc).unwrap().magnitude(), &1u32.into());
        let u = Cochain::<Integer>::indicator(&s, &s.simplices(n - 1)[0]).unwrap();
        assert_eq!(u.coboundary(&s).evaluate(&fc), Integer::from(0));
    }
}

#[test]
fn wu_classes() {
    let expect = [("s4", false), ("cp2", true), ("s2xs2", false), ("rp3xs1", false)];
    for (name, nonzero) in expect {
        let space = Space::absolute(corpus::load(name).unwrap());
        let w2 = wu_class_w2(&space).unwrap();
        assert_eq!(!w2.is_zero(), nonzero, "{name}");
        assert!(w3(&w2).is_zero());
    }
    let rp2 = Space::absolute(corpus::load("rp2").unwrap());
    assert!(wu_class_w2(&rp2).is_err());
}
