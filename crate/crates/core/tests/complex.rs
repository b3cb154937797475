use proptest::prelude::*;
use spinc::complex::Chain;
use spinc::{corpus, Integer, Simplex, SimplicialComplex, SimplicialMap};
use std::sync::Arc;

fn product_is_zero(k: &SimplicialComplex, d: usize) -> bool {
    let (a, b) = (k.boundary_matrix(d - 1).unwrap(), k.boundary_matrix(d).unwrap());
    (&a * &b).is_zero()
}

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..5), 1..8)
        .prop_map(|facets| SimplicialComplex::from_simplices(facets.into_iter().map(|f| Simplex::new(f).unwrap())))
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(k in small_complex()) {
        let dim = k.dim().unwrap();
        for d in 2..=dim {
            prop_assert!(product_is_zero(&k, d));
        }
    }

    #[test]
    fn printing_round_trips(k in small_complex()) {
        prop_assert_eq!(SimplicialComplex::parse(&k.to_scx()).unwrap(), k);
    }

    #[test]
    fn closed_star_contains_its_core(k in small_complex(), v in 0u32..7) {
        let core = SimplicialComplex::from_simplices(
            k.vertices().filter(|&u| u == v).map(Simplex::vertex),
        );
        let star = k.closed_star(&core).unwrap();
        prop_assert!(core.is_subcomplex_of(&star));
        prop_assert!(star.is_subcomplex_of(&k));
    }

    #[test]
    fn face_closure_is_idempotent(k in small_complex()) {
        let again = SimplicialComplex::from_simplices(k.iter().cloned());
        prop_assert_eq!(again, k);
    }
}

#[test]
fn corpus_boundaries_square_to_zero() {
    for name in corpus::NAMES {
        let k = corpus::load(name).unwrap();
        for d in 2..=k.dim().unwrap() {
            assert!(product_is_zero(&k, d), "{name} in degree {d}");
        }
    }
}

#[test]
fn three_sphere_boundary_matrix() {
    let k = SimplicialComplex::sphere_boundary(4);
    assert_eq!(k.f_vector(), vec![5, 10, 10, 5]);
    let b = k.boundary_matrix(3).unwrap();
    assert_eq!((b.rows(), b.cols()), (10, 5));
    for j in 0..5 {
        let col = b.column(j);
        assert_eq!(col.iter().filter(|x| **x != Integer::from(0)).count(), 4);
        assert!(col.iter().all(|x| x.magnitude() <= &1u32.into()));
    }
}

#[test]
fn parse_reports_bad_input() {
    let k = SimplicialComplex::parse("# triangle\nsimplex 2 0 1\n").unwrap();
    assert_eq!(k.f_vector(), vec![3, 3, 1]);
    assert!(SimplicialComplex::parse("simplex 0 0 1").is_err());
    assert!(SimplicialComplex::parse("simplex 0 x").is_err());
    assert!(SimplicialComplex::parse("face 0 1").is_err());
}

#[test]
fn fundamental_cycles() {
    let s3 = SimplicialComplex::sphere_boundary(4);
    let c = s3.fundamental_cycle(3).unwrap();
    assert!(c.coefficients().iter().all(|x| x.magnitude() == &1u32.into()));
    assert!(c.boundary(&s3).coefficients().iter().all(|x| *x == Integer::from(0)));
    assert_eq!(c.coefficients()[0], Integer::from(1));

    assert!(corpus::load("rp2").unwrap().fundamental_cycle(2).is_err());
    assert!(SimplicialComplex::full_simplex(2).fundamental_cycle(2).is_err());
}

#[test]
fn fundamental_cycle_ignores_input_order() {
    let text = corpus::source("cp2").unwrap();
    let mut lines: Vec<&str> = text.lines().filter(|l| l.starts_with("simplex")).collect();
    lines.reverse();
    let shuffled: Vec<String> = lines
        .iter()
        .map(|l| {
            let mut words: Vec<&str> = l.split_whitespace().collect();
            words[1..].reverse();
            words.join(" ")
        })
        .collect();
    let a = corpus::load("cp2").unwrap();
    let b = SimplicialComplex::parse(&shuffled.join("\n")).unwrap();
    assert_eq!(a, b);
    let (ca, cb): (Chain, Chain) = (a.fundamental_cycle(4).unwrap(), b.fundamental_cycle(4).unwrap());
    assert_eq!(ca.coefficients(), cb.coefficients());
}

#[test]
fn vertex_stars_collapse_but_closed_surfaces_do_not() {
    for name in corpus::NAMES {
        let k = corpus::load(name).unwrap();
        let v = SimplicialComplex::from_simplices([Simplex::vertex(k.vertices().next().unwrap())]);
        let star = k.closed_star(&v).unwrap();
        assert!(star.collapses_to_dim(1).collapsed, "{name}");
    }
    let s2 = SimplicialComplex::sphere_boundary(3);
    let cert = s2.collapses_to_dim(1);
    assert!(!cert.collapsed);
    assert!(cert.log.is_empty());
}

#[test]
fn simplicial_maps_are_validated() {
    let edge = Arc::new(SimplicialComplex::full_simplex(1));
    let square = Arc::new(SimplicialComplex::parse("simplex 0 1\nsimplex 1 2\nsimplex 2 3\nsimplex 0 3").unwrap());
    let ok = SimplicialMap::parse_vertex_map("map 0 0\nmap 1 1").unwrap();
    assert!(SimplicialMap::new(edge.clone(), square.clone(), ok).is_ok());
    let bad = SimplicialMap::parse_vertex_map("map 0 0\nmap 1 2").unwrap();
    assert!(SimplicialMap::new(edge.clone(), square.clone(), bad).is_err());
    assert!(SimplicialMap::constant(edge, square, 3).is_ok());
}
