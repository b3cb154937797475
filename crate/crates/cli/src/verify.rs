use std::path::Path;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use spinc::cohomology::{bockstein, bockstein_hom, cup, evaluate, pairing_matrix, reduce_mod2, w3, wu_class_w2, Space};
use spinc::linalg::{rank_f2, smith_normal_form};
use spinc::structures::{alpha, SpinTorsor, SpincTorsor};
use spinc::{corpus, Gf2, GroupElement, Integer, Matrix, Simplex, SimplicialComplex};

use crate::args::VerifyArgs;
use crate::commands::load_complex;
use crate::error::CliResult;

struct Checks {
    subject: String,
    rows: Vec<Value>,
}

impl Checks {
    fn new(subject: impl Into<String>) -> Self {
        Checks { subject: subject.into(), rows: Vec::new() }
    }

    fn record(&mut self, check: &str, pass: bool) {
        self.rows.push(json!({"subject": self.subject, "check": check, "pass": pass}));
    }

    /// Records a check whose evaluation may fail; a failure counts as a miss.
    fn attempt(&mut self, check: &str, f: impl FnOnce() -> spinc::Result<bool>) {
        let pass = f().unwrap_or(false);
        self.record(check, pass);
    }
}

fn boundaries_vanish(k: &SimplicialComplex) -> bool {
    let dim = k.dim().unwrap_or(0);
    (2..=dim).all(|d| match (k.boundary_matrix(d - 1), k.boundary_matrix(d)) {
        (Ok(a), Ok(b)) => (&a * &b).is_zero(),
        _ => false,
    })
}

fn universal_coefficients(space: &Arc<Space>) -> bool {
    let dim = space.total().dim().unwrap_or(0);
    let even = |k: usize| {
        if k > dim {
            return 0;
        }
        let two = Integer::from(2);
        space.cohomology::<Integer>(k).group().torsion().iter().filter(|d| (*d % &two) == Integer::from(0)).count()
    };
    (0..=dim).all(|k| {
        let z = space.cohomology::<Integer>(k).group().rank() + even(k) + even(k + 1);
        space.cohomology::<Gf2>(k).group().num_generators() == z
    })
}

fn check_complex(name: &str, k: &SimplicialComplex) -> Vec<Value> {
    let mut c = Checks::new(name);
    let space = Space::absolute(k.clone());
    c.record("boundary_squares_to_zero", boundaries_vanish(k));
    c.record("universal_coefficients", universal_coefficients(&space));
    if k.dim().is_some_and(|d| d >= 2) {
        c.attempt("bockstein_image_is_two_torsion", || {
            let beta = bockstein_hom(&space, 1)?;
            let target = space.cohomology::<Integer>(2).group().two_torsion_elements();
            Ok(target.iter().all(|y| beta.preimage(y).is_some()))
        });
    }
    if k.dim() == Some(4) && k.fundamental_cycle(4).is_ok() {
        check_four_manifold(&mut c, &space);
    }
    c.rows
}

fn sample(group: &Arc<spinc::AbelianGroup>) -> Vec<GroupElement> {
    if let Ok(all) = group.elements() {
        return all;
    }
    let mut out = group.torsion_elements().unwrap_or_default();
    for g in group.generators() {
        out.push(g.scale_i64(3));
        out.push(g.scale_i64(-2));
    }
    out
}

fn check_four_manifold(c: &mut Checks, space: &Arc<Space>) {
    let fc = match space.total().fundamental_cycle(4) {
        Ok(fc) => fc,
        Err(_) => return c.record("fundamental_cycle", false),
    };
    c.attempt("pairing_nondegenerate", || {
        let p = pairing_matrix::<Gf2>(space, &fc, 2)?;
        Ok(rank_f2(&p) == p.rows())
    });
    let w2 = match wu_class_w2(space) {
        Ok(w) => w,
        Err(_) => return c.record("wu_class", false),
    };
    c.attempt("wu_relation", || {
        for x in space.cohomology::<Gf2>(2).generators() {
            if evaluate(&cup(&w2, &x)?, &fc)? != evaluate(&cup(&x, &x)?, &fc)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.record("w3_zero", w3(&w2).is_zero());

    let (spin, spinc) = match (SpinTorsor::new(space, w2.clone()), SpincTorsor::new(space, w2.clone())) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return c.record("torsors", false),
    };
    c.record("spin_exists_iff_w2_zero", spin.exists() == w2.is_zero());
    c.record("spinc_exists_iff_w3_zero", spinc.exists() == w3(&w2).is_zero());
    if !spinc.exists() {
        return;
    }
    let h2 = spinc.group().clone();
    let elements = sample(h2.group());
    c.attempt("torsor_action", || {
        let base = spinc.basepoint()?;
        for a in &elements {
            let s = base.act(a)?;
            let a_class = h2.class(a)?;
            let ok = base.difference(&s)? == *a
                && (s == base) == a.is_zero()
                && s.c1() == &base.c1() + &a_class.scale_i64(2)
                && reduce_mod2(&s.c1()) == w2
                && h2.class(&base.difference(&s)?)?.scale_i64(2) == &s.c1() - &base.c1();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.attempt("conjugation", || {
        let base = spinc.basepoint()?;
        for a in &elements {
            let s = base.act(a)?;
            let conj = s.conjugate();
            if conj.conjugate() != s
                || conj.c1() != -&s.c1()
                || base.act(a)?.conjugate() != base.conjugate().act(&-a)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.attempt("fixed_set_is_image_of_alpha", || {
        for s in spinc.enumerate()?.structures {
            let fixed = s.is_conjugation_invariant();
            if fixed != s.c1().is_zero() || fixed != s.in_image_of_alpha(&spin)? || (fixed && !spin.exists()) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    if spin.exists() {
        c.attempt("alpha_equivariance", || {
            let all = spin.enumerate()?;
            for s in &all {
                for t in &all {
                    let lhs = alpha(s, &spinc)?.difference(&alpha(t, &spinc)?)?;
                    let u = spin.group().class(&s.difference(t)?)?;
                    if lhs != *bockstein(&u).coords() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
    }
}

fn random_checks(seed: u64) -> Vec<Value> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut c = Checks::new(format!("random seed {seed}"));
    let mut complexes_ok = true;
    for _ in 0..20 {
        let facets = (0..rng.gen_range(1..8)).map(|_| {
            let size = rng.gen_range(1..=5);
            let verts: std::collections::BTreeSet<u32> = (0..size).map(|_| rng.gen_range(0..8)).collect();
            Simplex::new(verts).expect("sets have distinct vertices")
        });
        complexes_ok &= boundaries_vanish(&SimplicialComplex::from_simplices(facets.collect::<Vec<_>>()));
    }
    c.record("boundary_squares_to_zero", complexes_ok);
    let mut smith_ok = true;
    for _ in 0..50 {
        let (r, k) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let m: Matrix<Integer> = Matrix::from_i64_rows(&rows);
        let s = smith_normal_form(&m);
        let one = Integer::from(1);
        smith_ok &= &(&s.u * &m) * &s.v == s.d
            && s.u.determinant().magnitude() == one.magnitude()
            && s.v.determinant().magnitude() == one.magnitude()
            && s.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]) == Integer::from(0));
    }
    c.record("smith_identities", smith_ok);
    c.rows
}

pub fn run(a: &VerifyArgs) -> CliResult<(Value, bool)> {
    let complexes: Vec<(&str, SimplicialComplex)> = corpus::NAMES
        .iter()
        .map(|&name| {
            let k = match &a.corpus {
                Some(dir) => load_complex(&Path::new(dir).join(format!("{name}.scx")))?,
                None => corpus::load(name)?,
            };
            Ok((name, k))
        })
        .collect::<CliResult<_>>()?;
    let mut rows: Vec<Value> = std::thread::scope(|scope| {
        let handles: Vec<_> = complexes.iter().map(|(name, k)| scope.spawn(move || check_complex(name, k))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("checks do not panic")).collect()
    });
    if let Some(seed) = a.seed {
        rows.extend(random_checks(seed));
    }
    let failed = rows.iter().filter(|r| r["pass"] == false).count();
    let report = json!({"passed": rows.len() - failed, "failed": failed, "checks": rows});
    Ok((report, failed == 0))
}
