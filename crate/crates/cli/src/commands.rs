use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use spinc::cohomology::{pairing_matrix, w3, wu_class_w2, CohomologyClass, Space};
use spinc::linalg::rank_f2;
use spinc::structures::{alpha, SpinTorsor, SpincTorsor};
use spinc::{Cochain, EuclideanRing, Gf2, Integer, Matrix, SimplicialComplex, SubcomplexPair};

use crate::args::{ClassArgs, Coeff, CohomologyArgs, StructureArgs};
use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_complex(path: &Path) -> CliResult<SimplicialComplex> {
    SimplicialComplex::parse(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn int(x: &Integer) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn matrix<R: EuclideanRing>(m: &Matrix<R>) -> Value {
    let rows: Vec<Value> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| int(&m[(i, j)].to_integer())).collect()).collect();
    Value::Array(rows)
}

pub fn cocycle<R: EuclideanRing>(k: &SimplicialComplex, z: &Cochain<R>) -> Value {
    let entries: Vec<Value> = k
        .simplices(z.degree())
        .iter()
        .zip(z.values())
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| json!({"simplex": s.vertices(), "value": int(&v.to_integer())}))
        .collect();
    Value::Array(entries)
}

fn group_report<R: EuclideanRing>(space: &Arc<Space>, k: usize, basis: bool) -> Value {
    let h = space.cohomology::<R>(k);
    let mut v = serde_json::to_value(&**h.group()).expect("groups serialize");
    if basis {
        v["basis"] = h.basis_cocycles().iter().map(|z| cocycle(space.total(), z)).collect();
    }
    v
}

pub fn cohomology(a: &CohomologyArgs) -> CliResult<Value> {
    let k = load_complex(&a.complex)?;
    let pair = match &a.sub {
        Some(p) => SubcomplexPair::new(k, load_complex(p)?)?,
        None => SubcomplexPair::absolute(k),
    };
    let space = Space::new(pair);
    let report = |d: usize| match a.coeff {
        Coeff::Z => group_report::<Integer>(&space, d, a.basis),
        Coeff::Z2 => group_report::<Gf2>(&space, d, a.basis),
    };
    Ok(match a.degree {
        Some(d) => report(d),
        None => {
            let top = space.total().dim().unwrap_or(0);
            let degrees: Vec<Value> = (0..=top)
                .map(|d| {
                    let mut v = json!({"degree": d});
                    v.as_object_mut().unwrap().extend(report(d).as_object().unwrap().clone());
                    v
                })
                .collect();
            json!({"coeff": a.coeff_name(), "degrees": degrees})
        }
    })
}

impl CohomologyArgs {
    fn coeff_name(&self) -> &'static str {
        match self.coeff {
            Coeff::Z => "Z",
            Coeff::Z2 => "Z2",
        }
    }
}

/// `w2` for a complex, from the Wu formula or a user cocycle, and the
/// pairing data when a fundamental class exists.
pub struct ClassData {
    pub space: Arc<Space>,
    pub w2: CohomologyClass<Gf2>,
    pub source: &'static str,
    pub pairing: Option<Value>,
}

pub fn class_data(a: &ClassArgs) -> CliResult<ClassData> {
    let k = load_complex(&a.complex)?;
    let space = Space::absolute(k.clone());
    let oriented = k.dim() == Some(4) && k.fundamental_cycle(4).is_ok();
    let wu = if oriented { Some(wu_class_w2(&space)) } else { None };
    let pairing = if oriented { Some(pairing_report(&space)?) } else { None };
    let (w2, source) = match (&a.w2, wu) {
        (Some(path), wu) => {
            let z = Cochain::<Gf2>::parse(&read(path)?, &k, 2)?;
            let w2 = space.cohomology::<Gf2>(2).class_of(&z)?;
            if let Some(Ok(v)) = wu {
                let same = if v == w2 { "agrees with" } else { "differs from" };
                eprintln!("warning: using the supplied w2, which {same} the Wu class");
            }
            (w2, "user")
        }
        (None, Some(Ok(v))) => (v, "wu"),
        (None, Some(Err(e))) => {
            return Err(CliError::Inapplicable(format!("{e}; supply w2 with --w2")));
        }
        (None, None) => {
            return Err(CliError::Inapplicable(
                "not a closed oriented 4-complex, so w2 cannot be derived from the Wu formula; supply it with --w2"
                    .into(),
            ));
        }
    };
    Ok(ClassData { space, w2, source, pairing })
}

fn pairing_report(space: &Arc<Space>) -> CliResult<Value> {
    let fc = space.total().fundamental_cycle(4)?;
    let pz = pairing_matrix::<Integer>(space, &fc, 2)?;
    let p2 = pairing_matrix::<Gf2>(space, &fc, 2)?;
    let unimodular = pz.rows() == 0 || pz.determinant().magnitude() == &1u32.into();
    Ok(json!({
        "Z": matrix(&pz),
        "Z2": matrix(&p2),
        "nondegenerate": rank_f2(&p2) == p2.rows(),
        "unimodular": unimodular,
    }))
}

pub fn charclasses(a: &ClassArgs) -> CliResult<Value> {
    let data = class_data(a)?;
    let big_w3 = w3(&data.w2);
    Ok(json!({
        "w2": {"source": data.source, "class": data.w2.coords(), "zero": data.w2.is_zero()},
        "W3": {"class": big_w3.coords(), "zero": big_w3.is_zero()},
        "pairing": data.pairing,
    }))
}

pub fn structures(a: &StructureArgs) -> CliResult<Value> {
    let data = class_data(&a.classes)?;
    let space = &data.space;
    let spin = SpinTorsor::new(space, data.w2.clone())?;
    let spinc = match &a.twist {
        None => SpincTorsor::new(space, data.w2.clone())?,
        Some(coords) => {
            let group = space.cohomology::<Integer>(2);
            let coords: Vec<Integer> = coords.iter().map(|&c| c.into()).collect();
            if coords.len() != group.group().num_generators() {
                return Err(CliError::Input(format!("--twist needs {} coordinates", group.group().num_generators())));
            }
            SpincTorsor::with_twist(space, data.w2.clone(), &group.group().from_coords(&coords))?
        }
    };

    let spin_report = if spin.exists() {
        let all = spin.enumerate()?;
        json!({
            "exists": true,
            "count": int(&spin.size()),
            "structures": all.iter().map(|s| json!({"offset": s.offset()})).collect::<Vec<_>>(),
        })
    } else {
        json!({"exists": false, "count": 0, "structures": []})
    };

    let spinc_report = if spinc.exists() {
        let listing = spinc.enumerate()?;
        let rows: Vec<Value> = listing
            .structures
            .iter()
            .map(|s| -> CliResult<Value> {
                Ok(json!({
                    "offset": s.offset(),
                    "c1": s.c1().coords(),
                    "conjugate": s.conjugate().offset(),
                    "conjugation_invariant": s.is_conjugation_invariant(),
                    "c1_zero": s.c1().is_zero(),
                    "in_image_of_alpha": s.in_image_of_alpha(&spin)?,
                }))
            })
            .collect::<CliResult<_>>()?;
        json!({
            "exists": true,
            "chern_base": spinc.chern_base().map(|c| c.coords()),
            "twist": spinc.twist(),
            "default_twist": spinc.has_default_twist(),
            "free_rank": listing.free_rank,
            "complete": listing.complete,
            "structures": rows,
        })
    } else {
        json!({"exists": false, "structures": []})
    };

    let alpha_report: Vec<Value> = if spin.exists() && spinc.exists() {
        spin.enumerate()?
            .iter()
            .map(|s| Ok(json!({"spin": s.offset(), "spinc": alpha(s, &spinc)?.offset()})))
            .collect::<CliResult<_>>()?
    } else {
        Vec::new()
    };

    Ok(json!({
        "w2": {"source": data.source, "class": data.w2.coords()},
        "spin": spin_report,
        "spinc": spinc_report,
        "alpha": alpha_report,
    }))
}
