use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};
use spinc::cohomology::{wu_class_w2, Space};
use spinc::structures::{SpincStructure, SpincTorsor};
use spinc::transport::{transport, verify_hypotheses, Lifts, TransportProblem};
use spinc::{Cochain, Integer, SimplicialMap, SubcomplexPair};

use crate::args::TransportArgs;
use crate::commands::{load_complex, read};
use crate::error::{CliError, CliResult};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntLiteral {
    Number(i64),
    Text(String),
}

impl IntLiteral {
    fn value(&self) -> CliResult<Integer> {
        match self {
            IntLiteral::Number(n) => Ok((*n).into()),
            IntLiteral::Text(s) => s.parse().map_err(|_| CliError::Input(format!("not an integer: {s}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OffsetLiteral {
    free: Vec<IntLiteral>,
    torsion: Vec<IntLiteral>,
}

/// `{"torsor":"spinc","offset":{"free":[..],"torsion":[..]}}`
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureLiteral {
    torsor: String,
    offset: OffsetLiteral,
}

fn load_structure(path: &Path, torsor: &Arc<SpincTorsor>) -> CliResult<SpincStructure> {
    let lit: StructureLiteral =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if lit.torsor != "spinc" {
        return Err(CliError::Input(format!("{}: only spinc structures can be transported", path.display())));
    }
    let ints = |v: &[IntLiteral]| v.iter().map(IntLiteral::value).collect::<CliResult<Vec<_>>>();
    let offset = torsor.group().group().element(ints(&lit.offset.free)?, ints(&lit.offset.torsion)?)?;
    Ok(torsor.structure(&offset)?)
}

fn load_pair(dir: &Path, x: &str, n: &str) -> CliResult<Arc<Space>> {
    let total = load_complex(&dir.join(x))?;
    let sub = load_complex(&dir.join(n))?;
    Ok(Space::new(SubcomplexPair::new(total, sub)?))
}

fn torsor(pair: &Arc<Space>) -> CliResult<Arc<SpincTorsor>> {
    let abs = pair.absolute_space();
    Ok(SpincTorsor::new(&abs, wu_class_w2(&abs)?)?)
}

pub fn load_problem(dir: &Path, strict: bool) -> CliResult<TransportProblem> {
    let pair1 = load_pair(dir, "X1.scx", "N1.scx")?;
    let pair2 = load_pair(dir, "X2.scx", "N2.scx")?;
    let vertex_map = SimplicialMap::parse_vertex_map(&read(&dir.join("g.smap"))?)?;
    let g = SimplicialMap::new(Arc::new(pair1.total().clone()), Arc::new(pair2.total().clone()), vertex_map)?;
    let s1_ref = load_structure(&dir.join("s1.json"), &torsor(&pair1)?)?;
    let s2 = load_structure(&dir.join("s2.json"), &torsor(&pair2)?)?;
    let (l1, l2) = (dir.join("lift1.cyc"), dir.join("lift2.cyc"));
    let lifts = match (l1.exists(), l2.exists()) {
        (false, false) => Lifts::Engine,
        (true, true) => Lifts::User {
            lift1: Cochain::parse(&read(&l1)?, pair1.total(), 2)?,
            lift2: Cochain::parse(&read(&l2)?, pair2.total(), 2)?,
        },
        _ => return Err(CliError::Input("supply both lift1.cyc and lift2.cyc, or neither".into())),
    };
    Ok(TransportProblem { pair1, pair2, g, s1_ref, s2, lifts, strict })
}

pub fn run(a: &TransportArgs) -> CliResult<Value> {
    let p = load_problem(&a.bundle, a.strict)?;
    let report = verify_hypotheses(&p)?;
    let hypotheses = serde_json::to_value(&report).expect("reports serialize");
    let failing = report.blocking_failures(p.strict);
    if !failing.is_empty() {
        return Err(CliError::Hypotheses {
            message: format!("transport hypotheses fail: {}", failing.join(", ")),
            report: Some(hypotheses),
        });
    }
    let r = transport(&p)?;
    let diff = &r.difference;
    Ok(json!({
        "hypotheses": hypotheses,
        "lifts": if matches!(p.lifts, Lifts::User { .. }) { "user" } else { "engine" },
        "repaired": diff.delta.repaired,
        "delta": diff.delta.delta.coords(),
        "d": diff.d.coords(),
        "ambiguity": diff.ambiguity,
        "transported_offset": r.structure.offset(),
        "transported_c1": r.structure.c1().coords(),
    }))
}
