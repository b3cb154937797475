#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use serde_json::Value;
use spinc::cohomology::{wu_class_w2, Space};
use spinc::structures::SpincTorsor;
use spinc::transport::RelativeChernLift;
use spinc::{Cochain, GroupElement, Integer, Simplex, SimplicialComplex, SimplicialMap, SubcomplexPair};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

pub fn spinc(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_spinc")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn corpus_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.scx"))
}

pub fn corpus_arg(name: &str) -> String {
    corpus_file(name).to_string_lossy().into_owned()
}

pub fn vertex_star(k: &SimplicialComplex, v: u32) -> SimplicialComplex {
    k.closed_star(&SimplicialComplex::from_simplices([Simplex::vertex(v)])).unwrap()
}

fn offset_json(x: &GroupElement) -> String {
    serde_json::json!({"torsor": "spinc", "offset": x}).to_string()
}

/// A transport problem directory for `g: X1 -> X2`.
pub struct Bundle {
    pub x1: SimplicialComplex,
    pub n1: SimplicialComplex,
    pub x2: SimplicialComplex,
    pub n2: SimplicialComplex,
    pub g: SimplicialMap,
}

impl Bundle {
    /// `g = id` on `x` with `N = n` on both sides.
    pub fn identity(x: &SimplicialComplex, n: &SimplicialComplex) -> Self {
        Bundle {
            x1: x.clone(),
            n1: n.clone(),
            x2: x.clone(),
            n2: n.clone(),
            g: SimplicialMap::identity(Arc::new(x.clone())),
        }
    }

    pub fn torsors(&self) -> (Arc<SpincTorsor>, Arc<SpincTorsor>) {
        let t = |x: &SimplicialComplex| {
            let s = Space::absolute(x.clone());
            SpincTorsor::new(&s, wu_class_w2(&s).unwrap()).unwrap()
        };
        (t(&self.x1), t(&self.x2))
    }

    /// Writes the bundle with the given offsets (flat coordinates).
    pub fn write(&self, dir: &Path, s1: &[i64], s2: &[i64]) {
        let (t1, t2) = self.torsors();
        let coords = |v: &[i64]| v.iter().map(|&c| Integer::from(c)).collect::<Vec<_>>();
        std::fs::write(dir.join("X1.scx"), self.x1.to_scx()).unwrap();
        std::fs::write(dir.join("N1.scx"), self.n1.to_scx()).unwrap();
        std::fs::write(dir.join("X2.scx"), self.x2.to_scx()).unwrap();
        std::fs::write(dir.join("N2.scx"), self.n2.to_scx()).unwrap();
        std::fs::write(dir.join("g.smap"), self.g.to_smap()).unwrap();
        std::fs::write(dir.join("s1.json"), offset_json(&t1.group().group().from_coords(&coords(s1)))).unwrap();
        std::fs::write(dir.join("s2.json"), offset_json(&t2.group().group().from_coords(&coords(s2)))).unwrap();
    }

    /// Writes the engine's lifts, the second one moved by `shift`.
    pub fn write_lifts(&self, dir: &Path, s1: &[i64], s2: &[i64], shift: Option<&Cochain<Integer>>) {
        let (t1, t2) = self.torsors();
        let coords = |v: &[i64]| v.iter().map(|&c| Integer::from(c)).collect::<Vec<_>>();
        let p1 = Space::new(SubcomplexPair::new(self.x1.clone(), self.n1.clone()).unwrap());
        let p2 = Space::new(SubcomplexPair::new(self.x2.clone(), self.n2.clone()).unwrap());
        let s1 = t1.structure(&t1.group().group().from_coords(&coords(s1))).unwrap();
        let s2 = t2.structure(&t2.group().group().from_coords(&coords(s2))).unwrap();
        let l1 = RelativeChernLift::choose(&p1, &s1).unwrap().cocycle().clone();
        let mut l2 = RelativeChernLift::choose(&p2, &s2).unwrap().cocycle().clone();
        if let Some(u) = shift {
            l2 = l2.add(u);
        }
        std::fs::write(dir.join("lift1.cyc"), l1.to_cyc(&self.x1)).unwrap();
        std::fs::write(dir.join("lift2.cyc"), l2.to_cyc(&self.x2)).unwrap();
    }
}
