use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spinc", version, about = "Spin and spin^c structures on finite simplicial complexes")]
pub struct Cli {
    /// Print machine-readable JSON instead of the text rendering.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology groups of a complex or pair.
    Cohomology(CohomologyArgs),
    /// w2, W3 and the intersection pairing of a closed oriented 4-complex.
    Charclasses(ClassArgs),
    /// Spin and spin^c structures, conjugation and the map alpha.
    Structures(StructureArgs),
    /// Transport a spin^c structure along a simplicial map.
    Transport(TransportArgs),
    /// Run the invariant suite over the corpus.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    #[value(name = "Z")]
    Z,
    #[value(name = "Z2")]
    Z2,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// Subcomplex for relative cohomology.
    #[arg(long)]
    pub sub: Option<PathBuf>,
    /// Single degree; all degrees when omitted.
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, value_enum, default_value = "Z")]
    pub coeff: Coeff,
    /// Also print representative cocycles of the generators.
    #[arg(long)]
    pub basis: bool,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[arg(long)]
    pub complex: PathBuf,
    /// A mod-2 2-cocycle (.cyc) to use as w2 instead of the Wu class.
    #[arg(long)]
    pub w2: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    #[command(flatten)]
    pub classes: ClassArgs,
    /// Conjugation twist t0 as comma-separated coordinates (free first).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub twist: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct TransportArgs {
    /// Directory with X1.scx, N1.scx, X2.scx, N2.scx, g.smap, s1.json, s2.json
    /// and optionally lift1.cyc, lift2.cyc.
    pub bundle: PathBuf,
    /// Also require collapse certificates for both neighborhoods.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Directory with the corpus .scx files; the bundled corpus when omitted.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Also check random small complexes and matrices from this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}
