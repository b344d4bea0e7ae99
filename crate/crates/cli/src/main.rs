mod render;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use molekul::numsgp::interval_semigroup;
use molekul::primary::{molecule_elementary, PrimeSetDescriptor, PrimaryMonoidSpec};
use molekul::puiseux::{fifths_over_dyadics, stable_stage, PrimePool, PuiseuxMonoidFG};
use molekul::strip::{strip_row, PointClass};
use molekul::{verify, Error, FactorizationGraph, MoleculeMode, NumericalSemigroup, Rational};

const DEFAULT_LIMIT: usize = 1_000_000;

#[derive(Parser)]
#[command(name = "molekul", version, about = "Atoms, factorizations and molecules of numerical semigroups and Puiseux monoids")]
struct Cli {
    /// Output format. `dot` applies to `ns graph`, `svg` to `ns strip`.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical semigroups, given as comma-separated generators.
    #[command(subcommand)]
    Ns(NsAction),
    /// Finitely generated Puiseux monoids, given as comma-separated rationals.
    #[command(subcommand)]
    Pm(PmAction),
    /// Primary Puiseux monoids described by a spec file.
    #[command(subcommand)]
    Primary(PrimaryAction),
    /// Named constructions.
    #[command(subcommand)]
    Construct(ConstructAction),
    /// Run a property-verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum NsAction {
    Atoms { gens: String },
    Frobenius { gens: String },
    Gaps { gens: String },
    Apery {
        gens: String,
        #[arg(long)]
        m: u64,
    },
    Factorizations {
        gens: String,
        #[arg(long)]
        x: u64,
    },
    Lengths {
        gens: String,
        #[arg(long)]
        x: u64,
    },
    Betti { gens: String },
    Molecules {
        gens: String,
        /// Decide uniqueness through Betti elements instead of counting.
        #[arg(long)]
        betti: bool,
    },
    Graph {
        gens: String,
        #[arg(long)]
        x: u64,
    },
    /// Classify 1..=limit for each semigroup, one row per generator list.
    Strip {
        #[arg(required = false)]
        gens: Vec<String>,
        #[arg(long)]
        limit: u64,
        /// Write the chart here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        palette: PaletteArgs,
    },
}

#[derive(Args)]
struct PaletteArgs {
    #[arg(long, default_value = "blue")]
    atom_color: String,
    #[arg(long, default_value = "red")]
    molecule_color: String,
    #[arg(long, default_value = "black")]
    non_molecule_color: String,
    #[arg(long, default_value = "lightgray")]
    gap_color: String,
}

#[derive(Subcommand)]
enum PmAction {
    Atoms { gens: String },
    Molecules { gens: String },
    Reduce { gens: String },
    Factorizations {
        gens: String,
        #[arg(long)]
        x: Rational,
    },
    /// Whether the two monoids are isomorphic, and the scaling if so.
    Iso {
        gens: String,
        #[arg(long)]
        other: String,
        /// Also test whether multiplication by this rational is a homomorphism.
        #[arg(long)]
        q: Option<Rational>,
    },
}

#[derive(Args)]
struct SpecArg {
    /// Spec file: one `numerator=<n> primes=<set>` family per line.
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum PrimaryAction {
    Contains {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        x: Rational,
    },
    Multiplicity {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        atom: Rational,
        #[arg(long)]
        x: Rational,
    },
    Molecule {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        x: Rational,
    },
    Classify {
        #[command(flatten)]
        spec: SpecArg,
    },
    Decompose {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        x: Rational,
        /// How many certified factorizations to show.
        #[arg(long, default_value_t = 3)]
        witnesses: usize,
    },
}

#[derive(Subcommand)]
enum ConstructAction {
    Interval {
        #[arg(long)]
        n: u64,
    },
    Stage {
        /// `all`, or a comma-separated list of primes.
        #[arg(long, default_value = "all")]
        primes: String,
        #[arg(long)]
        k: usize,
    },
    Example42,
    Example57 {
        #[arg(long)]
        depth: usize,
    },
}

/// Everything that ends a run early.
enum Failure {
    Usage(String),
    Domain(Error),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Data(Value),
    Raw(String),
}

type Run = Result<Output, Failure>;

fn data<T: Serialize>(v: T) -> Run {
    Ok(Output::Data(serde_json::to_value(v).expect("serializable")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match limit().and_then(|limit| dispatch(&cli, limit)) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Data(v)) => {
            emit(cli.format, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(v)) => {
            emit(cli.format, &v);
            ExitCode::from(4)
        }
        Err(Failure::Domain(e)) => {
            let code = match e {
                Error::LimitExceeded(_) => 3,
                Error::UnknownSuite(_) => 1,
                _ => 2,
            };
            let body = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            println!("{}", serde_json::to_string_pretty(&body).expect("json"));
            ExitCode::from(code)
        }
    }
}

fn emit(format: Format, v: &Value) {
    if format == Format::Text {
        print!("{}", render::text(v));
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("json"));
    }
}

fn limit() -> Result<usize, Failure> {
    match std::env::var("MOLEKUL_LIMIT") {
        Err(_) => Ok(DEFAULT_LIMIT),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("MOLEKUL_LIMIT must be a positive integer, got {s:?}"))),
    }
}

fn dispatch(cli: &Cli, limit: usize) -> Run {
    let format = cli.format;
    let allowed = match &cli.command {
        Command::Ns(NsAction::Graph { .. }) => format != Format::Svg,
        Command::Ns(NsAction::Strip { .. }) => format != Format::Dot,
        _ => matches!(format, Format::Json | Format::Text),
    };
    if !allowed {
        return Err(Failure::Usage("this command does not support the requested --format".into()));
    }
    match &cli.command {
        Command::Ns(a) => ns(a, format, limit),
        Command::Pm(a) => pm(a, limit),
        Command::Primary(a) => primary(a, limit),
        Command::Construct(a) => construct(a),
        Command::Verify { suite } => {
            let reports = verify::run(suite)?;
            let ok = reports.iter().all(|r| r.passed());
            let v = serde_json::to_value(&reports).expect("serializable");
            if ok {
                Ok(Output::Data(v))
            } else {
                Err(Failure::Verification(v))
            }
        }
    }
}

fn semigroup(gens: &str) -> Result<NumericalSemigroup, Failure> {
    Ok(gens.parse()?)
}

fn ns(action: &NsAction, format: Format, limit: usize) -> Run {
    match action {
        NsAction::Atoms { gens } => data(semigroup(gens)?.atoms()),
        NsAction::Frobenius { gens } => data(semigroup(gens)?.frobenius()),
        NsAction::Gaps { gens } => data(semigroup(gens)?.gaps()),
        NsAction::Apery { gens, m } => data(semigroup(gens)?.apery_set(*m)?),
        NsAction::Factorizations { gens, x } => {
            let zs = semigroup(gens)?.factorizations_capped(*x, limit)?;
            data(zs.iter().map(|z| z.coefficients().to_vec()).collect::<Vec<_>>())
        }
        NsAction::Lengths { gens, x } => {
            let s = semigroup(gens)?;
            if s.factorization_count(*x, limit + 1) > limit {
                return Err(Error::LimitExceeded(limit).into());
            }
            data(s.length_set(*x))
        }
        NsAction::Betti { gens } => data(semigroup(gens)?.betti_elements()),
        NsAction::Molecules { gens, betti } => {
            let mode = if *betti { MoleculeMode::BettiFilter } else { MoleculeMode::Enumerate };
            data(semigroup(gens)?.molecules(mode)?)
        }
        NsAction::Graph { gens, x } => {
            let zs = semigroup(gens)?.factorizations_capped(*x, limit)?;
            let g = FactorizationGraph::new(*x, zs);
            if format == Format::Dot {
                return Ok(Output::Raw(g.to_dot()));
            }
            data(json!({
                "element": g.element,
                "vertices": g.vertices.iter().map(|z| z.coefficients().to_vec()).collect::<Vec<_>>(),
                "edges": g.edges,
                "components": g.component_count(),
                "connected": g.is_connected(),
            }))
        }
        NsAction::Strip { gens, limit: upto, output, palette } => {
            let rows = gens
                .iter()
                .map(|g| Ok(strip_row(&semigroup(g)?, *upto)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let out = if format == Format::Svg {
                let palette = svg::Palette {
                    atom: palette.atom_color.clone(),
                    molecule: palette.molecule_color.clone(),
                    non_molecule: palette.non_molecule_color.clone(),
                    gap: palette.gap_color.clone(),
                };
                svg::render(&rows, &palette)
            } else {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        let classes: serde_json::Map<String, Value> = PointClass::ALL
                            .iter()
                            .map(|&c| (c.name().to_string(), json!(r.members(c))))
                            .collect();
                        json!({"label": r.label, "limit": r.limit(), "points": classes})
                    })
                    .collect();
                if output.is_none() {
                    return data(v);
                }
                if format == Format::Text {
                    render::text(&Value::Array(v))
                } else {
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
            };
            match output {
                Some(path) => {
                    std::fs::write(path, out)
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
                    data(json!({"written": path.display().to_string(), "rows": rows.len()}))
                }
                None => Ok(Output::Raw(out)),
            }
        }
    }
}

fn monoid(gens: &str) -> Result<PuiseuxMonoidFG, Failure> {
    Ok(gens.parse()?)
}

fn pm(action: &PmAction, limit: usize) -> Run {
    match action {
        PmAction::Atoms { gens } => data(monoid(gens)?.atoms()),
        PmAction::Molecules { gens } => data(monoid(gens)?.molecules()?),
        PmAction::Reduce { gens } => {
            let m = monoid(gens)?;
            data(json!({
                "atoms": m.atoms(),
                "scale": m.scale(),
                "reduced": m.reduced().atoms(),
            }))
        }
        PmAction::Factorizations { gens, x } => {
            let m = monoid(gens)?;
            if m.factorization_count(x, limit + 1)? > limit {
                return Err(Error::LimitExceeded(limit).into());
            }
            let zs = m.factorizations(x)?;
            data(json!({
                "atoms": m.atoms(),
                "factorizations": zs.iter().map(|z| z.coefficients().to_vec()).collect::<Vec<_>>(),
            }))
        }
        PmAction::Iso { gens, other, q } => {
            let a = monoid(gens)?;
            let b = monoid(other)?;
            let scale = a.scaling_to(&b);
            let mut v = json!({"isomorphic": scale.is_some(), "scale": scale});
            if let Some(q) = q {
                v["hom_valid"] = json!(a.hom_valid(&b, q));
            }
            data(v)
        }
    }
}

fn load_spec(arg: &SpecArg) -> Result<PrimaryMonoidSpec, Failure> {
    let text = std::fs::read_to_string(&arg.spec)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", arg.spec.display())))?;
    Ok(text.parse()?)
}

/// The prime set when the spec is a single family of numerator 1.
fn elementary_primes(spec: &PrimaryMonoidSpec) -> Option<&PrimeSetDescriptor> {
    match spec.families() {
        [f] if f.numerator == 1 && f.is_infinite() => Some(&f.primes),
        _ => None,
    }
}

fn primary(action: &PrimaryAction, limit: usize) -> Run {
    match action {
        PrimaryAction::Contains { spec, x } => {
            let cert = load_spec(spec)?.contains_primary(x)?;
            data(json!({"member": cert.is_some(), "certificate": cert}))
        }
        PrimaryAction::Multiplicity { spec, atom, x } => {
            let m = load_spec(spec)?.max_multiplicity(atom, x)?;
            data(json!({"atom": atom, "element": x, "multiplicity": m.to_string()}))
        }
        PrimaryAction::Molecule { spec, x } => {
            let spec = load_spec(spec)?;
            let verdict = spec.molecule_general(x)?;
            let mut v = serde_json::to_value(&verdict).expect("serializable");
            if let Some(primes) = elementary_primes(&spec) {
                v["elementary"] = serde_json::to_value(molecule_elementary(primes, x)?).expect("serializable");
            }
            data(v)
        }
        PrimaryAction::Classify { spec } => {
            let c = load_spec(spec)?.classify_atoms();
            let families = |s: &PrimaryMonoidSpec| s.families().iter().map(|f| f.to_string()).collect::<Vec<_>>();
            data(json!({
                "stable": families(&c.stable),
                "unstable": families(&c.unstable),
                "unstable_atoms": c.unstable_atoms.iter().map(|a| a.value()).collect::<Vec<_>>(),
            }))
        }
        PrimaryAction::Decompose { spec, x, witnesses } => {
            let spec = load_spec(spec)?;
            let split = spec.residue_split(x)?;
            let residues: Vec<Value> = split
                .residues
                .iter()
                .map(|(a, r)| json!({"atom": a.value(), "residue": r}))
                .collect();
            let mut v = json!({
                "element": x,
                "residues": residues,
                "remainder": split.remainder.map(|r| r.to_string()),
                "verdict": spec.molecule_general(x)?,
            });
            if spec.is_member(x)? {
                let mut found = spec.certified_factorizations(x, (*witnesses + 1).min(limit))?;
                v["more_factorizations"] = json!(found.len() > *witnesses);
                found.truncate(*witnesses);
                v["factorizations"] = json!(found);
                v["sufficient_molecule_check"] = json!(spec.sufficient_molecule_check(x)?);
            }
            data(v)
        }
    }
}

fn construct(action: &ConstructAction) -> Run {
    match action {
        ConstructAction::Interval { n } => {
            let s = interval_semigroup(*n)?;
            data(json!({
                "generators": s.atoms(),
                "molecules": s.molecules(MoleculeMode::Enumerate)?,
            }))
        }
        ConstructAction::Stage { primes, k } => {
            let pool = if primes.trim() == "all" {
                PrimePool::All
            } else {
                PrimePool::List(molekul::numsgp::parse_generators(primes)?)
            };
            let stage = stable_stage(&pool, *k)?;
            data(json!({
                "index": stage.index,
                "atoms": stage.atoms,
                "support": stage.support,
                "two_atom_sums": stage.two_atom_sums(),
            }))
        }
        ConstructAction::Example42 => {
            let m = fifths_over_dyadics();
            data(json!({
                "generators": "2/5, 3/5, 1/2^n (n >= 1)",
                "atoms": m.atoms(),
                "provenance": m.provenance(),
            }))
        }
        ConstructAction::Example57 { depth } => {
            let spec = PrimaryMonoidSpec::square_minus_one(*depth);
            data(json!({
                "families": spec.families().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "spec": spec.to_string(),
            }))
        }
    }
}
