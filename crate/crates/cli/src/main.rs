use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use locchrom_core::box_complexes::{
    b_chain, bier_sphere, box_complex_b0, h_hat, l_complex, map_f_universal_to_l, map_g_report, neighborhood_complex,
};
use locchrom_core::claims::{run_all, ClaimOptions, ClaimStatus};
use locchrom_core::families::{
    borsuk_sample, complete_graph, cycle, generalized_mycielski, kneser, schrijver, universal, PointSet,
};
use locchrom_core::homology::betti_gf2;
use locchrom_core::simplicial::SimplicialComplex;
use locchrom_core::solvers::{
    chromatic_number, export_hom_cnf, find_homomorphism, fractional_chromatic_with_certificate,
    local_chromatic_number, Budget, HomOptions, LocalMethod, SearchOutcome, TargetSymmetry,
    DEFAULT_FRACTIONAL_LIMIT,
};
use locchrom_core::{Error, Graph};

const EXIT_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 2;

#[derive(Parser)]
#[command(name = "locchrom", version, about = "Local chromatic number, box complexes and GF(2) homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Chromatic number with a witness coloring.
    Chi {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Local chromatic number with a witness coloring.
    Psi {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Fractional chromatic number as an exact fraction.
    Fchi { file: PathBuf },
    /// Search for a homomorphism G -> H.
    Hom {
        g: PathBuf,
        h: PathBuf,
        /// Also write the DIMACS CNF encoding of the instance.
        #[arg(long)]
        cnf_out: Option<PathBuf>,
        /// Pin the first vertex; only valid when H is vertex-transitive.
        #[arg(long)]
        vertex_transitive: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build a simplicial complex.
    Complex(ComplexArgs),
    /// f-vector, Euler characteristic and GF(2) Betti numbers of a complex.
    Homology {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Euler characteristic of a complex.
    Euler { file: PathBuf },
    /// Link of a vertex given by its label.
    Link {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two complexes are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Verify the maps f: B0(U(m,r)) -> L'(m,r) and g: sd(L'(m,r)) -> B0(U(m,r)).
    Maps {
        #[arg(long)]
        lemma7: bool,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_chains: Option<u64>,
    },
    /// Run the claim suite.
    Verify {
        #[arg(value_parser = ["paper"])]
        target: String,
        /// Node budget for every individual search.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Kneser,
    Schrijver,
    Universal,
    Mycielski,
    Borsuk,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Mycielski base graph; defaults to the cycle C_n.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    levels: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of sample points.
    #[arg(long)]
    points: Option<usize>,
    /// Evenly spaced points on the circle instead of seeded random points.
    #[arg(long)]
    circle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Partitions,
    HomUniversal,
}

impl From<Method> for LocalMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Direct => LocalMethod::Direct,
            Method::Partitions => LocalMethod::Partitions,
            Method::HomUniversal => LocalMethod::HomUniversal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    B0,
    Bchain,
    Neigh,
    Lmr,
    LmrPrime,
    Bier,
    Hhat,
}

#[derive(Args)]
struct ComplexArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Source graph for b0, bchain and neigh.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Complex K for the Bier sphere; vertex labels must be elements of [m].
    #[arg(long)]
    base: Option<PathBuf>,
    /// For hhat: also write the cell poset.
    #[arg(long)]
    cells_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or(Budget::UNLIMITED, Budget::nodes)
}

fn need<T>(value: Option<T>, flag: &str) -> anyhow::Result<T> {
    value.with_context(|| format!("missing --{flag}"))
}

/// Writes a line to stdout; a closed pipe (e.g. `| head`) is not an error.
fn say(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit(value: &Value) {
    say(&serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn write_or_print(json: &impl serde::Serialize, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(json)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => say(&text),
    }
    Ok(())
}

fn read_graph(p: &Path) -> anyhow::Result<Graph> {
    Graph::read(p).with_context(|| format!("reading graph {}", p.display()))
}

fn read_complex(p: &Path) -> anyhow::Result<SimplicialComplex> {
    SimplicialComplex::read(p).with_context(|| format!("reading complex {}", p.display()))
}

fn gen(a: GenArgs) -> anyhow::Result<()> {
    let g = match a.family {
        Family::Complete => complete_graph(need(a.m.or(a.n), "m")?)?,
        Family::Cycle => cycle(need(a.n, "n")?)?,
        Family::Kneser => kneser(need(a.n, "n")?, need(a.k, "k")?)?,
        Family::Schrijver => schrijver(need(a.n, "n")?, need(a.k, "k")?)?,
        Family::Universal => universal(need(a.m, "m")?, need(a.r, "r")?)?,
        Family::Mycielski => {
            let base = match &a.graph {
                Some(p) => read_graph(p)?,
                None => cycle(a.n.unwrap_or(5))?,
            };
            generalized_mycielski(&base, a.levels)?
        }
        Family::Borsuk => {
            let k = need(a.points, "points")?;
            let points = if a.circle { PointSet::CircleUniform(k) } else { PointSet::SphereSeeded { k, seed: a.seed } };
            borsuk_sample(a.dim, need(a.alpha, "alpha")?, points)?
        }
    };
    write_or_print(&g.to_json(), a.out.as_deref())
}

fn complex(a: ComplexArgs) -> anyhow::Result<()> {
    let graph = || -> anyhow::Result<Graph> { read_graph(need(a.graph.as_deref(), "graph")?) };
    let k = match a.kind {
        Kind::B0 => box_complex_b0(&graph()?)?,
        Kind::Bchain => b_chain(&graph()?)?,
        Kind::Neigh => neighborhood_complex(&graph()?)?,
        Kind::Lmr => l_complex(need(a.m, "m")?, need(a.r, "r")?, false)?,
        Kind::LmrPrime => l_complex(need(a.m, "m")?, need(a.r, "r")?, true)?,
        Kind::Bier => bier_sphere(need(a.m, "m")?, &read_complex(need(a.base.as_deref(), "base")?)?)?,
        Kind::Hhat => {
            let cells = h_hat(need(a.m, "m")?, need(a.r, "r")?)?;
            if let Some(p) = &a.cells_out {
                write_or_print(&cells.to_json(), Some(p))?;
            }
            cells.order_complex()?
        }
    };
    write_or_print(&k.to_json(), a.out.as_deref())
}

fn hom(g: &Path, h: &Path, cnf_out: Option<&Path>, vertex_transitive: bool, nodes: Option<u64>) -> anyhow::Result<()> {
    let (g, h) = (read_graph(g)?, read_graph(h)?);
    if let Some(p) = cnf_out {
        std::fs::write(p, export_hom_cnf(&g, &h).to_dimacs()).with_context(|| format!("writing {}", p.display()))?;
    }
    let symmetry = if vertex_transitive { TargetSymmetry::VertexTransitive } else { TargetSymmetry::None };
    match find_homomorphism(&g, &h, HomOptions { budget: budget(nodes), symmetry }) {
        SearchOutcome::Found(map) => {
            let image: serde_json::Map<String, Value> = map
                .image
                .iter()
                .enumerate()
                .map(|(v, &x)| (g.label(v).to_string(), json!(h.label(x))))
                .collect();
            emit(&json!({ "result": "found", "image": image }));
        }
        SearchOutcome::NoneExists => emit(&json!({ "result": "none" })),
        SearchOutcome::BudgetExceeded => return Err(Error::BudgetExceeded(nodes.unwrap_or(0)).into()),
    }
    Ok(())
}

fn verify(nodes: Option<u64>, as_json: bool) -> anyhow::Result<ExitCode> {
    let reports = run_all(&ClaimOptions { budget: budget(nodes) });
    if as_json {
        say(&serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            let status = match r.status {
                ClaimStatus::Pass => "PASS",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::SkippedBudget => "SKIP",
                ClaimStatus::Informational => "INFO",
            };
            say(&format!("{status} {} {} ({} ms)", r.claim_id, r.source, r.runtime_ms));
            if r.status == ClaimStatus::Fail {
                say(&format!("     expected {}\n     actual   {}", r.expected, r.actual));
            }
        }
    }
    let code = if reports.iter().any(|r| r.status == ClaimStatus::Fail) {
        EXIT_FAILED
    } else if reports.iter().any(|r| r.status == ClaimStatus::SkippedBudget) {
        EXIT_BUDGET
    } else {
        0
    };
    Ok(ExitCode::from(code))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => gen(a)?,
        Command::Chi { file, budget: b } => {
            let g = read_graph(&file)?;
            let (chi, c) = chromatic_number(&g, budget(b))?;
            emit(&json!({ "chi": chi, "coloring": c.colors() }));
        }
        Command::Psi { file, method, budget: b } => {
            let g = read_graph(&file)?;
            let (psi, c) = local_chromatic_number(&g, method.into(), budget(b))?;
            emit(&json!({ "psi": psi, "coloring": c.colors() }));
        }
        Command::Fchi { file } => {
            let g = read_graph(&file)?;
            let sol = fractional_chromatic_with_certificate(&g, DEFAULT_FRACTIONAL_LIMIT)?;
            let cover: Vec<Value> = sol
                .cover
                .iter()
                .map(|(set, w)| {
                    let members: Vec<&str> = (0..g.n()).filter(|v| set >> v & 1 == 1).map(|v| g.label(v)).collect();
                    json!({ "set": members, "weight": w.to_string() })
                })
                .collect();
            emit(&json!({ "fchi": sol.value.to_string(), "cover": cover }));
        }
        Command::Hom { g, h, cnf_out, vertex_transitive, budget: b } => {
            hom(&g, &h, cnf_out.as_deref(), vertex_transitive, b)?
        }
        Command::Complex(a) => complex(a)?,
        Command::Homology { file, reduced } => {
            let k = read_complex(&file)?;
            let b = betti_gf2(&k, reduced)?;
            emit(&json!({
                "f_vector": k.f_vector().0,
                "euler": k.euler_characteristic(),
                "betti": b.values,
                "reduced": reduced,
            }));
        }
        Command::Euler { file } => {
            let k = read_complex(&file)?;
            k.try_simplices()?;
            say(&k.euler_characteristic().to_string());
        }
        Command::Link { file, vertex, out } => {
            let k = read_complex(&file)?;
            write_or_print(&k.link_by_label(&vertex)?.to_json(), out.as_deref())?;
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_complex(&first)?, read_complex(&second)?);
            match a.is_isomorphic(&b)? {
                Some(map) => {
                    let map: serde_json::Map<String, Value> = map
                        .iter()
                        .enumerate()
                        .map(|(v, &w)| (a.labels()[v].clone(), json!(b.labels()[w])))
                        .collect();
                    emit(&json!({ "isomorphic": true, "map": map }));
                }
                None => emit(&json!({ "isomorphic": false })),
            }
        }
        Command::Maps { lemma7, m, r, max_chains } => {
            if !lemma7 {
                bail!("only --lemma7 maps are available");
            }
            let f = map_f_universal_to_l(m, r)?;
            let g = map_g_report(m, r, max_chains)?;
            let ok = g.all_hold();
            emit(&json!({ "f": f.report(), "g": g }));
            if !ok {
                return Ok(ExitCode::from(EXIT_FAILED));
            }
        }
        Command::Verify { target: _, budget: b, json } => return verify(b, json),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded(_)) => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_FAILED),
            }
        }
    }
}
