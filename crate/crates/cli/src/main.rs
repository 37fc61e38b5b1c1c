//! `ordhomeo`: ordinal calculator and toolbox for piecewise homeomorphisms
//! of countable ordinals.
//!
//! Exit codes: 0 success, 1 domain/precondition/validation/IO failure,
//! 2 parse error, 3 resource cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordhomeo::dynamics::{self, TransitivityProblem};
use ordhomeo::homeo::{self, DEFAULT_ORDER_CAP};
use ordhomeo::sieve::{self, ConstraintSystem, PartialInjection};
use ordhomeo::{parse_homeo, parse_ordinal, Error, Notation, Ordinal, PointClass, PwHomeo};

#[derive(Parser)]
#[command(
    name = "ordhomeo",
    version,
    about = "Ordinals below epsilon-zero and piecewise homeomorphisms of countable ordinals"
)]
struct Cli {
    /// Display w as the Greek letter omega (input syntax is unchanged).
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic and point topology.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Piecewise homeomorphisms read from files.
    #[command(subcommand)]
    Homeo(HomeoCmd),
    /// Transitivity, decompositions and density witnesses.
    #[command(subcommand)]
    Dyn(DynCmd),
    /// Constraint systems on permutations.
    #[command(subcommand)]
    Sieve(SieveCmd),
}

#[derive(Subcommand)]
enum OrdCmd {
    /// Evaluate an expression to Cantor normal form.
    Eval { expr: String },
    /// Compare two ordinals: prints LT, EQ or GT.
    Cmp { a: String, b: String },
    /// The x with a + x = b.
    Sub { a: String, b: String },
    /// Cantor-Bendixson rank of a point.
    Rank { x: String },
    /// zero, successor or limit.
    Class { x: String },
    /// Cantor-Bendixson rank of the space [0, b].
    Cbrank { b: String },
    /// Least s > 0 with a + s = s.
    Absorb { a: String },
    /// Whether x lies in the derived set of order alpha.
    InDerived { x: String, alpha: String },
}

#[derive(Subcommand)]
enum HomeoCmd {
    /// Validate a map and print its canonical form.
    Check {
        file: String,
    },
    /// Image of a point.
    Apply {
        file: String,
        x: String,
    },
    /// Composite of maps; the rightmost is applied first.
    Compose {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    Invert {
        file: String,
    },
    /// Least n with g^n the identity.
    Order {
        file: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: u64,
    },
    /// The fixed-point set.
    Fix {
        file: String,
    },
    /// Points fixed by every map.
    CommonFix {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// A limit above alpha fixed by every map.
    FixpointAbove {
        alpha: String,
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// Least a >= alpha with g([0, a]) inside [0, a].
    InvariantPrefix {
        file: String,
        alpha: String,
    },
    /// Least a >= alpha with g([0, a]) = [0, a].
    InvariantPoint {
        file: String,
        alpha: String,
    },
}

#[derive(Subcommand)]
enum DynCmd {
    /// Solve a problem file of `x -> y` and `fix x` lines.
    Transitive { file: String },
    /// Decompose g = u h u' with u, u' fixing the points.
    Roelcke {
        file: String,
        #[arg(num_args = 0..)]
        points: Vec<String>,
    },
    /// Restriction of g agreeing on targets, and a push of the family above it.
    Dense(DenseArgs),
    /// Whether g fixes some natural number k >= n.
    BaireMember { file: String, n: u64 },
    /// A map agreeing with g on the constraints and fixing some k >= n.
    BaireWitness {
        file: String,
        n: u64,
        #[arg(num_args = 0..)]
        constraints: Vec<String>,
    },
    /// Table of g_n(n) for the transpositions g_n = (n, w+n).
    DemoDiscontinuity { n: u64 },
}

#[derive(Args)]
struct DenseArgs {
    file: String,
    /// Points where the approximation must agree with g.
    #[arg(long, value_delimiter = ',')]
    targets: Vec<String>,
    /// Points to push above the agreement segment.
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
}

#[derive(Subcommand)]
enum SieveCmd {
    /// Merge repeated points.
    Normalize { file: String },
    /// Hall's condition by exhaustive subsets.
    Hall { file: String },
    /// A satisfying injection, by augmenting paths.
    Match { file: String },
    /// Whether the open set of the first system lies in the second.
    Contains { a: String, b: String },
    /// Limit and witness of a decreasing chain of systems.
    Chain {
        #[arg(required = true, num_args = 1..)]
        files: Vec<String>,
    },
    /// Close an injection (`a -> b` lines) into a permutation.
    Extend { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let notation = if cli.unicode {
        Notation::Unicode
    } else {
        Notation::Ascii
    };
    match run(cli.command, notation) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String, std::io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse { .. }) => 2,
            Failure::Lib(Error::Resource(_)) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => e.fmt(f),
            Failure::Io(path, e) => write!(f, "{path}: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn ord(text: &str) -> Result<Ordinal, Failure> {
    Ok(parse_ordinal(text)?)
}

fn ords(texts: &[String]) -> Result<Vec<Ordinal>, Failure> {
    texts.iter().map(|t| ord(t)).collect()
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_string(), e))
}

/// Parse errors keep their kind; the file name is prepended to the message.
fn in_file<T>(path: &str, r: ordhomeo::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        Failure::Lib(match e {
            Error::Parse { line, pos, msg } => Error::Parse {
                line,
                pos,
                msg: format!("{msg} (in {path})"),
            },
            Error::Domain(m) => Error::Domain(format!("{path}: {m}")),
            Error::Validation(m) => Error::Validation(format!("{path}: {m}")),
            other => other,
        })
    })
}

fn map(path: &str) -> Result<PwHomeo, Failure> {
    in_file(path, parse_homeo(&read(path)?))
}

fn maps(paths: &[String]) -> Result<Vec<PwHomeo>, Failure> {
    paths.iter().map(|p| map(p)).collect()
}

fn system(path: &str) -> Result<ConstraintSystem, Failure> {
    in_file(path, sieve::parse_constraints(&read(path)?))
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn run(command: Command, n: Notation) -> Out {
    match command {
        Command::Ord(c) => run_ord(c, n),
        Command::Homeo(c) => run_homeo(c, n),
        Command::Dyn(c) => run_dyn(c, n),
        Command::Sieve(c) => run_sieve(c, n),
    }
}

fn run_ord(c: OrdCmd, n: Notation) -> Out {
    Ok(match c {
        OrdCmd::Eval { expr } => line(ord(&expr)?.render(n)),
        OrdCmd::Cmp { a, b } => {
            let word = match ord(&a)?.cmp(&ord(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            line(word)
        }
        OrdCmd::Sub { a, b } => line(ord(&a)?.left_subtract(&ord(&b)?)?.render(n)),
        OrdCmd::Rank { x } => line(ord(&x)?.rank().render(n)),
        OrdCmd::Class { x } => line(match ord(&x)?.classify() {
            PointClass::Zero => "zero".to_string(),
            PointClass::Successor(p) => format!("successor of {}", p.render(n)),
            PointClass::Limit => "limit".to_string(),
        }),
        OrdCmd::Cbrank { b } => line(ord(&b)?.cb_rank_segment().render(n)),
        OrdCmd::Absorb { a } => line(ord(&a)?.absorb_threshold().render(n)),
        OrdCmd::InDerived { x, alpha } => line(ord(&x)?.in_derived(&ord(&alpha)?)),
    })
}

fn run_homeo(c: HomeoCmd, n: Notation) -> Out {
    Ok(match c {
        HomeoCmd::Check { file } => map(&file)?.render(n),
        HomeoCmd::Apply { file, x } => line(map(&file)?.apply(&ord(&x)?).render(n)),
        HomeoCmd::Compose { files } => maps(&files)?
            .into_iter()
            .reduce(|acc, g| acc.compose(&g))
            .expect("at least one file")
            .render(n),
        HomeoCmd::Invert { file } => map(&file)?.inverse().render(n),
        HomeoCmd::Order { file, cap } => match map(&file)?.order_of(cap) {
            Some(k) => line(k),
            None => return Err(Error::Resource(format!("order exceeds the cap of {cap}")).into()),
        },
        HomeoCmd::Fix { file } => line(map(&file)?.fixed_points().render(n)),
        HomeoCmd::CommonFix { files } => {
            line(homeo::common_fixed_points(&maps(&files)?)?.render(n))
        }
        HomeoCmd::FixpointAbove { alpha, files } => {
            line(homeo::find_fixed_point_above(&maps(&files)?, &ord(&alpha)?)?.render(n))
        }
        HomeoCmd::InvariantPrefix { file, alpha } => {
            line(map(&file)?.invariant_prefix(&ord(&alpha)?).render(n))
        }
        HomeoCmd::InvariantPoint { file, alpha } => {
            line(map(&file)?.invariant_point(&ord(&alpha)?).render(n))
        }
    })
}

fn section(out: &mut String, title: &str, g: &PwHomeo, n: Notation) {
    let _ = writeln!(out, "{title}:");
    out.push_str(&g.render(n));
}

fn run_dyn(c: DynCmd, n: Notation) -> Out {
    Ok(match c {
        DynCmd::Transitive { file } => {
            let p: TransitivityProblem = in_file(&file, dynamics::parse_problem(&read(&file)?))?;
            dynamics::make_transitive(&p)?.render(n)
        }
        DynCmd::Roelcke { file, points } => {
            let g = map(&file)?;
            let pts = ords(&points)?;
            let cert = dynamics::roelcke_decompose(&g, &pts)?;
            let sigma: Vec<String> = cert
                .sigma
                .iter()
                .map(|(i, j)| format!("{} -> {}", i + 1, j + 1))
                .collect();
            let mut out = format!("sigma: {{{}}}\n", sigma.join(", "));
            section(&mut out, "u", &cert.u, n);
            section(&mut out, "h", &cert.h, n);
            section(&mut out, "u'", &cert.u_prime, n);
            out
        }
        DynCmd::Dense(args) => {
            let g = map(&args.file)?;
            let d = dynamics::dense_approx(&g, &ords(&args.targets)?, &ords(&args.family)?)?;
            let mut out = format!("alpha: {}\n", d.alpha.render(n));
            section(&mut out, "h", &d.h, n);
            section(&mut out, "k", &d.k, n);
            out
        }
        DynCmd::BaireMember { file, n: k } => line(dynamics::in_baire_t(&map(&file)?, k)?),
        DynCmd::BaireWitness {
            file,
            n: k,
            constraints,
        } => dynamics::baire_density_witness(&map(&file)?, k, &ords(&constraints)?)?.render(n),
        DynCmd::DemoDiscontinuity { n: last } => {
            let mut out = String::from("n\tg_n(n)\n");
            for k in 1..=last {
                let g = dynamics::discontinuity_sequence(k)?;
                let _ = writeln!(out, "{k}\t{}", g.apply(&Ordinal::nat(k)).render(n));
            }
            out
        }
    })
}

fn run_sieve(c: SieveCmd, n: Notation) -> Out {
    Ok(match c {
        SieveCmd::Normalize { file } => {
            let norm = system(&file)?.normalize();
            let mut out = norm.render(n);
            if norm.is_trivially_unsatisfiable() {
                out.push_str("# unsatisfiable: an allowed set is empty\n");
            }
            out
        }
        SieveCmd::Hall { file } => line(system(&file)?.hall_brute()?),
        SieveCmd::Match { file } => match system(&file)?.satisfiable() {
            Some(h) => h.render(n),
            None => line("# unsatisfiable: Hall's condition fails"),
        },
        SieveCmd::Contains { a, b } => {
            let c = system(&a)?.contains(&system(&b)?);
            if c.vacuous {
                line("true (vacuous: the first system is unsatisfiable)")
            } else {
                line(c.holds)
            }
        }
        SieveCmd::Chain { files } => {
            let chain = files
                .iter()
                .map(|f| system(f))
                .collect::<Result<Vec<_>, _>>()?;
            let (limit, witness) = sieve::chain_limit(&chain)?;
            format!("{}# witness\n{}", limit.render(n), witness.render(n))
        }
        SieveCmd::Extend { file } => {
            let h: PartialInjection = in_file(&file, sieve::parse_injection(&read(&file)?))?;
            h.extend_to_permutation().render(n)
        }
    })
}
