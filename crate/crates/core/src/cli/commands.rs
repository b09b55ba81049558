//! Subcommands of the `berkhasse` binary.

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::ff::FpPoly;
use crate::arith::rational::{abs_from_val, is_p_integral, parse_q, residue, Q};
use crate::berkline::{seminorm, BerkPoint};
use crate::discauto::{
    choose_w, sample_points, translation_gap, verify_into, zero_cycle_degrees, EndNeighborhood,
    LPoint,
};
use crate::error::{Error, Result};
use crate::isotropy::{
    isotropic_residue, Bounds, FiniteForm, FuncForm, IsotropyVerdict, PAdicForm, ResidueForm,
};
use crate::models::{complement_component, dual_graph, factor_at, Variant, VertexSet};

use super::analyze::{analyze, Options};
use super::parse::{parse_coeffs, parse_form};
use super::render::{render, Format};

/// Coefficients of the worked example over `Q_3(T)`.
pub const EXAMPLE_183: &str = "1, -(1+3*T), T, -(T+3)";

#[derive(Parser, Debug)]
#[command(
    name = "berkhasse",
    version,
    about = "Berkovich line over Q_p and local-global isotropy checks over Q_p(T)"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Odd prime p.
    #[arg(long, short = 'p', global = true, default_value_t = 3)]
    pub prime: u64,
    /// p-adic precision and series order.
    #[arg(long, global = true, default_value_t = crate::isotropy::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Vertex set construction.
    #[arg(long, global = true, default_value = "c1")]
    pub variant: Variant,
    /// Output format: text, json or dot.
    #[arg(long, global = true, default_value = "text")]
    pub format: Format,
    /// Seed for sampled spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree bound of witness searches over F_p(t).
    #[arg(long, global = true, default_value_t = crate::isotropy::WITNESS_DEGREE)]
    pub max_degree: usize,
}

impl Common {
    fn bounds(&self) -> Bounds {
        Bounds {
            precision: self.precision,
            max_degree: self.max_degree,
            ..Bounds::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full local-global check of a diagonal form over Q_p(T).
    Analyze {
        /// Comma-separated coefficients, e.g. "1, -(1+3*T), T, -(T+3)".
        form: String,
        /// Extra vertex for the c2 and c3 constructions, e.g. "eta(0,1)".
        #[arg(long)]
        s0: Option<String>,
        /// Skip the best-effort search for a zero over Q(T).
        #[arg(long)]
        no_global_search: bool,
    },
    /// Isotropy over one field layer: F_p, Q_p or F_p(t).
    Isotropy {
        /// fq, qp or fpt.
        #[arg(long)]
        field: String,
        /// Comma-separated coefficients (integers, rationals, or polynomials in t).
        coeffs: String,
    },
    /// Points of the Berkovich line.
    #[command(subcommand)]
    Berk(BerkCommand),
    /// Vertex sets and special fibers.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Translations of end neighborhoods over Eisenstein extensions.
    #[command(subcommand)]
    Discauto(DiscCommand),
    /// Runs the worked example over Q_3(T).
    Example183,
}

#[derive(Subcommand, Debug)]
pub enum BerkCommand {
    /// Valuation and absolute value of f at a point.
    Eval { point: String, f: String },
    /// Join of two points.
    Join { x: String, y: String },
    /// Retraction of a point to the path from the center b to infinity.
    Retract {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        x: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelCommand {
    /// Dual graph of the special fiber of a vertex set.
    Show {
        /// Vertices such as "eta(0,0)"; repeat the flag for each vertex.
        #[arg(long = "vertex", short = 'v', required = true)]
        vertices: Vec<String>,
    },
    /// Specialization of a point and its complement component.
    Specialize {
        #[arg(long = "vertex", short = 'v', required = true)]
        vertices: Vec<String>,
        x: String,
    },
    /// Unit times monomial factorization of f at the specialization of x.
    Factor {
        #[arg(long = "vertex", short = 'v', required = true)]
        vertices: Vec<String>,
        x: String,
        f: String,
    },
}

#[derive(Args, Debug)]
pub struct NeighborhoodArgs {
    /// Center of the ambient open disc.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub center: String,
    /// Ambient radius p^-s.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub s: String,
    /// Excluded closed disc "a:t" of radius p^-t; repeat for each disc.
    #[arg(long = "exclude", short = 'x', allow_hyphen_values = true)]
    pub exclude: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum DiscCommand {
    /// Open interval of translation lengths.
    Gap {
        #[command(flatten)]
        u: NeighborhoodArgs,
    },
    /// Eisenstein extension and translation w for a degree m.
    Choose {
        #[command(flatten)]
        u: NeighborhoodArgs,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Checks that translation by w moves sampled points into U.
    Verify {
        #[command(flatten)]
        u: NeighborhoodArgs,
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Points "rigid(c)" or "eta(a,s)" over Q_p; random samples when absent.
        #[arg(long = "sample")]
        samples: Vec<String>,
        /// Number of random samples.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Degrees of two rounds of extensions and their gcd.
    Degrees {
        #[arg(long, value_delimiter = ',', required = true)]
        first: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        second: Vec<u64>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code of command line usage errors.
pub const USAGE_ERROR: i32 = 3;
/// Exit code of failed computations.
pub const RUN_ERROR: i32 = 4;

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match run(&cli) {
            Ok((stdout, code)) => Outcome {
                stdout,
                stderr: String::new(),
                code,
            },
            Err(e) => Outcome {
                stdout: String::new(),
                stderr: format!("error: {}\n", e),
                code: RUN_ERROR,
            },
        },
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            }
        }
    }
}

fn point(p: u64, s: &str) -> Result<BerkPoint> {
    BerkPoint::parse(p, s)
}

fn q_arg(s: &str) -> Result<Q> {
    parse_q(s.trim()).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("expected a rational number, got '{}'", s),
    })
}

fn vertex_set(p: u64, vs: &[String]) -> Result<VertexSet> {
    VertexSet::new(
        p,
        vs.iter().map(|v| point(p, v)).collect::<Result<Vec<_>>>()?,
    )
}

fn neighborhood(p: u64, a: &NeighborhoodArgs) -> Result<EndNeighborhood> {
    let ex = a
        .exclude
        .iter()
        .map(|e| {
            let (c, t) = e.split_once(':').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected a:t, got '{}'", e),
            })?;
            Ok((q_arg(c)?, q_arg(t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    EndNeighborhood::new(p, q_arg(&a.center)?, q_arg(&a.s)?, ex)
}

fn verdict_code(v: &IsotropyVerdict) -> i32 {
    match v {
        IsotropyVerdict::Isotropic { .. } => 0,
        IsotropyVerdict::Anisotropic { .. } => 1,
        IsotropyVerdict::Unknown { .. } => 2,
    }
}

fn fp_of(p: u64, c: &Q) -> Result<u64> {
    if !is_p_integral(c, p) {
        return Err(Error::Precondition(format!(
            "coefficient {} is not {}-integral",
            c, p
        )));
    }
    Ok(residue(c, p))
}

fn residue_form(p: u64, field: &str, text: &str) -> Result<ResidueForm> {
    let coeffs = parse_coeffs(&text.replace('t', "T"))?;
    match field {
        "fq" | "fp" => {
            let c = coeffs
                .iter()
                .map(|c| {
                    c.as_constant().ok_or_else(|| {
                        Error::Precondition("F_p coefficients must be constants".into())
                    })
                })
                .map(|c| fp_of(p, &c?).map(|r| FpPoly::constant(p, r)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ResidueForm::Finite(FiniteForm::new(
                crate::arith::ff::Fq::prime(p),
                c,
            )?))
        }
        "qp" => {
            let c = coeffs
                .iter()
                .map(|c| {
                    c.as_constant().ok_or_else(|| {
                        Error::Precondition("Q_p coefficients must be constants".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ResidueForm::PAdic(PAdicForm::new(p, c)?))
        }
        "fpt" => {
            let c = coeffs
                .iter()
                .map(|c| {
                    if !c.den().is_constant() {
                        return Err(Error::Precondition(format!(
                            "{} is not a polynomial",
                            c.to_expr()
                        )));
                    }
                    let d = c.den().coeff(0);
                    let cs = c
                        .num()
                        .coeffs()
                        .iter()
                        .map(|a| fp_of(p, &(a / &d)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(FpPoly::new(p, cs))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ResidueForm::Function(FuncForm::new(p, c)?))
        }
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("unknown field '{}' (expected fq, qp or fpt)", field),
        }),
    }
}

fn run_analyze(
    c: &Common,
    text: &str,
    s0: Option<&str>,
    global_search: bool,
) -> Result<(String, i32)> {
    let parsed = parse_form(text, c.prime)?;
    let opts = Options {
        variant: c.variant,
        bounds: c.bounds(),
        s0: s0.map(|s| point(c.prime, s)).transpose()?,
        seed: c.seed,
        global_search,
        ..Options::default()
    };
    let mut report = analyze(&parsed.form, &opts)?;
    if let Some(n) = parsed.note() {
        report.notes.insert(0, n);
    }
    Ok((render(&report, c.format), report.conclusion.exit_code()))
}

/// Runs a parsed command, returning its output and exit code.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let c = &cli.common;
    let p = c.prime;
    crate::arith::rational::check_prime(p)?;
    if p == 2 {
        return Err(Error::BadPrime(2));
    }
    match &cli.command {
        Command::Analyze {
            form,
            s0,
            no_global_search,
        } => run_analyze(c, form, s0.as_deref(), !no_global_search),
        Command::Example183 => run_analyze(c, EXAMPLE_183, None, true),
        Command::Isotropy { field, coeffs } => {
            let f = residue_form(p, field, coeffs)?;
            let v = isotropic_residue(&f, &f.field(), &c.bounds())?;
            Ok((format!("{}: {}\n", f, v), verdict_code(&v)))
        }
        Command::Berk(b) => Ok((berk(p, b)?, 0)),
        Command::Model(m) => Ok((model(c, m)?, 0)),
        Command::Discauto(d) => discauto(c, d),
    }
}

fn berk(p: u64, b: &BerkCommand) -> Result<String> {
    match b {
        BerkCommand::Eval { point: x, f } => {
            let x = point(p, x)?;
            let fs = parse_coeffs(f)?;
            let [f] = fs.as_slice() else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "expected a single function".into(),
                });
            };
            let v = seminorm(f, &x)?;
            Ok(format!(
                "point {} (type {})\n-log_p |f| = {}\n|f| = {}\n",
                x,
                x.classify(),
                v,
                abs_from_val(p, &v)
            ))
        }
        BerkCommand::Join { x, y } => Ok(format!("{}\n", point(p, x)?.join(&point(p, y)?)?)),
        BerkCommand::Retract { b, x } => Ok(format!("{}\n", point(p, x)?.retract(&q_arg(b)?)?)),
    }
}

fn model(c: &Common, m: &ModelCommand) -> Result<String> {
    let p = c.prime;
    match m {
        ModelCommand::Show { vertices } => {
            let fiber = dual_graph(&vertex_set(p, vertices)?)?;
            if c.format == Format::Dot {
                return Ok(fiber.to_dot("special fiber"));
            }
            let mut o = String::new();
            for (i, v) in fiber.vertices.iter().enumerate() {
                o.push_str(&format!("v{}: {}\n", i, v));
            }
            for (i, e) in fiber.edges.iter().enumerate() {
                o.push_str(&format!(
                    "P{}: double point v{} -- v{} with length {} (alpha * beta = p^{})\n",
                    i, e.b_end, e.a_end, e.length, e.length
                ));
            }
            for (i, j) in fiber.junctions.iter().enumerate() {
                let b: Vec<String> = j.boundary.iter().map(|v| format!("v{}", v)).collect();
                o.push_str(&format!(
                    "J{}: {} bounded by {}\n",
                    i,
                    j.region.describe(p),
                    b.join(", ")
                ));
            }
            Ok(o)
        }
        ModelCommand::Specialize { vertices, x } => {
            let fiber = dual_graph(&vertex_set(p, vertices)?)?;
            let x = point(p, x)?;
            let pt = fiber.specialize(&x)?;
            let mut o = format!("{} specializes to the {}\n", x, fiber.describe(&pt));
            if pt.is_closed() {
                o.push_str(&format!(
                    "component: {}\n",
                    complement_component(&x, &fiber)?.describe(p)
                ));
            }
            Ok(o)
        }
        ModelCommand::Factor { vertices, x, f } => {
            let fiber = dual_graph(&vertex_set(p, vertices)?)?;
            let x = point(p, x)?;
            let pt = fiber.specialize(&x)?;
            let fs = parse_coeffs(f)?;
            let [f] = fs.as_slice() else {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "expected a single function".into(),
                });
            };
            let um = factor_at(f, &pt, &fiber)?;
            Ok(format!(
                "at the {}: f = ({}) * x^{} * y^{}\nresidue of the unit: {} in {}\n",
                fiber.describe(&pt),
                um.unit.to_expr(),
                um.n,
                um.m,
                um.kappa.fmt_elem(&um.residue),
                um.kappa
            ))
        }
    }
}

fn discauto(c: &Common, d: &DiscCommand) -> Result<(String, i32)> {
    let p = c.prime;
    match d {
        DiscCommand::Gap { u } => {
            let u = neighborhood(p, u)?;
            Ok((format!("U = {}\ngap: {}\n", u, translation_gap(&u)?), 0))
        }
        DiscCommand::Choose { u, m } => {
            let u = neighborhood(p, u)?;
            Ok((
                format!("U = {}\n{}\n", u, choose_w(&translation_gap(&u)?, *m)?),
                0,
            ))
        }
        DiscCommand::Verify {
            u,
            m,
            samples,
            count,
        } => {
            let u = neighborhood(p, u)?;
            let plan = choose_w(&translation_gap(&u)?, *m)?;
            let xs = if samples.is_empty() {
                sample_points(&u, plan.h, *count, &mut ChaCha8Rng::seed_from_u64(c.seed))
            } else {
                samples
                    .iter()
                    .map(|s| LPoint::from_berk(&point(p, s)?, plan.h))
                    .collect::<Result<Vec<_>>>()?
            };
            let r = verify_into(&u, &plan, &xs)?;
            let code = if r.passed() { 0 } else { 1 };
            Ok((format!("U = {}\n{}\n{}\n", u, plan, r), code))
        }
        DiscCommand::Degrees { first, second } => {
            let (d1, d2, g) = zero_cycle_degrees(first, second)?;
            Ok((format!("d = {}, d' = {}, gcd = {}\n", d1, d2, g), 0))
        }
    }
}
