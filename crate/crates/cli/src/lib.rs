//! Command-line front end: every operation as a subcommand over JSON documents.

pub mod document;
pub mod error;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hollowpoly::asymmetry::bounds::{bound_report, decimal_digits, Formula};
use hollowpoly::exactgeom::rational::{format_rational, parse_rational, to_f64};
use hollowpoly::lattice::count_points;
use hollowpoly::{
    are_equivalent, canonical_form, census, coefficient_of_asymmetry, delta_i, delta_simplex,
    enumerate_points, exceptional_triangle, facet_reports, find_hollow_projection, integer_hull,
    is_cayley, is_hollow, is_maximal_hollow_body, is_maximal_hollow_lattice, lattice_width,
    min_asymmetry_point, project_polytope, projection_along, verify_theorem_examples, GeomError,
    HollowClass, MaximalityKind, MaximalityOptions, Polytope, ProjectionSearch, Region,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::document::{
    integer_to_json, integers_to_json, lattice_to_json, point_to_json, polytope_json,
    rational_to_json, PolytopeDocument,
};
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "hollowpoly", version, about = "Exact computations with hollow lattice polytopes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    pub output: Output,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// PolytopeDocument file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct Scaled {
    #[command(flatten)]
    pub input: Input,
    /// Lattice scale s (points of sZ^d).
    #[arg(long, default_value_t = 1)]
    pub scale: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice points of sZ^d in the closed polytope.
    Points {
        #[command(flatten)]
        args: Scaled,
        /// Refuse to list more than this many points.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Lattice points of sZ^d in the interior.
    Interior {
        #[command(flatten)]
        args: Scaled,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Decide s-hollowness.
    Hollow {
        #[command(flatten)]
        args: Scaled,
    },
    /// Convex hull of the lattice points.
    IntegerHull {
        #[command(flatten)]
        input: Input,
    },
    /// Lattice width and a minimizing direction.
    Width {
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether a lattice polytope has width one.
    Cayley {
        #[command(flatten)]
        input: Input,
    },
    /// Project along a lattice subspace.
    Project {
        #[command(flatten)]
        input: Input,
        /// Kernel generator as comma-separated integers; repeat for higher rank.
        #[arg(long, required = true, allow_hyphen_values = true)]
        kernel: Vec<String>,
    },
    /// Search rank-one kernels for an s-hollow projection.
    FindProjection {
        #[command(flatten)]
        args: Scaled,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Coefficient of asymmetry of an interior point.
    Asymmetry {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coordinates, each an integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Interior point of sZ^d with the smallest coefficient of asymmetry.
    MinAsymmetry {
        #[command(flatten)]
        args: Scaled,
    },
    /// Evaluate a closed-form bound.
    Bounds {
        #[arg(long)]
        formula: String,
        #[arg(short = 'd', long = "dim", default_value_t = 3)]
        d: u64,
        #[arg(short = 's', long = "scale", default_value_t = 1)]
        s: u64,
        #[arg(short = 'k', long = "k", default_value_t = 1)]
        k: u64,
    },
    /// Maximality as a hollow convex body.
    MaximalBody {
        #[command(flatten)]
        input: Input,
    },
    /// Maximality as a hollow lattice polytope.
    MaximalLattice {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Maximum number of candidate points to test.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Constructors and verification for the explicit families.
    Family {
        #[arg(long, conflicts_with_all = ["delta_i", "triangle", "verify"])]
        delta: Option<usize>,
        #[arg(long, conflicts_with_all = ["triangle", "verify"])]
        delta_i: Option<usize>,
        #[arg(long, conflicts_with = "verify")]
        triangle: bool,
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Census of lattice polygons in [0,k]^2.
    Census2d {
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = census::MAX_CENSUS_BOX)]
        cap: u32,
    },
    /// Decide unimodular equivalence of two lattice polytopes.
    Equivalent {
        first: String,
        second: String,
    },
    /// Canonical form under unimodular equivalence.
    Canonical {
        #[command(flatten)]
        input: Input,
    },
}

fn read_source(path: &str) -> Result<String> {
    let io = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(path: &str) -> Result<Polytope> {
    PolytopeDocument::parse_str(&read_source(path)?)?.to_polytope()
}

fn parse_vector(s: &str) -> Result<Vec<hollowpoly::Rational>> {
    s.split(',')
        .map(|c| parse_rational(c).map_err(|_| CliError::Usage(format!("bad coordinate {c:?} in {s:?}"))))
        .collect()
}

fn parse_int_vector(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad integer {c:?} in {s:?}"))))
        .collect()
}

fn verdict(flag: bool, yes: &str, no: &str) -> Value {
    Value::String(if flag { yes } else { no }.to_string())
}

fn list_points(args: &Scaled, region: Region, cap: Option<u64>, name: &str) -> Result<Value> {
    let p = load(&args.input.input)?;
    let n = count_points(&p, args.scale, region)?;
    if let Some(c) = cap {
        if n > c {
            return Err(CliError::Cap(format!("{n} points exceed cap {c}")));
        }
    }
    let set = enumerate_points(&p, args.scale, region)?;
    Ok(json!({
        "command": name,
        "region": region.name(),
        "scale": args.scale,
        "value": set.len(),
        "points": set.points,
    }))
}

fn facets_json(p: &Polytope) -> Result<Value> {
    Ok(Value::Array(
        facet_reports(p)?
            .iter()
            .map(|r| {
                json!({
                    "a": integers_to_json(r.facet.halfspace.normal()),
                    "b": format_rational(r.facet.halfspace.offset()),
                    "blocked": r.blocked,
                    "relint_points": r.relint_points,
                })
            })
            .collect(),
    ))
}

fn projection_json(map: &hollowpoly::ProjectionMap) -> Value {
    json!({
        "kernel_basis": map.kernel_basis().iter().map(|r| integers_to_json(r)).collect::<Vec<_>>(),
        "matrix": map.matrix().iter().map(|r| integers_to_json(r)).collect::<Vec<_>>(),
        "saturated": map.was_saturated(),
    })
}

fn bounds(formula: &str, d: u64, s: u64, k: u64) -> Result<Value> {
    let f = Formula::parse(formula).ok_or_else(|| {
        CliError::Usage(format!("unknown formula {formula:?}; expected thm21, thm25, prop16, kl-deltas or lemma27"))
    })?;
    let r = bound_report(f, d, s, k)?;
    let mut out = json!({ "command": "bounds", "formula": f.id() });
    for (key, v) in [("d", r.d), ("s", r.s), ("k", r.k)] {
        if let Some(v) = v {
            out[key] = json!(v);
        }
    }
    match f {
        Formula::ExceptionVolume => {
            let v = r.values[0].numer().clone();
            out["value"] = Value::String(v.to_string());
            out["digits"] = json!(decimal_digits(&v));
        }
        Formula::Pikhurko => {
            let b = hollowpoly::asymmetry::bounds::pikhurko_bound(k, s)?;
            out["value"] = Value::String(b.ca_bound.to_string());
            out["delta"] = Value::String(format_rational(&b.delta));
        }
        Formula::Proposition3d => {
            let b = hollowpoly::asymmetry::bounds::proposition_bound_3d();
            out["value"] = Value::String(format_rational(&b.value));
            out["approx"] = Value::String(format!("{:.4}", to_f64(&b.value)));
            out["ceiling"] = integer_to_json(&b.ceiling);
        }
        Formula::KlDeltas => {
            out["value"] = Value::Array(r.values.iter().map(|q| Value::String(format_rational(q))).collect());
        }
        Formula::PolygonAsymmetry => {
            out["value"] = Value::String(format_rational(&r.values[0]));
            out["approx"] = Value::String(format!("{:.4}", to_f64(&r.values[0])));
        }
    }
    Ok(out)
}

fn family(delta: Option<usize>, delta_i_dim: Option<usize>, triangle: bool, verify: Option<usize>) -> Result<Value> {
    if let Some(d) = delta {
        let p = delta_simplex(d)?;
        return Ok(json!({ "command": "family", "family": "delta", "d": d, "value": polytope_json(&p) }));
    }
    if let Some(d) = delta_i_dim {
        let p = delta_i(d)?;
        return Ok(json!({ "command": "family", "family": "delta-i", "d": d, "value": polytope_json(&p) }));
    }
    if triangle {
        return Ok(json!({ "command": "family", "family": "triangle", "value": polytope_json(&exceptional_triangle()) }));
    }
    if let Some(d) = verify {
        let r = verify_theorem_examples(d)?;
        let checks: Vec<Value> =
            r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        return Ok(json!({
            "command": "family",
            "family": "verify",
            "d": d,
            "verdict": verdict(r.passed(), "pass", "fail"),
            "checks": checks,
        }));
    }
    Err(CliError::Usage("family needs one of --delta, --delta-i, --triangle, --verify".into()))
}

fn census2d(k: u32, cap: u32) -> Result<Value> {
    let c = census::census_polygons_capped(k, cap)?;
    let hollow: Vec<Value> = c
        .hollow_classes()
        .map(|h| {
            let (tag, direction) = match &h.tag {
                Some(HollowClass::Exceptional) => ("exceptional", Value::Null),
                Some(HollowClass::Cayley { direction }) => ("cayley", integers_to_json(direction)),
                None => ("untagged", Value::Null),
            };
            json!({
                "vertices": h.polygon.vertices().iter().map(|v| point_to_json(v)).collect::<Vec<_>>(),
                "tag": tag,
                "direction": direction,
                "body_maximal": h.body_maximal,
            })
        })
        .collect();
    Ok(json!({
        "command": "census2d",
        "k": k,
        "polygons": c.polygons,
        "translation_classes": c.translation_classes,
        "value": c.classes.len(),
        "hollow_classes": hollow,
        "non_hollow_classes": c.non_hollow_classes().count(),
    }))
}

/// Runs one parsed invocation and returns the JSON result.
pub fn execute(cli: &Cli) -> Result<Value> {
    Ok(match &cli.command {
        Command::Points { args, cap } => list_points(args, Region::Closure, *cap, "points")?,
        Command::Interior { args, cap } => list_points(args, Region::Interior, *cap, "interior")?,
        Command::Hollow { args } => {
            let c = is_hollow(&load(&args.input.input)?, args.scale)?;
            json!({
                "command": "hollow",
                "scale": args.scale,
                "verdict": verdict(c.is_hollow(), "hollow", "not-hollow"),
                "witness": c.witness,
                "exhaustion": c.exhaustion,
            })
        }
        Command::IntegerHull { input } => match integer_hull(&load(&input.input)?) {
            Ok(q) => json!({ "command": "integer-hull", "verdict": "nonempty", "value": polytope_json(&q) }),
            Err(GeomError::NoLatticePoints) => {
                json!({ "command": "integer-hull", "verdict": "no-lattice-points", "value": Value::Null })
            }
            Err(e) => return Err(e.into()),
        },
        Command::Width { input } => {
            let w = lattice_width(&load(&input.input)?)?;
            json!({
                "command": "width",
                "value": rational_to_json(&w.width),
                "direction": integers_to_json(&w.direction),
                "certified": w.certified,
                "inscribed_radius": format_rational(&w.inscribed_radius),
                "shells_scanned": w.shells_scanned,
                "directions_checked": w.directions_checked,
            })
        }
        Command::Cayley { input } => {
            let p = load(&input.input)?;
            let (c, u) = is_cayley(&p)?;
            json!({
                "command": "cayley",
                "verdict": verdict(c, "cayley", "not-cayley"),
                "direction": integers_to_json(&u),
                "width": rational_to_json(&hollowpoly::project::width_along(&p, &u)),
            })
        }
        Command::Project { input, kernel } => {
            let p = load(&input.input)?;
            let k = kernel.iter().map(|s| parse_int_vector(s)).collect::<Result<Vec<_>>>()?;
            let map = projection_along(&k, p.dim())?;
            let image = project_polytope(&p, &map)?;
            json!({ "command": "project", "map": projection_json(&map), "value": polytope_json(&image) })
        }
        Command::FindProjection { args, radius } => {
            let p = load(&args.input.input)?;
            match find_hollow_projection(&p, args.scale, *radius)? {
                ProjectionSearch::Found { direction, map, image } => json!({
                    "command": "find-projection",
                    "verdict": "found",
                    "direction": integers_to_json(&direction),
                    "map": projection_json(&map),
                    "value": polytope_json(&image),
                }),
                ProjectionSearch::NoneWithinRadius { radius, directions_checked } => json!({
                    "command": "find-projection",
                    "verdict": "none-within-radius",
                    "radius": radius,
                    "directions_checked": directions_checked,
                }),
            }
        }
        Command::Asymmetry { input, point } => {
            let p = load(&input.input)?;
            let w = parse_vector(point)?;
            let ca = coefficient_of_asymmetry(&w, &p)?;
            let delta = hollowpoly::Rational::from_integer(1.into()) / (&ca + hollowpoly::Rational::from_integer(1.into()));
            json!({
                "command": "asymmetry",
                "point": point_to_json(&w),
                "value": rational_to_json(&ca),
                "delta": format_rational(&delta),
            })
        }
        Command::MinAsymmetry { args } => {
            let r = min_asymmetry_point(&load(&args.input.input)?, args.scale)?;
            json!({
                "command": "min-asymmetry",
                "scale": args.scale,
                "point": point_to_json(&r.point),
                "value": rational_to_json(&r.ca),
                "delta": format_rational(&r.delta),
            })
        }
        Command::Bounds { formula, d, s, k } => bounds(formula, *d, *s, *k)?,
        Command::MaximalBody { input } => {
            let p = load(&input.input)?;
            let m = is_maximal_hollow_body(&p)?;
            json!({
                "command": "maximal-body",
                "verdict": verdict(m, "maximal", "not-maximal"),
                "facets": facets_json(&p)?,
            })
        }
        Command::MaximalLattice { input, radius, cap } => {
            let p = load(&input.input)?;
            let v = is_maximal_hollow_lattice(&p, MaximalityOptions { radius: *radius, candidate_cap: *cap })?;
            if v.capped {
                return Err(CliError::Cap(format!("stopped after testing {} candidate points", v.candidates_tested)));
            }
            let kind = match v.kind {
                MaximalityKind::Maximal => "maximal",
                MaximalityKind::NotMaximal => "not-maximal",
                MaximalityKind::UnknownBeyondRadius => "unknown-beyond-radius",
            };
            json!({
                "command": "maximal-lattice",
                "verdict": kind,
                "blocked_facets": v.blocked_facets,
                "candidate_region": v.candidate_region.as_ref().map(polytope_json),
                "extra_points": v.extra_points,
                "candidates_tested": v.candidates_tested,
                "witness": v.witness.as_deref().map(lattice_to_json),
                "radius": v.radius,
            })
        }
        Command::Family { delta, delta_i, triangle, verify } => family(*delta, *delta_i, *triangle, *verify)?,
        Command::Census2d { k, cap } => census2d(*k, *cap)?,
        Command::Equivalent { first, second } => {
            let a = load(first)?;
            let b = load(second)?;
            let e = are_equivalent(&a, &b)?;
            json!({ "command": "equivalent", "verdict": verdict(e, "equivalent", "not-equivalent") })
        }
        Command::Canonical { input } => {
            let f = canonical_form(&load(&input.input)?)?;
            json!({
                "command": "canonical",
                "dim": f.dim,
                "vertex_count": f.vertex_count,
                "matrix": f.matrix.iter().map(|r| integers_to_json(r)).collect::<Vec<_>>(),
                "value": f.representative_vertices().iter().map(|r| integers_to_json(r)).collect::<Vec<_>>(),
            })
        }
    })
}

/// Parses `argv`, runs the command and renders stdout/stderr; returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit_code();
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let _ = writeln!(stdout, "{v}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.to_json());
            e.exit_code()
        }
    }
}
