//! Command-line front end: reads a point document, runs the requested
//! diameter or placement routine, prints a single-line JSON result on
//! standard output, and optionally renders an SVG figure.
//!
//! Exit codes: 0 on success; 2 on any input or validation problem
//! (malformed documents, out-of-range parameters, missing labels).  The
//! elapsed wall-clock time goes to standard error, keeping standard output
//! byte-identical across reruns with the same seed.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use walkway::{
    diameter_1d, diameter_2d, diameter_decision_2d, elevator_locate, escalator_locate,
    k_elevator_diameter, locate_1d, locate_approx, locate_horizontal_diameter,
    locate_horizontal_pairs, time_distance_2d, unidirectional_locate, ElevatorSet, Point2,
    RedBlueSets, SourceDestPair, Speed, Walkway1, Walkway2,
};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CliResult<T> = Result<T, String>;

#[derive(Parser)]
#[command(
    name = "walkway-cli",
    version,
    about = "Travel-time diameters and optimal placement of moving walkways, escalators and elevators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input document; parsed as JSON unless the file ends in .csv or
    /// --format says otherwise.
    #[arg(long)]
    input: PathBuf,
    /// Input format override.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write an SVG figure of the points and the resulting placement.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Fixed planar walkway endpoints.
#[derive(Args)]
struct PlaneWalkwayArgs {
    /// Walkway entrance x coordinate.
    #[arg(long)]
    ax: f64,
    /// Walkway entrance y coordinate.
    #[arg(long)]
    ay: f64,
    /// Walkway exit x coordinate.
    #[arg(long)]
    bx: f64,
    /// Walkway exit y coordinate.
    #[arg(long)]
    by: f64,
}

impl PlaneWalkwayArgs {
    fn build(&self) -> CliResult<Walkway2> {
        Walkway2::new(Point2::new(self.ax, self.ay), Point2::new(self.bx, self.by))
            .map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Largest pairwise travel time on the line for a fixed walkway.
    Diam1d {
        #[command(flatten)]
        input: InputArgs,
        /// Walkway speed: a real greater than 1, or "inf".
        #[arg(long)]
        v: Speed,
        /// Walkway start coordinate.
        #[arg(long)]
        a: f64,
        /// Walkway end coordinate.
        #[arg(long)]
        b: f64,
    },
    /// Walkway on the line minimizing the largest pairwise travel time.
    Locate1d {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
    },
    /// Largest pairwise travel time in the plane for a fixed walkway.
    Diam2d {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[command(flatten)]
        walkway: PlaneWalkwayArgs,
    },
    /// Is the planar travel-time diameter at most the budget --y?
    Decide2d {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[command(flatten)]
        walkway: PlaneWalkwayArgs,
        /// Time budget to test.
        #[arg(long)]
        y: f64,
    },
    /// Best horizontal walkway for explicitly listed source-destination
    /// pairs (the document must carry a "pairs" list).
    LocatePairs {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best horizontal walkway for the travel-time diameter of the points.
    LocateHorizontal {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Near-optimal walkway of arbitrary orientation via a rotation sweep:
    /// within a factor 1 + eps of the unconstrained optimum.
    LocateApprox {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        /// Approximation parameter; must be positive.
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best one-way walkway serving every red-to-blue demand.
    Unidirectional {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best mandatory-use escalator: every trip walks to the entrance,
    /// rides, and walks on from the exit.
    Escalator {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        v: Speed,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Best mandatory-use elevator (an escalator whose endpoints coincide).
    Elevator {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Worst red-to-blue cost when every trip must ride one of the
    /// document's elevators.
    KElevators {
        #[command(flatten)]
        input: InputArgs,
    },
}

// ---------------------------------------------------------------------------
// Input documents
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Red,
    Blue,
}

enum PointList {
    /// No points at all; the shape is decided by the command.
    Empty,
    Line(Vec<f64>),
    Plane(Vec<Point2>),
}

struct InputDocument {
    points: PointList,
    labels: Option<Vec<Label>>,
    pairs: Option<Vec<(usize, usize)>>,
    elevators: Option<Vec<Point2>>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    points: Vec<RawPoint>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    pairs: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    elevators: Option<Vec<[f64; 2]>>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum RawPoint {
    Scalar(f64),
    Planar([f64; 2]),
}

impl InputDocument {
    fn load(args: &InputArgs) -> CliResult<Self> {
        let text = std::fs::read_to_string(&args.input)
            .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
        let format = args.format.unwrap_or_else(|| {
            let csv = args
                .input
                .extension()
                .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
            if csv {
                Format::Csv
            } else {
                Format::Json
            }
        });
        let raw = match format {
            Format::Json => serde_json::from_str::<RawDocument>(&text)
                .map_err(|e| format!("invalid JSON input: {e}"))?,
            Format::Csv => parse_csv(&text)?,
        };
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawDocument) -> CliResult<Self> {
        let mut scalars = Vec::new();
        let mut planar = Vec::new();
        for p in &raw.points {
            match p {
                RawPoint::Scalar(x) => scalars.push(*x),
                RawPoint::Planar([x, y]) => planar.push(Point2::new(*x, *y)),
            }
        }
        let points = match (scalars.len(), planar.len()) {
            (0, 0) => PointList::Empty,
            (_, 0) => PointList::Line(scalars),
            (0, _) => PointList::Plane(planar),
            _ => return Err("points must be all scalars (line) or all [x, y] pairs (plane)".into()),
        };
        let count = raw.points.len();
        let labels = match raw.labels {
            None => None,
            Some(ls) => {
                if ls.len() != count {
                    return Err(format!(
                        "labels list has {} entries for {count} points",
                        ls.len()
                    ));
                }
                let parsed: CliResult<Vec<Label>> = ls
                    .iter()
                    .map(|l| match l.as_str() {
                        "red" => Ok(Label::Red),
                        "blue" => Ok(Label::Blue),
                        other => Err(format!("label {other:?} must be \"red\" or \"blue\"")),
                    })
                    .collect();
                Some(parsed?)
            }
        };
        let pairs = raw.pairs.map(|ps| {
            ps.into_iter()
                .map(|[s, t]| (s, t))
                .collect::<Vec<(usize, usize)>>()
        });
        let elevators = raw
            .elevators
            .map(|es| es.into_iter().map(|[x, y]| Point2::new(x, y)).collect());
        Ok(InputDocument {
            points,
            labels,
            pairs,
            elevators,
        })
    }

    fn line_points(&self) -> CliResult<&[f64]> {
        match &self.points {
            PointList::Line(p) => Ok(p),
            PointList::Empty => Ok(&[]),
            PointList::Plane(_) => {
                Err("this command works on the line; the document holds [x, y] points".into())
            }
        }
    }

    fn plane_points(&self) -> CliResult<&[Point2]> {
        match &self.points {
            PointList::Plane(p) => Ok(p),
            PointList::Empty => Ok(&[]),
            PointList::Line(_) => {
                Err("this command works in the plane; the document holds scalar points".into())
            }
        }
    }

    /// Red and blue point sets for the labelled commands.
    fn red_blue(&self) -> CliResult<RedBlueSets> {
        let points = self.plane_points()?;
        let labels = self
            .labels
            .as_ref()
            .ok_or("this command needs a \"labels\" list marking points red or blue")?;
        let mut rb = RedBlueSets::default();
        for (&p, &l) in points.iter().zip(labels) {
            match l {
                Label::Red => rb.red.push(p),
                Label::Blue => rb.blue.push(p),
            }
        }
        Ok(rb)
    }

    fn source_dest_pairs(&self) -> CliResult<Vec<SourceDestPair>> {
        let points = self.plane_points()?;
        let pairs = self
            .pairs
            .as_ref()
            .ok_or("this command needs a \"pairs\" list of point indices (JSON input)")?;
        pairs
            .iter()
            .map(|&(s, t)| {
                let n = points.len();
                if s >= n || t >= n {
                    return Err(format!("pair [{s}, {t}] is out of range for {n} points"));
                }
                Ok(SourceDestPair {
                    s: points[s],
                    t: points[t],
                })
            })
            .collect()
    }

    fn elevator_positions(&self) -> CliResult<Vec<Point2>> {
        self.elevators
            .clone()
            .ok_or_else(|| "this command needs an \"elevators\" list (JSON input)".into())
    }
}

/// CSV: one point per line — `x` for line documents, `x,y` or `x,y,label`
/// for plane documents.  Lines must agree in shape, and either all or none
/// carry a label.
fn parse_csv(text: &str) -> CliResult<RawDocument> {
    let mut points = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let row = line.trim();
        if row.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        let parse = |s: &str| -> CliResult<f64> {
            s.parse::<f64>()
                .map_err(|_| format!("line {lineno}: {s:?} is not a number"))
        };
        match fields.as_slice() {
            [x] => points.push(RawPoint::Scalar(parse(x)?)),
            [x, y] => points.push(RawPoint::Planar([parse(x)?, parse(y)?])),
            [x, y, label] => {
                points.push(RawPoint::Planar([parse(x)?, parse(y)?]));
                labels.push((*label).to_string());
            }
            _ => return Err(format!("line {lineno}: expected 1-3 comma-separated fields")),
        }
        if !labels.is_empty() && labels.len() != points.len() {
            return Err(format!(
                "line {lineno}: either every line carries a label or none does"
            ));
        }
    }
    Ok(RawDocument {
        points,
        labels: (!labels.is_empty()).then_some(labels),
        pairs: None,
        elevators: None,
    })
}

// ---------------------------------------------------------------------------
// Result documents
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Placement {
    a: [f64; 2],
    b: [f64; 2],
}

#[derive(Serialize)]
struct ResultDocument {
    command: &'static str,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    placement: Option<Placement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[[f64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle_index: Option<usize>,
}

#[derive(Serialize)]
struct DecisionDocument {
    feasible: bool,
}

fn flat(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

fn lift(x: f64) -> Point2 {
    Point2::new(x, 0.0)
}

fn placement(a: Point2, b: Point2) -> Option<Placement> {
    Some(Placement {
        a: flat(a),
        b: flat(b),
    })
}

fn pair_witness(w: Option<(Point2, Point2)>) -> Option<[[f64; 2]; 2]> {
    w.map(|(s, t)| [flat(s), flat(t)])
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn run(command: Command) -> CliResult<()> {
    let started = Instant::now();
    let (input, output, scene) = execute(&command)?;
    println!("{output}");
    eprintln!("elapsed_ms {:.3}", started.elapsed().as_secs_f64() * 1e3);
    if let Some(path) = &input.svg {
        std::fs::write(path, render_svg(&scene))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

/// A drawable summary of one run: the points (lifted to the plane for line
/// commands), any red/blue labelling, the resulting or given walkway, a
/// worst pair, and any fixed elevator sites.
#[derive(Default)]
struct Scene {
    points: Vec<Point2>,
    labels: Option<Vec<Label>>,
    walkway: Option<(Point2, Point2)>,
    witness: Option<(Point2, Point2)>,
    elevators: Vec<Point2>,
}

fn execute(command: &Command) -> CliResult<(&InputArgs, String, Scene)> {
    let err = |e: walkway::WalkwayError| e.to_string();
    match command {
        Command::Diam1d { input, v, a, b } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.line_points()?;
            let w = Walkway1::new(*a, *b).map_err(err)?;
            let (value, witness) = diameter_1d(pts, w, *v).map_err(err)?;
            let witness = witness.map(|(s, t)| (lift(s), lift(t)));
            let result = ResultDocument {
                command: "diam1d",
                value,
                placement: placement(lift(w.a()), lift(w.b())),
                witness: pair_witness(witness),
                seed: None,
                angle_index: None,
            };
            let scene = Scene {
                points: pts.iter().map(|&x| lift(x)).collect(),
                walkway: Some((lift(w.a()), lift(w.b()))),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Locate1d { input, v } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.line_points()?;
            let placed = locate_1d(pts, *v).map_err(err)?;
            let (wa, wb) = (lift(placed.walkway.a()), lift(placed.walkway.b()));
            let witness = placed.witness.map(|(s, t)| (lift(s), lift(t)));
            let result = ResultDocument {
                command: "locate1d",
                value: placed.diameter,
                placement: placement(wa, wb),
                witness: pair_witness(witness),
                seed: None,
                angle_index: None,
            };
            let scene = Scene {
                points: pts.iter().map(|&x| lift(x)).collect(),
                walkway: Some((wa, wb)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Diam2d { input, v, walkway } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.plane_points()?;
            let w = walkway.build()?;
            let (value, witness) = diameter_2d(pts, &w, *v).map_err(err)?;
            let result = ResultDocument {
                command: "diam2d",
                value,
                placement: placement(w.a, w.b),
                witness: pair_witness(witness),
                seed: None,
                angle_index: None,
            };
            let scene = Scene {
                points: pts.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((w.a, w.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Decide2d {
            input,
            v,
            walkway,
            y,
        } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.plane_points()?;
            let w = walkway.build()?;
            let feasible = diameter_decision_2d(pts, &w, *v, *y).map_err(err)?;
            let scene = Scene {
                points: pts.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((w.a, w.b)),
                ..Scene::default()
            };
            Ok((input, to_json(&DecisionDocument { feasible }), scene))
        }
        Command::LocatePairs { input, v, seed } => {
            let doc = InputDocument::load(input)?;
            let pairs = doc.source_dest_pairs()?;
            let placed = locate_horizontal_pairs(&pairs, *v, *seed).map_err(err)?;
            let w = Walkway2::new(placed.a, placed.b).map_err(err)?;
            // Worst pair under the reported placement.
            let witness = pairs
                .iter()
                .map(|p| (time_distance_2d(p.s, p.t, &w, *v).unwrap_or(f64::NAN), p))
                .max_by(|x, y| x.0.total_cmp(&y.0))
                .map(|(_, p)| (p.s, p.t));
            let result = ResultDocument {
                command: "locate-pairs",
                value: placed.value,
                placement: placement(placed.a, placed.b),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: None,
            };
            let scene = Scene {
                points: doc.plane_points()?.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((placed.a, placed.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::LocateHorizontal { input, v, seed } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.plane_points()?;
            let placed = locate_horizontal_diameter(pts, *v, *seed).map_err(err)?;
            let w = Walkway2::new(placed.a, placed.b).map_err(err)?;
            let witness = diameter_2d(pts, &w, *v).map_err(err)?.1;
            let result = ResultDocument {
                command: "locate-horizontal",
                value: placed.value,
                placement: placement(placed.a, placed.b),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: None,
            };
            let scene = Scene {
                points: pts.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((placed.a, placed.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::LocateApprox {
            input,
            v,
            eps,
            seed,
        } => {
            let doc = InputDocument::load(input)?;
            let pts = doc.plane_points()?;
            let placed = locate_approx(pts, *v, *eps, *seed).map_err(err)?;
            let w = Walkway2::new(placed.a, placed.b).map_err(err)?;
            let witness = diameter_2d(pts, &w, *v).map_err(err)?.1;
            let result = ResultDocument {
                command: "locate-approx",
                value: placed.value,
                placement: placement(placed.a, placed.b),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: Some(placed.angle_index),
            };
            let scene = Scene {
                points: pts.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((placed.a, placed.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Unidirectional { input, v, seed } => {
            let doc = InputDocument::load(input)?;
            let rb = doc.red_blue()?;
            let (w, value) = unidirectional_locate(&rb, *v, *seed).map_err(err)?;
            let inv = v.inverse();
            let ride = inv * w.a.dist(w.b);
            // Worst red-to-blue demand under the one-way routing.
            let witness = rb
                .red
                .iter()
                .flat_map(|&r| rb.blue.iter().map(move |&t| (r, t)))
                .map(|(r, t)| (r.dist(t).min(r.dist(w.a) + ride + w.b.dist(t)), (r, t)))
                .max_by(|x, y| x.0.total_cmp(&y.0))
                .map(|(_, pair)| pair);
            let result = ResultDocument {
                command: "unidirectional",
                value,
                placement: placement(w.a, w.b),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: None,
            };
            let scene = Scene {
                points: doc.plane_points()?.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((w.a, w.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Escalator { input, v, seed } => {
            let doc = InputDocument::load(input)?;
            let rb = doc.red_blue()?;
            let (w, value) = escalator_locate(&rb, *v, *seed).map_err(err)?;
            let witness = mandatory_witness(&rb, w.a, w.b);
            let result = ResultDocument {
                command: "escalator",
                value,
                placement: placement(w.a, w.b),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: None,
            };
            let scene = Scene {
                points: doc.plane_points()?.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((w.a, w.b)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::Elevator { input, seed } => {
            let doc = InputDocument::load(input)?;
            let rb = doc.red_blue()?;
            let (site, value) = elevator_locate(&rb, *seed).map_err(err)?;
            let witness = mandatory_witness(&rb, site, site);
            let result = ResultDocument {
                command: "elevator",
                value,
                placement: placement(site, site),
                witness: pair_witness(witness),
                seed: Some(*seed),
                angle_index: None,
            };
            let scene = Scene {
                points: doc.plane_points()?.to_vec(),
                labels: doc.labels.clone(),
                walkway: Some((site, site)),
                witness,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
        Command::KElevators { input } => {
            let doc = InputDocument::load(input)?;
            let rb = doc.red_blue()?;
            let sites = doc.elevator_positions()?;
            let set = ElevatorSet::new(sites.clone()).map_err(err)?;
            let (value, (wr, wb)) = k_elevator_diameter(&rb, &set).map_err(err)?;
            let result = ResultDocument {
                command: "k-elevators",
                value,
                placement: None,
                witness: pair_witness(Some((wr, wb))),
                seed: None,
                angle_index: None,
            };
            let scene = Scene {
                points: doc.plane_points()?.to_vec(),
                labels: doc.labels.clone(),
                witness: Some((wr, wb)),
                elevators: sites,
                ..Scene::default()
            };
            Ok((input, to_json(&result), scene))
        }
    }
}

/// Worst demand for a mandatory-use transporter: the cost splits into
/// walk-in plus walk-out, so the worst pair combines the red point farthest
/// from the entrance with the blue point farthest from the exit.
fn mandatory_witness(rb: &RedBlueSets, a: Point2, b: Point2) -> Option<(Point2, Point2)> {
    let far = |pts: &[Point2], site: Point2| {
        pts.iter()
            .copied()
            .max_by(|p, q| p.dist(site).total_cmp(&q.dist(site)))
    };
    Some((far(&rb.red, a)?, far(&rb.blue, b)?))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("result documents always serialize")
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

/// Static figure: points (red/blue when labelled), the walkway segment,
/// the worst pair dashed, and elevator sites as squares.
fn render_svg(scene: &Scene) -> String {
    const WIDTH: f64 = 640.0;
    const HEIGHT: f64 = 480.0;
    const MARGIN: f64 = 30.0;

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut note = |p: Point2| {
        xs.push(p.x);
        ys.push(p.y);
    };
    scene.points.iter().copied().for_each(&mut note);
    scene.elevators.iter().copied().for_each(&mut note);
    if let Some((a, b)) = scene.walkway {
        note(a);
        note(b);
    }
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x0, y0) = if xs.is_empty() { (0.0, 0.0) } else { (min(&xs), min(&ys)) };
    let (x1, y1) = if xs.is_empty() { (1.0, 1.0) } else { (max(&xs), max(&ys)) };
    let span_x = (x1 - x0).max(1e-9);
    let span_y = (y1 - y0).max(1e-9);
    let scale = ((WIDTH - 2.0 * MARGIN) / span_x).min((HEIGHT - 2.0 * MARGIN) / span_y);
    let ox = (WIDTH - scale * span_x) / 2.0;
    let oy = (HEIGHT - scale * span_y) / 2.0;
    let map = |p: Point2| {
        (
            ox + scale * (p.x - x0),
            HEIGHT - oy - scale * (p.y - y0), // SVG y grows downward
        )
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some((a, b)) = scene.walkway {
        let (ax, ay) = map(a);
        let (bx, by) = map(b);
        let _ = writeln!(
            svg,
            r##"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#555" stroke-width="5" stroke-linecap="round"/>"##
        );
        for (x, y) in [(ax, ay), (bx, by)] {
            let _ = writeln!(
                svg,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#555"/>"##
            );
        }
    }
    if let Some((s, t)) = scene.witness {
        let (sx, sy) = map(s);
        let (tx, ty) = map(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{sx:.2}" y1="{sy:.2}" x2="{tx:.2}" y2="{ty:.2}" stroke="#e67e22" stroke-width="2" stroke-dasharray="6 4"/>"##
        );
    }
    for (i, &p) in scene.points.iter().enumerate() {
        let (x, y) = map(p);
        let fill = match scene.labels.as_ref().map(|ls| ls[i]) {
            Some(Label::Red) => "#d64541",
            Some(Label::Blue) => "#4169b8",
            None => "#333",
        };
        let _ = writeln!(
            svg,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{fill}"/>"##
        );
    }
    for &e in &scene.elevators {
        let (x, y) = map(e);
        let _ = writeln!(
            svg,
            r##"<rect x="{:.2}" y="{:.2}" width="9" height="9" fill="#8e44ad"/>"##,
            x - 4.5,
            y - 4.5
        );
    }
    svg.push_str("</svg>\n");
    svg
}
