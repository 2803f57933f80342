//! Batch front end: reads diagram and presentation documents, runs one
//! computation and renders a versioned report.

use clap::{Parser, Subcommand, ValueEnum};
use hfcalc::admissibility::{check_admissible, AdmissibilityError, AdmissibilityMode};
use hfcalc::cobordism::{
    adjunction_filter, cobordism_invariants, composition_fiber, cut_data, admissible_cut, d_degree_closed,
    degree_shift, c1_squared, restrictions, CobordismError, PresentationDocument, Split,
};
use hfcalc::domain::{connect_triangle, periodic_domain_basis, DomainError};
use hfcalc::floer::{all_classes, homology, FloerError, Flavor, DEFAULT_TRUNCATION};
use hfcalc::linalg::Rat;
use hfcalc::spinc::{psi_class, spinc_partition, surgery_gradings, triangle_family, SpincError};
use hfcalc::surface::{self, DiagramDocument, Family, PointedMultiDiagram, SurfaceError};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

pub const REPORT_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "hfcalc", version, about = "Combinatorial Heegaard Floer calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a diagram document against the surface invariants.
    Validate { diagram: String },
    /// List the intersection tuples of a pair of families.
    Tuples {
        diagram: String,
        #[arg(long, default_value = "alpha,beta")]
        pair: String,
    },
    /// Partition the tuples of a pair into Spin^c classes.
    Spinc {
        diagram: String,
        #[arg(long, default_value = "alpha,beta")]
        pair: String,
    },
    /// Decide weak, strong or triple admissibility.
    Admissible {
        diagram: String,
        #[arg(long, default_value = "weak")]
        mode: String,
        /// Families, comma separated; defaults to alpha,beta or alpha,beta,gamma.
        #[arg(long)]
        families: Option<String>,
        /// Spin^c class index for weak and strong modes; all classes when absent.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Floer homology of every Spin^c class of a pair.
    Hf {
        diagram: String,
        #[arg(long, default_value = "hat")]
        flavor: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncate: i64,
        /// Largest basepoint multiplicity of counted disks.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value = "alpha,beta")]
        pair: String,
    },
    /// Absolute gradings of the outgoing end of a two-handle triple.
    Grading { triple: String },
    /// `⟨c₁, P⟩` of a named triangle class `psi<k><+|->`.
    C1 {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        class: String,
    },
    /// Degree shift of a cobordism in a Spin^c structure.
    Shift {
        presentation: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        c: Option<Vec<i64>>,
    },
    /// Degree of the closed invariant for a closed presentation.
    Dinv {
        presentation: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        c: Option<Vec<i64>>,
    },
    /// Spin^c structures with prescribed restrictions to the two sides of a split.
    Fiber {
        presentation: String,
        /// Two-handles of the first side.
        #[arg(long, value_delimiter = ',')]
        split: Option<Vec<usize>>,
        /// Covector whose restrictions define the fiber.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        c: Option<Vec<i64>>,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Whether a split is an admissible cut.
    Cut {
        presentation: String,
        #[arg(long, value_delimiter = ',')]
        split: Option<Vec<usize>>,
    },
    /// Adjunction filter for a surface of given genus and self-intersection.
    Adjunction {
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[arg(long, allow_negative_numbers = true)]
        self_int: i64,
        #[arg(long, allow_negative_numbers = true)]
        genus: i64,
    },
    /// Run the acceptance suite.
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Domain { name: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn render(&self) -> String {
        match self {
            CliError::Parse(m) => format!("ParseError: {m}"),
            CliError::Domain { name, message } if message.starts_with(name) => message.clone(),
            CliError::Domain { name, message } => format!("{name}: {message}"),
        }
    }
}

macro_rules! domain_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { name: e.name(), message: e.to_string() }
            }
        }
    )*};
}
domain_error!(FloerError, SurfaceError, SpincError, AdmissibilityError, CobordismError, DomainError);

fn parse_err(m: impl Into<String>) -> CliError {
    CliError::Parse(m.into())
}

/// Rendered output: the report and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report<'a> {
    version: &'a str,
    command: &'a str,
    result: Value,
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| parse_err(format!("{path}: {e}")))
}

fn json_err(path: &str, e: serde_json::Error) -> CliError {
    parse_err(format!("{path}: {e}"))
}

/// A diagram from a document, or a built-in model named `model:<name>[:<n>]`.
pub fn load_diagram(input: &str) -> Result<PointedMultiDiagram, CliError> {
    if let Some(rest) = input.strip_prefix("model:") {
        let (name, arg) = match rest.split_once(':') {
            Some((n, a)) => (n, Some(a.parse::<i64>().map_err(|_| parse_err(format!("model argument {a:?}")))?)),
            None => (rest, None),
        };
        let need = || arg.ok_or_else(|| parse_err(format!("model {name} needs an argument")));
        return Ok(match name {
            "sphere" => surface::sphere(),
            "s3" => surface::s3_torus(),
            "finger" => surface::finger_move_s3(),
            "standard" => match need()? {
                n @ 0..=4 => surface::standard_diagram(n as usize),
                n => return Err(parse_err(format!("standard:{n} outside 0..=4"))),
            },
            "lens" => match need()? {
                p @ 1..=24 => surface::lens_diagram(p),
                p => return Err(parse_err(format!("lens:{p} outside 1..=24"))),
            },
            "mcp" => surface::mcp_triple(),
            "unknot" => match need()? {
                n @ (-12..=-1 | 1..=12) => surface::framed_unknot_triple(n),
                n => return Err(parse_err(format!("unknot:{n} outside ±1..=±12"))),
            },
            "stabilization" => surface::stabilization_triple(),
            "one-handle" => surface::one_handle_triple(),
            "degenerate" => surface::degenerate_s1s2(),
            _ => return Err(parse_err(format!("unknown model {name:?}"))),
        });
    }
    let text = read(input)?;
    let doc: DiagramDocument = serde_json::from_str(&text).map_err(|e| json_err(input, e))?;
    Ok(doc.to_diagram()?)
}

pub fn load_presentation(path: &str) -> Result<PresentationDocument, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| json_err(path, e))
}

fn families(s: &str, arity: usize) -> Result<Vec<Family>, CliError> {
    let v: Vec<Family> = s
        .split(',')
        .map(|x| Family::parse(x.trim()).ok_or_else(|| parse_err(format!("unknown family {x:?}"))))
        .collect::<Result<_, _>>()?;
    if arity != 0 && v.len() != arity {
        return Err(parse_err(format!("expected {arity} families, got {s:?}")));
    }
    Ok(v)
}

fn pair(s: &str) -> Result<[Family; 2], CliError> {
    let v = families(s, 2)?;
    Ok([v[0], v[1]])
}

fn rat(r: Rat) -> String {
    r.to_string()
}

/// A table and its structured counterpart.
struct Rendered {
    table: String,
    json: Value,
}

fn parse_psi(name: &str) -> Result<(usize, i64), CliError> {
    let bad = || parse_err(format!("class {name:?} is not of the form psi<k><+|->"));
    let body = name.strip_prefix("psi").ok_or_else(bad)?;
    let (k, sign) = match body.strip_suffix('+') {
        Some(k) => (k, 1),
        None => (body.strip_suffix('-').ok_or_else(bad)?, -1),
    };
    Ok((k.parse().map_err(|_| bad())?, sign))
}

fn resolve_split(doc: &PresentationDocument, split: Option<Vec<usize>>) -> Result<Split, CliError> {
    match split {
        Some(first) => Ok(Split { first }),
        None => doc.splits().into_iter().next().ok_or_else(|| parse_err("no split given and none in the document")),
    }
}

fn resolve_covector(doc: &PresentationDocument, c: Option<Vec<i64>>) -> Result<Vec<i64>, CliError> {
    match c {
        Some(c) => Ok(c),
        None if doc.q.is_empty() => Ok(vec![]),
        None => doc.spinc.first().cloned().ok_or_else(|| parse_err("no covector given and none in the document")),
    }
}

fn dispatch(cmd: Command) -> Result<Rendered, CliError> {
    match cmd {
        Command::Validate { diagram } => {
            let d = load_diagram(&diagram)?;
            let v = d.validate();
            let fams: Vec<Value> = d.labels().iter().map(|f| json!({"family": f.label(), "curves": d.family_curves(*f).map_or(0, |c| c.len())})).collect();
            let mut t = String::new();
            writeln!(t, "valid     {}", v.valid).ok();
            writeln!(t, "genus     {}", d.genus()).ok();
            writeln!(t, "vertices  {}", d.num_vertices()).ok();
            writeln!(t, "edges     {}", d.num_edges()).ok();
            writeln!(t, "faces     {}", d.num_faces()).ok();
            for f in d.labels() {
                writeln!(t, "{:<9} {} curves", f.label(), d.family_curves(f).map_or(0, |c| c.len())).ok();
            }
            Ok(Rendered {
                table: t,
                json: json!({"valid": v.valid, "genus": d.genus(), "vertices": d.num_vertices(), "edges": d.num_edges(),
                    "faces": d.num_faces(), "families": fams, "basepoint": d.basepoint, "violations": v.violations}),
            })
        }
        Command::Tuples { diagram, pair: p } => {
            let d = load_diagram(&diagram)?;
            let [a, b] = pair(&p)?;
            let ts = d.enumerate_tuples(a, b)?;
            let table = ts.iter().enumerate().map(|(i, t)| format!("{i:>3}  {t}\n")).collect();
            Ok(Rendered { table, json: json!({"pair": [a.label(), b.label()], "tuples": ts.iter().map(|t| &t.points).collect::<Vec<_>>()}) })
        }
        Command::Spinc { diagram, pair: p } => {
            let d = load_diagram(&diagram)?;
            let [a, b] = pair(&p)?;
            let classes = spinc_partition(&d, a, b)?;
            let mut t = String::new();
            for c in &classes {
                let m: Vec<String> = c.members.iter().map(|x| x.to_string()).collect();
                writeln!(t, "class {:>2}  torsion={}  {}", c.id, c.torsion, m.join(" ")).ok();
            }
            Ok(Rendered { table: t, json: serde_json::to_value(&classes).expect("serializable") })
        }
        Command::Admissible { diagram, mode, families: fams, class } => {
            let d = load_diagram(&diagram)?;
            let mode = AdmissibilityMode::parse(&mode).ok_or_else(|| parse_err(format!("unknown mode {mode:?}")))?;
            let triple = mode == AdmissibilityMode::Triple;
            let fams = match fams {
                Some(s) => families(&s, if triple { 3 } else { 2 })?,
                None if triple => vec![Family::Alpha, Family::Beta, Family::Gamma],
                None => vec![Family::Alpha, Family::Beta],
            };
            let classes: Vec<(Option<usize>, Vec<surface::IntersectionTuple>)> = if triple {
                vec![(None, vec![])]
            } else {
                let all = spinc_partition(&d, fams[0], fams[1])?;
                let picked: Vec<_> = match class {
                    Some(i) => vec![all.get(i).ok_or_else(|| parse_err(format!("no Spin^c class {i}")))?.clone()],
                    None => all,
                };
                if picked.is_empty() {
                    vec![(None, vec![])]
                } else {
                    picked.into_iter().map(|c| (Some(c.id), vec![c.members[0].clone()])).collect()
                }
            };
            let mut t = String::new();
            let mut out = Vec::new();
            for (id, cl) in classes {
                let v = check_admissible(&d, &fams, &cl, mode)?;
                let label = id.map_or("-".to_string(), |i| i.to_string());
                match &v.certificate {
                    None => writeln!(t, "class {label:>2}  admissible").ok(),
                    Some(c) => writeln!(t, "class {label:>2}  not admissible  certificate {:?}  pairing {}", c.chain, c.pairing).ok(),
                };
                out.push(json!({"class": id, "verdict": v}));
            }
            Ok(Rendered { table: t, json: json!({"mode": mode, "families": fams, "verdicts": out}) })
        }
        Command::Hf { diagram, flavor, truncate, bound, pair: p } => {
            let d = load_diagram(&diagram)?;
            let fl = Flavor::parse(&flavor).ok_or_else(|| parse_err(format!("unknown flavor {flavor:?}")))?;
            if truncate < 1 {
                return Err(parse_err("truncation must be positive"));
            }
            let fams = pair(&p)?;
            let data = all_classes(&d, fams, bound.unwrap_or(truncate))?;
            let mut t = format!("{:>5}  {:>8}  {:>4}  {:>6}\n", "class", "grading", "rank", "U-rank");
            let mut out = Vec::new();
            for (i, c) in data.iter().enumerate() {
                let m = homology(&c.complex(fl, truncate));
                for g in m.groups.iter().filter(|g| g.dim > 0) {
                    writeln!(t, "{i:>5}  {:>8}  {:>4}  {:>6}", rat(g.grading), g.dim, g.u_rank).ok();
                }
                out.push(json!({"class": i, "tuples": c.tuples.iter().map(|x| &x.points).collect::<Vec<_>>(),
                    "arrows": c.arrows, "homology": m}));
            }
            Ok(Rendered { table: t, json: json!({"flavor": fl.label(), "truncation": truncate, "classes": out}) })
        }
        Command::Grading { triple } => {
            let d = load_diagram(&triple)?;
            let g = surgery_gradings(&d, [Family::Alpha, Family::Beta, Family::Gamma])?;
            let mut t = format!("{:<12}  {:>8}  {:>6}\n", "tuple", "grading", "Q");
            for s in &g {
                writeln!(t, "{:<12}  {:>8}  {:>6}", s.w.to_string(), rat(s.grading), rat(s.self_intersection)).ok();
            }
            let rows: Vec<Value> = g
                .iter()
                .map(|s| json!({"tuple": s.w.points, "grading": rat(s.grading), "self_intersection": rat(s.self_intersection)}))
                .collect();
            Ok(Rendered { table: t, json: json!({"gradings": rows}) })
        }
        Command::C1 { triple, class } => {
            let (k, sign) = parse_psi(&class)?;
            let d = load_diagram(&triple)?;
            let fams = [Family::Alpha, Family::Beta, Family::Gamma];
            let lattice = periodic_domain_basis(&d, &fams)?;
            let p = lattice.basis.first().ok_or(CliError::Domain {
                name: "UnsupportedTriple",
                message: "no triply-periodic domain".into(),
            })?;
            let first = |a, b| -> Result<surface::IntersectionTuple, CliError> {
                d.enumerate_tuples(a, b)?.into_iter().next().ok_or_else(|| parse_err(format!("no {a}-{b} tuple")))
            };
            let psi = connect_triangle(
                &d,
                fams,
                &first(Family::Alpha, Family::Beta)?,
                &first(Family::Beta, Family::Gamma)?,
                &first(Family::Alpha, Family::Gamma)?,
            )?;
            let reach = 2 * k as i64 + 4;
            let fam = triangle_family(&d, &psi, p, -reach..=reach)?;
            let c = psi_class(&fam, k, sign).ok_or_else(|| CliError::Domain {
                name: "NoClass",
                message: format!("no class {class}"),
            })?;
            Ok(Rendered {
                table: format!("{}\n", rat(c.c1)),
                json: json!({"class": class, "c1": rat(c.c1), "n_z": c.n_z, "maslov": rat(c.maslov), "spider_number": c.spider_number}),
            })
        }
        Command::Shift { presentation, c } => {
            let doc = load_presentation(&presentation)?;
            let p = doc.presentation()?;
            let c = resolve_covector(&doc, c)?;
            let s = degree_shift(&p, &c)?;
            let inv = cobordism_invariants(&p);
            Ok(Rendered {
                table: format!("{}\n", rat(s)),
                json: json!({"shift": rat(s), "c": c, "chi": inv.chi, "sigma": inv.sigma, "c1_squared": rat(c1_squared(&p.q, &c)?)}),
            })
        }
        Command::Dinv { presentation, c } => {
            let doc = load_presentation(&presentation)?;
            let p = doc.presentation()?;
            let c = resolve_covector(&doc, c)?;
            let inv = cobordism_invariants(&p);
            let chi = inv.chi + 2;
            let sq = c1_squared(&p.q, &c)?;
            let v = d_degree_closed(chi, inv.sigma, sq);
            Ok(Rendered {
                table: format!("{}\n", rat(v)),
                json: json!({"degree": rat(v), "chi": chi, "sigma": inv.sigma, "c1_squared": rat(sq)}),
            })
        }
        Command::Fiber { presentation, split, c, bound } => {
            let doc = load_presentation(&presentation)?;
            let p = doc.presentation()?;
            let split = resolve_split(&doc, split)?;
            let c = resolve_covector(&doc, c)?;
            let (a, b) = restrictions(&p.q, &split, &c)?;
            let f = composition_fiber(&p, &split, &a, &b, bound)?;
            let mut t = String::new();
            writeln!(t, "first      {:?}", f.first).ok();
            writeln!(t, "second     {:?}", f.second).ok();
            writeln!(t, "free rank  {}", f.free_rank).ok();
            writeln!(t, "torsion    {:?}", f.torsion).ok();
            if let Some(m) = &f.members {
                writeln!(t, "members    {}", m.len()).ok();
                for x in m {
                    writeln!(t, "  {x:?}").ok();
                }
            }
            Ok(Rendered { table: t, json: serde_json::to_value(&f).expect("serializable") })
        }
        Command::Cut { presentation, split } => {
            let doc = load_presentation(&presentation)?;
            let p = doc.presentation()?;
            let split = resolve_split(&doc, split)?;
            let data = cut_data(&p, &split)?;
            let ok = admissible_cut(&data);
            Ok(Rendered {
                table: format!(
                    "b2+ first   {}\nb2+ second  {}\ndelta rank  {}\nadmissible  {ok}\n",
                    data.b2_plus_first, data.b2_plus_second, data.delta_rank
                ),
                json: json!({"data": data, "admissible": ok}),
            })
        }
        Command::Adjunction { c1, self_int, genus } => {
            let v = adjunction_filter(c1, self_int, genus)?;
            let label = match v {
                hfcalc::cobordism::Adjunction::Allowed => "allowed",
                hfcalc::cobordism::Adjunction::Excluded => "excluded",
            };
            Ok(Rendered { table: format!("{label}\n"), json: json!({"verdict": label, "bound": 2 * genus - 2, "value": c1 + self_int}) })
        }
        Command::Check => {
            let results = hfcalc::acceptance::run_all();
            let failed = results.iter().filter(|r| !r.passed).count();
            let table = results
                .iter()
                .map(|r| format!("{} {:>2} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.detail))
                .collect();
            let json = json!({"results": results, "failed": failed});
            if failed > 0 {
                return Err(CliError::Domain { name: "AcceptanceFailure", message: format!("{failed} criteria failed\n{table}") });
            }
            Ok(Rendered { table, json })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Tuples { .. } => "tuples",
        Command::Spinc { .. } => "spinc",
        Command::Admissible { .. } => "admissible",
        Command::Hf { .. } => "hf",
        Command::Grading { .. } => "grading",
        Command::C1 { .. } => "c1",
        Command::Shift { .. } => "shift",
        Command::Dinv { .. } => "dinv",
        Command::Fiber { .. } => "fiber",
        Command::Cut { .. } => "cut",
        Command::Adjunction { .. } => "adjunction",
        Command::Check => "check",
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: format!("ParseError: {text}") }
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Table => r.table,
                Format::Json => {
                    let rep = Report { version: REPORT_VERSION, command: name, result: r.json };
                    serde_json::to_string_pretty(&rep).expect("serializable") + "\n"
                }
            };
            Output { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: e.exit_code(), stdout: String::new(), stderr: e.render() + "\n" },
    }
}
