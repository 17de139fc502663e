//! The `rmp` command line.
//!
//! Exit status 0 means a verdict was computed (whatever it is), 2 an input
//! error, 3 a size bound that was hit before the question was settled.
//! With `--format json` every record is one line of JSON.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::amalgam::{construct_d, find_cone_csm, verify_main_theorem_instance, Cone, ConeSearch};
use crate::certificate::{verify_certificate, ArrowCertificate, ResultCache};
use crate::class::{kbar_violation, ClassSpec, StructureClass};
use crate::classprops::{check_hp, check_jep, check_sap};
use crate::enumerate::enumerate_class;
use crate::error::{Error, Result};
use crate::hom::enumerate_embeddings;
use crate::io::{
    cone_from_file, cone_to_file, diagram_from_file, load_json, structure_from_file, structure_to_file,
    template_from_file, DiagramFile, StructureFile, TemplateFile,
};
use crate::multiposet::Multiposet;
use crate::ramsey::{ramsey_witness_search, WitnessOutcome};
use crate::template::{validate_template, Template, TemplateInfo};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rmp", version, about = "Multiposets, embeddings, arrow relations and amalgamation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for cached arrow certificates.
    #[arg(long, env = "RMP_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// Where a template comes from. Presets: `a`, `b`, `c`, `d:N` (N free
/// linear orders), `e:N` (N-1 linear orders sharing one partial order below
/// them, which is element N).
#[derive(Args, Debug, Clone)]
pub struct TemplateArgs {
    #[arg(long, conflicts_with = "preset")]
    pub template: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<String>,
}

/// A class: `--class` (`ch`, `epos`, `csm:S,M`, `k:PRESET`, `kbar:PRESET`)
/// or a template, read as K(T), or K̄(T) with `--bar`.
#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    #[arg(long)]
    pub class: Option<String>,
    #[command(flatten)]
    pub template: TemplateArgs,
    #[arg(long)]
    pub bar: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a template into maximal elements, isolated points and pairs.
    Validate {
        #[command(flatten)]
        template: TemplateArgs,
    },
    /// Decide class membership of a structure.
    Member {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        structure: String,
        /// Take the reflexive-transitive closure of input relations first.
        #[arg(long)]
        close: bool,
    },
    /// List one member per isomorphism class of the given size.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(short = 'n', long)]
        n: usize,
    },
    /// List all embeddings of A into B.
    Embeddings {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1)]
        slots: usize,
        #[arg(long)]
        close: bool,
    },
    /// Decide C → (B)^A_k and print a certificate.
    Arrow {
        /// Optional class the three structures must belong to.
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        slots: usize,
        #[arg(long)]
        close: bool,
        /// Write the certificate to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the smallest class member C with C → (B)^A_k.
    Search {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        close: bool,
    },
    /// Check the hereditary, joint-embedding and strong amalgamation properties.
    Classprops {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(short = 'n', long)]
        n: usize,
        /// Largest amalgam allowed (default 2n-1).
        #[arg(long)]
        sap_bound: Option<usize>,
        #[arg(long, value_enum, default_value_t = Property::All)]
        property: Property,
    },
    /// Build D from a diagram and a cone in C(s,m), searching for a cone if none is given.
    Amalgamate {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        cone: Option<PathBuf>,
        /// Largest apex tried when searching for a cone.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long)]
        close: bool,
        /// Write D and its legs as a cone file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a construction stage by stage, or re-check an arrow certificate.
    Verify {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long, requires = "cone")]
        diagram: Option<PathBuf>,
        #[arg(long, requires = "diagram")]
        cone: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["diagram", "cone"])]
        certificate: Option<PathBuf>,
        #[arg(long)]
        close: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Hp,
    Jep,
    Sap,
    All,
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit<T: Serialize>(&mut self, record: &T, human: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(record)?)?,
            Format::Human => writeln!(self.out, "{}", human())?,
        }
        Ok(())
    }
}

/// Parses arguments, runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match run(&config, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BoundExceeded(_) => EXIT_BOUND,
        _ => EXIT_INPUT,
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    if let Some(jobs) = config.jobs {
        if jobs == 0 {
            return Err(Error::Parse("--jobs must be positive".into()));
        }
        // a pool may already exist when run twice in one process; keep it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let mut o = Output { format: config.format, out };
    match &config.command {
        Command::Validate { template } => {
            let info = validate_template(&load_template(template)?)?;
            o.emit(&info, || describe_info(&info))
        }
        Command::Member { class, structure, close } => {
            let spec = load_class(class)?;
            let x = load_structure(structure, spec.slot_count(), *close)?;
            let member = spec.check(&x)?;
            let why = match &spec {
                ClassSpec::KBar(info) => kbar_violation(info, &x)?.map(|v| v.to_string()),
                _ => None,
            };
            let rec = json!({ "class": spec.to_string(), "member": member, "violation": why });
            o.emit(&rec, || match &why {
                Some(w) => format!("member of {spec}: false ({w})"),
                None => format!("member of {spec}: {member}"),
            })
        }
        Command::Enumerate { class, n } => {
            let spec = load_class(class)?;
            let all = enumerate_class(&spec, *n)?;
            for x in &all {
                o.emit(&structure_to_file(x), || format!("{x:?}"))?;
            }
            if config.format == Format::Human {
                writeln!(o.out, "{} structures", all.len())?;
            }
            Ok(())
        }
        Command::Embeddings { a, b, slots, close } => {
            let a = load_structure(a, *slots, *close)?;
            let b = load_structure(b, *slots, *close)?;
            let maps = enumerate_embeddings(&a, &b)?;
            for f in &maps {
                o.emit(&f.map(), || format!("{:?}", f.map()))?;
            }
            if config.format == Format::Human {
                writeln!(o.out, "{} embeddings", maps.len())?;
            }
            Ok(())
        }
        Command::Arrow { class, a, b, c, k, slots, close, out } => {
            let spec = optional_class(class)?;
            let slots = spec.as_ref().map_or(*slots, |s| s.slot_count());
            let (a, b, c) =
                (load_structure(a, slots, *close)?, load_structure(b, slots, *close)?, load_structure(c, slots, *close)?);
            if let Some(spec) = &spec {
                for (name, x) in [("A", &a), ("B", &b), ("C", &c)] {
                    if !spec.check(x)? {
                        return Err(Error::NotMember(format!("{name} is not in {spec}")));
                    }
                }
            }
            let (cert, cached) = match &config.cache_dir {
                Some(dir) => ResultCache::open(dir)?.arrow(&c, &b, &a, *k)?,
                None => (ArrowCertificate::compute(&c, &b, &a, *k)?, false),
            };
            if let Some(path) = out {
                crate::io::save_json(path, &cert)?;
            }
            o.emit(&cert, || {
                let mut s = format!(
                    "C -> (B)^A_{k}: {} (|hom(A,C)| = {}, |hom(B,C)| = {}, |hom(A,B)| = {}){}",
                    if cert.holds { "holds" } else { "fails" },
                    cert.hom_ac,
                    cert.hom_bc,
                    cert.hom_ab,
                    if cached { " [cached]" } else { "" }
                );
                if let Some(col) = &cert.counterexample {
                    s.push_str(&format!("\ncounterexample coloring: {col:?}"));
                }
                s
            })
        }
        Command::Search { class, a, b, k, max_n, close } => {
            let spec = load_class(class)?;
            let a = load_structure(a, spec.slot_count(), *close)?;
            let b = load_structure(b, spec.slot_count(), *close)?;
            match ramsey_witness_search(&spec, &a, &b, *k, *max_n)? {
                WitnessOutcome::Found { apex, result, scanned } => {
                    let rec = json!({
                        "found": true, "size": apex.size(), "apex": structure_to_file(&apex),
                        "hom_ac": result.hom_ac, "hom_bc": result.hom_bc, "scanned": scanned,
                    });
                    o.emit(&rec, || format!("smallest witness has size {}: {apex:?}", apex.size()))
                }
                WitnessOutcome::NoneUpTo { max_n, scanned } => {
                    let rec = json!({ "found": false, "max_n": max_n, "scanned": scanned });
                    o.emit(&rec, || format!("no witness of size <= {max_n}"))
                }
            }
        }
        Command::Classprops { class, n, sap_bound, property } => {
            let spec = load_class(class)?;
            let bound = sap_bound.unwrap_or((2 * n).saturating_sub(1).max(1));
            let mut reports = Vec::new();
            if matches!(property, Property::Hp | Property::All) {
                reports.push(check_hp(&spec, *n)?);
            }
            if matches!(property, Property::Jep | Property::All) {
                reports.push(check_jep(&spec, *n)?);
            }
            if matches!(property, Property::Sap | Property::All) {
                reports.push(check_sap(&spec, *n, bound)?);
            }
            for r in &reports {
                o.emit(r, || {
                    let mut s = format!("{} for {} up to size {}: {} ({} instances)", r.property, r.class, r.n, r.holds, r.instances);
                    if let Some(f) = &r.failure {
                        s.push_str(&format!("\n  {f}"));
                    }
                    s
                })?;
            }
            Ok(())
        }
        Command::Amalgamate { template, diagram, cone, max_size, close, out } => {
            let info = validate_template(&load_template(template)?)?;
            let d = load_diagram(diagram, *close)?;
            let cone = match cone {
                Some(path) => cone_from_file(&load_json(path)?, d.top().size(), *close)?,
                None => match find_cone_csm(&d, info.s, info.m, *max_size)? {
                    ConeSearch::Found(c) => c,
                    ConeSearch::NoneUpTo(n) => {
                        let rec = json!({ "cone": null, "none_up_to": n });
                        return o.emit(&rec, || format!("no cone in C({},{}) with apex size <= {n}", info.s, info.m));
                    }
                },
            };
            let built = construct_d(&d, &cone, &info)?;
            let result = Cone { apex: built.d.clone(), legs: built.legs.clone() };
            if let Some(path) = out {
                crate::io::save_json(path, &cone_to_file(&result))?;
            }
            let rec = json!({ "cone": cone_to_file(&cone), "d": cone_to_file(&result), "points": built.points });
            o.emit(&rec, || {
                let legs: Vec<_> = result.legs.iter().map(|f| f.map().to_vec()).collect();
                format!("cone apex: {:?}\nD = {:?}\nlegs into D: {legs:?}", cone.apex, built.d)
            })
        }
        Command::Verify { template, diagram, cone, certificate, close } => {
            if let Some(path) = certificate {
                let cert: ArrowCertificate = load_json(path)?;
                let ok = verify_certificate(&cert)?;
                let rec = json!({ "certificate": path, "verified": ok });
                return o.emit(&rec, || format!("certificate verified: {ok}"));
            }
            let (Some(diagram), Some(cone)) = (diagram, cone) else {
                return Err(Error::Parse("verify needs --certificate, or --diagram and --cone".into()));
            };
            let info = validate_template(&load_template(template)?)?;
            let d = load_diagram(diagram, *close)?;
            let cone = cone_from_file(&load_json(cone)?, d.top().size(), *close)?;
            let report = verify_main_theorem_instance(&d, &cone, &info)?;
            o.emit(&report, || report.to_string())
        }
    }
}

fn describe_info(info: &TemplateInfo) -> String {
    let pairs: Vec<String> = info.pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!(
        "t={} maximal={:?} isolated={:?} s={}, m={}, pairs [{}]",
        info.t,
        info.maximal,
        info.isolated,
        info.s,
        info.m,
        pairs.join(",")
    )
}

pub fn load_template(args: &TemplateArgs) -> Result<Template> {
    match (&args.template, &args.preset) {
        (Some(path), _) => template_from_file(&load_json::<TemplateFile>(path)?),
        (None, Some(name)) => Template::preset(name),
        (None, None) => Err(Error::Parse("give --template FILE or --preset NAME".into())),
    }
}

fn optional_class(args: &ClassArgs) -> Result<Option<ClassSpec>> {
    if args.class.is_none() && args.template.template.is_none() && args.template.preset.is_none() {
        return Ok(None);
    }
    load_class(args).map(Some)
}

pub fn load_class(args: &ClassArgs) -> Result<ClassSpec> {
    if let Some(text) = &args.class {
        if args.template.template.is_some() || args.template.preset.is_some() {
            return Err(Error::Parse("give either --class or a template, not both".into()));
        }
        return ClassSpec::parse(text);
    }
    let t = load_template(&args.template)?;
    if args.bar {
        ClassSpec::kbar(&t)
    } else {
        Ok(ClassSpec::K(t))
    }
}

/// A structure file, or a name: `point`, `chainN` (every slot the same
/// N-chain).
pub fn load_structure(spec: &str, slots: usize, close: bool) -> Result<Multiposet> {
    if spec == "point" {
        return Ok(Multiposet::point(slots));
    }
    if let Some(n) = spec.strip_prefix("chain").and_then(|n| n.parse::<usize>().ok()) {
        return Multiposet::chain(n, slots);
    }
    let x = structure_from_file(&load_json::<StructureFile>(Path::new(spec))?, close)?;
    if x.slots() != slots {
        return Err(Error::SlotMismatch { expected: slots, found: x.slots() });
    }
    Ok(x)
}

fn load_diagram(path: &Path, close: bool) -> Result<crate::amalgam::BinaryDiagram> {
    let f: DiagramFile = load_json(path)?;
    diagram_from_file(&f, path.parent().unwrap_or(Path::new(".")), close)
}
