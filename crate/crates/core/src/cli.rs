//! Command-line driver. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::congruence::{
    congruence_from_hom, congruence_profile, validate_affine_congruence, AffineCongruence, CongruenceError,
    CongruenceReport, Partition, Violation,
};
use crate::doc::{
    parse_document, parse_groupoid, parse_hom, parse_norm, BihomDocument, DocError, Document,
    GroupoidDocument, HomDocument, LoadError,
};
use crate::families;
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidError, Limits, ObjectId};
use crate::hom::{GroupoidHom, HomError};
use crate::norm::{
    norm_from_sip, scale_check, ConsistentNorm, Doubling, NormError, NormTable, ParallelogramStatus,
};
use crate::report::{arrow, arrow_set, arrows, groupoid_error_witness, object, Report};
use crate::scalar::{GaussianRational, Rational};
use crate::sip::{Bihom, SipError, Slot, TransitiveReport};

#[derive(Debug, Parser)]
#[command(name = "grpd", version, about = "Exact verification for finite groupoids, semi-inner products and groupoid norms")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pair,
    Group,
    #[value(name = "affine_cyclic", alias = "affine-cyclic")]
    AffineCyclic,
    #[value(name = "complex_pair", alias = "complex-pair")]
    ComplexPair,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Pair => "pair",
            Family::Group => "group",
            Family::AffineCyclic => "affine_cyclic",
            Family::ComplexPair => "complex_pair",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a groupoid from a built-in family.
    Gen {
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Also write the family's canonical homomorphism.
        #[arg(long)]
        hom_out: Option<PathBuf>,
    },
    /// Check the groupoid axioms.
    Validate { file: PathBuf },
    /// Check an affine congruence given by a homomorphism or a partition.
    Congruence {
        file: PathBuf,
        #[arg(long, conflicts_with = "partition", required_unless_present = "partition")]
        hom: Option<PathBuf>,
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Completeness, simplicity and efficiency.
        #[arg(long)]
        profile: bool,
        /// The congruence and parallelism axioms (default without --profile).
        #[arg(long)]
        check_axioms: bool,
    },
    /// Semi-inner products.
    #[command(subcommand)]
    Sip(SipCommand),
    /// Groupoid norms.
    #[command(subcommand)]
    Norm(NormCommand),
    /// Rebuild a real semi-inner product from a norm and a congruence.
    Polarize {
        file: PathBuf,
        #[arg(long)]
        sq: PathBuf,
        #[arg(long)]
        lambda: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run every check on a groupoid and a θ-family.
    Report {
        #[arg(long, required = true)]
        all: bool,
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        thetas: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BihomSource {
    /// Homomorphism documents combined as B(g,h) = Σ θ_i(g) conj(θ_i(h)).
    #[arg(long, num_args = 1..)]
    pub thetas: Vec<PathBuf>,
    /// A bihomomorphism document.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SipCommand {
    /// Check the semi-inner product conditions.
    Check {
        file: PathBuf,
        #[command(flatten)]
        source: BihomSource,
    },
    /// The ↑↑, ↑↓ and ⊥ relations between two arrows.
    Relate {
        file: PathBuf,
        #[command(flatten)]
        source: BihomSource,
        #[arg(long = "g")]
        g: String,
        #[arg(long = "h")]
        h: String,
    },
    /// The set c • g, optionally at one source fiber.
    ScalarSet {
        file: PathBuf,
        #[command(flatten)]
        source: BihomSource,
        /// RE or RE,IM with rational parts.
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "g")]
        g: String,
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum NormCommand {
    /// Check the norm axioms, and consistency with a congruence if given.
    Check {
        file: PathBuf,
        #[arg(long, conflicts_with = "sq", required_unless_present = "sq")]
        from_sip: Option<PathBuf>,
        #[arg(long)]
        sq: Option<PathBuf>,
        /// Partition or homomorphism document.
        #[arg(long)]
        lambda: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct InputError(String);

impl From<DocError> for InputError {
    fn from(e: DocError) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult<T> = Result<T, InputError>;

enum Done {
    Report(Report),
    Text(String),
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let limits = Limits::from_env();
    match dispatch(cli.command, limits) {
        Ok(Done::Report(report)) => Output {
            code: report.exit_code(),
            stdout: match cli.format {
                Format::Text => report.render_text(),
                Format::Json => report.render_json(),
            },
            stderr: String::new(),
        },
        Ok(Done::Text(text)) => Output { code: 0, stdout: text, stderr: String::new() },
        Err(InputError(message)) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn dispatch(command: Command, limits: Limits) -> CmdResult<Done> {
    match command {
        Command::Gen { family, size, output, hom_out } => gen(family, size, output, hom_out, limits).map(Done::Text),
        Command::Validate { file } => validate(&file, limits).map(Done::Report),
        Command::Congruence { file, hom, partition, profile, check_axioms } => {
            congruence(&file, hom.as_deref(), partition.as_deref(), profile, check_axioms, limits).map(Done::Report)
        }
        Command::Sip(SipCommand::Check { file, source }) => sip_check(&file, &source, limits).map(Done::Report),
        Command::Sip(SipCommand::Relate { file, source, g, h }) => {
            sip_relate(&file, &source, &g, &h, limits).map(Done::Report)
        }
        Command::Sip(SipCommand::ScalarSet { file, source, c, g, at }) => {
            sip_scalar_set(&file, &source, &c, &g, at.as_deref(), limits).map(Done::Report)
        }
        Command::Norm(NormCommand::Check { file, from_sip, sq, lambda }) => {
            norm_check(&file, from_sip.as_deref(), sq.as_deref(), lambda.as_deref(), limits).map(Done::Report)
        }
        Command::Polarize { file, sq, lambda, output } => {
            polarize(&file, &sq, &lambda, output.as_deref(), limits).map(Done::Report)
        }
        Command::Report { file, thetas, .. } => full_report(&file, &thetas, limits).map(Done::Report),
    }
}

fn read(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult<()> {
    std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, DocError>) -> CmdResult<T> {
    r.map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_groupoid(path: &Path, limits: Limits) -> CmdResult<FiniteGroupoid> {
    let doc = in_file(path, parse_groupoid(&read(path)?))?;
    match doc.to_groupoid(limits) {
        Ok(g) => Ok(g),
        Err(e) => Err(InputError(format!("{}: {e}", path.display()))),
    }
}

fn arrow_named(g: &FiniteGroupoid, label: &str) -> CmdResult<ArrowId> {
    g.arrow_by_label(label)
        .ok_or_else(|| InputError(format!("unknown arrow '{label}'")))
}

fn object_named(g: &FiniteGroupoid, label: &str) -> CmdResult<ObjectId> {
    g.object_by_label(label)
        .ok_or_else(|| InputError(format!("unknown object '{label}'")))
}

fn parse_scalar(text: &str) -> CmdResult<GaussianRational> {
    let bad = |_| InputError(format!("bad scalar '{text}', expected RE or RE,IM"));
    match text.split_once(',') {
        Some((re, im)) => Ok(GaussianRational::new(
            Rational::from_str(re.trim()).map_err(bad)?,
            Rational::from_str(im.trim()).map_err(bad)?,
        )),
        None => Ok(GaussianRational::real(Rational::from_str(text.trim()).map_err(bad)?)),
    }
}

fn hom_failure(report: &mut Report, e: &HomError) {
    let witness = match e {
        HomError::NotAdditive { g, h } => vec![g.clone(), h.clone()],
        _ => Vec::new(),
    };
    report.fail("homomorphism", witness, e.to_string());
}

fn sip_failure(report: &mut Report, g: &FiniteGroupoid, e: &SipError) {
    match e {
        SipError::NotSeparating(a) => {
            report.fail("separating", vec![arrow(g, *a)], "every homomorphism vanishes on this non-identity arrow");
        }
        SipError::NotBihom(v) => {
            let slot = match v.slot {
                Slot::First => "first",
                Slot::Second => "second",
            };
            report.fail(
                "bihomomorphism",
                arrows(g, &[v.g, v.h, v.k]),
                format!("additivity fails in the {slot} argument"),
            );
        }
        SipError::NotReal(x, y) => {
            report.fail("real table", arrows(g, &[*x, *y]), "non-real entry in a real table");
        }
        SipError::NotScalar(i) => {
            report.fail("scalar homomorphisms", Vec::new(), format!("homomorphism {i} is not scalar valued"));
        }
        other => {
            report.fail("semi-inner product construction", Vec::new(), other.to_string());
        }
    }
}

/// Loads a bihomomorphism; construction failures become failing checks.
fn load_bihom<'g>(g: &'g FiniteGroupoid, source: &BihomSource, report: &mut Report) -> CmdResult<Option<Bihom<'g>>> {
    let doc = match &source.table {
        Some(path) => bihom_document(path)?,
        None => BihomDocument::Thetas(
            source
                .thetas
                .iter()
                .map(|p| in_file(p, parse_hom(&read(p)?)))
                .collect::<CmdResult<_>>()?,
        ),
    };
    bihom_from_doc(g, &doc, report)
}

/// A bihomomorphism document, or a homomorphism document as a one-element
/// θ-family.
fn bihom_document(path: &Path) -> CmdResult<BihomDocument> {
    match in_file(path, parse_document(&read(path)?))? {
        Document::Bihom(d) => Ok(d),
        Document::Hom(h) => Ok(BihomDocument::Thetas(vec![h])),
        other => Err(InputError(format!(
            "{}: expected a bihom or hom document, found a {} document",
            path.display(),
            other.kind()
        ))),
    }
}

fn bihom_from_doc<'g>(g: &'g FiniteGroupoid, doc: &BihomDocument, report: &mut Report) -> CmdResult<Option<Bihom<'g>>> {
    match doc.to_bihom(g) {
        Ok(b) => Ok(Some(b)),
        Err(LoadError::Hom(e)) => {
            hom_failure(report, &e);
            Ok(None)
        }
        Err(LoadError::Sip(e)) => {
            sip_failure(report, g, &e);
            Ok(None)
        }
        Err(e) => Err(InputError(e.to_string())),
    }
}

/// A partition document, or a homomorphism document read as its congruence.
fn load_partition(g: &FiniteGroupoid, path: &Path, report: &mut Report) -> CmdResult<Option<Partition>> {
    match in_file(path, parse_document(&read(path)?))? {
        Document::Partition(d) => Ok(Some(in_file(path, d.to_partition(g))?)),
        Document::Hom(d) => match d.to_hom(g) {
            Ok(theta) => Ok(Some(congruence_from_hom(&theta))),
            Err(LoadError::Hom(e)) => {
                hom_failure(report, &e);
                Ok(None)
            }
            Err(e) => Err(InputError(format!("{}: {e}", path.display()))),
        },
        other => Err(InputError(format!(
            "{}: expected a partition or hom document, found a {} document",
            path.display(),
            other.kind()
        ))),
    }
}

fn violation_witness(g: &FiniteGroupoid, v: &Violation) -> Vec<String> {
    arrows(g, &[v.g1, v.g2, v.h1, v.h2])
}

fn axiom_checks(report: &mut Report, g: &FiniteGroupoid, axioms: &CongruenceReport) {
    report.check_witness("congruence", axioms.congruence.map(|v| violation_witness(g, &v)));
    report.check_witness("parallelism", axioms.parallelism.map(|v| violation_witness(g, &v)));
}

fn profile_checks(report: &mut Report, g: &FiniteGroupoid, lambda: &Partition) {
    let profile = congruence_profile(g, lambda).expect("checked congruence");
    let at = |w: Option<(ArrowId, ObjectId)>| w.map(|(a, p)| vec![arrow(g, a), object(g, p)]);
    report.check_witness("complete", at(profile.incomplete_at));
    report.check_witness("simple", at(profile.not_simple_at));
    report.check_witness("efficient", at(profile.inefficient_at()));
}

fn sip_checks(report: &mut Report, b: &Bihom<'_>) {
    let g = b.groupoid();
    let r = b.sip_report();
    report.check_witness("conjugate symmetry", r.conjugate_symmetry.map(|(x, y)| arrows(g, &[x, y])));
    report.check_witness("positive definiteness", r.positive_definiteness.map(|x| vec![arrow(g, x)]));
    report.check_witness("cauchy-schwarz", r.cauchy_schwarz.map(|(x, y)| arrows(g, &[x, y])));
}

fn norm_checks(report: &mut Report, n: &NormTable<'_>) {
    let g = n.groupoid();
    let r = n.validate();
    report.check_witness("identity vanishing", r.identity_vanishing.map(|x| vec![arrow(g, x)]));
    report.check_witness("triangle inequality", r.triangle.map(|(x, y)| arrows(g, &[x, y])));
    report.check_witness("inverse symmetry", r.inverse_symmetry.map(|x| vec![arrow(g, x)]));
    report.check_witness("reverse triangle inequality", r.reverse_triangle.map(|(x, y)| arrows(g, &[x, y])));
}

/// Consistency checks; returns the consistent pair when they pass.
fn consistency_checks<'a, 'g>(
    report: &mut Report,
    n: &'a NormTable<'g>,
    lambda: &'a AffineCongruence<'g>,
) -> Option<ConsistentNorm<'a, 'g>> {
    let g = n.groupoid();
    let r = n.consistency(lambda).expect("same groupoid");
    report.check_witness("constant on classes", r.constant_on_classes.map(|(x, y)| arrows(g, &[x, y])));
    match r.doubling {
        Doubling::Holds { instances } => {
            report.pass("doubling", format!("true ({instances} composable class-mate pairs)"));
        }
        Doubling::Vacuous => {
            report
                .pass("doubling", "vacuous")
                .note = Some("only identities compose with their class-mates".into());
        }
        Doubling::Fails(x, y) => {
            report.check("doubling", false, arrows(g, &[x, y]));
        }
    }
    n.consistent_with(lambda).ok()
}

fn parallelogram_checks(report: &mut Report, cn: &ConsistentNorm<'_, '_>) {
    let g = cn.norm().groupoid();
    let (mut holds, mut missing) = (0usize, 0usize);
    let mut failure = None;
    for x in g.arrows() {
        for y in g.arrows() {
            match cn.parallelogram(x, y).status {
                ParallelogramStatus::Holds => holds += 1,
                ParallelogramStatus::NoWitness => missing += 1,
                ParallelogramStatus::Fails { g1, g2, h1, h2 } => {
                    failure.get_or_insert((x, y, [g1, g2, h1, h2]));
                }
            }
        }
    }
    match failure {
        None => {
            report.pass("parallelogram", format!("true ({holds} pairs hold, {missing} without witness)"));
        }
        Some((x, y, quad)) => {
            report.fail(
                "parallelogram",
                arrows(g, &quad),
                format!("pair ({}, {})", arrow(g, x), arrow(g, y)),
            );
        }
    }
}

fn gen(family: Family, size: usize, output: Option<PathBuf>, hom_out: Option<PathBuf>, limits: Limits) -> CmdResult<String> {
    let generated = families::generate(family.name(), size).map_err(|e| InputError(e.to_string()))?;
    let g = &generated.groupoid;
    if g.arrow_count() > limits.max_arrows {
        return Err(InputError(
            GroupoidError::TooManyArrows { count: g.arrow_count(), cap: limits.max_arrows }.to_string(),
        ));
    }
    let text = Document::Groupoid(GroupoidDocument::from_groupoid(g)).to_json();
    if let Some(path) = hom_out {
        let hom = generated
            .homs
            .first()
            .ok_or_else(|| InputError(format!("{} has no canonical homomorphism", family.name())))?;
        write(&path, &Document::Hom(HomDocument::from_values(g, hom)).to_json())?;
    }
    match output {
        Some(path) => {
            write(&path, &text)?;
            Ok(format!(
                "wrote {} ({} objects, {} arrows)\n",
                path.display(),
                g.object_count(),
                g.arrow_count()
            ))
        }
        None => Ok(text),
    }
}

fn validate(file: &Path, limits: Limits) -> CmdResult<Report> {
    let doc = in_file(file, parse_groupoid(&read(file)?))?;
    let raw = in_file(file, doc.to_raw())?;
    let mut report = Report::new("validate");
    match FiniteGroupoid::from_raw_with_limits(raw, limits) {
        Ok(g) => {
            report.check("groupoid axioms", true, Vec::new());
            report.fact("objects", g.object_count());
            report.fact("arrows", g.arrow_count());
            report.fact("transitive", g.is_transitive());
        }
        Err(e @ (GroupoidError::TooManyArrows { .. } | GroupoidError::TooManyObjects { .. })) => {
            return Err(InputError(format!("{}: {e}", file.display())));
        }
        Err(e) => {
            report.fail("groupoid axioms", groupoid_error_witness(&e), e.to_string());
        }
    }
    Ok(report)
}

fn congruence(
    file: &Path,
    hom: Option<&Path>,
    partition: Option<&Path>,
    profile: bool,
    check_axioms: bool,
    limits: Limits,
) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let mut report = Report::new("congruence");
    let lambda = match (hom, partition) {
        (Some(path), _) => {
            let doc = in_file(path, parse_hom(&read(path)?))?;
            match doc.to_hom(&g) {
                Ok(theta) => {
                    report.fact("monomorphism", theta.is_monomorphism());
                    congruence_from_hom(&theta)
                }
                Err(LoadError::Hom(e)) => {
                    hom_failure(&mut report, &e);
                    return Ok(report);
                }
                Err(e) => return Err(InputError(format!("{}: {e}", path.display()))),
            }
        }
        (None, Some(path)) => match load_partition(&g, path, &mut report)? {
            Some(p) => p,
            None => return Ok(report),
        },
        (None, None) => return Err(InputError("one of --hom and --partition is required".into())),
    };
    report.fact("classes", lambda.class_count());
    let axioms = validate_affine_congruence(&g, &lambda).map_err(|e| InputError(e.to_string()))?;
    let show_axioms = check_axioms || !profile;
    if show_axioms {
        axiom_checks(&mut report, &g, &axioms);
    }
    if profile {
        match axioms.first_violation() {
            None => profile_checks(&mut report, &g, &lambda),
            Some(v) => {
                if !show_axioms {
                    report.fail("affine congruence", violation_witness(&g, &v), format!("{:?} axiom fails", v.axiom));
                }
                for name in ["complete", "simple", "efficient"] {
                    report.not_applicable(name, "not an affine congruence");
                }
            }
        }
    }
    Ok(report)
}

fn sip_check(file: &Path, source: &BihomSource, limits: Limits) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let mut report = Report::new("sip check");
    if let Some(b) = load_bihom(&g, source, &mut report)? {
        report.fact("field", format!("{:?}", b.field()).to_lowercase());
        sip_checks(&mut report, &b);
    }
    Ok(report)
}

fn sip_relate(file: &Path, source: &BihomSource, x: &str, y: &str, limits: Limits) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let (x, y) = (arrow_named(&g, x)?, arrow_named(&g, y)?);
    let mut report = Report::new("sip relate");
    if let Some(b) = load_bihom(&g, source, &mut report)? {
        report.pass("bihomomorphism", "true");
        let r = b.relate(x, y);
        report.fact("congruent", r.congruent);
        report.fact("opposite", r.opposite);
        report.fact("orthogonal", r.orthogonal);
    }
    Ok(report)
}

fn sip_scalar_set(
    file: &Path,
    source: &BihomSource,
    c: &str,
    x: &str,
    at: Option<&str>,
    limits: Limits,
) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let c = parse_scalar(c)?;
    let x = arrow_named(&g, x)?;
    let at = at.map(|p| object_named(&g, p)).transpose()?;
    let mut report = Report::new("sip scalar-set");
    let Some(b) = load_bihom(&g, source, &mut report)? else {
        return Ok(report);
    };
    let members = match b.scalar_set(&c, x, at) {
        Ok(members) => {
            report.check("one member per source fiber", true, Vec::new());
            members
        }
        Err(SipError::FiberNotSimple { p, k1, k2 }) => {
            report.fail(
                "one member per source fiber",
                vec![object(&g, p), arrow(&g, k1), arrow(&g, k2)],
                "two members share a source",
            );
            return Ok(report);
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    report.fact("members", arrow_set(&g, &members));
    let law = b.conjugate_scalar_witness(&c, x).expect("checked above");
    report.check_witness("conjugate scalar law", law.map(|(y, k)| arrows(&g, &[y, k])));
    let mates = members
        .iter()
        .flat_map(|k1| members.iter().map(move |k2| (*k1, *k2)))
        .find(|(k1, k2)| !b.relate(*k1, *k2).congruent);
    report.check_witness("members congruent", mates.map(|(k1, k2)| arrows(&g, &[k1, k2])));
    match norm_from_sip(&b) {
        Ok(n) => {
            let scaled = scale_check(&n, &b, &c, x).expect("checked above");
            report.check_witness("norm scaling", scaled.failure.map(|h| vec![arrow(&g, h)]));
        }
        Err(_) => {
            report.not_applicable("norm scaling", "not a semi-inner product");
        }
    }
    Ok(report)
}

fn norm_check(
    file: &Path,
    from_sip: Option<&Path>,
    sq: Option<&Path>,
    lambda: Option<&Path>,
    limits: Limits,
) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let mut report = Report::new("norm check");
    let norm = match (from_sip, sq) {
        (Some(path), _) => {
            let doc = bihom_document(path)?;
            let Some(b) = bihom_from_doc(&g, &doc, &mut report)? else {
                return Ok(report);
            };
            match norm_from_sip(&b) {
                Ok(n) => n,
                Err(_) => {
                    report.pass("bihomomorphism", "true");
                    sip_checks(&mut report, &b);
                    return Ok(report);
                }
            }
        }
        (None, Some(path)) => {
            let doc = in_file(path, parse_norm(&read(path)?))?;
            doc.to_norm(&g).map_err(|e| InputError(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(InputError("one of --from-sip and --sq is required".into())),
    };
    norm_checks(&mut report, &norm);
    if let Some(path) = lambda {
        let Some(partition) = load_partition(&g, path, &mut report)? else {
            return Ok(report);
        };
        match AffineCongruence::new(&g, partition) {
            Ok(lambda) => {
                if let Some(cn) = consistency_checks(&mut report, &norm, &lambda) {
                    parallelogram_checks(&mut report, &cn);
                }
            }
            Err(CongruenceError::NotACongruence(v)) => {
                report.fail("affine congruence", violation_witness(&g, &v), format!("{:?} axiom fails", v.axiom));
            }
            Err(e) => return Err(InputError(e.to_string())),
        }
    }
    Ok(report)
}

fn polarize(file: &Path, sq: &Path, lambda: &Path, output: Option<&Path>, limits: Limits) -> CmdResult<Report> {
    let g = load_groupoid(file, limits)?;
    let mut report = Report::new("polarize");
    let doc = in_file(sq, parse_norm(&read(sq)?))?;
    let norm = doc.to_norm(&g).map_err(|e| InputError(format!("{}: {e}", sq.display())))?;
    let Some(partition) = load_partition(&g, lambda, &mut report)? else {
        return Ok(report);
    };
    let lambda = match AffineCongruence::new(&g, partition) {
        Ok(l) => l,
        Err(CongruenceError::NotACongruence(v)) => {
            report.fail("affine congruence", violation_witness(&g, &v), format!("{:?} axiom fails", v.axiom));
            return Ok(report);
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    let Some(cn) = consistency_checks(&mut report, &norm, &lambda) else {
        return Ok(report);
    };
    let form = match cn.polarize_partial() {
        Ok(form) => form,
        Err(NormError::WitnessDisagreement { g: x, h: y, values }) => {
            let values: Vec<String> = values.iter().map(Rational::to_string).collect();
            report.fail("witness agreement", arrows(&g, &[x, y]), format!("values {}", values.join(", ")));
            return Ok(report);
        }
        Err(NormError::ParallelogramFails { g: x, h: y }) => {
            report.fail("parallelogram", arrows(&g, &[x, y]), "identity fails for this pair");
            return Ok(report);
        }
        Err(e) => return Err(InputError(e.to_string())),
    };
    report.check("witness agreement", true, Vec::new());
    polarized_checks(&mut report, &form);
    if let Some(path) = output {
        write(path, &Document::Bihom(BihomDocument::from_polarized(&form)).to_json())?;
    }
    match form.first_missing() {
        Some((x, y)) => {
            report.not_applicable(
                "strict polarization",
                format!("no witness for ({}, {})", arrow(&g, x), arrow(&g, y)),
            );
        }
        None => match form.into_bihom() {
            Ok(_) => {
                report.check("strict polarization", true, Vec::new());
            }
            Err(e) => {
                report.fail("strict polarization", Vec::new(), e.to_string());
            }
        },
    }
    Ok(report)
}

fn polarized_checks(report: &mut Report, form: &crate::norm::PolarizedForm<'_>) {
    let g = form.groupoid();
    let r = form.sip_report();
    report.check_witness("polarized symmetry", r.symmetry.map(|(x, y)| arrows(g, &[x, y])));
    report.check_witness("polarized diagonal", r.diagonal.map(|x| vec![arrow(g, x)]));
    report.check_witness("polarized positive definiteness", r.positive_definiteness.map(|x| vec![arrow(g, x)]));
    report.check_witness("polarized cauchy-schwarz", r.cauchy_schwarz.map(|(x, y)| arrows(g, &[x, y])));
    report.check_witness("polarized additivity", form.additivity().map(|v| arrows(g, &[v.g, v.h, v.k])));
    let (defined, total) = form.coverage();
    report.fact("polarization coverage", format!("{defined}/{total} pairs"));
}

fn full_report(file: &Path, theta_paths: &[PathBuf], limits: Limits) -> CmdResult<Report> {
    let mut report = Report::new("report --all");
    let doc = in_file(file, parse_groupoid(&read(file)?))?;
    let raw = in_file(file, doc.to_raw())?;
    let g = match FiniteGroupoid::from_raw_with_limits(raw, limits) {
        Ok(g) => g,
        Err(e) => {
            report.fail("groupoid axioms", groupoid_error_witness(&e), e.to_string());
            return Ok(report);
        }
    };
    report.check("groupoid axioms", true, Vec::new());
    report.fact("objects", g.object_count());
    report.fact("arrows", g.arrow_count());

    let mut thetas = Vec::new();
    for (i, path) in theta_paths.iter().enumerate() {
        let doc = in_file(path, parse_hom(&read(path)?))?;
        match doc.to_hom(&g) {
            Ok(theta) => {
                theta_checks(&mut report, i, &theta);
                thetas.push(theta);
            }
            Err(LoadError::Hom(e)) => {
                hom_failure(&mut report, &e);
                return Ok(report);
            }
            Err(e) => return Err(InputError(format!("{}: {e}", path.display()))),
        }
    }

    let b = match crate::sip::sip_from_thetas(thetas) {
        Ok(b) => b,
        Err(e) => {
            sip_failure(&mut report, &g, &e);
            return Ok(report);
        }
    };
    report.fact("field", format!("{:?}", b.field()).to_lowercase());
    sip_checks(&mut report, &b);

    let bp = b.b_partition();
    report.check_witness("b-partition congruence", bp.axioms.first_violation().map(|v| violation_witness(&g, &v)));
    report.check_witness(
        "b-partition simple",
        bp.profile.not_simple_at.map(|(a, p)| vec![arrow(&g, a), object(&g, p)]),
    );
    report.fact("b-partition classes", bp.partition.class_count());
    report.fact("b-affine", bp.b_affine);
    match bp.theta_characterization {
        Some(ok) => {
            report.check("theta characterization", ok, Vec::new());
        }
        None => {
            report.not_applicable("theta characterization", "no arrows with θ_i(h_j) = δ_ij");
        }
    }
    report.check_witness(
        "opposite composition",
        b.opposite_composition_witness().map(|(x, y, z)| arrows(&g, &[x, y, z])),
    );
    match b.transitive_props_check() {
        TransitiveReport::NotApplicable => {
            report.not_applicable("vanishing-row extension", "groupoid is not transitive");
            report.not_applicable("fiber reduction", "groupoid is not transitive");
        }
        TransitiveReport::Checked { vanishing_extension, fiber_reduction } => {
            report.check_witness(
                "vanishing-row extension",
                vanishing_extension.map(|(a, p)| vec![arrow(&g, a), object(&g, p)]),
            );
            report.check_witness("fiber reduction", fiber_reduction.map(|p| vec![object(&g, p)]));
        }
    }

    scalar_set_checks(&mut report, &b);

    let Ok(norm) = norm_from_sip(&b) else {
        return Ok(report);
    };
    norm_checks(&mut report, &norm);
    let lambda = AffineCongruence::new(&g, bp.partition.clone());
    let Ok(lambda) = lambda else {
        return Ok(report);
    };
    let Some(cn) = consistency_checks(&mut report, &norm, &lambda) else {
        return Ok(report);
    };
    parallelogram_checks(&mut report, &cn);
    match cn.polarize_partial() {
        Ok(form) => {
            let mismatch = g.arrows().flat_map(|x| g.arrows().map(move |y| (x, y))).find(|&(x, y)| {
                form.value(x, y)
                    .is_some_and(|v| GaussianRational::real(v.clone()) != *b.value(x, y))
            });
            if b.field() == crate::sip::Field::Real {
                report.check_witness("polarization recovers B", mismatch.map(|(x, y)| arrows(&g, &[x, y])));
            } else {
                report.not_applicable("polarization recovers B", "B is complex valued");
            }
            polarized_checks(&mut report, &form);
        }
        Err(e) => {
            report.fail("polarization", Vec::new(), e.to_string());
        }
    }
    Ok(report)
}

fn theta_checks(report: &mut Report, i: usize, theta: &GroupoidHom<'_>) {
    let g = theta.groupoid();
    let lambda = congruence_from_hom(theta);
    let axioms = validate_affine_congruence(g, &lambda).expect("sizes agree");
    report.check_witness(
        format!("theta[{i}] congruence"),
        axioms.first_violation().map(|v| violation_witness(g, &v)),
    );
    if theta.is_monomorphism() {
        let profile = congruence_profile(g, &lambda).expect("checked congruence");
        report.check_witness(
            format!("theta[{i}] monomorphism gives simple"),
            profile.not_simple_at.map(|(a, p)| vec![arrow(g, a), object(g, p)]),
        );
    } else {
        report.not_applicable(format!("theta[{i}] monomorphism gives simple"), "not a monomorphism");
    }
}

fn scalar_set_checks(report: &mut Report, b: &Bihom<'_>) {
    let g = b.groupoid();
    let identities = g.identities();
    let zero_ok = g
        .arrows()
        .find(|x| b.scalar_set(&GaussianRational::zero(), *x, None).as_deref() != Ok(identities));
    report.check_witness("G(0,g) is the identities", zero_ok.map(|x| vec![arrow(g, x)]));
    if b.field() == crate::sip::Field::Real {
        let nonempty = g
            .arrows()
            .filter(|x| !g.is_identity(*x))
            .find(|x| !b.scalar_set(&GaussianRational::i(), *x, None).is_ok_and(|s| s.is_empty()));
        report.check_witness("G(i,g) empty for real B", nonempty.map(|x| vec![arrow(g, x)]));
    } else {
        report.not_applicable("G(i,g) empty for real B", "B is complex valued");
    }
    let scalars = [
        GaussianRational::from_ints(-1, 0),
        GaussianRational::i(),
        GaussianRational::from_ints(2, 0),
        GaussianRational::from_ints(1, 1),
    ];
    let mut law = None;
    let mut simple = None;
    for c in &scalars {
        for x in g.arrows() {
            match b.conjugate_scalar_witness(c, x) {
                Ok(Some((y, k))) => {
                    law.get_or_insert(vec![arrow(g, y), arrow(g, k)]);
                }
                Ok(None) => {}
                Err(SipError::FiberNotSimple { p, k1, k2 }) => {
                    simple.get_or_insert(vec![object(g, p), arrow(g, k1), arrow(g, k2)]);
                }
                Err(_) => {}
            }
        }
    }
    report.check_witness("scalar sets meet each fiber once", simple);
    report.check_witness("conjugate scalar law", law);
    if let Ok(n) = norm_from_sip(b) {
        let failure = scalars.iter().find_map(|c| {
            g.arrows().find_map(|x| {
                scale_check(&n, b, c, x)
                    .ok()
                    .and_then(|r| r.failure)
                    .map(|h| vec![arrow(g, x), arrow(g, h)])
            })
        });
        report.check_witness("norm scaling", failure);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("grpd").chain(args.iter().copied()))
    }

    #[test]
    fn scalar_argument_parsing() {
        assert_eq!(parse_scalar("1").unwrap(), GaussianRational::one());
        assert_eq!(parse_scalar("0,1").unwrap(), GaussianRational::i());
        assert_eq!(parse_scalar("-1/2, 3").unwrap(), GaussianRational::new(Rational::new(-1, 2), Rational::from(3)));
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["gen", "pair"]).code, 2);
        assert_eq!(run_args(&["validate", "/nonexistent/file.json"]).code, 2);
        assert_eq!(run_args(&["gen", "pair", "--size", "0"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn gen_writes_to_stdout() {
        let out = run_args(&["gen", "affine_cyclic", "--size", "3"]);
        assert_eq!(out.code, 0);
        let doc = parse_groupoid(&out.stdout).unwrap();
        assert_eq!(doc.arrows.len(), 9);
    }
}
