//! kgr: exact K-theoretic computations for Grothendieck rings of
//! C*-algebras, as a batch command-line tool. One command per process;
//! identical inputs produce byte-identical reports.

mod formats;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kgr_core::abgroup::parse_group;
use kgr_core::catalog;
use kgr_core::crt::{
    chi1_real, real_kunneth_tensor, validate_rank_consistency, RealKData,
};
use kgr_core::folner::{parse_ext_group, quotient_folner_image, rank_limit_estimate, FolnerSpec};
use kgr_core::groring::{
    self, character_well_defined, detect_idempotent, eval_character, parse_element,
    triviality_sweep, CharTag, Universe,
};
use kgr_core::homalg::{fold, AdditiveTag, PositionCheck, PresentedGroup};
use kgr_core::kchar::{
    char_r, kunneth_tensor, AlgebraDescriptor, ChiPMode, DescriptorKData, FieldBase,
    KunnethComponent,
};
use kgr_core::uhf::{
    glimm_classify, parse_supernatural, real_uhf_classify, real_uhf_kdata,
    universal_uhf_idempotent_check,
};

use report::{Format, Report};

/// Environment variable naming a descriptor file that overrides the
/// built-in catalog for `catalog:` references.
const CATALOG_ENV: &str = "KGR_CATALOG";

#[derive(Parser)]
#[command(
    name = "kgr",
    version,
    about = "Exact K-theoretic toolkit for Grothendieck rings of C*-algebras",
    after_help = "Inputs named `catalog:<name>` resolve against the built-in catalog \
(C, U, R, C_real, H, T, M2R, Ur), or against the descriptor file named by \
the KGR_CATALOG environment variable. File grammars are documented in FORMATS.md."
)]
struct Cli {
    /// Output format: human text or line-delimited structured records.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a character on descriptors from files or the catalog.
    Char(CharArgs),
    /// Kunneth tensor report for two descriptors (complex or real).
    Tensor(TensorArgs),
    /// Verify a six-term cyclic sequence file: exactness, alternating
    /// sums, and folding.
    VerifySeq(VerifySeqArgs),
    /// Folner-sequence estimates and quotient images.
    #[command(subcommand)]
    Folner(FolnerCmd),
    /// UHF classification by supernatural numbers.
    #[command(subcommand)]
    Uhf(UhfCmd),
    /// Grothendieck-ring operations over a universe file.
    #[command(subcommand)]
    Ring(RingCmd),
    /// United K-theory tables and the real tensor engine.
    #[command(subcommand)]
    Crt(CrtCmd),
    /// List or inspect the built-in algebra catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct CharArgs {
    /// Character: euler | u | p:<prime> | r | q | real1 | real2.
    ///
    /// For p:<prime> the paper never fixes whether the "p-power part"
    /// means the p-primary torsion subgroup or tensoring with Z/p; the
    /// default mode reads it as the p-primary part (finite cardinality),
    /// and --p-mode tensor-zp selects the other reading, which also
    /// counts the free rank.
    #[arg(long = "char")]
    char_tag: String,
    /// Mode for p:<prime>: p-primary (default) or tensor-zp.
    #[arg(long, value_enum, default_value_t = PModeArg::PPrimary)]
    p_mode: PModeArg,
    /// Sample index for the character r (finite Folner stage).
    #[arg(long, default_value_t = 1000)]
    n: u64,
    /// Evaluate descriptors in parallel with this many threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Descriptor files or `catalog:<name>` references.
    #[arg(required = true)]
    inputs: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PModeArg {
    PPrimary,
    TensorZp,
}

#[derive(Args)]
struct TensorArgs {
    a: String,
    b: String,
}

#[derive(Args)]
struct VerifySeqArgs {
    file: String,
}

#[derive(Subcommand)]
enum FolnerCmd {
    /// Closed-form evaluation of ln|K (x) F_n| / ln|F_n| on the interval
    /// Folner sequence of Z, with the exact limit and error bound.
    Estimate {
        /// Finitely generated group literal, e.g. "Z^2 + Z/4".
        #[arg(long)]
        group: String,
        /// Sample index n (box radius).
        #[arg(long)]
        n: u64,
    },
    /// Exact cardinality of the image of a box Folner set under the
    /// quotient map onto the group.
    Image {
        /// Group literal; its canonical presentation supplies the
        /// generators.
        #[arg(long)]
        group: String,
        /// Box radius.
        #[arg(long)]
        radius: u64,
    },
    /// Symbolic renormalized rank q of an extended group literal.
    Q {
        /// Extended literal, e.g. "Zinf[d=1] + Q + Z/4 + tag(Q/Z)".
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum UhfCmd {
    /// Decide isomorphism of (real) UHF algebras from supernatural
    /// numbers.
    Classify { s1: String, s2: String },
    /// K-theory of the UHF algebra with the given supernatural number.
    Kdata {
        /// Print the real KO row instead of complex K-data.
        #[arg(long)]
        real: bool,
        s: String,
    },
    /// Verify that the universal UHF algebras are tensor idempotents.
    IdempotentCheck,
}

#[derive(Subcommand)]
enum RingCmd {
    /// Evaluate a character on a ring element.
    Eval {
        #[arg(long)]
        universe: String,
        /// Element literal, e.g. "2*[A] - [B]".
        #[arg(long)]
        element: String,
        #[arg(long = "char")]
        char_tag: String,
    },
    /// Check that a character is additive on every registered relation.
    CheckChar {
        #[arg(long)]
        universe: String,
        #[arg(long = "char")]
        char_tag: String,
    },
    /// Run the triviality sweep.
    Sweep {
        #[arg(long)]
        universe: String,
    },
    /// K-level idempotent detection for a named descriptor.
    Idempotent {
        #[arg(long)]
        universe: Option<String>,
        name: String,
    },
}

#[derive(Subcommand)]
enum CrtCmd {
    /// Print a united K-theory table from the catalog.
    Table { name: String },
    /// Rank-exact real Kunneth tensor of two real descriptors.
    Tensor { a: String, b: String },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List catalog entries.
    List,
    /// Show one entry in full.
    Show { name: String },
    /// Run the startup cross-checks and print each line.
    Check,
}

/// Domain failures exit 1; usage failures exit 2 (clap uses 2 as well).
enum CliError {
    Domain(String),
    Usage(String),
}

impl From<kgr_core::Error> for CliError {
    fn from(e: kgr_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult = Result<Report, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = cli.format.into();

    // catalog integrity gate: every shipped table must pass its
    // cross-checks before any command runs
    if let Err(e) = catalog::verify_catalog() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }

    let result = match &cli.command {
        Command::Char(args) => cmd_char(args),
        Command::Tensor(args) => cmd_tensor(args),
        Command::VerifySeq(args) => cmd_verify_seq(args),
        Command::Folner(cmd) => cmd_folner(cmd),
        Command::Uhf(cmd) => cmd_uhf(cmd),
        Command::Ring(cmd) => cmd_ring(cmd),
        Command::Crt(cmd) => cmd_crt(cmd),
        Command::Catalog(cmd) => cmd_catalog(cmd),
    };

    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(msg)) => {
            if format == Format::Structured {
                println!("status\terror\nerror\tmsg={}", msg.replace(['\t', '\n'], " "));
            }
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------- input resolution ----------------

fn catalog_entries() -> Result<Vec<AlgebraDescriptor>, CliError> {
    if let Ok(path) = std::env::var(CATALOG_ENV) {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Domain(format!("cannot read catalog override `{path}`: {e}")))?;
        let (descs, _) = formats::parse_descriptors(&text)?;
        Ok(descs)
    } else {
        Ok(catalog::entries().into_iter().map(|e| e.descriptor).collect())
    }
}

fn catalog_descriptor(name: &str) -> Result<AlgebraDescriptor, CliError> {
    if std::env::var(CATALOG_ENV).is_ok() {
        catalog_entries()?
            .into_iter()
            .find(|d| d.name == name)
            .ok_or_else(|| CliError::Domain(format!("no catalog entry named `{name}`")))
    } else {
        catalog::lookup(name)
            .map(|e| e.descriptor)
            .ok_or_else(|| CliError::Domain(format!("no catalog entry named `{name}`")))
    }
}

/// Resolve an input to descriptors: `catalog:<name>` or a file path.
fn resolve_input(input: &str, warnings: &mut Vec<String>) -> Result<Vec<AlgebraDescriptor>, CliError> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(vec![catalog_descriptor(name)?]);
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Domain(format!("cannot read `{input}`: {e}")))?;
    let (descs, mut warns) = formats::parse_descriptors(&text)?;
    warnings.append(&mut warns);
    if descs.is_empty() {
        return Err(CliError::Domain(format!("`{input}` contains no descriptors")));
    }
    Ok(descs)
}

fn resolve_single(input: &str, warnings: &mut Vec<String>) -> Result<AlgebraDescriptor, CliError> {
    let mut descs = resolve_input(input, warnings)?;
    if descs.len() != 1 {
        return Err(CliError::Domain(format!(
            "`{input}` holds {} descriptors; this command needs exactly one",
            descs.len()
        )));
    }
    Ok(descs.remove(0))
}

fn parse_char_tag(s: &str, p_mode: PModeArg) -> Result<CharTag, CliError> {
    let mode = match p_mode {
        PModeArg::PPrimary => ChiPMode::PPrimary,
        PModeArg::TensorZp => ChiPMode::TensorZp,
    };
    match s {
        "euler" => Ok(CharTag::Euler),
        "u" => Ok(CharTag::U),
        "q" => Ok(CharTag::Q),
        "real1" => Ok(CharTag::Real1),
        "real2" => Ok(CharTag::Real2),
        _ => {
            if let Some(p) = s.strip_prefix("p:") {
                let p: u64 = p
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad prime in character `{s}`")))?;
                Ok(CharTag::P(p, mode))
            } else {
                Err(CliError::Usage(format!(
                    "unknown character `{s}` (expected euler|u|p:<prime>|r|q|real1|real2)"
                )))
            }
        }
    }
}

// ---------------- commands ----------------

fn cmd_char(args: &CharArgs) -> CliResult {
    let mut report = Report::new();
    let mut warnings = Vec::new();
    let mut descriptors = Vec::new();
    for input in &args.inputs {
        descriptors.extend(resolve_input(input, &mut warnings)?);
    }
    for w in warnings {
        report.warn(w);
    }

    if args.char_tag == "r" {
        for d in &descriptors {
            let r = char_r(d, args.n).map_err(CliError::from)?;
            report.both(
                "char",
                &[
                    ("name", d.name.clone()),
                    ("char", "r".into()),
                    ("n", args.n.to_string()),
                    ("estimate", format!("{:.12}", r.estimate)),
                    ("limit", r.limit.to_string()),
                    ("error_bound", format!("{:.12}", r.error_bound)),
                ],
                format!(
                    "R({}) at n = {}: estimate {:.6}, exact limit {}, |estimate - limit| <= {:.6}",
                    d.name, args.n, r.estimate, r.limit, r.error_bound
                ),
            );
        }
        return Ok(report);
    }

    let tag = parse_char_tag(&args.char_tag, args.p_mode)?;
    let jobs = args.jobs.max(1);
    let values: Vec<Result<groring::CharValue, kgr_core::Error>> = if jobs == 1 {
        descriptors.iter().map(|d| groring::evaluate_char(d, tag)).collect()
    } else {
        // embarrassingly parallel batch evaluation, results in input order
        let chunk = descriptors.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = descriptors
                .chunks(chunk.max(1))
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|d| groring::evaluate_char(d, tag))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    for (d, value) in descriptors.iter().zip(values) {
        let value = value.map_err(CliError::from)?;
        report.both(
            "char",
            &[
                ("name", d.name.clone()),
                ("char", tag.to_string()),
                ("value", value.to_string()),
            ],
            format!("chi[{}]({}) = {}", tag, d.name, value),
        );
    }
    Ok(report)
}

fn kunneth_component_fields(deg: usize, c: &KunnethComponent) -> Vec<(&'static str, String)> {
    vec![
        ("degree", deg.to_string()),
        ("sub", c.sub.to_string()),
        ("quot", c.quot.to_string()),
        ("free_rank", c.free_rank.to_string()),
        ("torsion_order", c.torsion_order.to_string()),
        ("ambiguous", c.ambiguous.to_string()),
        (
            "resolved",
            c.resolved.as_ref().map_or_else(|| "-".into(), |g| g.to_string()),
        ),
    ]
}

fn cmd_tensor(args: &TensorArgs) -> CliResult {
    let mut report = Report::new();
    let mut warnings = Vec::new();
    let a = resolve_single(&args.a, &mut warnings)?;
    let b = resolve_single(&args.b, &mut warnings)?;
    for w in warnings {
        report.warn(w);
    }

    match (&a.kdata, &b.kdata) {
        (DescriptorKData::Complex(_), DescriptorKData::Complex(_)) => {
            let r = kunneth_tensor(&a, &b).map_err(CliError::from)?;
            for (deg, comp) in [(0usize, &r.k0), (1, &r.k1)] {
                if comp.ambiguous {
                    report.warn(format!("K{deg}: extension ambiguous, middle group undetermined"));
                }
                let fields = kunneth_component_fields(deg, comp);
                let fields_ref: Vec<(&str, String)> =
                    fields.iter().map(|(k, v)| (*k, v.clone())).collect();
                report.both(
                    "kunneth",
                    &fields_ref,
                    format!(
                        "K{deg}({} (x) {}): sub = {}, quot = {}, free rank {}, torsion order {}{}",
                        a.name,
                        b.name,
                        comp.sub,
                        comp.quot,
                        comp.free_rank,
                        comp.torsion_order,
                        if comp.ambiguous {
                            ", extension ambiguous".to_string()
                        } else {
                            format!(", resolved = {}", comp.resolved.as_ref().expect("forced"))
                        }
                    ),
                );
            }
            Ok(report)
        }
        (DescriptorKData::Real(_), DescriptorKData::Real(_)) => real_tensor_report(&a, &b, report),
        _ => Err(CliError::Domain(
            "tensor needs two complex or two real descriptors".into(),
        )),
    }
}

fn real_tensor_report(a: &AlgebraDescriptor, b: &AlgebraDescriptor, mut report: Report) -> CliResult {
    let r = real_kunneth_tensor(a, b).map_err(CliError::from)?;
    if r.torsion_componentwise_approximation {
        report.warn("torsion is a component-wise approximation of Tor_CRT".to_string());
    }
    let free = &r.free;
    report.both(
        "real_kunneth",
        &[
            ("ko_free", join_dims(&free.ko)),
            ("ku_free", join_dims(&free.ku)),
            ("kt_free", join_dims(&free.kt)),
            ("chi1_real", r.rank_character().to_string()),
        ],
        format!(
            "K^CRT({} (x) {}): KO free ranks [{}], KU [{}], KT [{}], chi_1^R = {}",
            a.name,
            b.name,
            join_dims(&free.ko),
            join_dims(&free.ku),
            join_dims(&free.kt),
            r.rank_character()
        ),
    );
    for (functor, torsion) in [
        ("KO", r.ko_torsion.as_slice()),
        ("KU", r.ku_torsion.as_slice()),
        ("KT", r.kt_torsion.as_slice()),
    ] {
        for (n, t) in torsion.iter().enumerate() {
            if t.order != kgr_core::num_bigint::BigUint::from(1u32) {
                report.both(
                    "real_kunneth_torsion",
                    &[
                        ("functor", functor.into()),
                        ("degree", n.to_string()),
                        ("order", t.order.to_string()),
                        ("ambiguous", t.ambiguous.to_string()),
                    ],
                    format!(
                        "  torsion {functor}_{n}: order {} (component-wise approximation{})",
                        t.order,
                        if t.ambiguous { ", extension ambiguous" } else { "" }
                    ),
                );
            }
        }
    }
    Ok(report)
}

fn join_dims(dims: &[u64]) -> String {
    dims.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_verify_seq(args: &VerifySeqArgs) -> CliResult {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Domain(format!("cannot read `{}`: {e}", args.file)))?;
    let parsed = formats::parse_sequence(&text)?;
    let mut report = Report::new();
    for w in parsed.warnings {
        report.warn(w);
    }
    let seq = parsed.sequence;

    let checks = seq.check_positions().map_err(CliError::from)?;
    let exact = checks
        .iter()
        .all(|c| matches!(c, PositionCheck::Homology(h) if h.is_trivial()));
    for (i, check) in checks.iter().enumerate() {
        let (status, detail) = match check {
            PositionCheck::NotComplex => ("not-a-complex".to_string(), "maps do not compose to zero".to_string()),
            PositionCheck::Homology(h) if h.is_trivial() => ("exact".into(), "homology 0".into()),
            PositionCheck::Homology(h) => ("not-exact".into(), format!("homology {h}")),
        };
        report.both(
            "position",
            &[
                ("index", (i + 1).to_string()),
                ("group", seq.groups()[i].structure().to_string()),
                ("status", status.clone()),
                ("detail", detail.clone()),
            ],
            format!("position {}: {} ({}, group {})", i + 1, status, detail, seq.groups()[i].structure()),
        );
    }

    report.both(
        "verdict",
        &[("exact", exact.to_string())],
        if exact { "sequence is exact".to_string() } else { "sequence is NOT exact".to_string() },
    );

    if exact {
        for tag in [AdditiveTag::Rank, AdditiveTag::QDim, AdditiveTag::PPrimaryLog(2), AdditiveTag::PPrimaryLog(3)] {
            let sum = seq.alternating_sum(tag).map_err(CliError::from)?;
            report.both(
                "alternating_sum",
                &[("function", tag.to_string()), ("value", sum.to_string())],
                format!("alternating sum under {tag}: {sum}"),
            );
        }
    }

    let folded = fold(&seq);
    let folded_exact = folded.is_exact().map_err(CliError::from)?;
    report.both(
        "fold",
        &[
            ("groups", folded.groups.iter().map(|g| g.structure().to_string()).collect::<Vec<_>>().join(" | ")),
            ("exact", folded_exact.to_string()),
        ],
        format!(
            "fold to 3-periodic form: groups {}, {}",
            folded.groups.iter().map(|g| g.structure().to_string()).collect::<Vec<_>>().join(" | "),
            if folded_exact { "exact" } else { "NOT exact" }
        ),
    );
    Ok(report)
}

fn cmd_folner(cmd: &FolnerCmd) -> CliResult {
    let mut report = Report::new();
    match cmd {
        FolnerCmd::Estimate { group, n } => {
            let lit = parse_group(group).map_err(CliError::from)?;
            if !lit.canonical {
                report.warn("torsion list auto-canonicalized".to_string());
            }
            let est = rank_limit_estimate(&lit.group, &FolnerSpec::IntervalZ, *n).map_err(CliError::from)?;
            report.both(
                "folner_estimate",
                &[
                    ("group", lit.group.to_string()),
                    ("n", n.to_string()),
                    ("estimate", format!("{:.12}", est.value)),
                    ("limit", est.limit.to_string()),
                    ("error_bound", format!("{:.12}", est.error_bound)),
                ],
                format!(
                    "ln|K (x) F_n|/ln|F_n| at n = {}: {:.6} (estimate), limit rank = {}, error bound {:.6}",
                    n, est.value, est.limit, est.error_bound
                ),
            );
        }
        FolnerCmd::Image { group, radius } => {
            let lit = parse_group(group).map_err(CliError::from)?;
            if !lit.canonical {
                report.warn("torsion list auto-canonicalized".to_string());
            }
            let p = PresentedGroup::from_group(&lit.group);
            let size = quotient_folner_image(&p, &FolnerSpec::IntervalZ, *radius).map_err(CliError::from)?;
            report.both(
                "folner_image",
                &[
                    ("group", lit.group.to_string()),
                    ("radius", radius.to_string()),
                    ("image_size", size.to_string()),
                ],
                format!("|pi(box of radius {radius})| = {size}"),
            );
        }
        FolnerCmd::Q { group } => {
            let g = parse_ext_group(group).map_err(CliError::from)?;
            report.both(
                "folner_q",
                &[("group", g.to_string()), ("q", g.q_value().to_string())],
                format!("q({g}) = {}", g.q_value()),
            );
        }
    }
    Ok(report)
}

fn cmd_uhf(cmd: &UhfCmd) -> CliResult {
    let mut report = Report::new();
    match cmd {
        UhfCmd::Classify { s1, s2 } => {
            let a = parse_supernatural(s1).map_err(CliError::from)?;
            let b = parse_supernatural(s2).map_err(CliError::from)?;
            let iso = glimm_classify(&a, &b);
            debug_assert_eq!(iso, real_uhf_classify(&a, &b));
            // a distinguishing denominator, when one exists in range
            let witness = (2u64..=1000)
                .find(|&q| a.admits_denominator(q) != b.admits_denominator(q))
                .map(|q| q.to_string())
                .unwrap_or_else(|| "-".into());
            report.both(
                "uhf_classify",
                &[
                    ("s1", a.to_string()),
                    ("s2", b.to_string()),
                    ("isomorphic", iso.to_string()),
                    ("witness_denominator", witness.clone()),
                ],
                if iso {
                    format!("{a} and {b}: isomorphic (equal pointed K_0)")
                } else {
                    format!("{a} and {b}: not isomorphic (1/{witness} lies in only one K_0)")
                },
            );
        }
        UhfCmd::Kdata { real, s } => {
            let sn = parse_supernatural(s).map_err(CliError::from)?;
            if *real {
                let row = real_uhf_kdata(&sn);
                for (n, g) in row.iter().enumerate() {
                    report.record("uhf_ko", &[("degree", n.to_string()), ("group", g.to_string())]);
                }
                report.line(format!(
                    "KO_*(real UHF, s = {sn}) = [{}]",
                    row.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
                ));
            } else {
                let k = kgr_core::uhf::complex_uhf_kdata(&sn);
                report.both(
                    "uhf_kdata",
                    &[("s", sn.to_string()), ("K0", k.k0.to_string()), ("K1", k.k1.to_string())],
                    format!("K_*(UHF, s = {sn}) = (K0 = {}, K1 = {})", k.k0, k.k1),
                );
            }
        }
        UhfCmd::IdempotentCheck => {
            let lines = universal_uhf_idempotent_check();
            let all = lines.iter().all(|l| l.pass);
            for l in &lines {
                report.both(
                    "check",
                    &[
                        ("name", l.name.clone()),
                        ("pass", l.pass.to_string()),
                        ("detail", l.detail.clone()),
                    ],
                    format!("[{}] {} ({})", if l.pass { "pass" } else { "FAIL" }, l.name, l.detail),
                );
            }
            report.both(
                "verdict",
                &[("pass", all.to_string())],
                if all { "universal UHF idempotent check: pass" } else { "universal UHF idempotent check: FAIL" },
            );
        }
    }
    Ok(report)
}

fn load_universe(path: &str, report: &mut Report) -> Result<Universe, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read `{path}`: {e}")))?;
    let parsed = formats::parse_universe(&text)?;
    for w in parsed.warnings {
        report.warn(w);
    }
    Ok(parsed.universe)
}

fn cmd_ring(cmd: &RingCmd) -> CliResult {
    let mut report = Report::new();
    match cmd {
        RingCmd::Eval { universe, element, char_tag } => {
            let u = load_universe(universe, &mut report)?;
            let e = parse_element(element).map_err(CliError::from)?;
            let tag = parse_char_tag(char_tag, PModeArg::PPrimary)?;
            let v = eval_character(&u, &e, tag).map_err(CliError::from)?;
            report.both(
                "ring_eval",
                &[
                    ("element", e.to_string()),
                    ("char", tag.to_string()),
                    ("value", v.to_string()),
                    ("nonzero", (!v.is_zero()).to_string()),
                ],
                format!(
                    "chi[{tag}]({e}) = {v}{}",
                    if v.is_zero() { "" } else { " (nonzero: the ring is nontrivial)" }
                ),
            );
        }
        RingCmd::CheckChar { universe, char_tag } => {
            let u = load_universe(universe, &mut report)?;
            let tag = parse_char_tag(char_tag, PModeArg::PPrimary)?;
            let r = character_well_defined(&u, tag);
            for (name, reason) in &r.inapplicable {
                report.both(
                    "inapplicable",
                    &[("descriptor", name.clone()), ("reason", reason.clone())],
                    format!("inapplicable on {name}: {reason}"),
                );
            }
            for (rel, detail) in &r.violations {
                report.both(
                    "violation",
                    &[("relation", rel.to_string()), ("detail", detail.clone())],
                    format!("additivity fails on {rel}: {detail}"),
                );
            }
            report.both(
                "verdict",
                &[("char", tag.to_string()), ("well_defined", r.pass().to_string())],
                if r.pass() {
                    format!("character {tag} is well defined on this universe")
                } else {
                    format!("character {tag} is NOT well defined on this universe")
                },
            );
        }
        RingCmd::Sweep { universe } => {
            let mut u = load_universe(universe, &mut report)?;
            let r = triviality_sweep(&mut u).map_err(CliError::from)?;
            report.both(
                "sweep",
                &[
                    ("closure_flag", r.closure_flag_active.to_string()),
                    ("absorbers", r.absorbers_registered.join(",")),
                    ("collapsed", r.collapsed.join(",")),
                    ("all_trivial", r.all_trivial.to_string()),
                ],
                if r.all_trivial {
                    "ring is trivial: every element equals 0".to_string()
                } else if r.collapsed.is_empty() {
                    "no collapse: no closure flag and no K-trivial descriptors".to_string()
                } else {
                    format!("collapsed to 0: {}", r.collapsed.join(", "))
                },
            );
        }
        RingCmd::Idempotent { universe, name } => {
            let d = if let Some(path) = universe {
                let u = load_universe(path, &mut report)?;
                u.descriptor(name).map_err(CliError::from)?.clone()
            } else if let Some(catalog_name) = name.strip_prefix("catalog:") {
                catalog_descriptor(catalog_name)?
            } else {
                catalog_descriptor(name)?
            };
            let verdict = detect_idempotent(&d).map_err(CliError::from)?;
            report.both(
                "idempotent",
                &[("name", d.name.clone()), ("verdict", verdict.to_string())],
                format!("{}: {}", d.name, verdict),
            );
        }
    }
    Ok(report)
}

fn cmd_crt(cmd: &CrtCmd) -> CliResult {
    let mut report = Report::new();
    match cmd {
        CrtCmd::Table { name } => {
            let entry = catalog::lookup(name)
                .ok_or_else(|| CliError::Domain(format!("no catalog entry named `{name}`")))?;
            match entry.descriptor.real_kdata().map_err(CliError::from)? {
                RealKData::Fg(c) => {
                    let rows: [(&str, Vec<String>); 3] = [
                        ("KO", c.ko.iter().map(|g| g.to_string()).collect()),
                        ("KU", c.ku.iter().map(|g| g.to_string()).collect()),
                        ("KT", c.kt.iter().map(|g| g.to_string()).collect()),
                    ];
                    for (functor, groups) in rows {
                        report.both(
                            "crt_row",
                            &[("functor", functor.into()), ("groups", groups.join(", "))],
                            format!("{functor}: {}", groups.join(", ")),
                        );
                    }
                    report.both(
                        "crt_char",
                        &[("chi1_real", chi1_real(c).to_string())],
                        format!("chi_1^R = {}", chi1_real(c)),
                    );
                    validate_rank_consistency(&c.rationalize()).map_err(CliError::from)?;
                }
                RealKData::Rational(r) => {
                    for (functor, dims) in
                        [("KO", r.ko.to_vec()), ("KU", r.ku.to_vec()), ("KT", r.kt.to_vec())]
                    {
                        report.both(
                            "crt_row",
                            &[("functor", functor.into()), ("q_dims", join_dims(&dims))],
                            format!("{functor} (Q-dimensions): {}", join_dims(&dims)),
                        );
                    }
                }
            }
            report.both(
                "note",
                &[("text", entry.note.to_string())],
                format!("note: {}", entry.note),
            );
        }
        CrtCmd::Tensor { a, b } => {
            let mut warnings = Vec::new();
            let da = resolve_single(a, &mut warnings)?;
            let db = resolve_single(b, &mut warnings)?;
            for w in warnings {
                report.warn(w);
            }
            return real_tensor_report(&da, &db, report);
        }
    }
    Ok(report)
}

fn cmd_catalog(cmd: &CatalogCmd) -> CliResult {
    let mut report = Report::new();
    match cmd {
        CatalogCmd::List => {
            for entry in catalog::entries() {
                let kind = match entry.descriptor.field_base {
                    FieldBase::Complex => "complex",
                    FieldBase::Real => "real",
                    FieldBase::Quaternion => "quaternion",
                };
                report.both(
                    "entry",
                    &[("name", entry.name.into()), ("field", kind.into()), ("note", entry.note.into())],
                    format!("{:8} {:10} {}", entry.name, kind, entry.note),
                );
            }
        }
        CatalogCmd::Show { name } => {
            let entry = catalog::lookup(name)
                .ok_or_else(|| CliError::Domain(format!("no catalog entry named `{name}`")))?;
            let d = &entry.descriptor;
            report.line(format!("name: {}", d.name));
            report.line(format!("field: {}", d.field_base));
            match &d.kdata {
                DescriptorKData::Complex(k) => {
                    report.both(
                        "kdata",
                        &[("K0", k.k0.to_string()), ("K1", k.k1.to_string())],
                        format!("K0 = {}, K1 = {}", k.k0, k.k1),
                    );
                }
                DescriptorKData::Real(RealKData::Fg(c)) => {
                    report.both(
                        "kdata",
                        &[
                            ("KO", c.ko.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")),
                            ("KU", c.ku.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")),
                            ("KT", c.kt.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")),
                        ],
                        format!(
                            "KO = [{}]\nKU = [{}]\nKT = [{}]",
                            c.ko.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                            c.ku.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                            c.kt.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
                        ),
                    );
                }
                DescriptorKData::Real(RealKData::Rational(r)) => {
                    report.both(
                        "kdata",
                        &[
                            ("KO_dims", join_dims(&r.ko)),
                            ("KU_dims", join_dims(&r.ku)),
                            ("KT_dims", join_dims(&r.kt)),
                        ],
                        format!(
                            "Q-dimensions: KO = [{}], KU = [{}], KT = [{}]",
                            join_dims(&r.ko),
                            join_dims(&r.ku),
                            join_dims(&r.kt)
                        ),
                    );
                }
                DescriptorKData::Opaque => {
                    report.line("K-data: opaque");
                }
            }
            let f = &d.flags;
            let mut flags = Vec::new();
            for (set, name) in [
                (f.ktp_class, "ktp"),
                (f.finitely_generated_k, "fg_k"),
                (f.nuclear, "nuclear"),
                (f.separable, "separable"),
                (f.n_real, "n_real"),
            ] {
                if set {
                    flags.push(name);
                }
            }
            report.both(
                "flags",
                &[("flags", flags.join(","))],
                format!("flags: {}", flags.join(", ")),
            );
            report.both("note", &[("text", entry.note.into())], format!("note: {}", entry.note));
        }
        CatalogCmd::Check => {
            let lines = catalog::startup_cross_checks();
            let all = lines.iter().all(|l| l.pass);
            for l in &lines {
                report.both(
                    "check",
                    &[
                        ("name", l.name.clone()),
                        ("pass", l.pass.to_string()),
                        ("detail", l.detail.clone()),
                    ],
                    format!("[{}] {} ({})", if l.pass { "pass" } else { "FAIL" }, l.name, l.detail),
                );
            }
            report.both(
                "verdict",
                &[("pass", all.to_string())],
                if all { "catalog cross-checks: pass" } else { "catalog cross-checks: FAIL" },
            );
        }
    }
    Ok(report)
}
