mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cubac::abelian::{homology_of_pair, FiniteAbelianGroup, GroupHom};
use cubac::ac2group::{
    build_special, classify, equivalent, verify_ac_axioms, verify_derived_coherence, ACInstance, ClassifyingTriple,
    Equivalence, Report,
};
use cubac::cohomology::{
    check_middle_antisymmetry, coboundary_capped, coboundary_witness, cube_index, table4_violation, Cochain,
    CochainFile, Cohomology,
};
use cubac::config::{Limits, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP};
use cubac::cubical::{differential, differential_chain, differential_matrix, normalized_basis, Cube};
use cubac::smc_bridge::{ac_from_smc, sinh_pair, smc_from_ac, verify_smc_axioms, SMCInstance};
use cubac::Error;

use render::{fields, table};

/// Random cubes per `d∘d = 0` spot check in `homology`.
const SPOT_CHECKS: usize = 100;

#[derive(Parser)]
#[command(name = "cubac", version, about = "Cubical cohomology of finite abelian groups and the AC-2-groups it classifies")]
struct Cli {
    /// Report format. File-producing commands (build, convert, sinh) always emit JSON.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Enumeration cap on candidate cubes, classes and isomorphisms.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    cap: u64,
    /// Highest cohomological degree computed.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    degree: u64,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    AcToSm,
    SmToAc,
}

#[derive(Subcommand)]
enum Command {
    /// H_0..H_N of the normalized cubical complex Q(A).
    Homology { group: String, n: usize },
    /// H^N(G, B) with its class representatives.
    Cohomology { base: String, coeff: String, n: usize },
    /// One cocycle per cohomology class (degree 3 unless given).
    Cocycles { base: String, coeff: String, n: Option<usize> },
    /// Cocycle and coboundary verdict for a cochain file.
    Check { file: PathBuf },
    /// Equivalence classes of AC-2-groups with the given (π0, π1).
    Classify { base: String, coeff: String },
    /// The special AC-2-group of a cocycle or triple file.
    Build { base: String, coeff: String, file: PathBuf },
    /// Exhaustive axiom checks on an AC or symmetric monoidal instance file.
    Verify { file: PathBuf },
    /// Convert an instance file between AC and symmetric monoidal data.
    Convert {
        #[arg(value_enum)]
        direction: Direction,
        file: PathBuf,
    },
    /// The Sinh pair (h, c) of a triple.
    Sinh { file: PathBuf },
    /// Decide whether two triples classify equivalent AC-2-groups.
    Equiv { first: PathBuf, second: PathBuf },
}

enum CliError {
    Lib(Error),
    Io(String),
    /// A check ran and failed; exit status 1.
    Fail(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Fail(_) | CliError::Lib(Error::Verification(_)) => 1,
            CliError::Lib(Error::CapExceeded(_) | Error::Overflow(_)) => 3,
            CliError::Lib(_) | CliError::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io(m) | CliError::Fail(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A command's output: a report rendered per `--format`, or a file body.
enum Output {
    Report { text: String, json: Value, status: u8 },
    File(String),
}

impl Output {
    fn report(text: String, json: Value) -> Self {
        Output::Report { text, json, status: 0 }
    }
}

struct Ctx {
    limits: Limits,
    seed: u64,
}

impl Ctx {
    fn cap(&self) -> u64 {
        self.limits.enumeration_cap
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        limits: Limits { enumeration_cap: cli.cap, degree_cap: cli.degree as usize },
        seed: cli.seed,
    };
    match run(&cli.command, &ctx).and_then(|out| emit(out, cli.format, cli.out.as_deref())) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn emit(out: Output, format: Format, path: Option<&Path>) -> CliResult<u8> {
    let (mut body, status) = match out {
        Output::Report { text, json, status } => match format {
            Format::Text => (text, status),
            Format::Json => (pretty(&json), status),
        },
        Output::File(body) => (body, 0),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    Ok(status)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("record serializes")
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn group(s: &str) -> CliResult<FiniteAbelianGroup> {
    Ok(FiniteAbelianGroup::parse(s)?)
}

fn run(cmd: &Command, ctx: &Ctx) -> CliResult<Output> {
    match cmd {
        Command::Homology { group: g, n } => cmd_homology(&group(g)?, *n, ctx),
        Command::Cohomology { base, coeff, n } => cmd_cohomology(&group(base)?, &group(coeff)?, *n, ctx),
        Command::Cocycles { base, coeff, n } => cmd_cocycles(&group(base)?, &group(coeff)?, n.unwrap_or(3), ctx),
        Command::Check { file } => cmd_check(&read(file)?, ctx),
        Command::Classify { base, coeff } => cmd_classify(&group(base)?, &group(coeff)?, ctx),
        Command::Build { base, coeff, file } => cmd_build(&group(base)?, &group(coeff)?, &read(file)?, ctx),
        Command::Verify { file } => cmd_verify(&read(file)?),
        Command::Convert { direction, file } => cmd_convert(*direction, &read(file)?),
        Command::Sinh { file } => cmd_sinh(&read(file)?, ctx),
        Command::Equiv { first, second } => cmd_equiv(&read(first)?, &read(second)?, ctx),
    }
}

fn cmd_homology(g: &FiniteAbelianGroup, n: usize, ctx: &Ctx) -> CliResult<Output> {
    let cap = ctx.cap();
    let mats = (0..=n + 1).map(|k| differential_matrix(g, k, cap)).collect::<cubac::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for k in 0..=n {
        let basis = normalized_basis(g, k, cap)?.len();
        let h = homology_of_pair(&mats[k], &mats[k + 1])?;
        let dims = format!("{}x{}", mats[k].rows(), mats[k].cols());
        rows.push(vec![k.to_string(), basis.to_string(), dims.clone(), h.literal()]);
        records.push(json!({ "n": k, "basis": basis, "differential": dims, "homology": h.literal() }));
    }
    let dim = (n + 1).max(2);
    let spot = spot_check(g, dim, ctx.seed)?;
    let verdict = match &spot {
        None => "ok".to_string(),
        Some(c) => format!("FAIL at {c}"),
    };
    let text = format!(
        "Q({g})\n{}d∘d spot check: {SPOT_CHECKS} random {dim}-cubes, seed {}: {verdict}\n",
        table(&["n", "basis", "d_n", "H_n"], &rows),
        ctx.seed
    );
    let json = json!({
        "group": g.literal(),
        "degrees": records,
        "spot_check": { "cubes": SPOT_CHECKS, "dim": dim, "seed": ctx.seed, "passed": spot.is_none() },
    });
    let status = u8::from(spot.is_some());
    Ok(Output::Report { text, json, status })
}

/// First random cube (by seed) on which `d∘d` is nonzero, rendered.
fn spot_check(g: &FiniteAbelianGroup, dim: usize, seed: u64) -> CliResult<Option<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_CHECKS {
        let labels = (0..1usize << dim).map(|_| rng.gen_range(0..g.size())).collect();
        let cube = Cube::new(dim, labels)?;
        if !differential_chain(g, &differential(g, &cube)?)?.is_zero() {
            return Ok(Some(cube.display(g)));
        }
    }
    Ok(None)
}

fn cmd_cohomology(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, n: usize, ctx: &Ctx) -> CliResult<Output> {
    let coh = Cohomology::compute(g, b, n, ctx.limits)?;
    let reps = coh.representatives(ctx.cap())?;
    let title = format!("H^{n}({g}; {b}) = {}", coh.group);
    let summary = fields(&[
        ("order", coh.group.order().to_string()),
        ("cocycles", coh.cocycle_count().to_string()),
        ("coboundaries", coh.coboundary_count().to_string()),
    ]);
    let rows: Vec<Vec<String>> = reps.iter().enumerate().map(|(i, z)| vec![i.to_string(), z.describe()]).collect();
    let text = format!("{title}\n{summary}{}", table(&["#", "representative"], &rows));
    let json = json!({
        "base": g.literal(),
        "coeff": b.literal(),
        "degree": n,
        "group": coh.group.literal(),
        "order": coh.group.order(),
        "cocycles": coh.cocycle_count().to_string(),
        "coboundaries": coh.coboundary_count().to_string(),
        "representatives": reps.iter().map(|z| to_value(&z.to_file())).collect::<Vec<_>>(),
    });
    Ok(Output::report(text, json))
}

fn cmd_cocycles(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, n: usize, ctx: &Ctx) -> CliResult<Output> {
    let coh = Cohomology::compute(g, b, n, ctx.limits)?;
    let reps = coh.representatives(ctx.cap())?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (i, z) in reps.iter().enumerate() {
        let anti = if n == 3 { Some(check_middle_antisymmetry(z)?) } else { None };
        let anti_text = anti.map_or("-".to_string(), yes_no);
        rows.push(vec![i.to_string(), anti_text, z.describe()]);
        records.push(json!({ "cocycle": to_value(&z.to_file()), "middle_antisymmetric": anti }));
    }
    let text = format!(
        "{} classes in H^{n}({g}; {b}) = {}\n{}",
        reps.len(),
        coh.group,
        table(&["#", "antisymmetric", "cocycle"], &rows)
    );
    let json = json!({
        "base": g.literal(),
        "coeff": b.literal(),
        "degree": n,
        "group": coh.group.literal(),
        "representatives": records,
    });
    Ok(Output::report(text, json))
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Cocycle test straight from the file records, so that normalization
/// violations are reported as a verdict rather than a parse failure.
fn cmd_check(body: &str, ctx: &Ctx) -> CliResult<Output> {
    let file: CochainFile = serde_json::from_str(body).map_err(|e| Error::parse(format!("cochain file: {e}")))?;
    let (z, violation) = if file.degree == 3 {
        let g = FiniteAbelianGroup::parse(&file.base)?;
        let b = FiniteAbelianGroup::parse(&file.coeff)?;
        let table = table4_from_records(&g, &b, &file, ctx.cap())?;
        match table4_violation(&g, &b, &table) {
            Some(v) => (None, Some(v.to_string())),
            None => (Some(Cochain::from_file(&file, ctx.cap())?), None),
        }
    } else {
        let z = Cochain::from_file(&file, ctx.cap())?;
        if coboundary_capped(&z, ctx.cap())?.is_zero() {
            (Some(z), None)
        } else {
            (None, Some("coboundary is nonzero".to_string()))
        }
    };
    let Some(z) = z else {
        let v = violation.unwrap_or_default();
        let text = format!("COCYCLE: no ({v}); COBOUNDARY: no\n");
        let json = json!({ "cocycle": false, "violation": v, "coboundary": false });
        return Ok(Output::Report { text, json, status: 1 });
    };
    let anti = if z.degree() == 3 { Some(check_middle_antisymmetry(&z)?) } else { None };
    let witness = if z.degree() >= 2 {
        coboundary_witness(&z)?
    } else {
        None
    };
    let mut lines = Vec::new();
    let mut json = json!({ "cocycle": true, "middle_antisymmetric": anti });
    match (&witness, z.degree()) {
        (Some(c), _) => {
            lines.push("COCYCLE: yes; COBOUNDARY: yes (witness emitted)".to_string());
            lines.push(format!("witness: {}", c.describe()));
            json["coboundary"] = json!(true);
            json["witness"] = to_value(&c.to_file());
        }
        (None, 1) if z.is_zero() => {
            lines.push("COCYCLE: yes; COBOUNDARY: yes (zero cochain)".to_string());
            json["coboundary"] = json!(true);
        }
        (None, n) => {
            let limits = Limits { degree_cap: n.max(ctx.limits.degree_cap), ..ctx.limits };
            let class = Cohomology::compute(z.base(), z.coeff(), n, limits)?.class_representative(&z)?;
            lines.push("COCYCLE: yes; COBOUNDARY: no".to_string());
            lines.push(format!("class representative: {}", class.describe()));
            json["coboundary"] = json!(false);
            json["class_representative"] = to_value(&class.to_file());
        }
    }
    if let Some(a) = anti {
        lines.insert(1, format!("MIDDLE ANTISYMMETRY: {}", yes_no(a)));
    }
    Ok(Output::report(lines.join("\n") + "\n", json))
}

fn table4_from_records(
    g: &FiniteAbelianGroup,
    b: &FiniteAbelianGroup,
    file: &CochainFile,
    cap: u64,
) -> CliResult<Vec<usize>> {
    let n = g.size();
    let len = (n as u64).checked_pow(4).filter(|&l| l <= cap).ok_or_else(|| Error::cap("|G|^4 exceeds the cap"))?;
    let mut table: Vec<Option<usize>> = vec![None; len as usize];
    for rec in &file.values {
        if rec.args.len() != 4 {
            return Err(Error::invalid(format!("degree-3 values need 4 arguments, got {}", rec.args.len())).into());
        }
        let mut labels = Vec::with_capacity(4);
        for e in &rec.args {
            g.check_element(e)?;
            labels.push(g.index(e));
        }
        b.check_element(&rec.value)?;
        let v = b.index(&rec.value);
        let slot = &mut table[cube_index(&labels, n)];
        if slot.is_some_and(|old| old != v) {
            return Err(Error::invalid(format!("conflicting values for {:?}", rec.args)).into());
        }
        *slot = Some(v);
    }
    Ok(table.into_iter().map(|v| v.unwrap_or(0)).collect())
}

fn cmd_classify(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, ctx: &Ctx) -> CliResult<Output> {
    let classes = classify(g, a, ctx.limits)?;
    let rows: Vec<Vec<String>> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.members.len().to_string(), c.representative.cocycle().describe()])
        .collect();
    let text = format!("{} {} for (π0, π1) = ({g}, {a})\n{}", classes.len(), if classes.len() == 1 { "class" } else { "classes" }, table(&["#", "size", "representative"], &rows));
    let json = json!({
        "group": g.literal(),
        "coeff": a.literal(),
        "count": classes.len(),
        "classes": classes.iter().map(|c| json!({
            "representative": to_value(&c.representative.to_file()),
            "members": c.members.iter().map(|z| to_value(&z.to_file())).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    Ok(Output::report(text, json))
}

fn cmd_build(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, body: &str, ctx: &Ctx) -> CliResult<Output> {
    let t = ClassifyingTriple::from_json_str(body, ctx.cap())?;
    if t.group() != g || t.coeff() != a {
        return Err(Error::invalid(format!(
            "the file is over ({}, {}), not ({g}, {a})",
            t.group(),
            t.coeff()
        ))
        .into());
    }
    Ok(Output::File(build_special(t.cocycle())?.to_json_string()))
}

enum Instance {
    Ac(ACInstance),
    Sm(SMCInstance),
}

fn instance(body: &str) -> CliResult<Instance> {
    let v: Value = serde_json::from_str(body).map_err(|e| Error::parse(format!("instance file: {e}")))?;
    match v.get("kind").and_then(Value::as_str) {
        Some("ac") => Ok(Instance::Ac(ACInstance::from_json_str(body)?)),
        Some("sm") => Ok(Instance::Sm(SMCInstance::from_json_str(body)?)),
        _ => Err(Error::parse("instance file needs \"kind\": \"ac\" or \"sm\"").into()),
    }
}

fn cmd_verify(body: &str) -> CliResult<Output> {
    let (kind, report) = match instance(body)? {
        Instance::Ac(x) => {
            let mut r = verify_ac_axioms(&x)?;
            r.extend(verify_derived_coherence(&x)?);
            ("ac", r)
        }
        Instance::Sm(s) => ("sm", verify_smc_axioms(&s)?),
    };
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let result = if c.passed { "PASS" } else { "FAIL" };
            vec![c.name.clone(), result.to_string(), c.violation.clone().unwrap_or_default()]
        })
        .collect();
    let verdict = if report.passed() { "all checks PASS" } else { "some checks FAIL" };
    let text = format!("{}{verdict}\n", table(&["check", "result", "violation"], &rows));
    let json = json!({ "kind": kind, "passed": report.passed(), "checks": to_value(&report.checks) });
    Ok(Output::Report { text, json, status: u8::from(!report.passed()) })
}

fn require(report: Report, what: &str) -> CliResult<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(f) => Err(CliError::Fail(format!("input fails the {what} axioms: {f}"))),
    }
}

fn cmd_convert(direction: Direction, body: &str) -> CliResult<Output> {
    match (direction, instance(body)?) {
        (Direction::AcToSm, Instance::Ac(x)) => {
            require(verify_ac_axioms(&x)?, "AC")?;
            Ok(Output::File(smc_from_ac(&x)?.to_json_string()))
        }
        (Direction::SmToAc, Instance::Sm(s)) => {
            require(verify_smc_axioms(&s)?, "symmetric monoidal")?;
            Ok(Output::File(ac_from_smc(&s)?.to_json_string()))
        }
        (Direction::AcToSm, Instance::Sm(_)) => Err(Error::invalid("ac-to-sm needs an instance of kind \"ac\"").into()),
        (Direction::SmToAc, Instance::Ac(_)) => Err(Error::invalid("sm-to-ac needs an instance of kind \"sm\"").into()),
    }
}

fn cmd_sinh(body: &str, ctx: &Ctx) -> CliResult<Output> {
    let t = ClassifyingTriple::from_json_str(body, ctx.cap())?;
    Ok(Output::File(sinh_pair(&t)?.to_json_string()))
}

fn hom_json(f: &GroupHom) -> Value {
    json!({ "source": f.source.literal(), "target": f.target.literal(), "images": to_value(&f.images) })
}

fn cmd_equiv(first: &str, second: &str, ctx: &Ctx) -> CliResult<Output> {
    let t = ClassifyingTriple::from_json_str(first, ctx.cap())?;
    let t2 = ClassifyingTriple::from_json_str(second, ctx.cap())?;
    match equivalent(&t, &t2, ctx.cap())? {
        Equivalence::Equivalent { g, f, witness } => {
            let identity = g == GroupHom::identity(t.group()) && f == GroupHom::identity(t.coeff());
            let text = format!(
                "EQUIVALENT{}\n{}",
                if identity { " (identity isomorphisms)" } else { "" },
                fields(&[("g", g.describe()), ("f", f.describe()), ("witness", witness.describe())])
            );
            let json = json!({
                "verdict": "EQUIVALENT",
                "identity": identity,
                "g": hom_json(&g),
                "f": hom_json(&f),
                "witness": to_value(&witness.to_file()),
            });
            Ok(Output::report(text, json))
        }
        Equivalence::Inequivalent => Ok(Output::Report {
            text: "INEQUIVALENT\n".to_string(),
            json: json!({ "verdict": "INEQUIVALENT" }),
            status: 1,
        }),
    }
}
