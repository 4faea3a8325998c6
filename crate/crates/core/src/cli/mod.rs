//! Command-line front end.
//!
//! Exit codes for `decide`: 0 equal, 1 distinct, 2 unknown, 3 not parallel.
//! Errors use 64 (usage), 65 (bad input data), 66 (unreadable file) and
//! 74 (output failure).

pub mod format;
pub mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::category::FiniteCategory;
use crate::constructions::{default_constructions, fset_matrix_embedding, unitriangular_embedding_check, IntMatrix};
use crate::counterexamples::{verify_fset_identities, verify_simplex_all};
use crate::decider::{
    endpoint_separator, separator_free, separator_matrix, verify_verdict, Budget, Decider, SeparatorWitness, Verdict,
    DEFAULT_MAX_MORPHISMS, DEFAULT_MAX_OBJECTS, DEFAULT_MAX_STAGE,
};
use crate::enumeration::{enumerate_finite_categories, enumerate_finite_categories_parallel};
use crate::quiver::{Path, Presentation};

pub use format::{parse_path, parse_presentation, serialize_presentation, ParseError, ParseErrorKind, PathSyntaxError};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "rescat", version, about = "Word problems in finitely presented categories")]
struct Cli {
    /// Accepted and ignored; every algorithm is deterministic.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Run enumeration and the two decision branches on worker threads.
    /// Output is unchanged.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Longest path allowed in a congruence derivation.
    #[arg(long, default_value_t = DEFAULT_MAX_STAGE)]
    max_stage: usize,
    /// Most objects in a candidate separating category.
    #[arg(long, default_value_t = DEFAULT_MAX_OBJECTS)]
    max_objects: usize,
    /// Most morphisms in a candidate separating category.
    #[arg(long, default_value_t = DEFAULT_MAX_MORPHISMS)]
    max_morphisms: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_stage: self.max_stage,
            max_objects: self.max_objects,
            max_morphisms: self.max_morphisms,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Demo {
    Fset,
    Simplex,
    Matrix,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a presentation file or a category dump.
    Validate { file: PathBuf },
    /// Decide whether two paths are equal in the presented category.
    Decide {
        file: PathBuf,
        p: String,
        q: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a separating functor from a constructive family, falling back
    /// to the search of `decide`.
    Separate {
        #[arg(required_unless_present = "matrix")]
        file: Option<PathBuf>,
        #[arg(required_unless_present = "matrix")]
        p: Option<String>,
        #[arg(required_unless_present = "matrix")]
        q: Option<String>,
        /// Separate two integer matrices such as `[[1,0],[0,3]]` instead.
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with_all = ["file", "p", "q"])]
        matrix: Option<Vec<String>>,
        /// Rank bound of the matrix category (defaults to the matrix size).
        #[arg(long, requires = "matrix")]
        rank: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// List every finite category of the given size.
    Enumerate {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        morphisms: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Print only the number of categories.
        #[arg(long)]
        count_only: bool,
    },
    /// Print the dump of a built-in construction at its default size.
    Build {
        /// Construction name; omit to list them.
        name: Option<String>,
    },
    /// Run the counterexample and separator checks.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// Re-check a JSON verdict produced by `decide --json`.
    Verify { file: PathBuf, certificate: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("cannot write output: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_NO_INPUT,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_presentation(path: &FsPath) -> Result<Presentation, Failure> {
    parse_presentation(&read(path)?).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn load_path(presentation: &Presentation, text: &str) -> Result<Path, Failure> {
    parse_path(presentation.quiver(), text).map_err(|e| Failure::data(format!("path `{text}`: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file, out),
        Command::Decide {
            file,
            p,
            q,
            budget,
            json,
        } => decide(file, p, q, budget.budget(), *json, cli.parallel, out),
        Command::Separate {
            file,
            p,
            q,
            matrix,
            rank,
            budget,
        } => match matrix {
            Some(pair) => separate_matrices(&pair[0], &pair[1], *rank, out),
            None => {
                let (Some(file), Some(p), Some(q)) = (file, p, q) else {
                    return Err(Failure::usage("separate needs <FILE> <P> <Q> or --matrix A B"));
                };
                separate(file, p, q, budget.budget(), cli.parallel, out)
            }
        },
        Command::Enumerate {
            objects,
            morphisms,
            up_to_iso,
            count_only,
        } => enumerate(*objects, *morphisms, *up_to_iso, *count_only, cli.parallel, out),
        Command::Build { name } => build(name.as_deref(), out),
        Command::Demo { which } => match which {
            Demo::Fset => demo_fset(out),
            Demo::Simplex => demo_simplex(out),
            Demo::Matrix => demo_matrix(out),
        },
        Command::Verify { file, certificate } => verify(file, certificate, out),
    }
}

fn validate(file: &FsPath, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = read(file)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("category") {
        let cat = FiniteCategory::parse_dump(&text).map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
        let report = cat.validate();
        if report.is_valid() {
            writeln!(out, "valid category n={} m={}", cat.objects(), cat.morphisms())?;
            writeln!(out, "groupoid {}", report.is_groupoid)?;
            Ok(0)
        } else {
            writeln!(out, "invalid category n={} m={}", cat.objects(), cat.morphisms())?;
            for v in &report.violations {
                writeln!(out, "{:?}: {v}", v.law())?;
            }
            Ok(1)
        }
    } else {
        let p = parse_presentation(&text).map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
        let q = p.quiver();
        writeln!(
            out,
            "valid presentation vertices={} edges={} relations={}",
            q.vertex_count(),
            q.edge_count(),
            p.relations().len()
        )?;
        Ok(0)
    }
}

fn verdict_code(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Equal(_) => 0,
        Verdict::Distinct(_) => 1,
        Verdict::Unknown(_) => 2,
        Verdict::NotParallel(_) => 3,
    }
}

fn write_verdict(presentation: &Presentation, verdict: &Verdict, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "{}", verdict.name())?;
    match verdict {
        Verdict::Equal(d) => write!(out, "{}", format::format_derivation(presentation, d))?,
        Verdict::Distinct(w) | Verdict::NotParallel(w) => write_witness(presentation, w, out)?,
        Verdict::Unknown(b) => writeln!(
            out,
            "budget max-stage={} max-objects={} max-morphisms={}",
            b.max_stage, b.max_objects, b.max_morphisms
        )?,
    }
    Ok(())
}

fn write_witness(presentation: &Presentation, witness: &SeparatorWitness, out: &mut dyn Write) -> Result<(), Failure> {
    let w = witness.clone().normalized();
    write!(out, "{}", format::format_witness(presentation, &w))?;
    Ok(())
}

fn decide(
    file: &FsPath,
    p: &str,
    q: &str,
    budget: Budget,
    as_json: bool,
    parallel: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let presentation = load_presentation(file)?;
    let p = load_path(&presentation, p)?;
    let q = load_path(&presentation, q)?;
    let verdict = Decider::new(budget)
        .parallel(parallel)
        .decide(&presentation, &p, &q)
        .map_err(|e| Failure::data(e.to_string()))?;
    let verdict = match verdict {
        Verdict::Distinct(w) => Verdict::Distinct(w.normalized()),
        Verdict::NotParallel(w) => Verdict::NotParallel(w.normalized()),
        other => other,
    };
    if as_json {
        let value = json::verdict_json(&presentation, &p, &q, &verdict);
        let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::data(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        write_verdict(&presentation, &verdict, out)?;
    }
    Ok(verdict_code(&verdict))
}

fn separate(
    file: &FsPath,
    p: &str,
    q: &str,
    budget: Budget,
    parallel: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let presentation = load_presentation(file)?;
    let p = load_path(&presentation, p)?;
    let q = load_path(&presentation, q)?;
    if !p.is_parallel_to(&q) {
        let w = endpoint_separator(&presentation, &p, &q).map_err(|e| Failure::data(e.to_string()))?;
        writeln!(out, "family endpoint")?;
        write_witness(&presentation, &w, out)?;
        return Ok(0);
    }
    if presentation.relations().is_empty() {
        if p == q {
            writeln!(out, "equal paths cannot be separated")?;
            return Ok(1);
        }
        let w = separator_free(presentation.quiver(), &p, &q).map_err(|e| Failure::data(e.to_string()))?;
        writeln!(out, "family free")?;
        write_witness(&presentation, &w, out)?;
        return Ok(0);
    }
    writeln!(out, "family search")?;
    let verdict = Decider::new(budget)
        .parallel(parallel)
        .decide(&presentation, &p, &q)
        .map_err(|e| Failure::data(e.to_string()))?;
    write_verdict(&presentation, &verdict, out)?;
    Ok(match verdict {
        Verdict::Distinct(_) | Verdict::NotParallel(_) => 0,
        Verdict::Equal(_) => 1,
        Verdict::Unknown(_) => 2,
    })
}

fn separate_matrices(a: &str, b: &str, rank: Option<usize>, out: &mut dyn Write) -> Result<i32, Failure> {
    let a: IntMatrix = a.parse().map_err(|e| Failure::data(format!("{e}")))?;
    let b: IntMatrix = b.parse().map_err(|e| Failure::data(format!("{e}")))?;
    let rank = rank.unwrap_or(a.rows().max(a.cols()));
    let s = separator_matrix(&a, &b, rank).map_err(|e| Failure::data(e.to_string()))?;
    writeln!(out, "family matrix")?;
    writeln!(out, "prime {}", s.prime)?;
    writeln!(out, "rank {rank}")?;
    writeln!(out, "reduced {} {}", a.reduce(s.prime), b.reduce(s.prime))?;
    writeln!(out, "images {} {}", s.image_a, s.image_b)?;
    Ok(0)
}

fn enumerate(
    objects: usize,
    morphisms: usize,
    up_to_iso: bool,
    count_only: bool,
    parallel: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if objects == 0 || morphisms < objects {
        return Err(Failure::usage("need --objects >= 1 and --morphisms >= --objects"));
    }
    let cats = if parallel {
        enumerate_finite_categories_parallel(objects, morphisms, up_to_iso)
    } else {
        enumerate_finite_categories(objects, morphisms, up_to_iso)
    };
    if count_only {
        writeln!(out, "{}", cats.len())?;
    } else {
        for (i, cat) in cats.iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            write!(out, "{}", cat.dump())?;
        }
    }
    Ok(0)
}

fn build(name: Option<&str>, out: &mut dyn Write) -> Result<i32, Failure> {
    let all = default_constructions();
    match name {
        None => {
            for (name, _) in &all {
                writeln!(out, "{name}")?;
            }
            Ok(0)
        }
        Some(wanted) => {
            let (_, cat) = all
                .iter()
                .find(|(n, _)| *n == wanted)
                .ok_or_else(|| Failure::usage(format!("unknown construction `{wanted}`")))?;
            write!(out, "{}", cat.dump())?;
            Ok(0)
        }
    }
}

fn tuple(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn demo_fset(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut all = true;
    for n in 5..=8 {
        let r = verify_fset_identities(n).map_err(|e| Failure::data(e.to_string()))?;
        writeln!(out, "fset n={n} generated-morphisms={}", r.morphisms)?;
        writeln!(out, "  i = {}", tuple(&r.i))?;
        writeln!(out, "  pi = {}", tuple(&r.pi))?;
        writeln!(out, "  c = {}", tuple(&r.c))?;
        writeln!(
            out,
            "  pi . i = {} expected f = {} {}",
            tuple(&r.pi_i),
            tuple(&r.f),
            verdict_word(r.pi_i == r.f)
        )?;
        writeln!(
            out,
            "  pi . c . i = {} expected g = {} {}",
            tuple(&r.pi_c_i),
            tuple(&r.g),
            verdict_word(r.pi_c_i == r.g)
        )?;
        writeln!(out, "  sign(c) = {:+} {}", r.sign_c, verdict_word(r.sign_c == 1))?;
        all &= r.passed();
    }
    writeln!(out, "{}", if all { "pass" } else { "FAIL" })?;
    Ok(if all { 0 } else { 1 })
}

fn demo_simplex(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut all = true;
    for n in 2..=5 {
        for r in verify_simplex_all(n).map_err(|e| Failure::data(e.to_string()))? {
            writeln!(
                out,
                "simplex n={} y={} z={} r={} pi_y={} pi_z={}",
                r.n,
                r.y,
                r.z,
                tuple(&r.r),
                tuple(&r.pi_y),
                tuple(&r.pi_z)
            )?;
            writeln!(
                out,
                "  r . pi_z . i = {} expected f = {} {}",
                tuple(&r.r_pi_z_i),
                tuple(&r.f),
                verdict_word(r.r_pi_z_i == r.f)
            )?;
            writeln!(
                out,
                "  r . pi_y . i = {} expected g = {} {}",
                tuple(&r.r_pi_y_i),
                tuple(&r.g),
                verdict_word(r.r_pi_y_i == r.g)
            )?;
            all &= r.passed();
        }
    }
    writeln!(out, "{}", if all { "pass" } else { "FAIL" })?;
    Ok(if all { 0 } else { 1 })
}

fn demo_matrix(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut all = true;
    for (a, b) in [
        ("[[2]]", "[[5]]"),
        ("[[1,0],[0,1]]", "[[1,0],[0,3]]"),
        ("[[0]]", "[[6]]"),
    ] {
        let (a, b): (IntMatrix, IntMatrix) = (a.parse().expect("literal"), b.parse().expect("literal"));
        let s = separator_matrix(&a, &b, a.rows().max(a.cols())).map_err(|e| Failure::data(e.to_string()))?;
        let ok = s.image_a != s.image_b;
        writeln!(
            out,
            "reduce {a} vs {b}: prime {} gives {} vs {} {}",
            s.prime,
            a.reduce(s.prime),
            b.reduce(s.prime),
            verdict_word(ok)
        )?;
        all &= ok;
    }
    for q in [2, 3, 4] {
        let r = unitriangular_embedding_check(q);
        writeln!(
            out,
            "unitriangular q={q}: injective {} homomorphism {} automorphisms {} {}",
            r.injective,
            r.homomorphism,
            r.lands_in_automorphisms,
            verdict_word(r.passed())
        )?;
        all &= r.passed();
    }
    let e = fset_matrix_embedding(3, 2);
    let valid = e.functor.validate(e.fset.category(), e.matrices.category()).is_ok();
    let faithful = valid && e.functor.properties(e.fset.category(), e.matrices.category()).faithful;
    writeln!(
        out,
        "fset(3) into matrices mod 2: functor {} faithful {} {}",
        valid,
        faithful,
        verdict_word(valid && faithful)
    )?;
    all &= valid && faithful;
    writeln!(out, "{}", if all { "pass" } else { "FAIL" })?;
    Ok(if all { 0 } else { 1 })
}

fn verify(file: &FsPath, certificate: &FsPath, out: &mut dyn Write) -> Result<i32, Failure> {
    let presentation = load_presentation(file)?;
    let text = read(certificate)?;
    let value: json::VerdictJson =
        serde_json::from_str(&text).map_err(|e| Failure::data(format!("{}: {e}", certificate.display())))?;
    let (p, q, verdict) =
        json::verdict_from_json(&presentation, &value).map_err(|e| Failure::data(format!("{}: {e}", certificate.display())))?;
    match verify_verdict(&presentation, &p, &q, &verdict) {
        Ok(()) => {
            writeln!(out, "verified {}", verdict.name())?;
            Ok(0)
        }
        Err(e) => {
            writeln!(out, "rejected: {e}")?;
            Ok(1)
        }
    }
}
