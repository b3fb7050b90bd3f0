//! The `qf` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cyclotomic::{crt_residues, factor_symmetric_poly, symmetric_poly};
use crate::error::Error;
use crate::finite::analysis::{dis, lmlt, orbit_group, orbits};
use crate::finite::construct::{
    affine_quandle_limited, free_2reductive_symmetric, free_2reductive_symmetric_labels, Automorphism,
    DEFAULT_SIZE_LIMIT,
};
use crate::finite::perm::DEFAULT_CLOSURE_CAP;
use crate::finite::table::FiniteBinaryTable;
use crate::free::{FreeQuandle, GeneratorSet, Vector};
use crate::poly::LaurentPoly;
use crate::ring::RingSpec;
use crate::suite::{self, CriterionReport};
use crate::term::{decide_identity, normalize, parse, Term, VarietySpec};

pub const CLOSURE_CAP_VAR: &str = "QF_CLOSURE_CAP";

#[derive(Parser, Debug)]
#[command(name = "qf", version, about = "Free medial quandles and finite quandle tables")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for commands that can use them.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a term in a free algebra.
    Normalize {
        #[arg(long, default_value = "medial")]
        variety: VarietySpec,
        term: String,
    },
    /// Decide whether `lhs ≈ rhs` holds throughout a variety.
    Decide {
        #[arg(long, default_value = "medial")]
        variety: VarietySpec,
        lhs: String,
        rhs: String,
    },
    /// Build a Cayley table.
    #[command(subcommand)]
    Construct(Construct),
    /// Axioms, groups, orbits and symmetry/reductivity of a table file.
    Analyze {
        file: PathBuf,
        /// Largest symmetry and reductivity order to scan.
        #[arg(long, default_value_t = 12)]
        max_order: u64,
    },
    /// Affine embedding of a free element given as JSON.
    Embed {
        #[command(flatten)]
        gens: GensArg,
        element: String,
    },
    /// Inverse of `embed`; the vector is a JSON object `{symbol: polynomial}`.
    Unembed {
        #[command(flatten)]
        gens: GensArg,
        #[arg(long, default_value = "medial")]
        variety: VarietySpec,
        vector: String,
    },
    /// Cyclotomic factors of 1 + t + ... + t^(n-1) and residues of an element.
    Crt {
        #[arg(long)]
        n: u64,
        /// Element of Z[t]/(1 + ... + t^(n-1)) to split.
        #[arg(long)]
        element: Option<LaurentPoly>,
    },
    /// Cross-check the involutory free quandle against the 2a - b model.
    Joyce {
        /// Largest number of leaves per term.
        #[arg(long)]
        check: usize,
        #[arg(long, default_value_t = 3)]
        gens: usize,
    },
    /// Recompute the three-generator worked example.
    VerifyExample,
    /// Run every acceptance check.
    Suite,
}

#[derive(Args, Debug)]
struct GensArg {
    /// Generators, comma separated with the base first, or a count `k` for `0..k-1`.
    #[arg(long)]
    gens: String,
}

impl GensArg {
    fn parse(&self) -> Result<GeneratorSet, CliError> {
        if let Ok(k) = self.gens.trim().parse::<usize>() {
            return Ok(GeneratorSet::numbered(k)?);
        }
        Ok(GeneratorSet::new(self.gens.split(',').map(str::trim))?)
    }
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Aff(A, h) for A = Z_k1 ⊕ ... ⊕ Z_kd.
    Affine {
        /// Cyclic orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        /// Scalar automorphism.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        u: Option<i64>,
        /// Matrix rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
    /// Free 2-reductive n-symmetric quandle on `gens` generators.
    Red2sym {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gens: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write one element name per line.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<String, CliError>;

/// Runs `qf` on `argv` (including the program name), writing to `out` and
/// `err`. Returns the exit code: 0 on success, 1 on a domain error, 2 on a
/// usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) { 0 } else { 2 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let (text, code) = match dispatch(&cli) {
        Ok(text) => (text, 0),
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            return 2;
        }
    };
    let _ = out.write_all(text.as_bytes());
    if !text.is_empty() && !text.ends_with('\n') {
        let _ = writeln!(out);
    }
    // `suite` reports failures through its exit code
    if let Command::Suite = cli.command {
        if text.contains("[FAIL]") || text.contains("\"passed\":false") {
            return 1;
        }
    }
    code
}

fn closure_cap() -> Result<usize, CliError> {
    match std::env::var(CLOSURE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CLOSURE_CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn parse_term(s: &str) -> Result<Term, CliError> {
    Ok(parse(s)?)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Normalize { variety, term } => {
            let nf = normalize(&parse_term(term)?, variety)?;
            Ok(if cli.json { pretty(&nf.to_json()) } else { nf.to_string() })
        }
        Command::Decide { variety, lhs, rhs } => {
            let verdict = decide_identity(&parse_term(lhs)?, &parse_term(rhs)?, variety)?;
            if cli.json {
                return Ok(pretty(&verdict.to_json()));
            }
            let (l, r) = verdict.normal_forms();
            Ok(if verdict.is_valid() {
                format!("valid\nnormal form: {l}")
            } else {
                format!("invalid\nlhs: {l}\nrhs: {r}")
            })
        }
        Command::Construct(c) => construct(cli, c),
        Command::Analyze { file, max_order } => analyze(cli, file, *max_order),
        Command::Embed { gens, element } => {
            let value: serde_json::Value =
                serde_json::from_str(element).map_err(|e| CliError::Usage(format!("element is not JSON: {e}")))?;
            let ring: RingSpec = value
                .get("ring")
                .and_then(|r| r.as_str())
                .unwrap_or("laurent")
                .parse()?;
            let ctx = FreeQuandle::new(gens.parse()?, ring);
            let p = ctx.element_from_json(&value)?;
            let v = ctx.embed_affine(&p)?;
            Ok(if cli.json { pretty(&vector_json(&v)) } else { v.to_string() })
        }
        Command::Unembed { gens, variety, vector } => {
            let ctx = variety.context(gens.parse()?)?;
            let coords: std::collections::BTreeMap<String, String> = serde_json::from_str(vector)
                .map_err(|e| CliError::Usage(format!("vector must be a JSON object of polynomials: {e}")))?;
            let coords = coords
                .iter()
                .map(|(s, p)| Ok((s.clone(), p.parse::<LaurentPoly>()?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let p = ctx.unembed_affine(&Vector::from_coords(ctx.ring(), coords))?;
            Ok(if cli.json { pretty(&p.to_json()) } else { p.to_string() })
        }
        Command::Crt { n, element } => crt(cli, *n, element.as_ref()),
        Command::Joyce { check, gens } => joyce(cli, *check, *gens),
        Command::VerifyExample => verify_example(cli),
        Command::Suite => run_suite(cli),
    }
}

fn vector_json(v: &Vector) -> serde_json::Value {
    let coords: serde_json::Map<String, serde_json::Value> =
        v.coords().map(|(s, p)| (s.to_string(), json!(p.to_string()))).collect();
    json!({ "coords": coords, "ring": v.ring().to_string() })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError::Usage(format!("bad matrix entry {x:?}")))
                })
                .collect()
        })
        .collect()
}

fn emit_table(cli: &Cli, table: &FiniteBinaryTable, out: Option<&PathBuf>) -> CliResult {
    let body = if cli.json { pretty(&table.to_json()) + "\n" } else { table.to_text() };
    match out {
        Some(path) => {
            write_file(path, &body)?;
            Ok(format!("wrote {}-element table to {}", table.size(), path.display()))
        }
        None => Ok(body),
    }
}

fn construct(cli: &Cli, c: &Construct) -> CliResult {
    match c {
        Construct::Affine { orders, u, matrix, out, limit } => {
            let aut = match (u, matrix) {
                (Some(u), _) => Automorphism::Scalar(*u),
                (None, Some(m)) => Automorphism::Matrix(parse_matrix(m)?),
                (None, None) => return Err(CliError::Usage("one of --u or --matrix is required".into())),
            };
            let table = affine_quandle_limited(orders, &aut, *limit)?;
            emit_table(cli, &table, out.as_ref())
        }
        Construct::Red2sym { n, gens, out, labels, limit } => {
            let set = GeneratorSet::numbered(*gens)?;
            let table = free_2reductive_symmetric(*n, &set, *limit)?;
            if let Some(path) = labels {
                let names = free_2reductive_symmetric_labels(*n, &set);
                write_file(path, &(names.join("\n") + "\n"))?;
            }
            emit_table(cli, &table, out.as_ref())
        }
    }
}

fn read_table(path: &PathBuf) -> Result<FiniteBinaryTable, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::TableFormat(format!("bad table JSON: {e}")))?;
        Ok(FiniteBinaryTable::from_json(&v)?)
    } else {
        Ok(FiniteBinaryTable::parse(&text)?)
    }
}

fn analyze(cli: &Cli, file: &PathBuf, max_order: u64) -> CliResult {
    let cap = closure_cap()?;
    let q = read_table(file)?;
    let axioms = q.check_axioms();
    let mut report = json!({
        "size": q.size(),
        "axioms": axioms,
        "quandle": axioms.is_quandle(),
    });
    if axioms.is_quandle() {
        let l = lmlt(&q, cap)?;
        let d = dis(&q, cap)?;
        let orbs = orbits(&q)?;
        let orbit_groups = orbs
            .iter()
            .map(|o| {
                let g = orbit_group(&q, o[0], cap)?;
                Ok(json!({ "base": o[0], "order": g.order(), "abelian_group": g.is_abelian_group() }))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let symmetric: Vec<u64> = (1..=max_order).filter(|&n| q.check_symmetry(n)).collect();
        let reductive: Vec<u64> = (1..=max_order).filter(|&m| q.check_reductivity(m)).collect();
        report["lmlt_order"] = json!(l.order());
        report["dis_order"] = json!(d.order());
        report["dis_abelian"] = json!(d.is_abelian());
        report["orbits"] = json!(orbs);
        report["orbit_groups"] = json!(orbit_groups);
        report["symmetric_orders"] = json!(symmetric);
        report["reductive_orders"] = json!(reductive);
        report["right_cancellative"] = json!(q.is_right_cancellative());
    }
    if cli.json {
        return Ok(pretty(&report));
    }
    let flag = |b: bool| if b { "yes" } else { "no" };
    let mut s = format!(
        "size: {}\nidempotent: {}\nleft quasigroup: {}\nleft distributive: {}\nmedial: {}\nquandle: {}\n",
        q.size(),
        flag(axioms.idempotent),
        flag(axioms.left_quasigroup),
        flag(axioms.left_distributive),
        flag(axioms.medial),
        flag(axioms.is_quandle())
    );
    if axioms.is_quandle() {
        let list = |v: &serde_json::Value| {
            let items: Vec<String> = v.as_array().unwrap().iter().map(|x| x.to_string()).collect();
            if items.is_empty() { "none".to_string() } else { items.join(" ") }
        };
        let orbs: Vec<String> = report["orbits"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| format!("{{{}}}", list(o)))
            .collect();
        let groups: Vec<String> = report["orbit_groups"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| format!("{}:{}", g["base"], g["order"]))
            .collect();
        s += &format!(
            "LMlt order: {}\nDis order: {} ({})\norbits: {}\norbit group orders: {}\nsymmetric for n in 1..={max_order}: {}\nreductive for m in 1..={max_order}: {}\nright cancellative: {}\n",
            report["lmlt_order"],
            report["dis_order"],
            if report["dis_abelian"] == json!(true) { "abelian" } else { "non-abelian" },
            orbs.join(" "),
            groups.join(" "),
            list(&report["symmetric_orders"]),
            list(&report["reductive_orders"]),
            flag(report["right_cancellative"] == json!(true)),
        );
    }
    Ok(s)
}

fn crt(cli: &Cli, n: u64, element: Option<&LaurentPoly>) -> CliResult {
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    let sigma = symmetric_poly(n);
    let factors = factor_symmetric_poly(n);
    let product = factors.iter().fold(LaurentPoly::one(), |acc, f| &acc * f);
    let verified = product == sigma;
    let residues = match element {
        Some(p) => {
            let ring = RingSpec::quotient(&sigma)?;
            Some(crt_residues(&ring.reduce(p), &factors)?)
        }
        None => None,
    };
    if cli.json {
        return Ok(pretty(&json!({
            "n": n,
            "modulus": sigma.to_string(),
            "factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "product_verified": verified,
            "residues": residues.as_ref().map(|rs| rs.iter().map(|r| r.value().to_string()).collect::<Vec<_>>()),
        })));
    }
    let mut s = format!(
        "factors: {}\nproduct: {} ({})\n",
        factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "),
        product,
        if verified { "verified" } else { "MISMATCH" }
    );
    if let Some(rs) = residues {
        for (f, r) in factors.iter().zip(rs) {
            s += &format!("mod {f}: {}\n", r.value());
        }
    }
    if verified {
        Ok(s)
    } else {
        Err(CliError::Io(s))
    }
}

fn joyce(cli: &Cli, max_leaves: usize, gens: usize) -> CliResult {
    if gens < 1 {
        return Err(CliError::Usage("--gens must be positive".into()));
    }
    let ctx = FreeQuandle::symmetric(GeneratorSet::numbered(gens)?, 2)?;
    let values = suite::term_values(&ctx, max_leaves)?;
    let images = values
        .iter()
        .map(|v| ctx.joyce_isomorphism(v))
        .collect::<Result<Vec<_>, Error>>()?;
    let outside = images.iter().filter(|v| !crate::free::in_joyce_model(v)).count();
    let distinct: std::collections::HashSet<_> = images.iter().collect();
    let collisions = images.len() - distinct.len();
    let mut mismatches = 0usize;
    for (a, ja) in values.iter().zip(&images) {
        for (b, jb) in values.iter().zip(&images) {
            if ctx.joyce_isomorphism(&ctx.star(a, b)?)? != crate::free::joyce_model_star(ja, jb)? {
                mismatches += 1;
            }
        }
    }
    let ok = outside == 0 && collisions == 0 && mismatches == 0;
    let body = if cli.json {
        pretty(&json!({
            "max_leaves": max_leaves, "generators": gens, "values": values.len(),
            "outside_model": outside, "collisions": collisions, "mismatches": mismatches, "passed": ok,
        }))
    } else {
        format!(
            "{}: {} values over {gens} generators (terms up to {max_leaves} leaves), {} pairs; outside model {outside}, collisions {collisions}, mismatches {mismatches}",
            if ok { "PASS" } else { "FAIL" },
            values.len(),
            values.len() * values.len()
        )
    };
    if ok {
        Ok(body)
    } else {
        Err(CliError::Io(body))
    }
}

fn verify_example(cli: &Cli) -> CliResult {
    let main = suite::worked_example();
    let q = FreeQuandle::medial(GeneratorSet::numbered(3)?);
    let perturbed = Vector::from_coords(
        q.ring(),
        [("1", "1 - t".parse::<LaurentPoly>()?), ("2", "1 + t".parse()?)],
    );
    let perturbed_result = match q.unembed_affine(&perturbed) {
        Err(Error::NotInImage(msg)) => format!("NotInImage ({msg})"),
        Err(e) => format!("unexpected error: {e}"),
        Ok(p) => format!("unexpectedly unembedded to {p}"),
    };
    let zero = q.unembed_affine(&Vector::zero(q.ring()))?;
    let zero_ok = zero == q.generator("0")?;
    let ok = main.passed && perturbed_result.starts_with("NotInImage") && zero_ok;
    let body = if cli.json {
        pretty(&json!({
            "passed": ok,
            "worked_example": main,
            "perturbed": perturbed_result,
            "zero": zero.to_string(),
        }))
    } else {
        format!(
            "{}\n{}\nperturbed a' = {perturbed}: {perturbed_result}\nzero vector unembeds to {zero}\n",
            if ok { "PASS" } else { "FAIL" },
            main.detail
        )
    };
    if ok {
        Ok(body)
    } else {
        Err(CliError::Io(body))
    }
}

fn run_suite(cli: &Cli) -> CliResult {
    let corpus = crate::finite::corpus::standard_corpus()?;
    type Check<'a> = Box<dyn Fn() -> CriterionReport + Send + Sync + 'a>;
    let checks: Vec<Check> = vec![
        Box::new(suite::worked_example),
        Box::new(suite::axiom_suite),
        Box::new(|| suite::identity_oracle(&corpus)),
        Box::new(suite::joyce_equivalence),
        Box::new(|| suite::subvariety_characterizations(&corpus)),
        Box::new(|| suite::medial_dis(&corpus)),
        Box::new(suite::crt_layer),
        Box::new(|| suite::dis_generators(&corpus)),
    ];
    let threads = cli.threads.max(1);
    let mut reports: Vec<Option<CriterionReport>> = vec![None; checks.len()];
    if threads == 1 {
        for (slot, check) in reports.iter_mut().zip(&checks) {
            *slot = Some(check());
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let results = std::sync::Mutex::new(&mut reports);
        std::thread::scope(|s| {
            for _ in 0..threads.min(checks.len()) {
                s.spawn(|| loop {
                    let k = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    let Some(check) = checks.get(k) else { break };
                    let r = check();
                    results.lock().unwrap()[k] = Some(r);
                });
            }
        });
    }
    let reports: Vec<CriterionReport> = reports.into_iter().map(Option::unwrap).collect();
    if cli.json {
        let passed = reports.iter().all(|r| r.passed);
        return Ok(serde_json::to_string(&json!({ "passed": passed, "criteria": reports })).unwrap());
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
    s += &format!("{passed}/{} criteria passed\n", reports.len());
    Ok(s)
}
