use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use s3cover::atlas::{self, AtlasOptions, Status, Suite};
use s3cover::covers::{self, BuildingData};
use s3cover::groebner::{self, GbOptions};
use s3cover::io::{self, AlgebraJson, BaseField, BuildingDataJson, NamedField, TripleCoverJson};
use s3cover::miranda;
use s3cover::poly::IdealFile;
use s3cover::s3x;
use s3cover::{Fp, MonomialOrder, Rational, Ring, RingElem};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "s3cover", version, about = "S3 and (mu3 x| Z/2)-covers from building data")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Emit JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Treat skipped checks as failures (exit code 2).
    #[arg(long, global = true)]
    strict: bool,
    /// Seed for every randomised check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings (makes output non-deterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relation residuals, loci, torsor status and discriminant of building data.
    CheckCover { file: PathBuf },
    /// Structure constants of the cover algebra.
    Algebra {
        file: PathBuf,
        /// Instead of building data, read structure constants and check them.
        #[arg(long)]
        check: bool,
    },
    /// Conversions between building data and triple-cover data.
    Triple { file: PathBuf },
    /// The rank-6 algebra with its S3-action.
    S3 { file: PathBuf },
    /// Reduced Groebner basis of an ideal file.
    Gb {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
        /// Work over GF(p) instead of QQ.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Certify the statements about the atlas ring.
    VerifyPaper {
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<SuiteArg>,
        #[arg(long, default_value = "q")]
        field: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Core,
    Ideal,
    Surface,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Core => Suite::Core,
            SuiteArg::Ideal => Suite::Ideal,
            SuiteArg::Surface => Suite::Surface,
        }
    }
}

/// What a subcommand produced.
struct Outcome {
    ring: String,
    text: String,
    json: Value,
    code: u8,
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    // exit code 2 is reserved for skipped checks under --strict
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                let mut v = json!({ "version": VERSION, "coefficient_ring": out.ring });
                if let (Value::Object(dst), Value::Object(src)) = (&mut v, out.json) {
                    dst.extend(src);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("JSON output"));
            } else {
                println!("s3cover {VERSION}");
                println!("ring: {}", out.ring);
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure(msg)) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&json!({ "version": VERSION, "error": msg })).unwrap());
            } else {
                println!("s3cover {VERSION}");
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Runs `$body` with `K` bound to the coefficient field named by `$base`.
macro_rules! with_field {
    ($base:expr, $f:ident ( $($arg:expr),* )) => {
        match $base {
            BaseField::Rational => $f::<Rational>($($arg),*),
            BaseField::Fp(_) => $f::<Fp>($($arg),*),
        }
    };
}

fn run(cli: &Cli) -> Res<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::CheckCover { file } => {
            let j = BuildingDataJson::from_str(&read(file)?)?;
            with_field!(j.base_field()?, check_cover(&j))
        }
        Command::Algebra { file, check: false } => {
            let j = BuildingDataJson::from_str(&read(file)?)?;
            with_field!(j.base_field()?, algebra(&j))
        }
        Command::Algebra { file, check: true } => {
            let j = AlgebraJson::from_str(&read(file)?)?;
            with_field!(j.base_field()?, check_algebra(&j))
        }
        Command::Triple { file } => {
            let text = read(file)?;
            let v: Value = serde_json::from_str(&text)?;
            if v.get("delta").is_some() {
                let j = TripleCoverJson::from_str(&text)?;
                with_field!(j.base_field()?, triple_from_delta(&j))
            } else {
                let j = BuildingDataJson::from_str(&text)?;
                with_field!(j.base_field()?, triple_from_cover(&j))
            }
        }
        Command::S3 { file } => {
            let j = BuildingDataJson::from_str(&read(file)?)?;
            with_field!(j.base_field()?, s3(&j))
        }
        Command::Gb { file, order, modulus } => {
            let base = match modulus {
                None => BaseField::Rational,
                Some(p) => BaseField::parse(&format!("fp:{p}"))?,
            };
            let order = match order {
                Order::Lex => MonomialOrder::Lex,
                Order::Grevlex => MonomialOrder::Grevlex,
            };
            let parsed = IdealFile::parse(&read(file)?)?;
            match base {
                BaseField::Rational => gb(&parsed, &Rational::zero(), order),
                BaseField::Fp(p) => gb(&parsed, &Fp::new(0, p)?, order),
            }
        }
        Command::VerifyPaper { suite, field } => {
            let suites: Vec<Suite> = if suite.is_empty() {
                Suite::all()
            } else {
                suite.iter().map(|s| (*s).into()).collect()
            };
            let opts = AtlasOptions { seed: g.seed, timings: g.timings, ..AtlasOptions::default() };
            match BaseField::parse(field)? {
                BaseField::Rational => verify_paper(&Rational::zero(), &suites, &opts, g.strict),
                BaseField::Fp(p) => verify_paper(&Fp::new(0, p)?, &suites, &opts, g.strict),
            }
        }
    }
}

fn ring_of<K: NamedField>(chi: &BuildingData<RingElem<K>>) -> String {
    chi.omega.ring().describe()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_cover<K: NamedField>(j: &BuildingDataJson) -> Res<Outcome> {
    let chi = j.to_data::<K>()?;
    let residuals = covers::relation_residuals(&chi)?;
    let report = covers::classify(&chi)?;
    let disc = covers::discriminant_chi(&chi)?;
    let mut text = String::new();
    let bad: Vec<usize> = (0..residuals.len()).filter(|&i| !residuals[i].is_zero()).collect();
    if bad.is_empty() {
        text.push_str("relations: OK\n");
    } else {
        let _ = writeln!(text, "relations: FAILED ({} of {} non-zero)", bad.len(), residuals.len());
        for i in &bad {
            let _ = writeln!(text, "  g{} = {}", i + 1, residuals[*i]);
        }
    }
    let loci = report.loci();
    let _ = writeln!(text, "loci: {}", if loci.is_empty() { "none".to_string() } else { loci.join(", ") });
    if report.scheme_theoretic {
        text.push_str("  (open loci read as unit ideals, closed loci as identical vanishing)\n");
    }
    let _ = writeln!(text, "torsor: {}", yes(report.is_torsor));
    let _ = writeln!(text, "discriminant: {disc}");
    let mut v = io::locus_json(&report, &residuals);
    v["discriminant"] = json!(disc.to_string());
    Ok(Outcome { ring: ring_of(&chi), text, json: json!({ "check_cover": v }), code: u8::from(!bad.is_empty()) })
}

fn algebra<K: NamedField>(j: &BuildingDataJson) -> Res<Outcome> {
    let chi = j.to_data::<K>()?;
    let cover = covers::cover_algebra(&chi)?;
    let out = AlgebraJson::from_algebra(j.ring.clone(), &cover.algebra);
    let comm = cover.algebra.check_commutative();
    let assoc = cover.algebra.check_associative();
    let mut text = format_algebra(&out);
    let _ = writeln!(text, "commutative: {}\nassociative: {}", yes(comm), yes(assoc));
    let mut v = serde_json::to_value(&out)?;
    v["commutative"] = json!(comm);
    v["associative"] = json!(assoc);
    Ok(Outcome { ring: ring_of(&chi), text, json: v, code: 0 })
}

fn format_algebra(a: &AlgebraJson) -> String {
    let mut text = format!("basis: {}\n", a.basis.join(", "));
    for i in (0..a.rank).filter(|&i| i != a.unit) {
        for j in (i..a.rank).filter(|&j| j != a.unit) {
            let terms: Vec<String> = a.mult[i][j]
                .iter()
                .zip(&a.basis)
                .filter(|(c, _)| c.as_str() != "0")
                .map(|(c, b)| if b == "1" { c.clone() } else { format!("({c})*{b}") })
                .collect();
            if !terms.is_empty() {
                let _ = writeln!(text, "{} * {} = {}", a.basis[i], a.basis[j], terms.join(" + "));
            }
        }
    }
    text
}

fn check_algebra<K: NamedField>(j: &AlgebraJson) -> Res<Outcome> {
    let alg = j.to_algebra::<K>()?;
    let ring = alg.product_of_basis(0, 0)[0].ring().describe();
    let comm = alg.commutativity_witness();
    let assoc = alg.associativity_witness();
    let mut text = String::new();
    let _ = writeln!(text, "rank: {}", alg.rank());
    let _ = match comm {
        None => writeln!(text, "commutative: yes"),
        Some((a, b)) => writeln!(text, "commutative: no (witness e{a}, e{b})"),
    };
    let _ = match assoc {
        None => writeln!(text, "associative: yes"),
        Some((a, b, c)) => writeln!(text, "associative: no (witness e{a}, e{b}, e{c})"),
    };
    let v = json!({
        "rank": alg.rank(),
        "commutative": comm.is_none(),
        "associative": assoc.is_none(),
        "commutativity_witness": comm.map(|(a, b)| vec![a, b]),
        "associativity_witness": assoc.map(|(a, b, c)| vec![a, b, c]),
    });
    Ok(Outcome { ring, text, json: v, code: 0 })
}

fn triple_from_delta<K: NamedField>(j: &TripleCoverJson) -> Res<Outcome> {
    let d = j.to_delta::<K>()?;
    let ring = d.delta[0].ring().describe();
    let beta = miranda::beta_from_delta(&d);
    let eta = miranda::eta_delta(&d);
    let m = miranda::m_delta(&d)?;
    let chi = miranda::lambda_to_cover(&d)?;
    let cover = BuildingDataJson::from_data(j.ring.clone(), &chi);
    let mut text = String::new();
    let _ = writeln!(text, "delta: {}", j.delta.join(", "));
    let _ = writeln!(text, "beta: [{}; {}]", join(&beta[0]), join(&beta[1]));
    let _ = writeln!(text, "eta: {}", join(&eta));
    let _ = writeln!(text, "m: {m}");
    let _ = writeln!(text, "discriminant of the triple cover: {}", miranda::delta_phi(&d));
    let _ = writeln!(text, "Lambda: alpha = [{}; {}], omega = {}", join(&chi.alpha[0]), join(&chi.alpha[1]), chi.omega);
    let mut v = json!({
        "beta": beta.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "eta": eta.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "m": m.to_string(),
        "discriminant": miranda::delta_phi(&d).to_string(),
        "lambda": serde_json::to_value(&cover)?,
    });
    if j.zeta.is_some() {
        let zd = j.to_zdata::<K>()?;
        let (c1, c2) = miranda::z_conditions(&zd);
        let ok = c1.iter().chain(c2.iter()).all(|x| x.is_zero());
        let _ = writeln!(text, "Z-data conditions: {}", if ok { "OK" } else { "FAILED" });
        v["z_conditions"] = json!(ok);
        if !ok {
            return Ok(Outcome { ring, text, json: v, code: 1 });
        }
    }
    Ok(Outcome { ring, text, json: v, code: 0 })
}

fn triple_from_cover<K: NamedField>(j: &BuildingDataJson) -> Res<Outcome> {
    let chi = j.to_data::<K>()?;
    let d = miranda::delta_from_beta(&chi.beta)?;
    let out = TripleCoverJson::from_delta(j.ring.clone(), &d);
    let mut text = String::new();
    let _ = writeln!(text, "delta: {}", out.delta.join(", "));
    let mut v = json!({ "delta": out.delta });
    match miranda::ZData::from_cover(&chi) {
        Ok(zd) => {
            let z = TripleCoverJson::from_zdata(j.ring.clone(), &zd);
            let zeta = z.zeta.clone().unwrap_or_default();
            let _ = writeln!(text, "zeta: {}", zeta.join(", "));
            v["zeta"] = json!(zeta);
            v["omega"] = json!(z.omega);
        }
        Err(e) => {
            let _ = writeln!(text, "zeta: unavailable ({e})");
        }
    }
    match miranda::cover_to_triple(&chi) {
        Ok(t) => {
            let s = TripleCoverJson::from_delta(j.ring.clone(), &t);
            let _ = writeln!(text, "normalised triple cover: {}", s.delta.join(", "));
            v["normalised"] = json!(s.delta);
        }
        Err(e) => {
            let _ = writeln!(text, "normalised triple cover: unavailable ({e})");
        }
    }
    Ok(Outcome { ring: ring_of(&chi), text, json: v, code: 0 })
}

fn join<R: Ring>(xs: &[R]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn matrix_json<R: Ring>(m: &[Vec<R>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn s3<K: NamedField>(j: &BuildingDataJson) -> Res<Outcome> {
    let chi = j.to_data::<K>()?;
    let c = s3x::s3_transform(&chi)?;
    let verified = c.verify();
    let (lifted, w) = s3x::adjoin_sqrt_minus3(&chi)?;
    let triv = s3x::equivariant_trivialization(&lifted, &w);
    let inv = s3x::s3_invariants_under_transposition(&c)?;
    let alg = AlgebraJson::from_algebra(j.ring.clone(), &c.algebra);
    let mut text = format_algebra(&alg);
    let _ = writeln!(text, "r = {}", matrix_json(&c.r.matrix));
    let _ = writeln!(text, "s = {}", matrix_json(&c.s.matrix));
    let _ = writeln!(text, "commutative, associative, S3-action: {}", verdict(&verified));
    let _ = writeln!(text, "equivariant isomorphism over {}: {}", w.ring().describe(), verdict(&triv));
    let _ = writeln!(text, "invariants of s: discriminant {}", inv.discriminant());
    let code = u8::from(verified.is_err() || triv.is_err());
    let v = json!({
        "algebra": serde_json::to_value(&alg)?,
        "r": matrix_json(&c.r.matrix),
        "s": matrix_json(&c.s.matrix),
        "verified": verified.is_ok(),
        "equivariant_isomorphism": triv.is_ok(),
        "invariant_discriminant": inv.discriminant().to_string(),
    });
    Ok(Outcome { ring: ring_of(&chi), text, json: v, code })
}

fn verdict<T, E: std::fmt::Display>(r: &Result<T, E>) -> String {
    match r {
        Ok(_) => "verified".to_string(),
        Err(e) => format!("FAILED ({e})"),
    }
}

fn gb<K: s3cover::Field>(file: &IdealFile, coeff: &K, order: MonomialOrder) -> Res<Outcome> {
    let ideal = file.to_ideal(coeff, order)?;
    let ring = ideal.ring().clone();
    let basis = groebner::buchberger_with(ideal.gens(), &ring, &GbOptions::default())?;
    let polys: Vec<String> = basis.polys().iter().map(|p| p.to_string()).collect();
    let mut text = format!("vars: {}\n", ring.vars().join(" "));
    for p in &polys {
        let _ = writeln!(text, "{p}");
    }
    let ring_name = format!("{}[{}]", atlas::describe_field(coeff), ring.vars().join(","));
    let v = json!({ "order": format!("{order:?}").to_lowercase(), "vars": ring.vars(), "basis": polys });
    Ok(Outcome { ring: ring_name, text, json: v, code: 0 })
}

fn verify_paper<K: s3cover::Field>(coeff: &K, suites: &[Suite], opts: &AtlasOptions, strict: bool) -> Res<Outcome> {
    let report = atlas::run_suites(coeff, suites, opts)?;
    let code = if report.count(Status::Refuted) > 0 {
        1
    } else if strict && report.count(Status::Skipped) > 0 {
        2
    } else {
        0
    };
    let ring = format!("{}[{}]", report.field, atlas::ip_ring(coeff).vars().join(","));
    Ok(Outcome { ring, text: report.to_text(), json: report.to_json(), code })
}
