use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permiso_cli::verify::{self, GoldenFile, Suite};
use permiso_core::{
    r_elements, reduce_antichain, run_extension, run_group_extension, ClassMap, Error, GenConfig,
    MembershipCheck, ParseError, PatternClass, Permutation, SeedBijection, SeedGroup, Symmetry,
};

#[derive(Parser)]
#[command(
    name = "permiso",
    version,
    about = "Pattern classes, shadows, and the maps that link them"
)]
struct Cli {
    /// Worker threads (default: every core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Ceiling on the size of any single generated level.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the patterns left by deleting one point.
    Shadow { perm: String },

    /// Decide whether the first permutation contains the second.
    Contains { haystack: String, needle: String },

    /// Apply a symmetry word (letters r, c, i; e for the identity).
    Symmetry { perm: String, word: String },

    /// Enumerate an avoidance class level by level, printing CSV.
    Enumerate {
        /// JSON file of the form {"basis": ["132", "4321"]}.
        basis_file: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_length: usize,
        /// How candidates are tested during generation.
        #[arg(long, value_enum, default_value_t = CheckArg::Direct)]
        check: CheckArg,
    },

    /// Extend a seed bijection to its maximal class.
    Extend {
        /// Seed name h1 through h6, or a JSON file mapping all eight
        /// backbone elements, like {"12": "12", ..., "2413": "3142"}.
        seed: String,
        #[arg(long, default_value_t = 7)]
        max_length: usize,
        /// Write the full run report as JSON to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },

    /// Extend every seed of a group at once.
    ExtendGroup {
        /// "aut-R" for the full backbone group, or a comma-separated list
        /// of seed names whose closure to take, like "h2,h5".
        group: String,
        #[arg(long, default_value_t = 7)]
        max_length: usize,
    },

    /// Recompute the recorded artifacts and compare.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Compare against this golden file instead of the built-in
        /// expectations.
        #[arg(long)]
        golden: Option<PathBuf>,
    },

    /// Write the expected artifacts as a golden JSON file.
    Golden {
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Print the basis of one of the named classes (f1 through f6).
    Basis { map: String },

    /// Apply one of the named maps to a member of its class.
    Map { map: String, perm: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    /// Pattern-match candidates against the basis.
    Direct,
    /// Test candidates through their shadows.
    Shadow,
}

impl From<CheckArg> for MembershipCheck {
    fn from(arg: CheckArg) -> MembershipCheck {
        match arg {
            CheckArg::Direct => MembershipCheck::Direct,
            CheckArg::Shadow => MembershipCheck::ShadowMembership,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Smith,
    Tables,
    Maps,
    Series,
    Group,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(arg: SuiteArg) -> Suite {
        match arg {
            SuiteArg::Smith => Suite::Smith,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Maps => Suite::Maps,
            SuiteArg::Series => Suite::Series,
            SuiteArg::Group => Suite::Group,
            SuiteArg::All => Suite::All,
        }
    }
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A level outgrew the cap: exit 3.
    Cap(String),
    /// A verification check failed: exit 1.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::LevelCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Shadow { perm } => {
            let p: Permutation = perm.parse()?;
            println!("{}", p.shadow()?);
        }
        Command::Contains { haystack, needle } => {
            let h: Permutation = haystack.parse()?;
            let n: Permutation = needle.parse()?;
            println!("{}", h.contains(&n));
        }
        Command::Symmetry { perm, word } => {
            let p: Permutation = perm.parse()?;
            let sym: Symmetry = word.parse()?;
            println!("{}", sym.apply(&p));
        }
        Command::Enumerate { basis_file, max_length, check } => {
            let basis = read_basis_file(&basis_file)?;
            let (_, dropped) = reduce_antichain(&basis);
            if !dropped.is_empty() {
                eprintln!("note: redundant basis entries ignored: {}", join_perms(&dropped));
            }
            let mut class = PatternClass::from_basis(&basis);
            class.generate_to(max_length, &GenConfig { cap, check: check.into() })?;
            print!("{}", class.counts().to_csv());
        }
        Command::Extend { seed, max_length, report } => {
            let bijection = parse_seed_spec(&seed)?;
            let run = run_extension(&bijection, max_length, cap)?;
            if let Some(path) = report {
                let mut text = serde_json::to_string_pretty(&run.report())?;
                text.push('\n');
                fs::write(&path, text)?;
            }
            println!("seed: {}", bijection.label());
            println!("levels: {}", run.counts());
            println!("basis: {}", render_set(run.basis()));
        }
        Command::ExtendGroup { group, max_length } => {
            let (label, seeds) = parse_group_spec(&group)?;
            let run = run_group_extension(&seeds, max_length, cap)?;
            println!("group: {label} ({} seeds)", seeds.len());
            println!("levels: {}", run.counts());
            println!("basis: {}", render_set(run.basis()));
        }
        Command::Verify { suite, json, golden } => {
            let golden_data: Option<GoldenFile> = match &golden {
                Some(path) => {
                    let parsed: GoldenFile = serde_json::from_str(&fs::read_to_string(path)?)?;
                    if parsed.schema != 1 {
                        return Err(Failure::Usage(format!(
                            "golden schema {} is not supported",
                            parsed.schema
                        )));
                    }
                    Some(parsed)
                }
                None => None,
            };
            let report = verify::run_suite(suite.into(), golden_data.as_ref());
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for c in &report.checks {
                    if c.passed {
                        println!("[PASS] {} ({} ms)", c.name, c.millis);
                    } else {
                        println!("[FAIL] {} ({} ms)", c.name, c.millis);
                        println!("       expected: {}", c.expected);
                        println!("       actual:   {}", c.actual);
                    }
                }
                let passed = report.checks.iter().filter(|c| c.passed).count();
                println!("suite {}: {} of {} checks passed", report.suite, passed, report.checks.len());
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Golden { out } => {
            let mut text = serde_json::to_string_pretty(&verify::golden())?;
            text.push('\n');
            match out {
                Some(path) => fs::write(&path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Basis { map } => {
            let m = map_by_name(&map)?;
            println!("{}", render_set(&m.basis()));
        }
        Command::Map { map, perm } => {
            let m = map_by_name(&map)?;
            let p: Permutation = perm.parse()?;
            println!("{}", m.apply(&p)?);
        }
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct ClassFile {
    basis: Vec<String>,
}

fn read_basis_file(path: &PathBuf) -> Result<Vec<Permutation>, Failure> {
    let parsed: ClassFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    let basis: Result<Vec<Permutation>, ParseError> =
        parsed.basis.iter().map(|s| s.parse()).collect();
    Ok(basis?)
}

fn parse_seed_spec(spec: &str) -> Result<SeedBijection, Failure> {
    if let Some(rest) = spec.strip_prefix('h') {
        if let Ok(i) = rest.parse::<usize>() {
            if (1..=6).contains(&i) {
                return Ok(SeedBijection::h(i));
            }
            return Err(Failure::Usage(format!("seed names run h1 through h6, got {spec}")));
        }
    }
    let pairs: BTreeMap<String, String> = serde_json::from_str(&fs::read_to_string(spec)?)?;
    let order = r_elements();
    if pairs.len() != order.len() {
        return Err(Failure::Usage(format!(
            "a seed file maps all {} backbone elements, found {}",
            order.len(),
            pairs.len()
        )));
    }
    let index_of = |word: &str| -> Result<usize, Failure> {
        let p: Permutation = word.parse()?;
        order
            .iter()
            .position(|e| *e == p)
            .ok_or_else(|| Failure::Usage(format!("{word} is not a backbone element")))
    };
    let mut images = [0u8; 8];
    for (key, value) in &pairs {
        images[index_of(key)?] = index_of(value)? as u8;
    }
    Ok(SeedBijection::new(images)?)
}

fn parse_group_spec(spec: &str) -> Result<(String, SeedGroup), Failure> {
    if spec.eq_ignore_ascii_case("aut-r") {
        return Ok(("aut-R".to_string(), SeedGroup::aut_r()));
    }
    let mut generators = Vec::new();
    for name in spec.split(',') {
        let name = name.trim();
        let err = || Failure::Usage(format!("group specs are \"aut-R\" or seed names, got {name}"));
        let i: usize = name.strip_prefix('h').ok_or_else(err)?.parse().map_err(|_| err())?;
        if !(1..=6).contains(&i) {
            return Err(err());
        }
        generators.push(SeedBijection::h(i));
    }
    if generators.is_empty() {
        return Err(Failure::Usage("empty group spec".to_string()));
    }
    Ok((spec.to_string(), SeedGroup::generated_by(&generators)))
}

fn map_by_name(name: &str) -> Result<ClassMap, Failure> {
    ClassMap::from_name(name)
        .ok_or_else(|| Failure::Usage(format!("map names run f1 through f6, got {name}")))
}

fn render_set(perms: &[Permutation]) -> String {
    if perms.is_empty() {
        "(empty)".to_string()
    } else {
        join_perms(perms)
    }
}

fn join_perms(perms: &[Permutation]) -> String {
    perms.iter().map(Permutation::to_string).collect::<Vec<_>>().join(" ")
}
