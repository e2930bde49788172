//! `stringy`: command-line front end for surface germs and abstract
//! stratified resolution data.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a
//! parse error.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use report::Format;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use stringy_core::mmp::MmpError;
use stringy_core::sample;
use stringy_core::stratified::{
    blowup_transform, duality_check, hyperplane_oracle, zeta_abstract, AbstractError, BlowupCenter, Classes,
    StratifiedResolution,
};
use stringy_core::stringy::{
    batyrev_expression, compare_d_limit, default_model, eval_or_limit_checked, veys_invariants, zeta, Level, StringyError, ZetaValue,
};
use stringy_core::surface::{BlowUpSite, ResolutionGraph, SurfaceError};
use stringy_core::symbolic::{parse_rational, ratfn_equal, Rational};

#[derive(Parser)]
#[command(name = "stringy", version, about = "Stringy zeta functions of surface germs and stratified resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Motivic,
    Hodge,
    Euler,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Motivic => Level::Motivic,
            LevelArg::Hodge => Level::Hodge,
            LevelArg::Euler => Level::Euler,
        }
    }
}

fn parse_d(s: &str) -> Result<Rational, String> {
    let d = parse_rational(s).map_err(|_| format!("`{s}` is not a rational p/q"))?;
    if d < Rational::from_integer(0.into()) || d > Rational::from_integer(1.into()) {
        return Err(format!("d = {s} is outside [0, 1]"));
    }
    Ok(d)
}

#[derive(Subcommand)]
enum Command {
    /// Log discrepancies of the curves and branches of a germ.
    Discrepancies(Input),
    /// klt, strictly-lc or not-lc.
    Classify(Input),
    /// The model used for the zeta function at `d`, with its (ν, N, a) table.
    Model {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_d)]
        d: Rational,
    },
    /// The stringy zeta function of a germ or of abstract data.
    Zeta {
        #[command(flatten)]
        input: Input,
        /// Germs only; defaults to 1.
        #[arg(long, value_parser = parse_d)]
        d: Option<Rational>,
        #[arg(long, value_enum)]
        level: LevelArg,
        /// Report the value or limit at s = 1 instead of the function.
        #[arg(long)]
        eval_s1: bool,
    },
    /// The stringy invariants E(X) and e(X) of a non-lc germ.
    Veys(Input),
    /// Batyrev's expression built from the log discrepancies.
    Batyrev {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "motivic")]
        level: LevelArg,
    },
    /// The Hodge-level functional equation of complete abstract data.
    CheckDuality(Input),
    /// Zeta invariance under random blow-ups.
    CheckBlowup {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The hyperplane-arrangement identity for m general hyperplanes in P^(r-1).
    OracleAm {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compares lim_{d -> 1-} z_d(s) with z(s) at d = 1 on the Euler level.
    CompareDLimit(Input),
}

#[derive(clap::Args)]
struct Input {
    path: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum CliError {
    Parse(String),
    Domain(String),
    CheckFailed(String),
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::Parse(_) | SurfaceError::InvalidGraph(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<AbstractError> for CliError {
    fn from(e: AbstractError) -> Self {
        match e {
            AbstractError::InvalidData(_) => CliError::Parse(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<StringyError> for CliError {
    fn from(e: StringyError) -> Self {
        match e {
            StringyError::Surface(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<MmpError> for CliError {
    fn from(e: MmpError) -> Self {
        CliError::Domain(e.to_string())
    }
}

enum Loaded {
    Germ(ResolutionGraph),
    Abstract(StratifiedResolution),
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    if value.get("dimension").is_some() {
        Ok(Loaded::Abstract(StratifiedResolution::from_json(&text)?))
    } else {
        Ok(Loaded::Germ(ResolutionGraph::from_json(&text)?))
    }
}

fn load_germ(path: &Path) -> Result<ResolutionGraph, CliError> {
    match load(path)? {
        Loaded::Germ(g) => Ok(g),
        Loaded::Abstract(_) => Err(CliError::Parse(format!("{}: expected a germ, found abstract data", path.display()))),
    }
}

fn load_abstract(path: &Path) -> Result<StratifiedResolution, CliError> {
    match load(path)? {
        Loaded::Abstract(a) => Ok(a),
        Loaded::Germ(_) => Err(CliError::Parse(format!("{}: expected abstract data, found a germ", path.display()))),
    }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Discrepancies(input) => {
            let g = load_germ(&input.path)?;
            Ok(report::discrepancies(&g).render(input.format))
        }
        Command::Classify(input) => {
            let g = load_germ(&input.path)?;
            Ok(report::classification(&g).render(input.format))
        }
        Command::Model { input, d } => {
            let g = load_germ(&input.path)?;
            let model = default_model(&g, &d)?;
            let table = model.nu_n()?.rows;
            Ok(report::model(&g, &d, &model.contracted_ids(), &table).render(input.format))
        }
        Command::Zeta { input, d, level, eval_s1 } => {
            let level = Level::from(level);
            let (z, checked) = match load(&input.path)? {
                Loaded::Germ(g) => {
                    let d = d.unwrap_or_else(one);
                    let z = zeta(&g, &d, level)?;
                    let at1 = if eval_s1 { Some(eval_or_limit_checked(&z, &g)?) } else { None };
                    (z, at1)
                }
                Loaded::Abstract(a) => {
                    if d.is_some() {
                        return Err(CliError::Parse("--d does not apply to abstract data".into()));
                    }
                    let z = zeta_abstract(&a, level)?;
                    let at1 = eval_s1.then(|| z.eval_or_limit_at_1());
                    (z, at1)
                }
            };
            Ok(match checked {
                Some(at1) => report::eval_at_one(&z, &at1).render(input.format),
                None => report::zeta(&z).render(input.format),
            })
        }
        Command::Veys(input) => {
            let g = load_germ(&input.path)?;
            let inv = veys_invariants(&g)?;
            Ok(report::veys(&g, &inv).render(input.format))
        }
        Command::Batyrev { input, level } => {
            let g = load_germ(&input.path)?;
            let v = batyrev_expression(&g, level.into())?;
            Ok(report::batyrev(&g, &v).render(input.format))
        }
        Command::CheckDuality(input) => {
            let a = load_abstract(&input.path)?;
            let r = duality_check(&a)?;
            let out = report::duality(&a, &r).render(input.format);
            if r.holds && r.closed_form_agrees {
                Ok(out)
            } else {
                Err(CliError::CheckFailed(out))
            }
        }
        Command::CheckBlowup { input, trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let results = match load(&input.path)? {
                Loaded::Germ(g) => (0..trials).map(|_| germ_blowup_trial(&g, &mut rng)).collect::<Vec<_>>(),
                Loaded::Abstract(a) => (0..trials).map(|t| abstract_blowup_trial(&a, t, &mut rng)).collect(),
            };
            let doc = report::trials("blow-up invariance", &results);
            let out = doc.render(input.format);
            if results.iter().all(|r| r.passed) {
                Ok(out)
            } else {
                Err(CliError::CheckFailed(out))
            }
        }
        Command::OracleAm { r, m, trials, seed, format } => {
            if r < 2 || m > r {
                return Err(CliError::Parse(format!("need r >= 2 and m <= r, got r = {r}, m = {m}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rows = Vec::new();
            for _ in 0..trials {
                let (k, dw) = sample::random_oracle_params(&mut rng, m);
                let rep = hyperplane_oracle(r, &k, &dw)?;
                rows.push((k, dw, rep));
            }
            let out = report::oracle(r, m, &rows).render(format);
            if rows.iter().all(|(_, _, rep)| rep.equal) {
                Ok(out)
            } else {
                Err(CliError::CheckFailed(out))
            }
        }
        Command::CompareDLimit(input) => {
            let g = load_germ(&input.path)?;
            let c = compare_d_limit(&g)?;
            Ok(report::d_limit(&g, &c).render(input.format))
        }
    }
}

pub struct Trial {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

fn same_value(a: &ZetaValue, b: &ZetaValue) -> bool {
    match (a, b) {
        (ZetaValue::Expr(x), ZetaValue::Expr(y)) => ratfn_equal(x, y),
        (x, y) => x == y,
    }
}

fn site_label(site: &BlowUpSite) -> String {
    match site {
        BlowUpSite::Interior(id) => format!("point of {id}"),
        BlowUpSite::Edge(a, b, k) => format!("point {k} of {a}∩{b}"),
        BlowUpSite::Branch(id) => format!("point of branch {id}"),
    }
}

/// Blows up a random point, compares the zeta functions on all levels and
/// the new divisor's (ν, N) with the abstract blow-up transformation.
fn germ_blowup_trial(g: &ResolutionGraph, rng: &mut ChaCha8Rng) -> Trial {
    let site = sample::random_site(rng, g);
    let d = sample::random_d(rng);
    let label = format!("{} at d = {}", site_label(&site), stringy_core::symbolic::format_rational(&d));
    let h = match g.blow_up(&site) {
        Ok(h) => h,
        Err(e) => return Trial { label, passed: false, detail: e.to_string() },
    };
    let fail = |detail: String| Trial { label: label.clone(), passed: false, detail };
    for level in Level::ALL {
        match (zeta(g, &d, level), zeta(&h, &d, level)) {
            (Ok(a), Ok(b)) if same_value(&a.value, &b.value) => {}
            (Ok(_), Ok(_)) => return fail(format!("{level} zeta changed")),
            (Err(a), Err(b)) if a.name() == b.name() => return Trial { label, passed: true, detail: a.name() },
            (a, b) => return fail(format!("{level}: {:?} vs {:?}", a.err().map(|e| e.name()), b.err().map(|e| e.name()))),
        }
    }
    let cross = (|| -> Result<bool, String> {
        let model = default_model(g, &d).map_err(|e| e.to_string())?;
        let data = StratifiedResolution::from_model(&model).map_err(|e| e.to_string())?;
        let (containing, piece) = match &site {
            BlowUpSite::Interior(id) => (vec![id.clone()], vec![id.clone()]),
            BlowUpSite::Edge(a, b, _) => (vec![a.clone(), b.clone()], vec![a.clone(), b.clone()]),
            BlowUpSite::Branch(id) => {
                let at = &g.vertices()[g.branches()[g.branch_index(id).expect("site of g")].attach].id;
                (vec![at.clone(), id.clone()], vec![at.clone(), id.clone()])
            }
        };
        let center = BlowupCenter { new_id: "F".into(), containing, codim: 2, pieces: vec![(piece, Classes::point())], total: None };
        let after = blowup_transform(&data, &center).map_err(|e| e.to_string())?;
        let f = after.divisors.last().expect("new divisor");
        let hm = default_model(&h, &d).map_err(|e| e.to_string())?;
        let row = hm.nu_n().map_err(|e| e.to_string())?.rows[h.len() - 1].clone();
        Ok(row.nu == f.nu && row.n == f.n)
    })();
    match cross {
        Ok(true) => Trial { label, passed: true, detail: "all levels agree".into() },
        Ok(false) => fail("new divisor (ν, N) differs from the abstract transformation".into()),
        Err(e) => fail(e),
    }
}

fn abstract_blowup_trial(a: &StratifiedResolution, t: u32, rng: &mut ChaCha8Rng) -> Trial {
    let Some(center) = sample::random_center(rng, a, &format!("F{t}")) else {
        return Trial { label: format!("trial {t}"), passed: true, detail: "no admissible center".into() };
    };
    let label = format!("center in {{{}}}, codimension {}", center.containing.join(","), center.codim);
    let after = match blowup_transform(a, &center) {
        Ok(x) => x,
        Err(e) => return Trial { label, passed: false, detail: e.to_string() },
    };
    for level in Level::ALL {
        match (zeta_abstract(a, level), zeta_abstract(&after, level)) {
            (Ok(x), Ok(y)) if same_value(&x.value, &y.value) => {}
            (Ok(_), Ok(_)) => return Trial { label, passed: false, detail: format!("{level} zeta changed") },
            (Err(AbstractError::MissingLevel(..)), Err(AbstractError::MissingLevel(..))) => {}
            (x, y) => {
                return Trial {
                    label,
                    passed: false,
                    detail: format!("{level}: {:?} vs {:?}", x.err(), y.err()),
                }
            }
        }
    }
    Trial { label, passed: true, detail: "all levels agree".into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::CheckFailed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
