//! Command-line front end for the cobordism formal-group-law engine.
//!
//! Subcommands: `kseries`, `alpha`, `fgl`, `cp`, `milnor`, `basis`,
//! `snumbers`, `classify`, `gamma`, `realize`, `verify`. Global flags:
//! `--trunc` (default 12), `--json`, `--seed`. Exit status 0 on success, 1 on
//! verification failure (with a machine-readable report), 2 on usage or
//! parse errors. Rationals are never rendered as floats; JSON carries them as
//! strings "a/b".

pub mod expr;
pub mod suites;

use clap::{Parser, Subcommand};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

use cobord::{
    alpha_coeff, congruent_mod_p_omega, cp_class, gamma_p, k_series, milnor_hypersurface,
    realize_class, s_numbers, Classification, Classifier, GeneratorBasis, ObstructionReport,
    OddPrime, Partition, WeightList,
};

use expr::{eval, parse_expression};
use suites::{run_suite, SUITE_NAMES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Eval(String),
    #[error(transparent)]
    Engine(#[from] cobord::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "cobord",
    about = "Exact formal-group-law calculus for complex cobordism and Z/p fixed-point theory",
    disable_help_subcommand = true
)]
struct Cli {
    /// Series truncation: powers of u up to u^T are retained.
    #[arg(long, global = true, default_value_t = 12)]
    trunc: usize,

    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the k-th power series [u]_k of the power system.
    Kseries {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Print the power-system coefficient alpha[k,n].
    Alpha {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        n: u32,
    },
    /// Print the coefficients of the universal formal group law.
    Fgl,
    /// Print the projective-space class CP[n] = (n+1)*b[n].
    Cp {
        #[arg(long)]
        n: u32,
    },
    /// Print the Milnor hypersurface class H[m,n].
    Milnor {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Print the generator basis for the p-local cobordism ring.
    Basis {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
    /// Print the characteristic numbers s_w of a class expression.
    Snumbers {
        #[arg(long)]
        expr: String,
    },
    /// Decide whether a class contains a manifold with a simple Z/p-action.
    Classify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        expr: String,
    },
    /// Evaluate the realization map gamma_p on a weight list.
    Gamma {
        #[arg(long)]
        p: u32,
        /// Comma-separated weights, e.g. "1,2".
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Realize fixed-point data from a JSON file as a mod-p cobordism class.
    Realize {
        #[arg(long)]
        p: u32,
        #[arg(long = "fixed-data")]
        fixed_data: PathBuf,
        /// Also classify the realized class and check the expected_class
        /// congruence if the file provides one.
        #[arg(long)]
        check: bool,
    },
    /// Run a built-in verification suite.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        suite: String,
    },
}

pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Run one command (argv without the program name) and collect its output.
pub fn run_command<I, S>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut argv = vec!["cobord".to_string()];
    argv.extend(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text; --help and --version are
            // not failures
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutput {
                        status: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => CommandOutput {
                    status: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(output) => output,
        Err(err) => CommandOutput {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn odd_prime(p: u32) -> Result<OddPrime, CliError> {
    OddPrime::new(p).map_err(CliError::Engine)
}

fn dispatch(cli: &Cli) -> Result<CommandOutput, CliError> {
    let trunc = cli.trunc;
    if !(2..=16).contains(&trunc) {
        return Err(CliError::Usage(
            "--trunc must be between 2 and 16".to_string(),
        ));
    }
    match &cli.command {
        Command::Kseries { k } => kseries_cmd(*k, trunc, cli.json),
        Command::Alpha { k, n } => alpha_cmd(*k, *n, trunc, cli.json),
        Command::Fgl => fgl_cmd(trunc, cli.json),
        Command::Cp { n } => cp_cmd(*n, cli.json),
        Command::Milnor { m, n } => milnor_cmd(*m, *n, trunc, cli.json),
        Command::Basis { p, n } => basis_cmd(odd_prime(*p)?, *n, trunc, cli.json),
        Command::Snumbers { expr } => snumbers_cmd(expr, trunc, cli.json),
        Command::Classify { p, expr } => classify_cmd(odd_prime(*p)?, expr, trunc, cli.json),
        Command::Gamma { p, weights } => gamma_cmd(odd_prime(*p)?, weights, trunc, cli.json),
        Command::Realize {
            p,
            fixed_data,
            check,
        } => realize_cmd(odd_prime(*p)?, fixed_data, *check, trunc, cli.json),
        Command::Verify { p, suite } => {
            verify_cmd(odd_prime(*p)?, suite, trunc, cli.seed, cli.json)
        }
    }
}

// ---------------------------------------------------------------------------
// JSON shapes
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SeriesJson {
    k: i64,
    trunc: usize,
    coefficients: Vec<PowerCoeffJson>,
}

#[derive(Serialize)]
struct PowerCoeffJson {
    power: usize,
    element: String,
}

#[derive(Serialize)]
struct ElementJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    degree: u32,
    element: &'a str,
}

#[derive(Serialize)]
struct FglCoeffJson {
    i: usize,
    j: usize,
    element: String,
}

#[derive(Serialize)]
struct BasisEntryJson {
    degree: u32,
    provenance: &'static str,
    element: String,
}

#[derive(Serialize)]
struct SNumberJson {
    partition: Vec<u32>,
    s_number: String,
}

#[derive(Serialize)]
struct SNumbersJson {
    expr: String,
    degree: u32,
    s_numbers: Vec<SNumberJson>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessJson {
    Charnum {
        partition: Vec<u32>,
        s_number: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        residue_mod_p: Option<u32>,
    },
    Omega {
        partition: Vec<u32>,
        coefficient: String,
        valuation: i64,
    },
}

#[derive(Serialize)]
struct ClassifyJson {
    p: u32,
    degree: u32,
    in_omega_p: bool,
    realizable: bool,
    classification: String,
    witnesses: Vec<WitnessJson>,
}

#[derive(Serialize)]
struct GammaJson {
    p: u32,
    weights: Vec<u32>,
    degree: u32,
    element: String,
}

#[derive(Serialize)]
struct RealizeJson {
    p: u32,
    dimension: u32,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<RealizeCheckJson>,
}

#[derive(Serialize)]
struct RealizeCheckJson {
    report: ClassifyJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    congruent_to_expected: Option<bool>,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    suite: &'a str,
    p: u32,
    trunc: usize,
    seed: u64,
    passed: bool,
    cases: usize,
    failures: Vec<FailureJson>,
}

#[derive(Serialize)]
struct FailureJson {
    case: String,
    expected: String,
    actual: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

fn partition_vec(omega: &Partition) -> Vec<u32> {
    omega.parts().to_vec()
}

fn classify_json(report: &ObstructionReport) -> ClassifyJson {
    let witnesses = match report.classification {
        Classification::NotPLocalClass => report
            .omega_witnesses
            .iter()
            .map(|w| WitnessJson::Omega {
                partition: partition_vec(&w.partition),
                coefficient: cobord::render_rational(&w.coefficient),
                valuation: w.valuation,
            })
            .collect(),
        _ => report
            .charnum_witnesses
            .iter()
            .map(|w| WitnessJson::Charnum {
                partition: partition_vec(&w.partition),
                s_number: cobord::render_rational(&w.s_number),
                residue_mod_p: w.residue_mod_p,
            })
            .collect(),
    };
    ClassifyJson {
        p: report.p,
        degree: report.degree,
        in_omega_p: report.in_omega_p,
        realizable: report.realizable,
        classification: report.classification.to_string(),
        witnesses,
    }
}

// ---------------------------------------------------------------------------
// command handlers
// ---------------------------------------------------------------------------

fn kseries_cmd(k: i64, trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    let series = k_series(k, trunc)?;
    if json {
        let coefficients = (1..=trunc)
            .filter_map(|power| {
                let c = series.coefficient(power).ok()?;
                if c.is_zero() {
                    None
                } else {
                    Some(PowerCoeffJson {
                        power,
                        element: c.render(),
                    })
                }
            })
            .collect();
        return Ok(CommandOutput::ok(to_json(&SeriesJson {
            k,
            trunc,
            coefficients,
        })));
    }
    Ok(CommandOutput::ok(format!(
        "[u]_{k} = {}\n",
        series.render()
    )))
}

fn alpha_cmd(k: i64, n: u32, trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    let element = alpha_coeff(k, n, trunc)?;
    if json {
        return Ok(CommandOutput::ok(to_json(&ElementJson {
            k: Some(k),
            m: None,
            n: Some(n),
            degree: element.degree(),
            element: &element.render(),
        })));
    }
    Ok(CommandOutput::ok(format!(
        "alpha[{k},{n}] = {}\n",
        element.render()
    )))
}

fn fgl_cmd(trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    let fgl = cobord::universal_fgl(trunc);
    let mut entries = Vec::new();
    for ((i, j), c) in fgl.terms() {
        if i >= 1 && j >= 1 && !c.is_zero() {
            entries.push(FglCoeffJson {
                i,
                j,
                element: c.render(),
            });
        }
    }
    entries.sort_by_key(|e| (e.i + e.j, e.i));
    if json {
        return Ok(CommandOutput::ok(to_json(&entries)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "F(u,v) = u + v + sum a[i,j] u^i v^j, total degree <= {trunc}"
    )
    .unwrap();
    for e in entries {
        writeln!(out, "a[{},{}] = {}", e.i, e.j, e.element).unwrap();
    }
    Ok(CommandOutput::ok(out))
}

fn cp_cmd(n: u32, json: bool) -> Result<CommandOutput, CliError> {
    let element = cp_class(n);
    if json {
        return Ok(CommandOutput::ok(to_json(&ElementJson {
            k: None,
            m: None,
            n: Some(n),
            degree: element.degree(),
            element: &element.render(),
        })));
    }
    Ok(CommandOutput::ok(format!(
        "CP[{n}] = {}\n",
        element.render()
    )))
}

fn milnor_cmd(m: u32, n: u32, trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    if m < 1 || n < 1 {
        return Err(CliError::Usage("H[m,n] needs m, n >= 1".to_string()));
    }
    let element = milnor_hypersurface(m, n, trunc)?;
    if json {
        return Ok(CommandOutput::ok(to_json(&ElementJson {
            k: None,
            m: Some(m),
            n: Some(n),
            degree: element.degree(),
            element: &element.render(),
        })));
    }
    Ok(CommandOutput::ok(format!(
        "H[{m},{n}] = {}\n",
        element.render()
    )))
}

fn basis_cmd(p: OddPrime, n_max: u32, trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    if trunc <= n_max as usize {
        return Err(CliError::Usage(format!(
            "basis to degree {n_max} needs --trunc > {n_max}"
        )));
    }
    let basis = GeneratorBasis::alpha(p, n_max, trunc)?;
    let entries: Vec<BasisEntryJson> = basis
        .generators()
        .map(|(degree, g, prov)| BasisEntryJson {
            degree,
            provenance: prov.tag(),
            element: g.render(),
        })
        .collect();
    if json {
        return Ok(CommandOutput::ok(to_json(&entries)));
    }
    let mut out = String::new();
    writeln!(
        out,
        "generators of the p-local cobordism ring, p = {p} (prime primitive root {})",
        basis.prime_primitive_root().unwrap()
    )
    .unwrap();
    for e in entries {
        writeln!(out, "g{} [{}] = {}", e.degree, e.provenance, e.element).unwrap();
    }
    Ok(CommandOutput::ok(out))
}

fn snumbers_cmd(text: &str, trunc: usize, json: bool) -> Result<CommandOutput, CliError> {
    let element = eval(&parse_expression(text)?, trunc)?;
    let degree = element.degree();
    if degree as usize + 1 > trunc {
        return Err(CliError::Usage(format!(
            "s-numbers at degree {degree} need --trunc > {degree}"
        )));
    }
    let beta = GeneratorBasis::beta(degree.max(1), trunc)?;
    let numbers = s_numbers(&element, &beta)?;
    let entries: Vec<SNumberJson> = numbers
        .iter()
        .map(|(omega, value)| SNumberJson {
            partition: partition_vec(omega),
            s_number: cobord::render_rational(value),
        })
        .collect();
    if json {
        return Ok(CommandOutput::ok(to_json(&SNumbersJson {
            expr: text.to_string(),
            degree,
            s_numbers: entries,
        })));
    }
    let mut out = String::new();
    writeln!(out, "s-numbers of {text} (degree {degree})").unwrap();
    for e in entries {
        let parts = e
            .partition
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "s[{parts}] = {}", e.s_number).unwrap();
    }
    Ok(CommandOutput::ok(out))
}

fn classify_cmd(
    p: OddPrime,
    text: &str,
    trunc: usize,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let element = eval(&parse_expression(text)?, trunc)?;
    let degree = element.degree();
    if degree == 0 {
        return Err(CliError::Usage(
            "classify needs a class of degree >= 1".to_string(),
        ));
    }
    if trunc <= degree as usize {
        return Err(CliError::Usage(format!(
            "classify at degree {degree} needs --trunc > {degree}"
        )));
    }
    let classifier = Classifier::new(p, degree, trunc)?;
    let report = classifier.classify(&element)?;
    if json {
        return Ok(CommandOutput::ok(to_json(&classify_json(&report))));
    }
    Ok(CommandOutput::ok(render_report_text(text, &report)))
}

fn render_report_text(expr: &str, report: &ObstructionReport) -> String {
    let mut out = String::new();
    writeln!(out, "{expr}: {}", report.classification).unwrap();
    writeln!(
        out,
        "  p = {}, degree = {}, p-local: {}, realizable: {}",
        report.p, report.degree, report.in_omega_p, report.realizable
    )
    .unwrap();
    for w in &report.omega_witnesses {
        writeln!(
            out,
            "  offending monomial {}: coefficient {} has valuation {}",
            w.partition,
            cobord::render_rational(&w.coefficient),
            w.valuation
        )
        .unwrap();
    }
    for w in &report.charnum_witnesses {
        writeln!(
            out,
            "  witness s{} = {}{}",
            w.partition,
            cobord::render_rational(&w.s_number),
            match w.residue_mod_p {
                Some(r) => format!(" == {r} mod {}", report.p),
                None => String::new(),
            }
        )
        .unwrap();
    }
    for w in &report.ideal_witnesses {
        writeln!(
            out,
            "  witness r{} = {} == {} mod {}",
            w.partition,
            cobord::render_rational(&w.coefficient),
            w.residue_mod_p,
            report.p
        )
        .unwrap();
    }
    writeln!(out, "  methods: {}", report.methods.join(", ")).unwrap();
    out
}

fn gamma_cmd(
    p: OddPrime,
    weights: &str,
    trunc: usize,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let raw: Vec<i64> = weights
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad weight '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    let list = WeightList::new(p, &raw)?;
    let element = gamma_p(&list, trunc)?;
    if json {
        return Ok(CommandOutput::ok(to_json(&GammaJson {
            p: p.get(),
            weights: list.weights().to_vec(),
            degree: element.degree(),
            element: element.render(),
        })));
    }
    Ok(CommandOutput::ok(format!("{}\n", element.render())))
}

#[derive(serde::Deserialize)]
struct FixedDataFile {
    p: u32,
    dimension: u32,
    components: Vec<ComponentJson>,
    #[serde(default)]
    expected_class: Option<String>,
}

#[derive(serde::Deserialize)]
struct ComponentJson {
    class: String,
    weights: Vec<i64>,
}

fn realize_cmd(
    p: OddPrime,
    path: &PathBuf,
    check: bool,
    trunc: usize,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file: FixedDataFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        offset: 0,
        message: format!("bad fixed-data JSON: {e}"),
    })?;
    if file.p != p.get() {
        return Err(CliError::Usage(format!(
            "--p {} disagrees with the file's p = {}",
            p.get(),
            file.p
        )));
    }
    let mut components = Vec::new();
    for c in &file.components {
        components.push(cobord::FixedComponentDatum {
            component_class: eval(&parse_expression(&c.class)?, trunc)?,
            weights: WeightList::new(p, &c.weights)?,
        });
    }
    let data = cobord::SimpleActionData::new(p, file.dimension, components)?;
    let realized = realize_class(&data, trunc)?.into_class();

    let mut status = 0;
    let check_json = if check {
        if trunc <= file.dimension as usize {
            return Err(CliError::Usage(format!(
                "--check at dimension {} needs --trunc > {}",
                file.dimension, file.dimension
            )));
        }
        let classifier = Classifier::new(p, file.dimension, trunc)?;
        let report = classifier.classify(&realized)?;
        let mut congruent = None;
        if let Some(expected_text) = &file.expected_class {
            let expected = eval(&parse_expression(expected_text)?, trunc)?;
            let ok = congruent_mod_p_omega(&realized, &expected, classifier.alpha_basis())?;
            congruent = Some(ok);
            if !ok {
                status = 1;
            }
        }
        if !report.realizable {
            status = 1;
        }
        Some(RealizeCheckJson {
            report: classify_json(&report),
            expected_class: file.expected_class.clone(),
            congruent_to_expected: congruent,
        })
    } else {
        None
    };

    if json {
        let out = to_json(&RealizeJson {
            p: p.get(),
            dimension: file.dimension,
            class: realized.render(),
            check: check_json,
        });
        return Ok(CommandOutput {
            status,
            stdout: out,
            stderr: String::new(),
        });
    }
    let mut out = String::new();
    writeln!(out, "realized class (mod {p}): {}", realized.render()).unwrap();
    if let Some(cj) = &check_json {
        writeln!(out, "classification: {}", cj.report.classification).unwrap();
        if let Some(congruent) = cj.congruent_to_expected {
            writeln!(
                out,
                "congruent to expected_class: {}",
                if congruent { "yes" } else { "NO" }
            )
            .unwrap();
        }
    }
    Ok(CommandOutput {
        status,
        stdout: out,
        stderr: String::new(),
    })
}

fn verify_cmd(
    p: OddPrime,
    suite: &str,
    trunc: usize,
    seed: u64,
    json: bool,
) -> Result<CommandOutput, CliError> {
    if !SUITE_NAMES.contains(&suite) {
        return Err(CliError::Usage(format!(
            "unknown suite '{suite}'; available: {}",
            SUITE_NAMES.join(", ")
        )));
    }
    let outcome = run_suite(suite, p, trunc, seed)?;
    let status = if outcome.passed { 0 } else { 1 };
    if json {
        let failures = outcome
            .failures()
            .map(|c| FailureJson {
                case: c.case.clone(),
                expected: c.expected.clone(),
                actual: c.actual.clone(),
            })
            .collect();
        let out = to_json(&VerifyJson {
            suite: &outcome.suite,
            p: outcome.p,
            trunc: outcome.trunc,
            seed: outcome.seed,
            passed: outcome.passed,
            cases: outcome.cases.len(),
            failures,
        });
        return Ok(CommandOutput {
            status,
            stdout: out,
            stderr: String::new(),
        });
    }
    let mut out = String::new();
    writeln!(
        out,
        "suite {} (p = {}, trunc = {}, seed = {})",
        outcome.suite, outcome.p, outcome.trunc, outcome.seed
    )
    .unwrap();
    for case in &outcome.cases {
        if case.pass {
            writeln!(out, "  PASS {}", case.case).unwrap();
        } else {
            writeln!(
                out,
                "  FAIL {} (expected {}, got {})",
                case.case, case.expected, case.actual
            )
            .unwrap();
        }
    }
    writeln!(
        out,
        "{}: {} cases, {}",
        outcome.suite,
        outcome.cases.len(),
        if outcome.passed {
            "all passed"
        } else {
            "FAILED"
        }
    )
    .unwrap();
    Ok(CommandOutput {
        status,
        stdout: out,
        stderr: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutput {
        run_command(args.iter().map(|s| s.to_string()))
    }

    #[test]
    fn gamma_human_output() {
        let out = run(&["gamma", "--p", "3", "--weights", "2"]);
        assert_eq!(out.status, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "(3/2)*b[1]\n");
    }

    #[test]
    fn gamma_json_output() {
        let out = run(&["gamma", "--p", "3", "--weights", "2", "--json"]);
        assert_eq!(out.status, 0);
        assert_eq!(
            out.stdout.trim(),
            r#"{"p":3,"weights":[2],"degree":1,"element":"(3/2)*b[1]"}"#
        );
    }

    #[test]
    fn classify_json_matches_schema() {
        let out = run(&["classify", "--p", "3", "--expr", "CP[4]", "--json"]);
        assert_eq!(out.status, 0, "{}", out.stderr);
        assert_eq!(
            out.stdout.trim(),
            r#"{"p":3,"degree":4,"in_omega_p":true,"realizable":false,"classification":"NotRealizable","witnesses":[{"partition":[4],"s_number":"-5","residue_mod_p":1}]}"#
        );
    }

    #[test]
    fn classify_not_p_local() {
        let out = run(&["classify", "--p", "3", "--expr", "(1/3)*CP[2]", "--json"]);
        assert_eq!(out.status, 0);
        assert!(out.stdout.contains(r#""classification":"NotPLocalClass""#));
        assert!(out.stdout.contains(r#""valuation":-1"#));
    }

    #[test]
    fn alpha_command() {
        let out = run(&["alpha", "--k", "3", "--n", "2"]);
        assert_eq!(out.status, 0);
        assert_eq!(out.stdout, "alpha[3,2] = -24*b[2] + 36*b[1]^2\n");
    }

    #[test]
    fn kseries_command() {
        let out = run(&["kseries", "--k", "3", "--trunc", "4"]);
        assert_eq!(out.status, 0);
        assert!(out.stdout.starts_with("[u]_3 = 3*u + [-6*b[1]]*u^2"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["classify", "--p", "4", "--expr", "CP[1]"]).status, 2);
        assert_eq!(
            run(&["classify", "--p", "3", "--expr", "CP[1] +"]).status,
            2
        );
        assert_eq!(run(&["nonsense"]).status, 2);
        assert_eq!(
            run(&["classify", "--p", "3", "--expr", "CP[1] + CP[2]"]).status,
            2
        );
        assert_eq!(run(&["verify", "--p", "3", "--suite", "bogus"]).status, 2);
        assert_eq!(run(&["gamma", "--p", "3", "--weights", "3"]).status, 2);
        assert_eq!(run(&["classify", "--p", "3", "--expr", "CP[13]"]).status, 2);
        assert_eq!(run(&["classify", "--p", "3", "--expr", "7"]).status, 2);
    }

    #[test]
    fn basis_json_shape() {
        let out = run(&["basis", "--p", "3", "--n", "4", "--json"]);
        assert_eq!(out.status, 0);
        let parsed: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        let entries = parsed.as_array().unwrap();
        assert_eq!(entries.len(), 4);
        assert_eq!(entries[0]["degree"], 1);
        assert_eq!(entries[0]["provenance"], "alpha-p1");
        assert_eq!(entries[0]["element"], "-2*b[1]");
        assert_eq!(entries[1]["provenance"], "alpha-p");
        assert_eq!(entries[3]["provenance"], "filler");
        assert_eq!(entries[3]["element"], "5*b[4]");
    }

    #[test]
    fn snumbers_of_cp4() {
        let out = run(&["snumbers", "--expr", "CP[4]", "--json"]);
        assert_eq!(out.status, 0);
        let parsed: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        let numbers = parsed["s_numbers"].as_array().unwrap();
        assert_eq!(numbers[0]["partition"], serde_json::json!([4]));
        assert_eq!(numbers[0]["s_number"], "-5");
        assert_eq!(numbers.len(), 5);
    }

    #[test]
    fn verify_roundtrip_passes() {
        let out = run(&["verify", "--p", "3", "--suite", "roundtrip"]);
        assert_eq!(out.status, 0, "{}", out.stdout);
        assert!(out.stdout.contains("all passed"));
    }

    #[test]
    fn deterministic_outputs() {
        let a = run(&[
            "verify",
            "--p",
            "3",
            "--suite",
            "strict-simple",
            "--seed",
            "7",
            "--json",
        ]);
        let b = run(&[
            "verify",
            "--p",
            "3",
            "--suite",
            "strict-simple",
            "--seed",
            "7",
            "--json",
        ]);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status, 0);
    }
}
