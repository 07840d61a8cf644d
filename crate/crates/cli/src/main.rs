use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cherednik_core::exponents::{self, ExponentPoly, Rep};
use cherednik_core::orbitcomb::{self, JComponent};
use cherednik_core::verify::{self, Suite};
use cherednik_core::{oracle, weyl};
use cherednik_core::{Budget, Error, Family, Kernel, LatticeVector, RootSystem, Source, Strategy};

#[derive(Parser, Debug)]
#[command(
    name = "cherednik",
    version,
    about = "Cherednik kernel coefficients and generalized exponents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Root system family (A..G).
    #[arg(long = "type", value_name = "A..G")]
    family: Family,
    #[arg(long)]
    rank: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Largest r·(λ₊, λ₊) the solver may touch.
    #[arg(long, value_name = "NORM")]
    budget: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, heights, θ, θ_s, θ_ℓ, J components and classical exponents.
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Orbit of λ with lengths and defect statistics.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Simple-root coordinates, e.g. 1,2,1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: LatticeVector,
    },
    /// The coefficient c_λ(q, t).
    Coeff {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: LatticeVector,
        #[arg(long, default_value = "auto", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Specialize to q = 0.
        #[arg(long)]
        q0: bool,
    },
    /// Generalized exponents E(V_λ).
    Exponents {
        #[command(flatten)]
        common: Common,
        /// theta | theta_s | pair:<k> | lambda:<coords>
        #[arg(long, value_parser = parse_rep)]
        rep: Rep,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Per-type closed tables for the pair representations.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "small", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    /// Dual partition for roots and pair sums, coefficient sum otherwise.
    Auto,
    /// Dual partition of the height histogram.
    Dual,
    /// Sum of q = 0 coefficients over the weights.
    Scalar,
    /// Alternating sum over the Weyl group.
    Oracle,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rep(s: &str) -> Result<Rep, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            Error::Verification(_) | Error::DegenerateClosing(_) | Error::NonPolynomial(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

fn system(common: &Common) -> Result<RootSystem, Failure> {
    Ok(RootSystem::new(common.family, common.rank)?)
}

fn budget(common: &Common) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = common.budget {
        b.max_norm = n;
    }
    b
}

fn check_budget(rs: &RootSystem, common: &Common, v: &LatticeVector) -> Result<(), Failure> {
    let (plus, _) = weyl::dominant_rep(rs, v);
    let norm = rs.scaled_pairing(&plus, &plus);
    let max = budget(common).max_norm;
    if norm > max {
        return Err(
            Error::BudgetExceeded(format!("orbit of {plus} has norm {norm} > {max}")).into(),
        );
    }
    Ok(())
}

fn system_json(rs: &RootSystem) -> Value {
    let spec = rs.spec();
    json!({ "type": spec.family.letter().to_string(), "rank": spec.rank })
}

fn one_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|i| i + 1).collect()
}

fn info(common: &Common) -> Result<Output, Failure> {
    let rs = system(common)?;
    let exps = rs.classical_exponents();
    let mut text = String::new();
    writeln!(text, "root system {}", rs.spec()).unwrap();
    writeln!(text, "positive roots: {}", rs.num_positive_roots()).unwrap();
    let mut roots = Vec::new();
    for a in rs.positive_roots() {
        let short = rs.is_short_root(a).unwrap_or(false);
        let kind = if rs.is_simply_laced() {
            ""
        } else if short {
            " short"
        } else {
            " long"
        };
        writeln!(text, "  {a} height {}{kind}", a.height()).unwrap();
        roots.push(json!({ "root": a, "height": a.height(), "short": short }));
    }
    let hist: Vec<String> = rs
        .height_histogram()
        .iter()
        .map(|(h, n)| format!("{h}:{n}"))
        .collect();
    writeln!(text, "roots by height: {}", hist.join(" ")).unwrap();
    writeln!(
        text,
        "theta: {} (height {})",
        rs.theta(),
        rs.theta().height()
    )
    .unwrap();
    writeln!(
        text,
        "theta_s: {} (height {})",
        rs.theta_s(),
        rs.theta_s().height()
    )
    .unwrap();
    match rs.theta_l() {
        Some(tl) => writeln!(text, "theta_l: {tl}").unwrap(),
        None => writeln!(text, "theta_l: none").unwrap(),
    }
    let exp_str: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
    writeln!(text, "classical exponents: {}", exp_str.join(" ")).unwrap();

    let comps = orbitcomb::j_components(&rs);
    let pairs = orbitcomb::pair_components(&rs);
    writeln!(text, "J components: {}", comps.len()).unwrap();
    let mut comps_json = Vec::new();
    for j in &comps {
        let pair_index = pairs.iter().position(|p| p == j).map(|i| i + 1);
        let is_exp = pair_index.map(|_| exps.contains(&(j.n_j as i32)));
        let (label, note) = match (pair_index, is_exp) {
            (Some(k), Some(e)) => (
                format!("pair:{k}"),
                format!(
                    ", n(j) is a classical exponent: {}",
                    if e { "yes" } else { "no" }
                ),
            ),
            _ => ("theta_l".to_string(), String::new()),
        };
        writeln!(
            text,
            "  {label}: nodes {:?}, theta_s,j {}, n(j) {}, sum {}{note}",
            one_based(&j.nodes),
            j.theta_sj,
            j.n_j,
            j.dominant(&rs),
        )
        .unwrap();
        comps_json.push(json!({
            "pair_index": pair_index,
            "nodes": one_based(&j.nodes),
            "theta_sj": j.theta_sj,
            "n_j": j.n_j,
            "is_theta_l": j.is_theta_l,
            "sum": j.dominant(&rs),
            "n_j_is_classical_exponent": is_exp,
        }));
    }
    let hist_json: serde_json::Map<String, Value> = rs
        .height_histogram()
        .iter()
        .map(|(h, n)| (h.to_string(), json!(n)))
        .collect();
    let json = json!({
        "num_positive_roots": rs.num_positive_roots(),
        "positive_roots": roots,
        "height_histogram": hist_json,
        "theta": rs.theta(),
        "theta_s": rs.theta_s(),
        "theta_l": rs.theta_l(),
        "classical_exponents": exps,
        "components": comps_json,
    });
    Ok(Output {
        text,
        json: wrap(&rs, json),
        code: 0,
    })
}

fn wrap(rs: &RootSystem, result: Value) -> Value {
    json!({ "root_system": system_json(rs), "result": result })
}

fn orbit(common: &Common, lambda: &LatticeVector) -> Result<Output, Failure> {
    let rs = system(common)?;
    rs.check_rank(lambda)?;
    check_budget(&rs, common, lambda)?;
    let (plus, _) = weyl::dominant_rep(&rs, lambda);
    let orbit = weyl::orbit_bounded(&rs, &plus, budget(common).max_orbit)?;
    let mut text = String::new();
    writeln!(text, "orbit of {plus}: {} elements", orbit.len()).unwrap();
    writeln!(
        text,
        "{:<24} {:>4} {:>4} {:>4} {:>4} {:>4}",
        "vector", "ht", "len", "D", "D_s", "D_l"
    )
    .unwrap();
    let mut rows = Vec::new();
    for e in orbit.elements() {
        let st = orbitcomb::d_stats(&rs, &orbit, &e.vector)?;
        writeln!(
            text,
            "{:<24} {:>4} {:>4} {:>4} {:>4} {:>4}",
            e.vector.to_string(),
            e.vector.height(),
            e.length,
            st.d_total,
            st.d_short,
            st.d_long
        )
        .unwrap();
        rows.push(json!({
            "vector": e.vector,
            "height": e.vector.height(),
            "length": e.length,
            "d": st.d_total,
            "d_s": st.d_short,
            "d_l": st.d_long,
        }));
    }
    let json = json!({ "dominant": plus, "size": orbit.len(), "elements": rows });
    Ok(Output {
        text,
        json: wrap(&rs, json),
        code: 0,
    })
}

fn coeff(
    common: &Common,
    lambda: &LatticeVector,
    strategy: Strategy,
    q0: bool,
) -> Result<Output, Failure> {
    let rs = system(common)?;
    rs.check_rank(lambda)?;
    if strategy != Strategy::Closed {
        check_budget(&rs, common, lambda)?;
    }
    let mut kernel = Kernel::with_budget(&rs, budget(common));
    let c = kernel.coeff(lambda, strategy)?;
    let source = match strategy {
        Strategy::Solver => Source::Solver,
        Strategy::Closed => Source::ClosedForm,
        Strategy::Auto => kernel.table().source(lambda).unwrap_or(Source::Solver),
    };
    let value = if q0 {
        c.subst_q0()?.to_string()
    } else {
        c.to_string()
    };
    let json = json!({
        "lambda": lambda,
        "strategy": strategy,
        "source": source,
        "q0": q0,
        "value": value,
    });
    Ok(Output {
        text: format!("{value}\n"),
        json: wrap(&rs, json),
        code: 0,
    })
}

fn exponents_cmd(common: &Common, rep: &Rep, method: Method) -> Result<Output, Failure> {
    let rs = system(common)?;
    let (lambda, j) = rep.resolve(&rs)?;
    let has_histogram = j.is_some() || rs.is_root(&lambda);
    let method = match method {
        Method::Auto if has_histogram => Method::Dual,
        Method::Auto => Method::Scalar,
        m => m,
    };
    let poly: ExponentPoly = match method {
        Method::Dual => exponents::exponents_dual_partition(&rs, &lambda, j.as_ref())?,
        Method::Scalar => {
            check_budget(&rs, common, &lambda)?;
            let mut kernel = Kernel::with_budget(&rs, budget(common));
            exponents::exponents_scalar_product(&mut kernel, &lambda)?
        }
        Method::Oracle => oracle::lusztig_e(&rs, &lambda, oracle::DEFAULT_WEYL_LIMIT)?,
        Method::Auto => unreachable!(),
    };
    let method_name = match method {
        Method::Dual => "dual",
        Method::Scalar => "scalar",
        _ => "oracle",
    };
    let json = json!({
        "highest_weight": lambda,
        "method": method_name,
        "exponents": poly,
        "dimension_of_zero_weight_space": poly.num_terms(),
        "string": poly.to_string(),
    });
    Ok(Output {
        text: format!("{poly}\n"),
        json: wrap(&rs, json),
        code: 0,
    })
}

fn table(common: &Common) -> Result<Output, Failure> {
    let rs = system(common)?;
    let comps: Vec<JComponent> = orbitcomb::pair_components(&rs);
    if comps.is_empty() {
        return Err(Error::Unsupported(format!("{} has no pair components", rs.spec())).into());
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, j) in comps.iter().enumerate() {
        let poly = exponents::pair_table(&rs, j)?;
        writeln!(text, "pair:{} n(j) {}: {poly}", i + 1, j.n_j).unwrap();
        rows.push(json!({
            "rep": format!("pair:{}", i + 1),
            "n_j": j.n_j,
            "highest_weight": j.dominant(&rs),
            "exponents": poly,
            "string": poly.to_string(),
        }));
    }
    Ok(Output {
        text,
        json: wrap(&rs, json!({ "tables": rows })),
        code: 0,
    })
}

fn verify_cmd(suite: Suite) -> Output {
    let results = verify::run_suite(suite);
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{r}").unwrap();
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let budget_only = failed > 0 && results.iter().all(|r| r.passed || r.budget);
    writeln!(text, "{} passed, {failed} failed", results.len() - failed).unwrap();
    let code = match (failed, budget_only) {
        (0, _) => 0,
        (_, true) => 3,
        _ => 1,
    };
    let json = json!({
        "root_system": Value::Null,
        "result": {
            "suite": suite,
            "checks": results,
            "passed": results.len() - failed,
            "failed": failed,
        },
    });
    Output { text, json, code }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_mode, result) = match &cli.command {
        Command::Info { common } => (common.json, info(common)),
        Command::Orbit { common, lambda } => (common.json, orbit(common, lambda)),
        Command::Coeff {
            common,
            lambda,
            strategy,
            q0,
        } => (common.json, coeff(common, lambda, *strategy, *q0)),
        Command::Exponents {
            common,
            rep,
            method,
        } => (common.json, exponents_cmd(common, rep, *method)),
        Command::Table { common } => (common.json, table(common)),
        Command::Verify { suite, json } => (*json, Ok(verify_cmd(*suite))),
    };
    match result {
        Ok(out) => {
            if json_mode {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
