use std::io::Write;
use std::process::ExitCode;

use arcfact_cli::{exit_code, input, repro, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use arcfact_core::digraph::{s_arc_criterion, s_arcs_direct, vertex_primitivity, CosetDigraph};
use arcfact_core::factor::{homogeneous_search, is_factorization, SearchMode};
use arcfact_core::numtheory::{factorial_p_part, p_part_u64, ppd};
use arcfact_core::perm::is_primitive;
use arcfact_core::spec::{parse_group_spec, print_group_spec};
use arcfact_core::{Bounds, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arcfact", version, about = "Group factorizations and s-arc-transitive coset digraphs")]
struct Cli {
    /// Print JSON instead of a human-readable summary.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_name = "N")]
    bound_elements: Option<u64>,
    /// Largest group order for which subgroup lattices are enumerated.
    #[arg(long, global = true, value_name = "N")]
    bound_subgroups: Option<u64>,
    #[arg(long, global = true, value_name = "N")]
    bound_points: Option<u64>,
    /// Seed for randomized stabilizer chains; results do not depend on it.
    #[arg(long, global = true, default_value_t = arcfact_core::perm::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, env = "ARCFACT_BOUNDS_PROFILE", default_value = "desk")]
    profile: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive prime divisors of a^m - 1.
    Ppd { a: u64, m: u64 },
    /// The p-part of n, or of n! with --factorial.
    Ppart {
        n: u64,
        p: u64,
        #[arg(long)]
        factorial: bool,
    },
    /// Order, degree and orbit data of a group.
    Group { spec: String },
    /// Decide G = HK.
    Fact {
        #[arg(long)]
        group: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        cross_check: bool,
    },
    /// Homogeneous factorizations Gv = AB.
    Homfact {
        #[arg(long, alias = "group")]
        gv: String,
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long, value_parser = parse_mode)]
        mode: SearchMode,
        #[arg(long, default_value_t = 2)]
        min_index: u64,
    },
    /// s-arc-transitivity of the coset digraph Cos(G, H, g).
    Digraph {
        #[arg(long)]
        group: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "s=2")]
        check: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Run the built-in reproduction cases (optionally a glob of case ids).
    Repro { filter: Option<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Criterion,
    Both,
}

fn parse_mode(s: &str) -> std::result::Result<SearchMode, String> {
    s.parse().map_err(|e: arcfact_core::Error| e.to_string())
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if as_json {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            if as_json {
                let _ = writeln!(std::io::stdout(), "{}", json!({"error": e.to_string(), "kind": error_kind(&e)}));
            }
            eprintln!("arcfact: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn error_kind(e: &arcfact_core::Error) -> &'static str {
    match exit_code(e) {
        arcfact_cli::EXIT_LIMIT => "resource-limit",
        EXIT_FAIL => "internal",
        _ => "usage",
    }
}

fn run(cli: Cli) -> Result<Output> {
    let bounds = input::resolve_bounds(&cli.profile, cli.bound_elements, cli.bound_subgroups, cli.bound_points)?;
    let seed = cli.seed;
    match cli.command {
        Command::Ppd { a, m } => {
            let r = ppd(a, m)?;
            let primes: Vec<String> = r.primes.iter().map(|p| p.to_string()).collect();
            let text = format!(
                "ppd({a},{m}) = {{{}}}{}\n",
                primes.join(", "),
                if r.exceptional { "  (exceptional)" } else { "" }
            );
            Ok(Output { json: serde_json::to_value(&r).expect("serializable"), text, code: EXIT_PASS })
        }
        Command::Ppart { n, p, factorial } => {
            if factorial {
                let r = factorial_p_part(n, p)?;
                let text = format!(
                    "({n}!)_{p} = {p}^{} = {}\nbound ((n!)_p)^(p-1) < p^n: {}\n",
                    r.exponent, r.value, r.bound_holds
                );
                Ok(Output { json: serde_json::to_value(&r).expect("serializable"), text, code: EXIT_PASS })
            } else {
                let v = p_part_u64(n, p)?;
                Ok(Output {
                    json: json!({"n": n, "p": p, "value": v.to_string()}),
                    text: format!("({n})_{p} = {v}\n"),
                    code: EXIT_PASS,
                })
            }
        }
        Command::Group { spec } => {
            let parsed = parse_group_spec(&spec)?;
            let g = parsed.build(&bounds, seed)?;
            let primitive = g.is_transitive() && is_primitive(&g)?.primitive;
            let json = json!({
                "spec": print_group_spec(&parsed),
                "order": g.order().to_string(),
                "degree": g.degree(),
                "generators": g.generator_strings(),
                "transitive": g.is_transitive(),
                "primitive": primitive,
                "orbit_lengths": g.orbit_lengths(),
            });
            let text = format!(
                "{}\norder {}\ndegree {}\ngenerators {}\ntransitive {}  primitive {}\norbit lengths {:?}\n",
                print_group_spec(&parsed),
                g.order(),
                g.degree(),
                g.generator_strings().join(" "),
                g.is_transitive(),
                primitive,
                g.orbit_lengths()
            );
            Ok(Output { json, text, code: EXIT_PASS })
        }
        Command::Fact { group, h, k, cross_check } => {
            let g = input::group(&group, &bounds, seed)?;
            let h = input::subgroup(&g, &h, &bounds, seed)?;
            let k = input::subgroup(&g, &k, &bounds, seed)?;
            let cert = is_factorization(&g, &h, &k, cross_check, &bounds)?;
            let text = format!(
                "G = HK: {}\n|G| = {}  |H| = {}  |K| = {}  |H ∩ K| = {}\n",
                cert.verdict, cert.order_g, cert.order_h, cert.order_k, cert.order_intersection
            );
            Ok(Output { json: serde_json::to_value(&cert).expect("serializable"), text, code: EXIT_PASS })
        }
        Command::Homfact { gv, ambient, mode, min_index } => {
            let amb = ambient.as_deref().map(|a| input::group(a, &bounds, seed)).transpose()?;
            let gv_group = match &amb {
                Some(a) => input::subgroup(a, &gv, &bounds, seed)?.into_group(),
                None => input::group(&gv, &bounds, seed)?,
            };
            let mut report = homogeneous_search(&gv_group, amb.as_ref(), mode, min_index, &bounds)?;
            report.group = gv.clone();
            let mut text = format!(
                "{} (order {}), mode {}, min index {}: {} factorization(s)\n",
                gv,
                report.group_order,
                mode,
                min_index,
                report.pairs.len()
            );
            for p in &report.pairs {
                text.push_str(&format!(
                    "  |A| = |B| = {}  |A ∩ B| = {}  index {}\n    A = <{}>\n    B = <{}>\n",
                    p.a.order,
                    p.intersection_order,
                    p.index,
                    p.a.generators.join(", "),
                    p.b.generators.join(", ")
                ));
            }
            Ok(Output { json: serde_json::to_value(&report).expect("serializable"), text, code: EXIT_PASS })
        }
        Command::Digraph { group, h, g, check, method } => {
            let s = input::parse_check(&check)?;
            let grp = input::group(&group, &bounds, seed)?;
            let h = input::subgroup(&grp, &h, &bounds, seed)?;
            let x = input::element(&grp, &g)?;
            let d = CosetDigraph::build(&grp, &h, &x, &bounds)?;
            digraph_report(&d, s, method, &bounds)
        }
        Command::Repro { filter } => {
            let report = repro::run_repro(filter.as_deref(), &bounds, seed)?;
            let mut text = String::new();
            for c in &report.cases {
                let status = match c.status {
                    repro::Status::Pass => "PASS",
                    repro::Status::Fail => "FAIL",
                    repro::Status::ResourceLimit => "LIMIT",
                };
                text.push_str(&format!("{status:5} {:28} {:>7} ms  {}\n", c.id, c.elapsed_ms, c.description));
                if let Some(m) = &c.message {
                    text.push_str(&format!("      {m}\n"));
                }
            }
            text.push_str(&format!(
                "\n{} passed, {} failed, {} resource-limited\n\n{}\n",
                report.passed,
                report.failed,
                report.resource_limited,
                report.not_reproducible
            ));
            Ok(Output {
                code: report.exit_code(),
                json: serde_json::to_value(&report).expect("serializable"),
                text,
            })
        }
    }
}

fn digraph_report(d: &CosetDigraph, s: usize, method: Method, bounds: &Bounds) -> Result<Output> {
    let primitive = vertex_primitivity(d)?.primitive;
    let mut results = Vec::new();
    let mut text = format!(
        "{} vertices, valency {}, connected {}, vertex-primitive {}\n",
        d.vertex_count(),
        d.valency(),
        d.is_connected(),
        primitive
    );
    let mut verdicts = Vec::new();
    if method != Method::Criterion {
        let r = s_arcs_direct(d, s, bounds)?;
        text.push_str(&format!(
            "direct:    {}-arc-transitive {}  ({} arcs, arc stabilizer order {})\n",
            s, r.transitive, r.arcs, r.arc_stabilizer_order
        ));
        verdicts.push(r.transitive);
        results.push(json!({"s": s, "transitive": r.transitive, "method": "direct", "certificates": [r]}));
    }
    if method != Method::Direct {
        let r = s_arc_criterion(d, s, bounds)?;
        text.push_str(&format!("criterion: {}-arc-transitive {}", s, r.transitive));
        if let Some(l) = r.failing_level {
            text.push_str(&format!("  (fails at level {l})"));
        }
        text.push('\n');
        verdicts.push(r.transitive);
        results.push(json!({
            "s": s,
            "transitive": r.transitive,
            "method": "criterion",
            "failing_level": r.failing_level,
            "certificates": r.levels,
        }));
    }
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        return Err(arcfact_core::Error::Internal(format!(
            "s-arc verifiers disagree for s = {s}"
        )));
    }
    let json = json!({
        "vertices": d.vertex_count(),
        "valency": d.valency(),
        "connected": d.is_connected(),
        "primitive": primitive,
        "antisymmetric": true,
        "s_results": results,
    });
    Ok(Output { json, text, code: EXIT_PASS })
}
