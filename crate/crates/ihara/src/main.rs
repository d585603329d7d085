//! Command-line surface: zeta and L-function reports, quotient
//! construction, and prime-splitting tables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ihara::covering::Covering;
use ihara::gog::GraphOfGroups;
use ihara::io;
use ihara::lfunction::{
    factorization_check, l_euler_verify, l_function_three_term, l_function_two_term,
    Representation,
};
use ihara::poly::IntPoly;
use ihara::zeta::{verify_euler, zeta_gog_two_term, FactoredZeta};

#[derive(Parser)]
#[command(
    name = "ihara",
    about = "Ihara zeta and Artin-Ihara L-functions of graphs, graphs of groups, \
             and edge-free quotients",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Emit machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Override the enumeration size guard.
    #[arg(long)]
    allow_big: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta function of a graph file.
    Zeta {
        graph: PathBuf,
        /// Verify the Euler product through u^N by brute-force enumeration.
        #[arg(long, value_name = "N")]
        euler: Option<usize>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Zeta function of a graph-of-groups file.
    ZetaGog {
        gog: PathBuf,
        #[arg(long, value_name = "N")]
        euler: Option<usize>,
        /// Accept arbitrary rational charges (e.g. "3/2", "-1") and evaluate
        /// the three-term formula only; prime enumeration is unavailable.
        #[arg(long)]
        rational_charges: bool,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Quotient a graph by an edge-free action; writes the graph of groups
    /// and the covering data.
    Quotient {
        graph: PathBuf,
        action: PathBuf,
        /// Spanning-tree seed (quotient vertex index).
        #[arg(long, default_value_t = 0)]
        seed: usize,
        /// Choice seed rotating every least-candidate selection.
        #[arg(long, default_value_t = 0)]
        choice_seed: u64,
        /// Where to write the graph-of-groups file.
        #[arg(long, value_name = "FILE")]
        gog_out: Option<PathBuf>,
        /// Where to write the covering file.
        #[arg(long, value_name = "FILE")]
        covering_out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Prime-splitting table of a covering.
    Split {
        covering: PathBuf,
        /// Split all base primes of length at most N.
        #[arg(long, value_name = "N")]
        max_len: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Artin-Ihara L-function of a covering at a representation.
    Lfunction {
        covering: PathBuf,
        /// Representation file, or the builtin names `trivial` / `regular`.
        rep: String,
        #[arg(long, value_name = "N")]
        euler: Option<usize>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Check the regular-representation factorization over an irreducible
    /// list, and zeta divisibility.
    Factorize {
        covering: PathBuf,
        /// Representation files; `trivial` and `regular` are builtin.
        reps: Vec<String>,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Zeta { graph, euler, common } => {
            let g = io::parse_graph(&read(&graph)?).map_err(|e| e.to_string())?;
            let gog = GraphOfGroups::from_graph(g);
            zeta_report("zeta", &gog, euler, &common)
        }
        Command::ZetaGog {
            gog,
            euler,
            rational_charges,
            common,
        } => {
            if rational_charges {
                let (graph, charges) =
                    io::parse_rational_gog(&read(&gog)?).map_err(|e| e.to_string())?;
                let coeffs = ihara::zeta::zeta_three_term_rational(&graph, &charges)
                    .map_err(|e| e.to_string())?;
                if common.json {
                    let json = serde_json::json!({
                        "kind": "zeta-gog-rational",
                        "charges": charges.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "zeta_inv": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                } else {
                    println!(
                        "charges: {}",
                        charges
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    println!(
                        "zeta^-1 coefficients: [{}]",
                        coeffs
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
                return Ok(true);
            }
            let x = io::parse_gog(&read(&gog)?).map_err(|e| e.to_string())?;
            zeta_report("zeta-gog", &x, euler, &common)
        }
        Command::Quotient {
            graph,
            action,
            seed,
            choice_seed,
            gog_out,
            covering_out,
            common,
        } => {
            let g = io::parse_graph(&read(&graph)?).map_err(|e| e.to_string())?;
            let a = io::parse_action(&g, &read(&action)?, 10_000).map_err(|e| e.to_string())?;
            let cov = Covering::new(a, seed, choice_seed).map_err(|e| e.to_string())?;
            if let Some(path) = &gog_out {
                std::fs::write(path, io::gog_to_json(cov.quotient(), Some(cov.action())))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if let Some(path) = &covering_out {
                std::fs::write(path, io::covering_to_json(&cov))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            quotient_report(&cov, &common)
        }
        Command::Split {
            covering,
            max_len,
            common,
        } => {
            let cov = io::parse_covering(&read(&covering)?).map_err(|e| e.to_string())?;
            let rows = cov
                .full_splitting_table(max_len, common.allow_big)
                .map_err(|e| e.to_string())?;
            if common.json {
                let json = serde_json::json!({
                    "max_len": max_len,
                    "rows": rows.iter().map(|r| io::splitting_row_json(&cov, r)).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&json).unwrap());
            } else {
                println!("{}", io::splitting_table_text(&cov, &rows));
            }
            Ok(true)
        }
        Command::Lfunction {
            covering,
            rep,
            euler,
            common,
        } => {
            let cov = io::parse_covering(&read(&covering)?).map_err(|e| e.to_string())?;
            let rho = load_rep(&cov, &rep)?;
            lfunction_report(&cov, &rho, euler, &common)
        }
        Command::Factorize {
            covering,
            reps,
            common,
        } => {
            let cov = io::parse_covering(&read(&covering)?).map_err(|e| e.to_string())?;
            let rhos: Vec<Representation> = reps
                .iter()
                .map(|r| load_rep(&cov, r))
                .collect::<Result<_, _>>()?;
            factorize_report(&cov, &rhos, &common)
        }
    }
}

fn load_rep(cov: &Covering, spec: &str) -> Result<Representation, String> {
    match spec {
        "trivial" => Ok(Representation::trivial(cov.action())),
        "regular" => Ok(Representation::regular(cov.action())),
        path => {
            let text = read(&PathBuf::from(path))?;
            io::parse_representation(cov.action(), &text).map_err(|e| e.to_string())
        }
    }
}

fn zeta_report(
    kind: &str,
    x: &GraphOfGroups,
    euler: Option<usize>,
    common: &CommonFlags,
) -> Result<bool, String> {
    let factored = FactoredZeta::of_gog(x);
    let zeta_inv = factored.expanded();
    debug_assert_eq!(zeta_inv, zeta_gog_two_term(x));
    let euler_report = match euler {
        Some(order) => Some(verify_euler(x, order, common.allow_big).map_err(|e| e.to_string())?),
        None => None,
    };
    let ok = euler_report.as_ref().is_none_or(|r| r.ok);
    let g = x.graph();
    if common.json {
        let json = serde_json::json!({
            "kind": kind,
            "graph": {
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "legs": g.leg_count(),
                "b1": g.betti(),
            },
            "charges": x.charges(),
            "zeta_inv": io::poly_coeff_strings(&zeta_inv),
            "zeta_inv_text": zeta_inv.to_string(),
            "factors": factored.factor_pairs(),
            "det_part": io::poly_coeff_strings(&factored.determinant_part),
            "factored_text": factored.display(),
            "euler_check": euler_report.as_ref().map(|r| serde_json::json!({
                "order": r.order,
                "ok": r.ok,
                "prime_counts": r.prime_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "first_mismatch": r.first_mismatch.as_ref().map(|(i, a, b)| {
                    serde_json::json!({"index": i, "series": a.to_string(), "product": b.to_string()})
                }),
            })),
        });
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!(
            "graph: {} vertices, {} edges, {} legs, b1 = {}",
            g.vertex_count(),
            g.edge_count(),
            g.leg_count(),
            g.betti()
        );
        if !x.is_trivially_charged() {
            println!(
                "charges: {}",
                x.charges()
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        println!("zeta^-1 = {}", factored.display());
        println!("        = {zeta_inv}");
        if let Some(r) = &euler_report {
            match &r.first_mismatch {
                None => println!("euler check through u^{}: ok", r.order),
                Some((i, a, b)) => println!(
                    "euler check through u^{}: MISMATCH at u^{i}: series {a} vs product {b}",
                    r.order
                ),
            }
        }
    }
    Ok(ok)
}

fn quotient_report(cov: &Covering, common: &CommonFlags) -> Result<bool, String> {
    let x = cov.quotient();
    let g = x.graph();
    let factored = FactoredZeta::of_gog(x);
    let zeta_inv = factored.expanded();
    if common.json {
        let json = serde_json::json!({
            "kind": "quotient",
            "group_order": cov.action().order(),
            "b1": g.betti(),
            "legs": g.leg_count(),
            "A": io::int_matrix_json(&g.adjacency_matrix()),
            "Q": io::int_matrix_json(&g.valency_matrix()),
            "C": io::int_matrix_json(&x.charge_matrix()),
            "zeta_inv": io::poly_coeff_strings(&zeta_inv),
            "zeta_inv_text": zeta_inv.to_string(),
            "factored_text": factored.display(),
            "tree_seed": cov.tree_seed(),
            "choice_seed": cov.choice_seed(),
        });
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        let show = |m: &ihara::matrix::Mat<i64>| {
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| m.at(i, j).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; ")
        };
        println!(
            "quotient by group of order {}: {} vertices, {} edges, {} legs",
            cov.action().order(),
            g.vertex_count(),
            g.edge_count(),
            g.leg_count()
        );
        println!("b1 = {}, l = {}", g.betti(), g.leg_count());
        println!("A = [{}]", show(&g.adjacency_matrix()));
        println!("Q = [{}]", show(&g.valency_matrix()));
        println!("C = [{}]", show(&x.charge_matrix()));
        println!("zeta^-1 = {}", factored.display());
        println!("        = {zeta_inv}");
    }
    Ok(true)
}

fn lfunction_report(
    cov: &Covering,
    rho: &Representation,
    euler: Option<usize>,
    common: &CommonFlags,
) -> Result<bool, String> {
    let two = l_function_two_term(cov, rho).map_err(|e| e.to_string())?;
    let three = l_function_three_term(cov, rho).map_err(|e| e.to_string())?;
    let agree = two.complex.approx_eq(&three.complex, ihara::poly::EPS_DET);
    let euler_report = match euler {
        Some(order) => {
            Some(l_euler_verify(cov, rho, order, common.allow_big).map_err(|e| e.to_string())?)
        }
        None => None,
    };
    let ok = agree && euler_report.as_ref().is_none_or(|r| r.ok);
    if common.json {
        let json = serde_json::json!({
            "kind": "lfunction",
            "rep": rho.name(),
            "dim": rho.dim(),
            "l_inv_rounded": two.rounded.as_ref().map(io::poly_coeff_strings),
            "l_inv_text": two.rounded.as_ref().map(IntPoly::to_string),
            "l_inv_complex": io::complex_coeff_pairs(&two.complex),
            "rounding_residual": two.residual,
            "two_term_equals_three_term": agree,
            "euler_check": euler_report.as_ref().map(|r| serde_json::json!({
                "order": r.order,
                "ok": r.ok,
                "max_deviation": r.max_deviation,
                "primes_used": r.primes_used,
            })),
        });
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!("L^-1(u, {}) [dim {}]:", rho.name(), rho.dim());
        match &two.rounded {
            Some(p) => println!("  = {p}    (rounding residual {:.2e})", two.residual),
            None => println!(
                "  (not integral; residual {:.2e})\n  = {}",
                two.residual, two.complex
            ),
        }
        println!(
            "two-term and three-term formulas {}",
            if agree { "agree" } else { "DISAGREE" }
        );
        if let Some(r) = &euler_report {
            println!(
                "euler check through u^{}: {} (max deviation {:.2e}, {} primes)",
                r.order,
                if r.ok { "ok" } else { "MISMATCH" },
                r.max_deviation,
                r.primes_used
            );
        }
    }
    Ok(ok)
}

fn factorize_report(
    cov: &Covering,
    rhos: &[Representation],
    common: &CommonFlags,
) -> Result<bool, String> {
    let report = factorization_check(cov, rhos).map_err(|e| e.to_string())?;
    if common.json {
        let json = serde_json::json!({
            "kind": "factorize",
            "dims_ok": report.dims_ok,
            "product_matches": report.product_matches,
            "divides": report.divisibility_quotient.is_some(),
            "zeta_cover_inv": io::poly_coeff_strings(&report.zeta_cover_inv),
            "zeta_quotient_inv": io::poly_coeff_strings(&report.zeta_quotient_inv),
            "product_inv": io::poly_coeff_strings(&report.product_inv),
            "divisibility_quotient": report
                .divisibility_quotient
                .as_ref()
                .map(io::poly_coeff_strings),
            "factors": report.per_rep.iter().map(|(name, dim, poly)| {
                serde_json::json!({"rep": name, "dim": dim, "l_inv": io::poly_coeff_strings(poly)})
            }).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!("zeta^-1(cover)    = {}", report.zeta_cover_inv);
        println!("zeta^-1(quotient) = {}", report.zeta_quotient_inv);
        for (name, dim, poly) in &report.per_rep {
            println!("L^-1({name}) [dim {dim}] = {poly}");
        }
        println!(
            "sum of dim^2 {} the group order",
            if report.dims_ok { "matches" } else { "DOES NOT match" }
        );
        println!(
            "product of L^-1^dim {} zeta^-1(cover)",
            if report.product_matches { "equals" } else { "DOES NOT equal" }
        );
        match &report.divisibility_quotient {
            Some(q) => println!("zeta^-1(quotient) divides zeta^-1(cover); quotient = {q}"),
            None => println!("zeta^-1(quotient) DOES NOT divide zeta^-1(cover)"),
        }
    }
    Ok(report.all_ok())
}
