use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use perikit::exec::configure_threads;
use perikit::json::to_canonical_string;
use perikit::weyl::{
    census, census_auto, lift_order_rule, lift_to_normalizer, parse_cycles, parse_signs,
    permutation_from_cycles, render_table, weyl_image, ClassicalElement, EnumerationOptions,
};
use perikit::{CyclicExtension, Error, Execution, Family, RootSystemType, SignedPermutation};

#[derive(Parser)]
#[command(
    name = "perikit",
    version,
    about = "Periodic components of torus extensions and of normalizers of maximal tori"
)]
struct Cli {
    /// Print sorted, pretty-printed JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Allow the full E7 Weyl group enumeration (2,903,040 elements, about 250 MB).
    #[arg(long, global = true)]
    allow_e7: bool,

    /// Serve censuses from closed forms instead of enumerating.
    #[arg(long, global = true)]
    closed_form: bool,

    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true, env = "PERIKIT_THREADS")]
    threads: Option<usize>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Census of periodic components of N_G(T) for one root system, e.g. `census G2` or `census B 3`.
    Census { family: String, rank: Option<usize> },
    /// The census table for A1..A6, B2..B6, C2..C6, D3..D6, G2, F4, E6, E7, E8.
    Table,
    /// Periodicity, fixed points, bounds and orders for a cyclic extension given as JSON.
    ExtAnalyze {
        path: Option<PathBuf>,
        /// The extension JSON itself, instead of a file.
        #[arg(long = "matrix-inline", value_name = "JSON", conflicts_with = "path")]
        inline: Option<String>,
    },
    /// Order of the elements of component g^i T: `ext-order FILE I` or `ext-order --matrix-inline JSON I`.
    ExtOrder {
        #[arg(value_name = "FILE|I")]
        first: String,
        #[arg(value_name = "I")]
        second: Option<String>,
        #[arg(long = "matrix-inline", value_name = "JSON")]
        inline: Option<String>,
    },
    /// Explicit lift of a Weyl group element to the matrix group, e.g. `lift C 2 "(1 2)" +-`.
    Lift {
        family: String,
        rank: usize,
        /// Cycles of the permutation, 1-based: `(1 2)(3)`, `(123)`, `id`.
        cycles: String,
        /// Signs for B, C, D: `+--` or `1,-1,-1`.
        #[arg(allow_hyphen_values = true)]
        signs: Option<String>,
    },
    /// Orders of lifts of powers of a Coxeter element from divisibility constraints.
    Resolve { family: String, rank: Option<usize> },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidType(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other),
        }
    }
}

struct Output {
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", to_canonical_string(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::InvalidValue, msg).exit(),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn options(cli: &Cli) -> EnumerationOptions {
    EnumerationOptions {
        allow_e7: cli.allow_e7,
        closed_form: cli.closed_form,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    }
}

fn parse_type(family: &str, rank: Option<usize>) -> Result<RootSystemType, Failure> {
    let letters = family.trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
    let t: RootSystemType = match rank {
        None => family.parse()?,
        Some(r) if letters.len() == family.len() => format!("{family}{r}").parse()?,
        Some(r) => {
            let t: RootSystemType = family.parse()?;
            if t.rank() != r {
                return Err(Failure::Usage(format!(
                    "{family} has rank {}, not {r}",
                    t.rank()
                )));
            }
            t
        }
    };
    Ok(t)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Census { family, rank } => {
            let t = parse_type(family, *rank)?;
            let report = census(&t, &options(cli))?;
            report.verify()?;
            let coeffs: Vec<String> = report
                .solomon_coefficients
                .iter()
                .map(ToString::to_string)
                .collect();
            let text = format!(
                "{}exponents {:?}, h = {}\ng_0..g_n = {}\n",
                render_table(std::slice::from_ref(&report)),
                report.exponents,
                report.coxeter_number,
                coeffs.join(" ")
            );
            Ok(Output {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
            })
        }
        Command::Table => {
            let opts = options(cli);
            let mut reports = Vec::new();
            for t in RootSystemType::table_types() {
                let r = census_auto(&t, &opts)?;
                r.verify()?;
                reports.push(r);
            }
            Ok(Output {
                json: serde_json::to_value(&reports).expect("serializable"),
                text: render_table(&reports),
            })
        }
        Command::ExtAnalyze { path, inline } => {
            let ext = load_extension(path.as_ref(), inline.as_deref())?;
            analyze(&ext, &options(cli))
        }
        Command::ExtOrder {
            first,
            second,
            inline,
        } => {
            let (path, component) = match (inline, second) {
                (Some(_), None) => (None, first),
                (None, Some(c)) => (Some(PathBuf::from(first)), c),
                (Some(_), Some(_)) => {
                    return Err(Failure::Usage(
                        "with --matrix-inline give only the component".into(),
                    ))
                }
                (None, None) => return Err(Failure::Usage("missing component index".into())),
            };
            let i: u64 = component.parse().map_err(|_| {
                Failure::Usage(format!(
                    "component must be a non-negative integer, got {component:?}"
                ))
            })?;
            let ext = load_extension(path.as_ref(), inline.as_deref())?;
            let order = ext.component_order(i, options(cli).exec)?;
            Ok(Output {
                json: json!({ "component": i % ext.degree(), "order": order }),
                text: format!("{order}\n"),
            })
        }
        Command::Lift {
            family,
            rank,
            cycles,
            signs,
        } => lift(family, *rank, cycles, signs.as_deref()),
        Command::Resolve { family, rank } => {
            let t = parse_type(family, *rank)?;
            let h = t.coxeter_number();
            let exps = t.exponents();
            let res = perikit::torus::resolve_order_constraints(h, &exps);
            let text = match &res {
                perikit::torus::Resolution::Resolved {
                    multiplier, orders, ..
                } => {
                    let o: Vec<String> = orders.iter().map(ToString::to_string).collect();
                    format!(
                        "{t}: h = {h}, ord(g) = {}\nord(g^d), d = 1..{}: {}\n",
                        h * multiplier,
                        h - 1,
                        o.join(" ")
                    )
                }
                perikit::torus::Resolution::Unresolved { candidates, .. } => {
                    let o: Vec<String> = candidates.iter().map(|a| (a * h).to_string()).collect();
                    format!("{t}: h = {h}, unresolved; ord(g) ∈ {{{}}}\n", o.join(", "))
                }
            };
            let mut json = serde_json::to_value(&res).expect("serializable");
            json["type"] = json!(t.name());
            json["coxeter_number"] = json!(h);
            json["exponents"] = json!(exps);
            Ok(Output { json, text })
        }
    }
}

fn load_extension(
    path: Option<&PathBuf>,
    inline: Option<&str>,
) -> Result<CyclicExtension, Failure> {
    let raw = match (path, inline) {
        (_, Some(s)) => s.to_string(),
        (Some(p), None) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?,
        (None, None) => return Err(Failure::Usage("give a file or --matrix-inline JSON".into())),
    };
    let value: Value =
        serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
    serde_json::from_value(value)
        .map_err(|e| Failure::Domain(Error::InvalidExtension(e.to_string())))
}

fn analyze(ext: &CyclicExtension, opts: &EnumerationOptions) -> Result<Output, Failure> {
    let auto = ext.automorphism();
    let chi1 = auto.chi_at_one();
    let periodic = ext.periodic_components();
    let mut text = format!(
        "rank {}, {} components, B of order k = {}\nχ_B(1) = {chi1}\nperiodic components: {:?}\n",
        ext.rank(),
        ext.degree(),
        ext.auto_order(),
        periodic
    );
    let mut json = json!({
        "rank": ext.rank(),
        "degree": ext.degree(),
        "auto_order": ext.auto_order(),
        "chi_at_one": chi1.to_string(),
        "periodic_components": periodic,
        "order_bound_cor5": ext.order_bound_cor5(),
    });
    text.push_str(&format!("m·k = {}\n", ext.order_bound_cor5()));

    if auto.is_periodic() {
        let fixed = auto.fixed_subgroup()?;
        let bound = ext.order_bound_prop7()?;
        let rep = ext.find_mk_representative()?;
        let rep_order = rep.order()?;
        text.push_str(&format!(
            "fixed points: order {} with invariants {:?}\nm·|χ(1)| = {bound}\nelement of order {rep_order} | m·k: g·{}\n",
            fixed.cardinality,
            fixed.orders,
            rep.torus_part()
        ));
        json["fixed_subgroup"] = serde_json::to_value(&fixed).expect("serializable");
        json["order_bound_prop7"] = json!(bound);
        json["mk_representative"] = json!({
            "torus_part": serde_json::to_value(rep.torus_part()).expect("serializable"),
            "order": rep_order,
        });
    }

    let mut orders = serde_json::Map::new();
    for &i in &periodic {
        let o = ext.component_order(i, opts.exec)?;
        text.push_str(&format!("ord(g^{i}T) = {o}\n"));
        orders.insert(i.to_string(), json!(o));
    }
    json["component_orders"] = Value::Object(orders);
    Ok(Output { json, text })
}

fn lift(family: &str, rank: usize, cycles: &str, signs: Option<&str>) -> Result<Output, Failure> {
    let t = parse_type(family, Some(rank))?;
    if !t.family().is_classical() {
        return Err(Failure::Domain(Error::UnsupportedFamily(format!(
            "{} ({})",
            t.name(),
            t.group_name()
        ))));
    }
    let points = if t.family() == Family::A {
        rank + 1
    } else {
        rank
    };
    let cyc = parse_cycles(cycles, points)?;
    let w = if t.family() == Family::A {
        if signs.is_some() {
            return Err(Failure::Usage("type A takes no signs".into()));
        }
        ClassicalElement::Permutation(permutation_from_cycles(points, &cyc)?)
    } else {
        let theta = match signs {
            Some(s) => parse_signs(s)?,
            None => vec![1; points],
        };
        ClassicalElement::Signed(SignedPermutation::from_cycles(points, &cyc, theta)?)
    };
    let g = lift_to_normalizer(&t, &w)?;
    let image = weyl_image(&t, &g)?;
    let order = g.order();
    let rule = lift_order_rule(&t, &w);
    let matrix = g.to_sign_matrix()?;
    let rows: Vec<Vec<String>> = matrix
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();

    let mut text = format!("{} lift of {w}:\n", t.group_name());
    for r in &rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>2}")).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    text.push_str(&format!("order {order}\n"));
    let mut json = json!({
        "type": t.name(),
        "group": t.group_name(),
        "element": w.to_string(),
        "weyl_image": image.to_string(),
        "matrix": serde_json::to_value(&matrix).expect("serializable"),
        "monomial": serde_json::to_value(&g).expect("serializable"),
        "order": order,
        "periodic": w.is_periodic(),
    });
    match rule {
        Ok(r) => {
            text.push_str(&format!("periodic component; order rule gives {r}\n"));
            json["order_rule"] = json!(r);
        }
        Err(Error::NonPeriodic(why)) => {
            text.push_str(&format!("component is not periodic ({why})\n"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Output { json, text })
}
