use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use acm_core::classifier::{self, ClassificationEntry, LowDegreeFamily, LowDegreeRow};
use acm_core::enumerate::{enumerate_kinds, EnumerationConfig};
use acm_core::liaison::{residual_invariants, CiProfile};
use acm_core::pairs::WeakAdmissiblePair;
use acm_core::picard::{DivisorClass, PicardLattice, WatanabeCase};
use acm_core::reproduce::{self, ReproOptions, Target};
use acm_core::resolutions::{
    ci_table, thm1_case_ii, thm1_case_iii, BettiTable, CurveInvariants,
};

mod table;

/// A comma-separated integer list, parsed as one flag value.
type IntList = Vec<i64>;

#[derive(Parser)]
#[command(name = "acm", version, about = "ACM curves on surfaces in P^3: pairs, resolutions, lattices, liaison")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Weak admissible pairs and their degree matrices
    #[command(subcommand)]
    Pairs(PairsCmd),
    /// Betti tables and curve invariants
    #[command(subcommand)]
    Res(ResCmd),
    /// Rank-two Picard lattices of quartics
    #[command(subcommand)]
    Picard(PicardCmd),
    /// Degree and genus of a directly linked curve
    Liaison(LiaisonArgs),
    /// Full classifications
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Recompute a bundled table and compare row by row
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    a: IntList,
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    b: IntList,
}

#[derive(Subcommand)]
enum PairsCmd {
    Matrix(PairArgs),
    Normalize(PairArgs),
    Dual(PairArgs),
    Kind(PairArgs),
    Enumerate {
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        cap: Option<i64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    Ci,
    Ii,
    Iii,
}

#[derive(Subcommand)]
enum ResCmd {
    Build {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        a: Option<IntList>,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        b: Option<IntList>,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        k: Option<i64>,
        #[arg(long)]
        j0: Option<usize>,
        /// Surface degrees of a complete intersection
        #[arg(long, value_parser = parse_twists)]
        ci: Option<IntList>,
        #[arg(long)]
        surface_degree: Option<i64>,
    },
    Invariants {
        #[arg(long, value_parser = parse_twists)]
        gens: IntList,
        #[arg(long, value_parser = parse_twists)]
        syz: IntList,
    },
}

#[derive(Subcommand)]
enum PicardCmd {
    Solve {
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        gram: IntList,
        #[arg(long, allow_hyphen_values = true)]
        self_int: i64,
        /// A single value or an inclusive range MIN..MAX
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        dh: (i64, i64),
    },
    Watanabe {
        #[arg(long)]
        divisor: String,
    },
}

#[derive(Args)]
struct LiaisonArgs {
    #[arg(long)]
    degree: i64,
    #[arg(long, allow_hyphen_values = true)]
    genus: i64,
    #[arg(long)]
    s: i64,
    #[arg(long)]
    t: i64,
    /// Link twice; the result should be the input curve
    #[arg(long)]
    twice: bool,
}

#[derive(Subcommand)]
enum ClassifyCmd {
    Quartic {
        #[arg(long)]
        divisor: String,
        #[arg(long, default_value_t = classifier::DEFAULT_K_MAX)]
        kmax: i64,
    },
    Low {
        #[arg(long)]
        degree: i64,
        #[arg(long = "type")]
        tag: String,
        /// Steps past each floor to instantiate
        #[arg(long, default_value_t = 3)]
        span: i64,
    },
}

#[derive(Args)]
struct ReproduceArgs {
    target: String,
    #[arg(long)]
    cap: Option<i64>,
    #[arg(long, default_value_t = classifier::DEFAULT_K_MAX)]
    kmax: i64,
}

fn parse_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}

fn parse_twists(s: &str) -> Result<IntList, String> {
    let v = parse_list(s)?;
    match v.iter().find(|&&x| x < 0) {
        Some(x) => Err(format!("twist {x} is negative")),
        None => Ok(v),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => parse(s).map(|v| (v, v)),
    }
}

/// Output of `res build` and `res invariants`.
#[derive(Serialize)]
pub struct ResOut {
    pub gens: Vec<i64>,
    pub syz: Vec<i64>,
    pub degree: i64,
    pub genus: i64,
}

impl ResOut {
    fn new(t: &BettiTable, inv: CurveInvariants) -> Self {
        Self {
            gens: t.gens().to_vec(),
            syz: t.syz().to_vec(),
            degree: inv.degree,
            genus: inv.genus,
        }
    }
}

#[derive(Serialize)]
pub struct LowOut {
    pub family: &'static LowDegreeFamily,
    pub rows: Vec<LowDegreeRow>,
}

/// A rendered document: the JSON value and its table form.
struct Doc {
    json: String,
    table: String,
}

impl Doc {
    fn new<T: Serialize>(value: &T, table: String) -> Result<Self, String> {
        let json = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        Ok(Self { json, table })
    }
}

fn pair(p: PairArgs) -> Result<WeakAdmissiblePair, String> {
    WeakAdmissiblePair::new(p.a, p.b).map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Result<(Doc, bool), String> {
    let ok = |d: Doc| Ok((d, true));
    match cmd {
        Command::Pairs(PairsCmd::Matrix(p)) => {
            let m = pair(p)?.degree_matrix();
            ok(Doc::new(&m.entries, table::matrix(&m.entries))?)
        }
        Command::Pairs(PairsCmd::Normalize(p)) => {
            let n = pair(p)?.normalize();
            ok(Doc::new(&n, n.to_string())?)
        }
        Command::Pairs(PairsCmd::Dual(p)) => {
            let n = pair(p)?.dual();
            ok(Doc::new(&n, n.to_string())?)
        }
        Command::Pairs(PairsCmd::Kind(p)) => {
            let s = pair(p)?.kind_signature();
            ok(Doc::new(&s, table::signature(&s))?)
        }
        Command::Pairs(PairsCmd::Enumerate { degree, cap }) => {
            let cfg = match cap {
                Some(c) => EnumerationConfig::new(degree, c),
                None => EnumerationConfig::with_default_cap(degree),
            }
            .map_err(|e| e.to_string())?;
            let cat = enumerate_kinds(&cfg);
            ok(Doc::new(&cat, table::catalog(&cat))?)
        }
        Command::Res(ResCmd::Build {
            case,
            a,
            b,
            k,
            j0,
            ci,
            surface_degree,
        }) => {
            let t = match case {
                Case::Ci => {
                    let fg = ci.ok_or("--ci F,G is required for --case ci")?;
                    let [f, g] = fg[..] else {
                        return Err("--ci takes exactly two degrees".into());
                    };
                    ci_table(f, g)
                }
                Case::Ii | Case::Iii => {
                    let (a, b) = a.zip(b).ok_or("--a and --b are required")?;
                    let p = WeakAdmissiblePair::new(a, b).map_err(|e| e.to_string())?;
                    let d = surface_degree.unwrap_or_else(|| p.degree());
                    if case == Case::Ii {
                        thm1_case_ii(&p, k.ok_or("--k is required for --case ii")?, d)
                    } else {
                        thm1_case_iii(&p, j0.ok_or("--j0 is required for --case iii")?, d)
                    }
                }
            }
            .map_err(|e| e.to_string())?;
            let inv = t.raw_invariants().map_err(|e| e.to_string())?;
            let out = ResOut::new(&t, inv);
            ok(Doc::new(&out, table::res(&out))?)
        }
        Command::Res(ResCmd::Invariants { gens, syz }) => {
            let t = BettiTable::new(gens, syz).map_err(|e| e.to_string())?;
            let violations = t.validate();
            if !violations.is_empty() {
                let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(msgs.join("; "));
            }
            let inv = t.invariants().map_err(|e| e.to_string())?;
            let out = ResOut::new(&t, inv);
            ok(Doc::new(&out, table::res(&out))?)
        }
        Command::Picard(PicardCmd::Solve { gram, self_int, dh }) => {
            let [h2, hc, c2] = gram[..] else {
                return Err("--gram takes three integers H2,HC,C2".into());
            };
            let l = PicardLattice::new(h2, hc, c2).map_err(|e| e.to_string())?;
            let sols: Vec<DivisorClass> = l.solve_classes(self_int, dh.0, dh.1).into_iter().collect();
            ok(Doc::new(&sols, table::classes(&sols))?)
        }
        Command::Picard(PicardCmd::Watanabe { divisor }) => {
            let d = classifier::divisor(&divisor).map_err(|e| e.to_string())?;
            let cases: Vec<WatanabeCase> = d.lattice().watanabe_candidates();
            ok(Doc::new(&cases, table::watanabe(&cases))?)
        }
        Command::Liaison(a) => {
            let c = CurveInvariants::new(a.degree, a.genus);
            let p = CiProfile::new(a.s, a.t).map_err(|e| e.to_string())?;
            let mut r = residual_invariants(c, p).map_err(|e| e.to_string())?;
            if a.twice {
                r = residual_invariants(r, p).map_err(|e| e.to_string())?;
            }
            ok(Doc::new(&r, format!("degree {} genus {}", r.degree, r.genus))?)
        }
        Command::Classify(ClassifyCmd::Quartic { divisor, kmax }) => {
            let d = classifier::divisor(&divisor).map_err(|e| e.to_string())?;
            let entries: Vec<ClassificationEntry> =
                classifier::classify_quartic(d, kmax).map_err(|e| e.to_string())?;
            ok(Doc::new(&entries, table::entries(&entries))?)
        }
        Command::Classify(ClassifyCmd::Low { degree, tag, span }) => {
            if span < 0 {
                return Err(format!("span {span} is negative"));
            }
            let fams = classifier::classify_low_degree(degree, &tag).map_err(|e| e.to_string())?;
            let out = fams
                .into_iter()
                .map(|family| {
                    family
                        .rows(span)
                        .map(|rows| LowOut { family, rows })
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            ok(Doc::new(&out, table::low(&out))?)
        }
        Command::Reproduce(a) => {
            let target: Target = a.target.parse().map_err(|e: reproduce::ReproduceError| e.to_string())?;
            let opts = ReproOptions {
                b_cap: a.cap,
                k_max: a.kmax,
            };
            let report = reproduce::reproduce(target, opts).map_err(|e| e.to_string())?;
            let passed = report.passed();
            Ok((Doc::new(&report, report.to_string())?, passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok((doc, passed)) => {
            let text = match cli.format {
                Format::Json => doc.json,
                Format::Table => doc.table,
            };
            if let Err(e) = writeln!(io::stdout().lock(), "{text}") {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: some rows failed");
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("1, 2,-3"), Ok(vec![1, 2, -3]));
        assert!(parse_list("1,,2").is_err());
        assert!(parse_twists("2,-1").is_err());
        assert_eq!(parse_twists("0,4"), Ok(vec![0, 4]));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..6"), Ok((-2, 6)));
        assert_eq!(parse_range("5"), Ok((5, 5)));
        assert!(parse_range("1..x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
