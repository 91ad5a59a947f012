use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use modgamma::acceptance;
use modgamma::block::{self, BlockRing, BlockValue};
use modgamma::characters::AddChar;
use modgamma::ellreg;
use modgamma::fe;
use modgamma::field::Fe;
use modgamma::gauss;
use modgamma::gl2::{self, whittaker_space, MatGroup};
use modgamma::instance::Instance;
use modgamma::output::{self, GammaRecord};
use modgamma::search;

#[derive(Parser)]
#[command(name = "modgamma", version, about = "Exact mod-l gamma factors for GL(2) over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Clone, Copy)]
struct Pair {
    #[arg(long)]
    ell: u64,
    #[arg(long)]
    q: u64,
    /// Use the alternate generator choices.
    #[arg(long)]
    alt: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    NormFiber,
    Model,
}

#[derive(Subcommand)]
enum Command {
    /// A single gamma factor from the Gauss sum.
    Gamma {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: u64,
    },
    /// The gamma table over class representatives.
    Table {
        #[command(flatten)]
        pair: Pair,
    },
    /// Duplicate rows of the gamma table.
    Search {
        #[command(flatten)]
        pair: Pair,
    },
    /// Duplicate search over all prime pairs against `q = 2 l^i + 1`.
    Scan {
        #[arg(long)]
        ell_max: u64,
        #[arg(long)]
        q_max: u64,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// The gamma factor with coefficients in R(omega).
    Newgamma {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, value_enum, default_value_t = Convention::NormFiber)]
        convention: Convention,
    },
    /// The l-regular gamma factor.
    Ellreg {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, value_enum, default_value_t = Convention::NormFiber)]
        convention: Convention,
    },
    /// Every acceptance criterion.
    Selftest,
}

#[derive(Subcommand)]
enum Verify {
    /// Functional-equation oracle against the Gauss sum on the full grid.
    Fe {
        #[command(flatten)]
        pair: Pair,
    },
    /// Bilinear-form dimensions and exceptional pairs for every cuspidal class.
    Bil {
        #[command(flatten)]
        pair: Pair,
    },
    /// Separation of cuspidal classes by the R(omega)-valued factor.
    ConverseNew {
        #[command(flatten)]
        pair: Pair,
        /// Skip the model-based convention and the solve over R(omega).
        #[arg(long)]
        no_model: bool,
    },
    /// Separation of cuspidal classes by the l-regular factor.
    ConverseEllreg {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        no_model: bool,
    },
}

struct Usage(String);

type Outcome = Result<(String, bool), Usage>;

fn instance(p: Pair) -> Result<Instance, Usage> {
    let r = if p.alt {
        Instance::alternate(p.ell, p.q)
    } else {
        Instance::new(p.ell, p.q)
    };
    r.map_err(|e| Usage(e.to_string()))
}

fn check_i(inst: &Instance, i: u64) -> Result<(), Usage> {
    if i >= inst.m_prime() {
        return Err(Usage(format!("i = {i} out of range [0, {})", inst.m_prime())));
    }
    Ok(())
}

fn js(inst: &Instance, j: Option<u64>) -> Result<Vec<u64>, Usage> {
    match j {
        Some(j) if j >= inst.n_prime() => Err(Usage(format!("j = {j} out of range [0, {})", inst.n_prime()))),
        Some(j) => Ok(vec![j]),
        None => Ok((0..inst.n_prime()).collect()),
    }
}

fn json_or_pretty<T: Serialize>(fmt: Format, cmd: &str, inst: Option<&Instance>, data: T, pretty: impl FnOnce(&T) -> String) -> Result<String, Usage> {
    match fmt {
        Format::Json => Ok(output::to_json(cmd, inst, data)),
        Format::Pretty => Ok(pretty(&data)),
        Format::Csv => Err(Usage(format!("`{cmd}` has no CSV form"))),
    }
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Gamma { pair, i, j } => {
            let inst = instance(*pair)?;
            check_i(&inst, *i)?;
            js(&inst, Some(*j))?;
            let g = gauss::gauss_sum_gamma(&inst, *i, *j).map_err(|e| Usage(e.to_string()))?;
            let f = inst.field();
            let rec = GammaRecord::new(&g);
            let text = match fmt {
                Format::Csv => format!("ell,q,i,j,value\n{},{},{},{},\"{}\"\n", pair.ell, pair.q, i, j, coeffs(&rec.value)),
                _ => json_or_pretty(fmt, "gamma", Some(&inst), rec, |r| format!("{}\n", f.format(&r.value)))?,
            };
            Ok((text, true))
        }
        Command::Table { pair } => {
            let inst = instance(*pair)?;
            let table = search::gamma_table(&inst);
            let text = match fmt {
                Format::Csv => output::table_csv(&table),
                _ => json_or_pretty(fmt, "table", Some(&inst), output::table_rows(&table), |rows| {
                    let f = inst.field();
                    rows.iter()
                        .map(|r| {
                            let vs: Vec<String> = r.values.iter().map(|v| f.format(v)).collect();
                            format!("{:>4}  {}\n", r.i, vs.join(" | "))
                        })
                        .collect()
                })?,
            };
            Ok((text, true))
        }
        Command::Search { pair } => {
            let inst = instance(*pair)?;
            let r = search::search(pair.ell, pair.q, true).map_err(|e| Usage(e.to_string()))?;
            let ok = !r.alternate_discrepancy();
            let text = json_or_pretty(fmt, "search", Some(&inst), r, |r| {
                let pairs: Vec<String> = r.duplicates.iter().map(|d| format!("({}, {})", d.i, d.i2)).collect();
                format!("({}, {}): {} classes, duplicates [{}]\n", r.ell, r.q, r.class_count, pairs.join(", "))
            })?;
            Ok((text, ok))
        }
        Command::Scan { ell_max, q_max } => {
            let r = search::scan_conjecture(*ell_max, *q_max).map_err(|e| Usage(e.to_string()))?;
            let ok = r.violations().is_empty();
            let text = match fmt {
                Format::Csv => {
                    let mut s = String::from("ell,q,has_duplicates,duplicate_count,predicted,agrees\n");
                    for e in &r.entries {
                        s += &format!("{},{},{},{},{},{}\n", e.ell, e.q, e.has_duplicates, e.duplicate_count, e.predicted, e.agrees);
                    }
                    s
                }
                _ => json_or_pretty(fmt, "scan", None, r, |r| {
                    r.entries
                        .iter()
                        .filter(|e| e.has_duplicates || !e.agrees)
                        .map(|e| format!("({}, {}): {} duplicates, predicted {}\n", e.ell, e.q, e.duplicate_count, e.predicted))
                        .collect()
                })?,
            };
            Ok((text, ok))
        }
        Command::Verify(v) => verify(fmt, v),
        Command::Newgamma { pair, i, j, convention } => {
            let inst = instance(*pair)?;
            check_i(&inst, *i)?;
            let ring = BlockRing::for_instance(&inst);
            let bessel = bessel(&inst, *i, *convention)?;
            let values: Vec<(u64, BlockValue)> = js(&inst, *j)?
                .into_iter()
                .map(|j| {
                    let g = block::gamma_tilde_closed(&inst, &ring, &bessel, j);
                    (j, BlockValue::new(&inst, &g))
                })
                .collect();
            let text = json_or_pretty(fmt, "newgamma", Some(&inst), values, |vs| {
                let f = inst.field();
                vs.iter()
                    .map(|(j, v)| {
                        let cs: Vec<String> = v.coeffs.iter().map(|c| f.format(c)).collect();
                        format!("j={j}: [{}]\n", cs.join(", "))
                    })
                    .collect()
            })?;
            Ok((text, true))
        }
        Command::Ellreg { pair, i, j, convention } => {
            let inst = instance(*pair)?;
            check_i(&inst, *i)?;
            let bessel = bessel(&inst, *i, *convention)?;
            let f = inst.field();
            let values: Vec<(u64, Fe)> = js(&inst, *j)?
                .into_iter()
                .map(|j| (j, ellreg::gamma_ell_regular(&inst, &bessel, j)))
                .collect();
            let text = json_or_pretty(fmt, "ellreg", Some(&inst), values, |vs| {
                vs.iter().map(|(j, v)| format!("j={j}: {}\n", f.format(v))).collect()
            })?;
            Ok((text, true))
        }
        Command::Selftest => {
            let results = acceptance::run_all();
            let ok = results.iter().all(|c| c.pass);
            let text = json_or_pretty(fmt, "selftest", None, results, |rs| rs.iter().map(|c| c.line() + "\n").collect())?;
            Ok((text, ok))
        }
    }
}

fn coeffs(v: &Fe) -> String {
    serde_json::to_string(v).expect("coefficients serialize")
}

fn bessel(inst: &Instance, i: u64, convention: Convention) -> Result<Vec<Fe>, Usage> {
    Ok(match convention {
        Convention::NormFiber => gauss::bessel_j(inst, i),
        Convention::Model => {
            let group = MatGroup::gl2(inst.tower());
            let ind = whittaker_space(inst, &group, AddChar::PSI);
            gl2::cuspidal_whittaker(inst, &ind, i, AddChar::PSI).map_err(|e| Usage(format!("class {i}: {e}")))?;
            gl2::model_bessel_j(inst, i, AddChar::PSI)
        }
    })
}

#[derive(Serialize)]
struct BilEntry {
    i: u64,
    j: u64,
    bil_dim: usize,
    exceptional: Vec<usize>,
}

fn verify(fmt: Format, v: &Verify) -> Outcome {
    match v {
        Verify::Fe { pair } => {
            let inst = instance(*pair)?;
            let r = fe::oracle_grid(&inst);
            let ok = r.all_agree();
            let text = json_or_pretty(fmt, "verify fe", Some(&inst), r, |r| {
                format!(
                    "({}, {}): {}/{} agree, {} compared, dual identity {}\n",
                    r.ell,
                    r.q,
                    r.agreements(),
                    r.entries.len(),
                    r.compared(),
                    r.dual_identity_holds()
                )
            })?;
            Ok((text, ok))
        }
        Verify::Bil { pair } => {
            let inst = instance(*pair)?;
            let group = MatGroup::gl2(inst.tower());
            let ind = whittaker_space(&inst, &group, AddChar::PSI);
            let mut entries = Vec::new();
            for (i, m) in fe::class_models(&inst, &ind, AddChar::PSI) {
                let Ok(m) = m else { continue };
                for j in 0..inst.n_prime() {
                    entries.push(BilEntry {
                        i,
                        j,
                        bil_dim: fe::bil_dim_21(&inst, &m.module, j),
                        exceptional: fe::detect_exceptional_21(&inst, &m.module, j),
                    });
                }
            }
            let ok = entries.iter().all(|e| e.bil_dim == 1 && e.exceptional.is_empty());
            let text = json_or_pretty(fmt, "verify bil", Some(&inst), entries, |es| {
                es.iter().map(|e| format!("i={} j={}: dim {} exceptional {:?}\n", e.i, e.j, e.bil_dim, e.exceptional)).collect()
            })?;
            Ok((text, ok))
        }
        Verify::ConverseNew { pair, no_model } => {
            let inst = instance(*pair)?;
            let r = block::verify_converse_tilde(&inst, !no_model).map_err(|e| Usage(e.to_string()))?;
            let ok = r.norm_fiber.holds() && r.model.as_ref().is_none_or(|m| m.holds());
            let text = json_or_pretty(fmt, "verify converse-new", Some(&inst), r, |r| {
                format!(
                    "({}, {}): naive collisions {:?}, unseparated {:?}, augmentation {}, units {}\n",
                    r.ell, r.q, r.norm_fiber.naive_collisions, r.norm_fiber.unseparated, r.norm_fiber.augmentation_ok, r.norm_fiber.units_ok
                )
            })?;
            Ok((text, ok))
        }
        Verify::ConverseEllreg { pair, no_model } => {
            let inst = instance(*pair)?;
            let r = ellreg::verify_converse_ellreg(&inst, !no_model).map_err(|e| Usage(e.to_string()))?;
            let ok = r.holds();
            let text = json_or_pretty(fmt, "verify converse-ellreg", Some(&inst), r, |r| {
                format!(
                    "({}, {}): naive collisions {:?}, unseparated {:?}, bil dims {:?}\n",
                    r.ell,
                    r.q,
                    r.naive_collisions,
                    r.norm_fiber.unseparated,
                    r.checks.as_ref().map(|c| c.bil_dims.clone())
                )
            })?;
            Ok((text, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
