//! Command-line front end. Exit codes: 0 success or property true,
//! 1 property false, 2 usage or parse error, 3 precondition violation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sop::canonical::{self, CanonicalPresentation};
use sop::generic::{self, LengthMode, Property, SampleConfig};
use sop::pieces::{self, Degree, PieceTable};
use sop::presentation::Presentation;
use sop::wordproblem::WordProblem;
use sop::{cancel, Error};

#[derive(Parser)]
#[command(name = "sop", version, about = "Small overlap presentation toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a C(n) or strong C(n) condition
    Check {
        file: PathBuf,
        /// c<n> or strong-c<n>, e.g. c4, strong-c3
        #[arg(long)]
        condition: String,
        #[arg(long)]
        json: bool,
    },
    /// List pieces and the XYZ factorizations of the relation words
    Pieces {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two words are equal in the presented monoid
    Eq {
        file: PathBuf,
        /// whitespace-separated generator tokens; 1 denotes the empty word
        word1: String,
        word2: String,
        #[arg(long)]
        json: bool,
    },
    /// Canonical presentation of the presented monoid
    Canon {
        file: PathBuf,
        /// write the canonical presentation to this file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two presentations present isomorphic monoids
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Left/right/two-sided cancellativity report
    Cancel {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo estimation of presentation properties
    Experiment {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "sum", value_parser = ["sum", "max"])]
        mode: String,
        #[arg(long)]
        trials: u64,
        /// defaults to SOP_SEED, then 0
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = ["strong-c4", "left-cancellative", "right-cancellative", "cancellative"])]
        property: String,
        /// append a CSV row (with header if new) to this file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exact enumeration: strongly C(2) count and isomorphism-type count
    Count {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

fn load(file: &PathBuf) -> Result<Presentation, Error> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", file.display())))?;
    Presentation::parse(&text)
}

fn degree_json(d: &Degree) -> serde_json::Value {
    match d {
        Degree::Bounded(n) => json!(n),
        Degree::Unbounded => json!("unbounded"),
    }
}

fn cmd_check(file: PathBuf, condition: String, json_out: bool) -> Result<u8, Error> {
    let (strong, n) = match condition.strip_prefix("strong-c") {
        Some(rest) => (true, rest),
        None => match condition.strip_prefix('c') {
            Some(rest) => (false, rest),
            None => return Err(Error::usage(format!("unknown condition `{condition}`"))),
        },
    };
    let n: usize = n
        .parse()
        .map_err(|_| Error::usage(format!("unknown condition `{condition}`")))?;
    let p = load(&file)?;
    let holds = if strong {
        pieces::check_strong_c(&p, n)
    } else {
        pieces::check_c(&p, n)
    };
    let degree = pieces::small_overlap_degree(&p);
    let offender = pieces::c_violation(&p, n);
    if json_out {
        let offender = offender.map(|(w, d)| {
            json!({
                "word": p.render_word(&w),
                "decomposition": d.iter().map(|q| p.render_word(q)).collect::<Vec<_>>(),
            })
        });
        println!(
            "{}",
            json!({
                "condition": condition,
                "holds": holds,
                "degree": degree_json(&degree),
                "offender": offender,
            })
        );
    } else {
        match degree {
            Degree::Bounded(d) => println!("degree: {d}"),
            Degree::Unbounded => println!("degree: unbounded"),
        }
        println!("{condition}: {}", if holds { "holds" } else { "fails" });
        if let Some((w, d)) = offender {
            let parts: Vec<String> = d.iter().map(|q| p.render_word(q)).collect();
            println!("offender: {} = ({})", p.render_word(&w), parts.join(")("));
        }
    }
    Ok(if holds { 0 } else { 1 })
}

type RenderedXyz = Option<(String, String, String)>;

fn cmd_pieces(file: PathBuf, json_out: bool) -> Result<u8, Error> {
    let p = load(&file)?;
    let table = PieceTable::build(&p);
    let pieces_list = table.sorted_pieces();
    let facts: Vec<(String, RenderedXyz)> = p
        .relation_words()
        .iter()
        .map(|w| {
            let xyz = pieces::xyz_factorization(&table, w)
                .ok()
                .map(|(x, y, z)| (p.render_word(&x), p.render_word(&y), p.render_word(&z)));
            (p.render_word(w), xyz)
        })
        .collect();
    if json_out {
        println!(
            "{}",
            json!({
                "count": pieces_list.len(),
                "pieces": pieces_list.iter().map(|w| p.render_word(w)).collect::<Vec<_>>(),
                "factorizations": facts
                    .iter()
                    .map(|(w, xyz)| json!({
                        "word": w,
                        "xyz": xyz.as_ref().map(|(x, y, z)| json!({"x": x, "y": y, "z": z})),
                    }))
                    .collect::<Vec<_>>(),
            })
        );
    } else {
        println!("pieces ({}):", pieces_list.len());
        for w in &pieces_list {
            println!("  {}", p.render_word(w));
        }
        for (w, xyz) in &facts {
            match xyz {
                Some((x, y, z)) => println!("{w}: X = {x}, Y = {y}, Z = {z}"),
                None => println!("{w}: no XYZ factorization"),
            }
        }
    }
    Ok(0)
}

fn cmd_eq(file: PathBuf, word1: String, word2: String, json_out: bool) -> Result<u8, Error> {
    let p = load(&file)?;
    let u = p.parse_word(&word1)?;
    let v = p.parse_word(&word2)?;
    let wp = WordProblem::new(&p)?;
    let eq = wp.words_equivalent(&u, &v);
    if json_out {
        println!("{}", json!({ "equivalent": eq }));
    } else {
        println!("{}", if eq { "equivalent" } else { "not equivalent" });
    }
    Ok(if eq { 0 } else { 1 })
}

fn canon_json(c: &CanonicalPresentation) -> serde_json::Value {
    json!({
        "presentation": c.serialization(),
        "provenance": c
            .provenance
            .iter()
            .map(|(g, w)| json!({ "generator": g, "replacement": w }))
            .collect::<Vec<_>>(),
    })
}

fn cmd_canon(file: PathBuf, out: Option<PathBuf>, json_out: bool) -> Result<u8, Error> {
    let p = load(&file)?;
    let c = canonical::canonicalize(&p)?;
    if let Some(path) = &out {
        fs::write(path, c.serialization())
            .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if json_out {
        println!("{}", canon_json(&c));
    } else {
        print!("{}", c.serialization());
        for (g, w) in &c.provenance {
            println!("# eliminated {g} = {}", w.join(" "));
        }
    }
    Ok(0)
}

fn cmd_iso(file1: PathBuf, file2: PathBuf, json_out: bool) -> Result<u8, Error> {
    let p = load(&file1)?;
    let q = load(&file2)?;
    let iso = canonical::monoids_isomorphic(&p, &q)?;
    if json_out {
        println!("{}", json!({ "isomorphic": iso }));
    } else {
        println!("{}", if iso { "isomorphic" } else { "not isomorphic" });
    }
    Ok(if iso { 0 } else { 1 })
}

fn cmd_cancel(file: PathBuf, json_out: bool) -> Result<u8, Error> {
    let p = load(&file)?;
    let report = cancel::cancellativity_report(&p)?;
    let render = |w: &Option<(sop::Word, sop::Word)>| {
        w.as_ref()
            .map(|(u, v)| (p.render_word(u), p.render_word(v)))
    };
    let lw = render(&report.left_witness);
    let rw = render(&report.right_witness);
    if json_out {
        println!(
            "{}",
            json!({
                "left": report.left,
                "right": report.right,
                "cancellative": report.cancellative,
                "left_witness": lw.map(|(u, v)| json!([u, v])),
                "right_witness": rw.map(|(u, v)| json!([u, v])),
            })
        );
    } else {
        match lw {
            Some((u, v)) => println!("left: false  witness: {u} = {v}"),
            None => println!("left: true"),
        }
        match rw {
            Some((u, v)) => println!("right: false  witness: {u} = {v}"),
            None => println!("right: true"),
        }
        println!("cancellative: {}", report.cancellative);
    }
    Ok(if report.cancellative { 0 } else { 1 })
}

fn resolve_seed(cli_seed: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = cli_seed {
        return Ok(s);
    }
    match std::env::var("SOP_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| Error::usage(format!("SOP_SEED `{v}` is not a 64-bit integer"))),
        Err(_) => Ok(0),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    a: usize,
    k: usize,
    n: usize,
    mode: String,
    trials: u64,
    seed: Option<u64>,
    property: String,
    csv: Option<PathBuf>,
    json_out: bool,
) -> Result<u8, Error> {
    if a == 0 || a > 26 || k == 0 {
        return Err(Error::usage("need 1 <= a <= 26 and k >= 1"));
    }
    let cfg = SampleConfig {
        alphabet_size: a,
        relation_count: k,
        length: n,
        length_mode: if mode == "max" { LengthMode::Max } else { LengthMode::Sum },
        seed: resolve_seed(seed)?,
        trials,
    };
    let prop = Property::from_name(&property)
        .ok_or_else(|| Error::usage(format!("unknown property `{property}`")))?;
    let est = generic::estimate_proportion(&cfg, prop);
    if let Some(path) = &csv {
        let mut content = fs::read_to_string(path).unwrap_or_default();
        if content.is_empty() {
            content.push_str(generic::ProportionEstimate::csv_header());
            content.push('\n');
        }
        content.push_str(&est.csv_row());
        content.push('\n');
        fs::write(path, content)
            .map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if json_out {
        println!(
            "{}",
            json!({
                "property": est.property.name(),
                "a": est.alphabet_size,
                "k": est.relation_count,
                "n": est.length,
                "mode": est.length_mode.name(),
                "trials": est.trials,
                "hits": est.hits,
                "estimate": est.estimate,
                "ci95": est.ci95,
                "flagged": est.flagged,
            })
        );
    } else {
        println!("{}", generic::ProportionEstimate::csv_header());
        println!("{}", est.csv_row());
    }
    Ok(0)
}

fn cmd_count(a: usize, k: usize, n: usize, json_out: bool) -> Result<u8, Error> {
    let (strong, types) = generic::count_isomorphism_types(a, k, n)?;
    if json_out {
        println!("{}", json!({ "strong_c2": strong, "iso_types": types }));
    } else {
        println!("strongly-c2: {strong}");
        println!("iso-types: {types}");
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Check { file, condition, json } => cmd_check(file, condition, json),
        Cmd::Pieces { file, json } => cmd_pieces(file, json),
        Cmd::Eq { file, word1, word2, json } => cmd_eq(file, word1, word2, json),
        Cmd::Canon { file, out, json } => cmd_canon(file, out, json),
        Cmd::Iso { file1, file2, json } => cmd_iso(file1, file2, json),
        Cmd::Cancel { file, json } => cmd_cancel(file, json),
        Cmd::Experiment { a, k, n, mode, trials, seed, property, csv, json } => {
            cmd_experiment(a, k, n, mode, trials, seed, property, csv, json)
        }
        Cmd::Count { a, k, n, json } => cmd_count(a, k, n, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Precondition(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
