use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use invlim::algebra::matrix::IntMatrix;
use invlim::algebra::roots::{perron_root, spectral_radius};
use invlim::classify::{classify, classify_tent_pair, Status, Verdict};
use invlim::format::{parse_matrix, parse_substitution};
use invlim::germs::{
    eventual_range, folds_at_b, germ_map, in_m_oi, is_distinguished, is_orientation_preserving,
    is_positive, FoldWitness,
};
use invlim::report::{pairwise_tent_table, to_json, verdict_text};
use invlim::tent::{build_tent_model, enumerate_kneading, verify_tent_model, KneadingWord, TentModel};
use invlim::tiling::{collared_perron_agrees, collar, emit_patch};
use invlim::weak_equiv::{search_certificate, verify_certificate, SearchBounds, WeakEquivCertificate};
use invlim::{Error, Substitution};

#[derive(Parser)]
#[command(name = "invlim", version, about = "Inverse limits of maps on wedges of circles, via their substitutions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest power of the first substitution tried by certificate search.
    #[arg(long, global = true, env = "INVLIM_MAX_N", default_value_t = invlim::weak_equiv::DEFAULT_MAX_EXP)]
    max_n: u32,
    /// Largest power of the second substitution tried by certificate search.
    #[arg(long, global = true, env = "INVLIM_MAX_M", default_value_t = invlim::weak_equiv::DEFAULT_MAX_EXP)]
    max_m: u32,
    /// Longest image allowed in a certificate.
    #[arg(long, global = true, env = "INVLIM_MAX_LEN", default_value_t = invlim::weak_equiv::DEFAULT_MAX_LEN)]
    max_len: usize,
    /// Search nodes allowed per search.
    #[arg(long, global = true, env = "INVLIM_MAX_NODES", default_value_t = invlim::weak_equiv::DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Working precision in bits for numerical enclosures.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the inverse limits of two substitutions.
    Classify { first: PathBuf, second: PathBuf },
    /// Classify the inverse limits of two tent maps given by kneading words.
    ClassifyTent { first: String, second: String },
    /// Search for a weak-equivalence certificate.
    CertSearch { first: PathBuf, second: PathBuf },
    /// Check a certificate (JSON) against two substitutions.
    CertVerify {
        first: PathBuf,
        second: PathBuf,
        certificate: PathBuf,
    },
    /// Tent-map substitutions from kneading data.
    Tent(TentArgs),
    /// Collared substitution of an unbarred substitution.
    Collar { file: PathBuf },
    /// Compare the tiling spaces of two unbarred substitutions.
    ClassifyTilings { first: PathBuf, second: PathBuf },
    /// Perron root of a matrix file (`rows cols` then entries) or of a
    /// substitution's matrix.
    Perron { file: PathBuf },
    /// Edge-germ dynamics at the branch point.
    Germs { file: PathBuf },
    /// Inflation patch of a tiling substitution.
    Patch {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: usize,
        #[arg(long, default_value_t = 3)]
        steps: u32,
        /// CSV instead of the text layout (ignored with --json).
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TentArgs {
    /// Kneading word, e.g. RLL.
    #[arg(long)]
    kneading: Option<String>,
    /// All realized kneading words up to this period.
    #[arg(long)]
    enumerate: Option<usize>,
    /// Classify every pair of tent maps up to this period.
    #[arg(long)]
    pairwise: Option<usize>,
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn decided(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn read(path: &Path) -> invlim::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> invlim::Result<Substitution> {
    parse_substitution(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn verdict_output(cli: &Cli, command: &str, v: &Verdict) -> Output {
    let text = if cli.json {
        to_json(command, v)
    } else {
        verdict_text(v)
    };
    Output {
        text,
        code: if v.status == Status::Unknown { 2 } else { 0 },
    }
}

#[derive(Serialize)]
struct SearchReport<'a> {
    found: bool,
    certificate: Option<&'a WeakEquivCertificate>,
    nodes: u64,
    budget_exhausted: bool,
    searched_pairs: &'a [(u32, u32)],
    bounds: SearchBounds,
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
}

#[derive(Serialize)]
struct TentReport {
    kneading: KneadingWord,
    period: usize,
    orbit_rank: Vec<usize>,
    critical_rank: usize,
    substitution: Substitution,
    slope_minpoly: String,
    slope: String,
    verified: bool,
}

fn tent_report(m: &TentModel, bits: u32) -> invlim::Result<TentReport> {
    Ok(TentReport {
        kneading: m.kneading.clone(),
        period: m.period(),
        orbit_rank: m.orbit_rank.clone(),
        critical_rank: m.critical_rank(),
        substitution: m.chi.clone(),
        slope_minpoly: m.slope.minpoly().to_string(),
        slope: m.slope.to_decimal(15),
        verified: verify_tent_model(m, bits)?,
    })
}

fn tent_text(r: &TentReport) -> String {
    format!(
        "kneading {} (period {})\norbit ranks {:?}, critical rank {}\nslope {} root of {}\nverified {}\n{}",
        r.kneading,
        r.period,
        r.orbit_rank,
        r.critical_rank,
        r.slope,
        r.slope_minpoly,
        r.verified,
        r.substitution
    )
}

#[derive(Serialize)]
struct PerronReport {
    char_poly: String,
    aperiodic: bool,
    minpoly: String,
    interval: [String; 2],
    value: String,
}

#[derive(Serialize)]
struct GermReport {
    germ_map: Vec<[i32; 2]>,
    eventual_range: Vec<i32>,
    range_size: usize,
    fold: Option<FoldWitness>,
    distinguished: bool,
    positive: bool,
    orientation_preserving: bool,
    immersion_oriented: bool,
}

#[derive(Serialize)]
struct CollarReport {
    alphabet: Vec<Vec<i32>>,
    substitution: Substitution,
    projection: IntMatrix,
    intertwines: bool,
    perron_roots_equal: bool,
    transient_triples: Vec<Vec<i32>>,
}

fn is_substitution_text(body: &str) -> bool {
    let first = body
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    first.starts_with('{') || first.starts_with("alphabet")
}

fn words(ws: &[invlim::Word]) -> Vec<Vec<i32>> {
    ws.iter().map(|w| w.iter().map(|l| l.index()).collect()).collect()
}

fn run(cli: &Cli) -> invlim::Result<Output> {
    let bounds = SearchBounds {
        max_n: cli.max_n,
        max_m: cli.max_m,
        max_len: cli.max_len,
        max_nodes: cli.max_nodes,
    };
    let bits = cli.precision;
    let emit = |command: &str, value: &dyn erased::Json, text: String| -> String {
        if cli.json {
            value.json(command)
        } else {
            text
        }
    };
    Ok(match &cli.command {
        Command::Classify { first, second } => {
            let v = classify(&load(first)?, &load(second)?, &bounds)?;
            verdict_output(cli, "classify", &v)
        }
        Command::ClassifyTent { first, second } => {
            let v = classify_tent_pair(&KneadingWord::parse(first)?, &KneadingWord::parse(second)?, &bounds)?;
            verdict_output(cli, "classify-tent", &v)
        }
        Command::CertSearch { first, second } => {
            let o = search_certificate(&load(first)?, &load(second)?, &bounds)?;
            let r = SearchReport {
                found: o.certificate.is_some(),
                certificate: o.certificate.as_ref(),
                nodes: o.nodes,
                budget_exhausted: o.budget_exhausted,
                searched_pairs: &o.searched_pairs,
                bounds,
            };
            let text = match &o.certificate {
                Some(c) => format!(
                    "certificate n = {} m = {}\nsigma:\n{}tau:\n{}",
                    c.n, c.m, c.sigma, c.tau
                ),
                None => format!(
                    "no certificate within bounds ({} nodes{})\n",
                    o.nodes,
                    if o.budget_exhausted { ", budget exhausted" } else { "" }
                ),
            };
            Output {
                text: emit("cert-search", &r, text),
                code: if r.found { 0 } else { 2 },
            }
        }
        Command::CertVerify {
            first,
            second,
            certificate,
        } => {
            let c: WeakEquivCertificate =
                serde_json::from_str(&read(certificate)?).map_err(|e| Error::Parse(e.to_string()))?;
            let valid = verify_certificate(&load(first)?, &load(second)?, &c)?;
            let text = if valid { "valid\n" } else { "invalid\n" }.to_string();
            Output {
                text: emit("cert-verify", &VerifyReport { valid }, text),
                code: if valid { 0 } else { 2 },
            }
        }
        Command::Tent(args) => {
            if let Some(k) = &args.kneading {
                let r = tent_report(&build_tent_model(&KneadingWord::parse(k)?)?, bits)?;
                Output::decided(emit("tent", &r, tent_text(&r)))
            } else if let Some(p) = args.enumerate {
                let rs = enumerate_kneading(p)?
                    .iter()
                    .map(|k| tent_report(&build_tent_model(k)?, bits))
                    .collect::<invlim::Result<Vec<_>>>()?;
                let text = rs.iter().map(tent_text).collect::<Vec<_>>().join("\n");
                Output::decided(emit("tent", &rs, text))
            } else {
                let p = args.pairwise.expect("clap enforces one mode");
                let t = pairwise_tent_table(&enumerate_kneading(p)?, &bounds)?;
                Output::decided(emit("tent", &t, t.to_text()))
            }
        }
        Command::Collar { file } => {
            let c = collar(&load(file)?)?;
            let r = CollarReport {
                alphabet: words(&c.tilde_alphabet),
                substitution: c.tilde_chi.clone(),
                projection: c.projection.clone(),
                intertwines: c.intertwines()?,
                perron_roots_equal: collared_perron_agrees(&c)?,
                transient_triples: words(&c.transient_triples),
            };
            let mut text = c.to_string();
            text.push_str(&format!(
                "P·Ã = A·P and rank P = n: {}\nPerron roots equal: {}\n",
                r.intertwines, r.perron_roots_equal
            ));
            if !r.transient_triples.is_empty() {
                text.push_str(&format!(
                    "triples occurring only at low levels: {:?}\n",
                    r.transient_triples
                ));
            }
            Output::decided(emit("collar", &r, text))
        }
        Command::ClassifyTilings { first, second } => {
            let v = invlim::tiling::classify_tilings(&load(first)?, &load(second)?, &bounds)?;
            verdict_output(cli, "classify-tilings", &v)
        }
        Command::Perron { file } => {
            let body = read(file)?;
            let a = if is_substitution_text(&body) {
                parse_substitution(&body)?.abelianization()
            } else {
                parse_matrix(&body)?
            };
            let aperiodic = a.is_aperiodic()?;
            let root = if aperiodic {
                perron_root(&a)?
            } else {
                spectral_radius(&a)?
            }
            .refined_bits(bits);
            let r = PerronReport {
                char_poly: a.char_poly()?.to_string(),
                aperiodic,
                minpoly: root.minpoly().to_string(),
                interval: [root.lo().to_string(), root.hi().to_string()],
                value: root.to_decimal(15),
            };
            let text = format!(
                "characteristic polynomial {}\naperiodic {}\n{} root of {}\nisolating interval [{}, {}]\n",
                r.char_poly, r.aperiodic,
                if aperiodic { "perron" } else { "spectral radius" },
                r.minpoly, r.interval[0], r.interval[1]
            ) + &format!("value {}\n", r.value);
            Output::decided(emit("perron", &r, text))
        }
        Command::Germs { file } => {
            let s = load(file)?;
            let g = germ_map(&s)?;
            let range: Vec<i32> = eventual_range(&s)?.iter().map(|l| l.index()).collect();
            let r = GermReport {
                germ_map: g.pairs().iter().map(|(a, b)| [a.index(), b.index()]).collect(),
                range_size: range.len(),
                eventual_range: range,
                fold: folds_at_b(&s)?,
                distinguished: is_distinguished(&s)?,
                positive: is_positive(&s),
                orientation_preserving: is_orientation_preserving(&s)?,
                immersion_oriented: in_m_oi(&s)?,
            };
            let mut text = String::from("germ map:");
            for [a, b] in &r.germ_map {
                text.push_str(&format!(" {a}->{b}"));
            }
            text.push_str(&format!("\neventual range {:?} (#R = {})\n", r.eventual_range, r.range_size));
            match &r.fold {
                Some(f) => text.push_str(&format!(
                    "folds at b: {:?} in power {} of letter {}\n",
                    f.pair, f.power, f.start
                )),
                None => text.push_str("does not fold at b\n"),
            }
            text.push_str(&format!(
                "distinguished {}\npositive {}\norientation preserving {}\nimmersion with oriented square {}\n",
                r.distinguished, r.positive, r.orientation_preserving, r.immersion_oriented
            ));
            Output::decided(emit("germs", &r, text))
        }
        Command::Patch {
            file,
            seed,
            steps,
            csv,
        } => {
            let p = emit_patch(&load(file)?, *seed, *steps, bits)?;
            let text = if *csv {
                p.to_csv()
            } else {
                let mut t = String::new();
                for (i, tile) in p.tiles.iter().enumerate() {
                    t.push_str(&format!(
                        "{i:>6} tile {} at {} length {}\n",
                        tile.prototile,
                        invlim::algebra::interval::format_decimal(&tile.left, 12),
                        invlim::algebra::interval::format_decimal(&tile.length, 12)
                    ));
                }
                t
            };
            Output::decided(emit("patch", &p, text))
        }
    })
}

/// Object-safe JSON rendering for the report structs.
mod erased {
    pub trait Json {
        fn json(&self, command: &str) -> String;
    }

    impl<T: serde::Serialize> Json for T {
        fn json(&self, command: &str) -> String {
            invlim::report::to_json(command, self)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
