use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use marginal_polytope::compiler::{
    compile_languages, divides, forbidden_list_for_level, parses_into, verify_language, LanguageJson,
    PolytopeChain, WordLanguage,
};
use marginal_polytope::dim1::{chain_marginal, classify_extreme_points, markov_extension};
use marginal_polytope::geometry::{vertex_enumeration, VPolytope};
use marginal_polytope::invariance::{build_iloc, MeasureJson, MeasureVector};
use marginal_polytope::patterns::{Alphabet, PatternIndex};
use marginal_polytope::sft::{
    bounded_2d_periodic_search, face_feasible, face_of_forbidden, face_vertices, sft_empty_1d, ForbiddenJson,
    ForbiddenSet,
};
use marginal_polytope::substitution::{
    frequency_report, iterate_counts, FrequencyMode, SubstitutionSystem, SystemJson,
};
use marginal_polytope::tower::refinement_report;
use marginal_polytope::{Config, Error, Exec};

#[derive(Parser, Debug)]
#[command(name = "marginal", version, about = "Exact marginal polytopes of shift-invariant measures")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Lattice dimension.
    #[arg(short = 'd', long = "d", global = true, default_value_t = 1)]
    d: usize,
    /// Window radius: patterns live on {-n..n}^d.
    #[arg(short = 'n', long = "n", global = true, default_value_t = 1)]
    n: usize,
    /// Comma-separated symbols.
    #[arg(long, global = true, default_value = "0,1")]
    alphabet: String,
    /// JSON file with caps; flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cap_patterns: Option<u64>,
    #[arg(long, global = true)]
    cap_generators: Option<usize>,
    #[arg(long = "cap-torus", alias = "max-torus", global = true)]
    cap_torus: Option<usize>,
    #[arg(long, global = true)]
    cap_language: Option<usize>,
    #[arg(long, global = true)]
    cap_word_length: Option<usize>,
    #[arg(long, global = true)]
    cap_constraints: Option<u64>,
    /// Run every inner loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H- and V-representation of I_n^loc.
    Polytope,
    /// Pair the vertices of I_n^loc with periodic orbit measures (d = 1).
    Classify,
    /// Markov extension of a locally invariant measure (d = 1).
    Extend {
        /// Measure JSON with `values` or `masses`.
        #[arg(long)]
        measure: PathBuf,
    },
    /// Face of I_n^loc cut out by a forbidden set.
    Face {
        /// Forbidden set JSON.
        #[arg(long, conflicts_with = "words")]
        forbidden: Option<PathBuf>,
        /// Comma-separated forbidden words (d = 1).
        #[arg(long)]
        words: Option<String>,
        /// Enumerate face vertices even when d > 1.
        #[arg(long)]
        vertices: bool,
        /// Search for a periodic torus configuration (d = 2).
        #[arg(long)]
        torus: bool,
    },
    /// Projections of I_k^loc onto the n-window for k = n+1..=k.
    Project {
        #[arg(short = 'k', long = "k")]
        k: usize,
    },
    /// Compile a chain of rational polytopes into word languages.
    Compile {
        /// JSON list of V-polytopes.
        #[arg(long)]
        chain: PathBuf,
        /// Add every arrangement of each block multiset, not just the canonical one.
        #[arg(long)]
        all_arrangements: bool,
    },
    /// Tile frequencies of a primitive substitution.
    Subst {
        #[arg(long, conflicts_with = "system")]
        preset: Option<String>,
        /// System JSON {"types": [...], "M": [[...]]}.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Frequency ratio `i/j` by type names.
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Report M^k * seed for k = 1..=K.
        #[arg(long)]
        iterate: Option<usize>,
        /// Comma-separated seed counts (default: one tile of the first type).
        #[arg(long)]
        seed: Option<String>,
    },
    /// Is a word of length 3N forbidden for a compiled language?
    CheckWord {
        /// Language JSON {"symbols", "N", "words"}.
        #[arg(long)]
        language: PathBuf,
        word: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModeArg {
    Auto,
    Exact,
    Interval,
}

/// Failure with a fixed exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn exit(code: u8, message: impl Into<String>) -> anyhow::Error {
    Exit {
        code,
        message: message.into(),
    }
    .into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(x) = e.downcast_ref::<Exit>() {
        return x.code;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::TooLarge { .. }) => 2,
        Some(Error::Verification(_)) => 5,
        _ => 4,
    }
}

fn config(g: &Global) -> anyhow::Result<Config> {
    let mut cfg = match &g.config {
        Some(p) => serde_json::from_str(&read(p)?).with_context(|| format!("parsing config {}", p.display()))?,
        None => Config::default(),
    };
    if let Some(v) = g.cap_patterns {
        cfg.max_patterns = v;
    }
    if let Some(v) = g.cap_generators {
        cfg.max_generators = v;
    }
    if let Some(v) = g.cap_torus {
        cfg.max_torus = v;
    }
    if let Some(v) = g.cap_language {
        cfg.max_language = v;
    }
    if let Some(v) = g.cap_word_length {
        cfg.max_word_length = v;
    }
    if let Some(v) = g.cap_constraints {
        cfg.max_constraints = v;
    }
    if g.sequential {
        cfg.exec = Exec::Sequential;
    }
    if cfg.max_patterns == 0 || cfg.max_generators == 0 || cfg.max_language == 0 || cfg.max_word_length == 0 {
        bail!(Error::InvalidInput("caps must be positive".into()));
    }
    Ok(cfg)
}

fn read(p: &Path) -> anyhow::Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(p: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(p)?).with_context(|| format!("parsing {}", p.display()))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn polytope(g: &Global, cfg: &Config) -> anyhow::Result<Value> {
    let alphabet = Alphabet::parse(&g.alphabet)?;
    let index = PatternIndex::new(g.d, g.n, alphabet.clone(), cfg)?;
    let h = build_iloc(&index);
    let v = vertex_enumeration(&h, cfg)?;
    Ok(json!({
        "d": g.d,
        "n": g.n,
        "alphabet": alphabet,
        "patterns": (0..index.size()).map(|i| index.render(i)).collect::<Vec<_>>(),
        "vertex_count": v.len(),
        "h": h.to_json(),
        "v": v,
    }))
}

fn classify(g: &Global, cfg: &Config) -> anyhow::Result<Value> {
    if g.d != 1 {
        return Err(exit(3, format!("classification needs d = 1, got d = {}", g.d)));
    }
    let report = classify_extreme_points(&Alphabet::parse(&g.alphabet)?, g.n, cfg)?;
    Ok(serde_json::to_value(report)?)
}

fn extend(measure: &Path, cfg: &Config) -> anyhow::Result<Value> {
    let j: MeasureJson = read_json(measure)?;
    if j.d != 1 {
        bail!(Error::InvalidInput(format!("Markov extension needs d = 1, got d = {}", j.d)));
    }
    let mu = MeasureVector::from_json(&j, cfg)?;
    let chain = markov_extension(&mu, cfg)?;
    let back = chain_marginal(&chain, mu.index())?;
    let round_trip = back == mu;
    let stationary = chain.is_stationary() && chain.rows_stochastic();
    Ok(json!({
        "chain": chain.to_json(),
        "round_trip": round_trip,
        "stationary": stationary,
    }))
}

fn face(
    g: &Global,
    cfg: &Config,
    forbidden: Option<&Path>,
    words: Option<&str>,
    want_vertices: bool,
    torus: bool,
) -> anyhow::Result<Value> {
    let l = match (forbidden, words) {
        (Some(p), _) => ForbiddenSet::from_json(&read_json::<ForbiddenJson>(p)?)?,
        (None, Some(w)) => {
            if g.d != 1 {
                bail!(Error::InvalidInput("--words describes one-dimensional patterns; use --forbidden".into()));
            }
            let list: Vec<&str> = w.split(',').filter(|s| !s.is_empty()).collect();
            ForbiddenSet::from_words(Alphabet::parse(&g.alphabet)?, &list)?
        }
        (None, None) => bail!(Error::InvalidInput("give --forbidden or --words".into())),
    };
    let face = face_of_forbidden(&l, g.n, cfg)?;
    let cert = face_feasible(&face)?;
    let mut out = json!({
        "face": face.to_json(),
        "feasible": cert.is_feasible(),
        "certificate": cert,
    });
    if cert.is_feasible() && (want_vertices || l.d() == 1) {
        let v: VPolytope = face_vertices(&face, cfg)?;
        out["vertex_count"] = json!(v.len());
        out["vertices"] = serde_json::to_value(&v)?;
    }
    if l.d() == 1 {
        out["sft_empty"] = json!(sft_empty_1d(&l, cfg)?);
    }
    if torus {
        if l.d() != 2 {
            bail!(Error::InvalidInput("the torus search is two-dimensional".into()));
        }
        let found = bounded_2d_periodic_search(&l, g.n, cfg.max_torus, cfg)?;
        out["torus"] = serde_json::to_value(found.to_json(l.alphabet(), cfg.max_torus))?;
    }
    Ok(out)
}

fn project(g: &Global, cfg: &Config, k: usize) -> anyhow::Result<Value> {
    let alphabet = Alphabet::parse(&g.alphabet)?;
    let levels = refinement_report(g.n, k, g.d, &alphabet, cfg)?;
    Ok(json!({
        "d": g.d,
        "n": g.n,
        "alphabet": alphabet,
        "levels": levels,
    }))
}

fn compile(chain: &Path, all: bool, cfg: &Config) -> anyhow::Result<Value> {
    let levels: Vec<VPolytope> = read_json(chain)?;
    let chain = PolytopeChain::new(levels, cfg)?;
    let langs = compile_languages(&chain, all, cfg)?;
    let mut out = Vec::new();
    for (i, (lang, c)) in langs.iter().zip(chain.levels()).enumerate() {
        if !verify_language(lang, c, cfg)? {
            bail!(Error::Verification(format!("level {} does not realize its polytope", i + 1)));
        }
        if i > 0 {
            let prev: &WordLanguage = &langs[i - 1];
            if !divides(prev.length, lang.length) || !lang.words.iter().all(|w| parses_into(w, prev)) {
                bail!(Error::Verification(format!("level {} is not built from level {}", i + 1, i)));
            }
        }
        out.push(json!({
            "level": i + 1,
            "language": lang.to_json(),
            "verified": true,
        }));
    }
    Ok(json!({ "symbols": chain.symbols(), "levels": out }))
}

fn subst(
    preset: Option<&str>,
    system: Option<&Path>,
    ratio: Option<&str>,
    mode: ModeArg,
    iterate: Option<usize>,
    seed: Option<&str>,
) -> anyhow::Result<Value> {
    let s = match (preset, system) {
        (_, Some(p)) => SubstitutionSystem::from_json(&read_json::<SystemJson>(p)?)?,
        (Some(name), None) => SubstitutionSystem::preset(name)?,
        (None, None) => SubstitutionSystem::penrose_robinson(),
    };
    let mode = match mode {
        ModeArg::Auto => FrequencyMode::Auto,
        ModeArg::Exact => FrequencyMode::Exact,
        ModeArg::Interval => FrequencyMode::Interval,
    };
    let pair = match ratio {
        None => None,
        Some(r) => {
            let (i, j) = r
                .split_once('/')
                .ok_or_else(|| Error::InvalidInput(format!("ratio {r:?} must look like fat/thin")))?;
            Some((s.type_index(i)?, s.type_index(j)?))
        }
    };
    let report = frequency_report(&s, mode, pair)?;
    let mut out = serde_json::to_value(&report)?;
    if let Some(k) = iterate {
        let seed = match seed {
            Some(text) => text
                .split(',')
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad seed entry {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?,
            None => {
                let mut v = vec![BigInt::from(0u8); s.types().len()];
                v[0] = BigInt::from(1u8);
                v
            }
        };
        let counts = iterate_counts(&s, &seed, k)?;
        out["iterates"] = json!(counts
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    Ok(out)
}

fn check_word(language: &Path, word: &str) -> anyhow::Result<Value> {
    let lang = WordLanguage::from_json(&read_json::<LanguageJson>(language)?)?;
    let pred = forbidden_list_for_level(&lang)?;
    let w = marginal_polytope::compiler::symbol_alphabet(lang.symbols).parse_word(word)?;
    if w.len() != pred.window() {
        bail!(Error::InvalidInput(format!(
            "word has length {}, the forbidden list uses length {}",
            w.len(),
            pred.window()
        )));
    }
    Ok(json!({
        "word": word,
        "N": lang.length,
        "forbidden": pred.is_forbidden(&w),
    }))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = config(&cli.global)?;
    let g = &cli.global;
    let value = match &cli.command {
        Command::Polytope => polytope(g, &cfg)?,
        Command::Classify => {
            let v = classify(g, &cfg)?;
            if v["bijection"] != json!(true) {
                emit(&v, g.out.as_deref())?;
                return Err(exit(5, "vertices and orbit measures are not in bijection"));
            }
            v
        }
        Command::Extend { measure } => {
            let v = extend(measure, &cfg)?;
            if v["round_trip"] != json!(true) || v["stationary"] != json!(true) {
                emit(&v, g.out.as_deref())?;
                return Err(exit(5, "Markov extension failed its round-trip check"));
            }
            v
        }
        Command::Face {
            forbidden,
            words,
            vertices,
            torus,
        } => face(g, &cfg, forbidden.as_deref(), words.as_deref(), *vertices, *torus)?,
        Command::Project { k } => project(g, &cfg, *k)?,
        Command::Compile { chain, all_arrangements } => compile(chain, *all_arrangements, &cfg)?,
        Command::Subst {
            preset,
            system,
            ratio,
            mode,
            iterate,
            seed,
        } => subst(
            preset.as_deref(),
            system.as_deref(),
            ratio.as_deref(),
            *mode,
            *iterate,
            seed.as_deref(),
        )?,
        Command::CheckWord { language, word } => check_word(language, word)?,
    };
    emit(&value, g.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
