use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relext::algebra::{BoundAlgebra, Element};
use relext::exactlin::{Field, Fp, Rational};
use relext::extension::{check_surjection, PotentialSplit, ProjectiveInjectiveSplit, RelationExtension};
use relext::potential::{dependency_components, Potential};
use relext::quiver::{parse_quiver, parse_terms, FieldSpec, QuiverFile};
use relext::repmod::{knit_ar_quiver, ArQuiver};
use relext::report;
use relext::slices::{embed_and_verify, enumerate_complete_slices, SliceCandidate, DEFAULT_SEARCH_CAP};

#[derive(Parser)]
#[command(name = "relext", version, about = "Relation extensions, partial relation extensions and AR quivers of bound quiver algebras")]
struct Cli {
    /// Ground field, `Q` or `F<p>`; defaults to the field named in the file.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Largest path length explored when computing quotient bases.
    #[arg(long, global = true, env = "RELEXT_LENGTH_CAP", default_value_t = 64)]
    length_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, basis, triangularity, global dimension and gentleness.
    Check { file: PathBuf },
    /// The relation extension: new arrows, potential and relation bimodule.
    Extend { file: PathBuf },
    /// Dependency components of a potential, or of the Keller potential.
    Decompose { file: PathBuf },
    /// Bound quiver of the partial relation extension keeping some new arrows.
    Partial {
        file: PathBuf,
        /// Comma-separated new arrows to keep.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
    },
    /// Subbimodules of the relation bimodule and their complements.
    Bimodule {
        file: PathBuf,
        /// Generator in the extended quiver, such as `u+v`; repeatable.
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Auslander-Reiten quiver by knitting.
    Ar {
        file: PathBuf,
        #[arg(long, env = "RELEXT_KNIT_CAP", default_value_t = 512)]
        cap: usize,
    },
    /// Checks a candidate local slice, or lists the complete slices.
    Slices {
        file: PathBuf,
        /// Check the set of modules given by `--member`.
        #[arg(long, conflicts_with = "complete", requires = "member")]
        local: bool,
        /// Enumerate complete slices.
        #[arg(long)]
        complete: bool,
        /// Dimension vector of a member, comma-separated; repeatable.
        #[arg(long)]
        member: Vec<String>,
        #[arg(long, env = "RELEXT_KNIT_CAP", default_value_t = 512)]
        cap: usize,
    },
    /// Pulls the complete slices of a tilted algebra back to algebras between it and its relation extension.
    Embed {
        file: PathBuf,
        /// Algebra mapping onto the one in `file`, arrows matched by name; repeatable.
        #[arg(long, required_unless_present = "with_extension")]
        chain: Vec<PathBuf>,
        /// Also embed into the relation extension itself.
        #[arg(long)]
        with_extension: bool,
        #[arg(long, env = "RELEXT_KNIT_CAP", default_value_t = 512)]
        cap: usize,
    },
}

/// Output plus verdict; `false` maps to exit code 1.
struct Outcome {
    text: String,
    verdict: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verdict: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn file_of(cli: &Cli) -> &Path {
    match &cli.command {
        Command::Check { file }
        | Command::Extend { file }
        | Command::Decompose { file }
        | Command::Partial { file, .. }
        | Command::Bimodule { file, .. }
        | Command::Ar { file, .. }
        | Command::Slices { file, .. }
        | Command::Embed { file, .. } => file,
    }
}

fn read(path: &Path) -> Result<QuiverFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_quiver(&text).with_context(|| path.display().to_string())
}

fn field_spec(s: &str) -> Result<FieldSpec> {
    if s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    let digits = s.trim_start_matches('F').trim_start_matches('p').trim_matches(|c| c == '<' || c == '>');
    let p: u64 = digits.parse().map_err(|_| anyhow!("unknown field `{s}`"))?;
    Ok(FieldSpec::Prime(p))
}

macro_rules! dispatch_primes {
    ($p:expr, $cli:expr, $file:expr; $($q:literal),*) => {
        match $p {
            $($q => run_in::<Fp<$q>>($cli, $file),)*
            other => bail!("prime field F{other} is not supported; use one of {:?}", [$($q),*]),
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome> {
    let file = read(file_of(cli))?;
    let spec = match &cli.field {
        Some(s) => field_spec(s)?,
        None => file.field,
    };
    match spec {
        FieldSpec::Rational => run_in::<Rational>(cli, &file),
        FieldSpec::Prime(p) => dispatch_primes!(p, cli, &file; 2, 3, 5, 7, 11, 13, 101),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load<F: Field>(cli: &Cli, path: &Path, file: &QuiverFile) -> Result<BoundAlgebra<F>> {
    BoundAlgebra::from_file(file, cli.length_cap).with_context(|| path.display().to_string())
}

fn knit<F: Field>(a: &BoundAlgebra<F>, cap: usize, path: &Path) -> Result<ArQuiver<F>> {
    knit_ar_quiver(a, cap).with_context(|| format!("knitting {}", path.display()))
}

fn run_in<F: Field>(cli: &Cli, file: &QuiverFile) -> Result<Outcome> {
    let path = file_of(cli);
    let name = file.name.as_deref();
    match &cli.command {
        Command::Check { .. } => {
            let a = load::<F>(cli, path, file)?;
            let v = report::check_json(name, &a);
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&v),
                _ => text_of_object(&v),
            }))
        }
        Command::Extend { .. } => {
            let re = RelationExtension::build(&load::<F>(cli, path, file)?)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&report::extension_json(&re)),
                _ => report::quiver_text(name.map(|n| format!("{n}_extension")).as_deref(), &re.algebra),
            }))
        }
        Command::Decompose { .. } => {
            let v = match &file.potential {
                Some(terms) => {
                    let w = Potential::<F>::from_rational_terms(&file.quiver, terms)?;
                    report::potential_components_json(&file.quiver, &w)
                }
                None => report::decomposition_json(&RelationExtension::build(&load::<F>(cli, path, file)?)?),
            };
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&v),
                _ => components_text(&v),
            }))
        }
        Command::Partial { keep, .. } => {
            let re = RelationExtension::build(&load::<F>(cli, path, file)?)?;
            let ids = keep
                .iter()
                .filter(|k| !k.is_empty())
                .map(|k| re.quiver.arrow_by_name(k))
                .collect::<Result<BTreeSet<usize>, _>>()?;
            let pe = re.build_partial_extension(&ids)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&report::partial_json(&re, &pe)),
                _ => report::quiver_text(name.map(|n| format!("{n}_partial")).as_deref(), &pe.algebra),
            }))
        }
        Command::Bimodule { generators, .. } => bimodule::<F>(cli, path, file, generators),
        Command::Ar { cap, .. } => {
            let a = load::<F>(cli, path, file)?;
            let ar = knit(&a, *cap, path)?;
            Ok(Outcome::ok(match cli.format {
                Format::Json => pretty(&report::arquiver_json(a.quiver(), &ar)),
                Format::Dot => report::arquiver_dot(&ar, &BTreeSet::new()),
                Format::Text => report::arquiver_text(a.quiver(), &ar),
            }))
        }
        Command::Slices { local, member, cap, .. } => {
            let a = load::<F>(cli, path, file)?;
            let ar = knit(&a, *cap, path)?;
            if *local {
                let ids = member.iter().map(|m| locate(&ar, m)).collect::<Result<Vec<_>>>()?;
                let s = SliceCandidate::new(&ar, ids)?;
                let verdict = s.is_local_slice();
                let text = match cli.format {
                    Format::Dot => report::arquiver_dot(&ar, s.ids()),
                    _ => pretty(&report::slice_json(&a, &s, &ar)),
                };
                Ok(Outcome { text, verdict })
            } else {
                let found = enumerate_complete_slices(&a, &ar, DEFAULT_SEARCH_CAP)?;
                let text = match cli.format {
                    Format::Dot => report::arquiver_dot(&ar, found.first().unwrap_or(&BTreeSet::new())),
                    _ => {
                        let list = found
                            .iter()
                            .map(|ids| Ok(report::slice_json(&a, &SliceCandidate::new(&ar, ids.iter().copied())?, &ar)))
                            .collect::<Result<Vec<_>>>()?;
                        pretty(&json!({"schema": "relext.slices/1", "count": found.len(), "slices": list}))
                    }
                };
                Ok(Outcome { text, verdict: !found.is_empty() })
            }
        }
        Command::Embed { chain, with_extension, cap, .. } => embed::<F>(cli, path, file, chain, *with_extension, *cap),
    }
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| anyhow!("bad dimension vector `{s}`")))
        .collect()
}

fn locate<F: Field>(ar: &ArQuiver<F>, member: &str) -> Result<usize> {
    let d = parse_dims(member)?;
    let ids: Vec<usize> = (0..ar.len()).filter(|&i| ar.nodes[i].module.dims() == d.as_slice()).collect();
    match ids.as_slice() {
        [i] => Ok(*i),
        [] => bail!("no indecomposable with dimension vector ({member})"),
        _ => bail!("dimension vector ({member}) names {} indecomposables", ids.len()),
    }
}

fn bimodule<F: Field>(cli: &Cli, path: &Path, file: &QuiverFile, generators: &[String]) -> Result<Outcome> {
    let re = RelationExtension::build(&load::<F>(cli, path, file)?)?;
    let q = &re.quiver;
    let describe = |b: &relext::extension::Bimodule<F>| -> Value {
        let basis: Vec<String> = b.space.basis_vectors().iter().map(|v| re.e_element(v).display(q)).collect();
        json!({"dim": b.dim(), "basis": basis})
    };
    let mut verdict = true;
    let mut parts = Vec::new();
    if generators.is_empty() {
        let d = dependency_components(&re.potential);
        for s in &d.summands {
            let b = re.partial_bimodule_of(s)?;
            let complement = re.is_direct_summand(&b)?;
            let mut entry = json!({"potential": s.display(q), "bimodule": describe(&b)});
            if let Some(c) = &complement {
                entry["complement"] = describe(c);
                entry["potential_split"] = split_json(q, &re.potential_split_from_bimodule(&b, c)?);
                entry["projective_injective_split"] = pi_json(q, &re.projective_injective_split(&b, c)?);
            }
            parts.push(entry);
        }
    } else {
        let gens = generators
            .iter()
            .map(|g| {
                let terms = parse_terms(q, g).with_context(|| format!("generator `{g}`"))?;
                Element::<F>::from_rational_terms(&terms).ok_or_else(|| anyhow!("generator `{g}` has a coefficient outside the field"))
            })
            .collect::<Result<Vec<_>>>()?;
        let b = re.subbimodule_generated(&gens)?;
        let complement = re.is_direct_summand(&b)?;
        verdict = complement.is_some();
        let mut entry = json!({"generators": generators, "bimodule": describe(&b), "complement": complement.as_ref().map(describe)});
        if let Some(c) = &complement {
            entry["potential_split"] = split_json(q, &re.potential_split_from_bimodule(&b, c)?);
            entry["projective_injective_split"] = pi_json(q, &re.projective_injective_split(&b, c)?);
        }
        parts.push(entry);
    }
    let v = json!({"schema": "relext.bimodule/1", "e_dim": re.e_dim(), "parts": parts});
    Ok(Outcome { text: pretty(&v), verdict })
}

fn split_json<F: Field>(q: &relext::quiver::Quiver, s: &PotentialSplit<F>) -> Value {
    match s {
        PotentialSplit::Split(a, b) => json!({"first": a.display(q), "second": b.display(q)}),
        PotentialSplit::Obstruction(o) => json!({"obstruction": format!("{o:?}")}),
    }
}

fn pi_json(q: &relext::quiver::Quiver, s: &ProjectiveInjectiveSplit) -> Value {
    let names = |s: &BTreeSet<usize>| s.iter().map(|&v| q.vertex_name(v).to_string()).collect::<Vec<_>>();
    match s {
        ProjectiveInjectiveSplit::Split { p1, p2, i1, i2 } => {
            json!({"p1": names(p1), "p2": names(p2), "i1": names(i1), "i2": names(i2)})
        }
        ProjectiveInjectiveSplit::Failure { witness: (x, y) } => {
            json!({"failure": [q.vertex_name(*x), q.vertex_name(*y)]})
        }
    }
}

/// Arrow map `source -> target` matching arrows by name, unmatched arrows to zero.
fn name_map(source: &relext::quiver::Quiver, target: &relext::quiver::Quiver) -> Vec<Option<usize>> {
    source.arrows().iter().map(|a| target.arrow_by_name(&a.name).ok()).collect()
}

fn embed<F: Field>(cli: &Cli, path: &Path, file: &QuiverFile, chain: &[PathBuf], with_extension: bool, cap: usize) -> Result<Outcome> {
    let c = load::<F>(cli, path, file)?;
    let ar_c = knit(&c, cap, path)?;
    let slices = enumerate_complete_slices(&c, &ar_c, DEFAULT_SEARCH_CAP)?;
    let re = RelationExtension::build(&c)?;
    let mut targets: Vec<(String, BoundAlgebra<F>, Vec<Option<usize>>)> = Vec::new();
    for p in chain {
        let f = read(p)?;
        let a = load::<F>(cli, p, &f)?;
        let map = name_map(a.quiver(), c.quiver());
        if !check_surjection(&a, &c, &map)? {
            bail!("{} does not map onto {} by arrow names", p.display(), path.display());
        }
        targets.push((p.display().to_string(), a, map));
    }
    if with_extension {
        let nq = c.quiver().num_arrows();
        let map = (0..re.quiver.num_arrows()).map(|i| (i < nq).then_some(i)).collect();
        targets.push(("relation extension".into(), re.algebra.clone(), map));
    }
    let mut verdict = true;
    let mut out = Vec::new();
    for (label, a, map) in &targets {
        let from_extension = {
            let up = name_map(&re.quiver, a.quiver());
            check_surjection(&re.algebra, a, &up).unwrap_or(false)
        };
        let ar_a = knit(a, cap, Path::new(label))?;
        let emb = embed_and_verify(&c, &ar_c, &slices, a, &ar_a, map)?;
        verdict &= emb.iter().all(|e| e.passes());
        out.push(json!({
            "algebra": label,
            "modules": ar_a.len(),
            "extension_maps_onto": from_extension,
            "slices": emb.iter().map(|e| report::embedding_json(&ar_c, &ar_a, e)).collect::<Vec<_>>(),
        }));
    }
    let v = json!({
        "schema": "relext.embed/1",
        "base_modules": ar_c.len(),
        "complete_slices": slices.len(),
        "targets": out,
    });
    Ok(Outcome { text: pretty(&v), verdict: verdict && !slices.is_empty() })
}

fn text_of_object(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            if k != "schema" {
                out.push_str(&format!("{k}: {x}\n"));
            }
        }
    }
    out
}

fn components_text(v: &Value) -> String {
    let mut out = format!("{} components\n", v["count"]);
    if let Some(cs) = v["components"].as_array() {
        for c in cs {
            out.push_str(&format!("{}\n", c["potential"].as_str().unwrap_or("")));
        }
    }
    out
}
