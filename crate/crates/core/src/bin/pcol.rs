use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pcol_core::constructions::{
    construct_bc_a, construct_boolean_bu, hamming_cosets, hamming_union_coloring,
    iterate_construction, reduce_by_periods, rm_coloring, rm_quotient, translations_collection,
    union_collection, RecursionSpec, UniformCollection,
};
use pcol_core::io::{read_header, read_pcol_file, write_pcol_file, Encoding};
use pcol_core::report::{verify_coloring, VerifyOptions};
use pcol_core::spectral::merge_colors;
use pcol_core::verify::densities_by_count;
use pcol_core::{Coloring, Error, Guards, QuotientMatrix};

#[derive(Parser)]
#[command(name = "pcol", version, about = "Perfect colorings of Hamming graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a coloring and write it to a PCOL file.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Exhaustively verify a PCOL file.
    Verify(VerifyArgs),
    /// Summarize a PCOL file.
    Info { path: PathBuf },
}

#[derive(Args, Clone)]
struct Output {
    /// Output file.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Write the binary variant.
    #[arg(long)]
    binary: bool,
    /// Also write every member of the uniform collection, plus a manifest, to this directory.
    #[arg(long)]
    collection_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Reed–Muller-like Mq-coloring of H(M,q), M = q^s.
    Rm {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Union of c' consecutive Hamming-code cosets in H(2^m - 1, 2).
    HammingUnion {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        cprime: u32,
        #[arg(long, default_value_t = 0)]
        shift: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Perfect 2-coloring with quotient [[N-b, b], [c, N-c]] and no dummy arguments.
    Bc {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Boolean function of density R/S and degree E*S/2 in which every variable is essential.
    Boolean {
        #[arg(long, value_name = "R/S")]
        rho: String,
        #[arg(long)]
        e: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Apply the recursive construction to translates of a base coloring.
    Recursive {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        collection_size: usize,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    /// Report which arguments are essential.
    #[arg(long)]
    essential: bool,
    /// Report the degree of every color.
    #[arg(long)]
    degree: bool,
    /// Fail unless the quotient matrix equals this JSON array of rows.
    #[arg(long, value_name = "JSON")]
    expect_quotient: Option<String>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    provenance: &'a pcol_core::constructions::Provenance,
    q: u32,
    n: usize,
    k: u32,
    claimed_quotient: Option<&'a [Vec<u64>]>,
    members: Vec<String>,
}

fn encoding(out: &Output) -> Encoding {
    if out.binary {
        Encoding::Binary
    } else {
        Encoding::Text
    }
}

fn write_outputs(
    coloring: &Coloring,
    collection: Option<&UniformCollection>,
    out: &Output,
    guards: &Guards,
) -> pcol_core::Result<()> {
    let enc = encoding(out);
    if let Some(path) = &out.output {
        write_pcol_file(coloring, path, enc, guards)?;
        println!(
            "wrote {} (H({},{}), {} colors)",
            path.display(),
            coloring.n(),
            coloring.q(),
            coloring.k()
        );
    }
    if let Some(dir) = &out.collection_out {
        let col = collection.ok_or_else(|| {
            Error::Unsupported("this construction does not produce a collection".into())
        })?;
        write_collection(col, dir, enc, guards)?;
    }
    Ok(())
}

fn write_collection(
    col: &UniformCollection,
    dir: &Path,
    enc: Encoding,
    guards: &Guards,
) -> pcol_core::Result<()> {
    fs::create_dir_all(dir)?;
    let ext = match enc {
        Encoding::Text => "pcol",
        Encoding::Binary => "pcolb",
    };
    let width = col.len().to_string().len();
    let mut names = Vec::with_capacity(col.len());
    for (i, member) in col.members.iter().enumerate() {
        let name = format!("member_{i:0width$}.{ext}");
        write_pcol_file(member, dir.join(&name), enc, guards)?;
        names.push(name);
    }
    let manifest = Manifest {
        provenance: &col.provenance,
        q: col.q(),
        n: col.n(),
        k: col.k(),
        claimed_quotient: col.quotient.as_ref().map(QuotientMatrix::rows),
        members: names,
    };
    fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
    )?;
    println!("wrote {} members to {}", col.len(), dir.display());
    Ok(())
}

fn print_predicted(s: &QuotientMatrix) {
    println!("predicted quotient: {s}");
}

fn parse_rho(s: &str) -> pcol_core::Result<(u64, u64)> {
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("expected R/S, got {s:?}"),
    };
    let (r, d) = s.split_once('/').ok_or_else(bad)?;
    Ok((
        r.trim().parse().map_err(|_| bad())?,
        d.trim().parse().map_err(|_| bad())?,
    ))
}

fn construct(kind: Construct, guards: &Guards) -> pcol_core::Result<()> {
    match kind {
        Construct::Rm { q, s, out } => {
            let c = rm_coloring(q, s)?;
            print_predicted(&rm_quotient(q, s)?);
            write_outputs(&c, None, &out, guards)
        }
        Construct::HammingUnion {
            m,
            cprime,
            shift,
            out,
        } => {
            let part = hamming_cosets(m)?;
            let c = hamming_union_coloring(&part, shift, cprime)?;
            let col = union_collection(&part, cprime, false)?;
            print_predicted(col.quotient.as_ref().expect("union quotient"));
            write_outputs(&c, Some(&col), &out, guards)
        }
        Construct::Bc { b, c, out } => {
            let r = construct_bc_a(b, c, guards)?;
            print_predicted(&r.predicted);
            write_outputs(r.coloring(), Some(&r.recursion.collection), &out, guards)
        }
        Construct::Boolean { rho, e, out } => {
            let (r, s) = parse_rho(&rho)?;
            let f = construct_boolean_bu(r, s, e, guards)?;
            let predicted = f.bc.predicted.rows();
            let swapped = QuotientMatrix::new(
                f.n,
                2,
                vec![
                    vec![predicted[1][1], predicted[1][0]],
                    vec![predicted[0][1], predicted[0][0]],
                ],
            )?;
            print_predicted(&swapped);
            println!(
                "n = {}, density of ones = {}, degree = {}{}",
                f.n,
                f.density,
                f.degree,
                if f.verified.is_some() { " (verified)" } else { "" }
            );
            let col = &f.bc.recursion.collection;
            let flipped = col
                .members
                .iter()
                .map(|m| merge_colors(m, &[vec![1], vec![0]]))
                .collect::<pcol_core::Result<Vec<_>>>()?;
            let mut collection = UniformCollection::new(flipped, col.provenance, Some(swapped))?;
            collection.essential = col.essential;
            write_outputs(&f.function, Some(&collection), &out, guards)
        }
        Construct::Recursive {
            base,
            collection_size,
            steps,
            out,
        } => {
            let (c, _) = read_pcol_file(&base)?;
            let reduced = reduce_by_periods(&translations_collection(&c, guards)?, guards)?;
            if collection_size == 0 || collection_size % reduced.len() != 0 {
                return Err(Error::SizeMismatch(format!(
                    "collection size must be a multiple of {}, the number of distinct translates",
                    reduced.len()
                )));
            }
            let base_col = reduced.repeated(collection_size / reduced.len());
            let q = c.q() as u64;
            let mut s = 0u32;
            while (q.pow(s) as usize) < collection_size {
                s += 1;
            }
            if q.pow(s) as usize != collection_size {
                return Err(Error::SizeMismatch(format!(
                    "collection size must be a power of {q}"
                )));
            }
            let spec = RecursionSpec {
                base: base_col,
                outer: rm_coloring(q, s)?,
                steps,
            };
            let r = iterate_construction(&spec, guards)?;
            for level in &r.levels {
                println!("step {}: H({},{}) {}", level.step, level.n, q, level.predicted);
            }
            print_predicted(r.collection.quotient.as_ref().expect("predicted"));
            write_outputs(r.coloring(), Some(&r.collection), &out, guards)
        }
    }
}

fn verify(args: &VerifyArgs, guards: &Guards) -> Result<bool, Error> {
    let expected_quotient = args
        .expect_quotient
        .as_deref()
        .map(|s| {
            serde_json::from_str::<Vec<Vec<u64>>>(s).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: format!("--expect-quotient: {e}"),
            })
        })
        .transpose()?;
    let (c, _) = read_pcol_file(&args.path)?;
    let options = VerifyOptions {
        essential: args.essential,
        degree: args.degree,
        expected_quotient,
    };
    let report = verify_coloring(&c, &options, None, guards)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("H({},{}), {} colors", report.n, report.q, report.k);
        match &report.quotient {
            Some(s) => println!("perfect, quotient {}", serde_json::to_string(s).unwrap()),
            None => {
                let w = report.witness.as_ref().expect("witness");
                println!(
                    "not perfect: vertices {} and {} of color {} have neighbor profiles {:?} and {:?}",
                    w.reference, w.vertex, w.color, w.reference_profile, w.vertex_profile
                );
            }
        }
        if let Some(m) = report.matches_expected {
            println!("matches expected quotient: {m}");
        }
        println!("densities: {}", report.densities.join(", "));
        if let Some(sp) = &report.spectrum {
            let parts: Vec<String> = sp
                .iter()
                .map(|e| format!("lambda_{} = {} (x{})", e.index, e.eigenvalue, e.multiplicity))
                .collect();
            println!("spectrum: {}", parts.join(", "));
        }
        if let (Some(count), Some(_)) = (report.essential_count, &report.essential) {
            println!("essential arguments: {count}/{}", report.n);
        }
        if let Some(d) = &report.degrees {
            println!("degrees: {d:?}");
        }
    }
    Ok(report.passed())
}

fn info(path: &Path, guards: &Guards) -> pcol_core::Result<()> {
    let size = fs::metadata(path)?.len();
    let (header, enc) = read_header(fs::File::open(path)?)?;
    let (c, _) = read_pcol_file(path)?;
    let counts = c.table().expect("files hold tables").counts(c.k());
    let densities = densities_by_count(&c, guards)?;
    println!("file: {} ({size} bytes, {:?})", path.display(), enc);
    println!(
        "q = {}, n = {}, k = {}, vertices = {}",
        header.q,
        header.n,
        header.k,
        c.vertex_count().unwrap_or(0)
    );
    for (i, (count, rho)) in counts.iter().zip(&densities).enumerate() {
        println!("color {i}: {count} vertices, density {rho}");
    }
    Ok(())
}

fn run_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Unsupported(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guards = Guards::from_env();
    let result = match cli.command {
        Command::Construct { kind } => construct(kind, &guards).map(|_| true),
        Command::Verify(args) => {
            run_pool(args.threads, || verify(&args, &guards)).and_then(|r| r)
        }
        Command::Info { path } => info(&path, &guards).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
