//! Command-line front end: every subcommand is a thin composition of
//! library calls, with no numeric logic of its own.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use saxshape::bench::{self, BenchOp};
use saxshape::classify::{build_word_sets, classify_image};
use saxshape::error::Error;
use saxshape::sax::{detect_transitions, sax_transform, SaxConfig};
use saxshape::shape::{rotate_image, signature, BinaryImage};
use saxshape::{io, TimeSeries};

#[derive(Parser)]
#[command(name = "saxshape", version, about = "SAX time-series discretization and shape classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a series file to a SAX word
    Sax {
        /// Series file, one sample per line
        #[arg(long)]
        input: PathBuf,
        /// Alphabet size (3-8)
        #[arg(long)]
        alphabet: usize,
        /// Word length
        #[arg(long)]
        word_length: usize,
    },
    /// Convert a PBM shape image to its centroid-distance signature
    Signature {
        /// PBM image, P1 or P4
        #[arg(long)]
        input: PathBuf,
        /// Number of angular bins
        #[arg(long, default_value_t = 360)]
        bins: usize,
        /// Output series file
        #[arg(long)]
        output: PathBuf,
        /// Treat PBM 0 (white) as foreground instead of PBM 1
        #[arg(long)]
        invert: bool,
    },
    /// Build per-class rotation word sets from a directory of PBM images
    BuildSets {
        /// Directory with one subdirectory of PBM files per class
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        word_length: usize,
        #[arg(long, default_value_t = 360)]
        bins: usize,
        /// Augment each image with this many in-plane rotations at uniform angles
        #[arg(long, default_value_t = 0)]
        rotations: usize,
        /// Output word-set file
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        invert: bool,
    },
    /// Classify a PBM shape image against a word-set file
    Classify {
        /// Word-set file produced by build-sets
        #[arg(long)]
        sets: PathBuf,
        /// PBM image to classify
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 360)]
        bins: usize,
        /// Print UNKNOWN when the minimum distance exceeds this value
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        invert: bool,
    },
    /// List letter transitions of a series' SAX word
    Events {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        word_length: usize,
    },
    /// Time an operation on synthetic input
    Bench {
        /// Operation: sax, signature or classify
        #[arg(long)]
        op: String,
        /// Input size (series length, image side, or word count)
        #[arg(long)]
        size: usize,
        /// Repetitions (at least 3)
        #[arg(long)]
        reps: usize,
        /// RNG seed for the synthetic input
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn read_series_file(path: &Path) -> Result<TimeSeries, Error> {
    io::read_series(&std::fs::read_to_string(path)?)
}

fn read_pbm_file(path: &Path, invert: bool) -> Result<BinaryImage, Error> {
    let image = io::read_pbm(&std::fs::read(path)?)?;
    Ok(if invert { image.inverted() } else { image })
}

fn letter(symbol: u8) -> char {
    (b'a' + symbol - 1) as char
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Sax {
            input,
            alphabet,
            word_length,
        } => {
            let series = read_series_file(&input)?;
            let config = SaxConfig::new(alphabet, word_length)?;
            println!("{}", sax_transform(&series, &config)?);
        }
        Command::Signature {
            input,
            bins,
            output,
            invert,
        } => {
            let image = read_pbm_file(&input, invert)?;
            let sig = signature(&image, bins)?;
            std::fs::write(output, io::write_series(&sig.samples))?;
        }
        Command::BuildSets {
            input,
            alphabet,
            word_length,
            bins,
            rotations,
            output,
            invert,
        } => {
            let config = SaxConfig::new(alphabet, word_length)?;
            let images = collect_class_images(&input, rotations, invert)?;
            let (db, conflicts) = build_word_sets(&images, &config, bins)?;
            for c in &conflicts {
                eprintln!("conflict\t{}\t{}", c.word, c.labels.join(","));
            }
            std::fs::write(output, io::write_word_sets(&db))?;
        }
        Command::Classify {
            sets,
            input,
            bins,
            threshold,
            invert,
        } => {
            let db = io::read_word_sets(&std::fs::read_to_string(sets)?)?;
            let config = SaxConfig::new(db.alphabet_size(), db.word_length())?;
            let image = read_pbm_file(&input, invert)?;
            let result = classify_image(&image, &db, &config, bins)?;
            match threshold {
                Some(max) if result.distance > max => println!("UNKNOWN"),
                _ => println!("{}\t{}", result.label, result.distance),
            }
        }
        Command::Events {
            input,
            alphabet,
            word_length,
        } => {
            let series = read_series_file(&input)?;
            let config = SaxConfig::new(alphabet, word_length)?;
            let word = sax_transform(&series, &config)?;
            for event in detect_transitions(&word) {
                println!(
                    "{}\t{}\t{}",
                    event.position,
                    letter(event.from_symbol),
                    letter(event.to_symbol)
                );
            }
        }
        Command::Bench {
            op,
            size,
            reps,
            seed,
        } => {
            let op: BenchOp = op.parse()?;
            let reports = bench::run(op, size, reps, seed)?;
            println!("#op\tsize\treps\tseed\tmin_ns\tmedian_ns\tmean_ns");
            for r in &reports {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.operation,
                    r.size,
                    r.reps,
                    r.seed,
                    r.min_ns(),
                    r.median_ns(),
                    r.mean_ns()
                );
            }
        }
    }
    Ok(())
}

/// Walks one level of class subdirectories, reads every `.pbm` file, and
/// optionally augments each image with in-plane rotations.
fn collect_class_images(
    root: &Path,
    rotations: usize,
    invert: bool,
) -> Result<Vec<(String, BinaryImage)>, Error> {
    let mut images = Vec::new();
    let mut class_dirs: Vec<PathBuf> = std::fs::read_dir(root)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    class_dirs.sort();
    for dir in class_dirs {
        let label = dir
            .file_name()
            .and_then(|n| n.to_str())
            .ok_or_else(|| Error::InvalidInput(format!("unreadable class directory name {dir:?}")))?
            .to_string();
        let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|e| e == "pbm"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(Error::InvalidInput(format!(
                "class directory {dir:?} contains no .pbm files"
            )));
        }
        for file in files {
            let image = read_pbm_file(&file, invert)?;
            for k in 0..rotations {
                let angle = TAU * k as f64 / rotations as f64;
                images.push((label.clone(), rotate_image(&image, angle)));
            }
            images.push((label.clone(), image));
        }
    }
    Ok(images)
}
