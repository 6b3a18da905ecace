//! Command-line frontend: indexing, enumeration, classification, rotations,
//! extremal search, verification suites, and DOT exports.
//!
//! Exit status: 0 on success, 1 when a verification suite or atlas check
//! finds a counterexample, 2 on usage or input errors.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fibtree::{
    apply_rotation, atlas, canonical_code, center_tree, classify, construct_good_rotation_nontos,
    extremal_cached, extremal_exhaustive, extremal_pruned, find_good_rotation, io,
    is_balanced, is_good, merrifield_simmons, rebalance_rotation, records_to_csv,
    stability_number, trees_with_alpha, verify, verify_ctpath_theorem, verify_structure_theorem,
    Method, Rotation, StructureClass, Tree,
};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fibtree", version, about = "Stable-set counts and extremal structure of trees")]
struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DumpFormat {
    Codes,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Search,
    Construct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemma1,
    Lemma7,
    Ratios,
    Structure,
    Ctpath,
    Roundtrip,
}

#[derive(Subcommand)]
enum Command {
    /// Print the stable-set count and stability number of a tree.
    Index { file: PathBuf },
    /// Stream all isomorphism classes of trees of order N.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only trees with this stability number.
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long, value_enum, default_value = "codes")]
        format: DumpFormat,
    },
    /// Report the structure class, centers, balance, and center-tree.
    Classify {
        file: PathBuf,
        /// Write a DOT rendering (centers drawn white) to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply a rotation "y x xnew" and print the resulting tree.
    Rotate {
        file: PathBuf,
        #[arg(long)]
        rot: String,
        /// Also report whether the rotation is good.
        #[arg(long)]
        check_good: bool,
    },
    /// Repeatedly apply good rotations until none is found.
    Improve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "search")]
        strategy: Strategy,
    },
    /// Minimum stable-set count and all minimizers for (n, alpha).
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value = "exhaustive")]
        method: Method,
        /// Also write the CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cache directory keyed by (n, alpha, method).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Center-trees of all extremal trees of order N, for every alpha > N/2.
    Atlas {
        #[arg(long)]
        n: usize,
        /// Write one DOT file per center-tree into this directory.
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 if a counterexample is found.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(clean) => {
            if clean {
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

fn load_tree(path: &PathBuf) -> Result<Tree> {
    io::read_tree(path).with_context(|| format!("reading {}", path.display()))
}

fn class_name(class: &StructureClass) -> &'static str {
    match class {
        StructureClass::TreeOfStars { .. } => "tree-of-stars",
        StructureClass::AlmostTreeOfStars { .. } => "almost-tree-of-stars",
        StructureClass::OddPath => "odd-path",
        StructureClass::Other => "other",
    }
}

fn join(ids: impl IntoIterator<Item = usize>) -> String {
    ids.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs a subcommand; `Ok(false)` means a verification counterexample.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Index { file } => {
            let tree = load_tree(&file)?;
            println!(
                "F={} alpha={}",
                merrifield_simmons(&tree),
                stability_number(&tree)
            );
            Ok(true)
        }
        Command::Enumerate { n, alpha, format } => {
            let stream = match alpha {
                Some(a) => trees_with_alpha(n, a)?,
                None => fibtree::enumerate_free_trees(n)?,
            };
            let mut stdout = String::new();
            for tree in stream {
                match format {
                    DumpFormat::Codes => {
                        stdout.push_str(canonical_code(&tree).as_str());
                        stdout.push('\n');
                    }
                    DumpFormat::Edges => stdout.push_str(&io::format_edge_list(&tree)),
                }
                if stdout.len() > 1 << 20 {
                    print!("{stdout}");
                    stdout.clear();
                }
            }
            print!("{stdout}");
            Ok(true)
        }
        Command::Classify { file, dot } => {
            let tree = load_tree(&file)?;
            let class = classify(&tree);
            println!("class: {}", class_name(&class));
            let centers: BTreeSet<usize> = match &class {
                StructureClass::TreeOfStars { centers } => centers.clone(),
                StructureClass::AlmostTreeOfStars { centers, exposed } => {
                    println!("exposed: {exposed}");
                    centers.clone()
                }
                _ => BTreeSet::new(),
            };
            if class.is_tree_of_stars() || matches!(class, StructureClass::AlmostTreeOfStars { .. })
            {
                println!("centers: {}", join(centers.iter().copied()));
            }
            if class.is_tree_of_stars() {
                println!("balanced: {}", is_balanced(&tree)?);
                if tree.order() >= 3 {
                    let ct = center_tree(&tree)?;
                    println!(
                        "center-tree: k={} labels={:?} edges={:?}",
                        ct.size(),
                        ct.labels(),
                        ct.edges()
                    );
                }
            }
            if let Some(out) = dot {
                std::fs::write(&out, io::tree_to_dot(&tree, &centers))
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(true)
        }
        Command::Rotate {
            file,
            rot,
            check_good,
        } => {
            let tree = load_tree(&file)?;
            let rotation: Rotation = rot.parse()?;
            let rotated = apply_rotation(&tree, rotation)?;
            if check_good {
                println!("# good: {}", is_good(&tree, rotation)?);
                println!(
                    "# F {} -> {}",
                    merrifield_simmons(&tree),
                    merrifield_simmons(&rotated)
                );
                println!(
                    "# alpha {} -> {}",
                    stability_number(&tree),
                    stability_number(&rotated)
                );
            }
            print!("{}", io::format_edge_list(&rotated));
            Ok(true)
        }
        Command::Improve { file, strategy } => {
            let mut tree = load_tree(&file)?;
            let cap = tree.order() * tree.order();
            let mut step = 0;
            loop {
                let rotation = match strategy {
                    Strategy::Search => find_good_rotation(&tree),
                    Strategy::Construct => match classify(&tree) {
                        StructureClass::TreeOfStars { .. } => {
                            if is_balanced(&tree)? {
                                None
                            } else {
                                Some(rebalance_rotation(&tree)?)
                            }
                        }
                        StructureClass::OddPath => None,
                        _ => Some(construct_good_rotation_nontos(&tree)?),
                    },
                };
                let Some(rotation) = rotation else {
                    break;
                };
                let before = merrifield_simmons(&tree);
                tree = apply_rotation(&tree, rotation)?;
                let after = merrifield_simmons(&tree);
                println!(
                    "step {step}: rotate {} {} {} F {before} -> {after}",
                    rotation.y, rotation.x, rotation.x_new
                );
                step += 1;
                if step >= cap {
                    println!("iteration cap {cap} reached");
                    break;
                }
            }
            println!(
                "final: F={} alpha={} class={}",
                merrifield_simmons(&tree),
                stability_number(&tree),
                class_name(&classify(&tree))
            );
            print!("{}", io::format_edge_list(&tree));
            Ok(true)
        }
        Command::Extremal {
            n,
            alpha,
            method,
            out,
            cache,
        } => {
            let record = match (&cache, method) {
                (Some(dir), method) => extremal_cached(n, alpha, method, dir)?,
                (None, Method::Exhaustive) => extremal_exhaustive(n, alpha)?,
                (None, Method::Pruned) => extremal_pruned(n, alpha)?,
            };
            let csv = records_to_csv(std::slice::from_ref(&record));
            print!("{csv}");
            if let Some(path) = out {
                std::fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(true)
        }
        Command::Atlas { n, dot_dir } => {
            let entries = atlas(n)?;
            let mut clean = true;
            for entry in &entries {
                println!(
                    "alpha={} f_min={} count={} heavy={}x{} light={}x{}",
                    entry.alpha,
                    entry.record.f_min,
                    entry.record.minimizers.len(),
                    entry.heavy_light.heavy_count,
                    entry.heavy_light.heavy_size,
                    entry.heavy_light.light_count,
                    entry.heavy_light.light_size,
                );
                for (i, ct) in entry.center_trees.iter().enumerate() {
                    println!(
                        "  center-tree {i}: labels={:?} edges={:?}",
                        ct.labels(),
                        ct.edges()
                    );
                    if let Some(dir) = &dot_dir {
                        std::fs::create_dir_all(dir)?;
                        let path = dir.join(format!("atlas_{n}_alpha{}_{i}.dot", entry.alpha));
                        std::fs::write(&path, io::center_tree_to_dot(ct, entry.heavy_light.heavy_size))
                            .with_context(|| format!("writing {}", path.display()))?;
                    }
                }
                for problem in entry.verify(n) {
                    clean = false;
                    println!("  CHECK FAILED: {problem}");
                }
            }
            println!(
                "atlas n={n}: {} stability numbers, checks {}",
                entries.len(),
                if clean { "pass" } else { "FAIL" }
            );
            Ok(clean)
        }
        Command::Verify { suite, max_n } => {
            if max_n == 0 {
                return Err(anyhow!("--max-n must be at least 1"));
            }
            let clean = match suite {
                Suite::Lemma1 => print_report(verify::verify_lemma1(max_n)?),
                Suite::Lemma7 => {
                    let exhaustive = verify::verify_lemma7_exhaustive(max_n.min(10))?;
                    let random = verify::verify_lemma7_random(max_n, 10_000, 0x5eed);
                    print_report(exhaustive) & print_report(random)
                }
                Suite::Ratios => {
                    print_report(verify::verify_ratios(max_n)?)
                        & print_report(verify::verify_rk_brackets(64))
                }
                Suite::Structure => {
                    let report = verify_structure_theorem(max_n)?;
                    print!("{report}");
                    report.pass()
                }
                Suite::Ctpath => {
                    let report = verify_ctpath_theorem(max_n)?;
                    print!("{report}");
                    report.pass()
                }
                Suite::Roundtrip => print_report(verify::verify_roundtrip(max_n, 100, 0x5eed)?),
            };
            Ok(clean)
        }
    }
}

fn print_report(report: fibtree::SuiteReport) -> bool {
    print!("{report}");
    report.pass()
}
