use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use supertree::gen::{generate_tree, random_labels, TreeKind};
use supertree::TreeFile;
use supertree_cli::bench::{self, BenchConfig, Structure};
use supertree_cli::exec::{self, Options, RunError};
use supertree_cli::script::{parse_script, Line, Mode};

#[derive(Parser)]
#[command(
    name = "supertree",
    version,
    about = "Tree path queries over super-node decompositions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TreeScript {
    tree: PathBuf,
    script: PathBuf,
    /// Group height; defaults to ceil(sqrt(n))
    #[arg(long)]
    h: Option<usize>,
    /// Diff every op against a brute-force reference
    #[arg(long)]
    oracle: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the super-node decomposition of a tree
    Decompose {
        tree: PathBuf,
        #[arg(long)]
        h: Option<usize>,
    },
    /// Path LCA, sum queries and add updates (LCA, PQ, PU, POINTQ, POINTU)
    Paths(TreeScript),
    /// Per-color path sums and path recoloring (CQ, CU)
    Colors(TreeScript),
    /// Ancestor/descendant color pair counts (APQ)
    Ancestors(TreeScript),
    /// Print build counters of the ancestor color index
    AncestorIndex {
        tree: PathBuf,
        #[arg(long)]
        h: Option<usize>,
    },
    /// Rebuild-on-threshold search tree (INS, DEL, HAS, REBUILD)
    Bst {
        script: PathBuf,
        /// Mark deleted keys instead of unlinking them
        #[arg(long)]
        logical: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Lists with h-skip links (NEWLIST, ENDP, DIST, CAT, SPLIT)
    Hlist {
        script: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Random ops on a generated instance, one CSV row of step counts per op
    Bench {
        #[arg(long, default_value = "random-attach")]
        kind: TreeKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        ops: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// paths, colors, ancestors, bst or hlist
        #[arg(long, default_value = "paths")]
        structure: Structure,
    },
    /// Write a generated tree file to stdout
    Gen {
        #[arg(long)]
        kind: TreeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draw values uniformly from -V..=V
        #[arg(long)]
        max_value: Option<i64>,
        /// Draw colors uniformly from 0..P
        #[arg(long)]
        palette: Option<i64>,
    },
}

fn read(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path)
        .map_err(|e| RunError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_tree(path: &Path) -> Result<TreeFile, RunError> {
    TreeFile::parse(&read(path)?).map_err(|e| {
        RunError::Io(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("{}: {e}", path.display()),
        ))
    })
}

fn read_script(path: &Path, mode: Mode, nodes: Option<usize>) -> Result<Vec<Line>, RunError> {
    parse_script(&read(path)?, mode, nodes).map_err(|e| {
        RunError::Io(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("{}: {e}", path.display()),
        ))
    })
}

fn tree_script(
    a: &TreeScript,
    mode: Mode,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), RunError> {
    let tf = read_tree(&a.tree)?;
    let script = read_script(&a.script, mode, Some(tf.tree.len()))?;
    let opt = Options {
        h: a.h,
        oracle: a.oracle,
        logical: false,
    };
    match mode {
        Mode::Paths => exec::paths(&tf, &script, &opt, out, err),
        Mode::Colors => exec::colors(&tf, &script, &opt, out, err),
        Mode::Ancestors => exec::ancestors(&tf, &script, &opt, out, err),
        Mode::Bst | Mode::HList => unreachable!(),
    }
}

fn run(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), RunError> {
    match cmd {
        Cmd::Decompose { tree, h } => exec::decompose(
            &read_tree(&tree)?,
            &Options {
                h,
                ..Options::default()
            },
            out,
        ),
        Cmd::AncestorIndex { tree, h } => exec::ancestor_index(
            &read_tree(&tree)?,
            &Options {
                h,
                ..Options::default()
            },
            out,
        ),
        Cmd::Paths(a) => tree_script(&a, Mode::Paths, out, err),
        Cmd::Colors(a) => tree_script(&a, Mode::Colors, out, err),
        Cmd::Ancestors(a) => tree_script(&a, Mode::Ancestors, out, err),
        Cmd::Bst {
            script,
            logical,
            oracle,
        } => {
            let s = read_script(&script, Mode::Bst, None)?;
            let opt = Options {
                h: None,
                oracle,
                logical,
            };
            exec::bst(&s, &opt, out, err)
        }
        Cmd::Hlist { script, h, oracle } => {
            let s = read_script(&script, Mode::HList, None)?;
            let opt = Options {
                h: Some(h),
                oracle,
                logical: false,
            };
            exec::hlist(h, &s, &opt, out, err)
        }
        Cmd::Bench {
            kind,
            n,
            h,
            ops,
            seed,
            structure,
        } => {
            if n == 0 || h == Some(0) {
                return Err(RunError::Io(io::Error::new(
                    io::ErrorKind::InvalidInput,
                    "--n and --h must be at least 1",
                )));
            }
            let cfg = BenchConfig {
                kind,
                n,
                h,
                ops,
                seed,
                structure,
            };
            Ok(bench::run(&cfg, out)?)
        }
        Cmd::Gen {
            kind,
            n,
            seed,
            max_value,
            palette,
        } => {
            if n == 0 {
                return Err(RunError::Io(io::Error::new(
                    io::ErrorKind::InvalidInput,
                    "--n must be at least 1",
                )));
            }
            let mut tf = TreeFile::new(generate_tree(kind, n, seed));
            if let Some(v) = max_value {
                tf.values = random_labels(n, -v, v + 1, seed ^ 1);
            }
            if let Some(p) = palette.filter(|&p| p > 0) {
                tf.colors = random_labels(n, 0, p, seed ^ 2);
            }
            Ok(out.write_all(tf.to_text().as_bytes())?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let result = run(cli.cmd, &mut out, &mut err);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
