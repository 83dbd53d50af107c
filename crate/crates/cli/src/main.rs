//! `ca2d` — command-line front end for the two-dimensional linear
//! cellular automaton engine: stepping, rule matrices, reversibility
//! reports, image transforms and gathering sweeps over portable bitmaps.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ca2d::bitmat::BitMatrix;
use ca2d::pbm::{read_image, write_image, ImageFormat};
use ca2d::reversibility::{half_plane_rules, reversibility_report, unipotent_rules};
use ca2d::rulemat::{
    apply, block_rule_matrix, hybrid_matrix, hybrid_matrix_from_rules, rule_matrix,
    to_dependency_map, DependencyMap,
};
use ca2d::sweep::{metrics, sweep_iteration, SweepConfig, SweepMode};
use ca2d::transforms::{
    replicate_prediction, replication_check, seed, translate, Direction, FourRegionOp,
    RegionPartition, SeedShape,
};
use ca2d::{evolve, step_hybrid, Grid, HybridSpec, Rule};

#[derive(Parser)]
#[command(
    name = "ca2d",
    version,
    about = "Two-dimensional linear cellular automata over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a uniform or hybrid rule to an image for a number of steps.
    Step(StepArgs),
    /// Emit the rule matrix of a uniform or hybrid rule.
    Matrix(MatrixArgs),
    /// Rank-sweep all 512 rules and report the always-reversible set.
    Verify(VerifyArgs),
    /// Image transforms: translation, replication, zooming, thickening.
    Transform(TransformArgs),
    /// Gather every set cell toward a destination point.
    Sweep(SweepArgs),
    /// Print an image as ASCII.
    Render(RenderArgs),
    /// Generate seed images.
    Gen(GenArgs),
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Step(args) => cmd_step(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Render(args) => cmd_render(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

// ---------------------------------------------------------------- step

#[derive(Args)]
struct StepArgs {
    /// Input image (PBM, P1 or P4).
    #[arg(long, short)]
    input: PathBuf,
    /// Output image path.
    #[arg(long, short)]
    output: PathBuf,
    /// Uniform rule number (0..=511).
    #[arg(long, conflicts_with_all = ["rules_file", "matrix_file"])]
    rule: Option<Rule>,
    /// Per-cell rule assignment: one line per row, rule numbers separated
    /// by spaces.
    #[arg(long, conflicts_with = "matrix_file")]
    rules_file: Option<PathBuf>,
    /// Saved rule matrix (text format) to apply.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    /// Number of steps.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value = "p1")]
    format: ImageFormat,
}

fn cmd_step(args: StepArgs) -> Result<()> {
    let mut grid =
        read_image(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    if let Some(rule) = args.rule {
        grid = evolve(&grid, rule, args.steps);
    } else if let Some(path) = &args.rules_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let spec =
            HybridSpec::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
        for _ in 0..args.steps {
            grid = step_hybrid(&grid, &spec)?;
        }
    } else if let Some(path) = &args.matrix_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mat =
            BitMatrix::parse_text(&text).with_context(|| format!("parsing {}", path.display()))?;
        for _ in 0..args.steps {
            grid = apply(&mat, &grid)?;
        }
    } else {
        bail!("one of --rule, --rules-file or --matrix-file is required");
    }
    write_image(&grid, &args.output, args.format)
        .with_context(|| format!("writing {}", args.output.display()))?;
    Ok(())
}

// -------------------------------------------------------------- matrix

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixEmit {
    /// Dense 0/1 matrix text.
    Matrix,
    /// Per-cell dependency lists (1-based flat indices).
    Deps,
}

#[derive(Args)]
struct MatrixArgs {
    /// Grid rows.
    #[arg(short)]
    m: usize,
    /// Grid columns.
    #[arg(short)]
    n: usize,
    /// Uniform rule number.
    #[arg(long, conflicts_with_all = ["rules_file", "deps_file"])]
    rule: Option<Rule>,
    /// Assemble the matrix from its block tri-diagonal form instead of the
    /// per-cell construction (the results are identical).
    #[arg(long, requires = "rule")]
    block: bool,
    /// Per-cell rule assignment file.
    #[arg(long, conflicts_with = "deps_file")]
    rules_file: Option<PathBuf>,
    /// Per-cell dependency list file.
    #[arg(long)]
    deps_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MatrixEmit::Matrix)]
    emit: MatrixEmit,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn cmd_matrix(args: MatrixArgs) -> Result<()> {
    let (m, n) = (args.m, args.n);
    let mat = if let Some(rule) = args.rule {
        if args.block {
            block_rule_matrix(rule, m, n)
        } else {
            rule_matrix(rule, m, n)
        }
    } else if let Some(path) = &args.rules_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let spec = HybridSpec::parse(&text)?;
        if (spec.rows(), spec.cols()) != (m, n) {
            bail!(
                "rules file is {}x{}, expected {m}x{n}",
                spec.rows(),
                spec.cols()
            );
        }
        hybrid_matrix_from_rules(&spec)
    } else if let Some(path) = &args.deps_file {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let map = DependencyMap::parse(&text, m * n)?;
        hybrid_matrix(&map, m, n)?
    } else {
        bail!("one of --rule, --rules-file or --deps-file is required");
    };
    let text = match args.emit {
        MatrixEmit::Matrix => mat.to_text(),
        MatrixEmit::Deps => to_dependency_map(&mat, m, n)?.to_text(),
    };
    emit(args.output.as_deref(), &text)
}

// -------------------------------------------------------------- verify

#[derive(Args)]
struct VerifyArgs {
    /// Inclusive size range for both dimensions, e.g. 2..6.
    #[arg(long, default_value = "2..6", value_parser = parse_size_range)]
    sizes: RangeInclusive<usize>,
    /// Write the full per-rule rank table here.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let report = reversibility_report(args.sizes.clone(), args.sizes.clone());
    let computed = report.always_invertible();
    let classic = unipotent_rules();
    let predicted = half_plane_rules();

    if let Some(path) = &args.report {
        fs::write(path, report.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }

    println!(
        "sizes {}..{} per dimension: {} rules invertible at every size",
        args.sizes.start(),
        args.sizes.end(),
        computed.len()
    );
    let missing: Vec<&Rule> = classic.iter().filter(|r| !computed.contains(r)).collect();
    println!(
        "classic 31-rule reversible list: {}",
        if missing.is_empty() {
            "all contained".to_string()
        } else {
            format!("MISSING {missing:?}")
        }
    );
    let extras: Vec<String> = computed
        .iter()
        .filter(|r| !classic.contains(r))
        .map(|r| r.to_string())
        .collect();
    println!(
        "beyond the classic list: {} rules with one-sided (half-plane) dependencies: {}",
        extras.len(),
        extras.join(" ")
    );
    let consistent = computed == predicted && missing.is_empty();
    println!(
        "structural prediction (self + dependencies inside an open half-plane): {}",
        if computed == predicted {
            "matches exactly"
        } else {
            "MISMATCH"
        }
    );
    if !consistent {
        bail!("reversibility verification failed");
    }
    Ok(())
}

fn parse_size_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: usize = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo < 1 || hi < lo {
        return Err(format!("degenerate range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

// ----------------------------------------------------------- transform

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeKind {
    Circle,
    Square,
    Rect,
    Plus,
}

#[derive(Args)]
struct SourceArgs {
    /// Input image; alternative to --shape.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Generate a seed shape instead of reading a file.
    #[arg(long, value_enum, conflicts_with = "input")]
    shape: Option<ShapeKind>,
    /// Canvas size ROWSxCOLS for generated shapes, e.g. 100x100.
    #[arg(long, value_parser = parse_size)]
    size: Option<(usize, usize)>,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long)]
    side: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    breadth: Option<usize>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<Grid> {
        if let Some(path) = &self.input {
            return read_image(path).with_context(|| format!("reading {}", path.display()));
        }
        let Some(kind) = self.shape else {
            bail!("either --input or --shape is required");
        };
        let (rows, cols) = self.size.context("--shape requires --size ROWSxCOLS")?;
        let need = |value: Option<usize>, flag: &str| {
            value.with_context(|| format!("shape requires --{flag}"))
        };
        let shape = match kind {
            ShapeKind::Circle => SeedShape::Circle {
                radius: need(self.radius, "radius")?,
            },
            ShapeKind::Square => SeedShape::Square {
                side: need(self.side, "side")?,
            },
            ShapeKind::Rect => SeedShape::Rectangle {
                height: need(self.height, "height")?,
                width: need(self.width, "width")?,
            },
            ShapeKind::Plus => SeedShape::Plus {
                length: need(self.length, "length")?,
                breadth: need(self.breadth, "breadth")?,
            },
        };
        Ok(seed(&shape, rows, cols)?)
    }
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (rows, cols) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
    let rows = rows
        .trim()
        .parse()
        .map_err(|_| format!("bad row count {rows:?}"))?;
    let cols = cols
        .trim()
        .parse()
        .map_err(|_| format!("bad column count {cols:?}"))?;
    Ok((rows, cols))
}

#[derive(Args)]
struct OutputArgs {
    /// Output image path.
    #[arg(long, short)]
    output: PathBuf,
    #[arg(long, default_value = "p1")]
    format: ImageFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    #[value(alias = "h")]
    Horizontal,
    #[value(alias = "v")]
    Vertical,
}

#[derive(Args)]
struct SplitArgs {
    /// Row of the horizontal region split; grid center when omitted.
    #[arg(long)]
    split_row: Option<usize>,
    /// Column of the vertical region split; grid center when omitted.
    #[arg(long)]
    split_col: Option<usize>,
}

impl SplitArgs {
    fn partition(&self, grid: &Grid) -> RegionPartition {
        let center = RegionPartition::centered(grid.rows(), grid.cols());
        RegionPartition {
            split_row: self.split_row.unwrap_or(center.split_row),
            split_col: self.split_col.unwrap_or(center.split_col),
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    #[command(subcommand)]
    op: TransformOp,
}

#[derive(Subcommand)]
enum TransformOp {
    /// Rigid shift by repeated application of a group-1 rule.
    Translate {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        direction: Direction,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a rule for 2^k steps, producing one copy per dependency.
    Replicate {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        rule: Rule,
        #[arg(long, default_value_t = 5)]
        k: u32,
        /// Verify that the copies stay in frame and do not overlap.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Grow a centered shape by one cell on every side.
    ZoomIn {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Shrink a centered shape by one cell on every side.
    ZoomOut {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Widen (horizontal) or heighten (vertical) a centered shape by two.
    Thicken {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_enum, default_value_t = Axis::Horizontal)]
        axis: Axis,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Narrow (horizontal) or flatten (vertical) a centered shape by two.
    Thin {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, value_enum, default_value_t = Axis::Horizontal)]
        axis: Axis,
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Arbitrary four-region procedure: rules A,B applied left/right, then
    /// C,D applied top/bottom.
    Hybrid {
        #[command(flatten)]
        src: SourceArgs,
        /// Four rule numbers A,B,C,D.
        #[arg(long, value_parser = parse_rule_quad)]
        rules: (u16, u16, u16, u16),
        #[command(flatten)]
        split: SplitArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn parse_rule_quad(s: &str) -> Result<(u16, u16, u16, u16), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four rule numbers A,B,C,D, got {s:?}"));
    }
    let mut values = [0u16; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        let value: u16 = part
            .trim()
            .parse()
            .map_err(|_| format!("bad rule number {part:?}"))?;
        if value >= 512 {
            return Err(format!("rule number {value} out of range 0..=511"));
        }
        *slot = value;
    }
    Ok((values[0], values[1], values[2], values[3]))
}

fn cmd_transform(args: TransformArgs) -> Result<()> {
    match args.op {
        TransformOp::Translate {
            src,
            direction,
            steps,
            out,
        } => {
            let grid = src.resolve()?;
            write_output(&translate(&grid, direction, steps), &out)
        }
        TransformOp::Replicate {
            src,
            rule,
            k,
            check,
            out,
        } => {
            let grid = src.resolve()?;
            if check {
                let result = replication_check(&grid, rule, k);
                if !result.copies_in_bounds {
                    bail!("2^{k} steps push copies of the image out of frame");
                }
                if !result.copies_disjoint {
                    bail!("copies overlap after 2^{k} steps; use a larger frame or k");
                }
                let predicted = replicate_prediction(&grid, rule, k);
                let evolved = evolve(&grid, rule, 1usize << k);
                if predicted != evolved {
                    bail!("evolution disagrees with the translated-copy prediction");
                }
                eprintln!(
                    "check: {} disjoint in-frame copies, evolution matches prediction",
                    rule.group()
                );
            }
            write_output(&evolve(&grid, rule, 1usize << k), &out)
        }
        TransformOp::ZoomIn { src, split, out } => {
            let grid = src.resolve()?;
            let part = split.partition(&grid);
            write_output(&FourRegionOp::ZoomIn.apply(&grid, part)?, &out)
        }
        TransformOp::ZoomOut { src, split, out } => {
            let grid = src.resolve()?;
            let part = split.partition(&grid);
            write_output(&FourRegionOp::ZoomOut.apply(&grid, part)?, &out)
        }
        TransformOp::Thicken {
            src,
            axis,
            split,
            out,
        } => {
            let grid = src.resolve()?;
            let part = split.partition(&grid);
            let op = match axis {
                Axis::Horizontal => FourRegionOp::ThickenHorizontal,
                Axis::Vertical => FourRegionOp::ThickenVertical,
            };
            write_output(&op.apply(&grid, part)?, &out)
        }
        TransformOp::Thin {
            src,
            axis,
            split,
            out,
        } => {
            let grid = src.resolve()?;
            let part = split.partition(&grid);
            let op = match axis {
                Axis::Horizontal => FourRegionOp::ThinHorizontal,
                Axis::Vertical => FourRegionOp::ThinVertical,
            };
            write_output(&op.apply(&grid, part)?, &out)
        }
        TransformOp::Hybrid {
            src,
            rules,
            split,
            out,
        } => {
            let grid = src.resolve()?;
            let part = split.partition(&grid);
            let (a, b, c, d) = rules;
            let result = ca2d::transforms::hybrid4(
                &grid,
                Rule::new(a)?,
                Rule::new(b)?,
                Rule::new(c)?,
                Rule::new(d)?,
                part,
            )?;
            write_output(&result, &out)
        }
    }
}

// --------------------------------------------------------------- sweep

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Guarded,
    Xor,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: PathBuf,
    /// Destination point ROW,COL.
    #[arg(long, value_parser = parse_dest)]
    dest: (usize, usize),
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Guarded)]
    mode: ModeArg,
    /// Transcribe the published diagonal region/rule pairing literally
    /// instead of the toward-axis pairing.
    #[arg(long)]
    literal_diagonals: bool,
    /// Dump one image per iteration plus metrics.tsv into this directory.
    #[arg(long)]
    frames: Option<PathBuf>,
    /// Write the per-iteration metrics table here.
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[arg(long, default_value = "p1")]
    format: ImageFormat,
}

fn parse_dest(s: &str) -> Result<(usize, usize), String> {
    let (row, col) = s
        .split_once(',')
        .ok_or_else(|| format!("expected ROW,COL, got {s:?}"))?;
    let row = row.trim().parse().map_err(|_| format!("bad row {row:?}"))?;
    let col = col
        .trim()
        .parse()
        .map_err(|_| format!("bad column {col:?}"))?;
    Ok((row, col))
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let grid =
        read_image(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let cfg = SweepConfig {
        dest: args.dest,
        angle_deg: 45,
        iterations: args.iters,
        mode: match args.mode {
            ModeArg::Guarded => SweepMode::Guarded,
            ModeArg::Xor => SweepMode::Xor,
        },
        literal_diagonals: args.literal_diagonals,
    };
    if let Some(dir) = &args.frames {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let mut table = String::from("iteration\tpopulation\tdistance\tradius\n");
    let mut current = grid;
    for iteration in 0..=args.iters {
        if iteration > 0 {
            current = sweep_iteration(&current, &cfg)?;
        }
        let m = metrics(&current, &cfg);
        table.push_str(&format!(
            "{iteration}\t{}\t{}\t{}\n",
            m.population, m.total_distance, m.radius
        ));
        if let Some(dir) = &args.frames {
            write_image(
                &current,
                dir.join(format!("frame-{iteration:04}.pbm")),
                args.format,
            )?;
        }
    }
    if let Some(dir) = &args.frames {
        fs::write(dir.join("metrics.tsv"), &table)?;
    }
    if let Some(path) = &args.metrics {
        fs::write(path, &table).with_context(|| format!("writing {}", path.display()))?;
    }
    write_image(&current, &args.output, args.format)
        .with_context(|| format!("writing {}", args.output.display()))?;
    Ok(())
}

// -------------------------------------------------------- render / gen

#[derive(Args)]
struct RenderArgs {
    #[arg(long, short)]
    input: PathBuf,
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let grid =
        read_image(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let mut text = String::with_capacity((grid.cols() + 1) * grid.rows());
    for i in 0..grid.rows() {
        for j in 0..grid.cols() {
            text.push(if grid.get(i as isize, j as isize) {
                '#'
            } else {
                '.'
            });
        }
        text.push('\n');
    }
    print!("{text}");
    Ok(())
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    what: GenOp,
}

#[derive(Subcommand)]
enum GenOp {
    /// Rasterize a centered seed shape.
    Shape {
        #[command(flatten)]
        src: SourceArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Deterministic pseudo-random fill (SplitMix64).
    Random {
        #[arg(long, value_parser = parse_size)]
        size: (usize, usize),
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    match args.what {
        GenOp::Shape { src, out } => {
            if src.input.is_some() {
                bail!("gen shape takes --shape, not --input");
            }
            write_output(&src.resolve()?, &out)
        }
        GenOp::Random {
            size,
            density,
            seed,
            out,
        } => {
            let (rows, cols) = size;
            write_output(&Grid::random(rows, cols, density, seed)?, &out)
        }
    }
}

// ------------------------------------------------------------- helpers

fn write_output(grid: &Grid, out: &OutputArgs) -> Result<()> {
    write_image(grid, &out.output, out.format)
        .with_context(|| format!("writing {}", out.output.display()))?;
    Ok(())
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
