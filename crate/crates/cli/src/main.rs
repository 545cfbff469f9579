use std::fmt::Display;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperdomino::antenna::{check_unique_crossing, render_with_antennas, Antennas};
use hyperdomino::brackets::{gen0, parse_oracle, phase_oracle, BracketModel};
use hyperdomino::computing::{
    activate_seeds, dump_trace, extract_area, extract_configs, halting_machine, run_embedded, simulate,
    unary_incrementer, zigzag_machine, ActivationConfig, TMachine,
};
use hyperdomino::heptagrid::{build_patch_capped, Patch, DEFAULT_TILE_CAP};
use hyperdomino::isocline::compute_isoclines;
use hyperdomino::mantilla::{generate_mantilla, FlowerKind, Labeling};
use hyperdomino::suites::{run_suite, tables_suite, SuiteConfig, SUITES};
use hyperdomino::trilateral::{lift, lift_threads, render_grid, TrilateralScene};
use hyperdomino::wangkit::{complete, match_tiles, Bound, Region, TileSet};

mod svg;

/// Caps the number of tiles of a heptagrid patch.
const TILE_CAP_VAR: &str = "HYPERDOMINO_MAX_TILES";
/// Caps the window length of bracket models.
const LEN_CAP_VAR: &str = "HYPERDOMINO_MAX_LEN";

#[derive(Parser, Debug)]
#[command(name = "hyperdomino", version, about = "Heptagrid mantilla, brackets and interwoven-triangle simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Heptagrid patch dump.
    Grid {
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Mantilla labeling of a patch.
    Mantilla(MantillaArgs),
    /// Isocline levels and seed activation.
    Isoclines {
        #[command(flatten)]
        m: MantillaArgs,
        /// Trigger green on level 15 only.
        #[arg(long)]
        green_on_fifteen: bool,
    },
    /// Bracket model dump.
    Brackets {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Trilateral scene rendered as a signal grid.
    Lift {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Antenna propagation and gap report.
    Antenna {
        #[command(flatten)]
        scene: SceneArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Distances from tree borders to the closest seed.
    Tables {
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// Rings followed below each level-0 seed.
        #[arg(long, default_value_t = 45)]
        depth: u32,
    },
    /// Runs a Turing machine inside the computing area of a red triangle.
    Embed(EmbedArgs),
    /// Matches or completes an assignment of Wang tiles on a rectangle.
    Check {
        /// Tile set in the `wang v1` format.
        #[arg(long)]
        tiles: PathBuf,
        /// One row per line, tile names separated by blanks, `.` for free.
        #[arg(long)]
        grid: PathBuf,
        /// Completion cap.
        #[arg(long, default_value_t = 64)]
        max: usize,
    },
    /// SVG picture of one stage.
    Render {
        #[arg(long, value_enum)]
        what: Stage,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        #[arg(long, default_value = "F")]
        root: String,
        #[arg(long, default_value_t = 0)]
        petal: usize,
        #[command(flatten)]
        scene: SceneArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs a verification suite, or all of them.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stage {
    Grid,
    Mantilla,
    Isoclines,
    Lift,
    Antenna,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MantillaArgs {
    #[arg(long, default_value_t = 4)]
    radius: u32,
    /// Kind of the central flower: F, Gl, Gr or 8.
    #[arg(long, default_value = "F")]
    root: String,
    /// Index of the petal word.
    #[arg(long, default_value_t = 0)]
    petal: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Window length.
    #[arg(long = "L", default_value_t = 64)]
    len: usize,
    /// Generations after the first.
    #[arg(long, default_value_t = 3)]
    gens: u32,
    /// Phase per generation as 0/1 characters, overriding `--seed`.
    #[arg(long)]
    phases: Option<String>,
    /// Phases from the bits of this number.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle file, overriding the phases.
    #[arg(long)]
    oracle: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SceneArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Rows of a single-axis scene; by default the window length.
    #[arg(long)]
    rows: Option<usize>,
    /// Columns of a single-axis scene.
    #[arg(long)]
    cols: Option<usize>,
    /// Side-by-side copies of the model, the middle one cut at `--cut`.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    cut: Option<usize>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    /// halt, incrementer, zigzag, or a `tm v1` file.
    #[arg(long, default_value = "incrementer")]
    machine: String,
    #[arg(long, default_value = "")]
    input: String,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Generations of the scene; the area is the largest red triangle.
    #[arg(long, default_value_t = 6)]
    gens: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long)]
    radius: Option<u32>,
    #[arg(long = "L")]
    len: Option<usize>,
    #[arg(long)]
    gens: Option<u32>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    depth: Option<u32>,
}

enum Fail {
    /// Bad flags or input files: exit 2.
    Input(String),
    /// A check did not hold: exit 1.
    Check(String),
}

fn input<E: Display>(e: E) -> Fail {
    Fail::Input(e.to_string())
}

type Res = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(m)) => {
            eprintln!("hyperdomino: check-failed: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Input(m)) => {
            eprintln!("hyperdomino: input-error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Res {
    match cmd {
        Command::Grid { radius, out } => {
            let p = patch(radius)?;
            match out.format {
                Format::Text => emit(&out.output, &p.dump()),
                Format::Svg => emit(&out.output, &svg::patch(&p, |t| svg::status_fill(&p, t))),
            }
        }
        Command::Mantilla(a) => {
            let (p, lab) = mantilla(&a)?;
            match a.out.format {
                Format::Text => emit(&a.out.output, &lab.dump()),
                Format::Svg => emit(&a.out.output, &svg::patch(&p, |t| svg::flower_fill(&lab, t))),
            }
        }
        Command::Isoclines { m, green_on_fifteen } => {
            let (p, lab) = mantilla(&m)?;
            let iso = compute_isoclines(&p, &lab).map_err(input)?;
            if m.out.format == Format::Svg {
                return emit(&m.out.output, &svg::patch(&p, |t| svg::level_fill(iso.level_of(t))));
            }
            let seeds = activate_seeds(&p, &lab, &iso, ActivationConfig { green_on_fifteen_only: green_on_fifteen })
                .map_err(input)?;
            // the labeling dump with each tile's level appended
            let dump = lab.dump();
            let mut lines = dump.lines();
            let mut s = format!("{}\n", lines.next().unwrap_or_default());
            for (t, l) in p.tiles().zip(lines) {
                s += &format!("{l} iso={}\n", iso.level_of(t));
            }
            for st in &seeds.seeds {
                let act = match st.active {
                    None => "none".to_string(),
                    Some(a) => format!("{a:?}"),
                };
                let greens: Vec<String> = st.green_rings.iter().map(u32::to_string).collect();
                s += &format!(
                    "seed {} ring={} level={} active={act} green={}\n",
                    st.seed,
                    st.ring,
                    st.level,
                    if greens.is_empty() { "-".to_string() } else { greens.join(",") }
                );
            }
            emit(&m.out.output, &s)
        }
        Command::Brackets { model, out } => {
            if out.format == Format::Svg {
                return Err(Fail::Input("brackets have no svg form".into()));
            }
            emit(&out.output, &model_of(&model)?.dump())
        }
        Command::Lift { scene, out } => {
            let s = scene_of(&scene)?;
            let g = render_grid(&s).map_err(input)?;
            match out.format {
                Format::Text => emit(&out.output, &g.dump()),
                Format::Svg => emit(&out.output, &svg::scene(&s, &g)),
            }
        }
        Command::Antenna { scene, out } => {
            let s = scene_of(&scene)?;
            let a = render_with_antennas(&s).map_err(input)?;
            match out.format {
                Format::Svg => emit(&out.output, &svg::scene(&s, &a.grid)),
                Format::Text => {
                    let (text, bad) = antenna_report(&a);
                    emit(&out.output, &text)?;
                    if bad > 0 {
                        return Err(Fail::Check(format!("{bad} gaps break the classification")));
                    }
                    Ok(())
                }
            }
        }
        Command::Tables { radius, depth } => {
            let (rep, text) = tables_suite(radius, depth);
            print!("{text}{}", rep.render());
            if rep.passed() {
                Ok(())
            } else {
                Err(Fail::Check(format!("tables differ: {}", rep.failures().join("; "))))
            }
        }
        Command::Embed(a) => embed(&a),
        Command::Check { tiles, grid, max } => check(&tiles, &grid, max),
        Command::Render { what, radius, root, petal, scene, output } => {
            let m = MantillaArgs { radius, root, petal, out: Output { format: Format::Svg, output: None } };
            let text = match what {
                Stage::Grid => {
                    let p = patch(radius)?;
                    svg::patch(&p, |t| svg::status_fill(&p, t))
                }
                Stage::Mantilla => {
                    let (p, lab) = mantilla(&m)?;
                    svg::patch(&p, |t| svg::flower_fill(&lab, t))
                }
                Stage::Isoclines => {
                    let (p, lab) = mantilla(&m)?;
                    let iso = compute_isoclines(&p, &lab).map_err(input)?;
                    svg::patch(&p, |t| svg::level_fill(iso.level_of(t)))
                }
                Stage::Lift => {
                    let s = scene_of(&scene)?;
                    svg::scene(&s, &render_grid(&s).map_err(input)?)
                }
                Stage::Antenna => {
                    let s = scene_of(&scene)?;
                    svg::scene(&s, &render_with_antennas(&s).map_err(input)?.grid)
                }
            };
            emit(&output, &text)
        }
        Command::Verify(a) => verify(&a),
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> Res {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Input(format!("{}: {e}", p.display()))),
        None => {
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn cap(var: &str, default: usize) -> Result<usize, Fail> {
    match std::env::var(var) {
        Ok(v) => v.parse().map_err(|_| Fail::Input(format!("{var}={v} is not a number"))),
        Err(_) => Ok(default),
    }
}

fn patch(radius: u32) -> Result<Patch, Fail> {
    build_patch_capped(radius, cap(TILE_CAP_VAR, DEFAULT_TILE_CAP)?).map_err(input)
}

fn mantilla(a: &MantillaArgs) -> Result<(Patch, Labeling), Fail> {
    let kind: FlowerKind = a.root.parse().map_err(input)?;
    let p = patch(a.radius)?;
    let lab = generate_mantilla(&p, kind, &[a.petal]).map_err(input)?;
    Ok((p, lab))
}

fn model_of(a: &ModelArgs) -> Result<BracketModel, Fail> {
    let limit = cap(LEN_CAP_VAR, 1 << 16)?;
    if a.len > limit {
        return Err(Fail::Input(format!("L={} exceeds the cap {limit}", a.len)));
    }
    let oracle = match (&a.oracle, &a.phases) {
        (Some(path), _) => parse_oracle(&read(path)?).map_err(input)?,
        (None, Some(bits)) => {
            let phases = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Fail::Input(format!("phase `{c}` is not 0 or 1"))),
                })
                .collect::<Result<Vec<bool>, Fail>>()?;
            phase_oracle(a.len, &phases).map_err(input)?
        }
        (None, None) => {
            let phases: Vec<bool> = (0..a.gens).map(|i| a.seed >> i & 1 == 1).collect();
            phase_oracle(a.len, &phases).map_err(input)?
        }
    };
    gen0(a.len).and_then(|m| m.run(&oracle)).map_err(input)
}

fn scene_of(a: &SceneArgs) -> Result<TrilateralScene, Fail> {
    let m = model_of(&a.model)?;
    if a.threads <= 1 && a.cut.is_none() {
        let rows = a.rows.unwrap_or(a.model.len);
        let cols = a.cols.unwrap_or(a.model.len / 2 + 8);
        return lift(&m, rows, cols).map_err(input);
    }
    let mut cuts = vec![None; a.threads.max(1)];
    let mid = cuts.len() / 2;
    cuts[mid] = a.cut;
    lift_threads(&m, &cuts).map_err(input)
}

fn antenna_report(a: &Antennas) -> (String, usize) {
    let mut s = format!("antenna v1 rows={} cols={} gaps={}\n", a.grid.rows, a.grid.cols, a.gaps.len());
    let mut bad = 0;
    for g in &a.gaps {
        let join = g.join.map_or("-".to_string(), |j| j.to_string());
        let cross = check_unique_crossing(g);
        s += &format!(
            "gap gen={} row={} a={} b={} c={} d={} join={join} eldest={} crossings={} crossing_remark={}",
            g.generation,
            g.row,
            g.a,
            g.b,
            g.c,
            g.d,
            g.eldest.len(),
            cross.count,
            if cross.holds(g.generation) { "holds" } else { "fails" },
        );
        if g.is_clean() {
            s += " clean\n";
        } else {
            bad += 1;
            s += &format!(" violations={}\n", g.violations.join("|"));
        }
    }
    (s, bad)
}

fn machine(name: &str) -> Result<TMachine, Fail> {
    Ok(match name {
        "halt" => halting_machine(),
        "incrementer" => unary_incrementer(),
        "zigzag" => zigzag_machine(),
        path => TMachine::parse(&read(Path::new(path))?).map_err(input)?,
    })
}

fn embed(a: &EmbedArgs) -> Res {
    let tm = machine(&a.machine)?;
    let input_word = tm.word(&a.input).ok_or_else(|| Fail::Input(format!("input {:?} is not over the alphabet", a.input)))?;
    let len = 1usize << (a.gens + 3);
    let phases = vec![false; a.gens as usize];
    let m = phase_oracle(len, &phases).and_then(|o| gen0(len)?.run(&o)).map_err(input)?;
    let s = lift(&m, len, len / 2 + 8).map_err(input)?;
    let g = render_grid(&s).map_err(input)?;
    let (k, _) = s
        .triangles()
        .filter(|(_, t)| t.colour == hyperdomino::brackets::Colour::Red && t.basis_row < s.rows)
        .max_by_key(|(_, t)| t.generation)
        .ok_or_else(|| Fail::Input("no red triangle in the scene".into()))?;
    let area = extract_area(&s, &g, k).map_err(input)?;
    let run = run_embedded(&area, &tm, &input_word, a.steps);
    print!("{}", dump_trace(&area, &run, &tm, &input_word));
    let got = extract_configs(&run, &input_word);
    let want = simulate(&tm, &input_word, a.steps);
    if got != want {
        let at = got.iter().zip(&want).position(|(x, y)| x != y).unwrap_or(got.len().min(want.len()));
        return Err(Fail::Check(format!("embedded run departs from the simulation at step {at}")));
    }
    if run.exhausted {
        return Err(Fail::Check(format!("area exhausted after {} steps", run.steps)));
    }
    Ok(())
}

fn check(tiles: &Path, grid: &Path, max: usize) -> Res {
    let set = TileSet::parse(&read(tiles)?).map_err(input)?;
    if set.arity() != 4 {
        return Err(Fail::Input("check works on square tiles".into()));
    }
    let text = read(grid)?;
    let rows: Vec<Vec<&str>> =
        text.lines().map(|l| l.split_whitespace().collect::<Vec<_>>()).filter(|r| !r.is_empty()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Fail::Input("rows of unequal length".into()));
    }
    let mut assignment = Vec::new();
    for name in rows.iter().flatten() {
        assignment.push(match *name {
            "." => None,
            n => Some(
                (0..set.len())
                    .find(|&i| set.name(i) == n)
                    .ok_or_else(|| Fail::Input(format!("unknown tile `{n}`")))?,
            ),
        });
    }
    let region = Region::grid(rows.len(), cols);
    if assignment.iter().all(Option::is_some) {
        let conflicts = match_tiles(&region, &assignment, &set).map_err(input)?;
        for c in &conflicts {
            println!("conflict {c:?}");
        }
        if !conflicts.is_empty() {
            return Err(Fail::Check(format!("{} conflicts", conflicts.len())));
        }
        println!("match ok");
        return Ok(());
    }
    let found = complete(&region, &assignment, &set, Bound { completions: max, sites: region.len() })
        .map_err(|e| Fail::Check(e.to_string()))?;
    println!("completions {}", found.len());
    for f in &found {
        let names: Vec<&str> = f.iter().map(|&i| set.name(i)).collect();
        for row in names.chunks(cols) {
            println!("{}", row.join(" "));
        }
        println!();
    }
    if found.is_empty() {
        return Err(Fail::Check("no completion".into()));
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Res {
    let d = SuiteConfig::default();
    let cfg = SuiteConfig {
        radius: a.radius.unwrap_or(d.radius),
        len: a.len.unwrap_or(d.len),
        gens: a.gens.unwrap_or(d.gens),
        window: a.window.unwrap_or(d.window),
        depth: a.depth.unwrap_or(d.depth),
    };
    let names: Vec<&str> = if a.suite == "all" { SUITES.to_vec() } else { vec![a.suite.as_str()] };
    let mut failed = Vec::new();
    for name in names {
        let rep = run_suite(name, cfg)
            .ok_or_else(|| Fail::Input(format!("unknown suite `{name}`; known: {}", SUITES.join(", "))))?;
        print!("{}", rep.render());
        failed.extend(rep.failures().into_iter().map(|f| format!("{name}: {f}")));
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Check(failed.join("; ")))
    }
}
