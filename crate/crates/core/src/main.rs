use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use kirmig::forward::{
    read_frames, synthesize_frames, write_frames, FieldModel, Quadrature, ScatteringFrame,
};
use kirmig::imaging::{map_to_pgm, write_map_csv, Imager, QuadraticForm, SteeringMode};
use kirmig::oracle::{
    compare_maps, on_target_magnitude, structure_map, write_report_csv, StructureParams,
};
use kirmig::pipeline::{
    imager_for, run_tracking_on_frames, scenario_warnings, simulate, sweep, write_metrics_csv,
    write_sweep_csv, write_tracks_csv, Scenario,
};

#[derive(Parser)]
#[command(
    name = "kirmig",
    version,
    about = "Kirchhoff migration imaging and tracking for circular antenna arrays"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesise scattering frames for a scenario.
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Image every frame to a heatmap CSV (and optionally a PGM).
    Image {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        frames: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        pgm: bool,
        /// Write unnormalised values instead of dividing by the frame maximum.
        #[arg(long)]
        raw: bool,
    },
    /// Track objects through frames (simulated when --frames is absent).
    Track {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        frames: Option<PathBuf>,
        #[arg(long)]
        tracks: PathBuf,
        #[arg(long)]
        metrics: PathBuf,
    },
    /// Compare the matrix engine with the Bessel-series evaluation.
    Oracle {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Frame time; defaults to the first scenario time.
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, value_enum, default_value_t = PathLoss::Auto)]
        path_loss: PathLoss,
    },
    /// Repeat the scenario over several array sizes.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 6, 8, 10, 12, 14, 16])]
        n: Vec<usize>,
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PathLoss {
    /// On when the background is lossy.
    Auto,
    On,
    Off,
}

fn load(path: &Path) -> Result<Scenario> {
    let scenario = Scenario::from_path(path)
        .with_context(|| format!("reading scenario {}", path.display()))?;
    for w in scenario_warnings(&scenario)? {
        eprintln!("warning: {w}");
    }
    Ok(scenario)
}

fn load_frames(path: &Path) -> Result<Vec<ScatteringFrame>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_frames(BufReader::new(file)).with_context(|| format!("reading frames {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { scenario, out } => {
            let s = load(&scenario)?;
            let frames = simulate(&s)?;
            write_frames(create(&out)?, &frames)?;
        }
        Command::Image {
            scenario,
            frames,
            out_dir,
            pgm,
            raw,
        } => {
            let s = load(&scenario)?;
            let frames = load_frames(&frames)?;
            let imager = imager_for(&s)?;
            fs::create_dir_all(&out_dir)?;
            for (i, frame) in frames.iter().enumerate() {
                let map = imager.map(frame)?;
                write_map_csv(
                    create(&out_dir.join(format!("map_{i:04}.csv")))?,
                    &map,
                    !raw,
                )?;
                if pgm {
                    fs::write(out_dir.join(format!("map_{i:04}.pgm")), map_to_pgm(&map))?;
                }
            }
        }
        Command::Track {
            scenario,
            frames,
            tracks,
            metrics,
        } => {
            let s = load(&scenario)?;
            let frames = match frames {
                Some(path) => load_frames(&path)?,
                None => simulate(&s)?,
            };
            let result = run_tracking_on_frames(&s, &frames)?;
            write_tracks_csv(create(&tracks)?, &result.tracks)?;
            write_metrics_csv(create(&metrics)?, &result.metrics)?;
        }
        Command::Oracle {
            scenario,
            out,
            time,
            path_loss,
        } => oracle(&load(&scenario)?, &out, time, path_loss)?,
        Command::Sweep { scenario, n, out } => {
            let s = load(&scenario)?;
            write_sweep_csv(create(&out)?, &sweep(&s, &n)?)?;
        }
    }
    Ok(())
}

/// Far-field frames and plane-wave steering with point scatterers, the
/// setting in which the series representation is exact.
fn oracle(s: &Scenario, out: &Path, time: Option<f64>, path_loss: PathLoss) -> Result<()> {
    let scene = s.scene()?;
    if scene.scatterers.is_empty() {
        bail!(kirmig::Error::Config(
            "oracle comparison needs at least one object".into()
        ));
    }
    let t = match time {
        Some(t) => t,
        None => s.frame_times()?[0],
    };
    let k = s.wavenumber()?;
    let array = s.array()?;
    let grid = std::sync::Arc::new(s.imaging_grid()?);
    let frames = synthesize_frames(
        &scene,
        &array,
        &[t],
        None,
        FieldModel::Farfield,
        Quadrature::Point,
    )?;
    let imager = Imager::new(
        &array,
        k,
        grid.clone(),
        SteeringMode::Farfield,
        QuadraticForm::Bilinear,
    )?;
    let engine = imager.map(&frames[0])?;

    let mut params =
        StructureParams::new(s.array.n_antennas, s.array.radius_m, k, s.grid.roi_radius_m);
    params.angle_offset_rad = s.array.angle_offset_rad;
    params.path_loss = match path_loss {
        PathLoss::Auto => k.value().im != 0.0,
        PathLoss::On => true,
        PathLoss::Off => false,
    };
    let oracle = structure_map(&grid, &scene, &params, t)?;
    let rows = compare_maps(&grid, engine.values(), &oracle)?;

    let worst = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let mut notes = vec![
        "field model farfield, steering farfield, point scatterers".to_string(),
        format!("t = {t}, truncation order {}", params.truncation_order),
        format!("path-loss factor applied: {}", params.path_loss),
        format!("max rel_err = {worst:.3e}"),
    ];
    for (i, sc) in scene.scatterers.iter().enumerate() {
        let closed = on_target_magnitude(
            sc,
            &scene.medium,
            s.array.n_antennas,
            s.array.radius_m,
            scene.pec_sigma_eff_s_per_m,
        )?;
        let at = kirmig::oracle::structure_value(sc.center_at(t), &scene, &params, t)?;
        notes.push(format!(
            "object {i}: closed-form on-target value (|k_b| prefactor) {closed:.6e}, series value at centre (complex k_b prefactor) {at:.6e}"
        ));
    }
    write_report_csv(create(out)?, &rows, &notes)?;
    eprintln!("max relative error {worst:.3e} over {} points", rows.len());
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    err.chain()
        .find_map(|e| e.downcast_ref::<kirmig::Error>())
        .map_or(2, |e| e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
