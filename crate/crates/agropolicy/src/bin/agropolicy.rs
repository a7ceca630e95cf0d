//! Command-line front end: parse the scenario, run the requested analysis
//! modules, and write deterministic CSV reports plus one aggregate JSON
//! report. Exit codes: 0 ok, 2 config error, 3 computation flag (corner
//! solution, over-explained land balance), 4 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, ValueEnum};

use agropolicy::equilibrium::sweep_elasticities;
use agropolicy::incidence::{incidence_table, parse_cohort_csv};
use agropolicy::land_accounts::{land_balance, shadow_output_share};
use agropolicy::report::{self, AggregateReport};
use agropolicy::scenario::{Scenario, ScenarioError, DEFAULT_COHORTS, DEFAULT_FARMS};
use agropolicy::segmentation::{parse_farm_csv, segment_batch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Per-regime baseline tax burdens per hectare.
    Tax,
    /// Minimum-tax-liability burden table under the scenario's bill.
    Mtl,
    /// Land-market welfare sweep over the elasticity grid.
    Equilibrium,
    /// Burden shares across income cohorts.
    Incidence,
    /// Informal-land balance and shadow output share.
    Shadow,
    /// Farm-size classification batch.
    Segment,
    /// Everything above in one run.
    All,
}

#[derive(Debug, Parser)]
#[command(name = "agropolicy", about = "Agricultural tax-policy laboratory")]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Scenario file overlaying the default calibration; omit for defaults.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Output directory (defaults to the scenario's `out_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
}

enum AppError {
    Config(String),
    Io(String),
}

impl From<ScenarioError> for AppError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Io { .. } => AppError::Io(e.to_string()),
            ScenarioError::Parse { .. } => AppError::Config(e.to_string()),
        }
    }
}

impl From<agropolicy::ModelError> for AppError {
    fn from(e: agropolicy::ModelError) -> Self {
        AppError::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(AppError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}

fn load_scenario(cli: &Cli) -> Result<Scenario, AppError> {
    let defaults = match std::env::var_os("AGROPOLICY_DEFAULTS") {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = fs::read_to_string(&path).map_err(|e| {
                AppError::Io(format!("cannot read {}: {e}", path.display()))
            })?;
            Scenario::from_defaults_text(&text, &path.display().to_string())?
        }
        None => Scenario::shipped_defaults()?,
    };
    match &cli.scenario {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                AppError::Io(format!("cannot read {}: {e}", path.display()))
            })?;
            Ok(Scenario::from_overlay_text(
                &defaults,
                &text,
                &path.display().to_string(),
            )?)
        }
        None => Ok(defaults),
    }
}

fn read_input(path: &Option<PathBuf>, fallback: &'static str) -> Result<String, AppError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| AppError::Io(format!("cannot read {}: {e}", p.display()))),
        None => Ok(fallback.to_string()),
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), AppError> {
    let path = dir.join(name);
    fs::write(&path, content)
        .map_err(|e| AppError::Io(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, AppError> {
    let scn = load_scenario(cli)?;
    let out_dir = cli.out.clone().unwrap_or_else(|| scn.out_dir.clone());
    fs::create_dir_all(&out_dir)
        .map_err(|e| AppError::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let wants = |c: Command| cli.command == c || cli.command == Command::All;
    let mut aggregate = AggregateReport::default();
    let mut flagged = false;

    if wants(Command::Tax) {
        let csv = report::taxes_csv(&scn)?;
        write_file(&out_dir, "taxes.csv", &csv)?;
        aggregate.taxes = Some(serde_json::json!({ "csv": "taxes.csv" }));
    }

    if wants(Command::Mtl) {
        let csv = report::mtl_csv(&scn)?;
        write_file(&out_dir, "mtl_burden.csv", &csv)?;
        let rows = agropolicy::fiscal::burden_table(&scn.tax, &scn.mtl, &scn.bases)?;
        aggregate.mtl = Some(serde_json::json!({ "csv": "mtl_burden.csv", "rows": rows }));
    }

    if wants(Command::Equilibrium) {
        let sweep = sweep_elasticities(
            &scn.market.calibration,
            &scn.mtl,
            &scn.tax,
            &scn.market.wedge,
            &scn.market.grid(),
        )?;
        flagged |= sweep.corner_hit;
        write_file(
            &out_dir,
            "welfare.csv",
            &report::welfare_csv(&sweep, scn.tax.uah_per_usd),
        )?;
        aggregate.welfare = Some(report::welfare_json(&sweep, scn.tax.uah_per_usd));
    }

    if wants(Command::Incidence) {
        let cohorts = parse_cohort_csv(&read_input(&scn.cohorts_path, DEFAULT_COHORTS)?)?;
        let rows = incidence_table(&cohorts, &scn.tax, &scn.mtl, &scn.bases)?;
        write_file(&out_dir, "incidence.csv", &report::incidence_csv(&rows))?;
        aggregate.incidence = Some(serde_json::json!({ "csv": "incidence.csv", "rows": rows }));
    }

    if wants(Command::Shadow) {
        let result = land_balance(&scn.land.inputs)?;
        flagged |= result.over_explained;
        let share = shadow_output_share(
            scn.land.household_output_share,
            scn.land.inputs.osg_own_use,
            scn.land.inputs.household_cultivated,
            scn.land.shadow_output_mode,
        )?;
        write_file(
            &out_dir,
            "land_balance.csv",
            &report::land_balance_csv(&result, share),
        )?;
        aggregate.shadow = Some(report::shadow_json(&result, share));
    }

    if wants(Command::Segment) {
        let farms = parse_farm_csv(&read_input(&scn.farms_path, DEFAULT_FARMS)?)?;
        let rows = segment_batch(
            &farms,
            &scn.segmentation.economic_scheme,
            &scn.segmentation.techs,
            scn.tax.uah_per_eur,
        )?;
        write_file(&out_dir, "segmentation.csv", &report::segmentation_csv(&rows))?;
        aggregate.segmentation =
            Some(serde_json::json!({ "csv": "segmentation.csv", "rows": rows }));
    }

    write_file(&out_dir, "report.json", &aggregate.to_json(&scn))?;
    write_file(&out_dir, "scenario.echo.cfg", &scn.echo())?;

    // Run metadata is deliberately outside the data files so those stay
    // byte-identical across reruns.
    let seconds = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = format!(
        "tool = agropolicy {}\ncommand = {:?}\nscenario = {}\nunix_time = {}\n",
        env!("CARGO_PKG_VERSION"),
        cli.command,
        cli.scenario
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "<defaults>".to_string()),
        seconds
    );
    write_file(&out_dir, "run_meta.txt", &meta)?;

    if flagged {
        eprintln!("warning: computation flags raised (corner solution or over-explained land)");
    }
    Ok(flagged)
}
