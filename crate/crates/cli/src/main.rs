use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use photon_prop_cli::run::eit_record;
use photon_prop_cli::{load, preset, run_scenario, validate, CliError, Scenario, OUT_DIR_ENV};

#[derive(Parser)]
#[command(name = "photon-prop", version, about = "Single-photon propagation through resonant absorbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        config: PathBuf,
        #[arg(long, env = OUT_DIR_ENV, default_value = "out")]
        out: PathBuf,
    },
    /// Run a named figure preset.
    Figure {
        preset: String,
        #[arg(long, env = OUT_DIR_ENV, default_value = "out")]
        out: PathBuf,
        /// Print the preset as a config file instead of running it.
        #[arg(long)]
        print_config: bool,
    },
    /// Print the EIT design parameters of a scenario's medium.
    EitParams { config: PathBuf },
    /// Check a scenario without running it.
    Validate { config: PathBuf },
}

fn print_run(out: &Path, r: &photon_prop_cli::RunOutput) {
    for f in &r.files {
        println!("{}", out.join(f).display());
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, out } => {
            let s = load(&config)?;
            let r = run_scenario(&s, &out)?;
            print_run(&out, &r);
        }
        Command::Figure {
            preset: name,
            out,
            print_config,
        } => {
            let s = preset(&name)?;
            if print_config {
                print!("{}", s.to_config_text());
                return Ok(());
            }
            let r = run_scenario(&s, &out)?;
            print_run(&out, &r);
        }
        Command::EitParams { config } => {
            let s: Scenario = load(&config)?;
            let m = s
                .medium
                .build()?
                .ok_or_else(|| CliError::Validation(vec!["eit-params needs an EIT medium".into()]))?;
            let e = eit_record(s.delta_ph, &m)?;
            println!("t_eit = {:?}", e.t_eit);
            println!("t_d = {:?}", e.t_d);
            println!("delta_eff = {:?}", e.delta_eff);
            println!("delta_eit = {:?}", e.delta_eit);
            println!("delta_eff_over_delta_ph = {:?}", e.delta_eff_over_delta_ph);
            println!("t_d_over_tau_life = {:?}", e.t_d_over_tau_life);
        }
        Command::Validate { config } => {
            let s = load(&config)?;
            let r = validate(&s);
            for w in &r.warnings {
                println!("warning: {w}");
            }
            for e in &r.errors {
                println!("error: {e}");
            }
            if !r.is_clean() {
                return Err(CliError::Validation(r.errors));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("photon-prop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
