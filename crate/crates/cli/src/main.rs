//! Command-line front end emitting CSV/JSON series for the non-Markovian
//! Pauli channel toolkit: decay-rate profiles, generator singularities,
//! intermediate-map Choi spectra, non-Markovianity measures, and QENM
//! classification/volume.

mod fmt;

use clap::{Args, Parser, Subcommand};
use pauli_nm::channels::ChannelFamily;
use pauli_nm::divisibility::{intermediate_choi_spectrum, intermediate_ratios, td_scan};
use pauli_nm::generator::{rates_grid, singularities};
use pauli_nm::measures::{hcla, sss, GammaStarMode, RenormMode, SssConfig, SssRateDomain};
use pauli_nm::qalg::QubitState;
use pauli_nm::qenm::{classify, iso_qenm_measure, qenm_volume};
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pauli-nm",
    version,
    about = "Non-Markovian Pauli channel toolkit",
    long_about = "Generates CSV/JSON series for non-Markovian Pauli channel families:\n\
                  canonical decay rates, generator singularities, intermediate-map\n\
                  Choi spectra, HCLA/SSS non-Markovianity measures, and QENM\n\
                  classification and volume estimates."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Channel selection: a JSON object or a shorthand flag.
#[derive(Args, Debug)]
struct ChannelArgs {
    /// Channel family as JSON, e.g. '{"family":"aniso_depol","l":0.4,"m":0.5,"n":0.65}'
    #[arg(long, value_name = "JSON", conflicts_with_all = ["aniso", "iso"])]
    channel: Option<String>,
    /// Shorthand for the anisotropic depolarizing family: l,m,n
    #[arg(long, value_name = "L,M,N", conflicts_with = "iso")]
    aniso: Option<String>,
    /// Shorthand for the isotropic depolarizing family: alpha
    #[arg(long, value_name = "ALPHA")]
    iso: Option<f64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical decay rates on a grid (CSV: p,gamma1,gamma2,gamma3,singular)
    Rates {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Grid as start:stop:step in the family's native parameter
        #[arg(long, value_name = "START:STOP:STEP")]
        grid: String,
        /// Output path; '-' writes stdout
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Generator singularities (JSON list of {j, p_minus, x, multiplicity})
    Singularities {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Intermediate-map Choi spectrum from s to each grid point
    /// (CSV: p,lambda1,lambda2,lambda3,lambda4, descending)
    Choi {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Start point s of the intermediate map (must not be singular)
        #[arg(long)]
        s: f64,
        #[arg(long, value_name = "START:STOP:STEP")]
        grid: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Non-Markovianity measures (JSON), or an alpha sweep
    /// (CSV: alpha,hcla,sss_renormalized)
    Measure {
        /// Which measure to compute: hcla or sss
        #[arg(long, value_parser = ["hcla", "sss"], required_unless_present = "sweep")]
        kind: Option<String>,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Sweep the isotropic parameter instead: start:stop:step
        #[arg(long, value_name = "START:STOP:STEP", conflicts_with = "kind")]
        sweep: Option<String>,
        /// Rate renormalization for sss: signed or absolute
        #[arg(long, default_value = "signed", value_parser = ["signed", "absolute"])]
        renorm: String,
        /// Reference rate for sss: "minimized" or a fixed value
        #[arg(long, default_value = "minimized")]
        gamma_star: String,
        /// Rate units for sss: parametric or physical
        #[arg(long, default_value = "parametric", value_parser = ["parametric", "physical"])]
        rate_domain: String,
        /// Decay strength c of the physical-time parametrization
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Upper integration limit (defaults to the family range end)
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// QENM classification, volume, and isotropic measure
    Qenm {
        #[command(subcommand)]
        cmd: QenmCmd,
    },
    /// Trace distance between two evolved states on a grid
    /// (CSV: p,trace_distance)
    Tracedist {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Bloch vector of the first state: x,y,z
        #[arg(long, value_name = "X,Y,Z")]
        bloch_a: String,
        /// Bloch vector of the second state: x,y,z
        #[arg(long, value_name = "X,Y,Z")]
        bloch_b: String,
        #[arg(long, value_name = "START:STOP:STEP")]
        grid: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand)]
enum QenmCmd {
    /// Classify one anisotropic parameter triple
    Classify {
        /// Parameter triple l,m,n
        #[arg(long, value_name = "L,M,N")]
        aniso: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Monte-Carlo volume of the QENM region of the (l,m,n) cube
    Volume {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// RNG seed; falls back to PAULI_NM_SEED, then 42
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Fraction of an isotropic alpha grid that is QENM
    IsoMeasure {
        #[arg(long, default_value_t = 10_000)]
        points: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

enum Failure {
    Config(String),
    Domain(String),
}

impl Failure {
    fn config(e: impl std::fmt::Display) -> Self {
        Failure::Config(e.to_string())
    }
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

impl ChannelArgs {
    fn family(&self) -> Result<ChannelFamily, Failure> {
        let fam = if let Some(js) = &self.channel {
            serde_json::from_str::<ChannelFamily>(js)
                .map_err(|e| Failure::Config(format!("bad --channel JSON: {e}")))?
        } else if let Some(triple) = &self.aniso {
            let [l, m, n] = parse_triple(triple)?;
            ChannelFamily::AnisoDepol { l, m, n }
        } else if let Some(alpha) = self.iso {
            ChannelFamily::IsoDepol { alpha }
        } else {
            return Err(Failure::Config(
                "no channel given: use --channel, --aniso or --iso".into(),
            ));
        };
        fam.validate().map_err(Failure::config)?;
        Ok(fam)
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::Config(format!(
            "expected three comma-separated values, got '{s}'"
        )));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| Failure::Config(format!("bad number '{part}': {e}")))?;
    }
    Ok(out)
}

/// Parses start:stop:step and expands it to an inclusive grid.
fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::Config(format!(
            "grid must be start:stop:step, got '{s}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|e| Failure::Config(format!("bad grid number '{p}': {e}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 {
        return Err(Failure::Config(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if stop < start {
        return Err(Failure::Config(format!(
            "grid stop {stop} below start {start}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

fn emit(out: &str, content: &str) -> Result<(), Failure> {
    if out == "-" {
        std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(Failure::config)
    } else {
        std::fs::write(out, content)
            .map_err(|e| Failure::Config(format!("cannot write {out}: {e}")))
    }
}

fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Rates { channel, grid, out } => {
            let fam = channel.family()?;
            let points = parse_grid(&grid)?;
            let rows = rates_grid(&fam, &points).map_err(Failure::domain)?;
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, rates)| match rates {
                    Some(r) => vec![
                        fmt::g12(*p),
                        fmt::g12(r.gamma[0]),
                        fmt::g12(r.gamma[1]),
                        fmt::g12(r.gamma[2]),
                        "0".to_string(),
                    ],
                    None => vec![
                        fmt::g12(*p),
                        String::new(),
                        String::new(),
                        String::new(),
                        "1".to_string(),
                    ],
                })
                .collect();
            emit(
                &out,
                &fmt::csv(&["p", "gamma1", "gamma2", "gamma3", "singular"], &table),
            )
        }

        Cmd::Singularities { channel, out } => {
            let fam = channel.family()?;
            let set = singularities(&fam);
            emit(&out, &to_json_pretty(&set.entries))
        }

        Cmd::Choi {
            channel,
            s,
            grid,
            out,
        } => {
            let fam = channel.family()?;
            let points = parse_grid(&grid)?;
            let mut table = Vec::with_capacity(points.len());
            for p in points {
                let ratios = intermediate_ratios(&fam, s, p).map_err(Failure::domain)?;
                let spec = intermediate_choi_spectrum(&ratios);
                table.push(vec![
                    fmt::g12(p),
                    fmt::g12(spec.lambda[0]),
                    fmt::g12(spec.lambda[1]),
                    fmt::g12(spec.lambda[2]),
                    fmt::g12(spec.lambda[3]),
                ]);
            }
            emit(
                &out,
                &fmt::csv(&["p", "lambda1", "lambda2", "lambda3", "lambda4"], &table),
            )
        }

        Cmd::Measure {
            kind,
            channel,
            sweep,
            renorm,
            gamma_star,
            rate_domain,
            c,
            horizon,
            out,
        } => {
            if let Some(sweep_spec) = sweep {
                return measure_sweep(&sweep_spec, &out);
            }
            let fam = channel.family()?;
            let kind = kind.expect("clap enforces --kind without --sweep");
            let renorm_mode = match renorm.as_str() {
                "absolute" => RenormMode::Absolute,
                _ => RenormMode::Signed,
            };
            let result = match kind.as_str() {
                "hcla" => hcla(&fam).map_err(Failure::domain)?,
                _ => {
                    let gs = if gamma_star == "minimized" {
                        GammaStarMode::Minimized
                    } else {
                        GammaStarMode::Fixed(gamma_star.parse().map_err(|e| {
                            Failure::Config(format!(
                                "--gamma-star must be 'minimized' or a number: {e}"
                            ))
                        })?)
                    };
                    let domain = match rate_domain.as_str() {
                        "physical" => SssRateDomain::Physical { c },
                        _ => SssRateDomain::Parametric,
                    };
                    let cfg = SssConfig {
                        gamma_star: gs,
                        prefactor: 10.0,
                        horizon,
                        renorm: renorm_mode,
                        domain,
                    };
                    sss(&fam, &cfg).map_err(Failure::domain)?
                }
            };
            #[derive(Serialize)]
            struct Envelope<'a> {
                measure: &'a str,
                value: f64,
                renormalized: f64,
                bounds: &'a [(f64, f64)],
                config: serde_json::Value,
            }
            let envelope = Envelope {
                measure: &kind,
                value: result.value,
                renormalized: result.renormalized,
                bounds: &result.bounds,
                config: serde_json::json!({
                    "family": fam,
                    "renorm": renorm,
                    "gamma_star": gamma_star,
                    "rate_domain": rate_domain,
                }),
            };
            emit(&out, &to_json_pretty(&envelope))
        }

        Cmd::Qenm { cmd } => match cmd {
            QenmCmd::Classify { aniso, out } => {
                let [l, m, n] = parse_triple(&aniso)?;
                let verdict = classify(l, m, n).map_err(Failure::config)?;
                emit(&out, &to_json_pretty(&verdict))
            }
            QenmCmd::Volume { samples, seed, out } => {
                let seed = seed
                    .or_else(|| {
                        std::env::var("PAULI_NM_SEED")
                            .ok()
                            .and_then(|v| v.parse().ok())
                    })
                    .unwrap_or(42);
                let estimate = qenm_volume(samples, seed);
                emit(&out, &to_json_pretty(&estimate))
            }
            QenmCmd::IsoMeasure { points, out } => {
                if points == 0 {
                    return Err(Failure::Config("--points must be positive".into()));
                }
                let fraction = iso_qenm_measure(points);
                #[derive(Serialize)]
                struct IsoMeasure {
                    grid_points: usize,
                    fraction: f64,
                }
                emit(
                    &out,
                    &to_json_pretty(&IsoMeasure {
                        grid_points: points,
                        fraction,
                    }),
                )
            }
        },

        Cmd::Tracedist {
            channel,
            bloch_a,
            bloch_b,
            grid,
            out,
        } => {
            let fam = channel.family()?;
            let a = QubitState::from_bloch(parse_triple(&bloch_a)?).map_err(Failure::config)?;
            let b = QubitState::from_bloch(parse_triple(&bloch_b)?).map_err(Failure::config)?;
            let points = parse_grid(&grid)?;
            let rows = td_scan(&fam, &a, &b, &points).map_err(Failure::domain)?;
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, td)| vec![fmt::g12(*p), fmt::g12(*td)])
                .collect();
            emit(&out, &fmt::csv(&["p", "trace_distance"], &table))
        }
    }
}

/// Alpha sweep reproducing the measure-vs-alpha trend: hcla with its
/// two-branch bounds and sss in the semigroup-reference configuration
/// (physical time, c = 1, fixed gamma* = c/4).
fn measure_sweep(sweep_spec: &str, out: &str) -> Result<(), Failure> {
    let alphas = parse_grid(sweep_spec)?;
    let cfg = SssConfig::semigroup_reference();
    let mut table = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let fam = ChannelFamily::IsoDepol { alpha };
        let h = hcla(&fam).map_err(Failure::domain)?;
        let s = sss(&fam, &cfg).map_err(Failure::domain)?;
        table.push(vec![
            fmt::g12(alpha),
            fmt::g12(h.value),
            fmt::g12(s.renormalized),
        ]);
    }
    emit(out, &fmt::csv(&["alpha", "hcla", "sss_renormalized"], &table))
}
