use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ofmonad::filter::FilterSpace;
use ofmonad::instance::{load_order, load_space};
use ofmonad::scott::ScottContext;
use ofmonad::suite::{run_suite, Format, RunMode, Suite, SuiteConfig, EXIT_CONFIG, EXIT_RESOURCE};
use ofmonad::{Caps, Error};

#[derive(Parser)]
#[command(name = "ofmonad", version, about = "Exhaustive law checks for the open filter monad over finite frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a law suite: frame, topology, order, scott, filter, monad,
    /// algebra, roundtrip, degeneration or all.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Path of an instance file with a space block and an r table.
        #[arg(long)]
        witness: Option<String>,
        /// Enumerate everything; a cap hit becomes exit code 2.
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Sample at most N elements where enumeration is out of reach.
        #[arg(long, value_name = "N")]
        sample: Option<usize>,
        #[arg(long, default_value_t = ofmonad::frame::DEFAULT_LAW_SEED)]
        seed: u64,
    },
    /// List the open filters of a space.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Print the Scott topology or the way-below table of an order.
    Dump {
        #[command(subcommand)]
        what: DumpWhat,
    },
}

#[derive(Subcommand)]
enum EnumerateWhat {
    Filters {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum DumpWhat {
    Scott {
        #[command(flatten)]
        common: Common,
    },
    Waybelow {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// chain:<n>, powerset:<n>, product:<a>,<b> or covers:<file>
    #[arg(long, default_value = "chain:2")]
    frame: String,
    /// sierpinski, discrete:<n>, indiscrete:<n> or an instance file
    #[arg(long)]
    space: Option<String>,
    /// selfL:<frame>, powerset-order:<frame>,<n>, crisp-chain:<n>,
    /// crisp-lattice:<file> or an instance file
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// TOML file overriding the enumeration caps
    #[arg(long, value_name = "FILE")]
    caps: Option<PathBuf>,
}

impl Common {
    fn caps(&self) -> Result<Caps, Error> {
        let Some(path) = &self.caps else {
            return Ok(Caps::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
    }

    fn format(&self) -> Format {
        self.format.parse().unwrap_or_default()
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_CONFIG } as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suite, common, witness, exhaustive, sample, seed } => {
            return verify(&suite, common, witness, exhaustive, sample, seed);
        }
        Command::Enumerate { what: EnumerateWhat::Filters { common } } => enumerate_filters(&common),
        Command::Dump { what: DumpWhat::Scott { common } } => dump_scott(&common),
        Command::Dump { what: DumpWhat::Waybelow { common } } => dump_waybelow(&common),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn verify(suite: &str, common: Common, witness: Option<String>, exhaustive: bool, sample: Option<usize>, seed: u64) -> ExitCode {
    let config = (|| -> Result<SuiteConfig, Error> {
        let mut cfg = SuiteConfig::new(suite.parse::<Suite>()?);
        cfg.caps = common.caps()?;
        cfg.format = common.format();
        cfg.mode = match (exhaustive, sample) {
            (true, _) => RunMode::Exhaustive,
            (false, Some(n)) => RunMode::Sample(n),
            (false, None) => RunMode::Auto,
        };
        cfg.frame = common.frame;
        cfg.space = common.space;
        cfg.order = common.order;
        cfg.witness = witness;
        cfg.seed = seed;
        Ok(cfg)
    })();
    let cfg = match config {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let outcome = run_suite(&cfg);
    for d in &outcome.diagnostics {
        eprintln!("error: {d}");
    }
    if outcome.exit_code != EXIT_CONFIG {
        println!("{}", outcome.render(cfg.format));
    }
    ExitCode::from(outcome.exit_code as u8)
}

fn enumerate_filters(common: &Common) -> Result<String, Error> {
    let caps = common.caps()?;
    let space = load_space(common.space.as_deref().unwrap_or("sierpinski"), &common.frame, &caps)?;
    let fs = FilterSpace::new(space.space.clone(), &caps)?;
    let x = &space.space;
    let f = x.frame();
    Ok(match common.format() {
        Format::Text => format!("{} open filters\n{}", fs.len(), fs.table()),
        Format::Json => {
            let opens: Vec<String> = x.opens().iter().map(|o| x.render(o)).collect();
            let filters: Vec<_> = fs
                .filters()
                .iter()
                .enumerate()
                .map(|(i, u)| {
                    let values: Vec<&str> = u.values.iter().map(|&e| f.name(e)).collect();
                    json!({ "name": fs.space().points()[i], "values": values })
                })
                .collect();
            pretty(json!({ "opens": opens, "filters": filters }))
        }
    })
}

fn scott_context(common: &Common) -> Result<ScottContext, Error> {
    let caps = common.caps()?;
    let spec = common.order.clone().unwrap_or_else(|| format!("selfL:{}", common.frame));
    ScottContext::new(load_order(&spec, &common.frame, &caps)?, &caps)
}

fn dump_scott(common: &Common) -> Result<String, Error> {
    let ctx = scott_context(common)?;
    let sigma = Arc::new(ctx.scott_topology());
    let opens: Vec<String> = sigma.opens().iter().map(|o| sigma.render(o)).collect();
    let base: Option<Vec<String>> = sigma.base().map(|b| b.iter().map(|&i| opens[i].clone()).collect());
    Ok(match common.format() {
        Format::Json => pretty(json!({ "points": sigma.points(), "opens": opens, "base": base })),
        Format::Text => {
            let mut out = format!("{} Scott opens\n", opens.len());
            for o in &opens {
                out.push_str(o);
                out.push('\n');
            }
            if let Some(b) = base {
                out.push_str(&format!("base: {}\n", b.join(" ")));
            }
            out
        }
    })
}

fn dump_waybelow(common: &Common) -> Result<String, Error> {
    let ctx = scott_context(common)?;
    let wb = ctx.way_below();
    let o = ctx.order();
    let f = o.frame();
    let names = o.names();
    let rows: Vec<Vec<&str>> = (0..o.len()).map(|x| (0..o.len()).map(|y| f.name(wb.wb(x, y))).collect()).collect();
    Ok(match common.format() {
        Format::Json => pretty(json!({ "points": names, "waybelow": rows })),
        Format::Text => {
            let w = names.iter().chain(f.names()).map(|s| s.chars().count()).max().unwrap_or(1).max(3);
            let mut out = format!("{:w$} |", "x\\y");
            for n in names {
                out.push_str(&format!(" {n:w$}"));
            }
            out = out.trim_end().to_string();
            out.push('\n');
            for (x, row) in rows.iter().enumerate() {
                out.push_str(&format!("{:w$} |", names[x]));
                let cells: Vec<String> = row.iter().map(|v| format!("{v:w$}")).collect();
                out.push_str(&format!(" {}", cells.join(" ")).trim_end());
                out.push('\n');
            }
            out
        }
    })
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}
