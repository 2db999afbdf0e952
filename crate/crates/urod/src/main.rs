use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use urod::cache::{Cache, CACHE_ENV};
use urod::registry::{self, CheckRequest, OrderKind, Suite};
use urod::report::{self, RunOptions};

/// Like `println!`, but a closed stdout is not an error.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "urod", version, about = "Exact verification of Urod-algebra, blow-up and character identities")]
struct Cli {
    /// Cache directory (default: $UROD_CACHE_DIR; no caching when neither is set)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List check ids with their parameters
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one check
    Run {
        id: String,
        #[arg(long)]
        order: Option<i64>,
        /// name=value; repeatable
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long, default_value_t = registry::DEFAULT_SEED)]
        seed: u64,
        /// Write the JSON report here ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall time and cache hits in the output
        #[arg(long)]
        timings: bool,
    },
    /// Run a named suite
    Suite {
        #[arg(value_enum)]
        name: SuiteName,
        #[arg(long, default_value_t = registry::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Inspect or maintain the cache
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        /// Seed choosing the entries recomputed by `verify`
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of entries recomputed by `verify`
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Clear,
    Stats,
    Verify,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn write_json(path: &Path, text: &str) -> std::io::Result<()> {
    if path == Path::new("-") {
        out!("{text}");
        Ok(())
    } else {
        std::fs::write(path, format!("{text}\n"))
    }
}

fn open_cache(flag: Option<&Path>) -> Result<Option<Cache>, String> {
    match Cache::configured(flag) {
        None => Ok(None),
        Some(d) => Cache::open(&d).map(Some).map_err(|e| format!("cache directory {}: {e}", d.display())),
    }
}

fn list(json: bool) -> ExitCode {
    if json {
        let items: Vec<_> = registry::registry()
            .iter()
            .map(|c| {
                let ps: Vec<_> = c
                    .params
                    .iter()
                    .map(|p| serde_json::json!({ "name": p.name, "default": p.default, "help": p.help }))
                    .collect();
                serde_json::json!({
                    "id": c.id,
                    "summary": c.summary,
                    "order": c.order,
                    "default_order": (c.order != OrderKind::Exact).then_some(c.default_order),
                    "sampled": c.sampled,
                    "params": ps,
                })
            })
            .collect();
        out!("{}", serde_json::to_string_pretty(&items).expect("json"));
        return ExitCode::SUCCESS;
    }
    for c in registry::registry() {
        let order = match c.order {
            OrderKind::Exact => "exact".to_string(),
            k => format!("{} {}", serde_json::to_value(k).unwrap().as_str().unwrap(), c.default_order),
        };
        out!("{:<28} [{order}] {}", c.id, c.summary);
        for p in c.params {
            out!("{:<30}{}={} ({})", "", p.name, p.default, p.help);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let flag = cli.cache_dir.as_deref();
    match cli.cmd {
        Cmd::List { json } => list(json),
        Cmd::Run { id, order, params, seed, json, timings } => {
            let mut req = CheckRequest { id, order, params: Default::default(), seed };
            for kv in &params {
                match kv.split_once('=') {
                    Some((k, v)) if !k.is_empty() => {
                        req.params.insert(k.trim().to_string(), v.trim().to_string());
                    }
                    _ => return usage(format!("--param expects name=value, got '{kv}'")),
                }
            }
            if let Err(e) = registry::validate(&req) {
                return usage(e);
            }
            let cache = match open_cache(flag) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let opts = RunOptions { cache: cache.as_ref(), timings };
            let rep = match report::run(&req, opts) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            if json.as_deref() != Some(Path::new("-")) {
                out!("{}", rep.line());
            }
            if let Some(p) = json {
                if let Err(e) = write_json(&p, &rep.to_json()) {
                    return usage(format!("{}: {e}", p.display()));
                }
            }
            status(rep.passed())
        }
        Cmd::Suite { name, seed, json, timings } => {
            let s = match name {
                SuiteName::Quick => Suite::Quick,
                SuiteName::Full => Suite::Full,
            };
            let cache = match open_cache(flag) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let opts = RunOptions { cache: cache.as_ref(), timings };
            let rep = report::run_suite(s, seed, opts, None);
            let to_stdout = json.as_deref() == Some(Path::new("-"));
            if !to_stdout {
                for r in &rep.reports {
                    out!("{}", r.line());
                }
                out!("{}", rep.summary());
                if let Some(ms) = rep.wall_ms {
                    out!("wall time {:.1} s", ms as f64 / 1000.0);
                }
            }
            if let Some(p) = json {
                if let Err(e) = write_json(&p, &rep.to_json()) {
                    return usage(format!("{}: {e}", p.display()));
                }
            }
            status(rep.passed())
        }
        Cmd::Cache { action, seed, count } => {
            let cache = match open_cache(flag) {
                Ok(Some(c)) => c,
                Ok(None) => return usage(format!("no cache directory: pass --cache-dir or set {CACHE_ENV}")),
                Err(e) => return usage(e),
            };
            match action {
                CacheAction::Stats => match cache.stats() {
                    Ok(s) => {
                        out!("{} entries, {} bytes in {}", s.entries, s.bytes, cache.dir().display());
                        ExitCode::SUCCESS
                    }
                    Err(e) => usage(e),
                },
                CacheAction::Clear => match cache.clear() {
                    Ok(n) => {
                        out!("removed {n} entries");
                        ExitCode::SUCCESS
                    }
                    Err(e) => usage(e),
                },
                CacheAction::Verify => match report::verify_cache(&cache, count, seed) {
                    Ok(v) => {
                        for e in &v.evicted {
                            out!("EVICTED corrupt entry {e}");
                        }
                        for k in &v.checked {
                            let tag = if v.mismatched.contains(k) { "MISMATCH (evicted)" } else { "OK" };
                            out!("{tag} {k}");
                        }
                        out!(
                            "cache verify: {} recomputed, {} mismatched, {} corrupt",
                            v.checked.len(),
                            v.mismatched.len(),
                            v.evicted.len()
                        );
                        status(v.passed())
                    }
                    Err(e) => usage(e),
                },
            }
        }
    }
}
