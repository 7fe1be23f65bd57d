#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, Eval, Format};
use commands::CliError;
use table::Table;

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Appends `--key value` pairs from a JSON object so they override earlier flags.
fn config_args(path: &PathBuf) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))?;
    let Value::Object(map) = v else {
        return Err(format!("config {}: expected a JSON object", path.display()));
    };
    let mut out = Vec::new();
    for (k, v) in map {
        if k == "config" {
            continue;
        }
        let flag = OsString::from(format!("--{k}"));
        let scalar = |v: &Value| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(format!("config key '{k}': unsupported value {v}")),
        };
        match &v {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts: Result<Vec<String>, String> = items.iter().map(scalar).collect();
                out.push(flag);
                out.push(parts?.join(",").into());
            }
            other => {
                out.push(flag);
                out.push(scalar(other)?.into());
            }
        }
    }
    Ok(out)
}

fn parse() -> Result<Cli, ExitCode> {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let handle = |e: clap::Error| {
        let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
        let _ = e.print();
        ExitCode::from(code)
    };
    let cli = Cli::try_parse_from(&argv).map_err(handle)?;
    let Some(path) = cli.config.clone() else { return Ok(cli) };
    let extra = config_args(&path).map_err(|m| {
        eprintln!("error: {m}");
        ExitCode::from(EXIT_USAGE)
    })?;
    Cli::try_parse_from(argv.into_iter().chain(extra)).map_err(handle)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify(_) => "verify",
        Command::Eval { what } => match what {
            Eval::Greens(_) => "greens",
            Eval::FourierS2(_) => "fourier-s2",
            Eval::FourierS3(_) => "fourier-s3",
            Eval::FourierQuad(_) => "fourier-quad",
            Eval::Gegenbauer(_) => "gegenbauer",
            Eval::Potential(_) => "potential",
            Eval::Binding(_) => "binding",
            Eval::Superintegrable(_) => "superintegrable",
        },
    }
}

fn emit(cli: &Cli, name: &str, mut table: Table) -> std::io::Result<()> {
    let mut meta = vec![
        ("command".to_string(), name.to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ];
    if !cli.no_timestamp {
        meta.push(("generated".to_string(), chrono::Utc::now().to_rfc3339()));
    }
    meta.append(&mut table.meta);
    table.meta = meta;
    let ext = match cli.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let path = match (&cli.out, &cli.out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{name}.{ext}"))),
        (None, None) => None,
    };
    let mut sink: Box<dyn Write> = match &path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|x| !x.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            Box::new(std::io::BufWriter::new(std::fs::File::create(p)?))
        }
        None => Box::new(std::io::stdout().lock()),
    };
    match cli.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => table.write_json(&mut sink)?,
    }
    sink.flush()?;
    if let Some(p) = path {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match parse() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let name = command_name(&cli.command);
    let result = match &cli.command {
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Eval { what } => match what {
            Eval::Greens(a) => commands::greens_cmd(a),
            Eval::FourierS2(a) => commands::fourier_s2_cmd(a),
            Eval::FourierS3(a) => commands::fourier_s3_cmd(a),
            Eval::FourierQuad(a) => commands::fourier_quad_cmd(a),
            Eval::Gegenbauer(a) => commands::gegenbauer_cmd(a),
            Eval::Potential(a) => commands::potential_cmd(a),
            Eval::Binding(a) => commands::binding_cmd(a),
            Eval::Superintegrable(a) => commands::superintegrable_cmd(a),
        }
        .map(|t| (t, true)),
    };
    let (table, ok) = match result {
        Ok(x) => x,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(CliError::Eval(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    if let Err(e) = emit(&cli, name, table) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        if let Command::Verify(_) = cli.command {
            eprintln!("verification failed");
        }
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}
