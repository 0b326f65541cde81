//! `hh table` — exact integer level-function table as CSV.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;

use hh_core::krawtchouk::krawtchouk_row;
use hh_core::max_table_dimension;

use crate::output::emit;
use crate::FormatArg;

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Dimension of the table (rows j = 0..=n, columns x = 0..=n).
    #[arg(long)]
    pub n: u32,

    /// Emit only this level's row.
    #[arg(long)]
    pub j: Option<u32>,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format; tables are always CSV.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

pub fn run(args: &TableArgs) -> Result<bool> {
    if args.format != FormatArg::Csv {
        bail!("tables are CSV; --format json is not supported here");
    }
    let cap = max_table_dimension();
    if args.n == 0 || args.n > cap {
        bail!("--n must be in 1..={cap}, got {}", args.n);
    }
    if let Some(j) = args.j {
        if j > args.n {
            bail!("--j must be at most n = {}, got {j}", args.n);
        }
    }
    let rows: Vec<u32> = match args.j {
        Some(j) => vec![j],
        None => (0..=args.n).collect(),
    };
    let mut lines: Vec<String> = Vec::with_capacity(rows.len() * (args.n as usize + 1) + 1);
    lines.push("n,j,x,value".to_string());
    for j in rows {
        let row = krawtchouk_row(args.n, j)?;
        for (x, v) in row.iter().enumerate() {
            lines.push(format!("{},{},{},{}", args.n, j, x, v));
        }
    }
    let mut text = lines.join("\n");
    text.push('\n');
    emit(args.out.as_deref(), text.as_bytes())?;
    Ok(false)
}
