//! Parser for the `--n` dimension-list syntax.
//!
//! Accepted forms:
//! - `"12"` — a single dimension;
//! - `"8..64"` — inclusive range stepped by the start value (8, 16, …, 64);
//! - `"8..64:4"` — inclusive range with an explicit step;
//! - `"2,4,6"` — explicit comma-separated list, kept in the given order.

use anyhow::{bail, Context, Result};

pub fn parse_n_list(s: &str) -> Result<Vec<u32>> {
    let t = s.trim();
    if t.is_empty() {
        bail!("empty dimension list");
    }
    if t.contains(',') {
        let mut out = Vec::new();
        for part in t.split(',') {
            let v: u32 = part
                .trim()
                .parse()
                .with_context(|| format!("bad dimension {part:?} in list {t:?}"))?;
            out.push(v);
        }
        return Ok(out);
    }
    if let Some((a, rest)) = t.split_once("..") {
        let start: u32 = a
            .trim()
            .parse()
            .with_context(|| format!("bad range start in {t:?}"))?;
        let (b, step) = match rest.split_once(':') {
            Some((b, st)) => {
                let step: u32 = st
                    .trim()
                    .parse()
                    .with_context(|| format!("bad range step in {t:?}"))?;
                (b, step)
            }
            // Without an explicit step, the start value is the step, so
            // "8..64" walks the multiples 8, 16, ..., 64.
            None => (rest, start),
        };
        let end: u32 = b
            .trim()
            .parse()
            .with_context(|| format!("bad range end in {t:?}"))?;
        if step == 0 {
            bail!("range step must be positive in {t:?}");
        }
        if start == 0 {
            bail!("dimensions start at 1, got range start 0 in {t:?}");
        }
        if end < start {
            bail!("range end {end} is below start {start} in {t:?}");
        }
        return Ok((start..=end).step_by(step as usize).collect());
    }
    let v: u32 = t.parse().with_context(|| format!("bad dimension {t:?}"))?;
    Ok(vec![v])
}

/// Expect exactly one dimension (for point-query modes).
pub fn parse_single_n(s: &str) -> Result<u32> {
    let list = parse_n_list(s)?;
    if list.len() != 1 {
        bail!("expected a single dimension, got the list {s:?}");
    }
    Ok(list[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_forms() {
        assert_eq!(parse_n_list("12").unwrap(), vec![12]);
        assert_eq!(
            parse_n_list("8..64").unwrap(),
            vec![8, 16, 24, 32, 40, 48, 56, 64]
        );
        assert_eq!(parse_n_list("8..64:16").unwrap(), vec![8, 24, 40, 56]);
        assert_eq!(parse_n_list("2,4,6").unwrap(), vec![2, 4, 6]);
        assert!(parse_n_list("64..8").is_err());
        assert!(parse_n_list("0..8").is_err());
        assert!(parse_n_list("8..64:0").is_err());
        assert!(parse_n_list("").is_err());
        assert!(parse_single_n("8..64").is_err());
        assert_eq!(parse_single_n("9").unwrap(), 9);
    }
}
