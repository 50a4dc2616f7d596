//! The tournament text format:
//!
//! ```text
//! TOURNAMENT v1 n=<n>
//! <n rows of n characters over {0, 1, -}>
//! ```
//!
//! Row i, column j is `1` iff the edge i -> j exists, `-` on the
//! diagonal. The parser rejects asymmetric pairs, so a file round-trips
//! bit-exactly through parse/render.

use anyhow::{bail, Context};
use tourpow::Tournament;

pub fn render(t: &Tournament) -> String {
    let n = t.n();
    let mut out = String::with_capacity(n * (n + 1) + 32);
    out.push_str(&format!("TOURNAMENT v1 n={n}\n"));
    for i in 0..n {
        for j in 0..n {
            out.push(if i == j {
                '-'
            } else if t.has_edge(i, j) {
                '1'
            } else {
                '0'
            });
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> anyhow::Result<Tournament> {
    let mut lines = text.lines();
    let header = lines.next().context("empty tournament file")?;
    let n: usize = header
        .strip_prefix("TOURNAMENT v1 n=")
        .with_context(|| format!("bad header: {header:?}"))?
        .trim()
        .parse()
        .context("bad vertex count in header")?;
    let mut matrix = vec![vec![false; n]; n];
    for i in 0..n {
        let row = lines.next().with_context(|| format!("missing row {i}"))?.trim();
        if row.len() != n {
            bail!("row {i} has {} characters, expected {n}", row.len());
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '1' => matrix[i][j] = true,
                '0' => {}
                '-' if i == j => {}
                '-' => bail!("off-diagonal '-' at ({i},{j})"),
                other => bail!("unexpected character {other:?} at ({i},{j})"),
            }
        }
        if matrix[i][i] {
            bail!("diagonal entry at row {i} must be '-'");
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[i][j] == matrix[j][i] {
                bail!("pair ({i},{j}) must have exactly one orientation");
            }
        }
    }
    Tournament::from_matrix(&matrix).map_err(|e| anyhow::anyhow!(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tourpow::construct;

    #[test]
    fn round_trip() {
        for seed in 0..5 {
            let t = construct::random_tournament(13, seed).unwrap();
            let text = render(&t);
            let back = parse(&text).unwrap();
            assert_eq!(t, back);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let text = "TOURNAMENT v1 n=2\n-1\n-1\n";
        assert!(parse(text).is_err());
        let text2 = "TOURNAMENT v1 n=2\n-1\n1-\n";
        assert!(parse(text2).is_err());
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse("GRAPH v1 n=2\n-1\n0-\n").is_err());
    }
}
