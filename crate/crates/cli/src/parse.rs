//! Parsers for the `--M`, `--S`, `--target` and `--x0` flag values.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};

/// `"1,3"` → `[1, 3]`.
pub fn columns(s: &str) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().with_context(|| format!("bad column index {p:?}")))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `"1:[0,1)|[2,3);2:[0,2)"` → `{1: [(0,1), (2,3)], 2: [(0,2)]}`.
pub fn sets(s: &str) -> Result<BTreeMap<usize, Vec<(f64, f64)>>> {
    let mut out = BTreeMap::new();
    for entry in s.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let (k, pieces) = entry
            .split_once(':')
            .ok_or_else(|| anyhow!("expected k:[a,b)|..., got {entry:?}"))?;
        let k: usize = k
            .trim()
            .parse()
            .with_context(|| format!("bad column index {k:?}"))?;
        let mut list = Vec::new();
        for piece in pieces.split('|').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = piece
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| anyhow!("interval {piece:?} must look like [a,b)"))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| anyhow!("interval {piece:?} needs two endpoints"))?;
            list.push((number(a)?, number(b)?));
        }
        if out.insert(k, list).is_some() {
            bail!("column {k} listed twice in --S");
        }
    }
    Ok(out)
}

/// `"e2"` → the second basis vector of length `n`; otherwise a comma list.
pub fn vector(s: &str, n: usize) -> Result<Vec<f64>> {
    let s = s.trim();
    if let Some(i) = s.strip_prefix('e') {
        let i: usize = i
            .parse()
            .with_context(|| format!("bad basis vector {s:?}"))?;
        if i == 0 || i > n {
            bail!("basis vector {s} outside 1..={n}");
        }
        let mut v = vec![0.0; n];
        v[i - 1] = 1.0;
        return Ok(v);
    }
    let v: Vec<f64> = s.split(',').map(number).collect::<Result<_>>()?;
    if v.len() != n {
        bail!("vector {s:?} has {} entries, expected {n}", v.len());
    }
    Ok(v)
}

fn number(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .with_context(|| format!("bad number {:?}", s.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_lists() {
        assert_eq!(columns("3, 1,3").unwrap(), vec![1, 3]);
        assert!(columns("1,x").is_err());
    }

    #[test]
    fn set_lists() {
        let s = sets("1:[0,1)|[2,3); 2:[0.5, 2)").unwrap();
        assert_eq!(s[&1], vec![(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(s[&2], vec![(0.5, 2.0)]);
        assert!(sets("1:[0,1]").is_err());
        assert!(sets("1:[0,1);1:[2,3)").is_err());
    }

    #[test]
    fn targets() {
        assert_eq!(vector("e2", 3).unwrap(), vec![0.0, 1.0, 0.0]);
        assert_eq!(vector("0.5,1", 2).unwrap(), vec![0.5, 1.0]);
        assert!(vector("e4", 3).is_err());
        assert!(vector("1", 2).is_err());
    }
}
