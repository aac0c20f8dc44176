use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use congestion_core::analysis::{fit_scaling, ScalingFit};

/// `(x, y)` pairs from two CSV columns. Only `ok` rows are used, and when a
/// file carries median rows only those are read. Rows with an empty cell in
/// either column are skipped.
pub fn read_points(csv_path: &Path, x: &str, y: &str) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::Reader::from_path(csv_path)
        .with_context(|| format!("reading {}", csv_path.display()))?;
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| anyhow!("no column '{name}' in {}", csv_path.display()))
    };
    let (xi, yi) = (column(x)?, column(y)?);
    let status = headers.iter().position(|h| h == "status");
    let replicate = headers.iter().position(|h| h == "replicate");

    let mut all = Vec::new();
    let mut medians = Vec::new();
    for record in reader.records() {
        let record = record?;
        if let Some(s) = status {
            if &record[s] != "ok" {
                continue;
            }
        }
        let (xs, ys) = (&record[xi], &record[yi]);
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        let point = (
            xs.parse::<f64>()
                .with_context(|| format!("column {x}: '{xs}'"))?,
            ys.parse::<f64>()
                .with_context(|| format!("column {y}: '{ys}'"))?,
        );
        if replicate.is_some_and(|r| &record[r] == "median") {
            medians.push(point);
        } else {
            all.push(point);
        }
    }
    Ok(if medians.is_empty() { all } else { medians })
}

pub fn fit_from_csv(csv_path: &Path, x: &str, y: &str) -> Result<ScalingFit> {
    let points = read_points(csv_path, x, y)?;
    if points.is_empty() {
        bail!("no usable rows in {}", csv_path.display());
    }
    Ok(fit_scaling(&points)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn two_rows_give_exact_slope() {
        let f = file("N,max_load\n10,100\n100,10000\n");
        let fit = fit_from_csv(f.path(), "N", "max_load").unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn prefers_medians_and_skips_failures() {
        let f = file(
            "replicate,status,N,max_load\n0,ok,10,1\n1,ok,10,1000\nmedian,ok,10,10\n0,failed,100,\nmedian,ok,100,1000\n",
        );
        let pts = read_points(f.path(), "N", "max_load").unwrap();
        assert_eq!(pts, vec![(10.0, 10.0), (100.0, 1000.0)]);
    }

    #[test]
    fn missing_column() {
        let f = file("N,max_load\n10,100\n");
        assert!(fit_from_csv(f.path(), "N", "root_load").is_err());
    }
}
