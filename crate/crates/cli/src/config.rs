//! Turning flag strings into library objects: potentials, grids, method
//! lists, and scan ranges.

use std::path::PathBuf;

use semidens::potential::make_potential;
use semidens::profile::Method;
use semidens::{Error, Potential64, Result};

/// Parse `k=v,...` with case-sensitive keys, e.g. `D=15,a=0.25`.
pub fn parse_params(s: &str) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for piece in s.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((key, value)) = piece.split_once('=') else {
            return Err(Error::config(format!(
                "parameter {piece:?} is not of the form key=value"
            )));
        };
        let key = key.trim();
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::config(format!("parameter {key} has non-numeric value {value:?}"))
        })?;
        if out.iter().any(|(k, _)| k == key) {
            return Err(Error::config(format!("parameter {key} given twice")));
        }
        out.push((key.to_string(), value));
    }
    Ok(out)
}

/// Build the potential from `--potential`/`--params` or `--table`.
pub fn build_potential(
    family: &Option<String>,
    params: &str,
    table: &Option<PathBuf>,
) -> Result<Potential64> {
    match (family, table) {
        (Some(name), None) => make_potential(name, &parse_params(params)?),
        (None, Some(path)) => {
            if !params.trim().is_empty() {
                return Err(Error::config(
                    "--params applies to named families, not --table".to_string(),
                ));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
            Potential64::tabulated_from_text(&text)
        }
        (None, None) => Err(Error::config(
            "one of --potential or --table is required".to_string(),
        )),
        // clap's conflicts_with already rejects this pair; keep the message
        // for programmatic callers.
        (Some(_), Some(_)) => Err(Error::config(
            "--potential and --table are mutually exclusive".to_string(),
        )),
    }
}

pub fn validate_hbar(hbar: f64) -> Result<()> {
    if !hbar.is_finite() || hbar <= 0.0 {
        return Err(Error::config(format!("hbar must be positive, got {hbar}")));
    }
    Ok(())
}

/// `--grid` value: `auto` or an explicit uniform window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridSpec {
    Auto,
    Explicit { lo: f64, hi: f64, npoints: usize },
}

pub fn parse_grid(s: &str) -> Result<GridSpec> {
    if s == "auto" {
        return Ok(GridSpec::Auto);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::config(format!(
            "grid {s:?} is neither auto nor lo,hi,npts"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("grid start {:?} is not a number", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("grid end {:?} is not a number", parts[1])))?;
    let npoints: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("grid size {:?} is not an integer", parts[2])))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::config(format!("grid needs lo < hi, got {lo}..{hi}")));
    }
    if npoints < 2 {
        return Err(Error::config(format!(
            "grid needs at least 2 points, got {npoints}"
        )));
    }
    Ok(GridSpec::Explicit { lo, hi, npoints })
}

pub fn linspace(lo: f64, hi: f64, npoints: usize) -> Vec<f64> {
    (0..npoints)
        .map(|i| lo + (hi - lo) * i as f64 / (npoints - 1) as f64)
        .collect()
}

/// Comma-separated method tags, each given at most once.
pub fn parse_methods(s: &str) -> Result<Vec<Method>> {
    let mut out: Vec<Method> = Vec::new();
    for piece in s.split(',').filter(|p| !p.trim().is_empty()) {
        let m = Method::parse(piece.trim())?;
        if out.contains(&m) {
            return Err(Error::config(format!("method {} given twice", m.token())));
        }
        out.push(m);
    }
    if out.is_empty() {
        return Err(Error::config("no methods requested".to_string()));
    }
    Ok(out)
}

/// `--scan` value `lo..hi`, both ends included.
pub fn parse_scan(s: &str) -> Result<(usize, usize)> {
    let Some((lo, hi)) = s.split_once("..") else {
        return Err(Error::config(format!("scan range {s:?} is not lo..hi")));
    };
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("scan start {lo:?} is not an integer")))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("scan end {hi:?} is not an integer")))?;
    if lo < 1 {
        return Err(Error::config("scan must start at N >= 1".to_string()));
    }
    if hi < lo {
        return Err(Error::config(format!("scan range {lo}..{hi} is empty")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse_and_reject() {
        assert_eq!(
            parse_params("D=15,a=0.25").unwrap(),
            vec![("D".to_string(), 15.0), ("a".to_string(), 0.25)]
        );
        assert_eq!(parse_params("").unwrap(), vec![]);
        assert!(parse_params("D=abc").is_err());
        assert!(parse_params("D").is_err());
        assert!(parse_params("D=1,D=2").is_err());
    }

    #[test]
    fn param_keys_are_case_sensitive() {
        // rosen_morse wants V0; v0 must not satisfy it.
        let err = build_potential(&Some("rosen_morse".to_string()), "v0=5,a=1", &None);
        assert!(err.is_err());
        assert!(build_potential(&Some("rosen_morse".to_string()), "V0=5,a=1", &None).is_ok());
    }

    #[test]
    fn grid_specs_parse() {
        assert_eq!(parse_grid("auto").unwrap(), GridSpec::Auto);
        assert_eq!(
            parse_grid("-2,3,11").unwrap(),
            GridSpec::Explicit { lo: -2.0, hi: 3.0, npoints: 11 }
        );
        assert!(parse_grid("3,-2,11").is_err());
        assert!(parse_grid("0,1").is_err());
        assert!(parse_grid("0,1,1").is_err());
    }

    #[test]
    fn scan_ranges_parse() {
        assert_eq!(parse_scan("1..16").unwrap(), (1, 16));
        assert_eq!(parse_scan("4..4").unwrap(), (4, 4));
        assert!(parse_scan("0..4").is_err());
        assert!(parse_scan("5..4").is_err());
        assert!(parse_scan("5").is_err());
    }

    #[test]
    fn method_lists_parse() {
        use Method::*;
        assert_eq!(parse_methods("tf,uniform,exact").unwrap(), vec![Tf, Uniform, Exact]);
        assert!(parse_methods("tf,tf").is_err());
        assert!(parse_methods("").is_err());
        assert!(parse_methods("wkbx").is_err());
    }
}
