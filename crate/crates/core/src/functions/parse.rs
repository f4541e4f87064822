use std::path::{Path, PathBuf};

use super::{load_custom_grid, CatalogFunction, DirectionalGaussian, Polynomial};
use crate::error::{Error, Result};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(format!("malformed number `{}`", p.trim())))
        })
        .collect()
}

/// `c@e1.e2+c@e1.e2`, one exponent per variable.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let mut terms = Vec::new();
    for t in s.split('+') {
        let (c, e) = t
            .split_once('@')
            .ok_or_else(|| parse_err(format!("polynomial term `{t}` must look like coeff@e1.e2")))?;
        let c: f64 = c
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("malformed number `{}`", c.trim())))?;
        let e = e
            .split('.')
            .map(|v| {
                v.trim()
                    .parse::<u32>()
                    .map_err(|_| parse_err(format!("malformed exponent `{v}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((c, e));
    }
    let dim = terms.first().map(|(_, e)| e.len()).unwrap_or(0);
    Polynomial::new(dim, terms)
}

/// Parses `name[:args]`:
///
/// ```text
/// gaussian_diag:1,4
/// example1 | example2
/// hermite_pure:1,1
/// indicator_poly:1.5@1.1+-0.5@0.2
/// gaussian_directional:0.6,0.8;mu=20;nu=0.5;phi=1@0+0.5@2
/// custom_grid:path/to/file
/// ```
///
/// Relative `custom_grid` paths are resolved against `base` when given.
pub fn parse_function(s: &str, base: Option<&Path>) -> Result<CatalogFunction> {
    let (name, args) = s.split_once(':').unwrap_or((s, ""));
    let args = args.trim();
    match name.trim() {
        "example1" => Ok(CatalogFunction::example1()),
        "example2" => Ok(CatalogFunction::example2()),
        "gaussian_diag" => CatalogFunction::gaussian_diag(&floats(args)?),
        "hermite_pure" => {
            let alpha = args
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<u32>()
                        .map_err(|_| parse_err(format!("malformed index `{}`", v.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            CatalogFunction::hermite_pure(&alpha)
        }
        "indicator_poly" => Ok(CatalogFunction::indicator_poly(parse_polynomial(args)?)),
        "gaussian_directional" => {
            let mut parts = args.split(';');
            let l = floats(parts.next().unwrap_or(""))?;
            let (mut mu, mut nu, mut phi) = (None, None, None);
            for p in parts {
                let (key, v) = p.split_once('=').unwrap_or((p, ""));
                let real = || {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| parse_err(format!("malformed {key} `{v}`")))
                };
                match key.trim() {
                    "mu" => mu = Some(real()?),
                    "nu" => nu = Some(real()?),
                    "phi" => phi = Some(parse_polynomial(v)?),
                    _ => return Err(parse_err(format!("unknown gaussian_directional part `{p}`"))),
                }
            }
            let transverse = l.len().saturating_sub(1).max(1);
            let phi = phi.unwrap_or_else(|| Polynomial::constant(transverse, 1.0));
            let mu = mu.ok_or_else(|| parse_err("gaussian_directional needs mu="))?;
            Ok(CatalogFunction::GaussianDirectional(DirectionalGaussian::new(
                l,
                mu,
                nu.unwrap_or(1.0),
                phi,
            )?))
        }
        "custom_grid" => {
            let p = PathBuf::from(args);
            let p = match base {
                Some(dir) if p.is_relative() => dir.join(p),
                _ => p,
            };
            load_custom_grid(&p)
        }
        other => Err(Error::UnknownFunction(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_syntax() {
        let p = |s: &str| parse_function(s, None).unwrap();
        assert_eq!(p("example1").id(), "example1");
        assert_eq!(p("hermite_pure:1,2").dim(), 2);
        assert_eq!(p("gaussian_diag:1,4"), CatalogFunction::gaussian_diag(&[1.0, 4.0]).unwrap());
        let poly = p("indicator_poly:1.5@1.1+-0.5@0.2");
        assert_eq!(poly.dim(), 2);
        assert_eq!(poly.params(), "1.5@1.1;-0.5@0.2");
        let g = p("gaussian_directional:0.6,0.8;mu=20;nu=0.5;phi=1@0+0.5@2");
        assert_eq!(g.dim(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_function("gaussian_directional:0.6,0.8", None).is_err());
        assert!(matches!(parse_function("sinc:1", None), Err(Error::UnknownFunction(_))));
        assert!(parse_function("gaussian_diag:1,x", None).is_err());
        assert!(parse_function("gaussian_diag:-1", None).is_err());
        assert!(parse_polynomial("1.5").is_err());
        assert!(parse_function("custom_grid:/nonexistent/file", None).is_err());
    }
}
