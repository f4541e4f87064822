//! The `key=value` run specification.

use std::fmt;
use std::path::{Path, PathBuf};

use uplocal::functions::parse_function;
use uplocal::{CatalogFunction, Direction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Compute,
    Optimize,
    Hermite,
    Periodize,
    SweepDirection,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Compute => "compute",
            Self::Optimize => "optimize",
            Self::Hermite => "hermite",
            Self::Periodize => "periodize",
            Self::SweepDirection => "sweep-direction",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "compute" => Self::Compute,
            "optimize" => Self::Optimize,
            "hermite" => Self::Hermite,
            "periodize" => Self::Periodize,
            "sweep-direction" => Self::SweepDirection,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    CsvSvg,
}

/// Solvers run by `optimize`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    /// Stationary points of the uncertainty product on the simplex.
    Candidates,
    /// Extreme eigenpairs of the sum-functional matrix.
    SumEigen,
    /// Sphere sweep of both objectives.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub function: CatalogFunction,
    pub direction: Option<Direction>,
    pub grid_r: Option<f64>,
    pub grid_n: Option<usize>,
    pub lambdas: Vec<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub resolution: Option<usize>,
    pub cutoff: usize,
    pub solvers: Vec<Solver>,
}

/// Where a setting came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Line(usize),
    Flag(String),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Line(n) => write!(f, "line {n}"),
            Self::Flag(name) => write!(f, "--{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub origin: Option<Origin>,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.origin {
            Some(o) => write!(f, "{o}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for SpecError {}

fn err(origin: &Origin, message: impl Into<String>) -> SpecError {
    SpecError {
        origin: Some(origin.clone()),
        message: message.into(),
    }
}

pub const KEYS: &[&str] = &[
    "command",
    "function",
    "direction",
    "grid-R",
    "grid-n",
    "lambdas",
    "out",
    "format",
    "resolution",
    "cutoff",
];

/// Settings collected before validation.
#[derive(Debug, Default)]
pub struct SpecBuilder {
    command: Option<(Command, Origin)>,
    function: Option<(CatalogFunction, Origin)>,
    direction: Option<(Vec<f64>, Origin)>,
    grid_r: Option<f64>,
    grid_n: Option<usize>,
    lambdas: Option<Vec<f64>>,
    out: Option<PathBuf>,
    format: Option<Format>,
    resolution: Option<usize>,
    cutoff: Option<usize>,
    base_dir: Option<PathBuf>,
}

impl SpecBuilder {
    /// Relative `custom_grid` paths resolve against `dir`.
    pub fn with_base_dir(dir: &Path) -> Self {
        Self {
            base_dir: Some(dir.to_path_buf()),
            ..Self::default()
        }
    }

    pub fn read(&mut self, text: &str) -> Result<(), SpecError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let origin = Origin::Line(i + 1);
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(&origin, format!("expected key=value, got `{line}`")));
            };
            self.set(key.trim(), value.trim(), origin)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str, origin: Origin) -> Result<(), SpecError> {
        match key {
            "command" => {
                let c = Command::parse(value)
                    .ok_or_else(|| err(&origin, format!("unknown command `{value}`")))?;
                self.command = Some((c, origin));
            }
            "function" => {
                let f = parse_function(value, self.base_dir.as_deref()).map_err(|e| err(&origin, e.to_string()))?;
                self.function = Some((f, origin));
            }
            "direction" => self.direction = Some((numbers(value, &origin)?, origin)),
            "grid-R" => {
                let r = number(value, &origin)?;
                if !(r > 0.0 && r.is_finite()) {
                    return Err(err(&origin, "grid-R must be positive"));
                }
                self.grid_r = Some(r);
            }
            "grid-n" => self.grid_n = Some(count(value, &origin)?),
            "lambdas" => {
                let l = numbers(value, &origin)?;
                if l.iter().any(|v| !(*v > 0.0)) {
                    return Err(err(&origin, "λ values must be positive"));
                }
                self.lambdas = Some(l);
            }
            "out" => {
                if value.is_empty() {
                    return Err(err(&origin, "empty output prefix"));
                }
                self.out = Some(PathBuf::from(value));
            }
            "format" => {
                self.format = Some(match value {
                    "csv" => Format::Csv,
                    "csv+svg" => Format::CsvSvg,
                    _ => return Err(err(&origin, format!("unknown format `{value}`"))),
                })
            }
            "resolution" => self.resolution = Some(count(value, &origin)?),
            "cutoff" => self.cutoff = Some(count(value, &origin)?),
            _ => return Err(err(&origin, format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn build(self) -> Result<RunSpec, SpecError> {
        let missing = |what: &str| SpecError {
            origin: None,
            message: format!("missing `{what}`"),
        };
        let (function, _) = self.function.ok_or_else(|| missing("function"))?;
        let direction = match self.direction {
            Some((v, origin)) => {
                if v.len() != function.dim() {
                    return Err(err(
                        &origin,
                        format!(
                            "dimension mismatch: direction has {} components, `{}` is {}-dimensional",
                            v.len(),
                            function.id(),
                            function.dim()
                        ),
                    ));
                }
                Some(Direction::new(v).map_err(|e| err(&origin, e.to_string()))?)
            }
            None => None,
        };
        let (command, origin) = self.command.ok_or_else(|| missing("command"))?;
        if command == Command::Compute && direction.is_none() {
            return Err(err(&origin, "compute needs a direction"));
        }
        let format = self.format.unwrap_or(Format::Csv);
        if format == Format::CsvSvg && self.out.is_none() {
            return Err(err(&origin, "format csv+svg needs an output prefix (out=...)"));
        }
        let mut lambdas = self.lambdas.unwrap_or_else(|| vec![1.0, 2.0, 4.0, 8.0, 16.0]);
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup();
        let solvers = if command == Command::Optimize {
            vec![Solver::Candidates, Solver::SumEigen, Solver::BruteForce]
        } else {
            Vec::new()
        };
        Ok(RunSpec {
            command,
            function,
            direction,
            grid_r: self.grid_r,
            grid_n: self.grid_n,
            lambdas,
            out: self.out,
            format,
            resolution: self.resolution,
            cutoff: self.cutoff.unwrap_or(10),
            solvers,
        })
    }
}

/// Parses a complete specification file.
pub fn parse_spec(text: &str) -> Result<RunSpec, SpecError> {
    let mut b = SpecBuilder::default();
    b.read(text)?;
    b.build()
}

fn number(s: &str, origin: &Origin) -> Result<f64, SpecError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| err(origin, format!("malformed number `{}`", s.trim())))
}

fn numbers(s: &str, origin: &Origin) -> Result<Vec<f64>, SpecError> {
    if s.trim().is_empty() {
        return Err(err(origin, "empty list"));
    }
    s.split(',').map(|p| number(p, origin)).collect()
}

fn count(s: &str, origin: &Origin) -> Result<usize, SpecError> {
    match s.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(err(origin, format!("expected a positive integer, got `{}`", s.trim()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_spec() {
        let s = parse_spec("command=compute\nfunction=gaussian_diag:1,4\ndirection=1,0").unwrap();
        assert_eq!(s.command, Command::Compute);
        assert_eq!(s.function, CatalogFunction::gaussian_diag(&[1.0, 4.0]).unwrap());
        assert_eq!(s.direction, Some(Direction::axis(2, 0)));
        assert_eq!(s.format, Format::Csv);
    }

    #[test]
    fn optimize_schedules_both_solvers() {
        let s = parse_spec("command=optimize\nfunction=example2").unwrap();
        assert!(s.solvers.contains(&Solver::Candidates));
        assert!(s.solvers.contains(&Solver::SumEigen));
    }

    #[test]
    fn dimension_mismatch_names_the_line() {
        let e = parse_spec("direction=1,0,0\nfunction=gaussian_diag:1,4").unwrap_err();
        assert_eq!(e.origin, Some(Origin::Line(1)));
        assert!(e.message.contains("dimension mismatch"));
    }

    #[test]
    fn unknown_key_and_bad_number() {
        let e = parse_spec("# header\ncommand=compute\n\ncolour=red").unwrap_err();
        assert_eq!(e.to_string(), "line 4: unknown key `colour`");
        let e = parse_spec("command=compute\nfunction=example1\ndirection=1,x").unwrap_err();
        assert_eq!(e.origin, Some(Origin::Line(3)));
        assert!(e.message.contains("malformed number"));
        let e = parse_spec("command=compute\nfunction=gaussian_diag:1,-2").unwrap_err();
        assert_eq!(e.origin, Some(Origin::Line(2)));
    }

    #[test]
    fn missing_fields() {
        assert!(parse_spec("function=example1").unwrap_err().message.contains("command"));
        assert!(parse_spec("command=compute\nfunction=example1").is_err());
        assert!(parse_spec("command=optimize\nfunction=example1\nformat=csv+svg").is_err());
    }
}
