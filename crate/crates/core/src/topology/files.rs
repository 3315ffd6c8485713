//! Plain-text inputs: stratum tables and singularity invariants.
//!
//! Both formats are whitespace-separated, one record per line, with `#`
//! starting a comment.

use num_complex::Complex64;

use super::{StratumDatum, TopologyError};
use crate::poly::{parse_constant, Coefficient};

/// Invariants of a singular point supplied by the user.
#[derive(Clone, Debug, PartialEq)]
pub struct UserSingularity {
    pub point: Vec<Complex64>,
    pub multiplicity: u32,
    pub branch_count: u32,
    pub delta: u32,
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn field<T: std::str::FromStr>(line: usize, name: &str, s: &str) -> Result<T, TopologyError> {
    s.parse().map_err(|_| TopologyError::File {
        line,
        message: format!("invalid {name} '{s}'"),
    })
}

/// Lines `label chi eu`.
pub fn parse_strata_file(text: &str) -> Result<Vec<StratumDatum>, TopologyError> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 3 {
                return Err(TopologyError::File {
                    line,
                    message: format!("expected 'label chi eu', got {} fields", f.len()),
                });
            }
            Ok(StratumDatum {
                label: f[0].to_string(),
                chi: field(line, "chi", f[1])?,
                eu: field(line, "eu", f[2])?,
            })
        })
        .collect()
}

/// Lines `x0:x1:x2 m r delta`, coordinates being constant expressions such
/// as `1/2`, `-i` or `(1+2*i)/3`.
pub fn parse_singularity_file(text: &str) -> Result<Vec<UserSingularity>, TopologyError> {
    records(text)
        .map(|(line, f)| {
            if f.len() != 4 {
                return Err(TopologyError::File {
                    line,
                    message: format!("expected 'point m r delta', got {} fields", f.len()),
                });
            }
            let point = f[0]
                .split(':')
                .map(|c| {
                    parse_constant(c)
                        .map(|g| g.to_complex())
                        .map_err(|e| TopologyError::File {
                            line,
                            message: format!("coordinate '{c}': {e}"),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if point.iter().all(|c| c.norm() == 0.0) {
                return Err(TopologyError::File {
                    line,
                    message: "the zero vector is not a projective point".into(),
                });
            }
            let s = UserSingularity {
                point,
                multiplicity: field(line, "multiplicity", f[1])?,
                branch_count: field(line, "branch count", f[2])?,
                delta: field(line, "delta", f[3])?,
            };
            if s.multiplicity < 2 || s.branch_count == 0 || s.branch_count > s.multiplicity {
                return Err(TopologyError::File {
                    line,
                    message: "need m >= 2 and 1 <= r <= m".into(),
                });
            }
            Ok(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strata_with_comments() {
        let text = "# stratum chi eu\nsmooth -1 1\n\nnode 1 2 # the origin\n";
        let s = parse_strata_file(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1], StratumDatum { label: "node".into(), chi: 1, eu: 2 });
        assert!(matches!(
            parse_strata_file("a 1\n"),
            Err(TopologyError::File { line: 1, .. })
        ));
        assert!(matches!(
            parse_strata_file("ok 1 1\nbad x 1\n"),
            Err(TopologyError::File { line: 2, .. })
        ));
    }

    #[test]
    fn singularity_records() {
        let s = parse_singularity_file("0:1:-i 2 2 1\n1/2:0:1 3 1 3 # ordinary? no\n").unwrap();
        assert_eq!(s[0].point[2], Complex64::new(0.0, -1.0));
        assert_eq!(s[1].point[0], Complex64::new(0.5, 0.0));
        assert_eq!((s[1].multiplicity, s[1].branch_count, s[1].delta), (3, 1, 3));
        assert!(parse_singularity_file("0:0:0 2 2 1").is_err());
        assert!(parse_singularity_file("0:0:1 1 1 0").is_err());
        assert!(parse_singularity_file("0:0:1 2 3 1").is_err());
        assert!(parse_singularity_file("0:q:1 2 2 1").is_err());
    }
}
