use std::fmt::Write as _;

use super::group::PermutationGroup;
use super::perm::Permutation;
use super::PermError;

/// Contents of a group file: a degree and generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

fn file_err(line: usize, token: &str, message: impl Into<String>) -> PermError {
    PermError::File { line, token: token.to_string(), message: message.into() }
}

impl GroupSpec {
    /// Parses the text format:
    ///
    /// ```text
    /// # comment
    /// degree 5
    /// gen (1 2 3 4 5)
    /// gen (1 2)
    /// ```
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let mut degree = None;
        let mut generators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match (word, degree) {
                ("degree", None) => {
                    let tok = rest.trim();
                    let d: usize = tok.parse().map_err(|_| file_err(line_no, tok, "expected a positive integer"))?;
                    if d == 0 || d > u16::MAX as usize {
                        return Err(file_err(line_no, tok, "degree out of range"));
                    }
                    degree = Some(d);
                }
                ("degree", Some(_)) => return Err(file_err(line_no, word, "degree given twice")),
                (_, None) => return Err(file_err(line_no, word, "expected `degree N` first")),
                ("gen", Some(d)) => {
                    let p = Permutation::parse_cycles(d, rest).map_err(|e| {
                        let token = match &e {
                            PermError::Syntax(t) => t.clone(),
                            PermError::PointOutOfRange { point, .. } | PermError::RepeatedPoint(point) => {
                                point.to_string()
                            }
                            _ => rest.trim().to_string(),
                        };
                        file_err(line_no, &token, e.to_string())
                    })?;
                    generators.push(p);
                }
                (other, Some(_)) => return Err(file_err(line_no, other, "expected `gen`")),
            }
        }
        let degree = degree.ok_or_else(|| file_err(0, "", "missing `degree` line"))?;
        Ok(Self { degree, generators })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for g in &self.generators {
            writeln!(s, "gen {g}").expect("string write");
        }
        s
    }

    pub fn enumerate(&self) -> Result<PermutationGroup, PermError> {
        PermutationGroup::generate(self.degree, self.generators.clone())
    }

    pub fn enumerate_capped(&self, cap: usize) -> Result<PermutationGroup, PermError> {
        PermutationGroup::generate_capped(self.degree, self.generators.clone(), cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# S5\n\ndegree 5\ngen (1 2 3 4 5)\ngen (1 2)\n";
        let spec = GroupSpec::parse(text).unwrap();
        assert_eq!(spec.degree, 5);
        assert_eq!(GroupSpec::parse(&spec.to_text()).unwrap(), spec);
        assert_eq!(spec.enumerate().unwrap().order(), 120);
    }

    #[test]
    fn trivial_group_file() {
        let spec = GroupSpec::parse("degree 1\n").unwrap();
        assert_eq!(spec.enumerate().unwrap().order(), 1);
    }

    #[test]
    fn errors_name_line_and_token() {
        let e = GroupSpec::parse("degree 5\ngen (1 2 9)\n").unwrap_err();
        assert!(matches!(&e, PermError::File { line: 2, token, .. } if token == "9"), "{e}");
        let e = GroupSpec::parse("gen (1 2)\n").unwrap_err();
        assert!(matches!(&e, PermError::File { line: 1, token, .. } if token == "gen"));
        let e = GroupSpec::parse("degree 4\ngen (1 2\n").unwrap_err();
        assert!(matches!(e, PermError::File { line: 2, .. }));
        let e = GroupSpec::parse("degree x\n").unwrap_err();
        assert!(matches!(&e, PermError::File { line: 1, token, .. } if token == "x"));
        let e = GroupSpec::parse("degree 4\nfoo (1 2)\n").unwrap_err();
        assert!(matches!(&e, PermError::File { line: 2, token, .. } if token == "foo"));
    }
}
