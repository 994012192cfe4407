use std::fmt;

use num_integer::Integer;

use super::PermError;

/// Point type. Degrees up to 65535 are supported.
pub type Point = u16;

/// A permutation of `{0, .., degree - 1}`, displayed 1-indexed in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Box<[Point]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).map(|i| i as Point).collect() }
    }

    /// Builds from 0-indexed images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > Point::MAX as usize {
            return Err(PermError::Degree(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Self { images: images.into_iter().map(|i| i as Point).collect() })
    }

    pub(crate) fn from_raw(images: &[Point]) -> Self {
        Self { images: images.into() }
    }

    /// Builds from 1-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if moved[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                moved[p - 1] = true;
                img[p - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Self::from_images(img)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Syntax(rest.split_whitespace().next().unwrap_or(rest).to_string()));
            };
            let end = body.find(')').ok_or_else(|| PermError::Syntax(rest.to_string()))?;
            let cycle = body[..end]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| PermError::Syntax(t.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    /// Image of the 0-indexed point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self * other`: apply `self` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self { images: self.images.iter().map(|&p| other.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0 as Point; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Self { images: inv.into() }
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        cycle_lengths(&self.images)
    }

    /// Least `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> u64 {
        raw_order(&self.images)
    }

    /// 0-indexed cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.image(s) == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.image(x);
            }
            out.push(c);
        }
        out
    }
}

pub(crate) fn cycle_lengths(images: &[Point]) -> Vec<usize> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x] as usize;
        }
        out.push(len);
    }
    out
}

pub(crate) fn raw_order(images: &[Point]) -> u64 {
    cycle_lengths(images).into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
