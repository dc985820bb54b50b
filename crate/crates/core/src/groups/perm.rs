use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n−1}` stored as its image array.
///
/// Products compose left to right: `(g * h)(x) = h(g(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_text())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::input(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based cycles, e.g. `&[&[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt as usize > n {
                    return Err(Error::input(format!("point {pt} outside 1..={n}")));
                }
                if used[pt as usize - 1] {
                    return Err(Error::input(format!("point {pt} repeated in cycles")));
                }
                used[pt as usize - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[pt as usize - 1] = next - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)` (1-based; `()` is the identity).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::input(format!("bad cycle notation {text:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::input(format!("unclosed cycle in {text:?}")))?;
            let inner = &body[..close];
            if !inner.is_empty() {
                let pts = inner
                    .split(',')
                    .map(|s| {
                        s.parse::<u32>()
                            .map_err(|_| Error::input(format!("bad point {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(pts);
            }
            rest = &body[close + 1..];
        }
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn to_cycle_text(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}
