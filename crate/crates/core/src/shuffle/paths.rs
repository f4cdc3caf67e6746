use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Step {
    /// Advance the first factor.
    R,
    /// Advance the second factor.
    U,
}

/// A monotone lattice path from `(0, 0)` to `(m, n)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePath {
    pub steps: Vec<Step>,
    pub m: usize,
    pub n: usize,
    /// Unit squares below the path.
    pub area: usize,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        let mut height = 0;
        let mut area = 0;
        let mut m = 0;
        for s in &steps {
            match s {
                Step::R => {
                    area += height;
                    m += 1;
                }
                Step::U => height += 1,
            }
        }
        LatticePath {
            n: steps.len() - m,
            steps,
            m,
            area,
        }
    }

    /// The mirror path with `R` and `U` exchanged.
    pub fn reflection(&self) -> LatticePath {
        LatticePath::new(
            self.steps
                .iter()
                .map(|s| match s {
                    Step::R => Step::U,
                    Step::U => Step::R,
                })
                .collect(),
        )
    }

    /// `(-1)^area`
    pub fn sign(&self) -> i32 {
        if self.area.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Grid points visited, starting at `(0, 0)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut p = (0, 0);
        let mut out = vec![p];
        for s in &self.steps {
            match s {
                Step::R => p.0 += 1,
                Step::U => p.1 += 1,
            }
            out.push(p);
        }
        out
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .steps
            .iter()
            .map(|s| if *s == Step::R { 'R' } else { 'U' })
            .collect();
        write!(f, "{s}(area {})", self.area)
    }
}

/// All `C(m+n, m)` monotone paths, in lexicographic order of their steps.
pub fn enumerate_paths(m: usize, n: usize) -> Vec<LatticePath> {
    fn go(m: usize, n: usize, prefix: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if m == 0 && n == 0 {
            out.push(LatticePath::new(prefix.clone()));
            return;
        }
        if m > 0 {
            prefix.push(Step::R);
            go(m - 1, n, prefix, out);
            prefix.pop();
        }
        if n > 0 {
            prefix.push(Step::U);
            go(m, n - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::with_capacity(m + n), &mut out);
    out
}
