use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// Orders labels numerically when both parse as integers, otherwise as strings;
/// numeric labels sort before the rest.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

/// A finite abstract simplicial complex over totally ordered vertex labels.
///
/// Vertex `i` is the `i`-th label; simplices are stored per dimension in
/// lexicographic order of their index lists.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    vertex_index: HashMap<String, usize>,
    by_dim: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Builds the face closure of `simplices`. The vertex order follows
    /// `vertices`; labels only mentioned in simplices are appended in natural
    /// order. Every listed vertex becomes a 0-simplex.
    pub fn new(vertices: Vec<String>, simplices: &[Vec<String>]) -> Result<Self> {
        let mut labels = Vec::new();
        let mut vertex_index = HashMap::new();
        for v in vertices {
            if vertex_index.contains_key(&v) {
                return Err(Error::InvalidComplex(format!("vertex `{v}` listed twice")));
            }
            vertex_index.insert(v.clone(), labels.len());
            labels.push(v);
        }
        let extra: BTreeSet<&String> = simplices
            .iter()
            .flatten()
            .filter(|v| !vertex_index.contains_key(*v))
            .collect();
        let mut extra: Vec<&String> = extra.into_iter().collect();
        extra.sort_by(|a, b| natural_cmp(a, b));
        for v in extra {
            vertex_index.insert(v.clone(), labels.len());
            labels.push(v.clone());
        }
        let mut maximal = Vec::with_capacity(simplices.len() + labels.len());
        for s in simplices {
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            let mut idx: Simplex = s.iter().map(|v| vertex_index[v]).collect();
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {s:?} repeats a vertex"
                )));
            }
            maximal.push(idx);
        }
        maximal.extend((0..labels.len()).map(|v| vec![v]));
        Ok(Self::from_indexed(labels, maximal))
    }

    /// Convenience constructor from string slices (vertex order = natural order).
    pub fn from_strs(simplices: &[&[&str]]) -> Result<Self> {
        let s: Vec<Vec<String>> = simplices
            .iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect())
            .collect();
        Self::new(Vec::new(), &s)
    }

    /// Face closure of sorted index simplices over the given labels.
    pub(crate) fn from_indexed(
        labels: Vec<String>,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Self {
        let mut all: HashSet<Simplex> = HashSet::new();
        let mut stack: Vec<Simplex> = simplices.into_iter().collect();
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) {
                continue;
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !all.contains(&f) {
                        stack.push(f);
                    }
                }
            }
            all.insert(s);
        }
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        let mut lookup = HashMap::new();
        for layer in &mut by_dim {
            layer.sort_unstable();
            for (i, s) in layer.iter().enumerate() {
                lookup.insert(s.clone(), i);
            }
        }
        let vertex_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        SimplicialComplex {
            labels,
            vertex_index,
            by_dim,
            lookup,
        }
    }

    pub fn empty() -> Self {
        Self::from_indexed(Vec::new(), Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `k`-simplices in lexicographic order (empty past the top dimension).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn simplex_count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.lookup.contains_key(s)
    }

    /// Position of `s` among the simplices of its dimension.
    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// Simplices not properly contained in another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&[usize]> = HashSet::new();
        let mut out = Vec::new();
        for layer in self.by_dim.iter().rev() {
            for s in layer {
                if !covered.contains(s.as_slice()) {
                    out.push(s.clone());
                }
            }
            for s in layer {
                if s.len() > 1 {
                    for i in 0..s.len() {
                        let f: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != i)
                            .map(|(_, &v)| v)
                            .collect();
                        if let Some((stored, _)) = self.lookup.get_key_value(&f) {
                            covered.insert(stored.as_slice());
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Labels of a simplex, in vertex order.
    pub fn simplex_labels(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Resolves labels to a sorted index simplex (no membership check).
    pub fn resolve(&self, labels: &[String]) -> Result<Simplex> {
        let mut s: Simplex = labels
            .iter()
            .map(|l| self.vertex(l))
            .collect::<Result<_>>()?;
        s.sort_unstable();
        Ok(s)
    }

    /// Human-readable `[a,b,c]`.
    pub fn show(&self, s: &[usize]) -> String {
        format!("[{}]", s.iter().map(|&v| self.labels[v].as_str()).join(","))
    }

    /// Whether every simplex of `other` (matched by labels) is a simplex here.
    pub fn contains_complex(&self, other: &SimplicialComplex) -> Result<()> {
        for s in other.all_simplices() {
            let labels = other.simplex_labels(s);
            let here = self
                .resolve(&labels)
                .map_err(|_| Error::NotSubcomplex(other.show(s)))?;
            if !self.contains(&here) {
                return Err(Error::NotSubcomplex(other.show(s)));
            }
        }
        Ok(())
    }

    /// Subcomplex spanned by the given simplices of `self` (face closure),
    /// keeping this complex's vertex order.
    pub fn subcomplex(
        &self,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<SimplicialComplex> {
        let simplices: Vec<Simplex> = simplices.into_iter().collect();
        for s in &simplices {
            if !self.contains(s) {
                return Err(Error::NotSubcomplex(self.show(s)));
            }
        }
        let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let re = simplices
            .into_iter()
            .map(|s| s.iter().map(|v| remap[v]).collect());
        Ok(Self::from_indexed(labels, re))
    }

    /// Indices (in `self`) of the simplices of a subcomplex given by labels.
    pub fn embed(&self, sub: &SimplicialComplex) -> Result<HashSet<Simplex>> {
        self.contains_complex(sub)?;
        sub.all_simplices()
            .map(|s| self.resolve(&sub.simplex_labels(s)))
            .collect()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = self
            .maximal_simplices()
            .iter()
            .map(|s| self.show(s))
            .collect();
        write!(f, "SimplicialComplex({})", top.join(" "))
    }
}

/// A complex together with a subcomplex, both over the ambient vertex indexing.
#[derive(Clone, Debug)]
pub struct ComplexPair {
    complex: SimplicialComplex,
    sub: SimplicialComplex,
    sub_simplices: HashSet<Simplex>,
}

impl ComplexPair {
    pub fn new(complex: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        let sub_simplices = complex.embed(&sub)?;
        let sub = complex.subcomplex(sub_simplices.iter().cloned())?;
        Ok(ComplexPair {
            complex,
            sub,
            sub_simplices,
        })
    }

    /// The pair `(K, ∅)`.
    pub fn absolute(complex: SimplicialComplex) -> Self {
        ComplexPair {
            complex,
            sub: SimplicialComplex::empty(),
            sub_simplices: HashSet::new(),
        }
    }

    /// Builds a pair from a set of ambient simplices that is already face-closed.
    pub fn from_simplices(
        complex: SimplicialComplex,
        sub: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let sub_simplices: HashSet<Simplex> = sub.into_iter().collect();
        let sub = complex.subcomplex(sub_simplices.iter().cloned())?;
        if sub.simplex_count() != sub_simplices.len() {
            return Err(Error::RegionNotClosed(
                "subcomplex simplices are not closed under faces".into(),
            ));
        }
        Ok(ComplexPair {
            complex,
            sub,
            sub_simplices,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    /// Whether an ambient simplex lies in the subcomplex.
    pub fn in_sub(&self, s: &[usize]) -> bool {
        self.sub_simplices.contains(s)
    }

    /// Ambient `k`-simplices outside the subcomplex.
    pub fn relative_cells(&self, k: usize) -> Vec<Simplex> {
        self.complex
            .simplices(k)
            .iter()
            .filter(|s| !self.in_sub(s))
            .cloned()
            .collect()
    }
}
