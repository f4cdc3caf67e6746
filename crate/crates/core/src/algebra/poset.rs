use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite quasi-order (reflexive and transitive, not necessarily
/// antisymmetric). Elements are addressed by index; labels are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cofinality {
    None,
    Weak,
    Strong,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of the given relation pairs `a <= b`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(labels: Vec<String>, relations: &[(String, String)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate poset element `{l}`")));
            }
        }
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            leq[ia][ib] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(FinitePoset { labels, index, leq })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(labels: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            &relations
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    /// The chain `0 <= 1 <= ... <= n-1` with labels `"0"`, `"1"`, ...
    pub fn chain(n: usize) -> Self {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<(String, String)> = (1..n)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect();
        Self::new(labels, &rel).expect("chain is valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All related pairs `(a, b)` with `a <= b` and `a != b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq[a][b])
            .collect()
    }

    /// Every pair of elements has a common upper bound.
    pub fn is_directed(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| self.leq[a][c] && self.leq[b][c])))
    }

    /// Induced sub-quasi-order on the given elements (in the given order).
    pub fn restrict(&self, subset: &[usize]) -> FinitePoset {
        let labels: Vec<String> = subset.iter().map(|&i| self.labels[i].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let leq = subset
            .iter()
            .map(|&a| subset.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        FinitePoset { labels, index, leq }
    }

    pub fn resolve(&self, labels: &[String]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l)).collect()
    }
}

/// Strongest cofinality class of the inclusion of `subset` into `poset`.
///
/// Weak: every element lies below some subset element. Strong: additionally,
/// any two subset elements above a common element have a common upper bound
/// inside the subset.
pub fn cofinality_class(poset: &FinitePoset, subset: &[String]) -> Result<Cofinality> {
    let sub = poset.resolve(subset)?;
    let n = poset.len();
    let weak = (0..n).all(|l| sub.iter().any(|&w| poset.leq(l, w)));
    if !weak {
        return Ok(Cofinality::None);
    }
    for l in 0..n {
        let above: Vec<usize> = sub.iter().copied().filter(|&w| poset.leq(l, w)).collect();
        for &w1 in &above {
            for &w2 in &above {
                if !sub.iter().any(|&w| poset.leq(w1, w) && poset.leq(w2, w)) {
                    return Ok(Cofinality::Weak);
                }
            }
        }
    }
    Ok(Cofinality::Strong)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinitePoset::chain(3);
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p.strict_pairs().len(), 3);
    }

    #[test]
    fn cofinality_examples() {
        let p = FinitePoset::chain(3);
        assert_eq!(
            cofinality_class(&p, &s(&["0", "1", "2"])).unwrap(),
            Cofinality::Strong
        );
        assert_eq!(
            cofinality_class(&p, &s(&["2"])).unwrap(),
            Cofinality::Strong
        );
        let anti = FinitePoset::from_strs(&["a", "b"], &[]).unwrap();
        assert_eq!(
            cofinality_class(&anti, &s(&["a"])).unwrap(),
            Cofinality::None
        );
    }

    #[test]
    fn weak_but_not_strong() {
        // l below both a and b, which have no common upper bound in the subset
        let p = FinitePoset::from_strs(&["l", "a", "b"], &[("l", "a"), ("l", "b")]).unwrap();
        assert_eq!(
            cofinality_class(&p, &s(&["a", "b"])).unwrap(),
            Cofinality::Weak
        );
    }

    #[test]
    fn quasi_order_keeps_equivalent_elements() {
        let p = FinitePoset::from_strs(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(p.leq(0, 1) && p.leq(1, 0));
        assert_eq!(p.len(), 2);
        assert_eq!(
            cofinality_class(&p, &s(&["b"])).unwrap(),
            Cofinality::Strong
        );
    }

    #[test]
    fn unknown_labels_are_rejected() {
        let p = FinitePoset::chain(2);
        assert!(matches!(
            cofinality_class(&p, &s(&["9"])),
            Err(Error::UnknownLabel(_))
        ));
    }
}
