use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// A finite ground set `X` with a subset `A`, optionally with rational
/// coordinates for the points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroundPair {
    points: BTreeSet<String>,
    subset_a: BTreeSet<String>,
    coords: BTreeMap<String, Vec<Rational>>,
}

impl GroundPair {
    pub fn new(
        points: impl IntoIterator<Item = String>,
        subset_a: impl IntoIterator<Item = String>,
    ) -> Result<Self> {
        let points: BTreeSet<String> = points.into_iter().collect();
        let subset_a: BTreeSet<String> = subset_a.into_iter().collect();
        if let Some(a) = subset_a.iter().find(|a| !points.contains(*a)) {
            return Err(Error::UnknownLabel(format!("{a} is in A but not in X")));
        }
        Ok(GroundPair {
            points,
            subset_a,
            coords: BTreeMap::new(),
        })
    }

    pub fn from_strs(points: &[&str], subset_a: &[&str]) -> Result<Self> {
        Self::new(
            points.iter().map(|s| s.to_string()),
            subset_a.iter().map(|s| s.to_string()),
        )
    }

    /// Points with coordinates; all points must have the same dimension.
    pub fn with_coords(
        coords: BTreeMap<String, Vec<Rational>>,
        subset_a: impl IntoIterator<Item = String>,
    ) -> Result<Self> {
        let dims: BTreeSet<usize> = coords.values().map(Vec::len).collect();
        if dims.len() > 1 {
            return Err(Error::InvalidPoint(format!(
                "points of different dimensions {dims:?}"
            )));
        }
        let mut ground = Self::new(coords.keys().cloned(), subset_a)?;
        ground.coords = coords;
        Ok(ground)
    }

    pub fn points(&self) -> &BTreeSet<String> {
        &self.points
    }

    pub fn subset_a(&self) -> &BTreeSet<String> {
        &self.subset_a
    }

    pub fn coords(&self) -> &BTreeMap<String, Vec<Rational>> {
        &self.coords
    }
}

/// Named subsets `Uᵢ` of the ground set together with the names of the sets
/// forming the relative part `V`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoverPair {
    pub sets: BTreeMap<String, BTreeSet<String>>,
    #[serde(default)]
    pub relative: BTreeSet<String>,
}

impl CoverPair {
    pub fn new(sets: BTreeMap<String, BTreeSet<String>>, relative: BTreeSet<String>) -> Self {
        CoverPair { sets, relative }
    }

    pub fn from_strs(sets: &[(&str, &[&str])], relative: &[&str]) -> Self {
        CoverPair {
            sets: sets
                .iter()
                .map(|(name, pts)| {
                    (
                        name.to_string(),
                        pts.iter().map(|p| p.to_string()).collect(),
                    )
                })
                .collect(),
            relative: relative.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn set(&self, name: &str) -> Result<&BTreeSet<String>> {
        self.sets
            .get(name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn is_relative(&self, name: &str) -> bool {
        self.relative.contains(name)
    }

    /// Names of the nonempty sets, in name order.
    pub fn nonempty_names(&self) -> Vec<&String> {
        self.sets
            .iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(n, _)| n)
            .collect()
    }

    /// Checks that the sets cover `X`, the relative sets cover `A`, and every
    /// named point and relative name exists.
    pub fn validate(&self, ground: &GroundPair) -> Result<()> {
        for (name, set) in &self.sets {
            if let Some(p) = set.iter().find(|p| !ground.points.contains(*p)) {
                return Err(Error::InvalidCover(format!(
                    "set {name} contains the unknown point `{p}`"
                )));
            }
        }
        if let Some(r) = self.relative.iter().find(|r| !self.sets.contains_key(*r)) {
            return Err(Error::InvalidCover(format!(
                "relative name {r} is not a set"
            )));
        }
        if let Some(p) = ground
            .points
            .iter()
            .find(|p| !self.sets.values().any(|s| s.contains(*p)))
        {
            return Err(Error::Uncovered(p.clone()));
        }
        let relative_covers = |a: &String| self.relative.iter().any(|r| self.sets[r].contains(a));
        if let Some(a) = ground.subset_a.iter().find(|a| !relative_covers(a)) {
            return Err(Error::InvalidCover(format!(
                "point `{a}` of A lies in no relative set"
            )));
        }
        Ok(())
    }
}

/// The cover by pairwise intersections `U ∩ U′`, with relative part the
/// intersections of relative sets. Empty intersections are dropped, and an
/// intersection equal to an earlier one is kept once, named after the first
/// relative pair producing it if there is one, otherwise the first pair.
/// Returns the cover and witnesses of its refinement of `c1` and `c2`.
pub fn common_refinement(
    c1: &CoverPair,
    c2: &CoverPair,
) -> (
    CoverPair,
    super::RefinementWitness,
    super::RefinementWitness,
) {
    struct Piece {
        name: String,
        sources: (String, String),
        relative: bool,
    }
    let mut pieces: BTreeMap<BTreeSet<String>, Piece> = BTreeMap::new();
    let mut order: Vec<BTreeSet<String>> = Vec::new();
    for (a, sa) in &c1.sets {
        for (b, sb) in &c2.sets {
            let meet: BTreeSet<String> = sa.intersection(sb).cloned().collect();
            if meet.is_empty() {
                continue;
            }
            let relative = c1.is_relative(a) && c2.is_relative(b);
            let candidate = Piece {
                name: format!("{a}∩{b}"),
                sources: (a.clone(), b.clone()),
                relative,
            };
            match pieces.get_mut(&meet) {
                None => {
                    order.push(meet.clone());
                    pieces.insert(meet, candidate);
                }
                Some(p) if relative && !p.relative => *p = candidate,
                Some(_) => {}
            }
        }
    }
    let mut cover = CoverPair::default();
    let mut to_first = super::RefinementWitness::default();
    let mut to_second = super::RefinementWitness::default();
    for set in order {
        let p = &pieces[&set];
        if p.relative {
            cover.relative.insert(p.name.clone());
        }
        to_first
            .assignment
            .insert(p.name.clone(), p.sources.0.clone());
        to_second
            .assignment
            .insert(p.name.clone(), p.sources.1.clone());
        cover.sets.insert(p.name.clone(), set);
    }
    (cover, to_first, to_second)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Largest coordinate difference.
    LInf,
    /// Euclidean distance, compared through squares.
    L2,
}

impl Metric {
    /// Whether `d(p, q) < r`.
    pub fn within(self, p: &[Rational], q: &[Rational], r: &Rational) -> bool {
        let diffs = p.iter().zip(q).map(|(x, y)| (x - y).abs());
        match self {
            Metric::LInf => diffs.fold(Rational::zero(), |m, d| if d > m { d } else { m }) < *r,
            Metric::L2 => diffs.map(|d| &d * &d).sum::<Rational>() < r * r,
        }
    }
}

/// One open ball of radius `r` per center, named after the center; the
/// relative part consists of the balls meeting `A`.
pub fn ball_cover(
    ground: &GroundPair,
    centers: &[String],
    radius: &Rational,
    metric: Metric,
) -> Result<CoverPair> {
    if !radius.is_positive() {
        return Err(Error::Precondition(format!(
            "radius {radius} is not positive"
        )));
    }
    let mut cover = CoverPair::default();
    for c in centers {
        let at = ground
            .coords
            .get(c)
            .ok_or_else(|| Error::UnknownLabel(format!("center {c} has no coordinates")))?;
        let ball: BTreeSet<String> = ground
            .coords
            .iter()
            .filter(|(_, p)| metric.within(p, at, radius))
            .map(|(n, _)| n.clone())
            .collect();
        if ball.iter().any(|p| ground.subset_a.contains(p)) {
            cover.relative.insert(c.clone());
        }
        cover.sets.insert(c.clone(), ball);
    }
    cover.validate(ground)?;
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn circle() -> GroundPair {
        GroundPair::from_strs(&["0", "1", "2", "3", "4", "5"], &[]).unwrap()
    }

    #[test]
    fn validation() {
        let g = GroundPair::from_strs(&["x", "y"], &["x"]).unwrap();
        assert!(CoverPair::from_strs(&[("U", &["x", "y"])], &["U"])
            .validate(&g)
            .is_ok());
        assert_eq!(
            CoverPair::from_strs(&[("U", &["x"])], &["U"]).validate(&g),
            Err(Error::Uncovered("y".into()))
        );
        assert!(matches!(
            CoverPair::from_strs(&[("U", &["x", "y"])], &[]).validate(&g),
            Err(Error::InvalidCover(_))
        ));
        assert!(matches!(
            CoverPair::from_strs(&[("U", &["z"])], &[]).validate(&g),
            Err(Error::InvalidCover(_))
        ));
        assert!(GroundPair::from_strs(&["x"], &["q"]).is_err());
    }

    #[test]
    fn refinement_of_rotated_arcs() {
        let arcs = CoverPair::from_strs(
            &[
                ("A", &["0", "1", "2"]),
                ("B", &["2", "3", "4"]),
                ("C", &["4", "5", "0"]),
            ],
            &[],
        );
        let rotated = CoverPair::from_strs(
            &[
                ("P", &["1", "2", "3"]),
                ("Q", &["3", "4", "5"]),
                ("R", &["5", "0", "1"]),
            ],
            &[],
        );
        let (fine, w1, w2) = common_refinement(&arcs, &rotated);
        assert_eq!(fine.sets.len(), 6);
        assert!(fine.validate(&circle()).is_ok());
        assert!(w1.check(&fine, &arcs).is_ok());
        assert!(w2.check(&fine, &rotated).is_ok());
        // a cover refined with itself keeps its sets and gains their overlaps
        let (same, _, _) = common_refinement(&arcs, &arcs);
        let sets: BTreeSet<_> = same.sets.values().collect();
        assert!(arcs.sets.values().all(|s| sets.contains(s)));
        assert_eq!(sets.len(), 6);
        assert!(same
            .sets
            .values()
            .all(|s| s.len() == 1 || arcs.sets.values().any(|a| a == s)));
    }

    #[test]
    fn refinement_with_the_whole_set() {
        let arcs = CoverPair::from_strs(
            &[
                ("A", &["0", "1", "2"]),
                ("B", &["2", "3", "4"]),
                ("C", &["4", "5", "0"]),
            ],
            &[],
        );
        let whole = CoverPair::from_strs(&[("X", &["0", "1", "2", "3", "4", "5"])], &[]);
        let (fine, _, _) = common_refinement(&arcs, &whole);
        assert_eq!(
            fine.sets.values().collect::<Vec<_>>(),
            arcs.sets.values().collect::<Vec<_>>()
        );
    }

    #[test]
    fn relative_intersections() {
        let g = GroundPair::from_strs(&["a", "b", "c"], &["a"]).unwrap();
        let c1 = CoverPair::from_strs(&[("U", &["a", "b"]), ("V", &["b", "c"])], &["U"]);
        let c2 = CoverPair::from_strs(&[("S", &["a", "b", "c"])], &["S"]);
        let (fine, w1, _) = common_refinement(&c1, &c2);
        assert!(fine.validate(&g).is_ok());
        assert_eq!(fine.relative, ["U∩S".to_string()].into());
        assert!(w1.check(&fine, &c1).is_ok());
    }

    #[test]
    fn balls() {
        let coords: BTreeMap<String, Vec<Rational>> = [("p", 0), ("q", 1), ("r", 3)]
            .iter()
            .map(|(n, x)| (n.to_string(), vec![rat(*x, 1)]))
            .collect();
        let g = GroundPair::with_coords(coords, ["p".to_string()]).unwrap();
        let names: Vec<String> = g.points().iter().cloned().collect();
        let c = ball_cover(&g, &names, &rat(1, 1), Metric::LInf).unwrap();
        assert_eq!(c.sets["p"].len(), 1);
        assert_eq!(c.relative, ["p".to_string()].into());
        let c = ball_cover(&g, &names, &rat(3, 2), Metric::L2).unwrap();
        assert_eq!(c.sets["q"].len(), 2);
        assert_eq!(c.relative, ["p".to_string(), "q".to_string()].into());
        assert!(ball_cover(&g, &names, &rat(0, 1), Metric::L2).is_err());
        assert_eq!(
            ball_cover(&g, &names[..1], &rat(1, 1), Metric::L2),
            Err(Error::Uncovered("q".into()))
        );
    }
}
