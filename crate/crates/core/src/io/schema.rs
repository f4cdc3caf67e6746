use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{parse_rational, Rational};
use crate::algebra::{FgAbelianGroup, FinitePoset, GroupMorphism, IntMatrix, InverseSystem};
use crate::cech::{CoverPair, CoverTower, GroundPair, RefinementWitness};
use crate::error::{Error, Result};
use crate::roof::{diagonal_region, TermList};
use crate::shuffle::{GableChain, GableComplex, OrbitSimplex, ProductChain};
use crate::simplicial::{Chain, ComplexPair, RationalPoint, SimplicialComplex};

/// Parses a JSON document, mapping failures to `Error::Parse`.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// `{"vertices": [...], "simplices": [[...], ...]}`; faces may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub simplices: Vec<Vec<String>>,
}

impl ComplexDoc {
    /// Vertices in complex order and the maximal simplices.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDoc {
            vertices: k.labels().to_vec(),
            simplices: k
                .maximal_simplices()
                .iter()
                .map(|s| k.simplex_labels(s))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices.clone(), &self.simplices)
    }
}

/// `{"complex": {...}, "sub": {...}}`; a missing `sub` means the empty subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub complex: ComplexDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<ComplexDoc>,
}

impl PairDoc {
    pub fn from_pair(p: &ComplexPair) -> Self {
        let sub = (!p.sub().is_empty()).then(|| ComplexDoc::from_complex(p.sub()));
        PairDoc {
            complex: ComplexDoc::from_complex(p.complex()),
            sub,
        }
    }

    pub fn build(&self) -> Result<ComplexPair> {
        let complex = self.complex.build()?;
        match &self.sub {
            Some(s) => ComplexPair::new(complex, s.build()?),
            None => Ok(ComplexPair::absolute(complex)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    #[serde(with = "super::bigint")]
    pub coef: BigInt,
    pub vertices: Vec<String>,
}

/// `{"dim": k, "terms": [{"coef": g, "vertices": [...]}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub dim: usize,
    #[serde(default)]
    pub terms: Vec<TermDoc>,
}

impl ChainDoc {
    pub fn from_chain(c: &Chain, k: &SimplicialComplex) -> Self {
        ChainDoc {
            dim: c.dim(),
            terms: c
                .labelled_terms(k)
                .into_iter()
                .map(|(coef, vertices)| TermDoc { coef, vertices })
                .collect(),
        }
    }

    pub fn from_terms(t: &TermList, k: &SimplicialComplex) -> Self {
        ChainDoc {
            dim: t.k(),
            terms: t
                .terms()
                .iter()
                .map(|(g, s)| TermDoc {
                    coef: g.clone(),
                    vertices: k.simplex_labels(s),
                })
                .collect(),
        }
    }

    fn indexed(&self, k: &SimplicialComplex) -> Result<Vec<(BigInt, Vec<usize>)>> {
        self.terms
            .iter()
            .map(|t| {
                if t.vertices.len() != self.dim + 1 {
                    return Err(Error::Dimension(format!(
                        "term {:?} is not a {}-simplex",
                        t.vertices, self.dim
                    )));
                }
                let s = t
                    .vertices
                    .iter()
                    .map(|v| k.vertex(v))
                    .collect::<Result<Vec<_>>>()?;
                Ok((t.coef.clone(), s))
            })
            .collect()
    }

    /// The chain over `k`; every symbol must span a simplex of `k`.
    pub fn to_chain(&self, k: &SimplicialComplex) -> Result<Chain> {
        let c = Chain::from_terms(self.dim, self.indexed(k)?)?;
        c.check_support(k)?;
        Ok(c)
    }

    /// The terms in file order, canonicalized.
    pub fn to_terms(&self, k: &SimplicialComplex) -> Result<TermList> {
        let t = TermList::new(self.dim, self.indexed(k)?)?;
        t.check_support(k)?;
        Ok(t)
    }
}

/// `{"coords": {"v": "p/q", ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub coords: BTreeMap<String, String>,
}

impl PointDoc {
    pub fn from_point(p: &RationalPoint, k: &SimplicialComplex) -> Self {
        PointDoc {
            coords: p.labelled(k),
        }
    }

    pub fn build(&self, k: &SimplicialComplex) -> Result<RationalPoint> {
        let coords = self
            .coords
            .iter()
            .map(|(v, x)| Ok((v.as_str(), parse_rational_field(x)?)))
            .collect::<Result<Vec<(&str, Rational)>>>()?;
        RationalPoint::from_labels(k, &coords)
    }
}

pub fn parse_rational_field(x: &str) -> Result<Rational> {
    parse_rational(x).ok_or_else(|| Error::Parse(format!("`{x}` is not a rational number")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntries {
    Rows(#[serde(with = "super::bigint_matrix")] Vec<Vec<BigInt>>),
    Flat(#[serde(with = "super::bigint_vec")] Vec<BigInt>),
}

/// `{"rows": r, "cols": c, "entries": [...]}`, entries either row-major flat
/// or as a list of rows. Output uses rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: MatrixEntries,
}

impl MatrixDoc {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries: MatrixEntries::Rows((0..m.rows()).map(|i| m.row(i).to_vec()).collect()),
        }
    }

    pub fn build(&self) -> Result<IntMatrix> {
        let flat = match &self.entries {
            MatrixEntries::Flat(v) => v.clone(),
            MatrixEntries::Rows(rows) => {
                // an empty list parses as rows; treat it as an empty matrix
                if rows.len() != self.rows && !(rows.is_empty() && self.rows * self.cols == 0) {
                    return Err(Error::Parse(format!(
                        "expected {} rows, got {}",
                        self.rows,
                        rows.len()
                    )));
                }
                if let Some(r) = rows.iter().find(|r| r.len() != self.cols) {
                    return Err(Error::Parse(format!(
                        "row of length {} in a matrix with {} columns",
                        r.len(),
                        self.cols
                    )));
                }
                rows.concat()
            }
        };
        IntMatrix::new(self.rows, self.cols, flat)
    }
}

/// `{"gens": n, "relations": matrix}`; missing relations mean a free group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub gens: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<MatrixDoc>,
}

impl GroupDoc {
    pub fn from_group(g: &FgAbelianGroup) -> Self {
        GroupDoc {
            gens: g.generator_count(),
            relations: Some(MatrixDoc::from_matrix(g.relations())),
        }
    }

    pub fn build(&self) -> Result<FgAbelianGroup> {
        match &self.relations {
            Some(m) => FgAbelianGroup::new(self.gens, m.build()?),
            None => Ok(FgAbelianGroup::free(self.gens)),
        }
    }
}

/// `{"elements": [...], "leq": [[a, b], ...]}`, closed reflexively and transitively on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetDoc {
    /// All strict relations of the poset.
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDoc {
            elements: p.labels().to_vec(),
            leq: p
                .strict_pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<FinitePoset> {
        FinitePoset::new(self.elements.clone(), &self.leq)
    }
}

fn split_relation(key: &str) -> Result<(&str, &str)> {
    key.split_once("<=")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Parse(format!("map key `{key}` is not of the form `a<=b`")))
}

/// `{"poset": {...}, "groups": {"a": group, ...}, "maps": {"a<=b": matrix}}`
/// where the map for `a <= b` goes from the group at `b` to the group at `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub poset: PosetDoc,
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MatrixDoc>,
}

impl SystemDoc {
    pub fn from_system(sys: &InverseSystem) -> Self {
        let p = sys.poset();
        let groups = (0..p.len())
            .map(|a| (p.label(a).to_string(), GroupDoc::from_group(sys.group(a))))
            .collect();
        let maps = p
            .strict_pairs()
            .into_iter()
            .filter_map(|(a, b)| {
                let f = sys.map_for(a, b)?;
                Some((
                    format!("{}<={}", p.label(a), p.label(b)),
                    MatrixDoc::from_matrix(f.matrix()),
                ))
            })
            .collect();
        SystemDoc {
            poset: PosetDoc::from_poset(p),
            groups,
            maps,
        }
    }

    pub fn build(&self) -> Result<InverseSystem> {
        let poset = self.poset.build()?;
        let groups = poset
            .labels()
            .iter()
            .map(|l| {
                self.groups
                    .get(l)
                    .ok_or_else(|| Error::Parse(format!("no group for element `{l}`")))?
                    .build()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut maps = HashMap::new();
        for (key, m) in &self.maps {
            let (a, b) = split_relation(key)?;
            let (ia, ib) = (poset.index_of(a)?, poset.index_of(b)?);
            maps.insert(
                (ia, ib),
                GroupMorphism::new(groups[ib].clone(), groups[ia].clone(), m.build()?)?,
            );
        }
        InverseSystem::new(poset, groups, maps)
    }
}

/// A finite ground set: labels, or labelled rational coordinate lists.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroundDoc {
    #[serde(default)]
    pub points: Vec<String>,
    #[serde(default)]
    pub subset_a: Vec<String>,
    #[serde(default)]
    pub coords: BTreeMap<String, Vec<String>>,
}

impl GroundDoc {
    pub fn build(&self) -> Result<GroundPair> {
        if self.coords.is_empty() {
            return GroundPair::new(self.points.iter().cloned(), self.subset_a.iter().cloned());
        }
        if let Some(p) = self.points.iter().find(|p| !self.coords.contains_key(*p)) {
            return Err(Error::Parse(format!("point `{p}` has no coordinates")));
        }
        let coords = self
            .coords
            .iter()
            .map(|(n, xs)| {
                Ok((
                    n.clone(),
                    xs.iter()
                        .map(|x| parse_rational_field(x))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        GroundPair::with_coords(coords, self.subset_a.iter().cloned())
    }
}

/// A ground set with one cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub ground: GroundDoc,
    #[serde(flatten)]
    pub cover: CoverPair,
}

/// Ground set, covers keyed by poset element, the refinement order
/// (`a <= b` when `b` refines `a`) and optional witnesses keyed `"a<=b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDoc {
    pub ground: GroundDoc,
    pub poset: PosetDoc,
    pub covers: BTreeMap<String, CoverPair>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, BTreeMap<String, String>>,
}

impl TowerDoc {
    pub fn build(&self) -> Result<(GroundPair, CoverTower)> {
        let ground = self.ground.build()?;
        let poset = self.poset.build()?;
        let covers = poset
            .labels()
            .iter()
            .map(|l| {
                self.covers
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("no cover for element `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut witnesses = HashMap::new();
        for (key, assignment) in &self.witnesses {
            let (a, b) = split_relation(key)?;
            witnesses.insert(
                (poset.index_of(a)?, poset.index_of(b)?),
                RefinementWitness {
                    assignment: assignment.clone(),
                },
            );
        }
        let tower = CoverTower::new(&ground, poset, covers, witnesses)?;
        Ok((ground, tower))
    }
}

/// A region of the gable: the default diagonal region (unless turned off)
/// plus the face closure of the listed cells, each a list of label pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDoc {
    #[serde(default = "default_true")]
    pub include_touching: bool,
    #[serde(default)]
    pub cells: Vec<Vec<(String, String)>>,
}

fn default_true() -> bool {
    true
}

impl Default for RegionDoc {
    fn default() -> Self {
        RegionDoc {
            include_touching: true,
            cells: Vec::new(),
        }
    }
}

impl RegionDoc {
    pub fn build(&self, gable: &GableComplex) -> Result<HashSet<OrbitSimplex>> {
        let base = gable.base();
        let mut cells = Vec::new();
        for pairs in &self.cells {
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((base.vertex(a)?, base.vertex(b)?)))
                .collect::<Result<Vec<(usize, usize)>>>()?;
            let orbit = OrbitSimplex::new(&pairs);
            let cell = orbit
                .oriented()
                .map(|(_, o)| o)
                .filter(|o| gable.contains(o));
            cells.push(cell.ok_or_else(|| Error::OutsideGable(orbit.show(base)))?);
        }
        let touching = if self.include_touching {
            diagonal_region(gable)
        } else {
            HashSet::new()
        };
        Ok(gable.closure(touching.into_iter().chain(cells)))
    }
}

/// A region file: one region, or `{"regions": [...]}` for a nested family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegionFile {
    Many { regions: Vec<RegionDoc> },
    One(RegionDoc),
}

impl RegionFile {
    pub fn regions(&self) -> Vec<RegionDoc> {
        match self {
            RegionFile::Many { regions } => regions.clone(),
            RegionFile::One(r) => vec![r.clone()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTermDoc {
    #[serde(with = "super::bigint")]
    pub coef: BigInt,
    pub pairs: Vec<(String, String)>,
}

/// Chains on pair lists (cross products, gable chains):
/// `{"dim": k, "terms": [{"coef": g, "pairs": [[a, b], ...]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairChainDoc {
    pub dim: usize,
    pub terms: Vec<PairTermDoc>,
}

impl PairChainDoc {
    fn labelled(k: &SimplicialComplex, pairs: &[(usize, usize)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&(a, b)| (k.label(a).to_string(), k.label(b).to_string()))
            .collect()
    }

    /// A product chain over `left × right`.
    pub fn from_product(
        c: &ProductChain,
        left: &SimplicialComplex,
        right: &SimplicialComplex,
    ) -> Self {
        PairChainDoc {
            dim: c.dim(),
            terms: c
                .iter()
                .map(|(s, g)| PairTermDoc {
                    coef: g.clone(),
                    pairs: s
                        .iter()
                        .map(|&(a, b)| (left.label(a).to_string(), right.label(b).to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    /// A gable chain, each orbit written by its canonical representative.
    pub fn from_gable(c: &GableChain, k: &SimplicialComplex) -> Self {
        PairChainDoc {
            dim: c.dim(),
            terms: c
                .iter()
                .map(|(o, g)| PairTermDoc {
                    coef: g.clone(),
                    pairs: Self::labelled(k, o.canonical()),
                })
                .collect(),
        }
    }
}
