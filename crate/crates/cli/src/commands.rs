//! One handler per subcommand. Every handler loads its inputs, calls the
//! library and returns a [`Report`]; errors propagate unchanged so that
//! `main` can render them as structured error reports.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use gable_core::algebra::{
    cofinality_class, inverse_limit, restricted_limit_compare, Cofinality, GroupMorphism,
    InvariantFactors, InverseLimit, LimitComparison,
};
use gable_core::catalog;
use gable_core::cech::{
    all_witnesses, cech_cofinal_compare, cech_homology, common_refinement, nerve, projection,
};
use gable_core::cech::{GroundPair, RefinementWitness};
use gable_core::io::{
    from_json, ChainDoc, ComplexDoc, CoverDoc, MatrixDoc, PairChainDoc, PairDoc, PointDoc,
    RegionFile, SystemDoc, TowerDoc,
};
use gable_core::roof::{
    diagonal_region, fundamental_roof_check, relative_cycle_class, roof, roof_family,
    touches_diagonal_standard, TermList,
};
use gable_core::shuffle::{
    boundary_formula_defect, cross, product_complex, quotient_project, GableComplex,
};
use gable_core::shuffle::{GableChain, OrbitSimplex};
use gable_core::simplicial::{
    barycentric_subdivision, cone_pair, dimension, homology, homology_table, is_full,
    reduced_homology, retract_point, subdivision_partition_check, ComplexPair, SimplicialComplex,
};
use gable_core::{Error, Result};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{Command, PairInput};
use crate::report::{Check, Report};
use crate::suites;

/// Global options that influence a command's computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Context {
    pub seed: u64,
    pub jobs: usize,
}

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Homology { .. } => "homology",
        Command::Subdivide { .. } => "subdivide",
        Command::Cone { .. } => "cone",
        Command::Retract { .. } => "retract",
        Command::Cross { .. } => "cross",
        Command::Quotient { .. } => "quotient",
        Command::ProductComplex { .. } => "product-complex",
        Command::Roof { .. } => "roof",
        Command::RoofFamily { .. } => "roof-family",
        Command::FundamentalCheck { .. } => "fundamental-check",
        Command::Nerve { .. } => "nerve",
        Command::Refine { .. } => "refine",
        Command::Project { .. } => "project",
        Command::Cech { .. } => "cech",
        Command::Limit { .. } => "limit",
        Command::Cofinal { .. } => "cofinal",
        Command::Verify { .. } => "verify",
    }
}

pub fn execute(cmd: &Command, ctx: Context) -> Result<Report> {
    let command = name(cmd);
    let (result, checks) = match cmd {
        Command::Homology { input, k } => homology_cmd(&load_pair(input)?, *k)?,
        Command::Subdivide { input } => subdivide(&load_pair(input)?)?,
        Command::Cone { input } => cone(&load_pair(input)?)?,
        Command::Retract { input, point, t } => retract(&load_pair(input)?, point, t)?,
        Command::Cross {
            complex,
            right,
            terms,
        } => cross_cmd(complex.as_deref(), right.as_deref(), terms)?,
        Command::Quotient { complex, terms } => quotient(complex, terms)?,
        Command::ProductComplex { complex } => product(&load_complex(complex)?)?,
        Command::Roof {
            complex,
            terms,
            region,
            no_class,
        } => roof_cmd(complex.as_deref(), terms, region.as_deref(), *no_class)?,
        Command::RoofFamily {
            complex,
            terms,
            region,
        } => family(complex.as_deref(), terms, region)?,
        Command::FundamentalCheck { complex, terms } => fundamental(complex, terms.as_deref())?,
        Command::Nerve { cover, k } => nerve_cmd(cover, *k)?,
        Command::Refine { cover } => refine(&cover[0], &cover[1])?,
        Command::Project {
            cover,
            witness,
            k,
            all_witnesses,
        } => project(&cover[0], &cover[1], witness.as_deref(), *k, *all_witnesses)?,
        Command::Cech { tower, k, cofinal } => cech(tower, *k, cofinal)?,
        Command::Limit { system } => limit(system)?,
        Command::Cofinal { system, subset } => cofinal(system, subset)?,
        Command::Verify {
            suite,
            max_k,
            trials,
        } => {
            let bounds = suites::Bounds {
                max_k: *max_k,
                trials: *trials,
            };
            return suites::run(*suite, ctx.seed, bounds);
        }
    };
    Ok(Report::new(command, result, checks))
}

type Outcome = Result<(Value, Vec<Check>)>;

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    load::<ComplexDoc>(path)?.build()
}

fn load_pair(input: &PairInput) -> Result<ComplexPair> {
    match (&input.pair, &input.complex) {
        (Some(p), _) => load::<PairDoc>(p)?.build(),
        (None, Some(c)) => {
            let complex = load_complex(c)?;
            match &input.sub {
                Some(s) => ComplexPair::new(complex, load_complex(s)?),
                None => Ok(ComplexPair::absolute(complex)),
            }
        }
        (None, None) => Err(Error::Parse(
            "one of --complex or --pair is required".into(),
        )),
    }
}

/// The complex named by `--complex`, or else the smallest complex carrying
/// every term of the chain file.
fn chain_complex(complex: Option<&Path>, chain: &ChainDoc) -> Result<SimplicialComplex> {
    if let Some(path) = complex {
        return load_complex(path);
    }
    let simplices: Vec<Vec<String>> = chain
        .terms
        .iter()
        .map(|t| {
            t.vertices
                .iter()
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        })
        .collect();
    SimplicialComplex::new(Vec::new(), &simplices)
}

pub fn factors_json(f: &InvariantFactors) -> Value {
    json!({
        "group": f.to_string(),
        "free_rank": f.free_rank,
        "torsion": f.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

pub fn morphism_json(f: &GroupMorphism) -> Value {
    json!({
        "source": factors_json(&f.source().invariant_factors()),
        "target": factors_json(&f.target().invariant_factors()),
        "matrix": MatrixDoc::from_matrix(f.matrix()),
        "is_isomorphism": f.is_isomorphism(),
    })
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn homology_entry(pair: &ComplexPair, k: usize) -> Result<Value> {
    let h = homology(pair, k)?;
    let generators: Vec<ChainDoc> = h
        .generators
        .iter()
        .map(|g| ChainDoc::from_chain(g, pair.complex()))
        .collect();
    let mut entry = factors_json(&h.factors);
    entry["k"] = json!(k);
    entry["orders"] = json!(ints(h.orders()));
    entry["generators"] = json!(generators);
    Ok(entry)
}

fn homology_listing(pair: &ComplexPair, k: Option<i64>) -> Result<Value> {
    match k {
        Some(k) => homology_entry(pair, dimension(k)?),
        None => {
            let top = pair.complex().dim().unwrap_or(0);
            let degrees = (0..=top)
                .map(|d| homology_entry(pair, d))
                .collect::<Result<Vec<_>>>()?;
            Ok(json!({ "degrees": degrees }))
        }
    }
}

fn homology_cmd(pair: &ComplexPair, k: Option<i64>) -> Outcome {
    Ok((homology_listing(pair, k)?, Vec::new()))
}

fn table_json(table: &[InvariantFactors]) -> Vec<String> {
    table.iter().map(|f| f.to_string()).collect()
}

fn subdivide(pair: &ComplexPair) -> Outcome {
    let (k, l) = (pair.complex(), pair.sub());
    let sd = barycentric_subdivision(k, Some(l))?;
    let induced = sd
        .induced_sub
        .clone()
        .unwrap_or_else(SimplicialComplex::empty);
    let partition = subdivision_partition_check(k, &sd);
    let before = homology_table(pair)?;
    let after = homology_table(&ComplexPair::new(sd.sd_complex.clone(), induced.clone())?)?;
    let full = is_full(&sd.sd_complex, &induced);
    let checks = vec![
        Check::with_witness(
            "partition",
            partition.passed,
            partition.violations.join("; "),
        ),
        Check::with_witness(
            "homology-invariance",
            before == after,
            format!("{:?} vs {:?}", table_json(&before), table_json(&after)),
        ),
        Check::with_witness(
            "induced-sub-full",
            full.is_ok(),
            full.err().map(|e| e.to_string()).unwrap_or_default(),
        ),
    ];
    let result = json!({
        "sd_complex": ComplexDoc::from_complex(&sd.sd_complex),
        "induced_sub": ComplexDoc::from_complex(&induced),
        "homology": table_json(&before),
        "sd_homology": table_json(&after),
        "partition": partition,
    });
    Ok((result, checks))
}

fn cone(pair: &ComplexPair) -> Outcome {
    let (cone, apex) = cone_pair(pair)?;
    let top = cone.dim().unwrap_or(0);
    let mut degrees = Vec::new();
    let mut checks = Vec::new();
    for d in 0..=top {
        let reduced = reduced_homology(&cone, d)?.factors;
        let relative = homology(pair, d)?.factors;
        checks.push(Check::with_witness(
            format!("degree-{d}"),
            reduced == relative,
            format!("reduced cone {reduced}, relative {relative}"),
        ));
        degrees.push(json!({ "k": d, "reduced_cone": reduced.to_string(), "relative": relative.to_string() }));
    }
    let result =
        json!({ "apex": apex, "cone": ComplexDoc::from_complex(&cone), "degrees": degrees });
    Ok((result, checks))
}

fn retract(pair: &ComplexPair, point: &Path, t: &str) -> Outcome {
    let (k, l) = (pair.complex(), pair.sub());
    let p = load::<PointDoc>(point)?.build(k)?;
    let t = gable_core::io::parse_rational_field(t)?;
    let r = retract_point(k, l, &p, &t)?;
    let carrier = k.simplex_labels(&r.alpha_prime.carrier());
    let on_l = l.resolve(&carrier).map(|s| l.contains(&s)).unwrap_or(false);
    let checks = vec![Check::with_witness(
        "alpha-prime-in-L",
        on_l,
        format!("carrier {carrier:?}"),
    )];
    let result = json!({
        "a": r.a.to_string(),
        "alpha_prime": PointDoc::from_point(&r.alpha_prime, k),
        "alpha_out": PointDoc::from_point(&r.alpha_out, k),
        "t": t.to_string(),
        "n_complex": ComplexDoc::from_complex(&r.n_complex),
        "n1_complex": ComplexDoc::from_complex(&r.n1_complex),
    });
    Ok((result, checks))
}

fn cross_cmd(
    complex: Option<&Path>,
    right: Option<&Path>,
    terms: &[std::path::PathBuf],
) -> Outcome {
    let (left_doc, right_doc) = (load::<ChainDoc>(&terms[0])?, load::<ChainDoc>(&terms[1])?);
    let left = chain_complex(complex, &left_doc)?;
    let right = match right {
        Some(path) => load_complex(path)?,
        None => left.clone(),
    };
    let (c1, c2) = (left_doc.to_chain(&left)?, right_doc.to_chain(&right)?);
    let product = cross(&c1, &c2);
    let defect = boundary_formula_defect(&c1, &c2);
    let checks = vec![Check::with_witness(
        "boundary-formula",
        defect.is_zero(),
        serde_json::to_string(&PairChainDoc::from_product(&defect, &left, &right))
            .unwrap_or_default(),
    )];
    Ok((
        json!({ "product": PairChainDoc::from_product(&product, &left, &right) }),
        checks,
    ))
}

fn quotient(complex: &Path, terms: &[std::path::PathBuf]) -> Outcome {
    let k = load_complex(complex)?;
    let c1 = load::<ChainDoc>(&terms[0])?.to_chain(&k)?;
    let c2 = load::<ChainDoc>(&terms[1])?.to_chain(&k)?;
    let forward = quotient_project(&cross(&c1, &c2), &k, &k)?;
    let backward = quotient_project(&cross(&c2, &c1), &k, &k)?;
    let mut checks = Vec::new();
    if c1.dim() == c2.dim() {
        let sign = BigInt::from(if c1.dim() % 2 == 0 { 1 } else { -1 });
        let defect = forward.sub(&backward.scale(&sign))?;
        checks.push(Check::with_witness(
            "swap-parity",
            defect.is_zero(),
            serde_json::to_string(&PairChainDoc::from_gable(&defect, &k)).unwrap_or_default(),
        ));
    }
    let result = json!({
        "forward": PairChainDoc::from_gable(&forward, &k),
        "backward": PairChainDoc::from_gable(&backward, &k),
    });
    Ok((result, checks))
}

fn cell_counts(gable: &GableComplex) -> Vec<usize> {
    (0..=gable.dim().unwrap_or(0))
        .map(|d| gable.cells(d).len())
        .collect()
}

fn product(k: &SimplicialComplex) -> Outcome {
    let pc = product_complex(k);
    let product_counts: Vec<usize> = (0..=pc.product.dim().unwrap_or(0))
        .map(|d| pc.product.simplices(d).len())
        .collect();
    let result = json!({
        "product_simplices": product_counts,
        "gable_cells": cell_counts(&pc.gable),
        "gable_cell_count": pc.gable.cell_count(),
        "diagonal_cells": pc.diagonal_sub.len(),
        "product": ComplexDoc::from_complex(&pc.product),
    });
    Ok((result, Vec::new()))
}

fn region_for(gable: &GableComplex, region: Option<&Path>) -> Result<Vec<HashSet<OrbitSimplex>>> {
    match region {
        None => Ok(vec![diagonal_region(gable)]),
        Some(path) => load::<RegionFile>(path)?
            .regions()
            .iter()
            .map(|r| r.build(gable))
            .collect(),
    }
}

fn boundary_check(chain: &GableChain, gable: &GableComplex) -> Check {
    let stray: Vec<String> = chain
        .boundary()
        .iter()
        .filter(|(o, _)| !touches_diagonal_standard(o.canonical()))
        .map(|(o, _)| gable.show(o))
        .collect();
    Check::with_witness(
        "boundary-touches-diagonal",
        stray.is_empty(),
        stray.join(", "),
    )
}

fn roof_cmd(
    complex: Option<&Path>,
    terms: &Path,
    region: Option<&Path>,
    no_class: bool,
) -> Outcome {
    let doc = load::<ChainDoc>(terms)?;
    let k = chain_complex(complex, &doc)?;
    let sigma = doc.to_terms(&k)?;
    let chain = roof(&sigma)?;
    let gable = GableComplex::new(&k);
    let mut result = json!({
        "k": sigma.k(),
        "roof": PairChainDoc::from_gable(&chain, &k),
        "support_size": chain.len(),
        "boundary_terms": chain.boundary().len(),
    });
    let mut checks = vec![boundary_check(&chain, &gable)];
    if !no_class {
        let region = region_for(&gable, region)?.swap_remove(0);
        let class = relative_cycle_class(&chain, &gable, &region)?;
        checks.push(Check::new("relative-cycle", class.is_relative_cycle));
        result["region_size"] = json!(region.len());
        result["class"] = serde_json::to_value(&class).expect("classes serialize");
    }
    Ok((result, checks))
}

fn family(complex: Option<&Path>, terms: &Path, region: &Path) -> Outcome {
    let doc = load::<ChainDoc>(terms)?;
    let k = chain_complex(complex, &doc)?;
    let sigma = doc.to_terms(&k)?;
    let gable = GableComplex::new(&k);
    let regions = region_for(&gable, Some(region))?;
    let fam = roof_family(&sigma, &gable, &regions)?;
    let checks = fam
        .compatible
        .iter()
        .enumerate()
        .map(|(j, &ok)| Check::new(format!("levels-{}-{}-compatible", j, j + 1), ok))
        .collect();
    let result = json!({
        "levels": fam.levels,
        "maps": fam.maps.iter().map(morphism_json).collect::<Vec<_>>(),
        "roof_support": fam.chain.len(),
    });
    Ok((result, checks))
}

fn fundamental(complex: &Path, terms: Option<&Path>) -> Outcome {
    let k = load_complex(complex)?;
    let sigma = match terms {
        Some(path) => load::<ChainDoc>(path)?.to_terms(&k)?,
        None => TermList::from_chain(&catalog::fundamental_cycle(&k)?),
    };
    let report = fundamental_roof_check(&k, &sigma)?;
    let checks = vec![
        Check::with_witness(
            "support-matches",
            report.support_matches,
            format!("{:?}", report.missing),
        ),
        Check::with_witness(
            "unit-coefficients",
            report.unit_coefficients,
            format!("{:?}", report.non_unit),
        ),
        Check::with_witness(
            "boundary-touches-diagonal",
            report.boundary_violations.is_empty(),
            report.boundary_violations.join(", "),
        ),
        Check::new("relative-cycle", report.relative_cycle),
    ];
    Ok((
        serde_json::to_value(&report).expect("reports serialize"),
        checks,
    ))
}

fn load_cover(path: &Path) -> Result<(GroundPair, gable_core::cech::CoverPair)> {
    let doc = load::<CoverDoc>(path)?;
    Ok((doc.ground.build()?, doc.cover))
}

fn same_ground(a: &GroundPair, b: &GroundPair) -> Result<()> {
    if a.points() != b.points() || a.subset_a() != b.subset_a() {
        return Err(Error::InvalidCover(
            "the covers live on different ground pairs".into(),
        ));
    }
    Ok(())
}

fn nerve_cmd(cover: &Path, k: Option<i64>) -> Outcome {
    let (ground, cover) = load_cover(cover)?;
    let pair = nerve(&ground, &cover)?;
    let result =
        json!({ "nerve": PairDoc::from_pair(&pair), "homology": homology_listing(&pair, k)? });
    Ok((result, Vec::new()))
}

fn refine(first: &Path, second: &Path) -> Outcome {
    let (ground, c1) = load_cover(first)?;
    let (other, c2) = load_cover(second)?;
    same_ground(&ground, &other)?;
    let (refined, w1, w2) = common_refinement(&c1, &c2);
    let checks = vec![
        Check::with_witness(
            "valid-cover",
            refined.validate(&ground).is_ok(),
            "refinement does not cover",
        ),
        Check::with_witness(
            "refines-first",
            w1.check(&refined, &c1).is_ok(),
            "witness 1 rejected",
        ),
        Check::with_witness(
            "refines-second",
            w2.check(&refined, &c2).is_ok(),
            "witness 2 rejected",
        ),
    ];
    let result = json!({ "cover": refined, "witnesses": [w1, w2] });
    Ok((result, checks))
}

fn project(fine: &Path, coarse: &Path, witness: Option<&Path>, k: i64, every: bool) -> Outcome {
    let (ground, fine) = load_cover(fine)?;
    let (other, coarse) = load_cover(coarse)?;
    same_ground(&ground, &other)?;
    let k = dimension(k)?;
    let chosen = witness.map(load::<RefinementWitness>).transpose()?;
    let p = projection(&ground, &fine, &coarse, chosen.as_ref())?;
    let map = p.induced(k)?;
    let mut checks = Vec::new();
    let mut result = json!({
        "witness": p.witness,
        "images": p.images.iter().map(|&v| p.target.complex().label(v).to_string()).collect::<Vec<_>>(),
        "induced": morphism_json(&map),
    });
    if every {
        let witnesses = all_witnesses(&fine, &coarse)?;
        let mut differing = Vec::new();
        for w in &witnesses {
            let other = projection(&ground, &fine, &coarse, Some(w))?.induced(k)?;
            if !other.equals_mod_relations(&map) {
                differing.push(serde_json::to_string(&w.assignment).unwrap_or_default());
            }
        }
        checks.push(Check::with_witness(
            "witness-independent",
            differing.is_empty(),
            differing.join("; "),
        ));
        result["witness_count"] = json!(witnesses.len());
    }
    Ok((result, checks))
}

fn limit_json(lim: &InverseLimit, labels: &[String]) -> Value {
    json!({
        "group": factors_json(&lim.group.invariant_factors()),
        "basis": lim.basis.iter().map(|e| {
            labels.iter().zip(&e.components).map(|(l, c)| (l.clone(), json!(ints(c)))).collect::<serde_json::Map<_, _>>()
        }).collect::<Vec<_>>(),
        "projections": labels.iter().zip(&lim.projections).map(|(l, p)| (l.clone(), json!(MatrixDoc::from_matrix(p.matrix())))).collect::<serde_json::Map<_, _>>(),
    })
}

fn comparison_json(cmp: &LimitComparison, labels: &[String], subset: &[String]) -> Value {
    json!({
        "cofinality": cmp.cofinality,
        "full": limit_json(&cmp.full, labels),
        "restricted": limit_json(&cmp.restricted, subset),
        "comparison": morphism_json(&cmp.comparison),
        "is_iso": cmp.is_iso,
    })
}

fn strong_implies_iso(cmp: &LimitComparison) -> Check {
    Check::new(
        "strong-cofinal-implies-iso",
        cmp.cofinality != Cofinality::Strong || cmp.is_iso,
    )
}

fn sorted_subset(labels: &[String], subset: &[String]) -> Vec<String> {
    labels
        .iter()
        .filter(|l| subset.contains(l))
        .cloned()
        .collect()
}

fn cech(tower: &Path, k: i64, cofinal: &[String]) -> Outcome {
    let (ground, tower) = load::<TowerDoc>(tower)?.build()?;
    let c = cech_homology(&ground, &tower, dimension(k)?)?;
    let labels = tower.poset().labels().to_vec();
    let levels: serde_json::Map<String, Value> = labels
        .iter()
        .zip(&c.levels)
        .map(|(l, h)| (l.clone(), factors_json(&h.factors)))
        .collect();
    let mut result = json!({ "k": c.k, "levels": levels, "limit": limit_json(&c.limit, &labels) });
    let mut checks = Vec::new();
    if !cofinal.is_empty() {
        let cmp = cech_cofinal_compare(&c, cofinal)?;
        checks.push(strong_implies_iso(&cmp));
        result["cofinal"] = comparison_json(&cmp, &labels, &sorted_subset(&labels, cofinal));
    }
    Ok((result, checks))
}

fn limit(system: &Path) -> Outcome {
    let sys = load::<SystemDoc>(system)?.build()?;
    let lim = inverse_limit(&sys)?;
    let labels = sys.poset().labels().to_vec();
    let compatible = lim.basis.iter().all(|e| e.is_compatible(&sys));
    let checks = vec![Check::new("basis-compatible", compatible)];
    Ok((limit_json(&lim, &labels), checks))
}

fn cofinal(system: &Path, subset: &[String]) -> Outcome {
    let sys = load::<SystemDoc>(system)?.build()?;
    let class = cofinality_class(sys.poset(), subset)?;
    let cmp = restricted_limit_compare(&sys, subset)?;
    let labels = sys.poset().labels().to_vec();
    let mut result = comparison_json(&cmp, &labels, &sorted_subset(&labels, subset));
    result["cofinality"] = json!(class);
    Ok((result, vec![strong_implies_iso(&cmp)]))
}
