//! Verification suites. Each suite is a list of properties; each property
//! runs a number of cases in parallel, case `i` drawing from its own seeded
//! stream, and keeps the first failing case as its witness.

use std::collections::HashSet;

use clap::ValueEnum;
use gable_core::algebra::rational::Rational;
use gable_core::algebra::{
    inverse_limit, restricted_limit_compare, smith_with, Cofinality, GroupMorphism, IntMatrix,
    InvariantFactors, SnfFlags,
};
use gable_core::catalog;
use gable_core::cech::{all_witnesses, cech_homology, nerve, projection, CoverTower};
use gable_core::roof::{
    diagonal_region, enlarge_region, fundamental_roof_check, representative_independence_check,
    roof, roof_family, touches_diagonal, TermList,
};
use gable_core::shuffle::{
    boundary_formula_defect, cross, cross_symbols, enumerate_paths, product_complex,
    quotient_project, GableComplex, OrbitSimplex,
};
use gable_core::simplicial::{
    barycentric_subdivision, cone_pair, homology, homology_table, is_full, reduced_homology,
    retract_point, subdivision_partition_check, Chain, ComplexPair, RationalPoint,
    SimplicialComplex,
};
use gable_core::Result;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::random;
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Snf,
    Homology,
    ShuffleParity,
    ShuffleLaws,
    RoofExistence,
    RepresentativeIndependence,
    RoofFamily,
    Limits,
    Cofinality,
    ProjectionIndependence,
    Cone,
    Subdivision,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::Snf,
        Suite::Homology,
        Suite::ShuffleParity,
        Suite::ShuffleLaws,
        Suite::RoofExistence,
        Suite::RepresentativeIndependence,
        Suite::RoofFamily,
        Suite::Limits,
        Suite::Cofinality,
        Suite::ProjectionIndependence,
        Suite::Cone,
        Suite::Subdivision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Snf => "snf",
            Suite::Homology => "homology",
            Suite::ShuffleParity => "shuffle-parity",
            Suite::ShuffleLaws => "shuffle-laws",
            Suite::RoofExistence => "roof-existence",
            Suite::RepresentativeIndependence => "representative-independence",
            Suite::RoofFamily => "roof-family",
            Suite::Limits => "limits",
            Suite::Cofinality => "cofinality",
            Suite::ProjectionIndependence => "projection-independence",
            Suite::Cone => "cone",
            Suite::Subdivision => "subdivision",
            Suite::All => "all",
        }
    }
}

/// Size overrides from the command line; each suite has its own defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bounds {
    pub max_k: Option<usize>,
    pub trials: Option<usize>,
}

/// Aggregated outcome of one property.
#[derive(Clone, Debug)]
pub struct Property {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

/// A failing case explains itself.
type Case = std::result::Result<(), String>;

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Case {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

fn collect(name: &str, outcomes: Vec<Case>) -> Property {
    let cases = outcomes.len();
    let failing: Vec<(usize, String)> = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.err().map(|w| (i, w)))
        .collect();
    Property {
        name: name.to_string(),
        cases,
        failures: failing.len(),
        witness: failing
            .into_iter()
            .next()
            .map(|(i, w)| format!("case {i}: {w}")),
    }
}

/// Runs `n` seeded cases of a randomized property in parallel.
fn seeded<F>(name: &str, seed: u64, n: usize, case: F) -> Property
where
    F: Fn(usize, &mut ChaCha8Rng) -> Case + Sync,
{
    let outcomes = (0..n)
        .into_par_iter()
        .map(|i| case(i, &mut random::case_rng(seed, name, i)))
        .collect();
    collect(name, outcomes)
}

/// Runs a deterministic property over a list of inputs in parallel.
fn each<T, F>(name: &str, inputs: Vec<T>, case: F) -> Property
where
    T: Send,
    F: Fn(T) -> Case + Sync + Send,
{
    collect(name, inputs.into_par_iter().map(case).collect())
}

fn single(name: &str, case: impl FnOnce() -> Case) -> Property {
    collect(name, vec![case()])
}

pub fn run(suite: Suite, seed: u64, bounds: Bounds) -> Result<Report> {
    let selected: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        one => vec![one],
    };
    let properties: Vec<Property> = selected
        .iter()
        .flat_map(|&s| properties(s, seed, bounds))
        .collect();
    let checks = properties
        .iter()
        .map(|p| {
            Check::with_witness(
                &p.name,
                p.failures == 0,
                p.witness.clone().unwrap_or_default(),
            )
        })
        .collect();
    let summary: Vec<_> = properties
        .iter()
        .map(|p| json!({ "name": p.name, "cases": p.cases, "failures": p.failures }))
        .collect();
    let result = json!({ "suite": suite.name(), "seed": seed, "properties": summary });
    Ok(Report::new("verify", result, checks))
}

pub fn properties(suite: Suite, seed: u64, b: Bounds) -> Vec<Property> {
    let trials = |default: usize| b.trials.unwrap_or(default);
    match suite {
        Suite::Snf => snf(seed, trials(200)),
        Suite::Homology => homology_suite(seed, trials(20)),
        Suite::ShuffleParity => shuffle_parity(b.max_k.unwrap_or(3)),
        Suite::ShuffleLaws => shuffle_laws(b.max_k.unwrap_or(4)),
        Suite::RoofExistence => roof_existence(),
        Suite::RepresentativeIndependence => independence(seed, trials(50)),
        Suite::RoofFamily => vec![roof_family_sphere()],
        Suite::Limits => limits(seed, trials(20)),
        Suite::Cofinality => vec![cofinality(seed, trials(30))],
        Suite::ProjectionIndependence => projection_independence(),
        Suite::Cone => vec![cone(seed, trials(20))],
        Suite::Subdivision => subdivision(seed, trials(20), trials(50)),
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| properties(s, seed, b))
            .collect(),
    }
}

fn snf(seed: u64, n: usize) -> Vec<Property> {
    let reconstruction = seeded("snf/reconstruction", seed, n, |_, rng| {
        let m = random::matrix(rng, 6, 6, 9);
        let s = smith_with(&m, SnfFlags::ALL);
        let (u, v, d) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap(), s.d());
        let product = lib(u.mul(&m).and_then(|um| um.mul(v)))?;
        ensure(product == d, || format!("U·M·V != D for {m:?}"))?;
        ensure(d.is_diagonal(), || format!("D not diagonal for {m:?}"))?;
        let diag = s.factors();
        let chain = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            });
        ensure(chain, || format!("divisibility fails: {diag:?}"))
    });
    let unimodular = seeded("snf/unimodular", seed, n, |_, rng| {
        let m = random::matrix(rng, 6, 6, 9);
        let s = smith_with(&m, SnfFlags::ALL);
        for (t, inv) in [(&s.u, &s.u_inv), (&s.v, &s.v_inv)] {
            let (t, inv) = (t.as_ref().unwrap(), inv.as_ref().unwrap());
            let id = IntMatrix::identity(t.rows());
            ensure(lib(t.mul(inv))? == id && lib(inv.mul(t))? == id, || {
                format!("transform not invertible for {m:?}")
            })?;
        }
        Ok(())
    });
    vec![reconstruction, unimodular]
}

fn homology_suite(seed: u64, n: usize) -> Vec<Property> {
    let known: Vec<(&str, SimplicialComplex, Vec<InvariantFactors>)> = vec![
        (
            "boundary-tetrahedron",
            catalog::boundary_tetrahedron(),
            vec![free(1), free(0), free(1)],
        ),
        (
            "projective-plane",
            catalog::projective_plane(),
            vec![free(1), InvariantFactors::from_small(0, &[2]), free(0)],
        ),
        ("torus", catalog::torus(), vec![free(1), free(2), free(1)]),
        ("point", catalog::simplex(0), vec![free(1)]),
    ];
    let table = each("homology/catalog", known, |(name, k, expected)| {
        let got = lib(homology_table(&ComplexPair::absolute(k)))?;
        ensure(got == expected, || format!("{name}: {got:?}"))
    });
    let euler = seeded("homology/euler-characteristic", seed, n, |_, rng| {
        let size = rng.gen_range(2..=7);

        let k = random::complex(rng, 6, 3, size);
        let table = lib(homology_table(&ComplexPair::absolute(k.clone())))?;
        let alternating = |f: &dyn Fn(usize) -> i64| -> i64 {
            (0..=k.dim().unwrap_or(0))
                .map(|d| if d % 2 == 0 { f(d) } else { -f(d) })
                .sum()
        };
        let from_cells = alternating(&|d| k.simplices(d).len() as i64);
        let from_homology = alternating(&|d| table.get(d).map_or(0, |f| f.free_rank as i64));
        ensure(from_cells == from_homology, || {
            format!("χ {from_cells} vs {from_homology} on {k:?}")
        })
    });
    vec![table, euler]
}

fn free(r: usize) -> InvariantFactors {
    InvariantFactors::free(r)
}

/// Every vertex sequence of the given length, degenerate ones included.
fn symbols(vertices: usize, len: usize) -> Vec<Vec<usize>> {
    (0..len)
        .map(|_| 0..vertices)
        .multi_cartesian_product()
        .collect()
}

fn symbol_chain(s: &[usize]) -> Chain {
    Chain::from_terms(s.len() - 1, [(BigInt::one(), s.to_vec())]).expect("arity matches")
}

fn shuffle_parity(max_k: usize) -> Vec<Property> {
    let k = catalog::simplex(3);
    (1..=max_k)
        .map(|d| {
            let syms = symbols(4, d + 1);
            let pairs: Vec<(Vec<usize>, Vec<usize>)> = syms
                .iter()
                .cartesian_product(&syms)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect();
            let sign = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
            let areas = enumerate_paths(d, d)
                .iter()
                .all(|f| f.area + f.reflection().area == d * d);
            each(&format!("shuffle-parity/k={d}"), pairs, |(s1, s2)| {
                ensure(areas, || "path areas do not complement to k²".into())?;
                let (c1, c2) = (symbol_chain(&s1), symbol_chain(&s2));
                let forward = lib(quotient_project(&cross(&c1, &c2), &k, &k))?;
                let backward = lib(quotient_project(&cross(&c2, &c1), &k, &k))?;
                ensure(forward == backward.scale(&sign), || {
                    format!("{s1:?} × {s2:?}")
                })
            })
        })
        .collect()
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of the Gaussian binomial `[m+n choose m]_q` by the
/// recurrence `G(m, n) = G(m, n-1) + q^n G(m-1, n)`.
fn gaussian(m: usize, n: usize) -> Vec<usize> {
    if m == 0 || n == 0 {
        return vec![1];
    }
    let (a, b) = (gaussian(m, n - 1), gaussian(m - 1, n));
    let mut out = vec![0; m * n + 1];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i + n] += x;
    }
    out
}

fn shuffle_laws(max_k: usize) -> Vec<Property> {
    let grid: Vec<(usize, usize)> = (0..=max_k).cartesian_product(0..=max_k).collect();
    let paths = each("shuffle-laws/paths", grid, |(m, n)| {
        let paths = enumerate_paths(m, n);
        ensure(paths.len() == binomial(m + n, m), || {
            format!("{m}×{n}: {} paths", paths.len())
        })?;
        let mut areas = vec![0; m * n + 1];
        for f in &paths {
            areas[f.area] += 1;
        }
        ensure(areas == gaussian(m, n), || {
            format!("{m}×{n}: area distribution {areas:?}")
        })?;
        ensure(
            paths.iter().all(|f| f.area + f.reflection().area == m * n),
            || format!("{m}×{n}: reflection area"),
        )
    });
    let dims: Vec<(usize, usize)> = (0..=max_k + 1)
        .cartesian_product(0..=max_k + 1)
        .filter(|(m, n)| m + n <= max_k + 1)
        .collect();
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = dims
        .iter()
        .flat_map(|&(m, n)| {
            symbols(3, m + 1)
                .into_iter()
                .cartesian_product(symbols(3, n + 1))
        })
        .collect();
    let boundary = each("shuffle-laws/boundary-formula", pairs, |(s1, s2)| {
        let defect = boundary_formula_defect(&symbol_chain(&s1), &symbol_chain(&s2));
        ensure(defect.is_zero(), || format!("{s1:?} × {s2:?}"))
    });
    vec![paths, boundary]
}

fn roof_existence() -> Vec<Property> {
    let inputs = vec![
        ("sphere", catalog::boundary_tetrahedron(), 36),
        ("torus", catalog::torus(), 546),
    ];
    inputs
        .into_iter()
        .map(|(name, m, expected)| {
            single(&format!("roof-existence/{name}"), || {
                let sigma = TermList::from_chain(&lib(catalog::fundamental_cycle(&m))?);
                let chain = lib(roof(&sigma))?;
                let stray = chain
                    .boundary()
                    .iter()
                    .map(|(o, _)| o.clone())
                    .find(|o| !touches_diagonal(o.canonical(), RationalPoint::vertex));
                ensure(stray.is_none(), || {
                    format!("boundary cell {:?} misses the diagonal", stray)
                })?;
                ensure(chain.len() == expected, || {
                    format!("support {} != {expected}", chain.len())
                })?;
                ensure(chain.iter().all(|(_, g)| g.abs().is_one()), || {
                    "non-unit coefficient".into()
                })?;
                let report = lib(fundamental_roof_check(&m, &sigma))?;
                ensure(report.passed, || {
                    format!(
                        "missing {:?}, unexpected {:?}",
                        report.missing, report.unexpected
                    )
                })
            })
        })
        .collect()
}

/// An even-dimensional cycle made of homology generators and a boundary.
fn random_cycle(rng: &mut ChaCha8Rng, k: &SimplicialComplex, dim: usize) -> Result<Chain> {
    let h = homology(&ComplexPair::absolute(k.clone()), dim)?;
    let mut sigma = random::chain(rng, k, dim + 1, 3, 2).boundary();
    if dim == 0 && rng.gen_bool(0.5) {
        sigma = sigma.add(&random::chain(rng, k, 0, 3, 3))?;
    }
    for g in &h.generators {
        sigma = sigma.add(&g.scale(&BigInt::from(rng.gen_range(-2..=2))))?;
    }
    Ok(sigma)
}

fn independence(seed: u64, n: usize) -> Vec<Property> {
    vec![seeded("representative-independence", seed, n, |i, rng| {
        let dim = if i % 2 == 0 { 0 } else { 2 };
        let vertices = rng.gen_range(4..=6);
        let size = rng.gen_range(2..=4);

        let k = random::complex(rng, vertices, dim + 1, size);
        let sigma = TermList::from_chain(&lib(random_cycle(rng, &k, dim))?);
        let nu = TermList::from_chain(&random::chain(rng, &k, dim + 1, 3, 2));
        let gable = GableComplex::new(&k);
        let squares: Vec<OrbitSimplex> = nu
            .terms()
            .iter()
            .flat_map(|(_, s)| cross_symbols(s, s))
            .map(|(_, p)| OrbitSimplex::new(&p))
            .collect();
        let region = enlarge_region(&gable, &diagonal_region(&gable), squares);
        let report = lib(representative_independence_check(
            &sigma, &nu, &gable, &region,
        ))?;
        ensure(report.holds, || {
            format!(
                "{:?} vs {:?} on {k:?}",
                report.before.coordinates, report.after.coordinates
            )
        })
    })]
}

fn roof_family_sphere() -> Property {
    single("roof-family/sphere", || {
        let m = catalog::boundary_tetrahedron();
        let pc = product_complex(&m);
        let sigma = TermList::from_chain(&lib(catalog::fundamental_cycle(&m))?);
        let inner = diagonal_region(&pc.gable);
        let chain = lib(roof(&sigma))?;
        let extra: Vec<OrbitSimplex> = chain
            .iter()
            .map(|(o, _)| o.clone())
            .filter(|o| !inner.contains(o))
            .take(1)
            .collect();
        let outer = enlarge_region(&pc.gable, &inner, extra);
        ensure(outer.len() > inner.len(), || {
            "outer region does not grow".into()
        })?;
        let family = lib(roof_family(&sigma, &pc.gable, &[outer, inner]))?;
        ensure(family.all_compatible(), || {
            format!("compatibility {:?}", family.compatible)
        })?;
        ensure(family.levels[1].factors == free(1), || {
            format!("inner group {}", family.levels[1].factors)
        })
    })
}

fn limits(seed: u64, n: usize) -> Vec<Property> {
    use gable_core::algebra::{FgAbelianGroup, FinitePoset, InverseSystem};
    use std::collections::HashMap;

    let z = FgAbelianGroup::free(1);
    let scalar = |k: i64| {
        GroupMorphism::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![k]]))
            .expect("endomorphism of Z")
    };
    let chain = single("limits/chain", || {
        let poset = FinitePoset::chain(3);
        let maps = HashMap::from([
            ((0, 1), scalar(2)),
            ((1, 2), scalar(2)),
            ((0, 2), scalar(4)),
        ]);
        let sys = lib(InverseSystem::new(poset, vec![z.clone(); 3], maps))?;
        let lim = lib(inverse_limit(&sys))?;
        let basis: Vec<Vec<BigInt>> = lim
            .basis
            .iter()
            .flat_map(|e| e.components.clone())
            .collect();
        let expected: Vec<Vec<BigInt>> = [4, 2, 1].iter().map(|&x| vec![BigInt::from(x)]).collect();
        ensure(lim.group.invariant_factors() == free(1), || {
            lim.group.invariant_factors().to_string()
        })?;
        ensure(
            basis == expected || basis == expected.iter().map(|v| vec![-&v[0]]).collect::<Vec<_>>(),
            || format!("basis {basis:?}"),
        )
    });
    let cospan = single("limits/cospan", || {
        let poset = lib(FinitePoset::from_strs(
            &["l", "m1", "m2"],
            &[("l", "m1"), ("l", "m2")],
        ))?;
        let maps = HashMap::from([((0, 1), scalar(2)), ((0, 2), scalar(3))]);
        let sys = lib(InverseSystem::new(poset, vec![z.clone(); 3], maps))?;
        let lim = lib(inverse_limit(&sys))?;
        let basis: Vec<Vec<BigInt>> = lim
            .basis
            .iter()
            .flat_map(|e| e.components.clone())
            .collect();
        let magnitudes: Vec<BigInt> = basis.iter().map(|v| v[0].abs()).collect();
        ensure(lim.group.invariant_factors() == free(1), || {
            lim.group.invariant_factors().to_string()
        })?;
        ensure(magnitudes == [6, 3, 2].map(BigInt::from), || {
            format!("basis {basis:?}")
        })
    });
    let cones = seeded("limits/universal-property", seed, n, |_, rng| {
        let size = rng.gen_range(2..=5);

        let sys = random::directed_system(rng, size);
        let lim = lib(inverse_limit(&sys))?;
        let rank = rng.gen_range(1..=3);
        let b = lim.group.generator_count();
        let entries = (0..b * rank)
            .map(|_| BigInt::from(rng.gen_range(-4..=4)))
            .collect();
        let k = FgAbelianGroup::free(rank);
        let psi = lib(GroupMorphism::new(
            k,
            lim.group.clone(),
            lib(IntMatrix::new(b, rank, entries))?,
        ))?;
        let cone: Vec<GroupMorphism> = lim
            .projections
            .iter()
            .map(|u| u.compose(&psi))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let factor = lib(lim.factor(&sys, &cone))?;
        ensure(factor.equals_mod_relations(&psi), || {
            "factorization differs from the generating map".into()
        })?;
        let commutes = lim.projections.iter().zip(&cone).all(|(u, phi)| {
            u.compose(&factor)
                .is_ok_and(|c| c.equals_mod_relations(phi))
        });
        ensure(commutes, || "u ∘ ψ != φ".into())?;
        ensure(lim.inclusion.is_injective(), || {
            "limit does not embed in the product; factorization not unique".into()
        })
    });
    vec![chain, cospan, cones]
}

fn cofinality(seed: u64, n: usize) -> Property {
    seeded("cofinality/strong-implies-iso", seed, n, |_, rng| {
        let size = rng.gen_range(3..=6);

        let sys = random::directed_system(rng, size);
        let subset = random::cofinal_subset(rng, &sys);
        let cmp = lib(restricted_limit_compare(&sys, &subset))?;
        ensure(cmp.cofinality == Cofinality::Strong, || {
            format!("{subset:?} is {:?}", cmp.cofinality)
        })?;
        ensure(cmp.is_iso, || {
            format!("comparison to {subset:?} is not an isomorphism")
        })
    })
}

fn projection_independence() -> Vec<Property> {
    let ground = catalog::circle_points();
    let (fine, coarse) = (catalog::six_arcs(), catalog::three_arcs());
    let nerve_h1 = single("projection-independence/three-arc-nerve", || {
        let n = lib(nerve(&ground, &coarse))?;
        let h = lib(homology(&n, 1))?;
        ensure(h.factors == free(1), || h.factors.to_string())
    });
    let maps = single("projection-independence/witnesses", || {
        let witnesses = lib(all_witnesses(&fine, &coarse))?;
        ensure(witnesses.len() > 1, || {
            format!("only {} witness", witnesses.len())
        })?;
        let maps: Vec<GroupMorphism> = witnesses
            .iter()
            .map(|w| projection(&ground, &fine, &coarse, Some(w)).and_then(|p| p.induced(1)))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        let differing = maps.iter().position(|m| !m.equals_mod_relations(&maps[0]));
        ensure(differing.is_none(), || {
            format!(
                "witness {:?} differs",
                differing.map(|i| &witnesses[i].assignment)
            )
        })
    });
    let tower = single("projection-independence/cech", || {
        let tower = lib(CoverTower::chain(
            &ground,
            vec![coarse.clone(), fine.clone()],
        ))?;
        let c = lib(cech_homology(&ground, &tower, 1))?;
        let g = c.limit.group.invariant_factors();
        ensure(g == free(1), || g.to_string())
    });
    vec![nerve_h1, maps, tower]
}

fn cone(seed: u64, n: usize) -> Property {
    seeded("cone/reduced-equals-relative", seed, n, |_, rng| {
        let size = rng.gen_range(3..=6);

        let pair = random::pair(rng, size, 2);
        let (c, _) = lib(cone_pair(&pair))?;
        for d in 0..=c.dim().unwrap_or(0) {
            let (reduced, relative) = (
                lib(reduced_homology(&c, d))?.factors,
                lib(homology(&pair, d))?.factors,
            );
            ensure(reduced == relative, || {
                format!("degree {d}: {reduced} vs {relative} for {pair:?}")
            })?;
        }
        Ok(())
    })
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=6);
    Rational::new(BigInt::from(rng.gen_range(0..=q)), BigInt::from(q))
}

fn subdivision(seed: u64, n: usize, points: usize) -> Vec<Property> {
    let invariance = seeded("subdivision/homology-invariance", seed, n, |_, rng| {
        let size = rng.gen_range(3..=5);

        let pair = random::pair(rng, size, 2);
        let sd = lib(barycentric_subdivision(pair.complex(), Some(pair.sub())))?;
        let induced = sd
            .induced_sub
            .clone()
            .unwrap_or_else(SimplicialComplex::empty);
        let before = lib(homology_table(&pair))?;
        let after = lib(homology_table(&lib(ComplexPair::new(
            sd.sd_complex.clone(),
            induced.clone(),
        ))?))?;
        ensure(before == after, || {
            format!("{before:?} vs {after:?} for {pair:?}")
        })?;
        ensure(is_full(&sd.sd_complex, &induced).is_ok(), || {
            format!("sd L not full for {pair:?}")
        })
    });
    let partition = single("subdivision/triangle-partition", || {
        let tri = catalog::simplex(2);
        let sd = lib(barycentric_subdivision(&tri, None))?;
        let report = subdivision_partition_check(&tri, &sd);
        ensure(report.passed, || report.violations.join("; "))?;
        let top = report
            .entries
            .iter()
            .find(|e| e.simplex.len() == 3)
            .ok_or("no entry for the triangle")?;
        let sixth = Rational::new(BigInt::one(), BigInt::from(6));
        ensure(
            top.volumes.len() == 6 && top.volumes.iter().all(|v| v == &sixth),
            || format!("{top:?}"),
        )
    });
    let edge = single("subdivision/edge-retraction", || {
        let k = lib(SimplicialComplex::from_strs(&[&["u", "v"]]))?;
        let l = lib(SimplicialComplex::from_strs(&[&["u"]]))?;
        let third = |n: i64| Rational::new(BigInt::from(n), BigInt::from(3));
        let p = lib(RationalPoint::from_labels(
            &k,
            &[("u", third(1)), ("v", third(2))],
        ))?;
        let r = lib(retract_point(&k, &l, &p, &Rational::one()))?;
        ensure(r.a == third(1), || format!("a = {}", r.a))?;
        ensure(
            r.alpha_prime == RationalPoint::vertex(0) && r.alpha_out == RationalPoint::vertex(0),
            || "α′ is not the vertex u".into(),
        )?;
        let half = lib(retract_point(
            &k,
            &l,
            &p,
            &Rational::new(BigInt::one(), BigInt::from(2)),
        ))?;
        ensure(half.alpha_out.coord(0) == third(2), || {
            format!("H(α, 1/2) = {:?}", half.alpha_out.coord(0))
        })
    });
    let fixed = seeded("subdivision/retraction-fixes-L", seed, points, |_, rng| {
        let size = rng.gen_range(2..=4);

        let k = random::complex(rng, 5, 2, size);
        let chosen: HashSet<usize> = (0..k.vertex_count())
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let inside: Vec<Vec<usize>> = k
            .all_simplices()
            .filter(|s| s.iter().all(|v| chosen.contains(v)))
            .cloned()
            .collect();
        if inside.is_empty() {
            return Ok(());
        }
        let l = lib(k.subcomplex(inside.clone()))?;
        let s = &inside[rng.gen_range(0..inside.len())];
        let weights: Vec<i64> = s.iter().map(|_| rng.gen_range(1..=5)).collect();
        let total: i64 = weights.iter().sum();
        let coords = s
            .iter()
            .zip(&weights)
            .map(|(&v, &w)| (v, Rational::new(BigInt::from(w), BigInt::from(total))));
        let p = lib(RationalPoint::new(&k, coords))?;
        let t = rational(rng);
        let r = lib(retract_point(&k, &l, &p, &t))?;
        ensure(
            r.alpha_out == p && r.alpha_prime == p && r.a.is_one(),
            || format!("{:?} moved at t = {t}", s),
        )
    });
    vec![invariance, partition, edge, fixed]
}
