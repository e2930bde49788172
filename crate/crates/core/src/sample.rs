//! Random inputs for the property suites: germs, blow-up sites, parameters
//! `d`, synthetic complete stratifications and blow-up centers.

use crate::stratified::{AbstractDivisor, BlowupCenter, Classes, StratifiedResolution};
use crate::surface::{BlowUpSite, Classification, ResolutionGraph, Vertex};
use crate::symbolic::{int, rat, Rational, SymbolTable};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct GermParams {
    pub max_vertices: usize,
    /// Self-intersections are drawn from `[min_self, −1]`.
    pub min_self: i64,
    pub max_genus: u32,
    pub branches: bool,
    pub cycles: bool,
}

impl Default for GermParams {
    fn default() -> Self {
        GermParams { max_vertices: 8, min_self: -6, max_genus: 2, branches: true, cycles: true }
    }
}

const BRANCH_COEFFICIENTS: [(i64, i64); 5] = [(0, 1), (1, 3), (1, 2), (2, 3), (3, 4)];

/// A valid germ (negative definite, connected) drawn by rejection.
pub fn random_germ<R: Rng>(rng: &mut R, p: &GermParams) -> ResolutionGraph {
    loop {
        let n = rng.gen_range(1..=p.max_vertices);
        let vertices: Vec<Vertex> = (0..n)
            .map(|i| {
                let genus = match rng.gen_range(0..10) {
                    0..=6 => 0,
                    7 | 8 => 1.min(p.max_genus),
                    _ => 2.min(p.max_genus),
                };
                Vertex { id: format!("E{i}"), genus, self_intersection: rng.gen_range(p.min_self..=-1) }
            })
            .collect();
        let id = |i: usize| format!("E{i}");
        let mut edges: Vec<(String, String)> = (1..n).map(|i| (id(rng.gen_range(0..i)), id(i))).collect();
        if p.cycles && n >= 2 && rng.gen_bool(0.15) {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            edges.push((id(a), id(b)));
        }
        let mut branches = Vec::new();
        if p.branches {
            for k in 0..rng.gen_range(0..=2) {
                let (a, b) = *BRANCH_COEFFICIENTS.choose(rng).expect("nonempty");
                branches.push((format!("B{k}"), rat(a, b), id(rng.gen_range(0..n))));
            }
        }
        if let Ok(g) = ResolutionGraph::new("random", vertices, edges, branches) {
            return g;
        }
    }
}

/// A germ without boundary whose minimal resolution is not lc.
pub fn random_non_lc_germ<R: Rng>(rng: &mut R, max_vertices: usize) -> ResolutionGraph {
    let p = GermParams { max_vertices, branches: false, ..GermParams::default() };
    loop {
        let g = random_germ(rng, &p);
        if g.minimize().classify() == Classification::NotLc {
            return g;
        }
    }
}

pub fn random_site<R: Rng>(rng: &mut R, g: &ResolutionGraph) -> BlowUpSite {
    g.sites().choose(rng).expect("a germ has sites").clone()
}

pub fn random_d<R: Rng>(rng: &mut R) -> Rational {
    let choices = [int(0), rat(1, 3), rat(1, 2), rat(9, 10), int(1)];
    choices.choose(rng).expect("nonempty").clone()
}

/// A rational `p/q` with `p ∈ [lo, hi]`, `q ∈ [1, 4]`.
pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=4))
}

#[derive(Debug, Clone, Copy)]
enum Block {
    Projective(u32),
    Curve(u32),
}

impl Block {
    fn dim(self) -> u32 {
        match self {
            Block::Projective(n) => n,
            Block::Curve(_) => 1,
        }
    }

    /// Class after cutting with `j` of the block's divisors.
    fn cut(self, j: u32) -> Classes {
        match self {
            Block::Projective(n) => Classes::projective(n as i64 - j as i64),
            Block::Curve(g) => match j {
                0 => curve_classes(g),
                1 => Classes::point(),
                _ => Classes::zero(),
            },
        }
    }
}

fn curve_classes(genus: u32) -> Classes {
    let info = crate::symbolic::SymbolInfo::curve(genus);
    Classes { euler: Some(info.euler), hodge: Some(info.hodge), symbolic: None }
}

/// A complete stratification of a product of projective spaces and curves
/// by general hyperplanes and points of the factors, on the Hodge and Euler
/// levels.
pub fn synthetic_complete<R: Rng>(rng: &mut R) -> StratifiedResolution {
    loop {
        let blocks: Vec<Block> = (0..rng.gen_range(1..=2))
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Block::Projective(rng.gen_range(1..=2))
                } else {
                    Block::Curve(rng.gen_range(0..=2))
                }
            })
            .collect();
        let dimension: u32 = blocks.iter().map(|b| b.dim()).sum();
        let owners: Vec<usize> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(0..blocks.len())).collect();
        let divisors: Vec<AbstractDivisor> = owners
            .iter()
            .enumerate()
            .map(|(i, _)| AbstractDivisor {
                id: format!("D{i}"),
                nu: random_rational(rng, 1, 6),
                n: random_rational(rng, -3, 3),
            })
            .collect();
        let closed = |key: &[usize]| {
            blocks.iter().enumerate().fold(Classes::point(), |acc, (b, block)| {
                let j = key.iter().filter(|&&i| owners[i] == b).count() as u32;
                acc.mul(&block.cut(j))
            })
        };
        let n = divisors.len();
        let mut strata = Vec::new();
        for mask in 0u64..1 << n {
            let key: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let open = (0u64..1 << n).filter(|k| k & mask == mask).fold(Classes::zero(), |acc, k| {
                let sup: Vec<usize> = (0..n).filter(|i| k >> i & 1 == 1).collect();
                if (k.count_ones() - mask.count_ones()) % 2 == 0 {
                    acc.add(&closed(&sup))
                } else {
                    acc.sub(&closed(&sup))
                }
            });
            if key.is_empty() || !open.is_zero() {
                let ids = key.iter().map(|&i| divisors[i].id.clone()).collect();
                strata.push((ids, Classes { symbolic: None, ..open }));
            }
        }
        if let Ok(data) =
            StratifiedResolution::new("synthetic", dimension, true, divisors, SymbolTable::new(), strata)
        {
            return data;
        }
    }
}

/// A blow-up center of the data: a point of a nonempty stratum, or a whole
/// closed stratum of codimension at least 2.
pub fn random_center<R: Rng>(rng: &mut R, data: &StratifiedResolution, new_id: &str) -> Option<BlowupCenter> {
    let occupied: Vec<&Vec<usize>> =
        data.strata.iter().filter(|(k, c)| !c.is_zero() && !k.is_empty()).map(|(k, _)| k).collect();
    let ids = |key: &[usize]| key.iter().map(|&i| data.divisors[i].id.clone()).collect::<Vec<_>>();
    let point_like = |template: &Classes| Classes {
        euler: template.euler.as_ref().map(|_| Rational::from_integer(1.into())),
        hodge: template.hodge.as_ref().map(|_| crate::symbolic::LaurentExpr::one()),
        symbolic: template.symbolic.as_ref().map(|_| crate::symbolic::LaurentExpr::one()),
    };
    let whole: Vec<&Vec<usize>> = occupied.iter().copied().filter(|k| k.len() >= 2).collect();
    if !whole.is_empty() && rng.gen_bool(0.4) {
        let key = *whole.choose(rng)?;
        let pieces: Vec<(Vec<String>, Classes)> = data
            .strata
            .iter()
            .filter(|(k, c)| key.iter().all(|i| k.contains(i)) && !c.is_zero())
            .map(|(k, c)| (ids(k), c.clone()))
            .collect();
        return Some(BlowupCenter {
            new_id: new_id.into(),
            containing: ids(key),
            codim: key.len() as u32,
            pieces,
            total: None,
        });
    }
    if data.dimension < 2 {
        return None;
    }
    let key = *occupied.choose(rng)?;
    let class = point_like(&data.strata[key]);
    Some(BlowupCenter {
        new_id: new_id.into(),
        containing: ids(key),
        codim: data.dimension,
        pieces: vec![(ids(key), class.clone())],
        total: Some(class),
    })
}

/// Random stratified data on the Euler and symbolic levels with every class
/// a nonnegative combination of powers of `L`, for blow-up trials.
pub fn random_abstract<R: Rng>(rng: &mut R) -> StratifiedResolution {
    let dimension = rng.gen_range(2..=3);
    let n = rng.gen_range(1..=3usize);
    let divisors: Vec<AbstractDivisor> = (0..n)
        .map(|i| AbstractDivisor { id: format!("D{i}"), nu: random_rational(rng, 1, 6), n: random_rational(rng, -3, 3) })
        .collect();
    let mut strata: BTreeMap<Vec<usize>, Classes> = BTreeMap::new();
    for mask in 0u64..1 << n {
        let key: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if key.len() > dimension as usize {
            continue;
        }
        let top = dimension as i64 - key.len() as i64;
        let mut c = Classes::zero();
        for k in 0..=top {
            let coeff = rng.gen_range(0..=2);
            for _ in 0..coeff {
                c = c.add(&Classes::projective(k).sub(&Classes::projective(k - 1)));
            }
        }
        if key.is_empty() || !c.is_zero() || rng.gen_bool(0.5) {
            strata.insert(key, c);
        }
    }
    let strata = strata
        .into_iter()
        .map(|(k, c)| (k.iter().map(|&i| divisors[i].id.clone()).collect(), Classes { hodge: c.hodge.clone(), ..c }))
        .collect();
    StratifiedResolution::new("random", dimension, false, divisors, SymbolTable::new(), strata)
        .expect("generated data are valid")
}

/// Draws `m` parameters `kᵢ > 0` and weights `dᵢ` for the hyperplane oracle.
pub fn random_oracle_params<R: Rng>(rng: &mut R, m: u32) -> (Vec<Rational>, Vec<Rational>) {
    let k = (0..m).map(|_| random_rational(rng, 1, 7)).collect();
    let d = (0..m)
        .map(|_| {
            let x = random_rational(rng, -4, 4);
            if x.is_zero() {
                rat(1, 2)
            } else {
                x
            }
        })
        .collect();
    (k, d)
}
