//! Random double complexes assembled from indecomposable summands, and the
//! purely combinatorial prediction of their cohomology.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DoubleComplex;
use crate::exactla::{Matrix, Scalar};

/// Indecomposable building blocks. `Zigzag(l)` has l ≥ 3 vertices and
/// alternates δ₁, δ₂ arrows starting with δ₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Dot,
    HSeg,
    VSeg,
    Square,
    Zigzag(usize),
}

impl Shape {
    pub fn dim(self) -> usize {
        match self {
            Shape::Dot => 1,
            Shape::HSeg | Shape::VSeg => 2,
            Shape::Square => 4,
            Shape::Zigzag(l) => l,
        }
    }

    /// Dots and squares are the only summands compatible with the δ₁δ₂-lemma.
    pub fn satisfies_lemma(self) -> bool {
        matches!(self, Shape::Dot | Shape::Square)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Dot => f.write_str("dot"),
            Shape::HSeg => f.write_str("hseg"),
            Shape::VSeg => f.write_str("vseg"),
            Shape::Square => f.write_str("square"),
            Shape::Zigzag(l) => write!(f, "zigzag{l}"),
        }
    }
}

impl FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dot" => Ok(Shape::Dot),
            "hseg" => Ok(Shape::HSeg),
            "vseg" => Ok(Shape::VSeg),
            "square" => Ok(Shape::Square),
            _ => match s.strip_prefix("zigzag").map(str::parse::<usize>) {
                Some(Ok(l)) if l >= 3 => Ok(Shape::Zigzag(l)),
                _ => Err(format!("unknown shape {s:?} (dot, hseg, vseg, square, zigzagN with N ≥ 3)")),
            },
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Generator parameters: origins are drawn from [0, max_span]², and the
/// number of copies of each shape uniformly from its inclusive range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeParams {
    pub max_span: i32,
    pub counts: BTreeMap<Shape, (usize, usize)>,
}

impl ShapeParams {
    pub fn single(shape: Shape) -> Self {
        ShapeParams { max_span: 0, counts: BTreeMap::from([(shape, (1, 1))]) }
    }

    /// Mixed shapes with total dimension at most 39.
    pub fn mixed() -> Self {
        ShapeParams {
            max_span: 4,
            counts: BTreeMap::from([
                (Shape::Dot, (0, 4)),
                (Shape::HSeg, (0, 3)),
                (Shape::VSeg, (0, 3)),
                (Shape::Square, (0, 2)),
                (Shape::Zigzag(3), (0, 2)),
                (Shape::Zigzag(4), (0, 1)),
                (Shape::Zigzag(5), (0, 1)),
            ]),
        }
    }

    pub fn max_total_dim(&self) -> usize {
        self.counts.iter().map(|(s, &(_, hi))| s.dim() * hi).sum()
    }

    /// Parses `dot:0-3,square:1,hseg:1-2`.
    pub fn parse_counts(spec: &str, max_span: i32) -> Result<Self, String> {
        let mut counts = BTreeMap::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, range) = item.split_once(':').unwrap_or((item, "1"));
            let shape: Shape = name.trim().parse()?;
            let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad count {t:?} in {item:?}"));
            let (lo, hi) = match range.split_once('-') {
                Some((a, b)) => (num(a)?, num(b)?),
                None => (num(range)?, num(range)?),
            };
            if lo > hi {
                return Err(format!("empty range in {item:?}"));
            }
            counts.insert(shape, (lo, hi));
        }
        Ok(ShapeParams { max_span, counts })
    }
}

/// One summand as placed by the generator. `reflected` selects the variant
/// whose first vertex is a sink rather than a source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placed {
    pub shape: Shape,
    pub origin: (i32, i32),
    pub reflected: bool,
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub complex: DoubleComplex,
    pub shapes: Vec<Placed>,
}

impl Generated {
    pub fn lemma_expected(&self) -> bool {
        self.shapes.iter().all(|s| s.shape.satisfies_lemma())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    One,
    Two,
}

struct Arrow {
    from: usize,
    to: usize,
    dir: Dir,
    coeff: Scalar,
}

/// Vertices (bidegrees) and arrows of a placed summand.
fn layout(pl: &Placed, coeff: &mut dyn FnMut() -> i64) -> (Vec<(i32, i32)>, Vec<Arrow>) {
    let (p, q) = pl.origin;
    let ar = |from, to, dir, c: i64| Arrow { from, to, dir, coeff: Scalar::from(c) };
    match pl.shape {
        Shape::Dot => (vec![(p, q)], vec![]),
        Shape::HSeg => (vec![(p, q), (p + 1, q)], vec![ar(0, 1, Dir::One, coeff())]),
        Shape::VSeg => (vec![(p, q), (p, q + 1)], vec![ar(0, 1, Dir::Two, coeff())]),
        Shape::Square => {
            // a, b = δ₁a, c = δ₂a, d with δ₁c = xz·d and δ₂b = −yz·d
            let (x, y, z) = (coeff(), coeff(), coeff());
            (
                vec![(p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1)],
                vec![ar(0, 1, Dir::One, x), ar(0, 2, Dir::Two, y), ar(2, 3, Dir::One, x * z), ar(1, 3, Dir::Two, -y * z)],
            )
        }
        Shape::Zigzag(l) => zigzag(l, (p, q), pl.reflected, coeff),
    }
}

fn zigzag(l: usize, (p, q): (i32, i32), reflected: bool, coeff: &mut dyn FnMut() -> i64) -> (Vec<(i32, i32)>, Vec<Arrow>) {
    let mut pos = vec![(p, q)];
    let mut arrows = Vec::new();
    for i in 1..l {
        let (pp, pq) = pos[i - 1];
        let dir = if i % 2 == 1 { Dir::One } else { Dir::Two };
        // unreflected: v0 is a source, vertices step (+1,0), (0,−1), ...;
        // reflected: v0 is a sink, vertices step (−1,0), (0,+1), ...
        let s = if reflected { -1 } else { 1 };
        let next = match dir {
            Dir::One => (pp + s, pq),
            Dir::Two => (pp, pq - s),
        };
        pos.push(next);
        let source_first = (i % 2 == 1) != reflected;
        let (from, to) = if source_first { (i - 1, i) } else { (i, i - 1) };
        arrows.push(Arrow { from, to, dir, coeff: Scalar::from(coeff()) });
    }
    (pos, arrows)
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random unimodular integer matrix (unit lower × unit upper triangular).
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Scalar::from(rng.gen_range(-2..=2)));
            u.set(j, i, Scalar::from(rng.gen_range(-2..=2)));
        }
    }
    &l * &u
}

/// Direct sum of randomly placed shapes, then conjugated by a random
/// unimodular change of basis in every bidegree.
pub fn random_bicomplex(seed: u64, params: &ShapeParams) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shapes = Vec::new();
    for (&shape, &(lo, hi)) in &params.counts {
        let n = rng.gen_range(lo..=hi);
        for _ in 0..n {
            let origin = (rng.gen_range(0..=params.max_span), rng.gen_range(0..=params.max_span));
            let reflected = matches!(shape, Shape::Zigzag(_)) && rng.gen_bool(0.5);
            shapes.push(Placed { shape, origin, reflected });
        }
    }
    assemble(&mut rng, shapes)
}

/// Builds the complex for a given list of summands; coefficients and the
/// change of basis are drawn from `seed`. Used to shrink failing cases.
pub fn from_shapes(seed: u64, shapes: Vec<Placed>) -> Generated {
    assemble(&mut ChaCha8Rng::seed_from_u64(seed), shapes)
}

fn assemble(rng: &mut ChaCha8Rng, shapes: Vec<Placed>) -> Generated {
    let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut entries: Vec<((i32, i32), usize, (i32, i32), usize, Dir, Scalar)> = Vec::new();
    for pl in &shapes {
        let (verts, arrows) = layout(pl, &mut || nonzero_small(rng));
        let idx: Vec<usize> = verts
            .iter()
            .map(|v| {
                let d = dims.entry(*v).or_insert(0);
                *d += 1;
                *d - 1
            })
            .collect();
        for a in arrows {
            entries.push((verts[a.from], idx[a.from], verts[a.to], idx[a.to], a.dir, a.coeff));
        }
    }

    let mut d1: BTreeMap<(i32, i32), Matrix> = BTreeMap::new();
    let mut d2: BTreeMap<(i32, i32), Matrix> = BTreeMap::new();
    let dim = |k: &(i32, i32)| dims.get(k).copied().unwrap_or(0);
    for (src, si, dst, di, dir, c) in entries {
        let map = if dir == Dir::One { &mut d1 } else { &mut d2 };
        map.entry(src).or_insert_with(|| Matrix::zeros(dim(&dst), dim(&src))).set(di, si, c);
    }

    let change: BTreeMap<(i32, i32), (Matrix, Matrix)> = dims
        .iter()
        .map(|(&k, &n)| {
            let p = unimodular(rng, n);
            let inv = p.inverse().expect("unimodular");
            (k, (p, inv))
        })
        .collect();
    let mut dc = DoubleComplex::with_dims(dims.clone());
    let conj = |m: &Matrix, src: (i32, i32), dst: (i32, i32)| &(&change[&dst].0 * m) * &change[&src].1;
    for (&(p, q), m) in &d1 {
        dc.set_d1(p, q, conj(m, (p, q), (p + 1, q)));
    }
    for (&(p, q), m) in &d2 {
        dc.set_d2(p, q, conj(m, (p, q), (p, q + 1)));
    }
    Generated { complex: dc, shapes }
}

/// Cohomology predicted from the shape multiset alone.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Prediction {
    pub d1: BTreeMap<(i32, i32), usize>,
    pub d2: BTreeMap<(i32, i32), usize>,
    pub bc: BTreeMap<(i32, i32), usize>,
    pub a: BTreeMap<(i32, i32), usize>,
    /// Auxiliary quotients V1..V6.
    pub v: [BTreeMap<(i32, i32), usize>; 6],
    pub tot: BTreeMap<i32, usize>,
    pub lemma_holds: bool,
}

/// Squares are acyclic for every flavor. On a path-shaped summand (dot,
/// segment, zigzag) every flavor is spanned by vertices, read off from which
/// arrows touch them.
pub fn predict(shapes: &[Placed]) -> Prediction {
    let mut pr = Prediction { lemma_holds: true, ..Default::default() };
    let bump = |m: &mut BTreeMap<(i32, i32), usize>, k: (i32, i32)| *m.entry(k).or_insert(0) += 1;
    for pl in shapes {
        if pl.shape == Shape::Square {
            continue;
        }
        pr.lemma_holds &= pl.shape.satisfies_lemma();
        let (verts, arrows) = layout(pl, &mut || 1);
        for (i, &v) in verts.iter().enumerate() {
            let has = |f: &dyn Fn(&Arrow) -> bool| arrows.iter().any(|a| f(a));
            let in1 = has(&|a| a.to == i && a.dir == Dir::One);
            let in2 = has(&|a| a.to == i && a.dir == Dir::Two);
            let out1 = has(&|a| a.from == i && a.dir == Dir::One);
            let out2 = has(&|a| a.from == i && a.dir == Dir::Two);
            if !in1 && !out1 {
                bump(&mut pr.d1, v);
            }
            if !in2 && !out2 {
                bump(&mut pr.d2, v);
            }
            if !out1 && !out2 {
                bump(&mut pr.bc, v);
            }
            if !in1 && !in2 {
                bump(&mut pr.a, v);
            }
            let conds = [in1 && in2, in2 && !out1, in1 && !out2, out1 && !in2, out2 && !in1, out1 && out2];
            for (j, c) in conds.into_iter().enumerate() {
                if c {
                    bump(&mut pr.v[j], v);
                }
            }
        }
        if verts.len() % 2 == 1 {
            *pr.tot.entry(pl.origin.0 + pl.origin.1).or_insert(0) += 1;
        }
    }
    pr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_complexes_validate() {
        let params = ShapeParams::mixed();
        assert!(params.max_total_dim() <= 40);
        for seed in 0..30 {
            let g = random_bicomplex(seed, &params);
            assert!(g.complex.validate().is_empty(), "seed {seed}");
            let n: usize = g.shapes.iter().map(|s| s.shape.dim()).sum();
            assert_eq!(g.complex.total_dim(), n);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let p = ShapeParams::mixed();
        assert_eq!(random_bicomplex(7, &p).complex, random_bicomplex(7, &p).complex);
    }

    #[test]
    fn single_dot() {
        let g = random_bicomplex(0, &ShapeParams::single(Shape::Dot));
        assert_eq!(g.complex.total_dim(), 1);
        assert!(g.complex.d1_blocks().is_empty() && g.complex.d2_blocks().is_empty());
    }

    #[test]
    fn zigzag_geometry() {
        let (pos, arrows) = zigzag(4, (0, 0), false, &mut || 1);
        assert_eq!(pos, vec![(0, 0), (1, 0), (1, -1), (2, -1)]);
        assert_eq!((arrows[1].from, arrows[1].to), (2, 1));
        let (pos, arrows) = zigzag(3, (0, 0), true, &mut || 1);
        assert_eq!(pos, vec![(0, 0), (-1, 0), (-1, 1)]);
        assert_eq!((arrows[0].from, arrows[0].to), (1, 0));
        assert_eq!((arrows[1].from, arrows[1].to), (1, 2));
    }

    #[test]
    fn parse_shape_counts() {
        let p = ShapeParams::parse_counts("dot:0-3, square:2,zigzag5:1-1", 3).unwrap();
        assert_eq!(p.counts[&Shape::Dot], (0, 3));
        assert_eq!(p.counts[&Shape::Square], (2, 2));
        assert_eq!(p.counts[&Shape::Zigzag(5)], (1, 1));
        assert!(ShapeParams::parse_counts("zigzag2", 1).is_err());
        assert!(ShapeParams::parse_counts("dot:3-1", 1).is_err());
    }

    #[test]
    fn predictions_for_segment() {
        let pr = predict(&[Placed { shape: Shape::HSeg, origin: (0, 0), reflected: false }]);
        assert_eq!(pr.bc, BTreeMap::from([((1, 0), 1)]));
        assert_eq!(pr.a, BTreeMap::from([((0, 0), 1)]));
        assert!(pr.d1.is_empty());
        assert_eq!(pr.d2.len(), 2);
        assert!(pr.tot.is_empty());
        assert!(!pr.lemma_holds);
    }
}
