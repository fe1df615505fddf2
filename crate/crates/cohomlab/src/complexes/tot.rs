use serde::{Deserialize, Serialize};

use super::{BidiffPair, ComplexError, DoubleComplex, DoubleLike, ZComplex};
use crate::exactla::{Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn scalar(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::ONE,
            Sign::Minus => Scalar::from(-1),
        }
    }
}

fn offsets<X: DoubleLike + ?Sized>(x: &X, summands: &[(i32, i32)]) -> Vec<usize> {
    let mut o = Vec::with_capacity(summands.len() + 1);
    let mut acc = 0;
    o.push(0);
    for &(p, q) in summands {
        acc += x.bidim(p, q);
        o.push(acc);
    }
    o
}

/// Assembles (c1·δ₁ + c2·δ₂) : Tot^n → Tot^{n+1} in the p-ascending layout.
fn assemble<X: DoubleLike + ?Sized>(x: &X, n: i32, c1: Option<&Scalar>, c2: Option<&Scalar>) -> Result<Matrix, ComplexError> {
    let src = x.tot_summands(n)?;
    let dst = x.tot_summands(n + 1)?;
    let so = offsets(x, &src);
    let to = offsets(x, &dst);
    let mut out = Matrix::zeros(to[dst.len()], so[src.len()]);
    let find = |k: (i32, i32)| dst.iter().position(|&s| s == k);
    for (i, &(p, q)) in src.iter().enumerate() {
        if let (Some(c), Some(j)) = (c1, find((p + 1, q))) {
            let b = x.d1_block(p, q);
            out.put_block(to[j], so[i], &if c.is_one() { b } else { b.scale(c) });
        }
        if let (Some(c), Some(j)) = (c2, find((p, q + 1))) {
            let b = x.d2_block(p, q);
            out.put_block(to[j], so[i], &if c.is_one() { b } else { b.scale(c) });
        }
    }
    Ok(out)
}

/// D = δ₁ ± δ₂ on Tot^n.
pub fn total_differential<X: DoubleLike + ?Sized>(x: &X, n: i32, sign: Sign) -> Result<Matrix, ComplexError> {
    let s = sign.scalar();
    assemble(x, n, Some(&Scalar::ONE), Some(&s))
}

/// Total complex of a validated double complex with differential δ₁ ± δ₂.
pub fn tot(dc: &DoubleComplex, sign: Sign) -> Result<ZComplex, ComplexError> {
    let v = dc.validate();
    if !v.is_empty() {
        return Err(ComplexError::Invalid(v));
    }
    let mut z = ZComplex::new();
    let Some((lo, hi)) = dc.total_range() else { return Ok(z) };
    for n in lo..=hi {
        z.set_dim(n, dc.tot_summands(n)?.iter().map(|&(p, q)| dc.get_dim(p, q)).sum());
    }
    for n in lo..hi {
        z.set_d(n, total_differential(dc, n, sign)?);
    }
    Ok(z)
}

/// Tot with δ₁ and δ₂ kept separate: a pair with δ̂₁ = δ̂₂ = 1. Its flavors in
/// degree n are the direct sums of the bigraded flavors along p+q = n.
pub fn tot_pair(dc: &DoubleComplex) -> Result<BidiffPair, ComplexError> {
    let mut bp = BidiffPair::new(1, 1);
    let Some((lo, hi)) = dc.total_range() else { return Ok(bp) };
    for n in lo..=hi {
        bp.set_dim(n, dc.tot_summands(n)?.iter().map(|&(p, q)| dc.get_dim(p, q)).sum());
    }
    for n in lo..hi {
        bp.set_d1(n, assemble(dc, n, Some(&Scalar::ONE), None)?);
        bp.set_d2(n, assemble(dc, n, None, Some(&Scalar::ONE))?);
    }
    Ok(bp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::double::fixtures::*;

    #[test]
    fn tot_examples() {
        let z = tot(&dot(), Sign::Plus).unwrap();
        assert_eq!(z.dims().get(&0), Some(&1));
        assert_eq!(z.cohomology().get(&0), Some(&1));

        let z = tot(&square(), Sign::Plus).unwrap();
        assert_eq!(z.dims().values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(z.validate().is_empty());
        assert!(z.cohomology().values().all(|&h| h == 0));

        let z = tot(&hseg(), Sign::Minus).unwrap();
        assert_eq!(z.dims().values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert!(z.cohomology().values().all(|&h| h == 0));
    }

    #[test]
    fn tot_rejects_invalid() {
        assert!(matches!(tot(&square_with_sign(1), Sign::Plus), Err(ComplexError::Invalid(_))));
    }

    #[test]
    fn tot_pair_is_valid() {
        let bp = tot_pair(&square()).unwrap();
        assert!(bp.validate().is_empty());
        assert_eq!(bp.get_dim(1), 2);
    }
}
