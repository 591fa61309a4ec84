//! Monodromy representations: symbolic, or `S, T, U` as invertible rational matrices.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::ratmat::{rat, RatMatrix};
use super::ring::{RingElement, RingMatrix};
use super::word::{Generator, GroupWord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    rank: usize,
    gens: [RatMatrix; 3],
    inverses: [RatMatrix; 3],
}

impl MatrixRep {
    /// Rejects non-square, mismatched or singular generator matrices.
    pub fn new(s: RatMatrix, t: RatMatrix, u: RatMatrix) -> Result<Self> {
        let rank = s.rows();
        let gens = [s, t, u];
        let mut inverses = Vec::with_capacity(3);
        for (g, m) in Generator::ALL.iter().zip(&gens) {
            if m.rows() != rank || m.cols() != rank || rank == 0 {
                return Err(Error::DimensionMismatch(format!(
                    "{} must be {rank}x{rank}",
                    g.name()
                )));
            }
            inverses.push(
                m.inverse()
                    .map_err(|_| Error::SingularMatrix(format!("monodromy {}", g.name())))?,
            );
        }
        let inverses: [RatMatrix; 3] = inverses.try_into().expect("three generators");
        Ok(Self { rank, gens, inverses })
    }

    /// Scalar representation of rank 1.
    pub fn scalars(s: BigRational, t: BigRational, u: BigRational) -> Result<Self> {
        Self::new(
            RatMatrix::scalar(1, s),
            RatMatrix::scalar(1, t),
            RatMatrix::scalar(1, u),
        )
    }

    pub fn identity(rank: usize) -> Self {
        let i = RatMatrix::identity(rank);
        Self::new(i.clone(), i.clone(), i).expect("identity is invertible")
    }

    /// Random invertible generators with small rational entries.
    pub fn random<R: Rng>(rank: usize, rng: &mut R) -> Self {
        let mut draw = || loop {
            let m = RatMatrix::from_fn(rank, rank, |_, _| {
                rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            });
            if m.is_invertible() {
                break m;
            }
        };
        let (s, t, u) = (draw(), draw(), draw());
        Self::new(s, t, u).expect("drawn matrices are invertible")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator(&self, g: Generator) -> &RatMatrix {
        &self.gens[g as usize]
    }

    pub fn eval_word(&self, w: &GroupWord) -> RatMatrix {
        w.letters().iter().fold(RatMatrix::identity(self.rank), |acc, l| {
            let m = if l.inverse {
                &self.inverses[l.gen as usize]
            } else {
                &self.gens[l.gen as usize]
            };
            &acc * m
        })
    }

    pub fn eval(&self, e: &RingElement) -> RatMatrix {
        e.terms().fold(RatMatrix::zeros(self.rank, self.rank), |acc, (w, c)| {
            let m = self.eval_word(w);
            let scaled = RatMatrix::from_fn(self.rank, self.rank, |i, j| c * &m[(i, j)]);
            &acc + &scaled
        })
    }

    /// Block matrix whose `(i, j)` block is the image of `m[i][j]`.
    pub fn eval_matrix(&self, m: &RingMatrix) -> RatMatrix {
        let blocks: Vec<Vec<RatMatrix>> = m
            .iter()
            .map(|row| row.iter().map(|e| self.eval(e)).collect())
            .collect();
        if blocks.is_empty() || blocks[0].is_empty() {
            return RatMatrix::zeros(blocks.len() * self.rank, 0);
        }
        RatMatrix::from_blocks(&blocks, self.rank)
    }
}

/// Backend used to evaluate cohomology computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonodromyRep {
    /// Free-group words are kept formal.
    Symbolic,
    Matrix(MatrixRep),
}

impl MonodromyRep {
    pub fn matrix(&self) -> Option<&MatrixRep> {
        match self {
            MonodromyRep::Symbolic => None,
            MonodromyRep::Matrix(m) => Some(m),
        }
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            MonodromyRep::Symbolic => "symbolic",
            MonodromyRep::Matrix(_) => "matrix",
        }
    }
}

/// The entry of a `1x1` matrix (zero for anything larger).
pub fn scalar_of(m: &RatMatrix) -> BigRational {
    if m.rows() == 1 && m.cols() == 1 {
        m[(0, 0)].clone()
    } else {
        BigRational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn singular_generator_is_rejected() {
        let i = RatMatrix::identity(2);
        let z = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            MatrixRep::new(z, i.clone(), i),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rep = MatrixRep::random(2, &mut rng);
        let a: RingElement = "1 - S·T^-1".parse().unwrap();
        let b: RingElement = "U + 2·T".parse().unwrap();
        assert_eq!(rep.eval(&(&a * &b)), &rep.eval(&a) * &rep.eval(&b));
        let w: GroupWord = "S·T^-1·U".parse().unwrap();
        assert_eq!(&rep.eval_word(&w) * &rep.eval_word(&w.inverse()), RatMatrix::identity(2));
    }

    #[test]
    fn scalar_substitution() {
        let rep = MatrixRep::scalars(rat(2, 1), rat(3, 1), rat(5, 1)).unwrap();
        let e: RingElement = "1 - S·T^-1".parse().unwrap();
        assert_eq!(scalar_of(&rep.eval(&e)), rat(1, 3));
    }
}
