//! Determinantal semi-invariants.
//!
//! For dimension vectors `A`, `B` with `euler(A, B) = 0` and representations
//! `v` (dimension `A`) and `w` (dimension `B`), the map
//! `Phi -> Phi v - w Phi` sends `⊕_x Hom(F_x, G_x)` to
//! `⊕_{a: x -> y} Hom(F_x, G_y)`, two spaces of equal dimension. Its
//! determinant `C(v, w)` is a semi-invariant in `w` of weight `L1(A)`, and
//! it is not identically zero exactly when `A` is a Schofield subdimension
//! vector of `A + B`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cone::{self, ConeDecision};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rng::SplitMix64;
use crate::schofield::SchofieldSession;
use crate::vector::{DimVector, Weight};

/// One matrix per arrow, of shape `dims[target] x dims[source]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<T> {
    dims: DimVector,
    maps: Vec<Matrix<T>>,
}

impl<T> Representation<T> {
    pub fn new(q: &Quiver, dims: DimVector, maps: Vec<Matrix<T>>) -> Result<Self> {
        q.check_len(&dims)?;
        if maps.len() != q.arrows().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, (&(s, t), m)) in q.arrows().iter().zip(&maps).enumerate() {
            if (m.rows() as i64, m.cols() as i64) != (dims[t], dims[s]) {
                return Err(Error::Shape(format!(
                    "arrow #{a} ({} -> {}) needs a {}x{} matrix, got {}x{}",
                    q.name(s),
                    q.name(t),
                    dims[t],
                    dims[s],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { dims, maps })
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<T>] {
        &self.maps
    }
}

impl Representation<BigInt> {
    pub fn to_rational(&self) -> Representation<BigRational> {
        Representation {
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| m.map(|x| BigRational::from_integer(x.clone())))
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Representation<T> {
    /// Arrow matrices separated by ` | `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.maps.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "[{m}]")?;
        }
        Ok(())
    }
}

/// An element of `prod_x GL(V_x)` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    blocks: Vec<Matrix<BigRational>>,
    inverses: Vec<Matrix<BigRational>>,
}

impl GroupElement {
    pub fn new(q: &Quiver, blocks: Vec<Matrix<BigRational>>) -> Result<Self> {
        if blocks.len() != q.vertex_count() {
            return Err(Error::Length {
                expected: q.vertex_count(),
                found: blocks.len(),
            });
        }
        let inverses = blocks
            .iter()
            .enumerate()
            .map(|(x, b)| {
                if !b.is_square() {
                    return Err(Error::Shape(format!("block at `{}` is not square", q.name(x))));
                }
                linalg::inverse_rational(b).ok_or_else(|| Error::Singular(q.name(x).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { blocks, inverses })
    }

    pub fn identity(dims: &[i64]) -> Self {
        let blocks: Vec<_> = dims.iter().map(|&d| Matrix::identity(d as usize)).collect();
        Self {
            inverses: blocks.clone(),
            blocks,
        }
    }

    pub fn blocks(&self) -> &[Matrix<BigRational>] {
        &self.blocks
    }

    pub fn block_dets(&self) -> Vec<BigRational> {
        self.blocks.iter().map(linalg::det_rational).collect()
    }

    /// `prod_x det(g_x)^{e_x}`.
    pub fn character(&self, exponents: &[i64]) -> BigRational {
        self.block_dets()
            .iter()
            .zip(exponents)
            .fold(BigRational::one(), |acc, (d, &e)| acc * linalg::pow_rational(d, e))
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
            inverses: other
                .inverses
                .iter()
                .zip(&self.inverses)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Random element with integer entries in `[-bound, bound]`, resampling
    /// singular blocks.
    pub fn random(dims: &[i64], bound: u64, rng: &mut SplitMix64) -> Self {
        let mut blocks = Vec::with_capacity(dims.len());
        let mut inverses = Vec::with_capacity(dims.len());
        for &d in dims {
            let d = d as usize;
            loop {
                let b = Matrix::from_fn(d, d, |_, _| {
                    BigRational::from_integer(BigInt::from(rng.symmetric(bound)))
                });
                if let Some(inv) = linalg::inverse_rational(&b) {
                    blocks.push(b);
                    inverses.push(inv);
                    break;
                }
            }
        }
        Self { blocks, inverses }
    }
}

/// `(g r g^{-1})_a = g_y r_a g_x^{-1}` for every arrow `a: x -> y`.
pub fn act(
    q: &Quiver,
    g: &GroupElement,
    r: &Representation<BigRational>,
) -> Result<Representation<BigRational>> {
    if g.blocks.len() != q.vertex_count()
        || g.blocks.iter().zip(r.dims.iter()).any(|(b, &d)| b.rows() as i64 != d)
    {
        return Err(Error::Shape("group element does not match the representation".into()));
    }
    let maps = q
        .arrows()
        .iter()
        .zip(&r.maps)
        .map(|(&(x, y), m)| &(&g.blocks[y] * m) * &g.inverses[x])
        .collect();
    Ok(Representation {
        dims: r.dims.clone(),
        maps,
    })
}

pub(crate) fn sample_representation(
    q: &Quiver,
    dims: &DimVector,
    bound: u64,
    rng: &mut SplitMix64,
) -> Representation<BigInt> {
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            Matrix::from_fn(dims[t] as usize, dims[s] as usize, |_, _| {
                BigInt::from(rng.symmetric(bound))
            })
        })
        .collect();
    Representation {
        dims: dims.clone(),
        maps,
    }
}

/// Integer entries drawn uniformly from `[-bound, bound]` with SplitMix64,
/// arrows in declaration order, each matrix row-major.
pub fn random_representation(
    q: &Quiver,
    dims: &DimVector,
    bound: u64,
    seed: u64,
) -> Result<Representation<BigInt>> {
    q.check_len(dims)?;
    if bound == 0 {
        return Err(Error::InvalidArgument("sampling bound must be at least 1".into()));
    }
    Ok(sample_representation(q, dims, bound, &mut SplitMix64::new(seed)))
}

/// The matrix of `Phi -> Phi v - w Phi` and its determinant.
///
/// Columns enumerate `Hom(F_x, G_x)` blocks in canonical vertex order, rows
/// enumerate `Hom(F_x, G_y)` blocks in arrow declaration order; within a
/// block the `B_y x A_x` entries are row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSystem<T> {
    pub a: DimVector,
    pub b: DimVector,
    pub v: Representation<T>,
    pub w: Representation<T>,
    pub matrix: Matrix<T>,
    pub det: T,
}

pub fn delta_system<T: Scalar>(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    v: &Representation<T>,
    w: &Representation<T>,
) -> Result<DeltaSystem<T>> {
    let matrix = delta_matrix(q, a, b, v, w)?;
    let det = T::det(&matrix);
    Ok(DeltaSystem {
        a: a.clone(),
        b: b.clone(),
        v: v.clone(),
        w: w.clone(),
        matrix,
        det,
    })
}

/// `C^{A,B}(v, w)`.
pub fn determinant<T: Scalar>(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    v: &Representation<T>,
    w: &Representation<T>,
) -> Result<T> {
    Ok(T::det(&delta_matrix(q, a, b, v, w)?))
}

fn delta_matrix<T: Scalar>(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    v: &Representation<T>,
    w: &Representation<T>,
) -> Result<Matrix<T>> {
    let euler = q.euler_form(a, b)?;
    if euler != 0 {
        return Err(Error::EulerNonzero {
            a: a.to_string(),
            b: b.to_string(),
            value: euler,
        });
    }
    if v.dims != *a || w.dims != *b {
        return Err(Error::Shape(format!(
            "representations have dimensions {} and {}, expected {a} and {b}",
            v.dims, w.dims
        )));
    }
    let k = q.vertex_count();
    let (av, bv) = (|x: usize| a[x] as usize, |x: usize| b[x] as usize);
    let mut col_offset = vec![0usize; k];
    let mut size = 0;
    for &x in q.topological_order() {
        col_offset[x] = size;
        size += av(x) * bv(x);
    }
    let col = |x: usize, r: usize, c: usize| col_offset[x] + r * av(x) + c;

    let mut m = Matrix::<T>::zeros(size, size);
    let mut row_offset = 0;
    for (arrow, &(x, y)) in q.arrows().iter().enumerate() {
        let va = &v.maps[arrow];
        let wa = &w.maps[arrow];
        // (Phi_y v_a - w_a Phi_x)[r][c]
        for r in 0..bv(y) {
            for c in 0..av(x) {
                let row = row_offset + r * av(x) + c;
                for s in 0..av(y) {
                    let e = &mut m[(row, col(y, r, s))];
                    *e = e.add_ref(&va[(s, c)]);
                }
                for t in 0..bv(x) {
                    let e = &mut m[(row, col(x, t, c))];
                    *e = e.add_ref(&-wa[(r, t)].clone());
                }
            }
        }
        row_offset += bv(y) * av(x);
    }
    debug_assert_eq!(row_offset, size);
    Ok(m)
}

/// Sampling parameters for genericity tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub bound: u64,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            trials: 3,
            bound: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nonvanishing {
    /// The first sampled pair with a nonzero determinant.
    Nonzero {
        trial: usize,
        v: Representation<BigInt>,
        w: Representation<BigInt>,
        det: BigInt,
    },
    /// Every sample vanished.
    Zero { trials: usize },
}

/// Outcome of [`generic_nonvanishing`], always paired with the Schofield
/// decision for `A -> A + B`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonvanishingReport {
    pub outcome: Nonvanishing,
    pub schofield: bool,
    /// Schwartz-Zippel bound `(D / (2 bound + 1))^trials` on a false "zero",
    /// where `D = sum_x A_x B_x` is the degree of the determinant.
    pub false_zero_bound: f64,
}

impl NonvanishingReport {
    pub fn is_nonzero(&self) -> bool {
        matches!(self.outcome, Nonvanishing::Nonzero { .. })
    }

    /// Sampling verdict agrees with the exact combinatorial decision.
    pub fn is_consistent(&self) -> bool {
        self.is_nonzero() == self.schofield
    }
}

pub fn generic_nonvanishing(
    session: &mut SchofieldSession,
    a: &DimVector,
    b: &DimVector,
    sampling: Sampling,
) -> Result<NonvanishingReport> {
    if sampling.trials == 0 || sampling.bound == 0 {
        return Err(Error::InvalidArgument("trials and bound must be positive".into()));
    }
    let q = session.quiver().clone();
    let euler = q.euler_form(a, b)?;
    if euler != 0 {
        return Err(Error::EulerNonzero {
            a: a.to_string(),
            b: b.to_string(),
            value: euler,
        });
    }
    let total: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
    let schofield = session.is_sub(a, &total)?;
    let degree: i64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
    let false_zero_bound =
        (degree as f64 / (2.0 * sampling.bound as f64 + 1.0)).powi(sampling.trials as i32);

    let mut rng = SplitMix64::new(sampling.seed);
    for trial in 0..sampling.trials {
        let v = sample_representation(&q, a, sampling.bound, &mut rng);
        let w = sample_representation(&q, b, sampling.bound, &mut rng);
        let det = determinant(&q, a, b, &v, &w)?;
        if !det.is_zero() {
            return Ok(NonvanishingReport {
                outcome: Nonvanishing::Nonzero { trial, v, w, det },
                schofield,
                false_zero_bound,
            });
        }
    }
    Ok(NonvanishingReport {
        outcome: Nonvanishing::Zero {
            trials: sampling.trials,
        },
        schofield,
        false_zero_bound,
    })
}

/// Checks `C(g v g^-1, h w h^-1) = det(g)^{L2(B)} det(h)^{-L1(A)} C(v, w)` exactly.
pub fn semi_invariance_check(
    q: &Quiver,
    a: &DimVector,
    b: &DimVector,
    v: &Representation<BigRational>,
    w: &Representation<BigRational>,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<bool> {
    let lhs = determinant(q, a, b, &act(q, g, v)?, &act(q, h, w)?)?;
    let l1: Vec<i64> = q.l1_apply(a)?.iter().map(|x| -x).collect();
    let factor = g.character(&q.l2_apply(b)?) * h.character(&l1);
    Ok(lhs == factor * determinant(q, a, b, v, w)?)
}

/// Checks that `p = C^{A,n}(v, .)` satisfies
/// `p(h w h^-1) = prod_x det(h_x)^{-sigma_x} p(w)` with `sigma = L1(A)`.
pub fn weight_check(
    q: &Quiver,
    n: &DimVector,
    a: &DimVector,
    v: &Representation<BigRational>,
    w: &Representation<BigRational>,
    h: &GroupElement,
) -> Result<bool> {
    let sigma = q.l1_apply(a)?;
    let lhs = determinant(q, a, n, v, &act(q, h, w)?)?;
    let neg: Vec<i64> = sigma.iter().map(|x| -x).collect();
    Ok(lhs == h.character(&neg) * determinant(q, a, n, v, w)?)
}

/// A nonzero semi-invariant `C^{A,n}(v, .)` of weight `sigma`, evaluated at `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub n: DimVector,
    pub sigma: Weight,
    /// `L1^{-1}(sigma)` on the support of `n`, zero outside it.
    pub a: DimVector,
    pub big_n: DimVector,
    pub sampling: Sampling,
    pub v: Representation<BigInt>,
    pub w: Representation<BigInt>,
    pub det: BigInt,
}

impl Witness {
    /// `sigma=`, `A=`, `seed=`, `bound=`, `det=` lines in that order.
    pub fn to_text(&self) -> String {
        format!(
            "sigma={}\nA={}\nseed={}\nbound={}\ndet={}\n",
            self.sigma, self.a, self.sampling.seed, self.sampling.bound, self.det
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessOutcome {
    Found(Witness),
    /// The weight fails a cone constraint; no semi-invariant exists.
    NotInCone(ConeDecision),
    /// A step that cannot fail for a cone member did fail.
    Inconsistent(String),
}

impl WitnessOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Builds a nonzero semi-invariant of weight `sigma` on representations of
/// dimension `n`, or explains why none exists.
pub fn saturation_witness(
    session: &mut SchofieldSession,
    n: &DimVector,
    sigma: &Weight,
    sampling: Sampling,
) -> Result<WitnessOutcome> {
    let q = session.quiver().clone();
    let support = q.restrict_support(n, sigma)?;
    let mut restricted;
    let inner: &mut SchofieldSession = if support.kept.len() == q.vertex_count() {
        session
    } else {
        restricted = SchofieldSession::new(support.quiver.clone());
        &mut restricted
    };
    let decision = cone::in_cone(inner, &support.n, &support.sigma)?;
    if !decision.is_member() {
        return Ok(WitnessOutcome::NotInCone(decision));
    }
    let a_small = match cone::sigma_to_a(inner, &support.n, &support.sigma) {
        Ok(a) => a,
        Err(Error::Inconsistency(msg)) => return Ok(WitnessOutcome::Inconsistent(msg)),
        Err(e) => return Err(e),
    };
    let mut a = vec![0i64; q.vertex_count()];
    for (i, &x) in support.kept.iter().enumerate() {
        a[x] = a_small[i];
    }
    let a = DimVector::new(a)?;
    let big_n = DimVector::new(a.iter().zip(n.iter()).map(|(x, y)| x + y).collect())?;
    if !session.is_quot(&big_n, n)? {
        return Ok(WitnessOutcome::Inconsistent(format!(
            "{big_n} ->> {n} fails for the cone member {sigma}"
        )));
    }
    let report = generic_nonvanishing(session, &a, n, sampling)?;
    match report.outcome {
        Nonvanishing::Nonzero { v, w, det, .. } => Ok(WitnessOutcome::Found(Witness {
            n: n.clone(),
            sigma: sigma.clone(),
            a,
            big_n,
            sampling,
            v,
            w,
            det,
        })),
        Nonvanishing::Zero { trials } => Ok(WitnessOutcome::Inconsistent(format!(
            "C^{{{a},{n}}} vanished in {trials} trials for the cone member {sigma} \
             (false-zero bound {:e})",
            report.false_zero_bound
        ))),
    }
}
