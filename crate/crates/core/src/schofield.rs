//! Schofield subdimension and quotient dimension vectors, and the generic
//! hull data used to show that `L1^{-1}(sigma)` is a dimension vector.
//!
//! `alpha` is a subdimension vector of `n` when every representation of
//! dimension `n` has a subrepresentation of dimension `alpha`. It is decided
//! by the recursion
//!
//! ```text
//! alpha -> n  <=>  euler(gamma, n - alpha) >= 0 for every gamma -> alpha
//! ```
//!
//! with `0 -> n` and `n -> n` as base cases.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Matrix};
use crate::quiver::Quiver;
use crate::rng::SplitMix64;
use crate::vector::DimVector;

/// Memoised Schofield recursion for one quiver. Not meant to be shared
/// between threads; create one session per worker.
#[derive(Debug)]
pub struct SchofieldSession {
    quiver: Quiver,
    cache: HashMap<Vec<i64>, Rc<Vec<Vec<i64>>>>,
}

impl SchofieldSession {
    pub fn new(quiver: Quiver) -> Self {
        Self {
            quiver,
            cache: HashMap::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Number of dimension vectors whose subdimension set is cached.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        self.quiver.check_len(v)?;
        if v.iter().any(|&x| x < 0) {
            return Err(Error::NegativeDimension(DimVector::new_unchecked(v).to_string()));
        }
        Ok(())
    }

    /// All `alpha <= n` with `alpha -> n`, sorted lexicographically in
    /// canonical vertex order.
    pub fn subdims(&mut self, n: &[i64]) -> Result<Vec<DimVector>> {
        self.check_dim(n)?;
        Ok(self
            .subdims_raw(n)
            .iter()
            .map(|a| DimVector::new_unchecked(a))
            .collect())
    }

    pub(crate) fn subdims_raw(&mut self, n: &[i64]) -> Rc<Vec<Vec<i64>>> {
        if let Some(hit) = self.cache.get(n) {
            return Rc::clone(hit);
        }
        let out = Rc::new(BoxTable::new(&self.quiver, n).subdims());
        self.cache.insert(n.to_vec(), Rc::clone(&out));
        out
    }

    fn is_sub_raw(&mut self, alpha: &[i64], n: &[i64]) -> bool {
        if alpha.iter().zip(n).any(|(a, b)| a > b) {
            return false;
        }
        if alpha.iter().all(|&a| a == 0) || alpha == n {
            return true;
        }
        let beta: Vec<i64> = n.iter().zip(alpha).map(|(a, b)| a - b).collect();
        let gammas = self.subdims_raw(alpha);
        gammas
            .iter()
            .all(|gamma| self.quiver.euler_unchecked(gamma, &beta) >= 0)
    }

    /// `alpha -> n`.
    pub fn is_sub(&mut self, alpha: &[i64], n: &[i64]) -> Result<bool> {
        self.check_dim(alpha)?;
        self.check_dim(n)?;
        Ok(self.is_sub_raw(alpha, n))
    }

    /// First `gamma -> alpha` (canonical order) with `euler(gamma, n - alpha) < 0`,
    /// with that value. `None` when `alpha` is a subdimension vector or is
    /// not below `n`.
    pub fn sub_certificate(&mut self, alpha: &[i64], n: &[i64]) -> Result<Option<(DimVector, i64)>> {
        self.check_dim(alpha)?;
        self.check_dim(n)?;
        if alpha.iter().zip(n).any(|(a, b)| a > b) {
            return Ok(None);
        }
        let beta: Vec<i64> = n.iter().zip(alpha).map(|(a, b)| a - b).collect();
        let gammas = self.subdims_raw(alpha);
        Ok(gammas.iter().find_map(|gamma| {
            let e = self.quiver.euler_unchecked(gamma, &beta);
            (e < 0).then(|| (DimVector::new_unchecked(gamma), e))
        }))
    }

    /// `n ->> beta`, i.e. `n - beta -> n`.
    pub fn is_quot(&mut self, n: &[i64], beta: &[i64]) -> Result<bool> {
        self.check_dim(n)?;
        self.check_dim(beta)?;
        if beta.iter().zip(n).any(|(b, m)| b > m) {
            return Ok(false);
        }
        let alpha: Vec<i64> = n.iter().zip(beta).map(|(m, b)| m - b).collect();
        Ok(self.is_sub_raw(&alpha, n))
    }

    /// `{ n - alpha : alpha -> n }`, sorted like [`Self::subdims`].
    pub fn quotdims(&mut self, n: &[i64]) -> Result<Vec<DimVector>> {
        let mut out: Vec<DimVector> = self
            .subdims(n)?
            .into_iter()
            .map(|a| DimVector::new_unchecked(&n.iter().zip(a.iter()).map(|(m, x)| m - x).collect::<Vec<_>>()))
            .collect();
        sort_canonical(&self.quiver, &mut out);
        Ok(out)
    }

    /// Generic hull data for `n` (every entry positive).
    pub fn hull_data(&mut self, n: &[i64]) -> Result<HullData> {
        self.check_dim(n)?;
        if n.contains(&0) {
            return Err(Error::InvalidArgument(
                "hull data needs a dimension vector with positive entries".into(),
            ));
        }
        let q = self.quiver.clone();
        let k = q.vertex_count();
        let order = q.topological_order();
        let m = q.multiplicity_matrix();
        // t[i][c] in canonical positions: generic dimension at x_i of the
        // subrepresentation of the dual generated from a vector at x_c.
        let mut t = vec![vec![0i64; k]; k];
        for c in 0..k {
            t[c][c] = 1;
            for i in (0..c).rev() {
                let reach: i64 = (i + 1..=c)
                    .map(|j| small(&m[(j, i)]) * t[j][c])
                    .sum();
                t[i][c] = reach.min(n[order[i]]);
            }
        }
        let t_matrix: IntMatrix = Matrix::from_fn(k, k, |r, c| BigInt::from(t[c][r]));
        let i = IntMatrix::identity(k);
        let w = &i - &(&t_matrix * &(&i - &m));
        let p = q.path_matrix();

        let mut theta = vec![DimVector::zero(k); k];
        for c in 0..k {
            let mut entries = vec![0; k];
            for j in 0..k {
                entries[order[j]] = t[j][c];
            }
            theta[order[c]] = DimVector::new_unchecked(&entries);
        }

        if !linalg::is_nonnegative(&w) {
            return Err(Error::Inconsistency(format!("W has a negative entry: {w}")));
        }
        if t_matrix.iter().zip(p.iter()).any(|(a, b)| a > b) {
            return Err(Error::Inconsistency("t exceeds the path count".into()));
        }
        for (v, th) in theta.iter().enumerate() {
            if !self.is_quot(n, th)? {
                return Err(Error::Inconsistency(format!(
                    "hull vector {th} of vertex {} is not a quotient dimension vector",
                    q.name(v)
                )));
            }
        }
        Ok(HullData {
            n: DimVector::new_unchecked(n),
            theta,
            t: t_matrix,
            w,
        })
    }

    /// Samples a representation of the opposite quiver over `F_p`, fixes the
    /// first basis vector at vertex `k` and returns the dimension vector of
    /// the subrepresentation it generates.
    pub fn hull_sample_check(&self, n: &[i64], k: usize, p: u64, seed: u64) -> Result<DimVector> {
        self.check_dim(n)?;
        let q = &self.quiver;
        if k >= q.vertex_count() {
            return Err(Error::InvalidArgument(format!("no vertex #{k}")));
        }
        if p <= 1 << 20 || !linalg::is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "sampling field size {p} must be a prime above 2^20"
            )));
        }
        if n.contains(&0) {
            return Err(Error::InvalidArgument("dimension vector must be positive".into()));
        }
        let mut rng = SplitMix64::new(seed);
        // For each arrow x -> y the dual arrow y -> x carries an n_x by n_y matrix.
        let maps: Vec<Vec<Vec<u64>>> = q
            .arrows()
            .iter()
            .map(|&(x, y)| {
                (0..n[x])
                    .map(|_| (0..n[y]).map(|_| rng.below(p)).collect())
                    .collect()
            })
            .collect();
        let mut spans: Vec<Vec<Vec<u64>>> = vec![Vec::new(); q.vertex_count()];
        let mut start = vec![0u64; n[k] as usize];
        start[0] = 1;
        spans[k] = vec![start];
        let order = q.topological_order();
        for &x in order[..q.position(k)].iter().rev() {
            let mut images = Vec::new();
            for (a, &(src, tgt)) in q.arrows().iter().enumerate() {
                if src != x {
                    continue;
                }
                for v in &spans[tgt] {
                    let img = maps[a]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .zip(v)
                                .fold(0u64, |acc, (r, c)| (acc + linalg::mul_mod(*r, *c, p)) % p)
                        })
                        .collect();
                    images.push(img);
                }
            }
            spans[x] = linalg::span_mod_p(&images, p);
        }
        Ok(DimVector::new_unchecked(
            &spans.iter().map(|s| s.len() as i64).collect::<Vec<_>>(),
        ))
    }
}

fn small(x: &BigInt) -> i64 {
    i64::try_from(x).expect("arrow multiplicity fits in i64")
}

/// Generic hull vectors `theta_k` with the matrices `T` and `W = I - T(I - M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullData {
    pub n: DimVector,
    /// `theta[v]` is the hull vector generated at vertex `v` (declaration index).
    pub theta: Vec<DimVector>,
    /// `T` in canonical order, entry `(j, i)` is `t_ij`.
    pub t: IntMatrix,
    /// `W = I - T(I - M)`, strictly lower triangular and nonnegative.
    pub w: IntMatrix,
}

impl HullData {
    /// `true` if `W` vanishes (the large-dimension regime, `T = P`).
    pub fn w_is_zero(&self) -> bool {
        self.w.iter().all(Zero::is_zero)
    }

    pub fn t_is_unitriangular(&self) -> bool {
        let k = self.t.rows();
        (0..k).all(|r| {
            (0..k).all(|c| match r.cmp(&c) {
                std::cmp::Ordering::Equal => self.t[(r, c)].is_one(),
                std::cmp::Ordering::Less => self.t[(r, c)].is_zero(),
                std::cmp::Ordering::Greater => !self.t[(r, c)].is_negative(),
            })
        })
    }
}

/// The recursion evaluated bottom-up over every vector in the box below
/// `n`. Vectors are indexed in mixed radix over canonical coordinates, so
/// every `alpha' <= alpha` has a smaller index than `alpha`.
struct BoxTable<'q> {
    quiver: &'q Quiver,
    /// Canonical positions of each arrow's ends.
    arrows: Vec<(usize, usize)>,
    radix: Vec<usize>,
    strides: Vec<usize>,
    /// Canonical coordinates of every box vector, `k` per vector.
    coords: Vec<i32>,
}

impl<'q> BoxTable<'q> {
    fn new(quiver: &'q Quiver, n: &[i64]) -> Self {
        let order = quiver.topological_order();
        let k = order.len();
        let radix: Vec<usize> = order.iter().map(|&v| n[v] as usize + 1).collect();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radix[i + 1];
        }
        let total: usize = radix.iter().product();
        let mut coords = Vec::with_capacity(total * k);
        for idx in 0..total {
            coords.extend((0..k).map(|i| ((idx / strides[i]) % radix[i]) as i32));
        }
        let arrows = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| (quiver.position(s), quiver.position(t)))
            .collect();
        Self {
            quiver,
            arrows,
            radix,
            strides,
            coords,
        }
    }

    fn vector(&self, idx: usize) -> &[i32] {
        let k = self.radix.len();
        &self.coords[idx * k..(idx + 1) * k]
    }

    /// Subdimension vectors of the top of the box, in box order and
    /// declaration-order entries.
    fn subdims(&self) -> Vec<Vec<i64>> {
        let k = self.radix.len();
        let total: usize = self.radix.iter().product();
        let mut sets: Vec<Vec<u32>> = Vec::with_capacity(total);
        let mut w = vec![0i32; k];
        let mut sub = vec![0i32; k];
        for idx in 0..total {
            let alpha = self.vector(idx).to_vec();
            let mut list = Vec::new();
            sub.iter_mut().for_each(|x| *x = 0);
            let mut sub_idx = 0usize;
            let mut done = false;
            while !done {
                if sub_idx == 0 || sub_idx == idx {
                    list.push(sub_idx as u32);
                } else {
                    // w = L2(alpha - sub) in canonical coordinates
                    for i in 0..k {
                        w[i] = alpha[i] - sub[i];
                    }
                    for &(s, t) in &self.arrows {
                        w[s] -= alpha[t] - sub[t];
                    }
                    let ok = sets[sub_idx].iter().all(|&g| {
                        self.vector(g as usize).iter().zip(&w).map(|(a, b)| a * b).sum::<i32>() >= 0
                    });
                    if ok {
                        list.push(sub_idx as u32);
                    }
                }
                // odometer over the box below alpha
                let mut i = k;
                loop {
                    if i == 0 {
                        done = true;
                        break;
                    }
                    i -= 1;
                    if sub[i] < alpha[i] {
                        sub[i] += 1;
                        sub_idx += self.strides[i];
                        break;
                    }
                    sub_idx -= sub[i] as usize * self.strides[i];
                    sub[i] = 0;
                }
            }
            sets.push(list);
        }
        let order = self.quiver.topological_order();
        sets[total - 1]
            .iter()
            .map(|&g| {
                let mut v = vec![0i64; k];
                for (i, &c) in self.vector(g as usize).iter().enumerate() {
                    v[order[i]] = i64::from(c);
                }
                v
            })
            .collect()
    }
}

/// All `alpha` with `0 <= alpha <= n`, lexicographic in canonical order
/// (last canonical vertex varies fastest). Entries are in declaration order.
pub fn boxed_vectors(q: &Quiver, n: &[i64]) -> Vec<Vec<i64>> {
    let order = q.topological_order();
    let k = order.len();
    let total: usize = n.iter().map(|&x| x as usize + 1).product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0i64; k];
    loop {
        out.push(cur.clone());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            let v = order[pos];
            if cur[v] < n[v] {
                cur[v] += 1;
                break;
            }
            cur[v] = 0;
        }
    }
}

pub(crate) fn canonical_key(q: &Quiver, v: &[i64]) -> Vec<i64> {
    q.topological_order().iter().map(|&i| v[i]).collect()
}

pub(crate) fn sort_canonical(q: &Quiver, vs: &mut [DimVector]) {
    vs.sort_by_cached_key(|v| canonical_key(q, v));
}
