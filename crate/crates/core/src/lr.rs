//! Littlewood-Richardson positivity as cone membership on a triple flag
//! quiver.
//!
//! For `m` parts the quiver has three arms `x_1 -> ... -> x_{m-1} -> z`
//! ending in a common center `z`, with `n(x_i) = i` and `n(z) = m`. A triple
//! `(lambda, mu, nu)` is encoded through `(lambda, mu, nu*)` with
//! `nu* = (k - nu_m, ..., k - nu_1)`, `k = nu_1`: arm vertex `x_i` carries
//! `p_i - p_{i+1}` for the arm's partition `p`, and the center carries
//! whatever makes `<sigma, n> = 0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cone::{cone_description, ConeDescription};
use crate::error::{Error, Result};
use crate::oracle::lr_coefficient;
use crate::quiver::Quiver;
use crate::schofield::SchofieldSession;
use crate::vector::{parse_list, DimVector, Weight};

/// Weakly decreasing nonnegative parts without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not a weakly decreasing list of nonnegative integers"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self(parts))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_list(text)?)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self::new(self.0.iter().map(|x| x * factor).collect()).expect("scaling keeps the order")
    }

    /// Young diagram containment.
    pub fn fits_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagQuiverInstance {
    pub m: usize,
    pub quiver: Quiver,
    pub n: DimVector,
}

impl FlagQuiverInstance {
    /// Arms `a`, `b`, `c` then the center `z`, in declaration order.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("flag quiver needs m >= 1".into()));
        }
        let mut names = Vec::new();
        let mut arrows = Vec::new();
        let mut dims = Vec::new();
        let center = 3 * (m - 1);
        for arm in ["a", "b", "c"] {
            for i in 1..m {
                let v = names.len();
                names.push(format!("{arm}{i}"));
                dims.push(i as i64);
                arrows.push((v, if i + 1 < m { v + 1 } else { center }));
            }
        }
        names.push("z".to_string());
        dims.push(m as i64);
        Ok(Self {
            m,
            quiver: Quiver::from_indices(names, arrows)?,
            n: DimVector::new(dims)?,
        })
    }

    fn weight(&self, arms: [&[i64]; 3], k: i64) -> Weight {
        let m = self.m;
        let mut sigma = Vec::with_capacity(3 * (m - 1) + 1);
        let mut center = -k;
        for p in arms {
            sigma.extend((0..m - 1).map(|i| p[i] - p[i + 1]));
            center += p[m - 1];
        }
        sigma.push(center);
        Weight::new(sigma)
    }
}

fn padded(p: &Partition, m: usize) -> Vec<i64> {
    (0..m).map(|i| p.part(i)).collect()
}

/// The flag quiver instance and the weight encoding `(lambda, mu, nu)`.
pub fn lr_instance(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    m: usize,
) -> Result<(FlagQuiverInstance, Weight)> {
    if [lambda, mu, nu].iter().any(|p| p.len() > m) {
        return Err(Error::InvalidArgument(format!(
            "a partition has more than {m} parts"
        )));
    }
    if nu.size() != lambda.size() + mu.size() {
        return Err(Error::InvalidArgument(format!(
            "|nu| = {} but |lambda| + |mu| = {}",
            nu.size(),
            lambda.size() + mu.size()
        )));
    }
    let instance = FlagQuiverInstance::new(m)?;
    let k = nu.part(0);
    let nu_dual: Vec<i64> = (0..m).rev().map(|i| k - nu.part(i)).collect();
    let sigma = instance.weight([&padded(lambda, m), &padded(mu, m), &nu_dual], k);
    debug_assert_eq!(sigma.pair(&instance.n), 0);
    Ok((instance, sigma))
}

/// Minimal `m`: the largest part count, at least 1.
pub fn minimal_size(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    lambda.len().max(mu.len()).max(nu.len()).max(1)
}

/// Cone of the `m`-part flag quiver; computed once per process.
pub fn flag_cone(m: usize) -> Result<Arc<ConeDescription>> {
    static CONES: OnceLock<Mutex<HashMap<usize, Arc<ConeDescription>>>> = OnceLock::new();
    let cones = CONES.get_or_init(Default::default);
    if let Some(hit) = cones.lock().expect("cone cache poisoned").get(&m) {
        return Ok(Arc::clone(hit));
    }
    let instance = FlagQuiverInstance::new(m)?;
    let mut session = SchofieldSession::new(instance.quiver.clone());
    let cone = Arc::new(cone_description(&mut session, &instance.n)?);
    cones
        .lock()
        .expect("cone cache poisoned")
        .insert(m, Arc::clone(&cone));
    Ok(cone)
}

/// `c^nu_{lambda, mu} > 0` through the cone, with input errors reported.
pub fn try_lr_positive(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<bool> {
    if nu.size() != lambda.size() + mu.size() {
        return Ok(false);
    }
    let m = minimal_size(lambda, mu, nu);
    let (_, sigma) = lr_instance(lambda, mu, nu, m)?;
    Ok(flag_cone(m)?.decide_integral(&sigma)?.is_member())
}

/// `c^nu_{lambda, mu} > 0`, decided by cone membership.
pub fn lr_positive(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    try_lr_positive(lambda, mu, nu).expect("flag quiver instances are well formed")
}

/// Positivity of `c^{N nu}_{N lambda, N mu}` for `N = 1..=n_max`.
pub fn lr_saturation_table(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n_max: i64,
) -> Result<Vec<(i64, bool)>> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("N_max must be at least 1".into()));
    }
    (1..=n_max)
        .map(|n| Ok((n, try_lr_positive(&lambda.scale(n), &mu.scale(n), &nu.scale(n))?)))
        .collect()
}

/// `lr_coefficient` paired with [`lr_positive`], for reporting.
pub fn lr_report(lambda: &Partition, mu: &Partition, nu: &Partition) -> (bool, u64) {
    (lr_positive(lambda, mu, nu), lr_coefficient(lambda, mu, nu))
}
