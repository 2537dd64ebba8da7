//! Exhaustive quiver-Grassmannian search over small finite fields.

use rayon::prelude::*;

use super::field::FiniteField;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::schofield::boxed_vectors;
use crate::vector::DimVector;

/// Cap on the number of representations enumerated by [`brute_is_sub`].
pub const FEASIBILITY_LIMIT: u128 = 10_000_000;

/// A representation with entries in a finite field (encoded elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldRepresentation {
    field: FiniteField,
    dims: DimVector,
    maps: Vec<Matrix<u32>>,
}

impl FieldRepresentation {
    pub fn new(q: &Quiver, field: FiniteField, dims: DimVector, maps: Vec<Matrix<u32>>) -> Result<Self> {
        q.check_len(&dims)?;
        if maps.len() != q.arrows().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (&(s, t), m) in q.arrows().iter().zip(&maps) {
            if (m.rows() as i64, m.cols() as i64) != (dims[t], dims[s]) {
                return Err(Error::Shape(format!(
                    "arrow {} -> {} needs a {}x{} matrix",
                    q.name(s),
                    q.name(t),
                    dims[t],
                    dims[s]
                )));
            }
            if m.iter().any(|&x| x >= field.order()) {
                return Err(Error::FieldMismatch(format!("entry outside {field}")));
            }
        }
        Ok(Self { field, dims, maps })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<u32>] {
        &self.maps
    }

    /// `g r g^{-1}` for invertible blocks `g` over the same field.
    pub fn act(&self, q: &Quiver, g: &[Matrix<u32>]) -> Result<Self> {
        let f = &self.field;
        let inverses = g
            .iter()
            .enumerate()
            .map(|(x, b)| {
                if b.rows() as i64 != self.dims[x] || !b.is_square() {
                    return Err(Error::Shape(format!("block at `{}`", q.name(x))));
                }
                inverse(f, b).ok_or_else(|| Error::Singular(q.name(x).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(x, y), m)| mat_mul(f, &mat_mul(f, &g[y], m), &inverses[x]))
            .collect();
        Ok(Self {
            field: f.clone(),
            dims: self.dims.clone(),
            maps,
        })
    }
}

fn mat_mul(f: &FiniteField, a: &Matrix<u32>, b: &Matrix<u32>) -> Matrix<u32> {
    Matrix::from_fn(a.rows(), b.cols(), |r, c| {
        (0..a.cols()).fold(0, |acc, k| f.add(acc, f.mul(a[(r, k)], b[(k, c)])))
    })
}

fn inverse(f: &FiniteField, m: &Matrix<u32>) -> Option<Matrix<u32>> {
    let n = m.rows();
    let mut aug: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|c| u32::from(c == r)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, piv);
        let inv = f.inv(aug[col][col])?;
        for x in aug[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col];
                for c in 0..2 * n {
                    let sub = f.mul(factor, aug[col][c]);
                    aug[r][c] = f.sub(aug[r][c], sub);
                }
            }
        }
    }
    Matrix::from_rows(&aug.into_iter().map(|row| row[n..].to_vec()).collect::<Vec<_>>())
}

/// A subspace of `F^d` given by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &FiniteField, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Every `k`-dimensional subspace of `F^d`, each once.
pub fn subspaces(f: &FiniteField, d: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(f, d, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    f: &FiniteField,
    d: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace>,
) {
    if pivots.len() == k {
        // free positions: (row i, column c) with c > pivot_i and c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pivots[i] + 1..d).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let q = f.order() as usize;
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut basis = vec![vec![0u32; d]; k];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for &(i, c) in &free {
                basis[i][c] = (code % q) as u32;
                code /= q;
            }
            out.push(Subspace {
                basis,
                pivots: pivots.clone(),
            });
        }
        return;
    }
    for p in start..d {
        pivots.push(p);
        choose_pivots(f, d, k, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Subspace lists indexed by `(d, k)` for every `k <= d <= max_dim`.
struct SubspaceTable {
    field: FiniteField,
    lists: Vec<Vec<Vec<Subspace>>>,
}

impl SubspaceTable {
    fn new(field: &FiniteField, max_dim: usize) -> Self {
        let lists = (0..=max_dim)
            .map(|d| (0..=d).map(|k| subspaces(field, d, k)).collect())
            .collect();
        Self {
            field: field.clone(),
            lists,
        }
    }

    fn get(&self, d: usize, k: usize) -> &[Subspace] {
        &self.lists[d][k]
    }
}

fn check_dims(r: &FieldRepresentation, a: &[i64]) -> Result<()> {
    if a.len() != r.dims.len() {
        return Err(Error::Length {
            expected: r.dims.len(),
            found: a.len(),
        });
    }
    if !r.dims.iter().zip(a).all(|(n, x)| 0 <= *x && x <= n) {
        return Err(Error::InvalidArgument(format!(
            "{} is not between 0 and {}",
            DimVector::new(a.to_vec()).map(|d| d.to_string()).unwrap_or_default(),
            r.dims
        )));
    }
    Ok(())
}

/// Whether `r` has a subrepresentation of dimension `a` with coordinates in
/// `search_field`.
pub fn grassmannian_nonempty(
    q: &Quiver,
    r: &FieldRepresentation,
    a: &[i64],
    search_field: &FiniteField,
) -> Result<bool> {
    if !search_field.extends(&r.field) {
        return Err(Error::FieldMismatch(format!(
            "{search_field} does not contain {}",
            r.field
        )));
    }
    check_dims(r, a)?;
    let max_dim = r.dims.iter().copied().max().unwrap_or(0) as usize;
    let table = SubspaceTable::new(search_field, max_dim);
    Ok(Search::new(q, &table, &r.dims, &r.maps).run(a))
}

/// Depth-first choice of `S_x` in canonical vertex order; every arrow into
/// `x` comes from an already chosen vertex.
struct Search<'a> {
    table: &'a SubspaceTable,
    order: &'a [usize],
    dims: Vec<usize>,
    incoming: Vec<Vec<(usize, &'a Matrix<u32>)>>,
}

impl<'a> Search<'a> {
    fn new(q: &'a Quiver, table: &'a SubspaceTable, dims: &[i64], maps: &'a [Matrix<u32>]) -> Self {
        let mut incoming = vec![Vec::new(); q.vertex_count()];
        for (&(s, t), m) in q.arrows().iter().zip(maps) {
            incoming[t].push((s, m));
        }
        Self {
            table,
            order: q.topological_order(),
            dims: dims.iter().map(|&d| d as usize).collect(),
            incoming,
        }
    }

    fn run(&self, a: &[i64]) -> bool {
        let mut chosen: Vec<Option<&Subspace>> = vec![None; self.dims.len()];
        self.descend(0, a, &mut chosen)
    }

    fn descend<'s>(&'s self, pos: usize, a: &[i64], chosen: &mut Vec<Option<&'s Subspace>>) -> bool {
        let Some(&x) = self.order.get(pos) else {
            return true;
        };
        let f = &self.table.field;
        let mut images = Vec::new();
        for &(s, m) in &self.incoming[x] {
            for b in &chosen[s].expect("sources are chosen first").basis {
                let image: Vec<u32> = (0..m.rows())
                    .map(|row| (0..m.cols()).fold(0, |acc, c| f.add(acc, f.mul(m[(row, c)], b[c]))))
                    .collect();
                if image.iter().any(|&v| v != 0) {
                    images.push(image);
                }
            }
        }
        for s in self.table.get(self.dims[x], a[x] as usize) {
            if images.iter().all(|u| s.contains(f, u)) {
                chosen[x] = Some(s);
                if self.descend(pos + 1, a, chosen) {
                    return true;
                }
            }
        }
        chosen[x] = None;
        false
    }
}

fn entry_count(q: &Quiver, n: &[i64]) -> usize {
    q.arrows().iter().map(|&(s, t)| (n[s] * n[t]) as usize).sum()
}

fn representation_count(q: &Quiver, n: &[i64], p: u32) -> Result<u64> {
    let entries = entry_count(q, n);
    let count = (p as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if count > FEASIBILITY_LIMIT {
        return Err(Error::Infeasible(format!(
            "{p}^{entries} representations exceed the limit of {FEASIBILITY_LIMIT}"
        )));
    }
    Ok(count as u64)
}

/// The `index`-th representation over `F_p`: base-`p` digits fill the arrow
/// matrices in declaration order, row-major.
fn decode(q: &Quiver, n: &[i64], p: u32, mut index: u64) -> Vec<Matrix<u32>> {
    q.arrows()
        .iter()
        .map(|&(s, t)| {
            Matrix::from_fn(n[t] as usize, n[s] as usize, |_, _| {
                let d = (index % u64::from(p)) as u32;
                index /= u64::from(p);
                d
            })
        })
        .collect()
}

fn fields(base: &FiniteField, extension_degree: u32) -> Result<FiniteField> {
    if base.degree() != 1 {
        return Err(Error::FieldMismatch(format!("{base} is not a prime field")));
    }
    FiniteField::new(base.characteristic(), extension_degree)
}

/// `a -> n` at finite scale: every representation of dimension `n` over
/// `base` has a subrepresentation of dimension `a` over the extension of
/// `base` of the given degree.
pub fn brute_is_sub(
    q: &Quiver,
    a: &[i64],
    n: &[i64],
    base: &FiniteField,
    extension_degree: u32,
) -> Result<bool> {
    q.check_len(a)?;
    q.check_len(n)?;
    let n = DimVector::new(n.to_vec())?;
    DimVector::new(a.to_vec())?;
    if !n.iter().zip(a).all(|(m, x)| x <= m) {
        return Ok(false);
    }
    let search = fields(base, extension_degree)?;
    let count = representation_count(q, &n, base.characteristic())?;
    let table = SubspaceTable::new(&search, n.iter().copied().max().unwrap_or(0) as usize);
    let p = base.characteristic();
    Ok((0..count).into_par_iter().all(|index| {
        let maps = decode(q, &n, p, index);
        Search::new(q, &table, &n, &maps).run(a)
    }))
}

/// Every `a <= n` for which [`brute_is_sub`] holds, in the order of
/// [`boxed_vectors`]. One pass over the representations decides all `a`.
pub fn brute_subdims(
    q: &Quiver,
    n: &[i64],
    base: &FiniteField,
    extension_degree: u32,
) -> Result<Vec<DimVector>> {
    let n = q.dim(n.to_vec())?;
    let search = fields(base, extension_degree)?;
    let count = representation_count(q, &n, base.characteristic())?;
    let table = SubspaceTable::new(&search, n.iter().copied().max().unwrap_or(0) as usize);
    let p = base.characteristic();
    let candidates = boxed_vectors(q, &n);
    const CHUNK: u64 = 4096;
    let failed: Vec<bool> = (0..count.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut failed = vec![false; candidates.len()];
            for index in chunk * CHUNK..((chunk + 1) * CHUNK).min(count) {
                let maps = decode(q, &n, p, index);
                let search = Search::new(q, &table, &n, &maps);
                for (alpha, flag) in candidates.iter().zip(failed.iter_mut()) {
                    if !*flag && !search.run(alpha) {
                        *flag = true;
                    }
                }
            }
            failed
        })
        .reduce(
            || vec![false; candidates.len()],
            |a, b| a.iter().zip(&b).map(|(x, y)| *x || *y).collect(),
        );
    Ok(candidates
        .into_iter()
        .zip(failed)
        .filter(|(_, f)| !f)
        .map(|(a, _)| DimVector::new_unchecked(&a))
        .collect())
}
