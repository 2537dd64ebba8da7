//! Acyclic quivers: parsing, canonical topological order, the Euler form and
//! the lattice maps it induces.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix};
use crate::vector::{DimVector, LatticeVector, Weight};

/// A finite acyclic quiver. Arrows may repeat; the repetition count is the
/// arrow multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
    /// canonical position -> vertex index
    order: Vec<usize>,
    /// vertex index -> canonical position
    position: Vec<usize>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Builds a quiver from vertex names and arrows given by name.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownVertex(s.as_ref().to_string()))
        };
        let arrows = arrows
            .iter()
            .map(|(s, t)| Ok((lookup(s)?, lookup(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(names, arrows)
    }

    /// Builds a quiver from names and arrows given by vertex index.
    pub fn from_indices(names: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let k = names.len();
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= k || t >= k) {
            return Err(Error::UnknownVertex(format!("#{}", s.max(t))));
        }
        let order = kahn(k, &arrows).map_err(|cycle| {
            Error::Cycle(cycle.into_iter().map(|i| names[i].clone()).collect())
        })?;
        let mut position = vec![0; k];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        Ok(Self {
            names,
            arrows,
            order,
            position,
        })
    }

    /// Parses the line-based quiver format:
    ///
    /// ```text
    /// # comment
    /// vertices: u v w
    /// arrow: u v
    /// arrow: v w
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Option<(usize, Vec<String>)> = None;
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax {
                line: line_no,
                message,
            };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(format!("expected `key: values`, got `{line}`")))?;
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = fields.iter().find(|f| !valid_name(f)) {
                return Err(syntax(format!("invalid vertex name `{bad}`")));
            }
            match key.trim() {
                "vertices" => {
                    if vertices.is_some() {
                        return Err(syntax("more than one `vertices:` line".into()));
                    }
                    if !arrows.is_empty() {
                        return Err(syntax("`vertices:` must precede arrows".into()));
                    }
                    if fields.is_empty() {
                        return Err(syntax("no vertices declared".into()));
                    }
                    vertices = Some((line_no, fields.iter().map(|s| s.to_string()).collect()));
                }
                "arrow" => {
                    if vertices.is_none() {
                        return Err(syntax("arrow before `vertices:`".into()));
                    }
                    if fields.len() != 2 {
                        return Err(syntax(format!(
                            "an arrow needs a source and a target, got {} names",
                            fields.len()
                        )));
                    }
                    arrows.push((fields[0].to_string(), fields[1].to_string()));
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let (_, names) = vertices.ok_or(Error::Syntax {
            line: 0,
            message: "missing `vertices:` line".into(),
        })?;
        Self::new(&names, &arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Arrows as `(source, target)` vertex indices, in declaration order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Vertices in canonical topological order (Kahn's algorithm, ties
    /// broken by declaration order).
    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    pub fn topological_names(&self) -> Vec<&str> {
        self.order.iter().map(|&v| self.name(v)).collect()
    }

    /// Canonical position of a vertex.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Number of arrows `from -> to`.
    pub fn multiplicity(&self, from: usize, to: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (from, to)).count()
    }

    /// Vertices without incoming arrows.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.arrows.iter().all(|&(_, t)| t != v))
            .collect()
    }

    pub fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.vertex_count() {
            return Err(Error::Length {
                expected: self.vertex_count(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn dim(&self, entries: Vec<i64>) -> Result<DimVector> {
        self.check_len(&entries)?;
        DimVector::new(entries)
    }

    /// `<a, b> = sum_x a_x b_x - sum_{x -> y} a_x b_y`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.euler_unchecked(a, b))
    }

    pub(crate) fn euler_unchecked(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum();
        diag - off
    }

    /// The opposite quiver: same vertices, every arrow reversed, arrow order kept.
    pub fn reverse(&self) -> Quiver {
        let arrows = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        Quiver::from_indices(self.names.clone(), arrows).expect("reversal of an acyclic quiver")
    }

    /// `M` with `M(e_i) = sum_j m_ij e_j`, in canonical order.
    pub fn multiplicity_matrix(&self) -> IntMatrix {
        let k = self.vertex_count();
        let mut m = Matrix::zeros(k, k);
        for &(s, t) in &self.arrows {
            m[(self.position[t], self.position[s])] += 1;
        }
        m
    }

    /// Number of directed paths `paths[i][j]` from vertex `i` to vertex `j`
    /// (declaration indices), counting the empty path at each vertex.
    pub fn path_counts(&self) -> Vec<Vec<BigInt>> {
        let k = self.vertex_count();
        let mut paths = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            paths[i][i] = BigInt::one();
            // targets in canonical order, so every predecessor is finished
            for &j in &self.order[self.position[i] + 1..] {
                let mut acc = BigInt::zero();
                for &(s, t) in &self.arrows {
                    if t == j {
                        acc += &paths[i][s];
                    }
                }
                paths[i][j] = acc;
            }
        }
        paths
    }

    /// `P = (I - M)^{-1}` in canonical order; entry `(j, i)` counts paths
    /// from the `i`-th to the `j`-th vertex.
    pub fn path_matrix(&self) -> IntMatrix {
        let paths = self.path_counts();
        let k = self.vertex_count();
        Matrix::from_fn(k, k, |r, c| paths[self.order[c]][self.order[r]].clone())
    }

    /// `L1(a)`, characterised by `<L1(a), xi> = euler(a, xi)`.
    pub fn l1_apply(&self, a: &[i64]) -> Result<Weight> {
        self.check_len(a)?;
        let mut s = a.to_vec();
        for &(src, tgt) in &self.arrows {
            s[tgt] -= a[src];
        }
        Ok(Weight::new(s))
    }

    /// `L2(b)`, characterised by `<L2(b), xi> = euler(xi, b)`.
    pub fn l2_apply(&self, b: &[i64]) -> Result<Weight> {
        self.check_len(b)?;
        let mut s = b.to_vec();
        for &(src, tgt) in &self.arrows {
            s[src] -= b[tgt];
        }
        Ok(Weight::new(s))
    }

    /// `L1^{-1}(sigma) = P Iso(sigma)`: `A_k = sum_i p_ik sigma_i`.
    pub fn l1_inverse(&self, sigma: &[i64]) -> Result<LatticeVector> {
        self.check_len(sigma)?;
        let paths = self.path_counts();
        let k = self.vertex_count();
        let a = (0..k)
            .map(|target| {
                let total: BigInt = (0..k).map(|i| &paths[i][target] * sigma[i]).sum();
                total.to_i64().ok_or(Error::Overflow("L1 inverse"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeVector::new(a))
    }

    /// Drops every vertex with `n_x = 0` together with its arrows.
    pub fn restrict_support(&self, n: &DimVector, sigma: &[i64]) -> Result<Support> {
        self.check_len(n)?;
        self.check_len(sigma)?;
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| n[v] > 0).collect();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|&&(s, t)| n[s] > 0 && n[t] > 0)
            .map(|&(s, t)| (new_index[s], new_index[t]))
            .collect();
        let names = kept.iter().map(|&v| self.names[v].clone()).collect();
        let quiver = Quiver::from_indices(names, arrows)?;
        Ok(Support {
            quiver,
            n: DimVector::new(kept.iter().map(|&v| n[v]).collect())?,
            sigma: Weight::new(kept.iter().map(|&v| sigma[v]).collect()),
            kept,
        })
    }
}

/// Result of removing the vertices outside the support of a dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub quiver: Quiver,
    pub n: DimVector,
    pub sigma: Weight,
    /// Original indices of the surviving vertices.
    pub kept: Vec<usize>,
}

impl Support {
    /// Every vertex was removed (`n = 0`).
    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.names.join(" "))?;
        for &(s, t) in &self.arrows {
            writeln!(f, "arrow: {} {}", self.names[s], self.names[t])?;
        }
        Ok(())
    }
}

/// Kahn's algorithm, always taking the ready vertex declared first.
/// On failure returns the vertices of one oriented cycle.
fn kahn(k: usize, arrows: &[(usize, usize)]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let mut indegree = vec![0usize; k];
    for &(_, t) in arrows {
        indegree[t] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..k).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    if order.len() == k {
        return Ok(order);
    }
    // Every leftover vertex has a leftover predecessor; walk backwards
    // until a vertex repeats.
    let start = (0..k).find(|&v| indegree[v] > 0).expect("leftover vertex");
    let mut seen = vec![usize::MAX; k];
    let mut walk = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = walk.len();
        walk.push(v);
        v = arrows
            .iter()
            .find(|&&(s, t)| t == v && indegree[s] > 0)
            .map(|&(s, _)| s)
            .expect("leftover predecessor");
    }
    let mut cycle: Vec<usize> = walk[seen[v]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::parse("vertices: u v\narrow: u v").unwrap()
    }

    fn kronecker() -> Quiver {
        Quiver::parse("vertices: u v\narrow: u v\narrow: u v").unwrap()
    }

    #[test]
    fn parse_examples() {
        let q = a2();
        assert_eq!(q.names(), ["u", "v"]);
        assert_eq!(q.arrows(), [(0, 1)]);
        assert_eq!(kronecker().multiplicity(0, 1), 2);
        assert!(matches!(
            Quiver::parse("vertices: u\narrow: u u"),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Quiver::parse("vertices: u u"),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            Quiver::parse("vertices: u\narrow: u v"),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            Quiver::parse("# header\n\nvertices: u\nedge: u u"),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            Quiver::parse("vertices: u 9x"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            Quiver::parse("vertices: a b\nvertices: c"),
            Err(Error::Syntax { line: 2, .. })
        ));
        match Quiver::parse("vertices: a b c\narrow: a b\narrow: b c\narrow: c b") {
            Err(Error::Cycle(c)) => assert_eq!(c, ["c", "b", "c"]),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn topological_order_examples() {
        assert_eq!(a2().topological_names(), ["u", "v"]);
        let a3 = Quiver::parse("vertices: w v u\narrow: u v\narrow: v w").unwrap();
        assert_eq!(a3.topological_names(), ["u", "v", "w"]);
        let iso = Quiver::parse("vertices: a b").unwrap();
        assert_eq!(iso.topological_names(), ["a", "b"]);
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(a2().euler_form(&[1, 1], &[1, 1]).unwrap(), 1);
        assert_eq!(kronecker().euler_form(&[1, 0], &[0, 1]).unwrap(), -2);
        assert_eq!(kronecker().euler_form(&[0, 0], &[3, -4]).unwrap(), 0);
        assert!(matches!(
            a2().euler_form(&[1], &[1, 1]),
            Err(Error::Length { .. })
        ));
    }

    #[test]
    fn reverse_is_an_involution() {
        let q = Quiver::parse("vertices: a b c\narrow: a b\narrow: c b\narrow: a c").unwrap();
        let r = q.reverse();
        assert_eq!(r.arrows(), [(1, 0), (1, 2), (2, 0)]);
        assert_eq!(r.reverse(), q);
        assert_eq!(a2().reverse().arrows(), [(1, 0)]);
    }

    #[test]
    fn path_matrix_examples() {
        let big = |rows: &[&[i64]]| {
            Matrix::from_rows(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        assert_eq!(a2().path_matrix(), big(&[&[1, 0], &[1, 1]]));
        let empty = Quiver::parse("vertices: a b c").unwrap();
        assert_eq!(empty.path_matrix(), Matrix::identity(3));
        assert_eq!(empty.multiplicity_matrix(), Matrix::zeros(3, 3));
        let q = Quiver::parse(
            "vertices: x1 x2 x3\narrow: x1 x2\narrow: x1 x2\narrow: x1 x3\narrow: x2 x3\narrow: x2 x3\narrow: x2 x3",
        )
        .unwrap();
        let p = q.path_matrix();
        assert_eq!(p[(2, 0)], BigInt::from(3 * 2 + 1));
        let i_minus_m = &IntMatrix::identity(3) - &q.multiplicity_matrix();
        assert_eq!(&i_minus_m * &p, Matrix::identity(3));
    }

    #[test]
    fn lattice_maps() {
        assert_eq!(a2().l1_apply(&[1, 0]).unwrap().to_vec(), [1, -1]);
        assert_eq!(kronecker().l2_apply(&[1, 1]).unwrap().to_vec(), [-1, 1]);
        assert!(a2().l1_apply(&[0, 0]).unwrap().is_zero());
        assert_eq!(a2().l1_inverse(&[1, -1]).unwrap().to_vec(), [1, 0]);
        assert_eq!(kronecker().l1_inverse(&[1, -1]).unwrap().to_vec(), [1, 1]);
        assert!(kronecker().l1_inverse(&[0, 0]).unwrap().is_zero());
    }

    #[test]
    fn restrict_support_examples() {
        let a3 = Quiver::parse("vertices: u v w\narrow: u v\narrow: v w").unwrap();
        let s = a3
            .restrict_support(&DimVector::new(vec![1, 0, 1]).unwrap(), &[1, 5, -1])
            .unwrap();
        assert_eq!(s.quiver.names(), ["u", "w"]);
        assert!(s.quiver.arrows().is_empty());
        assert_eq!(s.n.to_vec(), [1, 1]);
        assert_eq!(s.sigma.to_vec(), [1, -1]);
        let full = a3
            .restrict_support(&DimVector::new(vec![1, 2, 1]).unwrap(), &[1, 0, -1])
            .unwrap();
        assert_eq!(full.quiver, a3);
        let none = a3
            .restrict_support(&DimVector::zero(3), &[0, 0, 0])
            .unwrap();
        assert!(none.is_empty());
    }
}
