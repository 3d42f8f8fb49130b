//! Finite approach spaces.
//!
//! On a finite set every approach distance is of the form
//! `δ(x, A) = min_{a ∈ A} q(x, a)` for the extended quasi-pseudometric
//! `q(x, y) = δ(x, {y})`: (D3) reduces δ to singletons and (D4) forces the
//! triangle inequality on `q`. [`FiniteSpace`] therefore stores only `q`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::value::{ExtValue, INF};

/// A square matrix of extended values, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<ExtValue>,
}

impl Matrix {
    pub fn filled(n: usize, v: ExtValue) -> Self {
        Matrix { n, data: vec![v; n * n] }
    }

    pub fn from_rows(rows: &[Vec<ExtValue>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "ragged matrix");
            data.extend_from_slice(row);
        }
        Matrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ExtValue {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: ExtValue) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<ExtValue>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::filled(self.n, ExtValue::ZERO);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Min-plus closure (Floyd–Warshall) in place.
    pub fn close_min_plus(&mut self) {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                let ik = self.get(i, k);
                if ik.is_inf() {
                    continue;
                }
                for j in 0..n {
                    let via = ik + self.get(k, j);
                    if via < self.get(i, j) {
                        self.set(i, j, via);
                    }
                }
            }
        }
    }

    /// First `(i, j, k)` in lexicographic order with `m[i][k] > m[i][j] + m[j][k]`.
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                if ij.is_inf() {
                    continue;
                }
                for k in 0..n {
                    if self.get(i, k) > ij + self.get(j, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Singleton closure relation of a finite topology: `rel[i][j]` holds iff
/// `x_i ∈ cl{x_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureRelation {
    n: usize,
    rel: Vec<bool>,
}

impl ClosureRelation {
    pub fn new(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut rel = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRow { point: i.to_string(), len: row.len(), expected: n });
            }
            rel.extend_from_slice(row);
        }
        Ok(ClosureRelation { n, rel })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x_i ∈ cl{x_j}`.
    pub fn in_closure(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.rel.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    /// Reflexivity and transitivity, reporting the first failure.
    pub fn check_preorder(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.in_closure(i, i) {
                return Err(Error::NotAPreorder(format!("point {i} is not in its own closure")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.in_closure(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.in_closure(j, k) && !self.in_closure(i, k) {
                        return Err(Error::NotAPreorder(format!(
                            "{i} ∈ cl{{{j}}} and {j} ∈ cl{{{k}}} but {i} ∉ cl{{{k}}}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of an arbitrary set: the union of singleton closures.
    pub fn closure(&self, set: PointSet) -> PointSet {
        (0..self.n)
            .filter(|&i| set.iter().any(|j| self.in_closure(i, j)))
            .collect()
    }
}

/// A validated finite extended quasi-pseudometric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    q: Matrix,
}

/// Checks the quasi-pseudometric axioms and builds the space.
pub fn validate(points: Vec<String>, q: Vec<Vec<ExtValue>>) -> Result<FiniteSpace> {
    FiniteSpace::new(points, q)
}

impl FiniteSpace {
    pub fn new(points: Vec<String>, q: Vec<Vec<ExtValue>>) -> Result<Self> {
        let n = points.len();
        if n == 0 || n > MAX_POINTS {
            return Err(Error::TooManyPoints(n));
        }
        if q.len() != n {
            return Err(Error::NotSquare { rows: q.len(), points: n });
        }
        for (row, name) in q.iter().zip(&points) {
            if row.len() != n {
                return Err(Error::RaggedRow { point: name.clone(), len: row.len(), expected: n });
            }
        }
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicatePoint(p.clone()));
            }
        }
        Self::from_matrix(points, Matrix::from_rows(&q))
    }

    pub fn from_matrix(points: Vec<String>, q: Matrix) -> Result<Self> {
        assert_eq!(points.len(), q.size());
        for (i, p) in points.iter().enumerate() {
            if !q.get(i, i).is_zero() {
                return Err(Error::NonzeroDiagonal { point: p.clone() });
            }
        }
        if let Some((i, j, k)) = q.triangle_violation() {
            return Err(Error::TriangleViolation {
                i: points[i].clone(),
                j: points[j].clone(),
                k: points[k].clone(),
            });
        }
        Ok(FiniteSpace { points, q })
    }

    /// Points named `0, 1, …, n-1`.
    pub fn with_default_names(q: Vec<Vec<ExtValue>>) -> Result<Self> {
        let names = (0..q.len()).map(|i| i.to_string()).collect();
        Self::new(names, q)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn names_of(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    #[inline]
    pub fn q(&self, i: usize, j: usize) -> ExtValue {
        self.q.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn is_symmetric(&self) -> bool {
        self.q.is_symmetric()
    }

    /// The dual space `q⁻(x, y) = q(y, x)`.
    pub fn transpose(&self) -> FiniteSpace {
        FiniteSpace { points: self.points.clone(), q: self.q.transpose() }
    }

    /// `δ(x, A) = min_{a ∈ A} q(x, a)`, `∞` for empty `A`.
    pub fn distance(&self, x: usize, set: PointSet) -> ExtValue {
        set.iter().map(|a| self.q(x, a)).min().unwrap_or(INF)
    }

    /// Name-based [`FiniteSpace::distance`].
    pub fn distance_named<S: AsRef<str>>(&self, x: &str, set: &[S]) -> Result<ExtValue> {
        let x = self.index_of(x)?;
        Ok(self.distance(x, self.set_of(set)?))
    }

    /// `x ↦ δ(x, A)` for every point.
    pub fn distance_fn(&self, set: PointSet) -> Vec<ExtValue> {
        (0..self.len()).map(|x| self.distance(x, set)).collect()
    }

    /// `A^(ε) = {x | δ(x, A) ≤ ε}`.
    pub fn enlargement(&self, set: PointSet, eps: ExtValue) -> PointSet {
        (0..self.len()).filter(|&x| self.distance(x, set) <= eps).collect()
    }

    /// Closure in the underlying topology, `A^(0)`.
    pub fn closure(&self, set: PointSet) -> PointSet {
        self.enlargement(set, ExtValue::ZERO)
    }

    /// `s(x, y) = min(q(x, y), q(y, x))`.
    pub fn symmetrization(&self) -> Matrix {
        let n = self.len();
        let mut s = Matrix::filled(n, ExtValue::ZERO);
        for i in 0..n {
            for j in 0..n {
                s.set(i, j, self.q(i, j).min(self.q(j, i)));
            }
        }
        s
    }

    /// Largest metric below the symmetrization: its min-plus closure.
    /// Every contraction into the Euclidean line is 1-Lipschitz for it.
    pub fn path_closure(&self) -> Matrix {
        let mut d = self.symmetrization();
        d.close_min_plus();
        d
    }

    /// Induced subspace on `ys`, keeping the ambient point order.
    pub fn subspace(&self, ys: PointSet) -> Result<FiniteSpace> {
        if ys.is_empty() {
            return Err(Error::EmptySubspace);
        }
        let idx: Vec<usize> = ys.iter().collect();
        let k = idx.len();
        let mut q = Matrix::filled(k, ExtValue::ZERO);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                q.set(a, b, self.q(i, j));
            }
        }
        let points = idx.iter().map(|&i| self.points[i].clone()).collect();
        Ok(FiniteSpace { points, q })
    }

    /// The space of a finite topology: `q(x, y) = 0` if `x ∈ cl{y}`, else `∞`.
    pub fn from_topology(points: Vec<String>, c: &ClosureRelation) -> Result<FiniteSpace> {
        if points.len() != c.size() {
            return Err(Error::NotSquare { rows: c.size(), points: points.len() });
        }
        c.check_preorder()?;
        let q = c
            .rows()
            .into_iter()
            .map(|row| row.into_iter().map(|b| if b { ExtValue::ZERO } else { INF }).collect())
            .collect();
        FiniteSpace::new(points, q)
    }

    /// Underlying topology: `x_i ∈ cl{x_j} ⟺ q(x_i, x_j) = 0`.
    pub fn coreflection(&self) -> ClosureRelation {
        let n = self.len();
        let rel = (0..n * n).map(|ij| self.q(ij / n, ij % n).is_zero()).collect();
        ClosureRelation { n, rel }
    }

    /// Whether δ takes only the values 0 and ∞.
    pub fn is_topological(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.q(i, j).is_zero() || self.q(i, j).is_inf()))
    }

    /// Distinct finite positive entries of `q`, ascending. Every finite
    /// positive value of δ is one of them.
    pub fn positive_values(&self) -> Vec<ExtValue> {
        let n = self.len();
        let mut vals: Vec<ExtValue> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.q(i, j))
            .filter(|v| v.is_finite() && !v.is_zero())
            .collect();
        vals.sort();
        vals.dedup();
        vals
    }
}
