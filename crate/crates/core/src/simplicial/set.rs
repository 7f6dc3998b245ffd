use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Underlying data of a truncated simplicial set: finite sets `X_0, …, X_N`
/// with face maps `faces[n][i] : X_n → X_{n-1}` (`faces[0]` empty) and
/// degeneracies `degeneracies[n][j] : X_n → X_{n+1}` (`degeneracies[N]`
/// empty). Identities whose composite would leave dimensions `0..=N` are not
/// part of the data and are not checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialData {
    pub truncation: usize,
    pub sets: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

/// A failed simplicial identity (or malformed map), with witness indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    pub dimension: usize,
    pub i: usize,
    pub j: usize,
    pub element: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails in dimension {} (i={}, j={}) at element {}",
            self.identity, self.dimension, self.i, self.j, self.element
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Invalid(format!("{v} ({} violation(s) total)", self.violations.len()))),
        }
    }

    pub(crate) fn push(&mut self, identity: &str, dimension: usize, i: usize, j: usize, element: usize) {
        self.violations.push(Violation { identity: identity.to_string(), dimension, i, j, element });
    }
}

impl SimplicialData {
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.degeneracies[n][j][x]
    }

    /// `σ₀ⁿ(x)` for a vertex `x`.
    pub fn iterated_s0(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |y, k| self.degeneracy(k, 0, y))
    }

    /// Shape and range checks. Returns early on the first shape problem since
    /// identity checks index through the maps.
    fn check_shapes(&self, report: &mut ValidationReport) -> bool {
        let n_top = self.truncation;
        let ok_len = self.sets.len() == n_top + 1 && self.faces.len() == n_top + 1 && self.degeneracies.len() == n_top + 1;
        if !ok_len {
            report.push("shape: one entry per dimension 0..=truncation", n_top, 0, 0, 0);
            return false;
        }
        for n in 0..=n_top {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != expected_faces {
                report.push("shape: dimension n has n+1 face maps", n, 0, 0, 0);
                return false;
            }
            let expected_degs = if n == n_top { 0 } else { n + 1 };
            if self.degeneracies[n].len() != expected_degs {
                report.push("shape: dimension n < N has n+1 degeneracies", n, 0, 0, 0);
                return false;
            }
            for (i, f) in self.faces[n].iter().enumerate() {
                if f.len() != self.sets[n] {
                    report.push("shape: face map defined on every simplex", n, i, 0, 0);
                    return false;
                }
                if let Some(x) = f.iter().position(|&y| y >= self.sets[n - 1]) {
                    report.push("range: face lands in X_{n-1}", n, i, 0, x);
                    return false;
                }
            }
            for (j, s) in self.degeneracies[n].iter().enumerate() {
                if s.len() != self.sets[n] {
                    report.push("shape: degeneracy defined on every simplex", n, j, 0, 0);
                    return false;
                }
                if let Some(x) = s.iter().position(|&y| y >= self.sets[n + 1]) {
                    report.push("range: degeneracy lands in X_{n+1}", n, j, 0, x);
                    return false;
                }
            }
        }
        true
    }

    /// Every simplicial identity that stays inside the truncation.
    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        if !self.check_shapes(&mut r) {
            return r;
        }
        let top = self.truncation;
        for n in 0..=top {
            for x in 0..self.sets[n] {
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            if self.face(n - 1, i, self.face(n, j, x)) != self.face(n - 1, j - 1, self.face(n, i, x)) {
                                r.push("d_i d_j = d_{j-1} d_i", n, i, j, x);
                            }
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let y = self.degeneracy(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, i, y);
                            let (ok, name) = if i == j || i == j + 1 {
                                (lhs == x, "d_j s_j = d_{j+1} s_j = id")
                            } else if i < j {
                                (lhs == self.degeneracy(n - 1, j - 1, self.face(n, i, x)), "d_i s_j = s_{j-1} d_i")
                            } else {
                                (lhs == self.degeneracy(n - 1, j, self.face(n, i - 1, x)), "d_i s_j = s_j d_{i-1}")
                            };
                            if !ok {
                                r.push(name, n, i, j, x);
                            }
                        }
                    }
                }
                if n + 2 <= top {
                    for j in 0..=n {
                        for i in 0..=j {
                            let lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, x));
                            let rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                            if lhs != rhs {
                                r.push("s_i s_j = s_{j+1} s_i", n, i, j, x);
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Simplices of dimension `n` that are not in the image of a degeneracy.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let mut degenerate = vec![false; self.sets[n]];
        if n > 0 {
            for s in &self.degeneracies[n - 1] {
                for &y in s {
                    degenerate[y] = true;
                }
            }
        }
        (0..self.sets[n]).filter(|&x| !degenerate[x]).collect()
    }
}

/// Simplicial set with a chosen vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedSimplicialSet {
    #[serde(flatten)]
    pub data: SimplicialData,
    pub point: usize,
}

/// Simplicial object in pointed sets: every level carries a basepoint and
/// every face and degeneracy preserves basepoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialPointedSet {
    #[serde(flatten)]
    pub data: SimplicialData,
    pub point: usize,
    pub basepoints: Vec<usize>,
}

impl PointedSimplicialSet {
    pub fn new(data: SimplicialData, point: usize) -> Self {
        PointedSimplicialSet { data, point }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = self.data.validate();
        if r.is_valid() && self.point >= self.data.sets[0] {
            r.push("point lies in X_0", 0, 0, 0, self.point);
        }
        r
    }

    pub fn truncation(&self) -> usize {
        self.data.truncation
    }
}

impl SimplicialPointedSet {
    pub fn validate(&self) -> ValidationReport {
        let mut r = self.data.validate();
        if !r.is_valid() {
            return r;
        }
        let d = &self.data;
        if self.basepoints.len() != d.truncation + 1 {
            r.push("shape: one basepoint per dimension", d.truncation, 0, 0, 0);
            return r;
        }
        for (n, &b) in self.basepoints.iter().enumerate() {
            if b >= d.sets[n] {
                r.push("basepoint lies in X_n", n, 0, 0, b);
                return r;
            }
        }
        if self.point != self.basepoints[0] {
            r.push("point is the basepoint of X_0", 0, 0, 0, self.point);
        }
        for n in 0..=d.truncation {
            let b = self.basepoints[n];
            if n > 0 {
                for i in 0..=n {
                    if d.face(n, i, b) != self.basepoints[n - 1] {
                        r.push("d_i preserves the basepoint", n, i, 0, b);
                    }
                }
            }
            if n < d.truncation {
                for j in 0..=n {
                    if d.degeneracy(n, j, b) != self.basepoints[n + 1] {
                        r.push("s_j preserves the basepoint", n, j, 0, b);
                    }
                }
            }
        }
        r
    }

    pub fn truncation(&self) -> usize {
        self.data.truncation
    }

    /// Forgets the levelwise basepoints, keeping only the vertex.
    pub fn forget(&self) -> PointedSimplicialSet {
        PointedSimplicialSet { data: self.data.clone(), point: self.point }
    }

    pub fn is_basepoint(&self, n: usize, x: usize) -> bool {
        self.basepoints[n] == x
    }
}

/// Lifts a pointed simplicial set to a simplicial pointed set: the basepoint
/// of `X_n` is `σ₀ⁿ(point)`. The simplicial identities force every face and
/// degeneracy to preserve these basepoints.
pub fn basepoint_lift(x: &PointedSimplicialSet) -> Result<SimplicialPointedSet> {
    x.validate().into_result()?;
    let basepoints = (0..=x.data.truncation).map(|n| x.data.iterated_s0(x.point, n)).collect();
    Ok(SimplicialPointedSet { data: x.data.clone(), point: x.point, basepoints })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialData {
        // X_0 = {v}, X_1 = {s0 v, a}
        SimplicialData {
            truncation: 1,
            sets: vec![1, 2],
            faces: vec![vec![], vec![vec![0, 0], vec![0, 0]]],
            degeneracies: vec![vec![vec![0]], vec![]],
        }
    }

    #[test]
    fn circle_is_valid_and_lifts() {
        let x = PointedSimplicialSet::new(circle(), 0);
        assert!(x.validate().is_valid());
        let l = basepoint_lift(&x).unwrap();
        assert_eq!(l.basepoints, vec![0, 0]);
        assert!(l.validate().is_valid());
        assert_eq!(l.forget(), x);
    }

    fn interval() -> SimplicialData {
        // X_0 = {v0, v1}, X_1 = {s0 v0, s0 v1, e}, X_2 = {.., .., s0 e, s1 e}
        SimplicialData {
            truncation: 2,
            sets: vec![2, 3, 4],
            faces: vec![vec![], vec![vec![0, 1, 1], vec![0, 1, 0]], vec![vec![0, 1, 2, 1], vec![0, 1, 2, 2], vec![0, 1, 0, 2]]],
            degeneracies: vec![vec![vec![0, 1]], vec![vec![0, 1, 2], vec![0, 1, 3]], vec![]],
        }
    }

    #[test]
    fn corrupted_face_is_named() {
        let mut d = interval();
        assert!(d.validate().is_valid(), "{:?}", d.validate());
        d.faces[2][2][2] = 1;
        let r = d.validate();
        assert!(r
            .violations
            .iter()
            .any(|v| v.identity == "d_i d_j = d_{j-1} d_i" && (v.dimension, v.i, v.j, v.element) == (2, 0, 2, 2)));
        assert!(r.into_result().is_err());
    }

    #[test]
    fn malformed_shapes_reported() {
        let mut d = circle();
        d.faces[1][0] = vec![0];
        assert!(!d.validate().is_valid());
        let mut d = circle();
        d.faces[1][0] = vec![0, 5];
        assert_eq!(d.validate().violations[0].identity, "range: face lands in X_{n-1}");
    }

    #[test]
    fn lift_rejects_invalid_input() {
        let mut d = interval();
        d.faces[1][0][1] = 0;
        let bad = PointedSimplicialSet::new(d, 0);
        assert!(basepoint_lift(&bad).is_err());
    }

    #[test]
    fn two_point_lifts_differ() {
        let mut d = interval();
        d.truncation = 1;
        d.sets.pop();
        d.faces.pop();
        d.degeneracies.pop();
        d.degeneracies[1].clear();
        d.sets[1] = 2;
        d.faces[1] = vec![vec![0, 1], vec![0, 1]];
        let l0 = basepoint_lift(&PointedSimplicialSet::new(d.clone(), 0)).unwrap();
        let l1 = basepoint_lift(&PointedSimplicialSet::new(d, 1)).unwrap();
        assert_eq!((l0.basepoints.clone(), l1.basepoints.clone()), (vec![0, 0], vec![1, 1]));
        assert!(l0.validate().is_valid() && l1.validate().is_valid());
        assert_ne!(l0, l1);
    }

    #[test]
    fn nondegenerate_simplices() {
        assert_eq!(circle().nondegenerate(1), vec![1]);
        assert_eq!(circle().nondegenerate(0), vec![0]);
    }
}
