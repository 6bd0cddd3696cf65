//! Regular trisps (delta-complexes) stored as simplex counts per dimension and
//! boundary tables.
//!
//! `boundary[d][s]` lists `∂_0 s, …, ∂_d s` as indices into dimension `d-1`.
//! Vertex tuples are derived from the boundary tables, never stored: vertex
//! `j` of a `d`-simplex is `∂_0^j ∂_{j+1} ⋯ ∂_d σ`, so position 0 holds the
//! minimal vertex.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trisp {
    counts: Vec<usize>,
    // flat, stride d + 1; boundaries[0] is empty
    boundaries: Vec<Vec<usize>>,
}

/// A subtrisp together with the new-to-old simplex index map per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subtrisp {
    pub trisp: Trisp,
    pub inclusion: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialFlag {
    /// Distinct simplices have distinct vertex sets.
    pub is_simplicial: bool,
    /// Simplices are determined by their 1-skeleton, and every vertex tuple
    /// of dimension ≥ 3 whose 2-faces are all present is filled.
    pub is_flag_complex: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TrispReport {
    /// `(d, s, i, j)` with `∂_i ∂_j s ≠ ∂_{j-1} ∂_i s`.
    pub identity_violations: Vec<(usize, usize, usize, usize)>,
    /// `(d, s)` whose vertex tuple repeats a vertex.
    pub regularity_violations: Vec<(usize, usize)>,
    /// Present only for trisps that satisfy the identities and are regular.
    pub flags: Option<SimplicialFlag>,
}

impl TrispReport {
    pub fn is_valid(&self) -> bool {
        self.identity_violations.is_empty()
    }

    pub fn is_regular(&self) -> bool {
        self.is_valid() && self.regularity_violations.is_empty()
    }
}

/// Vertex tuples of every simplex, derived once from the boundary tables.
#[derive(Clone, Debug)]
pub struct VertexTable {
    tuples: Vec<Vec<usize>>,
}

impl VertexTable {
    pub fn tuple(&self, d: usize, s: usize) -> &[usize] {
        &self.tuples[d][s * (d + 1)..(s + 1) * (d + 1)]
    }

    pub fn contains(&self, d: usize, s: usize, v: usize) -> bool {
        self.tuple(d, s).contains(&v)
    }

    pub fn position(&self, d: usize, s: usize, v: usize) -> Option<usize> {
        self.tuple(d, s).iter().position(|&w| w == v)
    }
}

/// For each `(d, s)`, the pairs `(τ, j)` in dimension `d+1` with `∂_j τ = s`.
#[derive(Clone, Debug)]
pub struct CofaceIndex {
    cofaces: Vec<Vec<Vec<(usize, usize)>>>,
}

impl CofaceIndex {
    pub fn of(&self, d: usize, s: usize) -> &[(usize, usize)] {
        self.cofaces.get(d).map(|v| v[s].as_slice()).unwrap_or(&[])
    }
}

/// Outcome of [`trisps_equal_over_vertices`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityReport {
    pub equal: bool,
    /// The search budget ran out before a verdict was reached.
    pub inconclusive: bool,
    pub witness: Option<String>,
    /// Per dimension, the matched simplex of the second trisp.
    #[serde(skip)]
    pub simplex_map: Option<Vec<Vec<usize>>>,
}

impl Trisp {
    /// Builds a trisp from counts and flat boundary tables (`boundaries[d]`
    /// has `counts[d] * (d + 1)` entries). Index ranges are checked; the
    /// simplicial identities are not (see [`validate`](Self::validate)).
    pub fn new(mut counts: Vec<usize>, mut boundaries: Vec<Vec<usize>>) -> Result<Self> {
        if counts.len() != boundaries.len() {
            return Err(Error::Malformed(
                "counts and boundary tables differ in length".into(),
            ));
        }
        while counts.last() == Some(&0) {
            counts.pop();
            boundaries.pop();
        }
        for d in 0..counts.len() {
            let stride = if d == 0 { 0 } else { d + 1 };
            if boundaries[d].len() != counts[d] * stride {
                return Err(Error::Malformed(format!(
                    "dimension {d}: expected {} boundary entries, found {}",
                    counts[d] * stride,
                    boundaries[d].len()
                )));
            }
            if d > 0 {
                if let Some(&bad) = boundaries[d].iter().find(|&&b| b >= counts[d - 1]) {
                    return Err(Error::Malformed(format!(
                        "dimension {d}: boundary index {bad} outside 0..{}",
                        counts[d - 1]
                    )));
                }
            }
        }
        if counts.iter().skip(1).any(|&c| c > 0) && counts.first() == Some(&0) {
            return Err(Error::Malformed("simplices without vertices".into()));
        }
        Ok(Trisp { counts, boundaries })
    }

    /// Builds a trisp from nested boundary lists: `lists[d][s] = [∂_0 s, …]`.
    pub fn from_boundary_lists(counts: Vec<usize>, lists: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut boundaries = Vec::with_capacity(lists.len());
        for (d, list) in lists.into_iter().enumerate() {
            let mut flat = Vec::new();
            for (s, faces) in list.into_iter().enumerate() {
                if d > 0 && faces.len() != d + 1 {
                    return Err(Error::Malformed(format!(
                        "simplex {s} of dimension {d} has {} boundary entries",
                        faces.len()
                    )));
                }
                flat.extend(faces);
            }
            boundaries.push(flat);
        }
        Trisp::new(counts, boundaries)
    }

    /// The simplicial complex generated by vertex sets on `0..n_vertices`.
    /// The given sets are closed downward; simplices of each dimension are
    /// numbered in lexicographic order of their sorted vertex lists, and
    /// vertices keep their indices.
    pub fn from_simplices(n_vertices: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        by_dim[0].extend((0..n_vertices).map(|v| vec![v]));
        for set in sets {
            let mut s = set.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&v) = s.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::Malformed(format!(
                    "vertex {v} outside 0..{n_vertices}"
                )));
            }
            // add with all faces
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| s[i])
                    .collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        let lists: Vec<Vec<Vec<usize>>> = by_dim
            .iter()
            .map(|set| set.iter().cloned().collect())
            .collect();
        let index: Vec<HashMap<&[usize], usize>> = lists
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_slice(), i))
                    .collect()
            })
            .collect();
        let counts = lists.iter().map(Vec::len).collect();
        let mut boundaries = vec![Vec::new()];
        for d in 1..lists.len() {
            let mut flat = Vec::with_capacity(lists[d].len() * (d + 1));
            for s in &lists[d] {
                for i in 0..=d {
                    let mut face = s.clone();
                    face.remove(i);
                    flat.push(index[d - 1][face.as_slice()]);
                }
            }
            boundaries.push(flat);
        }
        Trisp::new(counts, boundaries)
    }

    pub fn empty() -> Self {
        Trisp::default()
    }

    pub fn point() -> Self {
        Trisp {
            counts: vec![1],
            boundaries: vec![Vec::new()],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Top dimension, `None` for the empty trisp.
    pub fn dimension(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `[∂_0 s, …, ∂_d s]`; empty for vertices.
    pub fn faces(&self, d: usize, s: usize) -> &[usize] {
        if d == 0 {
            return &[];
        }
        &self.boundaries[d][s * (d + 1)..(s + 1) * (d + 1)]
    }

    pub fn face(&self, d: usize, s: usize, i: usize) -> usize {
        self.boundaries[d][s * (d + 1) + i]
    }

    pub fn simplices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| (0..c).map(move |s| (d, s)))
    }

    /// Vertex tuple by iterated boundaries.
    pub fn vertex_tuple(&self, d: usize, s: usize) -> Vec<usize> {
        (0..=d)
            .map(|j| {
                let mut cur = s;
                for k in (j + 1..=d).rev() {
                    cur = self.face(k, cur, k);
                }
                for k in (1..=j).rev() {
                    cur = self.face(k, cur, 0);
                }
                cur
            })
            .collect()
    }

    /// Vertex tuples of all simplices. Assumes the simplicial identities.
    pub fn vertex_table(&self) -> VertexTable {
        let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(self.counts.len());
        for d in 0..self.counts.len() {
            let mut flat = Vec::with_capacity(self.counts[d] * (d + 1));
            for s in 0..self.counts[d] {
                if d == 0 {
                    flat.push(s);
                } else {
                    let front = self.face(d, s, d);
                    let back = self.face(d, s, 0);
                    flat.extend_from_slice(&tuples[d - 1][front * d..(front + 1) * d]);
                    let last = tuples[d - 1][back * d + d - 1];
                    flat.push(last);
                }
            }
            tuples.push(flat);
        }
        VertexTable { tuples }
    }

    pub fn coface_index(&self) -> CofaceIndex {
        let mut cofaces: Vec<Vec<Vec<(usize, usize)>>> =
            self.counts.iter().map(|&c| vec![Vec::new(); c]).collect();
        for d in 1..self.counts.len() {
            for t in 0..self.counts[d] {
                for (j, &f) in self.faces(d, t).iter().enumerate() {
                    cofaces[d - 1][f].push((t, j));
                }
            }
        }
        CofaceIndex { cofaces }
    }

    /// All iterated faces of `(d, s)` including itself, sorted by dimension
    /// and index.
    pub fn iterated_faces(&self, d: usize, s: usize) -> Vec<(usize, usize)> {
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut stack = vec![(d, s)];
        while let Some((e, t)) = stack.pop() {
            if seen.insert((e, t)) && e > 0 {
                for &f in self.faces(e, t) {
                    stack.push((e - 1, f));
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn validate(&self) -> TrispReport {
        let mut report = TrispReport::default();
        for d in 2..self.counts.len() {
            for s in 0..self.counts[d] {
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(d - 1, self.face(d, s, j), i);
                        let b = self.face(d - 1, self.face(d, s, i), j - 1);
                        if a != b {
                            report.identity_violations.push((d, s, i, j));
                        }
                    }
                }
            }
        }
        if !report.identity_violations.is_empty() {
            return report;
        }
        let table = self.vertex_table();
        for (d, s) in self.simplices() {
            let t = table.tuple(d, s);
            let distinct: HashSet<&usize> = t.iter().collect();
            if distinct.len() != t.len() {
                report.regularity_violations.push((d, s));
            }
        }
        if report.regularity_violations.is_empty() {
            report.flags = Some(SimplicialFlag {
                is_simplicial: self.is_simplicial_with(&table),
                is_flag_complex: self.is_flag_with(&table),
            });
        }
        report
    }

    /// Errors unless the trisp satisfies the identities and is regular.
    pub fn require_regular(&self) -> Result<VertexTable> {
        let report = self.validate_structure();
        if let Some(&(d, s, i, j)) = report.identity_violations.first() {
            return Err(Error::Malformed(format!(
                "simplicial identity ∂_{i}∂_{j} fails on simplex {s} of dimension {d}"
            )));
        }
        if let Some(&(dim, simplex)) = report.regularity_violations.first() {
            return Err(Error::NotRegular { dim, simplex });
        }
        Ok(self.vertex_table())
    }

    /// Like [`validate`](Self::validate) without the flag computations.
    pub fn validate_structure(&self) -> TrispReport {
        let mut report = TrispReport::default();
        for d in 2..self.counts.len() {
            for s in 0..self.counts[d] {
                for j in 1..=d {
                    for i in 0..j {
                        if self.face(d - 1, self.face(d, s, j), i)
                            != self.face(d - 1, self.face(d, s, i), j - 1)
                        {
                            report.identity_violations.push((d, s, i, j));
                        }
                    }
                }
            }
        }
        if report.identity_violations.is_empty() {
            let table = self.vertex_table();
            for (d, s) in self.simplices() {
                let t = table.tuple(d, s);
                let distinct: HashSet<&usize> = t.iter().collect();
                if distinct.len() != t.len() {
                    report.regularity_violations.push((d, s));
                }
            }
        }
        report
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_simplicial_with(&self.vertex_table())
    }

    fn is_simplicial_with(&self, table: &VertexTable) -> bool {
        (0..self.counts.len()).all(|d| {
            let mut seen = HashSet::new();
            (0..self.counts[d]).all(|s| {
                let mut set = table.tuple(d, s).to_vec();
                set.sort_unstable();
                seen.insert(set)
            })
        })
    }

    /// Edge `(i, j)` (`i < j`) of every simplex, flat per simplex in
    /// lexicographic pair order.
    fn edge_table(&self) -> Vec<Vec<Vec<usize>>> {
        let mut edges: Vec<Vec<Vec<usize>>> = Vec::with_capacity(self.counts.len());
        edges.push(vec![Vec::new(); self.count(0)]);
        for d in 1..self.counts.len() {
            let mut dim_edges = Vec::with_capacity(self.counts[d]);
            for s in 0..self.counts[d] {
                if d == 1 {
                    dim_edges.push(vec![s]);
                    continue;
                }
                let mut e = Vec::with_capacity(d * (d + 1) / 2);
                for i in 0..d {
                    for j in i + 1..=d {
                        let v = if j < d {
                            edges[d - 1][self.face(d, s, d)][pair_index(d - 1, i, j)]
                        } else if i < d - 1 {
                            edges[d - 1][self.face(d, s, d - 1)][pair_index(d - 1, i, d - 1)]
                        } else {
                            edges[d - 1][self.face(d, s, 0)][pair_index(d - 1, d - 2, d - 1)]
                        };
                        e.push(v);
                    }
                }
                dim_edges.push(e);
            }
            edges.push(dim_edges);
        }
        edges
    }

    pub fn is_flag_complex(&self) -> bool {
        self.is_flag_with(&self.vertex_table())
    }

    fn is_flag_with(&self, table: &VertexTable) -> bool {
        let edges = self.edge_table();
        let mut by_skeleton: Vec<HashSet<Vec<usize>>> = Vec::new();
        for d in 0..self.counts.len() {
            let mut set = HashSet::new();
            if d >= 2 {
                for e in &edges[d] {
                    if !set.insert(e.clone()) {
                        return false;
                    }
                }
            }
            by_skeleton.push(set);
        }
        if self.counts.len() < 3 {
            return true;
        }
        // edges out of a vertex, keyed by (source, target)
        let mut out: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for e in 0..self.count(1) {
            let t = table.tuple(1, e);
            out.entry((t[0], t[1])).or_default().push(e);
        }
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); self.count(0)];
        for e in 0..self.count(1) {
            out_of[table.tuple(1, e)[0]].push(e);
        }
        let triangle = |a: usize, b: usize, c: usize| by_skeleton[2].contains(&vec![a, b, c]);
        for d in 3..=self.counts.len() {
            for s in 0..self.count(d - 1) {
                let verts = table.tuple(d - 1, s);
                let es = &edges[d - 1][s];
                let last = verts[d - 1];
                for &e_last in &out_of[last] {
                    let w = table.tuple(1, e_last)[1];
                    if verts.contains(&w) {
                        continue;
                    }
                    // choose e_i : v_i -> w for i < d-1 by backtracking
                    let mut chosen: Vec<usize> = Vec::with_capacity(d - 1);
                    let mut cursor: Vec<usize> = vec![0];
                    let candidates: Vec<&[usize]> = (0..d - 1)
                        .map(|i| out.get(&(verts[i], w)).map(Vec::as_slice).unwrap_or(&[]))
                        .collect();
                    loop {
                        let i = chosen.len();
                        if i == d - 1 {
                            // complete coherent system
                            if d >= self.counts.len() {
                                return false;
                            }
                            let mut full = Vec::with_capacity(d * (d + 1) / 2);
                            for a in 0..d {
                                for b in a + 1..=d {
                                    full.push(if b < d {
                                        es[pair_index(d - 1, a, b)]
                                    } else if a < d - 1 {
                                        chosen[a]
                                    } else {
                                        e_last
                                    });
                                }
                            }
                            if !by_skeleton[d].contains(&full) {
                                return false;
                            }
                            chosen.pop();
                            cursor.pop();
                            if cursor.is_empty() {
                                break;
                            }
                            continue;
                        }
                        let c = cursor[i];
                        if c >= candidates[i].len() {
                            if chosen.is_empty() {
                                break;
                            }
                            chosen.pop();
                            cursor.pop();
                            continue;
                        }
                        cursor[i] += 1;
                        let e_i = candidates[i][c];
                        let ok = triangle(es[pair_index(d - 1, i, d - 1)], e_i, e_last)
                            && (0..i)
                                .all(|h| triangle(es[pair_index(d - 1, h, i)], chosen[h], e_i));
                        if ok {
                            chosen.push(e_i);
                            cursor.push(0);
                        }
                    }
                }
            }
        }
        true
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The subtrisp of simplices whose vertices all lie in `keep`.
    pub fn induced_subtrisp(&self, keep: &[bool]) -> Subtrisp {
        let table = self.vertex_table();
        let mask: Vec<Vec<bool>> = (0..self.counts.len())
            .map(|d| {
                (0..self.counts[d])
                    .map(|s| table.tuple(d, s).iter().all(|&v| keep[v]))
                    .collect()
            })
            .collect();
        self.subtrisp(&mask)
            .expect("vertex-induced sets are closed under faces")
    }

    /// The subtrisp on the marked simplices, which must be closed under faces.
    pub fn subtrisp(&self, keep: &[Vec<bool>]) -> Result<Subtrisp> {
        let mut new_index: Vec<Vec<usize>> = Vec::with_capacity(self.counts.len());
        let mut inclusion = Vec::with_capacity(self.counts.len());
        let mut counts = Vec::new();
        let mut boundaries = Vec::new();
        for d in 0..self.counts.len() {
            let mut idx = vec![usize::MAX; self.counts[d]];
            let mut inc = Vec::new();
            let mut flat = Vec::new();
            for s in 0..self.counts[d] {
                if !keep[d][s] {
                    continue;
                }
                idx[s] = inc.len();
                inc.push(s);
                for &f in self.faces(d, s) {
                    let nf = new_index[d - 1][f];
                    if nf == usize::MAX {
                        return Err(Error::Malformed(format!(
                            "simplex {s} of dimension {d} kept without its face {f}"
                        )));
                    }
                    flat.push(nf);
                }
            }
            counts.push(inc.len());
            boundaries.push(flat);
            new_index.push(idx);
            inclusion.push(inc);
        }
        while inclusion.last().is_some_and(Vec::is_empty) {
            inclusion.pop();
        }
        Ok(Subtrisp {
            trisp: Trisp::new(counts, boundaries)?,
            inclusion,
        })
    }

    /// The same simplices with vertex order reversed: `∂'_i = ∂_{d-i}`. The
    /// nerve of the opposite category is the reversed nerve.
    pub fn reversed(&self) -> Trisp {
        let boundaries = (0..self.counts.len())
            .map(|d| {
                let mut flat = Vec::with_capacity(self.boundaries[d].len());
                for s in 0..self.counts[d] {
                    flat.extend(self.faces(d, s).iter().rev());
                }
                flat
            })
            .collect();
        Trisp {
            counts: self.counts.clone(),
            boundaries,
        }
    }

    /// DOT rendering of the 1-skeleton, edges directed from vertex 0 to 1.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph trisp {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {v};");
        }
        for e in 0..self.count(1) {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{e}\"];",
                self.face(1, e, 1),
                self.face(1, e, 0)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn pair_index(d: usize, i: usize, j: usize) -> usize {
    // position of (i, j) among pairs of 0..=d in lexicographic order
    let n = d + 1;
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Decides whether there is a dimension-wise simplex bijection commuting with
/// all `∂_i` that extends the given vertex bijection `t1 → t2`.
pub fn trisps_equal_over_vertices(t1: &Trisp, t2: &Trisp, vertices: &[usize]) -> EqualityReport {
    trisps_equal_with_budget(t1, t2, vertices, 5_000_000)
}

pub fn trisps_equal_with_budget(
    t1: &Trisp,
    t2: &Trisp,
    vertices: &[usize],
    budget: usize,
) -> EqualityReport {
    let different = |w: String| EqualityReport {
        equal: false,
        inconclusive: false,
        witness: Some(w),
        simplex_map: None,
    };
    if t1.counts != t2.counts {
        return different(format!(
            "simplex counts differ: {:?} vs {:?}",
            t1.counts, t2.counts
        ));
    }
    if vertices.len() != t1.vertex_count() {
        return different("vertex map has the wrong length".into());
    }
    let mut hit = vec![false; t2.vertex_count()];
    for &v in vertices {
        if v >= hit.len() || std::mem::replace(&mut hit[v], true) {
            return different("vertex map is not a bijection".into());
        }
    }
    let dims = t1.counts.len();
    // t2 simplices grouped by boundary tuple
    let groups: Vec<HashMap<&[usize], Vec<usize>>> = (0..dims)
        .map(|d| {
            let mut g: HashMap<&[usize], Vec<usize>> = HashMap::new();
            if d > 0 {
                for s in 0..t2.counts[d] {
                    g.entry(t2.faces(d, s)).or_default().push(s);
                }
            }
            g
        })
        .collect();
    let cof1 = t1.coface_index();
    let mut map: Vec<Vec<usize>> = t1.counts.iter().map(|&c| vec![usize::MAX; c]).collect();
    map[0] = vertices.to_vec();
    let mut used: Vec<Vec<bool>> = t2.counts.iter().map(|&c| vec![false; c]).collect();
    used[0] = vec![true; t2.vertex_count()];
    // faces still unassigned, per t1 simplex
    let mut pending: Vec<Vec<usize>> = (0..dims)
        .map(|d| vec![if d == 0 { 0 } else { d + 1 }; t1.counts[d]])
        .collect();
    let mut demand: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); dims];

    let key_of = |map: &Vec<Vec<usize>>, d: usize, s: usize| -> Vec<usize> {
        t1.faces(d, s).iter().map(|&f| map[d - 1][f]).collect()
    };
    let capacity = |d: usize, key: &[usize]| groups[d].get(key).map_or(0, Vec::len);

    // registers assignment of (d, s); returns false on capacity overflow
    // (the caller must still undo).
    fn touch(
        d: usize,
        s: usize,
        delta: isize,
        cof1: &CofaceIndex,
        pending: &mut [Vec<usize>],
    ) -> Vec<usize> {
        let mut completed = Vec::new();
        for &(t, _) in cof1.of(d, s) {
            if delta < 0 {
                pending[d + 1][t] -= 1;
                if pending[d + 1][t] == 0 {
                    completed.push(t);
                }
            } else {
                if pending[d + 1][t] == 0 {
                    completed.push(t);
                }
                pending[d + 1][t] += 1;
            }
        }
        completed
    }

    // vertices are assigned up front
    let mut overflow = false;
    for v in 0..t1.vertex_count() {
        for t in touch(0, v, -1, &cof1, &mut pending) {
            let key = key_of(&map, 1, t);
            let n = demand[1].entry(key.clone()).or_insert(0);
            *n += 1;
            if *n > capacity(1, &key) {
                overflow = true;
            }
        }
    }
    if overflow {
        return different("edges have no counterpart under the vertex map".into());
    }

    let order: Vec<(usize, usize)> = (1..dims)
        .flat_map(|d| (0..t1.counts[d]).map(move |s| (d, s)))
        .collect();
    let mut cursor: Vec<usize> = vec![0; order.len() + 1];
    let mut pos = 0usize;
    let mut steps = 0usize;
    loop {
        if pos == order.len() {
            return EqualityReport {
                equal: true,
                inconclusive: false,
                witness: None,
                simplex_map: Some(map),
            };
        }
        steps += 1;
        if steps > budget {
            return EqualityReport {
                equal: false,
                inconclusive: true,
                witness: Some("search budget exhausted".into()),
                simplex_map: None,
            };
        }
        let (d, s) = order[pos];
        let key = key_of(&map, d, s);
        let cands: &[usize] = groups[d]
            .get(key.as_slice())
            .map(Vec::as_slice)
            .unwrap_or(&[]);
        let mut placed = false;
        while cursor[pos] < cands.len() {
            let c = cands[cursor[pos]];
            cursor[pos] += 1;
            if used[d][c] {
                continue;
            }
            used[d][c] = true;
            map[d][s] = c;
            let mut ok = true;
            if d + 1 < dims {
                let done = touch(d, s, -1, &cof1, &mut pending);
                for &t in &done {
                    let k = key_of(&map, d + 1, t);
                    let n = demand[d + 1].entry(k.clone()).or_insert(0);
                    *n += 1;
                    if *n > capacity(d + 1, &k) {
                        ok = false;
                    }
                }
                if !ok {
                    for &t in &done {
                        let k = key_of(&map, d + 1, t);
                        *demand[d + 1].get_mut(&k).unwrap() -= 1;
                    }
                    touch(d, s, 1, &cof1, &mut pending);
                }
            }
            if ok {
                placed = true;
                break;
            }
            used[d][c] = false;
            map[d][s] = usize::MAX;
        }
        if placed {
            pos += 1;
            cursor[pos] = 0;
            continue;
        }
        // backtrack
        if pos == 0 {
            return different(format!(
                "simplex {s} of dimension {d} has no consistent counterpart"
            ));
        }
        pos -= 1;
        let (pd, ps) = order[pos];
        if pd + 1 < dims {
            let mut completed: Vec<usize> = cof1
                .of(pd, ps)
                .iter()
                .map(|&(t, _)| t)
                .filter(|&t| pending[pd + 1][t] == 0)
                .collect();
            completed.dedup();
            for &t in &completed {
                let k = key_of(&map, pd + 1, t);
                *demand[pd + 1].get_mut(&k).unwrap() -= 1;
            }
            touch(pd, ps, 1, &cof1, &mut pending);
        }
        used[pd][map[pd][ps]] = false;
        map[pd][ps] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn edge() -> Trisp {
        Trisp::from_simplices(2, &[vec![0, 1]]).unwrap()
    }

    #[test]
    fn point_is_valid() {
        let p = Trisp::point();
        let r = p.validate();
        assert!(r.is_regular());
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn double_filled_triangle_is_regular_not_simplicial() {
        let (t, _) = fixtures::double_filled_triangle();
        let r = t.validate();
        assert!(r.is_regular());
        assert!(!r.flags.unwrap().is_simplicial);
        assert_eq!(t.euler_characteristic(), 2);
    }

    #[test]
    fn loop_edge_is_not_regular() {
        let t = Trisp::from_boundary_lists(vec![1, 1], vec![vec![], vec![vec![0, 0]]]).unwrap();
        let r = t.validate();
        assert!(r.is_valid());
        assert_eq!(r.regularity_violations, vec![(1, 0)]);
        assert!(matches!(
            t.require_regular(),
            Err(Error::NotRegular { dim: 1, simplex: 0 })
        ));
    }

    #[test]
    fn identity_violation_detected() {
        // a 2-simplex whose boundary edges do not meet correctly
        let t = Trisp::from_boundary_lists(
            vec![3, 3, 1],
            vec![
                vec![],
                vec![vec![1, 0], vec![2, 0], vec![2, 1]],
                vec![vec![0, 1, 2]],
            ],
        )
        .unwrap();
        assert!(!t.validate().is_valid());
    }

    #[test]
    fn malformed_index_rejected() {
        let e = Trisp::from_boundary_lists(vec![1, 1], vec![vec![], vec![vec![0, 5]]]);
        assert!(matches!(e, Err(Error::Malformed(_))));
    }

    #[test]
    fn edge_vertex_tuple_follows_boundary_convention() {
        let t = edge();
        // ∂_0 = vertex 1, ∂_1 = vertex 0
        assert_eq!(t.faces(1, 0), &[1, 0]);
        assert_eq!(t.vertex_tuple(1, 0), vec![0, 1]);
    }

    #[test]
    fn vertex_tuples_agree_and_drop_positions() {
        for t in fixtures::trisp_corpus() {
            let table = t.vertex_table();
            for (d, s) in t.simplices() {
                assert_eq!(t.vertex_tuple(d, s), table.tuple(d, s));
                if d == 0 {
                    continue;
                }
                for j in 0..=d {
                    let mut expected = table.tuple(d, s).to_vec();
                    expected.remove(j);
                    assert_eq!(table.tuple(d - 1, t.face(d, s, j)), expected.as_slice());
                }
            }
        }
    }

    #[test]
    fn induced_subtrisps() {
        let tri = Trisp::from_simplices(3, &[vec![0, 1, 2]]).unwrap();
        let all = tri.induced_subtrisp(&[true; 3]);
        assert_eq!(all.trisp, tri);
        assert!(trisps_equal_over_vertices(&all.trisp, &tri, &[0, 1, 2]).equal);
        let none = tri.induced_subtrisp(&[false; 3]);
        assert!(none.trisp.is_empty());
        let ac = tri.induced_subtrisp(&[true, false, true]);
        assert_eq!(ac.trisp.counts(), &[2, 1]);
        assert_eq!(ac.inclusion, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn euler_characteristics() {
        let hollow = Trisp::from_simplices(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(hollow.euler_characteristic(), 0);
        assert_eq!(Trisp::point().euler_characteristic(), 1);
    }

    #[test]
    fn equality_examples() {
        let tri = Trisp::from_simplices(3, &[vec![0, 1, 2]]).unwrap();
        assert!(trisps_equal_over_vertices(&tri, &tri, &[0, 1, 2]).equal);
        let r = trisps_equal_over_vertices(&edge(), &Trisp::point(), &[0, 1]);
        assert!(!r.equal && !r.inconclusive);
        // a vertex map that does not preserve the ordering
        let r = trisps_equal_over_vertices(&edge(), &edge(), &[1, 0]);
        assert!(!r.equal);
    }

    #[test]
    fn equality_resolves_parallel_edges() {
        // two parallel edges a→b and a 2-simplex using the second one
        let t1 = Trisp::from_boundary_lists(
            vec![3, 4, 1],
            vec![
                vec![],
                vec![vec![1, 0], vec![1, 0], vec![2, 1], vec![2, 0]],
                vec![vec![2, 3, 1]],
            ],
        )
        .unwrap();
        // same with the parallel edges listed in the other order
        let t2 = Trisp::from_boundary_lists(
            vec![3, 4, 1],
            vec![
                vec![],
                vec![vec![1, 0], vec![1, 0], vec![2, 1], vec![2, 0]],
                vec![vec![2, 3, 0]],
            ],
        )
        .unwrap();
        assert!(t1.validate().is_regular());
        let r = trisps_equal_over_vertices(&t1, &t2, &[0, 1, 2]);
        assert!(r.equal, "{:?}", r.witness);
        let m = r.simplex_map.unwrap();
        assert_eq!(m[1][1], 0);
        assert_eq!(m[1][0], 1);
    }

    #[test]
    fn reversal_is_valid_and_involutive() {
        for t in fixtures::trisp_corpus() {
            let r = t.reversed();
            assert!(r.validate().is_valid());
            assert_eq!(r.reversed(), t);
        }
    }

    #[test]
    fn pair_index_is_lexicographic() {
        let d = 3;
        let mut k = 0;
        for i in 0..=d {
            for j in i + 1..=d {
                assert_eq!(pair_index(d, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn hollow_triangle_with_composite_is_not_flag_when_doubled() {
        let (t, _) = fixtures::double_filled_triangle();
        assert!(!t.is_flag_complex());
        let tri = Trisp::from_simplices(3, &[vec![0, 1, 2]]).unwrap();
        assert!(tri.is_flag_complex());
    }
}
