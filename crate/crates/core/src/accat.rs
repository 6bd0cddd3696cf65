//! Finite acyclic categories and posets.
//!
//! Objects and morphisms are dense indices. Identities are never stored: a
//! category is its list of non-identity morphisms plus a composition table
//! `comp(first, second) = second ∘ first`, defined exactly on the composable
//! pairs. Posets are the categories with at most one morphism between any
//! ordered pair of objects.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct AcyclicCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl PartialEq for AcyclicCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.composition == other.composition
    }
}

impl Eq for AcyclicCategory {}

/// Outcome of [`AcyclicCategory::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    /// Morphisms whose source equals their target.
    pub loops: Vec<usize>,
    /// Objects along a directed cycle of morphisms, if any.
    pub cycle: Option<Vec<usize>>,
    /// Composition entries on non-composable pairs or with wrong endpoints.
    pub mismatched: Vec<(usize, usize)>,
    /// Composable pairs with no composition entry.
    pub missing: Vec<(usize, usize)>,
    pub non_associative: Vec<(usize, usize, usize)>,
}

impl CategoryReport {
    pub fn is_acyclic(&self) -> bool {
        self.loops.is_empty() && self.cycle.is_none()
    }

    pub fn composition_total(&self) -> bool {
        self.missing.is_empty() && self.mismatched.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.is_acyclic() && self.composition_total() && self.non_associative.is_empty()
    }
}

impl AcyclicCategory {
    /// Builds a category from raw parts, checking only index ranges and that
    /// the composition table has no conflicting entries. Use
    /// [`validate`](Self::validate) for the categorical axioms.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        composition: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        for (i, mor) in morphisms.iter().enumerate() {
            if mor.source >= n || mor.target >= n {
                return Err(Error::Malformed(format!(
                    "morphism {i} has endpoint outside 0..{n}"
                )));
            }
        }
        let mut table = HashMap::new();
        for (first, second, composite) in composition {
            if first >= m || second >= m || composite >= m {
                return Err(Error::Malformed(format!(
                    "composition entry ({first}, {second}, {composite}) outside 0..{m}"
                )));
            }
            if let Some(prev) = table.insert((first, second), composite) {
                if prev != composite {
                    return Err(Error::Malformed(format!(
                        "conflicting composites {prev} and {composite} for ({first}, {second})"
                    )));
                }
            }
        }
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, mor) in morphisms.iter().enumerate() {
            outgoing[mor.source].push(i);
            incoming[mor.target].push(i);
            homs.entry((mor.source, mor.target)).or_default().push(i);
        }
        Ok(AcyclicCategory {
            objects,
            morphisms,
            composition: table,
            outgoing,
            incoming,
            homs,
        })
    }

    /// The poset category of a strict order given as a relation on `0..n`.
    /// Morphisms are numbered by `(source, target)` in lexicographic order.
    /// The relation is not checked; see [`Poset::from_relation`].
    pub fn from_strict_order(labels: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut ups: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            for y in 0..n {
                if x != y && lt(x, y) {
                    index.insert((x, y), morphisms.len());
                    morphisms.push(Morphism {
                        source: x,
                        target: y,
                        label: String::new(),
                    });
                    ups[x].push(y);
                }
            }
        }
        let mut composition = Vec::new();
        for x in 0..n {
            for &y in &ups[x] {
                for &z in &ups[y] {
                    if let Some(&xz) = index.get(&(x, z)) {
                        composition.push((index[&(x, y)], index[&(y, z)], xz));
                    }
                }
            }
        }
        AcyclicCategory::new(labels, morphisms, composition).expect("indices generated in range")
    }

    /// The free category on a finite directed acyclic multigraph: morphisms are
    /// the nonempty directed paths, composition is concatenation.
    pub fn free(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if let Some(&(s, t)) = edges.iter().find(|(s, t)| *s >= n || *t >= n) {
            return Err(Error::Malformed(format!("edge ({s}, {t}) outside 0..{n}")));
        }
        let mut indeg = vec![0usize; n];
        for &(_, t) in edges {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut sorted = 0;
        while let Some(x) = stack.pop() {
            sorted += 1;
            for &(s, t) in edges {
                if s == x {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        if sorted < n {
            return Err(Error::Malformed("graph has a directed cycle".into()));
        }
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
        while !frontier.is_empty() {
            if paths.len() > 1_000_000 {
                return Err(Error::Malformed(
                    "free category has too many morphisms".into(),
                ));
            }
            let mut next = Vec::new();
            for p in &frontier {
                let end = edges[*p.last().unwrap()].1;
                for (e, &(s, _)) in edges.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(e);
                        next.push(q);
                    }
                }
            }
            paths.append(&mut frontier);
            frontier = next;
        }
        let index: HashMap<Vec<usize>, usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let morphisms = paths
            .iter()
            .map(|p| Morphism {
                source: edges[p[0]].0,
                target: edges[*p.last().unwrap()].1,
                label: p
                    .iter()
                    .map(|e| format!("e{e}"))
                    .collect::<Vec<_>>()
                    .join("."),
            })
            .collect::<Vec<_>>();
        let mut composition = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                if morphisms[i].target == morphisms[j].source {
                    let mut pq = p.clone();
                    pq.extend_from_slice(q);
                    composition.push((i, j, index[&pq]));
                }
            }
        }
        AcyclicCategory::new(labels, morphisms, composition)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: usize) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].source
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].target
    }

    /// `second ∘ first`, when defined.
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        self.composition.get(&(first, second)).copied()
    }

    /// Composition entries `(first, second, second ∘ first)`, sorted.
    pub fn composition_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self
            .composition
            .iter()
            .map(|(&(a, b), &c)| (a, b, c))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }

    /// The non-identity morphisms `x → y`.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `x ∥ y`: no morphism in either direction.
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        x != y && self.hom(x, y).is_empty() && self.hom(y, x).is_empty()
    }

    pub fn validate(&self) -> CategoryReport {
        let mut report = CategoryReport {
            loops: (0..self.morphism_count())
                .filter(|&m| self.source(m) == self.target(m))
                .collect(),
            cycle: self.find_cycle(),
            ..Default::default()
        };
        for (first, second, composite) in self.composition_entries() {
            let ok = self.target(first) == self.source(second)
                && self.source(composite) == self.source(first)
                && self.target(composite) == self.target(second);
            if !ok {
                report.mismatched.push((first, second));
            }
        }
        for m1 in 0..self.morphism_count() {
            for &m2 in self.outgoing(self.target(m1)) {
                if self.compose(m1, m2).is_none() {
                    report.missing.push((m1, m2));
                }
            }
        }
        if report.cycle.is_none() && report.loops.is_empty() {
            for m1 in 0..self.morphism_count() {
                for &m2 in self.outgoing(self.target(m1)) {
                    for &m3 in self.outgoing(self.target(m2)) {
                        let left = self.compose(m1, m2).and_then(|a| self.compose(a, m3));
                        let right = self.compose(m2, m3).and_then(|b| self.compose(m1, b));
                        if let (Some(l), Some(r)) = (left, right) {
                            if l != r {
                                report.non_associative.push((m1, m2, m3));
                            }
                        }
                    }
                }
            }
        }
        report
    }

    fn find_cycle(&self) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.object_count();
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut path = vec![root];
            let mut cursor = vec![0usize];
            state[root] = 1;
            while let Some(&x) = path.last() {
                let i = *cursor.last().unwrap();
                if i < self.outgoing[x].len() {
                    *cursor.last_mut().unwrap() += 1;
                    let y = self.target(self.outgoing[x][i]);
                    if y == x {
                        continue;
                    }
                    match state[y] {
                        0 => {
                            state[y] = 1;
                            path.push(y);
                            cursor.push(0);
                        }
                        1 => {
                            let start = path.iter().position(|&p| p == y).unwrap();
                            return Some(path[start..].to_vec());
                        }
                        _ => {}
                    }
                } else {
                    state[x] = 2;
                    path.pop();
                    cursor.pop();
                }
            }
        }
        None
    }

    /// The opposite category: every morphism reversed, composition transposed.
    pub fn opposite(&self) -> AcyclicCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                source: m.target,
                target: m.source,
                label: m.label.clone(),
            })
            .collect();
        let composition = self.composition.iter().map(|(&(a, b), &c)| (b, a, c));
        AcyclicCategory::new(self.objects.clone(), morphisms, composition)
            .expect("same index ranges")
    }

    /// The full subcategory on `keep` (in the given order). Returns the
    /// subcategory with the old-to-new object and morphism index maps.
    pub fn full_subcategory(
        &self,
        keep: &[usize],
    ) -> (AcyclicCategory, Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut object_map = vec![None; self.object_count()];
        for (new, &old) in keep.iter().enumerate() {
            object_map[old] = Some(new);
        }
        let mut morphism_map = vec![None; self.morphism_count()];
        let mut morphisms = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            if let (Some(s), Some(t)) = (object_map[m.source], object_map[m.target]) {
                morphism_map[i] = Some(morphisms.len());
                morphisms.push(Morphism {
                    source: s,
                    target: t,
                    label: m.label.clone(),
                });
            }
        }
        let composition = self
            .composition_entries()
            .into_iter()
            .filter_map(|(a, b, c)| Some((morphism_map[a]?, morphism_map[b]?, morphism_map[c]?)))
            .collect::<Vec<_>>();
        let labels = keep.iter().map(|&x| self.objects[x].clone()).collect();
        let sub = AcyclicCategory::new(labels, morphisms, composition).expect("restricted indices");
        (sub, object_map, morphism_map)
    }

    /// Morphisms that are not composites of two non-identity morphisms. For a
    /// poset these are the cover relations.
    pub fn indecomposables(&self) -> Vec<usize> {
        let composites: HashSet<usize> = self.composition.values().copied().collect();
        (0..self.morphism_count())
            .filter(|m| !composites.contains(m))
            .collect()
    }

    /// DOT rendering of the indecomposable morphisms (the Hasse diagram for
    /// posets).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph category {\n  rankdir=BT;\n");
        for (i, label) in self.objects.iter().enumerate() {
            let shown = if label.is_empty() {
                i.to_string()
            } else {
                label.clone()
            };
            let _ = writeln!(out, "  {i} [label=\"{}\"];", shown.replace('"', "\\\""));
        }
        for m in self.indecomposables() {
            let mor = &self.morphisms[m];
            if mor.label.is_empty() {
                let _ = writeln!(out, "  {} -> {};", mor.source, mor.target);
            } else {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{}\"];",
                    mor.source,
                    mor.target,
                    mor.label.replace('"', "\\\"")
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A poset viewed as an acyclic category with at most one morphism per ordered
/// pair of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    category: AcyclicCategory,
}

impl Poset {
    /// Builds the poset of a strict order on `0..labels.len()`, rejecting
    /// relations that are reflexive or not transitive.
    pub fn from_relation(labels: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let rel: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| lt(x, y)).collect()).collect();
        for x in 0..n {
            if rel[x][x] {
                return Err(Error::Malformed(format!("relation is reflexive at {x}")));
            }
            for y in 0..n {
                if !rel[x][y] {
                    continue;
                }
                for z in 0..n {
                    if rel[y][z] && !rel[x][z] {
                        return Err(Error::Malformed(format!(
                            "relation not transitive: {x}<{y}<{z}"
                        )));
                    }
                }
            }
        }
        Ok(Poset {
            category: AcyclicCategory::from_strict_order(labels, |x, y| rel[x][y]),
        })
    }

    pub fn try_from_category(category: AcyclicCategory) -> Result<Self> {
        for x in 0..category.object_count() {
            for &m in category.outgoing(x) {
                let y = category.target(m);
                if category.hom(x, y).len() > 1 {
                    return Err(Error::ParallelMorphisms(x, y));
                }
            }
        }
        Ok(Poset { category })
    }

    pub fn category(&self) -> &AcyclicCategory {
        &self.category
    }

    pub fn into_category(self) -> AcyclicCategory {
        self.category
    }

    pub fn len(&self) -> usize {
        self.category.object_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn morphism_between(&self, x: usize, y: usize) -> Option<usize> {
        self.category.hom(x, y).first().copied()
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.morphism_between(x, y).is_some()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn opposite(&self) -> Poset {
        Poset {
            category: self.category.opposite(),
        }
    }
}

/// Poset view of `c`, or the first pair of objects with parallel morphisms.
pub fn as_poset(c: &AcyclicCategory) -> Result<Poset> {
    Poset::try_from_category(c.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismImage {
    Morphism(usize),
    /// The morphism collapses onto the identity at this object.
    Identity(usize),
}

/// A functor between acyclic categories, given on objects and non-identity
/// morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACMap {
    pub objects: Vec<usize>,
    pub morphisms: Vec<MorphismImage>,
}

impl ACMap {
    pub fn identity(c: &AcyclicCategory) -> Self {
        ACMap {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count())
                .map(MorphismImage::Morphism)
                .collect(),
        }
    }

    /// Extends an object map on a poset to morphisms. Fails if the object map
    /// is not order-preserving.
    pub fn from_object_map(p: &Poset, objects: Vec<usize>) -> Result<Self> {
        Self::from_object_map_into(p, p, objects)
    }

    pub fn from_object_map_into(
        source: &Poset,
        target: &Poset,
        objects: Vec<usize>,
    ) -> Result<Self> {
        if objects.len() != source.len() || objects.iter().any(|&y| y >= target.len()) {
            return Err(Error::Malformed(
                "object map has wrong length or range".into(),
            ));
        }
        let c = source.category();
        let mut morphisms = Vec::with_capacity(c.morphism_count());
        for (i, m) in c.morphisms().iter().enumerate() {
            let (fs, ft) = (objects[m.source], objects[m.target]);
            let image = if fs == ft {
                MorphismImage::Identity(fs)
            } else {
                MorphismImage::Morphism(target.morphism_between(fs, ft).ok_or_else(|| {
                    Error::Malformed(format!(
                        "map is not order-preserving on morphism {i}: {} < {} but {fs} ≰ {ft}",
                        m.source, m.target
                    ))
                })?)
            };
            morphisms.push(image);
        }
        Ok(ACMap { objects, morphisms })
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, m: usize) -> MorphismImage {
        self.morphisms[m]
    }
}

/// Witnesses of functoriality failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    /// Morphisms whose image does not run between the images of its endpoints.
    pub endpoint_violations: Vec<usize>,
    /// Composable pairs whose composite is not sent to the composite of images.
    pub composition_violations: Vec<(usize, usize)>,
}

impl FunctorReport {
    pub fn is_functor(&self) -> bool {
        self.endpoint_violations.is_empty() && self.composition_violations.is_empty()
    }
}

pub fn check_functor(
    source: &AcyclicCategory,
    target: &AcyclicCategory,
    f: &ACMap,
) -> Result<FunctorReport> {
    if f.objects.len() != source.object_count() || f.morphisms.len() != source.morphism_count() {
        return Err(Error::Malformed(
            "AC-map size does not match its source".into(),
        ));
    }
    let in_range = |img: &MorphismImage| match *img {
        MorphismImage::Morphism(m) => m < target.morphism_count(),
        MorphismImage::Identity(x) => x < target.object_count(),
    };
    if f.objects.iter().any(|&x| x >= target.object_count()) || !f.morphisms.iter().all(in_range) {
        return Err(Error::Malformed("AC-map image outside target".into()));
    }
    let mut report = FunctorReport::default();
    for (i, m) in source.morphisms().iter().enumerate() {
        let (fs, ft) = (f.objects[m.source], f.objects[m.target]);
        let ok = match f.morphisms[i] {
            MorphismImage::Morphism(n) => target.source(n) == fs && target.target(n) == ft,
            MorphismImage::Identity(x) => x == fs && x == ft,
        };
        if !ok {
            report.endpoint_violations.push(i);
        }
    }
    if !report.endpoint_violations.is_empty() {
        return Ok(report);
    }
    for (first, second, composite) in source.composition_entries() {
        let image = match (f.morphisms[first], f.morphisms[second]) {
            (MorphismImage::Identity(_), b) => Some(b),
            (a, MorphismImage::Identity(_)) => Some(a),
            (MorphismImage::Morphism(a), MorphismImage::Morphism(b)) => {
                target.compose(a, b).map(MorphismImage::Morphism)
            }
        };
        if image != Some(f.morphisms[composite]) {
            report.composition_violations.push((first, second));
        }
    }
    Ok(report)
}

/// Checks that `f` is an AC-map (a functor) from `c` to itself.
pub fn check_ac_map(c: &AcyclicCategory, f: &ACMap) -> Result<FunctorReport> {
    check_functor(c, c, f)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureWitnesses {
    pub monotone: Vec<(usize, usize)>,
    pub idempotent: Vec<usize>,
    pub descending: Vec<usize>,
    pub ascending: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub monotone: bool,
    pub idempotent: bool,
    pub descending: bool,
    pub ascending: bool,
    pub witnesses: ClosureWitnesses,
}

impl ClosureReport {
    /// Classifies an object map on a poset.
    pub fn of_object_map(p: &Poset, f: &[usize]) -> Self {
        let n = p.len();
        let mut w = ClosureWitnesses::default();
        for x in 0..n {
            for &m in p.category().outgoing(x) {
                let y = p.category().target(m);
                if !p.leq(f[x], f[y]) {
                    w.monotone.push((x, y));
                }
            }
            if f[f[x]] != f[x] {
                w.idempotent.push(x);
            }
            if !p.leq(f[x], x) {
                w.descending.push(x);
            }
            if !p.leq(x, f[x]) {
                w.ascending.push(x);
            }
        }
        ClosureReport {
            monotone: w.monotone.is_empty(),
            idempotent: w.idempotent.is_empty(),
            descending: w.descending.is_empty(),
            ascending: w.ascending.is_empty(),
            witnesses: w,
        }
    }

    pub fn is_closure_operator(&self) -> bool {
        self.monotone && self.idempotent
    }

    pub fn is_descending_closure(&self) -> bool {
        self.is_closure_operator() && self.descending
    }

    pub fn is_ascending_closure(&self) -> bool {
        self.is_closure_operator() && self.ascending
    }
}

pub fn check_closure_operator(p: &Poset, f: &ACMap) -> Result<ClosureReport> {
    let functor = check_ac_map(p.category(), f)?;
    let mut report = ClosureReport::of_object_map(p, &f.objects);
    if !functor.is_functor() {
        report.monotone = false;
        for m in functor.endpoint_violations {
            let mor = p.category().morphism(m);
            report.witnesses.monotone.push((mor.source, mor.target));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlueSetReport {
    pub holds: bool,
    /// Elements of `B ∩ f(B)`.
    pub overlap: Vec<usize>,
    /// `(x, |M(x,f(x))| + |M(f(x),x)|)` for each `x ∈ B` where the count is not 1.
    pub count_violations: Vec<(usize, usize)>,
}

/// Necessary condition for an AC-map to induce a trisp closure map with blue
/// set `blue`.
pub fn check_blue_set_condition(
    c: &AcyclicCategory,
    f: &ACMap,
    blue: &BTreeSet<usize>,
) -> BlueSetReport {
    let images: BTreeSet<usize> = blue.iter().map(|&x| f.objects[x]).collect();
    let overlap: Vec<usize> = blue.intersection(&images).copied().collect();
    let count_violations: Vec<(usize, usize)> = blue
        .iter()
        .filter_map(|&x| {
            let fx = f.objects[x];
            let count = if fx == x {
                0
            } else {
                c.hom(x, fx).len() + c.hom(fx, x).len()
            };
            (count != 1).then_some((x, count))
        })
        .collect();
    BlueSetReport {
        holds: overlap.is_empty() && count_violations.is_empty(),
        overlap,
        count_violations,
    }
}

/// The object `t` with `|M(x,t)| = 1` for all `x ≠ t` and no outgoing morphisms.
pub fn find_terminal_object(c: &AcyclicCategory) -> Option<usize> {
    let found: Vec<usize> = (0..c.object_count())
        .filter(|&t| {
            c.outgoing(t).is_empty()
                && (0..c.object_count()).all(|x| x == t || c.hom(x, t).len() == 1)
        })
        .collect();
    debug_assert!(
        found.len() <= 1,
        "two terminal objects in an acyclic category"
    );
    found.first().copied()
}

/// Dual of [`find_terminal_object`].
pub fn find_initial_object(c: &AcyclicCategory) -> Option<usize> {
    let found: Vec<usize> = (0..c.object_count())
        .filter(|&t| {
            c.incoming(t).is_empty()
                && (0..c.object_count()).all(|x| x == t || c.hom(t, x).len() == 1)
        })
        .collect();
    debug_assert!(
        found.len() <= 1,
        "two initial objects in an acyclic category"
    );
    found.first().copied()
}

/// Morphism counts per ordered object pair, for reports.
pub fn hom_sizes(c: &AcyclicCategory) -> BTreeMap<(usize, usize), usize> {
    c.homs.iter().map(|(&k, v)| (k, v.len())).collect()
}
