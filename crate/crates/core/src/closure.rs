//! Trisp closure maps and the collapses they certify.
//!
//! A closure map splits the vertices into blue and red and sends every blue
//! vertex to a red one. In each simplex with a blue vertex, the extreme blue
//! vertex `b` (first or last in the vertex tuple, per [`Convention`]) decides:
//! either `φ(b)` is already a vertex, or the simplex has exactly one coface
//! obtained by inserting `φ(b)`. Pairing each simplex with that coface (or,
//! when `φ(b)` is present, with the face missing it) gives an acyclic
//! matching, and removing the pairs top-down is an elementary collapse onto
//! the red part `T_R`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::accat::{
    check_closure_operator, find_initial_object, find_terminal_object, ACMap, AcyclicCategory,
    Poset,
};
use crate::error::{Error, Result};
use crate::trisp::{Subtrisp, Trisp, VertexTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Min,
    Max,
}

impl Convention {
    pub fn swapped(self) -> Convention {
        match self {
            Convention::Min => Convention::Max,
            Convention::Max => Convention::Min,
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "minimal" => Ok(Convention::Min),
            "max" | "maximal" => Ok(Convention::Max),
            _ => Err(Error::Malformed(format!("unknown convention {s:?}"))),
        }
    }
}

/// Blue/red vertex partition with `φ: B → R`. `image[v]` is `Some(φ(v))` for
/// blue `v` and `None` for red `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrispClosureMap {
    image: Vec<Option<usize>>,
    convention: Convention,
}

impl TrispClosureMap {
    pub fn from_image(image: Vec<Option<usize>>, convention: Convention) -> Result<Self> {
        for (v, &img) in image.iter().enumerate() {
            if let Some(r) = img {
                if r >= image.len() {
                    return Err(Error::Malformed(format!("φ({v}) = {r} is not a vertex")));
                }
                if image[r].is_some() {
                    return Err(Error::Malformed(format!("φ({v}) = {r} is not red")));
                }
            }
        }
        Ok(TrispClosureMap { image, convention })
    }

    /// From explicit blue and red sets, which must partition `0..vertex_count`.
    pub fn new(
        vertex_count: usize,
        blue: &[usize],
        red: &[usize],
        map: &BTreeMap<usize, usize>,
        convention: Convention,
    ) -> Result<Self> {
        let mut colour: Vec<Option<bool>> = vec![None; vertex_count];
        for (&v, is_blue) in blue
            .iter()
            .map(|v| (v, true))
            .chain(red.iter().map(|v| (v, false)))
        {
            match colour.get_mut(v) {
                None => return Err(Error::Malformed(format!("vertex {v} out of range"))),
                Some(Some(_)) => return Err(Error::Malformed(format!("vertex {v} listed twice"))),
                Some(slot) => *slot = Some(is_blue),
            }
        }
        if let Some(v) = colour.iter().position(Option::is_none) {
            return Err(Error::Malformed(format!(
                "vertex {v} is neither blue nor red"
            )));
        }
        let mut image = vec![None; vertex_count];
        for &b in blue {
            let r = *map
                .get(&b)
                .ok_or_else(|| Error::Malformed(format!("blue vertex {b} has no image")))?;
            image[b] = Some(r);
        }
        if let Some(&k) = map.keys().find(|k| colour.get(**k) != Some(&Some(true))) {
            return Err(Error::Malformed(format!(
                "map given on non-blue vertex {k}"
            )));
        }
        TrispClosureMap::from_image(image, convention)
    }

    /// All vertices red.
    pub fn all_red(vertex_count: usize, convention: Convention) -> Self {
        TrispClosureMap {
            image: vec![None; vertex_count],
            convention,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.image.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    pub fn map(&self, v: usize) -> Option<usize> {
        self.image[v]
    }

    pub fn is_blue(&self, v: usize) -> bool {
        self.image[v].is_some()
    }

    pub fn blue(&self) -> Vec<usize> {
        (0..self.image.len()).filter(|&v| self.is_blue(v)).collect()
    }

    pub fn red(&self) -> Vec<usize> {
        (0..self.image.len())
            .filter(|&v| !self.is_blue(v))
            .collect()
    }

    pub fn red_mask(&self) -> Vec<bool> {
        self.image.iter().map(Option::is_none).collect()
    }

    /// The extreme blue vertex of a vertex tuple, if any.
    pub fn extreme_blue(&self, tuple: &[usize]) -> Option<usize> {
        match self.convention {
            Convention::Min => tuple.iter().copied().find(|&v| self.is_blue(v)),
            Convention::Max => tuple.iter().rev().copied().find(|&v| self.is_blue(v)),
        }
    }
}

/// A simplex where the closure-map condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    pub dim: usize,
    pub simplex: usize,
    pub vertices: Vec<usize>,
    pub blue: usize,
    pub target: usize,
    /// The `(τ, j)` found; empty or with two or more entries.
    pub extensions: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub holds: bool,
    /// Simplices with at least one blue vertex.
    pub checked: usize,
    /// Of those, simplices already containing `φ(b)`.
    pub containing: usize,
    pub failures: Vec<VerifyFailure>,
}

fn check_sizes(t: &Trisp, c: &TrispClosureMap) -> Result<VertexTable> {
    if c.vertex_count() != t.vertex_count() {
        return Err(Error::Malformed(format!(
            "closure map has {} vertices, trisp has {}",
            c.vertex_count(),
            t.vertex_count()
        )));
    }
    t.require_regular()
}

/// Checks the closure-map condition on every simplex. Fails for non-regular
/// trisps.
pub fn verify_trisp_closure_map(t: &Trisp, c: &TrispClosureMap) -> Result<VerifyReport> {
    let table = check_sizes(t, c)?;
    let cof = t.coface_index();
    let mut report = VerifyReport::default();
    for (d, s) in t.simplices() {
        let tuple = table.tuple(d, s);
        let Some(b) = c.extreme_blue(tuple) else {
            continue;
        };
        report.checked += 1;
        let target = c.map(b).unwrap();
        if tuple.contains(&target) {
            report.containing += 1;
            continue;
        }
        let extensions: Vec<(usize, usize)> = cof
            .of(d, s)
            .iter()
            .copied()
            .filter(|&(tau, j)| table.tuple(d + 1, tau)[j] == target)
            .collect();
        if extensions.len() != 1 {
            report.failures.push(VerifyFailure {
                dim: d,
                simplex: s,
                vertices: tuple.to_vec(),
                blue: b,
                target,
                extensions,
            });
        }
    }
    report.holds = report.failures.is_empty();
    Ok(report)
}

/// The trisp closure map on `Δ(P)` induced by a one-sided closure operator:
/// red vertices are the fixed points, descending operators use the minimal
/// convention and ascending ones the maximal convention.
pub fn induced_trisp_closure_map(p: &Poset, f: &ACMap) -> Result<TrispClosureMap> {
    let report = check_closure_operator(p, f)?;
    let convention = if report.is_descending_closure() {
        Convention::Min
    } else if report.is_ascending_closure() {
        Convention::Max
    } else {
        return Err(Error::NotClosureOperator(format!(
            "map is not a descending or ascending closure operator: {:?}",
            report.witnesses
        )));
    };
    Ok(candidate_closure_map(f, convention))
}

/// The closure-map candidate of an idempotent object map, without checks.
pub fn candidate_closure_map(f: &ACMap, convention: Convention) -> TrispClosureMap {
    let image = (0..f.objects.len())
        .map(|x| (f.objects[x] != x).then_some(f.objects[x]))
        .collect();
    TrispClosureMap { image, convention }
}

/// Pairs `(σ, τ)` with `σ = ∂_j τ`, plus the simplices left unmatched.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// `((d, σ), τ)` with `τ` of dimension `d + 1`.
    pub pairs: Vec<((usize, usize), usize)>,
    pub unmatched: Vec<(usize, usize)>,
}

impl Matching {
    /// For each simplex, the index of its pair, if matched.
    pub fn pair_table(&self, t: &Trisp) -> Vec<Vec<Option<usize>>> {
        let mut table: Vec<Vec<Option<usize>>> =
            t.counts().iter().map(|&c| vec![None; c]).collect();
        for (k, &((d, s), tau)) in self.pairs.iter().enumerate() {
            table[d][s] = Some(k);
            table[d + 1][tau] = Some(k);
        }
        table
    }
}

/// The matching of a verified closure map.
pub fn closure_matching(t: &Trisp, c: &TrispClosureMap) -> Result<Matching> {
    let report = verify_trisp_closure_map(t, c)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::NotClosureMap(format!(
            "simplex {:?} with blue vertex {} has {} extensions by {}",
            f.vertices,
            f.blue,
            f.extensions.len(),
            f.target
        )));
    }
    let table = t.vertex_table();
    let cof = t.coface_index();
    let mut matching = Matching::default();
    let mut partner: Vec<Vec<Option<(usize, usize)>>> =
        t.counts().iter().map(|&n| vec![None; n]).collect();
    for (d, s) in t.simplices() {
        let tuple = table.tuple(d, s);
        let Some(b) = c.extreme_blue(tuple) else {
            matching.unmatched.push((d, s));
            continue;
        };
        let target = c.map(b).unwrap();
        if tuple.contains(&target) {
            continue;
        }
        let (tau, _) = cof
            .of(d, s)
            .iter()
            .copied()
            .find(|&(tau, j)| table.tuple(d + 1, tau)[j] == target)
            .ok_or_else(|| Error::Internal("verified simplex lost its extension".into()))?;
        if partner[d + 1][tau].is_some() {
            return Err(Error::Internal(format!(
                "simplex {tau} of dimension {} matched twice",
                d + 1
            )));
        }
        partner[d][s] = Some((d + 1, tau));
        partner[d + 1][tau] = Some((d, s));
        matching.pairs.push(((d, s), tau));
    }
    // simplices containing φ(b) must be matched down to the face without it
    for (d, s) in t.simplices() {
        let tuple = table.tuple(d, s);
        let Some(b) = c.extreme_blue(tuple) else {
            continue;
        };
        let target = c.map(b).unwrap();
        if let Some(pos) = tuple.iter().position(|&v| v == target) {
            let face = t.face(d, s, pos);
            if partner[d][s] != Some((d - 1, face)) {
                return Err(Error::Internal(format!(
                    "simplex {tuple:?} is not matched with its face without {target}"
                )));
            }
        }
    }
    Ok(matching)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    /// Pair indices in an order compatible with the modified Hasse digraph.
    pub order: Vec<usize>,
    /// A closed alternating path of matched simplices, if one exists.
    pub cycle: Option<Vec<(usize, usize)>>,
}

/// Acyclicity of the matching: the Hasse digraph with matched edges pointing
/// up and all other face relations pointing down has no directed cycle
/// through matched simplices.
pub fn check_matching_acyclic(t: &Trisp, m: &Matching) -> AcyclicityReport {
    let offsets: Vec<usize> = t
        .counts()
        .iter()
        .scan(0, |acc, &c| {
            let o = *acc;
            *acc += c;
            Some(o)
        })
        .collect();
    let id = |d: usize, s: usize| offsets[d] + s;
    let total = t.total_simplices();
    let pair_of = m.pair_table(t);
    let mut node_of: Vec<(usize, usize)> = vec![(0, 0); total];
    for (d, s) in t.simplices() {
        node_of[id(d, s)] = (d, s);
    }
    let matched = |d: usize, s: usize| pair_of[d][s].is_some();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut indeg = vec![0usize; total];
    for (d, tau) in t.simplices() {
        if d == 0 || !matched(d, tau) {
            continue;
        }
        for &sigma in t.faces(d, tau) {
            if !matched(d - 1, sigma) {
                continue;
            }
            let up = pair_of[d - 1][sigma] == pair_of[d][tau]
                && m.pairs[pair_of[d][tau].unwrap()].1 == tau;
            let (from, to) = if up {
                (id(d - 1, sigma), id(d, tau))
            } else {
                (id(d, tau), id(d - 1, sigma))
            };
            out[from].push(to);
            indeg[to] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..total)
        .filter(|&v| indeg[v] == 0 && matched(node_of[v].0, node_of[v].1))
        .collect();
    let mut head = 0;
    let mut seen_pair = vec![false; m.pairs.len()];
    let mut order = Vec::with_capacity(m.pairs.len());
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let (d, s) = node_of[v];
        let k = pair_of[d][s].unwrap();
        if !std::mem::replace(&mut seen_pair[k], true) {
            order.push(k);
        }
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    let matched_count = 2 * m.pairs.len();
    if queue.len() == matched_count {
        return AcyclicityReport {
            acyclic: true,
            order,
            cycle: None,
        };
    }
    // every remaining node has a remaining predecessor; walk backwards
    let remaining: HashSet<usize> = (0..total).filter(|&v| indeg[v] > 0).collect();
    let mut pred: Vec<Option<usize>> = vec![None; total];
    for &v in &remaining {
        for &w in &out[v] {
            if remaining.contains(&w) {
                pred[w] = Some(v);
            }
        }
    }
    let start = *remaining.iter().min().unwrap();
    let mut walk = vec![start];
    let mut pos: std::collections::HashMap<usize, usize> =
        std::collections::HashMap::from([(start, 0)]);
    let mut cur = start;
    let cycle = loop {
        cur = pred[cur].expect("remaining nodes have predecessors");
        if let Some(&p) = pos.get(&cur) {
            let mut c: Vec<(usize, usize)> = walk[p..].iter().rev().map(|&v| node_of[v]).collect();
            c.rotate_right(1);
            break c;
        }
        pos.insert(cur, walk.len());
        walk.push(cur);
    };
    AcyclicityReport {
        acyclic: false,
        order,
        cycle: Some(cycle),
    }
}

/// Removal of the free face `face` together with its only coface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub dim: usize,
    pub face: usize,
    pub coface: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseCertificate {
    pub matching: Matching,
    pub order: Vec<usize>,
    pub steps: Vec<CollapseStep>,
    pub euler_characteristic: i64,
    pub final_counts: Vec<usize>,
    #[serde(skip)]
    pub final_trisp: Subtrisp,
}

struct CollapseState<'a> {
    t: &'a Trisp,
    present: Vec<Vec<bool>>,
    live_cofaces: Vec<Vec<usize>>,
    counts: Vec<usize>,
}

impl<'a> CollapseState<'a> {
    fn new(t: &'a Trisp) -> Self {
        let cof = t.coface_index();
        CollapseState {
            t,
            present: t.counts().iter().map(|&c| vec![true; c]).collect(),
            live_cofaces: t
                .counts()
                .iter()
                .enumerate()
                .map(|(d, &c)| (0..c).map(|s| cof.of(d, s).len()).collect())
                .collect(),
            counts: t.counts().to_vec(),
        }
    }

    fn is_free_pair(&self, step: CollapseStep) -> bool {
        let CollapseStep {
            dim: d,
            face,
            coface,
        } = step;
        d + 1 < self.present.len()
            && face < self.present[d].len()
            && coface < self.present[d + 1].len()
            && self.present[d][face]
            && self.present[d + 1][coface]
            && self.live_cofaces[d + 1][coface] == 0
            && self.live_cofaces[d][face] == 1
            && self.t.faces(d + 1, coface).contains(&face)
    }

    fn remove(&mut self, d: usize, s: usize) {
        self.present[d][s] = false;
        self.counts[d] -= 1;
        if d > 0 {
            for &f in self.t.faces(d, s) {
                self.live_cofaces[d - 1][f] -= 1;
            }
        }
    }

    fn restore(&mut self, d: usize, s: usize) {
        self.present[d][s] = true;
        self.counts[d] += 1;
        if d > 0 {
            for &f in self.t.faces(d, s) {
                self.live_cofaces[d - 1][f] += 1;
            }
        }
    }

    fn apply(&mut self, step: CollapseStep) {
        self.remove(step.dim + 1, step.coface);
        self.remove(step.dim, step.face);
    }

    fn undo(&mut self, step: CollapseStep) {
        self.restore(step.dim, step.face);
        self.restore(step.dim + 1, step.coface);
    }

    fn euler(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Executes an acyclic matching as a sequence of elementary collapses, taking
/// the highest-dimensional free pair first. Every step is checked for
/// freeness and for the Euler characteristic.
pub fn collapse(t: &Trisp, m: &Matching) -> Result<CollapseCertificate> {
    let acyclicity = check_matching_acyclic(t, m);
    if !acyclicity.acyclic {
        return Err(Error::Internal(format!(
            "matching has a cycle through {:?}",
            acyclicity.cycle.unwrap_or_default()
        )));
    }
    let pair_of = m.pair_table(t);
    let mut state = CollapseState::new(t);
    let chi = state.euler();
    let step_of = |k: usize| {
        let ((d, s), tau) = m.pairs[k];
        CollapseStep {
            dim: d,
            face: s,
            coface: tau,
        }
    };
    let key = |k: usize| {
        let ((d, s), _) = m.pairs[k];
        (std::cmp::Reverse(d), s)
    };
    let mut ready: BTreeSet<((std::cmp::Reverse<usize>, usize), usize)> = BTreeSet::new();
    for k in 0..m.pairs.len() {
        if state.is_free_pair(step_of(k)) {
            ready.insert((key(k), k));
        }
    }
    let mut done = vec![false; m.pairs.len()];
    let mut steps = Vec::with_capacity(m.pairs.len());
    while let Some(entry) = ready.pop_first() {
        let k = entry.1;
        let step = step_of(k);
        if done[k] || !state.is_free_pair(step) {
            continue;
        }
        state.apply(step);
        done[k] = true;
        steps.push(step);
        if state.euler() != chi {
            return Err(Error::Internal(
                "Euler characteristic changed during a collapse".into(),
            ));
        }
        // removal can free the pairs of faces of the removed simplices
        let mut touched: Vec<(usize, usize)> = Vec::new();
        for &(d, s) in &[(step.dim + 1, step.coface), (step.dim, step.face)] {
            if d > 0 {
                touched.extend(t.faces(d, s).iter().map(|&f| (d - 1, f)));
            }
        }
        for (d, f) in touched {
            if let Some(j) = pair_of[d][f] {
                if !done[j] && state.is_free_pair(step_of(j)) {
                    ready.insert((key(j), j));
                }
            }
        }
    }
    if steps.len() != m.pairs.len() {
        return Err(Error::Internal(format!(
            "collapse stalled after {} of {} pairs",
            steps.len(),
            m.pairs.len()
        )));
    }
    let final_trisp = t.subtrisp(&state.present)?;
    Ok(CollapseCertificate {
        matching: m.clone(),
        order: acyclicity.order,
        steps,
        euler_characteristic: chi,
        final_counts: final_trisp.trisp.counts().to_vec(),
        final_trisp,
    })
}

/// Verify, match and collapse in one go, checking that the result is the
/// subtrisp induced by the red vertices.
pub fn certify(t: &Trisp, c: &TrispClosureMap) -> Result<CollapseCertificate> {
    let m = closure_matching(t, c)?;
    let cert = collapse(t, &m)?;
    let red = t.induced_subtrisp(&c.red_mask());
    if cert.final_trisp != red {
        return Err(Error::Internal(
            "collapse did not end at the red subtrisp".into(),
        ));
    }
    Ok(cert)
}

/// Replays a step list from scratch, checking that each step is an
/// elementary collapse. Returns the surviving simplices.
pub fn replay_collapse(t: &Trisp, steps: &[CollapseStep]) -> Result<Subtrisp> {
    let mut state = CollapseState::new(t);
    let chi = state.euler();
    for (i, &step) in steps.iter().enumerate() {
        if !state.is_free_pair(step) {
            return Err(Error::Malformed(format!(
                "step {i} {step:?} is not an elementary collapse"
            )));
        }
        state.apply(step);
        debug_assert_eq!(state.euler(), chi);
    }
    t.subtrisp(&state.present)
}

/// Looks for a sequence of elementary collapses down to a single vertex,
/// depth-first with memoised dead ends. Returns `Ok(None)` if none exists and
/// an error if `budget` states were explored without a verdict.
pub fn collapse_to_point_search(t: &Trisp, budget: usize) -> Result<Option<Vec<CollapseStep>>> {
    if t.euler_characteristic() != 1 {
        return Ok(None);
    }
    let mut state = CollapseState::new(t);
    let mut dead: HashSet<Vec<u64>> = HashSet::new();
    let mut steps = Vec::new();
    let mut explored = 0usize;
    let found = search(&mut state, &mut dead, &mut steps, &mut explored, budget)?;
    Ok(found.then_some(steps))
}

fn fingerprint(state: &CollapseState) -> Vec<u64> {
    let mut bits = Vec::new();
    let mut word = 0u64;
    let mut n = 0;
    for row in &state.present {
        for &p in row {
            if p {
                word |= 1 << n;
            }
            n += 1;
            if n == 64 {
                bits.push(word);
                word = 0;
                n = 0;
            }
        }
    }
    bits.push(word);
    bits
}

fn free_pairs(state: &CollapseState) -> Vec<CollapseStep> {
    let t = state.t;
    let mut out = Vec::new();
    for d in (0..state.present.len().saturating_sub(1)).rev() {
        for s in 0..state.present[d].len() {
            if !state.present[d][s] || state.live_cofaces[d][s] != 1 {
                continue;
            }
            for tau in 0..state.present[d + 1].len() {
                let step = CollapseStep {
                    dim: d,
                    face: s,
                    coface: tau,
                };
                if state.present[d + 1][tau]
                    && t.faces(d + 1, tau).contains(&s)
                    && state.is_free_pair(step)
                {
                    out.push(step);
                }
            }
        }
    }
    out
}

fn search(
    state: &mut CollapseState,
    dead: &mut HashSet<Vec<u64>>,
    steps: &mut Vec<CollapseStep>,
    explored: &mut usize,
    budget: usize,
) -> Result<bool> {
    if state.counts.iter().sum::<usize>() == 1 {
        return Ok(true);
    }
    let key = fingerprint(state);
    if dead.contains(&key) {
        return Ok(false);
    }
    *explored += 1;
    if *explored > budget {
        return Err(Error::Internal(format!(
            "collapse search exceeded {budget} states"
        )));
    }
    for step in free_pairs(state) {
        state.apply(step);
        steps.push(step);
        if search(state, dead, steps, explored, budget)? {
            return Ok(true);
        }
        steps.pop();
        state.undo(step);
    }
    dead.insert(key);
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Apex {
    Terminal,
    Initial,
}

/// The cone closure map on `Δ(C)` towards a terminal object (maximal
/// convention) or from an initial object (minimal convention): every other
/// vertex is blue and maps to the apex.
pub fn cone_closure_map(c: &AcyclicCategory, apex: Apex) -> Result<(usize, TrispClosureMap)> {
    let (t, convention) = match apex {
        Apex::Terminal => (find_terminal_object(c), Convention::Max),
        Apex::Initial => (find_initial_object(c), Convention::Min),
    };
    let t = t.ok_or(Error::NoTerminalObject)?;
    let image = (0..c.object_count())
        .map(|x| (x != t).then_some(t))
        .collect();
    Ok((t, TrispClosureMap { image, convention }))
}
