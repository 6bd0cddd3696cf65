//! Complexes of disconnected graphs.
//!
//! `DG_n` has the edges of `K_n` as vertices and the edge sets of
//! disconnected graphs on `n` labelled vertices as simplices. Its face poset
//! carries an `S_n`-action and the ascending closure operator sending a graph
//! to the disjoint union of complete graphs on its components; the image of
//! that operator is the poset of nontrivial set partitions. The two pipelines
//! here combine these into collapse certificates for the quotients by `S_n`.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::accat::{find_terminal_object, ACMap, AcyclicCategory, Poset};
use crate::closure::{
    certify, collapse_to_point_search, cone_closure_map, induced_trisp_closure_map,
    replay_collapse, verify_trisp_closure_map, Apex, CollapseStep,
};
use crate::equivariant::{
    check_class_compatibility, check_image_subtrisp, image_quotient, push_closure_map,
    quotient_poset_closure_map,
};
use crate::error::{Error, Result};
use crate::nerve::{nerve, Nerve};
use crate::symmetry::{
    check_category_automorphism, check_condition_r, check_horizontal, induced_trisp_action,
    poset_automorphism, quotient_category, quotient_trisp, Automorphism, EquivariantNerve,
    GroupAction,
};
use crate::trisp::{trisps_equal_over_vertices, Trisp};
use crate::unionfind::UnionFind;

/// `DG_n` as a simplicial trisp. Vertex `e` is the `e`-th pair of
/// `{0,…,n-1}` in lexicographic order; simplices of each dimension are
/// ordered lexicographically by their sorted edge lists.
#[derive(Clone, Debug)]
pub struct GraphComplex {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Edge bitmask of every simplex, per dimension.
    pub masks: Vec<Vec<u32>>,
    pub trisp: Trisp,
    index: HashMap<u32, (usize, usize)>,
}

fn components(n: usize, edges: &[(usize, usize)], mask: u32) -> UnionFind {
    let mut uf = UnionFind::new(n);
    for (e, &(a, b)) in edges.iter().enumerate() {
        if mask >> e & 1 == 1 {
            uf.union(a, b);
        }
    }
    uf
}

fn is_connected(n: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    let mut uf = components(n, edges, mask);
    let root = uf.find(0);
    (1..n).all(|v| uf.find(v) == root)
}

fn mask_edges(mask: u32) -> Vec<usize> {
    (0..32).filter(|e| mask >> e & 1 == 1).collect()
}

pub fn build_dgn(n: usize) -> Result<GraphComplex> {
    if !(3..=6).contains(&n) {
        return Err(Error::Malformed(format!("n = {n} is outside 3..=6")));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let m = edges.len();
    let mut by_dim: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1u32 << m) {
        if is_connected(n, &edges, mask) {
            continue;
        }
        let d = mask.count_ones() as usize - 1;
        while by_dim.len() <= d {
            by_dim.push(Vec::new());
        }
        by_dim[d].push(mask);
    }
    for list in &mut by_dim {
        list.sort_by_cached_key(|&mask| mask_edges(mask));
    }
    let index: HashMap<u32, (usize, usize)> = by_dim
        .iter()
        .enumerate()
        .flat_map(|(d, list)| {
            list.iter()
                .enumerate()
                .map(move |(s, &mask)| (mask, (d, s)))
        })
        .collect();
    let mut boundaries = vec![Vec::new()];
    for (d, list) in by_dim.iter().enumerate().skip(1) {
        let mut flat = Vec::with_capacity(list.len() * (d + 1));
        for &mask in list {
            for e in mask_edges(mask) {
                let face = index.get(&(mask & !(1 << e))).ok_or_else(|| {
                    Error::Internal("a subgraph of a disconnected graph is connected".into())
                })?;
                flat.push(face.1);
            }
        }
        boundaries.push(flat);
    }
    let counts = by_dim.iter().map(Vec::len).collect();
    Ok(GraphComplex {
        n,
        edges,
        trisp: Trisp::new(counts, boundaries)?,
        masks: by_dim,
        index,
    })
}

impl GraphComplex {
    pub fn simplex_of_mask(&self, mask: u32) -> Option<(usize, usize)> {
        self.index.get(&mask).copied()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .position(|&e| e == (a, b))
            .expect("valid pair")
    }

    /// Edge labels such as `12` with vertices numbered from 1.
    pub fn edge_label(&self, e: usize) -> String {
        let (a, b) = self.edges[e];
        format!("{}{}", a + 1, b + 1)
    }

    pub fn mask_label(&self, mask: u32) -> String {
        mask_edges(mask)
            .into_iter()
            .map(|e| self.edge_label(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The edge set of the disjoint union of complete graphs on the
    /// components of `mask`.
    pub fn transitive_closure(&self, mask: u32) -> u32 {
        let mut uf = components(self.n, &self.edges, mask);
        let mut out = 0;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if uf.find(a) == uf.find(b) {
                out |= 1 << e;
            }
        }
        out
    }

    /// Image of a mask under a vertex permutation.
    pub fn permute_mask(&self, perm: &[usize], mask: u32) -> u32 {
        let mut out = 0;
        for e in mask_edges(mask) {
            let (a, b) = self.edges[e];
            out |= 1 << self.edge_index(perm[a], perm[b]);
        }
        out
    }
}

/// The poset of nonempty simplices of a simplicial trisp under inclusion.
/// Object `k` is simplex `simplices[k]`, ordered by dimension then index.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: Poset,
    pub simplices: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl FacePoset {
    pub fn object_of(&self, d: usize, s: usize) -> usize {
        self.offsets[d] + s
    }
}

pub fn face_poset(k: &Trisp) -> Result<FacePoset> {
    if !k.is_simplicial() {
        return Err(Error::Malformed(
            "face posets need a simplicial complex".into(),
        ));
    }
    let simplices: Vec<(usize, usize)> = k.simplices().collect();
    let mut offsets = Vec::with_capacity(k.counts().len());
    let mut acc = 0;
    for &c in k.counts() {
        offsets.push(acc);
        acc += c;
    }
    let below: Vec<std::collections::HashSet<usize>> = simplices
        .iter()
        .map(|&(d, s)| {
            k.iterated_faces(d, s)
                .into_iter()
                .filter(|&f| f != (d, s))
                .map(|(e, f)| offsets[e] + f)
                .collect()
        })
        .collect();
    let labels = (0..simplices.len()).map(|x| x.to_string()).collect();
    let category = AcyclicCategory::from_strict_order(labels, |x, y| below[y].contains(&x));
    Ok(FacePoset {
        poset: Poset::try_from_category(category)?,
        simplices,
        offsets,
    })
}

/// `bd(K)`, the nerve of the face poset.
pub fn barycentric(k: &Trisp) -> Result<Nerve> {
    nerve(face_poset(k)?.poset.category())
}

/// Set partitions of `{0,…,n-1}` other than the discrete and the one-block
/// partition, as restricted growth strings. A morphism `π → ρ` means `ρ` is
/// strictly finer than `π`.
#[derive(Clone, Debug)]
pub struct PartitionPoset {
    pub n: usize,
    pub poset: Poset,
    pub partitions: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut rename: HashMap<usize, usize> = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = rename.len();
            *rename.entry(l).or_insert(next)
        })
        .collect()
}

fn finer_or_equal(fine: &[usize], coarse: &[usize]) -> bool {
    let n = fine.len();
    (0..n).all(|i| (i + 1..n).all(|j| fine[i] != fine[j] || coarse[i] == coarse[j]))
}

pub fn partition_poset(n: usize) -> Result<PartitionPoset> {
    if !(3..=8).contains(&n) {
        return Err(Error::Malformed(format!("n = {n} is outside 3..=8")));
    }
    let mut partitions = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        if blocks != 1 && blocks != n {
            partitions.push(rgs.clone());
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                break;
            }
            let cap = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
        if i == 0 {
            break;
        }
    }
    let labels = partitions.iter().map(|p| partition_label(p)).collect();
    let category = AcyclicCategory::from_strict_order(labels, |x, y| {
        x != y && finer_or_equal(&partitions[y], &partitions[x])
    });
    let index = partitions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    Ok(PartitionPoset {
        n,
        poset: Poset::try_from_category(category)?,
        partitions,
        index,
    })
}

/// Blocks joined by `|`, elements numbered from 1, e.g. `12|3|4`.
pub fn partition_label(rgs: &[usize]) -> String {
    let blocks = rgs.iter().max().map_or(0, |m| m + 1);
    (0..blocks)
        .map(|b| {
            rgs.iter()
                .enumerate()
                .filter(|&(_, &l)| l == b)
                .map(|(i, _)| (i + 1).to_string())
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("|")
}

impl PartitionPoset {
    pub fn index_of(&self, rgs: &[usize]) -> Option<usize> {
        self.index.get(&canonical(rgs)).copied()
    }

    /// Block sizes in decreasing order.
    pub fn number_type(&self, k: usize) -> Vec<usize> {
        let p = &self.partitions[k];
        let blocks = p.iter().max().unwrap() + 1;
        let mut sizes: Vec<usize> = (0..blocks)
            .map(|b| p.iter().filter(|&&l| l == b).count())
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn permute(&self, perm: &[usize], k: usize) -> usize {
        let p = &self.partitions[k];
        let mut labels = vec![0; self.n];
        for (i, &l) in p.iter().enumerate() {
            labels[perm[i]] = l;
        }
        self.index[&canonical(&labels)]
    }
}

fn type_label(sizes: &[usize]) -> String {
    sizes
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

/// `S_n` acting on the graph vertices, with its induced actions. Element `k`
/// of every action comes from `permutations[k]`. Permuting vertices does not
/// respect the vertex order of `DG_n`, so `on_complex` only permutes simplices
/// as sets; the order-respecting action lives on the face poset.
#[derive(Clone, Debug)]
pub struct SnAction {
    pub permutations: Vec<Vec<usize>>,
    pub on_complex: GroupAction,
    pub on_faces: GroupAction,
    pub on_partitions: GroupAction,
}

/// Everything built from `n`: `DG_n`, its face poset, the closure operator,
/// the partition poset with the correspondence to the operator's image, and
/// the `S_n` actions.
#[derive(Clone, Debug)]
pub struct Dgn {
    pub complex: GraphComplex,
    pub faces: FacePoset,
    pub closure: ACMap,
    pub partitions: PartitionPoset,
    /// Partition of each fixed point of the closure operator.
    pub partition_of: HashMap<usize, usize>,
    pub sn: SnAction,
}

impl Dgn {
    pub fn build(n: usize) -> Result<Dgn> {
        let complex = build_dgn(n)?;
        let faces = face_poset(&complex.trisp)?;
        let closure = transitive_closure_operator(&complex, &faces)?;
        let partitions = partition_poset(n)?;
        let partition_of = image_correspondence(&complex, &faces, &closure, &partitions)?;
        let sn = sn_action(&complex, &faces, &partitions)?;
        Ok(Dgn {
            complex,
            faces,
            closure,
            partitions,
            partition_of,
            sn,
        })
    }

    pub fn mask_of_object(&self, x: usize) -> u32 {
        let (d, s) = self.faces.simplices[x];
        self.complex.masks[d][s]
    }

    pub fn object_of_mask(&self, mask: u32) -> Option<usize> {
        let (d, s) = self.complex.simplex_of_mask(mask)?;
        Some(self.faces.object_of(d, s))
    }
}

pub fn transitive_closure_operator(g: &GraphComplex, fp: &FacePoset) -> Result<ACMap> {
    let objects = fp
        .simplices
        .iter()
        .map(|&(d, s)| {
            let closed = g.transitive_closure(g.masks[d][s]);
            let (e, t) = g.simplex_of_mask(closed).ok_or_else(|| {
                Error::Internal("closure of a disconnected graph is connected".into())
            })?;
            Ok(fp.object_of(e, t))
        })
        .collect::<Result<Vec<_>>>()?;
    ACMap::from_object_map(&fp.poset, objects)
}

/// Matches the fixed points of the closure operator with partitions by
/// connected components, and checks that this bijection turns inclusion of
/// graphs into coarsening of partitions.
pub fn image_correspondence(
    g: &GraphComplex,
    fp: &FacePoset,
    f: &ACMap,
    pp: &PartitionPoset,
) -> Result<HashMap<usize, usize>> {
    let mut partition_of = HashMap::new();
    for (x, &(d, s)) in fp.simplices.iter().enumerate() {
        if f.object(x) != x {
            continue;
        }
        let mut uf = components(g.n, &g.edges, g.masks[d][s]);
        let labels: Vec<usize> = (0..g.n).map(|v| uf.find(v)).collect();
        let k = pp
            .index_of(&labels)
            .ok_or_else(|| Error::Internal("component partition is trivial".into()))?;
        partition_of.insert(x, k);
    }
    let hit: std::collections::HashSet<usize> = partition_of.values().copied().collect();
    if hit.len() != partition_of.len() || hit.len() != pp.partitions.len() {
        return Err(Error::Internal(format!(
            "{} fixed points against {} partitions",
            partition_of.len(),
            pp.partitions.len()
        )));
    }
    for (&x, &px) in &partition_of {
        for (&y, &py) in &partition_of {
            if fp.poset.lt(x, y) != pp.poset.lt(py, px) {
                return Err(Error::Internal(format!(
                    "order mismatch between fixed points {x} and {y}"
                )));
            }
        }
    }
    Ok(partition_of)
}

pub fn sn_action(g: &GraphComplex, fp: &FacePoset, pp: &PartitionPoset) -> Result<SnAction> {
    let n = g.n;
    let swap: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let gens = [swap.clone(), cycle.clone()];
    let perms: Vec<Vec<usize>> = GroupAction::generate(
        vec![n],
        gens.iter()
            .map(|p| Automorphism::new(vec![p.clone()]))
            .collect(),
    )?
    .elements()
    .iter()
    .map(|e| e.block(0).to_vec())
    .collect();
    let on_complex_elem = |perm: &Vec<usize>| -> Automorphism {
        let blocks = g
            .masks
            .iter()
            .map(|list| {
                list.iter()
                    .map(|&mask| {
                        g.simplex_of_mask(g.permute_mask(perm, mask))
                            .expect("closed under S_n")
                            .1
                    })
                    .collect()
            })
            .collect();
        Automorphism::new(blocks)
    };
    let on_faces_elem = |perm: &Vec<usize>| -> Result<Automorphism> {
        let objects = fp
            .simplices
            .iter()
            .map(|&(d, s)| {
                let (e, t) = g
                    .simplex_of_mask(g.permute_mask(perm, g.masks[d][s]))
                    .expect("closed under S_n");
                fp.object_of(e, t)
            })
            .collect();
        poset_automorphism(&fp.poset, objects)
    };
    let on_partitions_elem = |perm: &Vec<usize>| -> Result<Automorphism> {
        let objects = (0..pp.partitions.len())
            .map(|k| pp.permute(perm, k))
            .collect();
        poset_automorphism(&pp.poset, objects)
    };
    let complex_gens: Vec<Automorphism> = gens.iter().map(on_complex_elem).collect();
    let face_gens = gens.iter().map(on_faces_elem).collect::<Result<Vec<_>>>()?;
    let partition_gens = gens
        .iter()
        .map(on_partitions_elem)
        .collect::<Result<Vec<_>>>()?;
    for a in &face_gens {
        check_category_automorphism(fp.poset.category(), a)?;
    }
    for a in &partition_gens {
        check_category_automorphism(pp.poset.category(), a)?;
    }
    let on_complex = GroupAction::from_elements(
        g.trisp.counts().to_vec(),
        complex_gens,
        perms.iter().map(on_complex_elem).collect(),
    )?;
    let on_faces = GroupAction::from_elements(
        vec![fp.poset.len(), fp.poset.category().morphism_count()],
        face_gens,
        perms
            .iter()
            .map(on_faces_elem)
            .collect::<Result<Vec<_>>>()?,
    )?;
    let on_partitions = GroupAction::from_elements(
        vec![pp.poset.len(), pp.poset.category().morphism_count()],
        partition_gens,
        perms
            .iter()
            .map(on_partitions_elem)
            .collect::<Result<Vec<_>>>()?,
    )?;
    for (action, c) in [
        (&on_faces, fp.poset.category()),
        (&on_partitions, pp.poset.category()),
    ] {
        if let Some((element, object)) = check_horizontal(c, action) {
            return Err(Error::NotHorizontal { element, object });
        }
    }
    Ok(SnAction {
        permutations: perms,
        on_complex,
        on_faces,
        on_partitions,
    })
}

/// One timed stage of a pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub name: String,
    pub millis: u128,
    pub counts: Vec<usize>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub n: usize,
    pub success: bool,
    pub stages: Vec<Stage>,
    /// Simplex counts after the closure-map collapse.
    pub collapsed_counts: Vec<usize>,
    pub collapse_steps: usize,
    pub euler_characteristic: i64,
    /// Elementary collapses from the collapsed trisp down to one vertex.
    pub point_certificate: Option<Vec<CollapseStep>>,
    /// Set when the search for a point certificate was not run or gave up.
    pub point_search_skipped: Option<String>,
    /// Objects of the partition quotient with their number-partition types.
    pub partition_classes: Vec<String>,
    pub terminal_class: Option<String>,
}

impl PipelineReport {
    fn new(pipeline: &str, n: usize) -> Self {
        PipelineReport {
            pipeline: pipeline.into(),
            n,
            success: false,
            stages: Vec::new(),
            collapsed_counts: Vec::new(),
            collapse_steps: 0,
            euler_characteristic: 0,
            point_certificate: None,
            point_search_skipped: None,
            partition_classes: Vec::new(),
            terminal_class: None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    /// Run the exhaustive search for a collapse to a point.
    pub point_search: bool,
    /// Search states allowed before the point search gives up.
    pub point_search_budget: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            point_search: true,
            point_search_budget: 2_000_000,
        }
    }
}

struct Stager<'a> {
    report: &'a mut PipelineReport,
    clock: Instant,
}

impl Stager<'_> {
    fn run<T>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<(T, Vec<usize>, String)>,
    ) -> Result<T> {
        self.clock = Instant::now();
        let (value, counts, note) = f().map_err(|e| Error::Stage {
            stage: name.into(),
            source: Box::new(e),
        })?;
        self.report.stages.push(Stage {
            name: name.into(),
            millis: self.clock.elapsed().as_millis(),
            counts,
            note,
        });
        Ok(value)
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Internal(msg()))
    }
}

fn invert(map: &[Vec<usize>]) -> Vec<Vec<usize>> {
    map.iter()
        .map(|row| {
            let mut inv = vec![0; row.len()];
            for (i, &j) in row.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect()
}

fn translate(steps: &[CollapseStep], map: &[Vec<usize>]) -> Vec<CollapseStep> {
    steps
        .iter()
        .map(|s| CollapseStep {
            dim: s.dim,
            face: map[s.dim][s.face],
            coface: map[s.dim + 1][s.coface],
        })
        .collect()
}

/// `bd(DG_n)/S_n`: pushes the closure map of the closure operator through
/// the quotient, collapses onto the red part, identifies it with
/// `Δ(Π̄_n)/S_n` (with reversed vertex order), and searches for a collapse of
/// that to a point.
pub fn pipeline_trisp_quotient(n: usize, options: PipelineOptions) -> Result<PipelineReport> {
    let mut report = PipelineReport::new("trisp", n);
    let mut st = Stager {
        report: &mut report,
        clock: Instant::now(),
    };
    let dgn = st.run("build", || {
        let d = Dgn::build(n)?;
        let counts = vec![
            d.complex.trisp.count(0),
            d.faces.poset.len(),
            d.partitions.poset.len(),
        ];
        Ok((
            d,
            counts,
            "vertices of DG_n, faces, nontrivial partitions".into(),
        ))
    })?;
    let bd = st.run("barycentric subdivision", || {
        let bd = nerve(dgn.faces.poset.category())?;
        let counts = bd.trisp.counts().to_vec();
        Ok((bd, counts, String::new()))
    })?;
    let action = st.run("induced action", || {
        let a = induced_trisp_action(&bd, &dgn.sn.on_faces)?;
        let r = check_condition_r(&bd.trisp, &a);
        check(r.holds, || format!("condition R fails: {:?}", r.witness))?;
        let order = vec![a.order()];
        Ok((a, order, "condition R holds".into()))
    })?;
    let closure = st.run("closure map", || {
        let c = induced_trisp_closure_map(&dgn.faces.poset, &dgn.closure)?;
        let v = verify_trisp_closure_map(&bd.trisp, &c)?;
        check(v.holds, || format!("{:?}", v.failures.first()))?;
        let counts = vec![c.blue().len(), c.red().len()];
        let note = format!("{:?} convention", c.convention()).to_lowercase();
        Ok((c, counts, note))
    })?;
    let pushed = st.run("push to quotient", || {
        let p = push_closure_map(&bd.trisp, &action, &closure)?;
        let v = verify_trisp_closure_map(&p.quotient.trisp, &p.map)?;
        check(v.holds, || format!("{:?}", v.failures.first()))?;
        let counts = p.quotient.trisp.counts().to_vec();
        Ok((p, counts, String::new()))
    })?;
    let cert = st.run("collapse", || {
        let cert = certify(&pushed.quotient.trisp, &pushed.map)?;
        let counts = cert.final_counts.clone();
        Ok((cert, counts, String::new()))
    })?;
    let collapsed = cert.final_trisp.trisp.clone();
    st.run("identify with partition quotient", || {
        let pn = nerve(dgn.partitions.poset.category())?;
        let pa = induced_trisp_action(&pn, &dgn.sn.on_partitions)?;
        let pq = quotient_trisp(&pn.trisp, &pa);
        let q = &pushed.quotient;
        let vertices: Vec<usize> = cert.final_trisp.inclusion[0]
            .iter()
            .map(|&orbit| {
                let face = q.representatives[0][orbit];
                pq.projection[0][dgn.partition_of[&face]]
            })
            .collect();
        let eq = trisps_equal_over_vertices(&collapsed, &pq.trisp.reversed(), &vertices);
        check(eq.equal, || {
            format!("collapsed trisp differs: {:?}", eq.witness)
        })?;
        Ok((
            (),
            pq.trisp.counts().to_vec(),
            "equal after reversing vertex order".into(),
        ))
    })?;
    report.collapsed_counts = collapsed.counts().to_vec();
    report.collapse_steps = cert.steps.len();
    report.euler_characteristic = cert.euler_characteristic;
    point_search(&mut report, &collapsed, options)?;
    report.success = report.point_search_skipped.is_some() || report.point_certificate.is_some();
    Ok(report)
}

fn point_search(report: &mut PipelineReport, t: &Trisp, options: PipelineOptions) -> Result<()> {
    if !options.point_search {
        report.point_search_skipped = Some("not requested".into());
        return Ok(());
    }
    let clock = Instant::now();
    match collapse_to_point_search(t, options.point_search_budget) {
        Ok(Some(steps)) => {
            let end = replay_collapse(t, &steps)?;
            check(end.trisp == Trisp::point(), || {
                "search result does not end at a point".into()
            })?;
            report.stages.push(Stage {
                name: "collapse to a point".into(),
                millis: clock.elapsed().as_millis(),
                counts: vec![steps.len()],
                note: "found by search".into(),
            });
            report.point_certificate = Some(steps);
        }
        Ok(None) => {
            return Err(Error::Stage {
                stage: "collapse to a point".into(),
                source: Box::new(Error::Internal("no collapse to a point exists".into())),
            });
        }
        Err(e) => report.point_search_skipped = Some(e.to_string()),
    }
    Ok(())
}

/// `Δ(F̄(DG_n)/S_n)`: collapses with the quotient closure map onto
/// `Δ(φ(P)/S_n)`, identifies that with `Δ(Π̄_n/S_n)` (reversed), and
/// collapses the latter to a point through its terminal object.
pub fn pipeline_category_quotient(n: usize, options: PipelineOptions) -> Result<PipelineReport> {
    let _ = options;
    let mut report = PipelineReport::new("category", n);
    let mut st = Stager {
        report: &mut report,
        clock: Instant::now(),
    };
    let dgn = st.run("build", || {
        let d = Dgn::build(n)?;
        let counts = vec![
            d.complex.trisp.count(0),
            d.faces.poset.len(),
            d.partitions.poset.len(),
        ];
        Ok((
            d,
            counts,
            "vertices of DG_n, faces, nontrivial partitions".into(),
        ))
    })?;
    let p = &dgn.faces.poset;
    let action = &dgn.sn.on_faces;
    st.run("lambda surjectivity", || {
        let eqn = EquivariantNerve::build(p.category(), action)?;
        let (_, r) = eqn.lambda_report()?;
        check(
            r.is_surjective() && r.commutes_with_boundaries && r.bijective_on_vertices,
            || format!("{r:?}"),
        )?;
        let note = if r.is_isomorphism() {
            "isomorphism"
        } else {
            "surjective"
        };
        Ok(((), eqn.quotient_nerve.trisp.counts().to_vec(), note.into()))
    })?;
    let qc = st.run("quotient closure map", || {
        let qc = quotient_poset_closure_map(p, action, &dgn.closure)?;
        let counts = qc.nerve.trisp.counts().to_vec();
        let note = format!("{} blue classes", qc.map.blue().len());
        Ok((qc, counts, note))
    })?;
    let cert = st.run("collapse", || {
        let cert = certify(&qc.nerve.trisp, &qc.map)?;
        let counts = cert.final_counts.clone();
        Ok((cert, counts, String::new()))
    })?;
    st.run("image quotient checks", || {
        let classes = check_class_compatibility(p, action, &dgn.closure)?;
        check(classes.holds, || {
            format!("class witnesses {:?}", classes.witnesses)
        })?;
        let image = check_image_subtrisp(p, action, &dgn.closure)?;
        check(image.equal, || format!("{:?}", image.equality.witness))?;
        Ok((
            (),
            image.image_counts,
            format!("{} class-equal pairs", classes.pairs_checked),
        ))
    })?;
    let collapsed = cert.final_trisp.trisp.clone();
    let img = image_quotient(p, action, &dgn.closure)?;
    let img_nerve = nerve(&img.quotient.category)?;
    let (pq, terminal) = st.run("partition quotient", || {
        let pq = quotient_category(dgn.partitions.poset.category(), &dgn.sn.on_partitions)?;
        let t = find_terminal_object(&pq.category).ok_or(Error::NoTerminalObject)?;
        let c = &pq.category;
        check(
            (0..c.object_count()).all(|x| x == t || c.hom(x, t).len() == 1),
            || "terminal class has parallel morphisms".into(),
        )?;
        Ok((
            (pq.clone(), t),
            vec![c.object_count(), c.morphism_count()],
            String::new(),
        ))
    })?;
    let class_type = |class: usize| {
        let member = pq.object_members(class)[0];
        type_label(&dgn.partitions.number_type(member))
    };
    report.partition_classes = (0..pq.category.object_count()).map(class_type).collect();
    report.terminal_class = Some(class_type(terminal));
    let mut st = Stager {
        report: &mut report,
        clock: Instant::now(),
    };
    let to_image = st.run("identify with partition quotient", || {
        let pn = nerve(&pq.category)?;
        // image class -> partition class
        let vertices: Vec<usize> = (0..img.quotient.category.object_count())
            .map(|class| {
                let sub_obj = img.quotient.object_members(class)[0];
                let face = img.elements[sub_obj];
                pq.object_class[dgn.partition_of[&face]]
            })
            .collect();
        let eq = trisps_equal_over_vertices(&img_nerve.trisp, &pn.trisp.reversed(), &vertices);
        check(eq.equal, || {
            format!("image nerve differs: {:?}", eq.witness)
        })?;
        Ok((
            (pn, invert(&eq.simplex_map.unwrap())),
            img_nerve.trisp.counts().to_vec(),
            String::new(),
        ))
    })?;
    let (pn, to_image_map) = to_image;
    let point = st.run("cone collapse", || {
        let (_, cone) = cone_closure_map(&pq.category, Apex::Terminal)?;
        let cone_cert = certify(&pn.trisp, &cone)?;
        check(cone_cert.final_counts == [1], || {
            "cone collapse did not end at a point".into()
        })?;
        // carry the steps over to the collapsed trisp
        let on_image = translate(&cone_cert.steps, &to_image_map);
        replay_collapse(&img_nerve.trisp, &on_image)?;
        let eq = trisps_equal_over_vertices(
            &collapsed,
            &img_nerve.trisp,
            &identity_vertices(&cert, &qc, &img)?,
        );
        check(eq.equal, || format!("{:?}", eq.witness))?;
        let steps = translate(&on_image, &invert(&eq.simplex_map.unwrap()));
        let end = replay_collapse(&collapsed, &steps)?;
        check(end.trisp == Trisp::point(), || {
            "translated collapse does not end at a point".into()
        })?;
        Ok((
            steps.clone(),
            vec![steps.len()],
            "via the terminal object".into(),
        ))
    })?;
    report.collapsed_counts = collapsed.counts().to_vec();
    report.collapse_steps = cert.steps.len();
    report.euler_characteristic = cert.euler_characteristic;
    report.point_certificate = Some(point);
    report.success = true;
    Ok(report)
}

/// Vertex identification of the collapsed subtrisp of `Δ(P/G)` with the
/// nerve of the image quotient.
fn identity_vertices(
    cert: &crate::closure::CollapseCertificate,
    qc: &crate::equivariant::QuotientClosure,
    img: &crate::equivariant::ImageQuotient,
) -> Result<Vec<usize>> {
    cert.final_trisp.inclusion[0]
        .iter()
        .map(|&class| {
            let x = qc
                .quotient
                .object_members(class)
                .into_iter()
                .find(|x| img.object_map[*x].is_some())
                .ok_or_else(|| Error::Internal("red class without an image element".into()))?;
            Ok(img.quotient.object_class[img.object_map[x].unwrap()])
        })
        .collect()
}
