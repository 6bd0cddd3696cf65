//! Finite group actions on acyclic categories and trisps, and the quotients
//! they produce.
//!
//! Group elements are explicit permutation tables. An [`Automorphism`] is a
//! list of blocks: `[objects, morphisms]` when acting on a category, one block
//! per dimension when acting on a trisp.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::accat::{AcyclicCategory, Morphism, Poset};
use crate::error::{Error, Result};
use crate::nerve::{nerve, Chain, Nerve};
use crate::trisp::{Trisp, TrispReport};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    blocks: Vec<Vec<usize>>,
}

impl Automorphism {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        Automorphism { blocks }
    }

    pub fn identity(sizes: &[usize]) -> Self {
        Automorphism {
            blocks: sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn apply(&self, block: usize, x: usize) -> usize {
        self.blocks[block][x]
    }

    /// Category layout: image of an object.
    pub fn object(&self, x: usize) -> usize {
        self.blocks[0][x]
    }

    /// Category layout: image of a morphism.
    pub fn morphism(&self, m: usize) -> usize {
        self.blocks[1][m]
    }

    /// Trisp layout: image of a `d`-simplex.
    pub fn simplex(&self, d: usize, s: usize) -> usize {
        self.blocks[d][s]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| b.iter().map(|&x| a[x]).collect())
                .collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            blocks: self
                .blocks
                .iter()
                .map(|p| {
                    let mut inv = vec![0; p.len()];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i;
                    }
                    inv
                })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.blocks
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    fn check_shape(&self, sizes: &[usize]) -> Result<()> {
        if self.blocks.len() != sizes.len() {
            return Err(Error::NotAutomorphism(format!(
                "expected {} permutation blocks, found {}",
                sizes.len(),
                self.blocks.len()
            )));
        }
        for (b, (p, &n)) in self.blocks.iter().zip(sizes).enumerate() {
            if p.len() != n {
                return Err(Error::NotAutomorphism(format!(
                    "block {b} has length {} instead of {n}",
                    p.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in p {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAutomorphism(format!(
                        "block {b} is not a permutation"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Orbits of one block, numbered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbits {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }
}

/// A finite group given by generators and its full element list
/// (`elements[0]` is the identity).
#[derive(Clone, Debug)]
pub struct GroupAction {
    sizes: Vec<usize>,
    generators: Vec<Automorphism>,
    elements: Vec<Automorphism>,
}

impl GroupAction {
    /// Closes the generators under composition (breadth-first). Only the
    /// permutation shape is checked here; use [`on_category`](Self::on_category)
    /// or [`on_trisp`](Self::on_trisp) to also check structure preservation.
    pub fn generate(sizes: Vec<usize>, generators: Vec<Automorphism>) -> Result<Self> {
        for g in &generators {
            g.check_shape(&sizes)?;
        }
        let identity = Automorphism::identity(&sizes);
        let mut seen: HashSet<Automorphism> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity];
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                if seen.insert(h.clone()) {
                    elements.push(h);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let action = GroupAction {
            sizes,
            generators,
            elements,
        };
        action.assert_group_axioms(&seen)?;
        Ok(action)
    }

    fn assert_group_axioms(&self, seen: &HashSet<Automorphism>) -> Result<()> {
        if !self.elements[0].is_identity() {
            return Err(Error::Internal(
                "first group element is not the identity".into(),
            ));
        }
        if self.elements.len() <= 720 {
            for g in &self.elements {
                if !seen.contains(&g.inverse()) {
                    return Err(Error::Internal("group closure missing an inverse".into()));
                }
                for h in &self.generators {
                    if !seen.contains(&g.compose(h)) {
                        return Err(Error::Internal("group closure not closed".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds an action from an already-closed element list, e.g. one lifted
    /// from another action. `elements[0]` must be the identity.
    pub fn from_elements(
        sizes: Vec<usize>,
        generators: Vec<Automorphism>,
        elements: Vec<Automorphism>,
    ) -> Result<Self> {
        for g in generators.iter().chain(&elements) {
            g.check_shape(&sizes)?;
        }
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::Internal(
                "element list must start with the identity".into(),
            ));
        }
        Ok(GroupAction {
            sizes,
            generators,
            elements,
        })
    }

    pub fn trivial(sizes: Vec<usize>) -> Self {
        GroupAction {
            elements: vec![Automorphism::identity(&sizes)],
            sizes,
            generators: Vec::new(),
        }
    }

    /// An action on a category; every generator must be a functor.
    pub fn on_category(c: &AcyclicCategory, generators: Vec<Automorphism>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            check_category_automorphism(c, g).map_err(|e| tag_generator(k, e))?;
        }
        GroupAction::generate(vec![c.object_count(), c.morphism_count()], generators)
    }

    /// An action on a trisp; every generator must commute with all `∂_i`.
    pub fn on_trisp(t: &Trisp, generators: Vec<Automorphism>) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            check_trisp_automorphism(t, g).map_err(|e| tag_generator(k, e))?;
        }
        GroupAction::generate(t.counts().to_vec(), generators)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn orbits(&self, block: usize) -> Orbits {
        let mut uf = UnionFind::new(self.sizes[block]);
        for g in &self.generators {
            for (x, &y) in g.block(block).iter().enumerate() {
                uf.union(x, y);
            }
        }
        let (class_of, members) = uf.classes();
        Orbits { class_of, members }
    }

    /// Some element sending `from` to `to` in `block`.
    pub fn transporter(&self, block: usize, from: usize, to: usize) -> Option<usize> {
        self.elements
            .iter()
            .position(|g| g.apply(block, from) == to)
    }
}

fn tag_generator(k: usize, e: Error) -> Error {
    match e {
        Error::NotAutomorphism(msg) => Error::NotAutomorphism(format!("generator {k}: {msg}")),
        other => other,
    }
}

/// Checks that `g` is a functor `C → C` given by permutations.
pub fn check_category_automorphism(c: &AcyclicCategory, g: &Automorphism) -> Result<()> {
    g.check_shape(&[c.object_count(), c.morphism_count()])?;
    for (m, mor) in c.morphisms().iter().enumerate() {
        let gm = c.morphism(g.morphism(m));
        if gm.source != g.object(mor.source) || gm.target != g.object(mor.target) {
            return Err(Error::NotAutomorphism(format!(
                "endpoints of morphism {m} are not preserved"
            )));
        }
    }
    for (a, b, ab) in c.composition_entries() {
        if c.compose(g.morphism(a), g.morphism(b)) != Some(g.morphism(ab)) {
            return Err(Error::NotAutomorphism(format!(
                "composite of ({a}, {b}) is not preserved"
            )));
        }
    }
    Ok(())
}

/// Checks that `g` permutes simplices and commutes with every `∂_i`.
pub fn check_trisp_automorphism(t: &Trisp, g: &Automorphism) -> Result<()> {
    g.check_shape(t.counts())?;
    for (d, s) in t.simplices() {
        for (i, &f) in t.faces(d, s).iter().enumerate() {
            if t.face(d, g.simplex(d, s), i) != g.simplex(d - 1, f) {
                return Err(Error::NotAutomorphism(format!(
                    "does not commute with ∂_{i} on simplex {s} of dimension {d}"
                )));
            }
        }
    }
    Ok(())
}

/// The automorphism of a poset category induced by an object permutation.
pub fn poset_automorphism(p: &Poset, objects: Vec<usize>) -> Result<Automorphism> {
    let c = p.category();
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| {
            p.morphism_between(objects[m.source], objects[m.target])
                .ok_or_else(|| {
                    Error::NotAutomorphism("object permutation does not preserve the order".into())
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Automorphism::new(vec![objects, morphisms]))
}

/// First `(element, object)` with `gx ≠ x` and `x`, `gx` comparable.
pub fn check_horizontal(c: &AcyclicCategory, action: &GroupAction) -> Option<(usize, usize)> {
    for (k, g) in action.elements().iter().enumerate() {
        for x in 0..c.object_count() {
            let gx = g.object(x);
            if gx != x && !c.incomparable(x, gx) {
                return Some((k, x));
            }
        }
    }
    None
}

/// The action on `Δ(C)` induced by an action on `C`, with elements listed in
/// the same order.
pub fn induced_trisp_action(n: &Nerve, action: &GroupAction) -> Result<GroupAction> {
    let lift = |g: &Automorphism| -> Result<Automorphism> {
        let dims = n.trisp.counts().len();
        let mut blocks = Vec::with_capacity(dims);
        for d in 0..dims {
            let block = n
                .chains(d)
                .iter()
                .map(|ch| {
                    if d == 0 {
                        Ok(g.object(ch.objects[0]))
                    } else {
                        let image: Vec<usize> =
                            ch.morphisms.iter().map(|&m| g.morphism(m)).collect();
                        n.simplex_of_morphisms(&image).ok_or_else(|| {
                            Error::NotAutomorphism("image of a chain is not a chain".into())
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        Ok(Automorphism::new(blocks))
    };
    let generators = action
        .generators()
        .iter()
        .map(lift)
        .collect::<Result<Vec<_>>>()?;
    let elements = action
        .elements()
        .iter()
        .map(lift)
        .collect::<Result<Vec<_>>>()?;
    GroupAction::from_elements(n.trisp.counts().to_vec(), generators, elements)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRWitness {
    pub element: usize,
    pub dim: usize,
    pub simplex: usize,
    /// A common face of `σ` and `gσ` that `g` moves.
    pub face_dim: usize,
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRReport {
    pub holds: bool,
    pub witness: Option<ConditionRWitness>,
}

/// A common face of `σ` and `gσ` not fixed by `g`, if any. Common faces are
/// the iterated faces shared by both simplices, including `σ` itself when
/// `gσ = σ`; a vertex of a common face is itself a common face, so this also
/// covers pointwise fixing.
pub fn condition_r_violation(
    t: &Trisp,
    g: &Automorphism,
    d: usize,
    s: usize,
) -> Option<(usize, usize)> {
    let faces = t.iterated_faces(d, s);
    let moved: HashSet<(usize, usize)> = faces.iter().map(|&(e, r)| (e, g.simplex(e, r))).collect();
    faces
        .into_iter()
        .find(|&(e, r)| moved.contains(&(e, r)) && g.simplex(e, r) != r)
}

/// Checks Condition R. Common faces of `σ` and `gσ` are also common faces of
/// any simplex containing `σ` and its translate, so only maximal simplices are
/// scanned.
pub fn check_condition_r(t: &Trisp, action: &GroupAction) -> ConditionRReport {
    let cof = t.coface_index();
    let maximal: Vec<(usize, usize)> = t
        .simplices()
        .filter(|&(d, s)| cof.of(d, s).is_empty())
        .collect();
    for (k, g) in action.elements().iter().enumerate().skip(1) {
        for &(d, s) in &maximal {
            if let Some((face_dim, face)) = condition_r_violation(t, g, d, s) {
                return ConditionRReport {
                    holds: false,
                    witness: Some(ConditionRWitness {
                        element: k,
                        dim: d,
                        simplex: s,
                        face_dim,
                        face,
                    }),
                };
            }
        }
    }
    ConditionRReport {
        holds: true,
        witness: None,
    }
}

/// `T/G`: simplices are orbits, `∂_i(Gσ) = G(∂_i σ)`.
#[derive(Clone, Debug)]
pub struct QuotientTrisp {
    pub trisp: Trisp,
    /// Orbit index of every simplex, per dimension.
    pub projection: Vec<Vec<usize>>,
    /// Least member of every orbit, per dimension.
    pub representatives: Vec<Vec<usize>>,
    pub report: TrispReport,
}

pub fn quotient_trisp(t: &Trisp, action: &GroupAction) -> QuotientTrisp {
    let dims = t.counts().len();
    let mut projection = Vec::with_capacity(dims);
    let mut representatives = Vec::with_capacity(dims);
    let mut counts = Vec::with_capacity(dims);
    let mut boundaries = Vec::with_capacity(dims);
    for d in 0..dims {
        let orbits = action.orbits(d);
        let reps: Vec<usize> = orbits.members.iter().map(|m| m[0]).collect();
        let mut flat = Vec::with_capacity(reps.len() * if d == 0 { 0 } else { d + 1 });
        if d > 0 {
            let below: &Vec<usize> = &projection[d - 1];
            for &r in &reps {
                flat.extend(t.faces(d, r).iter().map(|&f| below[f]));
            }
            debug_assert!(t.simplices().filter(|&(e, _)| e == d).all(|(_, s)| {
                let o = orbits.class_of[s];
                t.faces(d, s)
                    .iter()
                    .enumerate()
                    .all(|(i, &f)| below[f] == flat[o * (d + 1) + i])
            }));
        }
        counts.push(reps.len());
        boundaries.push(flat);
        projection.push(orbits.class_of);
        representatives.push(reps);
    }
    let trisp = Trisp::new(counts, boundaries).expect("orbit indices are in range");
    let report = trisp.validate_structure();
    QuotientTrisp {
        trisp,
        projection,
        representatives,
        report,
    }
}

/// `C/G` with its projection functor.
#[derive(Clone, Debug)]
pub struct QuotientCategory {
    pub category: AcyclicCategory,
    pub object_class: Vec<usize>,
    pub morphism_class: Vec<usize>,
}

impl QuotientCategory {
    pub fn object_members(&self, class: usize) -> Vec<usize> {
        (0..self.object_class.len())
            .filter(|&x| self.object_class[x] == class)
            .collect()
    }

    pub fn morphism_members(&self, class: usize) -> Vec<usize> {
        (0..self.morphism_class.len())
            .filter(|&m| self.morphism_class[m] == class)
            .collect()
    }
}

/// The colimit quotient `C/G`. Morphism classes are the congruence generated
/// by `m ~ gm`, closed under composition, computed by union-find to a fixpoint.
pub fn quotient_category(c: &AcyclicCategory, action: &GroupAction) -> Result<QuotientCategory> {
    if let Some((element, object)) = check_horizontal(c, action) {
        return Err(Error::NotHorizontal { element, object });
    }
    let objects = action.orbits(0);
    let mut uf = UnionFind::new(c.morphism_count());
    for g in action.generators() {
        for m in 0..c.morphism_count() {
            uf.union(m, g.morphism(m));
        }
    }
    let pairs = c.composition_entries();
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(pairs.len());
        for &(a, b, ab) in &pairs {
            let key = (uf.find(a), uf.find(b));
            match seen.get(&key) {
                Some(&other) => changed |= uf.union(other, ab),
                None => {
                    seen.insert(key, ab);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let (morphism_class, members) = uf.classes();
    let mut morphisms = Vec::with_capacity(members.len());
    for class in &members {
        let rep = class[0];
        let (s, t) = (
            objects.class_of[c.source(rep)],
            objects.class_of[c.target(rep)],
        );
        if class
            .iter()
            .any(|&m| objects.class_of[c.source(m)] != s || objects.class_of[c.target(m)] != t)
        {
            return Err(Error::Internal(format!(
                "morphism class of {rep} has mixed endpoints; action is not valid"
            )));
        }
        morphisms.push(Morphism {
            source: s,
            target: t,
            label: format!("[{}]", label_or_index(&c.morphism(rep).label, rep)),
        });
    }
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for &(a, b, ab) in &pairs {
        let key = (morphism_class[a], morphism_class[b]);
        if let Some(prev) = table.insert(key, morphism_class[ab]) {
            if prev != morphism_class[ab] {
                return Err(Error::Internal(
                    "class composition is not well defined".into(),
                ));
            }
        }
    }
    let labels = objects
        .members
        .iter()
        .map(|m| format!("[{}]", label_or_index(c.object_label(m[0]), m[0])))
        .collect();
    let category = AcyclicCategory::new(
        labels,
        morphisms,
        table.into_iter().map(|((a, b), ab)| (a, b, ab)),
    )?;
    let report = category.validate();
    if !report.is_valid() {
        return Err(Error::Internal(format!(
            "quotient category is invalid: {report:?}"
        )));
    }
    Ok(QuotientCategory {
        category,
        object_class: objects.class_of,
        morphism_class,
    })
}

fn label_or_index(label: &str, i: usize) -> String {
    if label.is_empty() {
        i.to_string()
    } else {
        label.to_string()
    }
}

/// `C` with a `G`-action and everything needed to compare `Δ(C)/G` with
/// `Δ(C/G)`.
#[derive(Clone, Debug)]
pub struct EquivariantNerve {
    pub category: AcyclicCategory,
    pub category_action: GroupAction,
    pub nerve: Nerve,
    pub trisp_action: GroupAction,
    pub quotient_trisp: QuotientTrisp,
    pub quotient: QuotientCategory,
    pub quotient_nerve: Nerve,
}

/// The canonical map `λ: Δ(C)/G → Δ(C/G)`, per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaMap {
    pub images: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub commutes_with_boundaries: bool,
    pub bijective_on_vertices: bool,
    pub surjective: Vec<bool>,
    pub injective: Vec<bool>,
    /// Simplices of `Δ(C/G)` whose constructed lift failed to round-trip.
    pub lift_failures: Vec<(usize, usize)>,
}

impl LambdaReport {
    pub fn is_surjective(&self) -> bool {
        self.surjective.iter().all(|&b| b) && self.lift_failures.is_empty()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.injective.iter().all(|&b| b)
    }
}

impl EquivariantNerve {
    pub fn build(c: &AcyclicCategory, action: &GroupAction) -> Result<Self> {
        let n = nerve(c)?;
        let trisp_action = induced_trisp_action(&n, action)?;
        let quotient_trisp = quotient_trisp(&n.trisp, &trisp_action);
        let quotient = quotient_category(c, action)?;
        let quotient_nerve = nerve(&quotient.category)?;
        Ok(EquivariantNerve {
            category: c.clone(),
            category_action: action.clone(),
            nerve: n,
            trisp_action,
            quotient_trisp,
            quotient,
            quotient_nerve,
        })
    }

    /// `λ(G(a_0 → ⋯ → a_t)) = ([a_0] → ⋯ → [a_t])`.
    pub fn lambda(&self) -> Result<LambdaMap> {
        let q = &self.quotient_trisp;
        let mut images = Vec::with_capacity(q.representatives.len());
        for (d, reps) in q.representatives.iter().enumerate() {
            let mut row = Vec::with_capacity(reps.len());
            for &r in reps {
                let ch = self.nerve.chain(d, r);
                let image = Chain {
                    objects: ch
                        .objects
                        .iter()
                        .map(|&x| self.quotient.object_class[x])
                        .collect(),
                    morphisms: ch
                        .morphisms
                        .iter()
                        .map(|&m| self.quotient.morphism_class[m])
                        .collect(),
                };
                let (_, s) = self
                    .quotient_nerve
                    .simplex_of(&image)
                    .ok_or_else(|| Error::Internal("λ-image is not a chain of C/G".into()))?;
                row.push(s);
            }
            images.push(row);
        }
        Ok(LambdaMap { images })
    }

    /// A chain of `C` whose class is the given simplex of `Δ(C/G)`, built by
    /// extending one morphism at a time and translating each class
    /// representative so that it starts where the previous one ended.
    pub fn lift(&self, d: usize, s: usize) -> Result<Chain> {
        let target = self.quotient_nerve.chain(d, s);
        let q = &self.quotient;
        let c = &self.nerve;
        if d == 0 {
            let x = q.object_members(target.objects[0])[0];
            return Ok(c.chain(0, x).clone());
        }
        let action = &self.category_action;
        let mut objects = Vec::with_capacity(d + 1);
        let mut morphisms = Vec::with_capacity(d);
        for (i, &class) in target.morphisms.iter().enumerate() {
            let rep = q.morphism_members(class)[0];
            let category = &self.category;
            let chosen = if i == 0 {
                objects.push(category.source(rep));
                rep
            } else {
                let end = *objects.last().unwrap();
                let g = action
                    .transporter(0, category.source(rep), end)
                    .ok_or_else(|| Error::Internal("no group element aligns the lift".into()))?;
                action.elements()[g].morphism(rep)
            };
            objects.push(category.target(chosen));
            morphisms.push(chosen);
        }
        Ok(Chain { objects, morphisms })
    }

    pub fn lambda_report(&self) -> Result<(LambdaMap, LambdaReport)> {
        let lambda = self.lambda()?;
        let q = &self.quotient_trisp.trisp;
        let target = &self.quotient_nerve.trisp;
        let mut commutes = true;
        for (d, s) in q.simplices() {
            for (i, &f) in q.faces(d, s).iter().enumerate() {
                if target.face(d, lambda.images[d][s], i) != lambda.images[d - 1][f] {
                    commutes = false;
                }
            }
        }
        let dims = q.counts().len().max(target.counts().len());
        let mut surjective = Vec::with_capacity(dims);
        let mut injective = Vec::with_capacity(dims);
        for d in 0..dims {
            let row = lambda.images.get(d).map(Vec::as_slice).unwrap_or(&[]);
            let hit: HashSet<usize> = row.iter().copied().collect();
            surjective.push(hit.len() == target.count(d));
            injective.push(hit.len() == row.len());
        }
        let mut lift_failures = Vec::new();
        for (d, s) in target.simplices() {
            let ok = self.lift(d, s).ok().and_then(|ch| {
                let (e, idx) = self.nerve.simplex_of(&ch)?;
                let orbit = self.quotient_trisp.projection[e][idx];
                Some(lambda.images[e][orbit] == s)
            });
            if ok != Some(true) {
                lift_failures.push((d, s));
            }
        }
        let report = LambdaReport {
            commutes_with_boundaries: commutes,
            bijective_on_vertices: surjective.first().copied().unwrap_or(true)
                && injective.first().copied().unwrap_or(true),
            surjective,
            injective,
            lift_failures,
        };
        Ok((lambda, report))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cyclic(n: usize) -> GroupAction {
        let shift = (0..n).map(|x| (x + 1) % n).collect();
        GroupAction::generate(vec![n], vec![Automorphism::new(vec![shift])]).unwrap()
    }

    #[test]
    fn generated_groups_have_the_right_order() {
        assert_eq!(cyclic(5).order(), 5);
        let swap = Automorphism::new(vec![vec![1, 0, 2, 3]]);
        let cycle = Automorphism::new(vec![vec![1, 2, 3, 0]]);
        let s4 = GroupAction::generate(vec![4], vec![swap, cycle]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.elements()[0].is_identity());
    }

    #[test]
    fn inverse_and_compose() {
        let g = Automorphism::new(vec![vec![2, 0, 1]]);
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.compose(&g).block(0), [1, 2, 0]);
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let g = Automorphism::new(vec![vec![0, 0]]);
        assert!(GroupAction::generate(vec![2], vec![g]).is_err());
    }

    #[test]
    fn orbits_and_transporters() {
        let a = cyclic(4);
        let o = a.orbits(0);
        assert_eq!(o.len(), 1);
        let k = a.transporter(0, 1, 3).unwrap();
        assert_eq!(a.elements()[k].apply(0, 1), 3);
    }

    #[test]
    fn non_functors_are_not_automorphisms() {
        let c = fixtures::chain(2);
        let flip = Automorphism::new(vec![vec![1, 0], vec![0]]);
        assert!(matches!(
            GroupAction::on_category(&c, vec![flip]),
            Err(Error::NotAutomorphism(_))
        ));
    }

    #[test]
    fn rotation_quotient_has_parallel_morphisms() {
        let (p, a) = fixtures::triangle_boundary_face_poset();
        assert!(check_horizontal(p.category(), &a).is_none());
        let q = quotient_category(p.category(), &a).unwrap();
        assert_eq!(q.category.object_count(), 2);
        assert_eq!(q.category.morphism_count(), 2);
        assert_eq!(q.category.hom(0, 1).len(), 2);
    }

    #[test]
    fn condition_r_on_the_fixtures() {
        let (t, a) = fixtures::double_filled_triangle();
        assert!(check_condition_r(&t, &a).holds);
        let (t, a) = fixtures::two_disjoint_edges();
        assert!(check_condition_r(&t, &a).holds);
        // a directed 3-cycle of edges; rotating it moves the shared vertex
        let t = Trisp::from_boundary_lists(
            vec![3, 3],
            vec![vec![], vec![vec![1, 0], vec![2, 1], vec![0, 2]]],
        )
        .unwrap();
        let g = Automorphism::new(vec![vec![1, 2, 0], vec![1, 2, 0]]);
        let a = GroupAction::on_trisp(&t, vec![g]).unwrap();
        let r = check_condition_r(&t, &a);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().face_dim, 0);
    }

    #[test]
    fn quotient_trisp_of_the_double_filled_triangle() {
        let (t, a) = fixtures::double_filled_triangle();
        let q = quotient_trisp(&t, &a);
        assert_eq!(q.trisp.counts(), [3, 3, 1]);
        assert_eq!(q.projection[2], [0, 0]);
    }

    #[test]
    fn lambda_is_an_isomorphism_for_free_actions_on_chains() {
        let (p, a) = fixtures::two_disjoint_chains();
        let en = EquivariantNerve::build(p.category(), &a).unwrap();
        let (_, report) = en.lambda_report().unwrap();
        assert!(report.is_isomorphism());
    }

    #[test]
    fn lambda_can_be_surjective_without_being_injective() {
        // x, x' < y < z, z' with x <-> x' and z <-> z' swapped
        let labels = ["x", "x'", "y", "z", "z'"].map(String::from).to_vec();
        let p =
            Poset::from_relation(labels, |a, b| (a < 2 && b >= 2) || (a == 2 && b >= 3)).unwrap();
        let g = poset_automorphism(&p, vec![1, 0, 2, 4, 3]).unwrap();
        let a = GroupAction::on_category(p.category(), vec![g]).unwrap();
        let en = EquivariantNerve::build(p.category(), &a).unwrap();
        let (_, report) = en.lambda_report().unwrap();
        assert!(report.is_surjective());
        assert_eq!(report.injective, [true, false, false]);
    }
}
