//! Moving closure maps across quotients by group actions: pushing forward to
//! `T/G`, lifting back under Condition C, and the poset-quotient statements
//! relating `Δ(P/G)` to `Δ(φ(P)/G)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::accat::{check_closure_operator, ACMap, AcyclicCategory, MorphismImage, Poset};
use crate::closure::{verify_trisp_closure_map, Convention, TrispClosureMap};
use crate::error::{Error, Result};
use crate::nerve::{nerve, Nerve};
use crate::symmetry::{
    check_condition_r, quotient_category, quotient_trisp, Automorphism, GroupAction,
    QuotientCategory, QuotientTrisp,
};
use crate::trisp::{trisps_equal_over_vertices, EqualityReport, Trisp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub map_equivariant: bool,
    pub blue_closed: bool,
    pub red_closed: bool,
    /// `(element, vertex)` pairs where a check failed.
    pub witnesses: Vec<(usize, usize)>,
}

impl EquivarianceReport {
    pub fn holds(&self) -> bool {
        self.map_equivariant && self.blue_closed && self.red_closed
    }
}

/// Checks `gB = B`, `gR = R` and `φ(gb) = gφ(b)` for every group element.
pub fn check_equivariant(action: &GroupAction, c: &TrispClosureMap) -> EquivarianceReport {
    let mut report = EquivarianceReport {
        map_equivariant: true,
        blue_closed: true,
        red_closed: true,
        witnesses: Vec::new(),
    };
    for (k, g) in action.elements().iter().enumerate() {
        for v in 0..c.vertex_count() {
            let gv = g.simplex(0, v);
            match (c.map(v), c.map(gv)) {
                (Some(r), Some(gr)) => {
                    if gr != g.simplex(0, r) {
                        report.map_equivariant = false;
                        report.witnesses.push((k, gv));
                    }
                }
                (Some(_), None) => {
                    report.blue_closed = false;
                    report.witnesses.push((k, v));
                }
                (None, Some(_)) => {
                    report.red_closed = false;
                    report.witnesses.push((k, v));
                }
                (None, None) => {}
            }
        }
    }
    report
}

/// A closure map on `T/G` with the quotient it lives on.
#[derive(Clone, Debug)]
pub struct PushedClosureMap {
    pub quotient: QuotientTrisp,
    pub map: TrispClosureMap,
}

/// `φ_G(Gb) = Gφ(b)` on `T/G`. Requires Condition R, a verified `φ`, and an
/// equivariant `φ` with invariant blue and red sets.
pub fn push_closure_map(
    t: &Trisp,
    action: &GroupAction,
    c: &TrispClosureMap,
) -> Result<PushedClosureMap> {
    let eq = check_equivariant(action, c);
    if !eq.holds() {
        let what = if !eq.blue_closed {
            "blue set is not invariant"
        } else if !eq.red_closed {
            "red set is not invariant"
        } else {
            "map does not commute with the action"
        };
        return Err(Error::NotEquivariant(format!(
            "{what}: {:?}",
            eq.witnesses.first()
        )));
    }
    let r = check_condition_r(t, action);
    if let Some(w) = r.witness {
        return Err(Error::ConditionR(format!(
            "element {} moves the common face {} of dimension {} of simplex {} of dimension {}",
            w.element, w.face, w.face_dim, w.simplex, w.dim
        )));
    }
    let verified = verify_trisp_closure_map(t, c)?;
    if let Some(f) = verified.failures.first() {
        return Err(Error::NotClosureMap(format!(
            "simplex {:?} has {} extensions by {}",
            f.vertices,
            f.extensions.len(),
            f.target
        )));
    }
    let quotient = quotient_trisp(t, action);
    let proj = &quotient.projection[0];
    let image = quotient.representatives[0]
        .iter()
        .map(|&v| c.map(v).map(|r| proj[r]))
        .collect();
    let map = TrispClosureMap::from_image(image, c.convention())?;
    Ok(PushedClosureMap { quotient, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCEntry {
    pub blue: usize,
    /// `(r, number of 1-simplices with vertex set {b, r})` for `r ∈ ψ(Gb)`
    /// joined to `b` at least once.
    pub candidates: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCReport {
    pub holds: bool,
    pub entries: Vec<ConditionCEntry>,
    /// `r_b` per vertex of `T` when the condition holds.
    pub assignment: Option<Vec<Option<usize>>>,
}

/// Condition C for a closure map `psi` on `T/G` (given by `q`): every blue
/// `b` is joined by exactly one 1-simplex to exactly one vertex of `ψ(Gb)`.
pub fn check_condition_c(
    t: &Trisp,
    q: &QuotientTrisp,
    psi: &TrispClosureMap,
) -> Result<ConditionCReport> {
    if psi.vertex_count() != q.trisp.vertex_count() {
        return Err(Error::Malformed(
            "closure map does not match the quotient".into(),
        ));
    }
    let proj = &q.projection[0];
    let mut joined: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.vertex_count()];
    for e in 0..t.count(1) {
        let (a, b) = (t.face(1, e, 1), t.face(1, e, 0));
        for (x, y) in [(a, b), (b, a)] {
            match joined[x].iter_mut().find(|(r, _)| *r == y) {
                Some(entry) => entry.1 += 1,
                None => joined[x].push((y, 1)),
            }
        }
    }
    let mut entries = Vec::new();
    let mut assignment = vec![None; t.vertex_count()];
    let mut holds = true;
    for b in 0..t.vertex_count() {
        let Some(target) = psi.map(proj[b]) else {
            continue;
        };
        let mut candidates: Vec<(usize, usize)> = joined[b]
            .iter()
            .copied()
            .filter(|&(r, _)| proj[r] == target)
            .collect();
        candidates.sort_unstable();
        if let [(r, 1)] = candidates.as_slice() {
            assignment[b] = Some(*r);
        } else {
            holds = false;
        }
        entries.push(ConditionCEntry {
            blue: b,
            candidates,
        });
    }
    Ok(ConditionCReport {
        holds,
        entries,
        assignment: holds.then_some(assignment),
    })
}

/// The candidate lift `b ↦ r_b` from Condition C, without the simplicial
/// hypothesis. It need not be a closure map.
pub fn lift_candidate(
    t: &Trisp,
    q: &QuotientTrisp,
    psi: &TrispClosureMap,
) -> Result<TrispClosureMap> {
    let c = check_condition_c(t, q, psi)?;
    let Some(assignment) = c.assignment else {
        let bad = c
            .entries
            .iter()
            .find(|e| !matches!(e.candidates.as_slice(), [(_, 1)]));
        return Err(Error::ConditionC(format!(
            "blue vertex candidates: {bad:?}"
        )));
    };
    TrispClosureMap::from_image(assignment, psi.convention())
}

/// Lifts a closure map on `T/G` to one on `T`. Requires `T` simplicial,
/// Condition R, `ψ` verified on `T/G` and Condition C.
pub fn lift_closure_map(
    t: &Trisp,
    action: &GroupAction,
    psi: &TrispClosureMap,
) -> Result<TrispClosureMap> {
    if !t.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let r = check_condition_r(t, action);
    if let Some(w) = r.witness {
        return Err(Error::ConditionR(format!("witness {w:?}")));
    }
    let q = quotient_trisp(t, action);
    let verified = verify_trisp_closure_map(&q.trisp, psi)?;
    if !verified.holds {
        return Err(Error::NotClosureMap(format!("{:?}", verified.failures[0])));
    }
    lift_candidate(t, &q, psi)
}

/// The restriction of an action to a full subcategory on an invariant set of
/// objects.
pub fn restrict_action(
    action: &GroupAction,
    sub: &AcyclicCategory,
    object_map: &[Option<usize>],
    morphism_map: &[Option<usize>],
) -> Result<GroupAction> {
    let restrict = |g: &Automorphism| -> Result<Automorphism> {
        let mut objects = vec![0; sub.object_count()];
        for (x, &nx) in object_map.iter().enumerate() {
            if let Some(nx) = nx {
                objects[nx] = object_map[g.object(x)]
                    .ok_or_else(|| Error::NotEquivariant("object set is not invariant".into()))?;
            }
        }
        let mut morphisms = vec![0; sub.morphism_count()];
        for (m, &nm) in morphism_map.iter().enumerate() {
            if let Some(nm) = nm {
                morphisms[nm] = morphism_map[g.morphism(m)]
                    .ok_or_else(|| Error::NotEquivariant("morphism set is not invariant".into()))?;
            }
        }
        Ok(Automorphism::new(vec![objects, morphisms]))
    };
    let generators = action
        .generators()
        .iter()
        .map(restrict)
        .collect::<Result<Vec<_>>>()?;
    GroupAction::on_category(sub, generators)
}

/// First `(element, object)` with `f(gx) ≠ g f(x)`.
pub fn check_map_equivariant(action: &GroupAction, f: &ACMap) -> Option<(usize, usize)> {
    for (k, g) in action.elements().iter().enumerate() {
        for x in 0..f.objects.len() {
            if f.object(g.object(x)) != g.object(f.object(x)) {
                return Some((k, x));
            }
        }
    }
    None
}

/// One-sided equivariant closure operator data shared by the checks below.
struct Prepared {
    convention: Convention,
    image: Vec<usize>,
}

fn prepare(p: &Poset, action: &GroupAction, f: &ACMap) -> Result<Prepared> {
    let report = check_closure_operator(p, f)?;
    let convention = if report.is_descending_closure() {
        Convention::Min
    } else if report.is_ascending_closure() {
        Convention::Max
    } else {
        return Err(Error::NotClosureOperator(format!("{:?}", report.witnesses)));
    };
    if let Some((k, x)) = check_map_equivariant(action, f) {
        return Err(Error::NotEquivariant(format!(
            "f(gx) ≠ g f(x) for element {k}, object {x}"
        )));
    }
    let image: Vec<usize> = (0..p.len()).filter(|&x| f.object(x) == x).collect();
    Ok(Prepared { convention, image })
}

/// `φ(P)` as a full subcategory with the restricted action and its quotient.
pub struct ImageQuotient {
    pub elements: Vec<usize>,
    pub category: AcyclicCategory,
    pub object_map: Vec<Option<usize>>,
    pub morphism_map: Vec<Option<usize>>,
    pub action: GroupAction,
    pub quotient: QuotientCategory,
}

pub fn image_quotient(p: &Poset, action: &GroupAction, f: &ACMap) -> Result<ImageQuotient> {
    let prepared = prepare(p, action, f)?;
    let (category, object_map, morphism_map) = p.category().full_subcategory(&prepared.image);
    let sub_action = restrict_action(action, &category, &object_map, &morphism_map)?;
    let quotient = quotient_category(&category, &sub_action)?;
    Ok(ImageQuotient {
        elements: prepared.image,
        category,
        object_map,
        morphism_map,
        action: sub_action,
        quotient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCompatibilityReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// Morphism pairs `(b < a, c < a)` of equal class whose images differ.
    pub witnesses: Vec<(usize, usize)>,
}

/// Class of an image morphism: a morphism class or the identity at an object
/// class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ImageClass {
    Morphism(usize),
    Identity(usize),
}

/// For all morphisms `b → a`, `c → a` of `P` in the same class of `P/G`,
/// checks that `f(b) → f(a)` and `f(c) → f(a)` are in the same class of
/// `P/G` and of `f(P)/G`. Ascending operators are checked on the opposite
/// poset, where they are descending.
pub fn check_class_compatibility(
    p: &Poset,
    action: &GroupAction,
    f: &ACMap,
) -> Result<ClassCompatibilityReport> {
    let prepared = prepare(p, action, f)?;
    let (p, f) = match prepared.convention {
        Convention::Min => (p.clone(), f.clone()),
        Convention::Max => (p.opposite(), f.clone()),
    };
    let c = p.category();
    let q = quotient_category(c, action)?;
    let img = image_quotient(&p, action, &f)?;
    let in_p = |m: usize| -> ImageClass {
        match f.morphism(m) {
            MorphismImage::Morphism(n) => ImageClass::Morphism(q.morphism_class[n]),
            MorphismImage::Identity(x) => ImageClass::Identity(q.object_class[x]),
        }
    };
    let in_image = |m: usize| -> ImageClass {
        match f.morphism(m) {
            MorphismImage::Morphism(n) => ImageClass::Morphism(
                img.quotient.morphism_class[img.morphism_map[n].expect("image morphism")],
            ),
            MorphismImage::Identity(x) => ImageClass::Identity(
                img.quotient.object_class[img.object_map[x].expect("image object")],
            ),
        }
    };
    let mut report = ClassCompatibilityReport {
        holds: true,
        pairs_checked: 0,
        witnesses: Vec::new(),
    };
    for a in 0..c.object_count() {
        let incoming = c.incoming(a);
        for (i, &m1) in incoming.iter().enumerate() {
            for &m2 in &incoming[i + 1..] {
                if q.morphism_class[m1] != q.morphism_class[m2] {
                    continue;
                }
                report.pairs_checked += 1;
                if in_p(m1) != in_p(m2) || in_image(m1) != in_image(m2) {
                    report.holds = false;
                    report.witnesses.push((m1, m2));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageSubtrispReport {
    pub equal: bool,
    pub induced_counts: Vec<usize>,
    pub image_counts: Vec<usize>,
    pub equality: EqualityReport,
}

/// Compares the subtrisp of `Δ(P/G)` induced by the classes meeting `f(P)`
/// with `Δ(f(P)/G)`, matching vertices through the classes.
pub fn check_image_subtrisp(
    p: &Poset,
    action: &GroupAction,
    f: &ACMap,
) -> Result<ImageSubtrispReport> {
    let img = image_quotient(p, action, f)?;
    let q = quotient_category(p.category(), action)?;
    let full = nerve(&q.category)?;
    let mut keep = vec![false; q.category.object_count()];
    let mut image_class_of = vec![usize::MAX; q.category.object_count()];
    for &x in &img.elements {
        let class = q.object_class[x];
        keep[class] = true;
        image_class_of[class] = img.quotient.object_class[img.object_map[x].unwrap()];
    }
    let induced = full.trisp.induced_subtrisp(&keep);
    let right = nerve(&img.quotient.category)?;
    let vertices: Vec<usize> = induced.inclusion.first().map_or(Vec::new(), |inc| {
        inc.iter().map(|&class| image_class_of[class]).collect()
    });
    let equality = trisps_equal_over_vertices(&induced.trisp, &right.trisp, &vertices);
    Ok(ImageSubtrispReport {
        equal: equality.equal,
        induced_counts: induced.trisp.counts().to_vec(),
        image_counts: right.trisp.counts().to_vec(),
        equality,
    })
}

/// The closure map `[b] ↦ [f(b)]` on `Δ(P/G)` with its quotient and nerve.
#[derive(Clone, Debug)]
pub struct QuotientClosure {
    pub quotient: QuotientCategory,
    pub nerve: Nerve,
    pub map: TrispClosureMap,
}

/// The closure map on `Δ(P/G)` induced by an equivariant one-sided closure
/// operator; ascending operators use the maximal convention. The result is
/// verified before it is returned.
pub fn quotient_poset_closure_map(
    p: &Poset,
    action: &GroupAction,
    f: &ACMap,
) -> Result<QuotientClosure> {
    let prepared = prepare(p, action, f)?;
    let quotient = quotient_category(p.category(), action)?;
    let n = nerve(&quotient.category)?;
    let classes = quotient.category.object_count();
    let mut image: Vec<Option<usize>> = vec![None; classes];
    let red: HashSet<usize> = prepared
        .image
        .iter()
        .map(|&x| quotient.object_class[x])
        .collect();
    for x in 0..p.len() {
        let class = quotient.object_class[x];
        if red.contains(&class) {
            continue;
        }
        let target = quotient.object_class[f.object(x)];
        match image[class] {
            Some(t) if t != target => {
                return Err(Error::NotEquivariant(format!(
                    "class of {x} has two images"
                )));
            }
            _ => image[class] = Some(target),
        }
    }
    let map = TrispClosureMap::from_image(image, prepared.convention)?;
    let verified = verify_trisp_closure_map(&n.trisp, &map)?;
    if let Some(f) = verified.failures.first() {
        return Err(Error::NotClosureMap(format!(
            "quotient simplex {:?} has {} extensions by {}",
            f.vertices,
            f.extensions.len(),
            f.target
        )));
    }
    Ok(QuotientClosure {
        quotient,
        nerve: n,
        map,
    })
}
