//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//! Brute-force checks come from `common`; the library is only trusted for the
//! objects under test.

mod common;

use std::cell::RefCell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trispcl::accat::{find_terminal_object, ACMap, AcyclicCategory, Poset};
use trispcl::closure::{
    candidate_closure_map, certify, check_matching_acyclic, closure_matching,
    induced_trisp_closure_map, replay_collapse, verify_trisp_closure_map, Convention,
    TrispClosureMap,
};
use trispcl::equivariant::{
    check_class_compatibility, check_condition_c, check_image_subtrisp, push_closure_map,
    quotient_poset_closure_map,
};
use trispcl::fixtures;
use trispcl::graphs::{
    barycentric, face_poset, pipeline_category_quotient, pipeline_trisp_quotient, Dgn,
    PipelineOptions,
};
use trispcl::nerve::nerve;
use trispcl::symmetry::{
    check_condition_r, condition_r_violation, induced_trisp_action, quotient_category,
    quotient_trisp, EquivariantNerve, GroupAction,
};
use trispcl::trisp::{trisps_equal_over_vertices, Trisp};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every verified closure map met by the other criteria is certified here.
#[derive(Default)]
struct Certifications {
    checked: usize,
    failures: Vec<String>,
}

thread_local! {
    static CERTIFIED: RefCell<Certifications> = RefCell::new(Certifications::default());
}

/// Matching acyclic, collapse replays step by step, ends at the red part and
/// keeps the Euler characteristic.
fn certify_checked(t: &Trisp, c: &TrispClosureMap) -> Result<(), String> {
    let m = lib(closure_matching(t, c))?;
    let acyclic = check_matching_acyclic(t, &m);
    ensure(acyclic.acyclic, || {
        format!("matching cycle {:?}", acyclic.cycle)
    })?;
    let cert = lib(certify(t, c))?;
    let end = lib(replay_collapse(t, &cert.steps))?;
    let red = t.induced_subtrisp(&c.red_mask());
    ensure(end == red, || {
        "collapse does not end at the red part".into()
    })?;
    ensure(
        end.trisp.euler_characteristic() == t.euler_characteristic(),
        || "Euler characteristic changed".into(),
    )?;
    let mut counts: Vec<i64> = t.counts().iter().map(|&c| c as i64).collect();
    let chi = |counts: &[i64]| -> i64 {
        counts
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c } else { -c })
            .sum()
    };
    let start = chi(&counts);
    for step in &cert.steps {
        counts[step.dim] -= 1;
        counts[step.dim + 1] -= 1;
        ensure(chi(&counts) == start, || format!("χ changes at {step:?}"))?;
    }
    ensure(
        t.total_simplices() - 2 * cert.steps.len() == red.trisp.total_simplices(),
        || "step count does not account for the removed simplices".into(),
    )
}

fn record(label: &str, t: &Trisp, c: &TrispClosureMap) {
    let r = certify_checked(t, c);
    CERTIFIED.with(|cell| {
        let mut s = cell.borrow_mut();
        s.checked += 1;
        if let Err(e) = r {
            s.failures.push(format!("{label}: {e}"));
        }
    });
}

fn ac1() -> Outcome {
    let (t, a) = fixtures::double_filled_triangle();
    let r = check_condition_r(&t, &a);
    ensure(r.holds, || format!("Condition R fails: {:?}", r.witness))?;
    let q = quotient_trisp(&t, &a);
    let filled = fixtures::filled_triangle();
    let eq = trisps_equal_over_vertices(&q.trisp, &filled, &[0, 1, 2]);
    ensure(eq.equal, || {
        format!("T/G is not a 2-simplex: {:?}", eq.witness)
    })?;
    // vertices b = 0, x = 1, r = 2; ψ sends [b] to [r]
    let (b, x, r) = (0, 1, 2);
    let qb = q.projection[0][b];
    let qr = q.projection[0][r];
    let mut image = vec![None; q.trisp.vertex_count()];
    image[qb] = Some(qr);
    let psi = lib(TrispClosureMap::from_image(image, Convention::Min))?;
    let v = lib(verify_trisp_closure_map(&q.trisp, &psi))?;
    ensure(v.holds, || format!("ψ fails on T/G: {:?}", v.failures))?;
    record("AC-1 ψ", &q.trisp, &psi);
    let cc = lib(check_condition_c(&t, &q, &psi))?;
    ensure(cc.holds, || "Condition C fails".into())?;
    // every lift: each blue vertex to some vertex over the image of its class
    let blue: Vec<usize> = (0..t.vertex_count())
        .filter(|&v| psi.is_blue(q.projection[0][v]))
        .collect();
    let choices: Vec<Vec<usize>> = blue
        .iter()
        .map(|&v| {
            let target = psi.map(q.projection[0][v]).unwrap();
            (0..t.vertex_count())
                .filter(|&w| q.projection[0][w] == target)
                .collect()
        })
        .collect();
    let mut lifts = vec![Vec::new()];
    for opts in &choices {
        lifts = lifts
            .into_iter()
            .flat_map(|l: Vec<usize>| {
                opts.iter().map(move |&w| {
                    let mut l = l.clone();
                    l.push(w);
                    l
                })
            })
            .collect();
    }
    for lift in &lifts {
        let mut image = vec![None; t.vertex_count()];
        for (&v, &w) in blue.iter().zip(lift) {
            image[v] = Some(w);
        }
        let phi = lib(TrispClosureMap::from_image(image, Convention::Min))?;
        let v = lib(verify_trisp_closure_map(&t, &phi))?;
        ensure(!v.holds, || format!("lift {lift:?} verifies"))?;
        let edge = v
            .failures
            .iter()
            .find(|f| f.dim == 1 && f.vertices == [b, x]);
        ensure(edge.is_some_and(|f| f.extensions.len() == 2), || {
            format!("no two-extension failure on the edge bx: {:?}", v.failures)
        })?;
    }
    Ok(format!(
        "T/G is the 2-simplex, ψ verifies, Condition C holds, {} of {} lifts fail on bx",
        lifts.len(),
        lifts.len()
    ))
}

fn lambda_case(c: &AcyclicCategory, a: &GroupAction) -> Result<bool, String> {
    let en = lib(EquivariantNerve::build(c, a))?;
    let (_, report) = lib(en.lambda_report())?;
    let brute = lambda_surjective_brute(c, &en.quotient.morphism_class, &en.quotient.category);
    ensure(report.is_surjective() == brute, || {
        format!(
            "library says surjective = {}, brute force says {brute}",
            report.is_surjective()
        )
    })?;
    ensure(brute, || {
        format!("λ not surjective: {:?}", report.lift_failures)
    })?;
    Ok(report.is_isomorphism())
}

fn ac2() -> Outcome {
    let (p, a) = fixtures::triangle_boundary_face_poset();
    lambda_case(p.category(), &a)?;
    let dgn = lib(Dgn::build(4))?;
    let iso4 = lambda_case(dgn.faces.poset.category(), &dgn.sn.on_faces)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut isos = 0;
    for _ in 0..200 {
        let (p, a) = fixtures::random_g_poset(&mut rng, 7, 6);
        isos += lambda_case(p.category(), &a)? as usize;
    }
    Ok(format!(
        "fixture, F(DG_4)/S_4 (isomorphism: {iso4}), 200 random G-posets ({isos} isomorphisms)"
    ))
}

fn ac3() -> Outcome {
    let (mut one_sided, mut other, mut fail_both) = (0, 0, 0);
    for n in 1..=5 {
        for lt in naturally_labelled_posets(n) {
            let p = poset_of(&lt);
            let k = lib(nerve(p.category()))?;
            for (f, side) in closure_like_maps(&lt) {
                let op = operator(&p, &f);
                if side != Side::Neither {
                    let c = lib(induced_trisp_closure_map(&p, &op))?;
                    let v = lib(verify_trisp_closure_map(&k.trisp, &c))?;
                    ensure(v.holds, || {
                        format!("{side:?} operator {f:?} fails on {lt:?}")
                    })?;
                    record("AC-3", &k.trisp, &c);
                    one_sided += 1;
                } else {
                    other += 1;
                    let mut fails = true;
                    for conv in [Convention::Min, Convention::Max] {
                        let c = candidate_closure_map(&op, conv);
                        let v = lib(verify_trisp_closure_map(&k.trisp, &c))?;
                        fails &= !v.holds;
                    }
                    fail_both += fails as usize;
                }
            }
        }
    }
    ensure(fail_both > 0, || {
        format!("none of {other} non-one-sided maps fails verification")
    })?;
    Ok(format!(
        "{one_sided} one-sided operators verify; {fail_both} of {other} other monotone idempotents fail under both conventions"
    ))
}

/// Equivariant one-sided closure operators on posets with at most five
/// elements under subgroups of order at most four.
struct Case {
    poset: Poset,
    action: GroupAction,
    operator: ACMap,
}

fn equivariant_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for lt in naturally_labelled_posets(n) {
            let p = poset_of(&lt);
            let maps = closure_like_maps(&lt);
            for gens in small_subgroups(&automorphisms(&lt), 4) {
                let action = poset_action(&p, &gens);
                let group: Vec<Vec<usize>> = action
                    .elements()
                    .iter()
                    .map(|g| g.block(0).to_vec())
                    .collect();
                for (f, side) in &maps {
                    if *side != Side::Neither && is_equivariant(f, &group) {
                        out.push(Case {
                            poset: p.clone(),
                            action: action.clone(),
                            operator: operator(&p, f),
                        });
                    }
                }
            }
        }
    }
    out
}

fn ac4(corpus: &[Case]) -> Outcome {
    let mut nontrivial = 0;
    for case in corpus {
        let k = lib(nerve(case.poset.category()))?;
        let ta = lib(induced_trisp_action(&k, &case.action))?;
        let c = lib(induced_trisp_closure_map(&case.poset, &case.operator))?;
        record("AC-4 upstairs", &k.trisp, &c);
        let pushed = lib(push_closure_map(&k.trisp, &ta, &c))?;
        let v = lib(verify_trisp_closure_map(
            &pushed.quotient.trisp,
            &pushed.map,
        ))?;
        ensure(v.holds, || {
            format!(
                "pushed map fails for operator {:?}: {:?}",
                case.operator.objects, v.failures
            )
        })?;
        record("AC-4 pushed", &pushed.quotient.trisp, &pushed.map);
        nontrivial += (!pushed.map.blue().is_empty()) as usize;
    }
    Ok(format!(
        "{} equivariant operators pushed and verified ({nontrivial} with blue vertices)",
        corpus.len()
    ))
}

fn quotient_checks(p: &Poset, a: &GroupAction, f: &ACMap) -> Result<(), String> {
    let cc = lib(check_class_compatibility(p, a, f))?;
    ensure(cc.holds, || {
        format!("class compatibility fails: {:?}", cc.witnesses)
    })?;
    let im = lib(check_image_subtrisp(p, a, f))?;
    ensure(im.equal, || {
        format!(
            "image subtrisp differs: {:?} vs {:?}",
            im.induced_counts, im.image_counts
        )
    })?;
    let qc = lib(quotient_poset_closure_map(p, a, f))?;
    record("AC-5", &qc.nerve.trisp, &qc.map);
    Ok(())
}

fn ac5(corpus: &[Case]) -> Outcome {
    for case in corpus {
        quotient_checks(&case.poset, &case.action, &case.operator)?;
    }
    let dgn = lib(Dgn::build(4))?;
    quotient_checks(&dgn.faces.poset, &dgn.sn.on_faces, &dgn.closure)?;
    Ok(format!(
        "{} corpus cases and F(DG_4) under S_4",
        corpus.len()
    ))
}

fn ac6() -> Outcome {
    CERTIFIED.with(|cell| {
        let s = cell.borrow();
        ensure(s.failures.is_empty(), || {
            format!(
                "{} of {} fail; first: {}",
                s.failures.len(),
                s.checked,
                s.failures[0]
            )
        })?;
        ensure(s.checked > 0, || "nothing certified".into())?;
        Ok(format!("{} verified closure maps certified", s.checked))
    })
}

fn ac7() -> Outcome {
    let r4 = lib(pipeline_trisp_quotient(4, PipelineOptions::default()))?;
    ensure(r4.success, || "n = 4 pipeline failed".into())?;
    ensure(
        r4.stages
            .iter()
            .any(|s| s.name == "identify with partition quotient"),
        || "n = 4: collapsed trisp not identified with the partition quotient".into(),
    )?;
    ensure(r4.euler_characteristic == 1, || {
        format!("χ = {}", r4.euler_characteristic)
    })?;
    ensure(r4.point_certificate.is_some(), || {
        format!("no point certificate: {:?}", r4.point_search_skipped)
    })?;
    let total: usize = r4.collapsed_counts.iter().sum();
    ensure(
        r4.point_certificate.as_ref().unwrap().len() * 2 + 1 == total,
        || "point certificate does not remove everything but a vertex".into(),
    )?;
    let dgn = lib(Dgn::build(4))?;
    let bd = lib(barycentric(&dgn.complex.trisp))?;
    ensure(bd.trisp.vertex_count() == 25, || {
        format!("bd(DG_4) has {} vertices", bd.trisp.vertex_count())
    })?;
    let r5 = lib(pipeline_trisp_quotient(5, PipelineOptions::default()))?;
    ensure(r5.success, || "n = 5 pipeline failed".into())?;
    ensure(r5.euler_characteristic == 1, || {
        format!("n = 5: χ = {}", r5.euler_characteristic)
    })?;
    Ok(format!(
        "n = 4 collapses to {:?} then a point; n = 5 collapses to {:?}{}",
        r4.collapsed_counts,
        r5.collapsed_counts,
        if r5.point_certificate.is_some() {
            " then a point"
        } else {
            " (point search skipped)"
        }
    ))
}

fn ac8() -> Outcome {
    let mut notes = Vec::new();
    for (n, classes) in [(4, 3), (5, 5)] {
        let dgn = lib(Dgn::build(n))?;
        let pq = lib(quotient_category(
            dgn.partitions.poset.category(),
            &dgn.sn.on_partitions,
        ))?;
        let c = &pq.category;
        ensure(c.object_count() == classes, || {
            format!("n = {n}: {} classes", c.object_count())
        })?;
        let t = find_terminal_object(c).ok_or_else(|| format!("n = {n}: no terminal class"))?;
        let member = pq.object_members(t)[0];
        let mut expected = vec![1; n - 1];
        expected[0] = 2;
        ensure(dgn.partitions.number_type(member) == expected, || {
            format!(
                "n = {n}: terminal type {:?}",
                dgn.partitions.number_type(member)
            )
        })?;
        ensure(
            (0..c.object_count()).all(|x| x == t || c.hom(x, t).len() == 1),
            || format!("n = {n}: parallel morphisms into the terminal class"),
        )?;
        let r = lib(pipeline_category_quotient(n, PipelineOptions::default()))?;
        ensure(r.success, || format!("n = {n}: pipeline failed"))?;
        let steps = r
            .point_certificate
            .as_ref()
            .ok_or_else(|| format!("n = {n}: no cone certificate"))?;
        let total: usize = r.collapsed_counts.iter().sum();
        ensure(steps.len() * 2 + 1 == total, || {
            format!("n = {n}: cone certificate leaves more than a vertex")
        })?;
        notes.push(format!(
            "n = {n}: {classes} classes, terminal {}, collapsed {:?}",
            r.terminal_class.unwrap_or_default(),
            r.collapsed_counts
        ));
    }
    Ok(notes.join("; "))
}

fn ac9() -> Outcome {
    let dgn = lib(Dgn::build(4))?;
    let t = &dgn.complex.trisp;
    let r = check_condition_r(t, &dgn.sn.on_complex);
    let w = r
        .witness
        .ok_or_else(|| "Condition R holds on DG_4".to_string())?;
    // (1 3)(2 4) on vertices 1..4
    let g = dgn
        .sn
        .permutations
        .iter()
        .position(|p| p == &[2, 3, 0, 1])
        .ok_or_else(|| "(1 3)(2 4) missing from S_4".to_string())?;
    let mask = 1 << dgn.complex.edge_index(0, 1) | 1 << dgn.complex.edge_index(2, 3);
    let (d, s) = dgn
        .complex
        .simplex_of_mask(mask)
        .ok_or_else(|| "{12, 34} is not a simplex".to_string())?;
    let element = &dgn.sn.on_complex.elements()[g];
    ensure(condition_r_violation(t, element, d, s).is_some(), || {
        "(1 3)(2 4) does not violate Condition R on {12, 34}".into()
    })?;
    let bd = lib(barycentric(t))?;
    let induced = lib(induced_trisp_action(&bd, &dgn.sn.on_faces))?;
    let rb = check_condition_r(&bd.trisp, &induced);
    ensure(rb.holds, || {
        format!("fails on the subdivision: {:?}", rb.witness)
    })?;
    let simplex_label = |d: usize, s: usize| dgn.complex.mask_label(dgn.complex.masks[d][s]);
    Ok(format!(
        "DG_4 fails (g = {:?}, simplex {}, face {}); (1 3)(2 4) on {{12, 34}} fails; subdivision holds",
        dgn.sn.permutations[w.element],
        simplex_label(w.dim, w.simplex),
        simplex_label(w.face_dim, w.face)
    ))
}

/// The same permutations act on the opposite category.
fn opposite_action(a: &GroupAction) -> GroupAction {
    GroupAction::from_elements(
        a.sizes().to_vec(),
        a.generators().to_vec(),
        a.elements().to_vec(),
    )
    .expect("same shape")
}

fn ac10() -> Outcome {
    let mut cases: Vec<(AcyclicCategory, GroupAction)> = Vec::new();
    for c in [
        fixtures::chain(2),
        fixtures::chain(3),
        fixtures::chain(4),
        fixtures::antichain(3),
        fixtures::parallel_pair(),
    ] {
        let a = GroupAction::trivial(vec![c.object_count(), c.morphism_count()]);
        cases.push((c, a));
    }
    for (p, a) in [
        fixtures::triangle_boundary_face_poset(),
        fixtures::two_disjoint_chains(),
    ] {
        cases.push((p.category().opposite(), opposite_action(&a)));
        cases.push((p.category().clone(), a));
    }
    let dgn = lib(Dgn::build(3))?;
    cases.push((dgn.faces.poset.category().clone(), dgn.sn.on_faces.clone()));
    for t in fixtures::trisp_corpus() {
        if let Ok(fp) = face_poset(&t) {
            let c = fp.poset.category().clone();
            let a = GroupAction::trivial(vec![c.object_count(), c.morphism_count()]);
            cases.push((c, a));
        }
    }
    cases.retain(|(c, _)| c.morphism_count() <= 10);
    let fixture_count = cases.len();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        cases.push(fixtures::random_g_category(&mut rng, 7, 6, 40));
    }
    let mut merged = 0;
    for (c, a) in &cases {
        let q = lib(quotient_category(c, a))?;
        let oracle = decomposition_classes(c, a);
        ensure(same_partition(&q.morphism_class, &oracle), || {
            format!("classes {:?} vs oracle {oracle:?}", q.morphism_class)
        })?;
        merged += (q.category.morphism_count() < a.orbits(1).len()) as usize;
    }
    Ok(format!(
        "{fixture_count} fixtures and 100 random categories agree ({merged} merge orbits)"
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: u32, f: &dyn Fn() -> Outcome, bound: Option<Duration>| {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(b)) = (&outcome, bound) {
            if elapsed > b {
                outcome = Err(format!("took {elapsed:.2?}, bound {b:?}"));
            }
        }
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] AC-{id} ({elapsed:.2?}): {detail}");
    };
    let secs = Duration::from_secs;
    report(1, &ac1, Some(secs(1)));
    report(2, &ac2, Some(secs(120)));
    report(3, &ac3, Some(secs(300)));
    let corpus = equivariant_corpus();
    report(4, &|| ac4(&corpus), None);
    report(5, &|| ac5(&corpus), None);
    report(6, &ac6, None);
    report(7, &ac7, Some(secs(60)));
    report(8, &ac8, Some(secs(300)));
    report(9, &ac9, Some(secs(60)));
    report(10, &ac10, None);
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
