//! Small named examples and seeded random generators.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::accat::{AcyclicCategory, Morphism, Poset};
use crate::symmetry::{poset_automorphism, Automorphism, GroupAction};
use crate::trisp::Trisp;

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + (i % 26) as u8) as char).to_string())
        .collect()
}

/// The total order `0 < 1 < ⋯ < k-1`.
pub fn chain(k: usize) -> AcyclicCategory {
    AcyclicCategory::from_strict_order(letters(k), |x, y| x < y)
}

pub fn chain_poset(k: usize) -> Poset {
    Poset::try_from_category(chain(k)).expect("chains are posets")
}

pub fn antichain(k: usize) -> AcyclicCategory {
    AcyclicCategory::from_strict_order(letters(k), |_, _| false)
}

/// Two objects with two parallel morphisms `0 → 1`.
pub fn parallel_pair() -> AcyclicCategory {
    let m = |label: &str| Morphism {
        source: 0,
        target: 1,
        label: label.into(),
    };
    AcyclicCategory::new(letters(2), vec![m("f"), m("g")], vec![]).expect("in range")
}

/// Face poset of the boundary of a triangle (vertices `0,1,2`, then edges
/// `01, 02, 12`) with the rotation `v ↦ v+1 mod 3` generating `Z_3`.
pub fn triangle_boundary_face_poset() -> (Poset, GroupAction) {
    let faces: Vec<Vec<usize>> = vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
    ];
    let labels = faces
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect::<String>())
        .collect();
    let p = Poset::from_relation(labels, |x, y| {
        faces[x].len() < faces[y].len() && faces[x].iter().all(|v| faces[y].contains(v))
    })
    .expect("inclusion is a strict order");
    let rotate = |f: &Vec<usize>| {
        let mut g: Vec<usize> = f.iter().map(|v| (v + 1) % 3).collect();
        g.sort_unstable();
        faces.iter().position(|h| *h == g).unwrap()
    };
    let objects = faces.iter().map(rotate).collect();
    let g = poset_automorphism(&p, objects).expect("rotation is an automorphism");
    let action = GroupAction::on_category(p.category(), vec![g]).expect("valid action");
    (p, action)
}

/// Two disjoint 2-chains `a1 < b1`, `a2 < b2` (objects `a1, b1, a2, b2`) with
/// `Z_2` exchanging them.
pub fn two_disjoint_chains() -> (Poset, GroupAction) {
    let labels = vec!["a1".into(), "b1".into(), "a2".into(), "b2".into()];
    let p = Poset::from_relation(labels, |x, y| x % 2 == 0 && y == x + 1).expect("strict order");
    let g = poset_automorphism(&p, vec![2, 3, 0, 1]).expect("swap is an automorphism");
    let action = GroupAction::on_category(p.category(), vec![g]).expect("valid action");
    (p, action)
}

/// A single edge `0 - 1`.
pub fn edge() -> Trisp {
    Trisp::from_simplices(2, &[vec![0, 1]]).expect("valid")
}

pub fn filled_triangle() -> Trisp {
    Trisp::from_simplices(3, &[vec![0, 1, 2]]).expect("valid")
}

pub fn hollow_triangle() -> Trisp {
    Trisp::from_simplices(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).expect("valid")
}

/// Vertices `b = 0`, `x = 1`, `r = 2`, three edges and two 2-simplices with
/// the same boundary; `Z_2` exchanges the 2-simplices.
pub fn double_filled_triangle() -> (Trisp, GroupAction) {
    let t = Trisp::from_boundary_lists(
        vec![3, 3, 2],
        vec![
            vec![],
            vec![vec![1, 0], vec![2, 0], vec![2, 1]],
            vec![vec![2, 1, 0], vec![2, 1, 0]],
        ],
    )
    .expect("valid");
    let g = Automorphism::new(vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0]]);
    let action = GroupAction::on_trisp(&t, vec![g]).expect("valid action");
    (t, action)
}

/// Two disjoint edges `r1 - b1`, `r2 - b2` (vertices `r1, b1, r2, b2`) with
/// `Z_2` exchanging them.
pub fn two_disjoint_edges() -> (Trisp, GroupAction) {
    let t = Trisp::from_simplices(4, &[vec![0, 1], vec![2, 3]]).expect("valid");
    let g = Automorphism::new(vec![vec![2, 3, 0, 1], vec![1, 0]]);
    let action = GroupAction::on_trisp(&t, vec![g]).expect("valid action");
    (t, action)
}

/// Assorted small valid regular trisps.
pub fn trisp_corpus() -> Vec<Trisp> {
    let mut out = vec![
        Trisp::point(),
        edge(),
        filled_triangle(),
        hollow_triangle(),
        double_filled_triangle().0,
        two_disjoint_edges().0,
        Trisp::from_simplices(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .expect("valid"),
        Trisp::from_simplices(4, &[vec![0, 1, 2, 3]]).expect("valid"),
    ];
    let nerves = [
        parallel_pair(),
        chain(4),
        triangle_boundary_face_poset().0.into_category(),
    ];
    for c in &nerves {
        out.push(crate::nerve::nerve(c).expect("valid category").trisp);
    }
    out
}

/// A finite permutation group acting on `0..n`, given by generators.
struct GSet {
    n: usize,
    generators: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
}

/// A random set with an action of a group of order at most `max_order`
/// (cyclic, or `S_3` when `max_order ≥ 6`), built from transitive pieces.
fn random_g_set<R: Rng>(rng: &mut R, max_elements: usize, max_order: usize) -> GSet {
    let max_order = max_order.clamp(1, 6);
    let symmetric = max_order >= 6 && rng.gen_bool(0.3);
    let k = if symmetric {
        6
    } else if max_order >= 2 && rng.gen_bool(0.9) {
        rng.gen_range(2..=max_order)
    } else {
        rng.gen_range(1..=max_order)
    };
    let sizes: Vec<usize> = if symmetric {
        vec![1, 2, 3, 6]
    } else {
        (1..=k).filter(|d| k % d == 0).collect()
    };
    let target = rng.gen_range((max_elements / 2).max(1)..=max_elements.max(1));
    let mut pieces = Vec::new();
    let mut total = 0;
    while total < target {
        let fits: Vec<usize> = sizes
            .iter()
            .copied()
            .filter(|&s| total + s <= target)
            .collect();
        let Some(&s) = fits.choose(rng) else { break };
        pieces.push(s);
        total += s;
    }
    let gens = if symmetric { 2 } else { 1 };
    let mut generators = vec![Vec::with_capacity(total); gens];
    let mut orbits = Vec::new();
    let mut base = 0;
    // S_3 elements as permutations of {0,1,2}, for the regular piece
    let s3: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let mul = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    for &s in &pieces {
        orbits.push((base..base + s).collect());
        if symmetric {
            let (swap, cycle): (Vec<usize>, Vec<usize>) = match s {
                1 => (vec![0], vec![0]),
                2 => (vec![1, 0], vec![0, 1]),
                3 => (vec![1, 0, 2], vec![1, 2, 0]),
                _ => {
                    let pos = |p: [usize; 3]| s3.iter().position(|&q| q == p).unwrap();
                    (
                        s3.iter().map(|&p| pos(mul([1, 0, 2], p))).collect(),
                        s3.iter().map(|&p| pos(mul([1, 2, 0], p))).collect(),
                    )
                }
            };
            generators[0].extend(swap.into_iter().map(|x| x + base));
            generators[1].extend(cycle.into_iter().map(|x| x + base));
        } else {
            generators[0].extend((0..s).map(|x| base + (x + 1) % s));
        }
        base += s;
    }
    GSet {
        n: total,
        generators,
        orbits,
    }
}

fn set_group_elements(set: &GSet) -> Vec<Vec<usize>> {
    let gens = set
        .generators
        .iter()
        .map(|g| Automorphism::new(vec![g.clone()]))
        .collect();
    GroupAction::generate(vec![set.n], gens)
        .expect("generators are permutations")
        .elements()
        .iter()
        .map(|g| g.block(0).to_vec())
        .collect()
}

/// A random poset with at most `max_elements` elements and a horizontal
/// action of a group of order at most `max_order`.
pub fn random_g_poset<R: Rng>(
    rng: &mut R,
    max_elements: usize,
    max_order: usize,
) -> (Poset, GroupAction) {
    let set = random_g_set(rng, max_elements, max_order);
    let elements = set_group_elements(&set);
    let mut rank: Vec<usize> = (0..set.orbits.len()).collect();
    rank.shuffle(rng);
    let mut orbit_of = vec![0; set.n];
    for (o, members) in set.orbits.iter().enumerate() {
        for &x in members {
            orbit_of[x] = o;
        }
    }
    let mut rel = vec![vec![false; set.n]; set.n];
    let density = rng.gen_range(0.4..0.9);
    for (o1, m1) in set.orbits.iter().enumerate() {
        for (o2, m2) in set.orbits.iter().enumerate() {
            if rank[o1] >= rank[o2] || !rng.gen_bool(density) {
                continue;
            }
            // several targets per orbit pair give parallel morphisms downstairs
            let x = m1[0];
            let first = *m2.choose(rng).unwrap();
            for &y in m2 {
                if y == first || rng.gen_bool(0.3) {
                    for g in &elements {
                        rel[g[x]][g[y]] = true;
                    }
                }
            }
        }
    }
    // transitive closure preserves invariance
    for k in 0..set.n {
        for i in 0..set.n {
            if rel[i][k] {
                for j in 0..set.n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    let labels = (0..set.n).map(|x| x.to_string()).collect();
    let p = Poset::from_relation(labels, |x, y| rel[x][y])
        .expect("rank-increasing relation is a strict order");
    let gens = set
        .generators
        .iter()
        .map(|g| poset_automorphism(&p, g.clone()).expect("relation is invariant"))
        .collect();
    let action = GroupAction::on_category(p.category(), gens).expect("valid action");
    (p, action)
}

/// A random free category on a directed acyclic multigraph with at most
/// `max_objects` objects, a horizontal action of a group of order at most
/// `max_order`, and at most `max_morphisms` morphisms (retrying as needed).
pub fn random_g_category<R: Rng>(
    rng: &mut R,
    max_objects: usize,
    max_order: usize,
    max_morphisms: usize,
) -> (AcyclicCategory, GroupAction) {
    loop {
        let set = random_g_set(rng, max_objects, max_order);
        let elements = set_group_elements(&set);
        let mut rank: Vec<usize> = (0..set.orbits.len()).collect();
        rank.shuffle(rng);
        let mut edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for (o1, m1) in set.orbits.iter().enumerate() {
            for (o2, m2) in set.orbits.iter().enumerate() {
                if rank[o1] >= rank[o2] || !rng.gen_bool(0.4) {
                    continue;
                }
                let tags = if rng.gen_bool(0.25) { 2 } else { 1 };
                for tag in 0..tags {
                    let (x, y) = (m1[0], *m2.choose(rng).unwrap());
                    for g in &elements {
                        edges.insert((g[x], g[y], tag));
                    }
                }
            }
        }
        let edges: Vec<(usize, usize, usize)> = edges.into_iter().collect();
        if edges.len() > max_morphisms {
            continue;
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(s, t, _)| (s, t)).collect();
        let labels = (0..set.n).map(|x| x.to_string()).collect();
        let c = AcyclicCategory::free(labels, &pairs).expect("rank-increasing edges are acyclic");
        if c.morphism_count() > max_morphisms {
            continue;
        }
        let edge_index: HashMap<(usize, usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let by_label: HashMap<&str, usize> = c
            .morphisms()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.as_str(), i))
            .collect();
        let gens = set
            .generators
            .iter()
            .map(|g| {
                let morphisms = c
                    .morphisms()
                    .iter()
                    .map(|m| {
                        let image: Vec<String> = m
                            .label
                            .split('.')
                            .map(|e| {
                                let (s, t, tag) = edges[e[1..].parse::<usize>().unwrap()];
                                format!("e{}", edge_index[&(g[s], g[t], tag)])
                            })
                            .collect();
                        by_label[image.join(".").as_str()]
                    })
                    .collect();
                Automorphism::new(vec![g.clone(), morphisms])
            })
            .collect();
        let action = GroupAction::on_category(&c, gens).expect("valid action");
        return (c, action);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::check_horizontal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_g_posets_are_valid_and_horizontal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (p, a) = random_g_poset(&mut rng, 7, 6);
            assert!(p.len() <= 7);
            assert!(a.order() <= 6);
            assert!(p.category().validate().is_valid());
            assert_eq!(check_horizontal(p.category(), &a), None);
        }
    }

    #[test]
    fn random_g_categories_are_valid_and_horizontal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (c, a) = random_g_category(&mut rng, 6, 4, 10);
            assert!(c.morphism_count() <= 10);
            assert!(c.validate().is_valid());
            assert_eq!(check_horizontal(&c, &a), None);
        }
    }
}
