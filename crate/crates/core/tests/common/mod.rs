//! Brute-force oracles shared by the integration tests. They are written
//! against the public data only and avoid the library's own algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use trispcl::accat::{ACMap, AcyclicCategory, Poset};
use trispcl::symmetry::{poset_automorphism, GroupAction};

/// Strict orders on `0..n` as `lt[x][y]`.
pub type Order = Vec<Vec<bool>>;

/// All naturally labelled posets on `0..n` (`x < y` implies `x < y` as
/// integers). Every isomorphism class occurs at least once. Element `k` is
/// added above an order ideal of the elements before it.
pub fn naturally_labelled_posets(n: usize) -> Vec<Order> {
    let mut out = Vec::new();
    let mut lt = vec![vec![false; n]; n];
    extend(&mut lt, 0, n, &mut out);
    out
}

fn extend(lt: &mut Order, k: usize, n: usize, out: &mut Vec<Order>) {
    if k == n {
        out.push(lt.clone());
        return;
    }
    for mask in 0u32..(1 << k) {
        let below: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        // order ideal: closed under going down
        let ideal = below
            .iter()
            .all(|&y| (0..k).all(|x| !lt[x][y] || mask >> x & 1 == 1));
        if !ideal {
            continue;
        }
        for &x in &below {
            lt[x][k] = true;
        }
        extend(lt, k + 1, n, out);
        for &x in &below {
            lt[x][k] = false;
        }
    }
}

pub fn poset_of(lt: &Order) -> Poset {
    let labels = (0..lt.len()).map(|x| x.to_string()).collect();
    Poset::from_relation(labels, |x, y| lt[x][y]).expect("strict order")
}

fn leq(lt: &Order, x: usize, y: usize) -> bool {
    x == y || lt[x][y]
}

/// Every map `0..n → 0..n`, in lexicographic order.
pub fn all_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut f = vec![0; n];
        for slot in f.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        f
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Descending,
    Ascending,
    Neither,
}

/// Monotone idempotent self-maps, tagged by side. The identity counts as
/// descending.
pub fn closure_like_maps(lt: &Order) -> Vec<(Vec<usize>, Side)> {
    let n = lt.len();
    let mut out = Vec::new();
    for f in all_maps(n) {
        if (0..n).any(|x| f[f[x]] != f[x]) {
            continue;
        }
        let monotone = (0..n).all(|x| (0..n).all(|y| !lt[x][y] || leq(lt, f[x], f[y])));
        if !monotone {
            continue;
        }
        let side = if (0..n).all(|x| leq(lt, f[x], x)) {
            Side::Descending
        } else if (0..n).all(|x| leq(lt, x, f[x])) {
            Side::Ascending
        } else {
            Side::Neither
        };
        out.push((f, side));
    }
    out
}

/// All order automorphisms, by trying every permutation.
pub fn automorphisms(lt: &Order) -> Vec<Vec<usize>> {
    let n = lt.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        if (0..n).all(|x| (0..n).all(|y| lt[x][y] == lt[p[x]][p[y]])) {
            out.push(p.to_vec());
        }
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn closure_of(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    set.insert((0..n).collect());
    loop {
        let mut added = Vec::new();
        for x in &set {
            for g in gens {
                let y = compose(g, x);
                if !set.contains(&y) {
                    added.push(y);
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}

/// Every nontrivial subgroup of order at most `max` of the given group,
/// generated by at most two elements, as generator lists. Subgroups are
/// deduplicated by their element sets.
pub fn small_subgroups(group: &[Vec<usize>], max: usize) -> Vec<Vec<Vec<usize>>> {
    let n = group.first().map_or(0, Vec::len);
    let mut seen: BTreeSet<BTreeSet<Vec<usize>>> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, a) in group.iter().enumerate() {
        for b in &group[i..] {
            let gens = if a == b {
                vec![a.clone()]
            } else {
                vec![a.clone(), b.clone()]
            };
            let h = closure_of(&gens, n);
            if h.len() > 1 && h.len() <= max && seen.insert(h) {
                out.push(gens);
            }
        }
    }
    out
}

pub fn poset_action(p: &Poset, gens: &[Vec<usize>]) -> GroupAction {
    let gens = gens
        .iter()
        .map(|g| poset_automorphism(p, g.clone()).expect("order automorphism"))
        .collect();
    GroupAction::on_category(p.category(), gens).expect("valid action")
}

pub fn is_equivariant(f: &[usize], group: &[Vec<usize>]) -> bool {
    group
        .iter()
        .all(|g| (0..f.len()).all(|x| f[g[x]] == g[f[x]]))
}

pub fn operator(p: &Poset, f: &[usize]) -> ACMap {
    ACMap::from_object_map(p, f.to_vec()).expect("monotone map")
}

/// Quotient morphism classes by matching decompositions: `x ~ y` when `x`
/// and `y` factor into equally long sequences of non-identity morphisms
/// whose factors lie pairwise in the same `G`-orbit; then the transitive
/// closure. Returns a class index per morphism, numbered by least member.
pub fn decomposition_classes(c: &AcyclicCategory, action: &GroupAction) -> Vec<usize> {
    let m = c.morphism_count();
    let mut orbit = vec![usize::MAX; m];
    let mut next = 0;
    for x in 0..m {
        if orbit[x] != usize::MAX {
            continue;
        }
        for g in action.elements() {
            orbit[g.morphism(x)] = next;
        }
        next += 1;
    }
    // every factorisation of every morphism, as orbit sequences
    let mut signatures: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for x in 0..m {
        for path in factorisations(c, x) {
            let sig: Vec<usize> = path.iter().map(|&f| orbit[f]).collect();
            signatures.entry(sig).or_default().push(x);
        }
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for members in signatures.values() {
        for w in members.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..m).map(|x| find(&mut parent, x)).collect();
    let mut number = HashMap::new();
    roots
        .iter()
        .map(|r| {
            let k = number.len();
            *number.entry(*r).or_insert(k)
        })
        .collect()
}

/// Sequences of composable non-identity morphisms (first factor first)
/// composing to `x`.
fn factorisations(c: &AcyclicCategory, x: usize) -> Vec<Vec<usize>> {
    let (s, t) = (c.source(x), c.target(x));
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Option<usize>)> = vec![(Vec::new(), None)];
    while let Some((path, composite)) = stack.pop() {
        let here = path.last().map_or(s, |&f| c.target(f));
        if here == t && composite == Some(x) {
            out.push(path.clone());
        }
        for &f in c.outgoing(here) {
            let next = match composite {
                None => Some(f),
                Some(g) => c.compose(g, f),
            };
            let Some(next) = next else { continue };
            // only prefixes of factorisations of x can extend to x
            if next == x
                || c.hom(c.target(next), t)
                    .iter()
                    .any(|&h| c.compose(next, h) == Some(x))
            {
                let mut p = path.clone();
                p.push(f);
                stack.push((p, Some(next)));
            }
        }
    }
    out
}

/// Whether two class assignments induce the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

/// Composable sequences of `d` non-identity morphisms, first factor first.
pub fn composable_sequences(c: &AcyclicCategory, d: usize) -> Vec<Vec<usize>> {
    let mut level: Vec<Vec<usize>> = (0..c.morphism_count()).map(|m| vec![m]).collect();
    for _ in 1..d {
        level = level
            .into_iter()
            .flat_map(|seq| {
                let last = *seq.last().unwrap();
                c.outgoing(c.target(last))
                    .iter()
                    .map(move |&m| {
                        let mut s = seq.clone();
                        s.push(m);
                        s
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    level
}

/// Whether every chain of `quotient` is the class sequence of a chain of `c`,
/// checked by listing both sides.
pub fn lambda_surjective_brute(
    c: &AcyclicCategory,
    morphism_class: &[usize],
    quotient: &AcyclicCategory,
) -> bool {
    let mut d = 1;
    loop {
        let upstairs: BTreeSet<Vec<usize>> = composable_sequences(c, d)
            .into_iter()
            .map(|s| s.into_iter().map(|m| morphism_class[m]).collect())
            .collect();
        let downstairs = composable_sequences(quotient, d);
        if downstairs.is_empty() {
            return true;
        }
        if downstairs.iter().any(|s| !upstairs.contains(s)) {
            return false;
        }
        d += 1;
    }
}
