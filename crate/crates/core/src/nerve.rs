//! The nerve of an acyclic category.
//!
//! A `d`-simplex is a chain `a_0 → a_1 → ⋯ → a_d` of `d` composable
//! non-identity morphisms. `∂_0` drops `a_0`, `∂_d` drops `a_d`, and an inner
//! `∂_i` replaces `m_i, m_{i+1}` by `m_{i+1} ∘ m_i`.

use std::collections::HashMap;

use serde::Serialize;

use crate::accat::{ACMap, AcyclicCategory, MorphismImage};
use crate::error::{Error, Result};
use crate::trisp::Trisp;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Chain {
    pub fn dimension(&self) -> usize {
        self.morphisms.len()
    }

    fn key(&self) -> Vec<usize> {
        if self.morphisms.is_empty() {
            self.objects.clone()
        } else {
            self.morphisms.clone()
        }
    }
}

/// The nerve trisp with the chain behind every simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub trisp: Trisp,
    chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn chain(&self, d: usize, s: usize) -> &Chain {
        &self.chains[d][s]
    }

    pub fn chains(&self, d: usize) -> &[Chain] {
        self.chains.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Simplex index of a chain of the given morphisms (dimension ≥ 1).
    pub fn simplex_of_morphisms(&self, morphisms: &[usize]) -> Option<usize> {
        self.index.get(morphisms.len())?.get(morphisms).copied()
    }

    pub fn simplex_of(&self, chain: &Chain) -> Option<(usize, usize)> {
        let d = chain.dimension();
        Some((d, *self.index.get(d)?.get(&chain.key())?))
    }
}

/// Builds the nerve. Fails if a composable pair lacks a composite.
pub fn nerve(c: &AcyclicCategory) -> Result<Nerve> {
    let mut chains: Vec<Vec<Chain>> = vec![(0..c.object_count())
        .map(|x| Chain {
            objects: vec![x],
            morphisms: Vec::new(),
        })
        .collect()];
    loop {
        let prev = chains.last().unwrap();
        let mut next = Vec::new();
        for ch in prev {
            let end = *ch.objects.last().unwrap();
            for &m in c.outgoing(end) {
                let mut objects = ch.objects.clone();
                objects.push(c.target(m));
                let mut morphisms = ch.morphisms.clone();
                morphisms.push(m);
                next.push(Chain { objects, morphisms });
            }
        }
        if next.is_empty() {
            break;
        }
        if next.len() > 50_000_000 || chains.len() > c.object_count() + 1 {
            return Err(Error::Malformed(
                "category has a cycle; nerve is infinite".into(),
            ));
        }
        next.sort_unstable();
        chains.push(next);
    }
    if chains[0].is_empty() {
        chains.clear();
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|list| {
            list.iter()
                .enumerate()
                .map(|(i, ch)| (ch.key(), i))
                .collect()
        })
        .collect();
    let mut counts = Vec::with_capacity(chains.len());
    let mut boundaries = Vec::with_capacity(chains.len());
    for (d, list) in chains.iter().enumerate() {
        counts.push(list.len());
        let mut flat = Vec::with_capacity(list.len() * (d + 1));
        if d == 1 {
            for ch in list {
                flat.push(ch.objects[1]);
                flat.push(ch.objects[0]);
            }
        } else if d > 1 {
            for ch in list {
                let ms = &ch.morphisms;
                flat.push(index[d - 1][&ms[1..]]);
                for i in 1..d {
                    let composite = c.compose(ms[i - 1], ms[i]).ok_or_else(|| {
                        Error::Malformed(format!(
                            "composition table lacks the composite of {} then {}",
                            ms[i - 1],
                            ms[i]
                        ))
                    })?;
                    let mut face = Vec::with_capacity(d - 1);
                    face.extend_from_slice(&ms[..i - 1]);
                    face.push(composite);
                    face.extend_from_slice(&ms[i + 1..]);
                    let idx = index[d - 1].get(&face).ok_or_else(|| {
                        Error::Malformed("composite has inconsistent endpoints".into())
                    })?;
                    flat.push(*idx);
                }
                flat.push(index[d - 1][&ms[..d - 1]]);
            }
        }
        boundaries.push(flat);
    }
    Ok(Nerve {
        trisp: Trisp::new(counts, boundaries)?,
        chains,
        index,
    })
}

/// A simplicial map between trisps: each simplex goes to a simplex of equal
/// or lower dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub images: Vec<Vec<(usize, usize)>>,
}

impl SimplicialMap {
    pub fn image(&self, d: usize, s: usize) -> (usize, usize) {
        self.images[d][s]
    }
}

/// The image chain of `chain` under `f`, with identity components deleted.
pub fn map_chain(f: &ACMap, chain: &Chain) -> Chain {
    let mut objects = vec![f.object(chain.objects[0])];
    let mut morphisms = Vec::new();
    for &m in &chain.morphisms {
        if let MorphismImage::Morphism(n) = f.morphism(m) {
            morphisms.push(n);
        }
    }
    for w in chain.objects.windows(2) {
        let (a, b) = (f.object(w[0]), f.object(w[1]));
        if a != b {
            objects.push(b);
        }
    }
    Chain { objects, morphisms }
}

/// The map `Δ(C) → Δ(D)` induced by an AC-map.
pub fn nerve_of_map(source: &Nerve, target: &Nerve, f: &ACMap) -> Result<SimplicialMap> {
    let mut images = Vec::with_capacity(source.chains.len());
    for list in &source.chains {
        let mut row = Vec::with_capacity(list.len());
        for ch in list {
            let image = map_chain(f, ch);
            let found = target.simplex_of(&image).ok_or_else(|| {
                Error::Malformed(format!(
                    "image of chain {:?} is not a chain of the target",
                    ch.morphisms
                ))
            })?;
            row.push(found);
        }
        images.push(row);
    }
    Ok(SimplicialMap { images })
}
