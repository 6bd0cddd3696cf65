//! JSON file formats.
//!
//! Inputs are told apart by their keys: `morphisms` marks a category, `less`
//! a poset given by generating relations, `counts` a trisp.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::accat::{ACMap, AcyclicCategory, Morphism, Poset};
use crate::closure::{Convention, TrispClosureMap};
use crate::error::{Error, Result};
use crate::symmetry::{poset_automorphism, Automorphism, GroupAction};
use crate::trisp::Trisp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// `[first, second, composite]`.
    #[serde(default)]
    pub composition: Vec<[usize; 3]>,
}

/// A poset as the transitive closure of `less`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub less: Vec<[usize; 2]>,
}

/// `faces[d - 1][s]` lists `∂_0 s, …, ∂_d s` for the `d`-simplex `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrispFile {
    pub counts: Vec<usize>,
    #[serde(default)]
    pub faces: Vec<Vec<Vec<usize>>>,
}

/// Generators as permutation blocks. On a poset the morphism block may be
/// left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub generators: Vec<Vec<Vec<usize>>>,
}

/// `image[v]` is `null` for red vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureMapFile {
    pub convention: Convention,
    pub image: Vec<Option<usize>>,
}

/// A self-map of a poset given on objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub objects: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Input {
    Category(AcyclicCategory),
    Trisp(Trisp),
}

#[derive(Clone, Debug)]
pub enum MapInput {
    Trisp(TrispClosureMap),
    Operator(Vec<usize>),
}

fn parse(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

fn has(v: &Value, key: &str) -> bool {
    v.get(key).is_some()
}

pub fn read_input(text: &str) -> Result<Input> {
    let v = parse(text)?;
    if has(&v, "morphisms") {
        let f: CategoryFile = serde_json::from_value(v)?;
        Ok(Input::Category(f.into_category()?))
    } else if has(&v, "less") {
        let f: PosetFile = serde_json::from_value(v)?;
        Ok(Input::Category(f.into_poset()?.into_category()))
    } else if has(&v, "counts") {
        let f: TrispFile = serde_json::from_value(v)?;
        Ok(Input::Trisp(f.into_trisp()?))
    } else {
        Err(Error::Malformed(
            "expected a category (`morphisms`), poset (`less`) or trisp (`counts`)".into(),
        ))
    }
}

pub fn read_map(text: &str) -> Result<MapInput> {
    let v = parse(text)?;
    if has(&v, "image") {
        let f: ClosureMapFile = serde_json::from_value(v)?;
        Ok(MapInput::Trisp(TrispClosureMap::from_image(
            f.image,
            f.convention,
        )?))
    } else if has(&v, "objects") {
        let f: OperatorFile = serde_json::from_value(v)?;
        Ok(MapInput::Operator(f.objects))
    } else {
        Err(Error::Malformed(
            "expected a closure map (`image`) or an operator (`objects`)".into(),
        ))
    }
}

pub fn read_action_file(text: &str) -> Result<ActionFile> {
    Ok(serde_json::from_str(text)?)
}

impl CategoryFile {
    pub fn from_category(c: &AcyclicCategory) -> Self {
        CategoryFile {
            objects: c.object_labels().to_vec(),
            morphisms: c.morphisms().to_vec(),
            composition: c
                .composition_entries()
                .into_iter()
                .map(|(a, b, ab)| [a, b, ab])
                .collect(),
        }
    }

    pub fn into_category(self) -> Result<AcyclicCategory> {
        AcyclicCategory::new(
            self.objects,
            self.morphisms,
            self.composition.into_iter().map(|[a, b, ab]| (a, b, ab)),
        )
    }
}

impl PosetFile {
    pub fn into_poset(self) -> Result<Poset> {
        let n = self.elements.len();
        let mut reach = vec![vec![false; n]; n];
        for [x, y] in self.less {
            if x >= n || y >= n {
                return Err(Error::Malformed(format!(
                    "relation ({x}, {y}) outside 0..{n}"
                )));
            }
            reach[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| reach[x][x]) {
            return Err(Error::Malformed(format!(
                "element {x} lies on a cycle of the relation"
            )));
        }
        Poset::from_relation(self.elements, |x, y| reach[x][y])
    }
}

impl TrispFile {
    pub fn from_trisp(t: &Trisp) -> Self {
        TrispFile {
            counts: t.counts().to_vec(),
            faces: (1..t.counts().len())
                .map(|d| (0..t.count(d)).map(|s| t.faces(d, s).to_vec()).collect())
                .collect(),
        }
    }

    pub fn into_trisp(self) -> Result<Trisp> {
        if self.counts.is_empty() && self.faces.is_empty() {
            return Ok(Trisp::empty());
        }
        if self.faces.len() + 1 != self.counts.len() {
            return Err(Error::Malformed(format!(
                "{} face lists for {} dimensions",
                self.faces.len(),
                self.counts.len()
            )));
        }
        let mut lists = vec![vec![Vec::new(); self.counts.first().copied().unwrap_or(0)]];
        lists.extend(self.faces);
        for (d, list) in lists.iter().enumerate() {
            if list.len() != self.counts[d] {
                return Err(Error::Malformed(format!(
                    "dimension {d}: {} simplices listed, count is {}",
                    list.len(),
                    self.counts[d]
                )));
            }
        }
        Trisp::from_boundary_lists(self.counts, lists)
    }
}

impl ActionFile {
    pub fn from_action(action: &GroupAction) -> Self {
        ActionFile {
            generators: action
                .generators()
                .iter()
                .map(|g| g.blocks().to_vec())
                .collect(),
        }
    }

    pub fn on_category(&self, c: &AcyclicCategory) -> Result<GroupAction> {
        let generators = self
            .generators
            .iter()
            .map(|blocks| match blocks.len() {
                1 => {
                    let p = Poset::try_from_category(c.clone()).map_err(|_| {
                        Error::Malformed(
                            "a generator without a morphism block needs a poset".into(),
                        )
                    })?;
                    poset_automorphism(&p, blocks[0].clone())
                }
                _ => Ok(Automorphism::new(blocks.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::on_category(c, generators)
    }

    pub fn on_trisp(&self, t: &Trisp) -> Result<GroupAction> {
        let generators = self
            .generators
            .iter()
            .map(|blocks| Automorphism::new(blocks.clone()))
            .collect();
        GroupAction::on_trisp(t, generators)
    }
}

impl ClosureMapFile {
    pub fn from_map(c: &TrispClosureMap) -> Self {
        ClosureMapFile {
            convention: c.convention(),
            image: c.image().to_vec(),
        }
    }
}

impl OperatorFile {
    pub fn into_map(self, p: &Poset) -> Result<ACMap> {
        ACMap::from_object_map(p, self.objects)
    }
}

pub fn category_json(c: &AcyclicCategory) -> Value {
    serde_json::to_value(CategoryFile::from_category(c)).expect("serializable")
}

pub fn trisp_json(t: &Trisp) -> Value {
    serde_json::to_value(TrispFile::from_trisp(t)).expect("serializable")
}
