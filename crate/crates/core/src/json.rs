//! JSON interchange for every object the CLI reads or writes. Each schema is a plain serde
//! struct with conversions to and from the library types; encoding is deterministic, so
//! emit → parse → emit is a fixed point.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bar::{Diagram, Weight};
use crate::cover::{CoverComplex, ReferenceGroup};
use crate::error::{invalid, Result};
use crate::poset::{FiniteCategory, FinitePoset, Morphism};
use crate::simplicial::{
    BiGenId, BiRef, BisimplicialSet, DegeneracyWord, GenId, SimplexRef, SimplicialMap, SimplicialSet,
};

/// `word · gen` with the generator named by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub word: DegeneracyWord,
    pub gen: String,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// `generators[d]` lists the labels of dimension `d`; `faces` maps every positive-dimensional
/// generator to its faces `d_0, …, d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSetJson {
    pub d_max: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub truncated: bool,
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<SimplexJson>>,
}

fn simplex_json(x: &SimplicialSet, r: &SimplexRef) -> SimplexJson {
    SimplexJson { word: r.word.clone(), gen: x.label(r.gen).to_string() }
}

fn simplex_ref(x: &SimplicialSet, s: &SimplexJson) -> Result<SimplexRef> {
    let gen = x.find(&s.gen).ok_or_else(|| invalid(format!("unknown generator `{}`", s.gen)))?;
    Ok(SimplexRef::new(s.word.clone(), gen))
}

impl From<&SimplicialSet> for SimplicialSetJson {
    fn from(x: &SimplicialSet) -> Self {
        let mut faces = BTreeMap::new();
        for g in x.all_generators().filter(|g| g.dim > 0) {
            faces.insert(x.label(g).to_string(), x.generator_faces(g).iter().map(|r| simplex_json(x, r)).collect());
        }
        SimplicialSetJson {
            d_max: x.d_max(),
            truncated: x.is_truncated(),
            generators: (0..=x.d_max()).map(|d| x.labels(d).to_vec()).collect(),
            faces,
        }
    }
}

impl SimplicialSetJson {
    pub fn build(&self) -> Result<SimplicialSet> {
        if self.generators.len() != self.d_max + 1 {
            return Err(invalid("`generators` needs one list per dimension 0..=d_max"));
        }
        let mut x = SimplicialSet::new(self.d_max).with_truncated(self.truncated);
        let mut used = 0;
        for (dim, labels) in self.generators.iter().enumerate() {
            for label in labels {
                let faces = if dim == 0 {
                    if self.faces.get(label).is_some_and(|f| !f.is_empty()) {
                        return Err(invalid(format!("vertex `{label}` cannot have faces")));
                    }
                    Vec::new()
                } else {
                    let listed = self.faces.get(label).ok_or_else(|| invalid(format!("faces of `{label}` missing")))?;
                    used += 1;
                    listed.iter().map(|s| simplex_ref(&x, s)).collect::<Result<Vec<_>>>()?
                };
                x.add_generator(label.clone(), dim, faces)?;
            }
        }
        if used != self.faces.keys().filter(|k| x.find(k).is_some_and(|g| g.dim > 0)).count()
            || self.faces.keys().any(|k| x.find(k).is_none())
        {
            return Err(invalid("`faces` names an unknown generator"));
        }
        x.validate()?;
        Ok(x)
    }
}

/// A simplicial map: the image of every source generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialMapJson {
    pub source: SimplicialSetJson,
    pub target: SimplicialSetJson,
    pub assignment: BTreeMap<String, SimplexJson>,
}

fn assignment_json(f: &SimplicialMap) -> BTreeMap<String, SimplexJson> {
    f.source().all_generators().map(|g| (f.source().label(g).to_string(), simplex_json(f.target(), f.image(g)))).collect()
}

fn map_from_assignment(
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: &BTreeMap<String, SimplexJson>,
) -> Result<SimplicialMap> {
    if let Some(k) = assignment.keys().find(|k| source.find(k).is_none()) {
        return Err(invalid(format!("assignment names unknown generator `{k}`")));
    }
    let t = target.clone();
    let src = source.clone();
    SimplicialMap::try_from_fn(source, target, |g| {
        let label = src.label(g);
        let s = assignment.get(label).ok_or_else(|| invalid(format!("image of `{label}` missing")))?;
        simplex_ref(&t, s)
    })
}

impl From<&SimplicialMap> for SimplicialMapJson {
    fn from(f: &SimplicialMap) -> Self {
        SimplicialMapJson {
            source: f.source().as_ref().into(),
            target: f.target().as_ref().into(),
            assignment: assignment_json(f),
        }
    }
}

impl SimplicialMapJson {
    pub fn build(&self) -> Result<SimplicialMap> {
        map_from_assignment(Arc::new(self.source.build()?), Arc::new(self.target.build()?), &self.assignment)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiSimplexJson {
    pub h_word: DegeneracyWord,
    pub v_word: DegeneracyWord,
    pub gen: String,
}

/// `generators[h][v]` lists the labels of bidegree `(h, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisimplicialSetJson {
    pub d_max: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub h_faces: BTreeMap<String, Vec<BiSimplexJson>>,
    #[serde(default)]
    pub v_faces: BTreeMap<String, Vec<BiSimplexJson>>,
}

impl From<&BisimplicialSet> for BisimplicialSetJson {
    fn from(x: &BisimplicialSet) -> Self {
        let show = |r: &BiRef| BiSimplexJson { h_word: r.h_word.clone(), v_word: r.v_word.clone(), gen: x.label(r.gen).to_string() };
        let mut h_faces = BTreeMap::new();
        let mut v_faces = BTreeMap::new();
        for g in x.all_generators() {
            if g.h > 0 {
                h_faces.insert(x.label(g).to_string(), x.h_faces_of(g).iter().map(show).collect());
            }
            if g.v > 0 {
                v_faces.insert(x.label(g).to_string(), x.v_faces_of(g).iter().map(show).collect());
            }
        }
        let d = x.d_max();
        let generators = (0..=d)
            .map(|h| (0..=d).map(|v| x.generators(h, v).map(|g| x.label(g).to_string()).collect()).collect())
            .collect();
        BisimplicialSetJson { d_max: d, generators, h_faces, v_faces }
    }
}

impl BisimplicialSetJson {
    pub fn build(&self) -> Result<BisimplicialSet> {
        let d = self.d_max;
        if self.generators.len() != d + 1 || self.generators.iter().any(|row| row.len() != d + 1) {
            return Err(invalid("`generators` must be a (d_max+1) × (d_max+1) table"));
        }
        let mut x = BisimplicialSet::new(d);
        let resolve = |x: &BisimplicialSet, s: &BiSimplexJson| -> Result<BiRef> {
            let gen: BiGenId = x.find(&s.gen).ok_or_else(|| invalid(format!("unknown generator `{}`", s.gen)))?;
            Ok(BiRef { h_word: s.h_word.clone(), v_word: s.v_word.clone(), gen })
        };
        // faces of (h, v) live in (h - 1, v) and (h, v - 1): add by total degree
        for total in 0..=2 * d {
            for h in 0..=d.min(total) {
                let v = total - h;
                if v > d {
                    continue;
                }
                for label in &self.generators[h][v] {
                    let faces = |table: &BTreeMap<String, Vec<BiSimplexJson>>, needed: bool| -> Result<Vec<BiRef>> {
                        match (table.get(label), needed) {
                            (Some(fs), true) => fs.iter().map(|s| resolve(&x, s)).collect(),
                            (None, true) => Err(invalid(format!("faces of `{label}` missing"))),
                            (Some(fs), false) if !fs.is_empty() => Err(invalid(format!("`{label}` has no faces in that direction"))),
                            _ => Ok(Vec::new()),
                        }
                    };
                    let (hf, vf) = (faces(&self.h_faces, h > 0)?, faces(&self.v_faces, v > 0)?);
                    x.add_generator(label.clone(), h, v, hf, vf)?;
                }
            }
        }
        if let Some(k) = self.h_faces.keys().chain(self.v_faces.keys()).find(|k| x.find(k).is_none()) {
            return Err(invalid(format!("faces given for unknown generator `{k}`")));
        }
        x.validate()?;
        Ok(x)
    }
}

/// A poset by its elements and strict relations `a < b`; any generating set of pairs is
/// accepted on input and closed up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

fn index_by_label<'a>(labels: &'a [String], what: &str) -> Result<HashMap<&'a str, usize>> {
    let mut out = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if out.insert(l.as_str(), i).is_some() {
            return Err(invalid(format!("duplicate {what} `{l}`")));
        }
    }
    Ok(out)
}

impl From<&FinitePoset> for PosetJson {
    fn from(p: &FinitePoset) -> Self {
        PosetJson {
            elements: p.labels().to_vec(),
            leq: p.strict_relation().into_iter().map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string())).collect(),
        }
    }
}

impl PosetJson {
    pub fn build(&self) -> Result<FinitePoset> {
        let pos = index_by_label(&self.elements, "element")?;
        let at = |l: &str| pos.get(l).copied().ok_or_else(|| invalid(format!("unknown element `{l}`")));
        let rel = self.leq.iter().map(|(a, b)| Ok((at(a)?, at(b)?))).collect::<Result<Vec<_>>>()?;
        FinitePoset::generated(self.elements.clone(), &rel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A finite category. `compose` lists `[g, f, g∘f]` by name; entries with an identity factor
/// are implied and may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: Vec<String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

impl From<&FiniteCategory> for CategoryJson {
    fn from(c: &FiniteCategory) -> Self {
        let name = |f: usize| c.morphism(f).name.clone();
        CategoryJson {
            objects: c.objects().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismJson {
                    name: m.name.clone(),
                    source: c.objects()[m.source].clone(),
                    target: c.objects()[m.target].clone(),
                })
                .collect(),
            identities: c.identities().iter().map(|&f| name(f)).collect(),
            compose: c
                .composition_table()
                .into_iter()
                .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
                .map(|(g, f, gf)| [name(g), name(f), name(gf)])
                .collect(),
        }
    }
}

impl CategoryJson {
    pub fn build(&self) -> Result<FiniteCategory> {
        let objs = index_by_label(&self.objects, "object")?;
        let obj = |l: &str| objs.get(l).copied().ok_or_else(|| invalid(format!("unknown object `{l}`")));
        let names: Vec<String> = self.morphisms.iter().map(|m| m.name.clone()).collect();
        let mors = index_by_label(&names, "morphism")?;
        let mor = |l: &str| mors.get(l).copied().ok_or_else(|| invalid(format!("unknown morphism `{l}`")));
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Ok(Morphism { name: m.name.clone(), source: obj(&m.source)?, target: obj(&m.target)? }))
            .collect::<Result<Vec<_>>>()?;
        let identities = self.identities.iter().map(|l| mor(l)).collect::<Result<Vec<_>>>()?;
        let compose = self
            .compose
            .iter()
            .map(|[g, f, gf]| Ok((mor(g)?, mor(f)?, mor(gf)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteCategory::with_unit_laws(self.objects.clone(), morphisms, identities, &compose)
    }
}

/// Values of a functor on a shape: one simplicial set per object (by object name) and, per
/// non-identity morphism, the assignment of its map. Identity maps may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuesJson {
    pub values: BTreeMap<String, SimplicialSetJson>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, SimplexJson>>,
}

fn values_json(c: &FiniteCategory, values: &[Arc<SimplicialSet>], maps: &[SimplicialMap]) -> ValuesJson {
    ValuesJson {
        values: c.objects().iter().zip(values).map(|(o, x)| (o.clone(), x.as_ref().into())).collect(),
        maps: maps
            .iter()
            .enumerate()
            .filter(|(u, _)| !c.is_identity(*u))
            .map(|(u, f)| (c.morphism(u).name.clone(), assignment_json(f)))
            .collect(),
    }
}

type Built = (Vec<Arc<SimplicialSet>>, Vec<SimplicialMap>);

fn build_values(c: &FiniteCategory, v: &ValuesJson, covariant: bool) -> Result<Built> {
    if let Some(o) = v.values.keys().find(|o| c.object_index(o).is_none()) {
        return Err(invalid(format!("values given for unknown object `{o}`")));
    }
    if let Some(m) = v.maps.keys().find(|m| c.morphism_index(m).is_none()) {
        return Err(invalid(format!("map given for unknown morphism `{m}`")));
    }
    let values = c
        .objects()
        .iter()
        .map(|o| Ok(Arc::new(v.values.get(o).ok_or_else(|| invalid(format!("value at `{o}` missing")))?.build()?)))
        .collect::<Result<Vec<_>>>()?;
    let maps = c
        .morphisms()
        .iter()
        .enumerate()
        .map(|(u, m)| {
            let (a, b) = if covariant { (m.source, m.target) } else { (m.target, m.source) };
            match v.maps.get(&m.name) {
                Some(assignment) => map_from_assignment(values[a].clone(), values[b].clone(), assignment),
                None if c.is_identity(u) => Ok(SimplicialMap::identity(values[a].clone())),
                None => Err(invalid(format!("map of `{}` missing", m.name))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((values, maps))
}

/// Input of a bar construction `B(F, I, E)`: the shape `I`, an optional contravariant weight
/// `F` and an optional covariant diagram `E`; a missing side is the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarInputJson {
    pub shape: CategoryJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<ValuesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<ValuesJson>,
}

impl BarInputJson {
    pub fn new(weight: &Weight, diagram: &Diagram) -> Self {
        let c = diagram.shape();
        let is_point = |vs: &[Arc<SimplicialSet>]| vs.iter().all(|x| x.as_ref() == &SimplicialSet::point());
        BarInputJson {
            shape: c.as_ref().into(),
            weight: (!is_point(weight.values())).then(|| values_json(c, weight.values(), weight.maps())),
            diagram: (!is_point(diagram.values())).then(|| values_json(c, diagram.values(), diagram.maps())),
        }
    }

    pub fn build(&self) -> Result<(Weight, Diagram)> {
        let c = Arc::new(self.shape.build()?);
        let weight = match &self.weight {
            Some(v) => {
                let (values, maps) = build_values(&c, v, false)?;
                Weight::new(c.clone(), values, maps)?
            }
            None => Weight::point(c.clone()),
        };
        let diagram = match &self.diagram {
            Some(v) => {
                let (values, maps) = build_values(&c, v, true)?;
                Diagram::new(c.clone(), values, maps)?
            }
            None => Diagram::point(c.clone()),
        };
        Ok((weight, diagram))
    }
}

/// A cover complex; `nonempty` lists patch sets by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverJson {
    pub index_set: Vec<String>,
    pub nonempty: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_homology: Option<Vec<ReferenceGroup>>,
}

impl From<&CoverComplex> for CoverJson {
    fn from(c: &CoverComplex) -> Self {
        CoverJson {
            index_set: c.index_set().to_vec(),
            nonempty: c
                .nonempty_sets()
                .into_iter()
                .map(|s| s.into_iter().map(|a| c.index_set()[a].clone()).collect())
                .collect(),
            reference_homology: c.reference().map(<[_]>::to_vec),
        }
    }
}

impl CoverJson {
    pub fn build(&self) -> Result<CoverComplex> {
        let pos = index_by_label(&self.index_set, "patch")?;
        let sets = self
            .nonempty
            .iter()
            .map(|s| {
                s.iter()
                    .map(|l| pos.get(l.as_str()).copied().ok_or_else(|| invalid(format!("unknown patch `{l}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cov = CoverComplex::new(self.index_set.clone(), &sets)?;
        Ok(match &self.reference_homology {
            Some(r) => cov.with_reference(r.clone()),
            None => cov,
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON encoding of owned data");
    s.push('\n');
    s
}

#[doc(hidden)]
pub fn _gen(dim: usize, index: usize) -> GenId {
    GenId { dim, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::builtin_cover;
    use crate::poset::{nerve, ex_nerve_poset};
    use crate::segal::walking_iso;
    use crate::simplicial::{boundary_simplex, external_product, minimal_torus, standard_simplex};

    fn round_trip<T, J>(json: J, build: impl Fn(&J) -> Result<T>, back: impl Fn(&T) -> J) -> T
    where
        J: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug,
    {
        let text = to_pretty(&json);
        let parsed: J = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        let value = build(&parsed).unwrap();
        assert_eq!(to_pretty(&back(&value)), text);
        value
    }

    #[test]
    fn simplicial_sets() {
        for x in [standard_simplex(3), boundary_simplex(2), minimal_torus(), ex_nerve_poset(&FinitePoset::ordinal(1), 2).unwrap()] {
            let y = round_trip(SimplicialSetJson::from(&x), SimplicialSetJson::build, |y| y.into());
            assert_eq!(y, x);
        }
    }

    #[test]
    fn maps() {
        let x = Arc::new(boundary_simplex(2));
        let f = SimplicialMap::identity(x);
        let g = round_trip(SimplicialMapJson::from(&f), SimplicialMapJson::build, |g| g.into());
        assert_eq!(g, f);
    }

    #[test]
    fn bisimplicial_sets() {
        let x = external_product(&standard_simplex(1), &boundary_simplex(2));
        let y = round_trip(BisimplicialSetJson::from(&x), BisimplicialSetJson::build, |y| y.into());
        assert_eq!(y, x);
    }

    #[test]
    fn posets_and_categories() {
        let p = FinitePoset::ordinal(3);
        let q = round_trip(PosetJson::from(&p), PosetJson::build, |q| q.into());
        assert_eq!(q, p);
        let j = walking_iso();
        let k = round_trip(CategoryJson::from(&j), CategoryJson::build, |k| k.into());
        assert_eq!(nerve(&k, 3), nerve(&j, 3));
    }

    #[test]
    fn covers() {
        let c = builtin_cover("sphere").unwrap();
        let d = round_trip(CoverJson::from(&c), CoverJson::build, |d| d.into());
        assert_eq!(d, c);
    }

    #[test]
    fn bar_inputs() {
        let shape = Arc::new(FiniteCategory::from_poset(&FinitePoset::ordinal(1)));
        let weight = Weight::constant(shape.clone(), boundary_simplex(1));
        let diagram = Diagram::point(shape);
        let json = BarInputJson::new(&weight, &diagram);
        assert!(json.diagram.is_none());
        let (w, _) = round_trip(json, BarInputJson::build, |(w, d)| BarInputJson::new(w, d));
        assert_eq!(w.value(0).as_ref(), &boundary_simplex(1));
    }

    #[test]
    fn schema_violations_are_rejected() {
        let bad = r#"{"d_max": 1, "generators": [["a"], ["e"]], "faces": {"e": [{"word": [], "gen": "a"}, {"word": [], "gen": "b"}]}}"#;
        let parsed: SimplicialSetJson = serde_json::from_str(bad).unwrap();
        assert!(parsed.build().is_err());
        let unknown = r#"{"d_max": 0, "generators": [["a"]], "colour": 1}"#;
        assert!(serde_json::from_str::<SimplicialSetJson>(unknown).is_err());
        let word = r#"{"word": [0, 1], "gen": "a"}"#;
        assert!(serde_json::from_str::<SimplexJson>(word).is_err());
    }
}
