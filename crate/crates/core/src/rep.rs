//! Strict representations of a finite category in chain complexes, and
//! natural transformations between them.
//!
//! A representation assigns a complex to every object and a chain map to
//! every morphism, strictly functorial with respect to the composition
//! table. Poset shapes get a convenience path that completes a diagram
//! given only the maps on covering relations.

use crate::chain::{ChainComplex, ChainMap};
use crate::exactlin::Field;
use crate::fincat::{FinCat, FinPoset, Functor};
use crate::{Error, Result, Violation};
use std::collections::BTreeMap;

/// A strict functor shape → chain complexes, stored per object/morphism id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    shape: FinCat,
    field: Field,
    at: BTreeMap<String, ChainComplex>,
    on: BTreeMap<String, ChainMap>,
}

impl Representation {
    /// Structural checks (coverage, endpoints, fields); functoriality is
    /// checked by [`validate`](Representation::validate).
    pub fn new(
        shape: FinCat,
        field: Field,
        at: BTreeMap<String, ChainComplex>,
        on: BTreeMap<String, ChainMap>,
    ) -> Result<Representation> {
        let mut at_full = BTreeMap::new();
        for o in shape.object_ids() {
            let c = at
                .get(o)
                .cloned()
                .unwrap_or_else(|| ChainComplex::zero(field));
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            at_full.insert(o.clone(), c);
        }
        if let Some(extra) = at.keys().find(|k| shape.object_index(k).is_none()) {
            return Err(Error::UnknownId(extra.clone()));
        }
        let mut on_full = BTreeMap::new();
        for m in 0..shape.n_morphisms() {
            let id = shape.morphism_id(m);
            let src = &at_full[shape.object_id(shape.src(m))];
            let tgt = &at_full[shape.object_id(shape.tgt(m))];
            let map = match on.get(id) {
                Some(f) => {
                    if f.src() != src || f.tgt() != tgt {
                        return Err(Error::DimensionMismatch(format!(
                            "map for morphism {id} has wrong endpoints"
                        )));
                    }
                    f.clone()
                }
                None if shape.is_identity(m) => ChainMap::identity(src),
                None => ChainMap::zero(src, tgt)?,
            };
            on_full.insert(id.to_string(), map);
        }
        if let Some(extra) = on.keys().find(|k| shape.morphism_index(k).is_none()) {
            return Err(Error::UnknownId(extra.clone()));
        }
        Ok(Representation { shape, field, at: at_full, on: on_full })
    }

    /// The zero representation of a shape.
    pub fn zero(shape: FinCat, field: Field) -> Representation {
        Representation::new(shape, field, BTreeMap::new(), BTreeMap::new()).expect("zero rep is well formed")
    }

    /// The constant representation at a complex, with identity maps.
    pub fn constant(shape: FinCat, c: ChainComplex) -> Representation {
        let field = c.field();
        let at = shape.object_ids().iter().map(|o| (o.clone(), c.clone())).collect();
        let on = shape
            .morphism_ids()
            .map(|m| (m.to_string(), ChainMap::identity(&c)))
            .collect();
        Representation { shape, field, at, on }
    }

    pub fn shape(&self) -> &FinCat {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, obj: &str) -> &ChainComplex {
        &self.at[obj]
    }

    pub fn on(&self, mor: &str) -> &ChainMap {
        &self.on[mor]
    }

    pub fn objects(&self) -> impl Iterator<Item = (&String, &ChainComplex)> {
        self.at.iter()
    }

    pub fn morphism_maps(&self) -> impl Iterator<Item = (&String, &ChainMap)> {
        self.on.iter()
    }

    /// Exhaustive functoriality check over the composition table: component
    /// validity, identities, and every composable pair.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (o, c) in &self.at {
            for v in c.validate() {
                out.push(Violation::new(format!("at {o}, {}", v.at), v.reason));
            }
        }
        for (id, f) in &self.on {
            for v in f.validate() {
                out.push(Violation::new(format!("on {id}, {}", v.at), v.reason));
            }
        }
        for o in 0..self.shape.n_objects() {
            let id = self.shape.morphism_id(self.shape.identity_of(o));
            let c = &self.at[self.shape.object_id(o)];
            if self.on[id] != ChainMap::identity(c) {
                out.push(Violation::new(id, "identity morphism not sent to identity"));
            }
        }
        for g in 0..self.shape.n_morphisms() {
            for f in 0..self.shape.n_morphisms() {
                let Some(gf) = self.shape.compose(g, f) else { continue };
                let lhs = &self.on[self.shape.morphism_id(gf)];
                let rhs = self.on[self.shape.morphism_id(g)]
                    .compose(&self.on[self.shape.morphism_id(f)])
                    .expect("endpoints line up");
                if *lhs != rhs {
                    out.push(Violation::new(
                        format!("({}, {})", self.shape.morphism_id(g), self.shape.morphism_id(f)),
                        "composite disagrees with table",
                    ));
                }
            }
        }
        out
    }

    /// Precomposition M ∘ F along a functor F into this representation's shape.
    pub fn restrict(&self, functor: &Functor) -> Result<Representation> {
        if *functor.tgt() != self.shape {
            return Err(Error::Invalid("restrict: functor does not land in the representation's shape".into()));
        }
        let shape = functor.src().clone();
        let mut at = BTreeMap::new();
        for o in 0..shape.n_objects() {
            let image = self.shape.object_id(functor.apply_obj(o));
            at.insert(shape.object_id(o).to_string(), self.at[image].clone());
        }
        let mut on = BTreeMap::new();
        for m in 0..shape.n_morphisms() {
            let image = self.shape.morphism_id(functor.apply_mor(m));
            on.insert(shape.morphism_id(m).to_string(), self.on[image].clone());
        }
        Ok(Representation { shape, field: self.field, at, on })
    }
}

/// Complete a poset-shaped diagram given complexes per object and chain maps
/// exactly on the covering relations. Fails with an incoherence error naming
/// the offending pair when two cover-paths disagree.
pub fn complete_from_covers(
    poset: &FinPoset,
    at: BTreeMap<String, ChainComplex>,
    cover_maps: BTreeMap<(String, String), ChainMap>,
) -> Result<Representation> {
    let n = poset.len();
    let covers = poset.covers();
    for (x, y) in cover_maps.keys() {
        let xi = poset.object_index(x).ok_or_else(|| Error::UnknownId(x.clone()))?;
        let yi = poset.object_index(y).ok_or_else(|| Error::UnknownId(y.clone()))?;
        if !covers.contains(&(xi, yi)) {
            return Err(Error::Invalid(format!("({x}, {y}) is not a covering relation")));
        }
    }
    let field = at
        .values()
        .next()
        .map(|c| c.field())
        .ok_or_else(|| Error::Invalid("complete_from_covers: no complexes given".into()))?;
    let shape = poset.to_category();
    let get = |i: usize| -> Result<&ChainComplex> {
        at.get(poset.object_ids()[i].as_str())
            .ok_or_else(|| Error::Invalid(format!("object {} has no complex", poset.object_ids()[i])))
    };

    // maps[i][j]: the forced map for i ≤ j, filled in order of interval size.
    let mut maps: BTreeMap<(usize, usize), ChainMap> = BTreeMap::new();
    for i in 0..n {
        maps.insert((i, i), ChainMap::identity(get(i)?));
    }
    for (i, j) in &covers {
        let key = (poset.object_ids()[*i].clone(), poset.object_ids()[*j].clone());
        let f = cover_maps
            .get(&key)
            .ok_or_else(|| Error::Invalid(format!("missing cover map ({}, {})", key.0, key.1)))?;
        if f.src() != get(*i)? || f.tgt() != get(*j)? {
            return Err(Error::DimensionMismatch(format!(
                "cover map ({}, {}) has wrong endpoints",
                key.0, key.1
            )));
        }
        maps.insert((*i, *j), f.clone());
    }
    // Order strict pairs by the number of elements in the interval so every
    // factorisation through a penultimate element is already available.
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && poset.le(i, j) {
                let size = (0..n).filter(|&z| poset.le(i, z) && poset.le(z, j)).count();
                pairs.push((size, i, j));
            }
        }
    }
    pairs.sort_unstable();
    for (_, i, j) in pairs {
        if maps.contains_key(&(i, j)) {
            // A cover map; still cross-check against any longer factorisation.
        }
        let mut candidate: Option<ChainMap> = maps.get(&(i, j)).cloned();
        for (z, jj) in &covers {
            if *jj != j || *z == i || !poset.le(i, *z) {
                continue;
            }
            let through = maps[&(*z, j)].compose(&maps[&(i, *z)])?;
            match &candidate {
                None => candidate = Some(through),
                Some(c) if *c == through => {}
                Some(_) => {
                    return Err(Error::Incoherent(
                        poset.object_ids()[i].clone(),
                        poset.object_ids()[j].clone(),
                    ))
                }
            }
        }
        let c = candidate.expect("interval of a poset has a saturated chain");
        maps.insert((i, j), c);
    }

    let mut on = BTreeMap::new();
    for m in 0..shape.n_morphisms() {
        let (i, j) = (shape.src(m), shape.tgt(m));
        on.insert(shape.morphism_id(m).to_string(), maps[&(i, j)].clone());
    }
    let at_by_id = poset
        .object_ids()
        .iter()
        .map(|o| (o.clone(), at[o.as_str()].clone()))
        .collect();
    Representation::new(shape, field, at_by_id, on)
}

/// A natural transformation between representations of the same shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    src: Representation,
    tgt: Representation,
    components: BTreeMap<String, ChainMap>,
}

impl NatTrans {
    /// Structural checks; naturality is checked by [`validate`](NatTrans::validate).
    pub fn new(
        src: Representation,
        tgt: Representation,
        components: BTreeMap<String, ChainMap>,
    ) -> Result<NatTrans> {
        if src.shape() != tgt.shape() {
            return Err(Error::Invalid("natural transformation: shapes differ".into()));
        }
        if src.field() != tgt.field() {
            return Err(Error::FieldMismatch(src.field().to_string(), tgt.field().to_string()));
        }
        let mut full = BTreeMap::new();
        for o in src.shape().object_ids() {
            let comp = match components.get(o) {
                Some(c) => {
                    if c.src() != src.at(o) || c.tgt() != tgt.at(o) {
                        return Err(Error::DimensionMismatch(format!(
                            "component at {o} has wrong endpoints"
                        )));
                    }
                    c.clone()
                }
                None => ChainMap::zero(src.at(o), tgt.at(o))?,
            };
            full.insert(o.clone(), comp);
        }
        Ok(NatTrans { src, tgt, components: full })
    }

    pub fn identity(rep: &Representation) -> NatTrans {
        let components = rep
            .shape()
            .object_ids()
            .iter()
            .map(|o| (o.clone(), ChainMap::identity(rep.at(o))))
            .collect();
        NatTrans { src: rep.clone(), tgt: rep.clone(), components }
    }

    pub fn zero(src: &Representation, tgt: &Representation) -> Result<NatTrans> {
        NatTrans::new(src.clone(), tgt.clone(), BTreeMap::new())
    }

    pub fn src(&self) -> &Representation {
        &self.src
    }

    pub fn tgt(&self) -> &Representation {
        &self.tgt
    }

    pub fn component(&self, obj: &str) -> &ChainMap {
        &self.components[obj]
    }

    pub fn components(&self) -> &BTreeMap<String, ChainMap> {
        &self.components
    }

    /// Exhaustive naturality check: each component a chain map, and the
    /// naturality square for every morphism of the shape.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (o, c) in &self.components {
            for v in c.validate() {
                out.push(Violation::new(format!("component {o}, {}", v.at), v.reason));
            }
        }
        let shape = self.src.shape();
        for m in 0..shape.n_morphisms() {
            let id = shape.morphism_id(m);
            let (x, y) = (shape.object_id(shape.src(m)), shape.object_id(shape.tgt(m)));
            let lhs = self.tgt.on(id).compose(&self.components[x]).expect("endpoints");
            let rhs = self.components[y].compose(self.src.on(id)).expect("endpoints");
            if lhs != rhs {
                out.push(Violation::new(id, "naturality square does not commute"));
            }
        }
        out
    }

    /// self ∘ other, componentwise.
    pub fn compose(&self, other: &NatTrans) -> Result<NatTrans> {
        if other.tgt != self.src {
            return Err(Error::Invalid("natural transformation composition: middle representation differs".into()));
        }
        let mut components = BTreeMap::new();
        for (o, c) in &self.components {
            components.insert(o.clone(), c.compose(&other.components[o])?);
        }
        NatTrans::new(other.src.clone(), self.tgt.clone(), components)
    }

    /// True iff every component is a quasi-isomorphism.
    pub fn pointwise_qiso(&self) -> bool {
        self.components.values().all(|c| c.is_quasi_iso())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{cone, ChainComplex, ChainMap};
    use crate::exactlin::Matrix;
    use crate::fincat::point;

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn zero_rep_is_valid() {
        let shape = FinPoset::chain(3).to_category();
        let rep = Representation::zero(shape, gf5());
        assert!(rep.validate().is_empty());
    }

    #[test]
    fn constant_rep_is_valid() {
        let shape = FinPoset::chain(3).to_category();
        let rep = Representation::constant(shape, ChainComplex::disk(gf5(), 1));
        assert!(rep.validate().is_empty());
    }

    #[test]
    fn broken_composite_reported() {
        let f = gf5();
        let shape = FinPoset::chain(3).to_category();
        let s = ChainComplex::sphere(f, 0);
        let at: BTreeMap<String, ChainComplex> =
            shape.object_ids().iter().map(|o| (o.clone(), s.clone())).collect();
        let two = ChainMap::new(s.clone(), s.clone(), BTreeMap::from([(0, Matrix::from_i64(f, &[&[2]]))])).unwrap();
        let mut on = BTreeMap::new();
        on.insert("0->1".to_string(), ChainMap::identity(&s));
        on.insert("1->2".to_string(), ChainMap::identity(&s));
        on.insert("0->2".to_string(), two);
        let rep = Representation::new(shape, f, at, on).unwrap();
        let violations = rep.validate();
        assert!(violations.iter().any(|v| v.at.contains("0->1") || v.at.contains("1->2")));
    }

    #[test]
    fn complete_from_covers_chain_and_diamond() {
        let f = Field::Q;
        let s = ChainComplex::sphere(f, 0);
        // Chain: composites forced.
        let p = FinPoset::chain(3);
        let at: BTreeMap<String, ChainComplex> =
            p.object_ids().iter().map(|o| (o.clone(), s.clone())).collect();
        let mut cm = BTreeMap::new();
        cm.insert(("0".to_string(), "1".to_string()), ChainMap::identity(&s));
        cm.insert(("1".to_string(), "2".to_string()), ChainMap::identity(&s));
        let rep = complete_from_covers(&p, at, cm).unwrap();
        assert!(rep.validate().is_empty());
        assert_eq!(*rep.on("0->2"), ChainMap::identity(&s));

        // Diamond with commuting square.
        let d = FinPoset::from_covers(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[
                ("0".into(), "a".into()),
                ("0".into(), "b".into()),
                ("a".into(), "1".into()),
                ("b".into(), "1".into()),
            ],
        )
        .unwrap();
        let at: BTreeMap<String, ChainComplex> =
            d.object_ids().iter().map(|o| (o.clone(), s.clone())).collect();
        let id = ChainMap::identity(&s);
        let mut cm = BTreeMap::new();
        for (x, y) in [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")] {
            cm.insert((x.to_string(), y.to_string()), id.clone());
        }
        assert!(complete_from_covers(&d, at.clone(), cm.clone()).is_ok());

        // Non-commuting square: id vs −id over Q.
        cm.insert(("b".to_string(), "1".to_string()), id.neg());
        match complete_from_covers(&d, at, cm) {
            Err(Error::Incoherent(x, y)) => {
                assert_eq!((x.as_str(), y.as_str()), ("0", "1"));
            }
            other => panic!("expected incoherence, got {other:?}"),
        }
    }

    #[test]
    fn nat_trans_validation() {
        let f = gf5();
        let shape = FinPoset::chain(2).to_category();
        let rep = Representation::constant(shape.clone(), ChainComplex::sphere(f, 0));
        assert!(NatTrans::identity(&rep).validate().is_empty());
        assert!(NatTrans::zero(&rep, &rep).unwrap().validate().is_empty());

        // Random-ish components without solving constraints: generically broken.
        let s = ChainComplex::sphere(f, 0);
        let one = ChainMap::identity(&s);
        let two = one.scale(&f.from_i64(2));
        let eta = NatTrans::new(
            rep.clone(),
            rep.clone(),
            BTreeMap::from([("0".to_string(), one), ("1".to_string(), two)]),
        )
        .unwrap();
        assert!(!eta.validate().is_empty());
    }

    #[test]
    fn restrict_examples() {
        let f = gf5();
        let shape = FinPoset::chain(3).to_category();
        let rep = Representation::constant(shape.clone(), ChainComplex::sphere(f, 2));
        assert_eq!(rep.restrict(&Functor::identity(&shape)).unwrap(), rep);

        let cst = Functor::constant(&shape, &shape, 1);
        let r = rep.restrict(&cst).unwrap();
        assert_eq!(r.at("0"), rep.at("1"));

        // Restrict along a disjoint-union injection picks out the block.
        let pt = point();
        let (two, injs) = FinCat::disjoint_union(&["a", "b"], &[&pt, &pt]).unwrap();
        let mut at = BTreeMap::new();
        at.insert("a/0".to_string(), ChainComplex::sphere(f, 0));
        at.insert("b/0".to_string(), ChainComplex::sphere(f, 1));
        let big = Representation::new(two, f, at, BTreeMap::new()).unwrap();
        let block = big.restrict(&injs[1]).unwrap();
        assert_eq!(block.at("0"), &ChainComplex::sphere(f, 1));
    }

    #[test]
    fn restrict_is_functorial() {
        let f = gf5();
        let shape = FinPoset::chain(3).to_category();
        let rep = Representation::constant(shape.clone(), ChainComplex::disk(f, 0));
        let g = Functor::constant(&shape, &shape, 2);
        let h = Functor::constant(&shape, &shape, 0);
        let gh = g.compose(&h).unwrap();
        assert_eq!(
            rep.restrict(&gh).unwrap(),
            rep.restrict(&g).unwrap().restrict(&h).unwrap()
        );
    }

    #[test]
    fn pointwise_qiso_examples() {
        let f = gf5();
        let shape = point();
        let rep = Representation::constant(shape.clone(), ChainComplex::sphere(f, 0));
        assert!(NatTrans::identity(&rep).pointwise_qiso());
        assert!(!NatTrans::zero(&rep, &rep).unwrap().pointwise_qiso());

        // Zero map between nonzero acyclic complexes is a quasi-iso.
        let acy = cone(&ChainMap::identity(&ChainComplex::sphere(f, 0))).unwrap().complex;
        let arep = Representation::constant(shape, acy);
        assert!(NatTrans::zero(&arep, &arep).unwrap().pointwise_qiso());
    }
}
