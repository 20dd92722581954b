//! Finite categories with explicit composition tables, finite posets, and
//! functors between them.
//!
//! All shapes at desk scale are tiny, so categories carry a full composition
//! table and every axiom check is exhaustive. Object and morphism ids are
//! strings; equality is by id. Values are immutable and cheap to clone
//! (shared storage).

use crate::{Error, Result, Violation};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

#[derive(Debug)]
struct Mor {
    id: String,
    src: usize,
    tgt: usize,
}

/// Sentinel in the dense composition table: the pair is not composable.
const NO_COMPOSITE: u32 = u32::MAX;

#[derive(Debug)]
struct CatInner {
    objects: Vec<String>,
    mors: Vec<Mor>,
    identity: Vec<usize>,
    // Dense m×m table indexed by g*m + f; NO_COMPOSITE when tgt(f) != src(g).
    compose: Vec<u32>,
    obj_index: OnceLock<HashMap<String, usize>>,
    mor_index: OnceLock<HashMap<String, usize>>,
}

/// A finite category: objects, morphisms with source/target, designated
/// identities and a total composition table on composable pairs.
#[derive(Debug, Clone)]
pub struct FinCat {
    inner: Arc<CatInner>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        let (a, b) = (&self.inner, &other.inner);
        a.objects == b.objects
            && a.identity == b.identity
            && a.mors.len() == b.mors.len()
            && a.mors
                .iter()
                .zip(&b.mors)
                .all(|(x, y)| x.id == y.id && x.src == y.src && x.tgt == y.tgt)
            && a.compose == b.compose
    }
}

impl Eq for FinCat {}

impl FinCat {
    /// Build a category from id-level data. Checks structural well-formedness
    /// (unique ids, endpoints, identity units, composition totality);
    /// associativity is checked by [`validate`](FinCat::validate).
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        compositions: Vec<(String, String, String)>,
    ) -> Result<FinCat> {
        let obj_index: HashMap<String, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        if obj_index.len() != objects.len() {
            return Err(Error::Invalid("duplicate object ids".into()));
        }
        let mut mors = Vec::with_capacity(morphisms.len());
        let mut mor_index = HashMap::new();
        for (id, src, tgt) in morphisms {
            let s = *obj_index.get(&src).ok_or_else(|| Error::UnknownId(src.clone()))?;
            let t = *obj_index.get(&tgt).ok_or_else(|| Error::UnknownId(tgt.clone()))?;
            if mor_index.insert(id.clone(), mors.len()).is_some() {
                return Err(Error::Invalid(format!("duplicate morphism id {id}")));
            }
            mors.push(Mor { id, src: s, tgt: t });
        }
        let mut identity = vec![usize::MAX; objects.len()];
        for (obj, mid) in identities {
            let o = *obj_index.get(&obj).ok_or_else(|| Error::UnknownId(obj.clone()))?;
            let m = *mor_index.get(&mid).ok_or_else(|| Error::UnknownId(mid.clone()))?;
            if mors[m].src != o || mors[m].tgt != o {
                return Err(Error::Invalid(format!("identity of {obj} is not an endomorphism")));
            }
            identity[o] = m;
        }
        if let Some(o) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Invalid(format!("object {} has no identity", objects[o])));
        }
        let m = mors.len();
        let mut compose = vec![NO_COMPOSITE; m * m];
        for (g, f, gf) in compositions {
            let gi = *mor_index.get(&g).ok_or_else(|| Error::UnknownId(g.clone()))?;
            let fi = *mor_index.get(&f).ok_or_else(|| Error::UnknownId(f.clone()))?;
            let gfi = *mor_index.get(&gf).ok_or_else(|| Error::UnknownId(gf.clone()))?;
            if compose[gi * m + fi] != NO_COMPOSITE {
                return Err(Error::Invalid(format!("duplicate composition entry ({g}, {f})")));
            }
            compose[gi * m + fi] = gfi as u32;
        }
        let cat = FinCat::from_parts(objects, mors, identity, compose);
        cat.check_structure()?;
        Ok(cat)
    }

    fn from_parts(
        objects: Vec<String>,
        mors: Vec<Mor>,
        identity: Vec<usize>,
        compose: Vec<u32>,
    ) -> FinCat {
        FinCat {
            inner: Arc::new(CatInner {
                objects,
                mors,
                identity,
                compose,
                obj_index: OnceLock::new(),
                mor_index: OnceLock::new(),
            }),
        }
    }

    /// Crate-internal constructor for builders that produce tables by
    /// construction (poset categories, disjoint unions, Grothendieck
    /// constructions). Performs the cheap structural checks only.
    pub(crate) fn from_raw(
        objects: Vec<String>,
        mors: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<FinCat> {
        let m = mors.len();
        let mut table = vec![NO_COMPOSITE; m * m];
        for ((g, f), gf) in compose {
            table[g * m + f] = gf as u32;
        }
        FinCat::from_table(objects, mors, identity, table)
    }

    /// Like [`from_raw`](FinCat::from_raw) but takes the composition table as a
    /// dense list of `(g, f, g∘f)` index triples; used by the hot builders.
    pub(crate) fn from_table(
        objects: Vec<String>,
        mors: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: Vec<u32>,
    ) -> Result<FinCat> {
        let mors = mors.into_iter().map(|(id, src, tgt)| Mor { id, src, tgt }).collect();
        let cat = FinCat::from_parts(objects, mors, identity, compose);
        cat.check_structure()?;
        Ok(cat)
    }

    /// For builders whose tables are total and lawful by construction
    /// (Grothendieck constructions); skips the structural scan. The axioms are
    /// still exercised through `validate` in the test suites.
    pub(crate) fn from_table_unchecked(
        objects: Vec<String>,
        mors: Vec<(String, usize, usize)>,
        identity: Vec<usize>,
        compose: Vec<u32>,
    ) -> FinCat {
        let mors = mors.into_iter().map(|(id, src, tgt)| Mor { id, src, tgt }).collect();
        FinCat::from_parts(objects, mors, identity, compose)
    }

    /// Unit laws and composition totality/endpoints; O(pairs).
    fn check_structure(&self) -> Result<()> {
        let inner = &self.inner;
        let m = inner.mors.len();
        if inner.compose.len() != m * m {
            return Err(Error::Invalid("composition table has wrong size".into()));
        }
        for (i, mor) in inner.mors.iter().enumerate() {
            let idt = inner.identity[mor.tgt];
            let ids = inner.identity[mor.src];
            if inner.compose[idt * m + i] != i as u32 || inner.compose[i * m + ids] != i as u32 {
                return Err(Error::Invalid(format!("identity law fails at morphism {}", mor.id)));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let entry = inner.compose[g * m + f];
                let composable = inner.mors[f].tgt == inner.mors[g].src;
                if entry == NO_COMPOSITE {
                    if composable {
                        return Err(Error::Invalid(format!(
                            "missing composition entry ({}, {})",
                            inner.mors[g].id, inner.mors[f].id
                        )));
                    }
                    continue;
                }
                let (mg, mf) = (&inner.mors[g], &inner.mors[f]);
                if !composable {
                    return Err(Error::Invalid(format!("({}, {}) is not composable", mg.id, mf.id)));
                }
                let mgf = inner
                    .mors
                    .get(entry as usize)
                    .ok_or_else(|| Error::Invalid("composition entry out of range".into()))?;
                if mgf.src != mf.src || mgf.tgt != mg.tgt {
                    return Err(Error::Invalid(format!("composite of ({}, {}) has wrong endpoints", mg.id, mf.id)));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive validity report: structure plus associativity on all
    /// composable triples.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Err(e) = self.check_structure() {
            out.push(Violation::new("structure", e.to_string()));
            return out;
        }
        let inner = &self.inner;
        let m = inner.mors.len();
        for h in 0..m {
            for g in 0..m {
                if inner.mors[g].tgt != inner.mors[h].src {
                    continue;
                }
                let hg = inner.compose[h * m + g] as usize;
                for f in 0..m {
                    if inner.mors[f].tgt != inner.mors[g].src {
                        continue;
                    }
                    let gf = inner.compose[g * m + f] as usize;
                    if inner.compose[h * m + gf] != inner.compose[hg * m + f] {
                        out.push(Violation::new(
                            format!("({}, {}, {})", inner.mors[h].id, inner.mors[g].id, inner.mors[f].id),
                            "associativity fails",
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn n_objects(&self) -> usize {
        self.inner.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.inner.mors.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.inner.objects
    }

    pub fn object_id(&self, i: usize) -> &str {
        &self.inner.objects[i]
    }

    pub fn morphism_id(&self, m: usize) -> &str {
        &self.inner.mors[m].id
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = &str> {
        self.inner.mors.iter().map(|m| m.id.as_str())
    }

    pub fn src(&self, m: usize) -> usize {
        self.inner.mors[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.inner.mors[m].tgt
    }

    pub fn identity_of(&self, obj: usize) -> usize {
        self.inner.identity[obj]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.inner.identity[self.inner.mors[m].src] == m && self.inner.mors[m].src == self.inner.mors[m].tgt
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.obj_index().get(id).copied()
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.mor_index().get(id).copied()
    }

    fn obj_index(&self) -> &HashMap<String, usize> {
        self.inner.obj_index.get_or_init(|| {
            self.inner.objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect()
        })
    }

    fn mor_index(&self) -> &HashMap<String, usize> {
        self.inner.mor_index.get_or_init(|| {
            self.inner.mors.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect()
        })
    }

    /// g ∘ f when composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let entry = self.inner.compose[g * self.inner.mors.len() + f];
        (entry != NO_COMPOSITE).then_some(entry as usize)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.inner.mors.len())
            .filter(|&m| self.inner.mors[m].src == x && self.inner.mors[m].tgt == y)
            .collect()
    }

    /// True iff every hom-set has at most one element and morphisms in both
    /// directions force equality of objects.
    pub fn is_poset(&self) -> bool {
        let n = self.n_objects();
        let mut count = vec![0usize; n * n];
        for m in &self.inner.mors {
            count[m.src * n + m.tgt] += 1;
        }
        for x in 0..n {
            for y in 0..n {
                if count[x * n + y] > 1 {
                    return false;
                }
                if x != y && count[x * n + y] == 1 && count[y * n + x] == 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Recover the underlying poset when [`is_poset`](FinCat::is_poset) holds.
    pub fn as_poset(&self) -> Option<FinPoset> {
        if !self.is_poset() {
            return None;
        }
        let n = self.n_objects();
        let mut le = vec![false; n * n];
        for m in &self.inner.mors {
            le[m.src * n + m.tgt] = true;
        }
        FinPoset::new(self.inner.objects.clone(), le).ok()
    }

    /// Coproduct of categories with tagged ids (`"tag/id"`) and injection
    /// functors; no cross-morphisms.
    pub fn disjoint_union(tags: &[&str], cats: &[&FinCat]) -> Result<(FinCat, Vec<Functor>)> {
        assert_eq!(tags.len(), cats.len(), "one tag per summand");
        let mut objects = Vec::new();
        let mut mors: Vec<(String, usize, usize)> = Vec::new();
        let mut identity = Vec::new();
        let mut obj_offsets = Vec::new();
        let mut mor_offsets = Vec::new();
        for (tag, cat) in tags.iter().zip(cats) {
            let oo = objects.len();
            let mo = mors.len();
            obj_offsets.push(oo);
            mor_offsets.push(mo);
            for o in cat.object_ids() {
                objects.push(format!("{tag}/{o}"));
            }
            for m in 0..cat.n_morphisms() {
                mors.push((format!("{tag}/{}", cat.morphism_id(m)), oo + cat.src(m), oo + cat.tgt(m)));
            }
            for o in 0..cat.n_objects() {
                identity.push(mo + cat.identity_of(o));
            }
        }
        let total_m = mors.len();
        let mut compose = vec![NO_COMPOSITE; total_m * total_m];
        for (k, cat) in cats.iter().enumerate() {
            let mo = mor_offsets[k];
            let mk = cat.n_morphisms();
            for g in 0..mk {
                for f in 0..mk {
                    let gf = cat.inner.compose[g * mk + f];
                    if gf != NO_COMPOSITE {
                        compose[(mo + g) * total_m + mo + f] = gf + mo as u32;
                    }
                }
            }
        }
        let total = FinCat::from_table(objects, mors, identity, compose)?;
        let mut injections = Vec::new();
        for (k, cat) in cats.iter().enumerate() {
            let obj_map = (0..cat.n_objects()).map(|o| obj_offsets[k] + o).collect();
            let mor_map = (0..cat.n_morphisms()).map(|m| mor_offsets[k] + m).collect();
            injections.push(Functor::from_raw((*cat).clone(), total.clone(), obj_map, mor_map));
        }
        Ok((total, injections))
    }
}

/// A finite poset: objects plus a reflexive, antisymmetric, transitive
/// relation stored as a dense boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    objects: Vec<String>,
    le: Vec<bool>,
}

impl FinPoset {
    /// Validates the three poset axioms exhaustively.
    pub fn new(objects: Vec<String>, le: Vec<bool>) -> Result<FinPoset> {
        let n = objects.len();
        if le.len() != n * n {
            return Err(Error::Invalid("relation matrix has wrong size".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for o in &objects {
            if !seen.insert(o) {
                return Err(Error::Invalid(format!("duplicate object id {o}")));
            }
        }
        for i in 0..n {
            if !le[i * n + i] {
                return Err(Error::Invalid(format!("relation not reflexive at {}", objects[i])));
            }
            for j in 0..n {
                if i != j && le[i * n + j] && le[j * n + i] {
                    return Err(Error::Invalid(format!(
                        "relation not antisymmetric on ({}, {})",
                        objects[i], objects[j]
                    )));
                }
                for k in 0..n {
                    if le[i * n + j] && le[j * n + k] && !le[i * n + k] {
                        return Err(Error::Invalid(format!(
                            "relation not transitive on ({}, {}, {})",
                            objects[i], objects[j], objects[k]
                        )));
                    }
                }
            }
        }
        Ok(FinPoset { objects, le })
    }

    /// Build from covering pairs (x, y meaning x < y): reflexive-transitive
    /// closure, then the axiom check (cycles surface as antisymmetry errors).
    pub fn from_covers(objects: Vec<String>, covers: &[(String, String)]) -> Result<FinPoset> {
        let n = objects.len();
        let index: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (x, y) in covers {
            let i = *index.get(x.as_str()).ok_or_else(|| Error::UnknownId(x.clone()))?;
            let j = *index.get(y.as_str()).ok_or_else(|| Error::UnknownId(y.clone()))?;
            le[i * n + j] = true;
        }
        // Floyd-Warshall style closure.
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        FinPoset::new(objects, le)
    }

    /// A chain 0 < 1 < ... < n−1.
    pub fn chain(n: usize) -> FinPoset {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                le[i * n + j] = true;
            }
        }
        FinPoset::new(objects, le).expect("chain is a poset")
    }

    /// An antichain on n elements.
    pub fn antichain(n: usize) -> FinPoset {
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        FinPoset::new(objects, le).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.objects.len() + j]
    }

    pub fn has_common_upper_bound(&self, i: usize, j: usize) -> bool {
        (0..self.objects.len()).any(|z| self.le(i, z) && self.le(j, z))
    }

    pub fn has_common_lower_bound(&self, i: usize, j: usize) -> bool {
        (0..self.objects.len()).any(|z| self.le(z, i) && self.le(z, j))
    }

    /// Covering pairs (i, j): i < j with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.objects.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.le(i, j) {
                    continue;
                }
                let between = (0..n).any(|z| z != i && z != j && self.le(i, z) && self.le(z, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The category with one morphism per related pair; composition forced.
    pub fn to_category(&self) -> FinCat {
        let n = self.objects.len();
        let mut mors: Vec<(String, usize, usize)> = Vec::new();
        let mut mor_of_pair = vec![usize::MAX; n * n];
        let mut identity = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if self.le(i, j) {
                    let id = if i == j {
                        format!("1_{}", self.objects[i])
                    } else {
                        format!("{}->{}", self.objects[i], self.objects[j])
                    };
                    mor_of_pair[i * n + j] = mors.len();
                    if i == j {
                        identity[i] = mors.len();
                    }
                    mors.push((id, i, j));
                }
            }
        }
        let mut compose = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if !self.le(i, j) {
                    continue;
                }
                for k in 0..n {
                    if !self.le(j, k) {
                        continue;
                    }
                    let f = mor_of_pair[i * n + j];
                    let g = mor_of_pair[j * n + k];
                    compose.insert((g, f), mor_of_pair[i * n + k]);
                }
            }
        }
        FinCat::from_raw(self.objects.clone(), mors, identity, compose).expect("poset category is well formed")
    }
}

/// A functor between finite categories, stored as index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    src: FinCat,
    tgt: FinCat,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl Functor {
    /// Build from id-level maps. Checks totality and endpoint preservation;
    /// identity and composition preservation are checked by
    /// [`validate`](Functor::validate).
    pub fn new(
        src: FinCat,
        tgt: FinCat,
        obj_map: &HashMap<String, String>,
        mor_map: &HashMap<String, String>,
    ) -> Result<Functor> {
        let mut om = Vec::with_capacity(src.n_objects());
        for o in src.object_ids() {
            let image = obj_map.get(o).ok_or_else(|| Error::Invalid(format!("object {o} not mapped")))?;
            om.push(tgt.object_index(image).ok_or_else(|| Error::UnknownId(image.clone()))?);
        }
        let mut mm = Vec::with_capacity(src.n_morphisms());
        for m in 0..src.n_morphisms() {
            let id = src.morphism_id(m);
            let image = mor_map.get(id).ok_or_else(|| Error::Invalid(format!("morphism {id} not mapped")))?;
            let mi = tgt.morphism_index(image).ok_or_else(|| Error::UnknownId(image.clone()))?;
            if tgt.src(mi) != om[src.src(m)] || tgt.tgt(mi) != om[src.tgt(m)] {
                return Err(Error::Invalid(format!("morphism {id} image has wrong endpoints")));
            }
            mm.push(mi);
        }
        Ok(Functor { src, tgt, obj_map: om, mor_map: mm })
    }

    pub(crate) fn from_raw(src: FinCat, tgt: FinCat, obj_map: Vec<usize>, mor_map: Vec<usize>) -> Functor {
        Functor { src, tgt, obj_map, mor_map }
    }

    pub fn identity(cat: &FinCat) -> Functor {
        Functor {
            src: cat.clone(),
            tgt: cat.clone(),
            obj_map: (0..cat.n_objects()).collect(),
            mor_map: (0..cat.n_morphisms()).collect(),
        }
    }

    /// The constant functor onto an object of the target.
    pub fn constant(src: &FinCat, tgt: &FinCat, obj: usize) -> Functor {
        Functor {
            src: src.clone(),
            tgt: tgt.clone(),
            obj_map: vec![obj; src.n_objects()],
            mor_map: vec![tgt.identity_of(obj); src.n_morphisms()],
        }
    }

    /// Functor between poset-shaped categories determined by an object
    /// assignment; morphism images are forced. Fails if not monotone.
    pub fn between_posets(src: &FinCat, tgt: &FinCat, obj_map: &[usize]) -> Result<Functor> {
        if obj_map.len() != src.n_objects() {
            return Err(Error::Invalid("object map has wrong length".into()));
        }
        let mut mor_map = Vec::with_capacity(src.n_morphisms());
        for m in 0..src.n_morphisms() {
            let (x, y) = (obj_map[src.src(m)], obj_map[src.tgt(m)]);
            let hom = tgt.hom(x, y);
            match hom.first() {
                Some(&h) if hom.len() == 1 => mor_map.push(h),
                _ => {
                    return Err(Error::Invalid(format!(
                        "no unique image for morphism {} (target not poset-shaped or map not monotone)",
                        src.morphism_id(m)
                    )))
                }
            }
        }
        Ok(Functor { src: src.clone(), tgt: tgt.clone(), obj_map: obj_map.to_vec(), mor_map })
    }

    pub fn src(&self) -> &FinCat {
        &self.src
    }

    pub fn tgt(&self) -> &FinCat {
        &self.tgt
    }

    pub fn apply_obj(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn apply_mor(&self, m: usize) -> usize {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Functor) -> Result<Functor> {
        if other.tgt != self.src {
            return Err(Error::Invalid("functor composition: middle categories differ".into()));
        }
        Ok(Functor {
            src: other.src.clone(),
            tgt: self.tgt.clone(),
            obj_map: other.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: other.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        })
    }

    /// Exhaustive functor-axiom check: endpoints, identities, and every
    /// composable pair.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for m in 0..self.src.n_morphisms() {
            let im = self.mor_map[m];
            if self.tgt.src(im) != self.obj_map[self.src.src(m)]
                || self.tgt.tgt(im) != self.obj_map[self.src.tgt(m)]
            {
                out.push(Violation::new(self.src.morphism_id(m), "image has wrong endpoints"));
            }
        }
        for o in 0..self.src.n_objects() {
            if self.mor_map[self.src.identity_of(o)] != self.tgt.identity_of(self.obj_map[o]) {
                out.push(Violation::new(self.src.object_id(o), "identity not preserved"));
            }
        }
        for g in 0..self.src.n_morphisms() {
            for f in 0..self.src.n_morphisms() {
                let Some(gf) = self.src.compose(g, f) else { continue };
                let lhs = self.mor_map[gf];
                match self.tgt.compose(self.mor_map[g], self.mor_map[f]) {
                    Some(rhs) if rhs == lhs => {}
                    _ => out.push(Violation::new(
                        format!("({}, {})", self.src.morphism_id(g), self.src.morphism_id(f)),
                        "composition not preserved",
                    )),
                }
            }
        }
        out
    }
}

/// The one-object, one-morphism category.
pub fn point() -> FinCat {
    FinPoset::chain(1).to_category()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_poset_antichain() {
        let p = FinPoset::antichain(2);
        let c = p.to_category();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 2);
        assert!(c.validate().is_empty());
        assert!(c.is_poset());
    }

    #[test]
    fn from_poset_chain3() {
        let c = FinPoset::chain(3).to_category();
        assert_eq!(c.n_objects(), 3);
        assert_eq!(c.n_morphisms(), 6);
        assert!(c.validate().is_empty());
        // Composite of 0->1 and 1->2 is 0->2.
        let f = c.morphism_index("0->1").unwrap();
        let g = c.morphism_index("1->2").unwrap();
        assert_eq!(c.compose(g, f), c.morphism_index("0->2"));
    }

    #[test]
    fn non_antisymmetric_rejected() {
        let r = FinPoset::new(
            vec!["a".into(), "b".into()],
            vec![true, true, true, true],
        );
        assert!(r.is_err());
        // Cycle via covers also fails.
        let r = FinPoset::from_covers(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(r.is_err());
    }

    #[test]
    fn is_poset_detects_parallel_morphisms() {
        assert!(FinPoset::chain(2).to_category().is_poset());
        let c = FinCat::new(
            vec!["x".into(), "y".into()],
            vec![
                ("1x".into(), "x".into(), "x".into()),
                ("1y".into(), "y".into(), "y".into()),
                ("f".into(), "x".into(), "y".into()),
                ("g".into(), "x".into(), "y".into()),
            ],
            vec![("x".into(), "1x".into()), ("y".into(), "1y".into())],
            vec![
                ("1x".into(), "1x".into(), "1x".into()),
                ("1y".into(), "1y".into(), "1y".into()),
                ("f".into(), "1x".into(), "f".into()),
                ("1y".into(), "f".into(), "f".into()),
                ("g".into(), "1x".into(), "g".into()),
                ("1y".into(), "g".into(), "g".into()),
            ],
        )
        .unwrap();
        assert!(c.validate().is_empty());
        assert!(!c.is_poset());
    }

    #[test]
    fn functor_validation() {
        let c = FinPoset::chain(3).to_category();
        assert!(Functor::identity(&c).validate().is_empty());
        assert!(Functor::constant(&c, &c, 1).validate().is_empty());

        // Break one composition: send 0->2 to the identity of the image.
        let mut obj_map = HashMap::new();
        let mut mor_map = HashMap::new();
        for o in c.object_ids() {
            obj_map.insert(o.clone(), "0".to_string());
        }
        for m in 0..c.n_morphisms() {
            mor_map.insert(c.morphism_id(m).to_string(), "1_0".to_string());
        }
        let good = Functor::new(c.clone(), c.clone(), &obj_map, &mor_map).unwrap();
        assert!(good.validate().is_empty());

        // Constant on objects but one morphism sent somewhere non-composing is
        // impossible endpoint-wise here, so break identity preservation instead:
        let p2 = FinPoset::chain(2).to_category();
        let f = Functor::from_raw(
            p2.clone(),
            p2.clone(),
            vec![0, 1],
            // swap the image of 0->1 with an identity: endpoints break
            vec![p2.identity_of(0), p2.identity_of(1), p2.identity_of(0)],
        );
        assert!(!f.validate().is_empty());
    }

    #[test]
    fn disjoint_union_examples() {
        let (empty, _) = FinCat::disjoint_union(&[], &[]).unwrap();
        assert_eq!(empty.n_objects(), 0);

        let pt = point();
        let (two, injs) = FinCat::disjoint_union(&["a", "b"], &[&pt, &pt]).unwrap();
        assert_eq!(two.n_objects(), 2);
        assert_eq!(two.n_morphisms(), 2);
        assert!(two.validate().is_empty());
        for inj in &injs {
            assert!(inj.validate().is_empty());
        }
        // No cross-morphisms.
        assert!(two.hom(0, 1).is_empty());
        assert!(two.hom(1, 0).is_empty());
    }

    #[test]
    fn poset_roundtrip() {
        for p in [FinPoset::chain(4), FinPoset::antichain(3)] {
            let c = p.to_category();
            assert!(c.is_poset());
            assert_eq!(c.as_poset().unwrap(), p);
        }
    }

    #[test]
    fn covers_of_diamond() {
        let p = FinPoset::from_covers(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[
                ("0".into(), "a".into()),
                ("0".into(), "b".into()),
                ("a".into(), "1".into()),
                ("b".into(), "1".into()),
            ],
        )
        .unwrap();
        assert!(p.le(0, 3));
        assert_eq!(p.covers().len(), 4);
        assert!(p.has_common_upper_bound(1, 2));
        assert!(!FinPoset::antichain(2).has_common_upper_bound(0, 1));
    }
}
