//! Bipartite diagrams of finite categories and their covariant and
//! contravariant Grothendieck constructions, the Ladkani poset criterion,
//! and shape builders for the standard special cases.
//!
//! Objects of a construction are tagged pairs `"v/x"` (vertex v, inner
//! object x). Morphisms inside a block are tagged `"v/g"`; cross morphisms
//! are tagged `"α/x/g"` (arrow α, source inner object x, inner morphism g
//! of the right-hand value). The covariant construction has cross morphisms
//! in arrow direction, the contravariant one against it.

use crate::fincat::{FinCat, Functor};
use crate::{Error, Result, Violation};

/// A quiver whose vertices split into a left and a right class with all
/// arrows pointing left → right. Parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteQuiver {
    left: Vec<String>,
    right: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
}

impl BipartiteQuiver {
    /// `arrows` are given as (id, source vertex id, target vertex id); the
    /// source must be a left vertex and the target a right vertex.
    pub fn new(left: Vec<String>, right: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<BipartiteQuiver> {
        let mut seen = std::collections::HashSet::new();
        for v in left.iter().chain(&right) {
            if !seen.insert(v.clone()) {
                return Err(Error::Invalid(format!("duplicate vertex id {v}")));
            }
        }
        let mut out = Vec::with_capacity(arrows.len());
        let mut arrow_ids = std::collections::HashSet::new();
        for (id, src, tgt) in arrows {
            if seen.contains(&id) {
                return Err(Error::Invalid(format!("arrow id {id} collides with a vertex id")));
            }
            if !arrow_ids.insert(id.clone()) {
                return Err(Error::Invalid(format!("duplicate arrow id {id}")));
            }
            let s = left.iter().position(|v| *v == src);
            let t = right.iter().position(|v| *v == tgt);
            match (s, t) {
                (Some(s), Some(t)) => out.push((id, s, t)),
                _ => {
                    return Err(Error::Invalid(format!(
                        "arrow {id}: {src} -> {tgt} is not of the form left -> right"
                    )))
                }
            }
        }
        Ok(BipartiteQuiver { left, right, arrows: out })
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].0
    }

    pub fn arrow_src(&self, a: usize) -> usize {
        self.arrows[a].1
    }

    pub fn arrow_tgt(&self, a: usize) -> usize {
        self.arrows[a].2
    }

    /// Arrows leaving the given left vertex, in declaration order.
    pub fn arrows_from(&self, l: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].1 == l).collect()
    }
}

/// A bipartite quiver together with a finite category per vertex and a
/// functor per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDiagram {
    quiver: BipartiteQuiver,
    left_values: Vec<FinCat>,
    right_values: Vec<FinCat>,
    functors: Vec<Functor>,
}

impl BipartiteDiagram {
    pub fn new(
        quiver: BipartiteQuiver,
        left_values: Vec<FinCat>,
        right_values: Vec<FinCat>,
        functors: Vec<Functor>,
    ) -> Result<BipartiteDiagram> {
        if left_values.len() != quiver.left.len() || right_values.len() != quiver.right.len() {
            return Err(Error::Invalid("one value category per vertex required".into()));
        }
        if functors.len() != quiver.arrows.len() {
            return Err(Error::Invalid("one functor per arrow required".into()));
        }
        for (a, f) in functors.iter().enumerate() {
            if *f.src() != left_values[quiver.arrow_src(a)] || *f.tgt() != right_values[quiver.arrow_tgt(a)] {
                return Err(Error::Invalid(format!(
                    "functor for arrow {} has wrong endpoints",
                    quiver.arrow_id(a)
                )));
            }
        }
        Ok(BipartiteDiagram { quiver, left_values, right_values, functors })
    }

    pub fn quiver(&self) -> &BipartiteQuiver {
        &self.quiver
    }

    pub fn left_value(&self, l: usize) -> &FinCat {
        &self.left_values[l]
    }

    pub fn right_value(&self, r: usize) -> &FinCat {
        &self.right_values[r]
    }

    pub fn functor(&self, a: usize) -> &Functor {
        &self.functors[a]
    }

    /// Bipartiteness is enforced at construction; this forwards the
    /// exhaustive functor-axiom checks.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (q, c) in self.quiver.left.iter().zip(&self.left_values) {
            for v in c.validate() {
                out.push(Violation::new(format!("value at {q}: {}", v.at), v.reason));
            }
        }
        for (q, c) in self.quiver.right.iter().zip(&self.right_values) {
            for v in c.validate() {
                out.push(Violation::new(format!("value at {q}: {}", v.at), v.reason));
            }
        }
        for (a, f) in self.functors.iter().enumerate() {
            for v in f.validate() {
                out.push(Violation::new(
                    format!("functor at {}: {}", self.quiver.arrow_id(a), v.at),
                    v.reason,
                ));
            }
        }
        out
    }

    /// The coproduct of the left-hand values, tagged by left vertex ids.
    pub fn x_category(&self) -> (FinCat, Vec<Functor>) {
        let tags: Vec<&str> = self.quiver.left.iter().map(String::as_str).collect();
        let cats: Vec<&FinCat> = self.left_values.iter().collect();
        FinCat::disjoint_union(&tags, &cats).expect("tagged union is well formed")
    }

    /// The coproduct of the right-hand values, tagged by right vertex ids.
    pub fn y_category(&self) -> (FinCat, Vec<Functor>) {
        let tags: Vec<&str> = self.quiver.right.iter().map(String::as_str).collect();
        let cats: Vec<&FinCat> = self.right_values.iter().collect();
        FinCat::disjoint_union(&tags, &cats).expect("tagged union is well formed")
    }
}

/// Which of the two constructions a [`GrothCat`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Covariant,
    Contravariant,
}

/// A vertex of the quiver, by class and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRef {
    Left(usize),
    Right(usize),
}

/// Provenance of a morphism of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorProv {
    /// A morphism inside the block of one vertex.
    Block { vertex: VertexRef, inner: usize },
    /// A cross morphism (arrow α, left inner object x, inner morphism g).
    Cross { arrow: usize, left_obj: usize, inner: usize },
}

/// A Grothendieck construction with provenance tags and structure maps.
#[derive(Debug, Clone)]
pub struct GrothCat {
    variant: Variant,
    cat: FinCat,
    obj_prov: Vec<(VertexRef, usize)>,
    mor_prov: Vec<MorProv>,
    /// Vertex values (left first, then right) and their block offsets; the
    /// inclusion functors are materialized on first use.
    values: Vec<FinCat>,
    obj_off: Vec<usize>,
    mor_off: Vec<usize>,
    inclusions: std::sync::OnceLock<Vec<Functor>>,
    /// kappa[α][x] = the canonical cross morphism tagged with the identity:
    /// κ_{α,x}.
    kappa: Vec<Vec<u32>>,
}

impl GrothCat {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn object_provenance(&self, o: usize) -> (VertexRef, usize) {
        self.obj_prov[o]
    }

    pub fn morphism_provenance(&self, m: usize) -> MorProv {
        self.mor_prov[m]
    }

    fn inclusions(&self) -> &[Functor] {
        self.inclusions.get_or_init(|| {
            self.values
                .iter()
                .enumerate()
                .map(|(k, value)| {
                    let obj_map = (0..value.n_objects()).map(|o| self.obj_off[k] + o).collect();
                    let mor_map = (0..value.n_morphisms()).map(|m| self.mor_off[k] + m).collect();
                    Functor::from_raw(value.clone(), self.cat.clone(), obj_map, mor_map)
                })
                .collect()
        })
    }

    pub fn inclusion_left(&self, l: usize) -> &Functor {
        &self.inclusions()[l]
    }

    pub fn inclusion_right(&self, n_left: usize, r: usize) -> &Functor {
        &self.inclusions()[n_left + r]
    }

    /// κ_{α,x}: the canonical cross morphism for the arrow α at the left
    /// inner object x. Covariant: (l,x) → (r, f_α(x)); contravariant:
    /// (r, f_α(x)) → (l,x).
    pub fn kappa(&self, arrow: usize, left_obj: usize) -> usize {
        self.kappa[arrow][left_obj] as usize
    }

    /// DOT rendering: Hasse reduction when the category is a poset, the full
    /// non-identity morphism multigraph otherwise. Deterministic ordering.
    pub fn export_dot(&self) -> String {
        export_dot_category(&self.cat)
    }
}

/// DOT rendering of any finite category (Hasse reduction for posets).
pub fn export_dot_category(cat: &FinCat) -> String {
    let mut out = String::from("digraph groth {\n");
    for o in cat.object_ids() {
        out.push_str(&format!("  \"{o}\";\n"));
    }
    if let Some(poset) = cat.as_poset() {
        for (i, j) in poset.covers() {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", cat.object_id(i), cat.object_id(j)));
        }
    } else {
        for m in 0..cat.n_morphisms() {
            if cat.is_identity(m) {
                continue;
            }
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                cat.object_id(cat.src(m)),
                cat.object_id(cat.tgt(m)),
                cat.morphism_id(m)
            ));
        }
    }
    out.push_str("}\n");
    out
}

struct Blocks {
    obj_off: Vec<usize>,
    mor_off: Vec<usize>,
    objects: Vec<String>,
    mors: Vec<(String, usize, usize)>,
    identity: Vec<usize>,
    // Staged (g, f, g∘f) triples; turned into a dense table in `finish`.
    compose: Vec<(u32, u32, u32)>,
    obj_prov: Vec<(VertexRef, usize)>,
    mor_prov: Vec<MorProv>,
}

fn join2(a: &str, b: &str) -> String {
    let mut s = String::with_capacity(a.len() + b.len() + 1);
    s.push_str(a);
    s.push('/');
    s.push_str(b);
    s
}

fn join3(a: &str, b: &str, c: &str) -> String {
    let mut s = String::with_capacity(a.len() + b.len() + c.len() + 2);
    s.push_str(a);
    s.push('/');
    s.push_str(b);
    s.push('/');
    s.push_str(c);
    s
}

/// Lay out the block (within-vertex) part shared by both variants.
fn build_blocks(d: &BipartiteDiagram) -> Blocks {
    let q = d.quiver();
    let vertices: Vec<(VertexRef, &String, &FinCat)> = q
        .left()
        .iter()
        .enumerate()
        .map(|(i, v)| (VertexRef::Left(i), v, d.left_value(i)))
        .chain(
            q.right()
                .iter()
                .enumerate()
                .map(|(i, v)| (VertexRef::Right(i), v, d.right_value(i))),
        )
        .collect();
    let n_obj: usize = vertices.iter().map(|(_, _, c)| c.n_objects()).sum();
    let n_mor: usize = vertices.iter().map(|(_, _, c)| c.n_morphisms()).sum();
    let mut b = Blocks {
        obj_off: Vec::with_capacity(vertices.len()),
        mor_off: Vec::with_capacity(vertices.len()),
        objects: Vec::with_capacity(n_obj),
        mors: Vec::with_capacity(2 * n_mor),
        identity: Vec::with_capacity(n_obj),
        compose: Vec::with_capacity(vertices.iter().map(|(_, _, c)| c.n_morphisms().pow(2)).sum()),
        obj_prov: Vec::with_capacity(n_obj),
        mor_prov: Vec::with_capacity(2 * n_mor),
    };
    for (vref, tag, cat) in &vertices {
        let oo = b.objects.len();
        let mo = b.mors.len();
        b.obj_off.push(oo);
        b.mor_off.push(mo);
        for (i, o) in cat.object_ids().iter().enumerate() {
            b.objects.push(join2(tag, o));
            b.obj_prov.push((*vref, i));
        }
        for m in 0..cat.n_morphisms() {
            b.mors.push((join2(tag, cat.morphism_id(m)), oo + cat.src(m), oo + cat.tgt(m)));
            b.mor_prov.push(MorProv::Block { vertex: *vref, inner: m });
        }
        for o in 0..cat.n_objects() {
            b.identity.push(mo + cat.identity_of(o));
        }
        for g in 0..cat.n_morphisms() {
            for f in 0..cat.n_morphisms() {
                if let Some(gf) = cat.compose(g, f) {
                    b.compose.push(((mo + g) as u32, (mo + f) as u32, (mo + gf) as u32));
                }
            }
        }
    }
    b
}

fn finish(variant: Variant, d: &BipartiteDiagram, b: Blocks, kappa: Vec<Vec<u32>>) -> Result<GrothCat> {
    let q = d.quiver();
    let n_left = q.left().len();
    let m = b.mors.len();
    let mut table = vec![u32::MAX; m * m];
    for (g, f, gf) in b.compose {
        table[g as usize * m + f as usize] = gf;
    }
    let cat = FinCat::from_table_unchecked(b.objects, b.mors, b.identity, table);
    let values = (0..n_left)
        .map(|l| d.left_value(l).clone())
        .chain((0..q.right().len()).map(|r| d.right_value(r).clone()))
        .collect();
    Ok(GrothCat {
        variant,
        cat,
        obj_prov: b.obj_prov,
        mor_prov: b.mor_prov,
        values,
        obj_off: b.obj_off,
        mor_off: b.mor_off,
        inclusions: std::sync::OnceLock::new(),
        kappa,
    })
}

/// The covariant Grothendieck construction: cross morphisms
/// Hom((l,x),(r,y)) = ⊔_{α: l→r} Hom_{value(r)}(f_α(x), y).
pub fn groth_cov(d: &BipartiteDiagram) -> Result<GrothCat> {
    let q = d.quiver();
    let n_left = q.left().len();
    let mut b = build_blocks(d);

    // Cross morphisms, ordered by (arrow, left object, inner morphism).
    // cross[a][x * m_r + g] is the morphism index, u32::MAX if absent.
    let mut cross: Vec<Vec<u32>> = Vec::with_capacity(q.n_arrows());
    let mut cross_list: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut kappa: Vec<Vec<u32>> = Vec::with_capacity(q.n_arrows());
    for a in 0..q.n_arrows() {
        let (l, r) = (q.arrow_src(a), q.arrow_tgt(a));
        let value_l = d.left_value(l);
        let value_r = d.right_value(r);
        let m_r = value_r.n_morphisms();
        let f = d.functor(a);
        let mut idx_a = vec![u32::MAX; value_l.n_objects() * m_r];
        for x in 0..value_l.n_objects() {
            let fx = f.apply_obj(x);
            for g in 0..m_r {
                if value_r.src(g) != fx {
                    continue;
                }
                let idx = b.mors.len();
                idx_a[x * m_r + g] = idx as u32;
                cross_list.push((a, x, g, idx));
                b.mors.push((
                    join3(q.arrow_id(a), value_l.object_id(x), value_r.morphism_id(g)),
                    b.obj_off[l] + x,
                    b.obj_off[n_left + r] + value_r.tgt(g),
                ));
                b.mor_prov.push(MorProv::Cross { arrow: a, left_obj: x, inner: g });
            }
        }
        cross.push(idx_a);
        kappa.push(vec![u32::MAX; value_l.n_objects()]);
    }

    // Compositions involving cross morphisms.
    for &(a, x, g, cidx) in &cross_list {
        let (l, r) = (q.arrow_src(a), q.arrow_tgt(a));
        let value_l = d.left_value(l);
        let value_r = d.right_value(r);
        let m_r = value_r.n_morphisms();
        let f = d.functor(a);
        // (α, g) ∘ h for h: x' → x inside value(l): (α, g ∘ f_α(h)).
        for h in 0..value_l.n_morphisms() {
            if value_l.tgt(h) != x {
                continue;
            }
            let fh = f.apply_mor(h);
            let comp = value_r.compose(g, fh).expect("composable by construction");
            let target = cross[a][value_l.src(h) * m_r + comp] as usize;
            b.compose.push((cidx as u32, (b.mor_off[l] + h) as u32, target as u32));
        }
        // k ∘ (α, g) for k inside value(r): (α, k ∘ g).
        for k in 0..m_r {
            if value_r.src(k) != value_r.tgt(g) {
                continue;
            }
            let comp = value_r.compose(k, g).expect("composable by construction");
            let target = cross[a][x * m_r + comp] as usize;
            b.compose.push(((b.mor_off[n_left + r] + k) as u32, cidx as u32, target as u32));
        }
        if value_r.is_identity(g) {
            kappa[a][x] = cidx as u32;
        }
    }

    finish(Variant::Covariant, d, b, kappa)
}

/// The contravariant Grothendieck construction: cross morphisms
/// Hom((r,y),(l,x)) = ⊔_{α: l→r} Hom_{value(r)}(y, f_α(x)).
pub fn groth_contra(d: &BipartiteDiagram) -> Result<GrothCat> {
    let q = d.quiver();
    let n_left = q.left().len();
    let mut b = build_blocks(d);

    let mut cross: Vec<Vec<u32>> = Vec::with_capacity(q.n_arrows());
    let mut cross_list: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut kappa: Vec<Vec<u32>> = Vec::with_capacity(q.n_arrows());
    for a in 0..q.n_arrows() {
        let (l, r) = (q.arrow_src(a), q.arrow_tgt(a));
        let value_l = d.left_value(l);
        let value_r = d.right_value(r);
        let m_r = value_r.n_morphisms();
        let f = d.functor(a);
        let mut idx_a = vec![u32::MAX; value_l.n_objects() * m_r];
        for x in 0..value_l.n_objects() {
            let fx = f.apply_obj(x);
            for g in 0..m_r {
                if value_r.tgt(g) != fx {
                    continue;
                }
                let idx = b.mors.len();
                idx_a[x * m_r + g] = idx as u32;
                cross_list.push((a, x, g, idx));
                b.mors.push((
                    join3(q.arrow_id(a), value_l.object_id(x), value_r.morphism_id(g)),
                    b.obj_off[n_left + r] + value_r.src(g),
                    b.obj_off[l] + x,
                ));
                b.mor_prov.push(MorProv::Cross { arrow: a, left_obj: x, inner: g });
            }
        }
        cross.push(idx_a);
        kappa.push(vec![u32::MAX; value_l.n_objects()]);
    }

    for &(a, x, g, cidx) in &cross_list {
        let (l, r) = (q.arrow_src(a), q.arrow_tgt(a));
        let value_l = d.left_value(l);
        let value_r = d.right_value(r);
        let m_r = value_r.n_morphisms();
        let f = d.functor(a);
        // h ∘ (α, g) for h: x → x' inside value(l): (α, f_α(h) ∘ g).
        for h in 0..value_l.n_morphisms() {
            if value_l.src(h) != x {
                continue;
            }
            let fh = f.apply_mor(h);
            let comp = value_r.compose(fh, g).expect("composable by construction");
            let target = cross[a][value_l.tgt(h) * m_r + comp] as usize;
            b.compose.push(((b.mor_off[l] + h) as u32, cidx as u32, target as u32));
        }
        // (α, g) ∘ k for k: y' → y inside value(r): (α, g ∘ k).
        for k in 0..m_r {
            if value_r.tgt(k) != value_r.src(g) {
                continue;
            }
            let comp = value_r.compose(g, k).expect("composable by construction");
            let target = cross[a][x * m_r + comp] as usize;
            b.compose.push((cidx as u32, (b.mor_off[n_left + r] + k) as u32, target as u32));
        }
        if value_r.is_identity(g) {
            kappa[a][x] = cidx as u32;
        }
    }

    finish(Variant::Contravariant, d, b, kappa)
}

/// Build a construction by variant.
pub fn groth(d: &BipartiteDiagram, variant: Variant) -> Result<GrothCat> {
    match variant {
        Variant::Covariant => groth_cov(d),
        Variant::Contravariant => groth_contra(d),
    }
}

/// The no-common-bound criterion: with poset values, the construction is a
/// poset iff for every unordered pair of distinct parallel arrows α ≠ β and
/// every x, the elements f_α(x), f_β(x) have no common upper bound
/// (covariant) resp. lower bound (contravariant).
pub fn ladkani_condition(d: &BipartiteDiagram, variant: Variant) -> Result<bool> {
    let q = d.quiver();
    for r in 0..q.right().len() {
        if !d.right_value(r).is_poset() {
            return Err(Error::Invalid(format!("value at {} is not a poset", q.right()[r])));
        }
    }
    for l in 0..q.left().len() {
        if !d.left_value(l).is_poset() {
            return Err(Error::Invalid(format!("value at {} is not a poset", q.left()[l])));
        }
    }
    // Order relation of each right value, materialized on demand (only values
    // hit by a parallel pair need it).
    let mut right_le: Vec<Option<Vec<bool>>> = vec![None; q.right().len()];
    for a in 0..q.n_arrows() {
        for bb in (a + 1)..q.n_arrows() {
            if q.arrow_src(a) != q.arrow_src(bb) || q.arrow_tgt(a) != q.arrow_tgt(bb) {
                continue;
            }
            let l = q.arrow_src(a);
            let r = q.arrow_tgt(a);
            let value_r = d.right_value(r);
            let n = value_r.n_objects();
            let le = right_le[r].get_or_insert_with(|| {
                let mut le = vec![false; n * n];
                for m in 0..value_r.n_morphisms() {
                    le[value_r.src(m) * n + value_r.tgt(m)] = true;
                }
                le
            });
            for x in 0..d.left_value(l).n_objects() {
                let fa = d.functor(a).apply_obj(x);
                let fb = d.functor(bb).apply_obj(x);
                let bound = (0..n).any(|z| match variant {
                    Variant::Covariant => le[fa * n + z] && le[fb * n + z],
                    Variant::Contravariant => le[z * n + fa] && le[z * n + fb],
                });
                if bound {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The d-Kronecker diagram: one left vertex with value X, one right vertex
/// with value Y, and the given parallel functors as arrows.
pub fn build_kronecker(x: &FinCat, y: &FinCat, fs: &[Functor]) -> Result<BipartiteDiagram> {
    for f in fs {
        if f.src() != x || f.tgt() != y {
            return Err(Error::Invalid("kronecker: functor endpoints must be X → Y".into()));
        }
    }
    let arrows = (0..fs.len()).map(|i| (format!("a{i}"), "0".to_string(), "1".to_string())).collect();
    let quiver = BipartiteQuiver::new(vec!["0".into()], vec!["1".into()], arrows)?;
    BipartiteDiagram::new(quiver, vec![x.clone()], vec![y.clone()], fs.to_vec())
}

/// The cone diagram X → pt; its covariant construction adjoins a terminal
/// object to X, the contravariant one an initial object.
pub fn cone_diagram(x: &FinCat) -> Result<BipartiteDiagram> {
    let pt = crate::fincat::point();
    let f = Functor::constant(x, &pt, 0);
    build_kronecker(x, &pt, &[f])
}

/// The free-source star data: X = pt and the arrows pick objects of Y.
pub fn star_diagram(y: &FinCat, objs: &[usize]) -> Result<BipartiteDiagram> {
    let pt = crate::fincat::point();
    let fs: Vec<Functor> = objs.iter().map(|&o| Functor::constant(&pt, y, o)).collect();
    build_kronecker(&pt, y, &fs)
}
