//! The gluing functor F, section-category triples, the pack/unpack
//! equivalences between triples and representations of the Grothendieck
//! constructions, and the reflection functors R± built from cones and
//! fibres.
//!
//! The unit and counit comparison maps are candidate formulas under the
//! crate's sign conventions; they are re-verified as chain maps on every
//! input and raise a hard error if the check fails.

use crate::chain::{cone, cone_map, direct_sum, fib, fib_map, ChainComplex, ChainMap};
use crate::exactlin::{Field, Matrix};
use crate::fincat::{FinCat, Functor};
use crate::groth::{groth_contra, groth_cov, BipartiteDiagram, MorProv, VertexRef};
use crate::rep::{NatTrans, Representation};
use crate::{Error, Result, Violation};
use std::collections::BTreeMap;

fn x_obj_id(d: &BipartiteDiagram, l: usize, x: usize) -> String {
    format!("{}/{}", d.quiver().left()[l], d.left_value(l).object_id(x))
}

fn y_obj_id(d: &BipartiteDiagram, r: usize, y: usize) -> String {
    format!("{}/{}", d.quiver().right()[r], d.right_value(r).object_id(y))
}

fn y_mor_id(d: &BipartiteDiagram, r: usize, g: usize) -> String {
    format!("{}/{}", d.quiver().right()[r], d.right_value(r).morphism_id(g))
}

/// A functor matching objects and morphisms of `sub` to those of `amb` by
/// equal ids (the block inclusion of a tagged union into a construction).
fn id_functor_into(sub: &FinCat, amb: &FinCat) -> Result<Functor> {
    let mut obj_map = Vec::with_capacity(sub.n_objects());
    for o in sub.object_ids() {
        obj_map.push(amb.object_index(o).ok_or_else(|| Error::UnknownId(o.clone()))?);
    }
    let mut mor_map = Vec::with_capacity(sub.n_morphisms());
    for m in 0..sub.n_morphisms() {
        let id = sub.morphism_id(m);
        mor_map.push(amb.morphism_index(id).ok_or_else(|| Error::UnknownId(id.to_string()))?);
    }
    Ok(Functor::from_raw(sub.clone(), amb.clone(), obj_map, mor_map))
}

/// One direct summand of (Fb)_x: the arrow it comes from and the chain-level
/// injection/projection of the summand.
#[derive(Debug, Clone)]
pub struct Summand {
    pub arrow: usize,
    pub inj: ChainMap,
    pub proj: ChainMap,
}

/// The result of applying F to a representation of Y, together with the
/// summand structure of each value.
#[derive(Debug, Clone)]
pub struct FApplied {
    rep: Representation,
    summands: BTreeMap<String, Vec<Summand>>,
}

impl FApplied {
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn summands(&self, obj: &str) -> &[Summand] {
        &self.summands[obj]
    }
}

/// (Fb)_x = ⊕_{α out of l} b_{f_α(x)} in arrow declaration order, with
/// blockwise action b(f_α(h)) on morphisms. A left vertex with no outgoing
/// arrows gets the zero complex.
pub fn apply_f(d: &BipartiteDiagram, b: &Representation) -> Result<FApplied> {
    let (x_cat, _) = d.x_category();
    let (y_cat, _) = d.y_category();
    if b.shape() != &y_cat {
        return Err(Error::Invalid("apply_f: representation is not over the Y union".into()));
    }
    let field = b.field();
    let q = d.quiver();

    let mut at = BTreeMap::new();
    let mut summands = BTreeMap::new();
    for l in 0..q.left().len() {
        let arrows = q.arrows_from(l);
        for x in 0..d.left_value(l).n_objects() {
            let parts: Vec<ChainComplex> = arrows
                .iter()
                .map(|&a| b.at(&y_obj_id(d, q.arrow_tgt(a), d.functor(a).apply_obj(x))).clone())
                .collect();
            let (sum, injs, projs) = direct_sum(field, &parts)?;
            let oid = x_obj_id(d, l, x);
            at.insert(oid.clone(), sum);
            summands.insert(
                oid,
                arrows
                    .iter()
                    .zip(injs.into_iter().zip(projs))
                    .map(|(&arrow, (inj, proj))| Summand { arrow, inj, proj })
                    .collect::<Vec<_>>(),
            );
        }
    }

    let mut on = BTreeMap::new();
    for l in 0..q.left().len() {
        let value = d.left_value(l);
        let tag = &q.left()[l];
        for h in 0..value.n_morphisms() {
            let (x, x2) = (value.src(h), value.tgt(h));
            let (oid, oid2) = (x_obj_id(d, l, x), x_obj_id(d, l, x2));
            let mut acc = ChainMap::zero(&at[&oid], &at[&oid2])?;
            let src_summands: &Vec<Summand> = &summands[&oid];
            let tgt_summands: &Vec<Summand> = &summands[&oid2];
            for (s, s2) in src_summands.iter().zip(tgt_summands) {
                let a = s.arrow;
                let fh = d.functor(a).apply_mor(h);
                let bg = b.on(&y_mor_id(d, q.arrow_tgt(a), fh));
                acc = acc.add(&s2.inj.compose(&bg.compose(&s.proj)?)?)?;
            }
            on.insert(format!("{tag}/{}", value.morphism_id(h)), acc);
        }
    }
    let rep = Representation::new(x_cat, field, at, on)?;
    Ok(FApplied { rep, summands })
}

/// An object (b, φ: a → Fb) of the section category of the covariant
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleCa {
    diagram: BipartiteDiagram,
    b: Representation,
    a: Representation,
    phi: NatTrans,
}

/// An object (b, ψ: Fb → a) of the section category of the contravariant
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleCoca {
    diagram: BipartiteDiagram,
    b: Representation,
    a: Representation,
    psi: NatTrans,
}

impl TripleCa {
    pub fn new(diagram: BipartiteDiagram, b: Representation, a: Representation, phi: NatTrans) -> Result<TripleCa> {
        let f = apply_f(&diagram, &b)?;
        if a.shape() != &diagram.x_category().0 {
            return Err(Error::Invalid("triple: a is not over the X union".into()));
        }
        if phi.src() != &a || phi.tgt() != f.rep() {
            return Err(Error::Invalid("triple: phi must go a → F(b)".into()));
        }
        Ok(TripleCa { diagram, b, a, phi })
    }

    pub fn zero(diagram: &BipartiteDiagram, field: Field) -> TripleCa {
        let b = Representation::zero(diagram.y_category().0, field);
        let a = Representation::zero(diagram.x_category().0, field);
        let f = apply_f(diagram, &b).expect("F of the zero representation");
        let phi = NatTrans::zero(&a, f.rep()).expect("zero transformation");
        TripleCa { diagram: diagram.clone(), b, a, phi }
    }

    pub fn diagram(&self) -> &BipartiteDiagram {
        &self.diagram
    }

    pub fn b(&self) -> &Representation {
        &self.b
    }

    pub fn a(&self) -> &Representation {
        &self.a
    }

    pub fn phi(&self) -> &NatTrans {
        &self.phi
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// Deep validity: both representations functorial and φ natural.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.a.validate() {
            out.push(Violation::new(format!("a: {}", v.at), v.reason));
        }
        for v in self.b.validate() {
            out.push(Violation::new(format!("b: {}", v.at), v.reason));
        }
        for v in self.phi.validate() {
            out.push(Violation::new(format!("phi: {}", v.at), v.reason));
        }
        out
    }
}

impl TripleCoca {
    pub fn new(diagram: BipartiteDiagram, b: Representation, a: Representation, psi: NatTrans) -> Result<TripleCoca> {
        let f = apply_f(&diagram, &b)?;
        if a.shape() != &diagram.x_category().0 {
            return Err(Error::Invalid("triple: a is not over the X union".into()));
        }
        if psi.src() != f.rep() || psi.tgt() != &a {
            return Err(Error::Invalid("triple: psi must go F(b) → a".into()));
        }
        Ok(TripleCoca { diagram, b, a, psi })
    }

    pub fn zero(diagram: &BipartiteDiagram, field: Field) -> TripleCoca {
        let b = Representation::zero(diagram.y_category().0, field);
        let a = Representation::zero(diagram.x_category().0, field);
        let f = apply_f(diagram, &b).expect("F of the zero representation");
        let psi = NatTrans::zero(f.rep(), &a).expect("zero transformation");
        TripleCoca { diagram: diagram.clone(), b, a, psi }
    }

    pub fn diagram(&self) -> &BipartiteDiagram {
        &self.diagram
    }

    pub fn b(&self) -> &Representation {
        &self.b
    }

    pub fn a(&self) -> &Representation {
        &self.a
    }

    pub fn psi(&self) -> &NatTrans {
        &self.psi
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.a.validate() {
            out.push(Violation::new(format!("a: {}", v.at), v.reason));
        }
        for v in self.b.validate() {
            out.push(Violation::new(format!("b: {}", v.at), v.reason));
        }
        for v in self.psi.validate() {
            out.push(Violation::new(format!("psi: {}", v.at), v.reason));
        }
        out
    }
}

/// Disassemble a representation of the covariant construction into a triple:
/// restrictions to the two blocks plus φ assembled from the canonical cross
/// morphisms κ.
pub fn pack_cov(d: &BipartiteDiagram, m: &Representation) -> Result<TripleCa> {
    let g = groth_cov(d)?;
    if m.shape() != g.cat() {
        return Err(Error::Invalid("pack_cov: representation is not over the covariant construction".into()));
    }
    let (x_cat, _) = d.x_category();
    let (y_cat, _) = d.y_category();
    let a = m.restrict(&id_functor_into(&x_cat, g.cat())?)?;
    let b = m.restrict(&id_functor_into(&y_cat, g.cat())?)?;
    let f = apply_f(d, &b)?;
    let q = d.quiver();

    let mut comps = BTreeMap::new();
    for l in 0..q.left().len() {
        for x in 0..d.left_value(l).n_objects() {
            let oid = x_obj_id(d, l, x);
            let mut acc = ChainMap::zero(a.at(&oid), f.rep().at(&oid))?;
            for s in f.summands(&oid) {
                let kappa = g.cat().morphism_id(g.kappa(s.arrow, x));
                acc = acc.add(&s.inj.compose(m.on(kappa))?)?;
            }
            comps.insert(oid, acc);
        }
    }
    let phi = NatTrans::new(a.clone(), f.rep().clone(), comps)?;
    Ok(TripleCa { diagram: d.clone(), b, a, phi })
}

/// Reassemble the representation of the covariant construction: blocks from
/// a and b, and b(g) ∘ pr_α ∘ φ_x on the cross morphism (α, g).
pub fn unpack_cov(t: &TripleCa) -> Result<Representation> {
    let d = &t.diagram;
    let g = groth_cov(d)?;
    let f = apply_f(d, &t.b)?;
    let q = d.quiver();

    let mut at = BTreeMap::new();
    for (o, c) in t.a.objects().chain(t.b.objects()) {
        at.insert(o.clone(), c.clone());
    }
    let mut on = BTreeMap::new();
    for m in 0..g.cat().n_morphisms() {
        let id = g.cat().morphism_id(m).to_string();
        let map = match g.morphism_provenance(m) {
            MorProv::Block { vertex: VertexRef::Left(_), .. } => t.a.on(&id).clone(),
            MorProv::Block { vertex: VertexRef::Right(_), .. } => t.b.on(&id).clone(),
            MorProv::Cross { arrow, left_obj, inner } => {
                let l = q.arrow_src(arrow);
                let r = q.arrow_tgt(arrow);
                let oid = x_obj_id(d, l, left_obj);
                let s = f
                    .summands(&oid)
                    .iter()
                    .find(|s| s.arrow == arrow)
                    .expect("summand for outgoing arrow");
                let bg = t.b.on(&y_mor_id(d, r, inner));
                bg.compose(&s.proj.compose(t.phi.component(&oid))?)?
            }
        };
        on.insert(id, map);
    }
    Representation::new(g.cat().clone(), t.field(), at, on)
}

/// The contravariant analogue of [`pack_cov`]: ψ_x assembled from the cross
/// morphisms κ_{α,x}: (r, f_α(x)) → (l, x).
pub fn pack_contra(d: &BipartiteDiagram, m: &Representation) -> Result<TripleCoca> {
    let g = groth_contra(d)?;
    if m.shape() != g.cat() {
        return Err(Error::Invalid("pack_contra: representation is not over the contravariant construction".into()));
    }
    let (x_cat, _) = d.x_category();
    let (y_cat, _) = d.y_category();
    let a = m.restrict(&id_functor_into(&x_cat, g.cat())?)?;
    let b = m.restrict(&id_functor_into(&y_cat, g.cat())?)?;
    let f = apply_f(d, &b)?;
    let q = d.quiver();

    let mut comps = BTreeMap::new();
    for l in 0..q.left().len() {
        for x in 0..d.left_value(l).n_objects() {
            let oid = x_obj_id(d, l, x);
            let mut acc = ChainMap::zero(f.rep().at(&oid), a.at(&oid))?;
            for s in f.summands(&oid) {
                let kappa = g.cat().morphism_id(g.kappa(s.arrow, x));
                acc = acc.add(&m.on(kappa).compose(&s.proj)?)?;
            }
            comps.insert(oid, acc);
        }
    }
    let psi = NatTrans::new(f.rep().clone(), a.clone(), comps)?;
    Ok(TripleCoca { diagram: d.clone(), b, a, psi })
}

/// Reassemble the representation of the contravariant construction:
/// ψ_x ∘ incl_α ∘ b(g) on the cross morphism (α, g: y → f_α(x)).
pub fn unpack_contra(t: &TripleCoca) -> Result<Representation> {
    let d = &t.diagram;
    let g = groth_contra(d)?;
    let f = apply_f(d, &t.b)?;
    let q = d.quiver();

    let mut at = BTreeMap::new();
    for (o, c) in t.a.objects().chain(t.b.objects()) {
        at.insert(o.clone(), c.clone());
    }
    let mut on = BTreeMap::new();
    for m in 0..g.cat().n_morphisms() {
        let id = g.cat().morphism_id(m).to_string();
        let map = match g.morphism_provenance(m) {
            MorProv::Block { vertex: VertexRef::Left(_), .. } => t.a.on(&id).clone(),
            MorProv::Block { vertex: VertexRef::Right(_), .. } => t.b.on(&id).clone(),
            MorProv::Cross { arrow, left_obj, inner } => {
                let l = q.arrow_src(arrow);
                let r = q.arrow_tgt(arrow);
                let oid = x_obj_id(d, l, left_obj);
                let s = f
                    .summands(&oid)
                    .iter()
                    .find(|s| s.arrow == arrow)
                    .expect("summand for outgoing arrow");
                let bg = t.b.on(&y_mor_id(d, r, inner));
                t.psi.component(&oid).compose(&s.inj.compose(bg)?)?
            }
        };
        on.insert(id, map);
    }
    Representation::new(g.cat().clone(), t.field(), at, on)
}

/// (b, φ: a → Fb) ↦ (b, Fb → cone(φ)): b kept strictly, a replaced by the
/// objectwise cone with maps induced by functoriality, ψ the cone inclusions.
pub fn reflect_plus(t: &TripleCa) -> Result<TripleCoca> {
    let d = &t.diagram;
    let f = apply_f(d, &t.b)?;
    let x_cat = t.a.shape().clone();

    let mut at = BTreeMap::new();
    let mut incls = BTreeMap::new();
    for (oid, _) in t.a.objects() {
        let c = cone(t.phi.component(oid))?;
        at.insert(oid.clone(), c.complex);
        incls.insert(oid.clone(), c.incl);
    }
    let mut on = BTreeMap::new();
    for m in 0..x_cat.n_morphisms() {
        let id = x_cat.morphism_id(m);
        let (s, t2) = (x_cat.object_id(x_cat.src(m)), x_cat.object_id(x_cat.tgt(m)));
        on.insert(
            id.to_string(),
            cone_map(t.phi.component(s), t.phi.component(t2), t.a.on(id), f.rep().on(id))?,
        );
    }
    let a2 = Representation::new(x_cat, t.field(), at, on)?;
    let psi = NatTrans::new(f.rep().clone(), a2.clone(), incls)?;
    Ok(TripleCoca { diagram: d.clone(), b: t.b.clone(), a: a2, psi })
}

/// (b, ψ: Fb → a) ↦ (b, fib(ψ) → Fb): a replaced by the objectwise fibre,
/// φ the fibre projections.
pub fn reflect_minus(t: &TripleCoca) -> Result<TripleCa> {
    let d = &t.diagram;
    let f = apply_f(d, &t.b)?;
    let x_cat = t.a.shape().clone();

    let mut at = BTreeMap::new();
    let mut projs = BTreeMap::new();
    for (oid, _) in t.a.objects() {
        let c = fib(t.psi.component(oid))?;
        at.insert(oid.clone(), c.complex);
        projs.insert(oid.clone(), c.proj);
    }
    let mut on = BTreeMap::new();
    for m in 0..x_cat.n_morphisms() {
        let id = x_cat.morphism_id(m);
        let (s, t2) = (x_cat.object_id(x_cat.src(m)), x_cat.object_id(x_cat.tgt(m)));
        on.insert(
            id.to_string(),
            fib_map(t.psi.component(s), t.psi.component(t2), f.rep().on(id), t.a.on(id))?,
        );
    }
    let a2 = Representation::new(x_cat, t.field(), at, on)?;
    let phi = NatTrans::new(a2.clone(), f.rep().clone(), projs)?;
    Ok(TripleCa { diagram: d.clone(), b: t.b.clone(), a: a2, phi })
}

/// The reflection on representations of the covariant construction, defined
/// through the triple equivalences. The R-block is kept strictly.
pub fn r_plus(d: &BipartiteDiagram, m: &Representation) -> Result<Representation> {
    unpack_contra(&reflect_plus(&pack_cov(d, m)?)?)
}

/// The inverse direction, from the contravariant to the covariant side.
pub fn r_minus(d: &BipartiteDiagram, m: &Representation) -> Result<Representation> {
    unpack_cov(&reflect_minus(&pack_contra(d, m)?)?)
}

/// The unit a → fib(Fb → cone(φ)): componentwise v ↦ (−φ(v), v, 0) in the
/// layout F_n ⊕ a_n ⊕ F_{n+1}. The formula is re-verified (chain maps,
/// naturality, compatibility with the φ-structure up to the cone sign); any
/// failure is a hard error signalling a sign-convention bug. The verdict is
/// whether the unit is a pointwise quasi-isomorphism.
pub fn unit_comparison(t: &TripleCa) -> Result<(NatTrans, bool)> {
    let tm = reflect_minus(&reflect_plus(t)?)?;
    let f = apply_f(&t.diagram, &t.b)?;
    let field = t.field();

    let mut comps = BTreeMap::new();
    for (oid, a_x) in t.a.objects() {
        let fib_x = tm.a.at(oid);
        let f_x = f.rep().at(oid);
        let phi_x = t.phi.component(oid);
        let mut mats = BTreeMap::new();
        for n in a_x.support() {
            let an = a_x.dim(n);
            let top = phi_x.component(n).neg();
            let mid = Matrix::identity(field, an);
            let bot = Matrix::zero(field, f_x.dim(n + 1), an);
            mats.insert(n, Matrix::vstack(field, &[&top, &mid, &bot])?);
        }
        let cm = ChainMap::new(a_x.clone(), fib_x.clone(), mats)?;
        if !cm.validate().is_empty() {
            return Err(Error::SelfCheck(format!("unit candidate at {oid} is not a chain map")));
        }
        // Triangle compatibility: projecting the unit back to F(b) must give
        // −φ under this sign convention.
        let back = tm.phi.component(oid).compose(&cm)?;
        if back != phi_x.neg() {
            return Err(Error::SelfCheck(format!("unit at {oid} is incompatible with the phi structure")));
        }
        comps.insert(oid.clone(), cm);
    }
    let eta = NatTrans::new(t.a.clone(), tm.a.clone(), comps)?;
    if !eta.validate().is_empty() {
        return Err(Error::SelfCheck("unit comparison is not natural".into()));
    }
    let verdict = eta.pointwise_qiso();
    Ok((eta, verdict))
}

/// The counit cone(fib(ψ) → Fb) → a: componentwise (u, v, w) ↦ v − ψ(w) in
/// the layout F_{n−1} ⊕ a_n ⊕ F_n. Verified like the unit.
pub fn counit_comparison(t: &TripleCoca) -> Result<(NatTrans, bool)> {
    let tp = reflect_plus(&reflect_minus(t)?)?;
    let f = apply_f(&t.diagram, &t.b)?;
    let field = t.field();

    let mut comps = BTreeMap::new();
    for (oid, a_x) in t.a.objects() {
        let cone_x = tp.a.at(oid);
        let f_x = f.rep().at(oid);
        let psi_x = t.psi.component(oid);
        let mut mats = BTreeMap::new();
        for n in cone_x.support() {
            let an = a_x.dim(n);
            let left = Matrix::zero(field, an, f_x.dim(n - 1));
            let mid = Matrix::identity(field, an);
            let right = psi_x.component(n).neg();
            mats.insert(n, Matrix::hstack(field, &[&left, &mid, &right])?);
        }
        let cm = ChainMap::new(cone_x.clone(), a_x.clone(), mats)?;
        if !cm.validate().is_empty() {
            return Err(Error::SelfCheck(format!("counit candidate at {oid} is not a chain map")));
        }
        // Precomposing with the cone inclusion of F(b) must give −ψ.
        let back = cm.compose(tp.psi.component(oid))?;
        if back != psi_x.neg() {
            return Err(Error::SelfCheck(format!("counit at {oid} is incompatible with the psi structure")));
        }
        comps.insert(oid.clone(), cm);
    }
    let eps = NatTrans::new(tp.a.clone(), t.a.clone(), comps)?;
    if !eps.validate().is_empty() {
        return Err(Error::SelfCheck("counit comparison is not natural".into()));
    }
    let verdict = eps.pointwise_qiso();
    Ok((eps, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{point, FinPoset};
    use crate::groth::{build_kronecker, cone_diagram, star_diagram};

    fn gf5() -> Field {
        Field::prime(5).unwrap()
    }

    /// The d=1, X=pt, Y=pt diagram (the arrow category shape).
    fn arrow_diagram() -> BipartiteDiagram {
        let pt = point();
        build_kronecker(&pt, &pt, &[Functor::identity(&pt)]).unwrap()
    }

    /// Triple (b=k, a=k, phi=id) over the arrow diagram.
    fn identity_triple(field: Field) -> TripleCa {
        let d = arrow_diagram();
        let k = ChainComplex::sphere(field, 0);
        let b = Representation::constant(d.y_category().0, k.clone());
        let a = Representation::constant(d.x_category().0, k);
        let f = apply_f(&d, &b).unwrap();
        let phi = NatTrans::new(a.clone(), f.rep().clone(), BTreeMap::from([(
            "0/0".to_string(),
            ChainMap::identity(a.at("0/0")),
        )]))
        .unwrap();
        TripleCa::new(d, b, a, phi).unwrap()
    }

    /// GS star data over pt with 3 chosen objects of an antichain, M of
    /// degree-0 dimension vector (1; 1,1,1) with injective diagonal phi.
    fn d4_star_triple(field: Field) -> TripleCa {
        let y = FinPoset::antichain(3).to_category();
        let d = star_diagram(&y, &[0, 1, 2]).unwrap();
        let k = ChainComplex::sphere(field, 0);
        let b = Representation::constant(d.y_category().0, k.clone());
        let a = Representation::constant(d.x_category().0, k);
        let f = apply_f(&d, &b).unwrap();
        let diag = Matrix::from_i64(field, &[&[1], &[1], &[1]]);
        let phi_map = ChainMap::new(a.at("0/0").clone(), f.rep().at("0/0").clone(), BTreeMap::from([(0, diag)]))
            .unwrap();
        let phi = NatTrans::new(a.clone(), f.rep().clone(), BTreeMap::from([("0/0".to_string(), phi_map)]))
            .unwrap();
        TripleCa::new(d, b, a, phi).unwrap()
    }

    #[test]
    fn apply_f_no_outgoing_arrows_is_zero() {
        let x = FinPoset::chain(2).to_category();
        let y = point();
        let d = build_kronecker(&x, &y, &[]).unwrap();
        let b = Representation::constant(d.y_category().0, ChainComplex::sphere(gf5(), 0));
        let f = apply_f(&d, &b).unwrap();
        assert!(f.rep().at("0/0").is_zero_complex());
        assert!(f.rep().at("0/1").is_zero_complex());
    }

    #[test]
    fn apply_f_star_is_direct_sum() {
        let y = FinPoset::antichain(3).to_category();
        let d = star_diagram(&y, &[0, 1, 2]).unwrap();
        let b = Representation::constant(d.y_category().0, ChainComplex::sphere(gf5(), 0));
        let f = apply_f(&d, &b).unwrap();
        assert_eq!(f.rep().at("0/0").dim(0), 3);
        assert!(f.rep().validate().is_empty());
    }

    #[test]
    fn apply_f_kronecker_example_dims() {
        // X = {0→1}, Y = {0→1→2}, f1 inclusion, f2 constant at 2, spheres of
        // dims (1,1,1) at the Y objects.
        let x = FinPoset::chain(2).to_category();
        let y = FinPoset::chain(3).to_category();
        let f1 = Functor::between_posets(&x, &y, &[0, 1]).unwrap();
        let f2 = Functor::between_posets(&x, &y, &[2, 2]).unwrap();
        let d = build_kronecker(&x, &y, &[f1, f2]).unwrap();
        let b = Representation::constant(d.y_category().0, ChainComplex::sphere(gf5(), 0));
        let f = apply_f(&d, &b).unwrap();
        assert_eq!(f.rep().at("0/0").dim(0), 2);
        assert_eq!(f.rep().at("0/1").dim(0), 2);
        assert!(f.rep().validate().is_empty());
    }

    #[test]
    fn pack_cov_arrow_category() {
        let d = arrow_diagram();
        let g = groth_cov(&d).unwrap();
        let k = ChainComplex::sphere(gf5(), 0);
        let m = Representation::constant(g.cat().clone(), k.clone());
        let t = pack_cov(&d, &m).unwrap();
        assert_eq!(t.a().at("0/0"), &k);
        assert_eq!(t.b().at("1/0"), &k);
        assert_eq!(t.phi().component("0/0"), &ChainMap::identity(&k));
        assert!(t.validate().is_empty());

        // Zero representation → zero triple.
        let z = Representation::zero(g.cat().clone(), gf5());
        let tz = pack_cov(&d, &z).unwrap();
        assert_eq!(tz, TripleCa::zero(&d, gf5()));
    }

    #[test]
    fn pack_unpack_roundtrip_cov() {
        let d = arrow_diagram();
        let g = groth_cov(&d).unwrap();
        let m = Representation::constant(g.cat().clone(), ChainComplex::sphere(gf5(), 0));
        let t = pack_cov(&d, &m).unwrap();
        assert_eq!(unpack_cov(&t).unwrap(), m);

        let z = TripleCa::zero(&d, gf5());
        let mz = unpack_cov(&z).unwrap();
        assert!(mz.objects().all(|(_, c)| c.is_zero_complex()));
        assert_eq!(pack_cov(&d, &mz).unwrap(), z);
    }

    #[test]
    fn pack_unpack_roundtrip_contra() {
        let d = arrow_diagram();
        let g = groth_contra(&d).unwrap();
        let m = Representation::constant(g.cat().clone(), ChainComplex::sphere(gf5(), 0));
        let t = pack_contra(&d, &m).unwrap();
        assert_eq!(t.psi().component("0/0"), &ChainMap::identity(t.a().at("0/0")));
        assert_eq!(unpack_contra(&t).unwrap(), m);
    }

    #[test]
    fn reflect_plus_of_identity_is_acyclic() {
        let t = identity_triple(gf5());
        let out = reflect_plus(&t).unwrap();
        assert!(out.a().at("0/0").is_acyclic());
        assert_eq!(out.b(), t.b());
        assert!(out.validate().is_empty());
    }

    #[test]
    fn reflect_plus_simple_at_source_is_shifted() {
        // a = k at the source, b = 0: cone(k → 0) = k in degree 1.
        let d = arrow_diagram();
        let b = Representation::zero(d.y_category().0, gf5());
        let a = Representation::constant(d.x_category().0, ChainComplex::sphere(gf5(), 0));
        let f = apply_f(&d, &b).unwrap();
        let phi = NatTrans::zero(&a, f.rep()).unwrap();
        let t = TripleCa::new(d, b, a, phi).unwrap();
        let out = reflect_plus(&t).unwrap();
        let c = out.a().at("0/0");
        assert_eq!(c.homology_dim(1), 1);
        assert_eq!(c.homology_dim(0), 0);
        assert_eq!(c.euler_char(), -1);
    }

    #[test]
    fn reflect_minus_of_zero_psi_splits() {
        let field = gf5();
        let d = arrow_diagram();
        let b = Representation::constant(d.y_category().0, ChainComplex::disk(field, 1));
        let a = Representation::constant(d.x_category().0, ChainComplex::sphere(field, 0));
        let f = apply_f(&d, &b).unwrap();
        let psi = NatTrans::zero(f.rep(), &a).unwrap();
        let t = TripleCoca::new(d, b, a.clone(), psi).unwrap();
        let out = reflect_minus(&t).unwrap();
        let (expected, _, _) =
            direct_sum(field, &[f.rep().at("0/0").clone(), a.at("0/0").shift(-1)]).unwrap();
        assert_eq!(out.a().at("0/0"), &expected);
    }

    #[test]
    fn euler_reflection_identity() {
        let field = gf5();
        for t in [identity_triple(field), d4_star_triple(field)] {
            let out = reflect_plus(&t).unwrap();
            let q = t.diagram().quiver();
            for l in 0..q.left().len() {
                for x in 0..t.diagram().left_value(l).n_objects() {
                    let oid = x_obj_id(t.diagram(), l, x);
                    let mut rhs = -t.a().at(&oid).euler_char();
                    for &a in &q.arrows_from(l) {
                        let y = t.diagram().functor(a).apply_obj(x);
                        rhs += t.b().at(&y_obj_id(t.diagram(), q.arrow_tgt(a), y)).euler_char();
                    }
                    assert_eq!(out.a().at(&oid).euler_char(), rhs);
                }
            }
        }
    }

    #[test]
    fn r_plus_classical_a2_and_d4() {
        // A₂ source reflection of M = (k →id k): homology dims (0, 1).
        let t = identity_triple(gf5());
        let m = unpack_cov(&t).unwrap();
        let out = r_plus(t.diagram(), &m).unwrap();
        assert!(out.at("0/0").is_acyclic());
        assert_eq!(out.at("1/0").homology_dim(0), 1);
        assert!(out.validate().is_empty());

        // D₄ star with dimension vector (1; 1,1,1): reflected vertex gets
        // coker(k → k³) of dimension 2, in degree 0 only.
        let t = d4_star_triple(gf5());
        let m = unpack_cov(&t).unwrap();
        let out = r_plus(t.diagram(), &m).unwrap();
        assert_eq!(out.at("0/0").homology_table(), std::collections::BTreeMap::from([(0, 2)]));
        for y in ["1/0", "1/1", "1/2"] {
            assert_eq!(out.at(y).homology_dim(0), 1);
        }
    }

    #[test]
    fn r_plus_cone_reflection() {
        // X with a terminal object adjoined; (R₊M) at the new initial object
        // equals M at the old terminal object and the rest are cones.
        let field = gf5();
        let x = FinPoset::chain(2).to_category();
        let d = cone_diagram(&x).unwrap();
        let g = groth_cov(&d).unwrap();
        let m = Representation::constant(g.cat().clone(), ChainComplex::sphere(field, 0));
        let out = r_plus(&d, &m).unwrap();
        assert_eq!(out.at("1/0"), m.at("1/0"));
        // Each (R₊M)_x is the cone of an identity, hence acyclic here.
        assert!(out.at("0/0").is_acyclic());
        assert!(out.at("0/1").is_acyclic());
        assert!(out.validate().is_empty());
    }

    #[test]
    fn unit_comparison_examples() {
        let field = gf5();
        let d = arrow_diagram();

        let z = TripleCa::zero(&d, field);
        let (eta, verdict) = unit_comparison(&z).unwrap();
        assert!(verdict);
        assert!(eta.components().values().all(|c| c.components().is_empty()));

        let t = identity_triple(field);
        let (eta, verdict) = unit_comparison(&t).unwrap();
        assert!(verdict);
        assert!(eta.validate().is_empty());

        let t = d4_star_triple(Field::rationals());
        let (_, verdict) = unit_comparison(&t).unwrap();
        assert!(verdict);
    }

    #[test]
    fn counit_comparison_examples() {
        let field = gf5();
        let d = arrow_diagram();

        let z = TripleCoca::zero(&d, field);
        let (_, verdict) = counit_comparison(&z).unwrap();
        assert!(verdict);

        // psi = id.
        let k = ChainComplex::sphere(field, 0);
        let b = Representation::constant(d.y_category().0, k.clone());
        let a = Representation::constant(d.x_category().0, k);
        let f = apply_f(&d, &b).unwrap();
        let psi = NatTrans::new(f.rep().clone(), a.clone(), BTreeMap::from([(
            "0/0".to_string(),
            ChainMap::identity(a.at("0/0")),
        )]))
        .unwrap();
        let t = TripleCoca::new(d, b, a, psi).unwrap();
        let (eps, verdict) = counit_comparison(&t).unwrap();
        assert!(verdict);
        assert!(eps.validate().is_empty());
    }

    #[test]
    fn r_minus_undoes_r_plus_up_to_qiso() {
        let t = d4_star_triple(gf5());
        let (_, verdict) = unit_comparison(&t).unwrap();
        assert!(verdict);
        let m = unpack_cov(&t).unwrap();
        let back = r_minus(t.diagram(), &r_plus(t.diagram(), &m).unwrap()).unwrap();
        // Same homology at every object.
        for (o, c) in m.objects() {
            assert_eq!(back.at(o).homology_table(), c.homology_table());
        }
    }
}
