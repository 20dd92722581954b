//! The JSON layer: parsing input documents into core types and emitting
//! results. All numbers are exact; rationals travel as "num/den" strings.
//!
//! Document envelope: {"schema": 1, "kind": ..., ...}. Kinds: "poset",
//! "category", "diagram", "representation", "triple". Emission order is
//! fixed, so repeated runs are byte-identical.

use crate::CliError;
use num::BigInt;
use refl_core::chain::{ChainComplex, ChainMap};
use refl_core::exactlin::{Field, Matrix, Scalar};
use refl_core::fincat::{FinCat, FinPoset, Functor};
use refl_core::groth::{BipartiteDiagram, BipartiteQuiver, GrothCat, MorProv, VertexRef};
use refl_core::reflect::{apply_f, TripleCa, TripleCoca};
use refl_core::rep::{NatTrans, Representation};
use serde_json::{Map, Value};
use std::collections::{BTreeMap, HashMap};

pub type CResult<T> = Result<T, CliError>;

pub const SCHEMA_VERSION: u64 = 1;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn load(path: &std::path::Path) -> CResult<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: invalid JSON: {e}", path.display())))
}

fn obj<'a>(v: &'a Value, what: &str) -> CResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| input(format!("{what}: expected a JSON object")))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> CResult<&'a Value> {
    m.get(key).ok_or_else(|| input(format!("{what}: missing key \"{key}\"")))
}

fn str_of<'a>(v: &'a Value, what: &str) -> CResult<&'a str> {
    v.as_str().ok_or_else(|| input(format!("{what}: expected a string")))
}

fn arr<'a>(v: &'a Value, what: &str) -> CResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| input(format!("{what}: expected an array")))
}

pub fn check_envelope(v: &Value, kind: &str) -> CResult<()> {
    let m = obj(v, "document")?;
    match m.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        _ => return Err(input(format!("document: schema version {SCHEMA_VERSION} required"))),
    }
    let k = str_of(get(m, "kind", "document")?, "kind")?;
    if k != kind {
        return Err(input(format!("document: expected kind \"{kind}\", found \"{k}\"")));
    }
    Ok(())
}

// ---------------------------------------------------------------- field

pub fn field_of(v: &Value) -> CResult<Field> {
    let m = obj(v, "field")?;
    match str_of(get(m, "type", "field")?, "field.type")? {
        "fp" => {
            let p = get(m, "p", "field")?
                .as_u64()
                .ok_or_else(|| input("field.p: expected an integer"))?;
            Field::prime(p).map_err(|e| input(e.to_string()))
        }
        "q" => Ok(Field::Q),
        other => Err(input(format!("field.type: unknown \"{other}\""))),
    }
}

pub fn json_field(field: Field) -> Value {
    let mut m = Map::new();
    match field {
        Field::Fp(p) => {
            m.insert("type".into(), "fp".into());
            m.insert("p".into(), p.into());
        }
        Field::Q => {
            m.insert("type".into(), "q".into());
        }
    }
    Value::Object(m)
}

/// Accepted on the command line: "q" or "fp:<prime>".
pub fn field_from_flag(s: &str) -> CResult<Field> {
    if s == "q" {
        return Ok(Field::Q);
    }
    if let Some(p) = s.strip_prefix("fp:") {
        let p: u64 = p.parse().map_err(|_| input(format!("--field: bad prime \"{p}\"")))?;
        return Field::prime(p).map_err(|e| input(e.to_string()));
    }
    Err(input(format!("--field: expected \"q\" or \"fp:<prime>\", found \"{s}\"")))
}

// ---------------------------------------------------------------- scalars

fn scalar_of(v: &Value, field: Field) -> CResult<Scalar> {
    match field {
        Field::Fp(_) => {
            let n = v.as_i64().ok_or_else(|| input("matrix entry: expected an integer"))?;
            Ok(field.from_i64(n))
        }
        Field::Q => {
            if let Some(n) = v.as_i64() {
                return Ok(field.from_i64(n));
            }
            let s = str_of(v, "matrix entry")?;
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a, b),
                None => (s, "1"),
            };
            let num = num
                .parse::<BigInt>()
                .map_err(|_| input(format!("matrix entry: bad numerator \"{num}\"")))?;
            let den = den
                .parse::<BigInt>()
                .map_err(|_| input(format!("matrix entry: bad denominator \"{den}\"")))?;
            if den == BigInt::from(0) {
                return Err(input("matrix entry: zero denominator"));
            }
            Ok(Scalar::Q(num::BigRational::new(num, den)))
        }
    }
}

fn json_scalar(s: &Scalar) -> Value {
    match s {
        Scalar::Fp(x) => Value::from(*x),
        Scalar::Q(r) => Value::from(format!("{}/{}", r.numer(), r.denom())),
    }
}

// ---------------------------------------------------------------- matrices

pub fn matrix_of(v: &Value, field: Field, rows: usize, cols: usize) -> CResult<Matrix> {
    let rs = arr(v, "matrix")?;
    if rs.len() != rows {
        return Err(input(format!("matrix: expected {rows} rows, found {}", rs.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for r in rs {
        let es = arr(r, "matrix row")?;
        if es.len() != cols {
            return Err(input(format!("matrix: expected {cols} columns, found {}", es.len())));
        }
        out.push(es.iter().map(|e| scalar_of(e, field)).collect::<CResult<Vec<_>>>()?);
    }
    Matrix::from_rows(field, out).map_err(CliError::from)
}

pub fn json_matrix(m: &Matrix) -> Value {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        rows.push(Value::Array((0..m.cols()).map(|j| json_scalar(m.get(i, j))).collect()));
    }
    Value::Array(rows)
}

// ---------------------------------------------------------------- complexes

fn degree_of(key: &str) -> CResult<i64> {
    key.parse().map_err(|_| input(format!("bad degree key \"{key}\"")))
}

pub fn complex_of(v: &Value, field: Field) -> CResult<ChainComplex> {
    let m = obj(v, "complex")?;
    let mut dims = BTreeMap::new();
    for (k, d) in obj(get(m, "dims", "complex")?, "complex.dims")? {
        let dim = d.as_u64().ok_or_else(|| input("complex.dims: expected an integer"))? as usize;
        dims.insert(degree_of(k)?, dim);
    }
    let mut diff = BTreeMap::new();
    if let Some(dv) = m.get("d") {
        for (k, mv) in obj(dv, "complex.d")? {
            let n = degree_of(k)?;
            let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
            let cols = dims.get(&n).copied().unwrap_or(0);
            diff.insert(n, matrix_of(mv, field, rows, cols)?);
        }
    }
    ChainComplex::new(field, dims, diff).map_err(CliError::from)
}

pub fn json_complex(c: &ChainComplex) -> Value {
    let mut dims = Map::new();
    for (n, d) in c.dims() {
        dims.insert(n.to_string(), Value::from(*d as u64));
    }
    let mut diff = Map::new();
    for (n, m) in c.diffs() {
        if !m.is_zero() {
            diff.insert(n.to_string(), json_matrix(m));
        }
    }
    let mut out = Map::new();
    out.insert("dims".into(), Value::Object(dims));
    out.insert("d".into(), Value::Object(diff));
    Value::Object(out)
}

fn chain_map_of(v: &Value, src: &ChainComplex, tgt: &ChainComplex) -> CResult<ChainMap> {
    let field = src.field();
    let mut comps = BTreeMap::new();
    for (k, mv) in obj(v, "chain map")? {
        let n = degree_of(k)?;
        comps.insert(n, matrix_of(mv, field, tgt.dim(n), src.dim(n))?);
    }
    ChainMap::new(src.clone(), tgt.clone(), comps).map_err(CliError::from)
}

fn json_chain_map(f: &ChainMap) -> Value {
    let mut comps = Map::new();
    for (n, m) in f.components() {
        if !m.is_zero() {
            comps.insert(n.to_string(), json_matrix(m));
        }
    }
    Value::Object(comps)
}

// ---------------------------------------------------------------- posets and categories

pub fn poset_of(v: &Value) -> CResult<FinPoset> {
    let m = obj(v, "poset")?;
    let objects = arr(get(m, "objects", "poset")?, "poset.objects")?
        .iter()
        .map(|o| str_of(o, "poset object").map(String::from))
        .collect::<CResult<Vec<_>>>()?;
    let mut covers = Vec::new();
    if let Some(cv) = m.get("covers") {
        for c in arr(cv, "poset.covers")? {
            let pair = arr(c, "cover")?;
            if pair.len() != 2 {
                return Err(input("cover: expected a pair [below, above]"));
            }
            covers.push((
                str_of(&pair[0], "cover")?.to_string(),
                str_of(&pair[1], "cover")?.to_string(),
            ));
        }
    }
    FinPoset::from_covers(objects, &covers).map_err(CliError::from)
}

pub fn json_poset(p: &FinPoset) -> Value {
    let mut m = Map::new();
    m.insert(
        "objects".into(),
        Value::Array(p.object_ids().iter().map(|o| Value::from(o.clone())).collect()),
    );
    m.insert(
        "covers".into(),
        Value::Array(
            p.covers()
                .into_iter()
                .map(|(i, j)| {
                    Value::Array(vec![
                        Value::from(p.object_ids()[i].clone()),
                        Value::from(p.object_ids()[j].clone()),
                    ])
                })
                .collect(),
        ),
    );
    Value::Object(m)
}

pub fn category_of(v: &Value) -> CResult<FinCat> {
    let m = obj(v, "category")?;
    let objects = arr(get(m, "objects", "category")?, "category.objects")?
        .iter()
        .map(|o| str_of(o, "object").map(String::from))
        .collect::<CResult<Vec<_>>>()?;
    let mut morphisms = Vec::new();
    for mor in arr(get(m, "morphisms", "category")?, "category.morphisms")? {
        let mm = obj(mor, "morphism")?;
        morphisms.push((
            str_of(get(mm, "id", "morphism")?, "morphism.id")?.to_string(),
            str_of(get(mm, "src", "morphism")?, "morphism.src")?.to_string(),
            str_of(get(mm, "tgt", "morphism")?, "morphism.tgt")?.to_string(),
        ));
    }
    let mut identities = Vec::new();
    for idp in arr(get(m, "identities", "category")?, "category.identities")? {
        let pair = arr(idp, "identity")?;
        if pair.len() != 2 {
            return Err(input("identity: expected a pair [object, morphism]"));
        }
        identities.push((
            str_of(&pair[0], "identity")?.to_string(),
            str_of(&pair[1], "identity")?.to_string(),
        ));
    }
    let mut compositions = Vec::new();
    for t in arr(get(m, "composition", "category")?, "category.composition")? {
        let triple = arr(t, "composition entry")?;
        if triple.len() != 3 {
            return Err(input("composition entry: expected a triple [g, f, gf]"));
        }
        compositions.push((
            str_of(&triple[0], "composition")?.to_string(),
            str_of(&triple[1], "composition")?.to_string(),
            str_of(&triple[2], "composition")?.to_string(),
        ));
    }
    FinCat::new(objects, morphisms, identities, compositions).map_err(CliError::from)
}

pub fn json_category(c: &FinCat) -> Value {
    let mut m = Map::new();
    m.insert(
        "objects".into(),
        Value::Array(c.object_ids().iter().map(|o| Value::from(o.clone())).collect()),
    );
    let mut mors = Vec::with_capacity(c.n_morphisms());
    for i in 0..c.n_morphisms() {
        let mut mm = Map::new();
        mm.insert("id".into(), c.morphism_id(i).into());
        mm.insert("src".into(), c.object_id(c.src(i)).into());
        mm.insert("tgt".into(), c.object_id(c.tgt(i)).into());
        mors.push(Value::Object(mm));
    }
    m.insert("morphisms".into(), Value::Array(mors));
    m.insert(
        "identities".into(),
        Value::Array(
            (0..c.n_objects())
                .map(|o| {
                    Value::Array(vec![
                        c.object_id(o).into(),
                        c.morphism_id(c.identity_of(o)).into(),
                    ])
                })
                .collect(),
        ),
    );
    let mut comp = Vec::new();
    for g in 0..c.n_morphisms() {
        for f in 0..c.n_morphisms() {
            if let Some(gf) = c.compose(g, f) {
                comp.push(Value::Array(vec![
                    c.morphism_id(g).into(),
                    c.morphism_id(f).into(),
                    c.morphism_id(gf).into(),
                ]));
            }
        }
    }
    m.insert("composition".into(), Value::Array(comp));
    Value::Object(m)
}

/// A category-valued position: either {"poset": {...}} (morphism ids are
/// generated as "1_x" and "x->y") or {"category": {...}} in full.
pub fn cat_value_of(v: &Value) -> CResult<FinCat> {
    let m = obj(v, "value")?;
    if let Some(p) = m.get("poset") {
        return Ok(poset_of(p)?.to_category());
    }
    if let Some(c) = m.get("category") {
        return category_of(c);
    }
    Err(input("value: expected {\"poset\": ...} or {\"category\": ...}"))
}

pub fn json_cat_value(c: &FinCat) -> Value {
    let mut m = Map::new();
    m.insert("category".into(), json_category(c));
    Value::Object(m)
}

// ---------------------------------------------------------------- diagrams

pub fn functor_of(v: &Value, src: &FinCat, tgt: &FinCat) -> CResult<Functor> {
    let m = obj(v, "functor")?;
    let mut objects = HashMap::new();
    for (k, val) in obj(get(m, "objects", "functor")?, "functor.objects")? {
        objects.insert(k.clone(), str_of(val, "functor object image")?.to_string());
    }
    match m.get("morphisms") {
        Some(mv) => {
            let mut morphisms = HashMap::new();
            for (k, val) in obj(mv, "functor.morphisms")? {
                morphisms.insert(k.clone(), str_of(val, "functor morphism image")?.to_string());
            }
            Functor::new(src.clone(), tgt.clone(), &objects, &morphisms).map_err(CliError::from)
        }
        None => {
            // Morphism images omitted: forced when all target hom-sets hit
            // are singletons (poset-shaped targets).
            let mut obj_map = Vec::with_capacity(src.n_objects());
            for o in src.object_ids() {
                let image = objects
                    .get(o)
                    .ok_or_else(|| input(format!("functor: object {o} not mapped")))?;
                obj_map.push(
                    tgt.object_index(image)
                        .ok_or_else(|| input(format!("functor: unknown target object {image}")))?,
                );
            }
            Functor::between_posets(src, tgt, &obj_map).map_err(CliError::from)
        }
    }
}

pub fn json_functor(f: &Functor) -> Value {
    let mut objects = Map::new();
    for (o, &img) in f.obj_map().iter().enumerate() {
        objects.insert(f.src().object_id(o).to_string(), f.tgt().object_id(img).into());
    }
    let mut morphisms = Map::new();
    for (m, &img) in f.mor_map().iter().enumerate() {
        morphisms.insert(f.src().morphism_id(m).to_string(), f.tgt().morphism_id(img).into());
    }
    let mut out = Map::new();
    out.insert("objects".into(), Value::Object(objects));
    out.insert("morphisms".into(), Value::Object(morphisms));
    Value::Object(out)
}

pub fn diagram_payload_of(v: &Value) -> CResult<BipartiteDiagram> {
    let m = obj(v, "diagram")?;
    let qm = obj(get(m, "quiver", "diagram")?, "diagram.quiver")?;
    let left = arr(get(qm, "left", "quiver")?, "quiver.left")?
        .iter()
        .map(|x| str_of(x, "vertex").map(String::from))
        .collect::<CResult<Vec<_>>>()?;
    let right = arr(get(qm, "right", "quiver")?, "quiver.right")?
        .iter()
        .map(|x| str_of(x, "vertex").map(String::from))
        .collect::<CResult<Vec<_>>>()?;
    let mut arrows = Vec::new();
    for a in arr(get(qm, "arrows", "quiver")?, "quiver.arrows")? {
        let am = obj(a, "arrow")?;
        arrows.push((
            str_of(get(am, "id", "arrow")?, "arrow.id")?.to_string(),
            str_of(get(am, "src", "arrow")?, "arrow.src")?.to_string(),
            str_of(get(am, "tgt", "arrow")?, "arrow.tgt")?.to_string(),
        ));
    }
    let quiver = BipartiteQuiver::new(left.clone(), right.clone(), arrows)?;
    let values = obj(get(m, "values", "diagram")?, "diagram.values")?;
    let mut left_values = Vec::new();
    for v in &left {
        left_values.push(cat_value_of(get(values, v, "diagram.values")?)?);
    }
    let mut right_values = Vec::new();
    for v in &right {
        right_values.push(cat_value_of(get(values, v, "diagram.values")?)?);
    }
    let fm = obj(get(m, "functors", "diagram")?, "diagram.functors")?;
    let mut functors = Vec::new();
    for a in 0..quiver.n_arrows() {
        let fv = get(fm, quiver.arrow_id(a), "diagram.functors")?;
        functors.push(functor_of(
            fv,
            &left_values[quiver.arrow_src(a)],
            &right_values[quiver.arrow_tgt(a)],
        )?);
    }
    let d = BipartiteDiagram::new(quiver, left_values, right_values, functors)?;
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(refl_core::Error::from(violations).into());
    }
    Ok(d)
}

pub fn diagram_of(v: &Value) -> CResult<BipartiteDiagram> {
    check_envelope(v, "diagram")?;
    diagram_payload_of(v)
}

pub fn json_diagram_payload(d: &BipartiteDiagram, out: &mut Map<String, Value>) {
    let q = d.quiver();
    let mut qm = Map::new();
    qm.insert(
        "left".into(),
        Value::Array(q.left().iter().map(|v| Value::from(v.clone())).collect()),
    );
    qm.insert(
        "right".into(),
        Value::Array(q.right().iter().map(|v| Value::from(v.clone())).collect()),
    );
    let mut arrows = Vec::new();
    for a in 0..q.n_arrows() {
        let mut am = Map::new();
        am.insert("id".into(), q.arrow_id(a).into());
        am.insert("src".into(), q.left()[q.arrow_src(a)].clone().into());
        am.insert("tgt".into(), q.right()[q.arrow_tgt(a)].clone().into());
        arrows.push(Value::Object(am));
    }
    qm.insert("arrows".into(), Value::Array(arrows));
    out.insert("quiver".into(), Value::Object(qm));
    let mut values = Map::new();
    for (l, v) in q.left().iter().enumerate() {
        values.insert(v.clone(), json_cat_value(d.left_value(l)));
    }
    for (r, v) in q.right().iter().enumerate() {
        values.insert(v.clone(), json_cat_value(d.right_value(r)));
    }
    out.insert("values".into(), Value::Object(values));
    let mut functors = Map::new();
    for a in 0..q.n_arrows() {
        functors.insert(q.arrow_id(a).to_string(), json_functor(d.functor(a)));
    }
    out.insert("functors".into(), Value::Object(functors));
}

pub fn json_diagram(d: &BipartiteDiagram) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA_VERSION.into());
    out.insert("kind".into(), "diagram".into());
    json_diagram_payload(d, &mut out);
    Value::Object(out)
}

// ---------------------------------------------------------------- representations

fn rep_payload_of(m: &Map<String, Value>, shape: FinCat, field: Field) -> CResult<Representation> {
    let mut at = BTreeMap::new();
    for (o, cv) in obj(get(m, "objects", "representation")?, "representation.objects")? {
        if shape.object_index(o).is_none() {
            return Err(input(format!("representation: unknown object {o}")));
        }
        at.insert(o.clone(), complex_of(cv, field)?);
    }
    let mut on = BTreeMap::new();
    if let Some(mv) = m.get("morphisms") {
        for (id, comps) in obj(mv, "representation.morphisms")? {
            let mi = shape
                .morphism_index(id)
                .ok_or_else(|| input(format!("representation: unknown morphism {id}")))?;
            let zero = ChainComplex::zero(field);
            let src = at.get(shape.object_id(shape.src(mi))).unwrap_or(&zero);
            let tgt = at.get(shape.object_id(shape.tgt(mi))).unwrap_or(&zero);
            on.insert(id.clone(), chain_map_of(comps, src, tgt)?);
        }
    }
    let rep = Representation::new(shape, field, at, on)?;
    let violations = rep.validate();
    if !violations.is_empty() {
        return Err(refl_core::Error::from(violations).into());
    }
    Ok(rep)
}

/// A full representation document, shape inline.
pub fn rep_of(v: &Value) -> CResult<Representation> {
    check_envelope(v, "representation")?;
    let m = obj(v, "representation")?;
    let field = field_of(get(m, "field", "representation")?)?;
    let shape = cat_value_of(get(m, "shape", "representation")?)?;
    rep_payload_of(m, shape, field)
}

/// A representation document checked against an externally constructed shape
/// (e.g. a Grothendieck construction); the inline shape, when present, must
/// match.
pub fn rep_over_of(v: &Value, shape: &FinCat) -> CResult<Representation> {
    check_envelope(v, "representation")?;
    let m = obj(v, "representation")?;
    let field = field_of(get(m, "field", "representation")?)?;
    if let Some(sv) = m.get("shape") {
        let inline = cat_value_of(sv)?;
        if &inline != shape {
            return Err(input("representation: inline shape differs from the constructed shape"));
        }
    }
    rep_payload_of(m, shape.clone(), field)
}

fn json_rep_payload(r: &Representation, out: &mut Map<String, Value>) {
    let mut objects = Map::new();
    for o in r.shape().object_ids() {
        objects.insert(o.clone(), json_complex(r.at(o)));
    }
    out.insert("objects".into(), Value::Object(objects));
    let mut morphisms = Map::new();
    for i in 0..r.shape().n_morphisms() {
        let id = r.shape().morphism_id(i);
        if r.shape().is_identity(i) {
            continue;
        }
        let jm = json_chain_map(r.on(id));
        morphisms.insert(id.to_string(), jm);
    }
    out.insert("morphisms".into(), Value::Object(morphisms));
}

pub fn json_rep(r: &Representation) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA_VERSION.into());
    out.insert("kind".into(), "representation".into());
    out.insert("field".into(), json_field(r.field()));
    out.insert("shape".into(), json_cat_value(r.shape()));
    json_rep_payload(r, &mut out);
    Value::Object(out)
}

// ---------------------------------------------------------------- triples

fn nat_components_of(
    v: &Value,
    src: &Representation,
    tgt: &Representation,
) -> CResult<BTreeMap<String, ChainMap>> {
    let mut components = BTreeMap::new();
    for (o, cv) in obj(v, "components")? {
        if src.shape().object_index(o).is_none() {
            return Err(input(format!("components: unknown object {o}")));
        }
        components.insert(o.clone(), chain_map_of(cv, src.at(o), tgt.at(o))?);
    }
    Ok(components)
}

fn json_nat_components(n: &NatTrans) -> Value {
    let mut out = Map::new();
    for (o, c) in n.components() {
        out.insert(o.clone(), json_chain_map(c));
    }
    Value::Object(out)
}

pub fn triple_ca_of(v: &Value) -> CResult<TripleCa> {
    check_envelope(v, "triple")?;
    let m = obj(v, "triple")?;
    if str_of(get(m, "variant", "triple")?, "triple.variant")? != "ca" {
        return Err(input("triple: expected variant \"ca\""));
    }
    let field = field_of(get(m, "field", "triple")?)?;
    let d = diagram_payload_of(get(m, "diagram", "triple")?)?;
    let b = rep_payload_of(obj(get(m, "b", "triple")?, "triple.b")?, d.y_category().0, field)?;
    let a = rep_payload_of(obj(get(m, "a", "triple")?, "triple.a")?, d.x_category().0, field)?;
    let fb = apply_f(&d, &b)?;
    let comps = nat_components_of(get(m, "phi", "triple")?, &a, fb.rep())?;
    let phi = NatTrans::new(a.clone(), fb.rep().clone(), comps)?;
    let t = TripleCa::new(d, b, a, phi)?;
    let violations = t.validate();
    if !violations.is_empty() {
        return Err(refl_core::Error::from(violations).into());
    }
    Ok(t)
}

pub fn triple_coca_of(v: &Value) -> CResult<TripleCoca> {
    check_envelope(v, "triple")?;
    let m = obj(v, "triple")?;
    if str_of(get(m, "variant", "triple")?, "triple.variant")? != "coca" {
        return Err(input("triple: expected variant \"coca\""));
    }
    let field = field_of(get(m, "field", "triple")?)?;
    let d = diagram_payload_of(get(m, "diagram", "triple")?)?;
    let b = rep_payload_of(obj(get(m, "b", "triple")?, "triple.b")?, d.y_category().0, field)?;
    let a = rep_payload_of(obj(get(m, "a", "triple")?, "triple.a")?, d.x_category().0, field)?;
    let fb = apply_f(&d, &b)?;
    let comps = nat_components_of(get(m, "psi", "triple")?, fb.rep(), &a)?;
    let psi = NatTrans::new(fb.rep().clone(), a.clone(), comps)?;
    let t = TripleCoca::new(d, b, a, psi)?;
    let violations = t.validate();
    if !violations.is_empty() {
        return Err(refl_core::Error::from(violations).into());
    }
    Ok(t)
}

fn json_triple(
    variant: &str,
    field: Field,
    d: &BipartiteDiagram,
    b: &Representation,
    a: &Representation,
    nat_key: &str,
    nat: &NatTrans,
) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA_VERSION.into());
    out.insert("kind".into(), "triple".into());
    out.insert("variant".into(), variant.into());
    out.insert("field".into(), json_field(field));
    let mut dm = Map::new();
    json_diagram_payload(d, &mut dm);
    out.insert("diagram".into(), Value::Object(dm));
    let mut bm = Map::new();
    json_rep_payload(b, &mut bm);
    out.insert("b".into(), Value::Object(bm));
    let mut am = Map::new();
    json_rep_payload(a, &mut am);
    out.insert("a".into(), Value::Object(am));
    out.insert(nat_key.into(), json_nat_components(nat));
    Value::Object(out)
}

pub fn json_triple_ca(t: &TripleCa) -> Value {
    json_triple("ca", t.field(), t.diagram(), t.b(), t.a(), "phi", t.phi())
}

pub fn json_triple_coca(t: &TripleCoca) -> Value {
    json_triple("coca", t.field(), t.diagram(), t.b(), t.a(), "psi", t.psi())
}

// ---------------------------------------------------------------- groth output

pub fn json_groth(g: &GrothCat, d: &BipartiteDiagram) -> Value {
    let q = d.quiver();
    let cat = g.cat();
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA_VERSION.into());
    out.insert("kind".into(), "groth".into());
    out.insert(
        "variant".into(),
        match g.variant() {
            refl_core::groth::Variant::Covariant => "cov",
            refl_core::groth::Variant::Contravariant => "contra",
        }
        .into(),
    );
    out.insert("category".into(), json_category(cat));
    let vertex_id = |vr: VertexRef| -> &str {
        match vr {
            VertexRef::Left(l) => &q.left()[l],
            VertexRef::Right(r) => &q.right()[r],
        }
    };
    let value_of = |vr: VertexRef| -> &FinCat {
        match vr {
            VertexRef::Left(l) => d.left_value(l),
            VertexRef::Right(r) => d.right_value(r),
        }
    };
    let mut objects = Map::new();
    for o in 0..cat.n_objects() {
        let (vr, inner) = g.object_provenance(o);
        let mut om = Map::new();
        om.insert("vertex".into(), vertex_id(vr).into());
        om.insert("inner".into(), value_of(vr).object_id(inner).into());
        objects.insert(cat.object_id(o).to_string(), Value::Object(om));
    }
    let mut morphisms = Map::new();
    for m in 0..cat.n_morphisms() {
        let mut mm = Map::new();
        match g.morphism_provenance(m) {
            MorProv::Block { vertex, inner } => {
                let mut bm = Map::new();
                bm.insert("vertex".into(), vertex_id(vertex).into());
                bm.insert("inner".into(), value_of(vertex).morphism_id(inner).into());
                mm.insert("block".into(), Value::Object(bm));
            }
            MorProv::Cross { arrow, left_obj, inner } => {
                let mut cm = Map::new();
                cm.insert("arrow".into(), q.arrow_id(arrow).into());
                cm.insert(
                    "left_object".into(),
                    d.left_value(q.arrow_src(arrow)).object_id(left_obj).into(),
                );
                cm.insert(
                    "inner".into(),
                    d.right_value(q.arrow_tgt(arrow)).morphism_id(inner).into(),
                );
                mm.insert("cross".into(), Value::Object(cm));
            }
        }
        morphisms.insert(cat.morphism_id(m).to_string(), Value::Object(mm));
    }
    let mut prov = Map::new();
    prov.insert("objects".into(), Value::Object(objects));
    prov.insert("morphisms".into(), Value::Object(morphisms));
    out.insert("provenance".into(), Value::Object(prov));
    let mut kappa = Map::new();
    for a in 0..q.n_arrows() {
        let value_l = d.left_value(q.arrow_src(a));
        let mut am = Map::new();
        for x in 0..value_l.n_objects() {
            am.insert(
                value_l.object_id(x).to_string(),
                cat.morphism_id(g.kappa(a, x)).into(),
            );
        }
        kappa.insert(q.arrow_id(a).to_string(), Value::Object(am));
    }
    out.insert("kappa".into(), Value::Object(kappa));
    out.insert("is_poset".into(), cat.is_poset().into());
    Value::Object(out)
}

// ---------------------------------------------------------------- homology output

pub fn json_homology(r: &Representation) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA_VERSION.into());
    out.insert("kind".into(), "homology".into());
    out.insert("field".into(), json_field(r.field()));
    let mut objects = Map::new();
    for o in r.shape().object_ids() {
        let c = r.at(o);
        let mut om = Map::new();
        let mut h = Map::new();
        for (n, dim) in c.homology_table() {
            if dim > 0 {
                h.insert(n.to_string(), Value::from(dim as u64));
            }
        }
        om.insert("homology".into(), Value::Object(h));
        om.insert("euler".into(), Value::from(c.euler_char()));
        objects.insert(o.clone(), Value::Object(om));
    }
    out.insert("objects".into(), Value::Object(objects));
    Value::Object(out)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
