//! The `verify` subcommand: seeded randomized suites over the whole stack.
//!
//! Each suite runs `cases` independent cases. The first violated property
//! aborts with exit code 2 and a serialized counterexample on standard
//! error.

use crate::schema::{self, CResult};
use crate::CliError;
use refl_core::chain::{ChainComplex, ChainMap};
use refl_core::exactlin::{Field, Matrix};
use refl_core::fincat::{point, FinPoset, Functor};
use refl_core::groth::{
    build_kronecker, cone_diagram, groth, groth_contra, groth_cov, ladkani_condition,
    star_diagram, BipartiteDiagram, Variant,
};
use refl_core::reflect::{
    counit_comparison, pack_contra, pack_cov, r_plus, unit_comparison, unpack_contra, unpack_cov,
};
use refl_core::rep::Representation;
use refl_core::testkit::{
    monotone_maps, quasi_iso_by_homology, random_chain_map, random_complex, random_triple_ca,
    random_triple_coca, rng, small_posets, Bounds, TestRng,
};
use rand::Rng;
use std::collections::BTreeMap;

const BOUNDS: Bounds = Bounds { max_deg: 2, max_dim: 2 };

fn fail(suite: &str, case: usize, detail: String, counterexample: &serde_json::Value) -> CliError {
    eprintln!("{}", schema::to_pretty(counterexample).trim_end());
    CliError::Check(format!("suite {suite}, case {case}: {detail}"))
}

/// A fixed pool of structurally distinct small diagrams the triple suites
/// cycle through.
fn diagram_pool() -> Vec<BipartiteDiagram> {
    let chain2 = FinPoset::chain(2).to_category();
    let chain3 = FinPoset::chain(3).to_category();
    let anti2 = FinPoset::antichain(2).to_category();
    let anti3 = FinPoset::antichain(3).to_category();
    let f1 = Functor::between_posets(&chain2, &chain3, &[0, 1]).unwrap();
    let f2 = Functor::between_posets(&chain2, &chain3, &[2, 2]).unwrap();
    let g = Functor::between_posets(&chain3, &chain2, &[0, 0, 1]).unwrap();
    vec![
        build_kronecker(&chain2, &chain3, &[f1, f2]).unwrap(),
        build_kronecker(&chain3, &chain2, &[g]).unwrap(),
        cone_diagram(&chain2).unwrap(),
        cone_diagram(&anti2).unwrap(),
        star_diagram(&anti3, &[0, 1, 2]).unwrap(),
        star_diagram(&point(), &[0]).unwrap(),
    ]
}

fn suite_roundtrips(seed: u64, cases: usize, field: Field) -> CResult<usize> {
    let pool = diagram_pool();
    for i in 0..cases {
        let d = &pool[i % pool.len()];
        let mut r = rng(seed.wrapping_add(i as u64));
        let t = random_triple_ca(&mut r, d, field, BOUNDS)?;
        let m = unpack_cov(&t)?;
        let t2 = pack_cov(d, &m)?;
        if t2 != t {
            return Err(fail("roundtrips", i, "pack_cov∘unpack_cov ≠ id".into(), &schema::json_triple_ca(&t)));
        }
        if unpack_cov(&t2)? != m {
            return Err(fail("roundtrips", i, "unpack_cov∘pack_cov ≠ id".into(), &schema::json_triple_ca(&t)));
        }
        if schema::triple_ca_of(&schema::json_triple_ca(&t))? != t {
            return Err(fail("roundtrips", i, "triple serialise→parse is lossy".into(), &schema::json_triple_ca(&t)));
        }
        let t = random_triple_coca(&mut r, d, field, BOUNDS)?;
        let m = unpack_contra(&t)?;
        let t2 = pack_contra(d, &m)?;
        if t2 != t {
            return Err(fail("roundtrips", i, "pack_contra∘unpack_contra ≠ id".into(), &schema::json_triple_coca(&t)));
        }
        if unpack_contra(&t2)? != m {
            return Err(fail("roundtrips", i, "unpack_contra∘pack_contra ≠ id".into(), &schema::json_triple_coca(&t)));
        }
        if schema::triple_coca_of(&schema::json_triple_coca(&t))? != t {
            return Err(fail("roundtrips", i, "triple serialise→parse is lossy".into(), &schema::json_triple_coca(&t)));
        }
    }
    Ok(cases)
}

/// χ((R₊M)_(l,x)) = Σ_{α: l→r} χ(M_(r, f_α x)) − χ(M_(l,x)), exactly.
fn suite_euler(seed: u64, cases: usize, field: Field) -> CResult<usize> {
    let pool = diagram_pool();
    for i in 0..cases {
        let d = &pool[i % pool.len()];
        let mut r = rng(seed.wrapping_add(0x45 + i as u64));
        let t = random_triple_ca(&mut r, d, field, BOUNDS)?;
        let m = unpack_cov(&t)?;
        let rm = r_plus(d, &m)?;
        let q = d.quiver();
        for l in 0..q.left().len() {
            let value = d.left_value(l);
            for x in 0..value.n_objects() {
                let id = format!("{}/{}", q.left()[l], value.object_id(x));
                let lhs = rm.at(&id).euler_char();
                let mut rhs = -m.at(&id).euler_char();
                for a in 0..q.n_arrows() {
                    if q.arrow_src(a) != l {
                        continue;
                    }
                    let tgt_value = d.right_value(q.arrow_tgt(a));
                    let fx = d.functor(a).apply_obj(x);
                    let rid =
                        format!("{}/{}", q.right()[q.arrow_tgt(a)], tgt_value.object_id(fx));
                    rhs += m.at(&rid).euler_char();
                }
                if lhs != rhs {
                    return Err(fail(
                        "euler",
                        i,
                        format!("χ mismatch at {id}: {lhs} ≠ {rhs}"),
                        &schema::json_rep(&m),
                    ));
                }
            }
        }
    }
    Ok(cases)
}

fn suite_unit_counit(seed: u64, cases: usize, field: Field) -> CResult<usize> {
    let pool = diagram_pool();
    for i in 0..cases {
        let d = &pool[i % pool.len()];
        let mut r = rng(seed.wrapping_add(0xe7a + i as u64));
        let t = random_triple_ca(&mut r, d, field, BOUNDS)?;
        let (eta, ok) = unit_comparison(&t)?;
        if !ok || !eta.validate().is_empty() {
            return Err(fail("unit-counit", i, "unit is not a quasi-isomorphism".into(), &schema::json_triple_ca(&t)));
        }
        let t = random_triple_coca(&mut r, d, field, BOUNDS)?;
        let (eps, ok) = counit_comparison(&t)?;
        if !ok || !eps.validate().is_empty() {
            return Err(fail("unit-counit", i, "counit is not a quasi-isomorphism".into(), &schema::json_triple_coca(&t)));
        }
    }
    Ok(cases)
}

/// Random small poset-valued diagrams: the no-common-bound criterion must
/// agree with poset-ness of the construction, both variants.
fn suite_ladkani(seed: u64, cases: usize) -> CResult<usize> {
    let posets = small_posets(3);
    for i in 0..cases {
        let mut r = rng(seed.wrapping_add(0x1ad + i as u64));
        let xp = &posets[r.gen_range(0..posets.len())];
        let yp = &posets[r.gen_range(0..posets.len())];
        let x = xp.to_category();
        let y = yp.to_category();
        let maps = monotone_maps(xp, yp);
        let n_arrows = r.gen_range(1..=2);
        let fs: Vec<Functor> = (0..n_arrows)
            .map(|_| {
                Functor::between_posets(&x, &y, &maps[r.gen_range(0..maps.len())]).unwrap()
            })
            .collect();
        let d = build_kronecker(&x, &y, &fs)?;
        for variant in [Variant::Covariant, Variant::Contravariant] {
            let predicted = ladkani_condition(&d, variant)?;
            let actual = groth(&d, variant)?.cat().is_poset();
            if predicted != actual {
                return Err(fail(
                    "ladkani",
                    i,
                    format!("criterion says {predicted}, construction says {actual} ({variant:?})"),
                    &schema::json_diagram(&d),
                ));
            }
        }
    }
    Ok(cases)
}

/// A random degree-0 representation of a star shape (source vertex plus
/// chosen sinks, no relations): dims ≤3 everywhere, arbitrary matrices on
/// the cross morphisms.
fn random_star_rep(
    r: &mut TestRng,
    d: &BipartiteDiagram,
    field: Field,
) -> CResult<Representation> {
    let g = groth_cov(d)?;
    let shape = g.cat().clone();
    let mut at = BTreeMap::new();
    let mut dims = Vec::new();
    for o in 0..shape.n_objects() {
        let dim = r.gen_range(0..=3usize);
        dims.push(dim);
        let complex =
            ChainComplex::new(field, BTreeMap::from([(0, dim)]), BTreeMap::new())?;
        at.insert(shape.object_id(o).to_string(), complex);
    }
    let mut on = BTreeMap::new();
    for m in 0..shape.n_morphisms() {
        if shape.is_identity(m) {
            continue;
        }
        let (s, t) = (shape.src(m), shape.tgt(m));
        let mat = refl_core::testkit::random_matrix(r, field, dims[t], dims[s]);
        let map = ChainMap::new(
            at[shape.object_id(s)].clone(),
            at[shape.object_id(t)].clone(),
            BTreeMap::from([(0, mat)]),
        )?;
        on.insert(shape.morphism_id(m).to_string(), map);
    }
    Ok(Representation::new(shape, field, at, on)?)
}

/// Whether the assembled map M_src → ⊕_α M_(f_α src) is injective; the
/// classical comparison only applies then.
fn assembled_injective(d: &BipartiteDiagram, m: &Representation) -> CResult<bool> {
    let g = groth_cov(d)?;
    let q = d.quiver();
    let field = m.field();
    let mut parts = Vec::new();
    for a in 0..q.n_arrows() {
        let id = g.cat().morphism_id(g.kappa(a, 0)).to_string();
        parts.push(m.on(&id).component(0));
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    let assembled = Matrix::vstack(field, &refs)?;
    Ok(assembled.rank() == assembled.cols())
}

/// Against the abelian-level cokernel oracle: H₀ of R₊ matches, higher
/// homology vanishes. Cases that miss the injectivity hypothesis are
/// re-rolled, not silently skipped.
fn suite_classical(seed: u64, cases: usize, field: Field) -> CResult<usize> {
    let anti3 = FinPoset::antichain(3).to_category();
    let stars = [
        star_diagram(&point(), &[0]).unwrap(),
        star_diagram(&anti3, &[0, 1, 2]).unwrap(),
    ];
    for i in 0..cases {
        let d = &stars[i % stars.len()];
        let mut r = rng(seed.wrapping_add(0xc1a5 + i as u64));
        let mut m = random_star_rep(&mut r, d, field)?;
        let mut guard = 0;
        while !assembled_injective(d, &m)? {
            m = random_star_rep(&mut r, d, field)?;
            guard += 1;
            if guard > 500 {
                return Err(CliError::Input("classical suite: no injective sample found".into()));
            }
        }
        let oracle = refl_core::testkit::classical_bgp_source(d, &m)?;
        let rm = r_plus(d, &m)?;
        for o in oracle.shape().object_ids() {
            let c = rm.at(o);
            if c.homology_dim(0) != oracle.at(o).dim(0) {
                return Err(fail(
                    "classical",
                    i,
                    format!(
                        "H₀ at {o}: {} ≠ oracle {}",
                        c.homology_dim(0),
                        oracle.at(o).dim(0)
                    ),
                    &schema::json_rep(&m),
                ));
            }
            for n in c.support() {
                if n != 0 && c.homology_dim(n) != 0 {
                    return Err(fail(
                        "classical",
                        i,
                        format!("H_{n} at {o} is nonzero"),
                        &schema::json_rep(&m),
                    ));
                }
            }
        }
    }
    Ok(cases)
}

/// Cone-acyclicity and homology-comparison detectors of quasi-isomorphism
/// must agree on arbitrary chain maps.
fn suite_qiso(seed: u64, cases: usize, field: Field) -> CResult<usize> {
    for i in 0..cases {
        let mut r = rng(seed.wrapping_add(0x9150 + i as u64));
        let src = random_complex(&mut r, 2, 3, field);
        let tgt = if r.gen_bool(0.5) { src.clone() } else { random_complex(&mut r, 2, 3, field) };
        let f = if r.gen_bool(0.3) {
            ChainMap::identity(&src)
        } else {
            random_chain_map(&mut r, &src, &tgt)?
        };
        if f.is_quasi_iso() != quasi_iso_by_homology(&f) {
            return Err(fail(
                "qiso",
                i,
                "cone criterion disagrees with homology criterion".into(),
                &serde_json::Value::String(format!("{f:?}")),
            ));
        }
    }
    Ok(cases)
}

/// The deliberate-corruption hook: flip one sign in the cone part of a
/// reflected representation and require the validators to notice.
fn corrupt_cone_sign(field: Field) -> CResult<()> {
    let d = star_diagram(&point(), &[0]).unwrap();
    let g_cov = groth_cov(&d)?;
    let shape = g_cov.cat().clone();
    // M = the identity map on a disk, so the cone spans three degrees and
    // the sign of its differential is load-bearing.
    let disk = ChainComplex::disk(field, 1);
    let at: BTreeMap<String, ChainComplex> =
        shape.object_ids().iter().map(|o| (o.clone(), disk.clone())).collect();
    let kappa_id = shape.morphism_id(g_cov.kappa(0, 0)).to_string();
    let on = BTreeMap::from([(kappa_id, ChainMap::identity(&disk))]);
    let m = Representation::new(shape, field, at, on)?;
    let rm = r_plus(&d, &m)?;

    let g_con = groth_contra(&d)?;
    let cross_id = g_con.cat().morphism_id(g_con.kappa(0, 0)).to_string();
    let bad_map = {
        let orig = rm.on(&cross_id);
        let mut comps = orig.components().clone();
        let top = *comps.keys().max().expect("nonzero map");
        let flipped = comps[&top].neg();
        comps.insert(top, flipped);
        ChainMap::new(orig.src().clone(), orig.tgt().clone(), comps)?
    };
    let mut on = BTreeMap::new();
    for (id, f) in rm.morphism_maps() {
        on.insert(id.clone(), if *id == cross_id { bad_map.clone() } else { f.clone() });
    }
    let at = rm.objects().map(|(o, c)| (o.clone(), c.clone())).collect();
    let bad = Representation::new(rm.shape().clone(), field, at, on)?;
    let violations = bad.validate();
    if violations.is_empty() {
        return Err(CliError::Check(
            "corrupted cone sign was not detected by validation".into(),
        ));
    }
    eprintln!("{}", schema::to_pretty(&schema::json_rep(&bad)).trim_end());
    Err(CliError::Check(format!(
        "corrupted cone sign detected: {}",
        violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
    )))
}

pub fn cmd_verify(seed: u64, cases: usize, field_flag: &str, corrupt: bool) -> CResult<()> {
    let field = schema::field_from_flag(field_flag)?;
    if corrupt {
        return corrupt_cone_sign(field);
    }
    let n = suite_roundtrips(seed, cases, field)?;
    println!("roundtrips: {n} cases, 0 failures");
    let n = suite_euler(seed, cases, field)?;
    println!("euler: {n} cases, 0 failures");
    let n = suite_unit_counit(seed, cases, field)?;
    println!("unit-counit: {n} cases, 0 failures");
    let n = suite_ladkani(seed, cases)?;
    println!("ladkani: {n} cases, 0 failures");
    let n = suite_classical(seed, cases, field)?;
    println!("classical: {n} cases, 0 failures");
    let n = suite_qiso(seed, cases, field)?;
    println!("qiso: {n} cases, 0 failures");
    println!("all suites passed ({} cases total)", cases * 6);
    Ok(())
}
