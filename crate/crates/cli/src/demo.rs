//! Bundled examples: each writes its fixture files and prints a short
//! deterministic report reproducing the computation.

use crate::schema::{self, CResult};
use crate::CliError;
use refl_core::chain::{cone, ChainComplex};
use refl_core::exactlin::Field;
use refl_core::fincat::{point, FinCat, FinPoset, Functor};
use refl_core::groth::{
    build_kronecker, cone_diagram, export_dot_category, groth_contra, groth_cov, star_diagram,
    BipartiteDiagram, GrothCat,
};
use refl_core::reflect::r_plus;
use refl_core::rep::Representation;
use std::collections::BTreeMap;
use std::path::Path;

const FIELD: Field = Field::Fp(5);

fn write(dir: &Path, name: &str, text: &str) -> CResult<()> {
    let path = dir.join(name);
    std::fs::write(&path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// A representation that puts `c` at every object and the identity on every
/// morphism; valid over any shape.
fn constant_rep(shape: &FinCat, c: &ChainComplex) -> CResult<Representation> {
    Ok(Representation::constant(shape.clone(), c.clone()))
}

/// Degree-0 dimension vector over the shape's objects, in object order.
fn dim_vector(r: &Representation) -> Vec<usize> {
    r.shape().object_ids().iter().map(|o| r.at(o).dim(0)).collect()
}

fn h0_vector(r: &Representation) -> Vec<usize> {
    r.shape().object_ids().iter().map(|o| r.at(o).homology_dim(0)).collect()
}

fn star_demo(dir: &Path, name: &str, d: &BipartiteDiagram) -> CResult<()> {
    let g_cov = groth_cov(d)?;
    let m = constant_rep(g_cov.cat(), &ChainComplex::sphere(FIELD, 0))?;
    write(dir, &format!("{name}.diagram.json"), &schema::to_pretty(&schema::json_diagram(d)))?;
    write(dir, &format!("{name}.rep.json"), &schema::to_pretty(&schema::json_rep(&m)))?;
    let rm = r_plus(d, &m)?;
    write(dir, &format!("{name}.reflected.json"), &schema::to_pretty(&schema::json_rep(&rm)))?;
    println!("objects: {}", g_cov.cat().object_ids().join(", "));
    println!("input dimension vector: {:?}", dim_vector(&m));
    println!("reflected homology dimension vector (degree 0): {:?}", h0_vector(&rm));
    Ok(())
}

fn demo_a2(dir: &Path) -> CResult<()> {
    println!("A₂: one source, one sink, M = (k → k) via the identity.");
    let d = star_diagram(&point(), &[0])?;
    star_demo(dir, "a2", &d)
}

fn demo_dstar(dir: &Path) -> CResult<()> {
    println!("D₄ star: free source with three sinks, M = (1; 1, 1, 1), diagonal injective.");
    let y = FinPoset::antichain(3).to_category();
    let d = star_diagram(&y, &[0, 1, 2])?;
    star_demo(dir, "dstar", &d)
}

fn groth_report(g: &GrothCat, label: &str) {
    println!(
        "{label}: {} objects, {} morphisms, poset: {}",
        g.cat().n_objects(),
        g.cat().n_morphisms(),
        g.cat().is_poset()
    );
}

fn demo_kronecker(dir: &Path) -> CResult<()> {
    println!("Kronecker: X = {{0→1}}, Y = {{0→1→2}}, two arrows (0↦0, 1↦1) and (both↦2).");
    let x = FinPoset::chain(2).to_category();
    let y = FinPoset::chain(3).to_category();
    let f1 = Functor::between_posets(&x, &y, &[0, 1])?;
    let f2 = Functor::between_posets(&x, &y, &[2, 2])?;
    let d = build_kronecker(&x, &y, &[f1, f2])?;
    write(dir, "kronecker.diagram.json", &schema::to_pretty(&schema::json_diagram(&d)))?;
    let g_cov = groth_cov(&d)?;
    let g_con = groth_contra(&d)?;
    write(dir, "kronecker.cov.dot", &export_dot_category(g_cov.cat()))?;
    write(dir, "kronecker.contra.dot", &export_dot_category(g_con.cat()))?;
    groth_report(&g_cov, "covariant construction");
    groth_report(&g_con, "contravariant construction");
    let cat = g_cov.cat();
    let s = cat.object_index("0/0").ok_or_else(|| CliError::Input("missing object".into()))?;
    let t = cat.object_index("1/2").ok_or_else(|| CliError::Input("missing object".into()))?;
    let hom = (0..cat.n_morphisms()).filter(|&m| cat.src(m) == s && cat.tgt(m) == t).count();
    println!("|Hom(0/0, 1/2)| = {hom} (parallel arrows, hence not a poset)");
    Ok(())
}

fn demo_delta1(dir: &Path) -> CResult<()> {
    println!("Δ¹: X = {{0→1→2}}, Y = {{0→1}}, one arrow collapsing 0,1↦0 and 2↦1.");
    let x = FinPoset::chain(3).to_category();
    let y = FinPoset::chain(2).to_category();
    let f = Functor::between_posets(&x, &y, &[0, 0, 1])?;
    let d = build_kronecker(&x, &y, &[f])?;
    write(dir, "delta1.diagram.json", &schema::to_pretty(&schema::json_diagram(&d)))?;
    let g_cov = groth_cov(&d)?;
    let g_con = groth_contra(&d)?;
    write(dir, "delta1.cov.json", &schema::to_pretty(&schema::json_groth(&g_cov, &d)))?;
    write(dir, "delta1.contra.json", &schema::to_pretty(&schema::json_groth(&g_con, &d)))?;
    groth_report(&g_cov, "covariant construction");
    groth_report(&g_con, "contravariant construction");
    // Both come out as posets here, so they also fit the poset document form.
    for (g, name) in [(&g_cov, "delta1.cov.poset.json"), (&g_con, "delta1.contra.poset.json")] {
        let p = g
            .cat()
            .as_poset()
            .ok_or_else(|| CliError::Check("expected a poset-shaped construction".into()))?;
        write(dir, name, &schema::to_pretty(&schema::json_poset(&p)))?;
    }
    Ok(())
}

fn demo_cone(dir: &Path) -> CResult<()> {
    println!("Cone: X = {{0→1}} with a terminal object ⋆ adjoined (the covariant");
    println!("construction of X → pt); reflecting computes cones over the maps to ⋆.");
    let x = FinPoset::chain(2).to_category();
    let d = cone_diagram(&x)?;
    let g_cov = groth_cov(&d)?;
    let m = constant_rep(g_cov.cat(), &ChainComplex::disk(FIELD, 1))?;
    write(dir, "cone.diagram.json", &schema::to_pretty(&schema::json_diagram(&d)))?;
    write(dir, "cone.rep.json", &schema::to_pretty(&schema::json_rep(&m)))?;
    let rm = r_plus(&d, &m)?;
    write(dir, "cone.reflected.json", &schema::to_pretty(&schema::json_rep(&rm)))?;
    // ⋆ is the unique object of the right vertex; its value is untouched.
    let star = "1/0";
    println!("(R₊M) at ⋆ equals M at ⋆: {}", rm.at(star) == m.at(star));
    // At each x ∈ X, the result is the cone over M_x → M_⋆.
    let mut all = true;
    for a in 0..d.quiver().n_arrows() {
        for xo in 0..x.n_objects() {
            let id = format!("0/{}", x.object_id(xo));
            let kappa = g_cov.cat().morphism_id(g_cov.kappa(a, xo)).to_string();
            let expected = cone(m.on(&kappa))?.complex;
            let got = rm.at(&id);
            let same = got == &expected;
            all &= same;
            println!(
                "(R₊M) at {id}: dims {:?}, cone(M_{id} → M_⋆) dims {:?}, equal: {same}",
                dims_of(got),
                dims_of(&expected)
            );
        }
    }
    if !all {
        return Err(CliError::Check("cone formula mismatch".into()));
    }
    Ok(())
}

fn dims_of(c: &ChainComplex) -> BTreeMap<i64, usize> {
    c.dims().clone()
}

pub fn cmd_demo(name: &str, dir: &Path) -> CResult<()> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    match name {
        "a2" => demo_a2(dir),
        "dstar" => demo_dstar(dir),
        "kronecker-example" => demo_kronecker(dir),
        "delta1-example" => demo_delta1(dir),
        "cone" => demo_cone(dir),
        other => Err(CliError::Input(format!(
            "unknown demo \"{other}\" (try a2, dstar, kronecker-example, delta1-example, cone)"
        ))),
    }
}
