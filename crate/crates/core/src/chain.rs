//! Bounded chain complexes, chain maps, shift, cone, fibre, direct sums,
//! homology and quasi-isomorphism testing.
//!
//! Homological convention: the differential `d_n` lowers degree, mapping
//! degree n to degree n−1. The cone of φ: A→B is C_n = A_{n−1} ⊕ B_n with
//! d(a,b) = (−d_A a, φ(a) + d_B b); the fibre is the cone shifted by −1.
//! These conventions are fixed so that serialized output is reproducible.

use crate::exactlin::{Field, Matrix};
use crate::{Error, Result, Violation};
use std::collections::BTreeMap;

/// A bounded chain complex of finite-dimensional vector spaces.
///
/// Degrees with dimension zero are stored implicitly (absent), so equal
/// complexes compare equal structurally. A differential matrix is stored
/// for degree n exactly when both degree n and degree n−1 are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    dims: BTreeMap<i64, usize>,
    diff: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Build a complex from per-degree dimensions and differentials.
    /// Shapes are checked here; `d ∘ d = 0` is checked by [`validate`].
    ///
    /// [`validate`]: ChainComplex::validate
    pub fn new(
        field: Field,
        dims: BTreeMap<i64, usize>,
        diff: BTreeMap<i64, Matrix>,
    ) -> Result<ChainComplex> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let mut norm = BTreeMap::new();
        for (&n, &dn) in &dims {
            let below = dims.get(&(n - 1)).copied().unwrap_or(0);
            if below == 0 {
                continue;
            }
            match diff.get(&n) {
                Some(m) => {
                    if m.field() != field {
                        return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
                    }
                    if m.rows() != below || m.cols() != dn {
                        return Err(Error::DimensionMismatch(format!(
                            "differential at degree {n}: expected {below}x{dn}, got {}x{}",
                            m.rows(),
                            m.cols()
                        )));
                    }
                    norm.insert(n, m.clone());
                }
                None => {
                    norm.insert(n, Matrix::zero(field, below, dn));
                }
            }
        }
        // Differentials given at degrees where one side is zero must be zero maps.
        for (&n, m) in &diff {
            if !norm.contains_key(&n) && m.rows() * m.cols() != 0 && !m.is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "nonzero differential at degree {n} between zero-dimensional degrees"
                )));
            }
        }
        Ok(ChainComplex { field, dims, diff: norm })
    }

    pub fn zero(field: Field) -> ChainComplex {
        ChainComplex { field, dims: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// The sphere S(n): one-dimensional in degree n, zero differential.
    pub fn sphere(field: Field, n: i64) -> ChainComplex {
        ChainComplex::new(field, BTreeMap::from([(n, 1)]), BTreeMap::new()).expect("valid")
    }

    /// The disk D(n): identity differential from degree n to n−1; acyclic.
    pub fn disk(field: Field, n: i64) -> ChainComplex {
        ChainComplex::new(
            field,
            BTreeMap::from([(n, 1), (n - 1, 1)]),
            BTreeMap::from([(n, Matrix::identity(field, 1))]),
        )
        .expect("valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn diffs(&self) -> &BTreeMap<i64, Matrix> {
        &self.diff
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    /// The differential leaving degree n, as a dim(n−1) × dim(n) matrix
    /// (zero-filled when absent).
    pub fn d(&self, n: i64) -> Matrix {
        match self.diff.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field, self.dim(n - 1), self.dim(n)),
        }
    }

    /// Check `d ∘ d = 0` in every degree. Shapes are enforced at construction.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for &n in self.dims.keys() {
            let dd = self.d(n - 1).mul(&self.d(n)).expect("shapes consistent");
            if !dd.is_zero() {
                out.push(Violation::new(format!("degree {n}"), "d∘d ≠ 0"));
            }
        }
        out
    }

    /// The shifted complex C[k] with (C[k])_n = C_{n−k} and differential
    /// multiplied by (−1)^k.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let dims = self.dims.iter().map(|(&n, &d)| (n + k, d)).collect();
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let diff = self
            .diff
            .iter()
            .map(|(&n, m)| (n + k, if sign == 1 { m.clone() } else { m.neg() }))
            .collect();
        ChainComplex { field: self.field, dims, diff }
    }

    /// dim ker d_n − rank d_{n+1}.
    pub fn homology_dim(&self, n: i64) -> usize {
        if self.dim(n) == 0 {
            return 0;
        }
        let ker = self.dim(n) - self.d(n).rank();
        ker - self.d(n + 1).rank()
    }

    /// A deterministic basis of H_n as columns in the degree-n coordinates:
    /// kernel vectors projected to a complement of the image.
    pub fn homology_basis(&self, n: i64) -> Result<Matrix> {
        let ker = self.d(n).kernel_basis();
        let im = self.d(n + 1);
        let (proj, chosen) = crate::exactlin::quotient_projection(self.field, self.dim(n), &im)?;
        // Select kernel columns whose quotient classes are independent.
        let classes = proj.mul(&ker)?;
        let rr = classes.rref();
        let mut cols = Vec::new();
        for &p in &rr.pivots {
            cols.push(ker.column(p));
        }
        let _ = chosen;
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(self.field, &refs)
    }

    pub fn homology_table(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &n in self.dims.keys() {
            let h = self.homology_dim(n);
            if h > 0 {
                out.insert(n, h);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_table().is_empty()
    }

    /// Σ (−1)^n dim C_n.
    pub fn euler_char(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// A chain map between complexes over the same field; components stored per
/// degree where both endpoints are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    src: ChainComplex,
    tgt: ChainComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Shapes are checked; commutation with the differentials is checked by
    /// [`validate`](ChainMap::validate).
    pub fn new(src: ChainComplex, tgt: ChainComplex, comps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        if src.field() != tgt.field() {
            return Err(Error::FieldMismatch(src.field().to_string(), tgt.field().to_string()));
        }
        let field = src.field();
        let mut norm = BTreeMap::new();
        for &n in src.dims.keys() {
            if tgt.dim(n) == 0 {
                continue;
            }
            match comps.get(&n) {
                Some(m) => {
                    if m.field() != field {
                        return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
                    }
                    if m.rows() != tgt.dim(n) || m.cols() != src.dim(n) {
                        return Err(Error::DimensionMismatch(format!(
                            "component at degree {n}: expected {}x{}, got {}x{}",
                            tgt.dim(n),
                            src.dim(n),
                            m.rows(),
                            m.cols()
                        )));
                    }
                    norm.insert(n, m.clone());
                }
                None => {
                    norm.insert(n, Matrix::zero(field, tgt.dim(n), src.dim(n)));
                }
            }
        }
        for (&n, m) in &comps {
            if !norm.contains_key(&n) && !m.is_zero() {
                return Err(Error::DimensionMismatch(format!(
                    "nonzero component at degree {n} between zero-dimensional degrees"
                )));
            }
        }
        Ok(ChainMap { src, tgt, comps: norm })
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = c.dims.iter().map(|(&n, &d)| (n, Matrix::identity(c.field, d))).collect();
        ChainMap { src: c.clone(), tgt: c.clone(), comps }
    }

    pub fn zero(src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainMap> {
        ChainMap::new(src.clone(), tgt.clone(), BTreeMap::new())
    }

    pub fn src(&self) -> &ChainComplex {
        &self.src
    }

    pub fn tgt(&self) -> &ChainComplex {
        &self.tgt
    }

    pub fn field(&self) -> Field {
        self.src.field()
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    /// Component at degree n, zero-filled to tgt.dim(n) × src.dim(n).
    pub fn component(&self, n: i64) -> Matrix {
        match self.comps.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.field(), self.tgt.dim(n), self.src.dim(n)),
        }
    }

    /// Check `d_tgt ∘ φ = φ ∘ d_src` in every relevant degree.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut degrees: Vec<i64> = self.src.support().chain(self.tgt.support()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for &n in &degrees {
            let lhs = self.tgt.d(n).mul(&self.component(n)).expect("shapes");
            let rhs = self.component(n - 1).mul(&self.src.d(n)).expect("shapes");
            if lhs != rhs {
                out.push(Violation::new(format!("degree {n}"), "does not commute with d"));
            }
        }
        out
    }

    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.tgt != self.src {
            return Err(Error::DimensionMismatch("compose: middle complexes differ".into()));
        }
        let mut comps = BTreeMap::new();
        for &n in inner.src.dims.keys() {
            if self.tgt.dim(n) == 0 {
                continue;
            }
            comps.insert(n, self.component(n).mul(&inner.component(n))?);
        }
        ChainMap::new(inner.src.clone(), self.tgt.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::DimensionMismatch("add: endpoint mismatch".into()));
        }
        let mut comps = BTreeMap::new();
        for &n in self.src.dims.keys() {
            if self.tgt.dim(n) == 0 {
                continue;
            }
            comps.insert(n, self.component(n).add(&other.component(n))?);
        }
        ChainMap::new(self.src.clone(), self.tgt.clone(), comps)
    }

    pub fn neg(&self) -> ChainMap {
        let comps = self.comps.iter().map(|(&n, m)| (n, m.neg())).collect();
        ChainMap { src: self.src.clone(), tgt: self.tgt.clone(), comps }
    }

    pub fn scale(&self, c: &crate::exactlin::Scalar) -> ChainMap {
        let comps = self.comps.iter().map(|(&n, m)| (n, m.scale(c))).collect();
        ChainMap { src: self.src.clone(), tgt: self.tgt.clone(), comps }
    }

    /// Shift source, target and components by k (components unchanged up to
    /// reindexing; the complexes pick up the (−1)^k differential sign).
    pub fn shift(&self, k: i64) -> ChainMap {
        let comps = self.comps.iter().map(|(&n, m)| (n + k, m.clone())).collect();
        ChainMap { src: self.src.shift(k), tgt: self.tgt.shift(k), comps }
    }

    /// Degreewise invertibility; the inverse of an invertible chain map is
    /// again a chain map.
    pub fn inverse(&self) -> Option<ChainMap> {
        if self.src.dims() != self.tgt.dims() {
            return None;
        }
        let mut comps = BTreeMap::new();
        for (&n, m) in &self.comps {
            comps.insert(n, m.inverse()?);
        }
        Some(ChainMap { src: self.tgt.clone(), tgt: self.src.clone(), comps })
    }

    /// True iff the cone is acyclic. Agrees with the homology-isomorphism
    /// criterion (see the testkit oracle).
    pub fn is_quasi_iso(&self) -> bool {
        let cone = cone(self).expect("valid map");
        cone.complex.is_acyclic()
    }
}

/// Mapping cone of φ: A→B together with its structure maps.
pub struct Cone {
    pub complex: ChainComplex,
    /// ι: B → cone, inclusion of the target.
    pub incl: ChainMap,
    /// π: cone → A[1], projection onto the shifted source.
    pub proj: ChainMap,
}

/// Build the cone C with C_n = A_{n−1} ⊕ B_n and d(a,b) = (−d_A a, φa + d_B b).
pub fn cone(phi: &ChainMap) -> Result<Cone> {
    let a = phi.src();
    let b = phi.tgt();
    let field = phi.field();

    let mut degrees: Vec<i64> = a.support().map(|n| n + 1).chain(b.support()).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut dims = BTreeMap::new();
    for &n in &degrees {
        let d = a.dim(n - 1) + b.dim(n);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diff = BTreeMap::new();
    for &n in dims.keys() {
        let row_dims = [a.dim(n - 2), b.dim(n - 1)];
        let col_dims = [a.dim(n - 1), b.dim(n)];
        if row_dims.iter().sum::<usize>() == 0 {
            continue;
        }
        let da = a.d(n - 1).neg();
        let ph = phi.component(n - 1);
        let db = b.d(n);
        let m = Matrix::from_blocks(
            field,
            &[vec![Some(&da), None], vec![Some(&ph), Some(&db)]],
            &row_dims,
            &col_dims,
        );
        diff.insert(n, m);
    }
    let complex = ChainComplex::new(field, dims, diff)?;

    // ι: B → C, inclusion as the second block.
    let mut incl_comps = BTreeMap::new();
    for &n in b.dims.keys() {
        let mut m = Matrix::zero(field, complex.dim(n), b.dim(n));
        let off = a.dim(n - 1);
        for i in 0..b.dim(n) {
            m.set(off + i, i, field.one());
        }
        incl_comps.insert(n, m);
    }
    let incl = ChainMap::new(b.clone(), complex.clone(), incl_comps)?;

    // π: C → A[1], projection onto the first block.
    let a1 = a.shift(1);
    let mut proj_comps = BTreeMap::new();
    for &n in complex.dims.keys() {
        if a1.dim(n) == 0 {
            continue;
        }
        let mut m = Matrix::zero(field, a1.dim(n), complex.dim(n));
        for i in 0..a1.dim(n) {
            m.set(i, i, field.one());
        }
        proj_comps.insert(n, m);
    }
    let proj = ChainMap::new(complex.clone(), a1, proj_comps)?;

    Ok(Cone { complex, incl, proj })
}

/// Fibre of ψ: A→B together with its structure maps.
pub struct Fib {
    pub complex: ChainComplex,
    /// π: fib → A, projection onto the source.
    pub proj: ChainMap,
    /// B[−1] → fib, inclusion of the shifted target.
    pub incl: ChainMap,
}

/// Build the fibre F with F_n = A_n ⊕ B_{n+1}; equal to shift(cone(ψ), −1)
/// entry for entry.
pub fn fib(psi: &ChainMap) -> Result<Fib> {
    let a = psi.src();
    let b = psi.tgt();
    let field = psi.field();

    let mut degrees: Vec<i64> = a.support().chain(b.support().map(|n| n - 1)).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut dims = BTreeMap::new();
    for &n in &degrees {
        let d = a.dim(n) + b.dim(n + 1);
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diff = BTreeMap::new();
    for &n in dims.keys() {
        let row_dims = [a.dim(n - 1), b.dim(n)];
        let col_dims = [a.dim(n), b.dim(n + 1)];
        if row_dims.iter().sum::<usize>() == 0 {
            continue;
        }
        let da = a.d(n);
        let ps = psi.component(n).neg();
        let db = b.d(n + 1).neg();
        let m = Matrix::from_blocks(
            field,
            &[vec![Some(&da), None], vec![Some(&ps), Some(&db)]],
            &row_dims,
            &col_dims,
        );
        diff.insert(n, m);
    }
    let complex = ChainComplex::new(field, dims, diff)?;

    let mut proj_comps = BTreeMap::new();
    for &n in complex.dims.keys() {
        if a.dim(n) == 0 {
            continue;
        }
        let mut m = Matrix::zero(field, a.dim(n), complex.dim(n));
        for i in 0..a.dim(n) {
            m.set(i, i, field.one());
        }
        proj_comps.insert(n, m);
    }
    let proj = ChainMap::new(complex.clone(), a.clone(), proj_comps)?;

    let bm1 = b.shift(-1);
    let mut incl_comps = BTreeMap::new();
    for &n in bm1.dims.keys() {
        let mut m = Matrix::zero(field, complex.dim(n), bm1.dim(n));
        let off = a.dim(n);
        for i in 0..bm1.dim(n) {
            m.set(off + i, i, field.one());
        }
        incl_comps.insert(n, m);
    }
    let incl = ChainMap::new(bm1, complex.clone(), incl_comps)?;

    Ok(Fib { complex, proj, incl })
}

/// The map cone(φ) → cone(φ') induced by a commuting square
/// `φ' ∘ f_src = f_tgt ∘ φ`; blockwise diag(f_src[n−1], f_tgt[n]).
pub fn cone_map(phi: &ChainMap, phi2: &ChainMap, f_src: &ChainMap, f_tgt: &ChainMap) -> Result<ChainMap> {
    let square_l = phi2.compose(f_src)?;
    let square_r = f_tgt.compose(phi)?;
    if square_l != square_r {
        return Err(Error::SelfCheck("cone_map: square does not commute".into()));
    }
    let field = phi.field();
    let c1 = cone(phi)?.complex;
    let c2 = cone(phi2)?.complex;
    let mut comps = BTreeMap::new();
    for &n in c1.dims().keys() {
        if c2.dim(n) == 0 {
            continue;
        }
        let blocks = [f_src.component(n - 1), f_tgt.component(n)];
        let row_dims = [phi2.src().dim(n - 1), phi2.tgt().dim(n)];
        let col_dims = [phi.src().dim(n - 1), phi.tgt().dim(n)];
        let m = Matrix::from_blocks(
            field,
            &[vec![Some(&blocks[0]), None], vec![None, Some(&blocks[1])]],
            &row_dims,
            &col_dims,
        );
        comps.insert(n, m);
    }
    ChainMap::new(c1, c2, comps)
}

/// The map fib(ψ) → fib(ψ') induced by a commuting square; blockwise
/// diag(f_src[n], f_tgt[n+1]).
pub fn fib_map(psi: &ChainMap, psi2: &ChainMap, f_src: &ChainMap, f_tgt: &ChainMap) -> Result<ChainMap> {
    let square_l = psi2.compose(f_src)?;
    let square_r = f_tgt.compose(psi)?;
    if square_l != square_r {
        return Err(Error::SelfCheck("fib_map: square does not commute".into()));
    }
    let field = psi.field();
    let c1 = fib(psi)?.complex;
    let c2 = fib(psi2)?.complex;
    let mut comps = BTreeMap::new();
    for &n in c1.dims().keys() {
        if c2.dim(n) == 0 {
            continue;
        }
        let blocks = [f_src.component(n), f_tgt.component(n + 1)];
        let row_dims = [psi2.src().dim(n), psi2.tgt().dim(n + 1)];
        let col_dims = [psi.src().dim(n), psi.tgt().dim(n + 1)];
        let m = Matrix::from_blocks(
            field,
            &[vec![Some(&blocks[0]), None], vec![None, Some(&blocks[1])]],
            &row_dims,
            &col_dims,
        );
        comps.insert(n, m);
    }
    ChainMap::new(c1, c2, comps)
}

/// Degreewise block sum with canonical injections and projections.
/// The empty sum is the zero complex.
pub fn direct_sum(field: Field, parts: &[ChainComplex]) -> Result<(ChainComplex, Vec<ChainMap>, Vec<ChainMap>)> {
    for c in parts {
        if c.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
        }
    }
    let mut degrees: Vec<i64> = parts.iter().flat_map(|c| c.support()).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut dims = BTreeMap::new();
    for &n in &degrees {
        let d: usize = parts.iter().map(|c| c.dim(n)).sum();
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diff = BTreeMap::new();
    for &n in dims.keys() {
        let below: usize = parts.iter().map(|c| c.dim(n - 1)).sum();
        if below == 0 {
            continue;
        }
        let blocks: Vec<Matrix> = parts.iter().map(|c| c.d(n)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        diff.insert(n, Matrix::block_diag(field, &refs));
    }
    let total = ChainComplex::new(field, dims, diff)?;

    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (k, part) in parts.iter().enumerate() {
        let mut inj = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for &n in total.dims().keys() {
            let off: usize = parts[..k].iter().map(|c| c.dim(n)).sum();
            if part.dim(n) > 0 {
                let mut mi = Matrix::zero(field, total.dim(n), part.dim(n));
                for i in 0..part.dim(n) {
                    mi.set(off + i, i, field.one());
                }
                inj.insert(n, mi);
                let mut mp = Matrix::zero(field, part.dim(n), total.dim(n));
                for i in 0..part.dim(n) {
                    mp.set(i, off + i, field.one());
                }
                proj.insert(n, mp);
            }
        }
        injections.push(ChainMap::new(part.clone(), total.clone(), inj)?);
        projections.push(ChainMap::new(total.clone(), part.clone(), proj)?);
    }
    Ok((total, injections, projections))
}
