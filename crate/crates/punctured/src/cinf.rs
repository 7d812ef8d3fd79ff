//! Morphism complexes of the formal punctured neighborhood of infinity:
//! `Hom(y(K), y(L)) = Cone(CC*(C^op, (Y^r_K)^v (x) Y^r_L) --ev--> CC*(C^op, hom(Y^r_K, Y^r_L)))`,
//! with the cone differential and the composition product making the image of
//! `y` a dg category.
//!
//! Both coefficient complexes are assembled per weight block; inside a window
//! their matrix-unit bases coincide and `ev` is the identity, so the cone is
//! acyclic in every bidegree where the hom carriers are finite (properness).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bimodule::{hom_bimodule, tensor_bimodule, Bimodule};
use crate::category::AInfCategory;
use crate::complex::{ChainMap, HomologyVerdict, TruncatedComplex};
use crate::error::KitError;
use crate::field::{Field, Scalar};
use crate::hochschild::{cc_complex, CcComplex, CcUnit};
use crate::matrix::SparseMatrix;

#[derive(Clone, Debug)]
pub struct CInfHom {
    pub op: Arc<AInfCategory>,
    pub k_obj: u32,
    pub l_obj: u32,
    pub minus: CcComplex,
    pub plus: CcComplex,
    pub tensor: Bimodule,
    pub hom: Bimodule,
    /// weight block -> assembled cone
    pub cones: BTreeMap<Option<i64>, TruncatedComplex>,
}

impl CInfHom {
    pub fn homology(&self) -> BTreeMap<(Option<i64>, i64), HomologyVerdict> {
        let mut out = BTreeMap::new();
        for (w, cx) in &self.cones {
            for (n, v) in cx.homology_dims() {
                out.insert((*w, n), v);
            }
        }
        out
    }

    /// True when every exact degree of every block has vanishing homology,
    /// and at least one exact degree with a nonzero term exists (so the
    /// statement is not vacuous). Returns (acyclic_on_exact, nonvacuous).
    pub fn acyclic_on_exact_degrees(&self) -> (bool, bool) {
        let mut ok = true;
        let mut seen = false;
        for (w, cx) in &self.cones {
            for (n, v) in cx.homology_dims() {
                if let HomologyVerdict::Exact(d) = v {
                    if cx.dim(n) > 0 {
                        seen = true;
                    }
                    if d != 0 {
                        ok = false;
                    }
                }
                let _ = (w, n);
            }
        }
        (ok, seen)
    }
}

/// Assemble the punctured-neighborhood hom complex for a pair of objects of
/// `c` (not of the opposite category; the op is taken internally).
pub fn cinf_hom(
    c: &Arc<AInfCategory>,
    k_obj: u32,
    l_obj: u32,
    length_cap: usize,
) -> Result<CInfHom, KitError> {
    let op = Arc::new(c.opposite());
    cinf_hom_over_op(&op, k_obj, l_obj, length_cap)
}

/// Same, but the caller provides the opposite category (reused across pairs).
pub fn cinf_hom_over_op(
    op: &Arc<AInfCategory>,
    k_obj: u32,
    l_obj: u32,
    length_cap: usize,
) -> Result<CInfHom, KitError> {
    let tensor = tensor_bimodule(op, k_obj, l_obj);
    let hom = hom_bimodule(op, k_obj, l_obj);
    let minus = cc_complex(op, &tensor, length_cap)?;
    let plus = cc_complex(op, &hom, length_cap)?;
    let mut cones = BTreeMap::new();
    let blocks: std::collections::BTreeSet<Option<i64>> = minus
        .blocks
        .keys()
        .chain(plus.blocks.keys())
        .copied()
        .collect();
    for w in blocks {
        let src = minus
            .blocks
            .get(&w)
            .cloned()
            .unwrap_or_else(|| empty_complex(op.field));
        let tgt = plus
            .blocks
            .get(&w)
            .cloned()
            .unwrap_or_else(|| empty_complex(op.field));
        // ev is the identity on matrix units; the two unit bases coincide
        let mut components = BTreeMap::new();
        for (n, labels) in &src.terms {
            let cols = labels.len();
            let rows = tgt.dim(*n);
            let mut trip = Vec::new();
            if let (Some(mu), Some(pu)) = (
                minus.units.get(&w).and_then(|m| m.get(n)),
                plus.units.get(&w).and_then(|m| m.get(n)),
            ) {
                for (col, u) in mu.iter().enumerate() {
                    // the hom unit with the same string and the matching value id
                    let want = hom_unit_id(&tensor, &hom, u)?;
                    if let Some(row) = pu.iter().position(|v| {
                        v.string == u.string && v.base_obj == u.base_obj && v.value == want
                    }) {
                        trip.push((row, col, op.field.one()));
                    }
                }
            }
            components.insert(*n, SparseMatrix::from_triplets(&op.field, rows, cols, trip)?);
        }
        let map = ChainMap { source: src, target: tgt, components };
        cones.insert(w, map.cone()?);
    }
    Ok(CInfHom {
        op: op.clone(),
        k_obj,
        l_obj,
        minus,
        plus,
        tensor,
        hom,
        cones,
    })
}

fn hom_unit_id(tensor: &Bimodule, hom: &Bimodule, u: &CcUnit) -> Result<u32, KitError> {
    let tid = &tensor.elem(u.value).id;
    let hid = format!("h:{}", tid.strip_prefix("t:").unwrap_or(tid));
    hom.elem_index(&hid)
}

fn empty_complex(field: Field) -> TruncatedComplex {
    TruncatedComplex::new(field, BTreeMap::new(), BTreeMap::new(), Default::default())
        .expect("empty complex")
}

// ---------------------------------------------------------------------------
// elements and the dg structure
// ---------------------------------------------------------------------------

/// A homogeneous element of a punctured-neighborhood hom complex: sparse
/// combinations of matrix-unit cochains in the two coefficient complexes.
/// `degree` is the cone degree (the minus part is shifted by one).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CInfElement {
    pub degree: i64,
    pub minus: Vec<(CcUnit, Scalar)>,
    pub plus: Vec<(CcUnit, Scalar)>,
}

impl CInfElement {
    pub fn zero(degree: i64) -> Self {
        CInfElement { degree, minus: Vec::new(), plus: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.minus.is_empty() && self.plus.is_empty()
    }

    fn push(list: &mut Vec<(CcUnit, Scalar)>, field: &Field, u: CcUnit, c: Scalar) {
        if field.is_zero(&c) {
            return;
        }
        if let Some(slot) = list.iter_mut().find(|(x, _)| *x == u) {
            slot.1 = field.add(&slot.1, &c);
            if field.is_zero(&slot.1) {
                list.retain(|(x, _)| *x != u);
            }
        } else {
            list.push((u, c));
        }
    }

    pub fn normalize(&mut self) {
        self.minus.sort_by(|a, b| a.0.cmp(&b.0));
        self.plus.sort_by(|a, b| a.0.cmp(&b.0));
    }
}

/// The cone differential on elements:
/// `mu^1(phi) = (-delta_T phi_-, ev phi_- + delta_H phi_+)`.
pub fn cinf_mu1(h: &CInfHom, phi: &CInfElement) -> Result<CInfElement, KitError> {
    let field = h.op.field;
    let mut out = CInfElement::zero(phi.degree + 1);
    // minus: -delta_T; units of cc-degree phi.degree + 1
    for (u, c) in &phi.minus {
        let (w, deg, col) = locate(&h.minus, u)?;
        let blk = &h.minus.blocks[&w];
        let d = blk.d(deg);
        for (r, cc, v) in d.entries() {
            if *cc as usize == col {
                let tgt = h.minus.units[&w][&(deg + 1)][*r as usize].clone();
                let coeff = field.mul(&field.mul(c, v), &field.sign(1));
                CInfElement::push(&mut out.minus, &field, tgt, coeff);
            }
        }
        // ev: identity on units
        let want = hom_unit_id(&h.tensor, &h.hom, u)?;
        let tgt = CcUnit { string: u.string.clone(), base_obj: u.base_obj, value: want };
        CInfElement::push(&mut out.plus, &field, tgt, c.clone());
    }
    for (u, c) in &phi.plus {
        let (w, deg, col) = locate(&h.plus, u)?;
        let blk = &h.plus.blocks[&w];
        let d = blk.d(deg);
        for (r, cc, v) in d.entries() {
            if *cc as usize == col {
                let tgt = h.plus.units[&w][&(deg + 1)][*r as usize].clone();
                CInfElement::push(&mut out.plus, &field, tgt, field.mul(c, v));
            }
        }
    }
    out.normalize();
    Ok(out)
}

fn locate(cx: &CcComplex, u: &CcUnit) -> Result<(Option<i64>, i64, usize), KitError> {
    for (w, per_deg) in &cx.units {
        for (deg, list) in per_deg {
            if let Some(i) = list.iter().position(|x| x == u) {
                return Ok((*w, *deg, i));
            }
        }
    }
    Err(KitError::Invalid("unit not found in complex".into()))
}

/// Sign parameters for the composition product; `PINNED_MU2` is validated by
/// the Leibniz/associativity suite (see the ignored search test).
#[derive(Clone, Copy, Debug)]
pub struct Mu2Params {
    pub c_f: i64,
    pub c_g: i64,
    pub c_fg: i64,
    pub c_0: i64,
    pub c_xl: i64,
    pub c_gxl: i64,
    pub c_xr: i64,
    pub c_fxr: i64,
}

pub const PINNED_MU2: Mu2Params = Mu2Params {
    c_f: 0,
    c_g: 0,
    c_fg: 0,
    c_0: 0,
    c_xl: 1,
    c_gxl: 1,
    c_xr: 0,
    c_fxr: 0,
};

/// The composition product. For `phi1 in Hom(y(K), y(L))`,
/// `phi2 in Hom(y(L), y(M))` the length-`d` component on a string `s` is the
/// sum over splittings `s = s_left ++ s_right` of the Calkin composition of
/// `phi2(s_right)` with `phi1(s_left)`, with the pinned splitting sign.
pub fn cinf_mu2(
    h1: &CInfHom,
    h2: &CInfHom,
    h12: &CInfHom,
    phi2: &CInfElement,
    phi1: &CInfElement,
) -> Result<CInfElement, KitError> {
    cinf_mu2_with(h1, h2, h12, phi2, phi1, &PINNED_MU2)
}

pub fn cinf_mu2_with(
    h1: &CInfHom,
    h2: &CInfHom,
    h12: &CInfHom,
    phi2: &CInfElement,
    phi1: &CInfElement,
    pp: &Mu2Params,
) -> Result<CInfElement, KitError> {
    if h1.l_obj != h2.k_obj {
        return Err(KitError::Invalid("middle objects do not match".into()));
    }
    let op = &h1.op;
    let field = op.field;
    let mut out = CInfElement::zero(phi1.degree + phi2.degree);
    let sign_for = |sleft: &[u32], sright: &[u32]| {
        let xl = op.star(sleft);
        let xr = op.star(sright);
        field.sign(
            pp.c_f * phi1.degree
                + pp.c_g * phi2.degree
                + pp.c_fg * phi1.degree * phi2.degree
                + pp.c_0
                + pp.c_xl * xl
                + pp.c_gxl * phi2.degree * xl
                + pp.c_xr * xr
                + pp.c_fxr * phi1.degree * xr,
        )
    };
    // ++ -> +
    for (u1, c1) in &phi1.plus {
        let (z1, w1) = split_unit(&h1.hom, u1)?;
        for (u2, c2) in &phi2.plus {
            let (z2, w2) = split_unit(&h2.hom, u2)?;
            if w1 != z2 {
                continue;
            }
            if let Some(u) = glue(op, u1, u2, &h12.hom, "h", z1.clone(), w2, h12.plus.length_cap)? {
                let coeff = field.mul(&field.mul(c1, c2), &sign_for(&u1.string, &u2.string));
                CInfElement::push(&mut out.plus, &field, u, coeff);
            }
        }
    }
    // (-,+) -> -
    for (u1, c1) in &phi1.minus {
        let (z1, n1) = split_unit(&h1.tensor, u1)?;
        for (u2, c2) in &phi2.plus {
            let (z2, w2) = split_unit(&h2.hom, u2)?;
            if n1 != z2 {
                continue;
            }
            if let Some(u) = glue(op, u1, u2, &h12.tensor, "t", z1.clone(), w2, h12.minus.length_cap)? {
                let coeff = field.mul(&field.mul(c1, c2), &sign_for(&u1.string, &u2.string));
                CInfElement::push(&mut out.minus, &field, u, coeff);
            }
        }
    }
    // (+,-) -> -
    for (u1, c1) in &phi1.plus {
        let (z1, w1) = split_unit(&h1.hom, u1)?;
        for (u2, c2) in &phi2.minus {
            let (z2, p2) = split_unit(&h2.tensor, u2)?;
            if w1 != z2 {
                continue;
            }
            if let Some(u) = glue(op, u1, u2, &h12.tensor, "t", z1.clone(), p2, h12.minus.length_cap)? {
                let coeff = field.mul(&field.mul(c1, c2), &sign_for(&u1.string, &u2.string));
                CInfElement::push(&mut out.minus, &field, u, coeff);
            }
        }
    }
    out.normalize();
    Ok(out)
}

/// The leg ids of a matrix-unit value `prefix:z|w`.
fn split_unit(p: &Bimodule, u: &CcUnit) -> Result<(String, String), KitError> {
    let id = &p.elem(u.value).id;
    let body = id
        .splitn(2, ':')
        .nth(1)
        .ok_or_else(|| KitError::Invalid(format!("malformed unit id `{id}`")))?;
    let (z, w) = body
        .split_once('|')
        .ok_or_else(|| KitError::Invalid(format!("malformed unit id `{id}`")))?;
    Ok((z.to_string(), w.to_string()))
}

/// Concatenate strings (phi1's block first-applied) and look up the glued
/// value unit in the target bimodule. Strings too long for the cap yield
/// `None` (those components live beyond the window).
#[allow(clippy::too_many_arguments)]
fn glue(
    op: &Arc<AInfCategory>,
    u1: &CcUnit,
    u2: &CcUnit,
    target: &Bimodule,
    prefix: &str,
    z: String,
    w: String,
    cap: usize,
) -> Result<Option<CcUnit>, KitError> {
    let mut s = u1.string.clone();
    s.extend_from_slice(&u2.string);
    if s.len() > cap {
        return Ok(None);
    }
    if !op.composable(&s) {
        return Ok(None);
    }
    // seam: end of u1 must meet start of u2
    if !u1.string.is_empty() && !u2.string.is_empty() {
        let end = op.elem(*u1.string.last().unwrap()).dst;
        let start = op.elem(u2.string[0]).src;
        if end != start {
            return Ok(None);
        }
    } else if u1.string.is_empty() && !u2.string.is_empty() {
        if u1.base_obj != op.elem(u2.string[0]).src {
            return Ok(None);
        }
    } else if !u1.string.is_empty() && u2.string.is_empty() {
        if op.elem(*u1.string.last().unwrap()).dst != u2.base_obj {
            return Ok(None);
        }
    } else if u1.base_obj != u2.base_obj {
        return Ok(None);
    }
    let base = if s.is_empty() { u1.base_obj } else { op.elem(s[0]).src };
    let vid = format!("{prefix}:{z}|{w}");
    let value = target.elem_index(&vid)?;
    Ok(Some(CcUnit { string: s, base_obj: base, value }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn proper_categories_have_acyclic_cinf_hom() {
        for cat in [fixtures::f2_point(), fixtures::dual_numbers()] {
            let c = Arc::new(cat);
            let h = cinf_hom(&c, 0, 0, 4).unwrap();
            let (acyclic, nonvacuous) = h.acyclic_on_exact_degrees();
            assert!(acyclic);
            assert!(nonvacuous);
        }
    }

    #[test]
    fn a2_quiver_all_pairs_acyclic() {
        let c = Arc::new(fixtures::a2_quiver());
        let op = Arc::new(c.opposite());
        for k in 0..2 {
            for l in 0..2 {
                let h = cinf_hom_over_op(&op, k, l, 4).unwrap();
                let (acyclic, _) = h.acyclic_on_exact_degrees();
                assert!(acyclic, "pair ({k},{l})");
            }
        }
    }

    #[test]
    fn right_proper_column_of_mixed_category() {
        let c = Arc::new(fixtures::two_object_mixed(3));
        let op = Arc::new(c.opposite());
        // K = object "k" (index 0): all homs into it finite and unweighted
        for x in 0..2 {
            let h = cinf_hom_over_op(&op, x, 0, 3).unwrap();
            let (acyclic, nonvacuous) = h.acyclic_on_exact_degrees();
            assert!(acyclic, "column ({x}, k)");
            if x == 0 {
                assert!(nonvacuous);
            }
        }
    }

    #[test]
    fn cinf_of_end_category_over_q_assembles() {
        // d^2 = 0 on exact degrees is asserted by the cone constructor
        for spec in fixtures::sign_suite_complexes() {
            let c = Arc::new(fixtures::end_category(&spec));
            let h = cinf_hom(&c, 0, 0, 3).unwrap();
            let (acyclic, _) = h.acyclic_on_exact_degrees();
            assert!(acyclic, "End(V) is proper");
        }
    }

    fn random_element(
        h: &CInfHom,
        rnd: &mut impl FnMut() -> u64,
        degree: i64,
    ) -> CInfElement {
        let field = h.op.field;
        let mut out = CInfElement::zero(degree);
        for (_, per_deg) in &h.minus.units {
            for (deg, list) in per_deg {
                if *deg == degree + 1 {
                    for u in list {
                        if rnd() % 3 == 0 {
                            let v = field.from_i64((rnd() % 3) as i64 - 1);
                            CInfElement::push(&mut out.minus, &field, u.clone(), v);
                        }
                    }
                }
            }
        }
        for (_, per_deg) in &h.plus.units {
            for (deg, list) in per_deg {
                if *deg == degree {
                    for u in list {
                        if rnd() % 3 == 0 {
                            let v = field.from_i64((rnd() % 3) as i64 - 1);
                            CInfElement::push(&mut out.plus, &field, u.clone(), v);
                        }
                    }
                }
            }
        }
        out.normalize();
        out
    }

    fn add_scaled(
        field: &crate::field::Field,
        acc: &mut CInfElement,
        x: &CInfElement,
        s: &Scalar,
    ) {
        for (u, c) in &x.minus {
            CInfElement::push(&mut acc.minus, field, u.clone(), field.mul(c, s));
        }
        for (u, c) in &x.plus {
            CInfElement::push(&mut acc.plus, field, u.clone(), field.mul(c, s));
        }
    }

    fn mu2_suite(pp: &Mu2Params, trials: u64) -> bool {
        // one-object End(V) over Q: all hom complexes coincide
        let spec = fixtures::sign_suite_complexes().remove(0);
        let c = Arc::new(fixtures::end_category(&spec));
        let h = cinf_hom(&c, 0, 0, 3).unwrap();
        let field = c.field;
        let mut state = 0xabcdu64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..trials {
            let df = (rnd() % 3) as i64 - 1;
            let dg = (rnd() % 3) as i64 - 1;
            let dh = (rnd() % 3) as i64 - 1;
            let f = random_element(&h, &mut rnd, df);
            let g = random_element(&h, &mut rnd, dg);
            let hh = random_element(&h, &mut rnd, dh);
            // Leibniz: mu1(mu2(g,f)) + mu2(g, mu1 f) + (-1)^{||f||} mu2(mu1 g, f) = 0
            let t0 = cinf_mu1(&h, &cinf_mu2_with(&h, &h, &h, &g, &f, pp).unwrap()).unwrap();
            let t1 = cinf_mu2_with(&h, &h, &h, &g, &cinf_mu1(&h, &f).unwrap(), pp).unwrap();
            let t2 = cinf_mu2_with(&h, &h, &h, &cinf_mu1(&h, &g).unwrap(), &f, pp).unwrap();
            let mut acc = CInfElement::zero(t0.degree);
            add_scaled(&field, &mut acc, &t0, &field.one());
            add_scaled(&field, &mut acc, &t1, &field.one());
            add_scaled(&field, &mut acc, &t2, &field.sign(f.degree - 1));
            acc.normalize();
            if !acc.is_zero() {
                return false;
            }
            // associativity: mu2(h, mu2(g,f)) + (-1)^{||f||} mu2(mu2(h,g), f) = 0
            let a0 = cinf_mu2_with(&h, &h, &h, &hh, &cinf_mu2_with(&h, &h, &h, &g, &f, pp).unwrap(), pp)
                .unwrap();
            let a1 = cinf_mu2_with(&h, &h, &h, &cinf_mu2_with(&h, &h, &h, &hh, &g, pp).unwrap(), &f, pp)
                .unwrap();
            let mut acc = CInfElement::zero(a0.degree);
            add_scaled(&field, &mut acc, &a0, &field.one());
            add_scaled(&field, &mut acc, &a1, &field.sign(f.degree - 1));
            acc.normalize();
            if !acc.is_zero() {
                return false;
            }
        }
        true
    }

    #[test]
    #[ignore = "one-off search used to pin PINNED_MU2; run with --ignored to reproduce"]
    fn search_mu2_signs() {
        let mut winners = Vec::new();
        for bits in 0..256u32 {
            let b = |i: u32| ((bits >> i) & 1) as i64;
            let pp = Mu2Params {
                c_f: b(0),
                c_g: b(1),
                c_fg: b(2),
                c_0: b(3),
                c_xl: b(4),
                c_gxl: b(5),
                c_xr: b(6),
                c_fxr: b(7),
            };
            if mu2_suite(&pp, 8) {
                winners.push(pp);
            }
        }
        for w in &winners {
            println!("mu2 winner: {w:?}");
        }
        assert!(!winners.is_empty());
    }

    #[test]
    fn mu2_satisfies_leibniz_and_associativity() {
        assert!(mu2_suite(&PINNED_MU2, 25));
    }
}
