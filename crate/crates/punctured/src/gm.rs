//! The windowed Rabinowitz ring of a cotangent fiber in `T*S^1` over `F_2`,
//! its comparison map into truncated Laurent pairs, and the checks that make
//! the windowed statement `RC* = F_2((t^-1)) (+) F_2((t))` exact:
//! ring-homomorphism on every non-escaping generator pair, per-weight
//! bijectivity, and associativity on non-escaping triples.
//!
//! Generators in window `N`: `tau^r` and `phi_r` for `|r| <= N`, both in
//! degree 0. Products (all over `F_2`):
//!
//! * `tau^r tau^s = tau^{r+s}` (path concatenation);
//! * `phi_r phi_s = phi_{r+s}` if `r, s >= 0` or `r, s < 0`, else `0`;
//! * `tau^s phi_r = phi_r tau^s = phi_{r+s} + [tau^{r+s}]` where the
//!   correction fires exactly when `0 < -r <= s` or `0 >= -r > s`.
//!
//! The comparison map: `tau^r -> (t^r, t^r)`; `phi_r -> (0, t^r)` for
//! `r >= 0`, `(t^r, 0)` for `r < 0`. The first slot truncates
//! `F_2((t^-1))`, the second `F_2((t))`.
//!
//! The degree-zero path-space model: chains `gamma_r` with the
//! concatenation product and the coproduct
//! `C(gamma_r) = sum gamma_s (x) gamma_{r-s}` over `0 <= s <= r`
//! (resp. `0 > s > r` for `r < 0`); cochains `delta_r` dual to `gamma_r`
//! (see the crate notes: the dual pairing is fixed so that the coproduct
//! reproduces the product table).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::category::{AInfCategory, GradingMode};
use crate::error::KitError;
use crate::field::Field;

/// A windowed element of the Rabinowitz complex: F2-supports of the
/// `tau^r` (plus) and `phi_r` (minus) generators, `|r| <= window`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathRingElement {
    pub window: i64,
    pub tau: BTreeSet<i64>,
    pub phi: BTreeSet<i64>,
}

/// A truncated element of `F_2((t^-1)) (+) F_2((t))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPair {
    pub window: i64,
    pub first: BTreeSet<i64>,
    pub second: BTreeSet<i64>,
}

/// Result of a windowed product: the element plus an escape flag set when
/// some support left the window (the element is then truncated and must not
/// enter equality assertions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Windowed<T> {
    pub value: T,
    pub escaped: bool,
}

impl PathRingElement {
    pub fn zero(window: i64) -> Self {
        PathRingElement { window, ..Default::default() }
    }

    pub fn tau(window: i64, r: i64) -> Result<Self, KitError> {
        if r.abs() > window {
            return Err(KitError::Window(format!("tau^{r} outside window {window}")));
        }
        let mut e = Self::zero(window);
        e.tau.insert(r);
        Ok(e)
    }

    pub fn phi(window: i64, r: i64) -> Result<Self, KitError> {
        if r.abs() > window {
            return Err(KitError::Window(format!("phi_{r} outside window {window}")));
        }
        let mut e = Self::zero(window);
        e.phi.insert(r);
        Ok(e)
    }

    fn toggle_tau(&mut self, r: i64, escaped: &mut bool) {
        if r.abs() > self.window {
            *escaped = true;
        } else if !self.tau.remove(&r) {
            self.tau.insert(r);
        }
    }

    fn toggle_phi(&mut self, r: i64, escaped: &mut bool) {
        if r.abs() > self.window {
            *escaped = true;
        } else if !self.phi.remove(&r) {
            self.phi.insert(r);
        }
    }
}

/// Whether the mixed-product correction term `tau^{r+s}` fires for
/// `tau^s * phi_r` (equivalently `phi_r * tau^s`).
pub fn mixed_correction(r: i64, s: i64) -> bool {
    (0 < -r && -r <= s) || (0 >= -r && -r > s)
}

/// Bilinear windowed product on the Rabinowitz complex.
pub fn rc_product(x: &PathRingElement, y: &PathRingElement) -> Result<Windowed<PathRingElement>, KitError> {
    if x.window != y.window {
        return Err(KitError::Window("operand windows differ".into()));
    }
    let mut out = PathRingElement::zero(x.window);
    let mut escaped = false;
    // product is x * y with x the left factor
    for &r in &x.tau {
        for &s in &y.tau {
            out.toggle_tau(r + s, &mut escaped);
        }
        // tau^r * phi_s (left tau): formula with roles tau^s phi_r swapped:
        // tau^s * phi_r = phi_{r+s} + correction; here s := r (tau exp), r := s
        for &s in &y.phi {
            out.toggle_phi(r + s, &mut escaped);
            if mixed_correction(s, r) {
                out.toggle_tau(r + s, &mut escaped);
            }
        }
    }
    for &r in &x.phi {
        for &s in &y.tau {
            // phi_r * tau^s
            out.toggle_phi(r + s, &mut escaped);
            if mixed_correction(r, s) {
                out.toggle_tau(r + s, &mut escaped);
            }
        }
        for &s in &y.phi {
            if (r >= 0 && s >= 0) || (r < 0 && s < 0) {
                out.toggle_phi(r + s, &mut escaped);
            }
        }
    }
    Ok(Windowed { value: out, escaped })
}

impl LaurentPair {
    pub fn zero(window: i64) -> Self {
        LaurentPair { window, ..Default::default() }
    }

    fn toggle_first(&mut self, r: i64, escaped: &mut bool) {
        if r.abs() > self.window {
            *escaped = true;
        } else if !self.first.remove(&r) {
            self.first.insert(r);
        }
    }

    fn toggle_second(&mut self, r: i64, escaped: &mut bool) {
        if r.abs() > self.window {
            *escaped = true;
        } else if !self.second.remove(&r) {
            self.second.insert(r);
        }
    }
}

/// Componentwise truncated product of Laurent pairs.
pub fn laurent_mul(x: &LaurentPair, y: &LaurentPair) -> Result<Windowed<LaurentPair>, KitError> {
    if x.window != y.window {
        return Err(KitError::Window("operand windows differ".into()));
    }
    let mut out = LaurentPair::zero(x.window);
    let mut escaped = false;
    for &a in &x.first {
        for &b in &y.first {
            out.toggle_first(a + b, &mut escaped);
        }
    }
    for &a in &x.second {
        for &b in &y.second {
            out.toggle_second(a + b, &mut escaped);
        }
    }
    Ok(Windowed { value: out, escaped })
}

/// The comparison map: linear extension of
/// `tau^r -> (t^r, t^r)`, `phi_r -> (0, t^r)` for `r >= 0`, `(t^r, 0)` else.
pub fn phi_map(x: &PathRingElement) -> LaurentPair {
    let mut out = LaurentPair::zero(x.window);
    let mut escaped = false;
    for &r in &x.tau {
        out.toggle_first(r, &mut escaped);
        out.toggle_second(r, &mut escaped);
    }
    for &r in &x.phi {
        if r >= 0 {
            out.toggle_second(r, &mut escaped);
        } else {
            out.toggle_first(r, &mut escaped);
        }
    }
    debug_assert!(!escaped);
    out
}

/// The Goresky-Hingston coproduct of a degree-zero path chain `gamma_r`,
/// as the list of pairs `(s, r - s)`.
pub fn gh_coproduct(r: i64, window: i64) -> Result<Vec<(i64, i64)>, KitError> {
    if r.abs() > window {
        return Err(KitError::Window(format!("gamma_{r} outside window {window}")));
    }
    let mut out = Vec::new();
    if r >= 0 {
        for s in 0..=r {
            out.push((s, r - s));
        }
    } else {
        for s in (r + 1..0).rev() {
            out.push((s, r - s));
        }
    }
    Ok(out)
}

/// The cochain product read off the coproduct with the pairing
/// `delta_r(gamma_s) = [s == r]`: `(delta_r . delta_s)(gamma_n)` is the
/// coefficient of `gamma_r (x) gamma_s` in `C(gamma_n)`.
pub fn delta_product_via_coproduct(r: i64, s: i64, window: i64) -> Result<Option<i64>, KitError> {
    let n = r + s;
    if n.abs() > window {
        return Err(KitError::Window("product escapes the window".into()));
    }
    let pairs = gh_coproduct(n, window)?;
    Ok(if pairs.contains(&(r, s)) { Some(n) } else { None })
}

/// One generator for the report tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Gen {
    Tau(i64),
    Phi(i64),
}

impl Gen {
    pub fn element(&self, window: i64) -> Result<PathRingElement, KitError> {
        match self {
            Gen::Tau(r) => PathRingElement::tau(window, *r),
            Gen::Phi(r) => PathRingElement::phi(window, *r),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Gen::Tau(r) => format!("tau^{r}"),
            Gen::Phi(r) => format!("phi_{r}"),
        }
    }
}

pub fn generators(window: i64) -> Vec<Gen> {
    let mut out = Vec::new();
    for r in -window..=window {
        out.push(Gen::Tau(r));
        out.push(Gen::Phi(r));
    }
    out
}

/// The full ring-homomorphism / bijectivity / associativity report.
#[derive(Clone, Debug, Serialize)]
pub struct GmReport {
    pub window: i64,
    pub pairs_checked: u64,
    pub pairs_escaped: u64,
    pub ring_hom_counterexample: Option<(String, String)>,
    pub weights_full_rank: bool,
    pub weight_ranks: BTreeMap<i64, usize>,
    pub triples_checked: u64,
    pub triples_escaped: u64,
    pub assoc_counterexample: Option<(String, String, String)>,
    pub unit_law_holds: bool,
    pub coproduct_reproduces_delta_table: bool,
}

impl GmReport {
    pub fn passed(&self) -> bool {
        self.ring_hom_counterexample.is_none()
            && self.weights_full_rank
            && self.assoc_counterexample.is_none()
            && self.unit_law_holds
            && self.coproduct_reproduces_delta_table
    }
}

/// Check that the comparison map is a ring homomorphism on every
/// non-escaping generator pair, per-weight bijective, and that the product
/// is associative on non-escaping generator triples (exhaustive when
/// `check_triples`).
pub fn verify_ring_hom(window: i64, check_triples: bool) -> Result<GmReport, KitError> {
    if window < 1 {
        return Err(KitError::Window("window must be >= 1".into()));
    }
    let gens = generators(window);
    let mut report = GmReport {
        window,
        pairs_checked: 0,
        pairs_escaped: 0,
        ring_hom_counterexample: None,
        weights_full_rank: true,
        weight_ranks: BTreeMap::new(),
        triples_checked: 0,
        triples_escaped: 0,
        assoc_counterexample: None,
        unit_law_holds: true,
        coproduct_reproduces_delta_table: true,
    };
    for g1 in &gens {
        let x = g1.element(window)?;
        for g2 in &gens {
            let y = g2.element(window)?;
            let prod = rc_product(&x, &y)?;
            let lhs_pair = laurent_mul(&phi_map(&x), &phi_map(&y))?;
            if prod.escaped || lhs_pair.escaped {
                report.pairs_escaped += 1;
                continue;
            }
            report.pairs_checked += 1;
            if phi_map(&prod.value) != lhs_pair.value {
                report.ring_hom_counterexample = Some((g1.label(), g2.label()));
            }
        }
    }
    // per-weight bijectivity: {phi(tau^r), phi(phi_r)} spans the weight-r slice
    for r in -window..=window {
        let a = phi_map(&PathRingElement::tau(window, r)?);
        let b = phi_map(&PathRingElement::phi(window, r)?);
        // slice basis: (t^r, 0), (0, t^r); rank of {a, b} over F2
        let to_bits = |p: &LaurentPair| {
            (p.first.contains(&r) as u8) << 1 | (p.second.contains(&r) as u8)
        };
        let (ba, bb) = (to_bits(&a), to_bits(&b));
        let rank = match (ba, bb) {
            (0, 0) => 0,
            (x, y) if x == y => 1,
            (0, _) | (_, 0) => 1,
            _ => 2,
        };
        report.weight_ranks.insert(r, rank);
        if rank != 2 {
            report.weights_full_rank = false;
        }
    }
    // unit law
    let unit = PathRingElement::tau(window, 0)?;
    for g in &gens {
        let x = g.element(window)?;
        let l = rc_product(&unit, &x)?;
        let r = rc_product(&x, &unit)?;
        if l.escaped || r.escaped || l.value != x || r.value != x {
            report.unit_law_holds = false;
        }
    }
    // coproduct pairing reproduces the delta-product table
    'outer: for r in -window..=window {
        for s in -window..=window {
            if (r + s).abs() > window {
                continue;
            }
            let via_cop = delta_product_via_coproduct(r, s, window)?;
            let table = if (r >= 0 && s >= 0) || (r < 0 && s < 0) {
                Some(r + s)
            } else {
                None
            };
            if via_cop != table {
                report.coproduct_reproduces_delta_table = false;
                break 'outer;
            }
        }
    }
    if check_triples {
        for g1 in &gens {
            let x = g1.element(window)?;
            for g2 in &gens {
                let y = g2.element(window)?;
                let xy = rc_product(&x, &y)?;
                for g3 in &gens {
                    let z = g3.element(window)?;
                    let yz = rc_product(&y, &z)?;
                    let l = rc_product(&xy.value, &z)?;
                    let r = rc_product(&x, &yz.value)?;
                    if xy.escaped || yz.escaped || l.escaped || r.escaped {
                        report.triples_escaped += 1;
                        continue;
                    }
                    report.triples_checked += 1;
                    if l.value != r.value {
                        report.assoc_counterexample =
                            Some((g1.label(), g2.label(), g3.label()));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Export the windowed ring as a strictly unital one-object A-infinity
/// category over F2 (mu^1 = 0, mu^2 = the product, all higher mu = 0),
/// with weights recording the Laurent exponent and the window declared.
pub fn export_as_ainf(window: i64) -> Result<AInfCategory, KitError> {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let pt = c.add_object("L0");
    let mut idx = BTreeMap::new();
    for r in -window..=window {
        idx.insert(Gen::Tau(r), c.add_elem(&format!("tau{r}"), pt, pt, 0, Some(r))?);
        idx.insert(Gen::Phi(r), c.add_elem(&format!("phi{r}"), pt, pt, 0, Some(r))?);
    }
    let one = c.field.one();
    for g1 in generators(window) {
        let x = g1.element(window)?;
        for g2 in generators(window) {
            let y = g2.element(window)?;
            // mu^2 key is first-applied-first: g2 then g1 corresponds to the
            // ring product g1 * g2 with g1 the left factor
            let prod = rc_product(&x, &y)?;
            for &r in &prod.value.tau {
                c.add_mu_entry(vec![idx[&g2], idx[&g1]], idx[&Gen::Tau(r)], one.clone());
            }
            for &r in &prod.value.phi {
                c.add_mu_entry(vec![idx[&g2], idx[&g1]], idx[&Gen::Phi(r)], one.clone());
            }
        }
    }
    c.identities.insert(pt, idx[&Gen::Tau(0)]);
    c.weight_window = Some((-window, window));
    c.truncated_homs.insert((pt, pt));
    Ok(c)
}

/// The three-fiber variant: objects L0, L1, L2, all hom spaces carrying the
/// same windowed ring, composition through the chain isomorphisms. The
/// commuting-square check of the product through any pair of hom spaces is
/// then the same generator table, which `verify_ring_hom` covers; this
/// export exists so the multi-object plumbing is exercised too.
pub fn export_three_fibers(window: i64) -> Result<AInfCategory, KitError> {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let objs: Vec<u32> = (0..3).map(|i| c.add_object(&format!("L{i}"))).collect();
    let mut idx: BTreeMap<(u32, u32, Gen), u32> = BTreeMap::new();
    for &a in &objs {
        for &b in &objs {
            for r in -window..=window {
                idx.insert(
                    (a, b, Gen::Tau(r)),
                    c.add_elem(&format!("tau{r}@{a}{b}"), a, b, 0, Some(r))?,
                );
                idx.insert(
                    (a, b, Gen::Phi(r)),
                    c.add_elem(&format!("phi{r}@{a}{b}"), a, b, 0, Some(r))?,
                );
            }
        }
    }
    let one = c.field.one();
    for &a in &objs {
        for &b in &objs {
            for &d in &objs {
                for g1 in generators(window) {
                    let x = g1.element(window)?;
                    for g2 in generators(window) {
                        let y = g2.element(window)?;
                        let prod = rc_product(&x, &y)?;
                        // g2: a -> b first, then g1: b -> d
                        for &r in &prod.value.tau {
                            c.add_mu_entry(
                                vec![idx[&(a, b, g2)], idx[&(b, d, g1)]],
                                idx[&(a, d, Gen::Tau(r))],
                                one.clone(),
                            );
                        }
                        for &r in &prod.value.phi {
                            c.add_mu_entry(
                                vec![idx[&(a, b, g2)], idx[&(b, d, g1)]],
                                idx[&(a, d, Gen::Phi(r))],
                                one.clone(),
                            );
                        }
                    }
                }
            }
        }
    }
    for (i, &o) in objs.iter().enumerate() {
        c.identities.insert(o, idx[&(o, o, Gen::Tau(0))]);
        let _ = i;
    }
    c.weight_window = Some((-window, window));
    for &a in &objs {
        for &b in &objs {
            c.truncated_homs.insert((a, b));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_base_cases() {
        assert_eq!(gh_coproduct(0, 8).unwrap(), vec![(0, 0)]);
        assert_eq!(gh_coproduct(2, 8).unwrap(), vec![(0, 2), (1, 1), (2, 0)]);
        assert!(gh_coproduct(-1, 8).unwrap().is_empty());
        assert_eq!(gh_coproduct(-2, 8).unwrap(), vec![(-1, -1)]);
    }

    #[test]
    fn product_examples_from_the_tables() {
        let w = 8;
        let t = |r| PathRingElement::tau(w, r).unwrap();
        let p = |r| PathRingElement::phi(w, r).unwrap();
        // tau^2 tau^3 = tau^5
        assert_eq!(rc_product(&t(2), &t(3)).unwrap().value, t(5));
        // phi_1 phi_{-1} = 0
        assert!(rc_product(&p(1), &p(-1)).unwrap().value.phi.is_empty());
        // tau^{-3} phi_2 = phi_{-1} + tau^{-1}  (correction 0 >= -2 > -3)
        let prod = rc_product(&t(-3), &p(2)).unwrap().value;
        let mut expect = p(-1);
        expect.tau.insert(-1);
        assert_eq!(prod, expect);
        // tau^1 phi_{-2} = phi_{-1} (no correction)
        assert_eq!(rc_product(&t(1), &p(-2)).unwrap().value, p(-1));
    }

    #[test]
    fn phi_map_rules() {
        let w = 8;
        let img = phi_map(&PathRingElement::tau(w, 0).unwrap());
        assert!(img.first.contains(&0) && img.second.contains(&0));
        let img = phi_map(&PathRingElement::phi(w, 0).unwrap());
        assert!(img.first.is_empty() && img.second.contains(&0));
        let img = phi_map(&PathRingElement::phi(w, -5).unwrap());
        assert!(img.first.contains(&-5) && img.second.is_empty());
    }

    #[test]
    fn cross_check_against_laurent() {
        // Phi(tau^{-3}) Phi(phi_2) = (0, t^{-1}) = Phi(phi_{-1} + tau^{-1})
        let w = 8;
        let lhs = laurent_mul(
            &phi_map(&PathRingElement::tau(w, -3).unwrap()),
            &phi_map(&PathRingElement::phi(w, 2).unwrap()),
        )
        .unwrap()
        .value;
        let mut rhs = PathRingElement::phi(w, -1).unwrap();
        rhs.tau.insert(-1);
        assert_eq!(lhs, phi_map(&rhs));
    }

    #[test]
    fn window_one_all_pairs_hold() {
        let r = verify_ring_hom(1, true).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.pairs_checked + r.pairs_escaped, 36);
    }

    #[test]
    fn per_weight_bijectivity_at_three() {
        let r = verify_ring_hom(3, false).unwrap();
        assert_eq!(r.weight_ranks.get(&3), Some(&2));
        assert_eq!(r.weight_ranks.get(&-3), Some(&2));
    }

    #[test]
    fn export_validates_and_mu1_is_zero() {
        let c = export_as_ainf(2).unwrap();
        assert!(!c.mu.contains_key(&1));
        let r = c.validate_ainf(4).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(r.instances_capped > 0);
    }

    #[test]
    fn three_fiber_export_validates() {
        let c = export_three_fibers(1).unwrap();
        let r = c.validate_ainf(3).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn escape_flag_not_silent_truncation() {
        let w = 2;
        let x = PathRingElement::tau(w, 2).unwrap();
        let prod = rc_product(&x, &x).unwrap();
        assert!(prod.escaped);
        assert!(prod.value.tau.is_empty());
    }
}
