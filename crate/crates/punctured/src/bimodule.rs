//! A-infinity bimodules and the constructions the rest of the kit consumes:
//! diagonal, linear-dual diagonal, Yoneda modules, and the hom / finite-rank
//! tensor bimodules between Yoneda modules.
//!
//! Conventions (continuing `category`):
//!
//! * A `(C, D)`-bimodule `P` assigns a carrier `P(A, B)` to a left object `A`
//!   of `C` and a right object `B` of `D`; think of an element as an arrow
//!   `B -> A`. Structure maps `mu^{k,l}(xs | b | ys)` take
//!   `xs = [x_1..x_k]` adjacent-first with `x_i in C(A_{i-1}, A_i)`,
//!   `ys = [y_1..y_l]` adjacent-first with `y_j in D(B_j, B_{j-1})`,
//!   and land in `P(A_k, B_l)` with degree `1 - k - l`.
//! * Relations, for every composable `(xs, b, ys)`:
//!   `sum (-1)^{R} outer(..) = 0` over three families --
//!   composition of two `mu_P`'s with `R = sum_{t>l_1} ||y_t||`;
//!   `mu_C` insertions with `R = sum_{t<=i} ||x_t|| + |b| + sum_t ||y_t||`
//!   (the bimodule element counts unreduced); `mu_D` insertions with
//!   `R = sum_{t>i+j} ||y_t||`. The diagonal bimodule sign
//!   `(-1)^{sum ||y|| + 1}` is forced by this system and matches the
//!   reference formula.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::category::{add_into, AInfCategory, Combo, GradingMode};
use crate::error::KitError;
use crate::field::{Field, Scalar};

#[derive(Clone, Debug)]
pub struct BimodElem {
    pub id: String,
    pub left_obj: u32,
    pub right_obj: u32,
    pub degree: i64,
    pub weight: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Bimodule {
    pub field: Field,
    pub left: Arc<AInfCategory>,
    pub right: Arc<AInfCategory>,
    pub elems: Vec<BimodElem>,
    id_index: BTreeMap<String, u32>,
    /// per bimodule element: (k, l) -> sorted list of (xs, ys, output combo)
    mu: Vec<BTreeMap<(usize, usize), Vec<(Vec<u32>, Vec<u32>, Combo)>>>,
    /// elements whose structure rows may be incomplete because a window
    /// dropped entries; complexes built on them must not be reported exact
    pub capped: BTreeSet<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleReport {
    pub instances_checked: u64,
    pub instances_capped: u64,
    pub violations: Vec<BimoduleViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleViolation {
    pub k: usize,
    pub l: usize,
    pub xs: Vec<String>,
    pub b: String,
    pub ys: Vec<String>,
}

impl BimoduleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Bimodule {
    pub fn new(left: Arc<AInfCategory>, right: Arc<AInfCategory>) -> Self {
        let field = left.field;
        Bimodule {
            field,
            left,
            right,
            elems: Vec::new(),
            id_index: BTreeMap::new(),
            mu: Vec::new(),
            capped: BTreeSet::new(),
        }
    }

    pub fn add_elem(
        &mut self,
        id: String,
        left_obj: u32,
        right_obj: u32,
        degree: i64,
        weight: Option<i64>,
    ) -> Result<u32, KitError> {
        if self.id_index.contains_key(&id) {
            return Err(KitError::Schema(format!("duplicate bimodule elem `{id}`")));
        }
        let idx = self.elems.len() as u32;
        self.id_index.insert(id.clone(), idx);
        self.elems.push(BimodElem { id, left_obj, right_obj, degree, weight });
        self.mu.push(BTreeMap::new());
        Ok(idx)
    }

    pub fn elem(&self, i: u32) -> &BimodElem {
        &self.elems[i as usize]
    }

    pub fn elem_index(&self, id: &str) -> Result<u32, KitError> {
        self.id_index
            .get(id)
            .copied()
            .ok_or_else(|| KitError::UnknownBasis(id.to_string()))
    }

    pub fn deg(&self, i: u32) -> i64 {
        self.elems[i as usize].degree
    }

    /// Carrier basis at a pair of objects.
    pub fn carrier(&self, left_obj: u32, right_obj: u32) -> Vec<u32> {
        (0..self.elems.len() as u32)
            .filter(|i| {
                self.elem(*i).left_obj == left_obj && self.elem(*i).right_obj == right_obj
            })
            .collect()
    }

    pub fn add_mu_entry(&mut self, xs: Vec<u32>, b: u32, ys: Vec<u32>, output: u32, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        let list = self.mu[b as usize].entry((xs.len(), ys.len())).or_default();
        let pos = list.partition_point(|(exs, eys, _)| (exs.as_slice(), eys.as_slice()) < (xs.as_slice(), ys.as_slice()));
        if pos < list.len() && list[pos].0 == xs && list[pos].1 == ys {
            add_into(&self.field, &mut list[pos].2, output, c);
            if list[pos].2.is_empty() {
                list.remove(pos);
            }
        } else {
            let mut combo = Combo::new();
            add_into(&self.field, &mut combo, output, c);
            list.insert(pos, (xs, ys, combo));
        }
    }

    pub fn mu_eval(&self, xs: &[u32], b: u32, ys: &[u32]) -> Combo {
        self.mu_eval_ref(xs, b, ys).cloned().unwrap_or_default()
    }

    fn mu_eval_ref(&self, xs: &[u32], b: u32, ys: &[u32]) -> Option<&Combo> {
        let list = self.mu[b as usize].get(&(xs.len(), ys.len()))?;
        list.binary_search_by(|(exs, eys, _)| {
            (exs.as_slice(), eys.as_slice()).cmp(&(xs, ys))
        })
        .ok()
        .map(|i| &list[i].2)
    }

    /// Iterate all stored entries: `(k, l, xs, b, ys, combo)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[u32], u32, &[u32], &Combo)> {
        self.mu.iter().enumerate().flat_map(|(b, tabs)| {
            tabs.iter().flat_map(move |((k, l), list)| {
                list.iter()
                    .map(move |(xs, ys, combo)| (*k, *l, xs.as_slice(), b as u32, ys.as_slice(), combo))
            })
        })
    }

    /// Entries attached to one bimodule element.
    pub fn entries_at(
        &self,
        b: u32,
    ) -> impl Iterator<Item = (usize, usize, &[u32], &[u32], &Combo)> {
        self.mu[b as usize].iter().flat_map(|((k, l), list)| {
            list.iter().map(move |(xs, ys, combo)| (*k, *l, xs.as_slice(), ys.as_slice(), combo))
        })
    }

    pub fn mu_eval_combo(&self, xs: &[u32], b: &Combo, ys: &[u32]) -> Combo {
        let mut out = Combo::new();
        for (bi, c) in b {
            for (o, v) in self.mu_eval(xs, *bi, ys) {
                add_into(&self.field, &mut out, o, self.field.mul(&v, c));
            }
        }
        out
    }

    /// Degree homogeneity and weight additivity of every stored entry.
    pub fn check_homogeneous(&self) -> Result<(), KitError> {
        for (k, l, xs, b, ys, out) in self.entries() {
            let expect: i64 = xs.iter().map(|x| self.left.deg(*x)).sum::<i64>()
                + ys.iter().map(|y| self.right.deg(*y)).sum::<i64>()
                + self.deg(b)
                + 1
                - k as i64
                - l as i64;
            for (o, _) in out {
                let defect = self.deg(*o) - expect;
                let bad = match self.left.grading {
                    GradingMode::Z => defect != 0,
                    GradingMode::Z2 => defect.rem_euclid(2) != 0,
                };
                if bad {
                    return Err(KitError::Inhomogeneous(format!(
                        "bimodule mu^({k},{l}) at `{}`",
                        self.elem(b).id
                    )));
                }
                let in_w: Option<i64> = xs
                    .iter()
                    .map(|x| self.left.weight(*x))
                    .chain(ys.iter().map(|y| self.right.weight(*y)))
                    .chain(std::iter::once(self.elem(b).weight))
                    .sum();
                if let (Some(iw), Some(ow)) = (in_w, self.elem(*o).weight) {
                    if iw != ow {
                        return Err(KitError::WeightViolation(format!(
                            "bimodule mu^({k},{l}) at `{}`",
                            self.elem(b).id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Check the bimodule relations on every composable `(xs, b, ys)` with
    /// `k <= kmax`, `l <= lmax`. Instances touching capped elements are
    /// skipped and counted.
    pub fn validate(&self, kmax: usize, lmax: usize) -> Result<BimoduleReport, KitError> {
        self.check_homogeneous()?;
        let mut report = BimoduleReport {
            instances_checked: 0,
            instances_capped: 0,
            violations: Vec::new(),
        };
        for b in 0..self.elems.len() as u32 {
            let be = self.elem(b);
            for k in 0..=kmax {
                let xss = self.left.strings_from(be.left_obj, k);
                for xs in &xss {
                    for l in 0..=lmax {
                        let yss = self.right.strings_into(be.right_obj, l);
                        for ys in &yss {
                            if self.capped.contains(&b) {
                                report.instances_capped += 1;
                                continue;
                            }
                            report.instances_checked += 1;
                            let defect = self.relation_defect(xs, b, ys);
                            if !defect.is_empty() {
                                report.violations.push(BimoduleViolation {
                                    k,
                                    l,
                                    xs: xs.iter().map(|x| self.left.elem(*x).id.clone()).collect(),
                                    b: be.id.clone(),
                                    ys: ys.iter().map(|y| self.right.elem(*y).id.clone()).collect(),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// The signed sum of all three relation families at one instance.
    pub fn relation_defect(&self, xs: &[u32], b: u32, ys: &[u32]) -> Combo {
        let field = &self.field;
        let k = xs.len();
        let l = ys.len();
        let mut defect = Combo::new();
        // (R3) mu_P o mu_P
        for k1 in 0..=k {
            for l1 in 0..=l {
                let inner = self.mu_eval(&xs[..k1], b, &ys[..l1]);
                if inner.is_empty() {
                    continue;
                }
                let sign = field.sign(self.right.star(&ys[l1..]));
                let term = self.mu_eval_combo(&xs[k1..], &inner, &ys[l1..]);
                for (o, c) in term {
                    add_into(field, &mut defect, o, field.mul(&c, &sign));
                }
            }
        }
        // (R2) mu_C insertions into xs
        let ystar = self.right.star(ys);
        for i in 0..k {
            for j in 1..=k - i {
                let inner = self.left.mu_eval(&xs[i..i + j]);
                if inner.is_empty() {
                    continue;
                }
                let e = self.left.star(&xs[..i]) + self.deg(b) + ystar;
                let sign = field.sign(e);
                for (m, c) in &inner {
                    let mut args: Vec<u32> = xs[..i].to_vec();
                    args.push(*m);
                    args.extend_from_slice(&xs[i + j..]);
                    let term = self.mu_eval(&args, b, ys);
                    for (o, v) in term {
                        let cv = field.mul(&field.mul(&v, c), &sign);
                        add_into(field, &mut defect, o, cv);
                    }
                }
            }
        }
        // (R1) mu_D insertions into ys (block consumed first-applied-first reversed)
        for i in 0..l {
            for j in 1..=l - i {
                let block: Vec<u32> = ys[i..i + j].iter().rev().copied().collect();
                let inner = self.right.mu_eval(&block);
                if inner.is_empty() {
                    continue;
                }
                let sign = field.sign(self.right.star(&ys[i + j..]));
                for (m, c) in &inner {
                    let mut args: Vec<u32> = ys[..i].to_vec();
                    args.push(*m);
                    args.extend_from_slice(&ys[i + j..]);
                    let term = self.mu_eval(xs, b, &args);
                    for (o, v) in term {
                        let cv = field.mul(&field.mul(&v, c), &sign);
                        add_into(field, &mut defect, o, cv);
                    }
                }
            }
        }
        defect
    }
}

impl AInfCategory {
    /// Composable strings `[x_1..x_k]` with `src(x_1) = obj` (adjacent-first,
    /// walking away from the bimodule slot on the left side).
    pub fn strings_from(&self, obj: u32, len: usize) -> Vec<Vec<u32>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut cur: Vec<Vec<u32>> = (0..self.elems.len() as u32)
            .filter(|i| self.elem(*i).src == obj)
            .map(|i| vec![i])
            .collect();
        for _ in 1..len {
            let mut nxt = Vec::new();
            for s in &cur {
                let end = self.elem(*s.last().unwrap()).dst;
                for i in 0..self.elems.len() as u32 {
                    if self.elem(i).src == end {
                        let mut t = s.clone();
                        t.push(i);
                        nxt.push(t);
                    }
                }
            }
            cur = nxt;
        }
        cur
    }

    /// Composable strings `[y_1..y_l]` with `dst(y_1) = obj` and
    /// `dst(y_{j+1}) = src(y_j)` (adjacent-first on the right side).
    pub fn strings_into(&self, obj: u32, len: usize) -> Vec<Vec<u32>> {
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut cur: Vec<Vec<u32>> = (0..self.elems.len() as u32)
            .filter(|i| self.elem(*i).dst == obj)
            .map(|i| vec![i])
            .collect();
        for _ in 1..len {
            let mut nxt = Vec::new();
            for s in &cur {
                let need = self.elem(*s.last().unwrap()).src;
                for i in 0..self.elems.len() as u32 {
                    if self.elem(i).dst == need {
                        let mut t = s.clone();
                        t.push(i);
                        nxt.push(t);
                    }
                }
            }
            cur = nxt;
        }
        cur
    }
}

/// The one-object category with zero hom spaces; the trivial side of a
/// one-sided module viewed as a bimodule.
pub fn unit_category(field: Field, grading: GradingMode) -> Arc<AInfCategory> {
    let mut c = AInfCategory::new(field, grading);
    c.add_object("1");
    Arc::new(c)
}

/// Diagonal bimodule `C_D(A, B) = C(B, A)` with
/// `mu^{k,l}(xs|c|ys) = (-1)^{sum ||y|| + 1} mu_C^{k+1+l}` on the chain
/// `[y_l .. y_1, c, x_1 .. x_k]` (first-applied-first).
pub fn diagonal_bimodule(c: &Arc<AInfCategory>) -> Bimodule {
    let mut p = Bimodule::new(c.clone(), c.clone());
    for (i, e) in c.elems.iter().enumerate() {
        p.add_elem(format!("d:{}", e.id), e.dst, e.src, e.degree, e.weight)
            .expect("unique ids");
        let _ = i;
    }
    for (arity, table) in &c.mu {
        let d = *arity;
        for (args, out) in table {
            for l in 0..d {
                // args = [y_l, ..., y_1, c, x_1, ..., x_k]
                let ys: Vec<u32> = args[..l].iter().rev().copied().collect();
                let mid = args[l];
                let xs: Vec<u32> = args[l + 1..].to_vec();
                let sign = c.field.sign(c.star(&args[..l]) + 1);
                for (o, v) in out {
                    let coeff = c.field.mul(v, &sign);
                    p.add_mu_entry(xs.clone(), mid, ys.clone(), *o, coeff);
                }
            }
        }
    }
    for (i, e) in c.elems.iter().enumerate() {
        if c.hom_truncated(e.src, e.dst) {
            p.capped.insert(i as u32);
        }
    }
    p
}

/// Linear-dual diagonal bimodule: carrier `C^v(A, B) = C(A, B)^dual`
/// (elementwise dual basis, opposite grading), with
/// `mu^{k,l}(xs | z^v | ys)(w) = (-1)^{sum ||y|| + |z^v| + 1}
///   <z^v, mu_C^{k+l+1}([x_1..x_k, w, y_l..y_1])>`.
pub fn dual_diagonal_bimodule(c: &Arc<AInfCategory>) -> Bimodule {
    let mut p = Bimodule::new(c.clone(), c.clone());
    for e in c.elems.iter() {
        p.add_elem(
            format!("v:{}", e.id),
            e.src,
            e.dst,
            -e.degree,
            e.weight.map(|w| -w),
        )
        .expect("unique ids");
    }
    for (arity, table) in &c.mu {
        let d = *arity;
        for (args, out) in table {
            for k in 0..d {
                // args = [x_1..x_k, w, y_l..y_1]
                let xs: Vec<u32> = args[..k].to_vec();
                let w = args[k];
                let ys: Vec<u32> = args[k + 1..].iter().rev().copied().collect();
                let ystar = c.star(&args[k + 1..]);
                for (z, v) in out {
                    // input dual element z^v has degree -deg(z)
                    let sign = c.field.sign(ystar + c.deg(*z) + 1);
                    let coeff = c.field.mul(v, &sign);
                    p.add_mu_entry(xs.clone(), *z, ys.clone(), w, coeff);
                }
            }
        }
    }
    for (i, e) in c.elems.iter().enumerate() {
        if c.hom_truncated(e.src, e.dst) {
            p.capped.insert(i as u32);
        }
    }
    p
}

/// Right Yoneda module `Y^r_K = C(-, K)` as a `(unit, C)`-bimodule;
/// `mu^{0,l}(m | ys) = (-1)^{sum ||y|| + 1} mu_C^{l+1}([y_l..y_1, m])`.
pub fn yoneda_right(c: &Arc<AInfCategory>, k_obj: u32) -> Bimodule {
    let unit = unit_category(c.field, c.grading);
    let mut p = Bimodule::new(unit, c.clone());
    let mut idx_of: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, e) in c.elems.iter().enumerate() {
        if e.dst == k_obj {
            let bi = p
                .add_elem(format!("yr:{}", e.id), 0, e.src, e.degree, e.weight)
                .expect("unique ids");
            idx_of.insert(i as u32, bi);
        }
    }
    for (arity, table) in &c.mu {
        let d = *arity;
        for (args, out) in table {
            let m = args[d - 1];
            let Some(&mb) = idx_of.get(&m) else { continue };
            let ys: Vec<u32> = args[..d - 1].iter().rev().copied().collect();
            let sign = c.field.sign(c.star(&args[..d - 1]) + 1);
            for (o, v) in out {
                if let Some(&ob) = idx_of.get(o) {
                    p.add_mu_entry(Vec::new(), mb, ys.clone(), ob, c.field.mul(v, &sign));
                }
            }
        }
    }
    p
}

/// Left Yoneda module `Y^l_K = C(K, -)` as a `(C, unit)`-bimodule;
/// `mu^{k,0}(xs | m) = -mu_C^{k+1}([m, x_1..x_k])`.
pub fn yoneda_left(c: &Arc<AInfCategory>, k_obj: u32) -> Bimodule {
    let unit = unit_category(c.field, c.grading);
    let mut p = Bimodule::new(c.clone(), unit);
    let mut idx_of: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, e) in c.elems.iter().enumerate() {
        if e.src == k_obj {
            let bi = p
                .add_elem(format!("yl:{}", e.id), e.dst, 0, e.degree, e.weight)
                .expect("unique ids");
            idx_of.insert(i as u32, bi);
        }
    }
    for table in c.mu.values() {
        for (args, out) in table {
            let m = args[0];
            let Some(&mb) = idx_of.get(&m) else { continue };
            let xs: Vec<u32> = args[1..].to_vec();
            let sign = c.field.sign(1);
            for (o, v) in out {
                if let Some(&ob) = idx_of.get(o) {
                    p.add_mu_entry(xs.clone(), mb, Vec::new(), ob, c.field.mul(v, &sign));
                }
            }
        }
    }
    p
}

/// The finite-rank tensor bimodule `E(K,-)^dual (x) E(L,-)` over a category
/// `E` (for the punctured-neighborhood complexes `E` is an opposite
/// category, making the carriers `C(B,K)^dual (x) C(A,L)`).
///
/// Basis: matrix units `z^v (x) w` for `z in E(K,B)`, `w in E(L,A)`;
/// `mu^{k,0}(xs | z^v(x)w) = (-1)^{|z|+1} z^v (x) mu_E^{k+1}([w, xs])`,
/// `mu^{0,l}(z^v(x)w | ys) = (-1)^{sum||y||+|z|+1}
///     sum_{z'} <z^v, mu_E^{l+1}([z', y_l..y_1])> z'^v (x) w`,
/// zero when both `k, l > 0`.
pub fn tensor_bimodule(e: &Arc<AInfCategory>, k_obj: u32, l_obj: u32) -> Bimodule {
    build_unit_bimodule(e, k_obj, l_obj, "t")
}

/// The hom bimodule `hom_k(E(K,-), E(L,-))`. Inside a finite window its
/// matrix-unit basis and structure maps coincide with the finite-rank tensor
/// bimodule; the two differ only at true infinity (product vs sum), which the
/// window bookkeeping tracks. `ev` is the identity on matrix units.
pub fn hom_bimodule(e: &Arc<AInfCategory>, k_obj: u32, l_obj: u32) -> Bimodule {
    build_unit_bimodule(e, k_obj, l_obj, "h")
}

fn build_unit_bimodule(
    e: &Arc<AInfCategory>,
    k_obj: u32,
    l_obj: u32,
    prefix: &str,
) -> Bimodule {
    let mut p = Bimodule::new(e.clone(), e.clone());
    // unit (z, w): z in E(K, B), w in E(L, A); index map (z, w) -> elem
    let zs: Vec<u32> = (0..e.elems.len() as u32)
        .filter(|i| e.elem(*i).src == k_obj)
        .collect();
    let ws: Vec<u32> = (0..e.elems.len() as u32)
        .filter(|i| e.elem(*i).src == l_obj)
        .collect();
    let mut unit_idx: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for &z in &zs {
        for &w in &ws {
            let ze = e.elem(z);
            let we = e.elem(w);
            let weight = match (ze.weight, we.weight) {
                (Some(a), Some(b)) => Some(b - a),
                (None, None) => None,
                // mixed weighted/unweighted carriers: treat as unweighted
                _ => None,
            };
            let bi = p
                .add_elem(
                    format!("{prefix}:{}|{}", ze.id, we.id),
                    we.dst,
                    ze.dst,
                    we.degree - ze.degree,
                    weight,
                )
                .expect("unique ids");
            unit_idx.insert((z, w), bi);
        }
    }
    for table in e.mu.values() {
        for (args, out) in table {
            // left family: args = [w, x_1..x_k], w in E(L,-)
            let w = args[0];
            if e.elem(w).src == l_obj {
                let xs: Vec<u32> = args[1..].to_vec();
                for &z in &zs {
                    let b = unit_idx[&(z, w)];
                    let sign = e.field.sign(e.deg(z) + 1);
                    for (w2, v) in out {
                        if let Some(&o) = unit_idx.get(&(z, *w2)) {
                            p.add_mu_entry(
                                xs.clone(),
                                b,
                                Vec::new(),
                                o,
                                e.field.mul(v, &sign),
                            );
                        }
                    }
                }
            }
            // right family: args = [z', y_l..y_1], z' in E(K,-)
            let zp = args[0];
            if e.elem(zp).src == k_obj {
                let ys: Vec<u32> = args[1..].iter().rev().copied().collect();
                let ystar = e.star(&args[1..]);
                for (z, v) in out {
                    if e.elem(*z).src != k_obj {
                        continue;
                    }
                    for &w in &ws {
                        let Some(&b) = unit_idx.get(&(*z, w)) else { continue };
                        let Some(&o) = unit_idx.get(&(zp, w)) else { continue };
                        let sign = e.field.sign(ystar + e.deg(*z) + 1);
                        p.add_mu_entry(
                            Vec::new(),
                            b,
                            ys.clone(),
                            o,
                            e.field.mul(v, &sign),
                        );
                    }
                }
            }
        }
    }
    for (&(z, w), &bi) in &unit_idx {
        let ze = e.elem(z);
        let we = e.elem(w);
        if e.hom_truncated(ze.src, ze.dst) || e.hom_truncated(we.src, we.dst) {
            p.capped.insert(bi);
        }
    }
    p
}

/// The evaluation map `tensor -> hom` on matrix units. With the windowed
/// materialization both sides share the unit basis, so `ev` is the identity
/// on ids; it is a strict bimodule map, bijective in every bidegree exactly
/// when both carriers are finite there.
pub fn ev_indices(tensor: &Bimodule, hom: &Bimodule) -> Result<Vec<(u32, u32)>, KitError> {
    let mut out = Vec::new();
    for (i, e) in tensor.elems.iter().enumerate() {
        let hid = format!("h:{}", e.id.strip_prefix("t:").unwrap_or(&e.id));
        let j = hom.elem_index(&hid)?;
        out.push((i as u32, j));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn diagonal_of_dual_numbers_validates() {
        let c = Arc::new(fixtures::dual_numbers());
        let p = diagonal_bimodule(&c);
        let r = p.validate(2, 2).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn zoo_validates_over_q_with_odd_generators() {
        for cx in fixtures::sign_suite_complexes() {
            let c = Arc::new(fixtures::end_category(&cx));
            assert!(c.validate_ainf(3).unwrap().passed());
            let zoo = [
                diagonal_bimodule(&c),
                dual_diagonal_bimodule(&c),
                tensor_bimodule(&c, 0, 0),
                hom_bimodule(&c, 0, 0),
            ];
            for p in &zoo {
                let r = p.validate(2, 2).unwrap();
                assert!(r.passed(), "violation: {:?}", r.violations.first());
            }
        }
    }

    #[test]
    fn yoneda_modules_validate() {
        let c = Arc::new(fixtures::a2_quiver());
        for k in 0..2 {
            let r = yoneda_right(&c, k).validate(0, 3).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            let l = yoneda_left(&c, k).validate(3, 0).unwrap();
            assert!(l.passed(), "{:?}", l.violations);
        }
    }

    #[test]
    fn yoneda_right_of_point_is_one_dimensional() {
        let c = Arc::new(fixtures::f2_point());
        let y = yoneda_right(&c, 0);
        assert_eq!(y.elems.len(), 1);
    }

    #[test]
    fn dual_diagonal_flips_grading() {
        let cx = fixtures::sign_suite_complexes().remove(0);
        let c = Arc::new(fixtures::end_category(&cx));
        let p = dual_diagonal_bimodule(&c);
        for (i, e) in c.elems.iter().enumerate() {
            let d = p.elem_index(&format!("v:{}", e.id)).unwrap();
            assert_eq!(p.deg(d), -e.degree);
            let _ = i;
        }
    }

    #[test]
    fn ev_is_identity_on_units_and_bijective() {
        let c = Arc::new(fixtures::dual_numbers());
        let t = tensor_bimodule(&c, 0, 0);
        let h = hom_bimodule(&c, 0, 0);
        let ev = ev_indices(&t, &h).unwrap();
        assert_eq!(ev.len(), t.elems.len());
        assert_eq!(t.elems.len(), h.elems.len());
        // strict bimodule map: tables agree entrywise under the identification
        let te: Vec<_> = t.entries().map(|(k, l, xs, b, ys, c)| (k, l, xs.to_vec(), b, ys.to_vec(), c.clone())).collect();
        let he: Vec<_> = h.entries().map(|(k, l, xs, b, ys, c)| (k, l, xs.to_vec(), b, ys.to_vec(), c.clone())).collect();
        assert_eq!(te, he);
    }
}
