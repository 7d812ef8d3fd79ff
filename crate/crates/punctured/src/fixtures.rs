//! Canned categories for tests, the CLI demo inputs, and the randomized
//! sign suites: endomorphism dg categories of small complexes over Q (the
//! odd-degree sign probes), and the standard small F2 examples.

use std::sync::Arc;

use crate::category::{AInfCategory, GradingMode};
use crate::field::Field;

/// A small complex: `degrees[i]` is the degree of basis vector `e_i`;
/// `differential` lists `(i, j, c)` meaning `d(e_i) += c * e_j`
/// (so `degrees[j] = degrees[i] + 1`), with `d * d = 0`.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    pub degrees: Vec<i64>,
    pub differential: Vec<(usize, usize, i64)>,
}

/// The endomorphism dg category of a complex over Q, one object `*`.
/// Basis `f{a}_{b} : e_a -> e_b` of degree `deg(b) - deg(a)`;
/// `mu^1(f) = d f - (-1)^{|f|} f d`, `mu^2(g, f) = (-1)^{|f|(|g|+1)} g f`.
pub fn end_category(spec: &ComplexSpec) -> AInfCategory {
    end_category_over(Field::QQ, spec)
}

pub fn end_category_over(field: Field, spec: &ComplexSpec) -> AInfCategory {
    let n = spec.degrees.len();
    let mut c = AInfCategory::new(field, GradingMode::Z);
    let pt = c.add_object("*");
    let mut ix = vec![vec![0u32; n]; n];
    for a in 0..n {
        for b in 0..n {
            ix[a][b] = c
                .add_elem(
                    &format!("f{a}_{b}"),
                    pt,
                    pt,
                    spec.degrees[b] - spec.degrees[a],
                    None,
                )
                .unwrap();
        }
    }
    // mu1
    for a in 0..n {
        for b in 0..n {
            let fdeg = spec.degrees[b] - spec.degrees[a];
            // d o f : for d(e_b) += c e_t: f_{a,b} -> c f_{a,t}
            for (i, j, v) in &spec.differential {
                if *i == b {
                    c.add_mu_entry(vec![ix[a][b]], ix[a][*j], field.from_i64(*v));
                }
                // f o d : for d(e_x) += c e_a: contribute -(-1)^{|f|} c f_{x,b}
                if *j == a {
                    let s = field.sign(fdeg + 1);
                    let coeff = field.mul(&field.from_i64(*v), &s);
                    c.add_mu_entry(vec![ix[a][b]], ix[*i][b], coeff);
                }
            }
        }
    }
    // mu2: key [f, g] first-applied-first, f: a->b, g: b->d2
    for a in 0..n {
        for b in 0..n {
            for d2 in 0..n {
                let fdeg = spec.degrees[b] - spec.degrees[a];
                let gdeg = spec.degrees[d2] - spec.degrees[b];
                let s = field.sign(fdeg * (gdeg + 1));
                c.add_mu_entry(vec![ix[a][b], ix[b][d2]], ix[a][d2], s);
            }
        }
    }
    c
}

/// Deterministic complexes with odd-degree generators and nonzero
/// differentials, mixed enough to kill every wrong sign.
pub fn sign_suite_complexes() -> Vec<ComplexSpec> {
    vec![
        ComplexSpec { degrees: vec![0, 1, 1], differential: vec![(0, 1, 1)] },
        ComplexSpec { degrees: vec![-1, 0, 2], differential: vec![(0, 1, 1)] },
        ComplexSpec { degrees: vec![1, 2, 0], differential: vec![(0, 1, -1)] },
        ComplexSpec { degrees: vec![0, 3], differential: vec![] },
    ]
}

/// A pseudo-random complex from a xorshift state: guaranteed `d^2 = 0`
/// by pairing off basis vectors in adjacent degrees.
pub fn random_complex_spec(state: &mut u64, n: usize) -> ComplexSpec {
    let rnd = move |s: &mut u64| {
        *s ^= *s << 13;
        *s ^= *s >> 7;
        *s ^= *s << 17;
        *s
    };
    let pool = [-1i64, 0, 1, 2];
    let degrees: Vec<i64> =
        (0..n).map(|_| pool[(rnd(state) % 4) as usize]).collect();
    let mut used = vec![false; n];
    let mut differential = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        if rnd(state) % 4 == 0 {
            continue;
        }
        let cands: Vec<usize> = (0..n)
            .filter(|j| !used[*j] && *j != i && degrees[*j] == degrees[i] + 1)
            .collect();
        if !cands.is_empty() {
            let j = cands[(rnd(state) % cands.len() as u64) as usize];
            used[i] = true;
            used[j] = true;
            let coeffs = [1i64, -1, 2];
            differential.push((i, j, coeffs[(rnd(state) % 3) as usize]));
        }
    }
    ComplexSpec { degrees, differential }
}

/// The one-object F2 category with hom space F2<e>, strictly unital.
pub fn f2_point() -> AInfCategory {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let pt = c.add_object("pt");
    let e = c.add_elem("e", pt, pt, 0, None).unwrap();
    c.add_mu_entry(vec![e, e], e, c.field.one());
    c.identities.insert(pt, e);
    c
}

/// F2[x]/x^2 in degree 0, strictly unital.
pub fn dual_numbers() -> AInfCategory {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let pt = c.add_object("pt");
    let e = c.add_elem("e", pt, pt, 0, None).unwrap();
    let x = c.add_elem("x", pt, pt, 0, None).unwrap();
    let one = c.field.one();
    c.add_mu_entry(vec![e, e], e, one.clone());
    c.add_mu_entry(vec![e, x], x, one.clone());
    c.add_mu_entry(vec![x, e], x, one);
    c.identities.insert(pt, e);
    c
}

/// The A2 quiver path category: objects 1, 2; one arrow `a: 1 -> 2`;
/// all hom spaces one-dimensional; strictly unital, proper.
pub fn a2_quiver() -> AInfCategory {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let o1 = c.add_object("1");
    let o2 = c.add_object("2");
    let e1 = c.add_elem("e1", o1, o1, 0, None).unwrap();
    let e2 = c.add_elem("e2", o2, o2, 0, None).unwrap();
    let a = c.add_elem("a", o1, o2, 0, None).unwrap();
    let one = c.field.one();
    c.add_mu_entry(vec![e1, e1], e1, one.clone());
    c.add_mu_entry(vec![e2, e2], e2, one.clone());
    c.add_mu_entry(vec![e1, a], a, one.clone());
    c.add_mu_entry(vec![a, e2], a, one);
    c.identities.insert(o1, e1);
    c.identities.insert(o2, e2);
    c
}

/// A two-object mixed category: `k` proper (all homs into it finite and
/// unweighted), `b` carrying a weight-windowed truncation of F2[t].
/// Homs: C(k,k) = <e_k>, C(b,b) = <t^0..t^W>, C(k,b) = <m_0..m_W>,
/// C(b,k) = 0; products by weight addition, capped at the window.
pub fn two_object_mixed(w: i64) -> AInfCategory {
    let mut c = AInfCategory::new(Field::GF2, GradingMode::Z);
    let ok = c.add_object("k");
    let ob = c.add_object("b");
    let ek = c.add_elem("ek", ok, ok, 0, Some(0)).unwrap();
    let one = c.field.one();
    c.add_mu_entry(vec![ek, ek], ek, one.clone());
    let ts: Vec<u32> = (0..=w)
        .map(|i| c.add_elem(&format!("t{i}"), ob, ob, 0, Some(i)).unwrap())
        .collect();
    let ms: Vec<u32> = (0..=w)
        .map(|i| c.add_elem(&format!("m{i}"), ok, ob, 0, Some(i)).unwrap())
        .collect();
    for i in 0..=w {
        for j in 0..=w {
            if i + j <= w {
                c.add_mu_entry(
                    vec![ts[i as usize], ts[j as usize]],
                    ts[(i + j) as usize],
                    one.clone(),
                );
                c.add_mu_entry(
                    vec![ms[i as usize], ts[j as usize]],
                    ms[(i + j) as usize],
                    one.clone(),
                );
            }
        }
        c.add_mu_entry(vec![ek, ms[i as usize]], ms[i as usize], one.clone());
    }
    c.identities.insert(ok, ek);
    c.identities.insert(ob, ts[0]);
    c.weight_window = Some((0, w));
    c.truncated_homs.insert((ob, ob));
    c.truncated_homs.insert((ok, ob));
    c
}

pub fn arc(c: AInfCategory) -> Arc<AInfCategory> {
    Arc::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn end_categories_satisfy_ainf() {
        for spec in sign_suite_complexes() {
            let c = end_category(&spec);
            let r = c.validate_ainf(3).unwrap();
            assert!(r.passed(), "{:?}", r.violations.first());
        }
    }

    #[test]
    fn random_end_categories_satisfy_ainf() {
        let mut state = 0xdeadbeefu64;
        for _ in 0..10 {
            let spec = random_complex_spec(&mut state, 3);
            let c = end_category(&spec);
            assert!(c.validate_ainf(3).unwrap().passed());
        }
    }

    #[test]
    fn standard_examples_validate() {
        assert!(f2_point().validate_ainf(4).unwrap().passed());
        assert!(dual_numbers().validate_ainf(4).unwrap().passed());
        assert!(a2_quiver().validate_ainf(4).unwrap().passed());
        let m = two_object_mixed(3);
        assert!(m.validate_ainf(3).unwrap().passed());
    }
}
