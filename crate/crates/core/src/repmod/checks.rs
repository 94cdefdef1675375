//! Exact checks of the defining relations and the standard commutation
//! formulas on a realized module. Each check returns the list of failures.

use super::{enumerate_b, Gen, GenMatrix, ModuleRealization, Weight};
use crate::exactalg::LaurentPoly;
use crate::qcomb::{qbinom, qint};

fn diag(m: &ModuleRealization, f: impl Fn(Weight) -> LaurentPoly) -> GenMatrix {
    GenMatrix::identity(m.dim()).scale_rows(|i| f(m.weights[i]))
}

/// `e_i f_j - f_j e_i = delta_ij [<alpha_i, wt>]`
pub fn commutators(m: &ModuleRealization) -> Vec<String> {
    let mut fails = Vec::new();
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            let e = m.gen_matrix(Gen::e(i));
            let f = m.gen_matrix(Gen::f(j));
            let lhs = e.compose(f).sub(&f.compose(e));
            let rhs = if i == j {
                diag(m, |w| qint(w.pairing(i)))
            } else {
                GenMatrix::zero(m.dim())
            };
            if lhs != rhs {
                fails.push(format!("[e{i}, f{j}] relation fails"));
            }
        }
    }
    fails
}

/// `sum_{r+s=2} (-1)^r x_i^(r) x_j x_i^(s) = 0` for `x = e, f` and `i != j`.
pub fn serre(m: &ModuleRealization) -> Vec<String> {
    let mut fails = Vec::new();
    for raising in [true, false] {
        for (i, j) in [(1u8, 2u8), (2, 1)] {
            let gi = if raising { Gen::e(i) } else { Gen::f(i) };
            let gj = if raising { Gen::e(j) } else { Gen::f(j) };
            let xj = m.gen_matrix(gj);
            let xi = m.gen_matrix(gi);
            let two = m.divided_power(gi, 2);
            let total = xj
                .compose(&two)
                .sub(&xi.compose(xj).compose(xi))
                .add(&two.compose(xj));
            if !total.is_zero() {
                fails.push(format!("Serre relation fails for {gi}, {gj}"));
            }
        }
    }
    fails
}

/// `e_i^(a) f_i^(b) = sum_t f_i^(b-t) [k_i; 2t-a-b, t] e_i^(a-t)` and
/// `e_i^(a) f_j^(b) = f_j^(b) e_i^(a)` for `i != j`, all `a, b <= max`.
pub fn divided_commutation(m: &ModuleRealization, max: i64) -> Vec<String> {
    let mut fails = Vec::new();
    for i in [1u8, 2] {
        for a in 0..=max {
            for b in 0..=max {
                let lhs = m
                    .divided_power(Gen::e(i), a)
                    .compose(&m.divided_power(Gen::f(i), b));
                let mut rhs = GenMatrix::zero(m.dim());
                for t in 0..=a.min(b) {
                    let ea = m.divided_power(Gen::e(i), a - t);
                    let k = diag(m, |w| qbinom(w.pairing(i) + 2 * t - a - b, t));
                    rhs = rhs.add(&m.divided_power(Gen::f(i), b - t).compose(&k.compose(&ea)));
                }
                if lhs != rhs {
                    fails.push(format!("e{i}^({a}) f{i}^({b}) expansion fails"));
                }
                let j = 3 - i;
                let ef = m
                    .divided_power(Gen::e(i), a)
                    .compose(&m.divided_power(Gen::f(j), b));
                let fe = m
                    .divided_power(Gen::f(j), b)
                    .compose(&m.divided_power(Gen::e(i), a));
                if ef != fe {
                    fails.push(format!("e{i}^({a}) and f{j}^({b}) do not commute"));
                }
            }
        }
    }
    fails
}

/// `[k_i; c, a] x_j^(b) = x_j^(b) [k_i; c +- b a_ij, a]` for `x = e` (+) and `x = f` (-).
pub fn cartan_commutation(m: &ModuleRealization, max: i64) -> Vec<String> {
    let cartan = |i: u8, j: u8| if i == j { 2 } else { -1 };
    let mut fails = Vec::new();
    for i in [1u8, 2] {
        for j in [1u8, 2] {
            for g in [Gen::e(j), Gen::f(j)] {
                let sign = if g.is_e() { 1 } else { -1 };
                for a in 0..=max {
                    for b in 0..=max {
                        for c in -max..=max {
                            let x = m.divided_power(g, b);
                            let lhs = diag(m, |w| qbinom(w.pairing(i) + c, a)).compose(&x);
                            let shifted = c + sign * b * cartan(i, j);
                            let rhs = x.compose(&diag(m, |w| qbinom(w.pairing(i) + shifted, a)));
                            if lhs != rhs {
                                fails.push(format!("[k{i}; {c}, {a}] {g}^({b}) commutation fails"));
                            }
                        }
                    }
                }
            }
        }
    }
    fails
}

/// Every structure constant moves weights exactly by the generator's root.
pub fn weight_grading(m: &ModuleRealization) -> Vec<String> {
    let mut fails = Vec::new();
    for g in Gen::ALL {
        for n in 1..=m.max_divided(g) {
            let d = m.divided_power(g, n);
            for j in 0..m.dim() {
                for (i, _) in d.column(j) {
                    if m.weights[*i] != m.weights[j].after(g, n) {
                        fails.push(format!("{g}^({n}) maps {} outside its weight", m.basis[j]));
                    }
                }
            }
        }
    }
    fails
}

/// Canonical monomials outside the basis set kill the cyclic vector. Tested on
/// all labels of the basis sets of weights up to `margin` larger.
pub fn vanishing_outside_basis(m: &ModuleRealization, margin: i64) -> Vec<String> {
    let (p, q) = m.params;
    let own = Weight::new(p, q);
    let raising = m.kind == super::Extremal::Lowest;
    let cyclic = m.unit_vector(0);
    let mut fails = Vec::new();
    for dp in 0..=margin {
        for dq in 0..=margin {
            for label in enumerate_b(Weight::new(p + dp, q + dq)).expect("dominant") {
                if label.in_b(own) {
                    continue;
                }
                let y = m.apply_word(&label.word(raising), &cyclic);
                if y.iter().any(|c| !c.is_zero()) {
                    fails.push(format!("{label} does not vanish on V{own}"));
                }
            }
        }
    }
    fails
}

/// All checks at once.
pub fn all(m: &ModuleRealization, max_exp: i64) -> Vec<String> {
    let mut fails = commutators(m);
    fails.extend(serre(m));
    fails.extend(divided_commutation(m, max_exp));
    fails.extend(cartan_commutation(m, max_exp));
    fails.extend(weight_grading(m));
    fails.extend(vanishing_outside_basis(m, 1));
    fails
}
