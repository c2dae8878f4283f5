//! Eulerian identities: permanents of `B(E_n; 1; y)` against permutation
//! enumeration, the multiset analogue, and the descent-top inequality.

use stableperm_core::combinatorics::{
    descent_top_poly_direct, eulerian_poly_direct, exceedance_poly_direct, exceedance_top_poly_direct,
    for_each_permutation, multiset_descent_poly_direct, rlmin_descent_poly_direct, top_counts,
};
use stableperm_core::permanent::{alpha_permanent, permanent_symbolic};
use stableperm_core::stability::real_rooted;
use stableperm_core::{rat, AlphaWeight, FerrersMatrix, Polynomial, UnivariatePolynomial, VariableId};

use super::{choose, diagonal_var, y_set, SuiteParams};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

/// `B(A; 1; y)`.
fn b_one_y(a: &FerrersMatrix, col: impl Fn(usize) -> VariableId) -> stableperm_core::SymbolicMatrix {
    a.build_b_with(|_| Polynomial::one(), |j| Polynomial::var(col(j)))
}

fn diagonal(p: &Polynomial, vars: usize) -> UnivariatePolynomial {
    p.diagonalize(&y_set(vars), diagonal_var()).to_univariate(diagonal_var()).expect("one variable")
}

pub fn eulerian_case(n: usize) -> CaseResult {
    let mut r = CaseResult::new(format!("n={n}"));
    let inputs = || format!("n={n}");
    let e = FerrersMatrix::eulerian(n).expect("n >= 1");
    let b = b_one_y(&e, |j| VariableId::y(j as u32 + 1));
    let p = permanent_symbolic(&b).expect("within caps");
    let eul = eulerian_poly_direct(n).expect("within caps");
    r.check_eq("descent-top polynomial", inputs, &descent_top_poly_direct(n).expect("within caps"), &p);
    r.check_eq("exceedance-top polynomial", inputs, &exceedance_top_poly_direct(n).expect("within caps"), &p);
    r.check_eq("exc and des equidistributed", inputs, &eul, &exceedance_poly_direct(n).expect("within caps"));
    let d = diagonal(&p, n);
    r.check_eq("diagonal is the Eulerian polynomial", inputs, &eul, &d);
    r.check("diagonal real-rooted", real_rooted(&d), inputs, "real-rooted", &d);
    // The cycle-to-linear map sends deficiencies to descents and cycles to
    // right-to-left minima.
    let mut transport = true;
    for_each_permutation(n, |s| {
        let l = s.riordan_linear_map();
        transport &= s.deficiencies() == l.des() && s.cycles().len() == l.rl_minima();
    })
    .expect("within caps");
    r.check("cycle-to-linear transport", transport, inputs, true, transport);
    let alpha = alpha_permanent(&b, &AlphaWeight::Symbolic(VariableId::alpha())).expect("within caps");
    r.check_eq(
        "alpha-permanent vs RLmin enumeration",
        inputs,
        &rlmin_descent_poly_direct(n).expect("within caps"),
        &alpha,
    );
    r
}

pub fn eulerian(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let max = params.n.unwrap_or(7);
    let mut report = SuiteReport::new("eulerian", Label::TheoremBacked).param("n", max);
    let ns: Vec<usize> = (1..=max).collect();
    report.absorb(runner.map(&ns, |&n| eulerian_case(n)));
    Ok(report)
}

/// All compositions of every total `1..=max`, in lexicographic order.
pub fn compositions(max: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=left {
            cur.push(part);
            rec(left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=max {
        rec(total, &mut Vec::new(), &mut out);
    }
    out
}

pub fn multiset_case(v: &[usize]) -> CaseResult {
    let mut r = CaseResult::new(format!("{v:?}"));
    let inputs = || format!("v={v:?}");
    let e = match FerrersMatrix::multiset_eulerian(v) {
        Ok(e) => e,
        Err(err) => {
            r.fail("composition", inputs(), err);
            return r;
        }
    };
    // Y(v): every column in block b carries y_b.
    let block: Vec<u32> = v.iter().enumerate().flat_map(|(b, &c)| std::iter::repeat_n(b as u32 + 1, c)).collect();
    let b = b_one_y(&e, |j| VariableId::y(block[j]));
    let weight = v.iter().fold(rat(1), |acc, &c| acc * stableperm_core::combinatorics::factorial(c));
    let p = permanent_symbolic(&b).expect("within caps").scale(&(rat(1) / weight));
    let want = multiset_descent_poly_direct(v).expect("within caps");
    r.check_eq("scaled permanent vs word enumeration", inputs, &want, &p);
    let d = diagonal(&p, v.len());
    r.check("diagonal real-rooted", real_rooted(&d), inputs, "real-rooted", &d);
    r
}

pub fn multiset_eulerian(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let mut report = SuiteReport::new("multiset-eulerian", Label::TheoremBacked);
    let cases = match &params.v {
        Some(v) => vec![v.clone()],
        None => {
            let max = params.n.unwrap_or(6);
            report = report.param("n", max);
            let all = compositions(max);
            report.universe(&format!("compositions with sum <= {max}"), all.len() as u64, (1u64 << max) - 1);
            all
        }
    };
    report.absorb(runner.map(&cases, |v| multiset_case(v)));
    Ok(report)
}

/// `Top(i) Top(j) >= m! Top(i, j)` for all `2 <= i < j <= m`, with the
/// counts cross-checked against derivatives of the descent-top polynomial.
pub fn top_case(m: usize) -> CaseResult {
    let mut r = CaseResult::new(format!("n={m}"));
    let t = top_counts(m).expect("within caps");
    let p = descent_top_poly_direct(m).expect("within caps");
    let ones = (1..=m as u32).map(|j| (VariableId::y(j), rat(1))).collect();
    let fact: u64 = (1..=m as u64).product();
    r.check_eq("total", || format!("n={m}"), &fact, &t.total);
    for i in 2..=m {
        let d = p.partial_derivative(VariableId::y(i as u32)).evaluate(&ones).expect("all bound");
        r.check_eq(&format!("Top({i}) = dP/dy{i}(1)"), || format!("n={m}"), &rat(t.top(i) as i64), &d);
        for j in i + 1..=m {
            let lhs = t.top(i) as u128 * t.top(j) as u128;
            let rhs = fact as u128 * t.top2(i, j) as u128;
            r.check(
                &format!("Top({i})Top({j}) >= n! Top({i},{j})"),
                lhs >= rhs,
                || format!("n={m} i={i} j={j}"),
                format!(">= {rhs}"),
                lhs,
            );
        }
    }
    r
}

pub fn top_inequality(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let max = params.n.unwrap_or(7);
    let mut report = SuiteReport::new("top-inequality", Label::TheoremBacked).param("n", max);
    let ns: Vec<usize> = (2..=max).collect();
    let pairs: u64 = ns.iter().map(|&m| choose(m as u64 - 1, 2)).sum();
    report.universe(
        &format!("pairs 2 <= i < j <= n, n <= {max}"),
        ns.iter().map(|&m| ((m - 1) * (m - 2) / 2) as u64).sum(),
        pairs,
    );
    report.absorb(runner.map(&ns, |&m| top_case(m)));
    Ok(report)
}
