use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{
    branch_multiplicity, local_equation, normalize_parameter, Chart, ProjPoint, PuiseuxBranch,
};
use crate::algebra::{compose_unchecked, Poly, Rat, TruncSeries, UniPoly};
use crate::error::{Error, Result};

const PARAM: &str = "t";
const MAX_DEPTH: u32 = 64;

/// A branch of a local germ at the origin, as centered series `(u(t), v(t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBranch {
    pub u: TruncSeries,
    pub v: TruncSeries,
}

/// Current substitution `u = xi T^big_p`, `v = prefix(T) + kappa T^k Y`
/// together with the transformed equation `g(T, Y)`.
struct Stage {
    g: Poly,
    xi: Rat,
    big_p: u32,
    prefix: BTreeMap<u32, Rat>,
    kappa: Rat,
    k: u32,
    depth: u32,
}

fn ty() -> [&'static str; 2] {
    ["T", "Y"]
}

fn monomial_series(c: &Rat, e: u32) -> TruncSeries {
    TruncSeries::monomial(PARAM, c.clone(), e)
}

/// Expands every branch of `f(u, v) = 0` through the origin. Components are
/// known at least modulo `t^n`; branches that are polynomial are marked
/// exact.
pub fn newton_puiseux_local(f: &Poly, n: u32, label: &str) -> Result<Vec<LocalBranch>> {
    assert_eq!(f.nvars(), 2);
    if !f.constant_term().is_zero() {
        return Ok(vec![]);
    }
    let mut out = vec![];
    let mut g = f.with_vars(&ty());
    if g.specialize(0, &Rat::zero()).is_zero() {
        out.push(LocalBranch {
            u: TruncSeries::zero(PARAM),
            v: monomial_series(&Rat::one(), 1),
        });
        g = g.divide_by_var_power(0, 1);
        if g.specialize(0, &Rat::zero()).is_zero() {
            return Err(Error::NotSquareFree);
        }
    }
    let stage = Stage {
        g,
        xi: Rat::one(),
        big_p: 1,
        prefix: BTreeMap::new(),
        kappa: Rat::one(),
        k: 0,
        depth: 0,
    };
    expand(stage, n.max(1), label, &mut out)?;
    for b in out.iter_mut() {
        reduce_ramification(b);
        let mut comps = [b.u.clone(), b.v.clone()];
        normalize_parameter(&mut comps);
        let [u, v] = comps;
        b.u = u;
        b.v = v;
    }
    let total: u32 = out
        .iter()
        .map(|b| branch_multiplicity(&[b.u.clone(), b.v.clone()]).unwrap_or(0))
        .sum();
    if Some(total) != f.order() {
        return Err(Error::InconsistentInput(format!(
            "branch multiplicities at {label} sum to {total}, expected {:?}",
            f.order()
        )));
    }
    Ok(out)
}

fn expand(mut st: Stage, n: u32, label: &str, out: &mut Vec<LocalBranch>) -> Result<()> {
    if st.depth > MAX_DEPTH {
        return Err(Error::TruncationInsufficient { order: n });
    }
    let zero = Rat::zero();
    loop {
        if !st.g.specialize(1, &zero).is_zero() {
            break;
        }
        // Y divides g: the branch Y = 0 is exactly the current prefix
        out.push(LocalBranch {
            u: monomial_series(&st.xi, st.big_p),
            v: TruncSeries::exact(PARAM, st.prefix.clone()),
        });
        st.g = st.g.divide_by_var_power(1, 1);
    }
    let at_t0 =
        st.g.specialize(0, &zero)
            .to_univariate(1)
            .expect("univariate");
    let Some(j0) = at_t0.coeffs().iter().position(|c| !c.is_zero()) else {
        return Err(Error::NotSquareFree);
    };
    match j0 {
        0 => Ok(()),
        1 => {
            out.push(lift(&st, n)?);
            Ok(())
        }
        _ => {
            for edge in lower_edges(&st.g, j0 as u32) {
                for next in edge_stages(&st, &edge, label)? {
                    expand(next, n, label, out)?;
                }
            }
            Ok(())
        }
    }
}

struct Edge {
    p: u32,
    q: u32,
    /// Terms on the edge as `(i, j, coefficient)`.
    terms: Vec<(u32, u32, Rat)>,
    j_end: u32,
}

/// Edges of the lower Newton polygon from `(0, j0)` down to the `Y = 0` axis.
fn lower_edges(g: &Poly, j0: u32) -> Vec<Edge> {
    let pts: Vec<(u32, u32, Rat)> = g
        .terms()
        .filter(|(e, _)| e[1] <= j0)
        .map(|(e, c)| (e[0], e[1], c.clone()))
        .collect();
    let mut edges = vec![];
    let (mut ic, mut jc) = (0u32, j0);
    while jc > 0 {
        // minimize the ratio (i - ic) / (jc - j); ties go to the smallest j
        let mut best: Option<(u32, u32)> = None;
        for &(i, j, _) in &pts {
            if j >= jc {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => {
                    let lhs = (i - ic) as u64 * (jc - bj) as u64;
                    let rhs = (bi - ic) as u64 * (jc - j) as u64;
                    lhs < rhs || (lhs == rhs && j < bj)
                }
            };
            if better {
                best = Some((i, j));
            }
        }
        let (ie, je) = best.expect("g(T, 0) is nonzero");
        let di = ie - ic;
        let dj = jc - je;
        let gg = di.gcd(&dj);
        let (p, q) = (dj / gg, di / gg);
        let level = p * ic + q * jc;
        let terms = pts
            .iter()
            .filter(|(i, j, _)| p * i + q * j == level && *j >= je && *j <= jc)
            .cloned()
            .collect();
        edges.push(Edge {
            p,
            q,
            terms,
            j_end: je,
        });
        ic = ie;
        jc = je;
    }
    edges
}

fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

fn edge_stages(st: &Stage, edge: &Edge, label: &str) -> Result<Vec<Stage>> {
    let Edge { p, q, terms, j_end } = edge;
    let (p, q) = (*p, *q);
    let deg = terms
        .iter()
        .map(|(_, j, _)| (j - j_end) / p)
        .max()
        .unwrap_or(0) as usize;
    let mut psi = vec![Rat::zero(); deg + 1];
    for (_, j, c) in terms {
        psi[((j - j_end) / p) as usize] += c;
    }
    let roots = UniPoly::new(psi).rational_roots();
    if !roots.complete() {
        return Err(Error::IrrationalCoefficients {
            point: label.to_string(),
        });
    }
    // p*b - q*a = 1
    let ext = (p as i64).extended_gcd(&(q as i64));
    let (b, a) = (ext.x, -ext.y);
    let level = terms.first().map(|(i, j, _)| p * i + q * j).unwrap_or(0);
    let mut stages = vec![];
    for (w, _) in roots.roots {
        debug_assert!(!w.is_zero());
        let lambda = rat_pow(&w, a);
        let mu = rat_pow(&w, b);
        let vars = ty();
        let t_sub = Poly::from_terms(&vars, [(vec![p, 0], lambda.clone())]);
        let y_sub = Poly::from_terms(&vars, [(vec![q, 0], mu.clone()), (vec![q, 1], Rat::one())]);
        let composed = st.g.compose(&[t_sub, y_sub]);
        debug_assert_eq!(composed.min_degree_in(0), Some(level));
        let g = composed.divide_by_var_power(0, level);
        let mut prefix: BTreeMap<u32, Rat> = st
            .prefix
            .iter()
            .map(|(e, c)| (e * p, c * rat_pow(&lambda, *e as i64)))
            .collect();
        let kl = &st.kappa * rat_pow(&lambda, st.k as i64);
        let new_k = st.k * p + q;
        *prefix.entry(new_k).or_insert_with(Rat::zero) += &kl * &mu;
        prefix.retain(|_, c| !c.is_zero());
        stages.push(Stage {
            g,
            xi: &st.xi * rat_pow(&lambda, st.big_p as i64),
            big_p: st.big_p * p,
            prefix,
            kappa: kl,
            k: new_k,
            depth: st.depth + 1,
        });
    }
    Ok(stages)
}

/// Solves `g(T, Y) = 0` for `Y = phi(T)` with `phi(0) = 0` when
/// `dg/dY(0, 0) != 0`, by Newton iteration with precision doubling.
fn lift(st: &Stage, n: u32) -> Result<LocalBranch> {
    let need = n.saturating_sub(st.k).max(1);
    let t = monomial_series(&Rat::one(), 1).with_param("T");
    let gy = st.g.derivative(1);
    let mut phi = TruncSeries::zero("T");
    let mut prec = 1u32;
    while prec < need {
        let next = (2 * prec).min(need);
        let phi_n = TruncSeries::new("T", phi.coeffs.clone(), next);
        let val = compose_unchecked(&st.g, &[t.clone(), phi_n.clone()])?.truncate(next);
        let dval = compose_unchecked(&gy, &[t.clone(), phi_n.clone()])?.truncate(next);
        let inv = dval.inverse(next).expect("dg/dY(0,0) is nonzero");
        let corr = val.mul(&inv).truncate(next);
        phi = TruncSeries::new("T", phi_n.sub(&corr).coeffs, next);
        prec = next;
    }
    let phi_exact = TruncSeries::exact("T", phi.coeffs.clone());
    let exact = compose_unchecked(&st.g, &[t, phi_exact])?.is_exact_zero();
    let mut v = st.prefix.clone();
    for (e, c) in &phi.coeffs {
        *v.entry(e + st.k).or_insert_with(Rat::zero) += c * &st.kappa;
    }
    let v = if exact {
        TruncSeries::exact(PARAM, v)
    } else {
        TruncSeries::new(PARAM, v, need + st.k)
    };
    Ok(LocalBranch {
        u: monomial_series(&st.xi, st.big_p),
        v,
    })
}

/// Replaces `t^g` by `t` when every exponent of an exact branch is a
/// multiple of `g`.
fn reduce_ramification(b: &mut LocalBranch) {
    if !(b.u.exact && b.v.exact) {
        return;
    }
    let g =
        b.u.coeffs
            .keys()
            .chain(b.v.coeffs.keys())
            .fold(0u32, |acc, e| acc.gcd(e));
    if g > 1 {
        let shrink = |s: &TruncSeries| {
            TruncSeries::exact(
                PARAM,
                s.coeffs.iter().map(|(e, c)| (e / g, c.clone())).collect(),
            )
        };
        b.u = shrink(&b.u);
        b.v = shrink(&b.v);
    }
}

/// Branches of the projective curve `F(x, y, z) = 0` at `p`, expanded in
/// the chart of `p`. Branch ids are `point_id.k` in a deterministic order.
pub fn newton_puiseux(
    big_f: &Poly,
    p: &ProjPoint,
    point_id: &str,
    n: u32,
) -> Result<Vec<PuiseuxBranch>> {
    let f = local_equation(big_f, p);
    if !f.constant_term().is_zero() {
        return Err(Error::InconsistentInput(format!("{p} is not on the curve")));
    }
    let chart = Chart::for_point(p);
    let Chart::Affine { local, .. } = chart else {
        unreachable!()
    };
    let mut branches: Vec<PuiseuxBranch> = newton_puiseux_local(&f, n, &p.to_string())?
        .into_iter()
        .map(|lb| {
            let components = vec![lb.u, lb.v];
            let infinity_order = if p.at_infinity() {
                let zi = local.iter().position(|&i| i == 2).expect("z is local");
                components[zi].valuation()
            } else {
                None
            };
            PuiseuxBranch {
                branch_id: String::new(),
                point_id: point_id.to_string(),
                center: Some(p.clone()),
                chart: chart.clone(),
                mult: branch_multiplicity(&components).unwrap_or(0),
                components,
                infinity_order,
                infinity_component: None,
                symbolic: false,
                position: None,
            }
        })
        .collect();
    branches.sort_by(|a, b| {
        (a.component_orders(), a.sort_key()).cmp(&(b.component_orders(), b.sort_key()))
    });
    for (k, b) in branches.iter_mut().enumerate() {
        b.branch_id = format!("{point_id}.{k}");
    }
    Ok(branches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat, series_compose};

    fn local(s: &str) -> Poly {
        parse_poly(s, Some(&["u", "v"])).unwrap()
    }

    fn orders(b: &LocalBranch) -> (Option<u32>, Option<u32>) {
        (b.u.valuation(), b.v.valuation())
    }

    fn check_on_curve(f: &Poly, b: &LocalBranch) {
        let r = compose_unchecked(f, &[b.u.clone(), b.v.clone()]).unwrap();
        assert!(r.coeffs.is_empty(), "residual {r}");
    }

    #[test]
    fn cusp() {
        let f = local("v^2 - u^3");
        let bs = newton_puiseux_local(&f, 8, "o").unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(orders(&bs[0]), (Some(2), Some(3)));
        assert!(bs[0].u.exact && bs[0].v.exact);
        assert!(series_compose(&f, &[bs[0].u.clone(), bs[0].v.clone()])
            .unwrap()
            .is_exact_zero());
    }

    #[test]
    fn node_has_two_smooth_branches() {
        let f = local("v^2 - u^2 - u^3");
        let bs = newton_puiseux_local(&f, 8, "o").unwrap();
        assert_eq!(bs.len(), 2);
        let mut slopes: Vec<Rat> = bs.iter().map(|b| b.v.coeff(1)).collect();
        slopes.sort();
        assert_eq!(slopes, vec![rat(-1, 1), rat(1, 1)]);
        for b in &bs {
            assert_eq!(orders(b), (Some(1), Some(1)));
            assert!(!b.v.exact);
            check_on_curve(&f, b);
        }
    }

    #[test]
    fn branch_tangent_to_v_axis() {
        // x^2 - y^5 with u = x, v = y
        let bs = newton_puiseux_local(&local("u^2 - v^5"), 12, "o").unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(orders(&bs[0]), (Some(5), Some(2)));
    }

    #[test]
    fn higher_cusp_and_axes() {
        let bs = newton_puiseux_local(&local("u^5 - v^3"), 10, "o").unwrap();
        assert_eq!(orders(&bs[0]), (Some(3), Some(5)));
        let bs = newton_puiseux_local(&local("u*v"), 6, "o").unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.u.exact && b.v.exact));
    }

    #[test]
    fn two_puiseux_pairs() {
        // (t^4, t^6 + t^7)
        let f = local("(v^2 - u^3)^2 - 4*u^5*v - u^7");
        let bs = newton_puiseux_local(&f, 16, "o").unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(orders(&bs[0]), (Some(4), Some(6)));
        check_on_curve(&f, &bs[0]);
    }

    #[test]
    fn irrational_tangents_rejected() {
        let err = newton_puiseux_local(&local("v^2 - 2*u^2 + u^3"), 8, "o").unwrap_err();
        assert!(matches!(err, Error::IrrationalCoefficients { .. }));
    }

    #[test]
    fn projective_wrapper_sets_infinity_order() {
        let f = parse_poly("y^2*z - x^3", Some(&["x", "y", "z"])).unwrap();
        let p = ProjPoint::from_ints(0, 1, 0).unwrap();
        let bs = newton_puiseux(&f, &p, "q", 8).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].mult, 1);
        // the flex at infinity meets z = 0 with order 3
        assert_eq!(bs[0].infinity_order, Some(3));
        assert_eq!(bs[0].branch_id, "q.0");
    }
}
