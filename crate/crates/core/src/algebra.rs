//! Φ_L-algebras and L-continuous lattices: the structure map `r(u) = ⊔u^l`
//! of a continuous lattice with its Scott topology, and the continuous
//! lattice carried by an arbitrary algebra on a T0 space.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::filter::{check_filter_laws, lim_conv, pointed, principal, pushforward_unchecked, sample_directed, FilterSpace, OpenFilter};
use crate::frame::{Elem, DEFAULT_LAW_SEED};
use crate::lorder::LOrder;
use crate::lset::{self, CarrierMap, LSubset};
use crate::ltop::LTopSpace;
use crate::monadlaws::{level2_elements, MonadConfig};
use crate::report::{CheckEntry, LawCheck, Mode, Report};
use crate::scott::ScottContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BuiltFromOrder,
    UserSupplied,
}

/// A space with a map `r: Φ_L(X) -> X`, indexed by the filter enumeration.
#[derive(Clone, Debug)]
pub struct AlgebraWitness {
    pub space: Arc<LTopSpace>,
    pub filter_space: FilterSpace,
    pub r: Vec<usize>,
    pub provenance: Provenance,
}

impl AlgebraWitness {
    pub fn new(space: Arc<LTopSpace>, r: Vec<usize>, caps: &Caps) -> Result<AlgebraWitness> {
        let fs = FilterSpace::new(space.clone(), caps)?;
        AlgebraWitness::with_filters(space, fs, r, Provenance::UserSupplied)
    }

    pub fn with_filters(space: Arc<LTopSpace>, fs: FilterSpace, r: Vec<usize>, provenance: Provenance) -> Result<AlgebraWitness> {
        if r.len() != fs.len() {
            return Err(Error::InvalidParameter(format!("r has {} entries for {} filters", r.len(), fs.len())));
        }
        if let Some(&bad) = r.iter().find(|&&x| x >= space.len()) {
            return Err(Error::InvalidParameter(format!("r value {bad} is not a point of a {}-point space", space.len())));
        }
        Ok(AlgebraWitness { space, filter_space: fs, r, provenance })
    }

    pub fn map(&self) -> CarrierMap {
        CarrierMap::new(self.r.clone(), self.space.len()).expect("validated on construction")
    }

    /// `r'(u) = r(σ(u))` for a transposition σ of two filters.
    pub fn with_swapped(&self, a: usize, b: usize) -> AlgebraWitness {
        let mut w = self.clone();
        w.r.swap(a, b);
        w
    }

    pub fn render(&self) -> String {
        let pts = self.space.points();
        let rows: Vec<String> = (0..self.r.len())
            .map(|i| format!("{} -> {}", self.filter_space.space().points()[i], pts[self.r[i]]))
            .collect();
        rows.join("\n")
    }
}

/// `u^l(x) = ⋁_A u(A) ∧ A^l(x)` over the opens of `space`, with the lower
/// cone taken in `order`.
pub fn u_lower(order: &LOrder, space: &LTopSpace, u: &OpenFilter) -> Result<LSubset> {
    if order.len() != space.len() || u.values.len() != space.opens().len() {
        return Err(Error::InvalidParameter("order, space and filter do not match".into()));
    }
    let cones: Vec<LSubset> = space.opens().iter().map(|a| order.lower_cone(a)).collect();
    Ok(u_lower_with(order, &cones, u))
}

fn u_lower_with(order: &LOrder, cones: &[LSubset], u: &OpenFilter) -> LSubset {
    let f = order.frame();
    LSubset((0..order.len()).map(|x| f.join_all(cones.iter().enumerate().map(|(a, c)| f.meet(u.at(a), c.get(x))))).collect())
}

/// `lim_S u(x) = ⋁_I sub(I, u^l) ∧ e(x, ⊔I)`.
pub fn scott_lim(ctx: &ScottContext, lower: &LSubset) -> LSubset {
    let o = ctx.order();
    let f = o.frame();
    LSubset(
        (0..o.len())
            .map(|x| f.join_all(ctx.ideals().iter().map(|(i, s)| f.meet(lset::sub(f, i, lower), o.e(x, *s)))))
            .collect(),
    )
}

/// The Scott side of a complete order: its Scott topology, filters and
/// structure map.
#[derive(Clone, Debug)]
pub struct ScottAlgebra {
    pub ctx: ScottContext,
    pub witness: AlgebraWitness,
    lowers: Vec<LSubset>,
}

impl ScottAlgebra {
    pub fn lower(&self, u: usize) -> &LSubset {
        &self.lowers[u]
    }

    pub fn order(&self) -> &LOrder {
        self.ctx.order()
    }
}

/// `r(u) = ⊔u^l` on a complete L-ordered set with its Scott topology.
pub fn structure_map_r(order: &LOrder, caps: &Caps) -> Result<ScottAlgebra> {
    let ctx = ScottContext::new(order.clone(), caps)?;
    if !ctx.is_continuous_lattice()? {
        return Err(Error::Precondition("the order is not an L-continuous lattice".into()));
    }
    structure_map_unchecked(ctx, caps)
}

fn structure_map_unchecked(ctx: ScottContext, caps: &Caps) -> Result<ScottAlgebra> {
    let sigma = Arc::new(ctx.scott_topology());
    let fs = FilterSpace::new(sigma.clone(), caps)?;
    let order = ctx.order();
    let cones: Vec<LSubset> = sigma.opens().iter().map(|a| order.lower_cone(a)).collect();
    let lowers: Vec<LSubset> = fs.filters().iter().map(|u| u_lower_with(order, &cones, u)).collect();
    let r = lowers
        .iter()
        .map(|l| order.sup_index(l).ok_or_else(|| Error::Precondition(format!("{} has no supremum", order.render(l)))))
        .collect::<Result<Vec<_>>>()?;
    let witness = AlgebraWitness::with_filters(sigma, fs, r, Provenance::BuiltFromOrder)?;
    Ok(ScottAlgebra { ctx, witness, lowers })
}

fn level2_for(fs: &FilterSpace, caps: &Caps) -> Result<(Vec<OpenFilter>, Mode, Option<String>)> {
    let (l2, samples, note) = level2_elements(fs, &MonadConfig::from_caps(caps), caps)?;
    let mode = if l2.is_some() { Mode::Exhaustive } else { Mode::Sampled { samples: samples.len() } };
    Ok((samples, mode, note))
}

/// `r∘η = id`, `r∘Φr = r∘μ` over level 2, and continuity of `r`.
fn check_algebra_axioms(w: &AlgebraWitness, subject: &str, caps: &Caps) -> Result<Report> {
    let x = &*w.space;
    let fs = &w.filter_space;
    let rmap = w.map();
    let mut report = Report::new();

    let mut c = LawCheck::new("algebra.structure_continuous", subject);
    match fs.space().is_continuous(&rmap, x) {
        Ok(ok) => {
            c.check(ok, || "some preimage of an open is not open in the filter space".into());
        }
        Err(e) => c.fail(e.to_string()),
    }
    report.push(c.finish());

    let mut c = LawCheck::new("algebra.unit", subject);
    for p in 0..x.len() {
        match fs.index_of(&pointed(x, p)) {
            Some(i) => {
                c.check(w.r[i] == p, || format!("x={}: r([x])={}", x.points()[p], x.points()[w.r[i]]));
            }
            None => c.fail(format!("[{}] is not enumerated", x.points()[p])),
        }
    }
    report.push(c.finish());

    let (alphas, mode, note) = level2_for(fs, caps)?;
    let mut c = LawCheck::new("algebra.assoc", subject);
    c.set_mode(mode);
    if let Some(n) = note {
        c.set_note(n);
    }
    for (k, alpha) in alphas.iter().enumerate() {
        let mu = fs.mult_unchecked(alpha);
        let Some(mi) = fs.index_of(&mu) else {
            c.fail(format!("α{k}: μ(α) is not an open filter"));
            continue;
        };
        match pushforward_unchecked(&rmap, fs.space(), x, alpha) {
            Ok(pr) => match fs.index_of(&pr) {
                Some(pi) => {
                    c.check(w.r[pi] == w.r[mi], || {
                        format!("α{k}: r(Φr(α))={}, r(μ(α))={}", x.points()[w.r[pi]], x.points()[w.r[mi]])
                    });
                }
                None => c.fail(format!("α{k}: Φr(α) is not an open filter")),
            },
            Err(e) => c.fail(format!("α{k}: Φr(α) undefined: {e}")),
        }
    }
    report.push(c.finish());
    Ok(report)
}

/// A continuous lattice with its Scott topology and `r(u) = ⊔u^l` is a
/// Φ_L-algebra, together with the supporting inequalities.
pub fn check_lattice_is_algebra(order: &LOrder, caps: &Caps) -> Result<(Report, ScottAlgebra)> {
    let alg = structure_map_r(order, caps)?;
    let report = check_scott_algebra(&alg, caps)?;
    Ok((report, alg))
}

pub fn check_scott_algebra(alg: &ScottAlgebra, caps: &Caps) -> Result<Report> {
    let o = alg.order();
    let f = o.frame();
    let w = &alg.witness;
    let sigma = &*w.space;
    let fs = &w.filter_space;
    let subject = format!("({} pts, |σ|={}, |Φ|={})", o.len(), sigma.opens().len(), fs.len());
    let name = |x: usize| o.names()[x].clone();
    let uname = |i: usize| fs.space().points()[i].clone();
    let mut report = Report::new();

    let mut c = LawCheck::new("scott.t0", &subject);
    c.check(sigma.is_t0(), || {
        let (x, y) = sigma.t0_witness().unwrap_or_default();
        format!("points {} and {}", name(x), name(y))
    });
    report.push(c.finish());

    let mut c = LawCheck::new("algebra.lower_is_ideal", &subject);
    for i in 0..fs.len() {
        let ok = o.is_ideal(alg.lower(i)).unwrap_or(false);
        c.check(ok, || format!("u={}: u^l={}", uname(i), o.render(alg.lower(i))));
    }
    report.push(c.finish());

    let wb = alg.ctx.way_below();
    let mut c = LawCheck::new("algebra.pointed_lower_bounds", &subject);
    for x in 0..o.len() {
        let Some(i) = fs.index_of(&pointed(sigma, x)) else {
            c.fail(format!("[{}] is not enumerated", name(x)));
            continue;
        };
        let l = alg.lower(i);
        c.check(wb.down(x).leq(f, l) && l.leq(f, &o.down(x)), || format!("x={}: [x]^l={}", name(x), o.render(l)));
    }
    report.push(c.finish());

    let rmap = w.map();
    let mut c = LawCheck::new("algebra.preimage_below_phi", &subject);
    for (a, open) in sigma.opens().iter().enumerate() {
        let pre = lset::preimage(&rmap, open).expect("r targets X");
        c.check(pre.leq(f, fs.phi_set(a)), || format!("A={}", o.render(open)));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("algebra.waybelow_inf_bound", &subject);
    for (a, open) in sigma.opens().iter().enumerate() {
        let Some(inf) = o.inf_index(open) else {
            c.fail(format!("A={} has no infimum", o.render(open)));
            continue;
        };
        for x in 0..o.len() {
            let pre = lset::preimage(&rmap, &wb.upper(x)).expect("r targets X");
            let rhs = lset::sub(f, fs.phi_set(a), &pre);
            c.check(f.leq(wb.wb(inf, x), rhs), || format!("A={}, x={}", o.render(open), name(x)));
        }
    }
    report.push(c.finish());

    report.extend(check_algebra_axioms(w, &subject, caps)?);

    let mut c = LawCheck::new("algebra.scott_limit", &subject);
    for i in 0..fs.len() {
        let lim = scott_lim(&alg.ctx, alg.lower(i));
        for x in 0..o.len() {
            c.check(lim.get(x) == o.e(x, w.r[i]), || format!("u={}, x={}", uname(i), name(x)));
        }
    }
    report.push(c.finish());

    report.push(check_continuity_via_pointed(&alg.ctx, sigma));
    Ok(report.in_suite("algebra"))
}

/// `X` is continuous iff `x = ⊔[x]^l` for every `x`, with `[x]^l` over the
/// Scott opens. Both sides are computed independently and compared.
pub fn check_continuity_via_pointed(ctx: &ScottContext, sigma: &LTopSpace) -> CheckEntry {
    let o = ctx.order();
    let subject = format!("({} pts)", o.len());
    if !ctx.is_complete() {
        return LawCheck::skipped("algebra.continuity_via_pointed", &subject, "the order is not complete");
    }
    let mut c = LawCheck::new("algebra.continuity_via_pointed", &subject);
    let continuous = ctx.is_continuous_lattice().unwrap_or(false);
    let cones: Vec<LSubset> = sigma.opens().iter().map(|a| o.lower_cone(a)).collect();
    let bad = (0..o.len()).find(|&x| o.sup_index(&u_lower_with(o, &cones, &pointed(sigma, x))) != Some(x));
    c.check(continuous == bad.is_none(), || match bad {
        Some(x) => format!("continuous lattice but ⊔[x]^l ≠ x at x={}", o.names()[x]),
        None => "not continuous, yet x = ⊔[x]^l everywhere".into(),
    });
    c.set_note(if continuous { "continuous lattice" } else { "not a continuous lattice" });
    c.finish()
}

fn lsubsets_for(order: &LOrder, caps: &Caps, seed: u64) -> (Vec<LSubset>, Mode) {
    let f = order.frame();
    let n = order.len();
    match lset::all_lsubsets(f, n, caps) {
        Ok(all) => (all, Mode::Exhaustive),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<LSubset> = (0..n).map(|x| LSubset::characteristic(f, n, &[x])).collect();
            out.extend(f.elements().map(|a| LSubset::constant(n, a)));
            for _ in 0..caps.level2_samples {
                out.push(LSubset((0..n).map(|_| Elem(rng.gen_range(0..f.len()) as u8)).collect()));
            }
            let k = out.len();
            (out, Mode::Sampled { samples: k })
        }
    }
}

/// An algebra on a T0 space makes the specialization order an
/// L-continuous lattice with `r(u) = ⊔u^l`.
pub fn check_algebra_is_lattice(w: &AlgebraWitness, caps: &Caps) -> Result<Report> {
    let x = &*w.space;
    let f = x.frame();
    let fs = &w.filter_space;
    let e = x.specialization_order()?;
    let subject = format!("({} pts, {} opens, |Φ|={})", x.len(), x.opens().len(), fs.len());
    let name = |p: usize| x.points()[p].clone();
    let uname = |i: usize| fs.space().points()[i].clone();
    let rmap = w.map();
    let mut report = check_algebra_axioms(w, &subject, caps)?;

    let mut c = LawCheck::new("algebra.open_below_image", &subject);
    for (a, open) in x.opens().iter().enumerate() {
        let img = lset::image(f, &rmap, fs.phi_set(a)).expect("r targets X");
        c.check(open.leq(f, &img), || format!("A={}", x.render(open)));
    }
    report.push(c.finish());

    let order = fs.sub_order();
    let mut c = LawCheck::new("algebra.filter_specialization", &subject);
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            c.check(fs.space().specialization_value(i, j) == order.e(i, j), || format!("u={}, v={}", uname(i), uname(j)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("algebra.sub_monotone", &subject);
    for i in 0..fs.len() {
        for j in 0..fs.len() {
            c.check(f.leq(order.e(i, j), e.e(w.r[i], w.r[j])), || format!("u={}, v={}", uname(i), uname(j)));
        }
    }
    report.push(c.finish());

    let mut c = LawCheck::new("algebra.limit", &subject);
    for (i, u) in fs.filters().iter().enumerate() {
        let lim = lim_conv(x, u);
        for p in 0..x.len() {
            c.check(lim.get(p) == e.e(p, w.r[i]), || format!("u={}, x={}", uname(i), name(p)));
        }
    }
    report.push(c.finish());

    let (subsets, mode) = lsubsets_for(&e, caps, DEFAULT_LAW_SEED);
    let mut c = LawCheck::new("algebra.complete", &subject);
    c.set_mode(mode);
    for a in &subsets {
        match fs.index_of(&principal(x, a)) {
            Some(k) => {
                c.check(e.inf_index(a) == Some(w.r[k]), || format!("A={}: r([A])={}", x.render(a), name(w.r[k])));
            }
            None => c.fail(format!("[{}] is not enumerated", x.render(a))),
        }
    }
    report.push(c.finish());

    // directed-sup structure of the filter space: sup, lift, canonical family
    let filter_report = check_filter_laws(fs, caps);
    for law in ["filter.directed_sup", "filter.lift_is_filter", "filter.lift_mult", "filter.canonical_directed"] {
        if let Some(entry) = filter_report.entry(law) {
            report.push(entry.clone());
        }
    }

    let n = fs.len();
    let (families, mode) = match Caps::checked_power(f.len(), n, caps.lsubset_space) {
        Some(total) => (
            (0..total).map(|i| LSubset::from_index(i, n, f.len())).filter(|d| order.is_directed(d).unwrap_or(false)).collect(),
            Mode::Exhaustive,
        ),
        None => {
            let s = sample_directed(fs, &order);
            let k = s.len();
            (s, Mode::Sampled { samples: k })
        }
    };
    let mut c = LawCheck::new("algebra.directed_sup_preserved", &subject);
    c.set_mode(mode);
    for fam in &families {
        let Some(s) = fs.index_of(&fs.dsup_formula(fam)) else {
            c.fail(format!("family={}: ⊔ is not a filter", fs.render_family(fam)));
            continue;
        };
        let img = lset::image(f, &rmap, fam).expect("r targets X");
        c.check(e.sup_index(&img) == Some(w.r[s]), || format!("family={}", fs.render_family(fam)));
    }
    report.push(c.finish());

    let cones: Vec<LSubset> = x.opens().iter().map(|a| e.lower_cone(a)).collect();
    let mut c = LawCheck::new("algebra.structure_formula", &subject);
    for (i, u) in fs.filters().iter().enumerate() {
        let l = u_lower_with(&e, &cones, u);
        c.check(e.sup_index(&l) == Some(w.r[i]), || format!("u={}: r(u)={}, u^l={}", uname(i), name(w.r[i]), e.render(&l)));
    }
    report.push(c.finish());

    match ScottContext::new(e.clone(), caps) {
        Ok(ctx) => {
            let mut c = LawCheck::new("algebra.continuous_lattice", &subject);
            match ctx.is_continuous_lattice() {
                Ok(ok) => {
                    c.check(ok, || {
                        let wb = ctx.way_below();
                        let bad = (0..e.len()).find(|&p| e.sup_index(&wb.down(p)) != Some(p)).unwrap_or(0);
                        format!("x={}: ⊔⇓x ≠ x", name(bad))
                    });
                }
                Err(err) => c.fail(err.to_string()),
            }
            report.push(c.finish());
        }
        Err(err) if err.is_resource_limit() => {
            report.push(LawCheck::skipped("algebra.continuous_lattice", &subject, err.to_string()));
        }
        Err(err) => {
            let mut c = LawCheck::new("algebra.continuous_lattice", &subject);
            c.fail(err.to_string());
            report.push(c.finish());
        }
    }
    Ok(report.in_suite("algebra"))
}

/// Both directions on one order, then the Scott specialization order and
/// the structure map recovered from the algebra are compared with the
/// originals.
pub fn roundtrip(order: &LOrder, caps: &Caps) -> Result<Report> {
    let (mut report, alg) = check_lattice_is_algebra(order, caps)?;
    let w = &alg.witness;
    report.extend(check_algebra_is_lattice(w, caps)?);
    let sigma = &*w.space;
    let subject = format!("({} pts)", order.len());

    let mut c = LawCheck::new("roundtrip.specialization", &subject);
    match sigma.specialization_order() {
        Ok(spec) => {
            for x in 0..order.len() {
                for y in 0..order.len() {
                    c.check(spec.e(x, y) == order.e(x, y), || {
                        format!("e({},{}): {} vs {}", order.names()[x], order.names()[y], spec.e(x, y), order.e(x, y))
                    });
                }
            }
            let cones: Vec<LSubset> = sigma.opens().iter().map(|a| spec.lower_cone(a)).collect();
            let mut r = LawCheck::new("roundtrip.structure_map", &subject);
            for (i, u) in w.filter_space.filters().iter().enumerate() {
                let back = spec.sup_index(&u_lower_with(&spec, &cones, u));
                r.check(back == Some(w.r[i]), || format!("u={}", w.filter_space.space().points()[i]));
            }
            report.push(c.finish());
            report.push(r.finish());
        }
        Err(e) => {
            c.fail(e.to_string());
            report.push(c.finish());
            report.push(LawCheck::skipped("roundtrip.structure_map", &subject, "no specialization order"));
        }
    }
    Ok(report.in_suite("roundtrip"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteLattice, Frame};
    use crate::report::Verdict;

    fn chain(n: usize) -> Arc<Frame> {
        Arc::new(Frame::chain(n).unwrap())
    }

    #[test]
    fn crisp_chains_roundtrip() {
        let caps = Caps::default();
        for n in 1..=3 {
            let o = LOrder::crisp_chain(chain(2), n).unwrap();
            let r = roundtrip(&o, &caps).unwrap();
            assert!(r.all_passed(), "n={n}\n{}", r.to_text(false));
        }
    }

    #[test]
    fn two_chain_structure_map() {
        let caps = Caps::default();
        let o = LOrder::crisp_chain(chain(2), 2).unwrap();
        let alg = structure_map_r(&o, &caps).unwrap();
        let w = &alg.witness;
        // the filter with u(A) = 1 only on the top open goes to the bottom
        let top_only = w.filter_space.filters().iter().position(|u| {
            w.space.opens().iter().enumerate().all(|(a, open)| (u.at(a) == Elem(1)) == open.values().iter().all(|&v| v == Elem(1)))
        });
        assert_eq!(w.r[top_only.unwrap()], 0);
        for x in 0..2 {
            let i = w.filter_space.index_of(&pointed(&w.space, x)).unwrap();
            assert_eq!(w.r[i], x);
        }
    }

    #[test]
    fn self_order_chain3() {
        let caps = Caps::default();
        let o = LOrder::self_order(chain(3));
        let r = roundtrip(&o, &caps).unwrap();
        assert!(r.all_passed(), "{}", r.to_text(false));
    }

    #[test]
    fn scott_limit_examples() {
        let caps = Caps::default();
        let o = LOrder::self_order(chain(3));
        let alg = structure_map_r(&o, &caps).unwrap();
        let bottom = o.bottom().unwrap();
        for i in 0..alg.witness.filter_space.len() {
            let lim = scott_lim(&alg.ctx, alg.lower(i));
            assert_eq!(lim.get(bottom), o.frame().top());
        }
    }

    #[test]
    fn swapped_r_is_caught() {
        let caps = Caps::default();
        let o = LOrder::crisp_chain(chain(2), 3).unwrap();
        let alg = structure_map_r(&o, &caps).unwrap();
        let w = &alg.witness;
        let (a, b) = (0..w.r.len())
            .flat_map(|a| (0..w.r.len()).map(move |b| (a, b)))
            .find(|&(a, b)| w.r[a] != w.r[b])
            .unwrap();
        let r = check_algebra_is_lattice(&w.with_swapped(a, b), &caps).unwrap();
        assert!(!r.all_passed());
        assert!(
            r.verdict_of("algebra.sub_monotone") == Some(Verdict::Fail)
                || r.verdict_of("algebra.structure_formula") == Some(Verdict::Fail)
        );
    }

    #[test]
    fn constant_top_r_breaks_unit() {
        let caps = Caps::default();
        let o = LOrder::crisp_chain(chain(2), 2).unwrap();
        let alg = structure_map_r(&o, &caps).unwrap();
        let mut w = alg.witness.clone();
        w.r = vec![1; w.r.len()];
        let r = check_algebra_is_lattice(&w, &caps).unwrap();
        assert_eq!(r.verdict_of("algebra.unit"), Some(Verdict::Fail));
    }

    #[test]
    fn diamond_and_m3_roundtrip() {
        let caps = Caps::default();
        let f2 = chain(2);
        for text in ["0 < a\n0 < b\na < 1\nb < 1\n", "0 < a\n0 < b\n0 < c\na < 1\nb < 1\nc < 1\n"] {
            let lat = FiniteLattice::from_covers(&FiniteLattice::parse_covers(text).unwrap()).unwrap();
            let o = LOrder::crisp_lattice(f2.clone(), &lat).unwrap();
            let r = roundtrip(&o, &caps).unwrap();
            assert!(r.all_passed(), "{}", r.to_text(false));
        }
    }

    #[test]
    fn non_continuous_is_rejected() {
        // two points, e(x,y) = e(y,x) = mid: not antisymmetric-crisp, and
        // not continuous in any case
        let f = chain(3);
        let e = vec![Elem(2), Elem(1), Elem(1), Elem(2)];
        if let Ok(o) = LOrder::new(f, vec!["a".into(), "b".into()], e) {
            assert!(structure_map_r(&o, &Caps::default()).is_err());
        }
    }

    #[test]
    fn u_lower_rejects_mismatch() {
        let caps = Caps::default();
        let o = LOrder::crisp_chain(chain(2), 2).unwrap();
        let alg = structure_map_r(&o, &caps).unwrap();
        let other = LOrder::crisp_chain(chain(2), 3).unwrap();
        let u = &alg.witness.filter_space.filters()[0];
        assert!(matches!(u_lower(&other, &alg.witness.space, u), Err(Error::InvalidParameter(_))));
    }
}
