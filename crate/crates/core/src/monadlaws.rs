//! Naturality of η and μ and the monad laws for Φ_L, exhaustive where the
//! filter levels can be enumerated and on deterministic samples otherwise.

use std::sync::Arc;

use indexmap::IndexSet;

use crate::caps::Caps;
use crate::error::Result;
use crate::filter::{functor_map, is_open_filter, pointed, principal, pushforward_unchecked, FilterSpace, OpenFilter};
use crate::frame::{Elem, Frame};
use crate::lset::{self, CarrierMap, LSubset};
use crate::ltop::LTopSpace;
use crate::report::{LawCheck, Mode, Report};

/// How far to enumerate. `exhaustive` turns a level-2 resource limit into
/// an error instead of a fallback to samples.
#[derive(Clone, Copy, Debug)]
pub struct MonadConfig {
    pub exhaustive: bool,
    pub level2_samples: usize,
    pub level3_samples: usize,
}

impl MonadConfig {
    pub fn from_caps(caps: &Caps) -> MonadConfig {
        MonadConfig { exhaustive: false, level2_samples: caps.level2_samples, level3_samples: caps.level3_samples }
    }
}

type EtaFn<'a> = dyn Fn(&FilterSpace, usize) -> OpenFilter + 'a;
type MuFn<'a> = dyn Fn(&FilterSpace, &OpenFilter) -> OpenFilter + 'a;

/// Unit and multiplication under test. The default is the real thing;
/// mutation tests swap in broken versions.
pub struct MonadOps<'a> {
    pub eta: Box<EtaFn<'a>>,
    pub mu: Box<MuFn<'a>>,
}

impl Default for MonadOps<'_> {
    fn default() -> Self {
        MonadOps { eta: Box::new(|fs, x| fs.pointed(x)), mu: Box::new(|fs, alpha| fs.mult_unchecked(alpha)) }
    }
}

/// A level-3 element given by how it evaluates an L-subset of level-2
/// samples: `[α]` or the lift of a directed family of samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level3Sample {
    Pointed(usize),
    Lift(Vec<(usize, Elem)>),
}

impl Level3Sample {
    pub fn eval(&self, f: &Frame, mut w: impl FnMut(usize) -> Elem) -> Elem {
        match self {
            Level3Sample::Pointed(i) => w(*i),
            Level3Sample::Lift(fam) => f.join_all(fam.iter().map(|&(i, a)| f.meet(a, w(i)))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Level3Sample::Pointed(i) => format!("[α{i}]"),
            Level3Sample::Lift(fam) => {
                let parts: Vec<String> = fam.iter().map(|(i, a)| format!("α{i}:{a}")).collect();
                format!("lift{{{}}}", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Level3 {
    Full(FilterSpace),
    Sampled(Vec<Level3Sample>),
}

#[derive(Clone, Debug)]
pub struct MonadInstance {
    pub space: Arc<LTopSpace>,
    pub filter_space: FilterSpace,
    pub level2: Option<FilterSpace>,
    /// Level-2 filters the checks run over: all of them when `level2` is
    /// materialised.
    pub samples: Vec<OpenFilter>,
    pub level2_note: Option<String>,
    pub level3: Level3,
    pub level3_note: Option<String>,
}

impl MonadInstance {
    pub fn new(space: Arc<LTopSpace>, cfg: &MonadConfig, caps: &Caps) -> Result<MonadInstance> {
        let fs = FilterSpace::new(space.clone(), caps)?;
        let (level2, samples, level2_note) = level2_elements(&fs, cfg, caps)?;
        let (level3, level3_note) = match &level2 {
            Some(l2) => match FilterSpace::over(l2, caps) {
                Ok(l3) => (Level3::Full(l3), None),
                Err(e) if e.is_resource_limit() => {
                    let xi = level3_samples(&fs, l2.filters(), Some(l2), cfg.level3_samples);
                    let note = format!("level 3 sampled ({} elements): {e}", xi.len());
                    (Level3::Sampled(xi), Some(note))
                }
                Err(e) => return Err(e),
            },
            None => {
                let xi = level3_samples(&fs, &samples, None, cfg.level3_samples);
                let note = format!("level 3 sampled ({} elements) over level-2 samples", xi.len());
                (Level3::Sampled(xi), Some(note))
            }
        };
        Ok(MonadInstance { space, filter_space: fs, level2, samples, level2_note, level3, level3_note })
    }

    pub fn frame(&self) -> &Frame {
        self.space.frame()
    }

    pub fn level2_exhaustive(&self) -> bool {
        self.level2.is_some()
    }

    fn subject(&self) -> String {
        format!("X[{} pts, {} opens], |Φ|={}", self.space.len(), self.space.opens().len(), self.filter_space.len())
    }

    fn level2_mode(&self) -> Mode {
        if self.level2.is_some() {
            Mode::Exhaustive
        } else {
            Mode::Sampled { samples: self.samples.len() }
        }
    }
}

/// All of Φ² when it can be enumerated, otherwise the deterministic
/// samples of [`generate_level2_samples`] with a note saying why.
pub fn level2_elements(
    fs: &FilterSpace,
    cfg: &MonadConfig,
    caps: &Caps,
) -> Result<(Option<FilterSpace>, Vec<OpenFilter>, Option<String>)> {
    match FilterSpace::over(fs, caps) {
        Ok(l2) => {
            let all = l2.filters().to_vec();
            Ok((Some(l2), all, None))
        }
        Err(e) if e.is_resource_limit() && !cfg.exhaustive => {
            let (s, truncated) = generate_level2_samples(fs, cfg.level2_samples);
            let mut note = format!("level 2 sampled ({} elements): {e}", s.len());
            if truncated {
                note.push_str("; meet closure truncated at the sample cap");
            }
            Ok((None, s, Some(note)))
        }
        Err(e) => Err(e),
    }
}

/// Pointed `[u]`, principal `[φ(A)]` for the base of the filter space,
/// lifts of the canonical families `𝒜_u`, then binary meets up to `cap`.
/// Returns the samples and whether the meet closure was cut short.
pub fn generate_level2_samples(fs: &FilterSpace, cap: usize) -> (Vec<OpenFilter>, bool) {
    let f = fs.frame();
    let phi_space = fs.space();
    let mut set: IndexSet<OpenFilter> = IndexSet::new();
    for i in 0..fs.len() {
        set.insert(pointed(phi_space, i));
    }
    for &w in phi_space.base().unwrap_or(&[]) {
        set.insert(principal(phi_space, &phi_space.opens()[w]));
    }
    for u in fs.filters() {
        set.insert(fs.lift_unchecked(&fs.canonical_family(u)));
    }
    set.retain(|a| is_open_filter(phi_space, &a.values));
    let mut truncated = false;
    let mut i = 0;
    'outer: while i < set.len() {
        for j in 0..i {
            let m = OpenFilter {
                values: set[i].values.iter().zip(&set[j].values).map(|(&a, &b)| f.meet(a, b)).collect(),
            };
            if !set.contains(&m) {
                if set.len() >= cap {
                    truncated = true;
                    break 'outer;
                }
                set.insert(m);
            }
        }
        i += 1;
    }
    (set.into_iter().collect(), truncated)
}

fn level2_sub(f: &Frame, a: &OpenFilter, b: &OpenFilter) -> Elem {
    a.values.iter().zip(&b.values).fold(f.top(), |acc, (&x, &y)| f.meet(acc, f.imp(x, y)))
}

/// `[α]` for every sample, then lifts of canonical families (when level 2
/// is enumerated) and of two-element chains `{α: a, β: 1}` with
/// `sub(α,β) = 1`, up to `cap` lifts.
pub fn level3_samples(fs: &FilterSpace, samples: &[OpenFilter], level2: Option<&FilterSpace>, cap: usize) -> Vec<Level3Sample> {
    let f = fs.frame();
    let mut out: Vec<Level3Sample> = (0..samples.len()).map(Level3Sample::Pointed).collect();
    let mut lifts: IndexSet<Vec<(usize, Elem)>> = IndexSet::new();
    if let Some(l2) = level2 {
        for a in samples {
            let fam = l2.canonical_family(a);
            let support: Vec<(usize, Elem)> =
                fam.values().iter().enumerate().filter(|(_, &v)| v != f.bottom()).map(|(i, &v)| (i, v)).collect();
            lifts.insert(support);
        }
    }
    'pairs: for i in 0..samples.len() {
        for j in 0..samples.len() {
            if i == j || level2_sub(f, &samples[i], &samples[j]) != f.top() {
                continue;
            }
            for a in f.elements().filter(|&a| a != f.bottom()) {
                if lifts.len() >= cap {
                    break 'pairs;
                }
                lifts.insert(vec![(i, a), (j, f.top())]);
            }
        }
    }
    out.extend(lifts.into_iter().take(cap).map(Level3Sample::Lift));
    out
}

fn eta_map(fs: &FilterSpace, ops: &MonadOps) -> std::result::Result<CarrierMap, String> {
    let x = fs.base_space();
    let graph = (0..x.len())
        .map(|p| {
            let u = (ops.eta)(fs, p);
            fs.index_of(&u).ok_or_else(|| format!("η({}) = {} is not an open filter", x.points()[p], u.render(fs.frame())))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    CarrierMap::new(graph, fs.len()).map_err(|e| e.to_string())
}

/// The unit laws `μ∘η_Φ = id = μ∘Φη` over every filter, associativity
/// `μ∘Φμ = μ∘μ_Φ` over level 3, plus well-definedness and continuity of μ
/// and continuity of η.
pub fn check_monad_laws(inst: &MonadInstance, ops: &MonadOps) -> Report {
    let fs = &inst.filter_space;
    let x = &*inst.space;
    let f = x.frame();
    let subject = inst.subject();
    let mut report = Report::new();
    let uname = |i: usize| fs.space().points()[i].clone();

    let eta = eta_map(fs, ops);
    let mut c = LawCheck::new("monad.eta_continuous", &subject);
    match &eta {
        Ok(map) => {
            for (a, open) in x.opens().iter().enumerate() {
                let pre = lset::preimage(map, fs.phi_set(a)).expect("η targets Φ");
                c.check(&pre == open, || format!("U={}, η←(φ(U))={}", x.render(open), x.render(&pre)));
            }
            match x.is_continuous(map, fs.space()) {
                Ok(ok) => {
                    c.check(ok, || "η is not continuous".into());
                }
                Err(e) => c.fail(e.to_string()),
            }
        }
        Err(w) => c.fail(w.clone()),
    }
    report.push(c.finish());

    let mut c = LawCheck::new("monad.left_unit", &subject);
    for (i, u) in fs.filters().iter().enumerate() {
        let got = (ops.mu)(fs, &pointed(fs.space(), i));
        c.check(&got == u, || format!("u={}: μ([u])={}", uname(i), got.render(f)));
    }
    report.push(c.finish());

    let mut c = LawCheck::new("monad.right_unit", &subject);
    match &eta {
        Ok(map) => {
            for (i, u) in fs.filters().iter().enumerate() {
                match pushforward_unchecked(map, x, fs.space(), u) {
                    Ok(alpha) => {
                        let got = (ops.mu)(fs, &alpha);
                        c.check(&got == u, || format!("u={}: μ(Φη(u))={}", uname(i), got.render(f)));
                    }
                    Err(e) => c.fail(format!("u={}: {e}", uname(i))),
                }
            }
        }
        Err(w) => c.fail(w.clone()),
    }
    report.push(c.finish());

    let mut wd = LawCheck::new("monad.mu_well_defined", &subject);
    let mut mc = LawCheck::new("monad.mu_continuous", &subject);
    wd.set_mode(inst.level2_mode());
    mc.set_mode(inst.level2_mode());
    let mus: Vec<Option<usize>> = inst
        .samples
        .iter()
        .enumerate()
        .map(|(k, alpha)| {
            let m = (ops.mu)(fs, alpha);
            let idx = fs.index_of(&m);
            wd.check(idx.is_some(), || format!("α{k}: μ(α)={} is not an open filter", m.render(f)));
            idx
        })
        .collect();
    for a in 0..x.opens().len() {
        let w = fs.phi(a);
        for (k, alpha) in inst.samples.iter().enumerate() {
            let Some(m) = mus[k] else { continue };
            mc.check(fs.phi_set(a).get(m) == alpha.at(w), || format!("A=A{a}, α{k}"));
        }
        if let Some(l2) = &inst.level2 {
            let phiphi = l2.phi_set(w);
            mc.check(l2.space().base().is_some_and(|b| b.contains(&l2.phi(w))), || format!("φφ(A{a}) not in the base"));
            if mus.iter().all(Option::is_some) {
                let map = CarrierMap::new(mus.iter().map(|m| m.unwrap()).collect(), fs.len()).expect("indices in range");
                let pre = lset::preimage(&map, fs.phi_set(a)).expect("μ targets Φ");
                mc.check(&pre == phiphi, || format!("μ←(φ(A{a})) ≠ φφ(A{a})"));
            }
        }
    }
    if let Some(n) = &inst.level2_note {
        wd.set_note(n.clone());
        mc.set_note(n.clone());
    }
    report.push(wd.finish());
    report.push(mc.finish());

    report.push(check_associativity(inst, ops));
    report.in_suite("monad")
}

fn check_associativity(inst: &MonadInstance, ops: &MonadOps) -> crate::report::CheckEntry {
    let fs = &inst.filter_space;
    let f = fs.frame();
    let mut c = LawCheck::new("monad.assoc", &inst.subject());
    match (&inst.level3, &inst.level2) {
        (Level3::Full(l3), Some(l2)) => {
            let graph: std::result::Result<Vec<usize>, usize> = l2
                .filters()
                .iter()
                .enumerate()
                .map(|(k, alpha)| fs.index_of(&(ops.mu)(fs, alpha)).ok_or(k))
                .collect();
            let mu_map = match graph {
                Ok(g) => CarrierMap::new(g, fs.len()).expect("indices in range"),
                Err(k) => {
                    c.fail(format!("μ({}) is not an open filter", l2.space().points()[k]));
                    return c.finish();
                }
            };
            for (t, xi) in l3.filters().iter().enumerate() {
                let name = || l3.space().points()[t].clone();
                let lhs = match pushforward_unchecked(&mu_map, l2.space(), fs.space(), xi) {
                    Ok(beta) => (ops.mu)(fs, &beta),
                    Err(e) => {
                        c.fail(format!("Ξ={}: Φμ undefined: {e}", name()));
                        continue;
                    }
                };
                let rhs = (ops.mu)(fs, &(ops.mu)(l2, xi));
                c.check(lhs == rhs, || format!("Ξ={}: {} vs {}", name(), lhs.render(f), rhs.render(f)));
            }
        }
        (Level3::Sampled(xis), _) => {
            c.set_mode(Mode::Sampled { samples: xis.len() });
            if let Some(n) = &inst.level3_note {
                c.set_note(format!("{n}; sampled level-3 elements are pointed and lifted shapes only"));
            }
            let mu_idx: Vec<Option<usize>> = inst.samples.iter().map(|a| fs.index_of(&(ops.mu)(fs, a))).collect();
            let m = fs.base_space().opens().len();
            let wn = fs.space().opens().len();
            for xi in xis {
                // Φμ(Ξ)(φ(A)) = Ξ(μ←(φ(A)))
                let mut broken = None;
                let lhs_val: Vec<Elem> = (0..m)
                    .map(|a| {
                        xi.eval(f, |k| match mu_idx[k] {
                            Some(j) => fs.phi_set(a).get(j),
                            None => {
                                broken = Some(k);
                                f.bottom()
                            }
                        })
                    })
                    .collect();
                if let Some(k) = broken {
                    c.fail(format!("Ξ={}: μ(α{k}) is not an open filter", xi.describe()));
                    continue;
                }
                let phi_mu = OpenFilter {
                    values: (0..wn)
                        .map(|w| {
                            if let Some(a) = (0..m).find(|&a| fs.phi(a) == w) {
                                lhs_val[a]
                            } else {
                                let open = &fs.space().opens()[w];
                                xi.eval(f, |k| mu_idx[k].map_or(f.bottom(), |j| open.get(j)))
                            }
                        })
                        .collect(),
                };
                let lhs = (ops.mu)(fs, &phi_mu);
                // μ_Φ(Ξ)(W) = Ξ(α ↦ α(W))
                let mu_phi = OpenFilter { values: (0..wn).map(|w| xi.eval(f, |k| inst.samples[k].at(w))).collect() };
                let rhs = (ops.mu)(fs, &mu_phi);
                c.check(lhs == rhs, || format!("Ξ={}: {} vs {}", xi.describe(), lhs.render(f), rhs.render(f)));
            }
        }
        (Level3::Full(_), None) => c.fail("level 3 enumerated without level 2"),
    }
    c.finish()
}

/// Naturality of η and μ and continuity of Φf along every continuous map
/// `X -> Y`, within `caps.family_size` candidate maps.
pub fn check_naturality(mx: &MonadInstance, my: &MonadInstance, ops: &MonadOps, caps: &Caps) -> Report {
    let (x, y) = (&*mx.space, &*my.space);
    let (fx, fy) = (&mx.filter_space, &my.filter_space);
    let f = x.frame();
    let subject = format!("{} -> {}", mx.subject(), my.subject());
    let mut report = Report::new();
    let laws = ["monad.eta_natural", "monad.functor_continuous", "monad.mu_natural"];
    if x.frame() != y.frame() {
        for law in laws {
            report.push(LawCheck::skipped(law, &subject, "spaces over different frames"));
        }
        return report.in_suite("monad");
    }
    if Caps::checked_power(y.len(), x.len(), caps.family_size as u64).is_none() {
        for law in laws {
            report.push(LawCheck::skipped(law, &subject, format!("more than {} candidate maps", caps.family_size)));
        }
        return report.in_suite("monad");
    }
    let maps = match x.continuous_maps(y) {
        Ok(m) => m,
        Err(e) => {
            for law in laws {
                report.push(LawCheck::skipped(law, &subject, e.to_string()));
            }
            return report.in_suite("monad");
        }
    };

    let mut en = LawCheck::new("monad.eta_natural", &subject);
    let mut fc = LawCheck::new("monad.functor_continuous", &subject);
    let mut mn = LawCheck::new("monad.mu_natural", &subject);
    mn.set_mode(mx.level2_mode());
    for g in &maps {
        for p in 0..x.len() {
            let lhs = (ops.eta)(fy, g.graph[p]);
            let rhs = pushforward_unchecked(g, x, y, &(ops.eta)(fx, p));
            en.check(rhs.as_ref().is_ok_and(|r| *r == lhs), || format!("f={:?}, x={}", g.graph, x.points()[p]));
        }
        let phi_g = match functor_map(g, fx, fy) {
            Ok(m) => m,
            Err(e) => {
                fc.fail(format!("f={:?}: {e}", g.graph));
                continue;
            }
        };
        match fx.space().is_continuous(&phi_g, fy.space()) {
            Ok(ok) => {
                fc.check(ok, || format!("Φf not continuous for f={:?}", g.graph));
            }
            Err(e) => fc.fail(e.to_string()),
        }
        for (k, alpha) in mx.samples.iter().enumerate() {
            let lhs = pushforward_unchecked(&phi_g, fx.space(), fy.space(), alpha).map(|b| (ops.mu)(fy, &b));
            let rhs = pushforward_unchecked(g, x, y, &(ops.mu)(fx, alpha));
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
            mn.check(ok, || {
                let show = |r: &Result<OpenFilter>| r.as_ref().map_or_else(|e| e.to_string(), |v| v.render(f));
                format!("f={:?}, α{k}: {} vs {}", g.graph, show(&lhs), show(&rhs))
            });
        }
    }
    if let Some(n) = &mx.level2_note {
        mn.set_note(n.clone());
    }
    for c in [en, fc, mn] {
        report.push(c.finish());
    }
    report.in_suite("monad")
}

/// Monad laws plus naturality along every continuous self-map.
pub fn check_monad(inst: &MonadInstance, ops: &MonadOps, caps: &Caps) -> Report {
    let mut r = check_monad_laws(inst, ops);
    r.extend(check_naturality(inst, inst, ops, caps));
    r
}

/// Builds the instance and runs [`check_monad`]; resource limits surface
/// as errors.
pub fn verify_monad(space: Arc<LTopSpace>, cfg: &MonadConfig, caps: &Caps) -> Result<Report> {
    let inst = MonadInstance::new(space, cfg, caps)?;
    Ok(check_monad(&inst, &MonadOps::default(), caps))
}

/// `μ'` that raises one value of `μ([u0])` to the top.
pub fn bumped_mu<'a>() -> Box<MuFn<'a>> {
    Box::new(|fs: &FilterSpace, alpha: &OpenFilter| {
        let mut out = fs.mult_unchecked(alpha);
        if fs.level() == 1 && !fs.is_empty() && *alpha == pointed(fs.space(), 0) {
            let f = fs.frame();
            if let Some(a) = out.values.iter().position(|&v| v != f.top()) {
                out.values[a] = f.top();
            }
        }
        out
    })
}

/// `η'(x) = [0_X]` (the filter constantly 1) for the first point, `[x]`
/// elsewhere.
pub fn principal_eta<'a>() -> Box<EtaFn<'a>> {
    Box::new(|fs: &FilterSpace, p: usize| {
        let x = fs.base_space();
        if p == 0 {
            principal(x, &LSubset::constant(x.len(), x.frame().bottom()))
        } else {
            fs.pointed(p)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltop::{discrete, indiscrete, sierpinski};
    use crate::report::Verdict;

    fn chain(n: usize) -> Arc<Frame> {
        Arc::new(Frame::chain(n).unwrap())
    }

    fn instance(sp: LTopSpace) -> MonadInstance {
        let caps = Caps::default();
        MonadInstance::new(Arc::new(sp), &MonadConfig::from_caps(&caps), &caps).unwrap()
    }

    #[test]
    fn monad_laws_on_micro_instances() {
        let caps = Caps::default();
        for sp in [
            sierpinski(chain(2), &caps).unwrap(),
            discrete(chain(2), 1, &caps).unwrap(),
            indiscrete(chain(2), 2, &caps).unwrap(),
            discrete(chain(3), 1, &caps).unwrap(),
        ] {
            let inst = instance(sp);
            let r = check_monad(&inst, &MonadOps::default(), &caps);
            assert!(r.all_passed(), "{}", r.to_text(false));
            assert_eq!(r.entries.len(), 9);
        }
    }

    #[test]
    fn one_point_chain2_is_fully_enumerated() {
        let inst = instance(discrete(chain(2), 1, &Caps::default()).unwrap());
        assert!(inst.level2_exhaustive());
        assert!(matches!(inst.level3, Level3::Full(_)));
    }

    #[test]
    fn sampled_level2_still_passes() {
        let caps = Caps::default();
        let s = Arc::new(sierpinski(chain(3), &caps).unwrap());
        let tight = Caps { filter_count: 40, ..caps };
        let inst = MonadInstance::new(s, &MonadConfig::from_caps(&tight), &tight).unwrap();
        assert!(!inst.level2_exhaustive());
        let r = check_monad(&inst, &MonadOps::default(), &caps);
        assert!(r.all_passed(), "{}", r.to_text(false));
        assert!(matches!(r.entry("monad.assoc").unwrap().mode, Mode::Sampled { .. }));
    }

    #[test]
    fn exhaustive_flag_turns_fallback_into_error() {
        let caps = Caps { filter_count: 40, ..Caps::default() };
        let s = Arc::new(sierpinski(chain(3), &Caps::default()).unwrap());
        let cfg = MonadConfig { exhaustive: true, ..MonadConfig::from_caps(&caps) };
        assert!(MonadInstance::new(s, &cfg, &caps).unwrap_err().is_resource_limit());
    }

    #[test]
    fn level2_samples_contain_generators() {
        let caps = Caps::default();
        let fs = FilterSpace::new(Arc::new(sierpinski(chain(2), &caps).unwrap()), &caps).unwrap();
        let (s, _) = generate_level2_samples(&fs, caps.level2_samples);
        for i in 0..fs.len() {
            assert!(s.contains(&pointed(fs.space(), i)));
            let lift = fs.lift(&fs.canonical_family(&fs.filters()[i])).unwrap();
            assert!(s.contains(&lift));
        }
        assert!(s.iter().all(|a| is_open_filter(fs.space(), &a.values)));
    }

    #[test]
    fn bumped_mu_is_caught() {
        let caps = Caps::default();
        let inst = instance(sierpinski(chain(2), &caps).unwrap());
        let ops = MonadOps { mu: bumped_mu(), ..MonadOps::default() };
        let r = check_monad(&inst, &ops, &caps);
        assert_eq!(r.verdict_of("monad.left_unit"), Some(Verdict::Fail));
    }

    #[test]
    fn broken_eta_is_caught() {
        let caps = Caps::default();
        let inst = instance(sierpinski(chain(2), &caps).unwrap());
        let ops = MonadOps { eta: principal_eta(), ..MonadOps::default() };
        let r = check_monad(&inst, &ops, &caps);
        assert_eq!(r.verdict_of("monad.eta_natural"), Some(Verdict::Fail));
        assert_eq!(r.verdict_of("monad.eta_continuous"), Some(Verdict::Fail));
    }

    #[test]
    fn naturality_between_spaces() {
        let caps = Caps::default();
        let a = instance(sierpinski(chain(2), &caps).unwrap());
        let b = instance(discrete(chain(2), 1, &caps).unwrap());
        let c = instance(indiscrete(chain(2), 2, &caps).unwrap());
        for (x, y) in [(&a, &b), (&b, &a), (&c, &a), (&a, &c)] {
            let r = check_naturality(x, y, &MonadOps::default(), &caps);
            assert!(r.all_passed(), "{}", r.to_text(false));
        }
    }
}
