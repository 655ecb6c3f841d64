//! Verification reports: one entry per checked law, with the first
//! counterexample found in a deterministic scan order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub suite: String,
    pub law: String,
    pub subject: String,
    pub mode: Mode,
    pub verdict: Verdict,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall-clock time; kept out of the structured output so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Accumulates one law check. The first failing instance is kept as the
/// witness; later failures only bump the counter.
#[derive(Debug)]
pub struct LawCheck {
    entry: CheckEntry,
    failures: u64,
    start: Instant,
}

impl LawCheck {
    pub fn new(law: &str, subject: &str) -> Self {
        debug_assert!(law_description(law).is_some(), "law `{law}` missing from catalogue");
        LawCheck {
            entry: CheckEntry {
                suite: String::new(),
                law: law.to_string(),
                subject: subject.to_string(),
                mode: Mode::Exhaustive,
                verdict: Verdict::Pass,
                checked: 0,
                witness: None,
                note: None,
                elapsed: Duration::ZERO,
            },
            failures: 0,
            start: Instant::now(),
        }
    }

    pub fn sampled(mut self, samples: usize) -> Self {
        self.entry.mode = Mode::Sampled { samples };
        self
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.entry.mode = mode;
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.entry.note = Some(note.into());
        self
    }

    pub fn set_note(&mut self, note: impl Into<String>) {
        self.entry.note = Some(note.into());
    }

    /// Records one instance. Returns `ok` so callers can stop early.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.entry.checked += 1;
        if !ok {
            self.failures += 1;
            if self.entry.witness.is_none() {
                self.entry.witness = Some(witness());
            }
        }
        ok
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.check(false, || witness.into());
    }

    pub fn failed(&self) -> bool {
        self.failures > 0
    }

    pub fn finish(mut self) -> CheckEntry {
        if self.failures > 0 {
            self.entry.verdict = Verdict::Fail;
        }
        self.entry.elapsed = self.start.elapsed();
        self.entry
    }

    /// An entry for a check that could not run, e.g. because a precondition
    /// does not hold on this instance.
    pub fn skipped(law: &str, subject: &str, reason: impl Into<String>) -> CheckEntry {
        let mut c = LawCheck::new(law, subject);
        c.entry.verdict = Verdict::Skipped;
        c.entry.note = Some(reason.into());
        c.finish()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub metadata: BTreeMap<String, String>,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new() -> Self {
        Report { schema_version: REPORT_SCHEMA_VERSION, ..Default::default() }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    /// Tags every entry that has no suite yet.
    pub fn in_suite(mut self, suite: &str) -> Self {
        for e in &mut self.entries {
            if e.suite.is_empty() {
                e.suite = suite.to_string();
            }
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    pub fn entry(&self, law: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.law == law)
    }

    pub fn verdict_of(&self, law: &str) -> Option<Verdict> {
        let mut matching = self.entries.iter().filter(|e| e.law == law).peekable();
        matching.peek()?;
        Some(matching.map(|e| e.verdict).max().unwrap_or(Verdict::Pass))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, with_timing: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let mut suite = "";
        for e in &self.entries {
            if e.suite != suite {
                suite = &e.suite;
                let _ = writeln!(out, "\n== {suite}");
            }
            let verdict = match e.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIP",
            };
            let mode = match e.mode {
                Mode::Exhaustive => "exhaustive".to_string(),
                Mode::Sampled { samples } => format!("{samples} samples"),
            };
            let _ = write!(out, "{verdict} {:<34} {:<28} {mode}, {} checks", e.law, e.subject, e.checked);
            if with_timing {
                let _ = write!(out, ", {:.1?}", e.elapsed);
            }
            out.push('\n');
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "     witness: {w}");
            }
            if let Some(n) = &e.note {
                let _ = writeln!(out, "     note: {n}");
            }
        }
        let fails = self.failures().count();
        let _ = writeln!(out, "\n{} checks, {} failed", self.entries.len(), fails);
        out
    }
}

/// Every law identifier a report may carry, with the statement it checks.
pub const LAWS: &[(&str, &str)] = &[
    // frames
    ("frame.partial_order", "the order table is reflexive, antisymmetric and transitive"),
    ("frame.meet_is_glb", "meet(a,b) is the greatest lower bound of a and b"),
    ("frame.join_is_lub", "join(a,b) is the least upper bound of a and b"),
    ("frame.bounds", "bottom and top are the least and greatest elements"),
    ("heyting.adjunction", "c <= a->b iff a∧c <= b"),
    ("heyting.infinite_distributive", "a ∧ ⋁S = ⋁{a∧s : s in S} for every subset S"),
    ("heyting.imp_top_iff_leq", "a->b = 1 iff a <= b"),
    ("heyting.top_imp", "1->a = a"),
    ("heyting.modus_ponens", "a ∧ (a->b) = a ∧ b"),
    ("heyting.unit_counit", "b <= a->(a∧b) and a <= (a->b)->b"),
    ("heyting.imp_transitive", "(a->b) ∧ (b->c) <= a->c"),
    ("heyting.join_antecedent", "(⋁a_i)->b = ⋀(a_i->b)"),
    ("heyting.meet_consequent", "a->(⋀b_j) = ⋀(a->b_j)"),
    ("heyting.meet_family", "(⋀a_i)->(⋀c_i) >= ⋀(a_i->c_i)"),
    ("heyting.join_family", "(⋁a_i)->(⋁c_i) >= ⋀(a_i->c_i)"),
    ("heyting.imp_covariant", "(c->a)->(c->b) >= a->b"),
    ("heyting.imp_contravariant", "(a->c)->(b->c) >= b->a"),
    ("heyting.currying", "a->(b->c) = (a∧b)->c = b->(a->c)"),
    ("heyting.meet_weakening", "b->c <= (a∧b)->(a->c)"),
    // topologies
    ("top.meet_closed", "opens are closed under binary meets"),
    ("top.join_closed", "opens are closed under joins of subfamilies"),
    ("top.constants", "every constant L-subset is open"),
    ("top.base_generates", "every open is a join of base members meeted with constants"),
    ("top.base_identity", "A(x) = ⋁_B B(x) ∧ sub(B,A) over base members B"),
    ("top.idempotent", "closing the opens of a topology again gives the same family"),
    ("top.t0", "open value vectors separate points"),
    ("top.specialization_order", "the specialization L-order satisfies reflexivity, transitivity and antisymmetry"),
    ("top.continuity_base_criterion", "continuity via base preimages agrees with continuity via all opens"),
    // L-orders
    ("order.reflexive", "e(x,x) = 1"),
    ("order.transitive", "e(x,y) ∧ e(y,z) <= e(x,z)"),
    ("order.antisymmetric", "e(x,y) = e(y,x) = 1 implies x = y"),
    ("order.complete", "every L-subset has a supremum"),
    ("order.complete_by_infima", "every L-subset has an infimum"),
    ("order.top_bottom", "a complete order has top and bottom with e(x,top) = e(bottom,x) = 1"),
    ("order.sandwich", "A <= B <= C with sup A = sup C = x gives sup B = x"),
    ("order.yoneda_left", "⋀_z e(x,z)->e(y,z) = e(y,x)"),
    ("order.yoneda_right", "⋀_z e(z,x)->e(z,y) = e(x,y)"),
    ("order.sup_of_down", "sup of the principal lower set of x is x, inf of the upper set is x"),
    ("order.bounds_of_cones", "A <= up(inf A) ∧ down(sup A)"),
    ("order.sup_via_upper_cone", "sup A = inf of the upper cone, inf A = sup of the lower cone"),
    ("order.dcpo", "every directed L-subset has a supremum"),
    ("order.dcpo_by_ideals", "every ideal has a supremum"),
    ("order.self_sup_formula", "on (L, e_L) the supremum of A is ⋁ a ∧ A(a)"),
    ("lset.sub_is_order", "sub is an L-order on all L-subsets"),
    ("lset.image_preimage_adjoint", "sub(image f A, B) = sub(A, preimage f B)"),
    ("lset.powerset_sup_formula", "suprema in (L^X, sub) are given by ⋁_A A ∧ family(A)"),
    // Scott topology and way-below
    ("scott.conditions_agree", "the four Scott-openness conditions agree on every L-subset"),
    ("scott.topology", "Scott open L-subsets form a stratified L-topology"),
    ("scott.t0", "the Scott topology of a continuous lattice is T0"),
    ("scott.waybelow_below", "waybelow(x)(y) <= e(y,x)"),
    ("scott.waybelow_stable", "e(y1,y) ∧ waybelow(x)(y) ∧ e(x,x1) <= waybelow(x1)(y1)"),
    ("scott.waybelow_in_ideal", "x = sup I implies waybelow(x) <= I"),
    ("scott.waybelow_sup_in_ideal", "waybelow(sup I)(x) <= I(x)"),
    ("scott.interpolation", "waybelow(x)(y) = ⋁_z waybelow(z)(y) ∧ waybelow(x)(z)"),
    ("scott.upper_waybelow_base", "the sets waybelow-upper(x) are Scott open and form a base of the Scott topology"),
    ("scott.continuous_lattice", "sup of waybelow(x) is x for every x"),
    // filters
    ("filter.meet_preserving", "u(A∧B) = u(A) ∧ u(B)"),
    ("filter.stratified", "u(a_X) >= a"),
    ("filter.join_representation", "u(B) = ⋁_A u(A) ∧ sub(A,B)"),
    ("filter.principal_representation", "u = ⋁_A u(A) ∧ [A] pointwise"),
    ("filter.meet_representation", "u(B) = ⋀_A sub(B,A) -> u(A)"),
    ("filter.principal_sub", "u(B) = sub([B], u)"),
    ("filter.pointed_present", "every pointed filter [x] is enumerated"),
    ("filter.principal_antitone", "A <= B pointwise gives [B] <= [A]"),
    ("filter.space_t0", "the filter space is T0"),
    ("filter.phi_base", "the sets phi(A) form a base of the filter-space topology"),
    ("filter.phi_constants", "phi(a_X) >= a on every filter"),
    ("filter.sub_order", "sub is an L-order on the filters"),
    ("filter.specialization_is_sub", "the specialization order of the filter space equals sub"),
    ("filter.lim_pointed", "lim [x](x) = 1"),
    ("filter.lim_monotone", "lim u(x) >= lim v(x) ∧ sub(v,u)"),
    ("filter.unit_preimage", "preimage of phi(U) under the unit is U"),
    ("filter.directed_sup", "a directed family of filters has supremum ⋁ A(u) ∧ u"),
    ("filter.lift_is_filter", "the lift of a directed family is a level-2 filter"),
    ("filter.lift_mult", "multiplication of the lift equals the directed supremum"),
    ("filter.lift_constants", "the lift sends constants a to a"),
    ("filter.canonical_directed", "the canonical family of u is directed with supremum u"),
    ("filter.pushforward_pointed", "pushforward of [x] along f is [f(x)]"),
    ("filter.pushforward_identity", "pushforward along the identity is the identity"),
    ("filter.pushforward_compose", "pushforward along g∘f equals pushforward along g after f"),
    ("filter.pushforward_phi", "preimage of phi(B) under the pushforward map is phi(preimage of B)"),
    // monad
    ("monad.eta_continuous", "the unit X -> Φ(X) is continuous"),
    ("monad.eta_natural", "η_Y ∘ f = Φf ∘ η_X"),
    ("monad.functor_continuous", "Φf is continuous whenever f is"),
    ("monad.mu_well_defined", "multiplication sends level-2 filters to filters"),
    ("monad.mu_continuous", "preimage of phi(A) under multiplication is phi(phi(A))"),
    ("monad.mu_natural", "μ_Y ∘ Φ²f = Φf ∘ μ_X"),
    ("monad.left_unit", "μ ∘ η_Φ = id"),
    ("monad.right_unit", "μ ∘ Φη = id"),
    ("monad.assoc", "μ ∘ Φμ = μ ∘ μ_Φ"),
    // algebras
    ("algebra.lower_is_ideal", "u^l is an ideal"),
    ("algebra.pointed_lower_bounds", "waybelow(x) <= [x]^l <= down(x)"),
    ("algebra.structure_continuous", "the structure map is continuous"),
    ("algebra.unit", "r ∘ η = id"),
    ("algebra.assoc", "r ∘ Φr = r ∘ μ"),
    ("algebra.preimage_below_phi", "preimage of a Scott open A under r is below phi(A)"),
    ("algebra.waybelow_inf_bound", "waybelow(inf A)(x) <= sub(phi(A), preimage under r of waybelow-upper(x))"),
    ("algebra.scott_limit", "lim_S u(x) = e(x, r(u))"),
    ("algebra.continuity_via_pointed", "continuous lattice iff x = sup [x]^l for every x"),
    ("algebra.open_below_image", "A <= image under r of phi(A)"),
    ("algebra.filter_specialization", "⋀_W W(u)->W(v) = ⋀_A u(A)->v(A)"),
    ("algebra.sub_monotone", "sub(u,v) <= e(r(u), r(v))"),
    ("algebra.limit", "lim u(x) = e(x, r(u))"),
    ("algebra.complete", "the specialization order is complete with inf A = r([A])"),
    ("algebra.directed_sup_preserved", "r preserves suprema of directed families of filters"),
    ("algebra.structure_formula", "r(u) = sup u^l"),
    ("algebra.continuous_lattice", "the specialization order is an L-continuous lattice"),
    ("roundtrip.specialization", "the Scott specialization order recovers the original order"),
    ("roundtrip.structure_map", "the recovered structure map equals the original one"),
    // two-valued cross-validation
    ("oracle.opens", "fuzzy opens correspond to the classical opens"),
    ("oracle.filters", "fuzzy open filters correspond to the classical open filters"),
    ("oracle.waybelow", "fuzzy way-below corresponds to the classical way-below relation"),
    ("oracle.structure_map", "fuzzy structure map corresponds to the classical one"),
];

/// Status entries any suite may emit instead of its laws.
pub const SUITE_STATUS: &[(&str, &str)] = &[
    ("precondition", "the instance satisfies what the suite needs to run"),
    ("resource_limit", "the suite fits within the enumeration caps"),
];

pub fn law_description(law: &str) -> Option<&'static str> {
    if let Some(d) = LAWS.iter().find(|(id, _)| *id == law).map(|(_, d)| *d) {
        return Some(d);
    }
    let (_, status) = law.split_once('.')?;
    SUITE_STATUS.iter().find(|(id, _)| *id == status).map(|(_, d)| *d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_covers_suite_status_entries() {
        assert!(law_description("monad.assoc").is_some());
        assert!(law_description("filter.resource_limit").is_some());
        assert!(law_description("algebra.precondition").is_some());
        assert!(law_description("filter.no_such_law").is_none());
    }

    #[test]
    fn law_ids_are_unique() {
        let mut ids: Vec<_> = LAWS.iter().map(|(id, _)| *id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), LAWS.len());
    }
}
