//! Acceptance criteria 1-9. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use ofmonad::algebra::{check_algebra_is_lattice, check_lattice_is_algebra, roundtrip, structure_map_r, AlgebraWitness};
use ofmonad::filter::{check_filter_laws, FilterSpace};
use ofmonad::frame::{check_frame_laws_with, DEFAULT_LAW_SEED};
use ofmonad::ltop::{check_specialization, check_topology};
use ofmonad::monadlaws::{check_monad, Level3, MonadConfig, MonadInstance, MonadOps};
use ofmonad::mutations::MUTATIONS;
use ofmonad::oracle::{chain_poset, classical_filters, classical_topology, degeneration_check, oracle_algebra};
use ofmonad::registry::{continuous_lattices, crisp_instances, lattice, micro_spaces, poset_of, LATTICES};
use ofmonad::scott::ScottContext;
use ofmonad::suite::{run_suite, Suite, SuiteConfig};
use ofmonad::{Caps, Frame, LSubset, Mode, Report, Verdict};

const HEYTING_BOUND: Duration = Duration::from_secs(5);
const TOPOLOGY_BOUND: Duration = Duration::from_secs(10);
const FILTER_BOUND: Duration = Duration::from_secs(10);
const MONAD_BOUND: Duration = Duration::from_secs(120);
const FIRST_THEOREM_BOUND: Duration = Duration::from_secs(120);
const SECOND_THEOREM_BOUND: Duration = Duration::from_secs(120);
const DEGENERATION_BOUND: Duration = Duration::from_secs(30);
const MUTATION_BOUND: Duration = Duration::from_secs(60);
const DETERMINISM_BOUND: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn frame(spec: &str) -> Arc<Frame> {
    let caps = Caps::default();
    Arc::new(ofmonad::instance::parse_frame(spec, std::path::Path::new("."), &caps).expect("frame spec"))
}

fn first_failure(r: &Report) -> Option<String> {
    r.failures().next().map(|e| format!("{} on {}: {}", e.law, e.subject, e.witness.clone().unwrap_or_default()))
}

fn require_clean(what: &str, r: &Report) -> Result<(), String> {
    match first_failure(r) {
        Some(f) => Err(format!("{what}: {f}")),
        None => Ok(()),
    }
}

fn require_pass(what: &str, r: &Report, laws: &[&str]) -> Result<(), String> {
    for law in laws {
        match r.verdict_of(law) {
            Some(Verdict::Pass) => {}
            other => return Err(format!("{what}: {law} is {other:?}")),
        }
    }
    Ok(())
}

fn heyting() -> Outcome {
    let caps = Caps::default();
    let specs = [
        "chain:2",
        "chain:3",
        "chain:4",
        "chain:5",
        "powerset:1",
        "powerset:2",
        "powerset:3",
        "product:chain:2,chain:3",
    ];
    let mut checks = 0;
    for spec in specs {
        let r = check_frame_laws_with(&frame(spec), &caps, DEFAULT_LAW_SEED);
        require_clean(spec, &r)?;
        require_pass(spec, &r, &["heyting.adjunction", "heyting.infinite_distributive"])?;
        if let Some(e) = r.entries.iter().find(|e| e.mode != Mode::Exhaustive) {
            return Err(format!("{spec}: {} was not exhaustive", e.law));
        }
        checks += r.entries.len();
    }
    Ok(format!("{} frames, {checks} law entries, all exhaustive", specs.len()))
}

fn topology() -> Outcome {
    let caps = Caps::default();
    let mut n = 0;
    for spec in ["chain:2", "chain:3"] {
        for (name, s) in micro_spaces(&frame(spec), &caps).map_err(|e| e.to_string())? {
            let mut r = check_topology(&s.space);
            r.extend(check_specialization(&s.space, &caps));
            require_clean(&format!("{name}/{spec}"), &r)?;
            require_pass(&format!("{name}/{spec}"), &r, &["top.meet_closed", "top.join_closed", "top.constants", "top.base_identity"])?;
            n += 1;
        }
    }
    Ok(format!("{n} spaces"))
}

fn crisp_mask(space: &ofmonad::LTopSpace, a: &LSubset) -> u32 {
    let top = space.frame().top();
    a.values().iter().enumerate().fold(0, |m, (i, &v)| if v == top { m | 1 << i } else { m })
}

fn filter() -> Outcome {
    let caps = Caps::default();
    let laws = [
        "filter.meet_preserving",
        "filter.stratified",
        "filter.join_representation",
        "filter.principal_representation",
        "filter.meet_representation",
        "filter.principal_sub",
    ];
    let mut spaces = 0;
    let mut filters = 0;
    for spec in ["chain:2", "chain:3"] {
        for (name, s) in micro_spaces(&frame(spec), &caps).map_err(|e| e.to_string())? {
            let fs = FilterSpace::new(s.space.clone(), &caps).map_err(|e| format!("{name}/{spec}: {e}"))?;
            let r = check_filter_laws(&fs, &caps);
            require_clean(&format!("{name}/{spec}"), &r)?;
            require_pass(&format!("{name}/{spec}"), &r, &laws)?;
            spaces += 1;
            filters += fs.len();
        }
    }
    let s = ofmonad::ltop::sierpinski(frame("chain:2"), &caps).map_err(|e| e.to_string())?;
    let fs = FilterSpace::new(Arc::new(s), &caps).map_err(|e| e.to_string())?;
    let ours: BTreeSet<BTreeSet<u32>> = fs
        .filters()
        .iter()
        .map(|u| {
            let x = fs.base_space();
            x.opens().iter().enumerate().filter(|(a, _)| u.at(*a) == x.frame().top()).map(|(_, o)| crisp_mask(x, o)).collect()
        })
        .collect();
    let classical = classical_filters(&classical_topology(2, &[0b10]).map_err(|e| e.to_string())?, &caps).map_err(|e| e.to_string())?;
    let theirs: BTreeSet<BTreeSet<u32>> = classical.into_iter().collect();
    if fs.len() != 3 || ours != theirs {
        return Err(format!("Sierpinski/chain:2 has {} filters, oracle has {}", fs.len(), theirs.len()));
    }
    Ok(format!("{spaces} spaces, {filters} filters; Sierpinski/chain:2 has 3 filters matching the oracle"))
}

fn monad() -> Outcome {
    let caps = Caps::default();
    let exhaustive = MonadConfig { exhaustive: true, ..MonadConfig::from_caps(&caps) };
    let mut runs = Vec::new();
    for (name, s) in micro_spaces(&frame("chain:2"), &caps).map_err(|e| e.to_string())? {
        if s.space.len() <= 2 {
            runs.push((format!("{name}/chain:2"), s, exhaustive));
        }
    }
    for (name, s) in micro_spaces(&frame("chain:3"), &caps).map_err(|e| e.to_string())? {
        if s.space.len() == 1 {
            runs.push((format!("{name}/chain:3"), s, exhaustive));
        }
    }
    for (name, s, cfg) in &runs {
        let inst = MonadInstance::new(s.space.clone(), cfg, &caps).map_err(|e| format!("{name}: {e}"))?;
        let r = check_monad(&inst, &MonadOps::default(), &caps);
        require_clean(name, &r)?;
        require_pass(name, &r, &["monad.left_unit", "monad.right_unit", "monad.assoc", "monad.eta_natural", "monad.mu_natural"])?;
        if r.entries.iter().any(|e| e.mode != Mode::Exhaustive) {
            return Err(format!("{name}: not exhaustive"));
        }
    }
    let s = ofmonad::ltop::sierpinski(frame("chain:3"), &caps).map_err(|e| e.to_string())?;
    let inst = MonadInstance::new(Arc::new(s), &MonadConfig::from_caps(&caps), &caps).map_err(|e| e.to_string())?;
    let r = check_monad(&inst, &MonadOps::default(), &caps);
    require_clean("sierpinski/chain:3", &r)?;
    require_pass("sierpinski/chain:3", &r, &["monad.left_unit", "monad.right_unit", "monad.assoc"])?;
    let level3 = match &inst.level3 {
        Level3::Full(l3) => l3.len(),
        Level3::Sampled(xs) => xs.len(),
    };
    if level3 < 100 {
        return Err(format!("sierpinski/chain:3: associativity checked on {level3} level-3 elements"));
    }
    Ok(format!("{} exhaustive instances; sierpinski/chain:3 associativity over {level3} level-3 elements", runs.len()))
}

fn first_theorem() -> Outcome {
    let caps = Caps::default();
    let laws = [
        "algebra.lower_is_ideal",
        "algebra.pointed_lower_bounds",
        "algebra.preimage_below_phi",
        "algebra.waybelow_inf_bound",
        "algebra.unit",
        "algebra.assoc",
        "algebra.scott_limit",
        "algebra.continuity_via_pointed",
    ];
    let lattices = continuous_lattices(&caps).map_err(|e| e.to_string())?;
    for (name, order) in &lattices {
        let ctx = ScottContext::new(order.clone(), &caps).map_err(|e| format!("{name}: {e}"))?;
        if !ctx.is_continuous_lattice().map_err(|e| e.to_string())? {
            return Err(format!("{name}: not recognised as an L-continuous lattice"));
        }
        let (r, _) = check_lattice_is_algebra(order, &caps).map_err(|e| format!("{name}: {e}"))?;
        require_clean(name, &r)?;
        require_pass(name, &r, &laws)?;
    }
    Ok(format!("{} continuous lattices", lattices.len()))
}

/// Filter values keyed by the open they are taken at, so that witnesses
/// built over differently enumerated spaces can be compared.
fn keyed(fs: &FilterSpace, u: usize) -> BTreeMap<Vec<u8>, u8> {
    let x = fs.base_space();
    x.opens().iter().enumerate().map(|(a, o)| (o.values().iter().map(|e| e.0).collect(), fs.filters()[u].at(a).0)).collect()
}

fn second_theorem() -> Outcome {
    let caps = Caps::default();
    let laws = [
        "algebra.open_below_image",
        "algebra.filter_specialization",
        "algebra.sub_monotone",
        "algebra.limit",
        "algebra.complete",
        "algebra.directed_sup_preserved",
        "algebra.structure_formula",
        "algebra.continuous_lattice",
    ];
    let mut n = 0;
    for (name, order) in continuous_lattices(&caps).map_err(|e| e.to_string())? {
        let alg = structure_map_r(&order, &caps).map_err(|e| format!("{name}: {e}"))?;
        let r = check_algebra_is_lattice(&alg.witness, &caps).map_err(|e| format!("{name}: {e}"))?;
        require_clean(&name, &r)?;
        require_pass(&name, &r, &laws)?;
        let rt = roundtrip(&order, &caps).map_err(|e| format!("{name}: {e}"))?;
        require_clean(&name, &rt)?;
        require_pass(&name, &rt, &["roundtrip.specialization", "roundtrip.structure_map"])?;
        n += 1;
    }
    let mut oracles: Vec<(String, AlgebraWitness)> = Vec::new();
    for k in 1..=3 {
        let names = (0..k).map(|i| i.to_string()).collect();
        oracles.push((format!("oracle chain:{k}"), oracle_algebra(names, &chain_poset(k), &caps).map_err(|e| e.to_string())?));
    }
    for (name, _) in LATTICES {
        let lat = lattice(name).ok_or("unregistered lattice")?;
        let w = oracle_algebra(lat.names().to_vec(), &poset_of(&lat), &caps).map_err(|e| e.to_string())?;
        oracles.push((format!("oracle {name}"), w));
    }
    for (name, w) in &oracles {
        let r = check_algebra_is_lattice(w, &caps).map_err(|e| format!("{name}: {e}"))?;
        require_clean(name, &r)?;
        require_pass(name, &r, &laws)?;
        let order = w.space.specialization_order().map_err(|e| format!("{name}: {e}"))?;
        let back = structure_map_r(&order, &caps).map_err(|e| format!("{name}: {e}"))?.witness;
        let table: BTreeMap<_, usize> = (0..back.r.len()).map(|u| (keyed(&back.filter_space, u), back.r[u])).collect();
        for u in 0..w.r.len() {
            if table.get(&keyed(&w.filter_space, u)) != Some(&w.r[u]) {
                return Err(format!("{name}: roundtrip changes r at filter {u}"));
            }
        }
        n += 1;
    }
    Ok(format!("{n} algebras ({} oracle), roundtrip exact on all", oracles.len()))
}

fn degeneration() -> Outcome {
    let caps = Caps::default();
    let instances = crisp_instances(&caps).map_err(|e| e.to_string())?;
    for (name, inst) in &instances {
        let r = degeneration_check(inst, &caps).map_err(|e| format!("{name}: {e}"))?;
        require_clean(name, &r)?;
        require_pass(name, &r, &["oracle.opens", "oracle.filters"])?;
    }
    Ok(format!("{} chain:2 instances", instances.len()))
}

fn mutations() -> Outcome {
    let caps = Caps::default();
    let mut caught = Vec::new();
    for m in MUTATIONS {
        match m.detect(&caps).map_err(|e| format!("{}: {e}", m.name))? {
            Some(e) => caught.push(format!("{}->{}", m.name, e.law)),
            None => return Err(format!("{} not caught", m.name)),
        }
    }
    Ok(format!("{} of {} caught with witnesses", caught.len(), MUTATIONS.len()))
}

fn determinism() -> Outcome {
    let mut cfg = SuiteConfig::new(Suite::All);
    cfg.seed = 7;
    let a = run_suite(&cfg);
    let b = run_suite(&cfg);
    if a.exit_code != 0 {
        return Err(format!("verify all exited {}", a.exit_code));
    }
    let (ja, jb) = (a.report.to_json(), b.report.to_json());
    if ja != jb {
        return Err("structured reports differ".into());
    }
    Ok(format!("{} bytes identical across two runs", ja.len()))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("Heyting laws", HEYTING_BOUND, heyting),
        ("topology", TOPOLOGY_BOUND, topology),
        ("open filters", FILTER_BOUND, filter),
        ("monad laws", MONAD_BOUND, monad),
        ("continuous lattice is an algebra", FIRST_THEOREM_BOUND, first_theorem),
        ("algebra is a continuous lattice", SECOND_THEOREM_BOUND, second_theorem),
        ("degeneration to L = 2", DEGENERATION_BOUND, degeneration),
        ("mutation sensitivity", MUTATION_BOUND, mutations),
        ("determinism", DETERMINISM_BOUND, determinism),
    ];
    let mut failed = 0;
    for (i, (title, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *bound => Err(format!("{detail}; exceeded the {bound:?} bound")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({title}): {detail} [{took:.2?} < {bound:?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({title}): {why} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
