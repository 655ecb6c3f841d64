//! The micro instances every suite is exercised on.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::Result;
use crate::frame::{FiniteLattice, Frame};
use crate::instance::{space_preset, SpaceInstance};
use crate::lorder::LOrder;
use crate::lset::LSubset;
use crate::ltop::LTopSpace;
use crate::oracle::{CrispInstance, CrispPoset};

/// Cover relations of small lattices, as accepted by `covers:` files.
pub const LATTICES: &[(&str, &str)] = &[
    ("diamond", "0 < a\n0 < b\na < 1\nb < 1\n"),
    ("m3", "0 < a\n0 < b\n0 < c\na < 1\nb < 1\nc < 1\n"),
    ("n5", "0 < a\na < b\nb < 1\n0 < c\nc < 1\n"),
];

pub fn lattice(name: &str) -> Option<FiniteLattice> {
    let (_, text) = LATTICES.iter().find(|(n, _)| *n == name)?;
    FiniteLattice::from_covers(&FiniteLattice::parse_covers(text).ok()?).ok()
}

fn generated(frame: &Arc<Frame>, points: &[&str], gens: &[&[(usize, usize)]], caps: &Caps) -> Result<SpaceInstance> {
    let top = frame.len() - 1;
    let generators: Vec<LSubset> = gens
        .iter()
        .map(|g| {
            let mut v = vec![frame.bottom(); points.len()];
            for &(x, level) in *g {
                v[x] = crate::frame::Elem(level.min(top) as u8);
            }
            LSubset(v)
        })
        .collect();
    let names = points.iter().map(|s| s.to_string()).collect();
    let space = Arc::new(LTopSpace::generate(frame.clone(), names, &generators, caps)?);
    Ok(SpaceInstance { space, generators })
}

/// Presets plus a few generated spaces: a three-point chain of upper sets
/// and, over frames with a middle element, spaces with graded generators.
/// Discrete spaces are kept to |L|^n <= 16; beyond that the filter space
/// alone takes seconds to build.
/// Element levels index the frame in its own element order, so they are
/// meaningful on chains.
pub fn micro_spaces(frame: &Arc<Frame>, caps: &Caps) -> Result<Vec<(String, SpaceInstance)>> {
    let mut out = Vec::new();
    for spec in ["sierpinski", "discrete:1", "discrete:2", "discrete:3", "indiscrete:2", "indiscrete:3"] {
        if let Some(n) = spec.strip_prefix("discrete:") {
            if Caps::checked_power(frame.len(), n.parse().expect("preset size"), 16).is_none() {
                continue;
            }
        }
        let s = space_preset(spec, frame.clone(), caps)?.expect("preset");
        out.push((spec.to_string(), s));
    }
    let top = frame.len() - 1;
    out.push(("upper-chain:3".into(), generated(frame, &["x", "y", "z"], &[&[(1, top), (2, top)], &[(2, top)]], caps)?));
    if frame.len() > 2 {
        out.push(("graded-pair".into(), generated(frame, &["x", "y"], &[&[(0, 1), (1, top)]], caps)?));
        out.push(("graded-split".into(), generated(frame, &["x", "y"], &[&[(0, 1)], &[(1, 1)]], caps)?));
    }
    Ok(out)
}

/// Orders that should be L-continuous lattices: crisp chains and small
/// crisp lattices over chain:2, and `(L, e_L)` for small chains.
pub fn continuous_lattices(caps: &Caps) -> Result<Vec<(String, LOrder)>> {
    let two = Arc::new(Frame::chain_capped(2, caps)?);
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("crisp-chain:{n}"), LOrder::crisp_chain(two.clone(), n)?));
    }
    for (name, _) in LATTICES {
        out.push((format!("crisp-lattice:{name}"), LOrder::crisp_lattice(two.clone(), &lattice(name).expect("registered"))?));
    }
    for n in [2, 3] {
        out.push((format!("selfL:chain:{n}"), LOrder::self_order(Arc::new(Frame::chain_capped(n, caps)?))));
    }
    Ok(out)
}

/// Classical counterparts: the chain:2 micro spaces as bitmask topologies
/// and the crisp lattices as posets.
pub fn crisp_instances(caps: &Caps) -> Result<Vec<(String, CrispInstance)>> {
    let two = Arc::new(Frame::chain_capped(2, caps)?);
    let mut out = Vec::new();
    for (name, s) in micro_spaces(&two, caps)? {
        let inst = CrispInstance::Space { points: s.space.points().to_vec(), generators: s.crisp_generators()? };
        out.push((name, inst));
    }
    for n in 1..=3 {
        out.push((format!("chain:{n}"), CrispInstance::Lattice { names: names(n), poset: crate::oracle::chain_poset(n) }));
    }
    for (name, _) in LATTICES {
        let lat = lattice(name).expect("registered");
        out.push((name.to_string(), CrispInstance::Lattice { names: lat.names().to_vec(), poset: poset_of(&lat) }));
    }
    Ok(out)
}

pub fn poset_of(lat: &FiniteLattice) -> CrispPoset {
    let els: Vec<_> = lat.elements().collect();
    CrispPoset { leq: els.iter().map(|&a| els.iter().map(|&b| lat.leq(a, b)).collect()).collect() }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}
