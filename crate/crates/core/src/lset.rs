//! L-subsets of a finite carrier, stored as flat value arrays over a fixed
//! enumeration of the points.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LSubset(pub Vec<Elem>);

impl LSubset {
    pub fn constant(n: usize, a: Elem) -> LSubset {
        LSubset(vec![a; n])
    }

    /// The crisp L-subset with value top on `members` and bottom elsewhere.
    pub fn characteristic(f: &Frame, n: usize, members: &[usize]) -> LSubset {
        let mut v = vec![f.bottom(); n];
        for &i in members {
            v[i] = f.top();
        }
        LSubset(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> Elem {
        self.0[x]
    }

    pub fn values(&self) -> &[Elem] {
        &self.0
    }

    pub fn leq(&self, f: &Frame, other: &LSubset) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| f.leq(a, b))
    }

    pub fn meet(&self, f: &Frame, other: &LSubset) -> LSubset {
        LSubset(self.0.iter().zip(&other.0).map(|(&a, &b)| f.meet(a, b)).collect())
    }

    pub fn join(&self, f: &Frame, other: &LSubset) -> LSubset {
        LSubset(self.0.iter().zip(&other.0).map(|(&a, &b)| f.join(a, b)).collect())
    }

    /// Pointwise `a ∧ self`.
    pub fn scale(&self, f: &Frame, a: Elem) -> LSubset {
        LSubset(self.0.iter().map(|&v| f.meet(a, v)).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_crisp(&self, f: &Frame) -> bool {
        self.0.iter().all(|&v| v == f.top() || v == f.bottom())
    }

    /// Position in the canonical enumeration of L^X: `Σ A(x_i)·|L|^i`.
    pub fn index(&self, l: usize) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, v| acc * l as u64 + v.0 as u64)
    }

    pub fn from_index(mut idx: u64, n: usize, l: usize) -> LSubset {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(Elem((idx % l as u64) as u8));
            idx /= l as u64;
        }
        LSubset(v)
    }

    /// `{x: a, y: b}` using frame element names.
    pub fn render(&self, f: &Frame, points: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}: {}", points.get(i).map(String::as_str).unwrap_or("?"), f.name(v)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn check_same(f: &Frame, a: &LSubset, b: &LSubset) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameter(format!(
            "L-subsets over carriers of size {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(v) = a.0.iter().chain(&b.0).find(|v| !f.contains(**v)) {
        return Err(Error::InvalidParameter(format!("{v} is not an element of the frame")));
    }
    Ok(())
}

/// `sub(A,B) = ⋀_x A(x) -> B(x)`, top on the empty carrier.
#[inline]
pub fn sub(f: &Frame, a: &LSubset, b: &LSubset) -> Elem {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = f.top();
    for (&x, &y) in a.0.iter().zip(&b.0) {
        acc = f.meet(acc, f.imp(x, y));
    }
    acc
}

pub fn try_sub(f: &Frame, a: &LSubset, b: &LSubset) -> Result<Elem> {
    check_same(f, a, b)?;
    Ok(sub(f, a, b))
}

/// A total map between finite carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CarrierMap {
    pub graph: Vec<usize>,
    pub target_len: usize,
}

impl CarrierMap {
    pub fn new(graph: Vec<usize>, target_len: usize) -> Result<CarrierMap> {
        if let Some(&y) = graph.iter().find(|&&y| y >= target_len) {
            return Err(Error::InvalidParameter(format!("map sends a point to {y}, outside a target of size {target_len}")));
        }
        Ok(CarrierMap { graph, target_len })
    }

    pub fn identity(n: usize) -> CarrierMap {
        CarrierMap { graph: (0..n).collect(), target_len: n }
    }

    pub fn constant(n: usize, target_len: usize, y: usize) -> CarrierMap {
        CarrierMap { graph: vec![y; n], target_len }
    }

    pub fn source_len(&self) -> usize {
        self.graph.len()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &CarrierMap) -> Result<CarrierMap> {
        if self.target_len != g.source_len() {
            return Err(Error::InvalidParameter("maps do not compose".into()));
        }
        Ok(CarrierMap { graph: self.graph.iter().map(|&y| g.graph[y]).collect(), target_len: g.target_len })
    }

    /// Every map from an `n`-point carrier to an `m`-point carrier.
    pub fn all(n: usize, m: usize) -> impl Iterator<Item = CarrierMap> {
        let total = if m == 0 { u64::from(n == 0) } else { (m as u64).pow(n as u32) };
        (0..total).map(move |mut i| {
            let mut graph = Vec::with_capacity(n);
            for _ in 0..n {
                graph.push((i % m as u64) as usize);
                i /= m as u64;
            }
            CarrierMap { graph, target_len: m }
        })
    }
}

/// `f^←(B) = B ∘ f`.
pub fn preimage(map: &CarrierMap, b: &LSubset) -> Result<LSubset> {
    if b.len() != map.target_len {
        return Err(Error::InvalidParameter("preimage: L-subset is not over the map's target".into()));
    }
    Ok(LSubset(map.graph.iter().map(|&y| b.get(y)).collect()))
}

/// `f^→(A)(y) = ⋁_{f(x)=y} A(x)`, bottom on empty fibres.
pub fn image(f: &Frame, map: &CarrierMap, a: &LSubset) -> Result<LSubset> {
    if a.len() != map.source_len() {
        return Err(Error::InvalidParameter("image: L-subset is not over the map's source".into()));
    }
    let mut out = vec![f.bottom(); map.target_len];
    for (x, &y) in map.graph.iter().enumerate() {
        out[y] = f.join(out[y], a.get(x));
    }
    Ok(LSubset(out))
}

/// `|L|^n` if it is within the L-subset enumeration cap.
pub fn space_size(f: &Frame, n: usize, caps: &Caps) -> Result<u64> {
    Caps::checked_power(f.len(), n, caps.lsubset_space).ok_or_else(|| {
        Error::resource(
            "L-subset enumeration",
            format!("|L|^|X| = {}^{} exceeds the cap {}", f.len(), n, caps.lsubset_space),
        )
    })
}

/// All of L^X in canonical index order.
pub fn all_lsubsets(f: &Frame, n: usize, caps: &Caps) -> Result<Vec<LSubset>> {
    let total = space_size(f, n, caps)?;
    let l = f.len();
    Ok((0..total).map(|i| LSubset::from_index(i, n, l)).collect())
}

/// Suprema and infima in `(L^X, sub)`: for a family `𝒜` indexed by the
/// canonical enumeration, `⊔𝒜 = ⋁_A A ∧ 𝒜(A)` and `⊓𝒜 = ⋀_A 𝒜(A) -> A`.
pub fn powerset_sup_inf(f: &Frame, n: usize, family: &LSubset, caps: &Caps) -> Result<(LSubset, LSubset)> {
    let all = all_lsubsets(f, n, caps)?;
    if family.len() != all.len() {
        return Err(Error::InvalidParameter(format!(
            "family has {} values, L^X has {} members",
            family.len(),
            all.len()
        )));
    }
    let mut sup = LSubset::constant(n, f.bottom());
    let mut inf = LSubset::constant(n, f.top());
    for (a, &w) in all.iter().zip(family.values()) {
        for x in 0..n {
            sup.0[x] = f.join(sup.0[x], f.meet(a.get(x), w));
            inf.0[x] = f.meet(inf.0[x], f.imp(w, a.get(x)));
        }
    }
    Ok((sup, inf))
}

fn check_over_frame(f: &Frame, a: &LSubset) -> Result<()> {
    if a.len() != f.len() {
        return Err(Error::InvalidParameter(format!(
            "expected an L-subset of the frame itself ({} points), got {}",
            f.len(),
            a.len()
        )));
    }
    Ok(())
}

/// Supremum in `(L, e_L)`: `⋁_a a ∧ A(a)`.
pub fn sup_in_frame(f: &Frame, a: &LSubset) -> Result<Elem> {
    check_over_frame(f, a)?;
    Ok(f.join_all(f.elements().map(|x| f.meet(x, a.get(x.idx())))))
}

/// Infimum in `(L, e_L)`: `⋀_a A(a) -> a`.
pub fn inf_in_frame(f: &Frame, a: &LSubset) -> Result<Elem> {
    check_over_frame(f, a)?;
    Ok(f.meet_all(f.elements().map(|x| f.imp(a.get(x.idx()), x))))
}
