//! The three minimal-weight recipes and the two weight-set recipes.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::{ExtensionShape, InertialParam, IrreducibleParam, ReducibleParam, normalize_level2};
use crate::prime::Prime;
use crate::weights::{for_each_jh_factor, k_min_closed, SerreWeight};

/// A set of Serre weights for one prime, iterated in `(a, b)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    p: Prime,
    weights: BTreeSet<SerreWeight>,
}

impl WeightSet {
    pub fn new(p: Prime) -> Self {
        WeightSet { p, weights: BTreeSet::new() }
    }

    pub fn from_weights(p: Prime, ws: impl IntoIterator<Item = SerreWeight>) -> Self {
        let mut set = WeightSet::new(p);
        for w in ws {
            set.insert(w);
        }
        set
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn insert(&mut self, w: SerreWeight) {
        assert_eq!(w.p(), self.p, "mixing weights of different primes");
        self.weights.insert(w);
    }

    pub fn contains(&self, w: &SerreWeight) -> bool {
        self.weights.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SerreWeight> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn twist(&self, t: i64) -> WeightSet {
        WeightSet::from_weights(self.p, self.iter().map(|w| w.twist(t)))
    }

    /// Weights in exactly one of the two sets.
    pub fn symmetric_difference<'a>(&'a self, other: &'a WeightSet) -> impl Iterator<Item = &'a SerreWeight> {
        self.weights.symmetric_difference(&other.weights)
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for w in self.iter() {
            seq.serialize_element(w)?;
        }
        seq.end()
    }
}

/// Serre's minimal weight `k(ρ)`.
pub fn serre_k(param: &InertialParam) -> u64 {
    match param {
        InertialParam::Irreducible(x) => {
            let p = x.p().get() as u64;
            p * x.a() as u64 + x.b() as u64 + 1
        }
        InertialParam::Reducible(x) => serre_k_reducible(x),
    }
}

fn serre_k_reducible(x: &ReducibleParam) -> u64 {
    let p = x.p().get() as u64;
    let m = x.twist() as u64;
    let pm1 = p - 1;
    match x.shape() {
        // Tamely ramified: both exponents taken in [0, p-2].
        ExtensionShape::Split => {
            let y = (m + x.ratio() as u64) % pm1;
            let (a, b) = (m.min(y), m.max(y));
            if (a, b) == (0, 0) {
                p
            } else {
                p * a + b + 1
            }
        }
        // Wildly ramified: α = m ∈ [0, p-2] for the quotient, β ∈ [1, p-1]
        // for the sub.
        shape => {
            let alpha = m;
            let beta = (m + x.ratio() as u64 + pm1 - 1) % pm1 + 1;
            if beta == alpha + 1 {
                match shape {
                    ExtensionShape::Tres => p + 1 + alpha * (p + 1),
                    _ => 2 + alpha * (p + 1),
                }
            } else {
                p * alpha.min(beta) + alpha.max(beta) + 1
            }
        }
    }
}

/// The Buzzard–Diamond–Jarvis weight set `W(ρ)`.
pub fn bdj_weight_set(param: &InertialParam) -> WeightSet {
    match param {
        InertialParam::Irreducible(x) => bdj_irreducible(x),
        InertialParam::Reducible(x) => bdj_reducible(x),
    }
}

fn bdj_irreducible(x: &IrreducibleParam) -> WeightSet {
    let p = x.p();
    let pp = p.get();
    let s = x.b() - x.a();
    WeightSet::from_weights(
        p,
        [SerreWeight::reduced(p, 0, s), SerreWeight::reduced(p, s as i64 - 1, pp + 1 - s)],
    )
    .twist(x.a() as i64)
}

fn bdj_reducible(x: &ReducibleParam) -> WeightSet {
    let p = x.p();
    let pp = p.get();
    let bb = if x.ratio() >= 1 { x.ratio() } else { pp - 1 };
    let split = x.shape().is_split();
    let v = |a: u32, b: u32| SerreWeight::reduced(p, a as i64, b);
    let row: Vec<SerreWeight> = if bb == pp - 1 {
        vec![v(0, pp - 1)]
    } else if bb > 1 && !split {
        vec![v(0, bb)]
    } else if bb > 1 && bb < pp - 2 {
        vec![v(0, bb), v(bb, pp - 1 - bb)]
    } else if bb > 1 {
        // bb = p - 2, split, p > 3 (for p = 3, bb > 1 forces bb = p - 1).
        vec![v(0, pp - 2), v(pp - 2, pp), v(pp - 2, 1)]
    } else if x.shape() == ExtensionShape::Tres {
        vec![v(0, pp)]
    } else if split && pp > 3 {
        vec![v(0, pp), v(0, 1), v(1, pp - 2)]
    } else if split {
        vec![v(0, 3), v(0, 1), v(1, 3), v(1, 1)]
    } else {
        vec![v(0, pp), v(0, 1)]
    };
    WeightSet::from_weights(p, row).twist(x.twist() as i64)
}

/// `min_{V ∈ W(ρ)} k_min(V)`.
pub fn k_min_of_set(param: &InertialParam) -> u64 {
    bdj_weight_set(param)
        .iter()
        .map(k_min_closed)
        .min()
        .expect("every weight set is non-empty")
}

/// Kisin's multiplicity `μ_{n,m}(ρ)` attached to `σ_{n,m} = V_{m,n+1}`, for
/// `0 ≤ n ≤ p-1`, `0 ≤ m ≤ p-2`.
pub fn kisin_mu(param: &InertialParam, n: u32, m: u32) -> Result<u8> {
    let p = param.p();
    if n > p.get() - 1 || m > p.get() - 2 {
        return Err(Error::IndexOutOfRange { p: p.get(), n, m });
    }
    Ok(match param {
        InertialParam::Irreducible(x) => mu_irreducible(x, n, m),
        InertialParam::Reducible(x) => mu_reducible(x, n, m),
    })
}

fn mu_irreducible(x: &IrreducibleParam, n: u32, m: u32) -> u8 {
    let p = x.p();
    let e = m as i64 * (p.get() as i64 + 1) + n as i64 + 1;
    // n + 1 ≤ p < p + 1, so the cell itself is never level one.
    match normalize_level2(p, e) {
        Ok(ab) if ab == (x.a(), x.b()) => 1,
        _ => 0,
    }
}

fn mu_reducible(x: &ReducibleParam, n: u32, m: u32) -> u8 {
    let p = x.p();
    let pp = p.get();
    let pm1 = p.pm1();
    let ratio = x.ratio() as i64;
    let twist = x.twist() as i64;
    let cell_ratio = (n as i64 + 1).rem_euclid(pm1);
    let cell_twist = m as i64;

    // Presentation with the sub ω^{m+r} μ_λ on top.
    let direct = cell_twist == twist && cell_ratio == ratio.rem_euclid(pm1);
    // A split ρ also presents with the two characters swapped.
    let swapped = x.shape().is_split()
        && cell_twist == (twist + ratio).rem_euclid(pm1)
        && cell_ratio == (-ratio).rem_euclid(pm1);
    if !(direct || swapped) {
        return 0;
    }

    let lambda_equal = x.lambda_equal();
    match x.shape() {
        ExtensionShape::Split | ExtensionShape::Peu if n == pp - 1 && lambda_equal => 2,
        ExtensionShape::Tres if n == 0 && lambda_equal => 0,
        ExtensionShape::Split if n == pp - 2 => {
            if lambda_equal {
                4
            } else {
                2
            }
        }
        _ => 1,
    }
}

/// The full array `μ_{n,m}(ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    p: Prime,
    entries: Vec<u8>,
}

impl MuTable {
    pub fn of(param: &InertialParam) -> MuTable {
        let p = param.p();
        let (rows, cols) = (p.get(), p.get() - 1);
        let mut entries = Vec::with_capacity((rows * cols) as usize);
        for n in 0..rows {
            for m in 0..cols {
                entries.push(kisin_mu(param, n, m).expect("indices in range"));
            }
        }
        MuTable { p, entries }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// `μ_{n,m}`; panics outside `[0,p-1] × [0,p-2]`.
    pub fn get(&self, n: u32, m: u32) -> u8 {
        let cols = self.p.get() - 1;
        assert!(n <= cols && m < cols, "cell (n={n}, m={m}) out of range");
        self.entries[(n * cols + m) as usize]
    }

    /// `μ` at the cell of `σ_{n,m} = V_{m,n+1}`.
    pub fn at_weight(&self, w: &SerreWeight) -> u8 {
        self.get(w.b() - 1, w.a())
    }

    /// Non-zero cells as `(n, m, μ)`, ordered by `(n, m)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32, u8)> + '_ {
        let cols = self.p.get() - 1;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &mu)| mu > 0)
            .map(move |(i, &mu)| (i as u32 / cols, i as u32 % cols, mu))
    }

    /// `Σ_{n,m} a_cr(n,m) μ_{n,m}` for `Sym^{k-2}`.
    pub fn bm_multiplicity(&self, k: u64) -> u64 {
        assert!(k >= 2, "weight k must be at least 2");
        let mut total = 0;
        for_each_jh_factor(self.p, k - 2, |w| total += self.at_weight(&w) as u64);
        total
    }
}

/// `B(ρ) = { V_{m,n+1} : μ_{n,m}(ρ) > 0 }`.
pub fn bm_set(param: &InertialParam) -> WeightSet {
    bm_set_of(&MuTable::of(param))
}

fn bm_set_of(table: &MuTable) -> WeightSet {
    let p = table.p();
    WeightSet::from_weights(
        p,
        table.nonzero().map(|(n, m, _)| SerreWeight::reduced(p, m as i64, n + 1)),
    )
}

/// Right-hand side of the Breuil–Mézard formula for crystalline lifts of
/// Hodge–Tate weights `(0, k-1)`.
pub fn bm_multiplicity(param: &InertialParam, k: u64) -> u64 {
    MuTable::of(param).bm_multiplicity(k)
}

/// Least `k ≥ 2` with non-vanishing Breuil–Mézard multiplicity.
pub fn k_cris(param: &InertialParam) -> Result<u64> {
    k_cris_of(&MuTable::of(param))
}

fn k_cris_of(table: &MuTable) -> Result<u64> {
    let p = table.p().get() as u64;
    (2..=p * p)
        .find(|&k| table.bm_multiplicity(k) > 0)
        .ok_or_else(|| Error::Internal(format!("no crystalline weight k <= p^2 found for p = {p}")))
}

/// Every quantity the recipes attach to one parameter.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    pub param: InertialParam,
    pub k_serre: u64,
    pub k_min: u64,
    pub k_cris: u64,
    #[serde(rename = "W")]
    pub bdj: WeightSet,
    #[serde(rename = "B")]
    pub bm: WeightSet,
    pub mu_nonzero: Vec<MuEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuEntry {
    pub n: u32,
    pub m: u32,
    pub mu: u8,
}

impl Evaluation {
    pub fn all_equal(&self) -> bool {
        self.k_serre == self.k_min && self.k_min == self.k_cris
    }
}

pub fn evaluate(param: &InertialParam) -> Result<Evaluation> {
    let table = MuTable::of(param);
    Ok(Evaluation {
        param: *param,
        k_serre: serre_k(param),
        k_min: k_min_of_set(param),
        k_cris: k_cris_of(&table)?,
        bdj: bdj_weight_set(param),
        bm: bm_set_of(&table),
        mu_nonzero: table.nonzero().map(|(n, m, mu)| MuEntry { n, m, mu }).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::enumerate_params;
    use crate::weights::jh_multiplicity;
    use ExtensionShape::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn red(p: u64, m: i64, r: i64, shape: ExtensionShape, eq: bool) -> InertialParam {
        InertialParam::reducible(pr(p), m, r, shape, eq).unwrap()
    }

    fn irr(p: u64, a: i64, b: i64) -> InertialParam {
        InertialParam::irreducible(pr(p), a, b).unwrap()
    }

    fn ws(p: u64, list: &[(i64, i64)]) -> WeightSet {
        WeightSet::from_weights(pr(p), list.iter().map(|&(a, b)| SerreWeight::new(pr(p), a, b).unwrap()))
    }

    #[test]
    fn serre_k_examples() {
        for p in [3, 5, 7, 11] {
            assert_eq!(serre_k(&red(p, 0, 1, Tres, true)), p + 1);
            assert_eq!(serre_k(&red(p, 0, 0, Split, true)), p);
        }
        assert_eq!(serre_k(&irr(5, 0, 3)), 4);
        assert_eq!(serre_k(&red(5, 3, 3, NonsplitGeneric, false)), 14);
    }

    #[test]
    fn serre_k_sub_character_with_trivial_inertial_exponent() {
        // Non-split ω^2 by 1 at p = 7: α = 2, β = 6, so k = 2p + 6 + 1.
        assert_eq!(serre_k(&red(7, 2, 4, NonsplitGeneric, false)), 21);
        assert_eq!(k_min_of_set(&red(7, 2, 4, NonsplitGeneric, false)), 21);
        // Peu ramifiée at the top twist: 2 + (p-2)(p+1) = p² - p.
        assert_eq!(serre_k(&red(5, 3, 1, Peu, true)), 20);
    }

    #[test]
    fn bdj_examples() {
        for p in [3u64, 5, 7, 11] {
            for s in 1..p as i64 {
                assert_eq!(bdj_weight_set(&irr(p, 0, s)), ws(p, &[(0, s), (s - 1, p as i64 + 1 - s)]));
            }
        }
        assert_eq!(bdj_weight_set(&red(3, 0, 1, Split, true)), ws(3, &[(0, 3), (0, 1), (1, 3), (1, 1)]));
        assert_eq!(bdj_weight_set(&red(5, 2, 1, Tres, true)), ws(5, &[(2, 5)]));
        assert_eq!(bdj_weight_set(&red(5, 0, 1, Split, true)), ws(5, &[(0, 5), (0, 1), (1, 3)]));
        assert_eq!(bdj_weight_set(&red(7, 0, 5, Split, false)), ws(7, &[(0, 5), (5, 7), (5, 1)]));
    }

    #[test]
    fn k_min_of_set_examples() {
        for p in [3, 5, 7] {
            assert_eq!(k_min_of_set(&red(p, 0, 1, Tres, true)), p + 1);
        }
        assert_eq!(k_min_of_set(&red(5, 0, 1, Split, true)), 2);
        assert_eq!(k_min_of_set(&irr(5, 0, 3)), 4);
    }

    #[test]
    fn kisin_mu_examples() {
        for p in [3u64, 5, 7] {
            let pp = p as u32;
            assert_eq!(kisin_mu(&red(p, 0, 0, Split, true), pp - 2, 0).unwrap(), 4);
            assert_eq!(kisin_mu(&red(p, 0, 0, Split, false), pp - 2, 0).unwrap(), 2);
            let tres = red(p, 0, 1, Tres, true);
            assert_eq!(kisin_mu(&tres, 0, 0).unwrap(), 0);
            assert_eq!(kisin_mu(&tres, pp - 1, 0).unwrap(), 1);
            assert_eq!(kisin_mu(&red(p, 0, 1, Peu, true), pp - 1, 0).unwrap(), 2);
            assert_eq!(kisin_mu(&red(p, 0, 1, Peu, true), 0, 0).unwrap(), 1);
        }
        // Non-matching cell.
        assert_eq!(kisin_mu(&red(5, 0, 2, NonsplitGeneric, false), 3, 1).unwrap(), 0);
        assert!(matches!(kisin_mu(&irr(5, 0, 3), 5, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(kisin_mu(&irr(5, 0, 3), 0, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bm_set_examples() {
        for p in [3u64, 5, 7, 11] {
            for s in 1..p as i64 {
                assert_eq!(bm_set(&irr(p, 0, s)), ws(p, &[(0, s), (s - 1, p as i64 + 1 - s)]));
            }
            assert_eq!(bm_set(&red(p, 0, 1, Tres, true)), ws(p, &[(0, p as i64)]));
        }
        assert_eq!(bm_set(&red(3, 0, 1, Split, true)), ws(3, &[(0, 1), (0, 3), (1, 1), (1, 3)]));
    }

    #[test]
    fn bm_multiplicity_examples() {
        assert_eq!(bm_multiplicity(&red(5, 0, 1, Split, false), 2), 1);
        for p in [3, 5, 7] {
            assert_eq!(bm_multiplicity(&red(p, 0, 1, Tres, true), 2), 0);
        }
        // Sym^3 = V_{0,4} at p = 5 misses the très set {V_{0,5}}.
        assert_eq!(bm_multiplicity(&red(5, 0, 1, Tres, true), 5), 0);
    }

    #[test]
    fn bm_multiplicity_counts_mu_with_jh_weights() {
        // Split, λ = λ', ratio 0 at p = 5: μ_{3,0} = 4 on V_{0,4}, which
        // first occurs in Sym^3.
        let x = red(5, 0, 0, Split, true);
        assert_eq!(bm_multiplicity(&x, 5), 4);
        // Literal double sum over cells.
        let p = pr(5);
        for k in 2..30 {
            let mut expected = 0;
            for n in 0..5 {
                for m in 0..4 {
                    let w = SerreWeight::new(p, m as i64, n as i64 + 1).unwrap();
                    expected += jh_multiplicity(p, k, &w) * kisin_mu(&x, n, m).unwrap() as u64;
                }
            }
            assert_eq!(bm_multiplicity(&x, k), expected, "k = {k}");
        }
    }

    #[test]
    fn k_cris_examples() {
        for p in [3, 5, 7, 11] {
            assert_eq!(k_cris(&red(p, 0, 1, Split, false)).unwrap(), 2);
            assert_eq!(k_cris(&red(p, 0, 1, Tres, true)).unwrap(), p + 1);
        }
        assert_eq!(k_cris(&irr(5, 0, 3)).unwrap(), 4);
    }

    #[test]
    fn mu_values_profile() {
        for p in Prime::range(3, 13) {
            for param in enumerate_params(p) {
                let table = MuTable::of(&param);
                for (n, _, mu) in table.nonzero() {
                    assert!(matches!(mu, 1 | 2 | 4), "{param}: μ = {mu}");
                    if mu == 4 {
                        assert_eq!(n, p.get() - 2);
                        assert!(matches!(param, InertialParam::Reducible(x) if x.shape() == Split && x.lambda_equal()));
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_json_shape() {
        let e = evaluate(&red(5, 0, 1, Tres, true)).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"param":{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"tres","lambda_equal":true},"k_serre":6,"k_min":6,"k_cris":6,"W":[{"a":0,"b":5}],"B":[{"a":0,"b":5}],"mu_nonzero":[{"n":4,"m":0,"mu":1}]}"#
        );
    }
}
