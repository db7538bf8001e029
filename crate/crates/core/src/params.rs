//! Local parameters of `ρ|_{G_p}`.
//!
//! Every recipe in [`crate::recipes`] reads only a handful of invariants of
//! the restriction to a decomposition group: for irreducible restrictions the
//! level-two character on inertia, for reducible ones the two inertial
//! exponents, the extension shape and whether the two unramified characters
//! agree. [`InertialParam`] is exactly that record.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// How the reducible restriction `ω^m ⊗ (ω^r μ_λ, *; 0, μ_λ')` is glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionShape {
    /// `* = 0`.
    Split,
    /// Non-split with ratio other than `ω`, or ratio `ω` and `λ ≠ λ'`.
    #[serde(rename = "nonsplit")]
    NonsplitGeneric,
    /// Peu ramifiée (ratio exactly `ω`, `λ = λ'`).
    Peu,
    /// Très ramifiée (ratio exactly `ω`, `λ = λ'`).
    Tres,
}

impl ExtensionShape {
    pub fn is_split(self) -> bool {
        self == ExtensionShape::Split
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtensionShape::Split => "split",
            ExtensionShape::NonsplitGeneric => "nonsplit",
            ExtensionShape::Peu => "peu",
            ExtensionShape::Tres => "tres",
        }
    }
}

impl fmt::Display for ExtensionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `ρ|_{I_p} ~ ω^a ⊗ diag(ω₂^{b-a}, ω₂^{p(b-a)})` with `0 ≤ a < b ≤ p-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IrreducibleParam {
    p: Prime,
    a: u32,
    b: u32,
}

impl IrreducibleParam {
    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Exponent `e` of `ω₂^e`, the first character on tame inertia.
    pub fn level2_exponent(&self) -> i64 {
        self.p.get() as i64 * self.a as i64 + self.b as i64
    }
}

/// `ρ^{ss}|_{I_p} ~ ω^m ⊗ (ω^r ⊕ 1)`; in the non-split case the character
/// `ω^{m+r} μ_λ` is the sub and `ω^m μ_λ'` the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReducibleParam {
    p: Prime,
    twist: u32,
    ratio: u32,
    shape: ExtensionShape,
    lambda_equal: bool,
}

impl ReducibleParam {
    pub fn p(&self) -> Prime {
        self.p
    }

    /// `m`, the exponent of the quotient character.
    pub fn twist(&self) -> u32 {
        self.twist
    }

    /// `r`, so that sub / quotient is `ω^r` on inertia.
    pub fn ratio(&self) -> u32 {
        self.ratio
    }

    pub fn shape(&self) -> ExtensionShape {
        self.shape
    }

    pub fn lambda_equal(&self) -> bool {
        self.lambda_equal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InertialParam {
    Irreducible(IrreducibleParam),
    Reducible(ReducibleParam),
}

impl InertialParam {
    pub fn irreducible(p: Prime, a: i64, b: i64) -> Result<Self> {
        let pp = p.get() as i64;
        if !(0 <= a && a < b && b < pp) {
            return Err(Error::InvalidParam(format!(
                "irreducible parameter needs 0 <= a < b <= p-1, got a={a}, b={b}, p={p}"
            )));
        }
        Ok(InertialParam::Irreducible(IrreducibleParam { p, a: a as u32, b: b as u32 }))
    }

    pub fn reducible(
        p: Prime,
        twist: i64,
        ratio: i64,
        shape: ExtensionShape,
        lambda_equal: bool,
    ) -> Result<Self> {
        let top = p.pm1() - 1;
        if !(0..=top).contains(&twist) || !(0..=top).contains(&ratio) {
            return Err(Error::InvalidParam(format!(
                "twist and ratio must lie in [0, p-2], got twist={twist}, ratio={ratio}, p={p}"
            )));
        }
        let omega_ratio = ratio == 1;
        match shape {
            ExtensionShape::Peu | ExtensionShape::Tres if !(omega_ratio && lambda_equal) => {
                return Err(Error::InvalidParam(format!(
                    "{shape} requires ratio 1 and lambda_equal = true"
                )));
            }
            ExtensionShape::NonsplitGeneric if omega_ratio && lambda_equal => {
                return Err(Error::InvalidParam(
                    "a non-split extension with ratio 1 and lambda_equal = true must be peu or tres".into(),
                ));
            }
            _ => {}
        }
        Ok(InertialParam::Reducible(ReducibleParam {
            p,
            twist: twist as u32,
            ratio: ratio as u32,
            shape,
            lambda_equal,
        }))
    }

    pub fn p(&self) -> Prime {
        match self {
            InertialParam::Irreducible(x) => x.p,
            InertialParam::Reducible(x) => x.p,
        }
    }

    /// The parameter of `ω^t ⊗ ρ`.
    pub fn twist(&self, t: i64) -> InertialParam {
        match *self {
            InertialParam::Irreducible(x) => {
                let e = x.level2_exponent() + t * (x.p.get() as i64 + 1);
                let (a, b) = normalize_level2(x.p, e).expect("twisting preserves level two");
                InertialParam::Irreducible(IrreducibleParam { p: x.p, a, b })
            }
            InertialParam::Reducible(mut x) => {
                x.twist = (x.twist as i64 + t).rem_euclid(x.p.pm1()) as u32;
                InertialParam::Reducible(x)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("parameter serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawParam = serde_json::from_str(text)?;
        raw.validate()
    }
}

impl fmt::Display for InertialParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InertialParam::Irreducible(x) => write!(f, "irreducible(p={}, a={}, b={})", x.p, x.a, x.b),
            InertialParam::Reducible(x) => write!(
                f,
                "reducible(p={}, twist={}, ratio={}, {}, {})",
                x.p,
                x.twist,
                x.ratio,
                x.shape,
                if x.lambda_equal { "λ=λ'" } else { "λ≠λ'" }
            ),
        }
    }
}

impl Serialize for InertialParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InertialParam::Irreducible(x) => {
                let mut st = s.serialize_struct("InertialParam", 4)?;
                st.serialize_field("p", &x.p)?;
                st.serialize_field("type", "irreducible")?;
                st.serialize_field("a", &x.a)?;
                st.serialize_field("b", &x.b)?;
                st.end()
            }
            InertialParam::Reducible(x) => {
                let mut st = s.serialize_struct("InertialParam", 6)?;
                st.serialize_field("p", &x.p)?;
                st.serialize_field("type", "reducible")?;
                st.serialize_field("twist", &x.twist)?;
                st.serialize_field("ratio", &x.ratio)?;
                st.serialize_field("shape", &x.shape)?;
                st.serialize_field("lambda_equal", &x.lambda_equal)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for InertialParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawParam::deserialize(d)?.validate().map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawParam {
    Irreducible {
        p: u64,
        a: i64,
        b: i64,
    },
    Reducible {
        p: u64,
        twist: i64,
        ratio: i64,
        shape: ExtensionShape,
        lambda_equal: bool,
    },
}

impl RawParam {
    fn validate(self) -> Result<InertialParam> {
        match self {
            RawParam::Irreducible { p, a, b } => InertialParam::irreducible(Prime::new(p)?, a, b),
            RawParam::Reducible { p, twist, ratio, shape, lambda_equal } => {
                InertialParam::reducible(Prime::new(p)?, twist, ratio, shape, lambda_equal)
            }
        }
    }
}

/// Canonical form of the pair `{ω₂^e, ω₂^{pe}}`: the unique `0 ≤ a < b ≤ p-1`
/// with `{e, pe} ≡ {pa + b, a + pb} (mod p² - 1)`.
///
/// Fails with [`Error::LevelOne`] when `p + 1` divides `e`, since then
/// `ω₂^e` is a power of `ω`.
pub fn normalize_level2(p: Prime, e: i64) -> Result<(u32, u32)> {
    let pp = p.get() as i64;
    let e = e.rem_euclid(p.sq_m1());
    if e % (pp + 1) == 0 {
        return Err(Error::LevelOne { p: p.get(), e });
    }
    // e < p² - 1, so both base-p digits lie in [0, p-1] and differ.
    let (hi, lo) = ((e / pp) as u32, (e % pp) as u32);
    Ok(if hi < lo { (hi, lo) } else { (lo, hi) })
}

/// Every parameter for `p`, in the canonical order used by all reports:
/// irreducible `(a, b)` lexicographically, then reducible records by
/// `(twist, ratio, lambda_equal = true before false)` with split first.
pub fn enumerate_params(p: Prime) -> Vec<InertialParam> {
    let pp = p.get() as i64;
    let mut out = Vec::new();
    for a in 0..pp - 1 {
        for b in a + 1..pp {
            out.push(InertialParam::irreducible(p, a, b).expect("enumerated in range"));
        }
    }
    for m in 0..pp - 1 {
        for r in 0..pp - 1 {
            for lambda_equal in [true, false] {
                let nonsplit: &[ExtensionShape] = if r == 1 && lambda_equal {
                    &[ExtensionShape::Peu, ExtensionShape::Tres]
                } else {
                    &[ExtensionShape::NonsplitGeneric]
                };
                for &shape in std::iter::once(&ExtensionShape::Split).chain(nonsplit) {
                    out.push(InertialParam::reducible(p, m, r, shape, lambda_equal).expect("enumerated in range"));
                }
            }
        }
    }
    out
}

/// `|enumerate_params(p)|` in closed form.
pub fn param_count(p: Prime) -> usize {
    let pp = p.get() as usize;
    pp * (pp - 1) / 2 + (pp - 1) * ((pp - 1) * 4 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_level2(pr(5), 7).unwrap(), (1, 2));
        assert_eq!(normalize_level2(pr(5), 11).unwrap(), (1, 2));
        assert!(matches!(normalize_level2(pr(5), 6), Err(Error::LevelOne { .. })));
        assert!(matches!(normalize_level2(pr(5), 0), Err(Error::LevelOne { .. })));
        assert_eq!(normalize_level2(pr(5), 7 - 24).unwrap(), (1, 2));
    }

    #[test]
    fn enumeration_counts() {
        let p3 = enumerate_params(pr(3));
        let irr = p3.iter().filter(|x| matches!(x, InertialParam::Irreducible(_))).count();
        assert_eq!(irr, 3);
        assert_eq!(p3.len() - irr, 18);
        assert_eq!(enumerate_params(pr(5)).len(), 78);
        for p in Prime::range(3, 31) {
            assert_eq!(enumerate_params(p).len(), param_count(p));
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = enumerate_params(pr(7));
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn twist_examples() {
        let x = InertialParam::reducible(pr(5), 1, 2, ExtensionShape::Split, true).unwrap();
        assert_eq!(x.twist(3), InertialParam::reducible(pr(5), 0, 2, ExtensionShape::Split, true).unwrap());
        let y = InertialParam::irreducible(pr(5), 0, 3).unwrap();
        assert_eq!(y.twist(0), y);
        assert_eq!(y.twist(1), InertialParam::irreducible(pr(5), 1, 4).unwrap());
    }

    #[test]
    fn parse_examples() {
        let x = InertialParam::from_json(r#"{"p":5,"type":"irreducible","a":0,"b":3}"#).unwrap();
        assert_eq!(x, InertialParam::irreducible(pr(5), 0, 3).unwrap());

        let t = InertialParam::from_json(
            r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"tres","lambda_equal":true}"#,
        )
        .unwrap();
        assert_eq!(t, InertialParam::reducible(pr(5), 0, 1, ExtensionShape::Tres, true).unwrap());

        let bad = r#"{"p":5,"type":"reducible","twist":0,"ratio":2,"shape":"tres","lambda_equal":true}"#;
        assert!(matches!(InertialParam::from_json(bad), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn parse_rejects_schema_violations() {
        for text in [
            r#"{"p":5,"type":"irreducible","a":3,"b":3}"#,
            r#"{"p":5,"type":"irreducible","a":0,"b":5}"#,
            r#"{"p":2,"type":"irreducible","a":0,"b":1}"#,
            r#"{"p":9,"type":"irreducible","a":0,"b":1}"#,
            r#"{"p":5,"type":"irreducible","a":0}"#,
            r#"{"p":5,"type":"irreducible","a":0,"b":1,"c":2}"#,
            r#"{"p":5,"type":"weird","a":0,"b":1}"#,
            r#"{"p":5,"type":"reducible","twist":4,"ratio":0,"shape":"split","lambda_equal":true}"#,
            r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"nonsplit","lambda_equal":true}"#,
            r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"peu","lambda_equal":false}"#,
        ] {
            assert!(InertialParam::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn serialization_is_canonical() {
        let text = r#"{"p":5,"type":"reducible","twist":0,"ratio":1,"shape":"tres","lambda_equal":true}"#;
        assert_eq!(InertialParam::from_json(text).unwrap().to_json(), text);
        let text = r#"{"p":7,"type":"irreducible","a":2,"b":6}"#;
        assert_eq!(InertialParam::from_json(text).unwrap().to_json(), text);
    }
}
