//! The infinite-valued truth domain, truncated at a finite bound κ.
//!
//! Values form the chain
//!
//! ```text
//! F0 < F1 < … < F(κ-1) < 0 < T(κ-1) < … < T1 < T0
//! ```
//!
//! where the subscript is the *order* of the value and `0` has order +∞.
//! Negation-as-failure flips the sign and moves one level deeper, so that
//! `~F0 = T1` and `~T0 = F1`.
//!
//! Operations that only compare values are κ-independent and live on
//! [`TruthValue`] directly. Operations that can produce a deeper level go
//! through [`Kappa`], which comes in two flavours: the checked form reports
//! [`TruthError::LevelOverflow`], the saturating form works in the truncated
//! domain `V_κ`, where every level ≥ κ is identified with `0` (such values are
//! `=_α`-equivalent to `0` for every `α < κ`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Level (subscript) of a non-zero truth value.
pub type Level = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthError {
    #[error("truth level {level} does not fit below kappa = {kappa}")]
    LevelOverflow { level: u64, kappa: Level },
    #[error("values are not contained in a common cone at alpha = {alpha}")]
    NotInCone { alpha: Level },
    #[error("alpha = {alpha} is out of range for kappa = {kappa}")]
    AlphaOutOfRange { alpha: Level, kappa: Level },
    #[error("kappa must be at least 1")]
    ZeroKappa,
    #[error("cannot parse truth value `{0}`")]
    Parse(String),
}

/// An element of the chain `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    False(Level),
    Zero,
    True(Level),
}

/// `order(v)`: the level of `T_α`/`F_α`, or infinity for `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ordinal {
    Finite(Level),
    Infinity,
}

impl Ordinal {
    pub fn finite(self) -> Option<Level> {
        match self {
            Ordinal::Finite(l) => Some(l),
            Ordinal::Infinity => None,
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Finite(l) => write!(f, "{l}"),
            Ordinal::Infinity => f.write_str("inf"),
        }
    }
}

/// Three-valued projection of a truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThreeValued {
    False,
    Undef,
    True,
}

impl ThreeValued {
    pub fn label(self) -> &'static str {
        match self {
            ThreeValued::True => "True",
            ThreeValued::False => "False",
            ThreeValued::Undef => "Undef",
        }
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl TruthValue {
    pub const TRUE: TruthValue = TruthValue::True(0);
    pub const FALSE: TruthValue = TruthValue::False(0);

    pub fn order(self) -> Ordinal {
        match self {
            TruthValue::False(l) | TruthValue::True(l) => Ordinal::Finite(l),
            TruthValue::Zero => Ordinal::Infinity,
        }
    }

    pub fn level(self) -> Option<Level> {
        self.order().finite()
    }

    fn order_le(self, alpha: Level) -> bool {
        matches!(self.level(), Some(l) if l <= alpha)
    }

    fn order_gt(self, alpha: Level) -> bool {
        !self.order_le(alpha)
    }

    /// Unbounded negation: `F_α ↦ T_{α+1}`, `T_α ↦ F_{α+1}`, `0 ↦ 0`.
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::False(l) => TruthValue::True(l + 1),
            TruthValue::True(l) => TruthValue::False(l + 1),
            TruthValue::Zero => TruthValue::Zero,
        }
    }

    /// `self ⊑_α other`.
    pub fn sq_alpha(self, other: TruthValue, alpha: Level) -> bool {
        if self == other && self.order() < Ordinal::Finite(alpha) {
            return true;
        }
        let at_or_above = |v: TruthValue| v.order() >= Ordinal::Finite(alpha);
        if self == TruthValue::False(alpha) && at_or_above(other) {
            return true;
        }
        if other == TruthValue::True(alpha) && at_or_above(self) {
            return true;
        }
        self.order_gt(alpha) && other.order_gt(alpha)
    }

    /// `self =_α other`: equal, or both of order greater than α.
    pub fn eq_alpha(self, other: TruthValue, alpha: Level) -> bool {
        self == other || (self.order_gt(alpha) && other.order_gt(alpha))
    }

    pub fn collapse(self) -> TruthValue {
        match self {
            TruthValue::False(_) => TruthValue::FALSE,
            TruthValue::True(_) => TruthValue::TRUE,
            TruthValue::Zero => TruthValue::Zero,
        }
    }

    pub fn three_valued(self) -> ThreeValued {
        match self {
            TruthValue::False(_) => ThreeValued::False,
            TruthValue::True(_) => ThreeValued::True,
            TruthValue::Zero => ThreeValued::Undef,
        }
    }

    pub fn meet(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn join(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    fn rank(self) -> (u8, i64) {
        match self {
            TruthValue::False(l) => (0, l as i64),
            TruthValue::Zero => (1, 0),
            TruthValue::True(l) => (2, -(l as i64)),
        }
    }
}

impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Chain order `v ≤ w`.
pub fn leq(v: TruthValue, w: TruthValue) -> bool {
    v <= w
}

pub fn order(v: TruthValue) -> Ordinal {
    v.order()
}

/// Chain minimum; the empty meet is the top `T0`.
pub fn meet<I: IntoIterator<Item = TruthValue>>(values: I) -> TruthValue {
    values.into_iter().fold(TruthValue::TRUE, TruthValue::meet)
}

/// Chain maximum; the empty join is the bottom `F0`.
pub fn join<I: IntoIterator<Item = TruthValue>>(values: I) -> TruthValue {
    values.into_iter().fold(TruthValue::FALSE, TruthValue::join)
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::False(l) => write!(f, "F{l}"),
            TruthValue::True(l) => write!(f, "T{l}"),
            TruthValue::Zero => f.write_str("0"),
        }
    }
}

impl FromStr for TruthValue {
    type Err = TruthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(TruthValue::Zero);
        }
        let bad = || TruthError::Parse(s.to_string());
        let (sign, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let level: Level = digits.parse().map_err(|_| bad())?;
        match sign {
            "T" => Ok(TruthValue::True(level)),
            "F" => Ok(TruthValue::False(level)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            TruthValue::Zero => {
                let mut st = serializer.serialize_struct("TruthValue", 1)?;
                st.serialize_field("sign", "0")?;
                st.end()
            }
            TruthValue::True(l) | TruthValue::False(l) => {
                let mut st = serializer.serialize_struct("TruthValue", 2)?;
                st.serialize_field(
                    "sign",
                    if matches!(self, TruthValue::True(_)) {
                        "T"
                    } else {
                        "F"
                    },
                )?;
                st.serialize_field("level", l)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            sign: String,
            level: Option<Level>,
        }
        let raw = Raw::deserialize(deserializer)?;
        match (raw.sign.as_str(), raw.level) {
            ("0", None) => Ok(TruthValue::Zero),
            ("T", Some(l)) => Ok(TruthValue::True(l)),
            ("F", Some(l)) => Ok(TruthValue::False(l)),
            (sign, level) => Err(de::Error::custom(format!(
                "invalid truth value sign={sign:?} level={level:?}"
            ))),
        }
    }
}

/// The truncation bound κ: admissible levels are `0..κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Kappa(Level);

impl Kappa {
    pub fn new(kappa: Level) -> Result<Kappa, TruthError> {
        if kappa == 0 {
            Err(TruthError::ZeroKappa)
        } else {
            Ok(Kappa(kappa))
        }
    }

    pub fn get(self) -> Level {
        self.0
    }

    /// `|V_κ| = 2κ + 1`.
    pub fn domain_size(self) -> usize {
        2 * self.0 as usize + 1
    }

    pub fn contains(self, v: TruthValue) -> bool {
        v.level().is_none_or(|l| l < self.0)
    }

    /// Position of `v` in the chain enumeration of `V_κ`.
    pub fn index_of(self, v: TruthValue) -> usize {
        let k = self.0 as usize;
        match v {
            TruthValue::False(l) => l as usize,
            TruthValue::Zero => k,
            TruthValue::True(l) => 2 * k - l as usize,
        }
    }

    pub fn value_at(self, index: usize) -> TruthValue {
        let k = self.0 as usize;
        debug_assert!(index <= 2 * k);
        match index.cmp(&k) {
            Ordering::Less => TruthValue::False(index as Level),
            Ordering::Equal => TruthValue::Zero,
            Ordering::Greater => TruthValue::True((2 * k - index) as Level),
        }
    }

    /// All of `V_κ` in chain order.
    pub fn values(self) -> impl Iterator<Item = TruthValue> + Clone {
        (0..self.domain_size()).map(move |i| self.value_at(i))
    }

    /// The stage levels `0..κ`.
    pub fn alphas(self) -> std::ops::Range<Level> {
        0..self.0
    }

    fn check_alpha(self, alpha: Level) -> Result<(), TruthError> {
        if alpha < self.0 {
            Ok(())
        } else {
            Err(TruthError::AlphaOutOfRange {
                alpha,
                kappa: self.0,
            })
        }
    }

    fn fit(self, v: TruthValue) -> Result<TruthValue, TruthError> {
        match v.level() {
            Some(l) if l >= self.0 => Err(TruthError::LevelOverflow {
                level: l as u64,
                kappa: self.0,
            }),
            _ => Ok(v),
        }
    }

    /// Maps levels at or beyond κ to `0`.
    pub fn truncate(self, v: TruthValue) -> TruthValue {
        if self.contains(v) {
            v
        } else {
            TruthValue::Zero
        }
    }

    /// Checked negation; fails when the result would leave `V_κ`.
    pub fn neg(self, v: TruthValue) -> Result<TruthValue, TruthError> {
        self.fit(v.negate())
    }

    /// Negation in the truncated domain.
    pub fn neg_saturating(self, v: TruthValue) -> TruthValue {
        match v {
            TruthValue::False(l) if l + 1 < self.0 => TruthValue::True(l + 1),
            TruthValue::True(l) if l + 1 < self.0 => TruthValue::False(l + 1),
            _ => TruthValue::Zero,
        }
    }

    /// `v|_α`: `v` when `order(v) ≤ α`, otherwise `F_{α+1}`.
    pub fn restrict(self, v: TruthValue, alpha: Level) -> Result<TruthValue, TruthError> {
        self.check_alpha(alpha)?;
        if v.order_le(alpha) {
            Ok(v)
        } else {
            self.fit(TruthValue::False(alpha + 1))
        }
    }

    pub fn restrict_saturating(
        self,
        v: TruthValue,
        alpha: Level,
    ) -> Result<TruthValue, TruthError> {
        self.saturate(self.restrict(v, alpha))
    }

    /// True when all of `xs` lie in a common cone `(x]_α`, i.e. are pairwise
    /// `=_β` for every `β < α`.
    pub fn in_common_cone(xs: &[TruthValue], alpha: Level) -> bool {
        if alpha == 0 {
            return true;
        }
        match xs.iter().find(|v| v.order() < Ordinal::Finite(alpha)) {
            Some(low) => xs.iter().all(|v| v == low),
            None => true,
        }
    }

    /// `⨅_α X`.
    pub fn glb_alpha(self, xs: &[TruthValue], alpha: Level) -> Result<TruthValue, TruthError> {
        self.check_alpha(alpha)?;
        if !Kappa::in_common_cone(xs, alpha) {
            return Err(TruthError::NotInCone { alpha });
        }
        if xs.is_empty() {
            return Ok(TruthValue::True(alpha));
        }
        let m = meet(xs.iter().copied());
        if m.order_le(alpha) {
            Ok(m)
        } else {
            self.fit(TruthValue::True(alpha + 1))
        }
    }

    /// `⨆_α X`, the dual of [`Kappa::glb_alpha`].
    pub fn lub_alpha(self, xs: &[TruthValue], alpha: Level) -> Result<TruthValue, TruthError> {
        self.check_alpha(alpha)?;
        if !Kappa::in_common_cone(xs, alpha) {
            return Err(TruthError::NotInCone { alpha });
        }
        if xs.is_empty() {
            return Ok(TruthValue::False(alpha));
        }
        let j = join(xs.iter().copied());
        if j.order_le(alpha) {
            Ok(j)
        } else {
            self.fit(TruthValue::False(alpha + 1))
        }
    }

    pub fn glb_alpha_saturating(
        self,
        xs: &[TruthValue],
        alpha: Level,
    ) -> Result<TruthValue, TruthError> {
        self.saturate(self.glb_alpha(xs, alpha))
    }

    pub fn lub_alpha_saturating(
        self,
        xs: &[TruthValue],
        alpha: Level,
    ) -> Result<TruthValue, TruthError> {
        self.saturate(self.lub_alpha(xs, alpha))
    }

    fn saturate(self, r: Result<TruthValue, TruthError>) -> Result<TruthValue, TruthError> {
        match r {
            Err(TruthError::LevelOverflow { .. }) => Ok(TruthValue::Zero),
            other => other,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
