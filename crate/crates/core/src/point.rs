//! Eventually periodic points `u·p^ω` of the Cantor space.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The point `pre · period^ω`, kept in normal form: the period is primitive
/// and the preperiod is as short as possible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pre: Vec<u8>,
    period: Vec<u8>,
}

impl RationalPoint {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Result<RationalPoint> {
        if period.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty period".into() });
        }
        if pre.iter().chain(&period).any(|&b| b > 1) {
            return Err(Error::Parse { pos: 0, msg: "bits must be 0 or 1".into() });
        }
        Ok(Self::normalised(pre, period))
    }

    fn normalised(mut pre: Vec<u8>, mut period: Vec<u8>) -> RationalPoint {
        let p = period.len();
        for d in 1..=p {
            if p.is_multiple_of(d) && (d..p).all(|k| period[k] == period[k - d]) {
                period.truncate(d);
                break;
            }
        }
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        RationalPoint { pre, period }
    }

    /// `0̄`.
    pub fn zeros() -> Self {
        RationalPoint { pre: vec![], period: vec![0] }
    }

    /// `1̄`.
    pub fn ones() -> Self {
        RationalPoint { pre: vec![], period: vec![1] }
    }

    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn bit(&self, k: usize) -> u8 {
        if k < self.pre.len() {
            self.pre[k]
        } else {
            self.period[(k - self.pre.len()) % self.period.len()]
        }
    }

    /// The first `k` bits.
    pub fn prefix(&self, k: usize) -> Vec<u8> {
        (0..k).map(|i| self.bit(i)).collect()
    }

    pub fn prepend(&self, w: &[u8]) -> RationalPoint {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        Self::normalised(pre, self.period.clone())
    }

    pub fn starts_with(&self, w: &[u8]) -> bool {
        w.iter().enumerate().all(|(i, &b)| self.bit(i) == b)
    }

    /// Drop the first `k` bits.
    pub fn shift(&self, k: usize) -> RationalPoint {
        if k <= self.pre.len() {
            return Self::normalised(self.pre[k..].to_vec(), self.period.clone());
        }
        let r = (k - self.pre.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(r);
        Self::normalised(vec![], period)
    }

    pub fn strip_prefix(&self, w: &[u8]) -> Option<RationalPoint> {
        self.starts_with(w).then(|| self.shift(w.len()))
    }

    /// Eventually `0̄`.
    pub fn is_dyadic_minus(&self) -> bool {
        self.period == [0]
    }

    /// Eventually `1̄`.
    pub fn is_dyadic_plus(&self) -> bool {
        self.period == [1]
    }

    pub fn is_dyadic(&self) -> bool {
        self.is_dyadic_minus() || self.is_dyadic_plus()
    }

    /// Position on the circle `[0,1)`, with `1̄` sent to `0`.
    pub fn sigma(&self) -> BigRational {
        let val = |w: &[u8]| w.iter().fold(BigInt::zero(), |acc, &b| acc * 2 + b);
        let two = BigInt::from(2);
        let pu = num_traits::pow(two.clone(), self.pre.len());
        let pp = num_traits::pow(two, self.period.len());
        let x = BigRational::new(val(&self.pre), pu.clone())
            + BigRational::new(val(&self.period), pu * (pp - BigInt::one()));
        if x.is_one() {
            BigRational::zero()
        } else {
            x
        }
    }

    /// Lexicographic comparison of the infinite words.
    pub fn lex_cmp(&self, other: &RationalPoint) -> std::cmp::Ordering {
        let bound = self.pre.len().max(other.pre.len()) + self.period.len() * other.period.len();
        for k in 0..bound {
            match self.bit(k).cmp(&other.bit(k)) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn parse(s: &str) -> Result<RationalPoint> {
        let mut pre = Vec::new();
        let mut period = Vec::new();
        let mut in_period = false;
        let mut closed = false;
        for (pos, c) in s.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            if closed {
                return Err(Error::Parse { pos, msg: format!("unexpected {c:?} after ')'") });
            }
            match c {
                '0' | '1' => {
                    let b = (c == '1') as u8;
                    if in_period {
                        period.push(b)
                    } else {
                        pre.push(b)
                    }
                }
                '(' if !in_period => in_period = true,
                ')' if in_period => {
                    if period.is_empty() {
                        return Err(Error::Parse { pos, msg: "empty period".into() });
                    }
                    closed = true;
                }
                _ => return Err(Error::Parse { pos, msg: format!("unexpected {c:?}") }),
            }
        }
        if !closed {
            return Err(Error::Parse { pos: s.len(), msg: "expected '(' period ')'".into() });
        }
        Ok(Self::normalised(pre, period))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.pre {
            write!(f, "{b}")?;
        }
        write!(f, "(")?;
        for b in &self.period {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for RationalPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalPoint::parse(s)
    }
}

/// Germ group type of the canonical circle action at a rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermClass {
    /// Dyadic points: the rigid germ group is `Γ⁺ × Γ⁻`.
    GammaPlusTimesGammaMinus,
    /// Rational, non-dyadic points: infinite cyclic.
    Cyclic,
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermClass::GammaPlusTimesGammaMinus => write!(f, "Γ⁺×Γ⁻"),
            GermClass::Cyclic => write!(f, "Z"),
        }
    }
}

pub fn germ_classify(x: &RationalPoint) -> GermClass {
    if x.is_dyadic() {
        GermClass::GammaPlusTimesGammaMinus
    } else {
        GermClass::Cyclic
    }
}

/// Classify a circle point given as an exact rational in `[0,1)`.
pub fn germ_classify_rational(q: &BigRational) -> GermClass {
    let d = q.denom();
    if (d & (d - BigInt::one())).is_zero() {
        GermClass::GammaPlusTimesGammaMinus
    } else {
        GermClass::Cyclic
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn normal_form() {
        let p = RationalPoint::new(vec![1, 0, 1, 0], vec![1, 0, 1, 0]).unwrap();
        assert_eq!(p.to_string(), "(10)");
        assert_eq!(RationalPoint::parse("1 10(0)").unwrap().to_string(), "11(0)");
        assert_eq!(RationalPoint::parse("0(10)").unwrap().to_string(), "(01)");
        assert!(RationalPoint::parse("01").is_err());
        assert!(RationalPoint::parse("0()").is_err());
    }

    #[test]
    fn sigma_values() {
        assert_eq!(RationalPoint::parse("1(0)").unwrap().sigma(), q(1, 2));
        assert_eq!(RationalPoint::ones().sigma(), q(0, 1));
        assert_eq!(RationalPoint::parse("(10)").unwrap().sigma(), q(2, 3));
        assert_eq!(RationalPoint::parse("0(1)").unwrap().sigma(), q(1, 2));
    }

    #[test]
    fn germ_classes() {
        assert_eq!(germ_classify(&RationalPoint::zeros()), GermClass::GammaPlusTimesGammaMinus);
        assert_eq!(germ_classify(&RationalPoint::parse("(10)").unwrap()), GermClass::Cyclic);
        assert_eq!(germ_classify_rational(&q(3, 4)), GermClass::GammaPlusTimesGammaMinus);
        assert_eq!(germ_classify_rational(&q(2, 3)), GermClass::Cyclic);
        assert_eq!(germ_classify_rational(&q(0, 1)), GermClass::GammaPlusTimesGammaMinus);
    }

    fn bits(max: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..2, 0..max)
    }

    proptest! {
        #[test]
        fn normalisation_preserves_word(pre in bits(6), period in bits(5).prop_filter("non-empty", |p| !p.is_empty())) {
            let x = RationalPoint::new(pre.clone(), period.clone()).unwrap();
            let raw = |k: usize| if k < pre.len() { pre[k] } else { period[(k - pre.len()) % period.len()] };
            for k in 0..40 {
                prop_assert_eq!(x.bit(k), raw(k));
            }
            let y = RationalPoint::parse(&x.to_string()).unwrap();
            prop_assert_eq!(x, y);
        }

        #[test]
        fn shift_and_prepend(pre in bits(6), period in bits(4).prop_filter("non-empty", |p| !p.is_empty()), w in bits(5)) {
            let x = RationalPoint::new(pre, period).unwrap();
            let y = x.prepend(&w);
            prop_assert!(y.starts_with(&w));
            prop_assert_eq!(y.strip_prefix(&w).unwrap(), x);
        }
    }
}
