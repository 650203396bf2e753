//! Sparse, name-keyed feature vectors and their algebra.
//!
//! A [`FeatureVector`] associates feature names with values, with O(1)
//! amortized lookup and insertion. Names absent from a vector are treated
//! as zero by the numeric operations: addition and subtraction run over
//! the union of names, while multiplication, division and the dot product
//! run over the intersection (a product against an implicit zero
//! contributes nothing and is never materialized).
//!
//! Categorical values may be stored alongside numbers, but any algebraic
//! operation that touches one fails with [`Error::CategoricalValue`]
//! rather than coercing.

use std::fmt;

use indexmap::IndexMap;

use crate::error::Error;

/// Name of a single feature. Non-empty, case-sensitive, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureName(String);

impl FeatureName {
    pub fn new(name: impl Into<String>) -> Result<Self, Error> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyFeatureName);
        }
        Ok(FeatureName(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A single feature value: a finite number or a categorical token.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureValue {
    Numeric(f64),
    Categorical(String),
}

impl FeatureValue {
    /// Numeric value; rejects NaN and infinities.
    pub fn numeric(value: f64) -> Result<Self, Error> {
        if !value.is_finite() {
            return Err(Error::NonFiniteValue(value));
        }
        Ok(FeatureValue::Numeric(value))
    }

    pub fn categorical(token: impl Into<String>) -> Self {
        FeatureValue::Categorical(token.into())
    }

    pub fn as_numeric(&self) -> Option<f64> {
        match self {
            FeatureValue::Numeric(v) => Some(*v),
            FeatureValue::Categorical(_) => None,
        }
    }
}

impl fmt::Display for FeatureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureValue::Numeric(v) => write!(f, "{v}"),
            FeatureValue::Categorical(s) => f.write_str(s),
        }
    }
}

/// Sparse association from feature names to values; the unit of stream
/// input. Inserting an existing name replaces its value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FeatureVector {
    entries: IndexMap<FeatureName, FeatureValue>,
}

impl FeatureVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts or replaces a value. Numeric values are re-checked for
    /// finiteness so the vector invariant holds no matter how the value
    /// was built.
    pub fn insert(&mut self, name: FeatureName, value: FeatureValue) -> Result<(), Error> {
        if let FeatureValue::Numeric(v) = value {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue(v));
            }
        }
        self.entries.insert(name, value);
        Ok(())
    }

    pub fn get(&self, name: &FeatureName) -> Option<&FeatureValue> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &FeatureName) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FeatureName, &FeatureValue)> {
        self.entries.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &FeatureName> {
        self.entries.keys()
    }

    /// Builds a purely numeric vector from (name, value) pairs.
    pub fn from_numeric<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, f64)>,
    ) -> Result<Self, Error> {
        let mut out = FeatureVector::new();
        for (name, value) in pairs {
            out.insert(FeatureName::new(name)?, FeatureValue::numeric(value)?)?;
        }
        Ok(out)
    }

    /// Numeric value stored under `name`: `Ok(None)` when absent, an error
    /// when the stored value is categorical.
    pub fn numeric(&self, name: &FeatureName) -> Result<Option<f64>, Error> {
        match self.entries.get(name) {
            None => Ok(None),
            Some(FeatureValue::Numeric(v)) => Ok(Some(*v)),
            Some(FeatureValue::Categorical(_)) => Err(Error::CategoricalValue(name.clone())),
        }
    }

    /// All entries as (name, number) pairs; errors on the first
    /// categorical value. Used by learners that require numeric input.
    pub fn numeric_entries(&self) -> Result<Vec<(&FeatureName, f64)>, Error> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (name, value) in &self.entries {
            match value.as_numeric() {
                Some(v) => out.push((name, v)),
                None => return Err(Error::CategoricalValue(name.clone())),
            }
        }
        Ok(out)
    }

    /// Elementwise sum over the union of names; missing entries count as 0.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.union_op(other, |a, b| a + b)
    }

    /// Elementwise difference over the union of names.
    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.union_op(other, |a, b| a - b)
    }

    /// Elementwise product over the intersection of names. Entries present
    /// on only one side multiply an implicit zero and are dropped.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        let mut out = FeatureVector::new();
        for (name, value) in &self.entries {
            if !other.entries.contains_key(name) {
                continue;
            }
            let a = numeric_or_err(name, value)?;
            let b = other.numeric(name)?.expect("intersection entry present");
            out.insert(name.clone(), FeatureValue::numeric(a * b)?)?;
        }
        Ok(out)
    }

    /// Elementwise quotient over the intersection of names; a zero
    /// denominator is an error.
    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        let mut out = FeatureVector::new();
        for (name, value) in &self.entries {
            if !other.entries.contains_key(name) {
                continue;
            }
            let a = numeric_or_err(name, value)?;
            let b = other.numeric(name)?.expect("intersection entry present");
            if b == 0.0 {
                return Err(Error::DivisionByZero(name.clone()));
            }
            out.insert(name.clone(), FeatureValue::numeric(a / b)?)?;
        }
        Ok(out)
    }

    /// Raises every entry to `exponent`. A fractional exponent over a
    /// negative base is a domain error.
    pub fn powf(&self, exponent: f64) -> Result<Self, Error> {
        let integral = exponent.fract() == 0.0;
        let mut out = FeatureVector::new();
        for (name, value) in &self.entries {
            let base = numeric_or_err(name, value)?;
            if base < 0.0 && !integral {
                return Err(Error::FractionalPowerOfNegative {
                    name: name.clone(),
                    base,
                    exponent,
                });
            }
            out.insert(name.clone(), FeatureValue::numeric(base.powf(exponent))?)?;
        }
        Ok(out)
    }

    /// Dot product over the intersection of names. Terms accumulate in
    /// ascending name order so `a.dot(b)` and `b.dot(a)` are bit-identical.
    pub fn dot(&self, other: &Self) -> Result<f64, Error> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut shared: Vec<(&FeatureName, f64, f64)> = Vec::new();
        for (name, value) in &small.entries {
            if !large.entries.contains_key(name) {
                continue;
            }
            let a = numeric_or_err(name, value)?;
            let b = large.numeric(name)?.expect("intersection entry present");
            shared.push((name, a, b));
        }
        shared.sort_by(|x, y| x.0.cmp(y.0));
        let sum = shared.iter().fold(0.0, |acc, (_, a, b)| acc + a * b);
        if !sum.is_finite() {
            return Err(Error::NonFiniteValue(sum));
        }
        Ok(sum)
    }

    fn union_op(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Result<Self, Error> {
        let mut out = FeatureVector::new();
        for (name, value) in &self.entries {
            let a = numeric_or_err(name, value)?;
            let b = other.numeric(name)?.unwrap_or(0.0);
            out.insert(name.clone(), FeatureValue::numeric(op(a, b))?)?;
        }
        for (name, value) in &other.entries {
            if self.entries.contains_key(name) {
                continue;
            }
            let b = numeric_or_err(name, value)?;
            out.insert(name.clone(), FeatureValue::numeric(op(0.0, b))?)?;
        }
        Ok(out)
    }
}

fn numeric_or_err(name: &FeatureName, value: &FeatureValue) -> Result<f64, Error> {
    value
        .as_numeric()
        .ok_or_else(|| Error::CategoricalValue(name.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(pairs: &[(&str, f64)]) -> FeatureVector {
        FeatureVector::from_numeric(pairs.iter().map(|&(n, v)| (n, v))).unwrap()
    }

    fn name(s: &str) -> FeatureName {
        FeatureName::new(s).unwrap()
    }

    #[test]
    fn empty_name_rejected() {
        assert!(matches!(FeatureName::new(""), Err(Error::EmptyFeatureName)));
    }

    #[test]
    fn non_finite_values_rejected() {
        assert!(FeatureValue::numeric(f64::NAN).is_err());
        assert!(FeatureValue::numeric(f64::INFINITY).is_err());
        let mut v = FeatureVector::new();
        assert!(v
            .insert(name("a"), FeatureValue::Numeric(f64::NAN))
            .is_err());
    }

    #[test]
    fn insert_replaces_existing_name() {
        let mut v = fv(&[("a", 1.0)]);
        v.insert(name("a"), FeatureValue::numeric(2.0).unwrap())
            .unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.numeric(&name("a")).unwrap(), Some(2.0));
    }

    #[test]
    fn add_unions_names_with_zero_default() {
        let out = fv(&[("a", 1.0), ("b", 2.0)])
            .add(&fv(&[("b", 3.0), ("c", 4.0)]))
            .unwrap();
        assert_eq!(out, fv(&[("a", 1.0), ("b", 5.0), ("c", 4.0)]));
    }

    #[test]
    fn add_identity() {
        let out = FeatureVector::new().add(&fv(&[("x", 7.0)])).unwrap();
        assert_eq!(out, fv(&[("x", 7.0)]));
    }

    #[test]
    fn add_keeps_zeros_from_cancellation() {
        let out = fv(&[("x", 1.5)]).add(&fv(&[("x", -1.5)])).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.numeric(&name("x")).unwrap(), Some(0.0));
    }

    #[test]
    fn sub_unions_names() {
        let out = fv(&[("a", 1.0)]).sub(&fv(&[("b", 2.0)])).unwrap();
        assert_eq!(out, fv(&[("a", 1.0), ("b", -2.0)]));
    }

    #[test]
    fn mul_intersects_names() {
        let out = fv(&[("a", 2.0), ("b", 3.0)])
            .mul(&fv(&[("b", 4.0), ("c", 5.0)]))
            .unwrap();
        assert_eq!(out, fv(&[("b", 12.0)]));
    }

    #[test]
    fn mul_empty_intersection() {
        let out = fv(&[("a", 2.0)]).mul(&FeatureVector::new()).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn div_elementwise() {
        let out = fv(&[("a", 2.0), ("b", 3.0)])
            .div(&fv(&[("a", 4.0), ("b", 3.0)]))
            .unwrap();
        assert_eq!(out, fv(&[("a", 0.5), ("b", 1.0)]));
    }

    #[test]
    fn div_by_zero_is_an_error() {
        let err = fv(&[("a", 2.0)]).div(&fv(&[("a", 0.0)])).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero(n) if n.as_str() == "a"));
    }

    #[test]
    fn pow_squares_negative_bases() {
        let out = fv(&[("a", 3.0), ("b", -2.0)]).powf(2.0).unwrap();
        assert_eq!(out, fv(&[("a", 9.0), ("b", 4.0)]));
    }

    #[test]
    fn pow_zeroth_power() {
        let out = fv(&[("a", 5.0)]).powf(0.0).unwrap();
        assert_eq!(out, fv(&[("a", 1.0)]));
    }

    #[test]
    fn pow_square_root() {
        let out = fv(&[("a", 4.0)]).powf(0.5).unwrap();
        assert_eq!(out, fv(&[("a", 2.0)]));
    }

    #[test]
    fn pow_rejects_fractional_exponent_of_negative() {
        let err = fv(&[("a", -4.0)]).powf(0.5).unwrap_err();
        assert!(matches!(err, Error::FractionalPowerOfNegative { .. }));
    }

    #[test]
    fn pow_rejects_non_finite_result() {
        // 0^-1 blows up to infinity and must not be stored.
        let err = fv(&[("a", 0.0)]).powf(-1.0).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue(_)));
    }

    #[test]
    fn dot_over_intersection() {
        let a = fv(&[("a", 1.0), ("b", 2.0)]);
        let b = fv(&[("b", 3.0), ("c", 4.0)]);
        assert_eq!(a.dot(&b).unwrap(), 6.0);
    }

    #[test]
    fn dot_empty_is_zero() {
        assert_eq!(FeatureVector::new().dot(&fv(&[("x", 9.0)])).unwrap(), 0.0);
    }

    #[test]
    fn dot_matches_brute_force_oracle() {
        // Oracle: enumerate every pairwise product by hand.
        let a = fv(&[("a", 1.0), ("b", 2.0), ("c", 3.0)]);
        let b = fv(&[("a", 4.0), ("b", 5.0), ("c", 6.0)]);
        let expected = 1.0 * 4.0 + 2.0 * 5.0 + 3.0 * 6.0;
        assert_eq!(expected, 32.0);
        assert_eq!(a.dot(&b).unwrap(), expected);
    }

    #[test]
    fn categorical_values_fail_algebra_loudly() {
        let mut v = fv(&[("a", 1.0)]);
        v.insert(name("kind"), FeatureValue::categorical("red"))
            .unwrap();
        let w = fv(&[("kind", 2.0), ("a", 1.0)]);
        let err = v.add(&w).unwrap_err();
        assert!(matches!(err, Error::CategoricalValue(n) if n.as_str() == "kind"));
        let err = v.dot(&w).unwrap_err();
        assert!(matches!(err, Error::CategoricalValue(n) if n.as_str() == "kind"));
    }

    #[test]
    fn categorical_outside_intersection_is_not_touched() {
        let mut v = fv(&[("a", 2.0)]);
        v.insert(name("kind"), FeatureValue::categorical("red"))
            .unwrap();
        let out = v.mul(&fv(&[("a", 3.0)])).unwrap();
        assert_eq!(out, fv(&[("a", 6.0)]));
    }
}
