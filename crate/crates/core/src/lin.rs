//! Finite formal linear combinations with rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::Rational;

/// A finite sum `sum c_k k` keyed by `K`. Zero coefficients are never stored,
/// so two combinations are equal exactly when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Lin<K> {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Linear extension of a map on keys.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2>) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a map sending keys to keys.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Keeps the terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Lin<K> {
        Lin { terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    /// Bilinear extension of a map on pairs of keys.
    pub fn bilinear<K2: Ord + Clone, K3: Ord + Clone>(
        &self,
        other: &Lin<K2>,
        mut f: impl FnMut(&K, &K2) -> Lin<K3>,
    ) -> Lin<K3> {
        let mut out = Lin::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

impl<K: Ord + Clone> IntoIterator for Lin<K> {
    type Item = (K, Rational);
    type IntoIter = btree_map::IntoIter<K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord + Clone> IntoIterator for &'a Lin<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&Lin<K>> for Lin<K> {
    fn add_assign(&mut self, rhs: &Lin<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> Add for &Lin<K> {
    type Output = Lin<K>;

    fn add(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &Lin<K> {
    type Output = Lin<K>;

    fn sub(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &Lin<K> {
    type Output = Lin<K>;

    fn neg(self) -> Lin<K> {
        Lin { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect() }
    }
}
