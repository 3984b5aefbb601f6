//! Module vectors: finite sums over idempotent components.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::diagramkit::nu_of;
use crate::paramkit::Loading;
use crate::ringkit::{TruncSeries, XPoly};
use crate::scalar::{Rational, Scalar};

/// Idempotent data of a component: positions `B`, labels `u` (KLR side) and the
/// number `ν_j` of strands left of each red line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentLabel {
    pub b: Vec<Rational>,
    pub u: Option<Vec<usize>>,
    pub nu: Vec<usize>,
}

impl ComponentLabel {
    pub fn of_loading(l: &Loading, thetas: &[Rational]) -> Self {
        ComponentLabel { b: l.positions().to_vec(), u: l.labels().map(|x| x.to_vec()), nu: nu_of(l.positions(), thetas) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "B": self.b.iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
            "u": self.u.as_ref().map(|u| u.iter().map(|i| i + 1).collect::<Vec<_>>()),
            "nu": self.nu,
        })
    }
}

/// Values a representation acts on.
pub trait ModVal<S: Scalar>: Clone + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self;
    /// Multiply by a series in `h, z` only.
    fn scale(&self, c: &TruncSeries<S>) -> Self;
    fn prec(&self) -> u32;
    /// A description of the first place (up to the certified degree) where the two differ.
    fn first_difference(&self, o: &Self) -> Option<String>;
    fn to_json(&self) -> Value;
}

impl<S: Scalar> ModVal<S> for TruncSeries<S> {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(*self.ctx())
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn scale(&self, c: &TruncSeries<S>) -> Self {
        self * c
    }
    fn prec(&self) -> u32 {
        TruncSeries::prec(self)
    }
    fn first_difference(&self, o: &Self) -> Option<String> {
        TruncSeries::first_difference(self, o).map(|m| {
            let a = self.coeff(&m).to_wire();
            let b = o.coeff(&m).to_wire();
            format!("coefficient of {}: {a} vs {b}", m.render(self.ctx()))
        })
    }
    fn to_json(&self) -> Value {
        TruncSeries::to_json(self)
    }
}

impl<S: Scalar> ModVal<S> for XPoly<S> {
    fn zero_like(&self) -> Self {
        XPoly::zero(*self.ctx())
    }
    fn is_zero(&self) -> bool {
        XPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn scale(&self, c: &TruncSeries<S>) -> Self {
        XPoly::scale(self, c)
    }
    fn prec(&self) -> u32 {
        XPoly::prec(self)
    }
    fn first_difference(&self, o: &Self) -> Option<String> {
        let n = self.ctx().n();
        let monos: std::collections::BTreeSet<_> = self.terms().chain(o.terms()).map(|(m, _)| *m).collect();
        for m in monos {
            let (a, b) = (self.coeff(&m), o.coeff(&m));
            if let Some(hm) = a.first_difference(&b) {
                return Some(format!(
                    "coefficient of {}·{}: {} vs {}",
                    m.render(n),
                    hm.render(self.ctx()),
                    a.coeff(&hm).to_wire(),
                    b.coeff(&hm).to_wire()
                ));
            }
        }
        None
    }
    fn to_json(&self) -> Value {
        XPoly::to_json(self)
    }
}

/// A finite sum of component values; absent components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVec<V> {
    comps: BTreeMap<ComponentLabel, V>,
}

impl<V> Default for ModuleVec<V> {
    fn default() -> Self {
        ModuleVec { comps: BTreeMap::new() }
    }
}

impl<V> ModuleVec<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(c: ComponentLabel, v: V) -> Self {
        let mut m = Self::new();
        m.comps.insert(c, v);
        m
    }

    pub fn get(&self, c: &ComponentLabel) -> Option<&V> {
        self.comps.get(c)
    }

    pub fn insert(&mut self, c: ComponentLabel, v: V) {
        self.comps.insert(c, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentLabel, &V)> {
        self.comps.iter()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

impl<V> ModuleVec<V> {
    pub fn plus<S: Scalar>(&self, o: &Self) -> Self
    where
        V: ModVal<S>,
    {
        let mut out = self.clone();
        for (c, v) in &o.comps {
            let nv = match out.comps.get(c) {
                Some(x) => x.add(v),
                None => v.clone(),
            };
            if nv.is_zero() {
                out.comps.remove(c);
            } else {
                out.comps.insert(c.clone(), nv);
            }
        }
        out
    }

    pub fn to_json<S: Scalar>(&self) -> Value
    where
        V: ModVal<S>,
    {
        Value::Array(self.comps.iter().map(|(c, v)| json!({"component": c.to_json(), "value": v.to_json()})).collect())
    }
}

impl<V: fmt::Display> fmt::Display for ModuleVec<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})")?;
            if let Some(u) = &c.u {
                write!(f, "e{:?}", u.iter().map(|i| i + 1).collect::<Vec<_>>())?;
            }
            if !c.nu.is_empty() {
                write!(f, "f{:?}", c.nu)?;
            }
        }
        Ok(())
    }
}
