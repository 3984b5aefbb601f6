//! Truncated multivariate power series with certified-degree tracking.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::ctx::{Mono, VarCtx};
use super::unis::UniSeries;
use super::RingError;
use crate::scalar::Scalar;

/// Element of `k[[y, h, z]]` known exactly through total degree `prec`.
///
/// `prec` never exceeds the context cutoff. Terms above `prec` are never stored.
/// Arithmetic propagates `prec`; in particular division by a non-unit linear form
/// lowers it by one.
#[derive(Clone, Debug)]
pub struct TruncSeries<S> {
    ctx: VarCtx,
    prec: u32,
    terms: BTreeMap<Mono, S>,
}

/// Coefficient-wise equality; `prec` is bookkeeping and does not take part.
impl<S: Scalar> PartialEq for TruncSeries<S> {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.terms == o.terms
    }
}

impl<S: Scalar> Eq for TruncSeries<S> {}

impl<S: Scalar> Hash for TruncSeries<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

fn accumulate<S: Scalar>(map: &mut BTreeMap<Mono, S>, m: Mono, c: S) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(v) => {
            let nv = v.add_ref(&c);
            if nv.is_zero() {
                map.remove(&m);
            } else {
                *v = nv;
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

impl<S: Scalar> TruncSeries<S> {
    pub fn zero(ctx: VarCtx) -> Self {
        TruncSeries { ctx, prec: ctx.cutoff(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: VarCtx) -> Self {
        Self::constant(ctx, S::one())
    }

    pub fn constant(ctx: VarCtx, c: S) -> Self {
        Self::monomial(ctx, Mono::one(), c)
    }

    pub fn from_i64(ctx: VarCtx, c: i64) -> Self {
        Self::constant(ctx, S::from_i64(c))
    }

    pub fn monomial(ctx: VarCtx, m: Mono, c: S) -> Self {
        let mut s = Self::zero(ctx);
        if m.degree() <= ctx.cutoff() && !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    /// The variable with flat index `k` (see [`VarCtx`] for the layout).
    pub fn var(ctx: VarCtx, k: usize) -> Self {
        Self::monomial(ctx, Mono::var(k), S::one())
    }

    pub fn y(ctx: VarCtx, i: usize) -> Self {
        Self::var(ctx, ctx.y(i))
    }

    pub fn h(ctx: VarCtx) -> Self {
        Self::var(ctx, ctx.h())
    }

    pub fn z(ctx: VarCtx, s: usize) -> Self {
        Self::var(ctx, ctx.z(s))
    }

    /// Build from arbitrary terms; duplicates are summed, zeros and over-cutoff terms dropped.
    pub fn from_terms<I: IntoIterator<Item = (Mono, S)>>(ctx: VarCtx, prec: u32, it: I) -> Self {
        let prec = prec.min(ctx.cutoff());
        let mut terms = BTreeMap::new();
        for (m, c) in it {
            if m.degree() <= prec {
                accumulate(&mut terms, m, c);
            }
        }
        TruncSeries { ctx, prec, terms }
    }

    pub fn ctx(&self) -> &VarCtx {
        &self.ctx
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Mono::one())
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Valuation for precision bookkeeping: a zero series behaves as if it had valuation `prec + 1`.
    fn val_for_prec(&self) -> u32 {
        self.valuation().unwrap_or(self.prec + 1)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect();
        TruncSeries { ctx: self.ctx, prec: self.prec, terms }
    }

    /// Lower the certified degree, dropping terms above it.
    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= prec).map(|(m, c)| (*m, c.clone())).collect();
        TruncSeries { ctx: self.ctx, prec, terms }
    }

    /// Same coefficients with a declared (lower) certified degree; used after an exact identity.
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec.min(self.ctx.cutoff());
        self.terms.retain(|m, _| m.degree() <= self.prec);
        self
    }

    fn check_ctx(&self, o: &Self) -> Result<(), RingError> {
        if self.ctx != o.ctx {
            return Err(RingError::CtxMismatch(self.ctx, o.ctx));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.check_ctx(o)?;
        let prec = self.prec.min(o.prec);
        let mut terms: BTreeMap<Mono, S> =
            self.terms.iter().filter(|(m, _)| m.degree() <= prec).map(|(m, c)| (*m, c.clone())).collect();
        for (m, c) in &o.terms {
            if m.degree() <= prec {
                accumulate(&mut terms, *m, c.clone());
            }
        }
        Ok(TruncSeries { ctx: self.ctx, prec, terms })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.check_ctx(o)?;
        let cutoff = self.ctx.cutoff();
        let prec = (self.prec.saturating_add(o.val_for_prec()))
            .min(o.prec.saturating_add(self.val_for_prec()))
            .min(cutoff);
        if self.terms.is_empty() || o.terms.is_empty() {
            return Ok(TruncSeries { ctx: self.ctx, prec, terms: BTreeMap::new() });
        }
        let mut acc: HashMap<Mono, S> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > prec {
                break;
            }
            for (mb, cb) in &o.terms {
                if da + mb.degree() > prec {
                    break;
                }
                let m = ma.mul(mb);
                let c = ca.mul_ref(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TruncSeries { ctx: self.ctx, prec, terms })
    }

    pub fn neg_ref(&self) -> Self {
        TruncSeries {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return TruncSeries { ctx: self.ctx, prec: self.prec, terms: BTreeMap::new() };
        }
        TruncSeries {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_ref(k))).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&S::from_i64(k))
    }

    /// Multiply by a monomial with coefficient one.
    pub fn mul_mono(&self, mono: &Mono) -> Self {
        let prec = (self.prec + mono.degree()).min(self.ctx.cutoff());
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() + mono.degree() <= prec)
            .map(|(m, c)| (m.mul(mono), c.clone()))
            .collect();
        TruncSeries { ctx: self.ctx, prec, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<Self, RingError> {
        let c = self.constant_term();
        let ci = c.inv().ok_or(RingError::NotAUnit)?;
        // self = c (1 + t) with t(0) = 0; 1/self = c⁻¹ Σ (−t)^k
        let t = self.scale(&ci).try_sub(&Self::one(self.ctx))?;
        let mt = t.neg_ref();
        let mut power = Self::one(self.ctx);
        let mut acc = Self::one(self.ctx);
        for _ in 0..self.prec {
            power = &power * &mt;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.truncate(self.prec).scale(&ci))
    }

    /// Exact quotient `self / den`.
    ///
    /// `den` must be a unit or a unit multiple of a linear form. In the latter case
    /// the quotient is certified one degree lower than the inputs.
    pub fn exact_div(&self, den: &Self) -> Result<Self, RingError> {
        self.check_ctx(den)?;
        if den.is_unit() {
            return Ok(self * &den.invert()?);
        }
        match den.valuation() {
            Some(1) => {}
            _ => return Err(RingError::UnsupportedDenominator(den.to_string())),
        }
        let lin = den.homogeneous_part(1);
        let w = den
            .div_linear(&lin)
            .map_err(|_| RingError::UnsupportedDenominator(den.to_string()))?;
        let q = self.div_linear(&lin)?;
        if w.is_one() {
            return Ok(q);
        }
        Ok(&q * &w.invert()?)
    }

    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Divide by a nonzero homogeneous linear form `lin`; the remainder must vanish
    /// in every certified degree.
    pub fn div_linear(&self, lin: &Self) -> Result<Self, RingError> {
        self.check_ctx(lin)?;
        if lin.is_zero() || lin.terms.keys().any(|m| m.degree() != 1) {
            return Err(RingError::UnsupportedDenominator(lin.to_string()));
        }
        if self.prec == 0 {
            return Err(RingError::PrecisionUnderflow);
        }
        // pivot on the highest-index variable of the form
        let (pm, pc) = lin.terms.iter().max_by_key(|(m, _)| m.exps().iter().position(|&x| x == 1)).unwrap();
        let p = pm.exps().iter().position(|&x| x == 1).unwrap();
        let pinv = pc.inv().expect("nonzero coefficient");
        let mut rem: BTreeMap<Mono, S> = self.terms.clone();
        let mut quo: BTreeMap<Mono, S> = BTreeMap::new();
        loop {
            let e = rem.keys().map(|m| m.exp(p)).max().unwrap_or(0);
            if e == 0 {
                break;
            }
            let top: Vec<(Mono, S)> =
                rem.iter().filter(|(m, _)| m.exp(p) == e).map(|(m, c)| (*m, c.clone())).collect();
            for (m, c) in top {
                let qm = m.div_var(p).unwrap();
                let qc = c.mul_ref(&pinv);
                for (lm, lc) in &lin.terms {
                    accumulate(&mut rem, qm.mul(lm), -qc.mul_ref(lc));
                }
                accumulate(&mut quo, qm, qc);
            }
        }
        if let Some((m, _)) = rem.iter().next() {
            return Err(RingError::NotDivisible(format!(
                "remainder term {} when dividing by {}",
                m.render(&self.ctx),
                lin
            )));
        }
        let prec = self.prec - 1;
        quo.retain(|m, _| m.degree() <= prec);
        Ok(TruncSeries { ctx: self.ctx, prec, terms: quo })
    }

    /// `y_i ↦ y_{w[i]}` for a permutation `w` of the strand indices (0-based one-line form).
    pub fn permute_y(&self, w: &[usize]) -> Self {
        debug_assert_eq!(w.len(), self.ctx.n());
        TruncSeries {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, c)| (m.permute(w), c.clone())).collect(),
        }
    }

    /// Exchange `y_r` and `y_{r+1}` (0-based `r`).
    pub fn swap_y(&self, r: usize) -> Self {
        assert!(r + 1 < self.ctx.n(), "swap index {r} out of range");
        TruncSeries {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, c)| (m.swap(r, r + 1), c.clone())).collect(),
        }
    }

    /// Demazure operator `(f^{s_r} − f) / (y_{r+1} − y_r)` (0-based `r`).
    pub fn demazure(&self, r: usize) -> Result<Self, RingError> {
        let num = &self.swap_y(r) - self;
        let den = &Self::y(self.ctx, r + 1) - &Self::y(self.ctx, r);
        num.div_linear(&den)
    }

    /// Composition `b(arg)`; `arg` must have zero constant term.
    pub fn subst(b: &UniSeries<S>, arg: &Self) -> Result<Self, RingError> {
        if !arg.constant_term().is_zero() {
            return Err(RingError::NonZeroConstant);
        }
        let ctx = arg.ctx;
        let top = b.coeffs().len().min(ctx.cutoff() as usize + 1);
        if top == 0 {
            return Ok(Self::zero(ctx));
        }
        let mut acc = Self::constant(ctx, b.coeffs()[top - 1].clone());
        for k in (0..top - 1).rev() {
            acc = &(&acc * arg) + &Self::constant(ctx, b.coeffs()[k].clone());
        }
        Ok(acc)
    }

    /// Set every variable flagged in `mask` to zero.
    pub fn kill_vars(&self, mask: &[bool]) -> Self {
        TruncSeries {
            ctx: self.ctx,
            prec: self.prec,
            terms: self.terms.iter().filter(|(m, _)| m.avoids(mask)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// True when no `y` variable occurs.
    pub fn is_y_free(&self) -> bool {
        let n = self.ctx.n();
        self.terms.keys().all(|m| m.exps()[..n].iter().all(|&x| x == 0))
    }

    /// First monomial (in graded order) where the two series differ, up to the
    /// smaller certified degree. `None` means agreement.
    pub fn first_difference(&self, o: &Self) -> Option<Mono> {
        let prec = self.prec.min(o.prec);
        let mut diff = None;
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() <= prec) {
            if o.terms.get(m) != Some(c) {
                diff = Some(*m);
                break;
            }
        }
        for (m, c) in o.terms.iter().filter(|(m, _)| m.degree() <= prec) {
            if self.terms.get(m) != Some(c) {
                diff = Some(match diff {
                    Some(d) if d < *m => d,
                    _ => *m,
                });
                break;
            }
        }
        diff
    }

    /// Equality up to the smaller certified degree.
    pub fn eq_certified(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.first_difference(o).is_none()
    }

    pub fn to_json(&self) -> Value {
        let nv = self.ctx.nvars();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!([m.exps()[..nv].to_vec(), c.to_wire()]))
            .collect();
        json!({"prec": self.prec, "terms": terms})
    }

    pub fn from_json(ctx: VarCtx, v: &Value) -> Result<Self, RingError> {
        let bad = || RingError::Parse(v.to_string());
        let prec = v.get("prec").and_then(Value::as_u64).map(|p| p as u32).unwrap_or(ctx.cutoff());
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let arr = t.as_array().ok_or_else(bad)?;
            let exps: Vec<u8> = arr
                .first()
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u8))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            if exps.len() != ctx.nvars() {
                return Err(bad());
            }
            let c = S::parse_wire(arr.get(1).and_then(Value::as_str).ok_or_else(bad)?)
                .map_err(|e| RingError::Parse(e.to_string()))?;
            terms.push((Mono::from_exps(&exps), c));
        }
        Ok(Self::from_terms(ctx, prec, terms))
    }
}

impl<S: Scalar> fmt::Display for TruncSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mut cs = c.to_wire();
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{cs}")?;
            } else if cs == "1" {
                write!(f, "{}", m.render(&self.ctx))?;
            } else {
                write!(f, "{cs}*{}", m.render(&self.ctx))?;
            }
        }
        Ok(())
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<S: Scalar> $tr<&TruncSeries<S>> for &TruncSeries<S> {
            type Output = TruncSeries<S>;
            fn $method(self, o: &TruncSeries<S>) -> TruncSeries<S> {
                self.$inner(o).expect("ctx mismatch")
            }
        }
        impl<S: Scalar> $tr<TruncSeries<S>> for TruncSeries<S> {
            type Output = TruncSeries<S>;
            fn $method(self, o: TruncSeries<S>) -> TruncSeries<S> {
                self.$inner(&o).expect("ctx mismatch")
            }
        }
        impl<S: Scalar> $tr<&TruncSeries<S>> for TruncSeries<S> {
            type Output = TruncSeries<S>;
            fn $method(self, o: &TruncSeries<S>) -> TruncSeries<S> {
                self.$inner(o).expect("ctx mismatch")
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn neg(self) -> TruncSeries<S> {
        self.neg_ref()
    }
}

impl<S: Scalar> Neg for TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn neg(self) -> TruncSeries<S> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type T = TruncSeries<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn product_truncates() {
        let c2 = VarCtx::new(2, 1, 2).unwrap();
        let y1 = T::y(c2, 0);
        let one = T::one(c2);
        assert_eq!((&one + &y1) * (&one - &y1), &one - &(&y1 * &y1));
        let c1 = VarCtx::new(2, 1, 1).unwrap();
        let y1 = T::y(c1, 0);
        let one = T::one(c1);
        assert_eq!((&one + &y1) * (&one + &y1), &one + &y1.scale_i64(2));
        assert!((T::h(c1) * T::z(c1, 0)).is_zero());
    }

    #[test]
    fn inverse_examples() {
        let c = VarCtx::new(2, 0, 2).unwrap();
        let one = T::one(c);
        let y1 = T::y(c, 0);
        assert_eq!(one.invert().unwrap(), one);
        let inv = (&one + &y1).invert().unwrap();
        assert_eq!(inv, &(&one - &y1) + &(&y1 * &y1));
        assert_eq!(y1.invert(), Err(RingError::NotAUnit));
    }

    #[test]
    fn division_examples() {
        let c = VarCtx::new(2, 1, 3).unwrap();
        let (y1, y2, h) = (T::y(c, 0), T::y(c, 1), T::h(c));
        let den = &y2 - &y1;
        let num = &(&y2 * &y2) - &(&y1 * &y1);
        let quo = num.exact_div(&den).unwrap();
        assert_eq!(quo, &y1 + &y2);
        assert_eq!(quo.prec(), 2);
        assert!(T::zero(c).exact_div(&den).unwrap().is_zero());
        assert!(matches!((&y1 + &h).exact_div(&den), Err(RingError::NotDivisible(_))));
        assert!(matches!(y1.exact_div(&(&y1 * &y1)), Err(RingError::UnsupportedDenominator(_))));
    }

    #[test]
    fn division_by_unit_multiple_of_linear_form() {
        let c = VarCtx::new(2, 0, 4).unwrap();
        let (y1, y2) = (T::y(c, 0), T::y(c, 1));
        let w = &T::one(c) + &(&y1 * &y2).scale(&q(3, 2));
        let lin = &y2 - &y1;
        let f = &T::one(c) + &y1.pow(2);
        let num = &(&f * &lin) * &w;
        let got = num.exact_div(&(&lin * &w)).unwrap();
        assert!(got.eq_certified(&f));
        assert_eq!(got.prec(), 3);
    }

    #[test]
    fn substitution_examples() {
        let c = VarCtx::new(2, 1, 2).unwrap();
        let y1 = T::y(c, 0);
        let e = UniSeries::<Rational>::exp(2);
        let want = &(&T::one(c) + &y1) + &(&y1 * &y1).scale(&q(1, 2));
        assert_eq!(T::subst(&e, &y1).unwrap(), want);
        let lin = UniSeries::<Rational>::one_plus();
        let arg = &y1 - &T::z(c, 0);
        assert_eq!(T::subst(&lin, &arg).unwrap(), &T::one(c) + &arg);
        let c1 = VarCtx::new(2, 0, 1).unwrap();
        let arg = &T::y(c1, 0) + &T::h(c1);
        assert_eq!(T::subst(&UniSeries::exp(1), &arg).unwrap(), &T::one(c1) + &arg);
        assert_eq!(T::subst(&e, &T::one(c)), Err(RingError::NonZeroConstant));
    }

    #[test]
    fn demazure_examples() {
        let c = VarCtx::new(2, 0, 3).unwrap();
        let (y1, y2) = (T::y(c, 0), T::y(c, 1));
        assert_eq!(y1.demazure(0).unwrap(), T::one(c));
        assert!((&y1 * &y2).demazure(0).unwrap().is_zero());
        assert_eq!((&y1 * &y1).demazure(0).unwrap(), &y1 + &y2);
    }

    #[test]
    fn symmetric_group_action() {
        let c = VarCtx::new(3, 0, 3).unwrap();
        let (y1, y2, y3) = (T::y(c, 0), T::y(c, 1), T::y(c, 2));
        assert_eq!(y1.swap_y(0), y2);
        // s1 s2 as a map on indices: 0 -> 1, 1 -> 2, 2 -> 0
        let w = [1, 2, 0];
        assert_eq!((&y1 * &y3).permute_y(&w), &y2 * &y1);
        assert_eq!((&y1 * &y3).permute_y(&[0, 1, 2]), &y1 * &y3);
    }

    #[test]
    fn json_roundtrip() {
        let c = VarCtx::new(2, 1, 3).unwrap();
        let f = &(&T::y(c, 0) * &T::z(c, 0)).scale(&q(-3, 4)) + &T::one(c);
        let back = T::from_json(c, &f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.to_string(), "1 - 3/4*y1*z1");
    }

    #[test]
    fn precision_of_product_uses_valuation() {
        let c = VarCtx::new(2, 0, 4).unwrap();
        let y1 = T::y(c, 0);
        let lowered = y1.truncate(2);
        let p = &lowered * &y1.pow(2);
        assert_eq!(p.prec(), 4);
        let p = &lowered * &T::one(c);
        assert_eq!(p.prec(), 2);
    }
}
