//! Laurent polynomials in `X_1..X_n` with coefficients in `k[[h, z]]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::ctx::{VarCtx, MAX_STRANDS};
use super::series::TruncSeries;
use super::unis::UniSeries;
use super::RingError;
use crate::scalar::Scalar;

/// Exponent vector in `ℤⁿ` (unused slots are zero).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct XMono([i16; MAX_STRANDS]);

impl XMono {
    pub fn one() -> Self {
        XMono::default()
    }

    pub fn from_exps(e: &[i16]) -> Self {
        assert!(e.len() <= MAX_STRANDS);
        let mut m = XMono::default();
        m.0[..e.len()].copy_from_slice(e);
        m
    }

    pub fn unit(i: usize, e: i16) -> Self {
        let mut m = XMono::default();
        m.0[i] = e;
        m
    }

    pub fn exp(&self, i: usize) -> i16 {
        self.0[i]
    }

    pub fn exps(&self) -> &[i16; MAX_STRANDS] {
        &self.0
    }

    pub fn mul(&self, o: &XMono) -> XMono {
        let mut m = *self;
        for i in 0..MAX_STRANDS {
            m.0[i] += o.0[i];
        }
        m
    }

    pub fn inv(&self) -> XMono {
        let mut m = *self;
        for x in m.0.iter_mut() {
            *x = -*x;
        }
        m
    }

    pub fn permute(&self, w: &[usize]) -> XMono {
        let mut m = *self;
        for (i, &wi) in w.iter().enumerate() {
            m.0[wi] = self.0[i];
        }
        m
    }

    pub fn render(&self, n: usize) -> String {
        let mut parts = Vec::new();
        for i in 0..n {
            match self.0[i] {
                0 => {}
                1 => parts.push(format!("X{}", i + 1)),
                e => parts.push(format!("X{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Element of `k[[h, z]][X_1^{±1}, …, X_n^{±1}]`, truncated coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly<S: Scalar> {
    ctx: VarCtx,
    terms: BTreeMap<XMono, TruncSeries<S>>,
}

fn acc_term<S: Scalar>(map: &mut BTreeMap<XMono, TruncSeries<S>>, m: XMono, c: TruncSeries<S>) {
    match map.get_mut(&m) {
        Some(v) => {
            let nv = &*v + &c;
            if nv.is_zero() {
                map.remove(&m);
            } else {
                *v = nv;
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(m, c);
            }
        }
    }
}

impl<S: Scalar> XPoly<S> {
    pub fn zero(ctx: VarCtx) -> Self {
        XPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: VarCtx) -> Self {
        Self::monomial(ctx, XMono::one(), TruncSeries::one(ctx))
    }

    /// A coefficient series times a monomial. The series must be free of `y`.
    pub fn monomial(ctx: VarCtx, m: XMono, c: TruncSeries<S>) -> Self {
        assert!(c.is_y_free(), "XPoly coefficients may not involve y");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        XPoly { ctx, terms }
    }

    pub fn constant(ctx: VarCtx, c: TruncSeries<S>) -> Self {
        Self::monomial(ctx, XMono::one(), c)
    }

    pub fn x(ctx: VarCtx, i: usize) -> Self {
        Self::x_pow(ctx, i, 1)
    }

    pub fn x_pow(ctx: VarCtx, i: usize, e: i16) -> Self {
        assert!(i < ctx.n());
        Self::monomial(ctx, XMono::unit(i, e), TruncSeries::one(ctx))
    }

    pub fn from_mono(ctx: VarCtx, m: XMono) -> Self {
        Self::monomial(ctx, m, TruncSeries::one(ctx))
    }

    pub fn ctx(&self) -> &VarCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XMono, &TruncSeries<S>)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &XMono) -> TruncSeries<S> {
        self.terms.get(m).cloned().unwrap_or_else(|| TruncSeries::zero(self.ctx))
    }

    /// Smallest certified degree among coefficients (the cutoff when empty).
    pub fn prec(&self) -> u32 {
        self.terms.values().map(|c| c.prec()).min().unwrap_or(self.ctx.cutoff())
    }

    fn check_ctx(&self, o: &Self) -> Result<(), RingError> {
        if self.ctx != o.ctx {
            return Err(RingError::CtxMismatch(self.ctx, o.ctx));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.check_ctx(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            acc_term(&mut terms, *m, c.clone());
        }
        Ok(XPoly { ctx: self.ctx, terms })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.check_ctx(o)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                acc_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(XPoly { ctx: self.ctx, terms })
    }

    pub fn neg_ref(&self) -> Self {
        XPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    /// Multiply by a `y`-free series.
    pub fn scale(&self, k: &TruncSeries<S>) -> Self {
        assert!(k.is_y_free());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            acc_term(&mut terms, *m, c * k);
        }
        XPoly { ctx: self.ctx, terms }
    }

    pub fn scale_scalar(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero(self.ctx);
        }
        XPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (*m, c.scale(k))).collect() }
    }

    pub fn mul_mono(&self, mono: &XMono) -> Self {
        XPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    pub fn permute(&self, w: &[usize]) -> Self {
        XPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.permute(w), c.clone())).collect() }
    }

    /// Exchange `X_r` and `X_{r+1}` (0-based `r`).
    pub fn swap(&self, r: usize) -> Self {
        assert!(r + 1 < self.ctx.n());
        let mut w: Vec<usize> = (0..self.ctx.n()).collect();
        w.swap(r, r + 1);
        self.permute(&w)
    }

    /// Exact quotient. `den` must be a unit monomial or a unit-monomial multiple of
    /// `c·(X_j − X_i)` with `c` a nonzero scalar.
    pub fn exact_div(&self, den: &Self) -> Result<Self, RingError> {
        self.check_ctx(den)?;
        let dt: Vec<(&XMono, &TruncSeries<S>)> = den.terms.iter().collect();
        match dt.as_slice() {
            [(m, c)] => {
                let ci = c.invert()?;
                Ok(self.scale(&ci).mul_mono(&m.inv()))
            }
            [(m1, c1), (m2, c2)] => {
                let k1 = c1.constant_term();
                let is_scalar = |c: &TruncSeries<S>| c.len() == 1 && !c.constant_term().is_zero();
                if !is_scalar(c1) || !is_scalar(c2) || k1.add_ref(&c2.constant_term()) != S::zero() {
                    return Err(RingError::UnsupportedDenominator(den.to_string()));
                }
                // den = k1 X^{m2} X_i^{-1} (X_j − X_i) where m1 − m2 = e_j − e_i
                let n = self.ctx.n();
                let diff: Vec<i16> = (0..n).map(|t| m1.exp(t) - m2.exp(t)).collect();
                let j = diff.iter().position(|&d| d == 1);
                let i = diff.iter().position(|&d| d == -1);
                let nonzero = diff.iter().filter(|&&d| d != 0).count();
                let (Some(j), Some(i)) = (j, i) else {
                    return Err(RingError::UnsupportedDenominator(den.to_string()));
                };
                if nonzero != 2 {
                    return Err(RingError::UnsupportedDenominator(den.to_string()));
                }
                let shift = m2.mul(&XMono::unit(i, -1));
                let kinv = k1.inv().unwrap();
                let pre = self.scale_scalar(&kinv).mul_mono(&shift.inv());
                pre.div_binomial(j, i)
            }
            _ => Err(RingError::UnsupportedDenominator(den.to_string())),
        }
    }

    /// Divide by `X_j − X_i`; the remainder must vanish.
    fn div_binomial(&self, j: usize, i: usize) -> Result<Self, RingError> {
        let Some(emin) = self.terms.keys().map(|m| m.exp(j)).min() else {
            return Ok(Self::zero(self.ctx));
        };
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        loop {
            let Some(e) = rem.keys().map(|m| m.exp(j)).max() else { break };
            if e <= emin {
                break;
            }
            let top: Vec<(XMono, TruncSeries<S>)> =
                rem.iter().filter(|(m, _)| m.exp(j) == e).map(|(m, c)| (*m, c.clone())).collect();
            for (m, c) in top {
                // c X^m = c X^{m−e_j} (X_j − X_i) + c X^{m−e_j+e_i}
                let qm = m.mul(&XMono::unit(j, -1));
                rem.remove(&m);
                acc_term(&mut rem, qm.mul(&XMono::unit(i, 1)), c.clone());
                acc_term(&mut quo, qm, c);
            }
        }
        if let Some((m, _)) = rem.iter().next() {
            return Err(RingError::NotDivisible(format!(
                "remainder term {} dividing by X{} - X{}",
                m.render(self.ctx.n()),
                j + 1,
                i + 1
            )));
        }
        Ok(XPoly { ctx: self.ctx, terms: quo })
    }

    /// Divided difference `(F^{s_r} − F) / (X_{r+1} − X_r)` (0-based `r`).
    pub fn demazure(&self, r: usize) -> Self {
        let num = &self.swap(r) - self;
        num.div_binomial(r + 1, r).expect("antisymmetric numerator is divisible")
    }

    /// Substitute `X_i := u_i·b(y_i)`.
    pub fn eval_y(&self, u: &[S], b: &UniSeries<S>) -> TruncSeries<S> {
        XEval::new(self.ctx, u, b).eval(self)
    }

    pub fn to_json(&self) -> Value {
        let n = self.ctx.n();
        let terms: Vec<Value> =
            self.terms.iter().map(|(m, c)| json!([m.exps()[..n].to_vec(), c.to_json()])).collect();
        json!({ "terms": terms })
    }

    pub fn from_json(ctx: VarCtx, v: &Value) -> Result<Self, RingError> {
        let bad = || RingError::Parse(v.to_string());
        let mut out = Self::zero(ctx);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let arr = t.as_array().ok_or_else(bad)?;
            let exps: Vec<i16> = arr
                .first()
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i16))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            if exps.len() != ctx.n() {
                return Err(bad());
            }
            let c = TruncSeries::from_json(ctx, arr.get(1).ok_or_else(bad)?)?;
            if !c.is_y_free() {
                return Err(bad());
            }
            acc_term(&mut out.terms, XMono::from_exps(&exps), c);
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for XPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.ctx.n();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_string();
                let ms = m.render(n);
                if ms == "1" {
                    format!("({cs})")
                } else if cs == "1" {
                    ms
                } else {
                    format!("({cs})*{ms}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! xpoly_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<S: Scalar> $tr<&XPoly<S>> for &XPoly<S> {
            type Output = XPoly<S>;
            fn $method(self, o: &XPoly<S>) -> XPoly<S> {
                self.$inner(o).expect("ctx mismatch")
            }
        }
        impl<S: Scalar> $tr<XPoly<S>> for XPoly<S> {
            type Output = XPoly<S>;
            fn $method(self, o: XPoly<S>) -> XPoly<S> {
                self.$inner(&o).expect("ctx mismatch")
            }
        }
    };
}

xpoly_binop!(Add, add, try_add);
xpoly_binop!(Sub, sub, try_sub);
xpoly_binop!(Mul, mul, try_mul);

impl<S: Scalar> Neg for &XPoly<S> {
    type Output = XPoly<S>;
    fn neg(self) -> XPoly<S> {
        self.neg_ref()
    }
}

/// Cached evaluator for `X_i := u_i·b(y_i)`.
pub struct XEval<S: Scalar> {
    ctx: VarCtx,
    base: Vec<TruncSeries<S>>,
    base_inv: Vec<TruncSeries<S>>,
    pos: Vec<Vec<TruncSeries<S>>>,
    neg: Vec<Vec<TruncSeries<S>>>,
    monos: HashMap<XMono, TruncSeries<S>>,
}

impl<S: Scalar> XEval<S> {
    pub fn new(ctx: VarCtx, u: &[S], b: &UniSeries<S>) -> Self {
        assert_eq!(u.len(), ctx.n());
        let base: Vec<TruncSeries<S>> = (0..ctx.n())
            .map(|i| {
                let bi = TruncSeries::subst(b, &TruncSeries::y(ctx, i)).expect("y has zero constant term");
                bi.scale(&u[i])
            })
            .collect();
        let base_inv = base.iter().map(|s| s.invert().expect("labels are nonzero")).collect();
        let one = TruncSeries::one(ctx);
        XEval {
            ctx,
            base,
            base_inv,
            pos: vec![vec![one.clone()]; ctx.n()],
            neg: vec![vec![one]; ctx.n()],
            monos: HashMap::new(),
        }
    }

    /// `(u_i b(y_i))^e`.
    pub fn power(&mut self, i: usize, e: i16) -> TruncSeries<S> {
        let (cache, base) = if e >= 0 { (&mut self.pos[i], &self.base[i]) } else { (&mut self.neg[i], &self.base_inv[i]) };
        let k = e.unsigned_abs() as usize;
        while cache.len() <= k {
            let next = cache.last().unwrap() * base;
            cache.push(next);
        }
        cache[k].clone()
    }

    pub fn mono(&mut self, m: &XMono) -> TruncSeries<S> {
        if let Some(v) = self.monos.get(m) {
            return v.clone();
        }
        let mut acc = TruncSeries::one(self.ctx);
        for i in 0..self.ctx.n() {
            let e = m.exp(i);
            if e != 0 {
                acc = &acc * &self.power(i, e);
            }
        }
        self.monos.insert(*m, acc.clone());
        acc
    }

    pub fn eval(&mut self, f: &XPoly<S>) -> TruncSeries<S> {
        let mut acc = TruncSeries::zero(self.ctx);
        for (m, c) in f.terms() {
            let v = self.mono(m);
            acc = &acc + &(&v * c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = XPoly<Rational>;
    type T = TruncSeries<Rational>;

    fn ctx(n: usize, cutoff: u32) -> VarCtx {
        VarCtx::new(n, 0, cutoff).unwrap()
    }

    #[test]
    fn division_examples() {
        let c = ctx(2, 3);
        let (x1, x2) = (P::x(c, 0), P::x(c, 1));
        let d = &x2 - &x1;
        assert_eq!(d.exact_div(&d).unwrap(), P::one(c));
        let num = &(&x2 * &x2) - &(&x1 * &x1);
        assert_eq!(num.exact_div(&d).unwrap(), &x1 + &x2);
        let lp = &P::x_pow(c, 0, 1) * &P::x_pow(c, 1, -1);
        let rp = &P::x_pow(c, 1, 1) * &P::x_pow(c, 0, -1);
        assert_eq!(&lp * &rp, P::one(c));
        assert!(matches!(x1.exact_div(&d), Err(RingError::NotDivisible(_))));
    }

    #[test]
    fn laurent_division() {
        let c = ctx(2, 2);
        let (x1, x2) = (P::x(c, 0), P::x(c, 1));
        let f = &P::x_pow(c, 0, -2) + &(&x2 * &x1);
        let d = &x2 - &x1;
        let prod = &f * &d;
        assert_eq!(prod.exact_div(&d).unwrap(), f);
        // scaled, shifted denominator
        let d2 = (&d * &P::x_pow(c, 1, -3)).scale_scalar(&Rational::new(-5, 2));
        assert_eq!((&f * &d2).exact_div(&d2).unwrap(), f);
    }

    #[test]
    fn demazure_closed_form() {
        // ∂(X1^a X2^b) with m = min(a,b): sign(a−b)·(X1X2)^m h_{|a−b|−1}(X1,X2)
        let c = ctx(2, 2);
        for a in 0..4i16 {
            for b in 0..4i16 {
                let f = P::from_mono(c, XMono::from_exps(&[a, b]));
                let got = f.demazure(0);
                let m = a.min(b);
                let k = (a - b).abs();
                let mut want = P::zero(c);
                if k > 0 {
                    for t in 0..k {
                        want = &want + &P::from_mono(c, XMono::from_exps(&[m + t, m + k - 1 - t]));
                    }
                    if a < b {
                        want = want.neg_ref();
                    }
                }
                assert_eq!(got, want, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let c = ctx(2, 1);
        let u = [Rational::from_i64(2), Rational::from_i64(1)];
        let b = UniSeries::one_plus();
        let got = P::x(c, 0).eval_y(&u, &b);
        assert_eq!(got, &T::from_i64(c, 2) + &T::y(c, 0).scale_i64(2));
        assert_eq!(P::one(c).eval_y(&u, &b), T::one(c));
        let c2 = ctx(2, 2);
        let u1 = [Rational::from_i64(1), Rational::from_i64(1)];
        let got = P::x_pow(c2, 0, -1).eval_y(&u1, &b);
        let y = T::y(c2, 0);
        assert_eq!(got, &(&T::one(c2) - &y) + &(&y * &y));
    }
}
