//! The series `b` (spectral coordinate) and `d` (deformation of `q`).

use serde::{Deserialize, Serialize};

use crate::ringkit::{TruncSeries, UniSeries, VarCtx};
use crate::scalar::Scalar;

use super::ParamError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BChoice<S> {
    Exp,
    OnePlus,
    Custom(Vec<S>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DChoice {
    One,
    Exp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChoice<S> {
    pub b: BChoice<S>,
    pub d: DChoice,
}

impl<S: Scalar> SeriesChoice<S> {
    pub fn new(b: BChoice<S>, d: DChoice) -> Result<Self, ParamError> {
        let sc = SeriesChoice { b, d };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let uses_exp = self.d == DChoice::Exp || self.b == BChoice::Exp;
        if uses_exp && S::characteristic() != 0 {
            return Err(ParamError::Series(format!(
                "the exponential series needs characteristic 0, field has characteristic {}",
                S::characteristic()
            )));
        }
        if self.d == DChoice::Exp && self.b != BChoice::Exp {
            return Err(ParamError::Series("d = exp requires b = exp".into()));
        }
        if let BChoice::Custom(c) = &self.b {
            if !UniSeries::new(c.clone()).is_normalized() {
                return Err(ParamError::Series("custom b must start 1 + t + …".into()));
            }
        }
        Ok(())
    }

    pub fn b_series(&self, cutoff: u32) -> UniSeries<S> {
        match &self.b {
            BChoice::Exp => UniSeries::exp(cutoff),
            BChoice::OnePlus => UniSeries::one_plus(),
            BChoice::Custom(c) => UniSeries::new(c.clone()),
        }
    }

    pub fn d_series(&self, cutoff: u32) -> UniSeries<S> {
        match self.d {
            DChoice::One => UniSeries::one(),
            DChoice::Exp => UniSeries::exp(cutoff),
        }
    }

    /// `𝗊 = q·d(h)` as a series in `ctx`.
    pub fn qq(&self, q: &S, ctx: VarCtx) -> TruncSeries<S> {
        TruncSeries::subst(&self.d_series(ctx.cutoff()), &TruncSeries::h(ctx))
            .expect("h has zero constant term")
            .scale(q)
    }

    /// `b(arg)`.
    pub fn b_of(&self, arg: &TruncSeries<S>) -> TruncSeries<S> {
        TruncSeries::subst(&self.b_series(arg.ctx().cutoff()), arg).expect("argument has zero constant term")
    }

    pub fn name(&self) -> String {
        let b = match &self.b {
            BChoice::Exp => "exp".to_string(),
            BChoice::OnePlus => "one_plus".to_string(),
            BChoice::Custom(c) => format!("custom{:?}", c.iter().map(|x| x.to_wire()).collect::<Vec<_>>()),
        };
        let d = match self.d {
            DChoice::One => "one",
            DChoice::Exp => "exp",
        };
        format!("b={b},d={d}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn invariants() {
        assert!(SeriesChoice::<Rational>::new(BChoice::OnePlus, DChoice::Exp).is_err());
        assert!(SeriesChoice::<Fp<7>>::new(BChoice::Exp, DChoice::One).is_err());
        assert!(SeriesChoice::<Fp<7>>::new(BChoice::OnePlus, DChoice::One).is_ok());
        let bad = BChoice::Custom(vec![Rational::from_i64(1), Rational::from_i64(2)]);
        assert!(SeriesChoice::new(bad, DChoice::One).is_err());
    }

    #[test]
    fn deformed_q() {
        let sc = SeriesChoice::<Rational>::new(BChoice::Exp, DChoice::Exp).unwrap();
        let ctx = VarCtx::new(2, 0, 2).unwrap();
        let qq = sc.qq(&Rational::from_i64(2), ctx);
        let h = TruncSeries::h(ctx);
        let want = &(&TruncSeries::from_i64(ctx, 2) + &h.scale_i64(2)) + &(&h * &h);
        assert_eq!(qq, want);
    }
}
