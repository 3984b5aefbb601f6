//! JSON configuration and the resolved, typed parameter bundle.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ringkit::{TruncSeries, VarCtx};
use crate::scalar::{Field, FieldKind, Rational, Scalar};

use super::{BChoice, DChoice, ParamError, ParamGraph, RedData, RedLine, SeriesChoice, Weighting};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawRed {
    pub theta: Value,
    #[serde(rename = "Q")]
    pub q: Value,
}

/// The configuration file as written by users. Scalars may be strings (`"a/b"`) or integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub field: String,
    pub q: Value,
    #[serde(rename = "U")]
    pub u: Vec<Value>,
    #[serde(default)]
    pub b: Option<Value>,
    #[serde(default)]
    pub d: Option<DChoice>,
    #[serde(default)]
    pub kappa: Option<Value>,
    #[serde(default)]
    pub reds: Vec<RawRed>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub order: Option<u32>,
    /// Sign of the equal-label KLR crossing (`+1` default).
    #[serde(default)]
    pub klr_sign: Option<i64>,
    /// Coefficient of `h` in the KLR polynomial action (`0` or `1`; default `1`).
    #[serde(default)]
    pub klr_h: Option<u8>,
    /// Deformation sign `σ` in `Q̃ = Q·b(σz)` (`+1` default).
    #[serde(default)]
    pub sigma: Option<i64>,
}

/// Parse a field name: `Q`, `QQ`, `rational`, or a prime as `F7`, `GF(7)`, `Fp7`.
pub fn parse_field(s: &str) -> Result<Field, ParamError> {
    let t = s.trim();
    match t {
        "Q" | "QQ" | "rational" | "rationals" => return Ok(Field::rational()),
        _ => {}
    }
    let digits = t
        .trim_start_matches("GF(")
        .trim_end_matches(')')
        .trim_start_matches("Fp")
        .trim_start_matches("F_")
        .trim_start_matches('F');
    let p: u64 = digits.parse().map_err(|_| ParamError::Config(format!("unknown field {s:?}")))?;
    Field::prime(p).map_err(|e| ParamError::Config(e.to_string()))
}

fn scalar_from_value<S: Scalar>(v: &Value) -> Result<S, ParamError> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(ParamError::Config(format!("expected a scalar, got {v}"))),
    };
    S::parse_wire(&s).map_err(|e| ParamError::Config(e.to_string()))
}

fn position_from_value(v: &Value) -> Result<Rational, ParamError> {
    scalar_from_value::<Rational>(v)
}

/// Conventions that the presentation leaves open; see the decisions ledger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub klr_sign: i64,
    pub klr_h: bool,
    pub sigma: i64,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { klr_sign: 1, klr_h: true, sigma: 1 }
    }
}

/// Fully validated parameters over the scalar field `S`.
#[derive(Clone, Debug)]
pub struct Params<S: Scalar> {
    pub graph: ParamGraph<S>,
    pub series: SeriesChoice<S>,
    pub kappa: Option<Weighting>,
    pub reds: RedData,
    pub n: usize,
    pub order: u32,
    pub conv: Conventions,
}

impl<S: Scalar> Params<S> {
    pub fn new(graph: ParamGraph<S>, series: SeriesChoice<S>, n: usize, order: u32) -> Self {
        Params { graph, series, kappa: None, reds: RedData::default(), n, order, conv: Conventions::default() }
    }

    pub fn with_kappa(mut self, kappa: Rational) -> Result<Self, ParamError> {
        self.kappa = Some(Weighting::new(kappa)?);
        Ok(self)
    }

    pub fn with_reds(mut self, reds: RedData) -> Self {
        self.reds = reds;
        self
    }

    pub fn with_conv(mut self, conv: Conventions) -> Self {
        self.conv = conv;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }

    pub fn ctx(&self) -> Result<VarCtx, ParamError> {
        VarCtx::new(self.n, self.reds.len(), self.order).map_err(ParamError::Ring)
    }

    /// `𝗊 = q·d(h)`.
    pub fn qq(&self, ctx: VarCtx) -> TruncSeries<S> {
        self.series.qq(self.graph.q(), ctx)
    }

    /// `Q̃_j = Q_j·b(σ z_j)` for each red line, ordered by position.
    pub fn q_tilde(&self, ctx: VarCtx) -> Vec<TruncSeries<S>> {
        self.reds
            .lines()
            .iter()
            .map(|line| {
                let z = TruncSeries::z(ctx, line.z).scale_i64(self.conv.sigma);
                self.series.b_of(&z).scale(self.graph.label(line.q))
            })
            .collect()
    }

    /// Label indices of the red lines, ordered by position.
    pub fn red_labels(&self) -> Vec<usize> {
        self.reds.lines().iter().map(|r| r.q).collect()
    }
}

impl RawConfig {
    pub fn from_json_str(s: &str) -> Result<Self, ParamError> {
        serde_json::from_str(s).map_err(|e| ParamError::Config(e.to_string()))
    }

    pub fn field(&self) -> Result<Field, ParamError> {
        parse_field(&self.field)
    }

    pub fn resolve<S: Scalar>(&self) -> Result<Params<S>, ParamError> {
        let field = self.field()?;
        if field != S::field() {
            return Err(ParamError::Config(format!("config field {field} does not match scalar type {}", S::field())));
        }
        let q: S = scalar_from_value(&self.q)?;
        let labels: Vec<S> = self.u.iter().map(scalar_from_value).collect::<Result<_, _>>()?;
        let graph = ParamGraph::new(q, labels)?;
        let b = match &self.b {
            None => BChoice::OnePlus,
            Some(Value::String(s)) if s == "exp" => BChoice::Exp,
            Some(Value::String(s)) if s == "one_plus" => BChoice::OnePlus,
            Some(Value::Object(o)) => {
                let coeffs = o
                    .get("coeffs")
                    .and_then(Value::as_array)
                    .ok_or_else(|| ParamError::Config("b.coeffs must be an array".into()))?;
                BChoice::Custom(coeffs.iter().map(scalar_from_value).collect::<Result<_, _>>()?)
            }
            Some(v) => return Err(ParamError::Config(format!("unknown b {v}"))),
        };
        let series = SeriesChoice::new(b, self.d.unwrap_or(DChoice::One))?;
        let kappa = match &self.kappa {
            None => None,
            Some(v) => Some(Weighting::new(position_from_value(v)?)?),
        };
        let mut lines = Vec::new();
        for (z, r) in self.reds.iter().enumerate() {
            let theta = position_from_value(&r.theta)?;
            let qv: S = scalar_from_value(&r.q)?;
            let qi = graph
                .index_of(&qv)
                .ok_or_else(|| ParamError::Config(format!("red label {} is not in U", qv.to_wire())))?;
            lines.push(RedLine { theta, q: qi, z });
        }
        let reds = RedData::new(lines)?;
        let mut conv = Conventions::default();
        if let Some(s) = self.klr_sign {
            if s != 1 && s != -1 {
                return Err(ParamError::Config("klr_sign must be 1 or -1".into()));
            }
            conv.klr_sign = s;
        }
        if let Some(hc) = self.klr_h {
            if hc > 1 {
                return Err(ParamError::Config("klr_h must be 0 or 1".into()));
            }
            conv.klr_h = hc == 1;
        }
        if let Some(s) = self.sigma {
            if s != 1 && s != -1 {
                return Err(ParamError::Config("sigma must be 1 or -1".into()));
            }
            conv.sigma = s;
        }
        let params = Params { graph, series, kappa, reds, n: self.n.unwrap_or(3), order: self.order.unwrap_or(5), conv };
        params.ctx()?;
        Ok(params)
    }
}

/// True when the field is a prime field with modulus `p`.
pub fn is_prime_field(f: &Field, p: u64) -> bool {
    f.kind == FieldKind::Prime(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    #[test]
    fn parse_full_config() {
        let js = r#"{"field":"F7","q":"2","U":["1","2","4"],"b":"one_plus","d":"one",
                     "kappa":"-1/2","reds":[{"theta":"3","Q":"2"}],"n":2,"order":4}"#;
        let raw = RawConfig::from_json_str(js).unwrap();
        let p: Params<Fp<7>> = raw.resolve().unwrap();
        assert_eq!(p.graph.order(), Some(3));
        assert_eq!(p.reds.len(), 1);
        assert_eq!(p.red_labels(), vec![1]);
        assert!(raw.resolve::<Rational>().is_err());
    }

    #[test]
    fn rejects_exp_in_positive_characteristic() {
        let js = r#"{"field":"F7","q":"2","U":["1"],"b":"exp","d":"exp"}"#;
        let raw = RawConfig::from_json_str(js).unwrap();
        assert!(matches!(raw.resolve::<Fp<7>>(), Err(ParamError::Series(_))));
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("GF(7)").unwrap(), Field::prime(7).unwrap());
        assert_eq!(parse_field("Q").unwrap(), Field::rational());
        assert!(parse_field("F8").is_err());
        assert!(RawConfig::from_json_str("{").is_err());
    }
}
