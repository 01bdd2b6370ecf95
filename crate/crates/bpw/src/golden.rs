//! Reference states and polynomials shipped as data.

use crate::arith::{parse_rational, Poly2, Rational};
use crate::error::{Error, Result};
use crate::modes::{Convention, Module, State};
use serde_json::Value;

const OMEGA4: &str = include_str!("../data/omega4.json");
const OMEGA4BAR: &str = include_str!("../data/omega4bar.json");
const OMEGA3: &str = include_str!("../data/omega3.json");
const OMEGA3BAR: &str = include_str!("../data/omega3bar.json");
const GPLUS0_SQ_OMEGA4BAR: &str = include_str!("../data/gplus0_sq_omega4bar.json");
const ZERO_MODES: &str = include_str!("../data/zero_modes.json");
const SMITH_CONSTANTS: &str = include_str!("../data/smith_constants.json");
const CLASSIFICATION: &str = include_str!("../data/classification.json");

/// A named vacuum state at a fixed level.
#[derive(Clone, Debug)]
pub struct GoldenState {
    pub name: String,
    pub level: Rational,
    /// The listed words, normal-ordered in the file's convention.
    pub state: State<Rational>,
}

fn parse(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Data(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Data(format!("missing field {key}")))
}

fn str_field(v: &Value, key: &str) -> Result<String> {
    field(v, key)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::Data(format!("field {key} is not a string")))
}

fn load_state(src: &str) -> Result<GoldenState> {
    let v = parse(src)?;
    let level = parse_rational(&str_field(&v, "level")?)?;
    let (conv, _, words) = State::<Rational>::raw_words_from_json(&v)?;
    let m = Module::<Rational>::vacuum(level.clone(), conv);
    Ok(GoldenState { name: str_field(&v, "name")?, level, state: m.normal_form_sum(&words) })
}

pub fn omega4() -> GoldenState {
    load_state(OMEGA4).expect("bundled data is well formed")
}

pub fn omega4bar() -> GoldenState {
    load_state(OMEGA4BAR).expect("bundled data is well formed")
}

pub fn omega3() -> GoldenState {
    load_state(OMEGA3).expect("bundled data is well formed")
}

pub fn omega3bar() -> GoldenState {
    load_state(OMEGA3BAR).expect("bundled data is well formed")
}

pub fn gplus0_sq_omega4bar() -> GoldenState {
    load_state(GPLUS0_SQ_OMEGA4BAR).expect("bundled data is well formed")
}

/// The singular vector listed for a level, in the given convention.
pub fn singular_for_level(k: &Rational, conv: Convention) -> Option<GoldenState> {
    let all = match conv {
        Convention::Omega => [omega4(), omega3()],
        Convention::OmegaBar => [omega4bar(), omega3bar()],
    };
    all.into_iter().find(|g| &g.level == k)
}

/// A reference polynomial: `(level, grading, p)`.
pub fn zero_mode_reference(name: &str) -> Result<(Rational, Convention, Poly2)> {
    let v = parse(ZERO_MODES)?;
    let e = field(&v, name)?;
    let level = parse_rational(&str_field(e, "level")?)?;
    let grading: Convention = serde_json::from_value(field(e, "grading")?.clone()).map_err(|e| Error::Data(e.to_string()))?;
    let p: Poly2 = serde_json::from_value(field(e, "poly")?.clone()).map_err(|e| Error::Data(e.to_string()))?;
    Ok((level, grading, p))
}

/// Frozen constants `c` of relations `[G+(0)^power s] = c * E^power * (Y + y0)`,
/// keyed by level: `(power, c, y0)`.
pub fn smith_constant(k: &Rational) -> Result<Option<(u32, Rational, Rational)>> {
    let v = parse(SMITH_CONSTANTS)?;
    let arr = v.as_array().ok_or_else(|| Error::Data("expected a list".into()))?;
    for e in arr {
        if &parse_rational(&str_field(e, "level")?)? == k {
            let power = field(e, "power")?.as_u64().ok_or_else(|| Error::Data("bad power".into()))? as u32;
            let c = parse_rational(&str_field(e, "c")?)?;
            let y0 = parse_rational(&str_field(e, "y0")?)?;
            return Ok(Some((power, c, y0)));
        }
    }
    Ok(None)
}

/// Reference weight lists `(finite top, infinite top)` for a level.
pub fn classification_reference(k: &Rational) -> Result<Option<(Vec<(Rational, Rational)>, Vec<(Rational, Rational)>)>> {
    let v = parse(CLASSIFICATION)?;
    let arr = v.as_array().ok_or_else(|| Error::Data("expected a list".into()))?;
    let weights = |e: &Value, key: &str| -> Result<Vec<(Rational, Rational)>> {
        field(e, key)?
            .as_array()
            .ok_or_else(|| Error::Data(format!("{key} is not a list")))?
            .iter()
            .map(|p| {
                let xy = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Data("bad weight".into()))?;
                let r = |i: usize| {
                    xy[i].as_str().ok_or_else(|| Error::Data("bad weight".into())).and_then(parse_rational)
                };
                Ok((r(0)?, r(1)?))
            })
            .collect()
    };
    for e in arr {
        if &parse_rational(&str_field(e, "level")?)? == k {
            return Ok(Some((weights(e, "finite")?, weights(e, "infinite")?)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_states_load() {
        assert_eq!(omega4().state.terms.len(), 12);
        assert_eq!(omega4bar().state.terms.len(), 13);
        assert_eq!(omega3().state.terms.len(), 6);
        assert_eq!(omega3bar().state.terms.len(), 6);
        assert_eq!(gplus0_sq_omega4bar().state.terms.len(), 5);
        assert!(zero_mode_reference("U").is_ok());
        assert!(zero_mode_reference("W").is_err());
        let (f, i) = classification_reference(&crate::arith::rat(-5, 3)).unwrap().unwrap();
        assert_eq!((f.len(), i.len()), (6, 3));
        assert!(classification_reference(&crate::arith::int(7)).unwrap().is_none());
    }
}
