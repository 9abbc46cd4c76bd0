//! JSON document formats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero as _};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{characters_mod, DirichletCharacter};
use crate::automata::{Dfao, DfaoState};
use crate::construct::{FiniteSupport, MultSpec, PeriodicMult, TheoremFormSpec};
use crate::seq::EventuallyPeriodicSeq;
use crate::value::Value;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid value: {0}")]
    BadValue(String),
    #[error("invalid automaton: {0}")]
    BadAutomaton(String),
    #[error("invalid specification: {0}")]
    BadSpec(String),
    #[error("invalid character: {0}")]
    BadCharacter(String),
}

fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_rational(s: &str) -> Result<BigRational, DocError> {
    let bad = || DocError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `0` for zero, `{"scale": "a/b", "phase": "c/d"}` otherwise.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ValueDoc {
    Zero(u64),
    Unit(UnitDoc),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitDoc {
    scale: String,
    phase: String,
}

fn value_to_doc(v: &Value) -> ValueDoc {
    match v {
        Value::Zero => ValueDoc::Zero(0),
        Value::Unit { scale, phase } => ValueDoc::Unit(UnitDoc {
            scale: rational_to_string(scale),
            phase: rational_to_string(phase),
        }),
    }
}

fn value_from_doc(doc: &ValueDoc) -> Result<Value, DocError> {
    match doc {
        ValueDoc::Zero(0) => Ok(Value::Zero),
        ValueDoc::Zero(other) => {
            Err(DocError::BadValue(format!("numeric value must be 0, found {other}")))
        }
        ValueDoc::Unit(unit) => {
            let scale = parse_rational(&unit.scale)?;
            let phase = parse_rational(&unit.phase)?;
            if !scale.is_positive() {
                return Err(DocError::BadValue(format!(
                    "scale must be positive, found {}",
                    unit.scale
                )));
            }
            Ok(Value::from_polar(scale, phase))
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaoDoc {
    base: u32,
    initial: usize,
    states: Vec<StateDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    id: usize,
    output: ValueDoc,
    delta: Vec<usize>,
}

pub fn dfao_to_json(d: &Dfao) -> String {
    let doc = DfaoDoc {
        base: d.base(),
        initial: d.initial(),
        states: d
            .states()
            .iter()
            .enumerate()
            .map(|(id, s)| StateDoc {
                id,
                output: value_to_doc(&s.output),
                delta: s.delta.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn dfao_from_json(text: &str) -> Result<Dfao, DocError> {
    let doc: DfaoDoc = serde_json::from_str(text)?;
    let n = doc.states.len();
    let mut states: Vec<Option<DfaoState>> = (0..n).map(|_| None).collect();
    for s in &doc.states {
        if s.id >= n {
            return Err(DocError::BadAutomaton(format!("state id {} out of range", s.id)));
        }
        if states[s.id].is_some() {
            return Err(DocError::BadAutomaton(format!("duplicate state id {}", s.id)));
        }
        states[s.id] =
            Some(DfaoState { delta: s.delta.clone(), output: value_from_doc(&s.output)? });
    }
    let states: Vec<DfaoState> = states
        .into_iter()
        .enumerate()
        .map(|(id, s)| s.ok_or(DocError::BadAutomaton(format!("missing state id {id}"))))
        .collect::<Result<_, _>>()?;
    Dfao::new(doc.base, doc.initial, states).map_err(|e| DocError::BadAutomaton(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    p: u64,
    f1: F1Doc,
    f2: F2Doc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct F1Doc {
    preperiod: Vec<ValueDoc>,
    period: Vec<ValueDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum F2Doc {
    /// Character by `(modulus, index)` in the deterministic enumeration,
    /// zero-extended to vanish at multiples of `p` when needed.
    Periodic { modulus: u64, character_index: usize },
    /// Explicit full-period table.
    PeriodicTable { period: u64, values: Vec<ValueDoc> },
    /// Values on prime powers, keyed `"q^e"`.
    Finite { prime_powers: BTreeMap<String, ValueDoc> },
}

pub fn spec_to_json(spec: &TheoremFormSpec) -> String {
    let f2 = match spec.f2() {
        MultSpec::Periodic(f) => F2Doc::PeriodicTable {
            period: f.period(),
            values: f.table().iter().map(value_to_doc).collect(),
        },
        MultSpec::Finite(f) => F2Doc::Finite {
            prime_powers: f
                .prime_powers()
                .iter()
                .map(|(&(q, e), v)| (format!("{q}^{e}"), value_to_doc(v)))
                .collect(),
        },
    };
    let doc = SpecDoc {
        p: spec.prime(),
        f1: F1Doc {
            preperiod: spec.f1().preperiod().iter().map(value_to_doc).collect(),
            period: spec.f1().period().iter().map(value_to_doc).collect(),
        },
        f2,
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn spec_from_json(text: &str) -> Result<TheoremFormSpec, DocError> {
    let doc: SpecDoc = serde_json::from_str(text)?;
    let pre = doc.f1.preperiod.iter().map(value_from_doc).collect::<Result<Vec<_>, _>>()?;
    let per = doc.f1.period.iter().map(value_from_doc).collect::<Result<Vec<_>, _>>()?;
    if per.is_empty() {
        return Err(DocError::BadSpec("f1 period must be non-empty".into()));
    }
    let f1 = EventuallyPeriodicSeq::new(pre, per);
    let f2 = match &doc.f2 {
        F2Doc::Periodic { modulus, character_index } => {
            let chars = characters_mod(*modulus);
            let chi = chars.get(*character_index).ok_or_else(|| {
                DocError::BadSpec(format!(
                    "character index {} out of range for modulus {} ({} characters)",
                    character_index,
                    modulus,
                    chars.len()
                ))
            })?;
            let extended = if modulus % doc.p == 0 {
                chi.clone()
            } else {
                crate::arith::induce(chi, crate::arith::lcm(*modulus, doc.p))
                    .map_err(|e| DocError::BadSpec(e.to_string()))?
            };
            MultSpec::Periodic(PeriodicMult::from_character(&extended))
        }
        F2Doc::PeriodicTable { period, values } => {
            if *period as usize != values.len() || values.is_empty() {
                return Err(DocError::BadSpec(format!(
                    "period {} does not match {} table entries",
                    period,
                    values.len()
                )));
            }
            let table = values.iter().map(value_from_doc).collect::<Result<Vec<_>, _>>()?;
            MultSpec::Periodic(
                PeriodicMult::new(table).map_err(|e| DocError::BadSpec(e.to_string()))?,
            )
        }
        F2Doc::Finite { prime_powers } => {
            let mut map = BTreeMap::new();
            for (key, v) in prime_powers {
                let (q, e) = key
                    .split_once('^')
                    .and_then(|(q, e)| Some((q.trim().parse().ok()?, e.trim().parse().ok()?)))
                    .ok_or_else(|| {
                        DocError::BadSpec(format!("bad prime power key {key:?}, expected \"q^e\""))
                    })?;
                map.insert((q, e), value_from_doc(v)?);
            }
            MultSpec::Finite(
                FiniteSupport::new(map).map_err(|e| DocError::BadSpec(e.to_string()))?,
            )
        }
    };
    TheoremFormSpec::new(doc.p, f1, f2).map_err(|e| DocError::BadSpec(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterDoc {
    modulus: u64,
    /// residue (as a decimal string key) → phase `"c/d"`; residues not
    /// coprime to the modulus are absent.
    phases: BTreeMap<String, String>,
}

pub fn character_to_json(chi: &DirichletCharacter) -> String {
    let phases = chi
        .phases()
        .iter()
        .enumerate()
        .filter_map(|(r, t)| {
            t.map(|t| (r.to_string(), format!("{}/{}", t.numer(), t.denom())))
        })
        .collect();
    let doc = CharacterDoc { modulus: chi.modulus(), phases };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn character_from_json(text: &str) -> Result<DirichletCharacter, DocError> {
    let doc: CharacterDoc = serde_json::from_str(text)?;
    if doc.modulus == 0 {
        return Err(DocError::BadCharacter("modulus must be positive".into()));
    }
    let mut phases = vec![None; doc.modulus as usize];
    for (key, phase) in &doc.phases {
        let r: u64 = key
            .parse()
            .map_err(|_| DocError::BadCharacter(format!("bad residue key {key:?}")))?;
        if r >= doc.modulus {
            return Err(DocError::BadCharacter(format!("residue {r} out of range")));
        }
        let q = parse_rational(phase)?;
        if q.is_negative() || q >= BigRational::one() {
            return Err(DocError::BadCharacter(format!("phase {phase} not in [0, 1)")));
        }
        use num_traits::ToPrimitive;
        let (num, den) = (
            q.numer().to_u64().ok_or_else(|| DocError::BadRational(phase.clone()))?,
            q.denom().to_u64().ok_or_else(|| DocError::BadRational(phase.clone()))?,
        );
        phases[r as usize] = Some(num_rational::Ratio::new(num, den));
    }
    DirichletCharacter::from_phase_table(doc.modulus, phases)
        .map_err(|e| DocError::BadCharacter(e.to_string()))
}
