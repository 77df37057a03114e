//! JSON files for operation tables and automata.
//!
//! An automaton file is an object with the keys `algebra` (a bundled name or
//! an inline table), `alphabet`, `states`, weight maps from state names to
//! element names, and `transitions`. A word automaton has an `alphabet` array,
//! `initial` and `final` maps, and transitions `{from, symbol, to, weight}`.
//! A tree automaton has an `alphabet` object mapping symbols to ranks, a
//! `final` (or `root`) map, and transitions `{children, symbol, to, weight}`.
//! Missing entries are `𝟘`.

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::trees::{RankedAlphabet, TreeAutomaton};
use crate::weights::{builtin, AnyAlgebra, AnyElem, FiniteTableAlgebra, TableSpec, Weights};
use crate::words::WordAutomaton;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid {
        path: path.into(),
        message: message.to_string(),
    }
}

fn syntax(e: serde_json::Error) -> FormatError {
    FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, path: &str) -> Result<T, FormatError> {
    T::deserialize(v).map_err(|e| invalid(path, e))
}

/// Reads an operation table file.
pub fn parse_table(text: &str, allow_invalid: bool) -> Result<FiniteTableAlgebra, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    table_from_value(&v, "$", allow_invalid)
}

fn table_from_value(v: &Value, path: &str, allow_invalid: bool) -> Result<FiniteTableAlgebra, FormatError> {
    let spec: TableSpec = from_value(v, path)?;
    FiniteTableAlgebra::from_spec(&spec, allow_invalid).map_err(|e| invalid(path, e))
}

pub fn table_to_json(table: &FiniteTableAlgebra) -> Value {
    serde_json::to_value(table.to_spec()).expect("table specs serialize")
}

/// A bundled name or an inline table.
pub fn algebra_from_value(v: &Value, path: &str, allow_invalid: bool) -> Result<AnyAlgebra, FormatError> {
    match v {
        Value::String(name) => builtin(name).map_err(|e| invalid(path, e)),
        Value::Object(_) => Ok(AnyAlgebra::Table(table_from_value(v, path, allow_invalid)?)),
        _ => Err(invalid(path, "expected an algebra name or a table object")),
    }
}

/// The bundled name when it denotes this exact algebra, else the table.
pub fn algebra_to_json(alg: &AnyAlgebra) -> Value {
    match alg {
        AnyAlgebra::Table(t) => table_ref_json(t),
        other => Value::String(other.name()),
    }
}

pub fn table_ref_json(table: &FiniteTableAlgebra) -> Value {
    match builtin(&table.name()) {
        Ok(AnyAlgebra::Table(b)) if &b == table => Value::String(table.name()),
        _ => table_to_json(table),
    }
}

/// The automaton held by a file.
#[derive(Debug, Clone, PartialEq)]
pub enum Automaton {
    Word(WordAutomaton<AnyElem>),
    Tree(TreeAutomaton<AnyElem>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutomatonFile {
    pub algebra: AnyAlgebra,
    pub automaton: Automaton,
}

impl AutomatonFile {
    pub fn to_json(&self) -> Value {
        let algebra = algebra_to_json(&self.algebra);
        match &self.automaton {
            Automaton::Word(a) => word_automaton_to_json(&self.algebra, algebra, a),
            Automaton::Tree(a) => tree_automaton_to_json(&self.algebra, algebra, a),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    algebra: Value,
    alphabet: Value,
    states: Vec<String>,
    #[serde(default)]
    initial: Option<Map<String, Value>>,
    #[serde(default, rename = "final", alias = "root")]
    final_weights: Map<String, Value>,
    #[serde(default)]
    transitions: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWordTransition {
    from: String,
    symbol: String,
    to: String,
    weight: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTreeTransition {
    #[serde(default)]
    children: Vec<String>,
    symbol: String,
    to: String,
    weight: Value,
}

/// Reads an automaton file. Tables given inline are validated unless
/// `allow_invalid` is set.
pub fn parse_automaton(text: &str, allow_invalid: bool) -> Result<AutomatonFile, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(syntax)?;
    automaton_from_value(&v, allow_invalid)
}

pub fn automaton_from_value(v: &Value, allow_invalid: bool) -> Result<AutomatonFile, FormatError> {
    let raw: RawAutomaton = from_value(v, "$")?;
    let algebra = algebra_from_value(&raw.algebra, "algebra", allow_invalid)?;
    let automaton = match &raw.alphabet {
        Value::Array(_) => Automaton::Word(word_automaton(&algebra, &raw)?),
        Value::Object(_) => Automaton::Tree(tree_automaton(&algebra, &raw)?),
        _ => return Err(invalid("alphabet", "expected an array of symbols or a map from symbols to ranks")),
    };
    Ok(AutomatonFile { algebra, automaton })
}

fn element(alg: &AnyAlgebra, v: &Value, path: &str) -> Result<AnyElem, FormatError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(invalid(path, "expected an element name")),
    };
    alg.parse_elem(&text).map_err(|e| invalid(path, e))
}

fn state(states: &[String], name: &str, path: &str) -> Result<usize, FormatError> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| invalid(path, format!("state `{name}` is not declared")))
}

fn weight_map(
    alg: &AnyAlgebra,
    states: &[String],
    map: &Map<String, Value>,
    key: &str,
) -> Result<Vec<(usize, AnyElem)>, FormatError> {
    map.iter()
        .map(|(s, w)| {
            let path = format!("{key}.{s}");
            Ok((state(states, s, &path)?, element(alg, w, &path)?))
        })
        .collect()
}

fn word_automaton(alg: &AnyAlgebra, raw: &RawAutomaton) -> Result<WordAutomaton<AnyElem>, FormatError> {
    let alphabet: Vec<String> = from_value(&raw.alphabet, "alphabet")?;
    let mut aut = WordAutomaton::empty(alphabet, raw.states.clone(), alg.zero()).map_err(|e| invalid("$", e))?;
    let empty = Map::new();
    for (q, w) in weight_map(alg, &raw.states, raw.initial.as_ref().unwrap_or(&empty), "initial")? {
        aut.set_initial(q, w);
    }
    for (q, w) in weight_map(alg, &raw.states, &raw.final_weights, "final")? {
        aut.set_final(q, w);
    }
    for (i, t) in raw.transitions.iter().enumerate() {
        let path = format!("transitions[{i}]");
        let t: RawWordTransition = from_value(t, &path)?;
        let from = state(&raw.states, &t.from, &format!("{path}.from"))?;
        let to = state(&raw.states, &t.to, &format!("{path}.to"))?;
        let a = aut
            .symbol_index(&t.symbol)
            .map_err(|e| invalid(format!("{path}.symbol"), e))?;
        let w = element(alg, &t.weight, &format!("{path}.weight"))?;
        aut.set_transition(from, a, to, w);
    }
    Ok(aut)
}

fn tree_automaton(alg: &AnyAlgebra, raw: &RawAutomaton) -> Result<TreeAutomaton<AnyElem>, FormatError> {
    if raw.initial.is_some() {
        return Err(invalid(
            "initial",
            "tree automata have no initial weights; weight the nullary transitions instead",
        ));
    }
    let ranks: Map<String, Value> = from_value(&raw.alphabet, "alphabet")?;
    let symbols = ranks
        .iter()
        .map(|(s, r)| {
            let rank: usize = from_value(r, &format!("alphabet.{s}"))?;
            Ok((s.clone(), rank))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let alphabet = RankedAlphabet::new(symbols).map_err(|e| invalid("alphabet", e))?;
    let mut aut = TreeAutomaton::empty(alphabet, raw.states.clone(), alg.zero()).map_err(|e| invalid("$", e))?;
    for (q, w) in weight_map(alg, &raw.states, &raw.final_weights, "final")? {
        aut.set_root_weight(q, w);
    }
    for (i, t) in raw.transitions.iter().enumerate() {
        let path = format!("transitions[{i}]");
        let t: RawTreeTransition = from_value(t, &path)?;
        let children = t
            .children
            .iter()
            .enumerate()
            .map(|(j, c)| state(&raw.states, c, &format!("{path}.children[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let to = state(&raw.states, &t.to, &format!("{path}.to"))?;
        let w = element(alg, &t.weight, &format!("{path}.weight"))?;
        aut.set_transition(&children, &t.symbol, to, w)
            .map_err(|e| invalid(&path, e))?;
    }
    Ok(aut)
}

fn nonzero_map<W: Weights>(alg: &W, states: &[String], weights: &[W::Elem]) -> Map<String, Value> {
    states
        .iter()
        .zip(weights)
        .filter(|(_, w)| !alg.is_zero(w))
        .map(|(s, w)| (s.clone(), Value::String(alg.describe(w))))
        .collect()
}

/// Writes a word automaton, listing only nonzero weights. `algebra` is
/// stored verbatim under the `algebra` key.
pub fn word_automaton_to_json<W: Weights>(alg: &W, algebra: Value, aut: &WordAutomaton<W::Elem>) -> Value {
    let states = aut.states();
    let mut transitions = Vec::new();
    for (a, sym) in aut.alphabet().iter().enumerate() {
        for (p, row) in aut.matrix(a).iter().enumerate() {
            for (q, w) in row.iter().enumerate() {
                if !alg.is_zero(w) {
                    transitions.push(json!({
                        "from": states[p],
                        "symbol": sym,
                        "to": states[q],
                        "weight": alg.describe(w),
                    }));
                }
            }
        }
    }
    json!({
        "algebra": algebra,
        "alphabet": aut.alphabet(),
        "states": states,
        "initial": nonzero_map(alg, states, aut.initial()),
        "final": nonzero_map(alg, states, aut.final_weights()),
        "transitions": transitions,
    })
}

/// Writes a tree automaton, listing only nonzero weights.
pub fn tree_automaton_to_json<W: Weights>(alg: &W, algebra: Value, aut: &TreeAutomaton<W::Elem>) -> Value {
    let states = aut.states();
    let alphabet: Map<String, Value> = aut
        .alphabet()
        .symbols()
        .iter()
        .map(|(s, k)| (s.clone(), json!(k)))
        .collect();
    let transitions: Vec<Value> = aut
        .nonzero_transitions()
        .into_iter()
        .filter(|(_, _, _, w)| !alg.is_zero(w))
        .map(|(children, symbol, to, w)| {
            let children: Vec<&str> = children.iter().map(|&c| states[c].as_str()).collect();
            json!({
                "children": children,
                "symbol": symbol,
                "to": states[to],
                "weight": alg.describe(&w),
            })
        })
        .collect();
    json!({
        "algebra": algebra,
        "alphabet": alphabet,
        "states": states,
        "final": nonzero_map(alg, states, aut.root_weights()),
        "transitions": transitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{branching_example_automaton, Tree};
    use crate::words::special_automaton;
    use crate::Semantics;

    const WORDS: &str = r#"{
        "algebra": "B4",
        "alphabet": ["gamma", "delta"],
        "states": ["p", "q", "r"],
        "initial": {"p": "2", "q": "2"},
        "final": {"r": "2"},
        "transitions": [
            {"from": "p", "symbol": "gamma", "to": "r", "weight": "1"},
            {"from": "q", "symbol": "gamma", "to": "r", "weight": "1"}
        ]
    }"#;

    #[test]
    fn word_file_loads_and_evaluates() {
        let file = parse_automaton(WORDS, false).unwrap();
        let Automaton::Word(aut) = &file.automaton else {
            panic!("expected a word automaton")
        };
        let alg = &file.algebra;
        let run = aut.evaluate(alg, &["gamma"], Semantics::Run).unwrap();
        let init = aut.evaluate(alg, &["gamma"], Semantics::Init).unwrap();
        assert_eq!(alg.describe(&run), "0");
        assert_eq!(alg.describe(&init), "2");
    }

    #[test]
    fn word_file_round_trips() {
        let file = parse_automaton(WORDS, false).unwrap();
        let back = parse_automaton(&file.to_json().to_string(), false).unwrap();
        assert_eq!(back, file);
        let b4 = FiniteTableAlgebra::b4();
        let direct = special_automaton(&b4, 2, 2, 2, "gamma", &["gamma".into(), "delta".into()]).unwrap();
        let Automaton::Word(aut) = file.automaton else { unreachable!() };
        assert_eq!(aut.map_weights(|e| match e {
            AnyElem::Table(i) => *i,
            _ => unreachable!(),
        }), direct);
    }

    #[test]
    fn tree_file_round_trips_and_keeps_symbol_order() {
        let alg = FiniteTableAlgebra::pentagon();
        let al = RankedAlphabet::new([("sigma", 2), ("alpha", 0)]).unwrap();
        let aut = branching_example_automaton(&alg, 2, 3, 4, 1, "sigma", "alpha", &al).unwrap();
        let text = tree_automaton_to_json(&alg, table_ref_json(&alg), &aut).to_string();
        let file = parse_automaton(&text, false).unwrap();
        let Automaton::Tree(back) = &file.automaton else {
            panic!("expected a tree automaton")
        };
        assert_eq!(back.alphabet().symbols()[0].0, "sigma");
        let t = Tree::nested_example("sigma", "alpha", 2);
        let any = &file.algebra;
        for sem in [Semantics::Run, Semantics::Init] {
            assert_eq!(
                any.describe(&back.evaluate(any, &t, sem).unwrap()),
                alg.describe(&aut.evaluate(&alg, &t, sem).unwrap())
            );
        }
    }

    #[test]
    fn inline_tables_are_validated() {
        let mut spec = FiniteTableAlgebra::boole().to_spec();
        spec.name = None;
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(parse_table(&text, false).unwrap().size(), 2);
        spec.mul[1][1] = "0".into();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(matches!(parse_table(&text, false), Err(FormatError::Invalid { .. })));
        assert!(parse_table(&text, true).is_ok());
    }

    #[test]
    fn builtin_tables_are_written_by_name() {
        assert_eq!(table_ref_json(&FiniteTableAlgebra::hexagon()), json!("Hexagon"));
        let mut t = FiniteTableAlgebra::boole();
        t.set_mul(1, 1, 0);
        assert!(table_ref_json(&t).is_object());
    }

    #[test]
    fn errors_name_the_location() {
        let err = parse_automaton("{\n  \"algebra\": \"B4\",\n  oops\n}", false).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
        let bad = WORDS.replace("\"to\": \"r\", \"weight\": \"1\"}\n", "\"to\": \"s\", \"weight\": \"1\"}\n");
        let err = parse_automaton(&bad, false).unwrap_err();
        assert_eq!(err.to_string(), "at `transitions[1].to`: state `s` is not declared");
        let bad = WORDS.replace("\"q\": \"2\"", "\"q\": \"7\"");
        let err = parse_automaton(&bad, false).unwrap_err();
        assert!(err.to_string().starts_with("at `initial.q`"), "{err}");
        let bad = WORDS.replace("\"states\"", "\"statez\"");
        assert!(parse_automaton(&bad, false).is_err());
    }

    #[test]
    fn infinite_algebras_load_by_name() {
        let text = r#"{
            "algebra": "NatPlusMin",
            "alphabet": ["a"],
            "states": ["s"],
            "initial": {"s": 3},
            "final": {"s": "inf"},
            "transitions": [{"from": "s", "symbol": "a", "to": "s", "weight": "5"}]
        }"#;
        let file = parse_automaton(text, false).unwrap();
        let Automaton::Word(aut) = &file.automaton else { unreachable!() };
        let v = aut.evaluate(&file.algebra, &["a", "a"], Semantics::Init).unwrap();
        assert_eq!(file.algebra.describe(&v), "3");
    }
}
