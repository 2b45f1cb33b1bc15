//! Fuzzy connectives, compound-label truth functions, and the probability
//! of implications.
//!
//! Conjunction and disjunction come in three flavors depending on how the
//! two predicates co-vary over instances:
//!
//! ```text
//! positive     and = min(a, b)          or = max(a, b)        (Zadeh)
//! independent  and = a b                or = a + b - a b
//! negative     and = max(0, a + b - 1)  or = min(1, a + b)
//! ```
//!
//! Every mode is dual (or = a + b - and pointwise), so the aggregated
//! identity T(A∪B) = T(A) + T(B) - T(A∩B) holds regardless of mode. The
//! mode is always chosen by the caller: nothing here tries to detect
//! correlation between predicates.

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::truth::TruthFunction;
use crate::universe::check_same_universe;

/// How two fuzzy predicates co-vary over instances. Always explicit; the
/// connectives never guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMode {
    /// Perfectly aligned predicates: Zadeh min/max.
    #[default]
    Positive,
    /// Unrelated predicates: product / probabilistic sum.
    Independent,
    /// Opposed predicates: Lukasiewicz bounded difference / bounded sum.
    Negative,
}

impl std::str::FromStr for CorrelationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pos" | "positive" => Ok(CorrelationMode::Positive),
            "ind" | "independent" => Ok(CorrelationMode::Independent),
            "neg" | "negative" => Ok(CorrelationMode::Negative),
            other => Err(Error::Expression(format!(
                "unknown correlation mode {other:?} (expected pos, ind or neg)"
            ))),
        }
    }
}

/// Fuzzy conjunction of two membership grades in [0, 1].
pub fn fuzzy_and(av: f64, bv: f64, mode: CorrelationMode) -> f64 {
    match mode {
        CorrelationMode::Positive => av.min(bv),
        CorrelationMode::Independent => av * bv,
        CorrelationMode::Negative => (av + bv - 1.0).max(0.0),
    }
}

/// Fuzzy disjunction of two membership grades in [0, 1].
pub fn fuzzy_or(av: f64, bv: f64, mode: CorrelationMode) -> f64 {
    match mode {
        CorrelationMode::Positive => av.max(bv),
        // Clamped: float rounding must not push a grade above 1.
        CorrelationMode::Independent => (av + bv - av * bv).clamp(0.0, 1.0),
        CorrelationMode::Negative => (av + bv).min(1.0),
    }
}

/// Fuzzy negation: 1 - a.
pub fn fuzzy_not(av: f64) -> f64 {
    1.0 - av
}

/// A parsed compound-label expression.
///
/// Grammar (infix, case-insensitive keywords):
///
/// ```text
/// expr    := or
/// or      := and (OR[:mode] and)*
/// and     := unary (AND[:mode] unary)*
/// unary   := NOT unary | primary
/// primary := '(' expr ')' | atom
/// ```
///
/// Atoms are the names of atomic labels; `AND` and `OR` take an optional
/// mode suffix (`:pos`, `:ind`, `:neg`, or the full words) and default to
/// positive (Zadeh). `NOT` binds tighter than `AND`, which binds tighter
/// than `OR`; both binary operators associate left.
#[derive(Debug, Clone, PartialEq)]
pub enum LabelExpr {
    Atom(String),
    Not(Box<LabelExpr>),
    And(Box<LabelExpr>, Box<LabelExpr>, CorrelationMode),
    Or(Box<LabelExpr>, Box<LabelExpr>, CorrelationMode),
}

impl LabelExpr {
    /// Parse an infix expression; see the type docs for the grammar.
    pub fn parse(text: &str) -> Result<LabelExpr> {
        let tokens = tokenize(text)?;
        let mut parser = Parser { tokens, pos: 0 };
        let expr = parser.or_expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Expression(format!(
                "trailing input after expression: {:?}",
                parser.tokens[parser.pos..].join(" ")
            )));
        }
        Ok(expr)
    }

    /// Atomic label names in first-appearance order, deduplicated.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            LabelExpr::Atom(name) => {
                if !out.iter().any(|n| n == name) {
                    out.push(name.clone());
                }
            }
            LabelExpr::Not(inner) => inner.collect_atoms(out),
            LabelExpr::And(l, r, _) | LabelExpr::Or(l, r, _) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluate with a membership grade per atomic label. `lookup` returns
    /// `None` for unknown names, which is an expression error.
    pub fn eval_with(&self, lookup: &dyn Fn(&str) -> Option<f64>) -> Result<f64> {
        match self {
            LabelExpr::Atom(name) => lookup(name).ok_or_else(|| {
                Error::Expression(format!("unknown atomic label {name:?}"))
            }),
            LabelExpr::Not(inner) => Ok(fuzzy_not(inner.eval_with(lookup)?)),
            LabelExpr::And(l, r, mode) => {
                Ok(fuzzy_and(l.eval_with(lookup)?, r.eval_with(lookup)?, *mode))
            }
            LabelExpr::Or(l, r, mode) => {
                Ok(fuzzy_or(l.eval_with(lookup)?, r.eval_with(lookup)?, *mode))
            }
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !word.is_empty() {
                    tokens.push(std::mem::take(&mut word));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !word.is_empty() {
                    tokens.push(std::mem::take(&mut word));
                }
            }
            c => word.push(c),
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    if tokens.is_empty() {
        return Err(Error::Expression("empty expression".into()));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

enum Keyword {
    And(CorrelationMode),
    Or(CorrelationMode),
    Not,
}

/// Classify a token as a connective keyword, if it is one.
fn keyword(token: &str) -> Result<Option<Keyword>> {
    let (head, mode) = match token.split_once(':') {
        Some((head, suffix)) => (head, Some(suffix)),
        None => (token, None),
    };
    let parsed_mode = || -> Result<CorrelationMode> {
        match mode {
            Some(s) => s.parse(),
            None => Ok(CorrelationMode::default()),
        }
    };
    match head.to_ascii_lowercase().as_str() {
        "and" => Ok(Some(Keyword::And(parsed_mode()?))),
        "or" => Ok(Some(Keyword::Or(parsed_mode()?))),
        "not" => {
            if mode.is_some() {
                return Err(Error::Expression("NOT takes no mode suffix".into()));
            }
            Ok(Some(Keyword::Not))
        }
        _ if mode.is_some() => Err(Error::Expression(format!(
            "unexpected ':' in atom name {token:?}"
        ))),
        _ => Ok(None),
    }
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn or_expr(&mut self) -> Result<LabelExpr> {
        let mut left = self.and_expr()?;
        while let Some(token) = self.peek() {
            match keyword(token)? {
                Some(Keyword::Or(mode)) => {
                    self.pos += 1;
                    let right = self.and_expr()?;
                    left = LabelExpr::Or(Box::new(left), Box::new(right), mode);
                }
                _ => break,
            }
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<LabelExpr> {
        let mut left = self.unary()?;
        while let Some(token) = self.peek() {
            match keyword(token)? {
                Some(Keyword::And(mode)) => {
                    self.pos += 1;
                    let right = self.unary()?;
                    left = LabelExpr::And(Box::new(left), Box::new(right), mode);
                }
                _ => break,
            }
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<LabelExpr> {
        match self.peek() {
            Some(token) if matches!(keyword(token)?, Some(Keyword::Not)) => {
                self.pos += 1;
                Ok(LabelExpr::Not(Box::new(self.unary()?)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<LabelExpr> {
        let token = match self.peek() {
            Some(t) => t.to_string(),
            None => return Err(Error::Expression("expression ends mid-clause".into())),
        };
        if token == "(" {
            self.pos += 1;
            let inner = self.or_expr()?;
            match self.peek() {
                Some(")") => {
                    self.pos += 1;
                    Ok(inner)
                }
                _ => Err(Error::Expression("missing closing parenthesis".into())),
            }
        } else if token == ")" {
            Err(Error::Expression("unexpected closing parenthesis".into()))
        } else if keyword(&token)?.is_some() {
            Err(Error::Expression(format!("operator {token:?} where an atom was expected")))
        } else {
            self.pos += 1;
            Ok(LabelExpr::Atom(token))
        }
    }
}

fn shared_universe<'a>(
    atomics: &'a [(&str, &TruthFunction)],
) -> Result<&'a crate::universe::Universe> {
    let (first_name, first) = atomics
        .first()
        .ok_or_else(|| Error::InvalidArgument("no atomic labels given".into()))?;
    let universe = first.universe();
    let mut seen = std::collections::HashSet::new();
    seen.insert(*first_name);
    for (name, t) in &atomics[1..] {
        if !seen.insert(*name) {
            return Err(Error::InvalidArgument(format!("duplicate atomic label {name:?}")));
        }
        check_same_universe(universe, t.universe(), "atomic truth functions disagree")?;
    }
    Ok(universe)
}

/// Truth function of a compound label built from named atomic truth
/// functions via a parsed expression.
///
/// Unknown atomic names in the expression are expression errors; the
/// atomics must all live on one universe. Modes come from the expression
/// itself, one per connective instance.
pub fn compound_label_truth(
    atomics: &[(&str, &TruthFunction)],
    label: &str,
) -> Result<TruthFunction> {
    let expr = LabelExpr::parse(label)?;
    let universe = shared_universe(atomics)?;
    let mut values = Vec::with_capacity(universe.len());
    for i in 0..universe.len() {
        let lookup = |name: &str| {
            atomics
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, t)| t.value_at(i))
        };
        values.push(expr.eval_with(&lookup)?);
    }
    TruthFunction::tabulated(universe.clone(), values)
}

/// Truth of "child" from "youth" and "adult" grades: 1 - max(u, a),
/// the complement of their Zadeh union.
pub fn child_truth(youth: &TruthFunction, adult: &TruthFunction) -> Result<TruthFunction> {
    pointwise2(youth, adult, |u, a| 1.0 - u.max(a))
}

/// Truth of "youth but not adult": max(0, u - a), the bounded difference.
pub fn youth_not_adult_truth(
    youth: &TruthFunction,
    adult: &TruthFunction,
) -> Result<TruthFunction> {
    pointwise2(youth, adult, |u, a| (u - a).max(0.0))
}

/// Truth of "middle-aged" from "youth", "adult" and "elderly" grades:
/// max(0, a - max(u, e)), adult with the youth/elderly union carved out.
pub fn middle_age_truth(
    youth: &TruthFunction,
    adult: &TruthFunction,
    elderly: &TruthFunction,
) -> Result<TruthFunction> {
    check_same_universe(youth.universe(), adult.universe(), "atomic truth functions disagree")?;
    check_same_universe(youth.universe(), elderly.universe(), "atomic truth functions disagree")?;
    let values: Vec<f64> = (0..adult.universe().len())
        .map(|i| (adult.value_at(i) - youth.value_at(i).max(elderly.value_at(i))).max(0.0))
        .collect();
    TruthFunction::tabulated(adult.universe().clone(), values)
}

fn pointwise2(
    a: &TruthFunction,
    b: &TruthFunction,
    f: impl Fn(f64, f64) -> f64,
) -> Result<TruthFunction> {
    check_same_universe(a.universe(), b.universe(), "atomic truth functions disagree")?;
    let values: Vec<f64> = (0..a.universe().len())
        .map(|i| f(a.value_at(i), b.value_at(i)))
        .collect();
    TruthFunction::tabulated(a.universe().clone(), values)
}

/// Logical probabilities of a compound label's intersection and union.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompoundProbability {
    /// T(A∩B) = Σ P(x) and(tA, tB).
    pub intersection: f64,
    /// T(A∪B) = Σ P(x) or(tA, tB).
    pub union: f64,
}

/// Logical probabilities of A∩B and A∪B under a prior, with the chosen
/// correlation mode applied pointwise before averaging.
///
/// Because every mode's or/and pair is dual, the result always satisfies
/// T(A∪B) = T(A) + T(B) - T(A∩B) up to rounding.
pub fn compound_logical_probability(
    t_a: &TruthFunction,
    t_b: &TruthFunction,
    prior: &Distribution,
    mode: CorrelationMode,
) -> Result<CompoundProbability> {
    t_a.check_universe(prior)?;
    t_b.check_universe(prior)?;
    let mut intersection = 0.0;
    let mut union = 0.0;
    for (i, p) in prior.mass().iter().enumerate() {
        let (av, bv) = (t_a.value_at(i), t_b.value_at(i));
        intersection += p * fuzzy_and(av, bv, mode);
        union += p * fuzzy_or(av, bv, mode);
    }
    Ok(CompoundProbability { intersection, union })
}

/// The conditional probability and the probability of the material
/// implication for one (P(p), P(pq)) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImplicationBound {
    /// P(q|p) = P(pq) / P(p).
    pub conditional: f64,
    /// P(p⇒q) = 1 - P(p) + P(pq).
    pub material: f64,
    /// Whether conditional <= material held (it must, for valid inputs).
    pub bound_holds: bool,
}

/// Compare P(q|p) against the material implication P(p⇒q).
///
/// Requires 0 < P(p) <= 1 and 0 <= P(pq) <= P(p); P(pq) above P(p) is an
/// inconsistent joint and is rejected. The conditional never exceeds the
/// material implication: their gap is (1 - P(p))(1 - P(q|p)) >= 0.
pub fn implication_bound(p_p: f64, p_pq: f64) -> Result<ImplicationBound> {
    if !p_p.is_finite() || !(p_p > 0.0 && p_p <= 1.0) {
        return Err(Error::InvalidArgument(format!("P(p) = {p_p} outside (0, 1]")));
    }
    if !p_pq.is_finite() || p_pq < 0.0 {
        return Err(Error::InvalidArgument(format!("P(pq) = {p_pq} negative")));
    }
    if p_pq > p_p {
        return Err(Error::InvalidArgument(format!(
            "inconsistent joint: P(pq) = {p_pq} exceeds P(p) = {p_p}"
        )));
    }
    let conditional = p_pq / p_p;
    let material = 1.0 - p_p + p_pq;
    Ok(ImplicationBound { conditional, material, bound_holds: conditional <= material + 1e-12 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::Universe;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    const MODES: [CorrelationMode; 3] = [
        CorrelationMode::Positive,
        CorrelationMode::Independent,
        CorrelationMode::Negative,
    ];

    #[test]
    fn negative_mode_complementarity_is_exact() {
        for i in 0..=1000 {
            let a = i as f64 / 1000.0;
            let not_a = fuzzy_not(a);
            assert_eq!(fuzzy_and(a, not_a, CorrelationMode::Negative), 0.0);
            assert_eq!(fuzzy_or(a, not_a, CorrelationMode::Negative), 1.0);
        }
    }

    #[test]
    fn zadeh_complement_fails_at_half() {
        let a = 0.5;
        assert_eq!(fuzzy_and(a, fuzzy_not(a), CorrelationMode::Positive), 0.5);
        assert_eq!(fuzzy_or(a, fuzzy_not(a), CorrelationMode::Positive), 0.5);
    }

    #[test]
    fn boolean_corners_match_classical_logic() {
        for mode in MODES {
            for a in [0.0, 1.0] {
                for b in [0.0, 1.0] {
                    let want_and = if a == 1.0 && b == 1.0 { 1.0 } else { 0.0 };
                    let want_or = if a == 1.0 || b == 1.0 { 1.0 } else { 0.0 };
                    assert_eq!(fuzzy_and(a, b, mode), want_and, "and {mode:?} {a} {b}");
                    assert_eq!(fuzzy_or(a, b, mode), want_or, "or {mode:?} {a} {b}");
                }
            }
        }
        assert_eq!(fuzzy_not(0.0), 1.0);
        assert_eq!(fuzzy_not(1.0), 0.0);
    }

    #[test]
    fn de_morgan_holds_on_grid_for_all_modes() {
        for mode in MODES {
            for i in 0..=20 {
                for j in 0..=20 {
                    let (a, b) = (i as f64 * 0.05, j as f64 * 0.05);
                    let lhs = fuzzy_not(fuzzy_and(a, b, mode));
                    let rhs = fuzzy_or(fuzzy_not(a), fuzzy_not(b), mode);
                    assert!((lhs - rhs).abs() <= 1e-12, "{mode:?} a={a} b={b}: {lhs} vs {rhs}");
                }
            }
        }
    }

    #[test]
    fn or_equals_sum_minus_and_pointwise() {
        for mode in MODES {
            for i in 0..=20 {
                for j in 0..=20 {
                    let (a, b) = (i as f64 * 0.05, j as f64 * 0.05);
                    let or = fuzzy_or(a, b, mode);
                    let dual = a + b - fuzzy_and(a, b, mode);
                    assert!((or - dual).abs() <= 1e-15, "{mode:?} a={a} b={b}");
                }
            }
        }
    }

    fn age_universe() -> Universe {
        Universe::scalar_grid(0.0, 99.0, 100).unwrap()
    }

    #[test]
    fn union_identity_aggregates_for_every_mode() {
        let universe = age_universe();
        let t_a = TruthFunction::logistic(universe.clone(), 0.3, 30.0).unwrap();
        let t_b = TruthFunction::gaussian(universe.clone(), 45.0, 12.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let weights: Vec<f64> = (0..universe.len()).map(|_| rng.gen_range(0.1..1.0)).collect();
        let prior = Distribution::renormalized(universe, weights).unwrap();
        let ta = crate::semantic::logical_probability(&t_a, &prior).unwrap();
        let tb = crate::semantic::logical_probability(&t_b, &prior).unwrap();
        for mode in MODES {
            let cp = compound_logical_probability(&t_a, &t_b, &prior, mode).unwrap();
            assert_relative_eq!(cp.union, ta + tb - cp.intersection, epsilon = 1e-12);
        }
    }

    #[test]
    fn same_marginals_different_priors_change_the_intersection() {
        // Youth and adult grades chosen so two different priors give the
        // same T(A) and T(B) but different T(A∩B): the intersection is not
        // a function of the marginals alone.
        let universe = Universe::labeled(&["x1", "x2", "x3", "x4"]).unwrap();
        let t_a =
            TruthFunction::tabulated(universe.clone(), vec![1.0, 0.8, 0.2, 0.0]).unwrap();
        let t_b =
            TruthFunction::tabulated(universe.clone(), vec![0.0, 0.3, 0.9, 1.0]).unwrap();
        let p1 = Distribution::uniform(universe.clone());
        let p2 = Distribution::new(universe, vec![0.19, 0.35, 0.15, 0.31]).unwrap();

        for (t, p) in [(&t_a, &p1), (&t_a, &p2)] {
            let got = crate::semantic::logical_probability(t, p).unwrap();
            assert_relative_eq!(got, 0.5, epsilon = 1e-12);
        }
        for (t, p) in [(&t_b, &p1), (&t_b, &p2)] {
            let got = crate::semantic::logical_probability(t, p).unwrap();
            assert_relative_eq!(got, 0.55, epsilon = 1e-12);
        }

        let c1 =
            compound_logical_probability(&t_a, &t_b, &p1, CorrelationMode::Positive).unwrap();
        let c2 =
            compound_logical_probability(&t_a, &t_b, &p2, CorrelationMode::Positive).unwrap();
        assert_relative_eq!(c1.intersection, 0.125, epsilon = 1e-12);
        assert_relative_eq!(c2.intersection, 0.135, epsilon = 1e-12);
        assert!(c1.intersection < c2.intersection);
    }

    #[test]
    fn tautology_second_label() {
        let universe = Universe::labeled(&["a", "b", "c", "d"]).unwrap();
        let t_a =
            TruthFunction::tabulated(universe.clone(), vec![0.2, 0.9, 0.4, 0.7]).unwrap();
        let t_b = TruthFunction::tautology(universe.clone());
        let prior =
            Distribution::new(universe, vec![0.5, 0.25, 0.125, 0.125]).unwrap();
        let cp =
            compound_logical_probability(&t_a, &t_b, &prior, CorrelationMode::Positive).unwrap();
        let ta = crate::semantic::logical_probability(&t_a, &prior).unwrap();
        assert_eq!(cp.intersection, ta);
        assert_eq!(cp.union, 1.0);
    }

    #[test]
    fn crisp_disjoint_negative_mode_intersection_is_zero() {
        let universe = Universe::labeled(&["a", "b", "c", "d"]).unwrap();
        let t_a = TruthFunction::crisp(universe.clone(), vec![true, true, false, false]).unwrap();
        let t_b = TruthFunction::crisp(universe.clone(), vec![false, false, true, true]).unwrap();
        let prior = Distribution::uniform(universe);
        let cp =
            compound_logical_probability(&t_a, &t_b, &prior, CorrelationMode::Negative).unwrap();
        assert_eq!(cp.intersection, 0.0);
        assert_eq!(cp.union, 1.0);
    }

    #[test]
    fn parser_handles_precedence_and_parens() {
        let expr = LabelExpr::parse("x OR y AND z").unwrap();
        assert_eq!(
            expr,
            LabelExpr::Or(
                Box::new(LabelExpr::Atom("x".into())),
                Box::new(LabelExpr::And(
                    Box::new(LabelExpr::Atom("y".into())),
                    Box::new(LabelExpr::Atom("z".into())),
                    CorrelationMode::Positive,
                )),
                CorrelationMode::Positive,
            )
        );

        let expr = LabelExpr::parse("NOT x AND y").unwrap();
        assert_eq!(
            expr,
            LabelExpr::And(
                Box::new(LabelExpr::Not(Box::new(LabelExpr::Atom("x".into())))),
                Box::new(LabelExpr::Atom("y".into())),
                CorrelationMode::Positive,
            )
        );

        let grouped = LabelExpr::parse("(x OR y) AND:neg z").unwrap();
        assert_eq!(
            grouped,
            LabelExpr::And(
                Box::new(LabelExpr::Or(
                    Box::new(LabelExpr::Atom("x".into())),
                    Box::new(LabelExpr::Atom("y".into())),
                    CorrelationMode::Positive,
                )),
                Box::new(LabelExpr::Atom("z".into())),
                CorrelationMode::Negative,
            )
        );

        assert_eq!(grouped.atoms(), vec!["x", "y", "z"]);
    }

    #[test]
    fn parser_accepts_mode_suffixes_and_case() {
        let expr = LabelExpr::parse("a and:independent b or:NEG c").unwrap();
        match expr {
            LabelExpr::Or(_, _, CorrelationMode::Negative) => {}
            other => panic!("unexpected parse: {other:?}"),
        }
    }

    #[test]
    fn parser_rejects_malformed_expressions() {
        for bad in [
            "",
            "x AND",
            "AND x",
            "x OR (y",
            "x ) y",
            "x AND:maybe y",
            "NOT:neg x",
            "na:me",
            "x y",
        ] {
            let err = LabelExpr::parse(bad).unwrap_err();
            assert!(matches!(err, Error::Expression(_)), "{bad:?} gave {err:?}");
        }
    }

    #[test]
    fn unknown_atom_is_an_expression_error() {
        let universe = Universe::labeled(&["p"]).unwrap();
        let t = TruthFunction::tautology(universe);
        let err = compound_label_truth(&[("known", &t)], "known AND mystery").unwrap_err();
        assert!(matches!(err, Error::Expression(_)));
    }

    fn age_grades() -> (Universe, TruthFunction, TruthFunction, TruthFunction) {
        let universe = age_universe();
        // Youth fades out around 25, adulthood rises at 18, elderly at 62.
        let youth_vals: Vec<f64> = (0..universe.len())
            .map(|i| {
                let x = universe.scalar(i).unwrap();
                1.0 / (1.0 + ((x - 25.0) * 0.4).exp())
            })
            .collect();
        let youth = TruthFunction::tabulated(universe.clone(), youth_vals).unwrap();
        let adult = TruthFunction::logistic(universe.clone(), 0.5, 18.0).unwrap();
        let elderly = TruthFunction::logistic(universe.clone(), 0.25, 62.0).unwrap();
        (universe, youth, adult, elderly)
    }

    #[test]
    fn compound_expressions_match_the_closed_forms() {
        let (universe, youth, adult, elderly) = age_grades();
        let atomics: &[(&str, &TruthFunction)] =
            &[("youth", &youth), ("adult", &adult), ("elderly", &elderly)];

        let child = compound_label_truth(atomics, "NOT (youth OR adult)").unwrap();
        let child_direct = child_truth(&youth, &adult).unwrap();
        for i in 0..universe.len() {
            assert_eq!(child.value_at(i), child_direct.value_at(i));
        }

        let yna = compound_label_truth(atomics, "youth AND:neg NOT adult").unwrap();
        let yna_direct = youth_not_adult_truth(&youth, &adult).unwrap();
        for i in 0..universe.len() {
            assert!((yna.value_at(i) - yna_direct.value_at(i)).abs() <= 1e-15);
        }

        let middle =
            compound_label_truth(atomics, "adult AND:neg NOT (youth OR elderly)").unwrap();
        let middle_direct = middle_age_truth(&youth, &adult, &elderly).unwrap();
        for i in 0..universe.len() {
            assert!((middle.value_at(i) - middle_direct.value_at(i)).abs() <= 1e-15);
        }
        // The carve-out really bites: middle age vanishes at 10 and 90
        // but holds near 45.
        assert_eq!(middle_direct.value_at(10), 0.0);
        assert!(middle_direct.value_at(45) > 0.9);
        assert!(middle_direct.value_at(90) < 1e-3);
    }

    #[test]
    fn crisp_partition_gives_set_differences() {
        let universe = Universe::labeled(&["kid", "teen", "mid", "old"]).unwrap();
        let youth =
            TruthFunction::crisp(universe.clone(), vec![true, true, false, false]).unwrap();
        let adult =
            TruthFunction::crisp(universe.clone(), vec![false, true, true, true]).unwrap();
        let elderly =
            TruthFunction::crisp(universe.clone(), vec![false, false, false, true]).unwrap();

        let child = child_truth(&youth, &adult).unwrap();
        assert_eq!(child.values(), vec![0.0, 0.0, 0.0, 0.0]);

        let yna = youth_not_adult_truth(&youth, &adult).unwrap();
        assert_eq!(yna.values(), vec![1.0, 0.0, 0.0, 0.0]);

        let middle = middle_age_truth(&youth, &adult, &elderly).unwrap();
        assert_eq!(middle.values(), vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn identical_youth_and_adult_leave_no_difference() {
        let universe = Universe::labeled(&["a", "b", "c"]).unwrap();
        let t = TruthFunction::tabulated(universe.clone(), vec![0.2, 0.7, 1.0]).unwrap();
        let diff = youth_not_adult_truth(&t, &t).unwrap();
        assert_eq!(diff.values(), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn implication_bound_reference_values() {
        let b = implication_bound(0.1, 0.02).unwrap();
        assert!((b.conditional - 0.2).abs() <= 1e-15);
        assert!((b.material - 0.92).abs() <= 1e-15);
        assert!(b.bound_holds);
        assert!(b.conditional <= b.material);
    }

    #[test]
    fn implication_bound_tight_when_antecedent_is_sure() {
        let b = implication_bound(1.0, 0.37).unwrap();
        assert_eq!(b.conditional, 0.37);
        assert_eq!(b.material, 0.37);
        assert!(b.bound_holds);
    }

    #[test]
    fn implication_bound_rejects_inconsistent_inputs() {
        assert!(matches!(
            implication_bound(0.3, 0.4).unwrap_err(),
            Error::InvalidArgument(_)
        ));
        assert!(implication_bound(0.0, 0.0).is_err());
        assert!(implication_bound(1.2, 0.5).is_err());
        assert!(implication_bound(0.5, -0.1).is_err());
        assert!(implication_bound(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn implication_bound_random_sweep() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let p_p: f64 = rng.gen_range(1e-9..=1.0);
            let p_pq = p_p * rng.gen_range(0.0..=1.0);
            let b = implication_bound(p_p, p_pq).unwrap();
            assert!(b.bound_holds, "violated at P(p)={p_p}, P(pq)={p_pq}");
            assert!(b.conditional <= b.material + 1e-12);
        }
    }

    #[test]
    fn mode_parsing_roundtrip() {
        assert_eq!("pos".parse::<CorrelationMode>().unwrap(), CorrelationMode::Positive);
        assert_eq!("Independent".parse::<CorrelationMode>().unwrap(), CorrelationMode::Independent);
        assert_eq!("NEG".parse::<CorrelationMode>().unwrap(), CorrelationMode::Negative);
        assert!("sometimes".parse::<CorrelationMode>().is_err());

        let json = serde_json::to_string(&CorrelationMode::Negative).unwrap();
        assert_eq!(json, "\"negative\"");
        let back: CorrelationMode = serde_json::from_str(&json).unwrap();
        assert_eq!(back, CorrelationMode::Negative);
    }
}
