//! TOML profile format.
//!
//! ```toml
//! alternatives = ["a", "b", "c"]
//!
//! [defaults]                      # optional, falls back to the stock rows
//! preference = [0.8, 0.2, 0.3, 0.1]
//!
//! [[agents]]
//! name = "alice"
//! prefers = [["a", "b"]]          # a ≻ b
//! indifferent = [["b", "c"]]
//! incomparable = []
//!
//! [[overrides]]                   # explicit degrees, pair in ascending order
//! agent = "alice"
//! pair = ["a", "c"]
//! degrees = [0.4, 0.1, 0.3, 0.6]
//! ```

use std::collections::HashMap;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use super::IoError;
use crate::fusion::{DefaultTemplate, Degrees, Pair, PreferenceProfile, RelationKind};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileDoc {
    alternatives: Spanned<Vec<String>>,
    #[serde(default)]
    defaults: DefaultsDoc,
    #[serde(default)]
    agents: Vec<AgentDoc>,
    #[serde(default)]
    overrides: Vec<OverrideDoc>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefaultsDoc {
    preference: Option<Spanned<[f64; 4]>>,
    inverse_preference: Option<Spanned<[f64; 4]>>,
    indifference: Option<Spanned<[f64; 4]>>,
    incomparability: Option<Spanned<[f64; 4]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AgentDoc {
    name: Spanned<String>,
    #[serde(default)]
    prefers: Vec<Spanned<[String; 2]>>,
    #[serde(default)]
    indifferent: Vec<Spanned<[String; 2]>>,
    #[serde(default)]
    incomparable: Vec<Spanned<[String; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideDoc {
    agent: Spanned<String>,
    pair: Spanned<[String; 2]>,
    degrees: Spanned<[f64; 4]>,
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        let end = span.start.min(self.text.len());
        self.text[..end].bytes().filter(|&b| b == b'\n').count() + 1
    }

    fn err(&self, span: Range<usize>, message: impl Into<String>) -> IoError {
        IoError::Parse { line: Some(self.line(span)), message: message.into() }
    }
}

/// Parses a profile document.
pub fn parse_profile(text: &str) -> Result<PreferenceProfile, IoError> {
    let ctx = Ctx { text };
    let doc: ProfileDoc = toml::from_str(text).map_err(|e| IoError::Parse {
        line: e.span().map(|s| ctx.line(s)),
        message: e.message().to_string(),
    })?;

    let mut template = DefaultTemplate::default();
    for (kind, row) in [
        (RelationKind::StrictPreference, &doc.defaults.preference),
        (RelationKind::InverseStrictPreference, &doc.defaults.inverse_preference),
        (RelationKind::Indifference, &doc.defaults.indifference),
        (RelationKind::Incomparability, &doc.defaults.incomparability),
    ] {
        if let Some(row) = row {
            let d = Degrees::new(*row.get_ref()).map_err(|e| ctx.err(row.span(), e.to_string()))?;
            template.set_row(kind, d);
        }
    }

    let alt_span = doc.alternatives.span();
    let alternatives = doc.alternatives.into_inner();
    if alternatives.is_empty() {
        return Err(ctx.err(alt_span, "profile lists no alternatives"));
    }
    let index: HashMap<&str, usize> = alternatives.iter().enumerate().map(|(k, a)| (a.as_str(), k)).collect();
    let mut profile = PreferenceProfile::new(alternatives.iter().cloned(), template)
        .map_err(|e| ctx.err(alt_span.clone(), e.to_string()))?;
    if doc.agents.is_empty() {
        return Err(ctx.err(alt_span, "profile lists no agents"));
    }

    let lookup = |pair: &Spanned<[String; 2]>| -> Result<(usize, usize), IoError> {
        let [a, b] = pair.get_ref();
        let find = |label: &String| {
            index
                .get(label.as_str())
                .copied()
                .ok_or_else(|| ctx.err(pair.span(), format!("unknown alternative `{label}`")))
        };
        Ok((find(a)?, find(b)?))
    };

    let mut agent_ids = HashMap::new();
    for agent in &doc.agents {
        let id = profile
            .add_agent(agent.name.get_ref().clone())
            .map_err(|e| ctx.err(agent.name.span(), e.to_string()))?;
        agent_ids.insert(agent.name.get_ref().clone(), id);
        let declared = agent
            .prefers
            .iter()
            .map(|p| (p, RelationKind::StrictPreference))
            .chain(agent.indifferent.iter().map(|p| (p, RelationKind::Indifference)))
            .chain(agent.incomparable.iter().map(|p| (p, RelationKind::Incomparability)));
        for (pair, kind) in declared {
            let (a, b) = lookup(pair)?;
            profile.declare(id, a, b, kind).map_err(|e| ctx.err(pair.span(), e.to_string()))?;
        }
    }

    for ov in &doc.overrides {
        let id = *agent_ids
            .get(ov.agent.get_ref())
            .ok_or_else(|| ctx.err(ov.agent.span(), format!("unknown agent `{}`", ov.agent.get_ref())))?;
        let (a, b) = lookup(&ov.pair)?;
        let pair = Pair::new(a, b).map_err(|_| {
            ctx.err(ov.pair.span(), "override pairs must list alternatives in ascending order")
        })?;
        let degrees =
            Degrees::new(*ov.degrees.get_ref()).map_err(|e| ctx.err(ov.degrees.span(), e.to_string()))?;
        profile.assess(id, pair, degrees).map_err(|e| ctx.err(ov.pair.span(), e.to_string()))?;
    }
    Ok(profile)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn row(d: Degrees) -> String {
    let v = d.values();
    format!("[{}, {}, {}, {}]", v[0], v[1], v[2], v[3])
}

/// Writes a profile in the same format [`parse_profile`] reads.
pub fn write_profile(profile: &PreferenceProfile) -> String {
    let alts = profile.alternatives();
    let pair_str = |a: usize, b: usize| format!("[{}, {}]", quote(&alts[a]), quote(&alts[b]));
    let mut out = String::new();
    let list: Vec<String> = alts.iter().map(|a| quote(a)).collect();
    out.push_str(&format!("alternatives = [{}]\n\n[defaults]\n", list.join(", ")));
    for kind in RelationKind::ALL {
        out.push_str(&format!("{} = {}\n", kind.name(), row(profile.template().row(kind))));
    }
    for (id, name) in profile.agents().iter().enumerate() {
        let mut prefers = Vec::new();
        let mut indifferent = Vec::new();
        let mut incomparable = Vec::new();
        for (pair, kind) in profile.declarations(id) {
            let (i, j) = (pair.i(), pair.j());
            match kind {
                RelationKind::StrictPreference => prefers.push(pair_str(i, j)),
                RelationKind::InverseStrictPreference => prefers.push(pair_str(j, i)),
                RelationKind::Indifference => indifferent.push(pair_str(i, j)),
                RelationKind::Incomparability => incomparable.push(pair_str(i, j)),
            }
        }
        out.push_str(&format!("\n[[agents]]\nname = {}\n", quote(name)));
        for (key, items) in
            [("prefers", prefers), ("indifferent", indifferent), ("incomparable", incomparable)]
        {
            if !items.is_empty() {
                out.push_str(&format!("{key} = [{}]\n", items.join(", ")));
            }
        }
    }
    for a in profile.assessments() {
        out.push_str(&format!(
            "\n[[overrides]]\nagent = {}\npair = {}\ndegrees = {}\n",
            quote(&profile.agents()[a.agent]),
            pair_str(a.pair.i(), a.pair.j()),
            row(a.degrees)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::FIVE_ALTERNATIVES;

    #[test]
    fn parses_example() {
        let p = parse_profile(FIVE_ALTERNATIVES).unwrap();
        assert_eq!(p.alternatives().len(), 5);
        assert_eq!(p.agents().len(), 3);
        assert_eq!(p.assessments().count(), 9);
        let pair = Pair::new(0, 1).unwrap();
        assert_eq!(p.declared(2, pair), Some(RelationKind::InverseStrictPreference));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let p = parse_profile(FIVE_ALTERNATIVES).unwrap();
        let again = parse_profile(&write_profile(&p)).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn unknown_fields_rejected_with_line() {
        let text = "alternatives = [\"a\", \"b\"]\n\n[[agents]]\nname = \"x\"\ncolour = \"red\"\n";
        match parse_profile(text).unwrap_err() {
            IoError::Parse { line, message } => {
                assert!(message.contains("colour"), "{message}");
                assert!(line.is_some());
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn semantic_errors_carry_lines() {
        let text = "alternatives = [\"a\", \"b\"]\n[[agents]]\nname = \"x\"\nprefers = [[\"a\", \"z\"]]\n";
        match parse_profile(text).unwrap_err() {
            IoError::Parse { line, message } => {
                assert_eq!(line, Some(4));
                assert!(message.contains("`z`"));
            }
            e => panic!("unexpected {e:?}"),
        }
        let text = "alternatives = [\"a\", \"b\"]\n[[agents]]\nname = \"x\"\n[[overrides]]\nagent = \"x\"\npair = [\"b\", \"a\"]\ndegrees = [0, 0, 0, 0]\n";
        assert!(matches!(parse_profile(text), Err(IoError::Parse { line: Some(6), .. })));
        let text = "alternatives = [\"a\", \"b\"]\n[[agents]]\nname = \"x\"\n[[overrides]]\nagent = \"x\"\npair = [\"a\", \"b\"]\ndegrees = [0, 2, 0, 0]\n";
        assert!(matches!(parse_profile(text), Err(IoError::Parse { line: Some(7), .. })));
    }

    #[test]
    fn empty_profiles_rejected() {
        assert!(parse_profile("").is_err());
        assert!(parse_profile("alternatives = []").is_err());
        assert!(parse_profile("alternatives = [\"a\", \"b\"]").is_err());
    }
}
