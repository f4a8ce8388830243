//! Lexicon-based text valence.
//!
//! Tokens are lowercased words (a hashtag contributes its tag word). Each
//! token found in the lexicon adds its valence to a running sum after two
//! adjustments taken from the three preceding *recognized* tokens (lexicon
//! words, boosters or negations; unknown words are skipped entirely):
//!
//! - a booster shifts the magnitude by its delta, scaled 1.0 / 0.95 / 0.9 by distance;
//! - a negation multiplies the valence by -0.74.
//!
//! The sum `S` is squashed to `S / sqrt(S^2 + 15)`, the normalization used by
//! the widely deployed VADER tool.

mod lexicon_data;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::annotation::SENTIMENT_DIMENSIONS;
use crate::scores::PredictionRecord;
use crate::stats::{pearson, MetricResult};
use crate::{Error, Result};

const NEGATION_SCALAR: f64 = -0.74;
const COMPOUND_ALPHA: f64 = 15.0;
const WINDOW: usize = 3;
const DISTANCE_DAMPING: [f64; WINDOW] = [1.0, 0.95, 0.9];

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    valences: BTreeMap<String, f64>,
    boosters: BTreeMap<String, f64>,
    negations: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValenceScore {
    /// Normalized sentiment in `[-1, 1]`.
    pub compound: f64,
    /// Tokens that carried a valence.
    pub n_hits: usize,
}

enum Role {
    Valence(f64),
    Booster(f64),
    Negation,
}

impl Lexicon {
    /// The compact lexicon shipped with the crate, with default boosters and
    /// negations.
    pub fn builtin() -> Self {
        Lexicon::from_entries(lexicon_data::VALENCES.iter().map(|&(t, v)| (t.to_string(), v)))
    }

    /// A lexicon with the given valences and the default boosters/negations.
    pub fn from_entries(entries: impl IntoIterator<Item = (String, f64)>) -> Self {
        Lexicon {
            valences: entries.into_iter().map(|(t, v)| (t.to_lowercase(), v)).collect(),
            boosters: lexicon_data::BOOSTERS.iter().map(|&(t, d)| (t.to_string(), d)).collect(),
            negations: lexicon_data::NEGATIONS.iter().map(|t| t.to_string()).collect(),
        }
    }

    /// Parses `token<TAB>valence[<TAB>...]` lines; extra columns (such as the
    /// rater statistics of published lexicon files) are ignored. Blank lines
    /// and single-column lines starting with `#` are skipped.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut cols = line.split('\t');
            let token = cols.next().unwrap_or_default().trim();
            let Some(raw) = cols.next() else {
                if token.starts_with('#') {
                    continue;
                }
                return Err(Error::Parse { line: i + 1, message: "expected token<TAB>valence".into() });
            };
            let valence: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, message: alloc::format!("bad valence `{raw}`") })?;
            if !valence.is_finite() || token.is_empty() {
                return Err(Error::Parse { line: i + 1, message: "empty token or non-finite valence".into() });
            }
            entries.push((token.to_string(), valence));
        }
        Ok(Lexicon::from_entries(entries))
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token).copied()
    }

    /// The same lexicon with every valence sign-flipped.
    pub fn negated(&self) -> Self {
        Lexicon {
            valences: self.valences.iter().map(|(t, v)| (t.clone(), -v)).collect(),
            ..self.clone()
        }
    }

    fn role(&self, token: &str) -> Option<Role> {
        if let Some(&v) = self.valences.get(token) {
            Some(Role::Valence(v))
        } else if let Some(&d) = self.boosters.get(token) {
            Some(Role::Booster(d))
        } else if self.negations.contains(token) {
            Some(Role::Negation)
        } else {
            None
        }
    }
}

/// Lowercase word tokens; apostrophes inside words are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '\'' || c == '\u{2019}'))
        .map(|t| t.trim_matches(|c| c == '\'' || c == '\u{2019}').replace('\u{2019}', "'").to_lowercase())
        .filter(|t| !t.is_empty())
        .collect()
}

pub fn score_text(text: &str, lexicon: &Lexicon) -> ValenceScore {
    let roles: Vec<Role> = tokenize(text).iter().filter_map(|t| lexicon.role(t)).collect();
    let mut sum = 0.0;
    let mut n_hits = 0;
    for (i, role) in roles.iter().enumerate() {
        let Role::Valence(base) = *role else { continue };
        let mut v = base;
        let mut negated = false;
        for (k, prev) in roles[..i].iter().rev().take(WINDOW).enumerate() {
            match prev {
                Role::Booster(delta) if v != 0.0 => v += v.signum() * delta * DISTANCE_DAMPING[k],
                Role::Negation => negated = true,
                _ => {}
            }
        }
        if negated {
            v *= NEGATION_SCALAR;
        }
        sum += v;
        n_hits += 1;
    }
    let compound = if sum == 0.0 {
        0.0
    } else {
        (sum / libm::sqrt(sum * sum + COMPOUND_ALPHA)).clamp(-1.0, 1.0)
    };
    ValenceScore { compound, n_hits }
}

/// Image dimension scored against text valence.
fn dimension_score(p: &PredictionRecord, dimension: &str) -> f64 {
    match dimension {
        "violent" => p.violence,
        other => p.score(other).expect("sentiment dimension is a score column"),
    }
}

/// Correlates text compound valence with each image dimension
/// (violent, angry, fearful, sad, happy). A dimension that cannot be
/// correlated (e.g. constant predictions) carries its own error.
pub fn image_text_correlation(rows: &[(f64, &PredictionRecord)]) -> Result<Vec<(&'static str, Result<MetricResult>)>> {
    if rows.len() < 3 {
        return Err(Error::InsufficientSamples { needed: 3, got: rows.len() });
    }
    let valence: Vec<f64> = rows.iter().map(|r| r.0).collect();
    Ok(SENTIMENT_DIMENSIONS
        .iter()
        .map(|&dim| {
            let image: Vec<f64> = rows.iter().map(|r| dimension_score(r.1, dim)).collect();
            (dim, pearson(&valence, &image))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn builtin_size() {
        let lex = Lexicon::builtin();
        assert!(lex.len() >= 300, "{}", lex.len());
        assert!(lex.valences.values().all(|v| (-4.0..=4.0).contains(v)));
    }

    #[test]
    fn empty_text() {
        assert_eq!(score_text("", &Lexicon::builtin()), ValenceScore { compound: 0.0, n_hits: 0 });
        assert_eq!(score_text("the of and", &Lexicon::builtin()).compound, 0.0);
    }

    #[test]
    fn hate_and_violence_is_negative() {
        let s = score_text("hate and violence", &Lexicon::builtin());
        assert!(s.compound < 0.0);
        assert_eq!(s.n_hits, 2);
        // -2.7 + -3.1 = -5.8
        let expected = -5.8 / libm::sqrt(5.8 * 5.8 + 15.0);
        assert!((s.compound - expected).abs() < 1e-12);
    }

    #[test]
    fn negation_flips_sign() {
        let lex = Lexicon::builtin();
        let good = score_text("good", &lex).compound;
        let not_good = score_text("not good", &lex).compound;
        assert!(good > 0.0 && not_good < 0.0);
        assert!(score_text("don't hate", &lex).compound > 0.0);
        // Out of the window: three recognized tokens in between.
        assert!(score_text("not very really good good", &lex).compound > 0.0);
    }

    #[test]
    fn boosters_intensify() {
        let lex = Lexicon::builtin();
        assert!(score_text("very good", &lex).compound > score_text("good", &lex).compound);
        assert!(score_text("very bad", &lex).compound < score_text("bad", &lex).compound);
        assert!(score_text("slightly bad", &lex).compound > score_text("bad", &lex).compound);
    }

    #[test]
    fn hashtags_count_as_words() {
        let lex = Lexicon::builtin();
        assert_eq!(score_text("#peace", &lex), score_text("peace", &lex));
    }

    #[test]
    fn tsv_loading() {
        let lex = Lexicon::from_tsv("# comment\nGood\t1.9\t0.9\t[2, 2]\n\nawful\t-2.0\n").unwrap();
        assert_eq!(lex.valence("good"), Some(1.9));
        assert_eq!(lex.valence("awful"), Some(-2.0));
        assert!(matches!(Lexicon::from_tsv("bad\tnope\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Lexicon::from_tsv("ok\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn tokenizer() {
        assert_eq!(tokenize("Don't #BLM, ok?"), vec!["don't", "blm", "ok"]);
        assert_eq!(tokenize("isn\u{2019}t"), vec!["isn't"]);
    }

    #[test]
    fn correlation_needs_rows() {
        let p = PredictionRecord::from_scores("a", [0.5; 16]);
        assert!(matches!(image_text_correlation(&[(0.1, &p)]), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn planted_correlation() {
        let records: Vec<PredictionRecord> = (0..20)
            .map(|i| {
                let v = f64::from(i) / 20.0;
                let mut s = [0.3; 16];
                s[1] = 1.0 - v * v; // violence falls as text gets more positive
                s[5] = v; // happy rises
                s[2] = 0.1 + 0.01 * f64::from(i % 3);
                PredictionRecord::from_scores(alloc::format!("{i}"), s)
            })
            .collect();
        let rows: Vec<(f64, &PredictionRecord)> = records.iter().map(|r| (r.sentiments[3] * 2.0 - 1.0, r)).collect();
        let out = image_text_correlation(&rows).unwrap();
        let get = |d: &str| out.iter().find(|x| x.0 == d).unwrap().1.clone();
        assert!((get("happy").unwrap().rho - 1.0).abs() < 1e-12);
        assert!(get("violent").unwrap().rho < -0.9);
        assert_eq!(get("sad"), Err(Error::UndefinedCorrelation));
    }

    proptest::proptest! {
        #[test]
        fn compound_bounded_and_antisymmetric(words in proptest::collection::vec(
            proptest::sample::select(vec!["good", "bad", "not", "very", "hate", "peace", "the", "slightly", "violence", "love", "never", "xyz"]), 0..25)) {
            let text = words.join(" ");
            let lex = Lexicon::builtin();
            let s = score_text(&text, &lex);
            proptest::prop_assert!((-1.0..=1.0).contains(&s.compound));
            let flipped = score_text(&text, &lex.negated());
            proptest::prop_assert!((s.compound + flipped.compound).abs() < 1e-12);
            let padded = alloc::format!("{} qwzx", words.iter().map(|w| alloc::format!("{w} qwzx")).collect::<Vec<_>>().join(" "));
            proptest::prop_assert_eq!(score_text(&padded, &lex), s);
        }
    }
}
