//! JSON documents exchanged on the command-line surface. All maps are
//! ordered and rationals are serialized in canonical `p` / `p/q` form, so
//! identical inputs produce byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construction::{ConstructionParams, PresentationSpec};
use crate::error::{Error, Result};
use crate::freealg::{parse_rational, rational_string, Alphabet, NcPoly, Word};
use crate::langkit::{Grammar, Homomorphism, LanguageSlice};
use crate::series::RatSeries;

pub const SCHEMA: &str = "algser/1";

fn expect_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::Format(format!("unsupported schema `{schema}`, expected `{SCHEMA}`")));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VarDoc {
    pub name: String,
    pub weight: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub word: Vec<String>,
}

/// Preset provenance carried inside presentation documents so downstream
/// commands can run the predicted-basis and closed-form comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresetDoc {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub d: u64,
    pub images: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub schema: String,
    pub kind: String,
    pub alphabet: Vec<VarDoc>,
    pub relations: Vec<Vec<TermDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetDoc>,
}

pub fn poly_to_doc(p: &NcPoly, a: &Alphabet) -> Vec<TermDoc> {
    let mut words: Vec<&Word> = p.terms().map(|(w, _)| w).collect();
    words.sort_by(|u, v| {
        a.cmp_deglex_unchecked(v, u).then_with(|| u.cmp(v))
    });
    words
        .into_iter()
        .map(|w| TermDoc {
            coeff: rational_string(p.coeff(w).expect("term in support")),
            word: a.names(w).expect("word over the alphabet"),
        })
        .collect()
}

pub fn poly_from_doc(doc: &[TermDoc], a: &Alphabet) -> Result<NcPoly> {
    let mut terms = Vec::with_capacity(doc.len());
    for t in doc {
        let names: Vec<&str> = t.word.iter().map(|s| s.as_str()).collect();
        terms.push((a.word(&names)?, parse_rational(&t.coeff)?));
    }
    Ok(NcPoly::from_terms(terms))
}

pub fn presentation_to_doc(
    spec: &PresentationSpec,
    preset: Option<PresetDoc>,
) -> PresentationDoc {
    PresentationDoc {
        schema: SCHEMA.into(),
        kind: "presentation".into(),
        alphabet: spec
            .alphabet
            .variables()
            .iter()
            .map(|v| VarDoc { name: v.name.clone(), weight: v.weight })
            .collect(),
        relations: spec.relations.iter().map(|r| poly_to_doc(r, &spec.alphabet)).collect(),
        preset,
    }
}

pub fn presentation_from_doc(doc: &PresentationDoc) -> Result<PresentationSpec> {
    expect_schema(&doc.schema)?;
    if doc.kind != "presentation" {
        return Err(Error::Format(format!("expected a presentation document, got `{}`", doc.kind)));
    }
    let alphabet = Alphabet::new(
        doc.alphabet.iter().map(|v| (v.name.clone(), v.weight)).collect(),
    )?;
    let mut relations = Vec::with_capacity(doc.relations.len());
    for (i, r) in doc.relations.iter().enumerate() {
        let p = poly_from_doc(r, &alphabet)?;
        if p.is_zero() {
            return Err(Error::ZeroRelation(i));
        }
        relations.push(p);
    }
    Ok(PresentationSpec { alphabet, relations })
}

pub fn preset_doc(name: &str, params: &ConstructionParams) -> PresetDoc {
    let hom = params.homomorphism();
    let target = hom.target();
    let mut images = BTreeMap::new();
    for i in 1..=params.n() {
        images.insert(
            format!("a.{i}"),
            target.names(hom.image_of_opener(i - 1)).expect("image over target"),
        );
        images.insert(
            format!("b.{i}"),
            target.names(hom.image_of_closer(i - 1)).expect("image over target"),
        );
    }
    PresetDoc { name: name.into(), n: params.n(), m: params.m(), d: params.d(), images }
}

pub fn params_from_preset_doc(doc: &PresetDoc) -> Result<ConstructionParams> {
    let names: Vec<String> = (1..=doc.m).map(|k| format!("t.{k}")).collect();
    let target = Alphabet::unit_weights(names)?;
    let mut images_a = Vec::with_capacity(doc.n);
    let mut images_b = Vec::with_capacity(doc.n);
    for i in 1..=doc.n {
        let get = |key: &str| -> Result<Word> {
            let img = doc
                .images
                .get(key)
                .ok_or_else(|| Error::Format(format!("missing image for `{key}`")))?;
            let names: Vec<&str> = img.iter().map(|s| s.as_str()).collect();
            target.word(&names)
        };
        images_a.push(get(&format!("a.{i}"))?);
        images_b.push(get(&format!("b.{i}"))?);
    }
    Ok(ConstructionParams::new(Homomorphism::new(doc.n, target, images_a, images_b)?))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GbElementDoc {
    pub degree: u64,
    pub lead: Vec<String>,
    pub poly: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub verdict: String,
    pub missing: Vec<Vec<String>>,
    pub unexpected: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GbDoc {
    pub schema: String,
    pub kind: String,
    pub bound: u64,
    pub elements: Vec<GbElementDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub schema: String,
    pub kind: String,
    pub bound: u64,
    pub coefficients: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub meta: BTreeMap<String, String>,
}

pub fn series_to_doc(s: &RatSeries, meta: BTreeMap<String, String>) -> SeriesDoc {
    SeriesDoc {
        schema: SCHEMA.into(),
        kind: "series".into(),
        bound: s.bound(),
        coefficients: s.coeff_strings(),
        meta,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareDoc {
    pub schema: String,
    pub kind: String,
    pub bound: u64,
    pub methods: Vec<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement_degree: Option<u64>,
    pub series: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainTableDoc {
    pub schema: String,
    pub kind: String,
    pub bound: u64,
    pub max_t: usize,
    pub dims: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub languages: Option<BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>>,
}

pub fn slice_words_doc(
    slice: &LanguageSlice,
    a: &Alphabet,
) -> BTreeMap<String, Vec<Vec<String>>> {
    let mut out: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for (deg, w) in slice.iter() {
        out.entry(deg.to_string())
            .or_default()
            .push(a.names(w).expect("slice words are over the alphabet"));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionsDoc {
    pub schema: String,
    pub kind: String,
    pub alphabet: Vec<VarDoc>,
    pub words: Vec<Vec<String>>,
}

pub fn obstructions_from_doc(doc: &ObstructionsDoc) -> Result<(Alphabet, Vec<Word>)> {
    expect_schema(&doc.schema)?;
    if doc.kind != "obstructions" {
        return Err(Error::Format(format!("expected an obstruction document, got `{}`", doc.kind)));
    }
    let alphabet = Alphabet::new(
        doc.alphabet.iter().map(|v| (v.name.clone(), v.weight)).collect(),
    )?;
    let mut words = Vec::with_capacity(doc.words.len());
    for w in &doc.words {
        let names: Vec<&str> = w.iter().map(|s| s.as_str()).collect();
        words.push(alphabet.word(&names)?);
    }
    Ok((alphabet, words))
}

/// Grammar document: `weights` lists the terminals, `productions` may use
/// empty right-hand sides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrammarDoc {
    pub nonterminals: Vec<String>,
    pub start: String,
    pub productions: Vec<ProductionDoc>,
    pub weights: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductionDoc {
    pub lhs: String,
    pub rhs: Vec<String>,
}

pub fn grammar_from_doc(doc: &GrammarDoc) -> Result<Grammar> {
    Grammar::from_parts(
        doc.nonterminals.clone(),
        &doc.start,
        doc.productions.iter().map(|p| (p.lhs.clone(), p.rhs.clone())).collect(),
        doc.weights.iter().map(|(k, v)| (k.clone(), *v)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_presentation, Preset};

    #[test]
    fn presentation_roundtrip() {
        let preset = Preset::Example1 { n: 1 };
        let params = preset.params();
        let spec = build_presentation(&params);
        let doc = presentation_to_doc(&spec, Some(preset_doc(preset.name(), &params)));
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: PresentationDoc = serde_json::from_str(&json).unwrap();
        let spec2 = presentation_from_doc(&parsed).unwrap();
        assert_eq!(spec.relations, spec2.relations);
        assert_eq!(
            spec.alphabet.variables().len(),
            spec2.alphabet.variables().len()
        );
        let params2 = params_from_preset_doc(parsed.preset.as_ref().unwrap()).unwrap();
        assert_eq!(params2.n(), 1);
        assert_eq!(params2.d(), 1);
    }

    #[test]
    fn serialization_is_deterministic() {
        let preset = Preset::Example2;
        let params = preset.params();
        let spec = build_presentation(&params);
        let doc = presentation_to_doc(&spec, Some(preset_doc(preset.name(), &params)));
        let a = serde_json::to_string_pretty(&doc).unwrap();
        let b = serde_json::to_string_pretty(&presentation_to_doc(
            &build_presentation(&preset.params()),
            Some(preset_doc(preset.name(), &preset.params())),
        ))
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn schema_is_checked() {
        let doc = PresentationDoc {
            schema: "algser/0".into(),
            kind: "presentation".into(),
            alphabet: vec![],
            relations: vec![],
            preset: None,
        };
        assert!(presentation_from_doc(&doc).is_err());
    }

    #[test]
    fn rational_strings_roundtrip() {
        for s in ["0", "5", "-3", "7/2", "-9/4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_string(&r), s);
        }
        assert_eq!(rational_string(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
