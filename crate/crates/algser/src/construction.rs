//! Builds the presentation `A(n, phi)` attached to a homomorphic image of
//! the bracket language: generators, the four relation families, weights,
//! and ordering, together with the predicted minimal-basis monomials
//! `x P_n y L e` and the predicted Tor series of the associated monomial
//! algebra.

use num_traits::One;

use crate::error::{Error, Result};
use crate::freealg::{rat, Alphabet, NcPoly, Word};
use crate::langkit::{
    enumerate_pn, image_language, pn_alphabet, Grammar, Homomorphism, LanguageSlice,
};
use crate::series::{dyck_series, pn_series, ClosedForm, RatSeries};

/// Parameters of the construction: the number of bracket pairs and the
/// letter-to-word map defining the image language.
#[derive(Debug, Clone)]
pub struct ConstructionParams {
    n: usize,
    hom: Homomorphism,
}

impl ConstructionParams {
    pub fn new(hom: Homomorphism) -> Self {
        ConstructionParams { n: hom.n(), hom }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.hom.m()
    }

    /// The common weight of the non-terminal generators: the maximal image
    /// degree.
    pub fn d(&self) -> u64 {
        self.hom.d()
    }

    pub fn homomorphism(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn generator_count(&self) -> usize {
        2 * self.n * self.n + 2 * self.n + 3 + self.m()
    }

    pub fn relation_count(&self) -> usize {
        let n = self.n;
        4 * n * n * n + 4 * n * n + 3 * n + 2
    }
}

/// A finite presentation: weighted ordered alphabet and relation list.
#[derive(Debug, Clone)]
pub struct PresentationSpec {
    pub alphabet: Alphabet,
    pub relations: Vec<NcPoly>,
}

fn sup_a(n: usize, i: usize, j: usize) -> String {
    debug_assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    format!("a.{i}.{j}")
}

fn sup_b(n: usize, i: usize, j: usize) -> String {
    debug_assert!((1..=n).contains(&i) && (1..=n).contains(&j));
    format!("b.{i}.{j}")
}

/// The presentation alphabet in precedence order: superscripted openers,
/// superscripted closers, plain openers, plain closers, `e`, `x`, `y`,
/// terminals. Within a family, a smaller index pair means higher
/// precedence. Non-terminal generators weigh `d`, terminals weigh 1.
pub fn presentation_alphabet(p: &ConstructionParams) -> Alphabet {
    let n = p.n();
    let d = p.d();
    let mut vars: Vec<(String, u64)> = Vec::with_capacity(p.generator_count());
    for i in 1..=n {
        for j in 1..=n {
            vars.push((sup_a(n, i, j), d));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            vars.push((sup_b(n, i, j), d));
        }
    }
    for i in 1..=n {
        vars.push((format!("a.{i}"), d));
    }
    for i in 1..=n {
        vars.push((format!("b.{i}"), d));
    }
    vars.push(("e".into(), d));
    vars.push(("x".into(), d));
    vars.push(("y".into(), d));
    for k in 1..=p.m() {
        vars.push((p.hom.target().name_of(k as u32 - 1).to_string(), 1));
    }
    Alphabet::new(vars).expect("presentation alphabet is valid")
}

/// Remaps a word over the homomorphism target into the presentation
/// alphabet (terminal blocks sit at the tail of the alphabet).
fn lift_terminal_word(p: &ConstructionParams, w: &Word) -> Word {
    let base = (2 * p.n() * p.n() + 2 * p.n() + 3) as u32;
    Word::from_letters(w.letters().iter().map(|&l| base + l).collect())
}

/// Emits the defining relations:
///
/// 1. `a_i^i x - x a_i^i` for every `i`, and `b_1^1 x - x e`;
/// 2. `a_i^j a_l - a_i a_l^j`, `a_i^j b_l - a_i b_l^j`,
///    `b_i^j a_l - b_i a_l^j`, `b_i^j b_l - b_i b_l^j` for all `i, j, l`,
///    and `a_i^j e - a_i b_j`, `b_i^j e - b_i b_j` for all `i, j`;
/// 3. `a_i y - y phi(a_i)`, `b_i y - y phi(b_i)` for every `i`, and the
///    monomials `a_i^j y`, `b_i^j y`;
/// 4. the monomial `x y e`.
///
/// Relations are returned sorted by (degree, descending order of the lead).
pub fn build_presentation(p: &ConstructionParams) -> PresentationSpec {
    let n = p.n();
    let a = presentation_alphabet(p);
    let w = |names: Vec<String>| -> Word {
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        a.word(&refs).expect("construction names are in the alphabet")
    };
    let binom = |pos: Word, neg: Word| {
        NcPoly::from_terms(vec![(pos, rat(1)), (neg, rat(-1))])
    };
    let mut relations = Vec::with_capacity(p.relation_count());

    for i in 1..=n {
        relations.push(binom(
            w(vec![sup_a(n, i, i), "x".into()]),
            w(vec!["x".into(), sup_a(n, i, i)]),
        ));
    }
    relations.push(binom(
        w(vec![sup_b(n, 1, 1), "x".into()]),
        w(vec!["x".into(), "e".into()]),
    ));

    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                relations.push(binom(
                    w(vec![sup_a(n, i, j), format!("a.{l}")]),
                    w(vec![format!("a.{i}"), sup_a(n, l, j)]),
                ));
                relations.push(binom(
                    w(vec![sup_a(n, i, j), format!("b.{l}")]),
                    w(vec![format!("a.{i}"), sup_b(n, l, j)]),
                ));
                relations.push(binom(
                    w(vec![sup_b(n, i, j), format!("a.{l}")]),
                    w(vec![format!("b.{i}"), sup_a(n, l, j)]),
                ));
                relations.push(binom(
                    w(vec![sup_b(n, i, j), format!("b.{l}")]),
                    w(vec![format!("b.{i}"), sup_b(n, l, j)]),
                ));
            }
            relations.push(binom(
                w(vec![sup_a(n, i, j), "e".into()]),
                w(vec![format!("a.{i}"), format!("b.{j}")]),
            ));
            relations.push(binom(
                w(vec![sup_b(n, i, j), "e".into()]),
                w(vec![format!("b.{i}"), format!("b.{j}")]),
            ));
        }
    }

    for i in 1..=n {
        let img_a = lift_terminal_word(p, p.hom.image_of_opener(i - 1));
        let img_b = lift_terminal_word(p, p.hom.image_of_closer(i - 1));
        let y = a.index_of("y").expect("y exists");
        let mut ya = vec![y];
        ya.extend_from_slice(img_a.letters());
        let mut yb = vec![y];
        yb.extend_from_slice(img_b.letters());
        relations.push(binom(
            w(vec![format!("a.{i}"), "y".into()]),
            Word::from_letters(ya),
        ));
        relations.push(binom(
            w(vec![format!("b.{i}"), "y".into()]),
            Word::from_letters(yb),
        ));
    }
    for i in 1..=n {
        for j in 1..=n {
            relations.push(NcPoly::monomial(w(vec![sup_a(n, i, j), "y".into()]), rat(1)));
            relations.push(NcPoly::monomial(w(vec![sup_b(n, i, j), "y".into()]), rat(1)));
        }
    }

    relations.push(NcPoly::monomial(
        w(vec!["x".into(), "y".into(), "e".into()]),
        rat(1),
    ));

    relations.sort_by(|f, g| {
        let lf = f.leading_monomial(&a).expect("relations are nonzero");
        let lg = g.leading_monomial(&a).expect("relations are nonzero");
        (a.degree_unchecked(lf), lf.clone()).cmp(&(a.degree_unchecked(lg), lg.clone()))
    });
    debug_assert_eq!(relations.len(), p.relation_count());
    PresentationSpec { alphabet: a, relations }
}

/// Leading monomials of the relation families (1)-(3): everything except
/// the `x y e` monomial, which the predicted monomial set carries.
pub fn relation_lead_words(p: &ConstructionParams, bound: u64) -> Result<Vec<Word>> {
    let spec = build_presentation(p);
    let xye = spec.alphabet.word(&["x", "y", "e"])?;
    let mut out = Vec::new();
    for r in &spec.relations {
        let lm = r.leading_monomial(&spec.alphabet)?;
        if *lm != xye && spec.alphabet.degree(lm)? <= bound {
            out.push(lm.clone());
        }
    }
    Ok(out)
}

/// The predicted minimal-basis monomials `x p y v e` with `p` in
/// `(D_n e)^*` and `v` in the image language, of weighted degree
/// `3d + d|p| + |v| <= bound`, assembled over the presentation alphabet.
pub fn predicted_gb_monomials(p: &ConstructionParams, bound: u64) -> LanguageSlice {
    let a = presentation_alphabet(p);
    let n = p.n();
    let d = p.d();
    let mut slice = LanguageSlice::new(bound);
    if bound < 3 * d {
        return slice;
    }
    let budget = bound - 3 * d;
    let p_words = enumerate_pn(n, budget / d);
    let v_words = image_language(p.homomorphism(), budget);
    let pn_a = pn_alphabet(n);
    let x = a.index_of("x").expect("x exists");
    let y = a.index_of("y").expect("y exists");
    let e = a.index_of("e").expect("e exists");
    for (p_len, pw) in p_words.iter() {
        let p_degree = d * p_len;
        if 3 * d + p_degree > bound {
            continue;
        }
        let lifted_p: Vec<u32> = pw
            .letters()
            .iter()
            .map(|&l| a.index_of(pn_a.name_of(l)).expect("block letters lift"))
            .collect();
        for (v_deg, vw) in v_words.iter() {
            let degree = 3 * d + p_degree + v_deg;
            if degree > bound {
                continue;
            }
            let lifted_v = lift_terminal_word(p, vw);
            let mut letters = vec![x];
            letters.extend_from_slice(&lifted_p);
            letters.push(y);
            letters.extend_from_slice(lifted_v.letters());
            letters.push(e);
            slice.insert(degree, Word::from_letters(letters));
        }
    }
    slice
}

/// The four predicted Tor series of the associated monomial algebra:
///
/// * `T_1 = (2n^2+2n+3) z^d + m z`
/// * `T_2 = (4n^3+4n^2+3n+1) z^{2d} + z^{3d} H_P(z^d) H_L(z)`
/// * `T_3 = (n+1) z^{4d} H_P(z^d) H_L(z)`
/// * `T_4 = 0`
pub fn predicted_tor_series(
    p: &ConstructionParams,
    h_l: &RatSeries,
    bound: u64,
) -> Result<Vec<RatSeries>> {
    if !h_l.coeff(0).is_one() {
        return Err(Error::InvalidInput(
            "image-language series must have constant term 1".into(),
        ));
    }
    let n = p.n() as i64;
    let d = p.d();
    let product = pn_series(p.n() as u64, bound)?
        .substitute_power(d)
        .mul(&h_l.truncate(bound));
    let t1 = RatSeries::monomial(d, rat(2 * n * n + 2 * n + 3), bound)
        .add(&RatSeries::monomial(1, rat(p.m() as i64), bound));
    let t2 = RatSeries::monomial(2 * d, rat(4 * n * n * n + 4 * n * n + 3 * n + 1), bound)
        .add(&product.shift_up(3 * d));
    let t3 = product.shift_up(4 * d).scale(&rat(n + 1));
    let t4 = RatSeries::zero(bound);
    Ok(vec![t1, t2, t3, t4])
}

/// The built-in example configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Image is the bracket language itself on `2n` terminals
    /// (`a_i -> t_{2i-1}`, `b_i -> t_{2i}`); `d = 1`.
    Example1 { n: usize },
    /// Image is the equal-count language on two terminals
    /// (`a_1 -> t_1, b_1 -> t_2, a_2 -> t_2, b_2 -> t_1`); `n = m = 2`,
    /// `d = 1`.
    Example2,
    /// Image is the balanced keyword language over 26 terminals
    /// (`a_1 -> BEG, b_1 -> END, a_2 -> FOR, b_2 -> END`); `n = 2`,
    /// `m = 26`, `d = 3`.
    Example3,
}

impl Preset {
    pub fn from_name(name: &str, n: Option<usize>) -> Result<Preset> {
        match name {
            "example1" => Ok(Preset::Example1 { n: n.unwrap_or(1) }),
            "example2" | "example3" => {
                if n.is_some() {
                    return Err(Error::InvalidInput(format!(
                        "preset `{name}` does not take an n parameter"
                    )));
                }
                Ok(if name == "example2" { Preset::Example2 } else { Preset::Example3 })
            }
            other => Err(Error::InvalidInput(format!("unknown preset `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Example1 { .. } => "example1",
            Preset::Example2 => "example2",
            Preset::Example3 => "example3",
        }
    }

    pub fn params(&self) -> ConstructionParams {
        match self {
            Preset::Example1 { n } => {
                let n = *n;
                assert!(n >= 1, "example1 needs n >= 1");
                let names: Vec<String> = (1..=2 * n).map(|k| format!("t.{k}")).collect();
                let target = Alphabet::unit_weights(names).expect("terminals");
                let images_a =
                    (1..=n).map(|i| Word::single(2 * (i as u32 - 1))).collect();
                let images_b =
                    (1..=n).map(|i| Word::single(2 * (i as u32 - 1) + 1)).collect();
                ConstructionParams::new(
                    Homomorphism::new(n, target, images_a, images_b).expect("relabeling map"),
                )
            }
            Preset::Example2 => {
                let target = Alphabet::unit_weights(vec!["t.1", "t.2"]).expect("terminals");
                let t1 = Word::single(0);
                let t2 = Word::single(1);
                ConstructionParams::new(
                    Homomorphism::new(2, target, vec![t1.clone(), t2.clone()], vec![t2, t1])
                        .expect("equal-count map"),
                )
            }
            Preset::Example3 => {
                let names: Vec<String> = (1..=26).map(|k| format!("t.{k}")).collect();
                let target = Alphabet::unit_weights(names).expect("terminals");
                let word = |s: &str| target.parse_word(s).expect("keyword letters");
                let beg = word("t.2 t.5 t.7");
                let end = word("t.5 t.14 t.4");
                let for_ = word("t.6 t.15 t.18");
                ConstructionParams::new(
                    Homomorphism::new(2, target, vec![beg, for_], vec![end.clone(), end])
                        .expect("keyword map"),
                )
            }
        }
    }

    /// Closed-form generating function of the image language.
    pub fn image_series(&self, bound: u64) -> Result<RatSeries> {
        match self {
            Preset::Example1 { n } => dyck_series(*n as u64, bound),
            Preset::Example2 => RatSeries::one(bound)
                .sub(&RatSeries::monomial(2, rat(4), bound))
                .sqrt()?
                .invert(),
            Preset::Example3 => crate::series::keyword_image_series(bound),
        }
    }

    pub fn closed_form(&self) -> ClosedForm {
        match self {
            Preset::Example1 { n } => ClosedForm::Example1 { n: *n as u64 },
            Preset::Example2 => ClosedForm::Example2,
            Preset::Example3 => ClosedForm::Example3,
        }
    }

    /// An unambiguous grammar for the image language, validated against
    /// enumeration in the test suites.
    pub fn image_grammar(&self) -> Grammar {
        match self {
            Preset::Example1 { n } => {
                let mut productions = vec![("S".to_string(), vec![])];
                for i in 1..=*n {
                    productions.push((
                        "S".to_string(),
                        vec![
                            format!("t.{}", 2 * i - 1),
                            "S".to_string(),
                            format!("t.{}", 2 * i),
                            "S".to_string(),
                        ],
                    ));
                }
                let weights = (1..=2 * n).map(|k| (format!("t.{k}"), 1)).collect();
                Grammar::from_parts(vec!["S".into()], "S", productions, weights)
                    .expect("bracket grammar")
            }
            Preset::Example2 => Grammar::from_parts(
                vec!["S".into(), "A".into(), "B".into()],
                "S",
                vec![
                    ("S".into(), vec![]),
                    ("S".into(), vec!["t.1".into(), "B".into(), "S".into()]),
                    ("S".into(), vec!["t.2".into(), "A".into(), "S".into()]),
                    ("A".into(), vec!["t.1".into()]),
                    ("A".into(), vec!["t.2".into(), "A".into(), "A".into()]),
                    ("B".into(), vec!["t.2".into()]),
                    ("B".into(), vec!["t.1".into(), "B".into(), "B".into()]),
                ],
                vec![("t.1".into(), 1), ("t.2".into(), 1)],
            )
            .expect("equal-count grammar"),
            Preset::Example3 => {
                let beg = ["t.2", "t.5", "t.7"];
                let end = ["t.5", "t.14", "t.4"];
                let for_ = ["t.6", "t.15", "t.18"];
                let mut rhs1: Vec<String> = beg.iter().map(|s| s.to_string()).collect();
                rhs1.push("S".into());
                rhs1.extend(end.iter().map(|s| s.to_string()));
                rhs1.push("S".into());
                let mut rhs2: Vec<String> = for_.iter().map(|s| s.to_string()).collect();
                rhs2.push("S".into());
                rhs2.extend(end.iter().map(|s| s.to_string()));
                rhs2.push("S".into());
                let mut weights: Vec<(String, u64)> = Vec::new();
                for t in beg.iter().chain(end.iter()).chain(for_.iter()) {
                    if !weights.iter().any(|(n, _)| n == t) {
                        weights.push((t.to_string(), 1));
                    }
                }
                Grammar::from_parts(
                    vec!["S".into()],
                    "S",
                    vec![("S".into(), vec![]), ("S".into(), rhs1), ("S".into(), rhs2)],
                    weights,
                )
                .expect("keyword grammar")
            }
        }
    }
}
