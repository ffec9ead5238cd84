//! Words over weighted alphabets, degree-compatible deglex orderings, and
//! noncommutative polynomials with exact rational coefficients.
//!
//! A [`Word`] is a sequence of letter indices into an [`Alphabet`]; the
//! alphabet assigns every variable a name and a positive integer weight and
//! fixes the deglex precedence by its list order (earlier entries are
//! greater). Polynomials are finite maps from words to nonzero rationals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A named generator with a positive weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub weight: u64,
}

/// An ordered list of variables. The list order defines the deglex
/// precedence: the variable at index 0 is the greatest.
#[derive(Debug, Clone)]
pub struct Alphabet {
    vars: Vec<Variable>,
    by_name: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(vars: Vec<(S, u64)>) -> Result<Self> {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(name, weight)| Variable { name: name.into(), weight })
            .collect();
        let mut by_name = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(Error::InvalidInput(format!(
                    "variable `{}` has weight 0; weights must be >= 1",
                    v.name
                )));
            }
            if by_name.insert(v.name.clone(), i as u32).is_some() {
                return Err(Error::InvalidInput(format!("duplicate variable name `{}`", v.name)));
            }
        }
        Ok(Alphabet { vars, by_name })
    }

    /// Alphabet with the given names, all of weight 1.
    pub fn unit_weights<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n, 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn weight(&self, letter: u32) -> u64 {
        self.vars[letter as usize].weight
    }

    pub fn name_of(&self, letter: u32) -> &str {
        &self.vars[letter as usize].name
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    pub fn max_weight(&self) -> u64 {
        self.vars.iter().map(|v| v.weight).max().unwrap_or(1)
    }

    /// Builds a word from variable names.
    pub fn word(&self, names: &[&str]) -> Result<Word> {
        let mut letters = Vec::with_capacity(names.len());
        for name in names {
            let idx = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable((*name).to_string()))?;
            letters.push(idx);
        }
        Ok(Word::from_letters(letters))
    }

    /// Parses a whitespace-separated word, e.g. `"a.1.1 x"`. The empty
    /// string is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let names: Vec<&str> = s.split_whitespace().collect();
        self.word(&names)
    }

    pub fn names(&self, w: &Word) -> Result<Vec<String>> {
        self.check_word(w)?;
        Ok(w.letters().iter().map(|&l| self.name_of(l).to_string()).collect())
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.name_of(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        for &l in w.letters() {
            if l as usize >= self.vars.len() {
                return Err(Error::ForeignLetter { index: l, size: self.vars.len() });
            }
        }
        Ok(())
    }

    /// Weighted degree of a word; the empty word has degree 0.
    pub fn degree(&self, w: &Word) -> Result<u64> {
        self.check_word(w)?;
        Ok(self.degree_unchecked(w))
    }

    pub(crate) fn degree_unchecked(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&l| self.vars[l as usize].weight).sum()
    }

    /// Deglex comparison: weighted degree first, then the leftmost position
    /// where the precedence differs. Lower letter index means higher
    /// precedence, so the word with the smaller index at the first
    /// difference is the greater word.
    pub fn cmp_deglex(&self, u: &Word, v: &Word) -> Result<Ordering> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(self.cmp_deglex_unchecked(u, v))
    }

    pub(crate) fn cmp_deglex_unchecked(&self, u: &Word, v: &Word) -> Ordering {
        let du = self.degree_unchecked(u);
        let dv = self.degree_unchecked(v);
        match du.cmp(&dv) {
            Ordering::Equal => {}
            other => return other,
        }
        for (&a, &b) in u.letters().iter().zip(v.letters().iter()) {
            match a.cmp(&b) {
                Ordering::Equal => {}
                // smaller index = higher precedence = greater word
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        // Equal degree and one a prefix of the other forces equality, since
        // all weights are positive.
        u.len().cmp(&v.len())
    }
}

/// A word: a finite sequence of letter indices. The derived `Ord` is the
/// plain lexicographic order on index sequences and is used only for
/// deterministic storage; the algebraic order is [`Alphabet::cmp_deglex`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word { letters }
    }

    pub fn single(letter: u32) -> Self {
        Word { letters: vec![letter] }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The factor `w[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word { letters: self.letters[start..end].to_vec() }
    }

    /// Does `other` occur as a factor starting at `pos`?
    pub fn matches_at(&self, other: &Word, pos: usize) -> bool {
        pos + other.len() <= self.len()
            && self.letters[pos..pos + other.len()] == other.letters[..]
    }

    /// All start positions at which `other` occurs as a factor.
    pub fn occurrences_of(&self, other: &Word) -> Vec<usize> {
        if other.is_empty() || other.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - other.len())
            .filter(|&p| self.matches_at(other, p))
            .collect()
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        !other.occurrences_of(self).is_empty() || self.is_empty()
    }
}

// Display of a bare word falls back to indices; prefer Alphabet::display_word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Shorthand for an exact rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a canonical rational string `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let mk_err = || Error::Format(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
    let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
    if d.is_zero() {
        return Err(mk_err());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical string form of a rational: reduced, `p` when the denominator
/// is 1, otherwise `p/q` with positive `q`.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero exact
/// rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn monomial(word: Word, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        NcPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigRational)>>(iter: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&BigRational> {
        self.terms.get(w)
    }

    fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> NcPoly {
        if k.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// Computes `l * self * r` for words `l`, `r`.
    pub fn mul_words(&self, l: &Word, r: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (l.concat(w).concat(r), c.clone()))
                .collect(),
        }
    }

    /// The deglex-greatest term. Errors on the zero polynomial.
    pub fn leading_term<'a>(&'a self, a: &Alphabet) -> Result<(&'a Word, &'a BigRational)> {
        let mut best: Option<(&Word, &BigRational)> = None;
        for (w, c) in &self.terms {
            a.degree(w)?;
            best = match best {
                None => Some((w, c)),
                Some((bw, bc)) => {
                    if a.cmp_deglex_unchecked(w, bw) == Ordering::Greater {
                        Some((w, c))
                    } else {
                        Some((bw, bc))
                    }
                }
            };
        }
        best.ok_or(Error::ZeroLeadingMonomial)
    }

    pub fn leading_monomial<'a>(&'a self, a: &Alphabet) -> Result<&'a Word> {
        Ok(self.leading_term(a)?.0)
    }

    /// Scales so the leading coefficient is 1.
    pub fn make_monic(&self, a: &Alphabet) -> Result<NcPoly> {
        let (_, lc) = self.leading_term(a)?;
        let inv = BigRational::one() / lc.clone();
        Ok(self.scale(&inv))
    }

    pub fn display(&self, a: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut words: Vec<&Word> = self.terms.keys().collect();
        words.sort_by(|u, v| a.cmp_deglex_unchecked(v, u));
        let mut out = String::new();
        for (i, w) in words.iter().enumerate() {
            let c = &self.terms[*w];
            if i == 0 {
                if !c.is_one() {
                    out.push_str(&rational_string(c));
                    out.push(' ');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
                let abs = -c;
                if !abs.is_one() {
                    out.push_str(&rational_string(&abs));
                    out.push(' ');
                }
            } else {
                out.push_str(" + ");
                if !c.is_one() {
                    out.push_str(&rational_string(c));
                    out.push(' ');
                }
            }
            out.push_str(&a.display_word(w));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::unit_weights(vec!["a", "b", "c"]).unwrap()
    }

    #[test]
    fn degree_of_empty_word_is_zero() {
        let a = abc();
        assert_eq!(a.degree(&Word::empty()).unwrap(), 0);
    }

    #[test]
    fn degree_sums_unit_weights() {
        let a = Alphabet::unit_weights(vec!["t.1", "t.2"]).unwrap();
        let w = a.parse_word("t.1 t.2 t.1").unwrap();
        assert_eq!(a.degree(&w).unwrap(), 3);
    }

    #[test]
    fn degree_with_weight_three_letters() {
        // three generators of weight 3, as in a presentation with d = 3
        let a = Alphabet::new(vec![("x", 3), ("y", 3), ("e", 3)]).unwrap();
        let w = a.parse_word("x y e").unwrap();
        assert_eq!(a.degree(&w).unwrap(), 9);
    }

    #[test]
    fn degree_rejects_foreign_letters() {
        let a = abc();
        let w = Word::from_letters(vec![0, 7]);
        assert!(matches!(a.degree(&w), Err(Error::ForeignLetter { index: 7, .. })));
    }

    #[test]
    fn deglex_degree_decides_first() {
        let a = abc();
        let u = a.parse_word("b").unwrap();
        let v = a.parse_word("a b").unwrap();
        assert_eq!(a.cmp_deglex(&u, &v).unwrap(), Ordering::Less);
    }

    #[test]
    fn deglex_breaks_ties_by_precedence() {
        let a = abc();
        let u = a.parse_word("a b").unwrap();
        let v = a.parse_word("b a").unwrap();
        assert_eq!(a.cmp_deglex(&u, &v).unwrap(), Ordering::Greater);
    }

    #[test]
    fn deglex_superscripted_family_beats_x() {
        // precedence a.1.1 > x, both weight 1
        let a = Alphabet::unit_weights(vec!["a.1.1", "x"]).unwrap();
        let u = a.parse_word("a.1.1 x").unwrap();
        let v = a.parse_word("x a.1.1").unwrap();
        assert_eq!(a.cmp_deglex(&u, &v).unwrap(), Ordering::Greater);
    }

    #[test]
    fn deglex_mixed_weights_compare_by_degree() {
        let a = Alphabet::new(vec![("z", 2), ("a", 1)]).unwrap();
        let u = a.parse_word("z").unwrap();
        let v = a.parse_word("a a").unwrap();
        // equal degree; z has higher precedence
        assert_eq!(a.cmp_deglex(&u, &v).unwrap(), Ordering::Greater);
    }

    #[test]
    fn leading_monomial_of_commutator_relation() {
        let a = Alphabet::unit_weights(vec!["a.1.1", "x"]).unwrap();
        let ax = a.parse_word("a.1.1 x").unwrap();
        let xa = a.parse_word("x a.1.1").unwrap();
        let f = NcPoly::from_terms(vec![(ax.clone(), rat(1)), (xa, rat(-1))]);
        assert_eq!(f.leading_monomial(&a).unwrap(), &ax);
    }

    #[test]
    fn leading_monomial_of_constant_is_empty_word() {
        let a = abc();
        let f = NcPoly::monomial(Word::empty(), rat(5));
        assert_eq!(f.leading_monomial(&a).unwrap(), &Word::empty());
    }

    #[test]
    fn leading_monomial_with_image_tail() {
        // a.1 y - y t.1 with unit weights: equal degree, a.1 > y wins
        let a = Alphabet::unit_weights(vec!["a.1", "y", "t.1"]).unwrap();
        let ay = a.parse_word("a.1 y").unwrap();
        let yt = a.parse_word("y t.1").unwrap();
        let f = NcPoly::from_terms(vec![(ay.clone(), rat(1)), (yt, rat(-1))]);
        assert_eq!(f.leading_monomial(&a).unwrap(), &ay);
    }

    #[test]
    fn leading_monomial_of_zero_is_an_error() {
        let a = abc();
        assert!(matches!(NcPoly::zero().leading_monomial(&a), Err(Error::ZeroLeadingMonomial)));
    }

    #[test]
    fn alphabet_rejects_duplicates_and_zero_weights() {
        assert!(Alphabet::unit_weights(vec!["a", "a"]).is_err());
        assert!(Alphabet::new(vec![("a", 0)]).is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u32..3, 0..=max_len).prop_map(Word::from_letters)
    }

    fn arb_poly() -> impl Strategy<Value = NcPoly> {
        prop::collection::vec((arb_word(3), -3i64..=3), 0..4)
            .prop_map(|ts| NcPoly::from_terms(ts.into_iter().map(|(w, c)| (w, rat(c)))))
    }

    fn weighted() -> Alphabet {
        Alphabet::new(vec![("a", 2), ("b", 1), ("c", 1)]).unwrap()
    }

    proptest! {
        #[test]
        fn deglex_is_a_total_order(u in arb_word(5), v in arb_word(5), w in arb_word(5)) {
            let a = weighted();
            let uv = a.cmp_deglex(&u, &v).unwrap();
            let vu = a.cmp_deglex(&v, &u).unwrap();
            prop_assert_eq!(uv, vu.reverse());
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            // transitivity on the sampled triple
            if uv == Ordering::Less && a.cmp_deglex(&v, &w).unwrap() == Ordering::Less {
                prop_assert_eq!(a.cmp_deglex(&u, &w).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn deglex_is_multiplicative(l in arb_word(3), r in arb_word(3), u in arb_word(4), v in arb_word(4)) {
            let a = weighted();
            if a.cmp_deglex(&u, &v).unwrap() == Ordering::Less {
                let lur = l.concat(&u).concat(&r);
                let lvr = l.concat(&v).concat(&r);
                prop_assert_eq!(a.cmp_deglex(&lur, &lvr).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn deglex_is_degree_compatible(u in arb_word(5), v in arb_word(5)) {
            let a = weighted();
            if a.degree(&u).unwrap() < a.degree(&v).unwrap() {
                prop_assert_eq!(a.cmp_deglex(&u, &v).unwrap(), Ordering::Less);
            }
        }

        #[test]
        fn poly_ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.sub(&f), NcPoly::zero());
        }

        #[test]
        fn lm_of_product_is_product_of_lms(f in arb_poly(), g in arb_poly()) {
            let a = weighted();
            if !f.is_zero() && !g.is_zero() {
                let fg = f.mul(&g);
                prop_assert!(!fg.is_zero());
                let expect = f
                    .leading_monomial(&a)
                    .unwrap()
                    .concat(g.leading_monomial(&a).unwrap());
                prop_assert_eq!(fg.leading_monomial(&a).unwrap(), &expect);
            }
        }
    }
}
