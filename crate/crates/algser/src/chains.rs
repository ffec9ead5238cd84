//! Chain languages of a monomial algebra and the Tor dimensions they span.
//!
//! Membership is decided by the exact set-algebra predicates on
//! `L = X* L_1 X*`:
//!
//! ```text
//! L_{2t}   = (X+ L^t ∩ L^t X+) \ (X+ L^t X+ ∪ L^{t+1})
//! L_{2t-1} = (X+ L^{t-1} X+ ∩ L^t) \ (X+ L^t ∪ L^t X+)
//! ```
//!
//! with `L^0 = {1}`. Two enumerators are provided: a guarded brute force
//! over all words of bounded degree (the oracle), and a production
//! enumerator that generates overlap-chained obstruction coverings and
//! verifies each candidate with the same predicates.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Word};
use crate::groebner::ObstructionSet;
use crate::langkit::LanguageSlice;
use crate::series::RatSeries;

/// Is `w` in `L = X* L_1 X*`, i.e. does some obstruction occur in `w` as a
/// contiguous factor?
pub fn factor_membership(w: &Word, obs: &ObstructionSet) -> bool {
    obs.contains_factor(w)
}

/// Split table for one fixed word: `pow[t][i][j]` says whether the factor
/// `w[i..j]` is a product of `t` words of `L`.
struct SplitTable {
    len: usize,
    pow: Vec<Vec<Vec<bool>>>,
}

impl SplitTable {
    fn new(w: &Word, obs: &ObstructionSet, max_power: usize) -> Self {
        let len = w.len();
        let occ = obs.occurrences(w);
        let mut in_l = vec![vec![false; len + 1]; len + 1];
        for i in 0..=len {
            for j in i..=len {
                in_l[i][j] = occ.iter().any(|&(s, e)| i <= s && e <= j);
            }
        }
        let mut pow = vec![vec![vec![false; len + 1]; len + 1]; max_power + 1];
        for i in 0..=len {
            pow[0][i][i] = true;
        }
        for t in 1..=max_power {
            for i in 0..=len {
                for j in i..=len {
                    pow[t][i][j] =
                        (i..j).any(|m| pow[t - 1][i][m] && in_l[m][j]);
                }
            }
        }
        SplitTable { len, in_l, pow }
    }

    fn full(&self, t: usize) -> bool {
        self.pow[t][0][self.len]
    }

    /// `w ∈ X+ L^t`: a nonempty prefix removed, the rest splits.
    fn after_prefix(&self, t: usize) -> bool {
        (1..=self.len).any(|a| self.pow[t][a][self.len])
    }

    /// `w ∈ L^t X+`.
    fn before_suffix(&self, t: usize) -> bool {
        (0..self.len).any(|b| self.pow[t][0][b])
    }

    /// `w ∈ X+ L^t X+`.
    fn strictly_inside(&self, t: usize) -> bool {
        (1..self.len).any(|a| (a..self.len).any(|b| self.pow[t][a][b]))
    }
}

fn max_power_needed(t: usize) -> usize {
    if t % 2 == 0 {
        t / 2 + 1
    } else {
        t.div_ceil(2)
    }
}

fn word_in_chain_language(w: &Word, obs: &ObstructionSet, t: usize) -> bool {
    let table = SplitTable::new(w, obs, max_power_needed(t));
    if t % 2 == 0 {
        let s = t / 2;
        table.after_prefix(s)
            && table.before_suffix(s)
            && !table.strictly_inside(s)
            && !table.full(s + 1)
    } else {
        let s = t.div_ceil(2);
        table.strictly_inside(s - 1)
            && table.full(s)
            && !table.after_prefix(s)
            && !table.before_suffix(s)
    }
}

/// Is `w` a product of `t` words each containing an obstruction? `L^0`
/// contains exactly the empty word.
pub fn power_membership(w: &Word, obs: &ObstructionSet, t: usize) -> bool {
    SplitTable::new(w, obs, t).full(t)
}

/// Size limits for the brute-force enumerator.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationGuard {
    pub max_alphabet: usize,
    pub max_degree: u64,
    pub max_chain: usize,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        EnumerationGuard { max_alphabet: 9, max_degree: 6, max_chain: 4 }
    }
}

impl EnumerationGuard {
    pub fn unlimited() -> Self {
        EnumerationGuard { max_alphabet: usize::MAX, max_degree: u64::MAX, max_chain: usize::MAX }
    }

    fn check(&self, a: &Alphabet, t: usize, bound: u64) -> Result<()> {
        if a.len() > self.max_alphabet {
            return Err(Error::Guard(format!(
                "alphabet size {} exceeds {}",
                a.len(),
                self.max_alphabet
            )));
        }
        if bound > self.max_degree {
            return Err(Error::Guard(format!("degree bound {bound} exceeds {}", self.max_degree)));
        }
        if t > self.max_chain {
            return Err(Error::Guard(format!("chain index {t} exceeds {}", self.max_chain)));
        }
        Ok(())
    }
}

/// Brute-force oracle: enumerates every word of degree `<= bound` and keeps
/// those satisfying the chain predicates for `t`.
pub fn govorov_chain_language(
    obs: &ObstructionSet,
    a: &Alphabet,
    t: usize,
    bound: u64,
    guard: &EnumerationGuard,
) -> Result<LanguageSlice> {
    if t == 0 {
        return Err(Error::InvalidInput("chain languages are indexed from t = 1".into()));
    }
    guard.check(a, t, bound)?;
    let mut slice = LanguageSlice::new(bound);
    let mut letters: Vec<u32> = Vec::new();
    fn rec(
        a: &Alphabet,
        obs: &ObstructionSet,
        t: usize,
        bound: u64,
        degree: u64,
        letters: &mut Vec<u32>,
        slice: &mut LanguageSlice,
    ) {
        let w = Word::from_letters(letters.clone());
        if word_in_chain_language(&w, obs, t) {
            slice.insert(degree, w);
        }
        for l in 0..a.len() as u32 {
            let nd = degree + a.weight(l);
            if nd <= bound {
                letters.push(l);
                rec(a, obs, t, bound, nd, letters, slice);
                letters.pop();
            }
        }
    }
    rec(a, obs, t, bound, 0, &mut letters, &mut slice);
    Ok(slice)
}

/// Candidate coverings: `t` obstruction occurrences with strictly
/// increasing starts and ends, consecutive occurrences overlapping in at
/// least one letter, the first anchored at the left end and the last at the
/// right end.
fn chain_candidates(obs: &ObstructionSet, a: &Alphabet, t: usize, bound: u64) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    if t == 0 {
        return out;
    }
    let words = obs.words();
    struct Frame<'a> {
        obs_words: &'a [Word],
        a: &'a Alphabet,
        bound: u64,
        t: usize,
    }
    fn extend(
        f: &Frame,
        current: &mut Vec<u32>,
        degree: u64,
        last_len: usize,
        placed: usize,
        out: &mut BTreeSet<Word>,
    ) {
        if placed == f.t {
            out.insert(Word::from_letters(current.clone()));
            return;
        }
        for o in f.obs_words {
            let max_overlap = last_len.min(o.len()).saturating_sub(1);
            for j in 1..=max_overlap {
                let start = current.len() - j;
                if current[start..] != o.letters()[..j] {
                    continue;
                }
                let added = &o.letters()[j..];
                let added_degree: u64 = added.iter().map(|&l| f.a.weight(l)).sum();
                if degree + added_degree > f.bound {
                    continue;
                }
                current.extend_from_slice(added);
                extend(f, current, degree + added_degree, o.len(), placed + 1, out);
                current.truncate(start + j);
            }
        }
    }
    let frame = Frame { obs_words: words, a, bound, t };
    for o in words {
        let degree = a.degree_unchecked(o);
        if degree > bound {
            continue;
        }
        let mut current = o.letters().to_vec();
        extend(&frame, &mut current, degree, o.len(), 1, &mut out);
    }
    out
}

/// Production enumerator for the chain language `L_t` up to `bound`:
/// overlap-chained candidates filtered through the exact predicates.
pub fn chain_language(
    obs: &ObstructionSet,
    a: &Alphabet,
    t: usize,
    bound: u64,
) -> Result<LanguageSlice> {
    if t == 0 {
        return Err(Error::InvalidInput("chain languages are indexed from t = 1".into()));
    }
    let mut slice = LanguageSlice::new(bound);
    for w in chain_candidates(obs, a, t, bound) {
        if word_in_chain_language(&w, obs, t) {
            let degree = a.degree(&w)?;
            slice.insert(degree, w);
        }
    }
    Ok(slice)
}

/// Chain languages `L_0 .. L_max_t` with their dimension vectors; the slice
/// at index `t` spans `Tor_{t+1}` of the monomial algebra.
#[derive(Debug, Clone)]
pub struct ChainTable {
    bound: u64,
    slices: Vec<LanguageSlice>,
}

impl ChainTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn max_t(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, t: usize) -> &LanguageSlice {
        &self.slices[t]
    }

    pub fn slices(&self) -> &[LanguageSlice] {
        &self.slices
    }

    /// Dimension matrix: entry `[t][k]` is `dim Tor_{t+1}` in degree `k`.
    pub fn dims(&self) -> Vec<Vec<u64>> {
        self.slices.iter().map(|s| s.counts()).collect()
    }

    pub fn tor_series(&self, t: usize) -> RatSeries {
        self.slices[t].to_series()
    }

    /// `1 - H_{L_0} + H_{L_1} - ...` over all stored chain languages.
    pub fn euler_alternating_sum(&self) -> RatSeries {
        let mut acc = RatSeries::one(self.bound);
        for (t, s) in self.slices.iter().enumerate() {
            let series = s.to_series();
            acc = if t % 2 == 0 { acc.sub(&series) } else { acc.add(&series) };
        }
        acc
    }
}

/// Assembles `L_0 = X` (the generators at their weights) and the chain
/// languages `L_1 .. L_max_t` via the production enumerator.
pub fn tor_table(
    obs: &ObstructionSet,
    a: &Alphabet,
    max_t: usize,
    bound: u64,
) -> Result<ChainTable> {
    let mut slices = Vec::with_capacity(max_t + 1);
    let mut generators = LanguageSlice::new(bound);
    for l in 0..a.len() as u32 {
        let w = a.weight(l);
        if w <= bound {
            generators.insert(w, Word::single(l));
        }
    }
    slices.push(generators);
    for t in 1..=max_t {
        slices.push(chain_language(obs, a, t, bound)?);
    }
    Ok(ChainTable { bound, slices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_letter() -> Alphabet {
        Alphabet::unit_weights(vec!["x"]).unwrap()
    }

    fn square_obs(a: &Alphabet) -> ObstructionSet {
        ObstructionSet::new(vec![a.parse_word("x x").unwrap()], a).unwrap()
    }

    #[test]
    fn factor_membership_basics() {
        let a = Alphabet::unit_weights(vec!["x", "y"]).unwrap();
        let obs = ObstructionSet::new(vec![a.parse_word("x x").unwrap()], &a).unwrap();
        assert!(!factor_membership(&a.parse_word("x y x").unwrap(), &obs));
        assert!(factor_membership(&a.parse_word("x x x").unwrap(), &obs));
    }

    #[test]
    fn power_membership_splits() {
        let a = one_letter();
        let obs = square_obs(&a);
        assert!(power_membership(&a.parse_word("x x x x").unwrap(), &obs, 2));
        assert!(!power_membership(&a.parse_word("x x x").unwrap(), &obs, 2));
        assert!(power_membership(&Word::empty(), &obs, 0));
        assert!(!power_membership(&a.parse_word("x").unwrap(), &obs, 0));
    }

    #[test]
    fn single_letter_square_chain_ladder() {
        let a = one_letter();
        let obs = square_obs(&a);
        let guard = EnumerationGuard::default();
        for t in 1..=4usize {
            let slice = govorov_chain_language(&obs, &a, t, 6, &guard).unwrap();
            let expect_len = t + 1;
            assert_eq!(slice.total(), 1, "t={t}");
            assert_eq!(slice.count(expect_len as u64), 1, "t={t}");
        }
    }

    #[test]
    fn adjacent_occurrences_are_not_chains() {
        let a = Alphabet::unit_weights(vec!["a", "b"]).unwrap();
        let obs = ObstructionSet::new(vec![a.parse_word("a b").unwrap()], &a).unwrap();
        let abab = a.parse_word("a b a b").unwrap();
        assert!(power_membership(&abab, &obs, 2));
        assert!(!word_in_chain_language(&abab, &obs, 2));
        let guard = EnumerationGuard::default();
        let l2 = govorov_chain_language(&obs, &a, 2, 6, &guard).unwrap();
        assert!(l2.is_empty());
        assert!(chain_language(&obs, &a, 2, 6).unwrap().is_empty());
    }

    #[test]
    fn first_chain_language_reproduces_the_obstructions() {
        let a = Alphabet::unit_weights(vec!["x", "y"]).unwrap();
        let obs = ObstructionSet::new(
            vec![a.parse_word("x x").unwrap(), a.parse_word("y y x").unwrap()],
            &a,
        )
        .unwrap();
        let guard = EnumerationGuard::default();
        let l1 = govorov_chain_language(&obs, &a, 1, 5, &guard).unwrap();
        let expect: BTreeSet<Word> = obs.words().iter().cloned().collect();
        assert_eq!(l1.word_set(), expect);
        assert_eq!(chain_language(&obs, &a, 1, 5).unwrap().word_set(), expect);
    }

    #[test]
    fn production_enumerator_matches_oracle_on_squares() {
        let a = one_letter();
        let obs = square_obs(&a);
        let guard = EnumerationGuard::default();
        for t in 1..=4usize {
            let fast = chain_language(&obs, &a, t, 6).unwrap();
            let slow = govorov_chain_language(&obs, &a, t, 6, &guard).unwrap();
            assert_eq!(fast.word_set(), slow.word_set(), "t={t}");
        }
    }

    #[test]
    fn oracle_guard_rejects_large_runs() {
        let a = Alphabet::unit_weights((0..12).map(|i| format!("g{i}")).collect()).unwrap();
        let obs = ObstructionSet::new(vec![a.parse_word("g0 g0").unwrap()], &a).unwrap();
        let res = govorov_chain_language(&obs, &a, 2, 4, &EnumerationGuard::default());
        assert!(matches!(res, Err(Error::Guard(_))));
    }

    #[test]
    fn overlapping_pair_forms_a_chain() {
        // obstructions {ab, bc}: the word abc is the unique 2-chain
        let a = Alphabet::unit_weights(vec!["a", "b", "c"]).unwrap();
        let obs = ObstructionSet::new(
            vec![a.parse_word("a b").unwrap(), a.parse_word("b c").unwrap()],
            &a,
        )
        .unwrap();
        let l2 = chain_language(&obs, &a, 2, 6).unwrap();
        assert_eq!(l2.word_set(), BTreeSet::from([a.parse_word("a b c").unwrap()]));
        let oracle = govorov_chain_language(&obs, &a, 2, 6, &EnumerationGuard::default()).unwrap();
        assert_eq!(oracle.word_set(), l2.word_set());
        assert!(chain_language(&obs, &a, 3, 6).unwrap().is_empty());
    }

    #[test]
    fn tor_table_of_free_algebra() {
        let a = Alphabet::unit_weights(vec!["x", "y"]).unwrap();
        let obs = ObstructionSet::new(Vec::new(), &a).unwrap();
        let table = tor_table(&obs, &a, 3, 4).unwrap();
        assert_eq!(table.slice(0).counts(), vec![0, 2, 0, 0, 0]);
        for t in 1..=3 {
            assert!(table.slice(t).is_empty(), "t={t}");
        }
    }

    #[test]
    fn tor_table_single_relation_unit_dims() {
        let a = one_letter();
        let obs = square_obs(&a);
        let table = tor_table(&obs, &a, 4, 6).unwrap();
        for t in 1..=4usize {
            let mut expect = vec![0u64; 7];
            expect[t + 1] = 1;
            assert_eq!(table.slice(t).counts(), expect, "t={t}");
        }
        // a word is a chain for at most one t
        for t in 1..table.slices().len() {
            for u in 1..t {
                let wt = table.slice(t).word_set();
                let wu = table.slice(u).word_set();
                assert!(wt.is_disjoint(&wu));
            }
        }
    }

    #[test]
    fn euler_identity_single_relation() {
        // H_A = 1 + z for one letter modulo xx; alternating chain sum
        // inverts it exactly
        let a = one_letter();
        let obs = square_obs(&a);
        let bound = 6;
        let table = tor_table(&obs, &a, 5, bound).unwrap();
        let h = RatSeries::from_counts(
            &crate::groebner::normal_word_counts(&obs, &a, bound).unwrap(),
        );
        let product = h.mul(&table.euler_alternating_sum());
        assert_eq!(product, RatSeries::one(bound));
    }
}
