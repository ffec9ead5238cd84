//! Degree-truncated Buchberger completion for two-sided ideals of the free
//! algebra, minimal basis maintenance, and normal-word counting against a
//! subword-free obstruction set.
//!
//! With a degree-compatible ordering, an s-pair whose composed word exceeds
//! the bound cannot contribute a new leading monomial below it, so
//! processing pairs in ascending composed degree and cutting at the bound
//! reproduces the leading monomials of the full minimal basis up to that
//! degree.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, NcPoly, Word};

/// How two leading monomials meet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Overlap {
    /// A proper suffix of the left word of length `len` equals a prefix of
    /// the right word (`1 <= len < min(|u|, |v|)`).
    SuffixPrefix { len: usize },
    /// The right word occurs inside the left word at `offset`.
    Inclusion { offset: usize },
}

/// Every proper suffix-of-`u` = prefix-of-`v` coincidence plus, when `v` is
/// strictly shorter, every occurrence of `v` inside `u`.
pub fn find_overlaps(u: &Word, v: &Word) -> Vec<Overlap> {
    let mut out = Vec::new();
    if u.is_empty() || v.is_empty() {
        return out;
    }
    for len in 1..u.len().min(v.len()) {
        if u.letters()[u.len() - len..] == v.letters()[..len] {
            out.push(Overlap::SuffixPrefix { len });
        }
    }
    if v.len() < u.len() {
        for offset in u.occurrences_of(v) {
            out.push(Overlap::Inclusion { offset });
        }
    }
    out
}

/// The word on which the two leading monomials meet.
pub fn composed_word(u: &Word, v: &Word, overlap: &Overlap) -> Word {
    match overlap {
        Overlap::SuffixPrefix { len } => u.concat(&v.slice(*len, v.len())),
        Overlap::Inclusion { .. } => u.clone(),
    }
}

/// The s-polynomial of two polynomials at a given overlap of their leading
/// monomials: both sides are aligned on the composed word, scaled to
/// leading coefficient one, and subtracted so the composed word cancels.
pub fn s_polynomial(
    left: &NcPoly,
    right: &NcPoly,
    overlap: &Overlap,
    a: &Alphabet,
) -> Result<NcPoly> {
    let (lu, lc) = left.leading_term(a)?;
    let (rv, rc) = right.leading_term(a)?;
    let valid = match overlap {
        Overlap::SuffixPrefix { len } => {
            *len >= 1
                && *len < lu.len()
                && *len < rv.len()
                && lu.letters()[lu.len() - len..] == rv.letters()[..*len]
        }
        Overlap::Inclusion { offset } => lu.matches_at(rv, *offset),
    };
    if !valid {
        return Err(Error::InvalidWitness(format!(
            "{overlap:?} does not align {} with {}",
            a.display_word(lu),
            a.display_word(rv)
        )));
    }
    let left_monic = left.scale(&(num_rational::BigRational::one() / lc.clone()));
    let right_monic = right.scale(&(num_rational::BigRational::one() / rc.clone()));
    Ok(match overlap {
        Overlap::SuffixPrefix { len } => {
            let tail = rv.slice(*len, rv.len());
            let head = lu.slice(0, lu.len() - len);
            left_monic
                .mul_words(&Word::empty(), &tail)
                .sub(&right_monic.mul_words(&head, &Word::empty()))
        }
        Overlap::Inclusion { offset } => {
            let head = lu.slice(0, *offset);
            let tail = lu.slice(offset + rv.len(), lu.len());
            left_monic.sub(&right_monic.mul_words(&head, &tail))
        }
    })
}

/// Full reduction of `f` modulo `basis`: repeatedly rewrites the greatest
/// reducible term at its leftmost reducible occurrence until no word of the
/// support contains a basis leading monomial as a factor.
pub fn normal_form(f: &NcPoly, basis: &[NcPoly], a: &Alphabet) -> Result<NcPoly> {
    let mut leads = Vec::with_capacity(basis.len());
    for (i, g) in basis.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroRelation(i));
        }
        let (lm, lc) = g.leading_term(a)?;
        leads.push((lm.clone(), lc.clone()));
    }
    let mut current = f.clone();
    loop {
        // the deglex-greatest reducible term, reduced at its leftmost match
        let mut target: Option<(Word, usize, usize)> = None;
        for (w, _) in current.terms() {
            if target.as_ref().is_some_and(|(bw, _, _)| {
                a.cmp_deglex_unchecked(w, bw) != std::cmp::Ordering::Greater
            }) {
                continue;
            }
            let mut hit: Option<(usize, usize)> = None;
            for pos in 0..=w.len() {
                for (gi, (lm, _)) in leads.iter().enumerate() {
                    if w.matches_at(lm, pos) {
                        hit = Some((gi, pos));
                        break;
                    }
                }
                if hit.is_some() {
                    break;
                }
            }
            if let Some((gi, pos)) = hit {
                target = Some((w.clone(), gi, pos));
            }
        }
        let Some((w, gi, pos)) = target else {
            return Ok(current);
        };
        let coeff = current.coeff(&w).expect("term came from the support").clone();
        let (lm, lc) = &leads[gi];
        let head = w.slice(0, pos);
        let tail = w.slice(pos + lm.len(), w.len());
        let factor = coeff / lc.clone();
        current = current.sub(&basis[gi].mul_words(&head, &tail).scale(&factor));
    }
}

/// A subword-free set of words with a multi-pattern factor automaton for
/// linear-time factor queries.
#[derive(Debug, Clone)]
pub struct ObstructionSet {
    words: Vec<Word>,
    automaton: FactorAutomaton,
}

impl ObstructionSet {
    /// Builds the set, rejecting empty words and factor pairs.
    pub fn new<I: IntoIterator<Item = Word>>(words: I, a: &Alphabet) -> Result<Self> {
        let set: BTreeSet<Word> = words.into_iter().collect();
        for w in &set {
            if w.is_empty() {
                return Err(Error::InvalidInput("the empty word cannot be an obstruction".into()));
            }
            a.degree(w)?;
        }
        let words: Vec<Word> = set.into_iter().collect();
        for u in &words {
            for v in &words {
                if u != v && u.is_factor_of(v) {
                    return Err(Error::NotSubwordFree {
                        shorter: a.names(u)?,
                        longer: a.names(v)?,
                    });
                }
            }
        }
        let automaton = FactorAutomaton::build(&words, a.len());
        Ok(ObstructionSet { words, automaton })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Does `w` contain some obstruction as a contiguous factor?
    pub fn contains_factor(&self, w: &Word) -> bool {
        self.automaton.scan_hits(w)
    }

    /// All `(start, end)` spans at which an obstruction occurs in `w`.
    pub fn occurrences(&self, w: &Word) -> Vec<(usize, usize)> {
        self.automaton.occurrences(w)
    }

    pub(crate) fn automaton(&self) -> &FactorAutomaton {
        &self.automaton
    }

    /// Obstructions restricted to degree `<= bound`.
    pub fn truncated(&self, a: &Alphabet, bound: u64) -> Result<ObstructionSet> {
        let kept: Vec<Word> = self
            .words
            .iter()
            .filter(|w| a.degree_unchecked(w) <= bound)
            .cloned()
            .collect();
        ObstructionSet::new(kept, a)
    }
}

/// Goto/fail automaton over the pattern set with dense transitions. Since
/// the pattern set is subword-free, at most one pattern ends at any text
/// position, recorded as `match_len`.
#[derive(Debug, Clone)]
pub(crate) struct FactorAutomaton {
    next: Vec<Vec<u32>>,
    dead: Vec<bool>,
    match_len: Vec<usize>,
}

impl FactorAutomaton {
    fn build(patterns: &[Word], alphabet_size: usize) -> Self {
        // trie
        let mut next_in_trie: Vec<Vec<Option<u32>>> = vec![vec![None; alphabet_size]];
        let mut terminal_len: Vec<usize> = vec![0];
        for p in patterns {
            let mut state = 0usize;
            for &l in p.letters() {
                state = match next_in_trie[state][l as usize] {
                    Some(s) => s as usize,
                    None => {
                        next_in_trie.push(vec![None; alphabet_size]);
                        terminal_len.push(0);
                        let s = next_in_trie.len() - 1;
                        next_in_trie[state][l as usize] = Some(s as u32);
                        s
                    }
                };
            }
            terminal_len[state] = p.len();
        }
        // BFS for failure links and the dense goto function
        let states = next_in_trie.len();
        let mut fail = vec![0u32; states];
        let mut next = vec![vec![0u32; alphabet_size]; states];
        let mut match_len = terminal_len.clone();
        let mut dead: Vec<bool> = terminal_len.iter().map(|&l| l > 0).collect();
        let mut queue = std::collections::VecDeque::new();
        for l in 0..alphabet_size {
            if let Some(s) = next_in_trie[0][l] {
                next[0][l] = s;
                queue.push_back(s as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            let f = fail[s] as usize;
            if dead[f] {
                dead[s] = true;
            }
            if match_len[s] == 0 {
                match_len[s] = match_len[f];
            }
            for l in 0..alphabet_size {
                match next_in_trie[s][l] {
                    Some(t) => {
                        fail[t as usize] = next[f][l];
                        next[s][l] = t;
                        queue.push_back(t as usize);
                    }
                    None => {
                        next[s][l] = next[f][l];
                    }
                }
            }
        }
        FactorAutomaton { next, dead, match_len }
    }

    fn scan_hits(&self, w: &Word) -> bool {
        let mut state = 0usize;
        for &l in w.letters() {
            state = self.next[state][l as usize] as usize;
            if self.dead[state] {
                return true;
            }
        }
        false
    }

    fn occurrences(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut state = 0usize;
        for (i, &l) in w.letters().iter().enumerate() {
            state = self.next[state][l as usize] as usize;
            let len = self.match_len[state];
            if len > 0 {
                out.push((i + 1 - len, i + 1));
            }
        }
        out
    }

    pub(crate) fn states(&self) -> usize {
        self.next.len()
    }

    pub(crate) fn step(&self, state: usize, letter: u32) -> usize {
        self.next[state][letter as usize] as usize
    }

    pub(crate) fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }
}

/// A minimal monic basis truncated at leading-monomial degree `bound`:
/// every s-polynomial of composed degree within the bound reduces to zero
/// modulo the elements.
#[derive(Debug, Clone)]
pub struct TruncatedGb {
    elements: Vec<NcPoly>,
    bound: u64,
}

impl TruncatedGb {
    pub fn elements(&self) -> &[NcPoly] {
        &self.elements
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leads(&self, a: &Alphabet) -> Result<Vec<Word>> {
        self.elements.iter().map(|g| Ok(g.leading_monomial(a)?.clone())).collect()
    }

    pub fn lead_set(&self, a: &Alphabet) -> Result<BTreeSet<Word>> {
        Ok(self.leads(a)?.into_iter().collect())
    }

    pub fn obstruction_set(&self, a: &Alphabet) -> Result<ObstructionSet> {
        ObstructionSet::new(self.leads(a)?, a)
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PendingPair {
    degree: u64,
    composed: Word,
    left: usize,
    right: usize,
    overlap: Overlap,
}

struct Completion<'a> {
    alphabet: &'a Alphabet,
    bound: u64,
    elements: Vec<NcPoly>,
    alive: Vec<bool>,
    queue: BinaryHeap<Reverse<PendingPair>>,
}

impl<'a> Completion<'a> {
    fn alive_elements(&self) -> Vec<NcPoly> {
        self.elements
            .iter()
            .zip(&self.alive)
            .filter(|(_, &alive)| alive)
            .map(|(g, _)| g.clone())
            .collect()
    }

    /// Reduces `h` against the live basis and, when nonzero, installs it:
    /// longer live leads containing the new lead are evicted and reprocessed
    /// so the lead set stays subword-free.
    fn add(&mut self, h: &NcPoly) -> Result<()> {
        let mut work = vec![h.clone()];
        while let Some(cand) = work.pop() {
            let reduced = normal_form(&cand, &self.alive_elements(), self.alphabet)?;
            if reduced.is_zero() {
                continue;
            }
            let monic = reduced.make_monic(self.alphabet)?;
            let lead = monic.leading_monomial(self.alphabet)?.clone();
            for i in 0..self.elements.len() {
                if !self.alive[i] {
                    continue;
                }
                let other = self.elements[i].leading_monomial(self.alphabet)?;
                if lead.is_factor_of(other) {
                    self.alive[i] = false;
                    work.push(self.elements[i].clone());
                }
            }
            let idx = self.elements.len();
            self.elements.push(monic);
            self.alive.push(true);
            self.enqueue_pairs(idx)?;
        }
        Ok(())
    }

    fn enqueue_pairs(&mut self, idx: usize) -> Result<()> {
        let lead_new = self.elements[idx].leading_monomial(self.alphabet)?.clone();
        for j in 0..self.elements.len() {
            if !self.alive[j] {
                continue;
            }
            let lead_j = self.elements[j].leading_monomial(self.alphabet)?.clone();
            for overlap in find_overlaps(&lead_new, &lead_j) {
                self.push_pair(idx, j, &lead_new, &lead_j, overlap);
            }
            if j != idx {
                for overlap in find_overlaps(&lead_j, &lead_new) {
                    self.push_pair(j, idx, &lead_j, &lead_new, overlap);
                }
            }
        }
        Ok(())
    }

    fn push_pair(&mut self, left: usize, right: usize, lu: &Word, rv: &Word, overlap: Overlap) {
        let composed = composed_word(lu, rv, &overlap);
        let degree = self.alphabet.degree_unchecked(&composed);
        if degree <= self.bound {
            self.queue.push(Reverse(PendingPair { degree, composed, left, right, overlap }));
        }
    }
}

/// Buchberger completion restricted to leading-monomial degree `<= bound`,
/// with s-pairs processed in ascending composed degree. The result is the
/// reduced minimal basis: monic elements, pairwise factor-free leads, and
/// fully reduced tails.
pub fn buchberger_truncated(
    relations: &[NcPoly],
    a: &Alphabet,
    bound: u64,
) -> Result<TruncatedGb> {
    for (i, r) in relations.iter().enumerate() {
        if r.is_zero() {
            return Err(Error::ZeroRelation(i));
        }
        r.leading_term(a)?;
    }
    let mut sorted: Vec<NcPoly> = relations.to_vec();
    sorted.sort_by(|f, g| {
        let lf = f.leading_monomial(a).expect("nonzero");
        let lg = g.leading_monomial(a).expect("nonzero");
        a.cmp_deglex_unchecked(lf, lg).then_with(|| lf.cmp(lg))
    });

    let mut state = Completion {
        alphabet: a,
        bound,
        elements: Vec::new(),
        alive: Vec::new(),
        queue: BinaryHeap::new(),
    };
    for r in &sorted {
        state.add(r)?;
    }
    while let Some(Reverse(pair)) = state.queue.pop() {
        if pair.degree > bound {
            break;
        }
        if !state.alive[pair.left] || !state.alive[pair.right] {
            continue;
        }
        let s = s_polynomial(
            &state.elements[pair.left],
            &state.elements[pair.right],
            &pair.overlap,
            a,
        )?;
        if !s.is_zero() {
            state.add(&s)?;
        }
    }

    // final tail interreduction; leads are already pairwise factor-free
    let mut elements = state.alive_elements();
    loop {
        let mut changed = false;
        for i in 0..elements.len() {
            let others: Vec<NcPoly> = elements
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let reduced = normal_form(&elements[i], &others, a)?;
            if reduced != elements[i] {
                elements[i] = reduced.make_monic(a)?;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut kept: Vec<NcPoly> = elements
        .into_iter()
        .filter(|g| {
            let lm = g.leading_monomial(a).expect("nonzero");
            a.degree_unchecked(lm) <= bound
        })
        .collect();
    kept.sort_by(|f, g| {
        let lf = f.leading_monomial(a).expect("nonzero");
        let lg = g.leading_monomial(a).expect("nonzero");
        a.cmp_deglex_unchecked(lf, lg).then_with(|| lf.cmp(lg))
    });
    Ok(TruncatedGb { elements: kept, bound })
}

/// Counts, for every degree `0..=bound`, the words containing no
/// obstruction as a factor, by walking the factor automaton over weighted
/// letters.
pub fn normal_word_counts(
    obs: &ObstructionSet,
    a: &Alphabet,
    bound: u64,
) -> Result<Vec<BigUint>> {
    for w in obs.words() {
        a.degree(w)?;
    }
    let automaton = obs.automaton();
    let states = automaton.states();
    let mut table: Vec<Vec<BigUint>> =
        vec![vec![BigUint::zero(); states]; bound as usize + 1];
    if automaton.is_dead(0) {
        return Ok(vec![BigUint::zero(); bound as usize + 1]);
    }
    table[0][0] = BigUint::one();
    for deg in 0..=bound {
        for state in 0..states {
            if table[deg as usize][state].is_zero() {
                continue;
            }
            let count = table[deg as usize][state].clone();
            for letter in 0..a.len() as u32 {
                let nd = deg + a.weight(letter);
                if nd > bound {
                    continue;
                }
                let ns = automaton.step(state, letter);
                if automaton.is_dead(ns) {
                    continue;
                }
                table[nd as usize][ns] += &count;
            }
        }
    }
    Ok(table
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect())
}
