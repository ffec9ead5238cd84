//! The concrete languages of the construction: balanced-bracket words,
//! their `(D_n e)^*` closure, homomorphic images, and user-supplied
//! unambiguous grammar descriptions with a chart-parsing membership check.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Word};
use crate::series::RatSeries;

/// A finite window onto a language: for every degree `k <= bound`, the set
/// of its words of that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSlice {
    bound: u64,
    by_degree: BTreeMap<u64, BTreeSet<Word>>,
}

impl LanguageSlice {
    pub fn new(bound: u64) -> Self {
        LanguageSlice { bound, by_degree: BTreeMap::new() }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn insert(&mut self, degree: u64, word: Word) {
        debug_assert!(degree <= self.bound);
        self.by_degree.entry(degree).or_default().insert(word);
    }

    pub fn contains(&self, degree: u64, word: &Word) -> bool {
        self.by_degree.get(&degree).is_some_and(|s| s.contains(word))
    }

    pub fn count(&self, degree: u64) -> usize {
        self.by_degree.get(&degree).map_or(0, |s| s.len())
    }

    /// Word counts for every degree `0..=bound`.
    pub fn counts(&self) -> Vec<u64> {
        (0..=self.bound).map(|k| self.count(k) as u64).collect()
    }

    pub fn words_of_degree(&self, degree: u64) -> impl Iterator<Item = &Word> {
        self.by_degree.get(&degree).into_iter().flatten()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Word)> {
        self.by_degree.iter().flat_map(|(d, set)| set.iter().map(move |w| (*d, w)))
    }

    pub fn total(&self) -> usize {
        self.by_degree.values().map(|s| s.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    pub fn word_set(&self) -> BTreeSet<Word> {
        self.iter().map(|(_, w)| w.clone()).collect()
    }

    pub fn to_series(&self) -> RatSeries {
        RatSeries::from_coeffs(
            self.counts().iter().map(|&c| crate::freealg::rat(c as i64)).collect(),
        )
    }
}

/// Alphabet `a.1 .. a.n, b.1 .. b.n` with unit weights: the openers come
/// first, then the closers. `a.i` has index `i-1`, `b.i` has index `n+i-1`.
pub fn dyck_alphabet(n: usize) -> Alphabet {
    let mut names = Vec::with_capacity(2 * n);
    for i in 1..=n {
        names.push(format!("a.{i}"));
    }
    for i in 1..=n {
        names.push(format!("b.{i}"));
    }
    Alphabet::unit_weights(names).expect("bracket alphabet is valid")
}

/// The bracket alphabet extended with the block separator `e` at the end.
pub fn pn_alphabet(n: usize) -> Alphabet {
    let mut names: Vec<String> =
        dyck_alphabet(n).variables().iter().map(|v| v.name.clone()).collect();
    names.push("e".to_string());
    Alphabet::unit_weights(names).expect("bracket+e alphabet is valid")
}

/// All balanced words on `n` kinds of brackets up to length `bound`, over
/// [`dyck_alphabet`]. At length `2k` there are `C_k * n^k` of them.
pub fn enumerate_dyck(n: usize, bound: u64) -> LanguageSlice {
    let mut slice = LanguageSlice::new(bound);
    let mut word: Vec<u32> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn rec(
        n: usize,
        bound: u64,
        word: &mut Vec<u32>,
        stack: &mut Vec<u32>,
        slice: &mut LanguageSlice,
    ) {
        if stack.is_empty() {
            slice.insert(word.len() as u64, Word::from_letters(word.clone()));
        }
        // an opener costs 2 letters overall: itself and its closer
        if (word.len() + stack.len() + 2) as u64 <= bound {
            for kind in 0..n as u32 {
                word.push(kind);
                stack.push(kind);
                rec(n, bound, word, stack, slice);
                stack.pop();
                word.pop();
            }
        }
        if let Some(&top) = stack.last() {
            word.push(n as u32 + top);
            stack.pop();
            rec(n, bound, word, stack, slice);
            stack.push(top);
            word.pop();
        }
    }
    rec(n, bound, &mut word, &mut stack, &mut slice);
    slice
}

/// All words of `(D_n e)^*` up to length `bound`, over [`pn_alphabet`]:
/// the empty word and every concatenation of blocks `w e` with `w`
/// balanced.
pub fn enumerate_pn(n: usize, bound: u64) -> LanguageSlice {
    let e = 2 * n as u32;
    let dyck = enumerate_dyck(n, bound.saturating_sub(1));
    let mut by_len: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); bound as usize + 1];
    by_len[0].insert(Word::empty());
    for len in 1..=bound as usize {
        for prefix_len in 0..len {
            let block_len = len - prefix_len - 1;
            let prefixes: Vec<Word> = by_len[prefix_len].iter().cloned().collect();
            for p in prefixes {
                for w in dyck.words_of_degree(block_len as u64) {
                    let mut letters = p.letters().to_vec();
                    letters.extend_from_slice(w.letters());
                    letters.push(e);
                    by_len[len].insert(Word::from_letters(letters));
                }
            }
        }
    }
    let mut slice = LanguageSlice::new(bound);
    for (len, set) in by_len.into_iter().enumerate() {
        for w in set {
            slice.insert(len as u64, w);
        }
    }
    slice
}

/// A letter-to-word map `a_i -> phi(a_i), b_i -> phi(b_i)` into a terminal
/// alphabet with unit weights. `d` is the maximal image length.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    n: usize,
    target: Alphabet,
    images_a: Vec<Word>,
    images_b: Vec<Word>,
}

impl Homomorphism {
    pub fn new(n: usize, target: Alphabet, images_a: Vec<Word>, images_b: Vec<Word>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("need at least one bracket pair".into()));
        }
        if target.is_empty() {
            return Err(Error::InvalidInput("need at least one terminal".into()));
        }
        if images_a.len() != n || images_b.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} opener and {n} closer images"
            )));
        }
        for img in images_a.iter().chain(images_b.iter()) {
            if img.is_empty() {
                return Err(Error::InvalidInput("letter images must be nonempty".into()));
            }
            target.degree(img)?;
        }
        Ok(Homomorphism { n, target, images_a, images_b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image_of_opener(&self, i: usize) -> &Word {
        &self.images_a[i]
    }

    pub fn image_of_closer(&self, i: usize) -> &Word {
        &self.images_b[i]
    }

    /// The maximal image degree.
    pub fn d(&self) -> u64 {
        self.images_a
            .iter()
            .chain(self.images_b.iter())
            .map(|w| w.len() as u64)
            .max()
            .expect("images are nonempty")
    }

    pub fn min_image_degree(&self) -> u64 {
        self.images_a
            .iter()
            .chain(self.images_b.iter())
            .map(|w| w.len() as u64)
            .min()
            .expect("images are nonempty")
    }

    /// Applies the map to a word over [`dyck_alphabet`]`(n)`.
    pub fn apply(&self, w: &Word) -> Word {
        let mut letters = Vec::new();
        for &l in w.letters() {
            let img = if (l as usize) < self.n {
                &self.images_a[l as usize]
            } else {
                &self.images_b[l as usize - self.n]
            };
            letters.extend_from_slice(img.letters());
        }
        Word::from_letters(letters)
    }
}

/// The image `phi(D_n)` restricted to degree `<= bound`, deduplicated.
/// Any balanced word whose image fits in degree `bound` has length at most
/// `bound / min-image-degree`, so enumerating brackets up to that cap is
/// exhaustive.
pub fn image_language(h: &Homomorphism, bound: u64) -> LanguageSlice {
    let cap = bound / h.min_image_degree();
    let dyck = enumerate_dyck(h.n(), cap);
    let mut slice = LanguageSlice::new(bound);
    for (_, w) in dyck.iter() {
        let img = h.apply(w);
        let deg = img.len() as u64;
        if deg <= bound {
            slice.insert(deg, img);
        }
    }
    slice
}

/// A grammar symbol after name resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Terminal(usize),
    Nonterminal(usize),
}

#[derive(Debug, Clone)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
}

/// A context-free grammar with weighted terminals. Loading validates that
/// every nonterminal is productive and reachable; unambiguity is the
/// caller's claim and is cross-checked against enumeration elsewhere.
#[derive(Debug, Clone)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<(String, u64)>,
    start: usize,
    productions: Vec<Production>,
    nullable: Vec<bool>,
}

impl Grammar {
    /// Builds a grammar from names. `productions` are `(lhs, rhs)` with
    /// rhs symbols resolved against the nonterminal list first, then the
    /// terminal weight list.
    pub fn from_parts(
        nonterminals: Vec<String>,
        start: &str,
        productions: Vec<(String, Vec<String>)>,
        terminal_weights: Vec<(String, u64)>,
    ) -> Result<Self> {
        let mut nt_index = HashMap::new();
        for (i, n) in nonterminals.iter().enumerate() {
            if nt_index.insert(n.clone(), i).is_some() {
                return Err(Error::Grammar(format!("duplicate nonterminal `{n}`")));
            }
        }
        let mut t_index = HashMap::new();
        for (i, (t, w)) in terminal_weights.iter().enumerate() {
            if *w == 0 {
                return Err(Error::Grammar(format!("terminal `{t}` has weight 0")));
            }
            if nt_index.contains_key(t) {
                return Err(Error::Grammar(format!("`{t}` is both terminal and nonterminal")));
            }
            if t_index.insert(t.clone(), i).is_some() {
                return Err(Error::Grammar(format!("duplicate terminal `{t}`")));
            }
        }
        let start = *nt_index
            .get(start)
            .ok_or_else(|| Error::Grammar(format!("unknown start symbol `{start}`")))?;
        let mut prods = Vec::new();
        for (lhs, rhs) in productions {
            let lhs = *nt_index
                .get(&lhs)
                .ok_or_else(|| Error::Grammar(format!("unknown production head `{lhs}`")))?;
            let rhs = rhs
                .iter()
                .map(|s| {
                    if let Some(&i) = nt_index.get(s) {
                        Ok(Symbol::Nonterminal(i))
                    } else if let Some(&i) = t_index.get(s) {
                        Ok(Symbol::Terminal(i))
                    } else {
                        Err(Error::Grammar(format!("unknown symbol `{s}`")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            prods.push(Production { lhs, rhs });
        }
        let g = Grammar {
            nullable: vec![false; nonterminals.len()],
            nonterminals,
            terminals: terminal_weights,
            start,
            productions: prods,
        };
        g.validated()
    }

    fn validated(mut self) -> Result<Self> {
        // productive: can derive a terminal-only string
        let mut productive = vec![false; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !productive[p.lhs]
                    && p.rhs.iter().all(|s| match s {
                        Symbol::Terminal(_) => true,
                        Symbol::Nonterminal(i) => productive[*i],
                    })
                {
                    productive[p.lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(i) = (0..self.nonterminals.len()).find(|&i| !productive[i]) {
            return Err(Error::Grammar(format!(
                "nonterminal `{}` is unproductive",
                self.nonterminals[i]
            )));
        }
        // reachable from the start symbol
        let mut reachable = vec![false; self.nonterminals.len()];
        reachable[self.start] = true;
        let mut queue = VecDeque::from([self.start]);
        while let Some(nt) = queue.pop_front() {
            for p in self.productions.iter().filter(|p| p.lhs == nt) {
                for s in &p.rhs {
                    if let Symbol::Nonterminal(i) = s {
                        if !reachable[*i] {
                            reachable[*i] = true;
                            queue.push_back(*i);
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..self.nonterminals.len()).find(|&i| !reachable[i]) {
            return Err(Error::Grammar(format!(
                "nonterminal `{}` is unreachable",
                self.nonterminals[i]
            )));
        }
        // nullable closure, used by the chart parser
        loop {
            let mut changed = false;
            for p in &self.productions {
                if !self.nullable[p.lhs]
                    && p.rhs.iter().all(|s| matches!(s, Symbol::Nonterminal(i) if self.nullable[*i]))
                {
                    self.nullable[p.lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(self)
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn nonterminal_name(&self, i: usize) -> &str {
        &self.nonterminals[i]
    }

    pub fn start_index(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn terminal_weight(&self, i: usize) -> u64 {
        self.terminals[i].1
    }

    pub fn terminal_name(&self, i: usize) -> &str {
        &self.terminals[i].0
    }

    pub fn terminals(&self) -> &[(String, u64)] {
        &self.terminals
    }

    /// Terminal alphabet in declaration order, carrying the weights.
    pub fn terminal_alphabet(&self) -> Alphabet {
        Alphabet::new(self.terminals.clone()).expect("terminal list was validated")
    }

    fn terminal_id(&self, name: &str) -> Result<usize> {
        self.terminals
            .iter()
            .position(|(t, _)| t == name)
            .ok_or_else(|| Error::Grammar(format!("unknown terminal `{name}`")))
    }

    /// Chart-parsing membership test for a word given as terminal names.
    pub fn accepts(&self, word: &[&str]) -> Result<bool> {
        let ids = word.iter().map(|t| self.terminal_id(t)).collect::<Result<Vec<_>>>()?;
        Ok(self.accepts_ids(&ids))
    }

    /// Membership for a word over [`Grammar::terminal_alphabet`].
    pub fn accepts_word(&self, w: &Word) -> Result<bool> {
        for &l in w.letters() {
            if l as usize >= self.terminals.len() {
                return Err(Error::ForeignLetter { index: l, size: self.terminals.len() });
            }
        }
        Ok(self.accepts_ids(&w.letters().iter().map(|&l| l as usize).collect::<Vec<_>>()))
    }

    fn accepts_ids(&self, word: &[usize]) -> bool {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        struct Item {
            prod: usize,
            dot: usize,
            origin: usize,
        }
        let n = word.len();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        let push = |sets: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, k: usize, it: Item| {
            if seen[k].insert(it) {
                sets[k].push(it);
            }
        };
        for (pi, p) in self.productions.iter().enumerate() {
            if p.lhs == self.start {
                push(&mut sets, &mut seen, 0, Item { prod: pi, dot: 0, origin: 0 });
            }
        }
        for k in 0..=n {
            let mut cursor = 0;
            while cursor < sets[k].len() {
                let it = sets[k][cursor];
                cursor += 1;
                let rhs = &self.productions[it.prod].rhs;
                if it.dot < rhs.len() {
                    match rhs[it.dot] {
                        Symbol::Terminal(t) => {
                            if k < n && word[k] == t {
                                push(
                                    &mut sets,
                                    &mut seen,
                                    k + 1,
                                    Item { prod: it.prod, dot: it.dot + 1, origin: it.origin },
                                );
                            }
                        }
                        Symbol::Nonterminal(b) => {
                            for (pi, p) in self.productions.iter().enumerate() {
                                if p.lhs == b {
                                    push(
                                        &mut sets,
                                        &mut seen,
                                        k,
                                        Item { prod: pi, dot: 0, origin: k },
                                    );
                                }
                            }
                            // nullable nonterminals also let the dot advance
                            if self.nullable[b] {
                                push(
                                    &mut sets,
                                    &mut seen,
                                    k,
                                    Item { prod: it.prod, dot: it.dot + 1, origin: it.origin },
                                );
                            }
                        }
                    }
                } else {
                    let lhs = self.productions[it.prod].lhs;
                    let parents: Vec<Item> = sets[it.origin]
                        .iter()
                        .filter(|par| {
                            let prhs = &self.productions[par.prod].rhs;
                            par.dot < prhs.len()
                                && matches!(prhs[par.dot], Symbol::Nonterminal(b) if b == lhs)
                        })
                        .copied()
                        .collect();
                    for par in parents {
                        push(
                            &mut sets,
                            &mut seen,
                            k,
                            Item { prod: par.prod, dot: par.dot + 1, origin: par.origin },
                        );
                    }
                }
            }
        }
        sets[n].iter().any(|it| {
            it.origin == 0
                && self.productions[it.prod].lhs == self.start
                && it.dot == self.productions[it.prod].rhs.len()
        })
    }

    /// The grammar's language restricted to weighted degree `<= bound`,
    /// computed by fixed-point iteration on word sets. Words come out over
    /// [`Grammar::terminal_alphabet`].
    pub fn language_slice(&self, bound: u64) -> LanguageSlice {
        let weights: Vec<u64> = self.terminals.iter().map(|(_, w)| *w).collect();
        let deg = |w: &Word| -> u64 { w.letters().iter().map(|&l| weights[l as usize]).sum() };
        let mut langs: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); self.nonterminals.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut partial: BTreeSet<Word> = BTreeSet::new();
                partial.insert(Word::empty());
                for sym in &p.rhs {
                    let mut next = BTreeSet::new();
                    match *sym {
                        Symbol::Terminal(t) => {
                            for w in &partial {
                                let mut letters = w.letters().to_vec();
                                letters.push(t as u32);
                                let nw = Word::from_letters(letters);
                                if deg(&nw) <= bound {
                                    next.insert(nw);
                                }
                            }
                        }
                        Symbol::Nonterminal(b) => {
                            for w in &partial {
                                for v in &langs[b] {
                                    let nw = w.concat(v);
                                    if deg(&nw) <= bound {
                                        next.insert(nw);
                                    }
                                }
                            }
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        break;
                    }
                }
                for w in partial {
                    if langs[p.lhs].insert(w) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut slice = LanguageSlice::new(bound);
        for w in &langs[self.start] {
            slice.insert(deg(w), w.clone());
        }
        slice
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// `S -> eps | a.1 S b.1 S` with unit weights.
    pub fn dyck_grammar_n1() -> Grammar {
        Grammar::from_parts(
            vec!["S".into()],
            "S",
            vec![
                ("S".into(), vec![]),
                ("S".into(), vec!["a.1".into(), "S".into(), "b.1".into(), "S".into()]),
            ],
            vec![("a.1".into(), 1), ("b.1".into(), 1)],
        )
        .unwrap()
    }

    /// `S -> T | a; T -> S`: proper symbols but a drifting counting system.
    pub fn looping_grammar() -> Grammar {
        Grammar::from_parts(
            vec!["S".into(), "T".into()],
            "S",
            vec![
                ("S".into(), vec!["T".into()]),
                ("S".into(), vec!["a".into()]),
                ("T".into(), vec!["S".into()]),
            ],
            vec![("a".into(), 1)],
        )
        .unwrap()
    }

    /// Unambiguous grammar for words over two terminals with equal counts:
    /// `S -> eps | t.1 B S | t.2 A S; A -> t.1 | t.2 A A; B -> t.2 | t.1 B B`.
    pub fn equal_count_grammar() -> Grammar {
        Grammar::from_parts(
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
        .unwrap()
    }
}
