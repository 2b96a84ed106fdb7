//! Core model: automata over `0..n`, packed state sets, and words.

use std::fmt;

use thiserror::Error;

/// Errors from constructing or acting with an [`Automaton`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("state count must be at least 1")]
    NoStates,
    #[error("state count {n} exceeds the packed-set limit of {max} states", max = StateSet::MAX_STATES)]
    TooManyStates { n: usize },
    #[error("automaton needs at least one letter")]
    NoLetters,
    #[error("alphabet size {alphabet} exceeds the limit of {max} letters", max = MAX_LETTERS)]
    TooManyLetters { alphabet: usize },
    #[error("letter {letter} has {got} entries, expected {expected}")]
    BadRowLength {
        letter: usize,
        got: usize,
        expected: usize,
    },
    #[error("letter {letter} maps state {state} to {image}, outside 0..{n}")]
    ImageOutOfRange {
        letter: usize,
        state: usize,
        image: u32,
        n: usize,
    },
    #[error("letter name {name:?} duplicated or empty")]
    BadLetterName { name: String },
    #[error("letter index {letter} out of range for alphabet of size {alphabet}")]
    InvalidLetter { letter: usize, alphabet: usize },
    #[error("state set {set} contains states outside 0..{n}")]
    SetOutOfRange { set: StateSet, n: usize },
    #[error("operation needs a nonempty state set")]
    EmptySet,
    #[error("cannot parse {text:?} as a word over this alphabet")]
    BadWord { text: String },
}

/// Upper bound on alphabet size; letter indices are stored as `u16` with
/// `u16::MAX` reserved as a sentinel.
pub const MAX_LETTERS: usize = u16::MAX as usize - 1;

/// A subset of states packed into a `u64` bitmask (bit `i` = state `i`).
///
/// The packing caps automata at 64 states. Displays 1-indexed: `{1,3,4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(u64);

impl StateSet {
    /// Hard cap on state count imposed by the packed representation.
    pub const MAX_STATES: usize = 64;

    pub const EMPTY: StateSet = StateSet(0);

    /// Set holding every state of an `n`-state automaton.
    pub fn full(n: usize) -> StateSet {
        debug_assert!(n >= 1 && n <= Self::MAX_STATES);
        if n == 64 {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(state: usize) -> StateSet {
        debug_assert!(state < Self::MAX_STATES);
        StateSet(1u64 << state)
    }

    /// Builds a set from raw mask bits.
    pub fn from_code(code: u64) -> StateSet {
        StateSet(code)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> StateSet {
        let mut code = 0u64;
        for s in states {
            debug_assert!(s < Self::MAX_STATES);
            code |= 1u64 << s;
        }
        StateSet(code)
    }

    pub fn code(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_singleton(self) -> bool {
        self.0 != 0 && self.0 & (self.0 - 1) == 0
    }

    pub fn contains(self, state: usize) -> bool {
        state < Self::MAX_STATES && self.0 >> state & 1 == 1
    }

    pub fn with(self, state: usize) -> StateSet {
        debug_assert!(state < Self::MAX_STATES);
        StateSet(self.0 | 1u64 << state)
    }

    pub fn is_subset_of(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet(self.0 & other.0)
    }

    /// States in ascending order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(s)
            }
        })
    }

    /// Smallest member, if any.
    pub fn min_state(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl fmt::Display for StateSet {
    /// 1-indexed, ascending: `{1,3,4}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.states().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        write!(f, "}}")
    }
}

/// A word: letter indices applied left to right (first letter acts first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u16>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: u16) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }
}

/// A deterministic complete automaton: states `0..n`, each letter a total
/// function given as a row of images.
///
/// Letters may carry names (the two-letter families use `f` and `g`); words
/// over a fully named alphabet of single-character names display as plain
/// strings like `gfffgfffg`, otherwise as comma-separated letter indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    n: usize,
    rows: Vec<Vec<u32>>,
    letter_names: Option<Vec<String>>,
    name: Option<String>,
}

impl Automaton {
    pub fn new(n: usize, rows: Vec<Vec<u32>>) -> Result<Automaton, ModelError> {
        if n == 0 {
            return Err(ModelError::NoStates);
        }
        if n > StateSet::MAX_STATES {
            return Err(ModelError::TooManyStates { n });
        }
        if rows.is_empty() {
            return Err(ModelError::NoLetters);
        }
        if rows.len() > MAX_LETTERS {
            return Err(ModelError::TooManyLetters {
                alphabet: rows.len(),
            });
        }
        for (letter, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ModelError::BadRowLength {
                    letter,
                    got: row.len(),
                    expected: n,
                });
            }
            for (state, &image) in row.iter().enumerate() {
                if image as usize >= n {
                    return Err(ModelError::ImageOutOfRange {
                        letter,
                        state,
                        image,
                        n,
                    });
                }
            }
        }
        Ok(Automaton {
            n,
            rows,
            letter_names: None,
            name: None,
        })
    }

    /// Attaches letter names; names must be nonempty and pairwise distinct.
    pub fn with_letter_names<S: Into<String>>(
        mut self,
        names: Vec<S>,
    ) -> Result<Automaton, ModelError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.rows.len() {
            return Err(ModelError::BadRowLength {
                letter: names.len(),
                got: names.len(),
                expected: self.rows.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || names[..i].contains(name) {
                return Err(ModelError::BadLetterName { name: name.clone() });
            }
        }
        self.letter_names = Some(names);
        Ok(self)
    }

    pub fn with_name<S: Into<String>>(mut self, name: S) -> Automaton {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.rows.len()
    }

    /// Image row of one letter; panics if the letter does not exist.
    pub fn letter_row(&self, letter: usize) -> &[u32] {
        &self.rows[letter]
    }

    pub fn letter_names(&self) -> Option<&[String]> {
        self.letter_names.as_deref()
    }

    pub fn letter_name(&self, letter: usize) -> Option<&str> {
        self.letter_names.as_ref().map(|ns| ns[letter].as_str())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.n)
    }

    fn check_letter(&self, letter: usize) -> Result<(), ModelError> {
        if letter >= self.rows.len() {
            return Err(ModelError::InvalidLetter {
                letter,
                alphabet: self.rows.len(),
            });
        }
        Ok(())
    }

    fn check_set(&self, set: StateSet) -> Result<(), ModelError> {
        if set.is_empty() {
            return Err(ModelError::EmptySet);
        }
        if !set.is_subset_of(self.full_set()) {
            return Err(ModelError::SetOutOfRange { set, n: self.n });
        }
        Ok(())
    }

    /// Pointwise image of a nonempty set under one letter.
    pub fn apply_letter(&self, letter: usize, set: StateSet) -> Result<StateSet, ModelError> {
        self.check_letter(letter)?;
        self.check_set(set)?;
        Ok(self.apply_letter_unchecked(letter, set))
    }

    /// Same as [`apply_letter`](Self::apply_letter) without validation; the
    /// caller guarantees the letter exists and the set fits the automaton.
    #[inline]
    pub fn apply_letter_unchecked(&self, letter: usize, set: StateSet) -> StateSet {
        let row = &self.rows[letter];
        let mut out = 0u64;
        let mut bits = set.code();
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1u64 << row[s];
        }
        StateSet::from_code(out)
    }

    /// Image of a set under a word, letters applied left to right.
    pub fn apply_word(&self, word: &Word, set: StateSet) -> Result<StateSet, ModelError> {
        self.check_set(set)?;
        let mut cur = set;
        for &letter in word.letters() {
            self.check_letter(letter as usize)?;
            cur = self.apply_letter_unchecked(letter as usize, cur);
        }
        Ok(cur)
    }

    /// The state function of a word: entry `s` is where the word sends `s`.
    pub fn word_function(&self, word: &Word) -> Result<Vec<u32>, ModelError> {
        let mut map: Vec<u32> = (0..self.n as u32).collect();
        for &letter in word.letters() {
            self.check_letter(letter as usize)?;
            let row = &self.rows[letter as usize];
            for image in map.iter_mut() {
                *image = row[*image as usize];
            }
        }
        Ok(map)
    }

    /// Size of the image of the full state set under the word.
    pub fn rank(&self, word: &Word) -> Result<usize, ModelError> {
        let map = self.word_function(word)?;
        let mut seen = 0u64;
        for &image in &map {
            seen |= 1u64 << image;
        }
        Ok(seen.count_ones() as usize)
    }

    /// For each state, how many states the word maps onto it.
    pub fn preimage_counts(&self, word: &Word) -> Result<Vec<u32>, ModelError> {
        let map = self.word_function(word)?;
        let mut counts = vec![0u32; self.n];
        for &image in &map {
            counts[image as usize] += 1;
        }
        Ok(counts)
    }

    /// True when every letter name is a single character and the alphabet is
    /// small enough for the compact one-character-per-letter word form.
    fn compact_words(&self) -> bool {
        match &self.letter_names {
            Some(names) => names.len() <= 26 && names.iter().all(|n| n.chars().count() == 1),
            None => false,
        }
    }

    /// Renders a word: one character per letter for a compact named alphabet
    /// (`gfffgfffg`), otherwise comma-separated letter indices (`1,0,0`).
    /// The empty word renders as the empty string.
    pub fn format_word(&self, word: &Word) -> String {
        if self.compact_words() {
            let names = self.letter_names.as_ref().unwrap();
            word.letters()
                .iter()
                .map(|&l| names[l as usize].as_str())
                .collect()
        } else {
            word.letters()
                .iter()
                .map(|&l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses the formats produced by [`format_word`](Self::format_word).
    pub fn parse_word(&self, text: &str) -> Result<Word, ModelError> {
        let bad = || ModelError::BadWord {
            text: text.to_string(),
        };
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if self.compact_words() {
            let names = self.letter_names.as_ref().unwrap();
            let mut letters = Vec::with_capacity(text.chars().count());
            for ch in text.chars() {
                let idx = names
                    .iter()
                    .position(|n| n.chars().next() == Some(ch))
                    .ok_or_else(bad)?;
                letters.push(idx as u16);
            }
            return Ok(Word::from_letters(letters));
        }
        let mut letters = Vec::new();
        for part in text.split(',') {
            let idx: usize = part.trim().parse().map_err(|_| bad())?;
            self.check_letter(idx).map_err(|_| bad())?;
            letters.push(idx as u16);
        }
        Ok(Word::from_letters(letters))
    }
}
