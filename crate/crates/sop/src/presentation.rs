//! Presentations of monoids: alphabets, words as letter indices, relations,
//! and a line-oriented text format for reading and writing them.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a generator in its alphabet.
pub type Letter = u32;

/// Ordered sequence of distinct generator tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Letter>,
}

fn valid_token(t: &str) -> bool {
    let mut chars = t.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new(tokens: Vec<String>) -> Result<Alphabet> {
        let mut index = HashMap::new();
        for (i, t) in tokens.iter().enumerate() {
            if !valid_token(t) {
                return Err(Error::UnknownToken { token: t.clone() });
            }
            if index.insert(t.clone(), i as Letter).is_some() {
                return Err(Error::precondition(format!("duplicate generator `{t}`")));
            }
        }
        Ok(Alphabet { tokens, index })
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, l: Letter) -> &str {
        &self.tokens[l as usize]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }
}

/// Word over an alphabet, stored as letter indices. The empty word is the
/// monoid identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Word {
        Word(v.to_vec())
    }
}

/// Shortest first, ties broken lexicographically by letter index. This is the
/// tie-break order used everywhere a single word must be chosen.
impl Ord for Word {
    fn cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.0)
    }
}

/// Ordered pair of words asserted equal in the presented monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Relation {
        Relation { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Immutable monoid presentation: an alphabet and a list of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<Presentation> {
        let n = alphabet.size() as Letter;
        for r in &relations {
            for &l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                if l >= n {
                    return Err(Error::precondition(format!(
                        "letter index {l} out of range for alphabet of size {n}"
                    )));
                }
            }
        }
        Ok(Presentation { alphabet, relations })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Parse the line-oriented text format:
    ///
    /// ```text
    /// # comment
    /// generators: a b
    /// relation: a b a b = b a b a
    /// relation: 1 = a b
    /// ```
    ///
    /// `1` stands for the empty word and must appear alone on its side.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, "repeated generators line"));
                }
                let tokens: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                for t in &tokens {
                    if !valid_token(t) {
                        return Err(Error::parse(line_no, format!("invalid generator token `{t}`")));
                    }
                }
                let ab = Alphabet::new(tokens).map_err(|e| match e {
                    Error::Precondition(m) => Error::parse(line_no, m),
                    other => other,
                })?;
                alphabet = Some(ab);
            } else if let Some(rest) = line.strip_prefix("relation:") {
                let Some(ab) = alphabet.as_ref() else {
                    return Err(Error::parse(line_no, "relation before generators line"));
                };
                let sides: Vec<&str> = rest.split('=').collect();
                if sides.len() != 2 {
                    return Err(Error::parse(line_no, "relation must have exactly one `=`"));
                }
                let lhs = parse_side(ab, sides[0], line_no)?;
                let rhs = parse_side(ab, sides[1], line_no)?;
                relations.push(Relation::new(lhs, rhs));
            } else {
                return Err(Error::parse(line_no, format!("unrecognized line `{line}`")));
            }
        }
        let Some(alphabet) = alphabet else {
            return Err(Error::parse(text.lines().count().max(1), "missing generators line"));
        };
        Ok(Presentation { alphabet, relations })
    }

    /// Inverse of [`Presentation::parse`]: parsing the output reproduces the
    /// presentation exactly, and serializing a parsed normalized file
    /// reproduces its bytes.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("generators:");
        for t in self.alphabet.tokens() {
            out.push(' ');
            out.push_str(t);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str("relation: ");
            out.push_str(&self.render_word(&r.lhs));
            out.push_str(" = ");
            out.push_str(&self.render_word(&r.rhs));
            out.push('\n');
        }
        out
    }

    /// Parse a single word of whitespace-separated tokens; `1` is the empty
    /// word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        parse_word_tokens(&self.alphabet, s)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_owned();
        }
        w.letters()
            .iter()
            .map(|&l| self.alphabet.token(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Distinct relation words in first-occurrence order (scanning each
    /// relation left side then right side).
    pub fn relation_words(&self) -> Vec<Word> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for r in &self.relations {
            for w in [&r.lhs, &r.rhs] {
                if seen.insert(w.clone()) {
                    out.push(w.clone());
                }
            }
        }
        out
    }

    pub fn is_relation_word(&self, w: &Word) -> bool {
        self.relations.iter().any(|r| &r.lhs == w || &r.rhs == w)
    }

    /// Class id for each relation word, index-aligned with
    /// [`Presentation::relation_words`]. Two words share a class when a chain
    /// of relations joins them.
    pub fn relation_word_classes(&self) -> Vec<usize> {
        let words = self.relation_words();
        let index: HashMap<&Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for r in &self.relations {
            let a = find(&mut parent, index[&r.lhs]);
            let b = find(&mut parent, index[&r.rhs]);
            parent[a] = b;
        }
        (0..words.len()).map(|i| find(&mut parent, i)).collect()
    }

    /// Close the relation set into an equivalence relation on the relation
    /// words. Output relations are all ordered pairs of same-class relation
    /// words, row-major, classes grouped in first-occurrence order. A closed
    /// presentation re-derives exactly this order from its own relation
    /// list, so closing again changes nothing, byte for byte.
    pub fn equivalence_closure(&self) -> Presentation {
        let words = self.relation_words();
        let classes = self.relation_word_classes();
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (i, &c) in classes.iter().enumerate() {
            first.entry(c).or_insert(i);
        }
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by_key(|&i| (first[&classes[i]], i));
        let mut relations = Vec::new();
        for &i in &order {
            for &j in &order {
                if classes[i] == classes[j] {
                    relations.push(Relation::new(words[i].clone(), words[j].clone()));
                }
            }
        }
        Presentation { alphabet: self.alphabet.clone(), relations }
    }

    /// Reverse every word of every relation. Presents the opposite monoid.
    pub fn reversed(&self) -> Presentation {
        let relations = self
            .relations
            .iter()
            .map(|r| Relation::new(r.lhs.reversed(), r.rhs.reversed()))
            .collect();
        Presentation { alphabet: self.alphabet.clone(), relations }
    }

    /// All words reachable from `w` by one application of one relation, in
    /// either direction, at any position. Trivial relations contribute
    /// nothing, so `w` itself never appears.
    pub fn rewrite_neighbors(&self, w: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        let s = w.letters();
        for r in &self.relations {
            if r.is_trivial() {
                continue;
            }
            for (x, y) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
                let xs = x.letters();
                if xs.is_empty() {
                    for pos in 0..=s.len() {
                        let mut v = Vec::with_capacity(s.len() + y.len());
                        v.extend_from_slice(&s[..pos]);
                        v.extend_from_slice(y.letters());
                        v.extend_from_slice(&s[pos..]);
                        out.push(Word::new(v));
                    }
                } else {
                    for pos in 0..s.len().saturating_sub(xs.len() - 1) {
                        if s[pos..].starts_with(xs) {
                            let mut v = Vec::with_capacity(s.len() - xs.len() + y.len());
                            v.extend_from_slice(&s[..pos]);
                            v.extend_from_slice(y.letters());
                            v.extend_from_slice(&s[pos + xs.len()..]);
                            out.push(Word::new(v));
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn parse_side(alphabet: &Alphabet, s: &str, line_no: usize) -> Result<Word> {
    parse_word_tokens(alphabet, s).map_err(|e| match e {
        Error::UnknownToken { token } => {
            Error::parse(line_no, format!("unknown generator token `{token}`"))
        }
        other => other,
    })
}

fn parse_word_tokens(alphabet: &Alphabet, s: &str) -> Result<Word> {
    let tokens: Vec<&str> = s.split_whitespace().collect();
    if tokens == ["1"] {
        return Ok(Word::empty());
    }
    if tokens.is_empty() {
        return Err(Error::UnknownToken { token: String::new() });
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for t in tokens {
        match alphabet.index_of(t) {
            Some(l) => letters.push(l),
            None => return Err(Error::UnknownToken { token: t.to_owned() }),
        }
    }
    Ok(Word::new(letters))
}
