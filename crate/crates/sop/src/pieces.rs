//! Pieces of a presentation and the overlap conditions built on them.
//!
//! A piece is a word that occurs as a factor of the relation words in two
//! distinct places: in two distinct relation words, or at two distinct
//! positions (possibly overlapping) in the same one. The empty word is
//! always a piece. The piece set is factor closed, so prefixes of pieces
//! are pieces; scans below rely on that.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};

/// Lookup table over the full piece set of a presentation.
#[derive(Clone, Debug)]
pub struct PieceTable {
    pieces: HashSet<Word>,
    max_len: usize,
}

impl PieceTable {
    pub fn build(p: &Presentation) -> PieceTable {
        let words = p.relation_words();
        let mut first: HashMap<Word, (usize, usize)> = HashMap::new();
        let mut pieces: HashSet<Word> = HashSet::new();
        for (wi, w) in words.iter().enumerate() {
            let s = w.letters();
            for i in 0..s.len() {
                for j in i + 1..=s.len() {
                    let f = Word::from(&s[i..j]);
                    match first.entry(f) {
                        std::collections::hash_map::Entry::Occupied(e) => {
                            // Distinct lengths at one start give distinct
                            // factors, so an occupied slot is a second place.
                            pieces.insert(e.key().clone());
                        }
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert((wi, i));
                        }
                    }
                }
            }
        }
        pieces.insert(Word::empty());
        let max_len = pieces.iter().map(Word::len).max().unwrap_or(0);
        PieceTable { pieces, max_len }
    }

    pub fn is_piece(&self, s: &[Letter]) -> bool {
        s.len() <= self.max_len && self.pieces.contains(&Word::from(s))
    }

    /// Length of the longest prefix of `s` that is a piece. Valid to scan
    /// upward and stop at the first miss because the piece set is factor
    /// closed.
    pub fn longest_piece_prefix(&self, s: &[Letter]) -> usize {
        let mut best = 0;
        while best < s.len() && best < self.max_len && self.is_piece(&s[..best + 1]) {
            best += 1;
        }
        best
    }

    pub fn longest_piece_suffix(&self, s: &[Letter]) -> usize {
        let mut best = 0;
        while best < s.len() && best < self.max_len && self.is_piece(&s[s.len() - best - 1..]) {
            best += 1;
        }
        best
    }

    pub fn max_piece_len(&self) -> usize {
        self.max_len
    }

    /// All pieces, shortest first, ties lexicographic. Starts with the empty
    /// word.
    pub fn sorted_pieces(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.pieces.iter().cloned().collect();
        v.sort();
        v
    }

    /// Minimal-length factorization of `w` into pieces, or None if `w` is not
    /// a product of pieces. The empty word factors into zero pieces. Among
    /// minimal factorizations, each step takes the longest usable piece.
    pub fn min_decomposition(&self, w: &Word) -> Option<Vec<Word>> {
        let s = w.letters();
        let n = s.len();
        let mut dp = vec![usize::MAX; n + 1];
        let mut step = vec![0usize; n + 1];
        dp[n] = 0;
        for i in (0..n).rev() {
            let limit = self.longest_piece_prefix(&s[i..]);
            for t in (1..=limit).rev() {
                if dp[i + t] != usize::MAX && dp[i + t] + 1 < dp[i] {
                    dp[i] = dp[i + t] + 1;
                    step[i] = t;
                }
            }
        }
        if dp[0] == usize::MAX {
            return None;
        }
        let mut out = Vec::with_capacity(dp[0]);
        let mut i = 0;
        while i < n {
            let t = step[i];
            out.push(Word::from(&s[i..i + t]));
            i += t;
        }
        Some(out)
    }
}

/// Longest piece prefix length at every position of every relation word,
/// computed by pairwise longest-common-extension tables instead of
/// materializing the piece set. Each table cell compares two suffix starts;
/// a common prefix of two distinct starts is a piece, and every piece prefix
/// arises that way.
fn piece_prefix_lengths(words: &[Word]) -> Vec<Vec<usize>> {
    let m = words.len();
    let mut lpp: Vec<Vec<usize>> = words.iter().map(|w| vec![0; w.len()]).collect();
    for a in 0..m {
        for b in a..m {
            let u = words[a].letters();
            let v = words[b].letters();
            let mut lce = vec![vec![0usize; v.len() + 1]; u.len() + 1];
            for i in (0..u.len()).rev() {
                for j in (0..v.len()).rev() {
                    if u[i] == v[j] {
                        lce[i][j] = lce[i + 1][j + 1] + 1;
                    }
                }
            }
            for i in 0..u.len() {
                for j in 0..v.len() {
                    if a == b && i == j {
                        continue;
                    }
                    let l = lce[i][j];
                    if l > lpp[a][i] {
                        lpp[a][i] = l;
                    }
                    if l > lpp[b][j] {
                        lpp[b][j] = l;
                    }
                }
            }
        }
    }
    lpp
}

fn min_cover(lpp_w: &[usize]) -> Option<usize> {
    let n = lpp_w.len();
    let mut dp = vec![usize::MAX; n + 1];
    dp[n] = 0;
    for i in (0..n).rev() {
        for t in 1..=lpp_w[i] {
            if dp[i + t] != usize::MAX && dp[i + t] + 1 < dp[i] {
                dp[i] = dp[i + t] + 1;
            }
        }
    }
    (dp[0] != usize::MAX).then_some(dp[0])
}

/// Least piece count over all factorizations of all relation words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// Some relation word is a product of this many pieces and none is a
    /// product of fewer.
    Bounded(usize),
    /// No relation word is a product of pieces at all; every overlap
    /// condition holds.
    Unbounded,
}

impl Degree {
    pub fn at_least(&self, n: usize) -> bool {
        match *self {
            Degree::Bounded(d) => n <= d,
            Degree::Unbounded => true,
        }
    }
}

pub fn small_overlap_degree(p: &Presentation) -> Degree {
    let words = p.relation_words();
    let lpp = piece_prefix_lengths(&words);
    let mut best: Option<usize> = None;
    for row in &lpp {
        if let Some(c) = min_cover(row) {
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    match best {
        Some(d) => Degree::Bounded(d),
        None => Degree::Unbounded,
    }
}

/// True when no relation word is a product of fewer than `n` pieces.
pub fn check_c(p: &Presentation, n: usize) -> bool {
    small_overlap_degree(p).at_least(n)
}

/// True when `check_c` holds and no relation word is repeated across the
/// relation sides, counting multiplicity.
pub fn check_strong_c(p: &Presentation, n: usize) -> bool {
    let mut seen = HashSet::new();
    for r in p.relations() {
        if !seen.insert(&r.lhs) || !seen.insert(&r.rhs) {
            return false;
        }
    }
    check_c(p, n)
}

/// First relation word (in first-occurrence order) witnessing a `check_c`
/// failure at `n`, with its minimal factorization into pieces.
pub fn c_violation(p: &Presentation, n: usize) -> Option<(Word, Vec<Word>)> {
    let table = PieceTable::build(p);
    for w in p.relation_words() {
        if let Some(d) = table.min_decomposition(&w) {
            if d.len() < n {
                return Some((w, d));
            }
        }
    }
    None
}

/// Split a relation word as (maximal piece prefix, middle, maximal piece
/// suffix). Errors when the prefix and suffix would overlap, which cannot
/// happen once no relation word is a product of two pieces.
pub fn xyz_factorization(table: &PieceTable, r: &Word) -> Result<(Word, Word, Word)> {
    let s = r.letters();
    let x = table.longest_piece_prefix(s);
    let z = table.longest_piece_suffix(s);
    if x + z > s.len() {
        return Err(Error::precondition(format!(
            "piece prefix (length {x}) and piece suffix (length {z}) overlap in a relation word of length {}",
            s.len()
        )));
    }
    Ok((
        Word::from(&s[..x]),
        Word::from(&s[x..s.len() - z]),
        Word::from(&s[s.len() - z..]),
    ))
}

/// All relation words equal to `r` under the equivalence closure of the
/// relations, in first-occurrence order, including `r` itself. Empty when
/// `r` is not a relation word.
pub fn complement_class(p: &Presentation, r: &Word) -> Vec<Word> {
    let words = p.relation_words();
    let Some(target) = words.iter().position(|w| w == r) else {
        return Vec::new();
    };
    let classes = p.relation_word_classes();
    (0..words.len())
        .filter(|&i| classes[i] == classes[target])
        .map(|i| words[i].clone())
        .collect()
}
