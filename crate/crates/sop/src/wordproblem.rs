//! Deciding equality of words in a presented monoid.
//!
//! Requires every relation word to be a product of at least four pieces.
//! Under that condition each relation word splits as X·Y·Z (piece prefix,
//! middle, piece suffix), the X·Y fronts of distinct relation words are
//! never prefixes of one another, and equal words agree up to the end of a
//! distinguished X·Y occurrence. Those facts drive the dispatch below.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::pieces::{self, PieceTable};
use crate::presentation::{Letter, Presentation, Word};

/// Occurrence of the X·Y front of a relation word inside a larger word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverlapPrefix {
    pub start: usize,
    /// One past the last letter of the X·Y occurrence.
    pub end: usize,
    /// Index into the deduplicated relation word list.
    pub word: usize,
}

/// One step of the equality decision, recorded for inspection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// The two words are identical.
    LiteralEqual,
    /// The left word has no relation word front anywhere, so its class is a
    /// singleton.
    NoCleanPrefix,
    /// The right word does not continue with the forced prefix.
    FrontMismatch,
    /// Both words were stripped of this many identical leading letters.
    DumpPrefix(usize),
    /// Same front on both sides, both continue with the piece suffix.
    Case1,
    /// Same front on both sides, not both continuing with the piece suffix.
    Case2,
    /// Complementary fronts, both continue with their piece suffixes.
    Case3,
    /// Complementary fronts, only the right continues with its suffix.
    Case4,
    /// Complementary fronts, only the left continues with its suffix.
    Case5,
    /// Complementary fronts, neither continues with its suffix.
    Case6,
}

/// Decision procedure state: piece structure of one presentation, reusable
/// across many queries.
pub struct WordProblem {
    pres: Presentation,
    table: PieceTable,
    words: Vec<Word>,
    /// X·Y front of each relation word.
    xy: Vec<Word>,
    x_len: Vec<usize>,
    /// Piece suffix of each relation word.
    z: Vec<Word>,
    /// Same-class relation words other than the word itself, in index order.
    complements: Vec<Vec<usize>>,
    /// Piece suffixes occurring in the word's class, deduplicated, in class
    /// index order. Shared by all members of one class.
    z_parts: Vec<Vec<Word>>,
}

impl WordProblem {
    /// Builds the decision state. Errors unless every relation word is a
    /// product of at least four pieces.
    pub fn new(p: &Presentation) -> Result<WordProblem> {
        if let Some((w, d)) = pieces::c_violation(p, 4) {
            let shown = d
                .iter()
                .map(|piece| format!("({})", p.render_word(piece)))
                .collect::<String>();
            return Err(Error::precondition(format!(
                "every relation word must be a product of at least 4 pieces; `{}` is a product of {}: {}",
                p.render_word(&w),
                d.len(),
                shown
            )));
        }
        let table = PieceTable::build(p);
        let words = p.relation_words();
        let mut xy = Vec::with_capacity(words.len());
        let mut x_len = Vec::with_capacity(words.len());
        let mut z = Vec::with_capacity(words.len());
        for w in &words {
            let (x, y, zz) = pieces::xyz_factorization(&table, w)?;
            debug_assert!(!y.is_empty());
            x_len.push(x.len());
            xy.push(x.concat(&y));
            z.push(zz);
        }
        for i in 0..words.len() {
            for j in 0..words.len() {
                if i != j && xy[j].starts_with(&xy[i]) {
                    return Err(Error::precondition(format!(
                        "relation word fronts `{}` and `{}` overlap",
                        p.render_word(&xy[i]),
                        p.render_word(&xy[j])
                    )));
                }
            }
        }
        let classes = p.relation_word_classes();
        let complements: Vec<Vec<usize>> = (0..words.len())
            .map(|i| {
                (0..words.len())
                    .filter(|&j| j != i && classes[j] == classes[i])
                    .collect()
            })
            .collect();
        let z_parts: Vec<Vec<Word>> = (0..words.len())
            .map(|i| {
                let mut parts = Vec::new();
                for j in 0..words.len() {
                    if classes[j] == classes[i] && !parts.contains(&z[j]) {
                        parts.push(z[j].clone());
                    }
                }
                parts
            })
            .collect();
        Ok(WordProblem {
            pres: p.clone(),
            table,
            words,
            xy,
            x_len,
            z,
            complements,
            z_parts,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn piece_table(&self) -> &PieceTable {
        &self.table
    }

    pub fn relation_words(&self) -> &[Word] {
        &self.words
    }

    /// (piece prefix, middle, piece suffix) of a relation word by index.
    pub fn xyz(&self, word: usize) -> (Word, Word, Word) {
        let x = Word::from(&self.xy[word].letters()[..self.x_len[word]]);
        let y = Word::from(&self.xy[word].letters()[self.x_len[word]..]);
        (x, y, self.z[word].clone())
    }

    /// The unique relation word whose X·Y front sits at `pos`, if any.
    /// Uniqueness holds because fronts are mutually prefix free.
    fn front_at(&self, s: &[Letter], pos: usize) -> Option<usize> {
        self.xy
            .iter()
            .position(|xy| s[pos..].starts_with(xy.letters()))
    }

    /// Earliest occurrence of any relation word front.
    pub fn first_relation_prefix(&self, w: &Word) -> Option<OverlapPrefix> {
        let s = w.letters();
        (0..s.len()).find_map(|pos| {
            self.front_at(s, pos).map(|i| OverlapPrefix {
                start: pos,
                end: pos + self.xy[i].len(),
                word: i,
            })
        })
    }

    /// Earliest front occurrence with no other front starting strictly
    /// inside its middle part. Found by walking forward from the first
    /// occurrence; each hop moves the start strictly right, so the walk
    /// ends.
    pub fn clean_overlap_prefix(&self, w: &Word) -> Option<OverlapPrefix> {
        let s = w.letters();
        let mut cur = self.first_relation_prefix(w)?;
        loop {
            let lo = cur.start + self.x_len[cur.word] + 1;
            let next = (lo..cur.end.min(s.len())).find_map(|pos| {
                self.front_at(s, pos).map(|i| OverlapPrefix {
                    start: pos,
                    end: pos + self.xy[i].len(),
                    word: i,
                })
            });
            match next {
                Some(n) => cur = n,
                None => return Some(cur),
            }
        }
    }

    /// Letters remaining after the clean front occurrence, or -1 when the
    /// word has no front occurrence at all.
    pub fn rho(&self, w: &Word) -> isize {
        match self.clean_overlap_prefix(w) {
            Some(c) => (w.len() - c.end) as isize,
            None => -1,
        }
    }

    pub fn words_equivalent(&self, u: &Word, v: &Word) -> bool {
        self.words_equivalent_traced(u, v).0
    }

    pub fn words_equivalent_traced(&self, u: &Word, v: &Word) -> (bool, Vec<Step>) {
        let mut trace = Vec::new();
        let eq = self.equiv(u.clone(), v.clone(), &mut trace, 0);
        (eq, trace)
    }

    fn equiv(&self, mut u: Word, mut v: Word, trace: &mut Vec<Step>, depth: usize) -> bool {
        assert!(depth < 10_000, "equality decision recursed too deep");
        let mut fuel = 1_000_000usize;
        loop {
            fuel -= 1;
            assert!(fuel > 0, "equality decision failed to make progress");
            if u == v {
                trace.push(Step::LiteralEqual);
                return true;
            }
            let Some(cop) = self.clean_overlap_prefix(&u) else {
                // No front occurrence means no relation word occurrence, so
                // nothing rewrites u and its class is {u}.
                trace.push(Step::NoCleanPrefix);
                return false;
            };
            if cop.start > 0 {
                // Equal words agree literally before the clean front, and
                // stripping that prefix keeps the front clean at zero.
                trace.push(Step::DumpPrefix(cop.start));
                if v.len() < cop.start || v.letters()[..cop.start] != u.letters()[..cop.start] {
                    trace.push(Step::FrontMismatch);
                    return false;
                }
                u = Word::from(&u.letters()[cop.start..]);
                v = Word::from(&v.letters()[cop.start..]);
            }
            let r = cop.word;
            // v must open with the same front or the front of a same-class
            // word; fronts are mutually prefix free so at most one fits.
            let matched = if v.starts_with(&self.xy[r]) {
                Some(r)
            } else {
                self.complements[r]
                    .iter()
                    .copied()
                    .find(|&c| v.starts_with(&self.xy[c]))
            };
            let Some(s_idx) = matched else {
                trace.push(Step::FrontMismatch);
                return false;
            };
            let u1 = Word::from(&u.letters()[self.xy[r].len()..]);
            let v1 = Word::from(&v.letters()[self.xy[s_idx].len()..]);
            let zr = &self.z[r];
            if s_idx == r {
                if u1.starts_with(zr) && v1.starts_with(zr) {
                    // Both words contain the full relation word, which may be
                    // swapped for any member of its class before comparing
                    // what follows.
                    trace.push(Step::Case1);
                    let u2 = Word::from(&u1.letters()[zr.len()..]);
                    let v2 = Word::from(&v1.letters()[zr.len()..]);
                    return self.branch_over_suffixes(r, &u2, &v2, trace, depth);
                }
                trace.push(Step::Case2);
                u = u1;
                v = v1;
                continue;
            }
            let zs = &self.z[s_idx];
            match (u1.starts_with(zr), v1.starts_with(zs)) {
                (true, true) => {
                    trace.push(Step::Case3);
                    let u2 = Word::from(&u1.letters()[zr.len()..]);
                    let v2 = Word::from(&v1.letters()[zs.len()..]);
                    return self.branch_over_suffixes(r, &u2, &v2, trace, depth);
                }
                (false, true) => {
                    // v's front completes to a full relation word; rewrite it
                    // to u's side and drop the shared front.
                    trace.push(Step::Case4);
                    let v2 = Word::from(&v1.letters()[zs.len()..]);
                    u = u1;
                    v = zr.concat(&v2);
                }
                (true, false) => {
                    trace.push(Step::Case5);
                    let u2 = Word::from(&u1.letters()[zr.len()..]);
                    u = zs.concat(&u2);
                    v = v1;
                }
                (false, false) => {
                    // Neither suffix is present whole. Equality can only
                    // route through the common tail of the two suffixes,
                    // which the remainder of u must be able to produce.
                    trace.push(Step::Case6);
                    let a = zr.letters();
                    let b = zs.letters();
                    let mut k = 0;
                    while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[b.len() - 1 - k] {
                        k += 1;
                    }
                    if k == 0 {
                        return false;
                    }
                    let z1 = &a[..a.len() - k];
                    let z2 = &b[..b.len() - k];
                    if !u1.letters().starts_with(z1) || !v1.letters().starts_with(z2) {
                        return false;
                    }
                    let zc = Word::from(&a[a.len() - k..]);
                    let u2 = Word::from(&u1.letters()[z1.len()..]);
                    let v2 = Word::from(&v1.letters()[z2.len()..]);
                    if !self.is_possible_prefix(&zc, &u2) {
                        return false;
                    }
                    u = u2;
                    v = v2;
                }
            }
        }
    }

    /// Equality of ẑ·u and ẑ·v for some piece suffix ẑ drawn from the class
    /// of relation word `r`.
    fn branch_over_suffixes(
        &self,
        r: usize,
        u: &Word,
        v: &Word,
        trace: &mut Vec<Step>,
        depth: usize,
    ) -> bool {
        for zhat in &self.z_parts[r] {
            let mark = trace.len();
            if self.equiv(zhat.concat(u), zhat.concat(v), trace, depth + 1) {
                return true;
            }
            trace.truncate(mark);
        }
        false
    }

    /// Whether some word equal to `u` begins with `z`. `z` must be a piece.
    pub fn is_possible_prefix(&self, z: &Word, u: &Word) -> bool {
        debug_assert!(self.table.is_piece(z.letters()));
        if u.starts_with(z) {
            return true;
        }
        let Some(cop) = self.clean_overlap_prefix(u) else {
            return false;
        };
        let zs = z.letters();
        let us = u.letters();
        // Everything equal to u keeps the letters before the clean front and
        // then opens with the front of a same-class word, whose longest
        // piece prefix is its X part. z must thread through that shape.
        if zs.len() <= cop.start || zs[..cop.start] != us[..cop.start] {
            return false;
        }
        let z2 = &zs[cop.start..];
        let r = cop.word;
        let tail = Word::from(&us[cop.end..]);
        for &c in &self.complements[r] {
            if self.xy[c].letters()[..self.x_len[c]].starts_with(z2) {
                // Rewriting the front needs the full relation word, so its
                // piece suffix must be producible from the tail.
                return self.is_possible_prefix(&self.z[r], &tail);
            }
        }
        false
    }
}

/// Words reachable from `start` by repeatedly applying single relations,
/// skipping words longer than `max_len` and stopping at `max_words` distinct
/// words. The flag is true when the set is the complete class: nothing was
/// skipped or cut off. Exponential; cross-checking only.
pub fn bfs_class(
    p: &Presentation,
    start: &Word,
    max_words: usize,
    max_len: usize,
) -> (HashSet<Word>, bool) {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut complete = true;
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(w) = queue.pop_front() {
        for n in p.rewrite_neighbors(&w) {
            if n.len() > max_len {
                complete = false;
                continue;
            }
            if seen.contains(&n) {
                continue;
            }
            if seen.len() >= max_words {
                complete = false;
                continue;
            }
            seen.insert(n.clone());
            queue.push_back(n);
        }
    }
    (seen, complete)
}

/// Reference answer for word equality by class enumeration: Some(answer)
/// when the caps allow a definite answer, None otherwise.
pub fn bfs_equivalent(
    p: &Presentation,
    u: &Word,
    v: &Word,
    max_words: usize,
    max_len: usize,
) -> Option<bool> {
    let (class, complete) = bfs_class(p, u, max_words, max_len);
    if class.contains(v) {
        Some(true)
    } else if complete {
        Some(false)
    } else {
        None
    }
}
