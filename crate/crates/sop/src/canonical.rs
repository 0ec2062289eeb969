//! Redundant generator elimination, canonical forms, and the isomorphism
//! decision.
//!
//! A generator is redundant when a nontrivial relation equates it with some
//! word. Eliminating all of them, closing the relations into an equivalence,
//! pruning classes with no proper complement, and relabeling to the
//! byte-least serialization gives a form that is bit-identical exactly for
//! isomorphic monoids, provided no relation word is a product of fewer than
//! two pieces.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::pieces::{self, PieceTable};
use crate::presentation::{Alphabet, Letter, Presentation, Relation, Word};

/// Token-level map between two alphabets. Pairs are (source, target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBijection {
    pub pairs: Vec<(String, String)>,
}

impl GeneratorBijection {
    pub fn identity(a: &Alphabet) -> GeneratorBijection {
        GeneratorBijection {
            pairs: a.tokens().iter().map(|t| (t.clone(), t.clone())).collect(),
        }
    }

    pub fn inverse(&self) -> GeneratorBijection {
        GeneratorBijection {
            pairs: self.pairs.iter().map(|(f, t)| (t.clone(), f.clone())).collect(),
        }
    }
}

/// Eliminated generator tokens paired with their replacement words, in
/// elimination order.
pub type Provenance = Vec<(String, Vec<String>)>;

/// Output of [`canonicalize`]: the canonical presentation plus the eliminated
/// generators with their replacement words, in elimination order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPresentation {
    pub presentation: Presentation,
    pub provenance: Provenance,
}

impl CanonicalPresentation {
    /// Bit-identical across presentations of isomorphic monoids.
    pub fn serialization(&self) -> String {
        self.presentation.serialize()
    }
}

/// The lowest-indexed generator that a nontrivial relation equates with some
/// word and that occurs in no other nontrivial relation word, with its
/// shortest (then lexicographically least) replacement. When no relation
/// word is a product of fewer than two pieces, every generator with a
/// defining relation passes the occurrence filter, so absence certifies that
/// no generator is redundant.
pub fn find_redundant_generator(p: &Presentation) -> Option<(Letter, Word)> {
    let size = p.alphabet().size();
    let mut candidates: Vec<Vec<Word>> = vec![Vec::new(); size];
    for r in p.relations() {
        if r.is_trivial() {
            continue;
        }
        if r.lhs.len() == 1 {
            candidates[r.lhs.letters()[0] as usize].push(r.rhs.clone());
        }
        if r.rhs.len() == 1 {
            candidates[r.rhs.letters()[0] as usize].push(r.lhs.clone());
        }
    }
    for (g, words) in candidates.iter().enumerate() {
        if words.is_empty() {
            continue;
        }
        let gw = Word::new(vec![g as Letter]);
        let blocked = p.relations().iter().any(|r| {
            !r.is_trivial()
                && [&r.lhs, &r.rhs]
                    .into_iter()
                    .any(|w| *w != gw && w.letters().contains(&(g as Letter)))
        });
        if blocked {
            continue;
        }
        let w = words.iter().min().unwrap().clone();
        return Some((g as Letter, w));
    }
    None
}

/// Removes `g` from the alphabet. Relations with `g` itself as a side are
/// replaced by all ordered pairs over the words `g` was equated with (in
/// first-occurrence order, diagonal included); everything else is kept.
/// Trivial relations mentioning `g` assert nothing and are dropped. Errors
/// when `g` has no defining relation or occurs in a word that must survive.
pub fn eliminate_generator(p: &Presentation, g: Letter) -> Result<Presentation> {
    let size = p.alphabet().size();
    if (g as usize) >= size {
        return Err(Error::precondition(format!(
            "letter index {g} out of range for alphabet of size {size}"
        )));
    }
    let token = p.alphabet().token(g).to_owned();
    let gw = Word::new(vec![g]);
    let mut hat: Vec<Word> = Vec::new();
    for r in p.relations() {
        for (side, other) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            if *side == gw && *other != gw && !hat.contains(other) {
                hat.push(other.clone());
            }
        }
    }
    if hat.is_empty() {
        return Err(Error::precondition(format!(
            "generator `{token}` has no defining relation"
        )));
    }
    for w in &hat {
        if w.letters().contains(&g) {
            return Err(Error::precondition(format!(
                "generator `{token}` occurs in its own replacement `{}`",
                p.render_word(w)
            )));
        }
    }
    let mut kept: Vec<Relation> = Vec::new();
    for r in p.relations() {
        if r.lhs == gw || r.rhs == gw {
            continue;
        }
        if r.lhs.letters().contains(&g) || r.rhs.letters().contains(&g) {
            if r.is_trivial() {
                continue;
            }
            return Err(Error::precondition(format!(
                "generator `{token}` occurs in surviving relation `{} = {}`",
                p.render_word(&r.lhs),
                p.render_word(&r.rhs)
            )));
        }
        kept.push(r.clone());
    }
    for u in &hat {
        for v in &hat {
            kept.push(Relation::new(u.clone(), v.clone()));
        }
    }
    let mut seen = HashSet::new();
    kept.retain(|r| seen.insert((r.lhs.clone(), r.rhs.clone())));

    let tokens: Vec<String> = p
        .alphabet()
        .tokens()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != g as usize)
        .map(|(_, t)| t.clone())
        .collect();
    let remap = |w: &Word| {
        Word::new(
            w.letters()
                .iter()
                .map(|&l| if l > g { l - 1 } else { l })
                .collect(),
        )
    };
    let relations = kept
        .iter()
        .map(|r| Relation::new(remap(&r.lhs), remap(&r.rhs)))
        .collect();
    Presentation::new(Alphabet::new(tokens)?, relations)
}

/// Eliminates redundant generators until none is left. Returns the reduced
/// presentation and, per elimination, the removed token with its replacement
/// word as tokens of the presentation at that step. Errors when a redundant
/// generator survives that the occurrence filter can never release.
pub fn generator_minimal(p: &Presentation) -> Result<(Presentation, Provenance)> {
    let mut cur = p.clone();
    let mut provenance = Vec::new();
    while let Some((g, w)) = find_redundant_generator(&cur) {
        let token = cur.alphabet().token(g).to_owned();
        let replacement = w
            .letters()
            .iter()
            .map(|&l| cur.alphabet().token(l).to_owned())
            .collect();
        cur = eliminate_generator(&cur, g)?;
        provenance.push((token, replacement));
    }
    for r in cur.relations() {
        if !r.is_trivial() && (r.lhs.len() == 1 || r.rhs.len() == 1) {
            return Err(Error::precondition(format!(
                "relation `{} = {}` keeps a generator redundant but not eliminable",
                cur.render_word(&r.lhs),
                cur.render_word(&r.rhs)
            )));
        }
    }
    Ok((cur, provenance))
}

/// Rewrites a token sequence through the eliminations in order, replacing
/// each eliminated generator by its replacement tokens.
pub fn apply_eliminations(tokens: &[String], provenance: &Provenance) -> Vec<String> {
    let mut cur: Vec<String> = tokens.to_vec();
    for (gone, replacement) in provenance {
        cur = cur
            .into_iter()
            .flat_map(|t| {
                if &t == gone {
                    replacement.clone()
                } else {
                    vec![t]
                }
            })
            .collect();
    }
    cur
}

/// One relation line of the canonical document, as index words.
type LineKey = (Vec<Letter>, Vec<Letter>);

/// One alphabet assignment realizing the minimal document prefix built so
/// far. New indices are handed out at first occurrence, so `next` equals
/// the number of assigned letters.
#[derive(Clone, PartialEq, Eq, Hash)]
struct LabelState {
    assign: Vec<Option<Letter>>,
    next: Letter,
    remaining: Vec<bool>,
}

/// Least rendering of `rel` as the next document line under `st`, numbering
/// unassigned letters upward from `st.next` at first occurrence. Returns the
/// line and the extended state without `rel`.
fn greedy_render(rel: &Relation, ri: usize, st: &LabelState) -> (LineKey, LabelState) {
    let mut out = st.clone();
    out.remaining[ri] = false;
    let mut map_word = |w: &Word| -> Vec<Letter> {
        w.letters()
            .iter()
            .map(|&l| match out.assign[l as usize] {
                Some(i) => i,
                None => {
                    let i = out.next;
                    out.assign[l as usize] = Some(i);
                    out.next += 1;
                    i
                }
            })
            .collect()
    };
    let lhs = map_word(&rel.lhs);
    let rhs = map_word(&rel.rhs);
    ((lhs, rhs), out)
}

/// Relabeled relation list whose sorted line sequence is lexicographically
/// least over all alphabet bijections, lines compared as index-word pairs.
/// Every line is forced: it is the least rendering any remaining relation
/// admits under any assignment realizing the prefix, so the document is
/// unique even when several assignments realize it. Extending an assignment
/// never lowers a line's least rendering, hence the output stays sorted.
fn minimal_relation_list(pruned: &Presentation) -> Vec<Relation> {
    let rels = pruned.relations();
    let m = pruned.alphabet().size();
    let mut frontier = vec![LabelState {
        assign: vec![None; m],
        next: 0,
        remaining: vec![true; rels.len()],
    }];
    let mut doc: Vec<LineKey> = Vec::with_capacity(rels.len());
    for _ in 0..rels.len() {
        let mut best: Option<LineKey> = None;
        let mut successors: Vec<LabelState> = Vec::new();
        let mut seen: HashSet<LabelState> = HashSet::new();
        for state in &frontier {
            for (ri, rel) in rels.iter().enumerate() {
                if !state.remaining[ri] {
                    continue;
                }
                let (key, ext) = greedy_render(rel, ri, state);
                match &best {
                    Some(b) if key > *b => continue,
                    Some(b) if key == *b => {
                        if seen.insert(ext.clone()) {
                            successors.push(ext);
                        }
                    }
                    _ => {
                        best = Some(key);
                        successors.clear();
                        seen.clear();
                        seen.insert(ext.clone());
                        successors.push(ext);
                    }
                }
            }
        }
        doc.push(best.expect("a remaining relation exists"));
        frontier = successors;
    }
    doc.into_iter()
        .map(|(lhs, rhs)| Relation::new(Word::new(lhs), Word::new(rhs)))
        .collect()
}

/// Generator-minimal form, relations closed into an equivalence, relation
/// words with no proper complement pruned, alphabet renamed to g0, g1, …
/// choosing the relabeling whose sorted serialization is byte-least. Errors
/// when some relation word is a product of fewer than two pieces.
pub fn canonicalize(p: &Presentation) -> Result<CanonicalPresentation> {
    if let Some((w, d)) = pieces::c_violation(p, 2) {
        return Err(Error::precondition(format!(
            "every relation word must be a product of at least 2 pieces; `{}` is a product of {}",
            p.render_word(&w),
            d.len()
        )));
    }
    let (minimal, provenance) = generator_minimal(p)?;
    let closed = minimal.equivalence_closure();
    let classes = closed.relation_word_classes();
    let words = closed.relation_words();
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &classes {
        *class_size.entry(c).or_insert(0) += 1;
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let pruned_relations: Vec<Relation> = closed
        .relations()
        .iter()
        .filter(|r| class_size[&classes[index[&r.lhs]]] >= 2)
        .cloned()
        .collect();
    let pruned = Presentation::new(closed.alphabet().clone(), pruned_relations)?;

    let m = pruned.alphabet().size();
    let canon_tokens: Vec<String> = (0..m).map(|i| format!("g{i}")).collect();
    let canon_alphabet = Alphabet::new(canon_tokens)?;
    let relations = minimal_relation_list(&pruned);
    Ok(CanonicalPresentation {
        presentation: Presentation::new(canon_alphabet, relations)?,
        provenance,
    })
}

fn letter_map(p: &Presentation, q: &Presentation, b: &GeneratorBijection) -> Result<Vec<Letter>> {
    let mut map: Vec<Option<Letter>> = vec![None; p.alphabet().size()];
    let mut targets = HashSet::new();
    for (from, to) in &b.pairs {
        let Some(src) = p.alphabet().index_of(from) else {
            return Err(Error::precondition(format!(
                "map source `{from}` is not a generator of the left presentation"
            )));
        };
        let Some(dst) = q.alphabet().index_of(to) else {
            return Err(Error::precondition(format!(
                "map target `{to}` is not a generator of the right presentation"
            )));
        };
        if map[src as usize].replace(dst).is_some() {
            return Err(Error::precondition(format!("map source `{from}` repeated")));
        }
        if !targets.insert(dst) {
            return Err(Error::precondition(format!("map target `{to}` repeated")));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| {
                Error::precondition(format!(
                    "map is not total: generator `{}` has no image",
                    p.alphabet().token(i as Letter)
                ))
            })
        })
        .collect()
}

/// True when mapping generators through `b` sends every relation of `p`,
/// as an ordered pair, to a relation literally present in `q`.
pub fn inclusion_check(p: &Presentation, q: &Presentation, b: &GeneratorBijection) -> Result<bool> {
    let map = letter_map(p, q, b)?;
    let sigma = |w: &Word| Word::new(w.letters().iter().map(|&l| map[l as usize]).collect());
    let have: HashSet<(&Word, &Word)> = q.relations().iter().map(|r| (&r.lhs, &r.rhs)).collect();
    Ok(p
        .relations()
        .iter()
        .all(|r| have.contains(&(&sigma(&r.lhs), &sigma(&r.rhs)))))
}

fn piece_length_profile(p: &Presentation) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for piece in PieceTable::build(p).sorted_pieces() {
        *counts.entry(piece.len()).or_insert(0) += 1;
    }
    let mut v: Vec<(usize, usize)> = counts.into_iter().collect();
    v.sort();
    v.into_iter().flat_map(|(l, c)| [l, c]).collect()
}

/// First generator bijection (in lexicographic order of the image sequence)
/// that is an inclusion in both directions, if any. Invariant prechecks only
/// prune; they never change the answer.
pub fn presentations_isomorphic(
    p: &Presentation,
    q: &Presentation,
) -> Option<GeneratorBijection> {
    let m = p.alphabet().size();
    if m != q.alphabet().size() {
        return None;
    }
    let shapes = |x: &Presentation| -> HashSet<(usize, usize)> {
        x.relations().iter().map(|r| (r.lhs.len(), r.rhs.len())).collect()
    };
    if shapes(p) != shapes(q) {
        return None;
    }
    if piece_length_profile(p) != piece_length_profile(q) {
        return None;
    }

    // Depth-first over images in increasing order, so the first hit is the
    // bijection with the lexicographically least image sequence. A partial
    // map already fails when some fully-mapped relation of p is not a
    // relation of q, and no completion can repair that.
    let p_set: HashSet<(Vec<Letter>, Vec<Letter>)> = p
        .relations()
        .iter()
        .map(|r| (r.lhs.letters().to_vec(), r.rhs.letters().to_vec()))
        .collect();

    fn dfs(
        depth: usize,
        perm: &mut Vec<Letter>,
        used: &mut Vec<bool>,
        p: &Presentation,
        q: &Presentation,
        p_set: &HashSet<(Vec<Letter>, Vec<Letter>)>,
    ) -> bool {
        let m = p.alphabet().size();
        if depth == m {
            let inv = {
                let mut inv = vec![0 as Letter; m];
                for (i, &j) in perm.iter().enumerate() {
                    inv[j as usize] = i as Letter;
                }
                inv
            };
            return q.relations().iter().all(|r| {
                let back = |w: &Word| -> Vec<Letter> {
                    w.letters().iter().map(|&l| inv[l as usize]).collect()
                };
                p_set.contains(&(back(&r.lhs), back(&r.rhs)))
            });
        }
        for j in 0..m as Letter {
            if used[j as usize] {
                continue;
            }
            perm.push(j);
            used[j as usize] = true;
            // every relation of p must still match some relation of q:
            // mapped letters positionally equal, unmapped letters matched
            // consistently within the relation to unused targets
            let viable = p.relations().iter().all(|r| {
                q.relations().iter().any(|s| {
                    r.lhs.len() == s.lhs.len() && r.rhs.len() == s.rhs.len() && {
                        let mut fwd: HashMap<Letter, Letter> = HashMap::new();
                        let mut back: HashMap<Letter, Letter> = HashMap::new();
                        r.lhs
                            .letters()
                            .iter()
                            .chain(r.rhs.letters())
                            .zip(s.lhs.letters().iter().chain(s.rhs.letters()))
                            .all(|(&pl, &ql)| {
                                if (pl as usize) < perm.len() {
                                    perm[pl as usize] == ql
                                } else {
                                    !used[ql as usize]
                                        && *fwd.entry(pl).or_insert(ql) == ql
                                        && *back.entry(ql).or_insert(pl) == pl
                                }
                            })
                    }
                })
            });
            if viable && dfs(depth + 1, perm, used, p, q, p_set) {
                return true;
            }
            perm.pop();
            used[j as usize] = false;
        }
        false
    }

    let mut perm: Vec<Letter> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    if dfs(0, &mut perm, &mut used, p, q, &p_set) {
        let b = GeneratorBijection {
            pairs: (0..m)
                .map(|i| {
                    (
                        p.alphabet().token(i as Letter).to_owned(),
                        q.alphabet().token(perm[i]).to_owned(),
                    )
                })
                .collect(),
        };
        debug_assert!(inclusion_check(p, q, &b).expect("constructed map is total"));
        debug_assert!(inclusion_check(q, p, &b.inverse()).expect("constructed map is total"));
        return Some(b);
    }
    None
}

/// Whether two presentations present isomorphic monoids, decided by
/// comparing canonical serializations. Errors when either input has a
/// relation word that is a product of fewer than two pieces.
pub fn monoids_isomorphic(p: &Presentation, q: &Presentation) -> Result<bool> {
    Ok(canonicalize(p)?.serialization() == canonicalize(q)?.serialization())
}
