//! Random sampling of ordered presentations, exact small-scale enumeration,
//! Monte Carlo proportion estimates, and isomorphism-type counting.
//!
//! The sampling model: an ordered presentation of size n is a uniform
//! (shape, word) pair, where the shape is a weak composition of n into 2k
//! blocks and the word of length n is cut into relation words by the blocks.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cancel;
use crate::canonical;
use crate::error::{Error, Result};
use crate::pieces;
use crate::presentation::{Alphabet, Letter, Presentation, Relation, Word};

const ENUMERATION_GUARD: u64 = 10_000_000;

/// Lengths of the 2k relation words of an ordered presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub blocks: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthMode {
    /// Relation word lengths sum to n.
    Sum,
    /// Each length is uniform on [0, n], conditioned on the maximum being n.
    Max,
}

impl LengthMode {
    pub fn name(&self) -> &'static str {
        match self {
            LengthMode::Sum => "sum",
            LengthMode::Max => "max",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub alphabet_size: usize,
    pub relation_count: usize,
    pub length: usize,
    pub length_mode: LengthMode,
    pub seed: u64,
    pub trials: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    StrongC4,
    LeftCancellative,
    RightCancellative,
    Cancellative,
}

impl Property {
    pub fn name(&self) -> &'static str {
        match self {
            Property::StrongC4 => "strong-c4",
            Property::LeftCancellative => "left-cancellative",
            Property::RightCancellative => "right-cancellative",
            Property::Cancellative => "cancellative",
        }
    }

    pub fn from_name(s: &str) -> Option<Property> {
        match s {
            "strong-c4" => Some(Property::StrongC4),
            "left-cancellative" => Some(Property::LeftCancellative),
            "right-cancellative" => Some(Property::RightCancellative),
            "cancellative" => Some(Property::Cancellative),
            _ => None,
        }
    }
}

/// One CSV row of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ProportionEstimate {
    pub property: Property,
    pub alphabet_size: usize,
    pub relation_count: usize,
    pub length: usize,
    pub length_mode: LengthMode,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci95: f64,
    /// Samples whose degree check failed; the syntactic criterion was still
    /// evaluated for them.
    pub flagged: u64,
}

impl ProportionEstimate {
    pub fn csv_header() -> &'static str {
        "property,a,k,n,mode,trials,hits,estimate,ci95,flagged"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{}",
            self.property.name(),
            self.alphabet_size,
            self.relation_count,
            self.length,
            self.length_mode.name(),
            self.trials,
            self.hits,
            self.estimate,
            self.ci95,
            self.flagged
        )
    }
}

/// Number of weak compositions of s into r parts: C(s+r-1, r-1).
pub fn weak_composition_count(s: usize, r: usize) -> BigUint {
    assert!(r >= 1);
    let n = s + r - 1;
    let k = r - 1;
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// Uniform weak composition of n into r parts, by choosing r-1 bar slots
/// among n+r-1.
pub fn sample_shape(n: usize, r: usize, rng: &mut impl Rng) -> Shape {
    assert!(r >= 1);
    let mut bars: Vec<usize> = rand::seq::index::sample(rng, n + r - 1, r - 1).into_vec();
    bars.sort_unstable();
    let mut blocks = Vec::with_capacity(r);
    let mut prev = 0usize;
    for &b in &bars {
        blocks.push(b - prev);
        prev = b + 1;
    }
    blocks.push(n + r - 1 - prev);
    Shape { blocks }
}

fn sample_alphabet(a: usize) -> Alphabet {
    assert!((1..=26).contains(&a), "sampling alphabets use single letters a..z");
    let tokens = (0..a)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    Alphabet::new(tokens).unwrap()
}

fn sample_word(len: usize, a: usize, rng: &mut impl Rng) -> Word {
    Word::new((0..len).map(|_| rng.random_range(0..a as Letter)).collect())
}

pub fn sample_presentation(cfg: &SampleConfig, rng: &mut impl Rng) -> Presentation {
    let a = cfg.alphabet_size;
    let r = 2 * cfg.relation_count;
    let words: Vec<Word> = match cfg.length_mode {
        LengthMode::Sum => {
            let shape = sample_shape(cfg.length, r, rng);
            let filler = sample_word(cfg.length, a, rng);
            let mut words = Vec::with_capacity(r);
            let mut at = 0usize;
            for &b in &shape.blocks {
                words.push(Word::new(filler.letters()[at..at + b].to_vec()));
                at += b;
            }
            words
        }
        LengthMode::Max => {
            let lengths: Vec<usize> = loop {
                let draw: Vec<usize> =
                    (0..r).map(|_| rng.random_range(0..=cfg.length)).collect();
                if draw.iter().max() == Some(&cfg.length) {
                    break draw;
                }
            };
            lengths.iter().map(|&l| sample_word(l, a, rng)).collect()
        }
    };
    let relations = words
        .chunks(2)
        .map(|c| Relation::new(c[0].clone(), c[1].clone()))
        .collect();
    Presentation::new(sample_alphabet(a), relations).unwrap()
}

fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, r - 1) {
            let mut row = Vec::with_capacity(r);
            row.push(first);
            row.append(&mut rest);
            out.push(row);
        }
    }
    out
}

/// Every ordered presentation with the given parameters exactly once,
/// shapes in lexicographic order and filler words counting up base a.
pub struct PresentationEnumeration {
    alphabet: Alphabet,
    a: u64,
    n: usize,
    shapes: Vec<Vec<usize>>,
    shape_idx: usize,
    word: u64,
    word_count: u64,
}

impl Iterator for PresentationEnumeration {
    type Item = Presentation;

    fn next(&mut self) -> Option<Presentation> {
        if self.shape_idx >= self.shapes.len() {
            return None;
        }
        let mut digits = vec![0 as Letter; self.n];
        let mut w = self.word;
        for i in (0..self.n).rev() {
            digits[i] = (w % self.a) as Letter;
            w /= self.a;
        }
        let shape = &self.shapes[self.shape_idx];
        let mut relations = Vec::with_capacity(shape.len() / 2);
        let mut at = 0usize;
        let mut sides = Vec::with_capacity(shape.len());
        for &b in shape {
            sides.push(Word::new(digits[at..at + b].to_vec()));
            at += b;
        }
        for c in sides.chunks(2) {
            relations.push(Relation::new(c[0].clone(), c[1].clone()));
        }
        self.word += 1;
        if self.word == self.word_count {
            self.word = 0;
            self.shape_idx += 1;
        }
        Some(Presentation::new(self.alphabet.clone(), relations).unwrap())
    }
}

pub fn enumerate_presentations(a: usize, k: usize, n: usize) -> Result<PresentationEnumeration> {
    assert!(a >= 1 && k >= 1);
    let total = BigUint::from(a).pow(n as u32) * weak_composition_count(n, 2 * k);
    if total > BigUint::from(ENUMERATION_GUARD) {
        return Err(Error::Guard(format!(
            "enumeration of {total} presentations exceeds the {ENUMERATION_GUARD} guard"
        )));
    }
    Ok(PresentationEnumeration {
        alphabet: sample_alphabet(a),
        a: a as u64,
        n,
        shapes: compositions(n, 2 * k),
        shape_idx: 0,
        word: 0,
        word_count: (a as u64).pow(n as u32),
    })
}

/// Monte Carlo estimate of the proportion of sampled presentations with the
/// property. Cancellativity properties use the syntactic first/last-letter
/// criterion; samples failing the four-piece degree check are flagged and
/// left out of the estimate (the criterion is still evaluated for them, it
/// just carries no decision weight), so `trials` is the accepted count and
/// `trials + flagged` the configured one. Per-trial RNG streams make the
/// result independent of scheduling.
pub fn estimate_proportion(cfg: &SampleConfig, property: Property) -> ProportionEstimate {
    let (hits, flagged) = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i);
            let p = sample_presentation(cfg, &mut rng);
            let (hit, flag) = match property {
                Property::StrongC4 => (pieces::check_strong_c(&p, 4), false),
                Property::LeftCancellative => {
                    (cancel::left_violation(&p).is_none(), !pieces::check_c(&p, 4))
                }
                Property::RightCancellative => {
                    (cancel::right_violation(&p).is_none(), !pieces::check_c(&p, 4))
                }
                Property::Cancellative => (
                    cancel::left_violation(&p).is_none() && cancel::right_violation(&p).is_none(),
                    !pieces::check_c(&p, 4),
                ),
            };
            ((hit && !flag) as u64, flag as u64)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let trials = cfg.trials - flagged;
    let estimate = if trials == 0 { 0.0 } else { hits as f64 / trials as f64 };
    let ci95 = if trials == 0 {
        0.0
    } else {
        1.96 * (estimate * (1.0 - estimate) / trials as f64).sqrt()
    };
    ProportionEstimate {
        property,
        alphabet_size: cfg.alphabet_size,
        relation_count: cfg.relation_count,
        length: cfg.length,
        length_mode: cfg.length_mode,
        trials,
        hits,
        estimate,
        ci95,
        flagged,
    }
}

/// Enumerates all ordered presentations, keeps those that are strongly C(2),
/// and counts distinct canonical serializations among them.
pub fn count_isomorphism_types(a: usize, k: usize, n: usize) -> Result<(u64, u64)> {
    let mut strong = 0u64;
    let mut types: HashSet<String> = HashSet::new();
    for p in enumerate_presentations(a, k, n)? {
        if !pieces::check_strong_c(&p, 2) {
            continue;
        }
        strong += 1;
        types.insert(canonical::canonicalize(&p)?.serialization());
    }
    Ok((strong, types.len() as u64))
}
