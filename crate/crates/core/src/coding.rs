//! Urn sampling, typical sequences and yes/no question trees.
//!
//! A length-`N` sequence drawn from proportions `p` is typical with
//! probability close to one, has probability about `2^(-N H)`, and there are
//! about `2^(N H)` of them. Identifying the drawn sequence with yes/no
//! questions therefore takes about `N H` questions. The optimal questioning
//! strategy is a minimum-expected-depth prefix tree (a Huffman tree); grouping
//! draws into blocks brings the per-draw cost down towards `H`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{shannon, ProbDist};
use crate::rng::rng_from_seed;

/// Largest urn for which [`exact_sequence_count`] is evaluated.
pub const MAX_EXACT_BALLS: u64 = 60;
/// Largest block length for question trees.
pub const MAX_BLOCK: usize = 4;
/// Largest number of block outcomes for question trees.
pub const MAX_BLOCK_OUTCOMES: usize = 4096;

/// Number of distinct colour sequences for an urn with the given per-colour
/// counts: `N! / prod n_i!`.
pub fn exact_sequence_count(counts: &[u64]) -> Result<u128> {
    let total: u64 = counts.iter().sum();
    if total > MAX_EXACT_BALLS {
        return Err(Error::Overflow {
            total,
            max: MAX_EXACT_BALLS,
        });
    }
    let mut result: u128 = 1;
    let mut seen: u64 = 0;
    for &k in counts {
        seen += k;
        result = result
            .checked_mul(binomial(seen, k))
            .ok_or(Error::Overflow {
                total,
                max: MAX_EXACT_BALLS,
            })?;
    }
    Ok(result)
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `log2 W = N H(p)`, the size of the typical set in bits.
pub fn typical_set_log_size(p: &ProbDist, n_draws: u64) -> f64 {
    n_draws as f64 * shannon(p)
}

/// `-log2 p(sequence)` for a sequence containing exactly `p_i N` draws of
/// colour `i`; equal to [`typical_set_log_size`].
pub fn typical_sequence_surprisal(p: &ProbDist, n_draws: u64) -> f64 {
    let n = n_draws as f64;
    p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -(x * n) * x.log2())
        .sum()
}

/// Exact sequence count versus the `2^(N H)` estimate for one urn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypicalityComparison {
    pub total: u64,
    pub exact_log2: f64,
    pub asymptotic_log2: f64,
    /// `asymptotic_log2 - exact_log2`; its ratio to `total` shrinks as the urn grows.
    pub log_ratio: f64,
}

/// Compare the exact count of arrangements with `2^(N H)`, `H` taken from
/// the urn's own proportions.
pub fn compare_typicality(counts: &[u64]) -> Result<TypicalityComparison> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Invalid("empty urn".into()));
    }
    let exact_log2 = (exact_sequence_count(counts)? as f64).log2();
    let weights: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let asymptotic_log2 = typical_set_log_size(&ProbDist::from_weights(&weights)?, total);
    Ok(TypicalityComparison {
        total,
        exact_log2,
        asymptotic_log2,
        log_ratio: asymptotic_log2 - exact_log2,
    })
}

/// A source of symbols: labels with their proportions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSource {
    alphabet: Vec<String>,
    probs: ProbDist,
}

impl SymbolSource {
    pub fn new(alphabet: Vec<String>, probs: ProbDist) -> Result<Self> {
        if alphabet.len() != probs.len() {
            return Err(Error::LabelMismatch {
                labels: alphabet.len(),
                outcomes: probs.len(),
            });
        }
        Ok(Self { alphabet, probs })
    }

    /// Symbols named `s0, s1, ...`.
    pub fn from_probs(probs: ProbDist) -> Self {
        let alphabet = (0..probs.len()).map(|i| format!("s{i}")).collect();
        Self { alphabet, probs }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn probs(&self) -> &ProbDist {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    /// Distribution over blocks of `block` independent draws, outcomes in
    /// lexicographic order of symbol indices.
    pub fn block_distribution(&self, block: usize) -> Vec<(Vec<usize>, f64)> {
        let m = self.len();
        let count = m.pow(block as u32);
        (0..count)
            .map(|mut code| {
                let mut symbols = vec![0; block];
                for slot in symbols.iter_mut().rev() {
                    *slot = code % m;
                    code /= m;
                }
                let p = symbols.iter().map(|&s| self.probs.get(s)).product();
                (symbols, p)
            })
            .collect()
    }
}

/// One leaf of a question tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaf {
    /// Symbol indices of the block this leaf identifies.
    pub symbols: Vec<usize>,
    pub probability: f64,
    /// Answers from the root, `true` = yes.
    pub codeword: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
enum Node {
    Leaf(usize),
    Question(Box<Node>, Box<Node>),
}

/// A binary yes/no question tree over block outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionTree {
    block: usize,
    alphabet_size: usize,
    root: Node,
    leaves: Vec<Leaf>,
    /// Leaf index for each block outcome code; `None` for impossible blocks.
    lookup: Vec<Option<usize>>,
}

struct HeapItem {
    probability: f64,
    first: usize,
    node: Node,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapItem {}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.probability
            .total_cmp(&other.probability)
            .then(self.first.cmp(&other.first))
    }
}

/// Optimal (minimum expected number of questions) tree for blocks of
/// `block` draws from `source`.
///
/// Built by repeatedly merging the two least probable subtrees; ties are
/// broken by the lexicographically first outcome in each subtree, so the
/// result is deterministic. Impossible outcomes get no leaf, and a source
/// with a single possible outcome yields a zero-question tree.
pub fn build_question_tree(source: &SymbolSource, block: usize) -> Result<QuestionTree> {
    let m = source.len();
    let too_large = || Error::BlockTooLarge { block, alphabet: m };
    if !(1..=MAX_BLOCK).contains(&block) {
        return Err(too_large());
    }
    let outcomes = m
        .checked_pow(block as u32)
        .filter(|&c| c <= MAX_BLOCK_OUTCOMES)
        .ok_or_else(too_large)?;

    let blocks = source.block_distribution(block);
    let mut leaves = Vec::new();
    let mut lookup = vec![None; outcomes];
    let mut heap = BinaryHeap::new();
    for (code, (symbols, p)) in blocks.into_iter().enumerate() {
        if p > 0.0 {
            lookup[code] = Some(leaves.len());
            heap.push(Reverse(HeapItem {
                probability: p,
                first: code,
                node: Node::Leaf(leaves.len()),
            }));
            leaves.push(Leaf {
                symbols,
                probability: p,
                codeword: Vec::new(),
            });
        }
    }

    while heap.len() > 1 {
        let Reverse(a) = heap.pop().expect("len > 1");
        let Reverse(b) = heap.pop().expect("len > 1");
        heap.push(Reverse(HeapItem {
            probability: a.probability + b.probability,
            first: a.first.min(b.first),
            node: Node::Question(Box::new(a.node), Box::new(b.node)),
        }));
    }
    let root = heap.pop().expect("a valid distribution has a possible outcome").0.node;

    fn assign(node: &Node, path: &mut Vec<bool>, leaves: &mut [Leaf]) {
        match node {
            Node::Leaf(i) => leaves[*i].codeword = path.clone(),
            Node::Question(yes, no) => {
                path.push(true);
                assign(yes, path, leaves);
                path.pop();
                path.push(false);
                assign(no, path, leaves);
                path.pop();
            }
        }
    }
    assign(&root, &mut Vec::new(), &mut leaves);

    Ok(QuestionTree {
        block,
        alphabet_size: m,
        root,
        leaves,
        lookup,
    })
}

impl QuestionTree {
    pub fn block(&self) -> usize {
        self.block
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    /// Expected number of questions per block.
    pub fn expected_depth(&self) -> f64 {
        self.leaves
            .iter()
            .map(|l| l.probability * l.codeword.len() as f64)
            .sum()
    }

    /// Expected number of questions per draw.
    pub fn questions_per_symbol(&self) -> f64 {
        self.expected_depth() / self.block as f64
    }

    /// `sum_leaves 2^-depth`.
    pub fn kraft_sum(&self) -> f64 {
        self.leaves
            .iter()
            .map(|l| (-(l.codeword.len() as f64)).exp2())
            .sum()
    }

    /// No codeword is a prefix of another.
    pub fn is_prefix_free(&self) -> bool {
        let words: Vec<&Vec<bool>> = self.leaves.iter().map(|l| &l.codeword).collect();
        words.iter().enumerate().all(|(i, a)| {
            words
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !b.starts_with(a))
        })
    }

    /// Number of questions needed to identify the block `symbols`.
    pub fn questions_for(&self, symbols: &[usize]) -> Option<usize> {
        if symbols.len() != self.block || symbols.iter().any(|&s| s >= self.alphabet_size) {
            return None;
        }
        let code = symbols.iter().fold(0, |acc, &s| acc * self.alphabet_size + s);
        self.lookup[code].map(|i| self.leaves[i].codeword.len())
    }

    /// Follow yes/no answers from the root; `None` if they do not end on a leaf.
    pub fn decode(&self, answers: &[bool]) -> Option<&[usize]> {
        let mut node = &self.root;
        for &yes in answers {
            node = match node {
                Node::Question(y, n) => {
                    if yes {
                        y
                    } else {
                        n
                    }
                }
                Node::Leaf(_) => return None,
            };
        }
        match node {
            Node::Leaf(i) => Some(&self.leaves[*i].symbols),
            Node::Question(..) => None,
        }
    }
}

/// Result of drawing from a source and identifying the draws with a tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawReport {
    pub block: usize,
    /// Labels of the drawn symbols.
    pub sequence: Vec<String>,
    /// Questions asked so far after each draw. Block questions are counted
    /// at the last draw of the block.
    pub cumulative_questions: Vec<u64>,
    pub questions_asked: u64,
    pub questions_per_symbol: f64,
}

impl DrawReport {
    /// CSV rows `draw_index,symbol,cumulative_questions` with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("draw_index,symbol,cumulative_questions\n");
        for (i, (s, q)) in self.sequence.iter().zip(&self.cumulative_questions).enumerate() {
            out.push_str(&format!("{i},{s},{q}\n"));
        }
        out
    }
}

/// Draw `n_draws` symbols with the given seed and count the questions the
/// tree needs to identify them. Full blocks use `tree`; a trailing partial
/// block is identified draw by draw with the single-symbol tree.
pub fn simulate_drawings(
    source: &SymbolSource,
    n_draws: usize,
    seed: u64,
    tree: &QuestionTree,
) -> Result<DrawReport> {
    if tree.alphabet_size() != source.len() {
        return Err(Error::TreeSourceMismatch {
            tree: tree.alphabet_size(),
            source_len: source.len(),
        });
    }
    let single = if tree.block() == 1 {
        None
    } else {
        Some(build_question_tree(source, 1)?)
    };

    let mut rng = rng_from_seed(seed);
    let cdf: Vec<f64> = source
        .probs()
        .probs()
        .iter()
        .scan(0.0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let last_possible = source
        .probs()
        .probs()
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("distribution has a possible outcome");
    let draws: Vec<usize> = (0..n_draws)
        .map(|_| {
            let u: f64 = rng.random();
            cdf.iter()
                .position(|&c| u < c)
                .unwrap_or(last_possible)
                .min(last_possible)
        })
        .collect();

    let block = tree.block();
    let full = n_draws / block * block;
    let mut cumulative = Vec::with_capacity(n_draws);
    let mut asked: u64 = 0;
    for chunk in draws[..full].chunks(block) {
        let q = tree.questions_for(chunk).expect("drawn block has positive probability");
        cumulative.extend(std::iter::repeat_n(asked, block - 1));
        asked += q as u64;
        cumulative.push(asked);
    }
    let per_symbol = single.as_ref().unwrap_or(tree);
    for &s in &draws[full..] {
        asked += per_symbol.questions_for(&[s]).expect("drawn symbol has positive probability") as u64;
        cumulative.push(asked);
    }

    Ok(DrawReport {
        block,
        sequence: draws.iter().map(|&s| source.alphabet()[s].clone()).collect(),
        cumulative_questions: cumulative,
        questions_asked: asked,
        questions_per_symbol: if n_draws == 0 {
            0.0
        } else {
            asked as f64 / n_draws as f64
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn source(p: &[f64]) -> SymbolSource {
        SymbolSource::from_probs(ProbDist::new(p.to_vec()).unwrap())
    }

    /// Minimum expected length over all integer length assignments obeying
    /// Kraft's inequality; brute force over non-decreasing lengths matched to
    /// probabilities sorted in decreasing order.
    fn brute_force_optimal(probs: &[f64]) -> f64 {
        let mut p: Vec<f64> = probs.iter().cloned().filter(|&x| x > 0.0).collect();
        p.sort_by(|a, b| b.total_cmp(a));
        if p.len() == 1 {
            return 0.0;
        }
        let max_len = p.len() - 1;
        let mut best = f64::INFINITY;
        let mut lengths = vec![1usize; p.len()];
        loop {
            let kraft: f64 = lengths.iter().map(|&l| (-(l as f64)).exp2()).sum();
            if kraft <= 1.0 + 1e-12 {
                let cost: f64 = p.iter().zip(&lengths).map(|(x, &l)| x * l as f64).sum();
                best = best.min(cost);
            }
            // next non-decreasing sequence
            let mut i = lengths.len();
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if lengths[i] < max_len {
                    lengths[i] += 1;
                    let v = lengths[i];
                    for l in lengths[i + 1..].iter_mut() {
                        *l = v;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn urn_counts() {
        assert_eq!(exact_sequence_count(&[0, 4]).unwrap(), 1);
        assert_eq!(exact_sequence_count(&[4]).unwrap(), 1);
        assert_eq!(exact_sequence_count(&[3, 1]).unwrap(), 4);
        assert_eq!(exact_sequence_count(&[2, 2]).unwrap(), 6);
        assert_eq!(exact_sequence_count(&[1, 1, 1, 1]).unwrap(), 24);
    }

    #[test]
    fn urn_count_matches_pascal() {
        let mut row = vec![1u128];
        for n in 1..=60u64 {
            let mut next = vec![1u128; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(exact_sequence_count(&[k, n - k]).unwrap(), row[k as usize]);
            }
        }
    }

    #[test]
    fn urn_overflow() {
        assert!(matches!(exact_sequence_count(&[30, 31]), Err(Error::Overflow { .. })));
        assert!(exact_sequence_count(&[15, 15, 15, 15]).is_ok());
    }

    #[test]
    fn typical_set_sizes() {
        let half = ProbDist::uniform(2);
        assert_eq!(typical_set_log_size(&half, 4), 4.0);
        assert_eq!(typical_set_log_size(&ProbDist::new(vec![1.0, 0.0]).unwrap(), 77), 0.0);
        let p = ProbDist::new(vec![0.5, 0.25, 0.25]).unwrap();
        assert_abs_diff_eq!(typical_set_log_size(&p, 100), 150.0, epsilon = 1e-12);
        assert_abs_diff_eq!(typical_sequence_surprisal(&p, 100), 150.0, epsilon = 1e-12);
    }

    #[test]
    fn typicality_gap_shrinks_per_draw() {
        let small = compare_typicality(&[2, 2]).unwrap();
        let large = compare_typicality(&[30, 30]).unwrap();
        assert!(small.log_ratio > 0.0);
        assert!(large.log_ratio / 60.0 < small.log_ratio / 4.0);
    }

    #[test]
    fn uniform_four_is_balanced() {
        let t = build_question_tree(&source(&[0.25; 4]), 1).unwrap();
        assert!(t.leaves().iter().all(|l| l.codeword.len() == 2));
        assert_eq!(t.expected_depth(), 2.0);
    }

    #[test]
    fn dyadic_source_meets_entropy() {
        let t = build_question_tree(&source(&[0.5, 0.25, 0.25]), 1).unwrap();
        assert_eq!(t.expected_depth(), 1.5);
        assert_eq!(brute_force_optimal(&[0.5, 0.25, 0.25]), 1.5);
    }

    #[test]
    fn skewed_source_blocks() {
        let s = source(&[0.9, 0.1]);
        let t1 = build_question_tree(&s, 1).unwrap();
        assert_eq!(t1.expected_depth(), 1.0);
        let t3 = build_question_tree(&s, 3).unwrap();
        let probs: Vec<f64> = s.block_distribution(3).iter().map(|b| b.1).collect();
        assert_abs_diff_eq!(t3.expected_depth(), brute_force_optimal(&probs), epsilon = 1e-12);
        assert!(t3.questions_per_symbol() < 0.6);
    }

    #[test]
    fn huffman_matches_brute_force() {
        let mut rng = rng_from_seed(99);
        for _ in 0..50 {
            let n = rng.random_range(2..=7);
            let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.01).collect();
            let p = ProbDist::from_weights(&w).unwrap();
            let t = build_question_tree(&SymbolSource::from_probs(p.clone()), 1).unwrap();
            assert_abs_diff_eq!(t.expected_depth(), brute_force_optimal(p.probs()), epsilon = 1e-12);
        }
    }

    #[test]
    fn degenerate_source() {
        let s = source(&[1.0, 0.0]);
        let t = build_question_tree(&s, 2).unwrap();
        assert_eq!(t.leaves().len(), 1);
        assert_eq!(t.expected_depth(), 0.0);
        assert_eq!(t.kraft_sum(), 1.0);
        let r = simulate_drawings(&s, 100, 1, &t).unwrap();
        assert_eq!(r.questions_asked, 0);
        assert_eq!(r.questions_per_symbol, 0.0);
        assert!(r.sequence.iter().all(|x| x == "s0"));
    }

    #[test]
    fn block_limits() {
        let s = source(&[0.5, 0.5]);
        assert!(matches!(build_question_tree(&s, 0), Err(Error::BlockTooLarge { .. })));
        assert!(matches!(build_question_tree(&s, 5), Err(Error::BlockTooLarge { .. })));
        let wide = SymbolSource::from_probs(ProbDist::uniform(9));
        assert!(matches!(build_question_tree(&wide, 4), Err(Error::BlockTooLarge { .. })));
        assert!(build_question_tree(&SymbolSource::from_probs(ProbDist::uniform(8)), 4).is_ok());
    }

    #[test]
    fn tree_structure() {
        let t = build_question_tree(&source(&[0.4, 0.3, 0.2, 0.1]), 2).unwrap();
        assert!(t.is_prefix_free());
        assert_abs_diff_eq!(t.kraft_sum(), 1.0, epsilon = 1e-15);
        for leaf in t.leaves() {
            assert_eq!(t.decode(&leaf.codeword), Some(leaf.symbols.as_slice()));
        }
    }

    #[test]
    fn zero_probability_symbols_get_no_leaf() {
        let t = build_question_tree(&source(&[0.5, 0.0, 0.5]), 1).unwrap();
        assert_eq!(t.leaves().len(), 2);
        assert_eq!(t.questions_for(&[1]), None);
        assert_eq!(t.questions_for(&[2]), Some(1));
    }

    #[test]
    fn fair_coin_needs_one_question() {
        let s = source(&[0.5, 0.5]);
        let t = build_question_tree(&s, 1).unwrap();
        let r = simulate_drawings(&s, 10_000, 3, &t).unwrap();
        assert_eq!(r.questions_per_symbol, 1.0);
    }

    #[test]
    fn dyadic_simulation_converges() {
        let s = source(&[0.5, 0.25, 0.25]);
        let t = build_question_tree(&s, 1).unwrap();
        let r = simulate_drawings(&s, 10_000, 42, &t).unwrap();
        assert!((r.questions_per_symbol - 1.5).abs() < 0.02, "{}", r.questions_per_symbol);
    }

    #[test]
    fn simulation_is_deterministic_and_padded() {
        let s = source(&[0.6, 0.3, 0.1]);
        let t = build_question_tree(&s, 3).unwrap();
        let a = simulate_drawings(&s, 101, 5, &t).unwrap();
        let b = simulate_drawings(&s, 101, 5, &t).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sequence.len(), 101);
        assert_eq!(a.cumulative_questions.len(), 101);
        assert_eq!(*a.cumulative_questions.last().unwrap(), a.questions_asked);
        assert!(a.cumulative_questions.windows(2).all(|w| w[0] <= w[1]));
        assert!(a.to_csv().starts_with("draw_index,symbol,cumulative_questions\n0,"));
    }

    #[test]
    fn simulation_rejects_foreign_tree() {
        let t = build_question_tree(&source(&[0.5, 0.5]), 1).unwrap();
        assert!(matches!(
            simulate_drawings(&source(&[0.2, 0.3, 0.5]), 10, 0, &t),
            Err(Error::TreeSourceMismatch { .. })
        ));
    }
}
