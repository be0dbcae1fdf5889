//! Tietze simplification and Todd–Coxeter coset enumeration for finite presentations.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::fundamental::presentation::GroupPresentation;
use crate::fundamental::snf::{abelian_invariants_sparse, AbelianInvariants};
use crate::fundamental::words::{cyclic_reduce, free_reduce, inverse, Letter, Word};

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;
pub const DEFAULT_COSET_BUDGET: usize = 200_000;

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    abelian_invariants_sparse(p.generators, &p.sparse_relation_matrix())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tietze {
    pub presentation: GroupPresentation,
    /// Word in the new generators for each original generator.
    pub substitution: Vec<Word>,
}

impl Tietze {
    pub fn apply(&self, w: &[Letter]) -> Word {
        free_reduce(&substitute(w, &self.substitution))
    }
}

fn substitute(w: &[Letter], by: &[Word]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        if l.inverse {
            out.extend(inverse(&by[l.gen]));
        } else {
            out.extend(by[l.gen].iter().copied());
        }
    }
    out
}

/// Smallest rotation of `w` or of its inverse, so that equal cyclic relators coincide.
fn canonical_relator(w: &[Letter]) -> Word {
    let inv = inverse(w);
    let mut best = w.to_vec();
    for cand in [w, &inv[..]] {
        for i in 0..cand.len() {
            let rot: Word = cand[i..].iter().chain(&cand[..i]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Relators kept canonical and deduplicated, indexed by the generators they contain.
struct RelatorStore {
    words: Vec<Option<Word>>,
    order: BTreeSet<(usize, Word, usize)>,
    /// Relators in which some generator occurs exactly once, in the same order.
    ready: BTreeSet<(usize, Word, usize)>,
    ids: HashMap<Word, usize>,
    occurs: Vec<HashSet<usize>>,
}

fn single_occurrence(w: &[Letter]) -> Option<usize> {
    let mut gens: Vec<usize> = w.iter().map(|l| l.gen).collect();
    gens.sort_unstable();
    (0..gens.len())
        .rev()
        .find(|&i| (i == 0 || gens[i - 1] != gens[i]) && gens.get(i + 1) != Some(&gens[i]))
        .map(|i| gens[i])
}

impl RelatorStore {
    fn insert(&mut self, w: &[Letter]) {
        let w = cyclic_reduce(w);
        if w.is_empty() {
            return;
        }
        let w = canonical_relator(&w);
        if self.ids.contains_key(&w) {
            return;
        }
        let id = self.words.len();
        for l in &w {
            self.occurs[l.gen].insert(id);
        }
        if single_occurrence(&w).is_some() {
            self.ready.insert((w.len(), w.clone(), id));
        }
        self.order.insert((w.len(), w.clone(), id));
        self.ids.insert(w.clone(), id);
        self.words.push(Some(w));
    }

    fn remove(&mut self, id: usize) -> Word {
        let w = self.words[id].take().expect("live relator");
        for l in &w {
            self.occurs[l.gen].remove(&id);
        }
        let key = (w.len(), w, id);
        self.ready.remove(&key);
        self.order.remove(&key);
        self.ids.remove(&key.1);
        key.1
    }
}

/// Eliminates, while the budget lasts, a generator occurring exactly once in some relator
/// (shortest relator first, highest generator index first), then cleans up relators.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> Tietze {
    let n = p.generators;
    let mut store = RelatorStore {
        words: Vec::new(),
        order: BTreeSet::new(),
        ready: BTreeSet::new(),
        ids: HashMap::new(),
        occurs: vec![HashSet::new(); n],
    };
    for r in &p.relators {
        store.insert(r);
    }
    let mut value: Vec<Option<Word>> = vec![None; n];
    for _ in 0..budget {
        let Some(&(_, _, id)) = store.ready.first() else { break };
        let r = store.remove(id);
        let g = single_occurrence(&r).expect("ready relator");
        let pos = r.iter().position(|l| l.gen == g).unwrap();
        let rot: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let rest = &rot[1..];
        // g^e rest = 1
        let v = if rot[0].inverse { rest.to_vec() } else { inverse(rest) };
        let v_inv = inverse(&v);
        let touched: Vec<usize> = store.occurs[g].iter().copied().collect();
        for t in touched {
            let w = store.remove(t);
            let mut out = Vec::with_capacity(w.len() + v.len());
            for l in w {
                match (l.gen == g, l.inverse) {
                    (false, _) => out.push(l),
                    (true, false) => out.extend_from_slice(&v),
                    (true, true) => out.extend_from_slice(&v_inv),
                }
            }
            store.insert(&free_reduce(&out));
        }
        value[g] = Some(v);
    }
    // resolve eliminated generators through later eliminations
    let mut subst: Vec<Option<Word>> = vec![None; n];
    fn resolve(g: usize, value: &[Option<Word>], subst: &mut Vec<Option<Word>>) -> Word {
        if let Some(w) = &subst[g] {
            return w.clone();
        }
        let w = match &value[g] {
            None => vec![Letter::new(g)],
            Some(v) => {
                let mut out = Vec::new();
                for l in v.clone() {
                    let x = resolve(l.gen, value, subst);
                    if l.inverse {
                        out.extend(inverse(&x));
                    } else {
                        out.extend(x);
                    }
                }
                free_reduce(&out)
            }
        };
        subst[g] = Some(w.clone());
        w
    }
    let subst: Vec<Word> = (0..n).map(|g| resolve(g, &value, &mut subst)).collect();
    let mut index = vec![usize::MAX; n];
    let mut m = 0;
    for g in 0..n {
        if value[g].is_none() {
            index[g] = m;
            m += 1;
        }
    }
    let renumber = |w: &Word| -> Word {
        w.iter()
            .map(|l| Letter {
                gen: index[l.gen],
                inverse: l.inverse,
            })
            .collect()
    };
    Tietze {
        presentation: GroupPresentation {
            generators: m,
            relators: store.order.iter().map(|(_, w, _)| renumber(w)).collect(),
        },
        substitution: subst.iter().map(renumber).collect(),
    }
}

const NONE: usize = usize::MAX;

/// Complete coset table of the trivial subgroup: the regular action of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// The element of `w`, as the coset reached from the identity coset 0.
    pub fn trace(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |c, l| self.table[c][l.column()])
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn trace_from(&self, c: usize, w: &[Letter]) -> usize {
        w.iter().fold(c, |c, l| self.table[c][l.column()])
    }

    /// A shortest word reaching each coset from coset 0.
    pub fn words(&self) -> Vec<Word> {
        let mut out: Vec<Option<Word>> = vec![None; self.order()];
        out[0] = Some(vec![]);
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.columns {
                let d = self.table[c][x];
                if out[d].is_none() {
                    let mut w = out[c].clone().unwrap();
                    w.push(Letter {
                        gen: x / 2,
                        inverse: x % 2 == 1,
                    });
                    out[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        out.into_iter().map(|w| w.expect("the table is transitive")).collect()
    }
}

struct Enumerator {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    budget: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn define(&mut self, c: usize, x: usize) -> bool {
        if self.table.len() >= self.budget {
            return false;
        }
        let d = self.table.len();
        let cols = self.table[0].len();
        self.table.push(vec![NONE; cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inv_col(x)] = c;
        true
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.table[g].len() {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][inv_col(x)] = NONE;
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv_col(x)] != NONE {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    /// Scans relator `w` from coset `c`, defining cosets to complete it. Returns false when the
    /// budget is exhausted.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j > i && self.table[b][inv_col(w[j - 1])] != NONE {
                b = self.table[b][inv_col(w[j - 1])];
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return true;
            }
            if i + 1 == j {
                self.table[f][w[i]] = b;
                self.table[b][inv_col(w[i])] = f;
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }
}

/// HLT enumeration over the trivial subgroup; `None` when more than `max_cosets` cosets would be
/// defined.
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: usize) -> Option<CosetTable> {
    let cols = 2 * p.generators;
    if cols == 0 {
        return Some(CosetTable {
            columns: 0,
            table: vec![vec![]],
        });
    }
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| cyclic_reduce(r))
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|l| l.column()).collect())
        .collect();
    let mut e = Enumerator {
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        queue: Vec::new(),
        budget: max_cosets,
    };
    let mut c = 0;
    while c < e.table.len() {
        for r in &relators {
            if e.parent[c] != c {
                break;
            }
            if !e.scan_and_fill(c, r) {
                return None;
            }
        }
        for x in 0..cols {
            if e.parent[c] != c {
                break;
            }
            if e.table[c][x] == NONE && !e.define(c, x) {
                return None;
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.parent[c] == c).collect();
    let mut index = vec![NONE; e.table.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let table = live
        .iter()
        .map(|&c| (0..cols).map(|x| index[e.rep(e.table[c][x])]).collect())
        .collect();
    Some(CosetTable { columns: cols, table })
}

pub fn group_order(p: &GroupPresentation, max_cosets: usize) -> Option<usize> {
    todd_coxeter(p, max_cosets).map(|t| t.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Word {
        v.iter().map(|&x| Letter::try_from(x).unwrap()).collect()
    }

    fn pres(n: usize, rels: &[&[i64]]) -> GroupPresentation {
        GroupPresentation::new(n, rels.iter().map(|r| w(r)).collect()).unwrap()
    }

/// Direct rescanning version of the elimination loop; eliminates, while the budget lasts, a generator occurring exactly once in some relator
    /// (shortest relator first, highest generator index first), then cleans up relators.
    fn reference_tietze(p: &GroupPresentation, budget: usize) -> Tietze {
        let n = p.generators;
        let mut subst: Vec<Word> = (0..n).map(|g| vec![Letter::new(g)]).collect();
        let mut alive = vec![true; n];
        let mut relators: Vec<Word> = p.relators.clone();
        for _ in 0..=budget {
            let mut cleaned: Vec<Word> = relators
                .iter()
                .map(|r| cyclic_reduce(r))
                .filter(|r| !r.is_empty())
                .map(|r| canonical_relator(&r))
                .collect();
            cleaned.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            cleaned.dedup();
            relators = cleaned;
            let mut pick = None;
            'search: for (i, r) in relators.iter().enumerate() {
                let mut count = vec![0usize; n];
                for l in r {
                    count[l.gen] += 1;
                }
                for g in (0..n).rev() {
                    if count[g] == 1 {
                        pick = Some((i, g));
                        break 'search;
                    }
                }
            }
            let Some((i, g)) = pick else { break };
            let r = relators.remove(i);
            let pos = r.iter().position(|l| l.gen == g).unwrap();
            let rot: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
            let rest = &rot[1..];
            // g^e rest = 1
            let value = if rot[0].inverse { rest.to_vec() } else { inverse(rest) };
            let mut by: Vec<Word> = (0..n).map(|h| vec![Letter::new(h)]).collect();
            by[g] = value;
            relators = relators.iter().map(|w| free_reduce(&substitute(w, &by))).collect();
            for s in subst.iter_mut() {
                *s = free_reduce(&substitute(s, &by));
            }
            alive[g] = false;
        }
        let mut index = vec![usize::MAX; n];
        let mut m = 0;
        for g in 0..n {
            if alive[g] {
                index[g] = m;
                m += 1;
            }
        }
        let renumber = |w: &Word| -> Word {
            w.iter()
                .map(|l| Letter {
                    gen: index[l.gen],
                    inverse: l.inverse,
                })
                .collect()
        };
        Tietze {
            presentation: GroupPresentation {
                generators: m,
                relators: relators.iter().map(renumber).collect(),
            },
            substitution: subst.iter().map(renumber).collect(),
        }
    }

    #[test]
    fn agrees_with_rescanning_version() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..5);
            let rels: Vec<Word> = (0..rng.gen_range(0..5))
                .map(|_| {
                    (0..rng.gen_range(1..6))
                        .map(|_| Letter { gen: rng.gen_range(0..n), inverse: rng.gen() })
                        .collect()
                })
                .collect();
            let p = GroupPresentation::new(n, rels).unwrap();
            assert_eq!(tietze_simplify(&p, 100), reference_tietze(&p, 100), "{p:?}");
        }
    }

    #[test]
    fn eliminates_a_redundant_generator() {
        let t = tietze_simplify(&pres(2, &[&[1, -2]]), DEFAULT_TIETZE_BUDGET);
        assert_eq!(t.presentation, pres(1, &[]));
        assert_eq!(t.substitution, vec![w(&[1]), w(&[1])]);
    }

    #[test]
    fn free_presentation_unchanged() {
        let p = pres(3, &[]);
        assert_eq!(tietze_simplify(&p, DEFAULT_TIETZE_BUDGET).presentation, p);
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&pres(1, &[&[1, 1, 1]]), 1000), Some(3));
        // S3 = <a, b | a^2, b^3, (ab)^2>
        assert_eq!(group_order(&pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), 1000), Some(6));
        // Z/2 x Z/2
        assert_eq!(group_order(&pres(2, &[&[1, 1], &[2, 2], &[1, 2, -1, -2]]), 1000), Some(4));
        assert_eq!(group_order(&pres(0, &[]), 10), Some(1));
        assert_eq!(group_order(&pres(1, &[]), 100), None);
        // quaternion group of order 8: <a, b | a^4, a^2 b^-2, b^-1 a b a>
        assert_eq!(group_order(&pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]), 1000), Some(8));
    }

    #[test]
    fn trace_respects_relations() {
        let t = todd_coxeter(&pres(1, &[&[1, 1, 1, 1, 1]]), 100).unwrap();
        assert_eq!(t.trace(&w(&[1, 1, 1])), t.trace(&w(&[-1, -1])));
        assert_ne!(t.trace(&w(&[1])), t.trace(&[]));
    }
}
