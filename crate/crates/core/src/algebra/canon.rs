use std::collections::{HashMap, VecDeque};

use crate::automaton::{FiniteView, LetterId, StateId, Word};

/// Minimal initial partial Mealy machine with states numbered in
/// breadth-first order (letters in index order). Two state sequences induce
/// the same partial function exactly when their canons are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementCanon {
    letters: u32,
    rows: Vec<Vec<Option<(LetterId, u32)>>>,
}

impl ElementCanon {
    /// One state fixing every letter.
    pub fn identity(letters: usize) -> Self {
        let row = (0..letters as u32).map(|l| Some((LetterId(l), 0))).collect();
        Self {
            letters: letters as u32,
            rows: vec![row],
        }
    }

    pub fn num_letters(&self) -> usize {
        self.letters as usize
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.num_letters())
    }

    /// Transition of canonical state `state`.
    pub fn delta(&self, state: usize, letter: LetterId) -> Option<(LetterId, usize)> {
        self.rows[state][letter.index()].map(|(b, p)| (b, p as usize))
    }

    pub fn apply(&self, w: &[LetterId]) -> Option<Word> {
        let mut q = 0usize;
        let mut out = Vec::with_capacity(w.len());
        for &x in w {
            let (b, p) = self.delta(q, x)?;
            out.push(b);
            q = p;
        }
        Some(out)
    }

    /// Canon of the part of `view` reachable from `q`.
    pub fn of_state(view: &FiniteView<'_>, q: StateId) -> Self {
        let mut index = HashMap::from([(q, 0u32)]);
        let mut order = vec![q];
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for a in view.letters() {
                if let Some((_, p)) = view.delta(s, a) {
                    index.entry(p).or_insert_with(|| {
                        order.push(p);
                        (order.len() - 1) as u32
                    });
                }
            }
        }
        let rows = order
            .iter()
            .map(|&s| {
                view.letters()
                    .map(|a| view.delta(s, a).map(|(b, p)| (b, index[&p])))
                    .collect()
            })
            .collect();
        minimize(view.num_letters(), rows)
    }

    /// Applies `self` first and then `next`.
    pub fn then(&self, next: &ElementCanon) -> ElementCanon {
        let n = self.num_letters();
        let mut index: HashMap<(u32, u32), u32> = HashMap::from([((0, 0), 0)]);
        let mut order = vec![(0u32, 0u32)];
        let mut rows = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (x, y) = order[i];
            i += 1;
            let mut row = Vec::with_capacity(n);
            for a in 0..n {
                let cell = self.rows[x as usize][a].and_then(|(b, x2)| {
                    next.rows[y as usize][b.index()].map(|(c, y2)| (c, (x2, y2)))
                });
                row.push(cell.map(|(c, pair)| {
                    let len = order.len() as u32;
                    let t = *index.entry(pair).or_insert(len);
                    if t == len {
                        order.push(pair);
                    }
                    (c, t)
                }));
            }
            rows.push(row);
        }
        minimize(n, rows)
    }
}

/// Moore-style partition refinement for partial Mealy machines with initial
/// state 0, followed by breadth-first renumbering.
pub(crate) fn minimize(letters: usize, rows: Vec<Vec<Option<(LetterId, u32)>>>) -> ElementCanon {
    let n = rows.len();
    let mut class: Vec<u32> = vec![0; n];
    let mut count = 0usize;
    loop {
        let mut ids: HashMap<Vec<Option<(LetterId, u32)>>, u32> = HashMap::new();
        let next: Vec<u32> = rows
            .iter()
            .enumerate()
            .map(|(s, row)| {
                let mut sig: Vec<Option<(LetterId, u32)>> = Vec::with_capacity(letters + 1);
                sig.push(Some((LetterId(u32::MAX), class[s])));
                sig.extend(row.iter().map(|c| c.map(|(b, p)| (b, class[p as usize]))));
                let len = ids.len() as u32;
                *ids.entry(sig).or_insert(len)
            })
            .collect();
        let stable = ids.len() == count;
        count = ids.len();
        class = next;
        if stable {
            break;
        }
    }
    // Representative row for each class, then renumber from the initial class.
    let mut rep = vec![usize::MAX; count];
    for (s, &c) in class.iter().enumerate() {
        if rep[c as usize] == usize::MAX {
            rep[c as usize] = s;
        }
    }
    let mut number = vec![u32::MAX; count];
    let mut order = vec![class[0]];
    number[class[0] as usize] = 0;
    let mut queue = VecDeque::from([class[0]]);
    while let Some(c) = queue.pop_front() {
        for cell in rows[rep[c as usize]].iter().flatten() {
            let t = class[cell.1 as usize];
            if number[t as usize] == u32::MAX {
                number[t as usize] = order.len() as u32;
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let out = order
        .iter()
        .map(|&c| {
            rows[rep[c as usize]]
                .iter()
                .map(|cell| cell.map(|(b, p)| (b, number[class[p as usize] as usize])))
                .collect()
        })
        .collect();
    ElementCanon {
        letters: letters as u32,
        rows: out,
    }
}
