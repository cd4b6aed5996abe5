//! Table-filling enumeration of a two-sided monoid congruence.
//!
//! Nodes stand for elements of the quotient; `table[node * k + a]` is the
//! node reached from `node` by the letter `a`. Every relation is scanned at
//! every node in creation order (HLT order), coincidences are merged through
//! a union-find keeping the smaller node id and processed FIFO.

use std::collections::VecDeque;

const UNDEF: u32 = u32::MAX;
const LOOKAHEAD_START: usize = 1 << 17;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Limits {
    pub max_classes: usize,
    pub max_steps: u64,
}

pub(crate) enum Outcome {
    Complete(Compact),
    Capped {
        live: usize,
        steps: u64,
        steps_exhausted: bool,
    },
}

/// The standardized table of a finished enumeration.
pub(crate) struct Compact {
    pub class_count: usize,
    pub table: Vec<u32>,
    /// `(parent class, letter)` of each class in the breadth-first tree;
    /// class 0 has none.
    pub tree: Vec<Option<(u32, u32)>>,
    pub steps: u64,
    pub nodes_defined: u64,
}

enum End {
    Node(u32),
    Pending(u32, usize),
    Stuck,
}

struct Engine<'a> {
    k: usize,
    relations: &'a [(Vec<usize>, Vec<usize>)],
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: VecDeque<(u32, u32)>,
    steps: u64,
    nodes_defined: u64,
    limits: Limits,
    lookahead_at: usize,
}

pub(crate) fn run(k: usize, relations: &[(Vec<usize>, Vec<usize>)], limits: Limits) -> Outcome {
    let mut e = Engine {
        k,
        relations,
        table: vec![UNDEF; k],
        parent: vec![0],
        live: 1,
        queue: VecDeque::new(),
        steps: 0,
        nodes_defined: 1,
        limits,
        lookahead_at: LOOKAHEAD_START.min(limits.max_classes),
    };
    match e.main_loop() {
        Ok(()) => Outcome::Complete(e.standardize()),
        Err(steps_exhausted) => Outcome::Capped {
            live: e.live,
            steps: e.steps,
            steps_exhausted,
        },
    }
}

impl Engine<'_> {
    fn nodes(&self) -> usize {
        self.parent.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn get(&mut self, c: u32, a: usize) -> u32 {
        let slot = c as usize * self.k + a;
        let t = self.table[slot];
        if t == UNDEF {
            return UNDEF;
        }
        let r = self.find(t);
        if r != t {
            self.table[slot] = r;
        }
        r
    }

    fn set(&mut self, c: u32, a: usize, t: u32) {
        self.table[c as usize * self.k + a] = t;
    }

    fn define(&mut self, c: u32, a: usize) -> u32 {
        let d = self.nodes() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.k));
        self.set(c, a, d);
        self.live += 1;
        self.steps += 1;
        self.nodes_defined += 1;
        d
    }

    /// Follows `w` from `c`, defining missing edges except the last one when
    /// `define` is set.
    fn trace(&mut self, c: u32, w: &[usize], define: bool) -> End {
        let Some((&last, prefix)) = w.split_last() else {
            return End::Node(c);
        };
        let mut cur = c;
        for &a in prefix {
            let next = self.get(cur, a);
            cur = if next != UNDEF {
                next
            } else if define {
                self.define(cur, a)
            } else {
                return End::Stuck;
            };
        }
        match self.get(cur, last) {
            UNDEF => End::Pending(cur, last),
            t => End::Node(t),
        }
    }

    fn scan(&mut self, c: u32, rel: usize, define: bool) {
        let (u, v) = &self.relations[rel];
        self.steps += 1;
        let eu = self.trace(c, u, define);
        let ev = self.trace(c, v, define);
        match (eu, ev) {
            (End::Node(a), End::Node(b)) => {
                if a != b {
                    self.queue.push_back((a, b));
                }
            }
            (End::Node(a), End::Pending(n, x)) | (End::Pending(n, x), End::Node(a)) => {
                // Tracing `v` may have defined the edge `u` left pending.
                match self.get(n, x) {
                    UNDEF => self.set(n, x, a),
                    t if t != a => self.queue.push_back((t, a)),
                    _ => {}
                }
            }
            (End::Pending(n, x), End::Pending(m, y)) if define => {
                // Either edge may already exist by now.
                let d = match self.get(n, x) {
                    UNDEF => self.define(n, x),
                    t => t,
                };
                match self.get(m, y) {
                    UNDEF => self.set(m, y, d),
                    t if t != d => self.queue.push_back((t, d)),
                    _ => {}
                }
            }
            _ => {}
        }
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            for x in 0..self.k {
                let t = self.table[kill as usize * self.k + x];
                if t == UNDEF {
                    continue;
                }
                let t = self.find(t);
                match self.get(keep, x) {
                    UNDEF => self.set(keep, x, t),
                    s if s != t => self.queue.push_back((s, t)),
                    _ => {}
                }
            }
        }
    }

    /// Scans every relation at every live node without defining anything.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.nodes() as u32 {
            if self.is_live(c) {
                for rel in 0..self.relations.len() {
                    self.scan(c, rel, false);
                    self.process_coincidences();
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
        self.lookahead_at = (2 * self.live).max(self.lookahead_at);
    }

    /// Renumbers live nodes in their current order and drops dead rows.
    /// Returns the new id of `cursor`'s first live successor.
    fn compact(&mut self, cursor: u32) -> u32 {
        debug_assert!(self.queue.is_empty());
        let n = self.nodes();
        let mut new_id = vec![UNDEF; n];
        let mut next = 0u32;
        let mut new_cursor = None;
        for c in 0..n as u32 {
            if c >= cursor && new_cursor.is_none() && self.is_live(c) {
                new_cursor = Some(next);
            }
            if self.is_live(c) {
                new_id[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.k);
        for c in 0..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.k {
                let t = self.get(c, x);
                table.push(if t == UNDEF {
                    UNDEF
                } else {
                    new_id[t as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        new_cursor.unwrap_or(next)
    }

    fn check_caps(&mut self) -> Result<(), bool> {
        if self.steps > self.limits.max_steps {
            return Err(true);
        }
        if self.live > self.lookahead_at {
            self.lookahead();
        }
        if self.live > self.limits.max_classes {
            return Err(false);
        }
        Ok(())
    }

    fn main_loop(&mut self) -> Result<(), bool> {
        let mut c = 0u32;
        while (c as usize) < self.nodes() {
            if self.is_live(c) {
                for rel in 0..self.relations.len() {
                    self.scan(c, rel, true);
                    self.process_coincidences();
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for x in 0..self.k {
                        if self.get(c, x) == UNDEF {
                            self.define(c, x);
                        }
                    }
                }
                self.check_caps()?;
            }
            c += 1;
            if self.nodes() > 4 * self.live.max(1 << 12) {
                c = self.compact(c);
            }
        }
        Ok(())
    }

    /// Breadth-first renumbering from the class of the empty word.
    fn standardize(&mut self) -> Compact {
        let root = self.find(0);
        let mut id = vec![UNDEF; self.nodes()];
        let mut order = vec![root];
        let mut tree = vec![None];
        id[root as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            for x in 0..self.k {
                let t = self.get(c, x);
                debug_assert_ne!(t, UNDEF, "complete table has full rows");
                if id[t as usize] == UNDEF {
                    id[t as usize] = order.len() as u32;
                    order.push(t);
                    tree.push(Some((head as u32, x as u32)));
                }
            }
            head += 1;
        }
        let mut table = Vec::with_capacity(order.len() * self.k);
        for &r in &order {
            for x in 0..self.k {
                let t = self.get(r, x);
                table.push(id[t as usize]);
            }
        }
        Compact {
            class_count: order.len(),
            table,
            tree,
            steps: self.steps,
            nodes_defined: self.nodes_defined,
        }
    }
}
