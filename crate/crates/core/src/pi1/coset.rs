use super::{Letter, Presentation};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const UNDEF: usize = usize::MAX;

/// Outcome of a bounded enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetOutcome {
    /// The table closed; the group has this order.
    Order(usize),
    /// More than `max_cosets` cosets were needed.
    Exceeded,
}

struct Table {
    cols: usize,
    rows: Vec<Vec<usize>>,
    forward: Vec<usize>,
    max: usize,
    overflow: bool,
    queue: Vec<usize>,
}

impl Table {
    fn new(cols: usize, max: usize) -> Self {
        Table { cols, rows: vec![vec![UNDEF; cols]], forward: vec![0], max, overflow: false, queue: Vec::new() }
    }

    fn live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.rows.len() >= self.max {
            self.overflow = true;
            return;
        }
        let d = self.rows.len();
        self.rows.push(vec![UNDEF; self.cols]);
        self.forward.push(d);
        self.rows[c][x] = d;
        self.rows[d][x ^ 1] = c;
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut x = c;
        while self.forward[x] != r {
            let next = self.forward[x];
            self.forward[x] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.forward[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.rows[dead][x];
                if d == UNDEF {
                    continue;
                }
                self.rows[d][x ^ 1] = UNDEF;
                let (mu, nu) = (self.rep(dead), self.rep(d));
                if self.rows[mu][x] != UNDEF {
                    let t = self.rows[mu][x];
                    self.merge(nu, t);
                } else if self.rows[nu][x ^ 1] != UNDEF {
                    let t = self.rows[nu][x ^ 1];
                    self.merge(mu, t);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][x ^ 1] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0usize, word.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.rows[f][word[i]] != UNDEF {
                f = self.rows[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize && self.rows[b][word[j as usize] ^ 1] != UNDEF {
                b = self.rows[b][word[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            } else if j == i as isize {
                self.rows[f][word[i]] = b;
                self.rows[b][word[i] ^ 1] = f;
                return;
            }
            self.define(f, word[i]);
            if self.overflow {
                return;
            }
        }
    }
}

fn column(l: &Letter) -> usize {
    2 * l.gen + usize::from(l.inverse)
}

/// Todd–Coxeter enumeration (HLT strategy) of the cosets of the trivial subgroup.
///
/// Returns the group order when the table closes with at most `max_cosets` rows.
pub fn coset_enumeration(p: &Presentation, max_cosets: usize) -> CosetOutcome {
    let cols = 2 * p.generator_count();
    let relators: Vec<Vec<usize>> = p.relators().iter().map(|r| r.iter().map(column).collect()).collect();
    let mut t = Table::new(cols, max_cosets.max(1));
    let mut c = 0;
    while c < t.rows.len() {
        if t.live(c) {
            for r in &relators {
                if !t.live(c) {
                    break;
                }
                t.scan_and_fill(c, r);
                if t.overflow {
                    return CosetOutcome::Exceeded;
                }
            }
            for x in 0..cols {
                if !t.live(c) {
                    break;
                }
                if t.rows[c][x] == UNDEF {
                    t.define(c, x);
                    if t.overflow {
                        return CosetOutcome::Exceeded;
                    }
                }
            }
        }
        c += 1;
    }
    CosetOutcome::Order((0..t.rows.len()).filter(|&c| t.live(c)).count())
}
