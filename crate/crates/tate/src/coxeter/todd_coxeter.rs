//! Coset enumeration over the trivial subgroup for presentations with
//! involutive generators, HLT-style with coincidence processing.
//!
//! All generators are their own inverses (Coxeter presentations), which keeps
//! the table to one column per generator.

use thiserror::Error;

use crate::groups::{group_from_generators, GroupError, Perm, PermGroup};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset enumeration exceeded {0} cosets")]
    Overflow(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

const UNDEF: u32 = u32::MAX;

struct Table {
    n_gens: usize,
    rows: Vec<Vec<u32>>,
    rep: Vec<u32>,
    live: usize,
    queue: Vec<(u32, u32)>,
}

impl Table {
    fn new(n_gens: usize) -> Self {
        Table {
            n_gens,
            rows: vec![vec![UNDEF; n_gens]],
            rep: vec![0],
            live: 1,
            queue: vec![],
        }
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.rep[c as usize] != c {
            let p = self.rep[c as usize];
            self.rep[c as usize] = self.rep[p as usize];
            c = self.rep[c as usize];
        }
        c
    }

    fn define(&mut self, c: u32, g: usize, cap: usize) -> Result<u32, EnumerationError> {
        if self.rows.len() >= cap {
            return Err(EnumerationError::Overflow(cap));
        }
        let d = self.rows.len() as u32;
        self.rows.push(vec![UNDEF; self.n_gens]);
        self.rep.push(d);
        self.live += 1;
        self.rows[c as usize][g] = d;
        self.rows[d as usize][g] = c;
        Ok(d)
    }

    /// Record `c * g = d`, queueing a coincidence if it conflicts.
    fn deduce(&mut self, c: u32, g: usize, d: u32) {
        for (from, to) in [(c, d), (d, c)] {
            let cur = self.rows[from as usize][g];
            if cur == UNDEF {
                self.rows[from as usize][g] = to;
            } else if cur != to {
                self.queue.push((cur, to));
            }
        }
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        self.rep[drop as usize] = keep;
        self.live -= 1;
        for g in 0..self.n_gens {
            let t = self.rows[drop as usize][g];
            if t != UNDEF {
                let t = self.find(t);
                let cur = self.rows[keep as usize][g];
                if cur == UNDEF {
                    self.rows[keep as usize][g] = t;
                } else if self.find(cur) != t {
                    self.queue.push((cur, t));
                }
                let back = self.rows[t as usize][g];
                if back == UNDEF {
                    self.rows[t as usize][g] = keep;
                } else if self.find(back) != keep {
                    self.queue.push((back, keep));
                }
            }
        }
    }

    fn process_queue(&mut self) {
        while let Some((a, b)) = self.queue.pop() {
            self.merge(a, b);
        }
    }

    fn lookup(&mut self, c: u32, g: usize) -> u32 {
        let c = self.find(c);
        let t = self.rows[c as usize][g];
        if t == UNDEF {
            UNDEF
        } else {
            self.find(t)
        }
    }

    /// Trace the relator from `start`, defining cosets as needed, and close.
    fn scan_fill(
        &mut self,
        start: u32,
        relator: &[usize],
        cap: usize,
    ) -> Result<(), EnumerationError> {
        let mut c = self.find(start);
        for (i, &g) in relator.iter().enumerate() {
            let next = self.lookup(c, g);
            if next != UNDEF {
                c = next;
            } else if i + 1 == relator.len() {
                // last letter closes back to the start
                let s = self.find(start);
                self.deduce(c, g, s);
                self.process_queue();
                return Ok(());
            } else {
                c = self.define(c, g, cap)?;
            }
        }
        let s = self.find(start);
        if c != s {
            self.queue.push((c, s));
            self.process_queue();
        }
        Ok(())
    }
}

/// Enumerate the cosets of the trivial subgroup for the group with
/// involutive generators `0..n_gens` and the given relators, and return the
/// regular permutation representation.
///
/// `max_cosets` caps the final coset count; the table may transiently hold a
/// fixed multiple of it.
pub fn enumerate_regular(
    n_gens: usize,
    relators: &[Vec<usize>],
    max_cosets: usize,
) -> Result<PermGroup, EnumerationError> {
    let cap = 16 * max_cosets + 64;
    let mut table = Table::new(n_gens);
    let mut scanned: Vec<bool> = vec![false];
    loop {
        scanned.resize(table.rows.len(), false);
        let target = (0..table.rows.len() as u32)
            .find(|&c| table.rep[c as usize] == c && !scanned[c as usize]);
        let Some(c) = target else { break };
        scanned[c as usize] = true;
        for r in relators {
            table.scan_fill(c, r, cap)?;
            if table.find(c) != c {
                break; // this coset died in a coincidence
            }
        }
    }
    // compress live cosets
    let mut index = vec![UNDEF; table.rows.len()];
    let mut n_live = 0u32;
    for c in 0..table.rows.len() as u32 {
        if table.find(c) == c {
            index[c as usize] = n_live;
            n_live += 1;
        }
    }
    if n_live as usize > max_cosets {
        return Err(EnumerationError::Overflow(max_cosets));
    }
    let mut gens = Vec::with_capacity(n_gens);
    for g in 0..n_gens {
        let mut img = vec![0u16; n_live as usize];
        for c in 0..table.rows.len() as u32 {
            if table.find(c) == c {
                let t = table.lookup(c, g);
                assert_ne!(t, UNDEF, "closed table has no gaps");
                img[index[c as usize] as usize] = index[t as usize] as u16;
            }
        }
        gens.push(Perm(img));
    }
    Ok(group_from_generators(n_live as usize, gens)?)
}

/// Relators of a Coxeter presentation given by the matrix of orders
/// (`m[i][i] = 1`, finite off-diagonal entries; `0` entries mean infinite
/// order and contribute no relator).
#[allow(clippy::needless_range_loop)]
pub fn coxeter_relators(m: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(vec![i, i]);
    }
    for i in 0..n {
        for j in i + 1..n {
            let ord = m[i][j];
            if ord >= 2 {
                let mut w = Vec::new();
                for _ in 0..ord {
                    w.push(i);
                    w.push(j);
                }
                rels.push(w);
            }
        }
    }
    rels
}
