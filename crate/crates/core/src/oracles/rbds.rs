//! Red-blue dominating set, both modes, by enumerating red subsets.

use super::{check_cap, Caps, OracleError, SolveResult};
use crate::instances::{DominationMode, RbdsInstance, Validate};

pub fn solve_rbds(inst: &RbdsInstance, caps: &Caps) -> Result<SolveResult, OracleError> {
    inst.validate()?;
    check_cap("red vertex count", inst.reds as u64, caps.reds as u64)?;
    let mut walk = Walk { inst, hits: vec![0; inst.blues], chosen: Vec::new(), states: 0 };
    Ok(if walk.run(0) { SolveResult::yes(walk.chosen, walk.states) } else { SolveResult::no(walk.states) })
}

struct Walk<'a> {
    inst: &'a RbdsInstance,
    hits: Vec<u32>,
    chosen: Vec<usize>,
    states: u64,
}

impl Walk<'_> {
    fn accepts(&self) -> bool {
        match self.inst.mode {
            DominationMode::AtMost => self.hits.iter().all(|&h| h >= 1),
            DominationMode::Exact => self.chosen.len() == self.inst.budget && self.hits.iter().all(|&h| h == 1),
        }
    }

    fn run(&mut self, x: usize) -> bool {
        if x == self.inst.reds {
            self.states += 1;
            return self.accepts();
        }
        if self.run(x + 1) {
            return true;
        }
        if self.chosen.len() == self.inst.budget {
            return false;
        }
        let row = &self.inst.adjacency[x];
        for (hit, &b) in self.hits.iter_mut().zip(row) {
            *hit += b as u32;
        }
        let doubled = self.inst.mode == DominationMode::Exact && self.hits.iter().any(|&h| h > 1);
        self.chosen.push(x);
        if !doubled && self.run(x + 1) {
            return true;
        }
        self.chosen.pop();
        for (hit, &b) in self.hits.iter_mut().zip(row) {
            *hit -= b as u32;
        }
        false
    }
}
