//! Bounded enumeration of weights and basic Witt differentials.

use num_rational::Ratio;

use super::element::{Drw, TermKey};
use super::weight::{Exp, Weight};

/// Values m/p^e with e < max_den and |m/p^e| ≤ bound; signed if allowed.
fn exps(p: u64, bound: i64, max_den: u32, signed: bool) -> Vec<Exp> {
    let mut out = vec![Exp::ZERO];
    for e in 0..max_den {
        let pe = (p as i64).pow(e);
        for m in 1..=bound * pe {
            if e > 0 && m % p as i64 == 0 {
                continue;
            }
            out.push(Exp { num: m, den: e });
            if signed {
                out.push(Exp { num: -m, den: e });
            }
        }
    }
    out
}

impl Drw {
    /// All weights with |k| ≤ bound and u(k) < max_den, negative entries
    /// only on Laurent variables.
    pub fn weights(&self, bound: i64, max_den: u32) -> Vec<Weight> {
        let p = self.p();
        let d = self.ring.nvars();
        let per: Vec<Vec<Exp>> =
            (0..d).map(|j| exps(p, bound, max_den, self.ring.vars[j].laurent)).collect();
        let limit = Ratio::from_integer(bound);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn rec(
            p: u64,
            per: &[Vec<Exp>],
            limit: Ratio<i64>,
            cur: &mut Vec<Exp>,
            out: &mut Vec<Weight>,
        ) {
            if cur.len() == per.len() {
                out.push(Weight(cur.clone()));
                return;
            }
            for e in &per[cur.len()] {
                cur.push(*e);
                if Weight(cur.clone()).size(p) <= limit {
                    rec(p, per, limit, cur, out);
                }
                cur.pop();
            }
        }
        rec(p, &per, limit, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All basic differential keys of every degree over the bounded weights.
    pub fn all_keys(&self, bound: i64, max_den: u32) -> Vec<TermKey> {
        let mut out = Vec::new();
        for k in self.weights(bound, max_den) {
            for q in 0..=self.ring.nvars() {
                out.extend(self.keys_at(&k, q));
            }
        }
        out
    }
}
