//! Random search for pairs of representations on which the second phase is
//! not monotone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::ops::prg_plus;
use super::{validate_qdr, Qdr};
use crate::arena::{Game, Owner};
use crate::io::generate_random;
use crate::measure::Measure;

/// `first` lies strictly below `second`, but their images under the second
/// phase are ordered the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMonotone {
    pub game: Game,
    pub first: Qdr,
    pub second: Qdr,
    pub first_image: Qdr,
    pub second_image: Qdr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("no witness found within the search budget")]
pub struct NotFound;

/// Checks the defining property, including deep validity of all four
/// representations.
pub fn is_nonmonotone_witness(g: &Game, first: &Qdr, second: &Qdr) -> bool {
    let a = prg_plus(g, first);
    let b = prg_plus(g, second);
    [first, second, &a, &b]
        .iter()
        .all(|r| validate_qdr(g, r, true).is_empty())
        && first.lt(second, g)
        && b.lt(&a, g)
}

fn random_qdr(g: &Game, rng: &mut ChaCha8Rng, top: u64) -> Qdr {
    let mut measure = Vec::with_capacity(g.n());
    let mut strategy = vec![None; g.n()];
    for v in g.positions() {
        let m = rng.gen_range(0..=top);
        measure.push(Measure::fin(m));
        if m > 0 && g.owner(v) == Owner::Max {
            let succ = g.succ(v);
            strategy[v] = Some(succ[rng.gen_range(0..succ.len())]);
        }
    }
    Qdr { measure, strategy }
}

/// Tries `budget` random games of up to six positions, sampling valid
/// representations on each and testing every comparable pair.
pub fn find_nonmonotone_witness(budget: u32, seed: u64) -> Result<NonMonotone, NotFound> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let n = rng.gen_range(3..=6);
        let g = generate_random(n, 2, -2, 4, 0.5, rng.gen()).expect("parameters are valid");
        let top = g.positive_sum().magnitude().iter_u64_digits().next().unwrap_or(0);
        let mut valid: Vec<Qdr> = Vec::new();
        for _ in 0..400 {
            let r = random_qdr(&g, &mut rng, top);
            if !valid.contains(&r) && validate_qdr(&g, &r, true).is_empty() {
                valid.push(r);
            }
        }
        let images: Vec<Qdr> = valid.iter().map(|r| prg_plus(&g, r)).collect();
        for i in 0..valid.len() {
            for j in 0..valid.len() {
                if valid[i].lt(&valid[j], &g)
                    && images[j].lt(&images[i], &g)
                    && validate_qdr(&g, &images[i], true).is_empty()
                    && validate_qdr(&g, &images[j], true).is_empty()
                {
                    return Ok(NonMonotone {
                        game: g.clone(),
                        first: valid[i].clone(),
                        second: valid[j].clone(),
                        first_image: images[i].clone(),
                        second_image: images[j].clone(),
                    });
                }
            }
        }
    }
    Err(NotFound)
}
