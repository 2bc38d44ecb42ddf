//! Conversion from games with weights on moves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arena::{Game, GameError, Owner};

/// An arena whose moves, not positions, carry weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGame {
    pub owner: Vec<Owner>,
    /// Per position, the moves as `(target, weight)` in order.
    pub moves: Vec<Vec<(usize, BigInt)>>,
}

/// Splits every move `u -> v` of weight `w` into `u -> x -> v`, where the
/// fresh position `x` has weight `w` and `u`'s owner; original positions get
/// weight 0 and keep their ids. Fresh ids follow in move order. Cycle sums
/// are unchanged, so winners are preserved.
pub fn edges_to_positions(eg: &EdgeGame) -> Result<Game, GameError> {
    let n = eg.owner.len();
    assert_eq!(eg.moves.len(), n);
    let mut owner = eg.owner.clone();
    let mut weight = vec![BigInt::zero(); n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, moves) in eg.moves.iter().enumerate() {
        for (v, w) in moves {
            if *v >= n {
                return Err(GameError::DanglingEdge(u, *v));
            }
            let x = owner.len();
            owner.push(eg.owner[u]);
            weight.push(w.clone());
            succ.push(vec![*v]);
            succ[u].push(x);
        }
    }
    Game::from_lists(owner, weight, succ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_solve;

    #[test]
    fn self_loop_edge() {
        let eg = EdgeGame {
            owner: vec![Owner::Min],
            moves: vec![vec![(0, BigInt::from(1))]],
        };
        let g = edges_to_positions(&eg).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.succ(0), &[1]);
        assert_eq!(g.succ(1), &[0]);
        assert_eq!(oracle_solve(&g).unwrap().win_max, vec![0, 1]);
    }

    #[test]
    fn zero_edges() {
        let eg = EdgeGame {
            owner: vec![Owner::Max, Owner::Min],
            moves: vec![
                vec![(0, BigInt::zero()), (1, BigInt::zero())],
                vec![(0, BigInt::zero())],
            ],
        };
        let g = edges_to_positions(&eg).unwrap();
        assert!(oracle_solve(&g).unwrap().win_max.is_empty());
    }

    #[test]
    fn sinks_and_dangling() {
        let eg = EdgeGame {
            owner: vec![Owner::Max],
            moves: vec![vec![]],
        };
        assert_eq!(edges_to_positions(&eg), Err(GameError::SinkPosition(0)));
        let eg = EdgeGame {
            owner: vec![Owner::Max],
            moves: vec![vec![(4, BigInt::zero())]],
        };
        assert_eq!(edges_to_positions(&eg), Err(GameError::DanglingEdge(0, 4)));
    }
}
