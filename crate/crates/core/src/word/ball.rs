use std::collections::HashSet;

use super::{Element, Raag};
use crate::{Error, Execution, Result};

impl Raag {
    /// All elements of word length at most `radius`, sorted shortlex.
    pub fn cayley_ball(&self, radius: usize) -> Result<Vec<Element>> {
        self.cayley_ball_with(radius, Execution::default())
    }

    pub fn cayley_ball_with(&self, radius: usize, exec: Execution) -> Result<Vec<Element>> {
        let limits = self.limits();
        if radius > limits.max_radius {
            return Err(Error::resource(format!(
                "ball radius {radius} exceeds the configured bound {}",
                limits.max_radius
            )));
        }
        let alphabet = self.alphabet();
        let mut ball = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        for r in 1..=radius {
            let successors = exec.map(&level, |g| {
                alphabet
                    .iter()
                    .map(|&l| self.multiply_letter(g, l))
                    .filter(|h| h.len() == r)
                    .collect::<Vec<_>>()
            });
            let next: HashSet<Element> = successors.into_iter().flatten().collect();
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            if ball.len() + next.len() > limits.max_ball {
                return Err(Error::resource(format!(
                    "ball of radius {radius} exceeds {} elements",
                    limits.max_ball
                )));
            }
            ball.extend(next.iter().cloned());
            level = next;
        }
        Ok(ball)
    }
}
