//! Forward orbits of `T` with exact cycle detection.

use std::collections::HashMap;

use crate::rational::Rational2;

pub const DEFAULT_STEP_CAP: u64 = 100_000;

/// Result of iterating `T` from a starting value.
///
/// When `decided`, `cycle` is rotated to start at its smallest element and
/// `tail` holds the pre-periodic values in visiting order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitOutcome {
    pub tail: Vec<Rational2>,
    pub cycle: Vec<Rational2>,
    pub steps_used: u64,
    pub decided: bool,
}

impl OrbitOutcome {
    /// Parity vector of the cycle (empty when undecided).
    pub fn cycle_parities(&self) -> Vec<u8> {
        self.cycle.iter().map(Rational2::parity).collect()
    }

    /// Number of odd elements in the cycle.
    pub fn omega(&self) -> usize {
        self.cycle.iter().filter(|x| x.parity() == 1).count()
    }
}

/// Rotates `cycle` in place so its minimum comes first.
pub fn rotate_to_min<T: Ord>(cycle: &mut [T]) {
    if let Some((idx, _)) = cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
        cycle.rotate_left(idx);
    }
}

/// Iterates `T` from `x` for at most `max_steps` applications, stopping at the
/// first revisited value.
pub fn orbit(x: &Rational2, max_steps: u64) -> OrbitOutcome {
    let mut seen: HashMap<Rational2, usize> = HashMap::new();
    let mut path: Vec<Rational2> = Vec::new();
    let mut cur = x.clone();
    let mut steps = 0;
    while steps < max_steps {
        let next = cur.t_map();
        seen.insert(cur.clone(), path.len());
        path.push(cur);
        steps += 1;
        if let Some(&start) = seen.get(&next) {
            let mut cycle = path.split_off(start);
            rotate_to_min(&mut cycle);
            return OrbitOutcome {
                tail: path,
                cycle,
                steps_used: steps,
                decided: true,
            };
        }
        cur = next;
    }
    OrbitOutcome {
        tail: path,
        cycle: Vec::new(),
        steps_used: max_steps,
        decided: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational2 {
        s.parse().unwrap()
    }

    fn qs(items: &[&str]) -> Vec<Rational2> {
        items.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn integer_three_falls_into_one_two() {
        let out = orbit(&q("3"), 100);
        assert!(out.decided);
        assert_eq!(out.tail, qs(&["3", "5", "8", "4"]));
        assert_eq!(out.cycle, qs(&["1", "2"]));
    }

    #[test]
    fn one_thirteenth_is_periodic() {
        let out = orbit(&q("1/13"), 100);
        assert!(out.tail.is_empty());
        assert_eq!(out.cycle.len(), 4);
        assert_eq!(out.omega(), 1);
        assert_eq!(out.cycle[0], q("1/13"));
    }

    #[test]
    fn five_nineteenths_cycle() {
        let out = orbit(&q("5/19"), 100);
        assert_eq!(out.cycle.len(), 11);
        assert!(out.cycle.contains(&q("5/19")));
        assert_eq!(out.omega(), 5);
    }

    #[test]
    fn negative_fixed_points() {
        assert_eq!(orbit(&q("-1"), 10).cycle, qs(&["-1"]));
        assert_eq!(orbit(&q("0"), 10).cycle, qs(&["0"]));
        let out = orbit(&q("-5"), 100);
        assert_eq!(out.cycle, qs(&["-10", "-5", "-7"]));
    }

    #[test]
    fn undecided_uses_whole_cap() {
        let out = orbit(&q("27"), 10);
        assert!(!out.decided);
        assert_eq!(out.steps_used, 10);
        assert!(out.cycle.is_empty());
    }

    #[test]
    fn cycle_that_closes_on_last_allowed_step() {
        // 1 -> 2 -> 1 needs two applications
        assert!(!orbit(&q("1"), 1).decided);
        assert!(orbit(&q("1"), 2).decided);
    }
}
