//! Dimension-wise diversity and the exploration/exploitation split derived
//! from it.

use super::Individual;

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Mean over dimensions of the mean absolute deviation from the
/// per-dimension median. Zero for an empty population.
pub fn population_diversity(members: &[Individual]) -> f64 {
    let Some(first) = members.first() else {
        return 0.0;
    };
    let dim = first.position.len();
    let n = members.len() as f64;
    let mut column = Vec::with_capacity(members.len());
    let mut total = 0.0;
    for j in 0..dim {
        column.clear();
        column.extend(members.iter().map(|m| m.position[j]));
        let med = median(&mut column);
        total += column.iter().map(|v| (med - v).abs()).sum::<f64>() / n;
    }
    total / dim as f64
}

/// `(exploration %, exploitation %)` with exploration `100 div / div_max`.
pub fn explore_exploit_split(diversity: f64, max_diversity: f64) -> (f64, f64) {
    let explore = if max_diversity > 0.0 {
        (100.0 * diversity / max_diversity).clamp(0.0, 100.0)
    } else {
        0.0
    };
    (explore, 100.0 - explore)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pop(points: &[&[f64]]) -> Vec<Individual> {
        points.iter().map(|p| Individual::unevaluated(p.to_vec())).collect()
    }

    #[test]
    fn identical_members_have_zero_diversity() {
        assert_eq!(population_diversity(&pop(&[&[1.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]])), 0.0);
    }

    #[test]
    fn two_point_hand_value() {
        assert_eq!(population_diversity(&pop(&[&[0.0], &[2.0]])), 1.0);
    }

    #[test]
    fn order_invariant() {
        let a = pop(&[&[0.0, 5.0], &[2.0, -1.0], &[7.0, 3.0], &[1.0, 1.0]]);
        let mut b = a.clone();
        b.reverse();
        b.swap(0, 2);
        assert_eq!(population_diversity(&a), population_diversity(&b));
    }

    #[test]
    fn split_cases() {
        assert_eq!(explore_exploit_split(3.0, 3.0), (100.0, 0.0));
        assert_eq!(explore_exploit_split(0.0, 3.0), (0.0, 100.0));
        assert_eq!(explore_exploit_split(1.5, 3.0), (50.0, 50.0));
        assert_eq!(explore_exploit_split(0.0, 0.0), (0.0, 100.0));
    }
}
