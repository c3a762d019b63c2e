use crate::coloring::Color;

/// Distinct representatives: one color per list, pairwise different, none
/// marked in `excluded`. Augmenting-path matching; `None` if impossible.
pub fn distinct_representatives(lists: &[Vec<Color>], excluded: &[bool]) -> Option<Vec<Color>> {
    let max_color = lists.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut owner: Vec<Option<usize>> = vec![None; max_color + 1];
    let allowed = |c: Color| excluded.get(c as usize).is_none_or(|&x| !x);

    fn augment(
        i: usize,
        lists: &[Vec<Color>],
        allowed: &dyn Fn(Color) -> bool,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &c in &lists[i] {
            let c = c as usize;
            if !allowed(c as Color) || seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|j| augment(j, lists, allowed, owner, seen)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..lists.len() {
        let mut seen = vec![false; max_color + 1];
        if !augment(i, lists, &allowed, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; lists.len()];
    for (c, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            out[*i] = c as Color;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_finds_what_greedy_misses() {
        // greedy in order takes 1 for the first list and strands the second
        let lists = vec![vec![1, 2], vec![1]];
        assert_eq!(distinct_representatives(&lists, &[]), Some(vec![2, 1]));
    }

    #[test]
    fn hall_violation() {
        let lists = vec![vec![1, 2], vec![1, 2], vec![2, 1]];
        assert_eq!(distinct_representatives(&lists, &[]), None);
        assert_eq!(distinct_representatives(&[vec![1]], &[false, true]), None);
    }
}
