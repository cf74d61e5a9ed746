use std::fmt;

use serde::Serialize;

use super::AltCycleSystem;
use crate::altcycle::{AltCycle, BlowupEmbedding};
use crate::auxiliary::Colour;
use crate::error::TransformError;

/// Offset of a pattern vertex from its parent vertex `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    Whole,
    Third,
    Half,
    TwoThirds,
}

impl Slot {
    fn sixths(self) -> u8 {
        match self {
            Slot::Whole => 0,
            Slot::Third => 2,
            Slot::Half => 3,
            Slot::TwoThirds => 4,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Slot::Whole => "",
            Slot::Third => "+1/3",
            Slot::Half => "+1/2",
            Slot::TwoThirds => "+2/3",
        }
    }
}

/// `s_{base + slot}`, where `base` indexes the parent pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatternLabel {
    pub base: usize,
    pub slot: Slot,
}

impl PatternLabel {
    fn key(self) -> (usize, u8) {
        (self.base, self.slot.sixths())
    }
}

impl fmt::Display for PatternLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}", self.base + 1, self.slot.suffix())
    }
}

impl Serialize for PatternLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ordered 2-edge-coloured graph in which every vertex has exactly one red
/// and one blue mate. Vertices are listed in increasing order; `origin`
/// names the cluster (or anchor) each vertex must be drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractPattern {
    labels: Vec<PatternLabel>,
    origin: Vec<usize>,
    red: Vec<usize>,
    blue: Vec<usize>,
}

impl AbstractPattern {
    /// Checks mates are symmetric, distinct from the vertex and in range.
    pub fn new(
        labels: Vec<PatternLabel>,
        origin: Vec<usize>,
        red: Vec<usize>,
        blue: Vec<usize>,
    ) -> Result<Self, TransformError> {
        let m = labels.len();
        if origin.len() != m || red.len() != m || blue.len() != m {
            return Err(TransformError::InvalidVertex { index: m, count: m });
        }
        for i in 0..m {
            for mate in [red[i], blue[i]] {
                if mate >= m || mate == i {
                    return Err(TransformError::InvalidVertex { index: mate, count: m });
                }
            }
            if red[red[i]] != i || blue[blue[i]] != i {
                return Err(TransformError::InvalidVertex { index: i, count: m });
            }
        }
        if labels.windows(2).any(|w| w[0].key() >= w[1].key()) {
            return Err(TransformError::OrderMismatch);
        }
        Ok(AbstractPattern { labels, origin, red, blue })
    }

    /// Pattern of a concrete system; vertex `i` is the `i`-th smallest
    /// system vertex and has origin `i`.
    pub fn from_system(system: &AltCycleSystem) -> Self {
        let vs = system.vertices();
        let index = |v: usize| vs.binary_search(&v).expect("mate is a system vertex");
        let red = vs.iter().map(|&v| index(system.red_mate(v).unwrap())).collect();
        let blue = vs.iter().map(|&v| index(system.blue_mate(v).unwrap())).collect();
        AbstractPattern {
            labels: (0..vs.len()).map(|base| PatternLabel { base, slot: Slot::Whole }).collect(),
            origin: (0..vs.len()).collect(),
            red,
            blue,
        }
    }

    /// The base alternating cycle of a blow-up, one vertex per cluster,
    /// listed in cluster order.
    pub fn from_blowup(blowup: &BlowupEmbedding) -> Self {
        let order = blowup.cluster_order();
        let p = order.len();
        let mut position = vec![0; p];
        for (pos, &c) in order.iter().enumerate() {
            position[c] = pos;
        }
        let mut red = vec![0; p];
        let mut blue = vec![0; p];
        for c in 0..p {
            let d = (c + 1) % p;
            let (a, b) = (position[c], position[d]);
            match blowup.colour_between(c) {
                Colour::Red => {
                    red[a] = b;
                    red[b] = a;
                }
                Colour::Blue => {
                    blue[a] = b;
                    blue[b] = a;
                }
            }
        }
        AbstractPattern {
            labels: (0..p).map(|base| PatternLabel { base, slot: Slot::Whole }).collect(),
            origin: order,
            red,
            blue,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[PatternLabel] {
        &self.labels
    }

    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn red_mate(&self, i: usize) -> usize {
        self.red[i]
    }

    pub fn blue_mate(&self, i: usize) -> usize {
        self.blue[i]
    }

    pub fn mate(&self, i: usize, colour: Colour) -> usize {
        match colour {
            Colour::Red => self.red[i],
            Colour::Blue => self.blue[i],
        }
    }

    pub fn no_double_edges(&self) -> bool {
        (0..self.len()).all(|i| self.red[i] != self.blue[i])
    }

    /// Alternating cycles as pattern-index sequences, each starting at its
    /// smallest index with the red edge first, sorted by that index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.red[start];
            let mut colour = Colour::Blue;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.mate(cur, colour);
                colour = colour.other();
            }
            out.push(cycle);
        }
        out
    }

    /// Index of the cycle containing pattern vertex `i`.
    pub fn cycle_of(&self, i: usize) -> usize {
        self.cycles().iter().position(|c| c.contains(&i)).expect("every vertex lies on a cycle")
    }

    /// Places the pattern on concrete auxiliary vertices `at[i]`.
    pub fn realise(&self, at: &[usize]) -> Result<AltCycleSystem, TransformError> {
        let cycles = self
            .cycles()
            .into_iter()
            .map(|c| AltCycle::new(c.iter().map(|&i| at[i]).collect(), Colour::Red))
            .collect::<Result<Vec<_>, _>>()?;
        AltCycleSystem::from_checked(cycles)
    }

    /// Number of pattern vertices drawn from each origin.
    pub fn demand(&self) -> Vec<usize> {
        let mut d = vec![0; self.origin.iter().max().map_or(0, |&o| o + 1)];
        for &o in &self.origin {
            d[o] += 1;
        }
        d
    }
}

/// Builds the child pattern from parent vertices and added slots, then
/// assigns mates through `link`.
fn derive(
    parent: &AbstractPattern,
    extra: &[usize],
    slots: &[Slot],
    link: impl Fn(PatternLabel) -> (PatternLabel, PatternLabel),
) -> AbstractPattern {
    let mut labels: Vec<PatternLabel> = (0..parent.len()).map(|base| PatternLabel { base, slot: Slot::Whole }).collect();
    for &i in extra {
        for &slot in slots {
            labels.push(PatternLabel { base: i, slot });
        }
    }
    labels.sort_by_key(|l| l.key());
    let index = |l: PatternLabel| labels.binary_search_by_key(&l.key(), |x| x.key()).expect("label present");
    let mut red = vec![0; labels.len()];
    let mut blue = vec![0; labels.len()];
    for (i, &l) in labels.iter().enumerate() {
        let (r, b) = link(l);
        red[i] = index(r);
        blue[i] = index(b);
    }
    let origin = labels.iter().map(|l| parent.origin[l.base]).collect();
    AbstractPattern { labels, origin, red, blue }
}

/// Going up: adds `s_{i+1/2}` after every vertex of cycle `cycle_id` and
/// copies that cycle's edges onto the copies.
pub fn going_up_pattern(parent: &AbstractPattern, cycle_id: usize) -> Result<AbstractPattern, TransformError> {
    let cycles = parent.cycles();
    let cycle = cycles.get(cycle_id).ok_or(TransformError::InvalidCycle { id: cycle_id, count: cycles.len() })?;
    let child = derive(parent, cycle, &[Slot::Half], |l| {
        let at = |base| PatternLabel { base, slot: l.slot };
        (at(parent.red[l.base]), at(parent.blue[l.base]))
    });
    debug_assert!(AbstractPattern::new(child.labels.clone(), child.origin.clone(), child.red.clone(), child.blue.clone()).is_ok());
    Ok(child)
}

/// Going down at pattern vertex `k`: adds `s_{i+1/3}` and `s_{i+2/3}`
/// after every vertex of the cycle through `k` and rewires the three copies
/// of the edges at `k` into one cycle.
pub fn going_down_pattern(parent: &AbstractPattern, k: usize) -> Result<AbstractPattern, TransformError> {
    let m = parent.len();
    if k >= m {
        return Err(TransformError::InvalidVertex { index: k, count: m });
    }
    let cycle = parent.cycles().swap_remove(parent.cycle_of(k));
    let p = parent.blue[k];
    let r = parent.red[k];
    let at = |base, slot| PatternLabel { base, slot };
    let child = derive(parent, &cycle, &[Slot::Third, Slot::TwoThirds], |l| {
        let (i, slot) = (l.base, l.slot);
        let red = if i == k {
            match slot {
                Slot::Whole => at(r, Slot::Whole),
                Slot::Third => at(r, Slot::TwoThirds),
                _ => at(r, Slot::Third),
            }
        } else if i == r && slot != Slot::Whole {
            at(k, if slot == Slot::Third { Slot::TwoThirds } else { Slot::Third })
        } else {
            at(parent.red[i], slot)
        };
        let blue = if i == k {
            match slot {
                Slot::Whole => at(p, Slot::TwoThirds),
                Slot::Third => at(p, Slot::Whole),
                _ => at(p, Slot::Third),
            }
        } else if i == p {
            match slot {
                Slot::Whole => at(k, Slot::Third),
                Slot::Third => at(k, Slot::TwoThirds),
                _ => at(k, Slot::Whole),
            }
        } else {
            at(parent.blue[i], slot)
        };
        (red, blue)
    });
    debug_assert!(AbstractPattern::new(child.labels.clone(), child.origin.clone(), child.red.clone(), child.blue.clone()).is_ok());
    Ok(child)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> AbstractPattern {
        let labels = vec![PatternLabel { base: 0, slot: Slot::Whole }, PatternLabel { base: 1, slot: Slot::Whole }];
        AbstractPattern::new(labels, vec![0, 1], vec![1, 0], vec![1, 0]).unwrap()
    }

    fn edge_set(p: &AbstractPattern, colour: Colour) -> Vec<(String, String)> {
        let mut out: Vec<_> = (0..p.len())
            .filter(|&i| i < p.mate(i, colour))
            .map(|i| (p.labels()[i].to_string(), p.labels()[p.mate(i, colour)].to_string()))
            .collect();
        out.sort();
        out
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_string(), b.to_string())
    }

    #[test]
    fn going_down_on_double_edge() {
        let d = going_down_pattern(&two_cycle(), 0).unwrap();
        let names: Vec<_> = d.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["s1", "s1+1/3", "s1+2/3", "s2", "s2+1/3", "s2+2/3"]);
        assert_eq!(
            edge_set(&d, Colour::Red),
            [pair("s1", "s2"), pair("s1+1/3", "s2+2/3"), pair("s1+2/3", "s2+1/3")]
        );
        assert_eq!(
            edge_set(&d, Colour::Blue),
            [pair("s1", "s2+2/3"), pair("s1+1/3", "s2"), pair("s1+2/3", "s2+1/3")]
        );
        // a 4-cycle and a double edge
        let mut lens: Vec<_> = d.cycles().iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, [2, 4]);
    }

    #[test]
    fn going_up_on_double_edge() {
        let u = going_up_pattern(&two_cycle(), 0).unwrap();
        let names: Vec<_> = u.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["s1", "s1+1/2", "s2", "s2+1/2"]);
        assert_eq!(u.cycles(), [vec![0, 2], vec![1, 3]]);
        assert_eq!(u.origin(), &[0, 0, 1, 1]);
        assert!(going_up_pattern(&two_cycle(), 1).is_err());
    }

    #[test]
    fn mates_are_checked() {
        let labels = vec![PatternLabel { base: 0, slot: Slot::Whole }, PatternLabel { base: 1, slot: Slot::Whole }];
        assert!(AbstractPattern::new(labels.clone(), vec![0, 1], vec![0, 1], vec![1, 0]).is_err());
        assert!(AbstractPattern::new(labels, vec![0, 1], vec![1, 1], vec![1, 0]).is_err());
    }

    #[test]
    fn json_labels() {
        let s = serde_json::to_string(&going_up_pattern(&two_cycle(), 0).unwrap()).unwrap();
        assert!(s.starts_with(r#"{"labels":["s1","s1+1/2","s2","s2+1/2"]"#), "{s}");
    }
}
