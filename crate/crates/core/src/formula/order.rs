use std::cmp::Ordering;

use super::Formula;

impl Formula {
    pub(crate) fn rank(&self) -> u8 {
        match self {
            Formula::True => 0,
            Formula::False => 1,
            Formula::Letter(_) => 2,
            Formula::NegLetter(_) => 3,
            Formula::Next(_) => 4,
            Formula::Eventually(_) => 5,
            Formula::Globally(_) => 6,
            Formula::Until(..) => 7,
            Formula::And(..) => 8,
            Formula::Or(..) => 9,
        }
    }
}

/// Total order used for tie-breaking: size first, then the root operator
/// (`true < false < letter < !letter < X < F < G < U < & < |`), then the
/// children left to right, letters by name.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (self, other) {
                (Formula::Letter(a), Formula::Letter(b)) | (Formula::NegLetter(a), Formula::NegLetter(b)) => {
                    a.cmp(b)
                }
                (Formula::Next(a), Formula::Next(b))
                | (Formula::Eventually(a), Formula::Eventually(b))
                | (Formula::Globally(a), Formula::Globally(b)) => a.cmp(b),
                (Formula::Until(a1, a2), Formula::Until(b1, b2))
                | (Formula::And(a1, a2), Formula::And(b1, b2))
                | (Formula::Or(a1, a2), Formula::Or(b1, b2)) => a1.cmp(b1).then_with(|| a2.cmp(b2)),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;

    fn p(s: &str) -> crate::formula::Formula {
        parse(s).unwrap()
    }

    #[test]
    fn size_dominates() {
        assert!(p("b") < p("X a"));
        assert!(p("X X a") > p("F a"));
    }

    #[test]
    fn rank_breaks_size_ties() {
        assert!(p("true") < p("false"));
        assert!(p("false") < p("a"));
        assert!(p("!a") < p("X a"));
        assert!(p("X a") < p("F a"));
        assert!(p("F a") < p("G a"));
        assert!(p("(a U b)") < p("(a & b)"));
        assert!(p("(a & b)") < p("(a | b)"));
    }

    #[test]
    fn children_then_letters() {
        assert!(p("a") < p("b"));
        assert!(p("(a & b)") < p("(b & a)"));
        assert!(p("(a | (b | c))") < p("((a | b) | c)"));
    }
}
