//! Words in free-group variables: the laws (identities) the oracle checks
//! against concrete groups.
//!
//! Surface syntax: variables `x1`, `x2`, …; `*` for products; `^k` for
//! integer powers (negatives allowed, `^-1` inverts); `[u,w]` for the
//! commutator `u⁻¹w⁻¹uw`; parentheses for grouping. Example:
//! `[[x1,x2],x3]*x1^-2`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GroupOps;

/// Expression tree over variables `x1..xk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    /// `x_i`, 1-based.
    Var(u32),
    Inverse(Box<Word>),
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    /// `[u, w] = u⁻¹w⁻¹uw`.
    Commutator(Box<Word>, Box<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("word syntax error at byte {at}: {message}")]
pub struct WordParseError {
    pub at: usize,
    pub message: &'static str,
}

impl Word {
    pub fn var(i: u32) -> Self {
        Word::Var(i)
    }

    pub fn commutator(u: Word, w: Word) -> Self {
        Word::Commutator(Box::new(u), Box::new(w))
    }

    pub fn pow(self, k: i64) -> Self {
        Word::Power(Box::new(self), k)
    }

    /// Highest variable index used (0 for constant words).
    pub fn arity(&self) -> u32 {
        match self {
            Word::Var(i) => *i,
            Word::Inverse(w) => w.arity(),
            Word::Product(ws) => ws.iter().map(Word::arity).max().unwrap_or(0),
            Word::Power(w, _) => w.arity(),
            Word::Commutator(u, w) => u.arity().max(w.arity()),
        }
    }

    /// Number of tree nodes; the budget unit for evaluation.
    pub fn node_count(&self) -> u64 {
        match self {
            Word::Var(_) => 1,
            Word::Inverse(w) | Word::Power(w, _) => 1 + w.node_count(),
            Word::Product(ws) => 1 + ws.iter().map(Word::node_count).sum::<u64>(),
            Word::Commutator(u, w) => 1 + u.node_count() + w.node_count(),
        }
    }

    /// Evaluate under an assignment of group elements to variables;
    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn evaluate<G: GroupOps + ?Sized>(&self, g: &G, assignment: &[usize]) -> usize {
        match self {
            Word::Var(i) => assignment[*i as usize - 1],
            Word::Inverse(w) => g.invert(w.evaluate(g, assignment)),
            Word::Product(ws) => ws.iter().fold(g.identity(), |acc, w| {
                g.compose(acc, w.evaluate(g, assignment))
            }),
            Word::Power(w, k) => g.power(w.evaluate(g, assignment), *k),
            Word::Commutator(u, w) => {
                g.commutator(u.evaluate(g, assignment), w.evaluate(g, assignment))
            }
        }
    }

    /// Flatten to a letter sequence (commutators expanded, powers repeated)
    /// without free reduction. Fails for powers whose expansion exceeds
    /// `max_letters`.
    pub fn flatten(&self, max_letters: usize) -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        self.flatten_into(&mut out, false, max_letters)?;
        Some(out)
    }

    fn flatten_into(
        &self,
        out: &mut Vec<Letter>,
        inverted: bool,
        max_letters: usize,
    ) -> Option<()> {
        let push = |out: &mut Vec<Letter>, l: Letter| {
            if out.len() >= max_letters {
                None
            } else {
                out.push(l);
                Some(())
            }
        };
        match self {
            Word::Var(i) => push(
                out,
                Letter {
                    var: *i,
                    inverse: inverted,
                },
            ),
            Word::Inverse(w) => w.flatten_into(out, !inverted, max_letters),
            Word::Product(ws) => {
                // An inverted product reverses and inverts its factors.
                if inverted {
                    for w in ws.iter().rev() {
                        w.flatten_into(out, true, max_letters)?;
                    }
                } else {
                    for w in ws {
                        w.flatten_into(out, false, max_letters)?;
                    }
                }
                Some(())
            }
            Word::Power(w, k) => {
                let invert = (*k < 0) != inverted;
                for _ in 0..k.unsigned_abs() {
                    w.flatten_into(out, invert, max_letters)?;
                }
                Some(())
            }
            Word::Commutator(u, w) => {
                if inverted {
                    // [u,w]⁻¹ = w⁻¹u⁻¹wu
                    w.flatten_into(out, true, max_letters)?;
                    u.flatten_into(out, true, max_letters)?;
                    w.flatten_into(out, false, max_letters)?;
                    u.flatten_into(out, false, max_letters)
                } else {
                    u.flatten_into(out, true, max_letters)?;
                    w.flatten_into(out, true, max_letters)?;
                    u.flatten_into(out, false, max_letters)?;
                    w.flatten_into(out, false, max_letters)
                }
            }
        }
    }

    /// Parse the surface syntax.
    pub fn parse(input: &str) -> Result<Word, WordParseError> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(i) => write!(f, "x{i}"),
            Word::Inverse(w) => match **w {
                Word::Var(i) => write!(f, "x{i}^-1"),
                _ => write!(f, "({w})^-1"),
            },
            Word::Product(ws) => {
                for (i, w) in ws.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    match w {
                        Word::Product(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
            Word::Power(w, k) => match **w {
                Word::Var(_) | Word::Commutator(..) => write!(f, "{w}^{k}"),
                _ => write!(f, "({w})^{k}"),
            },
            Word::Commutator(u, w) => write!(f, "[{u},{w}]"),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &'static str) -> WordParseError {
        WordParseError {
            at: self.pos,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Word, WordParseError> {
        let mut factors = alloc::vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Word::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Word, WordParseError> {
        let mut w = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let k = self.integer()?;
                w = if k == -1 {
                    Word::Inverse(Box::new(w))
                } else {
                    Word::Power(Box::new(w), k)
                };
            } else {
                return Ok(w);
            }
        }
    }

    fn atom(&mut self) -> Result<Word, WordParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let i = self.unsigned()?;
                if i == 0 {
                    return Err(self.err("variable indices start at x1"));
                }
                Ok(Word::Var(i as u32))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let w = self.product()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                self.skip_ws();
                let u = self.product()?;
                self.skip_ws();
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                self.skip_ws();
                let w = self.product()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(Word::commutator(u, w))
            }
            _ => Err(self.err("expected a variable, '(' or '['")),
        }
    }

    fn unsigned(&mut self) -> Result<u64, WordParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("number out of range"))
    }

    fn integer(&mut self) -> Result<i64, WordParseError> {
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let n = self.unsigned()?;
        let n = i64::try_from(n).map_err(|_| self.err("number out of range"))?;
        Ok(if negative { -n } else { n })
    }
}

/// One letter of a flat word: a variable or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub var: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.var == other.var && self.inverse != other.inverse
    }
}

/// A freely reduced word: a letter sequence with no adjacent
/// letter/inverse pair. This is the canonical form the law enumeration
/// works with; ordering is by length, then lexicographic with
/// `x1 < x1⁻¹ < x2 < x2⁻¹ < …`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    /// Freely reduce a letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last().is_some_and(|&top| top.is_inverse_of(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        ReducedWord(stack)
    }

    /// Reduce a word tree; `None` if power expansion exceeds `max_letters`.
    pub fn from_word(w: &Word, max_letters: usize) -> Option<Self> {
        Some(Self::reduce(w.flatten(max_letters)?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arity(&self) -> u32 {
        self.0.iter().map(|l| l.var).max().unwrap_or(0)
    }

    /// Convert back to a word tree (a flat product).
    pub fn to_word(&self) -> Word {
        let factors: Vec<Word> = self
            .0
            .iter()
            .map(|l| {
                if l.inverse {
                    Word::Inverse(Box::new(Word::Var(l.var)))
                } else {
                    Word::Var(l.var)
                }
            })
            .collect();
        match factors.len() {
            1 => factors.into_iter().next().unwrap(),
            _ => Word::Product(factors),
        }
    }

    pub fn evaluate<G: GroupOps + ?Sized>(&self, g: &G, assignment: &[usize]) -> usize {
        self.0.iter().fold(g.identity(), |acc, l| {
            let v = assignment[l.var as usize - 1];
            g.compose(acc, if l.inverse { g.invert(v) } else { v })
        })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Runs of the same letter print as powers.
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match (l.inverse, run) {
                (false, 1) => write!(f, "x{}", l.var)?,
                (false, n) => write!(f, "x{}^{n}", l.var)?,
                (true, n) => write!(f, "x{}^-{n}", l.var)?,
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::GroupExpr;
    use crate::group::{ConcreteGroup, DEFAULT_CAP};

    fn parse(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_spec_syntax() {
        assert_eq!(parse("x1"), Word::Var(1));
        assert_eq!(parse("x1^-1"), Word::Inverse(Box::new(Word::Var(1))));
        assert_eq!(
            parse("[x1,x2]"),
            Word::commutator(Word::Var(1), Word::Var(2))
        );
        assert_eq!(
            parse("[[x1,x2],x3]"),
            Word::commutator(Word::commutator(Word::Var(1), Word::Var(2)), Word::Var(3))
        );
        assert_eq!(parse("x2^3").arity(), 2);
        assert_eq!(
            parse("(x1*x2)^-2"),
            Word::Power(
                Box::new(Word::Product(alloc::vec![Word::Var(1), Word::Var(2)])),
                -2
            )
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        for bad in ["", "x0", "x", "y1", "[x1 x2]", "(x1", "x1^", "x1 x2", "x1*"] {
            let err = Word::parse(bad).unwrap_err();
            assert!(err.at <= bad.len(), "{bad:?} -> {err}");
        }
    }

    #[test]
    fn display_round_trips_through_parser() {
        for src in ["x1", "[x1,x2]*x3^-2", "(x1*x2)^4", "[[x1,x2],x3]"] {
            let w = parse(src);
            assert_eq!(parse(&alloc::format!("{w}")), w, "{src}");
        }
    }

    #[test]
    fn evaluation_matches_flattened_form() {
        let g = ConcreteGroup::materialize(
            GroupExpr::wreath(GroupExpr::cyclic(2), GroupExpr::cyclic(2)),
            DEFAULT_CAP,
        )
        .unwrap();
        let words = [
            parse("[x1,x2]"),
            parse("x1^3*x2^-2"),
            parse("[[x1,x2],x1]*x2^4"),
            parse("(x1*x2^-1)^-3"),
        ];
        for w in &words {
            let flat = ReducedWord::from_word(w, 10_000).unwrap();
            for a in 0..8 {
                for b in 0..8 {
                    let asgn = [a, b];
                    assert_eq!(w.evaluate(&g, &asgn), flat.evaluate(&g, &asgn), "{w}");
                }
            }
        }
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        let w = parse("x1*x1^-1*x2");
        let r = ReducedWord::from_word(&w, 100).unwrap();
        assert_eq!(r.to_word(), Word::Var(2));
        let empty = ReducedWord::from_word(&parse("[x1,x1]"), 100).unwrap();
        assert!(empty.is_empty());
        assert_eq!(alloc::format!("{empty}"), "1");
    }

    #[test]
    fn reduced_word_display_groups_runs() {
        let r = ReducedWord::from_word(&parse("x1^2*x2^-1*x2^-1*x1"), 100).unwrap();
        assert_eq!(alloc::format!("{r}"), "x1^2*x2^-2*x1");
    }

    #[test]
    fn flatten_budget_is_respected() {
        let w = parse("x1^1000000");
        assert!(w.flatten(100).is_none());
        assert!(w.flatten(1_000_000).is_some());
    }
}
