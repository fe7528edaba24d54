//! Token spans as sorted, disjoint, half-open ranges over document-wide
//! token indices.
//!
//! Externally a span is written as comma-joined `a-b` pairs with both ends
//! inclusive, e.g. `3-7,10-12`. A single token is written `4-4`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenSpan {
    ranges: Vec<Range<usize>>,
}

impl TokenSpan {
    pub fn empty() -> Self {
        TokenSpan { ranges: Vec::new() }
    }

    /// Build a span from arbitrary ranges; overlapping and adjacent ranges
    /// are merged and empty ones dropped.
    pub fn new(ranges: impl IntoIterator<Item = Range<usize>>) -> Self {
        let mut ranges: Vec<_> = ranges.into_iter().filter(|r| r.start < r.end).collect();
        ranges.sort_by_key(|r| (r.start, r.end));
        let mut merged: Vec<Range<usize>> = Vec::with_capacity(ranges.len());
        for r in ranges {
            match merged.last_mut() {
                Some(last) if r.start <= last.end => last.end = last.end.max(r.end),
                _ => merged.push(r),
            }
        }
        TokenSpan { ranges: merged }
    }

    pub fn from_range(range: Range<usize>) -> Self {
        TokenSpan::new(std::iter::once(range))
    }

    pub fn from_tokens(tokens: impl IntoIterator<Item = usize>) -> Self {
        TokenSpan::new(tokens.into_iter().map(|t| t..t + 1))
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ranges.iter().map(|r| r.end - r.start).sum()
    }

    /// First token, if any.
    pub fn start(&self) -> Option<usize> {
        self.ranges.first().map(|r| r.start)
    }

    /// One past the last token, if any.
    pub fn end(&self) -> Option<usize> {
        self.ranges.last().map(|r| r.end)
    }

    pub fn is_contiguous(&self) -> bool {
        self.ranges.len() <= 1
    }

    pub fn contains(&self, token: usize) -> bool {
        self.ranges.iter().any(|r| r.contains(&token))
    }

    pub fn tokens(&self) -> impl Iterator<Item = usize> + '_ {
        self.ranges.iter().flat_map(|r| r.clone())
    }

    pub fn union(&self, other: &TokenSpan) -> TokenSpan {
        TokenSpan::new(self.ranges.iter().chain(other.ranges.iter()).cloned())
    }

    pub fn intersection(&self, other: &TokenSpan) -> TokenSpan {
        let mut out = Vec::new();
        for a in &self.ranges {
            for b in &other.ranges {
                let start = a.start.max(b.start);
                let end = a.end.min(b.end);
                if start < end {
                    out.push(start..end);
                }
            }
        }
        TokenSpan::new(out)
    }

    pub fn difference(&self, other: &TokenSpan) -> TokenSpan {
        let mut out = Vec::new();
        for a in &self.ranges {
            let mut cursor = a.start;
            for b in &other.ranges {
                if b.end <= cursor || b.start >= a.end {
                    continue;
                }
                if b.start > cursor {
                    out.push(cursor..b.start);
                }
                cursor = cursor.max(b.end);
            }
            if cursor < a.end {
                out.push(cursor..a.end);
            }
        }
        TokenSpan::new(out)
    }

    pub fn overlaps(&self, other: &TokenSpan) -> bool {
        !self.intersection(other).is_empty()
    }

    pub fn is_subset_of(&self, other: &TokenSpan) -> bool {
        self.difference(other).is_empty()
    }
}

impl Ord for TokenSpan {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: &TokenSpan| s.ranges.iter().map(|r| (r.start, r.end)).collect::<Vec<_>>();
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for TokenSpan {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Range<usize>> for TokenSpan {
    fn from(range: Range<usize>) -> Self {
        TokenSpan::from_range(range)
    }
}

impl fmt::Display for TokenSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.ranges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", r.start, r.end - 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid token range `{0}`")]
pub struct SpanParseError(pub String);

impl FromStr for TokenSpan {
    type Err = SpanParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(TokenSpan::empty());
        }
        let mut ranges = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| SpanParseError(part.to_owned()))?;
            let a: usize = a.trim().parse().map_err(|_| SpanParseError(part.to_owned()))?;
            let b: usize = b.trim().parse().map_err(|_| SpanParseError(part.to_owned()))?;
            if b < a {
                return Err(SpanParseError(part.to_owned()));
            }
            ranges.push(a..b + 1);
        }
        Ok(TokenSpan::new(ranges))
    }
}
