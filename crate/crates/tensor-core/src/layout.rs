//! Named contiguous segment layouts.
//!
//! Structured vectors and matrix row/column spaces in the toolkit are
//! always addressed through a [`BlockLayout`], never through raw offsets:
//! a segment that is absent in a degenerate configuration simply carries
//! width zero and every offset downstream stays correct.

use std::ops::Range;

/// An ordered list of named segments with fixed widths.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    names: Vec<String>,
    widths: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    /// Builds a layout from `(name, width)` pairs. Names must be unique;
    /// zero widths are allowed and occupy no space.
    pub fn new(segments: &[(&str, usize)]) -> Self {
        let mut names = Vec::with_capacity(segments.len());
        let mut widths = Vec::with_capacity(segments.len());
        let mut offsets = Vec::with_capacity(segments.len());
        let mut total = 0;
        for (name, width) in segments {
            assert!(
                !names.iter().any(|n: &String| n == name),
                "duplicate segment name '{name}' in layout"
            );
            names.push((*name).to_string());
            widths.push(*width);
            offsets.push(total);
            total += width;
        }
        BlockLayout {
            names,
            widths,
            offsets,
            total,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    fn index_of(&self, name: &str) -> usize {
        self.names
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("segment '{name}' not present in layout {:?}", self.names))
    }

    pub fn width(&self, name: &str) -> usize {
        self.widths[self.index_of(name)]
    }

    pub fn offset(&self, name: &str) -> usize {
        self.offsets[self.index_of(name)]
    }

    pub fn range(&self, name: &str) -> Range<usize> {
        let i = self.index_of(name);
        self.offsets[i]..self.offsets[i] + self.widths[i]
    }

    /// Segment names in order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    /// `(name, offset, width)` triples in order.
    pub fn segments(&self) -> impl Iterator<Item = (&str, usize, usize)> {
        self.names
            .iter()
            .zip(&self.offsets)
            .zip(&self.widths)
            .map(|((n, o), w)| (n.as_str(), *o, *w))
    }
}
