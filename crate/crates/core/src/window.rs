//! Fixed-capacity sliding window over the sentence stream.
//!
//! Sentences are pushed in stream order; once a sentence falls out of the
//! window it is handed back to the caller and is no longer reachable from
//! here.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::ingest::Sentence;

pub const DEFAULT_CAPACITY: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("window capacity must be at least 1")]
    ZeroCapacity,
    #[error("sentence {got} pushed out of order, expected {expected}")]
    OutOfOrder { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowState {
    capacity: usize,
    buffer: VecDeque<Sentence>,
    consumed: usize,
}

impl Default for WindowState {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY).expect("default capacity is positive")
    }
}

impl WindowState {
    pub fn new(capacity: usize) -> Result<Self, WindowError> {
        if capacity == 0 {
            return Err(WindowError::ZeroCapacity);
        }
        Ok(Self { capacity, buffer: VecDeque::with_capacity(capacity + 1), consumed: 0 })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Total number of sentences ever pushed.
    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    /// Buffered sentences, oldest first.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Sentence> + ExactSizeIterator {
        self.buffer.iter()
    }

    /// Append the next sentence, returning the one that fell out, if any.
    pub fn push(&mut self, sentence: Sentence) -> Result<Option<Sentence>, WindowError> {
        if sentence.seq != self.consumed {
            return Err(WindowError::OutOfOrder { expected: self.consumed, got: sentence.seq });
        }
        self.buffer.push_back(sentence);
        self.consumed += 1;
        if self.buffer.len() > self.capacity {
            Ok(self.buffer.pop_front())
        } else {
            Ok(None)
        }
    }

    /// Up to `n` most recent sentences, most recent last.
    pub fn lookback(&self, n: usize) -> Vec<&Sentence> {
        let skip = self.buffer.len().saturating_sub(n);
        self.buffer.iter().skip(skip).collect()
    }

    pub fn latest(&self) -> Option<&Sentence> {
        self.buffer.back()
    }

    /// Buffered sentence with the given stream number.
    pub fn get(&self, seq: usize) -> Option<&Sentence> {
        let oldest = self.buffer.front()?.seq;
        seq.checked_sub(oldest).and_then(|i| self.buffer.get(i))
    }

    /// Swap in a rewritten copy of the newest sentence (same `seq`), e.g. after
    /// pronoun substitution.
    pub fn replace_latest(&mut self, sentence: Sentence) -> Option<Sentence> {
        match self.buffer.back_mut() {
            Some(slot) if slot.seq == sentence.seq => Some(core::mem::replace(slot, sentence)),
            _ => None,
        }
    }
}
