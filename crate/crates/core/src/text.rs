//! Whitespace-insensitive character cursor shared by the signature and map
//! parsers. Positions are 1-based character offsets into the original text.

use crate::error::{ParseError, ParseErrorKind};

pub(crate) struct Cursor {
    chars: Vec<char>,
    idx: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            idx: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.idx).is_some_and(|c| c.is_whitespace()) {
            self.idx += 1;
        }
    }

    /// Next non-whitespace character, without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.idx).copied()
    }

    /// Position of the next non-whitespace character.
    pub fn position(&mut self) -> usize {
        self.skip_ws();
        self.idx + 1
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let pos = self.position();
            Err(ParseError::unexpected(pos, what, self.peek()))
        }
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.idx += 1;
        Some(c)
    }

    /// Unsigned decimal integer. Digits must be contiguous.
    pub fn number(&mut self, what: &'static str) -> Result<u64, ParseError> {
        let start = self.position();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(d) = self.chars.get(self.idx).and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .ok_or(ParseError {
                    position: start,
                    kind: ParseErrorKind::NumberTooLarge,
                })?;
            self.idx += 1;
            digits += 1;
        }
        if digits == 0 {
            return Err(ParseError::unexpected(start, what, self.peek()));
        }
        Ok(value)
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(ParseError {
                position: self.position(),
                kind: ParseErrorKind::Trailing(c),
            }),
        }
    }
}
