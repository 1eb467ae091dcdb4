use super::{NecSignature, Sign};
use crate::error::ParseError;
use crate::text::Cursor;

/// Parses `(g;±;[m,...];{()...})`. Whitespace is ignored everywhere between
/// tokens, and `()^k` expands to `k` empty period cycles.
pub fn parse_signature(text: &str) -> Result<NecSignature, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect('(', "'('")?;
    let genus = cur.number("genus")?;
    cur.expect(';', "';'")?;

    let sign_pos = cur.position();
    let sign = match cur.bump() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        found => return Err(ParseError::unexpected(sign_pos, "'+' or '-'", found)),
    };
    if sign == Sign::Minus && genus == 0 {
        return Err(ParseError::semantic(
            sign_pos,
            "sign '-' requires genus at least 1",
        ));
    }
    cur.expect(';', "';'")?;

    cur.expect('[', "'['")?;
    let periods = period_list(&mut cur, ']', "period")?;
    cur.expect(']', "',' or ']'")?;
    cur.expect(';', "';'")?;

    cur.expect('{', "'{'")?;
    let mut empty_cycles = 0u64;
    let mut nonempty = Vec::new();
    while cur.eat('(') {
        let links = period_list(&mut cur, ')', "link period")?;
        cur.expect(')', "',' or ')'")?;
        if links.is_empty() {
            let mut copies = 1;
            if cur.eat('^') {
                copies = cur.number("cycle multiplicity")?;
            }
            empty_cycles = empty_cycles
                .checked_add(copies)
                .ok_or_else(|| ParseError::semantic(cur.position(), "too many period cycles"))?;
        } else {
            nonempty.push(links);
        }
    }
    cur.expect('}', "'(' or '}'")?;
    cur.expect(')', "')'")?;
    cur.finish()?;

    // every semantic constraint was checked above with a position attached
    Ok(
        NecSignature::with_cycles(genus, sign, periods, empty_cycles, nonempty)
            .expect("constraints checked during parsing"),
    )
}

/// Comma-separated integers >= 2, possibly empty when `close` follows at once.
fn period_list(cur: &mut Cursor, close: char, what: &'static str) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    if cur.peek() == Some(close) {
        return Ok(out);
    }
    loop {
        let pos = cur.position();
        let m = cur.number(what)?;
        if m < 2 {
            return Err(ParseError::semantic(
                pos,
                format!("{what} {m} is less than 2"),
            ));
        }
        out.push(m);
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}
