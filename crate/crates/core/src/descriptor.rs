//! Text descriptors: `n=4; nil=(1,2),(1,3); cartan=H1,H[2,4]`.
//!
//! `Hk` is `e_k - e_{k+1}` and `H[p,q]` is `e_p - e_q`. A raw diagonal can
//! be written as `[1,-1,0,0]`. Whitespace is ignored and indices are 1-based.
//! The `nil` and `cartan` sections are optional and may be empty.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::basis::h_pq_vector;
use crate::{Error, RegularSubalgebra, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&mut self, message: &'static str) -> Error {
        self.skip_ws();
        let token: String = self.src[self.pos..]
            .chars()
            .take_while(|c| !matches!(c, ';' | ','))
            .take(16)
            .collect();
        Error::Parse {
            position: self.pos,
            token: if token.is_empty() {
                "<end>".to_string()
            } else {
                token
            },
            message,
        }
    }

    fn expect(&mut self, c: char, message: &'static str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(message))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_ascii_alphabetic() {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos] == b'-' || bytes[self.pos] == b'+') {
            self.pos += 1;
        }
        self.skip_ws();
        let digits = self.pos;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let text: String = self.src[start..self.pos]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| {
            self.pos = start;
            self.error("expected a non-negative index")
        })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a descriptor into a validated (not necessarily closed) subalgebra.
pub fn parse(src: &str) -> Result<RegularSubalgebra> {
    let mut cur = Cursor { src, pos: 0 };
    let mut n: Option<usize> = None;
    let mut nil: Vec<(usize, usize, usize)> = Vec::new();
    let mut cartan: Vec<(usize, CartanToken)> = Vec::new();
    let mut seen_nil = false;
    let mut seen_cartan = false;

    loop {
        if cur.at_end() {
            break;
        }
        let key_pos = {
            cur.skip_ws();
            cur.pos
        };
        let key = cur.word();
        cur.expect('=', "expected `=` after section name")?;
        match key {
            "n" if n.is_none() => n = Some(cur.index()?),
            "nil" if !seen_nil => {
                seen_nil = true;
                while cur.peek() == Some('(') {
                    let at = cur.pos;
                    cur.expect('(', "expected `(`")?;
                    let i = cur.index()?;
                    cur.expect(',', "expected `,` inside position")?;
                    let j = cur.index()?;
                    cur.expect(')', "expected `)`")?;
                    nil.push((at, i, j));
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            "cartan" if !seen_cartan => {
                seen_cartan = true;
                while matches!(cur.peek(), Some('H' | '[')) {
                    let at = cur.pos;
                    let tok = if cur.eat('[') {
                        let mut v = Vec::new();
                        if !cur.eat(']') {
                            loop {
                                v.push(cur.int()?);
                                if cur.eat(']') {
                                    break;
                                }
                                cur.expect(',', "expected `,` or `]` in vector")?;
                            }
                        }
                        CartanToken::Vector(v)
                    } else {
                        cur.expect('H', "expected `H`")?;
                        if cur.eat('[') {
                            let p = cur.index()?;
                            cur.expect(',', "expected `,` in H[p,q]")?;
                            let q = cur.index()?;
                            cur.expect(']', "expected `]`")?;
                            CartanToken::Pair(p, q)
                        } else {
                            let k = cur.index()?;
                            CartanToken::Pair(k, k + 1)
                        }
                    };
                    cartan.push((at, tok));
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            "" => {
                cur.pos = key_pos;
                return Err(cur.error("expected a section name"));
            }
            _ => {
                cur.pos = key_pos;
                return Err(cur.error("unknown or repeated section"));
            }
        }
        if cur.at_end() {
            break;
        }
        cur.expect(';', "expected `;` between sections")?;
    }

    let Some(n) = n else {
        cur.pos = 0;
        return Err(cur.error("missing `n=` section"));
    };
    crate::star::check_size(n).map_err(|_| Error::Parse {
        position: 0,
        token: alloc::format!("n={n}"),
        message: "n must be between 1 and 64",
    })?;

    let mut positions = Vec::new();
    for (at, i, j) in nil {
        if i == 0 || i >= j || j > n {
            cur.pos = at;
            return Err(cur.error("position must satisfy 1 <= i < j <= n"));
        }
        positions.push((i, j));
    }
    let mut gens = Vec::new();
    for (at, tok) in cartan {
        let v = match tok {
            CartanToken::Pair(p, q) => h_pq_vector(n, p, q).map_err(|_| {
                cur.pos = at;
                cur.error("cartan index out of range")
            })?,
            CartanToken::Vector(v) => {
                if v.len() != n {
                    cur.pos = at;
                    return Err(cur.error("diagonal vector must have n entries"));
                }
                v
            }
        };
        gens.push(v);
    }
    RegularSubalgebra::new(n, positions, gens)
}

enum CartanToken {
    Pair(usize, usize),
    Vector(Vec<i64>),
}

/// `Hk`, `H[p,q]`, or a raw `[..]` vector.
pub fn format_diag(d: &[i64]) -> String {
    let nonzero: Vec<usize> = (0..d.len()).filter(|&k| d[k] != 0).collect();
    if let [p, q] = nonzero[..] {
        if d[p] == 1 && d[q] == -1 {
            return if q == p + 1 {
                alloc::format!("H{}", p + 1)
            } else {
                alloc::format!("H[{},{}]", p + 1, q + 1)
            };
        }
    }
    let mut s = String::from("[");
    for (k, x) in d.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(&x.to_string());
    }
    s.push(']');
    s
}

impl fmt::Display for RegularSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; nil=", self.n())?;
        for (k, (i, j)) in self.nil_star().positions().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("; cartan=")?;
        for (k, g) in self.cartan().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_diag(g))?;
        }
        Ok(())
    }
}

impl core::str::FromStr for RegularSubalgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_example() {
        let a = parse("n=4; nil=(1,2),(1,3); cartan=H1,H[2,4]").unwrap();
        assert_eq!(a.n(), 4);
        assert_eq!(a.nil_positions(), vec![(1, 2), (1, 3)]);
        assert_eq!(a.cartan(), &[vec![1, -1, 0, 0], vec![0, 1, 0, -1]]);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse("  n = 4 ;nil=( 1 , 2 ) , (1,3) ;  cartan = H 1 , H [ 2 , 4 ]  ").unwrap();
        let b = parse("n=4;nil=(1,2),(1,3);cartan=H1,H[2,4]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_sections() {
        let a = parse("n=3; nil=(1,2),(2,3); cartan=").unwrap();
        assert_eq!(a.dim(), 2);
        let b = parse("n=3").unwrap();
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn round_trips_through_display() {
        let src = "n=4; nil=(1,3),(1,4),(3,4); cartan=H1,H[2,4],[1,1,-1,-1]";
        let a = parse(src).unwrap();
        assert_eq!(a.to_string(), src);
        assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn errors_name_token_and_position() {
        let e = parse("n=3; nil=(2,1)").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                position: 9,
                token: "(2".into(),
                message: "position must satisfy 1 <= i < j <= n"
            }
        );
        let e = parse("n=3; foo=1").unwrap_err();
        assert!(matches!(e, Error::Parse { position: 5, .. }));
        let e = parse("n=3; cartan=H3").unwrap_err();
        assert!(matches!(
            e,
            Error::Parse {
                position: 12,
                message: "cartan index out of range",
                ..
            }
        ));
        assert!(matches!(parse("nil=(1,2)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("n=3; nil=(1,2"), Err(Error::Parse { .. })));
        assert!(matches!(parse("n=99"), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_diag_forms() {
        assert_eq!(format_diag(&[0, 1, -1, 0]), "H2");
        assert_eq!(format_diag(&[1, 0, -1, 0]), "H[1,3]");
        assert_eq!(format_diag(&[-1, 1, 0]), "[-1,1,0]");
    }
}
