//! Scheme specifiers: a small expression language naming built-in schemes,
//! files and transformations of them.
//!
//! ```text
//! spec := "strassen"
//!       | "naive:" u "," v "," w
//!       | "kron:" spec "," spec
//!       | "orient:" spec ":" u "," v "," w
//!       | "rotate:" spec
//!       | "transpose:" spec
//!       | "fixture:" name          (file in $FMM_FIXTURES, ".json" optional)
//!       | "file:" path
//!       | "(" spec ")"
//!       | path                     (whole argument, or up to , : ) when nested)
//! ```
//!
//! For example `kron:orient:fixture:smirnov_336:6,3,3,naive:1,2,2`.

use std::fmt;
use std::path::PathBuf;

use crate::algebra::{kronecker, orient, rotate, transpose_dual};
use crate::catalog::{load_scheme, naive_scheme, strassen_scheme};
use crate::error::{FmmError, Result};
use crate::scheme::{BilinearScheme, Dims};

pub const FIXTURES_ENV: &str = "FMM_FIXTURES";

/// Directory named by `$FMM_FIXTURES`, if set.
pub fn fixture_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURES_ENV).map(PathBuf::from)
}

/// Path of fixture `name` under [`fixture_dir`], if that file exists.
pub fn fixture_path(name: &str) -> Option<PathBuf> {
    let dir = fixture_dir()?;
    [name.to_string(), format!("{name}.json")]
        .into_iter()
        .map(|n| dir.join(n))
        .find(|p| p.is_file())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeSpec {
    Strassen,
    Naive(Dims),
    Kron(Box<SchemeSpec>, Box<SchemeSpec>),
    Orient(Box<SchemeSpec>, Dims),
    Rotate(Box<SchemeSpec>),
    Transpose(Box<SchemeSpec>),
    Fixture(String),
    File(PathBuf),
}

impl SchemeSpec {
    pub fn parse(text: &str) -> Result<SchemeSpec> {
        let mut parser = Parser { text, pos: 0 };
        let spec = parser.spec(false)?;
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<BilinearScheme> {
        match self {
            SchemeSpec::Strassen => Ok(strassen_scheme()),
            SchemeSpec::Naive(d) => naive_scheme(d.u(), d.v(), d.w()),
            SchemeSpec::Kron(a, b) => Ok(kronecker(&a.build()?, &b.build()?)),
            SchemeSpec::Orient(s, d) => orient(&s.build()?, *d),
            SchemeSpec::Rotate(s) => Ok(rotate(&s.build()?)),
            SchemeSpec::Transpose(s) => Ok(transpose_dual(&s.build()?)),
            SchemeSpec::Fixture(name) => {
                let path = fixture_path(name).ok_or_else(|| FmmError::Spec {
                    spec: self.to_string(),
                    message: format!("fixture not found (set {FIXTURES_ENV})"),
                })?;
                load_scheme(path)
            }
            SchemeSpec::File(path) => load_scheme(path),
        }
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims = |d: &Dims| format!("{},{},{}", d.u(), d.v(), d.w());
        match self {
            SchemeSpec::Strassen => write!(f, "strassen"),
            SchemeSpec::Naive(d) => write!(f, "naive:{}", dims(d)),
            SchemeSpec::Kron(a, b) => write!(f, "kron:{a},{b}"),
            SchemeSpec::Orient(s, d) => write!(f, "orient:{s}:{}", dims(d)),
            SchemeSpec::Rotate(s) => write!(f, "rotate:{s}"),
            SchemeSpec::Transpose(s) => write!(f, "transpose:{s}"),
            SchemeSpec::Fixture(name) => write!(f, "fixture:{name}"),
            SchemeSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl std::str::FromStr for SchemeSpec {
    type Err = FmmError;

    fn from_str(s: &str) -> Result<Self> {
        SchemeSpec::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn error(&self, message: &str) -> FmmError {
        FmmError::Spec {
            spec: self.text.to_string(),
            message: format!("{message} at offset {}", self.pos),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn dims(&mut self) -> Result<Dims> {
        let u = self.number()?;
        self.expect(",")?;
        let v = self.number()?;
        self.expect(",")?;
        let w = self.number()?;
        Dims::new(u, v, w).map_err(|_| self.error("dimensions must be positive"))
    }

    /// A name or path: the rest of the input at top level, otherwise up to
    /// the next delimiter.
    fn word(&mut self, nested: bool) -> Result<String> {
        let len = if nested {
            self.rest()
                .find([',', ':', ')'])
                .unwrap_or(self.rest().len())
        } else {
            self.rest().len()
        };
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        let word = self.rest()[..len].to_string();
        self.pos += len;
        Ok(word)
    }

    fn spec(&mut self, nested: bool) -> Result<SchemeSpec> {
        if self.eat("(") {
            let inner = self.spec(true)?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("naive:") {
            return Ok(SchemeSpec::Naive(self.dims()?));
        }
        if self.eat("kron:") {
            let a = self.spec(true)?;
            self.expect(",")?;
            let b = self.spec(true)?;
            return Ok(SchemeSpec::Kron(Box::new(a), Box::new(b)));
        }
        if self.eat("orient:") {
            let s = self.spec(true)?;
            self.expect(":")?;
            return Ok(SchemeSpec::Orient(Box::new(s), self.dims()?));
        }
        if self.eat("rotate:") {
            return Ok(SchemeSpec::Rotate(Box::new(self.spec(nested)?)));
        }
        if self.eat("transpose:") {
            return Ok(SchemeSpec::Transpose(Box::new(self.spec(nested)?)));
        }
        if self.eat("fixture:") {
            return Ok(SchemeSpec::Fixture(self.word(true)?));
        }
        if self.eat("file:") {
            return Ok(SchemeSpec::File(self.word(nested)?.into()));
        }
        let word = self.word(nested)?;
        Ok(if word == "strassen" {
            SchemeSpec::Strassen
        } else {
            SchemeSpec::File(word.into())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(u: usize, v: usize, w: usize) -> Dims {
        Dims::new(u, v, w).unwrap()
    }

    #[test]
    fn parses_nested_expressions() {
        let spec = SchemeSpec::parse("kron:orient:fixture:smirnov_336:6,3,3,naive:1,2,2").unwrap();
        assert_eq!(
            spec,
            SchemeSpec::Kron(
                Box::new(SchemeSpec::Orient(
                    Box::new(SchemeSpec::Fixture("smirnov_336".into())),
                    d(6, 3, 3)
                )),
                Box::new(SchemeSpec::Naive(d(1, 2, 2)))
            )
        );
        assert_eq!(
            spec.to_string(),
            "kron:orient:fixture:smirnov_336:6,3,3,naive:1,2,2"
        );
    }

    #[test]
    fn parses_atoms() {
        assert_eq!(SchemeSpec::parse("strassen").unwrap(), SchemeSpec::Strassen);
        assert_eq!(
            SchemeSpec::parse("out/s777.scheme").unwrap(),
            SchemeSpec::File("out/s777.scheme".into())
        );
        assert_eq!(
            SchemeSpec::parse("kron:(dir/a.json),strassen").unwrap(),
            SchemeSpec::Kron(
                Box::new(SchemeSpec::File("dir/a.json".into())),
                Box::new(SchemeSpec::Strassen)
            )
        );
        assert_eq!(
            SchemeSpec::parse("rotate:rotate:strassen")
                .unwrap()
                .to_string(),
            "rotate:rotate:strassen"
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "naive:1,2",
            "naive:0,1,1",
            "kron:strassen",
            "orient:strassen",
            "naive:1,2,3x",
            "",
        ] {
            assert!(SchemeSpec::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn builds() {
        let s = SchemeSpec::parse("kron:strassen,strassen")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.rank(), 49);
        let s = SchemeSpec::parse("orient:naive:3,3,4:4,3,3")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.dims(), d(4, 3, 3));
        let s = SchemeSpec::parse("rotate:naive:1,2,3")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.dims(), d(2, 3, 1));
        let s = SchemeSpec::parse("transpose:naive:1,2,3")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(s.dims(), d(3, 2, 1));
        assert!(SchemeSpec::parse("orient:strassen:2,2,3")
            .unwrap()
            .build()
            .is_err());
    }
}
