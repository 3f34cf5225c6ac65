use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::Signature;

/// Name given to the individual added when a program mentions no constant.
pub const DUMMY_CONSTANT: &str = "c0";

/// The finite Herbrand universe of a function-free program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new(names: impl IntoIterator<Item = impl Into<String>>) -> Result<Universe> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::TypeMismatch(format!(
                    "individual `{n}` listed twice"
                )));
            }
        }
        if names.is_empty() {
            return Universe::new([DUMMY_CONSTANT]);
        }
        Ok(Universe { names, index })
    }

    /// The constants of `sig`, or a single dummy constant when there are none.
    pub fn from_signature(sig: &Signature) -> Result<Universe> {
        if let Some(f) = sig.functions.keys().next() {
            return Err(Error::InfiniteUniverse(f.clone()));
        }
        Universe::new(sig.constants.iter().cloned())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_universe_gets_a_dummy() {
        let u = Universe::new(Vec::<String>::new()).unwrap();
        assert_eq!(u.names(), [DUMMY_CONSTANT]);
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(Universe::new(["a", "a"]).is_err());
        let u = Universe::new(["a", "b"]).unwrap();
        assert_eq!(u.index_of("b"), Some(1));
    }
}
