//! Name-keyed collections of interchangeable algorithms.

use crate::error::{Error, Result};

/// Anything selectable by name at runtime.
pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// A later registration under the same name replaces the earlier one.
    pub fn register(&mut self, entry: Box<T>) {
        self.entries.retain(|e| e.name() != entry.name());
        self.entries.push(entry);
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    /// Names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| e.as_ref())
    }
}
