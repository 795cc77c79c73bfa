//! Name-keyed registries of interchangeable strategies (solvers, evaluators).

use crate::error::{Error, Result};

pub trait Named {
    fn name(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Later registrations replace earlier ones with the same name.
    pub fn register(&mut self, item: Box<T>) -> &mut Self {
        self.entries.retain(|e| e.name() != item.name());
        self.entries.push(item);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Unknown { kind: self.kind, name: name.to_string() })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}
