use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use dihomotopy::homotopy::Homotopy;
use dihomotopy::io::{read_digraph, read_homotopy, read_map};
use dihomotopy::{Digraph, DigraphMap, Error, Result};

/// Named inputs of one invocation. Digraphs equal to one already loaded are
/// shared, so maps read from separate files compose without copies.
#[derive(Default)]
pub struct Workspace {
    digraphs: BTreeMap<String, Arc<Digraph>>,
    maps: BTreeMap<String, DigraphMap>,
}

impl Workspace {
    pub fn load_digraph(&mut self, name: &str, path: &Path) -> Result<Arc<Digraph>> {
        let g = self.intern(Arc::new(read_digraph(path)?));
        self.insert_digraph(name, g.clone())?;
        Ok(g)
    }

    pub fn load_map(&mut self, name: &str, path: &Path) -> Result<DigraphMap> {
        let f = read_map(path)?;
        let f = DigraphMap::new(self.intern(f.domain().clone()), self.intern(f.codomain().clone()), f.assignment().to_vec())?;
        self.insert_map(name, f.clone())?;
        Ok(f)
    }

    pub fn load_homotopy(&mut self, path: &Path) -> Result<Homotopy> {
        let h = read_homotopy(path)?;
        let (domain, codomain) = (self.intern(h.domain().clone()), self.intern(h.codomain().clone()));
        let frames = h
            .frames()
            .iter()
            .map(|f| DigraphMap::new(domain.clone(), codomain.clone(), f.assignment().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Homotopy::new(domain, codomain, h.line().clone(), frames)
    }

    pub fn insert_digraph(&mut self, name: &str, g: Arc<Digraph>) -> Result<()> {
        if self.digraphs.contains_key(name) || self.maps.contains_key(name) {
            return Err(Error::Document(format!("name `{name}` is already bound")));
        }
        self.digraphs.insert(name.to_string(), g);
        Ok(())
    }

    pub fn insert_map(&mut self, name: &str, f: DigraphMap) -> Result<()> {
        if self.digraphs.contains_key(name) || self.maps.contains_key(name) {
            return Err(Error::Document(format!("name `{name}` is already bound")));
        }
        self.maps.insert(name.to_string(), f);
        Ok(())
    }

    fn intern(&self, g: Arc<Digraph>) -> Arc<Digraph> {
        let known = self.digraphs.values().chain(self.maps.values().flat_map(|m| [m.domain(), m.codomain()]));
        known.into_iter().find(|k| ***k == *g).cloned().unwrap_or(g)
    }
}
