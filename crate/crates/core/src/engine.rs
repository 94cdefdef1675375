//! Shared, thread-safe caches of modules, tensor spaces, `Psi` and canonical bases.
//!
//! Every object is built at most once per engine; concurrent requests for the
//! same parameters block on the first builder.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canonical::{canonical_basis, CanonicalBasis};
use crate::error::Result;
use crate::repmod::{build_highest_module, build_lowest_module, ModuleRealization};
use crate::tensorspace::{Params, PsiOperator, TensorSpace};

/// Environment variable naming a directory for the on-disk `Psi` cache.
pub const CACHE_DIR_ENV: &str = "SL3CANON_CACHE_DIR";

/// A tensor space with its bar involution and canonical basis.
#[derive(Debug)]
pub struct Space {
    pub ts: TensorSpace,
    pub psi: PsiOperator,
    pub basis: CanonicalBasis,
}

type Slot<T> = Arc<OnceLock<std::result::Result<Arc<T>, crate::Error>>>;

struct Memo<K, T> {
    slots: Mutex<HashMap<K, Slot<T>>>,
}

impl<K: std::hash::Hash + Eq + Copy, T> Memo<K, T> {
    fn new() -> Self {
        Memo {
            slots: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, key: K, build: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let slot = self.slots.lock().unwrap().entry(key).or_default().clone();
        slot.get_or_init(|| build().map(Arc::new)).clone()
    }

    fn len(&self) -> usize {
        self.slots
            .lock()
            .unwrap()
            .values()
            .filter(|s| s.get().is_some())
            .count()
    }
}

pub struct Engine {
    cache_dir: Option<PathBuf>,
    highest: Memo<(i64, i64), ModuleRealization>,
    lowest: Memo<(i64, i64), ModuleRealization>,
    spaces: Memo<Params, Space>,
    notes: Mutex<Vec<String>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(None)
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("cache_dir", &self.cache_dir)
            .field("spaces", &self.spaces.len())
            .finish()
    }
}

impl Engine {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        Engine {
            cache_dir,
            highest: Memo::new(),
            lowest: Memo::new(),
            spaces: Memo::new(),
            notes: Mutex::new(Vec::new()),
        }
    }

    /// Uses [`CACHE_DIR_ENV`] when set and nonempty.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(PathBuf::from);
        Engine::new(dir)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn highest_module(&self, a: i64, b: i64) -> Result<Arc<ModuleRealization>> {
        self.highest.get((a, b), || build_highest_module(a, b))
    }

    pub fn lowest_module(&self, s: i64, t: i64) -> Result<Arc<ModuleRealization>> {
        self.lowest.get((s, t), || build_lowest_module(s, t))
    }

    pub fn tensor_space(&self, params: Params) -> Result<TensorSpace> {
        let low = self.lowest_module(params.s, params.t)?;
        let high = self.highest_module(params.a, params.b)?;
        Ok(TensorSpace::from_modules(params, low, high))
    }

    pub fn space(&self, params: Params) -> Result<Arc<Space>> {
        self.spaces.get(params, || {
            let ts = self.tensor_space(params)?;
            let (psi, note) = PsiOperator::load_or_build(&ts, self.cache_dir())?;
            if let Some(n) = note {
                self.notes.lock().unwrap().push(format!("{params}: {n}"));
            }
            let basis = canonical_basis(&ts, &psi)?;
            Ok(Space { ts, psi, basis })
        })
    }

    /// Messages about cache entries that were rebuilt or could not be written.
    pub fn notes(&self) -> Vec<String> {
        self.notes.lock().unwrap().clone()
    }

    pub fn cached_spaces(&self) -> usize {
        self.spaces.len()
    }
}
