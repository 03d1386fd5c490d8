//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on rayon's pool unless
//! [`set_parallel`] switched them off at runtime. Without the feature they are
//! plain iterator loops. Every helper returns the same value in both modes:
//! searches return the first hit in index order and reductions use a total
//! order, so results never depend on scheduling.

use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enables or disables parallel execution (no effect without the feature).
pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

/// First `Some` in index order.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        return items.par_iter().find_map_first(f);
    }
    items.iter().find_map(f)
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Flattened map, preserving index order.
pub fn flat_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && items.len() > 1 {
        return items.par_iter().flat_map_iter(f).collect();
    }
    items.iter().flat_map(f).collect()
}

/// `map` over `0..len`.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && len > 1 {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// `flat_map` over `0..len`, preserving index order.
pub fn flat_map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && len > 1 {
        return (0..len).into_par_iter().flat_map_iter(f).collect();
    }
    (0..len).flat_map(f).collect()
}

/// `find_map_first` over `0..len`.
pub fn find_map_first_range<R, F>(len: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && len > 1 {
        return (0..len).into_par_iter().find_map_first(f);
    }
    (0..len).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_in_index_order() {
        let items: Vec<u32> = (0..1000).collect();
        let hit = find_map_first(&items, |&x| (x % 97 == 13 && x > 100).then_some(x));
        assert_eq!(hit, Some(110));
        let hit = find_map_first_range(1000, |i| (i >= 500).then_some(i));
        assert_eq!(hit, Some(500));
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..100).collect();
        assert_eq!(map(&items, |x| x * 2), (0..100).map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(flat_map(&items[..3], |&x| vec![x; x as usize]), vec![1, 2, 2]);
        assert_eq!(map_range(4, |i| i + 1), vec![1, 2, 3, 4]);
    }
}
