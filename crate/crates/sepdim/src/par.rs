//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper preserves input order in its result, so output does not
//! depend on the schedule. Without the `parallel` feature both variants of
//! [`Exec`] run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the data-parallel hot paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// First `Some` in input order.
pub fn find_map_first<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Any `Some`; the winner may depend on the schedule.
pub fn find_map_any<T, R, F>(exec: Exec, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_any(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<R, F>(exec: Exec, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// First index in `0..len` (in order) for which `f` returns `Some`.
pub fn find_map_first_range<R, F>(exec: Exec, len: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..len).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_match_is_schedule_independent() {
        let items: Vec<usize> = (0..10_000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = find_map_first(exec, &items, |&x| (x % 997 == 996).then_some(x));
            assert_eq!(hit, Some(996));
        }
    }

    #[test]
    fn map_preserves_order() {
        let a = map_range(Exec::Parallel, 1000, |i| i * i);
        let b = map_range(Exec::Sequential, 1000, |i| i * i);
        assert_eq!(a, b);
    }
}
