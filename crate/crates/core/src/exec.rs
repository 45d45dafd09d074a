//! Execution mode for batch work: data-parallel over rayon when the
//! `parallel` feature is enabled, sequential otherwise.

/// How independent work items are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// Whether this build can honour [`ExecMode::Parallel`].
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Map `f` over `items`, preserving order. Falls back to sequential
    /// evaluation when the crate is built without the `parallel` feature.
    pub fn map<T, R, Fn_>(self, items: &[T], f: Fn_) -> Vec<R>
    where
        T: Sync,
        R: Send,
        Fn_: Fn(&T) -> R + Sync + Send,
    {
        match self {
            ExecMode::Sequential => items.iter().map(f).collect(),
            ExecMode::Parallel => par_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, Fn_>(items: &[T], f: Fn_) -> Vec<R>
where
    T: Sync,
    R: Send,
    Fn_: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, Fn_>(items: &[T], f: Fn_) -> Vec<R>
where
    T: Sync,
    R: Send,
    Fn_: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let a = ExecMode::Sequential.map(&xs, |x| x * x);
        let b = ExecMode::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
    }
}
