//! Optional worker pool. Without the `parallel` feature, or with one thread,
//! everything runs on the calling thread.

use crate::error::Result;

pub(crate) struct Pool {
    #[cfg(feature = "parallel")]
    inner: Option<rayon::ThreadPool>,
}

impl Pool {
    pub(crate) fn new(threads: usize) -> Result<Self> {
        #[cfg(feature = "parallel")]
        {
            let inner = if threads > 1 {
                let p = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| crate::Error::Internal(alloc::format!("thread pool: {e}")))?;
                Some(p)
            } else {
                None
            };
            Ok(Pool { inner })
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = threads;
            Ok(Pool {})
        }
    }

    /// Sets `out[i] = f(i)` for every index. Each slot is written by exactly
    /// one call, so the result does not depend on the number of threads.
    pub(crate) fn fill<T, F>(&self, out: &mut [T], f: F) -> Result<()>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync,
    {
        self.fill_chunked(out, 64, f)
    }

    fn fill_chunked<T, F>(&self, out: &mut [T], min_len: usize, f: F) -> Result<()>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync,
    {
        #[cfg(feature = "parallel")]
        if let Some(p) = &self.inner {
            use rayon::prelude::*;
            return p.install(|| {
                out.par_iter_mut().enumerate().with_min_len(min_len).try_for_each(|(i, o)| {
                    *o = f(i)?;
                    Ok(())
                })
            });
        }
        let _ = min_len;
        for (i, o) in out.iter_mut().enumerate() {
            *o = f(i)?;
        }
        Ok(())
    }

    /// Runs the coarse tasks `f(0..count)`, one per worker when possible, and
    /// returns their results in index order.
    pub(crate) fn tasks<T, F>(&self, count: usize, f: F) -> Result<alloc::vec::Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync,
    {
        let mut out: alloc::vec::Vec<Option<T>> = (0..count).map(|_| None).collect();
        self.fill_chunked(&mut out, 1, |i| f(i).map(Some))?;
        Ok(out.into_iter().flatten().collect())
    }
}
