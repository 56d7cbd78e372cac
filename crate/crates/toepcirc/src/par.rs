//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the helpers distribute work over rayon;
//! without it they run plain loops. Parallelism is only ever applied across
//! independent elements or rows — never inside a floating-point reduction —
//! so results are bit-identical regardless of feature setting or thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Work below this many scalar operations is not worth scheduling.
#[cfg(feature = "parallel")]
const MIN_PAR_WORK: usize = 1 << 14;

/// Maps `0..len` through `f`, preserving order.
pub(crate) fn map_indexed<T, F>(len: usize, cost_per_item: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if len.saturating_mul(cost_per_item) >= MIN_PAR_WORK {
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    let _ = cost_per_item;
    (0..len).map(f).collect()
}

/// Applies `f` to each `width`-sized row of `data` with its row index.
/// `data.len()` must be a multiple of `width`.
pub(crate) fn for_each_row<T, F>(data: &mut [T], width: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    debug_assert_eq!(data.len() % width.max(1), 0);
    #[cfg(feature = "parallel")]
    {
        if data.len() >= MIN_PAR_WORK {
            data.par_chunks_mut(width)
                .enumerate()
                .for_each(|(i, row)| f(i, row));
            return;
        }
    }
    for (i, row) in data.chunks_mut(width).enumerate() {
        f(i, row);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(1000, 1, |i| i * i);
        assert_eq!(v[17], 289);
        assert_eq!(v.len(), 1000);
    }

    #[test]
    fn for_each_row_sees_every_row_once() {
        let mut data = vec![0u64; 64 * 32];
        for_each_row(&mut data, 32, |i, row| {
            for x in row.iter_mut() {
                *x = i as u64;
            }
        });
        assert!(data[..32].iter().all(|&x| x == 0));
        assert!(data[32 * 32..33 * 32].iter().all(|&x| x == 32));
    }
}
