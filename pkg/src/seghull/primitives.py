"""Bulk data-parallel primitives over segmented arrays.

Segments are contiguous runs of elements. They are described either by head
flags (1 at the first element of every segment) or by keys (the zero-based
segment index of every element). Both backends below implement the same
operations and must agree bit for bit; every tie resolves to the lowest
element index.

``SequentialBackend`` is the reference: one numpy pass per operation.
``MulticoreBackend`` splits the input into chunks, works on them in a thread
pool (numpy releases the GIL) and stitches the partial results together with
a short sequential carry step.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from .errors import EmptyInput

INDEX = np.int64


class SegmentMax(NamedTuple):
    """Result of :meth:`segmented_argmax`, one entry per segment."""

    keys: np.ndarray
    values: np.ndarray
    indices: np.ndarray

    def as_tuples(self):
        return [
            (int(k), float(v), int(i))
            for k, v, i in zip(self.keys, self.values, self.indices)
        ]


def _empty_segment_max(dtype=np.float64):
    return SegmentMax(
        np.empty(0, INDEX), np.empty(0, dtype), np.empty(0, INDEX)
    )


def _run_starts(keys):
    starts = np.flatnonzero(keys[1:] != keys[:-1]) + 1
    return np.concatenate(([0], starts)).astype(INDEX)


def _segmented_argmax(keys, values):
    n = len(keys)
    if n == 0:
        return _empty_segment_max(values.dtype)
    starts = _run_starts(keys)
    lengths = np.diff(np.append(starts, n))
    seg_max = np.maximum.reduceat(values, starts)
    hit = values == np.repeat(seg_max, lengths)
    arg = np.minimum.reduceat(np.where(hit, np.arange(n, dtype=INDEX), n), starts)
    # report the stored element so -0.0/+0.0 never depends on reduction order
    return SegmentMax(keys[starts].astype(INDEX), values[arg], arg)


def _argsort_xy(x, y, descending):
    kx, ky = (-x, -y) if descending else (x, y)
    order = np.argsort(kx)
    xs = kx[order]
    if np.any(xs[1:] == xs[:-1]):
        # tied x needs the y tie-break; the plain sort is much faster when
        # x alone decides
        order = np.lexsort((ky, kx))
    return order.astype(INDEX)


def _minmax_index(values):
    return int(np.argmin(values)), int(np.argmax(values))


class SequentialBackend:
    name = "seq"

    def inclusive_scan(self, values):
        values = np.asarray(values)
        return np.cumsum(values, dtype=INDEX)

    def keys_from_heads(self, heads):
        keys = self.inclusive_scan(heads)
        keys -= 1
        return keys

    def propagate_first_index(self, heads):
        heads = np.asarray(heads)
        marks = np.where(heads != 0, np.arange(len(heads), dtype=INDEX), 0)
        return np.maximum.accumulate(marks) if len(marks) else marks

    def segmented_argmax(self, keys, values):
        return _segmented_argmax(np.asarray(keys), np.asarray(values))

    def stable_partition_by_flag(self, columns, flags):
        flags = np.asarray(flags)
        keep = flags != 0
        order = np.concatenate((np.flatnonzero(keep), np.flatnonzero(~keep)))
        return [np.asarray(c)[order] for c in columns], int(keep.sum())

    def minmax_index(self, values):
        values = np.asarray(values)
        if len(values) == 0:
            raise EmptyInput("minmax_index of an empty array")
        return _minmax_index(values)

    def gather(self, values, indices):
        return np.asarray(values)[indices]

    def argsort_xy(self, x, y, descending=False):
        """Stable lexicographic (x, then y) sort order."""
        return _argsort_xy(np.asarray(x), np.asarray(y), descending)

    def close(self):
        pass


class MulticoreBackend:
    """Chunked, thread-parallel implementation of the primitive set.

    ``min_chunk`` bounds how small a chunk may get; inputs shorter than
    ``2 * min_chunk`` are processed as a single chunk.
    """

    name = "par"

    def __init__(self, workers=None, min_chunk=1 << 15):
        self.workers = workers or os.cpu_count() or 1
        self.min_chunk = max(1, int(min_chunk))
        self._pool = None

    @property
    def pool(self):
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.workers)
        return self._pool

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def _bounds(self, n):
        chunks = max(1, min(self.workers, n // self.min_chunk))
        return np.linspace(0, n, chunks + 1).astype(INDEX)

    def _map(self, fn, n):
        b = self._bounds(n)
        spans = list(zip(b[:-1].tolist(), b[1:].tolist()))
        if len(spans) == 1:
            return [fn(*spans[0])], spans
        return list(self.pool.map(lambda s: fn(*s), spans)), spans

    def inclusive_scan(self, values):
        values = np.asarray(values)
        n = len(values)
        out = np.empty(n, dtype=INDEX)
        if n == 0:
            return out

        def local(lo, hi):
            np.cumsum(values[lo:hi], dtype=INDEX, out=out[lo:hi])
            return out[hi - 1] if hi > lo else 0

        totals, spans = self._map(local, n)
        carries = np.concatenate(([0], np.cumsum(totals[:-1], dtype=INDEX)))

        def fix(i):
            lo, hi = spans[i]
            if carries[i]:
                out[lo:hi] += carries[i]

        if len(spans) > 1:
            list(self.pool.map(fix, range(1, len(spans))))
        return out

    def keys_from_heads(self, heads):
        keys = self.inclusive_scan(heads)
        keys -= 1
        return keys

    def propagate_first_index(self, heads):
        heads = np.asarray(heads)
        n = len(heads)
        out = np.empty(n, dtype=INDEX)
        if n == 0:
            return out

        def local(lo, hi):
            seg = out[lo:hi]
            np.multiply(heads[lo:hi] != 0, np.arange(lo, hi, dtype=INDEX), out=seg)
            np.maximum.accumulate(seg, out=seg)
            return seg[-1] if hi > lo else 0

        lasts, spans = self._map(local, n)
        carry = 0
        carries = []
        for last in lasts:
            carries.append(carry)
            carry = max(carry, int(last))

        def fix(i):
            lo, hi = spans[i]
            np.maximum(out[lo:hi], carries[i], out=out[lo:hi])

        if len(spans) > 1:
            list(self.pool.map(fix, range(1, len(spans))))
        return out

    def segmented_argmax(self, keys, values):
        keys = np.asarray(keys)
        values = np.asarray(values)
        n = len(keys)
        if n == 0:
            return _empty_segment_max(values.dtype)
        parts, spans = self._map(
            lambda lo, hi: _segmented_argmax(keys[lo:hi], values[lo:hi]), n
        )
        if len(parts) == 1:
            return parts[0]
        # a key straddling a chunk boundary appears twice; one more small
        # reduction over the chunk winners resolves it
        pk = np.concatenate([p.keys for p in parts])
        pi = np.concatenate([p.indices + lo for p, (lo, _) in zip(parts, spans)])
        merged = _segmented_argmax(pk, values[pi])
        idx = pi[merged.indices]
        return SegmentMax(merged.keys, values[idx], idx)

    def stable_partition_by_flag(self, columns, flags):
        flags = np.asarray(flags)
        columns = [np.asarray(c) for c in columns]
        n = len(flags)
        outs = [np.empty_like(c) for c in columns]
        counts, spans = self._map(
            lambda lo, hi: int(np.count_nonzero(flags[lo:hi])), n
        )
        kept = sum(counts)
        one_off = np.concatenate(([0], np.cumsum(counts)))
        zero_off = kept + np.concatenate(
            ([0], np.cumsum([hi - lo - c for (lo, hi), c in zip(spans, counts)]))
        )

        def scatter(i):
            lo, hi = spans[i]
            keep = flags[lo:hi] != 0
            a, b = one_off[i], zero_off[i]
            for src, dst in zip(columns, outs):
                chunk = src[lo:hi]
                ones = chunk[keep]
                zeros = chunk[~keep]
                dst[a:a + len(ones)] = ones
                dst[b:b + len(zeros)] = zeros

        if len(spans) == 1:
            scatter(0)
        else:
            list(self.pool.map(scatter, range(len(spans))))
        return outs, kept

    def minmax_index(self, values):
        values = np.asarray(values)
        n = len(values)
        if n == 0:
            raise EmptyInput("minmax_index of an empty array")
        parts, spans = self._map(lambda lo, hi: _minmax_index(values[lo:hi]), n)
        lo_i = [spans[k][0] + p[0] for k, p in enumerate(parts)]
        hi_i = [spans[k][0] + p[1] for k, p in enumerate(parts)]
        # strict comparisons keep the earliest chunk on ties
        best_min, best_max = lo_i[0], hi_i[0]
        for i in lo_i[1:]:
            if values[i] < values[best_min]:
                best_min = i
        for i in hi_i[1:]:
            if values[i] > values[best_max]:
                best_max = i
        return best_min, best_max

    def gather(self, values, indices):
        values = np.asarray(values)
        indices = np.asarray(indices)
        n = len(indices)
        out = np.empty(n, dtype=values.dtype)

        def local(lo, hi):
            np.take(values, indices[lo:hi], out=out[lo:hi])

        self._map(local, n)
        return out

    def argsort_xy(self, x, y, descending=False):
        # numpy's stable sort is already the fastest option here; a chunked
        # merge sort in Python threads would not beat it
        return _argsort_xy(np.asarray(x), np.asarray(y), descending)


BACKENDS = {"seq": SequentialBackend, "par": MulticoreBackend}
_ALIASES = {"sequential": "seq", "multicore": "par"}


def get_backend(backend=None):
    """Resolve a backend name ("seq"/"sequential", "par"/"multicore") or
    instance. ``None`` gives the sequential reference."""
    if backend is None:
        return SequentialBackend()
    if isinstance(backend, str):
        name = _ALIASES.get(backend, backend)
        try:
            return BACKENDS[name]()
        except KeyError:
            raise ValueError(f"unknown backend {backend!r}") from None
    return backend


_default = SequentialBackend()


def inclusive_scan(values):
    return _default.inclusive_scan(values)


def keys_from_heads(heads):
    return _default.keys_from_heads(heads)


def propagate_first_index(heads):
    return _default.propagate_first_index(heads)


def segmented_argmax(keys, values):
    return _default.segmented_argmax(keys, values)


def stable_partition_by_flag(columns, flags):
    return _default.stable_partition_by_flag(columns, flags)


def minmax_index(values):
    return _default.minmax_index(values)


def gather(values, indices):
    return _default.gather(values, indices)


def heads_from_keys(keys):
    keys = np.asarray(keys)
    heads = np.zeros(len(keys), dtype=np.int8)
    if len(keys):
        heads[0] = 1
        heads[1:] = keys[1:] != keys[:-1]
    return heads
