"""Linear algebra over the prime field F_p.

Every kernel exists twice: a loop-based version compiled with numba and a
vectorised numpy version.  The numba path is used unless the environment
variable ``RINGELHALL_NO_NUMBA`` is set to a non-empty value other than "0".
Both paths expect int64 arrays with entries already reduced into ``[0, p)``
and return reduced arrays.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("RINGELHALL_NO_NUMBA", "0") in ("", "0")


def _inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------


def rref_np(a, p):
    """Reduced row echelon form of ``a`` mod ``p``; returns ``(R, pivots)``."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    inv = _inverse_table(p)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        a[row] = (a[row] * inv[a[row, col]]) % p
        factors = a[:, col].copy()
        factors[row] = 0
        a = (a - np.outer(factors, a[row])) % p
        pivots.append(col)
        row += 1
    return a, np.array(pivots, dtype=np.int64)


def rank_np(a, p):
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return len(rref_np(a, p)[1])


def rank_batch_np(a, p):
    """Ranks of a stack ``a`` of shape ``(B, m, n)``, eliminating all matrices at once."""
    a = np.array(a, dtype=np.int64) % p
    B, m, n = a.shape
    row = np.zeros(B, dtype=np.int64)
    if m == 0 or n == 0:
        return row
    inv = _inverse_table(p)
    ridx = np.arange(m)
    for col in range(n):
        mask = (a[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        bs = np.nonzero(mask.any(axis=1))[0]
        if bs.size == 0:
            continue
        r0 = row[bs]
        pv = np.argmax(mask[bs], axis=1)
        top = a[bs, r0].copy()
        a[bs, r0] = a[bs, pv]
        a[bs, pv] = top
        prow = (a[bs, r0] * inv[a[bs, r0, col]][:, None]) % p
        a[bs, r0] = prow
        f = a[bs, :, col].copy()
        f[np.arange(bs.size), r0] = 0
        a[bs] = (a[bs] - f[:, :, None] * prow[:, None, :]) % p
        row[bs] += 1
    return row


def nullspace_np(a, p):
    """Basis of ``{x : a x = 0}`` as the columns of an ``n x d`` array."""
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref_np(a, p)
    free = [c for c in range(n) if c not in set(pivots.tolist())]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, c in enumerate(free):
        basis[c, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, c]) % p
    return basis


def inverse_np(a, p):
    n = a.shape[0]
    r, pivots = rref_np(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:].copy()


def count_units_np(basis, sizes, p):
    """Count invertible and nilpotent members of a span of block matrices.

    ``basis`` has shape ``(D, B, s, s)``: ``D`` spanning elements, each a
    tuple of ``B`` square blocks (zero-padded to size ``s``); block ``b``
    is really ``sizes[b] x sizes[b]``.  All ``p**D`` combinations are
    enumerated.  Returns ``(n_invertible, n_nilpotent)``.
    """
    D = basis.shape[0]
    n_inv = 0
    n_nil = 0
    for idx in range(p**D):
        coeffs = np.array([(idx // p**d) % p for d in range(D)], dtype=np.int64)
        mats = np.tensordot(coeffs, basis, axes=(0, 0)) % p
        inv_ok = True
        nil_ok = True
        for b, s in enumerate(sizes):
            if s == 0:
                continue
            blk = mats[b, :s, :s]
            if rank_np(blk, p) < s:
                inv_ok = False
            if np.any(_matpow_np(blk, s, p)):
                nil_ok = False
        n_inv += inv_ok
        n_nil += nil_ok
    return n_inv, n_nil


def _matpow_np(a, e, p):
    out = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(e):
        out = (out @ a) % p
    return out


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------


def _rref_loop(a, p):
    a = a.copy()
    m, n = a.shape
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        r = 1
        for _ in range(p - 2):
            r = (r * x) % p
        inv[x] = r
    pivots = np.empty(min(m, n), dtype=np.int64)
    row = 0
    for col in range(n):
        if row == m:
            break
        piv = -1
        for r in range(row, m):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for c in range(n):
                tmp = a[row, c]
                a[row, c] = a[piv, c]
                a[piv, c] = tmp
        s = inv[a[row, col]]
        for c in range(n):
            a[row, c] = (a[row, c] * s) % p
        for r in range(m):
            if r != row and a[r, col] != 0:
                f = a[r, col]
                for c in range(n):
                    a[r, c] = (a[r, c] - f * a[row, c]) % p
        pivots[row] = col
        row += 1
    return a, pivots[:row]


def _rank_loop(a, p):
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    return _rref_loop(a, p)[1].shape[0]


def _rank_batch_loop(a, p):
    out = np.empty(a.shape[0], dtype=np.int64)
    for b in range(a.shape[0]):
        out[b] = _rank_loop(a[b], p)
    return out


def _nullspace_loop(a, p):
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = _rref_loop(a, p)
    is_piv = np.zeros(n, dtype=np.bool_)
    for c in pivots:
        is_piv[c] = True
    nfree = n - pivots.shape[0]
    basis = np.zeros((n, nfree), dtype=np.int64)
    j = 0
    for c in range(n):
        if is_piv[c]:
            continue
        basis[c, j] = 1
        for i in range(pivots.shape[0]):
            basis[pivots[i], j] = (p - r[i, c]) % p
        j += 1
    return basis


def _inverse_loop(a, p):
    n = a.shape[0]
    aug = np.zeros((n, 2 * n), dtype=np.int64)
    aug[:, :n] = a
    for i in range(n):
        aug[i, n + i] = 1
    r, pivots = _rref_loop(aug, p)
    if pivots.shape[0] < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:].copy()


def _count_units_loop(basis, sizes, p):
    D = basis.shape[0]
    B = basis.shape[1]
    total = 1
    for _ in range(D):
        total *= p
    coeffs = np.zeros(D, dtype=np.int64)
    n_inv = 0
    n_nil = 0
    for idx in range(total):
        rem = idx
        for d in range(D):
            coeffs[d] = rem % p
            rem //= p
        inv_ok = True
        nil_ok = True
        for b in range(B):
            s = sizes[b]
            if s == 0:
                continue
            blk = np.zeros((s, s), dtype=np.int64)
            for d in range(D):
                c = coeffs[d]
                if c == 0:
                    continue
                for i in range(s):
                    for j in range(s):
                        blk[i, j] = (blk[i, j] + c * basis[d, b, i, j]) % p
            if _rank_loop(blk, p) < s:
                inv_ok = False
            pw = blk.copy()
            for _ in range(s - 1):
                nxt = np.zeros((s, s), dtype=np.int64)
                for i in range(s):
                    for t in range(s):
                        if pw[i, t] != 0:
                            for j in range(s):
                                nxt[i, j] = (nxt[i, j] + pw[i, t] * blk[t, j]) % p
                pw = nxt
            for i in range(s):
                for j in range(s):
                    if pw[i, j] != 0:
                        nil_ok = False
        if inv_ok:
            n_inv += 1
        if nil_ok:
            n_nil += 1
    return n_inv, n_nil


if numba is not None:
    _rref_loop = numba.njit(cache=True)(_rref_loop)
    _rank_loop = numba.njit(cache=True)(_rank_loop)
    _rank_batch_loop = numba.njit(cache=True)(_rank_batch_loop)
    _nullspace_loop = numba.njit(cache=True)(_nullspace_loop)
    _inverse_loop = numba.njit(cache=True)(_inverse_loop)
    _count_units_loop = numba.njit(cache=True)(_count_units_loop)


def rref_nb(a, p):
    return _rref_loop(np.ascontiguousarray(a, dtype=np.int64) % p, p)


def rank_nb(a, p):
    return int(_rank_loop(np.ascontiguousarray(a, dtype=np.int64) % p, p))


def rank_batch_nb(a, p):
    return _rank_batch_loop(np.ascontiguousarray(a, dtype=np.int64) % p, p)


def nullspace_nb(a, p):
    return _nullspace_loop(np.ascontiguousarray(a, dtype=np.int64) % p, p)


def inverse_nb(a, p):
    return _inverse_loop(np.ascontiguousarray(a, dtype=np.int64) % p, p)


def count_units_nb(basis, sizes, p):
    n_inv, n_nil = _count_units_loop(
        np.ascontiguousarray(basis, dtype=np.int64) % p,
        np.asarray(sizes, dtype=np.int64),
        p,
    )
    return int(n_inv), int(n_nil)


if USE_NUMBA:
    rref, rank, rank_batch, nullspace, inverse, count_units = (
        rref_nb,
        rank_nb,
        rank_batch_nb,
        nullspace_nb,
        inverse_nb,
        count_units_nb,
    )
else:
    rref, rank, rank_batch, nullspace, inverse, count_units = (
        rref_np,
        rank_np,
        rank_batch_np,
        nullspace_np,
        inverse_np,
        count_units_np,
    )
