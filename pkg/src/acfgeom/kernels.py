"""Hot loops over finite-field tables.

Field elements are integer codes ``sum c_i p^i`` of their coordinates in the
power basis.  Multiplication and addition go through three tables built once
per field: ``exp[i] = g^i``, ``log[x]`` (``-1`` at zero) and the Zech table
``zech[n] = log(1 + g^n)`` (``-1`` where ``1 + g^n = 0``).

Every kernel exists twice: a numba ``@njit`` loop and a numpy version.  The
module-level names dispatch on :data:`acfgeom._accel.USE_NUMBA`; both sets
stay reachable through :data:`NUMBA` and :data:`NUMPY` for testing and
benchmarking.
"""
from types import SimpleNamespace

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit


# ---------------------------------------------------------------- numpy path

def _np_exp_table(p, k, modulus, gen):
    q = p ** k
    if q == 2:
        return np.ones(1, dtype=np.int64)
    # multiplication by a fixed element is F_p-linear: build its k x k matrix
    mat = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        basis = np.zeros(k, dtype=np.int64)
        basis[i] = 1
        mat[i] = _np_polymulmod(basis, gen, modulus, p)
    weights = p ** np.arange(k, dtype=np.int64)
    block = np.zeros((1, k), dtype=np.int64)
    block[0, 0] = 1
    step = mat
    n = q - 1
    while block.shape[0] < n:
        block = np.vstack([block, block @ step % p])
        step = step @ step % p
    return (block[:n] @ weights).astype(np.int64)


def _np_polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = np.convolve(a, b) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            prod[i - k:i + 1] = (prod[i - k:i + 1] - c * modulus) % p
    return prod[:k]


def _np_zech(exp, p):
    d0 = exp % p
    plus_one = exp - d0 + (d0 + 1) % p
    log = np.full(len(exp) + 1, -1, dtype=np.int64)
    log[exp] = np.arange(len(exp), dtype=np.int64)
    return log, log[plus_one]


def _np_mul(a, b, log, exp):
    n = exp.shape[0]
    out = exp[(log[a] + log[b]) % n]
    return np.where((a == 0) | (b == 0), 0, out)


def _np_add(a, b, log, exp, zech):
    n = exp.shape[0]
    la = log[a]
    lb = log[b]
    z = zech[(lb - la) % n]
    out = np.where(z < 0, 0, exp[(la + np.maximum(z, 0)) % n])
    out = np.where(a == 0, b, out)
    return np.where(b == 0, a, out)


def _np_pow(a, e, log, exp):
    n = exp.shape[0]
    if e == 0:
        return np.ones_like(a)
    out = exp[(log[a] * e) % n]
    return np.where(a == 0, 0, out)


def _np_slope_set(members, log, exp, zech, neg):
    """Boolean mask of ``{(y - y') / (x' - x) : x != x'}`` for the member codes."""
    q = log.shape[0]
    found = np.zeros(q, dtype=np.bool_)
    if len(members) < 2:
        return found
    m = np.asarray(members, dtype=np.int64)
    diffs = np.unique(_np_add(m[:, None], neg[m][None, :], log, exp, zech))
    nz = diffs[diffs != 0]
    slopes = _np_mul(diffs[:, None], _np_inv(nz, log, exp)[None, :], log, exp)
    found[slopes.ravel()] = True
    return found


def _np_inv(a, log, exp):
    n = exp.shape[0]
    return exp[(-log[a]) % n]


def _np_injective(members, a, log, exp, zech):
    m = np.asarray(members, dtype=np.int64)
    if len(m) == 0:
        return True
    ax = _np_mul(np.full(len(m), a, dtype=np.int64), m, log, exp)
    vals = _np_add(ax[:, None], m[None, :], log, exp, zech).ravel()
    return len(np.unique(vals)) == len(vals)


def _np_sweep(q, log, exp, zech, neg):
    cover = inj = bad = 0
    elems = np.arange(q, dtype=np.int64)
    for mask in range(1 << q):
        members = elems[(mask >> elems) & 1 == 1]
        s = _np_slope_set(members, log, exp, zech, neg)
        if s.all():
            cover += 1
            continue
        a = int(np.argmin(s))
        if _np_injective(members, a, log, exp, zech):
            inj += 1
        else:
            bad += 1
    return cover, inj, bad


# ---------------------------------------------------------------- numba path

@njit(cache=True)
def _nb_exp_table(p, k, modulus, gen):
    q = p ** k
    n = q - 1
    out = np.empty(n, dtype=np.int64)
    cur = np.zeros(k, dtype=np.int64)
    cur[0] = 1
    tmp = np.zeros(2 * k, dtype=np.int64)
    for i in range(n):
        code = 0
        w = 1
        for j in range(k):
            code += cur[j] * w
            w *= p
        out[i] = code
        tmp[:] = 0
        for a in range(k):
            if cur[a] != 0:
                for b in range(k):
                    tmp[a + b] += cur[a] * gen[b]
        for t in range(2 * k - 1, k - 1, -1):
            c = tmp[t] % p
            if c != 0:
                for s in range(k + 1):
                    tmp[t - k + s] -= c * modulus[s]
        for j in range(k):
            cur[j] = tmp[j] % p
    return out


@njit(cache=True)
def _nb_zech(exp, p):
    n = exp.shape[0]
    log = np.full(n + 1, -1, dtype=np.int64)
    for i in range(n):
        log[exp[i]] = i
    zech = np.empty(n, dtype=np.int64)
    for i in range(n):
        x = exp[i]
        d0 = x % p
        zech[i] = log[x - d0 + (d0 + 1) % p]
    return log, zech


@njit(cache=True)
def _nb_mul_flat(a, b, log, exp):
    n = exp.shape[0]
    out = np.empty(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        x = a[i]
        y = b[i]
        if x == 0 or y == 0:
            out[i] = 0
        else:
            out[i] = exp[(log[x] + log[y]) % n]
    return out


@njit(cache=True)
def _nb_add_flat(a, b, log, exp, zech):
    n = exp.shape[0]
    out = np.empty(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        x = a[i]
        y = b[i]
        if x == 0:
            out[i] = y
        elif y == 0:
            out[i] = x
        else:
            lx = log[x]
            z = zech[(log[y] - lx) % n]
            out[i] = 0 if z < 0 else exp[(lx + z) % n]
    return out


@njit(cache=True)
def _nb_pow_flat(a, e, log, exp):
    n = exp.shape[0]
    out = np.empty(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        x = a[i]
        if e == 0:
            out[i] = 1
        elif x == 0:
            out[i] = 0
        else:
            out[i] = exp[(log[x] * e) % n]
    return out


@njit(cache=True)
def _nb_add1(x, y, log, exp, zech):
    if x == 0:
        return y
    if y == 0:
        return x
    n = exp.shape[0]
    z = zech[(log[y] - log[x]) % n]
    return 0 if z < 0 else exp[(log[x] + z) % n]


@njit(cache=True)
def _nb_slope_set(members, log, exp, zech, neg):
    q = log.shape[0]
    n = exp.shape[0]
    found = np.zeros(q, dtype=np.bool_)
    m = members.shape[0]
    if m < 2:
        return found
    isdiff = np.zeros(q, dtype=np.bool_)
    for i in range(m):
        for j in range(m):
            isdiff[_nb_add1(members[i], neg[members[j]], log, exp, zech)] = True
    found[0] = True
    for d1 in range(1, q):
        if isdiff[d1]:
            for d2 in range(1, q):
                if isdiff[d2]:
                    found[exp[(log[d1] - log[d2]) % n]] = True
    return found


@njit(cache=True)
def _nb_injective(members, a, log, exp, zech):
    q = log.shape[0]
    n = exp.shape[0]
    seen = np.zeros(q, dtype=np.bool_)
    for i in range(members.shape[0]):
        x = members[i]
        ax = 0 if (a == 0 or x == 0) else exp[(log[a] + log[x]) % n]
        for j in range(members.shape[0]):
            v = _nb_add1(ax, members[j], log, exp, zech)
            if seen[v]:
                return False
            seen[v] = True
    return True


@njit(cache=True)
def _nb_sweep(q, log, exp, zech, neg):
    cover = 0
    inj = 0
    bad = 0
    buf = np.empty(q, dtype=np.int64)
    for mask in range(1 << q):
        cnt = 0
        for e in range(q):
            if (mask >> e) & 1:
                buf[cnt] = e
                cnt += 1
        members = buf[:cnt].copy()
        s = _nb_slope_set(members, log, exp, zech, neg)
        a = -1
        for e in range(q):
            if not s[e]:
                a = e
                break
        if a < 0:
            cover += 1
        elif _nb_injective(members, a, log, exp, zech):
            inj += 1
        else:
            bad += 1
    return cover, inj, bad


def _flat(fn):
    def wrapped(a, b, *tables):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        shape = a.shape
        return fn(np.ascontiguousarray(a).ravel(), np.ascontiguousarray(b).ravel(), *tables).reshape(shape)
    return wrapped


def _nb_pow(a, e, log, exp):
    a = np.asarray(a, dtype=np.int64)
    return _nb_pow_flat(np.ascontiguousarray(a).ravel(), e, log, exp).reshape(a.shape)


def _nb_slope_set_py(members, log, exp, zech, neg):
    return _nb_slope_set(np.asarray(members, dtype=np.int64), log, exp, zech, neg)


def _nb_injective_py(members, a, log, exp, zech):
    return bool(_nb_injective(np.asarray(members, dtype=np.int64), a, log, exp, zech))


def _nb_exp_table_py(p, k, modulus, gen):
    return _nb_exp_table(p, k, np.asarray(modulus, dtype=np.int64), np.asarray(gen, dtype=np.int64))


def _np_exp_table_py(p, k, modulus, gen):
    return _np_exp_table(p, k, np.asarray(modulus, dtype=np.int64), np.asarray(gen, dtype=np.int64))


NUMPY = SimpleNamespace(
    name="numpy",
    exp_table=_np_exp_table_py,
    zech=_np_zech,
    mul=_np_mul,
    add=_np_add,
    pow=_np_pow,
    slope_set=_np_slope_set,
    injective=_np_injective,
    sweep=_np_sweep,
)

NUMBA = SimpleNamespace(
    name="numba",
    exp_table=_nb_exp_table_py,
    zech=_nb_zech,
    mul=_flat(_nb_mul_flat),
    add=_flat(_nb_add_flat),
    pow=_nb_pow,
    slope_set=_nb_slope_set_py,
    injective=_nb_injective_py,
    sweep=_nb_sweep,
) if HAVE_NUMBA else NUMPY

ACTIVE = NUMBA if USE_NUMBA else NUMPY

exp_table = ACTIVE.exp_table
zech_table = ACTIVE.zech
gf_mul = ACTIVE.mul
gf_add = ACTIVE.add
gf_pow = ACTIVE.pow
slope_set = ACTIVE.slope_set
injective = ACTIVE.injective
sweep_subsets = ACTIVE.sweep
