"""Linear algebra over F_p on int64 numpy arrays.

Everything degreewise in the package ends up here: row reduction, ranks,
null spaces and span bookkeeping. Matrices are small enough that dense
elimination is the default; past DENSE_LIMIT a dict-of-rows elimination is
used for ranks, which keeps fill-in proportional to the actual nonzeros.
"""

import numpy as np

DENSE_LIMIT = 512


def as_mat(a, p, ncols=None):
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, ncols or 0), dtype=np.int64)
    return a % p


def inv(a, p):
    return pow(int(a), p - 2, p)


def rref(a, p):
    """Reduced row echelon form. Returns (rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2d array")
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        if a[r, c] != 1:
            a[r, c:] = (a[r, c:] * inv(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(col[rows], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _sparse_rank(a, p):
    rows = []
    for row in a:
        nz = np.flatnonzero(row)
        if nz.size:
            rows.append({int(j): int(row[j]) for j in nz})
    pivot_rows = {}
    rank = 0
    for row in rows:
        while row:
            c = min(row)
            if c not in pivot_rows:
                f = inv(row[c], p)
                pivot_rows[c] = {j: v * f % p for j, v in row.items()}
                rank += 1
                break
            prow = pivot_rows[c]
            f = row[c]
            for j, v in prow.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return rank


def rank(a, p):
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if max(a.shape) > DENSE_LIMIT:
        # eliminate along the short side
        return _sparse_rank(a % p if a.shape[0] <= a.shape[1] else (a % p).T, p)
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Basis of {v : a v = 0}, one vector per row."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(a, p)
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-r[i, j]) % p
    return basis


def row_space(a, p):
    return rref(a, p)[0]


class Span:
    """Incrementally built subspace of F_p^n kept in reduced echelon form."""

    def __init__(self, n, p, rows=None):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots = []
        if rows is not None and len(rows):
            self.extend(rows)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v):
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.pivots:
            coef = v[self.pivots]
            if coef.any():
                v = (v - coef @ self.rows) % self.p
        return v

    def reduce_many(self, vs):
        vs = np.asarray(vs, dtype=np.int64) % self.p
        if self.pivots and vs.size:
            coef = vs[:, self.pivots]
            vs = (vs - (coef @ self.rows) % self.p) % self.p
        return vs

    def contains(self, v):
        return not self.reduce(v).any()

    def add(self, v):
        """Add v; returns True when it enlarged the span."""
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * inv(v[c], self.p)) % self.p
        if self.pivots:
            col = self.rows[:, c]
            if col.any():
                self.rows = (self.rows - np.outer(col, v)) % self.p
        self.rows = np.vstack([self.rows, v])
        self.pivots.append(c)
        return True

    def extend(self, vs):
        """Add many vectors; returns indices of those that enlarged the span."""
        taken = []
        vs = np.asarray(vs, dtype=np.int64)
        if vs.ndim == 1:
            vs = vs.reshape(1, -1)
        for k, v in enumerate(vs):
            if self.add(v):
                taken.append(k)
        return taken

    def basis(self):
        return self.rows.copy()


def independent_rows(vs, p, start=None):
    """Indices of rows of vs that are independent modulo the span start."""
    vs = np.asarray(vs, dtype=np.int64)
    n = vs.shape[1] if vs.ndim == 2 else 0
    s = start if start is not None else Span(n, p)
    return s.extend(vs) if len(vs) else []


def solve_left(basis, v, p):
    """Coefficients c with c @ basis = v, or None if v is not in the row span."""
    basis = np.asarray(basis, dtype=np.int64)
    k = basis.shape[0]
    aug = np.hstack([basis % p, np.eye(k, dtype=np.int64)])
    r, piv = rref(aug, p)
    n = basis.shape[1]
    v = np.asarray(v, dtype=np.int64) % p
    coef = np.zeros(k, dtype=np.int64)
    w = v.copy()
    for i, c in enumerate(piv):
        if c >= n:
            break
        if w[c]:
            f = w[c]
            w = (w - f * r[i, :n]) % p
            coef = (coef + f * r[i, n:]) % p
    if w.any():
        return None
    return coef
