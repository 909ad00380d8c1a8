"""Recover the eventual polynomial of an integer sequence by finite differences."""

from fractions import Fraction

from .homology import Inconclusive


class FittedPolynomial:
    def __init__(self, coeffs, n0, window, n_max):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c
        self.n0 = n0
        self.window = window
        self.n_max = n_max

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, n):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * n + c
        return out

    def __add__(self, other):
        L = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [Fraction(0)] * (L - len(self.coeffs))
        b = other.coeffs + [Fraction(0)] * (L - len(other.coeffs))
        return FittedPolynomial([x + y for x, y in zip(a, b)], max(self.n0, other.n0),
                                min(self.window, other.window), min(self.n_max, other.n_max))

    def same_polynomial(self, other):
        return self.coeffs == other.coeffs

    def to_json(self):
        return {"coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
                "degree": self.degree, "n0": self.n0, "window": self.window}

    def __repr__(self):
        terms = [f"{c}*n^{k}" for k, c in enumerate(self.coeffs) if c]
        return "FittedPolynomial(" + (" + ".join(terms) or "0") + f", n0={self.n0})"


def _differences(v):
    return [b - a for a, b in zip(v, v[1:])]


def _trailing_constant(v):
    """Length of the longest constant suffix of v."""
    if not v:
        return 0
    k = 1
    while k < len(v) and v[-k - 1] == v[-1]:
        k += 1
    return k


def fit_values(values, n_start=0):
    """Fit the stable tail of values[j] = f(n_start + j)."""
    vals = [int(v) for v in values]
    L = len(vals)
    n_max = n_start + L - 1
    a = None
    d = vals
    for k in range(L):
        # a constant run of k-th differences of length run covers run + k points
        run = _trailing_constant(d)
        if run >= 3:
            a = L - (run + k)
            break
        d = _differences(d)
    if a is None:
        raise Inconclusive("no stable window; increase n_max")
    # Newton form at n_start + a
    base = n_start + a
    diffs = []
    cur = vals[a:]
    for j in range(k + 1):
        diffs.append(cur[0])
        cur = _differences(cur)
    coeffs = [Fraction(0)] * (k + 1)
    for j, dj in enumerate(diffs):
        # dj * C(n - base, j) expanded in powers of n
        poly = [Fraction(1)]
        for r in range(j):
            # multiply by (n - base - r)
            shift = -(base + r)
            poly = [Fraction(0)] + poly
            for s in range(len(poly) - 1):
                poly[s] += shift * poly[s + 1]
        for s, c in enumerate(poly):
            coeffs[s] += Fraction(dj) * c / _fact(j)
    fp = FittedPolynomial(coeffs, 0, 0, n_max)
    n0 = base
    while n0 > n_start and fp(n0 - 1) == vals[n0 - 1 - n_start]:
        n0 -= 1
    fp.n0 = n0
    fp.window = n_max - n0 + 1
    return fp


def _fact(j):
    out = 1
    for r in range(2, j + 1):
        out *= r
    return out


def fit(table, i=None):
    """Fit row i of a TorTable (or a plain list of values starting at n = 0)."""
    if hasattr(table, "row"):
        return fit_values(table.row(i), table.n_range[0])
    return fit_values(table)


def evaluate(poly_coeffs, ns):
    return [sum(Fraction(c) * n ** k for k, c in enumerate(poly_coeffs)) for n in ns]


def degree_report(table, i, dim_R, depth_R, projdim_at_least_i=True):
    """Fitted degree of row i against dim R - 1 >= deg >= depth R - 1."""
    fp = fit(table, i)
    deg = fp.degree
    upper = deg <= dim_R - 1
    lower = deg >= depth_R - 1 if (projdim_at_least_i and depth_R >= 1) else True
    out = {"degree": deg, "fit": fp.to_json(), "upper_bound": dim_R - 1, "lower_bound": depth_R - 1,
           "upper_ok": upper, "lower_ok": lower, "lower_applies": bool(projdim_at_least_i and depth_R >= 1)}
    if depth_R == dim_R and projdim_at_least_i:
        out["cm_equality"] = deg == dim_R - 1
    return out
