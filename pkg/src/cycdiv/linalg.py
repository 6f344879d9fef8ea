"""Dense linear solves over coefficient domains, incl. exact kernel vectors.

Two paths: a direct Gaussian elimination using the domain's own division
(with valuation-aware pivoting and precision tracking for series), and an
exact fraction-field elimination over EXACT series for kernel extraction,
where truncation would hide singularity.
"""

from .basefields import Domain
from .errors import CycdivError, ZeroDivisorError
from .series import INFINITY, Series, SeriesDomain


class FractionField(Domain):
    """Fractions (num, den) over an integral domain, no reduction."""

    def __init__(self, base):
        self.base = base
        self.characteristic = base.characteristic
        self.zero = (base.zero, base.one)
        self.one = (base.one, base.one)

    def __eq__(self, other):
        return isinstance(other, FractionField) and other.base == self.base

    def __hash__(self):
        return hash(("FractionField", self.base))

    def from_int(self, n):
        return (self.base.from_int(n), self.base.one)

    def inject(self, a):
        return (a, self.base.one)

    def add(self, x, y):
        b = self.base
        return (b.add(b.mul(x[0], y[1]), b.mul(y[0], x[1])), b.mul(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    def mul(self, x, y):
        b = self.base
        return (b.mul(x[0], y[0]), b.mul(x[1], y[1]))

    def invert(self, x):
        if self.base.is_known_zero(x[0]):
            raise ZeroDivisionError("inverse of zero fraction")
        return (x[1], x[0])

    def is_zero(self, x):
        return self.base.is_known_zero(x[0])

    is_known_zero = is_zero

    def eq(self, x, y):
        b = self.base
        return b.is_known_zero(b.sub(b.mul(x[0], y[1]), b.mul(y[0], x[1])))

    def to_str(self, x):
        return f"({self.base.to_str(x[0])}) / ({self.base.to_str(x[1])})"


def _pivot_key(domain, value):
    """Pivot preference: smallest valuation for series, else constant."""
    if isinstance(domain, SeriesDomain):
        return value.valuation_lower_bound()
    return 0


def solve_linear(domain, matrix, rhs, precision=None):
    """Solve M x = rhs over a field domain by Gaussian elimination.

    ``matrix`` is a list of rows; ``rhs`` a list.  For series domains,
    ``precision`` bounds the working precision (default: the domain's).
    Raises ZeroDivisorError on a singular system, carrying an exact
    kernel vector when the entries are EXACT.
    """
    n = len(matrix)
    series_mode = isinstance(domain, SeriesDomain)
    if series_mode:
        work = precision if precision is not None else domain.default_precision
        slack = 10
        M = [[e.truncate(work + slack) for e in row] for row in matrix]
        b = [e.truncate(work + slack) for e in rhs]
    else:
        M = [list(row) for row in matrix]
        b = list(rhs)

    def _invert(v):
        if series_mode:
            ach = INFINITY if v.precision is None else v.precision - 2 * v.valuation()
            return v.invert(min(work + slack, ach))
        return domain.invert(v)

    for col in range(n):
        pivot_row = None
        best = None
        for r in range(col, n):
            if not domain.is_known_zero(M[r][col]):
                key = _pivot_key(domain, M[r][col])
                if best is None or key < best:
                    best, pivot_row = key, r
        if pivot_row is None:
            kernel = None
            if all(_all_exact(row) for row in matrix):
                kernel = kernel_vector(domain, matrix)
            raise ZeroDivisorError("singular linear system", kernel=kernel)
        M[col], M[pivot_row] = M[pivot_row], M[col]
        b[col], b[pivot_row] = b[pivot_row], b[col]
        pinv = _invert(M[col][col])
        M[col] = [domain.mul(pinv, e) for e in M[col]]
        b[col] = domain.mul(pinv, b[col])
        for r in range(n):
            if r == col or domain.is_known_zero(M[r][col]):
                continue
            f = M[r][col]
            M[r] = [domain.sub(M[r][j], domain.mul(f, M[col][j])) for j in range(n)]
            b[r] = domain.sub(b[r], domain.mul(f, b[col]))
    return b


def _all_exact(row):
    return all((not isinstance(e, Series)) or e.is_exact for e in row)


def kernel_vector(domain, matrix):
    """An exact nonzero vector in the right kernel of M, or None.

    Runs fraction-field elimination (exact for EXACT series and for exact
    base fields), then clears denominators so the result lives in the
    original domain.
    """
    n = len(matrix)
    ff = FractionField(domain)
    M = [[ff.inject(e) for e in row] for row in matrix]
    pivots = {}  # column -> row
    row = 0
    for col in range(n):
        pr = None
        for r in range(row, n):
            if not ff.is_zero(M[r][col]):
                pr = r
                break
        if pr is None:
            continue
        M[row], M[pr] = M[pr], M[row]
        pinv = ff.invert(M[row][col])
        M[row] = [ff.mul(pinv, e) for e in M[row]]
        for r in range(n):
            if r == row or ff.is_zero(M[r][col]):
                continue
            f = M[r][col]
            M[r] = [ff.sub(M[r][j], ff.mul(f, M[row][j])) for j in range(n)]
        pivots[col] = row
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    x = [ff.zero] * n
    x[fc] = ff.one
    for col, r in pivots.items():
        x[col] = ff.neg(M[r][fc])
    # clear denominators: x_i = num_i/den_i -> num_i * prod_{j != i} den_j
    cleared = []
    for i, (num, den) in enumerate(x):
        scale = domain.one
        for j, (_, dj) in enumerate(x):
            if j != i:
                scale = domain.mul(scale, dj)
        cleared.append(domain.mul(num, scale))
    if all(domain.is_known_zero(c) for c in cleared):
        raise CycdivError("kernel clearing produced the zero vector")
    return cleared
