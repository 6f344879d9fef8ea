"""Quaternion algebras, biquaternion tensor products and the Albert form.

Everything is exact: the base field is a Q-rooted series tower (the
ordered-field arguments go through verbatim over Q), anisotropy is tested
on EXACT inputs where nonvanishing is decidable, and the square-sum
leading-term invariants mirror the structural steps of the anisotropy
argument.
"""

from dataclasses import dataclass

from .algebra import StructureConstants, constants_mul
from .basefields import Domain
from .errors import CycdivError, DomainMismatchError
from .series import SeriesDomain, is_square_in_tower


class QuaternionAlgebra:
    """(u, v / F): i^2 = u, j^2 = v, ij = -ji.  Characteristic != 2."""

    LABELS = ("1", "i", "j", "ij")

    def __init__(self, F, u, v):
        if F.characteristic == 2:
            raise CycdivError("quaternion algebras need characteristic != 2")
        if F.is_known_zero(u) or F.is_known_zero(v):
            raise CycdivError("quaternion parameters must be nonzero")
        self.F = F
        self.u = u
        self.v = v
        one, neg = F.one, F.neg
        uv = F.mul(u, v)
        # table[a][b] = (coefficient, basis index) for e_a * e_b
        self.table = [
            [(one, 0), (one, 1), (one, 2), (one, 3)],
            [(one, 1), (u, 0), (one, 3), (u, 2)],
            [(one, 2), (neg(one), 3), (v, 0), (neg(v), 1)],
            [(one, 3), (neg(u), 2), (v, 1), (neg(uv), 0)],
        ]

    def __eq__(self, other):
        return (isinstance(other, QuaternionAlgebra) and other.F == self.F
                and self.F.eq(other.u, self.u) and self.F.eq(other.v, self.v))

    def __repr__(self):
        return f"Quaternion(({self.F.to_str(self.u)}, {self.F.to_str(self.v)}) / {self.F!r})"

    def element(self, coords):
        return Quaternion(self, tuple(coords))

    @property
    def one(self):
        F = self.F
        return self.element((F.one, F.zero, F.zero, F.zero))

    @property
    def i(self):
        F = self.F
        return self.element((F.zero, F.one, F.zero, F.zero))

    @property
    def j(self):
        F = self.F
        return self.element((F.zero, F.zero, F.one, F.zero))

    def random_element(self, rng, **opts):
        return self.element([self.F.random_element(rng, **opts) for _ in range(4)])


@dataclass(frozen=True)
class Quaternion:
    algebra: QuaternionAlgebra
    coords: tuple

    def _check(self, other):
        if not isinstance(other, Quaternion) or other.algebra != self.algebra:
            raise DomainMismatchError("quaternions from different algebras")

    def __add__(self, other):
        self._check(other)
        F = self.algebra.F
        return Quaternion(self.algebra,
                          tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        F = self.algebra.F
        return Quaternion(self.algebra, tuple(F.neg(a) for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return quat_mul(self, other)

    def is_known_zero(self):
        F = self.algebra.F
        return all(F.is_known_zero(c) for c in self.coords)

    def conjugate(self):
        F = self.algebra.F
        a, b, c, d = self.coords
        return Quaternion(self.algebra, (a, F.neg(b), F.neg(c), F.neg(d)))

    def __repr__(self):
        F = self.algebra.F
        parts = [f"({F.to_str(c)})*{lab}" for c, lab in zip(self.coords, self.algebra.LABELS)
                 if not F.is_known_zero(c)]
        return " + ".join(parts) if parts else "0"


def quat_mul(x, y):
    x._check(y)
    A = x.algebra
    F = A.F
    out = [F.zero] * 4
    for a, xa in enumerate(x.coords):
        if F.is_known_zero(xa):
            continue
        for b, yb in enumerate(y.coords):
            if F.is_known_zero(yb):
                continue
            coeff, idx = A.table[a][b]
            out[idx] = F.add(out[idx], F.mul(F.mul(xa, yb), coeff))
    return Quaternion(A, tuple(out))


def reduced_norm(x):
    """a^2 - u b^2 - v c^2 + uv d^2 = x * conj(x); multiplicative."""
    A, F = x.algebra, x.algebra.F
    a, b, c, d = x.coords
    n = F.mul(a, a)
    n = F.sub(n, F.mul(A.u, F.mul(b, b)))
    n = F.sub(n, F.mul(A.v, F.mul(c, c)))
    n = F.add(n, F.mul(F.mul(A.u, A.v), F.mul(d, d)))
    return n


def quat_invert(x):
    """conj(x) / reduced_norm(x); fails on reduced-norm zero."""
    F = x.algebra.F
    n = reduced_norm(x)
    if F.is_known_zero(n):
        raise ZeroDivisionError("quaternion with zero reduced norm")
    ninv = F.invert(n)
    conj = x.conjugate()
    return Quaternion(x.algebra, tuple(F.mul(ninv, c) for c in conj.coords))


class BiquaternionAlgebra:
    """D1 (x)_F D2, dimension 16, with materialized structure constants."""

    def __init__(self, D1, D2):
        if D1.F != D2.F:
            raise DomainMismatchError("tensor factors must share the base field")
        self.D1 = D1
        self.D2 = D2
        self.F = D1.F
        self.n = 16
        self.labels = [f"{a}(x){b}" for a in QuaternionAlgebra.LABELS
                       for b in QuaternionAlgebra.LABELS]
        F = self.F
        matrices = [[[F.zero] * 16 for _ in range(16)] for _ in range(16)]
        for s in range(4):
            for t in range(4):
                i = 4 * s + t
                for s2 in range(4):
                    for t2 in range(4):
                        j = 4 * s2 + t2
                        c1, s3 = D1.table[s][s2]
                        c2, t3 = D2.table[t][t2]
                        k = 4 * s3 + t3
                        matrices[k][i][j] = F.mul(c1, c2)
        self.constants = StructureConstants(16, self.labels, matrices,
                                            field_descriptor=repr(F))

    def element(self, coords):
        return BiquaternionElement(self, tuple(coords))

    @property
    def one(self):
        coords = [self.F.zero] * 16
        coords[0] = self.F.one
        return self.element(coords)

    def simple_tensor(self, x, y):
        """x (x) y for quaternions x in D1, y in D2."""
        F = self.F
        coords = [F.zero] * 16
        for s, a in enumerate(x.coords):
            for t, b in enumerate(y.coords):
                coords[4 * s + t] = F.add(coords[4 * s + t], F.mul(a, b))
        return self.element(coords)

    def random_element(self, rng, **opts):
        return self.element([self.F.random_element(rng, **opts) for _ in range(16)])


@dataclass(frozen=True)
class BiquaternionElement:
    algebra: BiquaternionAlgebra
    coords: tuple

    def _check(self, other):
        if not isinstance(other, BiquaternionElement) or other.algebra is not self.algebra:
            raise DomainMismatchError("elements of different biquaternion algebras")

    def __add__(self, other):
        self._check(other)
        F = self.algebra.F
        return BiquaternionElement(self.algebra,
                                   tuple(F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other):
        self._check(other)
        A = self.algebra
        out = constants_mul(self.coords, other.coords, A.constants, A.F)
        return BiquaternionElement(A, tuple(out))

    def is_known_zero(self):
        F = self.algebra.F
        return all(F.is_known_zero(c) for c in self.coords)


@dataclass(frozen=True)
class AlbertForm:
    """The six-coefficient quadratic form attached to a biquaternion algebra."""

    coefficients: tuple  # (u, v, -uv, -u', -v', u'v') over F
    F: object

    def evaluate(self, a, domain=None, embed=None):
        """phi(a_1..a_6); optionally over an extension via ``embed``."""
        if len(a) != 6:
            raise CycdivError("Albert form takes 6 arguments")
        dom = domain if domain is not None else self.F
        emb = embed if embed is not None else (lambda c: c)
        total = dom.zero
        for coeff, ai in zip(self.coefficients, a):
            total = dom.add(total, dom.mul(emb(coeff), dom.mul(ai, ai)))
        return total


def albert_form(D1, D2):
    if D1.F != D2.F:
        raise DomainMismatchError("quaternion algebras over different fields")
    F = D1.F
    u, v = D1.u, D1.v
    u2, v2 = D2.u, D2.v
    return AlbertForm((u, v, F.neg(F.mul(u, v)),
                       F.neg(u2), F.neg(v2), F.mul(u2, v2)), F)


class QuadraticExtension(Domain):
    """F(gamma) with gamma^2 = gamma_sq in F, elements as pairs (b, c)."""

    def __init__(self, base, gamma_sq):
        if base.characteristic == 2:
            raise CycdivError("quadratic extensions need characteristic != 2")
        self.base = base
        self.gamma_sq = gamma_sq
        self.characteristic = base.characteristic
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    def __eq__(self, other):
        return (isinstance(other, QuadraticExtension) and other.base == self.base
                and self.base.eq(other.gamma_sq, self.gamma_sq))

    def __repr__(self):
        return f"{self.base!r}(sqrt({self.base.to_str(self.gamma_sq)}))"

    @property
    def gamma(self):
        return (self.base.zero, self.base.one)

    def inject(self, b):
        return (b, self.base.zero)

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        b = self.base
        return (b.add(b.mul(x[0], y[0]), b.mul(self.gamma_sq, b.mul(x[1], y[1]))),
                b.add(b.mul(x[0], y[1]), b.mul(x[1], y[0])))

    def invert(self, x):
        b = self.base
        norm = b.sub(b.mul(x[0], x[0]), b.mul(self.gamma_sq, b.mul(x[1], x[1])))
        if b.is_known_zero(norm):
            raise ZeroDivisionError("zero norm in quadratic extension")
        ninv = b.invert(norm)
        return (b.mul(x[0], ninv), b.neg(b.mul(x[1], ninv)))

    def eq(self, x, y):
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def is_known_zero(self, x):
        return self.base.is_known_zero(x[0]) and self.base.is_known_zero(x[1])

    def random_element(self, rng, **opts):
        return (self.base.random_element(rng, **opts),
                self.base.random_element(rng, **opts))

    def to_str(self, x):
        return f"({self.base.to_str(x[0])}) + ({self.base.to_str(x[1])})*sqrt"


def anisotropy_sample_test(form, domain, trials, seed_rng, embed=None, sample_opts=None):
    """Evaluate the form on random nonzero EXACT tuples; count zeros.

    Any exact zero of the form on a nonzero tuple is a counterexample and
    is returned in the report.
    """
    opts = dict(n_terms=2, exp_lo=-2, exp_hi=4)
    if sample_opts:
        opts.update(sample_opts)
    failures = []
    for _ in range(trials):
        while True:
            a = tuple(domain.random_element(seed_rng, **opts) for _ in range(6))
            if not all(domain.is_known_zero(ai) for ai in a):
                break
        value = form.evaluate(a, domain=domain, embed=embed)
        if domain.is_known_zero(value):
            failures.append(a)
    return {"trials": trials, "failures": len(failures), "counterexamples": failures}


def sos_leading_data(summands):
    """Leading data of a sum of squares in Q((X))((Y)).

    Returns the Y-valuation, the Y-angular component (an X-series), its
    X-valuation and leading rational, asserting: both valuations even and
    the leading rational positive.
    """
    if not summands:
        raise CycdivError("need at least one summand")
    domain = summands[0].domain
    if not isinstance(domain, SeriesDomain) or not isinstance(domain.coeff, SeriesDomain):
        raise CycdivError("expected elements of a two-level series tower")
    for s in summands:
        if not s.is_exact:
            raise CycdivError("square-sum invariants need EXACT inputs")
    total = domain.zero
    for s in summands:
        total = total + s * s
    if total.is_known_zero():
        raise CycdivError("all summands are zero")
    v_outer = total.valuation()
    ac_outer = total.angular_component()
    v_inner = ac_outer.valuation()
    lead = ac_outer.angular_component()
    if v_outer % 2 != 0:
        raise CycdivError(f"odd outer valuation {v_outer} in a sum of squares")
    if v_inner % 2 != 0:
        raise CycdivError(f"odd inner valuation {v_inner} in a sum of squares")
    if not lead > 0:
        raise CycdivError(f"nonpositive leading rational {lead} in a sum of squares")
    return {"outer_valuation": v_outer, "angular_component": ac_outer,
            "inner_valuation": v_inner, "leading_rational": lead}


def nonsquare_witness(inner_domain):
    """2 + 2X^2 = (1+X)^2 + (1-X)^2, certified non-square over Q((X)).

    This is the sum-of-squares witness, cleared of its square denominator.
    """
    one = inner_domain.one
    x = inner_domain.variable
    a = one + x
    b = one - x
    w = a * a + b * b
    if is_square_in_tower(w):
        raise CycdivError("witness unexpectedly a square")
    return w, {"is_square": False, "witness": "(1+X)^2 + (1-X)^2"}
