"""Truncated generalized power series (Laurent/Hahn) over a coefficient field.

A :class:`Series` is a finite support map exponent -> coefficient together
with either an absolute precision bound pi (coefficients at exponents < pi
are known, the rest unknown) or the EXACT marker (``precision is None``,
the element *is* its finite support).  Exponents live in a value group:
the integers, or Z[1/p] for Hahn towers.  The coefficient field of a
:class:`SeriesDomain` may itself be a series domain, which is how towers
like k((x))((t)) are built.
"""

import math
import re
from fractions import Fraction

from .basefields import Domain, RationalField, is_prime
from .errors import CycdivError, DomainMismatchError, PrecisionError, ValueGroupError

INFINITY = math.inf

_MAX_NEWTON_ITER = 200


def _norm_exp(e):
    """Normalize an exponent: plain ints where possible."""
    if isinstance(e, Fraction):
        if e.denominator == 1:
            return int(e)
        return e
    if isinstance(e, int):
        return e
    if isinstance(e, float) and e == INFINITY:
        return e
    raise ValueGroupError(f"exponent {e!r} is not an integer or Fraction")


class ValueGroup:
    """Z, or the p-divisible group Z[1/p] of rationals with p-power denominator."""

    def __init__(self, p=None):
        if p is not None and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, ValueGroup) and other.p == self.p

    def __hash__(self):
        return hash(("ValueGroup", self.p))

    def __repr__(self):
        return "Z" if self.p is None else f"Z[1/{self.p}]"

    def contains(self, e):
        e = Fraction(e)
        if self.p is None:
            return e.denominator == 1
        d = e.denominator
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def contains_q_multiple(self, e, q):
        """Whether e lies in q*Gamma."""
        if not self.contains(e):
            raise ValueGroupError(f"{e} is not in {self!r}")
        e = Fraction(e)
        if self.p is not None and q == self.p:
            return True  # Z[1/p] is p-divisible
        # clear the (q-coprime) denominator; membership reads off the numerator
        return e.numerator % q == 0

    def is_coset_separating(self, gamma, q):
        """True iff qG, qG+gamma, ..., qG+(q-1)gamma are pairwise distinct.

        For q prime this is equivalent to gamma not lying in qG.
        """
        return not self.contains_q_multiple(gamma, q)


class Series:
    """Immutable truncated or exact generalized power series.

    Do not mutate ``coeffs`` after construction.  Built via the factory
    methods on :class:`SeriesDomain`.
    """

    __slots__ = ("domain", "coeffs", "precision")

    def __init__(self, domain, coeffs, precision=None, _validate=True):
        if _validate:
            cd = domain.coeff
            clean = {}
            for e, c in coeffs.items():
                e = _norm_exp(e)
                if not domain.group.contains(e):
                    raise ValueGroupError(f"exponent {e} not in value group {domain.group!r}")
                if precision is not None and e >= precision:
                    continue
                if not cd.is_known_zero(c):
                    clean[e] = c
            coeffs = clean
            if precision is not None:
                precision = _norm_exp(precision)
        self.domain = domain
        self.coeffs = coeffs
        self.precision = precision

    # -- basic state ---------------------------------------------------

    @property
    def is_exact(self):
        return self.precision is None

    def is_known_zero(self):
        """No nonzero known coefficient (exactly zero when also EXACT)."""
        return not self.coeffs

    def is_exact_zero(self):
        return self.precision is None and not self.coeffs

    def valuation(self):
        """Minimal support exponent; INFINITY for exact zero.

        Raises PrecisionError when the element truncates to zero at finite
        precision (the valuation is then only bounded below).
        """
        if self.coeffs:
            return min(self.coeffs)
        if self.precision is None:
            return INFINITY
        raise PrecisionError(
            f"valuation below precision unknown: element is O({self.domain.var}^{self.precision})"
        )

    def valuation_lower_bound(self):
        if self.coeffs:
            return min(self.coeffs)
        return INFINITY if self.precision is None else self.precision

    def residue(self):
        """Coefficient at exponent 0, extended by 0 off the valuation ring."""
        cd = self.domain.coeff
        if not self.coeffs:
            if self.precision is None or self.precision > 0:
                return cd.zero
            raise PrecisionError("insufficient precision to determine the residue")
        v = min(self.coeffs)
        if v < 0:
            return cd.zero
        if self.precision is not None and self.precision <= 0:
            raise PrecisionError("insufficient precision to determine the residue")
        return self.coeffs.get(0, cd.zero)

    def angular_component(self):
        """Coefficient at the minimal exponent."""
        v = self.valuation()
        if v == INFINITY:
            raise CycdivError("angular component of the zero series is undefined")
        return self.coeffs[v]

    # -- arithmetic ----------------------------------------------------

    def _check_domain(self, other):
        if not isinstance(other, Series) or other.domain != self.domain:
            raise DomainMismatchError("series from different domains")

    def __add__(self, other):
        self._check_domain(other)
        pa = INFINITY if self.precision is None else self.precision
        pb = INFINITY if other.precision is None else other.precision
        prec = min(pa, pb)
        cd = self.domain.coeff
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if e in out:
                s = cd.add(out[e], c)
                if cd.is_known_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        if prec != INFINITY:
            out = {e: c for e, c in out.items() if e < prec}
        return Series(self.domain, out, None if prec == INFINITY else prec, _validate=False)

    def __neg__(self):
        cd = self.domain.coeff
        return Series(self.domain, {e: cd.neg(c) for e, c in self.coeffs.items()},
                      self.precision, _validate=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_domain(other)
        pa = INFINITY if self.precision is None else self.precision
        pb = INFINITY if other.precision is None else other.precision
        if pa == pb == INFINITY:
            prec = INFINITY
        else:
            prec = min(pa + other.valuation_lower_bound(), pb + self.valuation_lower_bound())
        cd = self.domain.coeff
        cmul, cadd, ckz = cd.mul, cd.add, cd.is_known_zero
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= prec:
                    continue
                p = cmul(c1, c2)
                if e in out:
                    out[e] = cadd(out[e], p)
                else:
                    out[e] = p
        out = {e: c for e, c in out.items() if not ckz(c)}
        return Series(self.domain, out, None if prec == INFINITY else prec, _validate=False)

    def scale(self, c):
        """Multiply by a coefficient-field element."""
        cd = self.domain.coeff
        if cd.is_known_zero(c):
            return Series(self.domain, {}, self.precision, _validate=False)
        out = {}
        for e, a in self.coeffs.items():
            p = cd.mul(c, a)
            if not cd.is_known_zero(p):
                out[e] = p
        return Series(self.domain, out, self.precision, _validate=False)

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        acc = self.domain.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def truncate(self, prec):
        prec = _norm_exp(prec)
        if self.precision is not None and self.precision <= prec:
            return self
        return Series(self.domain, {e: c for e, c in self.coeffs.items() if e < prec},
                      prec, _validate=False)

    def shift(self, delta):
        """Multiply by the monomial of exponent delta."""
        delta = _norm_exp(delta)
        if not self.domain.group.contains(delta):
            raise ValueGroupError(f"exponent {delta} not in value group")
        prec = None if self.precision is None else self.precision + delta
        return Series(self.domain, {e + delta: c for e, c in self.coeffs.items()},
                      prec, _validate=False)

    def invert(self, target_precision=None):
        """Multiplicative inverse, exact for monomials, Newton otherwise.

        ``target_precision`` is an absolute exponent bound for the result;
        default is the domain's default precision.
        """
        v = self.valuation()
        if v == INFINITY:
            raise ZeroDivisionError("inverse of the zero series")
        cd = self.domain.coeff
        lead_inv = cd.invert(self.coeffs[v])
        if self.precision is None and len(self.coeffs) == 1:
            return Series(self.domain, {-v: lead_inv}, None, _validate=False)
        achievable = INFINITY if self.precision is None else self.precision - 2 * v
        if target_precision is None:
            target = min(self.domain.default_precision, achievable)
        else:
            target = _norm_exp(target_precision)
            if target > achievable:
                raise PrecisionError(
                    f"insufficient input precision: inverse only known to O(^{achievable})")
        x = Series(self.domain, {-v: lead_inv}, None, _validate=False)
        two = self.domain.from_int(2)
        for _ in range(_MAX_NEWTON_ITER):
            err = (self * x - self.domain.one).truncate(target + v)
            if err.is_known_zero():
                return x.truncate(target)
            x = (x * (two - self * x)).truncate(target)
        raise CycdivError("series inversion did not converge")

    # -- comparison / display -------------------------------------------

    def agrees_to_precision(self, other):
        """Equality on all jointly-known coefficients."""
        self._check_domain(other)
        pa = INFINITY if self.precision is None else self.precision
        pb = INFINITY if other.precision is None else other.precision
        joint = min(pa, pb)
        cd = self.domain.coeff
        for e in set(self.coeffs) | set(other.coeffs):
            if e >= joint:
                continue
            a = self.coeffs.get(e, cd.zero)
            b = other.coeffs.get(e, cd.zero)
            if not cd.eq(a, b):
                return False
        return True

    def __eq__(self, other):
        """Structural equality (same support, coefficients and precision)."""
        if not isinstance(other, Series) or other.domain != self.domain:
            return NotImplemented
        if self.precision != other.precision or set(self.coeffs) != set(other.coeffs):
            return False
        cd = self.domain.coeff
        return all(cd.eq(c, other.coeffs[e]) for e, c in self.coeffs.items())

    def __hash__(self):
        raise TypeError("Series is not hashable; compare with agrees_to_precision")

    def __repr__(self):
        return self.domain.to_str(self)

    __str__ = __repr__


def _exp_str(var, e):
    if e == 1:
        return var
    if isinstance(e, int) and e > 1:
        return f"{var}^{e}"
    return f"{var}^({e})"


class SeriesDomain(Domain):
    """The field of (truncated) series over ``coeff`` in variable ``var``."""

    def __init__(self, coeff, var, group=None, default_precision=20):
        self.coeff = coeff
        self.var = var
        self.group = group if group is not None else ValueGroup()
        self.default_precision = default_precision
        self.characteristic = coeff.characteristic
        self.zero = Series(self, {}, None, _validate=False)
        self.one = Series(self, {0: coeff.one}, None, _validate=False)

    def __eq__(self, other):
        return (isinstance(other, SeriesDomain) and other.coeff == self.coeff
                and other.var == self.var and other.group == self.group)

    def __hash__(self):
        return hash(("SeriesDomain", self.coeff, self.var, self.group))

    def __repr__(self):
        g = "" if self.group.p is None else f"^{self.group!r}"
        return f"{self.coeff!r}(({self.var}{g}))"

    # -- construction ----------------------------------------------------

    def series(self, coeffs, precision=None):
        return Series(self, coeffs, precision)

    def constant(self, c):
        return Series(self, {0: c} if not self.coeff.is_known_zero(c) else {}, None,
                      _validate=False)

    def monomial(self, e, c=None):
        c = self.coeff.one if c is None else c
        return self.series({e: c})

    @property
    def variable(self):
        return Series(self, {1: self.coeff.one}, None, _validate=False)

    def from_int(self, n):
        return self.constant(self.coeff.from_int(n))

    # -- Domain protocol ---------------------------------------------------

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invert(self, a):
        return a.invert()

    def eq(self, a, b):
        return a.agrees_to_precision(b)

    def is_zero(self, a):
        return a.is_exact_zero()

    def is_known_zero(self, a):
        return a.is_known_zero()

    def pow(self, a, n):
        return a ** n

    # -- q-th powers and roots ------------------------------------------

    def is_qth_power(self, s, q):
        """Decide q-th power membership in the Laurent/Hahn field.

        Uses the henselian criterion: valuation in q*Gamma and angular
        component a q-th power in the coefficient field.  Requires q
        different from the characteristic and a known valuation.
        """
        if q == self.characteristic:
            raise CycdivError("q-th power test needs q invertible in the field")
        v = s.valuation()
        if v == INFINITY:
            return True
        if not self.group.contains_q_multiple(v, q):
            return False
        return self.coeff.is_qth_power(s.angular_component(), q)

    def qth_root(self, s, q, target_precision=None):
        v = s.valuation()
        if v == INFINITY:
            return self.zero
        if not self.group.contains_q_multiple(v, q):
            raise CycdivError(f"valuation {v} is not in {q}*Gamma: no {q}-th root")
        unit = s.shift(-v)
        root = hensel_qth_root(unit, q, target_precision)
        return root.shift(Fraction(v, q))

    # -- randomized sampling ------------------------------------------------

    def random_element(self, rng, n_terms=3, exp_lo=-3, exp_hi=8, precision=None,
                       nonzero=False, unit=False, **coeff_opts):
        """Seeded random series with sparse support.

        ``unit`` forces valuation 0; ``nonzero`` forces nonempty support.
        In Z[1/p] mode exponents may pick up p-power denominators.
        """
        while True:
            coeffs = {}
            k = rng.randint(1 if (nonzero or unit) else 0, n_terms)
            for _ in range(k):
                e = rng.randint(exp_lo, exp_hi)
                if self.group.p is not None and rng.random() < 0.4:
                    e = Fraction(e, self.group.p ** rng.randint(1, 2))
                c = self.coeff.random_element(rng, nonzero=True, **coeff_opts)
                coeffs[_norm_exp(e)] = c
            if unit:
                coeffs = {e: c for e, c in coeffs.items() if e > 0}
                coeffs[0] = self.coeff.random_element(rng, nonzero=True, **coeff_opts)
            if precision is not None:
                coeffs = {e: c for e, c in coeffs.items() if e < precision}
            if nonzero and not coeffs:
                continue
            return Series(self, coeffs, precision, _validate=False)

    # -- text format ------------------------------------------------------

    def to_str(self, s):
        nested = isinstance(self.coeff, SeriesDomain)
        parts = []
        for e in sorted(s.coeffs):
            cs = self.coeff.to_str(s.coeffs[e])
            if nested:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(_exp_str(self.var, e))
            else:
                parts.append(f"{cs}*{_exp_str(self.var, e)}")
        if s.precision is not None:
            parts.append(f"O({_exp_str(self.var, s.precision)})")
        if not parts:
            return "0"
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-") and not nested:
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def parse(self, text):
        """Parse the textual format, e.g. ``3*t^(-1) + 2 + 5*t^(3/7) + O(t^5)``."""
        coeffs = {}
        precision = None
        for sign, term in _split_terms(text):
            if term.startswith("O(") and term.endswith(")"):
                if sign < 0:
                    raise CycdivError("O-term cannot be negated")
                precision = self._parse_exp_token(term[2:-1])
                continue
            e, c = self._parse_term(term)
            if sign < 0:
                c = self.coeff.neg(c)
            if e in coeffs:
                c = self.coeff.add(coeffs[e], c)
            coeffs[e] = c
        return self.series(coeffs, precision)

    def _parse_exp_token(self, tok):
        tok = tok.strip()
        if tok == "1":
            return 0
        if tok == self.var:
            return 1
        m = re.fullmatch(re.escape(self.var) + r"\^\(?(-?\d+(?:/\d+)?)\)?", tok)
        if not m:
            raise CycdivError(f"cannot parse exponent token {tok!r}")
        return _norm_exp(Fraction(m.group(1)))

    def _parse_term(self, term):
        parts = _split_top(term, "*")
        if len(parts) == 1:
            p = parts[0]
            if p == self.var or p.startswith(self.var + "^"):
                return self._parse_exp_token(p), self.coeff.one
            return 0, self._parse_coeff(p)
        if len(parts) == 2:
            return self._parse_exp_token(parts[1]), self._parse_coeff(parts[0])
        raise CycdivError(f"cannot parse term {term!r}")

    def _parse_coeff(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")") and _matched(text):
            text = text[1:-1]
        return self.coeff.parse(text)


def _matched(text):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return depth == 0


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def _split_terms(text):
    """Split on top-level + and - into (sign, chunk) pairs."""
    text = text.strip()
    out, depth, cur, sign = [], 0, [], 1
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and "".join(cur).strip():
            prev = "".join(cur).rstrip()
            if prev and prev[-1] not in "*^/(":
                out.append((sign, prev.strip()))
                cur, sign = [], (1 if ch == "+" else -1)
                continue
        if depth == 0 and ch == "-" and not "".join(cur).strip():
            sign = -sign
            continue
        if depth == 0 and ch == "+" and not "".join(cur).strip():
            continue
        cur.append(ch)
    last = "".join(cur).strip()
    if last:
        out.append((sign, last))
    return out


def hensel_qth_root(s, q, target_precision=None):
    """Newton lift of a q-th root of a valuation-0 series.

    The residue must be a q-th power in the coefficient field and q must be
    invertible (q != characteristic).  The root's residue is the coefficient
    field's canonical q-th root of the residue.
    """
    domain = s.domain
    cd = domain.coeff
    if q == domain.characteristic:
        raise CycdivError("Hensel q-th root needs q invertible (q != characteristic)")
    if s.valuation() != 0:
        raise CycdivError("Hensel q-th root needs a valuation-0 input")
    res = s.residue()
    if not cd.is_qth_power(res, q):
        raise CycdivError(f"residue {cd.to_str(res)} is not a {q}-th power in the residue field")
    if target_precision is None:
        target = domain.default_precision
    else:
        target = _norm_exp(target_precision)
    if s.precision is not None:
        target = min(target, s.precision)
    r = domain.constant(cd.qth_root(res, q))
    for _ in range(_MAX_NEWTON_ITER):
        err = (r ** q - s).truncate(target)
        if err.is_known_zero():
            return r.truncate(target)
        denom = (r ** (q - 1)).scale(cd.from_int(q))
        r = (r - err * denom.invert(target)).truncate(target)
    raise CycdivError("Hensel lifting did not converge")


def root_domain(domain):
    """The innermost coefficient domain of a series tower."""
    while isinstance(domain, SeriesDomain):
        domain = domain.coeff
    return domain


def is_square_in_tower(s):
    """Exact squareness in the fraction field of a Q-rooted series tower.

    Rejects truncated input: squareness is not stable under truncation.
    """
    if not isinstance(s.domain, SeriesDomain):
        raise CycdivError("expected a series tower element")
    if not isinstance(root_domain(s.domain), RationalField):
        raise CycdivError("square test is implemented for Q-rooted towers")
    if not s.is_exact:
        raise PrecisionError("square test requires an EXACT series")
    if s.is_exact_zero():
        return True
    return s.domain.is_qth_power(s, 2)


def laurent(coeff, var="t", default_precision=20):
    """Laurent series field coeff((var)) with value group Z."""
    return SeriesDomain(coeff, var, ValueGroup(), default_precision)


def hahn(coeff, var, p, default_precision=20):
    """Hahn-type field coeff((var^Gamma)) with Gamma = Z[1/p]."""
    return SeriesDomain(coeff, var, ValueGroup(p), default_precision)
