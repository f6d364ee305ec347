"""Truncated bivariate power series in X, Y with exact rational coefficients.

Two flavors share one representation:

* action series live in 2pi-units: a stored coefficient ``c`` stands for
  ``2*pi*c``.  The twisting index is then a plain floor and the group action
  only ever adds rationals.
* transition series are stored raw and have no constant term.

Every equality in this module is an equality up to total degree ``degree``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InvertibilityError
from .rational import RationalLike, as_fraction, floor, format_rational

ACTION = "action"
TRANSITION = "transition"
FLAVORS = (ACTION, TRANSITION)

DEFAULT_DEGREE = 8
_ZERO = Fraction(0)

Exponent = Tuple[int, int]


def graded_exponents(degree: int) -> List[Exponent]:
    """All ``(p, q)`` with ``p + q <= degree`` ordered by total degree, then p."""
    return [(p, d - p) for d in range(degree + 1) for p in range(d + 1)]


class TaylorSeries:
    """An immutable truncated series ``sum c[p, q] X^p Y^q`` with ``p + q <= degree``."""

    __slots__ = ("_coeffs", "degree", "flavor", "_hash", "_graded")

    def __init__(
        self,
        coeffs: Mapping[Exponent, RationalLike] | Iterable[Tuple[Exponent, RationalLike]] = (),
        degree: int = DEFAULT_DEGREE,
        flavor: str = ACTION,
    ):
        if degree < 1:
            raise ValueError("degree cap must be a positive integer")
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: Dict[Exponent, Fraction] = {}
        for (p, q), c in items:
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent {(p, q)}")
            if p + q > degree:
                continue
            c = as_fraction(c)
            c = clean.get((p, q), 0) + c
            if c:
                clean[(p, q)] = c
            else:
                clean.pop((p, q), None)
        self._coeffs = clean
        self.degree = degree
        self.flavor = flavor
        self._hash = None
        self._graded = None

    @classmethod
    def _raw(cls, coeffs: Dict[Exponent, Fraction], degree: int, flavor: str) -> "TaylorSeries":
        obj = cls.__new__(cls)
        obj._coeffs = coeffs
        obj.degree = degree
        obj.flavor = flavor
        obj._hash = None
        obj._graded = None
        return obj

    # constructors

    @classmethod
    def zero(cls, degree=DEFAULT_DEGREE, flavor=ACTION):
        return cls._raw({}, degree, flavor)

    @classmethod
    def constant(cls, c: RationalLike, degree=DEFAULT_DEGREE, flavor=ACTION):
        return cls({(0, 0): c}, degree, flavor)

    @classmethod
    def X(cls, degree=DEFAULT_DEGREE, flavor=ACTION):
        return cls({(1, 0): 1}, degree, flavor)

    @classmethod
    def Y(cls, degree=DEFAULT_DEGREE, flavor=TRANSITION):
        return cls({(0, 1): 1}, degree, flavor)

    # access

    def coeff(self, p: int, q: int) -> Fraction:
        return self._coeffs.get((p, q), _ZERO)

    def __getitem__(self, pq: Exponent) -> Fraction:
        return self.coeff(*pq)

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Nonzero terms sorted by exponent pair."""
        return sorted(self._coeffs.items())

    def graded_coefficients(self) -> Tuple[Fraction, ...]:
        """Dense coefficient vector in graded-lexicographic exponent order."""
        if self._graded is None:
            get = self._coeffs.get
            self._graded = tuple(get(e, _ZERO) for e in graded_exponents(self.degree))
        return self._graded

    @property
    def constant_term(self) -> Fraction:
        return self.coeff(0, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, degree: int) -> "TaylorSeries":
        if degree > self.degree:
            raise ValueError("cannot raise the degree cap of a truncated series")
        if degree == self.degree:
            return self
        return TaylorSeries._raw(
            {k: v for k, v in self._coeffs.items() if k[0] + k[1] <= degree}, degree, self.flavor
        )

    def with_flavor(self, flavor: str) -> "TaylorSeries":
        if flavor == self.flavor:
            return self
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        return TaylorSeries._raw(self._coeffs, self.degree, flavor)

    def swap_xy(self) -> "TaylorSeries":
        return TaylorSeries._raw({(q, p): c for (p, q), c in self._coeffs.items()}, self.degree, self.flavor)

    # arithmetic

    def _coerce(self, other) -> Optional["TaylorSeries"]:
        if isinstance(other, TaylorSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TaylorSeries.constant(other, self.degree, self.flavor)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = min(self.degree, other.degree)
        out = {k: v for k, v in self._coeffs.items() if k[0] + k[1] <= d}
        for k, v in other._coeffs.items():
            if k[0] + k[1] > d:
                continue
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TaylorSeries._raw(out, d, self.flavor)

    __radd__ = __add__

    def __neg__(self):
        return TaylorSeries._raw({k: -v for k, v in self._coeffs.items()}, self.degree, self.flavor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if not c:
                return TaylorSeries.zero(self.degree, self.flavor)
            return TaylorSeries._raw({k: v * c for k, v in self._coeffs.items()}, self.degree, self.flavor)
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        d = min(self.degree, other.degree)
        a, da = _integral(self._coeffs)
        b, db = _integral(other._coeffs)
        return TaylorSeries._raw(_to_fractions(_int_mul(a, b, d), da * db), d, self.flavor)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = TaylorSeries.constant(1, self.degree, self.flavor)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return self.degree == other.degree and self.flavor == other.flavor and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, self.flavor, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"TaylorSeries({self}, degree={self.degree}, flavor={self.flavor!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for (p, q) in sorted(self._coeffs, key=lambda e: (e[0] + e[1], e[0])):
            c = self._coeffs[(p, q)]
            mono = "*".join(
                s for s in (
                    "" if p == 0 else ("X" if p == 1 else f"X^{p}"),
                    "" if q == 0 else ("Y" if q == 1 else f"Y^{q}"),
                ) if s
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# integer kernels: numerators over one common denominator


def _integral(coeffs: Mapping[Exponent, Fraction]) -> Tuple[Dict[Exponent, int], int]:
    den = 1
    for v in coeffs.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    return {k: v.numerator * (den // v.denominator) for k, v in coeffs.items()}, den


def _to_fractions(nums: Mapping[Exponent, int], den: int) -> Dict[Exponent, Fraction]:
    return {k: Fraction(v, den) for k, v in nums.items() if v}


def _int_mul(a: Mapping[Exponent, int], b: Mapping[Exponent, int], degree: int) -> Dict[Exponent, int]:
    out: Dict[Exponent, int] = {}
    bl = sorted(b.items(), key=lambda kv: kv[0][0] + kv[0][1])
    for (p1, q1), c1 in a.items():
        room = degree - p1 - q1
        for (p2, q2), c2 in bl:
            if p2 + q2 > room:
                break
            k = (p1 + p2, q1 + q2)
            out[k] = out.get(k, 0) + c1 * c2
    return out


class _Substitution:
    """Cached integer powers of an inner series g, for repeated ``f(X, g)``."""

    def __init__(self, g: TaylorSeries):
        if g.constant_term:
            raise InvertibilityError("substituted series must have zero constant term")
        self.g = g
        self._num, self._den = _integral(g._coeffs)
        self._powers: List[Dict[Exponent, int]] = [{(0, 0): 1}]

    def _power(self, q: int) -> Dict[Exponent, int]:
        while len(self._powers) <= q:
            self._powers.append(_int_mul(self._powers[-1], self._num, self.g.degree))
        return self._powers[q]

    def apply(self, f: TaylorSeries) -> TaylorSeries:
        d = min(f.degree, self.g.degree)
        fn, fd = _integral(f._coeffs)
        top = max((q for (_, q) in fn), default=0)
        acc: Dict[Exponent, int] = {}
        gd = self._den
        for (p, q), c in fn.items():
            scale = c * gd ** (top - q)
            for (a, b), v in self._power(q).items():
                if p + a + b > d:
                    continue
                k = (p + a, b)
                acc[k] = acc.get(k, 0) + scale * v
        return TaylorSeries._raw(_to_fractions(acc, fd * gd ** top), d, f.flavor)


def compose_y(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """Return ``f(X, g(X, Y))`` truncated at the smaller degree cap.

    ``g`` must have zero constant term so that substitution respects the
    degree filtration.
    """
    return _Substitution(g).apply(f)


def invert_y(g: TaylorSeries) -> TaylorSeries:
    """Return ``h`` with ``g(X, h(X, Y)) = Y`` (and hence ``h(X, g) = Y``).

    Solved by the fixed-point iteration ``h <- (Y - (g(X, h) - a h)) / a``
    with ``a`` the Y-coefficient; each pass fixes one more degree.
    """
    a = g.coeff(0, 1)
    if g.constant_term:
        raise InvertibilityError("series with nonzero constant term is not Y-invertible")
    if a <= 0:
        raise InvertibilityError("Y-coefficient must be positive")
    d = g.degree
    y = TaylorSeries.Y(d, g.flavor)
    nonlinear = g - y * a
    h = y / a
    for _ in range(d):
        h_next = (y - compose_y(nonlinear, h)) / a
        if h_next == h:
            break
        h = h_next
    return h


# tuples of action and transition series


@dataclass(frozen=True)
class Violation:
    relation: str
    indices: Tuple[int, ...]
    exponent: Optional[Exponent]
    detail: str

    def __str__(self):
        where = f" at X^{self.exponent[0]}Y^{self.exponent[1]}" if self.exponent else ""
        return f"relation ({self.relation}) indices {self.indices}{where}: {self.detail}"


@dataclass(frozen=True)
class RelationReport:
    degree: int
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"all relations hold up to degree {self.degree}"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class TaylorTuple:
    """Action series ``s[mu]`` and transition series ``g[mu][nu]`` of one fiber."""

    s: Tuple[TaylorSeries, ...]
    g: Tuple[Tuple[TaylorSeries, ...], ...]
    _report: Optional[RelationReport] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        m = len(self.s)
        if m < 1:
            raise ValueError("a Taylor tuple needs at least one action series")
        if len(self.g) != m or any(len(row) != m for row in self.g):
            raise ValueError(f"transition array must be {m}x{m}")
        object.__setattr__(self, "s", tuple(x.with_flavor(ACTION) for x in self.s))
        object.__setattr__(self, "g", tuple(tuple(x.with_flavor(TRANSITION) for x in row) for row in self.g))

    @property
    def m(self) -> int:
        return len(self.s)

    @property
    def degree(self) -> int:
        return min([x.degree for x in self.s] + [x.degree for row in self.g for x in row])

    def rotate(self, z: int) -> "TaylorTuple":
        m = self.m
        return TaylorTuple(
            tuple(self.s[(mu + z) % m] for mu in range(m)),
            tuple(tuple(self.g[(mu + z) % m][(nu + z) % m] for nu in range(m)) for mu in range(m)),
            self._report if self._report is not None and self._report.ok else None,
        )

    def shifted(self, dx: Fraction, dc: Fraction) -> "TaylorTuple":
        """Add ``dx*X + dc`` to every action series.

        The relations are invariant under this operation (the substitution
        never touches X or constants), so a cached relation report carries over.
        """
        if not dx and not dc:
            return self
        d = self.degree
        delta = TaylorSeries({(1, 0): dx, (0, 0): dc}, d)
        return TaylorTuple(tuple(x + delta for x in self.s), self.g, self._report)

    def truncate(self, degree: int) -> "TaylorTuple":
        return TaylorTuple(
            tuple(x.truncate(degree) for x in self.s),
            tuple(tuple(x.truncate(degree) for x in row) for row in self.g),
        )

    def generators(self) -> Tuple[TaylorSeries, ...]:
        return tuple(self.g[mu][mu + 1] for mu in range(self.m - 1))

    def sort_key(self) -> tuple:
        m = self.m
        key = [self.s[0].graded_coefficients()]
        key += [self.g[mu][mu + 1].graded_coefficients() for mu in range(m - 1)]
        key += [x.graded_coefficients() for x in self.s[1:]]
        key += [self.g[mu][nu].graded_coefficients() for mu in range(m) for nu in range(m)]
        return tuple(key)


def _first_difference(a: TaylorSeries, b: TaylorSeries) -> Optional[Exponent]:
    d = min(a.degree, b.degree)
    for e in graded_exponents(d):
        if a.coeff(*e) != b.coeff(*e):
            return e
    return None


def check_relations(t: TaylorTuple) -> RelationReport:
    """Check the four compatibility relations of an action/transition tuple.

    (i)   every ``g[mu][nu]`` has positive Y-coefficient (and no constant term);
    (ii)  ``s[mu] = s[nu](X, g[mu][nu])``;
    (iii) ``g[mu][mu] = Y``;
    (iv)  ``g[mu][sigma] = g[nu][sigma](X, g[mu][nu])``, the cocycle rule for
          transition maps from chart mu to chart nu.
    """
    if t._report is not None:
        return t._report
    m, d = t.m, t.degree
    y = TaylorSeries.Y(d)
    found: List[Violation] = []
    for mu in range(m):
        for nu in range(m):
            g = t.g[mu][nu]
            if g.constant_term:
                found.append(Violation("i", (mu, nu), (0, 0), "transition series has a constant term"))
            if g.coeff(0, 1) <= 0:
                found.append(Violation("i", (mu, nu), (0, 1), f"Y-coefficient {format_rational(g.coeff(0, 1))} is not positive"))
    for mu in range(m):
        e = _first_difference(t.g[mu][mu].truncate(d), y)
        if e is not None:
            found.append(Violation("iii", (mu, mu), e, "diagonal transition series is not Y"))
    subs = {}
    for mu in range(m):
        for nu in range(m):
            if t.g[mu][nu].constant_term:
                continue
            subs[(mu, nu)] = _Substitution(t.g[mu][nu].truncate(d))
    for (mu, nu), sub in subs.items():
        lhs, rhs = t.s[mu].truncate(d), sub.apply(t.s[nu].truncate(d))
        e = _first_difference(lhs, rhs)
        if e is not None:
            found.append(Violation(
                "ii", (mu, nu), e,
                f"s[{mu}] has {format_rational(lhs.coeff(*e))}, s[{nu}](X, g[{mu}][{nu}]) has {format_rational(rhs.coeff(*e))}",
            ))
    for (mu, nu), sub in subs.items():
        for sigma in range(m):
            lhs = t.g[mu][sigma].truncate(d)
            rhs = sub.apply(t.g[nu][sigma].truncate(d)).with_flavor(TRANSITION)
            e = _first_difference(lhs, rhs)
            if e is not None:
                found.append(Violation(
                    "iv", (mu, nu, sigma), e,
                    f"g[{mu}][{sigma}] has {format_rational(lhs.coeff(*e))}, composite has {format_rational(rhs.coeff(*e))}",
                ))
    report = RelationReport(d, tuple(found))
    object.__setattr__(t, "_report", report)
    return report


def complete_from_generators(s0: TaylorSeries, gens: Sequence[TaylorSeries]) -> TaylorTuple:
    """Build the unique relation-satisfying tuple from ``s[0]`` and ``g[mu][mu+1]``."""
    m = len(gens) + 1
    d = min([s0.degree] + [x.degree for x in gens])
    s0 = s0.truncate(d).with_flavor(ACTION)
    gens = [x.truncate(d).with_flavor(TRANSITION) for x in gens]
    for i, x in enumerate(gens):
        if x.constant_term or x.coeff(0, 1) <= 0:
            raise InvertibilityError(f"generator g[{i}][{i + 1}] is not an admissible transition series")
    y = TaylorSeries.Y(d)
    from_zero = [y]
    for nu in range(1, m):
        from_zero.append(compose_y(gens[nu - 1], from_zero[-1]))
    to_zero = [y] + [invert_y(x) for x in from_zero[1:]]
    g = []
    for mu in range(m):
        sub = _Substitution(to_zero[mu])
        g.append(tuple(y if mu == nu else sub.apply(from_zero[nu]) for nu in range(m)))
    s = tuple(s0 if nu == 0 else compose_y(s0, to_zero[nu]) for nu in range(m))
    return TaylorTuple(s, tuple(g))


@dataclass(frozen=True)
class TaylorOrbit:
    """Cyclic orbit of a tuple, held by its minimal rotation."""

    canonical: TaylorTuple
    shift: int = 0

    @property
    def m(self) -> int:
        return self.canonical.m


def cyclic_canonical(t: TaylorTuple) -> TaylorOrbit:
    """Pick the rotation with the smallest graded-lex key (smallest shift on ties)."""
    best, best_z, best_key = t, 0, t.sort_key()
    for z in range(1, t.m):
        r = t.rotate(z)
        k = r.sort_key()
        if k < best_key:
            best, best_z, best_key = r, z, k
    return TaylorOrbit(best, best_z)


# semi-local classes and the twisting decomposition

STANDARD = "standard"
ALTERNATE = "alternate"
_WINDOW_START = {STANDARD: Fraction(0), ALTERNATE: Fraction(1, 4)}


def _window(convention: str) -> Fraction:
    try:
        return _WINDOW_START[convention]
    except KeyError:
        raise ValueError(f"unknown convention {convention!r}") from None


@dataclass(frozen=True)
class SemilocalSeries:
    """An action series modulo its constant term and integer multiples of X.

    Stored as the representative with zero constant term and X-coefficient
    in ``[0, 1)``.
    """

    representative: TaylorSeries

    @classmethod
    def of(cls, series: TaylorSeries) -> "SemilocalSeries":
        c10 = series.coeff(1, 0)
        shift = {(0, 0): -series.constant_term, (1, 0): -floor(c10)}
        return cls(series.with_flavor(ACTION) + TaylorSeries(shift, series.degree))

    @property
    def degree(self) -> int:
        return self.representative.degree

    def truncate(self, degree: int) -> "SemilocalSeries":
        return SemilocalSeries(self.representative.truncate(degree))

    def __str__(self):
        return f"[{self.representative}]"


def psi(s: SemilocalSeries, convention: str = STANDARD) -> TaylorSeries:
    """Representative of ``s`` with zero constant and X-coefficient in the window.

    The standard window is ``[0, 1)``; the alternate one is ``[1/4, 5/4)``.
    """
    lo = _window(convention)
    r = s.representative
    k = floor(r.coeff(1, 0) - lo)
    if not k:
        return r
    return r - TaylorSeries({(1, 0): k}, r.degree)


def decompose(series: TaylorSeries, convention: str = STANDARD) -> Tuple[SemilocalSeries, int, Fraction]:
    """Split an action series into (semi-local class, twisting integer, constant)."""
    k = floor(series.coeff(1, 0) - _window(convention))
    return SemilocalSeries.of(series), k, series.constant_term


def reconstruct(s: SemilocalSeries, k: int, c: RationalLike, convention: str = STANDARD) -> TaylorSeries:
    """Inverse of :func:`decompose`: ``psi(s) + k X + c``."""
    r = psi(s, convention)
    return r + TaylorSeries({(1, 0): k, (0, 0): as_fraction(c)}, r.degree)
