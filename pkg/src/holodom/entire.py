"""Closed expression trees for entire functions of one variable.

Nodes: Const, Var, PolyNode, Sum, Prod, Neg, Exp, RemovableQuotient.
Every tree evaluates, differentiates symbolically, and produces truncated
Taylor jets at arbitrary centers.  RemovableQuotient(numer, den) asserts at
construction that numer vanishes at every root of den to the root's order,
so the quotient extends to an entire function; evaluation switches to a
cached local series near denominator roots.

ExpPoly is the separate quadrature-friendly class sum_j p_j(tau) e^(mu_j tau)
with exact antiderivatives.
"""

from __future__ import annotations

import cmath

from .errors import DomainError
from .poly import (Poly, poly_roots, series_add, series_div, series_exp,
                   series_mul)

EPS_JET = 1e-8        # removability residual, relative to the magnitude jet
SERIES_FACTOR = 1e-2  # series-fallback threshold factor for |den(z)|
JET_EXTRA = 8         # jet order beyond the root multiplicity


class EntireExpr:
    """Base class; subclasses implement _eval, derive, jet, to_json."""

    def __call__(self, z):
        return self._eval(complex(z))

    def derive(self):
        raise NotImplementedError

    def jet(self, z0, order):
        """Taylor coefficients at z0 through the given order."""
        raise NotImplementedError

    def magnitude_jet(self, z0, order):
        """Coefficientwise majorant of the jet with no interior cancellation.

        Sums and products combine the majorants of their operands, so an
        identically-zero combination like q - e^(g1) still reports the size
        of its pieces; that is the yardstick for removability residuals.
        """
        return [abs(c) for c in self.jet(z0, order)]

    def to_json(self):
        raise NotImplementedError

    def __repr__(self):
        return "%s(...)" % type(self).__name__


class Const(EntireExpr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = complex(value)

    def _eval(self, z):
        return self.value

    def derive(self):
        return Const(0)

    def jet(self, z0, order):
        return [self.value] + [0j] * order

    def to_json(self):
        return {"op": "const", "value": [self.value.real, self.value.imag]}

    def __repr__(self):
        return "Const(%r)" % (self.value,)


class Var(EntireExpr):
    def _eval(self, z):
        return z

    def derive(self):
        return Const(1)

    def jet(self, z0, order):
        out = [0j] * (order + 1)
        out[0] = complex(z0)
        if order >= 1:
            out[1] = 1.0 + 0j
        return out

    def to_json(self):
        return {"op": "var"}


class PolyNode(EntireExpr):
    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = poly if isinstance(poly, Poly) else Poly(poly)

    def _eval(self, z):
        return self.poly(z)

    def derive(self):
        return PolyNode(self.poly.deriv())

    def jet(self, z0, order):
        return self.poly.jet(z0, order)

    def to_json(self):
        return {"op": "poly", "coeffs": self.poly.to_json()}

    def __repr__(self):
        return "PolyNode(%r)" % (self.poly,)


class Sum(EntireExpr):
    __slots__ = ("args",)

    def __init__(self, args):
        self.args = tuple(args)
        if not self.args:
            raise DomainError("empty Sum")

    def _eval(self, z):
        return sum(a._eval(z) for a in self.args)

    def derive(self):
        return Sum([a.derive() for a in self.args])

    def jet(self, z0, order):
        out = [0j] * (order + 1)
        for a in self.args:
            out = series_add(out, a.jet(z0, order))
        return out[: order + 1]

    def magnitude_jet(self, z0, order):
        out = [0.0] * (order + 1)
        for a in self.args:
            out = [x + y for x, y in zip(out, a.magnitude_jet(z0, order))]
        return out

    def to_json(self):
        return {"op": "sum", "args": [a.to_json() for a in self.args]}


class Prod(EntireExpr):
    __slots__ = ("args",)

    def __init__(self, args):
        self.args = tuple(args)
        if not self.args:
            raise DomainError("empty Prod")

    def _eval(self, z):
        acc = 1.0 + 0j
        for a in self.args:
            acc *= a._eval(z)
        return acc

    def derive(self):
        terms = []
        for k in range(len(self.args)):
            factors = list(self.args)
            factors[k] = factors[k].derive()
            terms.append(Prod(factors))
        return Sum(terms)

    def jet(self, z0, order):
        out = self.args[0].jet(z0, order)
        for a in self.args[1:]:
            out = series_mul(out, a.jet(z0, order), order)
        return out

    def magnitude_jet(self, z0, order):
        out = self.args[0].magnitude_jet(z0, order)
        for a in self.args[1:]:
            out = series_mul(out, a.magnitude_jet(z0, order), order)
        return [abs(c) for c in out]

    def to_json(self):
        return {"op": "prod", "args": [a.to_json() for a in self.args]}


class Neg(EntireExpr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        self.arg = arg

    def _eval(self, z):
        return -self.arg._eval(z)

    def derive(self):
        return Neg(self.arg.derive())

    def jet(self, z0, order):
        return [-c for c in self.arg.jet(z0, order)]

    def magnitude_jet(self, z0, order):
        return self.arg.magnitude_jet(z0, order)

    def to_json(self):
        return {"op": "neg", "arg": self.arg.to_json()}


class Exp(EntireExpr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        self.arg = arg

    def _eval(self, z):
        return cmath.exp(self.arg._eval(z))

    def derive(self):
        return Prod([self.arg.derive(), Exp(self.arg)])

    def jet(self, z0, order):
        return series_exp(self.arg.jet(z0, order), order)

    def magnitude_jet(self, z0, order):
        # exp has nonnegative Taylor coefficients, so it maps majorants
        # to majorants
        out = series_exp(self.arg.magnitude_jet(z0, order), order)
        return [abs(c) for c in out]

    def to_json(self):
        return {"op": "exp", "arg": self.arg.to_json()}


class RemovableQuotient(EntireExpr):
    """numer/den where den's roots are all removable singularities of the quotient.

    Construction fails unless the jet of numer at every root of den vanishes
    through (multiplicity - 1), relative tolerance EPS_JET.  A local quotient
    series of order multiplicity + JET_EXTRA is cached per root and used for
    evaluation within r_series of that root, where r_series is 1e-2 times the
    minimal pairwise root distance of den (capped at 1); the truncated series
    is only accurate well inside the root separation, so the switch is on
    distance, not on |den(z)|, which a multiple root keeps small far out.
    """

    __slots__ = ("numer", "den", "_roots", "_series", "_radius")

    def __init__(self, numer: EntireExpr, den: Poly):
        if den.degree < 1:
            raise DomainError("RemovableQuotient denominator must be nonconstant")
        self.numer = numer
        self.den = den
        self._roots = poly_roots(den)
        centers = [r for r, _ in self._roots]
        dists = [abs(centers[i] - centers[j])
                 for i in range(len(centers)) for j in range(i)]
        self._radius = SERIES_FACTOR * min(dists + [1.0])
        self._series = {}
        for root, mult in self._roots:
            order = mult + JET_EXTRA
            njet = self.numer.jet(root, order)
            djet = den.jet(root, order)
            scale = max(self.numer.magnitude_jet(root, order)) or 1.0
            for k in range(mult):
                if abs(njet[k]) > EPS_JET * scale:
                    raise DomainError(
                        "quotient not removable at root %r: jet coefficient "
                        "%d has relative size %.3e" % (root, k, abs(njet[k]) / scale))
            quot = series_div(njet[mult:], djet[mult:], order - mult)
            self._series[root] = quot

    def _eval(self, z):
        root = min(self._roots, key=lambda rm: abs(z - rm[0]))[0]
        if abs(z - root) < self._radius:
            return self._eval_series(z, root)
        return self._eval_direct(z)

    def _eval_direct(self, z):
        return self.numer._eval(z) / self.den(z)

    def _eval_series(self, z, root=None):
        if root is None:
            root = min(self._roots, key=lambda rm: abs(z - rm[0]))[0]
        acc = 0j
        for c in reversed(self._series[root]):
            acc = acc * (z - root) + c
        return acc

    def derive(self):
        dnum = Sum([Prod([self.numer.derive(), PolyNode(self.den)]),
                    Neg(Prod([self.numer, PolyNode(self.den.deriv())]))])
        return RemovableQuotient(dnum, self.den * self.den)

    def jet(self, z0, order):
        # multiplicity read off the denominator jet itself, so centers that
        # are (numerically) roots work without root matching
        mult = 0
        for root, m in self._roots:
            if abs(z0 - root) <= 1e-9 * (1.0 + abs(root)):
                mult = m
                break
        work = order + mult
        njet = self.numer.jet(z0, work)
        djet = self.den.jet(z0, work)
        if mult:
            scale = max(self.numer.magnitude_jet(z0, work)) or 1.0
            for k in range(mult):
                if abs(njet[k]) > 1e-6 * scale:
                    raise DomainError("jet center is a non-removable root")
        return series_div(njet[mult:], djet[mult:], order)

    def to_json(self):
        return {"op": "rq", "num": self.numer.to_json(), "den": self.den.to_json()}


def expr_from_json(data) -> EntireExpr:
    op = data["op"]
    if op == "const":
        re, im = data["value"]
        return Const(complex(re, im))
    if op == "var":
        return Var()
    if op == "poly":
        return PolyNode(Poly.from_json(data["coeffs"]))
    if op == "sum":
        return Sum([expr_from_json(a) for a in data["args"]])
    if op == "prod":
        return Prod([expr_from_json(a) for a in data["args"]])
    if op == "neg":
        return Neg(expr_from_json(data["arg"]))
    if op == "exp":
        return Exp(expr_from_json(data["arg"]))
    if op == "rq":
        return RemovableQuotient(expr_from_json(data["num"]),
                                 Poly.from_json(data["den"]))
    raise DomainError("unknown expression op %r" % (op,))


ZERO = Const(0)
ONE = Const(1)


# ---------------------------------------------------------------------------
# exponential polynomials sum_j p_j(tau) exp(mu_j tau)

_MU_TOL = 1e-9


class ExpPoly:
    """Finite sum of polynomial-times-exponential terms in one variable."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged = []
        for poly, mu in terms:
            poly = poly if isinstance(poly, Poly) else Poly(poly)
            mu = complex(mu)
            if poly.is_zero:
                continue
            for k, (p0, m0) in enumerate(merged):
                if abs(mu - m0) <= _MU_TOL * (1.0 + abs(m0)):
                    merged[k] = (p0 + poly, m0)
                    break
            else:
                merged.append((poly, mu))
        self.terms = tuple((p, m) for p, m in merged if not p.is_zero)

    @classmethod
    def constant(cls, c):
        return cls([(Poly([c]), 0.0)])

    def __call__(self, tau):
        return sum(p(tau) * cmath.exp(m * tau) for p, m in self.terms)

    def __add__(self, other):
        return ExpPoly(self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ExpPoly([(p * other, m) for p, m in self.terms])
        out = []
        for p1, m1 in self.terms:
            for p2, m2 in other.terms:
                out.append((p1 * p2, m1 + m2))
        return ExpPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return self * (-1.0)

    def __sub__(self, other):
        return self + (-other)

    def deriv(self):
        return ExpPoly([(p.deriv() + p * m, m) for p, m in self.terms])

    def antideriv(self):
        """An exact antiderivative (integration constant not normalized)."""
        out = []
        for p, m in self.terms:
            if m == 0:
                cs = [0j] + [c / (k + 1) for k, c in enumerate(p.coeffs)]
                out.append((Poly(cs), 0.0))
            else:
                # repeated integration by parts: sum_j (-1)^j p^(j) / m^(j+1)
                q = Poly()
                d = p
                sign = 1.0
                power = m
                while not d.is_zero:
                    q = q + d * (sign / power)
                    d = d.deriv()
                    sign = -sign
                    power *= m
                out.append((q, m))
        return ExpPoly(out)

    def definite(self, tau):
        """Integral from 0 to tau."""
        af = self.antideriv()
        return af(tau) - af(0.0)

    def __repr__(self):
        return "ExpPoly(%r)" % (list(self.terms),)


def exppoly_antideriv(f: ExpPoly) -> ExpPoly:
    return f.antideriv()


def compose_poly_with_exps(coeffs, base_const, base_coef, mu):
    """ExpPoly for P(base_const + base_coef * e^(mu tau)), P given ascending."""
    base = ExpPoly([(Poly([base_const]), 0.0), (Poly([base_coef]), mu)])
    acc = ExpPoly()
    for c in reversed(list(coeffs)):
        acc = acc * base + ExpPoly.constant(c)
    return acc


def phi1(x) -> complex:
    """(e^x - 1)/x, extended by 1 at 0; series path for small |x|."""
    x = complex(x)
    if abs(x) < 1e-4:
        return 1.0 + x / 2.0 + x * x / 6.0 + x ** 3 / 24.0 + x ** 4 / 120.0
    return (cmath.exp(x) - 1.0) / x
