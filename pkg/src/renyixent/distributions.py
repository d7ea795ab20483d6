"""Exponential-family distributions used by the cross-entropy closed forms.

Every family is written in two equivalent ways:

* the classical density ``log_pdf(x)`` in terms of the usual parameters, and
* the natural form ``f(x) = b(x) exp(<eta, T(x)> + A(eta))`` where
  ``A(eta) = ln c(theta)`` is the *negative* log-partition function.

The classical parameters are authoritative; natural parameters are derived
on demand.  Descriptors are immutable and may hold invalid parameters;
:meth:`Family.validate` reports the problems and every evaluating method
raises :class:`~renyixent.errors.InvalidParameters` for such descriptors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, ClassVar, Optional

import numpy as np

from .errors import InvalidParameters, NaturalParamOutOfDomain, PointOutsideSupport

__all__ = [
    "FamilyTag",
    "Support",
    "Violation",
    "NaturalParameterization",
    "Family",
    "Beta",
    "ChiScaled",
    "Chi",
    "ChiSquared",
    "Exponential",
    "Gamma",
    "Gaussian",
    "MultivariateGaussian",
    "Gumbel",
    "HalfNormal",
    "Laplace",
    "MaxwellBoltzmann",
    "Pareto",
    "Rayleigh",
    "FAMILIES",
    "make_family",
    "log_gamma",
    "log_beta",
    "cholesky_or_none",
]

LOG_2PI = math.log(2.0 * math.pi)


# ---------------------------------------------------------------------------
# special functions


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma requires a positive argument, got {x!r}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b)."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def cholesky_or_none(m: np.ndarray) -> Optional[np.ndarray]:
    """Lower Cholesky factor of a symmetric matrix, or None if not positive definite."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return None
    if not np.allclose(m, m.T, rtol=1e-12, atol=1e-14):
        return None
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return None


# ---------------------------------------------------------------------------
# descriptors


class FamilyTag(str, Enum):
    BETA = "beta"
    CHI_SCALED = "chi_scaled"
    CHI_NON_SCALED = "chi"
    CHI_SQUARED = "chi2"
    EXPONENTIAL = "exponential"
    GAMMA = "gamma"
    GAUSSIAN_UNI = "gaussian"
    GAUSSIAN_MULTI = "mvgaussian"
    GUMBEL = "gumbel"
    HALF_NORMAL = "halfnormal"
    LAPLACE0 = "laplace"
    MAXWELL_BOLTZMANN = "maxwell"
    PARETO = "pareto"
    RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class Support:
    """Open interval ``(lower, upper)``; ``dim > 1`` means all of R^dim."""

    lower: float = -math.inf
    upper: float = math.inf
    dim: int = 1

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if self.dim > 1:
            return x.shape[-1] == self.dim and bool(np.all(np.isfinite(x)))
        return bool(np.all((x > self.lower) & (x < self.upper)))

    def __str__(self) -> str:
        if self.dim > 1:
            return f"R^{self.dim}"
        return f"({self.lower:g}, {self.upper:g})"


@dataclass(frozen=True)
class Violation:
    parameter: str
    constraint: str
    value: object = None

    def __str__(self) -> str:
        return f"{self.parameter}: {self.constraint} (got {self.value!r})"


@dataclass(frozen=True)
class NaturalParameterization:
    eta: np.ndarray
    log_normalizer: float
    carrier_log: Callable = field(repr=False)
    sufficient_stat: Callable = field(repr=False)

    def log_pdf(self, x):
        """ln b(x) + <eta, T(x)> + A(eta)."""
        t = self.sufficient_stat(x)
        return self.carrier_log(x) + np.tensordot(t, self.eta, axes=([-1], [0])) + self.log_normalizer


class Family:
    """Base class for a concrete exponential-family distribution instance."""

    tag: ClassVar[FamilyTag]
    param_names: ClassVar[tuple[str, ...]]
    # True when the carrier b(x) is identically one
    unit_carrier: ClassVar[bool] = False

    # -- parameters ---------------------------------------------------------

    @property
    def params(self) -> dict:
        return {name: getattr(self, name) for name in self.param_names}

    @property
    def shared_constant(self) -> Optional[tuple[str, float]]:
        """Parameter that must agree between the two arguments of a cross-entropy."""
        return None

    @property
    def support(self) -> Support:
        return Support(0.0, math.inf)

    def validate(self) -> list[Violation]:
        raise NotImplementedError

    def check(self) -> None:
        problems = self.validate()
        if problems:
            raise InvalidParameters(
                f"{self.to_text()}: " + "; ".join(str(p) for p in problems)
            )

    def to_text(self) -> str:
        parts = []
        for name, value in self.params.items():
            if isinstance(value, np.ndarray):
                value = value.tolist()
            parts.append(f"{name}={_fmt(value)}")
        return f"{self.tag.value}{{{','.join(parts)}}}"

    def __str__(self) -> str:
        return self.to_text()

    # -- densities ----------------------------------------------------------

    def log_pdf(self, x):
        """Classical log-density at ``x`` (scalar or array)."""
        self.check()
        if not self.support.contains(x):
            raise PointOutsideSupport(f"{x!r} outside support {self.support} of {self.to_text()}")
        out = self.log_pdf_unchecked(np.asarray(x, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def log_pdf_unchecked(self, x: np.ndarray):
        raise NotImplementedError

    # -- natural form -------------------------------------------------------

    def eta(self) -> np.ndarray:
        raise NotImplementedError

    def sufficient_stat(self, x) -> np.ndarray:
        raise NotImplementedError

    def carrier_log(self, x):
        return np.zeros(np.shape(x) if self.support.dim == 1 else np.shape(x)[:-1])

    def natural_violations(self, eta) -> list[Violation]:
        raise NotImplementedError

    def _log_normalizer(self, eta: np.ndarray) -> float:
        raise NotImplementedError

    def log_normalizer(self, eta=None) -> float:
        """A(eta) = ln c(theta); defaults to this instance's own eta."""
        if eta is None:
            self.check()
            eta = self.eta()
        eta = np.asarray(eta, dtype=float)
        bad = self.natural_violations(eta)
        if bad:
            v = bad[0]
            raise NaturalParamOutOfDomain(v.constraint, v.value, f"{self.tag.value} natural parameter")
        return self._log_normalizer(eta)

    def with_natural(self, eta) -> "Family":
        """Member of the same family (same shared constant) with natural parameter ``eta``."""
        raise NotImplementedError

    def to_natural(self) -> NaturalParameterization:
        self.check()
        eta = self.eta()
        return NaturalParameterization(
            eta=eta,
            log_normalizer=self.log_normalizer(eta),
            carrier_log=self.carrier_log,
            sufficient_stat=self.sufficient_stat,
        )


def _fmt(value) -> str:
    if isinstance(value, list):
        return "[" + ",".join(_fmt(v) for v in value) + "]"
    return repr(float(value)).removesuffix(".0") if float(value).is_integer() else repr(float(value))


def _positive(name: str, value) -> list[Violation]:
    ok = isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value) and value > 0
    return [] if ok else [Violation(name, f"{name} > 0", value)]


def _finite(name: str, value) -> list[Violation]:
    ok = isinstance(value, (int, float, np.floating, np.integer)) and math.isfinite(value)
    return [] if ok else [Violation(name, f"{name} finite", value)]


def _natural_positive(label: str, value: float) -> list[Violation]:
    return [] if value > 0 else [Violation("eta", label, float(value))]


def _stack(*cols):
    return np.stack(np.broadcast_arrays(*cols), axis=-1)


# ---------------------------------------------------------------------------
# univariate families


@dataclass(frozen=True)
class Beta(Family):
    a: float
    b: float

    tag = FamilyTag.BETA
    param_names = ("a", "b")
    unit_carrier = True

    @property
    def support(self):
        return Support(0.0, 1.0)

    def validate(self):
        return _positive("a", self.a) + _positive("b", self.b)

    def log_pdf_unchecked(self, x):
        return (self.a - 1) * np.log(x) + (self.b - 1) * np.log1p(-x) - log_beta(self.a, self.b)

    def eta(self):
        return np.array([self.a - 1.0, self.b - 1.0])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return _stack(np.log(x), np.log1p(-x))

    def natural_violations(self, eta):
        return _natural_positive("a > 0", eta[0] + 1) + _natural_positive("b > 0", eta[1] + 1)

    def _log_normalizer(self, eta):
        return -log_beta(eta[0] + 1, eta[1] + 1)

    def with_natural(self, eta):
        return Beta(float(eta[0] + 1), float(eta[1] + 1))


@dataclass(frozen=True)
class ChiScaled(Family):
    k: float
    sigma: float

    tag = FamilyTag.CHI_SCALED
    param_names = ("k", "sigma")
    unit_carrier = True

    def validate(self):
        return _positive("k", self.k) + _positive("sigma", self.sigma)

    def log_pdf_unchecked(self, x):
        k, s2 = self.k, self.sigma**2
        return ((1 - k / 2) * math.log(2) + (k - 1) * np.log(x) - x * x / (2 * s2)
                - k * math.log(self.sigma) - log_gamma(k / 2))

    def eta(self):
        return np.array([self.k - 1.0, -0.5 / self.sigma**2])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return _stack(np.log(x), x * x)

    def natural_violations(self, eta):
        return _natural_positive("k > 0", eta[0] + 1) + _natural_positive("sigma^-2 > 0", -2 * eta[1])

    def _log_normalizer(self, eta):
        k = eta[0] + 1
        var = -0.5 / eta[1]
        return (1 - k / 2) * math.log(2) - (k / 2) * math.log(var) - log_gamma(k / 2)

    def with_natural(self, eta):
        return ChiScaled(float(eta[0] + 1), math.sqrt(-0.5 / eta[1]))


@dataclass(frozen=True)
class Chi(Family):
    """Chi distribution with unit scale; carrier exp(-x^2/2)."""

    k: float

    tag = FamilyTag.CHI_NON_SCALED
    param_names = ("k",)

    def validate(self):
        return _positive("k", self.k)

    def log_pdf_unchecked(self, x):
        k = self.k
        return (1 - k / 2) * math.log(2) + (k - 1) * np.log(x) - x * x / 2 - log_gamma(k / 2)

    def eta(self):
        return np.array([self.k - 1.0])

    def sufficient_stat(self, x):
        return np.log(np.asarray(x, dtype=float))[..., None]

    def carrier_log(self, x):
        x = np.asarray(x, dtype=float)
        return -x * x / 2

    def natural_violations(self, eta):
        return _natural_positive("k > 0", eta[0] + 1)

    def _log_normalizer(self, eta):
        k = eta[0] + 1
        return (1 - k / 2) * math.log(2) - log_gamma(k / 2)

    def with_natural(self, eta):
        return Chi(float(eta[0] + 1))


@dataclass(frozen=True)
class ChiSquared(Family):
    nu: float

    tag = FamilyTag.CHI_SQUARED
    param_names = ("nu",)

    def validate(self):
        return _positive("nu", self.nu)

    def log_pdf_unchecked(self, x):
        h = self.nu / 2
        return (h - 1) * np.log(x) - x / 2 - h * math.log(2) - log_gamma(h)

    def eta(self):
        return np.array([self.nu / 2 - 1.0])

    def sufficient_stat(self, x):
        return np.log(np.asarray(x, dtype=float))[..., None]

    def carrier_log(self, x):
        return -np.asarray(x, dtype=float) / 2

    def natural_violations(self, eta):
        return _natural_positive("nu > 0", 2 * (eta[0] + 1))

    def _log_normalizer(self, eta):
        h = eta[0] + 1
        return -h * math.log(2) - log_gamma(h)

    def with_natural(self, eta):
        return ChiSquared(float(2 * (eta[0] + 1)))


@dataclass(frozen=True)
class Exponential(Family):
    lam: float

    tag = FamilyTag.EXPONENTIAL
    param_names = ("lam",)
    unit_carrier = True

    def validate(self):
        return _positive("lam", self.lam)

    def to_text(self):
        return f"exponential{{lambda={_fmt(self.lam)}}}"

    def log_pdf_unchecked(self, x):
        return math.log(self.lam) - self.lam * x

    def eta(self):
        return np.array([-float(self.lam)])

    def sufficient_stat(self, x):
        return np.asarray(x, dtype=float)[..., None]

    def natural_violations(self, eta):
        return _natural_positive("lambda > 0", -eta[0])

    def _log_normalizer(self, eta):
        return math.log(-eta[0])

    def with_natural(self, eta):
        return Exponential(float(-eta[0]))


@dataclass(frozen=True)
class Gamma(Family):
    """Gamma with shape ``k`` and scale ``theta``."""

    k: float
    theta: float

    tag = FamilyTag.GAMMA
    param_names = ("k", "theta")
    unit_carrier = True

    def validate(self):
        return _positive("k", self.k) + _positive("theta", self.theta)

    def log_pdf_unchecked(self, x):
        return (self.k - 1) * np.log(x) - x / self.theta - self.k * math.log(self.theta) - log_gamma(self.k)

    def eta(self):
        return np.array([self.k - 1.0, -1.0 / self.theta])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return _stack(np.log(x), x)

    def natural_violations(self, eta):
        return _natural_positive("k > 0", eta[0] + 1) + _natural_positive("1/theta > 0", -eta[1])

    def _log_normalizer(self, eta):
        k = eta[0] + 1
        return k * math.log(-eta[1]) - log_gamma(k)

    def with_natural(self, eta):
        return Gamma(float(eta[0] + 1), float(-1.0 / eta[1]))


@dataclass(frozen=True)
class Gaussian(Family):
    mu: float
    var: float

    tag = FamilyTag.GAUSSIAN_UNI
    param_names = ("mu", "var")
    unit_carrier = True

    @property
    def support(self):
        return Support()

    def validate(self):
        return _finite("mu", self.mu) + _positive("var", self.var)

    def log_pdf_unchecked(self, x):
        return -0.5 * (LOG_2PI + math.log(self.var)) - (x - self.mu) ** 2 / (2 * self.var)

    def eta(self):
        return np.array([self.mu / self.var, -0.5 / self.var])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return _stack(x, x * x)

    def natural_violations(self, eta):
        return _natural_positive("1/var > 0", -2 * eta[1])

    def _log_normalizer(self, eta):
        var = -0.5 / eta[1]
        return -0.5 * eta[0] ** 2 * var - 0.5 * (LOG_2PI + math.log(var))

    def with_natural(self, eta):
        var = -0.5 / eta[1]
        return Gaussian(float(eta[0] * var), float(var))


@dataclass(frozen=True)
class Gumbel(Family):
    """Gumbel (maximum) distribution; the scale ``beta`` is held fixed."""

    mu: float
    beta: float

    tag = FamilyTag.GUMBEL
    param_names = ("mu", "beta")

    @property
    def support(self):
        return Support()

    @property
    def shared_constant(self):
        return ("beta", self.beta)

    def validate(self):
        return _finite("mu", self.mu) + _positive("beta", self.beta)

    def log_pdf_unchecked(self, x):
        z = (x - self.mu) / self.beta
        # exp(-z) overflows far in the left tail, where the log density is -inf anyway
        with np.errstate(over="ignore"):
            return -math.log(self.beta) - z - np.exp(-z)

    def eta(self):
        return np.array([-math.exp(self.mu / self.beta)])

    def sufficient_stat(self, x):
        return np.exp(-np.asarray(x, dtype=float) / self.beta)[..., None]

    def carrier_log(self, x):
        return -np.asarray(x, dtype=float) / self.beta - math.log(self.beta)

    def natural_violations(self, eta):
        return _natural_positive("exp(mu/beta) > 0", -eta[0])

    def _log_normalizer(self, eta):
        return math.log(-eta[0])

    def with_natural(self, eta):
        return Gumbel(float(self.beta * math.log(-eta[0])), self.beta)


@dataclass(frozen=True)
class HalfNormal(Family):
    var: float

    tag = FamilyTag.HALF_NORMAL
    param_names = ("var",)
    unit_carrier = True

    def validate(self):
        return _positive("var", self.var)

    def log_pdf_unchecked(self, x):
        return 0.5 * math.log(2 / (math.pi * self.var)) - x * x / (2 * self.var)

    def eta(self):
        return np.array([-0.5 / self.var])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return (x * x)[..., None]

    def natural_violations(self, eta):
        return _natural_positive("1/var > 0", -2 * eta[0])

    def _log_normalizer(self, eta):
        return 0.5 * math.log(2 / math.pi) + 0.5 * math.log(-2 * eta[0])

    def with_natural(self, eta):
        return HalfNormal(float(-0.5 / eta[0]))


@dataclass(frozen=True)
class Laplace(Family):
    """Zero-location Laplace with scale ``b``."""

    b: float

    tag = FamilyTag.LAPLACE0
    param_names = ("b",)
    unit_carrier = True

    @property
    def support(self):
        return Support()

    def validate(self):
        return _positive("b", self.b)

    def log_pdf_unchecked(self, x):
        return -math.log(2 * self.b) - np.abs(x) / self.b

    def eta(self):
        return np.array([-1.0 / self.b])

    def sufficient_stat(self, x):
        return np.abs(np.asarray(x, dtype=float))[..., None]

    def natural_violations(self, eta):
        return _natural_positive("1/b > 0", -eta[0])

    def _log_normalizer(self, eta):
        return math.log(-eta[0] / 2)

    def with_natural(self, eta):
        return Laplace(float(-1.0 / eta[0]))


@dataclass(frozen=True)
class MaxwellBoltzmann(Family):
    """Maxwell-Boltzmann with scale ``sigma``; carrier x^2."""

    sigma: float

    tag = FamilyTag.MAXWELL_BOLTZMANN
    param_names = ("sigma",)

    def validate(self):
        return _positive("sigma", self.sigma)

    def log_pdf_unchecked(self, x):
        return (0.5 * math.log(2 / math.pi) + 2 * np.log(x) - x * x / (2 * self.sigma**2)
                - 3 * math.log(self.sigma))

    def eta(self):
        return np.array([-0.5 / self.sigma**2])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return (x * x)[..., None]

    def carrier_log(self, x):
        return 2 * np.log(np.asarray(x, dtype=float))

    def natural_violations(self, eta):
        return _natural_positive("sigma^-2 > 0", -2 * eta[0])

    def _log_normalizer(self, eta):
        return 0.5 * math.log(2 / math.pi) + 1.5 * math.log(-2 * eta[0])

    def with_natural(self, eta):
        return MaxwellBoltzmann(math.sqrt(-0.5 / eta[0]))


@dataclass(frozen=True)
class Pareto(Family):
    """Pareto with scale (minimum) ``m`` held fixed and shape ``a``."""

    m: float
    a: float

    tag = FamilyTag.PARETO
    param_names = ("m", "a")
    unit_carrier = True

    @property
    def support(self):
        return Support(float(self.m), math.inf)

    @property
    def shared_constant(self):
        return ("m", self.m)

    def validate(self):
        return _positive("m", self.m) + _positive("a", self.a)

    def log_pdf_unchecked(self, x):
        return math.log(self.a) + self.a * math.log(self.m) - (self.a + 1) * np.log(x)

    def eta(self):
        return np.array([-(self.a + 1.0)])

    def sufficient_stat(self, x):
        return np.log(np.asarray(x, dtype=float))[..., None]

    def natural_violations(self, eta):
        return _natural_positive("a > 0", -eta[0] - 1)

    def _log_normalizer(self, eta):
        a = -eta[0] - 1
        return math.log(a) + a * math.log(self.m)

    def with_natural(self, eta):
        return Pareto(self.m, float(-eta[0] - 1))


@dataclass(frozen=True)
class Rayleigh(Family):
    """Rayleigh with ``var`` = sigma^2; carrier x."""

    var: float

    tag = FamilyTag.RAYLEIGH
    param_names = ("var",)

    def validate(self):
        return _positive("var", self.var)

    def log_pdf_unchecked(self, x):
        return np.log(x) - math.log(self.var) - x * x / (2 * self.var)

    def eta(self):
        return np.array([-0.5 / self.var])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        return (x * x)[..., None]

    def carrier_log(self, x):
        return np.log(np.asarray(x, dtype=float))

    def natural_violations(self, eta):
        return _natural_positive("sigma^-2 > 0", -2 * eta[0])

    def _log_normalizer(self, eta):
        return math.log(-2 * eta[0])

    def with_natural(self, eta):
        return Rayleigh(float(-0.5 / eta[0]))


# ---------------------------------------------------------------------------
# multivariate Gaussian


@dataclass(frozen=True, eq=False)
class MultivariateGaussian(Family):
    mu: np.ndarray
    cov: np.ndarray

    tag = FamilyTag.GAUSSIAN_MULTI
    param_names = ("mu", "cov")
    unit_carrier = True

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float)
        cov = np.array(self.cov, dtype=float)
        mu.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "cov", cov)

    def __eq__(self, other):
        return (isinstance(other, MultivariateGaussian) and self.mu.shape == other.mu.shape
                and np.array_equal(self.mu, other.mu) and np.array_equal(self.cov, other.cov))

    def __hash__(self):
        return hash((self.mu.tobytes(), self.cov.tobytes()))

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    @property
    def support(self):
        return Support(dim=self.dim)

    def validate(self):
        out = []
        if self.mu.ndim != 1 or self.mu.size == 0:
            out.append(Violation("mu", "mu is a non-empty vector", self.mu.tolist()))
        elif not np.all(np.isfinite(self.mu)):
            out.append(Violation("mu", "mu finite", self.mu.tolist()))
        if self.cov.shape != (self.mu.size, self.mu.size):
            out.append(Violation("cov", "cov is n x n", self.cov.shape))
        elif cholesky_or_none(self.cov) is None:
            out.append(Violation("cov", "Sigma ≻ 0", self.cov.tolist()))
        return out

    def _chol(self):
        return np.linalg.cholesky(self.cov)

    def log_pdf_unchecked(self, x):
        x = np.asarray(x, dtype=float)
        L = self._chol()
        dev = (x - self.mu).reshape(-1, self.dim).T
        z = np.linalg.solve(L, dev)
        quad = np.sum(z * z, axis=0)
        logdet = 2 * np.sum(np.log(np.diag(L)))
        out = -0.5 * (self.dim * LOG_2PI + logdet + quad)
        return out.reshape(x.shape[:-1])

    def eta(self):
        prec = np.linalg.inv(self.cov)
        prec = 0.5 * (prec + prec.T)
        return np.concatenate([prec @ self.mu, (-0.5 * prec).ravel()])

    def sufficient_stat(self, x):
        x = np.asarray(x, dtype=float)
        outer = x[..., :, None] * x[..., None, :]
        return np.concatenate([x, outer.reshape(x.shape[:-1] + (self.dim**2,))], axis=-1)

    def carrier_log(self, x):
        return np.zeros(np.shape(x)[:-1])

    def _split(self, eta):
        n = self.dim
        lin = eta[:n]
        prec = -2.0 * eta[n:].reshape(n, n)
        return lin, 0.5 * (prec + prec.T)

    def natural_violations(self, eta):
        _, prec = self._split(eta)
        if cholesky_or_none(prec) is None:
            return [Violation("eta", "A ≻ 0", float(np.min(np.linalg.eigvalsh(prec))))]
        return []

    def _log_normalizer(self, eta):
        lin, prec = self._split(eta)
        L = np.linalg.cholesky(prec)
        w = np.linalg.solve(L, lin)
        logdet_prec = 2 * np.sum(np.log(np.diag(L)))
        return float(-0.5 * w @ w - 0.5 * self.dim * LOG_2PI + 0.5 * logdet_prec)

    def with_natural(self, eta):
        lin, prec = self._split(np.asarray(eta, dtype=float))
        cov = np.linalg.inv(prec)
        cov = 0.5 * (cov + cov.T)
        return MultivariateGaussian(cov @ lin, cov)


FAMILIES: dict[str, type[Family]] = {
    cls.tag.value: cls
    for cls in (Beta, ChiScaled, Chi, ChiSquared, Exponential, Gamma, Gaussian,
                MultivariateGaussian, Gumbel, HalfNormal, Laplace, MaxwellBoltzmann,
                Pareto, Rayleigh)
}

_ALIASES = {"lambda": "lam", "mean": "mu", "sigma2": "var", "s2": "var", "k_dof": "k"}


def make_family(name: str, **params) -> Family:
    """Build a descriptor from its family name and named parameters."""
    try:
        cls = FAMILIES[name.lower()]
    except KeyError:
        raise InvalidParameters(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None
    kwargs = {_ALIASES.get(k, k): v for k, v in params.items()}
    expected = set(cls.param_names)
    if set(kwargs) != expected:
        raise InvalidParameters(
            f"{name} expects parameters {sorted(expected)}, got {sorted(kwargs)}"
        )
    if cls is not MultivariateGaussian:
        for key, value in kwargs.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidParameters(f"{name}: parameter {key} must be a number, got {value!r}")
            kwargs[key] = float(value)
    return cls(**kwargs)
