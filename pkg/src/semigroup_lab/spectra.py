"""Eigenvalue sequences and mode-wise symbols for diagonal semigroups.

A Spectrum holds λ_1..λ_N with Re λ_n < 0; T(t) acts as multiplication by
e^{λ_n t}. An OperatorSymbol d(λ) = scale·(−λ)^{−a}(1−λ)^{−b} is applied
mode-wise and houses fractional powers (−A)^{±α} and (I−A)^{−δ}.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
import logging
import math
from pathlib import Path
import re
from typing import Any

import numpy as np
import yaml

from .errors import DomainError, SpectrumError
from .validation_utils import validate_spectrum_document

logger = logging.getLogger(__name__)

FAMILIES = ("harmonic", "logdecay", "single", "powerlaw")
FAMILY_ALIASES = {"example33": "harmonic"}
DOCUMENT_SUFFIXES = (".yaml", ".yml", ".json")

__all__ = [
    "FAMILIES",
    "FAMILY_ALIASES",
    "OperatorSymbol",
    "Spectrum",
    "WeightedIndexSpace",
    "builtin_family",
    "dump_spectrum",
    "eval_weight",
    "load_spectrum",
    "read_document",
]


def _frozen(values: Any, dtype: type) -> np.ndarray:
    arr = np.array(values, dtype=dtype).ravel()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Truncated eigenvalue sequence of a diagonal generator."""

    modes: np.ndarray
    family: str | None = None
    params: tuple[float, ...] = ()
    invertible: bool = True

    def __post_init__(self) -> None:
        modes = _frozen(self.modes, complex)
        if modes.size == 0:
            raise SpectrumError("spectrum has no modes")
        bad = np.flatnonzero(~(modes.real < 0))
        if bad.size:
            raise SpectrumError(f"mode {bad[0] + 1} has nonnegative real part")
        if self.invertible and not np.min(np.abs(modes)) > 0:
            raise SpectrumError("spectrum is not bounded away from 0")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))

    @property
    def n_max(self) -> int:
        return int(self.modes.size)

    @property
    def decay_rates(self) -> np.ndarray:
        """|Re λ_n|."""
        return -self.modes.real

    @property
    def frequencies(self) -> np.ndarray:
        return self.modes.imag

    @property
    def tag(self) -> str:
        name = self.family or "custom"
        if self.params:
            name += "[" + ",".join(f"{p:g}" for p in self.params) + "]"
        return f"{name}(n_max={self.n_max})"

    def truncate(self, n: int) -> Spectrum:
        """The first n modes."""
        if n < 1:
            raise DomainError("truncation index must be >= 1")
        return Spectrum(self.modes[:n], self.family, self.params, self.invertible)


@dataclass(frozen=True, eq=False)
class WeightedIndexSpace:
    """Discrete L^q(μ): masses μ_n > 0 and exponent q >= 1."""

    weights: np.ndarray
    q: float = 2.0

    def __post_init__(self) -> None:
        weights = _frozen(self.weights, float)
        if weights.size == 0 or not np.all(weights > 0):
            raise SpectrumError("weights must be positive")
        if not self.q >= 1:
            raise SpectrumError("exponent q must be >= 1")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "q", float(self.q))

    @classmethod
    def counting(cls, n: int, q: float = 2.0) -> WeightedIndexSpace:
        return cls(np.ones(n), q)

    def norm(self, x: np.ndarray) -> float:
        x = np.asarray(x)
        return float(np.sum(self.weights * np.abs(x) ** self.q) ** (1.0 / self.q))


_SYMBOL_TERM = re.compile(r"^\s*(a|b|scale)\s*=\s*([-+0-9.eE]+)\s*$")


@dataclass(frozen=True)
class OperatorSymbol:
    """d(λ) = scale·(−λ)^{−a}(1−λ)^{−b} on the principal branch."""

    a: float = 0.0
    b: float = 0.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not self.scale > 0:
            raise DomainError("symbol scale must be positive")

    def __call__(self, lam: complex | np.ndarray) -> complex | np.ndarray:
        lam = np.asarray(lam, dtype=complex)
        if np.any(~(lam.real < 0)):
            raise DomainError("symbol evaluation requires Re λ < 0")
        value = self.scale * np.exp(-self.a * np.log(-lam) - self.b * np.log(1 - lam))
        return complex(value) if value.ndim == 0 else value

    def moduli(self, spec: Spectrum) -> np.ndarray:
        """|d(λ_n)| for every mode."""
        lam = spec.modes
        log_mod = -self.a * np.log(np.abs(lam)) - self.b * np.log(np.abs(1 - lam))
        return self.scale * np.exp(log_mod)

    def times_power(self, alpha: float) -> OperatorSymbol:
        """Symbol of D(−A)^α."""
        return OperatorSymbol(self.a - alpha, self.b, self.scale)

    def compose(self, other: OperatorSymbol) -> OperatorSymbol:
        return OperatorSymbol(self.a + other.a, self.b + other.b, self.scale * other.scale)

    def scaled(self, s: float) -> OperatorSymbol:
        return OperatorSymbol(self.a, self.b, self.scale * s)

    @property
    def label(self) -> str:
        parts = [f"a={self.a:g}", f"b={self.b:g}"]
        if self.scale != 1.0:
            parts.append(f"scale={self.scale:g}")
        return ",".join(parts)

    @classmethod
    def parse(cls, text: str | None) -> OperatorSymbol:
        """Parse "a=1,b=0.5" style strings; empty means identity."""
        if not text:
            return cls()
        values: dict[str, float] = {}
        for term in text.split(","):
            match = _SYMBOL_TERM.match(term)
            if not match:
                raise DomainError(f"cannot parse symbol term '{term.strip()}'")
            try:
                values[match.group(1)] = float(match.group(2))
            except ValueError as e:
                raise DomainError(f"cannot parse symbol term '{term.strip()}'") from e
        return cls(**values)


def eval_weight(sym: OperatorSymbol, lam: complex) -> complex:
    """Evaluate a symbol at one finite point of the open left half-plane.

    Unlike calling the symbol directly, only a single scalar is accepted and
    the result is always a Python complex.
    """
    if np.ndim(lam) != 0:
        raise DomainError("eval_weight takes a single point")
    z = complex(lam)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"eval_weight needs a finite point (got {z})")
    return complex(sym(z))


def _family_modes(name: str, params: Sequence[float], n_max: int) -> np.ndarray:
    n = np.arange(1, n_max + 1, dtype=float)
    if name == "harmonic":
        return -1.0 / n + 1j * n
    if name == "logdecay":
        return -np.exp(-n) + 1j * n
    if name == "single":
        if len(params) not in (1, 2):
            raise SpectrumError("family 'single' takes params [c] or [c, omega]")
        c = params[0]
        omega = params[1] if len(params) == 2 else 0.0
        if not c > 0:
            raise SpectrumError("family 'single' needs c > 0")
        return np.array([-c + 1j * omega])
    if name == "powerlaw":
        if len(params) not in (1, 2):
            raise SpectrumError("family 'powerlaw' takes params [a] or [a, b]")
        a = params[0]
        b = params[1] if len(params) == 2 else 1.0
        if not a > 0:
            raise SpectrumError("family 'powerlaw' needs a > 0")
        return -(n ** (-a)) + 1j * n**b
    raise SpectrumError(f"unknown family '{name}' (known: {', '.join(FAMILIES)})")


def builtin_family(
    name: str, params: Sequence[float] | None = None, n_max: int = 1
) -> Spectrum:
    """Generate one of the built-in eigenvalue families.

    Args:
        name: harmonic, logdecay, single or powerlaw (or an alias in
            FAMILY_ALIASES)
        params: family parameters (see FAMILIES docs in README)
        n_max: truncation index; ignored by 'single'

    Returns:
        Spectrum tagged with family and params
    """
    name = FAMILY_ALIASES.get(name, name)
    params = [float(p) for p in (params or [])]
    if n_max < 1:
        raise SpectrumError("n_max must be >= 1")
    if name in ("harmonic", "logdecay") and params:
        raise SpectrumError(f"family '{name}' takes no params")
    modes = _family_modes(name, params, int(n_max))
    logger.debug("built family %s with %s modes", name, modes.size)
    return Spectrum(modes, family=name, params=tuple(params))


def read_document(source: Mapping | str | Path, kind: str = "spectrum") -> Any:
    """Mapping, file path, or YAML/JSON text to a parsed document."""
    if isinstance(source, Mapping):
        return dict(source)
    text = None
    if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and Path(source).is_file()
    ):
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise SpectrumError(f"cannot read {kind} document: {e}") from e
    elif isinstance(source, str):
        if "\n" not in source and Path(source).suffix.lower() in DOCUMENT_SUFFIXES:
            raise SpectrumError(f"{kind} document not found: {source}")
        text = source
    else:
        raise SpectrumError(f"unsupported {kind} source {type(source).__name__}")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SpectrumError(f"could not parse {kind} document: {e}") from e
    return doc


def load_spectrum(
    source: Mapping | str | Path,
) -> tuple[Spectrum, WeightedIndexSpace | None]:
    """Load and validate a spectrum document (YAML or JSON).

    Returns the Spectrum and, when weights or q are present, the
    WeightedIndexSpace it lives on.
    """
    doc = read_document(source)
    errors = validate_spectrum_document(doc)
    if errors:
        raise SpectrumError("; ".join(errors))

    modes = []
    for entry in doc["modes"]:
        if isinstance(entry, list | tuple):
            modes.append(complex(entry[0], entry[1]))
        else:
            modes.append(complex(entry, 0.0))
    spec = Spectrum(
        np.array(modes), family=doc.get("family"), params=tuple(doc.get("params") or ())
    )

    space = None
    if doc.get("weights") is not None or doc.get("q") is not None:
        weights = doc.get("weights") or [1.0] * spec.n_max
        space = WeightedIndexSpace(np.array(weights, dtype=float), doc.get("q", 2.0))
    logger.debug("loaded spectrum %s", spec.tag)
    return spec, space


def dump_spectrum(
    spec: Spectrum, space: WeightedIndexSpace | None = None
) -> dict[str, Any]:
    """Spectrum document with modes as [re, im] pairs."""
    doc: dict[str, Any] = {
        "modes": [[float(z.real), float(z.imag)] for z in spec.modes],
    }
    if spec.family:
        doc["family"] = spec.family
        doc["params"] = list(spec.params)
    if space is not None:
        doc["weights"] = [float(w) for w in space.weights]
        doc["q"] = space.q
    return doc

