"""
Constellations and the mapping of information bits onto (antenna, symbol).

Each channel use carries ``log2(n_R)`` antenna bits, mapped with natural
binary mapping to the 1-based receive-antenna index, followed by
``log2(M)`` symbol bits (none for RIS-SSK) selecting a Gray-labelled
constellation point. Constellations store their points indexed by label
value, so ``points[k]`` is the point labelled with the binary form of ``k``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from .channel import is_power_of_two
from .exceptions import AntennaIndexError, DemapError, FramingError, ParameterError

# Tolerance, relative to sqrt(Es), for recognising a constellation point
POINT_ATOL = 1e-9
ENERGY_RTOL = 1e-9


class Kind(enum.StrEnum):
    PSK = "PSK"
    QAM = "QAM"


def gray(k: int) -> int:
    """Binary-reflected Gray code of ``k``."""
    return k ^ (k >> 1)


def hamming_distance(a: int, b: int) -> int:
    return (a ^ b).bit_count()


def log2_int(n: int) -> int:
    return int(n).bit_length() - 1


@dataclass(frozen=True, eq=False)
class Constellation:
    """M complex points with Gray bit labels and average energy Es."""

    kind: Kind
    M: int
    points: np.ndarray
    Es: float = 1.0  # noqa: N815

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=np.complex128)
        if points.shape != (self.M,):
            msg = f"Expected {self.M} points, got shape {points.shape}"
            raise ParameterError(msg)
        if not (self.Es > 0 and math.isfinite(self.Es)):
            msg = f"Es must be positive and finite, got {self.Es}"
            raise ParameterError(msg)
        energy = float(np.mean(np.abs(points) ** 2))
        if not math.isclose(energy, self.Es, rel_tol=ENERGY_RTOL):
            msg = f"Average point energy {energy:.6g} does not match Es={self.Es:g}"
            raise ParameterError(msg)
        gaps = np.abs(points[:, None] - points[None, :]) + np.eye(self.M) * np.inf
        if gaps.min() <= POINT_ATOL * math.sqrt(self.Es):
            msg = "Constellation points must be distinct"
            raise ParameterError(msg)
        points.flags.writeable = False
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def bits_per_symbol(self) -> int:
        return log2_int(self.M)

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Bit label of every point, in point order."""
        width = self.bits_per_symbol
        return tuple(format(k, f"0{width}b") for k in range(self.M))

    @property
    def constant_envelope(self) -> bool:
        return self.kind is Kind.PSK

    @property
    def is_bpsk(self) -> bool:
        return self.M == 2 and self.kind is Kind.PSK

    def label_of(self, x: complex) -> int:
        """Label value of point ``x``.

        Raises:
            DemapError: If ``x`` is not a point of the constellation
        """
        distances = np.abs(self.points - x)
        k = int(np.argmin(distances))
        if distances[k] > POINT_ATOL * math.sqrt(self.Es):
            msg = f"{x!r} is not a point of the {self.M}-{self.kind} constellation"
            raise DemapError(msg)
        return k

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable label table (points with their labels)."""
        return {
            "kind": str(self.kind),
            "M": self.M,
            "Es": self.Es,
            "points": [
                {"label": label, "re": float(x.real), "im": float(x.imag)}
                for label, x in zip(self.labels, self.points, strict=True)
            ],
        }

    def to_json(self, *, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def build_constellation(kind: Kind | str, M: int, Es: float = 1.0) -> Constellation:
    """Build a Gray-labelled M-PSK or square M-QAM constellation.

    PSK points are ``sqrt(Es) exp(j 2 pi k / M)`` with Gray labels along the
    circle. QAM points form the ``{+-1, +-3, ...}^2`` grid scaled to average
    energy Es; the upper half of the label holds the Gray code of the
    in-phase level and the lower half that of the quadrature level.

    Raises:
        ParameterError: If M is not a power of two, or not a square for QAM
    """
    try:
        kind = Kind(kind)
    except ValueError as e:
        msg = f"Unknown constellation kind '{kind}'. Must be 'PSK' or 'QAM'."
        raise ParameterError(msg) from e
    if not is_power_of_two(M) or M < 2:
        msg = f"Constellation order must be a power of two >= 2, got {M}"
        raise ParameterError(msg)
    if not (Es > 0 and math.isfinite(Es)):
        msg = f"Es must be positive and finite, got {Es}"
        raise ParameterError(msg)

    points = np.empty(M, dtype=np.complex128)
    if kind is Kind.PSK:
        for k in range(M):
            points[gray(k)] = math.sqrt(Es) * np.exp(2j * np.pi * k / M)
        # exp() leaves ~1e-16 residues where the exact value is 0 or 1
        points = np.round(points, 15)
    else:
        side = math.isqrt(M)
        if side * side != M:
            msg = f"QAM order must be a perfect square (square QAM only), got {M}"
            raise ParameterError(msg)
        half = log2_int(side)
        levels = 2 * np.arange(side) - (side - 1)
        scale = math.sqrt(3 * Es / (2 * (M - 1)))
        for i in range(side):
            for q in range(side):
                label = (gray(i) << half) | gray(q)
                points[label] = scale * complex(levels[i], levels[q])
    return Constellation(kind=kind, M=M, points=points, Es=Es)


@dataclass(frozen=True)
class BitFrame:
    """Information bits of one channel use, as '0'/'1' strings."""

    antenna_bits: str
    symbol_bits: str = ""

    def __post_init__(self) -> None:
        for name in ("antenna_bits", "symbol_bits"):
            value = getattr(self, name)
            if set(value) - {"0", "1"}:
                msg = f"{name} must contain only '0' and '1', got {value!r}"
                raise FramingError(msg)

    @property
    def bits(self) -> str:
        return self.antenna_bits + self.symbol_bits

    @classmethod
    def split(cls, bits: str, n_R: int, c: Constellation | None = None) -> BitFrame:
        """Split a concatenated frame into antenna and symbol bits."""
        k = _antenna_bit_count(n_R)
        expected = k + (c.bits_per_symbol if c is not None else 0)
        if len(bits) != expected:
            msg = f"Frame needs {expected} bits, got {len(bits)}"
            raise FramingError(msg)
        return cls(bits[:k], bits[k:])


def _antenna_bit_count(n_R: int) -> int:
    if not is_power_of_two(n_R) or n_R < 2:
        msg = f"n_R must be a power of two >= 2, got {n_R}"
        raise FramingError(msg)
    return log2_int(n_R)


def bits_per_use(n_R: int, c: Constellation | None = None) -> int:
    """Bits per channel use: log2(n_R) [+ log2(M)]."""
    return _antenna_bit_count(n_R) + (c.bits_per_symbol if c is not None else 0)


def map_bits(
    frame: BitFrame, n_R: int, c: Constellation | None = None
) -> tuple[int, complex | None]:
    """Map a frame to ``(m, x)``; ``x`` is None for RIS-SSK (``c`` is None).

    Raises:
        FramingError: If the frame lengths do not match n_R and M
    """
    k = _antenna_bit_count(n_R)
    if len(frame.antenna_bits) != k:
        msg = f"Expected {k} antenna bits for n_R={n_R}, got {len(frame.antenna_bits)}"
        raise FramingError(msg)
    expected_symbol_bits = c.bits_per_symbol if c is not None else 0
    if len(frame.symbol_bits) != expected_symbol_bits:
        msg = f"Expected {expected_symbol_bits} symbol bits, got {len(frame.symbol_bits)}"
        raise FramingError(msg)

    m = 1 + int(frame.antenna_bits, 2)
    if c is None:
        return m, None
    return m, complex(c.points[int(frame.symbol_bits, 2)])


def demap_decision(
    m_hat: int, x_hat: complex | None, n_R: int, c: Constellation | None = None
) -> BitFrame:
    """Inverse of :func:`map_bits`.

    Raises:
        AntennaIndexError: If m_hat is outside [1, n_R]
        DemapError: If x_hat is missing or not a constellation point
    """
    k = _antenna_bit_count(n_R)
    if not 1 <= m_hat <= n_R:
        msg = f"Antenna index {m_hat} out of range [1, {n_R}]"
        raise AntennaIndexError(msg)
    antenna_bits = format(m_hat - 1, f"0{k}b")
    if c is None:
        return BitFrame(antenna_bits)
    if x_hat is None:
        msg = "A symbol decision is required to demap RIS-SM frames"
        raise DemapError(msg)
    return BitFrame(antenna_bits, c.labels[c.label_of(x_hat)])


# Batch helpers (MSB first)


def _bit_weights(width: int) -> np.ndarray:
    return 1 << np.arange(width - 1, -1, -1)


def bits_to_indices(
    bits: np.ndarray, n_R: int, M: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Split bit rows ``(T, b)`` into 0-based antennas and symbol labels."""
    k = _antenna_bit_count(n_R)
    antennas = bits[:, :k] @ _bit_weights(k)
    if M is None:
        return antennas, np.zeros(len(bits), dtype=np.int64)
    return antennas, bits[:, k:] @ _bit_weights(log2_int(M))


def indices_to_bits(
    antennas: np.ndarray, labels: np.ndarray, n_R: int, M: int | None = None
) -> np.ndarray:
    """Inverse of :func:`bits_to_indices`."""
    k = _antenna_bit_count(n_R)
    columns = [(antennas[:, None] & _bit_weights(k)) > 0]
    if M is not None:
        columns.append((labels[:, None] & _bit_weights(log2_int(M))) > 0)
    return np.concatenate(columns, axis=1).astype(np.int8)
