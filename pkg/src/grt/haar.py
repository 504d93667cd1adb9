"""Haar-random unitaries."""
import numpy as np

__all__ = ["haar_unitary", "make_rng"]


def make_rng(seed, *stream):
    """PCG64 generator for ``seed``; ``stream`` selects an independent substream."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=stream)))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample from the Haar measure on U(n).

    QR of a complex Ginibre matrix, with the phases of R's diagonal moved
    into Q so the distribution is exactly invariant.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
