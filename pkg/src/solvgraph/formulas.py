"""Closed-form degree sequences for the 2x2 matrix families over F_q.

For the traceless family, the degree of a vertex is decided by how many
eigenvalues its matrix has over F_q, i.e. by the number of roots of
lambda^2 - (a^2 + bc) for the matrix [[a, b], [c, -a]]: none, one, or two.
The full matrix family reduces to the traceless one by splitting off the
scalar part, which is only possible for odd q.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .ffalg import _is_prime
from .graph import build, degree_sequence
from .liealg import LieAlgebra, make_gl, make_sl


class SpectralClass(enum.Enum):
    NO_EIGENVALUE = "none"
    ONE_EIGENVALUE = "one"
    TWO_EIGENVALUES = "two"


def _require_odd_prime(q: int):
    if not _is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q == 2:
        raise ValueError("q must be an odd prime")


def sl2_expected(q: int) -> dict[int, int]:
    """Predicted degree multiset for the traceless 2x2 family over F_q, q odd.

    {2q^2-q-2: q(q^2-1)/2,  q^2-2: q^2-1,  q-2: q(q-1)^2/2}
    """
    _require_odd_prime(q)
    return {
        2 * q * q - q - 2: q * (q * q - 1) // 2,
        q * q - 2: q * q - 1,
        q - 2: q * (q - 1) ** 2 // 2,
    }


def gl2_expected(q: int) -> dict[int, int]:
    """Predicted degree multiset for the full 2x2 matrix family over F_q, q odd.

    {2q^3-q^2-q-1: q^2(q^2-1)/2,  q^3-q-1: q^3-q,  q^2-q-1: q^2(q-1)^2/2}
    """
    _require_odd_prime(q)
    return {
        2 * q**3 - q * q - q - 1: q * q * (q * q - 1) // 2,
        q**3 - q - 1: q**3 - q,
        q * q - q - 1: q * q * (q - 1) ** 2 // 2,
    }


def is_quadratic_residue(t: int, q: int) -> bool:
    """Euler's criterion: nonzero t is a square mod q iff t^((q-1)/2) = 1."""
    t %= q
    if t == 0:
        raise ValueError("quadratic-residue test needs a nonzero argument")
    return pow(t, (q - 1) // 2, q) == 1


def _discriminant_class(a: int, b: int, c: int, q: int) -> SpectralClass:
    disc = (a * a + b * c) % q
    if disc == 0:
        return SpectralClass.ONE_EIGENVALUE
    if is_quadratic_residue(disc, q):
        return SpectralClass.TWO_EIGENVALUES
    return SpectralClass.NO_EIGENVALUE


def spectral_class_sl2(L: LieAlgebra, x) -> SpectralClass:
    """Eigenvalue count of the traceless 2x2 matrix with coordinates x.

    Coordinates follow the constructor basis (e, f, h), so the matrix is
    [[a, b], [c, -a]] with b = x[0], c = x[1], a = x[2].
    """
    q = L.field.p
    _require_odd_prime(q)
    if L.dim != 3:
        raise ValueError("expected a 3-dimensional traceless 2x2 algebra")
    x = tuple(v % q for v in x)
    if not any(x):
        raise ValueError("the zero element has no spectral class")
    return _discriminant_class(x[2], x[0], x[1], q)


def spectral_counts(q: int) -> tuple[int, int, int]:
    """Vertex counts (no eigenvalue, one, two) for the traceless family."""
    _require_odd_prime(q)
    return (q * (q - 1) ** 2 // 2, q * q - 1, q * (q * q - 1) // 2)


@dataclass
class VerificationReport:
    """Outcome of checking a built graph against the closed forms."""
    family: str
    q: int
    passed: bool
    expected: dict[int, int]
    computed: dict[int, int]
    class_counts: dict[str, int]
    expected_class_counts: dict[str, int]
    first_mismatch: str | None

    def text(self) -> str:
        lines = [f"family={self.family} q={self.q}"]
        lines.append("degree,expected,computed")
        degrees = sorted(set(self.expected) | set(self.computed), reverse=True)
        for d in degrees:
            lines.append(f"{d},{self.expected.get(d, 0)},{self.computed.get(d, 0)}")
        lines.append("class,expected,computed")
        for cls in SpectralClass:
            lines.append(f"{cls.value},{self.expected_class_counts[cls.value]},"
                         f"{self.class_counts[cls.value]}")
        if self.first_mismatch:
            lines.append(f"mismatch={self.first_mismatch}")
        lines.append(f"result={'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "family": self.family,
            "q": self.q,
            "passed": self.passed,
            "expected": [[d, m] for d, m in self.expected.items()],
            "computed": [[d, m] for d, m in self.computed.items()],
            "class_counts": self.class_counts,
            "expected_class_counts": self.expected_class_counts,
            "first_mismatch": self.first_mismatch,
        }
        return json.dumps(payload, separators=(",", ":"))


def _gl2_traceless_part(x, q: int) -> tuple[int, int, int]:
    """Split off the scalar part: coordinates (a, b, c) of x - (tr x / 2) I.

    gl2 coordinates follow the basis (E00, E01, E10, E11); division by 2
    needs q odd.
    """
    half = pow(2, q - 2, q)  # inverse of 2
    shift = (x[0] + x[3]) * half % q
    return ((x[0] - shift) % q, x[1] % q, x[2] % q)


def verify(family: str, q: int, threads: int = 1, force: bool = False) -> VerificationReport:
    """Build the graph for sl2 or gl2 over F_q and compare with the closed forms.

    Checks the degree multiset, then that the eigenvalue class of every
    vertex determines its degree exactly, and finally the per-class counts.
    """
    _require_odd_prime(q)
    if family == "sl2":
        L = make_sl(2, q)
        expected = sl2_expected(q)
        degree_of_class = {
            SpectralClass.NO_EIGENVALUE: q - 2,
            SpectralClass.ONE_EIGENVALUE: q * q - 2,
            SpectralClass.TWO_EIGENVALUES: 2 * q * q - q - 2,
        }
        counts = spectral_counts(q)

        def classify(x):
            return _discriminant_class(x[2], x[0], x[1], q)
    elif family == "gl2":
        L = make_gl(2, q)
        expected = gl2_expected(q)
        degree_of_class = {
            SpectralClass.NO_EIGENVALUE: q * q - q - 1,
            SpectralClass.ONE_EIGENVALUE: q**3 - q - 1,
            SpectralClass.TWO_EIGENVALUES: 2 * q**3 - q * q - q - 1,
        }
        base = spectral_counts(q)
        counts = (q * base[0], q * base[1], q * base[2])

        def classify(x):
            a, b, c = _gl2_traceless_part(x, q)
            return _discriminant_class(a, b, c, q)
    else:
        raise ValueError(f"unknown family {family!r}; expected 'sl2' or 'gl2'")

    G = build(L, threads=threads, force=force)
    computed = degree_sequence(G)
    mismatch = None
    if computed != expected:
        mismatch = f"degree sequence {computed} != expected {expected}"

    observed_counts = {cls: 0 for cls in SpectralClass}
    if mismatch is None:
        for pos, m in enumerate(G.vertices):
            x = L.vector(m)
            cls = classify(x)
            observed_counts[cls] += 1
            deg = G.rows[pos].bit_count()
            if deg != degree_of_class[cls]:
                mismatch = (f"vertex {m} of class {cls.value} has degree {deg}, "
                            f"expected {degree_of_class[cls]}")
                break
    expected_counts = {
        SpectralClass.NO_EIGENVALUE: counts[0],
        SpectralClass.ONE_EIGENVALUE: counts[1],
        SpectralClass.TWO_EIGENVALUES: counts[2],
    }
    if mismatch is None and observed_counts != expected_counts:
        mismatch = (f"class counts {observed_counts} != expected {expected_counts}")

    return VerificationReport(
        family=family,
        q=q,
        passed=mismatch is None,
        expected=expected,
        computed=computed,
        class_counts={cls.value: n for cls, n in observed_counts.items()},
        expected_class_counts={cls.value: n for cls, n in expected_counts.items()},
        first_mismatch=mismatch,
    )
