"""Finite-dimensional Lie algebras over F_p, given by structure constants.

An algebra of dimension n over F_p has p**n elements; element number m has
the base-p digits of m as coordinates, least significant digit first.  The
constant table is validated at construction: the bracket of a basis vector
with itself vanishes, the table is antisymmetric, and the Jacobi identity
holds on all basis triples.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import NamedTuple

from .ffalg import PrimeField, Subspace, _rref_raw, full_space, kernel, rref

DEFAULT_ELEMENT_CAP = 1 << 24


class ValidationError(ValueError):
    """A structure-constant table violates a Lie algebra axiom."""


class CapExceeded(RuntimeError):
    """p**n exceeds the exhaustive-enumeration cap."""


def element_cap() -> int:
    """Cap on |L| for whole-algebra enumerations; override via SOLVGRAPH_CAP."""
    try:
        return int(os.environ["SOLVGRAPH_CAP"])
    except (KeyError, ValueError):
        return DEFAULT_ELEMENT_CAP


def require_enumerable(L: "LieAlgebra", force: bool = False):
    if not force and L.size > element_cap():
        raise CapExceeded(
            f"|L| = {L.size} exceeds the enumeration cap {element_cap()}; "
            "use force to override")


class LieAlgebra:
    """A Lie algebra over F_p with a dense n**3 structure-constant table.

    ``constants[i][j][k]`` is the coefficient of basis vector k in the
    bracket of basis vectors i and j.  Instances are immutable after
    validation and all operations on them are pure.
    """

    __slots__ = ("field", "dim", "constants", "labels", "name",
                 "basis_matrices", "matrix_size", "_lines")

    def __init__(self, field: PrimeField, constants, labels=None, name="L",
                 basis_matrices=None, matrix_size=None):
        p = field.p
        self.field = field
        self.constants = tuple(
            tuple(tuple(int(v) % p for v in row) for row in plane)
            for plane in constants)
        self.dim = len(self.constants)
        if labels is None:
            labels = [f"b{i}" for i in range(self.dim)]
        if len(labels) != self.dim:
            raise ValidationError(f"expected {self.dim} labels, got {len(labels)}")
        self.labels = tuple(str(x) for x in labels)
        self.name = name
        self.basis_matrices = basis_matrices
        self.matrix_size = matrix_size
        self._lines = None
        self._validate()

    def _validate(self):
        n, p, c = self.dim, self.field.p, self.constants
        for i, plane in enumerate(c):
            if len(plane) != n or any(len(row) != n for row in plane):
                raise ValidationError(f"constant table is not {n}x{n}x{n} at plane {i}")
        for i in range(n):
            for k in range(n):
                if c[i][i][k]:
                    raise ValidationError(
                        f"bracket of basis vector {i} with itself is nonzero: "
                        f"c[{i}][{i}][{k}] = {c[i][i][k]}")
            for j in range(i + 1, n):
                for k in range(n):
                    if (c[i][j][k] + c[j][i][k]) % p:
                        raise ValidationError(
                            f"antisymmetry fails at (i,j,k) = ({i},{j},{k}): "
                            f"{c[i][j][k]} != -{c[j][i][k]} mod {p}")
        # Jacobi on strictly increasing triples; repeated indices cancel
        # automatically once the table is alternating and antisymmetric.
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = [0] * n
                    for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = c[b][cc]
                        for m, w in enumerate(inner):
                            if w:
                                row = c[a][m]
                                for t, v in enumerate(row):
                                    if v:
                                        acc[t] = (acc[t] + w * v) % p
                    if any(acc):
                        raise ValidationError(
                            f"Jacobi identity fails on basis triple ({i},{j},{k})")

    @property
    def size(self) -> int:
        """Number of elements, p**dim."""
        return self.field.p ** self.dim

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def basis_vector(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def vector(self, index: int) -> tuple[int, ...]:
        """Coordinates of element ``index`` (base-p digits, least significant first)."""
        p = self.field.p
        coords = []
        for _ in range(self.dim):
            index, r = divmod(index, p)
            coords.append(r)
        return tuple(coords)

    def index(self, v) -> int:
        p = self.field.p
        m = 0
        for x in reversed(v):
            m = m * p + (x % p)
        return m

    def bracket(self, x, y) -> tuple[int, ...]:
        """Bracket of two coordinate vectors, via the constant table."""
        n, p, c = self.dim, self.field.p, self.constants
        out = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            ci = c[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                row = ci[j]
                for k, v in enumerate(row):
                    if v:
                        out[k] = (out[k] + f * v) % p
        return tuple(out)

    def lines(self) -> tuple[tuple[int, ...], ...]:
        """Projective lines of nonzero elements.

        Each line is the sorted tuple of indices of the nonzero multiples of
        one element; lines are listed in order of their smallest member, so
        ``line[0]`` is the canonical representative.
        """
        if self._lines is None:
            p = self.field.p
            seen = bytearray(self.size)
            out = []
            for m in range(1, self.size):
                if seen[m]:
                    continue
                v = self.vector(m)
                members = sorted(
                    self.index(tuple(a * x % p for x in v)) for a in range(1, p))
                for idx in members:
                    seen[idx] = 1
                out.append(tuple(members))
            self._lines = tuple(out)
        return self._lines

    def full_space(self) -> Subspace:
        return full_space(self.dim, self.field)

    def zero_space(self) -> Subspace:
        return rref([], self.field, ambient=self.dim)

    def __eq__(self, other):
        return (isinstance(other, LieAlgebra) and self.field == other.field
                and self.constants == other.constants)

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, p={self.field.p}, dim={self.dim})"


# ---------------------------------------------------------------------------
# Matrix scaffolding for the builtin families.

def _unit_matrix(n, i, j):
    return tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(n)) for r in range(n))


def _mat_add(a, b, p, sign=1):
    return tuple(tuple((x + sign * y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_mul(a, b, p):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols)
                 for row in a)


def _mat_bracket(a, b, p):
    return _mat_add(_mat_mul(a, b, p), _mat_mul(b, a, p), p, sign=-1)


def _flatten(m):
    return tuple(x for row in m for x in row)


def _mat_inv(g, field: PrimeField):
    """Inverse of a square matrix over F_p; raises ValueError when singular."""
    n = len(g)
    p = field.p
    aug = [[int(x) % p for x in row] + [1 if c == r else 0 for c in range(n)]
           for r, row in enumerate(g)]
    basis, pivots = _rref_raw(aug, field)
    if pivots != list(range(n)):
        raise ValueError("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in basis)


def _solve_combination(rows, target, field: PrimeField):
    """Coefficients x with sum(x_i * rows_i) = target, or None if unsolvable.

    The rows are assumed linearly independent; the kernel of the transposed
    augmented matrix [rows | target] is then at most one-dimensional, and
    its generator has a nonzero last entry exactly when target is in the span.
    """
    width = len(target)
    aug = list(rows) + [tuple(target)]
    transposed = [tuple(r[c] for r in aug) for c in range(width)]
    ker = kernel(transposed, field, ncols=len(aug))
    p = field.p
    for z in ker.basis:
        if z[-1]:
            f = field.neg(field.inv(z[-1]))
            return tuple(f * x % p for x in z[:-1])
    return None


def _from_matrix_basis(mats, labels, field, name, matrix_size):
    flats = [_flatten(m) for m in mats]
    n = len(mats)
    constants = []
    for i in range(n):
        plane = []
        for j in range(n):
            br = _mat_bracket(mats[i], mats[j], field.p)
            coeffs = _solve_combination(flats, _flatten(br), field)
            if coeffs is None:
                raise ValidationError(
                    f"bracket [{labels[i]}, {labels[j]}] falls outside the basis span")
            plane.append(coeffs)
        constants.append(plane)
    return LieAlgebra(field, constants, labels=labels, name=name,
                      basis_matrices=tuple(mats), matrix_size=matrix_size)


def make_gl(n: int, p: int) -> LieAlgebra:
    """All n-by-n matrices with bracket xy - yx; basis E_ij in row-major order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    field = PrimeField(p)
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            mats.append(_unit_matrix(n, i, j))
            labels.append(f"E{i}{j}")
    return _from_matrix_basis(mats, labels, field, f"gl{n}@{p}", n)


def make_sl(n: int, p: int) -> LieAlgebra:
    """Traceless n-by-n matrices, dimension n**2 - 1.

    Basis: off-diagonal units E_ij in row-major order, then the diagonal
    differences E_ii - E_(i+1)(i+1).  For n = 2 this is e, f, h with
    [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    field = PrimeField(p)
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit_matrix(n, i, j))
                labels.append(f"E{i}{j}")
    for i in range(n - 1):
        m = _mat_add(_unit_matrix(n, i, i), _unit_matrix(n, i + 1, i + 1), p, sign=-1)
        mats.append(m)
        labels.append(f"H{i}")
    if n == 2:
        labels = ["e", "f", "h"]
    return _from_matrix_basis(mats, labels, field, f"sl{n}@{p}", n)


def make_t(n: int, p: int) -> LieAlgebra:
    """Upper triangular n-by-n matrices, dimension n(n+1)/2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    field = PrimeField(p)
    mats, labels = [], []
    for i in range(n):
        for j in range(i, n):
            mats.append(_unit_matrix(n, i, j))
            labels.append(f"E{i}{j}")
    return _from_matrix_basis(mats, labels, field, f"t{n}@{p}", n)


def make_so(n: int, p: int) -> LieAlgebra:
    """Antisymmetric n-by-n matrices with zero diagonal, dimension n(n-1)/2.

    Basis A_ij = E_ij - E_ji for i < j.  For p = 2 this coincides with the
    symmetric matrices with zero diagonal, and the family is still closed
    under the bracket.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    field = PrimeField(p)
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            m = _mat_add(_unit_matrix(n, i, j), _unit_matrix(n, j, i), p, sign=-1)
            mats.append(m)
            labels.append(f"A{i}{j}")
    return _from_matrix_basis(mats, labels, field, f"so{n}@{p}", n)


def make_w3(p: int) -> LieAlgebra:
    """The simple 3-dimensional algebra over F_2 with [a,b]=b, [a,c]=c, [b,c]=a.

    The Jacobi identity for these brackets needs 2a = 0, so p = 2 is required.
    """
    if p != 2:
        raise ValueError("this algebra only satisfies the Jacobi identity for p = 2")
    field = PrimeField(2)
    a = ((0, 0, 0), (0, 1, 0), (0, 0, 1))
    b = ((0, 1, 0), (0, 0, 0), (1, 0, 0))
    c = ((0, 0, 1), (1, 0, 0), (0, 0, 0))
    return _from_matrix_basis([a, b, c], ["a", "b", "c"], field, "w3", 3)


# ---------------------------------------------------------------------------
# Structure-constant files.

def from_file(path) -> LieAlgebra:
    """Load an algebra from a structure-constants text file.

    Grammar (see README for the full description): a ``p`` line and a ``dim``
    line, an optional ``labels`` line, then ``i j k v`` entry lines meaning
    constants[i][j][k] = v.  Omitted entries are zero; the antisymmetric
    counterpart of every entry is filled in automatically and cross-checked
    when both orientations are present.  ``#`` starts a comment.
    """
    path = Path(path)
    p = None
    dim = None
    labels = None
    entries: dict[tuple[int, int, int], tuple[int, int]] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            where = f"{path.name}:{lineno}"
            if parts[0] == "p":
                if len(parts) != 2 or not parts[1].lstrip("-").isdigit():
                    raise ValueError(f"{where}: expected 'p <prime>'")
                p = int(parts[1])
            elif parts[0] == "dim":
                if len(parts) != 2 or not parts[1].isdigit():
                    raise ValueError(f"{where}: expected 'dim <n>'")
                dim = int(parts[1])
            elif parts[0] == "labels":
                labels = parts[1:]
            else:
                if len(parts) != 4:
                    raise ValueError(f"{where}: expected 'i j k v', got {line!r}")
                try:
                    i, j, k, v = (int(x) for x in parts)
                except ValueError:
                    raise ValueError(f"{where}: expected four integers, got {line!r}") from None
                entries[(i, j, k)] = (v, lineno)
    if p is None:
        raise ValueError(f"{path.name}: missing 'p' line")
    if dim is None:
        raise ValueError(f"{path.name}: missing 'dim' line")
    field = PrimeField(p)
    if labels is not None and len(labels) != dim:
        raise ValueError(f"{path.name}: expected {dim} labels, got {len(labels)}")

    constants = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), (v, lineno) in entries.items():
        where = f"{path.name}:{lineno}"
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ValueError(f"{where}: indices ({i},{j},{k}) out of range for dim {dim}")
        if i == j and v % p:
            raise ValidationError(
                f"{where}: bracket of basis vector {i} with itself must be zero")
        constants[i][j][k] = v % p
        mirror = entries.get((j, i, k))
        if mirror is not None:
            if (mirror[0] + v) % p:
                raise ValidationError(
                    f"{where}: entries ({i},{j},{k}) and ({j},{i},{k}) are not "
                    f"antisymmetric: {v} vs {mirror[0]} mod {p}")
        else:
            constants[j][i][k] = -v % p
    return LieAlgebra(field, constants, labels=labels, name=path.stem)


def to_file(L: LieAlgebra, path):
    """Write an algebra in the structure-constants format read by from_file."""
    lines = [f"p {L.field.p}", f"dim {L.dim}", "labels " + " ".join(L.labels)]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k, v in enumerate(L.constants[i][j]):
                if v:
                    lines.append(f"{i} {j} {k} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Structural computations.

class SeriesReport(NamedTuple):
    """Derived series of a bracket-closed subspace."""
    terms: tuple[Subspace, ...]
    terminated: bool


def subalgebra_closure(L: LieAlgebra, generators) -> Subspace:
    """Smallest bracket-closed subspace containing the generators.

    Alternates spanning and adjoining pairwise basis brackets until the rank
    stabilizes; the rank can grow at most dim(L) times.
    """
    space = rref(list(generators), L.field, ambient=L.dim)
    while True:
        basis = space.basis
        new = [L.bracket(u, v)
               for i, u in enumerate(basis) for v in basis[i + 1:]]
        bigger = rref(list(basis) + new, L.field, ambient=L.dim)
        if bigger.dim == space.dim:
            return space
        space = bigger


def derived_series(L: LieAlgebra, space: Subspace) -> SeriesReport:
    """Derived series of a bracket-closed subspace, down to stabilization."""
    terms = [space]
    for _ in range(2 * L.dim + 2):
        cur = terms[-1]
        if cur.dim == 0:
            break
        basis = cur.basis
        brackets = [L.bracket(u, v)
                    for i, u in enumerate(basis) for v in basis[i + 1:]]
        nxt = rref(brackets, L.field, ambient=L.dim)
        if nxt == cur:
            break
        terms.append(nxt)
    return SeriesReport(tuple(terms), terms[-1].dim == 0)


def is_solvable(L: LieAlgebra, space: Subspace | None = None) -> bool:
    """True iff the derived series of the subspace (default: all of L) reaches 0."""
    if space is None:
        space = L.full_space()
    return derived_series(L, space).terminated


def centralizer(L: LieAlgebra, x) -> Subspace:
    """Kernel of ad x: all y with [x, y] = 0."""
    n = L.dim
    images = [L.bracket(x, L.basis_vector(j)) for j in range(n)]
    rows = [tuple(images[j][k] for j in range(n)) for k in range(n)]
    return kernel(rows, L.field, ncols=n)


def center(L: LieAlgebra) -> Subspace:
    """Elements whose bracket with every basis vector vanishes."""
    space = L.full_space()
    for i in range(L.dim):
        space = space.intersect(centralizer(L, L.basis_vector(i)))
        if space.dim == 0:
            break
    return space


def ideal_closure(L: LieAlgebra, x) -> Subspace:
    """Smallest ad-invariant subspace containing x."""
    space = rref([x], L.field, ambient=L.dim)
    while True:
        new = [L.bracket(L.basis_vector(i), v)
               for i in range(L.dim) for v in space.basis]
        bigger = rref(list(space.basis) + new, L.field, ambient=L.dim)
        if bigger.dim == space.dim:
            return space
        space = bigger


def is_ideal(L: LieAlgebra, space: Subspace) -> bool:
    """True iff the subspace absorbs brackets with all of L."""
    return all(space.contains(L.bracket(L.basis_vector(i), v))
               for i in range(L.dim) for v in space.basis)


def radical(L: LieAlgebra, force: bool = False) -> Subspace:
    """Maximal solvable ideal, found by exhaustive elementwise search.

    In finite dimension the sum of two solvable ideals is again a solvable
    ideal, so a unique maximal one exists and consists exactly of the
    elements whose ideal closure is solvable.  The ideal closure does not
    change under scaling, so one representative per projective line is
    enough to decide the whole line.
    """
    require_enumerable(L, force)
    members = {0}
    good_reps = []
    for line in L.lines():
        rep = L.vector(line[0])
        if derived_series(L, ideal_closure(L, rep)).terminated:
            members.update(line)
            good_reps.append(rep)
    space = rref(good_reps, L.field, ambient=L.dim)
    if space.size != len(members):
        raise AssertionError(
            "elements with solvable ideal closure do not form a subspace")
    if not is_ideal(L, space) or not derived_series(L, space).terminated:
        raise AssertionError("collected radical candidate is not a solvable ideal")
    return space


def quotient(L: LieAlgebra, ideal: Subspace):
    """Quotient algebra by an ideal, with projection and section maps.

    The quotient keeps the coordinates of L at the non-pivot columns of the
    ideal's RREF basis.  The section places quotient coordinates at those
    columns (zeros elsewhere); the projection reduces modulo the ideal and
    reads the kept columns, so project(section(w)) == w.
    """
    if ideal.ambient != L.dim:
        raise ValueError("ideal lives in a different ambient space")
    if not is_ideal(L, ideal):
        raise ValueError("subspace is not an ideal")
    p = L.field.p
    keep = [c for c in range(L.dim) if c not in set(ideal.pivots)]

    def project(v):
        reduced = ideal.reduce(v)
        return tuple(reduced[c] for c in keep)

    def section(w):
        v = [0] * L.dim
        for c, x in zip(keep, w):
            v[c] = x % p
        return tuple(v)

    m = len(keep)
    basis = [section(tuple(1 if j == i else 0 for j in range(m))) for i in range(m)]
    constants = [[project(L.bracket(basis[i], basis[j])) for j in range(m)]
                 for i in range(m)]
    labels = [L.labels[c] for c in keep]
    Q = LieAlgebra(L.field, constants, labels=labels, name=f"{L.name}/I{ideal.dim}")
    return Q, project, section


class LinearMap:
    """Linear map on coordinate vectors; row i is the image of basis vector i."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: PrimeField, matrix):
        self.field = field
        self.matrix = tuple(tuple(int(x) % field.p for x in row) for row in matrix)

    def apply(self, v) -> tuple[int, ...]:
        p = self.field.p
        n = len(self.matrix[0]) if self.matrix else 0
        out = [0] * n
        for xi, row in zip(v, self.matrix):
            if xi:
                out = [(a + xi * b) % p for a, b in zip(out, row)]
        return tuple(out)

    def __call__(self, v):
        return self.apply(v)


def is_lie_automorphism(L: LieAlgebra, phi: LinearMap) -> bool:
    """True iff phi is bijective and preserves brackets on all basis pairs."""
    if len(phi.matrix) != L.dim:
        return False
    if rref(phi.matrix, L.field, ambient=L.dim).dim != L.dim:
        return False
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = phi.apply(L.constants[i][j])
            rhs = L.bracket(phi.matrix[i], phi.matrix[j])
            if lhs != rhs:
                return False
    return True


def conjugation_automorphism(L: LieAlgebra, g) -> LinearMap:
    """The map x -> g x g^(-1) on a matrix-built algebra, in basis coordinates.

    Requires an algebra produced by one of the matrix constructors, an
    invertible g, and conjugation to keep every basis matrix inside the
    basis span (automatic for gl and sl; for the triangular family g must
    itself be upper triangular).
    """
    if L.basis_matrices is None:
        raise ValueError("algebra was not built from a matrix basis")
    p = L.field.p
    g = tuple(tuple(int(x) % p for x in row) for row in g)
    if len(g) != L.matrix_size or any(len(row) != L.matrix_size for row in g):
        raise ValueError(f"g must be a {L.matrix_size}x{L.matrix_size} matrix")
    ginv = _mat_inv(g, L.field)
    flats = [_flatten(m) for m in L.basis_matrices]
    rows = []
    for m in L.basis_matrices:
        conj = _mat_mul(_mat_mul(g, m, p), ginv, p)
        coeffs = _solve_combination(flats, _flatten(conj), L.field)
        if coeffs is None:
            raise ValueError("conjugation does not preserve the basis span")
        rows.append(coeffs)
    phi = LinearMap(L.field, rows)
    if not is_lie_automorphism(L, phi):
        raise ValueError("conjugation map fails the bracket-preservation check")
    return phi
