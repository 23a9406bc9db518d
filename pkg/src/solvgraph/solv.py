"""Solvabilizer machinery.

Everything funnels through one memoized predicate: whether the subalgebra
generated by a pair of elements is solvable.  That subalgebra depends only
on span{x, y}, so results are cached under the canonical RREF form of the
span; the cache collapses the quadratic pair loop to one test per at most
two-dimensional subspace.

Several whole-algebra scans exploit that solvabilizer membership does not
change when either element is scaled, and therefore only walk one
representative per projective line.  The per-element operations stay
elementwise and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .ffalg import Subspace, rref
from .liealg import (
    LieAlgebra,
    LinearMap,
    centralizer,
    derived_series,
    is_ideal,
    is_lie_automorphism,
    quotient,
    require_enumerable,
    subalgebra_closure,
)


class SolvCache(dict):
    """Memo table mapping span{x, y} (an RREF Subspace) to solvability.

    Shared mutable state for one algebra; the predicate is deterministic, so
    concurrent writers can only ever store the same value for a key and
    last-write-wins merging is safe.
    """


def pair_solvable(L: LieAlgebra, x, y, cache: SolvCache | None = None) -> bool:
    """True iff the subalgebra generated by x and y is solvable."""
    key = rref([x, y], L.field, ambient=L.dim)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    result = derived_series(L, subalgebra_closure(L, key.basis)).terminated
    if cache is not None:
        cache[key] = result
    return result


def solvabilizer(L: LieAlgebra, x, cache: SolvCache | None = None,
                 force: bool = False) -> tuple[int, ...]:
    """Sorted indices of all y in L with <x, y> solvable."""
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    return tuple(m for m in range(L.size)
                 if pair_solvable(L, x, L.vector(m), cache))


def solvabilizer_set(L: LieAlgebra, A, B, cache: SolvCache | None = None) -> tuple[int, ...]:
    """Members of A that generate a solvable subalgebra with every member of B.

    A and B are iterables of element indices.  An empty A gives the empty
    set; an empty B imposes no constraint and gives all of A.
    """
    A = sorted(set(A))
    B = sorted(set(B))
    if not A:
        return ()
    if not B:
        return tuple(A)
    if cache is None:
        cache = SolvCache()
    bvecs = [L.vector(b) for b in B]
    return tuple(a for a in A
                 if all(pair_solvable(L, L.vector(a), bv, cache) for bv in bvecs))


def sol_of_algebra(L: LieAlgebra, cache: SolvCache | None = None,
                   force: bool = False) -> tuple[int, ...]:
    """Sorted indices of the elements generating a solvable subalgebra with all of L.

    Membership is constant on projective lines in both arguments, so lines
    are admitted or rejected whole after testing their representatives.
    """
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    lines = L.lines()
    reps = [L.vector(line[0]) for line in lines]
    members = [0]
    for line in lines:
        y = L.vector(line[0])
        if all(pair_solvable(L, h, y, cache) for h in reps):
            members.extend(line)
    return tuple(sorted(members))


def _vadd(u, v, p):
    return tuple((a + b) % p for a, b in zip(u, v))


def _additively_closed(L: LieAlgebra, members: tuple[int, ...]) -> tuple[bool, Subspace]:
    """Whether a 0-containing, scaling-closed index set is closed under addition.

    Such a set is additively closed exactly when it fills the subspace it
    spans, so a size comparison against the span decides it.
    """
    span = rref([L.vector(m) for m in members], L.field, ambient=L.dim)
    return len(members) == span.size, span


def is_s_lie(L: LieAlgebra, cache: SolvCache | None = None, force: bool = False):
    """Test whether every per-element solvabilizer is a subalgebra.

    Returns (True, None), or (False, (x, a, b)) where a and b both lie in
    the solvabilizer of x but a + b or [a, b] does not.  Solvabilizers are
    constant on projective lines, so only line representatives are examined;
    lines are visited in order of their smallest member and the witness is
    the first failing triple in element-index order.
    """
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    p = L.field.p
    for line in L.lines():
        x = L.vector(line[0])
        sol = solvabilizer(L, x, cache, force=force)
        members = set(sol)
        closed, span = _additively_closed(L, sol)
        if closed and all(L.index(L.bracket(u, v)) in members
                          for i, u in enumerate(span.basis)
                          for v in span.basis[i + 1:]):
            continue
        vecs = [L.vector(m) for m in sol]
        for a in vecs:
            for b in vecs:
                if (L.index(_vadd(a, b, p)) not in members
                        or L.index(L.bracket(a, b)) not in members):
                    return False, (x, a, b)
        raise AssertionError("subspace test failed but no witness pair found")
    return True, None


class ConjectureResult(NamedTuple):
    total: int
    order: int
    divisible: bool
    quotient: int | Fraction


def conjecture_sum(L: LieAlgebra, cache: SolvCache | None = None,
                   force: bool = False) -> ConjectureResult:
    """Sum of |sol_L(x)| over all x of L, and its divisibility by |L|.

    The summand is constant on projective lines and equals |L| at x = 0.
    """
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    total = L.size
    for line in L.lines():
        size = len(solvabilizer(L, L.vector(line[0]), cache, force=force))
        total += len(line) * size
    q, r = divmod(total, L.size)
    return ConjectureResult(total, L.size, r == 0,
                            q if r == 0 else Fraction(total, L.size))


@dataclass(frozen=True)
class DivisibilityReport:
    """Size and coset facts about one solvabilizer.

    sol_divides is None when sol(L) is not additively closed, and
    centralizer_divides is None when some solvabilizer of L fails to be a
    subalgebra; both divisibility statements need those hypotheses.
    """
    element_index: int
    sol_size: int
    p_divides: bool
    sol_of_algebra_size: int
    sol_divides: bool | None
    centralizer_size: int
    centralizer_divides: bool | None
    coset_closed: bool


def divisibility_report(L: LieAlgebra, x, cache: SolvCache | None = None,
                        force: bool = False) -> DivisibilityReport:
    """Compute |sol_L(x)| and check the divisibility and coset properties."""
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    p = L.field.p
    x = tuple(v % p for v in x)
    sol_x = solvabilizer(L, x, cache, force=force)
    members = set(sol_x)

    sol_all = sol_of_algebra(L, cache, force=force)
    sol_closed, _ = _additively_closed(L, sol_all)
    sol_divides = (len(sol_x) % len(sol_all) == 0) if sol_closed else None

    cent_size = centralizer(L, x).size
    s_lie, _ = is_s_lie(L, cache, force=force)
    cent_divides = (len(sol_x) % cent_size == 0) if s_lie else None

    coset_closed = all(
        L.index(_vadd(L.vector(a), tuple(t * xi % p for xi in x), p)) in members
        for a in sol_x for t in range(1, p))

    return DivisibilityReport(
        element_index=L.index(x),
        sol_size=len(sol_x),
        p_divides=len(sol_x) % p == 0,
        sol_of_algebra_size=len(sol_all),
        sol_divides=sol_divides,
        centralizer_size=cent_size,
        centralizer_divides=cent_divides,
        coset_closed=coset_closed,
    )


def equivariance_check(L: LieAlgebra, phi: LinearMap, x,
                       cache: SolvCache | None = None, force: bool = False) -> bool:
    """True iff the phi-image of sol_L(x) equals sol_L(phi(x)) as a set."""
    if not is_lie_automorphism(L, phi):
        raise ValueError("map is not a Lie algebra automorphism")
    if cache is None:
        cache = SolvCache()
    sol_x = solvabilizer(L, x, cache, force=force)
    image = sorted(L.index(phi.apply(L.vector(m))) for m in sol_x)
    return tuple(image) == solvabilizer(L, phi.apply(x), cache, force=force)


def quotient_compatibility_check(L: LieAlgebra, N: Subspace,
                                 cache: SolvCache | None = None,
                                 force: bool = False) -> bool:
    """Check that solvabilizers project onto those of L/N, with matching sizes.

    N must be a solvable ideal contained in sol(L).  Verifies, for every
    element x, that the projection of sol_L(x) equals the solvabilizer of
    the projection of x, that |sol_L(x)| = |N| * |sol_(L/N)(pi(x))|, and
    that L and L/N agree on whether every solvabilizer is a subalgebra.
    """
    if not is_ideal(L, N):
        raise ValueError("N is not an ideal")
    if not derived_series(L, N).terminated:
        raise ValueError("N is not solvable")
    require_enumerable(L, force)
    if cache is None:
        cache = SolvCache()
    sol_members = set(sol_of_algebra(L, cache, force=force))
    for v in N.elements():
        if L.index(v) not in sol_members:
            raise ValueError("N is not contained in sol(L)")

    Q, project, _ = quotient(L, N)
    qcache = SolvCache()
    nsize = N.size
    for m in range(L.size):
        x = L.vector(m)
        sol_x = solvabilizer(L, x, cache, force=force)
        projected = tuple(sorted({Q.index(project(L.vector(a))) for a in sol_x}))
        sol_q = solvabilizer(Q, project(x), qcache, force=force)
        if projected != sol_q:
            return False
        if len(sol_x) != nsize * len(sol_q):
            return False
    return is_s_lie(L, cache, force=force)[0] == is_s_lie(Q, qcache, force=force)[0]
