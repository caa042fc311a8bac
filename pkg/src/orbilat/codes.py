"""Codes on the discriminant group ``(N°)^d / N^d = k^d x l^d``.

``k = Z_2^{p-1}`` carries the pairing ``u . v = u A v^T mod 2`` with the
Cartan matrix ``A`` of ``A_{p-1}`` and the quadratic form
``q(u) = u A u^T / 2 mod 2``; ``l = Z_p`` carries ``a . b = -2ab mod p``.
Words are plain tuples: a k-word has ``(p-1) d`` bits, an l-word ``d`` digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from . import exact_linalg as la
from . import lattice as lc
from . import sigma as sg

KWord = tuple[int, ...]
LWord = tuple[int, ...]


class CodeSizeError(RuntimeError):
    """A code search exceeds its size limit or budget."""


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n ** 0.5) + 1))


# --------------------------------------------------------------------------
# forms


def _check_len(w: Sequence[int], n: int, what: str):
    if len(w) != n:
        raise ValueError(f"{what} has length {len(w)}, expected {n}")


def inner_k(p: int, u: Sequence[int], v: Sequence[int]) -> int:
    """``sum_blocks u_i A v_i^T mod 2``; only the off-diagonal 1's of A survive mod 2."""
    if len(u) != len(v) or len(u) % (p - 1):
        raise ValueError("k-words must have equal length divisible by p-1")
    s = 0
    for b in range(0, len(u), p - 1):
        for i in range(b, b + p - 2):
            s += u[i] * v[i + 1] + u[i + 1] * v[i]
    return s % 2


def inner_l(p: int, a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError("l-words must have equal length")
    return (-2 * sum(x * y for x, y in zip(a, b))) % p


def qform(p: int, u: Sequence[int]) -> int:
    """``u A u^T / 2 mod 2 = sum u_i - sum u_i u_{i+1}`` summed over blocks."""
    if len(u) % (p - 1):
        raise ValueError("k-word length must be divisible by p-1")
    s = 0
    for b in range(0, len(u), p - 1):
        blk = [x % 2 for x in u[b:b + p - 1]]
        s += sum(blk) - sum(blk[i] * blk[i + 1] for i in range(p - 2))
    return s % 2


def k_gram(p: int, d: int) -> list[list[int]]:
    """Block-diagonal mod-2 Cartan matrix."""
    n = (p - 1) * d
    return [[int(i // (p - 1) == j // (p - 1) and abs(i - j) == 1) for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def _block_weight(p: int, u: KWord, a: int) -> Fraction:
    c = lc.Coset(lc.build_N(p), tuple(lc.beta_u_a(p, u, a)))
    return lc.coset_min_norm(c)


def weight(p: int, u: Sequence[int], a: Sequence[int]) -> Fraction:
    """Minimum norm of the coset ``N^d + beta(u, a)``, as a sum over blocks."""
    d = len(a)
    _check_len(u, (p - 1) * d, "k-word")
    return sum((_block_weight(p, tuple(x % 2 for x in u[b * (p - 1):(b + 1) * (p - 1)]), a[b] % p)
                for b in range(d)), Fraction(0))


def beta_word(p: int, u: Sequence[int], a: Sequence[int]) -> list[Fraction]:
    """``beta(u, a) = (beta_{u_1,a_1}, ..., beta_{u_d,a_d})`` in ambient coordinates."""
    d = len(a)
    _check_len(u, (p - 1) * d, "k-word")
    out: list[Fraction] = []
    for b in range(d):
        out.extend(lc.beta_u_a(p, u[b * (p - 1):(b + 1) * (p - 1)], a[b]))
    return out


# --------------------------------------------------------------------------
# codes


@dataclass(frozen=True)
class _LinearCode:
    p: int
    d: int
    basis: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be nonnegative")
        n = self.length
        for g in self.basis:
            _check_len(g, n, "generator")
        rows, _ = la.rref_mod(self.basis, self.q) if self.basis else ([], [])
        object.__setattr__(self, "basis", tuple(tuple(r) for r in rows))

    @property
    def q(self) -> int:
        raise NotImplementedError

    @property
    def length(self) -> int:
        raise NotImplementedError

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.q ** self.dim

    @classmethod
    def span(cls, p: int, d: int, generators: Iterable[Sequence[int]] = ()):
        return cls(p, d, tuple(tuple(g) for g in generators))

    @classmethod
    def zero(cls, p: int, d: int):
        return cls(p, d, ())

    @classmethod
    def full(cls, p: int, d: int):
        code = cls(p, d, ())
        n = code.length
        return cls(p, d, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def words(self) -> Iterator[tuple[int, ...]]:
        n = self.length
        for coeffs in product(range(self.q), repeat=self.dim):
            w = [0] * n
            for c, g in zip(coeffs, self.basis):
                if c:
                    w = [(x + c * y) % self.q for x, y in zip(w, g)]
            yield tuple(w)

    def __contains__(self, w) -> bool:
        if len(w) != self.length:
            return False
        return la.rref_mod(list(self.basis) + [list(w)], self.q)[0].__len__() == self.dim

    def contains_code(self, other) -> bool:
        return all(g in self for g in other.basis)

    def __add__(self, other):
        return type(self)(self.p, self.d, self.basis + other.basis)


@dataclass(frozen=True)
class CodeC(_LinearCode):
    """A subspace of ``k^d = (Z_2^{p-1})^d``, kept in RREF."""

    @property
    def q(self) -> int:
        return 2

    @property
    def length(self) -> int:
        return (self.p - 1) * self.d

    def inner(self, u, v) -> int:
        return inner_k(self.p, u, v)

    def dual(self) -> CodeC:
        return dual_code_C(self)

    def is_sigma_invariant(self) -> bool:
        act = sigma_k_action(self.p, self.d)
        return all(act(g) in self for g in self.basis)


@dataclass(frozen=True)
class CodeD(_LinearCode):
    """A subspace of ``l^d = Z_p^d``, kept in RREF; requires ``p`` prime."""

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"codes over Z_p need p prime, got {self.p}")
        super().__post_init__()

    @property
    def q(self) -> int:
        return self.p

    @property
    def length(self) -> int:
        return self.d

    def inner(self, a, b) -> int:
        return inner_l(self.p, a, b)

    def dual(self) -> CodeD:
        return dual_code_D(self)


def dual_code_C(c: CodeC) -> CodeC:
    """Orthogonal complement under ``inner_k``."""
    n = c.length
    g = k_gram(c.p, c.d)
    rows = la.matmul(c.basis, g) if c.basis else []
    return CodeC(c.p, c.d, tuple(map(tuple, la.nullspace_mod(rows, 2, n))))


def dual_code_D(dc: CodeD) -> CodeD:
    """Orthogonal complement under ``inner_l``; since ``-2`` is a unit this is the usual one."""
    n = dc.length
    rows = [[(-2 * x) % dc.p for x in g] for g in dc.basis]
    return CodeD(dc.p, dc.d, tuple(map(tuple, la.nullspace_mod(rows, dc.p, n))))


def is_self_orthogonal(code: _LinearCode) -> bool:
    return all(code.inner(a, b) == 0 for i, a in enumerate(code.basis) for b in code.basis[i:])


def is_self_dual(code: _LinearCode) -> bool:
    return 2 * code.dim == code.length and is_self_orthogonal(code)


def is_q_isotropic(c: CodeC) -> bool:
    """``q`` vanishes on ``C``: enough on generators plus pairwise inner products."""
    return all(qform(c.p, g) == 0 for g in c.basis) and is_self_orthogonal(c)


def evenness(c: CodeC, dc: CodeD) -> dict[str, bool]:
    return {"c_even": is_q_isotropic(c), "d_even": is_self_orthogonal(dc)}


@lru_cache(maxsize=None)
def _sigma_k_images(p: int, d: int) -> tuple[KWord, ...]:
    act = sg.code_action(sg.coxeter_sigma(p, 1), p, 1)
    one = [act(tuple(int(i == j) for i in range(p - 1))) for j in range(p - 1)]
    n = (p - 1) * d
    images = []
    for j in range(n):
        b, i = divmod(j, p - 1)
        img = [0] * n
        img[b * (p - 1):(b + 1) * (p - 1)] = one[i]
        images.append(tuple(img))
    return tuple(images)


def sigma_k_action(p: int, d: int):
    """The map induced by the Coxeter element on ``k^d``, applied blockwise."""
    images = _sigma_k_images(p, d)

    def act(u: Sequence[int]) -> KWord:
        out = [0] * len(images)
        for j, bit in enumerate(u):
            if bit % 2:
                out = [x ^ y for x, y in zip(out, images[j])]
        return tuple(out)

    return act


# --------------------------------------------------------------------------
# mixed submodules and the code-to-lattice map


@dataclass(frozen=True)
class SubmoduleE:
    """A subgroup of ``k^d x l^d`` given by generators ``(u, a)``."""

    p: int
    d: int
    generators: tuple[tuple[KWord, LWord], ...]

    def lattice(self) -> lc.Lattice:
        """``N^d`` plus the generators, built straight from the pairs."""
        return _extend_Nd(self.p, self.d, [beta_word(self.p, u, a) for u, a in self.generators])


def split_E(e: SubmoduleE) -> tuple[CodeC, CodeD]:
    """``C = p E`` (k-parts) and ``D = 2 E`` (l-parts); checks ``E = C x D``."""
    c = CodeC.span(e.p, e.d, [u for u, _ in e.generators])
    dc = CodeD.span(e.p, e.d, [a for _, a in e.generators])
    if e.lattice() != to_lattice(c, dc):
        raise sg.ConsistencyError("E differs from C x D")
    return c, dc


def _extend_Nd(p: int, d: int, vectors: Sequence[Sequence]) -> lc.Lattice:
    nd = lc.build_Nd(p, d)
    return lc.Lattice.from_vectors(nd.ambient_gram, list(nd.vectors) + [list(v) for v in vectors])


def to_lattice(c: CodeC, dc: CodeD, check: bool = True) -> lc.Lattice:
    """``L_{C x D} = N^d + span{beta(u, a)}``; checks ``L / N^d`` has order ``|C||D|``."""
    if (c.p, c.d) != (dc.p, dc.d):
        raise ValueError("codes have different (p, d)")
    p, d = c.p, c.d
    gens = [beta_word(p, u, (0,) * d) for u in c.basis]
    gens += [beta_word(p, (0,) * ((p - 1) * d), a) for a in dc.basis]
    lat = _extend_Nd(p, d, gens)
    if check:
        q = lc.index(lat, lc.build_Nd(p, d))
        if q.order != c.size * dc.size:
            raise sg.ConsistencyError("L/N^d does not have the order of the code")
    return lat


def all_subgroups_E(p: int, d: int) -> list[tuple[CodeC, CodeD]]:
    """Every subgroup of ``k^d x l^d`` as a pair ``(C, D)``; small cases only."""
    return [(c, dc) for c in enumerate_codes(p, d, "C") for dc in enumerate_codes(p, d, "D")]


# --------------------------------------------------------------------------
# enumeration


def _coset_reps(space: list[tuple[int, ...]], sub: _LinearCode) -> Iterator[tuple[int, ...]]:
    """Nonzero representatives of ``span(space) / sub`` (one per coset, up to scalars)."""
    q = sub.q
    red, piv = la.rref_mod(list(sub.basis) + list(space), q) if (sub.basis or space) else ([], [])
    # complement: rows of the combined RREF whose pivot is not a pivot of sub
    sub_piv = set(la.rref_mod(list(sub.basis), q)[1]) if sub.basis else set()
    comp = [r for r, c in zip(red, piv) if c not in sub_piv]
    # reduce comp against sub so representatives are honest complements
    comp, _ = la.rref_mod(comp, q) if comp else ([], [])
    n = sub.length
    for coeffs in product(range(q), repeat=len(comp)):
        nz = next((x for x in coeffs if x), 0)
        if nz != 1:  # projective normalisation: first nonzero coefficient is 1
            continue
        w = [0] * n
        for c, g in zip(coeffs, comp):
            if c:
                w = [(x + c * y) % q for x, y in zip(w, g)]
        yield tuple(w)


def coset_reps(sup: _LinearCode, sub: _LinearCode) -> list[tuple[int, ...]]:
    """One nonzero representative of each nonzero coset of ``sub`` in ``sup``."""
    out = []
    for v in _coset_reps(list(sup.basis), sub):
        for k in range(1, sub.q):
            out.append(tuple(k * x % sub.q for x in v))
    return out


def enumerate_codes(p: int, d: int, kind: str = "C", *, sigma_invariant: bool = False,
                    even: bool = False, self_dual: bool = False, self_orthogonal: bool = False,
                    budget: int = 200_000) -> list:
    """All subspaces of ``k^d`` (``kind="C"``) or ``l^d`` (``kind="D"``) meeting the constraints.

    Codes are grown one cyclic (sigma-orbit) span at a time from ``{0}``;
    evenness and self-orthogonality are inherited by subcodes, so pruning
    to ``S^perp`` loses nothing. ``even`` for ``D`` means self-orthogonal.
    ``budget`` caps the number of candidate extensions examined.
    """
    if kind not in ("C", "D"):
        raise ValueError("kind must be 'C' or 'D'")
    lc._check_p(p)
    if kind == "C" and (p - 1) * d > 24:
        raise CodeSizeError("exhaustive search over C needs (p-1)d <= 24")
    if kind == "D" and d > 6:
        raise CodeSizeError("exhaustive search over D needs d <= 6")
    cls = CodeC if kind == "C" else CodeD
    orth = even or self_dual or self_orthogonal
    act = sigma_k_action(p, d) if (kind == "C" and sigma_invariant and d > 0) else None

    def orbit_span(s: _LinearCode, v) -> _LinearCode:
        gens = [v]
        if act is not None:
            w = act(v)
            while w != v:
                gens.append(w)
                w = act(w)
        return s + cls.span(p, d, gens)

    def admissible(t: _LinearCode) -> bool:
        if kind == "C" and even:
            return is_q_isotropic(t)
        if orth:
            return is_self_orthogonal(t)
        return True

    zero = cls.zero(p, d)
    full = cls.full(p, d)
    seen = {zero.basis: zero}
    frontier = [zero]
    work = 0
    while frontier:
        nxt = []
        for s in frontier:
            space = list(s.dual().basis) if orth else list(full.basis)
            for v in _coset_reps(space, s):
                work += 1
                if work > budget:
                    raise CodeSizeError(f"code search exceeded budget of {budget} candidates")
                t = orbit_span(s, v)
                if t.basis in seen or not admissible(t):
                    continue
                seen[t.basis] = t
                nxt.append(t)
        frontier = nxt
    out = []
    for t in seen.values():
        if self_dual and not is_self_dual(t):
            continue
        if sigma_invariant and kind == "C" and not t.is_sigma_invariant():
            continue
        out.append(t)
    out.sort(key=lambda t: (t.dim, t.basis))
    return out
