"""Cochain spaces: storage, evaluation, bases and vectorisation.

A (2n)-cochain takes n ordered argument pairs and vanishes whenever a
pair has equal entries; over a field of characteristic zero that is
the same as being skew in each pair, so we store one coefficient per
canonical key (every pair written with i < j).  A (2n+1)-cochain has
one extra unconstrained final argument.

Canonical basis order, fixed because all coboundary matrices depend
on it: keys are enumerated lexicographically over
(pair_1, ..., pair_n, free_index, output_index), pairs themselves in
lexicographic order (0,1) < (0,2) < ... < (1,2) < ...  The output
index varies fastest.
"""

from __future__ import annotations

from itertools import product

from .linalg import Matrix, ZERO, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vector


def canonical_pairs(d: int) -> tuple:
    return tuple((i, j) for i in range(d) for j in range(i + 1, d))


def pair_count(d: int) -> int:
    return d * (d - 1) // 2


def cochain_space_dim(kind: str, n: int, d: int, m: int) -> int:
    """Dimension of the (2n)- or (2n+1)-cochain space (n >= 1)."""
    if n < 1:
        raise ValueError("pair count must be at least 1")
    base = pair_count(d) ** n * m
    if kind == "even":
        return base
    if kind == "odd":
        return base * d
    raise ValueError("kind must be 'even' or 'odd'")


class _PairCochain:
    """Shared machinery: a dict from canonical keys to module vectors.

    Zero values are never stored, so evaluation of an absent key is a
    cheap miss.
    """

    __slots__ = ("n", "d", "m", "data", "_pairs", "_pair_pos")
    free_slots = 0

    def __init__(self, n: int, d: int, m: int, data: dict | None = None):
        if n < 1:
            raise ValueError("pair count must be at least 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)
        pairs = canonical_pairs(d)
        object.__setattr__(self, "_pairs", pairs)
        object.__setattr__(self, "_pair_pos", {p: k for k, p in enumerate(pairs)})
        clean = {}
        if data:
            for key, val in data.items():
                val = tuple(val)
                if len(val) != m:
                    raise ValueError("value length must equal module dimension")
                if not vec_is_zero(val):
                    clean[tuple(key)] = val
        object.__setattr__(self, "data", clean)

    def __setattr__(self, name, value):
        raise AttributeError("cochains are immutable")

    @property
    def arity(self) -> int:
        return 2 * self.n + self.free_slots

    def _resolve(self, args):
        """(sign, key) for a basis-argument tuple, or None when a pair repeats."""
        sign = 1
        key = []
        for k in range(self.n):
            a, b = args[2 * k], args[2 * k + 1]
            if a == b:
                return None
            if a > b:
                a, b = b, a
                sign = -sign
            key.append(self._pair_pos[(a, b)])
        if self.free_slots:
            key.append(args[2 * self.n])
        return sign, tuple(key)

    def evaluate(self, args) -> tuple:
        """Value on a tuple of basis indices, with the pair-skew sign rule."""
        if len(args) != self.arity:
            raise ValueError("argument count does not match cochain arity")
        hit = self._resolve(args)
        if hit is None:
            return zero_vector(self.m)
        sign, key = hit
        val = self.data.get(key)
        if val is None:
            return zero_vector(self.m)
        return val if sign > 0 else tuple(-x for x in val)

    def _evaluate_sparse(self, args):
        """Like evaluate but returns None for zero; internal fast path."""
        hit = self._resolve(args)
        if hit is None:
            return None
        sign, key = hit
        val = self.data.get(key)
        if val is None:
            return None
        return val if sign > 0 else tuple(-x for x in val)

    def evaluate_at_vectors(self, vectors) -> tuple:
        """Full multilinear evaluation on coordinate vectors."""
        if len(vectors) != self.arity:
            raise ValueError("argument count does not match cochain arity")
        out = [ZERO] * self.m
        arity = self.arity
        idx = [0] * arity

        def rec(pos, coeff):
            if pos == arity:
                val = self._evaluate_sparse(tuple(idx))
                if val is not None:
                    for r, v in enumerate(val):
                        if v:
                            out[r] += coeff * v
                return
            for k, a in enumerate(vectors[pos]):
                if a:
                    idx[pos] = k
                    rec(pos + 1, coeff * a)

        from .linalg import ONE

        rec(0, ONE)
        return tuple(out)

    # -- linear structure ----------------------------------------------------

    def _same_shape(self, other):
        if (self.n, self.d, self.m, self.free_slots) != (
            other.n,
            other.d,
            other.m,
            other.free_slots,
        ):
            raise ValueError("cochain shape mismatch")

    def __add__(self, other):
        self._same_shape(other)
        data = dict(self.data)
        for key, val in other.data.items():
            cur = data.get(key)
            data[key] = vec_add(cur, val) if cur is not None else val
        return type(self)(self.n, self.d, self.m, data)

    def __sub__(self, other):
        self._same_shape(other)
        data = dict(self.data)
        for key, val in other.data.items():
            cur = data.get(key)
            data[key] = vec_sub(cur, val) if cur is not None else tuple(-x for x in val)
        return type(self)(self.n, self.d, self.m, data)

    def __neg__(self):
        return type(self)(
            self.n, self.d, self.m, {k: tuple(-x for x in v) for k, v in self.data.items()}
        )

    def scale(self, c):
        if not c:
            return type(self)(self.n, self.d, self.m, {})
        return type(self)(
            self.n, self.d, self.m, {k: vec_scale(c, v) for k, v in self.data.items()}
        )

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and (self.n, self.d, self.m) == (other.n, other.d, other.m)
            and self.data == other.data
        )

    # -- canonical flattening --------------------------------------------------

    def keys_in_order(self):
        pr = range(len(self._pairs))
        if self.free_slots:
            return product(*([pr] * self.n), range(self.d))
        return product(*([pr] * self.n))

    def space_dim(self) -> int:
        base = len(self._pairs) ** self.n * self.m
        return base * self.d if self.free_slots else base

    def to_vec(self) -> tuple:
        out = []
        zero = zero_vector(self.m)
        for key in self.keys_in_order():
            out.extend(self.data.get(key, zero))
        return tuple(out)

    @classmethod
    def from_vec(cls, n: int, d: int, m: int, vec):
        c = cls(n, d, m, {})
        expected = c.space_dim()
        if len(vec) != expected:
            raise ValueError("vector length does not match cochain space dimension")
        data = {}
        pos = 0
        for key in c.keys_in_order():
            chunk = tuple(vec[pos : pos + m])
            pos += m
            if not vec_is_zero(chunk):
                data[key] = chunk
        return cls(n, d, m, data)

    def key_args(self, key) -> tuple:
        """Expand a canonical key back into a tuple of basis arguments."""
        args = []
        for k in range(self.n):
            args.extend(self._pairs[key[k]])
        if self.free_slots:
            args.append(key[self.n])
        return tuple(args)


class EvenCochain(_PairCochain):
    free_slots = 0

    @classmethod
    def zero(cls, n, d, m):
        return cls(n, d, m, {})


class OddCochain(_PairCochain):
    free_slots = 1

    @classmethod
    def zero(cls, n, d, m):
        return cls(n, d, m, {})


class CochainPair:
    """An element of the product of the (2n)- and (2n+1)-cochain spaces."""

    __slots__ = ("f", "g")

    def __init__(self, f: EvenCochain, g: OddCochain):
        if (f.n, f.d, f.m) != (g.n, g.d, g.m):
            raise ValueError("pair components must share n, d, m")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    def __setattr__(self, name, value):
        raise AttributeError("CochainPair is immutable")

    @property
    def n(self):
        return self.f.n

    @property
    def d(self):
        return self.f.d

    @property
    def m(self):
        return self.f.m

    @classmethod
    def zero(cls, n, d, m):
        return cls(EvenCochain.zero(n, d, m), OddCochain.zero(n, d, m))

    def __add__(self, other):
        return CochainPair(self.f + other.f, self.g + other.g)

    def __sub__(self, other):
        return CochainPair(self.f - other.f, self.g - other.g)

    def __neg__(self):
        return CochainPair(-self.f, -self.g)

    def scale(self, c):
        return CochainPair(self.f.scale(c), self.g.scale(c))

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def __eq__(self, other):
        return isinstance(other, CochainPair) and self.f == other.f and self.g == other.g

    def to_vec(self) -> tuple:
        return self.f.to_vec() + self.g.to_vec()

    @classmethod
    def from_vec(cls, n, d, m, vec):
        even_dim = cochain_space_dim("even", n, d, m)
        f = EvenCochain.from_vec(n, d, m, vec[:even_dim])
        g = OddCochain.from_vec(n, d, m, vec[even_dim:])
        return cls(f, g)

    @classmethod
    def space_dim(cls, n, d, m) -> int:
        return cochain_space_dim("even", n, d, m) + cochain_space_dim("odd", n, d, m)


class DiagonalCochain:
    """A linear map from the algebra into the module, as an m x d matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("DiagonalCochain is immutable")

    @property
    def d(self):
        return self.matrix.cols

    @property
    def m(self):
        return self.matrix.rows

    @classmethod
    def zero(cls, d, m):
        return cls(Matrix.zero(m, d))

    def value(self, j: int) -> tuple:
        return self.matrix.column(j)

    def apply(self, u) -> tuple:
        return self.matrix.mat_vec(u)

    def __add__(self, other):
        return DiagonalCochain(self.matrix + other.matrix)

    def __sub__(self, other):
        return DiagonalCochain(self.matrix - other.matrix)

    def __neg__(self):
        return DiagonalCochain(-self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other):
        return isinstance(other, DiagonalCochain) and self.matrix == other.matrix

    def to_vec(self) -> tuple:
        out = []
        for j in range(self.d):
            out.extend(self.matrix.column(j))
        return tuple(out)

    @classmethod
    def from_vec(cls, d, m, vec):
        if len(vec) != d * m:
            raise ValueError("vector length does not match map dimensions")
        cols = [tuple(vec[j * m : (j + 1) * m]) for j in range(d)]
        return cls(Matrix.from_columns(cols, m))

    @classmethod
    def space_dim(cls, d, m) -> int:
        return d * m


class MorphismCochain23:
    """A degree-(2,3) cochain for a morphism: (alpha, beta, gamma)."""

    __slots__ = ("alpha", "beta", "gamma")

    def __init__(self, alpha: CochainPair, beta: CochainPair, gamma: DiagonalCochain):
        if alpha.n != 1 or beta.n != 1:
            raise ValueError("morphism cochains at degree (2,3) have n = 1 components")
        if gamma.d != alpha.d or gamma.m != beta.m:
            raise ValueError("gamma must map the source algebra into the target module")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    def __setattr__(self, name, value):
        raise AttributeError("MorphismCochain23 is immutable")

    @classmethod
    def zero(cls, d1, m_v, d2, m_w):
        return cls(
            CochainPair.zero(1, d1, m_v),
            CochainPair.zero(1, d2, m_w),
            DiagonalCochain.zero(d1, m_w),
        )

    def __add__(self, other):
        return MorphismCochain23(
            self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma
        )

    def __sub__(self, other):
        return MorphismCochain23(
            self.alpha - other.alpha, self.beta - other.beta, self.gamma - other.gamma
        )

    def scale(self, c):
        return MorphismCochain23(
            self.alpha.scale(c), self.beta.scale(c), DiagonalCochain(self.gamma.matrix.scale(c))
        )

    def is_zero(self) -> bool:
        return self.alpha.is_zero() and self.beta.is_zero() and self.gamma.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, MorphismCochain23)
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.gamma == other.gamma
        )

    def to_vec(self) -> tuple:
        return self.alpha.to_vec() + self.beta.to_vec() + self.gamma.to_vec()


def pullback_cochain(c, phi):
    """Precompose every argument with phi: (c . phi)(x_1 .. x_k) = c(phi x_1, ...).

    Accepts an EvenCochain, OddCochain or CochainPair over the target
    algebra; the result lives over the source algebra with the same
    module values.
    """
    if isinstance(c, CochainPair):
        return CochainPair(pullback_cochain(c.f, phi), pullback_cochain(c.g, phi))
    if c.d != phi.target.dim:
        raise ValueError("cochain is not over the morphism target")
    d1 = phi.source.dim
    cols = [phi.column(j) for j in range(d1)]
    out = type(c)(c.n, d1, c.m, {})
    data = {}
    for key in out.keys_in_order():
        args = out.key_args(key)
        val = c.evaluate_at_vectors([cols[a] for a in args])
        if not vec_is_zero(val):
            data[key] = val
    return type(c)(c.n, d1, c.m, data)


def postcompose_cochain(c, psi: Matrix):
    """Push every value through a linear map psi on modules."""
    if isinstance(c, CochainPair):
        return CochainPair(postcompose_cochain(c.f, psi), postcompose_cochain(c.g, psi))
    if psi.cols != c.m:
        raise ValueError("psi domain must be the cochain's module")
    data = {}
    for key, val in c.data.items():
        new = psi.mat_vec(val)
        if not vec_is_zero(new):
            data[key] = new
    return type(c)(c.n, c.d, psi.rows, data)
