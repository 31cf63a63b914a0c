"""Three-dimensional differential calculus on the fuzzy sphere.

The calculus has a central Grassmann basis of 1-forms s1, s2, s3 commuting
with the algebra ([s^i, x_j] = 0) and

    d x_i = eps_ijk x_j s^k,
    d s^i = -(1/2) eps_ijk s^j ^ s^k,
    s^i ^ s^j = -s^j ^ s^i,

with the top degree Omega^3 = A.(s1^s2^s3) retained.  The calculus is inner
in degree 0: d a = theta a - a theta with theta = (1/(2 i lp)) x_i s^i.

``DiffForm`` holds one homogeneous degree k in {0,1,2,3} as a map from
sorted index tuples to algebra coefficients (coefficients on the left, which
is no restriction since the basis is central).  ``TensorForm`` holds
elements of Omega^k (x)_A Omega^1 for k in {1,2}.
"""

from __future__ import annotations

from .scalars import ParamScalar, ONE, I, LP
from .algebra import AlgElem

__all__ = [
    "DiffForm", "TensorForm", "d", "wedge", "tensor",
    "theta", "s_from_dx", "partials", "s_basis", "EPS", "eps3",
]

# Levi-Civita symbol, 0-indexed: EPS[i][j][k]
EPS = tuple(
    tuple(
        tuple(
            (1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else
             -1 if (i, j, k) in ((0, 2, 1), (2, 1, 0), (1, 0, 2)) else 0)
            for k in range(3))
        for j in range(3))
    for i in range(3))


def eps3(i, j, k):
    """Levi-Civita symbol with 1-based indices."""
    return EPS[i - 1][j - 1][k - 1]


_DEGREE_KEYS = {
    0: ((),),
    1: ((1,), (2,), (3,)),
    2: ((1, 2), (1, 3), (2, 3)),
    3: ((1, 2, 3),),
}


def _merge(left, right):
    """Sorted merge of two strictly increasing index tuples.

    Returns (key, sign) or None if an index repeats.
    """
    if set(left) & set(right):
        return None
    merged = tuple(sorted(left + right))
    # parity of the permutation that sorts left + right
    seq = left + right
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq))
        if seq[i] > seq[j])
    return merged, (-1 if inversions % 2 else 1)


def _coerce_coeff(c):
    if isinstance(c, AlgElem):
        return c
    return AlgElem.scalar(c)


class DiffForm:
    """Homogeneous differential form of degree 0..3."""

    __slots__ = ("degree", "components")

    def __init__(self, degree, components=None):
        if degree not in (0, 1, 2, 3):
            raise ValueError(f"form degree must be 0..3, got {degree}")
        self.degree = degree
        comps = {}
        if components:
            valid = _DEGREE_KEYS[degree]
            for key, coeff in components.items():
                key = tuple(key)
                if key not in valid:
                    raise ValueError(f"bad degree-{degree} index key {key}")
                coeff = _coerce_coeff(coeff)
                if coeff:
                    comps[key] = coeff
        self.components = comps

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, degree=0):
        return cls(degree)

    @classmethod
    def from_alg(cls, a):
        return cls(0, {(): _coerce_coeff(a)})

    # -- structure ---------------------------------------------------------
    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def component(self, *key):
        return self.components.get(tuple(key), AlgElem.zero())

    # -- linear structure -----------------------------------------------
    def _check_same_degree(self, other):
        if self.degree != other.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        self._check_same_degree(other)
        out = dict(self.components)
        for key, c in other.components.items():
            s = out.get(key, AlgElem.zero()) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return DiffForm(self.degree, out)

    def __sub__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DiffForm(self.degree,
                        {k: -v for k, v in self.components.items()})

    def __mul__(self, other):
        """Right multiplication by an algebra element or scalar."""
        if isinstance(other, DiffForm):
            return NotImplemented
        o = _coerce_coeff(other)
        return DiffForm(self.degree,
                        {k: v * o for k, v in self.components.items()})

    def __rmul__(self, other):
        """Left multiplication by an algebra element or scalar."""
        o = _coerce_coeff(other)
        return DiffForm(self.degree,
                        {k: o * v for k, v in self.components.items()})

    # -- calculus ------------------------------------------------------------
    def wedge(self, other):
        if not isinstance(other, DiffForm):
            raise TypeError("wedge expects a DiffForm")
        deg = self.degree + other.degree
        if deg > 3:
            return DiffForm(3)
        out = DiffForm(deg)
        acc = {}
        for kl, cl in self.components.items():
            for kr, cr in other.components.items():
                m = _merge(kl, kr)
                if m is None:
                    continue
                key, sign = m
                coeff = cl * cr if sign > 0 else -(cl * cr)
                cur = acc.get(key)
                acc[key] = coeff if cur is None else cur + coeff
        return DiffForm(deg, acc)

    def star(self):
        """Graded star; every basis wedge monomial is star-fixed, so this
        conjugates coefficients componentwise."""
        return DiffForm(self.degree,
                        {k: v.star() for k, v in self.components.items()})

    # -- comparison / rendering ---------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self.degree == other.degree \
            and self.components == other.components

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for key in sorted(self.components):
            basis = "^".join(f"s{i}" for i in key) if key else "1"
            parts.append(f"({self.components[key]}) {basis}")
        return " + ".join(parts)

    __repr__ = __str__


def s_basis(i):
    """The central basis 1-form s^i."""
    if i not in (1, 2, 3):
        raise ValueError(f"basis index must be 1, 2 or 3, got {i}")
    return DiffForm(1, {(i,): AlgElem.one()})


def wedge(a, b):
    return a.wedge(b)


def _dx(g):
    """d x_g = eps_gjk x_j s^k as a 1-form."""
    comps = {}
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            e = eps3(g, j, k)
            if e:
                coeff = AlgElem.generator(j)
                comps[(k,)] = coeff if e > 0 else -coeff
    return DiffForm(1, comps)


_DX = {g: _dx(g) for g in (1, 2, 3)}


def _ds(i):
    """d s^i = -(1/2) eps_ijk s^j ^ s^k."""
    comps = {}
    half = ParamScalar.of(1) / 2
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            e = eps3(i, j, k)
            if not e:
                continue
            m = _merge((j,), (k,))
            key, sign = m
            coeff = AlgElem.scalar(-half * e * sign)
            cur = comps.get(key, AlgElem.zero())
            comps[key] = cur + coeff
    return DiffForm(2, comps)


_DS = {i: _ds(i) for i in (1, 2, 3)}


def _d_monomial(a, b, c):
    """d(x1^a x2^b x3^c) by the Leibniz rule over the generator word."""
    out = DiffForm(1)
    word = (1,) * a + (2,) * b + (3,) * c
    for pos, g in enumerate(word):
        pre = word[:pos]
        post = word[pos + 1:]
        left = AlgElem.monomial(
            (pre.count(1), pre.count(2), pre.count(3)))
        right = AlgElem.monomial(
            (post.count(1), post.count(2), post.count(3)))
        out = out + left * _DX[g] * right
    return out


def d(form):
    """Exterior derivative.  Accepts an AlgElem (degree 0) or a DiffForm."""
    if isinstance(form, AlgElem):
        form = DiffForm.from_alg(form)
    if not isinstance(form, DiffForm):
        raise TypeError("d expects an AlgElem or DiffForm")
    if form.degree == 3:
        return DiffForm(3)  # top degree: d vanishes identically
    if form.degree == 0:
        out = DiffForm(1)
        a = form.components.get((), AlgElem.zero())
        for (ka, kb, kc), q in a.terms.items():
            out = out + q * _d_monomial(ka, kb, kc)
        return out
    # graded Leibniz: d(a s^I) = (d a) ^ s^I + a d(s^I)
    out = DiffForm(form.degree + 1)
    for key, coeff in form.components.items():
        basis = DiffForm(form.degree, {key: AlgElem.one()})
        out = out + d(coeff).wedge(basis)
        out = out + coeff * _d_basis(key)
    return out


def _d_basis(key):
    """d of a basis wedge monomial s^{i1} ^ ... (graded Leibniz on _DS)."""
    n = len(key)
    if n == 1:
        return _DS[key[0]]
    out = DiffForm(n + 1)
    for pos, i in enumerate(key):
        rest_pre = key[:pos]
        rest_post = key[pos + 1:]
        sign = -1 if pos % 2 else 1
        term = _DS[i]
        if rest_pre:
            term = DiffForm(len(rest_pre),
                            {rest_pre: AlgElem.one()}).wedge(term)
        if rest_post:
            term = term.wedge(
                DiffForm(len(rest_post), {rest_post: AlgElem.one()}))
        out = out + (term if sign > 0 else -term)
    return out


def theta():
    """The inner 1-form theta = (1/(2 i lp)) x_i s^i."""
    scale = ONE / (2 * I * LP)
    comps = {(i,): AlgElem.monomial(
        tuple(1 if j == i else 0 for j in (1, 2, 3)), scale)
        for i in (1, 2, 3)}
    return DiffForm(1, comps)


def s_from_dx(l):
    """Reconstruct s^l from the exact 1-forms d x_i:

    s^l = (1/(1-lp^2)) [ (1/(2 i lp)) x_l x_i d x_i + eps_lim (d x_i) x_m ].
    """
    if l not in (1, 2, 3):
        raise ValueError(f"index must be 1, 2 or 3, got {l}")
    xl = AlgElem.generator(l)
    inner = DiffForm(1)
    for i in (1, 2, 3):
        inner = inner + (xl * AlgElem.generator(i)) * _DX[i]
    total = (ONE / (2 * I * LP)) * inner
    for i in (1, 2, 3):
        for m in (1, 2, 3):
            e = eps3(l, i, m)
            if not e:
                continue
            term = _DX[i] * AlgElem.generator(m)
            total = total + (term if e > 0 else -term)
    return (ONE / (ONE - LP * LP)) * total


def partials(a):
    """The coefficients (d a)_i of d a = (partial_i a) s^i, as a 3-tuple."""
    da = d(a)
    return tuple(da.component(i) for i in (1, 2, 3))


class TensorForm:
    """Element of Omega^k (x)_A Omega^1 for k in {1, 2}.

    Components map (left_key, right_index) to algebra coefficients.
    """

    __slots__ = ("left_degree", "components")

    def __init__(self, left_degree, components=None):
        if left_degree not in (1, 2):
            raise ValueError(
                f"tensor left degree must be 1 or 2, got {left_degree}")
        self.left_degree = left_degree
        comps = {}
        if components:
            valid = _DEGREE_KEYS[left_degree]
            for (lkey, r), coeff in components.items():
                lkey = tuple(lkey)
                if lkey not in valid or r not in (1, 2, 3):
                    raise ValueError(f"bad tensor key {(lkey, r)}")
                coeff = _coerce_coeff(coeff)
                if coeff:
                    comps[(lkey, r)] = coeff
        self.components = comps

    @classmethod
    def zero(cls, left_degree=1):
        return cls(left_degree)

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def component(self, left_key, right_index):
        return self.components.get(
            (tuple(left_key), right_index), AlgElem.zero())

    def __add__(self, other):
        if not isinstance(other, TensorForm):
            return NotImplemented
        if self.left_degree != other.left_degree:
            raise ValueError("tensor degree mismatch")
        out = dict(self.components)
        for key, c in other.components.items():
            s = out.get(key, AlgElem.zero()) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return TensorForm(self.left_degree, out)

    def __sub__(self, other):
        if not isinstance(other, TensorForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorForm(self.left_degree,
                          {k: -v for k, v in self.components.items()})

    def __rmul__(self, other):
        o = _coerce_coeff(other)
        return TensorForm(self.left_degree,
                          {k: o * v for k, v in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorForm):
            return NotImplemented
        return self.left_degree == other.left_degree \
            and self.components == other.components

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for (lkey, r) in sorted(self.components):
            basis = "^".join(f"s{i}" for i in lkey)
            parts.append(f"({self.components[(lkey, r)]}) {basis}(x)s{r}")
        return " + ".join(parts)

    __repr__ = __str__


def tensor(omega, eta):
    """omega (x) eta for omega of degree 1 or 2 and eta of degree 1."""
    if not isinstance(omega, DiffForm) or not isinstance(eta, DiffForm):
        raise TypeError("tensor expects DiffForm arguments")
    if eta.degree != 1:
        raise ValueError("right tensor factor must be a 1-form")
    if omega.degree not in (1, 2):
        raise ValueError("left tensor factor must have degree 1 or 2")
    out = {}
    for lkey, cl in omega.components.items():
        for (r,), cr in eta.components.items():
            coeff = cl * cr
            if coeff:
                cur = out.get((lkey, r))
                out[(lkey, r)] = coeff if cur is None else cur + coeff
    return TensorForm(omega.degree, out)
