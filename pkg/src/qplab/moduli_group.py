"""The Klein four group W of P^1 involutions and its normalizer.

Mobius maps are 2x2 matrices over Q(i) up to scalars. W = {1, w1, w2, w3}
with w1: x -> -x, w2: x -> 1/x, w3 = w1 o w2: x -> -1/x. Adding a
transposition and a 3-cycle of the w_i generates a group of order 24 that
acts on W by conjugation through all of S3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CapExceeded, SingularMobius
from .exactmath import GaussianRational, I
from .report import CheckReport


def _g(v) -> GaussianRational:
    return GaussianRational.coerce(v)


@dataclass(frozen=True, init=False)
class MobiusMap:
    """x -> (m11 x + m12) / (m21 x + m22), scaled so the first nonzero entry is 1."""

    m11: GaussianRational
    m12: GaussianRational
    m21: GaussianRational
    m22: GaussianRational

    def __init__(self, m11, m12, m21, m22):
        entries = [_g(m11), _g(m12), _g(m21), _g(m22)]
        if entries[0] * entries[3] - entries[1] * entries[2] == 0:
            raise SingularMobius(f"singular matrix {[str(e) for e in entries]}")
        lead = next(e for e in entries if e)
        inv = lead.inverse()
        for name, e in zip(("m11", "m12", "m21", "m22"), entries):
            object.__setattr__(self, name, e * inv)

    @classmethod
    def from_rows(cls, rows) -> MobiusMap:
        (p, q), (r, s) = rows
        return cls(p, q, r, s)

    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self o other (apply ``other`` first)."""
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __matmul__ = compose

    def inverse(self) -> MobiusMap:
        a, b, c, d = self.entries()
        return MobiusMap(d, -b, -c, a)

    def __call__(self, z):
        """Image of a point of Q(i); None stands for infinity."""
        a, b, c, d = self.entries()
        if z is None:
            return None if c == 0 else a / c
        z = _g(z)
        den = c * z + d
        if den == 0:
            return None
        return (a * z + b) / den

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*map(str, self.entries()))


def mobius_compose(f: MobiusMap, g: MobiusMap) -> MobiusMap:
    return f.compose(g)


IDENTITY = MobiusMap(1, 0, 0, 1)
OMEGA1 = MobiusMap(-1, 0, 0, 1)
OMEGA2 = MobiusMap(0, 1, 1, 0)
OMEGA3 = OMEGA1 @ OMEGA2
OMEGAS = (OMEGA1, OMEGA2, OMEGA3)
G_TRANSPOSITION = MobiusMap(1, 1, 1, -1)
G_THREE_CYCLE = MobiusMap(1, -I, 1, I)


def generate_group(generators, cap: int = 100) -> frozenset[MobiusMap]:
    """Closure of ``generators`` under composition (breadth-first)."""
    gens = list(generators)
    group = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = g @ h
                if k not in group:
                    group.add(k)
                    if len(group) > cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
                    nxt.append(k)
        frontier = nxt
    return frozenset(group)


def conjugation_permutation(h: MobiusMap):
    """Permutation of (w1, w2, w3) induced by w -> h w h^-1, or None if h does not normalize W."""
    inv = h.inverse()
    images = []
    for w in OMEGAS:
        conj = h @ w @ inv
        if conj not in OMEGAS:
            return None
        images.append(OMEGAS.index(conj))
    return tuple(images)


def verify_normalizer_relations() -> CheckReport:
    """Check the generator relations and the S4 = W x| S3 structure."""
    g, t = G_TRANSPOSITION, G_THREE_CYCLE
    w1, w2, w3 = OMEGAS
    relations = {
        "w3 = w1 o w2": OMEGA3 == MobiusMap(0, -1, 1, 0),
        "(12): g w1 = w2 g": g @ w1 == w2 @ g,
        "(12): g w2 = w1 g": g @ w2 == w1 @ g,
        "(12): g w3 = w3 g": g @ w3 == w3 @ g,
        "(123): g w2 = w3 g": t @ w2 == w3 @ t,
        "(123): g w3 = w1 g": t @ w3 == w1 @ t,
        "(123): g w1 = w2 g": t @ w1 == w2 @ t,
    }
    W = generate_group(OMEGAS)
    group = generate_group([w1, w2, g, t])
    perms = {h: conjugation_permutation(h) for h in group}
    normalizes = all(p is not None for p in perms.values())
    kernel = {h for h, p in perms.items() if p == (0, 1, 2)}
    image = {p for p in perms.values() if p is not None}
    abelian = all(x @ y == y @ x for x in group for y in group)
    center = {z for z in group if all(z @ y == y @ z for y in group)}

    details = {
        "relations": {k: bool(v) for k, v in relations.items()},
        "order_W": len(W),
        "order": len(group),
        "normalizes_W": normalizes,
        "kernel_order": len(kernel),
        "kernel_is_W": kernel == set(W),
        "image_order": len(image),
        "image_is_S3": image == set(permutations(range(3))),
        "abelian": abelian,
        "center_order": len(center),
    }
    passed = (
        all(relations.values())
        and len(W) == 4
        and len(group) == 24
        and normalizes
        and kernel == set(W)
        and image == set(permutations(range(3)))
        and not abelian
        and len(center) == 1
    )
    return CheckReport("normalizer_relations", passed, details, difference="0" if passed else "structure mismatch")
