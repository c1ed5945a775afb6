"""Type R_2 for finite abelian groups: the closed-form test and a brute-force
check over every faithful diagonal representation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cyclic import factorize, hermite_basis, lattice_index
from .errors import ValidationError
from .exact import lcm, zeta
from .invariant import singularity_of_group
from .matgrp import DEFAULT_MAX_ORDER, Mat2, generate


@dataclass(frozen=True)
class AbelianGroup:
    """C_{s1} x ... x C_{sk} with s1 | s2 | ... | sk and every s_i >= 2."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(s) for s in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for s in fs:
            if s < 2:
                raise ValidationError(f"invariant factors must be >= 2, got {s}")
        for s, t in zip(fs, fs[1:]):
            if t % s:
                raise ValidationError(f"invariant factors {fs} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, orders) -> AbelianGroup:
        """Normalize a product of cyclic groups, e.g. C6 x C4 -> C2 x C12."""
        powers: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise ValidationError(f"cyclic factor orders must be positive, got {n}")
            for p, e in factorize(n).items():
                powers.setdefault(p, []).append(p**e)
        rank = max((len(v) for v in powers.values()), default=0)
        factors = [1] * rank
        for v in powers.values():
            v.sort(reverse=True)
            for i, q in enumerate(v):
                factors[rank - 1 - i] *= q
        return cls(tuple(factors))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for s in self.invariant_factors:
            out *= s
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __str__(self) -> str:
        return " x ".join(f"C{s}" for s in self.invariant_factors) or "1"


def is_R2_abelian(g: AbelianGroup) -> bool:
    """False exactly for C_a x C_2ab (a, b >= 1), in invariant-factor form."""
    if g.rank > 2:
        return True
    s, t = (1, 1) if g.rank == 0 else ((1,) + g.invariant_factors)[-2:]
    return not (t % s == 0 and (t // s) % 2 == 0)


Character = tuple[int, ...]
Pair = tuple[Character, Character]


def _image_lattice(g: AbelianGroup, pair: Pair):
    """Hermite basis of the preimage in Z^2 of the image of g in (Z/E)^2."""
    e = g.exponent
    vecs = [(e, 0), (0, e)]
    for i, s in enumerate(g.invariant_factors):
        vecs.append((pair[0][i] * (e // s), pair[1][i] * (e // s)))
    return hermite_basis(vecs)


def _is_faithful(g: AbelianGroup, pair: Pair) -> bool:
    e = g.exponent
    return e * e // lattice_index(_image_lattice(g, pair)) == g.order


def _characters(g: AbelianGroup):
    chars = [()]
    for s in g.invariant_factors:
        chars = [c + (w,) for c in chars for w in range(s)]
    return chars


def faithful_diagonal_reps(g: AbelianGroup) -> list[Pair]:
    """Ordered character pairs (chi1, chi2) with trivial joint kernel.

    A character is its tuple of weights w_i, meaning gen_i -> zeta_{s_i}^{w_i}.
    """
    if g.rank > 2:
        return []
    chars = _characters(g)
    return [(a, b) for a in chars for b in chars if _is_faithful(g, (a, b))]


def diagonal_generators(g: AbelianGroup, pair: Pair) -> list[Mat2]:
    e = g.exponent
    conductor = lcm(e, 2)
    step = conductor // e
    gens = []
    for i, s in enumerate(g.invariant_factors):
        k = e // s
        gens.append(Mat2.diag(zeta(conductor, pair[0][i] * k * step), zeta(conductor, pair[1][i] * k * step)))
    return gens or [Mat2.identity(conductor)]


def is_R2_abelian_bruteforce(g: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    """Run the group pipeline on every faithful diagonal representation.

    Representations with the same image group give the same matrix group, so
    each image is analysed once.
    """
    if g.rank > 2:
        return True
    seen = set()
    for pair in faithful_diagonal_reps(g):
        key = _image_lattice(g, pair)
        if key in seen:
            continue
        seen.add(key)
        gens = diagonal_generators(g, pair)
        grp = generate(gens, max_order=max_order, conductor=gens[0].conductor)
        if grp.order != g.order:
            raise ValidationError(f"representation {pair} is not faithful")  # pragma: no cover
        if not singularity_of_group(grp).type_r:
            return False
    return True


def abelian_groups_up_to(n: int, max_rank: int = 2) -> list[AbelianGroup]:
    """All abelian groups of order <= n and rank <= max_rank (rank <= 2 supported)."""
    out = [AbelianGroup(())]
    for t in range(2, n + 1):
        out.append(AbelianGroup((t,)))
    if max_rank >= 2:
        for s in range(2, n + 1):
            for t in range(s, n // s + 1, s):
                out.append(AbelianGroup((s, t)))
    return out


__all__ = [
    "AbelianGroup",
    "abelian_groups_up_to",
    "diagonal_generators",
    "faithful_diagonal_reps",
    "is_R2_abelian",
    "is_R2_abelian_bruteforce",
]
