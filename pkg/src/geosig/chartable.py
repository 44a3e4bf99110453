"""Exact complex character tables.

The table is computed by the modular class-algebra method: the common
eigenvectors of the class matrices are found over a prime field F_p with
p = 1 (mod exponent) and p > 2*sqrt(|G|), and the character values are then
lifted to exact cyclotomic numbers by inverting the discrete Fourier
transform over power maps.  The prime is the smallest qualifying one, the
subspace splitting is performed in a fixed order, and the finished rows are
sorted by (degree, value sequence), so the table is deterministic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .cyclotomic import Cyclo
from .errors import GroupInputError, InternalCheckError
from .groups import FiniteGroup, Perm, Subgroup

SCHUR_COMPUTED = "computed-upper-bound"
SCHUR_OVERRIDE = "user-override"


class SchurIndexWarning(UserWarning):
    """The Schur data looks inconsistent with the Frobenius-Schur indicator."""


@dataclass(frozen=True)
class Character:
    """One irreducible complex character, with a value per conjugacy class."""

    index: int
    values: tuple[Cyclo, ...]
    degree: int

    def value_key(self):
        return tuple(v.coeffs for v in self.values)


@dataclass
class GaloisClass:
    """A Galois orbit of irreducible characters."""

    members: tuple[int, ...]
    representative: int
    fixing_exponents: tuple[int, ...]
    field_degree: int
    schur_index: int
    schur_index_source: str


class CharacterTable:
    """The exact character table of a finite group, with Galois structure."""

    def __init__(self, group: FiniteGroup, characters: Sequence[Character],
                 schur_overrides: Optional[Mapping[int, int]] = None):
        self.group = group
        self.classes = group.conjugacy_classes
        self.characters = tuple(characters)
        self.merged_classes = group.merged_element_classes
        self._value_index = {chi.value_key(): chi.index for chi in self.characters}
        self.galois_classes = self._build_galois_classes(schur_overrides or {})
        r = len(group.cyclic_subgroup_classes)
        if not len(self.galois_classes) == len(self.merged_classes) == r:
            raise InternalCheckError(
                "Galois class count does not match cyclic subgroup classes"
            )

    # -- queries ---------------------------------------------------------

    def value(self, char_index: int, class_index: int) -> Cyclo:
        return self.characters[char_index].values[class_index]

    def class_of(self, g: Perm) -> int:
        return self.group.class_index[g]

    @cached_property
    def trivial_character_index(self) -> int:
        for chi in self.characters:
            if all(v == 1 for v in chi.values):
                return chi.index
        raise InternalCheckError("no trivial character found")

    def fixed_dim(self, chi: Character, H: Subgroup) -> int:
        """dim of the H-fixed subspace: the average of chi over H."""
        counts = [0] * len(self.classes)
        for h in H.members:
            counts[self.group.class_index[h]] += 1
        total = Cyclo.zero(1)
        for idx, n in enumerate(counts):
            if n:
                total = total + chi.values[idx] * n
        dim = (total / H.order).rational_value()
        if dim.denominator != 1 or dim < 0:
            raise InternalCheckError(
                f"fixed-space dimension is not a nonnegative integer: {dim}"
            )
        return int(dim)

    def frobenius_schur_indicator(self, chi: Character) -> int:
        """Average of chi(g^2); -1, 0 or +1 for an irreducible character."""
        total = Cyclo.zero(1)
        for cls in self.classes:
            sq = self.group.class_index[cls.representative ** 2]
            total = total + chi.values[sq] * cls.size
        ind = (total / self.group.order).rational_value()
        if ind.denominator != 1 or ind not in (-1, 0, 1):
            raise InternalCheckError(f"Frobenius-Schur indicator is not in -1..1: {ind}")
        return int(ind)

    def kernel(self, chi: Character) -> Subgroup:
        """Elements where the character reaches its degree; a normal subgroup."""
        members = [
            g for g in self.group.elements
            if chi.values[self.group.class_index[g]] == chi.degree
        ]
        return Subgroup._trusted(self.group, frozenset(members), None, f"ker(chi{chi.index})")

    def galois_class_of(self, char_index: int) -> GaloisClass:
        for gc in self.galois_classes:
            if char_index in gc.members:
                return gc
        raise GroupInputError(f"no character with index {char_index}")

    # -- construction ------------------------------------------------------

    def _power_map_image(self, chi: Character, k: int) -> tuple:
        vals = tuple(
            chi.values[self.group.class_index[cls.representative ** k]]
            for cls in self.classes
        )
        return tuple(v.coeffs for v in vals)

    def _build_galois_classes(self, overrides: Mapping[int, int]) -> tuple[GaloisClass, ...]:
        e = self.group.exponent
        units = [k for k in range(1, e + 1) if math.gcd(k, e) == 1]
        seen: set[int] = set()
        out = []
        for chi in self.characters:
            if chi.index in seen:
                continue
            members = {}
            fixing = []
            for k in units:
                key = self._power_map_image(chi, k)
                if key not in self._value_index:
                    raise InternalCheckError(
                        "power map left the character table; lifting is inconsistent"
                    )
                img = self._value_index[key]
                members[img] = None
                if img == chi.index:
                    fixing.append(k)
            idxs = tuple(sorted(members))
            seen.update(idxs)
            gc = GaloisClass(
                members=idxs,
                representative=idxs[0],
                fixing_exponents=tuple(fixing),
                field_degree=len(idxs),
                schur_index=0,
                schur_index_source=SCHUR_COMPUTED,
            )
            out.append(gc)
        out.sort(key=lambda gc: gc.representative)
        for gc in out:
            override = next(
                (overrides[i] for i in gc.members if i in overrides), None
            )
            if override is not None:
                if override < 1:
                    raise GroupInputError("Schur override must be a positive integer")
                gc.schur_index = override
                gc.schur_index_source = SCHUR_OVERRIDE
            else:
                gc.schur_index = self._schur_upper_bound(self.characters[gc.representative])
                gc.schur_index_source = SCHUR_COMPUTED
            fs = self.frobenius_schur_indicator(self.characters[gc.representative])
            if fs == -1 and gc.schur_index == 1:
                warnings.warn(
                    f"character {gc.representative}: indicator -1 with Schur index 1; "
                    "the real Schur index 2 is then attained",
                    SchurIndexWarning,
                )
        return tuple(out)

    def _schur_upper_bound(self, chi: Character) -> int:
        """gcd of the nonzero multiplicities of chi in 1-inductions from cyclic subgroups.

        The true Schur index divides this bound; it is exact on every group
        in the verified list.
        """
        vals = []
        for cls in self.group.cyclic_subgroup_classes:
            m = self.fixed_dim(chi, cls.representative)
            if m:
                vals.append(m)
        return math.gcd(*vals)

    # -- rendering ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "group": {
                "name": self.group.name,
                "order": self.group.order,
                "exponent": self.group.exponent,
                "degree": self.group.degree,
                "hash": self.group.digest,
            },
            "classes": [
                {
                    "representative": str(c.representative),
                    "size": c.size,
                    "element_order": c.element_order,
                }
                for c in self.classes
            ],
            "characters": [
                {
                    "index": chi.index,
                    "degree": chi.degree,
                    "values": [v.to_json() for v in chi.values],
                    "frobenius_schur": self.frobenius_schur_indicator(chi),
                }
                for chi in self.characters
            ],
            "galois_classes": [
                {
                    "members": list(gc.members),
                    "field_degree": gc.field_degree,
                    "schur_index": gc.schur_index,
                    "schur_index_source": gc.schur_index_source,
                }
                for gc in self.galois_classes
            ],
        }

    def render_text(self) -> str:
        headers = ["", *(str(c.representative) for c in self.classes)]
        rows = [headers, ["size", *(str(c.size) for c in self.classes)],
                ["order", *(str(c.element_order) for c in self.classes)]]
        for chi in self.characters:
            rows.append([f"chi{chi.index}", *(str(v) for v in chi.values)])
        widths = [max(len(r[i]) for r in rows) for i in range(len(headers))]
        lines = [
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows
        ]
        lines.insert(3, "-" * len(lines[0]))
        lines.append("")
        for gc in self.galois_classes:
            members = ", ".join(f"chi{i}" for i in gc.members)
            lines.append(
                f"galois class [{members}]  field degree {gc.field_degree}  "
                f"schur index {gc.schur_index} ({gc.schur_index_source})"
            )
        return "\n".join(lines)


def schur_bound_is_verified(group: FiniteGroup) -> bool:
    """True for groups where the computed Schur bound is known to be exact."""
    name = group.name or ""
    if name in ("quaternion8", "wc3"):
        return True
    family = name.split("(")[0]
    if family in ("cyclic", "dihedral"):
        return True
    return family in ("symmetric", "alternating") and group.order <= 48


# -- modular linear algebra ---------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _choose_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = set()
    m = p - 1
    q = 2
    while q * q <= m:
        while m % q == 0:
            factors.add(q)
            m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise InternalCheckError(f"no primitive root mod {p}")


def _sqrt_modp(a: int, p: int) -> int:
    """Tonelli-Shanks square root; a must be a quadratic residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise InternalCheckError(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    rows = [row[:] for row in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    rows, pivots = _rref(mat, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for row, pc in zip(rows, pivots):
            vec[pc] = (-row[fc]) % p
        basis.append(vec)
    return basis


def _coords_in_basis(vec: list[int], rows: list[list[int]], pivots: list[int],
                     p: int) -> list[int]:
    """Coordinates of vec in an RREF basis; vec must lie in the span."""
    v = vec[:]
    coords = []
    for row, pc in zip(rows, pivots):
        c = v[pc]
        coords.append(c)
        if c:
            v = [(a - c * b) % p for a, b in zip(v, row)]
    if any(v):
        raise InternalCheckError("vector left the invariant subspace")
    return coords


def _charpoly_modp(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial mod p (ascending coefficients, monic)."""
    n = len(mat)
    h = [row[:] for row in mat]
    # reduce to upper Hessenberg form by a similarity transformation
    for c in range(n - 2):
        pivot = next((r for r in range(c + 1, n) if h[r][c]), None)
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for row in h:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        inv = pow(h[c + 1][c], p - 2, p)
        for r in range(c + 2, n):
            f = h[r][c] * inv % p
            if f:
                h[r] = [(a - f * b) % p for a, b in zip(h[r], h[c + 1])]
                for row in h:
                    row[c + 1] = (row[c + 1] + f * row[r]) % p
    # recurrence over leading principal minors of xI - H
    polys = [[1]]
    for m in range(1, n + 1):
        cur = [0] + polys[m - 1]  # x * p_{m-1}
        diag = h[m - 1][m - 1]
        cur = [
            (a - diag * b) % p
            for a, b in zip(cur, polys[m - 1] + [0])
        ]
        mult = 1
        for i in range(1, m):
            mult = mult * h[m - i][m - i - 1] % p
            if not mult:
                break
            coeff = h[m - i - 1][m - 1] * mult % p
            if coeff:
                prev = polys[m - i - 1]
                cur = [
                    (a - coeff * (prev[j] if j < len(prev) else 0)) % p
                    for j, a in enumerate(cur)
                ]
        polys.append(cur)
    return polys[n]


def _poly_roots_modp(poly: list[int], p: int) -> list[int]:
    return [
        lam for lam in range(p)
        if not _eval_poly(poly, lam, p)
    ]


def _eval_poly(poly: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * x + c) % p
    return acc


# -- table computation ---------------------------------------------------------


def _class_matrix(G: FiniteGroup, i: int) -> list[list[int]]:
    classes = G.conjugacy_classes
    cls_of = G.class_index
    s = len(classes)
    mat = [[0] * s for _ in range(s)]
    for k, cls_k in enumerate(classes):
        rep_k = cls_k.representative
        for x in classes[i].members:
            j = cls_of[x.inverse() * rep_k]
            mat[j][k] += 1
    return mat


def _split_spaces(G: FiniteGroup, p: int) -> list[list[int]]:
    """Common eigenvectors of all class matrices over F_p, one per character."""
    s = len(G.conjugacy_classes)
    spaces: list[tuple[list[list[int]], list[int]]] = [
        _rref([[1 if i == j else 0 for j in range(s)] for i in range(s)], p)
    ]
    for i in range(1, s):
        if all(len(rows) == 1 for rows, _ in spaces):
            break
        mat = [[v % p for v in row] for row in _class_matrix(G, i)]
        refined = []
        for rows, pivots in spaces:
            d = len(rows)
            if d == 1:
                refined.append((rows, pivots))
                continue
            images = [
                [sum(mat[r][c] * vec[c] for c in range(s)) % p for r in range(s)]
                for vec in rows
            ]
            restr_cols = [_coords_in_basis(img, rows, pivots, p) for img in images]
            # restriction matrix: columns are images of basis vectors
            restr = [[restr_cols[j][i2] for j in range(d)] for i2 in range(d)]
            for lam in sorted(_poly_roots_modp(_charpoly_modp(restr, p), p)):
                shifted = [
                    [(restr[a][b] - (lam if a == b else 0)) % p for b in range(d)]
                    for a in range(d)
                ]
                null = _nullspace(shifted, p)
                if not null:
                    continue
                ambient = [
                    [sum(cv * rows[j][c] for j, cv in enumerate(coords)) % p
                     for c in range(s)]
                    for coords in null
                ]
                refined.append(_rref(ambient, p))
        spaces = refined
    if not all(len(rows) == 1 for rows, _ in spaces):
        raise InternalCheckError("class matrices failed to split the class algebra")
    if len(spaces) != s:
        raise InternalCheckError("wrong number of common eigenvectors")
    return [rows[0] for rows, _ in spaces]


def compute_table(G: FiniteGroup,
                  schur_overrides: Optional[Mapping[int, int]] = None) -> CharacterTable:
    """Compute the exact character table of a group of order at most 2000."""
    classes = G.conjugacy_classes
    s = len(classes)
    e = G.exponent
    p = _choose_prime(G.order, e)
    inv_sizes = [pow(cls.size, p - 2, p) for cls in classes]
    inverse_class = [
        G.class_index[cls.representative.inverse()] for cls in classes
    ]
    omegas = _split_spaces(G, p)

    root = pow(_primitive_root(p), (p - 1) // e, p)  # fixed image of zeta_e in F_p
    power_cache: dict[tuple[int, int], int] = {}

    def class_power(j: int, u: int) -> int:
        key = (j, u)
        if key not in power_cache:
            power_cache[key] = G.class_index[classes[j].representative ** u]
        return power_cache[key]

    characters = []
    degrees_sq = 0
    for w in omegas:
        if not w[0]:
            raise InternalCheckError("eigenvector vanishes on the identity class")
        scale = pow(w[0], p - 2, p)
        w = [v * scale % p for v in w]
        norm = sum(w[j] * w[inverse_class[j]] * inv_sizes[j] for j in range(s)) % p
        d2 = G.order * pow(norm, p - 2, p) % p
        r = _sqrt_modp(d2, p)
        degree = min(r, p - r)
        if degree == 0 or degree * degree > G.order:
            raise InternalCheckError("lifted degree out of range")
        degrees_sq += degree * degree
        tvals = [degree * w[j] * inv_sizes[j] % p for j in range(s)]
        values = []
        for j in range(s):
            m = classes[j].element_order
            wm = pow(root, e // m, p)
            inv_m = pow(m, p - 2, p)
            coeffs = []
            for k in range(m):
                total = 0
                for u in range(m):
                    total += tvals[class_power(j, u)] * pow(wm, (-k * u) % m, p)
                coeffs.append(total * inv_m % p)
            if sum(coeffs) != degree:
                raise InternalCheckError("eigenvalue multiplicities do not sum to degree")
            val = Cyclo.zero(m)
            for k, a in enumerate(coeffs):
                if a:
                    val = val + Cyclo.zeta(m, k) * a
            values.append(val.promoted(e) if m != e else val)
        characters.append((degree, values))
    if degrees_sq != G.order:
        raise InternalCheckError("sum of squared degrees does not match the group order")

    characters.sort(key=lambda dv: (dv[0], tuple(v.coeffs for v in dv[1])))
    chars = tuple(
        Character(index=i, values=tuple(vals), degree=deg)
        for i, (deg, vals) in enumerate(characters)
    )
    if len({c.value_key() for c in chars}) != s:
        raise InternalCheckError("duplicate character rows")
    for chi in chars:
        norm = Cyclo.zero(1)
        for j, cls in enumerate(classes):
            norm = norm + chi.values[j] * chi.values[j].conjugate() * cls.size
        if norm != G.order:
            raise InternalCheckError(f"character {chi.index} fails self-orthogonality")
    return CharacterTable(G, chars, schur_overrides)
