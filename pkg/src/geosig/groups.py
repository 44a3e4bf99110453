"""Exact finite-permutation-group engine.

Elements are permutations of {0..n-1} stored as image tuples and composed
left to right: (g * h)(p) = h(g(p)), so the word x*a^2 acts by x first.
Cycle notation in input and output is 1-based.  Permutations order
lexicographically by image tuple, which puts the identity first and makes
every derived listing (element lists, class representatives, transversals)
deterministic.
"""

from __future__ import annotations

import hashlib
import math
import re
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import GroupInputError, InternalCheckError

MAX_GROUP_ORDER = 2000


@total_ordering
class Perm:
    """A permutation of {0..degree-1}; immutable and hashable."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        n = len(image)
        if n == 0:
            raise GroupInputError("a permutation needs degree at least 1")
        seen = [False] * n
        for v in image:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise GroupInputError(f"not a permutation of 0..{n - 1}: {image!r}")
            seen[v] = True
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        """Build from 1-based cycles, applied left to right; fixed points omitted."""
        img = list(range(degree))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise GroupInputError(f"repeated point in cycle {tuple(cyc)}")
            step = list(range(degree))
            for i, p in enumerate(cyc):
                q = cyc[(i + 1) % len(cyc)]
                if not (1 <= p <= degree and 1 <= q <= degree):
                    raise GroupInputError(
                        f"cycle point out of range 1..{degree}: {tuple(cyc)}"
                    )
                step[p - 1] = q - 1
            img = [step[v] for v in img]
        return cls(img)

    @classmethod
    def parse(cls, degree: int, text: str) -> "Perm":
        """Parse disjoint-cycle notation like "(1,2,3)(4,5)"; "()" is the identity."""
        s = text.replace(" ", "")
        if s in ("()", "e", "id", "1"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", s):
            raise GroupInputError(f"bad cycle notation: {text!r}")
        cycles = [
            [int(p) for p in part.split(",")] for part in re.findall(r"\(([\d,]+)\)", s)
        ]
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.image)

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise GroupInputError("cannot compose permutations of different degree")
        o = other.image
        return Perm(o[v] for v in self.image)

    def inverse(self) -> "Perm":
        img = [0] * len(self.image)
        for p, q in enumerate(self.image):
            img[q] = p
        return Perm(img)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        acc = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __call__(self, point: int) -> int:
        return self.image[point]

    def is_identity(self) -> bool:
        return all(v == p for p, v in enumerate(self.image))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, 1-based, each starting at its least point, sorted."""
        seen = [False] * len(self.image)
        out = []
        for start in range(len(self.image)):
            if seen[start] or self.image[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            p = self.image[start]
            while p != start:
                cyc.append(p)
                seen[p] = True
                p = self.image[p]
            out.append(tuple(q + 1 for q in cyc))
        return tuple(sorted(out))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Perm[{self}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.image == other.image

    def __lt__(self, other: "Perm") -> bool:
        return self.image < other.image

    def __hash__(self) -> int:
        return hash(self.image)


def conj(t: Perm, g: Perm) -> Perm:
    """g conjugated by t, i.e. t * g * t^-1."""
    return t * g * t.inverse()


def _closure(degree: int, generators: Sequence[Perm], cap: int) -> list[Perm]:
    ident = Perm.identity(degree)
    elems = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in elems:
                    if len(elems) >= cap:
                        raise GroupInputError(
                            f"group order exceeds the supported cap of {cap} elements"
                        )
                    elems.add(b)
                    fresh.append(b)
        frontier = fresh
    return sorted(elems)


class FiniteGroup:
    """A finite permutation group with its full, canonically ordered element list."""

    def __init__(
        self,
        degree: int,
        generators: Sequence[Perm] = (),
        named_generators: Optional[Mapping[str, Perm]] = None,
        name: Optional[str] = None,
    ):
        if degree < 1:
            raise GroupInputError("degree must be at least 1")
        named = dict(named_generators or {})
        gens = tuple(generators) if generators else tuple(named.values())
        for g in gens:
            if g.degree != degree:
                raise GroupInputError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
        for label, g in named.items():
            if g not in gens:
                raise GroupInputError(f"named generator {label!r} not in generator list")
        self.degree = degree
        self.generators = gens
        self.named_generators = named
        self.name = name
        self.elements: tuple[Perm, ...] = tuple(_closure(degree, gens, MAX_GROUP_ORDER))
        self.order = len(self.elements)
        self.identity = Perm.identity(degree)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def __repr__(self) -> str:
        label = self.name or f"degree-{self.degree} group"
        return f"FiniteGroup({label}, order={self.order})"

    @cached_property
    def _index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index_of(self, g: Perm) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise GroupInputError(f"element {g} is not in the group") from None

    @cached_property
    def exponent(self) -> int:
        exp = math.lcm(*(g.order() for g in self.elements))
        if self.order % exp:
            raise InternalCheckError("group exponent does not divide the order")
        return exp

    @cached_property
    def digest(self) -> str:
        blob = f"{self.degree}|" + ";".join(
            ",".join(map(str, g.image)) for g in self.elements
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    # -- subgroups ---------------------------------------------------------

    def subgroup(self, generators: Sequence[Perm], label: Optional[str] = None) -> "Subgroup":
        return Subgroup.generated(self, generators, label=label)

    def subgroup_from_words(self, words: Sequence[str], label: Optional[str] = None) -> "Subgroup":
        gens = [self.element(w) for w in words]
        return Subgroup.generated(self, gens, label=label or ",".join(words))

    @cached_property
    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup.generated(self, (), label="e")

    @cached_property
    def full_subgroup(self) -> "Subgroup":
        return Subgroup._trusted(self, frozenset(self.elements), self.generators, "G")

    # -- conjugacy structure -----------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> tuple["ElementClass", ...]:
        """Element classes ordered by (element order, class size, representative)."""
        seen: set[Perm] = set()
        raw = []
        for g in self.elements:
            if g in seen:
                continue
            orbit = {g}
            stack = [g]
            while stack:
                h = stack.pop()
                for t in self.generators:
                    c = conj(t, h)
                    if c not in orbit:
                        orbit.add(c)
                        stack.append(c)
            seen |= orbit
            raw.append(tuple(sorted(orbit)))
        raw.sort(key=lambda mem: (mem[0].order(), len(mem), mem[0].image))
        return tuple(ElementClass(mem[0], mem) for mem in raw)

    @cached_property
    def class_index(self) -> dict[Perm, int]:
        out = {}
        for i, cls in enumerate(self.conjugacy_classes):
            for g in cls.members:
                out[g] = i
        return out

    @cached_property
    def cyclic_subgroup_classes(self) -> tuple["ConjugacyClassOfSubgroups", ...]:
        """All cyclic subgroups up to conjugacy, trivial subgroup included."""
        sets: dict[frozenset[Perm], Perm] = {}
        for g in self.elements:
            members = [self.identity]
            h = g
            while not h.is_identity():
                members.append(h)
                h = h * g
            sets.setdefault(frozenset(members), g)
        assigned: dict[frozenset[Perm], int] = {}
        classes = []
        for base in sorted(sets, key=lambda s: sorted(p.image for p in s)):
            if base in assigned:
                continue
            orbit = {base}
            stack = [base]
            while stack:
                cur = stack.pop()
                for t in self.generators:
                    img = frozenset(conj(t, h) for h in cur)
                    if img not in orbit:
                        orbit.add(img)
                        stack.append(img)
            rep_set = min(orbit, key=lambda s: sorted(p.image for p in s))
            gen = min(h for h in rep_set if h.order() == len(rep_set))
            rep = Subgroup._trusted(self, rep_set, (gen,), str(gen))
            cls = ConjugacyClassOfSubgroups(rep, len(orbit), frozenset(orbit))
            idx = len(classes)
            classes.append(cls)
            for member in orbit:
                assigned[member] = idx
        classes.sort(
            key=lambda c: (
                c.order,
                c.class_size,
                sorted(p.image for p in c.representative.members),
            )
        )
        self._cyclic_class_of_set = {
            s: i for i, c in enumerate(classes) for s in c.member_sets
        }
        return tuple(classes)

    def cyclic_class_index(self, sub: "Subgroup") -> int:
        """Index of the cyclic-subgroup class containing sub."""
        self.cyclic_subgroup_classes
        try:
            return self._cyclic_class_of_set[sub.members]
        except KeyError:
            raise GroupInputError(f"subgroup {sub.label or ''} is not cyclic") from None

    @cached_property
    def merged_element_classes(self) -> tuple["MergedElementClass", ...]:
        """Elements fused by conjugacy of generated cyclic subgroups, one per cyclic class."""
        classes = self.cyclic_subgroup_classes
        buckets: list[list[Perm]] = [[] for _ in classes]
        for g in self.elements:
            members = [self.identity]
            h = g
            while not h.is_identity():
                members.append(h)
                h = h * g
            buckets[self._cyclic_class_of_set[frozenset(members)]].append(g)
        return tuple(
            MergedElementClass(min(b), tuple(sorted(b))) for b in buckets
        )

    def subgroup_class(self, sub: "Subgroup") -> "ConjugacyClassOfSubgroups":
        """Conjugacy class of an arbitrary subgroup (computed fresh unless cyclic)."""
        if sub.is_cyclic:
            return self.cyclic_subgroup_classes[self.cyclic_class_index(sub)]
        orbit = {sub.members}
        stack = [sub.members]
        while stack:
            cur = stack.pop()
            for t in self.generators:
                img = frozenset(conj(t, h) for h in cur)
                if img not in orbit:
                    orbit.add(img)
                    stack.append(img)
        rep_set = min(orbit, key=lambda s: sorted(p.image for p in s))
        rep = sub if sub.members == rep_set else Subgroup._trusted(self, rep_set, None, None)
        return ConjugacyClassOfSubgroups(rep, len(orbit), frozenset(orbit))

    def are_conjugate_subgroups(self, a: "Subgroup", b: "Subgroup") -> bool:
        if a.order != b.order:
            return False
        return b.members in self.subgroup_class(a).member_sets

    # -- element input -----------------------------------------------------

    def element(self, text: str) -> Perm:
        """Parse an element: cycle notation, or a word in named generators.

        Words multiply left to right and accept optional '*' separators and
        integer exponents, e.g. "xa^2", "x*a^2", "xyab", "x^-1*y".
        """
        s = text.replace(" ", "")
        if not s:
            raise GroupInputError("empty element expression")
        if s.startswith("("):
            g = Perm.parse(self.degree, s)
            if g not in self:
                raise GroupInputError(f"{text!r} is not an element of the group")
            return g
        if s in ("e", "id", "1") and s not in self.named_generators:
            return self.identity
        names = sorted(self.named_generators, key=len, reverse=True)
        acc = self.identity
        i = 0
        while i < len(s):
            if s[i] == "*":
                i += 1
                continue
            for nm in names:
                if s.startswith(nm, i):
                    i += len(nm)
                    break
            else:
                raise GroupInputError(
                    f"cannot read {text!r}: no generator name at ...{s[i:]!r}"
                )
            exp = 1
            if i < len(s) and s[i] == "^":
                m = re.match(r"\^(-?\d+)", s[i:])
                if not m:
                    raise GroupInputError(f"bad exponent in {text!r}")
                exp = int(m.group(1))
                i += m.end()
            acc = acc * (self.named_generators[nm] ** exp)
        return acc


class Subgroup:
    """A subgroup given by its explicit member set inside a parent group."""

    def __init__(self, *_args, **_kwargs):
        raise TypeError("use Subgroup.generated or Subgroup.from_members")

    @classmethod
    def _trusted(cls, parent, members, generators, label) -> "Subgroup":
        self = object.__new__(cls)
        self.parent = parent
        self.members = members
        self.generators = tuple(generators) if generators else None
        self.label = label
        self.order = len(members)
        if parent.order % self.order:
            raise InternalCheckError("subgroup order does not divide group order")
        return self

    @classmethod
    def generated(cls, parent: FiniteGroup, generators: Sequence[Perm],
                  label: Optional[str] = None) -> "Subgroup":
        gens = tuple(generators)
        for g in gens:
            if g not in parent:
                raise GroupInputError(f"generator {g} lies outside the parent group")
        members = frozenset(_closure(parent.degree, gens, parent.order))
        return cls._trusted(parent, members, gens, label)

    @classmethod
    def from_members(cls, parent: FiniteGroup, members: Iterable[Perm],
                     label: Optional[str] = None) -> "Subgroup":
        mem = frozenset(members)
        if not mem:
            raise GroupInputError("a subgroup cannot be empty")
        for g in mem:
            if g not in parent:
                raise GroupInputError(f"member {g} lies outside the parent group")
            if g.inverse() not in mem:
                raise GroupInputError("member set is not closed under inversion")
        for g in mem:
            for h in mem:
                if g * h not in mem:
                    raise GroupInputError("member set is not closed under composition")
        return cls._trusted(parent, mem, None, label)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        return tuple(sorted(self.members))

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def is_cyclic(self) -> bool:
        return any(g.order() == self.order for g in self.members)

    def __contains__(self, g: Perm) -> bool:
        return g in self.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        tag = self.label or "subgroup"
        return f"Subgroup(<{tag}>, order={self.order})"

    def conjugated_by(self, t: Perm) -> "Subgroup":
        return Subgroup._trusted(
            self.parent, frozenset(conj(t, h) for h in self.members), None, None
        )

    def normalizer(self) -> "Subgroup":
        cached = getattr(self, "_normalizer", None)
        if cached is not None:
            return cached
        mem = frozenset(
            t for t in self.parent.elements
            if all(conj(t, h) in self.members for h in self.members)
        )
        tag = f"N({self.label})" if self.label else None
        self._normalizer = Subgroup._trusted(self.parent, mem, None, tag)
        return self._normalizer

    def left_transversal(self) -> tuple[Perm, ...]:
        """One representative per left coset gH, each the least element of its coset."""
        cached = getattr(self, "_transversal", None)
        if cached is not None:
            return cached
        covered: set[Perm] = set()
        reps = []
        for g in self.parent.elements:
            if g in covered:
                continue
            reps.append(g)
            covered.update(g * h for h in self.members)
        if len(reps) != self.index:
            raise InternalCheckError("left transversal has the wrong size")
        self._transversal = tuple(reps)
        return self._transversal


class ElementClass:
    """A conjugacy class of group elements."""

    __slots__ = ("representative", "members")

    def __init__(self, representative: Perm, members: tuple[Perm, ...]):
        self.representative = representative
        self.members = members

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def element_order(self) -> int:
        return self.representative.order()

    def __repr__(self) -> str:
        return f"ElementClass({self.representative}, size={self.size})"


class MergedElementClass:
    """All elements whose generated cyclic subgroup lies in one conjugacy class."""

    __slots__ = ("representative", "members")

    def __init__(self, representative: Perm, members: tuple[Perm, ...]):
        self.representative = representative
        self.members = members

    @property
    def size(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"MergedElementClass({self.representative}, size={self.size})"


class ConjugacyClassOfSubgroups:
    """A conjugacy class of subgroups, held by a canonical representative."""

    def __init__(self, representative: Subgroup, class_size: int,
                 member_sets: frozenset[frozenset[Perm]]):
        self.representative = representative
        self.class_size = class_size
        self.member_sets = member_sets

    @property
    def order(self) -> int:
        return self.representative.order

    @cached_property
    def member_subgroups(self) -> tuple[Subgroup, ...]:
        parent = self.representative.parent
        sets = sorted(self.member_sets, key=lambda s: sorted(p.image for p in s))
        return tuple(Subgroup._trusted(parent, s, None, None) for s in sets)

    def contains_subgroup(self, sub: Subgroup) -> bool:
        return sub.members in self.member_sets

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConjugacyClassOfSubgroups)
            and self.member_sets == other.member_sets
        )

    def __hash__(self) -> int:
        return hash(self.member_sets)

    def __repr__(self) -> str:
        tag = self.representative.label or "?"
        return f"SubgroupClass(<{tag}>, order={self.order}, size={self.class_size})"


# -- double cosets ----------------------------------------------------------


def double_coset_count(G: FiniteGroup, H: Subgroup, K: Subgroup) -> int:
    """|H\\G/K| computed three independent ways; they must agree exactly."""
    if H.parent is not G or K.parent is not G:
        raise GroupInputError("H and K must be subgroups of G")

    # (1) orbits of H on the left cosets gK under left multiplication
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in G.elements:
        if g in coset_of:
            continue
        cid = len(reps)
        reps.append(g)
        for k in K.members:
            coset_of[g * k] = cid
    seen: set[int] = set()
    direct = 0
    for cid, rep in enumerate(reps):
        if cid in seen:
            continue
        direct += 1
        stack = [rep]
        seen.add(cid)
        while stack:
            r = stack.pop()
            for h in H.members:
                c2 = coset_of[h * r]
                if c2 not in seen:
                    seen.add(c2)
                    stack.append(reps[c2])

    # (2) transversal formula over the normalizer of K
    nk = K.normalizer()
    ratio = nk.order // K.order
    total = Fraction(0)
    for ell in nk.left_transversal():
        inter = sum(1 for k in K.members if conj(ell, k) in H.members)
        total += Fraction(ratio * inter, H.order)
    if total.denominator != 1:
        raise InternalCheckError("transversal double-coset formula is not integral")
    by_transversal = int(total)

    # (3) class formula: average over H of |G|·|K ∩ class(a)| / (|K|·|class(a)|)
    classes = G.conjugacy_classes
    cls_of = G.class_index
    in_k = [0] * len(classes)
    for k in K.members:
        in_k[cls_of[k]] += 1
    total = Fraction(0)
    for a in H.members:
        i = cls_of[a]
        total += Fraction(G.order * in_k[i], K.order * classes[i].size)
    total /= H.order
    if total.denominator != 1:
        raise InternalCheckError("class-sum double-coset formula is not integral")
    by_classes = int(total)

    if not direct == by_transversal == by_classes:
        raise InternalCheckError(
            f"double-coset methods disagree: {direct}, {by_transversal}, {by_classes}"
        )
    return direct


# -- catalog and group input --------------------------------------------------

_CATALOG_RE = re.compile(r"^(cyclic|dihedral|symmetric|alternating)\((\d+)\)$")


def catalog(name: str) -> FiniteGroup:
    """Built-in groups with documented named generators."""
    key = name.replace(" ", "").lower()
    if key == "quaternion8":
        x = Perm.from_cycles(8, [(1, 2, 3, 4), (5, 6, 7, 8)])
        y = Perm.from_cycles(8, [(1, 5, 3, 7), (2, 8, 4, 6)])
        return FiniteGroup(8, named_generators={"x": x, "y": y}, name=key)
    if key == "wc3":
        gens = {
            "x": Perm.from_cycles(6, [(1, 4)]),
            "y": Perm.from_cycles(6, [(2, 5)]),
            "z": Perm.from_cycles(6, [(3, 6)]),
            "a": Perm.from_cycles(6, [(1, 2, 3), (4, 5, 6)]),
            "b": Perm.from_cycles(6, [(1, 2), (4, 5)]),
        }
        return FiniteGroup(6, named_generators=gens, name=key)
    m = _CATALOG_RE.match(key)
    if not m:
        raise GroupInputError(f"unknown catalog group {name!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "cyclic":
        if n < 1:
            raise GroupInputError("cyclic(n) needs n >= 1")
        x = Perm.from_cycles(n, [tuple(range(1, n + 1))]) if n > 1 else Perm.identity(1)
        return FiniteGroup(max(n, 1), named_generators={"x": x}, name=key)
    if family == "dihedral":
        if n < 3:
            raise GroupInputError("dihedral(n) needs n >= 3")
        x = Perm.from_cycles(n, [tuple(range(1, n + 1))])
        y = Perm([(n - 2 - p) % n for p in range(n)])
        return FiniteGroup(n, named_generators={"x": x, "y": y}, name=key)
    if family == "symmetric":
        if n < 1:
            raise GroupInputError("symmetric(n) needs n >= 1")
        if n == 1:
            return FiniteGroup(1, named_generators={"a": Perm.identity(1)}, name=key)
        a = Perm.from_cycles(n, [tuple(range(1, n + 1))])
        b = Perm.from_cycles(n, [(1, 2)])
        return FiniteGroup(n, named_generators={"a": a, "b": b}, name=key)
    if n < 3:
        raise GroupInputError("alternating(n) needs n >= 3")
    a = Perm.from_cycles(n, [(1, 2, 3)])
    b = (
        Perm.from_cycles(n, [tuple(range(1, n + 1))])
        if n % 2
        else Perm.from_cycles(n, [tuple(range(2, n + 1))])
    )
    return FiniteGroup(n, named_generators={"a": a, "b": b}, name=key)


def group_from_payload(payload: Mapping) -> FiniteGroup:
    """Build a group from the JSON group-specification object."""
    try:
        degree = int(payload["degree"])
    except (KeyError, TypeError, ValueError):
        raise GroupInputError("group spec needs an integer 'degree'") from None
    raw = payload.get("generators")
    if not isinstance(raw, Mapping) or not raw:
        raise GroupInputError("group spec needs a non-empty 'generators' object")
    named = {}
    for label, text in raw.items():
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", label):
            raise GroupInputError(f"bad generator name {label!r}")
        named[label] = Perm.parse(degree, str(text))
    return FiniteGroup(degree, named_generators=named, name=payload.get("name"))
