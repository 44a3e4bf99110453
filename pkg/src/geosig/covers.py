"""Closed-form geometric structure of the intermediate covers S/H.

For a geometric signature and any subgroup H, this module computes the
genus of S/H twice (by the ramification-divisor formula and by the
double-coset formula, which must agree), the marked points of S/H over
each branch value, and the cycle structure of the non-Galois covering
from S/H down to S/G.  Counts that theory proves integral are asserted
integral; a failure is raised, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GroupInputError, InternalCheckError
from .groups import FiniteGroup, Subgroup, conj, double_coset_count
from .signature import GeometricSignature


@dataclass(frozen=True)
class TransversalPartition:
    """Transversal of N(G_j) split by the size of the conjugate's meet with H."""

    branch_index: int
    sets: tuple[tuple, ...]          # the L_k, in first-appearance order
    intersection_sizes: tuple[int, ...]  # common |G_j^(l^-1) ∩ H| per set

    @property
    def nu(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class MarkedPointSet:
    """c points of S/H over branch value j, each marked with the same number."""

    branch_index: int
    mark: int
    count: int


@dataclass(frozen=True)
class CycleStructure:
    """Cycle structure of the covering S/H -> S/G over one branch value."""

    branch_index: int
    entries: tuple[int, ...]  # ramification indices, one per point, sorted

    @property
    def total_points(self) -> int:
        return len(self.entries)


@dataclass
class CoverReport:
    """Everything the signature determines about one intermediate quotient."""

    subgroup: Subgroup
    degree: int
    genus: int
    branch_types: tuple[str, ...]
    marked_points: tuple[MarkedPointSet, ...]
    cycle_structures: tuple[CycleStructure, ...]
    oracle: Optional[dict] = None

    def to_json(self) -> dict:
        G = self.subgroup.parent
        sub = {
            "label": self.subgroup.label,
            "order": self.subgroup.order,
            "generators": [str(g) for g in self.subgroup.generators or ()],
        }
        if self.subgroup.is_cyclic:
            sub["cyclic_class_index"] = G.cyclic_class_index(self.subgroup)
        else:
            sub["cyclic_class_index"] = None
        branch_values = []
        for j in range(len(self.cycle_structures)):
            marked = [
                {"mark": m.mark, "count": m.count}
                for m in self.marked_points
                if m.branch_index == j
            ]
            branch_values.append({
                "index": j,
                "type_rep": self.branch_types[j],
                "marked_points": marked,
                "cycle_structure": list(self.cycle_structures[j].entries),
            })
        out = {
            "subgroup": sub,
            "degree": self.degree,
            "genus": self.genus,
            "branch_values": branch_values,
        }
        if self.oracle is not None:
            out["oracle"] = {
                "genus": self.oracle["genus"],
                "cycle_structures": [list(c) for c in self.oracle["cycle_structures"]],
            }
        return out


def _require_geometric(sig: GeometricSignature):
    if not sig.is_geometric:
        raise GroupInputError(
            "this computation needs a fully geometric signature; "
            "refine the plain entries first"
        )


def _check_subgroup(G: FiniteGroup, H: Subgroup):
    if H.parent is not G:
        raise GroupInputError("subgroup does not belong to this group")


def quotient_genus(G: FiniteGroup, sig: GeometricSignature, H: Subgroup) -> int:
    """Genus of S/H, by two independent formulas that must agree."""
    _require_geometric(sig)
    _check_subgroup(G, H)
    idx = H.index
    base = Fraction(idx * (sig.quotient_genus - 1) + 1)

    by_ramification = base
    for entry in sig.entries:
        Gj = entry.cls.representative
        n = Gj.normalizer()
        for ell in n.left_transversal():
            meet = sum(1 for k in Gj.members if conj(ell, k) in H.members)
            by_ramification += (
                Fraction(n.order, H.order) * (1 - Fraction(meet, entry.order)) / 2
            )

    by_double_cosets = base
    for entry in sig.entries:
        Gj = entry.cls.representative
        by_double_cosets += Fraction(idx - double_coset_count(G, H, Gj), 2)

    if by_ramification != by_double_cosets:
        raise InternalCheckError(
            f"genus formulas disagree: {by_ramification} vs {by_double_cosets}"
        )
    if by_ramification.denominator != 1 or by_ramification < 0:
        raise InternalCheckError(f"quotient genus is not admissible: {by_ramification}")
    return int(by_ramification)


def transversal_partition(G: FiniteGroup, sig: GeometricSignature, H: Subgroup,
                          j: int) -> TransversalPartition:
    """Split the transversal of N(G_j) by how the conjugates of G_j meet H."""
    _require_geometric(sig)
    _check_subgroup(G, H)
    entry = sig.entries[j]
    Gj = entry.cls.representative
    omega = Gj.normalizer().left_transversal()
    order: list[int] = []
    groups: dict[int, list] = {}
    for ell in omega:
        meet = sum(1 for k in Gj.members if conj(ell, k) in H.members)
        if meet not in groups:
            groups[meet] = []
            order.append(meet)
        groups[meet].append(ell)
    if sum(len(groups[m]) for m in order) != len(omega):
        raise InternalCheckError("transversal partition lost elements")
    return TransversalPartition(
        branch_index=j,
        sets=tuple(tuple(groups[m]) for m in order),
        intersection_sizes=tuple(order),
    )


def marked_points(G: FiniteGroup, sig: GeometricSignature,
                  H: Subgroup) -> tuple[MarkedPointSet, ...]:
    """Marked points of S/H over each branch value, with their stabilizer orders."""
    _require_geometric(sig)
    _check_subgroup(G, H)
    out = []
    for j, entry in enumerate(sig.entries):
        Gj = entry.cls.representative
        ratio = Gj.normalizer().order // Gj.order
        part = transversal_partition(G, sig, H, j)
        for block, mark in zip(part.sets, part.intersection_sizes):
            count = Fraction(len(block) * ratio * mark, H.order)
            if count.denominator != 1 or count <= 0:
                raise InternalCheckError(
                    f"marked-point count is not a positive integer: {count}"
                )
            if entry.order % mark:
                raise InternalCheckError("stabilizer order does not divide branch order")
            out.append(MarkedPointSet(branch_index=j, mark=mark, count=int(count)))
    return tuple(out)


def cycle_structure(G: FiniteGroup, sig: GeometricSignature,
                    H: Subgroup) -> tuple[CycleStructure, ...]:
    """Cycle structure of S/H -> S/G over each branch value."""
    marks = marked_points(G, sig, H)
    idx = H.index
    out = []
    for j, entry in enumerate(sig.entries):
        entries: list[int] = []
        for m in marks:
            if m.branch_index == j:
                entries.extend([entry.order // m.mark] * m.count)
        entries.sort()
        if sum(entries) != idx:
            raise InternalCheckError(
                f"cycle structure over branch value {j} does not cover all sheets"
            )
        out.append(CycleStructure(branch_index=j, entries=tuple(entries)))
    return tuple(out)


def cover_report(G: FiniteGroup, sig: GeometricSignature, H: Subgroup) -> CoverReport:
    return CoverReport(
        subgroup=H,
        degree=H.index,
        genus=quotient_genus(G, sig, H),
        branch_types=tuple(
            e.label or e.cls.representative.label or "?" for e in sig.entries
        ),
        marked_points=marked_points(G, sig, H),
        cycle_structures=cycle_structure(G, sig, H),
    )


def lattice_report(G: FiniteGroup, sig: GeometricSignature,
                   subgroups: Sequence[Subgroup] = ()) -> tuple[CoverReport, ...]:
    """Reports for every cyclic subgroup class, then any listed subgroups."""
    _require_geometric(sig)
    targets = [cls.representative for cls in G.cyclic_subgroup_classes]
    for H in subgroups:
        _check_subgroup(G, H)
        targets.append(H)
    return tuple(cover_report(G, sig, H) for H in targets)
