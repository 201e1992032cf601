"""Finiteness/infiniteness certificates and the just-finite report.

Every infinite certificate carries a witness that :func:`validate_certificate`
re-checks from scratch:

* ``InfiniteViaZSurjection``: the abelianization has positive free rank.
* ``InfiniteViaSubgroup``: a complete coset table of a finite-index subgroup
  whose Reidemeister-Schreier presentation has positive free rank.
* ``InfiniteViaAmalgam``: deleting ``b^-1 r b = r^2`` from a transformed
  presentation leaves ``H_r *_{<r> = <x>} B'`` with
  ``B' = <x, b | x^-1 b x = b^2, x^k>``.  When ``H_r`` is finite the witness
  is its regular table, from which ``k = |r| >= 2`` and ``[H_r : <r>] >= 2``
  are re-derived; ``[B' : <x>] = 2^k - 1 >= 3`` then makes the amalgam
  nontrivial, hence infinite.  When ``H_r`` is infinite the witness is a
  certificate for ``H_r``, which embeds in the amalgam.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .abelian import (AbelianInvariants, abelian_invariants, exponent_sum_homomorphism,
                      relation_matrix, smith_form)
from .cosets import (DEFAULT_MAX_COSETS, Complete, CosetTable, Overflow, coset_enumerate,
                     element_order, is_cyclic, word_acts_trivially)
from .presentation import Presentation, deficiency, remove_relator
from .subgroups import (DEFAULT_MAX_INDEX, SubgroupRecord, find_infinite_abelianization_subgroup,
                        permutation_witness, rewrite_subgroup)
from .syntax import print_presentation
from .transform import TransformRecord, neumann_relators, recover_transform
from .words import Word, format_word


@dataclass(frozen=True)
class Budget:
    max_cosets: int = DEFAULT_MAX_COSETS
    max_index: int = DEFAULT_MAX_INDEX

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_index < 1:
            raise ValueError("budgets must be positive")

    def as_dict(self) -> dict:
        return {"max_cosets": self.max_cosets, "max_index": self.max_index}


# -- certificates ------------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    order: int
    kind = "finite"
    is_infinite = False

    def witness(self) -> dict:
        return {"order": self.order}


@dataclass(frozen=True)
class InfiniteViaZSurjection:
    free_rank: int
    invariants: AbelianInvariants
    # exponent weights of an explicit map onto Z, when one was checked directly
    explicit_map: Optional[dict] = None
    kind = "infinite-z-surjection"
    is_infinite = True

    def witness(self) -> dict:
        out = {"free_rank": self.free_rank, "torsion": list(self.invariants.torsion)}
        if self.explicit_map is not None:
            out["explicit_map"] = self.explicit_map
        return out


@dataclass(frozen=True)
class InfiniteViaSubgroup:
    index: int
    subgroup_free_rank: int
    record: SubgroupRecord = field(repr=False)
    kind = "infinite-subgroup"
    is_infinite = True

    def witness(self) -> dict:
        table = self.record.table
        return {"index": self.index,
                "subgroup_free_rank": self.subgroup_free_rank,
                "coset_table": table.table.tolist(),
                "subgroup_generators": [format_word(w) for w in table.subgroup]}


@dataclass(frozen=True)
class InfiniteViaAmalgam:
    relator_index: int
    h_r: Presentation
    relator: Word
    # None encodes the infinite-order branch (B' is then Baumslag-Solitar B(1,2))
    k: Optional[int]
    amalgam_index: Optional[int]
    h_r_order: Optional[int]
    r_index_in_h_r: Optional[int] = None
    # set when r has infinite order in H_r, proven by its image in a free abelian quotient
    k_infinite: bool = False
    h_r_table: Optional[CosetTable] = field(default=None, repr=False)
    h_r_certificate: Optional["Certificate"] = field(default=None, repr=False)
    kind = "infinite-amalgam"
    is_infinite = True

    def __post_init__(self):
        if self.k is not None:
            if self.k < 2 or (self.r_index_in_h_r or 0) < 2:
                raise ValueError("amalgam certificate needs k >= 2 and [H_r : <r>] >= 2")
            if self.amalgam_index != 2 ** self.k - 1:
                raise ValueError("amalgam index must be 2^k - 1")
        elif self.h_r_certificate is None or not self.h_r_certificate.is_infinite:
            raise ValueError("infinite branch needs an infiniteness certificate for H_r")

    def witness(self) -> dict:
        out = {"relator_index": self.relator_index,
               "h_r": print_presentation(self.h_r),
               "relator": format_word(self.relator),
               "k": self.k if self.k is not None else ("infinite" if self.k_infinite else "unknown"),
               "amalgam_index": (self.amalgam_index if self.amalgam_index is not None
                                 else ("infinite" if self.k_infinite else "unknown")),
               "h_r_order": self.h_r_order if self.h_r_order is not None else "infinite",
               "r_index_in_h_r": self.r_index_in_h_r}
        if self.h_r_certificate is not None:
            out["h_r_certificate"] = {"certificate_kind": self.h_r_certificate.kind,
                                      "witness": self.h_r_certificate.witness()}
        return out


@dataclass(frozen=True)
class Unknown:
    budget_report: dict
    kind = "unknown"
    is_infinite = False

    def witness(self) -> dict:
        return dict(self.budget_report)


Certificate = Union[Finite, InfiniteViaZSurjection, InfiniteViaSubgroup, InfiniteViaAmalgam, Unknown]


def _unknown(budget: Budget, exhausted: list[str], reason: str) -> Unknown:
    return Unknown({**budget.as_dict(), "exhausted": exhausted, "reason": reason})


# -- same group --------------------------------------------------------------

def verify_presents_same_group(p: Presentation, q: Presentation,
                               budget: Budget | None = None) -> bool | None:
    """Check that ``q`` presents the same group as ``p`` via the inclusion of generators.

    ``q``'s generators must begin with ``p``'s.  Returns True when both
    groups are finite of equal order, every relator of ``p`` is trivial in
    ``q`` and every extra generator of ``q`` is trivial in ``q`` (so
    ``G(p) -> G(q)`` is a surjection between groups of equal finite order);
    False on a detected mismatch; None when a budget ran out.
    """
    budget = budget or Budget()
    if q.generators[:len(p.generators)] != p.generators:
        raise ValueError("q's generator list must begin with p's generators")
    op = coset_enumerate(p, (), budget.max_cosets)
    oq = coset_enumerate(q, (), budget.max_cosets)
    if isinstance(op, Overflow) or isinstance(oq, Overflow):
        return None
    if op.index != oq.index:
        return False
    for rel in p.relators:
        if not word_acts_trivially(oq.table, rel):
            return False
    for g in q.generators[len(p.generators):]:
        if not word_acts_trivially(oq.table, Word.generator(g)):
            return False
    return True


# -- irredundancy ------------------------------------------------------------

IRREDUNDANT = "certified-irredundant"
REDUNDANT = "redundant"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IrredundancyVerdict:
    relator_index: int
    status: str
    reason: str
    h_r_order: Optional[int] = None
    # H_r not isomorphic to G; decided only when both orders are finite
    not_isomorphic: Optional[bool] = None

    def as_dict(self) -> dict:
        return {"relator_index": self.relator_index, "status": self.status,
                "reason": self.reason, "h_r_order": self.h_r_order,
                "not_isomorphic": self.not_isomorphic}


def free_image(p: Presentation, word) -> list[int]:
    """Image of ``word`` in the torsion-free quotient ``Z^free_rank`` of the abelianization."""
    m = relation_matrix(p)
    form = smith_form(m, ncols=len(p.generators))
    exps = [word.exponent_sum(i) for i in range(len(p.generators))]
    right = form.right
    coords = [sum(exps[k] * right[k][j] for k in range(len(exps))) for j in range(len(exps))]
    return coords[form.rank:]


def check_irredundant(p: Presentation, budget: Budget | None = None,
                      infinite_removals: frozenset[int] = frozenset()) -> list[IrredundancyVerdict]:
    """Decide for each relator ``r_i`` whether ``r_i != 1`` in ``H_i = <X | R minus r_i>``.

    Evidence, cheapest first: a nonzero image of ``r_i`` in the free part
    of ``H_i``'s abelianization; for indices in ``infinite_removals`` (``H_i``
    already certified infinite) a finite order for ``G``, since ``r_i = 1``
    in ``H_i`` would make ``H_i = G``; enumeration of ``H_i`` and a trace of
    ``r_i`` on its regular table; finally a low-index coset action of ``H_i``
    that ``r_i`` does not fix.
    """
    budget = budget or Budget()
    g_order: int | Overflow | None = None

    def order_of_g():
        nonlocal g_order
        if g_order is None:
            out = coset_enumerate(p, (), budget.max_cosets)
            g_order = out.index if isinstance(out, Complete) else out
        return g_order

    verdicts = []
    for i, r in enumerate(p.relators):
        h = remove_relator(p, i)
        if any(free_image(h, r)):
            verdicts.append(IrredundancyVerdict(i, IRREDUNDANT, "nonzero image in a free abelian quotient"))
            continue
        if i in infinite_removals and isinstance(order_of_g(), int):
            verdicts.append(IrredundancyVerdict(i, IRREDUNDANT, "H_r is infinite while the group is finite"))
            continue
        out = coset_enumerate(h, (), budget.max_cosets)
        if isinstance(out, Complete):
            g = order_of_g()
            not_iso = (out.index != g) if isinstance(g, int) else None
            trivial = word_acts_trivially(out.table, r)
            verdicts.append(IrredundancyVerdict(
                i, REDUNDANT if trivial else IRREDUNDANT,
                "relator is trivial in H_r" if trivial else "relator is nontrivial in H_r",
                out.index, not_iso))
            continue
        rec = permutation_witness(h, r, budget.max_index)
        if rec is not None:
            verdicts.append(IrredundancyVerdict(
                i, IRREDUNDANT, f"relator moves a coset of an index-{rec.index} subgroup of H_r"))
        else:
            verdicts.append(IrredundancyVerdict(
                i, UNKNOWN, f"H_r enumeration overflowed ({out}); no permutation witness "
                            f"up to index {budget.max_index}"))
    return verdicts


# -- infiniteness ------------------------------------------------------------

QUICK_COSETS = 2000


def certify_infinite(p: Presentation, budget: Budget | None = None) -> Certificate:
    """Map onto Z, then a finite-index subgroup with infinite abelianization,
    then a finite order as refutation; otherwise Unknown."""
    budget = budget or Budget()
    inv = abelian_invariants(p)
    if inv.free_rank >= 1:
        return InfiniteViaZSurjection(inv.free_rank, inv)
    # A finite group has no infinite certificate, so a cheap enumeration
    # first changes no verdict and skips the subgroup search when it succeeds.
    out = coset_enumerate(p, (), min(budget.max_cosets, QUICK_COSETS))
    if isinstance(out, Complete):
        return Finite(out.index)
    rec = find_infinite_abelianization_subgroup(p, budget.max_index)
    if rec is not None:
        rank = abelian_invariants(rec.presentation_of_subgroup).free_rank
        return InfiniteViaSubgroup(rec.index, rank, rec)
    out = coset_enumerate(p, (), budget.max_cosets)
    if isinstance(out, Complete):
        return Finite(out.index)
    return _unknown(budget, ["max_index", "max_cosets"],
                    "no surjection onto Z, no subgroup witness, enumeration overflowed")


def certify_case1_amalgam(t: TransformRecord, i: int, budget: Budget | None = None) -> Certificate:
    """Certify that deleting ``b_i^-1 r_i b_i = r_i^2`` leaves an infinite group."""
    budget = budget or Budget()
    if not 0 <= i < len(t.input.relators):
        raise IndexError(f"relator index {i} out of range for {len(t.input.relators)} relators")
    r = t.input.relators[i]
    h = remove_relator(t.input, i)
    out = coset_enumerate(h, (), budget.max_cosets)
    if isinstance(out, Complete):
        k = element_order(out.table, r)
        idx = out.index // k
        if k < 2:
            return _unknown(budget, [], "relator is trivial in H_r (redundant input)")
        if idx < 2:
            return _unknown(budget, [], "H_r is generated by r (cyclic case)")
        return InfiniteViaAmalgam(i, h, r, k, 2 ** k - 1, out.index, idx, h_r_table=out.table)
    cert = certify_infinite(h, budget)
    if cert.is_infinite:
        return InfiniteViaAmalgam(i, h, r, None, None, None, k_infinite=any(free_image(h, r)),
                                  h_r_certificate=cert)
    return _unknown(budget, ["max_cosets"], f"H_r not shown finite or infinite ({cert.kind})")


def case2_map(t: TransformRecord, i: int) -> dict | None:
    """Check the explicit map ``X -> 1``, ``b_i -> t``, other ``b -> 1`` on ``K_2``."""
    pair = t.pairs[i]
    k2 = remove_relator(t.output, pair.conjugated_b)
    weights = [0] * len(k2.generators)
    weights[pair.generator.index] = 1
    if exponent_sum_homomorphism(k2, weights):
        return {pair.generator.name: 1}
    return None


# -- validation --------------------------------------------------------------

def validate_certificate(p: Presentation, cert: Certificate, budget: Budget | None = None) -> bool:
    """Independently re-check a certificate's witness against ``p``."""
    budget = budget or Budget()
    if isinstance(cert, Finite):
        out = coset_enumerate(p, (), budget.max_cosets)
        return isinstance(out, Complete) and out.index == cert.order
    if isinstance(cert, InfiniteViaZSurjection):
        rank = len(p.generators) - smith_form(relation_matrix(p), ncols=len(p.generators)).rank
        if cert.explicit_map is not None:
            weights = [cert.explicit_map.get(g.name, 0) for g in p.generators]
            if not exponent_sum_homomorphism(p, weights) or math.gcd(*weights) != 1:
                return False
        return rank == cert.free_rank >= 1
    if isinstance(cert, InfiniteViaSubgroup):
        table = cert.record.table
        if table.presentation != p or table.check():
            return False
        rank = abelian_invariants(rewrite_subgroup(p, table)).free_rank
        return rank == cert.subgroup_free_rank >= 1 and table.live_count == cert.index
    if isinstance(cert, InfiniteViaAmalgam):
        return _validate_amalgam(p, cert, budget)
    return False


def _validate_amalgam(p: Presentation, cert: InfiniteViaAmalgam, budget: Budget) -> bool:
    rec = recover_transform_with_gap(p, cert.relator_index)
    if rec is None or rec.input.relators[cert.relator_index] != cert.relator:
        return False
    if remove_relator(rec.input, cert.relator_index) != cert.h_r:
        return False
    if cert.k is None:
        if cert.k_infinite and not any(free_image(cert.h_r, cert.relator)):
            return False
        return validate_certificate(cert.h_r, cert.h_r_certificate, budget)
    table = cert.h_r_table
    if table is None or table.presentation != cert.h_r or table.check() or any(table.subgroup):
        return False
    k = element_order(table, cert.relator)
    return (k == cert.k >= 2 and table.live_count // k == cert.r_index_in_h_r >= 2
            and cert.amalgam_index == 2 ** k - 1 >= 3 and table.live_count == cert.h_r_order)


def recover_transform_with_gap(k1: Presentation, i: int) -> TransformRecord | None:
    """Rebuild the transform record from ``K_1``: a transformed presentation
    with its relator ``2i+1`` (``b_i^-1 r_i b_i r_i^-2``) deleted."""
    rels = list(k1.relators)
    if not 0 <= 2 * i < len(rels):
        return None
    n = (len(rels) + 1) // 2
    k = len(k1.generators) - n
    if k < 0 or i >= n:
        return None
    b = k1.generators[k + i]
    first = rels[2 * i]
    body = first.letters[:-2]
    marks = [pos for pos, l in enumerate(body) if l.generator == b]
    if len(marks) != 1:
        return None
    r = Word(body[marks[0] + 1:])
    if not r:
        return None
    rels.insert(2 * i + 1, neumann_relators(r, b)[1])
    return recover_transform(Presentation(k1.generators, tuple(rels)))


# -- report ------------------------------------------------------------------

def report_schema() -> dict:
    """The JSON Schema that :meth:`Report.as_dict` output conforms to."""
    from importlib.resources import files
    return json.loads(files(__package__).joinpath("report.schema.json").read_text("utf-8"))


JUST_FINITE = "just-finite"
NOT_JUST_FINITE = "not-just-finite"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RelatorVerdict:
    relator_index: int
    removed: Presentation
    certificate: Certificate
    budget_used: dict

    def as_dict(self, relator) -> dict:
        return {"relator_index": self.relator_index,
                "relator": format_word(relator),
                "certificate_kind": self.certificate.kind,
                "witness": self.certificate.witness(),
                "budget_used": self.budget_used}


@dataclass(frozen=True)
class Report:
    presentation: Presentation
    order: Optional[int]
    irredundancy: tuple[IrredundancyVerdict, ...]
    verdicts: tuple[RelatorVerdict, ...]
    summary: str
    notes: tuple[str, ...] = ()
    transform: Optional[TransformRecord] = None

    def as_dict(self) -> dict:
        p = self.presentation
        out = {
            "presentation": print_presentation(p),
            "deficiency": deficiency(p),
            "order": self.order,
            "irredundancy": [v.as_dict() for v in self.irredundancy],
            "verdicts": [v.as_dict(p.relators[v.relator_index]) for v in self.verdicts],
            "summary": self.summary,
            "notes": list(self.notes),
            "transform": None,
        }
        if self.transform is not None:
            out["transform"] = {
                "input": print_presentation(self.transform.input),
                "pairs": [{"relator_index": pr.relator_index, "generator": pr.generator.name,
                           "output_indices": list(pr.output_indices)}
                          for pr in self.transform.pairs]}
        return out


def _removal_certificate(p: Presentation, j: int, record: TransformRecord | None,
                         budget: Budget) -> Certificate:
    removed = remove_relator(p, j)
    if record is None:
        return certify_infinite(removed, budget)
    pair, pos = record.pair_for_output(j)
    inv = abelian_invariants(removed)
    if pos == 0:
        explicit = case2_map(record, pair.relator_index)
        if inv.free_rank >= 1:
            return InfiniteViaZSurjection(inv.free_rank, inv, explicit)
        return certify_infinite(removed, budget)
    if inv.free_rank >= 1:
        return InfiniteViaZSurjection(inv.free_rank, inv)
    cert = certify_case1_amalgam(record, pair.relator_index, budget)
    if cert.is_infinite:
        return cert
    return certify_infinite(removed, budget)


def just_finite_report(p: Presentation, budget: Budget | None = None,
                       record: TransformRecord | None = None) -> Report:
    """Certify every single-relator deletion of ``p`` and summarise.

    If ``record`` is omitted, ``p`` is checked for being literally the output
    of the transform; when it is, deletions of ``r^-1 b r b^-2`` are matched
    with the explicit map onto ``Z`` and deletions of ``b^-1 r b r^-2`` with
    an amalgam certificate.
    """
    budget = budget or Budget()
    if record is None:
        record = recover_transform(p)
    elif record.output != p:
        raise ValueError("transform record does not belong to this presentation")
    notes: list[str] = []
    verdicts = []
    for j in range(len(p.relators)):
        cert = _removal_certificate(p, j, record, budget)
        verdicts.append(RelatorVerdict(j, remove_relator(p, j), cert, budget.as_dict()))

    out = coset_enumerate(p, (), budget.max_cosets)
    order = out.index if isinstance(out, Complete) else None
    infinite = frozenset(v.relator_index for v in verdicts if v.certificate.is_infinite)
    irredundancy = tuple(check_irredundant(p, budget, infinite))

    kinds = [v.certificate.kind for v in verdicts]
    if any(k == "finite" for k in kinds):
        summary = NOT_JUST_FINITE
    elif all(v.certificate.is_infinite for v in verdicts) and order is not None:
        summary = JUST_FINITE
    else:
        summary = INCONCLUSIVE
        if order is None:
            notes.append("the presented group was not shown to be finite within the coset budget")
        if any(k == "unknown" for k in kinds):
            notes.append("some deletions could not be certified within budget")

    if record is not None:
        notes.append(f"recognised as the transform of {print_presentation(record.input)}")
        input_checks = check_irredundant(record.input, budget)
        if any(v.status == REDUNDANT for v in input_checks):
            notes.append("the untransformed presentation is redundant")
            if summary == JUST_FINITE:
                summary = INCONCLUSIVE
        src = coset_enumerate(record.input, (), budget.max_cosets)
        if isinstance(src, Complete) and is_cyclic(src.table):
            notes.append("the untransformed group is cyclic; the construction assumes a non-cyclic group")
    return Report(p, order, irredundancy, tuple(verdicts), summary, tuple(notes), record)
