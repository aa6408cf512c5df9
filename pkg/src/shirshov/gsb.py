"""Compositions, triviality, basis verification at a bound, and ground completion."""

from __future__ import annotations

import gc
import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import chain
from typing import Iterator, Sequence

from .lalg.normal import _normal_by_size, nmul
from .poly import Poly, apply_context
from .rewrite import (
    FuelExhausted, GroundRule, ReductionTrace, Status, Theory, TheoryError, ground_rules_at,
)
from .term import PREC, SUCC, Context, Mode, Word, format_term, positions, top_op

INCLUSION = "inclusion"
RIGHTMUL = "rightmul"

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
FUEL_EXHAUSTED = "fuel_exhausted"


class BudgetExceeded(RuntimeError):
    def __init__(self, max_rules: int):
        super().__init__(f"budget exceeded: completion needs more than {max_rules} new rules")
        self.max_rules = max_rules


@dataclass
class CompositionReport:
    """One ambiguity and, once checked, the outcome of reducing it."""

    kind: str
    w: Word
    rules: tuple[GroundRule, ...]
    composition: Poly
    context: Context | None = None  # inclusion: f.lhs == context.plug(g.lhs)
    v: Word | None = None  # right multiplication: the word v in f<v
    normal_form: Poly | None = None
    verdict: str | None = None
    trace: ReductionTrace | None = None

    @property
    def rule_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.rules)

    def to_json(self, th: Theory) -> dict:
        return {
            "kind": self.kind,
            "w": format_term(self.w),
            "rules": list(self.rule_names),
            "verdict": self.verdict,
            "normal_form": None if self.normal_form is None else self.normal_form.format(th.order),
        }

    def describe(self, th: Theory) -> str:
        head = f"{self.kind} {' / '.join(self.rule_names)} at {format_term(self.w)}"
        if self.v is not None:
            head += f" with v = {format_term(self.v)}"
        nf = "" if self.normal_form is None else self.normal_form.format(th.order)
        return f"{head}: {self.verdict} {nf}".rstrip()


def inclusion_compositions(rules: Sequence[GroundRule], th: Theory) -> list[CompositionReport]:
    """``f - c|_g`` for every pair with ``f.lhs = c|_{g.lhs}``, root self-overlaps included."""
    by_lhs: dict[Word, list[tuple[int, GroundRule]]] = {}
    for k, g in enumerate(rules):
        by_lhs.setdefault(g.lhs, []).append((k, g))
    found = []
    for i, f in enumerate(rules):
        for pos_index, (path, sub) in enumerate(positions(f.lhs)):
            for j, g in by_lhs.get(sub, ()):
                ctx = Context.at(f.lhs, path)
                comp = f.poly - apply_context(ctx, g.poly, th.mode)
                found.append(((th.order.key(f.lhs), i, j, pos_index),
                              CompositionReport(INCLUSION, f.lhs, (f, g), comp, context=ctx)))
    found.sort(key=lambda t: t[0])
    return [rep for _, rep in found]


def rightmul_compositions(rules: Sequence[GroundRule], th: Theory,
                          v_bound: int = 3) -> list[CompositionReport]:
    """``f<v`` in L(X) for every rule with a ``>``-rooted leading word and normal ``v``."""
    return list(_iter_rightmul(rules, th, v_bound))


def _iter_rightmul(rules, th: Theory, v_bound: int) -> Iterator[CompositionReport]:
    if th.mode is not Mode.L:
        raise TheoryError("right-multiplication compositions exist only in L-algebra mode")
    vs = [v for n in range(1, v_bound + 1)
          for v in th.order.sorted(_normal_by_size(th.signature.generators, n))]
    for f in rules:
        if top_op(f.lhs) != SUCC:
            continue
        for v in vs:
            terms: dict = {}
            for w, c in f.poly.terms.items():
                u = nmul(w, PREC, v)
                if u in terms:
                    s = terms[u] + c
                    if s == 0:
                        del terms[u]
                    else:
                        terms[u] = s
                else:
                    terms[u] = c
            yield CompositionReport(RIGHTMUL, nmul(f.lhs, PREC, v), (f,),
                                    Poly._trusted(terms), v=v)


def is_trivial(report: CompositionReport, th: Theory, fuel: int | None = None,
               trace: bool = True) -> str:
    """Reduce the composition; attaches the normal form (and trace), returns the verdict."""
    nf, tr = th.engine.normal_form(report.composition, fuel, trace=trace)
    report.normal_form = nf
    report.trace = tr if trace else None
    trace = tr
    if trace.status is Status.FUEL_EXHAUSTED:
        report.verdict = FUEL_EXHAUSTED
    else:
        report.verdict = TRIVIAL if not nf else NONTRIVIAL
    return report.verdict


@dataclass
class GSBSummary:
    """Counts and witnesses; ``reports`` holds every composition when it was kept."""

    theory: Theory
    bound: int
    v_bound: int
    rules_instantiated: int
    tally: dict[str, int] = field(default_factory=dict)
    witnesses: list[CompositionReport] = field(default_factory=list)
    reports: list[CompositionReport] | None = None

    @property
    def checked(self) -> int:
        return sum(self.tally.values())

    @property
    def nontrivial(self) -> list[CompositionReport]:
        return [r for r in self.witnesses if r.verdict == NONTRIVIAL]

    @property
    def fuel_exhausted(self) -> list[CompositionReport]:
        return [r for r in self.witnesses if r.verdict == FUEL_EXHAUSTED]

    @property
    def verified(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        if self.verified:
            return f"GS basis verified at bound ({self.bound}, {self.v_bound})"
        if self.nontrivial:
            return f"not a GS basis: {len(self.nontrivial)} non-trivial compositions"
        return "undecided: fuel exhausted"

    def counts(self) -> dict[str, int]:
        return {
            "checked": self.checked,
            "trivial": self.tally.get(TRIVIAL, 0),
            "nontrivial": self.tally.get(NONTRIVIAL, 0),
            "fuel_exhausted": self.tally.get(FUEL_EXHAUSTED, 0),
        }

    def to_json(self) -> dict:
        if self.reports is None:
            raise ValueError("reports were not kept; run check_gsb with keep_reports=True")
        return {
            "theory_hash": self.theory.hash,
            "bound": self.bound,
            "v_bound": self.v_bound,
            "rules_instantiated": self.rules_instantiated,
            "compositions": [r.to_json(self.theory) for r in self.reports],
            "verdict": self.verdict,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def format(self) -> str:
        c = self.counts()
        lines = [
            f"theory {self.theory.name or '(unnamed)'} hash {self.theory.hash}",
            f"rules instantiated: {self.rules_instantiated}",
            f"compositions checked: {c['checked']}  trivial: {c['trivial']}  "
            f"nontrivial: {c['nontrivial']}  fuel exhausted: {c['fuel_exhausted']}",
        ]
        for r in self.witnesses:
            lines.append("  " + r.describe(self.theory))
        lines.append(self.verdict)
        return "\n".join(lines)


def iter_compositions(th: Theory, bound: int,
                      v_bound: int = 3) -> tuple[list[GroundRule], Iterator[CompositionReport]]:
    """Ground rules at the bound and their compositions: inclusions, then right multiples."""
    rules = ground_rules_at(th, bound)
    inclusions = inclusion_compositions(rules, th)
    if th.mode is Mode.L:
        return rules, chain(inclusions, _iter_rightmul(rules, th, v_bound))
    return rules, iter(inclusions)


def compositions(th: Theory, bound: int,
                 v_bound: int = 3) -> tuple[list[GroundRule], list[CompositionReport]]:
    rules, it = iter_compositions(th, bound, v_bound)
    return rules, list(it)


@contextmanager
def _gc_paused():
    # words are acyclic, so the cycle collector only burns time on millions of them
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def check_gsb(th: Theory, bound: int = 5, v_bound: int = 3, fuel: int | None = None,
              keep_reports: bool = True) -> GSBSummary:
    """Reduce every composition within the bound; witnesses always carry their trace."""
    with _gc_paused():
        rules, it = iter_compositions(th, bound, v_bound)
        summary = GSBSummary(th, bound, v_bound, len(rules),
                             reports=[] if keep_reports else None)
        tally = {TRIVIAL: 0, NONTRIVIAL: 0, FUEL_EXHAUSTED: 0}
        for rep in it:
            verdict = is_trivial(rep, th, fuel, trace=False)
            if verdict != TRIVIAL:
                is_trivial(rep, th, fuel)
                summary.witnesses.append(rep)
            tally[verdict] += 1
            if keep_reports:
                summary.reports.append(rep)
        summary.tally = tally
    return summary


@dataclass(frozen=True)
class CompletionStep:
    rule: GroundRule
    round: int
    source: str  # description of the composition that produced the rule


def complete(th: Theory, bound: int = 5, v_bound: int = 3, max_rules: int = 100,
             fuel: int | None = None) -> tuple[Theory, list[CompletionStep]]:
    """Add monic normal forms of non-trivial compositions until none remain within the bound.

    Each round enumerates compositions of the rules present at its start and
    reduces them with every rule added so far.  Existing rules are never
    inter-reduced.
    """
    log: list[CompletionStep] = []
    current = th
    taken = {r.name for r in th.rules}
    counter = 0
    rnd = 0
    with _gc_paused():
        while True:
            rnd += 1
            _, reports = iter_compositions(current, bound, v_bound)
            added = 0
            for rep in reports:
                nf, trace = current.engine.normal_form(rep.composition, fuel, trace=False)
                if trace.status is Status.FUEL_EXHAUSTED:
                    raise FuelExhausted(f"fuel exhausted while reducing {rep.describe(current)}")
                if not nf:
                    continue
                if len(log) >= max_rules:
                    raise BudgetExceeded(max_rules)
                counter += 1
                while f"c{counter}" in taken:
                    counter += 1
                name = f"c{counter}"
                taken.add(name)
                rule = GroundRule.from_poly(name, nf, current.order, current.mode, "completion")
                rep.normal_form, rep.verdict = nf, NONTRIVIAL
                current = current.with_rules([rule])
                log.append(CompletionStep(rule, rnd, rep.describe(th)))
                added += 1
            if not added:
                return current, log
