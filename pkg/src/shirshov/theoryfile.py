"""Theory files: a TOML front end for signatures, orders, algebras, rules and builtins.

A file has the sections ``[signature]``, ``[order]``, ``[algebra.NAME]``,
``[rules]``, ``[builtin]`` and ``[options]`` plus an optional top-level
``name``.  Unknown keys anywhere are errors.  A rule is either a string
``"lhs -> rhs"`` or a table with ``rule``, ``label``, ``where`` and
``spines`` keys; a left side containing metavariables makes it a schema.
"""

from __future__ import annotations

import os
import re
import sys
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomli_w

from .lalg.builders import (
    StructureConstants, dialgebra_theory, embed_two_gen_theory, free_product_theory,
    from_structure_constants, l_identity_theory,
)
from .order import OrderKind
from .poly import QQ, Field, Poly, parse_poly
from .rewrite import DEFAULT_FUEL, GroundRule, Schema, Theory
from .term import (
    LChain, Mode, ParseError, PNode, RChain, Signature, Var, Word, format_term,
    parse_guards, parse_linear_combination, parse_term, with_guards,
)

FUEL_ENV = "SHIRSHOV_FUEL"

BUILTINS = ("l_identity", "dialgebra", "free_product", "embed_two_gen", "structure_constants")

_TOP_KEYS = {"name", "signature", "order", "algebra", "rules", "builtin", "options"}
_SECTION_KEYS = {
    "signature": {"mode", "generators", "operations"},
    "order": {"kind", "generators", "operations"},
    "options": {"field", "family_bound", "fuel"},
    "builtin": {"name", "generators", "algebra", "algebras", "family_bound", "label",
                "new_generators"},
}
_ALGEBRA_KEYS = {"basis", "succ", "prec"}
_RULE_KEYS = {"rule", "label", "where", "spines"}
_CELL_KEY = re.compile(r"(succ|prec)\[(\d+)\]\[(\d+)\]\Z")


class TheoryFileError(ValueError):
    pass


def _check_keys(table: Mapping, allowed: set[str], where: str) -> None:
    unknown = set(table) - allowed
    if unknown:
        raise TheoryFileError(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _want(value, kind, what: str):
    if not isinstance(value, kind):
        raise TheoryFileError(f"{what} has the wrong type")
    return value


# ---------------------------------------------------------------------------
# loading


def load_theory(path: str | os.PathLike) -> Theory:
    text = Path(path).read_text(encoding="utf-8")
    return loads_theory(text)


def loads_theory(text: str) -> Theory:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise TheoryFileError(f"invalid TOML: {e}") from e
    return theory_from_dict(data)


def theory_from_dict(data: Mapping[str, Any]) -> Theory:
    _check_keys(data, _TOP_KEYS, "the top level")
    for sec, allowed in _SECTION_KEYS.items():
        if sec in data:
            _check_keys(_want(data[sec], dict, f"[{sec}]"), allowed, f"[{sec}]")
    options = data.get("options", {})
    field = Field.parse(str(options.get("field", "Q")))
    fuel = int(options.get("fuel", DEFAULT_FUEL))
    if os.environ.get(FUEL_ENV):
        fuel = int(os.environ[FUEL_ENV])
    if fuel < 1:
        raise TheoryFileError("fuel must be at least 1")
    family_bound = options.get("family_bound")

    algebras = {name: _algebra(name, block, field)
                for name, block in _want(data.get("algebra", {}), dict, "[algebra]").items()}

    if "builtin" in data:
        th = _builtin(data["builtin"], algebras, field, family_bound)
        if "signature" in data and _signature(data["signature"]) != th.signature:
            raise TheoryFileError("[signature] disagrees with the builtin theory")
    elif "signature" in data:
        sig = _signature(data["signature"])
        kind = OrderKind.L if sig.is_binary_l else OrderKind.GENERAL
        th = Theory(sig, (), kind, field, 3 if family_bound is None else int(family_bound))
    else:
        raise TheoryFileError("a theory file needs [signature] or [builtin]")

    if "order" in data:
        th = _apply_order(th, data["order"])
    th = th.with_options(fuel=fuel, name=str(data.get("name", th.name)))
    rules = [_rule(name, entry, th)
             for name, entry in _want(data.get("rules", {}), dict, "[rules]").items()]
    return th.with_rules(rules)


def _signature(sec: Mapping) -> Signature:
    mode = Mode(sec.get("mode", "L"))
    gens = [str(g) for g in _want(sec.get("generators", ["x"]), list, "generators")]
    if mode is Mode.L:
        if "operations" in sec:
            raise TheoryFileError("L mode fixes the operations; drop 'operations'")
        return Signature.l_algebra(gens)
    ops = []
    for item in _want(sec.get("operations", [">/2", "</2"]), list, "operations"):
        sym, sep, arity = str(item).rpartition("/")
        if not sep or not arity.isdigit():
            raise TheoryFileError(f"operation {item!r} must be written symbol/arity")
        ops.append((sym, int(arity)))
    return Signature(tuple(gens), tuple(ops), mode)


def _apply_order(th: Theory, sec: Mapping) -> Theory:
    sig = th.signature
    kw: dict[str, Any] = {}
    if "kind" in sec:
        kw["order_kind"] = OrderKind(sec["kind"])
    gens = sig.generators
    ops = sig.operations
    if "generators" in sec:
        gens = tuple(str(g) for g in sec["generators"])
        if sorted(gens) != sorted(sig.generators):
            raise TheoryFileError("[order] generators must list every generator once")
    if "operations" in sec:
        arity = dict(ops)
        wanted = [str(s) for s in sec["operations"]]
        if sorted(wanted) != sorted(arity):
            raise TheoryFileError("[order] operations must list every operation once")
        ops = tuple((s, arity[s]) for s in wanted)
    if (gens, ops) != (sig.generators, sig.operations):
        kw["signature"] = Signature(gens, ops, sig.mode)
    return th.with_options(**kw) if kw else th


def _algebra(name: str, block: Mapping, field: Field) -> StructureConstants:
    _want(block, dict, f"[algebra.{name}]")
    cells = {k for k in block if _CELL_KEY.match(k)}
    _check_keys(block, _ALGEBRA_KEYS | cells, f"[algebra.{name}]")
    basis = [str(b) for b in _want(block.get("basis", []), list, "basis")]
    d = len(basis)
    if d == 0:
        raise TheoryFileError(f"[algebra.{name}] needs a basis")
    sig = Signature.l_algebra(basis)
    tables: dict[str, list[list[str]]] = {}
    for op in ("succ", "prec"):
        rows = block.get(op)
        if rows is None:
            tables[op] = [["0"] * d for _ in range(d)]
        else:
            if len(rows) != d or any(not isinstance(r, list) or len(r) != d for r in rows):
                raise TheoryFileError(f"[algebra.{name}] {op} must be a {d}x{d} array")
            tables[op] = [[str(c) for c in r] for r in rows]
    for k in cells:
        op, i, j = _CELL_KEY.match(k).groups()
        i, j = int(i), int(j)
        if not (1 <= i <= d and 1 <= j <= d):
            raise TheoryFileError(f"[algebra.{name}] {k} is outside the {d}x{d} table")
        tables[op][i - 1][j - 1] = str(block[k])

    def cell(op, i, j):
        poly = parse_poly(tables[op][i][j], sig, field)
        for w in poly.terms:
            if w.leaves != 1:
                raise TheoryFileError(f"[algebra.{name}] {op} entries must be linear in the basis")
        return {format_term(w): c for w, c in poly.terms.items()}

    return StructureConstants.from_function(
        basis, lambda op, i, j: cell("succ" if op == ">" else "prec", i, j), field)


def _builtin(sec: Mapping, algebras: Mapping[str, StructureConstants], field: Field,
             family_bound) -> Theory:
    name = sec.get("name")
    if name not in BUILTINS:
        raise TheoryFileError(f"unknown builtin {name!r}; choose one of {', '.join(BUILTINS)}")
    fb = sec.get("family_bound", family_bound)

    def algebra(key: str) -> StructureConstants:
        ref = sec.get(key)
        if ref not in algebras:
            raise TheoryFileError(f"builtin {name} needs {key} naming an [algebra.*] block")
        return algebras[ref]

    gens = tuple(str(g) for g in sec.get("generators", ["x"]))
    if name == "l_identity":
        return l_identity_theory(gens, field, 3 if fb is None else int(fb))
    if name == "dialgebra":
        return dialgebra_theory(gens, 3 if fb is None else int(fb), field)
    if name == "structure_constants":
        return from_structure_constants(algebra("algebra"), str(sec.get("label", "S")))
    if name == "embed_two_gen":
        a, b = sec.get("new_generators", ["a", "b"])
        return embed_two_gen_theory(algebra("algebra"), 3 if fb is None else int(fb), a, b)
    refs = sec.get("algebras")
    if not isinstance(refs, list) or len(refs) != 2 or any(r not in algebras for r in refs):
        raise TheoryFileError("free_product needs algebras = [two [algebra.*] names]")
    return free_product_theory(algebras[refs[0]], algebras[refs[1]],
                               2 if fb is None else int(fb))


def _rule(name: str, entry, th: Theory):
    if isinstance(entry, str):
        entry = {"rule": entry}
    _want(entry, dict, f"rule {name}")
    _check_keys(entry, _RULE_KEYS, f"rule {name}")
    text = _want(entry.get("rule"), str, f"rule {name} 'rule'")
    lhs_text, arrow, rhs_text = text.partition("->")
    if not arrow or "->" in rhs_text:
        raise TheoryFileError(f"rule {name}: write exactly one 'lhs -> rhs'")
    label = str(entry.get("label", "")) or name
    sig = th.signature
    lhs = parse_term(lhs_text, sig)
    if isinstance(lhs, Word):
        if "where" in entry or "spines" in entry:
            raise TheoryFileError(f"rule {name}: ground rules take no 'where' or 'spines'")
        rhs = Poly((t, th.field(n, d)) for n, d, t in parse_linear_combination(rhs_text, sig))
        return GroundRule.oriented(name, lhs, rhs, th.order, th.mode, label)
    ranges = _spine_ranges(entry.get("spines"), lhs, th.family_bound, name)
    lhs = with_guards(_set_ranges(lhs, ranges), parse_guards(entry.get("where", ""), sig))
    lvars = set(_var_names(lhs))
    rhs = []
    for n, d, t in parse_linear_combination(rhs_text, sig, allow_patterns=True):
        missing = set(_var_names(t)) - lvars
        if missing:
            raise TheoryFileError(f"rule {name}: right side uses unbound "
                                  f"{', '.join('$' + m for m in sorted(missing))}")
        rhs.append((th.field(n, d), _set_ranges(t, ranges)))
    return Schema(name, lhs, tuple(rhs), label)


def _var_names(p) -> list[str]:
    if isinstance(p, Word):
        return []
    if isinstance(p, Var):
        return [p.name]
    if isinstance(p, PNode):
        return [v for a in p.args for v in _var_names(a)]
    if isinstance(p, LChain):
        return _var_names(p.core) + [p.var]
    return [p.var] + _var_names(p.tail)


def _spine_ranges(given, lhs, family_bound: int, name: str) -> dict[str, tuple[int, int]]:
    chains = [v for v in _var_names(lhs) if _is_chain_var(lhs, v)]
    default = (0, family_bound)
    if given is None:
        return {v: default for v in chains}
    if isinstance(given, list):
        given = {v: given for v in chains}
    _want(given, dict, f"rule {name} 'spines'")
    out = {}
    for v in chains:
        r = given.get(v, list(default))
        if not isinstance(r, list) or len(r) not in (1, 2) or not all(isinstance(x, int) for x in r):
            raise TheoryFileError(f"rule {name}: spine range for ${v}* must be [lo] or [lo, hi]")
        lo, hi = (r[0], family_bound) if len(r) == 1 else tuple(r)
        if lo < 0 or hi < lo:
            raise TheoryFileError(f"rule {name}: bad spine range [{lo}, {hi}] for ${v}*")
        out[v] = (lo, hi)
    unknown = set(given) - set(chains)
    if unknown:
        raise TheoryFileError(f"rule {name}: 'spines' names no chain "
                              f"{', '.join(sorted(unknown))}")
    return out


def _is_chain_var(p, name: str) -> bool:
    if isinstance(p, PNode):
        return any(_is_chain_var(a, name) for a in p.args)
    if isinstance(p, LChain):
        return p.var == name or _is_chain_var(p.core, name)
    if isinstance(p, RChain):
        return p.var == name or _is_chain_var(p.tail, name)
    return False


def _set_ranges(p, ranges: Mapping[str, tuple[int, int]]):
    if isinstance(p, PNode):
        return PNode(p.op, tuple(_set_ranges(a, ranges) for a in p.args))
    if isinstance(p, LChain):
        lo, hi = ranges.get(p.var, (p.lo, p.hi))
        return LChain(p.op, _set_ranges(p.core, ranges), p.var, p.guards, lo, hi)
    if isinstance(p, RChain):
        lo, hi = ranges.get(p.var, (p.lo, p.hi))
        return RChain(p.op, p.var, _set_ranges(p.tail, ranges), p.guards, lo, hi)
    return p


# ---------------------------------------------------------------------------
# writing


def theory_to_dict(th: Theory) -> dict[str, Any]:
    """An explicit file (no builtin) that loads back to a theory with the same hash."""
    sig = th.signature
    sec: dict[str, Any] = {"mode": sig.mode.value, "generators": list(sig.generators)}
    if sig.mode is Mode.OMEGA:
        sec["operations"] = [f"{s}/{a}" for s, a in sig.operations]
    out: dict[str, Any] = {}
    if th.name:
        out["name"] = th.name
    out["signature"] = sec
    out["order"] = {"kind": th.order_kind.value}
    out["options"] = {"field": th.field.name, "family_bound": th.family_bound, "fuel": th.fuel}
    rules: dict[str, Any] = {}
    for r in th.rules:
        if isinstance(r, GroundRule):
            entry: dict[str, Any] = {"rule": r.describe(th.order)}
        else:
            entry = {"rule": _schema_text(r)}
            where = _where_text(r.lhs)
            if where:
                entry["where"] = where
            spines = _chain_ranges(r.lhs)
            if spines:
                entry["spines"] = spines
        if r.label != r.name:
            entry["label"] = r.label
        rules[r.name] = entry
    out["rules"] = rules
    return out


def dumps_theory(th: Theory) -> str:
    return tomli_w.dumps(theory_to_dict(th))


def dump_theory(th: Theory, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_theory(th), encoding="utf-8")


def _schema_text(s: Schema) -> str:
    return _strip_guards(s).describe()


def _strip_guards(s: Schema) -> Schema:
    def strip(p):
        if isinstance(p, Var):
            return Var(p.name)
        if isinstance(p, PNode):
            return PNode(p.op, tuple(strip(a) for a in p.args))
        if isinstance(p, LChain):
            return LChain(p.op, strip(p.core), p.var, (), p.lo, p.hi)
        if isinstance(p, RChain):
            return RChain(p.op, p.var, strip(p.tail), (), p.lo, p.hi)
        return p
    return Schema(s.name, strip(s.lhs), s.rhs, s.label)


def _where_text(p) -> str:
    clauses = []

    def walk(q):
        if isinstance(q, Var):
            if q.guards:
                clauses.append(f"${q.name}: " + ", ".join(map(str, q.guards)))
        elif isinstance(q, PNode):
            for a in q.args:
                walk(a)
        elif isinstance(q, LChain):
            walk(q.core)
            if q.guards:
                clauses.append(f"${q.var}*: " + ", ".join(map(str, q.guards)))
        elif isinstance(q, RChain):
            if q.guards:
                clauses.append(f"${q.var}*: " + ", ".join(map(str, q.guards)))
            walk(q.tail)

    walk(p)
    return "; ".join(clauses)


def _chain_ranges(p) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}

    def walk(q):
        if isinstance(q, PNode):
            for a in q.args:
                walk(a)
        elif isinstance(q, LChain):
            walk(q.core)
            out[q.var] = [q.lo] if q.hi is None else [q.lo, q.hi]
        elif isinstance(q, RChain):
            out[q.var] = [q.lo] if q.hi is None else [q.lo, q.hi]
            walk(q.tail)

    walk(p)
    return out


def builtin_theory(name: str, generators=("x",), family_bound: int | None = None,
                   field: Field = QQ) -> Theory:
    """A builtin by name with default parameters (the CLI's ``builtin:NAME`` shorthand)."""
    sec: dict[str, Any] = {"name": name, "generators": list(generators)}
    if family_bound is not None:
        sec["family_bound"] = family_bound
    if name in ("free_product", "embed_two_gen", "structure_constants"):
        raise TheoryFileError(f"builtin {name} needs algebra tables; write a theory file")
    return _builtin(sec, {}, field, None)


__all__ = [
    "BUILTINS", "FUEL_ENV", "ParseError", "TheoryFileError", "builtin_theory", "dump_theory",
    "dumps_theory", "load_theory", "loads_theory", "theory_from_dict", "theory_to_dict",
]
