"""Attribute-level dependency inference with proof trees.

`attr_closure` is the usual least fixpoint; `derive` turns a closure run
into a `Derivation` certificate built from five rules (Reflexivity, Axiom,
Consequence, Composition, Additivity, with Projectivity accepted on replay).
Every produced tree re-validates node by node.

`check_rule_soundness` validates a rule instance empirically: it enumerates
all small tables and confirms that whenever the premises hold so does the
conclusion.  `fd_trade` checks both sides of the antecedent/consequent
trading equivalence on concrete relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import rel
from .errors import ResourceLimitError, UnknownAttributeError
from .fd import AttrFd, parse_fd, satisfies_oracle, satisfies_typed
from .rel import Atom, Carrier, Rel
from .tables import Scheme, Table, count_tables, enumerate_tables

REFLEXIVITY = "Reflexivity"
COMPOSITION = "Composition"
CONSEQUENCE = "Consequence"
ADDITIVITY = "Additivity"
PROJECTIVITY = "Projectivity"
AXIOM = "Axiom"

RULES = (REFLEXIVITY, COMPOSITION, CONSEQUENCE, ADDITIVITY, PROJECTIVITY,
         AXIOM)


@dataclass(frozen=True)
class Derivation:
    """A proof tree; each node's conclusion follows from its premises."""

    conclusion: AttrFd
    rule: str
    premises: tuple["Derivation", ...] = ()


def _universe(fds: Iterable[AttrFd], attrs: Iterable[str]) -> frozenset:
    out = set(attrs)
    for fd in fds:
        out |= fd.antecedent | fd.consequent
    return frozenset(out)


def _check_universe(fds, attrs, universe) -> None:
    if universe is None:
        return
    unknown = _universe(fds, attrs) - frozenset(universe)
    if unknown:
        raise UnknownAttributeError(
            f"attributes {sorted(unknown)} not in scheme")


def attr_closure(fds: Sequence[AttrFd], attrs: Iterable[str],
                 universe: Iterable[str] | None = None) -> frozenset:
    """Least attribute set containing `attrs` and closed under `fds`."""
    _check_universe(fds, attrs, universe)
    closure = set(attrs)
    changed = True
    while changed:
        changed = False
        for fd in fds:
            if fd.antecedent <= closure and not fd.consequent <= closure:
                closure |= fd.consequent
                changed = True
    return frozenset(closure)


def derive(fds: Sequence[AttrFd], goal: AttrFd,
           universe: Iterable[str] | None = None) -> Optional[Derivation]:
    """A proof of `goal` from `fds`, or None when it is not derivable.

    The tree mirrors a closure run: fds fire in list order, each firing
    contributes an Axiom leaf joined in by Consequence, Composition and
    Additivity steps; the result is a certificate, not a minimal proof.
    """
    _check_universe(fds, goal.antecedent | goal.consequent, universe)
    base = goal.antecedent
    covered = frozenset(base)
    tree = Derivation(AttrFd(base, covered), REFLEXIVITY)
    changed = True
    while changed:
        changed = False
        for fd in fds:
            if fd.antecedent <= covered and not fd.consequent <= covered:
                axiom = Derivation(fd, AXIOM)
                if fd.antecedent == covered:
                    ante = tree
                else:
                    ante = Derivation(AttrFd(base, fd.antecedent),
                                      CONSEQUENCE, (tree,))
                step = Derivation(AttrFd(base, fd.consequent),
                                  COMPOSITION, (ante, axiom))
                covered = covered | fd.consequent
                tree = Derivation(AttrFd(base, covered),
                                  ADDITIVITY, (tree, step))
                changed = True
    if not goal.consequent <= covered:
        return None
    if tree.conclusion != goal:
        tree = Derivation(goal, CONSEQUENCE, (tree,))
    return tree


def validate_derivation(d: Derivation, axioms: Sequence[AttrFd]) -> bool:
    """Replay the tree and confirm every node follows by its rule."""
    c = d.conclusion
    ps = d.premises
    if d.rule == AXIOM:
        return not ps and c in list(axioms)
    if d.rule == REFLEXIVITY:
        return not ps and c.antecedent == c.consequent
    if d.rule == CONSEQUENCE:
        if len(ps) != 1:
            return False
        p = ps[0].conclusion
        ok = p.antecedent <= c.antecedent and c.consequent <= p.consequent
    elif d.rule == PROJECTIVITY:
        if len(ps) != 1:
            return False
        p = ps[0].conclusion
        ok = p.antecedent == c.antecedent and c.consequent <= p.consequent
    elif d.rule == COMPOSITION:
        if len(ps) != 2:
            return False
        p1, p2 = ps[0].conclusion, ps[1].conclusion
        ok = (p1.antecedent == c.antecedent
              and p1.consequent == p2.antecedent
              and p2.consequent == c.consequent)
    elif d.rule == ADDITIVITY:
        if len(ps) != 2:
            return False
        p1, p2 = ps[0].conclusion, ps[1].conclusion
        ok = (p1.antecedent == c.antecedent == p2.antecedent
              and c.consequent == p1.consequent | p2.consequent)
    else:
        return False
    return ok and all(validate_derivation(p, axioms) for p in ps)


def derivation_to_dict(d: Derivation) -> dict:
    """JSON form with stable field order: conclusion, rule, premises."""
    return {
        "conclusion": str(d.conclusion),
        "rule": d.rule,
        "premises": [derivation_to_dict(p) for p in d.premises],
    }


def derivation_from_dict(obj: dict) -> Derivation:
    return Derivation(
        parse_fd(obj["conclusion"]),
        obj["rule"],
        tuple(derivation_from_dict(p) for p in obj.get("premises", ())),
    )


# ---------------------------------------------------------------------------
# Empirical rule validation


@dataclass(frozen=True)
class RuleInstance:
    premises: tuple[AttrFd, ...]
    conclusion: AttrFd


@dataclass(frozen=True)
class SoundnessResult:
    ok: bool
    witness: Optional[Table] = None

    def __bool__(self) -> bool:
        return self.ok


def binary_scheme(attrs: Iterable[str], domain_size: int = 2) -> Scheme:
    """Scheme over sorted attribute names with small numeric atom domains."""
    values = tuple(Atom(str(i)) for i in range(domain_size))
    return Scheme(tuple(
        (name, Carrier(name, values)) for name in sorted(attrs)))


def check_rule_soundness(instance: RuleInstance, max_rows: int = 4,
                         domain_size: int = 2,
                         cap: int = 10 ** 7) -> SoundnessResult:
    """Enumerate all tables in scope; premises must entail the conclusion."""
    attrs = _universe(list(instance.premises), instance.conclusion.antecedent
                      | instance.conclusion.consequent)
    scheme = binary_scheme(attrs, domain_size)
    if count_tables(scheme, max_rows) > cap:
        raise ResourceLimitError("rule soundness scope over candidate cap")
    for table in enumerate_tables(scheme, max_rows):
        if all(satisfies_oracle(table, p) for p in instance.premises):
            if not satisfies_oracle(table, instance.conclusion):
                return SoundnessResult(False, table)
    return SoundnessResult(True)


def fd_trade(x: Rel, z: Rel, r: Rel, k: Rel, y: Rel) -> bool:
    """Both sides of the trading equivalence agree on these relations.

    Left: x -> y on the composite z . r . k~; right: x.k -> y.z on r.
    Returns True exactly when the two checks coincide (they always must).
    """
    middle = rel.compose(z, rel.compose(r, rel.converse(k)))
    left = satisfies_typed(middle, x, y)
    right = satisfies_typed(r, rel.compose(x, k), rel.compose(y, z))
    return left == right
