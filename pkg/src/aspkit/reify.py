"""Fact-format reification of ground extended programs.

A reification is an ordered list of ground facts over this vocabulary
(one fact per line, terminated by ``.``, no whitespace inside terms):

    rule(pos(H),pos(conjunction(S))).  one per rule; H is atom(a),
                                       sum(L,S,U), or the constant false
    set(S,E).                          conjunction membership; E is
                                       pos(X) or neg(X) over atom(a)
                                       or sum(L,S,U)
    wlist(S,Q,L,W).                    entry Q of weighted-literal list
                                       S: literal pos(atom(a)) or
                                       neg(atom(a)) with weight W
    scc(C,E).                          membership of atoms and
                                       connecting body elements in the
                                       non-trivial SCC labeled C
    minimize(J,S).                     minimize list of priority level J

List indexes Q run consecutively from 0, so duplicates in multisets
survive.  Absent bounds are materialized: 0 as lower, the total weight
as upper.  Structurally identical weighted-literal lists share one
label, as do identical conjunctions; the two label spaces are separate.
Proper disjunction heads are outside this format.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import consequence
from .core import (
    Atom,
    Body,
    BodyLiteral,
    ContractViolationError,
    Disjunction,
    Literal,
    MinimizeEntry,
    MinimizeStatement,
    Program,
    Rule,
    SumConstraint,
    WeightedLiteral,
    is_extended,
)
from .parser import ParseError, _TokenStream, tokenize


class ReifyError(Exception):
    """Malformed or inconsistent reified facts."""


@dataclass(frozen=True)
class Term:
    """A ground term: a functor with term or integer arguments."""

    functor: str
    args: tuple["Term | int", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.functor
        return f"{self.functor}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class ReifiedFact:
    predicate: str
    args: tuple[Term | int, ...]

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(str(a) for a in self.args)})."


FALSE = Term("false")


def _atom_term(atom: Atom) -> Term:
    return Term("atom", (Term(atom.name),))


def _literal_term(literal: Literal) -> Term:
    wrapper = "neg" if literal.negated else "pos"
    return Term(wrapper, (_atom_term(literal.atom),))


def _signed(term: Term, negated: bool) -> Term:
    return Term("neg" if negated else "pos", (term,))


@dataclass
class Reification:
    """A program together with its labeled structure and fact list."""

    program: Program
    facts: tuple[ReifiedFact, ...] = ()
    #: per rule: unwrapped head term and body conjunction label
    rules: tuple[tuple[Term, int], ...] = ()
    #: conjunction label -> member element terms (pos/neg wrapped)
    conjunctions: dict[int, tuple[Term, ...]] = field(default_factory=dict)
    #: list label -> ((literal term, weight), ...)
    wlists: dict[int, tuple[tuple[Term, int], ...]] = field(default_factory=dict)
    #: (level, list label) pairs, ascending by level
    minimize_lists: tuple[tuple[int, int], ...] = ()
    #: (component label, member term) pairs in emission order
    scc_members: tuple[tuple[int, Term], ...] = ()

    def sum_entries(self, term: Term) -> tuple[tuple[Term, int], ...]:
        """wlist entries of a sum(L,S,U) term."""
        label = term.args[1]
        assert isinstance(label, int)
        return self.wlists.get(label, ())


class _Builder:
    def __init__(self, program: Program):
        self.program = program
        self._wlist_labels: dict[tuple, int] = {}
        self._conj_labels: dict[tuple, int] = {}
        self.reification = Reification(program)
        self._facts: list[ReifiedFact] = []
        self._rules: list[tuple[Term, int]] = []

    def _wlist(self, entries: tuple[tuple[Term, int], ...],
               out: list[ReifiedFact]) -> int:
        label = self._wlist_labels.get(entries)
        if label is None:
            label = len(self._wlist_labels)
            self._wlist_labels[entries] = label
            self.reification.wlists[label] = entries
            for index, (literal, weight) in enumerate(entries):
                out.append(
                    ReifiedFact("wlist", (label, index, literal, weight)))
        return label

    def _sum_term(self, sc: SumConstraint, out: list[ReifiedFact]) -> Term:
        entries = tuple(
            (_literal_term(wl.literal), wl.weight) for wl in sc.elements)
        label = self._wlist(entries, out)
        lower = sc.lower if sc.lower is not None else 0
        upper = sc.upper if sc.upper is not None else sc.total
        return Term("sum", (lower, label, upper))

    def _conjunction(self, body: Body, out: list[ReifiedFact]) -> int:
        members: list[Term] = []
        member_facts: list[list[ReifiedFact]] = []
        for bl in body:
            facts: list[ReifiedFact] = []
            inner = (_atom_term(bl.element) if isinstance(bl.element, Atom)
                     else self._sum_term(bl.element, facts))
            members.append(_signed(inner, bl.negated))
            member_facts.append(facts)
        key = tuple(members)
        label = self._conj_labels.get(key)
        if label is None:
            label = len(self._conj_labels)
            self._conj_labels[key] = label
            self.reification.conjunctions[label] = key
            for member, facts in zip(members, member_facts):
                out.append(ReifiedFact("set", (label, member)))
                out.extend(facts)
        return label

    def add_rule(self, rule: Rule) -> None:
        head_facts: list[ReifiedFact] = []
        if isinstance(rule.head, Disjunction):
            if len(rule.head.atoms) > 1:
                raise ContractViolationError(
                    "proper disjunction heads cannot be reified")
            head = _atom_term(rule.head.atoms[0]) if rule.head.atoms else FALSE
        else:
            head = self._sum_term(rule.head, head_facts)
        body_facts: list[ReifiedFact] = []
        label = self._conjunction(rule.body, body_facts)
        self._facts.append(ReifiedFact(
            "rule", (_signed(head, False),
                     _signed(Term("conjunction", (label,)), False))))
        self._facts.extend(head_facts)
        self._facts.extend(body_facts)
        self._rules.append((head, label))

    def add_sccs(self) -> None:
        graph = consequence.dependency_graph(self.program)
        decomposition = consequence.sccs(graph, self.program)
        members: list[tuple[int, Term]] = []
        ignore: list[ReifiedFact] = []
        for component in decomposition.nontrivial():
            assert component.label is not None
            for atom in sorted(component.atoms):
                members.append((component.label, _atom_term(atom)))
            for element in component.connecting:
                if isinstance(element, SumConstraint):
                    term = self._sum_term(element, ignore)
                else:
                    term = Term(
                        "conjunction", (self._conjunction(element, ignore),))
                entry = (component.label, term)
                if entry not in members:
                    members.append(entry)
        assert not ignore, "scc members must already be labeled"
        self.reification.scc_members = tuple(members)
        for label, term in members:
            self._facts.append(ReifiedFact("scc", (label, term)))

    def add_minimize(self, statement: MinimizeStatement) -> None:
        lists: list[tuple[int, int]] = []
        for level in statement.levels():
            entries = tuple(
                (_literal_term(e.literal), e.weight)
                for e in statement.entries if e.level == level)
            facts: list[ReifiedFact] = []
            label = self._wlist(entries, facts)
            self._facts.append(ReifiedFact("minimize", (level, label)))
            self._facts.extend(facts)
            lists.append((level, label))
        self.reification.minimize_lists = tuple(lists)

    def finish(self) -> Reification:
        self.reification.facts = tuple(self._facts)
        self.reification.rules = tuple(self._rules)
        return self.reification


def reify_structure(program: Program) -> Reification:
    """Reify with full access to the labeled structure."""
    if not is_extended(program):
        raise ContractViolationError(
            "only extended programs (no proper disjunctions) can be reified")
    builder = _Builder(program)
    for rule in program.rules:
        builder.add_rule(rule)
    builder.add_sccs()
    builder.add_minimize(program.minimize)
    return builder.finish()


def reify(program: Program) -> list[ReifiedFact]:
    """The fact list describing ``program`` (deterministic)."""
    return list(reify_structure(program).facts)


def facts_to_text(facts) -> str:
    return "".join(f"{fact}\n" for fact in facts)


def _parse_term(ts) -> Term | int:
    if ts.at("int"):
        return int(ts.take("int").value)
    name = ts.take("name").value
    args: list[Term | int] = []
    if ts.take_if("punct", "("):
        while True:
            args.append(_parse_term(ts))
            if not ts.take_if("punct", ","):
                break
        ts.take("punct", ")")
    return Term(name, tuple(args))


def text_to_facts(text: str) -> list[ReifiedFact]:
    """Parse fact text; syntax errors carry source spans."""
    ts = _TokenStream(tokenize(text))
    facts: list[ReifiedFact] = []
    while not ts.at("eof"):
        span = ts.current.span
        term = _parse_term(ts)
        ts.take("punct", ".")
        if isinstance(term, int) or not term.args:
            raise ParseError("expected a fact with arguments", span)
        facts.append(ReifiedFact(term.functor, term.args))
    return facts


def _expect_int(value, what: str) -> int:
    if not isinstance(value, int):
        raise ReifyError(f"{what} must be an integer, got {value}")
    return value


def _decode_atom(term) -> Atom:
    if (isinstance(term, Term) and term.functor == "atom"
            and len(term.args) == 1 and isinstance(term.args[0], Term)
            and not term.args[0].args):
        return Atom(term.args[0].functor)
    raise ReifyError(f"malformed atom term: {term}")


def _decode_literal(term) -> Literal:
    if isinstance(term, Term) and term.functor in ("pos", "neg") \
            and len(term.args) == 1:
        return Literal(_decode_atom(term.args[0]), term.functor == "neg")
    raise ReifyError(f"malformed literal term: {term}")


class _FactReader:
    def __init__(self, facts):
        self.rule_facts: list[tuple[Term, Term]] = []
        self.set_facts: dict[int, list[Term]] = {}
        self.wlist_facts: dict[int, dict[int, tuple[Term, int]]] = {}
        self.scc_facts: list[tuple[int, Term]] = []
        self.minimize_facts: list[tuple[int, int]] = []
        for fact in facts:
            getattr(self, f"_read_{fact.predicate}", self._unknown)(fact)

    def _unknown(self, fact: ReifiedFact) -> None:
        raise ReifyError(f"unknown predicate in fact: {fact}")

    def _read_rule(self, fact: ReifiedFact) -> None:
        if len(fact.args) != 2:
            raise ReifyError(f"rule/2 expected: {fact}")
        head, body = fact.args
        for part in (head, body):
            if not (isinstance(part, Term) and part.functor == "pos"
                    and len(part.args) == 1):
                raise ReifyError(f"rule arguments must be pos(...): {fact}")
        self.rule_facts.append((head.args[0], body.args[0]))

    def _read_set(self, fact: ReifiedFact) -> None:
        if len(fact.args) != 2:
            raise ReifyError(f"set/2 expected: {fact}")
        label = _expect_int(fact.args[0], "set label")
        member = fact.args[1]
        if not isinstance(member, Term):
            raise ReifyError(f"malformed set member: {fact}")
        self.set_facts.setdefault(label, []).append(member)

    def _read_wlist(self, fact: ReifiedFact) -> None:
        if len(fact.args) != 4:
            raise ReifyError(f"wlist/4 expected: {fact}")
        label = _expect_int(fact.args[0], "wlist label")
        index = _expect_int(fact.args[1], "wlist index")
        weight = _expect_int(fact.args[3], "wlist weight")
        literal = fact.args[2]
        if not isinstance(literal, Term):
            raise ReifyError(f"malformed wlist literal: {fact}")
        entries = self.wlist_facts.setdefault(label, {})
        if index in entries:
            raise ReifyError(f"duplicate wlist index {index} in list {label}")
        entries[index] = (literal, weight)

    def _read_scc(self, fact: ReifiedFact) -> None:
        if len(fact.args) != 2 or not isinstance(fact.args[1], Term):
            raise ReifyError(f"scc/2 expected: {fact}")
        self.scc_facts.append(
            (_expect_int(fact.args[0], "scc label"), fact.args[1]))

    def _read_minimize(self, fact: ReifiedFact) -> None:
        if len(fact.args) != 2:
            raise ReifyError(f"minimize/2 expected: {fact}")
        self.minimize_facts.append(
            (_expect_int(fact.args[0], "minimize level"),
             _expect_int(fact.args[1], "minimize list label")))

    def wlist_entries(self, label: int, dangling_ok: bool = False):
        if label not in self.wlist_facts:
            if dangling_ok:
                return ()
            raise ReifyError(f"dangling wlist label {label}")
        by_index = self.wlist_facts[label]
        if sorted(by_index) != list(range(len(by_index))):
            raise ReifyError(
                f"wlist {label} indexes are not consecutive from 0")
        return tuple(by_index[i] for i in range(len(by_index)))

    def decode_sum(self, term: Term) -> SumConstraint:
        if term.functor != "sum" or len(term.args) != 3:
            raise ReifyError(f"malformed sum term: {term}")
        lower = _expect_int(term.args[0], "sum lower bound")
        label = _expect_int(term.args[1], "sum list label")
        upper = _expect_int(term.args[2], "sum upper bound")
        entries = self.wlist_entries(label)
        try:
            weighted = tuple(
                WeightedLiteral(_decode_literal(lit), weight)
                for lit, weight in entries)
            return SumConstraint(lower, weighted, upper)
        except ValueError as exc:
            raise ReifyError(str(exc)) from exc

    def decode_member(self, term: Term) -> BodyLiteral:
        if term.functor not in ("pos", "neg") or len(term.args) != 1 \
                or not isinstance(term.args[0], Term):
            raise ReifyError(f"malformed conjunction member: {term}")
        inner = term.args[0]
        negated = term.functor == "neg"
        if inner.functor == "atom":
            return BodyLiteral(_decode_atom(inner), negated)
        if inner.functor == "sum":
            return BodyLiteral(self.decode_sum(inner), negated)
        raise ReifyError(f"malformed conjunction member: {term}")

    def decode_body(self, term: Term) -> Body:
        if term.functor != "conjunction" or len(term.args) != 1:
            raise ReifyError(f"malformed body term: {term}")
        label = _expect_int(term.args[0], "conjunction label")
        return tuple(self.decode_member(m)
                     for m in self.set_facts.get(label, ()))

    def decode_head(self, term: Term):
        if term == FALSE:
            return Disjunction(())
        if term.functor == "atom":
            return Disjunction((_decode_atom(term),))
        if term.functor == "sum":
            return self.decode_sum(term)
        raise ReifyError(f"malformed head term: {term}")


def parse_reified(facts) -> Program:
    """Reconstruct the program a fact list describes.

    Labels may differ from the canonical ones; scc/2 facts are not
    trusted but validated against a recomputed decomposition.
    """
    reader = _FactReader(facts)
    rules = tuple(
        Rule(reader.decode_head(head), reader.decode_body(body))
        for head, body in reader.rule_facts)
    entries: list[MinimizeEntry] = []
    for level, label in sorted(reader.minimize_facts, key=lambda lv: lv[0]):
        for literal, weight in reader.wlist_entries(label):
            entries.append(
                MinimizeEntry(_decode_literal(literal), weight, level))
    program = Program(rules, MinimizeStatement(tuple(entries)))

    claimed: set[tuple[int, object]] = set()
    for label, term in reader.scc_facts:
        if term.functor == "atom":
            claimed.add((label, _decode_atom(term)))
        elif term.functor == "conjunction":
            claimed.add((label, reader.decode_body(term)))
        elif term.functor == "sum":
            claimed.add((label, reader.decode_sum(term)))
        else:
            raise ReifyError(f"malformed scc member: {term}")
    decomposition = consequence.sccs(
        consequence.dependency_graph(program), program)
    recomputed: set[tuple[int, object]] = set()
    for component in decomposition.nontrivial():
        assert component.label is not None
        for atom in component.atoms:
            recomputed.add((component.label, atom))
        for element in component.connecting:
            recomputed.add((component.label, element))
    if claimed != recomputed:
        raise ReifyError("scc facts are inconsistent with the recomputed "
                         "dependency decomposition")
    return program
