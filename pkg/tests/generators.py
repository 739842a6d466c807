"""Seeded random generators shared by property and acceptance tests."""

from __future__ import annotations

import random

from aspkit.core import (
    Atom,
    BodyLiteral,
    CriteriaSet,
    Disjunction,
    Literal,
    MinimizeEntry,
    MinimizeStatement,
    Program,
    Rule,
    SumConstraint,
    WeightedLiteral,
)

NAMES = "abcdefgh"


def iset(names: str) -> frozenset[Atom]:
    """Interpretation from a comma-separated name string."""
    return frozenset(Atom(n.strip()) for n in names.split(",") if n.strip())


def fmt(interpretation) -> str:
    return "{" + ",".join(sorted(a.name for a in interpretation)) + "}"


def random_sum(rng: random.Random, pool, negation=True) -> SumConstraint:
    k = rng.randint(1, 3)
    elements = tuple(
        WeightedLiteral(
            Literal(rng.choice(pool), negation and rng.random() < 0.3),
            rng.randint(1, 2))
        for _ in range(k))
    total = sum(e.weight for e in elements)
    lower = rng.choice([None, 0, 1, rng.randint(0, total)])
    upper = rng.choice([None, None, rng.randint(0, total), total + 1])
    return SumConstraint(lower, elements, upper)


def random_program(rng: random.Random, max_atoms=8, max_rules=10,
                   minimize=False, levels=(1, 2), weights=(1, 2)) -> Program:
    """A random extended program with sum heads/bodies and negation."""
    pool = [Atom(n) for n in NAMES[:rng.randint(2, max_atoms)]]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        dice = rng.random()
        if dice < 0.45:
            head = Disjunction((rng.choice(pool),))
        elif dice < 0.85:
            head = random_sum(rng, pool)
        else:
            head = Disjunction(())
        body = []
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.6:
                body.append(BodyLiteral(rng.choice(pool), rng.random() < 0.4))
            else:
                body.append(BodyLiteral(random_sum(rng, pool),
                                        rng.random() < 0.25))
        rules.append(Rule(head, tuple(body)))
    entries = ()
    if minimize:
        entries = tuple(
            MinimizeEntry(Literal(rng.choice(pool), rng.random() < 0.3),
                          rng.choice(weights), rng.choice(levels))
            for _ in range(rng.randint(0, 6)))
    return Program(tuple(rules), MinimizeStatement(entries))


def random_criteria(rng: random.Random, program: Program,
                    criteria=("card", "incl", "pref"),
                    levels=(1, 2), weights=(1, 2),
                    empty_chance=0.08) -> CriteriaSet:
    """Random criteria over a level/weight grid, with prefer pairs drawn
    from the program's minimize literals."""
    relations = []
    for level in levels:
        for weight in weights:
            if rng.random() < 0.65:
                relations.append((level, weight, rng.choice(criteria)))
    if rng.random() < empty_chance:
        relations = []
    prefer = []
    literals = sorted({e.literal for e in program.minimize.entries})
    if len(literals) >= 2:
        for _ in range(rng.randint(0, 5)):
            pair = tuple(rng.sample(literals, 2))
            if pair not in prefer:
                prefer.append(pair)
    return CriteriaSet(tuple(relations), tuple(prefer))
