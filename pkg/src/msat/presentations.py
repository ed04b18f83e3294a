"""Generators-and-relations presentations of algebras.

Free presentations (no relations) support exact enumeration through the
doctrine's engine; presented algebras are probed against finite models,
where the hom set is computed by constraint propagation over the
relation list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedDoctrine
from .signature import (
    Context,
    Doctrine,
    EqResult,
    Sort,
    Term,
    Var,
    enumerate_terms,
    print_term,
    term_vars,
    typecheck,
)


@dataclass(frozen=True)
class AlgebraPresentation:
    doctrine: Doctrine
    generators: dict
    relations: tuple = ()
    name: str = ""

    def context(self) -> Context:
        vars_ = []
        for sort in sorted(self.generators, key=lambda s: s.name):
            for g in self.generators[sort]:
                vars_.append(Var(g, sort))
        return Context(tuple(vars_))

    def gen_count(self) -> int:
        return sum(len(v) for v in self.generators.values())

    def contains(self, term: Term) -> bool:
        try:
            typecheck(term, self.context(), self.doctrine)
            return True
        except Exception:
            return False

    def equal(self, t1: Term, t2: Term) -> EqResult:
        if not self.relations and self.doctrine.exact:
            return self.doctrine.engine.equal(t1, t2)
        return EqResult.UNKNOWN

    def enumerate(self, sort: Sort, bound: int) -> list[Term]:
        if self.relations or not self.doctrine.exact:
            raise UnsupportedDoctrine(
                "bounded enumeration needs a free presentation over an exact engine"
            )
        return enumerate_terms(self.context(), sort, self.doctrine, bound)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": {
                s.name: list(gs) for s, gs in sorted(
                    self.generators.items(), key=lambda p: p[0].name)
            },
            "relations": [
                [print_term(l), print_term(r)] for l, r in self.relations
            ],
        }


def free_presentation(doctrine: Doctrine, generators: dict, name: str = "") -> AlgebraPresentation:
    gens = {s: tuple(gs) for s, gs in generators.items() if gs}
    return AlgebraPresentation(doctrine, gens, (), name)


def homs_into(P: AlgebraPresentation, alg, limit: int | None = None) -> list[dict]:
    """All generator assignments into a finite algebra satisfying every
    relation.  Assignments map generator names to carrier elements.

    Backtracking with unit propagation: a relation with one side fully
    evaluated and the other a bare unassigned generator forces a value.
    """
    from .models import evaluate

    ctx = P.context()
    gens = list(ctx.vars)
    rels = list(P.relations)
    rel_vars = [set(term_vars(l)) | set(term_vars(r)) for l, r in
                ((l, r) for l, r in rels)]
    rel_varnames = [
        set(term_vars(l).keys()) | set(term_vars(r).keys()) for l, r in rels
    ]

    def try_eval(term, assign):
        names = term_vars(term).keys()
        if any(n not in assign for n in names):
            return None, False
        return evaluate(alg, term, assign), True

    def propagate(assign):
        changed = True
        while changed:
            changed = False
            for (lhs, rhs), names in zip(rels, rel_varnames):
                unassigned = [n for n in names if n not in assign]
                if not unassigned:
                    lv, _ = try_eval(lhs, assign)
                    rv, _ = try_eval(rhs, assign)
                    if lv != rv:
                        return False
                    continue
                if len(unassigned) == 1:
                    for bare, other in ((lhs, rhs), (rhs, lhs)):
                        if isinstance(bare, Var) and bare.name == unassigned[0]:
                            val, ok = try_eval(other, assign)
                            if ok:
                                if val not in alg.carrier(bare.sort):
                                    return False
                                assign[bare.name] = val
                                changed = True
                            break
        return True

    solutions: list[dict] = []

    def search(assign):
        if limit is not None and len(solutions) >= limit:
            return
        pending = [g for g in gens if g.name not in assign]
        if not pending:
            solutions.append(dict(assign))
            return
        g = pending[0]
        for val in alg.carrier(g.sort):
            child = dict(assign)
            child[g.name] = val
            if propagate(child):
                search(child)
            if limit is not None and len(solutions) >= limit:
                return

    seed: dict = {}
    if propagate(seed):
        search(seed)
    return solutions
