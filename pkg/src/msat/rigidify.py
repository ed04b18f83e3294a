"""Strictification of set-valued diagrams on a theory truncation.

Two independent routes are implemented and cross-checked:

* the step route: objectwise pushouts that first make mapping in along
  the projection-induced map surjective, then injective (via the fold
  map), iterated under a budget with a fixed-point detector;
* the presentation route: a generators-and-relations algebra read off
  the diagram, whose maps into any finite model are compared with the
  diagram's natural transformations (the adjunction bijection).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .diagram import (
    DiagramOnTruncation,
    coproduct_diagram,
    element_key,
    natural_transformations,
    representable_diagram,
)
from .errors import BudgetExhausted, HomEnumerationIncomplete, InvalidParameter, NotFunctorial
from .models import AlgebraFunctor
from .presentations import AlgebraPresentation, homs_into
from .signature import Doctrine, Sort, Var, substitute
from .theory_cat import (
    TERMINAL,
    TheoryMorphism,
    TheoryObject,
    compose,
    generating_morphisms,
    hom_enumerate,
    objects_up_to,
    projection,
)


@dataclass(frozen=True)
class ProjectionMap:
    """The coproduct of the projection-induced inclusions of the size-one
    representables into the representable of a product object."""

    target: TheoryObject
    projections: tuple[TheoryMorphism, ...]

    @property
    def arity(self) -> int:
        return self.target.size

    def factors(self) -> list[TheoryObject]:
        return [TheoryObject.of(s) for s in self.target.sorts]


def projection_map_set(doctrine: Doctrine, bound: int) -> list[ProjectionMap]:
    """One projection map per object of size 2..bound."""
    if bound < 2:
        raise InvalidParameter("projection map set needs bound >= 2")
    out = []
    for obj in objects_up_to(doctrine, bound):
        if obj.size < 2:
            continue
        projs = tuple(projection(obj, [i]) for i in range(1, obj.size + 1))
        out.append(ProjectionMap(obj, projs))
    return out


def check_strictly_local(X: DiagramOnTruncation):
    """Bijectivity of mapping in along every projection map, which at
    set level is the canonical map X(T) -> prod X(T_i), plus the
    terminal condition."""
    failures = []
    if len(X.value(TERMINAL)) != 1:
        failures.append({"object": "", "value": len(X.value(TERMINAL)), "product": 1})
    for p in projection_map_set(X.doctrine, X.object_bound):
        tables = [X.arrows.get(m) for m in p.projections]
        detail = {"object": p.target.key(), "value": len(X.value(p.target))}
        prod = list(itertools.product(*(X.value(o) for o in p.factors())))
        detail["product"] = len(prod)
        if any(t is None for t in tables):
            detail["error"] = "projection tables missing"
            failures.append(detail)
            continue
        try:
            images = [tuple(t[x] for t in tables) for x in X.value(p.target)]
        except KeyError:
            detail["error"] = "projection tables partial"
            failures.append(detail)
            continue
        if len(set(images)) != len(images) or set(images) != set(prod):
            failures.append(detail)
    return (not failures), failures


# -- exactness of attaching-data enumeration -----------------------------


def hom_enumeration_exact(doctrine: Doctrine, object_bound: int, term_bound: int) -> bool:
    """True when bounded hom enumeration provably lists entire hom sets
    and every attaching action is derivable from the generating arrows.

    Only the no-op doctrine qualifies: there every morphism is a
    variable map and itself generating.  Edge-path doctrines always put
    loop sorts in the truncation (infinite hom sets), and the fold-map
    gluings need actions on morphisms that are not composites of
    generating arrows inside the object bound, so their steps run under
    the explicit approximate flag."""
    kind = doctrine.meta.get("kind", doctrine.name)
    return kind == "trivial"


# -- the two pushout steps ------------------------------------------------


@dataclass
class StepResult:
    diagram: DiagramOnTruncation
    unit: dict  # object -> {old element -> new element}
    kind: str
    target: str
    approximate: bool
    sizes: dict = field(default_factory=dict)


class _Quotient:
    """Union-find over tagged elements, one family per object."""

    def __init__(self):
        self.parent: dict = {}

    def add(self, key):
        self.parent.setdefault(key, key)

    def find(self, key):
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != key:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _finish_step(X, kind, p, membership, uf, member_image, approximate):
    """Collapse union-find classes into a fresh diagram with integer
    elements, rebuild arrow tables, and record the unit map.  Union-find
    keys are (object, tag) pairs so classes never cross objects."""
    doctrine = X.doctrine
    order: dict[TheoryObject, list] = {}
    buckets_of: dict[TheoryObject, dict] = {}
    index = {}
    for obj in X.objects():
        buckets: dict = {}
        for key in membership[obj]:
            buckets.setdefault(uf.find((obj, key)), []).append(key)
        reps = sorted(buckets, key=lambda r: min(element_key(k) for k in buckets[r]))
        order[obj] = reps
        buckets_of[obj] = buckets
        for idx, rep in enumerate(reps):
            for key in buckets[rep]:
                index[(obj, key)] = idx
    values = {obj: tuple(range(len(order[obj]))) for obj in X.objects()}
    arrows = {}
    for w in generating_morphisms(doctrine, X.object_bound):
        table = {}
        for rep in order[w.source]:
            imgs = set()
            for member in buckets_of[w.source][rep]:
                img = member_image(member, w)
                if img is not None:
                    imgs.add(index[(w.target, img)])
            if len(imgs) > 1:
                raise NotFunctorial(
                    f"{kind} step produced inconsistent images along {w}"
                )
            if imgs:
                cls = index[(w.source, buckets_of[w.source][rep][0])]
                table[cls] = imgs.pop()
        arrows[w] = table
    out = DiagramOnTruncation(doctrine, X.object_bound, X.term_bound, values, arrows)
    unit = {
        obj: {x: index[(obj, ("x", x))] for x in X.value(obj)} for obj in X.objects()
    }
    sizes = {obj.key(): len(values[obj]) for obj in X.objects()}
    return StepResult(out, unit, kind, p.target.key(), approximate, sizes)


def surjectivity_step(X: DiagramOnTruncation, p: ProjectionMap,
                      bound: int | None = None, approximate: bool = False) -> StepResult:
    """Pushout gluing one representable cell onto X for every tuple in
    the product of the size-one values, making the restriction along the
    projection map surjective."""
    doctrine = X.doctrine
    s = X.term_bound if bound is None else bound
    exact = hom_enumeration_exact(doctrine, X.object_bound, s)
    if not exact and not approximate:
        raise HomEnumerationIncomplete(
            "attaching data is not provably complete; pass approximate=True"
        )
    closure, conflicts = X.arrow_closure()
    if conflicts:
        raise NotFunctorial(conflicts[0])
    factors = p.factors()
    tuples = sorted(
        itertools.product(*(X.value(o) for o in factors)), key=element_key
    )
    rep_values = {
        obj: [m.terms for m in hom_enumerate(p.target, obj, doctrine, s)]
        for obj in X.objects()
    }
    rep_sets = {obj: set(v) for obj, v in rep_values.items()}
    membership = {
        obj: [("x", x) for x in X.value(obj)]
        + [("b", zi, b) for zi in range(len(tuples)) for b in rep_values[obj]]
        for obj in X.objects()
    }
    uf = _Quotient()
    for obj in X.objects():
        for key in membership[obj]:
            uf.add((obj, key))
    for zi, z in enumerate(tuples):
        for i, factor in enumerate(factors):
            for obj in X.objects():
                for f in hom_enumerate(factor, obj, doctrine, s):
                    b = compose(doctrine, f, p.projections[i])
                    if b.terms not in rep_sets[obj]:
                        continue
                    table = closure.get(f)
                    if table is None or z[i] not in table:
                        if not approximate:
                            raise HomEnumerationIncomplete(
                                f"no derived action for {f}"
                            )
                        continue
                    uf.union((obj, ("b", zi, b.terms)), (obj, ("x", table[z[i]])))

    def member_image(member, w):
        if member[0] == "x":
            img = X.arrows.get(w, {}).get(member[1])
            return None if img is None else ("x", img)
        _, zi, terms = member
        composite = compose(doctrine, w, TheoryMorphism(p.target, w.source, terms))
        if composite.terms in rep_sets[w.target]:
            return ("b", zi, composite.terms)
        return None

    return _finish_step(X, "surjectivity", p, membership, uf, member_image, not exact)


def injectivity_step(X: DiagramOnTruncation, p: ProjectionMap,
                     bound: int | None = None, approximate: bool = False) -> StepResult:
    """Pushout along the fold map: every pair of elements of X(T) with
    equal projections has its entire representable image identified."""
    doctrine = X.doctrine
    s = X.term_bound if bound is None else bound
    exact = hom_enumeration_exact(doctrine, X.object_bound, s)
    if not exact and not approximate:
        raise HomEnumerationIncomplete(
            "attaching data is not provably complete; pass approximate=True"
        )
    closure, conflicts = X.arrow_closure()
    if conflicts:
        raise NotFunctorial(conflicts[0])
    proj_tables = [X.arrows.get(m, {}) for m in p.projections]
    tgt_vals = X.value(p.target)
    pairs = []
    for u, v in itertools.combinations(tgt_vals, 2):
        if all(u in t and v in t and t[u] == t[v] for t in proj_tables):
            pairs.append((u, v))
    membership = {obj: [("x", x) for x in X.value(obj)] for obj in X.objects()}
    uf = _Quotient()
    for obj in X.objects():
        for key in membership[obj]:
            uf.add((obj, key))
    from_target = [
        (m, table) for m, table in closure.items() if m.source == p.target
    ]
    for u, v in pairs:
        for m, table in from_target:
            if u in table and v in table:
                uf.union((m.target, ("x", table[u])), (m.target, ("x", table[v])))

    def member_image(member, w):
        img = X.arrows.get(w, {}).get(member[1])
        return None if img is None else ("x", img)

    return _finish_step(X, "injectivity", p, membership, uf, member_image, not exact)


# -- budgeted localization -------------------------------------------------


@dataclass
class LocalizeResult:
    diagram: DiagramOnTruncation
    trace: list
    unit: dict  # object -> {original element -> final element}


def _compose_units(first: dict, second: dict) -> dict:
    return {
        obj: {x: second[obj][y] for x, y in table.items()}
        for obj, table in first.items()
    }


def _signature(X: DiagramOnTruncation):
    vals = tuple((obj.key(), len(X.value(obj))) for obj in X.objects())
    arrs = tuple(
        (str(m), tuple(sorted(X.arrows[m].items()))) for m in sorted(X.arrows, key=str)
    )
    return (vals, arrs)


def localize(X: DiagramOnTruncation, budget: int,
             bound: int | None = None, approximate: bool = False) -> LocalizeResult:
    """Alternate surjectivity and injectivity steps over all projection
    maps until strict locality holds or the budget is exhausted.  The
    trace records per-step cardinalities; a sweep that changes nothing
    while locality still fails raises BudgetExhausted early."""
    trace: list = []
    unit = {obj: {x: x for x in X.value(obj)} for obj in X.objects()}
    current = X
    ok, _ = check_strictly_local(current)
    if ok:
        trace.append({"step": 0, "kind": "none", "note": "already strictly local"})
        return LocalizeResult(current, trace, unit)
    steps = 0
    pmaps = projection_map_set(X.doctrine, X.object_bound)
    while True:
        before = _signature(current)
        for p in pmaps:
            for step_fn in (surjectivity_step, injectivity_step):
                if steps >= budget:
                    raise BudgetExhausted(
                        f"no strictly local diagram within {budget} steps", trace
                    )
                res = step_fn(current, p, bound=bound, approximate=approximate)
                steps += 1
                unit = _compose_units(unit, res.unit)
                trace.append({
                    "step": steps,
                    "kind": res.kind,
                    "target": res.target,
                    "sizes": res.sizes,
                    "approximate": res.approximate,
                })
                current = res.diagram
                ok, _ = check_strictly_local(current)
                if ok:
                    trace.append({"step": steps, "kind": "verdict", "note": "strictly local"})
                    return LocalizeResult(current, trace, unit)
        if _signature(current) == before:
            raise BudgetExhausted("fixed point reached without strict locality", trace)


# -- the presentation route -------------------------------------------------


def _generator_table(X: DiagramOnTruncation):
    table = {}
    for sort in sorted(X.doctrine.sorts, key=lambda s: s.name):
        obj = TheoryObject.of(sort)
        for idx, x in enumerate(X.value(obj)):
            table[(obj, x)] = Var(f"gen_{sort.name}_{idx}", sort)
    return table


def rigidify_presentation(X: DiagramOnTruncation) -> AlgebraPresentation:
    """Generators: the size-one values of X.  Relations: one per defined
    entry of a generating arrow into a size-one object, equating the
    arrow's term (on the projected generators) with the image's
    generator."""
    gens = _generator_table(X)
    generators: dict[Sort, list] = {}
    for (obj, x), var in gens.items():
        generators.setdefault(var.sort, []).append(var.name)
    relations = []
    seen = set()
    for w, table in X.arrows.items():
        if w.target.size != 1:
            continue
        src = w.source
        proj_tables = [X.arrows.get(projection(src, [i]), {}) for i in range(1, src.size + 1)]
        tgt_obj = TheoryObject.of(w.target.sorts[0])
        for z, img in table.items():
            try:
                asg = {
                    f"v{i+1}": gens[(TheoryObject.of(src.sorts[i]), proj_tables[i][z])]
                    for i in range(src.size)
                }
            except KeyError:
                continue
            lhs = substitute(w.terms[0], asg)
            rhs = gens[(tgt_obj, img)]
            if lhs == rhs:
                continue
            key = (lhs, rhs)
            if key not in seen:
                seen.add(key)
                relations.append(key)
    generators_t = {s: tuple(v) for s, v in generators.items()}
    return AlgebraPresentation(X.doctrine, generators_t, tuple(relations), name="strictified")


def _transpose_hom(X: DiagramOnTruncation, gens, hom):
    """The natural transformation X -> H_A induced by a generator
    assignment; None when a needed projection entry is missing."""
    nat = {}
    for obj in X.objects():
        if obj.size == 0:
            for x in X.value(obj):
                nat[(obj, x)] = ()
            continue
        proj_tables = [
            X.arrows.get(projection(obj, [i]), {}) for i in range(1, obj.size + 1)
        ]
        for x in X.value(obj):
            try:
                nat[(obj, x)] = tuple(
                    hom[gens[(TheoryObject.of(obj.sorts[i]), proj_tables[i][x])].name]
                    for i in range(obj.size)
                )
            except KeyError:
                return None
    return nat


def verify_universal_property(X: DiagramOnTruncation, P: AlgebraPresentation,
                              model_bound: int = 3, models=None):
    """For every catalog model A: generator assignments P -> A must
    biject with natural transformations X -> H_A under the canonical
    transpose.  Returns (ok, per-model report)."""
    from .catalog import models_for

    if models is None:
        models = models_for(X.doctrine, model_bound)
    gens = _generator_table(X)
    report = []
    ok = True
    for A in models:
        H = AlgebraFunctor(A, X.object_bound)
        nats = natural_transformations(X, H)
        homs = homs_into(P, A)
        transposed = []
        for h in homs:
            nat = _transpose_hom(X, gens, h)
            transposed.append(nat)
        nat_keys = {frozenset(n.items()) for n in nats}
        trans_keys = [frozenset(n.items()) for n in transposed if n is not None]
        model_ok = (
            len(homs) == len(nats)
            and len(trans_keys) == len(homs)
            and len(set(trans_keys)) == len(trans_keys)
            and set(trans_keys) == nat_keys
        )
        ok = ok and model_ok
        report.append({
            "model": A.name,
            "homs": len(homs),
            "nats": len(nats),
            "bijection": model_ok,
        })
    return ok, report


def verify_ktk(doctrine: Doctrine, p: ProjectionMap, model_bound: int = 3,
               object_bound: int = 2, term_bound: int = 2, models=None):
    """Strictifying both sides of a projection map must give the same
    finite-model hom sets: maps out of either presented algebra into A
    biject with the product of A's carriers at the factor sorts."""
    from .catalog import models_for

    if models is None:
        models = models_for(doctrine, model_bound)
    rep_big = representable_diagram(doctrine, p.target, object_bound, term_bound)
    summands = [
        representable_diagram(doctrine, f, object_bound, term_bound)
        for f in p.factors()
    ]
    rep_sum = coproduct_diagram(doctrine, summands, object_bound, term_bound)
    P_big = rigidify_presentation(rep_big)
    P_sum = rigidify_presentation(rep_sum)
    gens_big = _generator_table(rep_big)
    gens_sum = _generator_table(rep_sum)
    report = []
    ok = True
    for A in models:
        want = list(itertools.product(*(A.carriers[s] for s in p.target.sorts)))
        homs_big = homs_into(P_big, A)
        big_keys = [
            tuple(
                h[gens_big[(TheoryObject.of(p.target.sorts[i]), p.projections[i].terms)].name]
                for i in range(p.arity)
            )
            for h in homs_big
        ]
        homs_sum = homs_into(P_sum, A)
        sum_keys = []
        for h in homs_sum:
            key = []
            for i, factor in enumerate(p.factors()):
                ident_elem = (i, (factor.context().vars[0],))
                key.append(h[gens_sum[(factor, ident_elem)].name])
            sum_keys.append(tuple(key))
        big_ok = len(big_keys) == len(set(big_keys)) and set(big_keys) == set(want)
        sum_ok = len(sum_keys) == len(set(sum_keys)) and set(sum_keys) == set(want)
        ok = ok and big_ok and sum_ok
        report.append({
            "model": A.name,
            "product": len(want),
            "via_product_object": len(big_keys),
            "via_coproduct": len(sum_keys),
            "bijections": big_ok and sum_ok,
        })
    return ok, report


def restrict_nat(nat: dict, unit: dict) -> dict:
    """Pull a natural transformation back along a step's unit map."""
    out = {}
    for obj, table in unit.items():
        for x, y in table.items():
            out[(obj, x)] = nat[(obj, y)]
    return out
