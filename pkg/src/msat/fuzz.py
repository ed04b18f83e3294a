"""Seeded random generators for diagrams and simplicial diagrams.

The seed defaults to the MSAT_SEED environment variable so fuzzed runs
are reproducible across processes.
"""

from __future__ import annotations

import itertools
import os
import random

from .diagram import DiagramOnTruncation
from .models import FiniteAlgebra, as_functor
from .signature import Doctrine
from .simplicial import (
    SimplicialDiagram,
    TruncSimplicialSet,
    disjoint_union,
    nerve_of_preorder,
    standard,
)
from .theory_cat import TERMINAL, TheoryObject, generating_morphisms, objects_up_to


def default_seed() -> int:
    return int(os.environ.get("MSAT_SEED", "0"))


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(default_seed() if seed is None else seed)


def _swap_morphism(obj: TheoryObject):
    """The transposition variable map on a two-element object with equal
    sorts, None otherwise."""
    if obj.size != 2 or obj.sorts[0] != obj.sorts[1]:
        return None
    from .theory_cat import TheoryMorphism

    v1, v2 = obj.context().vars
    return TheoryMorphism(obj, obj, (v2, v1))


def twisted_algebra_diagram(rng: random.Random, alg: FiniteAlgebra,
                            object_bound: int = 2, term_bound: int = 2,
                            duplicates: int = 0) -> DiagramOnTruncation:
    """The functor of a finite algebra with elements renamed by a random
    bijection, optionally padded with duplicate cells at size-two
    objects.  A duplicate copies one element's outgoing images (in a
    transposition-consistent pair when needed), so the result stays
    functorial but stops being strict."""
    base = as_functor(alg, object_bound, term_bound)
    relabel = {}
    for obj in base.objects():
        labels = [f"{obj.key() or 'pt'}~{i}" for i in range(len(base.value(obj)))]
        rng.shuffle(labels)
        relabel[obj] = dict(zip(base.value(obj), labels))
    values = {obj: tuple(relabel[obj][x] for x in base.value(obj)) for obj in base.objects()}
    arrows = {
        m: {relabel[m.source][x]: relabel[m.target][y] for x, y in t.items()}
        for m, t in base.arrows.items()
    }
    values = {obj: list(v) for obj, v in values.items()}
    for d in range(duplicates):
        candidates = [obj for obj in base.objects() if obj.size == 2 and values[obj]]
        if not candidates:
            break
        obj = rng.choice(candidates)
        x = rng.choice(values[obj])
        swap = _swap_morphism(obj)
        y = arrows[swap][x] if swap else None
        x_dup = f"dup{d}a"
        values[obj].append(x_dup)
        if swap and y != x:
            y_dup = f"dup{d}b"
            values[obj].append(y_dup)
        else:
            y_dup = None
        from .theory_cat import identity as _identity

        ident = _identity(obj)
        for m, t in arrows.items():
            if m.source != obj:
                continue
            if m == ident:
                t[x_dup] = x_dup
                if y_dup is not None:
                    t[y_dup] = y_dup
                continue
            if swap is not None and m == swap:
                if y_dup is None:
                    t[x_dup] = x_dup if t[x] == x else t[x]
                else:
                    t[x_dup], t[y_dup] = y_dup, x_dup
                continue
            t[x_dup] = t[x]
            if y_dup is not None:
                t[y_dup] = t[y]
    values = {obj: tuple(v) for obj, v in values.items()}
    return DiagramOnTruncation(alg.doctrine, object_bound, term_bound, values, arrows)


def random_trivial_diagram(rng: random.Random, doctrine: Doctrine,
                           flavor: str = "any") -> DiagramOnTruncation:
    """Random functorial diagram on the one-sort, no-op doctrine.

    flavor: "strict" forces full product fibers, "nonlocal" guarantees a
    locality failure, "any" mixes both; "broken" corrupts one arrow
    entry so the functoriality check must reject the result.
    """
    el = doctrine.sorts[0]
    T1, T2 = TheoryObject.of(el), TheoryObject.of(el, el)
    n = rng.randint(2, 3) if flavor == "broken" else rng.randint(1, 3)
    points = [f"a{i}" for i in range(n)]
    strict = flavor == "strict" or (flavor in ("any",) and rng.random() < 0.5)
    cells: dict[tuple, list] = {}
    for a, b in itertools.product(points, repeat=2):
        if strict:
            count = 1
        elif a == b:
            count = rng.randint(1, 2)
        else:
            count = None  # fixed below, symmetric with the (b, a) count
        if count is not None:
            cells[(a, b)] = [f"c_{a}_{b}_{k}" for k in range(count)]
    if not strict:
        for a, b in itertools.combinations(points, 2):
            count = rng.randint(0, 2)
            cells[(a, b)] = [f"c_{a}_{b}_{k}" for k in range(count)]
            cells[(b, a)] = [f"c_{b}_{a}_{k}" for k in range(count)]
    all_cells = [c for pair in sorted(cells) for c in cells[pair]]
    proj = {}
    for (a, b), cs in cells.items():
        for c in cs:
            proj[c] = (a, b)
    values = {TERMINAL: ("pt",), T1: tuple(points), T2: tuple(all_cells)}
    diag = {a: cells[(a, a)][0] for a in points}
    swap_table = {}
    for (a, b), cs in cells.items():
        for k, c in enumerate(cs):
            swap_table[c] = cells[(b, a)][k]
    arrows = {}
    for m in generating_morphisms(doctrine, 2):
        if m.source == TERMINAL:
            arrows[m] = {"pt": "pt"} if m.target == TERMINAL else {}
        elif m.target == TERMINAL:
            arrows[m] = {x: "pt" for x in values[m.source]}
        elif m.source == T1 and m.target == T1:
            arrows[m] = {a: a for a in points}
        elif m.source == T1 and m.target == T2:
            arrows[m] = dict(diag)
        elif m.source == T2 and m.target == T1:
            slot = 0 if m.terms == (T2.context().vars[0],) else 1
            arrows[m] = {c: proj[c][slot] for c in all_cells}
        else:
            v1, v2 = T2.context().vars
            if m.terms == (v1, v2):
                arrows[m] = {c: c for c in all_cells}
            elif m.terms == (v2, v1):
                arrows[m] = dict(swap_table)
            elif m.terms == (v1, v1):
                arrows[m] = {c: diag[proj[c][0]] for c in all_cells}
            else:
                arrows[m] = {c: diag[proj[c][1]] for c in all_cells}
    if flavor == "broken":
        # corrupt one projection entry; the composite through the
        # diagonal must now disagree with the stored table
        target = next(m for m in arrows if m.source == T2 and m.target == T1)
        victim = rng.choice(all_cells)
        current = arrows[target][victim]
        arrows[target][victim] = rng.choice([a for a in points if a != current])
    return DiagramOnTruncation(doctrine, 2, 2, values, arrows)


def random_sset(rng: random.Random, cap: int = 3) -> TruncSimplicialSet:
    kind = rng.randrange(7)
    if kind == 0:
        return standard("delta", rng.randint(0, 2), cap=cap)
    if kind == 1:
        return standard("boundary", rng.randint(1, 2), cap=cap)
    if kind == 2:
        return standard("horn", 2, rng.randint(0, 2), cap=cap)
    if kind == 3:
        n = rng.randint(1, 3)
        rel = {(i, i) for i in range(n)}
        for i in range(n):
            for j in range(n):
                if rng.random() < 0.4:
                    rel.add((i, j))
        changed = True  # reflexive-transitive closure: nerves need preorders
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return nerve_of_preorder(range(n), lambda a, b: (a, b) in rel, cap=cap)
    if kind == 4:
        return disjoint_union(
            standard("delta", 0, cap=cap), standard("delta", rng.randint(0, 1), cap=cap)
        )
    if kind == 5:
        return disjoint_union(standard("boundary", 2, cap=cap), standard("delta", 0, cap=cap))
    return standard("delta", 1, cap=cap)


def product_simplicial_diagram(doctrine: Doctrine, S: TruncSimplicialSet,
                               inflate: bool = False) -> SimplicialDiagram:
    """Levelwise product diagram of a simplicial set on the one-sort,
    no-op doctrine; `inflate` adds a diagonal copy at the square object,
    which keeps functoriality and naturality but breaks strictness."""
    el = doctrine.sorts[0]
    T1, T2 = TheoryObject.of(el), TheoryObject.of(el, el)
    cap = S.cap
    levels = []
    face_tables: dict = {}
    degen_tables: dict = {}

    def level_values(n):
        pairs = list(itertools.product(S.level(n), repeat=2))
        extra = [("d", x) for x in S.level(n)] if inflate else []
        return {
            TERMINAL: ((),),
            T1: tuple(S.level(n)),
            T2: tuple(pairs + extra),
        }

    def structure(n, table):
        def on_elem(obj, x):
            if obj == TERMINAL:
                return ()
            if obj == T1:
                return table[x]
            if isinstance(x, tuple) and len(x) == 2 and x[0] == "d" and inflate and x[1] in table:
                return ("d", table[x[1]])
            return (table[x[0]], table[x[1]])

        return on_elem

    for n in range(cap + 1):
        vals = level_values(n)
        arrows = {}
        for m in generating_morphisms(doctrine, 2):
            if m.source == TERMINAL:
                arrows[m] = {(): ()} if m.target == TERMINAL else {}
                continue
            if m.target == TERMINAL:
                arrows[m] = {x: () for x in vals[m.source]}
                continue
            if m.source == T1 and m.target == T1:
                arrows[m] = {x: x for x in vals[T1]}
            elif m.source == T1 and m.target == T2:
                arrows[m] = {x: (x, x) for x in vals[T1]}
            elif m.source == T2 and m.target == T1:
                slot = 0 if m.terms == (T2.context().vars[0],) else 1
                arrows[m] = {
                    x: (x[1] if x[0] == "d" and inflate else x[slot]) for x in vals[T2]
                }
            else:
                v1, v2 = T2.context().vars
                if m.terms == (v1, v2):
                    arrows[m] = {x: x for x in vals[T2]}
                elif m.terms == (v2, v1):
                    arrows[m] = {
                        x: x if (inflate and x[0] == "d") else (x[1], x[0])
                        for x in vals[T2]
                    }
                else:
                    slot = 0 if m.terms == (v1, v1) else 1

                    def dval(x, slot=slot):
                        base = x[1] if (inflate and x[0] == "d") else x[slot]
                        return (base, base)

                    arrows[m] = {x: dval(x) for x in vals[T2]}
        levels.append(DiagramOnTruncation(doctrine, 2, 2, vals, arrows))
    objs = objects_up_to(doctrine, 2)
    for n in range(1, cap + 1):
        for i in range(n + 1):
            fn = structure(n, S.faces[(n, i)])
            face_tables[(n, i)] = {
                obj: {x: fn(obj, x) for x in levels[n].value(obj)} for obj in objs
            }
    for n in range(cap):
        for j in range(n + 1):
            fn = structure(n, S.degeneracies[(n, j)])
            degen_tables[(n, j)] = {
                obj: {x: fn(obj, x) for x in levels[n].value(obj)} for obj in objs
            }
    return SimplicialDiagram(doctrine, cap, levels, face_tables, degen_tables)
