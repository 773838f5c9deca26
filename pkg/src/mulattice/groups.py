"""Finite groups as dense multiplication tables built from permutation actions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

DEFAULT_MAX_ORDER = 384

_ATOM_RE = re.compile(r"[A-Z]+\d*")
_INT_RE = re.compile(r"\d+")


class GroupSpecError(ValueError):
    """Base class for group-spec parsing and construction failures."""


class SpecSyntaxError(GroupSpecError):
    def __init__(self, text: str, pos: int, message: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos} in {text!r}")


class UnsupportedFamilyError(SpecSyntaxError):
    pass


class OrderBoundExceededError(GroupSpecError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """Parsed description of a constructible finite group.

    kind is one of cyclic, dihedral, symmetric, alternating, quaternion8,
    klein4, product, perm.  `n` is the family parameter, `factors` the
    operands of a direct product, and `perms` the generating permutations
    of a perm spec, stored as canonical disjoint cycles on 1-based points.
    """

    kind: str
    n: int = 0
    factors: tuple["GroupSpec", ...] = ()
    perms: tuple[tuple[tuple[int, ...], ...], ...] = ()


def serialize_group_spec(spec: GroupSpec) -> str:
    if spec.kind == "cyclic":
        return f"C{spec.n}"
    if spec.kind == "dihedral":
        return f"D{spec.n}"
    if spec.kind == "symmetric":
        return f"S{spec.n}"
    if spec.kind == "alternating":
        return f"A{spec.n}"
    if spec.kind == "quaternion8":
        return "Q8"
    if spec.kind == "klein4":
        return "V4"
    if spec.kind == "product":
        return "x".join(serialize_group_spec(f) for f in spec.factors)
    if spec.kind == "perm":
        parts = []
        for cycles in spec.perms:
            if not cycles:
                parts.append("()")
            else:
                parts.append("".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles))
        return "perm:" + ",".join(parts)
    raise GroupSpecError(f"unknown spec kind {spec.kind!r}")


def spec_order(spec: GroupSpec) -> int | None:
    """Group order predictable from the spec alone; None for perm specs."""
    if spec.kind == "cyclic":
        return spec.n
    if spec.kind == "dihedral":
        return 2 * spec.n
    if spec.kind == "symmetric":
        return _factorial(spec.n)
    if spec.kind == "alternating":
        return max(1, _factorial(spec.n) // 2)
    if spec.kind == "quaternion8":
        return 8
    if spec.kind == "klein4":
        return 4
    if spec.kind == "product":
        total = 1
        for f in spec.factors:
            sub = spec_order(f)
            if sub is None:
                return None
            total *= sub
        return total
    return None


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the spec grammar: C<n>, D<n>, S<n>, A<n>, Q8, V4, x-products, perm:...

    Raises SpecSyntaxError with the offending position on malformed input.
    """
    stripped = text.strip()
    offset = text.index(stripped) if stripped else 0
    if stripped.startswith("perm:"):
        return _parse_perm_spec(text, offset + len("perm:"))
    if not stripped:
        raise SpecSyntaxError(text, 0, "empty group spec")

    factors: list[GroupSpec] = []
    pos = offset
    end = offset + len(stripped)
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        m = _ATOM_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(text, pos, "expected a group atom")
        factors.append(_parse_atom(text, m.group(0), pos))
        pos = m.end()
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        if text[pos] != "x":
            raise SpecSyntaxError(text, pos, "expected 'x' between factors")
        pos += 1
    if len(factors) == 1:
        return factors[0]
    return GroupSpec(kind="product", factors=tuple(factors))


def _parse_atom(text: str, atom: str, pos: int) -> GroupSpec:
    if atom == "Q8":
        return GroupSpec(kind="quaternion8")
    if atom == "V4":
        return GroupSpec(kind="klein4")
    letter = atom[0]
    digits = atom[1:]
    kinds = {"C": "cyclic", "D": "dihedral", "S": "symmetric", "A": "alternating"}
    if len(atom) > 1 and atom[1:].isdigit() and letter in kinds:
        n = int(digits)
        if n < 1:
            raise SpecSyntaxError(text, pos, "family parameter must be >= 1")
        return GroupSpec(kind=kinds[letter], n=n)
    raise UnsupportedFamilyError(text, pos, f"unsupported group family {atom!r}")


def _parse_perm_spec(text: str, pos: int) -> GroupSpec:
    perms: list[tuple[tuple[int, ...], ...]] = []
    end = len(text.rstrip())
    while True:
        cycles, pos = _parse_one_permutation(text, pos, end)
        perms.append(_canonical_cycles(cycles, text, pos))
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            break
        if text[pos] != ",":
            raise SpecSyntaxError(text, pos, "expected ',' between permutations")
        pos += 1
    return GroupSpec(kind="perm", perms=tuple(perms))


def _parse_one_permutation(text: str, pos: int, end: int):
    cycles: list[tuple[int, ...]] = []
    saw_any = False
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end or text[pos] != "(":
            if not saw_any:
                raise SpecSyntaxError(text, pos, "expected '(' opening a cycle")
            return cycles, pos
        pos += 1
        points: list[int] = []
        while True:
            while pos < end and text[pos].isspace():
                pos += 1
            if pos < end and text[pos] == ")":
                pos += 1
                break
            m = _INT_RE.match(text, pos)
            if m is None:
                raise SpecSyntaxError(text, pos, "expected a point or ')'")
            point = int(m.group(0))
            if point < 1:
                raise SpecSyntaxError(text, pos, "points are 1-based")
            points.append(point)
            pos = m.end()
        cycles.append(tuple(points))
        saw_any = True


def _canonical_cycles(cycles, text: str, pos: int):
    """Apply the written cycles and re-read the action as canonical disjoint cycles."""
    degree = max((p for c in cycles for p in c), default=1)
    image = list(range(degree + 1))  # 1-based; slot 0 unused
    for cycle in cycles:
        seen_in_cycle = set()
        for p in cycle:
            if p in seen_in_cycle:
                raise SpecSyntaxError(text, pos, f"point {p} repeated within a cycle list")
            seen_in_cycle.add(p)
        # cycle (a b c) sends a->b->c->a; compose left-to-right with what we have
        mapping = {cycle[i]: cycle[(i + 1) % len(cycle)] for i in range(len(cycle))}
        image = [mapping.get(image[p], image[p]) if p else 0 for p in range(degree + 1)]
    out = []
    visited = set()
    for start in range(1, degree + 1):
        if start in visited or image[start] == start:
            continue
        cyc = [start]
        visited.add(start)
        nxt = image[start]
        while nxt != start:
            cyc.append(nxt)
            visited.add(nxt)
            nxt = image[nxt]
        out.append(tuple(cyc))
    return tuple(out)


@dataclass(frozen=True)
class GroupTable:
    """A finite group with elements 0..order-1 and identity 0."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    elem_order: tuple[int, ...]
    name: str
    spec: GroupSpec | None = None
    identity: int = field(default=0)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]


def _compose(p, q):
    # apply q first, then p
    return tuple(p[x] for x in q)


def _perm_inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _rotation(n):
    return tuple((i + 1) % n for i in range(n))


def _reflection(n):
    return tuple((n - i) % n for i in range(n))


def _transposition(n, a, b):
    out = list(range(n))
    out[a], out[b] = out[b], out[a]
    return tuple(out)


_QUATERNION_AXIS_MUL = {
    # axes 1, i, j, k numbered 1..4; entries are (sign, axis)
    (2, 3): (1, 4), (3, 4): (1, 2), (4, 2): (1, 3),
    (3, 2): (-1, 4), (4, 3): (-1, 2), (2, 4): (-1, 3),
}


def _quaternion_generators():
    # symbols 0..7 = 1, -1, i, -i, j, -j, k, -k; generators act by left
    # multiplication on the symbols (regular embedding into S8)
    def axis_mul(a, b):
        if a == 1:
            return (1, b)
        if b == 1:
            return (1, a)
        if a == b:
            return (-1, 1)
        return _QUATERNION_AXIS_MUL[(a, b)]

    def decode(idx):
        return (1 if idx % 2 == 0 else -1, idx // 2 + 1)

    def encode(sign, axis):
        return (axis - 1) * 2 + (0 if sign == 1 else 1)

    def mul(x, y):
        sx, ax = decode(x)
        sy, ay = decode(y)
        sz, az = axis_mul(ax, ay)
        return encode(sx * sy * sz, az)

    def left_perm(x):
        return tuple(mul(x, y) for y in range(8))

    return [left_perm(encode(1, 2)), left_perm(encode(1, 3))]  # i and j


def _generators(spec: GroupSpec):
    """Generating permutations (0-based tuples) and the degree they act on."""
    kind = spec.kind
    if kind == "cyclic":
        n = spec.n
        return ([] if n == 1 else [_rotation(n)]), max(n, 1)
    if kind == "dihedral":
        n = spec.n
        if n == 1:
            return [_transposition(2, 0, 1)], 2
        if n == 2:
            return [_transposition(4, 0, 1), _transposition(4, 2, 3)], 4
        return [_rotation(n), _reflection(n)], n
    if kind == "symmetric":
        n = spec.n
        if n == 1:
            return [], 1
        gens = [_transposition(n, 0, 1)]
        if n > 2:
            gens.append(_rotation(n))
        return gens, n
    if kind == "alternating":
        n = spec.n
        if n < 3:
            return [], max(n, 1)
        gens = []
        for i in range(n - 2):
            out = list(range(n))
            out[i], out[i + 1], out[i + 2] = out[i + 1], out[i + 2], out[i]
            gens.append(tuple(out))
        return gens, n
    if kind == "quaternion8":
        return _quaternion_generators(), 8
    if kind == "klein4":
        return [_transposition(4, 0, 1), _transposition(4, 2, 3)], 4
    if kind == "product":
        gens = []
        offset = 0
        for f in spec.factors:
            fg, fd = _generators(f)
            for g in fg:
                full = list(range(offset)) + [x + offset for x in g]
                gens.append(tuple(full))
            offset += fd
        padded = [g + tuple(range(len(g), offset)) for g in gens]
        return padded, offset
    if kind == "perm":
        degree = max((p for perm in spec.perms for c in perm for p in c), default=1)
        gens = []
        for perm in spec.perms:
            out = list(range(degree))
            for cycle in perm:
                for i, p in enumerate(cycle):
                    out[p - 1] = cycle[(i + 1) % len(cycle)] - 1
            gens.append(tuple(out))
        return gens, degree
    raise GroupSpecError(f"unknown spec kind {kind!r}")


def _close_generators(gens, degree, max_order):
    identity = tuple(range(degree))
    elems = {identity}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = _compose(p, g)
            if q not in elems:
                if len(elems) >= max_order:
                    raise OrderBoundExceededError(
                        f"generator closure exceeds the max order bound {max_order}")
                elems.add(q)
                frontier.append(q)
    return sorted(elems)


def build_group(spec: GroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Construct the dense multiplication table for a parsed spec."""
    predicted = spec_order(spec)
    if predicted is not None and predicted > max_order:
        raise OrderBoundExceededError(
            f"group of order {predicted} exceeds the max order bound {max_order}")
    gens, degree = _generators(spec)
    elems = _close_generators(gens, degree, max_order)
    index = {p: i for i, p in enumerate(elems)}
    order = len(elems)
    mult = tuple(tuple(index[_compose(p, q)] for q in elems) for p in elems)
    inv = tuple(index[_perm_inverse(p)] for p in elems)
    orders = []
    for i in range(order):
        k, x = 1, i
        while x != 0:
            x = mult[x][i]
            k += 1
        orders.append(k)
    return GroupTable(order=order, mult=mult, inv=inv, elem_order=tuple(orders),
                      name=serialize_group_spec(spec), spec=spec)


def group_from_text(text: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    return build_group(parse_group_spec(text), max_order=max_order)


def chi(G: GroupTable, n: int) -> int:
    """Number of elements of order exactly n."""
    return sum(1 for o in G.elem_order if o == n)


def element_conjugacy_classes(G: GroupTable) -> tuple[tuple[int, ...], ...]:
    """Element conjugacy classes by direct orbit enumeration, canonically ordered."""
    classes = []
    assigned = [False] * G.order
    for g in range(G.order):
        if assigned[g]:
            continue
        orbit = {G.mult[G.mult[x][g]][G.inv[x]] for x in range(G.order)}
        cls = tuple(sorted(orbit))
        for h in cls:
            assigned[h] = True
        classes.append(cls)
    return tuple(classes)
