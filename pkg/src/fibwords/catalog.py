"""Bundled finite-group catalog: every nilpotent group of order <= 16,
the mod-3 Heisenberg group, and a non-nilpotent control.

Tables are generated from structured coordinates (cyclic factors,
semidirect products, central products), then serialized as JSON with
element 0 as the identity.
"""

from __future__ import annotations

import json
import os
from importlib import resources

from .finite import FiniteGroup


def _table_from(elements, op):
    index = {e: i for i, e in enumerate(elements)}
    return [[index[op(x, y)] for y in elements] for x in elements]


def cyclic(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def direct_product(t1, t2):
    n1, n2 = len(t1), len(t2)
    elements = [(i, j) for i in range(n1) for j in range(n2)]
    return _table_from(elements,
                       lambda x, y: (t1[x[0]][y[0]], t2[x[1]][y[1]]))


def dihedral(n: int):
    """Order 2n: pairs (i, f) with (i,f)(j,g) = (i + (-1)^f j, f xor g)."""
    elements = [(i, f) for f in range(2) for i in range(n)]
    elements.sort(key=lambda e: (e[1], e[0]))

    def op(x, y):
        i, f = x
        j, g = y
        return ((i + (j if f == 0 else -j)) % n, f ^ g)

    return _table_from(elements, op)


def quaternion(n: int):
    """Generalized quaternion of order 2n (n even): x^n = 1, y^2 = x^{n//2},
    y x y^-1 = x^-1."""
    elements = [(i, j) for j in range(2) for i in range(n)]

    def op(x, y):
        i, f = x
        j, g = y
        k = (i + j) % n if f == 0 else (i - j) % n
        if f and g:
            k = (k + n // 2) % n
        return (k, f ^ g)

    return _table_from(elements, op)


def semidihedral16():
    """Order 16: x^8 = y^2 = 1, y x y^-1 = x^3."""
    elements = [(i, j) for j in range(2) for i in range(8)]

    def op(x, y):
        i, f = x
        j, g = y
        return ((i + (j if f == 0 else 3 * j)) % 8, f ^ g)

    return _table_from(elements, op)


def modular16():
    """Order 16: x^8 = y^2 = 1, y x y^-1 = x^5."""
    elements = [(i, j) for j in range(2) for i in range(8)]

    def op(x, y):
        i, f = x
        j, g = y
        return ((i + (j if f == 0 else 5 * j)) % 8, f ^ g)

    return _table_from(elements, op)


def pauli16():
    """Central product of the quaternion and cyclic structure on 16
    elements: triples (k, x, z) with phase twist k' += 2*z*x'."""
    elements = [(k, x, z) for k in range(4) for x in range(2) for z in range(2)]

    def op(p, q):
        k1, x1, z1 = p
        k2, x2, z2 = q
        return ((k1 + k2 + 2 * z1 * x2) % 4, x1 ^ x2, z1 ^ z2)

    return _table_from(elements, op)


def z4_semidirect_z4():
    """Order 16: Z4 by Z4 with inversion action, (i,j)(k,l) =
    (i + (-1)^j k, j + l)."""
    elements = [(i, j) for j in range(4) for i in range(4)]

    def op(x, y):
        i, j = x
        k, l = y
        return ((i + (k if j % 2 == 0 else -k)) % 4, (j + l) % 4)

    return _table_from(elements, op)


def z2xz2_semidirect_z4():
    """Order 16: (Z2 x Z2) by Z4 where the generator swaps coordinates."""
    elements = [((x, y), j) for j in range(4) for x in range(2)
                for y in range(2)]

    def op(p, q):
        (x, y), j = p
        (u, v), l = q
        if j % 2 == 1:
            u, v = v, u
        return (((x ^ u), (y ^ v)), (j + l) % 4)

    return _table_from(elements, op)


def heisenberg(p: int):
    """Upper unitriangular 3x3 matrices over Z/p, order p^3, class 2."""
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def op(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)

    return _table_from(elements, op)


def _builders():
    z2 = cyclic(2)
    z4 = cyclic(4)
    d4 = dihedral(4)
    q8 = quaternion(4)
    z2xz2 = direct_product(z2, z2)
    return {
        "z1": lambda: cyclic(1),
        "z2": lambda: z2,
        "z3": lambda: cyclic(3),
        "z4": lambda: z4,
        "z2xz2": lambda: z2xz2,
        "z5": lambda: cyclic(5),
        "z6": lambda: cyclic(6),
        "z7": lambda: cyclic(7),
        "z8": lambda: cyclic(8),
        "z4xz2": lambda: direct_product(z4, z2),
        "z2xz2xz2": lambda: direct_product(z2xz2, z2),
        "d4": lambda: d4,
        "q8": lambda: q8,
        "z9": lambda: cyclic(9),
        "z3xz3": lambda: direct_product(cyclic(3), cyclic(3)),
        "z10": lambda: cyclic(10),
        "z11": lambda: cyclic(11),
        "z12": lambda: cyclic(12),
        "z6xz2": lambda: direct_product(cyclic(6), z2),
        "z13": lambda: cyclic(13),
        "z14": lambda: cyclic(14),
        "z15": lambda: cyclic(15),
        "z16": lambda: cyclic(16),
        "z8xz2": lambda: direct_product(cyclic(8), z2),
        "z4xz4": lambda: direct_product(z4, z4),
        "z4xz2xz2": lambda: direct_product(z4, z2xz2),
        "z2xz2xz2xz2": lambda: direct_product(z2xz2, z2xz2),
        "d8": lambda: dihedral(8),
        "sd16": semidihedral16,
        "q16": lambda: quaternion(8),
        "m16": modular16,
        "d4xz2": lambda: direct_product(d4, z2),
        "q8xz2": lambda: direct_product(q8, z2),
        "pauli16": pauli16,
        "z4sz4": z4_semidirect_z4,
        "z2xz2sz4": z2xz2_semidirect_z4,
        "heis3": lambda: heisenberg(3),
        "s3": lambda: dihedral(3),
    }


NILPOTENT_NAMES = tuple(n for n in _builders() if n != "s3")
ALL_NAMES = tuple(_builders())


def catalog_names():
    """Names of all bundled groups; all but s3 are nilpotent."""
    return ALL_NAMES


def build_group(name: str) -> FiniteGroup:
    """Construct a catalog group directly from its structured definition."""
    builders = _builders()
    if name not in builders:
        raise KeyError(f"unknown catalog group {name!r}")
    return FiniteGroup(name, builders[name]())


def write_catalog(directory):
    """Serialize every catalog group to <directory>/<name>.json."""
    os.makedirs(directory, exist_ok=True)
    for name in ALL_NAMES:
        g = build_group(name)
        path = os.path.join(directory, f"{name}.json")
        payload = {"name": g.name, "order": g.order, "table": g.table}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, separators=(",", ":"))
            fh.write("\n")


def load_catalog_group(name: str) -> FiniteGroup:
    """Load one bundled group from the packaged JSON data."""
    ref = resources.files(__package__).joinpath(f"groups/{name}.json")
    data = json.loads(ref.read_text(encoding="utf-8"))
    return FiniteGroup(data["name"], data["table"])
