"""Homological classification of silted algebras.

Each endomorphism algebra is probed through minimal projective
resolutions of its simple modules, computed by projective-cover /
kernel iteration over the multiplication-table basis.  Blocks with
global dimension at most 2 are tilted and get a Dynkin type from a
Coxeter-polynomial reference table; blocks of global dimension exactly
3 are strictly shod.  A permutation-invariant fingerprint groups
isomorphic algebras so enumerations can be counted up to isomorphism.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cache
from typing import Dict, List, Optional, Sequence, Tuple

from .endo import (
    BoundQuiverAlgebra,
    blocks,
    cartan_data,
    endomorphism_algebra,
)
from .modules import (
    Path,
    QuiverRep,
    kernel_subrep,
    make_rep,
    minimal_cover,
    simple_rep,
)
from .linalg import RatMatrix
from .quivers import (
    DynkinType,
    Quiver,
    cartan_matrix,
    parse_quiver,
    dynkin_type,
)
from .silting import SiltingObject

RESOLUTION_CAP = 10


class _BoundAlgebraOps:
    """Projectives of a bound quiver algebra over its path-class basis."""

    def __init__(self, b: BoundQuiverAlgebra):
        self.b = b
        self.quiver = b.gabriel
        self._ix: Dict[Tuple[int, int, Tuple[str, ...]], int] = {
            key: x for x, key in enumerate(b.basis_paths)
        }
        self._from: Dict[int, Dict[int, List[Tuple[str, ...]]]] = {
            v: {u: [] for u in b.gabriel.vertices} for v in b.gabriel.vertices
        }
        for s, t, arrows in b.basis_paths:
            self._from[s][t].append(arrows)

    def basis_paths(self, v: int) -> Dict[int, Tuple[Path, ...]]:
        return {
            u: tuple(Path(v, u, arrows) for arrows in self._from[v][u])
            for u in self.quiver.vertices
        }

    def projective(self, v: int) -> QuiverRep:
        dims = [len(self._from[v][u]) for u in self.quiver.vertices]
        mats = {}
        for a in self.quiver.arrows:
            src_paths = self._from[v][a.source]
            tgt_paths = self._from[v][a.target]
            tgt_pos = [
                self._ix[(v, a.target, arrows)] for arrows in tgt_paths
            ]
            arrow_ix = self._ix.get((a.source, a.target, (a.id,)))
            if arrow_ix is None:
                raise RuntimeError("arrow path missing from algebra basis")
            rows: List[List[Q]] = []
            for arrows in src_paths:
                x = self._ix[(v, a.source, arrows)]
                prod = self.b.mult[x][arrow_ix]
                rows.append([prod[p] for p in tgt_pos])
            ent = tuple(e for row in rows for e in row)
            mats[a.id] = RatMatrix(len(src_paths), len(tgt_paths), ent)
        return make_rep(self.quiver, dims, mats)


_OPS_MEMO: Dict[int, _BoundAlgebraOps] = {}


def _ops(b: BoundQuiverAlgebra) -> _BoundAlgebraOps:
    key = id(b)
    if key not in _OPS_MEMO:
        _OPS_MEMO[key] = _BoundAlgebraOps(b)
    return _OPS_MEMO[key]


@cache
def _simple_resolutions(b: BoundQuiverAlgebra) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """Per vertex: multiplicity vectors of the minimal resolution terms."""
    alg = _ops(b)
    verts = b.gabriel.vertices
    out = []
    for v in verts:
        m = simple_rep(b.gabriel, v)
        terms: List[Tuple[int, ...]] = []
        while any(d != 0 for d in m.dims):
            if len(terms) > RESOLUTION_CAP:
                raise RuntimeError(
                    f"resolution of the simple at {v} exceeded "
                    f"{RESOLUTION_CAP} steps"
                )
            copies, p0, pi = minimal_cover(alg, m)
            mult = [0] * len(verts)
            for u, _ in copies:
                mult[verts.index(u)] += 1
            terms.append(tuple(mult))
            _, m = kernel_subrep(p0, pi)
        out.append(tuple(terms))
    return tuple(out)


def projective_dimension_of_simples(
    b: BoundQuiverAlgebra,
) -> Tuple[Tuple[int, int], ...]:
    res = _simple_resolutions(b)
    return tuple(
        (v, len(terms) - 1) for v, terms in zip(b.gabriel.vertices, res)
    )


def global_dimension(b: BoundQuiverAlgebra) -> int:
    return max(pd for _, pd in projective_dimension_of_simples(b))


def ext_matrix(b: BoundQuiverAlgebra, k: int) -> Tuple[Tuple[int, ...], ...]:
    """dim Ext^k(S_i, S_j) = multiplicity of P(j) in resolution term k."""
    res = _simple_resolutions(b)
    n = len(b.gabriel.vertices)
    return tuple(
        tuple(
            res[i][k][j] if k < len(res[i]) else 0 for j in range(n)
        )
        for i in range(n)
    )


# --- tilted type via Coxeter polynomials ---

def _coxeter_polynomial(c: RatMatrix) -> Tuple[int, ...]:
    phi = c.inverse().transpose().mul(c).neg()
    out = []
    for r in phi.charpoly():
        if r.denominator != 1:
            raise RuntimeError("Coxeter polynomial is not integral")
        out.append(int(r))
    return tuple(out)


@cache
def _reference_polynomials() -> Dict[Tuple[int, ...], Tuple[str, int]]:
    """Coxeter polynomials of the hereditary algebras of rank <= 5."""
    table: Dict[Tuple[int, ...], Tuple[str, int]] = {}
    specs = {}
    for r in range(1, 6):
        verts = " ".join(str(i) for i in range(1, r + 1))
        arrows = "".join(
            f"arrow x{i}:{i}->{i + 1}\n" for i in range(1, r)
        )
        specs[("A", r)] = f"vertices {verts}\n{arrows}"
    specs[("D", 4)] = (
        "vertices 1 2 3 4\narrow a:1->3\narrow b:2->3\narrow c:3->4\n"
    )
    specs[("D", 5)] = (
        "vertices 1 2 3 4 5\n"
        "arrow a:1->3\narrow b:2->3\narrow c:3->4\narrow d:4->5\n"
    )
    for key, text in specs.items():
        poly = _coxeter_polynomial(cartan_matrix(parse_quiver(text)))
        if poly in table:
            raise RuntimeError("reference Coxeter polynomials collide")
        table[poly] = key
    return table


def tilted_type(block: BoundQuiverAlgebra) -> DynkinType:
    """Dynkin type of a tilted block, from its Coxeter polynomial."""
    poly = cartan_data(block).coxeter_polynomial
    table = _reference_polynomials()
    if poly not in table:
        raise RuntimeError(
            f"no Dynkin type of rank <= 5 matches Coxeter polynomial {poly}"
        )
    return DynkinType.of([table[poly]])


# --- classification records ---

@dataclass(frozen=True)
class BlockVerdict:
    algebra: BoundQuiverAlgebra
    gl_dim: int
    verdict: str  # "tilted" | "strictly_shod"
    dynkin: Optional[DynkinType]


@dataclass(frozen=True)
class ClassificationRecord:
    silting: SiltingObject
    algebra: BoundQuiverAlgebra
    block_verdicts: Tuple[BlockVerdict, ...]
    is_tilted: bool
    label: str
    fingerprint: Tuple


def fingerprint(b: BoundQuiverAlgebra) -> Tuple:
    """Isomorphism invariant: quiver, Cartan, Ext data, pds — up to one
    simultaneous vertex permutation, minimized lexicographically."""
    verts = b.gabriel.vertices
    n = len(verts)
    adj = [
        [
            sum(
                1
                for a in b.gabriel.arrows
                if a.source == verts[i] and a.target == verts[j]
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    cart = [
        [b.cartan_entry(verts[i], verts[j]) for j in range(n)]
        for i in range(n)
    ]
    e1 = ext_matrix(b, 1)
    e2 = ext_matrix(b, 2)
    pds = [pd for _, pd in projective_dimension_of_simples(b)]

    def permuted(mat, perm):
        return tuple(
            tuple(mat[perm[i]][perm[j]] for j in range(n)) for i in range(n)
        )

    best = None
    for perm in itertools.permutations(range(n)):
        cand = (
            permuted(adj, perm),
            permuted(cart, perm),
            permuted(e1, perm),
            permuted(e2, perm),
            tuple(pds[perm[i]] for i in range(n)),
        )
        if best is None or cand < best:
            best = cand
    return (n, b.dimension) + best


@cache
def classify(q: Quiver, t: SiltingObject) -> ClassificationRecord:
    """Tilted-or-strictly-shod verdict for End(T), block by block."""
    b = endomorphism_algebra(q, t)
    verdicts: List[BlockVerdict] = []
    comps: List[Tuple[str, int]] = []
    all_tilted = True
    for blk in blocks(b):
        g = global_dimension(blk)
        if g <= 2:
            dt = tilted_type(blk)
            verdicts.append(BlockVerdict(blk, g, "tilted", dt))
            comps.extend(dt.components)
        elif g == 3:
            all_tilted = False
            verdicts.append(BlockVerdict(blk, g, "strictly_shod", None))
        else:
            raise RuntimeError(
                f"global dimension {g} is outside the silted range 0..3"
            )
    label = (
        DynkinType.of(comps).label() if all_tilted else "strictly shod"
    )
    return ClassificationRecord(
        silting=t,
        algebra=b,
        block_verdicts=tuple(verdicts),
        is_tilted=all_tilted,
        label=label,
        fingerprint=fingerprint(b),
    )


def dedupe(
    records: Sequence[ClassificationRecord],
) -> Tuple[Tuple[ClassificationRecord, ...], ...]:
    """Group records by fingerprint; groups and members canonically sorted."""
    grouped: Dict[Tuple, List[ClassificationRecord]] = {}
    for r in records:
        grouped.setdefault(r.fingerprint, []).append(r)
    out = []
    for fp in sorted(grouped):
        members = sorted(
            grouped[fp],
            key=lambda r: [s.key() for s in r.silting.summands],
        )
        out.append(tuple(members))
    return tuple(out)


# --- reports ---

def _silting_desc(t: SiltingObject) -> str:
    return "+".join(s.label() for s in t.summands)


def _quiver_sketch(b: BoundQuiverAlgebra) -> str:
    if not b.gabriel.arrows:
        return " ".join(str(v) for v in b.gabriel.vertices)
    arrows = ",".join(
        f"{a.source}>{a.target}" for a in b.gabriel.arrows
    )
    if b.relations:
        rels = ",".join(f"{r.source}~{r.target}" for r in b.relations)
        return f"{arrows};rel:{rels}"
    return arrows


def record_to_json(r: ClassificationRecord) -> dict:
    return {
        "silting": r.silting.to_json_dict(),
        "algebra": r.algebra.to_json_dict(),
        "blocks": [
            {
                "vertices": list(bv.algebra.gabriel.vertices),
                "gl_dim": bv.gl_dim,
                "verdict": bv.verdict,
                "type": bv.dynkin.label() if bv.dynkin else None,
            }
            for bv in r.block_verdicts
        ],
        "classification": r.label,
        "fingerprint": _fingerprint_json(r.fingerprint),
    }


def _fingerprint_json(fp):
    if isinstance(fp, tuple):
        return [_fingerprint_json(x) for x in fp]
    return fp


def records_to_json(records: Sequence[ClassificationRecord]) -> list:
    return [record_to_json(r) for r in records]


def summary_csv(groups: Sequence[Sequence[ClassificationRecord]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class", "count", "silting", "quiver", "classification"])
    for i, g in enumerate(groups, start=1):
        rep = g[0]
        w.writerow(
            [
                i,
                len(g),
                _silting_desc(rep.silting),
                _quiver_sketch(rep.algebra),
                rep.label,
            ]
        )
    return buf.getvalue()


def summary_text(groups: Sequence[Sequence[ClassificationRecord]]) -> str:
    rows = [["class", "count", "silting", "quiver", "classification"]]
    for i, g in enumerate(groups, start=1):
        rep = g[0]
        rows.append(
            [
                str(i),
                str(len(g)),
                _silting_desc(rep.silting),
                _quiver_sketch(rep.algebra),
                rep.label,
            ]
        )
    widths = [
        max(len(r[c]) for r in rows) for c in range(len(rows[0]))
    ]
    lines = [
        "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
        for r in rows
    ]
    return "\n".join(lines) + "\n"
