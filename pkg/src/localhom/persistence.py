"""Z/2 persistent homology: absolute, relative (cone construction) and oracles."""

from __future__ import annotations

import math

from .complexes import Filtration, FilteredPair, StructuralError, facets
from .diagram_metric import bottleneck_distance
from .diagrams import PersistenceDiagram

CONE_VERTEX = -1


def boundary_columns(filtration: Filtration) -> list[list[int]]:
    """Boundary matrix as sorted row lists, checking the filtration on the way."""
    pos = {}
    cols = []
    prev = None
    for i, (s, v) in enumerate(filtration):
        key = (v, len(s), s)
        if prev is not None and key < prev:
            raise StructuralError(f"simplex {s} out of filtration order")
        if s in pos:
            raise StructuralError(f"duplicate simplex {s}")
        prev = key
        col = []
        for f in facets(s):
            j = pos.get(f)
            if j is None:
                raise StructuralError(f"facet {f} of {s} missing or after its coface")
            if filtration.values[j] > v:
                raise StructuralError(f"facet {f} has larger value than {s}")
            col.append(j)
        col.sort()
        cols.append(col)
        pos[s] = i
    return cols


def reduce_columns(cols: list[list[int]]):
    """Standard left-to-right column reduction with lowest-one pivots.

    Returns ``(pairs, essential)``: pairs are (birth index, death index).
    """
    pivot_of = {}  # lowest row -> column that owns it
    reduced = {}
    pairs = []
    for j, col in enumerate(cols):
        if not col:
            continue
        work = set(col)
        while work:
            low = max(work)
            k = pivot_of.get(low)
            if k is None:
                break
            work ^= reduced[k]
        if work:
            low = max(work)
            pivot_of[low] = j
            reduced[j] = work
            pairs.append((low, j))
    paired = set(pivot_of) | set(reduced)
    essential = [i for i in range(len(cols)) if i not in paired]
    pairs.sort()
    return pairs, essential


def persistence_pairs(filtration: Filtration):
    return reduce_columns(boundary_columns(filtration))


def _diagram(filtration: Filtration, pairs, essential, max_dim: int):
    simplices, values = filtration.simplices, filtration.values
    pts = []
    for i, j in pairs:
        k = len(simplices[i]) - 1
        if 0 <= k <= max_dim and values[i] != values[j]:
            pts.append((k, values[i], values[j]))
    for i in essential:
        k = len(simplices[i]) - 1
        if 0 <= k <= max_dim:
            pts.append((k, values[i], math.inf))
    return PersistenceDiagram(tuple(pts))


def reduce(filtration: Filtration, max_dim: int) -> PersistenceDiagram:
    """Persistence diagram of a filtration in dimensions ``0..max_dim``."""
    pairs, essential = persistence_pairs(filtration)
    return _diagram(filtration, pairs, essential, max_dim)


def cone_filtration(pair: FilteredPair, max_dim=None) -> Filtration:
    """Adjoin a cone vertex over the flagged subcomplex.

    The cone vertex enters first at the minimum value; the cone on a flagged
    cell enters with that cell. Cells of the cone above ``max_dim + 1`` are
    omitted when ``max_dim`` is given.
    """
    amb = pair.ambient
    if not len(amb):
        return Filtration(((CONE_VERTEX,),), (0.0,))
    cells = [((CONE_VERTEX,), min(amb.values))]
    cells += list(amb)
    for (s, v), flag in zip(amb, pair.in_subcomplex):
        if flag and (max_dim is None or len(s) <= max_dim + 1):
            cells.append(((CONE_VERTEX,) + s, v))
    return Filtration.from_cells(cells)


def relative_reduce(pair: FilteredPair, max_dim: int) -> PersistenceDiagram:
    """Diagram of the relative module H(K_a, A_a).

    Reduced persistence of the coned filtration: the class born with the cone
    vertex is the augmentation and is discarded.
    """
    pair.validate()
    coned = cone_filtration(pair, max_dim)
    pairs, essential = persistence_pairs(coned)
    # cone vertex is position 0 and always the oldest essential class
    essential = [i for i in essential if i != 0]
    return _diagram(coned, pairs, essential, max_dim)


def quotient_reduce(pair: FilteredPair, max_dim: int) -> PersistenceDiagram:
    """Relative diagram by reducing the quotient chain complex C(K)/C(A) directly.

    Independent check on :func:`relative_reduce`.
    """
    pair.validate()
    amb = pair.ambient
    cols = boundary_columns(amb)
    keep = [i for i, f in enumerate(pair.in_subcomplex) if not f]
    new = {old: new for new, old in enumerate(keep)}
    qcols = [[new[r] for r in cols[i] if r in new] for i in keep]
    pairs, essential = reduce_columns(qcols)
    sub = Filtration(tuple(amb.simplices[i] for i in keep), tuple(amb.values[i] for i in keep))
    return _diagram(sub, pairs, essential, max_dim)


def _xor_basis_insert(basis: dict, vec: int) -> bool:
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            basis[top] = vec
            return True
        vec ^= basis[top]
    return False


def betti_oracle(filtration: Filtration, value_i: float, value_j: float, dim: int) -> int:
    """Rank of H_dim(K_i) -> H_dim(K_j) by plain Gaussian elimination over Z/2.

    Chains are Python ints used as bit vectors.
    """
    if value_i > value_j:
        raise ValueError("value_i must not exceed value_j")
    by_dim: dict[int, dict] = {}
    for s, _ in filtration:
        d = by_dim.setdefault(len(s) - 1, {})
        d[s] = len(d)
    k_cells = by_dim.get(dim, {})
    if not k_cells:
        return 0
    lower = by_dim.get(dim - 1, {})

    def boundary(s, index):
        vec = 0
        for f in facets(s):
            vec |= 1 << index[f]
        return vec

    # cycles of K_i: kernel of the boundary map on k-chains with value <= i
    echelon: dict = {}
    cycles = []
    for s, v in filtration:
        if len(s) - 1 != dim or v > value_i:
            continue
        vec = boundary(s, lower) if dim > 0 else 0
        combo = 1 << k_cells[s]
        while vec:
            top = vec.bit_length() - 1
            if top not in echelon:
                echelon[top] = (vec, combo)
                break
            pv, pc = echelon[top]
            vec ^= pv
            combo ^= pc
        if not vec:
            cycles.append(combo)

    basis: dict = {}
    rank_b = 0
    for s, v in filtration:
        if len(s) - 1 == dim + 1 and v <= value_j:
            rank_b += _xor_basis_insert(basis, boundary(s, k_cells))
    rank_sum = rank_b
    for z in cycles:
        rank_sum += _xor_basis_insert(basis, z)
    # image = Z_i / (Z_i & B_j), and dim(Z_i + B_j) - dim B_j equals its rank
    return rank_sum - rank_b


def relative_interleaving_check(pair_f: FilteredPair, pair_g: FilteredPair, epsilon: float,
                                max_dim: int, tol: float = 1e-9) -> bool:
    """Relative diagrams of two eps-interleaved pairs lie within eps in bottleneck."""
    dist = bottleneck_distance(relative_reduce(pair_f, max_dim), relative_reduce(pair_g, max_dim))
    return dist <= epsilon + tol
