"""Latin squares, mutual orthogonality, (n,x)-nets, and the unbiased bases of
C^(x^2) they induce.

The file format for square sets is plain text: a header line "x w", then w
blocks separated by blank lines, each x lines of x space-separated symbols
from 0..x-1.
"""

import numpy as np

from . import fields


class MolsParseError(ValueError):
    """Raised when a squares file cannot be parsed at all."""


class LatinViolation(ValueError):
    """A grid is not a Latin square; the message carries the offending cell."""


class OrthogonalityViolation(ValueError):
    """Two squares repeat an ordered symbol pair; coordinates in the message."""


class NetViolation(ValueError):
    """A block system fails one of the two net axioms."""


class LatinSquare:
    """An x by x grid where every row and column permutes the symbols 0..x-1."""

    def __init__(self, cells):
        grid = [list(row) for row in cells]
        x = len(grid)
        if x < 1 or any(len(row) != x for row in grid):
            raise LatinViolation(f"grid is not square: {x} rows")
        for i, row in enumerate(grid):
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < x:
                    raise LatinViolation(f"cell ({i},{j}) holds {v!r}, not a symbol in 0..{x-1}")
        for i, row in enumerate(grid):
            seen = {}
            for j, v in enumerate(row):
                if v in seen:
                    raise LatinViolation(f"row {i} repeats symbol {v} at columns {seen[v]} and {j}")
                seen[v] = j
        for j in range(x):
            seen = {}
            for i in range(x):
                v = grid[i][j]
                if v in seen:
                    raise LatinViolation(f"column {j} repeats symbol {v} at rows {seen[v]} and {i}")
                seen[v] = i
        self.order = x
        self.cells = tuple(tuple(row) for row in grid)

    def __getitem__(self, ij):
        return self.cells[ij[0]][ij[1]]

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and self.cells == other.cells

    def __repr__(self):
        return f"LatinSquare(order={self.order})"


def check_orthogonal(l1, l2):
    """True iff superimposing the squares yields all x^2 ordered symbol pairs."""
    if l1.order != l2.order:
        raise ValueError("orders differ")
    x = l1.order
    pairs = {(l1.cells[i][j], l2.cells[i][j]) for i in range(x) for j in range(x)}
    return len(pairs) == x * x


def _first_orthogonality_clash(l1, l2):
    seen = {}
    for i in range(l1.order):
        for j in range(l1.order):
            pair = (l1.cells[i][j], l2.cells[i][j])
            if pair in seen:
                return pair, seen[pair], (i, j)
            seen[pair] = (i, j)
    return None


def validate_mols(squares):
    """Check every pair; raises OrthogonalityViolation naming squares and cells."""
    squares = list(squares)
    for idx, sq in enumerate(squares):
        if sq.order != squares[0].order:
            raise ValueError(f"square {idx} has order {sq.order}, expected {squares[0].order}")
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            clash = _first_orthogonality_clash(squares[i], squares[j])
            if clash is not None:
                pair, cell1, cell2 = clash
                raise OrthogonalityViolation(
                    f"squares {i} and {j} repeat pair {pair} at cells {cell1} and {cell2}")
    return squares


def mols_prime_power(x):
    """The classical complete set of x - 1 squares L_a(i,j) = a*i + j over F_x."""
    split = fields.prime_power_split(x)
    if split is None:
        raise ValueError(f"{x} is not a prime power")
    field = fields.FiniteField(*split)
    els = field.elements()
    out = []
    for a in field.units():
        cells = [[(a * i + j).index for j in els] for i in els]
        out.append(LatinSquare(cells))
    return out


def mols_macneish(squares1, squares2):
    """Product construction: min(w1, w2) squares of order x1 * x2.

    Cell ((i1,i2),(j1,j2)) carries the symbol pair (L1[i1,j1], L2[i2,j2])
    encoded as s1 * x2 + s2.
    """
    w = min(len(squares1), len(squares2))
    if w == 0:
        raise ValueError("both factor sets must be nonempty")
    x1, x2 = squares1[0].order, squares2[0].order
    out = []
    for l1, l2 in zip(squares1[:w], squares2[:w]):
        cells = [[l1.cells[i1][j1] * x2 + l2.cells[i2][j2]
                  for j1 in range(x1) for j2 in range(x2)]
                 for i1 in range(x1) for i2 in range(x2)]
        out.append(LatinSquare(cells))
    return out


def best_mols(x):
    """Largest square set this package can build on its own for order x:
    the complete prime-power set, or the MacNeish product across prime-power
    parts otherwise."""
    if x < 2:
        raise ValueError("order must be at least 2")
    if fields.prime_power_split(x):
        return mols_prime_power(x)
    parts = fields.factor_into_prime_powers(x)
    sets = [mols_prime_power(p ** a) for p, a in parts]
    acc = sets[0]
    for nxt in sets[1:]:
        acc = mols_macneish(acc, nxt)
    return acc


# ---------------------------------------------------------------------------
# incidence vectors and nets

class IncidenceVector:
    """0/1 vector on x^2 points, stored by its sorted support."""

    def __init__(self, npoints, support):
        support = tuple(sorted(support))
        if len(set(support)) != len(support):
            raise ValueError("support has repeats")
        if support and not (0 <= support[0] and support[-1] < npoints):
            raise ValueError("support out of range")
        self.npoints = npoints
        self.support = support

    @property
    def bits(self):
        bits = np.zeros(self.npoints, dtype=np.int64)
        bits[list(self.support)] = 1
        return bits

    def intersection(self, other):
        return len(set(self.support) & set(other.support))

    def __repr__(self):
        return f"IncidenceVector(weight={len(self.support)})"


class Net:
    """n blocks of x incidence vectors on x^2 points: vectors are disjoint
    inside a block and meet in exactly one point across blocks."""

    def __init__(self, n, x, blocks):
        self.n = n
        self.x = x
        self.blocks = [list(b) for b in blocks]
        self._validate()

    def _validate(self):
        if len(self.blocks) != self.n or any(len(b) != self.x for b in self.blocks):
            raise NetViolation(f"expected {self.n} blocks of {self.x} vectors")
        for b, block in enumerate(self.blocks):
            for v in block:
                if len(v.support) != self.x:
                    raise NetViolation(f"block {b} has a vector of weight {len(v.support)}")
            for i in range(self.x):
                for j in range(i + 1, self.x):
                    if block[i].intersection(block[j]):
                        raise NetViolation(f"block {b} vectors {i} and {j} are not disjoint")
        for b1 in range(self.n):
            for b2 in range(b1 + 1, self.n):
                for i, v1 in enumerate(self.blocks[b1]):
                    for j, v2 in enumerate(self.blocks[b2]):
                        hits = v1.intersection(v2)
                        if hits != 1:
                            raise NetViolation(
                                f"blocks {b1}:{i} and {b2}:{j} meet in {hits} points, want 1")


def net_from_mols(squares, order=None):
    """(w+2, x)-net: row indicators, column indicators, then one block per
    square whose vectors are its symbol classes."""
    squares = validate_mols(squares)
    if squares:
        x = squares[0].order
    elif order is not None:
        x = order
    else:
        raise ValueError("need squares or an explicit order")
    if order is not None and order != x:
        raise ValueError(f"order {order} does not match squares of order {x}")
    npoints = x * x
    blocks = []
    blocks.append([IncidenceVector(npoints, [i * x + j for j in range(x)]) for i in range(x)])
    blocks.append([IncidenceVector(npoints, [i * x + j for i in range(x)]) for j in range(x)])
    for sq in squares:
        blocks.append([
            IncidenceVector(npoints, [i * x + j for i in range(x) for j in range(x)
                                      if sq.cells[i][j] == symbol])
            for symbol in range(x)])
    return Net(len(squares) + 2, x, blocks)


# ---------------------------------------------------------------------------
# unbiased bases of C^k from a net

def fourier_hadamard(x):
    """Order-x Fourier matrix zeta_x^(mn): the default generalized Hadamard."""
    m = np.arange(x)
    return np.exp(2j * np.pi * np.outer(m, m) / x)


def check_generalized_hadamard(h, tol=1e-9):
    """All entries unit modulus (within 1e-12) and H H^dag = x I within tol."""
    h = np.asarray(h, dtype=complex)
    x = h.shape[0]
    if h.shape != (x, x):
        raise ValueError("matrix must be square")
    if np.abs(np.abs(h) - 1).max() > 1e-12:
        return False
    return bool(np.abs(h @ h.conj().T - x * np.eye(x)).max() <= tol)


def embed(h, m):
    """Place the length-x vector h on the support of m inside C^k, in support order."""
    h = np.asarray(h, dtype=complex).reshape(-1)
    if len(m.support) != h.size:
        raise ValueError(f"vector length {h.size} does not match weight {len(m.support)}")
    out = np.zeros(m.npoints, dtype=complex)
    out[list(m.support)] = h
    return out


def mubs_from_net(net, h):
    """One orthonormal basis of C^(x^2) per net block: columns are the rows of
    H/sqrt(x) embedded on each vector's support.  Distinct blocks are mutually
    unbiased because their supports meet in exactly one point."""
    h = np.asarray(h, dtype=complex)
    x = net.x
    if h.shape != (x, x):
        raise ValueError(f"Hadamard order {h.shape} does not match net order {x}")
    if not check_generalized_hadamard(h):
        raise ValueError("matrix fails the generalized Hadamard conditions")
    k = x * x
    out = []
    for block in net.blocks:
        basis = np.zeros((k, k), dtype=complex)
        for i, vec in enumerate(block):
            for ell in range(x):
                basis[:, i * x + ell] = embed(h[ell], vec) / np.sqrt(x)
        out.append(basis)
    return out


# ---------------------------------------------------------------------------
# text files

def parse_mols(text):
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise MolsParseError("empty file")
    header = lines[idx].split()
    if len(header) != 2:
        raise MolsParseError(f"header must be 'x w', got {lines[idx]!r}")
    try:
        x, w = int(header[0]), int(header[1])
    except ValueError:
        raise MolsParseError(f"header must be 'x w', got {lines[idx]!r}") from None
    if x < 1 or w < 0:
        raise MolsParseError(f"bad header values x={x}, w={w}")
    idx += 1
    squares = []
    for b in range(w):
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        rows = []
        for r in range(x):
            if idx >= len(lines) or not lines[idx].strip():
                raise MolsParseError(f"square {b} row {r}: unexpected end of block")
            toks = lines[idx].split()
            if len(toks) != x:
                raise MolsParseError(f"square {b} row {r}: expected {x} symbols, got {len(toks)}")
            try:
                rows.append([int(t) for t in toks])
            except ValueError:
                raise MolsParseError(f"square {b} row {r}: non-integer symbol") from None
            idx += 1
        squares.append(LatinSquare(rows))
    while idx < len(lines):
        if lines[idx].strip():
            raise MolsParseError(f"trailing content at line {idx + 1}")
        idx += 1
    return squares


def import_mols(path):
    """Parse a squares file and validate Latin and orthogonality properties."""
    with open(path, "r", encoding="utf-8") as fh:
        squares = parse_mols(fh.read())
    validate_mols(squares)
    return squares


def format_mols(squares):
    squares = list(squares)
    x = squares[0].order if squares else 0
    chunks = [f"{x} {len(squares)}"]
    for sq in squares:
        chunks.append("\n".join(" ".join(str(v) for v in row) for row in sq.cells))
    return "\n\n".join(chunks) + "\n"


def save_mols(squares, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_mols(squares))
