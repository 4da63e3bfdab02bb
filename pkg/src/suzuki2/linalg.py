"""Dense linear algebra over GF(2^f) and the multilinear constructions
(tensor product, exterior square, restriction-of-scalars blowup).

Convention: vectors are rows and matrices act on the right, v -> v*A.
The row of index i of a matrix is the image of the i-th basis vector.
Subspaces are canonicalized by reduced row echelon form, so two
subspaces are equal iff their stored bases are identical.

Wedge basis for exterior squares: pairs (i, j) with i < j in
lexicographic order. Restriction of scalars uses the power basis
(1, t, ..., t^(f-1)) of GF(2^f) over GF(2).

Over GF(2) the elimination routines pack rows into int bitmasks; over
larger fields entries are kept per-cell. Semantics are identical.
"""

from .errors import BadShape, FieldMismatch, NoSolution, SingularMatrix
from .gf2n import FieldContext, poly_to_hex

GF2 = FieldContext(1)


def wedge_pairs(n):
    """Index pairs (i, j), i < j, ordering the wedge basis of Lambda^2."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class Matrix:
    """Immutable dense matrix over a FieldContext; entries are int bitmasks."""

    __slots__ = ("ctx", "rows", "nrows", "ncols", "_hash")

    def __init__(self, ctx, rows):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise BadShape("ragged rows")
            for x in r:
                ctx.check(x)
        self._hash = None

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx, r, c):
        return cls(ctx, [[0] * c for _ in range(r)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over GF(2^{self.ctx.n}))"

    def __add__(self, other):
        self._same_field(other)
        if self.shape != other.shape:
            raise BadShape(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            self.ctx,
            [[a ^ b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __mul__(self, other):
        self._same_field(other)
        if self.ncols != other.nrows:
            raise BadShape(f"cannot multiply {self.shape} by {other.shape}")
        mul = self.ctx.mul
        bt = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc ^= mul(a, b)
                row.append(acc)
            out.append(row)
        return Matrix(self.ctx, out)

    def __pow__(self, e):
        if self.nrows != self.ncols:
            raise BadShape("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        acc = Matrix.identity(self.ctx, self.nrows)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def _same_field(self, other):
        if self.ctx != other.ctx:
            raise FieldMismatch(f"{self.ctx} vs {other.ctx}")

    def transpose(self):
        return Matrix(self.ctx, list(zip(*self.rows))) if self.rows else self

    def apply(self, vec):
        """Row vector times matrix."""
        if len(vec) != self.nrows:
            raise BadShape("vector length mismatch")
        mul = self.ctx.mul
        if self.ctx.n == 1:
            out = [0] * self.ncols
            for x, row in zip(vec, self.rows):
                if x:
                    out = [o ^ r for o, r in zip(out, row)]
            return tuple(out)
        out = [0] * self.ncols
        for x, row in zip(vec, self.rows):
            if x:
                for j, a in enumerate(row):
                    if a:
                        out[j] ^= mul(x, a)
        return tuple(out)

    def rref(self):
        """Reduced row echelon form: (matrix, pivot column tuple)."""
        rows, pivots = _rref_rows(self.ctx, [list(r) for r in self.rows], self.ncols)
        return Matrix(self.ctx, rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Canonical basis of the left kernel {v : v*A = 0} as a Matrix."""
        n = self.nrows
        aug = [list(r) + [1 if k == i else 0 for k in range(n)] for i, r in enumerate(self.rows)]
        red, _ = _rref_rows(self.ctx, aug, self.ncols + n, stop_col=self.ncols)
        basis = [row[self.ncols :] for row in red if not any(row[: self.ncols])]
        if not basis:
            return Matrix.zeros(self.ctx, 0, n)
        bas, _ = _rref_rows(self.ctx, basis, n)
        return Matrix(self.ctx, bas)

    def solve(self, b):
        """Some v with v*A = b, else NoSolution."""
        if len(b) != self.ncols:
            raise BadShape("rhs length mismatch")
        n = self.nrows
        aug = [list(r) + [1 if k == i else 0 for k in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref_rows(self.ctx, aug, self.ncols + n, stop_col=self.ncols)
        mul = self.ctx.mul
        rem = list(b)
        comb = [0] * n
        for row, p in zip(red, pivots):
            c = rem[p]
            if c:
                for j in range(self.ncols):
                    if row[j]:
                        rem[j] ^= mul(c, row[j])
                for j in range(n):
                    if row[self.ncols + j]:
                        comb[j] ^= mul(c, row[self.ncols + j])
        if any(rem):
            raise NoSolution("inconsistent linear system")
        return tuple(comb)

    def inverse(self):
        if self.nrows != self.ncols:
            raise BadShape("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [1 if k == i else 0 for k in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref_rows(self.ctx, aug, 2 * n, stop_col=n)
        if len(pivots) < n:
            raise SingularMatrix(f"rank {len(pivots)} < {n}")
        return Matrix(self.ctx, [row[n:] for row in red])

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def tensor(self, other):
        """Kronecker product on the basis e_i (x) e_j, lexicographic."""
        self._same_field(other)
        mul = self.ctx.mul
        out = []
        for r1 in self.rows:
            for r2 in other.rows:
                out.append([mul(a, b) if a and b else 0 for a in r1 for b in r2])
        return Matrix(self.ctx, out)

    def exterior_square(self):
        """Induced action on the wedge basis {e_i ^ e_j : i < j}.

        In characteristic 2 the expansion of (e_i A) ^ (e_j A) reduces by
        v ^ v = 0 and v ^ w = w ^ v, so the (kl) coefficient is
        A[i][k]A[j][l] + A[i][l]A[j][k].
        """
        if self.nrows != self.ncols:
            raise BadShape("exterior square of a non-square matrix")
        mul = self.ctx.mul
        pairs = wedge_pairs(self.nrows)
        rows = self.rows
        out = []
        for i, j in pairs:
            ri, rj = rows[i], rows[j]
            row = []
            for k, l in pairs:
                row.append(mul(ri[k], rj[l]) ^ mul(ri[l], rj[k]))
            out.append(row)
        return Matrix(self.ctx, out)

    def blowup(self):
        """Restriction of scalars to GF(2) on the power basis (1, t, ...).

        Each entry a becomes the f x f GF(2) matrix whose row r holds the
        coordinates of t^r * a; the result is (f*nrows) x (f*ncols).
        """
        ctx = self.ctx
        f = ctx.n
        out = [[0] * (f * self.ncols) for _ in range(f * self.nrows)]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if not a:
                    continue
                v = a
                for r in range(f):
                    for c in range(f):
                        if (v >> c) & 1:
                            out[f * i + r][f * j + c] = 1
                    v = ctx.mul(v, ctx.t) if r + 1 < f else v
        return Matrix(GF2, out)

    def to_text(self):
        """Serialize in the shared matrix text format."""
        f = self.ctx.n
        width = max(1, (self.ncols * f + 3) // 4)
        lines = [
            f"field {f} poly={poly_to_hex(self.ctx.poly)}",
            f"dim {self.nrows} {self.ncols}",
        ]
        for row in self.rows:
            packed = 0
            for j, a in enumerate(row):
                packed |= a << (f * j)
            lines.append(format(packed, f"0{width}x"))
        return "\n".join(lines) + "\n"


def matrix_from_text(lines):
    """Parse one matrix from an iterator of lines; returns (Matrix, rest)."""
    from .errors import BadFormat

    lines = list(lines)
    idx = 0
    while idx < len(lines) and (not lines[idx].strip() or lines[idx].lstrip().startswith("#")):
        idx += 1
    try:
        head = lines[idx].split()
        if head[0] != "field":
            raise ValueError
        f = int(head[1])
        poly = int(head[2].split("=", 1)[1], 16)
        dims = lines[idx + 1].split()
        if dims[0] != "dim":
            raise ValueError
        nrows, ncols = int(dims[1]), int(dims[2])
    except (ValueError, IndexError) as exc:
        raise BadFormat(f"bad matrix header near line {idx + 1}") from exc
    ctx = FieldContext(f, poly)
    mask = (1 << f) - 1
    rows = []
    idx += 2
    for _ in range(nrows):
        if idx >= len(lines):
            raise BadFormat("truncated matrix data")
        try:
            packed = int(lines[idx].strip(), 16)
        except ValueError as exc:
            raise BadFormat(f"bad row at line {idx + 1}") from exc
        rows.append([(packed >> (f * j)) & mask for j in range(ncols)])
        idx += 1
    return Matrix(ctx, rows), lines[idx:]


def _rref_rows(ctx, rows, width, stop_col=None):
    """In-place reduced row echelon form; returns (rows, pivot columns).

    Pivot search is restricted to columns < stop_col (reduction still runs
    across the full width), which drives kernel/solve/inverse bookkeeping.
    """
    if stop_col is None:
        stop_col = width
    if ctx.n == 1:
        masks = [_pack(r) for r in rows]
        masks, pivots = _rref_gf2(masks, stop_col)
        return [_unpack(m, width) for m in masks], pivots
    mul, inv = ctx.mul, ctx.inv
    pivots = []
    rank = 0
    for col in range(stop_col):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        piv = rows[rank]
        c = inv(piv[col])
        if c != 1:
            rows[rank] = piv = [mul(c, x) if x else 0 for x in piv]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a ^ (mul(c, b) if b else 0) for a, b in zip(rows[i], piv)]
        pivots.append(col)
        rank += 1
    return rows, pivots


def _pack(row):
    m = 0
    for j, x in enumerate(row):
        if x:
            m |= 1 << j
    return m


def _unpack(mask, width):
    return [(mask >> j) & 1 for j in range(width)]


def _rref_gf2(masks, stop_col):
    pivots = []
    rank = 0
    for col in range(stop_col):
        bit = 1 << col
        sel = None
        for i in range(rank, len(masks)):
            if masks[i] & bit:
                sel = i
                break
        if sel is None:
            continue
        masks[rank], masks[sel] = masks[sel], masks[rank]
        piv = masks[rank]
        for i in range(len(masks)):
            if i != rank and masks[i] & bit:
                masks[i] ^= piv
        pivots.append(col)
        rank += 1
    return masks, pivots


class Subspace:
    """Row space in canonical reduced echelon form."""

    __slots__ = ("ctx", "basis", "pivots", "ambient")

    def __init__(self, ctx, vectors, ambient):
        self.ctx = ctx
        self.ambient = ambient
        rows = [list(v) for v in vectors if any(v)]
        for r in rows:
            if len(r) != ambient:
                raise BadShape("vector length mismatch")
        red, pivots = _rref_rows(ctx, rows, ambient)
        self.basis = tuple(tuple(r) for r in red[: len(pivots)])
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ctx == other.ctx
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ctx, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient} over GF(2^{self.ctx.n}))"

    def reduce(self, vec):
        """Remainder of vec after reduction against the echelon basis."""
        mul = self.ctx.mul
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j, b in enumerate(row):
                    if b:
                        v[j] ^= mul(c, b)
        return tuple(v)

    def contains(self, vec):
        return not any(self.reduce(vec))

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def sum(self, other):
        return Subspace(self.ctx, list(self.basis) + list(other.basis), self.ambient)

    def intersection(self, other):
        """Zassenhaus-style: kernel rows of the stacked basis split the sum."""
        stacked = list(self.basis) + list(other.basis)
        if not stacked:
            return Subspace(self.ctx, [], self.ambient)
        ker = Matrix(self.ctx, stacked).kernel()
        mul = self.ctx.mul
        vecs = []
        k = len(self.basis)
        for krow in ker.rows:
            v = [0] * self.ambient
            for i in range(k):
                c = krow[i]
                if c:
                    for j, b in enumerate(self.basis[i]):
                        if b:
                            v[j] ^= mul(c, b)
            vecs.append(v)
        return Subspace(self.ctx, vecs, self.ambient)
