"""SDPA sparse-format export of the diagonal-minimization SDP.

The problem ``min_x ||A0 + Diag(x)||`` is the linear-matrix-inequality
program ``min w  s.t.  w I - Abar[x] >= 0,  w I + Abar[x] >= 0`` over the
real 2n x 2n embedding ``Abar[x] = embed(A0) + Diag(x, x)``.  The export
targets the standard SDPA sparse grammar (``*.dat-s``): scalar variables
``(w, x_1 .. x_n)``, objective ``c = (1, 0, .., 0)``, two blocks of size
2n, entries in upper-triangular block/row/column order.

A small parser for the same grammar lives here as well so tests can
round-trip exported files.
"""

from __future__ import annotations

import numpy as np

from .hermitian_core import HermitianMatrix, complex_to_real_embed

__all__ = ["export_sdpa", "write_sdpa", "parse_sdpa"]


def _constraint_matrices(a0: HermitianMatrix):
    """F_0 and F_1..F_{n+1} for both blocks, as dense real matrices.

    SDPA convention: X(block) = sum_i x_i F_i - F_0 >= 0 with x_1 = w.
    """
    n = a0.n
    abar = complex_to_real_embed(a0)
    eye = np.eye(2 * n)
    f0 = [abar, -abar]
    fs = [[eye, eye]]
    for k in range(n):
        ak = np.zeros((2 * n, 2 * n))
        ak[k, k] = 1.0
        ak[n + k, n + k] = 1.0
        fs.append([-ak, ak])
    return f0, fs


def export_sdpa(a0: HermitianMatrix) -> str:
    """Render the real SDP for A0 as an SDPA sparse-format string."""
    n = a0.n
    f0, fs = _constraint_matrices(a0)
    lines = [
        f'"minimize w subject to w*I -/+ Abar[x] psd; n={n}; '
        f'variables (w, x1..x{n}); blocks 1: w*I - Abar[x], 2: w*I + Abar[x]',
        f"{n + 1} = mDIM",
        "2 = nBLOCK",
        f"{2 * n} {2 * n} = bLOCKsTRUCT",
        "1" + " 0" * n,
    ]
    for matno in range(n + 2):
        mats = f0 if matno == 0 else fs[matno - 1]
        for blk in (0, 1):
            m = mats[blk]
            for i in range(2 * n):
                for j in range(i, 2 * n):
                    v = float(m[i, j])
                    if v != 0.0:
                        lines.append(f"{matno} {blk + 1} {i + 1} {j + 1} {v!r}")
    return "\n".join(lines) + "\n"


def write_sdpa(a0: HermitianMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(export_sdpa(a0))


def parse_sdpa(text: str):
    """Parse an SDPA sparse-format document.

    Returns ``(m, block_sizes, c, mats)`` where mats maps
    ``(matno, block)`` with 1-based block numbers to dense symmetric
    matrices.  Raises ValueError on grammar violations.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line[0] in '*"':
            continue
        rows.append(line)
    if len(rows) < 4:
        raise ValueError("truncated SDPA file")

    def leading_ints(line, count):
        toks = line.replace(",", " ").replace("=", " ").split()
        vals = []
        for t in toks:
            try:
                vals.append(int(float(t)))
            except ValueError:
                break
            if len(vals) == count:
                break
        if len(vals) != count:
            raise ValueError(f"expected {count} integers in line: {line!r}")
        return vals

    m = leading_ints(rows[0], 1)[0]
    nblock = leading_ints(rows[1], 1)[0]
    sizes = leading_ints(rows[2], nblock)
    if any(s == 0 for s in sizes):
        raise ValueError("zero block size")
    c = np.array([float(t) for t in rows[3].replace(",", " ").split()])
    if c.size != m:
        raise ValueError("objective length does not match mDIM")

    mats = {}
    for line in rows[4:]:
        toks = line.replace(",", " ").split()
        if len(toks) != 5:
            raise ValueError(f"bad entry line: {line!r}")
        matno, blk, i, j = (int(t) for t in toks[:4])
        v = float(toks[4])
        if not 0 <= matno <= m or not 1 <= blk <= nblock:
            raise ValueError(f"entry indices out of range: {line!r}")
        size = abs(sizes[blk - 1])
        if not 1 <= i <= j <= size:
            raise ValueError(f"entry must be upper-triangular and in range: {line!r}")
        key = (matno, blk)
        if key not in mats:
            mats[key] = np.zeros((size, size))
        mats[key][i - 1, j - 1] = v
        mats[key][j - 1, i - 1] = v
    return m, sizes, c, mats
