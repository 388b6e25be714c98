"""Pure-Python kernels over log-coded finite fields.

Codes: 0 is zero, c >= 1 is g**(c-1).  ``zech[i]`` is the code of
``1 + g**i`` and ``half`` is the exponent of -1.
"""

NAME = "python"


def zech_table(F):
    return F._zech_list


def rref_rows(rows, ncols, Q, zech, half):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    n = Q - 1
    M = [list(r) for r in rows]
    nr = len(M)
    r = 0
    piv = []
    for c in range(ncols):
        if r == nr:
            break
        sel = -1
        for i in range(r, nr):
            if M[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        M[r], M[sel] = M[sel], M[r]
        row = M[r]
        inv = (1 - row[c]) % n + 1
        if inv != 1:
            row = [0 if x == 0 else (x + inv - 2) % n + 1 for x in row]
            M[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nr):
            if i == r:
                continue
            Ri = M[i]
            f = Ri[c]
            if not f:
                continue
            nf = (f - 1 + half) % n + 1
            for j in nz:
                b = (nf + row[j] - 2) % n + 1
                a = Ri[j]
                if a == 0:
                    Ri[j] = b
                else:
                    z = zech[(b - a) % n]
                    Ri[j] = 0 if z == 0 else (a + z - 2) % n + 1
        piv.append(c)
        r += 1
    return M[:r], piv


def polymul(f, g, Q, zech):
    n = Q - 1
    out = [0] * (len(f) + len(g) - 1)
    gz = [(j, b) for j, b in enumerate(g) if b]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in gz:
            m = (a + b - 2) % n + 1
            k = i + j
            c = out[k]
            if c == 0:
                out[k] = m
            else:
                z = zech[(m - c) % n]
                out[k] = 0 if z == 0 else (c + z - 2) % n + 1
    return out
