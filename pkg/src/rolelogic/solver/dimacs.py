"""DIMACS CNF export and import."""

from __future__ import annotations

from pathlib import Path

from .ground import CardConstraint, GroundProblem


def card_to_solver(p: GroundProblem):
    """Rewrite every constraint as ``t <=> sum >= k`` for the search.

    Returns ``(nvars, extra_clauses, [(t, k, lits)])``.
    """
    nvars = p.nvars
    clauses: list[list[int]] = []
    out = []

    def fresh():
        nonlocal nvars
        nvars += 1
        return nvars

    for c in p.cards:
        t = c.out
        if t is None:
            t = fresh()
            clauses.append([t])
        if c.kind == ">=":
            out.append((t, c.k, list(c.lits)))
        elif c.kind == "<=":
            out.append((-t, c.k + 1, list(c.lits)))
        else:
            a, b = fresh(), fresh()
            out.append((a, c.k, list(c.lits)))
            out.append((b, c.k + 1, list(c.lits)))
            clauses += [[-t, a], [-t, -b], [t, -a, b]]
    return nvars, clauses, out


def _totalizer(lits, fresh, clauses):
    """Outputs ``r[1..m]`` with ``r[j] <=> sum(lits) >= j``."""
    if len(lits) == 1:
        return [lits[0]]
    mid = len(lits) // 2
    a = _totalizer(lits[:mid], fresh, clauses)
    b = _totalizer(lits[mid:], fresh, clauses)
    r = [fresh() for _ in range(len(a) + len(b))]
    p, q = len(a), len(b)
    for i in range(p + 1):
        for j in range(q + 1):
            if i + j >= 1:
                c = [r[i + j - 1]]
                if i:
                    c.append(-a[i - 1])
                if j:
                    c.append(-b[j - 1])
                clauses.append(c)
            if i + j < p + q:
                c = [-r[i + j]]
                if i < p:
                    c.append(a[i])
                if j < q:
                    c.append(b[j])
                clauses.append(c)
    return r


def clausify(p: GroundProblem) -> tuple[int, list[list[int]]]:
    """Plain CNF equisatisfiable with ``p``: pairwise encoding for
    thresholds up to 2, a totalizer above."""
    nvars, clauses, cards = card_to_solver(p)
    clauses = [list(c) for c in p.clauses] + clauses

    def fresh():
        nonlocal nvars
        nvars += 1
        return nvars

    for t, k, lits in cards:
        m = len(lits)
        if k <= 0:
            clauses.append([t])
        elif k > m:
            clauses.append([-t])
        elif k == 1:
            clauses.append([-t] + lits)
            clauses += [[t, -l] for l in lits]
        elif k == 2:
            for i in range(m):
                clauses.append([-t] + lits[:i] + lits[i + 1:])
            for i in range(m):
                for j in range(i + 1, m):
                    clauses.append([t, -lits[i], -lits[j]])
        else:
            r = _totalizer(lits, fresh, clauses)
            clauses += [[-t, r[k - 1]], [t, -r[k - 1]]]
    return nvars, clauses


def dimacs_text(p: GroundProblem) -> str:
    nvars, clauses = clausify(p)
    lines = [f"p cnf {nvars} {len(clauses)}"]
    lines += [" ".join(str(l) for l in c + [0]) for c in clauses]
    return "\n".join(lines) + "\n"


def export_dimacs(p: GroundProblem, path) -> None:
    Path(path).write_text(dimacs_text(p))


def parse_dimacs(text: str) -> GroundProblem:
    """Read DIMACS CNF into a problem without cardinality constraints."""
    p = GroundProblem()
    declared = None
    cur: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad header: {line!r}")
            p.nvars = int(parts[2])
            declared = int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                p.clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        p.clauses.append(cur)
    if declared is None:
        raise ValueError("missing 'p cnf' header")
    if declared != len(p.clauses):
        raise ValueError(f"header declares {declared} clauses, found {len(p.clauses)}")
    p.check()
    return p


def read_dimacs(path) -> GroundProblem:
    return parse_dimacs(Path(path).read_text())


__all__ = ["CardConstraint", "clausify", "dimacs_text", "export_dimacs", "parse_dimacs", "read_dimacs"]
