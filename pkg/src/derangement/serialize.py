"""JSON and CSV encodings for polynomials, partitions, tables and cone reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Optional, Sequence

from derangement.algebra.poly import IntPoly, render
from derangement.algebra.ratfunc import RatFunc
from derangement.characters import BlockVector, psi_block, sigma_in_psi, to_blocks
from derangement.partitions import Partition, all_partitions_up_to

FORMAT_VERSION = "1"
BASES = ("psi", "sigma", "tau")


def poly_to_json(p: IntPoly) -> list[str]:
    return [str(c) for c in p.coeffs]


def poly_from_json(data: Sequence[str]) -> IntPoly:
    return IntPoly([int(c) for c in data])


def ratfunc_to_json(r: RatFunc) -> dict:
    return {"num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfunc_from_json(data: dict) -> RatFunc:
    return RatFunc(poly_from_json(data["num"]), poly_from_json(data["den"]))


def coeff_to_json(r: RatFunc) -> Any:
    """Polynomials as bare arrays, proper fractions as {"num", "den"}."""
    r = RatFunc.coerce(r)
    return poly_to_json(r.num) if r.den == IntPoly.const(1) else ratfunc_to_json(r)


def coeff_from_json(data: Any) -> RatFunc:
    if isinstance(data, dict):
        return ratfunc_from_json(data)
    return RatFunc.coerce(poly_from_json(data))


def partition_to_json(lam: Partition) -> list[int]:
    return list(lam)


def partition_from_json(data: Sequence[int]) -> Partition:
    return Partition(tuple(int(x) for x in data))


def block_vector_to_json(f: BlockVector) -> dict:
    return {
        "n": f.n,
        "rows": [{"partition": partition_to_json(lam), "coeff": coeff_to_json(c)} for lam, c in f.items()],
    }


def block_vector_from_json(data: dict) -> BlockVector:
    return BlockVector(
        data["n"],
        {partition_from_json(r["partition"]): coeff_from_json(r["coeff"]) for r in data["rows"]},
    )


# ----------------------------------------------------------------------
# coefficient tables
# ----------------------------------------------------------------------

def basis_columns(n: int, basis: str, deadline=None) -> list[BlockVector]:
    if basis == "psi":
        return [psi_block(n, k) for k in range(n + 1)]
    if basis == "sigma":
        return [to_blocks(sigma_in_psi(n, k)) for k in range(n + 1)]
    if basis == "tau":
        from derangement.cache import cached_basis

        return list(cached_basis(n, deadline=deadline).taus)
    raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")


def table_rows(n: int, basis: str, deadline=None) -> list[tuple[Partition, list[RatFunc]]]:
    cols = basis_columns(n, basis, deadline)
    return [(lam, [c[lam] for c in cols]) for lam in all_partitions_up_to(n)]


def table_to_json(n: int, basis: str, rows: Sequence[tuple[Partition, Sequence[RatFunc]]]) -> dict:
    return {
        "n": n,
        "basis": basis,
        "rows": [{"partition": partition_to_json(lam), "coeffs": [coeff_to_json(c) for c in cs]}
                 for lam, cs in rows],
    }


def table_from_json(data: dict) -> tuple[int, str, list[tuple[Partition, list[RatFunc]]]]:
    rows = [(partition_from_json(r["partition"]), [coeff_from_json(c) for c in r["coeffs"]])
            for r in data["rows"]]
    return data["n"], data["basis"], rows


def render_coeff(r: RatFunc) -> str:
    r = RatFunc.coerce(r)
    if r.den == IntPoly.const(1):
        return render(r.num)
    return f"({render(r.num)})/({render(r.den)})"


def table_to_csv(n: int, basis: str, rows: Sequence[tuple[Partition, Sequence[RatFunc]]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["partition"] + [f"{basis}_{k}" for k in range(n + 1)])
    for lam, cs in rows:
        w.writerow([str(lam)] + [render_coeff(c) for c in cs])
    return buf.getvalue()


def table_to_pretty(n: int, basis: str, rows: Sequence[tuple[Partition, Sequence[RatFunc]]]) -> str:
    header = [""] + [f"{basis}_{k}" for k in range(n + 1)]
    body = [[str(lam)] + [render_coeff(c) for c in cs] for lam, cs in rows]
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines) + "\n"


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# ----------------------------------------------------------------------
# cone reports
# ----------------------------------------------------------------------

def cone_report_to_json(report) -> dict:
    eig: dict[str, Optional[list[int]]] = {
        str(i): (None if lam is None else partition_to_json(lam)) for i, lam in sorted(report.eigendiagram_of.items())
    }
    return {
        "n": report.n,
        "simplicial": report.simplicial,
        "extremes": [block_vector_to_json(f) for f in report.extremes],
        "eigendiagrams": eig,
        "notes": list(report.notes),
        "labels": list(report.labels),
        "complete": report.complete,
    }


def cone_report_from_json(data: dict):
    from derangement.cone.analysis import ConeReport

    eig = {int(i): (None if v is None else partition_from_json(v)) for i, v in data["eigendiagrams"].items()}
    return ConeReport(
        n=data["n"],
        simplicial=data["simplicial"],
        extremes=[block_vector_from_json(f) for f in data["extremes"]],
        eigendiagram_of=eig,
        notes=list(data["notes"]),
        labels=list(data.get("labels", [])),
        complete=data.get("complete", True),
    )
