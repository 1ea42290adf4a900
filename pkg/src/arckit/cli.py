"""Command-line front end: block computations, table emission,
resolution/A-infinity reports, SVG diagram rendering and result caching.

Exit codes: 0 success, 1 domain error (weight/block mismatch, dead
product, ...), 2 usage error (bad flags, malformed diagram strings).
Output is an aligned text table by default or a JSON document with
``--format json``; JSON documents round-trip through ``json`` verbatim,
and ``--cache DIR`` (default from $ARCKIT_CACHE) reuses them byte for
byte on warm runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .arcalg import AlgebraElement, basis, hom_basis, multiply, surgery_trace
from .diagrams import OrientedCircleDiagram, Weight, weights_in_block
from .extalg import (
    end_quiver,
    ext_basis,
    ext_dims,
    ext_quiver,
    shelton_dims,
)
from .repmod import cartan_matrix, decomposition_matrix, kl_poly_closed, kl_poly_recursive
from .resolve import (
    ResolutionCache,
    cache_load,
    cache_store,
    resolve_cone,
    resolve_generic,
    verify_resolution,
)

__all__ = ["main"]

CACHE_ENV = "ARCKIT_CACHE"


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_block(p: argparse.ArgumentParser):
    p.add_argument("-m", type=int, required=True, help="number of 'v' labels")
    p.add_argument("-n", type=int, required=True, help="number of '^' labels")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    p.add_argument(
        "--cache",
        default=os.environ.get(CACHE_ENV),
        metavar="DIR",
        help=f"cache directory (default ${CACHE_ENV})",
    )
    p.add_argument("-o", "--output", metavar="PATH", help="write output to PATH")


def _add_weight(p: argparse.ArgumentParser, name: str):
    flag = "lambda" if name == "lam" else name
    j_flag = "--j" if name == "lam" else f"--{name}-j"
    kl_flag = "--kl" if name == "lam" else f"--{name}-kl"
    p.add_argument(f"--{flag}", dest=name, metavar="WEIGHT", help="^/v string")
    p.add_argument(
        j_flag,
        dest=f"{name}_j",
        type=int,
        metavar="J",
        help=f"n=1 shorthand for --{flag}",
    )
    p.add_argument(
        kl_flag,
        dest=f"{name}_kl",
        metavar="K,L",
        help=f"n=2 shorthand for --{flag}",
    )


def _parse_weight(args, name: str, m: int, n: int) -> Weight:
    flag = "lambda" if name == "lam" else name
    text = getattr(args, name)
    j = getattr(args, f"{name}_j")
    kl = getattr(args, f"{name}_kl")
    given = [x for x in (text, j, kl) if x is not None]
    if len(given) != 1:
        raise UsageError(f"give exactly one weight flag for --{flag}")
    if text is not None:
        try:
            w = Weight.parse(text)
        except ValueError as e:
            raise UsageError(f"malformed weight {text!r}: {e}") from None
    elif j is not None:
        if n != 1:
            raise UsageError("the j shorthand only applies to n=1 blocks")
        try:
            w = Weight.from_j(m, j)
        except ValueError as e:
            raise DomainError(str(e)) from None
    else:
        if n != 2:
            raise UsageError("the k,l shorthand only applies to n=2 blocks")
        try:
            k, l = (int(x) for x in kl.split(","))
        except ValueError:
            raise UsageError(f"bad index pair {kl!r}, expected K,L") from None
        try:
            w = Weight.from_kl(m, k, l)
        except ValueError as e:
            raise DomainError(str(e)) from None
    if w.block != (m, n):
        raise DomainError(
            f"weight {w} lies in block ({w.m}|{w.n}), not ({m}|{n})"
        )
    return w


def _parse_diagram(text: str, m: int, n: int) -> OrientedCircleDiagram:
    try:
        d = _checked_diagram(text)
    except ValueError as e:
        raise UsageError(f"malformed diagram {text!r}: {e}") from None
    if d.weight.block != (m, n):
        raise DomainError(
            f"diagram weight {d.weight} not in block ({m}|{n})"
        )
    return d


def _checked_diagram(text: str) -> OrientedCircleDiagram:
    return OrientedCircleDiagram.parse(text)


def _block_weights(m: int, n: int):
    if m < 0 or n < 0:
        raise DomainError("block sizes must be >= 0")
    return weights_in_block(m, n)


# ---------------------------------------------------------------------------
# subcommand documents
# ---------------------------------------------------------------------------


def _doc_basis(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    if args.lam is not None or args.lam_j is not None or args.lam_kl is not None:
        lam = _parse_weight(args, "lam", m, n)
        mu = _parse_weight(args, "mu", m, n)
        diagrams = hom_basis(lam, mu)
        scope = f"e_lambda K e_mu for lambda={lam}, mu={mu}"
    else:
        diagrams = basis(m, n)
        scope = "full algebra"
    return {
        "block": [m, n],
        "scope": scope,
        "count": len(diagrams),
        "diagrams": [
            {"diagram": str(d), "degree": d.degree} for d in diagrams
        ],
    }


def _doc_multiply(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    x = _parse_diagram(args.x, m, n)
    y = _parse_diagram(args.y, m, n)
    product = multiply(
        AlgebraElement.from_diagram(x), AlgebraElement.from_diagram(y)
    )
    terms = sorted(
        ((str(d), c) for d, c in product), key=lambda t: t[0]
    )
    return {
        "block": [m, n],
        "x": str(x),
        "y": str(y),
        "zero": product.is_zero(),
        "terms": [{"coeff": str(c), "diagram": d} for d, c in terms],
    }


def _doc_klpoly(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    lam = _parse_weight(args, "lam", m, n)
    mu = _parse_weight(args, "mu", m, n)
    out = {"block": [m, n], "lambda": str(lam), "mu": str(mu)}
    if args.method in ("closed", "both"):
        out["closed"] = str(kl_poly_closed(lam, mu))
    if args.method in ("recursive", "both"):
        out["recursive"] = str(kl_poly_recursive(lam, mu))
    if args.method == "both" and out["closed"] != out["recursive"]:
        raise DomainError("closed and recursive KL polynomials disagree")
    out["polynomial"] = out.get("closed", out.get("recursive"))
    return out


def _matrix_doc(m: int, n: int, table) -> dict:
    ws = _block_weights(m, n)
    return {
        "block": [m, n],
        "weights": [str(w) for w in ws],
        "entries": {
            f"{lam},{mu}": str(p)
            for (lam, mu), p in sorted(
                table.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))
            )
            if not p.is_zero()
        },
    }


def _doc_decomp(args) -> dict:
    return _matrix_doc(args.m, args.n, decomposition_matrix(args.m, args.n))


def _doc_cartan(args) -> dict:
    return _matrix_doc(args.m, args.n, cartan_matrix(args.m, args.n))


def _doc_resolve(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    lam = _parse_weight(args, "lam", m, n)
    cache = ResolutionCache(args.cache) if args.cache else None
    key = (m, n, args.method, str(lam))
    complex_ = cache_load(cache, key) if cache else None
    if complex_ is None:
        fn = resolve_cone if args.method == "cone" else resolve_generic
        complex_ = fn(lam)
        if cache:
            cache_store(cache, key, complex_)
    doc = {
        "block": [m, n],
        "lambda": str(lam),
        "method": args.method,
        "length": len(complex_) - 1,
        "terms": [
            [str(w) for w in row] for row in complex_.terms()
        ],
    }
    if args.verify:
        issues = verify_resolution(complex_, lam)
        doc["verified"] = not issues
        doc["issues"] = issues
    return doc


def _doc_extdim(args) -> dict:
    m, n = args.m, args.n
    ws = _block_weights(m, n)
    if args.all:
        pairs = [(lam, mu) for lam in ws for mu in ws]
    else:
        lam = _parse_weight(args, "lam", m, n)
        mu = _parse_weight(args, "mu", m, n)
        pairs = [(lam, mu)]
    rows = []
    total = 0
    oracle_total = 0
    all_match = True
    for lam, mu in pairs:
        dims = ext_dims(lam, mu)
        row = {
            "lambda": str(lam),
            "mu": str(mu),
            "dims": {str(k): d for k, d in sorted(dims.items())},
            "total": sum(dims.values()),
        }
        total += row["total"]
        if args.oracle == "shelton":
            oracle = {k: d for k, d in shelton_dims(lam, mu).items() if d}
            row["oracle_dims"] = {str(k): d for k, d in sorted(oracle.items())}
            row["match"] = oracle == dims
            all_match = all_match and row["match"]
            oracle_total += sum(oracle.values())
        rows.append(row)
    doc = {"block": [m, n], "rows": rows, "total": total}
    if args.oracle == "shelton":
        doc["oracle_total"] = oracle_total
        doc["oracle_match"] = all_match
    return doc


def _doc_extbasis(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    lam = _parse_weight(args, "lam", m, n)
    mu = _parse_weight(args, "mu", m, n)
    classes = ext_basis(lam, mu, method=args.method)
    return {
        "block": [m, n],
        "lambda": str(lam),
        "mu": str(mu),
        "method": args.method,
        "count": len(classes),
        "classes": [
            {"label": c.label, "k": c.k, "j": c.j} for c in classes
        ],
    }


_N2_LABELS = ("Id", "F", "Ftilde", "G", "K", "J")


def _n2_in_range(label: str, src: tuple[int, int], tgt: tuple[int, int]) -> bool:
    big_n, big_m = src
    k, l = tgt
    if label == "Id":
        return l < k and l <= big_m and k <= big_n
    if label == "F":
        return l + 1 < k and l < big_m and k <= big_n
    if label == "Ftilde":
        return l < k and l <= big_m and k < big_n
    if label in ("G", "K"):
        return l < k and k < big_m
    if label == "J":
        return l < k and k < big_n and l < big_m
    raise ValueError(label)


def _doc_multtable(args) -> dict:
    from .extalg import construct_element, compose, decompose

    m, n = args.m, args.n
    if n != 2:
        raise DomainError("multtable requires an n=2 block")
    ws = _block_weights(m, n)
    families: dict[tuple[str, str], dict] = {
        (x, y): {"products": 0, "nonzero": 0, "results": set()}
        for x in _N2_LABELS
        for y in _N2_LABELS
    }
    for lam in ws:
        for mid in ws:
            if mid == lam:
                continue
            for mu in ws:
                if mu == mid:
                    continue
                src, via, tgt = lam.to_kl(), mid.to_kl(), mu.to_kl()
                for xl in _N2_LABELS:
                    if not _n2_in_range(xl, src, via):
                        continue
                    x = construct_element(xl, lam, mid)
                    if x.is_zero():
                        continue
                    for yl in _N2_LABELS:
                        if not _n2_in_range(yl, via, tgt):
                            continue
                        y = construct_element(yl, mid, mu)
                        if y.is_zero():
                            continue
                        cell = families[(xl, yl)]
                        cell["products"] += 1
                        product = compose(x, y)
                        coeffs, _ = decompose(product)
                        nonzero = {lab for (lab, _, _), c in coeffs.items() if c}
                        if nonzero:
                            cell["nonzero"] += 1
                            cell["results"] |= nonzero
    return {
        "block": [m, n],
        "labels": list(_N2_LABELS),
        "families": {
            f"{x}*{y}": {
                "products": cell["products"],
                "nonzero": cell["nonzero"],
                "results": sorted(cell["results"]),
            }
            for (x, y), cell in sorted(families.items())
        },
    }


def _doc_ainfty(args) -> dict:
    from .ainfty import build_splitting, stasheff_check, vanishing_report

    m, n = args.m, args.n
    _block_weights(m, n)
    mode = "canonical-n2" if args.mode == "canonical" else "generic"
    if mode == "canonical-n2" and n != 2:
        raise DomainError("canonical mode requires an n=2 block")
    split = build_splitting(m, n, mode)
    report = vanishing_report(split, args.max_arity)
    stasheff = stasheff_check(split, args.max_arity)
    return {
        "block": [m, n],
        "mode": args.mode,
        "max_arity": args.max_arity,
        "general_vanishing_bound": report["general_bound"],
        "q_lambda2_zero": report["q_lambda2_zero"],
        "q_lambda2_products_zero": report["q_lambda2_products_zero"],
        "q_lambda3_zero": report["q_lambda3_zero"],
        "products": {
            str(arity): {
                "nonzero_tuples": len(data["nonzero_tuples"]),
                "max_abs_coefficient": str(data["max_abs_coefficient"]),
            }
            for arity, data in sorted(report["per_arity"].items())
        },
        "stasheff": {
            "checked": stasheff["checked"],
            "violations": len(stasheff["violations"]),
        },
    }


def _doc_quiver(args) -> dict:
    m, n = args.m, args.n
    _block_weights(m, n)
    if args.algebra == "end":
        q = end_quiver(m, n)
        return {
            "block": [m, n],
            "algebra": "end",
            "vertices": [str(w) for w in q["vertices"]],
            "arrows": [[str(s), str(t)] for s, t in q["arrows"]],
            "relations": [
                [
                    {"coeff": str(c), "path": [str(w) for w in path]}
                    for c, path in rel
                ]
                for rel in q["relations"]
            ],
        }
    q = ext_quiver(m, n)
    return {
        "block": [m, n],
        "algebra": "ext",
        "vertices": [str(w) for w in q["vertices"]],
        "generators": [
            {"label": lab, "source": str(s), "target": str(t), "k": k, "j": j}
            for lab, s, t, k, j in q["generators"]
        ],
        "relations": [
            {
                "left": [g1[0], str(g1[1]), str(g1[2])],
                "right": [g2[0], str(g2[1]), str(g2[2])],
                "value": {
                    f"{lab},{k},{j}": str(c) for (lab, k, j), c in coeffs.items()
                },
            }
            for g1, g2, coeffs in q["relations"]
        ],
    }


# ---------------------------------------------------------------------------
# text rendering of documents
# ---------------------------------------------------------------------------


def _grid(rows: list[list[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    )


def _text_basis(doc: dict) -> str:
    head = f"block ({doc['block'][0]}|{doc['block'][1]}), {doc['scope']}: {doc['count']} diagrams"
    rows = [["degree", "diagram"]] + [
        [str(d["degree"]), d["diagram"]] for d in doc["diagrams"]
    ]
    return head + "\n" + _grid(rows)


def _text_multiply(doc: dict) -> str:
    if doc["zero"]:
        return "0"
    return "\n".join(f"{t['coeff']} * {t['diagram']}" for t in doc["terms"])


def _text_klpoly(doc: dict) -> str:
    return doc["polynomial"]


def _text_matrix(doc: dict) -> str:
    ws = doc["weights"]
    rows = [[""] + ws]
    for lam in ws:
        rows.append([lam] + [doc["entries"].get(f"{lam},{mu}", ".") for mu in ws])
    return _grid(rows)


def _text_resolve(doc: dict) -> str:
    lines = [
        f"linear resolution of M({doc['lambda']}) "
        f"({doc['method']}), length {doc['length']}"
    ]
    for i, row in enumerate(doc["terms"]):
        lines.append(f"  P_{i}: " + " + ".join(f"P({w})<{i}>" for w in row))
    if "verified" in doc:
        lines.append(
            "verified: ok" if doc["verified"] else "verified: FAILED"
        )
        lines.extend(f"  issue: {t}" for t in doc["issues"])
    return "\n".join(lines)


def _text_extdim(doc: dict) -> str:
    header = ["lambda", "mu", "dims (k:dim)", "total"]
    with_oracle = "oracle_total" in doc
    if with_oracle:
        header += ["oracle", "match"]
    rows = [header]
    for r in doc["rows"]:
        dims = " ".join(f"{k}:{d}" for k, d in r["dims"].items()) or "-"
        row = [r["lambda"], r["mu"], dims, str(r["total"])]
        if with_oracle:
            oracle = " ".join(f"{k}:{d}" for k, d in r["oracle_dims"].items()) or "-"
            row += [oracle, "yes" if r["match"] else "NO"]
        rows.append(row)
    tail = [f"total: {doc['total']}"]
    if with_oracle:
        tail.append(
            f"oracle total: {doc['oracle_total']} "
            f"({'identical' if doc['oracle_match'] else 'MISMATCH'})"
        )
    return _grid(rows) + "\n" + "\n".join(tail)


def _text_extbasis(doc: dict) -> str:
    head = (
        f"Ext(M({doc['lambda']}), M({doc['mu']})): {doc['count']} classes "
        f"({doc['method']})"
    )
    rows = [["label", "k", "j"]] + [
        [c["label"] or "-", str(c["k"]), str(c["j"])] for c in doc["classes"]
    ]
    return head + "\n" + _grid(rows)


def _text_multtable(doc: dict) -> str:
    labels = doc["labels"]
    rows = [["x\\y"] + labels]
    for x in labels:
        row = [x]
        for y in labels:
            cell = doc["families"][f"{x}*{y}"]
            if cell["products"] == 0:
                row.append("-")
            elif cell["nonzero"] == 0:
                row.append("0")
            else:
                row.append(",".join(cell["results"]))
        rows.append(row)
    return _grid(rows)


def _text_ainfty(doc: dict) -> str:
    parts = []
    for arity, data in doc["products"].items():
        if data["nonzero_tuples"]:
            parts.append(f"m{arity}: nonzero ({data['nonzero_tuples']} tuples)")
        else:
            parts.append(f"m{arity}: 0")
    lines = [
        f"block ({doc['block'][0]}|{doc['block'][1]}), mode {doc['mode']}, "
        f"arities 2..{doc['max_arity']}",
        ", ".join(parts),
        f"Q(lambda_2) = 0: {doc['q_lambda2_zero']}",
        f"Q(lambda_2)*Q(lambda_2) = 0: {doc['q_lambda2_products_zero']}",
        f"Q(lambda_3) = 0: {doc['q_lambda3_zero']}",
        f"stasheff identities: {doc['stasheff']['checked']} checked, "
        f"{doc['stasheff']['violations']} violations",
        f"general vanishing bound: m_l = 0 for l > {doc['general_vanishing_bound']}",
    ]
    return "\n".join(lines)


def _text_quiver(doc: dict) -> str:
    lines = [
        f"{doc['algebra']} quiver of block ({doc['block'][0]}|{doc['block'][1]}): "
        f"{len(doc['vertices'])} vertices"
    ]
    if doc["algebra"] == "end":
        lines.append(f"arrows ({len(doc['arrows'])}):")
        lines.extend(f"  {s} -> {t}" for s, t in doc["arrows"])
        lines.append(f"relations: {len(doc['relations'])}")
    else:
        lines.append(f"generators ({len(doc['generators'])}):")
        lines.extend(
            f"  {g['label']}: {g['source']} -> {g['target']}  (k={g['k']}, j={g['j']})"
            for g in doc["generators"]
        )
        lines.append(f"relations: {len(doc['relations'])}")
    return "\n".join(lines)


_TEXT = {
    "basis": _text_basis,
    "multiply": _text_multiply,
    "klpoly": _text_klpoly,
    "decomp": _text_matrix,
    "cartan": _text_matrix,
    "resolve": _text_resolve,
    "extdim": _text_extdim,
    "extbasis": _text_extbasis,
    "multtable": _text_multtable,
    "ainfty": _text_ainfty,
    "quiver": _text_quiver,
}

_DOC = {
    "basis": _doc_basis,
    "multiply": _doc_multiply,
    "klpoly": _doc_klpoly,
    "decomp": _doc_decomp,
    "cartan": _doc_cartan,
    "resolve": _doc_resolve,
    "extdim": _doc_extdim,
    "extbasis": _doc_extbasis,
    "multtable": _doc_multtable,
    "ainfty": _doc_ainfty,
    "quiver": _doc_quiver,
}


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_STEP = 40  # vertex spacing in user units


def _fmt(x: float) -> str:
    return f"{x:.1f}".rstrip("0").rstrip(".")


def _arc_path(x1: float, x2: float, y: float, downward: bool) -> str:
    rx = (x2 - x1) / 2
    ry = 0.7 * rx
    sweep = 0 if downward else 1
    return (
        f"M {_fmt(x1)} {_fmt(y)} "
        f"A {_fmt(rx)} {_fmt(ry)} 0 0 {sweep} {_fmt(x2)} {_fmt(y)}"
    )


def _svg_line_elements(
    out: list[str],
    x0: float,
    y: float,
    labels,
    cups,
    cup_rays,
    caps,
    cap_rays,
    ray_len: float = 30,
):
    size = len(labels)
    x = lambda p: x0 + _STEP / 2 + p * _STEP
    out.append(
        f'<line x1="{_fmt(x(0) - 15)}" y1="{_fmt(y)}" '
        f'x2="{_fmt(x(size - 1) + 15)}" y2="{_fmt(y)}" class="axis"/>'
    )
    for p, lab in enumerate(labels):
        glyph = "∧" if lab == "^" else "∨"
        out.append(
            f'<text x="{_fmt(x(p))}" y="{_fmt(y - 4)}" class="lbl">{glyph}</text>'
        )
    for i, j in sorted(cups):
        out.append(f'<path d="{_arc_path(x(i), x(j), y, False)}" class="arc"/>')
    for p in sorted(cup_rays):
        out.append(
            f'<line x1="{_fmt(x(p))}" y1="{_fmt(y)}" '
            f'x2="{_fmt(x(p))}" y2="{_fmt(y + ray_len)}" class="arc"/>'
        )
    for i, j in sorted(caps):
        out.append(f'<path d="{_arc_path(x(i), x(j), y, True)}" class="arc"/>')
    for p in sorted(cap_rays):
        out.append(
            f'<line x1="{_fmt(x(p))}" y1="{_fmt(y)}" '
            f'x2="{_fmt(x(p))}" y2="{_fmt(y - ray_len)}" class="arc"/>'
        )


_SVG_STYLE = (
    "<style>"
    ".axis{stroke:#999;stroke-width:1;}"
    ".arc{stroke:#000;stroke-width:1.5;fill:none;}"
    ".lbl{font:12px monospace;text-anchor:middle;}"
    ".ann{font:11px monospace;text-anchor:middle;fill:#333;}"
    "</style>"
)


def _svg_document(width: float, height: float, body: list[str]) -> str:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    return "\n".join([head, _SVG_STYLE] + body + ["</svg>"]) + "\n"


def render_diagram_svg(diagram: OrientedCircleDiagram) -> str:
    size = diagram.weight.size
    body: list[str] = []
    _svg_line_elements(
        body,
        0,
        70,
        diagram.weight.labels,
        diagram.cup.cups,
        diagram.cup.rays,
        diagram.cap.cups,
        diagram.cap.rays,
    )
    return _svg_document(size * _STEP, 140, body)


def render_trace_svg(panels) -> str:
    size = len(panels[0].bottom_labels)
    panel_w = size * _STEP + 30
    top_y, bottom_y, height = 60, 150, 215
    body: list[str] = []
    for idx, panel in enumerate(panels):
        x0 = idx * panel_w
        if panel.collapsed:
            _svg_line_elements(
                body,
                x0,
                (top_y + bottom_y) / 2,
                panel.bottom_labels,
                panel.cup_arcs,
                panel.cup_rays,
                panel.cap_arcs,
                panel.cap_rays,
            )
        else:
            # bottom line: cups of the first factor below, remaining middle
            # caps above
            _svg_line_elements(
                body,
                x0,
                bottom_y,
                panel.bottom_labels,
                panel.cup_arcs,
                panel.cup_rays,
                panel.middle_arcs,
                (),
            )
            # top line: caps of the second factor above, middle cups below
            _svg_line_elements(
                body,
                x0,
                top_y,
                panel.top_labels,
                panel.middle_arcs,
                (),
                panel.cap_arcs,
                panel.cap_rays,
            )
            x = lambda p: x0 + _STEP / 2 + p * _STEP
            for p in panel.verticals:
                body.append(
                    f'<line x1="{_fmt(x(p))}" y1="{_fmt(bottom_y)}" '
                    f'x2="{_fmt(x(p))}" y2="{_fmt(top_y)}" class="arc"/>'
                )
        centre = x0 + panel_w / 2 - 15
        if panel.annotation:
            body.append(
                f'<text x="{_fmt(centre)}" y="{_fmt(height - 14)}" class="ann">'
                f"{panel.annotation}</text>"
            )
        body.append(
            f'<text x="{_fmt(centre)}" y="{_fmt(height - 2)}" class="ann">'
            f"components: {' '.join(panel.component_types)}</text>"
        )
        if idx + 1 < len(panels):
            ax = x0 + panel_w - 22
            body.append(
                f'<line x1="{_fmt(ax)}" y1="{_fmt((top_y + bottom_y) / 2)}" '
                f'x2="{_fmt(ax + 14)}" y2="{_fmt((top_y + bottom_y) / 2)}" '
                'class="axis"/>'
            )
    return _svg_document(len(panels) * panel_w, height, body)


def _run_render(args) -> str:
    m, n = args.m, args.n
    _block_weights(m, n)
    chosen = [
        x
        for x in (
            args.weight,
            args.diagram,
            args.product,
        )
        if x
    ]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --weight/--diagram/--product")
    if args.weight:
        try:
            w = Weight.parse(args.weight)
        except ValueError as e:
            raise UsageError(f"malformed weight {args.weight!r}: {e}") from None
        if w.block != (m, n):
            raise DomainError(f"weight {w} not in block ({m}|{n})")
        from .arcalg import idempotent

        (diagram, _), = list(idempotent(w))
        return render_diagram_svg(diagram)
    if args.diagram:
        return render_diagram_svg(_parse_diagram(args.diagram, m, n))
    x = _parse_diagram(args.product[0], m, n)
    y = _parse_diagram(args.product[1], m, n)
    try:
        panels = surgery_trace(x, y)
    except ValueError as e:
        raise DomainError(str(e)) from None
    return render_trace_svg(panels)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arckit",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def cmd(name: str, help_: str, weights=(), **extra):
        p = sub.add_parser(name, help=help_)
        _add_block(p)
        _add_common(p)
        for w in weights:
            _add_weight(p, w)
        return p

    cmd("basis", "list algebra basis diagrams", weights=("lam", "mu"))
    p = cmd("multiply", "product of two basis diagrams")
    p.add_argument("x", help="first diagram 'cups=... rays=... | weight | ...'")
    p.add_argument("y", help="second diagram")
    p = cmd("klpoly", "combinatorial KL polynomial", weights=("lam", "mu"))
    p.add_argument(
        "--method", choices=("both", "closed", "recursive"), default="both"
    )
    cmd("decomp", "q-decomposition matrix")
    cmd("cartan", "graded Cartan matrix")
    p = cmd("resolve", "linear projective resolution", weights=("lam",))
    p.add_argument("--method", choices=("cone", "generic"), default="cone")
    p.add_argument("--verify", action="store_true")
    p = cmd("extdim", "Ext dimensions between cell modules", weights=("lam", "mu"))
    p.add_argument("--all", action="store_true", help="all ordered pairs")
    p.add_argument("--oracle", choices=("shelton",), help="oracle column")
    p = cmd("extbasis", "canonical Ext basis classes", weights=("lam", "mu"))
    p.add_argument("--method", choices=("auto", "generic"), default="auto")
    cmd("multtable", "Ext multiplication pattern table (n=2)")
    p = cmd("ainfty", "A-infinity minimal model report")
    p.add_argument("--mode", choices=("generic", "canonical"), default="generic")
    p.add_argument("--max-arity", type=int, default=5)
    p = cmd("quiver", "quiver with relations")
    p.add_argument("--algebra", choices=("end", "ext"), default="end")
    p = cmd("render", "deterministic SVG rendering")
    p.add_argument("--weight", metavar="WEIGHT", help="render e_lambda")
    p.add_argument("--diagram", metavar="DIAGRAM", help="render one basis diagram")
    p.add_argument(
        "--product",
        nargs=2,
        metavar=("X", "Y"),
        help="render the surgery trace of X*Y",
    )
    return parser


def _cache_path(cache_dir: str, key: str) -> str:
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    return os.path.join(cache_dir, f"cli-{digest}.json")


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        if args.subcommand == "render":
            _emit(args, _run_render(args))
            return 0
        document = None
        cache_file = None
        if args.cache:
            os.makedirs(args.cache, exist_ok=True)
            relevant = {
                k: v
                for k, v in sorted(vars(args).items())
                if k not in ("format", "cache", "output")
            }
            cache_file = _cache_path(args.cache, repr(relevant))
            if os.path.exists(cache_file):
                with open(cache_file) as fh:
                    document = json.load(fh)
        if document is None:
            document = _DOC[args.subcommand](args)
            if cache_file:
                with open(cache_file, "w") as fh:
                    json.dump(document, fh, indent=2, sort_keys=True)
        if args.format == "json":
            _emit(args, json.dumps(document, indent=2, sort_keys=True))
        else:
            _emit(args, _TEXT[args.subcommand](document))
        return 0
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
