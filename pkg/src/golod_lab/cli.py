"""Command-line front end.

Exit codes: 0 for success (and mathematically positive answers), 1 for
mathematically negative answers (nontrivial products, nonzero Massey class,
NotGolod, series divergence), 2 for usage and parse errors, 3 for cap or
budget failures and honest indecision.  ``--format json`` emits the same data
as the text renderers.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import counterexample_search as cxs
from . import massey_golod as mg
from . import series_engine as se
from . import simplicial as sc
from .exact_linalg import parse_field
from .homology_engine import betti
from .monomial_core import (
    counterexample_generator_index,
    counterexample_ideal,
    format_ideal,
    format_monomial,
    parse_ideal,
    polarize,
)
from .taylor_dga import fiber_complex, lcm_lattice, mask_members


class UsageError(Exception):
    pass


def _scalar(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return int(x)


def _chain_json(chain):
    return [
        {"subset": mask_members(m), "coeff": _scalar(c)}
        for m, c in sorted(chain)
    ]


def _class_json(cls):
    if cls is None:
        return None
    return {
        "multidegree": list(cls.multidegree),
        "homological_degree": cls.hom_degree,
        "coordinates": [_scalar(c) for c in cls.coordinates],
        "representative": _chain_json(cls.representative),
    }


def _load_ideal(args):
    if getattr(args, "example", None):
        if args.example != "paper":
            raise UsageError(f"unknown example {args.example!r}")
        return counterexample_ideal()
    if getattr(args, "ideal", None):
        with open(args.ideal) as fh:
            return parse_ideal(fh.read())
    raise UsageError("provide --example paper or --ideal FILE")


def _load_complex(args):
    if getattr(args, "complex", None):
        with open(args.complex) as fh:
            return sc.parse_complex(fh.read())
    raise UsageError("provide --complex FILE")


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _add_common(p, ideal_input=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--field", default="q", help="coefficients: q or fp:<prime>")
    if ideal_input:
        p.add_argument("--example", help="built-in ideal preset (paper)")
        p.add_argument("--ideal", help="ideal file")


def cmd_betti(args):
    ideal = _load_ideal(args)
    field = parse_field(args.field)
    bd = betti(ideal, field)
    payload = {
        "field": str(field),
        "multigraded": [
            {"i": i, "multidegree": list(u), "dim": d}
            for (i, u), d in bd.multigraded
        ],
        "coarse": [
            {"i": i, "j": j, "dim": d} for (i, j), d in sorted(bd.coarse.items())
        ],
        "totals": list(bd.totals),
        "regularity": bd.regularity,
        "projective_dimension": bd.projective_dimension,
    }
    text = (
        f"Betti table over {field}\n{bd.table_str()}\n"
        f"regularity {bd.regularity}, projective dimension {bd.projective_dimension}"
    )
    _emit(args, payload, text)
    return 0


def cmd_products(args):
    ideal = _load_ideal(args)
    field = parse_field(args.field)
    ok, witness = mg.all_products_trivial(ideal, field)
    payload = {"field": str(field), "trivial": ok}
    if witness is not None:
        payload["witness"] = {
            "alpha": _class_json(witness.alpha),
            "beta": _class_json(witness.beta),
            "product": _chain_json(witness.product_chain),
        }
    text = (
        "all products of positive-degree homology classes vanish"
        if ok
        else "nontrivial product found:\n  " + witness.describe()
    )
    _emit(args, payload, text)
    return 0 if ok else 1


def _massey_payload(res):
    return {
        "defined": res.defined,
        "unique": res.unique,
        "zero": res.value_is_zero,
        "multidegree": list(res.multidegree) if res.multidegree else None,
        "homological_degree": res.hom_degree,
        "value": _class_json(res.value),
        "representative": _chain_json(res.value_chain) if res.value_chain else [],
        "obstruction": res.obstruction,
    }


def _parse_gen_token(tok, ideal, is_preset):
    tok = tok.strip()
    if tok.lstrip("-").isdigit():
        idx = int(tok)
        if not 0 <= idx < ideal.n_gens:
            raise UsageError(f"generator index {idx} out of range")
        return idx
    if is_preset:
        return counterexample_generator_index(tok)
    raise UsageError(f"generator {tok!r}: use integer indices for file ideals")


def cmd_massey3(args):
    ideal = _load_ideal(args)
    field = parse_field(args.field)
    if args.all:
        ok, witness = mg.satisfies_B(ideal, field, 3)
        payload = {"field": str(field), "all_zero": ok}
        if ok:
            text = "every binary and ternary Massey product is defined and zero"
        elif isinstance(witness, mg.ProductWitness):
            payload["witness"] = {"kind": "binary", "detail": witness.describe()}
            text = "a binary product is already nonzero:\n  " + witness.describe()
        else:
            alpha, beta, gamma, res = witness
            payload["witness"] = {"kind": "ternary", "massey": _massey_payload(res)}
            text = (
                "nonzero ternary Massey product at multidegree "
                f"{res.multidegree}, homological degree {res.hom_degree}"
            )
        _emit(args, payload, text)
        return 0 if ok else 1
    if not args.gens:
        raise UsageError("massey3 needs --gens i,j,k or --all")
    is_preset = getattr(args, "example", None) == "paper"
    toks = args.gens.split(",")
    if len(toks) != 3:
        raise UsageError("--gens wants exactly three generators")
    ia, ib, ic = (_parse_gen_token(t, ideal, is_preset) for t in toks)
    b2, _ = mg.all_products_trivial(ideal, field)
    res = mg.ternary_massey_generators(ideal, field, ia, ib, ic, b2_certified=b2)
    payload = {"field": str(field), "binary_products_trivial": b2}
    payload["massey"] = _massey_payload(res)
    agree = None
    if res.defined:
        alpha, beta, gamma = (
            _generator_class(ideal, field, i) for i in (ia, ib, ic)
        )
        general = mg.ternary_massey(ideal, field, alpha, beta, gamma, b2_certified=b2)
        payload["general"] = _massey_payload(general)
        if res.value is not None and general.value is not None:
            agree = res.value.coordinates == general.value.coordinates
        else:
            agree = res.value_is_zero == general.value_is_zero
        payload["routes_agree"] = agree
    if not res.defined:
        text = f"not defined / preconditions fail: {res.obstruction}"
        code = 0
    else:
        state = "zero" if res.value_is_zero else "NONZERO"
        text = (
            f"ternary Massey product: defined, {'unique' if res.unique else 'one member of the set'}, {state}\n"
            f"  multidegree {res.multidegree}, homological degree {res.hom_degree}\n"
            f"  representative: {_chain_text(res.value_chain)}\n"
            f"  defining-system route agrees: {agree}"
        )
        code = 1 if not res.value_is_zero else 0
    _emit(args, payload, text)
    return code


def _generator_class(ideal, field, idx):
    from .homology_engine import homology_basis

    # a generator is the single degree-1 basis element of its own strand
    u = tuple(ideal.gens[idx].exps)
    classes = homology_basis(ideal, field, u, 1)
    assert len(classes) == 1
    return classes[0]


def _chain_text(chain):
    parts = []
    for m, c in chain:
        idx = ",".join(str(i) for i in mask_members(m))
        coeff = "+" if c == 1 else ("-" if c == -1 else f"{c}*")
        parts.append(f"{coeff}e{{{idx}}}")
    return " ".join(parts) if parts else "0"


def cmd_golod(args):
    ideal = _load_ideal(args)
    field = parse_field(args.field)
    verdict = mg.golod_decide(ideal, field, series_trunc=args.trunc)
    payload = {
        "field": str(field),
        "status": verdict.status,
        "route": verdict.route,
        "reason": verdict.reason,
    }
    if verdict.series_evidence is not None:
        p, q, idx = verdict.series_evidence
        payload["series"] = {
            "p": [_scalar(c) for c in p.coeffs],
            "q": [_scalar(c) for c in q.coeffs],
            "first_divergence": idx,
        }
    text = f"{verdict.status} [{verdict.route}]\n  {verdict.reason}"
    _emit(args, payload, text)
    if verdict.status == "Golod":
        return 0
    if verdict.status == "NotGolod":
        return 1
    return 3


def cmd_series(args):
    ideal = _load_ideal(args)
    field = parse_field(args.field)
    n = args.trunc
    q = se.q_series(ideal, field, n)
    try:
        p, report = se.p_series(ideal, field, n, degree_cap_policy=args.cap_policy)
    except se.CapInsufficientError as exc:
        print(f"cap failure: {exc}", file=sys.stderr)
        return 3
    div = se.series_compare(p, q)
    payload = {
        "field": str(field),
        "p": [_scalar(c) for c in p.coeffs],
        "q": [_scalar(c) for c in q.coeffs],
        "first_divergence": None if div is None else div[0],
        "cap_report": report.describe(),
    }
    lines = [
        f"P (resolution side): {p}",
        f"Q (Koszul bound):    {q}",
        (
            "series agree through the truncation"
            if div is None
            else f"first divergence at index {div[0]} (P {'<' if div[1] < 0 else '>'} Q)"
        ),
        report.describe(),
    ]
    _emit(args, payload, "\n".join(lines))
    return 0 if div is None else 1


def cmd_polarize(args):
    ideal = _load_ideal(args)
    pol, varmap = polarize(ideal)
    payload = {
        "ideal": format_ideal(pol),
        "variable_map": {
            pol.variables[i]: ideal.variables[o]
            for i, o in enumerate(varmap.new_to_old)
        },
    }
    lines = ["# polarization; variable origins: " + ", ".join(
        f"{pol.variables[i]}<-{ideal.variables[o]}"
        for i, o in enumerate(varmap.new_to_old)
    )]
    lines.append(format_ideal(pol).rstrip())
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_fiber(args):
    ideal = _load_ideal(args)
    u = tuple(int(x) for x in args.mdeg.split(","))
    if len(u) != ideal.n_vars:
        raise UsageError(f"multidegree needs {ideal.n_vars} components")
    if u not in lcm_lattice(ideal):
        raise UsageError(f"multidegree {u} is not in the lcm lattice")
    cx = fiber_complex(ideal, u)
    legend = {
        f"g{i}": format_monomial(ideal.gens[i], ideal.variables)
        for i in lcm_lattice(ideal).generators_below(u)
    }
    payload = {
        "multidegree": list(u),
        "complex": sc.format_complex(cx),
        "vertex_legend": legend,
    }
    text = (
        "# vertices: " + ", ".join(f"{k}={v}" for k, v in legend.items()) + "\n"
        + sc.format_complex(cx).rstrip()
    )
    _emit(args, payload, text)
    return 0


def cmd_complex(args):
    ideal = _load_ideal(args)
    cx = sc.complex_of(ideal)
    _emit(args, {"complex": sc.format_complex(cx)}, sc.format_complex(cx).rstrip())
    return 0


def cmd_sr(args):
    cx = _load_complex(args)
    ideal = sc.stanley_reisner_ideal(cx)
    _emit(args, {"ideal": format_ideal(ideal)}, format_ideal(ideal).rstrip())
    return 0


def cmd_skeleton(args):
    cx = _load_complex(args)
    sk = sc.skeleton(cx, args.dim)
    _emit(args, {"complex": sc.format_complex(sk)}, sc.format_complex(sk).rstrip())
    return 0


def _parse_roles(text):
    mapping = {}
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad role token {part!r}; want name=index")
        name, idx = part.split("=", 1)
        mapping[name.strip()] = int(idx)
    rename = {"ab#c": "ab_sharp_c", "bc#a": "bc_sharp_a", "ca#b": "ca_sharp_b"}
    kwargs = {rename.get(k, k): v for k, v in mapping.items()}
    try:
        return cxs.RoleAssignment(**kwargs)
    except TypeError as exc:
        raise UsageError(f"bad role set: {exc}") from None


def cmd_pattern_check(args):
    if getattr(args, "example", None) == "paper":
        ideal, assignment = cxs.seed_pattern()
    else:
        ideal = _load_ideal(args)
        if not args.roles:
            raise UsageError("pattern-check needs --roles for file ideals")
        assignment = _parse_roles(args.roles)
    report = cxs.pattern_check(ideal, assignment)
    payload = {k: v for k, v in report.__dict__.items()}
    payload["all_ok"] = report.all_ok
    lines = [f"{k}: {v}" for k, v in report.__dict__.items()]
    lines.append(f"all conditions hold: {report.all_ok}")
    _emit(args, payload, "\n".join(lines))
    return 0 if report.all_ok else 1


def cmd_search(args):
    field = parse_field(args.field)
    budget = (args.budget, args.seconds) if args.seconds else args.budget
    stats = cxs.SearchStats()
    hits = []
    for hit in cxs.search(args.vars, args.max_gens, budget, field=field, stats=stats):
        hits.append(hit)
        record = {
            "serial": hit.serial,
            "ideal": format_ideal(hit.ideal),
            "counterexample": hit.is_counterexample,
            "all_products_trivial": hit.all_products_trivial,
        }
        if args.format == "json":
            print(json.dumps(record, sort_keys=True))
        else:
            print(
                f"hit #{hit.serial}: counterexample={hit.is_counterexample} "
                f"gens={hit.ideal.n_gens} vars={hit.ideal.n_vars}"
            )
    summary = {
        "candidates": stats.candidates,
        "survivors": stats.survivors,
        "budget_exhausted": stats.budget_exhausted,
    }
    if args.format == "json":
        print(json.dumps({"summary": summary}, sort_keys=True))
    else:
        print(
            f"searched {stats.candidates} candidates, {stats.survivors} survivors"
            + (" (budget exhausted)" if stats.budget_exhausted else "")
        )
    return 3 if stats.budget_exhausted and not hits else 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="golod-lab",
        description="Koszul homology products, Massey products, and Golod decisions for monomial rings",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="multigraded and coarse Betti numbers")
    _add_common(p)
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("products", help="exhaustive binary product check")
    _add_common(p)
    p.set_defaults(fn=cmd_products)

    p = sub.add_parser("massey3", help="ternary Massey products")
    _add_common(p)
    p.add_argument("--gens", help="three generators, e.g. m_a,m_b,m_c or 0,3,6")
    p.add_argument("--all", action="store_true", help="check every ternary product")
    p.set_defaults(fn=cmd_massey3)

    p = sub.add_parser("golod", help="decide the Golod property")
    _add_common(p)
    p.add_argument("--trunc", type=int, default=5, help="series truncation for the fallback route")
    p.set_defaults(fn=cmd_golod)

    p = sub.add_parser("series", help="resolution-side vs bound-side series")
    _add_common(p)
    p.add_argument("--trunc", type=int, default=5)
    p.add_argument("--cap-policy", choices=("serre", "windowed"), default="serre")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("polarize", help="polarize an ideal to a squarefree one")
    _add_common(p)
    p.set_defaults(fn=cmd_polarize)

    p = sub.add_parser("fiber", help="fiber complex of a lattice multidegree")
    _add_common(p)
    p.add_argument("--mdeg", required=True, help="comma-separated multidegree")
    p.set_defaults(fn=cmd_fiber)

    p = sub.add_parser("complex", help="Stanley-Reisner complex of a squarefree ideal")
    _add_common(p)
    p.set_defaults(fn=cmd_complex)

    p = sub.add_parser("sr", help="Stanley-Reisner ideal of a complex")
    _add_common(p, ideal_input=False)
    p.add_argument("--complex", required=True, help="complex file")
    p.set_defaults(fn=cmd_sr)

    p = sub.add_parser("skeleton", help="skeleton of a complex")
    _add_common(p, ideal_input=False)
    p.add_argument("--complex", required=True, help="complex file")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(fn=cmd_skeleton)

    p = sub.add_parser("pattern-check", help="role-pattern conditions on a squarefree ideal")
    _add_common(p)
    p.add_argument("--roles", help="e.g. a=0,b=3,c=6,ab=1,bc=4,ca=7,ab#c=2,bc#a=5,ca#b=5")
    p.set_defaults(fn=cmd_pattern_check)

    p = sub.add_parser("search", help="pattern search for trivial-product non-Golod ideals")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--field", default="q")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--max-gens", type=int, required=True)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seconds", type=float, default=None)
    p.set_defaults(fn=cmd_search)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
