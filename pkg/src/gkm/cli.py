"""Command line interface.

Exit codes: 0 on success, 1 when a library check fails (the error code and
witness are printed as one JSON line on stderr), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import builders, io
from .cohomology import (
    basis,
    decompose,
    deformation_space,
    dimension_formula,
    thom_basis,
)
from .errors import GKMError, MalformedInput
from .exactalg import covector, format_rational, to_fraction
from .reduction import cut, kirwan, reduce
from .schubert import double_schubert_table, format_table
from .skeleton import (
    betti,
    check_noncyclic,
    independence_level,
    is_gkm,
    polarize,
    sample_polarizing,
    validate,
)
from .surgery import blow_up


def _parse_vector(text):
    try:
        return covector(x for x in text.split(","))
    except MalformedInput:
        raise MalformedInput(f"bad vector {text!r}") from None


def _xi(args, sk, generic=False):
    if getattr(args, "xi", None):
        xi = _parse_vector(args.xi)
        if len(xi) != sk.n:
            raise MalformedInput(f"xi needs {sk.n} coordinates")
        return xi
    return sample_polarizing(sk, getattr(args, "seed", 0) or 0, generic=generic)


def _emit(args, data):
    text = io.dumps(data)
    if getattr(args, "output", None):
        io.write_json(args.output, data)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ build

def cmd_build(args):
    kind = args.kind
    if kind == "complete":
        taus = [_parse_vector(t) for t in args.taus.split(";")]
        sk = builders.complete(taus)
    elif kind == "johnson":
        sk = builders.johnson(args.n, args.k)
    elif kind == "product":
        sk = builders.product(io.load_skeleton(args.first), io.load_skeleton(args.second))
    elif kind == "polytope":
        sk = builders.polytope_skeleton(io.polytope_from_json(io.load_json(args.polytope)))
    else:
        factory = builders.FIXTURES[args.name]
        sk = factory(*args.params) if args.params else factory()
    _emit(args, io.skeleton_to_json(sk))
    return 0


def cmd_validate(args):
    sk = io.load_skeleton(args.skeleton)
    rep = validate(sk)
    for line in rep.lines():
        print(line)
    level = independence_level(sk)
    print(f"independence level: {level}")
    print("3-independence: " + ("ok" if level >= min(3, sk.valence) else "FAIL"))
    print("GKM: " + ("yes" if is_gkm(sk) else "no"))
    if args.xi:
        nc = check_noncyclic(sk, _parse_vector(args.xi))
        print("NCA1 ok" if nc.nca1 else f"NCA1 FAIL cycle={nc.cycle}")
        print("NCA2 ok" if nc.nca2 else f"NCA2 FAIL witness={json.dumps(nc.plane_witness, sort_keys=True)}")
    return 0


def cmd_betti(args):
    sk = io.load_skeleton(args.skeleton)
    if args.xi:
        b = betti(sk, _parse_vector(args.xi))
        print("(" + ",".join(map(str, b)) + ")")
        return 0
    seen = {}
    for s in range(args.seed, args.seed + args.samples):
        seen.setdefault(betti(sk, sample_polarizing(sk, s)), []).append(s)
    if len(seen) == 1:
        (b,) = seen
        print("(" + ",".join(map(str, b)) + f") invariant over {args.samples} polarizations")
        return 0
    for b, seeds in sorted(seen.items()):
        print("(" + ",".join(map(str, b)) + f") seeds={seeds}")
    return 1


def cmd_cohomology(args):
    sk = io.load_skeleton(args.skeleton)
    xi = _xi(args, sk)
    classes = basis(sk, args.m)
    formula = dimension_formula(sk, args.m, xi)
    verdict = "MATCH" if formula == len(classes) else "MISMATCH"
    print(f"dim={len(classes)} formula={formula} {verdict}")
    if args.basis:
        io.write_json(args.basis, [c.to_json() for c in classes])
    return 0 if verdict == "MATCH" else 1


def cmd_thom(args):
    sk = io.load_skeleton(args.skeleton)
    pol = polarize(sk, _xi(args, sk))
    tb = thom_basis(pol)
    data = {
        "xi": [format_rational(x) for x in pol.xi],
        "classes": {sk.vertices[p]: c.to_json() for p, c in tb.all().items()},
    }
    _emit(args, data)
    return 0


def cmd_decompose(args):
    sk = io.load_skeleton(args.skeleton)
    f = io.load_class(args.cls, sk)
    pol = polarize(sk, _xi(args, sk))
    coeffs = decompose(f, pol)
    _emit(args, {
        "xi": [format_rational(x) for x in pol.xi],
        "coefficients": {sk.vertices[p]: h.to_json() for p, h in coeffs.items()},
    })
    return 0


def _center(sk, items):
    # names like "-x" cannot be separate argv entries, so allow "a,b" and indices
    out = []
    for item in items:
        for tok in filter(None, item.split(",")):
            if tok not in sk.vertices and tok.isdigit():
                out.append(sk.vertex(int(tok)))
            else:
                out.append(sk.vertex(tok))
    return out


def cmd_blowup(args):
    sk = io.load_skeleton(args.skeleton)
    weights = to_fraction(args.weights) if args.weights else None
    B = blow_up(sk, _center(sk, args.center), weights)
    io.write_json(args.output, io.skeleton_to_json(B.result))
    io.write_json(_sidecar(args.output), B.sidecar())
    print(f"{B.result.num_vertices} vertices, valence {B.result.valence}")
    return 0


def _sidecar(path):
    return path[:-5] + ".sidecar.json" if path.endswith(".json") else path + ".sidecar.json"


def cmd_reduce(args):
    sk = io.load_skeleton(args.skeleton)
    pol = polarize(sk, _xi(args, sk, generic=True))
    R = reduce(sk, pol, to_fraction(args.c))
    io.write_json(args.output, io.skeleton_to_json(R.skeleton))
    io.write_json(_sidecar(args.output), {"provenance": R.provenance(),
                                          "xi": [format_rational(x) for x in pol.xi]})
    print(f"{R.skeleton.num_vertices} vertices, valence {R.skeleton.valence}")
    return 0


def cmd_cut(args):
    sk = io.load_skeleton(args.skeleton)
    pol = polarize(sk, _xi(args, sk, generic=True))
    C = cut(sk, pol, to_fraction(args.c), args.side)
    io.write_json(args.output, io.skeleton_to_json(C.skeleton))
    io.write_json(_sidecar(args.output), {"provenance": C.provenance()})
    print(f"{C.skeleton.num_vertices} vertices, valence {C.skeleton.valence}")
    return 0


def cmd_kirwan(args):
    sk = io.load_skeleton(args.skeleton)
    f = io.load_class(args.cls, sk)
    pol = polarize(sk, _xi(args, sk, generic=True))
    R = reduce(sk, pol, to_fraction(args.c))
    img = kirwan(f, R)
    out = {"reduced": io.skeleton_to_json(R.skeleton), "class": img.to_json()}
    _emit(args, out)
    return 0


def cmd_schubert(args):
    try:
        n, k = (int(x) for x in args.johnson.split(","))
    except ValueError:
        raise MalformedInput("--johnson expects n,k") from None
    table = double_schubert_table(n, k)
    if args.table:
        print(format_table(table))
    else:
        _emit(args, {p: {q: f.to_json() for q, f in row.items()} for p, row in table.items()})
    return 0


def cmd_deform(args):
    P = io.polytope_from_json(io.load_json(args.polytope))
    space = deformation_space(P)
    print(f"dim={len(space)} translations={sum(d.is_translation for d in space)}")
    if args.direction is not None:
        if not 0 <= args.direction < len(space):
            raise MalformedInput("direction index out of range")
        d = space[args.direction]
        t0 = d.safe_t()
        t = to_fraction(args.t) if args.t is not None else t0 / 2
        if not 0 <= t < t0:
            raise MalformedInput(f"t must lie in [0, {t0})")
        moved = builders.Polytope(P.n, d.emit(t), P.edges, P.names)
        print(f"t0={t0} t={t}")
        _emit(args, io.polytope_to_json(moved))
    return 0


# ------------------------------------------------------------------ parser

def build_parser():
    ap = argparse.ArgumentParser(prog="gkm", description="Exact computations on one-skeleta.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a skeleton")
    bs = b.add_subparsers(dest="kind", required=True)
    p = bs.add_parser("complete")
    p.add_argument("--taus", required=True, help='e.g. "0,0;1,0;0,1"')
    p = bs.add_parser("johnson")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = bs.add_parser("product")
    p.add_argument("first")
    p.add_argument("second")
    p = bs.add_parser("polytope")
    p.add_argument("polytope")
    p = bs.add_parser("fixture")
    p.add_argument("name", choices=sorted(builders.FIXTURES))
    p.add_argument("params", nargs="*", type=int)
    for q in bs.choices.values():
        q.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    def with_xi(q, seed=True):
        q.add_argument("--xi", help="polarizing vector, comma separated")
        if seed:
            q.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("validate", help="check the axioms")
    p.add_argument("skeleton")
    p.add_argument("--xi")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("betti", help="Betti numbers")
    p.add_argument("skeleton")
    with_xi(p)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("cohomology", help="dimension of a graded piece")
    p.add_argument("skeleton")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--basis")
    with_xi(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("thom", help="Thom classes")
    p.add_argument("skeleton")
    with_xi(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_thom)

    p = sub.add_parser("decompose", help="expand a class in Thom classes")
    p.add_argument("skeleton")
    p.add_argument("cls")
    with_xi(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("blowup", help="blow up along a vertex set")
    p.add_argument("skeleton")
    p.add_argument("--center", nargs="+", required=True,
                   help="vertex names or indices; use --center=a,b for names starting with -")
    p.add_argument("--weights")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_blowup)

    for name, func, desc in (("reduce", cmd_reduce, "reduced skeleton at a regular level"),
                             ("cut", cmd_cut, "cut at a regular level")):
        p = sub.add_parser(name, help=desc)
        p.add_argument("skeleton")
        with_xi(p)
        p.add_argument("-c", required=True)
        if name == "cut":
            p.add_argument("--side", choices=["le", "ge"], default="le")
        p.add_argument("-o", "--output", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("kirwan", help="restrict a class to a reduced skeleton")
    p.add_argument("skeleton")
    p.add_argument("cls")
    with_xi(p)
    p.add_argument("-c", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_kirwan)

    p = sub.add_parser("schubert", help="Schubert classes on J(n,k)")
    p.add_argument("--johnson", required=True)
    p.add_argument("--table", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("deform", help="deformations of a polytope")
    p.add_argument("polytope")
    p.add_argument("--direction", type=int)
    p.add_argument("--t")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_deform)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GKMError as exc:
        line = {"error": exc.code, "message": exc.message}
        if exc.witness is not None:
            line["witness"] = exc.witness
        sys.stderr.write(json.dumps(line, sort_keys=True, default=str) + "\n")
        return exc.exit_code
    except BrokenPipeError:
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
