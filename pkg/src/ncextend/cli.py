"""Command-line front end.

Every command prints one JSON document. Exit status: 0 on success, 1 when a
verification fails (the document then carries the failure report), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import bounds, cohom, graph, parameters, representations, sdp, semiring, transport
from .graph import Graph

FLOAT_DIGITS = 9


class InputError(Exception):
    """Bad command-line input; exit status 2."""


class VerificationFailure(Exception):
    """A verifier rejected its input; exit status 1."""

    def __init__(self, report: dict):
        super().__init__(report.get("reason", "verification failed"))
        self.report = report


def _plain(x):
    """Convert results to JSON-ready values with fixed float precision."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (float, mpmath.mpf)):
        return float(f"{float(x):.{FLOAT_DIGITS}g}")
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _load_json(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path!r} is not valid JSON: {exc}") from None


def _parse(loader, path: str, what: str):
    if path is None:
        raise InputError(f"missing --{what}")
    data = _load_json(path, what)
    try:
        return loader(data)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"invalid {what} in {path!r}: {exc}") from None


def _graph(path, what="graph") -> Graph:
    return _parse(Graph.from_json, path, what)


def _element(path, what) -> semiring.AElement:
    return _parse(semiring.AElement.from_json, path, what)


def _guard(args, default):
    g = args.guard if args.guard is not None else default
    if g < 1:
        raise InputError("--guard must be positive")
    return g


def _tol(args, default):
    t = args.tol if args.tol is not None else default
    if not t > 0:
        raise InputError("--tol must be positive")
    return t


def _verdict(v: cohom.Verdict, extra=None) -> dict:
    out = dict(extra or {})
    out.update(v.to_json())
    if not v:
        raise VerificationFailure(out)
    return out


# graph


def cmd_graph(args) -> dict:
    op = args.op
    if op == "gen":
        fam, n = args.family, args.n
        try:
            if fam == "cycle":
                G = graph.cycle(n)
            elif fam == "complete":
                G = graph.complete(n)
            elif fam == "empty":
                G = graph.empty(n)
            elif fam == "hadamard":
                G = graph.hadamard_graph(n, guard=_guard(args, graph.HADAMARD_GUARD))
            else:
                G = graph.hamming_weight_graph(args.p, guard=_guard(args, graph.HAMMING_PRIME_GUARD))
        except TypeError:
            raise InputError(f"family {fam} needs --n or --p") from None
        return G.to_json()
    graphs = [_graph(p) for p in (args.graph or [])]
    need = 1 if op in ("complement", "power", "info") else 2
    if len(graphs) != need:
        raise InputError(f"graph {op} needs {need} --graph argument(s)")
    if op == "complement":
        return graph.complement(graphs[0]).to_json()
    if op == "power":
        if args.n is None or args.n < 1:
            raise InputError("graph power needs --n >= 1")
        return graph.strong_power(graphs[0], args.n).to_json()
    if op == "info":
        G = graphs[0]
        return {"vertices": G.n, "edges": G.num_edges, "degrees": [G.degree(v) for v in range(G.n)]}
    if op == "product":
        return graph.strong_product(*graphs).to_json()
    return graph.disjoint_union(*graphs).to_json()


# params


def _cert_check(fn, G, cert):
    try:
        return fn(G, cert)
    except representations.CertificateError as exc:
        raise VerificationFailure({"valid": False, "reason": str(exc)}) from None


def cmd_params(args) -> dict:
    op = args.op
    G = _graph(args.graph[0] if args.graph else None)
    if op == "alpha":
        ind = parameters.max_independent_set(G, _guard(args, parameters.ALPHA_GUARD))
        return {"value": len(ind), "independent_set": ind, "method": "branch-and-bound"}
    if op == "theta":
        res = sdp.lovasz_theta(G, tol=_tol(args, 1e-7), guard=_guard(args, sdp.THETA_GUARD))
        return {
            "value": res.value,
            "gap": res.gap,
            "method": "sdp",
            "upper": res.upper,
            "lower": res.lower,
            "iterations": res.iterations,
        }
    if op == "fcc":
        lp = parameters.clique_cover_lp(G, _guard(args, parameters.CLIQUE_GUARD))
        return {
            "value": lp.value,
            "value_float": float(lp.value),
            "method": "exact-lp",
            "cliques": [list(C) for C in lp.cliques],
            "weights": lp.weights,
            "vertex_weights": lp.vertex_weights,
        }
    if op == "capacity-lb":
        if args.n is None:
            raise InputError("capacity-lb needs --n")
        b = parameters.capacity_lower_bound(G, args.n, _guard(args, parameters.ALPHA_GUARD))
        return {"alpha_power": b.alpha, "n": b.n, "value": b.value}
    loaders = {
        "verify-orthonormal": (representations.OrthonormalRepCertificate, representations.verify_orthonormal_rep),
        "verify-subspace-fp": (representations.SubspaceRepFp, representations.verify_subspace_rep_fp),
        "verify-subspace-c": (representations.SubspaceRepC, representations.verify_subspace_rep_complex),
        "verify-projective": (representations.ProjectiveRepCertificate, representations.verify_projective_rep),
    }
    if op == "verify-orthogonal":
        vecs = _parse(lambda d: d["vectors"], args.cert, "cert")
        return {"valid": True, "dimension": _cert_check(representations.verify_orthogonal_rank_rep, G, vecs)}
    cls, fn = loaders[op]
    cert = _parse(cls.from_json, args.cert, "cert")
    return {"valid": True, "value": _cert_check(fn, G, cert)}


# semiring


_SPECTRAL = {
    "alpha": lambda G: parameters.independence_number(G),
    "theta": lambda G: sdp.theta_value(G),
    "fcc": lambda G: parameters.clique_cover_fractional(G),
}


def _alpha(args):
    if args.alpha is None:
        return 1
    a = Fraction(args.alpha).limit_denominator(10**6)
    return int(a) if a.denominator == 1 else float(args.alpha)


def cmd_semiring(args) -> dict:
    op = args.op
    elems = [_element(p, "element") for p in (args.element or [])]
    if op in ("add", "mul"):
        if len(elems) != 2:
            raise InputError(f"semiring {op} needs two --element arguments")
        fn = semiring.a_add if op == "add" else semiring.a_mul
        return fn(*elems).to_json()
    if len(elems) != 1:
        raise InputError(f"semiring {op} needs one --element argument")
    S = elems[0]
    f = _SPECTRAL[args.f]
    alpha = _alpha(args)
    try:
        if op == "evaluate":
            return {"value": semiring.evaluate(S, f, alpha), "f": args.f, "alpha": alpha}
        Q = _parse(semiring.Distribution.from_json, args.dist, "dist")
        base = _parse(lambda d: {int(k): float(v) for k, v in d.items()}, args.base, "base")
        terms = semiring.refinement_terms(S, Q, base)
        return {
            "value": terms.value(alpha),
            "entropy": terms.entropy,
            "base": float(terms.base),
            "log_dim": terms.log_dim,
            "alpha": alpha,
        }
    except semiring.SemiringError as exc:
        raise InputError(str(exc)) from None


# cohom


def cmd_cohom(args) -> dict:
    op = args.op
    if op == "find":
        H = _graph(args.source, "source")
        G = _graph(args.target, "target")
        psi = cohom.find_graph_cohomomorphism(H, G, _guard(args, cohom.COHOM_GUARD))
        return {"exists": psi is not None, "map": psi}
    if op == "cliques":
        G = _graph(args.graph[0] if args.graph else None)
        if args.d is None:
            raise InputError("cohom cliques needs --d")
        cl = cohom.disjoint_cliques(G, args.d)
        return {"count": len(cl), "cliques": [list(C) for C in cl]}
    if op == "witness-from-cliques":
        G = _graph(args.graph[0] if args.graph else None)
        if args.d is None:
            raise InputError("witness-from-cliques needs --d")
        vecs = _parse(lambda d: d["vectors"], args.cert, "cert")
        cl = cohom.disjoint_cliques(G, args.d)
        try:
            w = cohom.witness_from_cliques(G, args.d, vecs, cl)
        except cohom.WitnessError as exc:
            raise VerificationFailure({"valid": False, "reason": str(exc)}) from None
        verdict = cohom.verify_kraus_witness(w.source, w.target, w)
        return _verdict(verdict, {"count": len(cl), "witness": w.to_json()})
    T = _element(args.source, "source")
    S = _element(args.target, "target")
    if op == "verify-form":
        form = _parse(cohom.SpecialForm.from_json, args.form, "form")
        return _verdict(cohom.verify_special_form(T, S, form))
    w = _parse(cohom.KrausWitness.from_json, args.witness, "witness")
    if args.tol is not None and w.mode == "floating":
        w.tol = _tol(args, w.tol)
    if op == "verify":
        return _verdict(cohom.verify_kraus_witness(T, S, w))
    if args.q is None:
        raise InputError("cohom project needs --q")
    try:
        out = cohom.project_witness(T, S, w, args.q)
    except cohom.WitnessError as exc:
        raise VerificationFailure({"valid": False, "reason": str(exc)}) from None
    return _verdict(cohom.verify_kraus_witness(out.source, out.target, out), {"witness": out.to_json()})


# transport


def cmd_transport(args) -> dict:
    T = _element(args.source, "source")
    S = _element(args.target, "target")
    form = _parse(cohom.SpecialForm.from_json, args.form, "form")
    kind = {
        "theta": (representations.OrthonormalRepCertificate, transport.transport_theta),
        "haemers": (representations.SubspaceRepC, transport.transport_haemers_c),
        "projective": (representations.ProjectiveRepCertificate, transport.transport_projective),
    }
    cls, fn = kind[args.op]
    reps = _parse(lambda d: [cls.from_json(c) for c in d["certificates"]], args.cert, "cert")
    try:
        inp = transport.TransportInput.from_form(T, S, form)
        cert = fn(inp, reps)
    except (transport.TransportError, cohom.WitnessError) as exc:
        raise VerificationFailure({"valid": False, "reason": str(exc)}) from None
    if args.op == "theta":
        value = representations.verify_orthonormal_rep(inp.H, cert)
        inputs = [representations.verify_orthonormal_rep(G, r) for (G, _), r in zip(S.terms, reps)]
    else:
        value = Fraction(cert.a, cert.b)
        inputs = [Fraction(r.a, r.b) for r in reps]
    return {
        "valid": True,
        "value": value,
        "bound": transport.input_bound(S, inputs),
        "graph": inp.H.to_json(),
        "certificate": cert.to_json(),
    }


# bounds


def cmd_bounds(args) -> dict:
    if args.op == "fp":
        if args.p is None:
            raise InputError("bounds fp needs --p")
        digits = args.precision if args.precision is not None else 20
        if digits < 1:
            raise InputError("--precision must be positive")
        try:
            r = bounds.fp_exponent_lower_bound(args.p, digits=max(bounds.DIGITS, digits + 10))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return {
            "p": r.p,
            "n": r.n,
            "binomial_form": r.binomial_form,
            "entropy_form": r.entropy_form,
            "binomial_form_digits": mpmath.nstr(r.binomial_form, digits),
            "entropy_form_digits": mpmath.nstr(r.entropy_form, digits),
            "central_binomial": str(r.central_binomial),
            "tail_sum": str(r.tail_sum),
            "symmetry_ok": r.symmetry_ok,
            "chain_holds": r.chain_holds,
            "nontrivial": r.nontrivial,
            "note": r.note,
            "hadamard_assumption": r.hadamard_assumption,
        }
    k = args.k if args.k is not None else 1
    r = bounds.omega_fcc_report(k, guard=_guard(args, bounds.OMEGA_K_GUARD))
    return {
        "k": r.k,
        "n": r.n,
        "vertices": r.vertices,
        "alpha": r.alpha,
        "independent_set": r.independent_set,
        "chi_f": r.chi_f,
        "orthogonal_rank_ub": r.orthogonal_rank_ub,
        "inequality_holds": r.inequality_holds,
        "ratio": r.ratio,
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", action="append", help="graph JSON file (repeat for binary ops)")
    common.add_argument("--source", help="left-hand side JSON file")
    common.add_argument("--target", help="right-hand side JSON file")
    common.add_argument("--witness", help="Kraus witness JSON file")
    common.add_argument("--form", help="special form JSON file")
    common.add_argument("--cert", help="certificate JSON file")
    common.add_argument("--element", action="append", help="semiring element JSON file")
    common.add_argument("--dist", help="distribution JSON file (list of 'num/den')")
    common.add_argument("--base", help="JSON object mapping term dimension to log2 f(G_d, Q_d)")
    common.add_argument("--f", choices=sorted(_SPECTRAL), default="theta")
    common.add_argument("--alpha", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--p", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--family", choices=["cycle", "complete", "empty", "hadamard", "hamming"], default="cycle")
    common.add_argument("--guard", type=int)
    common.add_argument("--workers", type=int, default=1, help="accepted for scripting; solvers run serially")
    common.add_argument("--precision", type=int)
    common.add_argument("--output", help="write the JSON report here instead of stdout")

    parser = argparse.ArgumentParser(prog="ncextend", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    commands = {
        "graph": (cmd_graph, ["gen", "complement", "product", "union", "power", "info"]),
        "params": (
            cmd_params,
            ["alpha", "theta", "fcc", "capacity-lb", "verify-orthonormal", "verify-orthogonal",
             "verify-subspace-fp", "verify-subspace-c", "verify-projective"],
        ),
        "semiring": (cmd_semiring, ["add", "mul", "evaluate", "refine"]),
        "cohom": (cmd_cohom, ["find", "verify", "verify-form", "project", "cliques", "witness-from-cliques"]),
        "transport": (cmd_transport, ["theta", "haemers", "projective"]),
        "bounds": (cmd_bounds, ["fp", "fcc-omega"]),
    }
    for name, (fn, ops) in commands.items():
        g = groups.add_parser(name)
        sub = g.add_subparsers(dest="op", required=True)
        for op in ops:
            sub.add_parser(op, parents=[common]).set_defaults(func=fn)
    return parser


def _emit(doc: dict, path: str | None):
    text = json.dumps(_plain(doc), ensure_ascii=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = args.func(args)
    except InputError as exc:
        _emit({"error": str(exc), "kind": "input"}, None)
        return 2
    except VerificationFailure as exc:
        _emit(exc.report, args.output)
        return 1
    except sdp.ThetaConvergenceError as exc:
        _emit({"error": str(exc), "kind": "convergence", "gap": exc.gap}, args.output)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        _emit({"error": str(exc), "kind": "input"}, None)
        return 2
    _emit(doc, args.output)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
