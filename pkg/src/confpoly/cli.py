"""``confpoly`` command line: JSON in, JSON out.

Exit codes: 0 success, 1 domain error (error JSON on stdout), 2 usage error.
File arguments accept ``-`` for stdin.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .classify import classify
from .config import Configuration, hadamard_dims, matroid
from .configpoly import (GraphSpec, SymbolicForm, configuration_form, kirchhoff, matroid_polynomial,
                         psi_basis_expansion, psi_det)
from .equivalence import ContactCert, check_cert, reduce_variables, try_drop_variable
from .errors import ConfpolyError, ParseError
from .exactalg import rat_str, to_rat
from .family import family_config, lemma54_cert, prop53_evidence, psi_m, q_m, tower_report
from .ideals import Ideal, groebner, ideal_equal, intersect, s_pairs_reduce, submaximal_minors_ideal
from .polyring import Poly
from .suite import DEFAULT_SEED, random_params, run_suite


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc


def _config_or_graph(args):
    if getattr(args, "graph", None):
        w, _ = kirchhoff(GraphSpec.from_json(_load(args.graph)))
        return w
    if not args.config:
        raise ParseError("one of --config or --graph is required")
    return Configuration.from_json(_load(args.config))


def _rat_list(text):
    return [to_rat(t) for t in text.split(",") if t.strip()]


def cmd_psi(args):
    w = _config_or_graph(args)
    return {"configuration": w.to_json(), "psi": psi_det(w).to_json()}


def cmd_psi_basis(args):
    w = _config_or_graph(args)
    return {"psi": psi_basis_expansion(w).to_json()}


def cmd_matroid_poly(args):
    w = _config_or_graph(args)
    m = matroid(w)
    return {"bases": [list(b) for b in m.bases()], "polynomial": matroid_polynomial(m).to_json()}


def cmd_kirchhoff(args):
    g = GraphSpec.from_json(_load(args.graph))
    w, psi = kirchhoff(g)
    return {"configuration": w.to_json(), "psi": psi.to_json()}


def cmd_hadamard(args):
    w = Configuration.from_json(_load(args.config))
    prof = hadamard_dims(w, args.s)
    out = prof.to_json()
    del out["filtration"]
    return out


def cmd_filtration(args):
    w = Configuration.from_json(_load(args.config))
    return hadamard_dims(w, args.s).to_json()


def cmd_reduce(args):
    w = Configuration.from_json(_load(args.config))
    rep = reduce_variables(w)
    ok = check_cert(psi_det(w), psi_det(rep.reduced), rep.cert)
    return rep.to_json(verified=ok)


def cmd_drop_var(args):
    w = Configuration.from_json(_load(args.config))
    found = try_drop_variable(w)
    if found is None:
        return {"dropped": None}
    e, cert = found
    return {"dropped": e, "cert": cert.to_json()}


def cmd_check_cert(args):
    phi = Poly.from_json(_load(args.phi))
    psi = Poly.from_json(_load(args.psi))
    cert = ContactCert.from_json(_load(args.cert))
    return {"valid": check_cert(phi, psi, cert)}


def cmd_classify(args):
    w = Configuration.from_json(_load(args.config))
    label = classify(w)
    out = label.to_json()
    out["verified"] = check_cert(psi_det(w), label.normal_form, label.cert)
    return out


def cmd_minors_ideal(args):
    if args.form:
        q = SymbolicForm.from_json(_load(args.form))
    else:
        q = configuration_form(Configuration.from_json(_load(args.config)))
    ideal = submaximal_minors_ideal(q)
    return ideal.to_json(reduced=args.reduced)


def cmd_groebner(args):
    i = groebner(Ideal.from_json(_load(args.ideal)))
    out = i.to_json()
    out["s_pairs_reduce_to_zero"] = s_pairs_reduce(i)
    return out


def cmd_ideal_eq(args):
    return {"equal": ideal_equal(Ideal.from_json(_load(args.a)), Ideal.from_json(_load(args.b)))}


def cmd_ideal_intersect(args):
    return intersect(Ideal.from_json(_load(args.a)), Ideal.from_json(_load(args.b))).to_json(reduced=True)


def cmd_family_psi_m(args):
    m = to_rat(args.m)
    return {"m": rat_str(m), "form": q_m(m).to_json(), "psi": psi_m(m).to_json()}


def cmd_family_verify(args):
    ms = _rat_list(args.m_list)
    t0 = time.perf_counter()
    rep = prop53_evidence(ms, timings=True)
    rng = random.Random(args.seed)
    certs = []
    for _ in range(args.params):
        p = random_params(rng)
        ok = check_cert(psi_det(family_config(p)), psi_m(p.m), lemma54_cert(p))
        certs.append({"params": [rat_str(x) for x in (p.a1, p.a2, p.b1, p.b2)], "verified": ok})
    rep["lemma54"] = certs
    rep["seconds_total"] = round(time.perf_counter() - t0, 3)
    return rep


def cmd_family_tower(args):
    r = tower_report(to_rat(args.m), args.k)
    r["psi_mk"] = r["psi_mk"].to_json()
    r["cert"] = r["cert"].to_json()
    return r


def cmd_verify_paper(args):
    return run_suite(seed=args.seed, jobs=args.jobs, sweeps=not args.quick)


def build_parser():
    p = argparse.ArgumentParser(prog="confpoly", description="Configuration polynomials with exact arithmetic.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--indent", type=int, default=2)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, h in [("psi", cmd_psi, "configuration polynomial det(Q_W)"),
                        ("psi-basis", cmd_psi_basis, "configuration polynomial via matroid bases"),
                        ("matroid-poly", cmd_matroid_poly, "matroid basis polynomial")]:
        sp = add(name, fn, h)
        sp.add_argument("--config")
        sp.add_argument("--graph")
    add("kirchhoff", cmd_kirchhoff, "Kirchhoff polynomial of a graph").add_argument("--graph", required=True)
    sp = add("hadamard", cmd_hadamard, "Hadamard power dimensions and exponent")
    sp.add_argument("--config", required=True)
    sp.add_argument("--s", type=int, default=3)
    sp = add("filtration", cmd_filtration, "greedy filtration F_1 <= F_2 <= ...")
    sp.add_argument("--config", required=True)
    sp.add_argument("--s", type=int, default=2)
    add("reduce", cmd_reduce, "variable reduction with certificate").add_argument("--config", required=True)
    add("drop-var", cmd_drop_var, "drop one redundant variable").add_argument("--config", required=True)
    sp = add("check-cert", cmd_check_cert, "check phi = lambda * psi o ell")
    for f in ("--phi", "--psi", "--cert"):
        sp.add_argument(f, required=True)
    add("classify", cmd_classify, "normal form for rank <= 3").add_argument("--config", required=True)
    sp = add("minors-ideal", cmd_minors_ideal, "ideal of submaximal minors")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--form")
    g.add_argument("--config")
    sp.add_argument("--reduced", action="store_true", help="emit the reduced Groebner basis")
    add("groebner", cmd_groebner, "reduced Groebner basis (grevlex)").add_argument("--ideal", required=True)
    for name, fn, h in [("ideal-eq", cmd_ideal_eq, "ideal equality"),
                        ("ideal-intersect", cmd_ideal_intersect, "ideal intersection")]:
        sp = add(name, fn, h)
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)

    fam = sub.add_parser("family", help="rank-4 infinite family")
    fsub = fam.add_subparsers(dest="family_command", required=True)
    sp = fsub.add_parser("psi-m", help="Q_m and psi_m")
    sp.add_argument("--m", required=True)
    sp.set_defaults(func=cmd_family_psi_m)
    sp = fsub.add_parser("verify", help="decomposition, invariant recovery and certificates")
    sp.add_argument("--m-list", default="1,2,3,1/2,5")
    sp.add_argument("--params", type=int, default=25, help="random parameter tuples for certificates")
    sp.set_defaults(func=cmd_family_verify)
    sp = fsub.add_parser("tower", help="coloop tower level k")
    sp.add_argument("--m", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_family_tower)

    sp = add("verify-paper", cmd_verify_paper, "replay the full reference computation suite")
    sp.add_argument("--quick", action="store_true", help="skip the exhaustive rank-2/rank-3 sweeps")
    return p


def _default(obj):
    if isinstance(obj, Fraction):
        return rat_str(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with code 2 on usage errors
    try:
        out = args.func(args)
        code = 0
    except ConfpolyError as exc:
        out = exc.to_json()
        code = 1
    except (KeyError, TypeError, ValueError) as exc:
        out = {"error": "ParseError", "message": f"{type(exc).__name__}: {exc}"}
        code = 1
    sys.stdout.write(json.dumps(out, indent=args.indent, sort_keys=True, default=_default) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
