"""Command-line workbench.

Exit codes: 0 success / all checks pass, 1 validation or check failure,
2 computational cap exceeded, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import corpus as corpus_mod
from . import jsonio
from .algebra import NotFiniteDimensionalError, build_algebra
from .constructions import ContractionError, contract, roundtrip_verify, star
from .detectors import (build_cyclic_detector, build_detecting_pair,
                        cyclic_detector_modules, detector_modules,
                        separated_components, string_module)
from .modules import (arrow_module, indecomposable, iso_test, middle_module,
                      omega_orbit, simple_module, syzygy)
from .paths import LinComb, Path
from .quiver import InputError, classify_arrows, classify_vertices, validate
from .relations import generate_relations

OK, CHECK_FAILED, CAP_EXCEEDED, INPUT_ERROR = 0, 1, 2, 3


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _load(args):
    return jsonio.load_presentation(args.file)


def cmd_validate(args):
    data = _load(args)
    report = validate(data, args.level)
    payload = {
        "ok": report.ok,
        "level": report.level,
        "violations": [{"rule": v.rule, "message": v.message}
                       for v in report.violations],
    }
    lines = [f"validation ({report.level}): {'pass' if report.ok else 'FAIL'}"]
    lines += [f"  [{v.rule}] {v.message}" for v in report.violations]
    _emit(args, payload, lines)
    return OK if report.ok else CHECK_FAILED


def cmd_describe(args):
    data = _load(args)
    cls = classify_arrows(data)
    payload = {
        "name": data.name,
        "vertices": {v: data.vertex_kind(v) for v in data.quiver.vertices},
        "f_cycles": data.f_cycles,
        "g_cycles": data.g_cycles,
        "arrows": {
            a: {
                "virtual": cls.info[a].virtual,
                "virtual_kind": cls.info[a].virtual_kind,
                "critical": cls.info[a].critical,
                "border": cls.info[a].border,
                "orbit_length": cls.info[a].orbit_len,
                "cycle_degree": cls.info[a].cycle_degree,
            }
            for a in sorted(data.quiver.arrow_names())
        },
    }
    lines = [f"presentation {data.name or '(unnamed)'}:",
             f"  f cycles: {data.f_cycles}",
             f"  g cycles: {data.g_cycles}",
             "  vertices: " + ", ".join(
                 f"{v}:{data.vertex_kind(v)}" for v in data.quiver.vertices)]
    for a in sorted(data.quiver.arrow_names()):
        info = cls.info[a]
        flags = []
        if info.virtual:
            flags.append(f"virtual({info.virtual_kind})")
        if info.critical:
            flags.append("critical")
        if info.border:
            flags.append("border")
        lines.append(f"  arrow {a}: m*n = {info.cycle_degree}"
                     + (" " + " ".join(flags) if flags else ""))
    if args.relations:
        rels = generate_relations(data, cls)
        payload["relations"] = [
            {"kind": r.kind, "anchor": r.anchor, "element": str(r.element)}
            for r in rels.relations
        ]
        payload["suppressed"] = [
            {"kind": e.kind, "anchor": e.anchor, "witness": e.witness,
             "flag": e.witness_flag}
            for e in rels.exceptions
        ]
        lines.append("  relations:")
        lines += [f"    {r}" for r in rels.relations]
        if rels.exceptions:
            lines.append("  suppressed zero relations:")
            lines += [f"    {e.kind}@{e.anchor} (witness {e.witness} "
                      f"{e.witness_flag})" for e in rels.exceptions]
    _emit(args, payload, lines)
    return OK


def _build(args):
    return build_algebra(_load(args))


def cmd_basis(args):
    alg = _build(args)
    payload = {
        "basis": [str(alg.basis_path(k)) for k in range(alg.dim)],
        "dimension_vector": alg.dimension_vector(),
        "cartan": alg.cartan_matrix(),
        "total_dim": alg.dim,
    }
    lines = [f"dimension {alg.dim}; by vertex {alg.dimension_vector()}"]
    lines += ["  " + str(alg.basis_path(k)) for k in range(alg.dim)]
    _emit(args, payload, lines)
    return OK


def cmd_cartan(args):
    alg = _build(args)
    payload = {"vertices": list(alg.data.quiver.vertices),
               "cartan": alg.cartan_matrix()}
    lines = [f"vertices: {', '.join(alg.data.quiver.vertices)}"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row)
              for row in alg.cartan_matrix()]
    _emit(args, payload, lines)
    return OK


def cmd_blocks(args):
    alg = _build(args)
    blocks = alg.block_decomposition()
    payload = {"count": len(blocks),
               "blocks": [{"vertices": list(b.vertices), "dim": b.dim,
                           "dimension_vector": b.dimension_vector()}
                          for b in blocks]}
    lines = [f"{len(blocks)} block(s)"]
    lines += [f"  vertices {list(b.vertices)}: dim {b.dim}" for b in blocks]
    _emit(args, payload, lines)
    return OK


def cmd_symmetric_check(args):
    alg = _build(args)
    verdict = alg.symmetric_form_exists()
    payload = {"symmetric": verdict.symmetric, "reason": verdict.describe()}
    lines = [f"symmetric: {'yes' if verdict.symmetric else 'NO'}"]
    if verdict.symmetric:
        payload["functional"] = {
            str(alg.basis_path(k)): jsonio.format_rational(v)
            for k, v in sorted(verdict.functional.items()) if v
        }
    else:
        lines.append("  " + verdict.describe())
        if verdict.certificate:
            cert = alg.coords_to_lincomb(verdict.certificate)
            payload["certificate"] = str(cert)
            lines.append(f"  certificate socle element: {cert}")
        if verdict.certificate_pair:
            pair = [str(alg.coords_to_lincomb(z))
                    for z in verdict.certificate_pair]
            payload["certificate_pair"] = pair
            lines.append(f"  independent socle elements: {pair}")
    _emit(args, payload, lines)
    return OK if verdict.symmetric else CHECK_FAILED


def cmd_star(args):
    data = _load(args)
    result = star(data)
    payload = jsonio.data_to_dict(result.data)
    lines = jsonio.dump_presentation(result.data).splitlines()
    _emit(args, payload, lines)
    return OK


def cmd_idempotent(args):
    data = _load(args)
    alg = build_algebra(data)
    keep = [v.strip() for v in args.keep.split(",") if v.strip()]
    result = contract(alg, keep)
    payload = {
        "presentation": jsonio.data_to_dict(result.data),
        "blocks": [jsonio.data_to_dict(b) for b in result.blocks],
        "embedding": {
            name: str(alg.coords_to_lincomb(coords))
            for name, coords in sorted(result.embedding.items())
        },
        "border": {k: jsonio.format_rational(v)
                   for k, v in sorted(result.border_measured.items())},
        "verified": result.verification.ok,
        "failures": result.verification.failures,
    }
    lines = [f"contraction onto {keep}: "
             f"{'verified' if result.verification.ok else 'FAILED'}"]
    lines += jsonio.dump_presentation(result.data).splitlines()
    lines += [f"  {name} -> {alg.coords_to_lincomb(coords)}"
              for name, coords in sorted(result.embedding.items())]
    if result.border_measured:
        lines.append("  measured border scalars: " + ", ".join(
            f"{k}={jsonio.format_rational(v)}"
            for k, v in sorted(result.border_measured.items())))
    _emit(args, payload, lines)
    return OK if result.verification.ok else CHECK_FAILED


def cmd_roundtrip(args):
    data = _load(args)
    report = roundtrip_verify(data)
    payload = {
        "ok": report.ok,
        "dims_expected": report.dims_expected,
        "dims_found": report.dims_found,
        "relations_vanish": report.relations_vanish,
        "failures": report.failures,
        "eps_weights": report.star_result.eps_weights,
    }
    lines = [f"round trip: {'pass' if report.ok else 'FAIL'}",
             f"  dims expected {report.dims_expected}",
             f"  dims found    {report.dims_found}"]
    lines += [f"  {f}" for f in report.failures]
    _emit(args, payload, lines)
    return OK if report.ok else CHECK_FAILED


def _module_from_spec(alg, spec):
    kind, _, rest = spec.partition(":")
    if kind == "simple":
        return simple_module(alg, rest)
    if kind == "arrow":
        return arrow_module(alg, rest)
    if kind == "middle":
        return middle_module(alg, rest)
    if kind == "gen":
        source, _, expr = rest.partition(":")
        element = LinComb()
        for mono in expr.split("+"):
            arrows = tuple(x for x in mono.strip().split("*") if x)
            element = element + LinComb.monomial(Path(source, arrows))
        from .modules import element_module
        return element_module(alg, source, alg.normal_form(element))
    raise InputError(f"bad module spec {spec!r}; use simple:V, arrow:A, "
                     "middle:V or gen:V:a*b+c*d")


def cmd_omega(args):
    alg = _build(args)
    module = _module_from_spec(alg, args.module)
    orbit, period = omega_orbit(alg, module, args.steps)
    payload = {
        "dims": [m.dimension_vector() for m in orbit],
        "period": period,
    }
    lines = [f"syzygy orbit of {args.module} (up to {args.steps} steps):"]
    lines += [f"  step {i}: {m.dimension_vector()}"
              for i, m in enumerate(orbit)]
    lines.append(f"period: {period if period else 'none found'}")
    _emit(args, payload, lines)
    return OK if period is not None else CHECK_FAILED


def cmd_detect(args):
    data = _load(args)
    alg = build_algebra(data)
    comps = separated_components(data)
    x = Fraction(args.x)
    index = args.component
    if index >= len(comps):
        raise InputError(f"component {index} out of range (found {len(comps)})")
    comp = comps[index]
    if comp.r == 1:
        p = Path(comp.sources[0], (comp.out_arrows[0],))
        q = Path(comp.sources[0], (comp.in_arrows[0],))
        det = build_cyclic_detector(alg, p, q, x)
        theta_mod, psi_mod = cyclic_detector_modules(alg, det)
        swap1 = iso_test(syzygy(theta_mod), psi_mod).isomorphic
        swap2 = iso_test(syzygy(psi_mod), theta_mod).isomorphic
        payload = {
            "kind": "cyclic", "r": 1, "x": str(x),
            "hypotheses_hold": det.hypotheses_hold,
            "failures": det.failures,
            "syzygy_swap": swap1 and swap2,
        }
        lines = [f"component {index}: double arrows, cyclic detector",
                 f"  hypotheses: {'hold' if det.hypotheses_hold else det.failures}",
                 f"  syzygy swap: {swap1 and swap2}"]
        ok = det.hypotheses_hold and swap1 and swap2
    else:
        pair = build_detecting_pair(alg, comp, x)
        s_mod, t_mod = detector_modules(alg, pair)
        swap1 = iso_test(syzygy(s_mod), t_mod).isomorphic
        swap2 = iso_test(syzygy(t_mod), s_mod).isomorphic
        payload = {
            "kind": "matrix", "r": comp.r, "x": str(x),
            "products_vanish": pair.products_vanish,
            "syzygy_swap": swap1 and swap2,
        }
        lines = [f"component {index}: r = {comp.r}",
                 f"  S*T = 0 = T*S: {pair.products_vanish}",
                 f"  syzygy swap: {swap1 and swap2}"]
        ok = pair.products_vanish and swap1 and swap2
    _emit(args, payload, lines)
    return OK if ok else CHECK_FAILED


def cmd_middle(args):
    alg = _build(args)
    module = middle_module(alg, args.vertex)
    try:
        indec = indecomposable(module)
    except Exception as exc:           # undecided stays visible, not fatal
        indec = None
    payload = {"dimension_vector": module.dimension_vector(),
               "indecomposable": indec}
    lines = [f"middle module at {args.vertex}: dims "
             f"{module.dimension_vector()}",
             f"  indecomposable: {indec}"]
    _emit(args, payload, lines)
    return OK


def cmd_corpus(args):
    if args.action != "run":
        raise InputError("only 'corpus run' is supported")
    results = corpus_mod.run_all()
    failed = [r for r in results if not r.ok]
    payload = {
        "total": len(results),
        "failed": len(failed),
        "results": [
            {"entry": r.entry, "check": r.check, "ok": r.ok,
             "detail": r.detail}
            for r in results
        ],
    }
    lines = []
    last = None
    for r in results:
        if r.entry != last:
            lines.append(f"{r.entry}:")
            last = r.entry
        status = "ok  " if r.ok else "FAIL"
        lines.append(f"  {status} {r.check}"
                     + (f" ({r.detail})" if not r.ok and r.detail else ""))
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    _emit(args, payload, lines)
    return OK if not failed else CHECK_FAILED


def make_parser():
    parser = argparse.ArgumentParser(
        prog="hybridalg",
        description="workbench for symmetric algebras built from biserial "
                    "quiver presentations")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, help="check a presentation")
    p.add_argument("file")
    p.add_argument("--level", choices=("structural", "full"),
                   default="structural")
    p = add("describe", cmd_describe, help="classification summary")
    p.add_argument("file")
    p.add_argument("--relations", action="store_true")
    for name, func in (("basis", cmd_basis), ("cartan", cmd_cartan),
                       ("blocks", cmd_blocks),
                       ("symmetric-check", cmd_symmetric_check),
                       ("star", cmd_star), ("roundtrip", cmd_roundtrip)):
        p = add(name, func, help=f"{name} of the built algebra")
        p.add_argument("file")
    p = add("idempotent", cmd_idempotent, help="contract onto kept vertices")
    p.add_argument("file")
    p.add_argument("--keep", required=True, help="comma-separated vertices")
    p = add("omega", cmd_omega, help="iterated syzygies of a module")
    p.add_argument("file")
    p.add_argument("--module", required=True,
                   help="simple:V | arrow:A | middle:V | gen:V:a*b+c")
    p.add_argument("--steps", type=int, default=12)
    p = add("detect", cmd_detect, help="periodic detecting modules")
    p.add_argument("file")
    p.add_argument("--component", type=int, default=0)
    p.add_argument("--x", default="1")
    p = add("middle", cmd_middle, help="radical-mod-socle of a projective")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    p = add("corpus", cmd_corpus, help="run the bundled corpus")
    p.add_argument("action", choices=("run",))
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotFiniteDimensionalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAP_EXCEEDED
    except (InputError, FileNotFoundError, ContractionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
