"""Command-line front end.

Subcommands: `group` (exact abelian-group computations), `cat` (monoidal
categories, homotopy fibers, the comparison functor), `geo` (discrete
geometry), `bnr` (the invariant pipelines) and `suite` (acceptance).
Inputs are JSON files merged into a named workspace; all floating-point
output uses fixed 12-significant-digit formatting so runs are
byte-reproducible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__, fgab, intmat, moncat
from .discrete import (CellComplex, Cochain, LatticeConnection,
                       check_stokes, chern_number, holonomy_of_vector,
                       tangent_connection)
from .invariants import (BnrScene, SuScene, cs_su2_quadrature, psi,
                         hofiber_bordism_semantics, shipped_table,
                         sphere_volume_quadrature, su_psi, validate_table,
                         SIGN_CONVENTION, build_mesh)
from . import acceptance


class InputError(ValueError):
    """A problem with an input file; exits with code 2."""


def fmt(x):
    """Fixed 12-significant-digit float rendering."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# -- workspace ---------------------------------------------------------------

class Workspace:
    """Named registry of objects loaded from JSON files.

    Name references are resolved at load time; a dangling reference
    aborts with the offending file and name.  Anonymous inline groups
    are interned by presentation so identical specs in different files
    yield one group, letting their morphisms compose.
    """

    def __init__(self):
        self.groups = {}
        self.morphisms = {}
        self.squares = {}
        self.fills = {}
        self.meshes = {}
        self.connections = {}
        self.cochains = {}
        self.matrices = {}
        self.scenes = {}
        self.files = []
        self.order = {"morphisms": []}
        self._interned = {}

    def load_file(self, path):
        self.files.append(path)
        try:
            with open(path) as fh:
                obj = json.load(fh)
        except FileNotFoundError:
            raise InputError(f"{path}: no such file")
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})")
        self._ingest(path, obj)
        return obj

    def _ingest(self, path, obj):
        stem = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
        if isinstance(obj, list):
            self.matrices[stem] = self._matrix(path, "$", obj)
            return
        if not isinstance(obj, dict):
            raise InputError(f"{path}: top level must be an object or array")
        if "cells" in obj:
            try:
                self.meshes[stem] = CellComplex.from_json(obj, name=stem)
            except Exception as exc:
                raise InputError(f"{path}: bad mesh ({exc})")
            return
        if "edge_phases" in obj:
            self.connections[stem] = (path, obj)
            return
        if "values" in obj and "degree" in obj:
            self.cochains[stem] = (path, obj)
            return
        if "m3" in obj or "union" in obj or "su" in obj:
            self.scenes[stem] = obj
            return
        for name, rec in (obj.get("groups") or {}).items():
            self.groups[name] = self._group(path, f"groups.{name}", rec, name)
        for name, rec in (obj.get("morphisms") or {}).items():
            self._add_morphism(name, self._morphism(
                path, f"morphisms.{name}", rec, name))
        for name, rec in (obj.get("squares") or {}).items():
            self.squares[name] = self._square(path, f"squares.{name}", rec)
        for name, rec in (obj.get("fills") or {}).items():
            self.fills[name] = self._fill(path, f"fills.{name}", rec)
        if "generators" in obj:
            self.groups[stem] = self._group(path, "$", obj, stem)
        elif "matrix" in obj and "source" in obj:
            self._add_morphism(stem, self._morphism(path, "$", obj, stem))
        elif "matrix" in obj:
            self.matrices[stem] = self._matrix(path, "matrix", obj["matrix"])
        elif "phi_H" in obj:
            self.squares[stem] = self._square(path, "$", obj)
        elif "lambda" in obj:
            self.fills[stem] = self._fill(path, "$", obj)

    def _add_morphism(self, name, mor):
        self.morphisms[name] = mor
        self.order["morphisms"].append(name)

    def _matrix(self, path, at, rows):
        try:
            shape = (len(rows), len(rows[0]) if rows else 0)
            return intmat.as_int_matrix(rows, shape)
        except (ValueError, TypeError) as exc:
            raise InputError(f"{path}: {at}: {exc}")

    def _group(self, path, at, rec, name):
        try:
            return fgab.group_from_json(rec, name=name)
        except (ValueError, TypeError) as exc:
            raise InputError(f"{path}: {at}: {exc}")

    def _resolve_group(self, path, at, ref):
        if isinstance(ref, str):
            if ref not in self.groups:
                raise InputError(f"{path}: {at}: unknown group name {ref!r}")
            return self.groups[ref]
        G = self._group(path, at, ref, None)
        key = (G.n_generators,
               tuple(tuple(int(v) for v in row) for row in G.relations))
        return self._interned.setdefault(key, G)

    def _morphism(self, path, at, rec, name):
        if not isinstance(rec, dict) or "matrix" not in rec:
            raise InputError(f"{path}: {at}: morphism needs a 'matrix'")
        src = self._resolve_group(path, f"{at}.source", rec.get("source"))
        tgt = self._resolve_group(path, f"{at}.target", rec.get("target"))
        try:
            return fgab.morphism_from_json(rec, src, tgt, name=name)
        except (ValueError, TypeError) as exc:
            raise InputError(f"{path}: {at}: {exc}")

    def _resolve_morphism(self, path, at, ref):
        if isinstance(ref, str):
            if ref not in self.morphisms:
                raise InputError(
                    f"{path}: {at}: unknown morphism name {ref!r}")
            return self.morphisms[ref]
        return self._morphism(path, at, ref, None)

    def _square(self, path, at, rec):
        legs = {}
        for leg in ("phi_H", "phi_G", "f_ob", "f_mor"):
            if leg not in rec:
                raise InputError(f"{path}: {at}: square missing {leg!r}")
            legs[leg] = self._resolve_morphism(path, f"{at}.{leg}", rec[leg])
        try:
            return moncat.CommSquare(**legs)
        except (ValueError, TypeError) as exc:
            raise InputError(f"{path}: {at}: {exc}")

    def _fill(self, path, at, rec):
        if "lambda" not in rec:
            raise InputError(f"{path}: {at}: fill missing 'lambda'")
        return self._resolve_morphism(path, f"{at}.lambda", rec["lambda"])

    def sole(self, table, kind, name=None):
        if name is not None:
            if name not in table:
                raise InputError(f"no {kind} named {name!r} in the loaded "
                                 f"files {self.files}")
            return table[name]
        if len(table) != 1:
            raise InputError(
                f"expected exactly one {kind} in {self.files}, "
                f"found {sorted(table)}")
        return next(iter(table.values()))


def _parse_coords(text):
    try:
        return [int(t) for t in str(text).split(",")]
    except ValueError:
        raise InputError(f"coordinates {text!r} must be comma-separated "
                         "integers")


def _load_mesh(ref):
    if ref.startswith("builtin:"):
        try:
            return build_mesh(ref.split(":", 1)[1])
        except Exception as exc:
            raise InputError(str(exc))
    ws = Workspace()
    ws.load_file(ref)
    return ws.sole(ws.meshes, "mesh")


# -- group subcommands -------------------------------------------------------

def cmd_group_smith(args, ws):
    M = ws.sole(ws.matrices, "matrix", args.name)
    U, D, V = intmat.smith_normal_form(M)
    diag = [int(D[i, i]) for i in range(min(D.shape))]
    lines = [f"D = diag({','.join(map(str, diag))})",
             f"U = {U.tolist()}", f"V = {V.tolist()}"]
    return lines, {"diag": diag, "U": U.tolist(), "V": V.tolist()}


def cmd_group_kernel(args, ws):
    f = ws.sole(ws.morphisms, "morphism", args.name)
    K, incl = fgab.kernel(f)
    return ([f"ker = {K.describe()}", f"incl = {incl.matrix.tolist()}"],
            {"kernel": K.describe(), "incl": incl.matrix.tolist()})


def cmd_group_cokernel(args, ws):
    f = ws.sole(ws.morphisms, "morphism", args.name)
    C = fgab.cokernel(f)
    return [f"coker = {C.describe()}"], {"cokernel": C.describe()}


def cmd_group_image(args, ws):
    f = ws.sole(ws.morphisms, "morphism", args.name)
    I, _ = fgab.image(f)
    return [f"image = {I.describe()}"], {"image": I.describe()}


def cmd_group_iso(args, ws):
    f = ws.sole(ws.morphisms, "morphism", args.name)
    ok = fgab.is_isomorphism(f)
    return ["true" if ok else "false"], {"isomorphism": ok}


def cmd_group_pullback(args, ws):
    names = ws.order["morphisms"]
    if len(names) < 2:
        raise InputError("pullback needs two morphisms (two files or a "
                         "workspace defining two)")
    f, g = ws.morphisms[names[0]], ws.morphisms[names[1]]
    pb = fgab.pullback(f, g)
    gens = [tuple(int(v) for v in pb.incl.matrix[:, j])
            for j in range(pb.group.n_generators)]
    gen_text = "; ".join("(" + ",".join(map(str, t)) + ")" for t in gens)
    return ([f"P = {pb.group.describe()}, gen {gen_text}"],
            {"group": pb.group.describe(),
             "generators": [list(t) for t in gens]})


def cmd_group_solve(args, ws):
    f = ws.sole(ws.morphisms, "morphism", args.name)
    y = f.target.element(_parse_coords(args.rhs))
    x = fgab.solve(f, y)
    if x is None:
        return ["absent"], {"solution": None}
    return ([f"x = ({','.join(map(str, x.coords))})"],
            {"solution": list(x.coords)})


# -- cat subcommands ---------------------------------------------------------

def cmd_cat_hom(args, ws):
    phi = ws.sole(ws.morphisms, "morphism", args.name)
    cat = moncat.MorTensorCat(phi)
    a = cat.obj_group.element(_parse_coords(args.a))
    b = cat.obj_group.element(_parse_coords(args.b))
    hs = cat.hom(a, b)
    if hs.is_empty:
        return ["empty"], {"status": "empty"}
    part = list(hs.particular.coords)
    gens = [list(g.coords) for g in hs.kernel_generators]
    lines = [f"particular = ({','.join(map(str, part))})",
             f"kernel generators = {gens}"]
    data = {"status": "nonempty", "particular": part,
            "kernel_generators": gens}
    if args.oracle:
        if cat.mor_group.is_finite and cat.obj_group.is_finite:
            from .testing import brute_hom_table
            table, _ = brute_hom_table(phi)
            brute = table.get((a.key(), b.key()), set())
            agrees = hs.element_keys() == brute
            lines.append(f"oracle: {'agrees' if agrees else 'DISAGREES'}")
            data["oracle"] = agrees
            if not agrees:
                raise AssertionError("hom-set oracle disagreement")
        else:
            lines.append("oracle: skipped (infinite groups)")
    return lines, data


def cmd_cat_hofiber(args, ws):
    square = ws.sole(ws.squares, "square", args.square)
    fiber = moncat.hofiber(square)
    gens = [[int(v) for v in fiber.pullback.incl.matrix[:, j]]
            for j in range(fiber.object_group.n_generators)]
    return ([f"object group = {fiber.object_group.describe()}",
             f"pair generators = {gens}"],
            {"object_group": fiber.object_group.describe(),
             "pair_generators": gens})


def cmd_cat_xi(args, ws):
    square = ws.sole(ws.squares, "square", args.square)
    lam = ws.sole(ws.fills, "fill", args.fill)
    fill = moncat.DiagonalFill(square, lam)
    fiber = moncat.hofiber(square)
    xi = moncat.xi_lambda(fiber, fill)
    equiv = moncat.xi_is_equivalence(square, fill)
    gens = [[int(v) for v in xi.kernel_incl.matrix[:, j]]
            for j in range(xi.kernel_group.n_generators)]
    gen_text = "; ".join("(" + ",".join(map(str, t)) + ")" for t in gens)
    lines = [f"equivalence: {'true' if equiv else 'false'}; "
             f"target: ker = {xi.kernel_group.describe()} (gen {gen_text})"]
    data = {"equivalence": equiv, "kernel": xi.kernel_group.describe(),
            "kernel_generators": gens}
    if args.oracle:
        try:
            slow = moncat.xi_equivalence_by_enumeration(square, fill)
        except ValueError:
            lines.append("oracle: skipped (infinite groups)")
        else:
            lines.append(f"oracle: {'agrees' if slow == equiv else 'DISAGREES'}")
            data["oracle"] = slow
            if slow != equiv:
                raise AssertionError("equivalence oracle disagreement")
    return lines, data


# -- geo subcommands ---------------------------------------------------------

def cmd_geo_stokes(args, ws):
    mesh = _load_mesh(args.mesh)
    path, rec = (None, None)
    if args.cochain:
        cw = Workspace()
        cw.load_file(args.cochain)
        path, rec = cw.sole(cw.cochains, "cochain")
    else:
        raise InputError("stokes needs a cochain file "
                         '({"degree": k, "values": [...]})')
    try:
        omega = Cochain(mesh, int(rec["degree"]), rec["values"])
    except Exception as exc:
        raise InputError(f"{path}: bad cochain ({exc})")
    lhs, rhs = check_stokes(mesh, omega)
    lines = [f"boundary integral = {fmt(lhs)}",
             f"bulk integral of d(omega) = {fmt(rhs)}",
             f"gap = {fmt(abs(lhs - rhs))}"]
    return lines, {"lhs": lhs, "rhs": rhs, "gap": abs(lhs - rhs)}


def _geo_connection(args):
    mesh = _load_mesh(args.mesh)
    if args.connection == "tangent":
        bundle = tangent_connection(mesh)
        return bundle.dual, bundle.connection
    cw = Workspace()
    cw.load_file(args.connection)
    path, rec = cw.sole(cw.connections, "connection")
    try:
        return mesh, LatticeConnection.from_json(mesh, rec)
    except Exception as exc:
        raise InputError(f"{path}: bad connection ({exc})")


def cmd_geo_holonomy(args, ws):
    complex_, conn = _geo_connection(args)
    if args.loop:
        chain = complex_.chain_vector(1, _parse_loop(args.loop))
    else:
        chain = complex_.fundamental_chain(1)
    value = holonomy_of_vector(conn, chain)
    return ([f"holonomy = exp(2*pi*i * {fmt(value)})"], {"turns": value})


def _parse_loop(text):
    chain = []
    for token in text.split(","):
        token = token.strip()
        sign = 1
        if token.startswith("-"):
            sign, token = -1, token[1:]
        elif token.startswith("+"):
            token = token[1:]
        try:
            chain.append((int(token), sign))
        except ValueError:
            raise InputError(f"bad loop token {token!r}")
    return chain


def cmd_geo_chern(args, ws):
    complex_, conn = _geo_connection(args)
    chain = [(f, 1) for f in range(complex_.n_cells[2])]
    c = chern_number(conn, chain)
    return [str(c)], {"chern": c}


# -- bnr subcommands ---------------------------------------------------------

def _bnr_scene(args, ws):
    if args.builtin:
        if args.builtin == "s3-lie":
            return BnrScene.s3_lie()
        if args.builtin == "empty":
            return BnrScene.empty()
        raise InputError(f"unknown builtin scene {args.builtin!r} "
                         "(have: s3-lie, empty)")
    obj = ws.sole(ws.scenes, "scene")
    return obj


def cmd_bnr_psi(args, ws):
    obj = _bnr_scene(args, ws)
    scene = obj if isinstance(obj, BnrScene) else BnrScene.from_json(obj)
    result = psi(scene, certify=args.certify)
    _, factored = hofiber_bordism_semantics(scene)
    assert factored.raw == result.raw
    lines = [result.render()]
    for entry in result.certificate:
        lines.append(
            f"certificate: {entry['component']} {entry['bounding']} "
            f"int={entry['integer']} diff={entry['difference']}")
    return lines, {"raw": result.raw, "integer": result.integer_value,
                   "residue": result.residue, "modulus": 24,
                   "convention": result.convention,
                   "certificate": result.certificate}


def cmd_bnr_su(args, ws):
    obj = _bnr_scene(args, ws)
    if isinstance(obj, BnrScene) or "su" not in obj:
        raise InputError("su needs a scene file with an 'su' block")
    scene = SuScene.from_json(obj)
    result = su_psi(scene)
    lines = [result.render()]
    for entry in result.certificate:
        lines.append(
            f"certificate: {entry['bounding']} ({entry['kind']}) "
            f"int={entry['integer']} diff={entry['difference']}"
            + ("" if entry["in_hypothesis"] else " [out-of-hypothesis]"))
    return lines, {"raw": result.raw, "integer": result.integer_value,
                   "residue": result.residue, "modulus": 2,
                   "certificate": result.certificate}


def cmd_bnr_cs(args, ws):
    value = cs_su2_quadrature(args.refine)
    vol = sphere_volume_quadrature(args.refine)
    return ([f"cs = {fmt(value)}", f"sphere volume = {fmt(vol)}"],
            {"cs": value, "volume": vol, "refinement": args.refine})


def cmd_bnr_table(args, ws):
    entries = shipped_table()
    report = validate_table(entries.values())
    lines = [f"{e.name}: p1={e.integral_p1} sig={e.signature} "
             f"a_hat={e.a_hat} {'spin' if e.spin else 'oriented'}"
             for e in entries.values()]
    lines.append("valid" if report.valid else f"INVALID: {report.violations}")
    if not report.valid:
        raise AssertionError("shipped table failed validation")
    return lines, {"entries": [e.to_json() for e in entries.values()],
                   "valid": report.valid}


def cmd_suite(args, ws):
    lines = []
    ok = acceptance.run_all(out=lines.append)
    return lines, {"pass": ok}


# -- main --------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="abtqft",
        description="Abelian-group-valued TQFT computations: exact group "
                    "algebra, monoidal categories, discrete geometry and "
                    "the mod-24 / mod-2 bordism invariants.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--record", metavar="PATH", default=None,
                   help="write a reproducibility record to PATH")
    # the same options are accepted after the subcommand; SUPPRESS keeps
    # the top-level defaults when they are not repeated there
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--record", metavar="PATH",
                        default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="exact abelian group operations")
    gsub = g.add_subparsers(dest="op", required=True)
    for op, handler, extra in [
            ("smith", cmd_group_smith, ()),
            ("kernel", cmd_group_kernel, ()),
            ("cokernel", cmd_group_cokernel, ()),
            ("image", cmd_group_image, ()),
            ("iso", cmd_group_iso, ()),
            ("pullback", cmd_group_pullback, ()),
            ("solve", cmd_group_solve, ("rhs",))]:
        sp = gsub.add_parser(op, parents=[common])
        sp.add_argument("files", nargs="+")
        for name in extra:
            sp.add_argument(name)
        sp.add_argument("--name", help="object name inside the files")
        sp.set_defaults(handler=handler)

    c = sub.add_parser("cat", help="monoidal categories and fibers")
    csub = c.add_subparsers(dest="op", required=True)
    sp = csub.add_parser("hom", parents=[common])
    sp.add_argument("files", nargs=1)
    sp.add_argument("a", help="source object coordinates")
    sp.add_argument("b", help="target object coordinates")
    sp.add_argument("--name")
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(handler=cmd_cat_hom)
    sp = csub.add_parser("hofiber", parents=[common])
    sp.add_argument("files", nargs="+")
    sp.add_argument("--square")
    sp.set_defaults(handler=cmd_cat_hofiber)
    sp = csub.add_parser("xi", parents=[common])
    sp.add_argument("files", nargs="+")
    sp.add_argument("--square")
    sp.add_argument("--fill")
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(handler=cmd_cat_xi)

    ge = sub.add_parser("geo", help="discrete geometry")
    gesub = ge.add_subparsers(dest="op", required=True)
    sp = gesub.add_parser("stokes", parents=[common])
    sp.add_argument("mesh", help="mesh file or builtin:<name>")
    sp.add_argument("cochain", help='cochain file {"degree":k,"values":[..]}')
    sp.set_defaults(handler=cmd_geo_stokes, files=[])
    sp = gesub.add_parser("holonomy", parents=[common])
    sp.add_argument("mesh")
    sp.add_argument("connection", help="connection file or 'tangent'")
    sp.add_argument("--loop", help="comma-separated signed edge indices")
    sp.set_defaults(handler=cmd_geo_holonomy, files=[])
    sp = gesub.add_parser("chern", parents=[common])
    sp.add_argument("mesh")
    sp.add_argument("connection", help="connection file or 'tangent'")
    sp.set_defaults(handler=cmd_geo_chern, files=[])

    b = sub.add_parser("bnr", help="bordism invariants")
    bsub = b.add_subparsers(dest="op", required=True)
    sp = bsub.add_parser("psi", parents=[common])
    sp.add_argument("files", nargs="*")
    sp.add_argument("--builtin")
    sp.add_argument("--certify", action="store_true")
    sp.set_defaults(handler=cmd_bnr_psi)
    sp = bsub.add_parser("su", parents=[common])
    sp.add_argument("files", nargs="*")
    sp.add_argument("--builtin")
    sp.set_defaults(handler=cmd_bnr_su)
    sp = bsub.add_parser("cs", parents=[common])
    sp.add_argument("--refine", type=int, default=2)
    sp.set_defaults(handler=cmd_bnr_cs, files=[])
    sp = bsub.add_parser("table", parents=[common])
    sp.add_argument("action", choices=("validate",))
    sp.set_defaults(handler=cmd_bnr_table, files=[])

    s = sub.add_parser("suite", help="verification suites")
    s.add_argument("op", choices=("acceptance",))
    s.set_defaults(handler=cmd_suite, files=[])
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)

    ws = Workspace()
    try:
        for path in getattr(args, "files", []) or []:
            ws.load_file(path)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2

    try:
        lines, data = args.handler(args, ws)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 1

    if args.format == "json":
        output = json.dumps(data, sort_keys=True, indent=2)
    else:
        output = "\n".join(lines)
    print(output)

    if args.record:
        logged = []
        skip = False
        for token in argv:
            if skip:
                skip = False
            elif token == "--record":
                skip = True
            elif token.startswith("--record="):
                pass
            else:
                logged.append(token)
        record = {
            "command": logged,
            "inputs": {path: hashlib.sha256(open(path, "rb").read()).hexdigest()
                       for path in (getattr(args, "files", []) or [])},
            "output": output,
            "convention": SIGN_CONVENTION,
            "version": __version__,
        }
        with open(args.record, "w") as fh:
            json.dump(record, fh, sort_keys=True, indent=2)
    return 1 if data.get("pass") is False else 0


if __name__ == "__main__":
    sys.exit(main())
