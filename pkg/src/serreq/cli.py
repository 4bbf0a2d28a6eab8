"""``serreq`` command line: run JSON sessions of Serre-quotient computations.

Exit codes: 0 success, 1 malformed input, 2 mathematical precondition
violated (e.g. not liftable modulo C), 3 internal invariant breach.
"""

import argparse
import json
import os
import random
import sys
from importlib import resources

from .errors import ConfigurationError, PreconditionError, UnsupportedOperation, UsageError
from .generalized import GeneralizedMorphism, equal_gen
from .serre import colift_gabriel, is_gabriel, lift_gabriel, quotient_category

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3

DEMOS = {"z-lift": "z_lift.json", "p1-iso": "p1_iso.json", "p1xp1-zero": "p1xp1_zero.json"}


# -- backends -----------------------------------------------------------------

class Backend:
    """Adapter between JSON descriptors and a base category plus its quotient."""

    def __init__(self, base, subcategory):
        self.base = base
        self.subcategory = subcategory
        self.quotient = quotient_category(base, subcategory, strict=True)

    # overridden per backend
    def object(self, desc):
        raise NotImplementedError

    def object_desc(self, M):
        raise NotImplementedError

    def matrix(self, source, target, rows):
        raise NotImplementedError

    def matrix_desc(self, f):
        raise NotImplementedError

    def is_zero_sheaf(self, M, test=None):
        return self.subcategory.contains(M)

    def hilbert(self, M):
        raise UsageError("hilbert is only available for graded modules")


class ZModBackend(Backend):
    def __init__(self):
        from .zmod import torsion_subcategory, zmod_category
        Z = zmod_category()
        super().__init__(Z, torsion_subcategory(Z))

    def object(self, desc):
        n = desc.get("generators")
        if not isinstance(n, int) or n < 0:
            raise UsageError("zmod object needs a non-negative integer 'generators'")
        return self.base.object(n, [[_int(a) for a in row] for row in desc.get("relations", [])])

    def object_desc(self, M):
        G = M.data
        return {"generators": G.ngens, "relations": [[str(a) for a in r] for r in G.relations.rows]}

    def matrix(self, source, target, rows):
        return self.base.morphism(source, target, [[_int(a) for a in r] for r in rows], check=False)

    def matrix_desc(self, f):
        return [[str(a) for a in r] for r in f.data.rows]


class GrModBackend(Backend):
    def __init__(self, ring, test, charts=None):
        from .grmod import grmod_category, quasi_zero_subcategory
        A = grmod_category(ring)
        self.ring = ring
        self.charts = charts
        self.test = test
        super().__init__(A, quasi_zero_subcategory(A, test, charts=charts))

    def object(self, desc):
        gens = desc.get("generators")
        if not isinstance(gens, list):
            raise UsageError("graded module needs a list of generator degrees")
        return self.base.module([d if isinstance(d, int) else list(d) for d in gens],
                                desc.get("relations", []))

    def object_desc(self, M):
        G = M.data
        return {"generators": [list(d) for d in G.degrees],
                "relations": [[str(p) for p in r] for r in G.relations.entries(self.ring)]}

    def matrix(self, source, target, rows):
        f = self.base.morphism(source, target, rows, check=False)
        bad = self.base._homogeneity_defect(f)
        if bad is not None:
            raise UsageError(f"matrix entry {bad} has the wrong degree")
        return f

    def matrix_desc(self, f):
        return [[str(p) for p in r] for r in f.data.entries(self.ring)]

    def is_zero_sheaf(self, M, test=None):
        from .grmod import is_quasi_zero_chart, is_quasi_zero_proj, is_quasi_zero_radical
        test = test or self.test
        if test == "proj":
            return is_quasi_zero_proj(M)
        if test == "charts":
            return is_quasi_zero_chart(M, self.charts)
        if test == "radical":
            return is_quasi_zero_radical(M, [self.ring.coerce(g) for g in self.charts.irrelevant])
        raise UsageError(f"unknown zero test {test!r}")

    def hilbert(self, M):
        from .grmod import hilbert_series, is_quasi_zero_proj
        num = hilbert_series(M)
        out = {"numerator": [[k, str(v)] for k, v in sorted(num.items())],
               "variable_degrees": [d[0] for d in self.ring.degrees]}
        if self.ring.is_standard():
            out["quasi_zero"] = is_quasi_zero_proj(M)
        return out


def _int(a):
    if isinstance(a, bool):
        raise UsageError(f"expected an integer, got {a!r}")
    if isinstance(a, int):
        return a
    if isinstance(a, str):
        try:
            return int(a.strip())
        except ValueError:
            pass
    raise UsageError(f"expected a decimal integer, got {a!r}")


def make_backend(doc, category=None):
    from .grmod import ToricChartData, product_of_projective_lines
    from .poly import GradedRing
    kind = category or doc.get("category")
    if kind is None:
        raise UsageError("session does not name a category")
    if kind == "zmod":
        return ZModBackend()
    ring_desc = doc.get("ring")
    if kind.startswith("proj:"):
        try:
            n = int(kind.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad category {kind!r}") from None
        if ring_desc is None:
            ring = GradedRing.standard([f"x{i}" for i in range(n + 1)])
        else:
            ring = _ring(ring_desc)
        if ring.nvars != n + 1 or not ring.is_standard():
            raise UsageError(f"proj:{n} needs {n + 1} variables of degree 1")
        return GrModBackend(ring, "proj")
    if kind == "toric":
        if ring_desc is None:
            raise UsageError("toric sessions need a ring block")
        ring = _ring(ring_desc)
        if "charts" in doc:
            charts = ToricChartData.create(doc["charts"], [ring.parse(g) for g in doc.get("irrelevant", [])])
        else:
            charts = product_of_projective_lines(ring)
        return GrModBackend(ring, doc.get("zero_test", "charts"), charts)
    raise UsageError(f"unknown category {kind!r}")


def _ring(desc):
    from .poly import GradedRing
    try:
        return GradedRing.create(desc["vars"], desc.get("degrees"))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed ring block: {exc}") from None


# -- session execution ------------------------------------------------------------

class Session:
    def __init__(self, doc, category=None):
        if not isinstance(doc, dict):
            raise UsageError("session must be a JSON object")
        self.backend = make_backend(doc, category)
        self.Q = self.backend.quotient
        self.objects = {}
        self.morphisms = {}
        for name, desc in _named(doc, "objects"):
            try:
                self.objects[name] = self.backend.object(desc)
            except UsageError as exc:
                raise UsageError(f"object {name!r}: {exc}") from None
        for name, desc in _named(doc, "morphisms"):
            try:
                self.morphisms[name] = self._morphism(desc)
            except UsageError as exc:
                raise UsageError(f"morphism {name!r}: {exc}") from None
        self.commands = doc.get("commands", [])
        if not isinstance(self.commands, list):
            raise UsageError("'commands' must be a list")

    def _object_ref(self, name):
        if name not in self.objects:
            raise UsageError(f"unknown object {name!r}")
        return self.objects[name]

    def _morphism(self, desc):
        A = self.backend.base
        if "matrix" in desc:
            src = self._object_ref(desc.get("source"))
            tgt = self._object_ref(desc.get("target"))
            f = self.backend.matrix(src, tgt, desc["matrix"])
            if not A.is_well_defined(f):
                raise UsageError("matrix does not respect the relations")
            return self.Q.honest(f)
        parts = []
        for key in ("domain", "arrow", "codomain"):
            ref = self.morphisms.get(desc.get(key))
            if ref is None:
                raise UsageError(f"{key} must name an earlier honest morphism")
            parts.append(ref.data.arrow)
        gen = GeneralizedMorphism(*parts)
        if not is_gabriel(gen, self.backend.subcategory):
            raise UsageError("triple is not a Gabriel morphism")
        return self.Q._wrap(gen)

    def _mor(self, name):
        if name not in self.morphisms:
            raise UsageError(f"{name!r} is not a known morphism")
        return self.morphisms[name]

    def run(self):
        results = []
        for k, cmd in enumerate(self.commands):
            if not isinstance(cmd, dict) or "op" not in cmd:
                raise UsageError(f"command {k} needs an 'op'")
            results.append(self.execute(cmd))
        return results

    def execute(self, cmd):
        Q, B = self.Q, self.backend
        op = cmd["op"]
        args = cmd.get("args", [])
        name = cmd.get("name")
        if not isinstance(args, list):
            raise UsageError(f"{op}: 'args' must be a list")
        arity = {"kernel": 1, "cokernel": 1, "compose": 2, "add": 2, "sub": 2, "negate": 1,
                 "lift": 2, "colift": 2, "equal": 2, "is-zero": 1, "is-iso": 1,
                 "inverse": 1, "identity": 1, "is-zero-sheaf": 1, "hilbert": 1, "show": 1}
        if op not in arity:
            raise UsageError(f"unknown command {op!r}")
        if len(args) != arity[op]:
            raise UsageError(f"{op} takes {arity[op]} argument(s)")
        head = {"op": op, "args": args}
        if op in ("is-zero-sheaf", "hilbert", "identity") or (op == "show" and args[0] in self.objects):
            M = self._object_ref(args[0])
            if op == "is-zero-sheaf":
                return dict(head, kind="bool", value=B.is_zero_sheaf(M, cmd.get("test")))
            if op == "hilbert":
                return dict(head, kind="hilbert", **B.hilbert(M))
            if op == "identity":
                return self._store(head, name, Q.identity(Q.object(M)))
            return dict(head, kind="object", object=B.object_desc(M),
                        is_zero=B.subcategory.contains(M))
        fs = [self._mor(a) for a in args]
        if op == "show":
            return self._store(head, name, fs[0])
        if op == "kernel":
            return self._store(head, name, Q.kernel(fs[0]).embedding)
        if op == "cokernel":
            return self._store(head, name, Q.cokernel(fs[0]).projection)
        if op == "compose":
            return self._store(head, name, Q.compose(*fs))
        if op == "add":
            return self._store(head, name, Q.add(*fs))
        if op == "sub":
            return self._store(head, name, Q.sub(*fs))
        if op == "negate":
            return self._store(head, name, Q.negate(fs[0]))
        if op == "lift":
            gen = lift_gabriel(fs[0].data, fs[1].data, B.subcategory)
            return self._store(head, name, Q._checked(gen))
        if op == "colift":
            gen = colift_gabriel(fs[0].data, fs[1].data, B.subcategory)
            return self._store(head, name, Q._checked(gen))
        if op == "inverse":
            return self._store(head, name, Q.inverse_of_iso(fs[0]))
        if op == "is-iso":
            return dict(head, kind="bool", value=Q.is_iso(fs[0]))
        if op == "is-zero":
            return dict(head, kind="bool", value=Q.is_zero_morphism(fs[0]))
        if op == "equal":
            f, g = fs
            if f.source != g.source or f.target != g.target:
                raise UsageError("equal needs parallel morphisms")
            if equal_gen(f.data, g.data):
                return dict(head, kind="equality", equal=True, witness="gen-iso")
            return dict(head, kind="equality", equal=Q.is_equal(f, g), witness="zeroid")
        raise UsageError(f"unknown command {op!r}")  # pragma: no cover

    def _store(self, head, name, f):
        if name is not None:
            if name in self.morphisms or name in self.objects:
                raise UsageError(f"name {name!r} is already taken")
            self.morphisms[name] = f
        out = dict(head, **encode_morphism(self.backend, f))
        if name is not None:
            out["name"] = name
        return out


def _named(doc, key):
    block = doc.get(key, {})
    if not isinstance(block, dict):
        raise UsageError(f"'{key}' must be an object mapping names to descriptors")
    for name, desc in block.items():
        if not isinstance(desc, dict):
            raise UsageError(f"{key[:-1]} {name!r} must be an object")
        yield name, desc


# -- encoding ---------------------------------------------------------------------

def _block(backend, f):
    return {"source": backend.object_desc(f.source), "target": backend.object_desc(f.target),
            "matrix": backend.matrix_desc(f)}


def encode_morphism(backend, f):
    gen = f.data
    return {
        "kind": "morphism",
        "source": backend.object_desc(gen.source),
        "target": backend.object_desc(gen.target),
        "is_zero": backend.quotient.is_zero_morphism(f),
        "domain": _block(backend, gen.domain),
        "arrow": _block(backend, gen.arrow),
        "codomain": _block(backend, gen.codomain),
    }


def decode_morphism(backend, d):
    """Rebuild a quotient morphism from its JSON encoding."""
    parts = []
    for key in ("domain", "arrow", "codomain"):
        blk = d[key]
        src, tgt = backend.object(blk["source"]), backend.object(blk["target"])
        parts.append(backend.matrix(src, tgt, blk["matrix"]))
    return backend.quotient._wrap(GeneralizedMorphism(*parts, check=False))


def decode_result(backend, d):
    """Inverse of the emitters: returns a comparable Python value."""
    kind = d.get("kind")
    if kind == "morphism":
        return ("morphism", decode_morphism(backend, d))
    if kind == "object":
        return ("object", backend.object(d["object"]), d["is_zero"])
    if kind == "equality":
        return ("equality", d["equal"], d["witness"])
    if kind == "bool":
        return ("bool", d["value"])
    if kind == "hilbert":
        return ("hilbert", {k: int(v) for k, v in d["numerator"]})
    raise UsageError(f"unknown result kind {kind!r}")


def emit_json(results):
    return json.dumps({"results": results}, sort_keys=True, indent=2) + "\n"


def _fmt_matrix(rows):
    if not rows:
        return "[]"
    cells = [[str(a) for a in r] for r in rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return "[" + "; ".join(" ".join(c.rjust(width) for c in r) for r in cells) + "]"


def _fmt_series(pairs):
    out = ""
    for e, c in pairs:
        c = int(c)
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
        body = "*".join(x for x in (mag, mono) if x)
        sign = "-" if c < 0 else "+"
        out += (f"-{body}" if c < 0 else body) if not out else f" {sign} {body}"
    return out or "0"


def emit_text(results):
    lines = []
    for k, r in enumerate(results, 1):
        title = f"[{k}] {r['op']} {' '.join(r['args'])}"
        if r.get("name"):
            title += f" -> {r['name']}"
        lines.append(title)
        kind = r["kind"]
        if kind == "morphism":
            lines.append(f"    {'zero':<9}: {str(r['is_zero']).lower()}")
            for key in ("domain", "arrow", "codomain"):
                lines.append(f"    {key:<9}: {_fmt_matrix(r[key]['matrix'])}")
        elif kind == "equality":
            lines.append(f"    {'equal':<9}: {str(r['equal']).lower()} ({r['witness']})")
        elif kind == "bool":
            lines.append(f"    {'value':<9}: {str(r['value']).lower()}")
        elif kind == "object":
            lines.append(f"    {'zero':<9}: {str(r['is_zero']).lower()}")
            lines.append(f"    {'gens':<9}: {r['object']['generators']}")
            lines.append(f"    {'relations':<9}: {_fmt_matrix(r['object']['relations'])}")
        elif kind == "hilbert":
            num = _fmt_series(r["numerator"])
            lines.append(f"    {'numerator':<9}: {num}")
            if "quasi_zero" in r:
                lines.append(f"    {'quasizero':<9}: {str(r['quasi_zero']).lower()}")
    return "\n".join(lines) + "\n"


# -- entry points -----------------------------------------------------------------

def run_document(doc, output="json", category=None):
    results = Session(doc, category).run()
    return emit_json(results) if output == "json" else emit_text(results)


def load_demo(name):
    if name not in DEMOS:
        raise UsageError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    text = resources.files("serreq").joinpath("sessions", DEMOS[name]).read_text()
    return json.loads(text)


def run_checks(seed, out):
    from .axioms import run_suite
    from .grmod import coherent_sheaf_category, grmod_category
    from .poly import GradedRing
    from .sampling import (GrModSampler, QuotientSampler, ZModSampler, projective_cofinal,
                           torsion_cofinal)
    from .zmod import torsion_subcategory, zmod_category

    Z = zmod_category()
    ZQ = quotient_category(Z, torsion_subcategory(Z), strict=True)
    P1 = coherent_sheaf_category(GradedRing.standard("x0 x1"), strict=True)
    suites = [(Z, ZModSampler(Z)), (ZQ, QuotientSampler(ZQ, ZModSampler(Z), *torsion_cofinal(Z)))]
    for names in ("x y", "x y z"):
        A = grmod_category(GradedRing.standard(names))
        suites.append((A, GrModSampler(A)))
    suites.append((P1, QuotientSampler(P1, GrModSampler(P1.base, max_relations=1),
                                       *projective_cofinal(P1.base))))
    ok = True
    for C, S in suites:
        report = run_suite(C, S, rounds=12, seed=seed)
        out.write(report.summary() + "\n")
        for name, r, msg in report.failures:
            out.write(f"  FAIL {name} #{r}: {msg}\n")
        ok &= report.ok
    return ok


def build_parser():
    p = argparse.ArgumentParser(prog="serreq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="execute a JSON session file")
    r.add_argument("session")
    r.add_argument("--output", choices=("json", "text"), default="json")
    r.add_argument("--category", help="zmod | proj:n | toric (overrides the session)")
    d = sub.add_parser("demo", help="run a bundled example session")
    d.add_argument("name", choices=sorted(DEMOS))
    d.add_argument("--output", choices=("json", "text"), default="json")
    sub.add_parser("check", help="run the property suites (seed from SERREQ_SEED)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            seed = int(os.environ.get("SERREQ_SEED", "0"))
            random.seed(seed)
            return EXIT_OK if run_checks(seed, sys.stdout) else EXIT_INVARIANT
        if args.command == "demo":
            doc = load_demo(args.name)
            sys.stdout.write(run_document(doc, args.output))
            return EXIT_OK
        try:
            with open(args.session, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read session: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
        sys.stdout.write(run_document(doc, args.output, args.category))
        return EXIT_OK
    except (UsageError, ConfigurationError, UnsupportedOperation) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        cond = getattr(exc, "condition", None)
        sys.stderr.write(f"precondition failed: {exc}" + (f" [{cond}]" if cond else "") + "\n")
        return EXIT_PRECONDITION
    except Exception as exc:  # anything else is a bug
        sys.stderr.write(f"internal invariant breach: {type(exc).__name__}: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
