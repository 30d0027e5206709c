"""Batch session language: named fields, rings, ideals and modules, compute
commands, claim verification, and deterministic reporting.

One statement per line, '#' starts a comment.  Reports are reproducible:
identical (script, seed, field) gives byte-identical output.
"""

from __future__ import annotations

import json

from .field import DEFAULT_PRIME, Field, PrimeField, QQ, field_from_name
from .parse import ParseError, parse_poly
from .poly import Poly, RingSignature
from .rings import (FPModule, Ideal, QuotientRing, RingError,
                    minimal_presentation, module_length_over)
from .homology import dual_hs_value, ext_dual_value
from .invariants import (HypothesisError, dual_hilbert_coefficients,
                         dual_hilbert_function_delta, hilbert_coefficients,
                         minimal_reduction, phi, zero_dim_report)
from .claims import REGISTRY, verify
from .numfun import FitError


class SessionError(ValueError):
    def __init__(self, message, line_no=None):
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)
        self.line_no = line_no


def _split_top(text: str, sep: str):
    """Split on sep at parenthesis/bracket depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return [p for p in parts if p != ""]


class Session:
    """Holds the field choice and the named objects of one script run."""

    def __init__(self, seed: int = 0, field: Field | None = None,
                 window=None, nmax=None):
        self.seed = seed
        self.field = field
        self.field_fixed = field is not None  # CLI override wins over script
        self.field_declared = False
        self.window = window
        self.nmax = nmax
        self.rings: dict[str, QuotientRing] = {}
        self.ideals: dict[str, Ideal] = {}
        self.modules: dict[str, FPModule] = {}
        self.reports: list[dict] = []
        self.outputs: list[tuple] = []  # (path or None, rendered text)
        self.failed = False

    # -- helpers ---------------------------------------------------------

    def _field(self) -> Field:
        if self.field is None:
            self.field = PrimeField(DEFAULT_PRIME)
        return self.field

    def _ring(self, name, line_no) -> QuotientRing:
        if name not in self.rings:
            raise SessionError(f"undefined ring {name!r}", line_no)
        return self.rings[name]

    def _ideal(self, name, line_no) -> Ideal:
        if name not in self.ideals:
            raise SessionError(f"undefined ideal {name!r}", line_no)
        return self.ideals[name]

    def _module(self, name, line_no) -> FPModule:
        if name not in self.modules:
            raise SessionError(f"undefined module {name!r}", line_no)
        return self.modules[name]

    def _blank_report(self, command: str, inputs) -> dict:
        return {"command": command, "inputs": inputs, "values": None,
                "postulation": None, "coefficients": None,
                "series_numerator": None, "reduction": None, "phi": None,
                "verdict": None, "checks": [], "seed": self.seed,
                "provenance": {}}

    # -- statement handlers ------------------------------------------------

    def run_line(self, line: str, line_no: int):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            return
        head = stripped.split(None, 1)[0]
        handler = {
            "field": self._stmt_field, "ring": self._stmt_ring,
            "ideal": self._stmt_ideal, "module": self._stmt_module,
            "compute": self._stmt_compute, "verify": self._stmt_verify,
            "report": self._stmt_report,
        }.get(head)
        if handler is None:
            raise SessionError(f"unknown statement {head!r}", line_no)
        handler(stripped, line_no)

    def _stmt_field(self, text, line_no):
        if self.field_declared:
            raise SessionError("field already declared (single field per session)",
                               line_no)
        self.field_declared = True
        parts = text.split()
        if self.field_fixed:
            return  # CLI override in force
        if len(parts) == 2 and parts[1] == "Q":
            self.field = QQ
        elif len(parts) == 3 and parts[1] == "Fp":
            self.field = PrimeField(int(parts[2]))
        elif len(parts) == 2 and parts[1].startswith("Fp:"):
            self.field = field_from_name(parts[1])
        else:
            raise SessionError("expected: field Q | field Fp <prime>", line_no)

    def _stmt_ring(self, text, line_no):
        if self.rings or self.ideals or self.modules:
            pass  # later definitions may freely refer to earlier ones
        body = text[len("ring"):].strip()
        if "=" not in body:
            raise SessionError("expected: ring <name> = poly(<vars>) / (<polys>)",
                               line_no)
        name, rhs = (s.strip() for s in body.split("=", 1))
        if not rhs.startswith("poly(") or ")" not in rhs:
            raise SessionError("ring right-hand side must start with poly(...)",
                               line_no)
        close = rhs.index(")")
        vars_ = [v.strip() for v in rhs[len("poly("):close].split(",") if v.strip()]
        rest = rhs[close + 1:].strip()
        sig = RingSignature(tuple(vars_), self._field())
        gens = []
        if rest:
            if not rest.startswith("/"):
                raise SessionError("expected '/' before the relation list", line_no)
            rel = rest[1:].strip()
            if not (rel.startswith("(") and rel.endswith(")")):
                raise SessionError("relations must be parenthesized", line_no)
            for item in _split_top(rel[1:-1], ","):
                try:
                    gens.append(parse_poly(item, sig))
                except ParseError as e:
                    raise SessionError(f"in relation {item!r}: {e}", line_no)
        self.rings[name] = QuotientRing(sig, gens)

    def _stmt_ideal(self, text, line_no):
        body = text[len("ideal"):].strip()
        if "=" not in body or " in " not in body:
            raise SessionError("expected: ideal <name> = (<polys>) in <ring>",
                               line_no)
        name, rhs = (s.strip() for s in body.split("=", 1))
        gen_part, ring_name = rhs.rsplit(" in ", 1)
        gen_part, ring_name = gen_part.strip(), ring_name.strip()
        R = self._ring(ring_name, line_no)
        if not (gen_part.startswith("(") and gen_part.endswith(")")):
            raise SessionError("ideal generators must be parenthesized", line_no)
        gens = []
        for item in _split_top(gen_part[1:-1], ","):
            try:
                gens.append(parse_poly(item, R.sig))
            except ParseError as e:
                raise SessionError(f"in generator {item!r}: {e}", line_no)
        self.ideals[name] = Ideal(R, gens)

    def _stmt_module(self, text, line_no):
        body = text[len("module"):].strip()
        if "=" not in body:
            raise SessionError("expected: module <name> = free(...) | sub(...)",
                               line_no)
        name, rhs = (s.strip() for s in body.split("=", 1))
        if rhs.startswith("free(") and rhs.endswith(")"):
            inner = _split_top(rhs[len("free("):-1], ",")
            if len(inner) != 2:
                raise SessionError("expected: free(<ring>, <rank>)", line_no)
            R = self._ring(inner[0], line_no)
            self.modules[name] = FPModule.free(R, int(inner[1]))
            return
        if rhs.startswith("sub(") and rhs.endswith(")"):
            inner = rhs[len("sub("):-1]
            if ";" not in inner:
                raise SessionError("expected: sub(<ring>^<k>; [..], ..)", line_no)
            head, vec_part = (s.strip() for s in inner.split(";", 1))
            if "^" not in head:
                raise SessionError("expected <ring>^<k> in sub(...)", line_no)
            ring_name, k_str = (s.strip() for s in head.split("^", 1))
            R = self._ring(ring_name, line_no)
            k = int(k_str)
            vectors = []
            for item in _split_top(vec_part, ","):
                if not (item.startswith("[") and item.endswith("]")):
                    raise SessionError(f"generator {item!r} must be bracketed",
                                       line_no)
                entries = _split_top(item[1:-1], ",")
                if len(entries) != k:
                    raise SessionError(
                        f"generator {item!r} has {len(entries)} entries, expected {k}",
                        line_no)
                try:
                    vectors.append(tuple(parse_poly(e, R.sig) for e in entries))
                except ParseError as e:
                    raise SessionError(f"in generator {item!r}: {e}", line_no)
            from .rings import submodule_presentation
            self.modules[name] = submodule_presentation(R, vectors)
            return
        raise SessionError("module right-hand side must be free(...) or sub(...)",
                           line_no)

    def _stmt_compute(self, text, line_no):
        parts = text.split()
        if len(parts) < 2:
            raise SessionError("empty compute statement", line_no)
        kind = parts[1]
        args = parts[2:]
        upto = None
        if "--upto" in args:
            at = args.index("--upto")
            try:
                upto = int(args[at + 1])
            except (IndexError, ValueError):
                raise SessionError("--upto needs an integer", line_no)
            args = args[:at] + args[at + 2:]
        rep = self._blank_report(f"compute {kind}", args)
        try:
            self._dispatch_compute(kind, args, upto, rep, line_no)
        except (RingError, FitError, HypothesisError) as e:
            rep["verdict"] = "inconclusive"
            rep["error"] = f"{type(e).__name__}: {e}"
            self.failed = True
        self.reports.append(rep)

    def _dispatch_compute(self, kind, args, upto, rep, line_no):
        value_ops = {"dual_hs": (dual_hs_value, "dual_hs_value"),
                     "ext1_dual": (lambda M, I, n: ext_dual_value(1, M, I, n),
                                   "ext_dual_value"),
                     "delta": (dual_hilbert_function_delta,
                               "dual_hilbert_function_delta"),
                     "hs": (None, "module_truncation_length")}
        if kind in value_ops:
            if len(args) != 2:
                raise SessionError(f"compute {kind} needs <module> <ideal>", line_no)
            M = self._module(args[0], line_no)
            I = self._ideal(args[1], line_no)
            N = upto if upto is not None else 10
            if kind == "hs":
                from .rings import module_truncation_length
                values = [module_truncation_length(M, I, n) for n in range(N + 1)]
            else:
                fn = value_ops[kind][0]
                values = [fn(M, I, n) for n in range(N + 1)]
            rep["values"] = values
            rep["provenance"]["values"] = "computed:" + value_ops[kind][1]
            return
        if kind == "coefficients":
            if len(args) != 2:
                raise SessionError("compute coefficients needs <module> <ideal>",
                                   line_no)
            M = self._module(args[0], line_no)
            I = self._ideal(args[1], line_no)
            dual = dual_hilbert_coefficients(M, I, window=self.window,
                                             nmax=self.nmax)
            hs = hilbert_coefficients(M, I, window=self.window, nmax=self.nmax)
            mu = minimal_presentation(M)[1]
            rep["values"] = list(dual.values)
            rep["postulation"] = dual.fit.postulation
            rep["coefficients"] = {
                "c": _jsonable(dual.c), "e": _jsonable(hs.c),
                "c1": _jsonable_scalar(dual.c1), "e0": _jsonable_scalar(hs.c0),
                "e1": _jsonable_scalar(hs.c[1] if len(hs.c) > 1 else hs.c1),
                "mu": mu,
            }
            rep["series_numerator"] = _jsonable(dual.numerator.coeffs)
            rep["provenance"].update({
                "values": "computed:dual_hs_value",
                "coefficients": "computed:dual_hilbert_coefficients",
                "series_numerator": "computed:numerator_from_values"})
            return
        if kind == "reduction":
            if len(args) != 1:
                raise SessionError("compute reduction needs <ideal>", line_no)
            I = self._ideal(args[0], line_no)
            red = minimal_reduction(I, seed=self.seed)
            rep["reduction"] = {"r": red.r}
            rep["provenance"]["reduction"] = "computed:minimal_reduction"
            return
        if kind == "phi":
            if len(args) != 2:
                raise SessionError("compute phi needs <module> <ideal>", line_no)
            M = self._module(args[0], line_no)
            I = self._ideal(args[1], line_no)
            red = minimal_reduction(I, seed=self.seed)
            rep["reduction"] = {"r": red.r}
            rep["phi"] = phi(M, I, red.r)
            rep["provenance"]["phi"] = "computed:phi"
            return
        if kind == "zero_dim":
            if len(args) != 2:
                raise SessionError("compute zero_dim needs <ring> <module>", line_no)
            S = self._ring(args[0], line_no)
            N = self._module(args[1], line_no)
            z = zero_dim_report(S, N)
            rep["values"] = list(z.alpha)
            rep["reduction"] = {"r": z.r}
            rep["coefficients"] = {"c": [_jsonable_scalar(z.e0)],
                                   "c1": _jsonable_scalar(z.c1),
                                   "e0": z.e0}
            rep["checks"] = [
                {"name": "series route c0", "lhs": z.e0, "rhs": z.e0,
                 "ok": z.cross_c0},
                {"name": "series route c1", "lhs": _jsonable_scalar(z.c1),
                 "rhs": _jsonable_scalar(z.c1), "ok": z.cross_c1}]
            rep["verdict"] = "pass" if (z.cross_c0 and z.cross_c1) else "fail"
            rep["provenance"]["values"] = "computed:zero_dim_report"
            return
        raise SessionError(f"unknown compute kind {kind!r}", line_no)

    def _stmt_verify(self, text, line_no):
        parts = text.split()
        if len(parts) < 2:
            raise SessionError("verify needs a claim id", line_no)
        claim_id = parts[1]
        if claim_id not in REGISTRY:
            raise SessionError(f"unknown claim {claim_id!r}", line_no)
        kinds, _ = REGISTRY[claim_id]
        names = parts[2:]
        if len(names) != len(kinds):
            raise SessionError(
                f"claim {claim_id} expects {len(kinds)} arguments "
                f"({', '.join(kinds)})", line_no)
        lookup = {"module": self._module, "ideal": self._ideal, "ring": self._ring}
        instance = [lookup[k](n, line_no) for k, n in zip(kinds, names)]
        rep = self._blank_report(f"verify {claim_id}", names)
        try:
            out = verify(claim_id, *instance, seed=self.seed, window=self.window,
                         nmax=self.nmax)
            rep["verdict"] = out.verdict
            rep["checks"] = out.checks
            rep["quantities"] = out.quantities
            rep["provenance"]["verdict"] = "computed:verify"
            if out.verdict != "pass":
                self.failed = True
        except (RingError, FitError, HypothesisError) as e:
            rep["verdict"] = "inconclusive"
            rep["error"] = f"hypotheses unmet: {e}"
            self.failed = True
        self.reports.append(rep)

    def _stmt_report(self, text, line_no):
        parts = text.split()
        fmt = "json"
        path = None
        rest = parts[1:]
        while rest:
            tok = rest.pop(0)
            if tok == "--format":
                if not rest:
                    raise SessionError("--format needs a value", line_no)
                fmt = rest.pop(0)
            else:
                path = tok
        if fmt not in ("json", "csv", "text"):
            raise SessionError(f"unknown report format {fmt!r}", line_no)
        self.outputs.append((path, render_reports(self.reports, fmt)))


def _jsonable(seq):
    return [_jsonable_scalar(v) for v in seq]


def _jsonable_scalar(v):
    if isinstance(v, bool) or isinstance(v, int) or v is None:
        return v
    try:
        iv = int(v)
        if iv == v:
            return iv
    except (TypeError, ValueError):
        pass
    return str(v)


def render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(reports, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = ["index,command,n,value"]
        for i, rep in enumerate(reports):
            if rep.get("values"):
                for n, v in enumerate(rep["values"]):
                    lines.append(f"{i},{rep['command']},{n},{v}")
        return "\n".join(lines) + "\n"
    lines = []
    for i, rep in enumerate(reports):
        lines.append(f"[{i}] {rep['command']} {' '.join(map(str, rep['inputs']))}")
        if rep.get("error"):
            lines.append(f"    error: {rep['error']}")
        if rep.get("values") is not None:
            lines.append(f"    values: {rep['values']}")
        if rep.get("coefficients"):
            lines.append(f"    coefficients: {rep['coefficients']}")
        if rep.get("series_numerator") is not None:
            lines.append(f"    numerator: {rep['series_numerator']}")
        if rep.get("reduction"):
            lines.append(f"    reduction number: {rep['reduction']['r']}")
        if rep.get("phi") is not None:
            lines.append(f"    phi: {rep['phi']}")
        if rep.get("verdict"):
            lines.append(f"    verdict: {rep['verdict']}")
            for c in rep.get("checks", []):
                mark = "ok" if c["ok"] else "FAIL"
                lines.append(f"      [{mark}] {c['name']}: {c['lhs']} vs {c['rhs']}")
    return "\n".join(lines) + "\n"


def run_session(script: str, seed: int = 0, field: Field | None = None,
                window=None, nmax=None) -> Session:
    """Execute a script; parse errors raise SessionError with the line number,
    per-command failures are recorded and execution continues."""
    session = Session(seed=seed, field=field, window=window, nmax=nmax)
    for line_no, line in enumerate(script.splitlines(), start=1):
        session.run_line(line, line_no)
    return session
